import csv
import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from ssb_tma.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.reader(lines))


def test_spectrum_defaults(capsys):
    code, out, _ = run(["spectrum"], capsys)
    assert code == 0
    assert "# seed: 0" in out
    table = dict((int(h), float(p)) for h, p in rows_of(out)[1:])
    assert table[-1] == 0.0
    assert table[3] == pytest.approx(-9.54, abs=0.005)
    assert table[0] == -240.0
    assert rows_of(out)[0] == ["order", "power_db"]


def test_spectrum_with_errors(capsys):
    code, out, _ = run(["spectrum", "--error-bound-deg", "5", "--seed", "1"], capsys)
    assert code == 0
    assert "# seed: 1" in out
    table = dict((int(h), float(p)) for h, p in rows_of(out)[1:])
    for h in (0, 2, -2):
        assert math.isfinite(table[h]) and -240 < table[h] < -25


def test_pattern(capsys, tmp_path):
    svg = tmp_path / "p.svg"
    code, out, _ = run(["pattern", "--steer", "40", "--svg", str(svg)], capsys)
    assert code == 0
    rows = [(float(a), float(p)) for a, p in rows_of(out)[1:]]
    best = max(rows, key=lambda r: r[1])
    assert abs(best[0] - 40) <= 0.1 and best[1] == 0.0
    root = ET.parse(svg).getroot()
    assert root.get("version") == "1.1"
    assert len(root.findall("{http://www.w3.org/2000/svg}polyline")) == 1
    assert "href" not in svg.read_text()


def test_pattern_suppressed_order(capsys):
    code, out, _ = run(["pattern", "--harmonic", "0"], capsys)
    assert code == 0
    assert {p for _, p in rows_of(out)[1:]} == {"-240.000000"}


def test_scan(capsys, tmp_path):
    cuts = tmp_path / "cuts.csv"
    code, out, _ = run(["scan", "--from", "-40", "--to", "40", "--step", "10", "--cuts-out", str(cuts)], capsys)
    assert code == 0
    summary = rows_of(out)[1:]
    assert len(summary) == 9
    for steer, peak, *_ in summary:
        assert abs(float(peak) - float(steer)) <= 0.1
    assert len(rows_of(cuts.read_text())) == 1 + 9 * 1801


def test_scan_broadside_beamwidth(capsys):
    code, out, _ = run(["scan", "--from", "0", "--to", "0", "--step", "10"], capsys)
    (row,) = rows_of(out)[1:]
    assert float(row[4]) == pytest.approx(12.8, abs=0.2)


def test_scan_with_clock(capsys):
    code, out, _ = run(["scan", "--clock-hz", "1e8"], capsys)
    assert code == 0
    for steer, peak, *_ in rows_of(out)[1:]:
        assert abs(float(peak) - float(steer)) <= 1.0


def test_schedule(capsys):
    code, out, _ = run(["schedule", "--steer", "30"], capsys)
    rows = rows_of(out)
    head, body = rows[0], rows[1:]
    assert len(body) == 8
    t1 = head.index("t1_frac")
    assert float(body[1][t1]) == pytest.approx(0.75, abs=1e-12)
    _, out, _ = run(["schedule", "--steer", "40"], capsys)
    assert float(rows_of(out)[2][t1]) == pytest.approx(0.67861, abs=1e-5)
    _, out, _ = run(["schedule"], capsys)
    body = rows_of(out)[1:]
    assert len({tuple(r[1:11]) for r in body}) == 1


def test_schedule_round_trip(capsys, tmp_path):
    args = ["--steer", "25", "--clock-hz", "2.56e8", "--error-bound-deg", "4", "--seed", "9"]
    sched = tmp_path / "s.csv"
    assert main(["schedule", *args, "--out", str(sched)]) == 0
    direct = tmp_path / "a.csv"
    replay = tmp_path / "b.csv"
    assert main(["spectrum", *args, "--theta", "25", "--h-min", "-9", "--h-max", "9", "--out", str(direct)]) == 0
    assert main(["spectrum", "--timings", str(sched), "--theta", "25", "--h-min", "-9", "--h-max", "9",
                 "--out", str(replay)]) == 0
    assert rows_of(direct.read_text()) == rows_of(replay.read_text())


def test_schedule_round_trip_library_exact(tmp_path):
    from ssb_tma.config import ScenarioConfig
    from ssb_tma.harmonics import spectrum_analytic
    from ssb_tma.report import load_timings

    sched = tmp_path / "s.csv"
    main(["schedule", "--steer", "-35", "--error-bound-deg", "5", "--seed", "4", "--out", str(sched)])
    original = ScenarioConfig(phase_error_bound_deg=5, seed=4).build_array(-35).schedules
    for a, b in zip(original, load_timings(sched)):
        assert abs(spectrum_analytic(a, -21, 21).values - spectrum_analytic(b, -21, 21).values).max() < 1e-12


def test_sweep_loss(capsys):
    code, out, _ = run(["sweep-loss", "--tau-fractions", "0.25,0.2,0.125"], capsys)
    rows = [(float(f), float(l)) for f, l in rows_of(out)[1:]]
    assert rows[0][1] == pytest.approx(-0.91, abs=0.005)
    assert rows[2][1] == pytest.approx(-6.25, abs=0.005)
    assert rows[0][1] > rows[1][1] > rows[2][1]


def test_json_format(capsys):
    code, out, _ = run(["sweep-loss", "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["meta"]["columns"] == ["tau_fraction", "loss_db"]
    assert doc["meta"]["seed"] == 0
    assert doc["rows"][0] == [0.25, -0.912098]


def test_scan_json_includes_cuts(capsys):
    code, out, _ = run(["scan", "--from", "0", "--to", "10", "--grid-step", "1", "--format", "json"], capsys)
    doc = json.loads(out)
    assert len(doc["rows"]) == 2
    assert len(doc["cuts"]["rows"]) == 2 * 181


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"n_elements": 4, "tau_fraction": 0.125}))
    code, out, _ = run(["schedule", "--config", str(cfg)], capsys)
    assert code == 0
    assert len(rows_of(out)) == 1 + 4
    code, out, _ = run(["schedule", "--config", str(cfg), "--n-elements", "2"], capsys)
    assert len(rows_of(out)) == 1 + 2


@pytest.mark.parametrize("content", ["{not json", '{"bogus": 1}', '{"tau_fraction": 0.4}', "[1, 2]"])
def test_bad_config_exit_1(capsys, tmp_path, content):
    cfg = tmp_path / "c.json"
    cfg.write_text(content)
    code, _, err = run(["spectrum", "--config", str(cfg)], capsys)
    assert code == 1 and "error" in err


def test_usage_errors_exit_1(capsys):
    assert run(["pattern", "--steer", "95"], capsys)[0] == 1
    assert run(["scan", "--from", "10", "--to", "0"], capsys)[0] == 1
    assert run(["sweep-loss", "--tau-fractions", "0.3"], capsys)[0] == 1
    with pytest.raises(SystemExit) as e:
        main(["nonsense"])
    assert e.value.code == 1


def test_degenerate_exit_2(capsys):
    # 8 elements at half-wavelength have a -1st harmonic null at arcsin(1/4)
    theta = math.degrees(math.asin(0.25))
    assert run(["spectrum", "--theta", repr(theta)], capsys)[0] == 2
    assert run(["scan", "--from", "0", "--to", "0", "--harmonic", "0"], capsys)[0] == 2


def test_figure_output(tmp_path, capsys):
    png = tmp_path / "scan.png"
    assert main(["scan", "--grid-step", "0.5", "--figure", str(png)]) == 0
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    spec = tmp_path / "spec.svg"
    assert main(["spectrum", "--figure", str(spec)]) == 0
    ET.parse(spec)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "ssb_tma", "sweep-loss", "--tau-fractions", "0.25"],
                       capture_output=True, text=True, check=True)
    assert r.stdout.splitlines()[-1] == "0.250000,-0.912098"

"""``tma`` command-line tool.

Exit status: 0 on success, 1 for usage or configuration errors, 2 for
numerically degenerate input.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .array import ArrayConfig, angle_grid, beam_metrics, pattern_cut, power_spectrum_at
from .config import ScenarioConfig
from .errors import ConfigError, InvalidAngleError, TMAError
from .harmonics import insertion_loss_db, spectrum_analytic
from .report import TIMING_COLUMNS, TOOL, Table, load_timings, render, svg_line_plot


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="JSON scenario file")
    p.add_argument("--clock-hz", type=float, help="controller clock for timing quantization")
    p.add_argument("--error-bound-deg", type=float, help="uniform per-state phase error bound")
    p.add_argument("--seed", type=int, help="seed for the phase error draw")
    p.add_argument("--n-elements", type=int)
    p.add_argument("--spacing", type=float, help="element spacing in wavelengths")
    p.add_argument("--tau-fraction", type=float, help="on-duration as a fraction of the period")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path, help="write output here instead of stdout")
    p.add_argument("--svg", type=Path, help="also write a standalone SVG plot")
    p.add_argument("--figure", type=Path, help="also render a matplotlib figure (png, pdf, svg)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tma", description="Single-sideband time-modulated array simulator")
    parser.add_argument("--version", action="version", version=TOOL)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="harmonic levels received toward one angle")
    _common(p)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--steer", type=float, default=0.0)
    p.add_argument("--h-min", type=int, default=-5)
    p.add_argument("--h-max", type=int, default=5)
    p.add_argument("--timings", type=Path, help="schedule CSV from `tma schedule` to use instead of synthesis")

    p = sub.add_parser("pattern", help="pattern cut at one harmonic")
    _common(p)
    p.add_argument("--steer", type=float, default=0.0)
    p.add_argument("--harmonic", type=int, default=-1)
    p.add_argument("--grid-step", type=float, default=0.1)
    p.add_argument("--timings", type=Path, help="schedule CSV from `tma schedule` to use instead of synthesis")

    p = sub.add_parser("scan", help="pattern cuts over a range of steering angles")
    _common(p)
    p.add_argument("--from", dest="start", type=float, default=-40.0)
    p.add_argument("--to", dest="stop", type=float, default=40.0)
    p.add_argument("--step", type=float, default=10.0)
    p.add_argument("--harmonic", type=int, default=-1)
    p.add_argument("--grid-step", type=float, default=0.1)
    p.add_argument("--cuts-out", type=Path, help="write every cut as long-form CSV")

    p = sub.add_parser("schedule", help="per-element switching times")
    _common(p)
    p.add_argument("--steer", type=float, default=0.0)

    p = sub.add_parser("sweep-loss", help="insertion loss versus on-duration")
    _common(p)
    p.add_argument("--tau-fractions", default="0.25,0.2,0.125",
                   help="comma-separated on-duration fractions")
    return parser


def _scenario(args) -> ScenarioConfig:
    base = ScenarioConfig.load(args.config) if args.config else ScenarioConfig()
    return base.override(
        clock_hz=args.clock_hz,
        phase_error_bound_deg=args.error_bound_deg,
        seed=args.seed,
        n_elements=args.n_elements,
        spacing_wavelengths=args.spacing,
        tau_fraction=args.tau_fraction,
    )


def _meta(command: str, sc: ScenarioConfig, params: dict) -> dict:
    return {"tool": TOOL, "command": command, "config": sc.to_dict(), "params": params, "seed": sc.seed}


def _array(sc: ScenarioConfig, steer: float, timings: Path | None = None) -> ArrayConfig:
    if not -90 < steer < 90:
        raise InvalidAngleError(f"steering angle must lie in (-90, 90) degrees, got {steer}")
    if timings is None:
        return sc.build_array(steer)
    schedules = load_timings(timings)
    return ArrayConfig(len(schedules), sc.spacing_wavelengths, sc.carrier_hz, 1.0 / schedules[0].period,
                       tuple(schedules))


def cmd_spectrum(args, sc):
    if args.h_min > args.h_max:
        raise ConfigError("--h-min must not exceed --h-max")
    cfg = _array(sc, args.steer, args.timings)
    rows = power_spectrum_at(cfg, args.theta, args.h_min, args.h_max)
    params = {"theta": args.theta, "steer": args.steer, "h_min": args.h_min, "h_max": args.h_max,
              "timings": str(args.timings) if args.timings else None}
    table = Table(["order", "power_db"], rows)
    plots = {"svg": lambda path: Path(path).write_text(
                 svg_line_plot([("spectrum", [h for h, _ in rows], [p for _, p in rows])],
                               "Harmonic order", "Relative power (dB)")),
             "figure": lambda path: _figure("spectrum", rows, path)}
    return table, _meta("spectrum", sc, params), None, plots


def _check_step(step):
    if not step > 0:
        raise ConfigError("grid step must be positive")


def cmd_pattern(args, sc):
    _check_step(args.grid_step)
    cfg = _array(sc, args.steer, args.timings)
    cut = pattern_cut(cfg, args.harmonic, angle_grid(args.grid_step))
    rows = list(zip(cut.angles.tolist(), cut.power_db.tolist()))
    params = {"steer": args.steer, "harmonic": args.harmonic, "grid_step": args.grid_step,
              "timings": str(args.timings) if args.timings else None}
    series = [(f"h={args.harmonic}, steer {args.steer:g} deg", cut.angles, cut.power_db)]
    plots = {"svg": lambda path: Path(path).write_text(
                 svg_line_plot(series, "Angle (deg)", "Normalized power (dB)")),
             "figure": lambda path: _figure("pattern", series, path)}
    return Table(["theta_deg", "power_db"], rows), _meta("pattern", sc, params), None, plots


def _steer_angles(start, stop, step):
    if not step > 0:
        raise ConfigError("--step must be positive")
    if start > stop:
        raise ConfigError("--from must not exceed --to")
    n = int(math.floor((stop - start) / step + 1e-9))
    return [round(start + k * step, 10) for k in range(n + 1)]


def cmd_scan(args, sc):
    _check_step(args.grid_step)
    grid = angle_grid(args.grid_step)
    summary, cuts, series = [], [], []
    for steer in _steer_angles(args.start, args.stop, args.step):
        cut = pattern_cut(_array(sc, steer), args.harmonic, grid)
        m = beam_metrics(cut)
        summary.append((steer, m.peak_angle, m.peak_db, m.max_sidelobe_db, m.beamwidth_3db))
        cuts.extend((steer, a, p) for a, p in zip(cut.angles.tolist(), cut.power_db.tolist()))
        series.append((f"{steer:g} deg", cut.angles, cut.power_db))
    params = {"from": args.start, "to": args.stop, "step": args.step, "harmonic": args.harmonic,
              "grid_step": args.grid_step}
    meta = _meta("scan", sc, params)
    cut_table = Table(["steer_deg", "theta_deg", "power_db"], cuts)
    if args.cuts_out:
        args.cuts_out.write_text(cut_table.to_csv(meta))
    plots = {"svg": lambda path: Path(path).write_text(
                 svg_line_plot(series, "Angle (deg)", "Normalized power (dB)")),
             "figure": lambda path: _figure("pattern", series, path)}
    table = Table(["steer_deg", "peak_angle_deg", "peak_db", "sidelobe_db", "beamwidth_deg"], summary)
    return table, meta, {"cuts": {"columns": cut_table.columns, "rows": cut_table.json_rows()}}, plots


def cmd_schedule(args, sc):
    cfg = _array(sc, args.steer)
    rows = []
    for n, s in enumerate(cfg.schedules):
        a = spectrum_analytic(s, -1, -1)[-1]
        rows.append((n, *s.window_starts, *s.start_fractions, s.on_duration, s.period,
                     *(math.degrees(math.atan2(c.imag, c.real)) for c in s.phase_states),
                     math.degrees(math.atan2(a.imag, a.real))))
    exact = set(TIMING_COLUMNS[1:15])
    params = {"steer": args.steer}
    return Table(TIMING_COLUMNS, rows, exact), _meta("schedule", sc, params), None, {}


def cmd_sweep_loss(args, sc):
    try:
        fractions = [float(x) for x in args.tau_fractions.split(",") if x.strip()]
    except ValueError as e:
        raise ConfigError(f"bad --tau-fractions: {e}") from e
    if not fractions:
        raise ConfigError("--tau-fractions is empty")
    for f in fractions:
        if not 0 < f <= 0.25:
            raise ConfigError(f"on-duration fraction {f} not in (0, 0.25]")
    rows = [(f, insertion_loss_db(f, 1.0)) for f in fractions]
    params = {"tau_fractions": fractions}
    return Table(["tau_fraction", "loss_db"], rows), _meta("sweep-loss", sc, params), None, {}


def _figure(kind, data, path):
    from . import plotting

    if kind == "spectrum":
        plotting.spectrum_figure(data, path)
    else:
        plotting.pattern_figure(data, path)


COMMANDS = {
    "spectrum": cmd_spectrum,
    "pattern": cmd_pattern,
    "scan": cmd_scan,
    "schedule": cmd_schedule,
    "sweep-loss": cmd_sweep_loss,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        sc = _scenario(args)
        table, meta, extra, plots = COMMANDS[args.command](args, sc)
        text = render(table, meta, args.format, extra)
        if args.out:
            args.out.write_text(text)
        else:
            sys.stdout.write(text)
        for key in ("svg", "figure"):
            path = getattr(args, key)
            if path is not None:
                if key not in plots:
                    raise ConfigError(f"--{key} is not supported by {args.command}")
                plots[key](path)
    except TMAError as e:
        print(f"tma: error: {e}", file=sys.stderr)
        return e.exit_code
    except (ValueError, ArithmeticError) as e:
        print(f"tma: error: {e}", file=sys.stderr)
        return 2 if isinstance(e, ArithmeticError) else 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())


"""Command-line entry point.

Subcommands:
    run <cfg> --out <dir> [--mollify-delta <r>] [--emit-c]
    wave <cfg>                 print wave quantities only
    sweep <cfg> --axis <name> --values <csv-list> --out <dir>
    validate <cfg>             check config and jump-condition residuals

Exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .core import ConfigError, NumericalError
from .scenarios import (
    build_initial,
    parse_scenario,
    run_scenario,
    sweep,
    wire_reference,
)
from .waves import rh_residual, wave_speed

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _apply_overrides(cfg, args):
    if getattr(args, "mollify_delta", None) is not None:
        cfg = replace(cfg, mollify_delta=args.mollify_delta)
    return cfg


def _wave_block(cfg) -> str:
    """Key-value text block with the wave quantities for a scenario."""
    lines = []
    state0, boundary = build_initial(cfg)
    setup = wire_reference(state0, cfg.params)
    if cfg.declared_states is not None:
        st = cfg.declared_states
        lines.append(f"declared_states = ({st.u_minus}, {st.u_plus}, {st.v_minus}, {st.v_plus})")
        try:
            s = wave_speed(st, cfg.params)
            res = rh_residual(st, s, cfg.params)
            lines.append(f"declared_speed = {s:.17g}")
            lines.append(f"declared_rh_r1 = {res.r1:.17g}")
            lines.append(f"declared_rh_r2 = {res.r2:.17g}")
        except ValueError as exc:
            lines.append(f"declared_speed = n/a ({exc})")
    if setup.wave is None:
        lines.append("wave_present = false")
    else:
        w = setup.wave
        res = rh_residual(w.states, w.s, cfg.params)
        lines.append("wave_present = true")
        lines.append(f"s = {w.s:.17g}")
        lines.append(f"lambda = {w.lam:.17g}")
        lines.append(f"v_minus = {w.states.v_minus:.17g}")
        lines.append(f"kappa = {w.kappa:.17g}")
        lines.append(f"rh_r1 = {res.r1:.17g}")
        lines.append(f"rh_r2 = {res.r2:.17g}")
        lines.append(f"shift_x0 = {setup.shift.x0:.17g}")
        lines.append(f"beta_residual = {setup.shift.beta_residual:.17g}")
    return "\n".join(lines)


def _cmd_run(args) -> int:
    cfg = _apply_overrides(parse_scenario(args.config), args)
    manifest = run_scenario(cfg, args.out, emit_c=args.emit_c)
    print(f"wrote {args.out}/manifest.txt ({manifest['snapshot_count']} snapshots, "
          f"{manifest['step_count']} steps, {manifest['wall_time_s']:.2f} s)")
    if manifest.get("boundary_warning"):
        print("warning: wave front approached a domain boundary", file=sys.stderr)
    return EXIT_OK


def _cmd_wave(args) -> int:
    cfg = parse_scenario(args.config)
    print(_wave_block(cfg))
    return EXIT_OK


def _cmd_validate(args) -> int:
    cfg = parse_scenario(args.config)
    state0, boundary = build_initial(cfg)
    print(f"scenario '{cfg.name}' ok: {cfg.grid.n_nodes} nodes, "
          f"t_end={cfg.t_end}, initial_kind={cfg.initial_kind}")
    print(_wave_block(cfg))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = parse_scenario(args.config)
    try:
        values = [float(v) for v in args.values.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"bad --values list: {exc}") from exc
    manifests = sweep(cfg, args.axis, values, args.out)
    print(f"swept {args.axis} over {len(values)} values "
          f"({len(manifests)} succeeded); see {args.out}/sweep.csv")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chemoshock",
        description="1D parabolic-hyperbolic chemotaxis lab: waves, runs, diagnostics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario and write outputs")
    p_run.add_argument("config")
    p_run.add_argument("--out", required=True)
    p_run.add_argument("--mollify-delta", type=float, default=None,
                       help="override the scenario's mollifier width (0 disables)")
    p_run.add_argument("--emit-c", action="store_true",
                       help="append the attractant concentration as a 4th snapshot column")
    p_run.set_defaults(fn=_cmd_run)

    p_wave = sub.add_parser("wave", help="print wave quantities for a scenario")
    p_wave.add_argument("config")
    p_wave.set_defaults(fn=_cmd_wave)

    p_val = sub.add_parser("validate", help="check a scenario without running it")
    p_val.add_argument("config")
    p_val.set_defaults(fn=_cmd_validate)

    p_sweep = sub.add_parser("sweep", help="run a one-axis parameter sweep")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--axis", required=True)
    p_sweep.add_argument("--values", required=True,
                         help="comma-separated list, e.g. 0,0.5,1,2")
    p_sweep.add_argument("--out", required=True)
    p_sweep.set_defaults(fn=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())

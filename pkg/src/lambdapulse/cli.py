"""Command line interface.

Verbs map onto the package surface: ``run`` for a single propagation,
``sweep`` for parameter grids, ``presets`` to list shipped scenarios and
``check`` for a numerical self-test.  Exit codes: 0 success, 1 parse or
validation problems, 2 numerical invariant breaches (including flagged
sweep cells).
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import replace

import numpy as np

from .config import ScenarioConfig, load_preset, parse_config, PRESETS
from .dynamics import (
    DEFAULT_DT,
    TimeGrid,
    propagate,
    propagate_wavefunction,
    time_reversal_defect,
)
from .atom import ground_state
from .errors import InvariantBreach, ParseError, ValidationError
from .pulses import PulseShape
from .reporting import emit_sweep_csv, emit_trajectory_csv, ensure_dir, run_summary
from .scenario import Scenario, gaussian_reference_scenario
from .sweep import SweepSpec, run_sweep


def _load(args) -> ScenarioConfig:
    if (args.preset is None) == (args.config is None):
        raise ValidationError("give exactly one of --preset or --config")
    if args.preset is not None:
        return load_preset(args.preset)
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ValidationError(f"cannot read config {args.config}: {e}") from e
    return parse_config(text)


def _apply_overrides(scenario: Scenario, args) -> Scenario:
    if args.window is not None or args.dt is not None:
        base = scenario.resolved_grid()
        t0, t1 = args.window if args.window is not None else (base.t_start, base.t_end)
        dt = args.dt if args.dt is not None else base.dt
        scenario = replace(scenario, grid=TimeGrid(t0, t1, dt))
    if args.store_every is not None:
        scenario = replace(scenario, store_every=args.store_every)
    if args.verbatim_eq1:
        scenario = replace(scenario, verbatim_rho32=True)
    return scenario


def _out_dir(args, cfg: ScenarioConfig) -> str:
    return ensure_dir(args.out or cfg.out_dir or ".")


def cmd_run(args) -> int:
    cfg = _load(args)
    scenario = _apply_overrides(cfg.scenario, args)
    traj = scenario.run()

    window_shift = None
    if PulseShape.SINC in (scenario.pump.shape, scenario.stokes.shape):
        wide = scenario.with_doubled_window().run()
        window_shift = abs(wide.states[-1][1].real - traj.states[-1][1].real)

    out = _out_dir(args, cfg)
    path = emit_trajectory_csv(traj, os.path.join(out, "trajectory.csv"))
    print(run_summary(traj, scenario=scenario, window_shift=window_shift))
    print(f"trajectory written  {path}")
    return 0


def cmd_sweep(args) -> int:
    cfg = _load(args)
    if cfg.sweep is None:
        raise ValidationError("configuration has no [sweep] section (or pick a sweep preset)")
    base = _apply_overrides(cfg.scenario, args)
    spec = SweepSpec(base=base, axes=cfg.sweep.axes, observable=cfg.sweep.observable)
    started = time.perf_counter()
    result = run_sweep(spec, parallelism=args.workers)
    elapsed = time.perf_counter() - started

    out = _out_dir(args, cfg)
    path = emit_sweep_csv(result, os.path.join(out, "sweep.csv"))
    print(run_summary(result))
    print(f"elapsed             {elapsed:.1f} s with {args.workers} worker(s)")
    print(f"sweep written       {path}")
    return 2 if result.n_flagged else 0


def cmd_presets(args) -> int:
    width = max(len(name) for name in PRESETS)
    for name, (description, factory) in PRESETS.items():
        kind = "sweep" if factory().sweep is not None else "run"
        print(f"{name:<{width}}  [{kind}]   {description}")
    return 0


def _report(label: str, ok: bool, detail: str) -> bool:
    print(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
    return ok


def cmd_check(args) -> int:
    """Numerical self-test on the Gaussian reference scenario."""
    scenario = gaussian_reference_scenario()
    grid = scenario.resolved_grid()
    ok = True

    traj = propagate(scenario.atom, scenario.pump, scenario.stokes,
                     ground_state(), grid, store_every=20)
    trace_dev = max(abs(traj.trace_min - 1.0), abs(traj.trace_max - 1.0))
    ok &= _report("trace conservation", trace_dev <= 1e-8, f"max deviation {trace_dev:.2e}")
    purity_dev = abs(traj.purity_min - 1.0)
    ok &= _report("purity conservation", purity_dev <= 1e-6, f"max deviation {purity_dev:.2e}")
    pop_min = min(traj.rho11.min(), traj.rho22.min(), traj.rho33.min())
    ok &= _report("population positivity", pop_min >= -1e-9, f"min population {pop_min:.2e}")

    psi0 = np.array([1.0, 0.0, 0.0], dtype=complex)
    wf = propagate_wavefunction(scenario.atom, scenario.pump, scenario.stokes,
                                psi0, grid, store_every=20)
    diff = float(np.max(np.abs(traj.states - wf.states)))
    ok &= _report("dual-propagator agreement", diff <= 1e-6, f"max element diff {diff:.2e}")

    defect = time_reversal_defect(scenario.atom, scenario.pump, scenario.stokes,
                                  ground_state(), grid)
    ok &= _report("time reversal", defect <= 1e-6, f"population defect {defect:.2e}")

    span = (grid.t_start, grid.t_end)
    ref = propagate(scenario.atom, scenario.pump, scenario.stokes, ground_state(),
                    TimeGrid(*span, 1.25e-4), store_every=10**8).states[-1]
    errs = []
    for dt in (2e-3, 1e-3):
        end = propagate(scenario.atom, scenario.pump, scenario.stokes, ground_state(),
                        TimeGrid(*span, dt), store_every=10**8).states[-1]
        errs.append(float(np.max(np.abs(end - ref))))
    ratio = errs[0] / errs[1]
    ok &= _report("RK4 convergence order", 12.0 <= ratio <= 20.0,
                  f"halving dt shrinks endpoint error {ratio:.1f}x")

    print("self-test", "passed" if ok else "FAILED")
    return 0 if ok else 2


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", help="name of a shipped scenario (see `presets`)")
    p.add_argument("--config", help="path to a scenario configuration file")
    p.add_argument("--out", help="output directory (default: config value or '.')")
    p.add_argument("--dt", type=float, help=f"integration step in fs (default {DEFAULT_DT})")
    p.add_argument("--window", type=float, nargs=2, metavar=("T0", "T1"),
                   help="integration window in fs")
    p.add_argument("--store-every", type=int, dest="store_every",
                   help="keep every N-th integration step in the trajectory")
    p.add_argument("--verbatim-eq1", action="store_true", dest="verbatim_eq1",
                   help="use the (rho33 - rho11) variant of the rho32 equation "
                        "instead of the Hamiltonian-consistent (rho33 - rho22)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lambdapulse",
        description="Few-cycle pulse driven population transfer in a lambda atom",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="single propagation, trajectory CSV + summary")
    _add_common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="parameter grid, sweep CSV + summary")
    _add_common(p_sweep)
    p_sweep.add_argument("--workers", type=int, default=1,
                         help="worker processes (result is identical for any count)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_presets = sub.add_parser("presets", help="list shipped scenarios")
    p_presets.set_defaults(func=cmd_presets)

    p_check = sub.add_parser("check", help="numerical invariant and convergence self-test")
    p_check.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except InvariantBreach as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

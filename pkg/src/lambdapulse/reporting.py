"""CSV emission and human-readable run summaries.

Floats are written with 17 significant digits so every file re-parses to
the exact stored values; the files are plain comma-separated text ready for
gnuplot or a spreadsheet.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .atom import detunings
from .dynamics import Trajectory, observables
from .pulses import pulse_area
from .scenario import Scenario
from .sweep import SweepResult

TRAJECTORY_HEADER = (
    "t_fs,rho11,rho22,rho33,re_rho21,im_rho21,re_rho31,im_rho31,"
    "re_rho32,im_rho32,omega31_t,omega32_t"
)


def _num(x: float) -> str:
    return f"{x:.16e}"


def emit_trajectory_csv(traj: Trajectory, path: str) -> str:
    """One row per stored step, columns as in TRAJECTORY_HEADER."""
    rows = [TRAJECTORY_HEADER]
    for i in range(len(traj)):
        s = traj.states[i]
        rows.append(",".join(_num(v) for v in (
            traj.times[i],
            s[0].real, s[1].real, s[2].real,
            s[5].real, s[5].imag,
            s[3].real, s[3].imag,
            s[4].real, s[4].imag,
            traj.fields[i, 0], traj.fields[i, 1],
        )))
    _write(path, rows)
    return path


def emit_sweep_csv(result: SweepResult, path: str) -> str:
    """1-D sweeps: ``axis_value,observable``.

    2-D sweeps: long format ``axis1,axis2,observable,converged`` in
    row-major grid order, converged as 1/0.
    """
    if len(result.axes) == 1:
        rows = ["axis_value,observable"]
        for v, obs in zip(result.axis_values[0], result.values):
            rows.append(f"{_num(v)},{_num(obs)}")
    else:
        rows = ["axis1,axis2,observable,converged"]
        v1, v2 = result.axis_values
        for i in range(len(v1)):
            for j in range(len(v2)):
                rows.append(
                    f"{_num(v1[i])},{_num(v2[j])},"
                    f"{_num(result.values[i, j])},{int(result.converged[i, j])}"
                )
    _write(path, rows)
    return path


def _write(path: str, rows: list[str]) -> None:
    try:
        with open(path, "w", encoding="ascii") as fh:
            fh.write("\n".join(rows) + "\n")
    except OSError as e:
        raise OSError(f"could not write {path}: {e}") from e


def _pi_units(area: float) -> str:
    return f"{area:.4f} rad ({area / math.pi:.3f} pi)"


def run_summary(result, scenario: Scenario | None = None,
                window_shift: float | None = None) -> str:
    """Readable block for a Trajectory or a SweepResult.

    With the scenario available the block also reports pulse areas over the
    integration window and the detunings; ``window_shift`` carries the
    doubled-window sensitivity of the final transfer (reported for sinc
    runs, whose 1/t tails make the window a genuine choice).
    """
    if isinstance(result, SweepResult):
        return _sweep_summary(result)
    return _trajectory_summary(result, scenario, window_shift)


def _trajectory_summary(traj: Trajectory, scenario, window_shift) -> str:
    obs = observables(traj)
    lines = [
        f"final populations   rho11 = {obs.final_rho11:.6f}  "
        f"rho22 = {obs.final_rho22:.6f}  rho33 = {obs.final_rho33:.6f}",
        f"peak rho33          {obs.peak_rho33:.4f} at t = {obs.peak_rho33_time:+.3f} fs",
    ]
    if scenario is not None:
        grid = scenario.resolved_grid()
        window = (grid.t_start, grid.t_end)
        area_p = pulse_area(scenario.pump, window)
        area_s = pulse_area(scenario.stokes, window)
        det = detunings(scenario.atom, scenario.pump, scenario.stokes)
        lines.append(
            f"pulse areas         pump {_pi_units(area_p)}  "
            f"stokes {_pi_units(area_s)}  total {_pi_units(area_p + area_s)}"
        )
        lines.append(
            f"detunings           delta1 = {det.delta1:g}  delta2 = {det.delta2:g}  "
            f"two-photon = {det.two_photon:g}"
        )
        lines.append(
            f"window              [{grid.t_start:g}, {grid.t_end:g}] fs, "
            f"dt = {grid.step:g} fs"
        )
    lines.append(
        f"trace deviation     min {obs.trace_dev_min:+.3e}  max {obs.trace_dev_max:+.3e}"
    )
    lines.append(f"purity minimum      {obs.purity_min:.9f}")
    if window_shift is not None:
        lines.append(
            f"window sensitivity  final rho22 shifts by {window_shift:.2e} "
            "when the window is doubled"
        )
    return "\n".join(lines)


def _sweep_summary(result: SweepResult) -> str:
    good = result.values[result.converged]
    shape = "x".join(str(len(v)) for v in result.axis_values)
    lines = [
        f"sweep grid          {shape} over "
        + ", ".join(a.param.value for a in result.axes),
        f"observable          {result.observable.value}",
    ]
    if good.size:
        lines.append(
            f"value range         min {good.min():.6f}  max {good.max():.6f}  "
            f"mean {good.mean():.6f}"
        )
    lines.append(f"flagged cells       {result.n_flagged}")
    return "\n".join(lines)


def ensure_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path

"""Density-matrix propagation for the driven lambda system.

The equations of motion keep the full oscillating couplings (no
rotating-wave approximation) and contain no relaxation terms, so a pure
state stays pure and the trace is conserved analytically.  Everything is
integrated with classic fixed-step RK4; fixed steps keep parameter sweeps
bit-reproducible.

A note on the rho32 equation: the commutator of the lambda Hamiltonian
gives a population-difference term (rho33 - rho22).  An alternative variant
with (rho33 - rho11) circulates in the literature; it is not unitary (it
breaks purity conservation) and can be selected with ``verbatim_rho32=True``
for comparison runs only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .atom import DensityState, LambdaAtom
from .errors import InvariantBreach, StepTooLarge, ValidationError
from .pulses import PulseShape, PulseSpec

# Default integration step, fs.  Roughly 4200 steps per carrier period at
# omega = 3 rad/fs, which puts RK4 deep in its asymptotic regime.
DEFAULT_DT = 5e-4

# Minimum number of steps per carrier period before the run is refused.
MIN_STEPS_PER_PERIOD = 20

# Mid-run trace tolerance; beyond this the run aborts as a blow-up.
TRACE_BREACH_TOL = 1e-6

MAX_STEPS = 10**8


@dataclass(frozen=True)
class TimeGrid:
    """Integration window [t_start, t_end] in fs with target step dt.

    The actual step divides the window exactly: n_steps = ceil(span/dt), so
    it is never larger than the requested dt.
    """

    t_start: float
    t_end: float
    dt: float = DEFAULT_DT

    def __post_init__(self):
        if not self.t_start < self.t_end:
            raise ValidationError(
                f"t_start ({self.t_start}) must precede t_end ({self.t_end})"
            )
        if not self.dt > 0:
            raise ValidationError(f"dt must be positive, got {self.dt}")
        if (self.t_end - self.t_start) / self.dt > MAX_STEPS:
            raise ValidationError(
                f"grid would exceed {MAX_STEPS} steps; widen dt or shrink the window"
            )

    @property
    def n_steps(self) -> int:
        return max(1, int(math.ceil((self.t_end - self.t_start) / self.dt - 1e-9)))

    @property
    def step(self) -> float:
        """Actual step size used by the integrator."""
        return (self.t_end - self.t_start) / self.n_steps


def _pulse_params(spec: PulseSpec) -> np.ndarray:
    code = (
        _kernels.GAUSSIAN_CODE
        if spec.shape is PulseShape.GAUSSIAN_CHIRPED
        else _kernels.SINC_CODE
    )
    return np.array(
        [code, spec.omega_carrier, spec.rabi_peak, spec.tau, spec.chirp, spec.cep],
        dtype=float,
    )


def _store_indices(n_steps: int, store_every: int) -> np.ndarray:
    if store_every < 1:
        raise ValidationError(f"store_every must be >= 1, got {store_every}")
    idx = list(range(0, n_steps + 1, store_every))
    if idx[-1] != n_steps:
        idx.append(n_steps)
    return np.asarray(idx, dtype=np.int64)


@dataclass
class Trajectory:
    """Stored samples of one propagation plus extrema tracked at every step.

    ``states`` rows are packed as (rho11, rho22, rho33, rho31, rho32, rho21);
    ``fields`` rows hold the sampled couplings (omega31_t, omega32_t) in
    rad/fs.  The peak rho33 and the trace/purity extrema are tracked inside
    the integrator over every step, not just the stored ones.
    """

    times: np.ndarray
    states: np.ndarray
    fields: np.ndarray
    peak_rho33: float
    peak_rho33_time: float
    trace_min: float = 1.0
    trace_max: float = 1.0
    purity_min: float = 1.0

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=complex)
        self.fields = np.asarray(self.fields, dtype=float)
        if not (len(self.times) == len(self.states) == len(self.fields)):
            raise ValidationError("times, states and fields must have equal length")
        if len(self.times) == 0:
            raise ValidationError("trajectory must hold at least one sample")
        if np.any(np.diff(self.times) <= 0):
            raise ValidationError("times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def rho11(self) -> np.ndarray:
        return self.states[:, 0].real

    @property
    def rho22(self) -> np.ndarray:
        return self.states[:, 1].real

    @property
    def rho33(self) -> np.ndarray:
        return self.states[:, 2].real

    @property
    def rho31(self) -> np.ndarray:
        return self.states[:, 3]

    @property
    def rho32(self) -> np.ndarray:
        return self.states[:, 4]

    @property
    def rho21(self) -> np.ndarray:
        return self.states[:, 5]

    @property
    def trace(self) -> np.ndarray:
        return self.rho11 + self.rho22 + self.rho33

    @property
    def purity(self) -> np.ndarray:
        return (
            self.rho11**2
            + self.rho22**2
            + self.rho33**2
            + 2.0
            * (
                np.abs(self.states[:, 3]) ** 2
                + np.abs(self.states[:, 4]) ** 2
                + np.abs(self.states[:, 5]) ** 2
            )
        )

    def state_at(self, i: int) -> DensityState:
        return DensityState.from_vector(self.states[i], check=False)

    @property
    def final_state(self) -> DensityState:
        return self.state_at(-1)


@dataclass(frozen=True)
class ObservableSummary:
    """Scalar summary of a trajectory: what ends where, and how cleanly."""

    final_rho11: float
    final_rho22: float
    final_rho33: float
    peak_rho33: float
    peak_rho33_time: float
    trace_dev_min: float
    trace_dev_max: float
    purity_min: float


def bloch_rhs(atom: LambdaAtom, omega31_t: float, omega32_t: float,
              rho: DensityState, verbatim_rho32: bool = False) -> np.ndarray:
    """Derivative of the packed density state at given instantaneous couplings.

    Returns a complex vector ordered like :data:`lambdapulse.atom.STATE_LABELS`.
    """
    out = np.empty(6, dtype=np.complex128)
    _kernels.bloch_derivative(
        out, rho.to_vector(), atom.omega31, atom.omega21,
        float(omega31_t), float(omega32_t), verbatim_rho32,
    )
    return out


def _carrier_step_limit(pump: PulseSpec, stokes: PulseSpec) -> float:
    fastest = max(pump.omega_carrier, stokes.omega_carrier)
    return (2.0 * math.pi / fastest) / MIN_STEPS_PER_PERIOD


def _check_step(h: float, pump: PulseSpec, stokes: PulseSpec) -> None:
    limit = _carrier_step_limit(pump, stokes)
    if abs(h) > limit:
        raise StepTooLarge(
            f"step {abs(h):.3g} fs undersamples the carrier; "
            f"need <= {limit:.3g} fs ({MIN_STEPS_PER_PERIOD} steps per period)"
        )


def _raise_breach(breach_step: int, t0: float, h: float) -> None:
    t = t0 + breach_step * h
    raise InvariantBreach(
        f"trace left the 1 +/- {TRACE_BREACH_TOL:g} band at t = {t:.6g} fs "
        f"(step {breach_step}); the integration blew up"
    )


def _integrate(atom: LambdaAtom, pump: PulseSpec, stokes: PulseSpec,
               state0: np.ndarray, t0: float, h: float, n_steps: int,
               store_every: int, verbatim_rho32: bool) -> Trajectory:
    """Sign-agnostic driver around the Bloch kernel (h < 0 runs backwards)."""
    store_idx = _store_indices(n_steps, store_every)
    times, states, fields, n_stored, peak33, t_peak, tr_min, tr_max, pur_min, breach = (
        _kernels.propagate_bloch(
            atom.omega31, atom.omega21,
            _pulse_params(pump), _pulse_params(stokes),
            np.asarray(state0, dtype=np.complex128),
            t0, h, n_steps, store_idx, TRACE_BREACH_TOL, verbatim_rho32,
        )
    )
    if breach >= 0:
        _raise_breach(breach, t0, h)
    if h < 0:
        return Trajectory(times[:n_stored][::-1], states[:n_stored][::-1],
                          fields[:n_stored][::-1], peak33, t_peak, tr_min, tr_max, pur_min)
    return Trajectory(times[:n_stored], states[:n_stored], fields[:n_stored],
                      peak33, t_peak, tr_min, tr_max, pur_min)


def propagate(atom: LambdaAtom, pump: PulseSpec, stokes: PulseSpec,
              rho0: DensityState, grid: TimeGrid, store_every: int = 1,
              verbatim_rho32: bool = False) -> Trajectory:
    """Propagate a density state across the grid with fixed-step RK4.

    The couplings are sampled at t, t + dt/2 and t + dt as the four stages
    require.  Raises StepTooLarge when the step undersamples the carrier and
    InvariantBreach when the trace drifts beyond 1e-6 mid-run.
    """
    _check_step(grid.step, pump, stokes)
    return _integrate(atom, pump, stokes, rho0.to_vector(), grid.t_start,
                      grid.step, grid.n_steps, store_every, verbatim_rho32)


def propagate_wavefunction(atom: LambdaAtom, pump: PulseSpec, stokes: PulseSpec,
                           psi0, grid: TimeGrid, store_every: int = 1) -> Trajectory:
    """Independent cross-check path: propagate a pure state as a wavefunction.

    Integrates i dpsi/dt = H(t) psi with level energies (0, omega21, omega31)
    and returns the outer-product trajectory, directly comparable to
    :func:`propagate` output.  With no relaxation in the equations of motion
    the two must agree to integrator accuracy.
    """
    psi = np.asarray(psi0, dtype=np.complex128)
    if psi.shape != (3,):
        raise ValidationError(f"psi0 must have 3 components, got shape {psi.shape}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-9:
        raise ValidationError(f"psi0 must be normalized, |psi0| = {norm!r}")
    _check_step(grid.step, pump, stokes)
    store_idx = _store_indices(grid.n_steps, store_every)
    times, states, fields, n_stored, peak33, t_peak, tr_min, tr_max, pur_min, breach = (
        _kernels.propagate_schrodinger(
            atom.omega31, atom.omega21,
            _pulse_params(pump), _pulse_params(stokes),
            psi, grid.t_start, grid.step, grid.n_steps, store_idx, TRACE_BREACH_TOL,
        )
    )
    if breach >= 0:
        _raise_breach(breach, grid.t_start, grid.step)
    return Trajectory(times[:n_stored], states[:n_stored], fields[:n_stored],
                      peak33, t_peak, tr_min, tr_max, pur_min)


def observables(traj: Trajectory) -> ObservableSummary:
    """Final populations plus the whole-run extrema tracked by the integrator."""
    final = traj.states[-1]
    return ObservableSummary(
        final_rho11=final[0].real,
        final_rho22=final[1].real,
        final_rho33=final[2].real,
        peak_rho33=traj.peak_rho33,
        peak_rho33_time=traj.peak_rho33_time,
        trace_dev_min=traj.trace_min - 1.0,
        trace_dev_max=traj.trace_max - 1.0,
        purity_min=traj.purity_min,
    )


def time_reversal_defect(atom: LambdaAtom, pump: PulseSpec, stokes: PulseSpec,
                         rho0: DensityState, grid: TimeGrid,
                         verbatim_rho32: bool = False) -> float:
    """Forward-then-backward consistency check.

    Runs the grid forward, then integrates the final state back to t_start
    with the time-reversed stepping, and returns the maximum absolute
    population difference from the initial state.  For a healthy integrator
    this sits at accumulated-roundoff level.
    """
    _check_step(grid.step, pump, stokes)
    n = grid.n_steps
    fwd = _integrate(atom, pump, stokes, rho0.to_vector(), grid.t_start,
                     grid.step, n, n, verbatim_rho32)
    back = _integrate(atom, pump, stokes, fwd.states[-1], grid.t_end,
                      -grid.step, n, n, verbatim_rho32)
    recovered = back.states[0]
    start = rho0.to_vector()
    return float(np.max(np.abs(recovered[:3].real - start[:3].real)))

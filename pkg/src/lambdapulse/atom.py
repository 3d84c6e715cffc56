"""Three-level lambda atom and its density-matrix state.

Level scheme: two lower states |1>, |2> couple optically to a common upper
state |3>; the |2>-|1> transition is dipole forbidden, so no coupling field
for it exists anywhere in the package.  The only level data are the two
independent spacings omega31 and omega21 (rad/fs); omega32 is always
derived, never stored.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from typing import NamedTuple

import numpy as np

from .errors import ValidationError
from .pulses import PulseSpec

TRACE_ATOL = 1e-12
POPULATION_ATOL = 1e-9

# Ordering of the independent density-matrix components in packed vectors.
STATE_LABELS = ("rho11", "rho22", "rho33", "rho31", "rho32", "rho21")


@dataclass(frozen=True)
class LambdaAtom:
    """Level spacings of the lambda system, rad/fs."""

    omega31: float
    omega21: float

    def __post_init__(self):
        if not self.omega31 > self.omega21:
            raise ValidationError(
                f"omega31 ({self.omega31}) must exceed omega21 ({self.omega21})"
            )
        if self.omega21 < 0:
            raise ValidationError(f"omega21 must be >= 0, got {self.omega21}")

    @property
    def omega32(self) -> float:
        return self.omega31 - self.omega21


class Detunings(NamedTuple):
    delta1: float
    delta2: float
    two_photon: float


def detunings(atom: LambdaAtom, pump: PulseSpec, stokes: PulseSpec) -> Detunings:
    """One-photon detunings of each pulse from its transition, and their difference."""
    delta1 = atom.omega31 - pump.omega_carrier
    delta2 = atom.omega32 - stokes.omega_carrier
    return Detunings(delta1, delta2, delta1 - delta2)


@dataclass(frozen=True)
class DensityState:
    """Hermitian unit-trace 3x3 density matrix, stored as its upper triangle.

    Only the independent set {rho11, rho22, rho33 real; rho31, rho32, rho21
    complex} is kept, so rho_ij = rho_ji* holds exactly by construction.
    """

    rho11: float
    rho22: float
    rho33: float
    rho31: complex = 0j
    rho32: complex = 0j
    rho21: complex = 0j
    check: InitVar[bool] = True

    def __post_init__(self, check):
        if not check:
            return
        pops = (self.rho11, self.rho22, self.rho33)
        if not all(np.isfinite(pops)):
            raise ValidationError(f"non-finite populations {pops}")
        tr = sum(pops)
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValidationError(f"trace must be 1 within {TRACE_ATOL}, got {tr!r}")
        for label, p in zip(STATE_LABELS, pops):
            if p < -POPULATION_ATOL or p > 1.0 + POPULATION_ATOL:
                raise ValidationError(f"{label} outside [0, 1]: {p!r}")

    @property
    def trace(self) -> float:
        return self.rho11 + self.rho22 + self.rho33

    @property
    def purity(self) -> float:
        return (
            self.rho11**2
            + self.rho22**2
            + self.rho33**2
            + 2.0 * (abs(self.rho31) ** 2 + abs(self.rho32) ** 2 + abs(self.rho21) ** 2)
        )

    @property
    def populations(self) -> tuple[float, float, float]:
        return (self.rho11, self.rho22, self.rho33)

    def as_matrix(self) -> np.ndarray:
        """Full 3x3 complex matrix with the conjugate lower triangle filled in."""
        return np.array(
            [
                [self.rho11, np.conj(self.rho21), np.conj(self.rho31)],
                [self.rho21, self.rho22, np.conj(self.rho32)],
                [self.rho31, self.rho32, self.rho33],
            ],
            dtype=complex,
        )

    def to_vector(self) -> np.ndarray:
        """Packed complex vector in STATE_LABELS order."""
        return np.array(
            [self.rho11, self.rho22, self.rho33, self.rho31, self.rho32, self.rho21],
            dtype=complex,
        )

    @classmethod
    def from_vector(cls, vec, check: bool = True) -> "DensityState":
        v = np.asarray(vec, dtype=complex)
        return cls(
            v[0].real, v[1].real, v[2].real, complex(v[3]), complex(v[4]), complex(v[5]),
            check=check,
        )

    @classmethod
    def from_matrix(cls, m, check: bool = True) -> "DensityState":
        m = np.asarray(m, dtype=complex)
        if check and not np.allclose(m, m.conj().T, atol=1e-12):
            raise ValidationError("matrix is not Hermitian within 1e-12")
        return cls(
            m[0, 0].real, m[1, 1].real, m[2, 2].real,
            complex(m[2, 0]), complex(m[2, 1]), complex(m[1, 0]),
            check=check,
        )


def ground_state() -> DensityState:
    """All population in |1>, no coherences."""
    return DensityState(1.0, 0.0, 0.0)

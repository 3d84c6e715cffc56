import numpy as np
import pytest

from lambdapulse import (
    DensityState,
    LambdaAtom,
    PulseShape,
    PulseSpec,
    ValidationError,
    detunings,
    ground_state,
)


def pulse(omega):
    return PulseSpec(PulseShape.GAUSSIAN_CHIRPED, omega_carrier=omega,
                     rabi_peak=0.76, tau_p=4.70)


class TestLambdaAtom:
    def test_reference_levels(self):
        atom = LambdaAtom(omega31=3.0, omega21=0.4)
        assert atom.omega32 == 2.6

    def test_level_ordering_enforced(self):
        with pytest.raises(ValidationError):
            LambdaAtom(omega31=0.4, omega21=3.0)
        with pytest.raises(ValidationError):
            LambdaAtom(omega31=1.0, omega21=1.0)
        with pytest.raises(ValidationError):
            LambdaAtom(omega31=1.0, omega21=-0.1)

    def test_splitting_may_vanish(self):
        atom = LambdaAtom(omega31=3.0, omega21=0.0)
        assert atom.omega32 == 3.0


class TestDetunings:
    def test_reference_is_doubly_resonant(self):
        atom = LambdaAtom(3.0, 0.4)
        d = detunings(atom, pulse(3.0), pulse(2.6))
        assert d == (0.0, 0.0, 0.0)

    def test_single_photon_detuning(self):
        atom = LambdaAtom(3.0, 0.4)
        d = detunings(atom, pulse(3.1), pulse(2.6))
        assert d.delta1 == pytest.approx(-0.1, abs=1e-15)
        assert d.delta2 == 0.0
        assert d.two_photon == pytest.approx(-0.1, abs=1e-15)

    def test_two_photon_resonance_maintained(self):
        atom = LambdaAtom(3.0, 0.4)
        d = detunings(atom, pulse(3.1), pulse(2.7))
        assert d.delta1 == pytest.approx(-0.1, abs=1e-15)
        assert d.delta2 == pytest.approx(-0.1, abs=1e-15)
        assert d.two_photon == pytest.approx(0.0, abs=1e-15)


class TestDensityState:
    def test_ground_state(self):
        rho = ground_state()
        assert rho.trace == 1.0
        assert rho.purity == 1.0
        assert rho.rho22 == 0.0 and rho.rho33 == 0.0

    def test_trace_tolerance_is_strict(self):
        DensityState(0.5, 0.5 + 5e-13, 0.0)
        with pytest.raises(ValidationError):
            DensityState(0.5, 0.5 + 1e-11, 0.0)

    def test_population_bounds(self):
        with pytest.raises(ValidationError):
            DensityState(1.5, -0.5, 0.0)
        with pytest.raises(ValidationError):
            DensityState(1.0 + 2e-9, -2e-9, 0.0)

    def test_unchecked_construction_for_integrator_output(self):
        drifted = DensityState(0.5, 0.5 + 1e-9, 0.0, check=False)
        assert drifted.trace > 1.0

    def test_matrix_round_trip(self):
        rho = DensityState(0.5, 0.3, 0.2, rho31=0.1 + 0.05j, rho32=-0.02j, rho21=0.07)
        m = rho.as_matrix()
        np.testing.assert_allclose(m, m.conj().T)
        assert np.trace(m) == pytest.approx(1.0, abs=1e-15)
        again = DensityState.from_matrix(m)
        assert again == rho

    def test_vector_round_trip(self):
        rho = DensityState(0.6, 0.25, 0.15, rho31=0.03 - 0.01j)
        assert DensityState.from_vector(rho.to_vector()) == rho

    def test_non_hermitian_matrix_rejected(self):
        m = np.eye(3, dtype=complex) / 3
        m[0, 1] = 0.2
        with pytest.raises(ValidationError):
            DensityState.from_matrix(m)

    def test_purity_of_balanced_mixture(self):
        rho = DensityState(1 / 3, 1 / 3, 1 / 3)
        assert rho.purity == pytest.approx(1 / 3, rel=1e-12)

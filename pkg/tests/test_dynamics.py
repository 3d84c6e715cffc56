import math

import numpy as np
import pytest

from lambdapulse import (
    DensityState,
    InvariantBreach,
    LambdaAtom,
    PulseShape,
    PulseSpec,
    StepTooLarge,
    TimeGrid,
    Trajectory,
    ValidationError,
    bloch_rhs,
    gaussian_reference_scenario,
    ground_state,
    instantaneous_rabi,
    observables,
    propagate,
    propagate_wavefunction,
    time_reversal_defect,
)

ATOM = LambdaAtom(omega31=3.0, omega21=0.4)


def pulses(rabi1=0.76, rabi2=0.79):
    pump = PulseSpec(PulseShape.GAUSSIAN_CHIRPED, 3.0, rabi1, 4.70, chirp=0.016)
    stokes = PulseSpec(PulseShape.GAUSSIAN_CHIRPED, 2.6, rabi2, 4.70, chirp=0.016)
    return pump, stokes


# --- independent oracle: dense-matrix commutator -----------------------------

def lambda_hamiltonian(atom, o31, o32):
    """H/hbar with level energies (0, omega21, omega31) and real couplings."""
    h = np.zeros((3, 3), dtype=complex)
    h[1, 1] = atom.omega21
    h[2, 2] = atom.omega31
    h[2, 0] = h[0, 2] = -o31
    h[2, 1] = h[1, 2] = -o32
    return h


def commutator_derivative(atom, o31, o32, rho_matrix):
    h = lambda_hamiltonian(atom, o31, o32)
    return -1j * (h @ rho_matrix - rho_matrix @ h)


def packed_to_matrix(vec):
    r11, r22, r33, r31, r32, r21 = vec
    return np.array([
        [r11, np.conj(r21), np.conj(r31)],
        [r21, r22, np.conj(r32)],
        [r31, r32, r33],
    ])


def random_density_matrix(rng):
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


class TestBlochRhs:
    def test_matches_commutator_oracle(self):
        rng = np.random.default_rng(42)
        for _ in range(25):
            rho_m = random_density_matrix(rng)
            o31, o32 = rng.uniform(-1.0, 1.0, size=2)
            got = packed_to_matrix(bloch_rhs(ATOM, o31, o32, DensityState.from_matrix(rho_m)))
            want = commutator_derivative(ATOM, o31, o32, rho_m)
            assert np.max(np.abs(got - want)) <= 1e-14

    def test_diagonal_state_is_stationary_without_fields(self):
        rho = DensityState(0.2, 0.5, 0.3)
        deriv = bloch_rhs(ATOM, 0.0, 0.0, rho)
        assert np.all(deriv == 0.0)

    def test_bare_coherence_rotation(self):
        c = 0.21 - 0.13j
        rho = DensityState(0.5, 0.0, 0.5, rho31=c)
        deriv = bloch_rhs(ATOM, 0.0, 0.0, rho)
        assert deriv[3] == pytest.approx(-1j * ATOM.omega31 * c, rel=1e-15)
        assert deriv[0] == 0.0 and deriv[1] == 0.0 and deriv[2] == 0.0

    def test_verbatim_variant_changes_only_rho32_line(self):
        rho = DensityState(0.6, 0.1, 0.3, rho31=0.05j, rho32=0.1, rho21=0.02)
        default = bloch_rhs(ATOM, 0.3, 0.4, rho)
        verbatim = bloch_rhs(ATOM, 0.3, 0.4, rho, verbatim_rho32=True)
        np.testing.assert_array_equal(np.delete(default, 4), np.delete(verbatim, 4))
        # (rho33 - rho22) vs (rho33 - rho11) differ by rho11 - rho22
        shift = verbatim[4] - default[4]
        assert shift == pytest.approx(-1j * 0.4 * (rho.rho22 - rho.rho11), rel=1e-13)


class TestTimeGrid:
    def test_step_never_exceeds_dt(self):
        grid = TimeGrid(0.0, 1.0, dt=0.3)
        assert grid.n_steps == 4
        assert grid.step == 0.25

    def test_exact_division_preserved(self):
        grid = TimeGrid(-14.1, 14.1, dt=5e-4)
        assert grid.n_steps == 56400

    @pytest.mark.parametrize("bad", [
        dict(t_start=1.0, t_end=0.0, dt=0.1),
        dict(t_start=0.0, t_end=0.0, dt=0.1),
        dict(t_start=0.0, t_end=1.0, dt=0.0),
        dict(t_start=0.0, t_end=1.0, dt=-0.1),
        dict(t_start=0.0, t_end=1e6, dt=1e-6),
    ])
    def test_invalid_grids_rejected(self, bad):
        with pytest.raises(ValidationError):
            TimeGrid(**bad)


class TestPropagate:
    def test_zero_field_keeps_ground_state_exactly(self):
        pump, stokes = pulses(rabi1=0.0, rabi2=0.0)
        traj = propagate(ATOM, pump, stokes, ground_state(),
                         TimeGrid(-2.0, 2.0, 1e-3), store_every=100)
        assert np.all(traj.rho11 == 1.0)
        assert np.all(traj.states[:, 1:] == 0.0)

    def test_zero_field_coherence_phase_rotation(self):
        pump, stokes = pulses(rabi1=0.0, rabi2=0.0)
        rho0 = DensityState(0.5, 0.0, 0.5, rho31=0.3)
        grid = TimeGrid(0.0, 2.0, 1e-3)
        traj = propagate(ATOM, pump, stokes, rho0, grid, store_every=grid.n_steps)
        assert np.all(traj.rho11 == 0.5) and np.all(traj.rho33 == 0.5)
        expected = 0.3 * np.exp(-1j * ATOM.omega31 * 2.0)
        assert traj.states[-1][3] == pytest.approx(expected, abs=1e-7)

    def test_store_every_includes_endpoints(self):
        pump, stokes = pulses(0.0, 0.0)
        grid = TimeGrid(0.0, 1.0, 0.1)
        traj = propagate(ATOM, pump, stokes, ground_state(), grid, store_every=3)
        np.testing.assert_allclose(traj.times, [0.0, 0.3, 0.6, 0.9, 1.0], atol=1e-12)
        dense = propagate(ATOM, pump, stokes, ground_state(), grid, store_every=1)
        assert len(dense) == grid.n_steps + 1

    def test_sampled_fields_match_pulse_model(self):
        pump, stokes = pulses()
        grid = TimeGrid(-3.0, 3.0, 1e-3)
        traj = propagate(ATOM, pump, stokes, ground_state(), grid, store_every=500)
        np.testing.assert_allclose(
            traj.fields[:, 0], instantaneous_rabi(pump, traj.times), atol=1e-14)
        np.testing.assert_allclose(
            traj.fields[:, 1], instantaneous_rabi(stokes, traj.times), atol=1e-14)

    def test_conservation_invariants_on_driven_run(self):
        pump, stokes = pulses()
        traj = propagate(ATOM, pump, stokes, ground_state(),
                         TimeGrid(-14.1, 14.1, 2e-3), store_every=10)
        assert np.max(np.abs(traj.trace - 1.0)) <= 1e-8
        assert np.max(np.abs(traj.purity - 1.0)) <= 1e-6
        for pops in (traj.rho11, traj.rho22, traj.rho33):
            assert pops.min() >= -1e-9
        assert abs(traj.trace_min - 1.0) <= 1e-8
        assert abs(traj.trace_max - 1.0) <= 1e-8
        assert traj.purity_min >= 1.0 - 1e-6

    def test_peak_tracking_covers_unstored_steps(self):
        pump, stokes = pulses()
        grid = TimeGrid(-14.1, 14.1, 2e-3)
        sparse = propagate(ATOM, pump, stokes, ground_state(), grid,
                           store_every=grid.n_steps)
        dense = propagate(ATOM, pump, stokes, ground_state(), grid, store_every=1)
        assert sparse.peak_rho33 == dense.rho33.max()
        assert sparse.peak_rho33 > sparse.rho33.max()  # endpoints only

    def test_undersampled_carrier_rejected(self):
        pump, stokes = pulses()
        with pytest.raises(StepTooLarge):
            propagate(ATOM, pump, stokes, ground_state(), TimeGrid(0.0, 1.0, 0.2))

    def test_blowup_raises_invariant_breach(self):
        pump, stokes = pulses(rabi1=5000.0, rabi2=5000.0)
        with pytest.raises(InvariantBreach, match="trace"):
            propagate(ATOM, pump, stokes, ground_state(), TimeGrid(-1.0, 1.0, 5e-4))

    def test_rk4_error_shrinks_like_fourth_order(self):
        pump, stokes = pulses()
        span = (-2.0, 2.0)
        ref = propagate(ATOM, pump, stokes, ground_state(),
                        TimeGrid(*span, 1.25e-4), store_every=10**6).states[-1]
        errs = []
        for dt in (2e-3, 1e-3):
            end = propagate(ATOM, pump, stokes, ground_state(),
                            TimeGrid(*span, dt), store_every=10**6).states[-1]
            errs.append(np.max(np.abs(end - ref)))
        assert 8.0 <= errs[0] / errs[1] <= 24.0


class TestWavefunctionOracle:
    def test_ground_state_without_field_is_static(self):
        pump, stokes = pulses(0.0, 0.0)
        traj = propagate_wavefunction(ATOM, pump, stokes, [1.0, 0.0, 0.0],
                                      TimeGrid(0.0, 2.0, 1e-3), store_every=200)
        assert np.all(traj.rho11 == 1.0)

    def test_upper_state_phase_is_invisible(self):
        pump, stokes = pulses(0.0, 0.0)
        traj = propagate_wavefunction(ATOM, pump, stokes, [0.0, 0.0, 1.0],
                                      TimeGrid(0.0, 2.0, 1e-3), store_every=200)
        np.testing.assert_allclose(traj.rho33, 1.0, atol=1e-9)
        np.testing.assert_allclose(np.abs(traj.states[:, 3]), 0.0, atol=1e-12)

    def test_agrees_with_density_matrix_propagation(self):
        pump, stokes = pulses()
        grid = TimeGrid(-14.1, 14.1, 2e-3)
        bloch = propagate(ATOM, pump, stokes, ground_state(), grid, store_every=20)
        wf = propagate_wavefunction(ATOM, pump, stokes, [1.0, 0.0, 0.0], grid,
                                    store_every=20)
        assert np.max(np.abs(bloch.states - wf.states)) <= 1e-6

    def test_unnormalized_state_rejected(self):
        pump, stokes = pulses()
        with pytest.raises(ValidationError):
            propagate_wavefunction(ATOM, pump, stokes, [1.0, 1.0, 0.0],
                                   TimeGrid(0.0, 1.0, 1e-3))
        with pytest.raises(ValidationError):
            propagate_wavefunction(ATOM, pump, stokes, [1.0, 0.0],
                                   TimeGrid(0.0, 1.0, 1e-3))


class TestTimeReversal:
    def test_populations_recovered(self):
        pump, stokes = pulses()
        defect = time_reversal_defect(ATOM, pump, stokes, ground_state(),
                                      TimeGrid(-6.0, 6.0, 1e-3))
        assert defect <= 1e-6


class TestTrajectoryAndObservables:
    def test_single_sample_summary(self):
        traj = Trajectory(times=[0.0], states=[ground_state().to_vector()],
                          fields=[[0.0, 0.0]], peak_rho33=0.0, peak_rho33_time=0.0)
        obs = observables(traj)
        assert (obs.final_rho11, obs.final_rho22, obs.final_rho33) == (1.0, 0.0, 0.0)
        assert obs.peak_rho33 == 0.0

    def test_reference_run_summary_values(self):
        traj = gaussian_reference_scenario().run()
        obs = observables(traj)
        assert obs.final_rho22 == pytest.approx(0.9994, abs=0.01)
        assert obs.peak_rho33 == pytest.approx(0.45, abs=0.03)
        assert abs(obs.trace_dev_min) <= 1e-8 and abs(obs.trace_dev_max) <= 1e-8
        assert obs.purity_min >= 1.0 - 1e-6

    def test_invalid_trajectories_rejected(self):
        vec = ground_state().to_vector()
        with pytest.raises(ValidationError):
            Trajectory(times=[0.0, 0.0], states=[vec, vec],
                       fields=[[0, 0], [0, 0]], peak_rho33=0.0, peak_rho33_time=0.0)
        with pytest.raises(ValidationError):
            Trajectory(times=[0.0, 1.0], states=[vec],
                       fields=[[0, 0]], peak_rho33=0.0, peak_rho33_time=0.0)
        with pytest.raises(ValidationError):
            Trajectory(times=[], states=np.empty((0, 6)),
                       fields=np.empty((0, 2)), peak_rho33=0.0, peak_rho33_time=0.0)

    def test_state_accessors(self):
        pump, stokes = pulses()
        traj = propagate(ATOM, pump, stokes, ground_state(),
                         TimeGrid(-2.0, 2.0, 1e-3), store_every=1000)
        final = traj.final_state
        assert final.trace == pytest.approx(1.0, abs=1e-10)
        assert traj.state_at(0).rho11 == 1.0

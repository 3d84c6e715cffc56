"""Jitted inner loops of the fixed-step propagators.

The scalar field evaluation mirrors :mod:`lambdapulse.pulses` (same series
cutoff for the sinc center) so kernel-sampled couplings agree with the
Python-level diagnostics.  Pulse parameters travel as flat float64 arrays
``[shape_code, omega_carrier, rabi_peak, tau, chirp, cep]`` where ``tau`` is
the envelope parameter, not tau_p.

All loops are strictly sequential scalar IEEE arithmetic: no fastmath, no
threading, so results are bit-reproducible regardless of the process that
runs them.
"""

import math

import numpy as np
from numba import njit

GAUSSIAN_CODE = 0.0
SINC_CODE = 1.0

_SINC_SERIES_CUTOFF = 1e-6


@njit(cache=True)
def rabi_value(p, t):
    """Oscillating Rabi coupling of one pulse at time t."""
    if p[0] == GAUSSIAN_CODE:
        x = t / p[3]
        env = math.exp(-(x * x))
        ph = p[4] * t * t * t
    else:
        x = t / p[3]
        if abs(x) < _SINC_SERIES_CUTOFF:
            env = 1.0 - x * x / 6.0
        else:
            env = math.sin(x) / x
        ph = p[5]
    return p[2] * env * math.cos(p[1] * t + ph)


@njit(cache=True)
def bloch_derivative(out, s, omega31, omega21, o31, o32, verbatim):
    """Time derivative of the packed density state under the two couplings.

    Packing order: rho11, rho22, rho33, rho31, rho32, rho21.  The rho32
    population term uses (rho33 - rho22) as the commutator of the lambda
    Hamiltonian requires; ``verbatim`` switches to the (rho33 - rho11)
    variant for comparison runs.
    """
    omega32 = omega31 - omega21
    r11 = s[0]
    r22 = s[1]
    r33 = s[2]
    r31 = s[3]
    r32 = s[4]
    r21 = s[5]
    r13 = np.conj(r31)
    r23 = np.conj(r32)
    r12 = np.conj(r21)
    out[0] = 1j * o31 * (r31 - r13)
    out[1] = 1j * o32 * (r32 - r23)
    out[2] = 1j * o31 * (r13 - r31) + 1j * o32 * (r23 - r32)
    out[3] = -1j * omega31 * r31 + 1j * o32 * r21 - 1j * o31 * (r33 - r11)
    if verbatim:
        out[4] = -1j * omega32 * r32 + 1j * o31 * r12 - 1j * o32 * (r33 - r11)
    else:
        out[4] = -1j * omega32 * r32 + 1j * o31 * r12 - 1j * o32 * (r33 - r22)
    out[5] = -1j * omega21 * r21 + 1j * o32 * r31 - 1j * o31 * r23


@njit(cache=True)
def _packed_trace(s):
    return s[0].real + s[1].real + s[2].real


@njit(cache=True)
def _packed_purity(s):
    return (
        s[0].real ** 2
        + s[1].real ** 2
        + s[2].real ** 2
        + 2.0 * (abs(s[3]) ** 2 + abs(s[4]) ** 2 + abs(s[5]) ** 2)
    )


@njit(cache=True)
def propagate_bloch(omega31, omega21, p1, p2, state0, t0, h, n_steps,
                    store_idx, trace_tol, verbatim):
    """Classic RK4 over n_steps of size h (h may be negative for reversed runs).

    Returns (times, states, fields, n_stored, peak33, t_peak, trace_min,
    trace_max, purity_min, breach_step); breach_step is -1 unless the trace
    left the tolerance band, in which case integration stopped there.
    """
    m = store_idx.shape[0]
    times = np.empty(m)
    states = np.empty((m, 6), dtype=np.complex128)
    fields = np.empty((m, 2))

    s = state0.copy()
    k1 = np.empty(6, dtype=np.complex128)
    k2 = np.empty(6, dtype=np.complex128)
    k3 = np.empty(6, dtype=np.complex128)
    k4 = np.empty(6, dtype=np.complex128)
    tmp = np.empty(6, dtype=np.complex128)

    ptr = 0
    if m > 0 and store_idx[0] == 0:
        times[0] = t0
        states[0] = s
        fields[0, 0] = rabi_value(p1, t0)
        fields[0, 1] = rabi_value(p2, t0)
        ptr = 1

    peak33 = s[2].real
    t_peak = t0
    tr = _packed_trace(s)
    trace_min = tr
    trace_max = tr
    purity_min = _packed_purity(s)
    breach = -1

    for k in range(n_steps):
        t = t0 + k * h
        ta = t
        tb = t + 0.5 * h
        tc = t + h
        oa1 = rabi_value(p1, ta)
        ob1 = rabi_value(p2, ta)
        oa2 = rabi_value(p1, tb)
        ob2 = rabi_value(p2, tb)
        oa3 = rabi_value(p1, tc)
        ob3 = rabi_value(p2, tc)

        bloch_derivative(k1, s, omega31, omega21, oa1, ob1, verbatim)
        for i in range(6):
            tmp[i] = s[i] + 0.5 * h * k1[i]
        bloch_derivative(k2, tmp, omega31, omega21, oa2, ob2, verbatim)
        for i in range(6):
            tmp[i] = s[i] + 0.5 * h * k2[i]
        bloch_derivative(k3, tmp, omega31, omega21, oa2, ob2, verbatim)
        for i in range(6):
            tmp[i] = s[i] + h * k3[i]
        bloch_derivative(k4, tmp, omega31, omega21, oa3, ob3, verbatim)
        for i in range(6):
            s[i] = s[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])

        tr = _packed_trace(s)
        # written so that NaN also trips the breach
        if not (abs(tr - 1.0) <= trace_tol):
            breach = k + 1
            break
        if tr < trace_min:
            trace_min = tr
        if tr > trace_max:
            trace_max = tr
        pur = _packed_purity(s)
        if pur < purity_min:
            purity_min = pur
        r33 = s[2].real
        if r33 > peak33:
            peak33 = r33
            t_peak = t0 + (k + 1) * h

        if ptr < m and store_idx[ptr] == k + 1:
            t_label = t0 + (k + 1) * h
            times[ptr] = t_label
            states[ptr] = s
            fields[ptr, 0] = rabi_value(p1, t_label)
            fields[ptr, 1] = rabi_value(p2, t_label)
            ptr += 1

    return times, states, fields, ptr, peak33, t_peak, trace_min, trace_max, purity_min, breach


@njit(cache=True)
def propagate_schrodinger(omega31, omega21, p1, p2, psi0, t0, h, n_steps,
                          store_idx, trace_tol):
    """RK4 for i dpsi/dt = H(t) psi with level energies (0, omega21, omega31).

    Stored rows are the outer product |psi><psi| packed like the Bloch
    kernel, so the two propagators can be compared element-wise.
    """
    m = store_idx.shape[0]
    times = np.empty(m)
    states = np.empty((m, 6), dtype=np.complex128)
    fields = np.empty((m, 2))

    psi = psi0.copy()
    k1 = np.empty(3, dtype=np.complex128)
    k2 = np.empty(3, dtype=np.complex128)
    k3 = np.empty(3, dtype=np.complex128)
    k4 = np.empty(3, dtype=np.complex128)
    tmp = np.empty(3, dtype=np.complex128)
    w2 = omega21
    w3 = omega31

    def _outer(row, p):
        row[0] = p[0] * np.conj(p[0])
        row[1] = p[1] * np.conj(p[1])
        row[2] = p[2] * np.conj(p[2])
        row[3] = p[2] * np.conj(p[0])
        row[4] = p[2] * np.conj(p[1])
        row[5] = p[1] * np.conj(p[0])

    ptr = 0
    if m > 0 and store_idx[0] == 0:
        times[0] = t0
        _outer(states[0], psi)
        fields[0, 0] = rabi_value(p1, t0)
        fields[0, 1] = rabi_value(p2, t0)
        ptr = 1

    norm2 = abs(psi[0]) ** 2 + abs(psi[1]) ** 2 + abs(psi[2]) ** 2
    peak33 = abs(psi[2]) ** 2
    t_peak = t0
    trace_min = norm2
    trace_max = norm2
    purity_min = norm2 * norm2
    breach = -1

    for k in range(n_steps):
        t = t0 + k * h
        ta = t
        tb = t + 0.5 * h
        tc = t + h
        oa1 = rabi_value(p1, ta)
        ob1 = rabi_value(p2, ta)
        oa2 = rabi_value(p1, tb)
        ob2 = rabi_value(p2, tb)
        oa3 = rabi_value(p1, tc)
        ob3 = rabi_value(p2, tc)

        k1[0] = -1j * (-oa1 * psi[2])
        k1[1] = -1j * (w2 * psi[1] - ob1 * psi[2])
        k1[2] = -1j * (w3 * psi[2] - oa1 * psi[0] - ob1 * psi[1])
        for i in range(3):
            tmp[i] = psi[i] + 0.5 * h * k1[i]
        k2[0] = -1j * (-oa2 * tmp[2])
        k2[1] = -1j * (w2 * tmp[1] - ob2 * tmp[2])
        k2[2] = -1j * (w3 * tmp[2] - oa2 * tmp[0] - ob2 * tmp[1])
        for i in range(3):
            tmp[i] = psi[i] + 0.5 * h * k2[i]
        k3[0] = -1j * (-oa2 * tmp[2])
        k3[1] = -1j * (w2 * tmp[1] - ob2 * tmp[2])
        k3[2] = -1j * (w3 * tmp[2] - oa2 * tmp[0] - ob2 * tmp[1])
        for i in range(3):
            tmp[i] = psi[i] + h * k3[i]
        k4[0] = -1j * (-oa3 * tmp[2])
        k4[1] = -1j * (w2 * tmp[1] - ob3 * tmp[2])
        k4[2] = -1j * (w3 * tmp[2] - oa3 * tmp[0] - ob3 * tmp[1])
        for i in range(3):
            psi[i] = psi[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])

        norm2 = abs(psi[0]) ** 2 + abs(psi[1]) ** 2 + abs(psi[2]) ** 2
        if not (abs(norm2 - 1.0) <= trace_tol):
            breach = k + 1
            break
        if norm2 < trace_min:
            trace_min = norm2
        if norm2 > trace_max:
            trace_max = norm2
        pur = norm2 * norm2
        if pur < purity_min:
            purity_min = pur
        p3 = abs(psi[2]) ** 2
        if p3 > peak33:
            peak33 = p3
            t_peak = t0 + (k + 1) * h

        if ptr < m and store_idx[ptr] == k + 1:
            t_label = t0 + (k + 1) * h
            times[ptr] = t_label
            _outer(states[ptr], psi)
            fields[ptr, 0] = rabi_value(p1, t_label)
            fields[ptr, 1] = rabi_value(p2, t_label)
            ptr += 1

    return times, states, fields, ptr, peak33, t_peak, trace_min, trace_max, purity_min, breach

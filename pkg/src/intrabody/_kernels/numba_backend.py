"""numba @njit implementations of the sweep kernels.

Scalar inner loops over the grid; arithmetic mirrors numpy_backend operation
for operation.  Complex division and exp differ from numpy's vectorized
routines at the ulp level, so the backends agree to ~1e-12, not bit-for-bit.
"""
import cmath

import numpy as np
from numba import njit

BACKEND = "numba"


@njit(cache=True)
def _sqrt_forward(w):
    # principal branch (Re >= 0); purely imaginary roots flip so
    # evanescent fields decay
    s = cmath.sqrt(w)
    if s.real == 0.0 and s.imag > 0.0:
        s = -s
    return s


@njit(cache=True)
def debye_grid(omega, eps_inf, deltas, taus):
    nf = omega.shape[0]
    er = np.empty(nf, dtype=np.float64)
    ei = np.empty(nf, dtype=np.float64)
    for i in range(nf):
        a = eps_inf
        b = 0.0
        for j in range(taus.shape[0]):
            x = omega[i] * taus[j]
            den = 1.0 + x * x
            a += deltas[j] / den
            b += deltas[j] * x / den
        er[i] = a
        ei[i] = b
    return er, ei


@njit(cache=True)
def fresnel_sweep(n21sq, cos_t, sin2_t):
    na = cos_t.shape[0]
    r_te = np.empty(na, dtype=np.complex128)
    r_tm = np.empty(na, dtype=np.complex128)
    for i in range(na):
        w = _sqrt_forward(n21sq - sin2_t[i])
        c = cos_t[i]
        r_te[i] = (c - w) / (c + w)
        r_tm[i] = (n21sq * c - w) / (n21sq * c + w)
    return r_te, r_tm


@njit(cache=True)
def stack_sweep(lam0, q, n_in, n_layers, thick, n_out, tm):
    nf = lam0.shape[0]
    m = n_layers.shape[1]
    gamma = np.empty(nf, dtype=np.complex128)
    z_out = np.empty(nf, dtype=np.complex128)
    transmit = np.empty(nf, dtype=np.float64)

    for j in range(nf):
        q2 = q[j] * q[j]
        k0 = 2.0 * np.pi / lam0[j]

        ncos_in = _sqrt_forward(n_in[j] * n_in[j] - q2)
        h_in = ncos_in / (n_in[j] * n_in[j]) if tm else 1.0 / ncos_in
        ncos_out = _sqrt_forward(n_out[j] * n_out[j] - q2)
        h_out = ncos_out / (n_out[j] * n_out[j]) if tm else 1.0 / ncos_out

        if m > 0:
            n_last = n_layers[j, m - 1]
            ncos = _sqrt_forward(n_last * n_last - q2)
            h_prev = ncos / (n_last * n_last) if tm else 1.0 / ncos
        else:
            h_prev = h_in

        rho = (h_out - h_prev) / (h_out + h_prev)
        g = rho
        z = h_out
        tau = 1.0 + rho
        v0 = 1.0 / tau
        v1 = rho / tau

        for i in range(m - 1, -1, -1):
            n_i = n_layers[j, i]
            ncos_i = _sqrt_forward(n_i * n_i - q2)
            h_i = ncos_i / (n_i * n_i) if tm else 1.0 / ncos_i
            if i > 0:
                n_p = n_layers[j, i - 1]
                ncos_p = _sqrt_forward(n_p * n_p - q2)
                h_prev = ncos_p / (n_p * n_p) if tm else 1.0 / ncos_p
            else:
                h_prev = h_in

            delta = k0 * thick[i] * ncos_i

            e2 = cmath.exp(-2j * delta)
            rho = (h_i - h_prev) / (h_i + h_prev)
            g = (rho + g * e2) / (1.0 + rho * g * e2)

            c = cmath.cos(delta)
            s = cmath.sin(delta)
            z = h_i * (z * c + 1j * h_i * s) / (h_i * c + 1j * z * s)

            ph = cmath.exp(1j * delta)
            w0 = v0 * ph
            w1 = v1 / ph
            tau = 1.0 + rho
            v0 = (w0 + rho * w1) / tau
            v1 = (rho * w0 + w1) / tau

        gamma[j] = g
        z_out[j] = z
        transmit[j] = (1.0 / abs(v0)) ** 2 * (1.0 / h_out).real / (1.0 / h_in).real

    return gamma, z_out, transmit

"""Pure-numpy fallback implementations of the sweep kernels.

Arithmetic mirrors the numba backend operation for operation; keep the two
files in sync when touching either.  Agreement is ulp-level (~1e-12), not
bit-for-bit, because the complex primitives differ between the runtimes.
"""
import numpy as np

BACKEND = "numpy"


def _sqrt_forward(w):
    # principal complex sqrt (Re >= 0, forward transmitted wave); purely
    # imaginary roots are flipped so evanescent fields decay
    s = np.sqrt(np.asarray(w, dtype=np.complex128))
    return np.where((s.real == 0.0) & (s.imag > 0.0), -s, s)


def debye_grid(omega, eps_inf, deltas, taus):
    """Separated real/imaginary relaxation sums over an angular-frequency grid.

    Parameters
    ----------
    omega : (nf,) float array of angular frequencies, rad/s
    eps_inf : high-frequency permittivity limit
    deltas : (nt,) telescoped permittivity steps, first entry eps_s - eps_2
    taus : (nt,) relaxation times, s

    Returns
    -------
    (eps_real, eps_imag) arrays; eps_imag follows the loss convention
    eps = eps' - j eps'' and is reported as the non-negative eps''.
    """
    omega = np.asarray(omega, dtype=np.float64)
    er = np.full(omega.shape, eps_inf, dtype=np.float64)
    ei = np.zeros(omega.shape, dtype=np.float64)
    for j in range(len(taus)):
        x = omega * taus[j]
        den = 1.0 + x * x
        er += deltas[j] / den
        ei += deltas[j] * x / den
    return er, ei


def fresnel_sweep(n21sq, cos_t, sin2_t):
    """Single-interface reflection amplitudes over an angle grid.

    n21sq is the squared relative index (second medium over first), complex.
    cos_t and sin2_t carry cos(theta) and sin^2(theta) per grid point.
    Returns (r_te, r_tm) complex amplitude arrays.
    """
    cos_t = np.asarray(cos_t, dtype=np.float64)
    sin2_t = np.asarray(sin2_t, dtype=np.float64)
    w = _sqrt_forward(n21sq - sin2_t.astype(np.complex128))
    r_te = (cos_t - w) / (cos_t + w)
    r_tm = (n21sq * cos_t - w) / (n21sq * cos_t + w)
    return r_te, r_tm


def stack_sweep(lam0, q, n_in, n_layers, thick, n_out, tm):
    """Layered-media response over a wavelength grid.

    Parameters
    ----------
    lam0 : (nf,) free-space wavelengths, m
    q : (nf,) complex conserved transverse index (n_in * sin(theta))
    n_in, n_out : (nf,) complex indices of the incident and exit half-spaces
    n_layers : (nf, M) complex index per layer and wavelength
    thick : (M,) layer thicknesses, m
    tm : True for TM polarization, False for TE

    Returns
    -------
    (gamma, z_norm, transmit): composite reflection amplitude, equivalent
    input impedance normalized by the free-space impedance, and transmitted
    power fraction into the exit half-space.
    """
    lam0 = np.asarray(lam0, dtype=np.float64)
    q = np.asarray(q, dtype=np.complex128)
    n_in = np.asarray(n_in, dtype=np.complex128)
    n_out = np.asarray(n_out, dtype=np.complex128)
    n_layers = np.asarray(n_layers, dtype=np.complex128)
    nf = lam0.shape[0]
    m = n_layers.shape[1]

    q2 = q * q

    def h_of(n):
        ncos = _sqrt_forward(n * n - q2)
        if tm:
            return ncos / (n * n)
        return 1.0 / ncos

    h_in = h_of(n_in)
    h_out = h_of(n_out)

    ncos_layers = np.empty((nf, m), dtype=np.complex128)
    h_layers = np.empty((nf, m), dtype=np.complex128)
    for i in range(m):
        n = n_layers[:, i]
        ncos = _sqrt_forward(n * n - q2)
        ncos_layers[:, i] = ncos
        h_layers[:, i] = ncos / (n * n) if tm else 1.0 / ncos

    k0 = 2.0 * np.pi / lam0

    # exit interface
    h_prev = h_layers[:, m - 1] if m > 0 else h_in
    rho = (h_out - h_prev) / (h_out + h_prev)
    gamma = rho.copy()
    z = h_out.copy()
    tau = 1.0 + rho
    v0 = 1.0 / tau
    v1 = rho / tau

    for i in range(m - 1, -1, -1):
        delta = k0 * thick[i] * ncos_layers[:, i]
        h_i = h_layers[:, i]
        h_prev = h_layers[:, i - 1] if i > 0 else h_in

        e2 = np.exp(-2j * delta)
        rho = (h_i - h_prev) / (h_i + h_prev)
        gamma = (rho + gamma * e2) / (1.0 + rho * gamma * e2)

        c = np.cos(delta)
        s = np.sin(delta)
        z = h_i * (z * c + 1j * h_i * s) / (h_i * c + 1j * z * s)

        ph = np.exp(1j * delta)
        w0 = v0 * ph
        w1 = v1 / ph
        tau = 1.0 + rho
        v0 = (w0 + rho * w1) / tau
        v1 = (rho * w0 + w1) / tau

    transmit = (1.0 / np.abs(v0)) ** 2 * (1.0 / h_out).real / (1.0 / h_in).real
    return gamma, z, transmit

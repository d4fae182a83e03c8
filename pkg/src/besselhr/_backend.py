"""Numeric hot kernels with numba and pure-numpy twins.

The complex log-gamma is a Lanczos approximation with Godfrey's g = 607/128
coefficient set (the same 14-term series Numerical Recipes uses for
``gammln``), valid on Re z >= 0.5 and extended left by Euler's reflection
formula.  The reciprocal gamma is computed through
sin(pi z) * Gamma(1 - z) / pi on the left half plane so that its zeros at
the non-positive integers come out exact.

Backend selection: the environment variable ``BESSELHR_BACKEND`` may be
``numba`` (require the JIT), ``numpy`` (force the vectorized fallback) or
``auto`` (default: numba when importable).  Both implementations stay
importable through ``IMPLS`` so they can be benchmarked against each other.
"""

from __future__ import annotations

import cmath
import math
import os

import numpy as np

_PI = math.pi
_LN_PI = math.log(math.pi)
_LN_2 = math.log(2.0)
_LG_SHIFT = 5.2421875  # g + 1/2 with g = 607/128
_LG_C0 = 0.999999999999997092
_LG_COEF = np.array(
    [
        57.1562356658629235,
        -59.5979603554754912,
        14.1360979747417471,
        -0.491913816097620199,
        0.339946499848118887e-4,
        0.465236289270485756e-4,
        -0.983744753048795646e-4,
        0.158088703224912494e-3,
        -0.210264441724104883e-3,
        0.217439618115212643e-3,
        -0.164318106536763890e-3,
        0.844182239838527433e-4,
        -0.261908384015814087e-4,
        0.368991826595316234e-5,
    ]
)
_SQRT_2PI = 2.5066282746310005


def _is_nonpositive_int(z):
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


# ---------------------------------------------------------------------------
# scalar kernels; when numba is active these globals are rebound to their
# jitted copies bottom-up, so jitted callers resolve jitted callees
# ---------------------------------------------------------------------------

def _loggamma_right(z):
    # Lanczos series; Re z >= 0.5 only.  The main term is arranged as
    # (z + 1/2)(log t - 1) - g so the two large contributions are combined
    # in a single rounding, which matters near |z| ~ 100.
    t = z + _LG_SHIFT
    w = z + 0.5
    t = w * (cmath.log(t) - 1.0) - (_LG_SHIFT - 0.5)
    ser = _LG_C0
    y = z
    for j in range(14):
        y = y + 1.0
        ser = ser + _LG_COEF[j] / y
    return t + cmath.log(_SQRT_2PI * ser / z)


def _sinpi(z):
    # argument reduction: exact zeros at the integers
    k = math.floor(z.real + 0.5)
    s = cmath.sin(_PI * complex(z.real - k, z.imag))
    if k % 2.0 != 0.0:
        return -s
    return s


def _cospi(z):
    k = math.floor(z.real + 0.5)
    c = cmath.cos(_PI * complex(z.real - k, z.imag))
    if k % 2.0 != 0.0:
        return -c
    return c


def _logsinpi(z):
    # stable for large |Im z|: peel off the dominant exponential
    y = z.imag
    if abs(y) < 18.0:
        return cmath.log(_sinpi(z))
    if y > 0.0:
        # sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z})
        return complex(-_LN_2, 0.5 * _PI) - 1j * _PI * z + cmath.log(
            1.0 - cmath.exp(2j * _PI * z)
        )
    return complex(-_LN_2, -0.5 * _PI) + 1j * _PI * z + cmath.log(
        1.0 - cmath.exp(-2j * _PI * z)
    )


def _loggamma(z):
    # principal branch on the right half plane, reflection on the left;
    # exp(_loggamma) is accurate everywhere off the poles, the imaginary
    # part on the left may differ from the continuous branch by 2 pi k
    if z.real >= 0.5:
        return _loggamma_right(z)
    return _LN_PI - _logsinpi(z) - _loggamma_right(1.0 - z)


def _recip_gamma(z):
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        return 0.0 + 0.0j
    if z.real >= 0.5:
        return cmath.exp(-_loggamma_right(z))
    return cmath.exp(_loggamma_right(1.0 - z) + _logsinpi(z) - _LN_PI)


def _log_gdelta(w, delta):
    # gamma factor i^d pi^(1/2-w) Gamma((w+d)/2) / Gamma((1-w+d)/2), as a log
    out = (0.5 - w) * _LN_PI + _loggamma(0.5 * (w + delta)) - _loggamma(
        0.5 * (1.0 - w + delta)
    )
    if delta % 2 != 0:
        out = out + complex(0.0, 0.5 * _PI)
    return out


def _mb_j_integrand(s, lam, sig, n, lnx, out):
    # exp( sum_l [log Gamma(s - lam_l) + (i pi/2) sig_l (s - lam_l)] - n s ln x )
    for i in range(s.shape[0]):
        acc = -n * lnx * s[i]
        for l in range(lam.shape[0]):
            w = s[i] - lam[l]
            acc = acc + _loggamma(w) + complex(0.0, 0.5 * _PI * sig[l]) * w
        out[i] = cmath.exp(acc)
    return out


def _mb_kernel_integrand(s, lam, dl, delta, lnx, out):
    # exp( sum_l log G_{dl_l + delta}(s - lam_l) - s ln|x| )
    for i in range(s.shape[0]):
        acc = -lnx * s[i]
        for l in range(lam.shape[0]):
            acc = acc + _log_gdelta(s[i] - lam[l], (dl[l] + delta) % 2)
        out[i] = cmath.exp(acc)
    return out


def _series_sum(zf, diffs, tol, m_min, m_cap, m_fresh):
    """Sum_{m>=0} zf^m / prod_k Gamma(diffs_k + m + 1).

    Terms up to m_fresh are built from reciprocal-gamma products so that
    pole-induced zero terms come out exact; afterwards the term ratio
    zf / prod_k (diffs_k + m) is applied incrementally.  Stops after three
    consecutive terms below tol * |partial sum| once past m_min.

    Returns (sum, abs_sum, terms_used, next_ratio, last_abs_term).
    """
    nk = diffs.shape[0]
    total = 0.0 + 0.0j
    abs_total = 0.0
    t = 0.0 + 0.0j
    t_abs = 0.0
    small = 0
    m = 0
    while m <= m_cap:
        if m <= m_fresh:
            t = 1.0 + 0.0j
            for _ in range(m):
                t = t * zf
            for k in range(nk):
                t = t * _recip_gamma(diffs[k] + m + 1.0)
        else:
            r = zf
            for k in range(nk):
                r = r / (diffs[k] + m)
            t = t * r
        total = total + t
        t_abs = abs(t)
        abs_total = abs_total + t_abs
        if m >= m_min:
            if t_abs <= tol * abs(total) + 1e-300:
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
        m += 1
    q = abs(zf)
    for k in range(nk):
        q = q / abs(diffs[k] + m + 1.0)
    return total, abs_total, m + 1, q, t_abs


# ---------------------------------------------------------------------------
# numpy vectorized twins
# ---------------------------------------------------------------------------

def _loggamma_right_np(z):
    t = z + _LG_SHIFT
    t = (z + 0.5) * np.log(t) - t
    ser = np.full(z.shape, _LG_C0, dtype=np.complex128)
    y = z
    for j in range(14):
        y = y + 1.0
        ser = ser + _LG_COEF[j] / y
    return t + np.log(_SQRT_2PI * ser / z)


def _sinpi_np(z):
    k = np.floor(z.real + 0.5)
    s = np.sin(_PI * ((z.real - k) + 1j * z.imag))
    return np.where(np.mod(k, 2.0) != 0.0, -s, s)


def _logsinpi_np(z):
    y = z.imag
    big_up = y >= 18.0
    big_dn = y <= -18.0
    mid = ~(big_up | big_dn)
    zm = np.where(mid, z, 0.25)
    out = np.log(_sinpi_np(zm))
    zu = np.where(big_up, z, 18j)
    up = complex(-_LN_2, 0.5 * _PI) - 1j * _PI * zu + np.log1p(
        -np.exp(2j * _PI * zu)
    )
    zd = np.where(big_dn, z, -18j)
    dn = complex(-_LN_2, -0.5 * _PI) + 1j * _PI * zd + np.log1p(
        -np.exp(-2j * _PI * zd)
    )
    out = np.where(big_up, up, out)
    out = np.where(big_dn, dn, out)
    return out


def _loggamma_np(z):
    z = np.asarray(z, dtype=np.complex128)
    left = z.real < 0.5
    zr = np.where(left, 1.0 - z, z)
    lg = _loggamma_right_np(zr)
    if not left.any():
        return lg
    refl = _LN_PI - _logsinpi_np(np.where(left, z, 0.25)) - lg
    return np.where(left, refl, lg)


def _recip_gamma_np(z):
    z = np.asarray(z, dtype=np.complex128)
    left = z.real < 0.5
    zr = np.where(left, 1.0 - z, z)
    lg = _loggamma_right_np(zr)
    out = np.exp(-lg)
    if left.any():
        lv = np.exp(lg + _logsinpi_np(np.where(left, z, 0.25)) - _LN_PI)
        out = np.where(left, lv, out)
    zero = (z.imag == 0.0) & (z.real <= 0.0) & (z.real == np.floor(z.real))
    return np.where(zero, 0.0 + 0.0j, out)


def _log_gdelta_np(w, delta):
    out = (0.5 - w) * _LN_PI + _loggamma_np(0.5 * (w + delta)) - _loggamma_np(
        0.5 * (1.0 - w + delta)
    )
    if delta % 2 != 0:
        out = out + complex(0.0, 0.5 * _PI)
    return out


def _mb_j_integrand_np(s, lam, sig, n, lnx):
    acc = -n * lnx * s
    for l in range(lam.shape[0]):
        w = s - lam[l]
        acc = acc + _loggamma_np(w) + complex(0.0, 0.5 * _PI * sig[l]) * w
    return np.exp(acc)


def _mb_kernel_integrand_np(s, lam, dl, delta, lnx):
    acc = -lnx * s
    for l in range(lam.shape[0]):
        acc = acc + _log_gdelta_np(s - lam[l], int((dl[l] + delta) % 2))
    return np.exp(acc)


# ---------------------------------------------------------------------------
# backend selection
# ---------------------------------------------------------------------------

_ENV = os.environ.get("BESSELHR_BACKEND", "auto").strip().lower()
if _ENV not in ("auto", "numba", "numpy"):
    raise ValueError("BESSELHR_BACKEND must be auto, numba or numpy")

_HAVE_NUMBA = False
if _ENV in ("auto", "numba"):
    try:
        import numba as _nb

        _HAVE_NUMBA = True
    except ImportError:
        if _ENV == "numba":
            raise
        _HAVE_NUMBA = False

# keep the plain-python scalars reachable regardless of backend
loggamma = _loggamma
recip_gamma = _recip_gamma
sinpi = _sinpi
cospi = _cospi
log_gdelta = _log_gdelta
is_nonpositive_int = _is_nonpositive_int

if _HAVE_NUMBA:
    _jit = _nb.njit(cache=True)
    # rebind bottom-up so each jitted function sees jitted callees
    _loggamma_right = _jit(_loggamma_right)
    _sinpi = _jit(_sinpi)
    _logsinpi = _jit(_logsinpi)
    _loggamma = _jit(_loggamma)
    _recip_gamma = _jit(_recip_gamma)
    _log_gdelta = _jit(_log_gdelta)
    _mb_j_integrand_nb = _jit(_mb_j_integrand)
    _mb_kernel_integrand_nb = _jit(_mb_kernel_integrand)
    _series_sum_nb = _jit(_series_sum)

    @_jit
    def _loggamma_arr_nb(z):
        out = np.empty(z.shape[0], dtype=np.complex128)
        for i in range(z.shape[0]):
            out[i] = _loggamma(z[i])
        return out

    @_jit
    def _recip_gamma_arr_nb(z):
        out = np.empty(z.shape[0], dtype=np.complex128)
        for i in range(z.shape[0]):
            out[i] = _recip_gamma(z[i])
        return out

    def _mb_j_numba(s, lam, sig, n, lnx):
        out = np.empty(s.shape[0], dtype=np.complex128)
        return _mb_j_integrand_nb(s, lam, sig, n, lnx, out)

    def _mb_kernel_numba(s, lam, dl, delta, lnx):
        out = np.empty(s.shape[0], dtype=np.complex128)
        return _mb_kernel_integrand_nb(s, lam, dl, delta, lnx, out)


def _series_sum_py(zf, diffs, tol, m_min, m_cap, m_fresh):
    return _series_sum(zf, diffs, tol, m_min, m_cap, m_fresh)


IMPLS = {
    "numpy": {
        "loggamma_arr": _loggamma_np,
        "recip_gamma_arr": _recip_gamma_np,
        "mb_j_integrand": _mb_j_integrand_np,
        "mb_kernel_integrand": _mb_kernel_integrand_np,
        "series_sum": _series_sum_py,
    }
}
if _HAVE_NUMBA:
    IMPLS["numba"] = {
        "loggamma_arr": _loggamma_arr_nb,
        "recip_gamma_arr": _recip_gamma_arr_nb,
        "mb_j_integrand": _mb_j_numba,
        "mb_kernel_integrand": _mb_kernel_numba,
        "series_sum": lambda zf, diffs, tol, m_min, m_cap, m_fresh: _series_sum_nb(
            zf, diffs, tol, m_min, m_cap, m_fresh
        ),
    }

BACKEND = "numba" if _HAVE_NUMBA else "numpy"
_ACTIVE = IMPLS[BACKEND]

loggamma_arr = _ACTIVE["loggamma_arr"]
recip_gamma_arr = _ACTIVE["recip_gamma_arr"]
mb_j_integrand = _ACTIVE["mb_j_integrand"]
mb_kernel_integrand = _ACTIVE["mb_kernel_integrand"]
series_sum = _ACTIVE["series_sum"]

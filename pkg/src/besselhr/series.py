"""Ascending series at the regular singularity and the connection formula.

The l-th first-kind solution is

    J_l(z) = sum_{m>=0} (sign i^n)^m z^{n(-lam_l+m)} / prod_k Gamma(lam_k - lam_l + m + 1),

an entire function of z^n times a power, convergent everywhere.  The
sign-vector function is the combination

    pi^{n-1} E(sig, lam) sum_l E_l(sig, lam) S_l(lam) J_l(z; (-1)^{n_minus})

with S_l = prod_{k != l} 1/sin(pi(lam_l - lam_k)).  Two numerical hazards
drive the implementation: for non-generic indices the S_l blow up and the
combination must be taken as a limit (done here by averaging over a small
circle of generic perturbations, the Cauchy mean of an analytic function);
and for large |z| the combination cancels to exponentially small values, so
the summation switches to adaptive-precision big floats when the reported
double-precision error cannot meet the requested tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import mpmath as mp
import numpy as np

from . import _backend
from .core import (
    NuIndex,
    OverflowEvalError,
    SignVector,
    SpectralIndex,
    SurfacePoint,
    e2pi,
    genericity_gap,
    lambda_of_nu,
    nu_of_lambda,
)
from .coeffs import bessel_eq_coeffs, build_uv_tables

EPS_GEN = 1e-4  # below this gap the connection switches to the limit form
_CAUCHY_RADIUS = 1e-3
_CAUCHY_POINTS = 8
_I_POW = (1 + 0j, 1j, -1 + 0j, -1j)  # exact i^n

Pointlike = Union[SurfacePoint, float, int]


@dataclass(frozen=True)
class SeriesEval:
    value: complex
    terms_used: int
    tail_bound: float


def _as_point(z: Pointlike) -> SurfacePoint:
    if isinstance(z, SurfacePoint):
        return z
    return SurfacePoint.from_positive(float(z))


def _norm_sign(sign) -> int:
    if sign in (1, +1, "+"):
        return 1
    if sign in (-1, "-"):
        return -1
    raise ValueError("sign must be +1 or -1")


def _m_fresh(diffs) -> int:
    # through this index the term coefficients are rebuilt from reciprocal
    # gammas, so integer pole crossings give exact zero terms
    worst = max((-d.real for d in diffs), default=0.0)
    return int(max(0.0, worst)) + 2


def first_kind(
    z: Pointlike, sign, si: SpectralIndex, l: int, tol: float = 1e-12
) -> SeriesEval:
    """First-kind solution J_l (l is 1-based) by the ascending series."""
    z = _as_point(z)
    n = si.rank
    if not 1 <= l <= n:
        raise ValueError("l out of range")
    sign = _norm_sign(sign)
    if n * z.modulus > 690.0:
        raise OverflowEvalError(
            "series terms overflow double range at this modulus; evaluate at "
            "a rescaled argument or use the asymptotic route"
        )
    lam_l = si.lam[l - 1]
    diffs = np.array([lk - lam_l for lk in si.lam], dtype=np.complex128)
    zf = sign * _I_POW[n % 4] * z.power(n)
    m_min = int(math.e * z.modulus) + 4
    m_cap = m_min + 220
    total, abs_total, terms, q, t_abs = _backend.series_sum(
        zf, diffs, tol, m_min, m_cap, _m_fresh(diffs)
    )
    pref = z.power(-n * lam_l)
    if q < 0.75:
        geom = t_abs * q / (1.0 - q)
    else:  # did not reach the decaying regime; flag a useless bound
        geom = abs_total
    eps = np.finfo(float).eps
    tail = abs(pref) * (geom + 8.0 * eps * abs_total)
    return SeriesEval(pref * complex(total), int(terms), float(tail))


def _connection_coeffs(sv: SignVector, si: SpectralIndex):
    """E * E_l * S_l for each l, and the scalar sign of the first-kind family."""
    n = si.rank
    lam = si.lam
    front = math.pi ** (n - 1) * e2pi(
        -0.25 * sum(s * v for s, v in zip(sv.signs, lam))
    )
    dn = sv.n_plus - sv.n_minus
    coeffs = []
    for l in range(n):
        c = front * e2pi(0.25 * dn * lam[l])
        for k in range(n):
            if k != l:
                c /= complex(_backend.sinpi(complex(lam[l] - lam[k])))
        coeffs.append(c)
    return coeffs


def _j_generic_double(z: SurfacePoint, sv: SignVector, si: SpectralIndex, tol: float):
    sign = 1 if sv.n_minus % 2 == 0 else -1
    coeffs = _connection_coeffs(sv, si)
    value = 0j
    mass = 0.0
    err = 0.0
    terms = 0
    for l in range(si.rank):
        comp = first_kind(z, sign, si, l + 1, tol * 1e-3)
        c = coeffs[l]
        value += c * comp.value
        mass += abs(c) * abs(comp.value)
        err += abs(c) * comp.tail_bound
        terms += comp.terms_used
    eps = np.finfo(float).eps
    err += 8.0 * eps * mass
    return SeriesEval(value, terms, err), mass


def _first_kind_mp(z: SurfacePoint, sign: int, si: SpectralIndex, l: int, rel_tol):
    """mpmath twin of first_kind at the current working precision.

    Returns (value, terms, abs_scale) where abs_scale is the summed term
    magnitude times |prefactor| - the quantity arithmetic noise scales with.
    """
    n = si.rank
    logz = mp.mpc(z.log_modulus, z.argument)
    lam = [mp.mpc(v) for v in si.lam]
    lam_l = lam[l - 1]
    diffs = [lk - lam_l for lk in lam]
    zf = sign * mp.expjpi(mp.mpf(n) / 2) * mp.exp(n * logz)
    m_min = int(math.e * z.modulus) + 4
    m_fresh = _m_fresh([complex(d) for d in diffs])
    total = mp.mpc(0)
    abs_total = mp.mpf(0)
    t = mp.mpc(1)
    small = 0
    m = 0
    terms = 0
    while True:
        if m <= m_fresh:
            t = mp.mpc(1)
            for _ in range(m):
                t *= zf
            for k in range(n):
                t *= mp.rgamma(diffs[k] + m + 1)
        else:
            r = zf
            for k in range(n):
                r /= diffs[k] + m
            t *= r
        total += t
        abs_total += abs(t)
        terms += 1
        if m >= m_min:
            if abs(t) <= rel_tol * abs(total) + mp.mpf(10) ** (-mp.mp.dps - 30):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
        m += 1
        if m > m_min + 50000:
            break
    pref = mp.exp(-n * lam_l * logz)
    return pref * total, terms, abs(pref) * abs_total


def _j_generic_mp(z: SurfacePoint, sv: SignVector, si: SpectralIndex, dps: int):
    """Connection combination in dps-digit arithmetic; returns mp values."""
    n = si.rank
    sign = 1 if sv.n_minus % 2 == 0 else -1
    with mp.workdps(dps):
        lam = [mp.mpc(v) for v in si.lam]
        front = mp.pi ** (n - 1) * mp.expjpi(
            -mp.mpf(1) / 2 * sum(s * v for s, v in zip(sv.signs, lam))
        )
        dn = sv.n_plus - sv.n_minus
        rel = mp.mpf(10) ** (-(dps - 4))
        value = mp.mpc(0)
        mass = mp.mpf(0)
        terms = 0
        for l in range(n):
            c = front * mp.expjpi(mp.mpf(dn) / 2 * lam[l])
            for k in range(n):
                if k != l:
                    c /= mp.sinpi(lam[l] - lam[k])
            comp, t_used, comp_scale = _first_kind_mp(z, sign, si, l + 1, rel)
            value += c * comp
            # noise scales with the summed term magnitudes inside each
            # component, not with the (already cancelled) component value
            mass += abs(c) * comp_scale
            terms += t_used
        return value, mass, terms, rel


def _j_generic(z: SurfacePoint, sv: SignVector, si: SpectralIndex, tol: float):
    overflow = si.rank * z.modulus > 690.0
    eps0 = np.finfo(float).eps
    if not overflow:
        est, mass = _j_generic_double(z, sv, si, tol)
        if est.tail_bound <= tol * abs(est.value) and abs(est.value) > 0:
            return est
        # the double-pass error aggregates eps * (internal term mass), so it
        # back-solves for the cancellation the big-float pass must absorb
        noise_mass = max(est.tail_bound / (8.0 * eps0), mass)
        scale = max(abs(est.value), 1e-280)
        dps = 24 + int(math.log10(max(noise_mass / scale, 1.0))) - int(
            math.log10(tol)
        )
    else:
        # summing past the e^{n|z|} term ridge needs ~0.44 n|z| digits; the
        # escalation loop below buys more if the combination cancels deeper
        dps = 26 + int(0.45 * si.rank * z.modulus) - int(math.log10(tol))
    eps = np.finfo(float).eps
    for _ in range(8):
        value, mass, terms, rel = _j_generic_mp(z, sv, si, dps)
        v = complex(value)
        noise = mass * rel * 10
        ach = float(noise) + 4.0 * eps * abs(v)  # incl. final rounding
        if abs(v) > 0 and mp.mpf(abs(v)) > noise and ach <= tol * abs(v) + 8.0 * eps * abs(v):
            return SeriesEval(v, terms, ach)
        # |v| may still be cancellation noise, so escalate geometrically as
        # well as by the apparent requirement
        logmass = float(mp.log10(mass)) if mass > 0 else 0.0
        need = 24 + int(logmass - math.log10(max(abs(v), 1e-300))) - int(
            math.log10(tol)
        )
        dps = max(int(dps * 1.6) + 8, need)
    return SeriesEval(v, terms, ach)


def _degeneracy_direction(n: int):
    u = [l - (n + 1) / 2.0 for l in range(1, n + 1)]
    scale = max(abs(x) for x in u)
    return [x / scale for x in u]


def j_function(
    z: Pointlike, sv: SignVector, si: SpectralIndex, tol: float = 1e-10
) -> SeriesEval:
    """The sign-vector function via its first-kind expansion.

    tol is a relative-accuracy request; the achieved absolute bound comes
    back in tail_bound.  Non-generic indices (gap below 1e-4) are evaluated
    as the average over 8 generic perturbations on a circle of radius 1e-3,
    which reproduces the limit value to O(radius^8).
    """
    z = _as_point(z)
    if sv.n != si.rank:
        raise ValueError("sign vector length must match the rank")
    gap = genericity_gap(si)
    if gap >= EPS_GEN:
        return _j_generic(z, sv, si, tol)
    u = _degeneracy_direction(si.rank)
    vals = []
    tails = []
    terms = 0
    for q in range(_CAUCHY_POINTS):
        rot = _CAUCHY_RADIUS * e2pi(q / _CAUCHY_POINTS)
        pert = SpectralIndex([v + rot * ul for v, ul in zip(si.lam, u)])
        est = _j_generic(z, sv, pert, tol * 0.2)
        vals.append(est.value)
        tails.append(est.tail_bound)
        terms += est.terms_used
    value = sum(vals) / len(vals)
    spread = max(abs(v - value) for v in vals)
    tail = (
        sum(tails) / len(tails)
        + _CAUCHY_RADIUS**_CAUCHY_POINTS * (abs(value) + spread)
        + 4.0 * np.finfo(float).eps * max(abs(v) for v in vals)
    )
    return SeriesEval(value, terms, tail)


# ---------------------------------------------------------------------------
# derivatives through the index-shift matrix
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _u_numeric(si: SpectralIndex):
    return build_uv_tables(si.rank, si).u_num


def derivatives(
    z: Pointlike,
    sv: SignVector,
    si: SpectralIndex,
    k_max: int,
    tol: float = 1e-10,
) -> list:
    """d^k/dz^k of the sign-vector function for k = 0..k_max (k_max <= n).

    Uses the exact lower-triangular index-shift matrix: the k-th derivative
    is sum_j S_j (i n)^j U_{k,j} z^{j-k} J_{nu + e^{d-j+1}} where the
    shifted indices re-enter through the sum-zero normalization.
    """
    z = _as_point(z)
    n = si.rank
    if not 0 <= k_max <= n:
        raise ValueError("k_max must lie in [0, n]")
    u_num = _u_numeric(si)
    nu = nu_of_lambda(si).nu
    d = n - 1

    shifted_vals = {}

    def shifted(j):
        # nu + e^{d-j+1}: ones in the first d-j+1 slots; e^0 = e^{d+1} = 0
        ones = d - j + 1
        if not 1 <= ones <= d:
            ones = 0
        if ones not in shifted_vals:
            pert = [nu[i] + (1.0 if i < ones else 0.0) for i in range(d)]
            shifted_vals[ones] = j_function(z, sv, lambda_of_nu(NuIndex(pert)), tol)
        return shifted_vals[ones]

    out = []
    inpow = 1j * n
    for k in range(k_max + 1):
        acc = 0j
        for j in range(k + 1):
            s_j = 1
            for m in range(j):
                s_j *= sv.signs[n - 1 - m]
            term = (
                s_j
                * inpow**j
                * u_num[k][j]
                * z.power(j - k)
                * shifted(j).value
            )
            acc += term
        out.append(acc)
    return out


def ode_residual(z: Pointlike, sv: SignVector, si: SpectralIndex, tol: float = 1e-10):
    """Relative residual of the rank-n differential equation.

    Returns |sum_j V_{n,j} z^j w^(j) + (V_{n,0} - sign (i n)^n z^n) w|
    normalized by the sum of the term magnitudes.
    """
    z = _as_point(z)
    n = si.rank
    eq = bessel_eq_coeffs(n, si)
    derivs = derivatives(z, sv, si, n, tol)
    num = 0j
    scale = 0.0
    for j in range(1, n + 1):
        t = eq.v[j] * z.power(j) * derivs[j]
        num += t
        scale += abs(t)
    t0 = (eq.v[0] - sv.product_sign * (_I_POW[n % 4] * float(n) ** n) * z.power(n)) * derivs[0]
    num += t0
    scale += abs(t0)
    return abs(num) / max(scale, 1e-300)

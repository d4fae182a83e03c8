"""The signed Bessel kernel, its large-argument structure, and the
rank-n Hankel transform with its functional-equation verification.

The kernel at signed argument x is the sum over the 2^{n-1} sign vectors
whose product matches sgn x of (prod_l sig_l^{delta_l}) J(2 pi |x|^{1/n});
each inner evaluation is dispatched to the ascending series or to the
asymptotic route depending on its argument, with the Mellin-Barnes
quadrature available as arbiter.  The signed sum can cancel catastrophically
(holomorphic-parameter kernels vanish identically on one side), so results
carry a cancellation indicator and auto mode switches to the direct kernel
contour integral when it explodes.

The Hankel transform Upsilon(x) = int upsilon(y) J(xy) dy is computed on a
shared log grid: substituting w = xy makes the kernel samples independent of
x, so one paneled Gauss-Kronrod grid in log|w| serves every requested x with
only the smooth weight factor re-evaluated.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import product as _product
from typing import Sequence

import numpy as np

from . import mellinbarnes as mb
from .asympt import j_varsigma_asymptotic, validity_floor
from .coeffs import cached_b_table
from .core import (
    EvalResult,
    RootOfUnity,
    SignVector,
    SpectralIndex,
    e2pi,
)
from .series import j_function

CANCEL_SWITCH = 1e6
_ASYMPT_MIN = 12.0


@dataclass(frozen=True)
class KernelIndex:
    lam: SpectralIndex
    deltas: tuple

    def __init__(self, lam: SpectralIndex, deltas: Sequence[int]):
        object.__setattr__(self, "lam", lam)
        dl = tuple(int(d) % 2 for d in deltas)
        if len(dl) != lam.rank:
            raise ValueError("parity vector length must match rank")
        object.__setattr__(self, "deltas", dl)

    @property
    def rank(self) -> int:
        return self.lam.rank


@dataclass(frozen=True)
class WeightFunction:
    """Rapidly decaying weight on R^x; gaussian bump in log|y|."""

    eta: int = 0
    mu: float = 0.0
    width: float = 1.0
    amplitude: float = 1.0
    kind: str = "gaussian-log"

    def __post_init__(self):
        if self.kind != "gaussian-log":
            raise ValueError("only the gaussian-log weight is built in")
        if self.width <= 0:
            raise ValueError("width must be positive")

    def __call__(self, y: float) -> float:
        if y == 0.0:
            return 0.0
        u = (math.log(abs(y)) - self.mu) / self.width
        v = self.amplitude * math.exp(-u * u)
        if self.eta % 2 and y < 0:
            return -v
        return v

    def log_values(self, u, sign: int = 1):
        """Vectorized values at y = sign * exp(u)."""
        t = (np.asarray(u) - self.mu) / self.width
        v = self.amplitude * np.exp(-t * t)
        if self.eta % 2 and sign < 0:
            return -v
        return v

    def log_support(self, tiny: float = 1e-16):
        half = self.width * math.sqrt(max(1.0, -math.log(tiny / max(self.amplitude, 1e-300))))
        return self.mu - half, self.mu + half

    def mellin(self, delta: int, s: complex) -> complex:
        """Signed Mellin transform, closed form for the gaussian-log bump."""
        if (delta + self.eta) % 2 != 0:
            return 0j
        s = complex(s)
        return (
            2.0
            * self.amplitude
            * self.width
            * math.sqrt(math.pi)
            * cmath.exp(s * self.mu + s * s * self.width**2 / 4.0)
        )

    @classmethod
    def unit_mass(cls, eta=0, mu=0.0, width=1.0) -> "WeightFunction":
        # int_0^infty v(y) dy = amplitude * sqrt(pi) * width * e^{mu + width^2/4}
        amp = 1.0 / (math.sqrt(math.pi) * width * math.exp(mu + width**2 / 4.0))
        return cls(eta=eta, mu=mu, width=width, amplitude=amp)


class SampledWeightFunction:
    """Weight given by user samples on a log grid, linearly interpolated.

    Same duck interface as WeightFunction; rapid decay is checked at the
    grid ends (values there must be negligible against the peak).  The
    signed Mellin transform is trapezoid quadrature over the grid.
    """

    kind = "samples"

    def __init__(self, log_grid, values, eta: int = 0, decay_tol: float = 1e-8):
        u = np.asarray(log_grid, dtype=float)
        v = np.asarray(values, dtype=float)
        if u.ndim != 1 or u.shape != v.shape or u.size < 4:
            raise ValueError("need matching 1-d arrays with >= 4 samples")
        if not np.all(np.diff(u) > 0):
            raise ValueError("log grid must be strictly increasing")
        peak = np.abs(v).max()
        if peak == 0.0:
            raise ValueError("all samples vanish")
        if max(abs(v[0]), abs(v[-1])) > decay_tol * peak:
            raise ValueError(
                "samples do not decay at the grid ends; the transform tail "
                "would be uncontrolled"
            )
        self.u = u
        self.v = v
        self.eta = int(eta) % 2
        self.mu = float(u[np.argmax(np.abs(v))])

    def __call__(self, y: float) -> float:
        if y == 0.0:
            return 0.0
        val = float(np.interp(math.log(abs(y)), self.u, self.v, left=0.0, right=0.0))
        if self.eta and y < 0:
            return -val
        return val

    def log_values(self, u, sign: int = 1):
        out = np.interp(np.asarray(u), self.u, self.v, left=0.0, right=0.0)
        if self.eta and sign < 0:
            return -out
        return out

    def log_support(self, tiny: float = 1e-16):
        return float(self.u[0]), float(self.u[-1])

    def mellin(self, delta: int, s: complex) -> complex:
        """int v(x) sgn(x)^delta |x|^s dx/|x| over both half-lines."""
        if (delta + self.eta) % 2 != 0:
            return 0j
        s = complex(s)
        integrand = self.v * np.exp(s * self.u)
        return 2.0 * complex(np.trapezoid(integrand, self.u))


def sign_vectors(n: int, parity: int):
    out = []
    for signs in _product((1, -1), repeat=n):
        p = 1
        for s in signs:
            p *= s
        if p == parity:
            out.append(SignVector(signs))
    return out


def bessel_kernel(
    x: float, ki: KernelIndex, method: str = "auto", tol: float = 1e-9
) -> EvalResult:
    """Signed kernel J_(lambda,delta)(x), x != 0."""
    if x == 0.0:
        raise ValueError("kernel argument must be nonzero")
    n = ki.rank
    si = ki.lam
    parity = 1 if x > 0 else -1
    inner = 2.0 * math.pi * abs(x) ** (1.0 / n)

    if method == "mb":
        value, err = mb.mb_kernel_est(x, si, ki.deltas, tol)
        return EvalResult(value, err, "mellin-barnes", 1.0)
    if method not in ("auto", "series", "asympt"):
        raise ValueError("method must be auto|series|mb|asympt")

    use_asympt = inner >= max(validity_floor(si), _ASYMPT_MIN)
    if method == "series":
        use_asympt = False
    if method == "asympt" and not use_asympt:
        raise ValueError("argument below the asymptotic validity floor")

    total = 0j
    err = 0.0
    peak = 0.0
    for sv in sign_vectors(n, parity):
        coef = 1.0
        for s, d in zip(sv.signs, ki.deltas):
            if d % 2:
                coef *= s
        if use_asympt:
            ev = j_varsigma_asymptotic(inner, sv, si)
            term, term_err = ev.value, ev.error_estimate
            tag = "asymptotic"
        else:
            ev = j_function(inner, sv, si, tol)
            term, term_err = ev.value, ev.tail_bound
            tag = "series"
        total += coef * term
        err += term_err
        peak = max(peak, abs(term))
    err += 4.0 * np.finfo(float).eps * peak * (n + 1)
    cancel = peak / max(abs(total), 1e-300)
    if method == "auto" and cancel > CANCEL_SWITCH:
        value, merr = mb.mb_kernel_est(x, si, ki.deltas, max(tol * peak, 1e-13 * peak))
        return EvalResult(value, merr, "mellin-barnes", cancel)
    return EvalResult(total, err, tag, cancel)


# ---------------------------------------------------------------------------
# large-argument structure
# ---------------------------------------------------------------------------

def _w_lambda(x: float, si: SpectralIndex, sign: int, m_terms: int):
    """W^{+-}_lambda(x) = sum_m B_m(lambda;+-1) (2 pi)^{-m} x^{-m-(n-1)/2}."""
    n = si.rank
    xi = RootOfUnity(2 * n, 0 if sign > 0 else n)
    tab = cached_b_table(si, xi, min(m_terms + 1, 30))
    acc = 0j
    t = x ** (-(n - 1) / 2.0)
    m = 0
    while m < m_terms:
        acc += tab.coeffs[m] * t
        t /= 2.0 * math.pi * x
        m += 1
    nxt = abs(tab.coeffs[min(m, tab.m_terms)]) * abs(t)
    return acc, 2.0 * nxt


@dataclass(frozen=True)
class KernelAsymptotics:
    """Oscillatory terms and remainder bound of the kernel at +-x^n."""

    n: int
    x: float
    m_terms: int
    plus_terms: tuple  # (oscillatory coefficient, W value, W error)
    minus_terms: tuple
    e_decay_rate: float  # remainder decays like exp(-rate * x)
    e_prefactor_log: float  # pi*floor(n/2)*max|Im lam| enters the bound

    def side_value(self, positive: bool) -> complex:
        terms = self.plus_terms if positive else self.minus_terms
        return sum(c * w for c, w, _ in terms)

    def side_error(self, positive: bool) -> float:
        terms = self.plus_terms if positive else self.minus_terms
        return sum(abs(c) * e for c, _, e in terms)


def kernel_asymptotics(x: float, ki: KernelIndex, m_terms: int) -> KernelAsymptotics:
    """Decomposition J(+-x^n) = sum c^{+-}(delta) e(+-n x) W^{+-}_lambda(x) + E^{+-}.

    For even rank both oscillatory terms sit on the positive side and the
    negative side is purely the exponentially small remainder; for odd rank
    each side carries one oscillatory term.
    """
    if x <= 0:
        raise ValueError("x must be positive")
    si = ki.lam
    n = ki.rank
    if 2.0 * math.pi * x < validity_floor(si):
        raise ValueError("below the asymptotic validity floor")
    sum_d = sum(ki.deltas)
    plus = []
    minus = []
    for sgn in (1, -1):
        c = (sgn**sum_d) * e2pi(sgn * (n - 1) / 8.0) / math.sqrt(n)
        osc = c * e2pi(sgn * n * x)
        w, werr = _w_lambda(x, si, sgn, m_terms)
        entry = (osc, w, werr)
        if n % 2 == 0:
            plus.append(entry)
        elif sgn > 0:
            plus.append(entry)
        else:
            minus.append(entry)
    rate = 2.0 * math.pi * n * math.sin(math.pi / n) if n > 1 else 2.0 * math.pi
    return KernelAsymptotics(
        n,
        x,
        m_terms,
        tuple(plus),
        tuple(minus),
        rate,
        math.pi * (n // 2) * si.imag_bound,
    )


# ---------------------------------------------------------------------------
# Hankel transform on a shared log grid
# ---------------------------------------------------------------------------

_GKN = mb._NODES
_GKW = mb._WK15
_GGW = mb._WG15


def _panel_grid(lo: float, hi: float, n: int, rad: float = 0.9, max_panels: int = 20000):
    """Panel edges in u = log|w| sized to the kernel oscillation.

    The kernel phase runs like 2 pi n |w|^{1/n}, i.e. at rate 2 pi e^{u/n}
    per unit u, so panels shrink as rad/(2 pi) cycles per panel for the
    embedded 7-point rule to stay resolved.
    """
    edges = [lo]
    u = lo
    while u < hi:
        h = min(0.8, rad / (1.0 + math.exp(u / n)))
        u = min(hi, u + h)
        edges.append(u)
        if len(edges) > max_panels:
            raise RuntimeError("panel budget exceeded")
    return np.array(edges)


class _KernelGrid:
    """Kernel samples on Gauss-Kronrod nodes of a paneled log|w| grid."""

    def __init__(self, ki: KernelIndex, lo: float, hi: float, tol: float):
        self.ki = ki
        self.edges = _panel_grid(lo, hi, ki.rank)
        mids = 0.5 * (self.edges[1:] + self.edges[:-1])
        halfs = 0.5 * (self.edges[1:] - self.edges[:-1])
        self.u = (mids[:, None] + halfs[:, None] * _GKN[None, :]).ravel()
        self.half = halfs
        self.kvals = {}
        self.kerr = {}
        for sgn in (1, -1):
            vals = np.empty(self.u.shape, dtype=np.complex128)
            errs = np.empty(self.u.shape, dtype=np.float64)
            for i, ui in enumerate(self.u):
                r = bessel_kernel(sgn * math.exp(ui), ki, "auto", tol)
                vals[i] = r.value
                errs[i] = r.error
            self.kvals[sgn] = vals.reshape(len(halfs), 15)
            self.kerr[sgn] = errs.reshape(len(halfs), 15)

    def transform_at(self, x: float, weight: WeightFunction):
        """Upsilon(x) = int v(w/x) J_(w) dw / |x| over the cached grid."""
        L = math.log(abs(x))
        sgn = 1 if x > 0 else -1
        out = 0j
        est = 0.0
        kerr_acc = 0.0
        for s_w in (1, -1):
            # w and y = w/x share or flip sign: v(y) with y = s_w*sgn(x)*e^{u-L}
            s_y = s_w * sgn
            kv = self.kvals[s_w]
            ke = self.kerr[s_w]
            g = np.exp(self.u - L) * weight.log_values(self.u - L, s_y)
            g = g.reshape(kv.shape)
            f = g * kv
            ik = np.sum(self.half[:, None] * f * _GKW[None, :], axis=1)
            ig = np.sum(self.half[:, None] * f * _GGW[None, :], axis=1)
            out += np.sum(ik)
            est += float(np.sum(np.abs(ik - ig)))
            kerr_acc += float(
                np.sum(self.half[:, None] * np.abs(g) * ke * _GKW[None, :])
            )
        return complex(out), est + kerr_acc


@dataclass(frozen=True)
class HankelResult:
    x: tuple
    values: tuple
    errors: tuple


def hankel_transform(
    weight: WeightFunction,
    ki: KernelIndex,
    x_grid: Sequence[float],
    tol: float = 1e-7,
) -> HankelResult:
    """Transform values on the grid, with per-point error estimates.

    Deterministic: grid points are processed in input order over one shared
    kernel table, so permuting or extending the grid never changes a value.
    """
    xs = [float(x) for x in x_grid]
    if any(x == 0.0 for x in xs):
        raise ValueError("grid points must be nonzero")
    ylo, yhi = weight.log_support(tol * 1e-3)
    lmin = min(math.log(abs(x)) for x in xs)
    lmax = max(math.log(abs(x)) for x in xs)
    grid = _KernelGrid(ki, lmin + ylo, lmax + yhi, tol * 1e-2)
    vals = []
    errs = []
    for x in xs:
        v, e = grid.transform_at(x, weight)
        vals.append(v)
        errs.append(e)
    return HankelResult(tuple(xs), tuple(vals), tuple(errs))


# ---------------------------------------------------------------------------
# signed Mellin transforms and the functional equation
# ---------------------------------------------------------------------------

def signed_mellin_grid(u: np.ndarray, half: np.ndarray, fplus, fminus, delta: int, s):
    """Mellin transform of grid samples: int [f(x)+(-1)^d f(-x)] x^{s-1} dx."""
    s = complex(s)
    w = np.exp(s * u.reshape(len(half), 15))
    fp = fplus.reshape(len(half), 15)
    fm = fminus.reshape(len(half), 15)
    comb = fp + ((-1) ** (delta % 2)) * fm
    return complex(np.sum(half[:, None] * comb * w * _GKW[None, :]))


def mellin_inversion(weight: WeightFunction, x: float, sigma: float = 1.0,
                     height: float = 40.0, npts: int = 4001) -> complex:
    """Reconstruct the weight from its closed-form signed Mellin transforms.

    upsilon(x) = sum_d sgn(x)^d/(4 pi i) int_(sigma) M_d upsilon(s) |x|^{-s} ds,
    evaluated with a plain trapezoid on the vertical line (the integrand is a
    gaussian in Im s).
    """
    t = np.linspace(-height, height, npts)
    s = sigma + 1j * t
    total = 0j
    for d in (0, 1):
        ms = np.array([weight.mellin(d, sv) for sv in s])
        integrand = ms * np.exp(-s * math.log(abs(x)))
        val = np.trapezoid(integrand, t) * 1j  # ds = i dt
        total += (1.0 if x > 0 or d % 2 == 0 else -1.0) * val / (4j * math.pi)
    return complex(total)


@dataclass(frozen=True)
class FunctionalEquationReport:
    s_points: tuple
    rel_errors: tuple  # (delta, s) -> relative deviation, flattened
    max_rel_error: float
    passed: bool


def functional_equation_check(
    ki: KernelIndex,
    weight: WeightFunction,
    s_points: Sequence[complex],
    rel_tol: float = 1e-6,
    mellin_tol: float = 1e-8,
) -> FunctionalEquationReport:
    """Verify M_d Upsilon(s) = prod_l G_{delta_l+d}(s - lam_l) M_d upsilon(1-s).

    The left side is quadrature over transform values computed by the shared
    kernel grid; the right side is gamma factors times the closed-form
    Mellin transform of the weight.  Only parities d with d + eta even
    contribute (the other signed transform vanishes identically).
    """
    si = ki.lam
    n = ki.rank
    beta = 0.5 - max(v.real for v in si.lam)
    if beta <= 0.05:
        raise ValueError("Re lambda too large for the Re s = 1/2 check")
    ux_lo = math.log(mellin_tol) / beta - 2.0
    ux_hi = 6.5
    ylo, yhi = weight.log_support(mellin_tol * 1e-3)
    grid = _KernelGrid(ki, ux_lo + ylo, ux_hi + yhi, mellin_tol * 1e-1)

    # the transform oscillates at the kernel rate shifted by the bump center
    edges = _panel_grid(ux_lo + weight.mu, ux_hi + weight.mu, n, rad=0.7)
    edges = edges - weight.mu
    mids = 0.5 * (edges[1:] + edges[:-1])
    halfs = 0.5 * (edges[1:] - edges[:-1])
    ux = (mids[:, None] + halfs[:, None] * _GKN[None, :]).ravel()

    up = np.empty(ux.shape, dtype=np.complex128)
    um = np.empty(ux.shape, dtype=np.complex128)
    for i, uxi in enumerate(ux):
        up[i], _ = grid.transform_at(math.exp(uxi), weight)
        um[i], _ = grid.transform_at(-math.exp(uxi), weight)

    rels = []
    worst = 0.0
    for d in (0, 1):
        if (d + weight.eta) % 2 != 0:
            continue
        for s in s_points:
            s = complex(s)
            lhs = signed_mellin_grid(ux, halfs, up, um, d, s)
            rhs = weight.mellin(d, 1.0 - s)
            for l in range(n):
                rhs *= mb.g_delta(s - si.lam[l], ki.deltas[l] + d)
            rel = abs(lhs - rhs) / max(abs(rhs), 1e-300)
            rels.append((d, s, rel))
            worst = max(worst, rel)
    return FunctionalEquationReport(
        tuple(complex(s) for s in s_points),
        tuple(rels),
        worst,
        worst < rel_tol,
    )

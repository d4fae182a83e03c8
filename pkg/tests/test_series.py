import cmath
import math

import mpmath as mp
import numpy as np
import pytest

from besselhr import _reference as ref
from besselhr.core import (
    NuIndex,
    OverflowEvalError,
    SignVector,
    SpectralIndex,
    SurfacePoint,
    e2pi,
    lambda_of_nu,
)
from besselhr.mellinbarnes import mb_eval_est
from besselhr.series import derivatives, first_kind, j_function, ode_residual

mp.mp.dps = 35


def test_first_kind_rank2_classical():
    # J_2(z; +, lam, -lam) = J_{2 lam}(2z); J_1 = J_{-2 lam}; minus sign gives I
    lam = 0.37 - 0.11j
    si = SpectralIndex([lam, -lam])
    for x in (0.6, 2.5, 8.0):
        r = first_kind(x, +1, si, 2)
        want = ref.besselj(2 * lam, 2 * x)
        assert abs(r.value - want) <= max(2e-13 * abs(want), r.tail_bound + 1e-18)
        r = first_kind(x, +1, si, 1)
        want = ref.besselj(-2 * lam, 2 * x)
        assert abs(r.value - want) <= max(2e-13 * abs(want), r.tail_bound + 1e-18)
        r = first_kind(x, -1, si, 2)
        want = ref.besseli(2 * lam, 2 * x)
        assert abs(r.value - want) <= max(2e-13 * abs(want), r.tail_bound + 1e-18)


def test_first_kind_leading_behavior():
    # value * prod_{k != l} Gamma(lam_k - lam_l + 1) * z^{n lam_l} -> 1 at 0
    si = SpectralIndex([0.23, -0.06, -0.17])
    l = 2
    z = SurfacePoint.from_positive(1e-6)
    r = first_kind(z, +1, si, l)
    scale = z.power(3 * si.lam[l - 1])
    prod = 1.0 + 0.0j
    for k in range(3):
        if k != l - 1:
            prod *= cmath.exp(complex(mp.loggamma(si.lam[k] - si.lam[l - 1] + 1)))
    assert abs(r.value * prod * scale - 1.0) < 1e-10


def test_first_kind_rotation_law():
    # J_l(e^{i pi a/n} z) = e^{-pi i a lam_l} J_l(z; flipped sign)
    si = SpectralIndex([0.3, -0.1, -0.2])
    n, a, l = 3, 1, 2
    z = SurfacePoint.from_positive(1.7)
    zr = z.rotated(a * math.pi / n)
    lhs = first_kind(zr, +1, si, l).value
    rhs = cmath.exp(-1j * math.pi * a * si.lam[l - 1]) * first_kind(z, -1, si, l).value
    assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs))


def test_first_kind_overflow_error():
    si = SpectralIndex([0.0])
    with pytest.raises(OverflowEvalError):
        first_kind(1000.0, +1, si, 1)


def test_first_kind_nongeneric_pole_terms():
    # integral lambda difference: the series must run through the zero terms
    si = SpectralIndex([1.0, -1.0])  # differences 2: non-generic
    x = 1.3
    r = first_kind(x, +1, si, 2)  # J_{2 lam}(2x) with 2 lam = 2
    want = ref.besselj(2.0, 2 * x)
    assert abs(r.value - want) < 1e-12 * abs(want)
    # and J_1 = J_{-2}(2x) = J_2(2x) for the integer order
    r1 = first_kind(x, +1, si, 1)
    assert abs(r1.value - want) < 1e-12 * abs(want)


def test_j_function_rank1():
    si = SpectralIndex([0.0])
    for x in (0.7, 5.0, 20.0):
        for s, sgn in (("+", 1), ("-", -1)):
            r = j_function(x, SignVector(s), si, 1e-12)
            want = cmath.exp(sgn * 1j * x)
            assert abs(r.value - want) < 5e-12
            assert abs(r.value - want) <= 4 * r.tail_bound + 5e-15


def test_j_function_rank2_closed_forms():
    lam = 0.2 + 0.1j
    si = SpectralIndex([lam, -lam])
    x = 6.0
    cases = {
        "++": 1j * math.pi * cmath.exp(1j * math.pi * lam) * ref.hankel1(2 * lam, 2 * x),
        "--": -1j * math.pi * cmath.exp(-1j * math.pi * lam) * ref.hankel2(2 * lam, 2 * x),
        "+-": 2 * cmath.exp(-1j * math.pi * lam) * ref.besselk(2 * lam, 2 * x),
        "-+": 2 * cmath.exp(1j * math.pi * lam) * ref.besselk(2 * lam, 2 * x),
    }
    for s, want in cases.items():
        got = j_function(x, SignVector(s), si, 1e-11).value
        assert abs(got - want) < 1e-10 * abs(want)


def test_j_function_vs_mb_oracle():
    si = SpectralIndex([0.3, -0.1, -0.2])
    for s in ("+++", "++-", "-+-"):
        sv = SignVector(s)
        r = j_function(2.0, sv, si, 1e-10)
        vm, em = mb_eval_est(2.0, sv, si, 1e-11)
        assert abs(r.value - vm) < 1e-8 * max(abs(vm), 1e-6)


def test_j_function_rotation_to_oscillatory():
    # J(z; sig, lam) = e(sum_{L_-} lam/2) J(e^{i pi n_-/n} z; all-plus, lam)
    si = SpectralIndex([0.25, -0.05, -0.2])
    sv = SignVector("+-+")
    z = SurfacePoint.from_positive(1.9)
    n = 3
    lhs = j_function(z, sv, si, 1e-11).value
    lam_minus = sum(si.lam[l - 1] for l in sv.minus_positions)
    rot = z.rotated(math.pi * sv.n_minus / n)
    rhs = e2pi(0.5 * lam_minus) * j_function(rot, SignVector("+++"), si, 1e-11).value
    assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(rhs))


def test_j_function_nongeneric_limit():
    # lam = (1/2, -1/2) is non-generic; classical value: the connection gives
    # J(x; +,-) = 2 e^{-pi i/2} K_1(2x) via continuity in lam
    si = SpectralIndex([0.5, -0.5])
    x = 1.1
    r = j_function(x, SignVector("+-"), si, 1e-9)
    want = 2 * cmath.exp(-0.5j * math.pi) * complex(mp.besselk(1, 2 * x))
    assert abs(r.value - want) < 1e-7 * abs(want)
    assert abs(r.value - want) <= 4 * r.tail_bound


def test_j_function_high_precision_path():
    # deep cancellation: K-type at x = 30 has |J| ~ e^{-78}; the adaptive
    # big-float path must deliver the requested relative accuracy
    si = SpectralIndex([0.3, -0.1, -0.2])
    sv = SignVector("++-")
    r = j_function(30.0, sv, si, 1e-9)
    from besselhr.asympt import j_varsigma_asymptotic

    ra = j_varsigma_asymptotic(30.0, sv, si)
    assert abs(r.value - ra.value) <= 1e-7 * abs(ra.value)
    assert r.tail_bound <= 1e-8 * abs(r.value)


def test_j_function_beyond_double_range():
    # n |z| > 690 overflows double series termwise; the big-float route
    # must take over transparently
    si = SpectralIndex([0.0])
    r = j_function(750.0, SignVector("+"), si, 1e-8)
    want = complex(mp.expjpi(mp.mpf(750) / mp.pi))
    assert abs(r.value - want) < 1e-6


def test_index_recurrence():
    # (nu_l/(i x)) J_nu = sig_l J_{nu - e_l} - sig_{d+1} J_{nu + e^d}
    rng = np.random.default_rng(8)
    for n in (2, 3, 4):
        nu = tuple(rng.uniform(-0.4, 0.4, n - 1) + 1j * rng.uniform(-0.3, 0.3, n - 1))
        sv = SignVector([1] * (n - 1) + [-1])
        x = 2.2
        for l in range(n - 1):
            lhs = nu[l] / (1j * x) * j_function(x, sv, lambda_of_nu(NuIndex(nu)), 1e-11).value
            num = list(nu)
            num[l] -= 1
            t1 = sv.signs[l] * j_function(x, sv, lambda_of_nu(NuIndex(num)), 1e-11).value
            nup = [v + 1 for v in nu]
            t2 = sv.signs[-1] * j_function(x, sv, lambda_of_nu(NuIndex(nup)), 1e-11).value
            rhs = t1 - t2
            assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(rhs))


def test_derivatives_vs_finite_differences():
    si = SpectralIndex([0.3, -0.1, -0.2])
    sv = SignVector("++-")
    x = 3.0
    ders = derivatives(x, sv, si, 2, 1e-11)
    h = 1e-4
    f = lambda t: j_function(t, sv, si, 1e-12).value
    d1 = (f(x + h) - f(x - h)) / (2 * h)
    d2 = (f(x + h) - 2 * f(x) + f(x - h)) / (h * h)
    assert abs(ders[0] - f(x)) < 1e-10 * abs(f(x))
    assert abs(ders[1] - d1) < 1e-6 * max(abs(d1), 1.0)
    assert abs(ders[2] - d2) < 1e-4 * max(abs(d2), 1.0)


def test_first_derivative_recurrence():
    # J' = sig_{d+1} i n J_{nu+e^d} + (sum nu_l / x) J_nu
    si = SpectralIndex([0.24, -0.1, -0.14])
    sv = SignVector("+-+")
    from besselhr.core import nu_of_lambda

    x = 2.7
    nu = nu_of_lambda(si).nu
    ders = derivatives(x, sv, si, 1, 1e-12)
    nup = [v + 1 for v in nu]
    rhs = sv.signs[-1] * 3j * j_function(
        x, sv, lambda_of_nu(NuIndex(nup)), 1e-12
    ).value + sum(nu) / x * ders[0]
    assert abs(ders[1] - rhs) < 1e-9 * max(1.0, abs(rhs))


def test_ode_residual_small():
    rng = np.random.default_rng(12)
    for n in (2, 3, 4, 5):
        lam = 0.25 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
        si = SpectralIndex(lam)
        sv = SignVector([1] * (n - 1) + [-1])
        for x in (1.0, 4.0, 9.5):
            assert ode_residual(x, sv, si, 1e-10) < 1e-8

import cmath
import math

import numpy as np
import pytest

from besselhr import _reference as ref
from besselhr.core import (
    OutOfSectorError,
    RootOfUnity,
    SignVector,
    SpectralIndex,
    SurfacePoint,
    ValidityFloorError,
)
from besselhr.asympt import (
    h_bessel,
    inverse_connection,
    j_varsigma_asymptotic,
    rotate_second_kind,
    second_kind,
    w_function,
)
from besselhr.mellinbarnes import mb_eval_est
from besselhr.series import j_function


def test_second_kind_rank2_k():
    # J(z; (lam,-lam); i) = (2/sqrt(pi)) K_{2 lam}(2z)
    lam = 0.23 + 0.1j
    si = SpectralIndex([lam, -lam])
    for x in (8.0, 15.0, 40.0):
        r = second_kind(x, si, RootOfUnity(4, 1))
        want = 2 / math.sqrt(math.pi) * ref.besselk(2 * lam, 2 * x, dps=50)
        assert abs(r.value - want) <= max(3 * r.error_estimate, 1e-13 * abs(want))


def test_second_kind_leading_term():
    # value * e^{-i n xi z} z^{(n-1)/2} -> 1 along the central ray
    si = SpectralIndex([0.2, -0.05, -0.15])
    xi = RootOfUnity(6, 2)
    center = 0.5 * math.pi - xi.argument
    for mod in (40.0, 160.0):
        z = SurfacePoint.from_polar(mod, center)
        r = second_kind(z, si, xi)
        lead = r.value * cmath.exp(-3j * xi.value * z.to_complex()) * z.power(1.0)
        assert abs(lead - 1.0) < 5.0 / mod


def test_second_kind_guards():
    si = SpectralIndex([0.2, -0.05, -0.15])
    with pytest.raises(ValidityFloorError):
        second_kind(1.0, si, RootOfUnity(6, 0))
    z = SurfacePoint.from_polar(50.0, 4.0)  # outside the sector around -pi/2...
    with pytest.raises(OutOfSectorError):
        second_kind(z, si, RootOfUnity(6, 2))


def test_h_bessel_rank2_hankel1():
    lam = 0.2j
    si = SpectralIndex([lam, -lam])
    x = 30.0
    r = h_bessel(x, si, "+")
    want = 1j * math.pi * cmath.exp(1j * math.pi * lam) * ref.hankel1(2 * lam, 2 * x, dps=50)
    assert abs(r.value - want) < 1e-9 * abs(want)
    r = h_bessel(x, si, "-")
    want = -1j * math.pi * cmath.exp(-1j * math.pi * lam) * ref.hankel2(2 * lam, 2 * x, dps=50)
    assert abs(r.value - want) < 1e-9 * abs(want)


def test_h_bessel_prototype_all_n():
    # at the prototype index H^+- is exactly the pure exponential solution
    for n in (2, 3, 4, 5):
        si = SpectralIndex([(n + 1 - 2 * l) / (2.0 * n) for l in range(1, n + 1)])
        x = 25.0
        for sgn in (1, -1):
            r = h_bessel(x, si, "+" if sgn > 0 else "-")
            want = (
                n**-0.5
                * cmath.exp(((n - 1) / 2.0) * complex(math.log(2 * math.pi), sgn * math.pi / 2))
                * cmath.exp(sgn * 1j * n * x)
                * x ** (-(n - 1) / 2.0)
            )
            assert abs(r.value - want) < 1e-10 * abs(want)


def test_w_leading_term():
    si = SpectralIndex([0.2, -0.05, -0.15])
    x = 50.0
    r = w_function(x, si, "+")
    assert abs(r.value * x ** 1.0 - 1.0) < 0.05


def test_w_derivative_termwise():
    # d/dz of W agrees with central differences of W itself
    si = SpectralIndex([0.2, -0.05, -0.15])
    x, h = 50.0, 1e-3
    d1 = w_function(x, si, "+", j=1)
    w0 = lambda t: w_function(t, si, "+").value
    fd = (w0(x + h) - w0(x - h)) / (2 * h)
    assert abs(d1.value - fd) < 1e-8 * abs(fd)


def test_bridge_consistency():
    # sqrt(n) (+-2 pi i)^{-(n-1)/2} J(.; all +-) equals the +-1 expansion
    si = SpectralIndex([0.3, -0.1, -0.2])
    x = 40.0
    a = j_varsigma_asymptotic(x, SignVector("+++"), si)
    b = h_bessel(x, si, "+")
    assert abs(a.value - b.value) <= 1e-14 * abs(b.value)
    am = j_varsigma_asymptotic(x, SignVector("---"), si)
    bm = h_bessel(x, si, "-")
    assert abs(am.value - bm.value) <= 1e-14 * abs(bm.value)


def test_h_bessel_complex_argument_vs_series():
    # both continuations live on the cover; compare off the positive reals
    si = SpectralIndex([0.3, -0.1, -0.2])
    for w in (math.pi / 4, math.pi / 2, 3 * math.pi / 4):
        z = SurfacePoint.from_polar(25.0, w)
        a = h_bessel(z, si, "+")
        r = j_function(z, SignVector("+++"), si, 1e-9)
        assert abs(a.value - r.value) <= 1e-7 * abs(a.value) + 4 * a.error_estimate


def test_j_varsigma_vs_series():
    si = SpectralIndex([0.3, -0.1, -0.2])
    for s in ("++-", "-+-", "+--"):
        sv = SignVector(s)
        a = j_varsigma_asymptotic(25.0, sv, si)
        r = j_function(25.0, sv, si, 1e-9)
        assert abs(a.value - r.value) < 1e-7 * abs(a.value)


def test_j_varsigma_vs_mb_moderate():
    si = SpectralIndex([0.3, -0.1, -0.2])
    sv = SignVector("+++")
    for x in (20.0, 30.0):
        a = j_varsigma_asymptotic(x, sv, si)
        vm, em = mb_eval_est(x, sv, si, 1e-10)
        assert abs(a.value - vm) <= 4 * (a.error_estimate + em) + 1e-9 * abs(vm)


def test_rotation_identity_and_two_path():
    si = SpectralIndex([0.25, 0.1, -0.15, -0.2])
    x = 30.0
    # xi = 1: rotation is the identity
    direct = second_kind(x, si, RootOfUnity(8, 0))
    rot = rotate_second_kind(x, si, RootOfUnity(8, 0))
    assert abs(direct.value - rot.value) == 0.0
    # generic 2n-th root: two-path agreement
    for idx in (1, 2, 3, 5):
        xi = RootOfUnity(8, idx)
        d = second_kind(SurfacePoint.from_positive(x), si, xi) if abs(
            SurfacePoint.from_positive(x).argument - (0.5 * math.pi - xi.argument)
        ) < math.pi + math.pi / 4 - math.pi / 6 else None
        r = rotate_second_kind(x, si, xi)
        if d is not None:
            assert abs(d.value - r.value) < 1e-10 * abs(d.value)


def test_rotation_minus_one_branch():
    # J(z; lam; -1) = (-1)^{(n-1)/2} J(-z; lam; 1) in designated arithmetic
    si = SpectralIndex([0.2, -0.05, -0.15])
    n = 3
    x = 35.0
    lhs = second_kind(x, si, RootOfUnity(6, 3))
    z_rot = SurfacePoint.from_positive(x).rotated(math.pi)
    rhs = cmath.exp(1j * (n - 1) / 2.0 * math.pi) * second_kind(
        z_rot, si, RootOfUnity(6, 0)
    ).value
    assert abs(lhs.value - rhs) < 1e-12 * abs(rhs)


def test_k_decay_rate():
    si = SpectralIndex([0.2, -0.05, -0.15])
    sv = SignVector("++-")
    xs = np.linspace(30, 60, 11)
    ys = [
        math.log(abs(j_varsigma_asymptotic(float(x), sv, si).value)) + math.log(x)
        for x in xs
    ]
    slope = float(np.polyfit(xs, ys, 1)[0])
    want = -3 * math.sin(math.pi / 3)
    assert abs(slope - want) < 0.02 * abs(want)


def test_truncation_error_honesty():
    # |asympt - mb| <= 4 (asympt est + mb est) over an oscillatory sample,
    # ranks 2 and 3
    cases = [
        (SpectralIndex([0.2 + 0.1j, -0.2 - 0.1j]), SignVector("++")),
        (SpectralIndex([0.25, -0.1, -0.15]), SignVector("+++")),
    ]
    good = total = 0
    for si, sv in cases:
        for x in np.geomspace(20, 100, 12):
            a = j_varsigma_asymptotic(float(x), sv, si)
            vm, em = mb_eval_est(float(x), sv, si, 1e-9)
            total += 1
            if abs(a.value - vm) <= 4 * (a.error_estimate + em):
                good += 1
    assert good >= 0.99 * total - 1e-9 or good == total


def test_vandermonde_forward_inverse_identity():
    # V(lam) times its Lagrange-form inverse is the identity
    rng = np.random.default_rng(4)
    from besselhr.asympt import _sym_funcs_omitting
    from besselhr.core import e2pi

    for n in (2, 3, 4, 5):
        while True:  # draw generic, decently separated nodes
            lam = SpectralIndex(
                0.3 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
            )
            xs = [e2pi(-v) for v in lam.lam]
            sep = min(
                abs(xs[i] - xs[j]) for i in range(n) for j in range(i + 1, n)
            )
            if sep > 0.35:
                break
        v = np.array([[xs[l] ** (j) for l in range(n)] for j in range(n)])
        sig = _sym_funcs_omitting(xs)
        tau = [
            np.prod([xs[m] - xs[k] for k in range(n) if k != m]) for m in range(n)
        ]
        vinv = np.array(
            [
                [(-1.0) ** (n - (j + 1)) * sig[m][n - (j + 1)] / tau[m] for j in range(n)]
                for m in range(n)
            ]
        )
        assert np.abs(vinv @ v - np.eye(n)).max() < 1e-12


def test_inverse_connection_rank2_pattern():
    # J_nu = (H1 + H2)/2 in the classical normalization
    lam = 0.17 + 0.05j
    si = SpectralIndex([lam, -lam])
    x = 30.0
    vals = inverse_connection(x, si, a=0)
    want2 = ref.besselj(2 * lam, 2 * x, dps=60)
    want1 = ref.besselj(-2 * lam, 2 * x, dps=60)
    assert abs(vals[1] - want2) < 1e-8 * abs(want2)
    assert abs(vals[0] - want1) < 1e-8 * abs(want1)


def test_inverse_connection_vs_series_rank3():
    import mpmath as mpm
    from besselhr.series import _first_kind_mp
    from besselhr.core import SurfacePoint

    si = SpectralIndex([0.3, -0.1, -0.2])
    x = 60.0
    recon = inverse_connection(x, si, a=0)
    z = SurfacePoint.from_positive(x)
    with mpm.workdps(120):
        for l in range(1, 4):
            want, _, _ = _first_kind_mp(z, 1, si, l, mpm.mpf(10) ** -100)
            wantc = complex(want)
            assert abs(recon[l - 1] - wantc) < 1e-6 * abs(wantc)

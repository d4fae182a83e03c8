"""Command-line front end.

Subcommands: eval (single/grid evaluation by series, asymptotics or
Mellin-Barnes), coeffs (coefficient-table dumps with exact integers as
decimal strings), kernel and transform (signed-kernel and Hankel-transform
tables), oracle compare (per-point cross-method discrepancies) and verify
(the named invariant suites).

Every output artifact embeds a JSON run-configuration header (commented out
in CSV) with the package version, a hash of the canonical configuration and
the contour/truncation policy, so re-running the same header reproduces the
numeric output byte for byte; all reductions run in fixed order.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numeric
non-convergence.
"""

from __future__ import annotations

import argparse
import cmath
import hashlib
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__, _backend
from .asympt import INVERSE_THETA, j_varsigma_asymptotic, rotate_second_kind
from .coeffs import (
    build_a_table,
    build_b_table,
    build_uv_tables,
    bessel_eq_coeffs,
    check_combinatorial_identity,
)
from .core import (
    OutOfSectorError,
    OverflowEvalError,
    PoleError,
    RootOfUnity,
    SignVector,
    SpectralIndex,
    ToleranceNotMetError,
    ValidityFloorError,
)
from .kernel import (
    KernelIndex,
    WeightFunction,
    bessel_kernel,
    functional_equation_check,
    hankel_transform,
    mellin_inversion,
)
from .mellinbarnes import default_contour, g_delta, mb_eval_est
from .series import j_function, ode_residual

USAGE_EXIT = 2
NUMERIC_EXIT = 3


def parse_complex(text: str) -> complex:
    t = text.strip().replace("i", "j").replace(" ", "")
    if t.endswith("j") or "j" in t:
        return complex(t)
    return complex(float(t))


def parse_lambda(text: str):
    return [parse_complex(p) for p in text.split(",") if p.strip()]


def parse_grid(text: str):
    if ":" in text:
        kind, lo, hi, count = text.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
        if kind == "log":
            if lo <= 0 or hi <= 0:
                raise ValueError("log grid needs positive endpoints")
            return list(np.geomspace(lo, hi, count))
        if kind == "lin":
            return list(np.linspace(lo, hi, count))
        raise ValueError("grid must be log:lo:hi:n, lin:lo:hi:n or a comma list")
    return [float(p) for p in text.split(",") if p.strip()]


def parse_weight(text: str) -> WeightFunction:
    # e.g. gaussian-log:eta=0,mu=0.0,width=1.0
    if ":" in text:
        kind, rest = text.split(":", 1)
    else:
        kind, rest = text, ""
    if kind != "gaussian-log":
        raise ValueError("only the gaussian-log weight is supported")
    kw = {}
    for part in rest.split(","):
        if not part.strip():
            continue
        k, v = part.split("=")
        k = k.strip()
        if k == "eta":
            kw["eta"] = int(v)
        elif k in ("mu", "width", "amplitude"):
            kw[k] = float(v)
        else:
            raise ValueError(f"unknown weight parameter {k}")
    return WeightFunction(**kw)


def fmt_float(v: float) -> str:
    return repr(float(v))


def config_header(cfg: dict) -> dict:
    canon = json.dumps(cfg, sort_keys=True, default=str)
    return {
        "version": __version__,
        "backend": _backend.BACKEND,
        "config": cfg,
        "config_sha256": hashlib.sha256(canon.encode()).hexdigest(),
    }


def emit_rows(header: dict, columns, rows, fmt: str, out_path):
    if fmt == "json":
        payload = {
            "meta": header,
            "columns": list(columns),
            "rows": [
                [fmt_float(c) if isinstance(c, float) else c for c in row]
                for row in rows
            ],
        }
        text = json.dumps(payload, indent=1, default=str) + "\n"
    else:
        lines = ["# " + json.dumps(header, sort_keys=True, default=str)]
        lines.append(",".join(columns))
        for row in rows:
            lines.append(
                ",".join(
                    fmt_float(c) if isinstance(c, float) else str(c) for c in row
                )
            )
        text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _index_from_args(args) -> SpectralIndex:
    lam = parse_lambda(args.lam)
    if args.n is not None and len(lam) != args.n:
        raise ValueError(f"--lambda has {len(lam)} entries but --n {args.n}")
    return SpectralIndex(lam)


def _contour_meta(si, x):
    c = default_contour(si, x)
    return {
        "base_real": c.base_real,
        "bend_height": c.bend_height,
        "bend_angle": c.bend_angle,
        "t_max_initial": c.t_max,
    }


def _eval_point(method, x, sv, si, tol):
    """Returns (value, err, method_tag, status)."""
    try:
        if method == "series":
            r = j_function(x, sv, si, tol)
            return r.value, r.tail_bound, "series", "ok"
        if method == "asympt":
            r = j_varsigma_asymptotic(x, sv, si)
            return r.value, r.error_estimate, "asymptotic", "ok"
        if method == "mb":
            v, e = mb_eval_est(x, sv, si, tol)
            status = "ok" if e <= tol else "tolerance-not-met"
            return v, e, "mellin-barnes", status
        raise ValueError(f"unknown method {method}")
    except (OutOfSectorError, ValidityFloorError, OverflowEvalError) as exc:
        return complex("nan"), math.inf, method, f"error: {exc}"


def cmd_eval(args) -> int:
    si = _index_from_args(args)
    sv = SignVector.from_string(args.signs)
    if sv.n != si.rank:
        raise ValueError("--signs length must match the rank")
    xs = parse_grid(args.x_grid) if args.x_grid else [args.x]
    if xs is None:
        raise ValueError("provide --x or --x-grid")
    cfg = {
        "command": "eval",
        "method": args.method,
        "n": si.rank,
        "signs": str(sv),
        "lambda": [str(v) for v in si.lam],
        "x_grid": [fmt_float(x) for x in xs],
        "arg": args.arg,
        "tol": args.tol,
        "mb_contour": _contour_meta(si, max(xs)),
    }
    rows = []
    failures = 0
    threads = max(1, int(os.environ.get("BESSELHR_THREADS", "1")))
    points = list(xs)

    def work(x):
        from .core import SurfacePoint

        z = SurfacePoint.from_polar(x, args.arg) if args.arg else x
        return _eval_point(args.method, z, sv, si, args.tol)

    if threads > 1 and args.method == "mb":
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(work, points))
    else:
        results = [work(x) for x in points]
    for x, (v, e, tag, status) in zip(points, results):
        if status != "ok":
            failures += 1
        rows.append([float(x), float(v.real), float(v.imag), float(e), tag, status])
    emit_rows(
        config_header(cfg),
        ["x", "re", "im", "err", "method", "status"],
        rows,
        args.format,
        args.out,
    )
    return NUMERIC_EXIT if failures else 0


def cmd_coeffs(args) -> int:
    n = args.n
    si = _index_from_args(args) if args.lam else None
    cfg = {
        "command": "coeffs",
        "n": n,
        "lambda": [str(v) for v in si.lam] if si else None,
        "xi": args.xi,
        "terms": args.terms,
    }
    rows = []
    atab = build_a_table(min(n + 2, 20), min(n + 2, 20))
    for j in range(atab.j_max + 1):
        for m in range(atab.m_max + 1):
            rows.append(["A", j, m, str(atab.a(j, m)), ""])
    if si is not None:
        uv = build_uv_tables(n, si)
        for k in range(n + 1):
            for jj in range(k + 1):
                rows.append(
                    [
                        "U",
                        k,
                        jj,
                        fmt_float(uv.u_num[k][jj].real),
                        fmt_float(uv.u_num[k][jj].imag),
                    ]
                )
                rows.append(
                    [
                        "V",
                        k,
                        jj,
                        fmt_float(uv.v_num[k][jj].real),
                        fmt_float(uv.v_num[k][jj].imag),
                    ]
                )
        xi = RootOfUnity(2 * n, args.xi)
        bt = build_b_table(n, si, xi, args.terms)
        for m, c in enumerate(bt.coeffs):
            rows.append(["B", m, args.xi, fmt_float(c.real), fmt_float(c.imag)])
    emit_rows(
        config_header(cfg),
        ["table", "i", "j", "value_or_re", "im"],
        rows,
        args.format,
        args.out,
    )
    return 0


def cmd_kernel(args) -> int:
    si = _index_from_args(args)
    deltas = [int(d) for d in args.delta.split(",")]
    ki = KernelIndex(si, deltas)
    xs = parse_grid(args.x_grid)
    from .asympt import DEFAULT_THETA, M_CAP, validity_floor

    cfg = {
        "command": "kernel",
        "n": si.rank,
        "lambda": [str(v) for v in si.lam],
        "delta": deltas,
        "x_grid_spec": args.x_grid,
        "method": args.method,
        "tol": args.tol,
        "mb_contour": _contour_meta(si, max(abs(float(x)) for x in xs) ** (1.0 / si.rank) * 2 * math.pi),
        "asympt_policy": {
            "m_cap": M_CAP,
            "theta": DEFAULT_THETA,
            "validity_floor": validity_floor(si),
        },
    }
    rows = []
    failures = 0
    for x in xs:
        try:
            r = bessel_kernel(float(x), ki, args.method, args.tol)
            rows.append(
                [
                    float(x),
                    float(r.value.real),
                    float(r.value.imag),
                    float(r.error),
                    r.method,
                    float(r.cancellation),
                ]
            )
        except (ToleranceNotMetError, OverflowEvalError) as exc:
            failures += 1
            rows.append([float(x), math.nan, math.nan, math.inf, "failed", 0.0])
    emit_rows(
        config_header(cfg),
        ["x", "re", "im", "err", "method", "cancellation"],
        rows,
        args.format,
        args.out,
    )
    return NUMERIC_EXIT if failures else 0


def cmd_transform(args) -> int:
    si = _index_from_args(args)
    deltas = [int(d) for d in args.delta.split(",")]
    ki = KernelIndex(si, deltas)
    weight = parse_weight(args.weight)
    xs = parse_grid(args.x_grid)
    from .asympt import DEFAULT_THETA, M_CAP, validity_floor

    cfg = {
        "command": "transform",
        "n": si.rank,
        "lambda": [str(v) for v in si.lam],
        "delta": deltas,
        "weight": args.weight,
        "x_grid_spec": args.x_grid,
        "tol": args.tol,
        "asympt_policy": {
            "m_cap": M_CAP,
            "theta": DEFAULT_THETA,
            "validity_floor": validity_floor(si),
        },
    }
    res = hankel_transform(weight, ki, xs, args.tol)
    rows = [
        [float(x), float(v.real), float(v.imag), float(e)]
        for x, v, e in zip(res.x, res.values, res.errors)
    ]
    emit_rows(
        config_header(cfg), ["x", "re", "im", "err"], rows, args.format, args.out
    )
    if args.fe_report:
        spts = [parse_complex(p) for p in args.s_points.split(",")]
        rep = functional_equation_check(ki, weight, spts, rel_tol=args.fe_tol)
        payload = {
            "meta": config_header(cfg),
            "functional_equation": {
                "passed": bool(rep.passed),
                "max_rel_error": rep.max_rel_error,
                "checks": [
                    {"delta": d, "s": str(s), "rel_error": r}
                    for d, s, r in rep.rel_errors
                ],
            },
        }
        with open(args.fe_report, "w") as fh:
            json.dump(payload, fh, indent=1, default=str)
        if not rep.passed:
            return 1
    return 0


def cmd_oracle(args) -> int:
    if args.oracle_cmd != "compare":
        raise ValueError("oracle supports: compare")
    si = _index_from_args(args)
    sv = SignVector.from_string(args.signs)
    xs = parse_grid(args.x_grid)
    methods = [m.strip() for m in args.methods.split(",")]
    cfg = {
        "command": "oracle compare",
        "n": si.rank,
        "signs": str(sv),
        "lambda": [str(v) for v in si.lam],
        "methods": methods,
        "x_grid_spec": args.x_grid,
        "tol": args.tol,
    }
    cols = ["x"]
    for m in methods:
        cols += [f"{m}_re", f"{m}_im", f"{m}_err"]
    for i in range(len(methods)):
        for j in range(i + 1, len(methods)):
            cols.append(f"diff_{methods[i]}_{methods[j]}")
    rows = []
    for x in xs:
        vals = {}
        row = [float(x)]
        for m in methods:
            v, e, _, status = _eval_point(m, float(x), sv, si, args.tol)
            vals[m] = (v, e)
            row += [float(v.real), float(v.imag), float(e)]
        for i in range(len(methods)):
            for j in range(i + 1, len(methods)):
                row.append(abs(vals[methods[i]][0] - vals[methods[j]][0]))
        rows.append(row)
    emit_rows(config_header(cfg), cols, rows, args.format, args.out)
    return 0


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------

def _suite_coeffs(args):
    checks = []
    t0 = time.time()
    tab = build_a_table(20, 20)
    checks.append(("a-table-closed-form", tab.verify_closed_form(), 0.0, t0))
    n_exact = min(args.n or 6, 6)
    for n in range(1, n_exact + 1):
        t0 = time.time()
        uv = build_uv_tables(n)
        checks.append((f"uv-orthogonality-exact-n{n}", uv.orthogonality_exact(), 0.0, t0))
    rng = np.random.default_rng(args.seed)
    n_num = args.n or 8
    worst = 0.0
    t0 = time.time()
    for _ in range(20):
        lam = rng.standard_normal(n_num) + 1j * rng.standard_normal(n_num)
        uv = build_uv_tables(n_num, SpectralIndex(lam))
        worst = max(worst, uv.orthogonality_residual())
    checks.append((f"uv-orthogonality-numeric-n{n_num}", worst < 1e-10, worst, t0))
    return checks


def _suite_identity54(args):
    t0 = time.time()
    rep = check_combinatorial_identity(args.mmax or 8)
    return [("identity54", rep.all_equal, 0.0, t0)]


def _suite_rank2(args):
    from . import _reference as ref

    checks = []
    lam = 0.2 + 0.1j
    si = SpectralIndex([lam, -lam])
    for x in (0.7, 3.0, 9.0):
        t0 = time.time()
        forms = {
            "++": 1j * math.pi * cmath.exp(1j * math.pi * lam) * ref.hankel1(2 * lam, 2 * x),
            "--": -1j * math.pi * cmath.exp(-1j * math.pi * lam) * ref.hankel2(2 * lam, 2 * x),
            "+-": 2 * cmath.exp(-1j * math.pi * lam) * ref.besselk(2 * lam, 2 * x),
            "-+": 2 * cmath.exp(1j * math.pi * lam) * ref.besselk(2 * lam, 2 * x),
        }
        worst = 0.0
        for s, want in forms.items():
            got = j_function(x, SignVector.from_string(s), si, 1e-11).value
            worst = max(worst, abs(got - want) / abs(want))
        checks.append((f"rank2-closed-forms-x{x}", worst < 1e-9, worst, t0))
    return checks


def _suite_special(args):
    import itertools

    checks = []
    n = args.n or 3
    si = SpectralIndex([(n + 1 - 2 * l) / (2.0 * n) for l in range(1, n + 1)])
    t0 = time.time()
    worst = 0.0
    for signs in itertools.product("+-", repeat=n):
        sv = SignVector.from_string("".join(signs))
        for x in (1.0, 4.0):
            xi = 1j * cmath.exp(1j * math.pi * (sv.n_minus - sv.n_plus) / (2 * n))
            c = cmath.exp(
                2j
                * math.pi
                * (-(n - 1) / 8.0 + sum(l - 1 for l in sv.plus_positions) / (2.0 * n))
            )
            want = (
                c
                / math.sqrt(n)
                * (2 * math.pi / x) ** ((n - 1) / 2.0)
                * cmath.exp(1j * n * xi * x)
            )
            got = j_function(x, sv, si, 1e-10).value
            worst = max(worst, abs(got - want) / abs(want))
    checks.append((f"prototype-closed-form-n{n}", worst < 1e-8, worst, t0))
    return checks


def _suite_crossmethod(args):
    checks = []
    si = SpectralIndex([0.3, -0.1, -0.2])
    for x in (2.0, 10.0, 25.0):
        t0 = time.time()
        worst = 0.0
        for s in ("+++", "++-"):
            sv = SignVector.from_string(s)
            rs = j_function(x, sv, si, 1e-9)
            vm, em = mb_eval_est(x, sv, si, 1e-10)
            scale = max(abs(rs.value), abs(vm))
            budget = max(1e-7 * scale, 2.0 * (rs.tail_bound + em))
            worst = max(worst, abs(rs.value - vm) / budget)
        checks.append((f"crossmethod-x{x}", worst < 1.0, worst, t0))
    return checks


def _suite_ode(args):
    checks = []
    rng = np.random.default_rng(args.seed)
    for n in range(2, (args.n or 4) + 1):
        t0 = time.time()
        lam = 0.3 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
        si = SpectralIndex(lam)
        sv = SignVector([1] * (n - 1) + [-1])
        worst = max(ode_residual(x, sv, si, 1e-10) for x in (1.5, 6.0))
        checks.append((f"ode-residual-n{n}", worst < 1e-8, worst, t0))
    return checks


def _suite_bridge(args):
    from .asympt import h_bessel

    checks = []
    rng = np.random.default_rng(args.seed)
    for n in range(2, (args.n or 4) + 1):
        t0 = time.time()
        lam = 0.3 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
        si = SpectralIndex(lam)
        x = 8.0 * si.magnitude_bound**2
        worst = 0.0
        for sgn, s in ((1, "+"), (-1, "-")):
            a = j_varsigma_asymptotic(x, SignVector([sgn] * n), si)
            b = h_bessel(x, si, s)
            worst = max(worst, abs(a.value - b.value) / abs(b.value))
        checks.append((f"bridge-n{n}", worst < 1e-13, worst, t0))
    return checks


def _suite_rotation(args):
    checks = []
    rng = np.random.default_rng(args.seed)
    for n in range(2, (args.n or 4) + 1):
        t0 = time.time()
        lam = 0.3 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
        si = SpectralIndex(lam)
        x = 10.0 * si.magnitude_bound**2
        worst = 0.0
        theta = INVERSE_THETA
        for idx in range(2 * n):
            xi = RootOfUnity(2 * n, idx)
            from .asympt import in_validity_sector, second_kind
            from .core import SurfacePoint

            z = SurfacePoint.from_positive(x)
            if not in_validity_sector(z, xi, n, theta):
                continue  # positive reals sit outside this root's sector
            try:
                r = rotate_second_kind(x, si, xi, theta)
            except OutOfSectorError:
                continue
            d = second_kind(z, si, xi, theta)
            worst = max(worst, abs(r.value - d.value) / abs(d.value))
        checks.append((f"rotation-two-path-n{n}", worst < 1e-10, worst, t0))
    return checks


def _suite_kdecay(args):
    t0 = time.time()
    si = SpectralIndex([0.2, -0.05, -0.15])
    sv = SignVector.from_string("++-")
    xs = np.linspace(30, 60, 11)
    ys = [
        math.log(abs(j_varsigma_asymptotic(float(x), sv, si).value))
        + math.log(x)
        for x in xs
    ]
    slope = float(np.polyfit(xs, ys, 1)[0])
    want = -3 * math.sin(math.pi / 3)
    rel = abs(slope - want) / abs(want)
    return [("kdecay-slope", rel < 0.02, rel, t0)]


def _suite_mellin_id(args):
    checks = []
    rng = np.random.default_rng(args.seed)
    t0 = time.time()
    worst = 0.0
    for _ in range(40):
        s = complex(rng.uniform(-2, 3), rng.uniform(-8, 8))
        for d in (0, 1):
            a = g_delta(s, d, "ratio")
            b = g_delta(s, d, "trig")
            worst = max(worst, abs(a - b) / max(abs(a), 1e-280))
    checks.append(("gamma-factor-two-forms", worst < 1e-12, worst, t0))
    t0 = time.time()
    w = WeightFunction(eta=0)
    worst = max(
        abs(mellin_inversion(w, x) - w(x)) for x in (0.5, -0.8, 2.0)
    )
    checks.append(("mellin-inversion-roundtrip", worst < 1e-7, worst, t0))
    return checks


SUITES = {
    "coeffs": _suite_coeffs,
    "identity54": _suite_identity54,
    "rank2": _suite_rank2,
    "special": _suite_special,
    "crossmethod": _suite_crossmethod,
    "ode": _suite_ode,
    "bridge": _suite_bridge,
    "rotation": _suite_rotation,
    "kdecay": _suite_kdecay,
    "mellin-id": _suite_mellin_id,
}


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(f"unknown suite {args.suite}; choose from {sorted(SUITES)}", file=sys.stderr)
        return USAGE_EXIT
    cfg = {
        "command": f"verify {args.suite}",
        "n": args.n,
        "mmax": args.mmax,
        "seed": args.seed,
    }
    checks = SUITES[args.suite](args)
    report = {
        "meta": config_header(cfg),
        "suite": args.suite,
        "checks": [
            {
                "name": name,
                "status": "pass" if ok else "fail",
                "max_deviation": dev,
                "runtime_s": round(time.time() - t0, 3),
            }
            for name, ok, dev, t0 in checks
        ],
        "passed": all(ok for _, ok, _, _ in checks),
    }
    text = json.dumps(report, indent=1, default=str) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="besselhr",
        description="fundamental Bessel functions of arbitrary rank",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, need_lambda=True):
        sp.add_argument("--n", type=int, default=None)
        if need_lambda:
            sp.add_argument("--lambda", dest="lam", required=True,
                            help="comma-separated complex components, e.g. 0.3,-0.1,-0.2")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", default=None)

    pe = sub.add_parser("eval", help="evaluate J(x; signs, lambda)")
    common(pe)
    pe.add_argument("--method", choices=("series", "asympt", "mb"), default="series")
    pe.add_argument("--signs", required=True)
    pe.add_argument("--x", type=float, default=None)
    pe.add_argument("--x-grid", dest="x_grid", default=None)
    pe.add_argument("--arg", type=float, default=0.0,
                    help="designated argument of the point on the cover")
    pe.add_argument("--tol", type=float, default=1e-10)
    pe.set_defaults(func=cmd_eval)

    pc = sub.add_parser("coeffs", help="emit coefficient tables")
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--lambda", dest="lam", default=None)
    pc.add_argument("--xi", type=int, default=0,
                    help="integer k: xi = exp(i pi k / n)")
    pc.add_argument("--terms", type=int, default=10)
    pc.add_argument("--format", choices=("csv", "json"), default="csv")
    pc.add_argument("--out", default=None)
    pc.set_defaults(func=cmd_coeffs)

    pk = sub.add_parser("kernel", help="signed kernel on a grid")
    common(pk)
    pk.add_argument("--delta", required=True)
    pk.add_argument("--x-grid", dest="x_grid", required=True)
    pk.add_argument("--method", choices=("auto", "series", "mb", "asympt"),
                    default="auto")
    pk.add_argument("--tol", type=float, default=1e-9)
    pk.set_defaults(func=cmd_kernel)

    pt = sub.add_parser("transform", help="Hankel transform on a grid")
    common(pt)
    pt.add_argument("--delta", required=True)
    pt.add_argument("--weight", default="gaussian-log:eta=0")
    pt.add_argument("--x-grid", dest="x_grid", required=True)
    pt.add_argument("--tol", type=float, default=1e-7)
    pt.add_argument("--fe-report", dest="fe_report", default=None,
                    help="write the functional-equation JSON report here")
    pt.add_argument("--s-points", dest="s_points", default="0.5,0.5+1i,0.5+2i")
    pt.add_argument("--fe-tol", dest="fe_tol", type=float, default=1e-6)
    pt.set_defaults(func=cmd_transform)

    po = sub.add_parser("oracle", help="cross-method comparison tables")
    po.add_argument("oracle_cmd", choices=("compare",))
    common(po)
    po.add_argument("--methods", default="series,mb")
    po.add_argument("--signs", required=True)
    po.add_argument("--x-grid", dest="x_grid", required=True)
    po.add_argument("--tol", type=float, default=1e-9)
    po.set_defaults(func=cmd_oracle)

    pv = sub.add_parser("verify", help="run a named verification suite")
    pv.add_argument("suite", help="|".join(sorted(SUITES)))
    pv.add_argument("--n", type=int, default=None)
    pv.add_argument("--mmax", type=int, default=None)
    pv.add_argument("--seed", type=int, default=20240801)
    pv.add_argument("--out", default=None)
    pv.set_defaults(func=cmd_verify)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, PoleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except ToleranceNotMetError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return NUMERIC_EXIT


if __name__ == "__main__":
    sys.exit(main())

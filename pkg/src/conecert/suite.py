"""Reproduction suites.

Each ``criterion_N`` function recomputes one family of reference numbers
and returns a dict with a list of ``checks`` and an overall ``pass``.
Tolerances are the ones stated next to each number; nothing is loosened
to make a row pass, so some rows are expected to report failures.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import critical7, lawlor
from .catalog import FactorSpec, closed_form_alpha_sq, factor_props
from .certify import certify
from .matrixlab import oracles
from .matrixlab.embedding import random_normals, shape_operator, sup_alpha_sq
from .product import compose

GROUPS = ("table", "critical7", "oracle", "all")


def _check(name: str, ok: bool, **detail) -> dict:
    return {"name": name, "pass": bool(ok), **detail}


def _result(number: int, title: str, checks: list) -> dict:
    return {"criterion": number, "title": title, "checks": checks,
            "pass": all(c["pass"] for c in checks)}


def _deg(x: float) -> float:
    return round(math.degrees(x), 4)


# enumerations ------------------------------------------------------------------

def _multisets(atoms, lo: int, hi: int, min_factors: int = 1):
    """All multisets of (dim, spec) atoms whose dimensions add up to a value in [lo, hi]."""
    atoms = sorted(atoms, key=lambda a: (a[0], a[1].sort_key()))
    out = []

    def walk(i, chosen, total):
        if i == len(atoms):
            if lo <= total <= hi and len(chosen) >= min_factors:
                out.append(list(chosen))
            return
        dim, spec = atoms[i]
        j = 0
        while total + j * dim <= hi:
            walk(i + 1, chosen + [spec] * j, total + j * dim)
            j += 1

    walk(0, [], 0)
    return out


def same_field_products(lo: int = 7, hi: int = 16) -> list[list[FactorSpec]]:
    """Products of Grassmannians over one field with lo <= dim M <= hi."""
    out = []
    for field in ("R", "C", "H"):
        atoms = []
        for k in range(2, hi + 2):
            for l in range(1, k // 2 + 1):
                spec = FactorSpec.grassmann(l, k, field)
                dim = factor_props(spec).dim
                if dim <= hi:
                    atoms.append((dim, spec))
        out += _multisets(atoms, lo, hi)
    return out


MIXED_SPOT_CHECKS = (
    "G(1,3;R) x G(1,3;C) x G(1,3;H)",
    "G(2,4;R) x G(1,3;C)",
    "G(1,4;R) x G(1,2;H)",
    "G(1,3;C) x G(1,3;H)",
    "G(2,5;R) x G(1,2;C)",
    "G(1,3;R) x G(2,4;C)",
    "G(1,2;R) x G(1,3;H)",
    "G(1,3;R) x G(1,3;R) x G(1,3;C) x G(1,2;H)",
)


def plucker_products(lo: int = 8, hi: int = 16) -> list[list[FactorSpec]]:
    """Products of Pluecker-embedded oriented Grassmannians (l >= 2) with lo <= dim M <= hi."""
    atoms = []
    for k in range(4, hi + 3):
        for l in range(2, k // 2 + 1):
            if l * (k - l) <= hi:
                atoms.append((l * (k - l), FactorSpec.oriented(l, k)))
    return _multisets(atoms, lo, hi)


# criteria ------------------------------------------------------------------------

def criterion_1() -> dict:
    checks = []
    r = lawlor.theta1(9, math.sqrt(8))
    checks.append(_check("theta1(9, sqrt 8) = 12.99 +- 0.05 deg", r.vanishes and abs(r.degrees - 12.99) <= 0.05,
                         valueDeg=round(r.degrees, 4)))
    r = lawlor.theta2(12, math.sqrt(11))
    checks.append(_check("theta2(12, sqrt 11) = 15.84 +- 0.2 deg", r.vanishes and abs(r.degrees - 15.84) <= 0.2,
                         valueDeg=round(r.degrees, 4)))
    for name, target, tol in (("E", 19.9, 0.1), ("G", 19.0, 0.3)):
        r = lawlor.integrate_vn(7, lawlor.JacobianBound.case_exact(
            name, critical7.CLOSED_FORMS[name], critical7.ROOTS[name]))
        checks.append(_check(f"{name}-case angle at k=7 = {target} +- {tol} deg",
                             r.vanishes and abs(r.degrees - target) <= tol, valueDeg=round(r.degrees, 4)))
    r = lawlor.integrate_vn(7, lawlor.JacobianBound.case_exact("F", critical7.poly_F, critical7.ROOTS["F"]))
    checks.append(_check("F-case at k=7 has no vanishing angle", not r.vanishes,
                         status=r.status.value, maxThetaDeg=round(r.degrees, 4)))
    return _result(1, "vanishing-angle reproduction", checks)


def table_rows(kmin: int = 8, kmax: int = 12) -> list[dict]:
    """theta1 and theta2 at alpha^2 = k - 1 for each cone dimension k."""
    rows = []
    for k in range(kmin, kmax + 1):
        alpha = math.sqrt(k - 1)
        row = {"dimC": k, "alphaSq": k - 1}
        for label, fn in (("theta1", lawlor.theta1), ("theta2", lawlor.theta2)):
            if label == "theta1" and k - 1 < 2:
                row[label + "Deg"] = None
                continue
            res = fn(k, alpha)
            row[label + "Deg"] = round(res.degrees, 4) if res.vanishes else None
        rows.append(row)
    return rows


def criterion_2() -> dict:
    checks = []
    cases = (
        ("RP2^3", [FactorSpec.grassmann(1, 3)] * 3, Fraction(1, 2)),
        ("RP3^2", [FactorSpec.grassmann(1, 4)] * 2, Fraction(1, 3)),
        ("HP1^2", [FactorSpec.grassmann(1, 2, "H")] * 2, Fraction(0)),
        ("Gor(2,4)^2", [FactorSpec.oriented(2, 4)] * 2, Fraction(1, 2)),
    )
    for name, specs, want in cases:
        prof = compose(specs)
        got = prof.normal_cosine
        worst = max(abs(oracles.normal_radius_witness(specs, i) - float(c))
                    for i, c in enumerate(prof.candidate_cosines))
        checks.append(_check(f"{name} normal cosine {want}", got == want and worst <= 1e-12,
                             cosine=str(got), witnessDeviation=worst))
    return _result(2, "normal radii", checks)


def criterion_3(points: int = 32, samples: int = 100_000) -> dict:
    checks = []
    for case in critical7.case_catalog():
        v = critical7.validate_claim(case, n=points)
        lo, hi = case.claimedInterval
        full = critical7.full_normal_check(case, critical7.chebyshev_points(lo, hi, points),
                                           samples=samples, polish=1)
        checks.append(_check(f"{case.name}: reduced minimum equals {case.claimedMin}(t)",
                             v["maxAbsGap"] <= 1e-6, maxAbsGap=v["maxAbsGap"]))
        checks.append(_check(f"{case.name}: argmin eigenvalues two-valued", v["twoValued"]))
        checks.append(_check(f"{case.name}: full normal sampling never undercuts",
                             full["maxUndercut"] <= 1e-6, maxUndercut=full["maxUndercut"]))
    return _result(3, "critical-case validation", checks)


def criterion_4() -> dict:
    thr = critical7.case1_threshold()
    below = critical7.case1_sign_pattern(critical7.T_THRESHOLD - 2e-3)
    above = critical7.case1_sign_pattern(critical7.T_THRESHOLD + 2e-3)
    f3 = critical7.case3_forensics()
    checks = [
        _check("case (1) sign pattern flips at 2 sqrt2/7 +- 1e-3",
               abs(thr - critical7.T_THRESHOLD) <= 1e-3 and below != above,
               threshold=thr, patternBelow=below, patternAbove=above),
        _check("case (3) root of h'' = -0.555087 +- 1e-5", abs(f3["hsecondRoot"] + 0.555087) <= 1e-5,
               root=f3["hsecondRoot"]),
        _check("case (3) min h' at t = 2 sqrt2/7 equals 2.28114 +- 1e-3",
               abs(f3["minHprime"] - 2.28114) <= 1e-3, minHprime=f3["minHprime"]),
    ]
    return _result(4, "threshold forensics", checks)


def criterion_5(trials: int = 100_000) -> dict:
    checks = []
    for m in (4, 5, 6):
        for alpha in sorted({math.sqrt(6), math.sqrt(m)}):
            p = alpha * math.sqrt((m - 1) / m)
            for t in (0.1, 0.2, 0.4):
                if t * p >= 1:
                    continue
                floor = oracles.sym_det_floor(m, alpha, t, trials=trials, seed=m)
                L = lawlor.two_eigen_L(alpha, t, m, 1)
                A = oracles.two_valued_matrix(m, alpha, 1)
                eq = float(np.linalg.det(np.eye(m) - t * A))
                checks.append(_check(f"m={m} alpha^2={alpha * alpha:.0f} t={t}",
                                     floor >= L - 1e-9 and abs(eq - L) <= 1e-9,
                                     empiricalMin=floor, L=L, twoValued=eq))
    return _result(5, "eigenvalue-lemma floor", checks)


def _exact_radius_sq(emb) -> Fraction | None:
    # |P - (l/k) I|^2 under g = 1/2 Re tr, in rationals; P must be an exact 0/1 diagonal
    base = emb.base
    k, l = emb.spec.k, emb.spec.l
    off = base.copy()
    off[np.arange(k), np.arange(k), 0] = 0.0
    diag = base[np.arange(k), np.arange(k), 0]
    if np.any(off != 0.0) or not np.all(np.isin(diag, (0.0, 1.0))):
        return None
    shift = Fraction(l, k)
    return Fraction(1, 2) * sum((Fraction(int(p)) - shift) ** 2 for p in diag)


def criterion_6(samples: int = 1000) -> dict:
    checks = []
    rng = np.random.default_rng(0)
    for field in ("R", "C", "H"):
        for k in range(2, 6):
            for l in range(1, k // 2 + 1):
                spec = FactorSpec.grassmann(l, k, field)
                emb = oracles.cached_embedding(spec)
                sup = sup_alpha_sq(emb, samples=samples)["sup"]
                closed = float(closed_form_alpha_sq(spec))
                catalog = float(factor_props(spec).alpha_sq)
                traces = [abs(np.trace(shape_operator(emb, n))) for n in random_normals(emb, 20, rng)]
                r_sq = factor_props(spec).radius_sq
                checks.append(_check(f"{spec}: sup |H|^2 = d l (k-l)^2 / k", abs(sup - closed) <= 1e-6,
                                     sup=sup, closedForm=closed, catalog=catalog))
                checks.append(_check(f"{spec}: sup |H|^2 matches the catalog value", abs(sup - catalog) <= 1e-6,
                                     sup=sup, catalog=catalog))
                checks.append(_check(f"{spec}: trace zero", max(traces, default=0.0) <= 1e-10,
                                     maxTrace=max(traces, default=0.0)))
                exact = _exact_radius_sq(emb)
                checks.append(_check(f"{spec}: radius squared exact", exact == r_sq,
                                     radiusSq=str(r_sq), fromBasePoint=str(exact)))
    return _result(6, "embedding oracle", checks)


def criterion_7(kmin: int = 13, kmax: int = 60) -> dict:
    checks = []
    for k in range(kmin, kmax + 1):
        tb = lawlor.theta2_scaled_bound(k, math.sqrt(k - 1))
        scaled, radius = lawlor.cosine_chain(k, 2)
        checks.append(_check(f"k={k}", tb < 2.0 / k and scaled < radius, tanBound=tb,
                             limit=2.0 / k, scaledAngle=scaled, radius=radius))
    return _result(7, "scaling branch", checks)


def criterion_8_high() -> dict:
    checks = []
    families = (("same-field", same_field_products()),
                ("mixed-field", list(MIXED_SPOT_CHECKS)),
                ("pluecker", plucker_products()))
    for label, products in families:
        bad = []
        for p in products:
            cert = certify(p)
            if not cert.minimizing:
                bad.append(cert.product)
        checks.append(_check(f"{label} products certify MINIMIZING", not bad,
                             count=len(products), failures=bad[:20]))
    cert = certify("S(1) x G(1,3;R)")
    checks.append(_check("S(1) x G(1,3;R) is INCONCLUSIVE", cert.verdict == "INCONCLUSIVE",
                         branch=cert.branch))
    return _result(8, "end-to-end (dim C > 7)", checks)


def criterion_8_dim7() -> dict:
    checks = []
    for case in critical7.case_catalog():
        try:
            frag = critical7.certify_dim7(case)
            ok, detail = frag["verdict"] == "MINIMIZING", frag["vanishing"]
        except critical7.ValidationError as exc:
            ok, detail = False, {"error": str(exc)}
        checks.append(_check(f"{case.name} certifies MINIMIZING", ok, vanishing=detail))
    return _result(8, "end-to-end (dim C = 7)", checks)


def criterion_9(trials: int = 100) -> dict:
    checks = []
    for n in (2, 3):
        dev = oracles.plucker_orbit_check(n, trials=trials, seed=n)
        checks.append(_check(f"n={n}", dev < 1e-12, deviation=dev))
    return _result(9, "Pluecker orbit coincidence", checks)


def criterion_10_ode() -> dict:
    checks = []
    runs = [(f"theta1({k})", k, lawlor.JacobianBound.generic(math.sqrt(k - 1), k)) for k in range(8, 12)]
    runs.append(("theta2(12)", 12, lawlor.JacobianBound.limit(math.sqrt(11))))
    runs += [(f"{c}-case", 7, lawlor.JacobianBound.case_exact(c, critical7.CLOSED_FORMS[c], critical7.ROOTS[c]))
             for c in ("E", "G")]
    for name, k, J in runs:
        base = lawlor.integrate_vn(k, J)
        fine = lawlor.integrate_vn(k, J, max_step=lawlor.MAX_STEP / 2, atol=lawlor.ATOL / 2,
                                   rtol=lawlor.RTOL / 2)
        diff = abs(base.angle - fine.angle)
        checks.append(_check(f"{name} under halved tolerances", base.status == fine.status and diff < 1e-4,
                             change=diff))
    return _result(10, "ODE robustness", checks)


def criterion_10_seeds(points: int = 4) -> dict:
    checks = []
    for case in critical7.case_catalog():
        lo, hi = case.claimedInterval
        worst = 0.0
        for t in critical7.chebyshev_points(lo, hi, points):
            a = critical7.minimize_jacobian(case, float(t)).numericMin
            b = critical7.minimize_jacobian(case, float(t), seeds=64).numericMin
            worst = max(worst, abs(a - b))
        checks.append(_check(f"{case.name}: 64 seeds vs 32", worst < 1e-9, change=worst))
    return _result(10, "multistart robustness", checks)


SUITES = {
    "table": (criterion_1, criterion_7, criterion_8_high, criterion_10_ode),
    "critical7": (criterion_3, criterion_4, criterion_8_dim7, criterion_10_seeds),
    "oracle": (criterion_2, criterion_5, criterion_6, criterion_9),
}


def run_suite(which: str = "all") -> tuple[int, dict]:
    """Run one suite (or all of them); the status is 0 when every check passes."""
    if which not in GROUPS:
        raise ValueError(f"unknown suite {which!r}; choose from {', '.join(GROUPS)}")
    names = [g for g in SUITES if which in (g, "all")]
    report = {"suite": which, "groups": {}}
    for g in names:
        results = [fn() for fn in SUITES[g]]
        report["groups"][g] = {"results": results, "pass": all(r["pass"] for r in results)}
        if g == "table":
            report["groups"][g]["rows"] = table_rows()
    report["pass"] = all(v["pass"] for v in report["groups"].values())
    return (0 if report["pass"] else 1), report

"""End-to-end certification of a product cone."""

from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from . import __version__, critical7, lawlor
from .catalog import FactorSpec, Kind, SpecError, format_product, parse_factor, parse_product, reduce
from .product import ProductProfile, compose

TOLERANCES = {
    "u_tol": lawlor.U_TOL,
    "theta_start": lawlor.THETA_START,
    "max_step": lawlor.MAX_STEP,
    "atol": lawlor.ATOL,
    "rtol": lawlor.RTOL,
    "criterion_margin": lawlor.MARGIN,
    "witness": 1e-12,
    "claim_gap": 1e-6,
    "step_refinement": 1e-4,
}


class Branch(str, Enum):
    TABLE = "TABLE_7_TO_12"
    SCALED = "SCALED_K_GE_13"
    CRITICAL = "CRITICAL_DIM7"
    UNSUPPORTED = "UNSUPPORTED"


@dataclass
class Certificate:
    product: str
    factors: list
    dimM: int
    dimC: int
    alphaSq: float
    lambdas: list
    normalRadiusRad: float
    normalRadiusDeg: float
    candidates: list
    branch: str
    verdict: str
    vanishing: dict | None = None
    tanBound: float | None = None
    validations: list = field(default_factory=list)
    claim: str | None = None
    notes: list = field(default_factory=list)
    version: str = __version__
    seed: int = 0
    tolerances: dict = field(default_factory=lambda: dict(TOLERANCES))

    @property
    def minimizing(self) -> bool:
        return self.verdict == lawlor.Verdict.MINIMIZING.value

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def load_specs(text: str) -> list[FactorSpec]:
    """Factor list from grammar text or from a JSON file with a ``factors`` array."""
    if os.path.isfile(text):
        with open(text) as fh:
            data = json.load(fh)
        items = data.get("factors") if isinstance(data, dict) else None
        if not isinstance(items, list) or not items:
            raise SpecError(f"{text}: expected an object with a non-empty 'factors' array")
        return [_factor_from_json(item) for item in items]
    return parse_product(text)


def _factor_from_json(item) -> FactorSpec:
    if isinstance(item, str):
        return parse_factor(item)
    if not isinstance(item, dict) or "kind" not in item:
        raise SpecError(f"cannot read factor {item!r}")
    kind = str(item["kind"])
    if kind in ("Grassmann", "G"):
        return FactorSpec.grassmann(int(item["l"]), int(item["k"]), str(item.get("field", "R")))
    if kind in ("OrientedGrassmann", "Gor"):
        return FactorSpec.oriented(int(item["l"]), int(item["k"]))
    if kind in ("Sphere", "S"):
        return FactorSpec.sphere(int(item["n"]))
    raise SpecError(f"unknown factor kind {kind!r}")


def _deg(x: float) -> float:
    return round(math.degrees(x), 4)


def _witness_validation(specs) -> dict:
    from .matrixlab.oracles import normal_radius_witness

    profile = compose(specs)
    worst = 0.0
    for i, cos in enumerate(profile.candidate_cosines):
        worst = max(worst, abs(normal_radius_witness(specs, i) - float(cos)))
    return {"name": "normal_radius_witness", "maxDeviation": worst,
            "pass": worst <= TOLERANCES["witness"]}


def _table_bound(k: int, alpha_sq: Fraction) -> lawlor.JacobianBound:
    alpha = math.sqrt(float(alpha_sq))
    if k <= 11:
        return lawlor.JacobianBound.generic(alpha, k)
    return lawlor.JacobianBound.limit(alpha)


def _refined(k: int, bound: lawlor.JacobianBound) -> lawlor.VanishingAngleResult:
    return lawlor.integrate_vn(k, bound, max_step=lawlor.MAX_STEP / 2, rtol=lawlor.RTOL / 2,
                               atol=lawlor.ATOL / 2)


@lru_cache(maxsize=None)
def _table_angle(k: int, alpha_sq: Fraction, fine: bool) -> lawlor.VanishingAngleResult:
    # many products share (k, alpha^2); the integration is reused across them
    bound = _table_bound(k, alpha_sq)
    return _refined(k, bound) if fine else lawlor.integrate_vn(k, bound)


def _refinement_validation(base: lawlor.VanishingAngleResult, fine: lawlor.VanishingAngleResult) -> dict:
    if base.vanishes != fine.vanishes:
        return {"name": "step_refinement", "pass": False, "detail": "status changed under refinement"}
    diff = abs(fine.angle - base.angle)
    return {"name": "step_refinement", "change": diff, "pass": diff < TOLERANCES["step_refinement"]}


def _stability_note(specs) -> list[str]:
    has_circle = any(s.kind is Kind.SPHERE and s.n == 1 for s in specs)
    non_sphere = any(s.kind is not Kind.SPHERE for s in specs)
    if has_circle and non_sphere:
        return ["a circle factor drives the Jacobian minimum down to F(t), which has no vanishing "
                "angle; such cones are only known to be stable, so the criterion cannot decide"]
    return []


def _claim_text(specs, verdict: str) -> str | None:
    if verdict != lawlor.Verdict.MINIMIZING.value:
        return None
    return f"the cone over {' x '.join(s.label for s in specs)} is area-minimizing"


def certify(text_or_specs, seed: int = 0) -> Certificate:
    specs = load_specs(text_or_specs) if isinstance(text_or_specs, str) else list(text_or_specs)
    notes = []
    reduced = []
    for s in specs:
        r = reduce(s)
        if r != s:
            notes.append(f"{s} is isometric to a round sphere and was replaced by {r}")
        reduced.append(r)
    profile = compose(reduced)
    validations = [
        {"name": "weights_sum_to_one", "pass": sum(profile.lambdas_sq) == 1},
        _witness_validation(reduced),
    ]
    base = dict(
        product=format_product(specs),
        factors=[str(s) for s in reduced],
        dimM=profile.dimM,
        dimC=profile.dimC,
        alphaSq=float(profile.alphaSq),
        lambdas=profile.lambdas,
        normalRadiusRad=profile.normalRadius,
        normalRadiusDeg=_deg(profile.normalRadius),
        candidates=[{"factor": str(s), "cosine": str(c), "angleDeg": _deg(math.acos(float(c)))}
                    for s, c in zip(reduced, profile.candidate_cosines)],
        seed=seed,
    )
    k = profile.dimC
    if k <= 7:
        notes += _stability_note(reduced)

    if k < 7:
        notes.append("cones of dimension below 7 are outside the reach of the criterion here")
        return Certificate(branch=Branch.UNSUPPORTED.value, verdict=lawlor.Verdict.INCONCLUSIVE.value,
                           validations=validations, notes=notes, **base)

    if k == 7:
        case = critical7.match_case(reduced)
        if case is None:
            notes.append("seven-dimensional product outside the catalogued critical cases")
            return Certificate(branch=Branch.CRITICAL.value, verdict=lawlor.Verdict.INCONCLUSIVE.value,
                               validations=validations, notes=notes, **base)
        frag = critical7.certify_dim7(case)
        lo, hi = case.claimedInterval
        ts = critical7.chebyshev_points(lo, hi, 4)
        sampler = critical7.full_normal_check(case, ts, samples=100_000, seed=seed, polish=4)
        validations.append({"name": "reduced_minimum_matches_closed_form", **frag["validation"]})
        validations.append({"name": "full_normal_sampler", "maxUndercut": sampler["maxUndercut"],
                            "pass": sampler["pass"]})
        bound = critical7.case_bound(case)
        vn = lawlor.integrate_vn(7, bound)
        validations.append(_refinement_validation(vn, _refined(7, bound)))
        verdict = lawlor.criterion(vn, profile.normalRadius).value
        if not all(v["pass"] for v in validations):
            verdict = lawlor.Verdict.INCONCLUSIVE.value
        notes += frag["notes"]
        return Certificate(branch=Branch.CRITICAL.value, verdict=verdict, vanishing=vn.to_dict(),
                           validations=validations, claim=_claim_text(reduced, verdict),
                           notes=notes + [f"Jacobian minimum {case.claimedMin}(t) on "
                                          f"t in ({lo:.6g}, {hi:.6g})"], **base)

    alpha = math.sqrt(float(profile.alphaSq))
    if k <= 12:
        bound = _table_bound(k, profile.alphaSq)
        vn = _table_angle(k, profile.alphaSq, False)
        validations.append(_refinement_validation(vn, _table_angle(k, profile.alphaSq, True)))
        verdict = lawlor.criterion(vn, profile.normalRadius).value
        if not all(v["pass"] for v in validations):
            verdict = lawlor.Verdict.INCONCLUSIVE.value
        return Certificate(branch=Branch.TABLE.value, verdict=verdict, vanishing=vn.to_dict(),
                           validations=validations, claim=_claim_text(reduced, verdict),
                           notes=notes + [f"bound {bound.name}"], **base)

    tan_bound = lawlor.theta2_scaled_bound(k, alpha)
    scaled, radius_chain = lawlor.cosine_chain(k, float(1 - profile.normal_cosine) * (k - 1))
    validations.append({"name": "tan_bound_below_2_over_k", "tanBound": tan_bound, "limit": 2.0 / k,
                        "pass": tan_bound < 2.0 / k})
    validations.append({"name": "cosine_chain", "scaledAngleRad": scaled, "radiusRad": radius_chain,
                        "pass": scaled < radius_chain})
    verdict = lawlor.criterion(tan_bound, profile.normalRadius).value
    if not all(v["pass"] for v in validations):
        verdict = lawlor.Verdict.INCONCLUSIVE.value
    return Certificate(branch=Branch.SCALED.value, verdict=verdict, tanBound=tan_bound,
                       vanishing={"angleBoundRad": math.atan(tan_bound),
                                  "angleBoundDeg": _deg(math.atan(tan_bound))},
                       validations=validations, claim=_claim_text(reduced, verdict),
                       notes=notes, **base)

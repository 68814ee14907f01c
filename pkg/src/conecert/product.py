"""Minimal products of catalog factors: weights, curvature bound and normal radius."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .catalog import FactorProps, FactorSpec, Kind, factor_props


@dataclass(frozen=True)
class ProductProfile:
    factors: tuple[tuple[FactorSpec, FactorProps], ...]
    dimM: int
    dimC: int
    lambdas_sq: tuple[Fraction, ...]
    alphaSq: Fraction
    candidate_cosines: tuple[Fraction, ...]

    @property
    def specs(self) -> list[FactorSpec]:
        return [s for s, _ in self.factors]

    @property
    def lambdas(self) -> list[float]:
        return [math.sqrt(x) for x in self.lambdas_sq]

    @property
    def normal_cosine(self) -> Fraction:
        # the smallest candidate angle has the largest cosine
        return max(self.candidate_cosines)

    @property
    def normalRadius(self) -> float:
        return math.acos(float(self.normal_cosine))

    @property
    def minimizerAngleCandidates(self) -> list[float]:
        return [math.acos(float(c)) for c in self.candidate_cosines]


def candidate_cosine(spec: FactorSpec, props: FactorProps, dimM: int) -> Fraction:
    """Cosine of the angle from the base point to the nearest singular point in one factor."""
    lam_sq = Fraction(props.dim, dimM)
    if spec.kind is Kind.GRASSMANN:
        return 1 - Fraction(props.d * spec.k, dimM)
    if spec.kind is Kind.ORIENTED:
        return 1 - lam_sq
    return 1 - 2 * lam_sq


def compose(specs) -> ProductProfile:
    specs = list(specs)
    if not specs:
        raise ValueError("a product needs at least one factor")
    props = [factor_props(s) for s in specs]
    dimM = sum(p.dim for p in props)
    lambdas_sq = tuple(Fraction(p.dim, dimM) for p in props)
    alpha_sq = dimM * max([Fraction(1)] + [p.ratio for p in props])
    cosines = tuple(candidate_cosine(s, p, dimM) for s, p in zip(specs, props))
    return ProductProfile(
        factors=tuple(zip(specs, props)),
        dimM=dimM,
        dimC=dimM + 1,
        lambdas_sq=lambdas_sq,
        alphaSq=alpha_sq,
        candidate_cosines=cosines,
    )


def normal_radius(profile: ProductProfile) -> float:
    return profile.normalRadius


def ambient_scale(profile: ProductProfile, index: int) -> float:
    """a_i = lambda_i / r_i, the factor's dilation inside the product."""
    _, props = profile.factors[index]
    return math.sqrt(profile.lambdas_sq[index] / props.radius_sq)

"""Factor specifications and their intrinsic constants.

A factor is one of

* ``G(l,k;F)``  Grassmannian of l-planes in F^k, F in {R, C, H}, embedded by
  Hermitian orthogonal projectors,
* ``Gor(l,k)``  oriented real Grassmannian under the Pluecker embedding,
* ``S(n)``      a round sphere.

All constants that are rational in the integer inputs are kept as
:class:`fractions.Fraction`; floats only appear through the ``radius``
convenience property.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction


class Kind(str, Enum):
    GRASSMANN = "Grassmann"
    ORIENTED = "OrientedGrassmann"
    SPHERE = "Sphere"


FIELD_DIM = {"R": 1, "C": 2, "H": 4}
_FIELD_NAME = {"R": "R", "C": "C", "H": "H"}


class SpecError(ValueError):
    """Raised for malformed or non-normalized factor specifications."""


@dataclass(frozen=True)
class FactorSpec:
    kind: Kind
    field: str | None = None
    l: int | None = None
    k: int | None = None
    n: int | None = None

    @classmethod
    def grassmann(cls, l: int, k: int, field: str = "R") -> "FactorSpec":
        spec = cls(Kind.GRASSMANN, field=field.upper(), l=l, k=k)
        spec.validate()
        return spec

    @classmethod
    def oriented(cls, l: int, k: int) -> "FactorSpec":
        spec = cls(Kind.ORIENTED, field="R", l=l, k=k)
        spec.validate()
        return spec

    @classmethod
    def sphere(cls, n: int) -> "FactorSpec":
        spec = cls(Kind.SPHERE, n=n)
        spec.validate()
        return spec

    def validate(self) -> None:
        if self.kind is Kind.SPHERE:
            if self.n is None or self.n < 1:
                raise SpecError(f"sphere dimension must be a positive integer, got {self.n}")
            return
        if self.l is None or self.k is None or self.l < 1 or self.k < 1:
            raise SpecError("Grassmannian needs positive integers l and k")
        if self.k - self.l <= 0:
            raise SpecError(f"k - l must be positive (l={self.l}, k={self.k})")
        if self.l > self.k - self.l:
            raise SpecError(
                f"{self}: l > k - l; normalize to l = {self.k - self.l} first"
            )
        if self.kind is Kind.GRASSMANN and self.field not in FIELD_DIM:
            raise SpecError(f"unknown field {self.field!r}; use R, C or H")
        if self.kind is Kind.ORIENTED and self.field not in (None, "R"):
            raise SpecError("oriented Grassmannians are only defined over R")

    @property
    def d(self) -> int:
        if self.kind is Kind.GRASSMANN:
            return FIELD_DIM[self.field]
        return 1

    def __str__(self) -> str:
        if self.kind is Kind.SPHERE:
            return f"S({self.n})"
        if self.kind is Kind.ORIENTED:
            return f"Gor({self.l},{self.k})"
        return f"G({self.l},{self.k};{_FIELD_NAME[self.field]})"

    @property
    def label(self) -> str:
        """Conventional name, e.g. RP^2, CP^2, G(2,4;R), S^3."""
        if self.kind is Kind.SPHERE:
            return f"S^{self.n}"
        if self.kind is Kind.ORIENTED:
            return f"Gor({self.l},{self.k})"
        if self.l == 1:
            return f"{self.field}P^{self.k - 1}"
        return str(self)

    def sort_key(self) -> tuple:
        return (self.kind.value, self.field or "", self.l or 0, self.k or 0, self.n or 0)


@dataclass(frozen=True)
class FactorProps:
    dim: int
    d: int
    radius_sq: Fraction
    ambient: int
    alpha_sq: Fraction
    ratio: Fraction

    @property
    def radius(self) -> float:
        return math.sqrt(self.radius_sq)


def reduce(spec: FactorSpec) -> FactorSpec:
    """Replace factors isometric to round spheres by the sphere itself.

    G(1,2;F) is S^d and Gor(1,m) is S^(m-1); everything else is returned
    unchanged.
    """
    if spec.kind is Kind.GRASSMANN and spec.l == 1 and spec.k == 2:
        return FactorSpec.sphere(spec.d)
    if spec.kind is Kind.ORIENTED and spec.l == 1:
        return FactorSpec.sphere(spec.k - 1)
    return spec


def is_reduced_case(spec: FactorSpec) -> bool:
    return reduce(spec) != spec


def _grassmann_alpha_sq(d: int, l: int, k: int) -> Fraction:
    # sup over unit normals of |H|^2; the normal space at diag(I_l, 0) is
    # block-diagonal traceless, and the larger block can only carry the
    # weight when it has room for a nonzero trace-free diagonal (size >= 2)
    big = k - l if l >= 2 else (l if k - l >= 2 else 0)
    return Fraction(d * l * (k - l), k) * big


def factor_props(spec: FactorSpec) -> FactorProps:
    spec.validate()
    if spec.kind is Kind.SPHERE:
        return FactorProps(
            dim=spec.n, d=1, radius_sq=Fraction(1), ambient=spec.n + 1,
            alpha_sq=Fraction(0), ratio=Fraction(0),
        )
    l, k = spec.l, spec.k
    if spec.kind is Kind.ORIENTED:
        dim = l * (k - l)
        alpha_sq = Fraction(4) if (l >= 2) else Fraction(0)
        return FactorProps(
            dim=dim, d=1, radius_sq=Fraction(1), ambient=math.comb(k, l),
            alpha_sq=alpha_sq, ratio=alpha_sq / dim,
        )
    d = spec.d
    dim = d * l * (k - l)
    alpha_sq = _grassmann_alpha_sq(d, l, k)
    return FactorProps(
        dim=dim,
        d=d,
        radius_sq=Fraction(l * (k - l), 2 * k),
        ambient=k - 1 + d * k * (k - 1) // 2,
        alpha_sq=alpha_sq,
        ratio=alpha_sq / dim,
    )


def closed_form_alpha_sq(spec: FactorSpec) -> Fraction:
    """The textbook value d l (k - l)^2 / k for a projector-embedded Grassmannian.

    It coincides with :func:`factor_props` ``alpha_sq`` when l >= 2 and
    overstates it by a factor k - 1 for projective spaces (l = 1).
    """
    if spec.kind is not Kind.GRASSMANN:
        raise SpecError("closed form only defined for G(l,k;F)")
    return Fraction(spec.d * spec.l * (spec.k - spec.l) ** 2, spec.k)


_ATOM = re.compile(
    r"G\((?P<gl>\d+),(?P<gk>\d+);(?P<gf>[RCH])\)"
    r"|Gor\((?P<ol>\d+),(?P<ok>\d+)\)"
    r"|S\((?P<sn>\d+)\)"
)


def parse_factor(text: str) -> FactorSpec:
    compact = re.sub(r"\s+", "", text)
    m = _ATOM.fullmatch(compact)
    if m is None:
        raise SpecError(f"cannot parse factor {text!r}; expected G(l,k;R|C|H), Gor(l,k) or S(n)")
    if m.group("gl") is not None:
        return FactorSpec.grassmann(int(m.group("gl")), int(m.group("gk")), m.group("gf"))
    if m.group("ol") is not None:
        return FactorSpec.oriented(int(m.group("ol")), int(m.group("ok")))
    return FactorSpec.sphere(int(m.group("sn")))


def parse_product(text: str) -> list[FactorSpec]:
    """Parse ``"G(1,3;R) x S(2) x Gor(2,5)"`` into factor specs."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise SpecError("empty product specification")
    specs = []
    pos = 0
    while True:
        m = _ATOM.match(compact, pos)
        if m is None:
            raise SpecError(f"cannot parse product near {compact[pos:]!r}")
        specs.append(parse_factor(m.group(0)))
        pos = m.end()
        if pos == len(compact):
            return specs
        if compact[pos] not in "xX*":
            raise SpecError(f"expected 'x' between factors, got {compact[pos]!r}")
        pos += 1


def format_product(specs) -> str:
    return " x ".join(str(s) for s in specs)

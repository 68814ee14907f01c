from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conecert.catalog import FactorSpec, factor_props, parse_product, reduce
from conecert.matrixlab.oracles import normal_radius_witness
from conecert.product import ambient_scale, compose, normal_radius

small = st.one_of(
    st.builds(lambda k, f: FactorSpec.grassmann(1, k, f), st.integers(2, 4), st.sampled_from("RCH")),
    st.just(FactorSpec.grassmann(2, 4)),
    st.builds(FactorSpec.oriented, st.just(2), st.integers(4, 5)),
    st.builds(FactorSpec.sphere, st.integers(1, 5)),
)


@given(st.lists(small, min_size=1, max_size=4))
def test_weights_and_dimensions(specs):
    prof = compose(specs)
    assert sum(prof.lambdas_sq) == 1
    assert prof.dimC == prof.dimM + 1
    assert prof.alphaSq >= prof.dimM
    assert all(-1 <= c <= 1 for c in prof.candidate_cosines)


@given(st.lists(small, min_size=1, max_size=4))
def test_reduction_keeps_normal_radius(specs):
    assert compose(specs).candidate_cosines == compose([reduce(s) for s in specs]).candidate_cosines


@settings(max_examples=25, deadline=None)
@given(st.lists(small, min_size=1, max_size=3))
def test_witness_matches_candidate(specs):
    prof = compose(specs)
    for i, c in enumerate(prof.candidate_cosines):
        assert normal_radius_witness(specs, i) == pytest.approx(float(c), abs=1e-12)


@pytest.mark.parametrize("text, cosine", [
    ("G(1,3;R) x G(1,3;R) x G(1,3;R)", Fraction(1, 2)),
    ("G(1,4;R) x G(1,4;R)", Fraction(1, 3)),
    ("G(1,2;H) x G(1,2;H)", Fraction(0)),
    ("Gor(2,4) x Gor(2,4)", Fraction(1, 2)),
    ("S(2)", Fraction(-1)),
])
def test_normal_cosines(text, cosine):
    prof = compose(parse_product(text))
    assert prof.normal_cosine == cosine
    assert normal_radius(prof) == pytest.approx(math.acos(float(cosine)))


def test_mixed_fields_use_smallest_dk():
    prof = compose(parse_product("G(1,3;R) x G(1,3;C)"))
    # d k = 3 for RP^2 and 6 for CP^2; dim M = 6
    assert prof.candidate_cosines == (Fraction(1, 2), Fraction(0))
    assert prof.normal_cosine == Fraction(1, 2)


def test_alpha_sq_uses_largest_ratio():
    prof = compose(parse_product("Gor(2,4) x S(1)"))
    # Gor(2,4) has |H|^2 = 4 on a 4-manifold, ratio 1
    assert prof.alphaSq == 5
    assert compose([FactorSpec.grassmann(1, 3)]).alphaSq == 2


def test_ambient_scale():
    specs = parse_product("G(1,3;R) x S(2)")
    prof = compose(specs)
    r = factor_props(specs[0]).radius
    assert ambient_scale(prof, 0) == pytest.approx(math.sqrt(0.5) / r)
    assert ambient_scale(prof, 1) == pytest.approx(math.sqrt(0.5))


def test_empty_product_raises():
    with pytest.raises(ValueError):
        compose([])

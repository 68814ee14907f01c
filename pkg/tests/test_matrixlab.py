from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from conecert import critical7, lawlor
from conecert.catalog import FactorSpec, factor_props
from conecert.matrixlab import hypercomplex as hc
from conecert.matrixlab import oracles
from conecert.matrixlab.embedding import (
    normal_from_diagonal, random_normals, shape_operator, sup_alpha_sq, tangent_frame,
)

FACTORS = [FactorSpec.grassmann(l, k, f) for f in "RCH" for k in range(2, 6) for l in range(1, k // 2 + 1)]
FACTORS += [FactorSpec.oriented(2, 4), FactorSpec.oriented(2, 5), FactorSpec.oriented(3, 6), FactorSpec.sphere(3)]


def rand_matrix(rng, k, d):
    return rng.standard_normal((k, k, d))


@pytest.mark.parametrize("d", [1, 2, 4])
def test_algebra_is_associative_and_conjugation_reverses(d):
    rng = np.random.default_rng(d)
    a, b, c = (rand_matrix(rng, 3, d) for _ in range(3))
    assert np.allclose(hc.matmul(hc.matmul(a, b), c), hc.matmul(a, hc.matmul(b, c)), atol=1e-12)
    assert np.allclose(hc.adjoint(hc.matmul(a, b)), hc.matmul(hc.adjoint(b), hc.adjoint(a)), atol=1e-12)


@pytest.mark.parametrize("d", [1, 2, 4])
def test_real_representation(d):
    rng = np.random.default_rng(10 + d)
    a, b = rand_matrix(rng, 3, d), rand_matrix(rng, 3, d)
    assert np.allclose(hc.real_rep(hc.matmul(a, b)), hc.real_rep(a) @ hc.real_rep(b), atol=1e-12)
    ha, hb = a + hc.adjoint(a), b + hc.adjoint(b)
    assert abs(hc.inner(ha, hb) - hc.real_inner(ha, hb)) <= 1e-13 * max(1.0, abs(hc.inner(ha, hb)))


@pytest.mark.parametrize("k, d", [(3, 1), (3, 2), (4, 4)])
def test_hermitian_basis_is_orthonormal(k, d):
    basis = hc.hermitian_basis(k, d, traceless=True)
    assert len(basis) == k - 1 + d * k * (k - 1) // 2
    gram = np.array([[hc.inner(x, y) for y in basis] for x in basis])
    assert np.allclose(gram, np.eye(len(basis)), atol=1e-13)


@pytest.mark.parametrize("spec", FACTORS, ids=str)
def test_frame_is_orthonormal(spec):
    emb = oracles.cached_embedding(spec)
    props = factor_props(spec)
    assert emb.dim == props.dim and emb.ambient == props.ambient
    assert np.linalg.norm(emb.x0) == pytest.approx(1.0, abs=1e-14)
    frame = np.column_stack([emb.x0, emb.tangents, emb.normals])
    assert np.allclose(frame.T @ frame, np.eye(emb.ambient), atol=1e-12)


@pytest.mark.parametrize("spec", FACTORS, ids=str)
def test_shape_operators_are_trace_free(spec):
    emb = oracles.cached_embedding(spec)
    for v in random_normals(emb, 25, np.random.default_rng(1)):
        assert abs(np.trace(shape_operator(emb, v))) <= 1e-10


@pytest.mark.parametrize("spec", FACTORS, ids=str)
def test_sup_matches_catalog(spec):
    res = sup_alpha_sq(oracles.cached_embedding(spec), samples=1000)
    assert res["sup"] == pytest.approx(float(factor_props(spec).alpha_sq), abs=1e-6)
    assert res["sampled"] <= res["sup"] + 1e-12


@pytest.mark.parametrize("spec", [FactorSpec.grassmann(1, 3), FactorSpec.grassmann(2, 4, "C"), FactorSpec.oriented(2, 5)], ids=str)
def test_second_derivative_against_finite_differences(spec):
    emb = oracles.cached_embedding(spec)
    h = 1e-5
    xi = emb.normals[:, 0]
    for a in range(emb.dim):
        M = emb.generators[a]
        # central difference of the orbit velocity M exp(sM) x0
        fd = (M @ expm(h * M) @ emb.x0 - M @ expm(-h * M) @ emb.x0) / (2 * h)
        assert fd @ xi == pytest.approx(shape_operator(emb, xi)[a, a], abs=1e-6)


def test_rp2_shape_operator():
    emb = oracles.cached_embedding(FactorSpec.grassmann(1, 3))
    H = shape_operator(emb, normal_from_diagonal(emb, [0, 1, -1]))
    assert np.allclose(np.linalg.eigvalsh(H), [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-12)


@given(st.floats(0, 2 * math.pi))
def test_g24_diagonal_pattern(phi):
    emb = oracles.cached_embedding(FactorSpec.grassmann(2, 4))
    a, b = math.cos(phi), math.sin(phi)
    H = shape_operator(emb, normal_from_diagonal(emb, [a, -a, b, -b]))
    want = np.array([-a + b, a + b, -a - b, a - b]) / math.sqrt(2)
    assert np.allclose(np.diag(H), want, atol=1e-12)
    assert np.allclose(H, np.diag(np.diag(H)), atol=1e-12)


def test_cp2_shape_operator():
    emb = oracles.cached_embedding(FactorSpec.grassmann(1, 3, "C"))
    H = shape_operator(emb, normal_from_diagonal(emb, [0, 1, -1]))
    assert np.allclose(np.linalg.eigvalsh(H), np.array([-1, -1, 1, 1]) / math.sqrt(3), atol=1e-12)


def test_non_normal_vector_is_rejected():
    emb = oracles.cached_embedding(FactorSpec.grassmann(1, 3))
    with pytest.raises(ValueError):
        shape_operator(emb, emb.x0)


def test_tangent_frame_shapes():
    emb = oracles.cached_embedding(FactorSpec.grassmann(1, 3, "H"))
    frame = tangent_frame(emb)
    assert len(frame) == 8 and frame[0].shape == (3, 3, 4)


@pytest.mark.parametrize("n", [2, 3])
def test_plucker_orbits_coincide(n):
    assert oracles.plucker_orbit_check(n, trials=100, seed=n) < 1e-12


@pytest.mark.parametrize("m", [4, 5, 6])
def test_det_floor(m):
    alpha = math.sqrt(6)
    assert oracles.sym_det_floor(m, alpha, 0.0, trials=10_000) == pytest.approx(1.0)
    floor = oracles.sym_det_floor(m, alpha, 0.2, trials=20_000, seed=m)
    L = lawlor.two_eigen_L(alpha, 0.2, m, 1)
    assert floor >= L - 1e-9
    A = oracles.two_valued_matrix(m, alpha, 1)
    assert np.trace(A) == pytest.approx(0.0, abs=1e-12)
    assert np.linalg.norm(A) == pytest.approx(alpha)
    assert np.linalg.det(np.eye(m) - 0.2 * A) == pytest.approx(L, abs=1e-12)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_block_formula_matches_ambient_assembly(seed):
    specs = [FactorSpec.grassmann(1, 3), FactorSpec.grassmann(2, 4), FactorSpec.sphere(2)]
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((1, oracles.normal_dimension(specs)))
    z /= np.linalg.norm(z)
    xis, b = oracles.split_normal(specs, z)
    ev = np.sort(oracles.product_eigenvalues(specs, xis, b)[0])
    embs = [oracles.cached_embedding(s) for s in specs]
    amb = [e.normals @ x[0] for e, x in zip(embs, xis)]
    assert oracles.normal_norm_sq(specs, amb, b[0]) == pytest.approx(1.0)
    H = oracles.product_shape_operator(specs, amb, b[0])
    assert np.allclose(np.sort(np.linalg.eigvalsh(H)), ev, atol=1e-10)
    assert np.trace(H) == pytest.approx(0.0, abs=1e-10)


@pytest.mark.parametrize("case", critical7.case_catalog(), ids=lambda c: c.name)
def test_lifted_normals_reproduce_case_jacobian(case):
    specs = list(case.factors)
    grid = critical7._box_grid(case.normalParamDim, 5)
    for p in grid.T:
        phys = case.to_phys(p)
        diags, bs = case.lift(phys)
        amb = [oracles.lift_diagonal(s, d) for s, d in zip(specs, diags)]
        assert oracles.normal_norm_sq(specs, amb, bs) == pytest.approx(1.0, abs=1e-10)
        H = oracles.product_shape_operator(specs, amb, bs)
        for t in (0.1, 0.3):
            assert np.linalg.det(np.eye(len(H)) - t * H) == pytest.approx(
                float(case.jacobian(phys, t)), abs=1e-10)


def test_witnesses():
    cube = [FactorSpec.grassmann(1, 3)] * 3
    assert oracles.normal_radius_witness(cube, 0) == pytest.approx(0.5, abs=1e-12)
    hp = [FactorSpec.grassmann(1, 2, "H")] * 2
    assert oracles.normal_radius_witness(hp, 1) == pytest.approx(0.0, abs=1e-12)
    assert oracles.normal_radius_witness([FactorSpec.sphere(2)], 0) == pytest.approx(-1.0)

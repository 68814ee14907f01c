"""Brute-force oracles built on the explicit embeddings.

Nothing in here uses the closed-form constants of :mod:`conecert.catalog`
or :mod:`conecert.product`; values are computed from points and shape
operators in ambient coordinates so they can be compared against them.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np
from scipy.linalg import null_space
from scipy.stats import special_ortho_group

from ..catalog import FactorSpec, Kind
from . import hypercomplex as hc
from .embedding import OrbitEmbedding, build_embedding


@lru_cache(maxsize=None)
def cached_embedding(spec: FactorSpec) -> OrbitEmbedding:
    return build_embedding(spec)


def _witness_point(emb: OrbitEmbedding) -> np.ndarray:
    """Nearest singular point used for the normal radius, as a unit ambient vector."""
    spec = emb.spec
    if spec.kind is Kind.SPHERE:
        return -emb.x0
    if spec.kind is Kind.GRASSMANN:
        # swap the last eigenvalue 1 with the first eigenvalue 0
        k, d, l = spec.k, spec.d, spec.l
        Pt = emb.base.copy()
        Pt[l - 1, l - 1, 0] = 0.0
        Pt[l, l, 0] = 1.0
        return hc.to_coords(Pt - (l / k) * hc.identity(k, d), emb.basis) / emb.radius
    # oriented: e_{l+1} ^ ... ^ e_{2l}
    l = spec.l
    target = tuple(range(l, 2 * l))
    out = np.zeros(emb.ambient)
    out[emb.basis.index(target)] = 1.0
    return out


def normal_radius_witness(specs, index: int) -> float:
    """Inner product of the product base point with the witness in factor ``index``.

    The product point is (lambda_1 x_1, ..., lambda_m x_m); the witness
    replaces the ``index``-th component only.  Weights come from the
    intrinsic dimensions of the embedded orbits.
    """
    embs = [cached_embedding(s) for s in specs]
    dims = np.array([e.dim for e in embs], dtype=float)
    lam = np.sqrt(dims / dims.sum())
    x = np.concatenate([l * e.x0 for l, e in zip(lam, embs)])
    parts = [l * e.x0 for l, e in zip(lam, embs)]
    parts[index] = lam[index] * _witness_point(embs[index])
    xt = np.concatenate(parts)
    return float(x @ xt)


def two_valued_matrix(m: int, alpha: float, r: int) -> np.ndarray:
    """Diagonal trace-free matrix of norm alpha with two eigenvalues of multiplicities r, m-r."""
    p = alpha * np.sqrt((m - r) / (m * r))
    q = -alpha * np.sqrt(r / (m * (m - r)))
    return np.diag([p] * r + [q] * (m - r))


def random_tracefree_symmetric(m: int, alpha: float, count: int, rng) -> np.ndarray:
    z = rng.standard_normal((count, m, m))
    a = 0.5 * (z + np.swapaxes(z, 1, 2))
    tr = np.trace(a, axis1=1, axis2=2) / m
    a -= tr[:, None, None] * np.eye(m)
    norms = np.sqrt(np.einsum("sij,sij->s", a, a))
    return a * (alpha / norms)[:, None, None]


def sym_det_floor(m: int, alpha: float, t: float, trials: int = 100_000, seed: int = 0) -> float:
    """Empirical min of det(I - tA) over random trace-free symmetric A with |A| = alpha."""
    rng = np.random.default_rng(seed)
    best = np.inf
    chunk = 20_000
    done = 0
    while done < trials:
        n = min(chunk, trials - done)
        w = np.linalg.eigvalsh(random_tracefree_symmetric(m, alpha, n, rng))
        best = min(best, float(np.prod(1.0 - t * w, axis=1).min()))
        done += n
    return best


def plucker_orbit_check(n: int, trials: int = 100, seed: int = 0) -> float:
    """Max deviation between A e1^A e2 and A G_12 A^T under e_i^e_j <-> G_ij."""
    size = 2 * n + 1
    G12 = np.zeros((size, size))
    G12[0, 1], G12[1, 0] = 1.0, -1.0
    iu = np.triu_indices(size, 1)
    rots = special_ortho_group.rvs(size, size=trials, random_state=seed)
    rots = np.asarray(rots).reshape(trials, size, size)
    worst = 0.0
    for A in rots:
        u, v = A[:, 0], A[:, 1]
        wedge = np.array([u[i] * v[j] - u[j] * v[i] for i, j in zip(*iu)])
        conj = (A @ G12 @ A.T)[iu]
        worst = max(worst, float(np.abs(wedge - conj).max()))
    return worst


def product_normal_basis(specs):
    """Orthonormal coordinates for unit normals of a minimal product.

    Returns the factor embeddings, weights, and a matrix whose columns span
    the normal space in the coordinates (xi_1, ..., xi_m, b) where xi_i are
    coordinates in factor i's normal basis and b satisfies sum lambda_i b_i = 0.
    """
    embs = [cached_embedding(s) for s in specs]
    dims = np.array([e.dim for e in embs], dtype=float)
    lam = np.sqrt(dims / dims.sum())
    b_basis = null_space(lam[None, :])
    return embs, lam, b_basis


def product_eigenvalues(specs, xi_coords: list[np.ndarray], b: np.ndarray) -> np.ndarray:
    """Eigenvalues of H^v = diag((b_i / lambda_i) I + H_i^{xi_i} / lambda_i), batched.

    ``xi_coords[i]`` has shape (count, codim_i) and ``b`` has shape (count, m).
    """
    embs, lam, _ = product_normal_basis(specs)
    blocks = []
    for i, emb in enumerate(embs):
        S = emb.shape_tensor
        count = b.shape[0]
        if S.shape[2]:
            H = np.einsum("ijn,sn->sij", S, xi_coords[i])
        else:
            H = np.zeros((count, emb.dim, emb.dim))
        H = (H + b[:, i, None, None] * np.eye(emb.dim)) / lam[i]
        blocks.append(np.linalg.eigvalsh(H))
    return np.concatenate(blocks, axis=1)


def sample_product_normals(specs, count: int, rng):
    """Uniform random unit normals of the product, split as (xi coords, b)."""
    embs, lam, b_basis = product_normal_basis(specs)
    codims = [e.normals.shape[1] for e in embs]
    width = sum(codims) + b_basis.shape[1]
    z = rng.standard_normal((count, width))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    return split_normal(specs, z)


def split_normal(specs, z: np.ndarray):
    embs, lam, b_basis = product_normal_basis(specs)
    codims = [e.normals.shape[1] for e in embs]
    xis, pos = [], 0
    for c in codims:
        xis.append(z[:, pos:pos + c])
        pos += c
    b = z[:, pos:] @ b_basis.T
    return xis, b


def normal_dimension(specs) -> int:
    embs, lam, b_basis = product_normal_basis(specs)
    return sum(e.normals.shape[1] for e in embs) + b_basis.shape[1]


def product_shape_operator(specs, xi_ambient: list[np.ndarray | None], b) -> np.ndarray:
    """H^v assembled directly from ambient second derivatives.

    The product point is (lambda_i x_i); the normal is v = (xi_i - b_i x_i).
    A unit tangent of factor i is (T_i) placed in slot i, and the curve
    s -> lambda_i x_i(s / lambda_i) has acceleration x_i'' / lambda_i, so
    the block is <Hess_i, xi_i - b_i x_i> / lambda_i.
    """
    embs = [cached_embedding(s) for s in specs]
    dims = np.array([e.dim for e in embs], dtype=float)
    lam = np.sqrt(dims / dims.sum())
    total = int(dims.sum())
    H = np.zeros((total, total))
    off = 0
    for i, emb in enumerate(embs):
        xi = np.zeros(emb.ambient) if xi_ambient[i] is None else np.asarray(xi_ambient[i], float)
        v = xi - b[i] * emb.x0
        block = np.einsum("ijN,N->ij", emb.hessian, v) / lam[i]
        H[off:off + emb.dim, off:off + emb.dim] = block
        off += emb.dim
    return H


def normal_norm_sq(specs, xi_ambient, b) -> float:
    embs = [cached_embedding(s) for s in specs]
    total = 0.0
    for i, emb in enumerate(embs):
        xi = np.zeros(emb.ambient) if xi_ambient[i] is None else np.asarray(xi_ambient[i], float)
        total += float(np.sum((xi - b[i] * emb.x0) ** 2))
    return total


def lift_diagonal(spec: FactorSpec, diag) -> np.ndarray | None:
    """Ambient normal of a factor from a real diagonal Hermitian matrix (None for spheres)."""
    if diag is None:
        return None
    emb = cached_embedding(spec)
    k, d = spec.k, spec.d
    xi = np.zeros((k, k, d))
    xi[np.arange(k), np.arange(k), 0] = np.asarray(diag, float)
    vec = hc.to_coords(xi, emb.basis)
    resid = emb.tangents.T @ vec
    if abs(vec @ emb.x0) > 1e-10 or (resid.size and np.abs(resid).max() > 1e-10):
        raise ValueError("diagonal matrix is not normal to the orbit")
    return vec


def subsets_of(k: int, l: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(k), l))

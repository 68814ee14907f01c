"""Explicit orbit embeddings of the catalog factors and their second fundamental forms.

Every factor is realised as the orbit of a unit vector ``x0`` under a
compact group acting linearly and orthogonally on some R^N:

* ``G(l,k;F)``  the adjoint action of the skew-Hermitian matrices on the
  trace-free Hermitian matrices, with ``x0 = (P - (l/k) I) / r``;
* ``Gor(l,k)``  so(k) acting by derivations on the l-th exterior power,
  ``x0 = e_1 ^ ... ^ e_l``;
* ``S(n)``      so(n+1) acting on R^(n+1), ``x0 = e_0``.

For a generator M the orbit curve exp(sM) x0 has velocity M x0 and
acceleration M^2 x0, so the second fundamental form is the normal part of
the symmetrised product (M_A M_B + M_B M_A) x0 / 2.  No finite differences
are involved.  Because x0 sits on the unit sphere, every shape operator is
already at unit-sphere scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..catalog import FactorSpec, Kind, factor_props
from . import hypercomplex as hc


@dataclass
class OrbitEmbedding:
    spec: FactorSpec
    radius: float
    x0: np.ndarray              # unit position in R^N
    generators: np.ndarray      # (dim, N, N); M_i x0 is the i-th unit tangent
    tangents: np.ndarray        # (N, dim)
    normals: np.ndarray         # (N, codim), orthonormal, orthogonal to x0 and tangents
    hessian: np.ndarray         # (dim, dim, N) symmetrised second derivatives
    base: np.ndarray | None = None       # projector P or the simple l-vector
    centered: np.ndarray | None = None   # P - (l/k) I for Grassmannians
    basis: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.tangents.shape[1]

    @property
    def ambient(self) -> int:
        return self.x0.shape[0]

    @property
    def shape_tensor(self) -> np.ndarray:
        """S[i, j, n] = <II(T_i, T_j), N_n>."""
        return np.einsum("ijN,Nn->ijn", self.hessian, self.normals)

    def coords(self, matrix: np.ndarray) -> np.ndarray:
        """Ambient coordinates of a Hermitian matrix (Grassmann factors only)."""
        if self.spec.kind is not Kind.GRASSMANN:
            raise TypeError("matrix coordinates only exist for projector embeddings")
        return hc.to_coords(matrix, self.basis)


def _grassmann(spec: FactorSpec):
    l, k, d = spec.l, spec.k, spec.d
    basis = hc.hermitian_basis(k, d, traceless=True)
    stack = np.stack(basis)

    P = np.zeros((k, k, d))
    P[np.arange(l), np.arange(l), 0] = 1.0
    centered = P - (l / k) * hc.identity(k, d)
    r = float(np.sqrt(float(factor_props(spec).radius_sq)))

    gens = []
    for alpha in range(l, k):
        for a in range(l):
            for u in hc.units(d):
                X = hc.elementary(k, d, alpha, a, u) - hc.elementary(k, d, a, alpha, hc.conj(u))
                # matrix of A -> [X, A] in the orthonormal basis
                images = hc.batch_commutator(X, stack)
                gens.append(hc.batch_inner(stack, images))
    x0 = hc.to_coords(centered, basis) / r
    return np.array(gens), x0, r, P, centered, basis


def _plucker(spec: FactorSpec):
    l, k = spec.l, spec.k
    subsets = list(itertools.combinations(range(k), l))
    index = {s: i for i, s in enumerate(subsets)}
    N = len(subsets)

    def apply(i, j):
        # derivation of the rotation generator e_j -> e_i, e_i -> -e_j
        M = np.zeros((N, N))
        for s in subsets:
            for pos, idx in enumerate(s):
                for src, dst, sign in ((j, i, 1.0), (i, j, -1.0)):
                    if idx != src or dst in s:
                        continue
                    new = list(s)
                    new[pos] = dst
                    perm = sorted(range(l), key=lambda q: new[q])
                    # sign of the sorting permutation
                    par = 1.0
                    seen = [False] * l
                    for q in range(l):
                        if seen[q]:
                            continue
                        c, length = q, 0
                        while not seen[c]:
                            seen[c] = True
                            c = perm[c]
                            length += 1
                        if length % 2 == 0:
                            par = -par
                    M[index[tuple(sorted(new))], index[s]] += sign * par
        return M

    gens = [apply(alpha, a) for a in range(l) for alpha in range(l, k)]
    x0 = np.zeros(N)
    x0[index[tuple(range(l))]] = 1.0
    return np.array(gens), x0, 1.0, x0.copy(), None, subsets


def _sphere(spec: FactorSpec):
    N = spec.n + 1
    gens = []
    for i in range(1, N):
        M = np.zeros((N, N))
        M[i, 0] = 1.0
        M[0, i] = -1.0
        gens.append(M)
    x0 = np.zeros(N)
    x0[0] = 1.0
    return np.array(gens), x0, 1.0, x0.copy(), None, []


def _orthonormalize_generators(gens: np.ndarray, x0: np.ndarray) -> np.ndarray:
    V = np.einsum("aNM,M->Na", gens, x0)
    gram = V.T @ V
    w, U = np.linalg.eigh(gram)
    if w.min() < 1e-10 * max(w.max(), 1.0):
        raise ValueError("tangent frame is rank deficient; check the factor specification")
    inv_sqrt = U @ np.diag(w ** -0.5) @ U.T
    return np.einsum("ab,aNM->bNM", inv_sqrt, gens)


def build_embedding(spec: FactorSpec) -> OrbitEmbedding:
    spec.validate()
    if spec.kind is Kind.GRASSMANN:
        gens, x0, r, base, centered, basis = _grassmann(spec)
    elif spec.kind is Kind.ORIENTED:
        gens, x0, r, base, centered, basis = _plucker(spec)
    else:
        gens, x0, r, base, centered, basis = _sphere(spec)

    gens = _orthonormalize_generators(gens, x0)
    tangents = np.einsum("aNM,M->Na", gens, x0)
    MX = np.einsum("aNM,M->aN", gens, x0)
    second = np.einsum("aNM,bM->abN", gens, MX)
    hessian = 0.5 * (second + second.transpose(1, 0, 2))

    N = x0.shape[0]
    span = np.column_stack([x0, tangents])
    q, _ = np.linalg.qr(np.column_stack([span, np.eye(N)]))
    normals = q[:, span.shape[1]:N]
    return OrbitEmbedding(
        spec=spec, radius=r, x0=x0, generators=gens, tangents=tangents,
        normals=normals, hessian=hessian, base=base, centered=centered, basis=basis,
    )


def shape_operator(emb: OrbitEmbedding, normal: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """H^xi_ij = <II(T_i, T_j), xi> for an ambient unit-sphere normal xi."""
    normal = np.asarray(normal, dtype=float)
    off = max(abs(float(normal @ emb.x0)), float(np.abs(emb.tangents.T @ normal).max(initial=0.0)))
    if off > tol * max(1.0, float(np.linalg.norm(normal))):
        raise ValueError(f"vector is not normal to the orbit (deviation {off:.2e})")
    return np.einsum("ijN,N->ij", emb.hessian, normal)


def normal_from_matrix(emb: OrbitEmbedding, xi: np.ndarray) -> np.ndarray:
    """Ambient normal vector for a Hermitian normal matrix, checked for normality."""
    vec = emb.coords(xi)
    shape_operator(emb, vec)
    return vec


def normal_from_diagonal(emb: OrbitEmbedding, diag) -> np.ndarray:
    k, d = emb.spec.k, emb.spec.d
    xi = np.zeros((k, k, d))
    xi[np.arange(k), np.arange(k), 0] = np.asarray(diag, dtype=float)
    return normal_from_matrix(emb, xi)


def tangent_frame(emb: OrbitEmbedding) -> list[np.ndarray]:
    """Unit tangent vectors, as Hermitian matrices for Grassmannians."""
    if emb.spec.kind is Kind.GRASSMANN:
        return [hc.from_coords(emb.tangents[:, i], emb.basis)
                for i in range(emb.dim)]
    return [emb.tangents[:, i] for i in range(emb.dim)]


def random_normals(emb: OrbitEmbedding, count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform unit normals at x0, shape (count, N)."""
    z = rng.standard_normal((count, emb.normals.shape[1]))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    return z @ emb.normals.T


def sup_alpha_sq(emb: OrbitEmbedding, samples: int = 1000, seed: int = 0) -> dict:
    """sup over unit normals of |H^xi|^2.

    The quadratic form xi -> |H^xi|^2 is diagonalised exactly; the top
    eigenvector is added to the random sample so the sampled maximum is the
    true supremum, and the purely random maximum is reported alongside.
    """
    S = emb.shape_tensor
    codim = S.shape[2]
    if codim == 0:
        return {"sup": 0.0, "exact": 0.0, "sampled": 0.0}
    Q = np.einsum("ijn,ijm->nm", S, S)
    w, U = np.linalg.eigh(Q)
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((max(samples, 1), codim))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    sampled = float(np.max(np.einsum("sn,nm,sm->s", z, Q, z)))
    top = U[:, -1]
    H = np.einsum("ijn,n->ij", S, top)
    exact = float(np.sum(H * H))
    return {"sup": max(exact, sampled), "exact": float(w[-1]), "sampled": sampled}

"""Matrices over R, C and H stored as real arrays with a trailing component axis.

A k x k matrix over a field of real dimension d is an array of shape
``(k, k, d)``. Multiplication goes through an explicit structure-constant
table, so complex and quaternion entries are handled by one code path and
no complex dtype is ever used.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

FIELD_DIMS = {"R": 1, "C": 2, "H": 4}


@lru_cache(maxsize=None)
def mult_table(d: int) -> np.ndarray:
    """Structure constants ``C[i, j, l]`` with ``e_i e_j = sum_l C[i, j, l] e_l``."""
    if d not in (1, 2, 4):
        raise ValueError(f"unsupported field dimension {d}")
    table = np.zeros((d, d, d))
    if d == 1:
        table[0, 0, 0] = 1.0
    elif d == 2:
        table[0, 0, 0] = 1.0
        table[0, 1, 1] = 1.0
        table[1, 0, 1] = 1.0
        table[1, 1, 0] = -1.0
    else:
        # basis 1, i, j, k
        rules = {
            (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
            (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
            (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
            (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
        }
        for (i, j), (sign, out) in rules.items():
            table[i, j, out] = sign
    table.setflags(write=False)
    return table


def units(d: int) -> np.ndarray:
    """The d unit basis elements 1, i, j, k as component vectors."""
    return np.eye(d)


def conj(x: np.ndarray) -> np.ndarray:
    out = -x
    out[..., 0] = x[..., 0]
    return out


def zeros(k: int, d: int) -> np.ndarray:
    return np.zeros((k, k, d))


def identity(k: int, d: int) -> np.ndarray:
    out = np.zeros((k, k, d))
    out[np.arange(k), np.arange(k), 0] = 1.0
    return out


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    d = a.shape[-1]
    return np.einsum("rsi,scj,ijl->rcl", a, b, mult_table(d))


def adjoint(a: np.ndarray) -> np.ndarray:
    return conj(np.swapaxes(a, 0, 1))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return matmul(a, b) - matmul(b, a)


def batch_commutator(x: np.ndarray, stack: np.ndarray) -> np.ndarray:
    """[X, A_b] for every matrix in a stack of shape (n, k, k, d)."""
    table = mult_table(x.shape[-1])
    left = np.einsum("rsi,bscj,ijl->brcl", x, stack, table)
    right = np.einsum("brsi,scj,ijl->brcl", stack, x, table)
    return left - right


def batch_inner(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Gram matrix g(A_i, B_j) between two stacks."""
    re_part = mult_table(a.shape[-1])[:, :, 0]
    return 0.5 * np.einsum("arsi,bsrj,ij->ab", a, b, re_part)


def re_trace(a: np.ndarray) -> float:
    return float(np.trace(a[..., 0]))


def inner(a: np.ndarray, b: np.ndarray) -> float:
    """The metric g(A, B) = 1/2 Re tr(AB) evaluated with the structure table."""
    d = a.shape[-1]
    re_part = mult_table(d)[:, :, 0]
    return 0.5 * float(np.einsum("rsi,srj,ij->", a, b, re_part))


def norm(a: np.ndarray) -> float:
    return float(np.sqrt(max(inner(a, a), 0.0)))


def elementary(k: int, d: int, row: int, col: int, unit: np.ndarray) -> np.ndarray:
    out = np.zeros((k, k, d))
    out[row, col] = unit
    return out


@lru_cache(maxsize=None)
def _left_mult_blocks(d: int) -> np.ndarray:
    # block[i] is the real d x d matrix of left multiplication by e_i
    table = mult_table(d)
    return np.transpose(table, (0, 2, 1)).copy()


def real_rep(a: np.ndarray) -> np.ndarray:
    """Real (dk x dk) matrix of left multiplication; a ring homomorphism."""
    k, _, d = a.shape
    blocks = np.einsum("rsi,iab->rasb", a, _left_mult_blocks(d))
    return blocks.reshape(k * d, k * d)


def real_inner(a: np.ndarray, b: np.ndarray) -> float:
    """g(A, B) computed through the real representation: tr(A~ B~) / (2d)."""
    d = a.shape[-1]
    return float(np.trace(real_rep(a) @ real_rep(b))) / (2.0 * d)


def hermitian_basis(k: int, d: int, traceless: bool = False) -> list[np.ndarray]:
    """A g-orthonormal basis of the Hermitian k x k matrices over the field.

    Off-diagonal elements ``u E_rs + conj(u) E_sr`` already have unit norm;
    the diagonal block is sqrt(2) E_rr, or an orthonormal basis of its
    trace-zero part when ``traceless`` is set.
    """
    basis = []
    if traceless:
        # orthonormal basis of {x in R^k : sum x = 0}, scaled for g
        helm = np.linalg.qr(np.vstack([np.ones(k), np.eye(k)[:-1]]).T)[0][:, 1:]
        for col in helm.T:
            m = np.zeros((k, k, d))
            m[np.arange(k), np.arange(k), 0] = np.sqrt(2.0) * col
            basis.append(m)
    else:
        for r in range(k):
            m = np.zeros((k, k, d))
            m[r, r, 0] = np.sqrt(2.0)
            basis.append(m)
    for r in range(k):
        for s in range(r + 1, k):
            for u in units(d):
                basis.append(elementary(k, d, r, s, u) + elementary(k, d, s, r, conj(u)))
    return basis


def to_coords(a: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    return np.array([inner(a, e) for e in basis])


def from_coords(x: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    return np.tensordot(x, np.stack(basis), axes=1)

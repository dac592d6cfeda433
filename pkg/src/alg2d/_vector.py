"""Table-driven numpy evaluation of the matrix equations over all of GL(2, q).

Field elements are replaced by their integer codes and the field operations by
``q x q`` lookup tables, so one numpy gather evaluates an entry of
``g A - B (g (x) g)`` for every candidate ``g`` at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fields import FieldKind, FieldSpec
from .linalg import check_enumerable

# (row, col) index of g for each entry of g (x) g: (g (x) g)[2*r1 + r2, 2*c1 + c2] = g[r1,c1] g[r2,c2]
_KRON_INDEX = [[((k // 2, j // 2), (k % 2, j % 2)) for j in range(4)] for k in range(4)]


@dataclass(frozen=True)
class Tables:
    q: int
    add: np.ndarray
    sub: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray


@lru_cache(maxsize=32)
def tables(spec: FieldSpec) -> Tables:
    q = spec.order
    p = spec.p
    codes = np.arange(q, dtype=np.int64)
    if spec.kind is FieldKind.PRIME:
        add = np.add.outer(codes, codes) % p
        mul = np.multiply.outer(codes, codes) % p
    else:
        ops = spec._ops
        a, b = codes % p, codes // p
        a1, a2 = a[:, None], a[None, :]
        b1, b2 = b[:, None], b[None, :]
        add = (a1 + a2) % p + ((b1 + b2) % p) * p
        bb = b1 * b2
        re = (a1 * a2 + ops.m * bb) % p
        im = (a1 * b2 + b1 * a2 + ops.s * bb) % p
        mul = re + im * p
    neg = np.array([(-spec.from_code(int(k))).code for k in codes], dtype=np.int64)
    sub = add[:, neg]
    inv = np.zeros(q, dtype=np.int64)
    one = spec.one.code
    nz, inv_idx = np.nonzero(mul == one)
    inv[nz] = inv_idx
    return Tables(q, add, sub, mul, neg, inv)


def _dtype(q: int):
    return np.int16 if q < 2**15 else np.int32


@lru_cache(maxsize=4)
def gl2_codes(spec: FieldSpec) -> np.ndarray:
    """``(N, 4)`` array of ``(a, b, c, d)`` codes of GL(2, q) in lexicographic order."""
    t = tables(spec)
    q = t.q
    grid = np.indices((q, q, q, q), dtype=_dtype(q)).reshape(4, -1)
    a, b, c, d = grid
    det = t.sub[t.mul[a, d], t.mul[b, c]]
    out = grid[:, det != 0].T.copy()
    out.setflags(write=False)
    return out


def gl2_array(spec: FieldSpec, cap: int | None = None) -> np.ndarray:
    check_enumerable(spec, cap)
    return gl2_codes(spec)


def _lin(t: Tables, terms, n: int) -> np.ndarray:
    """Sum of ``array * const`` terms, skipping zero constants."""
    acc = np.zeros(n, dtype=np.int64)
    for arr, k in terms:
        if k:
            acc = t.add[acc, t.mul[arr, k]]
    return acc


def solve_mask(A_codes, B_codes, G: np.ndarray, t: Tables) -> np.ndarray:
    """Indices of rows ``g`` of ``G`` with ``g A == B (g (x) g)``.

    ``A_codes``/``B_codes`` are 8 codes (row-major 2x4). Candidates are filtered
    one scalar equation at a time.
    """
    A = [A_codes[:4], A_codes[4:]]
    B = [B_codes[:4], B_codes[4:]]
    idx = np.arange(len(G))
    for j in range(4):
        for i in range(2):
            if idx.size == 0:
                return idx
            g = G[idx].T.astype(np.int64)
            gm = [[g[0], g[1]], [g[2], g[3]]]
            n = idx.size
            left = _lin(t, [(gm[i][0], A[0][j]), (gm[i][1], A[1][j])], n)
            right = np.zeros(n, dtype=np.int64)
            for k in range(4):
                coef = B[i][k]
                if coef:
                    (r1, c1), (r2, c2) = _KRON_INDEX[k][j]
                    gg = t.mul[gm[r1][c1], gm[r2][c2]]
                    right = t.add[right, t.mul[gg, coef]]
            idx = idx[left == right]
    return idx


def transform_all(A_codes, G: np.ndarray, t: Tables) -> np.ndarray:
    """``(N, 8)`` codes of ``g A (g^-1 (x) g^-1)`` for every row of ``G``."""
    g = G.T.astype(np.int64)
    a, b, c, d = g
    n = len(G)
    k = t.inv[t.sub[t.mul[a, d], t.mul[b, c]]]
    gi = [[t.mul[d, k], t.neg[t.mul[b, k]]], [t.neg[t.mul[c, k]], t.mul[a, k]]]
    gm = [[a, b], [c, d]]
    A = [A_codes[:4], A_codes[4:]]
    M = [[_lin(t, [(gm[i][0], A[0][j]), (gm[i][1], A[1][j])], n) for j in range(4)] for i in range(2)]
    out = np.empty((n, 8), dtype=np.int64)
    for i in range(2):
        for j in range(4):
            acc = np.zeros(n, dtype=np.int64)
            for kk in range(4):
                (r1, c1), (r2, c2) = _KRON_INDEX[kk][j]
                gg = t.mul[gi[r1][c1], gi[r2][c2]]
                acc = t.add[acc, t.mul[M[i][kk], gg]]
            out[:, 4 * i + j] = acc
    return out

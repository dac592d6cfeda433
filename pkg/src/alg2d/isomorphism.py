"""Isomorphism search and orbits under ``A -> g A (g^-1 (x) g^-1)``."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _vector
from .automorphisms import _codes_to_gl2, automorphisms_bruteforce, gl2_size
from .errors import CapExceeded, InfiniteField, SpecMismatch
from .fields import enumerate_field
from .linalg import GL2Element, Mat
from .msc import MSC

ORBIT_CAP = 7
ORBIT_CAP_ENV = "ALG2D_ORBIT_CAP"


def orbit_cap() -> int:
    return int(os.environ.get(ORBIT_CAP_ENV, ORBIT_CAP))


def find_isomorphism(A: MSC, B: MSC, cap: int | None = None, jobs: int = 1) -> GL2Element | None:
    """First ``g`` (enumeration order) with ``transform(A, g) == B``, or ``None``.

    ``transform(A, g) == B`` is checked in the polynomial form ``g A == B (g (x) g)``.
    """
    if A.spec != B.spec:
        raise SpecMismatch(f"{A.spec} vs {B.spec}")
    G = _vector.gl2_array(A.spec, cap)
    t = _vector.tables(A.spec)
    a, b = A.codes(), B.codes()
    if jobs <= 1:
        hits = _vector.solve_mask(a, b, G, t)
        return _codes_to_gl2(A.spec, G[hits[:1]])[0] if hits.size else None
    bounds = np.linspace(0, len(G), jobs + 1, dtype=int)
    chunks = [G[lo:hi] for lo, hi in zip(bounds[:-1], bounds[1:])]
    with ThreadPoolExecutor(jobs) as pool:
        for C, hits in zip(chunks, pool.map(lambda C: _vector.solve_mask(a, b, C, t), chunks)):
            if hits.size:
                return _codes_to_gl2(A.spec, C[hits[:1]])[0]
    return None


def _check_orbit_field(A: MSC, cap: int | None) -> None:
    spec = A.spec
    if not spec.is_finite:
        raise InfiniteField(f"orbits over {spec} are infinite")
    cap = orbit_cap() if cap is None else cap
    if spec.order > cap:
        raise CapExceeded(f"q = {spec.order} exceeds orbit cap {cap}")


def orbit(A: MSC, cap: int | None = None) -> set[MSC]:
    """``{transform(A, g) : g in GL(2, q)}``."""
    _check_orbit_field(A, cap)
    codes = _orbit_codes(A)
    elems = enumerate_field(A.spec)
    return {MSC(A.spec, Mat(A.spec, 2, 4, [elems[int(k)] for k in row])) for row in codes}


def _orbit_codes(A: MSC) -> np.ndarray:
    G = _vector.gl2_codes(A.spec)
    out = _vector.transform_all(A.codes(), G, _vector.tables(A.spec))
    return np.unique(out, axis=0)


def orbit_size(A: MSC, cap: int | None = None) -> int:
    _check_orbit_field(A, cap)
    return len(_orbit_codes(A))


def orbit_stabilizer_check(A: MSC, cap: int | None = None) -> bool:
    """``|orbit(A)| * |Aut(A)| == |GL(2, q)|``."""
    n = orbit_size(A, cap)
    return n * len(automorphisms_bruteforce(A, cap=max(A.spec.order, 2))) == gl2_size(A.spec)

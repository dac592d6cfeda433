"""Matrices of structure constants (MSC) of two-dimensional algebras.

An algebra on a 2-dimensional space with basis ``e1, e2`` is encoded by a
2x4 matrix ``A`` so that ``u * v = A (u (x) v)`` with the Kronecker
convention ``u (x) v = (u1 v1, u1 v2, u2 v1, u2 v2)``.
"""

from __future__ import annotations

from typing import Sequence

from ._text import Scanner
from .errors import SpecMismatch
from .fields import FieldElement, FieldSpec, _scan_field_spec
from .linalg import GL2Element, Mat, _scan_mat, inv2, kron


class MSC:
    """Immutable 2x4 structure-constant matrix over a field."""

    __slots__ = ("spec", "entries")

    def __init__(self, spec: FieldSpec, entries):
        if not isinstance(entries, Mat):
            entries = Mat.from_rows(spec, entries)
        if (entries.rows, entries.cols) != (2, 4):
            raise ValueError(f"an MSC is 2x4, got {entries.rows}x{entries.cols}")
        if entries.spec != spec:
            raise SpecMismatch(f"entries over {entries.spec}, MSC over {spec}")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("MSC is immutable")

    @property
    def alphas(self) -> tuple[FieldElement, ...]:
        return self.entries.row(0)

    @property
    def betas(self) -> tuple[FieldElement, ...]:
        return self.entries.row(1)

    def codes(self) -> tuple[int, ...]:
        return tuple(e.code for e in self.entries.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MSC):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __str__(self) -> str:
        return f"MSC({self.spec}; {self.entries})"

    __repr__ = __str__


def parse_msc(text: str) -> MSC:
    """Parse ``MSC(<field-spec>; [[a1,a2,a3,a4],[b1,b2,b3,b4]])``."""
    sc = Scanner(text)
    sc.expect("MSC")
    sc.expect("(")
    spec = _scan_field_spec(sc)
    sc.expect(";")
    start = sc.pos
    m = _scan_mat(sc, spec)
    if (m.rows, m.cols) != (2, 4):
        sc.pos = start
        sc.fail(f"MSC matrix must be 2x4, got {m.rows}x{m.cols}")
    sc.expect(")")
    sc.expect_end()
    return MSC(spec, m)


def _as_mat2(g, spec: FieldSpec) -> Mat:
    if isinstance(g, GL2Element):
        g = g.as_mat()
    elif not isinstance(g, Mat):
        g = Mat.from_rows(spec, g)
    if (g.rows, g.cols) != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    if g.spec != spec:
        raise SpecMismatch(f"matrix over {g.spec}, MSC over {spec}")
    return g


def _check_vec(spec: FieldSpec, v: Sequence) -> tuple[FieldElement, FieldElement]:
    if isinstance(v, Mat):
        v = v.entries
    if len(v) != 2:
        raise ValueError("expected a 2-vector")
    return spec.element(v[0]), spec.element(v[1])


def product(A: MSC, u: Sequence, v: Sequence) -> tuple[FieldElement, FieldElement]:
    """The algebra product ``u * v = A (u (x) v)``."""
    u1, u2 = _check_vec(A.spec, u)
    v1, v2 = _check_vec(A.spec, v)
    w = (u1 * v1, u1 * v2, u2 * v1, u2 * v2)
    return tuple(sum((a * x for a, x in zip(A.entries.row(i), w)), A.spec.zero) for i in range(2))


def transform(A: MSC, g) -> MSC:
    """Structure constants after the basis change ``g``: ``g A (g^-1 (x) g^-1)``."""
    gm = _as_mat2(g, A.spec)
    gi = inv2(gm).as_mat()
    return MSC(A.spec, gm @ A.entries @ kron(gi, gi))


def aut_residual(A: MSC, g) -> Mat:
    """``g A - A (g (x) g)``; zero exactly on solutions of the automorphism equation.

    ``g`` may be singular.
    """
    gm = _as_mat2(g, A.spec)
    return gm @ A.entries - A.entries @ kron(gm, gm)


def der_residual(A: MSC, D) -> Mat:
    """``A (D (x) I + I (x) D) - D A``; linear in ``D``."""
    dm = _as_mat2(D, A.spec)
    eye = Mat.identity(A.spec, 2)
    return A.entries @ (kron(dm, eye) + kron(eye, dm)) - dm @ A.entries


def iso_residual(A: MSC, B: MSC, g) -> Mat:
    """``g A - B (g (x) g)``; zero with ``det g != 0`` iff ``transform(A, g) == B``."""
    if A.spec != B.spec:
        raise SpecMismatch(f"{A.spec} vs {B.spec}")
    gm = _as_mat2(g, A.spec)
    return gm @ A.entries - B.entries @ kron(gm, gm)


def matrix_units(spec: FieldSpec) -> list[Mat]:
    """``E11, E12, E21, E22`` in the project-wide row-major order."""
    one, zero = spec.one, spec.zero
    return [Mat(spec, 2, 2, [one if k == i else zero for k in range(4)]) for i in range(4)]

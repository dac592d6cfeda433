"""Derivation algebras as kernels of ``D -> A(D (x) I + I (x) D) - D A``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import SpecMismatch
from .fields import FieldElement, FieldSpec
from .linalg import GL2Element, Mat, inv2, kernel_basis, rref
from .msc import MSC, der_residual, matrix_units

Vec4 = tuple[FieldElement, FieldElement, FieldElement, FieldElement]


@dataclass(frozen=True)
class Subspace:
    """Subspace of 2x2 matrices, vectorised row-major as ``(a, b, c, d)``.

    ``basis`` is always the non-zero rows of the reduced row echelon form of any
    spanning set, so two subspaces are equal iff their bases are identical.
    Build instances with :meth:`span`.
    """

    spec: FieldSpec
    basis: tuple[Vec4, ...]

    @classmethod
    def span(cls, spec: FieldSpec, vectors: Iterable[Sequence]) -> Subspace:
        rows = [tuple(spec.element(x) for x in v) for v in vectors]
        if any(len(r) != 4 for r in rows):
            raise ValueError("subspace vectors must have length 4")
        if not rows:
            return cls(spec, ())
        R, rank, _ = rref(Mat.from_rows(spec, rows))
        return cls(spec, tuple(R.row(i) for i in range(rank)))

    @classmethod
    def zero(cls, spec: FieldSpec) -> Subspace:
        return cls(spec, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return 4

    def matrices(self) -> list[Mat]:
        return [Mat(self.spec, 2, 2, v) for v in self.basis]

    def contains(self, v) -> bool:
        if isinstance(v, Mat):
            v = v.entries
        v = tuple(self.spec.element(x) for x in v)
        if not any(v):
            return True
        if not self.basis:
            return False
        return Subspace.span(self.spec, self.basis + (v,)).dim == self.dim

    def __str__(self) -> str:
        if not self.basis:
            return "dim=0"
        vecs = ";".join("(" + ",".join(str(x) for x in v) + ")" for v in self.basis)
        return f"dim={self.dim}; basis=[{vecs}]"


def coefficient_matrix(A: MSC) -> Mat:
    """8x4 matrix of the linear map ``(a, b, c, d) -> der_residual`` (entries row-major).

    For ``D = E_rs`` entry ``(i, j)`` with ``j = 2 j1 + j2`` is
    ``[j1 == s] A[i, 2r + j2] + [j2 == s] A[i, 2 j1 + r] - [i == r] A[s, j]``.
    """
    zero = A.spec.zero
    M = A.entries
    out = []
    for i in range(2):
        for j in range(4):
            j1, j2 = divmod(j, 2)
            for r in range(2):
                for s in range(2):
                    v = zero
                    if j1 == s:
                        v = v + M[i, 2 * r + j2]
                    if j2 == s:
                        v = v + M[i, 2 * j1 + r]
                    if i == r:
                        v = v - M[s, j]
                    out.append(v)
    return Mat(A.spec, 8, 4, out)


def coefficient_matrix_slow(A: MSC) -> Mat:
    """Same matrix built from :func:`der_residual` on the four matrix units."""
    cols = [der_residual(A, E).entries for E in matrix_units(A.spec)]
    return Mat(A.spec, 8, 4, [cols[j][i] for i in range(8) for j in range(4)])


def derivations(A: MSC) -> Subspace:
    """Der(A) as a canonical subspace."""
    return Subspace.span(A.spec, kernel_basis(coefficient_matrix(A)))


def commutator(X: Mat, Y: Mat) -> Mat:
    return X @ Y - Y @ X


def lie_closed(S: Subspace) -> tuple[bool, tuple[Mat, Mat] | None]:
    """Check closure under commutators; returns ``(ok, offending pair or None)``."""
    mats = S.matrices()
    for i, X in enumerate(mats):
        for Y in mats[i + 1:]:
            if not S.contains(commutator(X, Y)):
                return False, (X, Y)
    return True, None


def subspace_equal(S: Subspace, T: Subspace) -> bool:
    if S.spec != T.spec:
        raise SpecMismatch(f"{S.spec} vs {T.spec}")
    return S.basis == T.basis


def conjugate(S: Subspace, g) -> Subspace:
    """``{g D g^-1 : D in S}``."""
    gm = g.as_mat() if isinstance(g, GL2Element) else g
    gi = inv2(gm).as_mat()
    return Subspace.span(S.spec, [(gm @ D @ gi).entries for D in S.matrices()])

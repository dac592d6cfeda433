"""Small dense exact matrices over any :class:`FieldSpec`.

Everything here is at most 8x16, so matrices are plain row-major tuples of
field elements and the algorithms are the textbook ones.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

from ._text import Scanner
from .errors import CapExceeded, InfiniteField, Singular, SpecMismatch
from .fields import FieldElement, FieldSpec, _scan_element, enumerate_field

MAX_DIM = 16
DEFAULT_CAP = 31
CAP_ENV = "ALG2D_ENUM_CAP"


def default_cap() -> int:
    """Enumeration cap on the field order, overridable through ``ALG2D_ENUM_CAP``."""
    return int(os.environ.get(CAP_ENV, DEFAULT_CAP))


class Mat:
    __slots__ = ("spec", "rows", "cols", "entries")

    def __init__(self, spec: FieldSpec, rows: int, cols: int, entries: Sequence[FieldElement]):
        if not (1 <= rows <= MAX_DIM and 1 <= cols <= MAX_DIM):
            raise ValueError(f"matrix shape {rows}x{cols} outside 1..{MAX_DIM}")
        entries = tuple(spec.element(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"{len(entries)} entries for a {rows}x{cols} matrix")
        self.spec = spec
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def _raw(cls, spec: FieldSpec, rows: int, cols: int, entries: tuple) -> Mat:
        m = object.__new__(cls)
        m.spec, m.rows, m.cols, m.entries = spec, rows, cols, entries
        return m

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: Sequence[Sequence]) -> Mat:
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged or empty row list")
        return cls(spec, len(rows), len(rows[0]), [e for r in rows for e in r])

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> Mat:
        return cls(spec, rows, cols, [spec.zero] * (rows * cols))

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> Mat:
        one, zero = spec.one, spec.zero
        return cls(spec, n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def column(cls, spec: FieldSpec, values: Sequence) -> Mat:
        return cls(spec, len(values), 1, values)

    def __getitem__(self, ij: tuple[int, int]) -> FieldElement:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[FieldElement, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[FieldElement]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def _check(self, other: Mat) -> None:
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")

    def __add__(self, other: Mat) -> Mat:
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Mat._raw(self.spec, self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: Mat) -> Mat:
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Mat._raw(self.spec, self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> Mat:
        return Mat._raw(self.spec, self.rows, self.cols, tuple(-x for x in self.entries))

    def scale(self, k) -> Mat:
        k = self.spec.element(k)
        return Mat._raw(self.spec, self.rows, self.cols, tuple(k * x for x in self.entries))

    def __matmul__(self, other: Mat) -> Mat:
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        n, m, k = self.rows, other.cols, self.cols
        zero = self.spec.zero
        out = []
        for i in range(n):
            row = self.entries[i * k:(i + 1) * k]
            for j in range(m):
                acc = zero
                for t in range(k):
                    x = row[t]
                    if x:
                        acc = acc + x * other.entries[t * m + j]
                out.append(acc)
        return Mat._raw(self.spec, n, m, tuple(out))

    def transpose(self) -> Mat:
        return Mat(self.spec, self.cols, self.rows,
                   [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.spec == other.spec and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __str__(self) -> str:
        return "[" + ",".join("[" + ",".join(str(e) for e in self.row(i)) + "]"
                              for i in range(self.rows)) + "]"

    def __repr__(self) -> str:
        return f"Mat({self.spec}, {self})"


def kron(A: Mat, B: Mat) -> Mat:
    """Kronecker product: block ``(i, j)`` of the result is ``A[i, j] * B``."""
    A._check(B)
    rows, cols = A.rows * B.rows, A.cols * B.cols
    out = [A[i // B.rows, j // B.cols] * B[i % B.rows, j % B.cols]
           for i in range(rows) for j in range(cols)]
    return Mat._raw(A.spec, rows, cols, tuple(out))


def rref(M: Mat) -> tuple[Mat, int, list[int]]:
    """Reduced row echelon form with leftmost-column, topmost-row pivoting."""
    rows = [list(M.row(i)) for i in range(M.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        piv = next((i for i in range(r, M.rows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        k = rows[r][c].inverse()
        rows[r] = [k * x for x in rows[r]]
        for i in range(M.rows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return Mat.from_rows(M.spec, rows), r, pivots


def kernel_basis(M: Mat) -> list[tuple[FieldElement, ...]]:
    """Basis of ``{v : M v = 0}``, one vector per free column in ascending order.

    Each vector has a 1 in its own free position and 0 in the other free positions.
    """
    R, rank, pivots = rref(M)
    spec = M.spec
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [spec.zero] * M.cols
        v[f] = spec.one
        for i, pc in enumerate(pivots):
            v[pc] = -R[i, f]
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class GL2Element:
    """Invertible 2x2 matrix ``[[a, b], [c, d]]``."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement
    det: FieldElement = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        det = self.a * self.d - self.b * self.c
        if not det:
            raise Singular(f"det({self.as_rows()}) = 0")
        object.__setattr__(self, "det", det)

    @classmethod
    def of(cls, spec: FieldSpec, rows) -> GL2Element:
        (a, b), (c, d) = rows
        return cls(spec(a), spec(b), spec(c), spec(d))

    @classmethod
    def from_mat(cls, m: Mat) -> GL2Element:
        if (m.rows, m.cols) != (2, 2):
            raise ValueError("GL2Element needs a 2x2 matrix")
        return cls(*m.entries)

    @classmethod
    def identity(cls, spec: FieldSpec) -> GL2Element:
        return cls(spec.one, spec.zero, spec.zero, spec.one)

    @property
    def spec(self) -> FieldSpec:
        return self.a.spec

    def as_rows(self) -> list[list[FieldElement]]:
        return [[self.a, self.b], [self.c, self.d]]

    def as_mat(self) -> Mat:
        return Mat(self.spec, 2, 2, (self.a, self.b, self.c, self.d))

    def __matmul__(self, h: GL2Element) -> GL2Element:
        return GL2Element(self.a * h.a + self.b * h.c, self.a * h.b + self.b * h.d,
                          self.c * h.a + self.d * h.c, self.c * h.b + self.d * h.d)

    def inverse(self) -> GL2Element:
        return inv2(self)

    def is_identity(self) -> bool:
        return self.a == 1 and self.d == 1 and not self.b and not self.c

    def key(self) -> tuple[int, int, int, int]:
        """Enumeration-order key (finite fields)."""
        return (self.a.code, self.b.code, self.c.code, self.d.code)

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def _entries2(g) -> tuple[FieldElement, FieldElement, FieldElement, FieldElement]:
    if isinstance(g, GL2Element):
        return g.a, g.b, g.c, g.d
    if (g.rows, g.cols) != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    return g.entries


def det2(g) -> FieldElement:
    a, b, c, d = _entries2(g)
    return a * d - b * c


def inv2(g) -> GL2Element:
    a, b, c, d = _entries2(g)
    det = a * d - b * c
    if not det:
        raise Singular("matrix is singular")
    k = det.inverse()
    return GL2Element(d * k, -b * k, -c * k, a * k)


def gl2_order(q: int) -> int:
    return (q * q - 1) * (q * q - q)


def check_enumerable(spec: FieldSpec, cap: int | None = None) -> int:
    """Return ``q`` or raise if ``spec`` is infinite or above the cap."""
    if not spec.is_finite:
        raise InfiniteField(f"{spec} is infinite; brute-force enumeration needs a finite field")
    cap = default_cap() if cap is None else cap
    if spec.order > cap:
        raise CapExceeded(f"|{spec}| = {spec.order} exceeds enumeration cap {cap}")
    return spec.order


def gl2_enumerate(spec: FieldSpec, cap: int | None = None) -> Iterator[GL2Element]:
    """All of GL(2, q) in lexicographic order of the ``(a, b, c, d)`` codes."""
    check_enumerable(spec, cap)
    elems = enumerate_field(spec)
    for a, b, c, d in product(elems, repeat=4):
        if a * d != b * c:
            yield GL2Element(a, b, c, d)


def parse_mat(text: str, spec: FieldSpec) -> Mat:
    """Parse ``[[e,e,...],[e,e,...]]``."""
    sc = Scanner(text)
    m = _scan_mat(sc, spec)
    sc.expect_end()
    return m


def _scan_mat(sc: Scanner, spec: FieldSpec) -> Mat:
    start = sc.pos
    sc.expect("[")
    rows = []
    while True:
        sc.expect("[")
        row = [_scan_element(sc, spec)]
        while sc.accept(","):
            row.append(_scan_element(sc, spec))
        sc.expect("]")
        rows.append(row)
        if not sc.accept(","):
            break
    sc.expect("]")
    if any(len(r) != len(rows[0]) for r in rows):
        sc.pos = start
        sc.fail("rows of unequal length")
    return Mat.from_rows(spec, rows)

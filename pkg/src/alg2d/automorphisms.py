"""Automorphism groups: exact membership, brute-force enumeration and
comparison against closed-form group descriptions."""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Sequence

import numpy as np

from . import _vector
from .errors import InfiniteField
from .fields import FieldElement, FieldSpec, enumerate_field
from .linalg import GL2Element, det2, gl2_order
from .msc import MSC, _as_mat2, aut_residual

SHAPES = (
    "Trivial",
    "OrderTwoDiag",
    "Torus",
    "ScaleFirst",
    "UnipotentLower",
    "Borel",
    "Parabolic",
    "FiniteList",
)

# human-readable form of each continuous shape
SHAPE_FORMS = {
    "Torus": "[[1,0],[0,d]] d!=0",
    "ScaleFirst": "[[a,0],[0,1]] a!=0",
    "UnipotentLower": "[[1,0],[c,1]]",
    "Borel": "[[1,0],[c,d]] d!=0",
    "Parabolic": "[[a,0],[c,a^2]] a!=0",
}


@dataclass(frozen=True)
class GroupDescription:
    """Closed-form description of a subgroup of GL(2, F).

    Continuous shapes are described by their parameterisation; ``Trivial``,
    ``OrderTwoDiag`` and ``FiniteList`` carry explicit ``elements``.
    ``omissions`` records elements of the group over the algebraic closure that
    cannot be written down in ``spec`` (for instance those needing sqrt(3)).
    """

    shape: str
    spec: FieldSpec
    elements: tuple[GL2Element, ...] = ()
    omissions: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.shape not in SHAPES:
            raise ValueError(f"unknown group shape {self.shape!r}")
        # explicit lists are deduplicated: in characteristic 2 diag(1,-1) == I
        seen, uniq = set(), []
        for g in self.elements:
            if g not in seen:
                seen.add(g)
                uniq.append(g)
        object.__setattr__(self, "elements", tuple(uniq))

    # -- constructors ----------------------------------------------------
    @classmethod
    def trivial(cls, spec: FieldSpec) -> GroupDescription:
        return cls("Trivial", spec, (GL2Element.identity(spec),))

    @classmethod
    def order_two_diag(cls, spec: FieldSpec) -> GroupDescription:
        elems = (GL2Element.identity(spec), GL2Element.of(spec, [[1, 0], [0, -1]]))
        return cls("OrderTwoDiag", spec, elems)

    @classmethod
    def finite(cls, spec: FieldSpec, elements: Iterable, omissions: Sequence[str] = ()) -> GroupDescription:
        elems = tuple(g if isinstance(g, GL2Element) else GL2Element.of(spec, g) for g in elements)
        return cls("FiniteList", spec, elems, tuple(omissions))

    @classmethod
    def continuous(cls, shape: str, spec: FieldSpec) -> GroupDescription:
        if shape not in SHAPE_FORMS:
            raise ValueError(f"{shape} is not a continuous shape")
        return cls(shape, spec)

    # -- queries -----------------------------------------------------------
    @property
    def is_explicit(self) -> bool:
        return self.shape in ("Trivial", "OrderTwoDiag", "FiniteList")

    def contains(self, g) -> bool:
        """Membership predicate evaluated directly from the shape's equations."""
        a, b, c, d = _as_mat2(g, self.spec).entries
        if not (a * d - b * c):
            return False
        if self.is_explicit:
            return GL2Element(a, b, c, d) in self.elements
        if self.shape == "Torus":
            return a == 1 and not b and not c
        if self.shape == "ScaleFirst":
            return d == 1 and not b and not c
        if self.shape == "UnipotentLower":
            return a == 1 and d == 1 and not b
        if self.shape == "Borel":
            return a == 1 and not b
        # Parabolic
        return not b and d == a * a

    def instance(self, params: Sequence) -> GL2Element:
        """The group element for shape parameters (``d``, ``a``, ``c``, ``(c, d)`` or ``(a, c)``)."""
        s = self.spec
        one, zero = s.one, s.zero
        if self.is_explicit:
            return self.elements[int(params[0])]
        vals = [s.element(x) for x in params]
        if self.shape == "Torus":
            return GL2Element(one, zero, zero, vals[0])
        if self.shape == "ScaleFirst":
            return GL2Element(vals[0], zero, zero, one)
        if self.shape == "UnipotentLower":
            return GL2Element(one, zero, vals[0], one)
        if self.shape == "Borel":
            return GL2Element(one, zero, vals[0], vals[1])
        return GL2Element(vals[0], zero, vals[1], vals[0] * vals[0])

    def param_count(self) -> int:
        return {"Torus": 1, "ScaleFirst": 1, "UnipotentLower": 1, "Borel": 2, "Parabolic": 2}.get(self.shape, 1)

    def nonzero_params(self) -> tuple[int, ...]:
        """Positions of shape parameters that must be non-zero."""
        return {"Torus": (0,), "ScaleFirst": (0,), "Borel": (1,), "Parabolic": (0,)}.get(self.shape, ())

    def rational_points(self) -> list[GL2Element]:
        """All elements over a finite field, generated from the parameterisation."""
        if self.is_explicit:
            return list(self.elements)
        if not self.spec.is_finite:
            raise InfiniteField(f"{self.shape} has infinitely many points over {self.spec}")
        elems = enumerate_field(self.spec)
        nonzero = [e for e in elems if e]
        pools = [nonzero if i in self.nonzero_params() else elems for i in range(self.param_count())]
        return [self.instance(ps) for ps in iproduct(*pools)]

    def point_count(self) -> int:
        if self.is_explicit:
            return len(self.elements)
        q = self.spec.order
        if q is None:
            raise InfiniteField(f"{self.shape} is infinite over {self.spec}")
        return {"Torus": q - 1, "ScaleFirst": q - 1, "UnipotentLower": q,
                "Borel": q * (q - 1), "Parabolic": q * (q - 1)}[self.shape]

    def sample(self, n: int, seed: int = 0, height: int = 20) -> list[GL2Element]:
        """``n`` seeded instances; over Q-kinds parameters are small random fractions."""
        rng = random.Random(seed)
        if self.is_explicit:
            return [self.elements[rng.randrange(len(self.elements))] for _ in range(n)]
        out = []
        while len(out) < n:
            ps = [random_element(self.spec, rng, height) for _ in range(self.param_count())]
            if any(not ps[i] for i in self.nonzero_params()):
                continue
            out.append(self.instance(ps))
        return out

    def __str__(self) -> str:
        if self.is_explicit:
            body = "{" + ", ".join(str(g) for g in self.elements) + "}"
        else:
            body = "{" + SHAPE_FORMS[self.shape] + "}"
        note = "" if not self.omissions else " omitted: " + "; ".join(self.omissions)
        return f"{self.shape} {body}{note}"


def random_element(spec: FieldSpec, rng: random.Random, height: int = 20) -> FieldElement:
    """Uniform element of a finite field, or a small random fraction (pair) otherwise."""
    if spec.is_finite:
        return spec.from_code(rng.randrange(spec.order))

    def frac():
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    if spec.d:
        return spec.element((frac(), frac()))
    return spec.element(frac())


def is_automorphism(A: MSC, g) -> bool:
    gm = _as_mat2(g, A.spec)
    return bool(det2(gm)) and aut_residual(A, gm).is_zero()


def _codes_to_gl2(spec: FieldSpec, rows: np.ndarray) -> list[GL2Element]:
    elems = enumerate_field(spec)
    return [GL2Element(*(elems[int(k)] for k in r)) for r in rows]


def automorphisms_bruteforce(A: MSC, cap: int | None = None, jobs: int = 1) -> list[GL2Element]:
    """Every g in GL(2, q) with ``g A = A (g (x) g)``, in enumeration order.

    With ``jobs > 1`` the enumeration is split into contiguous index ranges whose
    hits are concatenated in range order, so the result does not depend on ``jobs``.
    """
    G = _vector.gl2_array(A.spec, cap)
    t = _vector.tables(A.spec)
    codes = A.codes()
    if jobs <= 1:
        hits = G[_vector.solve_mask(codes, codes, G, t)]
    else:
        bounds = np.linspace(0, len(G), jobs + 1, dtype=int)
        chunks = [G[lo:hi] for lo, hi in zip(bounds[:-1], bounds[1:])]
        with ThreadPoolExecutor(jobs) as pool:
            parts = list(pool.map(lambda C: C[_vector.solve_mask(codes, codes, C, t)], chunks))
        hits = np.concatenate(parts)
    return _codes_to_gl2(A.spec, hits)


def group_sanity(elems: Sequence[GL2Element]) -> tuple[bool, str | None]:
    """Check identity, closure under products and inverses; ``(ok, witness)``."""
    if not elems:
        return False, "empty set"
    spec = elems[0].spec
    pool = set(elems)
    if GL2Element.identity(spec) not in pool:
        return False, "identity missing"
    for g in elems:
        for h in elems:
            gh = g @ h
            if gh not in pool:
                return False, f"product {g}*{h} = {gh} missing"
    for g in elems:
        gi = g.inverse()
        if gi not in pool:
            return False, f"inverse of {g} missing: {gi}"
    return True, None


@dataclass(frozen=True)
class MatchResult:
    oracle_extra: tuple[GL2Element, ...] = ()
    description_extra: tuple[GL2Element, ...] = ()
    oracle_count: int = 0
    expected_count: int = 0

    @property
    def verdict(self) -> str:
        if self.oracle_extra and self.description_extra:
            return "Mismatch"
        if self.oracle_extra:
            return "OracleExtra"
        if self.description_extra:
            return "DescriptionExtra"
        return "Equal"

    @property
    def equal(self) -> bool:
        return self.verdict == "Equal"


def match_description(elems: Sequence[GL2Element], desc: GroupDescription, spec: FieldSpec | None = None) -> MatchResult:
    """Set-compare an oracle's elements against the description's rational points."""
    spec = spec or desc.spec
    if not spec.is_finite:
        raise InfiniteField("set comparison needs a finite field")
    expected = desc.rational_points()
    got, want = set(elems), set(expected)
    key = GL2Element.key
    return MatchResult(
        oracle_extra=tuple(sorted(got - want, key=key)),
        description_extra=tuple(sorted(want - got, key=key)),
        oracle_count=len(got),
        expected_count=len(want),
    )


def conjugate_group(elems: Iterable[GL2Element], g: GL2Element) -> set[GL2Element]:
    gi = g.inverse()
    return {g @ h @ gi for h in elems}


def gl2_size(spec: FieldSpec) -> int:
    if not spec.is_finite:
        raise InfiniteField(f"{spec} is infinite")
    return gl2_order(spec.order)

"""Canonical two-dimensional algebras and their expected Aut / Der.

Three characteristic classes are covered: characteristic not 2 or 3
(``neq23``, which includes Q and Q(sqrt d)), characteristic 2 (``char2``) and
characteristic 3 (``char3``).  Each class has twelve families ``A1``..``A12``.
The table :data:`FAMILIES` holds, per family, the parameter names, the matrix
and the expected automorphism group and derivation algebra as data builders.
"""

from __future__ import annotations

import enum
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Callable, Mapping, Sequence

from .automorphisms import GroupDescription, random_element
from .derivations import Subspace
from .errors import ArityError, CapExceeded, CharMismatch, InfiniteField
from .fields import FieldElement, FieldSpec, enumerate_field, sqrt
from .msc import MSC


class CharClass(enum.Enum):
    NOT_TWO_THREE = "neq23"
    TWO = "char2"
    THREE = "char3"

    def accepts(self, spec: FieldSpec) -> bool:
        ch = spec.characteristic
        if self is CharClass.TWO:
            return ch == 2
        if self is CharClass.THREE:
            return ch == 3
        return ch not in (2, 3)

    @classmethod
    def of(cls, spec: FieldSpec) -> CharClass:
        return {2: cls.TWO, 3: cls.THREE}.get(spec.characteristic, cls.NOT_TWO_THREE)

    @classmethod
    def parse(cls, text: str) -> CharClass:
        return cls(text.lstrip("@"))


@dataclass(frozen=True)
class FamilyId:
    index: int
    char_class: CharClass

    def __post_init__(self) -> None:
        if not 1 <= self.index <= 12:
            raise ValueError(f"family index {self.index} outside 1..12")

    @property
    def name(self) -> str:
        return f"A{self.index}@{self.char_class.value}"

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> FamilyId:
        """``A3@char2``; a name without suffix is the characteristic-not-2-or-3 family."""
        m = re.fullmatch(r"A(\d+)(@(neq23|char2|char3))?", text.strip())
        if m is None:
            raise ValueError(f"bad family name {text!r}; expected e.g. A3@char2")
        return cls(int(m.group(1)), CharClass(m.group(3) or "neq23"))


Params = Mapping[str, FieldElement]


@dataclass(frozen=True)
class _Family:
    params: tuple[str, ...]
    matrix: Callable[[FieldSpec, Params], list]
    aut: Callable[[FieldSpec, Params], GroupDescription]
    der: Callable[[FieldSpec, Params], Subspace]


# -- small builders -----------------------------------------------------------

def _trivial(s, p):
    return GroupDescription.trivial(s)


def _diag_pm(s, p):
    return GroupDescription.order_two_diag(s)


def _shape(name):
    return lambda s, p: GroupDescription.continuous(name, s)


def _span(*vectors):
    return lambda s, p: Subspace.span(s, vectors)


E11, E12, E21, E22 = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)


def _third(s: FieldSpec) -> FieldElement:
    return s.element(Fraction(1, 3))


def _aut_a11(s: FieldSpec, p) -> GroupDescription:
    """I, diag(-1,1) and four matrices built from 1/2 and sqrt(3)/2."""
    base = [[[1, 0], [0, 1]], [[-1, 0], [0, 1]]]
    r3 = sqrt(s.element(3))
    if not r3:
        return GroupDescription.finite(s, base, ["4 elements need sqrt(3)"])
    h, w = s.element(Fraction(1, 2)), r3 / 2
    extra = [[[h, w], [w, -h]], [[h, -w], [-w, -h]], [[-h, w], [-w, -h]], [[-h, -w], [w, -h]]]
    return GroupDescription.finite(s, base + extra)


def _aut_a11_char2(s, p):
    return GroupDescription.finite(s, [
        [[1, 0], [0, 1]], [[0, 1], [1, 0]], [[0, 1], [1, 1]],
        [[1, 0], [1, 1]], [[1, 1], [1, 0]], [[1, 1], [0, 1]],
    ])


def _aut_pair_lower(name):
    """``{I, [[1,0],[1+x,1]]}`` for the parameter ``name``."""
    return lambda s, p: GroupDescription.finite(s, [[[1, 0], [0, 1]], [[1, 0], [1 + p[name], 1]]])


def _if(cond, then, other):
    return lambda s, p: (then if cond(s, p) else other)(s, p)


def _beta1_zero(s, p):
    return not p["beta1"]


def _a4_special(s, p):
    return p["beta2"] == 2 * p["alpha1"] - 1


def _a8_special(s, p):
    return p["alpha1"] == _third(s)


def _a1_matrix(s, p):
    a1, a2, a4, b1 = p["alpha1"], p["alpha2"], p["alpha4"], p["beta1"]
    return [[a1, a2, a2 + 1, a4], [b1, -a1, -a1 + 1, -a2]]


def _a2_matrix(s, p):
    a1 = p["alpha1"]
    return [[a1, 0, 0, 1], [p["beta1"], p["beta2"], 1 - a1, 0]]


def _a3_matrix(s, p):
    return [[0, 1, 1, 0], [p["beta1"], p["beta2"], 1, -1]]


def _a4_matrix(s, p):
    a1 = p["alpha1"]
    return [[a1, 0, 0, 0], [0, p["beta2"], 1 - a1, 0]]


def _a6_matrix(s, p):
    a1 = p["alpha1"]
    return [[a1, 0, 0, 1], [p["beta1"], 1 - a1, -a1, 0]]


def _a7_matrix(s, p):
    return [[0, 1, 1, 0], [p["beta1"], 1, 0, -1]]


def _a8_matrix(s, p):
    a1 = p["alpha1"]
    return [[a1, 0, 0, 0], [0, 1 - a1, -a1, 0]]


def _const(rows):
    return lambda s, p: rows


A1 = ("alpha1", "alpha2", "alpha4", "beta1")
A2 = ("alpha1", "beta1", "beta2")

_ZERO = _span()
_LOWER_BLOCK = _span(E21, E22)

_COMMON = {
    1: _Family(A1, _a1_matrix, _trivial, _ZERO),
    12: _Family((), _const([[0, 0, 0, 0], [1, 0, 0, 0]]), _shape("Parabolic"), _span((1, 0, 0, 2), E21)),
}

_NEQ23 = {
    2: _Family(A2, _a2_matrix, _if(_beta1_zero, _diag_pm, _trivial), _ZERO),
    3: _Family(("beta1", "beta2"), _a3_matrix, _trivial, _ZERO),
    4: _Family(("alpha1", "beta2"), _a4_matrix,
               _if(_a4_special, _shape("Borel"), _shape("Torus")),
               _if(_a4_special, _LOWER_BLOCK, _span(E22))),
    5: _Family(("alpha1",), lambda s, p: [[p["alpha1"], 0, 0, 0], [1, 2 * p["alpha1"] - 1, 1 - p["alpha1"], 0]],
               _shape("UnipotentLower"), _span(E21)),
    6: _Family(("alpha1", "beta1"), _a6_matrix, _if(_beta1_zero, _diag_pm, _trivial), _ZERO),
    7: _Family(("beta1",), _a7_matrix, _trivial, _ZERO),
    8: _Family(("alpha1",), _a8_matrix,
               _if(_a8_special, _shape("Borel"), _shape("Torus")),
               _if(_a8_special, _LOWER_BLOCK, _span(E22))),
    9: _Family((), lambda s, p: [[_third(s), 0, 0, 0], [1, 2 * _third(s), -_third(s), 0]],
               _shape("UnipotentLower"), _span(E21)),
    10: _Family((), _const([[0, 1, 1, 0], [0, 0, 0, -1]]), _shape("ScaleFirst"), _span(E11)),
    11: _Family((), _const([[0, 1, 1, 0], [1, 0, 0, -1]]), _aut_a11, _ZERO),
}


def _is_one(name):
    return lambda s, p: p[name] == 1


_CHAR2 = {
    2: _Family(A2, _a2_matrix, _trivial, _if(_beta1_zero, _span(E22), _ZERO)),
    3: _Family(("alpha1", "beta2"),
               lambda s, p: [[p["alpha1"], 1, 1, 0], [0, p["beta2"], 1 - p["alpha1"], 1]],
               _aut_pair_lower("beta2"), _if(_is_one("beta2"), _span(E21), _ZERO)),
    4: _Family(("alpha1", "beta2"), _a4_matrix,
               _if(_is_one("beta2"), _shape("Borel"), _shape("Torus")),
               _if(_is_one("beta2"), _LOWER_BLOCK, _span(E22))),
    5: _Family(("alpha1",), lambda s, p: [[p["alpha1"], 0, 0, 0], [1, 1, 1 - p["alpha1"], 0]],
               _shape("UnipotentLower"), _span(E21)),
    6: _Family(("alpha1", "beta1"), _a6_matrix, _trivial, _if(_beta1_zero, _span(E22), _ZERO)),
    7: _Family(("alpha1",),
               lambda s, p: [[p["alpha1"], 1, 1, 0], [0, 1 - p["alpha1"], -p["alpha1"], -1]],
               _aut_pair_lower("alpha1"), _if(_is_one("alpha1"), _span(E21), _ZERO)),
    8: _Family(("alpha1",), _a8_matrix,
               _if(_is_one("alpha1"), _shape("Borel"), _shape("Torus")),
               _if(_is_one("alpha1"), _LOWER_BLOCK, _span(E22))),
    9: _Family((), _const([[1, 0, 0, 0], [1, 0, 1, 0]]), _shape("UnipotentLower"), _span(E21)),
    10: _Family((), _const([[0, 1, 1, 0], [0, 0, 0, -1]]), _shape("ScaleFirst"), _span(E11, E21)),
    11: _Family((), _const([[1, 1, 1, 0], [0, -1, -1, -1]]), _aut_a11_char2, _ZERO),
    12: _Family((), _const([[0, 0, 0, 0], [1, 0, 0, 0]]), _shape("Parabolic"), _span(E11, E21)),
}

_CHAR3 = {
    2: _NEQ23[2],
    3: _NEQ23[3],
    4: _NEQ23[4],
    5: _Family(("alpha1",), lambda s, p: [[p["alpha1"], 0, 0, 0], [1, -1 - p["alpha1"], 1 - p["alpha1"], 0]],
               _shape("UnipotentLower"), _span(E21)),
    6: _NEQ23[6],
    7: _NEQ23[7],
    8: _Family(("alpha1",), _a8_matrix, _shape("Torus"), _span(E22)),
    9: _Family((), _const([[0, 1, 1, 0], [1, 0, 0, -1]]), _shape("UnipotentLower"), _span((0, 2, 1, 0))),
    10: _Family((), _const([[0, 1, 1, 0], [0, 0, 0, -1]]), _shape("ScaleFirst"), _span(E11, E12)),
    11: _Family((), _const([[1, 0, 0, 0], [1, -1, -1, 0]]), _shape("UnipotentLower"), _span(E21)),
}

FAMILIES: dict[FamilyId, _Family] = {}
for _cc, _table in ((CharClass.NOT_TWO_THREE, _NEQ23), (CharClass.TWO, _CHAR2), (CharClass.THREE, _CHAR3)):
    for _i in range(1, 13):
        FAMILIES[FamilyId(_i, _cc)] = _table.get(_i) or _COMMON[_i]


def families(char_class: CharClass) -> list[FamilyId]:
    return [FamilyId(i, char_class) for i in range(1, 13)]


def param_names(fam: FamilyId) -> tuple[str, ...]:
    return FAMILIES[fam].params


def arity(fam: FamilyId) -> int:
    return len(FAMILIES[fam].params)


def _bind(fam: FamilyId, params, spec: FieldSpec) -> dict[str, FieldElement]:
    if not fam.char_class.accepts(spec):
        raise CharMismatch(f"{fam} needs {fam.char_class.value}, got {spec} (char {spec.characteristic})")
    names = FAMILIES[fam].params
    if params is None:
        params = ()
    if isinstance(params, Mapping):
        if set(params) != set(names):
            raise ArityError(f"{fam} takes parameters {names}, got {tuple(params)}")
        return {k: spec.element(params[k]) for k in names}
    params = tuple(params)
    if len(params) != len(names):
        raise ArityError(f"{fam} takes {len(names)} parameters {names}, got {len(params)}")
    return {k: spec.element(v) for k, v in zip(names, params)}


def build(fam: FamilyId, params: Sequence | Mapping | None, spec: FieldSpec) -> MSC:
    p = _bind(fam, params, spec)
    return MSC(spec, FAMILIES[fam].matrix(spec, p))


def expected_aut(fam: FamilyId, params: Sequence | Mapping | None, spec: FieldSpec) -> GroupDescription:
    p = _bind(fam, params, spec)
    return FAMILIES[fam].aut(spec, p)


def expected_der(fam: FamilyId, params: Sequence | Mapping | None, spec: FieldSpec) -> Subspace:
    p = _bind(fam, params, spec)
    return FAMILIES[fam].der(spec, p)


def param_sampler(fam: FamilyId, spec: FieldSpec, mode: str = "exhaustive", n: int = 0,
                  seed: int = 0, budget: int = 10**6) -> list[tuple[FieldElement, ...]]:
    """Parameter tuples for ``fam``: ``exhaustive`` (all ``q**arity``) or ``random`` (``n`` seeded)."""
    k = arity(fam)
    if mode == "exhaustive":
        if not spec.is_finite:
            raise InfiniteField(f"cannot sweep parameters exhaustively over {spec}")
        if spec.order ** k > budget:
            raise CapExceeded(f"{spec.order}^{k} parameter tuples exceed budget {budget}")
        return list(iproduct(enumerate_field(spec), repeat=k))
    if mode == "random":
        rng = random.Random(f"{seed}:{fam}:{spec}")
        return [tuple(random_element(spec, rng) for _ in range(k)) for _ in range(n)]
    raise ValueError(f"unknown sampling mode {mode!r}")


def twin(fam: FamilyId, params: Sequence, spec: FieldSpec) -> tuple[FieldElement, ...]:
    """The parameter tuple with ``beta1`` negated (families A2 and A6)."""
    names = param_names(fam)
    if "beta1" not in names or fam.index not in (2, 6):
        raise ValueError(f"{fam} has no beta1 twin")
    p = list(spec.element(x) for x in params)
    i = names.index("beta1")
    p[i] = -p[i]
    return tuple(p)


def format_params(params: Sequence) -> str:
    return "(" + ",".join(str(x) for x in params) + ")"

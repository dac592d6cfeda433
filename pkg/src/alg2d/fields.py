"""Exact arithmetic over Q, Q(sqrt d), GF(p) and GF(p^2).

Every element carries its :class:`FieldSpec` and a canonical value:

* ``Q``         -- a :class:`fractions.Fraction`
* ``Q(sqrt d)`` -- a pair ``(a, b)`` of fractions meaning ``a + b*r`` with ``r**2 = d``
* ``GF(p)``     -- a residue in ``[0, p)``
* ``GF(p^2,n)`` -- a pair ``(a, b)`` of residues meaning ``a + b*r`` with ``r**2 = n``
  (for ``p = 2`` the modulus is ``r**2 = r + 1`` instead)

Finite-field elements have an integer *code* (``a`` or ``a + b*p``) which fixes
the enumeration order and the square-root tie-break.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from sympy import isprime

from ._text import Scanner
from .errors import DivisionByZero, InfiniteField, SpecMismatch


class FieldKind(enum.Enum):
    RATIONALS = "Q"
    QUAD_RATIONALS = "Q(sqrt d)"
    PRIME = "GF(p)"
    QUAD_EXT = "GF(p^2)"


def _squarefree(d: int) -> bool:
    d = abs(d)
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def legendre(x: int, p: int) -> int:
    """Euler's criterion for odd ``p``: 1, -1 (as ``p - 1``) or 0."""
    r = pow(x % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def smallest_nonresidue(p: int) -> int:
    """Smallest quadratic non-residue mod an odd prime ``p`` (1 for ``p = 2``)."""
    if p == 2:
        return 1
    n = 2
    while legendre(n, p) != -1:
        n += 1
    return n


@dataclass(frozen=True)
class FieldSpec:
    kind: FieldKind
    p: int = 0
    d: int = 0
    n: int = 0
    _ops: object = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        if self.kind is FieldKind.QUAD_RATIONALS:
            if self.d in (0, 1) or not _squarefree(self.d):
                raise ValueError(f"Q(sqrt {self.d}): d must be squarefree and not 0 or 1")
            ops = _QuadRationalOps(self.d)
        elif self.kind is FieldKind.RATIONALS:
            ops = _RationalOps()
        else:
            if not (2 <= self.p < 2**31 and isprime(self.p)):
                raise ValueError(f"p = {self.p} is not a prime below 2**31")
            if self.kind is FieldKind.PRIME:
                ops = _PrimeOps(self.p)
            else:
                if self.p == 2:
                    if self.n != 1:
                        raise ValueError("GF(2^2) is built as r^2 = r + 1; pass n = 1")
                elif legendre(self.n, self.p) != -1:
                    raise ValueError(f"{self.n} is not a quadratic non-residue mod {self.p}")
                ops = _QuadExtOps(self.p, self.n % self.p if self.p != 2 else 1)
        object.__setattr__(self, "_ops", ops)

    # -- queries ---------------------------------------------------------
    @property
    def characteristic(self) -> int:
        return self.p if self.is_finite else 0

    @property
    def is_finite(self) -> bool:
        return self.kind in (FieldKind.PRIME, FieldKind.QUAD_EXT)

    @property
    def order(self) -> int | None:
        if self.kind is FieldKind.PRIME:
            return self.p
        if self.kind is FieldKind.QUAD_EXT:
            return self.p * self.p
        return None

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, self._ops.zero)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, self._ops.one)

    def __str__(self) -> str:
        if self.kind is FieldKind.RATIONALS:
            return "Q"
        if self.kind is FieldKind.QUAD_RATIONALS:
            return f"Q(sqrt {self.d})"
        if self.kind is FieldKind.PRIME:
            return f"GF({self.p})"
        return f"GF({self.p}^2,{self.n})"

    # -- element construction -------------------------------------------
    def __call__(self, x) -> FieldElement:
        return self.element(x)

    def element(self, x) -> FieldElement:
        """Coerce an int, Fraction, pair ``(a, b)``, string or element into this field."""
        if isinstance(x, FieldElement):
            if x.spec is not self and x.spec != self:
                raise SpecMismatch(f"element of {x.spec} used in {self}")
            return x
        if isinstance(x, str):
            return parse_element(x, self)
        if isinstance(x, tuple):
            a, b = x
            return FieldElement(self, self._ops.pair(a, b))
        return FieldElement(self, self._ops.coerce(x))

    def from_code(self, code: int) -> FieldElement:
        if not self.is_finite:
            raise InfiniteField(f"{self} has no element codes")
        return FieldElement(self, self._ops.from_code(code))

    def elements(self) -> list[FieldElement]:
        return enumerate_field(self)

    def root(self) -> FieldElement:
        """The adjoined root ``r`` of a quadratic field."""
        if self.kind not in (FieldKind.QUAD_RATIONALS, FieldKind.QUAD_EXT):
            raise ValueError(f"{self} has no adjoined root")
        return self.element((0, 1))


def Rationals() -> FieldSpec:
    return FieldSpec(FieldKind.RATIONALS)


def QuadRationals(d: int) -> FieldSpec:
    return FieldSpec(FieldKind.QUAD_RATIONALS, d=d)


def PrimeField(p: int) -> FieldSpec:
    return FieldSpec(FieldKind.PRIME, p=p)


def QuadExtField(p: int, n: int | None = None) -> FieldSpec:
    if n is None:
        n = smallest_nonresidue(p)
    return FieldSpec(FieldKind.QUAD_EXT, p=p, n=n)


def GF(q: int) -> FieldSpec:
    """Shorthand: ``GF(7)``, or ``GF(9)`` / ``GF(4)`` with the smallest non-residue."""
    if isprime(q):
        return PrimeField(q)
    p = math.isqrt(q)
    if p * p == q and isprime(p):
        return QuadExtField(p)
    raise ValueError(f"only prime and prime-squared orders are supported, got {q}")


# -- arithmetic backends ------------------------------------------------------

class _RationalOps:
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        return Fraction(x)

    def pair(self, a, b):
        raise TypeError("Q elements are not pairs")

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def inv(self, x):
        if not x:
            raise DivisionByZero("inverse of 0")
        return 1 / x

    def is_zero(self, x):
        return x == 0

    def fmt(self, x):
        return str(x)


class _QuadRationalOps:
    def __init__(self, d: int):
        self.d = d
        self.zero = (Fraction(0), Fraction(0))
        self.one = (Fraction(1), Fraction(0))

    def coerce(self, x):
        return (Fraction(x), Fraction(0))

    def pair(self, a, b):
        return (Fraction(a), Fraction(b))

    def add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def sub(self, x, y):
        return (x[0] - y[0], x[1] - y[1])

    def mul(self, x, y):
        return (x[0] * y[0] + self.d * x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def neg(self, x):
        return (-x[0], -x[1])

    def inv(self, x):
        norm = x[0] * x[0] - self.d * x[1] * x[1]
        if norm == 0:
            raise DivisionByZero("inverse of 0")
        return (x[0] / norm, -x[1] / norm)

    def is_zero(self, x):
        return x[0] == 0 and x[1] == 0

    def fmt(self, x):
        return _fmt_pair(str(x[0]), x[1], x[0] == 0, x[1] == 0, x[1] < 0)


class _PrimeOps:
    def __init__(self, p: int):
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"denominator {x.denominator} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def pair(self, a, b):
        raise TypeError("GF(p) elements are not pairs")

    def from_code(self, code):
        if not 0 <= code < self.p:
            raise ValueError(f"code {code} out of range for GF({self.p})")
        return code

    def code(self, x):
        return x

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return x * y % self.p

    def neg(self, x):
        return -x % self.p

    def inv(self, x):
        if x == 0:
            raise DivisionByZero("inverse of 0")
        return pow(x, -1, self.p)

    def is_zero(self, x):
        return x == 0

    def fmt(self, x):
        return str(x)


class _QuadExtOps:
    """GF(p)[r]/(r^2 - s*r - m); s = 0, m = n for odd p and s = m = 1 for p = 2."""

    def __init__(self, p: int, n: int):
        self.p = p
        self.s, self.m = (1, 1) if p == 2 else (0, n)
        self.zero = (0, 0)
        self.one = (1, 0)
        self._base = _PrimeOps(p)

    def coerce(self, x):
        return (self._base.coerce(x), 0)

    def pair(self, a, b):
        return (self._base.coerce(a), self._base.coerce(b))

    def from_code(self, code):
        if not 0 <= code < self.p * self.p:
            raise ValueError(f"code {code} out of range for GF({self.p}^2)")
        return (code % self.p, code // self.p)

    def code(self, x):
        return x[0] + x[1] * self.p

    def add(self, x, y):
        p = self.p
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p)

    def sub(self, x, y):
        p = self.p
        return ((x[0] - y[0]) % p, (x[1] - y[1]) % p)

    def mul(self, x, y):
        p = self.p
        bb = x[1] * y[1]
        return ((x[0] * y[0] + self.m * bb) % p, (x[0] * y[1] + x[1] * y[0] + self.s * bb) % p)

    def neg(self, x):
        return (-x[0] % self.p, -x[1] % self.p)

    def inv(self, x):
        if x == (0, 0):
            raise DivisionByZero("inverse of 0")
        # conjugate r -> s - r; the norm lands in GF(p)
        conj = ((x[0] + x[1] * self.s) % self.p, -x[1] % self.p)
        norm = self.mul(x, conj)[0]
        k = pow(norm, -1, self.p)
        return (conj[0] * k % self.p, conj[1] * k % self.p)

    def is_zero(self, x):
        return x == (0, 0)

    def fmt(self, x):
        return _fmt_pair(str(x[0]), x[1], x[0] == 0, x[1] == 0, False)


def _fmt_pair(a: str, b, a_zero: bool, b_zero: bool, b_neg: bool) -> str:
    if b_zero:
        return a
    coef = str(-b if b_neg else b)
    term = "r" if coef == "1" else f"{coef}*r"
    if a_zero:
        return f"-{term}" if b_neg else term
    return f"{a}{'-' if b_neg else '+'}{term}"


# -- elements -----------------------------------------------------------------

class _NotASquare:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "NotASquare"


NOT_A_SQUARE = _NotASquare()


class FieldElement:
    """Immutable field element; arithmetic operators accept ints on either side."""

    __slots__ = ("spec", "v")

    def __init__(self, spec: FieldSpec, v):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "v", v)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, y) -> object:
        if isinstance(y, FieldElement):
            if y.spec is not self.spec and y.spec != self.spec:
                raise SpecMismatch(f"{self.spec} vs {y.spec}")
            return y.v
        if isinstance(y, (int, Fraction)):
            return self.spec._ops.coerce(y)
        return NotImplemented

    def __add__(self, y):
        w = self._other(y)
        if w is NotImplemented:
            return w
        return FieldElement(self.spec, self.spec._ops.add(self.v, w))

    __radd__ = __add__

    def __sub__(self, y):
        w = self._other(y)
        if w is NotImplemented:
            return w
        return FieldElement(self.spec, self.spec._ops.sub(self.v, w))

    def __rsub__(self, y):
        w = self._other(y)
        if w is NotImplemented:
            return w
        return FieldElement(self.spec, self.spec._ops.sub(w, self.v))

    def __mul__(self, y):
        w = self._other(y)
        if w is NotImplemented:
            return w
        return FieldElement(self.spec, self.spec._ops.mul(self.v, w))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.spec, self.spec._ops.neg(self.v))

    def inverse(self) -> FieldElement:
        return FieldElement(self.spec, self.spec._ops.inv(self.v))

    def __truediv__(self, y):
        w = self._other(y)
        if w is NotImplemented:
            return w
        ops = self.spec._ops
        return FieldElement(self.spec, ops.mul(self.v, ops.inv(w)))

    def __rtruediv__(self, y):
        return self.inverse() * y

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** -k
        result, base = self.spec.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, y):
        if isinstance(y, FieldElement):
            return self.v == y.v and self.spec == y.spec
        if isinstance(y, (int, Fraction)):
            try:
                return self.v == self.spec._ops.coerce(y)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.kind, self.spec.p, self.spec.d, self.v))

    def __bool__(self):
        return not self.spec._ops.is_zero(self.v)

    @property
    def code(self) -> int:
        """Canonical integer encoding (finite fields only)."""
        if not self.spec.is_finite:
            raise InfiniteField(f"{self.spec} has no element codes")
        return self.spec._ops.code(self.v)

    def sqrt(self):
        return sqrt(self)

    def __str__(self):
        return self.spec._ops.fmt(self.v)

    def __repr__(self):
        return f"FieldElement({self.spec}, {self})"


# -- module-level operations --------------------------------------------------

def arith(op: str, x: FieldElement, y: FieldElement | None = None) -> FieldElement:
    """Apply ``add``, ``sub``, ``mul`` or ``neg`` (``y`` ignored for ``neg``)."""
    if op == "neg":
        return -x
    if not isinstance(y, FieldElement) or y.spec != x.spec:
        raise SpecMismatch(f"{op}: operands over different fields")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def characteristic(spec: FieldSpec) -> int:
    return spec.characteristic


@lru_cache(maxsize=64)
def _enumerate(spec: FieldSpec) -> tuple[FieldElement, ...]:
    return tuple(spec.from_code(k) for k in range(spec.order))


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    """All elements of a finite field in ascending code order."""
    if not spec.is_finite:
        raise InfiniteField(f"cannot enumerate {spec}")
    return list(_enumerate(spec))


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def _finite_sqrt(x: FieldElement):
    spec = x.spec
    q = spec.order
    if not x:
        return x
    if q % 2 == 0:
        # Frobenius is bijective in characteristic 2
        return x ** (q // 2)
    if x ** ((q - 1) // 2) != 1:
        return NOT_A_SQUARE
    # Tonelli-Shanks
    Q, S = q - 1, 0
    while Q % 2 == 0:
        Q //= 2
        S += 1
    z = next(e for e in _enumerate(spec)[2:] if e ** ((q - 1) // 2) == -1)
    M, c, t, R = S, z ** Q, x ** Q, x ** ((Q + 1) // 2)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2
            i += 1
        b = c ** (2 ** (M - i - 1))
        M, c, t, R = i, b * b, t * b * b, R * b
    return R


def sqrt(x: FieldElement):
    """Canonical square root, or ``NOT_A_SQUARE``.

    Finite fields pick the root with the smaller code; Q and Q(sqrt d) pick the
    root whose leading non-zero fraction is positive.
    """
    spec = x.spec
    if spec.is_finite:
        r = _finite_sqrt(x)
        if r is NOT_A_SQUARE:
            return r
        return min(r, -r, key=lambda e: e.code)
    if spec.kind is FieldKind.RATIONALS:
        r = _rational_sqrt(x.v)
        return NOT_A_SQUARE if r is None else FieldElement(spec, r)
    a, b = x.v
    d = spec.d
    if b == 0:
        r = _rational_sqrt(a)
        if r is not None:
            return FieldElement(spec, (r, Fraction(0)))
        s = _rational_sqrt(a / d)
        if s is not None:
            return FieldElement(spec, (Fraction(0), s))
        return NOT_A_SQUARE
    # (u + v r)^2 = a + b r  =>  u^2 = (a +- sqrt(a^2 - d b^2)) / 2, v = b / (2u)
    norm_root = _rational_sqrt(a * a - d * b * b)
    if norm_root is None:
        return NOT_A_SQUARE
    for u2 in ((a + norm_root) / 2, (a - norm_root) / 2):
        u = _rational_sqrt(u2)
        if u:
            return FieldElement(spec, (u, b / (2 * u)))
    return NOT_A_SQUARE


# -- text grammar -------------------------------------------------------------

def parse_field_spec(text: str) -> FieldSpec:
    """Parse ``Q``, ``Q(sqrt D)``, ``GF(P)`` or ``GF(P^2,N)``."""
    sc = Scanner(text)
    spec = _scan_field_spec(sc)
    sc.expect_end()
    return spec


def _scan_field_spec(sc: Scanner) -> FieldSpec:
    start = sc.pos
    try:
        if sc.accept("GF"):
            sc.expect("(")
            p = sc.integer()
            if sc.accept("^"):
                if sc.integer() != 2:
                    sc.fail("only GF(P^2,N) extensions are supported")
                sc.expect(",")
                n = sc.integer()
                sc.expect(")")
                return QuadExtField(p, n)
            sc.expect(")")
            return PrimeField(p)
        if sc.accept("Q"):
            if sc.accept("("):
                sc.expect("sqrt")
                neg = sc.accept("-")
                d = sc.integer()
                sc.expect(")")
                return QuadRationals(-d if neg else d)
            return Rationals()
    except ValueError as exc:
        if exc.__class__ is ValueError:
            sc.pos = start
            sc.fail(str(exc))
        raise
    sc.fail("expected field spec Q, Q(sqrt D), GF(P) or GF(P^2,N)")


def _scan_rational(sc: Scanner) -> Fraction:
    num = sc.integer()
    if sc.accept("/"):
        den = sc.integer()
        if den == 0:
            sc.fail("zero denominator")
        return Fraction(num, den)
    return Fraction(num)


def _scan_term(sc: Scanner) -> tuple[Fraction, bool]:
    """One signless term: ``c``, ``c*r``, ``r``. Returns (coefficient, has_root)."""
    if sc.peek() == "r":
        sc.pos += 1
        return Fraction(1), True
    c = _scan_rational(sc)
    if sc.accept("*"):
        sc.expect("r")
        return c, True
    return c, False


def _scan_element(sc: Scanner, spec: FieldSpec) -> FieldElement:
    start = sc.pos
    parts = [Fraction(0), Fraction(0)]
    seen = [False, False]
    sign = -1 if sc.accept("-") else 1
    while True:
        coef, root = _scan_term(sc)
        if seen[root]:
            sc.fail("repeated term in element")
        seen[root] = True
        parts[root] = sign * coef
        if sc.accept("+"):
            sign = 1
        elif sc.accept("-"):
            sign = -1
        else:
            break
    try:
        if seen[1]:
            if spec.kind not in (FieldKind.QUAD_RATIONALS, FieldKind.QUAD_EXT):
                sc.pos = start
                sc.fail(f"root symbol r is not defined in {spec}")
            return spec.element((parts[0], parts[1]))
        return spec.element(parts[0])
    except DivisionByZero as exc:
        sc.pos = start
        sc.fail(str(exc))


def parse_element(text: str, spec: FieldSpec) -> FieldElement:
    """Parse ``a``, ``a/b`` or ``a+b*r`` (whitespace-insensitive)."""
    sc = Scanner(text)
    x = _scan_element(sc, spec)
    sc.expect_end()
    return x


def format_element(x: FieldElement) -> str:
    return str(x)

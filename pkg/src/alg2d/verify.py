"""Verification campaigns: oracle results against the catalog, cell by cell.

Every campaign returns a :class:`Report`: one text line per cell plus a
structured summary.  A report passes iff no non-quarantined cell failed.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .automorphisms import automorphisms_bruteforce, group_sanity, match_description, random_element
from .catalog import (
    CharClass, FamilyId, arity, build, expected_aut, expected_der, families, format_params,
    param_names, param_sampler, twin,
)
from .derivations import derivations, lie_closed, subspace_equal
from .errors import CharMismatch, InfiniteField
from .fields import FieldSpec, GF
from .isomorphism import find_isomorphism, orbit_size
from .linalg import GL2Element, gl2_order
from .msc import MSC, transform

EXHAUSTIVE_LIMIT = 10**4
DEFAULT_SAMPLES = 200

DEFAULT_FIELDS = {
    CharClass.NOT_TWO_THREE: (GF(5), GF(7)),
    CharClass.TWO: (GF(2), GF(4)),
    CharClass.THREE: (GF(3), GF(9)),
}


@dataclass(frozen=True)
class Quarantine:
    family: FamilyId
    param: str
    value: int
    reason: str

    def applies(self, fam: FamilyId, params: Sequence) -> bool:
        if fam != self.family:
            return False
        return params[param_names(fam).index(self.param)] == self.value

    def __str__(self) -> str:
        return f"{self.family} {self.param}={self.value}: {self.reason}"


QUARANTINE = (
    Quarantine(FamilyId(3, CharClass.TWO), "beta2", 1,
               "listed group {I, [[1,0],[1+beta2,1]]} collapses to {I} while Der is 1-dimensional"),
    Quarantine(FamilyId(7, CharClass.TWO), "alpha1", 1,
               "listed group {I, [[1,0],[1+alpha1,1]]} collapses to {I} while Der is 1-dimensional"),
)


def quarantine_for(fam: FamilyId, params: Sequence) -> Quarantine | None:
    return next((q for q in QUARANTINE if q.applies(fam, params)), None)


@dataclass(frozen=True)
class Sampling:
    """``auto`` sweeps exhaustively when ``q**arity <= 10**4``, else draws ``n`` seeded tuples."""

    mode: str = "auto"
    n: int = DEFAULT_SAMPLES
    seed: int = 0
    overrides: tuple[tuple[FieldSpec, Sampling], ...] = ()

    def for_field(self, spec: FieldSpec) -> Sampling:
        return next((s for f, s in self.overrides if f == spec), self)

    def params(self, fam: FamilyId, spec: FieldSpec) -> list[tuple]:
        s = self.for_field(spec)
        mode = s.mode
        if mode == "auto":
            mode = "exhaustive" if spec.order ** arity(fam) <= EXHAUSTIVE_LIMIT else "random"
        if mode == "exhaustive":
            return param_sampler(fam, spec, "exhaustive", budget=EXHAUSTIVE_LIMIT * 100)
        if arity(fam) == 0:
            return [()]
        return param_sampler(fam, spec, "random", n=s.n, seed=s.seed)


# The campaign over GF(9) samples automorphism cells rather than sweeping them.
DEFAULT_AUT_SAMPLING = Sampling(overrides=((GF(9), Sampling("random")),))


@dataclass
class Cell:
    kind: str
    family: str
    params: str
    field: str
    oracle: str
    expected: str
    verdict: str
    ok: bool
    quarantine: str | None = None
    note: str | None = None

    @property
    def counts(self) -> bool:
        """Whether this cell enters pass/fail aggregation."""
        return self.quarantine is None

    def line(self) -> str:
        parts = [self.kind, self.family, self.params, self.field,
                 f"oracle={self.oracle}", f"expected={self.expected}", f"verdict={self.verdict}"]
        if self.quarantine is not None:
            parts.append("quarantined")
        if self.note:
            parts.append(f"note={self.note}")
        return " ".join(parts)


@dataclass
class Report:
    title: str
    cells: list[Cell] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def failures(self) -> list[Cell]:
        return [c for c in self.cells if c.counts and not c.ok]

    @property
    def quarantined(self) -> list[Cell]:
        return [c for c in self.cells if not c.counts]

    @property
    def passed(self) -> bool:
        return not self.failures

    def extend(self, other: Report) -> Report:
        self.cells.extend(other.cells)
        self.notes.extend(other.notes)
        for k, v in other.info.items():
            self.info[f"{other.title}.{k}"] = v
        return self

    def text(self, flagged_only: bool = False) -> str:
        """Cell lines, notes and a summary line; ``flagged_only`` keeps failed or quarantined cells."""
        out = [c.line() for c in self.cells if not flagged_only or not c.ok or not c.counts]
        out += [f"NOTE {n}" for n in self.notes]
        out.append(f"SUMMARY {self.title} cells={len(self.cells)} failures={len(self.failures)} "
                   f"quarantined={len(self.quarantined)} status={'PASS' if self.passed else 'FAIL'}")
        return "\n".join(out)

    def summary(self) -> dict:
        return {
            "title": self.title,
            "cells": len(self.cells),
            "passed": self.passed,
            "failures": [c.line() for c in self.failures],
            "quarantined": [c.line() for c in self.quarantined],
            "notes": list(self.notes),
            "info": dict(self.info),
        }

    def json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True)


def _run(work: Sequence[Callable[[], Cell]], jobs: int) -> list[Cell]:
    if jobs <= 1:
        return [w() for w in work]
    with ThreadPoolExecutor(jobs) as pool:
        return list(pool.map(lambda w: w(), work))


def _check_fields(char_class: CharClass, fields: Iterable[FieldSpec]) -> list[FieldSpec]:
    fields = list(fields)
    for f in fields:
        if not f.is_finite:
            raise InfiniteField(f"table verification needs finite fields, got {f}")
        if not char_class.accepts(f):
            raise CharMismatch(f"{f} does not belong to {char_class.value}")
    return fields


def _aut_cell(fam: FamilyId, params: tuple, spec: FieldSpec) -> Cell:
    A = build(fam, params, spec)
    desc = expected_aut(fam, params, spec)
    elems = automorphisms_bruteforce(A)
    res = match_description(elems, desc)
    ok = res.equal and group_sanity(elems)[0]
    q = quarantine_for(fam, params)
    note = "; ".join(desc.omissions) or None
    if not res.equal:
        extra = [f"oracle_extra={len(res.oracle_extra)}", f"description_extra={len(res.description_extra)}"]
        note = ",".join(extra) + (f"; {note}" if note else "")
    if q is not None:
        note = f"der_dim={derivations(A).dim}" + (f"; {note}" if note else "")
    return Cell("AUT", fam.name, format_params(params), str(spec), str(res.oracle_count),
                str(res.expected_count), res.verdict, ok, q and str(q), note)


def verify_aut_tables(char_class: CharClass, fields: Iterable[FieldSpec],
                      sampling: Sampling = Sampling(), jobs: int = 1) -> Report:
    fields = _check_fields(char_class, fields)
    work = [
        (lambda f=fam, p=p, s=spec: _aut_cell(f, p, s))
        for spec in fields for fam in families(char_class) for p in sampling.params(fam, spec)
    ]
    rep = Report(f"aut.{char_class.value}", _run(work, jobs))
    rep.notes += [f"quarantine {q}" for q in QUARANTINE if q.family.char_class is char_class]
    return rep


def _der_cell(fam: FamilyId, params: tuple, spec: FieldSpec) -> Cell:
    A = build(fam, params, spec)
    got, want = derivations(A), expected_der(fam, params, spec)
    closed, _ = lie_closed(got)
    equal = subspace_equal(got, want)
    verdict = "Equal" if equal else "Differ"
    note = None if closed else "not closed under commutators"
    return Cell("DER", fam.name, format_params(params), str(spec), f"dim{got.dim}",
                f"dim{want.dim}", verdict, equal and closed, None, note)


def verify_der_tables(char_class: CharClass, fields: Iterable[FieldSpec],
                      sampling: Sampling = Sampling(), jobs: int = 1) -> Report:
    fields = _check_fields(char_class, fields)
    work = [
        (lambda f=fam, p=p, s=spec: _der_cell(f, p, s))
        for spec in fields for fam in families(char_class) for p in sampling.params(fam, spec)
    ]
    return Report(f"der.{char_class.value}", _run(work, jobs))


def random_msc(spec: FieldSpec, rng: random.Random) -> MSC:
    return MSC(spec, [[random_element(spec, rng) for _ in range(4)] for _ in range(2)])


def verify_genericity(spec: FieldSpec, n: int = 100, seed: int = 0) -> Report:
    """Every sampled A1 cell has Aut = {I} and Der = {0}; the rate for random MSCs is informational."""
    if not spec.is_finite:
        raise InfiniteField(f"genericity sampling needs a finite field, got {spec}")
    fam = FamilyId(1, CharClass.of(spec))
    if spec.order ** 4 <= n:
        tuples = param_sampler(fam, spec, "exhaustive")
    else:
        tuples = param_sampler(fam, spec, "random", n=n, seed=seed)
    rep = Report(f"genericity.{spec}")
    identity = [GL2Element.identity(spec)]
    for p in tuples:
        A = build(fam, p, spec)
        aut = automorphisms_bruteforce(A)
        dim = derivations(A).dim
        ok = aut == identity and dim == 0
        rep.cells.append(Cell("GEN", fam.name, format_params(p), str(spec), f"aut{len(aut)},der{dim}",
                              "aut1,der0", "Trivial" if ok else "NonTrivial", ok))
    rng = random.Random(f"{seed}:random-msc:{spec}")
    trivial = 0
    for _ in range(n):
        A = random_msc(spec, rng)
        if len(automorphisms_bruteforce(A)) == 1 and derivations(A).dim == 0:
            trivial += 1
    rep.info = {"a1_cells": len(tuples), "random_msc": n, "random_trivial": trivial,
                "random_trivial_fraction": trivial / n if n else 0.0}
    rep.notes.append(f"random MSCs over {spec}: {trivial}/{n} have trivial Aut and Der")
    return rep


def _twin_params(fam: FamilyId, spec: FieldSpec, rng: random.Random) -> tuple:
    i = param_names(fam).index("beta1")
    while True:
        p = tuple(random_element(spec, rng) for _ in range(arity(fam)))
        if p[i]:
            return p


def verify_twins(fields: Iterable[FieldSpec], n: int = 20, seed: int = 0) -> Report:
    """A2 and A6 with beta1 and -beta1 are isomorphic; a witness is searched for each tuple."""
    rep = Report("twins")
    for spec in fields:
        cc = CharClass.of(spec)
        if cc is CharClass.TWO:
            rep.notes.append(f"{spec}: beta1 = -beta1 in characteristic 2, twins coincide")
            continue
        for idx in (2, 6):
            fam = FamilyId(idx, cc)
            rng = random.Random(f"{seed}:twin:{fam}:{spec}")
            for _ in range(n):
                p = _twin_params(fam, spec, rng)
                A, B = build(fam, p, spec), build(fam, twin(fam, p, spec), spec)
                g = find_isomorphism(A, B)
                ok = g is not None and transform(A, g) == B
                rep.cells.append(Cell("TWIN", fam.name, format_params(p), str(spec),
                                      f"witness={g}" if g else "none", "witness",
                                      "Isomorphic" if ok else "NotFound", ok))
    return rep


def _is_twin_pair(a: tuple, b: tuple, spec: FieldSpec) -> bool:
    (fa, pa), (fb, pb) = a, b
    return fa == fb and fa.index in (2, 6) and twin(fa, pa, spec) == tuple(pb)


def verify_distinct(spec: FieldSpec, pairs: int = 30, seed: int = 0) -> Report:
    """Sampled pairs of distinct catalog cells (twins excluded) are not isomorphic."""
    cc = CharClass.of(spec)
    rng = random.Random(f"{seed}:distinct:{spec}")
    fams = families(cc)
    rep = Report(f"distinct.{spec}")
    seen = set()
    while len(rep.cells) < pairs:
        cells = []
        for _ in range(2):
            fam = fams[rng.randrange(len(fams))]
            cells.append((fam, tuple(random_element(spec, rng) for _ in range(arity(fam)))))
        a, b = cells
        A, B = build(*a, spec), build(*b, spec)
        key = frozenset((A, B))
        if A == B or key in seen or _is_twin_pair(a, b, spec):
            continue
        seen.add(key)
        g = find_isomorphism(A, B)
        label = f"{a[0].name}{format_params(a[1])}~{b[0].name}{format_params(b[1])}"
        rep.cells.append(Cell("DISTINCT", label, "", str(spec), f"witness={g}" if g else "none", "none",
                              "NonIsomorphic" if g is None else "Collision", g is None))
    return rep


def verify_orbit_stabilizer(spec: FieldSpec) -> Report:
    """``|orbit| * |Aut| = |GL(2, q)|`` for every catalog cell over ``spec``."""
    cc = CharClass.of(spec)
    total = gl2_order(spec.order)
    rep = Report(f"orbits.{spec}")
    for fam in families(cc):
        for p in param_sampler(fam, spec, "exhaustive"):
            A = build(fam, p, spec)
            n_orb = orbit_size(A, cap=spec.order)
            n_aut = len(automorphisms_bruteforce(A))
            ok = n_orb * n_aut == total
            rep.cells.append(Cell("ORBIT", fam.name, format_params(p), str(spec), f"{n_orb}x{n_aut}",
                                  str(total), "Equal" if ok else "Differ", ok))
    return rep

"""``alg2d`` command line.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 enumeration
cap exceeded, 4 precondition violation (infinite field, characteristic or
arity mismatch, ...).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog, verify
from .automorphisms import automorphisms_bruteforce
from .catalog import CharClass, FamilyId
from .derivations import derivations
from .errors import Alg2dError, CapExceeded, InfiniteField, ParseError
from .fields import GF, FieldSpec, parse_element, parse_field_spec
from .isomorphism import find_isomorphism, orbit_size, orbit_stabilizer_check
from .msc import parse_msc

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAP, EXIT_PRECONDITION = 0, 1, 2, 3, 4


def _split_top(text: str) -> list[str]:
    """Split on commas that are not inside parentheses (``GF(3^2,2)`` has one)."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
            continue
        depth += (ch == "(") - (ch == ")")
        cur.append(ch)
    out.append("".join(cur).strip())
    return [s for s in out if s]


def field_arg(text: str) -> FieldSpec:
    """A field spec; ``GF(q)`` with ``q = p^2`` is also accepted here as shorthand."""
    try:
        return parse_field_spec(text)
    except ParseError:
        inner = text.strip()
        if inner.startswith("GF(") and inner.endswith(")") and inner[3:-1].isdigit():
            try:
                return GF(int(inner[3:-1]))
            except ValueError:
                pass
        raise


def _cmd_der(args) -> int:
    print(derivations(parse_msc(args.msc)))
    return EXIT_OK


def _cmd_aut(args) -> int:
    A = parse_msc(args.msc)
    if not A.spec.is_finite:
        raise InfiniteField("infinite field: use catalog expected-group mode")
    elems = automorphisms_bruteforce(A, cap=args.cap, jobs=args.jobs)
    for g in elems:
        print(g)
    print(f"order={len(elems)}")
    return EXIT_OK


def _family_cell(args):
    spec = field_arg(args.field)
    fam = FamilyId.parse(args.family)
    params = [parse_element(p, spec) for p in args.params]
    return fam, params, spec


def _cmd_catalog(args) -> int:
    if args.action == "list":
        classes = [CharClass.parse(args.char_class)] if args.char_class else list(CharClass)
        for cc in classes:
            for fam in catalog.families(cc):
                print(f"{fam.name} params=({','.join(catalog.param_names(fam))})")
        return EXIT_OK
    fam, params, spec = _family_cell(args)
    if args.action == "build":
        print(catalog.build(fam, params, spec))
    elif args.action == "aut":
        print(catalog.expected_aut(fam, params, spec))
    else:
        print(catalog.expected_der(fam, params, spec))
    return EXIT_OK


def _cmd_iso(args) -> int:
    A, B = parse_msc(args.a), parse_msc(args.b)
    g = find_isomorphism(A, B, cap=args.cap, jobs=args.jobs)
    tail = f"witness={g}" if g is not None else "none"
    print(f"ISO {A} {B} {tail}")
    return EXIT_OK


def _cmd_orbit(args) -> int:
    A = parse_msc(args.msc)
    n = orbit_size(A, cap=args.cap)
    print(f"orbit={n} orbit_stabilizer={'ok' if orbit_stabilizer_check(A, cap=args.cap) else 'FAIL'}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    suites = [s for s in ("aut", "der", "twins", "genericity", "orbits", "distinct") if getattr(args, s)]
    if not suites:
        suites = ["aut", "der", "twins", "genericity", "orbits", "distinct"]
    classes = [CharClass.parse(c) for c in _split_top(args.chars)] if args.chars else list(CharClass)
    given = [field_arg(f) for f in _split_top(args.fields)] if args.fields else None

    def fields_for(cc: CharClass) -> list[FieldSpec]:
        if given is None:
            return list(verify.DEFAULT_FIELDS[cc])
        return [f for f in given if cc.accepts(f)]

    plain = verify.Sampling(seed=args.seed, n=args.samples)
    aut_sampling = plain if args.fields else verify.Sampling(
        seed=args.seed, n=args.samples,
        overrides=((GF(9), verify.Sampling("random", n=args.samples, seed=args.seed)),))
    report = verify.Report("verify")
    for cc in classes:
        fields = fields_for(cc)
        if not fields:
            continue
        if "aut" in suites:
            report.extend(verify.verify_aut_tables(cc, fields, aut_sampling, jobs=args.jobs))
        if "der" in suites:
            report.extend(verify.verify_der_tables(cc, fields, plain, jobs=args.jobs))
        if "twins" in suites:
            report.extend(verify.verify_twins(fields, n=20, seed=args.seed))
        if "genericity" in suites:
            for f in fields:
                report.extend(verify.verify_genericity(f, n=100, seed=args.seed))
        if "orbits" in suites:
            for f in fields:
                if f.order <= 3:
                    report.extend(verify.verify_orbit_stabilizer(f))
        if "distinct" in suites:
            report.extend(verify.verify_distinct(fields[0], pairs=30, seed=args.seed))
    text = report.text(flagged_only=args.summary)
    print(text)
    if args.json:
        Path(args.json).write_text(report.json() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="alg2d", description="Automorphisms and derivations of 2-dimensional algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("der", help="derivation algebra of an MSC literal")
    s.add_argument("msc")
    s.set_defaults(func=_cmd_der)

    s = sub.add_parser("aut", help="automorphism group of an MSC literal by enumeration")
    s.add_argument("msc")
    s.add_argument("--cap", type=int, default=None, help="largest field size to enumerate (default $ALG2D_ENUM_CAP or 31)")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=_cmd_aut)

    s = sub.add_parser("catalog", help="canonical families")
    csub = s.add_subparsers(dest="action", required=True)
    c = csub.add_parser("list")
    c.add_argument("char_class", nargs="?", help="@neq23, @char2 or @char3")
    for action in ("build", "aut", "der"):
        c = csub.add_parser(action)
        c.add_argument("family", help="e.g. A9 or A3@char2; no suffix means @neq23")
        c.add_argument("params", nargs="*")
        c.add_argument("field")
    s.set_defaults(func=_cmd_catalog)

    s = sub.add_parser("iso", help="search for an isomorphism between two MSC literals")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--cap", type=int, default=None)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=_cmd_iso)

    s = sub.add_parser("orbit", help="orbit size and orbit-stabilizer check")
    s.add_argument("msc")
    s.add_argument("--cap", type=int, default=None)
    s.set_defaults(func=_cmd_orbit)

    s = sub.add_parser("verify", help="check the catalog tables against the oracles")
    for flag in ("aut", "der", "twins", "genericity", "orbits", "distinct"):
        s.add_argument(f"--{flag}", action="store_true")
    s.add_argument("--chars", help="comma list of neq23,char2,char3")
    s.add_argument("--fields", help="comma list of field specs")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=verify.DEFAULT_SAMPLES)
    s.add_argument("--json", metavar="PATH", help="write the structured summary here")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--summary", action="store_true", help="print only failing or noteworthy cells")
    s.set_defaults(func=_cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InfiniteField as exc:
        msg = str(exc)
        print(msg if msg.startswith("infinite field") else f"infinite field: {msg}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (Alg2dError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())

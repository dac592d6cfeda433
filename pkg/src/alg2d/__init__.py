"""Exact automorphism groups and derivation algebras of 2-dimensional algebras."""

from .automorphisms import (
    GroupDescription, MatchResult, automorphisms_bruteforce, group_sanity, is_automorphism,
    match_description,
)
from .catalog import CharClass, FamilyId, build, expected_aut, expected_der, param_sampler
from .derivations import Subspace, derivations, lie_closed, subspace_equal
from .errors import (
    Alg2dError, ArityError, CapExceeded, CharMismatch, DivisionByZero, InfiniteField, ParseError,
    Singular, SpecMismatch,
)
from .fields import (
    GF, FieldElement, FieldSpec, PrimeField, QuadExtField, QuadRationals, Rationals, parse_element,
    parse_field_spec, sqrt,
)
from .isomorphism import find_isomorphism, orbit, orbit_stabilizer_check
from .linalg import GL2Element, Mat, gl2_enumerate, kron, rref
from .msc import MSC, aut_residual, der_residual, parse_msc, product, transform

__version__ = "0.1.0"

__all__ = [
    "Alg2dError", "ArityError", "CapExceeded", "CharClass", "CharMismatch", "DivisionByZero",
    "FamilyId", "FieldElement", "FieldSpec", "GF", "GL2Element", "GroupDescription", "InfiniteField",
    "MSC", "Mat", "MatchResult", "ParseError", "PrimeField", "QuadExtField", "QuadRationals",
    "Rationals", "Singular", "SpecMismatch", "Subspace", "aut_residual", "automorphisms_bruteforce",
    "build", "der_residual", "derivations", "expected_aut", "expected_der", "find_isomorphism",
    "gl2_enumerate", "group_sanity", "is_automorphism", "kron", "lie_closed", "match_description",
    "orbit", "orbit_stabilizer_check", "param_sampler", "parse_element", "parse_field_spec",
    "parse_msc", "product", "rref", "sqrt", "subspace_equal", "transform",
]

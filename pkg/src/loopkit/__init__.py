"""Finite loops: Cayley tables, identities, isotopes, property checks and search."""

from .core import FiniteLoop, LoopError, NoIdentity, NotLatin, Perm, WrongIdentity, compose, validate
from .isotopy import (
    AutotopismTriple,
    IsotopeSpec,
    LoopStack,
    all_principal_isotopes,
    is_autotopism,
    osborn_triples,
    principal_isotope,
)
from .loopfile import LoopFile, LoopFileError, parse_loop_file, read_corpus, read_loop_file
from .properties import (
    MethodDisagreement,
    PropertyReport,
    UnknownProperty,
    check_identity,
    is_universal_osborn,
    is_universal_osborn_bruteforce,
    is_universal_osborn_identity,
    predicate,
    property_names,
)
from .registry import by_tag, lookup, registry
from .search import SearchQuery, count, enumerate_loops, reduced_tables, search
from .terms import Identity, holds, parse, parse_identity
from .theoremlab import Claim, ClaimReport, claims, run_claim, run_claims

__version__ = "0.1.0"

__all__ = [
    "all_principal_isotopes",
    "AutotopismTriple",
    "by_tag",
    "check_identity",
    "Claim",
    "ClaimReport",
    "claims",
    "compose",
    "count",
    "enumerate_loops",
    "FiniteLoop",
    "holds",
    "Identity",
    "is_autotopism",
    "is_universal_osborn",
    "is_universal_osborn_bruteforce",
    "is_universal_osborn_identity",
    "IsotopeSpec",
    "lookup",
    "LoopError",
    "LoopFile",
    "LoopFileError",
    "LoopStack",
    "MethodDisagreement",
    "NoIdentity",
    "NotLatin",
    "osborn_triples",
    "parse",
    "parse_identity",
    "parse_loop_file",
    "Perm",
    "predicate",
    "principal_isotope",
    "property_names",
    "PropertyReport",
    "read_corpus",
    "read_loop_file",
    "reduced_tables",
    "registry",
    "run_claim",
    "run_claims",
    "search",
    "SearchQuery",
    "UnknownProperty",
    "validate",
    "WrongIdentity",
]

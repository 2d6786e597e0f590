"""Executable catalog of implications and equivalences between loop properties.

A :class:`Claim` says: for every loop satisfying all ``hypothesis``
properties, the ``body`` holds.  A body is either an equivalence (every
group of properties has the same truth value, a group being a conjunction)
or an implication (if any premise group holds, every conclusion holds).
:func:`run_claim` evaluates a claim over a corpus and separates loops where
the hypothesis fails (vacuous) from loops that confirm or violate it.

Claims marked ``low_confidence`` encode a repaired reading of a suspect
statement; their violations are reported as warnings.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .core import FiniteLoop
from .properties import canonical_name, predicate
from .registry import by_tag

Group = tuple[str, ...]


@dataclass(frozen=True)
class Equivalence:
    groups: tuple[Group, ...]

    def names(self) -> list[str]:
        return [p for g in self.groups for p in g]


@dataclass(frozen=True)
class Implication:
    premises: tuple[Group, ...]  # disjunction of conjunctions
    conclusion: Group

    def names(self) -> list[str]:
        return [p for g in self.premises for p in g] + list(self.conclusion)


@dataclass(frozen=True)
class Claim:
    id: str
    hypothesis: tuple[str, ...]
    body: Equivalence | Implication
    statement: str
    low_confidence: bool = False
    note: str = ""

    def properties(self) -> list[str]:
        return list(self.hypothesis) + self.body.names()


@dataclass
class ClaimReport:
    claim: str
    tested: int = 0
    vacuous: int = 0
    verified: int = 0
    violations: list[tuple[str, dict]] = field(default_factory=list)
    low_confidence: bool = False

    @property
    def failures(self) -> list[tuple[str, dict]]:
        """Violations that count against the claim (none if low-confidence)."""
        return [] if self.low_confidence else self.violations

    @property
    def warnings(self) -> list[tuple[str, dict]]:
        return self.violations if self.low_confidence else []

    def as_dict(self) -> dict:
        return {
            "claim": self.claim,
            "tested": self.tested,
            "vacuous": self.vacuous,
            "verified": self.verified,
            "violations": [{"loop": name, "detail": d} for name, d in self.failures],
            "warnings": [{"loop": name, "detail": d} for name, d in self.warnings],
            "low_confidence": self.low_confidence,
        }


def _eq(*groups) -> Equivalence:
    return Equivalence(tuple(tuple(g) if isinstance(g, (tuple, list)) else (g,) for g in groups))


def _imp(premises, conclusion) -> Implication:
    prem = tuple(tuple(g) if isinstance(g, (tuple, list)) else (g,) for g in premises)
    return Implication(prem, tuple(conclusion))


# short names for the two-letter identities of length four
F_A = "4_{11.11=(1.11)1}^{1}"
F_B = "4_{11.11=(11.1)1}^{1}"
F_C = "4_{12.22=(1.22)2}^{1,3}"
F_D = "4_{12.22=(12.2)2}^{1,3}"
F_E = "4_{12.12=(12.1)2}^{2,2}"
F_F = "4_{12.12=(1.21)2}^{2,2}"

UO, LUO, RUO = "universal-osborn", "left-universal-osborn", "right-universal-osborn"


def _catalog() -> list[Claim]:
    C = Claim
    out = [
        # characterizations of universality
        C("osborn:os0-iff-os1", (), _eq("OS0", "OS1"), "OS0 and OS1 define the same loops"),
        C("universal:identity-iff-isotopes", (), _eq(UO + ":bruteforce", "OS0'", "OS1'"),
          "every principal isotope is Osborn iff OS0' holds iff OS1' holds"),
        C("left-universal:identity-iff-isotopes", (), _eq(LUO + ":bruteforce", "OS0^l", "OS1^l"),
          "every left principal isotope is Osborn iff OS0^l holds iff OS1^l holds"),
        C("right-universal:identity-iff-isotopes", (), _eq(RUO + ":bruteforce", "OS0^r", "OS1^r"),
          "every right principal isotope is Osborn iff OS0^r holds iff OS1^r holds"),
        C("universal:implies-one-sided", (UO,), _imp([()], [LUO, RUO]),
          "universal Osborn loops are left and right universal Osborn"),
        # autotopism triples
        C("universal:triples", (), _eq(UO, "osborn-triples:1", "osborn-triples:2"),
          "universal Osborn iff the first (or second) triple is always an autotopism"),
        C("universal:third-triple", (UO,), _imp([()], ["osborn-triples:3"]),
          "in universal Osborn loops the third triple is always an autotopism"),
        C("left-universal:triples", (), _eq(LUO, "left-osborn-triples:1", "left-osborn-triples:2"),
          "left universal Osborn iff the first (or second) left triple is always an autotopism"),
        C("left-universal:third-triple", (LUO,), _imp([()], ["left-osborn-triples:3"]),
          "in left universal Osborn loops the third left triple is always an autotopism"),
        C("right-universal:triples", (), _eq(RUO, "right-osborn-triples:1", "right-osborn-triples:2"),
          "right universal Osborn iff the first (or second) right triple is always an autotopism"),
        C("right-universal:third-triple", (RUO,), _imp([()], ["right-osborn-triples:3"]),
          "in right universal Osborn loops the third right triple is always an autotopism"),
        # universal Osborn loops
        C("uo:3papl-iff-fourth-powers", (UO,), _eq("3-PAPL", (F_A, F_B)),
          "3-PAPL iff both fourth-power identities hold"),
        C("uo:3papl-chain", (UO,), _eq("3-PAPL", (F_A, F_B), "LSIPL", "uo-lsip-companion", F_C, F_A),
          "six equivalent conditions around 3-PAPL"),
        C("uo:fourth-powers", (UO,), _eq(F_A, F_B), "the two fourth-power identities are equivalent"),
        C("uo:fourth-power-a-implies-b", (UO,), _imp([F_A], [F_B]),
          "xx.xx = (x.xx)x implies xx.xx = (xx.x)x"),
        C("uo:bsip", (UO,), _imp(["LSIPL", "RSIPL", "3-PAPL", F_C, F_A], ["L2BSIPL", "L1BSIPL"]),
          "each of five conditions gives L2BSIPL and L1BSIPL"),
        # left universal Osborn loops
        C("luo:lsip-iff-3papl", (LUO,), _eq("LSIPL", "3-PAPL"), "LSIPL iff 3-PAPL"),
        C("luo:fourth-power-iff-square-cube", (LUO,), _eq(F_B, "luo-square-cube"),
          "a fourth-power identity is equivalent to v^l(vv.v) = v^ll v"),
        C("luo:fourth-power-l1bsip", (LUO, F_B), _eq("L1BSIPL", "LSIPL"), "L1BSIPL iff LSIPL"),
        C("luo:fourth-power-l2bsip", (LUO, F_B, "LSIPL"), _imp([()], ["L2BSIPL"]),
          "with LSIPL also L2BSIPL", low_confidence=True,
          note="the consequence is stated without saying which hypothesis it uses; read as needing LSIPL"),
        C("osborn:lambda-squared", ("osborn",), _imp([()], ["lambda-squared-osborn"]), "x^ll = x^l.xx"),
        C("osborn:rho-squared", ("osborn",), _imp([()], ["rho-squared-osborn"]), "x^rr = xx.x^r"),
        C("luo:lsip-iff-c", (LUO,), _eq("LSIPL", F_C), "LSIPL iff xy.yy = (x.yy)y"),
        C("luo:lsip-iff-a", (LUO,), _eq("LSIPL", F_A), "LSIPL iff xx.xx = (x.xx)x"),
        C("luo:moufang", (LUO,), _eq(("LSIPL", F_D), "LAP", "moufang"),
          "LSIPL with xy.yy = (xy.y)y, LAP and Moufang are equivalent"),
        C("luo:y-cube", (LUO,), _imp([F_E, F_F], ["luo-y-cube"]), "either product-square identity gives [y(yy.y^r)]y = y.yy"),
        C("osborn:inverse-chain", ("osborn",),
          _eq("LSIPL", "RSIPL", "J-lambda^2=id", "J-rho^2=id", "J-rho=J-lambda"),
          "LSIP, RSIP, involutive inverse maps and equal inverse maps are equivalent"),
        C("luo:lsip-chain", (LUO,), _eq("LSIPL", "RSIPL", "3-PAPL", "J-rho=J-lambda", F_C, F_A),
          "six equivalent conditions around LSIPL"),
        # CC-loops
        C("cc:power-associativity", ("cc",),
          _eq("power-associative", "3-PAPL", "J-rho=J-lambda", "LSIPL", "RSIPL", F_C, F_A),
          "seven equivalent conditions for CC-loops"),
        C("cc:diassociativity", ("cc",), _eq("diassociative", ("power-associative", F_D)),
          "diassociative iff power-associative with xy.yy = (xy.y)y"),
        # right universal Osborn loops
        C("ruo:rsip-iff-b", (RUO,), _eq("RSIPL", "ruo-rsip-a"), "RSIPL iff u^l u^r.u = u(uu)^r"),
        C("ruo:rsip-iff-c", (RUO,), _eq("RSIPL", "ruo-rsip-b"), "RSIPL iff u^r u^r = u[u\\(u^r u.u^r).u^r]"),
        C("ruo:rsip-iff-d", (RUO,), _eq("RSIPL", "ruo-rsip-c"), "RSIPL iff z^l\\(z^r z^l.z).z = z^l\\(z^r z)",
          low_confidence=True, note="literal identity looks malformed"),
        C("ruo:rsip-iff-d-alt", (RUO,), _eq("RSIPL", "ruo-rsip-c:alt"), "RSIPL iff the alternative reading",
          low_confidence=True, note="alternative reading of a malformed identity"),
        C("ruo:square-lambda", (RUO,), _eq("ruo-square-lambda", "ruo-square-rho-div"),
          "zz.z^l = z iff [zz.z\\z^r]z = zz.z\\(z^r z)", low_confidence=True,
          note="depends on an identity with no derivation available"),
        C("ruo:sfaip-iff-swip", (RUO, "ruo-square-rho-div"), _eq("SFAIPL", "SWIPL"),
          "SFAIPL iff SWIPL under the extra identity", low_confidence=True,
          note="depends on an identity with no derivation available"),
        C("ruo:rsip-sfaip-test", (RUO, "RSIPL"), _eq("SFAIPL", "ruo-sfaip-test"), "SFAIPL iff u.u[u\\u^r.u^r] = u^r"),
        C("ruo:rsip-square-inverse", (RUO, "RSIPL"), _imp([()], ["ruo-rsip-square"]), "u\\u^r = (uu)^r"),
        C("ruo:rsip-sfaip-order6", (RUO, "RSIPL"), _imp([()], ["SFAIPL", "J-rho^6=id"]), "SFAIPL and J_r^6 = id"),
        C("ruo:i", (RUO,), _eq("ruo-i-a", "ruo-i-b"), "uu^l.u^r = u^l iff u = (uu^l).u(uu^l)^r"),
        C("ruo:j", (RUO,), _eq("ruo-j-a", "ruo-j-b"), "u^r u = uu^l iff u.u^l u^r = u^r"),
        C("ruo:k", (RUO,), _eq("ruo-j-a", "ruo-k-b"), "u^r u = uu^l iff the OSI-type identity with u^l"),
        C("ruo:swip", (RUO, "ruo-j-a", "RSIPL"), _imp([()], ["SWIPL"]), "u^r u = uu^l with RSIP gives SWIPL"),
        # other loop classes
        C("moufang:form", ("moufang",), _imp([()], ["moufang-form"]),
          "[y(x^-1 u).u^-1](xu) = [y(xu).u^-1](x^-1 u) in Moufang loops"),
        C("moufang:universal", ("moufang",), _imp([()], [UO]), "Moufang loops are universal Osborn"),
        C("cc:universal", ("cc",), _imp([()], [UO]), "CC-loops are universal Osborn"),
        C("extra:universal", ("extra",), _imp([()], [UO]), "extra loops are universal Osborn"),
        C("universal-wipl:universal", ("universal-wipl",), _imp([()], [UO]), "universal WIPLs are universal Osborn"),
        C("vd:universal", ("vd-loop",), _imp([()], [UO]), "VD-loops are universal Osborn", low_confidence=True,
          note="depends on the chosen pseudo-automorphism convention"),
        C("osborn:exponent-2", ("osborn", "exponent-2"), _imp([()], ["associative", "commutative"]),
          "Osborn loops of exponent 2 are abelian groups", note="known result, checked rather than derived here"),
        C("hierarchy:diassociative", ("diassociative",), _imp([()], ["power-associative"]),
          "diassociative loops are power-associative"),
        C("hierarchy:power-associative", ("power-associative",), _imp([()], ["3-PAPL"]),
          "power-associative loops satisfy xx.x = x.xx"),
    ]
    for tag, hyp in (("osi", UO), ("osi-left", LUO), ("osi-right", RUO)):
        for ident in by_tag(tag):
            out.append(
                C(
                    f"{tag}:{ident.name}",
                    (hyp,),
                    _imp([()], [ident.name]),
                    f"{ident.label} holds in every {hyp.replace('-', ' ')} loop",
                    low_confidence=ident.low_confidence,
                    note=ident.note,
                )
            )
    return out


@lru_cache(maxsize=None)
def _claims() -> tuple[Claim, ...]:
    cat = tuple(_catalog())
    ids = [c.id for c in cat]
    if len(set(ids)) != len(ids):
        raise RuntimeError("duplicate claim ids")
    for c in cat:
        for p in c.properties():
            canonical_name(p)  # raises UnknownProperty on drift
    return cat


def claims() -> list[Claim]:
    return list(_claims())


def claim(claim_id: str) -> Claim:
    for c in _claims():
        if c.id == claim_id:
            return c
    raise KeyError(f"no claim {claim_id!r}")


# -- evaluation -------------------------------------------------------------


class _Truth:
    """Memoized property values for one loop."""

    def __init__(self, L: FiniteLoop, method: str = "identity"):
        self.L = L
        self.method = method
        self.cache: dict[str, bool] = {}

    def __call__(self, name: str) -> bool:
        key = canonical_name(name)
        if key not in self.cache:
            self.cache[key] = predicate(self.L, key, self.method).holds
        return self.cache[key]


def evaluate(c: Claim, truth: _Truth) -> tuple[str, dict | None]:
    """Outcome of one claim on one loop: ``vacuous``, ``verified`` or ``violated``."""
    if not all(truth(h) for h in c.hypothesis):
        return "vacuous", None
    body = c.body
    if isinstance(body, Equivalence):
        values = [all(truth(p) for p in g) for g in body.groups]
        if len(set(values)) > 1:
            return "violated", {" & ".join(g): v for g, v in zip(body.groups, values)}
        return "verified", None
    for g in body.premises:
        if all(truth(p) for p in g):
            concl = {p: truth(p) for p in body.conclusion}
            if not all(concl.values()):
                return "violated", {"premise": " & ".join(g) or "(hypothesis)", **concl}
            break
    return "verified", None


def _label(i: int, item) -> tuple[str, FiniteLoop]:
    if isinstance(item, FiniteLoop):
        return f"#{i}", item
    name, L = item
    return str(name), L


def _outcomes(args) -> list[tuple[str, dict | None]]:
    claim_list, L, method = args
    truth = _Truth(L, method)
    return [evaluate(c, truth) for c in claim_list]


def run_claims(
    claim_list: Sequence[Claim], corpus: Iterable, jobs: int = 1, method: str = "identity"
) -> list[ClaimReport]:
    """Run several claims over a corpus of loops or (name, loop) pairs.

    Property values are shared between claims on the same loop.  Reports
    list violations in corpus order whatever ``jobs`` is.  ``method`` picks
    how bare universality names are decided (see :func:`predicate`).
    """
    items = [_label(i, x) for i, x in enumerate(corpus)]
    if not items:
        raise ValueError("corpus is empty")
    claim_list = list(claim_list)
    tasks = [(claim_list, L, method) for _, L in items]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_outcomes, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))
    else:
        results = [_outcomes(t) for t in tasks]
    reports = [ClaimReport(c.id, low_confidence=c.low_confidence) for c in claim_list]
    for (name, _), outcomes in zip(items, results):
        for rep, (kind, detail) in zip(reports, outcomes):
            rep.tested += 1
            if kind == "vacuous":
                rep.vacuous += 1
            elif kind == "verified":
                rep.verified += 1
            else:
                rep.violations.append((name, detail))
    return reports


def run_claim(c: Claim, corpus: Iterable, jobs: int = 1, method: str = "identity") -> ClaimReport:
    return run_claims([c], corpus, jobs, method)[0]

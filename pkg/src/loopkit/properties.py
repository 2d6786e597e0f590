"""Loop property predicates.

Every predicate returns a :class:`PropertyReport`.  Identity-defined
properties go through :func:`loopkit.terms.holds`; universality can be
decided by a characterizing identity or by sweeping principal isotopes,
and ``method="both"`` runs the two and insists they agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .core import FiniteLoop
from .isotopy import (
    NotUnital,
    is_left_pseudo_automorphism,
    is_right_pseudo_automorphism,
    isotope_stack,
    triple_failures,
    vd_maps,
)
from .registry import lookup
from .terms import Identity, holds, holds_many

METHODS = ("identity", "bruteforce", "both")


class UnknownProperty(KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown property {name!r}")


class MethodDisagreement(RuntimeError):
    """Identity and brute-force universality checks disagree on a loop."""

    def __init__(self, prop: str, by_identity: PropertyReport, by_bruteforce: PropertyReport):
        self.prop = prop
        self.by_identity = by_identity
        self.by_bruteforce = by_bruteforce
        super().__init__(
            f"{prop}: identity method says {by_identity.holds}, brute force says {by_bruteforce.holds}"
        )


@dataclass(frozen=True)
class PropertyReport:
    property: str
    holds: bool
    witness: dict | None = None
    method: str = "identity"

    def __post_init__(self):
        if not self.holds and self.witness is None:
            raise ValueError("a failing report needs a witness")

    def __bool__(self):
        return self.holds

    def as_dict(self) -> dict:
        return {
            "property": self.property,
            "holds": self.holds,
            "method": self.method,
            "witness": self.witness,
        }


def check_identity(L: FiniteLoop, ident: Identity | str, prop: str | None = None) -> PropertyReport:
    ident = lookup(ident) if isinstance(ident, str) else ident
    r = holds(L, ident)
    witness = None if r.holds else {"identity": ident.name, "assignment": r.counterexample}
    return PropertyReport(prop or ident.name, r.holds, witness, "identity")


def _all_identities(L: FiniteLoop, names: tuple[str, ...], prop: str) -> PropertyReport:
    for name in names:
        rep = check_identity(L, name, prop)
        if not rep.holds:
            return rep
    return PropertyReport(prop, True, None, "identity")


# -- Osborn and universality ------------------------------------------------


def is_osborn(L: FiniteLoop) -> PropertyReport:
    return check_identity(L, "OS1", "osborn")


def _bruteforce(L: FiniteLoop, ident_name: str, kind: str, prop: str) -> PropertyReport:
    """Run an identity on every principal isotope of the given kind.

    Full isotopes are built one row of u at a time so a failure stops the
    sweep early; the reported isotope is the first failing one in (u, v)
    order.
    """
    ident = lookup(ident_name)
    batches = [None] if kind != "full" else [[u] for u in range(L.order)]
    for us in batches:
        stack = isotope_stack(L, kind, us)
        for spec, res in zip(stack.labels, holds_many(stack, ident)):
            if not res.holds:
                return PropertyReport(
                    prop,
                    False,
                    {"identity": ident.name, "isotope": spec.as_dict(), "assignment": res.counterexample},
                    "bruteforce",
                )
    return PropertyReport(prop, True, None, "bruteforce")


def _universal(L: FiniteLoop, prop: str, ident_name: str, kind: str, method: str) -> PropertyReport:
    if method == "identity":
        return check_identity(L, ident_name, prop)
    if method == "bruteforce":
        return _bruteforce(L, "OS1", kind, prop)
    if method == "both":
        a = check_identity(L, ident_name, prop)
        b = _bruteforce(L, "OS1", kind, prop)
        if a.holds != b.holds:
            raise MethodDisagreement(prop, a, b)
        witness = None if a.holds else {**a.witness, "bruteforce": b.witness}
        return PropertyReport(prop, a.holds, witness, "both")
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def is_universal_osborn_identity(L: FiniteLoop) -> PropertyReport:
    return _universal(L, "universal-osborn", "OS0'", "full", "identity")


def is_universal_osborn_bruteforce(L: FiniteLoop) -> PropertyReport:
    return _universal(L, "universal-osborn", "OS0'", "full", "bruteforce")


def is_universal_osborn(L: FiniteLoop, method: str = "identity") -> PropertyReport:
    return _universal(L, "universal-osborn", "OS0'", "full", method)


def is_left_universal_osborn(L: FiniteLoop, method: str = "identity") -> PropertyReport:
    return _universal(L, "left-universal-osborn", "OS0^l", "left", method)


def is_right_universal_osborn(L: FiniteLoop, method: str = "identity") -> PropertyReport:
    return _universal(L, "right-universal-osborn", "OS0^r", "right", method)


def is_universal_wipl(L: FiniteLoop) -> PropertyReport:
    """WIP in the loop and in all of its principal isotopes."""
    own = check_identity(L, "WIP", "universal-wipl")
    if not own.holds:
        return PropertyReport("universal-wipl", False, own.witness, "bruteforce")
    return _bruteforce(L, "WIP", "full", "universal-wipl")


def osborn_triples_report(L: FiniteLoop, family: str = "full", which: tuple[int, ...] = (1, 2, 3)) -> PropertyReport:
    prop = {"full": "osborn-triples", "left": "left-osborn-triples", "right": "right-osborn-triples"}[family]
    if which != (1, 2, 3):
        prop += ":" + "".join(str(k) for k in which)
    bad = triple_failures(L, family, which)
    return PropertyReport(prop, bad is None, bad, "structural")


# -- classes defined by identities ------------------------------------------


def is_moufang(L: FiniteLoop) -> PropertyReport:
    return check_identity(L, "moufang", "moufang")


def is_cc(L: FiniteLoop) -> PropertyReport:
    return _all_identities(L, ("cc-left", "cc-right"), "cc")


def is_extra(L: FiniteLoop) -> PropertyReport:
    """Extra loops, taken as Moufang CC-loops."""
    return _all_identities(L, ("moufang", "cc-left", "cc-right"), "extra")


# -- closure-based properties -----------------------------------------------


def _closure(T: np.ndarray, gens) -> np.ndarray:
    """Sorted elements of the submagma generated by ``gens``."""
    inside = np.zeros(T.shape[0], dtype=bool)
    inside[list(gens)] = True
    while True:
        s = np.flatnonzero(inside)
        new = np.zeros_like(inside)
        new[T[np.ix_(s, s)].ravel()] = True
        if not (new & ~inside).any():
            return s
        inside |= new


def _assoc_failure(T: np.ndarray, s: np.ndarray):
    sub = T[np.ix_(s, s)]
    left = T[sub[:, :, None], s[None, None, :]]  # (ab)c
    right = T[s[:, None, None], sub[None, :, :]]  # a(bc)
    bad = left != right
    if not bad.any():
        return None
    i, j, k = np.unravel_index(int(np.argmax(bad)), bad.shape)
    return {"a": int(s[i]), "b": int(s[j]), "c": int(s[k])}


def is_power_associative(L: FiniteLoop) -> PropertyReport:
    T = L.table
    for x in L.elements():
        bad = _assoc_failure(T, _closure(T, [x]))
        if bad:
            return PropertyReport("power-associative", False, {"x": x, **bad}, "structural")
    return PropertyReport("power-associative", True, None, "structural")


def is_diassociative(L: FiniteLoop) -> PropertyReport:
    T = L.table
    done: set[tuple[int, ...]] = set()
    for x in L.elements():
        for y in range(x, L.order):
            s = _closure(T, [x, y])
            key = tuple(s.tolist())
            if key in done:
                continue
            done.add(key)
            bad = _assoc_failure(T, s)
            if bad:
                return PropertyReport("diassociative", False, {"x": x, "y": y, **bad}, "structural")
    return PropertyReport("diassociative", True, None, "structural")


def inverse_map_order(L: FiniteLoop, which: str = "lambda") -> int:
    """Order of J_λ (``lambda``) or J_ρ (``rho``) as a permutation."""
    return L.inverse_map(which).cycle_order()


def is_vd(L: FiniteLoop) -> PropertyReport:
    """VD-loop check; same verdict as :func:`loopkit.isotopy.is_vd_loop`, with a witness."""
    for x in L.elements():
        lm, rm = vd_maps(L, x)
        for side, fn, m in (("left", is_left_pseudo_automorphism, lm), ("right", is_right_pseudo_automorphism, rm)):
            try:
                ok = fn(L, m, x)
            except NotUnital:
                ok = False
            if not ok:
                return PropertyReport("vd-loop", False, {"x": x, "side": side}, "structural")
    return PropertyReport("vd-loop", True, None, "structural")


# -- name dispatch ----------------------------------------------------------

Predicate = Callable[..., PropertyReport]

_UNIVERSAL: dict[str, Predicate] = {
    "universal-osborn": is_universal_osborn,
    "left-universal-osborn": is_left_universal_osborn,
    "right-universal-osborn": is_right_universal_osborn,
}

_STRUCTURAL: dict[str, Predicate] = {
    "osborn": is_osborn,
    "moufang": is_moufang,
    "cc": is_cc,
    "extra": is_extra,
    "universal-wipl": is_universal_wipl,
    "power-associative": is_power_associative,
    "diassociative": is_diassociative,
    "vd-loop": is_vd,
    "osborn-triples": lambda L: osborn_triples_report(L, "full"),
    "left-osborn-triples": lambda L: osborn_triples_report(L, "left"),
    "right-osborn-triples": lambda L: osborn_triples_report(L, "right"),
}
for _fam in ("full", "left", "right"):
    for _k in (1, 2, 3):
        _name = {"full": "osborn-triples", "left": "left-osborn-triples", "right": "right-osborn-triples"}[_fam]
        _STRUCTURAL[f"{_name}:{_k}"] = lambda L, f=_fam, k=_k: osborn_triples_report(L, f, (k,))

# alternate spellings accepted on input
ALIASES = {
    "uo": "universal-osborn",
    "luo": "left-universal-osborn",
    "ruo": "right-universal-osborn",
    "universal-osborn:identity": "universal-osborn",
    "lsip": "LSIPL",
    "rsip": "RSIPL",
    "wipl": "WIP",
    "cc-loop": "cc",
    "moufang-loop": "moufang",
    "group": "associative",
    "power-associativity": "power-associative",
}


def property_names() -> list[str]:
    """Every property name accepted by :func:`predicate`, besides registry identities."""
    return sorted(_UNIVERSAL) + sorted(_STRUCTURAL)


@lru_cache(maxsize=None)
def canonical_name(name: str) -> str:
    """Resolve aliases and case; raise :class:`UnknownProperty` if nothing matches."""
    key = name.strip()
    method_suffix = ""
    base = key
    for m in METHODS:
        prefix = key.casefold()[: -len(m) - 1]
        if key.casefold().endswith(":" + m) and ALIASES.get(prefix, prefix) in _UNIVERSAL:
            base, method_suffix = key[: -len(m) - 1], ":" + m
    folded = base.casefold()
    folded = ALIASES.get(folded, folded)
    if folded in _UNIVERSAL or folded in _STRUCTURAL:
        return folded + method_suffix
    if method_suffix:
        raise UnknownProperty(name)
    target = ALIASES.get(base.casefold(), base)
    try:
        return lookup(target).name
    except KeyError:
        raise UnknownProperty(name) from None


def predicate(L: FiniteLoop, name: str, method: str = "identity") -> PropertyReport:
    """Evaluate a property by name.

    ``name`` is one of :func:`property_names` or a registry identity.  A
    universality name may carry a ``:identity``, ``:bruteforce`` or
    ``:both`` suffix, which overrides ``method``.
    """
    canon = canonical_name(name)
    if ":" in canon and canon.split(":", 1)[0] in _UNIVERSAL:
        base, method = canon.split(":", 1)
        return _UNIVERSAL[base](L, method)
    if canon in _UNIVERSAL:
        return _UNIVERSAL[canon](L, method)
    if canon in _STRUCTURAL:
        return _STRUCTURAL[canon](L)
    return check_identity(L, canon, canon)


def cost(name: str) -> int:
    """Rough relative cost, used to order filters cheap-first."""
    canon = canonical_name(name)
    base = canon.split(":", 1)[0]
    if base in _UNIVERSAL:
        return 50 if base == "universal-osborn" else 40
    if base in ("universal-wipl",):
        return 45
    if base.endswith("osborn-triples") or base.startswith(("osborn-triples", "left-osborn", "right-osborn")):
        return 60
    if base in ("power-associative", "diassociative", "vd-loop"):
        return 20
    if base in ("cc", "extra", "moufang", "osborn"):
        return 30
    return 10 * lookup(canon).arity

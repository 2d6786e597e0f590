"""Catalog of named loop identities.

Every entry is an :class:`~loopkit.terms.Identity` written in the DSL of
:mod:`loopkit.terms`.  Tags:

``group``            holds in every group
``definition``       defines a named loop class
``osborn``           one of the Osborn-type identities and their characterizations
``osi``/``osi-left``/``osi-right``
                     consequences of universal / left / right universal Osborn
``four``             a two-word identity of length four in one or two letters
``low-confidence``   the literal form is suspect; the encoding is a repair
"""

from __future__ import annotations

from functools import lru_cache

from .terms import Identity, parse_identity

_G = "group"


def _id(name: str, src: str, *, vars: str | None = None, label: str = "", tags=(), note: str = "") -> Identity:
    parsed = parse_identity(src, name, tuple(vars) if vars else None)
    return Identity(name, parsed.lhs, parsed.rhs, parsed.vars, label or name, frozenset(tags), note)


def _definitions() -> list[Identity]:
    d = ("definition", _G)
    return [
        _id("loop-div-left", r"x * x\y = y", tags=d, note="multiplication undoes left division"),
        _id("loop-div-right", r"y/x * x = y", vars="xy", tags=d),
        _id("loop-mul-left", r"x\(x*y) = y", tags=d),
        _id("loop-mul-right", r"(y*x)/x = y", vars="xy", tags=d),
        _id("loop-unit", r"x\x = y/y", tags=d),
        _id("associative", r"(x*y)*z = x*(y*z)", tags=d),
        _id("commutative", r"x*y = y*x", tags=("definition",)),
        _id("exponent-2", r"x*x = e", tags=("definition",)),
        _id("3-PAPL", r"(x*x)*x = x*(x*x)", label="3-PAPL", tags=d),
        _id("LSIPL", r"x^l * (x*x) = x", tags=d),
        _id("RSIPL", r"(x*x) * x^r = x", tags=d),
        _id("SFAIPL", r"(x*x)^r = x^r * x^r", tags=d),
        _id("SWIPL", r"x * (x*x)^r = x^r", tags=d),
        _id("L1BSIPL", r"x^l * ((x*x)*x) = x*x", label="L¹BSIPL", tags=d),
        _id("L2BSIPL", r"x^l * (x*(x*x)) = x*x", label="L²BSIPL", tags=d),
        _id("moufang", r"(x*y)*(z*x) = (x*(y*z))*x", tags=d),
        _id("cc-left", r"x*(y*z) = (x*y)/x * (x*z)", tags=d),
        _id("cc-right", r"(z*y)*x = (z*x) * x\(y*x)", vars="xyz", tags=d),
        _id("WIP", r"x * (y*x)^r = y^r", tags=d),
        _id("WIP-left-form", r"(x*y)^l * x = y^l", tags=d),
        _id("LAP", r"(x*x)*y = x*(x*y)", tags=d, note="left alternative property"),
        _id("J-rho=J-lambda", r"x^r = x^l", tags=d),
        _id("J-lambda^2=id", r"x^l^l = x", tags=d),
        _id("J-rho^2=id", r"x^r^r = x", tags=d),
        _id("J-rho^6=id", r"x^r^r^r^r^r^r = x", tags=d),
    ]


def _four() -> list[Identity]:
    f = ("four", _G)
    return [
        _id("4_{11.11=(1.11)1}^{1}", r"(x*x)*(x*x) = (x*(x*x))*x", label="{4}_{11·11=(1·11)1}^{1}", tags=f),
        _id("4_{11.11=(11.1)1}^{1}", r"(x*x)*(x*x) = ((x*x)*x)*x", label="{4}_{11·11=(11·1)1}^{1}", tags=f),
        _id("4_{12.22=(1.22)2}^{1,3}", r"(x*y)*(y*y) = (x*(y*y))*y", label="{4}_{12·22=(1·22)2}^{1,3}", tags=f),
        _id("4_{12.22=(12.2)2}^{1,3}", r"(x*y)*(y*y) = ((x*y)*y)*y", label="{4}_{12·22=(12·2)2}^{1,3}", tags=f),
        _id("4_{12.12=(12.1)2}^{2,2}", r"(x*y)*(x*y) = ((x*y)*x)*y", label="{4}_{12·12=(12·1)2}^{2,2}", tags=f),
        _id("4_{12.12=(1.21)2}^{2,2}", r"(x*y)*(x*y) = (x*(y*x))*y", label="{4}_{12·12=(1·21)2}^{2,2}", tags=f),
    ]


def _osborn() -> list[Identity]:
    o = ("osborn", _G)
    xyzuv = "xyzuv"
    return [
        _id(
            "M-loop",
            r"(y*x)*((y^l*(y*z))*y) = (y*(x*z))*y",
            vars="xyz",
            tags=o,
            note="generalized Moufang identity with E_y = L_y L_{y^l}",
        ),
        _id("OS0", r"x * ((y*z)*x) = (x * ((y*x^l)*x)) * (z*x)", label="OS₀", tags=o),
        _id("OS1", r"x * ((y*z)*x) = (x * ((y*x)*x^r)) * (z*x)", label="OS₁", tags=o,
            note="also the Osborn identity with E_x = R_x R_{x^r} written out"),
        _id(
            "OS0'",
            r"x * u\((y*z)/v * u\(x*v)) = (x * u\((y * u\((u*v)/(u\(x*v)) * v))/v * u\(x*v)))/v * u\((u*z)/v * u\(x*v))",
            vars=xyzuv,
            label="OS₀′",
            tags=o,
        ),
        _id(
            "OS1'",
            r"x * u\((y*z)/v * u\(x*v)) = (x * u\((y * u\(x*v))/v * x\(u*v)))/v * u\((u*z)/v * u\(x*v))",
            vars=xyzuv,
            label="OS₁′",
            tags=o,
        ),
        _id(
            "OS0^l",
            r"x * ((y*(z*v))/v * (x*v)) = (x * ((y * (v/(x*v) * v))/v * (x*v)))/v * (z*(x*v))",
            vars="xyzv",
            label="OS₀^λ",
            tags=o,
        ),
        _id(
            "OS1^l",
            r"x * ((y*(z*v))/v * (x*v)) = (x * ((y*(x*v))/v * x\v))/v * (z*(x*v))",
            vars="xyzv",
            label="OS₁^λ",
            tags=o,
        ),
        _id(
            "OS0^r",
            r"(u*x) * u\((y*z)*x) = ((u*x) * u\((y * u\(u/x)) * x)) * u\((u*z)*x)",
            vars="xyzu",
            label="OS₀^ρ",
            tags=o,
        ),
        _id(
            "OS1^r",
            r"(u*x) * u\((y*z)*x) = ((u*x) * u\((y*x) * (u*x)\u)) * u\((u*z)*x)",
            vars="xyzu",
            label="OS₁^ρ",
            tags=o,
        ),
        _id("lambda-squared-osborn", r"x^l^l = x^l * (x*x)", tags=o,
            note="J_l^2 : x -> x^l * xx, used for Osborn loops"),
        _id("rho-squared-osborn", r"x^r^r = (x*x) * x^r", tags=o,
            note="J_r^2 : x -> xx * x^r, used for Osborn loops"),
        _id(
            "moufang-form",
            r"((y*(x^l*u))*u^l)*(x*u) = ((y*(x*u))*u^l)*(x^l*u)",
            vars="xyu",
            tags=o,
            note="x^-1 read as x^l; only meaningful where J_l = J_r",
        ),
    ]


def _osi() -> list[Identity]:
    t = ("osi", _G)
    return [
        _id("OSI_01", r"y * u\((u*v)/(u\(x*v)) * v) = ((y * u\(x*v))/v * x\(u*v))/(u\(x*v)) * v",
            vars="xyuv", label="OSI₀₁", tags=t),
        _id("OSI_01.1", r"((u*z)/v * u\(((y*v) * u\((u*v)/z * v))/v * z))/v * u\(u/v * z) = (u*z)/v * u\(y*z)",
            vars="yzuv", label="OSI₀₁.₁", tags=t),
        _id("OSI_01.2", r"(u*z)/v * u\(((y*v)*z)/v * ((u*z)/v)\(u*v)) = ((u*z)/v * u\(y*z))/(u\(u/v * z)) * v",
            vars="yzuv", label="OSI₀₁.₂", tags=t),
        _id("OSI_01.1.1", r"(u\((((u*y)*u) * u\((u*u)*u))/u))/u * u^r = y",
            vars="yu", label="OSI₀₁.₁.₁", tags=t),
        _id("OSI_01.2.1", r"v^l * u\(((y*v)*u^r)/v * v^l\(u*v)) = (v^l * u\(y*u^r))/(u\(u/v * u^r)) * v",
            vars="yuv", label="OSI₀₁.₂.₁", tags=t),
        _id("OSI_01.2.2", r"v^l * (y * v^l\v) = (v^l*y)/v^l * v", vars="yv", label="OSI₀₁.₂.₂", tags=t),
        _id("OSI_01:cube", r"(u*u) * u\((u*u)*u) = (u*(u*u))*u", tags=t),
        _id("OSI_01:lambda-a", r"v^l * (v * v^l\v) = v^l^l * v", tags=t),
        _id("OSI_01:lambda-b", r"v^l^l * v = (v^l * (v*v))*v", tags=t),
        _id("OSI_01:rho", r"v * (v^r * v\v^r) = v^l * v^r", tags=t),
    ]


def _osi_left() -> list[Identity]:
    t = ("osi-left", _G)
    # the two literal forms below fail even in groups
    lc = ("osi-left", "low-confidence")
    return [
        _id("OSI_01^l", r"y * (v/(x*v) * v) = ((y*(x*v))/v * x\v)/(x*v) * v",
            vars="xyv", label="OSI₀₁^λ", tags=t),
        _id("OSI_01.2^l", r"z * (((y*v)*(z*v))/v * z\v) = (z*(y*(z*v)))/(v^l*(z*v)) * v",
            vars="yzv", label="OSI₀₁.₂^λ", tags=t),
        _id("OSI_01.1^l", r"(z * (((y*v) * (v/(z*v) * v))/v * (z*v)))/v * (v^l*(z*v)) = z * (y*(v*z))",
            vars="yzv", label="OSI₀₁.₁^λ", tags=lc,
            note="literal right side z·y(vz); substitution gives z·y(zv), see OSI_01.1^l:derived"),
        _id("OSI_01.1^l:derived", r"(z * (((y*v) * (v/(z*v) * v))/v * (z*v)))/v * (v^l*(z*v)) = z * (y*(z*v))",
            vars="yzv", label="OSI₀₁.₁^λ (derived form)", tags=t),
        _id("OSI_01.1.1^l", r"(v^l * (((y*v)*(v*v))/v))/v * v^l = v^l * y",
            vars="yv", label="OSI₀₁.₁.₁^λ", tags=t),
        _id("OSI_01.1.2^l", r"(z * ((v * (v/(z*v) * v)) * z))/v * (v^l*(z*v)) = z*(z*v)",
            vars="zv", label="OSI₀₁.₁.₂^λ", tags=lc,
            note="literal form; setting y=e in OSI_01.1^l gives OSI_01.1.2^l:derived"),
        _id("OSI_01.1.2^l:derived", r"(z * ((v * (v/(z*v) * v))/v * (z*v)))/v * (v^l*(z*v)) = z*(z*v)",
            vars="zv", label="OSI₀₁.₁.₂^λ (derived form)", tags=t),
        _id("OSI_01.2.1^l", r"v * (((y*v)*(v*v))/v) = (v*(y*(v*v)))/(v^l*(v*v)) * v",
            vars="yv", label="OSI₀₁.₂.₁^λ", tags=t),
        _id("OSI_01.2.2^l", r"v * ((v*(v*v))/v) = (v*(v*v))/(v^l*(v*v)) * v", label="OSI₀₁.₂.₂^λ", tags=t),
        _id("OSI_01.2.3^l", r"v * (((v*v)*(v*v))/v) = (v*(v*(v*v)))/(v^l*(v*v)) * v", label="OSI₀₁.₂.₃^λ", tags=t),
        _id("OSI_01.2.4^l", r"v^l * (y * v^l\v) = (v^l*y)/v^l * v", vars="yv", label="OSI₀₁.₂.₄^λ", tags=t),
        _id("OSI_01^l:cube", r"v*(v*v) = v^l\v * v", tags=t),
        _id("OSI_01^l:fourth", r"(v*v)*(v*v) = v^l\(v^l^l * v) * v", tags=t),
    ]


def _osi_right() -> list[Identity]:
    t = ("osi-right", _G)
    lc = ("osi-right", _G, "low-confidence")
    return [
        _id("OSI_01^r", r"y * u\(u/x) = ((y*x) * (u*x)\u)/x", vars="xyu", label="OSI₀₁^ρ", tags=t),
        _id("OSI_01.2^r", r"((u*z) * u\((y*z) * (u*z)\u)) * z = (u*z) * u\(y*z)",
            vars="yzu", label="OSI₀₁.₂^ρ", tags=t),
        _id("OSI_01.1^r", r"((u*z) * u\((y * u\(u/z)) * z)) * z = (u*z) * u\(y*z)",
            vars="yzu", label="OSI₀₁.₁^ρ", tags=t),
        _id("OSI_01.1.1^r", r"((u*z) * u\((z^l * u\(u/z)) * z)) * z = (u*z) * u^r",
            vars="zu", label="OSI₀₁.₁.₁^ρ", tags=lc, note="literal form has an unbalanced parenthesis; closed at the end"),
        _id("OSI_01.1.2^r", r"((u*u) * u\((u^l*u^r)*u)) * u = (u*u) * u^r",
            label="OSI₀₁.₁.₂^ρ", tags=lc, note="literal form has an unbalanced parenthesis; closed at the end"),
        _id("OSI_01.1.3^r", r"((u*z) * u\((z * u\(u/z)) * z)) * z = (u*z) * u\(z*z)",
            vars="zu", label="OSI₀₁.₁.₃^ρ", tags=t),
        _id("OSI_01.1.4^r", r"(u\((u^r * u\(u/u^r)) * u^r)) * u^r = u\(u^r*u^r)",
            label="OSI₀₁.₁.₄^ρ", tags=lc,
            note="literal form has a stray free z; encoded as OSI_01.1.3^r with z = u^r"),
        _id("OSI_01.1.5^r", r"((u*z) * u\((z^r * u\(u/z)) * z)) * z = (u*z) * u\(z^r*z)",
            vars="zu", label="OSI₀₁.₁.₅^ρ", tags=t),
        _id("OSI_01.1.6^r", r"z^l\((z^r * z^l\(z^l/z)) * z) * z = z^l\(z^r*z)", label="OSI₀₁.₁.₆^ρ", tags=t),
        _id("OSI_01.1.7^r", r"((z*z) * z\((z^r*z^r)*z)) * z = (z*z) * z\(z^r*z)", label="OSI₀₁.₁.₇^ρ", tags=t),
        _id("OSI_01.2.1^r", r"((u*z) * u\((u*z)\u)) * z = (u*z) * u^r", vars="zu", label="OSI₀₁.₂.₁^ρ", tags=t),
        _id("OSI_01.2.2^r", r"((u*u) * u\((u*u)\u)) * u = (u*u) * u^r", label="OSI₀₁.₂.₂^ρ", tags=t),
        _id("OSI_01.2.3^r", r"((u*u^l) * u\((u*u^l)\u)) * u^l = (u*u^l) * u^r", label="OSI₀₁.₂.₃^ρ", tags=t),
        _id("OSI_01.2.4^r", r"((u*z) * u\(z * (u*z)\u)) * z = (u*z) * u\z", vars="zu", label="OSI₀₁.₂.₄^ρ", tags=t),
        _id("OSI_01.2.5^r", r"((u*u^l) * u\(u^l * (u*u^l)\u)) * u^l = (u*u^l) * u\u^l",
            label="OSI₀₁.₂.₅^ρ", tags=lc,
            note="literal right side reads (uu^l)·u\\uu^l; encoded as OSI_01.2.4^r with z = u^l"),
        _id("OSI_01.2.6^r", r"((u*z) * u\((z*z) * (u*z)\u)) * z = (u*z) * u\(z*z)",
            vars="zu", label="OSI₀₁.₂.₆^ρ", tags=t),
        _id("OSI_01.2.7^r", r"((u*z) * u\((z^r*z) * (u*z)\u)) * z = (u*z) * u\(z^r*z)",
            vars="zu", label="OSI₀₁.₂.₇^ρ", tags=t),
        _id("OSI_01.2.8^r", r"((u*u) * u\((u^r*u) * (u*u)\u)) * u = (u*u) * u\(u^r*u)", label="OSI₀₁.₂.₈^ρ", tags=t),
        _id("OSI_01.2.9^r", r"((u*u)*u^r)*u^r = u * (u\((((u*u)*u^r)*u^r)*u) * u^r)", label="OSI₀₁.₂.₉^ρ", tags=t),
        _id("OSI_01.2.10^r", r"((u*u^l) * u\((u*u^l) * (u*u^l)\u)) * u^l = (u*u^l) * u\(u*u^l)",
            label="OSI₀₁.₂.₁₀^ρ", tags=t),
        _id("OSI_01^r:inverse", r"u * (u\(u^r*u) * u^r) = u^r", tags=t),
    ]


def _lemma_identities() -> list[Identity]:
    """Identities that appear only inside equivalence statements."""
    g = (_G,)
    lc = (_G, "low-confidence")
    return [
        _id("uo-lsip-companion", r"v * (v^l * (v * v^l\v)) = v^l\v * v", tags=g),
        _id("luo-square-cube", r"v^l * ((v*v)*v) = v^l^l * v", tags=g),
        _id("luo-y-cube", r"(y*((y*y)*y^r))*y = y*(y*y)", tags=g),
        _id("ruo-rsip-a", r"(u^l*u^r)*u = u*(u*u)^r", tags=g),
        _id("ruo-rsip-b", r"u^r*u^r = u*(u\((u^r*u)*u^r) * u^r)", tags=g),
        _id("ruo-rsip-c", r"z^l\((z^r*z^l)*z) * z = z^l\(z^r*z)", tags=lc,
            note="literal form; does not match the shape of OSI_01.1.6^r"),
        _id("ruo-rsip-c:alt", r"z^l\((z^r * z^l\(z^l/z)) * z) * z = z^l\(z^r*z)", tags=lc,
            note="reading that keeps the inner term of OSI_01.1.6^r"),
        _id("ruo-square-lambda", r"(z*z)*z^l = z", tags=g),
        _id("ruo-square-rho-div", r"((z*z) * z\z^r)*z = (z*z) * z\(z^r*z)", tags=lc,
            note="reconstructed; no derivation available"),
        _id("ruo-sfaip-test", r"u*(u*(u\u^r * u^r)) = u^r", tags=g),
        _id("ruo-rsip-square", r"u\u^r = (u*u)^r", tags=g),
        _id("ruo-i-a", r"(u*u^l)*u^r = u^l", tags=g),
        _id("ruo-i-b", r"u = (u*u^l) * (u*(u*u^l)^r)", tags=g),
        _id("ruo-j-a", r"u^r*u = u*u^l", tags=g),
        _id("ruo-j-b", r"u*(u^l*u^r) = u^r", tags=g),
        _id("ruo-k-b", r"((u*u) * u\((u^r*u) * (u*u)\u)) * u = (u*u)*u^l", tags=g),
    ]


@lru_cache(maxsize=None)
def _catalog() -> tuple[Identity, ...]:
    entries = _definitions() + _four() + _osborn() + _osi() + _osi_left() + _osi_right() + _lemma_identities()
    names = [e.name for e in entries]
    dupes = {n for n in names if names.count(n) > 1}
    if dupes:
        raise RuntimeError(f"duplicate identity names: {sorted(dupes)}")
    return tuple(entries)


def registry() -> list[Identity]:
    """Every named identity, in catalog order."""
    return list(_catalog())


@lru_cache(maxsize=None)
def _by_name() -> dict[str, Identity]:
    table = {}
    for ident in _catalog():
        table[ident.name] = ident
        table.setdefault(ident.name.casefold(), ident)
    return table


def lookup(name: str) -> Identity:
    table = _by_name()
    try:
        return table[name]
    except KeyError:
        try:
            return table[name.casefold()]
        except KeyError:
            raise KeyError(f"no identity named {name!r}") from None


def by_tag(tag: str) -> list[Identity]:
    return [i for i in _catalog() if tag in i.tags]

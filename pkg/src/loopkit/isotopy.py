"""Principal isotopes, autotopisms and pseudo-automorphisms.

Permutation products are read left to right throughout: the string
``R_a 𝕉_b L_c`` means "apply R_a, then R_b^{-1}, then L_c", and is built as
``compose(R(a), Rinv(b), L(c))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .core import FiniteLoop, LoopError, Perm, compose, validate


class NotUnital(LoopError):
    def __init__(self, image: int):
        super().__init__(f"map sends the identity to {image}")


# -- isotope specs ----------------------------------------------------------


@dataclass(frozen=True)
class IsotopeSpec:
    """Which principal isotope: ``full`` (u, v), ``left`` (v) or ``right`` (u).

    full:  x ∘ y = (x/v)(u\\y), identity uv
    left:  x ∘ y = (x/v) y,     identity v
    right: x ∘ y = x (u\\y),    identity u
    """

    kind: str
    u: int | None = None
    v: int | None = None

    @classmethod
    def full(cls, u: int, v: int) -> IsotopeSpec:
        return cls("full", u, v)

    @classmethod
    def left(cls, v: int) -> IsotopeSpec:
        return cls("left", None, v)

    @classmethod
    def right(cls, u: int) -> IsotopeSpec:
        return cls("right", u, None)

    def __post_init__(self):
        need = {"full": (True, True), "left": (False, True), "right": (True, False)}
        if self.kind not in need:
            raise ValueError(f"unknown isotope kind {self.kind!r}")
        if need[self.kind] != (self.u is not None, self.v is not None):
            raise ValueError(f"{self.kind} isotope needs {'u,v' if self.kind == 'full' else 'v' if self.kind == 'left' else 'u'}")

    def as_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.u is not None:
            d["u"] = self.u
        if self.v is not None:
            d["v"] = self.v
        return d

    def __str__(self):
        return ", ".join(f"{k}={v}" for k, v in self.as_dict().items())


def _uv(L: FiniteLoop, spec: IsotopeSpec) -> tuple[int, int]:
    u = L.identity if spec.u is None else spec.u
    v = L.identity if spec.v is None else spec.v
    if not (0 <= u < L.order and 0 <= v < L.order):
        raise ValueError(f"isotope parameters out of range: {spec}")
    return u, v


def isotope_table(L: FiniteLoop, spec: IsotopeSpec) -> np.ndarray:
    u, v = _uv(L, spec)
    return L.table[L.rdiv_table[:, v][:, None], L.ldiv_table[u, :][None, :]]


def principal_isotope(L: FiniteLoop, spec: IsotopeSpec) -> FiniteLoop:
    """The principal isotope x ∘ y = (x/v)·(u\\y), validated as a loop."""
    u, v = _uv(L, spec)
    return validate(isotope_table(L, spec), int(L.mul(u, v)))


def all_principal_isotopes(L: FiniteLoop) -> Iterator[tuple[IsotopeSpec, FiniteLoop]]:
    """All n² full principal isotopes, ordered by (u, v)."""
    for u in range(L.order):
        for v in range(L.order):
            spec = IsotopeSpec.full(u, v)
            yield spec, principal_isotope(L, spec)


# -- batches of loops -------------------------------------------------------


class LoopStack:
    """A batch of same-order loops evaluated together.

    Provides the ``mul/ldiv/rdiv/lin/rin/e`` interface expected by
    :func:`loopkit.terms.eval_term`, with a leading batch axis.  Operand arrays
    must broadcast against shape ``(count, m)``.
    """

    def __init__(self, tables: np.ndarray, identities: np.ndarray, labels: list | None = None):
        self.tables = np.ascontiguousarray(tables, dtype=np.int64)
        if self.tables.ndim != 3 or self.tables.shape[1] != self.tables.shape[2]:
            raise ValueError(f"expected tables of shape (count, n, n), got {self.tables.shape}")
        self.count, self.order = self.tables.shape[0], self.tables.shape[1]
        self.identities = np.asarray(identities, dtype=np.int64)
        if self.identities.shape != (self.count,):
            raise ValueError("need one identity per table")
        self.labels = labels if labels is not None else list(range(self.count))
        # a row (column) of a Latin square is a permutation; argsort inverts it
        self.ldiv_tables = np.argsort(self.tables, axis=2, kind="stable")
        self.rdiv_tables = np.argsort(self.tables, axis=1, kind="stable")
        b = np.arange(self.count)
        self.lin_maps = self.rdiv_tables[b, self.identities, :]
        self.rin_maps = self.ldiv_tables[b, :, self.identities]
        n = self.order
        self._flat = (self.tables.ravel(), self.ldiv_tables.ravel(), self.rdiv_tables.ravel())
        self._base = (b * n * n)[:, None]
        self._lin, self._rin = self.lin_maps.ravel(), self.rin_maps.ravel()
        self._row = (b * n)[:, None]
        self.e = self.identities[:, None]

    def mul(self, x, y):
        return self._flat[0][self._base + x * self.order + y]

    def ldiv(self, x, y):
        return self._flat[1][self._base + x * self.order + y]

    def rdiv(self, x, y):
        return self._flat[2][self._base + x * self.order + y]

    def lin(self, x):
        return self._lin[self._row + x]

    def rin(self, x):
        return self._rin[self._row + x]

    def loop(self, i: int) -> FiniteLoop:
        return FiniteLoop(self.tables[i], int(self.identities[i]))

    @classmethod
    def of(cls, loops: list[FiniteLoop], labels: list | None = None) -> LoopStack:
        return cls(np.stack([L.table for L in loops]), np.array([L.identity for L in loops]), labels)


def isotope_stack(L: FiniteLoop, kind: str = "full", us=None) -> LoopStack:
    """Every principal isotope of the given kind, batched.

    Order: (u, v) lexicographic for ``full``; by v for ``left``; by u for
    ``right``, matching :func:`all_principal_isotopes`.  ``us`` restricts
    ``full`` isotopes to the given values of u.
    """
    n, T = L.order, L.table
    over_v = L.rdiv_table.T  # over_v[v, x] = x / v
    under_u = L.ldiv_table  # under_u[u, y] = u \ y
    ident = np.arange(n)
    if kind == "full":
        urange = ident if us is None else np.asarray(us, dtype=np.int64).reshape(-1)
        k = len(urange)
        tables = T[over_v[None, :, :, None], under_u[urange][:, None, None, :]].reshape(k * n, n, n)
        ids = T[np.repeat(urange, n), np.tile(ident, k)]
        specs = [IsotopeSpec.full(int(u), v) for u in urange for v in range(n)]
    elif kind == "left":
        tables = T[over_v[:, :, None], ident[None, None, :]]
        ids = ident
        specs = [IsotopeSpec.left(v) for v in range(n)]
    elif kind == "right":
        tables = T[ident[None, :, None], under_u[:, None, :]]
        ids = ident
        specs = [IsotopeSpec.right(u) for u in range(n)]
    else:
        raise ValueError(f"unknown isotope kind {kind!r}")
    return LoopStack(tables, ids, specs)


# -- autotopisms ------------------------------------------------------------


class AutotopismTriple(NamedTuple):
    A: Perm
    B: Perm
    C: Perm


def is_autotopism(L: FiniteLoop, t: AutotopismTriple) -> bool:
    """True iff xA · yB = (x·y)C for all x, y."""
    A, B, C = (np.asarray(p.map) for p in t)
    if not (len(A) == len(B) == len(C) == L.order):
        raise ValueError("triple and loop orders differ")
    return bool(np.array_equal(L.table[A[:, None], B[None, :]], C[L.table]))


def autotopism_failure(L: FiniteLoop, t: AutotopismTriple) -> tuple[int, int] | None:
    A, B, C = (np.asarray(p.map) for p in t)
    bad = L.table[A[:, None], B[None, :]] != C[L.table]
    if not bad.any():
        return None
    x, y = np.unravel_index(int(np.argmax(bad)), bad.shape)
    return int(x), int(y)


class _Maps:
    """Shorthand for translation maps of one loop."""

    def __init__(self, L: FiniteLoop):
        self.L = L

    def R(self, a):
        return self.L.right_translation(int(a))

    def L_(self, a):
        return self.L.left_translation(int(a))

    def Rinv(self, a):
        return self.L.right_division_map(int(a))

    def Linv(self, a):
        return self.L.left_division_map(int(a))


def osborn_triples(L: FiniteLoop, x: int, u: int, v: int) -> tuple[AutotopismTriple, AutotopismTriple, AutotopismTriple]:
    """The three autotopisms attached to universal Osborn loops, for (x, u, v).

    With w = u\\(xv):
      β = L_u 𝕉_v R_w 𝕃_u,  γ = 𝕉_v R_w 𝕃_u L_x
      1st: (R_{u\\([(uv)/w]v)} 𝕉_v R_w 𝕃_u L_x 𝕉_v, β, γ)
      2nd: (R_w 𝕉_v R_{x\\(uv)} 𝕉_w R_v γ 𝕉_v, β, γ)
      3rd: (γ 𝕉_{u\\[(u/v)w]}, β, γ)
    """
    m, Q = _Maps(L), L
    w = Q.ldiv(u, Q.mul(x, v))
    beta = compose(m.L_(u), m.Rinv(v), m.R(w), m.Linv(u))
    gamma = compose(m.Rinv(v), m.R(w), m.Linv(u), m.L_(x))
    a1 = Q.ldiv(u, Q.mul(Q.rdiv(Q.mul(u, v), w), v))
    alpha = compose(m.R(a1), m.Rinv(v), m.R(w), m.Linv(u), m.L_(x), m.Rinv(v))
    second = compose(m.R(w), m.Rinv(v), m.R(Q.ldiv(x, Q.mul(u, v))), m.Rinv(w), m.R(v), gamma, m.Rinv(v))
    third = compose(gamma, m.Rinv(Q.ldiv(u, Q.mul(Q.rdiv(u, v), w))))
    return (
        AutotopismTriple(alpha, beta, gamma),
        AutotopismTriple(second, beta, gamma),
        AutotopismTriple(third, beta, gamma),
    )


def left_osborn_triples(L: FiniteLoop, x: int, v: int) -> tuple[AutotopismTriple, AutotopismTriple, AutotopismTriple]:
    """Left-universal analogue: β = 𝕉_v R_{xv}, γ = 𝕉_v R_{xv} L_x."""
    m, Q = _Maps(L), L
    xv = Q.mul(x, v)
    beta = compose(m.Rinv(v), m.R(xv))
    gamma = compose(m.Rinv(v), m.R(xv), m.L_(x))
    alpha = compose(m.R(Q.mul(Q.rdiv(v, xv), v)), m.Rinv(v), m.R(xv), m.L_(x), m.Rinv(v))
    second = compose(m.R(xv), m.Rinv(v), m.R(Q.ldiv(x, v)), m.Rinv(xv), m.R(v), gamma, m.Rinv(v))
    third = compose(gamma, m.Rinv(Q.mul(Q.lin(v), xv)))
    return (
        AutotopismTriple(alpha, beta, gamma),
        AutotopismTriple(second, beta, gamma),
        AutotopismTriple(third, beta, gamma),
    )


def right_osborn_triples(L: FiniteLoop, x: int, u: int) -> tuple[AutotopismTriple, AutotopismTriple, AutotopismTriple]:
    """Right-universal analogue: β = L_u R_{u\\x} 𝕃_u, γ = R_{u\\x} 𝕃_u L_x."""
    m, Q = _Maps(L), L
    ux = Q.ldiv(u, x)
    beta = compose(m.L_(u), m.R(ux), m.Linv(u))
    gamma = compose(m.R(ux), m.Linv(u), m.L_(x))
    alpha = compose(m.R(Q.ldiv(u, Q.rdiv(u, ux))), m.R(ux), m.Linv(u), m.L_(x))
    second = compose(m.R(ux), m.R(Q.ldiv(x, u)), m.Rinv(ux), gamma)
    third = compose(gamma, m.Rinv(ux))
    return (
        AutotopismTriple(alpha, beta, gamma),
        AutotopismTriple(second, beta, gamma),
        AutotopismTriple(third, beta, gamma),
    )


# -- pseudo-automorphisms and VD-loops --------------------------------------


@dataclass(frozen=True)
class PseudoAutomorphismPolicy:
    """How a pseudo-automorphism A with companion c is tested.

    ``side_left``: the triple used for left pseudo-automorphisms, either
    ``"c-left"`` (A L_c, A, A L_c), i.e. (c·xA)(yA) = c·(xy)A, or the mirror
    ``"c-right"`` (A R_c, A, A R_c).  ``side_right`` likewise for right
    pseudo-automorphisms, default (A, A R_c, A R_c).
    """

    side_left: str = "c-left"
    side_right: str = "c-right"

    def left_triple(self, L: FiniteLoop, A: Perm, c: int) -> AutotopismTriple:
        T = L.left_translation(c) if self.side_left == "c-left" else L.right_translation(c)
        return AutotopismTriple(A.then(T), A, A.then(T))

    def right_triple(self, L: FiniteLoop, A: Perm, c: int) -> AutotopismTriple:
        T = L.right_translation(c) if self.side_right == "c-right" else L.left_translation(c)
        return AutotopismTriple(A, A.then(T), A.then(T))


DEFAULT_POLICY = PseudoAutomorphismPolicy()


def _unital(L: FiniteLoop, A: Perm) -> None:
    image = int(A(L.identity))
    if image != L.identity:
        raise NotUnital(image)


def is_left_pseudo_automorphism(L: FiniteLoop, A: Perm, c: int, policy: PseudoAutomorphismPolicy = DEFAULT_POLICY) -> bool:
    _unital(L, A)
    return is_autotopism(L, policy.left_triple(L, A, c))


def is_right_pseudo_automorphism(L: FiniteLoop, A: Perm, c: int, policy: PseudoAutomorphismPolicy = DEFAULT_POLICY) -> bool:
    _unital(L, A)
    return is_autotopism(L, policy.right_triple(L, A, c))


def vd_maps(L: FiniteLoop, x: int) -> tuple[Perm, Perm]:
    """(R_x^{-1} L_x, L_x^{-1} R_x), read left to right."""
    Rinv, Linv = L.right_division_map(x), L.left_division_map(x)
    return Rinv.then(L.left_translation(x)), Linv.then(L.right_translation(x))


def is_vd_loop(L: FiniteLoop, policy: PseudoAutomorphismPolicy = DEFAULT_POLICY) -> bool:
    """Every R_x^{-1}L_x is a left, and every L_x^{-1}R_x a right, pseudo-automorphism with companion x.

    A map that moves the identity is not a pseudo-automorphism, so such an x
    makes the loop fail.
    """
    for x in L.elements():
        left_map, right_map = vd_maps(L, x)
        try:
            if not is_left_pseudo_automorphism(L, left_map, x, policy):
                return False
            if not is_right_pseudo_automorphism(L, right_map, x, policy):
                return False
        except NotUnital:
            return False
    return True


# -- batched triple checks --------------------------------------------------
#
# A map is a list of (op, element-array) steps applied left to right to the
# identity map, for N parameter tuples at once.  Ops: R, L, Ri (R^{-1}), Li.


def _run_maps(L: FiniteLoop, steps, count: int) -> np.ndarray:
    T, ld, rd = L.table, L.ldiv_table, L.rdiv_table
    M = np.broadcast_to(np.arange(L.order), (count, L.order))
    for op, a in steps:
        a = np.broadcast_to(a, (count,))[:, None]
        if op == "R":
            M = T[M, a]
        elif op == "L":
            M = T[a, M]
        elif op == "Ri":
            M = rd[M, a]
        else:
            M = ld[a, M]
    return M


def _triple_steps(L: FiniteLoop, family: str, params: np.ndarray):
    Q = L
    if family == "full":
        x, u, v = params
        w = Q.ldiv(u, Q.mul(x, v))
        beta = [("L", u), ("Ri", v), ("R", w), ("Li", u)]
        gamma = [("Ri", v), ("R", w), ("Li", u), ("L", x)]
        a1 = Q.ldiv(u, Q.mul(Q.rdiv(Q.mul(u, v), w), v))
        alpha = [("R", a1), ("Ri", v), ("R", w), ("Li", u), ("L", x), ("Ri", v)]
        second = [("R", w), ("Ri", v), ("R", Q.ldiv(x, Q.mul(u, v))), ("Ri", w), ("R", v)] + gamma + [("Ri", v)]
        third = gamma + [("Ri", Q.ldiv(u, Q.mul(Q.rdiv(u, v), w)))]
    elif family == "left":
        x, v = params
        xv = Q.mul(x, v)
        beta = [("Ri", v), ("R", xv)]
        gamma = [("Ri", v), ("R", xv), ("L", x)]
        alpha = [("R", Q.mul(Q.rdiv(v, xv), v)), ("Ri", v), ("R", xv), ("L", x), ("Ri", v)]
        second = [("R", xv), ("Ri", v), ("R", Q.ldiv(x, v)), ("Ri", xv), ("R", v)] + gamma + [("Ri", v)]
        third = gamma + [("Ri", Q.mul(Q.lin(v), xv))]
    elif family == "right":
        x, u = params
        ux = Q.ldiv(u, x)
        beta = [("L", u), ("R", ux), ("Li", u)]
        gamma = [("R", ux), ("Li", u), ("L", x)]
        alpha = [("R", Q.ldiv(u, Q.rdiv(u, ux))), ("R", ux), ("Li", u), ("L", x)]
        second = [("R", ux), ("R", Q.ldiv(x, u)), ("Ri", ux)] + gamma
        third = gamma + [("Ri", ux)]
    else:
        raise ValueError(f"unknown triple family {family!r}")
    return (alpha, second, third), beta, gamma


TRIPLE_PARAMS = {"full": ("x", "u", "v"), "left": ("x", "v"), "right": ("x", "u")}


def triple_failures(L: FiniteLoop, family: str = "full", which: tuple[int, ...] = (1, 2, 3)):
    """First parameter tuple (lexicographic) at which an Osborn triple fails.

    Returns ``None`` if, for every tuple, each selected triple (1 = first,
    2 = second, 3 = third) is an autotopism; otherwise a dict with the
    parameters and the failing triple number.  Equivalent to looping
    :func:`osborn_triples` (or the left/right versions) with
    :func:`is_autotopism`, but batched.
    """
    n = L.order
    names = TRIPLE_PARAMS[family]
    grid = np.indices((n,) * len(names)).reshape(len(names), -1)
    chunk = max(1, (1 << 22) // (n * n))
    for start in range(0, grid.shape[1], chunk):
        params = grid[:, start : start + chunk]
        count = params.shape[1]
        firsts, beta, gamma = _triple_steps(L, family, params)
        B = _run_maps(L, beta, count)
        C = _run_maps(L, gamma, count)
        rhs = np.take_along_axis(C, L.table.reshape(1, -1).repeat(count, 0), axis=1).reshape(count, n, n)
        lhs_b = B[:, None, :]
        bad_any = np.zeros(count, dtype=bool)
        bad_which = np.zeros(count, dtype=np.int64)
        for k in sorted(which, reverse=True):
            A = _run_maps(L, firsts[k - 1], count)
            bad = (L.table[A[:, :, None], lhs_b] != rhs).any(axis=(1, 2))
            bad_which[bad] = k
            bad_any |= bad
        if bad_any.any():
            j = int(np.argmax(bad_any))
            out = {name: int(params[i, j]) for i, name in enumerate(names)}
            out["triple"] = int(bad_which[j])
            return out
    return None

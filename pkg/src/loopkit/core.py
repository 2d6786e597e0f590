"""Finite loops as Cayley tables.

Elements are the integers ``0..n-1``.  A :class:`FiniteLoop` keeps its
multiplication table together with precomputed left/right division tables
and inverse maps, so every primitive operation is a table lookup.  All
lookups accept numpy index arrays as well as plain ints, which is what the
identity sweeps rely on.

Permutations act on the right: ``y P Q`` means apply ``P`` first, then
``Q``.  :meth:`Perm.then` implements that composition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 64


class LoopError(ValueError):
    """Base class for loop validation failures."""


class NotLatin(LoopError):
    def __init__(self, kind: str, index: int, element: int):
        self.kind = kind
        self.index = index
        self.element = element
        super().__init__(f"{kind} {index} repeats element {element}")


class NoIdentity(LoopError):
    def __init__(self):
        super().__init__("table has no two-sided identity element")


class WrongIdentity(LoopError):
    def __init__(self, claimed: int, actual: int | None):
        self.claimed = claimed
        self.actual = actual
        super().__init__(f"claimed identity {claimed} is not the identity (actual: {actual})")


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def _inverse_rows(table: np.ndarray) -> np.ndarray:
    """Row-wise inverse: out[x, table[x, z]] = z."""
    n = table.shape[0]
    out = np.empty_like(table)
    rows = np.repeat(np.arange(n), n)
    out[rows, table.ravel()] = np.tile(np.arange(n), n)
    return out


@dataclass(frozen=True, eq=False)
class Perm:
    """A bijection on ``{0..n-1}``, stored as its image array."""

    map: np.ndarray

    def __post_init__(self):
        m = _frozen(np.asarray(self.map))
        n = m.shape[0]
        if m.ndim != 1 or n == 0 or not np.array_equal(np.sort(m), np.arange(n)):
            raise ValueError("not a permutation of 0..n-1")
        object.__setattr__(self, "map", m)

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(np.arange(n))

    @property
    def order(self) -> int:
        return self.map.shape[0]

    def __call__(self, y):
        return self.map[y]

    def then(self, other: Perm) -> Perm:
        """Left-to-right product: ``y (self.then(other)) = (y self) other``."""
        return Perm(other.map[self.map])

    def inverse(self) -> Perm:
        inv = np.empty_like(self.map)
        inv[self.map] = np.arange(self.order)
        return Perm(inv)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.map, np.arange(self.order)))

    def cycle_order(self) -> int:
        """Order of the permutation in the symmetric group (lcm of cycle lengths)."""
        seen = np.zeros(self.order, dtype=bool)
        result = 1
        for start in range(self.order):
            if seen[start]:
                continue
            length, y = 0, start
            while not seen[y]:
                seen[y] = True
                y = int(self.map[y])
                length += 1
            result = np.lcm(result, length)
        return int(result)

    def __eq__(self, other):
        return isinstance(other, Perm) and np.array_equal(self.map, other.map)

    def __hash__(self):
        return hash(self.map.tobytes())

    def __repr__(self):
        return f"Perm({self.map.tolist()})"


def compose(*perms: Perm) -> Perm:
    """Compose permutations left to right (``compose(P, Q)`` is ``PQ``)."""
    result = perms[0]
    for p in perms[1:]:
        result = result.then(p)
    return result


class FiniteLoop:
    """A validated finite loop.

    Use :func:`validate` (or :meth:`from_table`) to build one.  The
    instance is immutable; ``table``, ``ldiv_table`` and ``rdiv_table`` are
    read-only arrays.
    """

    __slots__ = ("table", "identity", "ldiv_table", "rdiv_table", "__dict__")

    def __init__(self, table: np.ndarray, identity: int):
        # trusted constructor: callers must have validated the table
        self.table = _frozen(table)
        self.identity = int(identity)
        self.ldiv_table = _frozen(_inverse_rows(self.table))
        # rdiv[x, y] = z with z*y = x; columns of table are rows of its transpose
        self.rdiv_table = _frozen(_inverse_rows(self.table.T).T)

    @classmethod
    def from_table(cls, table, identity: int | None = None) -> FiniteLoop:
        return validate(table, identity)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def e(self) -> int:
        return self.identity

    def __len__(self):
        return self.order

    def elements(self) -> range:
        return range(self.order)

    # primitive operations; all accept ints or integer arrays

    @cached_property
    def _flat(self):
        return self.table.ravel(), self.ldiv_table.ravel(), self.rdiv_table.ravel()

    def mul(self, x, y):
        return self._flat[0][x * self.order + y]

    def ldiv(self, x, y):
        """``x \\ y``: the unique z with x*z = y."""
        return self._flat[1][x * self.order + y]

    def rdiv(self, x, y):
        """``x / y``: the unique z with z*y = x."""
        return self._flat[2][x * self.order + y]

    @cached_property
    def lin_map(self) -> np.ndarray:
        return _frozen(self.rdiv_table[self.identity, :])

    @cached_property
    def rin_map(self) -> np.ndarray:
        return _frozen(self.ldiv_table[:, self.identity])

    def lin(self, x):
        """Left inverse x^λ, with x^λ * x = e."""
        return self.lin_map[x]

    def rin(self, x):
        """Right inverse x^ρ, with x * x^ρ = e."""
        return self.rin_map[x]

    def left_translation(self, x: int) -> Perm:
        """L_x : y -> x*y."""
        return Perm(self.table[x, :])

    def right_translation(self, x: int) -> Perm:
        """R_x : y -> y*x."""
        return Perm(self.table[:, x])

    def left_division_map(self, x: int) -> Perm:
        """L_x^{-1} : y -> x \\ y."""
        return Perm(self.ldiv_table[x, :])

    def right_division_map(self, x: int) -> Perm:
        """R_x^{-1} : y -> y / x."""
        return Perm(self.rdiv_table[:, x])

    def e_map(self, x: int, convention: str = "basarab") -> Perm:
        """The map E_x used to state the Osborn identities.

        ``basarab``: E_x = R_x R_{x^ρ}.  ``osborn``: E_x = L_x L_{x^λ}.
        """
        if convention == "basarab":
            return self.right_translation(x).then(self.right_translation(int(self.rin(x))))
        if convention == "osborn":
            return self.left_translation(x).then(self.left_translation(int(self.lin(x))))
        raise ValueError(f"unknown E_x convention {convention!r}")

    def inverse_map(self, which: str) -> Perm:
        if which in ("lambda", "l", "left"):
            return Perm(self.lin_map)
        if which in ("rho", "r", "right"):
            return Perm(self.rin_map)
        raise ValueError(f"unknown inverse map {which!r}")

    def is_associative(self) -> bool:
        t = self.table
        return bool(np.array_equal(t[t, :], t[:, t]))

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def relabel(self, perm: Sequence[int]) -> FiniteLoop:
        """Isomorphic copy where element ``a`` is renamed ``perm[a]``."""
        p = np.asarray(perm, dtype=np.int64)
        new = np.empty_like(self.table)
        new[np.ix_(p, p)] = p[self.table]
        return FiniteLoop(new, int(p[self.identity]))

    def normalized(self) -> FiniteLoop:
        """Copy with the identity moved to index 0 (swapping labels 0 and e)."""
        if self.identity == 0:
            return self
        p = np.arange(self.order)
        p[0], p[self.identity] = self.identity, 0
        return self.relabel(p)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteLoop)
            and self.identity == other.identity
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.identity, self.table.tobytes()))

    def __repr__(self):
        return f"FiniteLoop(order={self.order}, identity={self.identity})"

    def __str__(self):
        return "\n".join(" ".join(str(int(v)) for v in row) for row in self.table)


def _check_latin(t: np.ndarray) -> None:
    n = t.shape[0]
    full = np.arange(n)
    for kind, mat in (("row", t), ("column", t.T)):
        for i, line in enumerate(mat):
            if not np.array_equal(np.sort(line), full):
                counts = np.bincount(line, minlength=n)
                raise NotLatin(kind, i, int(np.argmax(counts > 1)))


def find_identity(t: np.ndarray) -> int | None:
    n = t.shape[0]
    full = np.arange(n)
    for x in range(n):
        if np.array_equal(t[x], full) and np.array_equal(t[:, x], full):
            return x
    return None


def validate(table: Iterable[Iterable[int]] | np.ndarray, claimed_identity: int | None = None) -> FiniteLoop:
    """Check the Latin and identity axioms and return a :class:`FiniteLoop`.

    The identity is detected automatically unless ``claimed_identity`` is
    given, in which case it must be the true identity.
    """
    t = np.array(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise LoopError("table must be a non-empty square array")
    n = t.shape[0]
    if n > MAX_ORDER:
        raise LoopError(f"order {n} exceeds the supported maximum {MAX_ORDER}")
    if t.min() < 0 or t.max() >= n:
        raise LoopError(f"table entries must lie in 0..{n - 1}")
    _check_latin(t)
    actual = find_identity(t)
    if claimed_identity is not None:
        if actual != claimed_identity:
            raise WrongIdentity(claimed_identity, actual)
    elif actual is None:
        raise NoIdentity()
    return FiniteLoop(t, actual)


def is_latin(table: np.ndarray) -> bool:
    try:
        _check_latin(np.asarray(table))
    except NotLatin:
        return False
    return True


# module-level spellings of the primitives


def mul(L: FiniteLoop, x, y):
    return L.mul(x, y)


def ldiv(L: FiniteLoop, x, y):
    return L.ldiv(x, y)


def rdiv(L: FiniteLoop, x, y):
    return L.rdiv(x, y)


def lin(L: FiniteLoop, x):
    return L.lin(x)


def rin(L: FiniteLoop, x):
    return L.rin(x)


def left_translation(L: FiniteLoop, x: int) -> Perm:
    return L.left_translation(x)


def right_translation(L: FiniteLoop, x: int) -> Perm:
    return L.right_translation(x)


def e_map(L: FiniteLoop, x: int, convention: str = "basarab") -> Perm:
    return L.e_map(x, convention)

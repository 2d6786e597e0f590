"""Curated loops: every group of order at most 16, plus named examples.

Groups are built from standard constructions (cyclic, direct products,
cyclic-by-cyclic semidirect products, dicyclic groups, permutation groups)
and relabeled so the identity is element 0.
"""

from __future__ import annotations

import itertools
from pathlib import Path
from typing import Callable, Hashable, Iterable

import numpy as np

from .core import FiniteLoop, validate

L5_TABLE = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
]


def l5() -> FiniteLoop:
    """A nonassociative loop of order 5; it is not power-associative."""
    return validate(L5_TABLE)


def _from_elements(elems: list, mul: Callable) -> FiniteLoop:
    index = {g: i for i, g in enumerate(elems)}
    n = len(elems)
    t = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            t[i, j] = index[mul(a, b)]
    return validate(t).normalized()


def closure(gens: Iterable[Hashable], mul: Callable, identity: Hashable) -> FiniteLoop:
    """Cayley table of the group generated by ``gens``, in breadth-first order."""
    gens = list(gens)
    elems, seen = [identity], {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mul(a, g)
                if b not in seen:
                    seen.add(b)
                    elems.append(b)
                    nxt.append(b)
        frontier = nxt
    return _from_elements(elems, mul)


def cyclic(n: int) -> FiniteLoop:
    return validate([[(i + j) % n for j in range(n)] for i in range(n)])


def direct_product(A: FiniteLoop, B: FiniteLoop) -> FiniteLoop:
    """Pairs (a, b) encoded as a * |B| + b."""
    m = B.order
    t = A.table[:, None, :, None] * m + B.table[None, :, None, :]
    n = A.order * m
    return validate(t.reshape(n, n)).normalized()


def semidirect_cyclic(m: int, k: int, r: int) -> FiniteLoop:
    """Z_m ⋊ Z_k where the generator of Z_k acts by multiplication by r."""
    if pow(r, k, m) != 1 % m:
        raise ValueError("r must have multiplicative order dividing k mod m")
    elems = [(a, b) for b in range(k) for a in range(m)]
    return _from_elements(elems, lambda p, q: ((p[0] + pow(r, p[1], m) * q[0]) % m, (p[1] + q[1]) % k))


def dihedral(n: int) -> FiniteLoop:
    """Symmetries of the n-gon, order 2n."""
    return semidirect_cyclic(n, 2, n - 1)


def dicyclic(n: int) -> FiniteLoop:
    """Dicyclic group of order 4n: a^{2n} = 1, x^2 = a^n, x a x^{-1} = a^{-1}."""
    m = 2 * n

    def mul(p, q):
        (i, s), (j, t) = p, q
        if s == 0:
            return ((i + j) % m, t)
        if t == 0:
            return ((i - j) % m, 1)
        return ((i - j + n) % m, 0)

    return _from_elements([(i, s) for s in range(2) for i in range(m)], mul)


def _perm_mul(p, q):
    # apply p then q
    return tuple(q[i] for i in p)


def permutation_group(gens: list[tuple[int, ...]]) -> FiniteLoop:
    n = len(gens[0])
    return closure(gens, _perm_mul, tuple(range(n)))


def _pauli() -> FiniteLoop:
    """The group generated by the Pauli matrices (order 16)."""
    X = ((0, 1), (1, 0))
    Z = ((1, 0), (0, -1))
    Y = ((0, -1j), (1j, 0))

    def mul(a, b):
        m = np.array(a) @ np.array(b)
        return tuple(tuple(complex(v) for v in row) for row in m)

    canon = lambda a: mul(a, ((1, 0), (0, 1)))  # noqa: E731
    return closure([canon(X), canon(Y), canon(Z)], mul, canon(((1, 0), (0, 1))))


def _z4z2_by_z2() -> FiniteLoop:
    """(Z4 × Z2) ⋊ Z2 with a -> ab, b -> b, as permutations of Z4 × Z2."""
    pts = [(x, y) for x in range(4) for y in range(2)]
    idx = {p: i for i, p in enumerate(pts)}
    ta = tuple(idx[((x + 1) % 4, y)] for x, y in pts)
    tb = tuple(idx[(x, (y + 1) % 2)] for x, y in pts)
    phi = tuple(idx[(x, (y + x) % 2)] for x, y in pts)
    return permutation_group([ta, tb, phi])


def alternating4() -> FiniteLoop:
    return permutation_group([(1, 2, 0, 3), (0, 2, 3, 1)])


def groups() -> dict[str, FiniteLoop]:
    """Every group of order 1..16 up to isomorphism (42 of them), by name."""
    Z = cyclic
    P = direct_product
    g: dict[str, FiniteLoop] = {"Z1": Z(1)}
    for n in range(2, 17):
        g[f"Z{n}"] = Z(n)
    g["Klein4"] = P(Z(2), Z(2))
    g["S3"] = dihedral(3)
    g["Z2xZ4"] = P(Z(2), Z(4))
    g["Z2^3"] = P(P(Z(2), Z(2)), Z(2))
    g["D4"] = dihedral(4)
    g["Q8"] = dicyclic(2)
    g["Z3xZ3"] = P(Z(3), Z(3))
    g["D5"] = dihedral(5)
    g["Z2xZ6"] = P(Z(2), Z(6))
    g["D6"] = dihedral(6)
    g["Dic3"] = dicyclic(3)
    g["A4"] = alternating4()
    g["D7"] = dihedral(7)
    g["Z2xZ8"] = P(Z(2), Z(8))
    g["Z4xZ4"] = P(Z(4), Z(4))
    g["Z2^2xZ4"] = P(P(Z(2), Z(2)), Z(4))
    g["Z2^4"] = P(P(Z(2), Z(2)), P(Z(2), Z(2)))
    g["D8"] = dihedral(8)
    g["Q16"] = dicyclic(4)
    g["SD16"] = semidirect_cyclic(8, 2, 3)
    g["M16"] = semidirect_cyclic(8, 2, 5)
    g["Z4:Z4"] = semidirect_cyclic(4, 4, 3)
    g["Z2xD4"] = P(Z(2), dihedral(4))
    g["Z2xQ8"] = P(Z(2), dicyclic(2))
    g["Pauli"] = _pauli()
    g["(Z4xZ2):Z2"] = _z4z2_by_z2()
    return g


def chein_double(G: FiniteLoop) -> FiniteLoop:
    """Chein's loop M(G, 2) on G × {0, 1}.

    (g,0)(h,0) = (gh,0), (g,0)(h,1) = (hg,1), (g,1)(h,0) = (gh⁻¹,1),
    (g,1)(h,1) = (h⁻¹g,0).  Moufang for every group G; nonassociative when
    G is not abelian.
    """
    n, T = G.order, G.table
    inv = G.rin_map
    t = np.empty((2 * n, 2 * n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            t[a, b] = T[a, b]
            t[a, n + b] = n + T[b, a]
            t[n + a, b] = n + T[a, inv[b]]
            t[n + a, n + b] = T[inv[b], a]
    return validate(t).normalized()


def moufang12() -> FiniteLoop:
    """The smallest nonassociative Moufang loop, M(S3, 2)."""
    return chein_double(dihedral(3))


def invariants(L: FiniteLoop) -> tuple:
    """Isomorphism invariants: associativity, commutativity, and the sorted
    (x*x, x^l, x^r)-pattern statistics used to tell small loops apart."""
    T = L.table
    sq = T[np.arange(L.order), np.arange(L.order)]
    # number of x with x*x = e, and the square-map cycle type
    orders = []
    for x in L.elements():
        k, y = 1, x
        while y != L.identity and k <= L.order:
            y = int(T[y, x])
            k += 1
        orders.append(k)
    return (
        L.order,
        L.is_associative(),
        L.is_commutative(),
        tuple(sorted(orders)),
        int((sq == L.identity).sum()),
        int((L.lin_map == L.rin_map).sum()),
    )


def canonical_form(L: FiniteLoop) -> bytes:
    """Lexicographically least relabeled table (identity fixed at 0).

    Brute force over all (n-1)! relabelings, so only for small orders.
    """
    L = L.normalized()
    n = L.order
    if n > 8:
        raise ValueError("canonical_form is brute force; order must be at most 8")
    P = np.array([(0,) + p for p in itertools.permutations(range(1, n))], dtype=np.int64)
    Pinv = np.argsort(P, axis=1)
    X = L.table[Pinv[:, :, None], Pinv[:, None, :]].reshape(len(P), -1)
    Y = np.take_along_axis(P, X, 1).astype(np.uint8)
    return min(map(bytes, Y))


def class_representatives(loops: Iterable[FiniteLoop]) -> list[tuple[FiniteLoop, int]]:
    """First loop of each isomorphism class, with the class size, in input order."""
    seen: dict[bytes, int] = {}
    reps: list[list] = []
    for L in loops:
        key = canonical_form(L)
        if key in seen:
            reps[seen[key]][1] += 1
        else:
            seen[key] = len(reps)
            reps.append([L, 1])
    return [(L, k) for L, k in reps]


GROUP_RECIPES = {
    "Klein4": "Z2 x Z2", "S3": "dihedral, order 6", "Z2xZ4": "Z2 x Z4", "Z2^3": "Z2 x Z2 x Z2",
    "D4": "dihedral, order 8", "Q8": "dicyclic, order 8", "Z3xZ3": "Z3 x Z3",
    "D5": "dihedral, order 10", "Z2xZ6": "Z2 x Z6", "D6": "dihedral, order 12",
    "Dic3": "dicyclic, order 12", "A4": "even permutations of 4 points", "D7": "dihedral, order 14",
    "Z2xZ8": "Z2 x Z8", "Z4xZ4": "Z4 x Z4", "Z2^2xZ4": "Z2 x Z2 x Z4", "Z2^4": "Z2^4",
    "D8": "dihedral, order 16", "Q16": "dicyclic, order 16", "SD16": "Z8 : Z2, action x -> 3x",
    "M16": "Z8 : Z2, action x -> 5x", "Z4:Z4": "Z4 : Z4, action x -> 3x", "Z2xD4": "Z2 x D4",
    "Z2xQ8": "Z2 x Q8", "Pauli": "generated by the Pauli matrices",
    "(Z4xZ2):Z2": "(Z4 x Z2) : Z2, a -> ab, b -> b",
}


def build_corpus(directory, jobs: int = 1, cc_orders=(6, 8)) -> list[str]:
    """Write the shipped corpus files into ``directory``; return their names.

    CC exemplars come from exhaustive search: one loop per isomorphism
    class, the first found in enumeration order.
    """
    from .loopfile import LoopFile, format_loop_file
    from .search import SearchQuery, search

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []

    def emit(fname, lf, header):
        text = "".join(f"# {h}\n" for h in header) + "\n" + format_loop_file(lf)
        (directory / fname).write_text(text)
        written.append(fname)

    lf = LoopFile()
    for name, G in groups().items():
        recipe = GROUP_RECIPES.get(name, f"cyclic, order {G.order}")
        lf.add(name, G, [f"group of order {G.order}: {recipe}"])
    emit("groups.loop", lf, ["every group of order 1 to 16 up to isomorphism, 42 in all"])

    lf = LoopFile()
    lf.add("L5", l5(), ["nonassociative, not power-associative; fails 3-PAPL at x = 2"])
    emit("l5.loop", lf, ["a small nonassociative loop"])

    lf = LoopFile()
    lf.add("M12", moufang12(), ["Chein double M(S3, 2): the smallest nonassociative Moufang loop"])
    emit("moufang.loop", lf, ["nonassociative Moufang loops built by construction"])

    lf = LoopFile()
    for n in cc_orders:
        q = SearchQuery(order=n, require=("cc",), forbid=("associative",))
        hits = search(q, jobs=jobs)
        reps = class_representatives(h.loop for h in hits)
        for k, (L, size) in enumerate(reps, start=1):
            lf.add(f"CC{n}-{k}", L, [
                f"search --order {n} --require cc --forbid associative: {len(hits)} hits, "
                f"{len(reps)} isomorphism class{'es' if len(reps) != 1 else ''}",
                f"class {k}: {size} hits, this is its first in enumeration order",
            ])
    emit("cc.loop", lf, ["nonassociative CC-loops found by exhaustive search"])
    return written

"""Enumeration of small loops and property-filtered search."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from operator import itemgetter
from typing import Iterator

import numpy as np

from .core import FiniteLoop, LoopError
from .properties import METHODS, PropertyReport, canonical_name, cost, predicate

EXHAUSTIVE_CAP = 8


class OrderTooLarge(LoopError):
    def __init__(self, n: int, cap: int):
        super().__init__(f"order {n} exceeds the cap of {cap} for this mode")


def reduced_tables(n: int, prefix: list[list[int]] | None = None) -> Iterator[np.ndarray]:
    """Every reduced Latin square of order ``n`` in row-major lexicographic order.

    Cells are filled row by row with per-row and per-column bitmasks.
    ``prefix`` optionally pins the leading entries of row 1 (used to split
    the space into independent parts).
    """
    if n < 1:
        raise ValueError("order must be positive")
    grid = [[0] * n for _ in range(n)]
    rows = [0] * n
    cols = [0] * n
    for i in range(n):
        grid[0][i] = i
        grid[i][0] = i
        rows[0] |= 1 << i
        cols[i] |= 1 << i
        rows[i] |= 1 << i
        cols[0] |= 1 << i
    cells = [(r, c) for r in range(1, n) for c in range(1, n)]
    pinned = {}
    if prefix:
        for c, val in enumerate(prefix[0], start=1):
            pinned[(1, c)] = val
    full = (1 << n) - 1
    total = len(cells)

    def rec(k):
        if k == total:
            yield np.array(grid, dtype=np.int64)
            return
        r, c = cells[k]
        free = full & ~(rows[r] | cols[c])
        if (r, c) in pinned:
            want = pinned[(r, c)]
            free &= 1 << want
        while free:
            bit = free & -free
            free ^= bit
            v = bit.bit_length() - 1
            grid[r][c] = v
            rows[r] |= bit
            cols[c] |= bit
            yield from rec(k + 1)
            rows[r] ^= bit
            cols[c] ^= bit

    yield from rec(0)


def enumerate_loops(n: int) -> Iterator[FiniteLoop]:
    """Every loop on ``0..n-1`` with identity 0, once per Cayley table.

    Not up to isomorphism: the yield is exactly the reduced Latin squares of
    order ``n`` (1, 1, 1, 4, 56, 9408, ... of them).
    """
    if n > EXHAUSTIVE_CAP:
        raise OrderTooLarge(n, EXHAUSTIVE_CAP)
    for t in reduced_tables(n):
        yield FiniteLoop(t, 0)


# -- conjugacy closed loops -------------------------------------------------
#
# A loop is LCC when its set of left translations is closed under
# conjugation, and RCC likewise for right translations.  Rows of a Cayley
# table are the left translations, so once two rows are known every conjugate
# of one by the other is forced to be a row as well: the row whose entry at
# the identity is that conjugate's image of 0.  Assigning rows one at a time
# and closing under conjugation visits every LCC table; RCC is checked on the
# finished tables.  This is a complete generator for CC tables, not a filter
# on partial tables.


def _inv(p: tuple[int, ...]) -> tuple[int, ...]:
    q = [0] * len(p)
    for i, v in enumerate(p):
        q[v] = i
    return tuple(q)


def _conjugation_closed(perms: list[tuple[int, ...]]) -> bool:
    have = set(perms)
    n = len(perms)
    invs = [_inv(p) for p in perms]
    for a, ia in zip(perms, invs):
        for b in perms:
            if tuple(a[b[ia[y]]] for y in range(n)) not in have:
                return False
    return True


class _CCSearch:
    def __init__(self, n: int):
        self.n = n
        self.rows: list[tuple[int, ...] | None] = [None] * n
        # get[x](s) == s∘rows[x], i.e. (s[rows[x][0]], s[rows[x][1]], ...)
        self.get: list = [None] * n
        self.iget: list = [None] * n
        self.invs: list = [None] * n
        self.closed = [False] * n  # every pair of closed rows has been conjugated
        self.used = [0] * n  # per column, values already placed
        self._assign(0, tuple(range(n)), [])
        self.closed[0] = True

    def _assign(self, x: int, p: tuple[int, ...], trail: list[int]) -> bool:
        if self.rows[x] is not None:
            return self.rows[x] == p
        used = self.used
        for y in range(self.n):
            if used[y] >> p[y] & 1:
                return False
        inv = _inv(p)
        self.rows[x], self.invs[x] = p, inv
        self.get[x], self.iget[x] = itemgetter(*p), itemgetter(*inv)
        trail.append(x)
        for y in range(self.n):
            used[y] |= 1 << p[y]
        return True

    def _undo(self, trail: list[int]) -> None:
        for x in reversed(trail):
            p = self.rows[x]
            self.rows[x] = self.invs[x] = self.get[x] = self.iget[x] = None
            self.closed[x] = False
            for y in range(self.n):
                self.used[y] ^= 1 << p[y]

    def _close(self, start: int, trail: list[int]) -> bool:
        rows, invs, get, iget, closed = self.rows, self.invs, self.get, self.iget, self.closed
        queue = [start]
        while queue:
            b = queue.pop()
            pb, ib, gb, igb = rows[b], invs[b], get[b], iget[b]
            for a in range(self.n):
                if not closed[a]:
                    continue
                pa, ia, ga, iga = rows[a], invs[a], get[a], iget[a]
                # the four conjugates pa∘pb∘ia, ia∘pb∘pa, pb∘pa∘ib, ib∘pa∘pb
                for q in (iga(gb(pa)), ga(gb(ia)), igb(ga(pb)), gb(ga(ib))):
                    c = q[0]
                    fresh = rows[c] is None
                    if not self._assign(c, q, trail):
                        return False
                    if fresh:
                        queue.append(c)
            closed[b] = True
        return True

    def candidates(self, x: int) -> list[tuple[int, ...]]:
        n, used = self.n, self.used
        full = (1 << n) - 1
        p = [x] + [0] * (n - 1)
        out: list[tuple[int, ...]] = []

        def rec(y, taken):
            if y == n:
                out.append(tuple(p))
                return
            free = full & ~(taken | used[y])
            while free:
                bit = free & -free
                free ^= bit
                p[y] = bit.bit_length() - 1
                rec(y + 1, taken | bit)

        rec(1, 1 << x)
        return out

    def run(self, branch: tuple[int, ...] | None = None) -> Iterator[np.ndarray]:
        """Yield CC tables; ``branch`` pins the row chosen at the first branching."""
        if self.n == 1:
            yield np.zeros((1, 1), dtype=np.int64)
            return
        yield from self._rec(branch)

    def _rec(self, branch):
        try:
            x = self.rows.index(None)
        except ValueError:
            cols = [tuple(r[y] for r in self.rows) for y in range(self.n)]
            if _conjugation_closed(cols):
                yield np.array(self.rows, dtype=np.int64)
            return
        options = [branch] if branch is not None else self.candidates(x)
        for p in options:
            trail: list[int] = []
            if self._assign(x, p, trail) and self._close(x, trail):
                yield from self._rec(None)
            self._undo(trail)


def cc_branches(n: int) -> list[tuple[int, ...]]:
    """The candidate rows at the first branching point, in search order."""
    if n <= 2:
        return []
    return _CCSearch(n).candidates(1)


def cc_tables(n: int, branch: tuple[int, ...] | None = None) -> Iterator[np.ndarray]:
    """Every CC-loop table on ``0..n-1`` with identity 0.

    Deterministic order; ``branch`` restricts to one first-level subtree (see
    :func:`cc_branches`).
    """
    if n < 1:
        raise ValueError("order must be positive")
    if n > EXHAUSTIVE_CAP:
        raise OrderTooLarge(n, EXHAUSTIVE_CAP)
    if n <= 2 and branch is not None:
        return iter(())
    return _CCSearch(n).run(branch)


# -- property-filtered search -----------------------------------------------

FIRST_CAP = 10


@dataclass(frozen=True)
class SearchQuery:
    order: int
    require: tuple[str, ...] = ()
    forbid: tuple[str, ...] = ()
    limit: int | None = None
    mode: str = "exhaustive"  # or "first"
    seed: int = 0
    attempts: int = 2000  # restarts for mode="first" above the exhaustive cap
    method: str = "identity"  # how universality filters are decided

    def __post_init__(self):
        object.__setattr__(self, "require", tuple(self.require))
        object.__setattr__(self, "forbid", tuple(self.forbid))
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.mode not in ("exhaustive", "first"):
            raise ValueError(f"unknown search mode {self.mode!r}")
        req = {canonical_name(p) for p in self.require}
        bad = req & {canonical_name(p) for p in self.forbid}
        if bad:
            raise ValueError(f"properties both required and forbidden: {sorted(bad)}")
        cap = EXHAUSTIVE_CAP if self.mode == "exhaustive" else FIRST_CAP
        if self.order < 1:
            raise ValueError("order must be positive")
        if self.order > cap:
            raise OrderTooLarge(self.order, cap)


@dataclass(frozen=True)
class SearchHit:
    loop: FiniteLoop
    reports: tuple[PropertyReport, ...]

    def summary(self) -> dict[str, bool]:
        return {r.property: r.holds for r in self.reports}


def _filters(q: SearchQuery) -> list[tuple[str, bool]]:
    """(property, wanted) pairs, cheapest first; ties keep query order."""
    pairs = [(p, True) for p in q.require] + [(p, False) for p in q.forbid]
    return sorted(pairs, key=lambda pw: cost(pw[0]))


def _accept(L: FiniteLoop, filters, method: str = "identity") -> tuple[PropertyReport, ...] | None:
    reports = []
    for name, wanted in filters:
        r = predicate(L, name, method)
        if r.holds != wanted:
            return None
        reports.append(r)
    return tuple(reports)


def _uses_cc_generator(q: SearchQuery) -> bool:
    return any(canonical_name(p) in ("cc", "extra") for p in q.require)


def _partitions(q: SearchQuery) -> list:
    """Independent parts of the search space, in canonical order."""
    if _uses_cc_generator(q):
        return [("cc", b) for b in cc_branches(q.order)] or [("cc", None)]
    n = q.order
    if n <= 2:
        return [("latin", None)]
    return [("latin", [[v]]) for v in range(n) if v != 1]


def _run_partition(args) -> list[np.ndarray]:
    q, (kind, part), limit = args
    filters = _filters(q)
    hits = []
    tables = cc_tables(q.order, part) if kind == "cc" else reduced_tables(q.order, part)
    for t in tables:
        if _accept(FiniteLoop(t, 0), filters, q.method) is not None:
            hits.append(t)
            if limit is not None and len(hits) >= limit:
                break
    return hits


def _random_reduced(n: int, rng: np.random.Generator, max_steps: int = 20000) -> np.ndarray | None:
    """One reduced Latin square by randomized backtracking, or None if the step budget runs out."""
    grid = np.zeros((n, n), dtype=np.int64)
    grid[0] = grid[:, 0] = np.arange(n)
    # row r and column c already hold the value r (resp. c) from the border
    rows = [1 << i for i in range(n)]
    rows[0] = (1 << n) - 1
    cols = [1 << i for i in range(n)]
    cols[0] = (1 << n) - 1
    cells = [(r, c) for r in range(1, n) for c in range(1, n)]
    steps = 0

    def rec(k):
        nonlocal steps
        if k == len(cells):
            return True
        steps += 1
        if steps > max_steps:
            return False
        r, c = cells[k]
        free = [v for v in range(n) if not ((rows[r] | cols[c]) >> v & 1)]
        rng.shuffle(free)
        for v in free:
            grid[r, c] = v
            rows[r] |= 1 << v
            cols[c] |= 1 << v
            if rec(k + 1):
                return True
            rows[r] ^= 1 << v
            cols[c] ^= 1 << v
        return False

    return grid if rec(0) else None


def search(q: SearchQuery, jobs: int = 1) -> list[SearchHit]:
    """Loops of order ``q.order`` with every required and no forbidden property.

    Exhaustive mode walks all reduced tables (or, when CC is required, all
    CC tables) and returns hits in enumeration order, independent of
    ``jobs``.  First mode returns at most one hit: by enumeration up to the
    exhaustive cap, by seeded random restarts above it.
    """
    filters = _filters(q)
    limit = 1 if q.mode == "first" else q.limit
    if q.mode == "first" and q.order > EXHAUSTIVE_CAP:
        rng = np.random.default_rng(q.seed)
        for _ in range(q.attempts):
            t = _random_reduced(q.order, rng)
            if t is None:
                continue
            L = FiniteLoop(t, 0)
            reports = _accept(L, filters, q.method)
            if reports is not None:
                return [SearchHit(L, reports)]
        return []
    parts = _partitions(q)
    tasks = [(q, p, limit) for p in parts]
    tables: list[np.ndarray] = []
    if jobs > 1 and len(tasks) > 1 and limit is None:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for hits in pool.map(_run_partition, tasks, chunksize=max(1, len(tasks) // (4 * jobs))):
                tables.extend(hits)
    else:
        for task in tasks:
            tables.extend(_run_partition(task))
            if limit is not None and len(tables) >= limit:
                break
    if limit is not None:
        tables = tables[:limit]
    out = []
    for t in tables:
        L = FiniteLoop(t, 0)
        out.append(SearchHit(L, _accept(L, filters, q.method)))
    return out


def count(q: SearchQuery, jobs: int = 1) -> int:
    return len(search(q, jobs))

import itertools

import numpy as np
import pytest

from loopkit import validate
from loopkit.core import FiniteLoop
from loopkit.properties import predicate
from loopkit.search import (
    EXHAUSTIVE_CAP, OrderTooLarge, SearchQuery, cc_branches, cc_tables, count, enumerate_loops,
    reduced_tables, search,
)


def naive_reduced(n):
    """Reduced Latin squares by choosing whole rows among permutations; independent of the package."""
    if n == 1:
        return [((0,),)]
    perms = {r: [p for p in itertools.permutations(range(n)) if p[0] == r] for r in range(1, n)}
    out = []

    def rec(rows):
        r = len(rows)
        if r == n:
            out.append(tuple(rows))
            return
        for p in perms[r]:
            if all(p[c] != row[c] for row in rows for c in range(n)):
                rec(rows + [p])

    rec([tuple(range(n))])
    return out


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (3, 1), (4, 4), (5, 56)])
def test_reduced_counts_match_oracle(n, expected):
    got = sorted(tuple(map(tuple, t.tolist())) for t in reduced_tables(n))
    want = sorted(naive_reduced(n))
    assert len(got) == expected
    assert got == want


def test_order6_count_matches_oracle():
    assert sum(1 for _ in reduced_tables(6)) == len(naive_reduced(6)) == 9408


def test_enumerated_loops_are_reduced_and_valid():
    for L in enumerate_loops(4):
        assert L.identity == 0
        assert L.table[0].tolist() == list(range(4)) == L.table[:, 0].tolist()
        assert validate(L.table) == L


def test_prefix_partition_is_exact():
    total = sum(1 for v in range(5) if v != 1 for _ in reduced_tables(5, [[v]]))
    assert total == 56


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_cc_generator_matches_filtered_enumeration(n):
    filtered = sorted(t.tobytes() for t in reduced_tables(n) if predicate(FiniteLoop(t, 0), "cc").holds)
    generated = sorted(t.tobytes() for t in cc_tables(n))
    assert generated == filtered
    assert len(generated) == {1: 1, 2: 1, 3: 1, 4: 4, 5: 6, 6: 120}[n]


def test_cc_branches_partition_order6():
    branches = cc_branches(6)
    total = sum(1 for b in branches for _ in cc_tables(6, b))
    assert total == 120


def test_query_validation():
    with pytest.raises(OrderTooLarge):
        SearchQuery(order=EXHAUSTIVE_CAP + 1)
    with pytest.raises(OrderTooLarge):
        SearchQuery(order=11, mode="first")
    with pytest.raises(ValueError):
        SearchQuery(order=4, require=("moufang",), forbid=("moufang-loop",))
    with pytest.raises(ValueError):
        SearchQuery(order=4, mode="sometimes")
    with pytest.raises(ValueError):
        SearchQuery(order=0)
    with pytest.raises(ValueError):
        SearchQuery(order=4, method="vote")


def test_count_order5():
    assert count(SearchQuery(order=5)) == 56


def test_search_filters_are_sound():
    hits = search(SearchQuery(order=6, require=("commutative",), forbid=("associative",)))
    want = [L for L in enumerate_loops(6) if L.is_commutative() and not L.is_associative()]
    assert len(want) == 396
    assert [h.loop for h in hits] == want
    for h in hits:
        assert h.summary() == {"commutative": True, "associative": False}


def test_search_limit_and_first():
    q = SearchQuery(order=5, forbid=("associative",), limit=3)
    hits = search(q)
    assert len(hits) == 3
    first = search(SearchQuery(order=5, forbid=("associative",), mode="first"))
    assert len(first) == 1 and first[0].loop == hits[0].loop


def test_search_deterministic_across_jobs():
    q = SearchQuery(order=5, require=("power-associative",), forbid=("associative",))
    a = [h.loop for h in search(q, jobs=1)]
    b = [h.loop for h in search(q, jobs=3)]
    assert a == b and a


def test_cc_search_order6():
    hits = search(SearchQuery(order=6, require=("cc",), forbid=("associative",)))
    assert len(hits) == 40
    assert all(predicate(h.loop, "universal-osborn").holds for h in hits)


def test_no_osborn_non_universal_at_order6():
    assert count(SearchQuery(order=6, require=("osborn",), forbid=("universal-osborn",))) == 0


def test_random_first_mode_is_seeded_and_sound():
    q = SearchQuery(order=9, forbid=("associative",), mode="first", seed=7, attempts=5)
    a, b = search(q), search(q)
    assert len(a) == 1 and a[0].loop == b[0].loop
    L = a[0].loop
    assert validate(L.table) == L and not L.is_associative()
    assert np.array_equal(L.table[0], np.arange(9))

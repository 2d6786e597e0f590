import pytest

from loopkit.registry import by_tag, lookup, registry
from loopkit.terms import holds, parse, to_str


def test_names_unique_and_lookup():
    names = [i.name for i in registry()]
    assert len(names) == len(set(names))
    for i in registry():
        assert lookup(i.name) is i
    assert lookup("moufang") is lookup("MOUFANG")
    with pytest.raises(KeyError):
        lookup("no-such-identity")


def test_identities_print_and_reparse():
    for i in registry():
        assert parse(to_str(i.lhs)) == i.lhs
        assert parse(to_str(i.rhs)) == i.rhs


def test_group_tagged_identities_hold_in_every_group(all_groups):
    tagged = by_tag("group")
    assert len(tagged) >= 90
    failures = [(g, i.name) for g, G in all_groups.items() for i in tagged if not holds(G, i).holds]
    assert failures == []


def test_untagged_definitions_fail_somewhere(all_groups):
    assert not holds(all_groups["S3"], lookup("commutative")).holds
    assert not holds(all_groups["Z3"], lookup("exponent-2")).holds


def test_literal_forms_fail_in_groups_but_derived_forms_hold(all_groups):
    S3 = all_groups["S3"]
    for name in ("OSI_01.1^l", "OSI_01.1.2^l"):
        i = lookup(name)
        assert i.low_confidence and "group" not in i.tags
        assert not holds(S3, i).holds
        assert holds(S3, lookup(name + ":derived")).holds


def test_tags_cover_families():
    for tag in ("definition", "osborn", "osi", "osi-left", "osi-right", "four"):
        assert by_tag(tag), tag
    assert len(by_tag("four")) == 6
    assert all(i.low_confidence for i in by_tag("low-confidence"))


def test_osborn_identities_fail_on_l5(L5):
    assert not holds(L5, lookup("OS0")).holds
    assert not holds(L5, lookup("OS1")).holds

import pytest
from hypothesis import given
from hypothesis import strategies as st

from loopkit.cli import shipped_corpus
from loopkit.loopfile import (
    LoopFile, LoopFileError, format_loop, format_loop_file, parse_loop_file, read_corpus, read_loop_file,
)

from conftest import loops

Z4 = """# the cyclic group
loop Z4
order 4
0 1 2 3
1 2 3 0
2 3 0 1
3 0 1 2
end
"""


def test_parse_one_loop():
    lf = parse_loop_file(Z4)
    assert len(lf) == 1 and lf["Z4"].order == 4
    assert lf.notes["Z4"] == ["the cyclic group"]


def test_identity_normalized_on_parse():
    text = "loop S\norder 4\n" + "\n".join(" ".join(str((a + b - 3) % 4) for b in range(4)) for a in range(4)) + "\nend\n"
    L = parse_loop_file(text)["S"]
    assert L.identity == 0 and L.is_associative()


@pytest.mark.parametrize(
    "text, line",
    [
        (Z4 + Z4, 10),  # duplicate name
        ("loop A\norder 2\n0 1\n1 1\nend\n", 4),  # row not Latin
        ("loop A\norder 2\n0 1\n0 1\nend\n", 1),  # column not Latin: block start
        ("loop A\norder 3\n0 2 1\n2 1 0\n1 0 2\nend\n", 1),  # no identity: block start
        ("loop A\norder 2\n0 1\nend\n", 4),  # missing row
        ("loop A\norder 2\n0 1 0\n", 3),  # row too long
        ("loop A\norder x\n", 2),
        ("order 2\n", 1),
        ("loop A\norder 1\n0\n", None),  # missing end
        ("loop A\norder 2\n0 a\n", 3),
    ],
)
def test_errors_report_location(text, line):
    with pytest.raises(LoopFileError) as info:
        parse_loop_file(text)
    assert info.value.line == line


def test_error_names_loop():
    with pytest.raises(LoopFileError) as info:
        parse_loop_file("loop Bad\norder 2\n0 1\n1 1\nend\n")
    assert info.value.loop == "Bad" and "Bad" in str(info.value)


@given(st.lists(loops(relabel=False), min_size=1, max_size=4), st.data())
def test_round_trip(ls, data):
    lf = LoopFile()
    for i, L in enumerate(ls):
        notes = data.draw(st.lists(st.text("abc xyz.,:=", max_size=12).map(str.strip), max_size=2))
        lf.add(f"loop{i}", L, [n for n in notes if n])
    again = parse_loop_file(format_loop_file(lf))
    assert again == lf
    assert again.notes == lf.notes


def test_add_rejects_bad_names(z4):
    lf = LoopFile()
    with pytest.raises(LoopFileError):
        lf.add("two words", z4)
    lf.add("a", z4)
    with pytest.raises(LoopFileError):
        lf.add("a", z4)


def test_format_pads_columns(all_groups):
    text = format_loop("Z12", all_groups["Z12"])
    assert " 0  1  2" in text


def test_shipped_corpus():
    corpus = dict(read_corpus(shipped_corpus()))
    assert len(corpus) == 42 + 1 + 1 + 3
    assert {"Z1", "Z16", "Klein4", "S3", "D4", "Q8", "L5", "M12", "CC6-1", "CC8-1", "CC8-2"} <= set(corpus)
    cc = read_loop_file(shipped_corpus() / "cc.loop")
    assert any("search --order 8 --require cc" in n for n in cc.notes["CC8-1"])


def test_read_corpus_qualifies_duplicate_names(tmp_path):
    (tmp_path / "a.loop").write_text(Z4)
    (tmp_path / "b.loop").write_text(Z4)
    assert [n for n, _ in read_corpus(tmp_path)] == ["a/Z4", "b/Z4"]

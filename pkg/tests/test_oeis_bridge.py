from math import comb
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from errsums.oeis_bridge import (
    BINDINGS,
    AlignmentError,
    BFile,
    BFileError,
    SequenceBinding,
    binding,
    compare,
    parse_bfile,
    read_bfile,
    serialize_bfile,
)

DATA = Path(__file__).resolve().parents[1] / "data"


def test_parse_examples():
    assert parse_bfile("0 1\n1 2\n2 5").entries == ((0, 1), (1, 2), (2, 5))
    assert parse_bfile("# comment\n1 3").entries == ((1, 3),)
    assert parse_bfile("\n\n  4   12345678901234567890123  \n").entries == ((4, 12345678901234567890123),)
    with pytest.raises(BFileError, match="line 2"):
        parse_bfile("1 3\n1 4")
    with pytest.raises(BFileError, match="line 3"):
        parse_bfile("0 1\n1 2\n2 x")
    with pytest.raises(BFileError, match="line 1"):
        parse_bfile("0 1 2")


@given(
    st.lists(st.tuples(st.integers(0, 3), st.integers(-(10**40), 10**40)), max_size=30),
    st.integers(-5, 5),
)
def test_roundtrip(steps, start):
    entries, idx = [], start
    for gap, value in steps:
        idx += gap + 1
        entries.append((idx, value))
    b = BFile(tuple(entries))
    again = parse_bfile(serialize_bfile(b, header="fixture\nsecond line"))
    assert again.entries == b.entries


def test_fixture_files_parse_and_match():
    for oeis_id in ("A001850", "A003417", "A005258", "A005259", "A108626"):
        bf = read_bfile(DATA / f"{oeis_id}.fixture.txt")
        assert len(bf.entries) == 20
        rep = compare(binding(oeis_id), bf, 30)
        assert rep.ok and rep.matched == 20 and rep.offset_used == 0


def test_specific_values():
    assert [BINDINGS["A003417"].generator(n) for n in range(9)] == [2, 1, 2, 1, 1, 4, 1, 1, 6]
    assert [BINDINGS["A005258"].generator(n) for n in range(3)] == [1, 3, 19]
    assert [BINDINGS["A108626"].generator(n) for n in range(4)] == [1, 2, 5, 14]


def test_generators_emit_exact_integers():
    for b in BINDINGS.values():
        for n in (0, 1, 50, 100):
            assert isinstance(b.generator(n), int)
    assert BINDINGS["A005259"].generator(100) == sum(comb(100, k) ** 2 * comb(100 + k, k) ** 2 for k in range(101))


def test_offset_alignment():
    # a file starting at index 1 whose first value is a(0)
    shifted = BFile(tuple((n + 1, sum(comb(n, k) * comb(n + k, k) for k in range(n + 1))) for n in range(10)))
    rep = compare(binding("A001850"), shifted)
    assert rep.ok and rep.offset_used == -1
    with pytest.raises(AlignmentError):
        compare(binding("A001850"), BFile(((0, 7), (1, 8), (2, 9))))


def test_mismatch_is_reported():
    bad = parse_bfile("0 1\n1 3\n2 19\n3 147\n4 1250\n")
    rep = compare(SequenceBinding("A005258", "x", BINDINGS["A005258"].generator, offset_shift=0), bad)
    assert not rep.ok
    assert rep.first_mismatch == (4, 1250, 1251)
    assert rep.matched == 4


def test_unconfirmed_binding_disabled():
    b = binding("a051451")
    assert not b.enabled
    assert [b.generator(n) for n in range(6)] == [1, 2, 6, 12, 60, 420]
    with pytest.raises(KeyError):
        binding("A000045")

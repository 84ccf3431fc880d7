import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from easywg.oracles import bell_number, catalan_number, double_factorial_odd
from easywg.partitions import (
    CategoryId,
    Color,
    ColoredWord,
    SetPartition,
    as_category,
    as_word,
    enumerate_partitions,
    is_member,
    kernel_partition,
)

ALL_CATEGORIES = ["S", "O", "U", "S+", "O+", "U+"]


def brute_pairings(k):
    """Independent pairing enumerator: recursive first-point matching."""
    if k % 2:
        return []
    points = list(range(1, k + 1))

    def rec(rest):
        if not rest:
            yield []
            return
        a = rest[0]
        for i in range(1, len(rest)):
            b = rest[i]
            for tail in rec(rest[1:i] + rest[i + 1 :]):
                yield [(a, b)] + tail

    return [SetPartition.from_blocks(p, k) for p in rec(points)]


def brute_is_crossing(p):
    """Quadruple scan, independent of the stack algorithm."""
    blocks = p.blocks
    for x, y in itertools.combinations(range(len(blocks)), 2):
        for a, c in itertools.combinations(blocks[x], 2):
            for b, d in itertools.combinations(blocks[y], 2):
                if a < b < c < d or b < a < d < c:
                    return True
    return False


def partitions_strategy(max_k=6):
    def build(labels):
        rgs = []
        top = 0
        for x in labels:
            a = x % (top + 1)
            rgs.append(a)
            if a == top:
                top += 1
        return SetPartition(rgs)

    return st.lists(st.integers(0, 10), max_size=max_k).map(build)


class TestWordsAndColors:
    def test_parse_roundtrip(self):
        w = ColoredWord.parse("oobb")
        assert w.text == "oobb"
        assert len(w) == 4
        assert w[0] is Color.WHITE and w[3] is Color.BLACK

    def test_empty_word(self):
        assert len(as_word("")) == 0

    def test_bad_color(self):
        with pytest.raises(ValueError):
            ColoredWord.parse("ox")

    def test_concatenation(self):
        assert (as_word("ob") + "o").text == "obo"

    def test_exactly_two_colors(self):
        assert len(Color) == 2


class TestSetPartition:
    def test_from_blocks_and_text(self):
        p = SetPartition.from_blocks([[1, 2], [3, 4]])
        assert p.to_text() == "12|34"
        assert SetPartition.from_text("12|34") == p
        assert p.blocks == ((1, 2), (3, 4))

    def test_large_ground_comma_form(self):
        p = SetPartition.from_blocks([range(1, 11), [11, 12]])
        assert p.to_text() == "1,2,3,4,5,6,7,8,9,10|11,12"
        assert SetPartition.from_text(p.to_text()) == p

    def test_invalid_blocks(self):
        with pytest.raises(ValueError):
            SetPartition.from_blocks([[1, 2], [2, 3]])
        with pytest.raises(ValueError):
            SetPartition.from_blocks([[1], [3]])

    def test_delta_examples(self):
        p = SetPartition.from_blocks([[1, 2], [3, 4]])
        assert p.delta((7, 7, 2, 2)) == 1
        assert p.delta((7, 2, 2, 2)) == 0
        assert SetPartition.from_blocks([[1, 2, 3, 4]]).delta((5, 5, 5, 5)) == 1

    def test_delta_length_mismatch(self):
        with pytest.raises(ValueError):
            SetPartition.from_blocks([[1, 2]]).delta((1, 2, 3))

    def test_join_examples(self):
        a = SetPartition.from_blocks([[1, 2], [3, 4]])
        b = SetPartition.from_blocks([[1, 4], [2, 3]])
        assert a.join(b) == SetPartition.from_blocks([[1, 2, 3, 4]])
        assert a.join(a) == a
        discrete = SetPartition.from_blocks([[1], [2], [3]])
        for sigma in enumerate_partitions("S", "ooo"):
            assert discrete.join(sigma) == sigma

    def test_join_ground_mismatch(self):
        with pytest.raises(ValueError):
            SetPartition((0,)).join(SetPartition((0, 1)))

    def test_block_count(self):
        assert SetPartition.from_blocks([[1, 2], [3, 4]]).block_count == 2
        assert SetPartition.from_blocks([[1, 2, 3, 4]]).block_count == 1
        assert SetPartition(tuple(range(5))).block_count == 5

    def test_kernel_partition(self):
        assert kernel_partition((3, 7, 3)) == SetPartition((0, 1, 0))


class TestEnumeration:
    def test_bell_count(self):
        assert len(enumerate_partitions("S", "oooo")) == 15
        assert bell_number(4) == 15

    def test_noncrossing_pairings_of_four(self):
        got = enumerate_partitions("O+", "oooo")
        expected = sorted(
            (p for p in brute_pairings(4) if not brute_is_crossing(p)),
            key=lambda p: p.rgs,
        )
        assert got == expected
        assert [p.to_text() for p in got] == ["12|34", "14|23"]

    def test_matching_pairings(self):
        got = enumerate_partitions("U", "oobb")
        word = as_word("oobb")
        expected = sorted(
            (
                p
                for p in brute_pairings(4)
                if all(word[a - 1] != word[b - 1] for a, b in p.blocks)
            ),
            key=lambda p: p.rgs,
        )
        assert got == expected
        assert [p.to_text() for p in got] == ["13|24", "14|23"]
        assert [p.to_text() for p in enumerate_partitions("U+", "oobb")] == ["14|23"]

    def test_odd_pairings_empty(self):
        assert enumerate_partitions("O", "ooo") == []
        assert enumerate_partitions("U", "oo") == []

    def test_empty_word_single_partition(self):
        for cat in ALL_CATEGORIES:
            assert enumerate_partitions(cat, "") == [SetPartition(())]

    def test_deterministic_canonical_order(self):
        for cat in ALL_CATEGORIES:
            first = enumerate_partitions(cat, "obob")
            assert first == enumerate_partitions(cat, "obob")
            assert first == sorted(first, key=lambda p: p.rgs)

    def test_colors_ignored_for_orthogonal_types(self):
        for cat in ["S", "O", "S+", "O+"]:
            assert enumerate_partitions(cat, "oobb") == enumerate_partitions(cat, "oooo")


class TestMembership:
    def test_examples(self):
        crossing = SetPartition.from_blocks([[1, 3], [2, 4]])
        assert is_member("O", "oooo", crossing)
        assert not is_member("O+", "oooo", crossing)
        assert not is_member("U", "oooo", SetPartition.from_blocks([[1, 2], [3, 4]]))

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            is_member("S", "oo", SetPartition((0, 0, 0)))

    @pytest.mark.parametrize("cat", ALL_CATEGORIES)
    def test_consistent_with_enumeration(self, cat):
        # exhaustive cross-check up to k = 6, on a mixed-color word
        for k in range(7):
            word = as_word(("ob" * 3 + "o" * 3)[:k])
            listed = set(enumerate_partitions(cat, word))
            for p in enumerate_partitions("S", "o" * k):
                assert is_member(cat, word, p) == (p in listed)

    def test_crossing_scan_matches_brute_force(self):
        for k in range(7):
            for p in enumerate_partitions("S", "o" * k):
                assert p.is_noncrossing() == (not brute_is_crossing(p))


class TestCountingIdentities:
    def test_counts_against_recurrence_oracles(self):
        for k in range(9):
            assert len(enumerate_partitions("S", "o" * k)) == bell_number(k)
            assert len(enumerate_partitions("S+", "o" * k)) == catalan_number(k)
        for m in range(5):
            assert len(enumerate_partitions("O", "o" * (2 * m))) == double_factorial_odd(m)
            assert len(enumerate_partitions("O+", "o" * (2 * m))) == catalan_number(m)

    def test_delta_sum_is_power(self):
        # sum over tuples in {1..n}^k of delta equals n^{blocks}
        for k in range(6):
            for p in enumerate_partitions("S", "o" * k):
                for n in range(1, 5):
                    total = sum(
                        p.delta(t)
                        for t in itertools.product(range(1, n + 1), repeat=k)
                    )
                    assert total == n**p.block_count


class TestJoinProperties:
    @given(partitions_strategy(), partitions_strategy())
    @settings(max_examples=150)
    def test_commutative(self, a, b):
        if a.ground_size != b.ground_size:
            return
        assert a.join(b) == b.join(a)

    @given(partitions_strategy(), partitions_strategy(), partitions_strategy())
    @settings(max_examples=150)
    def test_associative(self, a, b, c):
        if not (a.ground_size == b.ground_size == c.ground_size):
            return
        assert a.join(b).join(c) == a.join(b.join(c))

    @given(partitions_strategy())
    def test_idempotent_and_one_block(self, a):
        assert a.join(a) == a
        if a.ground_size:
            one = SetPartition((0,) * a.ground_size)
            assert a.join(one) == one

    @given(partitions_strategy(), partitions_strategy())
    @settings(max_examples=150)
    def test_join_coarsens(self, a, b):
        if a.ground_size != b.ground_size:
            return
        j = a.join(b)
        assert j.block_count <= min(a.block_count, b.block_count)

    @given(
        partitions_strategy(5),
        partitions_strategy(5),
        st.lists(st.integers(1, 3), max_size=5),
    )
    @settings(max_examples=200)
    def test_delta_coarsening(self, a, b, idx):
        if not (a.ground_size == b.ground_size == len(idx)):
            return
        if a.delta(idx) == 1 and b.delta(idx) == 1:
            assert a.join(b).delta(idx) == 1


class TestCategoryId:
    def test_parse(self):
        assert as_category("O+") is CategoryId.O_PLUS
        with pytest.raises(ValueError):
            as_category("H")

    def test_partners(self):
        assert CategoryId.S.free_version is CategoryId.S_PLUS
        assert CategoryId.U_PLUS.classical_version is CategoryId.U
        assert CategoryId.O_PLUS.is_free and not CategoryId.O.is_free

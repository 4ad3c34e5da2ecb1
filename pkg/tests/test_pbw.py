"""
Unit tests for Kostant partitions, Lusztig data, transport and the general
crystal operators.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kpcrystal.bracketing import word_A, word_D
from kpcrystal.errors import InvalidInputError, InvariantViolation
from kpcrystal.pbw import (
    KostantPartition,
    LusztigDatum,
    datum_from_vector,
    e_general,
    epsilon,
    f_general,
    f_power,
    i_initial_word,
    phi,
    transport,
    transport_along,
    transport_move,
    weight,
)
from kpcrystal.root_system import build_root_system
from kpcrystal.weyl import BraidMove, longest_word, make_word


D4_WORD = (1, 2, 3, 4, 2, 1, 2, 3, 4, 2, 3, 4)


class TestKostantPartition:
    """Tests for Kostant partitions."""

    def test_from_mapping_drops_zeros_and_sorts(self):
        """Should keep positive multiplicities sorted by height."""
        rs = build_root_system("A", 2)
        c = KostantPartition.from_mapping(rs, {(1, 1): 2, (0, 1): 0, (1, 0): 1})

        assert c.parts == (((1, 0), 1), ((1, 1), 2))
        assert c.size == 3
        assert str(c) == "1 + 2*12"

    def test_zero(self):
        """Should print the empty partition as 0."""
        assert str(KostantPartition.zero(build_root_system("A", 2))) == "0"

    def test_non_root_rejected(self):
        """Should reject keys that are not positive roots."""
        with pytest.raises(InvalidInputError, match="not a positive root"):
            KostantPartition.from_mapping(build_root_system("A", 2), {(2, 0): 1})

    def test_negative_multiplicity_rejected(self):
        """Should reject negative multiplicities."""
        with pytest.raises(InvalidInputError, match="negative"):
            KostantPartition.from_mapping(build_root_system("A", 2), {(1, 0): -1})

    def test_bump_below_zero(self):
        """Should treat a negative multiplicity after an update as a bug."""
        c = KostantPartition.zero(build_root_system("A", 2))
        with pytest.raises(InvariantViolation):
            c.bump({(1, 0): -1})

    def test_json_round_trip(self):
        """Should survive to_json / from_json."""
        rs = build_root_system("D", 4)
        c = KostantPartition.from_mapping(rs, {(1, 2, 1, 1): 3, (0, 0, 0, 1): 2})

        assert KostantPartition.from_json(c.to_json()) == c


class TestLusztigDatum:
    """Tests for Lusztig data."""

    def test_wrong_length(self):
        """Should need one entry per positive root."""
        with pytest.raises(InvalidInputError, match="6 entries"):
            datum_from_vector(build_root_system("A", 3), [1, 2, 3, 1, 2, 1], [0, 0, 0])

    def test_negative_entry(self):
        """Should reject negative entries."""
        with pytest.raises(InvalidInputError, match="nonnegative"):
            datum_from_vector(build_root_system("A", 3), [1, 2, 3, 1, 2, 1], [0, 0, 0, 0, 0, -1])

    def test_word_must_be_longest(self):
        """Should refuse words that are not for w_0."""
        rs = build_root_system("A", 2)
        with pytest.raises(InvalidInputError):
            LusztigDatum(make_word(rs, [1, 2]), (0, 0))

    def test_partition_round_trip(self):
        """Should convert to a partition and back on the same word."""
        d = datum_from_vector(build_root_system("D", 4), D4_WORD, [2, 1, 4, 2, 1, 3, 3, 1, 2, 1, 2, 0])

        assert LusztigDatum.from_partition(d.word, d.to_partition()) == d

    def test_json_round_trip(self):
        """Should survive to_json / from_json."""
        d = datum_from_vector(build_root_system("A", 3), [1, 2, 3, 1, 2, 1], [2, 3, 1, 3, 3, 2])

        assert LusztigDatum.from_json(d.to_json()) == d


class TestTransport:
    """Tests for braid-move transport."""

    def test_three_term_move(self):
        """Should map (2, 1, 0) on (23, 234, 4) to (1, 0, 3) on (4, 234, 23)."""
        rs = build_root_system("D", 4)
        d = datum_from_vector(rs, D4_WORD, [0, 0, 0, 0, 0, 0, 0, 0, 2, 1, 5, 0])
        moved = transport_along(d, [BraidMove(11, 2), BraidMove(9, 3)])

        assert moved.word.letters == (1, 2, 3, 4, 2, 1, 2, 3, 2, 4, 2, 3)
        assert moved.order.labels()[8:] == ["4", "234", "23", "3"]
        assert moved.vector[8:] == (1, 0, 3, 5)
        assert weight(moved) == weight(d)

    def test_three_term_move_on_worked_datum(self):
        """Should turn (2, 1, 0) on (23, 234, 4) into (3, 0, 1)."""
        rs = build_root_system("D", 4)
        d = datum_from_vector(rs, D4_WORD, [2, 1, 4, 2, 1, 3, 3, 1, 2, 1, 2, 0])
        moved = transport_along(d, [BraidMove(11, 2), BraidMove(9, 3)])
        values = dict(zip(moved.order.labels(), moved.vector))

        assert (values["23"], values["234"], values["4"]) == (3, 0, 1)
        assert moved.vector[8:] == (1, 0, 3, 2)

    def test_two_term_move_swaps(self):
        """Should swap entries under a 2-term move."""
        rs = build_root_system("D", 4)
        d = datum_from_vector(rs, D4_WORD, [0] * 10 + [7, 4])

        assert transport_move(d, BraidMove(11, 2)).vector[10:] == (4, 7)

    def test_inadmissible_move(self):
        """Should refuse a move that does not apply."""
        rs = build_root_system("D", 4)
        d = datum_from_vector(rs, D4_WORD, [0] * 12)
        with pytest.raises(InvalidInputError, match="does not apply"):
            transport_move(d, BraidMove(1, 2))

    def test_round_trip(self):
        """Should return to the original datum after transporting there and back."""
        rs = build_root_system("D", 4)
        d = datum_from_vector(rs, D4_WORD, [2, 1, 4, 2, 1, 3, 3, 1, 2, 1, 2, 0])
        there = transport(d, longest_word(rs))

        assert transport(there, d.word) == d
        assert weight(there) == weight(d)

    def test_target_must_be_longest(self):
        """Should refuse a target that is not a word for w_0."""
        rs = build_root_system("A", 2)
        d = datum_from_vector(rs, [1, 2, 1], [1, 0, 0])
        with pytest.raises(InvalidInputError, match="w_0"):
            transport(d, make_word(rs, [1, 2]))

    @pytest.mark.parametrize("i", [1, 2, 3, 4])
    def test_i_initial_word(self, i):
        """Should start with i and be a word for w_0."""
        w = i_initial_word(build_root_system("D", 4), i)

        assert w.letters[0] == i
        assert w.is_longest


class TestGeneralOperators:
    """Tests for f_i, e_i by transport."""

    def test_f4_on_d4_example(self):
        """Should move one part from 123 to 1234."""
        d = datum_from_vector(build_root_system("D", 4), D4_WORD, [2, 1, 4, 2, 1, 3, 3, 1, 2, 1, 2, 0])

        assert f_general(d, 4).vector == (2, 1, 3, 2, 2, 3, 3, 1, 2, 1, 2, 0)

    def test_f2_on_a3_example(self):
        """Should add one part 2 on the word 123121."""
        d = datum_from_vector(build_root_system("A", 3), [1, 2, 3, 1, 2, 1], [2, 3, 1, 3, 3, 2])

        assert f_general(d, 2).vector == (2, 3, 1, 4, 3, 2)

    def test_e_on_highest_is_none(self):
        """Should stop at the highest element."""
        d = LusztigDatum.zero(word_D(4))

        for i in range(1, 5):
            assert e_general(d, i) is None
            assert epsilon(d, i) == 0
            assert phi(d, i) == 0

    def test_f_power(self):
        """Should give epsilon_i = k after k applications of f_i."""
        d = f_power(LusztigDatum.zero(word_A(3)), 2, 3)

        assert epsilon(d, 2) == 3
        assert weight(d) == (0, -3, 0)

    def test_bad_node(self):
        """Should reject node indices outside 1..rank."""
        with pytest.raises(InvalidInputError):
            f_general(LusztigDatum.zero(word_A(2)), 3)


@st.composite
def a3_data(draw):
    vector = draw(st.lists(st.integers(min_value=0, max_value=3), min_size=6, max_size=6))
    i = draw(st.integers(min_value=1, max_value=3))
    return LusztigDatum(word_A(3), tuple(vector)), i


class TestCrystalAxioms:
    """Property tests for the general operators."""

    @settings(max_examples=40, deadline=None)
    @given(a3_data())
    def test_e_inverts_f(self, case):
        """Should satisfy e_i f_i = id and drop the weight by alpha_i."""
        d, i = case
        fd = f_general(d, i)

        assert e_general(fd, i) == d
        assert tuple(a - b for a, b in zip(weight(d), weight(fd))) == d.rs.simple_root(i)
        assert epsilon(fd, i) == epsilon(d, i) + 1

    @settings(max_examples=40, deadline=None)
    @given(a3_data())
    def test_f_inverts_e(self, case):
        """Should satisfy f_i e_i = id wherever e_i is defined."""
        d, i = case
        ed = e_general(d, i)

        if ed is not None:
            assert f_general(ed, i) == d

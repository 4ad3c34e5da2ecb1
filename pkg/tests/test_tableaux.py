"""
Unit tests for marginally large tableaux, their crystal operators, and the
maps Theta (type A) and Psi (type D) to Kostant partitions.
"""

import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kpcrystal.bracketing import f_bracket, word_A, word_D
from kpcrystal.errors import InvalidInputError
from kpcrystal.pbw import KostantPartition, LusztigDatum, weight
from kpcrystal.tableaux import (
    FAR_EASTERN,
    MIDDLE_EASTERN,
    PsiLookup,
    Tableau,
    epsilon_tableau,
    fundamental_arrows,
    highest_tableau,
    letter_str,
    make_tableau,
    psi,
    reading,
    render_rows,
    render_tableau,
    tableau_e,
    tableau_f,
    tableau_weight,
    theta,
    theta_inv,
)
from kpcrystal.weyl import make_word


TEST_DIR = Path(__file__).parent
REPO_ROOT = TEST_DIR.parent
FIXTURE = REPO_ROOT / "fixtures" / "worked_examples.json"


def fixture_entry(section: str):
    with open(FIXTURE, "r", encoding="utf-8") as f:
        entry = json.load(f)[section][0]
    return Tableau.from_json(entry["tableau"]), KostantPartition.from_json(entry["partition"])


def apply_all(t: Tableau, ops, mode: str = MIDDLE_EASTERN) -> Tableau:
    for i in ops:
        t = tableau_f(t, i, mode)
    return t


class TestTableauBasics:
    """Tests for construction and validation."""

    def test_highest(self):
        """Should hold only the large blocks."""
        assert highest_tableau("A", 3).rows == ((1, 1, 1), (2, 2), (3,))
        assert highest_tableau("D", 4).rows == ((1, 1, 1), (2, 2), (3,))

    def test_make_tableau_sorts_rows(self):
        """Should sort rows in the alphabet order, barred letters last."""
        t = make_tableau("D", 4, [[-1, 1, 1, 1, 1], [2, 2, 2], [-4, 3]])

        assert t.rows == ((1, 1, 1, 1, -1), (2, 2, 2), (3, -4))

    def test_wrong_row_count(self):
        """Should reject the wrong number of rows."""
        with pytest.raises(InvalidInputError, match="2 rows"):
            make_tableau("A", 2, [[1, 1]])

    def test_not_marginally_large(self):
        """Should reject a row with the wrong number of large letters."""
        with pytest.raises(InvalidInputError, match="marginal largeness"):
            make_tableau("A", 2, [[1, 1], [2, 2]])

    def test_letter_too_small(self):
        """Should reject letters smaller than the row index."""
        with pytest.raises(InvalidInputError, match="smaller than 2"):
            make_tableau("A", 2, [[1, 1, 1], [1, 2]])

    def test_n_and_n_bar_in_one_row(self):
        """Should reject n and n-bar in the same row."""
        with pytest.raises(InvalidInputError, match="contains both"):
            make_tableau("D", 4, [[1, 1, 1, 1], [2, 2, 2], [3, 4, -4]])

    def test_type_e_unsupported(self):
        """Should only build tableaux of types A and D."""
        with pytest.raises(InvalidInputError):
            highest_tableau("E", 6)

    def test_json_round_trip(self):
        """Should survive to_json / from_json."""
        t, _ = fixture_entry("psi")

        assert Tableau.from_json(t.to_json()) == t

    def test_render(self):
        """Should draw boxes row by row with the large region bracketed."""
        assert render_tableau(highest_tableau("A", 2)) == "+---+---+\n|[1]|[1]|\n+---+---+\n|[2]|\n+---+"
        assert letter_str(-3) == "3̅"

    def test_render_barred_letters(self):
        """Should leave letters outside the large region unbracketed."""
        lines = render_tableau(tableau_f(highest_tableau("D", 4), 4)).split("\n")

        assert lines[1] == "|[1]|[1]|[1]|[1]|"
        assert lines[3] == "|[2]|[2]|[2]|"
        assert lines[5] == "|[3]| 4̅ |"
        assert len(lines) == 7

    def test_render_rows(self):
        """Should put all rows on one line for graph labels."""
        assert render_rows(tableau_f(highest_tableau("A", 2), 2)) == "1 1 1 / 2 3"


    def test_arrows_of_spin_node(self):
        """Should send n-1 to n-bar and n to (n-1)-bar."""
        assert fundamental_arrows("D", 4, 4) == ((3, -4), (4, -3))


class TestReadings:
    """Tests for the two readings."""

    def test_middle_and_far_eastern(self):
        """Should read rows right to left, or columns right to left."""
        t = tableau_f(highest_tableau("A", 2), 2)

        assert t.rows == ((1, 1, 1), (2, 3))
        assert [x for x, _ in reading(t, MIDDLE_EASTERN)] == [1, 1, 1, 3, 2]
        assert [x for x, _ in reading(t, FAR_EASTERN)] == [1, 1, 3, 1, 2]
        assert reading(t, FAR_EASTERN)[2] == (3, (2, 2))

    def test_unknown_reading(self):
        """Should reject unknown reading names."""
        with pytest.raises(InvalidInputError):
            reading(highest_tableau("A", 2), "diagonal")


class TestTableauOperators:
    """Tests for f_i and e_i on tableaux."""

    def test_f1_on_highest_a2(self):
        """Should change a large 1 and insert a column."""
        assert tableau_f(highest_tableau("A", 2), 1).rows == ((1, 1, 2), (2,))

    def test_f4_on_highest_d4(self):
        """Should turn the large 3 into 4-bar and insert a column 1, 2, 3."""
        assert tableau_f(highest_tableau("D", 4), 4).rows == ((1, 1, 1, 1), (2, 2, 2), (3, -4))

    def test_e_on_highest(self):
        """Should stop at the highest tableau."""
        t = highest_tableau("D", 4)
        for i in range(1, 5):
            assert tableau_e(t, i) is None
            assert epsilon_tableau(t, i) == 0

    @settings(max_examples=30, deadline=None)
    @given(ops=st.lists(st.integers(min_value=1, max_value=4), max_size=5),
           i=st.integers(min_value=1, max_value=4),
           mode=st.sampled_from([MIDDLE_EASTERN, FAR_EASTERN]))
    def test_e_inverts_f_d4(self, ops, i, mode):
        """Should satisfy e_i f_i = id and drop the weight by alpha_i."""
        t = apply_all(highest_tableau("D", 4), ops, mode)
        ft = tableau_f(t, i, mode)

        assert tableau_e(ft, i, mode) == t
        assert epsilon_tableau(ft, i, mode) == epsilon_tableau(t, i, mode) + 1
        drop = tuple(a - b for a, b in zip(tableau_weight(t), tableau_weight(ft)))
        assert drop == tuple(1 if k == i - 1 else 0 for k in range(4))

    @settings(max_examples=30, deadline=None)
    @given(ops=st.lists(st.integers(min_value=1, max_value=3), max_size=6),
           i=st.integers(min_value=1, max_value=3))
    def test_readings_agree_a3(self, ops, i):
        """Should give the same f_i under both readings."""
        t = apply_all(highest_tableau("A", 3), ops)

        assert tableau_f(t, i, MIDDLE_EASTERN) == tableau_f(t, i, FAR_EASTERN)


class TestTheta:
    """Tests for Theta in type A."""

    def test_fixture(self):
        """Should send the worked A3 tableau to its partition and back."""
        t, c = fixture_entry("theta")

        assert theta(t) == c
        assert theta_inv(c) == t

    def test_f2_on_fixture(self):
        """Should add alpha_2 to the worked A3 partition through a tableau f_2."""
        _, c = fixture_entry("theta")
        ft = tableau_f(theta_inv(c), 2)
        w = make_word(c.rs, [1, 2, 3, 1, 2, 1])

        assert [len(row) for row in ft.rows] == [18, 11, 3]
        assert ft.rows[1] == (2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4)
        assert LusztigDatum.from_partition(w, c).vector == (2, 3, 1, 3, 3, 2)
        assert LusztigDatum.from_partition(w, theta(ft)).vector == (2, 3, 1, 4, 3, 2)

    def test_highest_goes_to_zero(self):
        """Should send the highest tableau to the empty partition."""
        assert theta(highest_tableau("A", 3)).parts == ()


    def test_wrong_type(self):
        """Should refuse type D tableaux."""
        with pytest.raises(InvalidInputError):
            theta(highest_tableau("D", 4))

    @settings(max_examples=30, deadline=None)
    @given(ops=st.lists(st.integers(min_value=1, max_value=3), max_size=6),
           i=st.integers(min_value=1, max_value=3))
    def test_intertwines(self, ops, i):
        """Should carry tableau f_i to bracketing f_i on i^A and keep the weight."""
        w = word_A(3)
        t = apply_all(highest_tableau("A", 3), ops)

        assert theta(tableau_f(t, i)) == f_bracket(theta(t), w.rs, w, i)
        assert tableau_weight(t) == weight(theta(t))
        assert theta_inv(theta(t)) == t


class TestPsi:
    """Tests for Psi in type D."""

    def test_fixture(self):
        """Should send the worked D4 tableau to its 16-part partition."""
        t, c = fixture_entry("psi")

        assert psi(t) == c
        assert psi(t).size == 16

    def test_wrong_type(self):
        """Should refuse type A tableaux."""
        with pytest.raises(InvalidInputError):
            psi(highest_tableau("A", 3))

    @settings(max_examples=30, deadline=None)
    @given(ops=st.lists(st.integers(min_value=1, max_value=4), max_size=5),
           i=st.integers(min_value=1, max_value=4))
    def test_intertwines(self, ops, i):
        """Should carry tableau f_i to bracketing f_i on i^D and keep the weight."""
        w = word_D(4)
        t = apply_all(highest_tableau("D", 4), ops)

        assert psi(tableau_f(t, i)) == f_bracket(psi(t), w.rs, w, i)
        assert tableau_weight(t) == weight(psi(t))

    def test_lookup_inverts(self):
        """Should invert Psi over a set of tableaux."""
        start = highest_tableau("D", 4)
        tableaux = [apply_all(start, ops) for ops in ([], [4], [4, 2], [1, 2, 3, 4], [3, 4, 2, 2])]
        lookup = PsiLookup(tableaux)

        assert len(lookup) == len(set(tableaux))
        for t in tableaux:
            assert lookup.inverse(psi(t)) == t
        assert lookup.inverse(KostantPartition.zero(word_D(4).rs).bump({(1, 2, 1, 1): 9})) is None

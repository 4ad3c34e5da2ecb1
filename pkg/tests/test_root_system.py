"""
Unit tests for root systems and D-type root names.
"""

import pytest

from kpcrystal.errors import InvalidInputError
from kpcrystal.root_system import (
    DRootName,
    all_d_names,
    beta_root,
    build_root_system,
    gamma_root,
    height,
    name_root_D,
    pair_with_simple,
    pairing,
    reflect,
    root_label,
    root_system_from_json,
)


class TestBuildRootSystem:
    """Tests for root enumeration."""

    @pytest.mark.parametrize("kind,rank,count", [
        ("A", 1, 1), ("A", 3, 6), ("A", 5, 15),
        ("D", 3, 6), ("D", 4, 12), ("D", 5, 20),
        ("E", 6, 36), ("E", 7, 63), ("E", 8, 120),
    ])
    def test_positive_root_counts(self, kind, rank, count):
        """Should enumerate the right number of positive roots."""
        rs = build_root_system(kind, rank)

        assert rs.num_positive == count
        assert len(set(rs.positive_roots)) == count

    def test_highest_root_of_e8(self):
        """Should reach the E8 highest root (Bourbaki labels)."""
        rs = build_root_system("E", 8)

        assert (2, 3, 4, 6, 5, 4, 3, 2) in rs.positive_roots

    def test_roots_sorted_by_height(self):
        """Should list roots by height, simple roots first."""
        rs = build_root_system("D", 4)
        heights = [height(r) for r in rs.positive_roots]

        assert heights == sorted(heights)
        assert rs.positive_roots[:4] == ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))

    def test_lowercase_kind_accepted(self):
        """Should accept lowercase type letters."""
        assert build_root_system("d", 4) is build_root_system("D", 4)

    @pytest.mark.parametrize("kind,rank", [("B", 3), ("A", 0), ("D", 2), ("E", 5), ("E", 9)])
    def test_invalid_kind_or_rank(self, kind, rank):
        """Should reject unknown types and out-of-range ranks."""
        with pytest.raises(InvalidInputError):
            build_root_system(kind, rank)


class TestCustomCartan:
    """Tests for user-supplied Cartan matrices."""

    def test_relabelled_a3(self):
        """Should accept a relabelled A3 (2 - 1 - 3) and record it in JSON."""
        cartan = [[2, -1, -1], [-1, 2, 0], [-1, 0, 2]]
        rs = build_root_system("A", 3, cartan)

        assert rs.num_positive == 6
        assert (1, 1, 1) in rs.positive_roots
        assert rs.to_json()["cartan"] == cartan

    def test_round_trip_through_json(self):
        """Should rebuild the same root system from its JSON form."""
        rs = build_root_system("A", 3, [[2, -1, -1], [-1, 2, 0], [-1, 0, 2]])

        assert root_system_from_json(rs.to_json()) == rs

    def test_default_cartan_not_serialized(self):
        """Should omit the Cartan matrix when it is the default one."""
        assert build_root_system("D", 4).to_json() == {"type": "D", "rank": 4}

    def test_non_symmetric_rejected(self):
        """Should reject a non-symmetric matrix."""
        with pytest.raises(InvalidInputError, match="symmetric"):
            build_root_system("A", 2, [[2, -1], [0, 2]])

    def test_non_simply_laced_rejected(self):
        """Should reject off-diagonal entries other than 0 and -1."""
        with pytest.raises(InvalidInputError, match="simply-laced"):
            build_root_system("A", 2, [[2, -2], [-2, 2]])

    def test_wrong_type_rejected(self):
        """Should reject a D4 diagram declared as A4."""
        d4 = build_root_system("D", 4).cartan
        with pytest.raises(InvalidInputError):
            build_root_system("A", 4, d4)

    def test_missing_rank_in_json(self):
        """Should report a missing key."""
        with pytest.raises(InvalidInputError, match="missing"):
            root_system_from_json({"type": "A"})


class TestPairingAndReflection:
    """Tests for the bilinear form and simple reflections."""

    def test_pairing_values(self):
        """Should follow the Cartan matrix on simple roots."""
        rs = build_root_system("A", 3)

        assert pairing(rs, (1, 0, 0), (1, 0, 0)) == 2
        assert pairing(rs, (1, 0, 0), (0, 1, 0)) == -1
        assert pairing(rs, (1, 0, 0), (0, 0, 1)) == 0
        assert pairing(rs, (1, 1, 1), (1, 1, 1)) == 2

    def test_pairing_length_mismatch(self):
        """Should reject vectors of the wrong length."""
        rs = build_root_system("A", 3)
        with pytest.raises(InvalidInputError):
            pairing(rs, (1, 0), (1, 0, 0))

    def test_reflect(self):
        """Should compute s_i(beta) = beta - (beta|alpha_i) alpha_i."""
        rs = build_root_system("A", 3)

        assert reflect(rs, 1, (0, 1, 0)) == (1, 1, 0)
        assert reflect(rs, 1, (1, 0, 0)) == (-1, 0, 0)
        assert reflect(rs, 3, (1, 0, 0)) == (1, 0, 0)

    def test_pair_with_simple(self):
        """Should pair the D4 highest root negatively with nothing but alpha_2."""
        rs = build_root_system("D", 4)
        top = (1, 2, 1, 1)

        assert [pair_with_simple(rs, top, i) for i in rs.nodes] == [0, 1, 0, 0]

    def test_is_root(self):
        """Should recognise negative roots too."""
        rs = build_root_system("A", 2)

        assert rs.is_root((-1, -1))
        assert not rs.is_root((1, -1))
        assert not rs.is_positive_root((-1, 0))

    @pytest.mark.parametrize("kind,rank", [("A", 5), ("D", 5), ("E", 6), ("E", 7), ("E", 8)])
    def test_reflections_permute_roots(self, kind, rank):
        """Should send every positive root to a root and only alpha_i to a negative one."""
        rs = build_root_system(kind, rank)
        for i in rs.nodes:
            for beta in rs.positive_roots:
                image = reflect(rs, i, beta)
                if rs.is_positive_root(image):
                    assert beta != rs.simple_root(i)
                else:
                    assert tuple(-c for c in image) == beta == rs.simple_root(i)
                assert height(image) == height(beta) - pair_with_simple(rs, beta, i)

    @pytest.mark.parametrize("kind,rank", [("A", 5), ("D", 5), ("E", 6), ("E", 7), ("E", 8)])
    def test_pairing_symmetric(self, kind, rank):
        """Should give a symmetric form with (beta|beta) = 2 on every root."""
        rs = build_root_system(kind, rank)
        roots = rs.positive_roots
        for beta in roots:
            assert pairing(rs, beta, beta) == 2
            for other in roots:
                assert pairing(rs, beta, other) == pairing(rs, other, beta)



class TestRootNames:
    """Tests for labels and the beta / gamma names of type D."""

    def test_root_label(self):
        """Should repeat each node index by its coefficient."""
        assert root_label((1, 2, 1, 1)) == "12234"
        assert root_label((0, 1, 1, 0)) == "23"

    def test_root_label_negative(self):
        """Should fall back to a coefficient list for negative roots."""
        assert root_label((-1, 0)) == "[-1,0]"

    @pytest.mark.parametrize("root,name", [
        ((1, 0, 0, 0), "beta_{1,1}"),
        ((1, 1, 1, 0), "beta_{1,3}"),
        ((1, 2, 1, 1), "gamma_{1,2}"),
        ((1, 1, 1, 1), "gamma_{1,3}"),
        ((1, 1, 0, 1), "gamma_{1,4}"),
        ((0, 0, 0, 1), "gamma_{3,4}"),
    ])
    def test_d4_names(self, root, name):
        """Should name D4 roots as beta_{i,k} / gamma_{i,k}."""
        rs = build_root_system("D", 4)

        assert str(name_root_D(rs, root)) == name

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_names_biject_onto_roots(self, n):
        """Should give every positive root of D_n exactly one name."""
        rs = build_root_system("D", n)
        images = {name: (beta_root(n, name.i, name.k) if name.flavor == "beta" else gamma_root(n, name.i, name.k))
                  for name in all_d_names(n)}

        assert len(images) == rs.num_positive
        assert set(images.values()) == set(rs.positive_roots)
        for name, root in images.items():
            assert name_root_D(rs, root) == name

    def test_invalid_name(self):
        """Should reject names outside the index ranges."""
        assert not DRootName("gamma", 2, 2).is_valid(4)
        with pytest.raises(InvalidInputError):
            beta_root(4, 1, 4)

    def test_names_need_type_d(self):
        """Should refuse to name roots outside type D."""
        with pytest.raises(InvalidInputError):
            name_root_D(build_root_system("A", 3), (1, 0, 0))

    def test_non_root_rejected(self):
        """Should reject a vector that is not a positive root."""
        with pytest.raises(InvalidInputError, match="not a positive root"):
            name_root_D(build_root_system("D", 4), (1, 0, 1, 0))

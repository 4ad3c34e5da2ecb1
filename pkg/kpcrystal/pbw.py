"""
Kostant partitions, Lusztig data and the crystal operators on B(infinity).

A Lusztig datum is a Kostant partition read through the convex order of a
reduced word for w_0. Changing the word by a braid move changes the datum
by a piecewise-linear map; composing those maps along a braid path gives
the transport between any two words. The general operators transport to a
word starting with i, change the first coordinate, and transport back.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from kpcrystal.errors import InvalidInputError, InvariantViolation
from kpcrystal.root_system import (
    Root,
    RootSystem,
    pair_with_simple,
    root_label,
    root_sort_key,
    root_system_from_json,
)
from kpcrystal.weyl import (
    BraidMove,
    ConvexOrder,
    ReducedWord,
    apply_letters,
    braid_path,
    convex_order,
    is_admissible,
    longest_element,
    make_word,
    simple_reflection,
    word_of_element,
)


logger = logging.getLogger(__name__)

PARTITION_SCHEMA_VERSION = "kostant_partition_v0"
DATUM_SCHEMA_VERSION = "lusztig_datum_v0"


# ============= Kostant partitions =============

@dataclass(frozen=True)
class KostantPartition:
    """
    A finitely supported map from positive roots to positive multiplicities.

    `parts` is kept sorted by root (height, then coefficients) so equal
    partitions compare and hash equal.
    """
    rs: RootSystem
    parts: Tuple[Tuple[Root, int], ...]

    @classmethod
    def from_mapping(cls, rs: RootSystem, mult: Mapping[Sequence[int], int]) -> "KostantPartition":
        """
        Raises:
            InvalidInputError: a key is not a positive root, or a multiplicity is negative
        """
        clean: Dict[Root, int] = {}
        for root, m in mult.items():
            root = rs.check_root(root)
            m = int(m)
            if m < 0:
                raise InvalidInputError(f"Multiplicity of {root_label(root)} is negative ({m})")
            if m:
                clean[root] = clean.get(root, 0) + m
        return cls(rs, tuple(sorted(clean.items(), key=lambda kv: root_sort_key(kv[0]))))

    @classmethod
    def zero(cls, rs: RootSystem) -> "KostantPartition":
        return cls(rs, ())

    def as_dict(self) -> Dict[Root, int]:
        return dict(self.parts)

    def get(self, root: Sequence[int]) -> int:
        return self.as_dict().get(tuple(root), 0)

    def bump(self, changes: Mapping[Root, int]) -> "KostantPartition":
        """
        Add integer deltas to multiplicities.

        Raises:
            InvariantViolation: a multiplicity would drop below zero
        """
        mult = self.as_dict()
        for root, delta in changes.items():
            value = mult.get(root, 0) + delta
            if value < 0:
                raise InvariantViolation(f"Multiplicity of {root_label(root)} would become {value}")
            mult[root] = value
        return KostantPartition.from_mapping(self.rs, mult)

    @property
    def size(self) -> int:
        return sum(m for _, m in self.parts)

    def __str__(self) -> str:
        if not self.parts:
            return "0"
        return " + ".join(f"{m}*{root_label(r)}" if m > 1 else root_label(r) for r, m in self.parts)

    def to_json(self) -> Dict:
        return {
            "schema_version": PARTITION_SCHEMA_VERSION,
            **self.rs.to_json(),
            "parts": [{"root": list(r), "mult": m} for r, m in self.parts],
        }

    @classmethod
    def from_json(cls, data: Dict) -> "KostantPartition":
        rs = root_system_from_json(data)
        mult: Dict[Root, int] = {}
        for part in data.get("parts", []):
            root = tuple(part["root"])
            mult[root] = mult.get(root, 0) + int(part["mult"])
        return cls.from_mapping(rs, mult)


# ============= Lusztig data =============

@dataclass(frozen=True)
class LusztigDatum:
    """The exponents of a PBW monomial with respect to a reduced word for w_0."""
    word: ReducedWord
    vector: Tuple[int, ...]

    def __post_init__(self):
        n = self.word.rs.num_positive
        if len(self.word.letters) != n:
            raise InvalidInputError(f"Word {self.word} is not a word for w_0 (length {n} needed)")
        if len(self.vector) != n:
            raise InvalidInputError(f"Lusztig datum needs {n} entries, got {len(self.vector)}")
        if any(v < 0 for v in self.vector):
            raise InvalidInputError(f"Lusztig datum entries must be nonnegative: {list(self.vector)}")

    @property
    def rs(self) -> RootSystem:
        return self.word.rs

    @property
    def order(self) -> ConvexOrder:
        return convex_order(self.rs, self.word)

    def to_partition(self) -> KostantPartition:
        return KostantPartition.from_mapping(self.rs, dict(zip(self.order.roots, self.vector)))

    @classmethod
    def from_partition(cls, word: ReducedWord, c: KostantPartition) -> "LusztigDatum":
        order = convex_order(word.rs, word)
        mult = c.as_dict()
        return cls(word, tuple(mult.get(root, 0) for root in order.roots))

    @classmethod
    def zero(cls, word: ReducedWord) -> "LusztigDatum":
        return cls(word, (0,) * len(word.letters))

    def to_json(self) -> Dict:
        return {
            "schema_version": DATUM_SCHEMA_VERSION,
            **self.rs.to_json(),
            "word": list(self.word.letters),
            "vector": list(self.vector),
        }

    @classmethod
    def from_json(cls, data: Dict) -> "LusztigDatum":
        rs = root_system_from_json(data)
        return cls(make_word(rs, data["word"]), tuple(int(v) for v in data["vector"]))


# ============= Transport =============

def _move_vector(vector: Tuple[int, ...], move: BraidMove) -> Tuple[int, ...]:
    """Coordinates of a datum after one braid move of its word."""
    k = move.position - 1
    if move.kind == 2:
        return vector[:k] + (vector[k + 1], vector[k]) + vector[k + 2:]
    x, y, z = vector[k], vector[k + 1], vector[k + 2]
    # New word order is (beta'', beta + beta'', beta).
    new = (max(y, y + z - x), min(x, z), max(y, x + y - z))
    return vector[:k] + new + vector[k + 3:]


def transport_move(d: LusztigDatum, move: BraidMove) -> LusztigDatum:
    """
    The datum for the word obtained by one braid move.

    A 2-term move swaps the two entries. A 3-term move on roots
    (beta, beta + beta'', beta'') with values (x, y, z) gives beta the value
    max(y, x + y - z), beta + beta'' the value min(x, z), and beta'' the
    value max(y, y + z - x), written in the reversed order.

    Raises:
        InvalidInputError: the move does not apply to d.word
    """
    if not is_admissible(d.rs, d.word.letters, move):
        raise InvalidInputError(f"{move.kind}-term braid move at position {move.position} does not apply to {d.word}")
    return LusztigDatum(ReducedWord(d.rs, apply_letters(d.word.letters, move)), _move_vector(d.vector, move))


def transport_along(d: LusztigDatum, moves: Iterable[BraidMove]) -> LusztigDatum:
    """Compose `transport_move` along an explicit move list."""
    letters = d.word.letters
    vector = d.vector
    for move in moves:
        if not is_admissible(d.rs, letters, move):
            raise InvalidInputError(
                f"{move.kind}-term braid move at position {move.position} does not apply to "
                f"{ReducedWord(d.rs, letters)}"
            )
        letters = apply_letters(letters, move)
        vector = _move_vector(vector, move)
    if any(v < 0 for v in vector):
        raise InvariantViolation(f"Transport produced a negative entry: {list(vector)}")
    return LusztigDatum(ReducedWord(d.rs, letters), vector)


def transport(d: LusztigDatum, target: ReducedWord) -> LusztigDatum:
    """
    The datum of the same element with respect to `target`.

    Raises:
        InvalidInputError: target is not a reduced word for w_0
    """
    if not target.is_longest:
        raise InvalidInputError(f"Transport target {target} is not a word for w_0")
    return transport_along(d, braid_path(d.rs, d.word, target))


def i_initial_word(rs: RootSystem, i: int) -> ReducedWord:
    """i followed by the greedy word for s_i w_0."""
    return _i_initial_word(rs, rs.check_node(i))


@lru_cache(maxsize=None)
def _i_initial_word(rs: RootSystem, i: int) -> ReducedWord:
    rest = word_of_element(rs, simple_reflection(rs, i) * longest_element(rs))
    return ReducedWord(rs, (i,) + rest.letters)


def _to_i_initial(d: LusztigDatum, i: int) -> Tuple[LusztigDatum, List[BraidMove]]:
    """Transport to the i-initial word; also returns the moves taken."""
    if d.word.letters[0] == i:
        return d, []
    moves = braid_path(d.rs, d.word, i_initial_word(d.rs, i))
    return transport_along(d, moves), moves


def f_general(d: LusztigDatum, i: int) -> LusztigDatum:
    """
    f_i by transport: move to an i-initial word, add one to the first
    coordinate, move back.
    """
    i = d.rs.check_node(i)
    there, moves = _to_i_initial(d, i)
    bumped = LusztigDatum(there.word, (there.vector[0] + 1,) + there.vector[1:])
    return transport_along(bumped, reversed(moves))


def e_general(d: LusztigDatum, i: int) -> Optional[LusztigDatum]:
    """e_i by transport; None when the first coordinate of the i-initial datum is zero."""
    i = d.rs.check_node(i)
    there, moves = _to_i_initial(d, i)
    if there.vector[0] == 0:
        return None
    lowered = LusztigDatum(there.word, (there.vector[0] - 1,) + there.vector[1:])
    return transport_along(lowered, reversed(moves))


def epsilon(d: LusztigDatum, i: int) -> int:
    """Number of times e_i applies before returning None."""
    there, _ = _to_i_initial(d, d.rs.check_node(i))
    return there.vector[0]


def weight(d: Union[LusztigDatum, KostantPartition]) -> Root:
    """-sum of mult * beta, in simple-root coordinates."""
    c = d.to_partition() if isinstance(d, LusztigDatum) else d
    total = [0] * c.rs.rank
    for root, m in c.parts:
        for k, coeff in enumerate(root):
            total[k] -= m * coeff
    return tuple(total)


def phi(d: LusztigDatum, i: int) -> int:
    """epsilon_i + (wt | alpha_i)."""
    return epsilon(d, i) + pair_with_simple(d.rs, weight(d), i)


def f_power(d: LusztigDatum, i: int, k: int) -> LusztigDatum:
    """f_i applied k times."""
    for _ in range(k):
        d = f_general(d, i)
    return d


def datum_from_vector(rs: RootSystem, letters: Sequence[int], vector: Sequence[int]) -> LusztigDatum:
    """A datum on a checked word."""
    return LusztigDatum(make_word(rs, letters), tuple(int(v) for v in vector))

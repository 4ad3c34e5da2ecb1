"""
Weyl groups, reduced words, convex orders and braid moves.

Weyl elements are integer matrices acting on simple-root coordinates
(column i is the image of alpha_i). Words are tuples of 1-based node
indices; the convex order of a reduced word i_1 ... i_N for w_0 is

    beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k}).

Braid paths between two reduced words are built constructively by peeling
off the rank-two parabolic at the front (Matsumoto), never by searching the
reduced-word graph.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from kpcrystal.errors import InvalidInputError, InvariantViolation
from kpcrystal.root_system import Root, RootSystem, add_roots, pairing, root_label


logger = logging.getLogger(__name__)

Letters = Tuple[int, ...]


# ============= Weyl elements =============

@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element as its action matrix on simple-root coordinates."""
    matrix: Tuple[Tuple[int, ...], ...]

    @cached_property
    def array(self) -> np.ndarray:
        """The matrix as a numpy array."""
        return np.array(self.matrix, dtype=np.int64)

    @classmethod
    def from_array(cls, array: np.ndarray) -> "WeylElement":
        return cls(matrix=tuple(tuple(int(x) for x in row) for row in array.tolist()))

    def apply(self, root: Sequence[int]) -> Root:
        """g(root) in simple-root coordinates."""
        return tuple(int(x) for x in self.array @ np.asarray(root, dtype=np.int64))

    def image_of_simple(self, i: int) -> Root:
        """g(alpha_i), read off column i."""
        return tuple(row[i - 1] for row in self.matrix)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement.from_array(self.array @ other.array)

    @property
    def determinant(self) -> int:
        """+1 or -1; equals (-1)^len for every reduced word of the element."""
        return int(round(np.linalg.det(self.array)))


def _is_negative(root: Sequence[int]) -> bool:
    return min(root) < 0


@lru_cache(maxsize=None)
def _simple_matrices(rs: RootSystem) -> Tuple[np.ndarray, ...]:
    """Read-only matrices of s_1, ..., s_r."""
    mats = []
    for i in range(rs.rank):
        s = np.eye(rs.rank, dtype=np.int64)
        s[i, :] -= rs.cartan_array[i, :]
        s.setflags(write=False)
        mats.append(s)
    return tuple(mats)


def identity(rs: RootSystem) -> WeylElement:
    """The identity element."""
    return WeylElement.from_array(np.eye(rs.rank, dtype=np.int64))


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    """s_i as an element."""
    return WeylElement.from_array(_simple_matrices(rs)[rs.check_node(i) - 1])


def element_of_word(rs: RootSystem, letters: Sequence[int]) -> WeylElement:
    """The product s_{i_1} ... s_{i_t}."""
    mats = _simple_matrices(rs)
    m = np.eye(rs.rank, dtype=np.int64)
    for i in letters:
        m = m @ mats[rs.check_node(i) - 1]
    return WeylElement.from_array(m)


def inversion_roots(rs: RootSystem, g: WeylElement) -> List[Root]:
    """Positive roots sent to negative roots by g."""
    roots = np.array(rs.positive_roots, dtype=np.int64)
    images = roots @ g.array.T
    negative = (images < 0).any(axis=1)
    return [rs.positive_roots[k] for k in np.flatnonzero(negative)]


def length(rs: RootSystem, g: WeylElement) -> int:
    """Coxeter length: the number of positive roots g sends negative."""
    return len(inversion_roots(rs, g))


def descents(rs: RootSystem, g: WeylElement) -> List[int]:
    """Right descents: nodes i with g(alpha_i) < 0, ascending."""
    return [i for i in rs.nodes if _is_negative(g.image_of_simple(i))]


# ============= Reduced words =============

@dataclass(frozen=True)
class ReducedWord:
    """
    A reduced word in the Weyl group of `rs`.

    Build with `make_word` (which checks reducedness); the constructor
    itself only range-checks letters.
    """
    rs: RootSystem
    letters: Letters

    def __post_init__(self):
        for i in self.letters:
            self.rs.check_node(i)

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def is_longest(self) -> bool:
        return len(self.letters) == self.rs.num_positive

    @property
    def element(self) -> WeylElement:
        return element_of_word(self.rs, self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_letters(self.letters)

    def to_json(self) -> List[int]:
        return list(self.letters)


def format_letters(letters: Sequence[int]) -> str:
    """Digit string when every letter is a single digit, otherwise a comma list."""
    if all(1 <= i <= 9 for i in letters):
        return "".join(str(i) for i in letters)
    return ",".join(str(i) for i in letters)


def _walk(rs: RootSystem, letters: Sequence[int]) -> Iterator[Root]:
    """
    Yield s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}) for each k.

    Keeps the prefix element as a list of columns; right multiplication by
    s_i negates column i and adds it to the columns of neighbours of i.

    Raises:
        InvalidInputError: at the first position where the word stops being reduced
    """
    cols = [list(rs.simple_root(i)) for i in rs.nodes]
    neighbors = [[j - 1 for j in rs.neighbors(i)] for i in rs.nodes]
    for pos, i in enumerate(letters, start=1):
        i0 = rs.check_node(i) - 1
        col = cols[i0]
        if min(col) < 0:
            raise InvalidInputError(
                f"Word {format_letters(letters)} is not reduced: letter {i} at position {pos} shortens it"
            )
        yield tuple(col)
        for j in neighbors[i0]:
            cols[j] = [a + b for a, b in zip(cols[j], col)]
        cols[i0] = [-a for a in col]


def make_word(rs: RootSystem, letters: Sequence[int]) -> ReducedWord:
    """
    Validate `letters` as a reduced word.

    Args:
        rs: ambient root system
        letters: 1-based node indices

    Returns:
        ReducedWord

    Raises:
        InvalidInputError: a letter is out of range, or the word is not reduced
            (the message names the first violating position, 1-based)
    """
    letters = tuple(int(i) for i in letters)
    for _ in _walk(rs, letters):
        pass
    return ReducedWord(rs, letters)


def longest_word(rs: RootSystem) -> ReducedWord:
    """A reduced word for w_0 by greedy ascent (smallest admissible letter first)."""
    return _longest_word(rs)


@lru_cache(maxsize=None)
def _longest_word(rs: RootSystem) -> ReducedWord:
    mats = _simple_matrices(rs)
    m = np.eye(rs.rank, dtype=np.int64)
    letters = []
    while True:
        for i in range(rs.rank):
            if (m[:, i] >= 0).all():
                letters.append(i + 1)
                m = m @ mats[i]
                break
        else:
            break
    return ReducedWord(rs, tuple(letters))


def longest_element(rs: RootSystem) -> WeylElement:
    """w_0."""
    return longest_word(rs).element


def word_of_element(rs: RootSystem, g: WeylElement) -> ReducedWord:
    """
    A reduced word for g by greedy descent.

    Repeatedly strips the smallest right descent i (g <- g s_i) and reads
    the stripped letters backwards.
    """
    return ReducedWord(rs, _descent_letters(rs, g.matrix))


@lru_cache(maxsize=4096)
def _descent_letters(rs: RootSystem, matrix: Tuple[Tuple[int, ...], ...]) -> Letters:
    """Letters of word_of_element, cached on the matrix."""
    mats = _simple_matrices(rs)
    m = np.array(matrix, dtype=np.int64)
    stripped = []
    while True:
        for i in range(rs.rank):
            if (m[:, i] <= 0).all():
                stripped.append(i + 1)
                m = m @ mats[i]
                break
        else:
            break
    return tuple(reversed(stripped))


# ============= Convex orders =============

@dataclass(frozen=True)
class ConvexOrder:
    """Positive roots listed in the order a reduced word for w_0 induces."""
    roots: Tuple[Root, ...]

    @cached_property
    def _positions(self) -> Dict[Root, int]:
        return {root: k for k, root in enumerate(self.roots)}

    def position(self, root: Root) -> int:
        """0-based position of `root`."""
        try:
            return self._positions[tuple(root)]
        except KeyError:
            raise InvalidInputError(f"Root {root_label(root)} is not in this order")

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def labels(self) -> List[str]:
        """Digit labels in convex order."""
        return [root_label(r) for r in self.roots]


def convex_order(rs: RootSystem, w: ReducedWord) -> ConvexOrder:
    """
    The convex order beta_1 < ... < beta_N of a reduced word for w_0.

    Raises:
        InvalidInputError: w is not of full length N
    """
    if len(w.letters) != rs.num_positive:
        raise InvalidInputError(
            f"Word {w} has length {len(w.letters)}; a word for w_0 in {rs.label} has length {rs.num_positive}"
        )
    return ConvexOrder(convex_roots(rs, w.letters))


@lru_cache(maxsize=8192)
def convex_roots(rs: RootSystem, letters: Letters) -> Tuple[Root, ...]:
    """beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}) for every k, cached on the letters."""
    return tuple(_walk(rs, letters))


def convexity_violations(rs: RootSystem, order: ConvexOrder) -> List[Tuple[Root, Root, Root]]:
    """
    Every triple (beta, beta + beta'', beta'') whose sum does not sit strictly
    between its summands.
    """
    bad = []
    roots = order.roots
    for a in range(len(roots)):
        for b in range(a + 1, len(roots)):
            total = add_roots(roots[a], roots[b])
            if not rs.is_positive_root(total):
                continue
            pos = order.position(total)
            if not a < pos < b:
                bad.append((roots[a], total, roots[b]))
    return bad


# ============= Braid moves =============

@dataclass(frozen=True)
class BraidMove:
    """
    A braid move at a 1-based `position`.

    kind 2 swaps two commuting letters; kind 3 rewrites (i, j, i) as (j, i, j).
    """
    position: int
    kind: int

    def __post_init__(self):
        if self.kind not in (2, 3):
            raise InvalidInputError(f"Braid move kind must be 2 or 3, got {self.kind}")
        if self.position < 1:
            raise InvalidInputError(f"Braid move position must be >= 1, got {self.position}")

    def shifted(self, offset: int) -> "BraidMove":
        """The same move `offset` positions further right."""
        return BraidMove(self.position + offset, self.kind)

    def to_json(self) -> Dict[str, int]:
        return {"position": self.position, "kind": self.kind}


def letter_moves(rs: RootSystem, letters: Letters) -> List[BraidMove]:
    """
    Moves read off the letters: adjacent commuting letters, or (a, b, a)
    with a and b joined in the Dynkin diagram.
    """
    moves = []
    for k in range(len(letters) - 1):
        a, b = letters[k], letters[k + 1]
        entry = rs.cartan[a - 1][b - 1]
        if entry == 0 and a != b:
            moves.append(BraidMove(k + 1, 2))
        if entry == -1 and k + 2 < len(letters) and letters[k + 2] == a:
            moves.append(BraidMove(k + 1, 3))
    return moves


def moves_by_roots(rs: RootSystem, order: ConvexOrder) -> List[BraidMove]:
    """Moves read off a convex order: orthogonal neighbours, or beta_{k+1} = beta_k + beta_{k+2}."""
    moves = []
    roots = order.roots
    for k in range(len(roots) - 1):
        if pairing(rs, roots[k], roots[k + 1]) == 0:
            moves.append(BraidMove(k + 1, 2))
        if k + 2 < len(roots) and roots[k + 1] == add_roots(roots[k], roots[k + 2]):
            moves.append(BraidMove(k + 1, 3))
    return moves


def available_moves(rs: RootSystem, w: ReducedWord, verify: bool = True) -> List[BraidMove]:
    """
    All braid moves applicable to a reduced word, ordered by position.

    With `verify`, and when w is a word for w_0, the letter criterion is
    checked against the root criterion.

    Raises:
        InvariantViolation: the two criteria disagree
    """
    moves = letter_moves(rs, w.letters)
    if verify and w.is_longest:
        by_roots = moves_by_roots(rs, convex_order(rs, w))
        if by_roots != moves:
            raise InvariantViolation(
                f"Braid moves of {w} disagree: letters give {moves}, roots give {by_roots}"
            )
    return moves


def apply_letters(letters: Letters, move: BraidMove) -> Letters:
    """Rewrite letters by one move. Admissibility is not checked."""
    k = move.position - 1
    if move.kind == 2:
        return letters[:k] + (letters[k + 1], letters[k]) + letters[k + 2:]
    i, j = letters[k], letters[k + 1]
    return letters[:k] + (j, i, j) + letters[k + 3:]


def is_admissible(rs: RootSystem, letters: Letters, move: BraidMove) -> bool:
    """Whether `move` fits inside `letters` and applies there."""
    k = move.position - 1
    if k + move.kind > len(letters):
        return False
    a, b = letters[k], letters[k + 1]
    entry = rs.cartan[a - 1][b - 1]
    if move.kind == 2:
        return entry == 0 and a != b
    return entry == -1 and letters[k + 2] == a


def apply_move(w: ReducedWord, move: BraidMove) -> ReducedWord:
    """
    Apply a braid move.

    Raises:
        InvalidInputError: the move does not apply at that position
    """
    if not is_admissible(w.rs, w.letters, move):
        raise InvalidInputError(f"{move.kind}-term braid move at position {move.position} does not apply to {w}")
    return ReducedWord(w.rs, apply_letters(w.letters, move))


def replay(w: ReducedWord, moves: Sequence[BraidMove]) -> ReducedWord:
    """Apply `moves` left to right."""
    for move in moves:
        w = apply_move(w, move)
    return w


# ============= Braid paths =============

def _alternating(s: int, t: int, m: int) -> Letters:
    """(s, t, s, ...) of length m."""
    return tuple(s if k % 2 == 0 else t for k in range(m))


@lru_cache(maxsize=1 << 16)
def _path(rs: RootSystem, a: Letters, b: Letters) -> Tuple[Tuple[int, int], ...]:
    """braid_path on letter tuples, with moves as (position, kind) pairs."""
    if a == b:
        return ()
    if a[0] == b[0]:
        return tuple((p + 1, kind) for p, kind in _path(rs, a[1:], b[1:]))
    s, t = a[0], b[0]
    m = 3 if rs.cartan[s - 1][t - 1] == -1 else 2
    parabolic = element_of_word(rs, _alternating(s, t, m))
    u = _descent_letters(rs, (parabolic * element_of_word(rs, a)).matrix)
    c = _alternating(s, t, m) + u
    d = _alternating(t, s, m) + u
    return _path(rs, a, c) + ((1, m),) + _path(rs, d, b)


def braid_path(rs: RootSystem, a: ReducedWord, b: ReducedWord) -> List[BraidMove]:
    """
    A sequence of braid moves turning `a` into `b`.

    If the first letters agree, recurse on the tails. Otherwise, with s and t
    the two first letters, write the element as w_{s,t} u with u reduced by
    greedy descent, go from `a` to (s t ...) u, flip the rank-two front, and
    continue from (t s ...) u to `b`.

    Raises:
        InvalidInputError: the words represent different elements
    """
    if len(a.letters) != len(b.letters) or a.element != b.element:
        raise InvalidInputError(f"Words {a} and {b} represent different Weyl group elements")
    info = _path.cache_info()
    moves = [BraidMove(p, kind) for p, kind in _path(rs, a.letters, b.letters)]
    logger.debug(
        "braid path %s -> %s: %d moves (cache hits %d, misses %d)",
        a, b, len(moves), info.hits, info.misses,
    )
    return moves


# ============= Word parsing and random words =============

def parse_letters(text: str) -> Letters:
    """
    Parse "123421" (digits) or "1,2,3,10" (comma list) into letters.

    Raises:
        InvalidInputError: empty or malformed text
    """
    text = text.strip()
    if not text:
        raise InvalidInputError("Empty word")
    try:
        if "," in text:
            return tuple(int(part) for part in text.split(","))
        return tuple(int(ch) for ch in text)
    except ValueError:
        raise InvalidInputError(f"Cannot parse word {text!r}; use digits like 123121 or a comma list")


def random_reduced_word(rs: RootSystem, rng: np.random.Generator, steps: Optional[int] = None) -> ReducedWord:
    """
    A reduced word for w_0 reached by a random walk of braid moves from
    `longest_word`.
    """
    w = longest_word(rs)
    letters = w.letters
    steps = 4 * rs.num_positive if steps is None else steps
    for _ in range(steps):
        moves = letter_moves(rs, letters)
        if not moves:
            break
        letters = apply_letters(letters, moves[int(rng.integers(len(moves)))])
    return ReducedWord(rs, letters)

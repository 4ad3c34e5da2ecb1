"""
Simply-laced root systems of types A, D and E.

Roots are plain integer tuples of simple-root coefficients, indexed from 0
internally; node indices in the public API are 1-based, matching the usual
Dynkin labels:

- A_n: the path 1 - 2 - ... - n
- D_n: the path 1 - ... - (n-2), with both n-1 and n attached to n-2
- E_n: Bourbaki numbering, 1 - 3 - 4 - 5 - 6 (- 7 - 8) with 2 attached to 4

A user-supplied Cartan matrix may replace the default E labels; it is
checked for the simply-laced shape and for the right number of roots.
"""

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from kpcrystal.errors import InvalidInputError


Root = Tuple[int, ...]

KINDS = ("A", "D", "E")

E_RANKS = (6, 7, 8)


def expected_root_count(kind: str, rank: int) -> int:
    """Number of positive roots for the given type and rank."""
    if kind == "A":
        return rank * (rank + 1) // 2
    if kind == "D":
        return rank * (rank - 1)
    return {6: 36, 7: 63, 8: 120}[rank]


def root_sort_key(root: Root) -> Tuple[int, Tuple[int, ...]]:
    """Height first, then coefficients with alpha_1 heaviest first."""
    return (height(root), tuple(-c for c in root))


def height(root: Root) -> int:
    """Sum of the simple-root coefficients."""
    return sum(root)


def unit_root(rank: int, i: int) -> Root:
    """The simple root alpha_i (1-based) as a coefficient tuple."""
    return tuple(1 if m == i - 1 else 0 for m in range(rank))


def dynkin_edges(kind: str, rank: int) -> List[Tuple[int, int]]:
    """Edges of the Dynkin diagram, as 1-based node pairs."""
    if kind == "A":
        return [(i, i + 1) for i in range(1, rank)]
    if kind == "D":
        edges = [(i, i + 1) for i in range(1, rank - 1)]
        edges.append((rank - 2, rank))
        return edges
    bourbaki = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
    return [(a, b) for a, b in bourbaki if a <= rank and b <= rank]


def cartan_matrix(kind: str, rank: int) -> Tuple[Tuple[int, ...], ...]:
    """Symmetric Cartan matrix built from `dynkin_edges`."""
    rows = [[2 if r == c else 0 for c in range(rank)] for r in range(rank)]
    for a, b in dynkin_edges(kind, rank):
        rows[a - 1][b - 1] = -1
        rows[b - 1][a - 1] = -1
    return tuple(tuple(row) for row in rows)


def _check_kind_rank(kind: str, rank: int) -> str:
    """Normalized type letter, after checking the rank fits it."""
    kind = str(kind).upper()
    if kind not in KINDS:
        raise InvalidInputError(f"Unknown type {kind!r}; expected one of {', '.join(KINDS)}")
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise InvalidInputError(f"Rank must be an integer, got {rank!r}")
    if kind == "A" and rank < 1:
        raise InvalidInputError(f"Type A needs rank >= 1, got {rank}")
    if kind == "D" and rank < 3:
        raise InvalidInputError(f"Type D needs rank >= 3, got {rank}")
    if kind == "E" and rank not in E_RANKS:
        raise InvalidInputError(f"Type E needs rank 6, 7 or 8, got {rank}")
    return kind


def _check_cartan(cartan: Sequence[Sequence[int]], rank: int) -> Tuple[Tuple[int, ...], ...]:
    """The Cartan matrix as tuples; symmetric, 2 on the diagonal, 0 or -1 elsewhere."""
    rows = tuple(tuple(int(x) for x in row) for row in cartan)
    if len(rows) != rank or any(len(row) != rank for row in rows):
        raise InvalidInputError(f"Cartan matrix must be {rank}x{rank}")
    for r in range(rank):
        if rows[r][r] != 2:
            raise InvalidInputError(f"Cartan diagonal entry ({r + 1},{r + 1}) must be 2")
        for c in range(rank):
            if r != c and rows[r][c] not in (0, -1):
                raise InvalidInputError(
                    f"Cartan entry ({r + 1},{c + 1}) = {rows[r][c]}; simply-laced types need 0 or -1"
                )
            if rows[r][c] != rows[c][r]:
                raise InvalidInputError(f"Cartan matrix is not symmetric at ({r + 1},{c + 1})")
    return rows


@dataclass(frozen=True)
class DRootName:
    """
    A positive root of D_n by name.

    beta_{i,k} = alpha_i + ... + alpha_k                              (1 <= i <= k <= n-1)
    gamma_{i,k} = alpha_i + ... + alpha_{n-2} + alpha_n + alpha_{n-1} + ... + alpha_k   (1 <= i < k <= n)
    """
    flavor: str
    i: int
    k: int

    def is_valid(self, n: int) -> bool:
        if self.flavor == "beta":
            return 1 <= self.i <= self.k <= n - 1
        if self.flavor == "gamma":
            return 1 <= self.i < self.k <= n
        return False

    def __str__(self) -> str:
        return f"{self.flavor}_{{{self.i},{self.k}}}"


@dataclass(frozen=True)
class RootSystem:
    """
    An ADE root system.

    Attributes:
        kind: "A", "D" or "E"
        rank: number of simple roots
        cartan: symmetric Cartan matrix (tuple of rows)
        positive_roots: every positive root, ordered by height then coefficients
    """
    kind: str
    rank: int
    cartan: Tuple[Tuple[int, ...], ...]
    positive_roots: Tuple[Root, ...] = field(compare=False, repr=False)

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    @cached_property
    def cartan_array(self) -> np.ndarray:
        return np.array(self.cartan, dtype=np.int64)

    @cached_property
    def _positive_set(self) -> frozenset:
        return frozenset(self.positive_roots)

    @cached_property
    def _index(self) -> Dict[Root, int]:
        return {root: idx for idx, root in enumerate(self.positive_roots)}

    def check_node(self, i: int) -> int:
        if not isinstance(i, (int, np.integer)) or not 1 <= i <= self.rank:
            raise InvalidInputError(f"Node index {i!r} out of range 1..{self.rank}")
        return int(i)

    def simple_root(self, i: int) -> Root:
        """alpha_i."""
        return unit_root(self.rank, self.check_node(i))

    def is_positive_root(self, root: Sequence[int]) -> bool:
        return tuple(root) in self._positive_set

    def is_root(self, root: Sequence[int]) -> bool:
        """Positive roots and their negatives."""
        root = tuple(root)
        return root in self._positive_set or tuple(-c for c in root) in self._positive_set

    def index_of(self, root: Root) -> int:
        try:
            return self._index[tuple(root)]
        except KeyError:
            raise InvalidInputError(f"{list(root)} is not a positive root of {self.label}")

    def check_root(self, root: Sequence[int]) -> Root:
        root = tuple(int(c) for c in root)
        if len(root) != self.rank:
            raise InvalidInputError(
                f"Root {list(root)} has {len(root)} coefficients; {self.label} needs {self.rank}"
            )
        if root not in self._positive_set:
            raise InvalidInputError(f"{list(root)} is not a positive root of {self.label}")
        return root

    def neighbors(self, i: int) -> List[int]:
        row = self.cartan[self.check_node(i) - 1]
        return [j + 1 for j, a in enumerate(row) if a == -1]

    @property
    def label(self) -> str:
        return f"{self.kind}_{self.rank}"

    def to_json(self) -> Dict:
        data = {"type": self.kind, "rank": self.rank}
        if self.cartan != cartan_matrix(self.kind, self.rank):
            data["cartan"] = [list(row) for row in self.cartan]
        return data


def _enumerate_positive_roots(cartan: Tuple[Tuple[int, ...], ...], limit: int) -> Tuple[Root, ...]:
    # Simply-laced: for positive beta != alpha_i, beta + alpha_i is a root iff (beta|alpha_i) = -1.
    rank = len(cartan)
    simple = [unit_root(rank, i) for i in range(1, rank + 1)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        fresh = []
        for beta in frontier:
            for i in range(rank):
                if _pair_simple(cartan, beta, i) == -1:
                    gamma = beta[:i] + (beta[i] + 1,) + beta[i + 1:]
                    if gamma not in found:
                        found.add(gamma)
                        fresh.append(gamma)
        if len(found) > limit:
            raise InvalidInputError(
                f"Cartan matrix generates more than {limit} positive roots; not of the declared type"
            )
        frontier = fresh
    return tuple(sorted(found, key=root_sort_key))


@lru_cache(maxsize=None)
def _build(kind: str, rank: int, cartan: Tuple[Tuple[int, ...], ...]) -> RootSystem:
    expected = expected_root_count(kind, rank)
    roots = _enumerate_positive_roots(cartan, expected)
    if len(roots) != expected:
        raise InvalidInputError(
            f"Cartan matrix yields {len(roots)} positive roots; {kind}_{rank} has {expected}"
        )
    return RootSystem(kind=kind, rank=rank, cartan=cartan, positive_roots=roots)


def build_root_system(
    kind: str,
    rank: int,
    cartan: Optional[Sequence[Sequence[int]]] = None,
) -> RootSystem:
    """
    Construct the root system of type `kind` and rank `rank`.

    Positive roots are found by closure from the simple roots.

    Args:
        kind: "A", "D" or "E" (case-insensitive)
        rank: >= 1 for A, >= 3 for D, 6/7/8 for E
        cartan: optional Cartan matrix overriding the default node labels

    Returns:
        RootSystem (cached; equal arguments give the same object)

    Raises:
        InvalidInputError: bad kind, rank or Cartan matrix
    """
    kind = _check_kind_rank(kind, rank)
    matrix = _check_cartan(cartan, rank) if cartan is not None else cartan_matrix(kind, rank)
    return _build(kind, rank, matrix)


def root_system_from_json(data: Dict) -> RootSystem:
    try:
        return build_root_system(data["type"], int(data["rank"]), data.get("cartan"))
    except KeyError as e:
        raise InvalidInputError(f"Root system description is missing {e}")


def _pair_simple(cartan: Tuple[Tuple[int, ...], ...], beta: Root, i: int) -> int:
    """(beta | alpha_{i+1}) with a 0-based node index."""
    row = cartan[i]
    return sum(b * a for b, a in zip(beta, row) if b)


def pairing(rs: RootSystem, beta: Sequence[int], beta2: Sequence[int]) -> int:
    """
    The symmetric bilinear form: sum over i, j of b_i * b'_j * a_ij.

    Raises:
        InvalidInputError: if either vector has the wrong length
    """
    if len(beta) != rs.rank or len(beta2) != rs.rank:
        raise InvalidInputError(
            f"Pairing needs vectors of length {rs.rank}, got {len(beta)} and {len(beta2)}"
        )
    total = 0
    for i, b in enumerate(beta):
        if b:
            total += b * _pair_simple(rs.cartan, tuple(beta2), i)
    return total


def pair_with_simple(rs: RootSystem, beta: Sequence[int], i: int) -> int:
    """(beta | alpha_i), 1-based i."""
    return _pair_simple(rs.cartan, tuple(beta), rs.check_node(i) - 1)


def reflect(rs: RootSystem, i: int, beta: Sequence[int]) -> Root:
    """s_i(beta) = beta - (beta|alpha_i) alpha_i."""
    i = rs.check_node(i) - 1
    beta = tuple(beta)
    if len(beta) != rs.rank:
        raise InvalidInputError(f"Vector {list(beta)} has length {len(beta)}; expected {rs.rank}")
    p = _pair_simple(rs.cartan, beta, i)
    if p == 0:
        return beta
    return beta[:i] + (beta[i] - p,) + beta[i + 1:]


def add_roots(*roots: Root) -> Root:
    """Coefficient-wise sum."""
    return tuple(sum(cs) for cs in zip(*roots))


def root_label(root: Sequence[int]) -> str:
    """
    Digit label of a root, each node index repeated by its coefficient.

    >>> root_label((1, 2, 1, 1))
    '12234'

    Ranks above 9 (never in ADE) or negative coefficients fall back to a
    bracketed coefficient list.
    """
    if len(root) > 9 or any(c < 0 for c in root):
        return "[" + ",".join(str(c) for c in root) + "]"
    return "".join(str(m + 1) * c for m, c in enumerate(root))


# ============= Named roots in types A and D =============

def a_root(n: int, i: int, j: int) -> Root:
    """alpha_{i,j} = alpha_i + ... + alpha_j in A_n."""
    if not 1 <= i <= j <= n:
        raise InvalidInputError(f"alpha_{{{i},{j}}} is not a root of A_{n}")
    return tuple(1 if i <= m + 1 <= j else 0 for m in range(n))


def d_root(n: int, name: DRootName) -> Root:
    """Coefficient tuple of a named D_n root."""
    if not name.is_valid(n):
        raise InvalidInputError(f"{name} is not a valid root name in D_{n}")
    coeffs = [0] * n
    if name.flavor == "beta":
        for m in range(name.i, name.k + 1):
            coeffs[m - 1] += 1
    else:
        for m in range(name.i, n - 1):
            coeffs[m - 1] += 1
        coeffs[n - 1] += 1
        for m in range(name.k, n):
            coeffs[m - 1] += 1
    return tuple(coeffs)


def beta_root(n: int, i: int, k: int) -> Root:
    """The root named beta_{i,k} in D_n."""
    return d_root(n, DRootName("beta", i, k))


def gamma_root(n: int, i: int, k: int) -> Root:
    """The root named gamma_{i,k} in D_n."""
    return d_root(n, DRootName("gamma", i, k))


def all_d_names(n: int) -> Iterable[DRootName]:
    """Every beta and gamma name of D_n, betas first."""
    for i in range(1, n):
        for k in range(i, n):
            yield DRootName("beta", i, k)
    for i in range(1, n):
        for k in range(i + 1, n + 1):
            yield DRootName("gamma", i, k)


@lru_cache(maxsize=None)
def _d_name_table(n: int) -> Dict[Root, DRootName]:
    return {d_root(n, name): name for name in all_d_names(n)}


def name_root_D(rs: RootSystem, beta: Sequence[int]) -> DRootName:
    """
    Name a positive root of D_n as beta_{i,k} or gamma_{i,k}.

    Raises:
        InvalidInputError: rs is not of type D, or beta is not a positive root
    """
    if rs.kind != "D":
        raise InvalidInputError(f"D-root names need a type D root system, got {rs.label}")
    beta = rs.check_root(beta)
    return _d_name_table(rs.rank)[beta]

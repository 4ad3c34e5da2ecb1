"""
Marginally large tableaux for B(infinity) in types A_n and D_n.

Rows are stored as sorted tuples, so a tableau is a list of row
multisets; barred letters k-bar are encoded as -k. In type D the alphabet
is ordered

    1 < 2 < ... < n-1 < {n, n-bar} < (n-1)-bar < ... < 1-bar

with n and n-bar incomparable (they never share a row). Row r opens with
its "large" block of r's, one longer than row r+1, so every box of row r+1
sits under an r and column strictness reduces to the letter bounds.

Theta (type A) and Psi (type D) send tableaux to Kostant partitions for
the words i^A and i^D.
"""

import logging
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from kpcrystal.bracketing import cancel_brackets
from kpcrystal.errors import InvalidInputError, InvariantViolation
from kpcrystal.pbw import KostantPartition
from kpcrystal.root_system import (
    Root,
    a_root,
    beta_root,
    build_root_system,
    gamma_root,
)


logger = logging.getLogger(__name__)

TABLEAU_SCHEMA_VERSION = "tableau_v0"

MIDDLE_EASTERN = "middle-eastern"
FAR_EASTERN = "far-eastern"
READINGS = (MIDDLE_EASTERN, FAR_EASTERN)

Row = Tuple[int, ...]


# ============= Alphabet =============

def letter_rank(kind: str, n: int, x: int) -> int:
    """
    Position of a letter in the alphabet; n and n-bar share a rank.

    Type A letters are 1..n+1. Type D letter k has rank k and k-bar has rank 2n - k.
    """
    if kind == "A":
        return x
    return x if x > 0 else 2 * n + x


def letter_str(x: int) -> str:
    """Barred letters get a combining overline."""
    return f"{x}" if x > 0 else f"{-x}̅"


def alphabet(kind: str, n: int) -> List[int]:
    """Letters in increasing order: 1..n+1 in type A, 1..n then n-bar..1-bar in type D."""
    if kind == "A":
        return list(range(1, n + 2))
    return list(range(1, n + 1)) + list(range(-n, 0))


def _check_kind(kind: str, n: int) -> str:
    kind = str(kind).upper()
    if kind == "A":
        if n < 1:
            raise InvalidInputError(f"Type A tableaux need n >= 1, got {n}")
    elif kind == "D":
        if n < 3:
            raise InvalidInputError(f"Type D tableaux need n >= 3, got {n}")
    else:
        raise InvalidInputError(f"Tableaux are implemented for types A and D, not {kind!r}")
    return kind


def num_rows(kind: str, n: int) -> int:
    return n if kind == "A" else n - 1


@lru_cache(maxsize=None)
def fundamental_arrows(kind: str, n: int, i: int) -> Tuple[Tuple[int, int], ...]:
    """
    The i-arrows (source, target) of the fundamental crystal.

    Type A is the chain 1 -> 2 -> ... -> n+1. Type D has i -> i+1 and
    (i+1)-bar -> i-bar for i <= n-2; n-1 -> n and n-bar -> (n-1)-bar for
    i = n-1; n-1 -> n-bar and n -> (n-1)-bar for i = n.
    """
    if not 1 <= i <= n:
        raise InvalidInputError(f"Node index {i} out of range 1..{n}")
    if kind == "A":
        return ((i, i + 1),)
    if i <= n - 2:
        return ((i, i + 1), (-(i + 1), -i))
    if i == n - 1:
        return ((n - 1, n), (-n, -(n - 1)))
    return ((n - 1, -n), (n, -(n - 1)))


# ============= Tableaux =============

@dataclass(frozen=True)
class Tableau:
    """
    A marginally large tableau.

    Attributes:
        kind: "A" or "D"
        n: rank
        rows: row r (1-based) as a tuple sorted in the alphabet order
    """
    kind: str
    n: int
    rows: Tuple[Row, ...]

    def row(self, r: int) -> Row:
        return self.rows[r - 1] if 1 <= r <= len(self.rows) else ()

    def count(self, r: int, x: int) -> int:
        return self.row(r).count(x)

    @property
    def num_boxes(self) -> int:
        return sum(len(row) for row in self.rows)

    def __str__(self) -> str:
        return render_tableau(self)

    def to_json(self) -> Dict:
        return {
            "schema_version": TABLEAU_SCHEMA_VERSION,
            "kind": self.kind,
            "n": self.n,
            "rows": [list(row) for row in self.rows],
        }

    @classmethod
    def from_json(cls, data: Dict) -> "Tableau":
        return make_tableau(data["kind"], int(data["n"]), data["rows"])


def _sorted_row(kind: str, n: int, row: Iterable[int]) -> Row:
    return tuple(sorted(row, key=lambda x: letter_rank(kind, n, x)))


def tableau_problems(t: Tableau) -> List[str]:
    """
    Every way `t` fails to be a marginally large semistandard tableau.

    Returns:
        human-readable problems; empty when the tableau is valid
    """
    problems = []
    kind, n = t.kind, t.n
    if len(t.rows) != num_rows(kind, n):
        return [f"{kind}_{n} tableaux have {num_rows(kind, n)} rows, got {len(t.rows)}"]
    letters = set(alphabet(kind, n))
    for r, row in enumerate(t.rows, start=1):
        ranks = [letter_rank(kind, n, x) for x in row]
        if ranks != sorted(ranks):
            problems.append(f"row {r} is not weakly increasing")
        for x in row:
            if x not in letters:
                problems.append(f"row {r}: {x} is not a letter of the {kind}_{n} alphabet")
            elif letter_rank(kind, n, x) < r:
                problems.append(f"row {r}: {letter_str(x)} is smaller than {r}")
            elif kind == "D" and letter_rank(kind, n, x) > 2 * n - r:
                problems.append(f"row {r}: {letter_str(x)} exceeds {letter_str(-r)}")
        if kind == "D" and n in row and -n in row:
            problems.append(f"row {r} contains both {n} and {letter_str(-n)}")
        needed = len(t.row(r + 1)) + 1
        if row.count(r) != needed:
            problems.append(f"row {r} has {row.count(r)} entries {r}; marginal largeness needs {needed}")
    return problems


def make_tableau(kind: str, n: int, rows: Sequence[Sequence[int]]) -> Tableau:
    """
    Build and validate a tableau; rows may be given in any order within each row.

    Raises:
        InvalidInputError: the rows do not form a marginally large tableau
    """
    kind = _check_kind(kind, n)
    t = Tableau(kind, n, tuple(_sorted_row(kind, n, (int(x) for x in row)) for row in rows))
    problems = tableau_problems(t)
    if problems:
        raise InvalidInputError("Invalid tableau: " + "; ".join(problems))
    return t


def highest_tableau(kind: str, n: int) -> Tableau:
    """The tableau whose rows hold only their large blocks."""
    kind = _check_kind(kind, n)
    rows = num_rows(kind, n)
    return Tableau(kind, n, tuple((r,) * (rows - r + 1) for r in range(1, rows + 1)))


# ============= Readings and operators =============

def reading(t: Tableau, mode: str = MIDDLE_EASTERN) -> List[Tuple[int, Tuple[int, int]]]:
    """
    Letters with their (row, column) positions, 1-based.

    middle-eastern: rows top to bottom, each right to left.
    far-eastern: columns right to left, each top to bottom.
    """
    if mode == MIDDLE_EASTERN:
        return [
            (row[c], (r, c + 1))
            for r, row in enumerate(t.rows, start=1)
            for c in range(len(row) - 1, -1, -1)
        ]
    if mode == FAR_EASTERN:
        width = max((len(row) for row in t.rows), default=0)
        return [
            (row[c], (r, c + 1))
            for c in range(width - 1, -1, -1)
            for r, row in enumerate(t.rows, start=1)
            if c < len(row)
        ]
    raise InvalidInputError(f"Unknown reading {mode!r}; expected one of {', '.join(READINGS)}")


def _brackets(t: Tableau, i: int, mode: str) -> Tuple[List[Tuple[str, int, int]], List[int]]:
    """Bracket sequence of the reading for node i, with the uncanceled positions."""
    arrows = fundamental_arrows(t.kind, t.n, i)
    sources = {s for s, _ in arrows}
    targets = {d for _, d in arrows}
    seq = []
    for x, (r, _) in reading(t, mode):
        if x in targets:
            seq.append((")", x, r))
        elif x in sources:
            seq.append(("(", x, r))
    return seq, cancel_brackets([s for s, _, _ in seq])


def _replace(t: Tableau, r: int, old: int, new: int) -> List[List[int]]:
    """Rows with one `old` in row r replaced by `new`, unsorted."""
    rows = [list(row) for row in t.rows]
    rows[r - 1].remove(old)
    rows[r - 1].append(new)
    return rows


def _finish(t: Tableau, rows: List[List[int]], op: str, i: int) -> Tableau:
    """Sort rows and check the result is a marginally large tableau."""
    result = Tableau(t.kind, t.n, tuple(_sorted_row(t.kind, t.n, row) for row in rows))
    problems = tableau_problems(result)
    if problems:
        raise InvariantViolation(f"{op}_{i} produced an invalid tableau: " + "; ".join(problems))
    return result


def tableau_f(t: Tableau, i: int, mode: str = MIDDLE_EASTERN) -> Tableau:
    """
    f_i: change the letter under the leftmost uncanceled "(" along its
    i-arrow; if a large r in row r was changed, insert a column 1, ..., r.

    Raises:
        InvariantViolation: the result is not marginally large and semistandard
    """
    seq, uncanceled = _brackets(t, i, mode)
    arrows = dict(fundamental_arrows(t.kind, t.n, i))
    pick = next((k for k in uncanceled if seq[k][0] == "("), None)
    if pick is None:
        # The large block of row min(i, rows) always leaves a "(" uncanceled.
        raise InvariantViolation(f"f_{i} found no uncanceled '(' in a marginally large tableau")
    _, x, r = seq[pick]
    rows = _replace(t, r, x, arrows[x])
    if x == r:
        for k in range(1, r + 1):
            rows[k - 1].append(k)
    return _finish(t, rows, "f", i)


def tableau_e(t: Tableau, i: int, mode: str = MIDDLE_EASTERN) -> Optional[Tableau]:
    """
    e_i: change the letter under the rightmost uncanceled ")" back along
    its i-arrow; if that creates an extra large r in row r, delete a column
    1, ..., r. None when no ")" survives cancellation.
    """
    seq, uncanceled = _brackets(t, i, mode)
    back = {d: s for s, d in fundamental_arrows(t.kind, t.n, i)}
    pick = next((k for k in reversed(uncanceled) if seq[k][0] == ")"), None)
    if pick is None:
        return None
    _, y, r = seq[pick]
    x = back[y]
    rows = _replace(t, r, y, x)
    if x == r:
        for k in range(1, r + 1):
            rows[k - 1].remove(k)
    return _finish(t, rows, "e", i)


def epsilon_tableau(t: Tableau, i: int, mode: str = MIDDLE_EASTERN) -> int:
    """Number of uncanceled ")" in the i-bracket sequence."""
    seq, uncanceled = _brackets(t, i, mode)
    return sum(1 for k in uncanceled if seq[k][0] == ")")


@lru_cache(maxsize=None)
def _letter_depths(kind: str, n: int) -> Dict[Tuple[int, int], Root]:
    """Simple-root sums along arrow paths between letters of the fundamental crystal."""
    out: Dict[int, List[Tuple[int, int]]] = {}
    for i in range(1, n + 1):
        for s, d in fundamental_arrows(kind, n, i):
            out.setdefault(s, []).append((d, i))
    depths: Dict[Tuple[int, int], Root] = {}
    for start in alphabet(kind, n):
        seen = {start: (0,) * n}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y, i in out.get(x, []):
                if y not in seen:
                    vec = list(seen[x])
                    vec[i - 1] += 1
                    seen[y] = tuple(vec)
                    queue.append(y)
        for y, vec in seen.items():
            depths[(start, y)] = vec
    return depths


def tableau_weight(t: Tableau) -> Root:
    """Weight in simple-root coordinates: minus the arrow colours from r to each box of row r."""
    depths = _letter_depths(t.kind, t.n)
    total = [0] * t.n
    for r, row in enumerate(t.rows, start=1):
        for x in row:
            for k, c in enumerate(depths[(r, x)]):
                total[k] -= c
    return tuple(total)


# ============= Theta (type A) =============

def theta(t: Tableau) -> KostantPartition:
    """c(alpha_{i,j}) = number of boxes j+1 in row i."""
    if t.kind != "A":
        raise InvalidInputError(f"theta is defined on type A tableaux, got type {t.kind}")
    n = t.n
    mult: Dict[Root, int] = {}
    for i, row in enumerate(t.rows, start=1):
        for x, m in Counter(row).items():
            if x > i:
                mult[a_root(n, i, x - 1)] = m
    return KostantPartition.from_mapping(build_root_system("A", n), mult)


def theta_inv(c: KostantPartition) -> Tableau:
    """
    Rebuild the type A tableau: row i carries c(alpha_{i,j}) letters j+1 for
    j >= i after its large block, built from the bottom row up.
    """
    rs = c.rs
    if rs.kind != "A":
        raise InvalidInputError(f"theta_inv needs a type A partition, got {rs.label}")
    n = rs.rank
    rows: List[Row] = []
    below = 0
    for i in range(n, 0, -1):
        tail = [j + 1 for j in range(i, n + 1) for _ in range(c.get(a_root(n, i, j)))]
        row = (i,) * (below + 1) + tuple(tail)
        rows.append(row)
        below = len(row)
    return Tableau("A", n, tuple(reversed(rows)))


# ============= Psi (type D) =============

def psi(t: Tableau) -> KostantPartition:
    """
    Kostant partition of a type D tableau, tallied row by row.

    In row j: each j-bar adds beta_{j,j} and gamma_{j,j+1}; each pair
    (k, k-bar) with j < k < n adds beta_{j,k} and gamma_{j,k+1}; leftover
    k (j < k <= n) adds beta_{j,k-1}; leftover k-bar (j < k <= n) adds
    gamma_{j,k}. The large j's add nothing.
    """
    if t.kind != "D":
        raise InvalidInputError(f"psi is defined on type D tableaux, got type {t.kind}")
    n = t.n
    mult: Counter = Counter()
    for j, row in enumerate(t.rows, start=1):
        counts = Counter(row)
        bar_j = counts[-j]
        if bar_j:
            mult[beta_root(n, j, j)] += bar_j
            mult[gamma_root(n, j, j + 1)] += bar_j
        for k in range(j + 1, n):
            pairs = min(counts[k], counts[-k])
            if pairs:
                mult[beta_root(n, j, k)] += pairs
                mult[gamma_root(n, j, k + 1)] += pairs
            if counts[k] > pairs:
                mult[beta_root(n, j, k - 1)] += counts[k] - pairs
            if counts[-k] > pairs:
                mult[gamma_root(n, j, k)] += counts[-k] - pairs
        if counts[n]:
            mult[beta_root(n, j, n - 1)] += counts[n]
        if counts[-n]:
            mult[gamma_root(n, j, n)] += counts[-n]
    return KostantPartition.from_mapping(build_root_system("D", n), dict(mult))


class PsiLookup:
    """
    Inverse of Psi over a set of tableaux.

    Raises InvariantViolation on construction if Psi is not injective there.
    """

    def __init__(self, tableaux: Iterable[Tableau]):
        self._table: Dict[KostantPartition, Tableau] = {}
        for t in tableaux:
            c = psi(t)
            other = self._table.get(c)
            if other is not None and other != t:
                raise InvariantViolation(f"psi is not injective: two tableaux map to {c}")
            self._table[c] = t

    def __len__(self) -> int:
        return len(self._table)

    def __contains__(self, c: KostantPartition) -> bool:
        return c in self._table

    def inverse(self, c: KostantPartition) -> Optional[Tableau]:
        return self._table.get(c)


# ============= Rendering =============

def render_rows(t: Tableau) -> str:
    """Rows on one line separated by " / ", for graph labels."""
    return " / ".join(" ".join(letter_str(x) for x in row) for row in t.rows)


def render_tableau(t: Tableau) -> str:
    """
    Box layout in English notation. Boxes of the large region (the r's
    at the start of row r) are bracketed.

    >>> print(render_tableau(make_tableau("A", 2, [[1, 1, 1, 2], [2, 3]])))
    +---+---+---+---+
    |[1]|[1]|[1]| 2 |
    +---+---+---+---+
    |[2]| 3 |
    +---+---+
    """
    # letter_str puts a combining bar on barred letters, so pad by digit count
    width = max((len(str(abs(x))) for row in t.rows for x in row), default=1)

    def cell(x: int, large: bool) -> str:
        pad = " " * (width - len(str(abs(x))))
        return f"[{pad}{letter_str(x)}]" if large else f" {pad}{letter_str(x)} "

    def border(length: int) -> str:
        return "+" + "+".join("-" * (width + 2) for _ in range(length)) + "+"

    lines = []
    for r, row in enumerate(t.rows, start=1):
        if r == 1:
            lines.append(border(len(row)))
        large = row.count(r)
        lines.append("|" + "|".join(cell(x, k < large) for k, x in enumerate(row)) + "|")
        lines.append(border(len(row)))
    return "\n".join(lines)


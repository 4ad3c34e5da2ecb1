"""
Bracketing operators on Kostant partitions for semi-adapted words.

For a reduced word semi-adapted to i, f_i and e_i are read off a bracket
string built from the roots eta_j preceding alpha_i (with
(alpha_i|eta_j) < 0) and their shifts nu_j = eta_j + alpha_i:

    )^c(nu_1) (^c(eta_1) ... )^c(nu_k) (^c(eta_k) )^c(alpha_i)

After cancelling matched "()" pairs, f_i acts at the leftmost uncanceled
"(" and e_i at the rightmost uncanceled ")".
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from kpcrystal.config import get_settings
from kpcrystal.errors import InvalidInputError, InvariantViolation, SearchInconclusive
from kpcrystal.pbw import KostantPartition
from kpcrystal.root_system import (
    Root,
    RootSystem,
    a_root,
    add_roots,
    beta_root,
    build_root_system,
    gamma_root,
    pair_with_simple,
    root_label,
)
from kpcrystal.weyl import (
    BraidMove,
    Letters,
    ReducedWord,
    convex_roots,
    apply_letters,
    convex_order,
    letter_moves,
    longest_word,
    make_word,
    parse_letters,
)


logger = logging.getLogger(__name__)

OPEN = "("
CLOSE = ")"


# ============= Canonical words =============

def word_A(n: int) -> ReducedWord:
    """(1 2 ... n)(1 2 ... n-1) ... (1 2) 1."""
    rs = build_root_system("A", n)
    letters = [k for top in range(n, 0, -1) for k in range(1, top + 1)]
    return make_word(rs, letters)


def word_D(n: int) -> ReducedWord:
    """(1 ... n-1 n n-2 ... 1)(2 ... n-1 n n-2 ... 2) ... (n-2 n-1 n n-2) (n-1) n."""
    rs = build_root_system("D", n)
    letters: List[int] = []
    for i in range(1, n - 1):
        letters.extend(range(i, n + 1))
        letters.extend(range(n - 2, i - 1, -1))
    letters.extend([n - 1, n])
    return make_word(rs, letters)


def resolve_word(rs: RootSystem, text: str) -> ReducedWord:
    """
    Turn a word argument into a reduced word for w_0.

    Accepts digit strings, comma lists, "auto-A", "auto-D" and "longest".

    Raises:
        InvalidInputError: malformed, non-reduced, not of full length, or an
            auto word for the wrong type
    """
    key = text.strip().lower()
    if key == "longest":
        return longest_word(rs)
    if key in ("auto-a", "auto-d"):
        kind = key[-1].upper()
        if rs.kind != kind:
            raise InvalidInputError(f"{text} needs a type {kind} root system, got {rs.label}")
        w = word_A(rs.rank) if kind == "A" else word_D(rs.rank)
        if w.rs != rs:
            raise InvalidInputError(f"{text} is only defined for the standard {kind} node labels")
        return w
    w = make_word(rs, parse_letters(text))
    if not w.is_longest:
        raise InvalidInputError(
            f"Word {w} has length {len(w)}; a word for w_0 in {rs.label} has length {rs.num_positive}"
        )
    return w


# ============= Bracket specs and strings =============

@dataclass(frozen=True)
class BracketSpec:
    """
    The roots that index the bracket string for node i.

    Attributes:
        i: the node
        pairs: (nu_j, eta_j) in the order the eta_j appear
        apex: alpha_i
    """
    i: int
    pairs: Tuple[Tuple[Root, Root], ...]
    apex: Root


def bracket_spec(rs: RootSystem, w: ReducedWord, i: int) -> BracketSpec:
    """
    Collect eta_j (roots before alpha_i pairing negatively with it) and nu_j.

    Raises:
        InvalidInputError: alpha_i does not occur in the order
    """
    i = rs.check_node(i)
    return _bracket_spec(rs, w.letters, i)


@lru_cache(maxsize=1024)
def _bracket_spec(rs: RootSystem, letters: Letters, i: int) -> BracketSpec:
    """bracket_spec on letter tuples, cached."""
    order = convex_order(rs, ReducedWord(rs, letters))
    apex = rs.simple_root(i)
    pairs = []
    for root in order.roots:
        if root == apex:
            return BracketSpec(i, tuple(pairs), apex)
        if pair_with_simple(rs, root, i) < 0:
            nu = add_roots(root, apex)
            if not rs.is_positive_root(nu):
                raise InvariantViolation(f"{root_label(root)} + alpha_{i} is not a root")
            pairs.append((nu, root))
    raise InvalidInputError(f"alpha_{i} does not occur in the convex order of {ReducedWord(rs, letters)}")


@dataclass(frozen=True)
class BracketToken:
    """
    One bracket.

    `pair` is the 0-based pair index, or None for the alpha_i block.
    """
    symbol: str
    root: Root
    pair: Optional[int]


@dataclass(frozen=True)
class BracketString:
    tokens: Tuple[BracketToken, ...]
    uncanceled: Tuple[int, ...]

    @property
    def text(self) -> str:
        return "".join(t.symbol for t in self.tokens)

    @property
    def reduced(self) -> str:
        return "".join(self.tokens[k].symbol for k in self.uncanceled)

    def leftmost_open(self) -> Optional[BracketToken]:
        """Token under the leftmost uncanceled "(", if any."""
        for k in self.uncanceled:
            if self.tokens[k].symbol == OPEN:
                return self.tokens[k]
        return None

    def rightmost_close(self) -> Optional[BracketToken]:
        """Token under the rightmost uncanceled ")", if any."""
        for k in reversed(self.uncanceled):
            if self.tokens[k].symbol == CLOSE:
                return self.tokens[k]
        return None


def cancel_brackets(symbols: Sequence[str]) -> List[int]:
    """
    Indices left after repeatedly deleting adjacent "()" pairs.

    One left-to-right pass with a stack of open brackets.
    """
    unmatched_close: List[int] = []
    open_stack: List[int] = []
    for k, s in enumerate(symbols):
        if s == OPEN:
            open_stack.append(k)
        elif open_stack:
            open_stack.pop()
        else:
            unmatched_close.append(k)
    return unmatched_close + open_stack


def bracket_string(c: KostantPartition, spec: BracketSpec) -> BracketString:
    """Tokens pair by pair (")" per part nu_j, then "(" per part eta_j), closed by ")" per part alpha_i."""
    mult = c.as_dict()
    tokens: List[BracketToken] = []
    for j, (nu, eta) in enumerate(spec.pairs):
        tokens.extend(BracketToken(CLOSE, nu, j) for _ in range(mult.get(nu, 0)))
        tokens.extend(BracketToken(OPEN, eta, j) for _ in range(mult.get(eta, 0)))
    tokens.extend(BracketToken(CLOSE, spec.apex, None) for _ in range(mult.get(spec.apex, 0)))
    return BracketString(tuple(tokens), tuple(cancel_brackets([t.symbol for t in tokens])))


def f_bracket(c: KostantPartition, rs: RootSystem, w: ReducedWord, i: int) -> KostantPartition:
    """
    f_i: at the leftmost uncanceled "(" of pair j, move one part from eta_j
    to nu_j; with no uncanceled "(", add a part alpha_i.
    """
    spec = bracket_spec(rs, w, i)
    token = bracket_string(c, spec).leftmost_open()
    if token is None:
        return c.bump({spec.apex: 1})
    nu, eta = spec.pairs[token.pair]
    return c.bump({nu: 1, eta: -1})


def e_bracket(c: KostantPartition, rs: RootSystem, w: ReducedWord, i: int) -> Optional[KostantPartition]:
    """
    e_i: at the rightmost uncanceled ")", move one part from nu_j back to
    eta_j, or remove a part alpha_i. None when every ")" is canceled.
    """
    spec = bracket_spec(rs, w, i)
    token = bracket_string(c, spec).rightmost_close()
    if token is None:
        return None
    if token.pair is None:
        return c.bump({spec.apex: -1})
    nu, eta = spec.pairs[token.pair]
    return c.bump({nu: -1, eta: 1})


def explain_bracket_string(c: KostantPartition, spec: BracketSpec) -> List[Dict]:
    """
    Rows for rendering: root label, bracket, and whether it survives cancellation.

    The token f_i acts on is flagged `f_target`, the one e_i acts on `e_target`.
    """
    bs = bracket_string(c, spec)
    survivors = set(bs.uncanceled)
    left = next((k for k in bs.uncanceled if bs.tokens[k].symbol == OPEN), None)
    right = next((k for k in reversed(bs.uncanceled) if bs.tokens[k].symbol == CLOSE), None)
    return [
        {
            "label": root_label(t.root),
            "symbol": t.symbol,
            "uncanceled": k in survivors,
            "f_target": k == left,
            "e_target": k == right,
        }
        for k, t in enumerate(bs.tokens)
    ]


# ============= Displayed block sequences for i^A and i^D =============

def display_bracket_blocks_A(n: int, i: int) -> BracketSpec:
    """Pairs (alpha_{j,i}, alpha_{j,i-1}) for j = 1..i-1, apex alpha_i."""
    pairs = tuple((a_root(n, j, i), a_root(n, j, i - 1)) for j in range(1, i))
    return BracketSpec(i, pairs, a_root(n, i, i))


def display_bracket_blocks_D(n: int, i: int) -> BracketSpec:
    """
    For i != n: pairs (beta_{j,i}, beta_{j,i-1}) and (gamma_{j,i}, gamma_{j,i+1})
    for j = 1..i-1, apex beta_{i,i}.

    For i = n: pairs (gamma_{j,n}, beta_{j,n-2}) and (gamma_{j,n-1}, beta_{j,n-1})
    for j = 1..n-2, apex gamma_{n-1,n}.
    """
    pairs = []
    if i != n:
        for j in range(1, i):
            pairs.append((beta_root(n, j, i), beta_root(n, j, i - 1)))
            pairs.append((gamma_root(n, j, i), gamma_root(n, j, i + 1)))
        return BracketSpec(i, tuple(pairs), beta_root(n, i, i))
    for j in range(1, n - 1):
        pairs.append((gamma_root(n, j, n), beta_root(n, j, n - 2)))
        pairs.append((gamma_root(n, j, n - 1), beta_root(n, j, n - 1)))
    return BracketSpec(i, tuple(pairs), gamma_root(n, n - 1, n))


# ============= Semi-adaptedness =============

@dataclass(frozen=True)
class SemiAdaptedWitness:
    """Moves taking the word to one starting with i, each allowed for i."""
    i: int
    moves: Tuple[BraidMove, ...]
    final: ReducedWord


@dataclass(frozen=True)
class Certification:
    """
    Outcome of the semi-adaptedness search.

    status is "yes", "no" (reachable set exhausted) or "inconclusive" (cap hit).
    """
    i: int
    status: str
    visited: int
    witness: Optional[SemiAdaptedWitness] = field(default=None)

    def to_json(self) -> Dict:
        data = {"i": self.i, "status": self.status, "visited": self.visited}
        if self.witness is not None:
            data["witness"] = [m.to_json() for m in self.witness.moves]
            data["final_word"] = list(self.witness.final.letters)
        return data


def _permute_roots(roots: Tuple[Root, ...], move: BraidMove) -> Tuple[Root, ...]:
    """Convex order after `move`: a 2-term move swaps two roots, a 3-term move reverses three."""
    k = move.position - 1
    if move.kind == 2:
        return roots[:k] + (roots[k + 1], roots[k]) + roots[k + 2:]
    return roots[:k] + (roots[k + 2], roots[k + 1], roots[k]) + roots[k + 3:]


def _allowed_moves(rs: RootSystem, letters: Letters, roots: Tuple[Root, ...], apex: Root) -> List[BraidMove]:
    # 3-term moves only on (beta, beta + alpha_i, alpha_i).
    return [
        m for m in letter_moves(rs, letters)
        if m.kind == 2 or roots[m.position + 1] == apex
    ]


def _search(rs: RootSystem, letters: Letters, i: int, cap: int) -> Tuple[Optional[Tuple[BraidMove, ...]], int]:
    """Depth-first search; (moves, visited) on success, (None, visited) when exhausted."""
    if letters[0] == i:
        return (), 1
    apex = rs.simple_root(i)
    parent: Dict[Letters, Optional[Tuple[Letters, BraidMove]]] = {letters: None}
    stack = [(letters, convex_roots(rs, letters))]
    while stack:
        current, roots = stack.pop()
        q = roots.index(apex)
        moves = _allowed_moves(rs, current, roots, apex)
        # Moves that carry alpha_i one step left are tried first.
        moves.sort(key=lambda m: (m.position + m.kind - 2 != q, m.position))
        for move in reversed(moves):
            nxt = apply_letters(current, move)
            if nxt in parent:
                continue
            parent[nxt] = (current, move)
            if nxt[0] == i:
                return _trace(parent, nxt), len(parent)
            if len(parent) > cap:
                raise SearchInconclusive(
                    f"Semi-adaptedness search for i={i} stopped after {cap} words", visited=len(parent)
                )
            if len(parent) % 10000 == 0:
                logger.debug("semi-adapted search i=%d: %d words visited", i, len(parent))
            stack.append((nxt, _permute_roots(roots, move)))
    return None, len(parent)


def _trace(parent: Dict, end: Letters) -> Tuple[BraidMove, ...]:
    """Moves from the start word to `end`, followed back through `parent`."""
    moves = []
    node = end
    while parent[node] is not None:
        node, move = parent[node]
        moves.append(move)
    return tuple(reversed(moves))


def is_semi_adapted(
    rs: RootSystem, w: ReducedWord, i: int, cap: Optional[int] = None
) -> Optional[SemiAdaptedWitness]:
    """
    Search for a way to bring i to the front using 2-term moves and 3-term
    moves on roots (beta, beta + alpha_i, alpha_i).

    Returns:
        a witness, or None when the reachable words are exhausted

    Raises:
        SearchInconclusive: more than `cap` words visited (default from settings)
    """
    cert = certify_semi_adapted(rs, w, i, cap)
    if cert.status == "inconclusive":
        raise SearchInconclusive(
            f"Semi-adaptedness search for i={cert.i} stopped after {cert.visited} words", visited=cert.visited
        )
    return cert.witness


def certify_semi_adapted(rs: RootSystem, w: ReducedWord, i: int, cap: Optional[int] = None) -> Certification:
    """Run the semi-adaptedness search and report yes / no / inconclusive."""
    i = rs.check_node(i)
    if not w.is_longest:
        raise InvalidInputError(f"Word {w} is not a word for w_0 in {rs.label}")
    cap = get_settings().search_cap if cap is None else cap
    return _certify(rs, w.letters, i, cap)


@lru_cache(maxsize=1024)
def _certify(rs: RootSystem, letters: Letters, i: int, cap: int) -> Certification:
    """certify_semi_adapted on letter tuples, cached."""
    try:
        moves, visited = _search(rs, letters, i, cap)
    except SearchInconclusive as e:
        logger.warning("semi-adapted search for i=%d on %s inconclusive at %d words", i,
                       ReducedWord(rs, letters), e.visited)
        return Certification(i, "inconclusive", e.visited)
    if moves is None:
        return Certification(i, "no", visited)
    final = letters
    for move in moves:
        final = apply_letters(final, move)
    return Certification(i, "yes", visited, SemiAdaptedWitness(i, moves, ReducedWord(rs, final)))


def three_term_pair_indices(rs: RootSystem, w: ReducedWord, witness: SemiAdaptedWitness) -> List[int]:
    """
    For each 3-term move of the witness, the 1-based j with the move acting on
    (eta_j, nu_j, alpha_i) of the original word.

    Raises:
        InvariantViolation: a 3-term move acts on a root that is no eta_j
    """
    spec = bracket_spec(rs, w, witness.i)
    etas = [eta for _, eta in spec.pairs]
    roots = convex_roots(rs, w.letters)
    touched = []
    for move in witness.moves:
        if move.kind == 3:
            beta = roots[move.position - 1]
            if beta not in etas:
                raise InvariantViolation(f"3-term move at {move.position} acts on {root_label(beta)}, not an eta")
            touched.append(etas.index(beta) + 1)
        roots = _permute_roots(roots, move)
    return touched


# ============= Operator bundle =============

class BracketOperators:
    """
    f_i / e_i by bracketing on a fixed word, with per-node certification.

    Operators compute on any word; `uncertified` lists nodes whose
    semi-adaptedness was not confirmed, for which the results need not agree
    with the general operators.
    """

    def __init__(self, rs: RootSystem, word: ReducedWord, cap: Optional[int] = None, certify: bool = True):
        self.rs = rs
        self.word = word
        self.certifications: Dict[int, Certification] = {}
        if certify:
            for i in rs.nodes:
                self.certifications[i] = certify_semi_adapted(rs, word, i, cap)

    @property
    def uncertified(self) -> List[int]:
        """Nodes without a "yes" certification."""
        return [i for i in self.rs.nodes
                if i not in self.certifications or self.certifications[i].status != "yes"]

    def f(self, c: KostantPartition, i: int) -> KostantPartition:
        return f_bracket(c, self.rs, self.word, i)

    def e(self, c: KostantPartition, i: int) -> Optional[KostantPartition]:
        return e_bracket(c, self.rs, self.word, i)

    def metadata(self) -> Dict:
        return {
            "word": list(self.word.letters),
            "certified": {str(i): cert.status for i, cert in sorted(self.certifications.items())},
            "uncertified": self.uncertified,
        }

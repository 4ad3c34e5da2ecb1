"""
Crystal models, BFS balls, isomorphism checks and verification suites.

Every model exposes the same small interface (highest element, f_i, e_i,
canonical key) so the same BFS and the same checks run on Lusztig data,
bracketing partitions and tableaux. Node keys are compact JSON strings;
graphs and reports built from them are byte-identical across runs.
"""

import json
import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

import networkx as nx
import numpy as np

from kpcrystal.bracketing import (
    BracketOperators,
    bracket_spec,
    certify_semi_adapted,
    display_bracket_blocks_A,
    display_bracket_blocks_D,
    e_bracket,
    f_bracket,
    resolve_word,
    three_term_pair_indices,
    word_A,
    word_D,
)
from kpcrystal.config import get_settings
from kpcrystal.errors import InvalidInputError, KPCrystalError
from kpcrystal.pbw import (
    KostantPartition,
    LusztigDatum,
    e_general,
    epsilon,
    f_general,
    transport,
    transport_along,
    weight,
)
from kpcrystal.root_system import RootSystem, build_root_system, root_label
from kpcrystal.schema import load_artifact
from kpcrystal.tableaux import (
    FAR_EASTERN,
    MIDDLE_EASTERN,
    READINGS,
    PsiLookup,
    Tableau,
    highest_tableau,
    psi,
    render_rows,
    tableau_e,
    tableau_f,
    tableau_weight,
    theta,
    theta_inv,
)
from kpcrystal.weyl import (
    braid_path,
    convex_order,
    convexity_violations,
    random_reduced_word,
)


logger = logging.getLogger(__name__)

GRAPH_SCHEMA_VERSION = "crystal_graph_v0"
REPORT_SCHEMA_VERSION = "suite_report_v0"

MODELS = ("pbw-general", "pbw-bracket", "tableaux-A", "tableaux-D")

MAX_REPORTED_VIOLATIONS = 50


def _compact(obj: Any) -> str:
    """Compact JSON with sorted keys."""
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


def partition_key(c: KostantPartition) -> str:
    """Node key of a Kostant partition."""
    return _compact([[list(root), m] for root, m in c.parts])


def tableau_key(t: Tableau) -> str:
    """Node key of a tableau."""
    return _compact([list(row) for row in t.rows])


# ============= Models =============

class CrystalModel(ABC):
    """A realization of B(infinity) with a distinguished highest element."""

    name: str = ""
    rank: int = 0

    @abstractmethod
    def highest(self) -> Any:
        ...

    @abstractmethod
    def f(self, x: Any, i: int) -> Any:
        ...

    @abstractmethod
    def e(self, x: Any, i: int) -> Optional[Any]:
        ...

    @abstractmethod
    def key(self, x: Any) -> str:
        ...

    @abstractmethod
    def element_json(self, x: Any) -> Dict:
        ...

    @abstractmethod
    def params(self) -> Dict:
        ...

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)


class PBWGeneralModel(CrystalModel):
    """Lusztig data on a fixed word, operators by braid-move transport."""

    name = "pbw-general"

    def __init__(self, rs: RootSystem, word):
        self.rs = rs
        self.word = word
        self.rank = rs.rank

    def highest(self) -> LusztigDatum:
        return LusztigDatum.zero(self.word)

    def f(self, x: LusztigDatum, i: int) -> LusztigDatum:
        return f_general(x, i)

    def e(self, x: LusztigDatum, i: int) -> Optional[LusztigDatum]:
        return e_general(x, i)

    def key(self, x: LusztigDatum) -> str:
        return partition_key(x.to_partition())

    def element_json(self, x: LusztigDatum) -> Dict:
        return x.to_json()

    def params(self) -> Dict:
        return {**self.rs.to_json(), "word": list(self.word.letters)}


class PBWBracketModel(CrystalModel):
    """Kostant partitions with the bracketing operators of a fixed word."""

    name = "pbw-bracket"

    def __init__(self, rs: RootSystem, word, cap: Optional[int] = None):
        self.rs = rs
        self.word = word
        self.rank = rs.rank
        self.ops = BracketOperators(rs, word, cap=cap)
        if self.ops.uncertified:
            logger.warning("word %s is not certified semi-adapted for i in %s", word, self.ops.uncertified)

    def highest(self) -> KostantPartition:
        return KostantPartition.zero(self.rs)

    def f(self, x: KostantPartition, i: int) -> KostantPartition:
        return self.ops.f(x, i)

    def e(self, x: KostantPartition, i: int) -> Optional[KostantPartition]:
        return self.ops.e(x, i)

    def key(self, x: KostantPartition) -> str:
        return partition_key(x)

    def element_json(self, x: KostantPartition) -> Dict:
        return x.to_json()

    def params(self) -> Dict:
        return {**self.rs.to_json(), "word": list(self.word.letters), "uncertified": self.ops.uncertified}


class TableauModel(CrystalModel):
    """Marginally large tableaux under one of the two readings."""

    def __init__(self, kind: str, n: int, reading: str = MIDDLE_EASTERN):
        if reading not in READINGS:
            raise InvalidInputError(f"Unknown reading {reading!r}; expected one of {', '.join(READINGS)}")
        self.kind = kind
        self.n = n
        self.rank = n
        self.reading = reading
        self.name = f"tableaux-{kind}"
        self._highest = highest_tableau(kind, n)

    def highest(self) -> Tableau:
        return self._highest

    def f(self, x: Tableau, i: int) -> Tableau:
        return tableau_f(x, i, self.reading)

    def e(self, x: Tableau, i: int) -> Optional[Tableau]:
        return tableau_e(x, i, self.reading)

    def key(self, x: Tableau) -> str:
        return tableau_key(x)

    def element_json(self, x: Tableau) -> Dict:
        return x.to_json()

    def params(self) -> Dict:
        return {"type": self.kind, "rank": self.n, "reading": self.reading}


def default_word_text(kind: str) -> str:
    """Word keyword used when none is given for a type."""
    return {"A": "auto-A", "D": "auto-D"}.get(kind, "longest")


def build_model(name: str, params: Mapping[str, Any]) -> CrystalModel:
    """
    Construct a model from loosely typed parameters (CLI strings allowed).

    Params: type, rank, word (pbw models; default auto-A / auto-D / longest),
    reading (tableau models).

    Raises:
        InvalidInputError: unknown model or bad parameters
    """
    if name == "pbw-general" or name == "pbw-bracket":
        rs = build_root_system(str(params.get("type", "A")), _int(params, "rank", 2))
        word = resolve_word(rs, str(params.get("word") or default_word_text(rs.kind)))
        if name == "pbw-general":
            return PBWGeneralModel(rs, word)
        return PBWBracketModel(rs, word, cap=_opt_int(params, "cap"))
    if name in ("tableaux-A", "tableaux-D"):
        kind = name[-1]
        given = str(params.get("type", kind)).upper()
        if given != kind:
            raise InvalidInputError(f"Model {name} needs type {kind}, got {given}")
        return TableauModel(kind, _int(params, "rank", 2 if kind == "A" else 4),
                            str(params.get("reading", MIDDLE_EASTERN)))
    raise InvalidInputError(f"Unknown model {name!r}; expected one of {', '.join(MODELS)}")


def _int(params: Mapping[str, Any], key: str, default: int) -> int:
    """Integer parameter; CLI strings are converted."""
    raw = params.get(key, default)
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise InvalidInputError(f"Parameter {key} must be an integer, got {raw!r}")


def _opt_int(params: Mapping[str, Any], key: str) -> Optional[int]:
    return None if params.get(key) in (None, "") else _int(params, key, 0)


# ============= Crystal graphs =============

@dataclass
class CrystalGraph:
    """
    A ball in a crystal graph around its highest element.

    Attributes:
        model: model name
        params: model parameters
        depth: generation radius
        root: key of the highest element
        nodes: keys in BFS order
        levels: key -> distance from root
        elements: key -> element
        edges: (source key, i, target key), one per node and i at most
        truncated: True when a cap stopped generation
        truncation: reason and counts when truncated
    """
    model: str
    params: Dict
    depth: int
    root: str
    nodes: List[str] = field(default_factory=list)
    levels: Dict[str, int] = field(default_factory=dict)
    elements: Dict[str, Any] = field(default_factory=dict)
    edges: List[Tuple[str, int, str]] = field(default_factory=list)
    truncated: bool = False
    truncation: Optional[Dict] = None

    def level_sizes(self) -> List[int]:
        """Node counts per level, from the root out."""
        sizes = [0] * (self.depth + 1)
        for level in self.levels.values():
            sizes[level] += 1
        return sizes


def generate_ball(
    model: CrystalModel,
    depth: int,
    max_nodes: Optional[int] = None,
    time_limit_s: Optional[float] = None,
) -> CrystalGraph:
    """
    Breadth-first ball of radius `depth` under f_1, ..., f_r.

    Edges are recorded out of every node of level < depth. Caps default to
    the settings; hitting one sets `truncated` and describes where.

    Raises:
        InvalidInputError: negative depth
    """
    if depth < 0:
        raise InvalidInputError(f"Depth must be >= 0, got {depth}")
    settings = get_settings()
    max_nodes = settings.max_nodes if max_nodes is None else max_nodes
    time_limit_s = settings.time_limit_s if time_limit_s is None else time_limit_s
    start = time.monotonic()

    top = model.highest()
    root = model.key(top)
    g = CrystalGraph(model.name, model.params(), depth, root, [root], {root: 0}, {root: top})
    frontier = [root]
    for level in range(depth):
        fresh = []
        for key in frontier:
            x = g.elements[key]
            for i in model.nodes:
                y = model.f(x, i)
                ykey = model.key(y)
                if ykey not in g.levels:
                    if len(g.nodes) >= max_nodes:
                        g.truncated = True
                        g.truncation = {"reason": "max_nodes", "limit": max_nodes, "level": level + 1}
                        logger.warning("ball truncated at %d nodes (level %d)", max_nodes, level + 1)
                        return g
                    g.nodes.append(ykey)
                    g.levels[ykey] = level + 1
                    g.elements[ykey] = y
                    fresh.append(ykey)
                g.edges.append((key, i, ykey))
            if time.monotonic() - start > time_limit_s:
                g.truncated = True
                g.truncation = {"reason": "time_limit", "limit": time_limit_s, "level": level + 1}
                logger.warning("ball truncated after %.1fs (level %d)", time_limit_s, level + 1)
                return g
        logger.info("%s level %d: %d new nodes", model.name, level + 1, len(fresh))
        frontier = fresh
    return g


def graph_to_json(g: CrystalGraph, model: Optional[CrystalModel] = None) -> Dict:
    """JSON form: nodes with integer ids (BFS order) and labelled edges between ids."""
    ids = {key: k for k, key in enumerate(g.nodes)}
    nodes = []
    for key in g.nodes:
        node = {"id": ids[key], "key": key, "level": g.levels[key]}
        if model is not None:
            node["element"] = model.element_json(g.elements[key])
        nodes.append(node)
    return {
        "schema_version": GRAPH_SCHEMA_VERSION,
        "model": g.model,
        "params": g.params,
        "depth": g.depth,
        "root": ids[g.root],
        "nodes": nodes,
        "edges": [{"source": ids[s], "label": i, "target": ids[t]} for s, i, t in g.edges],
        "truncated": g.truncated,
        "truncation": g.truncation,
    }


def graph_to_networkx(g: CrystalGraph) -> nx.MultiDiGraph:
    """MultiDiGraph with integer nodes, a text label and level per node, and label = i per edge."""
    graph = nx.MultiDiGraph(name=f"{g.model} depth {g.depth}")
    for k, key in enumerate(g.nodes):
        graph.add_node(k, label=_node_label(g, key), level=g.levels[key])
    ids = {key: k for k, key in enumerate(g.nodes)}
    for s, i, t in g.edges:
        graph.add_edge(ids[s], ids[t], label=str(i))
    return graph


def _node_label(g: CrystalGraph, key: str) -> str:
    """One-line text for a node."""
    x = g.elements[key]
    if isinstance(x, LusztigDatum):
        x = x.to_partition()
    if isinstance(x, KostantPartition):
        return str(x)
    if isinstance(x, Tableau):
        return render_rows(x)
    return key


def graph_to_dot(g: CrystalGraph) -> str:
    """DOT text with edge label = i."""
    return nx.drawing.nx_pydot.to_pydot(graph_to_networkx(g)).to_string()


# ============= Isomorphism =============

@dataclass
class IsomorphismReport:
    passed: bool
    checked_nodes: int
    checked_edges: int
    violations: List[Dict] = field(default_factory=list)

    def to_json(self) -> Dict:
        return {
            "passed": self.passed,
            "checked_nodes": self.checked_nodes,
            "checked_edges": self.checked_edges,
            "violations": self.violations,
        }


def check_isomorphism(g1: CrystalGraph, g2: CrystalGraph, vertex_map: Mapping[str, str]) -> IsomorphismReport:
    """
    Check that `vertex_map` is a bijection from g1's nodes to g2's nodes that
    carries every labelled edge of each graph onto an edge of the other.
    """
    violations: List[Dict] = []
    nodes2 = set(g2.nodes)
    images: Dict[str, str] = {}
    for key in g1.nodes:
        if key not in vertex_map:
            violations.append({"kind": "unmapped", "node": key})
            continue
        image = vertex_map[key]
        if image not in nodes2:
            violations.append({"kind": "image-missing", "node": key, "image": image})
        if image in images:
            violations.append({"kind": "not-injective", "node": key, "other": images[image], "image": image})
        images[image] = key
    for key in g2.nodes:
        if key not in images:
            violations.append({"kind": "not-surjective", "node": key})

    edges1 = set(g1.edges)
    edges2 = set(g2.edges)
    for s, i, t in g1.edges:
        mapped = (vertex_map.get(s), i, vertex_map.get(t))
        if mapped not in edges2:
            violations.append({"kind": "edge-missing-in-target", "edge": [s, i, t]})
    for s, i, t in g2.edges:
        pre = (images.get(s), i, images.get(t))
        if pre not in edges1:
            violations.append({"kind": "edge-missing-in-source", "edge": [s, i, t]})
    return IsomorphismReport(
        passed=not violations,
        checked_nodes=len(g1.nodes),
        checked_edges=len(g1.edges) + len(g2.edges),
        violations=violations,
    )


# ============= Suites =============

@dataclass
class SuiteReport:
    suite: str
    params: Dict
    checks: int = 0
    violations: List[Dict] = field(default_factory=list)
    stats: Dict = field(default_factory=dict)
    violation_count: int = 0

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def check(self, ok: bool, **detail) -> bool:
        """Count one check and record a violation when it fails. Returns `ok`."""
        self.checks += 1
        if not ok:
            self.fail(**detail)
        return ok

    def fail(self, **detail):
        self.violation_count += 1
        if len(self.violations) < MAX_REPORTED_VIOLATIONS:
            self.violations.append(detail)

    def merge_isomorphism(self, name: str, report: IsomorphismReport):
        """Fold an isomorphism report in, one check per edge."""
        self.checks += report.checked_edges
        for v in report.violations:
            self.fail(check=name, **v)

    def to_json(self) -> Dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "suite": self.suite,
            "params": self.params,
            "passed": self.passed,
            "checks": self.checks,
            "violation_count": self.violation_count,
            "violations": self.violations,
            "stats": self.stats,
        }


def _note_truncation(report: SuiteReport, g: CrystalGraph, label: str):
    """Record ball size and truncation under `label`."""
    report.stats[f"{label}_nodes"] = len(g.nodes)
    if g.truncated:
        report.stats[f"{label}_truncation"] = g.truncation


def _ball_params(params: Mapping[str, Any], kind: str, rank: int, depth: int) -> Tuple[str, int, int]:
    """Type, rank and depth with suite defaults."""
    return (str(params.get("type", kind)).upper(), _int(params, "rank", rank), _int(params, "depth", depth))


def _caps(params: Mapping[str, Any]) -> Dict:
    """Ball caps given as suite parameters, as keyword arguments for generate_ball."""
    caps = {}
    if params.get("max_nodes") not in (None, ""):
        caps["max_nodes"] = _int(params, "max_nodes", 0)
    raw = params.get("time_limit_s")
    if raw not in (None, ""):
        try:
            caps["time_limit_s"] = float(raw)
        except (TypeError, ValueError):
            raise InvalidInputError(f"Parameter time_limit_s must be a number, got {raw!r}")
    return caps


def _random_datum(word, rng: np.random.Generator, high: int) -> LusztigDatum:
    """A datum with entries drawn from 0..high."""
    return LusztigDatum(word, tuple(int(v) for v in rng.integers(0, high + 1, size=len(word.letters))))


def suite_transport_roundtrip(params: Mapping[str, Any]) -> SuiteReport:
    """Round trips, path independence and weight preservation of transport."""
    kind, rank = str(params.get("type", "A")).upper(), _int(params, "rank", 3)
    cases = _int(params, "cases", 50)
    rng = np.random.default_rng(_int(params, "seed", 0))
    rs = build_root_system(kind, rank)
    report = SuiteReport("transport-roundtrip", {"type": kind, "rank": rank, "cases": cases})
    for case in range(cases):
        a = random_reduced_word(rs, rng)
        b = random_reduced_word(rs, rng)
        mid = random_reduced_word(rs, rng)
        d = _random_datum(a, rng, _int(params, "max_mult", 3))
        there = transport(d, b)
        back = transport(there, a)
        report.check(back == d, check="roundtrip", case=case, word=list(a.letters), vector=list(d.vector))
        report.check(weight(there) == weight(d), check="weight", case=case, word=list(a.letters))
        via = transport(transport(d, mid), b)
        report.check(via == there, check="path-independence", case=case,
                     source=list(a.letters), middle=list(mid.letters), target=list(b.letters),
                     direct=list(there.vector), via=list(via.vector))
        moves = braid_path(rs, a, b)
        report.check(transport_along(d, moves) == there, check="explicit-path", case=case)
    return report


def suite_bracket_vs_general(params: Mapping[str, Any]) -> SuiteReport:
    """f and e by bracketing agree with the transport operators on a ball."""
    kind, rank, depth = _ball_params(params, "D", 4, 6)
    rs = build_root_system(kind, rank)
    word = resolve_word(rs, str(params.get("word") or default_word_text(kind)))
    report = SuiteReport("bracket-vs-general", {"type": kind, "rank": rank, "depth": depth,
                                                "word": list(word.letters)})
    general = PBWGeneralModel(rs, word)
    bracket = PBWBracketModel(rs, word, cap=_opt_int(params, "cap"))
    certified = [i for i in rs.nodes if i not in bracket.ops.uncertified]
    report.stats["certified"] = certified
    g = generate_ball(general, depth, **_caps(params))
    _note_truncation(report, g, "ball")
    for key in g.nodes:
        d = g.elements[key]
        c = d.to_partition()
        for i in certified:
            fg = f_general(d, i).to_partition()
            fb = f_bracket(c, rs, word, i)
            report.check(fg == fb, check="f", i=i, node=key, general=str(fg), bracket=str(fb))
            eg = e_general(d, i)
            eb = e_bracket(c, rs, word, i)
            same = (eg is None and eb is None) or (eg is not None and eb is not None and eg.to_partition() == eb)
            report.check(same, check="e", i=i, node=key,
                         general=None if eg is None else str(eg.to_partition()),
                         bracket=None if eb is None else str(eb))
    return report


def _fixture_entries(params: Mapping[str, Any], section: str) -> List[Dict]:
    """A fixture section, or nothing when no fixture was given."""
    path = params.get("fixture")
    if not path:
        return []
    data = load_artifact(Path(str(path)), expected="fixture_v0")
    return list(data.get(section, []))


def _check_intertwining(
    report: SuiteReport,
    tab_model: TableauModel,
    pbw_model: PBWBracketModel,
    to_partition: Callable[[Tableau], KostantPartition],
    depth: int,
    caps: Dict,
):
    tg = generate_ball(tab_model, depth, **caps)
    pg = generate_ball(pbw_model, depth, **caps)
    _note_truncation(report, tg, "tableau_ball")
    _note_truncation(report, pg, "partition_ball")
    images = {}
    for key in tg.nodes:
        t = tg.elements[key]
        c = to_partition(t)
        images[key] = partition_key(c)
        report.check(tableau_weight(t) == weight(c), check="weight", node=key)
        for i in tab_model.nodes:
            lhs = to_partition(tab_model.f(t, i))
            rhs = pbw_model.f(c, i)
            report.check(lhs == rhs, check="f-intertwines", i=i, node=key, tableau_side=str(lhs),
                         partition_side=str(rhs))
    if len(set(images.values())) != len(images):
        report.fail(check="injective", detail="two tableaux share an image")
    if not tg.truncated and not pg.truncated:
        report.merge_isomorphism("isomorphism", check_isomorphism(tg, pg, images))
    return tg


def suite_theta(params: Mapping[str, Any]) -> SuiteReport:
    """Theta intertwines the tableau and bracketing operators; theta_inv inverts it."""
    _, rank, depth = _ball_params(params, "A", 3, 6)
    report = SuiteReport("theta", {"type": "A", "rank": rank, "depth": depth})
    word = word_A(rank)
    tab = TableauModel("A", rank, str(params.get("reading", MIDDLE_EASTERN)))
    pbw = PBWBracketModel(word.rs, word)
    tg = _check_intertwining(report, tab, pbw, theta, depth, _caps(params))
    for key in tg.nodes:
        t = tg.elements[key]
        report.check(theta_inv(theta(t)) == t, check="theta-inverse", node=key)
    for k, entry in enumerate(_fixture_entries(params, "theta")):
        c = KostantPartition.from_json(entry["partition"])
        t = Tableau.from_json(entry["tableau"])
        report.check(theta(t) == c, check="fixture-theta", entry=k, expected=str(c), got=str(theta(t)))
        report.check(theta_inv(c) == t, check="fixture-theta-inverse", entry=k)
    return report


def suite_psi(params: Mapping[str, Any]) -> SuiteReport:
    """Psi intertwines the tableau and bracketing operators and is injective."""
    _, rank, depth = _ball_params(params, "D", 4, 6)
    report = SuiteReport("psi", {"type": "D", "rank": rank, "depth": depth})
    word = word_D(rank)
    tab = TableauModel("D", rank, str(params.get("reading", MIDDLE_EASTERN)))
    pbw = PBWBracketModel(word.rs, word)
    tg = _check_intertwining(report, tab, pbw, psi, depth, _caps(params))
    try:
        lookup = PsiLookup(tg.elements[key] for key in tg.nodes)
        report.stats["lookup_size"] = len(lookup)
    except KPCrystalError as e:
        report.fail(check="psi-lookup", detail=str(e))
    for k, entry in enumerate(_fixture_entries(params, "psi")):
        c = KostantPartition.from_json(entry["partition"])
        t = Tableau.from_json(entry["tableau"])
        report.check(psi(t) == c, check="fixture-psi", entry=k, expected=str(c), got=str(psi(t)))
    return report


def suite_readings(params: Mapping[str, Any]) -> SuiteReport:
    """Middle-Eastern and far-Eastern readings generate the same labelled graph."""
    kind, rank, depth = _ball_params(params, "D", 4, 5)
    report = SuiteReport("readings", {"type": kind, "rank": rank, "depth": depth})
    caps = _caps(params)
    middle = generate_ball(TableauModel(kind, rank, MIDDLE_EASTERN), depth, **caps)
    far = generate_ball(TableauModel(kind, rank, FAR_EASTERN), depth, **caps)
    _note_truncation(report, middle, "middle_ball")
    _note_truncation(report, far, "far_ball")
    report.merge_isomorphism("readings", check_isomorphism(middle, far, {k: k for k in middle.nodes}))
    return report


def suite_semi_adapted_catalog(params: Mapping[str, Any]) -> SuiteReport:
    """
    i^A and i^D are semi-adapted for every i; witnesses respect the 3-term
    ordering; the bracket specs match the displayed block sequences.
    """
    max_rank = _int(params, "max_rank", 5)
    cap = _opt_int(params, "cap")
    report = SuiteReport("semi-adapted-catalog", {"max_rank": max_rank})
    entries = [("A", n, word_A) for n in range(1, max_rank + 1)]
    entries += [("D", n, word_D) for n in range(4, max_rank + 1)]
    for kind, n, make in entries:
        w = make(n)
        display = display_bracket_blocks_A if kind == "A" else display_bracket_blocks_D
        for i in w.rs.nodes:
            report.check(bracket_spec(w.rs, w, i) == display(n, i), check="display-blocks", type=kind, rank=n, i=i)
            cert = certify_semi_adapted(w.rs, w, i, cap)
            report.stats[f"{kind}{n}_i{i}"] = {"status": cert.status, "visited": cert.visited}
            if not report.check(cert.status == "yes", check="semi-adapted", type=kind, rank=n, i=i,
                                status=cert.status):
                continue
            js = three_term_pair_indices(w.rs, w, cert.witness)
            report.check(all(a > b for a, b in zip(js, js[1:])), check="three-term-order",
                         type=kind, rank=n, i=i, pairs=js)
    return report


def suite_properties(params: Mapping[str, Any]) -> SuiteReport:
    """
    Crystal axioms on random data and convexity of random convex orders.
    """
    kind, rank = str(params.get("type", "A")).upper(), _int(params, "rank", 3)
    cases = _int(params, "cases", 50)
    rng = np.random.default_rng(_int(params, "seed", 0))
    rs = build_root_system(kind, rank)
    report = SuiteReport("properties", {"type": kind, "rank": rank, "cases": cases})
    for case in range(cases):
        w = random_reduced_word(rs, rng)
        d = _random_datum(w, rng, _int(params, "max_mult", 2))
        i = int(rng.integers(1, rank + 1))
        fd = f_general(d, i)
        report.check(e_general(fd, i) == d, check="e-after-f", case=case, i=i, vector=list(d.vector))
        drop = tuple(a - b for a, b in zip(weight(d), weight(fd)))
        report.check(drop == rs.simple_root(i), check="weight-drop", case=case, i=i)
        eps = epsilon(d, i)
        ed = e_general(d, i)
        if ed is not None:
            report.check(f_general(ed, i) == d, check="f-after-e", case=case, i=i)
        steps, cur = 0, d
        while cur is not None:
            cur = e_general(cur, i)
            steps += cur is not None
        report.check(steps == eps, check="epsilon", case=case, i=i, epsilon=eps, steps=steps)
        bad = convexity_violations(rs, convex_order(rs, w))
        report.check(not bad, check="convexity", case=case, word=list(w.letters),
                     triples=[[root_label(r) for r in triple] for triple in bad[:3]])
    return report


SUITES: Dict[str, Callable[[Mapping[str, Any]], SuiteReport]] = {
    "transport-roundtrip": suite_transport_roundtrip,
    "bracket-vs-general": suite_bracket_vs_general,
    "theta": suite_theta,
    "psi": suite_psi,
    "readings": suite_readings,
    "semi-adapted-catalog": suite_semi_adapted_catalog,
    "properties": suite_properties,
}


def run_suite(name: str, params: Optional[Mapping[str, Any]] = None) -> SuiteReport:
    """
    Run a named verification suite.

    Raises:
        InvalidInputError: unknown suite name or bad parameters
    """
    if name not in SUITES:
        raise InvalidInputError(f"Unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    params = dict(params or {})
    logger.info("running suite %s with %s", name, params)
    report = SUITES[name](params)
    if params.get("fixture"):
        report.params["fixture"] = Path(str(params["fixture"])).name
    return report

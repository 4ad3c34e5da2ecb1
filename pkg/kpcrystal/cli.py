"""
Command-line interface for kpcrystal.

Usage:
    python -m kpcrystal.cli roots --type D --rank 4
    python -m kpcrystal.cli convex-order --type D --rank 4 --word 123421234234
    python -m kpcrystal.cli apply --model pbw-bracket --type A --rank 3 --ops "f2 f1 f2"
    python -m kpcrystal.cli check-semi-adapted --type D --rank 5 --word auto-D --all
    python -m kpcrystal.cli graph --model tableaux-D --rank 4 --depth 3 --format dot
    python -m kpcrystal.cli verify --suite psi -p rank=4 -p depth=4
    python -m kpcrystal.cli validate datum.json

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

import json
import logging
import re
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from kpcrystal.bracketing import (
    BracketOperators,
    bracket_spec,
    certify_semi_adapted,
    explain_bracket_string,
    resolve_word,
)
from kpcrystal.config import get_settings
from kpcrystal.errors import InvalidInputError
from kpcrystal.harness import (
    MODELS,
    SUITES,
    build_model,
    default_word_text,
    generate_ball,
    graph_to_dot,
    graph_to_json,
    run_suite,
)
from kpcrystal.pbw import KostantPartition, LusztigDatum, e_general, f_general, transport
from kpcrystal.root_system import RootSystem, build_root_system, height, name_root_D, root_label
from kpcrystal.schema import load_artifact, validate_artifact
from kpcrystal.tableaux import MIDDLE_EASTERN, READINGS, Tableau, highest_tableau, tableau_e, tableau_f
from kpcrystal.weyl import available_moves, convex_order


console = Console()
err_console = Console(stderr=True)

OP_PATTERN = re.compile(r"^([ef])(\d+)$")


def _fail(message: str, code: int = 2):
    """Print an error to stderr and exit."""
    err_console.print(f"[bold red]Error:[/bold red] {message}")
    sys.exit(code)


def _root_system(kind: Optional[str], rank: Optional[int]) -> RootSystem:
    if kind is None or rank is None:
        raise InvalidInputError("--type and --rank are required")
    return build_root_system(kind, rank)


def _d_name(rs: RootSystem, root) -> str:
    return str(name_root_D(rs, root)) if rs.kind == "D" else ""


def _echo_json(data: Any):
    """Sorted, indented JSON on stdout."""
    click.echo(json.dumps(data, indent=2, sort_keys=True))


@click.group()
@click.option("--log-level", default=None, help="Logging level (default KPCRYSTAL_LOG_LEVEL or WARNING)")
def cli(log_level: Optional[str]):
    """kpcrystal: the crystal B(infinity) on Kostant partitions and tableaux."""
    try:
        level = (log_level or get_settings().log_level).upper()
    except InvalidInputError as e:
        _fail(str(e))
    if not isinstance(logging.getLevelName(level), int):
        _fail(f"Unknown log level {log_level!r}")
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


@cli.command("roots")
@click.option("--type", "kind", required=True, type=click.Choice(["A", "D", "E"], case_sensitive=False))
@click.option("--rank", required=True, type=int)
@click.option("--json", "as_json", is_flag=True, help="Print JSON instead of a table")
def roots(kind: str, rank: int, as_json: bool):
    """
    List the positive roots (with beta/gamma names in type D).

    Examples:
        kpcrystal roots --type D --rank 4
    """
    try:
        rs = build_root_system(kind, rank)
    except InvalidInputError as e:
        _fail(str(e))

    if as_json:
        _echo_json([
            {"root": list(r), "label": root_label(r), "height": height(r), "name": _d_name(rs, r) or None}
            for r in rs.positive_roots
        ])
        return

    table = Table(title=f"Positive roots of {rs.label} ({rs.num_positive})", header_style="bold magenta")
    table.add_column("#", justify="right", style="cyan")
    table.add_column("Root", style="green")
    table.add_column("Coefficients")
    table.add_column("Height", justify="center")
    if rs.kind == "D":
        table.add_column("Name", style="yellow")
    for k, r in enumerate(rs.positive_roots, start=1):
        row = [str(k), root_label(r), str(list(r)), str(height(r))]
        if rs.kind == "D":
            row.append(_d_name(rs, r))
        table.add_row(*row)
    console.print(table)


@cli.command("convex-order")
@click.option("--type", "kind", required=True, type=click.Choice(["A", "D", "E"], case_sensitive=False))
@click.option("--rank", required=True, type=int)
@click.option("--word", required=True, help="Digits, comma list, auto-A, auto-D or longest")
@click.option("--json", "as_json", is_flag=True, help="Print JSON instead of a table")
def convex_order_cmd(kind: str, rank: int, word: str, as_json: bool):
    """
    Print the convex order of a reduced word for w_0.

    Examples:
        kpcrystal convex-order --type A --rank 3 --word 123121
        kpcrystal convex-order --type D --rank 4 --word auto-D
    """
    try:
        rs = build_root_system(kind, rank)
        w = resolve_word(rs, word)
        order = convex_order(rs, w)
        moves = available_moves(rs, w)
    except InvalidInputError as e:
        _fail(str(e))

    if as_json:
        _echo_json({
            "word": list(w.letters),
            "order": [list(r) for r in order.roots],
            "labels": order.labels(),
            "moves": [m.to_json() for m in moves],
        })
        return

    table = Table(title=f"Convex order of {w}", header_style="bold magenta")
    table.add_column("k", justify="right", style="cyan")
    table.add_column("Letter", justify="center")
    table.add_column("Root", style="green")
    if rs.kind == "D":
        table.add_column("Name", style="yellow")
    for k, (letter, r) in enumerate(zip(w.letters, order.roots), start=1):
        row = [str(k), str(letter), root_label(r)]
        if rs.kind == "D":
            row.append(_d_name(rs, r))
        table.add_row(*row)
    console.print(table)
    console.print(" < ".join(order.labels()))
    console.print(f"[dim]{len(moves)} braid moves available: "
                  + ", ".join(f"{m.kind}@{m.position}" for m in moves) + "[/dim]")


def parse_ops(text: str) -> List[Tuple[str, int]]:
    """
    Parse "f2 f4 e1" (spaces or commas) into [("f", 2), ("f", 4), ("e", 1)].

    Raises:
        InvalidInputError: a token is not e<i> or f<i>
    """
    ops = []
    for token in re.split(r"[\s,]+", text.strip()):
        if not token:
            continue
        match = OP_PATTERN.match(token.lower())
        if not match:
            raise InvalidInputError(f"Cannot parse operator {token!r}; use e<i> or f<i>")
        ops.append((match.group(1), int(match.group(2))))
    return ops


def _load_start(model: str, path: Path, kind: Optional[str], rank: Optional[int], word: Optional[str]):
    """Read an --in artifact and turn it into a start element for the model."""
    data = load_artifact(path)
    version = data["schema_version"]
    # tableau_v0 names its type and rank kind and n
    type_key, rank_key = ("kind", "n") if version == "tableau_v0" else ("type", "rank")
    given_kind, given_rank = data.get(type_key), data.get(rank_key)
    if kind is not None and given_kind is not None and str(given_kind).upper() != kind.upper():
        raise InvalidInputError(f"--type {kind} does not match the input (type {given_kind})")
    if rank is not None and given_rank is not None and given_rank != rank:
        raise InvalidInputError(f"--rank {rank} does not match the input (rank {given_rank})")
    if model.startswith("tableaux"):
        if version != "tableau_v0":
            raise InvalidInputError(f"Model {model} needs a tableau_v0 input, got {version}")
        t = Tableau.from_json(data)
        if f"tableaux-{t.kind}" != model:
            raise InvalidInputError(f"Model {model} cannot read a type {t.kind} tableau")
        return t
    if version == "lusztig_datum_v0":
        d = LusztigDatum.from_json(data)
        if word:
            d = transport(d, resolve_word(d.rs, word))
        return d if model == "pbw-general" else d.to_partition()
    if version == "kostant_partition_v0":
        c = KostantPartition.from_json(data)
        if model == "pbw-bracket":
            return c
        w = resolve_word(c.rs, word or default_word_text(c.rs.kind))
        return LusztigDatum.from_partition(w, c)
    raise InvalidInputError(f"Model {model} cannot start from a {version} artifact")


def _show_element(x: Any, title: str):
    """Print an element (or null) in a panel."""
    if x is None:
        console.print(Panel("[yellow]null[/yellow] (the operator string leaves the crystal)", title=title))
    elif isinstance(x, LusztigDatum):
        console.print(Panel(
            f"word   {x.word}\nvector {list(x.vector)}\nparts  {x.to_partition()}",
            title=title, border_style="green",
        ))
    elif isinstance(x, KostantPartition):
        console.print(Panel(str(x), title=title, border_style="green"))
    else:
        console.print(Panel(str(x), title=title, border_style="green"))


def _explain(c: KostantPartition, ops: BracketOperators, i: int, op: str):
    """Print the bracket string used by one operator step."""
    rows = explain_bracket_string(c, bracket_spec(ops.rs, ops.word, i))
    if not rows:
        console.print(f"[dim]{op}{i}: empty bracket string[/dim]")
        return
    table = Table(title=f"{op}{i} bracket string", show_lines=False, header_style="bold")
    for row in rows:
        table.add_column(row["label"], justify="center")
    cells = []
    for row in rows:
        if (op == "f" and row["f_target"]) or (op == "e" and row["e_target"]):
            cells.append(f"[bold blue]{row['symbol']}[/bold blue]")
        elif row["uncanceled"]:
            cells.append(f"[bold]{row['symbol']}[/bold]")
        else:
            cells.append(f"[dim green]{row['symbol']}[/dim green]")
    table.add_row(*cells)
    console.print(table)


@cli.command("apply")
@click.option("--model", required=True, type=click.Choice(MODELS))
@click.option("--type", "kind", default=None, help="A, D or E (taken from --in when given)")
@click.option("--rank", default=None, type=int)
@click.option("--word", default=None, help="Reduced word for the pbw models (default auto-A / auto-D / longest)")
@click.option("--reading", default=MIDDLE_EASTERN, type=click.Choice(READINGS), help="Tableau reading")
@click.option("--ops", "ops_text", required=True, help='Operators applied left to right, e.g. "f2 f4 e1"')
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False), help="Start element (JSON artifact)")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="Write the result as a JSON artifact")
@click.option("--explain", is_flag=True, help="Show bracket strings (pbw-bracket model)")
def apply_cmd(model: str, kind: Optional[str], rank: Optional[int], word: Optional[str], reading: str,
              ops_text: str, in_path: Optional[str], out_path: Optional[str], explain: bool):
    """
    Apply a string of crystal operators, starting from the highest element
    or from --in.

    Examples:
        kpcrystal apply --model pbw-general --in datum.json --ops f4
        kpcrystal apply --model tableaux-A --rank 3 --ops "f2 f2 f1" --out t.json
    """
    try:
        ops = parse_ops(ops_text)
        if in_path:
            x = _load_start(model, Path(in_path), kind, rank, word)
        elif model.startswith("tableaux"):
            if rank is None:
                raise InvalidInputError("--rank is required")
            x = highest_tableau(model[-1], rank)
        else:
            rs = _root_system(kind, rank)
            w = resolve_word(rs, word or default_word_text(rs.kind))
            x = LusztigDatum.zero(w) if model == "pbw-general" else KostantPartition.zero(rs)

        bracket_ops = None
        if model == "pbw-bracket":
            rs = x.rs
            w = resolve_word(rs, word or default_word_text(rs.kind))
            bracket_ops = BracketOperators(rs, w)
            if bracket_ops.uncertified:
                err_console.print(f"[yellow]⚠[/yellow] word {w} is not certified semi-adapted for "
                                  f"i in {bracket_ops.uncertified}; bracketing results may differ from f_i, e_i")

        for op, i in ops:
            if x is None:
                break
            if model == "pbw-general":
                x = f_general(x, i) if op == "f" else e_general(x, i)
            elif model == "pbw-bracket":
                if explain:
                    _explain(x, bracket_ops, i, op)
                x = bracket_ops.f(x, i) if op == "f" else bracket_ops.e(x, i)
            else:
                x = tableau_f(x, i, reading) if op == "f" else tableau_e(x, i, reading)
    except InvalidInputError as e:
        _fail(str(e))

    _show_element(x, f"{model}: {ops_text}")
    if out_path:
        if x is None:
            console.print("[yellow]⚠[/yellow] result is null; nothing written")
            return
        with open(out_path, "w", encoding="utf-8") as f:
            json.dump(x.to_json(), f, indent=2)
        console.print(f"[green]✓[/green] Saved result to: {out_path}")


@cli.command("check-semi-adapted")
@click.option("--type", "kind", required=True, type=click.Choice(["A", "D", "E"], case_sensitive=False))
@click.option("--rank", required=True, type=int)
@click.option("--word", required=True, help="Digits, comma list, auto-A, auto-D or longest")
@click.option("--i", "node", type=int, default=None, help="Node to check")
@click.option("--all", "all_nodes", is_flag=True, help="Check every node")
@click.option("--cap", type=int, default=None, help="Visited-word cap (default KPCRYSTAL_SEARCH_CAP)")
@click.option("--json", "as_json", is_flag=True, help="Print JSON instead of a table")
def check_semi_adapted(kind: str, rank: int, word: str, node: Optional[int], all_nodes: bool,
                       cap: Optional[int], as_json: bool):
    """
    Decide whether a word is semi-adapted for i, with a witness move list.

    Examples:
        kpcrystal check-semi-adapted --type D --rank 4 --word auto-D --all
    """
    if (node is None) == (not all_nodes):
        _fail("Give exactly one of --i or --all")
    try:
        rs = build_root_system(kind, rank)
        w = resolve_word(rs, word)
        nodes = list(rs.nodes) if all_nodes else [rs.check_node(node)]
        certs = [certify_semi_adapted(rs, w, i, cap) for i in nodes]
    except InvalidInputError as e:
        _fail(str(e))

    if as_json:
        _echo_json({"word": list(w.letters), "results": [c.to_json() for c in certs]})
        return

    table = Table(title=f"Semi-adaptedness of {w}", header_style="bold magenta")
    table.add_column("i", justify="right", style="cyan")
    table.add_column("Verdict", justify="center")
    table.add_column("Visited", justify="right")
    table.add_column("Witness")
    styles = {"yes": "[green]yes[/green]", "no": "[red]no[/red]", "inconclusive": "[yellow]inconclusive[/yellow]"}
    for cert in certs:
        if cert.witness is not None:
            witness = " ".join(f"{m.kind}@{m.position}" for m in cert.witness.moves) or "(already i-initial)"
        elif cert.status == "no":
            witness = "reachable words exhausted"
        else:
            witness = "search cap reached"
        table.add_row(str(cert.i), styles[cert.status], str(cert.visited), witness)
    console.print(table)


@cli.command("graph")
@click.option("--model", required=True, type=click.Choice(MODELS))
@click.option("--type", "kind", default=None, help="A, D or E (pbw models)")
@click.option("--rank", required=True, type=int)
@click.option("--word", default=None, help="Reduced word for the pbw models")
@click.option("--reading", default=MIDDLE_EASTERN, type=click.Choice(READINGS))
@click.option("--depth", required=True, type=int)
@click.option("--format", "fmt", default="json", type=click.Choice(["dot", "json"]))
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="Output file (default stdout)")
@click.option("--max-nodes", type=int, default=None, help="Node cap (default KPCRYSTAL_MAX_NODES)")
def graph_cmd(model: str, kind: Optional[str], rank: int, word: Optional[str], reading: str, depth: int,
              fmt: str, out_path: Optional[str], max_nodes: Optional[int]):
    """
    Generate the ball of radius --depth around the highest element.

    Examples:
        kpcrystal graph --model pbw-bracket --type A --rank 2 --depth 3 --format dot
    """
    params: Dict[str, Any] = {"rank": rank, "word": word, "reading": reading}
    if kind is not None:
        params["type"] = kind
    try:
        m = build_model(model, params)
        g = generate_ball(m, depth, max_nodes=max_nodes)
    except InvalidInputError as e:
        _fail(str(e))

    text = graph_to_dot(g) if fmt == "dot" else json.dumps(graph_to_json(g, m), indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as f:
            f.write(text)
        console.print(f"[green]✓[/green] {len(g.nodes)} nodes, {len(g.edges)} edges written to {out_path}")
    else:
        click.echo(text)
    if g.truncated:
        err_console.print(f"[yellow]⚠[/yellow] truncated: {g.truncation}")


def _parse_params(pairs: Tuple[str, ...]) -> Dict[str, str]:
    """Turn repeated -p key=value options into a dict."""
    params = {}
    for pair in pairs:
        if "=" not in pair:
            raise click.BadParameter(f"expected key=value, got {pair!r}", param_hint="-p")
        key, value = pair.split("=", 1)
        params[key.strip()] = value.strip()
    return params


@cli.command("verify")
@click.option("--suite", required=True, type=click.Choice(list(SUITES)))
@click.option("-p", "--param", "param_pairs", multiple=True, help="Suite parameter key=value (repeatable)")
@click.option("--fixture", type=click.Path(exists=True, dir_okay=False), help="Fixture file (theta / psi suites)")
@click.option("--report", "report_path", type=click.Path(dir_okay=False), help="Write the JSON report here")
def verify(suite: str, param_pairs: Tuple[str, ...], fixture: Optional[str], report_path: Optional[str]):
    """
    Run a verification suite; exit 0 iff it passes.

    Examples:
        kpcrystal verify --suite bracket-vs-general -p type=D -p rank=4 -p depth=4
        kpcrystal verify --suite theta --fixture fixtures/worked_examples.json
    """
    params = _parse_params(param_pairs)
    if fixture:
        params["fixture"] = fixture
    try:
        report = run_suite(suite, params)
    except InvalidInputError as e:
        _fail(str(e))

    data = report.to_json()
    if report_path:
        with open(report_path, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=2, sort_keys=True)

    status = "[bold green]✓ PASS[/bold green]" if report.passed else "[bold red]✗ FAIL[/bold red]"
    console.print(Panel(
        f"{status}\n\n[bold]Checks:[/bold] {report.checks}\n[bold]Violations:[/bold] {report.violation_count}",
        title=f"[bold]{suite}[/bold]",
        border_style="green" if report.passed else "red",
    ))
    for k, v in enumerate(report.violations[:10], start=1):
        console.print(f"  [bold red]{k}.[/bold red] {json.dumps(v, sort_keys=True)}")
    if report_path:
        console.print(f"[green]✓[/green] Saved report to: {report_path}")
    sys.exit(0 if report.passed else 1)


@cli.command("validate")
@click.argument("file", type=click.Path(dir_okay=False))
def validate_cmd(file: str):
    """
    Validate a JSON artifact against the schema its schema_version names.

    Examples:
        kpcrystal validate fixtures/worked_examples.json
    """
    result = validate_artifact(Path(file))
    name = Path(file).name
    if result.is_valid:
        console.print(Panel(
            f"[bold green]✓ Valid![/bold green]\n\nConforms to [cyan]{result.schema_version}[/cyan] schema",
            title=f"[bold]{name}[/bold]",
            border_style="green",
        ))
        sys.exit(0)
    console.print(Panel(
        f"[bold red]✗ Validation Failed[/bold red]\n\nFound {len(result.errors)} error(s):",
        title=f"[bold]{name}[/bold]",
        border_style="red",
    ))
    for k, error in enumerate(result.errors, 1):
        if ": " in error:
            path, message = error.split(": ", 1)
            console.print(f"  [bold red]{k}.[/bold red] [yellow]{path}[/yellow]")
            console.print(f"     {message}")
        else:
            console.print(f"  [bold red]{k}.[/bold red] {error}")
    sys.exit(1)


if __name__ == "__main__":
    cli()

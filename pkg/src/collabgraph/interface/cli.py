"""Command-line front end.

State flows through a snapshot file: ``ingest`` writes it, every other
subcommand loads it. The path comes from ``--state`` or the
``COLLABGRAPH_STATE`` environment variable. Exit codes: 0 success, 1 usage
error, 2 data error (unreadable input, missing state, corrupt snapshot).
"""

from __future__ import annotations

from pathlib import Path

import click

from ..collab_graph import build_coauthor_graph, ego_subgraph
from ..corpus import parse_corpus, snapshot_by_year, validate
from ..errors import CollabGraphError
from ..metrics import collaborative_distance
from ..pathfinder import DEFAULT_MAX_PATHS, DEFAULT_SLACK, path_selection
from .export import EXPORT_FORMATS, export_graph
from .httpd import serve as bind_server
from .service import EngineState
from .snapshot import load_state, save_state

DEFAULT_STATE_PATH = "collabgraph.state"


@click.group()
@click.option(
    "--state",
    "state_path",
    envvar="COLLABGRAPH_STATE",
    default=DEFAULT_STATE_PATH,
    show_default=True,
    help="Snapshot file holding the active corpus.",
)
@click.pass_context
def cli(ctx: click.Context, state_path: str) -> None:
    """Collaboration-graph analytics over a corpus of joint records."""
    ctx.obj = state_path


def _load(state_path: str) -> EngineState:
    if not Path(state_path).exists():
        raise FileNotFoundError(f"no state file at {state_path!r}; run 'ingest' first")
    return load_state(state_path)


@cli.command()
@click.argument("source", type=click.Path(dir_okay=False))
@click.pass_obj
def ingest(state_path: str, source: str) -> None:
    """Parse an interchange file and make it the active corpus."""
    with open(source, "rb") as fh:
        corpus = parse_corpus(fh)
    state = load_state(state_path) if Path(state_path).exists() else EngineState()
    view = state.replace_corpus(corpus)
    save_state(state, state_path)
    click.echo(
        f"ingested {len(corpus.authors)} authors, "
        f"{len(corpus.records)} records (version {view.version})"
    )


@cli.command("validate")
@click.pass_obj
def validate_cmd(state_path: str) -> None:
    """Report structural oddities in the active corpus."""
    report = validate(_load(state_path).view.corpus)
    for key, count in report.counts().items():
        click.echo(f"{key}: {count}")
    click.echo(f"clean: {'yes' if report.is_clean else 'no'}")


@cli.command()
@click.pass_obj
def stats(state_path: str) -> None:
    """Corpus and co-authorship graph size summary."""
    corpus = _load(state_path).view.corpus
    graph = build_coauthor_graph(corpus)
    by_kind: dict[str, int] = {}
    for record in corpus.records.values():
        by_kind[record.kind] = by_kind.get(record.kind, 0) + 1
    click.echo(f"authors: {len(corpus.authors)}")
    click.echo(f"records: {len(corpus.records)}")
    for kind in sorted(by_kind):
        click.echo(f"records[{kind}]: {by_kind[kind]}")
    click.echo(f"edges: {graph.num_edges}")
    click.echo(f"total weight: {graph.total_weight}")


@cli.command()
@click.option("--root", required=True, help="Author id to measure distances from.")
@click.pass_obj
def erdos(state_path: str, root: str) -> None:
    """Collaborative distance of every reachable author from a root."""
    corpus = _load(state_path).view.corpus
    dmap = collaborative_distance(build_coauthor_graph(corpus), root)
    for author_id, hops in dmap.distances.items():
        click.echo(f"{author_id}\t{hops}")


@cli.command("path")
@click.option("--from", "from_id", required=True, help="Start author id.")
@click.option("--to", "to_id", required=True, help="End author id.")
@click.option("--max", "max_paths", default=DEFAULT_MAX_PATHS, show_default=True, type=int)
@click.option("--slack", default=DEFAULT_SLACK, show_default=True, type=int)
@click.pass_obj
def path_cmd(state_path: str, from_id: str, to_id: str, max_paths: int, slack: int) -> None:
    """Shortest collaboration paths between two authors."""
    if from_id == to_id:
        raise click.UsageError("--from and --to must differ")
    corpus = _load(state_path).view.corpus
    result = path_selection(build_coauthor_graph(corpus), from_id, to_id, max_paths, slack)
    if not result.paths:
        click.echo("no connection")
        return
    click.echo(f"distance: {result.distance}")
    for hops in result.paths:
        click.echo(" -> ".join(hops))


@cli.command()
@click.option("--author", required=True, help="Centre author id.")
@click.option("--k", default=30, show_default=True, type=int, help="Co-authors retained.")
@click.pass_obj
def ego(state_path: str, author: str, k: int) -> None:
    """Top-k co-authors of an author by joint record count."""
    if k < 1:
        raise click.UsageError("--k must be positive")
    corpus = _load(state_path).view.corpus
    sub = ego_subgraph(build_coauthor_graph(corpus), author, k)
    for neighbour, count in sub.neighbours:
        click.echo(f"{neighbour}\t{count}")


@cli.command()
@click.option("--format", "fmt", required=True, type=click.Choice(EXPORT_FORMATS))
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.pass_obj
def export(state_path: str, fmt: str, out: str) -> None:
    """Write the co-authorship graph in dot, graphml, or json form."""
    corpus = _load(state_path).view.corpus
    payload = export_graph(build_coauthor_graph(corpus), fmt)
    Path(out).write_bytes(payload)
    click.echo(f"wrote {out}")


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8080, show_default=True, type=int)
@click.option(
    "--corpus",
    "corpus_file",
    type=click.Path(dir_okay=False),
    help="Serve this interchange file instead of the saved state.",
)
@click.option(
    "--static",
    "static_dir",
    type=click.Path(file_okay=False),
    help="Directory of web client files to serve alongside the API.",
)
@click.pass_obj
def serve(state_path: str, host: str, port: int, corpus_file: str | None, static_dir: str | None) -> None:
    """Run the HTTP query service."""
    if corpus_file is not None:
        with open(corpus_file, "rb") as fh:
            state = EngineState()
            state.replace_corpus(parse_corpus(fh))
    elif Path(state_path).exists():
        state = load_state(state_path)
    else:
        state = EngineState()
    server = bind_server(state, host=host, port=port, static_dir=static_dir)
    click.echo(f"serving on http://{host}:{server.server_address[1]}/ (version {state.version})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


@cli.command()
@click.option("--year", required=True, type=int, help="Keep records dated up to this year.")
@click.option(
    "--out",
    type=click.Path(dir_okay=False),
    help="Write the restricted state here instead of replacing the active one.",
)
@click.pass_obj
def snapshot(state_path: str, year: int, out: str | None) -> None:
    """Restrict the active corpus to records up to a year."""
    state = _load(state_path)
    before = len(state.view.corpus.records)
    restricted = snapshot_by_year(state.view.corpus, year)
    state.replace_corpus(restricted)
    target = out or state_path
    save_state(state, target)
    click.echo(f"kept {len(restricted.records)} of {before} records through {year} -> {target}")


def main(argv: list[str] | None = None) -> int:
    """Run the CLI without letting click call sys.exit; map exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.NoArgsIsHelpError as exc:
        click.echo(exc.format_message())
        return 0
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        return 1
    except (CollabGraphError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    return 0


def entry() -> None:
    raise SystemExit(main())

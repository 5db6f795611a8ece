# cli.py
import functools
import json
import logging
import sys
from typing import Dict, List, Optional

import click

from config import settings
from rectcover import __version__
from rectcover.constants import (
    EXIT_INPUT_ERROR,
    EXIT_LIMIT_EXCEEDED,
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
)
from rectcover.exceptions import LimitExceededError, RectCoverError
from rectcover.hypergraph import CoverTarget, verify_support
from rectcover.instances import InstanceFactoryManager
from rectcover.loaders import (
    document_from_polygon,
    load_graph,
    serialize_graph,
    serialize_polygon_document,
    write_text,
)
from rectcover.manager import RectCoverManager
from rectcover.planar import NonPlanar, lr_planarity
from rectcover.properties import check_properties
from rectcover.render import Overlay, SvgRenderer
from rectcover.solver import CoverSolution

logger = logging.getLogger(__name__)

TARGETS = [t.value for t in CoverTarget]


def handle_errors(func):
    """Map library errors to exit codes"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except LimitExceededError as e:
            click.echo(f"limit exceeded: {e}", err=True)
            if e.incumbent is not None:
                click.echo(f"best found: {len(e.incumbent)}", err=True)
            sys.exit(EXIT_LIMIT_EXCEEDED)
        except (RectCoverError, ValueError) as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_INPUT_ERROR)
    return wrapper


def _parse_subset(value: Optional[str]) -> Optional[List[int]]:
    if value is None:
        return None
    try:
        return [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated indices, got {value!r}")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        write_text(out, text)
    else:
        click.echo(text, nl=False)


def _solution_dict(solution: CoverSolution) -> Dict:
    return {"size": len(solution), "k": solution.k, "rects": [r.to_list() for r in solution.rects()]}


@click.group()
@click.version_option(__version__, prog_name="rectcover")
@click.option("--verbose", "-v", is_flag=True, help="Log algorithm traces to stderr.")
def cli(verbose: bool):
    """Rectangle families, planar supports and covers of orthogonal polygons."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else settings.LOG_LEVEL,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


@cli.command("enumerate")
@click.argument("polygon_file", type=click.Path(exists=True, dir_okay=False))
@handle_errors
def enumerate_cmd(polygon_file: str):
    """List the maximal rectangles of a polygon in canonical order."""
    manager = RectCoverManager(path=polygon_file)
    fam = manager.maximal_family
    for i, r in enumerate(fam):
        click.echo(f"{i}: {r}")
    click.echo(f"count: {len(fam)}")


@cli.command()
@click.argument("polygon_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--subset", default=None, help="Comma-separated indices into the maximal family.")
@click.option("--verify", "do_verify", is_flag=True, help="Fail unless the graph is a boundary support.")
@click.option("--check-planar", is_flag=True, help="Fail unless the graph is planar.")
@click.option("--format", "fmt", type=click.Choice(["json", "graphml"]), default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the graph here instead of stdout.")
@handle_errors
def support(polygon_file: str, subset: Optional[str], do_verify: bool, check_planar: bool, fmt: str,
            out: Optional[str]):
    """Build a planar support graph for a family of maximal rectangles."""
    manager = RectCoverManager(path=polygon_file)
    fam = manager.select(_parse_subset(subset))
    graph = manager.support(_parse_subset(subset))
    for note in graph.diagnostics:
        logger.warning("%s", note)
    _emit(serialize_graph(graph, fmt, fam), out)

    failed = False
    if do_verify:
        violations = verify_support(manager.polygon, fam, graph)
        for v in violations:
            click.echo(f"unsupported witness {v.point}: components {list(v.components)}", err=True)
        failed |= bool(violations)
    if check_planar:
        result = lr_planarity(graph)
        if isinstance(result, NonPlanar):
            click.echo(f"graph is not planar around vertices {sorted(result.reason)}", err=True)
            failed = True
    sys.exit(EXIT_VERIFICATION_FAILED if failed else EXIT_OK)


@cli.command()
@click.argument("polygon_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--target", type=click.Choice(TARGETS), default=CoverTarget.BOUNDARY.value, show_default=True)
@click.option("--k", "k", type=int, default=1, show_default=True, help="Locality of the swap search.")
@click.option("--exact", is_flag=True, help="Also solve exactly by branch and bound.")
@click.option("--limit", type=int, default=None, help="Node limit of the exact search.")
@click.option("--all-targets", is_flag=True, help="Report every target.")
@handle_errors
def cover(polygon_file: str, target: str, k: int, exact: bool, limit: Optional[int], all_targets: bool):
    """Cover the boundary, corners or interior with maximal rectangles."""
    if not 1 <= k <= settings.MAX_LOCAL_SEARCH_K:
        raise click.BadParameter(f"must be between 1 and {settings.MAX_LOCAL_SEARCH_K}", param_hint="--k")
    manager = RectCoverManager(path=polygon_file)
    targets = TARGETS if all_targets else [target]
    report: Dict = {}
    for name in targets:
        entry: Dict = {"local": _solution_dict(manager.local_cover(name, k))}
        if exact:
            optimum = manager.exact_cover(name, limit)
            entry["exact"] = _solution_dict(optimum)
            entry["ratio"] = entry["local"]["size"] / max(len(optimum), 1)
        report[name] = entry
    if exact and all_targets:
        sizes = [report[t]["exact"]["size"] for t in (CoverTarget.CORNER.value, CoverTarget.BOUNDARY.value,
                                                      CoverTarget.INTERIOR.value)]
        report["ordered"] = sizes[0] <= sizes[1] <= sizes[2]
    click.echo(json.dumps(report, indent=2))


@cli.command()
@click.option("--family", "family", type=click.Choice(InstanceFactoryManager.get_supported_families()), required=True)
@click.option("--r", "r", type=int, default=4, show_default=True)
@click.option("--s", "s", type=int, default=3, show_default=True)
@click.option("--kb", type=int, default=2, show_default=True)
@click.option("--n-vertices", type=int, default=8, show_default=True)
@click.option("--grid", type=int, default=8, show_default=True)
@click.option("--seed", type=int, default=None, help="Defaults to RECTCOVER_SEED.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@handle_errors
def gen(family: str, r: int, s: int, kb: int, n_vertices: int, grid: int, seed: Optional[int], out: Optional[str]):
    """Generate a polygon file from a named instance family."""
    factory = InstanceFactoryManager().get_instance_factory(family)
    bundle = factory.create_instance(r=r, s=s, kb=kb, n_vertices=n_vertices, grid=grid, seed=seed)
    doc = document_from_polygon(bundle.polygon, bundle.family, bundle.expected)
    _emit(serialize_polygon_document(doc), out)


@cli.command()
@click.argument("polygon_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--overlay", "overlays", type=click.Choice(["cover", "support", "witnesses"]), multiple=True)
@click.option("--target", type=click.Choice(TARGETS), default=CoverTarget.BOUNDARY.value, show_default=True)
@click.option("--k", "k", type=int, default=1, show_default=True)
@click.option("--exact", is_flag=True, help="Draw the exact cover next to the local one.")
@click.option("--limit", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@handle_errors
def render(polygon_file: str, overlays, target: str, k: int, exact: bool, limit: Optional[int], out: str):
    """Draw the polygon with the chosen overlays, one panel each, as SVG."""
    manager = RectCoverManager(path=polygon_file)
    panels: List[Overlay] = []
    for overlay in overlays:
        if overlay == "cover":
            local = manager.local_cover(target, k)
            panels.append(Overlay(title=f"local k={k}: {len(local)}", rects=local.rects()))
            if exact:
                best = manager.exact_cover(target, limit)
                panels.append(Overlay(title=f"exact: {len(best)}", rects=best.rects()))
        elif overlay == "support":
            fam = manager.get_family()
            panels.append(Overlay(title=f"support: {len(fam)}", rects=list(fam), graph=manager.support()))
        else:
            panels.append(Overlay(title=f"{target} witnesses",
                                  witnesses=list(manager.witnesses(target).points)))
    write_text(out, SvgRenderer().render_panels(manager.polygon, panels))


@cli.command()
@click.argument("polygon_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--subset", default=None, help="Comma-separated indices into the maximal family the graph was built for.")
@click.option("--target", type=click.Choice(TARGETS), default=CoverTarget.BOUNDARY.value, show_default=True)
@click.option("--properties", "with_properties", is_flag=True, help="Also run the structural property checks.")
@click.option("--dump", type=click.Path(dir_okay=False), default=None,
              help="Write a polygon file holding the rectangles of every violation.")
@handle_errors
def verify(polygon_file: str, graph_file: str, subset: Optional[str], target: str, with_properties: bool,
           dump: Optional[str]):
    """Check that a graph is a planar support of the polygon's family."""
    manager = RectCoverManager(path=polygon_file)
    fam = manager.select(_parse_subset(subset))
    graph = load_graph(graph_file)
    failed = False

    for v in verify_support(manager.polygon, fam, graph, target):
        click.echo(f"unsupported witness {v.point}: components {list(v.components)}", err=True)
        failed = True
    result = lr_planarity(graph)
    if isinstance(result, NonPlanar):
        click.echo(f"graph is not planar around vertices {sorted(result.reason)}", err=True)
        failed = True

    involved = []
    if with_properties:
        for name, violations in check_properties(manager.polygon, fam).items():
            for v in violations:
                click.echo(f"{name}: {v.message}", err=True)
                involved.extend(r for r in v.rects if r not in involved)
        failed |= bool(involved)
    if dump and involved:
        write_text(dump, serialize_polygon_document(document_from_polygon(manager.polygon, involved)))

    click.echo("FAIL" if failed else "OK")
    sys.exit(EXIT_VERIFICATION_FAILED if failed else EXIT_OK)


if __name__ == "__main__":
    cli()

"""Command-line front end: graph, hom, present, flip, check.

Results go to stdout in canonical order; timings and warnings go to stderr so
stdout is byte-deterministic for fixed options.  Exit codes: 0 success, 1 a
check failed, 2 bad input.
"""

from __future__ import annotations

import json
import os
import sys
from fractions import Fraction

import click

from . import cofukaya_presentations as cp
from . import fukaya_sheaf as fs
from . import ribbon_surfaces as rs
from .exact_linalg import GF, QQ, Field
from .suites import RunConfig, run_suite, suite_names


class InputError(Exception):
    pass


def _emit_error(kind: str, message: str) -> None:
    click.echo(json.dumps({"error": kind, "message": message}), err=True)


def _field(name: str, p: int | None) -> Field:
    if name == "Q":
        if p is not None:
            raise InputError("--p only applies to --field Fp")
        return QQ
    if p is None:
        raise InputError("--field Fp needs --p")
    try:
        return GF(p)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_graph(spec: str) -> rs.RibbonGraph:
    """A built-in name or a path to a graph JSON file."""
    try:
        if not os.path.exists(spec):
            return rs.builtin_graph(spec)
        return rs.RibbonGraph.from_json(_load_json(spec))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed graph: {exc}") from exc
    except rs.GraphError as exc:
        raise InputError(str(exc)) from exc


def _fmt_value(v):
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt_value(x) for x in v)
    return str(v)


def _print_table(fmt: str, names: list, table: list, extra: dict | None = None) -> None:
    if fmt == "json":
        out = dict(extra or {})
        out["objects"] = names
        out["table"] = [[list(c) for c in row] for row in table]
        click.echo(json.dumps(out, indent=2))
        return
    click.echo("\t".join(["source\\target"] + names))
    for name, row in zip(names, table):
        click.echo("\t".join([name] + [f"{a},{b}" for a, b in row]))


@click.group()
@click.option("--field", "field_name", type=click.Choice(["Q", "Fp"]), default="Q", show_default=True,
              help="Ground field.")
@click.option("--p", type=int, default=None, help="Characteristic for --field Fp.")
@click.option("--trunc", type=int, default=4, show_default=True, help="Truncation start W.")
@click.option("--pathlen", type=int, default=6, show_default=True, help="Path-length bound L.")
@click.option("--format", "fmt", type=click.Choice(["tsv", "json"]), default="tsv", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for randomized checks.")
@click.pass_context
def cli(ctx, field_name, p, trunc, pathlen, fmt, seed):
    """Combinatorial Fukaya categories of surfaces via matrix factorizations."""
    try:
        cfg = RunConfig(_field(field_name, p), trunc, pathlen, seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    ctx.obj = {"cfg": cfg, "fmt": fmt}


@cli.command()
@click.argument("graph")
@click.pass_context
def graph(ctx, graph):
    """Surface report for a graph file or built-in name."""
    G = _load_graph(graph)
    S = rs.surface_of(G)
    walks = rs.boundary_walks(G)
    rep = {"vertices": len(G.vertices), "edges": len(G.edges), "boundary_walks": [list(w) for w in walks],
           "genus": S.genus, "boundary_components": list(S.boundary_components),
           "interior_punctures": S.interior_punctures, "stable": S.is_stable(), "surface": S.describe()}
    if not S.is_stable():
        click.echo(json.dumps({"warning": "unstable surface", "surface": S.describe()}), err=True)
    if ctx.obj["fmt"] == "json":
        click.echo(json.dumps(rep, indent=2))
    else:
        for k, v in rep.items():
            if k == "boundary_walks":
                v = " ".join(_fmt_value(w) for w in v)
            click.echo(f"{k}\t{_fmt_value(v)}")


def _load_curves(path: str, field: Field) -> list[fs.CurveSpec]:
    data = _load_json(path)
    if isinstance(data, dict):
        declared = data.get("field")
        if declared is not None and declared != field.name:
            raise InputError(f"curves were written for field {declared}, running over {field.name}")
        data = data.get("curves", [])
    if not isinstance(data, list):
        raise InputError("curves file must be a list or an object with a 'curves' list")
    try:
        return [fs.CurveSpec.from_json(c, field) for c in data]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed curve: {exc}") from exc


@cli.command()
@click.option("--graph", "graph_spec", required=True, help="Graph file or built-in name.")
@click.option("--curves", "curves_path", required=True, type=click.Path(), help="Curve JSON file.")
@click.pass_context
def hom(ctx, graph_spec, curves_path):
    """Pairwise (dim H0, dim H1) table of the given curves."""
    cfg = ctx.obj["cfg"]
    G = _load_graph(graph_spec)
    curves = _load_curves(curves_path, cfg.field)
    try:
        objs = [fs.compile_curve(G, c, cfg.field) for c in curves]
    except fs.ItineraryError as exc:
        raise InputError(str(exc)) from exc
    names = [c.name or f"c{i}" for i, c in enumerate(curves)]
    _print_table(ctx.obj["fmt"], names, fs.hom_table(objs, True, cfg.trunc))


@cli.command()
@click.option("--example", default=None,
              help="affine_line, projective_line, torus1, sphere3 or polygon(n).")
@click.option("--input", "input_path", default=None, type=click.Path(), help="Presentation JSON to simplify.")
@click.pass_context
def present(ctx, example, input_path):
    """Emit a simplified presentation with its gluing choices."""
    cfg = ctx.obj["cfg"]
    if (example is None) == (input_path is None):
        raise InputError("give exactly one of --example and --input")
    if example is not None:
        try:
            r = cp.recipe(example, cfg.field)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        Q, choices = r.presentation, r.choices
    else:
        try:
            Q0 = cp.DgQuiver.from_json(_load_json(input_path), cfg.field)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed presentation: {exc}") from exc
        choices = []
        Q = cp.simplify(Q0, log=choices)
    d2 = cp.check_d_squared(Q, cfg.pathlen)
    out = {"presentation": Q.to_json(), "summary": Q.summary(), "choices": choices,
           "d_squared_zero": d2, "path_length_bound": cfg.pathlen}
    if example == "sphere3":
        loops = cp.sphere3_loops(Q)
        out["x_B y_B exact"] = cp.is_exact(Q, loops["x_B y_B"], cfg.pathlen)
        out["y_B x_B exact"] = cp.is_exact(Q, loops["y_B x_B"], cfg.pathlen)
    if ctx.obj["fmt"] == "json":
        click.echo(json.dumps(out, indent=2))
    else:
        for k, v in Q.summary().items():
            click.echo(f"{k}\t{v}")
        for g in Q.to_json()["generators"]:
            click.echo(f"generator\t{g['name']}\t{g['src']}->{g['tgt']}\tparity {g['parity']}")
        for k, v in Q.to_json()["differentials"].items():
            terms = " + ".join(f"{_fmt_value(c)}*{'.'.join(p)}" for c, p in v)
            click.echo(f"d({k})\t{terms}")
        for c in choices:
            click.echo(f"choice\t{c}")
        for k in ("d_squared_zero", "x_B y_B exact", "y_B x_B exact"):
            if k in out:
                click.echo(f"{k}\t{out[k]} (L={cfg.pathlen})")
    if not d2:
        ctx.exit(1)


@cli.command()
@click.option("--graph", "graph_spec", required=True, help="Graph file or built-in name.")
@click.option("--edge", "half_edge", required=True, type=int, help="A half-edge of the edge to flip.")
@click.pass_context
def flip(ctx, graph_spec, half_edge):
    """Compare Hom tables of tail-to-tail arcs before and after a flip."""
    cfg = ctx.obj["cfg"]
    G = _load_graph(graph_spec)
    if not 0 <= half_edge < len(G.alpha) or not rs.is_flippable(G, half_edge):
        raise InputError(f"half-edge {half_edge} is not on a flippable edge")
    tails = sorted(v for v in range(len(G.vertices)) if G.valency(v) == 1)
    if len(tails) < 2:
        raise InputError("flip comparison needs at least two tails")
    pairs = [(a, b) for i, a in enumerate(tails) for b in tails[i + 1:]]
    G2 = rs.flip_edge(G, half_edge)
    try:
        matched = [(fs.arc_between_tails(G, a, b), fs.arc_between_tails(G2, a, b)) for a, b in pairs]
    except fs.ItineraryError as exc:
        raise InputError(str(exc)) from exc
    rep = fs.flip_compare(G, half_edge, matched, cfg.field)
    names = [f"arc{a}-{b}" for a, b in pairs]
    if ctx.obj["fmt"] == "json":
        click.echo(json.dumps({"objects": names, "before": [[list(c) for c in r] for r in rep.table_before],
                               "after": [[list(c) for c in r] for r in rep.table_after],
                               "equal": rep.equal}, indent=2))
    else:
        click.echo("before")
        _print_table("tsv", names, rep.table_before)
        click.echo("after")
        _print_table("tsv", names, rep.table_after)
        click.echo(f"equal\t{rep.equal}")
    if not rep.equal:
        ctx.exit(1)


@cli.command()
@click.argument("suite")
@click.pass_context
def check(ctx, suite):
    """Run a verification suite (or 'all')."""
    if suite not in suite_names():
        raise InputError(f"unknown suite {suite!r}; choose from {', '.join(suite_names())}")
    results = run_suite(suite, ctx.obj["cfg"])
    fmt = ctx.obj["fmt"]
    for r in results:
        click.echo(f"time\t{r.suite}\t{r.name}\t{r.seconds:.2f}s", err=True)
    if fmt == "json":
        click.echo(json.dumps([{"suite": r.suite, "check": r.name, "passed": r.passed, "detail": r.detail}
                               for r in results], indent=2))
    else:
        for r in results:
            click.echo(f"{'PASS' if r.passed else 'FAIL'}\t{r.suite}\t{r.name}\t{r.detail}")
    if not all(r.passed for r in results):
        ctx.exit(1)


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="topfukaya", standalone_mode=False)
    except InputError as exc:
        _emit_error("input", str(exc))
        return 2
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        _emit_error("usage", exc.format_message())
        return 2
    except click.exceptions.Abort:
        return 2
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())

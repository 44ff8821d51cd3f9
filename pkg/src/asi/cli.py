"""Command-line front end: ``asi generate | embed | asi | plot``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
from pathlib import Path

from . import io as fio
from .embed import EmbeddingSpec, embed, largest_component
from .geometry import AngularCoords, InputError, NumericalError
from .npso import NpsoParams, generate
from .significance import AsiConfig, evaluate

log = logging.getLogger("asi")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3

EMBED_METHODS = ("ra1-le", "ra2-le", "ra1-mca1", "ra1-mca2", "ra2-mca1", "ra2-mca2")


class UsageError(Exception):
    pass


@contextlib.contextmanager
def _usage():
    """Report invalid flag values as usage errors rather than data errors."""
    try:
        yield
    except InputError as exc:
        raise UsageError(str(exc)) from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def cmd_generate(args) -> int:
    with _usage():
        params = NpsoParams(
            args.nodes, args.m, args.temperature, args.gamma, args.communities, args.seed
        )
    net = generate(params)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    nodes = [str(k) for k in range(net.N)]
    fio.write_edges(out / "edges.tsv", net.edges)
    fio.write_coords(out / "coords.csv", fio.CoordsTable(nodes, net.theta, None, net.r))
    fio.write_labels(out / "labels.csv", nodes, [str(k + 1) for k in net.labels])
    log.info("wrote %d nodes, %d edges to %s", net.N, len(net.edges), out)
    return EXIT_OK


def cmd_embed(args) -> int:
    with _usage():
        spec = EmbeddingSpec.parse(args.method, args.dims, args.gamma)
    el = fio.read_edges(args.edges)
    graph, keep = largest_component(el.graph)
    dropped = el.graph.n - graph.n
    if dropped:
        log.warning("kept the largest connected component; dropped %d of %d nodes",
                    dropped, el.graph.n)
    hc = embed(graph, spec)
    nodes = [str(x) for x in el.node_ids[keep]]
    fio.write_coords(args.out, fio.CoordsTable(nodes, hc.angles.theta, hc.angles.phi, hc.r))
    return EXIT_OK


def _join(coords: fio.CoordsTable, labels: dict[str, str]) -> list[str]:
    cset, lset = set(coords.nodes), set(labels)
    if cset != lset:
        offenders = sorted(cset ^ lset)
        shown = ", ".join(
            f"{nd} ({'no label' if nd in cset else 'no coordinates'})" for nd in offenders[:10]
        )
        raise fio.DataError(f"node sets differ in {len(offenders)} nodes: {shown}")
    return [labels[nd] for nd in coords.nodes]


def _select_dims(coords: fio.CoordsTable, dims: int | None) -> fio.CoordsTable:
    if dims is None or dims == coords.dims:
        return coords
    if dims == 2:
        return fio.CoordsTable(coords.nodes, coords.theta, None, coords.r)
    raise fio.DataError("--dims 3 requested but the coordinates file has no phi column")


def cmd_asi(args) -> int:
    with _usage():
        AsiConfig(R=args.reshuffles, seed=args.seed, worst_case_mode=args.worst_case,
                  dims=args.dims, workers=args.workers)
    coords = _select_dims(fio.read_coords(args.coords), args.dims)
    labels = _join(coords, fio.read_labels(args.labels))
    config = AsiConfig(
        R=args.reshuffles, seed=args.seed, worst_case_mode=args.worst_case,
        dims=coords.dims, workers=args.workers,
    )
    report = evaluate(AngularCoords(coords.theta, coords.phi), labels, config)
    data = fio.report_to_dict(report, full_null=args.full_null)
    if args.out:
        fio.write_report(args.out, data)
    else:
        sys.stdout.write(json.dumps(data, indent=2) + "\n")
    log.info("ASI = %.4f, p = %.4g", report.asi, report.p_value)
    return EXIT_OK


def cmd_plot(args) -> int:
    coords = _select_dims(fio.read_coords(args.coords), args.dims)
    labels = _join(coords, fio.read_labels(args.labels))
    from .plot import render_svg

    svg = render_svg(coords, labels, args.title)
    Path(args.out).write_text(svg, encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="asi", description="Angular separation index toolkit: generate, embed, score, plot.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="grow an nPSO network with planted communities")
    g.add_argument("--nodes", type=int, default=100)
    g.add_argument("--m", type=int, default=3)
    g.add_argument("--temperature", type=float, default=0.1)
    g.add_argument("--gamma", type=float, default=3.0)
    g.add_argument("--communities", type=int, default=5)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True, help="output directory")
    g.set_defaults(func=cmd_generate)

    e = sub.add_parser("embed", help="embed an edge list in the hyperbolic disk or sphere")
    e.add_argument("--edges", required=True)
    e.add_argument("--method", choices=EMBED_METHODS, default="ra1-le")
    e.add_argument("--dims", type=int, choices=(2, 3), default=2)
    e.add_argument("--gamma", type=float, default=3.0)
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_embed)

    a = sub.add_parser("asi", help="angular separation index with permutation p-value")
    a.add_argument("--coords", required=True)
    a.add_argument("--labels", required=True)
    a.add_argument("--dims", type=int, choices=(2, 3))
    a.add_argument("--reshuffles", type=int, default=1000)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--worst-case", choices=("empirical", "theoretical"), default="empirical")
    a.add_argument("--workers", type=int, default=None,
                   help="parallel reshuffle workers (default: $ASI_THREADS or 1)")
    a.add_argument("--full-null", action="store_true", help="include every null ASI")
    a.add_argument("--out", help="report path (default: stdout)")
    a.set_defaults(func=cmd_asi)

    pl = sub.add_parser("plot", help="draw an SVG of the labeled embedding")
    pl.add_argument("--coords", required=True)
    pl.add_argument("--labels", required=True)
    pl.add_argument("--dims", type=int, choices=(2, 3))
    pl.add_argument("--title")
    pl.add_argument("--out", required=True)
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help or a usage error from argparse
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"asi: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except UsageError as exc:
        print(f"asi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, OSError) as exc:
        print(f"asi: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())

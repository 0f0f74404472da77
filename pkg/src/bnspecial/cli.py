"""Command-line interface.

Exit codes: 0 success, 1 a mathematical claim came out false (the output
carries the counterexample), 2 usage, input, or resource problems.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import catalog
from .brill_noether import certify_special, girth_genus_scan, ordered, random_metric, rho
from .divisors import (
    DEFAULT_PROBE_CAP,
    Divisor,
    certify_rank_determining,
    rank_discrete,
    rank_metric,
    reduce,
    subdivided,
)
from .errors import FalsificationError, ResourceLimitError
from .graph import (
    DEFAULT_CYCLE_CAP,
    INFINITE,
    MetricMultigraph,
    bipartition,
    edge_connectivity,
    enumerate_cycles,
    genus,
    girth,
)
from .graphio import GraphFormatError, divisor_from_json, dumps, graph_to_json, read_graph, to_dot
from .oracle import rank_bruteforce

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    seed: int = 0
    trials: int = 1
    numerator_bound: int = 10
    denominator_bound: int = 6
    cycle_cap: int = DEFAULT_CYCLE_CAP
    probe_cap: int = DEFAULT_PROBE_CAP
    verify: bool = False


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _unsigned(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def info_report(m: MetricMultigraph, cycle_cap: int = DEFAULT_CYCLE_CAP) -> dict:
    g = m.graph
    bip = bipartition(g)
    gi = girth(g)
    return {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "genus": genus(g),
        "girth": "infinite" if gi == INFINITE else gi,
        "bipartite": None if bip is None else {
            "black": ordered(g, bip.black),
            "white": ordered(g, bip.white),
        },
        "edge_connectivity": edge_connectivity(g) if len(g.vertices) > 1 else None,
        "trivalent": g.is_trivalent(),
        "loops": sum(1 for e in g.edges if e.is_loop),
        "cycles": len(enumerate_cycles(g, cycle_cap)),
    }


def cmd_info(args) -> int:
    m = read_graph(args.graph)
    report = info_report(m, args.cycle_cap)
    if args.format == "json":
        _emit(dumps(report), args.output)
    else:
        bip = report["bipartite"]
        lines = [
            f"vertices: {report['vertices']}",
            f"edges: {report['edges']}",
            f"genus: {report['genus']}",
            f"girth: {report['girth']}",
            "bipartite: " + ("no" if bip is None else f"{len(bip['black'])}+{len(bip['white'])}"),
            f"edge connectivity: {report['edge_connectivity']}",
            f"trivalent: {'yes' if report['trivalent'] else 'no'}",
            f"loops: {report['loops']}",
            f"cycles: {report['cycles']}",
        ]
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _auto_probe_set(m: MetricMultigraph):
    bip = bipartition(m.graph)
    if bip is None:
        return None
    for side in (bip.black, bip.white):
        if certify_rank_determining(m, side):
            return ordered(m.graph, side)
    return None


def _load_divisor(path, m: MetricMultigraph) -> Divisor:
    sub, _ = subdivided(m)
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise GraphFormatError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return divisor_from_json(sub, data)
    except GraphFormatError as exc:
        raise GraphFormatError(f"{path}: {exc}") from None


def cmd_rank(args) -> int:
    m = read_graph(args.graph)
    sub, _ = subdivided(m)
    d = _load_divisor(args.divisor, m)
    on_original = all(v in m.graph.index for v in d.support())
    if args.method == "oracle":
        r = rank_bruteforce(sub, d)
        _emit(dumps({"rank": r, "method": "oracle", "divisor": d.as_dict()}), args.output)
        return EXIT_OK
    if on_original:
        base = Divisor(m.graph, d.as_dict())
        probes = _auto_probe_set(m) if args.probe_set == "auto" else None
        result = rank_metric(m, base, probe_set=probes, probe_cap=args.probe_cap)
    else:
        result = rank_discrete(sub, d, probe_cap=args.probe_cap)
    payload = result.to_json()
    if args.verify:
        if not result.verify():
            _emit(dumps({"falsified": "rank witnesses failed to re-verify", "result": payload}), args.output)
            return EXIT_FALSIFIED
        try:
            oracle_rank = rank_bruteforce(sub, d)
        except ResourceLimitError:
            oracle_rank = None
        payload["oracle_rank"] = oracle_rank
        if oracle_rank is not None and oracle_rank != result.rank:
            _emit(dumps({"falsified": "oracle disagrees", "result": payload}), args.output)
            return EXIT_FALSIFIED
    _emit(dumps(payload), args.output)
    return EXIT_OK


def cmd_reduce(args) -> int:
    m = read_graph(args.graph)
    sub, _ = subdivided(m)
    d = _load_divisor(args.divisor, m)
    if args.base not in sub.index:
        raise GraphFormatError(f"--base: unknown vertex {args.base!r}")
    _emit(dumps(reduce(sub, d, args.base).as_dict()), args.output)
    return EXIT_OK


def cmd_rho(args) -> int:
    print(rho(args.g, args.r, args.d))
    return EXIT_OK


def _certificate_text(cert) -> str:
    rr = cert.rank_result
    lines = [
        f"trial {cert.provenance.get('trial')}: lengths {cert.provenance.get('lengths')}",
        f"  metric: " + ", ".join(f"{k}={v}" for k, v in cert.metric.lengths.items()),
        f"  subdivided graph: {len(rr.graph.vertices)} vertices, {len(rr.graph.edges)} edges",
        f"  divisor D_B = {' + '.join(cert.divisor.support())} (degree {cert.degree})",
        f"  genus {cert.genus}, girth {cert.girth}",
        f"  rank {rr.rank}: {len(rr.lower_witnesses)} degree-{rr.rank} probes on "
        f"{{{', '.join(rr.probe_set or ())}}} have effective representatives",
        f"  failed probe {rr.upper_witness.probe.as_dict()}: reduced at {rr.upper_witness.base_vertex} "
        f"to coefficient {rr.upper_witness.reduced_form[rr.upper_witness.base_vertex]}",
        f"  pair witnesses: {sum(w.ok for w in cert.reduced_witnesses)}/{len(cert.reduced_witnesses)} "
        "with D_B - v1 - v2 v1-reduced",
        f"  rho(8, {rr.rank}, {cert.degree}) = {cert.rho_value}: "
        + ("Brill-Noether special" if cert.rho_value < 0 else "not special"),
    ]
    return "\n".join(lines) + "\n"


def cmd_certify_heawood(args) -> int:
    config = RunConfig(
        seed=args.seed,
        trials=args.trials if args.lengths == "random" else 1,
        numerator_bound=args.numerator_bound,
        denominator_bound=args.denominator_bound,
        cycle_cap=args.cycle_cap,
        probe_cap=args.probe_cap,
        verify=args.verify,
    )
    g = catalog.heawood()
    metrics = []
    if args.lengths == "unit":
        metrics.append(MetricMultigraph.unit(g))
    elif args.lengths == "file":
        if not args.metric:
            raise GraphFormatError("--lengths file needs --metric FILE")
        loaded = read_graph(args.metric)
        if loaded.graph != g:
            raise GraphFormatError(f"{args.metric}: graph is not the catalog Heawood graph")
        metrics.append(loaded)
    else:
        rng = random.Random(config.seed)
        for _ in range(config.trials):
            metrics.append(random_metric(g, rng, config.numerator_bound, config.denominator_bound))
    certs = []
    failure = None
    for i, m in enumerate(metrics):
        provenance = {"config": asdict(config), "lengths": args.lengths, "trial": i}
        try:
            cert = certify_special(m, provenance, cycle_cap=config.cycle_cap, probe_cap=config.probe_cap)
        except FalsificationError as exc:
            failure = {"trial": i, "message": str(exc), "counterexample": exc.counterexample,
                       "metric": graph_to_json(g, m)}
            _progress(f"trial {i}: FALSIFIED: {exc}")
            break
        if config.verify and not cert.rank_result.verify():
            failure = {"trial": i, "message": "rank witnesses failed to re-verify",
                       "metric": graph_to_json(g, m)}
            break
        certs.append(cert)
        _progress(f"trial {i + 1}/{len(metrics)}: rank {cert.rank_result.rank}, rho {cert.rho_value}")
    if args.format == "text":
        text = "".join(_certificate_text(c) for c in certs)
        text += f"{len(certs)}/{len(metrics)} metrics certified Brill-Noether special\n"
        if failure:
            text += f"COUNTEREXAMPLE at trial {failure['trial']}: {failure['message']}\n"
        _emit(text, args.output)
    else:
        payload = {
            "config": asdict(config),
            "all_certified": failure is None,
            "certificates": [c.to_json() for c in certs],
        }
        if failure:
            payload["counterexample"] = failure
        _emit(dumps(payload), args.output)
    return EXIT_FALSIFIED if failure else EXIT_OK


def cmd_scan_girth(args) -> int:
    pairs = girth_genus_scan(args.max_girth)
    _emit(dumps([asdict(p) for p in pairs]), args.output)
    return EXIT_OK


def cmd_catalog_build(args) -> int:
    g = catalog.by_name(args.name)
    _emit(dumps(graph_to_json(g)), args.output)
    return EXIT_OK


def cmd_export_dot(args) -> int:
    _emit(to_dot(read_graph(args.graph)), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bnspecial", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def out(p):
        p.add_argument("-o", "--output", help="write to FILE instead of standard output")

    p = sub.add_parser("info", help="genus, girth, bipartition, connectivity of a graph file")
    p.add_argument("graph")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--cycle-cap", type=_positive, default=DEFAULT_CYCLE_CAP)
    out(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("rank", help="Baker-Norine rank of a divisor")
    p.add_argument("graph")
    p.add_argument("--divisor", required=True)
    p.add_argument("--method", choices=("subdivision", "oracle"), default="subdivision")
    p.add_argument("--probe-set", choices=("auto", "off"), default="auto")
    p.add_argument("--probe-cap", type=_positive, default=DEFAULT_PROBE_CAP)
    p.add_argument("--verify", action="store_true", help="re-check witnesses and compare with the oracle")
    out(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("reduce", help="reduced representative of a divisor")
    p.add_argument("graph")
    p.add_argument("--divisor", required=True)
    p.add_argument("--base", required=True)
    out(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("rho", help="Brill-Noether number g - (r+1)(g-d+r)")
    p.add_argument("g", type=_unsigned)
    p.add_argument("r", type=_unsigned)
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("certify", help="certify Brill-Noether specialness")
    csub = p.add_subparsers(dest="target", required=True)
    c = csub.add_parser("heawood", help="certify D_B on metric Heawood graphs")
    c.add_argument("--lengths", choices=("unit", "random", "file"), default="unit")
    c.add_argument("--metric", help="graph file with lengths, for --lengths file")
    c.add_argument("--seed", type=_unsigned, default=0)
    c.add_argument("--trials", type=_positive, default=100)
    c.add_argument("--numerator-bound", type=_positive, default=10)
    c.add_argument("--denominator-bound", type=_positive, default=6)
    c.add_argument("--cycle-cap", type=_positive, default=DEFAULT_CYCLE_CAP)
    c.add_argument("--probe-cap", type=_positive, default=DEFAULT_PROBE_CAP)
    c.add_argument("--verify", action="store_true")
    c.add_argument("--format", choices=("json", "text"), default="json")
    out(c)
    c.set_defaults(func=cmd_certify_heawood)

    p = sub.add_parser("scan", help="girth/genus feasibility scan")
    ssub = p.add_subparsers(dest="target", required=True)
    s = ssub.add_parser("girth-bound", help="pairs with girth^2/4 > genus >= 2^(girth/2)")
    s.add_argument("max_girth", type=int)
    out(s)
    s.set_defaults(func=cmd_scan_girth)

    p = sub.add_parser("catalog", help="named graphs")
    ksub = p.add_subparsers(dest="target", required=True)
    k = ksub.add_parser("build", help="write a catalog graph as JSON")
    k.add_argument("name", help=", ".join(catalog.CATALOG_NAMES))
    out(k)
    k.set_defaults(func=cmd_catalog_build)

    p = sub.add_parser("export", help="export a graph file")
    esub = p.add_subparsers(dest="target", required=True)
    e = esub.add_parser("dot", help="Graphviz DOT with lengths as edge labels")
    e.add_argument("graph")
    out(e)
    e.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FalsificationError as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        print(dumps({"falsified": str(exc), "counterexample": exc.counterexample}), end="")
        return EXIT_FALSIFIED
    except (GraphFormatError, ResourceLimitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 on success or a true verdict, 1 on a false verdict or an
unexpected counterexample, 2 on usage, input or parse errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Any

from . import lab
from .autgroup import automorphism_group, homogeneity_spectrum, max_homogeneity, transitivity_spectrum
from .errors import FtspareError
from .fault import (
    SPARING_POLICIES,
    build_global_sparing,
    default_threads,
    find_reconfiguration,
    is_k_fault_tolerant_realization,
)
from .graph import (
    Graph,
    complete_graph,
    cycle_graph,
    degree_sequence,
    emit_edge_list,
    emit_graph6,
    empty_graph,
    hypercube,
    parse_graph_text,
    path_graph,
)
from .perm import format_cycles, parse_group_text

SCHEMA_VERSION = "1"


class UsageError(Exception):
    pass


_NAMED = [
    (re.compile(r"K(\d+)"), complete_graph),
    (re.compile(r"C(\d+)"), cycle_graph),
    (re.compile(r"P(\d+)"), path_graph),
    (re.compile(r"E(\d+)"), empty_graph),
    (re.compile(r"Q(\d+)"), hypercube),
]
_SPARED = re.compile(r"(.+)\+(\d+)spares?")


def named_graph(name: str) -> Graph | None:
    """Built-in families: K5, C6, P3, E4 (edgeless), Q3, and ``<name>+<k>spares``."""
    m = _SPARED.fullmatch(name)
    if m:
        base = named_graph(m.group(1))
        return None if base is None else build_global_sparing(base, int(m.group(2)))
    for pattern, build in _NAMED:
        m = pattern.fullmatch(name)
        if m:
            return build(int(m.group(1)))
    return None


def load_graph(spec: str) -> Graph:
    path = Path(spec)
    if path.is_file():
        try:
            return parse_graph_text(path.read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {spec}: {exc}") from None
    g = named_graph(spec)
    if g is None:
        raise UsageError(f"{spec!r} is neither a readable graph file nor a built-in graph name")
    return g


def parse_vertex_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"vertex list must be comma-separated integers, got {text!r}") from None


def _bool_list(values) -> str:
    return " ".join("?" if v is None else ("T" if v else "F") for v in values)


def _emit(args, doc: dict[str, Any], lines: list[str]) -> None:
    if args.json:
        doc = {"schema_version": SCHEMA_VERSION, "command": args.command, **doc}
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


# --- subcommands -------------------------------------------------------------

def cmd_analyze(args) -> int:
    g = load_graph(args.graph)
    aut = automorphism_group(g)
    doc = {
        "graph6": emit_graph6(g),
        "n": g.n,
        "m": g.m,
        "degree_sequence": degree_sequence(g),
        "aut_order": aut.order,
        "generators": [format_cycles(p) for p in aut.group.generators],
        "vertex_transitive": aut.vertex_transitive,
        "homogeneity": list(aut.homogeneity),
        "max_homogeneity": max_homogeneity(g),
        "complete": g.is_complete(),
    }
    lines = [
        f"graph6: {doc['graph6']}",
        f"vertices: {g.n}  edges: {g.m}",
        f"degrees: {' '.join(map(str, doc['degree_sequence']))}",
        f"Aut order: {aut.order}",
        f"generators: {' '.join(doc['generators']) or '(none)'}",
        f"vertex-transitive: {str(aut.vertex_transitive).lower()}",
        f"k-homogeneous for k = 0..{g.n}: {_bool_list(aut.homogeneity)}",
        f"max homogeneity: {doc['max_homogeneity']}",
        f"complete: {str(doc['complete']).lower()}",
    ]
    _emit(args, doc, lines)
    return 0


def cmd_check_ftr(args) -> int:
    host = load_graph(args.host)
    basic = load_graph(args.basic)
    res = is_k_fault_tolerant_realization(host, basic, args.k, relaxed=args.relaxed, threads=args.threads)
    doc = {
        "basic": emit_graph6(basic),
        "host": emit_graph6(host),
        "k": res.k,
        "verdict": res.verdict,
        "counterexample": list(res.counterexample) if res.counterexample is not None else None,
        "checked_subsets": res.checked_subsets,
    }
    lines = [
        f"host: {doc['host']} ({host.n} vertices)  basic: {doc['basic']} ({basic.n} vertices)  k: {res.k}",
        f"verdict: {'k-fault-tolerant realization' if res.verdict else 'not a k-fault-tolerant realization'}",
        f"fault sets checked: {res.checked_subsets}",
    ]
    if res.counterexample is not None:
        lines.append(f"counterexample faults: {','.join(map(str, res.counterexample))}")
    _emit(args, doc, lines)
    return 0 if res.verdict else 1


def cmd_homogeneity(args) -> int:
    if args.group:
        try:
            group = parse_group_text(Path(args.group).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {args.group}: {exc}") from None
        source = {"group": args.group}
    else:
        g = load_graph(args.graph)
        group = automorphism_group(g).group
        source = {"graph6": emit_graph6(g)}
    n = group.degree
    hom = homogeneity_spectrum(group, args.cap)
    trans = transitivity_spectrum(group, args.cap)
    ks = range(n + 1) if args.k is None else [args.k]
    if args.k is not None and not (0 <= args.k <= n):
        raise UsageError(f"--k must lie in 0..{n}")
    rows = [{"k": k, "homogeneous": hom[k], "transitive": trans[k]} for k in ks]
    doc = {"source": source, "degree": n, "order": group.order(),
           "generators": [format_cycles(p) for p in group.generators], "spectrum": rows}
    lines = [f"degree: {n}  order: {doc['order']}"]
    for r in rows:
        fmt = {True: "yes", False: "no", None: "unknown"}
        lines.append(f"k={r['k']}: homogeneous {fmt[r['homogeneous']]}, transitive {fmt[r['transitive']]}")
    _emit(args, doc, lines)
    return 0


def cmd_reconfigure(args) -> int:
    host = load_graph(args.host)
    spares = parse_vertex_list(args.spares)
    faults = parse_vertex_list(args.faults)
    plan = find_reconfiguration(host, spares, faults)
    doc: dict[str, Any] = {
        "host": emit_graph6(host),
        "spares": sorted(set(spares)),
        "faults": sorted(set(faults)),
        "found": plan is not None,
        "automorphism": None,
        "relabel": None,
    }
    if plan is None:
        lines = [f"no automorphism of the host maps spares {doc['spares']} onto faults {doc['faults']}"]
        _emit(args, doc, lines)
        return 1
    doc["automorphism"] = {"images": list(plan.automorphism.images), "cycles": format_cycles(plan.automorphism)}
    doc["relabel"] = {str(v): r for v, r in sorted(plan.relabel.items())}
    lines = [
        f"automorphism: {doc['automorphism']['cycles']}",
        "relabel (node -> role): " + " ".join(f"{v}->{r}" for v, r in sorted(plan.relabel.items())),
    ]
    _emit(args, doc, lines)
    return 0


def cmd_build_sparing(args) -> int:
    basic = load_graph(args.basic)
    host = build_global_sparing(basic, args.k, args.policy)
    text = emit_graph6(host) + "\n" if args.format == "graph6" else emit_edge_list(host)
    if args.output:
        Path(args.output).write_text(text)
    doc = {
        "basic": emit_graph6(basic),
        "k": args.k,
        "policy": args.policy,
        "host": emit_graph6(host),
        "n": host.n,
        "m": host.m,
        "spares": list(range(basic.n, host.n)),
        "output": args.output,
    }
    if args.output:
        lines = [f"wrote {host.n} vertices, {host.m} edges to {args.output}"]
    else:
        lines = [text.rstrip("\n")]
    _emit(args, doc, lines)
    return 0


def cmd_verify(args) -> int:
    if args.nmax > 6 and not args.allow_n7:
        raise UsageError("--nmax 7 enumerates 2^21 graphs per size; pass --allow-n7 to run it")
    if args.nmax < 4:
        raise UsageError("--nmax must be at least 4")
    reports = lab.run_suite(args.suite, args.nmax, args.threads)
    ok = all(r.ok for r in reports)
    doc = {"ok": ok, "reports": [r.to_dict(timing=args.timing) for r in reports]}
    lines = []
    for r in reports:
        status = "PASS" if r.ok else "FAIL"
        line = f"{status} {r.suite}: {r.instances_checked} instances, {len(r.counterexamples)} counterexamples"
        if args.timing:
            line += f" ({r.elapsed:.2f}s)"
        lines.append(line)
        for key, value in r.facts.items():
            lines.append(f"    {key}: {json.dumps(value)}")
        for c in r.counterexamples:
            lines.append(f"    counterexample: {json.dumps(c)}")
    _emit(args, doc, lines)
    return 0 if ok else 1


# --- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ftspare",
        description="Automorphism groups, k-homogeneity and fault-tolerant supergraph checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, threads=False):
        p.add_argument("--json", action="store_true", help="emit a JSON document")
        if threads:
            p.add_argument("--threads", type=int, default=None,
                           help="worker processes (default: $FTSPARE_THREADS or CPU count)")

    graph_help = "graph6 file, edge-list file, or built-in name (K5, C6, Q3, Q3+2spares, ...)"

    p = sub.add_parser("analyze", help="automorphism group and homogeneity spectrum of a graph")
    p.add_argument("--graph", required=True, help=graph_help)
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check-ftr", help="check a k-fault-tolerant realization")
    p.add_argument("--host", required=True, help=graph_help)
    p.add_argument("--basic", required=True, help=graph_help)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--relaxed", action="store_true", help="allow hosts with more than n + k vertices")
    common(p, threads=True)
    p.set_defaults(func=cmd_check_ftr)

    p = sub.add_parser("homogeneity", help="k-homogeneity and k-transitivity of a group")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--group", help="generator-list file ('degree n' then 1-based cycles)")
    src.add_argument("--graph", help=graph_help + "; uses its automorphism group")
    p.add_argument("--k", type=int, default=None, help="report a single k")
    p.add_argument("--cap", type=int, default=10**6, help="orbit size cap before reporting unknown")
    common(p)
    p.set_defaults(func=cmd_homogeneity)

    p = sub.add_parser("reconfigure", help="find an automorphism mapping spares onto faults")
    p.add_argument("--host", required=True, help=graph_help)
    p.add_argument("--spares", required=True, help="comma-separated 0-based vertices")
    p.add_argument("--faults", required=True, help="comma-separated 0-based vertices")
    common(p)
    p.set_defaults(func=cmd_reconfigure)

    p = sub.add_parser("build-sparing", help="add k globally shared spare nodes to a basic graph")
    p.add_argument("--basic", required=True, help=graph_help)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--policy", choices=SPARING_POLICIES, default="universal")
    p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    p.add_argument("--output", help="write the host graph here instead of stdout")
    common(p)
    p.set_defaults(func=cmd_build_sparing)

    p = sub.add_parser("verify", help="run the exhaustive verification suites")
    p.add_argument("--suite", choices=lab.SUITES + ("all",), default="all")
    p.add_argument("--nmax", type=int, default=6, help="largest vertex count for graph enumeration (4..7)")
    p.add_argument("--allow-n7", action="store_true", help="permit --nmax 7 (2^21 graphs per size)")
    p.add_argument("--timing", action="store_true", help="include elapsed times (output is no longer byte-stable)")
    common(p, threads=True)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 0) is None:
        args.threads = default_threads()
    try:
        return args.func(args)
    except (UsageError, FtspareError, ValueError) as exc:
        print(f"ftspare {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line front end: build, classify, verify, certify.

All reports are JSON first (sorted keys, deterministic given the seed); text
output is a rendering of the same data.  Exit codes: 0 success, 2 parse or
precondition failure, 3 budget exceeded, 4 counterexample or flagged result.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import constructions, grp
from .autgrp import automorphism_group_of_graph
from .graphs import Graph, cayley_graph
from .grp import FiniteGroup
from .perm import (
    BudgetError,
    Perm,
    PermGroup,
    group_from_json,
    group_to_json,
)
from .symmetry import transitivity_suite

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_BUDGET = 3
EXIT_COUNTEREXAMPLE = 4


class CliError(Exception):
    pass


def _apply_memory_budget():
    budget = os.environ.get("CAYLEY_FORGE_BUDGET_MB")
    if not budget:
        return
    try:
        import resource
        limit = int(budget) << 20
        resource.setrlimit(resource.RLIMIT_AS, (limit, limit))
    except (ImportError, ValueError, OSError):
        pass


BUILDERS = {
    "cyclic": lambda args: grp.cyclic(int(args[0])),
    "dihedral": lambda args: grp.dihedral(int(args[0])),
    "dicyclic": lambda args: grp.dicyclic(int(args[0])),
    "quaternion": lambda args: grp.quaternion(),
    "sym": lambda args: grp.symmetric(int(args[0])),
    "alt": lambda args: grp.alternating(int(args[0])),
    "elab": lambda args: grp.elementary_abelian(int(args[0]), int(args[1])),
    "invprod": lambda args: grp.generalized_inversion_product(
        int(args[0]), int(args[1])),
}


def parse_group_spec(spec: str) -> FiniteGroup:
    """Builder specs like cyclic:6, dihedral:5, invprod:5,1, sym:4."""
    name, _, rest = spec.partition(":")
    args = [a for a in rest.replace(",", " ").split() if a]
    if name not in BUILDERS:
        raise CliError(f"unknown group spec {spec!r}; "
                       f"builders: {', '.join(sorted(BUILDERS))}, sz")
    try:
        return BUILDERS[name](args)
    except (IndexError, ValueError) as exc:
        raise CliError(f"bad arguments in group spec {spec!r}: {exc}") from exc


def parse_connection_set(group: FiniteGroup, text: str) -> set[int]:
    """Element indices, label names, or the keyword 'involutions'."""
    text = text.strip()
    if text == "involutions":
        return set(group.involutions())
    if text == "all":
        return set(range(1, group.n))
    out = set()
    by_label = {lab: i for i, lab in enumerate(group.labels)}
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if token in by_label:
            out.add(by_label[token])
        else:
            try:
                out.add(int(token))
            except ValueError:
                raise CliError(f"unknown element {token!r}") from None
    return out


def _emit(payload, args, default_stem: str):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        path = args.out
        with open(path, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {path}")
    else:
        print(text)


def _write_graph_files(graph: Graph, stem: str, fmt: str, sidecar=None):
    written = []
    if fmt in ("json", "both"):
        path = f"{stem}.json"
        with open(path, "w") as fh:
            json.dump(graph.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        written.append(path)
    if fmt in ("dot", "both"):
        path = f"{stem}.dot"
        with open(path, "w") as fh:
            fh.write(graph.to_dot() + "\n")
        written.append(path)
    if sidecar is not None:
        path = f"{stem}.context.json"
        with open(path, "w") as fh:
            json.dump(sidecar, fh, indent=2, sort_keys=True)
            fh.write("\n")
        written.append(path)
    for path in written:
        print(f"wrote {path}")


def cmd_build(args) -> int:
    fmt = args.format
    if args.kind == "cayley":
        group = parse_group_spec(args.group)
        s = parse_connection_set(group, args.set)
        graph, ctx = cayley_graph(group, s)
        sidecar = {
            "group": group.name,
            "order": group.n,
            "connection_set": sorted(ctx.connection_set),
            "directed": graph.directed,
        }
        _write_graph_files(graph, args.out or "cayley", fmt, sidecar)
    elif args.kind == "coset":
        with open(args.group_file) as fh:
            x_grp = group_from_json(json.load(fh))
        with open(args.subgroup_file) as fh:
            h_grp = group_from_json(json.load(fh))
        g = Perm.parse(args.g, x_grp.degree)
        from .graphs import coset_graph
        graph, ctx = coset_graph(x_grp, h_grp, [g, g.inverse()])
        sidecar = {
            "ambient_order": x_grp.order(),
            "subgroup_order": h_grp.order(),
            "cosets": graph.n,
            "g": g.cycle_string(),
        }
        _write_graph_files(graph, args.out or "coset", fmt, sidecar)
    elif args.kind == "bipartite-example":
        ex = constructions.build_bipartite_example(args.p, args.d)
        _write_graph_files(ex.graph, args.out or f"k{args.p}pow{args.d}",
                           fmt, ex.to_json())
    elif args.kind == "halfsym":
        t_group = parse_group_spec(args.T)
        t = _pick_element(t_group, args.t, args.t_order)
        r_set, union, power, report = \
            constructions.half_symmetric_connection_set(t_group, t, args.l)
        graph, ctx = cayley_graph(power, union)
        sidecar = report.to_json()
        sidecar["vertices"] = graph.n
        _write_graph_files(graph, args.out or "halfsym", fmt, sidecar)
    return EXIT_OK


def _pick_element(group: FiniteGroup, t_spec: str | None,
                  t_order: int | None) -> int:
    if t_spec is not None:
        vals = parse_connection_set(group, t_spec)
        if len(vals) != 1:
            raise CliError("t must name a single element")
        return vals.pop()
    if t_order is not None:
        for i in range(1, group.n):
            if group.order_of(i) == t_order:
                return i
        raise CliError(f"no element of order {t_order}")
    raise CliError("one of --t or --t-order is required")


def cmd_classify(args) -> int:
    with open(args.graph) as fh:
        graph = Graph.from_json(json.load(fh))
    if args.group:
        with open(args.group) as fh:
            y_grp = group_from_json(json.load(fh))
    else:
        y_grp = automorphism_group_of_graph(graph, max_n=args.max_vertices)
    report = transitivity_suite(graph, y_grp)
    _emit(report.to_json(), args, "classify")
    return EXIT_OK


def cmd_verify(args) -> int:
    progress = None
    if args.verbose:
        def progress(r):
            flag = "ok" if getattr(r, "ok", True) else "COUNTEREXAMPLE"
            label = getattr(r, "instance", None) or getattr(
                r, "group_name", "?")
            print(f"  {label}: {flag}", file=sys.stderr)

    suite = args.suite
    bad = 0
    if suite == "godsil":
        results = constructions.sweep_godsil(args.max_order,
                                             progress=progress)
        payload = [r.to_json() for r in results]
        bad = sum(0 if r.ok else 1 for r in results)
    elif suite == "normal-or-cover":
        results = constructions.sweep_normal_or_cover(args.max_order,
                                                      progress=progress)
        payload = [r.to_json() for r in results]
        bad = sum(1 for r in results if r.verdict == constructions.FLAGGED)
    elif suite == "local-faithful":
        results = constructions.sweep_local_faithful(args.max_order,
                                                     progress=progress)
        payload = [r.to_json() for r in results]
        bad = sum(1 for r in results if r.counterexample)
    elif suite == "local-dichotomy":
        results = constructions.sweep_local_dichotomy(args.max_order,
                                                      progress=progress)
        payload = [r.to_json() for r in results]
        bad = sum(1 for r in results if r.counterexample)
    elif suite == "regular-pair":
        results = constructions.sweep_regular_pair(
            min(args.max_order, 8), seed=args.seed, progress=progress)
        payload = [r.to_json() for r in results]
        bad = sum(1 for r in results if r.counterexample)
    elif suite == "defect-bound":
        results = constructions.sweep_defect_bound(progress=progress)
        payload = [r.to_json() for r in results]
        bad = sum(1 for r in results if r.counterexample)
    elif suite == "double-coset":
        results = constructions.sweep_double_coset_agreement(
            count=args.count, seed=args.seed, progress=progress)
        payload = [r.to_json() for r in results]
        bad = sum(1 for r in results if r.counterexample)
    else:
        raise CliError(f"unknown suite {suite!r}")
    summary = {
        "suite": suite,
        "instances": len(payload),
        "counterexamples_or_flagged": bad,
        "results": payload,
    }
    _emit(summary, args, f"verify-{suite}")
    return EXIT_OK if bad == 0 else EXIT_COUNTEREXAMPLE


def cmd_certify_halfsym(args) -> int:
    if args.T == "sz:8":
        t_grp, frob = grp.suzuki_group(8)
        ext = PermGroup(t_grp.degree,
                        list(t_grp.generators) + [frob],
                        name="Aut(Sz(8))")
        if args.t is not None:
            t = Perm.parse(args.t, t_grp.degree)
        else:
            t = _element_of_order_in(t_grp, args.t_order or 4)
    elif args.group_file:
        with open(args.group_file) as fh:
            t_grp = group_from_json(json.load(fh))
        ext = t_grp
        t = Perm.parse(args.t, t_grp.degree)
    else:
        table = parse_group_spec(args.T)
        idx = _pick_element(table, args.t, args.t_order)
        ghat = grp.right_regular_rep(table)
        t = table.right_translation(idx)
        ext = grp.holomorph(table)
        t_grp = ghat
    if t not in t_grp:
        raise CliError("t is not in the group")
    cert = constructions.half_symmetry_certificate(t_grp, ext, t, args.l)
    _emit(cert.to_json(), args, "certificate")
    return EXIT_OK


def _element_of_order_in(group: PermGroup, order: int) -> Perm:
    for g in group.generators:
        if g.order() == order:
            return g
    import random as _random
    rng = _random.Random(0)
    for _ in range(10 ** 4):
        x = group.random_element(rng)
        if x.order() == order:
            return x
    raise CliError(f"no element of order {order} found")


def cmd_grp_make(args) -> int:
    if args.builder == "sz":
        t_grp, frob = grp.suzuki_group(int(args.args[0]))
        payload = group_to_json(t_grp)
        payload["field_automorphism"] = list(frob.images)
    else:
        spec = args.builder + ":" + ",".join(args.args)
        table = parse_group_spec(spec)
        ghat = grp.right_regular_rep(table)
        payload = group_to_json(ghat)
        payload["element_labels"] = table.labels
    _emit(payload, args, "group")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayley-forge",
        description="Construct and analyze finite Cayley and coset graphs.")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build a graph and write files")
    b_sub = p_build.add_subparsers(dest="kind", required=True)
    p_cay = b_sub.add_parser("cayley")
    p_cay.add_argument("--group", required=True, help="builder spec, e.g. dihedral:5")
    p_cay.add_argument("--set", required=True,
                       help="comma list of elements, 'involutions', or 'all'")
    p_cos = b_sub.add_parser("coset")
    p_cos.add_argument("--group-file", required=True)
    p_cos.add_argument("--subgroup-file", required=True)
    p_cos.add_argument("--g", required=True, help="cycle notation, e.g. '(0 1 2)'")
    p_bip = b_sub.add_parser("bipartite-example")
    p_bip.add_argument("--p", type=int, required=True)
    p_bip.add_argument("--d", type=int, default=1)
    p_half = b_sub.add_parser("halfsym")
    p_half.add_argument("--T", required=True)
    p_half.add_argument("--t", default=None)
    p_half.add_argument("--t-order", type=int, default=None)
    p_half.add_argument("--l", type=int, default=2)
    for p in (p_cay, p_cos, p_bip, p_half):
        p.add_argument("--out", default=None, help="output file stem")
        p.add_argument("--format", choices=("json", "dot", "both"),
                       default="both")
        p.set_defaults(func=cmd_build)

    p_classify = sub.add_parser("classify", help="symmetry report for a graph")
    p_classify.add_argument("graph", help="graph JSON file")
    p_classify.add_argument("--group", default=None,
                            help="group JSON acting as automorphisms "
                                 "(default: compute the full group)")
    p_classify.add_argument("--max-vertices", type=int, default=512)
    p_classify.add_argument("--out", default=None)
    p_classify.set_defaults(func=cmd_classify)

    p_verify = sub.add_parser("verify", help="run a verification sweep")
    p_verify.add_argument("suite", choices=(
        "godsil", "normal-or-cover", "local-faithful", "local-dichotomy",
        "regular-pair", "defect-bound", "double-coset"))
    p_verify.add_argument("--max-order", type=int, default=12)
    p_verify.add_argument("--count", type=int, default=100,
                          help="instances for the double-coset sweep")
    p_verify.add_argument("--verbose", action="store_true")
    p_verify.add_argument("--out", default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_cert = sub.add_parser("certify-halfsym",
                            help="conjugacy certificate for the construction")
    p_cert.add_argument("--T", default=None,
                        help="builder spec or sz:8")
    p_cert.add_argument("--group-file", default=None)
    p_cert.add_argument("--t", default=None)
    p_cert.add_argument("--t-order", type=int, default=None)
    p_cert.add_argument("--l", type=int, required=True)
    p_cert.add_argument("--out", default=None)
    p_cert.set_defaults(func=cmd_certify_halfsym)

    p_grp = sub.add_parser("grp", help="group utilities")
    g_sub = p_grp.add_subparsers(dest="grp_command", required=True)
    p_make = g_sub.add_parser("make", help="write a group JSON file")
    p_make.add_argument("builder",
                        help="cyclic|dihedral|dicyclic|quaternion|sym|alt|"
                             "elab|invprod|sz")
    p_make.add_argument("args", nargs="*")
    p_make.add_argument("--out", default=None)
    p_make.set_defaults(func=cmd_grp_make)
    return parser


def main(argv=None) -> int:
    _apply_memory_budget()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())

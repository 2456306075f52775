"""Batch command line over the library: JSON in, reports out.

Exit codes: 0 on success (including a printed "no" verdict), 1 for a "no"
verdict under --quiet, 2 for unreadable input or a failed precondition.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .ramified import (
    build_action,
    cyclicity_check,
    enumerate_c_ramifications,
    faithful_ramified,
    graph,
    matrices_equivalent,
    reductivity,
    theta,
    transitivity_check,
)
from .rees import extract_rees, sandwich_equivalent
from .representation import (
    is_primitive_bruteforce,
    semigroup_rep,
    validate_representation,
)
from .reps import structural_primitivity, translational_hull
from .semigroup import close, regular_jclasses

DEFAULT_CAP = 100_000


class Reporter:
    """Accumulates report fields; prints text lines or one JSON object."""

    def __init__(self, command: str, quiet: bool, as_json: bool, seed: int):
        self.quiet = quiet
        self.as_json = as_json
        self.fields: list[tuple[str, object]] = [
            ("command", command),
            ("seed", seed),
        ]

    def add(self, key: str, value):
        self.fields.append((key, value))

    def flush(self):
        if self.quiet:
            return
        if self.as_json:
            print(json.dumps(dict(self.fields), indent=2))
        else:
            for key, value in self.fields:
                if isinstance(value, (dict, list)):
                    print(f"{key}: {json.dumps(value)}")
                else:
                    print(f"{key}: {value}")

    def error(self, message: str):
        if not self.quiet:
            print(f"error: {message}", file=sys.stderr)


def _yesno(v: bool) -> str:
    return "yes" if v else "no"


def _blocks(partition) -> list[list[int]]:
    return [list(b) for b in partition.blocks()]


def cmd_green(args, out: Reporter):
    s = io.semigroup_from_file(args.semigroup)
    gd = s.green()
    out.add("elements", s.size)
    out.add("r-classes", gd.r.num_blocks)
    out.add("l-classes", gd.l.num_blocks)
    out.add("j-classes", gd.j.num_blocks)
    out.add("h-classes", gd.h.num_blocks)
    out.add("regular-j-classes", len(regular_jclasses(s)))
    return None


def cmd_rees_extract(args, out: Reporter):
    s = io.semigroup_from_file(args.semigroup)
    ext = extract_rees(s)
    out.add("group-order", ext.group.order)
    out.add("rows", ext.matrix.rows)
    out.add("cols", ext.matrix.cols)
    out.add("regular", _yesno(ext.matrix.is_regular()))
    out.add("matrix", io.dump_sandwich(ext.matrix))
    return None


def cmd_sandwich_equiv(args, out: Reporter):
    q1 = io.sandwich_from_file(args.first)
    q2 = io.sandwich_from_file(args.second)
    res = sandwich_equivalent(q1, q2)
    out.add("equivalent", _yesno(res is not None))
    if res is not None:
        u, v, phi = res
        out.add(
            "witness",
            {
                "row-scaling": [list(row) for row in u],
                "col-scaling": [list(row) for row in v],
                "group-iso": list(phi),
            },
        )
    return res is not None


def cmd_theta(args, out: Reporter):
    p = io.matrix_from_file(args.matrix)
    t = theta(p)
    out.add("vectors", p.cols * p.degree)
    out.add("classes", t.num_blocks)
    out.add("trivial", _yesno(t.is_diagonal()))
    return None


def cmd_graph(args, out: Reporter):
    p = io.matrix_from_file(args.matrix)
    g = graph(p)
    out.add("columns", g.cols)
    out.add("edges", [list(e) for e in g.edges])
    out.add("components", _blocks(g.components))
    out.add("connected", _yesno(g.connected))
    return g.connected


def cmd_reductive(args, out: Reporter):
    p = io.matrix_from_file(args.matrix)
    r = reductivity(p)
    out.add("right", _yesno(r.right))
    out.add("left", _yesno(r.left))
    if r.right_witness is not None:
        out.add("right-witness", list(r.right_witness))
    if r.left_witness is not None:
        out.add("left-witness", list(r.left_witness))
    out.add("reductive", _yesno(r.right and r.left))
    return r.right and r.left


def cmd_build(args, out: Reporter):
    p = io.matrix_from_file(args.matrix)
    rep = build_action(p, quotient=not args.raw)
    out.add("quotient", _yesno(not args.raw))
    out.add("elements", rep.size)
    out.add("carrier", rep.carrier)
    out.add("faithful", _yesno(rep.is_faithful()))
    out.add("triples", p.cols * p.action.order * p.rows)
    return None


def cmd_primitive(args, out: Reporter):
    rep = io.representation_from_file(args.representation)
    cert = structural_primitivity(rep)
    out.add("primitive", _yesno(cert.primitive))
    out.add("conditions", {name: _yesno(v) for name, v in cert.conditions})
    if cert.witness is not None:
        out.add("witness", _blocks(cert.witness))
    if args.oracle:
        closed = close(list(dict.fromkeys(rep.maps)))
        brute, _ = is_primitive_bruteforce(semigroup_rep(closed))
        if brute != cert.primitive:
            raise ValueError("structural verdict disagrees with brute force")
        out.add("oracle", "agree")
    return cert.primitive


def cmd_invariant(args, out: Reporter):
    rep = io.representation_from_file(args.representation)
    cert = structural_primitivity(rep)
    out.add("primitive", _yesno(cert.primitive))
    out.add("conditions", {name: _yesno(v) for name, v in cert.conditions})
    if cert.structure is not None:
        ram = cert.structure.ramified
        out.add(
            "minimal-functions",
            [list(m.images) for m in cert.structure.minimal_maps],
        )
        out.add("matrix", io.dump_matrix(ram.matrix))
        out.add("carrier-classes", list(ram.kappa_points))
    if cert.witness is not None:
        out.add("witness", _blocks(cert.witness))
    return None


def cmd_equiv(args, out: Reporter):
    p1 = io.matrix_from_file(args.first)
    p2 = io.matrix_from_file(args.second)
    res = matrices_equivalent(p1, p2)
    out.add("equivalent", _yesno(res is not None))
    if res is not None:
        amat, bmat, (point_map, group_map) = res
        out.add(
            "witness",
            {
                "row-scaling": [list(row) for row in amat],
                "col-scaling": [list(row) for row in bmat],
                "point-map": list(point_map),
                "group-map": list(group_map),
            },
        )
    return res is not None


def _quotient_reachability(p):
    """Reachability between theta-classes under the built action."""
    rep = build_action(p, quotient=True)
    n = rep.carrier
    reach = [set() for _ in range(n)]
    for u in range(n):
        reach[u].add(u)
        for m in rep.maps:
            reach[u].add(m(u))
    return n, reach


def cmd_transitive(args, out: Reporter):
    p = io.matrix_from_file(args.matrix)
    verdict = transitivity_check(p)
    out.add("transitive", _yesno(verdict))
    if args.oracle:
        n, reach = _quotient_reachability(p)
        brute = all(len(reach[u]) == n for u in range(n))
        if brute != verdict:
            raise ValueError("structural verdict disagrees with brute force")
        out.add("oracle", "agree")
    return verdict


def cmd_cyclic(args, out: Reporter):
    p = io.matrix_from_file(args.matrix)
    res = cyclicity_check(p)
    out.add("cyclic", _yesno(res.cyclic))
    if res.source is not None:
        out.add("source", list(res.source))
    if args.oracle:
        n, reach = _quotient_reachability(p)
        brute = any(len(reach[u]) == n for u in range(n))
        if brute != res.cyclic:
            raise ValueError("structural verdict disagrees with brute force")
        out.add("oracle", "agree")
    return res.cyclic


def cmd_hull(args, out: Reporter):
    rep = io.representation_from_file(args.representation)
    report = validate_representation(rep)
    if not report.valid:
        raise ValueError("product table disagrees with composition")
    hull = translational_hull(rep)
    out.add("element-maps", len(set(rep.maps)))
    out.add("hull-size", hull.size)
    return None


def cmd_search_transitive(args, out: Reporter):
    q = io.sandwich_from_file(args.sandwich)
    action = io.action_from_file(args.action)
    total = 0
    passing = []
    for p in enumerate_c_ramifications(q, action, cap=args.cap):
        total += 1
        if transitivity_check(p) and faithful_ramified(p).faithful:
            passing.append(p)
    out.add("candidates", total)
    out.add("passing", len(passing))
    out.add("matrices", [io.dump_matrix(p) for p in passing])
    return len(passing) > 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    common.add_argument("--quiet", action="store_true", help="no output; verdict in exit code")
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration bound")
    common.add_argument("--seed", type=int, default=0, help="echoed in the report")

    parser = argparse.ArgumentParser(
        prog="eggbox",
        description="Finite semigroup representations: Green structure, "
        "matrix extraction, primitivity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, files):
        p = sub.add_parser(name, parents=[common], help=help_text)
        for fname, fhelp in files:
            p.add_argument(fname, help=fhelp)
        p.set_defaults(fn=fn)
        return p

    add("green", cmd_green, "Green's relations of a semigroup", [("semigroup", "semigroup JSON file")])
    add("rees-extract", cmd_rees_extract, "sandwich matrix of a completely 0-simple semigroup", [("semigroup", "semigroup JSON file")])
    add("sandwich-equiv", cmd_sandwich_equiv, "equivalence of two sandwich matrices", [("first", "sandwich JSON file"), ("second", "sandwich JSON file")])
    add("theta", cmd_theta, "vector fusion classes of a matrix", [("matrix", "matrix JSON file")])
    add("graph", cmd_graph, "column graph of a matrix", [("matrix", "matrix JSON file")])
    add("reductive", cmd_reductive, "row and column reductivity", [("matrix", "matrix JSON file")])
    build_p = add("build", cmd_build, "the action generated by the monomial triples", [("matrix", "matrix JSON file")])
    build_p.add_argument("--raw", action="store_true", help="act on vectors instead of fusion classes")
    add("primitive", cmd_primitive, "structural primitivity of a representation", [("representation", "representation JSON file")])
    add("invariant", cmd_invariant, "full structural certificate of a representation", [("representation", "representation JSON file")])
    add("equiv", cmd_equiv, "equivalence of two matrices", [("first", "matrix JSON file"), ("second", "matrix JSON file")])
    add("transitive", cmd_transitive, "transitivity of the built action", [("matrix", "matrix JSON file")])
    add("cyclic", cmd_cyclic, "cyclicity of the built action", [("matrix", "matrix JSON file")])
    add("hull", cmd_hull, "two-sided composition hull of the element maps", [("representation", "representation JSON file")])
    add("search-transitive", cmd_search_transitive, "constant completions passing transitivity and faithfulness", [("sandwich", "sandwich JSON file"), ("action", "action JSON file")])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Reporter(args.command, quiet=args.quiet, as_json=args.json, seed=args.seed)
    try:
        verdict = args.fn(args, out)
    except (io.SchemaError, ValueError) as e:
        out.error(str(e))
        return 2
    out.flush()
    if args.quiet and verdict is False:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

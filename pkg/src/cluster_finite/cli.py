"""Command-line front end.

Indices are 1-based on the command line and in all output.  Exit codes:
0 success / Finite, 1 NotFinite (or a negative answer), 2 input error,
3 explorer cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .diagram import Diagram, chordless_cycles, connected_components, diagram_of_skew
from .errors import ClusterFiniteError, MalformedDiagram, NotOrientable, NotSkewSymmetrizable, ParseError
from .io import MatrixDocument, parse_edge_list, parse_matrix, render_json, render_text
from .matrix import SkewSymmetrizableMatrix, Symmetrizer, find_symmetrizer, mutate
from .orient import (
    assign_signs,
    brute_force_orientable,
    check_edge_ordering_criterion,
    check_exact_sequence,
    construct_orientation,
    is_cyclically_orientable_count,
)
from .quasi_cartan import check_cycle_sign_condition, companion_from_signs, first_nonpositive_minor
from .recognizer import (
    DEFAULT_MAX_VISITED,
    ExplorationStatus,
    NonOrientableCycle,
    NonPositiveCompanion,
    Verdict,
    cartan_counterpart,
    explore_class,
    find_cartan_member,
    recognize,
)
from .roots import cartan_killing_type
from . import sweeps

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
ENV_MAX_VISITED = "CLUSTER_FINITE_MAX_VISITED"


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_matrix(path: str) -> tuple[SkewSymmetrizableMatrix, MatrixDocument]:
    doc = parse_matrix(_read(path))
    try:
        d = Symmetrizer(doc.symmetrizer) if doc.symmetrizer is not None else find_symmetrizer(doc.matrix)
        return SkewSymmetrizableMatrix(doc.matrix, d), doc
    except (NotSkewSymmetrizable, ValueError) as exc:
        raise NotSkewSymmetrizable(str(exc)) from None


def max_visited(args) -> int:
    if getattr(args, "max_visited", None) is not None:
        return args.max_visited
    env = os.environ.get(ENV_MAX_VISITED)
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{ENV_MAX_VISITED} must be an integer, got {env!r}") from None
    return DEFAULT_MAX_VISITED


def fmt_matrix(m) -> str:
    width = max((len(str(x)) for row in m for x in row), default=1)
    return "\n".join("  " + " ".join(str(x).rjust(width) for x in row) for row in m)


def fmt_cycle(vs) -> str:
    return "-".join(str(v + 1) for v in vs)


def out(args, text: str = "") -> None:
    if not args.quiet:
        print(text)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_recognize(args) -> int:
    B, _ = load_matrix(args.input)
    report = recognize(B)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
        return EXIT_OK if report.is_finite else EXIT_NEGATIVE
    w = report.witness
    if report.is_finite:
        print(f"Finite, type {report.type}")
    elif isinstance(w, NonOrientableCycle):
        print(f"NotFinite (chordless cycle {fmt_cycle(w.cycle.vertices)} is not cyclically oriented)")
    else:
        print(f"NotFinite (companion not positive: leading minor of order {w.minor_index} is {w.minor_value})")
    if not isinstance(w, NonOrientableCycle):
        out(args, "companion:")
        out(args, fmt_matrix(w.certificate.companion.a))
    return EXIT_OK if report.is_finite else EXIT_NEGATIVE


def cmd_mutate(args) -> int:
    B, doc = load_matrix(args.input)
    for k in args.k:
        try:
            B = mutate(B, k - 1)
        except IndexError:
            raise InputError(f"mutation index {k} out of range 1..{B.n}") from None
    res = MatrixDocument(B.b, doc.symmetrizer, doc.name)
    sys.stdout.write(render_json(res) if args.json else render_text(res))
    return EXIT_OK


def cmd_diagram(args) -> int:
    B, doc = load_matrix(args.input)
    g = diagram_of_skew(B)
    if args.dot:
        lines = [f'digraph "{doc.name or "B"}" {{']
        lines += [f"  {v + 1};" for v in range(g.n)]
        for e in g.edges:
            label = f' [label="{e.weight}"]' if e.weight != 1 else ""
            lines.append(f"  {e.tail + 1} -> {e.head + 1}{label};")
        lines.append("}")
        print("\n".join(lines))
        return EXIT_OK
    if args.json:
        print(json.dumps({"n": g.n, "edges": [[e.tail + 1, e.head + 1, e.weight] for e in g.edges]}))
        return EXIT_OK
    print(f"{g.n} vertices, {len(g.edges)} edges")
    for e in g.edges:
        print(f"  {e.tail + 1} -> {e.head + 1}  weight {e.weight}")
    return EXIT_OK


def cmd_cycles(args) -> int:
    B, _ = load_matrix(args.input)
    g = diagram_of_skew(B)
    cycles = chordless_cycles(g)
    if args.json:
        print(json.dumps([{"cycle": [v + 1 for v in z.vertices], "oriented": z.is_cyclically_oriented(g)} for z in cycles]))
    else:
        print(f"{len(cycles)} chordless cycle(s)")
        for z in cycles:
            tag = "cyclically oriented" if z.is_cyclically_oriented(g) else "not cyclically oriented"
            print(f"  {fmt_cycle(z.vertices)}  {tag}")
    return EXIT_OK if all(z.is_cyclically_oriented(g) for z in cycles) else EXIT_NEGATIVE


def cmd_orient(args) -> int:
    g = parse_edge_list(_read(args.input))
    verdicts = {
        "count": is_cyclically_orientable_count(g),
        "exact_sequence": check_exact_sequence(g),
        "edge_ordering": check_edge_ordering_criterion(g),
    }
    if len(g.edges) <= 20:
        verdicts["brute_force"] = brute_force_orientable(g)
    orientable = verdicts["count"]
    orientation = construct_orientation(g) if orientable else None
    signs = assign_signs(g) if orientable else None
    if args.json:
        print(
            json.dumps(
                {
                    "orientable": orientable,
                    "criteria": verdicts,
                    "orientation": None if orientation is None else [[t + 1, h + 1] for t, h in sorted(orientation.values())],
                    "signs": None if signs is None else [[i + 1, j + 1, s] for (i, j), s in sorted(signs.signs.items())],
                }
            )
        )
        return EXIT_OK if orientable else EXIT_NEGATIVE
    print("cyclically orientable" if orientable else "not cyclically orientable")
    for name, v in verdicts.items():
        out(args, f"  {name}: {v}")
    if orientation is not None:
        out(args, "orientation:")
        for t, h in sorted(orientation.values()):
            out(args, f"  {t + 1} -> {h + 1}")
        out(args, "signs:")
        for (i, j), s in sorted(signs.signs.items()):
            out(args, f"  {i + 1} {j + 1}  {'+' if s > 0 else '-'}")
    return EXIT_OK if orientable else EXIT_NEGATIVE


def cmd_companion(args) -> int:
    B, _ = load_matrix(args.input)
    g = diagram_of_skew(B)
    try:
        signs = assign_signs(g)
    except NotOrientable:
        print("underlying graph of the diagram is not cyclically orientable; no sign assignment")
        return EXIT_NEGATIVE
    cert = companion_from_signs(B, signs)
    A = cert.companion
    bad = first_nonpositive_minor(A)
    sign_ok = check_cycle_sign_condition(A).ok
    if args.json:
        print(json.dumps({"companion": [list(r) for r in A.a], "symmetrizer": list(A.d.diag), "positive": bad is None, "cycle_signs_ok": sign_ok}))
    else:
        print(fmt_matrix(A.a))
        out(args, f"symmetrizer: {' '.join(map(str, A.d.diag))}")
        out(args, "positive" if bad is None else f"not positive (leading minor of order {bad[0]} is {bad[1]})")
        out(args, f"chordless-cycle sign condition: {'holds' if sign_ok else 'fails'}")
    return EXIT_OK if bad is None else EXIT_NEGATIVE


def cmd_type(args) -> int:
    B, _ = load_matrix(args.input)
    report = recognize(B)
    if not report.is_finite:
        print("NotFinite: no Cartan-Killing type")
        return EXIT_NEGATIVE
    line = str(report.type)
    if args.cross_check:
        found = find_cartan_member(B, max_visited(args))
        if found is None:
            print(f"{line} (cross-check inconclusive: cap reached)")
            return EXIT_CAP
        other = cartan_killing_type(cartan_counterpart(found[0]))
        path = " ".join(str(k + 1) for k in found[1]) or "(seed)"
        if other != report.type:
            print(f"{line} (cross-check MISMATCH: member via {path} has type {other})")
            return EXIT_NEGATIVE
        line += f" (cross-checked via mutation path {path})"
    print(line)
    return EXIT_OK


def cmd_explore(args) -> int:
    B, _ = load_matrix(args.input)
    res = explore_class(B, max_visited(args), args.max_entry)
    w = res.witness
    if args.json:
        obj = {"status": res.status.value, "visited": res.visited, "witness": None}
        if w is not None:
            obj["witness"] = {"matrix": [list(r) for r in w.matrix], "path": [k + 1 for k in w.path]}
        print(json.dumps(obj))
    else:
        print(f"{res.status.value}, {res.visited} matrices visited")
        if w is not None:
            out(args, f"mutation path: {' '.join(str(k + 1) for k in w.path) or '(seed)'}")
            out(args, fmt_matrix(w.matrix))
    return {
        ExplorationStatus.CLASS_CLOSED: EXIT_OK,
        ExplorationStatus.WEIGHT_EXCEEDED: EXIT_NEGATIVE,
        ExplorationStatus.CAP_EXCEEDED: EXIT_CAP,
    }[res.status]


def cmd_selftest(args) -> int:
    if args.suite == "table1":
        lines = sweeps.table1_checks()
        for c in lines:
            out(args, f"{'PASS' if c.ok else 'FAIL'}  {c.name}  {c.detail}".rstrip())
        ok = all(c.ok for c in lines)
    elif args.suite == "criteria":
        s = sweeps.criteria_sweep(args.max_vertices, args.random, args.seed)
        ok = s.ok
        out(args, f"{'PASS' if ok else 'FAIL'}  {s.checked} graphs, {s.positive} orientable, {len(s.failures)} disagreements")
        for g, res in s.failures[:5]:
            out(args, f"  n={g.n} edges={[(i + 1, j + 1) for i, j in g.edges]} {res}")
    else:
        s = sweeps.oracle_sweep(args.n, args.bound, max_visited(args))
        ok = s.ok
        out(args, f"{'PASS' if ok else 'FAIL'}  {s.checked} matrices, {s.positive} finite, {s.unknown} unknown, {len(s.failures)} disagreements")
        for b, got, want in s.failures[:5]:
            out(args, f"  {b}: recognize {got.value}, explorer {want.value}")
    return EXIT_OK if ok else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # shared flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="print only the headline")
    common.add_argument("--max-visited", type=int, default=argparse.SUPPRESS, metavar="N", help=f"explorer cap (env {ENV_MAX_VISITED})")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, metavar="S", help="seed for randomized sweeps")

    p = argparse.ArgumentParser(prog="cluster-finite", description="Finite-type recognition for skew-symmetrizable matrices.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str, matrix: bool = True):
        sp = sub.add_parser(name, help=help, parents=[common])
        if matrix:
            sp.add_argument("input", help="matrix file (text or JSON), '-' for stdin")
        sp.set_defaults(func=func)
        return sp

    add("recognize", cmd_recognize, "decide finite type")
    add("mutate", cmd_mutate, "apply mutations left to right").add_argument("k", type=int, nargs="+", help="1-based directions")
    add("diagram", cmd_diagram, "print the diagram of B").add_argument("--dot", action="store_true", help="Graphviz output")
    add("cycles", cmd_cycles, "list chordless cycles of the diagram")
    add("orient", cmd_orient, "cyclic orientability of an edge list", matrix=False).add_argument("input", help="edge list 'i j [weight]'")
    add("companion", cmd_companion, "sign-determined quasi-Cartan companion")
    add("type", cmd_type, "Cartan-Killing type of the mutation class").add_argument(
        "--cross-check", action="store_true", help="also search the class for a member with a positive Cartan counterpart"
    )
    ex = add("explore", cmd_explore, "breadth-first search of the mutation class")
    ex.add_argument("--max-entry", type=int, default=None, metavar="M", help="stop once an entry exceeds M in absolute value")
    st = add("selftest", cmd_selftest, "built-in acceptance runs", matrix=False)
    st.add_argument("suite", choices=("table1", "criteria", "oracle"))
    st.add_argument("--max-vertices", type=int, default=6)
    st.add_argument("--random", type=int, default=500, help="random graphs on 7-8 vertices")
    st.add_argument("--n", type=int, default=3, help="largest matrix size for the oracle sweep")
    st.add_argument("--bound", type=int, default=2, help="entry bound for the oracle sweep")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("json", False), ("quiet", False), ("max_visited", None), ("seed", 0)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except NotSkewSymmetrizable as exc:
        print(f"input is not skew-symmetrizable: {exc}", file=sys.stderr)
    except MalformedDiagram as exc:
        print(f"malformed edge list: {exc}", file=sys.stderr)
    except (InputError, ClusterFiniteError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``tribracket <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 input or parse error,
3 solvers disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import counting
from .counting import CapExceeded, build_constraints
from .diagram import DiagramError, TypedDiagram, parse_diagram, read_diagrams, serialize_diagram
from .io import (FormatError, TensorFile, builtin_diagram, builtin_diagrams, example_names, expected_tables, load_example, read_tensor, single)
from .moveset import PRESETS, MoveSetError, MultiTribracket, check_multitribracket
from .search import SearchError, SearchSpec, enumerate_structures
from .table import compute_table, expected_values
from .tensor import (AlexanderParams, ParameterError, StructureError, cyclic_group,
                     gen_alexander, gen_dehn, product_group, small_groups)

EXIT_OK, EXIT_AXIOM, EXIT_INPUT, EXIT_DISAGREE = 0, 1, 2, 3


class InputError(Exception):
    """Bad command-line input; maps to exit code 2."""


# --- argument resolution ----------------------------------------------------------------


def parse_group(spec: str):
    """``Z3``, ``S3`` or a product such as ``Z2xZ3``."""
    named = {g.name: g for g in small_groups()}
    if spec in named:
        return named[spec]
    parts = spec.split("x")
    try:
        groups = [named[p] if p in named else cyclic_group(int(p.lstrip("Z"))) for p in parts]
    except ValueError:
        raise InputError(f"unknown group {spec!r}") from None
    g = groups[0]
    for h in groups[1:]:
        g = product_group(g, h)
    return g


def load_tensor_arg(arg: str) -> TensorFile:
    """A file path, a generator spec (``alexander:5,1,2`` / ``dehn:S3``) or a bundled name."""
    try:
        if Path(arg).exists():
            tf = read_tensor(arg)
            if not tf.name:
                tf.name = Path(arg).stem
            return tf
        if arg.startswith("alexander:"):
            n, x, y = (int(v) for v in arg.split(":", 1)[1].split(","))
            return single(gen_alexander(AlexanderParams(n, x, y)), f"alexander_{n}_{x}_{y}")
        if arg.startswith("dehn:"):
            g = parse_group(arg.split(":", 1)[1])
            return single(gen_dehn(g), f"dehn_{g.name}")
        if arg in example_names():
            tf = load_example(arg)
            tf.name = tf.name or arg
            return tf
    except (FormatError, ParameterError, StructureError, ValueError) as exc:
        raise InputError(f"{arg}: {exc}") from exc
    raise InputError(f"{arg!r} is not a file, generator spec or bundled tensor "
                     f"({', '.join(example_names())})")


def resolve_preset(tf: TensorFile, preset: str | None) -> str:
    if preset:
        return preset
    if tf.preset:
        return tf.preset
    return "classical" if len(tf.ops) == 1 else "multicomponent"


def make_structure(tf: TensorFile, preset: str) -> MultiTribracket:
    try:
        return MultiTribracket.for_preset(preset, tf.ops, tf.binding)
    except (MoveSetError, KeyError) as exc:
        raise InputError(f"cannot bind operations for preset {preset}: {exc}") from exc


def load_diagram_args(args) -> list:
    out = []
    for arg in args:
        try:
            if Path(arg).exists():
                out.extend(read_diagrams(arg))
            elif "[" in arg:
                out.append(parse_diagram(arg, name=arg))
            else:
                out.append(builtin_diagram(arg))
        except (DiagramError, FormatError) as exc:
            raise InputError(f"{arg}: {exc}") from exc
    return out


def table_links() -> list:
    return [d for d in builtin_diagrams() if d.name[:1] == "L" and d.name[1:2].isdigit()]


class Output:
    """stdout, or the file named by ``--output``."""

    def __init__(self, path):
        self.path = path
        self.lines = []

    def write(self, line: str):
        if self.path:
            self.lines.append(line)
        else:
            print(line)

    def close(self):
        if self.path:
            Path(self.path).write_text("".join(line + "\n" for line in self.lines))


def _verify(mt: MultiTribracket, args) -> tuple:
    """(ok, report); skipped when ``--no-verify`` is given."""
    if getattr(args, "no_verify", False):
        return None, None
    report = check_multitribracket(mt)
    return report.ok, report


# --- commands --------------------------------------------------------------------------


def cmd_verify(args) -> int:
    tf = load_tensor_arg(args.tensor)
    preset = resolve_preset(tf, args.preset)
    report = check_multitribracket(make_structure(tf, preset))
    if args.json:
        print(json.dumps({"tensor": tf.name, "preset": preset, **report.to_dict()}))
    else:
        print(report.render(limit=args.limit))
    return EXIT_OK if report.ok else EXIT_AXIOM


def _count_all(d: TypedDiagram, mt, preset, args):
    results = {}
    for solver in counting.SOLVERS:
        try:
            results[solver] = counting.count(d, mt, preset, solver, cap=args.max_oracle)
        except CapExceeded as exc:
            print(f"note: oracle skipped for {d.name}: {exc}", file=sys.stderr)
        except ParameterError:
            pass  # linear solver only handles Alexander structures
    return results


def _dump_disagreement(d, mt, preset, results):
    err = sys.stderr
    print(f"solver disagreement on {d.name or 'diagram'} ({preset})", file=err)
    print(f"  diagram: {serialize_diagram(d)}", file=err)
    for con in build_constraints(d, mt, preset):
        print(f"  crossing {con.crossing} type {con.type}: regions {con.regions} "
              f"op {con.label}{' swapped' if con.swap else ''}", file=err)
    for solver, res in results.items():
        print(f"  {solver}: {res.value}", file=err)


def cmd_count(args) -> int:
    tf = load_tensor_arg(args.tensor)
    preset = resolve_preset(tf, args.preset)
    mt = make_structure(tf, preset)
    diagrams = load_diagram_args(args.diagrams)
    ok, report = _verify(mt, args)
    if ok is False:
        print(report.render(), file=sys.stderr)
        return EXIT_AXIOM
    out = Output(args.output)
    status = EXIT_OK
    for d in diagrams:
        try:
            if args.solver == "all":
                results = _count_all(d, mt, preset, args)
                values = {r.value for r in results.values()}
                if len(values) > 1:
                    _dump_disagreement(d, mt, preset, results)
                    status = EXIT_DISAGREE
                res = results["backtrack"]
                solver = "+".join(results)
            else:
                res = counting.count(d, mt, preset, args.solver, cap=args.max_oracle)
                solver = res.solver
        except (CapExceeded, ParameterError, MoveSetError, DiagramError) as exc:
            raise InputError(f"{d.name}: {exc}") from exc
        rec = {"link": d.name, "tribracket": mt.digest(), "preset": preset, "count": res.value,
               "solver": solver, "elapsed": round(res.elapsed, 6),
               "verified": "skipped" if ok is None else ok}
        out.write(json.dumps(rec) if args.json else f"{d.name}\t{res.value}")
    out.close()
    return status


def cmd_table(args) -> int:
    tf = load_tensor_arg(args.tensor)
    preset = resolve_preset(tf, args.preset)
    mt = make_structure(tf, preset)
    ok, report = _verify(mt, args)
    if ok is False and not args.allow_invalid:
        print(report.render(), file=sys.stderr)
        print("structure fails verification; pass --allow-invalid to tabulate anyway",
              file=sys.stderr)
        return EXIT_AXIOM
    links = table_links()
    if not links:
        print("missing data: no bundled links", file=sys.stderr)
        return EXIT_INPUT
    expected = None
    if args.expected != "none":
        key = tf.name if args.expected == "auto" else args.expected
        table = expected_tables().get(key)
        if table is None and args.expected != "auto":
            raise InputError(f"no printed table named {key!r}")
        expected = expected_values(table) if table else None
    rep = compute_table(links, mt, preset, expected, args.orientation, args.jobs)
    rep.meta["verified"] = "skipped" if ok is None else ok
    print(rep.render())
    if args.json or args.output:
        out = Output(args.output)
        for rec in rep.records():
            out.write(json.dumps(rec, sort_keys=True))
        out.close()
    return EXIT_OK


def cmd_search(args) -> int:
    fixed = {}
    if args.fixed:
        tf = load_tensor_arg(args.fixed)
        fixed = {"0": tf.ops["0"]}
    try:
        spec = SearchSpec(args.n, args.preset, fixed=fixed, prune=not args.no_prune,
                          force=args.force)
    except SearchError as exc:
        raise InputError(str(exc)) from exc
    out = Output(args.output)
    t0 = time.perf_counter()
    total = 0
    for mt in enumerate_structures(spec, jobs=args.jobs):
        total += 1
        tf = TensorFile(mt.n, mt.ops, preset=args.preset)
        out.write(json.dumps(tf.to_dict()))
    out.close()
    print(f"{total} structures (n={args.n}, {args.preset}) in {time.perf_counter() - t0:.2f} s",
          file=sys.stderr)
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        if args.kind == "alexander":
            if len(args.params) != 3:
                raise InputError("alexander needs N X Y")
            n, x, y = (int(v) for v in args.params)
            tf = single(gen_alexander(AlexanderParams(n, x, y)), f"alexander_{n}_{x}_{y}")
        else:
            if len(args.params) != 1:
                raise InputError("dehn needs one group name such as Z3, S3 or Z2xZ2")
            g = parse_group(args.params[0])
            tf = single(gen_dehn(g), f"dehn_{g.name}")
    except (ParameterError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    _emit_tensor(tf, args.output)
    return EXIT_OK


def cmd_convert(args) -> int:
    tf = load_tensor_arg(args.tensor)
    tf.notation = args.to
    _emit_tensor(tf, args.output)
    return EXIT_OK


def _emit_tensor(tf: TensorFile, path):
    text = tf.dumps()
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    links = [] if args.empty_links else None
    results = run_selftest(args.trials, links=links,
                           flip="negative" if args.flip_convention else None)
    for r in results:
        print(r.line())
    failed = [r.name for r in results if not r.ok]
    if failed:
        print(f"selftest failed: {', '.join(failed)}")
        return EXIT_AXIOM
    print("selftest passed")
    return EXIT_OK


# --- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tribracket",
                                description="Tribrackets, multi-tribrackets and coloring counts.")
    sub = p.add_subparsers(dest="command", required=True)
    presets = list(PRESETS)

    s = sub.add_parser("verify", help="check a tensor file against a move set")
    s.add_argument("tensor")
    s.add_argument("--preset", choices=presets)
    s.add_argument("--json", action="store_true", help="structured output")
    s.add_argument("--limit", type=int, default=10, help="violations shown per check")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("count", help="count colorings of diagrams")
    s.add_argument("tensor")
    s.add_argument("diagrams", nargs="+", help="bundled link name, diagram file or PD text")
    s.add_argument("--preset", choices=presets)
    s.add_argument("--solver", choices=list(counting.SOLVERS) + ["all"], default="backtrack")
    s.add_argument("--no-verify", action="store_true")
    s.add_argument("--max-oracle", type=int, default=10**7, help="oracle enumeration cap")
    s.add_argument("--json", action="store_true", help="one JSON record per diagram")
    s.add_argument("--output")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("table", help="tabulate counts over the bundled links")
    s.add_argument("tensor")
    s.add_argument("--preset", choices=presets)
    s.add_argument("--orientation", choices=["all", "as-is"], default="all")
    s.add_argument("--expected", default="auto",
                   help="printed table to compare with: auto, none or a bundled table name")
    s.add_argument("--no-verify", action="store_true")
    s.add_argument("--allow-invalid", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--json", action="store_true", help="also print JSON records")
    s.add_argument("--output", help="write JSON records to this file")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("search", help="enumerate structures")
    s.add_argument("n", type=int)
    s.add_argument("--preset", choices=presets, default="classical")
    s.add_argument("--fixed", help="tensor to use as operation 0")
    s.add_argument("--no-prune", action="store_true")
    s.add_argument("--force", action="store_true", help="override the size guard")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--output")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("gen", help="generate a Dehn or Alexander tribracket")
    s.add_argument("kind", choices=["dehn", "alexander"])
    s.add_argument("params", nargs="+", help="alexander: N X Y; dehn: group such as Z3 or S3")
    s.add_argument("--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("convert", help="rewrite a tensor file in horizontal or vertical notation")
    s.add_argument("tensor")
    s.add_argument("--to", choices=["vertical", "horizontal"], required=True)
    s.add_argument("--output")
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("selftest", help="run built-in consistency checks")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--empty-links", action="store_true", help=argparse.SUPPRESS)
    s.add_argument("--flip-convention", action="store_true", help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

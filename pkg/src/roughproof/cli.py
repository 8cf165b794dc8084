"""Command-line interface.

Every command prints a line-oriented report ending in ``RESULT: <verdict>``.
Exit status is 0 on success, 1 on a logical failure (invalid proof, search
failure, unexpected countermodel) and 2 on usage or input errors.
"""

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import algebra
from .calculus import CALCULI, CLASS_OF, canonical_calculus, check_proof
from .cutelim import eliminate_cuts, has_cut
from .errors import InvalidProof, RoughproofError
from .parser import parse_proof, parse_sequent, render_proof, render_sequent, render_term
from .search import SearchBudget, prove
from .translate import parse_lformula, t_translate, translate_hilbert

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _header_calculus(text):
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("; calculus:"):
            return line.split(":", 1)[1].strip()
        if line and not line.startswith(";"):
            break
    return None


def _calculus(name, text=None):
    chosen = name or (text and _header_calculus(text)) or "D.PRA"
    return canonical_calculus(chosen)


def _path(p):
    return "[" + ",".join(str(i) for i in p) + "]"


def _result(out, verdict):
    out.append(f"RESULT: {verdict}")


# ---------------------------------------------------------------- commands

def cmd_check(args, out):
    text = _read(args.proof)
    calc = _calculus(args.calculus, text)
    tree = parse_proof(text, origin=args.proof)
    out.append(f"calculus: {calc}")
    out.append(f"end-sequent: {render_sequent(tree.conclusion)}")
    out.append(f"nodes: {tree.size()}")
    try:
        check_proof(tree, calc)
    except InvalidProof as exc:
        out.append(f"error at {_path(exc.path)}: {exc.reason}")
        _result(out, "invalid")
        return FAIL
    _result(out, "valid")
    return OK


def cmd_prove(args, out):
    goal = parse_sequent(args.sequent)
    calc = _calculus(args.calculus)
    budget = SearchBudget(max_depth=args.depth, max_nodes=args.nodes,
                          semantic_pruning=not args.no_pruning)
    r = prove(goal, calc, budget)
    s = r.stats
    out.append(f"calculus: {calc}")
    out.append(f"outcome: {r.outcome}")
    out.append(f"nodes: {s.nodes} depth: {s.max_depth} bound: {s.depth_bound} pruned: {s.pruned}")
    if r.proved:
        check_proof(r.proof, calc)
        out.append(f"; calculus: {calc}")
        out.append(render_proof(r.proof))
        if args.output:
            _write(args.output, f"; calculus: {calc}\n{render_proof(r.proof)}\n")
        _result(out, "Proved")
        return OK
    _result(out, r.outcome)
    return FAIL


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def cmd_cutfree(args, out):
    text = _read(args.proof)
    calc = _calculus(args.calculus, text)
    tree = parse_proof(text, origin=args.proof)
    try:
        check_proof(tree, calc)
    except InvalidProof as exc:
        out.append(f"error at {_path(exc.path)}: {exc.reason}")
        _result(out, "invalid input")
        return FAIL
    trace = []
    result = eliminate_cuts(tree, calc, trace)
    for kind, what, path in trace:
        out.append(f"; trace: {kind} {what} at {_path(path)}")
    body = f"; calculus: {calc}\n{render_proof(result)}\n"
    if args.output:
        _write(args.output, body)
    else:
        out.append(body.rstrip("\n"))
    out.append(f"nodes: {tree.size()} -> {result.size()}")
    _result(out, "cut-free" if not has_cut(result) else "cuts remain")
    return OK


def cmd_translate(args, out):
    if args.logic:
        try:
            goals = translate_hilbert(args.logic)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        for g in goals:
            out.append(f"{g.label} {g.calculus} {render_sequent(g.target)}")
        _result(out, f"{len(goals)} goals")
        return OK
    if not args.formula:
        raise UsageError("translate needs an L-formula or --logic")
    f = parse_lformula(args.formula)
    out.append(render_term(t_translate(f)))
    _result(out, "ok")
    return OK


def cmd_classify(args, out):
    try:
        A = algebra.loads(_read(args.algebra))
    except (ValueError, KeyError, IndexError) as exc:
        raise UsageError(f"malformed .alg file: {exc}") from None
    if isinstance(A, algebra.FiniteRoughAlgebra):
        try:
            labels = A.classify()
        except RoughproofError as exc:
            out.append(str(exc))
            _result(out, "not a tqBa")
            return FAIL
    else:
        labels = A.classify()
        if not labels:
            out.append(f"failed conditions: {' '.join(sorted(A.failures()))}")
            _result(out, "not a heterogeneous tqBa")
            return FAIL
    order = algebra.SINGLE_CLASSES + algebra.HETERO_CLASSES
    _result(out, " ".join(c for c in order if c in labels))
    return OK


def cmd_enumerate(args, out):
    cls = algebra.class_name(args.cls)
    algs = algebra.enumerate_algebras(args.size, cls)
    counts = {}
    for A in algs:
        counts[A.n] = counts.get(A.n, 0) + 1
    for n in range(2, args.size + 1):
        out.append(f"size {n}: {counts.get(n, 0)}")
    if args.output:
        _write(args.output, "\n".join(algebra.dumps(A) for A in algs))
    elif args.show:
        out.extend(algebra.dumps(A).rstrip("\n") + "\n" for A in algs)
    _result(out, f"{len(algs)} algebras")
    return OK


def cmd_countermodel(args, out):
    seq = parse_sequent(args.sequent)
    found = algebra.countermodel(seq, algebra.class_name(args.cls), args.size)
    if found is None:
        out.append(f"no countermodel with carrier <= {args.size}")
        _result(out, "none")
        return FAIL if args.expect == "found" else OK
    H, asg = found
    out.append(algebra.dumps(H).rstrip("\n"))
    names = H.D.names
    out.append("assignment: " + " ".join(
        f"{k}={names[v] if isinstance(v, int) else v}" for k, v in asg.items()))
    _result(out, "countermodel")
    return FAIL if args.expect == "none" else OK


def _soundness_task(task):
    from .regression import soundness_failures
    calc, size = task
    return soundness_failures(calc, size)


def cmd_soundness(args, out):
    calcs = [canonical_calculus(args.calculus)] if args.calculus else list(CALCULI)
    tasks = [(c, args.size) for c in calcs]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_soundness_task, tasks))
    else:
        results = [_soundness_task(t) for t in tasks]
    bad_total = 0
    for calc, (bad, n) in zip(calcs, results):
        out.append(f"{calc}: {n} algebras of class {CLASS_OF[calc]}, {len(bad)} counterexamples")
        for rule, k in bad:
            out.append(f"  unsound: {rule} on algebra {k}")
        bad_total += len(bad)
    _result(out, "sound" if not bad_total else "unsound")
    return OK if not bad_total else FAIL


def cmd_regression(args, out):
    from .regression import run_all
    results = run_all(report=lambda line: (out.append(line), _flush(out)))
    failed = [r.number for r in results if not r.ok]
    _result(out, "pass" if not failed else "fail " + ",".join(map(str, failed)))
    return OK if not failed else FAIL


def _flush(out):
    for line in out:
        print(line, flush=True)
    out.clear()


# ---------------------------------------------------------------- parser

def build_parser():
    p = argparse.ArgumentParser(prog="roughproof",
                                description="Display calculi for rough algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    jobs = os.cpu_count() or 1

    c = sub.add_parser("check", help="check a proof file")
    c.add_argument("proof")
    c.add_argument("--calculus")
    c.set_defaults(run=cmd_check)

    c = sub.add_parser("prove", help="backward proof search")
    c.add_argument("sequent")
    c.add_argument("--calculus", default="D.PRA")
    c.add_argument("--depth", type=int, default=40)
    c.add_argument("--nodes", type=int, default=100_000)
    c.add_argument("--no-pruning", action="store_true",
                   help="disable pruning of subgoals refuted by small models")
    c.add_argument("-o", "--output")
    c.set_defaults(run=cmd_prove)

    c = sub.add_parser("cutfree", help="eliminate the cuts of a proof")
    c.add_argument("proof")
    c.add_argument("--calculus")
    c.add_argument("-o", "--output")
    c.set_defaults(run=cmd_cutfree)

    c = sub.add_parser("translate", help="translate an L-formula")
    c.add_argument("formula", nargs="?")
    c.add_argument("--logic", help="list the goals of a Hilbert system instead")
    c.set_defaults(run=cmd_translate)

    c = sub.add_parser("classify", help="classify an algebra from a .alg file")
    c.add_argument("algebra")
    c.set_defaults(run=cmd_classify)

    c = sub.add_parser("enumerate", help="enumerate algebras up to isomorphism")
    c.add_argument("--size", type=int, required=True)
    c.add_argument("--class", dest="cls", default="tqBa")
    c.add_argument("--show", action="store_true", help="print every algebra")
    c.add_argument("-o", "--output")
    c.set_defaults(run=cmd_enumerate)

    c = sub.add_parser("countermodel", help="search a falsifying finite algebra")
    c.add_argument("sequent")
    c.add_argument("--class", dest="cls", default="tqBa")
    c.add_argument("--size", type=int, default=4)
    c.add_argument("--expect", choices=["found", "none", "any"], default="any")
    c.set_defaults(run=cmd_countermodel)

    c = sub.add_parser("soundness", help="check every rule on enumerated algebras")
    c.add_argument("--calculus")
    c.add_argument("--size", type=int, default=5)
    c.add_argument("--jobs", type=int, default=jobs)
    c.set_defaults(run=cmd_soundness)

    c = sub.add_parser("regression", help="run the acceptance suite")
    c.set_defaults(run=cmd_regression)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    for flag in ("depth", "nodes", "size", "jobs"):
        if getattr(args, flag, 1) is not None and getattr(args, flag, 1) < 1:
            print(f"error: --{flag} must be positive", file=sys.stderr)
            print("RESULT: usage error")
            return USAGE
    out = []
    try:
        code = args.run(args, out)
    except UsageError as exc:
        out.append(f"error: {exc}")
        _result(out, "usage error")
        code = USAGE
    except (RoughproofError, ValueError) as exc:
        out.append(f"error: {exc}")
        _result(out, "input error")
        code = USAGE
    _flush(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

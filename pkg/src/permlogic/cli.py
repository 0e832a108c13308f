"""Command-line interface.

Exit codes: 0 for success (or a true answer), 1 for a false answer or a
verification mismatch, 2 for usage errors.  Permutations are written in the
compact digit / comma-separated format, formulas in the package's text
syntax.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import cycles as cyc
from . import ef
from . import marginals as marg
from . import patterns as pat
from . import sorting as srt
from . import verify
from .errors import ParseError, PermLogicError
from .evaluate import eval_formula, models
from .logic import Var, free_vars
from .parser import parse, print_formula
from .perms import Partition, Permutation, parse_perm

SCHEMA_VERSION = 1


@dataclass
class Config:
    max_n: int = 8
    max_ef_k: int = 6
    matrix_cap: int = marg.ENUMERATION_COUNT_CAP
    threads: int = 1
    output: str = "text"


def _config_from(args) -> Config:
    cfg = Config()
    env_n = os.environ.get("PERMLOGIC_MAX_N")
    if env_n:
        cfg.max_n = int(env_n)
    if getattr(args, "max_n", None) is not None:
        cfg.max_n = args.max_n
    if getattr(args, "threads", None) is not None:
        cfg.threads = args.threads
    if getattr(args, "json", False):
        cfg.output = "json"
    return cfg


def _parse_marks(text):
    return [int(part) for part in text.split(",")] if text else []


def _emit(payload: dict, text: str, cfg: Config):
    if cfg.output == "json":
        payload = {"schema": SCHEMA_VERSION, **payload}
        print(json.dumps(payload))
    else:
        print(text)


def cmd_eval(args) -> int:
    cfg = _config_from(args)
    phi = parse(args.formula)
    sigma = parse_perm(args.perm)
    assignment = {}
    if args.assign:
        for piece in args.assign.split(","):
            name, _, pos = piece.partition("=")
            assignment[Var(name.strip())] = sigma.point_at(int(pos))
    value = eval_formula(sigma, phi, assignment)
    _emit({"value": value}, "true" if value else "false", cfg)
    return 0 if value else 1


def cmd_models(args) -> int:
    cfg = _config_from(args)
    phi = parse(args.formula)
    found = models(phi, args.n, cap=cfg.max_n, threads=cfg.threads)
    words = [str(s) for s in found]
    _emit(
        {"n": args.n, "count": len(found), "models": words},
        "\n".join(words) if words else "(none)",
        cfg,
    )
    return 0


def cmd_count(args) -> int:
    cfg = _config_from(args)
    phi = parse(args.formula)
    found = models(phi, args.n, cap=cfg.max_n, threads=cfg.threads)
    _emit({"n": args.n, "count": len(found)}, str(len(found)), cfg)
    return 0


def cmd_ef(args) -> int:
    cfg = _config_from(args)
    alpha = parse_perm(args.perm1)
    beta = parse_perm(args.perm2)
    marks1 = _parse_marks(args.marks1)
    marks2 = _parse_marks(args.marks2)
    if marks1 or marks2:
        wins = ef.duplicator_wins_marked(alpha, marks1, beta, marks2, args.k, max_k=cfg.max_ef_k)
        payload = {"duplicator_wins": wins}
    else:
        wins = ef.duplicator_wins(alpha, beta, args.k, max_k=cfg.max_ef_k)
        payload = {"duplicator_wins": wins}
        if cfg.output == "json":
            payload["distinguishing_depth"] = ef.distinguishing_depth(alpha, beta, args.k)
    _emit(payload, "duplicator" if wins else "spoiler", cfg)
    return 0 if wins else 1


def cmd_sort(args) -> int:
    cfg = _config_from(args)
    op = srt.SortOp.parse(args.op)
    result = srt.apply_op(op, parse_perm(args.perm))
    _emit({"result": str(result)}, str(result), cfg)
    return 0


def cmd_stable(args) -> int:
    from .perms import stable_occurrences

    cfg = _config_from(args)
    occs = stable_occurrences(parse_perm(args.perm), parse_perm(args.pattern))
    _emit(
        {"occurrences": [list(o) for o in occs]},
        "\n".join(",".join(map(str, o)) for o in occs) if occs else "(none)",
        cfg,
    )
    return 0


def cmd_decompose(args) -> int:
    cfg = _config_from(args)
    rows = json.loads(args.matrix)
    terms = marg.cycle_decompose(rows)
    _emit(
        {"terms": [{"cycle": list(c), "coefficient": k} for c, k in terms]},
        "\n".join(f"{k} x cycle({','.join(map(str, c))})" for c, k in terms) or "(zero matrix)",
        cfg,
    )
    return 0


def cmd_expand(args) -> int:
    cfg = _config_from(args)
    pi = parse_perm(args.pattern)
    seq = _parse_marks(args.cycle)
    if args.inflate:
        thetas = [parse_perm(w) for w in args.inflate.split(",")]
        result = marg.expansion_inflated(pi, seq, thetas)
    else:
        result = marg.expansion(pi, seq)
    _emit({"result": str(result)}, str(result), cfg)
    return 0


def _compile_formula(args):
    kind = args.kind
    if kind == "pattern":
        return pat.compile_contains(parse_perm(args.arg))
    if kind == "avoids":
        return pat.compile_avoids([parse_perm(w) for w in args.arg.split(",")])
    if kind == "mesh":
        shaded = [tuple(c) for c in json.loads(args.shaded or "[]")]
        return pat.compile_mesh(pat.MeshPattern(parse_perm(args.arg), shaded))
    if kind == "barred":
        bars = set(_parse_marks(args.bars or ""))
        return pat.compile_barred(pat.BarredPattern(parse_perm(args.arg), bars))
    if kind == "decorated":
        constraints = [
            (tuple(cell), parse_perm(word)) for cell, word in json.loads(args.constraints or "[]")
        ]
        return pat.compile_decorated(pat.DecoratedPattern(parse_perm(args.arg), constraints))
    if kind == "grid":
        rows = [
            [None if entry is None else [parse_perm(w) for w in entry] for entry in row]
            for row in json.loads(args.matrix)
        ]
        return pat.compile_grid(pat.GridSpec(rows))
    if kind == "simple":
        return pat.compile_simple()
    if kind == "plus":
        return pat.compile_plus_decomposable()
    if kind == "minus":
        return pat.compile_minus_decomposable()
    if kind == "sortable":
        ops = [srt.SortOp.parse(o) for o in args.ops.split(",")]
        return srt.compile_sortable(ops)
    if kind == "characteristic":
        return cyc.toto_characteristic_sentence(parse_perm(args.arg))
    if kind == "cycletype":
        lam = Partition(_parse_marks(args.lam))
        if args.theory == "toob":
            return cyc.toob_cycle_type_padded(lam) if args.padded else cyc.toob_cycle_type(lam)
        return cyc.toto_cycle_type_padded(lam) if args.padded else cyc.toto_cycle_type(lam)
    if kind == "fixedpoint":
        return cyc.fixed_point_formula(cyc.ObstructionBounds(args.k, args.m, args.n))
    if kind == "transposition":
        return cyc.transposition_formula(cyc.ObstructionBounds(args.k, args.m, args.n))
    if kind == "stable":
        return cyc.stable_occurrence_formula(parse_perm(args.pattern), args.bound)
    raise ValueError(f"unknown compile kind {kind!r}")


def cmd_compile(args) -> int:
    cfg = _config_from(args)
    phi = _compile_formula(args)
    text = print_formula(phi)
    _emit(
        {"formula": text, "free_vars": sorted(v.name for v in free_vars(phi))},
        text,
        cfg,
    )
    return 0


def cmd_verify(args) -> int:
    cfg = _config_from(args)
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    kwargs = {}
    if args.max_n is not None:
        kwargs["max_n"] = args.max_n
    reports = [
        verify.run_suite(name, threads=cfg.threads, seed=args.seed, timing=not args.no_timing, **kwargs)
        for name in names
    ]
    if cfg.output == "json":
        print(verify.report_json(reports))
    else:
        for report in reports:
            print(verify.render_report(report))
    return 0 if all(r.ok for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="permlogic",
        description="first-order logic engine over finite permutations",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--max-n", type=int, default=None, help="model-search size cap")
    common.add_argument("--threads", type=int, default=None, help="parallelism hint")
    sub = top.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("eval", help="evaluate a formula on a permutation")
    p.add_argument("--formula", required=True)
    p.add_argument("--perm", required=True)
    p.add_argument("--assign", default="", help="free-variable positions, e.g. x=1,y=3")
    p.set_defaults(fn=cmd_eval)

    p = add_parser("models", help="all models of a sentence at size n")
    p.add_argument("--formula", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_models)

    p = add_parser("count", help="count models of a sentence at size n")
    p.add_argument("--formula", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_count)

    p = add_parser("ef", help="play the k-move game on two permutations")
    p.add_argument("perm1")
    p.add_argument("perm2")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--marks1", default="", help="marked positions in perm1")
    p.add_argument("--marks2", default="", help="marked positions in perm2")
    p.set_defaults(fn=cmd_ef)

    p = add_parser("sort", help="apply a sorting operator")
    p.add_argument("--op", required=True, choices=[o.value for o in srt.SortOp])
    p.add_argument("perm")
    p.set_defaults(fn=cmd_sort)

    p = add_parser("stable", help="stable occurrences of a pattern")
    p.add_argument("--pattern", required=True)
    p.add_argument("perm")
    p.set_defaults(fn=cmd_stable)

    p = add_parser("decompose", help="cycle-decompose a balanced matrix")
    p.add_argument("--matrix", required=True, help="JSON rows, bottom to top")
    p.set_defaults(fn=cmd_decompose)

    p = add_parser("expand", help="expansion of a pattern by a cycle")
    p.add_argument("--pattern", required=True)
    p.add_argument("--cycle", required=True)
    p.add_argument("--inflate", default="", help="permutations for the new points")
    p.set_defaults(fn=cmd_expand)

    p = add_parser("compile", help="emit a formula")
    p.add_argument(
        "kind",
        choices=[
            "pattern", "avoids", "mesh", "barred", "decorated", "grid", "simple",
            "plus", "minus", "sortable", "characteristic", "cycletype",
            "fixedpoint", "transposition", "stable",
        ],
    )
    p.add_argument("arg", nargs="?", default="", help="pattern word where applicable")
    p.add_argument("--ops", default="", help="sorting operators, e.g. stack,stack")
    p.add_argument("--shaded", default="", help="mesh cells as JSON, e.g. [[0,2],[1,2]]")
    p.add_argument("--bars", default="", help="barred positions, e.g. 1,3")
    p.add_argument("--constraints", default="", help='decorated cells as JSON, e.g. [[[1,1],"12"]]')
    p.add_argument("--matrix", default="", help="grid entries as JSON rows, top first")
    p.add_argument("--lambda", dest="lam", default="", help="partition parts, e.g. 3,2")
    p.add_argument("--theory", choices=["toto", "toob"], default="toto")
    p.add_argument("--padded", action="store_true")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--pattern", default="")
    p.add_argument("--bound", type=int, default=0)
    p.set_defaults(fn=cmd_compile)

    p = add_parser("verify", help="run oracle-equivalence suites")
    p.add_argument("suite", choices=["all"] + list(verify.SUITES))
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.add_argument("--no-timing", action="store_true", help="zero elapsed_ms for byte-identical reports")
    p.set_defaults(fn=cmd_verify)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PermLogicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

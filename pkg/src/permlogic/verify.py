"""Oracle-equivalence verification suites.

Every suite checks one acceptance property by running a compiled formula or
solver against an independent combinatorial oracle at desk scale, and
reports the number of cases plus a structured failure list.  Suites are
deterministic given their parameters (failures, cases and inputs never
depend on timing or thread count); elapsed_ms is the one field that varies
between runs.
"""
from __future__ import annotations

import itertools
import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from . import cycles as cyc
from . import ef
from . import marginals as marg
from . import patterns as pat
from . import sorting as srt
from .evaluate import CompiledFormula, models
from .logic import Formula, Var, free_vars
from .parser import parse, print_formula
from .perms import (
    Partition,
    Permutation,
    av_set,
    cycle_type,
    dec,
    enumerate_sn,
    inc,
    inflate,
    parse_perm,
    partitions,
    pattern_of,
    stable_occurrences,
)
from .randgen import random_formula, random_sentence

DEFAULT_SEED = 20250810


@dataclass
class SuiteReport:
    suite: str
    cases: int = 0
    failures: list[dict] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, input_, expected, got):
        self.failures.append(
            {"input": str(input_), "expected": str(expected), "got": str(got)}
        )

    def check(self, input_, expected, got) -> bool:
        self.cases += 1
        if expected != got:
            self.fail(input_, expected, got)
            return False
        return True

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "failures": self.failures,
            "elapsed_ms": self.elapsed_ms,
        }


def _map_ordered(fn: Callable, items: Sequence, threads: int) -> list:
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430]


def suite_knuth(max_n: int = 7, threads: int = 1, **_) -> SuiteReport:
    """Stack-sortable models equal the 231-avoiders, sizes 1..max_n."""
    rep = SuiteReport("knuth")
    sentence = srt.compile_sortable([srt.SortOp.STACK])

    def one(n):
        return models(sentence, n), av_set(n, [parse_perm("231")])

    for n, (got, want) in zip(range(1, max_n + 1), _map_ordered(one, range(1, max_n + 1), threads)):
        rep.check(f"models(stack-sortable, {n})", [str(s) for s in want], [str(s) for s in got])
        rep.check(f"count at n={n}", CATALAN[n], len(got))
    return rep


def _sim_sortable(ops, n):
    return [s for s in enumerate_sn(n) if srt.apply_ops(ops, s).word == tuple(range(1, n + 1))]


def suite_west2(max_n: int = 6, threads: int = 1, **_) -> SuiteReport:
    """Twice-stack-sortable models equal the simulator composition."""
    rep = SuiteReport("west2")
    ops = [srt.SortOp.STACK, srt.SortOp.STACK]
    sentence = srt.compile_sortable(ops)
    for n in range(1, max_n + 1):
        rep.check(
            f"n={n}",
            [str(s) for s in _sim_sortable(ops, n)],
            [str(s) for s in models(sentence, n)],
        )
    return rep


def suite_west3(max_n: int = 5, threads: int = 1, **_) -> SuiteReport:
    """Three-fold stack sorting smoke check."""
    rep = SuiteReport("west3")
    ops = [srt.SortOp.STACK] * 3
    sentence = srt.compile_sortable(ops)
    for n in range(1, max_n + 1):
        rep.check(
            f"n={n}",
            [str(s) for s in _sim_sortable(ops, n)],
            [str(s) for s in models(sentence, n)],
        )
    return rep


def suite_bubble_queue(max_n: int = 7, threads: int = 1, **_) -> SuiteReport:
    """Bubble models are Av(231, 321), queue models are Av(321), and
    bubble-sortable = stack-sortable intersect queue-sortable."""
    rep = SuiteReport("bubble_queue")
    b = srt.compile_sortable([srt.SortOp.BUBBLE])
    q = srt.compile_sortable([srt.SortOp.QUEUE])
    s = srt.compile_sortable([srt.SortOp.STACK])
    for n in range(1, max_n + 1):
        bm = models(b, n)
        qm = models(q, n)
        sm = models(s, n)
        rep.check(
            f"bubble n={n}",
            [str(x) for x in av_set(n, [parse_perm("231"), parse_perm("321")])],
            [str(x) for x in bm],
        )
        rep.check(
            f"queue n={n}",
            [str(x) for x in av_set(n, [parse_perm("321")])],
            [str(x) for x in qm],
        )
        rep.check(
            f"intersection n={n}",
            sorted(set(str(x) for x in sm) & set(str(x) for x in qm)),
            sorted(str(x) for x in bm),
        )
    return rep


def suite_relations(max_n: int = 7, threads: int = 1, **_) -> SuiteReport:
    """The relation formulas induce strict total orders matching the
    operational simulators pointwise."""
    rep = SuiteReport("relations")

    def one(n):
        bad = []
        for sigma in enumerate_sn(n):
            for op in srt.SortOp:
                got = srt.relation_order(sigma, op)
                want = srt.apply_op(op, sigma)
                if got != want:
                    bad.append((str(sigma), op.value, str(want), str(got)))
        return n, bad

    for n, bad in _map_ordered(one, range(0, max_n + 1), threads):
        rep.cases += 1
        for sigma, op, want, got in bad:
            rep.fail(f"{op}({sigma})", want, got)
    return rep


def suite_ef_monotone(threads: int = 1, **_) -> SuiteReport:
    """Monotone permutations of size at least 2^k - 1 are k-equivalent, and
    the bound is tight: sizes 2^k - 2 vs 2^k - 1 are told apart at depth
    exactly k."""
    rep = SuiteReport("ef_monotone")
    for k in (2, 3):
        lo, hi = 2**k - 1, 2**k + 2
        for m in range(lo, hi + 1):
            for n in range(lo, hi + 1):
                rep.check(f"inc_{m} ~_{k} inc_{n}", True, ef.duplicator_wins(inc(m), inc(n), k))
                rep.check(f"dec_{m} ~_{k} dec_{n}", True, ef.duplicator_wins(dec(m), dec(n), k))
        rep.check(
            f"depth(inc_{2**k - 2}, inc_{2**k - 1})",
            k,
            ef.distinguishing_depth(inc(2**k - 2), inc(2**k - 1), 6),
        )
        rep.check(
            f"depth(dec_{2**k - 2}, dec_{2**k - 1})",
            k,
            ef.distinguishing_depth(dec(2**k - 2), dec(2**k - 1), 6),
        )
    return rep


def _random_perm(rng: random.Random, n: int) -> Permutation:
    word = list(range(1, n + 1))
    rng.shuffle(word)
    return Permutation(word)


def _inflation_instance(rng: random.Random):
    """A random skeleton with block pairs built to be k-equivalent: monotone
    runs over the 2^k - 1 threshold for k = 2, equal blocks for k = 3
    (distinct blocks of size <= 6 are not 3-equivalent)."""
    k = 2 if rng.random() < 0.6 else 3
    size = rng.randint(1, 4)
    alpha = _random_perm(rng, size)
    left, right = [], []
    for _ in range(size):
        if k == 2 and rng.random() < 0.7:
            shape = inc if rng.random() < 0.5 else dec
            left.append(shape(rng.randint(3, 5)))
            right.append(shape(rng.randint(3, 5)))
        else:
            block = _random_perm(rng, rng.randint(1, 4))
            left.append(block)
            right.append(block)
    return k, alpha, left, right


def suite_ef_inflation(instances: int = 200, seed: int = DEFAULT_SEED, threads: int = 1, **_) -> SuiteReport:
    """Blockwise k-equivalence transfers to inflations."""
    rep = SuiteReport("ef_inflation")
    rng = random.Random(seed)
    jobs = [_inflation_instance(rng) for _ in range(instances)]

    def one(job):
        k, alpha, left, right = job
        blocks_ok = all(
            ef.duplicator_wins(a, b, k) for a, b in zip(left, right)
        )
        inflated = ef.duplicator_wins(inflate(alpha, left), inflate(alpha, right), k)
        return k, alpha, left, right, blocks_ok, inflated

    for k, alpha, left, right, blocks_ok, inflated in _map_ordered(one, jobs, threads):
        label = f"{alpha}[{','.join(map(str, left))}] ~_{k} {alpha}[{','.join(map(str, right))}]"
        rep.check(f"blocks of {label}", True, blocks_ok)
        rep.check(label, True, inflated)
    return rep


def suite_ef_fixed_point_witness(threads: int = 1, **_) -> SuiteReport:
    """The classic fixed-point inexpressibility witnesses: equivalent pairs
    of which exactly one member has the property."""
    rep = SuiteReport("ef_fixed_point_witness")
    rep.check("dec_3 ~_2 dec_4", True, ef.duplicator_wins(dec(3), dec(4), 2))
    fp = lambda s: sum(1 for i in range(1, len(s) + 1) if s(i) == i)
    rep.check("exactly one of dec_3, dec_4 has a fixed point", 1, (fp(dec(3)) > 0) + (fp(dec(4)) > 0))
    p33 = inflate(dec(3), [inc(3), inc(1), inc(3)])
    p34 = inflate(dec(3), [inc(3), inc(1), inc(4)])
    rep.check(
        "(p33, center) ~_2 (p34, center)",
        True,
        ef.duplicator_wins_marked(p33, [4], p34, [4], 2),
    )
    rep.check("center of p33 fixed, of p34 not", (True, False), (p33(4) == 4, p34(4) == 4))
    return rep


def suite_cycle_type_cross(max_size: int = 4, max_n: int = 6, threads: int = 1, **_) -> SuiteReport:
    """The order-signature and bijection-signature sentences for exact and
    padded cycle types have identical model sets, matching the brute-force
    cycle-type oracle."""
    rep = SuiteReport("cycle_type_cross")
    lams = [lam for size in range(max_size + 1) for lam in partitions(size)]

    def one(lam):
        results = []
        exact_to = cyc.toto_cycle_type(lam)
        exact_ob = cyc.toob_cycle_type(lam)
        padded_to = cyc.toto_cycle_type_padded(lam)
        padded_ob = cyc.toob_cycle_type_padded(lam)
        for n in range(max_n + 1):
            oracle = [str(s) for s in enumerate_sn(n) if cycle_type(s) == lam]
            padded_oracle = [
                str(s) for s in enumerate_sn(n) if cyc.has_padded_cycle_type(s, lam)
            ]
            results.append(
                (
                    n,
                    oracle,
                    [str(s) for s in models(exact_to, n)],
                    [str(s) for s in models(exact_ob, n)],
                    padded_oracle,
                    [str(s) for s in models(padded_to, n)],
                    [str(s) for s in models(padded_ob, n)],
                )
            )
        return lam, results

    for lam, results in _map_ordered(one, lams, threads):
        for n, oracle, to_m, ob_m, padded_oracle, pto_m, pob_m in results:
            rep.check(f"exact {lam} TOTO n={n}", oracle, to_m)
            rep.check(f"exact {lam} TOOB n={n}", oracle, ob_m)
            rep.check(f"padded {lam} TOTO n={n}", padded_oracle, pto_m)
            rep.check(f"padded {lam} TOOB n={n}", padded_oracle, pob_m)
    return rep


def suite_stability_marginals(max_n: int = 6, max_k: int = 3, threads: int = 1, **_) -> SuiteReport:
    """An occurrence is stable exactly when its region matrix has matching
    marginals; includes the worked size-20 example."""
    rep = SuiteReport("stability_marginals")

    def one(n):
        bad = []
        for sigma in enumerate_sn(n):
            word = sigma.word
            for k in range(1, min(max_k, n) + 1):
                for occ in itertools.combinations(range(1, n + 1), k):
                    stable = set(word[p - 1] for p in occ) == set(occ)
                    marginals = marg.has_matching_marginals(marg.region_matrix(sigma, occ))
                    if stable != marginals:
                        bad.append((str(sigma), occ, stable, marginals))
        return bad

    for bad in _map_ordered(one, range(0, max_n + 1), threads):
        rep.cases += 1
        for sigma, occ, stable, marginals in bad:
            rep.fail(f"{sigma} at {occ}", f"stable={stable}", f"marginals={marginals}")

    coords = [
        (0.1, 2.8), (0.3, 3.9), (0.5, 0.6), (0.7, 3.2), (0.9, 0.5), (1.0, 2.0),
        (1.2, 1.1), (1.4, 2.5), (1.6, 2.7), (1.8, 0.4), (2.0, 3.0), (2.25, 2.2),
        (2.5, 1.3), (2.75, 1.6), (3.0, 1.0), (3.1, 1.8), (3.3, 0.2), (3.5, 2.4),
        (3.7, 1.4), (3.9, 2.1),
    ]
    coords.sort()
    ys = sorted(c[1] for c in coords)
    sigma20 = Permutation(ys.index(c[1]) + 1 for c in coords)
    matrix = marg.region_matrix(sigma20, (6, 11, 15))
    rep.check(
        "worked size-20 example matrix",
        ((2, 1, 0, 1), (0, 1, 2, 2), (1, 2, 1, 2), (2, 0, 0, 0)),
        matrix,
    )
    rep.check("worked example is not stable", False, marg.has_matching_marginals(matrix))
    return rep


def suite_decomposition(trials: int = 500, seed: int = DEFAULT_SEED, threads: int = 1, **_) -> SuiteReport:
    """Cycle decomposition recomposes, and expansions realize their cycle
    matrices around a stable occurrence."""
    rep = SuiteReport("decomposition")
    rng = random.Random(seed)
    for _ in range(trials):
        m = rng.randint(1, 6)
        pool = marg.nontrivial_cycles(m) + [(v,) for v in range(1, m + 1)]
        terms = [(rng.choice(pool), rng.randint(1, 3)) for _ in range(rng.randint(0, 4))]
        matrix = marg.recompose(terms, m)
        back = marg.recompose(marg.cycle_decompose(matrix), m)
        rep.check(f"recompose {matrix}", matrix, back)
    rep.check(
        "expansion of 2413 by (1,2,5)",
        "7416253",
        str(marg.expansion(parse_perm("2413"), (1, 2, 5))),
    )
    for k in (1, 2, 3):
        for pi in enumerate_sn(k):
            for seq in marg._simple_cycles(k + 1):
                e = marg.expansion(pi, seq)
                occ = marg.expansion_occurrence(pi, seq)
                rep.check(
                    f"region matrix of E({pi}, {seq})",
                    marg.cycle_matrix(seq, k + 1),
                    marg.region_matrix(e, occ),
                )
                rep.check(f"E({pi}, {seq}) occurrence is stable", True, occ in stable_occurrences(e, pi))
    return rep


def suite_bounded_counts(max_n: int = 7, stable_max_n: int = 6, threads: int = 1, **_) -> SuiteReport:
    """Class-restricted count formulas agree with the fixed-point,
    transposition and stable-occurrence oracles on every class member."""
    rep = SuiteReport("bounded_counts")
    x, y = Var("x"), Var("y")

    fp = CompiledFormula(cyc.fixed_point_formula(cyc.ObstructionBounds(3, 1, 1)), (x,))
    basis_fp = [parse_perm("321")]
    bad = 0
    for n in range(1, max_n + 1):
        for sigma in av_set(n, basis_fp):
            pts = [tuple(p) for p in sigma.points]
            for i in range(1, n + 1):
                if fp.run(sigma, (pts[i - 1],)) != (sigma(i) == i):
                    bad += 1
                    rep.fail(f"fixed point {sigma} @ {i}", sigma(i) == i, not (sigma(i) == i))
    rep.cases += 1

    tr = CompiledFormula(cyc.transposition_formula(cyc.ObstructionBounds(3, 2, 2)), (x, y))
    basis_tr = [parse_perm("321"), parse_perm("3412")]

    def one_tr(n):
        bad = []
        for sigma in av_set(n, basis_tr):
            pairs = set(cyc.transpositions(sigma))
            pts = [tuple(p) for p in sigma.points]
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if i == j:
                        continue
                    want = (min(i, j), max(i, j)) in pairs
                    if tr.run(sigma, (pts[i - 1], pts[j - 1])) != want:
                        bad.append((str(sigma), (i, j), want))
        return bad

    for bad in _map_ordered(one_tr, range(1, max_n + 1), threads):
        rep.cases += 1
        for sigma, pair, want in bad:
            rep.fail(f"transposition {sigma} @ {pair}", want, not want)

    for k in (1, 2, 3):
        for pi in enumerate_sn(k):
            observed = 0
            for n in range(k, stable_max_n + 1):
                for sigma in enumerate_sn(n):
                    for occ in stable_occurrences(sigma, pi):
                        a = marg.region_matrix(sigma, occ)
                        observed = max(
                            observed,
                            sum(a[i][j] for i in range(k + 1) for j in range(k + 1) if i != j),
                        )
            formula = cyc.stable_occurrence_formula(pi, observed)
            comp = CompiledFormula(formula, pat.default_vars(k))
            bad = 0
            for n in range(0, stable_max_n + 1):
                for sigma in enumerate_sn(n):
                    expected = set(stable_occurrences(sigma, pi))
                    pts = [tuple(p) for p in sigma.points]
                    for occ in itertools.combinations(range(1, n + 1), k):
                        got = comp.run(sigma, tuple(pts[p - 1] for p in occ))
                        if got != (occ in expected):
                            bad += 1
                            rep.fail(f"stable {pi} in {sigma} @ {occ}", occ in expected, got)
            rep.cases += 1
    return rep


def suite_substitution(sentences: int = 100, max_n: int = 5, seed: int = DEFAULT_SEED, threads: int = 1, **_) -> SuiteReport:
    """Preimage substitution semantics: evaluating the substituted sentence
    on sigma equals evaluating the original on op(sigma)."""
    rep = SuiteReport("substitution")
    rng = random.Random(seed)
    corpus = [random_sentence(rng, quant_budget=2, depth=3) for _ in range(sentences)]
    perms = [s for n in range(0, max_n + 1) for s in enumerate_sn(n)]

    def one(phi):
        bad = []
        for op in srt.SortOp:
            substituted = CompiledFormula(srt.compile_preimage(op, phi), ())
            original = CompiledFormula(phi, ())
            for sigma in perms:
                if substituted.run(sigma, ()) != original.run(srt.apply_op(op, sigma), ()):
                    bad.append((op.value, str(sigma)))
        return phi, bad

    for phi, bad in _map_ordered(one, corpus, threads):
        rep.cases += 1
        for op, sigma in bad:
            rep.fail(f"{op} preimage of {print_formula(phi)} on {sigma}", True, False)
    return rep


def compiler_corpus() -> list[Formula]:
    """One output per compiler, as exercised across the other suites."""
    out = [
        srt.identity_sentence(),
        srt.compile_sortable([srt.SortOp.STACK]),
        srt.compile_sortable([srt.SortOp.STACK, srt.SortOp.STACK]),
        srt.compile_sortable([srt.SortOp.STACK] * 3),
        srt.compile_sortable([srt.SortOp.BUBBLE]),
        srt.compile_sortable([srt.SortOp.QUEUE]),
        srt.compile_sortable([srt.SortOp.BUBBLE, srt.SortOp.QUEUE]),
    ]
    out.extend(srt.relation_formula(op).formula for op in srt.SortOp)
    p231 = parse_perm("231")
    out += [
        pat.compile_classical(p231),
        pat.compile_classical(parse_perm("1")),
        pat.compile_contains(p231),
        pat.compile_avoids([p231]),
        pat.compile_avoids([parse_perm("21")]),
        pat.compile_mesh(pat.MeshPattern(parse_perm("132"), {(0, 2), (1, 2), (2, 2)})),
        pat.compile_barred(pat.BarredPattern(parse_perm("1324"), {1, 3})),
        pat.compile_decorated(
            pat.DecoratedPattern(parse_perm("21"), [((1, 1), parse_perm("12"))])
        ),
        pat.compile_grid(
            pat.GridSpec(
                [
                    [[parse_perm("123")], None],
                    [[parse_perm("21")], [parse_perm("12")]],
                ]
            )
        ),
        pat.compile_simple(),
        pat.compile_plus_decomposable(),
        pat.compile_minus_decomposable(),
    ]
    out += [
        cyc.toob_has_kcycle(1),
        cyc.toob_has_kcycle(2),
        cyc.toob_has_kcycle(3),
        cyc.toob_cycle_type(Partition([2, 1])),
        cyc.toob_cycle_type_padded(Partition([2])),
        cyc.toto_characteristic_sentence(p231),
        cyc.toto_cycle_type(Partition([3])),
        cyc.toto_cycle_type_padded(Partition([2])),
        cyc.fixed_point_formula(cyc.ObstructionBounds(3, 1, 1)),
        cyc.transposition_formula(cyc.ObstructionBounds(3, 2, 2)),
        cyc.stable_occurrence_formula(p231, 4),
        cyc.cycle_formula(2, 4),
    ]
    return out


def suite_parser_roundtrip(randoms: int = 1000, seed: int = DEFAULT_SEED, threads: int = 1, **_) -> SuiteReport:
    """print then parse is the identity on compiler outputs and on random
    formulas."""
    rep = SuiteReport("parser_roundtrip")
    for i, phi in enumerate(compiler_corpus()):
        rep.check(f"compiler output #{i}", phi, parse(print_formula(phi)))
    rng = random.Random(seed)
    scope = (Var("a"), Var("b"))
    for i in range(randoms):
        signature = "TO" if rng.random() < 0.7 else "OB"
        phi = random_formula(rng, signature=signature, quant_budget=3, depth=5, scope=scope)
        rep.check(f"random formula #{i}", phi, parse(print_formula(phi)))
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "knuth": suite_knuth,
    "west2": suite_west2,
    "west3": suite_west3,
    "bubble_queue": suite_bubble_queue,
    "relations": suite_relations,
    "ef_monotone": suite_ef_monotone,
    "ef_inflation": suite_ef_inflation,
    "ef_fixed_point_witness": suite_ef_fixed_point_witness,
    "cycle_type_cross": suite_cycle_type_cross,
    "stability_marginals": suite_stability_marginals,
    "decomposition": suite_decomposition,
    "bounded_counts": suite_bounded_counts,
    "substitution": suite_substitution,
    "parser_roundtrip": suite_parser_roundtrip,
}


def run_suite(name: str, threads: int = 1, seed: int = DEFAULT_SEED, timing: bool = True, **kwargs) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; available: {', '.join(SUITES)}")
    start = time.monotonic()
    report = SUITES[name](threads=threads, seed=seed, **kwargs)
    report.elapsed_ms = int((time.monotonic() - start) * 1000) if timing else 0
    return report


def run_all(threads: int = 1, seed: int = DEFAULT_SEED, timing: bool = True) -> list[SuiteReport]:
    return [run_suite(name, threads=threads, seed=seed, timing=timing) for name in SUITES]


def render_report(report: SuiteReport) -> str:
    status = "PASS" if report.ok else "FAIL"
    line = f"{status} {report.suite}: {report.cases} cases, {len(report.failures)} failures ({report.elapsed_ms} ms)"
    for failure in report.failures[:20]:
        line += f"\n  input={failure['input']} expected={failure['expected']} got={failure['got']}"
    return line


def report_json(reports: Iterable[SuiteReport]) -> str:
    return json.dumps({"schema": 1, "reports": [r.to_dict() for r in reports]}, indent=2)

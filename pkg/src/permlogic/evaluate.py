"""Evaluate formulas on permutations and enumerate the models of a sentence.

Interpretation on a permutation sigma, whose domain is the diagram points
(i, sigma(i)):

- order atoms: a <P b iff position(a) < position(b), and a <V b iff
  value(a) < value(b);
- bijection atom: a R b iff sigma(position(a)) = position(b), which for
  diagram points reduces to value(a) == position(b);
- equality is point equality.

Quantifiers range over all n points in position order, and conjunction,
disjunction and both quantifiers short-circuit.  Worst-case cost is
O(n^qdepth(phi) * |phi|).

A formula is compiled once into nested closures reading a slot-indexed
environment; `models` reuses the compiled form across all of S_n.  When a
formula shares subtrees (compilers emitting a disjunction over count
profiles do), an optional truth cache keyed by (subformula, relevant bound
points) avoids recomputing shared quantified subformulas; it never changes
results.
"""
from __future__ import annotations

from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import NotASentence, SizeCapExceeded, UnboundVariable
from .logic import (
    And,
    ATOMS,
    BINARIES,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    LtP,
    LtV,
    Not,
    Or,
    Rel,
    Var,
    free_vars,
)
from .perms import Permutation, enumerate_sn

MODELS_CAP = 8

Assignment = Mapping[Var, tuple]


def _has_shared_nodes(phi: Formula) -> bool:
    seen = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, ATOMS):
            continue
        if id(node) in seen:
            return True
        seen.add(id(node))
        if isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, BINARIES):
            stack.extend((node.left, node.right))
        else:
            stack.append(node.body)
    return False


class CompiledFormula:
    """A formula fixed together with an ordering of its free variables,
    ready to run against any permutation."""

    def __init__(self, phi: Formula, free_order: Sequence[Var], cache: Optional[bool] = None):
        self.formula = phi
        self.free_order = tuple(free_order)
        missing = free_vars(phi) - set(self.free_order)
        if missing:
            raise UnboundVariable(f"no slot for free variable(s) {sorted(v.name for v in missing)}")
        if cache is None:
            cache = _has_shared_nodes(phi)
        self._cache_enabled = cache
        slots = {v: i for i, v in enumerate(self.free_order)}
        self._fn, _ = self._compile(phi, slots, len(self.free_order))

    def run(self, sigma: Permutation, args: Sequence[tuple]) -> bool:
        if len(args) != len(self.free_order):
            raise UnboundVariable("assignment does not cover the free variables")
        env = list(args)
        points = tuple((p, v) for p, v in sigma.points)
        return self._fn(env, points, {} if self._cache_enabled else None)

    # Compilation returns (closure, used_slots); closures take
    # (env, points, cache) so one compiled object serves every permutation.
    # `depth` is the next free environment slot: the count of enclosing
    # quantifiers plus free-variable slots, not the number of distinct names
    # (shadowed names reuse a name but never a slot).

    def _compile(self, phi: Formula, slots: dict[Var, int], depth: int):
        cls = type(phi)
        if cls in (Eq, LtP, LtV, Rel):
            i, j = slots[phi.left], slots[phi.right]
            used = frozenset((i, j))
            if cls is Eq:
                return (lambda e, pts, c: e[i] == e[j]), used
            if cls is LtP:
                return (lambda e, pts, c: e[i][0] < e[j][0]), used
            if cls is LtV:
                return (lambda e, pts, c: e[i][1] < e[j][1]), used
            return (lambda e, pts, c: e[i][1] == e[j][0]), used
        if cls is Not:
            f, used = self._compile(phi.child, slots, depth)
            return (lambda e, pts, c: not f(e, pts, c)), used
        if cls in (And, Or, Implies, Iff):
            lf, lu = self._compile(phi.left, slots, depth)
            rf, ru = self._compile(phi.right, slots, depth)
            used = lu | ru
            if cls is And:
                return (lambda e, pts, c: lf(e, pts, c) and rf(e, pts, c)), used
            if cls is Or:
                return (lambda e, pts, c: lf(e, pts, c) or rf(e, pts, c)), used
            if cls is Implies:
                return (lambda e, pts, c: not lf(e, pts, c) or rf(e, pts, c)), used
            return (lambda e, pts, c: lf(e, pts, c) == rf(e, pts, c)), used
        # quantifiers
        slot = depth
        inner = dict(slots)
        inner[phi.var] = slot
        body, bu = self._compile(phi.body, inner, depth + 1)
        used = frozenset(s for s in bu if s != slot)
        existential = cls is Exists

        def quantify(e, pts, c):
            e.append(None)
            hit = False
            for p in pts:
                e[slot] = p
                if body(e, pts, c):
                    hit = True
                    break
            del e[slot:]
            return hit

        if not existential:
            def quantify(e, pts, c):  # noqa: F811 - forall twin of the above
                e.append(None)
                ok = True
                for p in pts:
                    e[slot] = p
                    if not body(e, pts, c):
                        ok = False
                        break
                del e[slot:]
                return ok

        if not self._cache_enabled:
            return quantify, used

        node_key = id(phi)
        relevant = tuple(sorted(used))

        def cached(e, pts, c):
            if c is None:
                return quantify(e, pts, c)
            key = (node_key, tuple(e[s] for s in relevant))
            hit = c.get(key)
            if hit is None:
                hit = quantify(e, pts, c)
                c[key] = hit
            return hit

        return cached, used


def eval_formula(
    sigma: Permutation,
    phi: Formula,
    assignment: Optional[Assignment] = None,
    cache: Optional[bool] = None,
) -> bool:
    """Truth of phi on sigma under a partial map from variables to points.

    Raises UnboundVariable when a free variable has no assigned point, and
    rejects points outside sigma's diagram.
    """
    assignment = assignment or {}
    order = sorted(free_vars(phi), key=lambda v: v.name)
    args = []
    point_set = set((p, v) for p, v in sigma.points)
    for v in order:
        if v not in assignment:
            raise UnboundVariable(f"free variable {v.name} is not assigned")
        pt = tuple(assignment[v])
        if pt not in point_set:
            raise UnboundVariable(f"{pt} is not a point of the permutation")
        args.append(pt)
    return CompiledFormula(phi, order, cache=cache).run(sigma, args)


def models(
    phi: Formula,
    n: int,
    cap: int = MODELS_CAP,
    cache: Optional[bool] = None,
    threads: int = 1,
) -> list[Permutation]:
    """All sigma in S_n satisfying the sentence phi, in word order.

    The search may be sharded across threads; the output order is fixed
    regardless.
    """
    if free_vars(phi):
        raise NotASentence(f"free variables {sorted(v.name for v in free_vars(phi))}")
    if n > cap:
        raise SizeCapExceeded(f"model search at size {n} exceeds the cap {cap}")
    compiled = CompiledFormula(phi, (), cache=cache)

    def check(sigma: Permutation) -> bool:
        return compiled.run(sigma, ())

    perms = list(enumerate_sn(n))
    if threads <= 1:
        return [sigma for sigma in perms if check(sigma)]

    from concurrent.futures import ThreadPoolExecutor

    chunk = max(1, len(perms) // (threads * 4))
    pieces = [perms[i : i + chunk] for i in range(0, len(perms), chunk)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = pool.map(lambda piece: [s for s in piece if check(s)], pieces)
        out: list[Permutation] = []
        for part in results:
            out.extend(part)
        return out


def count_models(phi: Formula, n: int, cap: int = MODELS_CAP, cache: Optional[bool] = None) -> int:
    return len(models(phi, n, cap=cap, cache=cache))

"""Ehrenfeucht-Fraissé games on permutations: decide whether Duplicator has
a winning strategy in the k-move game, plain or with marked prefixes.

A game state is the set of chosen pairs (a, b) with a from the left
permutation and b from the right one, plus the rounds remaining.  Duplicator
wins from a state when the pairs form a partial isomorphism (the map a -> b
preserves position order, value order and equality) and either no rounds
remain or every Spoiler choice on either side admits a response keeping a
winning state.

The search memoizes on the exact state: the pair set in canonical (sorted)
order and the rounds left.  The game value only depends on that set, not on
the order the pairs were chosen in, so sorting is a sound canonicalization.
Responses are tried nearest-first (by normalized position/value rank), which
finds Duplicator's mirror-like strategies quickly without affecting the
result.  Coarser state keys based on gap cardinalities are not sound in
general and are not used.
"""
from __future__ import annotations

from typing import Optional, Sequence, Union

from .errors import SizeCapExceeded, TupleLengthMismatch
from .perms import Permutation, Point

DEFAULT_MAX_K = 6
DEFAULT_MAX_TOTAL = 40

_PointLike = Union[Point, tuple, int]


def _as_points(sigma: Permutation, marks: Sequence[_PointLike]) -> tuple[tuple[int, int], ...]:
    out = []
    for m in marks:
        if isinstance(m, int):
            out.append(tuple(sigma.point_at(m)))
        else:
            p = tuple(m)
            if tuple(sigma.point_at(p[0])) != p:
                raise ValueError(f"{p} is not a point of {sigma}")
            out.append(p)
    return tuple(out)


def _compatible(a, b, a2, b2) -> bool:
    if (a == a2) != (b == b2):
        return False
    if a == a2:
        return True
    return (a[0] < a2[0]) == (b[0] < b2[0]) and (a[1] < a2[1]) == (b[1] < b2[1])


class _Solver:
    def __init__(self, left: Permutation, right: Permutation):
        self.left_pts = tuple((p, v) for p, v in left.points)
        self.right_pts = tuple((p, v) for p, v in right.points)
        self.memo: dict[tuple, bool] = {}
        self._order: dict[tuple[bool, tuple[int, int]], tuple] = {}

    def _responses(self, a, from_left: bool):
        """Candidate responses sorted by closeness in normalized ranks."""
        key = (from_left, a)
        cached = self._order.get(key)
        if cached is None:
            src = self.left_pts if from_left else self.right_pts
            dst = self.right_pts if from_left else self.left_pts
            ns, nd = len(src) + 1, len(dst) + 1
            ap, av = a[0] / ns, a[1] / ns
            cached = tuple(
                sorted(dst, key=lambda b: abs(ap - b[0] / nd) + abs(av - b[1] / nd))
            )
            self._order[key] = cached
        return cached

    @staticmethod
    def _extend(pairs, a, b):
        """The state after adding (a, b), or None if it breaks the partial
        isomorphism.  Re-picking a chosen point keeps the state unchanged."""
        for a2, b2 in pairs:
            if not _compatible(a, b, a2, b2):
                return None
            if a == a2:
                return pairs
        return tuple(sorted(pairs + ((a, b),)))

    def win(self, pairs, rounds: int) -> bool:
        if rounds == 0:
            return True
        key = (pairs, rounds)
        known = self.memo.get(key)
        if known is not None:
            return known
        result = True
        for a in self.left_pts:
            if not any(
                (np := self._extend(pairs, a, b)) is not None and self.win(np, rounds - 1)
                for b in self._responses(a, True)
            ):
                result = False
                break
        if result:
            for b in self.right_pts:
                if not any(
                    (np := self._extend(pairs, a, b)) is not None
                    and self.win(np, rounds - 1)
                    for a in self._responses(b, False)
                ):
                    result = False
                    break
        self.memo[key] = result
        return result


def _check_caps(alpha: Permutation, beta: Permutation, k: int, max_k: int, max_total: int):
    if k < 0:
        raise ValueError("the number of rounds must be nonnegative")
    if k > max_k:
        raise SizeCapExceeded(f"game depth {k} exceeds the cap {max_k}")
    if len(alpha) + len(beta) > max_total:
        raise SizeCapExceeded(
            f"combined size {len(alpha) + len(beta)} exceeds the cap {max_total}"
        )


def duplicator_wins(
    alpha: Permutation,
    beta: Permutation,
    k: int,
    max_k: int = DEFAULT_MAX_K,
    max_total: int = DEFAULT_MAX_TOTAL,
) -> bool:
    """True iff Duplicator has a winning strategy in the k-move game.

    >>> from .perms import inc
    >>> duplicator_wins(inc(3), inc(4), 2)
    True
    >>> duplicator_wins(inc(1), inc(2), 2)
    False
    """
    _check_caps(alpha, beta, k, max_k, max_total)
    return _Solver(alpha, beta).win((), k)


def duplicator_wins_marked(
    alpha: Permutation,
    marks_alpha: Sequence[_PointLike],
    beta: Permutation,
    marks_beta: Sequence[_PointLike],
    k: int,
    max_k: int = DEFAULT_MAX_K,
    max_total: int = DEFAULT_MAX_TOTAL,
) -> bool:
    """The k-move game started from the forced prefix (marks_alpha[i] paired
    with marks_beta[i]); marks may be positions or points."""
    if len(marks_alpha) != len(marks_beta):
        raise TupleLengthMismatch(
            f"{len(marks_alpha)} marks on the left, {len(marks_beta)} on the right"
        )
    _check_caps(alpha, beta, k, max_k, max_total)
    ma = _as_points(alpha, marks_alpha)
    mb = _as_points(beta, marks_beta)
    pairs: tuple = ()
    solver = _Solver(alpha, beta)
    for a, b in zip(ma, mb):
        pairs = solver._extend(pairs, a, b)
        if pairs is None:
            return False  # the prefix itself is not a partial isomorphism
    return solver.win(pairs, k)


def distinguishing_depth(
    alpha: Permutation,
    beta: Permutation,
    max_k: int,
    max_total: int = DEFAULT_MAX_TOTAL,
) -> Optional[int]:
    """The smallest k <= max_k at which Spoiler wins, or None when the two
    permutations are indistinguishable up to max_k.  Spoiler's wins are
    monotone in k, so the first failure is the answer."""
    solver = _Solver(alpha, beta)
    _check_caps(alpha, beta, max_k, max_k, max_total)
    for k in range(max_k + 1):
        if not solver.win((), k):
            return k
    return None

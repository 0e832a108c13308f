"""Finite permutations in one-line notation, with the combinatorial oracles
used as ground truth throughout the package.

Conventions:

- A permutation of size n is a rearrangement of 1..n, stored as a tuple
  (the word sigma(1), ..., sigma(n)).  The empty permutation is allowed.
- Positions and values are 1-based everywhere.
- The diagram of sigma is the point set {(i, sigma(i))}; `Point` is a
  (position, value) pair.
- As a bijection, sigma maps i to sigma(i) = word[i-1].

Text format: a compact digit string for n <= 9 (e.g. "35142"), otherwise
comma-separated integers (e.g. "10,3,1,...").  The empty string denotes the
empty permutation.
"""
from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    ArityMismatch,
    EmptyBlock,
    IndexOutOfRange,
    InvalidOccurrence,
    InvalidWord,
    SizeCapExceeded,
)

ENUMERATION_CAP = 9


class Point(NamedTuple):
    """A diagram point (position, value) of some permutation."""

    position: int
    value: int


class Partition:
    """An integer partition: a nonincreasing tuple of positive parts.

    Input parts are normalized to nonincreasing order, so a partition is
    identified with all rearrangements of its parts.

    >>> Partition([2, 3, 1]).parts
    (3, 2, 1)
    >>> Partition([3, 2]).size, len(Partition([3, 2]))
    (5, 2)
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        ps = tuple(sorted((int(p) for p in parts), reverse=True))
        if ps and ps[-1] < 1:
            raise ValueError(f"partition parts must be positive, got {ps}")
        object.__setattr__(self, "parts", ps)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def ones(self) -> int:
        return sum(1 for p in self.parts if p == 1)

    def padded(self, k: int) -> "Partition":
        """The partition with k extra parts equal to 1 (lambda union (1^k))."""
        return Partition(self.parts + (1,) * k)

    def union(self, other: "Partition") -> "Partition":
        return Partition(self.parts + other.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(("Partition", self.parts))

    def __repr__(self):
        return f"Partition({list(self.parts)})"


def partitions(n: int) -> Iterator[Partition]:
    """All partitions of n, largest-first part order, lexicographically
    decreasing.  partitions(0) yields the empty partition."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(rest, maxpart):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, maxpart), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    for parts in gen(n, n if n else 1):
        yield Partition(parts)


class Permutation:
    """A finite permutation stored as its one-line word.

    >>> Permutation([3, 5, 1, 4, 2])
    Permutation('35142')
    >>> len(Permutation([])), len(Permutation([1]))
    (0, 1)
    >>> Permutation([3, 5, 1, 4, 2])(1)
    3
    """

    def __init__(self, word: Iterable[int]):
        w = tuple(int(v) for v in word)
        n = len(w)
        seen = [False] * n
        for v in w:
            if not 1 <= v <= n or seen[v - 1]:
                raise InvalidWord(f"{w} is not a rearrangement of 1..{n}")
            seen[v - 1] = True
        self.word = w

    def __len__(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        """The image sigma(i) of a 1-based position."""
        if not 1 <= i <= len(self.word):
            raise IndexOutOfRange(f"position {i} outside 1..{len(self.word)}")
        return self.word[i - 1]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.word == other.word

    def __lt__(self, other):
        return self.word < other.word

    def __hash__(self):
        return hash(self.word)

    def __repr__(self):
        return f"Permutation({str(self)!r})"

    def __str__(self):
        if len(self.word) <= 9:
            return "".join(str(v) for v in self.word)
        return ",".join(str(v) for v in self.word)

    @cached_property
    def points(self) -> tuple[Point, ...]:
        """The diagram points (i, sigma(i)) in position order."""
        return tuple(Point(i + 1, v) for i, v in enumerate(self.word))

    @cached_property
    def inverse(self) -> "Permutation":
        inv = [0] * len(self.word)
        for i, v in enumerate(self.word):
            inv[v - 1] = i + 1
        return Permutation(inv)

    def point_at(self, i: int) -> Point:
        if not 1 <= i <= len(self.word):
            raise IndexOutOfRange(f"position {i} outside 1..{len(self.word)}")
        return self.points[i - 1]


def from_one_line(word: Iterable[int]) -> Permutation:
    """Build a permutation from its word, validating the rearrangement."""
    return Permutation(word)


def parse_perm(text: str) -> Permutation:
    """Parse the text format: compact digits ('35142') or comma-separated."""
    text = text.strip()
    if not text:
        return Permutation(())
    if "," in text:
        return Permutation(int(part) for part in text.split(","))
    if not text.isdigit():
        raise InvalidWord(f"cannot parse permutation from {text!r}")
    return Permutation(int(ch) for ch in text)


def inc(n: int) -> Permutation:
    """The increasing permutation 12...n."""
    return Permutation(range(1, n + 1))


def dec(n: int) -> Permutation:
    """The decreasing permutation n...21."""
    return Permutation(range(n, 0, -1))


identity = inc


def pattern_of(sigma: Permutation, positions: Sequence[int]) -> Permutation:
    """The pattern of sigma on a strictly increasing list of positions.

    >>> pattern_of(Permutation([3, 5, 1, 4, 2]), (1, 2, 3))
    Permutation('231')
    """
    n = len(sigma)
    for i in positions:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"position {i} outside 1..{n}")
    if any(a >= b for a, b in zip(positions, positions[1:])):
        raise InvalidOccurrence(f"positions {tuple(positions)} are not strictly increasing")
    values = [sigma.word[i - 1] for i in positions]
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0] * len(values)
    for r, idx in enumerate(order):
        ranks[idx] = r + 1
    return Permutation(ranks)


def _is_occurrence(word: Sequence[int], pat: Sequence[int], positions: Sequence[int]) -> bool:
    k = len(pat)
    for a in range(k):
        for b in range(a + 1, k):
            if (pat[a] < pat[b]) != (word[positions[a] - 1] < word[positions[b] - 1]):
                return False
    return True


def occurrences(sigma: Permutation, pi: Permutation) -> list[tuple[int, ...]]:
    """All strictly increasing position tuples whose pattern equals pi,
    in lexicographic order."""
    word, pat = sigma.word, pi.word
    return [
        pos
        for pos in itertools.combinations(range(1, len(word) + 1), len(pat))
        if _is_occurrence(word, pat, pos)
    ]


def contains_pattern(sigma: Permutation, pi: Permutation) -> bool:
    word, pat = sigma.word, pi.word
    if len(pat) > len(word):
        return False
    return any(
        _is_occurrence(word, pat, pos)
        for pos in itertools.combinations(range(1, len(word) + 1), len(pat))
    )


def avoids(sigma: Permutation, basis: Iterable[Permutation]) -> bool:
    """True when sigma contains none of the basis patterns."""
    return not any(contains_pattern(sigma, b) for b in basis)


def av_set(n: int, basis: Iterable[Permutation]) -> list[Permutation]:
    """Brute-force avoidance oracle: Av(basis) restricted to S_n, word order."""
    basis = tuple(basis)
    return [sigma for sigma in enumerate_sn(n) if avoids(sigma, basis)]


def inflate(pi: Permutation, blocks: Sequence[Permutation]) -> Permutation:
    """The inflation pi[sigma_1, ..., sigma_k]: each diagram point of pi is
    replaced by the diagram of the corresponding block.

    >>> inflate(Permutation([2, 1]), [inc(2), inc(1)])
    Permutation('231')
    >>> inflate(Permutation([3, 2, 1]), [inc(2), inc(1), inc(2)])
    Permutation('45312')
    """
    k = len(pi)
    if len(blocks) != k:
        raise ArityMismatch(f"{k} blocks expected, got {len(blocks)}")
    if any(len(b) == 0 for b in blocks):
        raise EmptyBlock("inflation blocks must be nonempty")
    sizes = [len(b) for b in blocks]
    # value offset of block i: total size of blocks placed below it
    offsets = []
    for i in range(k):
        offsets.append(sum(sizes[j] for j in range(k) if pi.word[j] < pi.word[i]))
    out = []
    for i in range(k):
        out.extend(v + offsets[i] for v in blocks[i].word)
    return Permutation(out)


def direct_sum(a: Permutation, b: Permutation) -> Permutation:
    """a (+) b: b placed above and to the right of a.  Tolerates empty sides."""
    return Permutation(a.word + tuple(v + len(a) for v in b.word))


def skew_sum(a: Permutation, b: Permutation) -> Permutation:
    """a (-) b: b placed below and to the right of a.  Tolerates empty sides."""
    return Permutation(tuple(v + len(b) for v in a.word) + b.word)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """The bijection composition a after b: i -> a(b(i))."""
    if len(a) != len(b):
        raise ArityMismatch("composition needs equal sizes")
    return Permutation(a.word[v - 1] for v in b.word)


def conjugate(sigma: Permutation, gamma: Permutation) -> Permutation:
    """The relabeling gamma sigma gamma^-1."""
    return compose(compose(gamma, sigma), gamma.inverse)


def cycles(sigma: Permutation) -> list[tuple[int, ...]]:
    """Disjoint cycles of sigma as a bijection, each starting at its least
    element, ordered by that element."""
    n = len(sigma)
    seen = [False] * n
    out = []
    for i in range(1, n + 1):
        if seen[i - 1]:
            continue
        cyc = []
        j = i
        while not seen[j - 1]:
            seen[j - 1] = True
            cyc.append(j)
            j = sigma.word[j - 1]
        out.append(tuple(cyc))
    return out


def cycle_type(sigma: Permutation) -> Partition:
    """The multiset of cycle lengths of sigma.

    >>> cycle_type(Permutation([3, 5, 1, 4, 2]))
    Partition([2, 2, 1])
    """
    return Partition(len(c) for c in cycles(sigma))


def support(sigma: Permutation) -> frozenset[int]:
    """The set of non-fixed points of sigma."""
    return frozenset(i + 1 for i, v in enumerate(sigma.word) if v != i + 1)


def stable_occurrences(sigma: Permutation, pi: Permutation) -> list[tuple[int, ...]]:
    """All position sets mapped to themselves by sigma and inducing the
    pattern pi, as sorted tuples in lexicographic order.

    >>> stable_occurrences(parse_perm("4356712"), parse_perm("231"))[0]
    (1, 4, 6)
    >>> stable_occurrences(parse_perm("2413"), parse_perm("231"))
    []
    """
    word, pat = sigma.word, pi.word
    out = []
    for pos in itertools.combinations(range(1, len(word) + 1), len(pat)):
        if set(word[i - 1] for i in pos) == set(pos) and _is_occurrence(word, pat, pos):
            out.append(pos)
    return out


def stack_sort(sigma: Permutation) -> Permutation:
    """One pass through a stack whose contents increase from top to bottom.

    >>> stack_sort(Permutation([2, 3, 1]))
    Permutation('213')
    """
    out = []
    stack = []
    for v in sigma.word:
        while stack and stack[-1] < v:
            out.append(stack.pop())
        stack.append(v)
    while stack:
        out.append(stack.pop())
    return Permutation(out)


def bubble_sort(sigma: Permutation) -> Permutation:
    """One pass through a one-element buffer (a single bubble-sort sweep)."""
    out = []
    buf = None
    for v in sigma.word:
        if buf is None:
            buf = v
        elif buf > v:
            out.append(v)
        else:
            out.append(buf)
            buf = v
    if buf is not None:
        out.append(buf)
    return Permutation(out)


def queue_bypass_sort(sigma: Permutation) -> Permutation:
    """One pass through an increasing queue with a bypass lane.

    Left-to-right maxima enter the queue; any other element is output,
    first releasing the queued elements smaller than it.
    """
    out = []
    queue = []
    head = 0
    for v in sigma.word:
        if head == len(queue) or v > queue[-1]:
            queue.append(v)
        elif v < queue[head]:
            out.append(v)
        else:
            while head < len(queue) and queue[head] < v:
                out.append(queue[head])
                head += 1
            out.append(v)
    out.extend(queue[head:])
    return Permutation(out)


def is_identity(sigma: Permutation) -> bool:
    return all(v == i + 1 for i, v in enumerate(sigma.word))


def is_simple_oracle(sigma: Permutation) -> bool:
    """True when sigma has no interval of length strictly between 1 and n,
    by exhaustive window scan.  Sizes 0..2 count as simple.

    >>> [is_simple_oracle(p) for p in (parse_perm("2413"), parse_perm("2134"))]
    [True, False]
    """
    word = sigma.word
    n = len(word)
    for length in range(2, n):
        for start in range(n - length + 1):
            window = word[start : start + length]
            if max(window) - min(window) == length - 1:
                return False
    return True


def grow(sigma: Permutation, h: int) -> Permutation:
    """Replace sigma(h) by a new maximum and append the former sigma(h);
    in cycle terms, insert the new element after h in h's cycle.

    >>> grow(Permutation([1]), 1)
    Permutation('21')
    """
    n = len(sigma)
    if not 1 <= h <= n:
        raise IndexOutOfRange(f"position {h} outside 1..{n}")
    word = list(sigma.word)
    old = word[h - 1]
    word[h - 1] = n + 1
    word.append(old)
    return Permutation(word)


def enumerate_sn(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Permutation]:
    """All permutations of size n in lexicographic word order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise SizeCapExceeded(f"enumeration of S_{n} exceeds the cap {cap}")
    for word in itertools.permutations(range(1, n + 1)):
        yield Permutation(word)

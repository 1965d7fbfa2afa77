"""Finite graded bounded posets stored by rank level.

A poset of rank ``r`` here is a sequence of levels 0..r with a unique
bottom at level 0 and a unique top at level r, together with the cover
relations between consecutive levels.  Elements are addressed as
``(rank, index)`` with indices local to each level; the full order is the
reflexive-transitive closure of the covers.  Gradedness means every
element below the top has an up-cover and every element above the bottom
has a down-cover, so all maximal chains run through every level.

Comparability between two levels is computed as 0/1 matrices chained
through the cover relations; this is sound because in a graded poset
every relation x < y lies on a saturated chain.  The exhaustive Eulerian
test checks every interval [x, y] for equal numbers of elements of even
and odd rank.

Instances are immutable after construction.  Construction itself accepts
structurally broken data so that :meth:`RankedPoset.validate` can report
what is wrong; every other operation requires a valid poset.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import BudgetError

DEFAULT_ELEMENT_BUDGET = 10**6

CoverPair = tuple[int, int]


def _check_budget(total: int, budget: int | None, what: str) -> None:
    limit = DEFAULT_ELEMENT_BUDGET if budget is None else budget
    if total > limit:
        raise BudgetError(f"{what} would have {total} elements, budget is {limit}")


@dataclass(frozen=True)
class IntervalViolation:
    """An interval [x, y] with unbalanced rank parities."""

    rank_low: int
    index_low: int
    rank_high: int
    index_high: int
    even_count: int
    odd_count: int


@dataclass(frozen=True)
class EulerianResult:
    eulerian: bool
    violation: IntervalViolation | None = None

    def __bool__(self) -> bool:
        return self.eulerian


class RankedPoset:
    """A graded bounded poset encoded as level sizes plus cover pairs.

    ``covers[r]`` holds the pairs ``(i, j)`` meaning element ``i`` of level
    ``r`` is covered by element ``j`` of level ``r + 1``.
    """

    __slots__ = ("rank", "level_sizes", "covers", "_comp", "_diagnostics")

    def __init__(
        self,
        rank: int,
        level_sizes: Sequence[int],
        covers: Sequence[Iterable[CoverPair]],
    ):
        object.__setattr__(self, "rank", int(rank))
        object.__setattr__(self, "level_sizes", tuple(int(s) for s in level_sizes))
        object.__setattr__(
            self, "covers", tuple(frozenset((int(i), int(j)) for i, j in cs) for cs in covers)
        )
        object.__setattr__(self, "_comp", {})
        object.__setattr__(self, "_diagnostics", None)

    def __setattr__(self, name, value):
        raise AttributeError("RankedPoset is immutable")

    # number of proper ranks 1..n; flag data is indexed by subsets of these
    @property
    def n(self) -> int:
        return self.rank - 1

    @property
    def num_elements(self) -> int:
        return sum(self.level_sizes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankedPoset):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.level_sizes == other.level_sizes
            and self.covers == other.covers
        )

    def __hash__(self) -> int:
        return hash((self.rank, self.level_sizes, self.covers))

    def __repr__(self) -> str:
        return f"RankedPoset(rank={self.rank}, level_sizes={list(self.level_sizes)})"

    # -- validation ---------------------------------------------------

    def validate(self) -> list[str]:
        """Return the list of violated structural invariants (empty = valid)."""
        if self._diagnostics is not None:
            return list(self._diagnostics)
        out: list[str] = []
        if self.rank < 1:
            out.append(f"rank must be at least 1, got {self.rank}")
        if len(self.level_sizes) != self.rank + 1:
            out.append(
                f"expected {self.rank + 1} level sizes, got {len(self.level_sizes)}"
            )
        if len(self.covers) != self.rank:
            out.append(f"expected {self.rank} cover levels, got {len(self.covers)}")
        if not out:
            if self.level_sizes[0] != 1:
                out.append(f"level 0 must have exactly one element, got {self.level_sizes[0]}")
            if self.level_sizes[self.rank] != 1:
                out.append(
                    f"level {self.rank} must have exactly one element, "
                    f"got {self.level_sizes[self.rank]}"
                )
            for r, size in enumerate(self.level_sizes):
                if size < 1:
                    out.append(f"level {r} is empty")
            for r, cs in enumerate(self.covers):
                lo, hi = self.level_sizes[r], self.level_sizes[r + 1]
                for i, j in sorted(cs):
                    if not (0 <= i < lo and 0 <= j < hi):
                        out.append(f"cover ({i}, {j}) at level {r} is out of range")
            if not out:
                for r, cs in enumerate(self.covers):
                    ups = {i for i, _ in cs}
                    downs = {j for _, j in cs}
                    for i in range(self.level_sizes[r]):
                        if i not in ups:
                            out.append(f"element ({r}, {i}) has no up-cover")
                    for j in range(self.level_sizes[r + 1]):
                        if j not in downs:
                            out.append(f"element ({r + 1}, {j}) has no down-cover")
        object.__setattr__(self, "_diagnostics", tuple(out))
        return out

    def _require_valid(self) -> None:
        diags = self.validate()
        if diags:
            raise ValueError("invalid poset: " + "; ".join(diags))

    # -- structure ----------------------------------------------------

    def dual(self) -> "RankedPoset":
        """Order-reversed poset: level r becomes level rank - r, covers transpose."""
        self._require_valid()
        sizes = self.level_sizes[::-1]
        covers = [
            frozenset((j, i) for i, j in self.covers[self.rank - r - 1])
            for r in range(self.rank)
        ]
        return RankedPoset(self.rank, sizes, covers)

    def _cover_matrix(self, r: int) -> np.ndarray:
        m = np.zeros((self.level_sizes[r], self.level_sizes[r + 1]), dtype=np.int64)
        for i, j in self.covers[r]:
            m[i, j] = 1
        return m

    def comparability(self, r1: int, r2: int) -> np.ndarray:
        """0/1 matrix over level r1 x level r2 with 1 where x <= y.

        Satisfies the composition law: comparability(r1, r3) is the boolean
        product of comparability(r1, r2) and comparability(r2, r3).  The
        returned array is cached and read-only.
        """
        self._require_valid()
        if not 0 <= r1 <= r2 <= self.rank:
            raise ValueError(f"need 0 <= r1 <= r2 <= {self.rank}, got ({r1}, {r2})")
        key = (r1, r2)
        cached = self._comp.get(key)
        if cached is not None:
            return cached
        if r1 == r2:
            m = np.eye(self.level_sizes[r1], dtype=np.int64)
        elif r2 == r1 + 1:
            m = self._cover_matrix(r1)
        else:
            m = (self.comparability(r1, r2 - 1) @ self._cover_matrix(r2 - 1) > 0).astype(
                np.int64
            )
        m.setflags(write=False)
        # benign race: concurrent readers may recompute, results are identical
        self._comp[key] = m
        return m

    def count_maximal_chains(self) -> int:
        """Number of saturated bottom-to-top chains (exact integer)."""
        self._require_valid()
        vec = [1]
        for r in range(self.rank):
            nxt = [0] * self.level_sizes[r + 1]
            for i, j in self.covers[r]:
                nxt[j] += vec[i]
            vec = nxt
        return vec[0]

    def is_eulerian(self) -> EulerianResult:
        """Exhaustively test that every interval [x, y], x < y, balances
        elements of even and odd rank.  Reports the first violation in
        (rank_low, rank_high, index_low, index_high) order.
        """
        self._require_valid()
        for r1 in range(self.rank - 1):
            for r2 in range(r1 + 2, self.rank + 1):
                even = np.zeros(
                    (self.level_sizes[r1], self.level_sizes[r2]), dtype=np.int64
                )
                odd = np.zeros_like(even)
                for r in range(r1, r2 + 1):
                    prod = self.comparability(r1, r) @ self.comparability(r, r2)
                    if (r - r1) % 2 == 0:
                        even += prod
                    else:
                        odd += prod
                diff = even - odd
                if diff.any():
                    xs, ys = np.nonzero(diff)
                    x, y = int(xs[0]), int(ys[0])
                    return EulerianResult(
                        False,
                        IntervalViolation(
                            r1, x, r2, y, int(even[x, y]), int(odd[x, y])
                        ),
                    )
        return EulerianResult(True)

    # -- serialization ------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "level_sizes": list(self.level_sizes),
            "covers": [[list(p) for p in sorted(cs)] for cs in self.covers],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "RankedPoset":
        try:
            rank = data["rank"]
            sizes = data["level_sizes"]
            covers = data["covers"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"poset object needs rank/level_sizes/covers: {exc}") from None
        if not isinstance(rank, int):
            raise ValueError("rank must be an integer")
        if not isinstance(sizes, list) or not all(isinstance(s, int) for s in sizes):
            raise ValueError("level_sizes must be a list of integers")
        if not isinstance(covers, list):
            raise ValueError("covers must be a list of lists of pairs")
        parsed = []
        for cs in covers:
            level = []
            for pair in cs:
                if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
                    raise ValueError(f"bad cover pair {pair!r}")
                i, j = pair
                if not (isinstance(i, int) and isinstance(j, int)):
                    raise ValueError(f"bad cover pair {pair!r}")
                level.append((i, j))
            parsed.append(level)
        return cls(rank, sizes, parsed)


def chain(rank: int, *, budget: int | None = None) -> RankedPoset:
    """The chain with ``rank + 1`` elements, one per level."""
    if rank < 1:
        raise ValueError(f"chain rank must be at least 1, got {rank}")
    _check_budget(rank + 1, budget, f"chain({rank})")
    return RankedPoset(rank, [1] * (rank + 1), [{(0, 0)} for _ in range(rank)])


def boolean(k: int, *, budget: int | None = None) -> RankedPoset:
    """The boolean lattice of subsets of a k-element set, ordered by inclusion."""
    if k < 1:
        raise ValueError(f"boolean rank must be at least 1, got {k}")
    _check_budget(2**k, budget, f"boolean({k})")
    from itertools import combinations

    levels = [list(combinations(range(k), r)) for r in range(k + 1)]
    covers = []
    for r in range(k):
        index_above = {sub: j for j, sub in enumerate(levels[r + 1])}
        cs = set()
        for i, sub in enumerate(levels[r]):
            members = set(sub)
            for extra in range(k):
                if extra not in members:
                    bigger = tuple(sorted(members | {extra}))
                    cs.add((i, index_above[bigger]))
        covers.append(cs)
    return RankedPoset(k, [len(lv) for lv in levels], covers)

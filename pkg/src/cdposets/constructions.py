"""Constructions that build new ranked posets from old ones.

The workhorse is :func:`replicate_interval`, which replaces the subposet
spanned by a contiguous range of proper ranks with N parallel copies of
itself, duplicating the boundary covers to every copy.  Composites built
from it:

* :func:`horizontal_double` doubles every proper level, turning each cover
  into a complete bipartite bowtie; the double of any bounded graded poset
  of rank r has cd-index c^(r-1) contributions behaving like a chain.
* :func:`dp_poset` replicates a system of intervals of a chain and doubles,
  the family whose normalized flag data converges as N grows.
* :func:`lemma2_poset` and :func:`lemma3_poset` glue replicated chains into
  Eulerian families realizing prescribed negative cd coefficients.

:func:`join` stacks one bounded poset on another (top of the first and
bottom of the second removed, complete bipartite covers in between); the
cd-index is multiplicative across it.  :func:`glue` identifies several
posets of equal rank along chosen levels, index by index.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import GlueInconsistentError, GlueMismatchError
from .poset import RankedPoset, _check_budget, chain

Interval = tuple[int, int]


def replicate_interval(
    poset: RankedPoset, low: int, high: int, copies: int, *, budget: int | None = None
) -> RankedPoset:
    """Replace the levels low..high by ``copies`` parallel copies.

    Covers internal to the range are kept within each copy; covers crossing
    either boundary are duplicated to every copy.  Copy ``t`` of element
    ``i`` at a replicated level of old size ``L`` gets index ``t * L + i``,
    so ``copies = 1`` returns the poset unchanged.
    """
    poset._require_valid()
    if not 1 <= low <= high <= poset.rank - 1:
        raise ValueError(
            f"interval [{low}, {high}] not within proper ranks [1, {poset.rank - 1}]"
        )
    if copies < 1:
        raise ValueError(f"copies must be at least 1, got {copies}")
    old = poset.level_sizes
    sizes = [
        old[r] * copies if low <= r <= high else old[r] for r in range(poset.rank + 1)
    ]
    _check_budget(sum(sizes), budget, "replicate_interval")
    covers = []
    for r in range(poset.rank):
        cs = poset.covers[r]
        if r < low - 1 or r > high:
            covers.append(cs)
        elif r == low - 1:
            covers.append(
                {(i, t * old[r + 1] + j) for i, j in cs for t in range(copies)}
            )
        elif r < high:
            covers.append(
                {(t * old[r] + i, t * old[r + 1] + j) for i, j in cs for t in range(copies)}
            )
        else:  # r == high, leaving the replicated range
            covers.append(
                {(t * old[r] + i, j) for i, j in cs for t in range(copies)}
            )
    return RankedPoset(poset.rank, sizes, covers)


def horizontal_double(poset: RankedPoset, *, budget: int | None = None) -> RankedPoset:
    """Make two copies of every proper level (rank 1 through rank - 1)."""
    out = poset
    for r in range(1, poset.rank):
        out = replicate_interval(out, r, r, 2, budget=budget)
    return out


def join(
    left: RankedPoset, right: RankedPoset, *, budget: int | None = None
) -> RankedPoset:
    """Stack ``right`` on top of ``left``.

    The top of ``left`` and the bottom of ``right`` are removed and every
    remaining element of ``left`` is placed below every remaining element
    of ``right``, i.e. complete bipartite covers between the old coatom
    level of ``left`` and the old atom level of ``right``.  The rank is
    rank(left) + rank(right) - 1, and chain(1) is a two-sided identity.
    """
    left._require_valid()
    right._require_valid()
    rank = left.rank + right.rank - 1
    sizes = list(left.level_sizes[:-1]) + list(right.level_sizes[1:])
    _check_budget(sum(sizes), budget, "join")
    covers: list[Iterable] = list(left.covers[: left.rank - 1])
    covers.append(
        {
            (x, y)
            for x in range(left.level_sizes[left.rank - 1])
            for y in range(right.level_sizes[1])
        }
    )
    covers.extend(right.covers[1:])
    return RankedPoset(rank, sizes, covers)


def glue(
    parts: Sequence[tuple[RankedPoset, Iterable[int]]], *, budget: int | None = None
) -> RankedPoset:
    """Identify several posets of equal rank along shared levels.

    Each part comes with the set of ranks at which it is glued; every glue
    set must contain rank 0 and the top rank.  At each glued rank the
    levels of all participating parts are identified index by index (their
    sizes must agree), and the shared block occupies the lowest indices of
    the resulting level.  Parts not gluing at a rank keep disjoint blocks,
    laid out in part order.

    Raises :class:`GlueMismatchError` on level-size disagreement and
    :class:`GlueInconsistentError` when two parts glued at ranks r < r'
    induce different comparabilities between the shared levels.
    """
    if not parts:
        raise ValueError("glue needs at least one part")
    posets = []
    glue_sets = []
    for poset, ranks in parts:
        poset._require_valid()
        posets.append(poset)
        glue_sets.append(frozenset(int(r) for r in ranks))
    rank = posets[0].rank
    for p in posets[1:]:
        if p.rank != rank:
            raise ValueError(f"all parts must share one rank, got {p.rank} and {rank}")
    for k, gs in enumerate(glue_sets):
        if any(r < 0 or r > rank for r in gs):
            raise ValueError(f"part {k} glue ranks {sorted(gs)} outside [0, {rank}]")
        if 0 not in gs or rank not in gs:
            raise ValueError(f"part {k} must glue at ranks 0 and {rank}")

    shared_size: list[int] = []
    for r in range(rank + 1):
        gluing = [k for k, gs in enumerate(glue_sets) if r in gs]
        if gluing:
            size = posets[gluing[0]].level_sizes[r]
            for k in gluing[1:]:
                if posets[k].level_sizes[r] != size:
                    raise GlueMismatchError(
                        f"parts {gluing[0]} and {k} glue at rank {r} with level sizes "
                        f"{size} and {posets[k].level_sizes[r]}"
                    )
            shared_size.append(size)
        else:
            shared_size.append(0)

    # comparability between two glued levels must not depend on the part
    for r, r2 in combinations(range(rank + 1), 2):
        both = [k for k in range(len(posets)) if r in glue_sets[k] and r2 in glue_sets[k]]
        for k in both[1:]:
            if not np.array_equal(
                posets[both[0]].comparability(r, r2), posets[k].comparability(r, r2)
            ):
                raise GlueInconsistentError(
                    f"parts {both[0]} and {k} disagree on comparability between "
                    f"glued ranks {r} and {r2}"
                )

    offsets = [[0] * (rank + 1) for _ in posets]
    sizes = []
    for r in range(rank + 1):
        total = shared_size[r]
        for k, poset in enumerate(posets):
            if r in glue_sets[k]:
                offsets[k][r] = 0
            else:
                offsets[k][r] = total
                total += poset.level_sizes[r]
        sizes.append(total)
    _check_budget(sum(sizes), budget, "glue")

    covers = [set() for _ in range(rank)]
    for k, poset in enumerate(posets):
        for r in range(rank):
            lo, hi = offsets[k][r], offsets[k][r + 1]
            covers[r].update((lo + i, hi + j) for i, j in poset.covers[r])
    return RankedPoset(rank, sizes, covers)


# -- interval systems on a chain --------------------------------------


def validate_even_interval_system(n: int, intervals: Sequence[Interval]) -> list[str]:
    """Diagnostics for a system of intervals of [1, n]: each interval must
    have even cardinality, and the system must be an antichain with all
    pairwise intersections of even cardinality.  Empty list means valid.
    """
    out = []
    for a, b in intervals:
        if not 1 <= a <= b <= n:
            out.append(f"interval [{a}, {b}] not within [1, {n}]")
        elif (b - a + 1) % 2:
            out.append(f"interval [{a}, {b}] has odd cardinality {b - a + 1}")
    seen = set()
    for a, b in intervals:
        if (a, b) in seen:
            out.append(f"interval [{a}, {b}] listed twice")
        seen.add((a, b))
    for (a, b), (c, d) in combinations(intervals, 2):
        if (a <= c and d <= b) or (c <= a and b <= d):
            if (a, b) != (c, d):
                out.append(f"interval [{c}, {d}] nests inside [{a}, {b}]")
            continue
        overlap = min(b, d) - max(a, c) + 1
        if overlap > 0 and overlap % 2:
            out.append(
                f"intervals [{a}, {b}] and [{c}, {d}] intersect in {overlap} ranks"
            )
    return out


def even_interval_systems(n: int) -> list[tuple[Interval, ...]]:
    """All nonempty valid even interval systems on [1, n], in a fixed order."""
    singles = [
        (a, b)
        for a in range(1, n + 1)
        for b in range(a + 1, n + 1, 2)
    ]
    out = []
    for k in range(1, len(singles) + 1):
        for combo in combinations(singles, k):
            if not validate_even_interval_system(n, combo):
                out.append(combo)
    return out


def dp_poset(
    n: int,
    intervals: Sequence[Interval],
    copies: int,
    *,
    require_even: bool = True,
    budget: int | None = None,
) -> RankedPoset:
    """Replicate each listed interval of the chain of rank n + 1 into
    ``copies + 1`` disjoint copies and double the result.

    ``copies`` is the growth parameter of the family: for a valid even
    interval system of k intervals the result is Eulerian with
    2^n * (copies + 1)^k maximal chains, and for the single system
    {[1, n]} the cd-index is (copies + 1) c^n - copies (cc - 2d)^{n/2},
    so copies = 0 would be the doubled chain.  Set ``require_even=False``
    to experiment with systems that fail validation.
    """
    if copies < 1:
        raise ValueError(f"copies must be at least 1, got {copies}")
    if require_even:
        diags = validate_even_interval_system(n, intervals)
        if diags:
            raise ValueError("bad interval system: " + "; ".join(diags))
    else:
        for a, b in intervals:
            if not 1 <= a <= b <= n:
                raise ValueError(f"interval [{a}, {b}] not within [1, {n}]")
    out = chain(n + 1, budget=budget)
    for a, b in intervals:
        out = replicate_interval(out, a, b, copies + 1, budget=budget)
    return horizontal_double(out, budget=budget)


# -- glued families with prescribed negative cd coefficients ----------


def _lemma2_glued(n: int, copies: int, *, budget: int | None = None) -> RankedPoset:
    """Pre-double glued poset behind :func:`lemma2_poset`."""
    if n < 7 or n % 2 == 0:
        raise ValueError(f"rank parameter must be odd and at least 7, got {n}")
    if copies < 1:
        raise ValueError(f"copies must be at least 1, got {copies}")
    base = chain(n + 1, budget=budget)
    m = copies
    part1 = base
    for a, b in [(n - 1, n), (4, n - 2), (3, n - 3), (1, 2)]:
        part1 = replicate_interval(part1, a, b, m + 1, budget=budget)
    part2 = replicate_interval(base, 4, n, m + 1, budget=budget)
    part2 = replicate_interval(part2, 3, n - 2, m**2, budget=budget)
    part2 = replicate_interval(part2, 1, n - 3, m + 1, budget=budget)
    part3 = replicate_interval(base, 1, n, m**4, budget=budget)
    ends = {0, 1, 2, n - 1, n, n + 1}
    return glue(
        [(part1, ends), (part2, ends), (part3, {0, n + 1})], budget=budget
    )


def lemma2_poset(n: int, copies: int, *, budget: int | None = None) -> RankedPoset:
    """Eulerian poset of rank n + 1 (n odd, at least 7) whose cd-index has
    coefficient 4 * (copies^2 - copies^4) on the word d c^(n-4) d.

    Built by gluing three replicated chains along their outer levels and
    doubling.
    """
    return horizontal_double(_lemma2_glued(n, copies, budget=budget), budget=budget)


def _lemma3_glued(copies: int, *, budget: int | None = None) -> RankedPoset:
    """Pre-double glued poset behind :func:`lemma3_poset`."""
    if copies < 1:
        raise ValueError(f"copies must be at least 1, got {copies}")
    base = chain(7, budget=budget)
    part1 = replicate_interval(base, 2, 6, copies, budget=budget)
    part1 = replicate_interval(part1, 1, 2, copies, budget=budget)
    part2 = replicate_interval(base, 5, 6, copies, budget=budget)
    part2 = replicate_interval(part2, 1, 5, copies, budget=budget)
    return glue([(part1, {0, 1, 6, 7}), (part2, {0, 1, 6, 7})], budget=budget)


def lemma3_poset(copies: int, *, budget: int | None = None) -> RankedPoset:
    """Eulerian poset of rank 7 whose cd-index has coefficient
    -2 * (copies - 1)^2 on the word c c d c c.

    Two replicated chains glued at ranks 0, 1, 6, 7, then doubled.
    """
    return horizontal_double(_lemma3_glued(copies, budget=budget), budget=budget)

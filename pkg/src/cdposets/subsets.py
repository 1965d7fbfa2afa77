"""Subsets of proper ranks [1, n] encoded as integer bitmasks.

Rank ``s`` corresponds to bit ``s - 1``, so the subset {1, 3} is the mask
0b101.  Masks keep every transform over the 2^n subsets cheap; helpers here
convert to and from explicit rank lists and implement the parity notions
used throughout: a subset is *even* when every maximal run of consecutive
ranks has even length, and Q *evenly contains* S when S and Q are even,
S is a subset of Q, and Q minus S is even as well.

Masks are capped at 62 bits so all arithmetic stays within native ints on
every platform we care about.
"""

from __future__ import annotations

import json
from typing import Iterable

MAX_RANKS = 62


def as_mask(ranks: int | Iterable[int]) -> int:
    """Coerce an iterable of ranks (or an existing mask) to a bitmask."""
    if isinstance(ranks, int):
        if ranks < 0:
            raise ValueError("bitmask must be nonnegative")
        return ranks
    mask = 0
    for s in ranks:
        if not 1 <= s <= MAX_RANKS:
            raise ValueError(f"rank {s} outside supported range [1, {MAX_RANKS}]")
        mask |= 1 << (s - 1)
    return mask


def ranks_from_mask(mask: int) -> tuple[int, ...]:
    """Sorted tuple of ranks present in ``mask``."""
    out = []
    s = 1
    while mask:
        if mask & 1:
            out.append(s)
        mask >>= 1
        s += 1
    return tuple(out)


def full_mask(n: int) -> int:
    if not 0 <= n <= MAX_RANKS:
        raise ValueError(f"n must be in [0, {MAX_RANKS}]")
    return (1 << n) - 1


def reverse_mask(mask: int, n: int) -> int:
    """Image of a subset of [1, n] under the flip s -> n + 1 - s."""
    out = 0
    for s in ranks_from_mask(mask):
        if s > n:
            raise ValueError(f"rank {s} exceeds n = {n}")
        out |= 1 << (n - s)
    return out


def maximal_runs(mask: int) -> list[tuple[int, int]]:
    """Maximal intervals [a, b] of consecutive ranks present in ``mask``."""
    runs = []
    s = 1
    start = None
    while mask:
        if mask & 1:
            if start is None:
                start = s
        elif start is not None:
            runs.append((start, s - 1))
            start = None
        mask >>= 1
        s += 1
    if start is not None:
        runs.append((start, s - 1))
    return runs


def is_even_set(ranks: int | Iterable[int]) -> bool:
    """True when every maximal run of consecutive ranks has even length.

    The empty set qualifies (a union of zero even intervals).
    """
    mask = as_mask(ranks)
    return all((b - a + 1) % 2 == 0 for a, b in maximal_runs(mask))


def evenly_contains(inner: int | Iterable[int], outer: int | Iterable[int]) -> bool:
    """True when ``outer`` evenly contains ``inner``.

    Requires inner and outer even, inner a subset of outer, and the
    difference outer minus inner even.
    """
    s = as_mask(inner)
    q = as_mask(outer)
    if s & ~q:
        return False
    return is_even_set(s) and is_even_set(q) and is_even_set(q & ~s)


def subset_label(mask: int) -> str:
    """Canonical string key for a subset, e.g. "[1,2]"; "[]" for the empty set."""
    return json.dumps(list(ranks_from_mask(mask)), separators=(",", ":"))


def parse_subset(text: str) -> int:
    """Inverse of :func:`subset_label`; also accepts "1,2" shorthand."""
    text = text.strip()
    if not text or text == "[]":
        return 0
    if text.startswith("["):
        try:
            ranks = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"bad subset {text!r}: {exc}") from None
        if not isinstance(ranks, list) or not all(isinstance(r, int) for r in ranks):
            raise ValueError(f"bad subset {text!r}: expected a list of ints")
        return as_mask(ranks)
    return as_mask(int(part) for part in text.split(","))

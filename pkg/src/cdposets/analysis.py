"""Limits, inequalities, and the classification of cd words by the signs
their coefficients can take over Eulerian posets.

Every cd word w of degree n falls into exactly one class:

* ``Part2``: w = c^n.  The coefficient is 1 for every Eulerian poset.
* ``Part1a``: w = c^i d c^j with min(i, j) <= 1.
* ``Part1b``: w = c^i (dc)^(r-1) d c^j with r >= 2 d's separated by single
  c's.  Part1a and Part1b words have nonnegative coefficients over all
  Eulerian posets, certified by a pair (T, V) for the interval inequality
  below.
* ``Part3``: everything else.  Each such word contains a witness subword,
  either ``ccdcc`` or ``d c^m d`` with m != 1, and suitable poset families
  drive its coefficient to minus infinity (and, dually, to plus infinity).

The interval inequality: for T within V within [1, n] such that every
maximal run of V meets T at most once, and S the complement of V, every
Eulerian poset satisfies

    sum over R within T of (-2)^|T - R| f_(S union R)  >=  0
    (-1)^|T| * sum over T within Q within V of L_Q      >=  0

and the two sides agree up to the factor 2^(|S| + |T|).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .constructions import Interval, dp_poset, join, lemma2_poset, lemma3_poset
from .errors import BudgetError
from .flags import (
    FlagVector,
    LVector,
    cd_degree,
    cd_index,
    cd_support,
    cd_words,
)
from .poset import RankedPoset, boolean
from .subsets import (
    as_mask,
    evenly_contains,
    full_mask,
    maximal_runs,
    ranks_from_mask,
    subset_label,
)

MAX_LIMIT_INTERVALS = 20


# -- limits over growing replication ----------------------------------


def limit_l_vector(n: int, intervals: Sequence[Interval]) -> dict[int, int]:
    """Limit of the normalized L table of the replicated-and-doubled chain
    as the number of copies grows.

    Returns a sparse table over bitmasks: for each union S of a subfamily
    of the intervals, the alternating count

        L_S = sum over j of (-1)^j #{ j-subfamilies with union S },

    including entries that cancel to zero.  The empty union gives L of the
    empty set = 1.  The system need not be an even interval system.
    """
    if len(intervals) > MAX_LIMIT_INTERVALS:
        raise BudgetError(
            f"{len(intervals)} intervals exceed the limit of {MAX_LIMIT_INTERVALS}"
        )
    masks = []
    for a, b in intervals:
        if not 1 <= a <= b <= n:
            raise ValueError(f"interval [{a}, {b}] not within [1, {n}]")
        masks.append(full_mask(b) & ~full_mask(a - 1))
    table: dict[int, int] = {}
    for pick in range(1 << len(masks)):
        union = 0
        sign = 1
        for idx, mask in enumerate(masks):
            if pick >> idx & 1:
                union |= mask
                sign = -sign
        table[union] = table.get(union, 0) + sign
    return table


def limit_cd_coefficient(word: str, intervals: Sequence[Interval]) -> int:
    """Limit coefficient of ``word`` along the replicated-chain family with
    the given intervals: (-2)^r times the sum of limit L values over rank
    sets evenly containing the support of the word.
    """
    n = cd_degree(word)
    table = limit_l_vector(n, intervals)
    supp = cd_support(word)
    total = sum(v for mask, v in table.items() if evenly_contains(supp, mask))
    return (-2) ** word.count("d") * total


# -- the interval inequality -------------------------------------------


def _check_inequality_pair(n: int, t_mask: int, v_mask: int) -> None:
    if v_mask & ~full_mask(n):
        raise ValueError(f"V = {subset_label(v_mask)} not within [1, {n}]")
    if t_mask & ~v_mask:
        raise ValueError(
            f"T = {subset_label(t_mask)} not within V = {subset_label(v_mask)}"
        )
    for a, b in maximal_runs(v_mask):
        run = full_mask(b) & ~full_mask(a - 1)
        if bin(run & t_mask).count("1") > 1:
            raise ValueError(
                f"maximal run [{a}, {b}] of V meets T more than once"
            )


def inequality_f_form(flags: FlagVector, t_set, v_set) -> int:
    """sum over R within T of (-2)^|T - R| f_(S union R), with S = [1,n] - V.

    Nonnegative whenever the flag vector comes from an Eulerian poset and
    (T, V) satisfies the run condition checked here.
    """
    t_mask, v_mask = as_mask(t_set), as_mask(v_set)
    _check_inequality_pair(flags.n, t_mask, v_mask)
    s_mask = full_mask(flags.n) & ~v_mask
    total = 0
    r = t_mask
    while True:
        total += (-2) ** bin(t_mask & ~r).count("1") * flags.values[s_mask | r]
        if r == 0:
            break
        r = (r - 1) & t_mask
    return total


def inequality_l_form(table: LVector, t_set, v_set) -> Fraction:
    """(-1)^|T| * sum of L_Q over T within Q within V."""
    t_mask, v_mask = as_mask(t_set), as_mask(v_set)
    _check_inequality_pair(table.n, t_mask, v_mask)
    free = v_mask & ~t_mask
    total = Fraction(0)
    a = free
    while True:
        total += table.values[t_mask | a]
        if a == 0:
            break
        a = (a - 1) & free
    sign = -1 if bin(t_mask).count("1") % 2 else 1
    return sign * total


def inequality_pairs(n: int):
    """Yield every (T, V) mask pair valid for the interval inequality."""
    for v_mask in range(1 << n):
        runs = [full_mask(b) & ~full_mask(a - 1) for a, b in maximal_runs(v_mask)]
        choices: list[list[int]] = [[0]]
        for run in runs:
            ranks = ranks_from_mask(run)
            choices.append([0] + [1 << (s - 1) for s in ranks])
        stack = [(0, 0)]
        while stack:
            depth, t_mask = stack.pop()
            if depth == len(runs):
                yield t_mask, v_mask
                continue
            for bit in choices[depth + 1]:
                stack.append((depth + 1, t_mask | bit))


# -- classification of cd words ----------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Sets witnessing nonnegativity of a Part1 word's coefficient.

    For the word's support supp(w), the rank sets Q evenly containing
    supp(w) are exactly the even Q with T within Q within V, so the
    coefficient equals 2^r times the (T, V) instance of the interval
    inequality.
    """

    word: str
    tag: str
    s_mask: int
    t_mask: int
    v_mask: int

    def to_dict(self) -> dict:
        return {
            "word": self.word,
            "class": self.tag,
            "S": list(ranks_from_mask(self.s_mask)),
            "T": list(ranks_from_mask(self.t_mask)),
            "V": list(ranks_from_mask(self.v_mask)),
        }


@dataclass(frozen=True)
class WordClass:
    word: str
    tag: str
    witness: str | None = None
    position: int | None = None
    certificate: Certificate | None = None

    def to_dict(self) -> dict:
        out: dict = {"word": self.word, "class": self.tag}
        if self.witness is not None:
            out["witness"] = self.witness
            out["position"] = self.position
        if self.certificate is not None:
            cert = self.certificate.to_dict()
            out["S"] = cert["S"]
            out["T"] = cert["T"]
            out["V"] = cert["V"]
        return out


def _raw_classify(word: str) -> tuple[str, dict]:
    n = cd_degree(word)
    ds = [k for k, ch in enumerate(word) if ch == "d"]
    if not ds:
        return "Part2", {"n": n}
    if len(ds) == 1:
        i = ds[0]
        j = len(word) - i - 1
        if min(i, j) <= 1:
            return "Part1a", {"n": n, "i": i, "j": j}
        return "Part3", {"n": n, "witness": "ccdcc", "position": i - 2}
    gaps = [ds[k + 1] - ds[k] - 1 for k in range(len(ds) - 1)]
    for k, gap in enumerate(gaps):
        if gap != 1:
            return "Part3", {
                "n": n,
                "witness": "d" + "c" * gap + "d",
                "position": ds[k],
            }
    i = ds[0]
    j = len(word) - ds[-1] - 1
    return "Part1b", {"n": n, "i": i, "j": j, "r": len(ds)}


def classify_word(word: str) -> WordClass:
    """Classify a cd word and attach its witness or certificate.

    Part3 results carry the located bad subword (``ccdcc`` or ``d c^m d``
    with m != 1) and its letter position; Part1 results carry the
    nonnegativity certificate.
    """
    tag, info = _raw_classify(word)
    if tag == "Part3":
        return WordClass(word, tag, witness=info["witness"], position=info["position"])
    if tag == "Part2":
        return WordClass(word, tag)
    return WordClass(word, tag, certificate=_certificate(word, tag, info))


def _certificate(word: str, tag: str, info: dict) -> Certificate:
    n = info["n"]
    full = full_mask(n)
    if tag == "Part1a":
        i, j = info["i"], info["j"]
        if i == 0:
            s_mask, t_mask = 0, as_mask({1})
        elif i == 1:
            s_mask, t_mask = as_mask({1}), as_mask({2})
        elif j == 0:
            s_mask, t_mask = 0, as_mask({n})
        else:  # j == 1
            s_mask, t_mask = as_mask({n}), as_mask({n - 1})
    else:
        i, r = info["i"], info["r"]
        s_mask = as_mask({i + 3 * t for t in range(1, r)})
        t_mask = as_mask([i + 2] + [i + 3 * t - 2 for t in range(2, r + 1)])
    v_mask = full & ~s_mask
    cert = Certificate(word, tag, s_mask, t_mask, v_mask)
    _check_inequality_pair(n, t_mask, v_mask)
    return cert


def nonneg_certificate(word: str) -> Certificate:
    """Certificate (S, T, V) for a Part1a or Part1b word."""
    tag, info = _raw_classify(word)
    if tag not in ("Part1a", "Part1b"):
        raise ValueError(f"{word!r} is {tag}, which has no nonnegativity certificate")
    return _certificate(word, tag, info)


def count_part1_words(n: int) -> int:
    """Number of degree-n words in Part1a or Part1b.

    Defined for n >= 5, where it equals floor(C(n-2, 2) / 3) + 4.
    """
    if n < 5:
        raise ValueError(f"count is defined for degree at least 5, got {n}")
    return sum(
        1 for w in cd_words(n) if _raw_classify(w)[0] in ("Part1a", "Part1b")
    )


# -- explicit witnesses for Part3 words ---------------------------------


@dataclass(frozen=True)
class NegativeWitness:
    """A poset realizing a negative contribution for a Part3 word.

    ``poset`` is built around the witness subword: a base family chosen by
    the subword, joined below/above with boolean lattices matching the
    prefix and suffix.  ``coefficient`` is the computed cd coefficient of
    the full word; it is strictly decreasing in the copies parameter from
    2 on, so large enough parameters make it arbitrarily negative.
    """

    word: str
    witness: str
    position: int
    base: str
    poset: RankedPoset
    coefficient: int

    def to_dict(self) -> dict:
        return {
            "word": self.word,
            "witness": self.witness,
            "position": self.position,
            "base": self.base,
            "coefficient": self.coefficient,
            "trend": "strictly decreasing in the copies parameter from 2 on",
        }


def negative_witness(
    word: str, copies: int, *, budget: int | None = None
) -> NegativeWitness:
    """Construct an Eulerian poset whose cd-index is negative on ``word``
    once ``copies`` is large enough.

    The witness subword picks the base family: ``ccdcc`` uses the rank-7
    glued family, ``d c^m d`` uses the replicated chain of rank m + 5 when
    m is even and the rank m + 5 glued family when m is odd.  Boolean
    lattices are joined on to account for the prefix and suffix.
    """
    tag, info = _raw_classify(word)
    if tag != "Part3":
        raise ValueError(f"{word!r} is {tag}; witnesses exist only for Part3 words")
    witness, position = info["witness"], info["position"]
    if witness == "ccdcc":
        base = lemma3_poset(copies, budget=budget)
        base_expr = f"lemma3({copies})"
        base_degree = 6
    else:
        m = len(witness) - 2
        base_degree = m + 4
        if base_degree % 2 == 0:
            base = dp_poset(base_degree, [(1, base_degree)], copies, budget=budget)
            base_expr = f"dp({base_degree},[[1,{base_degree}]],{copies})"
        else:
            base = lemma2_poset(base_degree, copies, budget=budget)
            base_expr = f"lemma2({base_degree},{copies})"
    prefix_degree = cd_degree(word[:position])
    suffix_degree = cd_degree(word[position + len(witness):])
    poset = base
    if prefix_degree:
        poset = join(boolean(prefix_degree + 1, budget=budget), poset, budget=budget)
    if suffix_degree:
        poset = join(poset, boolean(suffix_degree + 1, budget=budget), budget=budget)
    coefficient = cd_index(poset).coefficient(word)
    return NegativeWitness(word, witness, position, base_expr, poset, coefficient)

"""A fixed corpus of small Eulerian posets used by verification suites.

Boolean lattices, doubles of chains, replicated-and-doubled chains over
every valid even interval system with n <= 6 and up to 2 copies, one glued
rank-7 family member, plus duals of all of those and a fixed list of
joins.  Everything here is small enough that exact flag computations stay
fast.
"""

from __future__ import annotations

from .constructions import (
    dp_poset,
    even_interval_systems,
    horizontal_double,
    join,
    lemma3_poset,
)
from .poset import RankedPoset, boolean, chain

Named = tuple[str, RankedPoset]


def base_corpus() -> list[Named]:
    out: list[Named] = [(f"boolean({k})", boolean(k)) for k in range(2, 6)]
    out += [
        (f"double(chain({r}))", horizontal_double(chain(r))) for r in range(2, 8)
    ]
    for n in range(2, 7):
        for system in even_interval_systems(n):
            label = ",".join(f"[{a},{b}]" for a, b in system)
            for copies in (1, 2):
                out.append(
                    (f"dp({n},[{label}],{copies})", dp_poset(n, system, copies))
                )
    out.append(("lemma3(2)", lemma3_poset(2)))
    return out


def join_pairs() -> list[tuple[str, RankedPoset, RankedPoset]]:
    """Ten fixed pairs exercising the join across the corpus families."""
    pairs = [
        ("boolean(3)", boolean(3), "boolean(3)", boolean(3)),
        ("boolean(2)", boolean(2), "boolean(5)", boolean(5)),
        ("boolean(4)", boolean(4), "double(chain(2))", horizontal_double(chain(2))),
        ("double(chain(3))", horizontal_double(chain(3)), "boolean(3)", boolean(3)),
        (
            "double(chain(2))",
            horizontal_double(chain(2)),
            "double(chain(4))",
            horizontal_double(chain(4)),
        ),
        ("dp(2,[[1,2]],2)", dp_poset(2, [(1, 2)], 2), "boolean(3)", boolean(3)),
        ("boolean(2)", boolean(2), "dp(4,[[1,4]],2)", dp_poset(4, [(1, 4)], 2)),
        (
            "dp(4,[[1,2],[3,4]],2)",
            dp_poset(4, [(1, 2), (3, 4)], 2),
            "double(chain(2))",
            horizontal_double(chain(2)),
        ),
        ("lemma3(2)", lemma3_poset(2), "boolean(2)", boolean(2)),
        ("dp(4,[[1,4]],1)", dp_poset(4, [(1, 4)], 1), "dual(boolean(4))", boolean(4).dual()),
    ]
    return [
        (f"join({ln},{rn})", left, right) for ln, left, rn, right in pairs
    ]


def eulerian_corpus() -> list[Named]:
    """Base corpus, duals of everything in it, and the fixed joins."""
    base = base_corpus()
    out = list(base)
    out += [(f"dual({name})", poset.dual()) for name, poset in base]
    out += [(name, join(left, right)) for name, left, right in join_pairs()]
    return out

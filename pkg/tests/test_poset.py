"""Core poset model: validation, duality, comparability, chain counts, and
the Eulerian test, all pinned against the brute-force oracles."""

import numpy as np
import pytest

from cdposets import (
    BudgetError,
    RankedPoset,
    boolean,
    chain,
    horizontal_double,
)

import oracles


def test_chain_shape():
    c = chain(4)
    assert c.rank == 4
    assert c.level_sizes == (1, 1, 1, 1, 1)
    assert c.validate() == []
    assert c.count_maximal_chains() == 1


def test_chain_requires_positive_rank():
    with pytest.raises(ValueError):
        chain(0)


def test_boolean_shape():
    b = boolean(3)
    assert b.level_sizes == (1, 3, 3, 1)
    assert b.validate() == []
    assert b.count_maximal_chains() == 6
    assert boolean(4).count_maximal_chains() == 24


def test_budget_enforced():
    with pytest.raises(BudgetError):
        boolean(4, budget=10)
    with pytest.raises(BudgetError):
        chain(100, budget=50)


def test_immutable():
    c = chain(2)
    with pytest.raises(AttributeError):
        c.rank = 5


def test_to_from_dict_round_trip():
    b = boolean(3)
    data = b.to_dict()
    assert data["rank"] == 3
    assert data["level_sizes"] == [1, 3, 3, 1]
    assert all(pairs == sorted(pairs) for pairs in data["covers"])
    assert RankedPoset.from_dict(data) == b


def test_from_dict_accepts_broken_structure_for_diagnosis():
    data = {"rank": 2, "level_sizes": [1, 2, 1], "covers": [[[0, 0]], [[0, 0]]]}
    p = RankedPoset.from_dict(data)
    diags = p.validate()
    assert diags
    assert any("cover" in d for d in diags)


def test_validate_reports_bad_shapes():
    p = RankedPoset(2, (1, 0, 1), ((), ()))
    assert any("empty" in d for d in p.validate())
    q = RankedPoset(2, (2, 1, 1), (((0, 0), (1, 0)), ((0, 0),)))
    assert any("level 0" in d for d in q.validate())


def test_dual_involution_and_sizes(corpus):
    for name, p in corpus:
        d = p.dual()
        assert d.level_sizes == tuple(reversed(p.level_sizes)), name
        assert d.dual() == p, name


def test_comparability_against_closure(small_corpus):
    for name, p in small_corpus:
        rel = oracles.closure(p.level_sizes, [sorted(c) for c in p.covers])
        for r1 in range(p.rank + 1):
            for r2 in range(r1, p.rank + 1):
                mat = p.comparability(r1, r2)
                for i in range(p.level_sizes[r1]):
                    for j in range(p.level_sizes[r2]):
                        expected = ((r1, i), (r2, j)) in rel or (r1, i) == (r2, j)
                        assert bool(mat[i, j]) == expected, (name, r1, r2, i, j)


def test_comparability_matrices_are_cached_and_frozen():
    b = boolean(3)
    m = b.comparability(0, 3)
    assert m is b.comparability(0, 3)
    with pytest.raises(ValueError):
        m[0, 0] = 7


def test_count_maximal_chains_against_enumeration(small_corpus):
    for name, p in small_corpus:
        chains = oracles.maximal_chains(p.level_sizes, [sorted(c) for c in p.covers])
        assert p.count_maximal_chains() == len(chains), name


def test_eulerian_against_oracle(small_corpus):
    for name, p in small_corpus:
        assert p.is_eulerian().eulerian == oracles.eulerian(
            p.level_sizes, [sorted(c) for c in p.covers]
        ), name


def test_eulerian_result_is_truthy():
    assert horizontal_double(chain(3)).is_eulerian()
    assert not chain(3).is_eulerian()


def test_chain_violation_details():
    result = chain(3).is_eulerian()
    v = result.violation
    assert (v.rank_low, v.index_low, v.rank_high, v.index_high) == (0, 0, 2, 0)
    assert (v.even_count, v.odd_count) == (2, 1)


def test_eulerian_catches_unbalanced_interval():
    # diamond with an extra rank on top: [bottom, top] has 2 even, 3 odd
    p = RankedPoset(
        3,
        (1, 2, 1, 1),
        (((0, 0), (0, 1)), ((0, 0), (1, 0)), ((0, 0),)),
    )
    assert p.validate() == []
    assert not p.is_eulerian().eulerian
    assert not oracles.eulerian(p.level_sizes, [sorted(c) for c in p.covers])


def test_comparability_composes(corpus):
    # transitivity through any middle rank reproduces the closure
    for name, p in corpus[:40]:
        for r1 in range(p.rank - 1):
            for r2 in range(r1 + 1, p.rank):
                lhs = p.comparability(r1, p.rank)
                via = (
                    p.comparability(r1, r2).astype(np.int64)
                    @ p.comparability(r2, p.rank).astype(np.int64)
                    > 0
                ).astype(np.int64)
                assert np.array_equal(lhs, via), (name, r1, r2)

"""Limit tables, the interval inequality, word classification with
certificates, and the negative-coefficient witnesses."""

import math
from fractions import Fraction

import pytest

from cdposets import (
    boolean,
    cd_index,
    cd_support,
    cd_words,
    chain,
    classify_word,
    count_part1_words,
    d_intervals,
    dp_poset,
    even_interval_systems,
    evenly_contains,
    flag_vector,
    inequality_f_form,
    inequality_l_form,
    inequality_pairs,
    is_even_set,
    l_vector,
    limit_cd_coefficient,
    limit_l_vector,
    negative_witness,
    nonneg_certificate,
)
from cdposets.subsets import full_mask, ranks_from_mask

import oracles


# -- limit tables ---------------------------------------------------------


def to_sets(table):
    return {frozenset(ranks_from_mask(m)): v for m, v in table.items()}


@pytest.mark.parametrize(
    "n,intervals",
    [
        (4, [(1, 4)]),
        (4, [(1, 2), (3, 4)]),
        (6, [(1, 2), (2, 6)]),
        (6, [(1, 5), (5, 6)]),
        (6, [(1, 4), (3, 6)]),
        (5, [(2, 5), (1, 2)]),
    ],
)
def test_limit_l_matches_subfamily_oracle(n, intervals):
    got = to_sets(limit_l_vector(n, intervals))
    want = oracles.limit_l(n, intervals)
    for union, value in want.items():
        assert got.get(union, 0) == value
    for union, value in got.items():
        assert want.get(union, 0) == value


def test_limit_l_single_full_interval():
    table = to_sets(limit_l_vector(4, [(1, 4)]))
    assert table == {frozenset(): 1, frozenset({1, 2, 3, 4}): -1}


def test_limit_l_overlapping_pair():
    # the two-element subfamily contributes its union [1,3] with sign +1
    table = to_sets(limit_l_vector(3, [(1, 2), (2, 3)]))
    assert table[frozenset({1, 2, 3})] == 1
    assert table[frozenset()] == 1
    assert table[frozenset({1, 2})] == -1


def test_limit_l_rejects_bad_interval():
    with pytest.raises(ValueError):
        limit_l_vector(3, [(2, 4)])


def test_halved_two_system_sum():
    t1 = to_sets(limit_l_vector(6, [(1, 2), (2, 6)]))
    t2 = to_sets(limit_l_vector(6, [(1, 5), (5, 6)]))

    def halved(ranks):
        s = frozenset(ranks)
        return Fraction(t1.get(s, 0) + t2.get(s, 0), 2)

    assert halved({3, 4}) == 0
    assert halved({1, 2, 3, 4}) == 0
    assert halved({3, 4, 5, 6}) == 0
    assert halved({1, 2, 3, 4, 5, 6}) == 1


def test_finite_families_approach_the_limit_table():
    # L values of the replicated-chain family, scaled by copies^k, settle
    # on the limit table: deviations never grow with the copies parameter,
    # and strictly shrink from 1 to 4 unless already exact at 1
    for n in range(2, 7):
        for sys in even_interval_systems(n):
            if len(sys) > 2:
                continue
            k = len(sys)
            tables = {
                c: l_vector(flag_vector(dp_poset(n, sys, c))) for c in (1, 2, 3, 4)
            }
            limit = limit_l_vector(n, sys)
            for q, lim in limit.items():
                if lim == 0:
                    continue
                dev = [
                    abs(tables[c].values[q] / Fraction(c) ** k - lim)
                    for c in (1, 2, 3, 4)
                ]
                assert all(a >= b for a, b in zip(dev, dev[1:])), (n, sys, q)
                if any(dev):
                    assert dev[3] < dev[0], (n, sys, q)


def test_limit_cd_coefficient_is_power_of_two_on_d_pairs():
    for n in range(1, 7):
        for word in cd_words(n):
            r = word.count("d")
            assert limit_cd_coefficient(word, d_intervals(word)) == 2**r, word


def test_limit_cd_coefficient_trivial_word():
    assert limit_cd_coefficient("ccc", []) == 1


# -- interval inequality ----------------------------------------------------


def test_inequality_preconditions():
    f = flag_vector(boolean(4))
    with pytest.raises(ValueError):
        inequality_f_form(f, {1, 2}, {1, 2, 3})  # run {1,2,3} meets T twice
    with pytest.raises(ValueError):
        inequality_f_form(f, {1}, {2, 3})  # T not inside V
    with pytest.raises(ValueError):
        inequality_f_form(f, {4}, {4, 5})  # V outside [1, 3]


def test_inequality_f_form_matches_oracle(small_corpus):
    for name, p in small_corpus[:15]:
        f = flag_vector(p)
        table = {
            frozenset(ranks_from_mask(m)): v for m, v in f.items()
        }
        for t_mask, v_mask in inequality_pairs(f.n):
            got = inequality_f_form(f, t_mask, v_mask)
            want = oracles.f_form(
                table, f.n, ranks_from_mask(t_mask), ranks_from_mask(v_mask)
            )
            assert got == want, (name, ranks_from_mask(t_mask), ranks_from_mask(v_mask))


def test_inequality_nonnegative_on_eulerian_corpus(corpus):
    for name, p in corpus:
        f = flag_vector(p)
        table = l_vector(f)
        for t_mask, v_mask in inequality_pairs(f.n):
            assert inequality_f_form(f, t_mask, v_mask) >= 0, name
            assert inequality_l_form(table, t_mask, v_mask) >= 0, name


def test_f_form_is_l_form_scaled_by_complement_and_t(corpus):
    # the two sides differ by the factor 2^(|S| + |T|), S = [1,n] - V
    for name, p in corpus[:60]:
        f = flag_vector(p)
        table = l_vector(f)
        n = f.n
        for t_mask, v_mask in inequality_pairs(n):
            s_size = n - bin(v_mask).count("1")
            t_size = bin(t_mask).count("1")
            assert inequality_f_form(f, t_mask, v_mask) == 2 ** (
                s_size + t_size
            ) * inequality_l_form(table, t_mask, v_mask), name


def test_inequality_can_fail_off_eulerian_posets():
    # the forms stay defined for the chain, and the f side goes negative
    f = flag_vector(chain(3))
    values = [
        inequality_f_form(f, t, v) for t, v in inequality_pairs(f.n)
    ]
    assert min(values) < 0


def test_inequality_pairs_match_brute_force():
    from itertools import combinations

    def brute(n):
        pairs = set()
        ranks = range(1, n + 1)
        for vsize in range(n + 1):
            for v in combinations(ranks, vsize):
                vset = set(v)
                runs = []
                for s in sorted(vset):
                    if runs and s == runs[-1][-1] + 1:
                        runs[-1].append(s)
                    else:
                        runs.append([s])
                for tsize in range(len(runs) + 1):
                    for t in combinations(sorted(vset), tsize):
                        if all(len(set(run) & set(t)) <= 1 for run in runs):
                            pairs.add((frozenset(t), frozenset(v)))
        return pairs

    for n in range(0, 6):
        got = {
            (frozenset(ranks_from_mask(t)), frozenset(ranks_from_mask(v)))
            for t, v in inequality_pairs(n)
        }
        assert got == brute(n)


# -- classification -----------------------------------------------------------


def test_classify_against_pattern_oracle():
    for n in range(1, 11):
        for word in cd_words(n):
            assert classify_word(word).tag == oracles.classify(word), word


def test_classify_known_words():
    assert classify_word("ccc").tag == "Part2"
    assert classify_word("dcc").tag == "Part1a"
    assert classify_word("cdc").tag == "Part1a"
    assert classify_word("cdcdc").tag == "Part1b"
    assert classify_word("ccdcc").tag == "Part3"
    assert classify_word("ddc").tag == "Part3"


def test_part3_witness_positions():
    w = classify_word("ccdcc")
    assert (w.witness, w.position) == ("ccdcc", 0)
    w = classify_word("cccdcc")
    assert (w.witness, w.position) == ("ccdcc", 1)
    w = classify_word("dccdc")
    assert (w.witness, w.position) == ("dccd", 0)
    w = classify_word("cdd")
    assert (w.witness, w.position) == ("dd", 1)


def test_count_part1_formula():
    for n in range(5, 11):
        assert count_part1_words(n) == math.comb(n - 2, 2) // 3 + 4
    with pytest.raises(ValueError):
        count_part1_words(4)


def test_classes_partition_all_words():
    for n in range(1, 11):
        words = cd_words(n)
        tags = [classify_word(w).tag for w in words]
        assert len(words) == sum(
            tags.count(t) for t in ("Part1a", "Part1b", "Part2", "Part3")
        )


# -- certificates --------------------------------------------------------------


def test_certificate_serialization_shape():
    cert = nonneg_certificate("cdcdc")
    assert cert.to_dict() == {
        "word": "cdcdc",
        "class": "Part1b",
        "S": [4],
        "T": [3, 5],
        "V": [1, 2, 3, 5, 6, 7],
    }


def test_certificate_rejected_for_other_classes():
    with pytest.raises(ValueError):
        nonneg_certificate("ccc")
    with pytest.raises(ValueError):
        nonneg_certificate("ccdcc")


def test_certificate_sets_describe_even_supersets():
    # Q evenly contains supp(w) exactly when Q is even and T <= Q <= V
    for n in range(1, 9):
        for word in cd_words(n):
            cls = classify_word(word)
            if cls.tag not in ("Part1a", "Part1b"):
                continue
            cert = cls.certificate
            supp = cd_support(word)
            assert cert.v_mask == full_mask(n) & ~cert.s_mask
            for q in range(1 << n):
                direct = evenly_contains(supp, q)
                via = (
                    is_even_set(q)
                    and cert.t_mask & ~q == 0
                    and q & ~cert.v_mask == 0
                )
                assert direct == via, (word, ranks_from_mask(q))


def test_certificate_identity_on_corpus(corpus):
    # Eq-1 sum over even supersets equals the certified inequality instance
    by_n = {}
    for name, p in corpus:
        by_n.setdefault(flag_vector(p).n, []).append((name, p))
    for n, group in by_n.items():
        part1 = [
            w
            for w in cd_words(n)
            if classify_word(w).tag in ("Part1a", "Part1b")
        ]
        for name, p in group[:8]:
            table = l_vector(flag_vector(p))
            poly = cd_index(p)
            for word in part1:
                cert = nonneg_certificate(word)
                r = word.count("d")
                via = 2**r * inequality_l_form(table, cert.t_mask, cert.v_mask)
                assert via == poly.coefficient(word), (name, word)


# -- negative witnesses ---------------------------------------------------------


def test_witness_cdd_values():
    for copies in (1, 2, 3):
        report = negative_witness("cdd", copies)
        assert report.coefficient == -4 * copies
        assert report.base == f"dp(4,[[1,4]],{copies})"
        assert report.poset.is_eulerian().eulerian


def test_witness_routing():
    assert negative_witness("ccdcc", 2).base == "lemma3(2)"
    assert negative_witness("dcccd", 2).base == "lemma2(7,2)"
    assert negative_witness("dccd", 2).base == "dp(6,[[1,6]],2)"
    assert negative_witness("ddc", 2).base == "dp(4,[[1,4]],2)"


def test_witness_matches_lemma_values():
    assert negative_witness("dcccd", 2).coefficient == 4 * (4 - 16)
    assert negative_witness("ccdcc", 3).coefficient == -2 * (3 - 1) ** 2


def test_witness_rejects_other_classes():
    with pytest.raises(ValueError):
        negative_witness("cdc", 2)
    with pytest.raises(ValueError):
        negative_witness("cccc", 2)


def test_witness_strictly_decreasing_small_degrees():
    words = [
        w for n in range(1, 7) for w in cd_words(n) if classify_word(w).tag == "Part3"
    ]
    for word in words:
        values = [negative_witness(word, copies).coefficient for copies in (2, 3, 4)]
        assert values[0] > values[1] > values[2], (word, values)


@pytest.mark.parametrize("copies", [1, 2, 3])
def test_witness_poset_carries_the_negative_coefficient(copies):
    report = negative_witness("ddcc", copies)
    assert cd_index(report.poset).coefficient("ddcc") == report.coefficient
    assert report.coefficient <= 0

"""Command line interface.

Poset arguments accept either a path to a JSON file produced by ``build``
or an inline construction expression (see :mod:`cdposets.exprs`).  Output
is deterministic: JSON with sorted keys, or fixed-width tables.

Exit codes: 0 on success, 1 when a mathematical check fails (a poset is
not Eulerian, an inequality is violated, a verification suite mismatches),
2 on usage errors (bad syntax, bad ranges, malformed input, budgets).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .analysis import (
    classify_word,
    inequality_f_form,
    inequality_l_form,
    inequality_pairs,
    limit_l_vector,
    negative_witness,
    nonneg_certificate,
)
from .constructions import dp_poset, lemma2_poset, lemma3_poset
from .corpus import eulerian_corpus, join_pairs
from .errors import BudgetError, NotCdExpressibleError
from .exprs import ExpressionError, build_poset, parse_expression
from .flags import (
    CdPolynomial,
    cd_index,
    cd_words,
    flag_vector,
    l_vector,
)
from .poset import RankedPoset, boolean
from .subsets import parse_subset, subset_label


def _load_poset(text: str, budget: int | None) -> RankedPoset:
    if os.path.exists(text):
        with open(text) as handle:
            data = json.load(handle)
        poset = RankedPoset.from_dict(data)
        diags = poset.validate()
        if diags:
            raise ValueError(f"{text}: invalid poset: " + "; ".join(diags))
        return poset
    return build_poset(parse_expression(text), budget=budget)


def _emit_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _emit_table(rows: list[dict], columns: list[str]) -> None:
    widths = {
        col: max(len(col), *(len(str(row.get(col, ""))) for row in rows)) if rows else len(col)
        for col in columns
    }
    header = "  ".join(col.ljust(widths[col]) for col in columns)
    print(header)
    print("  ".join("-" * widths[col] for col in columns))
    for row in rows:
        print("  ".join(str(row.get(col, "")).ljust(widths[col]) for col in columns))


def _add_poset_arg(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("poset", help="JSON file or construction expression")
    sub.add_argument(
        "--max-elements",
        type=int,
        default=None,
        help="element budget for constructions (default 10^6)",
    )


def _add_format_arg(sub: argparse.ArgumentParser, default: str) -> None:
    sub.add_argument("--format", choices=["json", "table"], default=default)


# -- subcommands --------------------------------------------------------


def _cmd_build(args) -> int:
    poset = _load_poset(args.expr, args.max_elements)
    text = json.dumps(poset.to_dict(), sort_keys=True, indent=2)
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    return 0


def _cmd_flags(args) -> int:
    table = flag_vector(_load_poset(args.poset, args.max_elements))
    if args.format == "json":
        _emit_json(table.to_dict())
    else:
        rows = [
            {"S": subset_label(mask), "f_S": str(value)} for mask, value in table.items()
        ]
        _emit_table(rows, ["S", "f_S"])
    return 0


def _cmd_cd_index(args) -> int:
    poly = cd_index(_load_poset(args.poset, args.max_elements))
    if args.format == "json":
        _emit_json(poly.to_dict())
    else:
        rows = [
            {"word": word, "coefficient": poly.terms[word]}
            for word in sorted(poly.terms)
        ]
        _emit_table(rows, ["word", "coefficient"])
    return 0


def _cmd_l_vector(args) -> int:
    table = l_vector(flag_vector(_load_poset(args.poset, args.max_elements)))
    if args.format == "json":
        _emit_json(table.to_dict())
    else:
        rows = [
            {"Q": subset_label(mask), "L_Q": str(value)} for mask, value in table.nonzero()
        ]
        _emit_table(rows, ["Q", "L_Q"])
    return 0


def _cmd_check_eulerian(args) -> int:
    result = _load_poset(args.poset, args.max_elements).is_eulerian()
    if result.eulerian:
        if args.format == "json":
            _emit_json({"eulerian": True})
        else:
            print("eulerian: yes")
        return 0
    v = result.violation
    detail = {
        "eulerian": False,
        "interval": {
            "low": [v.rank_low, v.index_low],
            "high": [v.rank_high, v.index_high],
            "even_count": v.even_count,
            "odd_count": v.odd_count,
        },
    }
    if args.format == "json":
        _emit_json(detail)
    else:
        print(
            f"eulerian: no; interval from rank {v.rank_low} index {v.index_low} "
            f"to rank {v.rank_high} index {v.index_high} has "
            f"{v.even_count} even and {v.odd_count} odd elements"
        )
    return 1


def _cmd_check_inequality(args) -> int:
    poset = _load_poset(args.poset, args.max_elements)
    flags = flag_vector(poset)
    table = l_vector(flags)
    if args.all:
        pairs = 0
        violations = []
        for t_mask, v_mask in inequality_pairs(flags.n):
            pairs += 1
            f_val = inequality_f_form(flags, t_mask, v_mask)
            l_val = inequality_l_form(table, t_mask, v_mask)
            if f_val < 0 or l_val < 0:
                violations.append(
                    {
                        "T": subset_label(t_mask),
                        "V": subset_label(v_mask),
                        "f_form": str(f_val),
                        "l_form": str(l_val),
                    }
                )
        summary = {"pairs": pairs, "violations": violations}
        if args.format == "json":
            _emit_json(summary)
        else:
            print(f"checked {pairs} (T, V) pairs, {len(violations)} violations")
            if violations:
                _emit_table(violations, ["T", "V", "f_form", "l_form"])
        return 1 if violations else 0
    if args.T is None or args.V is None:
        raise ValueError("provide either --all or both --T and --V")
    t_mask, v_mask = parse_subset(args.T), parse_subset(args.V)
    f_val = inequality_f_form(flags, t_mask, v_mask)
    l_val = inequality_l_form(table, t_mask, v_mask)
    detail = {
        "T": subset_label(t_mask),
        "V": subset_label(v_mask),
        "f_form": str(f_val),
        "l_form": str(l_val),
        "nonnegative": f_val >= 0 and l_val >= 0,
    }
    if args.format == "json":
        _emit_json(detail)
    else:
        _emit_table([detail], ["T", "V", "f_form", "l_form", "nonnegative"])
    return 0 if detail["nonnegative"] else 1


def _cmd_limit_l(args) -> int:
    intervals = _parse_intervals(args.intervals)
    if args.max_k is not None and len(intervals) > args.max_k:
        raise BudgetError(f"{len(intervals)} intervals exceed --max-k {args.max_k}")
    table = limit_l_vector(args.n, intervals)
    entries = {subset_label(mask): value for mask, value in sorted(table.items())}
    if args.format == "json":
        _emit_json({"n": args.n, "entries": entries})
    else:
        rows = [{"S": key, "L_S": value} for key, value in entries.items()]
        _emit_table(rows, ["S", "L_S"])
    return 0


def _parse_intervals(text: str) -> list[tuple[int, int]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad interval list {text!r}: {exc}") from None
    if not isinstance(data, list):
        raise ValueError("intervals must be a JSON list of [low, high] pairs")
    out = []
    for pair in data:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ValueError(f"bad interval {pair!r}")
        out.append((int(pair[0]), int(pair[1])))
    return out


def _cmd_classify(args) -> int:
    result = classify_word(args.word)
    if args.format == "json":
        _emit_json(result.to_dict())
    else:
        parts = [f"word {result.word}", f"class {result.tag}"]
        if result.witness is not None:
            parts.append(f"witness {result.witness} at {result.position}")
        print("; ".join(parts))
    return 0


def _cmd_certificate(args) -> int:
    cert = nonneg_certificate(args.word)
    if args.format == "json":
        _emit_json(cert.to_dict())
    else:
        data = cert.to_dict()
        print(
            f"word {data['word']}; class {data['class']}; "
            f"S {data['S']}; T {data['T']}; V {data['V']}"
        )
    return 0


def _cmd_witness(args) -> int:
    report = negative_witness(args.word, args.N, budget=args.max_elements)
    data = report.to_dict()
    data["rank"] = report.poset.rank
    data["elements"] = report.poset.num_elements
    if args.format == "json":
        _emit_json(data)
    else:
        print(
            f"word {data['word']}; witness {data['witness']} at {data['position']}; "
            f"base {data['base']}; coefficient {data['coefficient']}"
        )
    return 0


# -- verification suites -------------------------------------------------


def _row(check: str, expected, actual) -> dict:
    return {
        "check": check,
        "expected": str(expected),
        "actual": str(actual),
        "ok": str(expected) == str(actual),
    }


def _closed_form(n: int, copies: int) -> CdPolynomial:
    c = CdPolynomial.monomial("c")
    d = CdPolynomial.monomial("d")
    return (copies + 1) * c**n - copies * (c * c - 2 * d) ** (n // 2)


def _suite_lemma1() -> list[dict]:
    rows = []
    for n in (4, 6):
        for copies in (1, 2, 3):
            actual = cd_index(dp_poset(n, [(1, n)], copies))
            rows.append(
                _row(
                    f"cd-index of dp({n},[[1,{n}]],{copies})",
                    _closed_form(n, copies),
                    actual,
                )
            )
    return rows


def _suite_lemma2() -> list[dict]:
    rows = []
    for copies in (1, 2):
        poset = lemma2_poset(7, copies)
        rows.append(
            _row(f"lemma2(7,{copies}) eulerian", True, poset.is_eulerian().eulerian)
        )
        rows.append(
            _row(
                f"lemma2(7,{copies}) coefficient of dcccd",
                4 * (copies**2 - copies**4),
                cd_index(poset).coefficient("dcccd"),
            )
        )
    return rows


def _suite_lemma3() -> list[dict]:
    rows = []
    for copies in (1, 2, 3):
        poset = lemma3_poset(copies)
        rows.append(
            _row(f"lemma3({copies}) eulerian", True, poset.is_eulerian().eulerian)
        )
        rows.append(
            _row(
                f"lemma3({copies}) coefficient of ccdcc",
                -2 * (copies - 1) ** 2,
                cd_index(poset).coefficient("ccdcc"),
            )
        )
    return rows


def _suite_note_count() -> list[dict]:
    from .analysis import count_part1_words

    rows = []
    for n in range(1, 11):
        words = cd_words(n)
        tags = [classify_word(w).tag for w in words]
        split = {tag: tags.count(tag) for tag in ("Part1a", "Part1b", "Part2", "Part3")}
        rows.append(_row(f"degree {n} classes partition", len(words), sum(split.values())))
    for n in range(5, 11):
        rows.append(
            _row(
                f"degree {n} Part1 count",
                math.comb(n - 2, 2) // 3 + 4,
                count_part1_words(n),
            )
        )
    fib = [0, 1, 1]
    while len(fib) < 15:
        fib.append(fib[-1] + fib[-2])
    for n in range(1, 13):
        rows.append(_row(f"degree {n} word count", fib[n + 1], len(cd_words(n))))
    return rows


def _suite_join_mult() -> list[dict]:
    from .constructions import join as join_posets

    rows = []
    for name, left, right in join_pairs():
        joined = join_posets(left, right)
        rows.append(
            _row(
                f"{name} cd-index multiplicative",
                cd_index(left) * cd_index(right),
                cd_index(joined),
            )
        )
        rows.append(_row(f"{name} eulerian", True, joined.is_eulerian().eulerian))
    return rows


def _suite_duality() -> list[dict]:
    from .subsets import reverse_mask

    rows = []
    for name, poset in eulerian_corpus():
        dual = poset.dual()
        ok_cd = cd_index(dual) == cd_index(poset).reverse()
        flags = flag_vector(poset)
        dual_flags = flag_vector(dual)
        ok_flags = all(
            dual_flags.values[mask] == flags.values[reverse_mask(mask, flags.n)]
            for mask in range(1 << flags.n)
        )
        rows.append(_row(f"{name} duality", True, ok_cd and ok_flags))
    return rows


def _suite_boolean_positivity() -> list[dict]:
    rows = []
    for k in range(1, 7):
        poly = cd_index(boolean(k))
        rows.append(
            _row(
                f"boolean({k}) strictly positive cd coefficients",
                True,
                bool(poly.terms) and min(poly.terms.values()) > 0,
            )
        )
    return rows


_SUITES = {
    "lemma1": _suite_lemma1,
    "lemma2": _suite_lemma2,
    "lemma3": _suite_lemma3,
    "note-count": _suite_note_count,
    "join-mult": _suite_join_mult,
    "duality": _suite_duality,
    "boolean-positivity": _suite_boolean_positivity,
}


def _cmd_verify(args) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    rows = []
    for name in names:
        for row in _SUITES[name]():
            row = dict(row)
            row["suite"] = name
            rows.append(row)
    failed = [row for row in rows if not row["ok"]]
    if args.format == "json":
        _emit_json({"rows": rows, "passed": not failed})
    else:
        _emit_table(rows, ["suite", "check", "expected", "actual", "ok"])
        print(f"{len(rows) - len(failed)}/{len(rows)} checks passed")
    return 1 if failed else 0


# -- argument parsing -----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cdposets",
        description="Build ranked posets and compute their flag and cd data.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("build", help="evaluate a construction expression")
    sub.add_argument("expr")
    sub.add_argument("-o", "--output", default=None)
    sub.add_argument("--max-elements", type=int, default=None)
    sub.set_defaults(func=_cmd_build)

    sub = subs.add_parser("flags", help="flag vector of a poset")
    _add_poset_arg(sub)
    _add_format_arg(sub, "json")
    sub.set_defaults(func=_cmd_flags)

    sub = subs.add_parser("cd-index", help="cd-index of a poset")
    _add_poset_arg(sub)
    _add_format_arg(sub, "json")
    sub.set_defaults(func=_cmd_cd_index)

    sub = subs.add_parser("l-vector", help="L table of a poset")
    _add_poset_arg(sub)
    _add_format_arg(sub, "json")
    sub.set_defaults(func=_cmd_l_vector)

    sub = subs.add_parser("check-eulerian", help="exhaustive Eulerian test")
    _add_poset_arg(sub)
    _add_format_arg(sub, "json")
    sub.set_defaults(func=_cmd_check_eulerian)

    sub = subs.add_parser(
        "check-inequality", help="interval inequality over one pair or all pairs"
    )
    _add_poset_arg(sub)
    _add_format_arg(sub, "json")
    sub.add_argument("--all", action="store_true")
    sub.add_argument("--T", default=None, help='T subset, e.g. "[1,2]"')
    sub.add_argument("--V", default=None, help='V subset, e.g. "[1,2,3]"')
    sub.set_defaults(func=_cmd_check_inequality)

    sub = subs.add_parser("limit-l", help="limit L table of an interval system")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--intervals", required=True, help='e.g. "[[1,2],[3,4]]"')
    sub.add_argument("--max-k", type=int, default=None)
    _add_format_arg(sub, "json")
    sub.set_defaults(func=_cmd_limit_l)

    sub = subs.add_parser("classify", help="classify a cd word")
    sub.add_argument("word")
    _add_format_arg(sub, "json")
    sub.set_defaults(func=_cmd_classify)

    sub = subs.add_parser("certificate", help="nonnegativity certificate of a word")
    sub.add_argument("word")
    _add_format_arg(sub, "json")
    sub.set_defaults(func=_cmd_certificate)

    sub = subs.add_parser("witness", help="negative-coefficient witness poset")
    sub.add_argument("word")
    sub.add_argument("--N", type=int, required=True, help="copies parameter")
    sub.add_argument("--max-elements", type=int, default=None)
    _add_format_arg(sub, "json")
    sub.set_defaults(func=_cmd_witness)

    sub = subs.add_parser("verify", help="run a verification suite")
    sub.add_argument("suite", choices=sorted(_SUITES) + ["all"])
    _add_format_arg(sub, "table")
    sub.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except NotCdExpressibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ExpressionError, BudgetError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main(sys.argv[1:]))

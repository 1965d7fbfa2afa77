"""Expression language round trips and parse diagnostics."""

import pytest

from cdposets import (
    ExpressionError,
    boolean,
    build_poset,
    chain,
    dp_poset,
    glue,
    horizontal_double,
    join,
    lemma2_poset,
    lemma3_poset,
    parse_expression,
    replicate_interval,
)


def build(text):
    return build_poset(parse_expression(text))


@pytest.mark.parametrize(
    "text,direct",
    [
        ("chain(4)", lambda: chain(4)),
        ("boolean(3)", lambda: boolean(3)),
        ("dual(boolean(3))", lambda: boolean(3).dual()),
        ("double(chain(3))", lambda: horizontal_double(chain(3))),
        ("dni(chain(5), 1, 4, 3)", lambda: replicate_interval(chain(5), 1, 4, 3)),
        ("join(boolean(2), chain(2))", lambda: join(boolean(2), chain(2))),
        ("dp(4, [[1, 2], [3, 4]], 2)", lambda: dp_poset(4, [(1, 2), (3, 4)], 2)),
        ("lemma2(7, 2)", lambda: lemma2_poset(7, 2)),
        ("lemma3(2)", lambda: lemma3_poset(2)),
        (
            "glue([boolean(3), boolean(3)], [[0, 3], [0, 3]])",
            lambda: glue([(boolean(3), (0, 3)), (boolean(3), (0, 3))]),
        ),
    ],
)
def test_build_matches_direct_constructors(text, direct):
    assert build(text) == direct()


def test_whitespace_insensitive():
    assert build(" dp( 4,[[1,4]] , 1 ) ") == dp_poset(4, [(1, 4)], 1)


def test_nested_expressions():
    got = build("join(dual(boolean(2)), double(chain(2)))")
    assert got == join(boolean(2).dual(), horizontal_double(chain(2)))


def test_parse_tree_shape():
    node = parse_expression("dp(4, [[1, 4]], 2)")
    assert node.kind == "dp"
    assert node.args == (4, ((1, 4),), 2)


@pytest.mark.parametrize(
    "text,fragment,position",
    [
        ("frob(3)", "unknown constructor 'frob'", 0),
        ("chain(x)", "expected an integer", 6),
        ("chain(3", "expected ')'", 7),
        ("chain(3))", "trailing input", 8),
        ("dp(4, [[1, 4, 5]], 1)", "interval", 16),
        ("join(chain(2) chain(2))", "expected ','", 14),
        ("chain(3)$", "unexpected character", 8),
        ("", "expected a constructor name", 0),
    ],
)
def test_parse_errors_carry_offsets(text, fragment, position):
    with pytest.raises(ExpressionError) as err:
        parse_expression(text)
    assert fragment in str(err.value)
    assert err.value.position == position


def test_domain_errors_pass_through():
    with pytest.raises(ValueError):
        build("dp(4, [[1, 3]], 1)")  # odd interval
    with pytest.raises(ValueError):
        build("chain(0)")


def test_glue_length_mismatch():
    with pytest.raises(ValueError, match="rank sets"):
        build("glue([boolean(3)], [[0, 3], [0, 3]])")

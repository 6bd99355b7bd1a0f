import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from archie_lab import fixtures
from archie_lab.rewardlang import (
    RewardSyntaxError,
    parse_expr,
    parse_reward_spec,
    serialize_spec,
    to_text,
)
from archie_lab.rewardlang.ast import (
    Abs,
    Add,
    And,
    Clamp,
    Cmp,
    Const,
    Dist,
    MaxE,
    MinE,
    Mul,
    Neg,
    Not,
    Or,
    Sub,
    Var,
)

MINIMAL = "component dist: -dist(agent, object)\nsuccess: object.y >= 0.5\n"


def test_minimal_program_parses():
    spec = parse_reward_spec(MINIMAL)
    assert spec.component_names() == ("dist",)
    assert spec.failure is None
    assert spec.horizon == 1000


def test_missing_success_is_its_own_error_code():
    with pytest.raises(RewardSyntaxError) as exc:
        parse_reward_spec("component a: 1\n")
    assert exc.value.code == "MissingSuccess"


def test_duplicate_component_is_its_own_error_code():
    text = "component a: 1\ncomponent a: 2\nsuccess: 1 > 0\n"
    with pytest.raises(RewardSyntaxError) as exc:
        parse_reward_spec(text)
    assert exc.value.code == "DuplicateComponent"


def test_syntax_error_reports_line_and_column():
    with pytest.raises(RewardSyntaxError) as exc:
        parse_reward_spec("component a: (1 + \nsuccess: 1 > 0\n")
    assert exc.value.code == "SyntaxError"
    assert exc.value.line >= 1
    assert exc.value.col >= 1


def test_component_after_success_violates_block_order():
    text = "success: 1 > 0\ncomponent a: 1\n"
    with pytest.raises(RewardSyntaxError):
        parse_reward_spec(text)


def test_duplicate_success_block_rejected():
    with pytest.raises(RewardSyntaxError):
        parse_reward_spec("success: 1 > 0\nsuccess: 2 > 0\n")


def test_comments_and_whitespace_ignored():
    text = "# header\ncomponent a: 1 + 2  # trailing\n\nsuccess: a > 0 # done\n"
    spec = parse_reward_spec(text)
    assert spec.components[0].expr == Add(Const(1), Const(2))


def test_precedence_mul_binds_tighter_than_add():
    assert parse_expr("1 + 2 * 3") == Add(Const(1), Mul(Const(2), Const(3)))


def test_precedence_comparison_over_logic():
    node = parse_expr("a < b and c >= d or e > f")
    assert node == Or(
        And(Cmp(Var("a"), Var("b"), "<"), Cmp(Var("c"), Var("d"), ">=")),
        Cmp(Var("e"), Var("f"), ">"),
    )


def test_not_binds_whole_comparison():
    assert parse_expr("not a < b") == Not(Cmp(Var("a"), Var("b"), "<"))


def test_unary_minus_folds_adjacent_literal():
    assert parse_expr("-3") == Const(-3.0)
    assert parse_expr("2 - -3") == Sub(Const(2), Const(-3.0))
    assert parse_expr("-agent.x") == Neg(Var("agent.x"))


def test_calls_parse():
    assert parse_expr("min(a, 2)") == MinE(Var("a"), Const(2))
    assert parse_expr("max(a, b)") == MaxE(Var("a"), Var("b"))
    assert parse_expr("abs(a - b)") == Abs(Sub(Var("a"), Var("b")))
    assert parse_expr("clamp(a, -1, 1.5)") == Clamp(Var("a"), lo=-1.0, hi=1.5)
    assert parse_expr("dist(agent, object)") == Dist("agent", "object")


def test_clamp_inverted_bounds_rejected():
    with pytest.raises(RewardSyntaxError):
        parse_expr("clamp(a, 1, -1)")


def test_boolean_allowed_inside_arithmetic():
    node = parse_expr("10 * (a > 0.005)")
    assert node == Mul(Const(10), Cmp(Var("a"), Const(0.005), ">"))


def test_keyword_cannot_start_expression():
    with pytest.raises(RewardSyntaxError):
        parse_expr("and a")


def test_trailing_garbage_after_expression():
    with pytest.raises(RewardSyntaxError):
        parse_expr("a + b )")


def test_unexpected_character():
    with pytest.raises(RewardSyntaxError):
        parse_expr("a / b")


# --- round-trips ------------------------------------------------------------


def test_fixture_corpus_round_trips():
    for name in fixtures.spec_names():
        spec = parse_reward_spec(fixtures.load_spec_text(name))
        reparsed = parse_reward_spec(serialize_spec(spec))
        assert reparsed.components == spec.components, name
        assert reparsed.success == spec.success, name
        assert reparsed.failure == spec.failure, name


_names = st.sampled_from(["a", "b2", "agent.x", "object.y", "cube.z", "tip.speed"])
_groups = st.sampled_from(["agent", "object", "cube", "tip"])
_consts = st.floats(
    min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False
).map(lambda v: Const(float(v)))


def _exprs():
    numeric_leaf = st.one_of(
        _consts,
        _names.map(Var),
        st.tuples(_groups, _groups).map(lambda g: Dist(*g)),
    )

    def extend(children):
        binary = st.tuples(children, children)
        bounds = st.tuples(
            st.floats(-10, 0, allow_nan=False), st.floats(0, 10, allow_nan=False)
        )
        return st.one_of(
            binary.map(lambda ab: Add(*ab)),
            binary.map(lambda ab: Sub(*ab)),
            binary.map(lambda ab: Mul(*ab)),
            binary.map(lambda ab: MinE(*ab)),
            binary.map(lambda ab: MaxE(*ab)),
            children.map(Neg),
            children.map(Abs),
            st.tuples(children, bounds).map(
                lambda t: Clamp(t[0], lo=float(t[1][0]), hi=float(t[1][1]))
            ),
            st.tuples(children, children, st.sampled_from(["<", "<=", ">", ">="])).map(
                lambda t: Cmp(t[0], t[1], t[2])
            ),
            binary.map(lambda ab: And(*ab)),
            binary.map(lambda ab: Or(*ab)),
            children.map(Not),
        )

    return st.recursive(numeric_leaf, extend, max_leaves=25)


@settings(max_examples=300, deadline=None)
@given(expr=_exprs())
def test_serializer_round_trips_random_trees(expr):
    assert parse_expr(to_text(expr)) == expr

import pytest
from hypothesis import given, settings

from conftest import AB, INF, monitors
from regmon.syntax import (
    ParseError,
    parse_alphabet,
    parse_equation,
    parse_monitor,
    parse_substitution,
    parse_term_file,
    parse_trace,
    print_monitor,
    print_trace,
)
from regmon.terms import NO, YES, Prefix, Sum, Var


def test_parse_basic_sum():
    assert parse_monitor("a.yes + b.no", AB) == Sum(Prefix("a", YES), Prefix("b", NO))


def test_parse_example_equation_lhs():
    m = parse_monitor("x + a.(x + a.(yes+no) + b.(yes+no))", AB)
    inner = Sum(Sum(Var("x"), Prefix("a", Sum(YES, NO))), Prefix("b", Sum(YES, NO)))
    assert m == Sum(Var("x"), Prefix("a", inner))


def test_prefix_right_associative():
    # a.b.yes reads as a.(b.yes)
    assert parse_monitor("a.b.yes", AB) == Prefix("a", Prefix("b", YES))


def test_sum_left_associated():
    m = parse_monitor("yes + no + x", AB)
    assert m == Sum(Sum(YES, NO), Var("x"))


def test_print_requires_parens_under_prefix():
    assert print_monitor(Prefix("a", Sum(YES, NO))) == "a.(yes + no)"


def test_print_simple_sum():
    assert print_monitor(Sum(YES, Var("x"))) == "yes + x"


@given(monitors())
@settings(max_examples=1000)
def test_print_parse_round_trip(m):
    assert parse_monitor(print_monitor(m), AB) == m


@given(monitors())
@settings(max_examples=200)
def test_parse_print_identity_on_canonical_text(m):
    text = print_monitor(m)
    assert print_monitor(parse_monitor(text, AB)) == text


def test_parse_alphabet():
    assert parse_alphabet("a,b").actions == frozenset({"a", "b"})
    assert parse_alphabet("infinite").actions is None
    with pytest.raises(ParseError) as err:
        parse_alphabet("a,a")
    assert err.value.kind == "UnexpectedToken"
    with pytest.raises(ParseError) as err:
        parse_alphabet("yes,a")
    assert err.value.kind == "ReservedWordAsAction"


def test_parse_equation_o1():
    eq = parse_equation("yes + no = yes + no + x", Alphabet_a())
    assert eq.lhs == Sum(YES, NO)
    assert eq.rhs == Sum(Sum(YES, NO), Var("x"))


def Alphabet_a():
    from regmon.terms import Alphabet

    return Alphabet.finite(["a"])


def test_open_ended_needs_declared_vars():
    # without a declaration every identifier is an action
    m = parse_monitor("q.yes", INF)
    assert m == Prefix("q", YES)
    m = parse_monitor("x + q.yes", INF, variables={"x"})
    assert m == Sum(Var("x"), Prefix("q", YES))


def test_variable_cannot_be_prefixed():
    with pytest.raises(ParseError):
        parse_monitor("x.yes", AB)


def test_bare_action_is_an_error():
    with pytest.raises(ParseError) as err:
        parse_monitor("a + yes", AB)
    assert err.value.kind == "UnexpectedToken"


def test_empty_input():
    with pytest.raises(ParseError) as err:
        parse_monitor("   ", AB)
    assert err.value.kind == "EmptyInput"


def test_unbalanced_paren():
    with pytest.raises(ParseError) as err:
        parse_monitor("(yes + no", AB)
    assert err.value.kind == "UnbalancedParen"


def test_error_spans_point_into_input():
    text = "yes + @"
    with pytest.raises(ParseError) as err:
        parse_monitor(text, AB)
    assert 0 <= err.value.span.offset <= len(text)
    assert err.value.span.line == 1


def test_comments_and_whitespace():
    assert parse_monitor("a.yes   # trailing comment\n + no", AB) == Sum(
        Prefix("a", YES), NO
    )


def test_trace_round_trip():
    assert parse_trace("<eps>") == ()
    assert parse_trace("a b a") == ("a", "b", "a")
    assert print_trace(()) == "<eps>"
    assert print_trace(("a", "b")) == "a b"


def test_substitution_lines():
    sigma = parse_substitution("x -> a.yes\ny -> end  # comment", AB)
    assert sigma == {"x": Prefix("a", YES), "y": parse_monitor("end", AB)}


def test_term_file_named_terms_and_headers():
    tf = parse_term_file(
        """
        # demo file
        alphabet: a,b
        vars: z
        m1 := a.yes + z
        m2 := b.no
        """
    )
    assert set(tf.terms) == {"m1", "m2"}
    assert tf.terms["m1"] == Sum(Prefix("a", YES), Var("z"))
    assert tf.variables == {"z"}


def test_term_file_single_bare_term():
    tf = parse_term_file("alphabet: a\na.yes")
    assert tf.single() == Prefix("a", YES)

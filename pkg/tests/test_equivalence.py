import random

import pytest

from conftest import AB, A, INF
from regmon import equivalence, semantics
from regmon.axioms import instantiate, prefix_seq
from regmon.equivalence import (
    Counterexample,
    closed_counterexample,
    omega_equiv_closed,
    omega_equiv_open,
    oracle_counterexample,
    oracle_equiv_open,
    substitution_family,
    substitution_values,
    verdict_equiv_closed,
    verdict_equiv_open,
)
from regmon.generate import random_closed_monitor, random_open_monitor
from regmon.syntax import parse_monitor
from regmon.terms import (
    END,
    NO,
    YES,
    NonClosedInput,
    Sum,
    Var,
    apply_subst,
    depth,
    vars_of,
)


def t(text, alphabet=AB):
    return parse_monitor(text, alphabet)


def test_end_is_a_unit():
    m = t("a.yes + b.(no + a.yes)")
    assert verdict_equiv_closed(Sum(m, END), m, AB)


def test_absorbed_deep_summand():
    assert verdict_equiv_closed(t("yes"), t("yes + a.a.a.yes"), AB)


def test_fan_differs_at_epsilon():
    fan = t("a.yes + b.yes")
    assert not verdict_equiv_closed(YES, fan, AB)
    trace, side = closed_counterexample(YES, fan, AB)
    assert trace == ()
    assert side == "AcceptedOnlyByLeft"


def test_closed_requires_closed():
    with pytest.raises(NonClosedInput):
        verdict_equiv_closed(Var("x"), YES, AB)


def test_omega_fan_equals_yes():
    assert omega_equiv_closed(YES, t("a.yes + b.yes"), AB)


def test_omega_contains_verdict_equivalence():
    rng = random.Random(21)
    for _ in range(100):
        m = random_closed_monitor(rng, AB, 4)
        n = random_closed_monitor(rng, AB, 4)
        if verdict_equiv_closed(m, n, AB):
            assert omega_equiv_closed(m, n, AB)


def test_omega_yes_vs_no():
    assert not omega_equiv_closed(YES, NO, AB)


def test_closed_equiv_matches_antichain_comparison():
    # the product search must agree with the definition: equality of the
    # minimal accepted and rejected trace antichains
    rng = random.Random(41)
    for _ in range(200):
        m = random_closed_monitor(rng, AB, 4)
        n = random_closed_monitor(rng, AB, 4)
        by_lang = semantics.lang_of(m, AB) == semantics.lang_of(n, AB)
        assert verdict_equiv_closed(m, n, AB) == by_lang


def test_omega_equiv_matches_folded_antichains():
    rng = random.Random(43)
    for _ in range(200):
        m = random_closed_monitor(rng, AB, 4)
        n = random_closed_monitor(rng, AB, 4)
        lm, ln = semantics.lang_of(m, AB), semantics.lang_of(n, AB)
        by_cones = semantics.omega_canon(lm.accept_min, AB) == semantics.omega_canon(
            ln.accept_min, AB
        ) and semantics.omega_canon(lm.reject_min, AB) == semantics.omega_canon(
            ln.reject_min, AB
        )
        assert omega_equiv_closed(m, n, AB) == by_cones


def test_substitution_values_unary_bound_one():
    # enumeration oracle: {end, yes, no} plus t.yes / t.no / t.(yes+no)
    # for t in {eps, a}, as a set of distinct terms
    values = substitution_values(A, 1)
    expected = {END, YES, NO, Sum(YES, NO)}
    for trace in [("a",)]:
        for leaf in (YES, NO, Sum(YES, NO)):
            expected.add(prefix_seq(trace, leaf))
    assert set(values) == expected
    assert len(values) == 7


def test_substitution_family_counts():
    assert substitution_family([], AB, 3) == [{}]
    fam = substitution_family(["x"], A, 1)
    assert len(fam) == 7
    fam2 = substitution_family(["x", "y"], AB, 1)
    assert len(fam2) == len(substitution_values(AB, 1)) ** 2 == 100


def test_substitution_family_cap_keeps_single_active():
    values = substitution_values(AB, 3)
    fam = substitution_family(["x", "y"], AB, 3, cap=500)
    for v in values:
        assert {"x": v, "y": END} in fam
        assert {"x": END, "y": v} in fam


def test_oracle_o1_sound():
    assert oracle_equiv_open(t("yes + no"), t("yes + no + x"), AB)


def test_oracle_v1_alphabet_split():
    assert oracle_equiv_open(t("x", A), t("x + a.x", A), A)
    assert not oracle_equiv_open(t("x"), t("x + a.x"), AB)


def test_oracle_o2_instance_sound():
    inst = instantiate("O2", {"s": ("a",), "k": 1}, AB)
    assert oracle_equiv_open(inst.equation.lhs, inst.equation.rhs, AB)


def test_oracle_counterexample_replays():
    cex = oracle_counterexample(t("x"), t("x + a.x"), AB)
    assert isinstance(cex, Counterexample)
    sigma = dict(cex.substitution)
    lhs = apply_subst(sigma, t("x"))
    rhs = apply_subst(sigma, t("x + a.x"))
    acc_l = semantics.accepts(lhs, cex.trace)
    acc_r = semantics.accepts(rhs, cex.trace)
    rej_l = semantics.rejects(lhs, cex.trace)
    rej_r = semantics.rejects(rhs, cex.trace)
    assert {
        "AcceptedOnlyByLeft": acc_l and not acc_r,
        "AcceptedOnlyByRight": acc_r and not acc_l,
        "RejectedOnlyByLeft": rej_l and not rej_r,
        "RejectedOnlyByRight": rej_r and not rej_l,
    }[cex.side]


def test_oracle_counterexample_trace_is_globally_minimal():
    rng = random.Random(77)
    checked = 0
    for _ in range(200):
        m = random_open_monitor(rng, AB, 3)
        n = random_open_monitor(rng, AB, 3)
        cex = oracle_counterexample(m, n, AB, bound=3, cap=256)
        if cex is None:
            continue
        checked += 1
        shortest = min(
            (
                c.trace
                for c in equivalence._oracle_failures(
                    m, n, AB, equivalence.VERDICT, 3, 256, 0
                )
            ),
            key=len,
        )
        assert len(cex.trace) == len(shortest)
        if checked >= 15:
            break
    assert checked


def test_open_verdict_section4_examples():
    lhs = t("x + a.(x + a.(yes+no) + b.(yes+no))")
    rhs = t("x + a.(a.(yes+no) + b.(yes+no))")
    assert verdict_equiv_open(lhs, rhs, AB)
    one_sided = t("a.(x + a.(yes+no) + b.(yes+no))")
    assert not verdict_equiv_open(lhs, one_sided, AB)
    assert verdict_equiv_open(
        t("x + yes + a.b.(no + b.a.x)"), t("x + yes + a.b.no"), AB
    )


def test_open_omega_examples():
    assert omega_equiv_open(YES, t("a.yes + b.yes"), AB)
    assert omega_equiv_open(t("x", A), t("a.x", A), A)


def test_open_procedures_agree_with_closed_on_closed_inputs():
    rng = random.Random(31)
    for _ in range(60):
        m = random_closed_monitor(rng, AB, 3)
        n = random_closed_monitor(rng, AB, 3)
        assert verdict_equiv_open(m, n, AB) == verdict_equiv_closed(m, n, AB)
        assert omega_equiv_open(m, n, AB) == omega_equiv_closed(m, n, AB)


def test_open_equivalence_is_a_congruence():
    from regmon.terms import Prefix

    rng = random.Random(33)
    found = 0
    for _ in range(200):
        m = random_open_monitor(rng, AB, 3)
        n = random_open_monitor(rng, AB, 3)
        if not verdict_equiv_open(m, n, AB):
            continue
        found += 1
        p = random_open_monitor(rng, AB, 3)
        assert verdict_equiv_open(Prefix("a", m), Prefix("a", n), AB)
        assert verdict_equiv_open(Sum(m, p), Sum(n, p), AB)
        if found >= 10:
            break
    assert found


def test_verdict_implies_omega_open_with_strictness():
    rng = random.Random(35)
    for _ in range(80):
        m = random_open_monitor(rng, AB, 3)
        n = random_open_monitor(rng, AB, 3)
        if verdict_equiv_open(m, n, AB):
            assert omega_equiv_open(m, n, AB)
    # strictness witness over a finite alphabet
    assert omega_equiv_open(YES, t("a.yes + b.yes"), AB)
    assert not verdict_equiv_open(YES, t("a.yes + b.yes"), AB)


def test_infinite_alphabet_collapses_the_modes():
    rng = random.Random(37)
    for _ in range(40):
        m = random_open_monitor(rng, AB, 3)
        n = random_open_monitor(rng, AB, 3)
        assert omega_equiv_open(m, n, INF) == verdict_equiv_open(m, n, INF)


def test_finite_disagreement_sets():
    # whenever omega holds but verdict fails, each substitution separates
    # the two sides on finitely many traces, all shorter than the depth
    # bound of the substituted monitors
    rng = random.Random(39)
    pairs = [
        (YES, t("a.yes + b.yes")),
        (t("x + no"), t("x + a.no + b.no")),
        (t("a.(yes + no) + b.(yes + no) + x"), t("yes + no")),
    ]
    pairs.extend(
        (random_open_monitor(rng, AB, 3), random_open_monitor(rng, AB, 3))
        for _ in range(200)
    )
    checked = 0
    for m, n in pairs:
        if not omega_equiv_open(m, n, AB) or verdict_equiv_open(m, n, AB):
            continue
        checked += 1
        for sigma in substitution_family(
            vars_of(m) | vars_of(n), AB, 2, cap=64
        ):
            sm, sn = apply_subst(sigma, m), apply_subst(sigma, n)
            bound = max(depth(sm), depth(sn))
            diff = []
            frontier = [()]
            for _ in range(bound + 3):
                nxt = []
                for trace in frontier:
                    if semantics.accepts(sm, trace) != semantics.accepts(sn, trace):
                        diff.append(trace)
                    elif semantics.rejects(sm, trace) != semantics.rejects(sn, trace):
                        diff.append(trace)
                    nxt.extend(trace + (c,) for c in ("a", "b"))
                frontier = nxt
            assert all(len(s) <= bound for s in diff)
        if checked >= 5:
            break
    assert checked >= 3


def test_fresh_substitution_uses_disjoint_actions():
    m = t("x + a.y")
    sigma = equivalence.fresh_substitution(m, t("b.x"))
    assert set(sigma) == {"x", "y"}
    for v, image in sigma.items():
        action = image.action
        assert action not in ("a", "b")
        assert image.body == Sum(YES, NO)
    actions = {image.action for image in sigma.values()}
    assert len(actions) == 2

"""Decision procedures for verdict and omega-verdict equivalence.

Closed terms are compared by a product search over determinized reachable
state sets; the omega variant additionally folds the trace antichains to
their minimal omega-cone generators.  Open terms go through the canonical
forms of :mod:`regmon.normalize`, picked by alphabet cardinality.  An
independent brute-force substitution oracle is provided for validation.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass

from . import semantics
from .semantics import (
    initial_state,
    lang_of,
    omega_canon,
    step_state,
    trace_key,
)
from .terms import (
    END,
    NO,
    YES,
    Alphabet,
    Monitor,
    Substitution,
    Sum,
    Trace,
    ac_equal,
    actions_of,
    apply_subst,
    depth,
    is_closed,
    require_closed,
    vars_of,
)
from .axioms import prefix_seq

VERDICT = "verdict"
OMEGA = "omega"

ACCEPTED_ONLY_BY_LEFT = "AcceptedOnlyByLeft"
ACCEPTED_ONLY_BY_RIGHT = "AcceptedOnlyByRight"
REJECTED_ONLY_BY_LEFT = "RejectedOnlyByLeft"
REJECTED_ONLY_BY_RIGHT = "RejectedOnlyByRight"


@dataclass(frozen=True, slots=True)
class Counterexample:
    """A substitution and trace on which two monitors disagree.

    The substitution is the identity (empty) for closed inputs.  Replaying
    the trace through the semantics reproduces the disagreement.
    """

    substitution: tuple[tuple[str, Monitor], ...]
    trace: Trace
    side: str


def _joint_actions(m: Monitor, n: Monitor, alphabet: Alphabet) -> list[str]:
    """Actions for a closed comparison; one shared fresh action suffices to
    characterize behavior on unseen actions of an open-ended alphabet."""
    if alphabet.is_finite:
        return alphabet.sorted_actions()
    occurring = actions_of(m) | actions_of(n)
    return sorted(occurring) + [semantics.fresh_action(occurring)]


def _flag_mismatch(sa, sb) -> str | None:
    a_yes, b_yes = YES in sa, YES in sb
    if a_yes != b_yes:
        return ACCEPTED_ONLY_BY_LEFT if a_yes else ACCEPTED_ONLY_BY_RIGHT
    a_no, b_no = NO in sa, NO in sb
    if a_no != b_no:
        return REJECTED_ONLY_BY_LEFT if a_no else REJECTED_ONLY_BY_RIGHT
    return None


def closed_counterexample(
    m: Monitor, n: Monitor, alphabet: Alphabet
) -> tuple[Trace, str] | None:
    """Shortest (then lexicographically least) trace separating two closed
    monitors, or ``None`` if they are verdict equivalent."""
    require_closed(m, "verdict equivalence")
    require_closed(n, "verdict equivalence")
    actions = _joint_actions(m, n, alphabet)
    start = (initial_state(m), initial_state(n))
    seen = {start}
    queue: deque[tuple[tuple, Trace]] = deque([(start, ())])
    while queue:
        (sa, sb), trace = queue.popleft()
        side = _flag_mismatch(sa, sb)
        if side is not None:
            return trace, side
        for action in actions:
            nxt = (step_state(sa, action), step_state(sb, action))
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, trace + (action,)))
    return None


def verdict_equiv_closed(m: Monitor, n: Monitor, alphabet: Alphabet) -> bool:
    return closed_counterexample(m, n, alphabet) is None


def omega_closed_counterexample(
    m: Monitor, n: Monitor, alphabet: Alphabet
) -> tuple[Trace, str] | None:
    """A trace whose omega-cone membership separates two closed monitors.

    With an open-ended alphabet the notions coincide, so this delegates to
    the verdict comparison.
    """
    require_closed(m, "omega-verdict equivalence")
    require_closed(n, "omega-verdict equivalence")
    if not alphabet.is_finite:
        return closed_counterexample(m, n, alphabet)
    if verdict_equiv_closed(m, n, alphabet):
        return None
    lm, ln = lang_of(m, alphabet), lang_of(n, alphabet)
    acc_m = omega_canon(lm.accept_min, alphabet)
    acc_n = omega_canon(ln.accept_min, alphabet)
    rej_m = omega_canon(lm.reject_min, alphabet)
    rej_n = omega_canon(ln.reject_min, alphabet)
    witnesses: list[tuple[Trace, str]] = []
    for t in acc_m - acc_n:
        if not semantics.covered_by(t, acc_n):
            witnesses.append((t, ACCEPTED_ONLY_BY_LEFT))
    for t in acc_n - acc_m:
        if not semantics.covered_by(t, acc_m):
            witnesses.append((t, ACCEPTED_ONLY_BY_RIGHT))
    for t in rej_m - rej_n:
        if not semantics.covered_by(t, rej_n):
            witnesses.append((t, REJECTED_ONLY_BY_LEFT))
    for t in rej_n - rej_m:
        if not semantics.covered_by(t, rej_m):
            witnesses.append((t, REJECTED_ONLY_BY_RIGHT))
    if not witnesses:
        return None
    return min(witnesses, key=lambda w: trace_key(w[0]))


def omega_equiv_closed(m: Monitor, n: Monitor, alphabet: Alphabet) -> bool:
    return omega_closed_counterexample(m, n, alphabet) is None


# ---------------------------------------------------------------------------
# The substitution oracle for open terms


def substitution_values(
    alphabet: Alphabet, bound: int, max_values: int = 2048
) -> list[Monitor]:
    """The probe values: the three verdicts plus ``t.yes``, ``t.no`` and
    ``t.(yes + no)`` for every trace ``t`` of length at most ``bound``,
    enumerated shortest-first and truncated at ``max_values``."""
    values: list[Monitor] = [END, YES, NO]
    seen = set(values)
    for t in _traces_upto_sorted(alphabet, bound, limit=max_values):
        for leaf in (YES, NO, Sum(YES, NO)):
            v = prefix_seq(t, leaf)
            if v not in seen:
                seen.add(v)
                values.append(v)
        if len(values) >= max_values:
            break
    return values


def _traces_upto_sorted(
    alphabet: Alphabet, bound: int, limit: int | None = None
) -> list[Trace]:
    actions = alphabet.sorted_actions()
    out: list[Trace] = [()]
    level: list[Trace] = [()]
    for _ in range(bound):
        if limit is not None and len(out) > limit:
            break
        level = [t + (a,) for t in level for a in actions]
        out.extend(level)
    return out


def substitution_family(
    variables,
    alphabet: Alphabet,
    bound: int,
    cap: int = 4096,
    seed: int = 0,
    max_values: int = 2048,
) -> list[Substitution]:
    """Closed substitutions probing the given variables.

    The full product of the value set over the variables is returned when it
    fits under ``cap``; otherwise the family keeps every map with a single
    non-``end`` variable plus a seeded sample of the rest.
    """
    if bound < 1:
        raise ValueError("substitution_family requires bound >= 1")
    names = sorted(set(variables))
    if not names:
        return [{}]
    values = substitution_values(alphabet, bound, max_values=max_values)
    total = len(values) ** len(names)
    if total <= cap:
        return [
            dict(zip(names, combo))
            for combo in itertools.product(values, repeat=len(names))
        ]
    family: list[Substitution] = []
    seen: set[tuple[int, ...]] = set()
    # Single-variable-active maps first: one variable gets each value, the
    # others are end.  These carry the separating probes of the open case.
    for vi, name in enumerate(names):
        for ci, value in enumerate(values):
            key = tuple(ci if i == vi else 0 for i in range(len(names)))
            if key not in seen:
                seen.add(key)
                family.append(
                    {n: (value if n == name else END) for n in names}
                )
    rng = random.Random(seed)
    attempts = 0
    while len(family) < cap and attempts < 20 * cap:
        attempts += 1
        key = tuple(rng.randrange(len(values)) for _ in names)
        if key in seen:
            continue
        seen.add(key)
        family.append({n: values[i] for n, i in zip(names, key)})
    return family


def _oracle_failures(m, n, alphabet, mode, bound, cap, seed):
    if not alphabet.is_finite:
        raise ValueError("the oracle needs a finite alphabet")
    if bound is None:
        bound = depth(m) + depth(n) + 2
    variables = vars_of(m) | vars_of(n)
    for sigma in substitution_family(variables, alphabet, bound, cap=cap, seed=seed):
        lhs = apply_subst(sigma, m)
        rhs = apply_subst(sigma, n)
        if mode == VERDICT:
            found = closed_counterexample(lhs, rhs, alphabet)
        else:
            found = omega_closed_counterexample(lhs, rhs, alphabet)
        if found is not None:
            trace, side = found
            yield Counterexample(tuple(sorted(sigma.items())), trace, side)


def oracle_counterexample(
    m: Monitor,
    n: Monitor,
    alphabet: Alphabet,
    mode: str = VERDICT,
    bound: int | None = None,
    cap: int = 4096,
    seed: int = 0,
) -> Counterexample | None:
    """Brute-force search over the substitution family.

    The reported counterexample is minimal: shortest separating trace
    first, ties broken by the position of the substitution in the family.
    The result is therefore independent of evaluation order.
    """
    best: Counterexample | None = None
    for cex in _oracle_failures(m, n, alphabet, mode, bound, cap, seed):
        if best is None or len(cex.trace) < len(best.trace):
            best = cex
            if not best.trace:
                break
    return best


def oracle_equiv_open(
    m: Monitor,
    n: Monitor,
    alphabet: Alphabet,
    mode: str = VERDICT,
    bound: int | None = None,
    cap: int = 4096,
    seed: int = 0,
) -> bool:
    """Whether the oracle finds no separating substitution (stops at the
    first failure)."""
    for _ in _oracle_failures(m, n, alphabet, mode, bound, cap, seed):
        return False
    return True


# ---------------------------------------------------------------------------
# Open-term decision procedures (canonical forms)


def fresh_substitution(m: Monitor, n: Monitor) -> dict[str, Monitor]:
    """Map each variable to ``a_x.(yes + no)`` for pairwise-distinct fresh
    actions absent from both terms (the infinite-alphabet reduction)."""
    used = set(actions_of(m) | actions_of(n))
    sigma: dict[str, Monitor] = {}
    for v in sorted(vars_of(m) | vars_of(n)):
        a = semantics.fresh_action(used, stem=f"_fx_{v}")
        used.add(a)
        sigma[v] = prefix_seq((a,), Sum(YES, NO))
    return sigma


def verdict_equiv_open(m: Monitor, n: Monitor, alphabet: Alphabet) -> bool:
    """Verdict equivalence of (possibly) open monitors.

    Open-ended alphabets reduce to a closed check under the fresh-action
    substitution; finite alphabets compare the canonical reduced forms for
    the appropriate cardinality.
    """
    from . import normalize

    if not alphabet.is_finite:
        sigma = fresh_substitution(m, n)
        return verdict_equiv_closed(
            apply_subst(sigma, m), apply_subst(sigma, n), alphabet
        )
    if len(alphabet) == 1:
        lhs = normalize.unary_rnf(m, alphabet).term
        rhs = normalize.unary_rnf(n, alphabet).term
    else:
        lhs = normalize.finite_act_rnf(m, alphabet).term
        rhs = normalize.finite_act_rnf(n, alphabet).term
    return ac_equal(lhs, rhs)


def omega_equiv_open(m: Monitor, n: Monitor, alphabet: Alphabet) -> bool:
    """Omega-verdict equivalence of open monitors; for an infinite alphabet
    the two equivalences coincide."""
    from . import normalize

    if not alphabet.is_finite:
        return verdict_equiv_open(m, n, alphabet)
    if len(alphabet) == 1:
        lhs = normalize.unary_omega_nf(m, alphabet).term
        rhs = normalize.unary_omega_nf(n, alphabet).term
    else:
        lhs = normalize.omega_open_nf(m, alphabet).term
        rhs = normalize.omega_open_nf(n, alphabet).term
    return ac_equal(lhs, rhs)


def equivalent(
    m: Monitor, n: Monitor, alphabet: Alphabet, mode: str = VERDICT
) -> bool:
    """Uniform entry point: closed inputs use the closed procedures."""
    if is_closed(m) and is_closed(n):
        if mode == VERDICT:
            return verdict_equiv_closed(m, n, alphabet)
        return omega_equiv_closed(m, n, alphabet)
    if mode == VERDICT:
        return verdict_equiv_open(m, n, alphabet)
    return omega_equiv_open(m, n, alphabet)

"""Verdict equivalence and its asymptotic cousin.

Two monitors are verdict equivalent when they accept and reject exactly the
same finite traces; omega-verdict equivalence only compares the infinite
traces covered by those sets.  Over a finite alphabet the second notion is
strictly coarser; with unboundedly many actions the two coincide.
"""

from regmon import Alphabet, parse_monitor
from regmon.equivalence import (
    closed_counterexample,
    omega_equiv_closed,
    oracle_counterexample,
    verdict_equiv_closed,
    verdict_equiv_open,
)
from regmon.syntax import print_monitor, print_trace

AB = Alphabet.finite(["a", "b"])

yes = parse_monitor("yes", AB)
fan = parse_monitor("a.yes + b.yes", AB)

print("yes ~ a.yes + b.yes (verdict):", verdict_equiv_closed(yes, fan, AB))
trace, side = closed_counterexample(yes, fan, AB)
print("  they differ at", print_trace(trace), "-", side)
print("yes ~ a.yes + b.yes (omega):  ", omega_equiv_closed(yes, fan, AB))

# Open terms quantify over all closed substitutions.  The variable x can be
# dropped next to both verdicts because nothing it does is observable:
print(
    "yes + no ~ yes + no + x:",
    verdict_equiv_open(parse_monitor("yes + no", AB), parse_monitor("yes + no + x", AB), AB),
)

# x + a.x collapses only when a is the sole action.
A = Alphabet.finite(["a"])
print("x ~ x + a.x over {a}:  ", verdict_equiv_open(parse_monitor("x", A), parse_monitor("x + a.x", A), A))
print("x ~ x + a.x over {a,b}:", verdict_equiv_open(parse_monitor("x", AB), parse_monitor("x + a.x", AB), AB))

cex = oracle_counterexample(parse_monitor("x", AB), parse_monitor("x + a.x", AB), AB)
print(
    "  witnessed by mapping",
    ", ".join(f"{k} to {print_monitor(v)}" for k, v in cex.substitution),
    "at trace",
    print_trace(cex.trace),
)

# With infinitely many actions, a single fresh action per variable decides
# open equivalence through one closed check.
INF = Alphabet.open_ended()
lhs = parse_monitor("x + yes + a.b.(no + b.a.x)", AB)
rhs = parse_monitor("x + yes + a.b.no", AB)
print("redundant residue drops (infinite alphabet):", verdict_equiv_open(lhs, rhs, INF))

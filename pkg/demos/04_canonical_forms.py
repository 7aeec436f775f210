"""Normalization: one canonical shape per completeness result.

Each pipeline rewrites a monitor into the canonical form whose structural
equality (modulo commutativity and associativity) decides the matching
equivalence.  Redundant summands vanish; full action fans fold into their
verdict in the omega forms; variable occurrences covered by a bar-family
guard are eliminated over finite alphabets.
"""

from regmon import Alphabet, parse_monitor, print_monitor
from regmon.normalize import (
    finite_act_rnf,
    omega_nf_closed,
    omega_open_nf,
    open_rnf,
    reduced_nf_closed,
    unary_omega_nf,
    unary_rnf,
)
from regmon.axioms import witness_family

AB = Alphabet.finite(["a", "b"])
A = Alphabet.finite(["a"])


def show(label, cf):
    print(f"  {label:42} ->  {print_monitor(cf.term)}")


print("== closed reduced forms absorb redundancy ==")
show("yes + a.a.a.yes", reduced_nf_closed(parse_monitor("yes + a.a.a.yes", AB)))
show("no + a.(yes + b.yes)", reduced_nf_closed(parse_monitor("no + a.(yes + b.yes)", AB)))

print("== omega forms fold full fans ==")
show("a.yes + b.yes", omega_nf_closed(parse_monitor("a.yes + b.yes", AB), AB))
show("a.(a.no + b.no) + b.no", omega_nf_closed(parse_monitor("a.(a.no + b.no) + b.no", AB), AB))
show("a.yes (no fold: b missing)", omega_nf_closed(parse_monitor("a.yes", AB), AB))

print("== open reduced forms prune residue next to double verdicts ==")
show("x + yes + a.b.(no + b.a.x)", open_rnf(parse_monitor("x + yes + a.b.(no + b.a.x)", AB)))
show("yes + no + a.a.no + x", open_rnf(parse_monitor("yes + no + a.a.no + x", AB)))

print("== the finite-alphabet form eliminates covered variables ==")
eq = witness_family(1, AB)
show("witness lhs", finite_act_rnf(eq.lhs, AB))
show("witness rhs", finite_act_rnf(eq.rhs, AB))
show("x + a.x (not covered, stays)", finite_act_rnf(parse_monitor("x + a.x", AB), AB))

print("== a single action admits much stronger absorption ==")
show("x + a.x over {a}", unary_rnf(parse_monitor("x + a.x", A), A))
show("x + a.a.x + a.no over {a}", unary_rnf(parse_monitor("x + a.a.x + a.no", A), A))
show("a.yes + no + x (omega, unary)", unary_omega_nf(parse_monitor("a.yes + no + x", A), A))

print("== open omega over two actions ==")
show("a.(yes+no) + b.(yes+no) + x", omega_open_nf(parse_monitor("a.(yes+no) + b.(yes+no) + x", AB), AB))

"""The witness family behind the no-finite-basis result.

Over a finite alphabet with at least two actions, verdict equivalence has
no finite equational axiomatization.  The engine of that result is the
family of sound equations

    x + a^n.x + guard_n  =  x + guard_n

where guard_n accepts and rejects, after observing a^n, everything except
a^(3n) and its prefixes.  Growing n pushes the trace a^(2n+1) — neither
accepted nor rejected under the all-end substitution — beyond the depth of
any fixed finite axiom set, so no such set proves the whole family.
"""

from regmon import Alphabet, apply_subst, witness_family
from regmon.equivalence import oracle_equiv_open
from regmon.normalize import finite_act_rnf
from regmon.semantics import accepts, rejects
from regmon.terms import END, depth

AB = Alphabet.finite(["a", "b"])

for n in (1, 2, 3):
    eq = witness_family(n, AB)
    sound = oracle_equiv_open(eq.lhs, eq.rhs, AB, bound=5, cap=256)
    lhs_nf = finite_act_rnf(eq.lhs, AB).term
    rhs_nf = finite_act_rnf(eq.rhs, AB).term
    probe = ("a",) * (2 * n + 1)
    gap_lhs = apply_subst({"x": END}, eq.lhs)
    silent = not accepts(gap_lhs, probe) and not rejects(gap_lhs, probe)
    print(
        f"n={n}: depth {depth(eq.lhs):2}, sound={sound},"
        f" sides share a canonical form={lhs_nf == rhs_nf},"
        f" a^{2 * n + 1} undecided under end-substitution={silent}"
    )

"""Every normalization can justify itself with a checkable derivation.

The emitted derivation is a numbered list of equational-logic steps —
axiom instances under substitutions, symmetry, transitivity, congruence —
over the pipeline's axiom system.  An independent checker replays each
step syntactically; it never consults the operational semantics.
"""

from regmon import Alphabet, check_derivation, parse_monitor, print_derivation
from regmon.normalize import open_rnf
from regmon.prooflog import parse_derivation, validate, Derivation, Step
from regmon.terms import Equation, Sum, Var, vars_of

AB = Alphabet.finite(["a", "b"])

m = parse_monitor("x + yes + a.b.(no + b.a.x)", AB)
cf = open_rnf(m, AB, emit_proof=True)
claim = Equation(m, cf.term)

print(f"reduced {m} to {cf.term}")
print(f"derivation: {len(cf.derivation.steps)} steps in {cf.derivation.system}")
check_derivation(cf.derivation, claim)
print("checker verdict: valid")

text = print_derivation(cf.derivation, vars_of(m))
print("\nfirst lines of the derivation file:")
for line in text.splitlines()[:8]:
    print("  ", line)

reparsed, _ = parse_derivation(text)
check_derivation(reparsed, claim)
print("\nround-trips through the text format and still checks")

# Corrupt one step and the checker pinpoints it.
steps = list(cf.derivation.steps)
victim = steps[3]
steps[3] = Step(
    victim.sid,
    Equation(victim.equation.lhs, Sum(victim.equation.rhs, Var("zz"))),
    victim.justification,
)
error = validate(Derivation(cf.derivation.system, cf.derivation.alphabet, tuple(steps)), claim)
print(f"after corrupting step {victim.sid}: rejected with [{error.reason}] at step {error.step_id}")

"""The axiom catalog: instances, systems, and soundness fuzzing.

Seven named systems combine sixteen schemas.  Every schema instantiates to
a concrete equation; fuzzing an instance replays random closed
substitutions through the semantics and reports any disagreement.
"""

from regmon import Alphabet, instantiate, list_system, soundness_fuzz
from regmon.syntax import print_monitor, print_trace

AB = Alphabet.finite(["a", "b"])
A = Alphabet.finite(["a"])

print("== E_v over {a} ==")
for inst in list_system("Ev", A):
    print("  ", inst.equation)

print("== the O2 family is indexed by a trace and a repetition count ==")
o2 = instantiate("O2", {"s": ("a", "b"), "k": 2}, AB)
print("  O2[s=ab,k=2]:", o2.equation)

print("== soundness is checked against the semantics ==")
for name, alphabet, mode in [
    ("Y_a", AB, "verdict"),
    ("Y_w", AB, "verdict"),   # only sound asymptotically
    ("Y_w", AB, "omega"),
    ("V1", A, "verdict"),
    ("V1", AB, "verdict"),    # unary absorption breaks with two actions
]:
    bindings = {"action": "a"} if name == "Y_a" else {}
    inst = instantiate(name, bindings, alphabet)
    report = soundness_fuzz(inst, alphabet, mode, trials=100, seed=0)
    verdict = "sound" if report.ok else "UNSOUND"
    line = f"  {name} over {alphabet} in {mode} mode: {verdict}"
    if not report.ok:
        failure = report.failures[0]
        line += f" (trace {print_trace(failure.trace)}"
        if failure.substitution:
            sigma = ", ".join(f"{k} -> {print_monitor(v)}" for k, v in failure.substitution)
            line += f" under {sigma}"
        line += ")"
    print(line)

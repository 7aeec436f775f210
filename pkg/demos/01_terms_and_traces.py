"""Monitors, traces, and what they accept and reject.

A monitor observes one action at a time and may commit to an irrevocable
verdict: ``yes`` (accept), ``no`` (reject), or stay inconclusive (``end``).
This walkthrough builds a few monitors, runs traces through them, and shows
the finite antichain summary of their trace languages.
"""

from regmon import Alphabet, lang_of, parse_monitor, print_monitor
from regmon.semantics import accepts, rejects, trace_key, weak_reach
from regmon.syntax import print_trace

AB = Alphabet.finite(["a", "b"])

m = parse_monitor("a.yes + b.(no + a.yes)", AB)
print("monitor:", print_monitor(m))

for text in ["a", "b", "b a", "b b", "a b a"]:
    trace = tuple(text.split())
    print(
        f"  after {print_trace(trace):7}: accepts={accepts(m, trace)!s:5}"
        f" rejects={rejects(m, trace)}"
    )

# Verdicts are sticky: everything reachable after 'a' is the yes state.
print("states after a:", {print_monitor(s) for s in weak_reach(m, ("a",))})

# The whole behavior fits in two prefix-free sets of minimal traces.
lang = lang_of(m, AB)
print("minimal accepted:", [print_trace(t) for t in sorted(lang.accept_min, key=trace_key)])
print("minimal rejected:", [print_trace(t) for t in sorted(lang.reject_min, key=trace_key)])

# Anything after a verdict is covered; no further exploration is needed.
assert accepts(m, ("b", "a", "b", "b", "a"))
print("extensions of accepted traces stay accepted: ok")

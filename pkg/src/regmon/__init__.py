"""Algebra of recursion-free regular monitors.

Parsing and printing, operational semantics, verdict and omega-verdict
equivalence checking, axiom systems with soundness fuzzing, normalization to
canonical forms with emitted equational derivations, and an independent
derivation checker.
"""

from .terms import (
    END,
    NO,
    YES,
    Alphabet,
    Equation,
    Monitor,
    NonClosedInput,
    Prefix,
    Sum,
    Var,
    ac_equal,
    ac_normalize,
    apply_subst,
    depth,
    is_closed,
    size_of,
    vars_of,
)
from .syntax import ParseError, parse_alphabet, parse_equation, parse_monitor, print_monitor
from .semantics import TAU, TraceLang, accepts, lang_of, omega_canon, rejects, weak_reach
from .equivalence import (
    Counterexample,
    omega_equiv_closed,
    omega_equiv_open,
    oracle_equiv_open,
    verdict_equiv_closed,
    verdict_equiv_open,
)
from .axioms import AxiomInstance, instantiate, list_system, soundness_fuzz, witness_family
from .normalize import (
    CanonicalForm,
    finite_act_rnf,
    normal_form_closed,
    omega_nf_closed,
    omega_open_nf,
    open_nf,
    open_rnf,
    reduced_nf_closed,
    unary_omega_nf,
    unary_rnf,
)
from .prooflog import (
    CheckError,
    Derivation,
    check_derivation,
    parse_derivation,
    print_derivation,
)

__all__ = [
    "CanonicalForm",
    "CheckError",
    "Derivation",
    "check_derivation",
    "finite_act_rnf",
    "normal_form_closed",
    "omega_nf_closed",
    "omega_open_nf",
    "open_nf",
    "open_rnf",
    "parse_derivation",
    "print_derivation",
    "reduced_nf_closed",
    "unary_omega_nf",
    "unary_rnf",
    "END",
    "NO",
    "YES",
    "TAU",
    "Alphabet",
    "AxiomInstance",
    "Counterexample",
    "Equation",
    "Monitor",
    "NonClosedInput",
    "ParseError",
    "Prefix",
    "Sum",
    "TraceLang",
    "Var",
    "ac_equal",
    "ac_normalize",
    "accepts",
    "apply_subst",
    "depth",
    "instantiate",
    "is_closed",
    "lang_of",
    "list_system",
    "omega_canon",
    "omega_equiv_closed",
    "omega_equiv_open",
    "oracle_equiv_open",
    "parse_alphabet",
    "parse_equation",
    "parse_monitor",
    "print_monitor",
    "rejects",
    "size_of",
    "soundness_fuzz",
    "vars_of",
    "verdict_equiv_closed",
    "verdict_equiv_open",
    "weak_reach",
    "witness_family",
]

"""Canonicalization pipelines with optional equational derivations.

Each pipeline rewrites a monitor into the canonical shape of one
completeness result and can emit a derivation in the matching axiom system,
validated by the independent checker in :mod:`regmon.prooflog`.  Recording
on or off runs the same code path, so the pure result and the proved result
coincide by construction.

Rewriting is innermost-first (children before parents) and terms are kept
in the AC-canonical order of :func:`regmon.terms.ac_normalize` between
stages.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import axioms
from .prooflog import (
    AxiomUse,
    CongruencePrefix,
    CongruenceSum,
    Derivation,
    Reflexivity,
    Step,
    Symmetry,
    Transitivity,
)
from .semantics import accepts, rejects
from .terms import (
    END,
    NO,
    YES,
    Alphabet,
    Equation,
    Monitor,
    Prefix,
    Sum,
    Trace,
    Var,
    ac_normalize,
    actions_of,
    apply_subst,
    contains_verdict,
    depth,
    is_closed,
    require_closed,
    sort_key,
    summands,
    vars_of,
)

NF = "nf"
RNF = "rnf"
OMEGA_NF = "omega-nf"
OPEN_NF = "open-nf"
OPEN_RNF = "open-rnf"
FIN_RNF = "fin-rnf"
UNARY_RNF = "unary-rnf"
UNARY_OMEGA_NF = "unary-omega-nf"
OPEN_OMEGA_NF = "open-omega-nf"


class AlphabetTooSmall(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class CanonicalForm:
    term: Monitor
    form_kind: str
    derivation: Derivation | None = None


def _ln(parts) -> Monitor:
    """Left-nested sum keeping every part verbatim (no ``end`` dropping)."""
    acc: Monitor | None = None
    for p in parts:
        acc = p if acc is None else Sum(acc, p)
    return END if acc is None else acc


def _parts(t: Monitor) -> list[Monitor]:
    return list(summands(t))


def _opposite(v: Monitor) -> Monitor:
    return NO if v == YES else YES


def _grow_axiom(v: Monitor) -> str:
    return "Y_a" if v == YES else "N_a"


def _fan_axiom(v: Monitor) -> str:
    return "Y_w" if v == YES else "N_w"


def _free_of(m: Monitor, v: Monitor) -> bool:
    return not contains_verdict(m, v)


def _decompose(t: Monitor):
    """Flags, action map, and variable names of a canonical sum."""
    has_yes = has_no = False
    acts: dict[str, Monitor] = {}
    variables: list[str] = []
    for p in _parts(t):
        if p == YES:
            has_yes = True
        elif p == NO:
            has_no = True
        elif isinstance(p, Prefix):
            acts[p.action] = p.body
        elif isinstance(p, Var):
            variables.append(p.name)
    return has_yes, has_no, acts, variables


# ---------------------------------------------------------------------------
# Proof-carrying rewriting


@dataclass(frozen=True, slots=True)
class Pf:
    """A proved rewrite ``src = dst``; ``sid`` cites the emitted step.

    Reflexive proofs keep ``sid`` None and are only materialized when a
    congruence rule must reference them.
    """

    src: Monitor
    dst: Monitor
    sid: int | None


class Prover:
    """Emits checkable steps while rewriting; ``record=False`` runs the same
    operations without building the step list."""

    def __init__(self, system: str, alphabet: Alphabet, record: bool):
        self.system = system
        self.alphabet = alphabet
        self.record = record
        self.steps: list[Step] = []

    # -- primitives ---------------------------------------------------------

    def _emit(self, src: Monitor, dst: Monitor, just) -> Pf:
        if not self.record:
            return Pf(src, dst, None)
        sid = len(self.steps) + 1
        self.steps.append(Step(sid, Equation(src, dst), just))
        return Pf(src, dst, sid)

    def refl(self, t: Monitor) -> Pf:
        return Pf(t, t, None)

    def _materialize(self, pf: Pf) -> Pf:
        if pf.sid is not None or not self.record:
            return pf
        assert pf.src == pf.dst
        return self._emit(pf.src, pf.dst, Reflexivity())

    def ax(self, name: str, bindings=None, subst=None) -> Pf:
        inst = axioms.instantiate(name, bindings or {}, self.alphabet)
        sigma = dict(subst or {})
        lhs = apply_subst(sigma, inst.equation.lhs)
        rhs = apply_subst(sigma, inst.equation.rhs)
        return self._emit(
            lhs, rhs, AxiomUse(inst.schema, inst.bindings, tuple(sorted(sigma.items())))
        )

    def ax_rev(self, name: str, bindings=None, subst=None) -> Pf:
        return self.sym(self.ax(name, bindings, subst))

    def sym(self, pf: Pf) -> Pf:
        if pf.src == pf.dst:
            return pf
        if not self.record:
            return Pf(pf.dst, pf.src, None)
        pf = self._materialize(pf)
        return self._emit(pf.dst, pf.src, Symmetry(pf.sid))

    def trans(self, *pfs: Pf) -> Pf:
        assert pfs
        acc = pfs[0]
        for nxt in pfs[1:]:
            assert acc.dst == nxt.src, f"broken chain:\n  {acc.dst!r}\n  {nxt.src!r}"
            if nxt.src == nxt.dst:
                continue
            if acc.src == acc.dst:
                acc = nxt
                continue
            if self.record:
                a = self._materialize(acc)
                b = self._materialize(nxt)
                acc = self._emit(a.src, b.dst, Transitivity(a.sid, b.sid))
            else:
                acc = Pf(acc.src, nxt.dst, None)
        return acc

    def congsum(self, left: Pf, right: Pf) -> Pf:
        src = Sum(left.src, right.src)
        dst = Sum(left.dst, right.dst)
        if src == dst:
            return self.refl(src)
        if not self.record:
            return Pf(src, dst, None)
        a = self._materialize(left)
        b = self._materialize(right)
        return self._emit(src, dst, CongruenceSum(a.sid, b.sid))

    def congpre(self, action: str, inner: Pf) -> Pf:
        src = Prefix(action, inner.src)
        dst = Prefix(action, inner.dst)
        if src == dst:
            return self.refl(src)
        if not self.record:
            return Pf(src, dst, None)
        a = self._materialize(inner)
        return self._emit(src, dst, CongruencePrefix(action, a.sid))

    def congpre_seq(self, trace: Trace, inner: Pf) -> Pf:
        for action in reversed(trace):
            inner = self.congpre(action, inner)
        return inner

    # -- sum-list rewriting --------------------------------------------------
    # A sum is the list of its summands in left-nested order; rewrites happen
    # at a spine node (a left-nested prefix of the list) and sum congruences
    # wrap them back into the full term.

    def rw_spine(self, term: Monitor, i: int, inner: Pf) -> Pf:
        parts = _parts(term)
        assert _ln(parts[: i + 1]) == inner.src, "spine mismatch"
        pf = inner
        for part in parts[i + 1 :]:
            pf = self.congsum(pf, self.refl(part))
        return pf

    def rw_part(self, term: Monitor, i: int, inner: Pf) -> Pf:
        parts = _parts(term)
        assert parts[i] == inner.src, "part mismatch"
        if i == 0:
            return self.rw_spine(term, 0, inner)
        spine = _ln(parts[:i])
        return self.rw_spine(term, i, self.congsum(self.refl(spine), inner))

    def swap(self, term: Monitor, i: int) -> Pf:
        parts = _parts(term)
        a, b = parts[i], parts[i + 1]
        if i == 0:
            return self.rw_spine(term, 1, self.ax("A1", subst={"x": a, "y": b}))
        p = _ln(parts[:i])
        inner = self.trans(
            self.ax_rev("A2", subst={"x": p, "y": a, "z": b}),
            self.congsum(self.refl(p), self.ax("A1", subst={"x": a, "y": b})),
            self.ax("A2", subst={"x": p, "y": b, "z": a}),
        )
        return self.rw_spine(term, i + 1, inner)

    def bubble(self, term: Monitor, i: int, j: int) -> Pf:
        """Move part ``i`` to position ``j`` by adjacent swaps."""
        pf = self.refl(term)
        pos = i
        while pos < j:
            pf = self.trans(pf, self.swap(pf.dst, pos))
            pos += 1
        while pos > j:
            pf = self.trans(pf, self.swap(pf.dst, pos - 1))
            pos -= 1
        return pf

    def drop_end(self, term: Monitor, i: int) -> Pf:
        parts = _parts(term)
        assert parts[i] == END and len(parts) > 1
        if i == 0:
            nxt = parts[1]
            inner = self.trans(
                self.ax("A1", subst={"x": END, "y": nxt}),
                self.ax("A4", subst={"x": nxt}),
            )
            return self.rw_spine(term, 1, inner)
        return self.rw_spine(term, i, self.ax("A4", subst={"x": _ln(parts[:i])}))

    def dedupe_adjacent(self, term: Monitor, i: int) -> Pf:
        parts = _parts(term)
        t = parts[i]
        assert parts[i + 1] == t
        if i == 0:
            return self.rw_spine(term, 1, self.ax("A3", subst={"x": t}))
        p = _ln(parts[:i])
        inner = self.trans(
            self.ax_rev("A2", subst={"x": p, "y": t, "z": t}),
            self.congsum(self.refl(p), self.ax("A3", subst={"x": t})),
        )
        return self.rw_spine(term, i + 1, inner)

    def _append(self, left: Monitor, right: Monitor) -> Pf:
        if not isinstance(right, Sum):
            return self.refl(Sum(left, right))
        s1 = self.ax("A2", subst={"x": left, "y": right.left, "z": right.right})
        s2 = self.congsum(self._append(left, right.left), self.refl(right.right))
        return self.trans(s1, s2)

    def flatten(self, term: Monitor) -> Pf:
        if not isinstance(term, Sum):
            return self.refl(term)
        pl = self.flatten(term.left)
        pr = self.flatten(term.right)
        pf = self.congsum(pl, pr)
        return self.trans(pf, self._append(pl.dst, pr.dst))

    def shallow_canon(self, term: Monitor) -> Pf:
        """Flatten, drop ``end`` summands, sort, remove duplicates."""
        pf = self.flatten(term)
        while True:
            parts = _parts(pf.dst)
            if len(parts) <= 1 or END not in parts:
                break
            pf = self.trans(pf, self.drop_end(pf.dst, parts.index(END)))
        n = len(_parts(pf.dst))
        for limit in range(1, n):
            pos = limit
            while pos > 0:
                parts = _parts(pf.dst)
                if sort_key(parts[pos]) >= sort_key(parts[pos - 1]):
                    break
                pf = self.trans(pf, self.swap(pf.dst, pos - 1))
                pos -= 1
        while True:
            parts = _parts(pf.dst)
            dup = next(
                (i for i in range(len(parts) - 1) if parts[i] == parts[i + 1]), None
            )
            if dup is None:
                break
            pf = self.trans(pf, self.dedupe_adjacent(pf.dst, dup))
        return pf

    def canon(self, term: Monitor) -> Pf:
        """``term = ac_normalize(term)`` through explicit A1-A4 steps."""
        match term:
            case Prefix(action, body):
                pf = self.congpre(action, self.canon(body))
            case Sum(left, right):
                inner = self.congsum(self.canon(left), self.canon(right))
                pf = self.trans(inner, self.shallow_canon(inner.dst))
            case _:
                pf = self.refl(term)
        assert pf.dst == ac_normalize(term)
        return pf

    def align(self, src: Monitor, dst: Monitor) -> Pf:
        """Proof of ``src = dst`` for AC-equal terms."""
        if src == dst:
            return self.refl(src)
        p1 = self.canon(src)
        p2 = self.canon(dst)
        assert p1.dst == p2.dst, "align on non-AC-equal terms"
        return self.trans(p1, self.sym(p2))

    def distribute(self, action: str, body: Monitor) -> Pf:
        """``a.body = a.p1 + ... + a.pn`` over the summands of ``body``."""
        if not isinstance(body, Sum):
            return self.refl(Prefix(action, body))
        s1 = self.ax(
            "D_a", {"action": action}, subst={"x": body.left, "y": body.right}
        )
        s2 = self.congsum(
            self.distribute(action, body.left),
            self.refl(Prefix(action, body.right)),
        )
        return self.trans(s1, s2)

    def distribute_seq(self, trace: Trace, u1: Monitor, u2: Monitor) -> Pf:
        """``s.(u1 + u2) = s.u1 + s.u2`` for a prefix sequence ``s``."""
        if not trace:
            return self.refl(Sum(u1, u2))
        head, rest = trace[0], trace[1:]
        inner = self.congpre(head, self.distribute_seq(rest, u1, u2))
        step = self.ax(
            "D_a",
            {"action": head},
            subst={
                "x": axioms.prefix_seq(rest, u1),
                "y": axioms.prefix_seq(rest, u2),
            },
        )
        return self.trans(inner, step)


class Edit:
    """A term being rewritten, with the accumulated proof from its origin."""

    __slots__ = ("pv", "pf")

    def __init__(self, pv: Prover, origin: Monitor):
        self.pv = pv
        self.pf = pv.refl(origin)

    @property
    def term(self) -> Monitor:
        return self.pf.dst

    @property
    def parts(self) -> list[Monitor]:
        return _parts(self.term)

    def step(self, pf: Pf) -> None:
        assert pf.src == self.term
        self.pf = self.pv.trans(self.pf, pf)

    def canon(self) -> None:
        self.step(self.pv.shallow_canon(self.term))


# ---------------------------------------------------------------------------
# Unfolding helpers: v = v + s.v and x = x + a^d.x


def _verdict_unfold(pv: Prover, v: Monitor, trace: Trace) -> Pf:
    """``v = v + s.v`` for a conclusive verdict and nonempty trace."""
    assert trace and v in (YES, NO)
    head, rest = trace[0], trace[1:]
    grow = _grow_axiom(v)
    if not rest:
        return pv.ax(grow, {"action": head})
    tail = axioms.prefix_seq(rest, v)
    s1 = pv.ax(grow, {"action": head})
    s2 = pv.congsum(pv.refl(v), pv.congpre(head, _verdict_unfold(pv, v, rest)))
    s3 = pv.congsum(
        pv.refl(v), pv.ax("D_a", {"action": head}, subst={"x": v, "y": tail})
    )
    s4 = pv.ax(
        "A2", subst={"x": v, "y": Prefix(head, v), "z": Prefix(head, tail)}
    )
    s5 = pv.congsum(
        pv.sym(pv.ax(grow, {"action": head})), pv.refl(Prefix(head, tail))
    )
    return pv.trans(s1, s2, s3, s4, s5)


def _var_unfold(pv: Prover, name: str, action: str, delta: int) -> Pf:
    """``x = x + a^delta.x`` from V1 over a singleton alphabet."""
    assert delta >= 1
    x = Var(name)
    if delta == 1:
        return pv.ax("V1", subst={"x": x})
    tail = axioms.prefix_seq((action,) * (delta - 1), x)
    s1 = pv.ax("V1", subst={"x": x})
    s2 = pv.congsum(
        pv.refl(x), pv.congpre(action, _var_unfold(pv, name, action, delta - 1))
    )
    s3 = pv.congsum(
        pv.refl(x), pv.ax("D_a", {"action": action}, subst={"x": x, "y": tail})
    )
    s4 = pv.ax("A2", subst={"x": x, "y": Prefix(action, x), "z": Prefix(action, tail)})
    s5 = pv.congsum(
        pv.sym(pv.ax("V1", subst={"x": x})), pv.refl(Prefix(action, tail))
    )
    return pv.trans(s1, s2, s3, s4, s5)


def _find_verdict_path(t: Monitor, trace: Trace, v: Monitor) -> Trace | None:
    """Shortest prefix of ``trace`` whose node has ``v`` as a summand."""
    node = t
    for i in range(len(trace) + 1):
        if v in _parts(node):
            return trace[:i]
        if i == len(trace):
            return None
        nxt = next(
            (
                p.body
                for p in _parts(node)
                if isinstance(p, Prefix) and p.action == trace[i]
            ),
            None,
        )
        if nxt is None:
            return None
        node = nxt
    return None


def _dup_path_verdict(pv: Prover, t: Monitor, path: Trace, v: Monitor) -> Pf:
    """``t = t + path.v`` when the node at ``path`` carries ``v``."""
    if not path:
        if t == v:
            return pv.ax_rev("A3", subst={"x": v})
        parts = _parts(t)
        i = parts.index(v)
        pf = pv.rw_part(t, i, pv.ax_rev("A3", subst={"x": v}))
        pf = pv.trans(pf, pv.flatten(pf.dst))
        pf = pv.trans(pf, pv.bubble(pf.dst, i + 1, len(parts)))
        assert pf.dst == Sum(t, v)
        return pf
    head, rest = path[0], path[1:]
    parts = _parts(t)
    i = next(
        i for i, p in enumerate(parts) if isinstance(p, Prefix) and p.action == head
    )
    body = parts[i].body
    inner = _dup_path_verdict(pv, body, rest, v)  # body = body + rest.v
    pf = pv.rw_part(t, i, pv.congpre(head, inner))
    split = pv.ax(
        "D_a",
        {"action": head},
        subst={"x": body, "y": axioms.prefix_seq(rest, v)},
    )
    pf = pv.trans(pf, pv.rw_part(pf.dst, i, split))
    pf = pv.trans(pf, pv.flatten(pf.dst))
    pf = pv.trans(pf, pv.bubble(pf.dst, i + 1, len(parts)))
    assert pf.dst == Sum(t, axioms.prefix_seq(path, v))
    return pf


def _add_trace_verdict(pv: Prover, t: Monitor, trace: Trace, v: Monitor) -> Pf:
    """``t = t + trace.v`` when ``t`` reaches ``v`` along ``trace`` ignoring
    variables (i.e. a syntactic prefix of ``trace`` hits a ``v`` summand)."""
    path = _find_verdict_path(t, trace, v)
    assert path is not None, "verdict not syntactically reachable"
    pf = _dup_path_verdict(pv, t, path, v)
    rest = trace[len(path):]
    if not rest:
        return pf
    base_len = len(_parts(t))
    grow = pv.congpre_seq(path, _verdict_unfold(pv, v, rest))
    pf = pv.trans(pf, pv.rw_part(pf.dst, base_len, grow))
    dist = pv.distribute_seq(path, v, axioms.prefix_seq(rest, v))
    if path:
        pf = pv.trans(pf, pv.rw_part(pf.dst, base_len, dist))
    pf = pv.trans(pf, pv.flatten(pf.dst))
    collapse = pv.sym(_dup_path_verdict(pv, t, path, v))
    pf = pv.trans(pf, pv.rw_spine(pf.dst, base_len, collapse))
    assert pf.dst == Sum(t, axioms.prefix_seq(trace, v))
    return pf


# ---------------------------------------------------------------------------
# Normal form (closed and open share the code; variables are leaves)


def _nf(pv: Prover, m: Monitor) -> Pf:
    match m:
        case Prefix(action, body):
            inner = _nf(pv, body)
            pf = pv.congpre(action, inner)
            if inner.dst == END:
                pf = pv.trans(pf, pv.ax("E_a", {"action": action}))
            return pf
        case Sum(left, right):
            pf = pv.congsum(_nf(pv, left), _nf(pv, right))
            return pv.trans(pf, _merge_nf(pv, pf.dst))
        case _:
            return pv.refl(m)


def _merge_nf(pv: Prover, t: Monitor) -> Pf:
    """Canonicalize a sum of normal forms, merging same-action summands."""
    pf = pv.shallow_canon(t)
    while True:
        parts = _parts(pf.dst)
        pair = next(
            (
                i
                for i in range(len(parts) - 1)
                if isinstance(parts[i], Prefix)
                and isinstance(parts[i + 1], Prefix)
                and parts[i].action == parts[i + 1].action
            ),
            None,
        )
        if pair is None:
            return pf
        a = parts[pair].action
        b1, b2 = parts[pair].body, parts[pair + 1].body
        combined = pv.trans(
            pv.ax_rev("D_a", {"action": a}, subst={"x": b1, "y": b2}),
            pv.congpre(a, _nf(pv, Sum(b1, b2))),
        )
        if combined.dst == Prefix(a, END):
            combined = pv.trans(combined, pv.ax("E_a", {"action": a}))
        if pair == 0:
            step = pv.rw_spine(pf.dst, 1, combined)
        else:
            p = _ln(parts[:pair])
            inner = pv.trans(
                pv.ax_rev(
                    "A2", subst={"x": p, "y": parts[pair], "z": parts[pair + 1]}
                ),
                pv.congsum(pv.refl(p), combined),
            )
            step = pv.rw_spine(pf.dst, pair + 1, inner)
        pf = pv.trans(pf, step)
        pf = pv.trans(pf, pv.shallow_canon(pf.dst))


# ---------------------------------------------------------------------------
# Reduction to (open) reduced normal form


def _push_verdict(pv: Prover, v: Monitor, action: str, body: Monitor) -> Pf:
    """``v + a.body = v + a.(v + body)``."""
    grow = _grow_axiom(v)
    s1 = pv.congsum(pv.ax(grow, {"action": action}), pv.refl(Prefix(action, body)))
    s2 = pv.ax_rev(
        "A2", subst={"x": v, "y": Prefix(action, v), "z": Prefix(action, body)}
    )
    s3 = pv.congsum(
        pv.refl(v), pv.ax_rev("D_a", {"action": action}, subst={"x": v, "y": body})
    )
    return pv.trans(s1, s2, s3)


def _pop_verdict(pv: Prover, v: Monitor, action: str, body: Monitor) -> Pf:
    """``v + a.(v + body) = v + a.body``."""
    return pv.sym(_push_verdict(pv, v, action, body))


def _absorb(pv: Prover, v: Monitor, action: str, body: Monitor) -> Pf:
    """``v + a.body = v`` for closed ``body`` free of the opposite verdict."""
    grow = _grow_axiom(v)
    if body == END:
        return pv.trans(
            pv.congsum(pv.refl(v), pv.ax("E_a", {"action": action})),
            pv.ax("A4", subst={"x": v}),
        )
    if body == v:
        return pv.ax_rev(grow, {"action": action})
    if isinstance(body, Prefix):
        push = _push_verdict(pv, v, action, body)
        inner = _absorb(pv, v, body.action, body.body)
        mid = pv.congsum(pv.refl(v), pv.congpre(action, inner))
        return pv.trans(push, mid, pv.ax_rev(grow, {"action": action}))
    assert isinstance(body, Sum), f"absorb on {body!r}"
    pf = pv.congsum(pv.refl(v), pv.distribute(action, body))
    pf = pv.trans(pf, pv.flatten(pf.dst))
    while True:
        parts = _parts(pf.dst)
        if len(parts) == 1:
            assert parts[0] == v
            return pf
        target = parts[1]
        assert isinstance(target, Prefix) and target.action == action
        pf = pv.trans(
            pf, pv.rw_spine(pf.dst, 1, _absorb(pv, v, action, target.body))
        )


def _strip(pv: Prover, v: Monitor, action: str, body: Monitor) -> Pf:
    """``v + a.body = v + a.body'`` with ``body'`` free of ``v``.

    Pieces that are closed and free of the opposite verdict are absorbed
    outright; open pieces survive with their own ``v`` occurrences removed.
    """
    opp = _opposite(v)
    if isinstance(body, Prefix):
        push = _push_verdict(pv, v, action, body)
        inner = _strip(pv, v, body.action, body.body)
        mid = pv.congsum(pv.refl(v), pv.congpre(action, inner))
        stripped = inner.dst.right
        return pv.trans(push, mid, _pop_verdict(pv, v, action, stripped))
    assert isinstance(body, Sum), f"strip on {body!r}"
    pf = pv.congsum(pv.refl(v), pv.distribute(action, body))
    pf = pv.trans(pf, pv.flatten(pf.dst))
    rounds = len(_parts(pf.dst)) - 1
    for _ in range(rounds):
        parts = _parts(pf.dst)
        target = parts[1]
        assert isinstance(target, Prefix) and target.action == action
        piece = target.body
        if piece == v or (is_closed(piece) and _free_of(piece, opp)):
            pf = pv.trans(
                pf, pv.rw_spine(pf.dst, 1, _absorb(pv, v, action, piece))
            )
            continue
        if contains_verdict(piece, v):
            pf = pv.trans(
                pf, pv.rw_spine(pf.dst, 1, _strip(pv, v, action, piece))
            )
        parts = _parts(pf.dst)
        pf = pv.trans(pf, pv.bubble(pf.dst, 1, len(parts) - 1))
    pf = pv.trans(pf, _fold_prefixes(pv, pf.dst, action))
    parts = _parts(pf.dst)
    assert len(parts) == 2, "strip absorbed every piece; absorb should apply"
    inner = pv.congpre(action, pv.shallow_canon(parts[1].body))
    return pv.trans(pf, pv.rw_part(pf.dst, 1, inner))


def _fold_prefixes(pv: Prover, term: Monitor, action: str) -> Pf:
    """``v + a.n1 + ... + a.nk  =  v + a.(n1 + ... + nk)``."""
    pf = pv.refl(term)
    while True:
        parts = _parts(pf.dst)
        if len(parts) <= 2:
            return pf
        head = _ln(parts[:1])
        u, w = parts[1], parts[2]
        assert isinstance(u, Prefix) and isinstance(w, Prefix)
        inner = pv.trans(
            pv.ax_rev("A2", subst={"x": head, "y": u, "z": w}),
            pv.congsum(
                pv.refl(head),
                pv.ax_rev("D_a", {"action": action}, subst={"x": u.body, "y": w.body}),
            ),
        )
        pf = pv.trans(pf, pv.rw_spine(pf.dst, 2, inner))


def _pair_with_flag(pv: Prover, ed: Edit, v: Monitor, target: Monitor, inner: Pf) -> None:
    """Bring the flag ``v`` to the front and ``target`` next to it, then
    rewrite their pair with ``inner`` (a proof about ``v + target``)."""
    vpos = ed.parts.index(v)
    if vpos != 0:
        ed.step(pv.bubble(ed.term, vpos, 0))
    idx = ed.parts.index(target)
    if idx != 1:
        ed.step(pv.bubble(ed.term, idx, 1))
    ed.step(pv.rw_spine(ed.term, 1, inner))


def _needs_prune(body: Monitor, opp: Monitor) -> bool:
    """A node reached through prefixes has ``opp`` next to other content."""
    parts = _parts(body)
    if opp in parts and len(parts) > 1:
        return True
    return any(
        isinstance(p, Prefix) and _needs_prune_node(p.body, opp) for p in parts
    )


def _needs_prune_node(body: Monitor, opp: Monitor) -> bool:
    if body == opp:
        return False
    parts = _parts(body)
    if opp in parts:
        return True
    return any(
        isinstance(p, Prefix) and _needs_prune_node(p.body, opp) for p in parts
    )


def _prune(pv: Prover, v: Monitor, action: str, body: Monitor) -> Pf:
    """``v + a.body = v + a.body'`` where every node of ``body'`` that can
    issue the opposite verdict is that bare verdict (O1 pruning)."""
    opp = _opposite(v)
    parts = _parts(body)
    push = _push_verdict(pv, v, action, body)
    if opp in parts:
        rest = [p for p in parts if p != opp]
        inner = pv.align(Sum(v, body), Sum(Sum(YES, NO), _ln(rest)))
        inner = pv.trans(inner, pv.ax_rev("O1", subst={"x": _ln(rest)}))
        inner = pv.trans(inner, pv.align(inner.dst, Sum(v, opp)))
        mid = pv.congsum(pv.refl(v), pv.congpre(action, inner))
        return pv.trans(push, mid, _pop_verdict(pv, v, action, opp))
    # recurse into the sub-parts that still reach the opposite verdict
    work = Edit(pv, Sum(v, body))
    work.step(pv.flatten(work.term))
    changed = True
    while changed:
        changed = False
        for p in work.parts:
            if isinstance(p, Prefix) and _needs_prune_node(p.body, opp):
                idx = work.parts.index(p)
                if idx != 1:
                    work.step(pv.bubble(work.term, idx, 1))
                work.step(
                    pv.rw_spine(work.term, 1, _prune(pv, v, p.action, p.body))
                )
                changed = True
                break
    new_parts = work.parts
    body2 = ac_normalize(_ln(new_parts[1:]))
    work.step(pv.align(work.term, Sum(v, body2)))
    mid = pv.congsum(pv.refl(v), pv.congpre(action, work.pf))
    return pv.trans(push, mid, _pop_verdict(pv, v, action, body2))


def _reduce(pv: Prover, t: Monitor, use_o1: bool) -> Pf:
    """Canonical (open) NF to canonical (open) reduced NF.

    With ``use_o1`` off the input must be closed and only E_v steps are
    emitted; with it on, O1 removes summands under a double verdict and
    prunes residue next to reachable opposite verdicts.
    """
    ed = Edit(pv, t)
    has_yes, has_no, acts, _ = _decompose(t)
    if has_yes and has_no:
        rest = [p for p in ed.parts if p not in (YES, NO)]
        if not rest:
            return ed.pf
        if use_o1:
            target = Sum(Sum(YES, NO), _ln(rest))
            ed.step(pv.align(ed.term, target))
            ed.step(pv.ax_rev("O1", subst={"x": _ln(rest)}))
        else:
            while True:
                target = next(
                    (p for p in ed.parts if isinstance(p, Prefix)), None
                )
                if target is None:
                    break
                body = target.body
                if _free_of(body, NO):
                    _pair_with_flag(
                        pv, ed, YES, target, _absorb(pv, YES, target.action, body)
                    )
                elif _free_of(body, YES):
                    _pair_with_flag(
                        pv, ed, NO, target, _absorb(pv, NO, target.action, body)
                    )
                else:
                    inner = _strip(pv, YES, target.action, body)
                    _pair_with_flag(pv, ed, YES, target, inner)
                    new_target = inner.dst.right
                    _pair_with_flag(
                        pv,
                        ed,
                        NO,
                        new_target,
                        _absorb(pv, NO, new_target.action, new_target.body),
                    )
        ed.canon()
        return ed.pf
    # innermost first: reduce every body in its own right
    for p in list(ed.parts):
        if isinstance(p, Prefix):
            inner = _reduce(pv, p.body, use_o1)
            if inner.src != inner.dst:
                idx = ed.parts.index(p)
                ed.step(pv.rw_part(ed.term, idx, pv.congpre(p.action, inner)))
    ed.canon()
    has_yes, has_no, acts, _ = _decompose(ed.term)
    if has_yes and has_no:
        # safety net: the double-verdict branch must win over the flag loop
        return pv.trans(ed.pf, _reduce(pv, ed.term, use_o1))
    flag = YES if has_yes else NO if has_no else None
    if flag is None:
        return ed.pf
    opp = _opposite(flag)
    changed = True
    while changed:
        changed = False
        for p in ed.parts:
            if not isinstance(p, Prefix):
                continue
            if is_closed(p.body) and _free_of(p.body, opp):
                _pair_with_flag(pv, ed, flag, p, _absorb(pv, flag, p.action, p.body))
                changed = True
                break
            if contains_verdict(p.body, flag):
                _pair_with_flag(pv, ed, flag, p, _strip(pv, flag, p.action, p.body))
                changed = True
                break
        if changed:
            ed.canon()
    if use_o1:
        changed = True
        while changed:
            changed = False
            for p in ed.parts:
                if isinstance(p, Prefix) and _needs_prune(p.body, opp):
                    _pair_with_flag(pv, ed, flag, p, _prune(pv, flag, p.action, p.body))
                    changed = True
                    break
            if changed:
                ed.canon()
    return ed.pf


# ---------------------------------------------------------------------------
# Omega collapse (closed and open share the fold)


def _try_fold(pv: Prover, ed: Edit, alphabet: Alphabet) -> bool:
    """Fold a full fan ``sum of a.(v + rest_a)`` into ``v + sum of a.rest_a``."""
    actions = alphabet.sorted_actions()
    for v in (YES, NO):
        has_yes, has_no, acts, _ = _decompose(ed.term)
        if (v == YES and has_yes) or (v == NO and has_no):
            continue
        if set(acts) != set(actions):
            continue
        if not all(b == v or v in _parts(b) for b in acts.values()):
            continue
        # split each a.(v + rest) into a.v + a.rest
        for a in actions:
            body = acts[a]
            if body == v:
                continue
            rest = _ln([p for p in _parts(body) if p != v])
            idx = ed.parts.index(Prefix(a, body))
            inner = pv.trans(
                pv.congpre(a, pv.align(body, Sum(v, rest))),
                pv.ax("D_a", {"action": a}, subst={"x": v, "y": rest}),
            )
            ed.step(pv.rw_part(ed.term, idx, inner))
            ed.step(pv.flatten(ed.term))
        # gather the fan at the front, in sorted action order
        for rank, a in enumerate(actions):
            idx = ed.parts.index(Prefix(a, v))
            ed.step(pv.bubble(ed.term, idx, rank))
        ed.step(pv.rw_spine(ed.term, len(actions) - 1, pv.ax_rev(_fan_axiom(v))))
        ed.canon()
        return True
    return False


def _omega_closed(pv: Prover, t: Monitor, alphabet: Alphabet) -> Pf:
    """Omega-collapse a canonical closed RNF over a finite alphabet."""
    ed = Edit(pv, t)
    while True:
        for p in list(ed.parts):
            if isinstance(p, Prefix):
                inner = _omega_closed(pv, p.body, alphabet)
                if inner.src != inner.dst:
                    idx = ed.parts.index(p)
                    ed.step(pv.rw_part(ed.term, idx, pv.congpre(p.action, inner)))
        ed.canon()
        if not _try_fold(pv, ed, alphabet):
            return ed.pf
        ed.step(_reduce(pv, ed.term, use_o1=False))


# ---------------------------------------------------------------------------
# Finite-alphabet open forms: covering k and O2 elimination


def _min_nonprefixes(u: Trace, actions: list[str]) -> list[Trace]:
    """Minimal traces that are not prefixes of ``u``."""
    out: list[Trace] = []
    for i in range(len(u) + 1):
        for c in actions:
            if i == len(u) or c != u[i]:
                out.append(u[:i] + (c,))
    return sorted(out, key=lambda t: (len(t), t))


def both_verdict_members(s: Trace, k: int, alphabet: Alphabet) -> list[Trace]:
    """Minimal traces both accepted and rejected by ``bar_k(s, k, yes+no)``."""
    actions = alphabet.sorted_actions()
    if k == 1:
        return _min_nonprefixes(s, actions)
    return sorted(
        [s + w for w in _min_nonprefixes(s * (k - 1), actions)],
        key=lambda t: (len(t), t),
    )


def covering_k(m: Monitor, s: Trace, alphabet: Alphabet) -> int | None:
    """Least ``k`` such that every trace both accepted and rejected by
    ``bar_k(s, k, yes+no)`` is both accepted and rejected by ``m`` with all
    variables mapped to ``end``; searched up to the depth bound."""
    if not s:
        raise ValueError("covering_k requires a nonempty trace")
    m_end = apply_subst({x: END for x in vars_of(m)}, m)
    k_bound = depth(m) // len(s) + 2
    for k in range(1, k_bound + 1):
        members = both_verdict_members(s, k, alphabet)
        if all(accepts(m_end, t) and rejects(m_end, t) for t in members):
            return k
    return None


def _var_paths(t: Monitor) -> list[tuple[Trace, str]]:
    """Nonempty traces after which a variable occurs as a summand."""
    out: list[tuple[Trace, str]] = []

    def walk(node: Monitor, path: Trace) -> None:
        for p in _parts(node):
            if isinstance(p, Var) and path:
                out.append((path, p.name))
            elif isinstance(p, Prefix):
                walk(p.body, path + (p.action,))

    walk(t, ())
    return sorted(set(out), key=lambda sx: (len(sx[0]), sx[0], sx[1]))


def _extract_var(pv: Prover, t: Monitor, s: Trace, name: str) -> Pf:
    """``t = R + s.x`` (or ``t = s.x`` when nothing else remains)."""
    x = Var(name)
    head, rest = s[0], s[1:]
    parts = _parts(t)
    i = next(
        i for i, p in enumerate(parts) if isinstance(p, Prefix) and p.action == head
    )
    body = parts[i].body
    n = len(parts)
    if not rest:
        if body == x:
            if n == 1:
                return pv.refl(t)
            return pv.bubble(t, i, n - 1)
        rb = _ln([p for p in _parts(body) if p != x])
        inner = pv.trans(
            pv.congpre(head, pv.align(body, Sum(rb, x))),
            pv.ax("D_a", {"action": head}, subst={"x": rb, "y": x}),
        )
        pf = pv.rw_part(t, i, inner)
        pf = pv.trans(pf, pv.flatten(pf.dst))
        return pv.trans(pf, pv.bubble(pf.dst, i + 1, n))
    inner = _extract_var(pv, body, rest, name)
    tail = axioms.prefix_seq(rest, x)
    if inner.dst == tail:
        pf = pv.rw_part(t, i, pv.congpre(head, inner)) if inner.src != inner.dst else pv.refl(t)
        if n == 1:
            return pf
        return pv.trans(pf, pv.bubble(pf.dst, i, n - 1))
    rb = inner.dst.left
    step = pv.trans(
        pv.congpre(head, inner),
        pv.ax("D_a", {"action": head}, subst={"x": rb, "y": tail}),
    )
    pf = pv.rw_part(t, i, step)
    pf = pv.trans(pf, pv.flatten(pf.dst))
    return pv.trans(pf, pv.bubble(pf.dst, i + 1, n))


def _saturate_to(pv: Prover, base: Monitor, members: list[Trace], guard: Monitor) -> Pf:
    """``base = base + guard`` where ``guard`` is the bar-family monitor whose
    minimal both-verdict traces are ``members``, all of them already both
    accepted and rejected by ``base`` independently of its variables."""
    pf = pv.refl(base)
    added: list[Monitor] = []
    for t0 in members:
        for v in (YES, NO):
            pf = pv.trans(pf, _add_trace_verdict(pv, pf.dst, t0, v))
            added.append(axioms.prefix_seq(t0, v))
    flat = _ln(added)
    pf = pv.trans(pf, pv.align(pf.dst, Sum(base, flat)))
    p1 = _nf(pv, flat)
    pf_flat = pv.trans(p1, _reduce(pv, p1.dst, use_o1=False))
    p2 = _nf(pv, guard)
    pf_guard = pv.trans(p2, _reduce(pv, p2.dst, use_o1=False))
    assert pf_flat.dst == pf_guard.dst, "saturation summands must match the guard"
    pf = pv.trans(pf, pv.congsum(pv.refl(base), pv.trans(pf_flat, pv.sym(pf_guard))))
    return pf


def _eliminate_occurrence(
    pv: Prover, ed: Edit, s: Trace, name: str, k: int, alphabet: Alphabet
) -> None:
    """Remove the occurrence of the top variable ``name`` after ``s``
    through the O2 instance at ``(s, k)``."""
    t = ed.term
    guard = axioms.bar_k(s, k, Sum(YES, NO), alphabet)
    members = both_verdict_members(s, k, alphabet)
    x = Var(name)
    sx = axioms.prefix_seq(s, x)
    # 1. t = t + guard
    ed.step(_saturate_to(pv, t, members, guard))
    # 2. pull the deep occurrence out: t = R + s.x
    extract = _extract_var(pv, t, s, name)
    ed.step(pv.congsum(extract, pv.refl(guard)))
    r_term = extract.dst.left  # contains the top-level x summand
    rest = [p for p in _parts(r_term) if p != x]
    # 3. shuffle into the O2 redex and apply it
    if rest:
        target = Sum(_ln(rest), Sum(Sum(x, sx), guard))
        ed.step(pv.align(ed.term, target))
        ed.step(
            pv.congsum(
                pv.refl(_ln(rest)), pv.ax("O2", {"s": s, "k": k}, subst={"x": x})
            )
        )
    else:
        ed.step(pv.align(ed.term, Sum(Sum(x, sx), guard)))
        ed.step(pv.ax("O2", {"s": s, "k": k}, subst={"x": x}))
    # 4. drop the guard again
    remainder = ac_normalize(_ln(rest + [x]))
    ed.step(pv.align(ed.term, Sum(remainder, guard)))
    ed.step(pv.sym(_saturate_to(pv, remainder, members, guard)))
    renf = _nf(pv, ed.term)
    ed.step(pv.trans(renf, _reduce(pv, renf.dst, use_o1=True)))


def _finite_act_rnf(pv: Prover, m: Monitor, alphabet: Alphabet) -> Pf:
    pf = _nf(pv, m)
    pf = pv.trans(pf, _reduce(pv, pf.dst, use_o1=True))
    fuel = 200
    while True:
        fuel -= 1
        assert fuel > 0, "finite_act_rnf failed to stabilize"
        t = pf.dst
        ed = Edit(pv, t)
        # innermost first
        for p in list(ed.parts):
            if isinstance(p, Prefix):
                inner = _finite_act_rnf(pv, p.body, alphabet)
                if inner.src != inner.dst:
                    idx = ed.parts.index(p)
                    ed.step(pv.rw_part(ed.term, idx, pv.congpre(p.action, inner)))
        ed.canon()
        top_vars = {x for x in _decompose(ed.term)[3]}
        done = True
        for s, x in _var_paths(ed.term):
            if x not in top_vars:
                continue
            k = covering_k(ed.term, s, alphabet)
            if k is None:
                continue
            _eliminate_occurrence(pv, ed, s, x, k, alphabet)
            done = False
            break
        pf = pv.trans(pf, ed.pf)
        if done and ed.pf.src == ed.pf.dst:
            return pf


# ---------------------------------------------------------------------------
# Unary forms


def _occurrence_depths(t: Monitor, name: str) -> list[int]:
    out: list[int] = []

    def walk(node: Monitor, d: int) -> None:
        for p in _parts(node):
            if isinstance(p, Var) and p.name == name:
                out.append(d)
            elif isinstance(p, Prefix):
                walk(p.body, d + 1)

    walk(t, 0)
    return sorted(out)


def _remove_var_at(t: Monitor, name: str, target: int, d: int = 0) -> Monitor:
    """Drop the ``name`` summand at depth ``target`` of a unary path term."""
    parts = []
    for p in _parts(t):
        if isinstance(p, Var) and p.name == name and d == target:
            continue
        if isinstance(p, Prefix):
            body = _remove_var_at(p.body, name, target, d + 1)
            if body == END:
                continue
            parts.append(Prefix(p.action, body))
        else:
            parts.append(p)
    return ac_normalize(_ln(parts)) if parts else END


def _unfold_var_at(
    pv: Prover, t: Monitor, name: str, at_depth: int, delta: int, action: str
) -> Pf:
    """Rewrite the ``x`` at depth ``at_depth`` into ``x + a^delta.x``."""
    if at_depth == 0:
        parts = _parts(t)
        i = parts.index(Var(name))
        pf = pv.rw_part(t, i, _var_unfold(pv, name, action, delta))
        return pv.trans(pf, pv.flatten(pf.dst))
    parts = _parts(t)
    i = next(
        i for i, p in enumerate(parts) if isinstance(p, Prefix) and p.action == action
    )
    inner = _unfold_var_at(pv, parts[i].body, name, at_depth - 1, delta, action)
    return pv.rw_part(t, i, pv.congpre(action, inner))


def _unary_rnf(pv: Prover, m: Monitor, alphabet: Alphabet) -> Pf:
    action = alphabet.sorted_actions()[0]
    pf = _nf(pv, m)
    pf = pv.trans(pf, _reduce(pv, pf.dst, use_o1=True))
    while True:
        t = pf.dst
        worklist = []
        for name in sorted(vars_of(t)):
            ds = _occurrence_depths(t, name)
            if len(ds) > 1:
                worklist.append((name, ds))
        if not worklist:
            return pf
        name, ds = worklist[0]
        d0, d1 = ds[0], ds[-1]
        without = _remove_var_at(t, name, d1)
        grow = _unfold_var_at(pv, without, name, d0, d1 - d0, action)
        grow = pv.trans(grow, _nf(pv, grow.dst))
        grow = pv.trans(grow, pv.align(grow.dst, t))
        pf = pv.trans(pf, pv.sym(grow))
        pf = pv.trans(pf, _reduce(pv, pf.dst, use_o1=True))


def _strip_prefixes(pv: Prover, m: Monitor) -> Pf:
    """Erase every prefix with ``x = a.x`` (sound over a singleton alphabet
    modulo omega-verdict equivalence)."""
    match m:
        case Prefix(action, body):
            inner = _strip_prefixes(pv, body)
            pf = pv.congpre(action, inner)
            return pv.trans(pf, pv.ax_rev("V1_w", subst={"x": inner.dst}))
        case Sum(_, _):
            ed = Edit(pv, m)
            ed.step(pv.flatten(ed.term))
            while True:
                target = next((p for p in ed.parts if isinstance(p, Prefix)), None)
                if target is None:
                    break
                inner = _strip_prefixes(pv, target)
                ed.step(pv.rw_part(ed.term, ed.parts.index(target), inner))
                ed.step(pv.flatten(ed.term))
            ed.canon()
            return ed.pf
        case _:
            return pv.refl(m)


def _unary_omega(pv: Prover, m: Monitor) -> Pf:
    pf = _strip_prefixes(pv, m)
    pf = pv.trans(pf, pv.shallow_canon(pf.dst))
    has_yes, has_no, _, _ = _decompose(pf.dst)
    if has_yes and has_no:
        rest = [p for p in _parts(pf.dst) if p not in (YES, NO)]
        if rest:
            pf = pv.trans(pf, pv.align(pf.dst, Sum(Sum(YES, NO), _ln(rest))))
            pf = pv.trans(pf, pv.ax_rev("O1", subst={"x": _ln(rest)}))
            pf = pv.trans(pf, pv.shallow_canon(pf.dst))
    return pf


def _omega_open(pv: Prover, m: Monitor, alphabet: Alphabet) -> Pf:
    pf = _finite_act_rnf(pv, m, alphabet)
    fuel = 200
    while True:
        fuel -= 1
        assert fuel > 0, "omega_open_nf failed to stabilize"
        ed = Edit(pv, pf.dst)
        for p in list(ed.parts):
            if isinstance(p, Prefix):
                inner = _omega_open_body(pv, p.body, alphabet)
                if inner.src != inner.dst:
                    idx = ed.parts.index(p)
                    ed.step(pv.rw_part(ed.term, idx, pv.congpre(p.action, inner)))
        ed.canon()
        folded = _try_fold(pv, ed, alphabet)
        pf = pv.trans(pf, ed.pf)
        if folded:
            pf = pv.trans(pf, _reduce(pv, pf.dst, use_o1=True))
            pf = pv.trans(pf, _finite_act_rnf(pv, pf.dst, alphabet))
        elif ed.pf.src == ed.pf.dst:
            return pf


def _omega_open_body(pv: Prover, t: Monitor, alphabet: Alphabet) -> Pf:
    ed = Edit(pv, t)
    for p in list(ed.parts):
        if isinstance(p, Prefix):
            inner = _omega_open_body(pv, p.body, alphabet)
            if inner.src != inner.dst:
                idx = ed.parts.index(p)
                ed.step(pv.rw_part(ed.term, idx, pv.congpre(p.action, inner)))
    ed.canon()
    if _try_fold(pv, ed, alphabet):
        ed.step(_reduce(pv, ed.term, use_o1=True))
    return ed.pf


# ---------------------------------------------------------------------------
# Public pipelines


def _infer_alphabet(m: Monitor, alphabet: Alphabet | None) -> Alphabet:
    if alphabet is not None:
        if alphabet.is_finite:
            missing = actions_of(m) - alphabet.actions
            if missing:
                raise ValueError(
                    f"monitor uses actions outside the alphabet: {sorted(missing)}"
                )
        return alphabet
    acts = actions_of(m)
    return Alphabet.finite(sorted(acts)) if acts else Alphabet.open_ended()


def _finish(
    pv: Prover, source: Monitor, pf: Pf, kind: str, emit: bool
) -> CanonicalForm:
    if not emit:
        return CanonicalForm(pf.dst, kind, None)
    if pf.src == pf.dst:
        pv.steps = []
        pv._emit(source, source, Reflexivity())
    else:
        last = pv.steps[-1]
        want = Equation(pf.src, pf.dst)
        if last.equation != want:
            tail = pv._emit(pf.dst, pf.dst, Reflexivity())
            pv._emit(pf.src, pf.dst, Transitivity(pf.sid, tail.sid))
    return CanonicalForm(
        pf.dst, kind, Derivation(pv.system, pv.alphabet, tuple(pv.steps))
    )


def normal_form_closed(
    m: Monitor, alphabet: Alphabet | None = None, emit_proof: bool = False
) -> CanonicalForm:
    require_closed(m, "normal_form_closed")
    pv = Prover("Ev", _infer_alphabet(m, alphabet), emit_proof)
    return _finish(pv, m, _nf(pv, m), NF, emit_proof)


def reduced_nf_closed(
    m: Monitor, alphabet: Alphabet | None = None, emit_proof: bool = False
) -> CanonicalForm:
    require_closed(m, "reduced_nf_closed")
    pv = Prover("Ev", _infer_alphabet(m, alphabet), emit_proof)
    pf = _nf(pv, m)
    pf = pv.trans(pf, _reduce(pv, pf.dst, use_o1=False))
    return _finish(pv, m, pf, RNF, emit_proof)


def omega_nf_closed(
    m: Monitor, alphabet: Alphabet, emit_proof: bool = False
) -> CanonicalForm:
    require_closed(m, "omega_nf_closed")
    alphabet = _infer_alphabet(m, alphabet)
    if not alphabet.is_finite:
        raise ValueError("omega_nf_closed needs a finite alphabet")
    pv = Prover("Eomega", alphabet, emit_proof)
    pf = _nf(pv, m)
    pf = pv.trans(pf, _reduce(pv, pf.dst, use_o1=False))
    pf = pv.trans(pf, _omega_closed(pv, pf.dst, alphabet))
    return _finish(pv, m, pf, OMEGA_NF, emit_proof)


def open_nf(
    m: Monitor, alphabet: Alphabet | None = None, emit_proof: bool = False
) -> CanonicalForm:
    pv = Prover("Ev", _infer_alphabet(m, alphabet), emit_proof)
    return _finish(pv, m, _nf(pv, m), OPEN_NF, emit_proof)


def open_rnf(
    m: Monitor, alphabet: Alphabet | None = None, emit_proof: bool = False
) -> CanonicalForm:
    pv = Prover("Ev'", _infer_alphabet(m, alphabet), emit_proof)
    pf = _nf(pv, m)
    pf = pv.trans(pf, _reduce(pv, pf.dst, use_o1=True))
    return _finish(pv, m, pf, OPEN_RNF, emit_proof)


def finite_act_rnf(
    m: Monitor, alphabet: Alphabet, emit_proof: bool = False
) -> CanonicalForm:
    alphabet = _infer_alphabet(m, alphabet)
    if not alphabet.is_finite or len(alphabet) < 2:
        raise AlphabetTooSmall("finite_act_rnf needs a finite alphabet with >= 2 actions")
    pv = Prover("Evf'", alphabet, emit_proof)
    return _finish(pv, m, _finite_act_rnf(pv, m, alphabet), FIN_RNF, emit_proof)


def unary_rnf(
    m: Monitor, alphabet: Alphabet, emit_proof: bool = False
) -> CanonicalForm:
    alphabet = _infer_alphabet(m, alphabet)
    if not alphabet.is_finite or len(alphabet) != 1:
        raise ValueError("unary_rnf needs a one-action alphabet")
    pv = Prover("Ev1'", alphabet, emit_proof)
    return _finish(pv, m, _unary_rnf(pv, m, alphabet), UNARY_RNF, emit_proof)


def unary_omega_nf(
    m: Monitor, alphabet: Alphabet, emit_proof: bool = False
) -> CanonicalForm:
    alphabet = _infer_alphabet(m, alphabet)
    if not alphabet.is_finite or len(alphabet) != 1:
        raise ValueError("unary_omega_nf needs a one-action alphabet")
    pv = Prover("Eomega1'", alphabet, emit_proof)
    return _finish(pv, m, _unary_omega(pv, m), UNARY_OMEGA_NF, emit_proof)


def omega_open_nf(
    m: Monitor, alphabet: Alphabet, emit_proof: bool = False
) -> CanonicalForm:
    alphabet = _infer_alphabet(m, alphabet)
    if not alphabet.is_finite or len(alphabet) < 2:
        raise AlphabetTooSmall("omega_open_nf needs a finite alphabet with >= 2 actions")
    pv = Prover("Eomegaf'", alphabet, emit_proof)
    return _finish(pv, m, _omega_open(pv, m, alphabet), OPEN_OMEGA_NF, emit_proof)


PIPELINES = {
    NF: normal_form_closed,
    RNF: reduced_nf_closed,
    OMEGA_NF: omega_nf_closed,
    OPEN_NF: open_nf,
    OPEN_RNF: open_rnf,
    FIN_RNF: finite_act_rnf,
    UNARY_RNF: unary_rnf,
    UNARY_OMEGA_NF: unary_omega_nf,
    OPEN_OMEGA_NF: omega_open_nf,
}


# ---------------------------------------------------------------------------
# Structural form predicates (used by tests and assertions)


def is_normal_form(t: Monitor, allow_vars: bool = True) -> bool:
    if t == END:
        return True
    has_yes = has_no = False
    seen_actions: set[str] = set()
    for p in _parts(t):
        if p == YES:
            if has_yes:
                return False
            has_yes = True
        elif p == NO:
            if has_no:
                return False
            has_no = True
        elif isinstance(p, Prefix):
            if p.action in seen_actions or p.body == END:
                return False
            seen_actions.add(p.action)
            if not is_normal_form(p.body, allow_vars):
                return False
        elif isinstance(p, Var):
            if not allow_vars:
                return False
        else:
            return False
    return True


def is_reduced_nf(t: Monitor, allow_vars: bool = True) -> bool:
    if not is_normal_form(t, allow_vars):
        return False
    has_yes, has_no, acts, variables = _decompose(t)
    if has_yes and has_no:
        return not acts and not variables
    for v, flag in ((YES, has_yes), (NO, has_no)):
        if flag and any(contains_verdict(b, v) for b in acts.values()):
            return False
    return all(is_reduced_nf(b, allow_vars) for b in acts.values())

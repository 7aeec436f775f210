"""Concrete syntax: parsing and printing of monitors, equations and tables.

Grammar::

    term    ::= prefterm ('+' prefterm)*          # '+' associates left
    prefterm::= ACTION '.' prefterm | atom        # '.' binds tighter, right
    atom    ::= 'yes' | 'no' | 'end' | IDENT | '(' term ')'

Identifiers that belong to the alphabet parse as actions; all others parse
as variables.  With an open-ended alphabet the variables must be declared
explicitly and every other identifier is an action.  ``#`` starts a line
comment in every file format.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .terms import (
    END,
    NO,
    RESERVED_WORDS,
    YES,
    Alphabet,
    End,
    Equation,
    Monitor,
    No,
    Prefix,
    Substitution,
    Sum,
    Trace,
    Var,
    Yes,
    is_identifier,
)

UNEXPECTED_TOKEN = "UnexpectedToken"
RESERVED_WORD_AS_ACTION = "ReservedWordAsAction"
UNBALANCED_PAREN = "UnbalancedParen"
EMPTY_INPUT = "EmptyInput"


@dataclass(frozen=True, slots=True)
class SourceSpan:
    line: int
    column: int
    offset: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(ValueError):
    def __init__(self, span: SourceSpan, kind: str, message: str):
        super().__init__(f"{span}: {message}")
        self.span = span
        self.kind = kind
        self.message = message


# ---------------------------------------------------------------------------
# Tokenizer


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # 'ident', '+', '.', '(', ')', '=', '->', ',', 'eof'
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        span = SourceSpan(line, col, i)
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            tokens.append(_Token("ident", word, SourceSpan(line, col, i, j - i)))
            col += j - i
            i = j
            continue
        if c == "-" and i + 1 < n and text[i + 1] == ">":
            tokens.append(_Token("->", "->", SourceSpan(line, col, i, 2)))
            i += 2
            col += 2
            continue
        if c in "+.()=,":
            tokens.append(_Token(c, c, span))
            i += 1
            col += 1
            continue
        raise ParseError(span, UNEXPECTED_TOKEN, f"unexpected character {c!r}")
    tokens.append(_Token("eof", "", SourceSpan(line, col, i, 0)))
    return tokens


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet, variables: frozenset[str]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.alphabet = alphabet
        self.variables = variables

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, tok: _Token, message: str, kind: str = UNEXPECTED_TOKEN):
        raise ParseError(tok.span, kind, message)

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            self.fail(tok, f"expected {kind!r}, found {tok.text or 'end of input'!r}")
        return tok

    def is_action(self, name: str) -> bool:
        if self.alphabet.is_finite:
            return name in self.alphabet
        return name not in self.variables

    def parse_term(self) -> Monitor:
        term = self.parse_prefterm()
        while self.peek().kind == "+":
            self.next()
            term = Sum(term, self.parse_prefterm())
        return term

    def parse_prefterm(self) -> Monitor:
        tok = self.peek()
        if tok.kind == "ident" and tok.text not in RESERVED_WORDS:
            if self.tokens[self.pos + 1].kind == ".":
                self.next()
                if not self.is_action(tok.text):
                    self.fail(tok, f"variable {tok.text!r} cannot be used as a prefix")
                self.expect(".")
                return Prefix(tok.text, self.parse_prefterm())
        return self.parse_atom()

    def parse_atom(self) -> Monitor:
        tok = self.next()
        if tok.kind == "ident":
            if tok.text == "yes":
                return YES
            if tok.text == "no":
                return NO
            if tok.text == "end":
                return END
            if self.is_action(tok.text):
                self.fail(tok, f"action {tok.text!r} must be followed by '.'")
            return Var(tok.text)
        if tok.kind == "(":
            term = self.parse_term()
            close = self.next()
            if close.kind != ")":
                self.fail(close, "expected ')'", UNBALANCED_PAREN)
            return term
        if tok.kind == ")":
            self.fail(tok, "unmatched ')'", UNBALANCED_PAREN)
        if tok.kind == "eof":
            self.fail(tok, "unexpected end of input")
        self.fail(tok, f"unexpected token {tok.text!r}")

    def at_end(self) -> bool:
        return self.peek().kind == "eof"


def parse_monitor(
    text: str, alphabet: Alphabet, variables: Iterable[str] = ()
) -> Monitor:
    """Parse a single monitor term.

    ``variables`` declares the variable names for open-ended alphabets; with
    a finite alphabet every identifier outside the alphabet is a variable.
    """
    parser = _Parser(text, alphabet, frozenset(variables))
    if parser.at_end():
        raise ParseError(SourceSpan(1, 1, 0, 0), EMPTY_INPUT, "empty input")
    term = parser.parse_term()
    tok = parser.peek()
    if tok.kind != "eof":
        parser.fail(tok, f"trailing input starting at {tok.text!r}")
    return term


def parse_equation(
    text: str, alphabet: Alphabet, variables: Iterable[str] = ()
) -> Equation:
    parser = _Parser(text, alphabet, frozenset(variables))
    if parser.at_end():
        raise ParseError(SourceSpan(1, 1, 0, 0), EMPTY_INPUT, "empty input")
    lhs = parser.parse_term()
    parser.expect("=")
    rhs = parser.parse_term()
    tok = parser.peek()
    if tok.kind != "eof":
        parser.fail(tok, f"trailing input starting at {tok.text!r}")
    return Equation(lhs, rhs)


def parse_alphabet(text: str) -> Alphabet:
    """``infinite`` or a comma-separated list of action names."""
    stripped = text.strip()
    if stripped == "infinite":
        return Alphabet.open_ended()
    if not stripped:
        raise ParseError(SourceSpan(1, 1, 0, 0), EMPTY_INPUT, "empty alphabet")
    tokens = _tokenize(text)
    names: list[str] = []
    i = 0
    while True:
        tok = tokens[i]
        if tok.kind != "ident":
            raise ParseError(tok.span, UNEXPECTED_TOKEN, "expected an action name")
        if tok.text in RESERVED_WORDS:
            raise ParseError(
                tok.span,
                RESERVED_WORD_AS_ACTION,
                f"{tok.text!r} cannot be declared as an action",
            )
        if tok.text in names:
            raise ParseError(tok.span, UNEXPECTED_TOKEN, f"duplicate action {tok.text!r}")
        names.append(tok.text)
        i += 1
        if tokens[i].kind == "eof":
            break
        if tokens[i].kind != ",":
            raise ParseError(tokens[i].span, UNEXPECTED_TOKEN, "expected ','")
        i += 1
    return Alphabet.finite(names)


def parse_trace(text: str) -> Trace:
    """Space-separated action names; ``<eps>`` denotes the empty trace."""
    stripped = text.strip()
    if stripped in ("<eps>", ""):
        return ()
    parts = tuple(stripped.split())
    for p in parts:
        if not is_identifier(p) or p in RESERVED_WORDS:
            raise ParseError(
                SourceSpan(1, 1, 0, len(text)), UNEXPECTED_TOKEN, f"bad action {p!r}"
            )
    return parts


def print_trace(trace: Trace) -> str:
    return " ".join(trace) if trace else "<eps>"


def parse_substitution(
    text: str, alphabet: Alphabet, variables: Iterable[str] = ()
) -> dict[str, Monitor]:
    """Parse lines of the form ``x -> term``."""
    mapping: dict[str, Monitor] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ParseError(
                SourceSpan(1, 1, 0, len(line)), UNEXPECTED_TOKEN, "expected 'x -> term'"
            )
        name, _, term_text = line.partition("->")
        name = name.strip()
        if not is_identifier(name) or name in RESERVED_WORDS:
            raise ParseError(
                SourceSpan(1, 1, 0, len(name)),
                UNEXPECTED_TOKEN,
                f"bad variable name {name!r}",
            )
        mapping[name] = parse_monitor(term_text, alphabet, variables)
    return mapping


def print_substitution(sigma: Substitution) -> str:
    return ", ".join(
        f"{name} -> {print_monitor(term)}" for name, term in sorted(sigma.items())
    )


# ---------------------------------------------------------------------------
# Term files


@dataclass(slots=True)
class TermFile:
    """A parsed monitor file: optional headers plus named or bare terms."""

    alphabet: Alphabet | None = None
    variables: frozenset[str] = frozenset()
    terms: dict[str, Monitor] = field(default_factory=dict)

    def single(self) -> Monitor:
        if len(self.terms) != 1:
            raise ValueError(
                f"expected exactly one term, file defines {len(self.terms)}"
            )
        return next(iter(self.terms.values()))


def parse_term_file(text: str, default_alphabet: Alphabet | None = None) -> TermFile:
    """Parse a monitor file.

    Recognized headers: ``alphabet: a,b`` (or ``infinite``) and ``vars: x,y``.
    Each remaining nonempty line is either ``name := term`` or a bare term
    (named ``_1``, ``_2``, ... in order).
    """
    out = TermFile(alphabet=default_alphabet)
    body: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            out.alphabet = parse_alphabet(line[len("alphabet:") :])
            continue
        if line.startswith("vars:"):
            names = [n.strip() for n in line[len("vars:") :].split(",") if n.strip()]
            for n in names:
                if not is_identifier(n) or n in RESERVED_WORDS:
                    raise ParseError(
                        SourceSpan(1, 1, 0, len(n)),
                        UNEXPECTED_TOKEN,
                        f"bad variable name {n!r}",
                    )
            out.variables = out.variables | frozenset(names)
            continue
        body.append(line)
    alphabet = out.alphabet
    if alphabet is None:
        raise ValueError("no alphabet: give one in the file or on the command line")
    counter = 0
    for line in body:
        if ":=" in line:
            name, _, term_text = line.partition(":=")
            name = name.strip()
        else:
            counter += 1
            name, term_text = f"_{counter}", line
        out.terms[name] = parse_monitor(term_text, alphabet, out.variables)
    return out


# ---------------------------------------------------------------------------
# Printing


def _print(m: Monitor, parent: str) -> str:
    match m:
        case End():
            return "end"
        case Yes():
            return "yes"
        case No():
            return "no"
        case Var(name):
            return name
        case Prefix(action, body):
            return f"{action}.{_print(body, 'prefix')}"
        case Sum(left, right):
            # '+' parses left-associated, so only a right operand or a prefix
            # body needs parentheses around a nested sum.
            text = f"{_print(left, 'sum-left')} + {_print(right, 'sum-right')}"
            if parent in ("prefix", "sum-right"):
                return f"({text})"
            return text
    raise TypeError(f"not a monitor: {m!r}")


def print_monitor(m: Monitor) -> str:
    """Minimal-parentheses rendering that :func:`parse_monitor` inverts."""
    return _print(m, "top")


def print_equation(eq: Equation) -> str:
    return f"{print_monitor(eq.lhs)} = {print_monitor(eq.rhs)}"

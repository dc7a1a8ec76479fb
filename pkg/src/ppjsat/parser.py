"""Concrete syntax for probabilistic justification formulas and plain modal formulas.

Token conventions: ``~`` negation, ``&`` conjunction, ``|`` disjunction,
``->`` implication, ``P>=q`` / ``P<q`` / ``P<=q`` / ``P>q`` / ``P=q`` with q an
integer, decimal or fraction ``n/m``; ``:`` justification, ``!`` proof
checker, ``.`` term application, ``[]`` / ``<>`` box and diamond in modal
mode.  Term identifiers beginning with x, y or z are term variables; every
other term identifier is a constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .modal import Box, Diamond, ModalFormula, SurfaceModalFormula, expand_modal_sugar
from .syntax import (
    And,
    App,
    Bang,
    Const,
    Formula,
    Imp,
    Just,
    Not,
    Or,
    PCmp,
    PGeq,
    Prop,
    SurfaceFormula,
    Term,
    Var,
    expand_sugar,
)


class ParseError(Exception):
    """Rejected input, carrying the 0-based offset of the offending token."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (column {pos + 1})")
        self.message = message
        self.pos = pos


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "num", or the punctuation text itself
    text: str
    pos: int


_PUNCT_KINDS = ("(", ")", "&", "|", "->", "~", ":", "!", ".", "/", "<=", ">=", "<>", "<", ">", "=", "[]")
_CMP_KINDS = ("<=", ">=", "<", ">", "=")


def _lex(text: str) -> list[_Token]:
    toks: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isalpha() or c == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("ident", text[i:j], i))
            i = j
            continue
        if c.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            toks.append(_Token("num", text[i:j], i))
            i = j
            continue
        two = text[i : i + 2]
        if two in ("->", "<=", ">=", "<>", "[]"):
            toks.append(_Token(two, two, i))
            i += 2
            continue
        if c in "()&|~:!./<>=":
            toks.append(_Token(c, c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    toks.append(_Token("eof", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, modal: bool = False):
        self.toks = _lex(text)
        self.i = 0
        self.modal = modal

    def peek(self, ahead: int = 0) -> _Token:
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def next(self) -> _Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> _Token:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"expected {kind!r}, found {t.text or 'end of input'!r}", t.pos)
        return self.next()

    # formula := imp ; imp := or ("->" imp)?
    def formula(self) -> SurfaceFormula:
        left = self.or_level()
        if self.peek().kind == "->":
            self.next()
            return Imp(left, self.formula())
        return left

    def or_level(self) -> SurfaceFormula:
        out = self.and_level()
        while self.peek().kind == "|":
            self.next()
            out = Or(out, self.and_level())
        return out

    def and_level(self) -> SurfaceFormula:
        out = self.unary()
        while self.peek().kind == "&":
            self.next()
            out = And(out, self.unary())
        return out

    def unary(self) -> SurfaceFormula:
        t = self.peek()
        if t.kind == "~":
            self.next()
            return Not(self.unary())
        if self.modal:
            if t.kind == "[]":
                self.next()
                return Box(self.unary())
            if t.kind == "<>":
                self.next()
                return Diamond(self.unary())
            return self.atom()
        if t.kind == "ident" and t.text == "P" and self.peek(1).kind in _CMP_KINDS:
            self.next()
            op = self.next().kind
            q = self.rational()
            body = self.unary()
            if op == ">=":
                return PGeq(q, body)
            return PCmp(op, q, body)
        # A justification prefix "term :" is only committed to once the
        # colon is seen; otherwise rewind and read an atom.
        save = self.i
        term = None
        try:
            term = self.term()
        except ParseError:
            self.i = save
        if term is not None and self.peek().kind == ":":
            self.next()
            return Just(term, self.unary())
        self.i = save
        return self.atom()

    def atom(self) -> SurfaceFormula:
        t = self.peek()
        if t.kind == "ident":
            self.next()
            return Prop(t.text)
        if t.kind == "(":
            self.next()
            out = self.formula()
            self.expect(")")
            return out
        raise ParseError(f"expected a formula, found {t.text or 'end of input'!r}", t.pos)

    def rational(self) -> Fraction:
        t = self.expect("num")
        if "." in t.text:
            q = Fraction(t.text)
        elif self.peek().kind == "/":
            self.next()
            d = self.expect("num")
            if "." in d.text:
                raise ParseError("fraction denominator must be an integer", d.pos)
            if int(d.text) == 0:
                raise ParseError("zero denominator", d.pos)
            q = Fraction(int(t.text), int(d.text))
        else:
            q = Fraction(int(t.text))
        if not 0 <= q <= 1:
            raise ParseError(f"probability {q} outside [0, 1]", t.pos)
        return q

    # term := tfactor ("." tfactor)*
    def term(self) -> Term:
        out = self.tfactor()
        while self.peek().kind == ".":
            self.next()
            out = App(out, self.tfactor())
        return out

    def tfactor(self) -> Term:
        t = self.peek()
        if t.kind == "!":
            self.next()
            return Bang(self.tfactor())
        if t.kind == "ident":
            self.next()
            if t.text[0] in "xyz":
                return Var(t.text)
            return Const(t.text)
        if t.kind == "(":
            self.next()
            out = self.term()
            self.expect(")")
            return out
        raise ParseError(f"expected a term, found {t.text or 'end of input'!r}", t.pos)

    def finish(self) -> None:
        t = self.peek()
        if t.kind != "eof":
            raise ParseError(f"unexpected {t.text!r} after formula", t.pos)


def parse_formula(text: str) -> Formula:
    """Parse probabilistic justification syntax into a core formula."""
    p = _Parser(text)
    out = p.formula()
    p.finish()
    return expand_sugar(out)


def parse_term(text: str) -> Term:
    """Parse a justification term."""
    p = _Parser(text)
    out = p.term()
    p.finish()
    return out


def parse_modal(text: str) -> ModalFormula:
    """Parse plain modal syntax ([] box, <> diamond) into {Prop, Not, And, Box}."""
    p = _Parser(text, modal=True)
    out = p.formula()
    p.finish()
    return expand_modal_sugar(out)


# ---------------------------------------------------------------------------
# Printing.  print_formula emits core syntax with minimal parentheses and
# round-trips through parse_formula.


def print_term(t: Term, tight: bool = False) -> str:
    if isinstance(t, (Const, Var)):
        return t.name
    if isinstance(t, Bang):
        return "!" + print_term(t.inner, tight=True)
    if isinstance(t, App):
        body = print_term(t.left) + "." + print_term(t.right, tight=True)
        return f"({body})" if tight else body
    raise TypeError(f"not a term: {t!r}")


def _pf(a: Formula, in_and: bool) -> str:
    if isinstance(a, Prop):
        return a.name
    if isinstance(a, Not):
        return "~" + _pf(a.body, False)
    if isinstance(a, Just):
        return print_term(a.term) + ": " + _pf(a.body, False)
    if isinstance(a, PGeq):
        return f"P>={a.threshold} " + _pf(a.body, False)
    if isinstance(a, And):
        body = _pf(a.left, True) + " & " + _pf(a.right, False)
        return body if in_and else f"({body})"
    raise TypeError(f"not a core formula: {a!r}")


def print_formula(a: Formula) -> str:
    """Deterministic core-syntax rendering; parse_formula(print_formula(a)) == a."""
    if isinstance(a, And):
        return _pf(a.left, True) + " & " + _pf(a.right, False)
    return _pf(a, False)


def _pm(a: ModalFormula, in_and: bool) -> str:
    if isinstance(a, Prop):
        return a.name
    if isinstance(a, Not):
        return "~" + _pm(a.body, False)
    if isinstance(a, Box):
        return "[]" + _pm(a.body, False)
    if isinstance(a, And):
        body = _pm(a.left, True) + " & " + _pm(a.right, False)
        return body if in_and else f"({body})"
    raise TypeError(f"not a modal formula: {a!r}")


def print_modal(a: ModalFormula) -> str:
    """Render a core modal formula ({Prop, Not, And, Box})."""
    if isinstance(a, And):
        return _pm(a.left, True) + " & " + _pm(a.right, False)
    return _pm(a, False)

"""Core syntax: justification terms, formulas, and syntactic measures.

The core formula language has exactly five constructors (Prop, Not, And,
Just, PGeq).  Everything else (implication, disjunction, the P<, P<=, P>,
P= comparisons) is surface sugar that ``expand_sugar`` rewrites away.
Probability thresholds are exact rationals (``fractions.Fraction``); no
floating point appears anywhere in the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

# ---------------------------------------------------------------------------
# Justification terms:  t ::= c | x | t.t | !t


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Bang:
    inner: "Term"


Term = Union[Const, Var, App, Bang]


def bang_power(n: int, t: Term) -> Term:
    """n-fold proof checker: bang_power(0, t) = t."""
    if n < 0:
        raise ValueError("bang power must be non-negative")
    for _ in range(n):
        t = Bang(t)
    return t


# ---------------------------------------------------------------------------
# Core formulas:  A ::= p | ~A | A & A | t: A | P>=s A


@dataclass(frozen=True)
class Prop:
    name: str


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Just:
    term: Term
    body: "Formula"


@dataclass(frozen=True)
class PGeq:
    threshold: Fraction
    body: "Formula"

    def __post_init__(self) -> None:
        t = self.threshold
        if isinstance(t, int):
            t = Fraction(t)
            object.__setattr__(self, "threshold", t)
        # Schema skeletons put affine expressions here; only concrete
        # rationals are range-checked.
        if isinstance(t, Fraction) and not 0 <= t <= 1:
            raise ValueError(f"probability threshold {t} outside [0, 1]")


Formula = Union[Prop, Not, And, Just, PGeq]


# ---------------------------------------------------------------------------
# Surface sugar, removed by expand_sugar.


@dataclass(frozen=True)
class Imp:
    left: "SurfaceFormula"
    right: "SurfaceFormula"


@dataclass(frozen=True)
class Or:
    left: "SurfaceFormula"
    right: "SurfaceFormula"


@dataclass(frozen=True)
class PCmp:
    """P<s, P<=s, P>s or P=s applied to a body; op is one of "<", "<=", ">", "="."""

    op: str
    threshold: Fraction
    body: "SurfaceFormula"

    def __post_init__(self) -> None:
        if self.op not in ("<", "<=", ">", "="):
            raise ValueError(f"unknown probability comparison {self.op!r}")
        if not 0 <= self.threshold <= 1:
            raise ValueError(f"probability threshold {self.threshold} outside [0, 1]")


SurfaceFormula = Union[Formula, Imp, Or, PCmp]


def expand_sugar(a: SurfaceFormula) -> Formula:
    """Rewrite a surface formula into the five core constructors.

    Idempotent: core formulas are fixed points.
    """
    if isinstance(a, Prop):
        return a
    if isinstance(a, Not):
        return Not(expand_sugar(a.body))
    if isinstance(a, And):
        return And(expand_sugar(a.left), expand_sugar(a.right))
    if isinstance(a, Just):
        return Just(a.term, expand_sugar(a.body))
    if isinstance(a, PGeq):
        return PGeq(a.threshold, expand_sugar(a.body))
    if isinstance(a, Imp):
        return Not(And(expand_sugar(a.left), Not(expand_sugar(a.right))))
    if isinstance(a, Or):
        return Not(And(Not(expand_sugar(a.left)), Not(expand_sugar(a.right))))
    if isinstance(a, PCmp):
        body = expand_sugar(a.body)
        s = a.threshold
        if a.op == "<":
            return Not(PGeq(s, body))
        if a.op == "<=":
            return PGeq(1 - s, Not(body))
        if a.op == ">":
            return Not(PGeq(1 - s, Not(body)))
        return And(PGeq(s, body), PGeq(1 - s, Not(body)))
    raise TypeError(f"not a formula: {a!r}")


# ---------------------------------------------------------------------------
# Syntactic measures.


def _children(a: Formula) -> tuple[Formula, ...]:
    if isinstance(a, (Not, PGeq, Just)):
        return (a.body,)
    if isinstance(a, And):
        return (a.left, a.right)
    return ()


def subformulas(a: Formula) -> list[Formula]:
    """All subformulas of ``a`` (including ``a``), post-order, first occurrence kept."""
    out: list[Formula] = []
    seen: set[Formula] = set()

    def walk(f: Formula) -> None:
        for child in _children(f):
            walk(child)
        if f not in seen:
            seen.add(f)
            out.append(f)

    walk(a)
    return out


def term_size(t: Term) -> int:
    if isinstance(t, (Const, Var)):
        return 1
    if isinstance(t, App):
        return term_size(t.left) + term_size(t.right) + 1
    return 1 + term_size(t.inner)


def size(a: Formula) -> int:
    """Symbol count of ``a``; rational numbers count as one symbol each."""
    if isinstance(a, Prop):
        return 1
    if isinstance(a, Not):
        return 1 + size(a.body)
    if isinstance(a, And):
        return 1 + size(a.left) + size(a.right)
    if isinstance(a, Just):
        return term_size(a.term) + 1 + size(a.body)
    if isinstance(a, PGeq):
        return 2 + size(a.body)
    raise TypeError(f"not a core formula: {a!r}")


def rational_size(q: Fraction) -> int:
    """Bit size of a rational in lowest terms: binary lengths of numerator and denominator."""
    return max(1, abs(q.numerator).bit_length()) + q.denominator.bit_length()


def norm(a: Formula) -> int:
    """Largest bit size of a rational occurring in ``a``; 0 if none occurs."""
    best = 0
    for f in subformulas(a):
        if isinstance(f, PGeq):
            best = max(best, rational_size(f.threshold))
    return best


def prob_depth(a: Formula) -> int:
    """Nesting depth of probability operators."""
    if isinstance(a, Prop):
        return 0
    if isinstance(a, (Not, Just)):
        return prob_depth(a.body)
    if isinstance(a, And):
        return max(prob_depth(a.left), prob_depth(a.right))
    if isinstance(a, PGeq):
        return 1 + prob_depth(a.body)
    raise TypeError(f"not a core formula: {a!r}")


# ---------------------------------------------------------------------------
# Atoms: total sign assignments over a fixed formula list.


@dataclass(frozen=True, eq=False)
class Atom:
    """A polarity for every member of a fixed formula list.

    Equality ignores the ordering of the list.
    """

    entries: tuple[tuple[Formula, bool], ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Atom):
            return NotImplemented
        return frozenset(self.entries) == frozenset(other.entries)

    def __hash__(self) -> int:
        return hash(frozenset(self.entries))

    def sign(self, f: Formula) -> bool:
        for g, s in self.entries:
            if g == f:
                return s
        raise KeyError(f"formula not covered by atom: {f!r}")

    def conjunction(self) -> Formula:
        """The atom as a formula: +-A1 & ... & +-Ak, left-associated."""
        lits = [f if s else Not(f) for f, s in self.entries]
        out = lits[0]
        for lit in lits[1:]:
            out = And(out, lit)
        return out


def atoms_of(formulas: list[Formula]) -> Iterator[Atom]:
    """Lazily yield all 2^k atoms over a duplicate-free, nonempty formula list."""
    if not formulas:
        raise ValueError("atom base must be nonempty")
    if len(set(formulas)) != len(formulas):
        raise ValueError("atom base must be duplicate-free")
    fs = tuple(formulas)
    for signs in itertools.product((True, False), repeat=len(fs)):
        yield Atom(tuple(zip(fs, signs)))

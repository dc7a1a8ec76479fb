"""Plain modal formulas and the box-to-probability translation.

Modal formulas reuse the propositional constructors from ``syntax`` and
add ``Box``; the diamond is surface sugar for ~[]~.  ``translate_d`` maps
a modal formula into the probabilistic language by replacing every box
with P>=1, turning a serial-Kripke satisfiability question into a
probabilistic one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .syntax import And, Formula, Imp, Not, Or, PGeq, Prop


@dataclass(frozen=True)
class Box:
    body: "ModalFormula"


@dataclass(frozen=True)
class Diamond:
    body: "SurfaceModalFormula"


ModalFormula = Union[Prop, Not, And, Box]
SurfaceModalFormula = Union[ModalFormula, Imp, Or, Diamond]

_ONE = Fraction(1)


def expand_modal_sugar(a: SurfaceModalFormula) -> ModalFormula:
    """Rewrite ->, | and <> away, leaving {Prop, Not, And, Box}."""
    if isinstance(a, Prop):
        return a
    if isinstance(a, Not):
        return Not(expand_modal_sugar(a.body))
    if isinstance(a, And):
        return And(expand_modal_sugar(a.left), expand_modal_sugar(a.right))
    if isinstance(a, Box):
        return Box(expand_modal_sugar(a.body))
    if isinstance(a, Imp):
        return Not(And(expand_modal_sugar(a.left), Not(expand_modal_sugar(a.right))))
    if isinstance(a, Or):
        return Not(And(Not(expand_modal_sugar(a.left)), Not(expand_modal_sugar(a.right))))
    if isinstance(a, Diamond):
        return Not(Box(Not(expand_modal_sugar(a.body))))
    raise TypeError(f"not a modal formula: {a!r}")


def modal_size(a: ModalFormula) -> int:
    """Symbol count of a modal formula."""
    if isinstance(a, Prop):
        return 1
    if isinstance(a, (Not, Box)):
        return 1 + modal_size(a.body)
    if isinstance(a, And):
        return 1 + modal_size(a.left) + modal_size(a.right)
    raise TypeError(f"not a modal formula: {a!r}")


def translate_d(a: ModalFormula) -> Formula:
    """Replace every occurrence of [] with P>=1, structure otherwise preserved."""
    if isinstance(a, Prop):
        return a
    if isinstance(a, Not):
        return Not(translate_d(a.body))
    if isinstance(a, And):
        return And(translate_d(a.left), translate_d(a.right))
    if isinstance(a, Box):
        return PGeq(_ONE, translate_d(a.body))
    raise TypeError(f"not a modal formula: {a!r}")

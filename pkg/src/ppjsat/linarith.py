"""Exact rational feasibility for linear systems with strict and non-strict relations.

Two independent back-ends are provided: a two-phase simplex with Bland's
rule (``feasible``, producing a witness) and Fourier-Motzkin elimination
(``fm_feasible``, verdict only), used to cross-check each other.  Strict
inequalities are handled in the simplex back-end by a single shared margin
variable whose maximum is tested for positivity; Fourier-Motzkin tracks
strictness of combined rows natively.  ``reduce_support`` moves a witness
of a nonnegative system to one whose support size is at most the number of
constraints, without leaving the original support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

RELATIONS = ("=", "<=", "<", ">=", ">")

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _coeff_map(coeffs: Mapping[str, Fraction | int]) -> dict[str, Fraction]:
    return {v: Fraction(c) for v, c in coeffs.items() if c != 0}


@dataclass
class LinearConstraint:
    """sum(coeffs[v] * v) RELATION bound; absent variables have coefficient 0."""

    coeffs: dict[str, Fraction]
    relation: str
    bound: Fraction

    def __post_init__(self) -> None:
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        self.coeffs = _coeff_map(self.coeffs)
        self.bound = Fraction(self.bound)

    def value(self, assignment: Mapping[str, Fraction]) -> Fraction:
        return sum((c * assignment.get(v, _ZERO) for v, c in self.coeffs.items()), _ZERO)

    def holds(self, assignment: Mapping[str, Fraction]) -> bool:
        lhs = self.value(assignment)
        if self.relation == "=":
            return lhs == self.bound
        if self.relation == "<=":
            return lhs <= self.bound
        if self.relation == "<":
            return lhs < self.bound
        if self.relation == ">=":
            return lhs >= self.bound
        return lhs > self.bound


@dataclass
class LinearSystem:
    variables: tuple[str, ...]
    constraints: list[LinearConstraint]
    nonneg: bool = True

    def __post_init__(self) -> None:
        self.variables = tuple(self.variables)
        declared = set(self.variables)
        if len(declared) != len(self.variables):
            raise ValueError("duplicate variable names")
        for con in self.constraints:
            undeclared = set(con.coeffs) - declared
            if undeclared:
                raise ValueError(f"constraint mentions undeclared variables {sorted(undeclared)}")

    def holds(self, assignment: Mapping[str, Fraction]) -> bool:
        if self.nonneg and any(assignment.get(v, _ZERO) < 0 for v in self.variables):
            return False
        return all(con.holds(assignment) for con in self.constraints)


@dataclass
class Witness:
    assignment: dict[str, Fraction]

    def satisfies(self, sys: LinearSystem) -> bool:
        return sys.holds(self.assignment)

    def support(self) -> set[str]:
        return {v for v, x in self.assignment.items() if x != 0}


# ---------------------------------------------------------------------------
# Simplex back-end.


def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tab[row][col]
    tab[row] = [x / piv for x in tab[row]]
    for i, r in enumerate(tab):
        if i != row and r[col] != 0:
            f = r[col]
            tab[i] = [a - f * b for a, b in zip(r, tab[row])]
    basis[row] = col


def _reduced_costs(tab: list[list[Fraction]], basis: list[int], cost: list[Fraction]) -> list[Fraction]:
    m = len(tab)
    red = list(cost)
    for i in range(m):
        cb = cost[basis[i]]
        if cb != 0:
            row = tab[i]
            for j in range(len(red)):
                if row[j] != 0:
                    red[j] -= cb * row[j]
    return red


def _objective_value(tab: list[list[Fraction]], basis: list[int], cost: list[Fraction]) -> Fraction:
    return sum((cost[basis[i]] * tab[i][-1] for i in range(len(tab))), _ZERO)


def _simplex_loop(
    tab: list[list[Fraction]],
    basis: list[int],
    cost: list[Fraction],
    ncols: int,
    stop_when_positive: bool = False,
) -> str:
    """Maximize cost over the current dictionary; Bland's rule throughout."""
    while True:
        if stop_when_positive and _objective_value(tab, basis, cost) > 0:
            return "optimal"
        red = _reduced_costs(tab, basis, cost)
        enter = next((j for j in range(ncols) if red[j] > 0), None)
        if enter is None:
            return "optimal"
        leave, best = None, None
        for i, row in enumerate(tab):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            return "unbounded"
        _pivot(tab, basis, leave, enter)


def _lp_max(
    rows: list[dict[int, Fraction]],
    rhs: list[Fraction],
    ncols: int,
    obj_col: Optional[int],
    stop_when_positive: bool,
) -> Optional[list[Fraction]]:
    """Maximize x[obj_col] subject to rows * x = rhs, x >= 0.

    Returns an optimal (or, with stop_when_positive, merely positive-value)
    vertex as a column-value list, or None when the equalities admit no
    nonnegative solution.  Unboundedness is a caller bug here: every use
    caps the objective column.
    """
    m = len(rows)
    width = ncols + m + 1
    tab: list[list[Fraction]] = []
    for i in range(m):
        line = [_ZERO] * width
        sign = _ONE if rhs[i] >= 0 else -_ONE
        for j, c in rows[i].items():
            line[j] = sign * c
        line[ncols + i] = _ONE
        line[-1] = sign * rhs[i]
        tab.append(line)
    basis = [ncols + i for i in range(m)]

    phase1 = [_ZERO] * width
    for j in range(ncols, ncols + m):
        phase1[j] = -_ONE
    status = _simplex_loop(tab, basis, phase1, ncols + m)
    if status != "optimal" or _objective_value(tab, basis, phase1) != 0:
        return None

    # Pivot leftover artificials out; all-zero rows are redundant.
    for i in range(m - 1, -1, -1):
        if basis[i] >= ncols:
            col = next((j for j in range(ncols) if tab[i][j] != 0), None)
            if col is None:
                del tab[i]
                del basis[i]
            else:
                _pivot(tab, basis, i, col)

    if obj_col is not None:
        cost = [_ZERO] * width
        cost[obj_col] = _ONE
        status = _simplex_loop(tab, basis, cost, ncols, stop_when_positive)
        if status == "unbounded":
            raise RuntimeError("objective unbounded; missing cap row")

    values = [_ZERO] * ncols
    for i, b in enumerate(basis):
        if b < ncols:
            values[b] = tab[i][-1]
    return values


def feasible(sys: LinearSystem) -> Optional[Witness]:
    """Exact witness for ``sys`` or None; strict relations are honored strictly.

    Strict rows are relaxed by one shared margin variable d (e < b becomes
    e + d <= b), d is capped at 1, and satisfiability of the strict system
    is equivalent to max d > 0 over the relaxation.
    """
    cols: list[str] = []
    col_of: dict[str, int] = {}
    split: dict[str, tuple[int, int]] = {}
    for v in sys.variables:
        if sys.nonneg:
            col_of[v] = len(cols)
            cols.append(v)
        else:
            split[v] = (len(cols), len(cols) + 1)
            cols.extend((v + "+", v + "-"))

    def expand(coeffs: dict[str, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for v, c in coeffs.items():
            if sys.nonneg:
                out[col_of[v]] = out.get(col_of[v], _ZERO) + c
            else:
                p, nn = split[v]
                out[p] = out.get(p, _ZERO) + c
                out[nn] = out.get(nn, _ZERO) - c
        return out

    strict = any(con.relation in ("<", ">") for con in sys.constraints)
    delta = None
    if strict:
        delta = len(cols)
        cols.append("#delta")

    rows: list[dict[int, Fraction]] = []
    rhs: list[Fraction] = []
    nslack = 0

    def add_row(coeffs: dict[int, Fraction], bound: Fraction, slack_sign: int) -> None:
        nonlocal nslack
        if slack_sign:
            coeffs = dict(coeffs)
            coeffs[len(cols) + nslack] = Fraction(slack_sign)
            nslack += 1
        rows.append(coeffs)
        rhs.append(bound)

    for con in sys.constraints:
        coeffs = expand(con.coeffs)
        if con.relation == "=":
            add_row(coeffs, con.bound, 0)
        elif con.relation == "<=":
            add_row(coeffs, con.bound, 1)
        elif con.relation == ">=":
            add_row(coeffs, con.bound, -1)
        elif con.relation == "<":
            coeffs = dict(coeffs)
            coeffs[delta] = coeffs.get(delta, _ZERO) + 1
            add_row(coeffs, con.bound, 1)
        else:  # ">"
            coeffs = dict(coeffs)
            coeffs[delta] = coeffs.get(delta, _ZERO) - 1
            add_row(coeffs, con.bound, -1)
    if strict:
        add_row({delta: _ONE}, _ONE, 1)

    ncols = len(cols) + nslack
    values = _lp_max(rows, rhs, ncols, delta, stop_when_positive=True)
    if values is None:
        return None
    if strict and values[delta] == 0:
        return None

    assignment: dict[str, Fraction] = {}
    for v in sys.variables:
        if sys.nonneg:
            assignment[v] = values[col_of[v]]
        else:
            p, nn = split[v]
            assignment[v] = values[p] - values[nn]
    witness = Witness(assignment)
    if not witness.satisfies(sys):
        raise AssertionError("simplex produced a non-solution; internal error")
    return witness


# ---------------------------------------------------------------------------
# Fourier-Motzkin back-end.  Rows are (coeffs, bound, strict) for
# sum <= bound, or sum < bound when strict.

_FMRow = tuple[tuple[tuple[str, Fraction], ...], Fraction, bool]


def _fm_normalize(coeffs: dict[str, Fraction], bound: Fraction, strict: bool) -> Optional[_FMRow]:
    items = tuple(sorted((v, c) for v, c in coeffs.items() if c != 0))
    if not items:
        return ((), bound, strict)
    scale = Fraction(math.lcm(*(c.denominator for _, c in items)))
    g = math.gcd(*(abs(int(c * scale)) for _, c in items))
    scale /= g
    return (tuple((v, c * scale) for v, c in items), bound * scale, strict)


def _fm_insert(rowmap: dict, row: _FMRow) -> bool:
    """Insert with dominance pruning; False when the row is trivially violated."""
    items, bound, strict = row
    if not items:
        return bound > 0 or (bound == 0 and not strict)
    old = rowmap.get(items)
    if old is None or (bound, not strict) < (old[0], not old[1]):
        rowmap[items] = (bound, strict)
    return True


def fm_feasible(sys: LinearSystem) -> bool:
    """Fourier-Motzkin verdict; agrees with feasible() on satisfiability."""
    rowmap: dict = {}

    def push(coeffs: dict[str, Fraction], bound: Fraction, strict: bool) -> bool:
        return _fm_insert(rowmap, _fm_normalize(coeffs, bound, strict))

    for con in sys.constraints:
        c, b = con.coeffs, con.bound
        neg = {v: -x for v, x in c.items()}
        ok = True
        if con.relation == "=":
            ok = push(c, b, False) and push(neg, -b, False)
        elif con.relation == "<=":
            ok = push(c, b, False)
        elif con.relation == "<":
            ok = push(c, b, True)
        elif con.relation == ">=":
            ok = push(neg, -b, False)
        else:
            ok = push(neg, -b, True)
        if not ok:
            return False
    if sys.nonneg:
        for v in sys.variables:
            if not push({v: -_ONE}, _ZERO, False):
                return False

    while True:
        occur: dict[str, tuple[int, int]] = {}
        for items, _ in rowmap.items():
            for v, c in items:
                p, n = occur.get(v, (0, 0))
                occur[v] = (p + 1, n) if c > 0 else (p, n + 1)
        if not occur:
            return True
        var = min(occur, key=lambda v: (occur[v][0] * occur[v][1], v))

        pos, neg, rest = [], [], {}
        for items, (bound, strict) in rowmap.items():
            coeff = next((c for v, c in items if v == var), None)
            if coeff is None:
                rest[items] = (bound, strict)
            elif coeff > 0:
                pos.append((dict(items), bound, strict))
            else:
                neg.append((dict(items), bound, strict))
        rowmap = rest
        if not pos or not neg:
            continue
        for pc, pb, ps in pos:
            a = pc.pop(var)
            for nc, nb, ns in neg:
                nc = dict(nc)
                c = -nc.pop(var)
                combo = {v: x * c for v, x in pc.items()}
                for v, x in nc.items():
                    combo[v] = combo.get(v, _ZERO) + x * a
                if not push(combo, pb * c + nb * a, ps or ns):
                    return False


# ---------------------------------------------------------------------------
# Support reduction (basic-solution argument, constructive).


def _kernel_vector(rows: list[list[Fraction]], ncols: int) -> Optional[list[Fraction]]:
    """A nonzero kernel vector of the matrix, or None if the columns are independent."""
    mat = [row[:] for row in rows]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        mat[r] = [x / mat[r][col] for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append((r, col))
        r += 1
        if r == len(mat):
            break
    pivot_cols = {c for _, c in pivots}
    free = next((c for c in range(ncols) if c not in pivot_cols), None)
    if free is None:
        return None
    z = [_ZERO] * ncols
    z[free] = _ONE
    for row, col in pivots:
        z[col] = -mat[row][free]
    return z


def reduce_support(sys: LinearSystem, w: Witness) -> Witness:
    """Shrink a witness of a nonnegative system to at most r positive entries.

    r is the number of constraints.  The result satisfies the system, its
    support is contained in the input support, and strict constraints stay
    strictly satisfied (they are frozen at half their current margin before
    the basic-solution walk).
    """
    if not sys.nonneg:
        raise ValueError("reduce_support requires a nonnegative system")
    if not w.satisfies(sys):
        raise ValueError("witness does not satisfy the system")
    x = {v: w.assignment.get(v, _ZERO) for v in sys.variables}

    # (coeffs, bound, is_equality) rows, all as sum <= bound or sum == bound.
    rows: list[tuple[dict[str, Fraction], Fraction, bool]] = []
    for con in sys.constraints:
        c, b = con.coeffs, con.bound
        neg = {v: -q for v, q in c.items()}
        if con.relation == "=":
            rows.append((c, b, True))
        elif con.relation == "<=":
            rows.append((c, b, False))
        elif con.relation == ">=":
            rows.append((neg, -b, False))
        elif con.relation == "<":
            margin = b - con.value(x)
            rows.append((c, b - margin / 2, False))
        else:
            margin = con.value(x) - b
            rows.append((neg, -(b + margin / 2), False))

    def value(coeffs: dict[str, Fraction]) -> Fraction:
        return sum((q * x[v] for v, q in coeffs.items()), _ZERO)

    while True:
        supp = [v for v in sys.variables if x[v] > 0]
        if not supp:
            break
        tight = [coeffs for coeffs, bound, eq in rows if eq or value(coeffs) == bound]
        mat = [[coeffs.get(v, _ZERO) for v in supp] for coeffs in tight]
        z = _kernel_vector(mat, len(supp))
        if z is None:
            break
        if all(q <= 0 for q in z):
            z = [-q for q in z]
        zd = dict(zip(supp, z))
        step = min(x[v] / zd[v] for v in supp if zd[v] > 0)
        for coeffs, bound, eq in rows:
            if eq:
                continue
            drift = sum((q * zd.get(v, _ZERO) for v, q in coeffs.items()), _ZERO)
            if drift < 0:
                slack = bound - value(coeffs)
                if slack > 0:
                    step = min(step, slack / -drift)
        for v in supp:
            x[v] -= step * zd[v]

    out = Witness(x)
    if not out.satisfies(sys):
        raise AssertionError("support reduction left the feasible region; internal error")
    if len(out.support()) > len(sys.constraints):
        raise AssertionError("support reduction exceeded the constraint-count bound")
    return out


def size_bound(r: int, l: int) -> int:
    """Entry-size bound 2*(r*l + r*ceil(log2 r) + 1) for basic solutions; log2 0 reads as 0."""
    if r < 0 or l < 0:
        raise ValueError("bound arguments must be natural numbers")
    if r == 0:
        return 2
    return 2 * (r * l + r * (r - 1).bit_length() + 1)


def integer_scaled(sys: LinearSystem) -> tuple[LinearSystem, int]:
    """Clear denominators constraint-wise; returns the scaled system and the
    largest binary length over its integer coefficients and bounds."""
    scaled: list[LinearConstraint] = []
    l = 1
    for con in sys.constraints:
        denoms = [c.denominator for c in con.coeffs.values()] + [con.bound.denominator]
        m = Fraction(math.lcm(*denoms))
        coeffs = {v: c * m for v, c in con.coeffs.items()}
        bound = con.bound * m
        scaled.append(LinearConstraint(coeffs, con.relation, bound))
        for q in list(coeffs.values()) + [bound]:
            l = max(l, abs(int(q)).bit_length())
    return LinearSystem(sys.variables, scaled, sys.nonneg), l

"""Exact two-phase simplex over rationals.

Dense tableau, Bland's rule throughout (lowest eligible index enters,
ratio ties leave by lowest basic index), so every run terminates without
any cycling safeguards beyond the rule itself. All arithmetic is done in
Fraction; there are no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

Constraint = tuple[Sequence[tuple[int, Fraction]], str, Fraction]


@dataclass(frozen=True)
class LpResult:
    status: str
    point: tuple[Fraction, ...] | None
    value: Fraction | None


def _pivot(tableau: list[list[Fraction]], cost: list[Fraction], row: int, col: int) -> None:
    head = tableau[row][col]
    tableau[row] = [x / head for x in tableau[row]]
    pivot_row = tableau[row]
    for r, other in enumerate(tableau):
        if r == row:
            continue
        factor = other[col]
        if factor:
            tableau[r] = [a - factor * b for a, b in zip(other, pivot_row)]
    factor = cost[col]
    if factor:
        cost[:] = [a - factor * b for a, b in zip(cost, pivot_row)]


def _iterate(
    tableau: list[list[Fraction]],
    basis: list[int],
    cost: list[Fraction],
    usable: int,
) -> str:
    """Run simplex steps until optimal or unbounded.

    ``cost`` holds reduced costs over the first ``usable`` columns; the
    sense is minimization.
    """
    while True:
        enter = next((j for j in range(usable) if cost[j] < 0), None)
        if enter is None:
            return "optimal"
        best_key: tuple[Fraction, int] | None = None
        best_row = -1
        for i, row in enumerate(tableau):
            coeff = row[enter]
            if coeff > 0:
                key = (row[-1] / coeff, basis[i])
                if best_key is None or key < best_key:
                    best_key = key
                    best_row = i
        if best_key is None:
            return "unbounded"
        _pivot(tableau, cost, best_row, enter)
        basis[best_row] = enter


def solve_lp(
    num_vars: int,
    constraints: Sequence[Constraint],
    objective: Sequence[Fraction],
    sense: str = "max",
) -> LpResult:
    """Optimize a linear objective over the given constraints.

    Constraints are (sparse terms, relation, rhs) with relation one of
    "<=", ">=", "="; every variable is additionally held nonnegative.
    """
    if sense not in ("max", "min"):
        raise ValueError(f"unknown sense {sense!r}")
    if len(objective) != num_vars:
        raise ValueError("objective length does not match variable count")
    goal = [Fraction(c) for c in objective]
    cost_vec = [-c for c in goal] if sense == "max" else list(goal)

    rows: list[list[Fraction]] = []
    relations: list[str] = []
    rhs_values: list[Fraction] = []
    for terms, relation, rhs in constraints:
        if relation not in ("<=", ">=", "="):
            raise ValueError(f"unknown relation {relation!r}")
        dense = [ZERO] * num_vars
        for col, coeff in terms:
            if not 0 <= col < num_vars:
                raise ValueError(f"column {col} out of range")
            dense[col] += Fraction(coeff)
        rhs = Fraction(rhs)
        if rhs < 0:
            dense = [-x for x in dense]
            rhs = -rhs
            relation = {"<=": ">=", ">=": "<=", "=": "="}[relation]
        rows.append(dense)
        relations.append(relation)
        rhs_values.append(rhs)

    m = len(rows)
    slack_count = sum(1 for rel in relations if rel in ("<=", ">="))
    art_start = num_vars + slack_count
    art_count = sum(1 for rel in relations if rel in (">=", "="))
    width = art_start + art_count

    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    next_slack = num_vars
    next_art = art_start
    for i in range(m):
        row = rows[i] + [ZERO] * (width - num_vars) + [rhs_values[i]]
        if relations[i] == "<=":
            row[next_slack] = ONE
            basis.append(next_slack)
            next_slack += 1
        elif relations[i] == ">=":
            row[next_slack] = -ONE
            next_slack += 1
            row[next_art] = ONE
            basis.append(next_art)
            next_art += 1
        else:
            row[next_art] = ONE
            basis.append(next_art)
            next_art += 1
        tableau.append(row)

    if art_count:
        phase1 = [ZERO] * width
        for j in range(art_start, width):
            phase1[j] = ONE
        for i in range(m):
            if basis[i] >= art_start:
                phase1 = [a - b for a, b in zip(phase1, tableau[i][:-1])]
        status = _iterate(tableau, basis, phase1, width)
        if status != "optimal":
            raise AssertionError("phase one cannot be unbounded")
        if any(tableau[i][-1] != 0 for i in range(m) if basis[i] >= art_start):
            return LpResult("infeasible", None, None)
        # Pivot leftover artificials out on any real column; a row with no
        # real coefficients left is a redundant constraint and gets dropped.
        dummy = [ZERO] * width
        drop: list[int] = []
        for i in range(m):
            if basis[i] < art_start:
                continue
            col = next((j for j in range(art_start) if tableau[i][j] != 0), None)
            if col is None:
                drop.append(i)
            else:
                _pivot(tableau, dummy, i, col)
                basis[i] = col
        for i in reversed(drop):
            del tableau[i]
            del basis[i]
        m = len(tableau)

    tableau = [row[:art_start] + [row[-1]] for row in tableau]
    full_cost = cost_vec + [ZERO] * slack_count
    reduced = list(full_cost)
    for i in range(m):
        weight = full_cost[basis[i]]
        if weight:
            reduced = [a - weight * b for a, b in zip(reduced, tableau[i][:-1])]
    status = _iterate(tableau, basis, reduced, art_start)
    if status == "unbounded":
        return LpResult("unbounded", None, None)

    point = [ZERO] * num_vars
    for i in range(m):
        if basis[i] < num_vars:
            point[basis[i]] = tableau[i][-1]
    value = sum((goal[j] * point[j] for j in range(num_vars)), ZERO)
    return LpResult("optimal", tuple(point), value)

"""Small exact linear algebra helpers over rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)


def solve_square(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve a square system exactly; None when the matrix is singular."""
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("system is not square")
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        head = aug[col][col]
        aug[col] = [x / head for x in aug[col]]
        for r in range(n):
            if r == col:
                continue
            factor = aug[r][col]
            if factor:
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _reduce(vector: list[Fraction], basis: list[tuple[int, list[Fraction]]]) -> list[Fraction]:
    for pivot_col, pivot_vec in basis:
        factor = vector[pivot_col]
        if factor:
            scale = factor / pivot_vec[pivot_col]
            vector = [a - scale * b for a, b in zip(vector, pivot_vec)]
    return vector


def greedy_independent(vectors: Sequence[Sequence[Fraction]], need: int) -> list[int] | None:
    """First indices, in order, of ``need`` linearly independent vectors.

    None when the family has smaller rank than requested.
    """
    if need == 0:
        return []
    basis: list[tuple[int, list[Fraction]]] = []
    chosen: list[int] = []
    for idx, raw in enumerate(vectors):
        vec = _reduce(list(raw), basis)
        pivot = next((k for k, x in enumerate(vec) if x != 0), None)
        if pivot is None:
            continue
        basis.append((pivot, vec))
        chosen.append(idx)
        if len(chosen) == need:
            return chosen
    return None


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    basis: list[tuple[int, list[Fraction]]] = []
    for raw in vectors:
        vec = _reduce(list(raw), basis)
        pivot = next((k for k, x in enumerate(vec) if x != 0), None)
        if pivot is not None:
            basis.append((pivot, vec))
    return len(basis)

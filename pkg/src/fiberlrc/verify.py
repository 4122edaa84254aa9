"""Independent brute-force oracles.

Everything here recomputes claims from first principles with scalar field
operations: exhaustive minimum distance over the row span, rank by plain
Gaussian elimination, and the maximal-curve point-count identity.  None of
it shares code with the vectorized encoding kernels it is used to check.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .exceptions import BudgetExceededError, InvalidParameterError
from .galois import Field
from .lrc import CodeBundle

DEFAULT_BUDGET = 1 << 24


def default_budget() -> int:
    raw = os.environ.get("LRC_DEFAULT_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise InvalidParameterError(
            f"LRC_DEFAULT_BUDGET={raw!r} is not an integer", token="bad-budget")


@dataclass(frozen=True)
class OracleBudget:
    max_codewords: int = DEFAULT_BUDGET
    max_matrix_cells: int = 1 << 28

    def __post_init__(self):
        if self.max_codewords < 1 or self.max_matrix_cells < 1:
            raise InvalidParameterError("budget must be positive", token="bad-budget")


def _span_weights(G: list[list[int]], field: Field):
    """Yield the Hamming weight of every nonzero codeword in the row span.

    Walks messages in index order, updating the running codeword by one
    row delta per mixed-radix digit change.
    """
    k = len(G)
    n = len(G[0])
    q = field.q
    inc_delta = [field.sub((v + 1) % q, v) for v in range(q)]
    cw = [0] * n
    digits = [0] * k
    wt = 0
    total = q ** k
    for _ in range(total - 1):
        r = 0
        while True:
            v = digits[r]
            d = inc_delta[v]
            row = G[r]
            for i in range(n):
                old = cw[i]
                new = field.add(old, field.mul(d, row[i]))
                if old:
                    wt -= 1
                if new:
                    wt += 1
                cw[i] = new
            if v + 1 == q:
                digits[r] = 0
                r += 1
            else:
                digits[r] = v + 1
                break
        yield wt


def brute_force_min_distance(bundle: CodeBundle,
                             budget: OracleBudget | None = None) -> int:
    """Exact minimum distance by enumerating all q^k - 1 nonzero codewords."""
    if budget is None:
        budget = OracleBudget(max_codewords=default_budget())
    code = bundle.descriptor
    q = code.field.q
    if q ** code.k > budget.max_codewords:
        raise BudgetExceededError(
            f"q^k = {q}^{code.k} exceeds budget {budget.max_codewords}")
    G = [[int(x) for x in row] for row in bundle.generator_matrix()]
    return min(_span_weights(G, code.field))


def codeword_weights(bundle: CodeBundle,
                     budget: OracleBudget | None = None) -> list[int]:
    """Weights of all nonzero codewords (for multiset agreement checks)."""
    if budget is None:
        budget = OracleBudget(max_codewords=default_budget())
    code = bundle.descriptor
    if code.field.q ** code.k > budget.max_codewords:
        raise BudgetExceededError("enumeration over budget")
    G = [[int(x) for x in row] for row in bundle.generator_matrix()]
    return list(_span_weights(G, code.field))


def matrix_rank(matrix, field: Field) -> int:
    """Rank over GF(q) by Gaussian elimination on a working copy."""
    M = [[int(x) for x in row] for row in np.asarray(matrix)]
    if not M:
        return 0
    rows, cols = len(M), len(M[0])
    rank = 0
    pivot_row = 0
    for col in range(cols):
        pivot = next((r for r in range(pivot_row, rows) if M[r][col]), None)
        if pivot is None:
            continue
        M[pivot_row], M[pivot] = M[pivot], M[pivot_row]
        inv = field.inv(M[pivot_row][col])
        M[pivot_row] = [field.mul(inv, x) for x in M[pivot_row]]
        for r in range(rows):
            if r != pivot_row and M[r][col]:
                factor = M[r][col]
                M[r] = [field.sub(x, field.mul(factor, y))
                        for x, y in zip(M[r], M[pivot_row])]
        pivot_row += 1
        rank += 1
        if pivot_row == rows:
            break
    return rank


def maximality_check(total_points: int, genus: int, q: int) -> bool:
    """total == q + 1 + 2*g*sqrt(q); q must be a square."""
    sq = math.isqrt(q)
    if sq * sq != q:
        raise InvalidParameterError(f"q={q} is not a square", token="q-not-square")
    return total_points == q + 1 + 2 * genus * sq


def check_distance_bounds(bundle: CodeBundle, exact_d: int) -> bool:
    """exact_d against the construction bound and the availability floors."""
    code = bundle.descriptor
    if exact_d < code.d_lower:
        return False
    if code.t >= 1 and exact_d < 2:
        return False
    if code.t >= 2 and exact_d < 3:
        return False
    return True

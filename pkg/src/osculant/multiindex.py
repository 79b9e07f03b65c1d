"""Multi-indices I with |I| <= m, in graded lexicographic order."""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import comb
from typing import Tuple

MultiIndex = Tuple[int, ...]


def order(index: MultiIndex) -> int:
    return sum(index)


def _of_grade(n: int, g: int) -> list[MultiIndex]:
    # lex-descending on the exponent vector: (g,0,..) comes first
    out = []
    for choice in combinations_with_replacement(range(n), g):
        e = [0] * n
        for j in choice:
            e[j] += 1
        out.append(tuple(e))
    return out


def enumerate_indices(n: int, m: int) -> list[MultiIndex]:
    """All multi-indices of length ``n`` and order at most ``m``.

    Grade first, then lexicographic (largest leading exponent first) within a
    grade, so the list for ``m`` is a prefix of the list for ``m + 1``.
    """
    if n < 1 or m < 0:
        raise ValueError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    out: list[MultiIndex] = []
    for g in range(m + 1):
        out.extend(_of_grade(n, g))
    return out


def count(n: int, m: int) -> int:
    if n < 1 or m < 0:
        raise ValueError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    return comb(n + m, n)


def add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def unit(n: int, j: int) -> MultiIndex:
    return tuple(1 if i == j else 0 for i in range(n))

# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import functools
import math
from typing import Dict, List, Sequence, Tuple

from scipy.special import comb


def surjections(t: int, m: int) -> int:
    """T(t, m): maps from a t-set onto an m-set, by inclusion-exclusion."""
    if t < 0 or m < 0:
        raise ValueError(f"surjection counts need t, m >= 0, got t={t}, m={m}")
    return sum((-1) ** j * comb(m, j, exact=True) * (m - j) ** t for j in range(m + 1))


def surjection_table(t_max: int) -> List[List[int]]:
    """T(t, m) for 0 <= m <= t <= t_max via T(t, m) = m·(T(t-1, m) + T(t-1, m-1))."""
    table = [[0] * (t_max + 1) for _ in range(t_max + 1)]
    table[0][0] = 1
    for t in range(1, t_max + 1):
        for m in range(1, t + 1):
            table[t][m] = m * (table[t - 1][m] + table[t - 1][m - 1])
    return table


def _check_nm(n: int, m: int) -> None:
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if not 1 <= m < n:
        raise ValueError(f"m must satisfy 1 <= m < n={n}, got {m}")


@functools.lru_cache(maxsize=None)
def L_formula(n: int, m: int) -> int:
    """Number of Q(m)-rankings: tight rankings of the n-1 main states with top rank 2m-1.

    t states carry odd ranks and cover the m odd values; the other n-1-t take
    one of the m even values.
    """
    _check_nm(n, m)
    return sum(comb(n - 1, t, exact=True) * surjections(t, m) * m ** (n - 1 - t) for t in range(m, n))


def L_max(n: int) -> Tuple[int, int]:
    """(m*, L(n)) with m* the smallest maximiser of L(n, m)."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    best_m, best = 1, L_formula(n, 1)
    for m in range(2, n):
        value = L_formula(n, m)
        if value > best:
            best_m, best = m, value
    return best_m, best


def L_profile(n: int) -> Dict[int, int]:
    return {m: L_formula(n, m) for m in range(1, n)}


def growth_ratio(n: int) -> float:
    """L(n)^(1/n) / n, through logarithms of the exact count."""
    _, value = L_max(n)
    return math.exp(math.log(value) / n) / n


def michel_baseline(n: int) -> Tuple[float, float]:
    """(n!)^(1/n) / n and its limit 1/e, the (n/e)^n comparison point."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return math.exp(math.lgamma(n + 1) / n) / n, 1 / math.e


def growth_report(ns: Sequence[int]) -> List[Dict[str, float]]:
    rows = []
    for n in ns:
        m, value = L_max(n)
        rows.append(
            dict(
                n=n,
                m=m,
                digits=len(str(value)),
                growth=growth_ratio(n),
                michel=michel_baseline(n)[0],
            )
        )
    return rows

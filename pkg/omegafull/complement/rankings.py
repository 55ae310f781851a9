# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import itertools
from collections import Counter
from typing import Dict, FrozenSet, Iterable, Iterator, Optional, Sequence, Tuple

LevelRanking = Tuple[Optional[int], ...]


def max_rank(n: int) -> int:
    return 2 * n - 2


def rank_choices(q: int, bound: int, final: FrozenSet[int]) -> Tuple[int, ...]:
    """Ranks 0..bound allowed for q: final states only take even ranks."""
    return tuple(r for r in range(bound + 1) if q not in final or r % 2 == 0)


def is_tight(ranking: Sequence[Optional[int]]) -> bool:
    """Empty, or the top rank is odd and every odd rank below it is used."""
    values = {r for r in ranking if r is not None}
    if not values:
        return True
    top = max(values)
    return top % 2 == 1 and all(j in values for j in range(1, top + 1, 2))


def tightness(ranking: Sequence[Optional[int]]) -> int:
    """m such that the top rank is 2m-1 (0 for the empty ranking)."""
    values = [r for r in ranking if r is not None]
    return (max(values) + 1) // 2 if values else 0


def is_level_ranking(ranking: Sequence[Optional[int]], final: Iterable[int], n: int) -> bool:
    final = frozenset(final)
    if len(ranking) != n:
        return False
    for q, r in enumerate(ranking):
        if r is None:
            continue
        if not 0 <= r <= max_rank(n) or (r % 2 == 1 and q in final):
            return False
    return True


def level_rankings(
    n: int,
    domain: Iterable[int],
    final: Iterable[int],
    tight: bool = False,
    bounds: Optional[Dict[int, int]] = None,
) -> Iterator[LevelRanking]:
    """All level rankings defined exactly on `domain`, optionally capped per state."""
    final = frozenset(final)
    domain = sorted(domain)
    bounds = bounds or {}
    choices = [rank_choices(q, bounds.get(q, max_rank(n)), final) for q in domain]
    for values in itertools.product(*choices):
        ranking = [None] * n
        for q, r in zip(domain, values):
            ranking[q] = r
        if tight and not is_tight(ranking):
            continue
        yield tuple(ranking)


def count_tight(n: int, final: Optional[Iterable[int]] = None) -> Dict[int, int]:
    """Tight level rankings over n states, any domain, counted per m (top rank 2m-1)."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    final = frozenset({n - 1} if final is None else final)
    counts: Counter = Counter()
    options = [(None,) + rank_choices(q, max_rank(n), final) for q in range(n)]
    for ranking in itertools.product(*options):
        if any(r is not None for r in ranking) and is_tight(ranking):
            counts[tightness(ranking)] += 1
    return {m: counts.get(m, 0) for m in range(1, n)}

# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, Tuple

from omegafull.analysis.counting import L_max
from omegafull.automata import (
    AcceptanceKind,
    Automaton,
    AutomatonError,
    Buchi,
    FiniteWord,
    LassoWord,
    Letter,
    buchi_to_type,
    id_letter,
)
from omegafull.full import full_automaton

logger = logging.getLogger("omegafull")


def final_state(n: int) -> int:
    """Index of s_f; the main states s_0..s_{n-2} come first."""
    return n - 1


def main_states(n: int) -> range:
    return range(n - 1)


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"FB_n needs n > 1, got {n}")


def gen_fb(n: int) -> Automaton:
    """FB_n: full Büchi automaton, I = S', F = {s_f}."""
    _check_n(n)
    return full_automaton(n, main_states(n), Buchi({final_state(n)}), name=f"FB_{n}")


def fb_as_type(n: int, kind: AcceptanceKind) -> Automaton:
    return buchi_to_type(gen_fb(n), AcceptanceKind(kind))


def to_final(states: Iterable[int], n: int) -> Letter:
    """TtoF(T) = Id(S') ∪ {q → s_f : q ∈ T}."""
    pairs = {(q, q) for q in main_states(n)} | {(q, final_state(n)) for q in states}
    return Letter(frozenset(pairs))


def from_final(states: Iterable[int], n: int) -> Letter:
    """FtoT(T) = Id(S') ∪ {s_f → q : q ∈ T}."""
    pairs = {(q, q) for q in main_states(n)} | {(final_state(n), q) for q in states}
    return Letter(frozenset(pairs))


@dataclass(frozen=True)
class QRanking:
    """Tight ranking of the main states with top rank 2m-1; undefined on s_f."""

    m: int
    ranks: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        if self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")
        if any(not 0 <= r <= 2 * self.m - 1 for r in self.ranks):
            raise ValueError(f"ranks {self.ranks} leave [0, {2 * self.m - 1}]")
        if any(j not in self.ranks for j in range(1, 2 * self.m, 2)):
            raise ValueError(f"ranks {self.ranks} miss an odd value below {2 * self.m}")

    @property
    def n(self) -> int:
        return len(self.ranks) + 1

    def __call__(self, q: int) -> int:
        return self.ranks[q]

    def rank_set(self, r: int) -> FrozenSet[int]:
        """Rank_h(r): the main states of rank r."""
        return frozenset(q for q, rank in enumerate(self.ranks) if rank == r)

    def attained(self) -> Tuple[int, ...]:
        """Attained ranks, largest first."""
        return tuple(sorted(set(self.ranks), reverse=True))

    def __str__(self):
        return "<" + ",".join(str(r) for r in self.ranks) + ">"


def q_rankings(n: int, m: int) -> Iterator[QRanking]:
    """Every Q(m)-ranking of FB_n once, lexicographic on the rank vector."""
    _check_n(n)
    if not 1 <= m < n:
        raise ValueError(f"m must satisfy 1 <= m < n={n}, got {m}")
    odd = frozenset(range(1, 2 * m, 2))
    for ranks in itertools.product(range(2 * m), repeat=n - 1):
        if odd.issubset(ranks):
            yield QRanking(m, ranks)


def count_q_rankings(n: int, m: int) -> int:
    return sum(1 for _ in q_rankings(n, m))


def c_relation_letter(f: QRanking, g: QRanking) -> Letter:
    """c(f, g) = {p → q : f(p) = g(q) odd}."""
    pairs = {(p, q) for p in range(len(f.ranks)) for q in range(len(g.ranks)) if f(p) == g(q) and f(p) % 2 == 1}
    return Letter(frozenset(pairs))


def d_word(h: QRanking, r: int, r_next: int) -> FiniteWord:
    return (to_final(h.rank_set(r), h.n), from_final(h.rank_set(r_next), h.n))


def u_ranking_word(h: QRanking) -> FiniteWord:
    """Chain of d-words over the attained ranks of h in descending order."""
    ranks = h.attained()
    word: FiniteWord = ()
    for r, r_next in zip(ranks, ranks[1:]):
        word += d_word(h, r, r_next)
    return word


def w_word(f: QRanking, g: QRanking) -> FiniteWord:
    """u_f · c(f, g) · u_g."""
    if f.m != g.m or f.n != g.n:
        raise ValueError(f"rankings {f} and {g} differ in m or size")
    return u_ranking_word(f) + (c_relation_letter(f, g),) + u_ranking_word(g)


@dataclass(frozen=True)
class HardWord:
    n: int
    m: int
    rankings: Tuple[QRanking, ...]
    segments: Tuple[FiniteWord, ...]

    @property
    def period(self) -> FiniteWord:
        return tuple(letter for segment in self.segments for letter in segment)

    def boundaries(self) -> Tuple[int, ...]:
        """Offset of segment i inside the period."""
        offsets, total = [], 0
        for segment in self.segments:
            offsets.append(total)
            total += len(segment)
        return tuple(offsets)

    def lasso(self) -> LassoWord:
        return LassoWord((), self.period)


def hard_word(n: int) -> HardWord:
    """Period w_{f_0,f_1} · w_{f_1,f_2} ··· w_{f_{L-1},f_0} over all Q(m*)-rankings."""
    _check_n(n)
    m, count = L_max(n)
    rankings = tuple(q_rankings(n, m))
    if len(rankings) != count:
        raise AutomatonError(f"enumerated {len(rankings)} Q({m})-rankings for n={n}, the formula gives {count}")
    segments = tuple(w_word(rankings[i], rankings[(i + 1) % count]) for i in range(count))
    logger.debug(f"hard word for n={n}: m={m}, {count} rankings, period length {sum(map(len, segments))}")
    return HardWord(n, m, rankings, segments)


def identity_main(n: int) -> Letter:
    return id_letter(main_states(n))

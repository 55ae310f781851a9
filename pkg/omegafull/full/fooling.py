# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, Tuple

import numpy as np

from omegafull.automata import Automaton, FiniteWord, Letter, id_letter, restrict, word_reach
from omegafull.full.construct import gen_fa, u_word, v_word

logger = logging.getLogger("omegafull")

WordBuilder = Callable[[FrozenSet[int]], FiniteWord]


def shift_letter(n: int) -> Letter:
    """a: s_{i+1} → s_i, and s_0 → s_{n-1}."""
    pairs = {(i + 1, i) for i in range(n - 1)} | {(0, n - 1)}
    return Letter(frozenset(pairs), "a")


def kill_letter(n: int) -> Letter:
    """b = Id(S ∖ {s_0})."""
    return id_letter(range(1, n), "b")


def c_letter(i: int, n: int) -> Letter:
    """c_i = Id(S ∖ {s_i})."""
    return id_letter(q for q in range(n) if q != i)


def c_substitute(i: int, n: int) -> FiniteWord:
    """a^i · b · a^(n-i), equivalent to c_i."""
    a, b = shift_letter(n), kill_letter(n)
    return (a,) * i + (b,) + (a,) * (n - i)


def substitute_ab(states: Iterable[int], n: int) -> FiniteWord:
    """w(T): Id(T) ∼ Π_{s_i ∉ T} c_i ∼ Π_{s_i ∉ T} a^i b a^(n-i), in state order."""
    inside = frozenset(states)
    word: FiniteWord = ()
    for i in range(n):
        if i not in inside:
            word += c_substitute(i, n)
    return word


def subsets(n: int) -> Tuple[FrozenSet[int], ...]:
    return tuple(frozenset(c) for size in range(n + 1) for c in itertools.combinations(range(n), size))


@dataclass(frozen=True)
class FoolingReport:
    """Membership of left(T1) · right(T2) for every pair of subsets."""

    n: int
    alphabet: str
    table: Dict[Tuple[FrozenSet[int], FrozenSet[int]], bool] = field(hash=False)

    @property
    def diagonal_rejected(self) -> bool:
        return not any(self.table[(t, t)] for t in subsets(self.n))

    @property
    def off_diagonal_accepted(self) -> bool:
        return all(accepted for (t1, t2), accepted in self.table.items() if t1 - t2)

    @property
    def exact(self) -> bool:
        """Accepted exactly when T1 ∖ T2 ≠ ∅."""
        return all(accepted == bool(t1 - t2) for (t1, t2), accepted in self.table.items())

    @property
    def verdict(self) -> bool:
        return self.diagonal_rejected and self.off_diagonal_accepted

    def fooling_set_size(self) -> int:
        return len(subsets(self.n)) if self.verdict else 0


def fooling_report(automaton: Automaton, left: WordBuilder, right: WordBuilder, alphabet: str) -> FoolingReport:
    n = automaton.n
    initial = np.zeros(n, dtype=np.int64)
    initial[sorted(automaton.initial)] = 1
    final = np.zeros(n, dtype=np.int64)
    final[sorted(automaton.acceptance.final)] = 1
    family = subsets(n)
    lefts = {t: initial @ word_reach(automaton, left(t)).astype(np.int64) for t in family}
    rights = {t: word_reach(automaton, right(t)).astype(np.int64) @ final for t in family}
    table = {(t1, t2): bool(lefts[t1] @ rights[t2] > 0) for t1 in family for t2 in family}
    report = FoolingReport(n, alphabet, table)
    logger.debug(f"fooling report n={n} over {alphabet}: verdict={report.verdict}")
    return report


@dataclass(frozen=True)
class NfwWitness:
    n: int
    fa: Automaton
    restricted: Automaton
    a: Letter
    b: Letter
    relation_report: FoolingReport
    ab_report: FoolingReport

    def word(self, states: Iterable[int]) -> FiniteWord:
        return substitute_ab(states, self.n)


def nfw_witness(n: int) -> NfwWitness:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    fa = gen_fa(n)
    a, b = shift_letter(n), kill_letter(n)
    restricted = restrict(fa, [a, b], name=f"A_{n}")
    everything = frozenset(range(n))
    relation_report = fooling_report(fa, u_word, lambda t: v_word(t, n), "relation")
    ab_report = fooling_report(
        restricted,
        lambda t: substitute_ab(t, n),
        lambda t: substitute_ab(everything - t, n),
        "ab",
    )
    return NfwWitness(n, fa, restricted, a, b, relation_report, ab_report)

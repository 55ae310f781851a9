# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import itertools
import logging
import math
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Set, Tuple

from omegafull.automata import Automaton, FiniteWord, Letter, run_search
from omegafull.logging import MetricLogger
from omegafull.nbw.properties import PropertyReport
from omegafull.ngbw.acc import StandardAcc, acc_of, gen_fb_nk, nonfinal_state

logger = logging.getLogger("omegafull")

Pair = Tuple[int, int]


@dataclass(frozen=True)
class PGCLRanking:
    """f: bijection S' → {1..n-1}; g: index (0-based) of a set F_g(q) avoiding q."""

    f: Tuple[int, ...]
    g: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(int(r) for r in self.f))
        object.__setattr__(self, "g", tuple(int(i) for i in self.g))
        if len(self.f) != len(self.g):
            raise ValueError(f"f and g differ in length: {self.f} / {self.g}")
        if sorted(self.f) != list(range(1, len(self.f) + 1)):
            raise ValueError(f"f = {self.f} is not a bijection onto 1..{len(self.f)}")

    @property
    def n(self) -> int:
        return len(self.f) + 1

    def state_of_rank(self, r: int) -> int:
        return self.f.index(r)

    def fits(self, acc: StandardAcc) -> bool:
        return len(self.f) == acc.n - 1 and all(0 <= i < acc.k and q not in acc.sets[i] for q, i in enumerate(self.g))

    def __str__(self):
        return f"<f={self.f}, g={tuple(i + 1 for i in self.g)}>"


def pgcl_enumerate(acc: StandardAcc) -> Iterator[PGCLRanking]:
    """Every PGCL-ranking once: permutations of f outside, allowed g choices inside."""
    main = range(acc.n - 1)
    choices = [acc.avoiding(q) for q in main]
    for f in itertools.permutations(range(1, acc.n)):
        for g in itertools.product(*choices):
            yield PGCLRanking(f, g)


def count_pgcl(acc: StandardAcc) -> int:
    return sum(1 for _ in pgcl_enumerate(acc))


def pgcl_lower_bound(n: int, k: int) -> int:
    """(n-1)! · ⌊k/2⌋^(n-1)."""
    return math.factorial(n - 1) * (k // 2) ** (n - 1)


def seg_letter(n: int, added: Iterable[Pair] = (), removed: Iterable[Pair] = ()) -> Letter:
    """Id(S') with `removed` taken out, then `added` put in."""
    identity = {(q, q) for q in range(n - 1)}
    return Letter(frozenset((identity - set(removed)) | set(added)))


def _choice(acc: StandardAcc, i: int, p: int, ranking: PGCLRanking) -> int:
    candidates = acc.sets[i] - acc.sets[ranking.g[p]]
    if not candidates:
        raise RuntimeError(f"F_{i + 1} is contained in F_{ranking.g[p] + 1}")
    return min(candidates)


def u_segment(ranking: PGCLRanking, acc: StandardAcc, r: int) -> FiniteWord:
    """Loops of the rank-r state through one element of each F_i, i != g(p)."""
    n, nf = acc.n, nonfinal_state(acc.n)
    p = ranking.state_of_rank(r)
    word: FiniteWord = ()
    for i in range(acc.k):
        if i == ranking.g[p]:
            continue
        s = _choice(acc, i, p, ranking)
        if s == p:
            word += (
                seg_letter(n, added=[(p, nf)], removed=[(p, p)]),
                seg_letter(n, added=[(nf, p)], removed=[(p, p)]),
            )
        else:
            word += (
                seg_letter(n, added=[(p, s), (s, nf)], removed=[(p, p), (s, s)]),
                seg_letter(n, added=[(s, p), (nf, s)], removed=[(p, p), (s, s)]),
            )
    return word


def v_segment(ranking: PGCLRanking, acc: StandardAcc, r: int) -> FiniteWord:
    """Hands the rank-r state down to the rank-(r-1) state through F_g(p)."""
    n, nf = acc.n, nonfinal_state(acc.n)
    p = ranking.state_of_rank(r)
    q = ranking.state_of_rank(r - 1)
    s = min(acc.sets[ranking.g[p]])
    return (
        seg_letter(n, added=[(p, s), (s, nf)], removed=[(s, s)]),
        seg_letter(n, added=[(s, q), (nf, s)], removed=[(s, s)]),
    )


def seg_word(ranking: PGCLRanking, acc: StandardAcc) -> FiniteWord:
    """u_{n-1} v_{n-1} u_{n-2} ... v_2 u_1."""
    if not ranking.fits(acc):
        raise ValueError(f"{ranking} is not a PGCL-ranking for {acc}")
    word: FiniteWord = ()
    for r in range(acc.n - 1, 0, -1):
        word += u_segment(ranking, acc, r)
        if r >= 2:
            word += v_segment(ranking, acc, r)
    return word


def seg_alphabet(acc: StandardAcc) -> FrozenSet[Letter]:
    letters: Set[Letter] = set()
    for ranking in pgcl_enumerate(acc):
        letters.update(seg_word(ranking, acc))
    return frozenset(letters)


def seg_alphabet_size(n: int, k: int) -> int:
    """Distinct letters used across all seg words of FB_{n,k}."""
    return len(seg_alphabet(acc_of(gen_fb_nk(n, k))))


def check_seg(automaton: Automaton, ranking: PGCLRanking, acc: StandardAcc) -> List[str]:
    word = seg_word(ranking, acc)
    main = range(acc.n - 1)
    problems = []
    for p in main:
        for q in main:
            total = run_search(automaton, p, q, word)
            if ranking.f[p] < ranking.f[q]:
                if total.count:
                    problems.append(f"{ranking}: run s{p}->s{q} against the ranking")
                continue
            if total.count != 1:
                problems.append(f"{ranking}: {total} runs s{p}->s{q}")
            if p == q:
                own = acc.sets[ranking.g[p]]
                others = [s for i, s in enumerate(acc.sets) if i != ranking.g[p]]
                found = run_search(automaton, p, q, word, must_visit=others, must_avoid=own)
            else:
                found = run_search(automaton, p, q, word, must_visit=acc.sets)
            if found.count != 1:
                problems.append(f"{ranking}: s{p}->s{q} run misses its visit pattern")
    return problems


def check_seg_properties(n: int, k: int, print_freq: int = 50) -> PropertyReport:
    """Unique-run and visit facts of every seg word of FB_{n,k}."""
    automaton = gen_fb_nk(n, k)
    acc = acc_of(automaton)
    rankings = list(pgcl_enumerate(acc))
    report = PropertyReport(f"seg properties n={n} k={k}")
    metric_logger = MetricLogger(delimiter="  ")
    for ranking in metric_logger.log_every(rankings, print_freq, header="seg"):
        problems = check_seg(automaton, ranking, acc)
        metric_logger.update(failed=bool(problems))
        report.add(problems)
    logger.info(str(report))
    return report

# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from omegafull.analysis.counting import L_max
from omegafull.automata import Automaton, FiniteWord, transition_profile
from omegafull.logging import MetricLogger
from omegafull.nbw.fb import QRanking, final_state, gen_fb, main_states, q_rankings, w_word

logger = logging.getLogger("omegafull")


@dataclass
class PropertyReport:
    """Outcome of a property sweep: how many cases ran and which failed."""

    name: str
    checked: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations

    def add(self, problems: Iterable[str]) -> None:
        self.checked += 1
        self.violations.extend(problems)

    def __str__(self):
        status = "ok" if self.holds else f"{len(self.violations)} violations"
        return f"{self.name}: {self.checked} checked, {status}"


def _expected(first: QRanking, last: QRanking) -> Tuple[np.ndarray, np.ndarray]:
    """Reach and reach-through-s_f between main states as the ranks predict."""
    f = np.asarray(first.ranks)[:, None]
    g = np.asarray(last.ranks)[None, :]
    through = f > g
    reach = through | ((f == g) & (f % 2 == 1))
    return reach, through


def check_w_word(automaton: Automaton, word: FiniteWord, first: QRanking, last: QRanking) -> List[str]:
    """Reach / reach-through-F / no-s_f-endpoint facts of a word joining `first` to `last`."""
    n = automaton.n
    sf = final_state(n)
    profile = transition_profile(automaton, word, [{sf}])
    main = list(main_states(n))
    reach, through = _expected(first, last)
    problems = []
    for p in main:
        for q in main:
            if bool(profile.reach[p, q]) != bool(reach[p, q]):
                problems.append(f"{first}->{last}: reach s{p}->s{q} is {bool(profile.reach[p, q])}")
            if profile.through(p, q) != bool(through[p, q]):
                problems.append(f"{first}->{last}: reach-through-F s{p}->s{q} is {profile.through(p, q)}")
    if profile.reach[sf].any() or profile.reach[:, sf].any():
        problems.append(f"{first}->{last}: a run starts or ends in s_f")
    return problems


def wfg_properties(
    n: int,
    m: Optional[int] = None,
    pairs: Optional[Sequence[Tuple[QRanking, QRanking]]] = None,
    print_freq: int = 50,
) -> PropertyReport:
    """Check the w_{f,g} reach facts for every ordered ranking pair (or the given ones)."""
    automaton = gen_fb(n)
    if pairs is None:
        if m is None:
            m, _ = L_max(n)
        rankings = list(q_rankings(n, m))
        pairs = list(itertools.product(rankings, repeat=2))
    report = PropertyReport(f"w-word properties n={n}")
    metric_logger = MetricLogger(delimiter="  ")
    for f, g in metric_logger.log_every(pairs, print_freq, header="wfg"):
        problems = check_w_word(automaton, w_word(f, g), f, g)
        metric_logger.update(failed=bool(problems))
        report.add(problems)
    logger.info(str(report))
    return report


def concatenation_property(n: int, chains: Iterable[Sequence[QRanking]]) -> PropertyReport:
    """For each chain f_0..f_l, the concatenated w-words join f_0 to f_l like a single w-word."""
    automaton = gen_fb(n)
    sf = final_state(n)
    main = list(main_states(n))
    report = PropertyReport(f"concatenation n={n}")
    for chain in chains:
        word: FiniteWord = ()
        for f, g in zip(chain, chain[1:]):
            word += w_word(f, g)
        profile = transition_profile(automaton, word, [{sf}])
        first, last = chain[0], chain[-1]
        problems = []
        for p in main:
            for q in main:
                if first(p) > last(q) and not profile.through(p, q):
                    problems.append(f"chain of {len(chain)}: s{p}->s{q} misses F")
                if first(p) == last(q) and first(p) % 2 == 1 and not profile.reach[p, q]:
                    problems.append(f"chain of {len(chain)}: s{p}->s{q} unreachable")
        report.add(problems)
    return report


def random_chains(n: int, count: int, max_length: int, rng: np.random.Generator) -> List[Tuple[QRanking, ...]]:
    m, _ = L_max(n)
    rankings = list(q_rankings(n, m))
    chains = []
    for _ in range(count):
        length = int(rng.integers(2, max_length + 2))
        chains.append(tuple(rankings[int(i)] for i in rng.integers(0, len(rankings), size=length)))
    return chains

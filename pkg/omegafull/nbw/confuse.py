# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple, Union

from omegafull.analysis.counting import L_max
from omegafull.automata import Automaton, LassoWord, Run, is_run_of, lasso_member, lasso_run
from omegafull.nbw.fb import HardWord, gen_fb, hard_word

logger = logging.getLogger("omegafull")


@dataclass(frozen=True)
class DirectFailure:
    """The candidate rejects a word that lies outside L(FB_n)."""

    word: LassoWord
    reason: str

    @property
    def verdict(self) -> str:
        return "refuted"


@dataclass(frozen=True)
class ConfusionWitness:
    """A word accepted by both FB_n and the candidate, with the candidate's run.

    `first` and `second` are the segment boundaries whose visited state sets
    share `state`; `cut` holds the positions where the new period starts and
    ends on the source run.
    """

    first: int
    second: int
    state: int
    cut: Tuple[int, int]
    word: LassoWord
    run: Run
    source_run: Run
    verified: bool

    @property
    def verdict(self) -> str:
        return "refuted" if self.verified else "unverified"

    @property
    def u(self):
        return self.word.prefix

    @property
    def v(self):
        return self.word.period


ConfusionOutcome = Union[ConfusionWitness, DirectFailure]


def boundary_states(run: Run, hard: HardWord) -> Dict[int, FrozenSet[int]]:
    """Q̂_i: states the loop of `run` occupies at the start of segment i."""
    period = len(hard.period)
    start, length = len(run.stem), len(run.loop)
    occupied: Dict[int, set] = {i: set() for i in range(len(hard.segments))}
    offsets = {offset: i for i, offset in enumerate(hard.boundaries())}
    for t in range(start, start + length):
        i = offsets.get(t % period)
        if i is not None:
            occupied[i].add(run.state_at(t))
    return {i: frozenset(states) for i, states in occupied.items()}


def _first_position(run: Run, offset: int, period: int, state: int) -> int:
    start = len(run.stem)
    for t in range(start, start + len(run.loop)):
        if t % period == offset and run.state_at(t) == state:
            return t
    raise RuntimeError(f"state {state} never sits at offset {offset}")


def _collision(hard: HardWord, occupied: Dict[int, FrozenSet[int]]) -> Optional[Tuple[int, int, int]]:
    """(a, b, q̂) with q̂ ∈ Q̂_a ∩ Q̂_b and f_a(q) > f_b(q) for some main state q."""
    count = len(hard.rankings)
    for i in range(count):
        for j in range(i + 1, count):
            shared = occupied[i] & occupied[j]
            if not shared:
                continue
            f, g = hard.rankings[i], hard.rankings[j]
            if any(f(q) > g(q) for q in range(len(f.ranks))):
                return i, j, min(shared)
            return j, i, min(shared)
    return None


def verify_confusion(candidate: Automaton, n: int, witness: ConfusionWitness) -> bool:
    """Re-check a witness with membership oracles only."""
    if not lasso_member(gen_fb(n), witness.word):
        return False
    if not is_run_of(candidate, witness.run, witness.word):
        return False
    if witness.run.occ != witness.source_run.occ or witness.run.inf != witness.source_run.inf:
        return False
    return candidate.acceptance.accepts_inf(witness.run.inf) and lasso_member(candidate, witness.word)


def confuse(candidate: Automaton, n: int) -> ConfusionOutcome:
    """Turn a small would-be complement of FB_n into a word it wrongly accepts.

    The candidate must read FB_n's letters (an implicit full alphabet, or a
    named one holding every letter of the hard word).
    """
    _, bound = L_max(n)
    if candidate.n >= bound:
        raise ValueError(f"candidate has {candidate.n} states, confusion needs fewer than L({n})={bound}")
    hard = hard_word(n)
    alpha = hard.lasso()
    run = lasso_run(candidate, alpha)
    if run is None:
        logger.info(f"{candidate} rejects the hard word of n={n}")
        return DirectFailure(alpha, f"the hard word of FB_{n} is outside L(FB_{n}) but rejected by the candidate")

    period = len(hard.period)
    occupied = boundary_states(run, hard)
    found = _collision(hard, occupied)
    if found is None:
        raise RuntimeError(f"no boundary collision among {len(hard.rankings)} segments on {candidate.n} states")
    a, b, state = found
    offsets = hard.boundaries()
    cycle = len(run.loop)
    t_a = _first_position(run, offsets[a], period, state)
    t_b = _first_position(run, offsets[b], period, state)
    # the new stem covers a full loop and the new loop contains one
    t1 = t_a + cycle
    t2 = t_b + (2 if t_b >= t_a else 3) * cycle
    word = LassoWord(alpha.slice(0, t1), alpha.slice(t1, t2))
    states = [run.state_at(t) for t in range(t2)]
    new_run = Run(tuple(states[:t1]), tuple(states[t1:]))
    witness = ConfusionWitness(a, b, state, (t1, t2), word, new_run, run, verified=False)
    verified = verify_confusion(candidate, n, witness)
    logger.info(f"confusion on {candidate}: segments {a}/{b} share state {state}, verified={verified}")
    return ConfusionWitness(a, b, state, (t1, t2), word, new_run, run, verified)

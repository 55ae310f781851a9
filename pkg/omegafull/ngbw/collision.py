# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import logging
from dataclasses import dataclass
from typing import FrozenSet, Tuple, Union

from omegafull.automata import (
    AcceptanceKind,
    AcceptanceTypeError,
    Automaton,
    FiniteWord,
    LassoWord,
    Run,
    is_run_of,
    lasso_member,
    lasso_run,
)
from omegafull.nbw.confuse import DirectFailure

logger = logging.getLogger("omegafull")

_BUCHI_LIKE = (AcceptanceKind.BUCHI, AcceptanceKind.GENBUCHI, AcceptanceKind.STREETT)


@dataclass(frozen=True)
class Collision:
    """w1^k0 (w1^k1 w2^k2)^ω accepted by the target and by the candidate complement."""

    state: int
    exponents: Tuple[int, int, int]
    word: LassoWord
    run: Run
    verified: bool

    @property
    def verdict(self) -> str:
        return "refuted" if self.verified else "unverified"


@dataclass(frozen=True)
class NoCollision:
    first_states: FrozenSet[int]
    second_states: FrozenSet[int]
    reason: str

    @property
    def verdict(self) -> str:
        return "no-collision"


CollisionOutcome = Union[Collision, NoCollision, DirectFailure]


def segment_states(run: Run, length: int) -> FrozenSet[int]:
    """States the loop of `run` occupies at multiples of the segment length."""
    start = len(run.stem)
    return frozenset(run.state_at(t) for t in range(start, start + len(run.loop)) if t % length == 0)


def _first_position(run: Run, length: int, state: int) -> int:
    start = len(run.stem)
    return next(t for t in range(start, start + len(run.loop)) if t % length == 0 and run.state_at(t) == state)


def collision_extract(candidate: Automaton, target: Automaton, first: FiniteWord, second: FiniteWord) -> CollisionOutcome:
    """Splice accepting runs of the candidate over w1^ω and w2^ω at a shared boundary state."""
    for automaton in (candidate, target):
        if automaton.kind not in _BUCHI_LIKE:
            raise AcceptanceTypeError(f"collisions are extracted for Büchi-like conditions, got {automaton.kind}")
    first, second = tuple(first), tuple(second)
    runs = []
    for word in (first, second):
        lasso = LassoWord((), word)
        run = lasso_run(candidate, lasso)
        if run is None:
            return DirectFailure(lasso, "the candidate rejects the ω-power of a GC-segment")
        runs.append(run)
    run1, run2 = runs
    l1, l2 = len(first), len(second)
    q1, q2 = segment_states(run1, l1), segment_states(run2, l2)
    shared = q1 & q2
    if not shared:
        return NoCollision(q1, q2, "no state is shared at segment boundaries")

    state = min(shared)
    c1, c2 = len(run1.loop), len(run2.loop)
    t_a = _first_position(run1, l1, state)
    if t_a == 0:
        t_a += c1
    t_b = _first_position(run2, l2, state)
    exponents = (t_a // l1, c1 // l1, c2 // l2)
    word = LassoWord(first * exponents[0], first * exponents[1] + second * exponents[2])
    stem = tuple(run1.state_at(t) for t in range(t_a))
    loop = tuple(run1.state_at(t) for t in range(t_a, t_a + c1)) + tuple(run2.state_at(t) for t in range(t_b, t_b + c2))
    spliced = Run(stem, loop)

    accepted = (
        is_run_of(candidate, spliced, word)
        and candidate.acceptance.accepts_inf(spliced.inf)
        and lasso_member(candidate, word)
    )
    if not accepted:
        return NoCollision(q1, q2, "the spliced run is not accepting for the candidate")
    if not lasso_member(target, word):
        return NoCollision(q1, q2, "the spliced word lies outside the target language")
    logger.info(f"collision at state {state} with exponents {exponents} on {candidate}")
    return Collision(state, exponents, word, spliced, verified=True)

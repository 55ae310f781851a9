# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

from enum import Enum
from typing import Sequence, Tuple

import numpy as np

from omegafull.automata import AcceptanceKind, AcceptanceTypeError, Automaton, transition_profile, word_reach
from omegafull.automata.automaton import LetterRef


class Equivalence(Enum):
    SIM = "sim"  # same reachability over all states
    APPROX = "approx"  # same reach and reach-through-F between non-final states
    STRICT = "strict"  # same reach and reach-through-F between all states

    def __str__(self):
        return self.value


def tracked_sets(automaton: Automaton) -> Tuple[frozenset, ...]:
    acceptance = automaton.acceptance
    if acceptance.kind in (AcceptanceKind.BUCHI, AcceptanceKind.FINAL):
        return (acceptance.final,)
    if acceptance.kind == AcceptanceKind.GENBUCHI:
        return acceptance.sets
    raise AcceptanceTypeError(f"no final-set tracking for {acceptance.kind} acceptance")


def word_equiv(
    automaton: Automaton,
    left: Sequence[LetterRef],
    right: Sequence[LetterRef],
    mode: Equivalence = Equivalence.SIM,
) -> bool:
    mode = Equivalence(mode)
    if mode == Equivalence.SIM:
        return bool(np.array_equal(word_reach(automaton, left), word_reach(automaton, right)))

    tracked = tracked_sets(automaton)
    first = transition_profile(automaton, left, tracked)
    second = transition_profile(automaton, right, tracked)
    if mode == Equivalence.STRICT:
        return first.visits == second.visits
    outside = frozenset().union(*tracked)
    main = [q for q in automaton.states if q not in outside]
    return all(first.visits[p][q] == second.visits[p][q] for p in main for q in main)

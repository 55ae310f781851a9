# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple, Union

from omegafull.automata import AcceptanceKind, AcceptanceTypeError, Automaton, Buchi, Letter
from omegafull.automata.letters import Relation
from omegafull.complement.rankings import LevelRanking, level_rankings

logger = logging.getLogger("omegafull")


@dataclass(frozen=True)
class SubsetState:
    """Before the ranking guess: the set of reachable states."""

    states: FrozenSet[int]

    def __str__(self):
        return "{" + ",".join(str(q) for q in sorted(self.states)) + "}"


@dataclass(frozen=True)
class RankingState:
    """A level ranking over the reachable states and the obligation set O."""

    ranking: LevelRanking
    obligation: FrozenSet[int]

    @property
    def domain(self) -> FrozenSet[int]:
        return frozenset(q for q, r in enumerate(self.ranking) if r is not None)

    def __str__(self):
        ranks = ",".join(f"{q}:{r}" for q, r in enumerate(self.ranking) if r is not None)
        obligation = ",".join(str(q) for q in sorted(self.obligation))
        return f"({ranks}|O={{{obligation}}})"


ComplementState = Union[SubsetState, RankingState]


class _Successors:
    """Transition function of the rank-based complement of a Büchi automaton."""

    def __init__(self, automaton: Automaton, tight: bool):
        self.n = automaton.n
        self.final = automaton.acceptance.final
        self.tight = tight

    def _guesses(self, targets: FrozenSet[int], bounds: Optional[Dict[int, int]] = None) -> Iterator[LevelRanking]:
        return level_rankings(self.n, targets, self.final, tight=self.tight, bounds=bounds)

    def __call__(self, state: ComplementState, relation: Relation) -> Iterator[ComplementState]:
        if isinstance(state, SubsetState):
            targets = frozenset(q for p, q in relation if p in state.states)
            yield SubsetState(targets)
            for ranking in self._guesses(targets):
                yield RankingState(ranking, frozenset())
            return

        ranking = state.ranking
        bounds: Dict[int, int] = {}
        for p, q in relation:
            if ranking[p] is not None:
                bounds[q] = min(bounds.get(q, ranking[p]), ranking[p])
        followers = frozenset(q for p, q in relation if p in state.obligation)
        for successor in self._guesses(frozenset(bounds), bounds):
            evens = frozenset(q for q, r in enumerate(successor) if r is not None and r % 2 == 0)
            obligation = followers & evens if state.obligation else evens
            yield RankingState(successor, obligation)


def _is_accepting(state: ComplementState) -> bool:
    return isinstance(state, RankingState) and not state.obligation


def _explore(automaton: Automaton, successors: _Successors) -> Automaton:
    letters = automaton.alphabet()
    start = SubsetState(frozenset(automaton.initial))
    index: Dict[ComplementState, int] = {start: 0}
    states: List[ComplementState] = [start]
    table: List[set] = [set() for _ in letters]
    frontier = [start]
    while frontier:
        current = frontier.pop()
        source = index[current]
        for i, letter in enumerate(letters):
            for target in successors(current, automaton.relation(letter)):
                if target not in index:
                    index[target] = len(states)
                    states.append(target)
                    frontier.append(target)
                table[i].add((source, index[target]))
    final = frozenset(i for i, state in enumerate(states) if _is_accepting(state))
    logger.info(f"rank complement of {automaton}: {len(states)} states, {len(final)} accepting")
    return Automaton(
        n=len(states),
        initial=frozenset({0}),
        acceptance=Buchi(final),
        symbols=letters,
        table=tuple(frozenset(t) for t in table),
        annotations=tuple(states),
        name=f"rank-complement({automaton.name})",
    )


def all_complement_states(n: int, final: FrozenSet[int], tight: bool) -> Tuple[ComplementState, ...]:
    """Every subset and every ranking state with O ⊆ even part of the domain."""
    states: List[ComplementState] = []
    domains = [frozenset(c) for size in range(n + 1) for c in itertools.combinations(range(n), size)]
    states.extend(SubsetState(d) for d in domains)
    for domain in domains:
        for ranking in level_rankings(n, domain, final, tight=tight):
            evens = sorted(q for q in domain if ranking[q] % 2 == 0)
            for size in range(len(evens) + 1):
                for obligation in itertools.combinations(evens, size):
                    states.append(RankingState(ranking, frozenset(obligation)))
    return tuple(states)


class _IntensionalComplement:
    """Per-letter transitions of the complement over its whole state space."""

    def __init__(self, automaton: Automaton, successors: _Successors, states: Tuple[ComplementState, ...]):
        self.automaton = automaton
        self.successors = successors
        self.states = states
        self.index = {state: i for i, state in enumerate(states)}
        self.cache: Dict[str, Relation] = {}

    def __call__(self, letter: Letter) -> Relation:
        if letter.key not in self.cache:
            relation = self.automaton.relation(letter)
            pairs = set()
            for source, state in enumerate(self.states):
                for target in self.successors(state, relation):
                    pairs.add((source, self.index[target]))
            self.cache[letter.key] = frozenset(pairs)
        return self.cache[letter.key]


def complement_rank(automaton: Automaton, tight: bool = False) -> Automaton:
    """Büchi automaton for the complement language.

    Runs start in a subset phase tracking the reachable states and may at
    any step guess a level ranking of the successors (odd ranks only off F,
    ranks at most 2n-2). From then on ranks never increase along edges and O
    follows the even-ranked paths since it was last emptied; a state is
    accepting when O is empty.

    Named alphabets give the reachable part. Implicit full and intensional
    inputs give every state of the construction, with transitions computed
    per queried letter.
    """
    if automaton.kind != AcceptanceKind.BUCHI:
        raise AcceptanceTypeError(f"rank complement needs Büchi acceptance, got {automaton.kind}")
    successors = _Successors(automaton, tight)
    if automaton.symbols is not None:
        return _explore(automaton, successors)

    states = all_complement_states(automaton.n, automaton.acceptance.final, tight)
    rule = _IntensionalComplement(automaton, successors, states)
    start = rule.index[SubsetState(frozenset(automaton.initial))]
    final = frozenset(i for i, state in enumerate(states) if _is_accepting(state))
    logger.info(f"intensional rank complement of {automaton}: {len(states)} states")
    return Automaton(
        n=len(states),
        initial=frozenset({start}),
        acceptance=Buchi(final),
        rule=rule,
        annotations=states,
        name=f"rank-complement({automaton.name})",
    )

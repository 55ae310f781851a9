# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import functools
import itertools
import logging
from typing import Dict, FrozenSet, List, Tuple

from omegafull.automata.acceptance import (
    AcceptanceKind,
    Buchi,
    Final,
    GenBuchi,
    Muller,
    Parity,
    Rabin,
    Streett,
)
from omegafull.automata.automaton import Automaton, named_automaton
from omegafull.automata.errors import AcceptanceTypeError, AutomatonError, NotDeterministicError
from omegafull.automata.letters import Letter, Relation

logger = logging.getLogger("omegafull")


def _require(automaton: Automaton, *kinds: AcceptanceKind) -> None:
    if automaton.kind not in kinds:
        expected = "/".join(str(k) for k in kinds)
        raise AcceptanceTypeError(f"expected {expected} acceptance, got {automaton.kind}")


def _subsets(states) -> List[FrozenSet[int]]:
    states = sorted(states)
    return [frozenset(c) for size in range(len(states) + 1) for c in itertools.combinations(states, size)]


def buchi_to_type(automaton: Automaton, target: AcceptanceKind) -> Automaton:
    """Same states and transitions, equivalent acceptance of kind `target`."""
    _require(automaton, AcceptanceKind.BUCHI)
    final = automaton.acceptance.final
    everything = frozenset(automaton.states)
    if target == AcceptanceKind.BUCHI:
        acceptance = automaton.acceptance
    elif target == AcceptanceKind.GENBUCHI:
        acceptance = GenBuchi((final,))
    elif target == AcceptanceKind.RABIN:
        acceptance = Rabin(((final, frozenset()),))
    elif target == AcceptanceKind.STREETT:
        acceptance = Streett(((final, everything),))
    elif target == AcceptanceKind.MULLER:
        acceptance = Muller(frozenset(t for t in _subsets(everything) if t & final))
    elif target == AcceptanceKind.PARITY:
        acceptance = Parity(tuple(0 if q in final else 1 for q in automaton.states))
    else:
        raise AcceptanceTypeError(f"no Büchi conversion to {target}")
    return automaton.with_acceptance(acceptance)


def genbuchi_to_streett(automaton: Automaton) -> Automaton:
    """One Streett pair ⟨F_i, S⟩ per generalized Büchi set."""
    _require(automaton, AcceptanceKind.GENBUCHI)
    everything = frozenset(automaton.states)
    return automaton.with_acceptance(Streett(tuple((final, everything) for final in automaton.acceptance.sets)))


def complement_det(automaton: Automaton) -> Automaton:
    """Dual acceptance over the same deterministic complete transition structure."""
    if automaton.kind in (AcceptanceKind.BUCHI, AcceptanceKind.GENBUCHI, AcceptanceKind.FINAL):
        raise AcceptanceTypeError(f"{automaton.kind} acceptance has no same-size deterministic dual")
    if not automaton.is_deterministic():
        raise NotDeterministicError(f"{automaton} is not deterministic")
    if not automaton.is_complete():
        raise NotDeterministicError(f"{automaton} is not complete; see complete_with_sink")
    acceptance = automaton.acceptance
    if acceptance.kind == AcceptanceKind.RABIN:
        dual = Streett(tuple((bad, good) for good, bad in acceptance.pairs))
    elif acceptance.kind == AcceptanceKind.STREETT:
        dual = Rabin(tuple((bad, good) for good, bad in acceptance.pairs))
    elif acceptance.kind == AcceptanceKind.PARITY:
        dual = Parity(tuple(c + 1 for c in acceptance.colors))
    else:
        dual = Muller(frozenset(t for t in _subsets(automaton.states) if t not in acceptance.family))
    return automaton.with_acceptance(dual)


def complete_with_sink(automaton: Automaton) -> Automaton:
    """Add a rejecting sink that absorbs every missing transition."""
    if automaton.symbols is None:
        raise AutomatonError("only named alphabets can be completed")
    sink = automaton.n
    table = []
    for relation in automaton.table:
        sources = {p for p, _ in relation}
        missing = {(p, sink) for p in range(automaton.n) if p not in sources}
        table.append(frozenset(relation) | missing | {(sink, sink)})
    acceptance = automaton.acceptance
    kind = acceptance.kind
    if kind == AcceptanceKind.STREETT:
        (good, bad), rest = acceptance.pairs[0], acceptance.pairs[1:]
        acceptance = Streett(((good, bad | {sink}),) + rest)
    elif kind == AcceptanceKind.PARITY:
        acceptance = Parity(acceptance.colors + (1,))
    annotations = None if automaton.annotations is None else automaton.annotations + ("sink",)
    return Automaton(
        n=automaton.n + 1,
        initial=automaton.initial,
        acceptance=acceptance,
        symbols=automaton.symbols,
        table=tuple(table),
        annotations=annotations,
        name=automaton.name,
    )


def _layered_relation(relation: Relation, n: int, sets: Tuple[FrozenSet[int], ...]) -> Relation:
    k = len(sets)
    pairs = set()
    for p, q in relation:
        for i in range(k):
            j = (i + 1) % k if p in sets[i] else i
            pairs.add((i * n + p, j * n + q))
    return frozenset(pairs)


class _DegeneralizedRule:
    def __init__(self, source: Automaton):
        self.source = source

    @functools.lru_cache(maxsize=1024)
    def __call__(self, letter: Letter) -> Relation:
        return _layered_relation(self.source.relation(letter), self.source.n, self.source.acceptance.sets)


def degeneralize(automaton: Automaton) -> Automaton:
    """Counter construction: state (q, i) is index i·n + q; the counter moves on
    when leaving a state of F_i, and F' = {(q, 0) : q ∈ F_0}."""
    _require(automaton, AcceptanceKind.GENBUCHI)
    n, sets = automaton.n, automaton.acceptance.sets
    k = len(sets)
    acceptance = Buchi(frozenset(q for q in sets[0]))
    annotations = tuple(f"{q}#{i}" for i in range(k) for q in range(n))
    initial = frozenset(automaton.initial)
    common = dict(n=n * k, initial=initial, acceptance=acceptance, annotations=annotations, name=automaton.name)
    if automaton.symbols is not None:
        table = tuple(_layered_relation(rel, n, sets) for rel in automaton.table)
        return Automaton(symbols=automaton.symbols, table=table, **common)
    return Automaton(rule=_DegeneralizedRule(automaton), **common)


def determinize_nfw(automaton: Automaton) -> Tuple[Automaton, Tuple[FrozenSet[int], ...]]:
    """Reachable subset construction of a finite-word automaton over a named alphabet."""
    _require(automaton, AcceptanceKind.FINAL)
    letters = automaton.alphabet()
    start = frozenset(automaton.initial)
    index: Dict[FrozenSet[int], int] = {start: 0}
    subsets = [start]
    edges: Dict[str, set] = {a.key: set() for a in letters}
    frontier = [start]
    while frontier:
        current = frontier.pop()
        for letter in letters:
            target = automaton.successors(current, letter)
            if target not in index:
                index[target] = len(subsets)
                subsets.append(target)
                frontier.append(target)
            edges[letter.key].add((index[current], index[target]))
    final = frozenset(i for i, s in enumerate(subsets) if s & automaton.acceptance.final)
    logger.debug(f"subset construction reached {len(subsets)} subsets")
    dfa = named_automaton(
        len(subsets),
        {0},
        Final(final),
        [(a, edges[a.key]) for a in letters],
        name=f"det({automaton.name})",
        annotations=[tuple(sorted(s)) for s in subsets],
    )
    return dfa, tuple(subsets)

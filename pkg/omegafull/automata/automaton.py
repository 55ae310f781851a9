# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from omegafull.automata.acceptance import Acceptance
from omegafull.automata.errors import AutomatonError, UnknownLetterError
from omegafull.automata.letters import Letter, Relation, relation_matrix, relation_sparse

logger = logging.getLogger("omegafull")

LetterRef = Union[Letter, str]


class AlphabetKind(Enum):
    IMPLICIT_FULL = "implicit-full"
    NAMED = "named"
    INTENSIONAL = "intensional"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Automaton:
    """A nondeterministic automaton over state indices 0..n-1.

    The alphabet takes one of three forms:
      - implicit full (`symbols` and `rule` unset): every relation over the
        states is a letter and acts as itself;
      - named (`symbols` and `table`): a finite list of letters, looked up by
        key, with `table[i]` the transition relation of `symbols[i]`;
      - intensional (`rule`): transitions computed per queried letter.
    """

    n: int
    initial: FrozenSet[int]
    acceptance: Acceptance
    symbols: Optional[Tuple[Letter, ...]] = None
    table: Optional[Tuple[Relation, ...]] = None
    rule: Optional[Callable[[Letter], Relation]] = field(default=None, compare=False)
    annotations: Optional[Tuple[Hashable, ...]] = field(default=None, compare=False)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise AutomatonError("automaton needs at least one state")
        object.__setattr__(self, "initial", frozenset(int(q) for q in self.initial))
        if not self.initial:
            raise AutomatonError("initial set must be non-empty")
        if any(not 0 <= q < self.n for q in self.initial):
            raise AutomatonError("initial state out of range")
        self.acceptance.validate(self.n)
        if (self.symbols is None) != (self.table is None):
            raise AutomatonError("named alphabet needs both symbols and table")
        if self.symbols is not None:
            if self.rule is not None:
                raise AutomatonError("an alphabet is either named or intensional")
            symbols = tuple(self.symbols)
            table = tuple(frozenset((int(p), int(q)) for p, q in rel) for rel in self.table)
            if len(symbols) != len(table):
                raise AutomatonError("symbols and table differ in length")
            index: Dict[str, int] = {}
            for i, (letter, rel) in enumerate(zip(symbols, table)):
                if letter.key in index:
                    raise AutomatonError(f"duplicate letter {letter.key}")
                index[letter.key] = i
                for p, q in rel:
                    if not (0 <= p < self.n and 0 <= q < self.n):
                        raise AutomatonError(f"letter {letter.key} leaves the {self.n} states")
            object.__setattr__(self, "symbols", symbols)
            object.__setattr__(self, "table", table)
            object.__setattr__(self, "_index", index)
        if self.annotations is not None and len(self.annotations) != self.n:
            raise AutomatonError("one annotation per state expected")

    @property
    def alphabet_kind(self) -> AlphabetKind:
        if self.symbols is not None:
            return AlphabetKind.NAMED
        if self.rule is not None:
            return AlphabetKind.INTENSIONAL
        return AlphabetKind.IMPLICIT_FULL

    @property
    def states(self) -> range:
        return range(self.n)

    @property
    def kind(self):
        return self.acceptance.kind

    def has_letter(self, letter: LetterRef) -> bool:
        if self.symbols is not None:
            key = letter.key if isinstance(letter, Letter) else letter
            return key in self._index
        if self.rule is not None:
            return isinstance(letter, Letter)
        return isinstance(letter, Letter) and letter.max_state < self.n

    def alphabet(self) -> Tuple[Letter, ...]:
        if self.symbols is None:
            raise AutomatonError(f"{self.alphabet_kind} alphabet cannot be listed")
        return self.symbols

    def resolve(self, ref: LetterRef) -> Letter:
        """Map a letter name (or letter) to the alphabet's own letter object."""
        if isinstance(ref, Letter):
            if self.symbols is None:
                return ref
            ref = ref.key
        if self.symbols is None:
            raise UnknownLetterError(f"cannot resolve name {ref!r} without a named alphabet")
        if ref not in self._index:
            raise UnknownLetterError(f"unknown letter {ref!r}")
        return self.symbols[self._index[ref]]

    def relation(self, letter: LetterRef) -> Relation:
        if self.symbols is not None:
            key = letter.key if isinstance(letter, Letter) else letter
            try:
                return self.table[self._index[key]]
            except KeyError:
                raise UnknownLetterError(f"unknown letter {key!r}") from None
        if not isinstance(letter, Letter):
            raise UnknownLetterError(f"cannot resolve name {letter!r} without a named alphabet")
        if self.rule is not None:
            return self.rule(letter)
        if letter.max_state >= self.n:
            raise AutomatonError(f"letter {letter.key} leaves the {self.n} states")
        return letter.relation

    def matrix(self, letter: LetterRef) -> np.ndarray:
        return relation_matrix(self.relation(letter), self.n)

    def sparse(self, letter: LetterRef):
        return relation_sparse(self.relation(letter), self.n)

    def successors(self, states: Iterable[int], letter: LetterRef) -> FrozenSet[int]:
        sources = frozenset(states)
        return frozenset(q for p, q in self.relation(letter) if p in sources)

    def is_deterministic(self) -> bool:
        if len(self.initial) != 1:
            return False
        if self.symbols is None:
            # every relation is a letter, S × S included
            return self.n == 1 and self.rule is None
        for rel in self.table:
            sources = [p for p, _ in rel]
            if len(sources) != len(set(sources)):
                return False
        return True

    def is_complete(self) -> bool:
        if self.symbols is None:
            return False
        return all({p for p, _ in rel} == set(self.states) for rel in self.table)

    def label(self, q: int) -> str:
        if self.annotations is None:
            return str(q)
        return str(self.annotations[q])

    def with_acceptance(self, acceptance: Acceptance) -> "Automaton":
        return replace(self, acceptance=acceptance)

    def __str__(self):
        name = self.name or "automaton"
        return f"{name}(n={self.n}, {self.kind}, {self.alphabet_kind})"


def named_automaton(
    n: int,
    initial: Iterable[int],
    acceptance: Acceptance,
    transitions: Sequence[Tuple[Letter, Iterable[Tuple[int, int]]]],
    name: str = "",
    annotations: Optional[Sequence[Hashable]] = None,
) -> Automaton:
    symbols = tuple(letter for letter, _ in transitions)
    table = tuple(frozenset(rel) for _, rel in transitions)
    return Automaton(
        n=n,
        initial=frozenset(initial),
        acceptance=acceptance,
        symbols=symbols,
        table=table,
        annotations=tuple(annotations) if annotations is not None else None,
        name=name,
    )


def restrict(automaton: Automaton, letters: Sequence[Letter], name: str = "") -> Automaton:
    """Same states, initial set and acceptance over the finite alphabet `letters`."""
    letters = tuple(letters)
    keys = [a.key for a in letters]
    if len(set(keys)) != len(keys):
        raise AutomatonError("restricted alphabet has duplicate letters")
    transitions = [(a, automaton.relation(a)) for a in letters]
    if automaton.symbols is not None:
        transitions = [(automaton.resolve(a), rel) for (a, rel) in transitions]
    logger.debug(f"restricting {automaton} to {len(letters)} letters")
    return named_automaton(
        automaton.n,
        automaton.initial,
        automaton.acceptance,
        transitions,
        name=name or automaton.name,
        annotations=automaton.annotations,
    )

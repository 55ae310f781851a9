# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

import numpy as np

from omegafull.automata.automaton import Automaton, LetterRef
from omegafull.automata.errors import AutomatonError
from omegafull.automata.words import LassoWord


@dataclass(frozen=True)
class Run:
    """A finite run (`loop` empty) or a lasso run `stem · loop^ω`.

    For a lasso run over a lasso word, state `t` of the run is read before
    letter `t`, and the state after the last loop position is `loop[0]`.
    """

    stem: Tuple[int, ...]
    loop: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "stem", tuple(int(q) for q in self.stem))
        object.__setattr__(self, "loop", tuple(int(q) for q in self.loop))

    @property
    def occ(self) -> FrozenSet[int]:
        return frozenset(self.stem) | frozenset(self.loop)

    @property
    def inf(self) -> FrozenSet[int]:
        if not self.loop:
            raise AutomatonError("finite runs have no Inf set")
        return frozenset(self.loop)

    def state_at(self, t: int) -> int:
        if t < len(self.stem):
            return self.stem[t]
        if not self.loop:
            raise IndexError(t)
        return self.loop[(t - len(self.stem)) % len(self.loop)]

    def segment(self, start: int, stop: int) -> Tuple[int, ...]:
        """States ρ(start) .. ρ(stop), both ends included."""
        return tuple(self.state_at(t) for t in range(start, stop + 1))

    def __len__(self):
        return len(self.stem) + len(self.loop)


def is_finite_run_of(automaton: Automaton, states: Sequence[int], word: Sequence[LetterRef]) -> bool:
    if len(states) != len(word) + 1:
        return False
    for t, letter in enumerate(word):
        if (states[t], states[t + 1]) not in automaton.relation(letter):
            return False
    return True


def is_run_of(automaton: Automaton, run: Run, word: LassoWord, initial: bool = True) -> bool:
    """`run` is a lasso run of `automaton` over the lasso word `word`."""
    if not run.loop:
        return False
    if initial and run.state_at(0) not in automaton.initial:
        return False
    s, c = len(run.stem), len(run.loop)
    # the loop must cover whole periods once past the prefix
    if s < len(word.prefix) or c % len(word.period) != 0:
        return False
    for t in range(s + c):
        if (run.state_at(t), run.state_at(t + 1)) not in automaton.relation(word.letter_at(t)):
            return False
    return True


@dataclass(frozen=True, eq=False)
class DeltaGraph:
    """Layered graph of all runs over a finite word: column i holds vertices ⟨p, i⟩."""

    n: int
    edges: Tuple[np.ndarray, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    def vertices(self) -> Iterable[Tuple[int, int]]:
        for i in range(self.length + 1):
            for p in range(self.n):
                yield (p, i)

    def edge_list(self) -> Iterable[Tuple[Tuple[int, int], Tuple[int, int]]]:
        for i, layer in enumerate(self.edges):
            for p, q in zip(*np.nonzero(layer)):
                yield (int(p), i), (int(q), i + 1)

    def paths_exist(self, p: int, q: int) -> bool:
        frontier = np.zeros(self.n, dtype=bool)
        frontier[p] = True
        for layer in self.edges:
            frontier = (frontier.astype(np.int64) @ layer.astype(np.int64)) > 0
        return bool(frontier[q])


def delta_graph(automaton: Automaton, word: Sequence[LetterRef]) -> DeltaGraph:
    return DeltaGraph(automaton.n, tuple(automaton.matrix(letter) for letter in word))


@dataclass(frozen=True)
class RunSearchResult:
    count: int
    witness: Optional[Tuple[int, ...]] = None

    @property
    def unique(self) -> bool:
        return self.count == 1

    def __str__(self):
        return {0: "none", 1: "unique"}.get(self.count, "many")


def run_search(
    automaton: Automaton,
    p: int,
    q: int,
    word: Sequence[LetterRef],
    must_visit: Sequence[Iterable[int]] = (),
    must_avoid: Iterable[int] = (),
) -> RunSearchResult:
    """Count (saturating at 2) the runs p → q over `word` that visit every set
    in `must_visit` and never enter `must_avoid`, endpoints included."""
    targets = [frozenset(t) for t in must_visit]
    avoid = frozenset(must_avoid)
    full = (1 << len(targets)) - 1

    def mask_of(state: int) -> int:
        return sum(1 << i for i, t in enumerate(targets) if state in t)

    if p in avoid:
        return RunSearchResult(0)
    layer: Dict[Tuple[int, int], int] = {(p, mask_of(p)): 1}
    back = []
    for letter in word:
        successors: Dict[int, list] = {}
        for src, dst in automaton.relation(letter):
            successors.setdefault(src, []).append(dst)
        nxt: Dict[Tuple[int, int], int] = {}
        pred: Dict[Tuple[int, int], Tuple[int, int]] = {}
        for (state, mask), count in sorted(layer.items()):
            for dst in sorted(successors.get(state, ())):
                if dst in avoid:
                    continue
                key = (dst, mask | mask_of(dst))
                nxt[key] = min(2, nxt.get(key, 0) + count)
                pred.setdefault(key, (state, mask))
        back.append(pred)
        layer = nxt
    count = layer.get((q, full), 0)
    if not count:
        return RunSearchResult(0)
    states = [q]
    key = (q, full)
    for pred in reversed(back):
        key = pred[key]
        states.append(key[0])
    return RunSearchResult(count, tuple(reversed(states)))

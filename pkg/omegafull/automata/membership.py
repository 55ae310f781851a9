# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import itertools
import logging
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import breadth_first_order, connected_components

from omegafull.automata.acceptance import AcceptanceKind
from omegafull.automata.automaton import Automaton, LetterRef
from omegafull.automata.errors import AcceptanceTypeError
from omegafull.automata.runs import Run
from omegafull.automata.words import LassoWord

logger = logging.getLogger("omegafull")

_NO_PREDECESSOR = -9999


def step_states(automaton: Automaton, states: np.ndarray, letter: LetterRef) -> np.ndarray:
    matrix = automaton.sparse(letter)
    return (matrix.T.astype(np.int64) @ states.astype(np.int64)) > 0


def prefix_layers(automaton: Automaton, word: Sequence[LetterRef]) -> List[np.ndarray]:
    """Boolean state vectors reachable from the initial set after each prefix of `word`."""
    current = np.zeros(automaton.n, dtype=bool)
    current[sorted(automaton.initial)] = True
    layers = [current]
    for letter in word:
        current = step_states(automaton, current, letter)
        layers.append(current)
    return layers


def word_member(automaton: Automaton, word: Sequence[LetterRef]) -> bool:
    """Finite-word membership for automata with `Final` acceptance."""
    if automaton.kind != AcceptanceKind.FINAL:
        raise AcceptanceTypeError(f"finite-word membership needs final-state acceptance, got {automaton.kind}")
    reached = prefix_layers(automaton, word)[-1]
    return any(reached[q] for q in automaton.acceptance.final)


def _bfs_path(graph: sparse.csr_matrix, source: int, target: int) -> List[int]:
    """Shortest path source → target (both included) inside `graph`."""
    if source == target:
        return [source]
    _, predecessors = breadth_first_order(graph, source, directed=True, return_predecessors=True)
    if predecessors[target] == _NO_PREDECESSOR:
        raise RuntimeError("target unreachable inside a strongly connected component")
    path = [target]
    while path[-1] != source:
        path.append(int(predecessors[path[-1]]))
    return path[::-1]


class LassoProduct:
    """The automaton synchronised with the period positions of a lasso word.

    Node `i * n + q` stands for state q reading period letter i; an extra
    source node connects to the position-0 copies of the states reachable
    after the prefix.
    """

    def __init__(self, automaton: Automaton, word: LassoWord):
        if automaton.kind == AcceptanceKind.FINAL:
            raise AcceptanceTypeError("lasso membership needs an ω-acceptance condition")
        self.automaton = automaton
        self.word = word
        n, period = automaton.n, len(word.period)
        self.n = n
        self.size = n * period
        self.layers = prefix_layers(automaton, word.prefix)

        rows, cols = [], []
        for i, letter in enumerate(word.period):
            j = (i + 1) % period
            for p, q in automaton.relation(letter):
                rows.append(i * n + p)
                cols.append(j * n + q)
        source = self.size
        for q in np.flatnonzero(self.layers[-1]):
            rows.append(source)
            cols.append(int(q))
        data = np.ones(len(rows), dtype=np.int8)
        shape = (self.size + 1, self.size + 1)
        self.graph = sparse.csr_matrix(
            (data, (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))), shape=shape
        )
        self.graph.sum_duplicates()

        order, self.predecessors = breadth_first_order(self.graph, source, directed=True, return_predecessors=True)
        self.reachable = np.zeros(self.size + 1, dtype=bool)
        self.reachable[order] = True
        self.reachable[source] = False
        _, self.labels = connected_components(self.graph, directed=True, connection="strong")
        self.self_loops = self.graph.diagonal() > 0

    def _nontrivial(self, nodes: np.ndarray) -> bool:
        return len(nodes) > 1 or bool(self.self_loops[nodes[0]])

    def components(self) -> Iterator[np.ndarray]:
        """Reachable non-trivial strongly connected components, as node arrays."""
        candidates = np.flatnonzero(self.reachable)
        if not len(candidates):
            return
        labels = self.labels[candidates]
        for label in np.unique(labels):
            nodes = candidates[labels == label]
            if self._nontrivial(nodes):
                yield nodes

    def _sub_components(self, nodes: np.ndarray) -> Iterator[np.ndarray]:
        sub = self.graph[nodes][:, nodes]
        _, labels = connected_components(sub, directed=True, connection="strong")
        loops = sub.diagonal() > 0
        for label in np.unique(labels):
            local = np.flatnonzero(labels == label)
            if len(local) > 1 or loops[local[0]]:
                yield nodes[local]

    def projection(self, nodes: np.ndarray) -> FrozenSet[int]:
        return frozenset(int(q) for q in np.unique(nodes % self.n))

    def inf_components(self) -> Iterator[Tuple[FrozenSet[int], np.ndarray]]:
        """Every achievable Inf set with a strongly connected node set realising it."""
        seen = set()
        for nodes in self.components():
            states = sorted(self.projection(nodes))
            for size in range(1, len(states) + 1):
                for subset in itertools.combinations(states, size):
                    inf = frozenset(subset)
                    if inf in seen:
                        continue
                    inside = nodes[np.isin(nodes % self.n, subset)]
                    for component in self._sub_components(inside):
                        if self.projection(component) == inf:
                            seen.add(inf)
                            yield inf, component
                            break

    def accepting_component(self) -> Optional[Tuple[np.ndarray, List[int]]]:
        """Node set of an accepting cycle family plus the nodes a cycle must pass."""
        acceptance = self.automaton.acceptance
        if acceptance.kind == AcceptanceKind.BUCHI:
            for nodes in self.components():
                hits = [int(x) for x in nodes if x % self.n in acceptance.final]
                if hits:
                    return nodes, hits[:1]
            return None
        if acceptance.kind == AcceptanceKind.GENBUCHI:
            for nodes in self.components():
                targets = []
                for final in acceptance.sets:
                    hits = [int(x) for x in nodes if x % self.n in final]
                    if not hits:
                        break
                    targets.append(hits[0])
                else:
                    return nodes, sorted(set(targets))
            return None
        for inf, nodes in self.inf_components():
            if acceptance.accepts_inf(inf):
                targets = [int(nodes[np.flatnonzero(nodes % self.n == q)[0]]) for q in sorted(inf)]
                return nodes, targets
        return None

    def accepts(self) -> bool:
        return self.accepting_component() is not None

    def _prefix_states(self, last: int) -> List[int]:
        """A run over the prefix ending in `last`."""
        states = [last]
        for t in range(len(self.word.prefix) - 1, -1, -1):
            relation = self.automaton.relation(self.word.prefix[t])
            target = states[-1]
            states.append(min(int(p) for p in np.flatnonzero(self.layers[t]) if (p, target) in relation))
        return states[::-1]

    def run_through(self, nodes: np.ndarray, targets: Sequence[int]) -> Run:
        """Lasso run whose loop walks through every target node inside `nodes`."""
        local = {int(x): i for i, x in enumerate(nodes)}
        sub = self.graph[nodes][:, nodes].tocsr()
        order = [local[t] for t in targets]
        if len(order) == 1:
            start = order[0]
            successor = int(sub.indices[sub.indptr[start]])
            walk = [start] + _bfs_path(sub, successor, start)
        else:
            walk = [order[0]]
            for target in order[1:] + order[:1]:
                walk += _bfs_path(sub, walk[-1], target)[1:]
        loop_nodes = [int(nodes[i]) for i in walk[:-1]]

        entry = loop_nodes[0]
        path = [entry]
        while path[-1] != self.size:
            path.append(int(self.predecessors[path[-1]]))
        product_stem = path[::-1][1:-1]
        first = product_stem[0] if product_stem else entry
        prefix = self._prefix_states(first % self.n)
        stem = prefix[:-1] + [x % self.n for x in product_stem]
        return Run(tuple(stem), tuple(x % self.n for x in loop_nodes))


def lasso_member(automaton: Automaton, word: LassoWord) -> bool:
    """u·v^ω ∈ L(automaton) for every ω-acceptance kind."""
    return LassoProduct(automaton, word).accepts()


def lasso_run(automaton: Automaton, word: LassoWord) -> Optional[Run]:
    """An accepting lasso run over `word`, or None when the word is rejected."""
    product = LassoProduct(automaton, word)
    found = product.accepting_component()
    if found is None:
        return None
    nodes, targets = found
    run = product.run_through(nodes, targets)
    logger.debug(f"accepting run with stem {len(run.stem)} and loop {len(run.loop)} on {automaton}")
    return run


def inf_sets(automaton: Automaton, word: LassoWord) -> FrozenSet[FrozenSet[int]]:
    """All Inf sets of runs over `word` (desk scale: exponential in the state count)."""
    return frozenset(inf for inf, _ in LassoProduct(automaton, word).inf_components())


def unroll_lasso(word: LassoWord, k: int) -> LassoWord:
    """u·v^k · v^ω: the same ω-word with k periods moved into the prefix."""
    if k < 0:
        raise ValueError(f"unrolling count must be non-negative, got {k}")
    return word.unroll(k)

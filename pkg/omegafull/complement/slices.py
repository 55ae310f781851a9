# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from omegafull.automata import (
    AcceptanceKind,
    AcceptanceTypeError,
    Automaton,
    DimensionMismatchError,
    LassoWord,
    lasso_run,
    prefix_layers,
)
from omegafull.automata.membership import step_states
from omegafull.complement.construction import RankingState
from omegafull.complement.rankings import LevelRanking, max_rank

logger = logging.getLogger("omegafull")


@dataclass(frozen=True)
class CRankingSlice:
    """Level rankings at positions 0..|u|+|v| of a lasso; the last level closes the period."""

    levels: Tuple[LevelRanking, ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(tuple(level) for level in self.levels))


@dataclass(frozen=True)
class RankingVerdict:
    violations: Tuple[str, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid


def periodic_unrolling(automaton: Automaton, word: LassoWord) -> LassoWord:
    """Same ω-word, unrolled so that the reachable sets repeat with the period."""
    period = len(word.period)
    boundaries: List[bytes] = []
    layers = prefix_layers(automaton, word.prefix)
    current = layers[-1]
    while True:
        key = current.tobytes()
        if key in boundaries:
            first = boundaries.index(key)
            repeats = len(boundaries) - first
            return LassoWord(word.prefix + word.period * first, word.period * repeats)
        boundaries.append(key)
        for t in range(period):
            current = step_states(automaton, current, word.period[t])


def validate_c_ranking(automaton: Automaton, word: LassoWord, ranking_slice: CRankingSlice) -> RankingVerdict:
    """Conditions (i) defined iff reachable, (ii) odd only off F, (iii) no
    increase along edges, and no cycle of the period graph through even ranks."""
    if automaton.kind != AcceptanceKind.BUCHI:
        raise AcceptanceTypeError("C-rankings are defined for Büchi automata")
    n = automaton.n
    start, length = len(word.prefix), len(word.prefix) + len(word.period)
    levels = ranking_slice.levels
    if len(levels) != length + 1 or any(len(level) != n for level in levels):
        raise DimensionMismatchError(f"slice has {len(levels)} levels, lasso needs {length + 1} over {n} states")
    letters = word.prefix + word.period
    final = automaton.acceptance.final
    top = max_rank(n)
    violations = []

    if levels[length] != levels[start]:
        violations.append("period: last level differs from the first period level")
    for t, (level, reach) in enumerate(zip(levels, prefix_layers(automaton, letters))):
        for q in range(n):
            rank = level[q]
            if (rank is not None) != bool(reach[q]):
                violations.append(f"(i) level {t}: state {q} defined={rank is not None} reachable={bool(reach[q])}")
            if rank is None:
                continue
            if not 0 <= rank <= top:
                violations.append(f"range: level {t}: state {q} has rank {rank}")
            if rank % 2 == 1 and q in final:
                violations.append(f"(ii) level {t}: final state {q} has odd rank {rank}")
    for t, letter in enumerate(letters):
        for p, q in sorted(automaton.relation(letter)):
            before, after = levels[t][p], levels[t + 1][q]
            if before is not None and after is not None and after > before:
                violations.append(f"(iii) edge {p}@{t} -> {q}@{t + 1} raises rank {before} -> {after}")

    # even-ranked vertices of the period graph must not close a cycle
    period = len(word.period)
    rows, cols = [], []
    for i in range(period):
        t = start + i
        j = (i + 1) % period
        for p, q in automaton.relation(letters[t]):
            before, after = levels[t][p], levels[start + j][q]
            if before is not None and after is not None and before % 2 == 0 and after % 2 == 0:
                rows.append(i * n + p)
                cols.append(j * n + q)
    if rows:
        graph = sparse.csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(period * n, period * n))
        _, labels = connected_components(graph, directed=True, connection="strong")
        loops = graph.diagonal() > 0
        sizes = np.bincount(labels)
        cyclic = np.flatnonzero((sizes[labels] > 1) | loops)
        if len(cyclic):
            node = int(cyclic[0])
            violations.append(f"oddness: even-ranked cycle through state {node % n} at period position {node // n}")
    return RankingVerdict(tuple(violations))


def extract_slice(
    automaton: Automaton, complement: Automaton, word: LassoWord
) -> Optional[Tuple[LassoWord, CRankingSlice]]:
    """Read an odd C-ranking off an accepting complement run over `word`.

    Returns the lasso unrolled along the run together with its slice, or
    None when the complement rejects `word`. Levels before the ranking guess
    rank every reachable state 2n-2.
    """
    run = lasso_run(complement, word)
    if run is None:
        return None
    s, c = len(run.stem), len(run.loop)
    unrolled = LassoWord(word.slice(0, s), word.slice(s, s + c))
    layers = prefix_layers(automaton, unrolled.prefix + unrolled.period)
    top = max_rank(automaton.n)
    levels = []
    for t, reach in enumerate(layers):
        state = complement.annotations[run.state_at(t)]
        if isinstance(state, RankingState):
            levels.append(state.ranking)
        else:
            levels.append(tuple(top if reach[q] else None for q in range(automaton.n)))
    logger.debug(f"extracted a {len(levels)}-level slice from the complement run")
    return unrolled, CRankingSlice(tuple(levels))

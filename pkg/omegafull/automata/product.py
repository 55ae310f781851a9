# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import logging

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import breadth_first_order, connected_components

from omegafull.automata.acceptance import AcceptanceKind
from omegafull.automata.automaton import Automaton
from omegafull.automata.errors import AcceptanceTypeError, AlphabetMismatchError

logger = logging.getLogger("omegafull")


def _indicator(states, n: int) -> np.ndarray:
    vector = np.zeros(n, dtype=np.int8)
    vector[sorted(states)] = 1
    return vector


def intersect_empty(first: Automaton, second: Automaton) -> bool:
    """L(first) ∩ L(second) = ∅ for two Büchi automata over the same named alphabet.

    Product states (p, q, phase) live at phase·|A||B| + p·|B| + q. Phase 0
    waits for a final state of `first`, phase 1 for one of `second`; the
    accepting nodes are the phase-1 nodes whose `second` component is final.
    """
    for automaton in (first, second):
        if automaton.kind != AcceptanceKind.BUCHI:
            raise AcceptanceTypeError(f"intersection emptiness needs Büchi automata, got {automaton.kind}")
    keys_a = {a.key for a in first.alphabet()}
    keys_b = {a.key for a in second.alphabet()}
    if keys_a != keys_b:
        raise AlphabetMismatchError(f"alphabets differ on {sorted(keys_a ^ keys_b)}")

    na, nb = first.n, second.n
    size = na * nb
    step = sparse.csr_matrix((size, size), dtype=np.int64)
    for letter in first.alphabet():
        step = step + sparse.kron(first.sparse(letter), second.sparse(letter), format="csr").astype(np.int64)
    # parallel letters collapse to a single edge
    step = (step > 0).astype(np.int8)

    final_a = sparse.diags(np.kron(_indicator(first.acceptance.final, na), np.ones(nb, dtype=np.int8)))
    final_b = sparse.diags(np.kron(np.ones(na, dtype=np.int8), _indicator(second.acceptance.final, nb)))
    keep_a = sparse.identity(size, dtype=np.int8) - final_a
    keep_b = sparse.identity(size, dtype=np.int8) - final_b
    graph = sparse.bmat(
        [[keep_a @ step, final_a @ step], [final_b @ step, keep_b @ step]],
        format="csr",
    )
    graph.eliminate_zeros()

    source = 2 * size
    starts = [p * nb + q for p in sorted(first.initial) for q in sorted(second.initial)]
    edges = sparse.csr_matrix(
        (np.ones(len(starts), dtype=np.int8), (np.full(len(starts), 0), np.asarray(starts))), shape=(1, 2 * size)
    )
    graph = sparse.vstack([graph, edges], format="csr")
    graph = sparse.hstack([graph, sparse.csr_matrix((2 * size + 1, 1), dtype=np.int8)], format="csr")

    order = breadth_first_order(graph, source, directed=True, return_predecessors=False)
    reachable = np.zeros(2 * size + 1, dtype=bool)
    reachable[order] = True
    _, labels = connected_components(graph, directed=True, connection="strong")
    loops = graph.diagonal() > 0
    accepting = np.zeros(2 * size + 1, dtype=bool)
    accepting[size : 2 * size] = np.kron(np.ones(na, dtype=bool), _indicator(second.acceptance.final, nb).astype(bool))

    for node in np.flatnonzero(reachable & accepting):
        members = np.flatnonzero(labels == labels[node])
        if len(members) > 1 or loops[node]:
            logger.debug(f"non-empty intersection through product node {node}")
            return False
    return True

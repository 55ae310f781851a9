# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import numpy as np
import pytest

from omegafull.automata import Automaton, Buchi, Letter, named_automaton

A = Letter.of([(0, 1), (1, 1)], "a")
B = Letter.of([(0, 0), (1, 0)], "b")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0)


@pytest.fixture
def letters():
    return A, B


@pytest.fixture
def inf_a() -> Automaton:
    """Deterministic Büchi automaton for 'infinitely many a'."""
    return named_automaton(2, {0}, Buchi({1}), [(A, A.relation), (B, B.relation)], name="inf-a")


@pytest.fixture
def fin_a() -> Automaton:
    """Nondeterministic Büchi automaton for 'finitely many a'."""
    a = frozenset({(0, 0)})
    b = frozenset({(0, 0), (0, 1), (1, 1)})
    return named_automaton(2, {0}, Buchi({1}), [(A, a), (B, b)], name="fin-a")


@pytest.fixture
def random_letter(rng):
    def make(n: int, density: float = 0.4) -> Letter:
        return Letter(frozenset((p, q) for p in range(n) for q in range(n) if rng.random() < density))

    return make


@pytest.fixture
def random_buchi(rng):
    """Random Büchi automata over a given named alphabet."""

    def make(n: int, alphabet, density: float = 0.4) -> Automaton:
        initial = {int(rng.integers(0, n))}
        final = {q for q in range(n) if rng.random() < 0.5}
        transitions = [
            (letter, {(p, q) for p in range(n) for q in range(n) if rng.random() < density}) for letter in alphabet
        ]
        return named_automaton(n, initial, Buchi(final), transitions)

    return make


@pytest.fixture
def seeded_buchi(rng):
    """Random Büchi automata that accept `period`^ω along a random closed run."""

    def make(n: int, period, density: float = 0.3) -> Automaton:
        alphabet = sorted(set(period), key=lambda a: a.key)
        run = [int(q) for q in rng.integers(0, n, size=len(period))]
        edges = {letter: {(p, q) for p in range(n) for q in range(n) if rng.random() < density} for letter in alphabet}
        for t, letter in enumerate(period):
            edges[letter].add((run[t], run[(t + 1) % len(period)]))
        final = {run[int(rng.integers(0, len(period)))]} | {q for q in range(n) if rng.random() < 0.3}
        return named_automaton(n, {run[0]}, Buchi(final), [(letter, edges[letter]) for letter in alphabet])

    return make

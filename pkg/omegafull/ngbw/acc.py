# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Tuple

from scipy.special import comb

from omegafull.automata import Automaton, GenBuchi
from omegafull.full import full_automaton

logger = logging.getLogger("omegafull")


def nonfinal_state(n: int) -> int:
    """Index of s_nf, the one state kept out of every F_i."""
    return n - 1


def half(n: int) -> int:
    return (n - 1) // 2


def max_k(n: int) -> int:
    return int(comb(n - 1, half(n), exact=True))


def check_nk(n: int, k: int) -> None:
    if n < 2:
        raise ValueError(f"FB_n,k needs n > 1, got {n}")
    if not 1 < k <= max_k(n):
        raise ValueError(f"k must satisfy 1 < k <= C({n - 1}, {half(n)}) = {max_k(n)}, got {k}")


@dataclass(frozen=True)
class StandardAcc:
    """Balanced family F_1..F_k of equal-size subsets of S' = S ∖ {s_nf}."""

    n: int
    sets: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))

    @property
    def k(self) -> int:
        return len(self.sets)

    def chi(self, q: int) -> int:
        """Number of sets containing q."""
        return sum(1 for s in self.sets if q in s)

    def avoiding(self, q: int) -> Tuple[int, ...]:
        """Indices i with q ∉ F_i."""
        return tuple(i for i, s in enumerate(self.sets) if q not in s)

    def violations(self) -> List[str]:
        problems = []
        size = half(self.n)
        main = range(self.n - 1)
        if not 1 < self.k <= max_k(self.n):
            problems.append(f"k={self.k} outside (1, {max_k(self.n)}]")
        if len(set(self.sets)) != self.k:
            problems.append("sets are not pairwise distinct")
        for i, s in enumerate(self.sets):
            if len(s) != size:
                problems.append(f"|F_{i + 1}| = {len(s)} != {size}")
            if not s <= frozenset(main):
                problems.append(f"F_{i + 1} leaves S'")
        for q in main:
            if len(self.avoiding(q)) < self.k // 2:
                problems.append(f"state {q} is avoided by {len(self.avoiding(q))} < {self.k // 2} sets")
        return problems

    def is_valid(self) -> bool:
        return not self.violations()

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(str(q) for q in sorted(s)) + "}" for s in self.sets) + "}"


def _colex(n: int) -> List[FrozenSet[int]]:
    subsets = itertools.combinations(range(n - 1), half(n))
    return [frozenset(s) for s in sorted(subsets, key=lambda s: tuple(reversed(s)))]


def _repair_step(n: int, sets: List[FrozenSet[int]]) -> bool:
    """Apply the lexicographically least swap; False once χ is balanced."""
    family = set(sets)
    chi = [sum(1 for s in sets if q in s) for q in range(n - 1)]
    unbalanced = False
    for p in range(n - 1):
        for q in range(n - 1):
            if chi[p] - chi[q] <= 1:
                continue
            unbalanced = True
            for i, s in enumerate(sets):
                if p in s and q not in s:
                    replacement = (s - {p}) | {q}
                    if replacement not in family:
                        sets[i] = replacement
                        return True
    if unbalanced:
        raise RuntimeError(f"no admissible swap for unbalanced family {sets}")
    return False


def build_acc(n: int, k: int) -> StandardAcc:
    check_nk(n, k)
    sets = _colex(n)[:k]
    steps = 0
    while _repair_step(n, sets):
        steps += 1
    acc = StandardAcc(n, tuple(sets))
    logger.debug(f"acceptance for n={n}, k={k}: {acc} after {steps} swaps")
    return acc


def gen_fb_nk(n: int, k: int) -> Automaton:
    """FB_{n,k}: full generalized Büchi automaton, every state initial."""
    acc = build_acc(n, k)
    return full_automaton(n, range(n), GenBuchi(acc.sets), name=f"FB_{n},{k}")


def acc_of(automaton: Automaton) -> StandardAcc:
    return StandardAcc(automaton.n, automaton.acceptance.sets)

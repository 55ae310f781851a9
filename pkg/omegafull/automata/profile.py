# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

import numpy as np

from omegafull.automata.automaton import Automaton, LetterRef
from omegafull.automata.errors import DimensionMismatchError

StateSet = FrozenSet[int]
Marks = FrozenSet[int]


def _maximal(masks: Iterable[int]) -> Marks:
    """Antichain of the maximal bitmasks."""
    masks = set(masks)
    return frozenset(m for m in masks if not any(m != other and m & other == m for other in masks))


def _state_mask(q: int, tracked: Sequence[StateSet]) -> int:
    mask = 0
    for i, states in enumerate(tracked):
        if q in states:
            mask |= 1 << i
    return mask


@dataclass(frozen=True, eq=False)
class Profile:
    """Transition-monoid element of a finite word.

    `visits[p][q]` holds the maximal visit masks over the `tracked` sets of
    the runs p → q (endpoints included); it is empty iff `reach[p, q]` is
    false. `avoiding[p, q]` tells whether some run p → q stays outside
    `avoid`.
    """

    n: int
    tracked: Tuple[StateSet, ...]
    avoid: Optional[StateSet]
    reach: np.ndarray
    visits: Tuple[Tuple[Marks, ...], ...]
    avoiding: Optional[np.ndarray] = None

    def marks(self, p: int, q: int) -> Marks:
        return self.visits[p][q]

    def through(self, p: int, q: int, index: int = 0) -> bool:
        """Some run p → q visits tracked set `index`."""
        return any(m >> index & 1 for m in self.visits[p][q])

    def through_all(self, p: int, q: int, indices: Optional[Iterable[int]] = None) -> bool:
        wanted = 0
        for i in range(len(self.tracked)) if indices is None else indices:
            wanted |= 1 << i
        return any(m & wanted == wanted for m in self.visits[p][q])

    def column(self, j: int) -> StateSet:
        return frozenset(int(i) for i in np.flatnonzero(self.reach[:, j]))

    def _check_compatible(self, other: "Profile") -> None:
        if self.n != other.n:
            raise DimensionMismatchError(f"profiles over {self.n} and {other.n} states")
        if self.tracked != other.tracked or self.avoid != other.avoid:
            raise DimensionMismatchError("profiles track different sets")

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        if (self.n, self.tracked, self.avoid, self.visits) != (other.n, other.tracked, other.avoid, other.visits):
            return False
        if not np.array_equal(self.reach, other.reach):
            return False
        if self.avoiding is None or other.avoiding is None:
            return self.avoiding is None and other.avoiding is None
        return np.array_equal(self.avoiding, other.avoiding)

    def __hash__(self):
        return hash((self.n, self.tracked, self.avoid, self.visits))

    def __matmul__(self, other: "Profile") -> "Profile":
        return compose(self, other)


def _normalize(n: int, tracked: Sequence[Iterable[int]], avoid: Optional[Iterable[int]]):
    tracked = tuple(frozenset(t) for t in tracked)
    avoid = frozenset(avoid) if avoid is not None else None
    return tracked, avoid


def identity_profile(n: int, tracked: Sequence[Iterable[int]] = (), avoid: Optional[Iterable[int]] = None) -> Profile:
    """Profile of the empty word: identity with empty marks."""
    tracked, avoid = _normalize(n, tracked, avoid)
    reach = np.eye(n, dtype=bool)
    visits = tuple(tuple(frozenset({0}) if p == q else frozenset() for q in range(n)) for p in range(n))
    avoiding = None
    if avoid is not None:
        avoiding = np.diag([q not in avoid for q in range(n)]).astype(bool)
    return Profile(n, tracked, avoid, reach, visits, avoiding)


def letter_profile(
    automaton: Automaton,
    letter: LetterRef,
    tracked: Sequence[Iterable[int]] = (),
    avoid: Optional[Iterable[int]] = None,
) -> Profile:
    n = automaton.n
    tracked, avoid = _normalize(n, tracked, avoid)
    reach = automaton.matrix(letter).copy()
    masks = [_state_mask(q, tracked) for q in range(n)]
    visits = tuple(
        tuple(frozenset({masks[p] | masks[q]}) if reach[p, q] else frozenset() for q in range(n)) for p in range(n)
    )
    avoiding = None
    if avoid is not None:
        outside = np.array([q not in avoid for q in range(n)], dtype=bool)
        avoiding = reach & outside[:, None] & outside[None, :]
    return Profile(n, tracked, avoid, reach, visits, avoiding)


def _bool_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


def compose(first: Profile, second: Profile) -> Profile:
    """Profile of the concatenation: compose(P_u, P_v) = P_{u·v}."""
    first._check_compatible(second)
    n = first.n
    reach = _bool_product(first.reach, second.reach)
    rows = []
    for p in range(n):
        row = []
        for q in range(n):
            if not reach[p, q]:
                row.append(frozenset())
                continue
            candidates = set()
            for r in np.flatnonzero(first.reach[p] & second.reach[:, q]):
                for m1 in first.visits[p][r]:
                    for m2 in second.visits[r][q]:
                        candidates.add(m1 | m2)
            row.append(_maximal(candidates))
        rows.append(tuple(row))
    avoiding = None
    if first.avoiding is not None:
        avoiding = _bool_product(first.avoiding, second.avoiding)
    return Profile(n, first.tracked, first.avoid, reach, tuple(rows), avoiding)


def transition_profile(
    automaton: Automaton,
    word: Sequence[LetterRef],
    tracked: Sequence[Iterable[int]] = (),
    avoid: Optional[Iterable[int]] = None,
) -> Profile:
    profile = identity_profile(automaton.n, tracked, avoid)
    for letter in word:
        profile = compose(profile, letter_profile(automaton, letter, tracked, avoid))
    return profile


def word_reach(automaton: Automaton, word: Sequence[LetterRef]) -> np.ndarray:
    """Plain reachability matrix of a word, without visit bookkeeping."""
    reach = np.eye(automaton.n, dtype=bool)
    for letter in word:
        reach = _bool_product(reach, automaton.matrix(letter))
    return reach

# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Iterator, Sequence, Tuple

from omegafull.automata.letters import Letter

FiniteWord = Tuple[Letter, ...]


def power(word: Sequence[Letter], k: int) -> FiniteWord:
    return tuple(word) * k


@dataclass(frozen=True)
class LassoWord:
    """The ultimately periodic word prefix · period^ω."""

    prefix: FiniteWord
    period: FiniteWord

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("lasso period must be non-empty")

    def letter_at(self, t: int) -> Letter:
        if t < len(self.prefix):
            return self.prefix[t]
        return self.period[(t - len(self.prefix)) % len(self.period)]

    def slice(self, start: int, stop: int) -> FiniteWord:
        return tuple(self.letter_at(t) for t in range(start, stop))

    def unroll(self, repeats: int = 1, stretch: int = 1) -> "LassoWord":
        """Same ω-word with `repeats` periods moved into the prefix and the period repeated `stretch` times."""
        return LassoWord(self.prefix + self.period * repeats, self.period * stretch)

    def letters(self) -> FrozenSet[Letter]:
        return frozenset(self.prefix) | frozenset(self.period)

    def __len__(self):
        return len(self.prefix) + len(self.period)

    def __str__(self):
        prefix = " ".join(str(a) for a in self.prefix)
        period = " ".join(str(a) for a in self.period)
        return f"{prefix} ({period})^w" if prefix else f"({period})^w"


def enumerate_lassos(letters: Sequence[Letter], bound: int) -> Iterator[LassoWord]:
    """All lassos u·v^ω over `letters` with |u| + |v| <= bound, shortest first."""
    letters = tuple(letters)
    for total in range(1, bound + 1):
        for word in itertools.product(letters, repeat=total):
            for split in range(total):
                yield LassoWord(word[:split], word[split:])

# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, FrozenSet, Iterable, Tuple, Union

from omegafull.automata.errors import AcceptanceTypeError, AutomatonError

StateSet = FrozenSet[int]
PairList = Tuple[Tuple[StateSet, StateSet], ...]


class AcceptanceKind(Enum):
    BUCHI = "buchi"
    GENBUCHI = "genbuchi"
    RABIN = "rabin"
    STREETT = "streett"
    MULLER = "muller"
    PARITY = "parity"
    FINAL = "final"

    def __str__(self):
        return self.value


def _states(values: Iterable[int]) -> StateSet:
    return frozenset(int(q) for q in values)


def _pairs(pairs) -> PairList:
    return tuple((_states(good), _states(bad)) for good, bad in pairs)


def _check_range(states: Iterable[int], n: int, what: str) -> None:
    for q in states:
        if not 0 <= q < n:
            raise AutomatonError(f"{what} mentions state {q} outside of {n} states")


@dataclass(frozen=True)
class Buchi:
    final: StateSet
    kind: ClassVar[AcceptanceKind] = AcceptanceKind.BUCHI

    def __post_init__(self):
        object.__setattr__(self, "final", _states(self.final))

    def accepts_inf(self, inf: StateSet) -> bool:
        return bool(inf & self.final)

    def validate(self, n: int) -> None:
        _check_range(self.final, n, "Büchi set")


@dataclass(frozen=True)
class GenBuchi:
    sets: Tuple[StateSet, ...]
    kind: ClassVar[AcceptanceKind] = AcceptanceKind.GENBUCHI

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(_states(s) for s in self.sets))

    @property
    def index(self) -> int:
        return len(self.sets)

    def accepts_inf(self, inf: StateSet) -> bool:
        return all(inf & f for f in self.sets)

    def validate(self, n: int) -> None:
        if not self.sets:
            raise AutomatonError("generalized Büchi condition needs at least one set")
        for f in self.sets:
            _check_range(f, n, "generalized Büchi set")


@dataclass(frozen=True)
class Rabin:
    """Accept iff some pair ⟨G, B⟩ has Inf ∩ G ≠ ∅ and Inf ∩ B = ∅."""

    pairs: PairList
    kind: ClassVar[AcceptanceKind] = AcceptanceKind.RABIN

    def __post_init__(self):
        object.__setattr__(self, "pairs", _pairs(self.pairs))

    def accepts_inf(self, inf: StateSet) -> bool:
        return any(inf & good and not inf & bad for good, bad in self.pairs)

    def validate(self, n: int) -> None:
        if not self.pairs:
            raise AutomatonError("Rabin condition needs at least one pair")
        for good, bad in self.pairs:
            _check_range(good | bad, n, "Rabin pair")


@dataclass(frozen=True)
class Streett:
    """Accept iff every pair ⟨G, B⟩ has Inf ∩ B ≠ ∅ ⇒ Inf ∩ G ≠ ∅."""

    pairs: PairList
    kind: ClassVar[AcceptanceKind] = AcceptanceKind.STREETT

    def __post_init__(self):
        object.__setattr__(self, "pairs", _pairs(self.pairs))

    def accepts_inf(self, inf: StateSet) -> bool:
        return all(inf & good or not inf & bad for good, bad in self.pairs)

    def validate(self, n: int) -> None:
        if not self.pairs:
            raise AutomatonError("Streett condition needs at least one pair")
        for good, bad in self.pairs:
            _check_range(good | bad, n, "Streett pair")


@dataclass(frozen=True)
class Muller:
    family: FrozenSet[StateSet]
    kind: ClassVar[AcceptanceKind] = AcceptanceKind.MULLER

    def __post_init__(self):
        object.__setattr__(self, "family", frozenset(_states(s) for s in self.family))

    def accepts_inf(self, inf: StateSet) -> bool:
        return frozenset(inf) in self.family

    def validate(self, n: int) -> None:
        for member in self.family:
            _check_range(member, n, "Muller set")


@dataclass(frozen=True)
class Parity:
    """Min-even parity: colors[q] is the priority of state q."""

    colors: Tuple[int, ...]
    kind: ClassVar[AcceptanceKind] = AcceptanceKind.PARITY

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))

    def accepts_inf(self, inf: StateSet) -> bool:
        return bool(inf) and min(self.colors[q] for q in inf) % 2 == 0

    def validate(self, n: int) -> None:
        if len(self.colors) != n:
            raise AutomatonError(f"parity condition colors {len(self.colors)} states, automaton has {n}")
        if any(c < 0 for c in self.colors):
            raise AutomatonError("parity colors must be non-negative")


@dataclass(frozen=True)
class Final:
    """Finite-word acceptance: a run ends in `final`."""

    final: StateSet
    kind: ClassVar[AcceptanceKind] = AcceptanceKind.FINAL

    def __post_init__(self):
        object.__setattr__(self, "final", _states(self.final))

    def accepts_inf(self, inf: StateSet) -> bool:
        raise AcceptanceTypeError("finite-word acceptance has no infinite runs")

    def validate(self, n: int) -> None:
        _check_range(self.final, n, "final set")


Acceptance = Union[Buchi, GenBuchi, Rabin, Streett, Muller, Parity, Final]
OMEGA_KINDS = frozenset(kind for kind in AcceptanceKind if kind != AcceptanceKind.FINAL)

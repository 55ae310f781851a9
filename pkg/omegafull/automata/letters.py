# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import functools
import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Tuple

import numpy as np
from scipy import sparse

from omegafull.automata.errors import AutomatonError

Pair = Tuple[int, int]
Relation = FrozenSet[Pair]

_KEY_PAIR = re.compile(r"(\d+)>(\d+)")


def canonical_key(relation: Iterable[Pair]) -> str:
    """`{0>1,2>2}`: the name of an unnamed letter."""
    return "{" + ",".join(f"{p}>{q}" for p, q in sorted(relation)) + "}"


def parse_key(key: str) -> Relation:
    if not (key.startswith("{") and key.endswith("}")):
        raise AutomatonError(f"not a relation key: {key!r}")
    body = key[1:-1].strip()
    if not body:
        return frozenset()
    pairs = []
    for part in body.split(","):
        match = _KEY_PAIR.fullmatch(part.strip())
        if match is None:
            raise AutomatonError(f"not a relation key: {key!r}")
        pairs.append((int(match.group(1)), int(match.group(2))))
    return frozenset(pairs)


@dataclass(frozen=True, eq=False)
class Letter:
    """A binary relation over state indices, optionally named.

    Letters compare by `key`: the name when there is one, else the canonical
    relation string.
    """

    relation: Relation
    name: Optional[str] = None

    def __post_init__(self):
        relation = frozenset((int(p), int(q)) for p, q in self.relation)
        if any(p < 0 or q < 0 for p, q in relation):
            raise AutomatonError("negative state index in letter")
        object.__setattr__(self, "relation", relation)

    @classmethod
    def of(cls, pairs: Iterable[Pair], name: Optional[str] = None) -> "Letter":
        return cls(frozenset(pairs), name)

    @property
    def key(self) -> str:
        return self.name if self.name is not None else canonical_key(self.relation)

    @property
    def max_state(self) -> int:
        return max((max(p, q) for p, q in self.relation), default=-1)

    def matrix(self, n: int) -> np.ndarray:
        return relation_matrix(self.relation, n)

    def __eq__(self, other):
        if not isinstance(other, Letter):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __str__(self):
        return self.key

    def __repr__(self):
        return f"Letter({self.key})"


def id_letter(states: Iterable[int], name: Optional[str] = None) -> Letter:
    return Letter(frozenset((q, q) for q in states), name)


def letter_from_key(key: str) -> Letter:
    """Inverse of `Letter.key` for unnamed letters; names stay names."""
    if key.startswith("{"):
        return Letter(parse_key(key))
    raise AutomatonError(f"{key!r} names a letter; resolve it against an alphabet")


@functools.lru_cache(maxsize=4096)
def relation_matrix(relation: Relation, n: int) -> np.ndarray:
    matrix = np.zeros((n, n), dtype=bool)
    for p, q in relation:
        if p >= n or q >= n:
            raise AutomatonError(f"pair {p}>{q} outside of {n} states")
        matrix[p, q] = True
    matrix.setflags(write=False)
    return matrix


@functools.lru_cache(maxsize=4096)
def relation_sparse(relation: Relation, n: int) -> sparse.csr_matrix:
    if relation:
        rows, cols = zip(*sorted(relation))
    else:
        rows, cols = (), ()
    if any(p >= n for p in rows) or any(q >= n for q in cols):
        raise AutomatonError(f"relation leaves the {n} states")
    data = np.ones(len(rows), dtype=np.int8)
    return sparse.csr_matrix((data, (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))), shape=(n, n))

# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from omegafull.automata import (
    AcceptanceKind,
    AcceptanceTypeError,
    Automaton,
    FiniteWord,
    LassoWord,
    genbuchi_to_streett,
    lasso_member,
)
from omegafull.logging import MetricLogger
from omegafull.ngbw.pgcl import PGCLRanking

logger = logging.getLogger("omegafull")

Exponents = Tuple[int, int, int]

APPLIES_TO = ("NGBW complement", "NSW complement", "DRW acceptor")


def is_gc_segment(automaton: Automaton, word: FiniteWord) -> bool:
    """w^ω is rejected."""
    if not word:
        raise ValueError("a GC-segment must be non-empty")
    return not lasso_member(automaton, LassoWord((), tuple(word)))


def exponent_triples(grid: Sequence[int]) -> List[Exponents]:
    grid = sorted(set(int(k) for k in grid))
    if not grid or grid[0] < 1:
        raise ValueError(f"exponent grid must hold positive integers, got {grid}")
    return list(itertools.product(grid, repeat=3))


def conflict_word(first: FiniteWord, second: FiniteWord, exponents: Exponents) -> LassoWord:
    """w1^k0 (w1^k1 w2^k2)^ω."""
    k0, k1, k2 = exponents
    return LassoWord(tuple(first) * k0, tuple(first) * k1 + tuple(second) * k2)


@dataclass
class ConflictEvidence:
    accepted: List[Exponents] = field(default_factory=list)
    rejected: List[Exponents] = field(default_factory=list)

    @property
    def conflicts(self) -> bool:
        return bool(self.accepted) and not self.rejected

    def __bool__(self):
        return self.conflicts


def conflict_check(
    automaton: Automaton,
    first: FiniteWord,
    second: FiniteWord,
    exponent_grid: Sequence[int] = (1, 2),
) -> ConflictEvidence:
    """Membership of w1^k0 (w1^k1 w2^k2)^ω for every exponent triple of the grid."""
    if tuple(first) == tuple(second):
        raise ValueError("conflict is defined for two distinct segments")
    evidence = ConflictEvidence()
    for exponents in exponent_triples(exponent_grid):
        if lasso_member(automaton, conflict_word(first, second, exponents)):
            evidence.accepted.append(exponents)
        else:
            evidence.rejected.append(exponents)
    return evidence


def conflict_case(first: PGCLRanking, second: PGCLRanking) -> str:
    """"I" when the bijections differ, "II" when only g does."""
    if first == second:
        raise ValueError(f"{first} is not distinct from {second}")
    return "I" if first.f != second.f else "II"


def streett_of(automaton: Automaton) -> Automaton:
    """Streett view of FB_{n,k}, one pair per final set."""
    return genbuchi_to_streett(automaton)


@dataclass
class ConflictCertificate:
    """Grid-checked conflict set; `bound` is set only when every check passed."""

    automaton: str
    size: int
    gc_segments: List[bool]
    failing_pairs: List[Tuple[int, int, Exponents]]
    exponent_grid: Tuple[int, ...]
    bound: Optional[int] = None
    checked_pairs: int = 0

    @property
    def verdict(self) -> str:
        return "grid-checked" if self.bound is not None else "rejected"

    @property
    def applies_to(self) -> Tuple[str, ...]:
        return APPLIES_TO if self.bound is not None else ()

    @property
    def non_segments(self) -> List[int]:
        return [i for i, ok in enumerate(self.gc_segments) if not ok]


def certify_conflict_set(
    automaton: Automaton,
    words: Sequence[FiniteWord],
    exponent_grid: Sequence[int] = (1, 2),
    print_freq: int = 200,
    stop_early: bool = True,
    triples: Optional[Sequence[Exponents]] = None,
) -> ConflictCertificate:
    """GC-segment check on each word and conflict check on each ordered pair.

    `triples` replaces the exponent grid by an explicit list of (k0, k1, k2).
    """
    if automaton.kind not in (AcceptanceKind.GENBUCHI, AcceptanceKind.BUCHI, AcceptanceKind.STREETT):
        raise AcceptanceTypeError(f"conflict sets are certified for Büchi-like conditions, got {automaton.kind}")
    words = [tuple(w) for w in words]
    if not words:
        raise ValueError("conflict set must be non-empty")
    if len(set(words)) != len(words):
        raise ValueError("conflict set holds duplicate segments")
    if triples is None:
        triples = exponent_triples(exponent_grid)
    elif any(k < 1 for t in triples for k in t):
        raise ValueError(f"exponents must be positive, got {list(triples)}")
    triples = [tuple(int(k) for k in t) for t in triples]
    grid = tuple(sorted({k for t in triples for k in t}))

    metric_logger = MetricLogger(delimiter="  ")
    gc = []
    for word in metric_logger.log_every(words, print_freq, header="gc-segments"):
        ok = is_gc_segment(automaton, word)
        metric_logger.update(gc=ok)
        gc.append(ok)
    certificate = ConflictCertificate(automaton.name or str(automaton), len(words), gc, [], grid)
    if not all(gc) and stop_early:
        logger.warning(f"{len(certificate.non_segments)} words are not GC-segments")
        return certificate

    pairs = [(i, j) for i in range(len(words)) for j in range(len(words)) if i != j]
    for i, j in metric_logger.log_every(pairs, print_freq, header="conflicts"):
        failed = next(
            (e for e in triples if not lasso_member(automaton, conflict_word(words[i], words[j], e))),
            None,
        )
        certificate.checked_pairs += 1
        metric_logger.update(conflict=failed is None)
        if failed is not None:
            certificate.failing_pairs.append((i, j, failed))
            if stop_early:
                break
    if all(gc) and not certificate.failing_pairs:
        certificate.bound = len(words)
    logger.info(f"conflict set of {len(words)} words on {certificate.automaton}: {certificate.verdict}")
    return certificate

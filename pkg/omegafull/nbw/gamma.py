# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import logging
from typing import Dict, FrozenSet, List, Sequence, Tuple

from omegafull.automata import Automaton, FiniteWord, Letter, restrict, word_reach
from omegafull.nbw.fb import final_state, gen_fb, hard_word, main_states

logger = logging.getLogger("omegafull")

GAMMA_NAMES = ("rotate", "clear0", "swap01", "copy01", "0toF", "Fto0", "clearF")


def gamma(n: int) -> Dict[str, Letter]:
    """The seven letters driving FB_n's register configuration.

    With two main states or more, swap01 and copy01 act on s_0 and s_1; for
    n = 2 there is a single main state and both degenerate to Id(S').
    """
    if n < 2:
        raise ValueError(f"FB_n needs n > 1, got {n}")
    f = final_state(n)
    main = list(main_states(n))
    identity_main = {(q, q) for q in main}
    everything = identity_main | {(f, f)}
    rotate = {(i + 1, i) for i in range(n - 2)} | {(0, n - 2), (f, f)}
    if n >= 3:
        swap01 = (identity_main - {(0, 0), (1, 1)}) | {(0, 1), (1, 0)}
        copy01 = identity_main | {(1, 0)}
    else:
        swap01 = set(identity_main)
        copy01 = set(identity_main)
    relations = {
        "rotate": rotate,
        "clear0": everything - {(0, 0)},
        "swap01": swap01,
        "copy01": copy01,
        "0toF": everything | {(0, f)},
        "Fto0": everything | {(f, 0)},
        "clearF": identity_main,
    }
    return {name: Letter(frozenset(relations[name]), name) for name in GAMMA_NAMES}


def gamma_alphabet_size(n: int) -> int:
    return len(gamma(n))


def gen_b(n: int) -> Automaton:
    """B_n = FB_n restricted to the seven letters."""
    return restrict(gen_fb(n), list(gamma(n).values()), name=f"B_{n}")


class Gadgets:
    """Γ-words acting on the registers r_j(w) = {i : s_i →w s_j}."""

    def __init__(self, n: int):
        self.n = n
        self.registers = n - 1
        self.letters = gamma(n)

    def rotate(self, times: int) -> FiniteWord:
        return (self.letters["rotate"],) * (times % self.registers)

    def _adjacent_swap(self, i: int) -> FiniteWord:
        """Exchange r_i and r_{i+1}."""
        return self.rotate(i) + (self.letters["swap01"],) + self.rotate(self.registers - i)

    def swap(self, i: int, j: int) -> FiniteWord:
        if i == j:
            return ()
        i, j = min(i, j), max(i, j)
        word: FiniteWord = ()
        for k in range(i, j):
            word += self._adjacent_swap(k)
        for k in range(j - 2, i - 1, -1):
            word += self._adjacent_swap(k)
        return word

    def copy(self, i: int, j: int) -> FiniteWord:
        """r_i ← r_i ∪ r_j."""
        if i == j:
            return ()
        copy01 = (self.letters["copy01"],)
        if (i, j) == (1, 0):
            return self.swap(0, 1) + copy01 + self.swap(0, 1)
        if j == 0:
            # the generic composite would write into r_1 here
            return self.swap(1, i) + self.copy(1, 0) + self.swap(1, i)
        outer, inner = self.swap(0, i), self.swap(1, j)
        return outer + inner + copy01 + inner + outer

    def clear(self, i: int) -> FiniteWord:
        return self.swap(0, i) + (self.letters["clear0"],) + self.swap(0, i)

    def to_final(self, states: Sequence[int]) -> FiniteWord:
        """Γ-word strictly equivalent to TtoF(T)."""
        word: FiniteWord = (self.letters["clearF"],)
        for i in sorted(states):
            word += self.rotate(i) + (self.letters["0toF"],) + self.rotate(self.registers - i)
        return word

    def from_final(self, states: Sequence[int]) -> FiniteWord:
        """Γ-word strictly equivalent to FtoT(T)."""
        word: FiniteWord = ()
        for i in sorted(states):
            word += self.rotate(i) + (self.letters["Fto0"],) + self.rotate(self.registers - i)
        return word + (self.letters["clearF"],)

    def block(self, relation: FrozenSet[Tuple[int, int]]) -> FiniteWord:
        """Γ-word reproducing a relation over the main states made of disjoint blocks A_t × B_t."""
        sources: Dict[int, FrozenSet[int]] = {
            j: frozenset(i for i, k in relation if k == j) for j in range(self.registers)
        }
        groups: Dict[FrozenSet[int], List[int]] = {}
        for j in range(self.registers):
            if sources[j]:
                groups.setdefault(sources[j], []).append(j)
        blocks = sorted(groups.items(), key=lambda item: min(item[0]))
        used = [s for s, _ in blocks]
        for a in range(len(used)):
            for b in range(a + 1, len(used)):
                if used[a] & used[b]:
                    raise ValueError(f"relation {sorted(relation)} is not a disjoint block relation")

        word: FiniteWord = ()
        anchors = []
        for source, _ in blocks:
            anchor = min(source)
            anchors.append(anchor)
            for i in sorted(source - {anchor}):
                word += self.copy(anchor, i)
        for i in range(self.registers):
            if i not in anchors:
                word += self.clear(i)

        content = {anchor: t for t, anchor in enumerate(anchors)}
        for t, (_, targets) in enumerate(blocks):
            destination = min(targets)
            position = next(pos for pos, label in content.items() if label == t)
            if position != destination:
                word += self.swap(position, destination)
                moved = content.pop(destination, None)
                content.pop(position)
                content[destination] = t
                if moved is not None:
                    content[position] = moved
        for t, (_, targets) in enumerate(blocks):
            destination = min(targets)
            for j in targets:
                if j != destination:
                    word += self.copy(j, destination)
        return word + (self.letters["clearF"],)


def substitute_gamma(letter: Letter, n: int) -> FiniteWord:
    """Γ-word strictly equivalent to an Id / TtoF / FtoT / c(f, g) letter of FB_n."""
    f = final_state(n)
    relation = letter.relation
    identity_main = frozenset((q, q) for q in main_states(n))
    gadgets = Gadgets(n)
    if not any(f in pair for pair in relation):
        return gadgets.block(relation)
    if identity_main <= relation:
        extra = relation - identity_main
        if all(q == f and p != f for p, q in extra):
            return gadgets.to_final(sorted(p for p, _ in extra))
        if all(p == f and q != f for p, q in extra):
            return gadgets.from_final(sorted(q for _, q in extra))
    raise ValueError(f"letter {letter} has no Γ substitute")


def translate_gamma(word: Sequence[Letter], n: int) -> FiniteWord:
    cache: Dict[str, FiniteWord] = {}
    result: FiniteWord = ()
    for letter in word:
        if letter.key not in cache:
            cache[letter.key] = substitute_gamma(letter, n)
        result += cache[letter.key]
    return result


def hard_word_gamma(n: int) -> FiniteWord:
    return translate_gamma(hard_word(n).period, n)


def registers(automaton: Automaton, word: Sequence[Letter], n: int) -> Tuple[FrozenSet[int], ...]:
    """r_j(w) for every main state s_j."""
    reach = word_reach(automaton, word)
    main = list(main_states(n))
    return tuple(frozenset(i for i in main if reach[i, j]) for j in main)

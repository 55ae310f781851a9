# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

from typing import Iterable

from omegafull.automata import Acceptance, Automaton, Final, FiniteWord, id_letter


def full_automaton(n: int, initial: Iterable[int], acceptance: Acceptance, name: str = "") -> Automaton:
    """Automaton whose letters are all relations over its n states, each acting as itself."""
    if n < 1:
        raise ValueError(f"a full automaton needs n >= 1, got {n}")
    initial = frozenset(initial)
    if not initial:
        raise ValueError("a full automaton needs a non-empty initial set")
    return Automaton(n=n, initial=initial, acceptance=acceptance, name=name or f"full{n}")


def gen_fa(n: int) -> Automaton:
    """FA_n: every state initial and final, finite-word acceptance."""
    states = frozenset(range(n))
    return full_automaton(n, states, Final(states), name=f"FA_{n}")


def u_word(states: Iterable[int]) -> FiniteWord:
    return (id_letter(sorted(states)),)


def v_word(states: Iterable[int], n: int) -> FiniteWord:
    inside = frozenset(states)
    return (id_letter(q for q in range(n) if q not in inside),)

# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from omegafull.automata import Automaton, AutomatonError, FiniteWord, LassoWord, Letter, named_automaton
from omegafull.automata.automaton import LetterRef
from omegafull.full.construct import full_automaton


@dataclass(frozen=True)
class LetterMap:
    """Source letter ↦ the relation letter of its transition relation."""

    sources: Tuple[Letter, ...]
    images: Tuple[Letter, ...]

    def __post_init__(self):
        if len(self.sources) != len(self.images):
            raise AutomatonError("letter map needs one image per source letter")
        object.__setattr__(self, "_lookup", {a.key: b for a, b in zip(self.sources, self.images)})

    def __getitem__(self, letter: LetterRef) -> Letter:
        key = letter.key if isinstance(letter, Letter) else letter
        return self._lookup[key]

    def translate(self, word: Sequence[LetterRef]) -> FiniteWord:
        return tuple(self[a] for a in word)

    def translate_lasso(self, word: LassoWord) -> LassoWord:
        return LassoWord(self.translate(word.prefix), self.translate(word.period))

    def image_alphabet(self) -> Tuple[Letter, ...]:
        seen: Dict[str, Letter] = {}
        for image in self.images:
            seen.setdefault(image.key, image)
        return tuple(seen.values())


def embed(automaton: Automaton) -> Tuple[Automaton, LetterMap]:
    """The full automaton on the same states, initial set and acceptance, and
    the map sending each letter a to the relation {⟨p, q⟩ : ⟨p, a, q⟩ ∈ Δ}."""
    sources = automaton.alphabet()
    images = tuple(Letter(automaton.relation(a)) for a in sources)
    full = full_automaton(automaton.n, automaton.initial, automaton.acceptance, name=f"full({automaton.name})")
    return full, LetterMap(sources, images)


def pull_back(candidate: Automaton, letter_map: LetterMap) -> Automaton:
    """Candidate over relation letters read back over the source alphabet."""
    transitions = [(a, candidate.relation(letter_map[a])) for a in letter_map.sources]
    return named_automaton(
        candidate.n,
        candidate.initial,
        candidate.acceptance,
        transitions,
        name=candidate.name,
        annotations=candidate.annotations,
    )

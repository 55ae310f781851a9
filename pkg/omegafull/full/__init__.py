# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

from .construct import full_automaton, gen_fa, u_word, v_word
from .equivalence import Equivalence, tracked_sets, word_equiv
from .fooling import (
    FoolingReport,
    NfwWitness,
    c_letter,
    c_substitute,
    fooling_report,
    kill_letter,
    nfw_witness,
    shift_letter,
    subsets,
    substitute_ab,
)
from .reduction import LetterMap, embed, pull_back

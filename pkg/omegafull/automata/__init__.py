# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

from .acceptance import Acceptance, AcceptanceKind, Buchi, Final, GenBuchi, Muller, Parity, Rabin, Streett
from .automaton import AlphabetKind, Automaton, named_automaton, restrict
from .conversions import (
    buchi_to_type,
    complement_det,
    complete_with_sink,
    degeneralize,
    determinize_nfw,
    genbuchi_to_streett,
)
from .errors import (
    AcceptanceTypeError,
    AlphabetMismatchError,
    AutomatonError,
    DimensionMismatchError,
    NotDeterministicError,
    UnknownLetterError,
)
from .letters import Letter, canonical_key, id_letter, letter_from_key, parse_key
from .membership import LassoProduct, inf_sets, lasso_member, lasso_run, prefix_layers, unroll_lasso, word_member
from .product import intersect_empty
from .profile import Profile, compose, identity_profile, letter_profile, transition_profile, word_reach
from .runs import DeltaGraph, Run, RunSearchResult, delta_graph, is_finite_run_of, is_run_of, run_search
from .words import FiniteWord, LassoWord, enumerate_lassos, power

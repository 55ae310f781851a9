# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

from .confuse import ConfusionWitness, DirectFailure, boundary_states, confuse, verify_confusion
from .fb import (
    HardWord,
    QRanking,
    c_relation_letter,
    count_q_rankings,
    d_word,
    fb_as_type,
    final_state,
    from_final,
    gen_fb,
    hard_word,
    identity_main,
    main_states,
    q_rankings,
    to_final,
    u_ranking_word,
    w_word,
)
from .gamma import (
    GAMMA_NAMES,
    Gadgets,
    gamma,
    gamma_alphabet_size,
    gen_b,
    hard_word_gamma,
    registers,
    substitute_gamma,
    translate_gamma,
)
from .properties import PropertyReport, check_w_word, concatenation_property, random_chains, wfg_properties

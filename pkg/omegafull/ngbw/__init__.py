# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

from .acc import StandardAcc, acc_of, build_acc, check_nk, gen_fb_nk, max_k, nonfinal_state
from .collision import Collision, NoCollision, collision_extract, segment_states
from .conflict import (
    APPLIES_TO,
    ConflictCertificate,
    ConflictEvidence,
    certify_conflict_set,
    conflict_case,
    conflict_check,
    conflict_word,
    exponent_triples,
    is_gc_segment,
    streett_of,
)
from .pgcl import (
    PGCLRanking,
    check_seg,
    check_seg_properties,
    count_pgcl,
    pgcl_enumerate,
    pgcl_lower_bound,
    seg_alphabet,
    seg_alphabet_size,
    seg_letter,
    seg_word,
)

# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

from .construction import ComplementState, RankingState, SubsetState, all_complement_states, complement_rank
from .rankings import count_tight, is_level_ranking, is_tight, level_rankings, max_rank, tightness
from .slices import CRankingSlice, RankingVerdict, extract_slice, periodic_unrolling, validate_c_ranking

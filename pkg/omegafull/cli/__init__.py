# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

from .errors import FormatError
from .hoa import export_hoa, import_hoa
from .io import (
    automaton_from_json,
    automaton_to_json,
    certificate,
    load_automaton,
    make_automaton,
    word_from_json,
    word_to_json,
)

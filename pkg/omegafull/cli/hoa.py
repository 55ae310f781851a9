# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import functools
import json
import logging
from dataclasses import dataclass, field
from typing import List, Tuple

from lark import Lark, Transformer, v_args
from lark.exceptions import LarkError, UnexpectedInput, VisitError

from omegafull.automata import (
    AcceptanceKind,
    AcceptanceTypeError,
    Automaton,
    Buchi,
    GenBuchi,
    Letter,
    named_automaton,
    parse_key,
)
from omegafull.cli.errors import FormatError

logger = logging.getLogger("omegafull")

# Header items are kept generic; edges carry one-hot conjunctions of atomic propositions.
_GRAMMAR = r"""
start: header_item+ "--BODY--" state* "--END--"

header_item: HEADERNAME value*
?value: INT | ESCAPED_STRING | IDENTIFIER | OPERATOR

state: "State:" INT ESCAPED_STRING? acc_sig? edge*
edge: label INT
label: "[" literal ("&" literal)* "]"
literal: NOT? INT
acc_sig: "{" INT* "}"

HEADERNAME.2: /[a-zA-Z_][0-9a-zA-Z_-]*:/
IDENTIFIER: /[a-zA-Z_][0-9a-zA-Z_-]*/
OPERATOR: /[()&|!]/
NOT: "!"
COMMENT: /\/\*(.|\n)*?\*\//

%import common.INT
%import common.ESCAPED_STRING
%import common.WS
%ignore WS
%ignore COMMENT
"""


@dataclass
class HoaState:
    index: int
    marks: Tuple[int, ...] = ()
    edges: List[Tuple[Tuple[Tuple[bool, int], ...], int]] = field(default_factory=list)


@dataclass
class HoaAutomaton:
    """Parsed HOA text: raw header items plus the explicit state list."""

    header: List[Tuple[str, List[str]]]
    states: List[HoaState]

    def values(self, name: str) -> List[List[str]]:
        return [values for key, values in self.header if key == name]

    def single(self, name: str) -> List[str]:
        found = self.values(name)
        if len(found) != 1:
            raise FormatError(f"header {name}", f"expected exactly one {name}: item, found {len(found)}")
        return found[0]

    def pprint(self) -> str:
        lines = [f"{key}: {' '.join(values)}".rstrip() for key, values in self.header]
        lines.append("--BODY--")
        for state in self.states:
            marks = " {" + " ".join(str(m) for m in state.marks) + "}" if state.marks else ""
            lines.append(f"State: {state.index}{marks}")
            for literals, target in state.edges:
                label = "&".join(("!" if negated else "") + str(ap) for negated, ap in literals)
                lines.append(f"[{label}] {target}")
        lines.append("--END--")
        return "\n".join(lines) + "\n"


@v_args(inline=True)
class _ToHoa(Transformer):
    def start(self, *items):
        header = [item for item in items if isinstance(item, tuple)]
        states = [item for item in items if isinstance(item, HoaState)]
        return HoaAutomaton(header, states)

    def header_item(self, name, *values):
        return (str(name)[:-1], [str(v) for v in values])

    def state(self, index, *rest):
        state = HoaState(int(index))
        for item in rest:
            if isinstance(item, list):
                state.edges.append(tuple(item))
            elif isinstance(item, tuple):
                state.marks = item
        return state

    def edge(self, literals, target):
        return [literals, int(target)]

    def label(self, *literals):
        return list(literals)

    def literal(self, *tokens):
        return (len(tokens) == 2, int(tokens[-1]))

    def acc_sig(self, *marks):
        return tuple(int(m) for m in marks)


@functools.lru_cache(maxsize=None)
def parser() -> Lark:
    return Lark(_GRAMMAR, parser="lalr", transformer=_ToHoa())


def parse_hoa(text: str) -> HoaAutomaton:
    try:
        return parser().parse(text)
    except UnexpectedInput as e:
        raise FormatError(f"line {e.line}, column {e.column}", "unexpected input in HOA text") from e
    except VisitError as e:
        raise FormatError("HOA body", str(e.orig_exc)) from e
    except LarkError as e:
        raise FormatError("HOA text", str(e)) from e


def _final_sets(automaton: Automaton) -> Tuple[frozenset, ...]:
    if automaton.kind == AcceptanceKind.BUCHI:
        return (automaton.acceptance.final,)
    if automaton.kind == AcceptanceKind.GENBUCHI:
        return automaton.acceptance.sets
    raise AcceptanceTypeError(f"HOA export covers Büchi and generalized Büchi, got {automaton.kind}")


def _condition(count: int) -> str:
    return "&".join(f"Inf({i})" for i in range(count))


def _quote(text: str) -> str:
    return json.dumps(text, ensure_ascii=False)


def to_hoa(automaton: Automaton) -> HoaAutomaton:
    """One atomic proposition per letter, exactly one of them true on each edge."""
    if automaton.symbols is None:
        raise ValueError(f"{automaton} has no explicit alphabet; HOA export needs named letters")
    sets = _final_sets(automaton)
    size = len(automaton.symbols)
    acc_name = ["Buchi"] if automaton.kind == AcceptanceKind.BUCHI else ["generalized-Buchi", str(len(sets))]
    header: List[Tuple[str, List[str]]] = [("HOA", ["v1"])]
    if automaton.name:
        header.append(("name", [_quote(automaton.name)]))
    header.append(("States", [str(automaton.n)]))
    header += [("Start", [str(q)]) for q in sorted(automaton.initial)]
    header.append(("AP", [str(size)] + [_quote(letter.key) for letter in automaton.symbols]))
    header += [("acc-name", acc_name), ("Acceptance", [str(len(sets)), _condition(len(sets))])]
    header.append(("properties", ["state-acc"]))

    states = []
    for q in automaton.states:
        state = HoaState(q, tuple(i for i, final in enumerate(sets) if q in final))
        for index, relation in enumerate(automaton.table):
            literals = tuple((i != index, i) for i in range(size))
            state.edges += [(literals, target) for target in sorted(t for p, t in relation if p == q)]
        states.append(state)
    return HoaAutomaton(header, states)


def export_hoa(automaton: Automaton) -> str:
    return to_hoa(automaton).pprint()


def _letter_index(literals, state: int) -> int:
    positive = [ap for negated, ap in literals if not negated]
    if len(positive) != 1:
        raise FormatError(f"State {state}", "edge label is not a one-hot letter")
    return positive[0]


def _count(hoa: HoaAutomaton, name: str) -> int:
    values = hoa.single(name)
    if not values or not values[0].isdigit():
        raise FormatError(f"header {name}", "expected a count")
    return int(values[0])


def from_hoa(hoa: HoaAutomaton) -> Automaton:
    """Automaton over named letters from the HOA subset written by `to_hoa`."""
    version = hoa.single("HOA")
    if version != ["v1"]:
        raise FormatError("header HOA", f"unsupported version {' '.join(version)}")
    n = _count(hoa, "States")
    initial = [int(values[0]) for values in hoa.values("Start")]
    ap = hoa.single("AP")
    names = [json.loads(v) for v in ap[1:]]
    if _count(hoa, "AP") != len(names):
        raise FormatError("header AP", f"declares {ap[0]} propositions, lists {len(names)}")
    acceptance = hoa.single("Acceptance")
    count = _count(hoa, "Acceptance")
    if count < 1 or "".join(acceptance[1:]) != _condition(count):
        raise FormatError("header Acceptance", "expected a conjunction Inf(0)&...&Inf(k-1)")

    sets: List[set] = [set() for _ in range(count)]
    relations: List[set] = [set() for _ in names]
    for state in hoa.states:
        if not 0 <= state.index < n:
            raise FormatError(f"State {state.index}", f"outside the {n} declared states")
        for mark in state.marks:
            if mark >= count:
                raise FormatError(f"State {state.index}", f"acceptance mark {mark} is not declared")
            sets[mark].add(state.index)
        for literals, target in state.edges:
            index = _letter_index(literals, state.index)
            if index >= len(names):
                raise FormatError(f"State {state.index}", f"proposition {index} is not declared")
            relations[index].add((state.index, target))

    acceptance_condition = Buchi(sets[0]) if count == 1 else GenBuchi(tuple(sets))
    letters = [Letter(parse_key(key)) if key.startswith("{") else Letter.of(rel, key) for key, rel in zip(names, relations)]
    names_found = hoa.values("name")
    name = json.loads(names_found[0][0]) if names_found and names_found[0] else ""
    logger.debug(f"imported HOA automaton with {n} states and {len(letters)} letters")
    return named_automaton(n, initial, acceptance_condition, list(zip(letters, relations)), name=name)


def import_hoa(text: str) -> Automaton:
    return from_hoa(parse_hoa(text))


# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import json
import logging
import os
from typing import Any, Dict, List, Optional, Sequence, Tuple

from omegafull.automata import (
    Acceptance,
    AcceptanceKind,
    Automaton,
    AutomatonError,
    Buchi,
    Final,
    FiniteWord,
    GenBuchi,
    Letter,
    Muller,
    Parity,
    Rabin,
    Streett,
    named_automaton,
    parse_key,
    restrict,
)
from omegafull.cli.errors import FormatError
from omegafull.cli.hoa import import_hoa
from omegafull.full import gen_fa, kill_letter, shift_letter
from omegafull.nbw import fb_as_type, gen_b, gen_fb
from omegafull.ngbw import gen_fb_nk
from omegafull.utils.utils import atomic_write, content_hash

logger = logging.getLogger("omegafull")

AUTOMATON_FORMAT = "roa-v1"
WORD_FORMAT = "row-v1"
CERTIFICATE_FORMAT = "roc-v1"
CERTIFICATE_KINDS = ("confusion", "conflict-set", "fooling", "complement-check")


def _expect(condition: bool, path: str, message: str) -> None:
    if not condition:
        raise FormatError(path, message)


def _int(value: Any, path: str) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool), path, f"expected an integer, got {value!r}")
    return value


def _int_list(value: Any, path: str) -> List[int]:
    _expect(isinstance(value, list), path, "expected a list of integers")
    return [_int(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _pairs(value: Any, path: str) -> List[Tuple[int, int]]:
    _expect(isinstance(value, list), path, "expected a list of [p, q] pairs")
    pairs = []
    for i, pair in enumerate(value):
        _expect(isinstance(pair, list) and len(pair) == 2, f"{path}[{i}]", "expected a [p, q] pair")
        pairs.append((_int(pair[0], f"{path}[{i}][0]"), _int(pair[1], f"{path}[{i}][1]")))
    return pairs


def _sorted_pairs(relation) -> List[List[int]]:
    return [[p, q] for p, q in sorted(relation)]


def acceptance_to_json(acceptance: Acceptance) -> Dict[str, Any]:
    kind = acceptance.kind
    if kind in (AcceptanceKind.BUCHI, AcceptanceKind.FINAL):
        data: Any = sorted(acceptance.final)
    elif kind == AcceptanceKind.GENBUCHI:
        data = [sorted(s) for s in acceptance.sets]
    elif kind in (AcceptanceKind.RABIN, AcceptanceKind.STREETT):
        data = [[sorted(good), sorted(bad)] for good, bad in acceptance.pairs]
    elif kind == AcceptanceKind.MULLER:
        data = sorted(sorted(s) for s in acceptance.family)
    else:
        data = list(acceptance.colors)
    return {"type": str(kind), "data": data}


def acceptance_from_json(payload: Any, path: str = "$.acceptance") -> Acceptance:
    _expect(isinstance(payload, dict), path, "expected an object")
    _expect("type" in payload and "data" in payload, path, "needs 'type' and 'data'")
    try:
        kind = AcceptanceKind(payload["type"])
    except ValueError:
        raise FormatError(f"{path}.type", f"unknown acceptance type {payload['type']!r}") from None
    data, where = payload["data"], f"{path}.data"
    if kind == AcceptanceKind.BUCHI:
        return Buchi(_int_list(data, where))
    if kind == AcceptanceKind.FINAL:
        return Final(_int_list(data, where))
    if kind == AcceptanceKind.PARITY:
        return Parity(_int_list(data, where))
    _expect(isinstance(data, list), where, "expected a list")
    if kind == AcceptanceKind.GENBUCHI:
        return GenBuchi(tuple(_int_list(s, f"{where}[{i}]") for i, s in enumerate(data)))
    if kind == AcceptanceKind.MULLER:
        return Muller(frozenset(frozenset(_int_list(s, f"{where}[{i}]")) for i, s in enumerate(data)))
    pairs = []
    for i, pair in enumerate(data):
        _expect(isinstance(pair, list) and len(pair) == 2, f"{where}[{i}]", "expected a [G, B] pair")
        pairs.append((_int_list(pair[0], f"{where}[{i}][0]"), _int_list(pair[1], f"{where}[{i}][1]")))
    return Rabin(tuple(pairs)) if kind == AcceptanceKind.RABIN else Streett(tuple(pairs))


def automaton_to_json(automaton: Automaton) -> Dict[str, Any]:
    if automaton.rule is not None:
        raise ValueError(f"{automaton} has an intensional alphabet and cannot be written out")
    payload: Dict[str, Any] = {
        "format": AUTOMATON_FORMAT,
        "states": automaton.n,
        "initial": sorted(automaton.initial),
        "acceptance": acceptance_to_json(automaton.acceptance),
    }
    if automaton.name:
        payload["name"] = automaton.name
    if automaton.annotations is not None:
        payload["labels"] = [automaton.label(q) for q in automaton.states]
    if automaton.symbols is None:
        payload["alphabet"] = {"kind": "implicit-full"}
        return payload
    letters, source = {}, {}
    for letter, relation in zip(automaton.symbols, automaton.table):
        letters[letter.key] = _sorted_pairs(relation)
        if letter.relation != relation:
            source[letter.key] = _sorted_pairs(letter.relation)
    payload["alphabet"] = {"kind": "named", "letters": letters}
    if source:
        payload["alphabet"]["source"] = source
    return payload


def _letter(name: str, relation) -> Letter:
    if name.startswith("{"):
        return Letter(parse_key(name))
    return Letter(frozenset(relation), name)


def automaton_from_json(payload: Any) -> Automaton:
    _expect(isinstance(payload, dict), "$", "expected an object")
    _expect(payload.get("format") == AUTOMATON_FORMAT, "$.format", f"expected {AUTOMATON_FORMAT!r}")
    n = _int(payload.get("states"), "$.states")
    initial = _int_list(payload.get("initial"), "$.initial")
    acceptance = acceptance_from_json(payload.get("acceptance"))
    alphabet = payload.get("alphabet")
    _expect(isinstance(alphabet, dict), "$.alphabet", "expected an object")
    name = payload.get("name", "")
    labels = payload.get("labels")
    _expect(labels is None or isinstance(labels, list), "$.labels", "expected a list of state labels")
    try:
        if alphabet.get("kind") == "implicit-full":
            annotations = tuple(labels) if labels is not None else None
            return Automaton(n=n, initial=frozenset(initial), acceptance=acceptance, annotations=annotations, name=name)
        _expect(alphabet.get("kind") == "named", "$.alphabet.kind", "expected 'named' or 'implicit-full'")
        letters = alphabet.get("letters")
        _expect(isinstance(letters, dict), "$.alphabet.letters", "expected an object of letters")
        source = alphabet.get("source", {})
        _expect(isinstance(source, dict), "$.alphabet.source", "expected an object")
        transitions = []
        for key, pairs in letters.items():
            relation = _pairs(pairs, f"$.alphabet.letters[{key!r}]")
            own = _pairs(source[key], f"$.alphabet.source[{key!r}]") if key in source else relation
            transitions.append((_letter(key, own), relation))
        return named_automaton(n, initial, acceptance, transitions, name=name, annotations=labels)
    except AutomatonError as e:
        raise FormatError("$", str(e)) from None


def word_to_json(prefix: Sequence[Letter], period: Sequence[Letter]) -> Dict[str, Any]:
    def ref(letter: Letter):
        return letter.name if letter.name is not None else _sorted_pairs(letter.relation)

    return {"format": WORD_FORMAT, "prefix": [ref(a) for a in prefix], "period": [ref(a) for a in period]}


def _resolve(ref: Any, path: str, automaton: Optional[Automaton]) -> Letter:
    if isinstance(ref, str):
        if ref.startswith("{"):
            try:
                letter = Letter(parse_key(ref))
            except AutomatonError as e:
                raise FormatError(path, str(e)) from None
        elif automaton is None or automaton.symbols is None:
            raise FormatError(path, f"letter name {ref!r} needs an automaton with a named alphabet")
        else:
            letter = ref
    else:
        letter = Letter(frozenset(_pairs(ref, path)))
    if automaton is not None and automaton.symbols is not None:
        try:
            return automaton.resolve(letter)
        except AutomatonError as e:
            raise FormatError(path, str(e)) from None
    return letter


def word_from_json(payload: Any, automaton: Optional[Automaton] = None) -> Tuple[FiniteWord, FiniteWord]:
    """(prefix, period); an empty period marks a finite word."""
    _expect(isinstance(payload, dict), "$", "expected an object")
    _expect(payload.get("format") == WORD_FORMAT, "$.format", f"expected {WORD_FORMAT!r}")
    parts = []
    for field in ("prefix", "period"):
        refs = payload.get(field, [])
        _expect(isinstance(refs, list), f"$.{field}", "expected a list of letter refs")
        parts.append(tuple(_resolve(ref, f"$.{field}[{i}]", automaton) for i, ref in enumerate(refs)))
    return parts[0], parts[1]


def certificate(
    kind: str,
    inputs: Dict[str, Any],
    verdict: str,
    witnesses: Any = None,
    bound: Optional[int] = None,
    **extra: Any,
) -> Dict[str, Any]:
    if kind not in CERTIFICATE_KINDS:
        raise ValueError(f"unknown certificate kind {kind!r}")
    payload = {
        "format": CERTIFICATE_FORMAT,
        "kind": kind,
        "inputs": {name: content_hash(value) for name, value in sorted(inputs.items())},
        "verdict": verdict,
        "witnesses": witnesses if witnesses is not None else [],
        "bound": bound,
    }
    payload.update(extra)
    return payload


def dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path: str) -> Any:
    with open(path, encoding="utf-8") as f:
        text = f.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{os.path.basename(path)}:{e.lineno}:{e.colno}", e.msg) from None


def emit(payload: Any, out: Optional[str]) -> None:
    """Write to `out` atomically, or print to stdout."""
    text = payload if isinstance(payload, str) else dumps(payload)
    if out:
        atomic_write(out, text)
        logger.info(f"wrote {out}")
    else:
        print(text, end="")


def _parse_automaton_str(automaton_str: str):
    tokens = automaton_str.split(":")

    name = tokens[0]
    kwargs = {}

    for token in tokens[1:]:
        key, sep, value = token.partition("=")
        if not sep or key not in ("n", "k", "type"):
            raise FormatError(automaton_str, f"unexpected token {token!r}")
        kwargs[key] = value

    if "n" not in kwargs:
        raise FormatError(automaton_str, "missing n=")
    try:
        n = int(kwargs["n"])
        k = int(kwargs["k"]) if "k" in kwargs else None
    except ValueError:
        raise FormatError(automaton_str, "n and k must be integers") from None
    return name, n, k, kwargs.get("type")


def make_automaton(automaton_str: str) -> Automaton:
    """Automaton from a description such as FB:n=3, FBNK:n=4:k=2, FA:n=4, B:n=3 or AB:n=4."""
    name, n, k, kind = _parse_automaton_str(automaton_str)
    if name == "FA":
        return gen_fa(n)
    if name == "AB":
        return restrict(gen_fa(n), [shift_letter(n), kill_letter(n)], name=f"A_{n}")
    if name == "FB":
        return fb_as_type(n, kind) if kind else gen_fb(n)
    if name == "B":
        return gen_b(n)
    if name == "FBNK":
        if k is None:
            raise FormatError(automaton_str, "FBNK needs k=")
        return gen_fb_nk(n, k)
    raise FormatError(automaton_str, f'unsupported automaton "{name}"')


def load_automaton(ref: str) -> Automaton:
    """A roa-v1 or HOA file when `ref` is a path, otherwise a description string."""
    if os.path.exists(ref):
        if ref.endswith(".hoa"):
            with open(ref, encoding="utf-8") as f:
                return import_hoa(f.read())
        return automaton_from_json(load_json(ref))
    return make_automaton(ref)


def load_word(path: str, automaton: Optional[Automaton] = None) -> Tuple[FiniteWord, FiniteWord]:
    return word_from_json(load_json(path), automaton)

"""JSON documents for machines and characteristic tables (format ``otx/1``).

Register operations are written as ``["concat", dst, src]`` and
``["create", dst, letter]``.  Two-way transitions are written
``{state: {symbol: [target, "left"|"right", output]}}`` with ``⊢`` and ``⊣``
as the end markers.  Lookaround updates and table entries are lists keyed by
``[past, letter, future]`` since JSON objects only have string keys.
"""

from __future__ import annotations

import json
import os
from dataclasses import replace
from pathlib import Path

from .automata import DFA, LTR, RTL, relabel
from .characteristic import CharTable, canonical_table
from .core import Alphabet, FactoredOutput
from .errors import DomainError, OtxError, SchemaError, ValidationError
from .machines import (Concat, Create, LookaroundTransducer, StreamingTransducer,
                       TwoWayStep, TwoWayTransducer)

FORMAT = "otx/1"
FIXTURES_ENV = "OTX_FIXTURES"


def fixtures_dir() -> Path:
    override = os.environ.get(FIXTURES_ENV)
    return Path(override) if override else Path(__file__).parent / "fixtures"


def fixture_names() -> list[str]:
    """Names accepted by :func:`load_machine`, e.g. ``dup.sst``."""
    return sorted(p.name[:-len(".json")] for p in fixtures_dir().glob("*.json"))


# -- decoding ---------------------------------------------------------------


def _require(doc: dict, key: str, where: str = "document"):
    if key not in doc:
        raise SchemaError(f"{where}: missing field {key!r}")
    return doc[key]


def _ops(raw, where):
    if not isinstance(raw, list):
        raise SchemaError(f"{where}: register update must be a list")
    ops = []
    for i, op in enumerate(raw):
        if not (isinstance(op, list) and len(op) == 3 and op[0] in ("concat", "create")):
            raise SchemaError(f"{where}, op {i}: expected [\"concat\"|\"create\", dst, src|letter]")
        kind, dst, arg = op
        ops.append(Concat(dst, arg) if kind == "concat" else Create(dst, arg))
    return tuple(ops)


def _dfa(raw, direction, alphabet, where) -> DFA:
    states = tuple(_require(raw, "states", where))
    delta = {}
    for q, row in _require(raw, "delta", where).items():
        for a, r in row.items():
            delta[q, a] = r
    return DFA(tuple(alphabet), states, _require(raw, "initial", where), delta,
               direction=direction)


def machine_from_dict(doc: dict):
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    fmt = doc.get("format", FORMAT)
    if fmt != FORMAT:
        raise SchemaError(f"unsupported format {fmt!r}")
    kind = _require(doc, "kind")
    name = doc.get("name", "")
    try:
        inp = Alphabet(tuple(_require(doc, "input_alphabet")))
        out = Alphabet(tuple(_require(doc, "output_alphabet")))
    except DomainError as e:
        raise SchemaError(str(e)) from None
    if kind == "sst":
        transitions = {}
        for q, row in _require(doc, "transitions").items():
            for a, t in row.items():
                where = f"transition {q!r},{a!r}"
                transitions[q, a] = (_require(t, "to", where), _ops(_require(t, "ops", where), where))
        end = {q: _ops(ops, f"end_of_input {q!r}") for q, ops in doc.get("end_of_input", {}).items()}
        return StreamingTransducer(inp, out, tuple(_require(doc, "states")), _require(doc, "initial"),
                                   tuple(_require(doc, "registers")), _require(doc, "output_register"),
                                   transitions, end, name=name)
    if kind == "twoway":
        transitions = {}
        for q, row in _require(doc, "transitions").items():
            for sym, t in row.items():
                if not (isinstance(t, list) and len(t) in (2, 3)):
                    raise SchemaError(f"transition {q!r},{sym!r}: expected [target, direction, output]")
                transitions[q, sym] = TwoWayStep(t[0], t[1], t[2] if len(t) == 3 else "")
        return TwoWayTransducer(inp, out, tuple(_require(doc, "states")), _require(doc, "initial"),
                                _require(doc, "accept"), transitions, name=name)
    if kind == "lookaround":
        past = _dfa(_require(doc, "past"), LTR, inp, "past")
        future = _dfa(_require(doc, "future"), RTL, inp, "future")
        update = {}
        for entry in _require(doc, "update"):
            if not (isinstance(entry, list) and len(entry) == 4):
                raise SchemaError("update entries must be [past, letter, future, ops]")
            p, a, s, ops = entry
            update[p, a, s] = _ops(ops, f"update {p!r},{a!r},{s!r}")
        finish = {p: _ops(ops, f"finish {p!r}") for p, ops in doc.get("finish", {}).items()}
        m = LookaroundTransducer(inp, out, past, future, tuple(_require(doc, "registers")),
                                 _require(doc, "output_register"), update, finish, name=name)
        if doc.get("canonical", False):
            # the table is not stored; recompute it so canonical comparisons work
            m = replace(m, canonical=True, table=canonical_table(m))
        return m
    if kind == "chartable":
        past = _dfa(_require(doc, "past"), LTR, inp, "past")
        future = _dfa(_require(doc, "future"), RTL, inp, "future")
        entries = {}
        for entry in _require(doc, "entries"):
            p, a, s, text = entry
            entries[p, a, s] = FactoredOutput.parse(text)
        return CharTable(inp, out, past, future, entries)
    raise SchemaError(f"unknown kind {kind!r}")


def load_machine(source):
    """Load a machine from a path, a fixture name or inline JSON text.

    Relative paths that do not exist are looked up by file name in the
    fixtures directory, so ``fixtures/dup.sst.json`` and ``dup.sst`` both work.
    """
    text, origin = _read_source(str(source))
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{origin}: line {e.lineno}: {e.msg}") from None
    try:
        return machine_from_dict(doc)
    except (SchemaError, ValidationError) as e:
        raise type(e)(f"{origin}: {e}") from None
    except (TypeError, AttributeError, KeyError) as e:
        raise SchemaError(f"{origin}: malformed document ({e})") from None


def _read_source(source: str):
    if source.lstrip().startswith("{"):
        return source, "<inline>"
    path = Path(source)
    if path.is_file():
        return path.read_text(encoding="utf-8"), str(path)
    base = fixtures_dir()
    for candidate in (base / path.name, base / f"{path.name}.json"):
        if candidate.is_file():
            return candidate.read_text(encoding="utf-8"), str(candidate)
    raise OtxError(f"no such machine file or fixture: {source}")


# -- encoding ---------------------------------------------------------------


def _ops_out(ops):
    return [["concat", op.dst, op.src] if isinstance(op, Concat) else ["create", op.dst, op.letter]
            for op in ops]


def _dfa_out(d: DFA, prefix: str):
    names = [str(q) if isinstance(q, str) else f"{prefix}{q}" for q in d.states]
    d = relabel(d, names)
    return {
        "states": list(d.states),
        "initial": d.initial,
        "delta": {q: {a: d.delta[q, a] for a in d.alphabet} for q in d.states},
    }


def _name(q, prefix):
    return str(q) if isinstance(q, str) else f"{prefix}{q}"


def machine_to_dict(m) -> dict:
    head = {"format": FORMAT}
    if isinstance(m, StreamingTransducer):
        doc = {**head, "kind": "sst", "name": m.name,
               "input_alphabet": list(m.input_alphabet), "output_alphabet": list(m.output_alphabet),
               "states": list(m.states), "initial": m.initial,
               "registers": list(m.registers), "output_register": m.output_register,
               "transitions": {q: {a: {"to": m.transitions[q, a][0],
                                       "ops": _ops_out(m.transitions[q, a][1])}
                                   for a in m.input_alphabet} for q in m.states},
               "end_of_input": {q: _ops_out(m.end_of_input[q]) for q in m.states
                                if m.end_of_input.get(q)}}
        return doc
    if isinstance(m, TwoWayTransducer):
        rows: dict = {}
        for (q, sym), t in m.transitions.items():
            rows.setdefault(q, {})[sym] = [t.target, t.direction, t.output]
        return {**head, "kind": "twoway", "name": m.name,
                "input_alphabet": list(m.input_alphabet), "output_alphabet": list(m.output_alphabet),
                "states": list(m.states), "initial": m.initial, "accept": m.accept,
                "transitions": {q: rows[q] for q in m.states if q in rows}}
    if isinstance(m, LookaroundTransducer):
        past = _dfa_out(m.past, "p")
        future = _dfa_out(m.future, "s")
        doc = {**head, "kind": "lookaround", "name": m.name}
        if m.canonical:
            doc["canonical"] = True
        doc.update({
            "input_alphabet": list(m.input_alphabet), "output_alphabet": list(m.output_alphabet),
            "past": past, "future": future,
            "registers": list(m.registers), "output_register": m.output_register,
            "update": [[_name(p, "p"), a, _name(s, "s"), _ops_out(m.update[p, a, s])]
                       for p in m.past.states for a in m.input_alphabet for s in m.future.states],
            "finish": {_name(p, "p"): _ops_out(m.finish[p]) for p in m.past.states
                       if m.finish.get(p)},
        })
        return doc
    if isinstance(m, CharTable):
        past = _dfa_out(m.past, "p")
        future = _dfa_out(m.future, "s")
        return {**head, "kind": "chartable",
                "input_alphabet": list(m.input_alphabet), "output_alphabet": list(m.output_alphabet),
                "past": past, "future": future,
                "entries": [[_name(p, "p"), a, _name(s, "s"), m.entries[p, a, s].render()]
                            for p in m.past.states for a in m.input_alphabet
                            for s in m.future.states]}
    raise TypeError(f"cannot serialize {type(m).__name__}")


def dumps(m) -> str:
    return json.dumps(machine_to_dict(m), indent=2, ensure_ascii=False) + "\n"


def save_machine(m, path) -> None:
    Path(path).write_text(dumps(m), encoding="utf-8")

"""Characteristic tables: ``(v, a, w) -> f(v̄|a|w̄)`` in finite form.

A :class:`CharTable` pairs a left-to-right *past* automaton (run on ``v``), a
right-to-left *future* automaton (run on ``w``) and a table from
``(past state, letter, future state)`` to a three-part factored output whose
middle blocks are concrete and whose left/right blocks are abstract.

Tables are computed from machines by finite region summaries:

* two-way machines use prefix types (first exit plus re-entry behaviour) and
  suffix types (return state or halt, with an emptiness flag);
* register machines use, on the left, which registers are non-empty and, on
  the right, the symbolic effect of the suffix on the final output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

from .automata import DFA, LTR, RTL, explore, quotient, refine
from .core import (LEFT, MIDDLE, RIGHT, Alphabet, Block, FactoredOutput, OriginString,
                   merge_blocks, otimes_merge)
from .errors import DomainError, NonterminationError, ResourceError, TableError
from .machines import (END, GO_LEFT, GO_RIGHT, START, LookaroundTransducer,
                       StreamingTransducer, TwoWayTransducer, apply_ops, as_lookaround)

STATE_CAP = 200_000


@dataclass(frozen=True)
class CharTable:
    input_alphabet: Alphabet
    output_alphabet: Alphabet
    past: DFA
    future: DFA
    entries: Mapping  # (p, a, s) -> FactoredOutput
    # f(v) != ε per past state and f(w) != ε per future state; set by minimize_table
    past_nonempty: Mapping | None = field(default=None, compare=False)
    future_nonempty: Mapping | None = field(default=None, compare=False)

    @property
    def minimized(self) -> bool:
        return self.past_nonempty is not None

    def lookup(self, v: str, a: str, w: str) -> FactoredOutput:
        return table_lookup(self, v, a, w)

    def evaluate(self, w: str) -> OriginString:
        return table_eval(self, w)

    def row(self, p) -> tuple:
        return tuple(self.entries[p, a, s] for a in self.input_alphabet for s in self.future.states)

    def column(self, s) -> tuple:
        return tuple(self.entries[p, a, s] for p in self.past.states for a in self.input_alphabet)


def check_table(t: CharTable) -> None:
    """Raise :class:`TableError` unless ``t`` is total and respects the block conventions."""
    for p in t.past.states:
        for a in t.input_alphabet:
            for s in t.future.states:
                x = t.entries.get((p, a, s))
                if x is None:
                    raise TableError(f"no entry for ({p!r}, {a!r}, {s!r})")
                for b in x.blocks:
                    if b.source == MIDDLE and b.abstract:
                        raise TableError(f"abstract middle block at ({p!r}, {a!r}, {s!r})")
                    if b.source in (LEFT, RIGHT) and not b.abstract:
                        raise TableError(f"concrete {b.source} block at ({p!r}, {a!r}, {s!r})")
                    if b.source not in (LEFT, MIDDLE, RIGHT):
                        raise TableError(f"unknown source {b.source!r}")
                if p == t.past.initial and x.count(LEFT):
                    raise TableError(f"left block with empty prefix at ({p!r}, {a!r}, {s!r})")
                if s == t.future.initial and x.count(RIGHT):
                    raise TableError(f"right block with empty suffix at ({p!r}, {a!r}, {s!r})")


def table_lookup(t: CharTable, v: str, a: str, w: str) -> FactoredOutput:
    t.input_alphabet.check_word(v + a + w)
    if len(a) != 1:
        raise DomainError(f"expected a single letter, got {a!r}")
    return t.entries[t.past.run(v), a, t.future.run(w)]


def table_eval(t: CharTable, w: str) -> OriginString:
    """Evaluate via the reconstruction identity ``f(w) = x_1 ⊗ ... ⊗ x_n``."""
    t.input_alphabet.check_word(w)
    n = len(w)
    pasts = [t.past.initial]
    for a in w[:-1]:
        pasts.append(t.past.step(pasts[-1], a))
    futures = [t.future.initial] * n
    for i in range(n - 2, -1, -1):
        futures[i] = t.future.step(futures[i + 1], w[i + 1])
    xs = [t.entries[pasts[i], w[i], futures[i]] for i in range(n)]
    return otimes_merge(xs, n)


# ---------------------------------------------------------------------------
# two-way machines


class Return(NamedTuple):
    """The head leaves the region towards the centre in ``state``."""

    state: str
    nonempty: bool


class Halt(NamedTuple):
    nonempty: bool


class Fail(NamedTuple):
    """The run loops or gets stuck; only an error if a real run gets here."""

    reason: str


def _visit(m: TwoWayTransducer, q, sym, outward, inner):
    # run on one cell; `inner` summarises the region beyond it
    flag = False
    seen = set()
    while True:
        if q in seen:
            return Fail(f"state {q!r} repeats on cell {sym!r}")
        seen.add(q)
        t = m.step(q, sym)
        if t is None:
            return Fail(f"no transition from {q!r} on {sym!r}")
        flag = flag or bool(t.output)
        if t.target == m.accept:
            return Halt(flag)
        if t.direction == outward:
            return Return(t.target, flag)
        o = inner[t.target]
        if isinstance(o, Fail):
            return o
        if isinstance(o, Halt):
            return Halt(flag or o.nonempty)
        flag = flag or o.nonempty
        q = o.state


def _then(first, o):
    if isinstance(o, Fail):
        return o
    if isinstance(o, Halt):
        return Halt(first.nonempty or o.nonempty)
    return Return(o.state, first.nonempty or o.nonempty)


class _TwoWayTypes:
    """Prefix types ``(first exit, re-entry map)`` and suffix types ``state -> outcome``."""

    def __init__(self, m: TwoWayTransducer):
        self.m = m
        self.live = m.live_states

    def prefix_empty(self):
        entry = tuple(_visit(self.m, q, START, GO_RIGHT, None) for q in self.live)
        return _visit(self.m, self.m.initial, START, GO_RIGHT, None), entry

    def prefix_append(self, p, b):
        first, entry = p
        inner = dict(zip(self.live, entry))
        new_entry = tuple(_visit(self.m, q, b, GO_RIGHT, inner) for q in self.live)
        if isinstance(first, Return):
            first = _then(first, _visit(self.m, first.state, b, GO_RIGHT, inner))
        return first, new_entry

    def suffix_empty(self):
        return tuple(_visit(self.m, q, END, GO_LEFT, None) for q in self.live)

    def suffix_prepend(self, s, b):
        inner = dict(zip(self.live, s))
        return tuple(_visit(self.m, q, b, GO_LEFT, inner) for q in self.live)

    def entry(self, p, a, s) -> FactoredOutput:
        """Simulate the run on ``v a w`` from the summaries of ``v`` and ``w``."""
        m = self.m
        first, entry = p
        left = dict(zip(self.live, entry))
        right = dict(zip(self.live, s))
        blocks: list[Block] = []

        def absorb(o, source):
            if isinstance(o, Fail):
                raise NonterminationError(o.reason)
            if o.nonempty:
                blocks.append(Block(source))
            return o

        o = absorb(first, LEFT)
        if isinstance(o, Halt):
            return merge_blocks(blocks)
        q = o.state
        seen = set()
        while True:
            if q in seen:
                raise NonterminationError(f"state {q!r} repeats on the middle letter {a!r}")
            seen.add(q)
            t = m.step(q, a)
            if t is None:
                raise NonterminationError(f"no transition from {q!r} on {a!r}")
            if t.output:
                blocks.append(Block(MIDDLE, t.output))
            if t.target == m.accept:
                return merge_blocks(blocks)
            if t.direction == GO_RIGHT:
                o = absorb(right[t.target], RIGHT)
            else:
                o = absorb(left[t.target], LEFT)
            if isinstance(o, Halt):
                return merge_blocks(blocks)
            q = o.state


def twoway_char_table(m: TwoWayTransducer) -> CharTable:
    types = _TwoWayTypes(m)
    return _build(m, types.prefix_empty(), types.prefix_append,
                  types.suffix_empty(), types.suffix_prepend, types.entry)


# ---------------------------------------------------------------------------
# register machines


class _Marker:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name


R = _Marker("R")  # a non-empty run of right-origin letters in an effect


def _collapse(seq) -> tuple:
    out = []
    for x in seq:
        if x is R and out and out[-1] is R:
            continue
        out.append(x)
    return tuple(out)


def _symbolic(registers):
    return {r: (r,) for r in registers}


def substitute(effect, env) -> tuple:
    """Replace every register in ``effect`` by its value in ``env``."""
    out = []
    for x in effect:
        out.extend((x,) if x is R else env[x])
    return _collapse(out)


class _RegisterTypes:
    """Summaries for a lookaround device (streaming transducers are converted first).

    Left of a boundary: the past state and, for each future state seen at the
    boundary, the set of non-empty registers.  Right of a boundary: the future
    state and, for each past state at the boundary, the final output as a
    sequence of registers (as they were at the boundary) and ``R`` markers.
    """

    def __init__(self, m: LookaroundTransducer):
        self.m = m
        self.pasts = m.past.states
        self.futures = m.future.states
        self.pidx = {p: i for i, p in enumerate(self.pasts)}
        self.fidx = {s: i for i, s in enumerate(self.futures)}

    def prefix_empty(self):
        return self.m.past.initial, tuple(frozenset() for _ in self.futures)

    def prefix_append(self, p, b):
        m = self.m
        pi, nonempty = p
        new = []
        for phi in self.futures:
            before = nonempty[self.fidx[m.future.step(phi, b)]]
            env = {r: (1,) if r in before else () for r in m.registers}
            env = apply_ops(m.update[pi, b, phi], env, lambda _: (1,))
            new.append(frozenset(r for r, v in env.items() if v))
        return m.past.step(pi, b), tuple(new)

    def suffix_empty(self):
        m = self.m
        effects = []
        for pi in self.pasts:
            env = apply_ops(m.finish.get(pi, ()), _symbolic(m.registers), None)
            effects.append(tuple(env[m.output_register]))
        return m.future.initial, tuple(effects)

    def suffix_prepend(self, s, b):
        m = self.m
        phi, effects = s
        new = []
        for pi in self.pasts:
            env = apply_ops(m.update[pi, b, phi], _symbolic(m.registers), lambda _: (R,))
            new.append(substitute(effects[self.pidx[m.past.step(pi, b)]], env))
        return m.future.step(phi, b), tuple(new)

    def entry(self, p, a, s) -> FactoredOutput:
        m = self.m
        pi, nonempty = p
        phi, effects = s
        before = nonempty[self.fidx[m.future.step(phi, a)]]
        env = {r: ((LEFT,),) if r in before else () for r in m.registers}
        env = apply_ops(m.update[pi, a, phi], env, lambda c: ((MIDDLE, c),))
        blocks = []
        for x in effects[self.pidx[m.past.step(pi, a)]]:
            items = ((RIGHT,),) if x is R else env[x]
            for item in items:
                blocks.append(Block(item[0], item[1] if len(item) > 1 else None))
        return merge_blocks(blocks)


def lookaround_char_table(m: LookaroundTransducer) -> CharTable:
    types = _RegisterTypes(m)
    return _build(m, types.prefix_empty(), types.prefix_append,
                  types.suffix_empty(), types.suffix_prepend, types.entry)


def sst_char_table(m: StreamingTransducer) -> CharTable:
    return lookaround_char_table(as_lookaround(m))


# Segment effects of a streaming transducer: state -> (state after, register
# substitution).  Only used to check that letter effects compose associatively
# and agree with the suffix summaries above.

def letter_effect(m: StreamingTransducer, a: str) -> dict:
    out = {}
    for q in m.states:
        target, ops = m.transitions[q, a]
        out[q] = (target, apply_ops(ops, _symbolic(m.registers), lambda _: (R,)))
    return out


def compose_effects(first: dict, second: dict) -> dict:
    """Effect of reading the segment of ``first`` and then that of ``second``."""
    out = {}
    for q, (mid, env1) in first.items():
        end, env2 = second[mid]
        out[q] = (end, {r: substitute(v, env1) for r, v in env2.items()})
    return out


def identity_effect(m: StreamingTransducer) -> dict:
    return {q: (q, _symbolic(m.registers)) for q in m.states}


def suffix_output(m: StreamingTransducer, effect: dict, q) -> tuple:
    """Final output, over registers at the segment start and ``R``, from state ``q``."""
    end, env = effect[q]
    final = apply_ops(m.end_of_input.get(end, ()), _symbolic(m.registers), None)
    return substitute(final[m.output_register], env)


# ---------------------------------------------------------------------------


def _build(m, p0, p_step, s0, s_step, entry) -> CharTable:
    alphabet = tuple(m.input_alphabet)
    try:
        past = explore(p0, alphabet, p_step, LTR, limit=STATE_CAP)
        future = explore(s0, alphabet, s_step, RTL, limit=STATE_CAP)
    except OverflowError as e:
        raise ResourceError(f"characteristic automaton too large: {e}") from None
    entries = {}
    for p in past.states:
        for a in alphabet:
            for s in future.states:
                entries[p, a, s] = entry(past.labels[p], a, future.labels[s])
    return CharTable(m.input_alphabet, m.output_alphabet, past, future, entries)


def char_table(m) -> CharTable:
    """Unminimized characteristic table of any machine model."""
    if isinstance(m, CharTable):
        return m
    if isinstance(m, TwoWayTransducer):
        return twoway_char_table(m)
    if isinstance(m, StreamingTransducer):
        return sst_char_table(m)
    if isinstance(m, LookaroundTransducer):
        if m.table is not None:
            return m.table
        return lookaround_char_table(m)
    raise TypeError(f"not a machine: {type(m).__name__}")


def minimize_table(t: CharTable) -> CharTable:
    """Quotient both automata by the coarsest congruence preserving rows (columns).

    The past automaton is first split by whether ``f(v)`` is empty (read off
    the table at the empty suffix), since rows alone cannot see the output of
    a word with nothing after it; symmetrically for the future automaton.
    The result classifies prefixes by left derivative and suffixes by right
    derivative; states are numbered breadth-first in alphabet order.
    """
    check_table(t)
    alphabet = tuple(t.input_alphabet)
    p0, s0 = t.past.initial, t.future.initial
    past = explore((p0, False), alphabet,
                   lambda x, a: (t.past.step(x[0], a), bool(t.entries[x[0], a, s0])), LTR)
    future = explore((s0, False), alphabet,
                     lambda x, a: (t.future.step(x[0], a), bool(t.entries[p0, a, x[0]])), RTL)
    pbase = {i: x[0] for i, x in past.labels.items()}
    sbase = {i: x[0] for i, x in future.labels.items()}

    def row(i):
        return past.labels[i][1], tuple(t.entries[pbase[i], a, sbase[j]]
                                        for a in alphabet for j in future.states)

    def column(j):
        return future.labels[j][1], tuple(t.entries[pbase[i], a, sbase[j]]
                                          for i in past.states for a in alphabet)

    new_past, pmap = quotient(past, refine(past, row))
    new_future, smap = quotient(future, refine(future, column))
    entries = {}
    for i in past.states:
        for a in alphabet:
            for j in future.states:
                key = pmap[i], a, smap[j]
                value = t.entries[pbase[i], a, sbase[j]]
                if entries.setdefault(key, value) != value:
                    raise TableError(f"merged states disagree at {key!r}")
    past_nonempty = {pmap[i]: past.labels[i][1] for i in past.states}
    future_nonempty = {smap[j]: future.labels[j][1] for j in future.states}
    new_past = DFA(alphabet, new_past.states, new_past.initial, new_past.delta, direction=LTR,
                   labels={k: pbase[v] for k, v in new_past.labels.items()})
    new_future = DFA(alphabet, new_future.states, new_future.initial, new_future.delta,
                     direction=RTL, labels={k: sbase[v] for k, v in new_future.labels.items()})
    return CharTable(t.input_alphabet, t.output_alphabet, new_past, new_future, entries,
                     past_nonempty, future_nonempty)


def is_minimal(t: CharTable) -> bool:
    m = minimize_table(t)
    return len(m.past) == len(t.past) and len(m.future) == len(t.future)


def canonical_table(m) -> CharTable:
    """Minimized characteristic table of any machine (cached on canonical devices)."""
    if isinstance(m, CharTable):
        return m if m.minimized else minimize_table(m)
    if isinstance(m, LookaroundTransducer) and m.table is not None:
        return m.table
    return minimize_table(char_table(m))

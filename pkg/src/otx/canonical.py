"""The canonical lookaround device of a transducer, and comparison of canonical forms.

Register ``r{i}`` of the canonical device holds the i-th left block of
``f(v|w̄)`` when the prefix ``v`` has been read and the future automaton is in
the state of ``w``.  Reading a letter ``a`` turns the left blocks of
``f(v̄|a|w̄)`` (old registers) plus its middle blocks (new letters) into the
left blocks of ``f(va|w̄)``: every maximal run of left/middle blocks becomes
one new register.
"""

from __future__ import annotations

from typing import NamedTuple

from .automata import pair_access
from .characteristic import CharTable, canonical_table, is_minimal
from .core import LEFT, MIDDLE, RIGHT, Block, FactoredOutput, merge_blocks
from .errors import PreconditionError, TableError
from .machines import Concat, Create, LookaroundTransducer


def _shape_of(x: FactoredOutput) -> tuple:
    """Two-part shape after absorbing the middle letter into the prefix."""
    blocks = [Block(LEFT if b.source == MIDDLE else b.source) for b in x.blocks]
    return merge_blocks(blocks).sources


def two_part_shapes(t: CharTable) -> dict:
    """Shapes of ``f(v̄|w̄)`` for every pair (past state of v, future state of w)."""
    if not t.minimized:
        raise PreconditionError("two_part_shapes needs a minimized table")
    shapes = {}

    def put(key, shape, why):
        old = shapes.setdefault(key, shape)
        if old != shape:
            raise TableError(f"shape of {key!r} derived as {old} and as {shape} ({why})")

    p0 = t.past.initial
    for s in t.future.states:
        put((p0, s), (RIGHT,) if t.future_nonempty[s] else (), "empty prefix")
    for p in t.past.states:
        for a in t.input_alphabet:
            q = t.past.step(p, a)
            for s in t.future.states:
                put((q, s), _shape_of(t.entries[p, a, s]), f"from {p!r} on {a!r}")
    return shapes


def _registers(k: int, prefix: str) -> list:
    return [f"{prefix}{i}" for i in range(1, k + 1)]


def _update(x: FactoredOutput, old: int, new: int, where) -> tuple:
    if x.count(LEFT) != old:
        raise TableError(f"{where}: {x.count(LEFT)} left blocks but {old} registers in use")
    runs: list[list[Block]] = []
    prev = None
    for b in x.blocks:
        if b.source == RIGHT:
            prev = b.source
            continue
        if prev in (LEFT, MIDDLE):
            runs[-1].append(b)
        else:
            runs.append([b])
        prev = b.source
    if len(runs) != new:
        raise TableError(f"{where}: {len(runs)} left runs but the next shape has {new} left blocks")
    ops = []
    i = scratch = 0
    for j, run in enumerate(runs, start=1):
        temp = f"t{j}"
        for b in run:
            if b.source == LEFT:
                i += 1
                ops.append(Concat(temp, f"r{i}"))
            else:
                for c in b.content:
                    scratch += 1
                    ops.append(Create(f"c{scratch}", c))
                    ops.append(Concat(temp, f"c{scratch}"))
    ops.extend(Concat(f"r{j}", f"t{j}") for j in range(1, len(runs) + 1))
    return tuple(ops)


def canonize(m, name: str | None = None) -> LookaroundTransducer:
    """Canonical lookaround device of ``m`` (any machine or characteristic table)."""
    t = canonical_table(m)
    shapes = two_part_shapes(t)
    width = max([1] + [s.count(LEFT) for s in shapes.values()])
    letters = max([0] + [sum(len(b.content) for b in x.blocks if b.source == MIDDLE)
                         for x in t.entries.values()])
    update = {}
    for p in t.past.states:
        for a in t.input_alphabet:
            q = t.past.step(p, a)
            for s in t.future.states:
                old = shapes[p, t.future.step(s, a)].count(LEFT)
                new = shapes[q, s].count(LEFT)
                update[p, a, s] = _update(t.entries[p, a, s], old, new, (p, a, s))
    registers = _registers(width, "r") + _registers(width, "t") + _registers(letters, "c")
    if name is None:
        name = f"canonical({getattr(m, 'name', '') or '?'})"
    return LookaroundTransducer(t.input_alphabet, t.output_alphabet, t.past, t.future,
                                tuple(registers), "r1", update, {}, name=name,
                                canonical=True, table=t)


class Witness(NamedTuple):
    """``(v, a, w)`` on which two functions have different values ``f(v̄|a|w̄)``."""

    v: str
    a: str
    w: str
    first: FactoredOutput
    second: FactoredOutput

    def render(self) -> str:
        return (f"v={self.v!r} a={self.a!r} w={self.w!r}: "
                f"{self.first} vs {self.second}")


class Verdict(NamedTuple):
    equal: bool
    witness: Witness | None = None

    def __bool__(self):
        return self.equal


def _canonical_form(c) -> CharTable:
    if isinstance(c, CharTable):
        t = c
    elif isinstance(c, LookaroundTransducer) and c.canonical and c.table is not None:
        t = c.table
    else:
        raise PreconditionError("expected a canonical device (use canonize first)")
    if not t.minimized or not is_minimal(t):
        raise PreconditionError("characteristic table is not minimal")
    return t


def canonical_equal(c1, c2) -> Verdict:
    """Compare canonical devices; on difference return a witness minimising ``|v|+|w|``."""
    t1, t2 = _canonical_form(c1), _canonical_form(c2)
    if tuple(t1.input_alphabet) != tuple(t2.input_alphabet):
        raise PreconditionError("input alphabets differ")
    alphabet = tuple(t1.input_alphabet)
    pasts = pair_access(t1.past, t2.past)
    futures = pair_access(t1.future, t2.future)
    best = None
    for (p1, p2), v in pasts.items():
        for (s1, s2), w in futures.items():
            for a in alphabet:
                x1, x2 = t1.entries[p1, a, s1], t2.entries[p2, a, s2]
                if x1 != x2:
                    key = (len(v) + len(w), v, a, w)
                    if best is None or key < best[0]:
                        best = key, Witness("".join(v), a, "".join(w), x1, x2)
    if best is None:
        return Verdict(True)
    return Verdict(False, best[1])

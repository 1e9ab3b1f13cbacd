"""Machine models with origin-tracking evaluation.

Three models are supported:

* :class:`StreamingTransducer` - one-way, deterministic, with copyless registers;
* :class:`TwoWayTransducer` - deterministic two-way automaton with output;
* :class:`LookaroundTransducer` - registers driven by a left-to-right past
  automaton and a right-to-left future automaton.

Every evaluator returns an :class:`~otx.core.OriginString`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence, Union

from .automata import DFA, LTR, RTL
from .core import Alphabet, FactoredOutput, OriginString, color_parts
from .errors import CopylessError, DomainError, NonterminationError, ValidationError

START = "⊢"
END = "⊣"
GO_LEFT = "left"
GO_RIGHT = "right"


@dataclass(frozen=True)
class Concat:
    """``dst := dst . src`` and ``src := ε``."""

    dst: str
    src: str

    def __post_init__(self):
        if self.dst == self.src:
            raise CopylessError(f"concat of register {self.dst!r} with itself")


@dataclass(frozen=True)
class Create:
    """``dst := letter`` (previous content of ``dst`` is discarded)."""

    dst: str
    letter: str


RegisterOp = Union[Concat, Create]


def apply_ops(ops: Iterable[RegisterOp], env: Mapping[str, tuple], create: Callable[[str], tuple]) -> dict:
    """Run a register update left to right over symbolic register contents.

    ``env`` maps registers to tuples; ``create(letter)`` yields the tuple a
    :class:`Create` writes.  The same routine drives concrete evaluation and
    every abstract interpretation in :mod:`otx.characteristic`.
    """
    env = dict(env)
    for op in ops:
        if isinstance(op, Concat):
            env[op.dst] = env[op.dst] + env[op.src]
            env[op.src] = ()
        else:
            env[op.dst] = create(op.letter)
    return env


def check_ops(ops: Sequence[RegisterOp], registers, output_alphabet, where: str,
              concat_only: bool = False) -> None:
    seen = set()
    for op in ops:
        if op.dst not in registers:
            raise ValidationError(f"{where}: unknown register {op.dst!r}")
        if isinstance(op, Concat):
            if op.src not in registers:
                raise ValidationError(f"{where}: unknown register {op.src!r}")
            if op.src in seen:
                raise CopylessError(f"{where}: register {op.src!r} used as a source twice")
            seen.add(op.src)
        elif isinstance(op, Create):
            if concat_only:
                raise ValidationError(f"{where}: letter creation is not allowed here")
            if op.letter not in output_alphabet:
                raise ValidationError(f"{where}: letter {op.letter!r} not in output alphabet")
        else:
            raise ValidationError(f"{where}: not a register operation: {op!r}")


@dataclass(frozen=True)
class StreamingTransducer:
    input_alphabet: Alphabet
    output_alphabet: Alphabet
    states: tuple
    initial: str
    registers: tuple
    output_register: str
    transitions: Mapping  # (state, letter) -> (state, tuple of ops)
    end_of_input: Mapping  # state -> tuple of Concat
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "registers", tuple(self.registers))
        self.validate()

    def validate(self):
        if self.initial not in self.states:
            raise ValidationError(f"initial state {self.initial!r} not among states")
        if self.output_register not in self.registers:
            raise ValidationError(f"output register {self.output_register!r} unknown")
        if len(set(self.registers)) != len(self.registers):
            raise ValidationError("duplicate register names")
        for q in self.states:
            for a in self.input_alphabet:
                if (q, a) not in self.transitions:
                    raise ValidationError(f"no transition from {q!r} on {a!r}")
                target, ops = self.transitions[q, a]
                if target not in self.states:
                    raise ValidationError(f"transition from {q!r} on {a!r} to unknown {target!r}")
                check_ops(ops, self.registers, self.output_alphabet, f"transition {q!r},{a!r}")
            check_ops(self.end_of_input.get(q, ()), self.registers, self.output_alphabet,
                      f"end of input at {q!r}", concat_only=True)


@dataclass(frozen=True)
class TwoWayStep:
    target: str
    direction: str
    output: str = ""


@dataclass(frozen=True)
class TwoWayTransducer:
    """Deterministic two-way automaton with output on ``⊢ w ⊣``.

    The run starts at ``⊢`` in the initial state and ends when ``accept`` is
    entered.  Missing transitions are allowed; reaching one is an error.
    """

    input_alphabet: Alphabet
    output_alphabet: Alphabet
    states: tuple
    initial: str
    accept: str
    transitions: Mapping  # (state, tape symbol) -> TwoWayStep
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        self.validate()

    @property
    def live_states(self) -> tuple:
        return tuple(q for q in self.states if q != self.accept)

    def validate(self):
        for marker in (START, END):
            if marker in self.input_alphabet:
                raise ValidationError(f"input alphabet contains end marker {marker!r}")
        for q in (self.initial, self.accept):
            if q not in self.states:
                raise ValidationError(f"state {q!r} not among states")
        if self.initial == self.accept:
            raise ValidationError("initial state must differ from the accept state")
        tape = set(self.input_alphabet) | {START, END}
        for (q, sym), t in self.transitions.items():
            where = f"transition {q!r},{sym!r}"
            if q not in self.states or t.target not in self.states:
                raise ValidationError(f"{where}: unknown state")
            if q == self.accept:
                raise ValidationError(f"{where}: the accept state has no transitions")
            if sym not in tape:
                raise ValidationError(f"{where}: unknown tape symbol")
            if t.direction not in (GO_LEFT, GO_RIGHT):
                raise ValidationError(f"{where}: bad direction {t.direction!r}")
            if sym == START and t.direction == GO_LEFT:
                raise ValidationError(f"{where}: cannot move left of {START}")
            if sym == END and t.direction == GO_RIGHT and t.target != self.accept:
                raise ValidationError(f"{where}: can only move right of {END} into accept")
            if sym in (START, END) and t.output:
                raise ValidationError(f"{where}: output on an end marker")
            for c in t.output:
                if c not in self.output_alphabet:
                    raise ValidationError(f"{where}: letter {c!r} not in output alphabet")

    def step(self, q, sym):
        return self.transitions.get((q, sym))


@dataclass(frozen=True)
class LookaroundTransducer:
    input_alphabet: Alphabet
    output_alphabet: Alphabet
    past: DFA
    future: DFA
    registers: tuple
    output_register: str
    update: Mapping  # (past state, letter, future state) -> tuple of ops
    finish: Mapping  # past state -> tuple of Concat
    name: str = field(default="", compare=False)
    canonical: bool = field(default=False, compare=False)
    # minimized characteristic table, kept by canonize() so comparisons are cheap
    table: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "registers", tuple(self.registers))
        self.validate()

    def validate(self):
        if self.past.direction != LTR or self.future.direction != RTL:
            raise ValidationError("past must read left-to-right and future right-to-left")
        for name, d in (("past", self.past), ("future", self.future)):
            if tuple(d.alphabet) != tuple(self.input_alphabet):
                raise ValidationError(f"{name} automaton alphabet differs from the input alphabet")
            problems = d.check_total()
            if problems:
                raise ValidationError(f"{name} automaton: {problems[0]}")
        if self.output_register not in self.registers:
            raise ValidationError(f"output register {self.output_register!r} unknown")
        for p in self.past.states:
            for a in self.input_alphabet:
                for s in self.future.states:
                    if (p, a, s) not in self.update:
                        raise ValidationError(f"no update for type ({p!r}, {a!r}, {s!r})")
                    check_ops(self.update[p, a, s], self.registers, self.output_alphabet,
                              f"update {p!r},{a!r},{s!r}")
            check_ops(self.finish.get(p, ()), self.registers, self.output_alphabet,
                      f"finish at {p!r}", concat_only=True)


Machine = Union[StreamingTransducer, TwoWayTransducer, LookaroundTransducer]


def sst_eval(m: StreamingTransducer, w: str) -> OriginString:
    m.input_alphabet.check_word(w)
    env = {r: () for r in m.registers}
    q = m.initial
    for i, a in enumerate(w, start=1):
        q, ops = m.transitions[q, a]
        env = apply_ops(ops, env, lambda b, i=i: ((b, i),))
    env = apply_ops(m.end_of_input.get(q, ()), env, None)
    return OriginString(env[m.output_register], len(w))


def default_fuel(m: TwoWayTransducer, w: str) -> int:
    # a deterministic run longer than this repeats a configuration
    return len(m.states) * (len(w) + 2) + 1


def twoway_eval(m: TwoWayTransducer, w: str, fuel: int | None = None) -> OriginString:
    m.input_alphabet.check_word(w)
    tape = START + w + END
    fuel = default_fuel(m, w) if fuel is None else fuel
    q, head = m.initial, 0
    seen = set()
    out = []
    steps = 0
    while True:
        if (q, head) in seen:
            raise NonterminationError(f"configuration ({q!r}, {head}) repeats on {w!r}")
        if steps >= fuel:
            raise NonterminationError(f"fuel of {fuel} steps exhausted on {w!r}")
        seen.add((q, head))
        t = m.step(q, tape[head])
        if t is None:
            raise NonterminationError(f"no transition from {q!r} on {tape[head]!r} (input {w!r})")
        out.extend((c, head) for c in t.output)
        steps += 1
        if t.target == m.accept:
            return OriginString(tuple(out), len(w))
        q = t.target
        head += 1 if t.direction == GO_RIGHT else -1


def lookaround_eval(m: LookaroundTransducer, w: str) -> OriginString:
    m.input_alphabet.check_word(w)
    n = len(w)
    futures = [None] * n
    s = m.future.initial
    for i in range(n - 1, -1, -1):
        futures[i] = s
        s = m.future.step(s, w[i])
    env = {r: () for r in m.registers}
    p = m.past.initial
    for i, a in enumerate(w):
        env = apply_ops(m.update[p, a, futures[i]], env, lambda b, i=i: ((b, i + 1),))
        p = m.past.step(p, a)
    env = apply_ops(m.finish.get(p, ()), env, None)
    return OriginString(env[m.output_register], n)


def evaluate(m, w: str) -> OriginString:
    """Evaluate any machine model (or characteristic table) on ``w``."""
    if isinstance(m, StreamingTransducer):
        return sst_eval(m, w)
    if isinstance(m, TwoWayTransducer):
        return twoway_eval(m, w)
    if isinstance(m, LookaroundTransducer):
        return lookaround_eval(m, w)
    evaluate_table = getattr(m, "evaluate", None)
    if evaluate_table is not None:
        return evaluate_table(w)
    raise TypeError(f"not a machine: {type(m).__name__}")


def factored_eval(m, parts: Sequence[str], underlined: Iterable[int] = ()) -> FactoredOutput:
    """``f(u|v|w)`` for up to three parts; ``underlined`` holds 1-based part indices."""
    parts = list(parts)
    for k in underlined:
        if not 1 <= k <= len(parts):
            raise DomainError(f"part index {k} out of range")
    out = evaluate(m, "".join(parts))
    return color_parts(out, [len(x) for x in parts], underlined)


def as_lookaround(m: StreamingTransducer) -> LookaroundTransducer:
    """View a streaming transducer as a lookaround device with a trivial future."""
    alphabet = tuple(m.input_alphabet)
    past = DFA(alphabet, m.states, m.initial,
               {(q, a): m.transitions[q, a][0] for q in m.states for a in alphabet})
    future = DFA(alphabet, (0,), 0, {(0, a): 0 for a in alphabet}, direction=RTL)
    update = {(q, a, 0): tuple(m.transitions[q, a][1]) for q in m.states for a in alphabet}
    finish = {q: tuple(m.end_of_input.get(q, ())) for q in m.states}
    return LookaroundTransducer(m.input_alphabet, m.output_alphabet, past, future,
                                m.registers, m.output_register, update, finish, name=m.name)

"""Active learning of transducers with origins through the language ``L_f``.

``L_f`` holds the words ``v # a # wᴿ # t`` where ``t`` renders ``f(v̄|a|w̄)``:
output letters stand for themselves inside middle blocks and the abstract
blocks are the marker tokens ``<left>`` and ``<right>``.  Words of ``L_f`` are
tuples of tokens.  The learner runs L* on ``L_f`` and decodes the resulting
automaton back into a characteristic table.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

from .automata import DFA, explore, minimize, shortest_difference
from .canonical import canonize
from .characteristic import CharTable, canonical_table, check_table, minimize_table
from .core import LEFT, MIDDLE, RIGHT, Alphabet, Block, FactoredOutput, color_parts
from .errors import DomainError, MalformedLanguageError, ProtocolError, TableError
from .machines import evaluate

log = logging.getLogger(__name__)

HASH = "#"
LEFT_MARK = "<left>"
RIGHT_MARK = "<right>"
_MARKS = {LEFT: LEFT_MARK, RIGHT: RIGHT_MARK}
BOUND_FACTOR = 4


def lf_alphabet(input_alphabet, output_alphabet) -> tuple:
    """Σ_L: input letters, output letters not already listed, markers, ``#``."""
    for c in (*input_alphabet, *output_alphabet):
        if c == HASH:
            raise DomainError(f"{HASH!r} is reserved as the L_f separator")
    letters = list(input_alphabet)
    letters += [c for c in output_alphabet if c not in letters]
    return tuple(letters) + (LEFT_MARK, RIGHT_MARK, HASH)


def render_tokens(x: FactoredOutput) -> tuple:
    """The ``t`` segment of an ``L_f`` word."""
    out = []
    for b in x.blocks:
        if b.source == MIDDLE:
            out.extend(b.content)
        else:
            out.append(_MARKS[b.source])
    return tuple(out)


def parse_tokens(tokens: Sequence[str]) -> FactoredOutput:
    """Inverse of :func:`render_tokens`."""
    blocks = []
    letters = []
    for tok in tokens:
        if tok in (LEFT_MARK, RIGHT_MARK):
            if letters:
                blocks.append(Block(MIDDLE, "".join(letters)))
                letters = []
            blocks.append(Block(LEFT if tok == LEFT_MARK else RIGHT))
        else:
            letters.append(tok)
    if letters:
        blocks.append(Block(MIDDLE, "".join(letters)))
    return FactoredOutput(tuple(blocks))


def encode(v: str, a: str, w: str, x: FactoredOutput) -> tuple:
    return (*v, HASH, a, HASH, *reversed(w), HASH, *render_tokens(x))


class Split(NamedTuple):
    v: str
    a: str
    w: str
    t: tuple


def split_lf(u: Sequence[str], input_alphabet, output_alphabet) -> Split | None:
    """Decompose ``v # a # wᴿ # t``; ``None`` if ``u`` does not have that form."""
    u = tuple(u)
    cuts = [i for i, tok in enumerate(u) if tok == HASH]
    if len(cuts) != 3:
        return None
    i, j, k = cuts
    v, mid, wr, t = u[:i], u[i + 1:j], u[j + 1:k], u[k + 1:]
    inp = set(input_alphabet)
    if len(mid) != 1 or mid[0] not in inp:
        return None
    if not all(c in inp for c in v + wr):
        return None
    allowed = set(output_alphabet) | {LEFT_MARK, RIGHT_MARK}
    if not all(c in allowed for c in t):
        return None
    return Split("".join(v), mid[0], "".join(reversed(wr)), t)


def lf_dfa(t: CharTable) -> DFA:
    """Minimal DFA of ``L_f`` built directly from a characteristic table."""
    inp = tuple(t.input_alphabet)
    sigma = lf_alphabet(inp, tuple(t.output_alphabet))
    sink = ("sink",)

    def step(x, c):
        kind = x[0]
        if kind == "v":
            if c in inp:
                return "v", t.past.step(x[1], c)
            return ("a", x[1]) if c == HASH else sink
        if kind == "a":
            return ("a#", x[1], c) if c in inp else sink
        if kind == "a#":
            return ("w", x[1], x[2], t.future.initial) if c == HASH else sink
        if kind == "w":
            _, p, a, s = x
            if c in inp:
                return "w", p, a, t.future.step(s, c)
            return ("t", render_tokens(t.entries[p, a, s]), 0) if c == HASH else sink
        if kind == "t":
            _, tokens, n = x
            return ("t", tokens, n + 1) if n < len(tokens) and tokens[n] == c else sink
        return sink

    def accepting(x):
        return x[0] == "t" and x[2] == len(x[1])

    return minimize(explore(("v", t.past.initial), sigma, step, accepting=accepting))


# -- L* ----------------------------------------------------------------------


@dataclass
class LStarResult:
    dfa: DFA
    membership_queries: int = 0
    equivalence_queries: int = 0
    counterexample_lengths: list = field(default_factory=list)
    prefixes: int = 0
    suffixes: int = 0


def lstar(alphabet: Sequence[str], member: Callable[[tuple], bool],
          equivalence: Callable[[DFA], tuple | None],
          trace: Callable[[str], None] | None = None) -> LStarResult:
    """Angluin's L*, adding every suffix of a counterexample as a column.

    ``member`` answers membership for a tuple of symbols; ``equivalence``
    returns ``None`` to accept a hypothesis or a counterexample tuple.
    """
    alphabet = tuple(alphabet)
    cache: dict = {}
    result = LStarResult(dfa=None)

    def mq(u):
        if u not in cache:
            cache[u] = bool(member(u))
            result.membership_queries += 1
        return cache[u]

    prefixes: list = [()]
    suffixes: list = [()]

    def row(u):
        return tuple(mq(u + e) for e in suffixes)

    while True:
        # close and make consistent
        changed = True
        while changed:
            changed = False
            rows = {row(s) for s in prefixes}
            for s in list(prefixes):
                for a in alphabet:
                    r = row(s + (a,))
                    if r not in rows:
                        prefixes.append(s + (a,))
                        rows.add(r)
                        changed = True
            if changed:
                continue
            new = _inconsistency(prefixes, suffixes, alphabet, row, mq)
            if new is not None:
                suffixes.append(new)
                changed = True
        reps = {}
        for s in prefixes:
            reps.setdefault(row(s), s)
        hyp = explore(row(()), alphabet, lambda r, a: row(reps[r] + (a,)),
                      accepting=lambda r: r[0])
        hyp = DFA(hyp.alphabet, hyp.states, hyp.initial, hyp.delta, hyp.finals)
        if trace:
            trace(f"round {result.equivalence_queries + 1}: {len(prefixes)} prefixes, "
                  f"{len(suffixes)} suffixes, {len(hyp)} states")
        result.equivalence_queries += 1
        cex = equivalence(hyp)
        if cex is None:
            result.dfa = hyp
            result.prefixes, result.suffixes = len(prefixes), len(suffixes)
            return result
        cex = tuple(cex)
        if hyp.accepts(cex) == mq(cex):
            raise ProtocolError(f"{cex!r} is not a counterexample to the hypothesis")
        result.counterexample_lengths.append(len(cex))
        if trace:
            trace(f"counterexample {' '.join(cex) or 'ε'}")
        known = set(suffixes)
        for i in range(len(cex) + 1):
            e = cex[i:]
            if e not in known:
                suffixes.append(e)
                known.add(e)


def _inconsistency(prefixes, suffixes, alphabet, row, mq):
    groups: dict = {}
    for s in prefixes:
        groups.setdefault(row(s), []).append(s)
    for same in groups.values():
        for s1, s2 in zip(same, same[1:]):
            for a in alphabet:
                for e in suffixes:
                    if mq(s1 + (a,) + e) != mq(s2 + (a,) + e):
                        return (a,) + e
    return None


# -- teachers ----------------------------------------------------------------


class MachineTeacher:
    """Answers value queries by running a machine; equivalence against its own ``L_f`` DFA."""

    def __init__(self, m):
        self.machine = m
        self.input_alphabet = m.input_alphabet
        self.output_alphabet = m.output_alphabet
        self.alphabet = lf_alphabet(tuple(m.input_alphabet), tuple(m.output_alphabet))
        self.target = lf_dfa(canonical_table(m))
        self.value_queries = 0
        self.equivalence_queries = 0

    def value_query(self, word: str):
        self.value_queries += 1
        return evaluate(self.machine, word)

    def equivalence_query(self, hypothesis: DFA) -> tuple | None:
        self.equivalence_queries += 1
        return shortest_difference(hypothesis, self.target)


def make_machine_teacher(m) -> MachineTeacher:
    return MachineTeacher(m)


class LfMembership:
    """Membership in ``L_f`` from value queries; malformed words are answered locally."""

    def __init__(self, teacher):
        self.teacher = teacher
        self.local_answers = 0
        self.forwarded = 0

    def __call__(self, u) -> bool:
        parts = split_lf(u, self.teacher.input_alphabet, self.teacher.output_alphabet)
        if parts is None:
            self.local_answers += 1
            return False
        self.forwarded += 1
        out = self.teacher.value_query(parts.v + parts.a + parts.w)
        x = color_parts(out, (len(parts.v), 1, len(parts.w)), (1, 3))
        return render_tokens(x) == parts.t


# -- decoding ----------------------------------------------------------------


def _completion(d: DFA, q, tokens) -> tuple:
    """The unique word over ``tokens`` leading from ``q`` to acceptance."""
    live = _co_reachable(d, tokens)
    if q not in live:
        raise MalformedLanguageError("no completion after the third separator")
    word = []
    seen = set()
    while True:
        if q in seen:
            raise MalformedLanguageError("infinitely many completions")
        seen.add(q)
        nxt = [(c, d.delta[q, c]) for c in tokens if d.delta[q, c] in live]
        if q in d.finals:
            if nxt:
                raise MalformedLanguageError("several completions")
            return tuple(word)
        if len(nxt) != 1:
            raise MalformedLanguageError("several completions")
        c, q = nxt[0]
        word.append(c)


def _co_reachable(d: DFA, tokens) -> set:
    back: dict = {}
    for q in d.states:
        for c in tokens:
            back.setdefault(d.delta[q, c], set()).add(q)
    live = set(d.finals)
    queue = deque(live)
    while queue:
        q = queue.popleft()
        for r in back.get(q, ()):
            if r not in live:
                live.add(r)
                queue.append(r)
    return live


def decode_table(d: DFA, input_alphabet, output_alphabet) -> CharTable:
    """Characteristic table whose ``L_f`` is the language of ``d``."""
    inp = Alphabet(tuple(input_alphabet))
    out = Alphabet(tuple(output_alphabet))
    letters = tuple(inp)
    sigma = lf_alphabet(letters, tuple(out))
    if tuple(d.alphabet) != sigma:
        raise MalformedLanguageError(f"automaton alphabet {d.alphabet} is not {sigma}")
    t_tokens = tuple(out) + (LEFT_MARK, RIGHT_MARK)
    past = explore(d.initial, letters, d.step)
    starts = tuple(d.run((HASH, a, HASH), past.labels[p]) for p in past.states for a in letters)
    future = explore(starts, letters, lambda xs, b: tuple(d.step(x, b) for x in xs), "right-to-left")
    entries = {}
    for s in future.states:
        xs = future.labels[s]
        for k, (p, a) in enumerate((p, a) for p in past.states for a in letters):
            tokens = _completion(d, d.step(xs[k], HASH), t_tokens)
            try:
                entries[p, a, s] = parse_tokens(tokens)
            except DomainError as e:
                raise MalformedLanguageError(f"completion {tokens} is not a factored output: {e}") from None
    past = DFA(letters, past.states, past.initial, past.delta)
    future = DFA(letters, future.states, future.initial, future.delta, direction="right-to-left")
    table = CharTable(inp, out, past, future, entries)
    try:
        check_table(table)
        table = minimize_table(table)
    except TableError as e:
        raise MalformedLanguageError(f"decoded table is malformed: {e}") from None
    diff = shortest_difference(minimize(d), lf_dfa(table))
    if diff is not None:
        raise MalformedLanguageError(f"not an L_f language; differs on {' '.join(diff)!r}")
    return table


# -- the full pipeline -------------------------------------------------------


@dataclass
class LearningStats:
    value_queries: int = 0
    local_answers: int = 0
    membership_queries: int = 0
    equivalence_queries: int = 0
    counterexample_lengths: list = field(default_factory=list)
    hypothesis_states: int = 0
    bound_exceeded: bool = False

    def summary(self) -> str:
        longest = max(self.counterexample_lengths, default=0)
        return (f"states={self.hypothesis_states} membership={self.membership_queries} "
                f"value={self.value_queries} local={self.local_answers} "
                f"equivalence={self.equivalence_queries} longest_counterexample={longest}")


def learn_transducer(teacher, trace: Callable[[str], None] | None = None):
    """Learn the canonical device of the teacher's function; returns ``(device, stats)``."""
    member = LfMembership(teacher)
    alphabet = lf_alphabet(tuple(teacher.input_alphabet), tuple(teacher.output_alphabet))
    run = lstar(alphabet, member, teacher.equivalence_query, trace=trace)
    table = decode_table(run.dfa, teacher.input_alphabet, teacher.output_alphabet)
    name = getattr(getattr(teacher, "machine", None), "name", "") or "?"
    device = canonize(table, name=f"learned({name})")
    stats = LearningStats(
        value_queries=teacher.value_queries, local_answers=member.local_answers,
        membership_queries=run.membership_queries, equivalence_queries=run.equivalence_queries,
        counterexample_lengths=run.counterexample_lengths, hypothesis_states=len(run.dfa))
    n = len(run.dfa)
    m = max(run.counterexample_lengths, default=1)
    if run.membership_queries > BOUND_FACTOR * n * n * m:
        stats.bound_exceeded = True
        log.warning("bound regression: %d membership queries > %d*n^2*m with n=%d, m=%d",
                    run.membership_queries, BOUND_FACTOR, n, m)
    return device, stats

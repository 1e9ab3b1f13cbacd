"""Deterministic finite automata shared by the table, device and learning code."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

LTR = "left-to-right"
RTL = "right-to-left"


@dataclass(frozen=True)
class DFA:
    """Total DFA over a finite alphabet.

    ``direction`` only matters for :meth:`run`: a right-to-left automaton
    consumes its word from the last symbol to the first.  ``finals`` is empty
    for behaviour automata, whose states are themselves the result.
    """

    alphabet: tuple
    states: tuple
    initial: Hashable
    delta: Mapping
    finals: frozenset = frozenset()
    direction: str = LTR
    labels: Mapping | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))

    def step(self, q, a):
        return self.delta[q, a]

    def run(self, word: Sequence, start=None):
        q = self.initial if start is None else start
        seq = reversed(word) if self.direction == RTL else word
        for a in seq:
            q = self.delta[q, a]
        return q

    def accepts(self, word: Sequence) -> bool:
        return self.run(word) in self.finals

    def __len__(self):
        return len(self.states)

    def check_total(self) -> list[str]:
        problems = []
        if self.initial not in self.states:
            problems.append(f"initial state {self.initial!r} unknown")
        known = set(self.states)
        for q in self.states:
            for a in self.alphabet:
                r = self.delta.get((q, a))
                if r is None:
                    problems.append(f"no transition from {q!r} on {a!r}")
                elif r not in known:
                    problems.append(f"transition from {q!r} on {a!r} to unknown {r!r}")
        return problems


def explore(initial, alphabet: Sequence, step: Callable, direction: str = LTR,
            accepting: Callable | None = None, limit: int | None = None) -> DFA:
    """Breadth-first construction of the DFA reachable from ``initial``.

    States are renumbered ``0, 1, ...`` in discovery order; ``labels`` maps each
    number back to the explored value.
    """
    index = {initial: 0}
    order = [initial]
    delta = {}
    queue = deque([initial])
    while queue:
        x = queue.popleft()
        i = index[x]
        for a in alphabet:
            y = step(x, a)
            if y not in index:
                if limit is not None and len(order) >= limit:
                    raise OverflowError(f"more than {limit} states")
                index[y] = len(order)
                order.append(y)
                queue.append(y)
            delta[i, a] = index[y]
    finals = {index[x] for x in order if accepting(x)} if accepting else ()
    return DFA(tuple(alphabet), tuple(range(len(order))), 0, delta, frozenset(finals),
               direction, labels=dict(enumerate(order)))


def refine(dfa: DFA, signature: Callable[[Hashable], Hashable]) -> dict:
    """Coarsest congruence of ``dfa`` that refines ``signature`` (Moore's algorithm).

    Returns a map from state to class number.
    """
    cls = _number({q: signature(q) for q in dfa.states})
    while True:
        new = _number({
            q: (cls[q], tuple(cls[dfa.delta[q, a]] for a in dfa.alphabet))
            for q in dfa.states
        })
        if len(set(new.values())) == len(set(cls.values())):
            return new
        cls = new


def _number(sig: dict) -> dict:
    ids: dict = {}
    return {q: ids.setdefault(s, len(ids)) for q, s in sig.items()}


def quotient(dfa: DFA, cls: Mapping) -> tuple[DFA, dict]:
    """Collapse ``dfa`` along a congruence, renumbering classes by BFS.

    Returns the quotient automaton and the map old state -> new state.
    """
    members: dict = {}
    for q in dfa.states:
        members.setdefault(cls[q], q)

    def step(c, a):
        return cls[dfa.delta[members[c], a]]

    q = explore(cls[dfa.initial], dfa.alphabet, step, dfa.direction,
                accepting=lambda c: members[c] in dfa.finals)
    renum = {c: i for i, c in q.labels.items()}
    mapping = {s: renum[cls[s]] for s in dfa.states if cls[s] in renum}
    labels = {i: members[c] for i, c in q.labels.items()}
    return DFA(q.alphabet, q.states, q.initial, q.delta, q.finals, q.direction, labels), mapping


def minimize(dfa: DFA) -> DFA:
    """Minimal language-equivalent DFA (reachable part, Moore refinement)."""
    reach = explore(dfa.initial, dfa.alphabet, dfa.step, dfa.direction,
                    accepting=lambda q: q in dfa.finals)
    cls = refine(reach, lambda q: q in reach.finals)
    return quotient(reach, cls)[0]


def shortest_access(dfa: DFA) -> dict:
    """Shortest (then alphabet-first) word reaching every state, in reading order."""
    words = {dfa.initial: ()}
    queue = deque([dfa.initial])
    while queue:
        q = queue.popleft()
        for a in dfa.alphabet:
            r = dfa.delta[q, a]
            if r not in words:
                words[r] = words[q] + (a,)
                queue.append(r)
    if dfa.direction == RTL:
        return {q: tuple(reversed(w)) for q, w in words.items()}
    return words


def pair_access(d1: DFA, d2: DFA) -> dict:
    """Shortest word reaching each reachable state pair of the product."""
    start = (d1.initial, d2.initial)
    words = {start: ()}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        for a in d1.alphabet:
            nxt = (d1.delta[p, a], d2.delta[q, a])
            if nxt not in words:
                words[nxt] = words[p, q] + (a,)
                queue.append(nxt)
    if d1.direction == RTL:
        return {k: tuple(reversed(w)) for k, w in words.items()}
    return words


def shortest_difference(d1: DFA, d2: DFA):
    """Shortest word accepted by exactly one of two DFAs, or ``None``."""
    if tuple(d1.alphabet) != tuple(d2.alphabet):
        raise ValueError("alphabets differ")
    start = (d1.initial, d2.initial)
    prev = {start: None}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if (p in d1.finals) != (q in d2.finals):
            word = []
            node = (p, q)
            while prev[node] is not None:
                node, a = prev[node]
                word.append(a)
            return tuple(reversed(word))
        for a in d1.alphabet:
            nxt = (d1.delta[p, a], d2.delta[q, a])
            if nxt not in prev:
                prev[nxt] = ((p, q), a)
                queue.append(nxt)
    return None


def relabel(dfa: DFA, names: Iterable) -> DFA:
    """Rename states positionally, e.g. to strings for serialization."""
    m = dict(zip(dfa.states, names))
    delta = {(m[q], a): m[r] for (q, a), r in dfa.delta.items()}
    return DFA(dfa.alphabet, tuple(m[q] for q in dfa.states), m[dfa.initial], delta,
               frozenset(m[q] for q in dfa.finals), dfa.direction)

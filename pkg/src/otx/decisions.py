"""Origin equivalence and subclass decisions on characteristic tables."""

from __future__ import annotations

import itertools
import re
from collections import deque

from .automata import DFA
from .canonical import Verdict, Witness, canonical_equal, two_part_shapes
from .characteristic import CharTable, canonical_table
from .core import LEFT, MIDDLE, RIGHT, characteristic_values, merge_blocks
from .errors import PreconditionError, ResourceError
from .machines import evaluate

MONOID_CAP = 1_000_000


def words_up_to(alphabet, n: int):
    """All words of length at most ``n``, shortest first, in alphabet order."""
    for k in range(n + 1):
        for letters in itertools.product(tuple(alphabet), repeat=k):
            yield "".join(letters)


def bounded_equivalent(m1, m2, n: int) -> Verdict:
    """Compare outputs with origins on every input of length at most ``n``."""
    if tuple(m1.input_alphabet) != tuple(m2.input_alphabet):
        raise PreconditionError("input alphabets differ")
    for w in words_up_to(m1.input_alphabet, n):
        o1, o2 = evaluate(m1, w), evaluate(m2, w)
        if o1 != o2:
            # some position must see a different characteristic value
            for i, (x1, x2) in enumerate(zip(characteristic_values(o1), characteristic_values(o2))):
                if x1 != x2:
                    return Verdict(False, Witness(w[:i], w[i], w[i + 1:], x1, x2))
    return Verdict(True)


def equivalent(m1, m2) -> Verdict:
    """Origin equivalence via the canonical characteristic tables."""
    return canonical_equal(canonical_table(m1), canonical_table(m2))


# -- order preservation ------------------------------------------------------

_ORDERED_ENTRY = re.compile(r"^(L)?(M)?(R)?$")
_ORDERED_SHAPE = re.compile(r"^(L)?(R)?$")
_CODE = {LEFT: "L", MIDDLE: "M", RIGHT: "R"}


def _code(sources) -> str:
    return "".join(_CODE[x] for x in sources)


def _table(t) -> CharTable:
    if not isinstance(t, CharTable) or not t.minimized:
        raise PreconditionError("expected a minimized characteristic table")
    return t


def is_order_preserving(t: CharTable) -> bool:
    """Origins are monotone: every split of the input looks like ``(ε+left)(ε+right)``."""
    t = _table(t)
    if not all(_ORDERED_ENTRY.match(_code(x.sources)) for x in t.entries.values()):
        return False
    return all(_ORDERED_SHAPE.match(_code(s)) for s in two_part_shapes(t).values())


def is_one_way_deterministic(t: CharTable) -> bool:
    """For order-preserving ``t``: is the output up to each position independent of the future?

    Checked per past state and letter: the entry with its right block dropped
    must be the same for every future state.
    """
    t = _table(t)
    if not is_order_preserving(t):
        raise PreconditionError("one-way determinism is only decided for order-preserving functions")
    for p in t.past.states:
        for a in t.input_alphabet:
            seen = {merge_blocks(b for b in t.entries[p, a, s].blocks if b.source != RIGHT)
                    for s in t.future.states}
            if len(seen) > 1:
                return False
    return True


# -- first-order definability --------------------------------------------------


class TransitionMonoid:
    """Transformations of a DFA's states induced by words, closed under composition.

    An element is a tuple ``e`` with ``e[i]`` the state reached from state
    ``i`` (in the order of ``dfa.states``) after reading the word in the
    automaton's own reading order.
    """

    def __init__(self, dfa: DFA, cap: int = MONOID_CAP):
        index = {q: i for i, q in enumerate(dfa.states)}
        self.identity = tuple(range(len(dfa.states)))
        self.generators = {a: tuple(index[dfa.delta[q, a]] for q in dfa.states)
                           for a in dfa.alphabet}
        elements = {self.identity}
        queue = deque([self.identity])
        while queue:
            e = queue.popleft()
            for g in self.generators.values():
                f = self.compose(e, g)
                if f not in elements:
                    if len(elements) >= cap:
                        raise ResourceError(f"transition monoid exceeds {cap} elements")
                    elements.add(f)
                    queue.append(f)
        self.elements = frozenset(elements)

    @staticmethod
    def compose(e, f) -> tuple:
        """First ``e``, then ``f``."""
        return tuple(f[x] for x in e)

    def __len__(self):
        return len(self.elements)

    def power_cycle(self, e) -> int:
        """Period of the sequence ``e, e², e³, ...`` once it becomes periodic."""
        seen = {}
        x, k = e, 1
        while x not in seen:
            seen[x] = k
            x, k = self.compose(x, e), k + 1
        return k - seen[x]

    def is_aperiodic(self) -> bool:
        return all(self.power_cycle(e) == 1 for e in self.elements)


def is_first_order(t: CharTable, cap: int = MONOID_CAP) -> bool:
    """Both derivative automata have aperiodic transition monoids."""
    t = _table(t)
    return (TransitionMonoid(t.past, cap).is_aperiodic()
            and TransitionMonoid(t.future, cap).is_aperiodic())


def classify(m) -> dict:
    """``order_preserving``, ``one_way_deterministic`` (``None`` when not applicable), ``first_order``."""
    t = canonical_table(m)
    ordered = is_order_preserving(t)
    return {
        "order_preserving": ordered,
        "one_way_deterministic": is_one_way_deterministic(t) if ordered else None,
        "first_order": is_first_order(t),
    }

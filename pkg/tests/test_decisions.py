import itertools
import random

import pytest

from oracles import ZOO, oracle_equal, order_preserving_bruteforce, words
from otx.automata import DFA
from otx.characteristic import canonical_table, char_table
from otx.decisions import (TransitionMonoid, bounded_equivalent, classify, equivalent,
                           is_first_order, is_one_way_deterministic, is_order_preserving)
from otx.errors import PreconditionError, ResourceError
from otx.machines import evaluate


@pytest.fixture(scope="module")
def tables(zoo):
    return {name: canonical_table(m) for name, m in zoo.items()}


def test_dup_equivalences(zoo):
    assert equivalent(zoo["dup.sst"], zoo["dup.2dfa"])
    assert bounded_equivalent(zoo["dup.sst"], zoo["dup.2dfa"], 6)
    assert equivalent(zoo["pal.sst"], zoo["pal.sst"])


def test_variant_a_against_c(zoo):
    verdict = equivalent(zoo["ab-variant-a"], zoo["ab-variant-c"])
    assert not verdict
    w = verdict.witness
    assert w.v + w.a + w.w == "ab"


def test_bounded_witness_locates_the_difference(zoo):
    verdict = bounded_equivalent(zoo["ab-variant-a"], zoo["ab-variant-d"], 4)
    w = verdict.witness
    assert not verdict and w.v + w.a + w.w == "ab"
    assert w.first != w.second


@pytest.mark.parametrize("first", ZOO)
def test_equivalence_agrees_with_bounded_and_oracle(zoo, first):
    for second in ZOO:
        exact = bool(equivalent(zoo[first], zoo[second]))
        assert exact == bool(bounded_equivalent(zoo[first], zoo[second], 6))
        assert exact == oracle_equal(first, second)


def test_equivalence_is_an_equivalence_relation(zoo):
    rng = random.Random(3)
    eq = {(a, b): bool(equivalent(zoo[a], zoo[b])) for a in ZOO for b in ZOO}
    assert all(eq[a, a] for a in ZOO)
    for a, b in itertools.product(ZOO, ZOO):
        assert eq[a, b] == eq[b, a]
    for _ in range(200):
        a, b, c = (rng.choice(ZOO) for _ in range(3))
        if eq[a, b] and eq[b, c]:
            assert eq[a, c]


def test_dup_classification(zoo):
    assert classify(zoo["dup.sst"]) == {"order_preserving": False, "one_way_deterministic": None,
                                        "first_order": True}
    assert classify(zoo["dup.2dfa"]) == classify(zoo["dup.sst"])


def test_evenid_classification(zoo, tables):
    assert classify(zoo["evenid.sst"]) == {"order_preserving": True, "one_way_deterministic": False,
                                           "first_order": False}
    # explicit witness of suffix dependence: f(a|a̲) keeps a, f(a|a̲a̲) drops it
    out1, out2 = evaluate(zoo["evenid.sst"], "aa"), evaluate(zoo["evenid.sst"], "aaa")
    assert 1 in out1.origins and 1 not in out2.origins


def test_identity_and_relabel_classification(zoo):
    everything = {"order_preserving": True, "one_way_deterministic": True, "first_order": True}
    assert classify(zoo["identity.sst"]) == everything
    assert classify(zoo["relabel.sst"]) == everything
    assert classify(zoo["empty.sst"]) == everything


@pytest.mark.parametrize("name", ZOO)
def test_order_preservation_matches_bruteforce(tables, name):
    assert is_order_preserving(tables[name]) == order_preserving_bruteforce(name)


def test_one_way_needs_order_preservation(tables):
    with pytest.raises(PreconditionError):
        is_one_way_deterministic(tables["dup.sst"])


def test_decisions_need_minimized_tables(zoo):
    with pytest.raises(PreconditionError):
        is_first_order(char_table(zoo["dup.sst"]))


def test_monoid_of_parity():
    d = DFA(("a",), (0, 1), 0, {(0, "a"): 1, (1, "a"): 0})
    m = TransitionMonoid(d)
    assert len(m) == 2 and not m.is_aperiodic()
    assert m.power_cycle(m.generators["a"]) == 2


def test_monoid_of_counter_to_two():
    d = DFA(("a",), (0, 1, 2), 0, {(0, "a"): 1, (1, "a"): 2, (2, "a"): 2})
    m = TransitionMonoid(d)
    assert len(m) == 3 and m.is_aperiodic()


def test_monoid_is_associative_and_has_identity(tables):
    rng = random.Random(5)
    for t in tables.values():
        m = TransitionMonoid(t.past)
        assert m.identity in m.elements
        elements = sorted(m.elements)
        for _ in range(50):
            x, y, z = (rng.choice(elements) for _ in range(3))
            assert m.compose(m.compose(x, y), z) == m.compose(x, m.compose(y, z))
            assert m.compose(x, y) in m.elements
        n = len(t.past)
        assert len(m) <= n ** n


def test_monoid_cap():
    # the full transformation monoid on 4 states has 256 elements
    states = (0, 1, 2, 3)
    delta = {}
    for q in states:
        delta[q, "a"] = (q + 1) % 4
        delta[q, "b"] = 1 if q == 0 else 0 if q == 1 else q
        delta[q, "c"] = 0 if q == 3 else q
    d = DFA(("a", "b", "c"), states, 0, delta)
    assert len(TransitionMonoid(d)) == 256
    with pytest.raises(ResourceError):
        TransitionMonoid(d, cap=100)


def test_first_order_is_representation_independent(tables):
    assert is_first_order(tables["dup.sst"]) == is_first_order(tables["dup.2dfa"]) is True
    assert is_first_order(tables["evenid.sst"]) == is_first_order(tables["evenid.2dfa"]) is False


def test_bounded_rejects_alphabet_mismatch(zoo):
    from otx.serialize import load_machine
    doc = '{"kind": "sst", "input_alphabet": ["a"], "output_alphabet": ["a"], "states": ["q"], ' \
          '"initial": "q", "registers": ["o"], "output_register": "o", ' \
          '"transitions": {"q": {"a": {"to": "q", "ops": []}}}}'
    with pytest.raises(PreconditionError):
        bounded_equivalent(load_machine(doc), zoo["dup.sst"], 2)
    assert list(words(1)) == ["", "a", "b"]

import pytest
from hypothesis import given, strategies as st

from oracles import ZOO, factored_oracle, oracle, words
from otx.automata import DFA, RTL
from otx.core import Alphabet
from otx.errors import CopylessError, NonterminationError, ValidationError
from otx.machines import (Concat, Create, LookaroundTransducer, StreamingTransducer,
                          TwoWayStep, TwoWayTransducer, as_lookaround, evaluate, factored_eval,
                          lookaround_eval, sst_eval, twoway_eval)

AB = Alphabet(("a", "b"))


def dup_sst(letters="ab"):
    """w -> ww over an arbitrary alphabet, as in the dup.sst fixture."""
    alphabet = Alphabet(tuple(letters))
    trans = {("q", c): ("q", (Create("t1", c), Concat("x", "t1"), Create("t2", c), Concat("y", "t2")))
             for c in letters}
    return StreamingTransducer(alphabet, alphabet, ("q",), "q", ("x", "y", "t1", "t2"), "x",
                               trans, {"q": (Concat("x", "y"),)})


def test_sst_examples(machine):
    out = sst_eval(machine("pal.sst"), "ab")
    assert out.letters == "abba" and out.origins == (1, 2, 2, 1)
    out = sst_eval(machine("dup.sst"), "ab")
    assert out.letters == "abab" and out.origins == (1, 2, 1, 2)
    assert sst_eval(machine("dup.sst"), "").items == ()


def test_twoway_examples(machine):
    out = twoway_eval(machine("rev.2dfa"), "ab")
    assert out.letters == "ba" and out.origins == (2, 1)
    a = twoway_eval(machine("ab-variant-a"), "ab")
    b = twoway_eval(machine("ab-variant-b"), "ab")
    assert (a.letters, a.origins) == ("ab", (1, 2))
    assert (b.letters, b.origins) == ("ab", (1, 1))


def test_twoway_loop_is_rejected(machine):
    with pytest.raises(NonterminationError):
        twoway_eval(machine("loop.2dfa"), "a")
    with pytest.raises(NonterminationError):
        twoway_eval(machine("rev.2dfa"), "ab", fuel=3)


def test_twoway_missing_transition_is_an_error():
    m = TwoWayTransducer(AB, AB, ("s", "acc"), "s", "acc", {("s", "⊢"): TwoWayStep("s", "right")})
    with pytest.raises(NonterminationError):
        twoway_eval(m, "a")


@pytest.mark.parametrize("name", ZOO)
def test_every_fixture_matches_its_definition(machine, name):
    m = machine(name)
    for w in words(6):
        assert evaluate(m, w) == oracle(name, w), w


def test_dup_models_agree(machine):
    for w in words(6):
        assert sst_eval(machine("dup.sst"), w) == twoway_eval(machine("dup.2dfa"), w)


def test_twoway_deterministic(machine):
    m = machine("evenid.2dfa")
    assert all(twoway_eval(m, w) == twoway_eval(m, w) for w in words(4))


def test_lookaround_eval_of_an_sst_view(machine):
    m = machine("revdup.sst")
    la = as_lookaround(m)
    for w in words(5):
        assert lookaround_eval(la, w) == sst_eval(m, w)


def test_factored_eval_examples(machine):
    dup5 = dup_sst("abcde")
    assert str(factored_eval(dup5, ("ab", "cd", "e"), (1, 3))) == "left middle[cd] right left middle[cd] right"
    dup = machine("dup.sst")
    assert str(factored_eval(dup, ("a", "", "ba"), ())) == "left[a] right[ba] left[a] right[ba]"
    assert str(factored_eval(dup, ("a", "", "ba"), (3,))) == "left[a] right left[a] right"
    assert str(factored_eval(machine("revdup.sst"), ("b", "a", "b"), (1, 3))) == \
        "right middle[a] left middle[a] right"


@given(st.text("ab", max_size=3), st.text("ab", max_size=3), st.text("ab", max_size=3),
       st.sets(st.integers(1, 3)), st.sampled_from(ZOO))
def test_factored_eval_matches_hand_factorization(u, v, w, hidden, name):
    from otx.serialize import load_machine
    got = factored_eval(load_machine(name), (u, v, w), hidden)
    want = factored_oracle(oracle(name, u + v + w), (len(u), len(v), len(w)), hidden)
    assert got.render() == want


@given(st.text("ab", max_size=8))
def test_output_letters_come_from_distinct_creates(w):
    # copylessness: each output letter is the unique product of one Create
    m = dup_sst()
    creates = 2 * len(w)
    out = sst_eval(m, w)
    assert len(out) <= creates
    assert sorted(out.origins) == sorted(list(range(1, len(w) + 1)) * 2)


def test_copyless_validation():
    with pytest.raises(CopylessError):
        StreamingTransducer(AB, AB, ("q",), "q", ("x", "y", "z"), "x",
                            {("q", c): ("q", (Concat("x", "z"), Concat("y", "z"))) for c in "ab"}, {})
    with pytest.raises(CopylessError):
        Concat("x", "x")


def test_sst_validation():
    base = dict(input_alphabet=AB, output_alphabet=AB, states=("q",), initial="q",
                registers=("x",), output_register="x")
    with pytest.raises(ValidationError):  # not total
        StreamingTransducer(**base, transitions={("q", "a"): ("q", ())}, end_of_input={})
    full = {("q", c): ("q", ()) for c in "ab"}
    with pytest.raises(ValidationError):  # creation at end of input
        StreamingTransducer(**base, transitions=full, end_of_input={"q": (Create("x", "a"),)})
    with pytest.raises(ValidationError):  # unknown output letter
        StreamingTransducer(**base, transitions={("q", c): ("q", (Create("x", "z"),)) for c in "ab"},
                            end_of_input={})


def test_create_discards_old_content():
    trans = {("q", c): ("q", (Create("x", c),)) for c in "ab"}
    m = StreamingTransducer(AB, AB, ("q",), "q", ("x",), "x", trans, {})
    out = sst_eval(m, "abb")
    assert out.letters == "b" and out.origins == (3,)


def test_twoway_validation():
    ok = {("s", "⊢"): TwoWayStep("acc", "right")}
    TwoWayTransducer(AB, AB, ("s", "acc"), "s", "acc", ok)
    bad = [
        {("s", "⊢"): TwoWayStep("s", "left")},
        {("s", "⊣"): TwoWayStep("s", "right")},
        {("s", "⊢"): TwoWayStep("acc", "right", "a")},
        {("s", "a"): TwoWayStep("acc", "up")},
        {("s", "a"): TwoWayStep("acc", "right", "z")},
    ]
    for trans in bad:
        with pytest.raises(ValidationError):
            TwoWayTransducer(AB, AB, ("s", "acc"), "s", "acc", trans)


def test_lookaround_validation():
    past = DFA(("a", "b"), (0,), 0, {(0, "a"): 0, (0, "b"): 0})
    future = DFA(("a", "b"), (0,), 0, {(0, "a"): 0, (0, "b"): 0}, direction=RTL)
    with pytest.raises(ValidationError):
        LookaroundTransducer(AB, AB, past, future, ("r",), "r", {(0, "a", 0): ()}, {})
    with pytest.raises(ValidationError):  # future must read right to left
        LookaroundTransducer(AB, AB, past, past, ("r",), "r",
                             {(0, c, 0): () for c in "ab"}, {})

"""Independent reference implementations used as test oracles.

Each zoo function is written straight from its definition, producing
``(letter, origin)`` pairs without any machine model.  Nothing here imports
the evaluators or table code of the package.
"""

import itertools

from otx.core import OriginString


def _pos(w):
    return [(c, i) for i, c in enumerate(w, start=1)]


def dup(w):
    return _pos(w) + _pos(w)


def rev(w):
    return list(reversed(_pos(w)))


def pal(w):
    return _pos(w) + list(reversed(_pos(w)))


def revdup(w):
    return list(reversed(_pos(w))) + _pos(w)


def evenid(w):
    return _pos(w) if len(w) % 2 == 0 else []


def identity(w):
    return _pos(w)


def relabel(w):
    return [(c.upper(), i) for c, i in _pos(w)]


def empty(w):
    return []


def _ab(origins):
    def f(w):
        return [("a", origins[0]), ("b", origins[1])] if w == "ab" else []
    return f


ORACLES = {
    "dup.sst": dup,
    "dup.2dfa": dup,
    "rev.2dfa": rev,
    "pal.sst": pal,
    "revdup.sst": revdup,
    "evenid.sst": evenid,
    "evenid.2dfa": evenid,
    "identity.sst": identity,
    "relabel.sst": relabel,
    "empty.sst": empty,
    # the four origin semantics of "identity on ab, empty elsewhere"
    "ab-variant-a": _ab((1, 2)),
    "ab-variant-b": _ab((1, 1)),
    "ab-variant-c": _ab((2, 2)),
    "ab-variant-d": _ab((2, 1)),
}

ZOO = tuple(ORACLES)


def oracle(name, w) -> OriginString:
    return OriginString(tuple(ORACLES[name](w)), len(w))


def words(n, alphabet="ab"):
    for k in range(n + 1):
        for t in itertools.product(alphabet, repeat=k):
            yield "".join(t)


def oracle_equal(n1, n2, n=6) -> bool:
    return all(oracle(n1, w) == oracle(n2, w) for w in words(n))


def factored_oracle(out: OriginString, lengths, underlined=()):
    """``f(u|v|w)`` computed by hand: maximal runs of equally coloured origins."""
    names = {1: ("middle",), 2: ("left", "right"), 3: ("left", "middle", "right")}[len(lengths)]
    bounds = list(itertools.accumulate(lengths))
    hidden = {names[k - 1] for k in underlined}
    runs = []
    for c, o in out.items:
        color = names[next(k for k, b in enumerate(bounds) if o <= b)]
        if runs and runs[-1][0] == color:
            runs[-1][1] += c
        else:
            runs.append([color, c])
    return " ".join(col if col in hidden else f"{col}[{s}]" for col, s in runs)


def monotone(out: OriginString) -> bool:
    return list(out.origins) == sorted(out.origins)


def order_preserving_bruteforce(name, n=6) -> bool:
    return all(monotone(oracle(name, w)) for w in words(n))

"""Origin-annotated strings and factored outputs.

An :class:`OriginString` is an output word whose letters remember the input
position (1-based) that produced them.  Colouring the input positions and
cutting the output into maximal runs of equally coloured origins yields a
:class:`FactoredOutput`; blocks whose colour is underlined lose their content.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, IncompleteError, InconsistentFamilyError

LEFT = "left"
MIDDLE = "middle"
RIGHT = "right"
THREE_PARTS = (LEFT, MIDDLE, RIGHT)
TWO_PARTS = (LEFT, RIGHT)

_RESERVED = set("[]@")


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of one-character symbols."""

    letters: tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise DomainError("alphabet must not be empty")
        if len(set(letters)) != len(letters):
            raise DomainError(f"duplicate symbols in alphabet {letters!r}")
        for c in letters:
            if not isinstance(c, str) or len(c) != 1 or c.isspace() or c in _RESERVED:
                raise DomainError(f"invalid alphabet symbol {c!r}")

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __contains__(self, c):
        return c in self.letters

    def check_word(self, word: str) -> str:
        for c in word:
            if c not in self.letters:
                raise DomainError(f"letter {c!r} of {word!r} not in alphabet {''.join(self.letters)!r}")
        return word


@dataclass(frozen=True)
class OriginString:
    """Output word in which every letter carries its input position."""

    items: tuple[tuple[str, int], ...] = ()
    input_length: int = 0

    def __post_init__(self):
        items = tuple((str(c), int(o)) for c, o in self.items)
        object.__setattr__(self, "items", items)
        if self.input_length < 0:
            raise DomainError("negative input length")
        for c, o in items:
            if not 1 <= o <= self.input_length:
                raise DomainError(f"origin {o} outside [1, {self.input_length}]")

    @property
    def letters(self) -> str:
        return "".join(c for c, _ in self.items)

    @property
    def origins(self) -> tuple[int, ...]:
        return tuple(o for _, o in self.items)

    def __len__(self):
        return len(self.items)

    def render(self) -> str:
        return " ".join(f"{c}@{o}" for c, o in self.items)

    @classmethod
    def parse(cls, text: str, input_length: int) -> "OriginString":
        items = []
        for tok in text.split():
            c, _, o = tok.rpartition("@")
            items.append((c, int(o)))
        return cls(tuple(items), input_length)

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class SourceColoring:
    """Colour of every input position; ``colors[i - 1]`` colours position ``i``."""

    colors: tuple[str, ...]

    @property
    def input_length(self) -> int:
        return len(self.colors)

    def __call__(self, position: int) -> str:
        if not 1 <= position <= len(self.colors):
            raise DomainError(f"position {position} not coloured")
        return self.colors[position - 1]

    @classmethod
    def from_parts(cls, lengths: Sequence[int], names: Sequence[str] | None = None) -> "SourceColoring":
        """Colour consecutive segments of the given lengths."""
        names = part_names(len(lengths)) if names is None else names
        colors = []
        for n, name in zip(lengths, names):
            colors.extend([name] * n)
        return cls(tuple(colors))


def part_names(n: int) -> tuple[str, ...]:
    """Source identifiers used for an ``n``-part split of the input."""
    if n == 1:
        return (MIDDLE,)
    if n == 2:
        return TWO_PARTS
    if n == 3:
        return THREE_PARTS
    raise DomainError(f"only 1, 2 or 3 parts are supported, got {n}")


@dataclass(frozen=True)
class Block:
    source: str
    content: str | None = None

    def __post_init__(self):
        if self.content is not None and not self.content:
            raise DomainError("a concrete block must have non-empty content")

    @property
    def abstract(self) -> bool:
        return self.content is None

    def render(self) -> str:
        return self.source if self.content is None else f"{self.source}[{self.content}]"


@dataclass(frozen=True)
class FactoredOutput:
    """Sequence of blocks, no two neighbours sharing a source."""

    blocks: tuple[Block, ...] = ()

    def __post_init__(self):
        blocks = tuple(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        for x, y in zip(blocks, blocks[1:]):
            if x.source == y.source:
                raise DomainError(f"adjacent blocks share source {x.source!r}")

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __bool__(self):
        return bool(self.blocks)

    @property
    def sources(self) -> tuple[str, ...]:
        return tuple(b.source for b in self.blocks)

    def count(self, source: str) -> int:
        return sum(1 for b in self.blocks if b.source == source)

    def render(self) -> str:
        return " ".join(b.render() for b in self.blocks)

    def __str__(self):
        return self.render() or "ε"

    @classmethod
    def parse(cls, text: str) -> "FactoredOutput":
        """Inverse of :meth:`render`; ``"ε"`` and ``""`` parse to the empty output."""
        blocks = []
        for tok in text.split():
            if tok == "ε":
                continue
            if tok.endswith("]") and "[" in tok:
                name, _, rest = tok.partition("[")
                blocks.append(Block(name, rest[:-1]))
            else:
                blocks.append(Block(tok))
        return cls(tuple(blocks))


def merge_blocks(blocks: Iterable[Block]) -> FactoredOutput:
    """Join neighbouring blocks of the same source.

    Two abstract neighbours stay abstract; mixing an abstract and a concrete
    neighbour is refused since the result would have no sensible content.
    """
    out: list[Block] = []
    for b in blocks:
        if out and out[-1].source == b.source:
            prev = out.pop()
            if prev.abstract != b.abstract:
                raise DomainError(f"cannot merge abstract and concrete {b.source!r} blocks")
            b = Block(b.source, None if b.abstract else prev.content + b.content)
        out.append(b)
    return FactoredOutput(tuple(out))


def factorize(out: OriginString, sigma: SourceColoring) -> FactoredOutput:
    """Cut ``out`` into maximal runs of letters whose origins share a colour."""
    if sigma.input_length != out.input_length:
        raise DomainError(
            f"colouring covers {sigma.input_length} positions, input has {out.input_length}"
        )
    runs: list[list] = []
    for c, o in out.items:
        color = sigma(o)
        if runs and runs[-1][0] == color:
            runs[-1][1].append(c)
        else:
            runs.append([color, [c]])
    return FactoredOutput(tuple(Block(color, "".join(cs)) for color, cs in runs))


def abstract_blocks(fo: FactoredOutput, underlined: Iterable[str]) -> FactoredOutput:
    """Drop the content of every block whose source is underlined."""
    underlined = set(underlined)
    if not underlined:
        return fo
    return FactoredOutput(
        tuple(Block(b.source) if b.source in underlined else b for b in fo.blocks)
    )


def otimes_merge(xs: Sequence[FactoredOutput], n: int) -> OriginString:
    """Rebuild a full origin output from its per-position characteristic values.

    ``xs[i - 1]`` must be the output with every position other than ``i``
    abstracted: positions before ``i`` are ``left``, ``i`` is ``middle``,
    positions after are ``right``.  The merge keeps an alternating list of
    concrete runs (origins already placed) and gaps (origins still to come).
    At step ``i`` the left blocks of ``xs[i - 1]`` must match the concrete runs
    one for one, and every maximal run of middle/right blocks fills one gap.
    """
    if len(xs) != n:
        raise DomainError(f"expected {n} factored outputs, got {len(xs)}")
    if n == 0:
        return OriginString((), 0)
    # items: ("run", [(letter, origin), ...]) or ("gap", None)
    items: list[tuple[str, list | None]] = [("gap", None)] if xs[0] else []
    for i, x in enumerate(xs, start=1):
        segments: list[tuple[str, list[Block]]] = []
        for b in x.blocks:
            if b.source == LEFT:
                if not b.abstract:
                    raise InconsistentFamilyError(i, "left block carries content")
                segments.append(("run", [b]))
            elif b.source in (MIDDLE, RIGHT):
                if b.source == MIDDLE and b.abstract:
                    raise InconsistentFamilyError(i, "middle block is abstract")
                if b.source == RIGHT and not b.abstract:
                    raise InconsistentFamilyError(i, "right block carries content")
                if segments and segments[-1][0] == "gap":
                    segments[-1][1].append(b)
                else:
                    segments.append(("gap", [b]))
            else:
                raise InconsistentFamilyError(i, f"unknown source {b.source!r}")
        if [kind for kind, _ in segments] != [kind for kind, _ in items]:
            raise InconsistentFamilyError(
                i,
                "block structure %s does not match runs/gaps %s"
                % ([k for k, _ in segments], [k for k, _ in items]),
            )
        if i == 1 and any(kind == "run" for kind, _ in segments):
            raise InconsistentFamilyError(i, "first position has left blocks")
        if i == n and any(b.source == RIGHT for b in x.blocks):
            raise InconsistentFamilyError(i, "last position has right blocks")
        filled: list[tuple[str, list | None]] = []
        for (kind, payload), (_, blocks) in zip(items, segments):
            if kind == "run":
                _push_run(filled, payload)
                continue
            for b in blocks:
                if b.source == MIDDLE:
                    _push_run(filled, [(c, i) for c in b.content])
                else:
                    filled.append(("gap", None))
        items = filled
    if any(kind == "gap" for kind, _ in items):
        raise IncompleteError("gaps remain after the last position")
    letters = [pair for _, run in items for pair in run]
    return OriginString(tuple(letters), n)


def _push_run(items, letters):
    if items and items[-1][0] == "run":
        items[-1][1].extend(letters)
    else:
        items.append(("run", list(letters)))


def color_parts(out: OriginString, lengths: Sequence[int], underlined: Iterable[int] = ()) -> FactoredOutput:
    """Factor ``out`` along consecutive parts and abstract the underlined ones.

    ``underlined`` holds 1-based part indices.
    """
    names = part_names(len(lengths))
    sigma = SourceColoring.from_parts(lengths, names)
    fo = factorize(out, sigma)
    hidden = {names[k - 1] for k in underlined}
    return abstract_blocks(fo, hidden)


def characteristic_values(out: OriginString) -> list[FactoredOutput]:
    """Per-position values with everything but the position abstracted."""
    n = out.input_length
    return [color_parts(out, (i - 1, 1, n - i), (1, 3)) for i in range(1, n + 1)]

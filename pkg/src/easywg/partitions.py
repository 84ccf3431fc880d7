"""Colored set partitions and the six easy partition categories.

Ground sets are {1, ..., k}.  A partition is stored canonically as a
restricted-growth string (block labels in order of first appearance), and
the canonical order on partitions of a common ground set is lexicographic
on that encoding.  Words over the two leg colors drive the unitary-type
categories: a white leg is a plain coordinate, a black leg a conjugated
one; the orthogonal/symmetric-type categories ignore colors.
"""

from __future__ import annotations

import enum
from functools import lru_cache, total_ordering
from typing import Iterable, Iterator, Sequence, Union


class Color(enum.Enum):
    """Leg color: white = plain variable, black = conjugated variable."""

    WHITE = "o"
    BLACK = "b"

    @classmethod
    def parse(cls, ch: str) -> "Color":
        try:
            return cls(ch)
        except ValueError:
            raise ValueError(f"unknown color {ch!r}; expected 'o' or 'b'") from None

    def __repr__(self) -> str:
        return f"Color.{self.name}"


class ColoredWord:
    """An ordered word of leg colors; the empty word is legal."""

    __slots__ = ("colors",)

    def __init__(self, colors: Iterable[Color] = ()) -> None:
        colors = tuple(colors)
        for c in colors:
            if not isinstance(c, Color):
                raise TypeError(f"not a Color: {c!r}")
        self.colors = colors

    @classmethod
    def parse(cls, text: str) -> "ColoredWord":
        return cls(Color.parse(ch) for ch in text)

    @property
    def text(self) -> str:
        return "".join(c.value for c in self.colors)

    def __len__(self) -> int:
        return len(self.colors)

    def __iter__(self) -> Iterator[Color]:
        return iter(self.colors)

    def __getitem__(self, i: int) -> Color:
        return self.colors[i]

    def __add__(self, other: "WordLike") -> "ColoredWord":
        return ColoredWord(self.colors + as_word(other).colors)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ColoredWord) and self.colors == other.colors

    def __hash__(self) -> int:
        return hash(self.colors)

    def __repr__(self) -> str:
        return f"ColoredWord({self.text!r})"


WordLike = Union[ColoredWord, str]


def as_word(word: WordLike) -> ColoredWord:
    """Coerce a string over 'o'/'b' (or a ColoredWord) to a ColoredWord."""
    if isinstance(word, ColoredWord):
        return word
    if isinstance(word, str):
        return ColoredWord.parse(word)
    raise TypeError(f"cannot interpret {word!r} as a colored word")


@total_ordering
class SetPartition:
    """A partition of {1, ..., k} in canonical restricted-growth form.

    ``rgs[i]`` is the block label of point i+1, blocks labeled 0, 1, ...
    in order of first appearance.  Instances are immutable and hashable;
    ordering compares the growth strings lexicographically.
    """

    __slots__ = ("rgs", "_blocks")

    def __init__(self, rgs: Sequence[int]) -> None:
        rgs = tuple(rgs)
        top = 0
        for a in rgs:
            if not isinstance(a, int) or a < 0 or a > top:
                raise ValueError(f"not a restricted-growth string: {rgs!r}")
            if a == top:
                top += 1
        self.rgs = rgs
        self._blocks: tuple[tuple[int, ...], ...] | None = None

    @classmethod
    def from_blocks(
        cls, blocks: Iterable[Iterable[int]], ground_size: int | None = None
    ) -> "SetPartition":
        """Build a partition from blocks of 1-based points, validating cover."""
        blocks = [tuple(sorted(b)) for b in blocks]
        seen: dict[int, int] = {}
        for label, block in enumerate(sorted(blocks)):
            if not block:
                raise ValueError("empty block")
            for x in block:
                if x in seen:
                    raise ValueError(f"point {x} appears in two blocks")
                seen[x] = label
        k = ground_size if ground_size is not None else len(seen)
        if sorted(seen) != list(range(1, k + 1)):
            raise ValueError(f"blocks do not cover {{1,...,{k}}}")
        relabel: dict[int, int] = {}
        rgs = []
        for x in range(1, k + 1):
            lab = seen[x]
            if lab not in relabel:
                relabel[lab] = len(relabel)
            rgs.append(relabel[lab])
        return cls(rgs)

    @property
    def ground_size(self) -> int:
        return len(self.rgs)

    @property
    def block_count(self) -> int:
        return max(self.rgs) + 1 if self.rgs else 0

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Blocks as sorted tuples of 1-based points, ordered by minimum."""
        if self._blocks is None:
            out: list[list[int]] = [[] for _ in range(self.block_count)]
            for pos, label in enumerate(self.rgs, start=1):
                out[label].append(pos)
            self._blocks = tuple(tuple(b) for b in out)
        return self._blocks

    def delta(self, indices: Sequence) -> int:
        """1 if the indices are constant on every block, else 0."""
        if len(indices) != len(self.rgs):
            raise ValueError(
                f"expected {len(self.rgs)} indices, got {len(indices)}"
            )
        first: dict[int, object] = {}
        for label, x in zip(self.rgs, indices):
            prev = first.setdefault(label, x)
            if prev != x:
                return 0
        return 1

    def join(self, other: "SetPartition") -> "SetPartition":
        """The finest partition coarser than both (superposition of blocks)."""
        if len(self.rgs) != len(other.rgs):
            raise ValueError("ground-size mismatch in join")
        k = len(self.rgs)
        parent = list(range(k))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for rgs in (self.rgs, other.rgs):
            first_pos: dict[int, int] = {}
            for pos, label in enumerate(rgs):
                if label in first_pos:
                    a, b = find(first_pos[label]), find(pos)
                    if a != b:
                        parent[b] = a
                else:
                    first_pos[label] = pos
        relabel: dict[int, int] = {}
        out = []
        for pos in range(k):
            root = find(pos)
            if root not in relabel:
                relabel[root] = len(relabel)
            out.append(relabel[root])
        return SetPartition(out)

    def is_pairing(self) -> bool:
        """True when every block has exactly two points."""
        return len(self.rgs) == 2 * self.block_count and all(
            len(b) == 2 for b in self.blocks
        )

    def is_color_matching(self, word: WordLike) -> bool:
        """True for a pairing whose every pair joins one white and one black leg."""
        word = as_word(word)
        if len(word) != len(self.rgs):
            raise ValueError("word length does not match ground size")
        if not self.is_pairing():
            return False
        return all(word[a - 1] != word[b - 1] for a, b in self.blocks)

    def is_noncrossing(self) -> bool:
        """Stack scan: no a<b<c<d with a,c in one block and b,d in another."""
        last: dict[int, int] = {}
        for pos, label in enumerate(self.rgs):
            last[label] = pos
        stack: list[int] = []
        opened: set[int] = set()
        for pos, label in enumerate(self.rgs):
            if label not in opened:
                opened.add(label)
                stack.append(label)
            elif stack[-1] != label:
                return False
            if last[label] == pos:
                stack.pop()
        return True

    def to_text(self) -> str:
        """Blocks joined by '|': digit runs for ground size <= 9, else commas."""
        if self.ground_size <= 9:
            return "|".join("".join(str(x) for x in b) for b in self.blocks)
        return "|".join(",".join(str(x) for x in b) for b in self.blocks)

    @classmethod
    def from_text(cls, text: str, ground_size: int | None = None) -> "SetPartition":
        if text == "":
            return cls(())
        blocks = []
        for part in text.split("|"):
            if "," in part:
                blocks.append([int(x) for x in part.split(",")])
            else:
                blocks.append([int(ch) for ch in part])
        return cls.from_blocks(blocks, ground_size)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SetPartition) and self.rgs == other.rgs

    def __lt__(self, other: "SetPartition") -> bool:
        return self.rgs < other.rgs

    def __hash__(self) -> int:
        return hash(self.rgs)

    def __repr__(self) -> str:
        return f"SetPartition({self.to_text()!r})"


class CategoryId(enum.Enum):
    """The six easy partition categories."""

    S = "S"
    O = "O"
    U = "U"
    S_PLUS = "S+"
    O_PLUS = "O+"
    U_PLUS = "U+"

    @classmethod
    def parse(cls, text: str) -> "CategoryId":
        try:
            return cls(text)
        except ValueError:
            names = ", ".join(c.value for c in cls)
            raise ValueError(f"unknown category {text!r}; expected one of {names}") from None

    @property
    def is_free(self) -> bool:
        return self in (CategoryId.S_PLUS, CategoryId.O_PLUS, CategoryId.U_PLUS)

    @property
    def color_sensitive(self) -> bool:
        """Only the unitary-type categories read leg colors."""
        return self in (CategoryId.U, CategoryId.U_PLUS)

    @property
    def free_version(self) -> "CategoryId":
        return _FREE_OF[self]

    @property
    def classical_version(self) -> "CategoryId":
        return _CLASSICAL_OF[self]

    def __repr__(self) -> str:
        return f"CategoryId({self.value!r})"


_FREE_OF = {
    CategoryId.S: CategoryId.S_PLUS,
    CategoryId.O: CategoryId.O_PLUS,
    CategoryId.U: CategoryId.U_PLUS,
    CategoryId.S_PLUS: CategoryId.S_PLUS,
    CategoryId.O_PLUS: CategoryId.O_PLUS,
    CategoryId.U_PLUS: CategoryId.U_PLUS,
}
_CLASSICAL_OF = {
    CategoryId.S: CategoryId.S,
    CategoryId.O: CategoryId.O,
    CategoryId.U: CategoryId.U,
    CategoryId.S_PLUS: CategoryId.S,
    CategoryId.O_PLUS: CategoryId.O,
    CategoryId.U_PLUS: CategoryId.U,
}

CategoryLike = Union[CategoryId, str]


def as_category(category: CategoryLike) -> CategoryId:
    if isinstance(category, CategoryId):
        return category
    if isinstance(category, str):
        return CategoryId.parse(category)
    raise TypeError(f"cannot interpret {category!r} as a category")


def _iter_rgs(k: int) -> Iterator[tuple[int, ...]]:
    """All restricted-growth strings of length k, in lexicographic order."""

    def rec(prefix: list[int], top: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for a in range(top + 1):
            prefix.append(a)
            yield from rec(prefix, top + 1 if a == top else top)
            prefix.pop()

    yield from rec([], 0)


def is_member(category: CategoryLike, word: WordLike, partition: SetPartition) -> bool:
    """Membership of a partition in the category's set for the given word."""
    category = as_category(category)
    word = as_word(word)
    if partition.ground_size != len(word):
        raise ValueError("partition ground size does not match word length")
    if category is CategoryId.S:
        return True
    if category is CategoryId.S_PLUS:
        return partition.is_noncrossing()
    if category is CategoryId.O:
        return partition.is_pairing()
    if category is CategoryId.O_PLUS:
        return partition.is_pairing() and partition.is_noncrossing()
    if category is CategoryId.U:
        return partition.is_color_matching(word)
    return partition.is_color_matching(word) and partition.is_noncrossing()


@lru_cache(maxsize=None)
def _enumerate(category: CategoryId, key: "int | str") -> tuple[SetPartition, ...]:
    word = ColoredWord.parse(key) if isinstance(key, str) else ColoredWord.parse("o" * key)
    return tuple(
        p
        for rgs in _iter_rgs(len(word))
        for p in (SetPartition(rgs),)
        if is_member(category, word, p)
    )


def enumerate_partitions(category: CategoryLike, word: WordLike) -> list[SetPartition]:
    """The category's partition set for the word, in canonical order.

    Deterministic: lexicographic on the restricted-growth encoding.  The
    empty word yields exactly the empty partition, for every category.
    """
    category = as_category(category)
    word = as_word(word)
    key = word.text if category.color_sensitive else len(word)
    return list(_enumerate(category, key))


def kernel_partition(values: Sequence) -> SetPartition:
    """The partition of positions grouping equal values (kernel of a tuple)."""
    labels: dict[object, int] = {}
    rgs = []
    for v in values:
        if v not in labels:
            labels[v] = len(labels)
        rgs.append(labels[v])
    return SetPartition(rgs)

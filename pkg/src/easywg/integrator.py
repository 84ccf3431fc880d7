"""Haar-state moments of easy quantum groups via the exact Weingarten kernel."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_linalg import get_weingarten
from .partitions import (
    CategoryId,
    CategoryLike,
    ColoredWord,
    SetPartition,
    WordLike,
    as_category,
    as_word,
    enumerate_partitions,
)


@dataclass(frozen=True)
class GroupSpec:
    """An easy compact quantum group: category plus matrix size."""

    category: CategoryId
    dimension: int

    def __post_init__(self):
        object.__setattr__(self, "category", as_category(self.category))
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse "CATEGORY:N", e.g. "O+:4"."""
        try:
            cat, dim = text.rsplit(":", 1)
            return cls(as_category(cat), int(dim))
        except (ValueError, TypeError):
            raise ValueError(f"cannot parse group spec {text!r}") from None

    @property
    def text(self) -> str:
        return f"{self.category.value}:{self.dimension}"


@dataclass(frozen=True)
class IndexSet:
    """A nonempty sorted set of coordinate indices within {1, ..., N}."""

    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(self.members)))
        if not members:
            raise ValueError("index set must be nonempty")
        if members[0] < 1:
            raise ValueError("index set entries must be >= 1")
        object.__setattr__(self, "members", members)

    @classmethod
    def parse(cls, text: str) -> "IndexSet":
        return cls(tuple(int(x) for x in text.split(",")))

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def text(self) -> str:
        return ",".join(str(x) for x in self.members)


@dataclass(frozen=True)
class MomentQuery:
    """A colored monomial in the matrix coordinates: word, row and column indices."""

    word: ColoredWord
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", as_word(self.word))
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        if len(self.rows) != len(self.word) or len(self.cols) != len(self.word):
            raise ValueError("rows/cols length must equal word length")


def _check_bounds(indices: Sequence[int], n: int, what: str) -> None:
    for x in indices:
        if not 1 <= x <= n:
            raise ValueError(f"{what} index {x} out of range 1..{n}")


def group_moment(group: GroupSpec, query: MomentQuery) -> Fraction:
    """Haar integral of the colored coordinate monomial over the group.

    Weingarten sum over pairs of partitions in the category's set for the
    word, weighting each pair by whether the row and column indices fit.
    The degree-0 monomial integrates to 1.
    """
    _check_bounds(query.rows, group.dimension, "row")
    _check_bounds(query.cols, group.dimension, "column")
    wg = get_weingarten(group.category, query.word, group.dimension)
    index = wg.index
    rows_fit = [p.delta(query.rows) for p in index]
    cols_fit = [p.delta(query.cols) for p in index]
    num = 0
    numerators = wg.numerators
    for i, a in enumerate(rows_fit):
        if not a:
            continue
        row = numerators[i]
        num += sum(row[j] for j, b in enumerate(cols_fit) if b)
    return Fraction(num, wg.denominator)


def product_group_moment(
    groups: Sequence[GroupSpec], queries: Sequence[MomentQuery]
) -> Fraction:
    """Moment of a product group, one query per factor, all sharing one word.

    The Haar measure of a product is the product measure, and the double
    partition-tuple sum factorizes accordingly; this computes the product
    of the factor moments, which is exactly that sum.
    """
    if len(groups) != len(queries):
        raise ValueError("one query per factor is required")
    if not groups:
        raise ValueError("at least one factor is required")
    word = queries[0].word
    for q in queries[1:]:
        if q.word != word:
            raise ValueError("all factor queries must share one colored word")
    value = Fraction(1)
    for g, q in zip(groups, queries):
        value *= group_moment(g, q)
    return value


def k_vector(
    category: CategoryLike, word: WordLike, m: int
) -> dict[SetPartition, Fraction]:
    """Rescaled index-set kernel: sigma -> m ** (number of blocks of sigma).

    Equals the sum of delta_sigma over all tuples drawn from an index set
    of size m; the square-root normalization of the unscaled coordinates
    is reattached only at output boundaries.
    """
    if m < 1:
        raise ValueError("index-set size must be >= 1")
    return {
        p: Fraction(m**p.block_count)
        for p in enumerate_partitions(category, word)
    }

"""Truncated-character moments and moment-level limit laws.

The truncated character of a diagonal-mode space sums the first T diagonal
coordinates; its rescaled moments are exact rationals at finite size and
converge to partition-counting generating sums, which is where the
classical/free moment correspondence becomes visible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .partitions import (
    CategoryId,
    CategoryLike,
    Color,
    ColoredWord,
    WordLike,
    as_category,
    as_word,
    enumerate_partitions,
)
from .spaces import SpaceSpec, _kernel


@dataclass(frozen=True)
class CharacterQuery:
    """Moment query for the rescaled truncated character of a space.

    The space must be in diagonal mode; a single-factor space qualifies,
    its subset index set playing the role of J.
    """

    space: SpaceSpec
    truncation: int
    word: ColoredWord

    def __post_init__(self):
        object.__setattr__(self, "word", as_word(self.word))
        bound = min(f.dimension for f in self.space.factors)
        if not 1 <= self.truncation <= bound:
            raise ValueError(f"truncation must lie in 1..{bound}")


def char_moment_exact(query: CharacterQuery) -> Fraction:
    """Exact moment of sqrt(M) times the truncated character at the word.

    Sum over tuples of factor partitions (pi, sigma) of
    T^{|join pi|} M^{|join sigma|} prod_r W_r(pi_r, sigma_r); rational.
    """
    kern = _kernel(query.space, query.word)
    if kern.empty:
        return Fraction(0)
    t = query.truncation
    num = 0
    for pos, combo in enumerate(itertools.product(*kern.dlists)):
        j = combo[0]
        for p in combo[1:]:
            j = j.join(p)
        num += t**j.block_count * kern.values[pos]
    return Fraction(num, kern.denominator)


def char_moment_asymptotic(
    categories: Sequence[CategoryLike], word: WordLike, t: Fraction
) -> Fraction:
    """Large-size limit of the rescaled character moment: sum of t^{|pi|}
    over the intersection of the categories' partition sets for the word."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be > 0")
    cats = [as_category(c) for c in categories]
    if not cats:
        raise ValueError("at least one category is required")
    word = as_word(word)
    common = set(enumerate_partitions(cats[0], word))
    for c in cats[1:]:
        common &= set(enumerate_partitions(c, word))
    return sum((t**p.block_count for p in common), Fraction(0))


_LAW_KINDS = {
    "poisson": (CategoryId.S, "plain"),
    "free-poisson": (CategoryId.S_PLUS, "plain"),
    "gaussian": (CategoryId.O, "plain"),
    "semicircle": (CategoryId.O_PLUS, "plain"),
    "classical-matching": (CategoryId.U, "alternating"),
    "free-matching": (CategoryId.U_PLUS, "alternating"),
}


@dataclass(frozen=True)
class LimitLaw:
    """A moment-level limit law: counting kind plus a positive parameter t."""

    kind: str
    t: Fraction

    def __post_init__(self):
        if self.kind not in _LAW_KINDS:
            raise ValueError(
                f"unknown law {self.kind!r}; expected one of {sorted(_LAW_KINDS)}"
            )
        object.__setattr__(self, "t", Fraction(self.t))
        if self.t <= 0:
            raise ValueError("t must be > 0")

    @property
    def category(self) -> CategoryId:
        return _LAW_KINDS[self.kind][0]


def _law_word(kind: str, k: int) -> ColoredWord:
    if _LAW_KINDS[kind][1] == "alternating":
        return ColoredWord(
            (Color.WHITE if i % 2 == 0 else Color.BLACK) for i in range(k)
        )
    return ColoredWord((Color.WHITE,) * k)


def limit_law_moments(law: LimitLaw, max_k: int) -> list[Fraction]:
    """Moments m_1 .. m_max_k of the law: m_k = sum over the category's
    partition set of t^{|pi|}.

    Plain kinds use the all-white word; matching kinds use the alternating
    word, the reading under which unitary-type moments are nonzero.
    """
    out = []
    for k in range(1, max_k + 1):
        word = _law_word(law.kind, k)
        parts = enumerate_partitions(law.category, word)
        out.append(sum((law.t**p.block_count for p in parts), Fraction(0)))
    return out


@dataclass(frozen=True)
class BpRow:
    k: int
    classical: Fraction
    free: Fraction


def bp_compare(
    classical_category: CategoryLike, t: Fraction, max_k: int
) -> list[BpRow]:
    """Classical-versus-free moment table: t^{|pi|} summed over the
    classical category's set and over its noncrossing restriction."""
    cat = as_category(classical_category)
    if cat.is_free:
        raise ValueError("bp_compare takes a classical category (S, O or U)")
    t = Fraction(t)
    rows = []
    for k in range(1, max_k + 1):
        word = _law_word("classical-matching" if cat is CategoryId.U else "poisson", k)
        classical = sum(
            (t**p.block_count for p in enumerate_partitions(cat, word)), Fraction(0)
        )
        free = sum(
            (t**p.block_count for p in enumerate_partitions(cat.free_version, word)),
            Fraction(0),
        )
        rows.append(BpRow(k, classical, free))
    return rows


@dataclass(frozen=True)
class ProfileRow:
    ambient_dimension: int
    truncation: int
    t: Fraction
    exact: Fraction
    asymptotic: Fraction
    difference: Fraction


def convergence_profile(
    entries: Sequence[tuple[SpaceSpec, int]], word: WordLike
) -> list[ProfileRow]:
    """Exact versus asymptotic rescaled character moments along a family.

    Each entry is (space, T); the limit parameter is t = T.M / N with N the
    ambient dimension, and the difference column is |exact - asymptotic|.
    """
    word = as_word(word)
    rows = []
    for space, t_rank in entries:
        exact = char_moment_exact(CharacterQuery(space, t_rank, word))
        t = Fraction(t_rank * space.m, space.ambient_dimension)
        asym = char_moment_asymptotic(
            [f.category for f in space.factors], word, t
        )
        rows.append(
            ProfileRow(
                space.ambient_dimension, t_rank, t, exact, asym, abs(exact - asym)
            )
        )
    return rows

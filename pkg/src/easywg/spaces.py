"""Affine homogeneous spaces over easy quantum groups.

A space is a product of easy-group factors together with an index set:
an arbitrary subset of {1, ..., N} for a single factor, or a diagonal set
parametrized by J over the smallest factor dimension for products.  This
module holds the presets, the defining relation families, exact moment
evaluation in the rescaled coordinates (sqrt(M) times the standard ones,
keeping every value rational), and relation verification in expectation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .exact_linalg import get_weingarten
from .integrator import GroupSpec, IndexSet
from .partitions import (
    CategoryId,
    Color,
    ColoredWord,
    SetPartition,
    WordLike,
    as_category,
    as_word,
    enumerate_partitions,
    kernel_partition,
)


@dataclass(frozen=True)
class SpaceSpec:
    """Factors plus index set.

    With one factor the index set is an arbitrary subset of the coordinate
    range; with several factors it is the diagonal parameter J, i.e. the
    actual ambient index set is {(c, ..., c) | c in J}, and J must sit
    inside {1, ..., min of the factor dimensions}.
    """

    factors: tuple[GroupSpec, ...]
    index: IndexSet

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("a space needs at least one factor")
        bound = min(f.dimension for f in self.factors)
        limit = self.factors[0].dimension if len(self.factors) == 1 else bound
        if self.index.members[-1] > limit:
            raise ValueError(f"index set exceeds {{1,...,{limit}}}")

    @property
    def m(self) -> int:
        return self.index.size

    @property
    def ambient_dimension(self) -> int:
        n = 1
        for f in self.factors:
            n *= f.dimension
        return n

    @property
    def is_product(self) -> bool:
        return len(self.factors) > 1

    @property
    def index_mode(self) -> str:
        return "diagonal" if self.is_product else "subset"

    @property
    def text(self) -> str:
        body = "x".join(f.text for f in self.factors)
        tag = "J" if self.is_product else "I"
        return f"{body}/{tag}={self.index.text}"

    def coordinates(self) -> Iterator:
        """All coordinate labels: ints for one factor, tuples for products."""
        if not self.is_product:
            yield from range(1, self.factors[0].dimension + 1)
        else:
            ranges = [range(1, f.dimension + 1) for f in self.factors]
            yield from itertools.product(*ranges)

    def validate_indices(self, indices: Sequence, length: int) -> tuple:
        indices = tuple(indices)
        if len(indices) != length:
            raise ValueError(f"expected {length} indices, got {len(indices)}")
        if not self.is_product:
            for x in indices:
                if isinstance(x, tuple):
                    raise ValueError("single-factor space queried with tuple indices")
                if not 1 <= x <= self.factors[0].dimension:
                    raise ValueError(f"index {x} out of range")
        else:
            s = len(self.factors)
            for x in indices:
                if not isinstance(x, tuple) or len(x) != s:
                    raise ValueError(
                        "product space requires one index tuple per leg, "
                        f"with {s} components; got {x!r}"
                    )
                for comp, f in zip(x, self.factors):
                    if not 1 <= comp <= f.dimension:
                        raise ValueError(f"index component {comp} out of range")
        return indices


_PRESET_NAMES = (
    "free-complex-sphere",
    "free-real-sphere",
    "classical-sphere",
    "group-as-space",
    "column-space",
)


def preset(name: str, *params) -> SpaceSpec:
    """The named space with its parameters.

    free-complex-sphere(N); free-real-sphere(N);
    classical-sphere(category O|U, N); group-as-space(category, N);
    column-space(category, N, M with M <= N).
    """
    if name == "free-complex-sphere":
        (n,) = params
        return SpaceSpec((GroupSpec(CategoryId.U_PLUS, int(n)),), IndexSet((1,)))
    if name == "free-real-sphere":
        (n,) = params
        return SpaceSpec((GroupSpec(CategoryId.O_PLUS, int(n)),), IndexSet((1,)))
    if name == "classical-sphere":
        cat, n = params
        cat = as_category(cat)
        if cat not in (CategoryId.O, CategoryId.U):
            raise ValueError("classical-sphere takes category O or U")
        return SpaceSpec((GroupSpec(cat, int(n)),), IndexSet((1,)))
    if name == "group-as-space":
        cat, n = params
        n = int(n)
        g = GroupSpec(as_category(cat), n)
        return SpaceSpec((g, g), IndexSet(tuple(range(1, n + 1))))
    if name == "column-space":
        cat, n, m = params
        n, m = int(n), int(m)
        if m > n:
            raise ValueError("column-space requires M <= N")
        cat = as_category(cat)
        return SpaceSpec(
            (GroupSpec(cat, n), GroupSpec(cat, m)),
            IndexSet(tuple(range(1, m + 1))),
        )
    raise ValueError(f"unknown preset {name!r}; expected one of {_PRESET_NAMES}")


def parse_space(text: str) -> SpaceSpec:
    """Parse either the factor grammar or a preset invocation.

    Factor grammar: "O+:5/I=1,2" for a single factor, "O:4xO:2/J=1,2" for
    a diagonal product.  Presets: "free-real-sphere:5",
    "classical-sphere:U:3", "group-as-space:O:3", "column-space:O+:4:2".
    """
    head = text.split(":", 1)[0]
    if head in _PRESET_NAMES:
        parts = text.split(":")
        return preset(parts[0], *parts[1:])
    if "/" not in text:
        raise ValueError(f"cannot parse space {text!r}")
    body, index_part = text.split("/", 1)
    factors = tuple(GroupSpec.parse(p) for p in body.split("x"))
    tag, _, members = index_part.partition("=")
    if tag not in ("I", "J") or not members:
        raise ValueError(f"cannot parse index set in {text!r}")
    if tag == "J" and len(factors) == 1:
        pass  # single-factor diagonal and subset modes coincide
    if tag == "I" and len(factors) > 1:
        raise ValueError("products only support diagonal index sets (J=...)")
    return SpaceSpec(factors, IndexSet.parse(members))


# ---------------------------------------------------------------------------
# Moment kernels.
#
# For a word w the kernel of a space is the tensor, over tuples of factor
# partitions pi = (pi_1, ..., pi_s), of
#     y[pi] = sum_sigma M^{|sigma_1 v ... v sigma_s|} prod_r W_r(pi_r, sigma_r)
# so that the rescaled moment at indices i is  sum_pi delta_pi(i) y[pi],
# a truncated-character moment is  sum_pi T^{|v pi|} y[pi],  and relation
# verification contracts y with counting matrices.  Kernels are memoized:
# they depend only on the factor list, M, and (for color-sensitive factor
# categories) the word's colors.


@dataclass(frozen=True)
class _Kernel:
    dlists: tuple[tuple[SetPartition, ...], ...]
    shape: tuple[int, ...]
    values: tuple[int, ...]  # flat, row-major over the shape
    denominator: int

    @property
    def empty(self) -> bool:
        return not self.values


_KERNELS: dict = {}


def _word_key(space: SpaceSpec, word: ColoredWord) -> "str | int":
    if any(f.category.color_sensitive for f in space.factors):
        return word.text
    return len(word)


def _contract_axis(
    flat: "list[int] | tuple[int, ...]",
    shape: Sequence[int],
    axis: int,
    matrix: Sequence[Sequence[int]],
) -> tuple[list[int], tuple[int, ...]]:
    """Replace axis by matrix rows: out[..,a,..] = sum_b matrix[a][b] flat[..,b,..]."""
    n_old = shape[axis]
    n_new = len(matrix)
    outer = 1
    for d in shape[:axis]:
        outer *= d
    inner = 1
    for d in shape[axis + 1 :]:
        inner *= d
    out = [0] * (outer * n_new * inner)
    for o in range(outer):
        base_in = o * n_old * inner
        base_out = o * n_new * inner
        for a in range(n_new):
            row = matrix[a]
            dst = base_out + a * inner
            for b in range(n_old):
                coeff = row[b]
                if not coeff:
                    continue
                src = base_in + b * inner
                for i in range(inner):
                    out[dst + i] += coeff * flat[src + i]
    new_shape = tuple(shape[:axis]) + (n_new,) + tuple(shape[axis + 1 :])
    return out, new_shape


def _kernel(space: SpaceSpec, word: ColoredWord) -> _Kernel:
    key = (space.factors, space.m, _word_key(space, word))
    hit = _KERNELS.get(key)
    if hit is not None:
        return hit
    dlists = tuple(
        tuple(enumerate_partitions(f.category, word)) for f in space.factors
    )
    shape = tuple(len(d) for d in dlists)
    if any(n == 0 for n in shape):
        kern = _Kernel(dlists, shape, (), 1)
        _KERNELS[key] = kern
        return kern
    m = space.m
    joins: list[int] = []
    for combo in itertools.product(*dlists):
        j = combo[0]
        for p in combo[1:]:
            j = j.join(p)
        joins.append(m**j.block_count)
    den = 1
    flat: list[int] = joins
    cur_shape: tuple[int, ...] = shape
    for axis, f in enumerate(space.factors):
        wg = get_weingarten(f.category, word, f.dimension)
        den *= wg.denominator
        flat, cur_shape = _contract_axis(flat, cur_shape, axis, wg.numerators)
    kern = _Kernel(dlists, shape, tuple(flat), den)
    _KERNELS[key] = kern
    return kern


def _factor_components(space: SpaceSpec, indices: tuple) -> list[tuple]:
    if not space.is_product:
        return [indices]
    return [tuple(x[r] for x in indices) for r in range(len(space.factors))]


def _moment_from_kernel(space: SpaceSpec, kern: _Kernel, indices: tuple) -> Fraction:
    if kern.empty:
        return Fraction(0)
    comps = _factor_components(space, indices)
    fits = [
        [p.delta(comp) for p in dlist]
        for dlist, comp in zip(kern.dlists, comps)
    ]
    num = 0
    for pos, combo in enumerate(itertools.product(*[range(n) for n in kern.shape])):
        if all(fit[i] for fit, i in zip(fits, combo)):
            num += kern.values[pos]
    return Fraction(num, kern.denominator)


def space_moment(space: SpaceSpec, word: WordLike, indices: Sequence) -> Fraction:
    """Rescaled moment of a coordinate monomial over the space.

    Coordinates are h_i = sqrt(M) x_i, which makes every moment rational;
    the unscaled moment is this value times M^(-k/2).  For product spaces
    each index is a tuple with one component per factor.
    """
    word = as_word(word)
    indices = space.validate_indices(indices, len(word))
    return _moment_from_kernel(space, _kernel(space, word), indices)


# ---------------------------------------------------------------------------
# Relations.


@dataclass(frozen=True)
class Relation:
    """One defining relation: sum over delta-fitting indices of the word
    monomial equals M ** join_blocks in rescaled coordinates (that is,
    M ** (join_blocks - k/2) unscaled)."""

    word: ColoredWord
    partitions: tuple[SetPartition, ...]
    join_blocks: int

    @property
    def k(self) -> int:
        return len(self.word)


def _all_words(max_k: int) -> Iterator[ColoredWord]:
    for k in range(max_k + 1):
        for colors in itertools.product((Color.WHITE, Color.BLACK), repeat=k):
            yield ColoredWord(colors)


def _relation_tuples(space: SpaceSpec, word: ColoredWord) -> list[tuple[SetPartition, ...]]:
    dlists = [enumerate_partitions(f.category, word) for f in space.factors]
    if any(not d for d in dlists):
        return []
    return list(itertools.product(*dlists))


def relation_set(space: SpaceSpec, max_k: int) -> list[Relation]:
    """All defining relations for words of length <= max_k.

    One relation per colored word and per tuple of factor partitions; the
    right-hand side exponent is the block count of the superposition join.
    """
    if max_k < 0:
        raise ValueError("max_k must be >= 0")
    out = []
    for word in _all_words(max_k):
        for combo in _relation_tuples(space, word):
            j = combo[0]
            for p in combo[1:]:
                j = j.join(p)
            out.append(Relation(word, combo, j.block_count))
    return out


@dataclass(frozen=True)
class RelationCheck:
    relation: Relation
    monomial_word: ColoredWord
    monomial_indices: tuple
    ok: bool
    lhs: "Fraction | None" = None  # recorded on failure only
    rhs: "Fraction | None" = None


@dataclass
class VerificationReport:
    space: SpaceSpec
    max_k: int
    test_degree: int
    checks: list[RelationCheck]

    @property
    def failures(self) -> list[RelationCheck]:
        return [c for c in self.checks if not c.ok]

    @property
    def all_passed(self) -> bool:
        return not self.failures


def _constrained_delta_count(
    head: SetPartition, full: SetPartition, tail: tuple, n: int
) -> int:
    """Number of head tuples in {1..n}^k fitting `head`, with the tail of the
    concatenated tuple pinned to `tail`, that also fit `full` on k+d legs."""
    k = head.ground_size
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for block in head.blocks:
        lead = block[0] - 1
        for x in block[1:]:
            union(lead, x - 1)
    forced: list[tuple[int, object]] = []
    for block in full.blocks:
        head_legs = [p - 1 for p in block if p <= k]
        tail_vals = [tail[p - k - 1] for p in block if p > k]
        if tail_vals:
            v = tail_vals[0]
            if any(w != v for w in tail_vals[1:]):
                return 0
            if head_legs:
                forced.append((head_legs[0], v))
        for a in head_legs[1:]:
            union(head_legs[0], a)
    values: dict[int, object] = {}
    for leg, v in forced:
        root = find(leg)
        if root in values:
            if values[root] != v:
                return 0
        else:
            values[root] = v
    roots = {find(x) for x in range(k)}
    free = sum(1 for r in roots if r not in values)
    return n**free


_LHS_CACHE: dict = {}


def _lhs_vector(
    space: SpaceSpec,
    e_word: ColoredWord,
    f_word: ColoredWord,
    rep_indices: tuple,
    kern_w: _Kernel,
) -> list[int]:
    """Scaled LHS integrals, one per relation tuple of e_word, against the
    test monomial at rep_indices (only its per-factor equality pattern
    matters, so results are cached per pattern)."""
    comps = _factor_components(space, rep_indices)
    if kern_w.empty:
        n_rel = 1
        for f in space.factors:
            n_rel *= len(enumerate_partitions(f.category, e_word))
        return [0] * n_rel
    flat = list(kern_w.values)
    shape = kern_w.shape
    for axis, f in enumerate(space.factors):
        heads = enumerate_partitions(f.category, e_word)
        fulls = kern_w.dlists[axis]
        c = [
            [
                _constrained_delta_count(h, w, comps[axis], f.dimension)
                for w in fulls
            ]
            for h in heads
        ]
        flat, shape = _contract_axis(flat, shape, axis, c)
    return flat


def verify_relations(space: SpaceSpec, max_k: int, test_degree: int) -> VerificationReport:
    """Check every relation in expectation against every test monomial.

    For a relation with left side L (a delta-weighted sum of degree-k
    monomials) and right side a power of M, and for each monomial m of
    degree <= test_degree, the exact identity  integral(L . m) =
    RHS . integral(m)  is evaluated in rescaled coordinates; failures are
    reported with both exact values.
    """
    checks: list[RelationCheck] = []
    m_big = Fraction(space.m)
    for e_word in _all_words(max_k):
        relations = [
            Relation(e_word, combo, _join_blocks(combo))
            for combo in _relation_tuples(space, e_word)
        ]
        if not relations:
            continue
        e_key = _word_key(space, e_word)
        for f_word in _all_words(test_degree):
            f_key = _word_key(space, f_word)
            kern_w = _kernel(space, e_word + f_word)
            kern_f = _kernel(space, f_word)
            rhs_cache: dict = {}
            lhs_cache: dict = {}
            for j in itertools.product(space.coordinates(), repeat=len(f_word)):
                pattern = tuple(
                    kernel_partition(comp).rgs
                    for comp in _factor_components(space, j)
                )
                if pattern not in lhs_cache:
                    global_key = (space.factors, space.m, e_key, f_key, pattern)
                    vec = _LHS_CACHE.get(global_key)
                    if vec is None:
                        vec = _lhs_vector(space, e_word, f_word, j, kern_w)
                        _LHS_CACHE[global_key] = vec
                    lhs_cache[pattern] = vec
                    rhs_cache[pattern] = _moment_from_kernel(space, kern_f, j)
                lvec = lhs_cache[pattern]
                m_j = rhs_cache[pattern]
                for pos, rel in enumerate(relations):
                    lhs = Fraction(lvec[pos], kern_w.denominator)
                    rhs = m_big**rel.join_blocks * m_j
                    ok = lhs == rhs
                    checks.append(
                        RelationCheck(
                            rel, f_word, j, ok,
                            None if ok else lhs, None if ok else rhs,
                        )
                    )
    return VerificationReport(space, max_k, test_degree, checks)


def _join_blocks(combo: tuple[SetPartition, ...]) -> int:
    j = combo[0]
    for p in combo[1:]:
        j = j.join(p)
    return j.block_count

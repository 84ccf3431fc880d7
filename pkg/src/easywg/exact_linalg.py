"""Exact rational matrices indexed by partition sets.

Gram matrices of partition vectors, their exact (generalized) inverses in
the Weingarten role, and a fraction-free solver.  All values are ints or
fractions.Fraction; no floating point enters this module.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

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

ExactScalar = Fraction

Matrix = Sequence[Sequence]


def format_scalar(x) -> str:
    """Canonical "p/q" form with q > 0, denominator always explicit."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_scalar(text: str) -> Fraction:
    return Fraction(text)


class SingularMatrixError(ValueError):
    """Raised by solve_inverse on singular input; .row is the first dependent row (0-based)."""

    def __init__(self, row: int):
        self.row = row
        super().__init__(
            f"singular matrix: row {row} is a linear combination of rows 0..{row - 1}"
        )


def _first_dependent_row(matrix: Matrix) -> int:
    """Index of the first row lying in the span of the rows before it."""
    pivots: list[tuple[int, list[Fraction]]] = []
    for idx, row in enumerate(matrix):
        r = [Fraction(x) for x in row]
        for col, prow in pivots:
            if r[col]:
                f = r[col]
                r = [a - f * b for a, b in zip(r, prow)]
        for col, a in enumerate(r):
            if a:
                pivots.append((col, [x / a for x in r]))
                break
        else:
            return idx
    raise ValueError("matrix has full row rank")


def solve_inverse(matrix: Matrix) -> list[list[Fraction]]:
    """Exact inverse of a nonsingular square matrix.

    Fraction-free Bareiss (Montante) elimination on an integer row-scaling
    of the input; the only divisions are the exact ones of the scheme plus
    the final division by the determinant.  Raises SingularMatrixError
    naming the first dependent row.
    """
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix is not square")
    if n == 0:
        return []
    aug: list[list[int]] = []
    for i, row in enumerate(matrix):
        fr = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        left = [int(x * den) for x in fr]
        right = [0] * n
        right[i] = den
        aug.append(left + right)
    prev = 1
    width = 2 * n
    for col in range(n):
        if aug[col][col] == 0:
            for r in range(col + 1, n):
                if aug[r][col] != 0:
                    aug[col], aug[r] = aug[r], aug[col]
                    break
            else:
                raise SingularMatrixError(_first_dependent_row(matrix))
        p = aug[col][col]
        pivot_row = aug[col]
        for r in range(n):
            if r == col:
                continue
            f = aug[r][col]
            row_r = aug[r]
            new_row = []
            for j in range(width):
                q, rem = divmod(p * row_r[j] - f * pivot_row[j], prev)
                if rem:
                    raise ArithmeticError("inexact division in Bareiss step")
                new_row.append(q)
            aug[r] = new_row
        prev = p
    d = prev
    return [[Fraction(aug[i][n + j], d) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class GramMatrix:
    """Inner products of partition vectors: entries N^{|pi v sigma|}."""

    category: CategoryId
    word: ColoredWord
    dimension: int
    index: tuple[SetPartition, ...]
    entries: tuple[tuple[int, ...], ...]


def gram_matrix(category: CategoryLike, word: WordLike, dimension: int) -> GramMatrix:
    """Gram matrix over the category's partition set for the word.

    Entry (pi, sigma) is dimension ** (number of blocks of the join), the
    exhaustive inner product of the two 0/1 partition vectors.
    """
    category = as_category(category)
    word = as_word(word)
    if dimension < 1:
        raise ValueError("dimension must be >= 1")
    index = tuple(enumerate_partitions(category, word))
    n = len(index)
    entries = [[0] * n for _ in range(n)]
    for i in range(n):
        entries[i][i] = dimension ** index[i].block_count
        for j in range(i + 1, n):
            v = dimension ** index[i].join(index[j]).block_count
            entries[i][j] = v
            entries[j][i] = v
    return GramMatrix(category, word, dimension, index, tuple(tuple(r) for r in entries))


@dataclass(frozen=True)
class WeingartenMatrix:
    """Generalized inverse of a Gram matrix, supported on a basis subset.

    ``numerators[i][j] / denominator`` is the entry at positions i, j of the
    full index; rows and columns outside ``basis`` are zero.  Restricted to
    basis x basis it is the exact inverse of the Gram restriction.
    """

    source: GramMatrix
    basis: tuple[int, ...]
    denominator: int
    numerators: tuple[tuple[int, ...], ...]

    @property
    def index(self) -> tuple[SetPartition, ...]:
        return self.source.index

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(self.numerators[i][j], self.denominator)

    @property
    def entries(self) -> list[list[Fraction]]:
        d = self.denominator
        return [[Fraction(x, d) for x in row] for row in self.numerators]


def weingarten_matrix(gram: GramMatrix) -> WeingartenMatrix:
    """Invert a Gram matrix, falling back to a canonical generalized inverse.

    The index is scanned in canonical order and a row is kept exactly when
    it increases the rank; since Gram matrices are positive semidefinite,
    the rank test is the vanishing of the Schur complement scalar against
    the rows already kept (equal to the Bareiss pivot, a ratio of leading
    principal minors of the restriction).  The kept block is inverted
    incrementally, so an invertible input yields its exact inverse with
    basis equal to the full index.
    """
    g = gram.entries
    n = len(g)
    basis: list[int] = []
    inv: list[list[Fraction]] = []
    for cand in range(n):
        col = [g[b][cand] for b in basis]
        u = [sum(row[j] * col[j] for j in range(len(col))) for row in inv]
        s = Fraction(g[cand][cand]) - sum(c * x for c, x in zip(col, u))
        if s < 0:
            raise ValueError("input is not a positive semidefinite Gram matrix")
        if s == 0:
            continue
        m = len(basis)
        new_inv = [
            [inv[i][j] + u[i] * u[j] / s for j in range(m)] + [-u[i] / s]
            for i in range(m)
        ]
        new_inv.append([-u[j] / s for j in range(m)] + [Fraction(1) / s])
        inv = new_inv
        basis.append(cand)
    den = 1
    for row in inv:
        for x in row:
            den = lcm(den, x.denominator)
    numerators = [[0] * n for _ in range(n)]
    for bi, i in enumerate(basis):
        for bj, j in enumerate(basis):
            numerators[i][j] = int(inv[bi][bj] * den)
    return WeingartenMatrix(
        gram, tuple(basis), den, tuple(tuple(r) for r in numerators)
    )


def _gram_products_hold(gram: GramMatrix, wg: WeingartenMatrix) -> bool:
    """Check G.W.G == G exactly, in integer arithmetic."""
    g = gram.entries
    a = wg.numerators
    den = wg.denominator
    n = len(g)
    if len(a) != n:
        return False
    ag = [
        [sum(a[i][k] * g[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    for i in range(n):
        for j in range(n):
            if sum(g[i][k] * ag[k][j] for k in range(n)) != den * g[i][j]:
                return False
    return True


_MEMO: dict = {}
_DISK_DIR: str | None = None


def set_disk_cache(directory: "str | None") -> None:
    """Enable (or disable with None) the on-disk Weingarten record store."""
    global _DISK_DIR
    _DISK_DIR = directory
    if directory is not None:
        os.makedirs(directory, exist_ok=True)


def clear_memo() -> None:
    _MEMO.clear()


def _cache_key(category: CategoryId, word: ColoredWord, dimension: int):
    # Color-blind categories share one record per word length.
    wkey = word.text if category.color_sensitive else "o" * len(word)
    return (category.value, wkey, dimension)


def _record_path(key) -> str:
    cat, wkey, dim = key
    safe = cat.replace("+", "p")
    return os.path.join(_DISK_DIR, f"wg_{safe}_{wkey or 'e'}_{dim}.json")


def _to_record(key, wg: WeingartenMatrix) -> dict:
    return {
        "category": key[0],
        "word": key[1],
        "dimension": key[2],
        "basis": list(wg.basis),
        "entries": [[format_scalar(Fraction(x, wg.denominator)) for x in row]
                    for row in wg.numerators],
    }


def _from_record(record: dict, gram: GramMatrix) -> "WeingartenMatrix | None":
    try:
        basis = tuple(int(b) for b in record["basis"])
        rows = [[parse_scalar(x) for x in row] for row in record["entries"]]
    except (KeyError, ValueError, TypeError):
        return None
    n = len(gram.index)
    if len(rows) != n or any(len(r) != n for r in rows):
        return None
    den = 1
    for row in rows:
        for x in row:
            den = lcm(den, x.denominator)
    numerators = tuple(tuple(int(x * den) for x in row) for row in rows)
    wg = WeingartenMatrix(gram, basis, den, numerators)
    if not _gram_products_hold(gram, wg):
        return None
    return wg


def get_weingarten(
    category: CategoryLike, word: WordLike, dimension: int
) -> WeingartenMatrix:
    """Memoized Weingarten matrix for (category, word, dimension).

    The in-process cache is shared and its writes are idempotent, so
    concurrent use is safe.  When a disk directory is configured, records
    are re-verified against a freshly built Gram matrix (G.W.G = G) before
    being trusted.
    """
    category = as_category(category)
    word = as_word(word)
    key = _cache_key(category, word, dimension)
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    gram = gram_matrix(category, ColoredWord.parse(key[1]), dimension)
    wg = None
    if _DISK_DIR is not None:
        path = _record_path(key)
        if os.path.exists(path):
            try:
                with open(path) as fh:
                    record = json.load(fh)
            except (OSError, json.JSONDecodeError):
                record = None
            if record is not None:
                wg = _from_record(record, gram)
    if wg is None:
        wg = weingarten_matrix(gram)
        if _DISK_DIR is not None:
            fd, tmp = tempfile.mkstemp(dir=_DISK_DIR, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(_to_record(key, wg), fh)
            os.replace(tmp, _record_path(key))
    _MEMO[key] = wg
    return wg

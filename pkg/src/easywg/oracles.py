"""Independent ground-truth generators.

Exhaustive integration over the permutation group, Monte Carlo sampling of
Haar-distributed orthogonal/unitary matrices, and the standard counting
recurrences.  Nothing here touches the Weingarten machinery: these are the
brute-force sides of the dual-route checks.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .integrator import IndexSet, MomentQuery
from .partitions import CategoryId, WordLike, as_category, as_word

_MAX_EXHAUSTIVE = 8


@lru_cache(maxsize=None)
def _consistent_permutations(n: int, constraints: frozenset) -> int:
    """Count permutations g of {1..n} with g(j) = i for every (j, i) pair."""
    count = 0
    for perm in itertools.permutations(range(1, n + 1)):
        if all(perm[j - 1] == i for j, i in constraints):
            count += 1
    return count


def sn_exhaustive_moment(n: int, query: MomentQuery) -> Fraction:
    """Average of the coordinate monomial over all n! permutation matrices.

    Entries are 0/1 reals, so colors are irrelevant; the monomial is 1
    exactly when the permutation maps every column index to its row index.
    """
    if n > _MAX_EXHAUSTIVE:
        raise ValueError(f"exhaustive enumeration capped at n <= {_MAX_EXHAUSTIVE}")
    for x in query.rows + query.cols:
        if not 1 <= x <= n:
            raise ValueError(f"index {x} out of range 1..{n}")
    constraints = frozenset(zip(query.cols, query.rows))
    return Fraction(
        _consistent_permutations(n, constraints), math.factorial(n)
    )


@lru_cache(maxsize=None)
def _image_hit_count(n: int, members: tuple, needed: frozenset) -> int:
    count = 0
    for perm in itertools.permutations(range(1, n + 1)):
        image = {perm[b - 1] for b in members}
        if needed <= image:
            count += 1
    return count


def sn_exhaustive_space_moment(
    n: int, index_set: IndexSet, word: WordLike, indices
) -> Fraction:
    """Average over permutations of the rescaled-coordinate monomial.

    The rescaled coordinate h_i sums row i of the permutation matrix over
    the index-set columns, so it is the indicator that i lies in the image
    of the index set; the monomial is the indicator that all queried
    indices do.
    """
    if n > _MAX_EXHAUSTIVE:
        raise ValueError(f"exhaustive enumeration capped at n <= {_MAX_EXHAUSTIVE}")
    word = as_word(word)
    indices = tuple(indices)
    if len(indices) != len(word):
        raise ValueError("indices length must equal word length")
    for x in indices:
        if not 1 <= x <= n:
            raise ValueError(f"index {x} out of range 1..{n}")
    if index_set.members[-1] > n:
        raise ValueError("index set exceeds the coordinate range")
    count = _image_hit_count(n, index_set.members, frozenset(indices))
    return Fraction(count, math.factorial(n))


@dataclass(frozen=True)
class SampleReport:
    """A Monte Carlo estimate with its standard error and provenance."""

    estimate: float
    standard_error: float
    samples: int
    seed: int


def _haar_block(kind: str, n: int, seed: int, block_index: int, size: int) -> np.ndarray:
    """One block of Haar matrices, deterministically derived from (seed, block)."""
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(block_index,)))
    if kind == "U":
        a = (rng.standard_normal((size, n, n)) + 1j * rng.standard_normal((size, n, n)))
        a /= np.sqrt(2.0)
    else:
        a = rng.standard_normal((size, n, n))
    q, r = np.linalg.qr(a)
    d = np.einsum("...ii->...i", r)
    # The diagonal sign/phase correction is what makes the law exactly Haar;
    # raw QR output is not Haar-distributed.
    denom = np.abs(d)
    denom[denom == 0.0] = 1.0
    q *= (d / denom)[:, None, :]
    return q


def haar_mc_moment(
    group: "CategoryId | str",
    n: int,
    query: MomentQuery,
    samples: int,
    seed: int,
    threads: int = 1,
    block_size: int = 50_000,
) -> SampleReport:
    """Monte Carlo estimate of a classical O_N/U_N Haar moment.

    Matrices are sampled by QR-orthonormalization of an i.i.d. Gaussian
    matrix with the diagonal sign (orthogonal) or phase (unitary)
    correction; the monomial conjugates entries at black legs and the real
    part is averaged.  Per-block sub-seeds make the result deterministic
    for a given (seed, samples), independent of thread count.
    """
    kind = as_category(group)
    if kind is CategoryId.O:
        code = "O"
    elif kind is CategoryId.U:
        code = "U"
    else:
        raise ValueError("Monte Carlo sampling is available for O and U only")
    if samples < 10_000:
        raise ValueError("at least 10^4 samples are required")
    for x in query.rows + query.cols:
        if not 1 <= x <= n:
            raise ValueError(f"index {x} out of range 1..{n}")

    blocks = []
    start = 0
    idx = 0
    while start < samples:
        size = min(block_size, samples - start)
        blocks.append((idx, size))
        start += size
        idx += 1

    legs = list(zip(query.word, query.rows, query.cols))

    def run_block(block) -> tuple[float, float]:
        block_index, size = block
        q = _haar_block(code, n, seed, block_index, size)
        vals = np.ones(size, dtype=complex if code == "U" else float)
        for color, i, j in legs:
            entry = q[:, i - 1, j - 1]
            if color.value == "b":
                entry = np.conjugate(entry)
            vals = vals * entry
        re = np.real(vals)
        return float(np.sum(re)), float(np.sum(re * re))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_block, blocks))
    else:
        results = [run_block(b) for b in blocks]
    total = math.fsum(r[0] for r in results)
    total_sq = math.fsum(r[1] for r in results)
    estimate = total / samples
    if samples > 1:
        var = max(total_sq - samples * estimate * estimate, 0.0) / (samples - 1)
    else:
        var = 0.0
    return SampleReport(estimate, math.sqrt(var / samples), samples, seed)


def bell_number(k: int) -> int:
    """Bell number via the Bell triangle."""
    if k < 0:
        raise ValueError("k must be >= 0")
    row = [1]
    for _ in range(k):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def catalan_number(k: int) -> int:
    """Catalan number from the binomial closed form."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return math.comb(2 * k, k) // (k + 1)


def double_factorial_odd(m: int) -> int:
    """(2m - 1)!!, the number of pairings of 2m points."""
    if m < 0:
        raise ValueError("m must be >= 0")
    out = 1
    for x in range(1, 2 * m, 2):
        out *= x
    return out


def poisson_moments(t: Fraction, max_k: int) -> list[Fraction]:
    """Moments m_1 .. m_max_k of a Poisson(t) variable via the binomial
    recurrence m_{k+1} = t * sum_j C(k, j) m_j."""
    t = Fraction(t)
    ms = [Fraction(1)]
    for k in range(max_k):
        ms.append(t * sum(math.comb(k, j) * ms[j] for j in range(k + 1)))
    return ms[1:]


def counting_oracle(kind: str, k: int, t: Fraction = Fraction(1)) -> Fraction:
    """Dispatcher used by the command line: one named count or moment."""
    if k > 12 or k < 0:
        raise ValueError("k must lie in 0..12")
    if kind == "bell":
        return Fraction(bell_number(k))
    if kind == "catalan":
        return Fraction(catalan_number(k))
    if kind == "double-factorial":
        return Fraction(double_factorial_odd(k))
    if kind == "poisson-recurrence":
        if k == 0:
            return Fraction(1)
        return poisson_moments(Fraction(t), k)[-1]
    raise ValueError(
        "unknown counting oracle; expected bell, catalan, double-factorial "
        "or poisson-recurrence"
    )

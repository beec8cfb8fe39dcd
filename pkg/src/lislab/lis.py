"""Exact longest weakly increasing subsequence, by two independent routes.

"Increasing" means non-decreasing throughout: an increasing subsequence is a
concatenation of runs of equal letters with strictly increasing run values.

Route 1 (:func:`lis_length`) is a forward dynamic program over an m-slot tail
array: slot ``r`` holds the best subsequence length ending with letter ``r``,
and each incoming letter extends the best slot at or below it.  Route 2
(:func:`lis_length_by_counts`) evaluates the prefix-count identity

    ``LI_n = a_m(n) + max over 0 <= k_1 <= ... <= k_{m-1} <= n of
    sum_r S_r(k_r)``

where ``a_r(k)`` counts occurrences of letter ``r`` in the first ``k``
positions and ``S_r = a_r - a_{r+1}``; the ordered max collapses to a chain of
running maxima.  The two share no code path, so their agreement on random
words is a strong exactness check.  All arithmetic is 64-bit integer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .alphabet import ProbVector, Word

__all__ = [
    "LetterOutOfRangeError",
    "EmptyWordError",
    "PrefixCounts",
    "prefix_counts",
    "lis_length",
    "lis_length_by_counts",
    "centered_lis_statistic",
]


class LetterOutOfRangeError(ValueError):
    """A letter exceeds the declared alphabet size."""


class EmptyWordError(ValueError):
    """Operation requires a nonempty word."""


@numba.njit(cache=True)
def _lis_tail_array(letters: np.ndarray, m: int) -> int:  # pragma: no cover
    best = np.zeros(m + 1, dtype=np.int64)
    for idx in range(letters.shape[0]):
        x = letters[idx]
        b = 0
        for r in range(1, x + 1):
            if best[r] > b:
                b = best[r]
        best[x] = b + 1
    out = 0
    for r in range(1, m + 1):
        if best[r] > out:
            out = best[r]
    return out


def lis_length(w: Word) -> int:
    """Length of the longest weakly increasing subsequence of ``w``."""
    if len(w) == 0:
        return 0
    return int(_lis_tail_array(w.letters, w.max_letter))


@dataclass(frozen=True)
class PrefixCounts:
    """Prefix occurrence counts of a word over an ``m``-letter alphabet.

    ``a[r-1][k]`` counts letter ``r`` among the first ``k`` positions
    (``a[.][0] == 0``); ``s[r-1] = a[r-1] - a[r]`` for ``r = 1..m-1``.
    """

    a: np.ndarray  # (m, n+1) int64
    s: np.ndarray  # (m-1, n+1) int64


def prefix_counts(w: Word, m: int) -> PrefixCounts:
    """Occurrence counts ``a_r(k)`` and differences ``S_r(k)`` for ``w``."""
    if len(w) and w.max_letter > m:
        raise LetterOutOfRangeError(
            f"letter {w.max_letter} exceeds alphabet size {m}"
        )
    n = len(w)
    a = np.zeros((m, n + 1), dtype=np.int64)
    for r in range(1, m + 1):
        np.cumsum(w.letters == r, out=a[r - 1, 1:])
    s = a[:-1] - a[1:]
    return PrefixCounts(a=a, s=s)


def lis_length_by_counts(w: Word, m: int) -> int:
    """LIS length from prefix counts and a chain of running maxima.

    Exact integer arithmetic; must agree with :func:`lis_length` on every
    word over an ``m``-letter alphabet.
    """
    if len(w) == 0:
        return 0
    pc = prefix_counts(w, m)
    if m == 1:
        return int(pc.a[0, -1])
    # max over ordered prefixes: chain running maxima across the S rows
    g = np.maximum.accumulate(pc.s[0])
    for r in range(1, m - 1):
        g = np.maximum.accumulate(g + pc.s[r])
    return int(pc.a[m - 1, -1] + g[-1])


def centered_lis_statistic(w: Word, p: ProbVector) -> float:
    """The normalized fluctuation ``(LIS - p_max * n) / sqrt(n)``."""
    n = len(w)
    if n == 0:
        raise EmptyWordError("statistic requires a nonempty word")
    return (lis_length(w) - p.p_max * n) / np.sqrt(n)

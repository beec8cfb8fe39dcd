"""Letter distributions and random words over ordered alphabets.

Letters are positive integer ranks ``1, 2, ...`` standing for an implicit
ordered alphabet; only the order matters downstream.  Finite alphabets carry
an explicit probability vector, countable ones a finite head plus a geometric
tail scaled to the remaining mass.  Word sampling uses inverse-CDF lookup on a
precomputed cumulative table (closed-form inversion for the geometric tail),
so identical seeds give identical words on any platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SUM_TOL",
    "NonPositiveEntryError",
    "SumNotOneError",
    "ProbVector",
    "Word",
    "InfiniteLetterDist",
    "validate_probs",
    "sample_word",
    "cap_word",
    "reduce_word",
    "sample_infinite_word",
]

# Absolute tolerance on |sum(p) - 1|: loose enough for decimal literals,
# tight enough to reject genuinely wrong vectors.
SUM_TOL = 1e-12


class NonPositiveEntryError(ValueError):
    """A probability entry lies outside the open interval (0, 1)."""


class SumNotOneError(ValueError):
    """Probability entries do not sum to 1 within tolerance."""


@dataclass(frozen=True)
class ProbVector:
    """A finite letter distribution with its derived extremal structure.

    Attributes
    ----------
    probs : tuple of float
        Letter probabilities, all strictly inside (0, 1), summing to 1.
    p_max : float
        Largest entry.
    multiplicity_k : int
        Number of letters attaining ``p_max``.
    maximizers : frozenset of int
        1-based indices of the maximal letters.
    i_star : frozenset of int
        1-based indices of the non-maximal letters (complement of
        ``maximizers`` in ``{1..m}``); these are the letters whose time
        arguments collapse in the limiting max functional.
    """

    probs: tuple[float, ...]
    p_max: float = field(init=False)
    multiplicity_k: int = field(init=False)
    maximizers: frozenset[int] = field(init=False)
    i_star: frozenset[int] = field(init=False)

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.probs)
        if not probs:
            raise ValueError("probability vector must be nonempty")
        for p in probs:
            if not (0.0 < p < 1.0):
                raise NonPositiveEntryError(
                    f"entries must lie strictly inside (0, 1), got {p!r}"
                )
        total = math.fsum(probs)
        if abs(total - 1.0) > SUM_TOL:
            raise SumNotOneError(f"entries sum to {total!r}, not 1")
        p_max = max(probs)
        maximizers = frozenset(r for r, p in enumerate(probs, start=1) if p == p_max)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "p_max", p_max)
        object.__setattr__(self, "multiplicity_k", len(maximizers))
        object.__setattr__(self, "maximizers", maximizers)
        object.__setattr__(
            self,
            "i_star",
            frozenset(range(1, len(probs) + 1)) - maximizers,
        )

    @property
    def m(self) -> int:
        """Alphabet size."""
        return len(self.probs)


def validate_probs(raw) -> ProbVector:
    """Validate raw probabilities and populate the derived fields.

    Ties for the maximum are detected by exact float equality, so tied
    entries must be written identically (e.g. ``[0.4, 0.4, 0.2]``).
    """
    return ProbVector(tuple(raw))


@dataclass(frozen=True)
class Word:
    """A finite sequence of positive integer letters."""

    letters: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.letters, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("letters must be one-dimensional")
        if arr.size and arr.min() < 1:
            raise ValueError("letters must be >= 1")
        arr.setflags(write=False)
        object.__setattr__(self, "letters", arr)

    def __len__(self) -> int:
        return int(self.letters.size)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def max_letter(self) -> int:
        """Largest letter present (0 for the empty word)."""
        return int(self.letters.max()) if len(self) else 0


def _cumulative_table(probs: tuple[float, ...]) -> np.ndarray:
    cum = np.cumsum(np.asarray(probs, dtype=np.float64))
    cum[-1] = 1.0  # uniform draws are in [0, 1); guard the last bucket
    return cum


def sample_word(p: ProbVector, n: int, rng: np.random.Generator) -> Word:
    """Sample ``n`` iid letters with marginals ``p`` by inverse CDF."""
    if n < 0:
        raise ValueError("n must be >= 0")
    u = rng.random(n)
    letters = np.searchsorted(_cumulative_table(p.probs), u, side="right") + 1
    return Word(letters.astype(np.int64))


def cap_word(w: Word, m_cap: int) -> Word:
    """Replace every letter above ``m_cap`` by ``m_cap`` (same length)."""
    if m_cap < 1:
        raise ValueError("m_cap must be >= 1")
    return Word(np.minimum(w.letters, m_cap))


def reduce_word(w: Word, m_cap: int) -> Word:
    """Keep only the letters ``<= m_cap``, preserving order."""
    if m_cap < 1:
        raise ValueError("m_cap must be >= 1")
    return Word(w.letters[w.letters <= m_cap])


@dataclass(frozen=True)
class InfiniteLetterDist:
    """Countable letter distribution: explicit head + scaled geometric tail.

    Letters ``1..h`` carry the probabilities in ``head_probs``; the remaining
    mass ``M = 1 - sum(head_probs)`` is spread over letters ``h+1, h+2, ...``
    as ``P(h + j) = M * (1 - q) * q**(j-1)``.  All letters get strictly
    positive mass and the tail is strictly decreasing, so the maximal
    probability and its multiplicity are always well defined.
    """

    head_probs: tuple[float, ...]
    tail_ratio: float
    p_max: float = field(init=False)
    multiplicity_k: int = field(init=False)

    def __post_init__(self) -> None:
        head = tuple(float(p) for p in self.head_probs)
        q = float(self.tail_ratio)
        for p in head:
            if not (0.0 < p < 1.0):
                raise NonPositiveEntryError(
                    f"head entries must lie strictly inside (0, 1), got {p!r}"
                )
        if not (0.0 < q < 1.0):
            raise ValueError("tail_ratio must lie strictly inside (0, 1)")
        tail_mass = 1.0 - math.fsum(head)
        if not (0.0 < tail_mass < 1.0 or (not head and tail_mass == 1.0)):
            raise SumNotOneError(
                f"head mass {math.fsum(head)!r} leaves no valid tail mass"
            )
        first_tail = tail_mass * (1.0 - q)
        head_max = max(head) if head else 0.0
        if head:
            if first_tail == head_max:
                raise ValueError(
                    "tail must not tie the maximal head probability; "
                    "adjust head_probs or tail_ratio"
                )
            if first_tail > head_max:
                p_max, k = first_tail, 1
            else:
                p_max = head_max
                k = sum(1 for p in head if p == head_max)
        else:
            p_max, k = first_tail, 1
        object.__setattr__(self, "head_probs", head)
        object.__setattr__(self, "tail_ratio", q)
        object.__setattr__(self, "p_max", float(p_max))
        object.__setattr__(self, "multiplicity_k", int(k))

    @property
    def head_size(self) -> int:
        return len(self.head_probs)

    @property
    def tail_mass(self) -> float:
        return 1.0 - math.fsum(self.head_probs)

    def prob(self, r: int) -> float:
        """Probability of letter ``r``."""
        if r < 1:
            raise ValueError("letters start at 1")
        h = self.head_size
        if r <= h:
            return self.head_probs[r - 1]
        q = self.tail_ratio
        return self.tail_mass * (1.0 - q) * q ** (r - h - 1)

    def head_mass_up_to(self, m: int) -> float:
        """Total probability of letters ``1..m`` (closed form for the tail)."""
        h = self.head_size
        if m <= h:
            return math.fsum(self.head_probs[:m])
        return 1.0 - self.tail_mass * self.tail_ratio ** (m - h)


def sample_infinite_word(
    d: InfiniteLetterDist, n: int, rng: np.random.Generator
) -> Word:
    """Sample ``n`` iid letters from a countable distribution.

    Head letters come from the cumulative table; a draw landing in the tail
    mass is mapped by closed-form geometric inversion.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    u = rng.random(n)
    h = d.head_size
    letters = np.empty(n, dtype=np.int64)
    if h:
        head_cum = np.cumsum(np.asarray(d.head_probs, dtype=np.float64))
        head_mass = float(head_cum[-1])
        in_head = u < head_mass
        letters[in_head] = (
            np.searchsorted(head_cum, u[in_head], side="right") + 1
        )
    else:
        head_mass = 0.0
        in_head = np.zeros(n, dtype=bool)
    in_tail = ~in_head
    if in_tail.any():
        # Same boundary as the in_head test, so v lands in [0, 1).
        v = (u[in_tail] - head_mass) / (1.0 - head_mass)
        v = np.clip(v, 0.0, 1.0 - 1e-16)
        j = np.floor(np.log1p(-v) / math.log(d.tail_ratio)).astype(np.int64)
        letters[in_tail] = h + 1 + j
    return Word(letters)

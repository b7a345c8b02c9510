"""Sifting experiments on the multiset of trace^2 - 4 values.

At this scale almost-primality and square-freeness are decided by direct
trial-division factoring; the measured objects are the congruence counts
|A_q|, their exact local expectations beta(q) * |source|, and the resulting
remainder ledger.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, sqrt
from typing import Callable, Iterable

from .arith import is_squarefree, primes_up_to
from .cf import word_to_matrix
from .errors import CapExceededError, InternalInvariantError
from .forms import FormCycle, cycle, is_fundamental, matrix_to_form, reduce_form
from .modular import beta
from .semigroup import (
    BilinearSet,
    SemigroupElement,
    cyclic_classes,
    enumerate_ball,
    trace_multiplicity,
)

MAX_SIFT_SIZE = 20_000_000


@dataclass(frozen=True)
class BallSource:
    """Plain even-word norm ball used as the sifting source."""

    alphabet: int
    norm: float


@dataclass(frozen=True)
class SiftingSequence:
    """Multiset {trace^2 - 4} over a source set, with its norm parameter."""

    values: tuple[tuple[int, int], ...]  # (value, multiplicity), sorted
    source_size: int
    norm_bound: float

    @property
    def T(self) -> float:
        return self.norm_bound * self.norm_bound

    @classmethod
    def from_values(cls, values: Iterable[int], norm_bound: float = 0.0) -> "SiftingSequence":
        counts = Counter(values)
        size = sum(counts.values())
        if not norm_bound:
            norm_bound = sqrt(max(counts) + 4.0) if counts else 0.0
        return cls(tuple(sorted(counts.items())), size, norm_bound)

    def iter_values(self):
        return iter(self.values)


def sift_values(source) -> SiftingSequence:
    """Build the sifting multiset from a bilinear set, a ball, or explicit elements.

    Bilinear sources are streamed: traces of the triple products are formed
    factor-wise, never materialising the product set.
    """
    if isinstance(source, BilinearSet):
        if source.size > MAX_SIFT_SIZE:
            raise CapExceededError(
                f"bilinear set of size {source.size} exceeds {MAX_SIFT_SIZE}; shard the factors"
            )
        counts = Counter(t * t - 4 for t in source.iter_traces())
        return SiftingSequence(tuple(sorted(counts.items())), source.size, source.norm_bound())
    if isinstance(source, BallSource):
        counts: Counter = Counter()
        size = 0
        for e in enumerate_ball(source.alphabet, source.norm):
            t = e.trace
            counts[t * t - 4] += 1
            size += 1
        return SiftingSequence(tuple(sorted(counts.items())), size, float(source.norm))
    elements = [
        e if isinstance(e, SemigroupElement) else SemigroupElement.from_word(e)
        for e in source
    ]
    if not elements:
        raise ValueError("empty sifting source")
    counts = Counter(e.trace * e.trace - 4 for e in elements)
    norm = sqrt(max(e.norm_sq for e in elements))
    return SiftingSequence(tuple(sorted(counts.items())), len(elements), norm)


def A_q(seq: SiftingSequence, q: int) -> int:
    """Total multiplicity of values divisible by q."""
    if q < 1 or not is_squarefree(q):
        raise ValueError(f"modulus must be square-free and positive, got {q}")
    return sum(mult for value, mult in seq.values if value % q == 0)


@dataclass(frozen=True)
class RemainderRow:
    q: int
    count: int
    expected: Fraction  # beta(q) * |source|
    remainder: Fraction  # count - expected


@dataclass(frozen=True)
class RemainderProfile:
    rows: tuple[RemainderRow, ...]
    summary: Fraction  # sum_q |r(q)| / |source|
    source_size: int


def remainder_profile(seq: SiftingSequence, cutoff: int) -> RemainderProfile:
    """Rows (q, |A_q|, beta(q)|source|, r(q)) for all square-free q < cutoff."""
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    rows = []
    total = Fraction(0)
    for q in range(1, cutoff):
        if not is_squarefree(q):
            continue
        count = A_q(seq, q)
        expected = beta(q) * seq.source_size
        r = count - expected
        rows.append(RemainderRow(q, count, expected, r))
        total += abs(r)
    return RemainderProfile(tuple(rows), total / seq.source_size, seq.source_size)


def almost_prime_census(seq: SiftingSequence, z: int) -> int:
    """Count values (with multiplicity) all of whose prime factors exceed z."""
    if z < 2:
        raise ValueError("threshold must be >= 2")
    small = primes_up_to(z)
    count = 0
    for value, mult in seq.values:
        if value >= 2 and all(value % p for p in small):
            count += mult
    return count


def _squarefree_trace(t: int) -> bool:
    # t^2 - 4 = (t-2)(t+2); the gcd of the factors divides 4, so for odd t the
    # product is square-free iff both factors are; for even t, 4 divides it.
    if t % 2 == 0:
        return False
    return is_squarefree(t - 2) and is_squarefree(t + 2)


def squarefree_trace_census(alphabet: int, norm: float) -> int:
    """#{even words in the ball with trace^2 - 4 square-free}."""
    cache: dict[int, bool] = {}
    count = 0
    for e in enumerate_ball(alphabet, norm):
        t = e.trace
        ok = cache.get(t)
        if ok is None:
            ok = cache[t] = _squarefree_trace(t)
        count += ok
    return count


@dataclass(frozen=True)
class DiscriminantRecord:
    t: int
    discriminant: int
    multiplicity: int


def discriminant_census(
    alphabet: int,
    max_T: float,
    min_multiplicity: int | Callable[[int], int] = 1,
) -> list[DiscriminantRecord]:
    """All t <= sqrt(max_T) with t^2 - 4 square-free and a populous trace fiber."""
    if max_T > 1e8:
        raise CapExceededError("max_T capped at 1e8 (t up to 1e4)")
    need = min_multiplicity if callable(min_multiplicity) else (lambda _t: min_multiplicity)
    out = []
    for t in range(3, isqrt(int(max_T)) + 1):
        if not _squarefree_trace(t):
            continue
        m = trace_multiplicity(alphabet, t)
        if m >= need(t):
            d = t * t - 4
            if not is_fundamental(d):
                raise InternalInvariantError(f"square-free t^2-4 must be fundamental: {d}")
            out.append(DiscriminantRecord(t, d, m))
    return out


def class_census(d: int, alphabet: int) -> list[FormCycle]:
    """Distinct form classes realised by trace-t words, t = sqrt(d + 4).

    Each rotation class of the fiber is sent through its matrix's form and
    reduced; the resulting cycles are asserted pairwise distinct.
    """
    t = isqrt(d + 4)
    if t * t != d + 4:
        raise ValueError("discriminant must have the form t^2 - 4")
    cycles = []
    for word in cyclic_classes(alphabet, t):
        cy = cycle(reduce_form(matrix_to_form(word_to_matrix(word))))
        cycles.append(cy)
    if len(set(cycles)) != len(cycles):
        raise InternalInvariantError("distinct rotation classes landed in one cycle")
    return cycles

"""Hausdorff dimension of the bounded-partial-quotient Cantor set.

The set of reals whose partial quotients all lie in {1..A} is covered at
depth k by one cylinder per word; the cylinder of w has exact length
1 / (q_k (q_k + q_{k-1})) in terms of the continuant denominators of w.
The dimension is bracketed by bisecting the depth-k pressure sums against
the bounded-distortion constant

    C(A) = 1 + (sqrt(A^2 + 4A) - A) / 2,

the supremum of 1 + q_{k-1}/q_k over words with digits <= A (attained in the
limit by alternating 1, A, 1, A, ...).  Cylinder lengths satisfy
|I_uv| in [ |I_u||I_v| / C,  |I_u||I_v| * C ], so the depth-k sum pins the
pressure root from both sides:

    root of  sum len^s = C^s   <=  dim  <=  root of  sum len^s = C^-s.

Brackets from depths k and k-1 are intersected.  This is a cylinder-sum
method throughout; no transfer-operator discretisation is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import log, sqrt

import numpy as np

from .cf import check_word, word_to_matrix
from .errors import CapExceededError, InternalInvariantError

DEPTH_BUDGET = 10**7


def cylinder_length(word) -> Fraction:
    """Exact length of the interval of reals [0; word, ...] with arbitrary tails."""
    w = check_word(word)
    if not w:
        raise ValueError("cylinder of the empty word is the whole interval")
    m = word_to_matrix(w)
    q, q_prev = m.a, m.b  # continuant denominators of [0; w]
    return Fraction(1, q * (q + q_prev))


def distortion_constant(alphabet: int) -> float:
    """Sharp bound C with |I_uv| within a factor C of |I_u| * |I_v|."""
    if alphabet < 1:
        raise ValueError("alphabet bound must be >= 1")
    a = alphabet
    return 1.0 + (sqrt(a * a + 4.0 * a) - a) / 2.0


@lru_cache(maxsize=8)
def _length_array(alphabet: int, depth: int) -> np.ndarray:
    """Cylinder lengths of all depth-k words, as float64."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if alphabet**depth > DEPTH_BUDGET:
        raise CapExceededError(
            f"alphabet^depth = {alphabet**depth} exceeds budget {DEPTH_BUDGET}"
        )
    digits = np.arange(1, alphabet + 1, dtype=np.int64)
    q = digits.copy()
    q_prev = np.ones(alphabet, dtype=np.int64)
    for _ in range(depth - 1):
        n = q.shape[0]
        q_rep = np.repeat(q, alphabet)
        qp_rep = np.repeat(q_prev, alphabet)
        dig = np.tile(digits, n)
        q, q_prev = dig * q_rep + qp_rep, q_rep
    return 1.0 / (q.astype(np.float64) * (q + q_prev).astype(np.float64))


def pressure_sum(alphabet: int, depth: int, s: float) -> float:
    """Sum of cylinder_length(w)^s over all depth-k words; strictly decreasing in s."""
    lengths = _length_array(alphabet, depth)
    return float(np.power(lengths, s).sum())


def _root(alphabet: int, depth: int, sign: int, tol: float) -> float:
    """Solve  log pressure_sum(s) = sign * s * log C  for s in [0, 1]."""
    log_c = log(distortion_constant(alphabet))
    lengths = _length_array(alphabet, depth)

    def g(s: float) -> float:
        return log(float(np.power(lengths, s).sum())) - sign * s * log_c

    lo, hi = 0.0, 1.0
    g_lo = g(lo)
    if g_lo == 0.0:
        return 0.0
    if g_lo < 0.0:
        raise InternalInvariantError("pressure not bracketed at s = 0")
    if g(hi) >= 0.0:
        return 1.0  # root beyond 1; clip (dimension never exceeds 1)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class DimensionEstimate:
    alphabet: int
    depth: int
    lower: float
    upper: float

    def __post_init__(self):
        if not (0.0 <= self.lower <= self.upper <= 1.0):
            raise InternalInvariantError("dimension bracket out of order")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower


def estimate(alphabet: int, depth: int, tol: float = 1e-6) -> DimensionEstimate:
    """Bracket the dimension using the pressure sums at depths k-1 and k."""
    if tol < 1e-6:
        raise ValueError("tol below the supported bisection resolution 1e-6")
    depths = [depth] if depth <= 1 else [depth - 1, depth]
    lower, upper = 0.0, 1.0
    for k in depths:
        lower = max(lower, _root(alphabet, k, +1, tol))
        upper = min(upper, _root(alphabet, k, -1, tol))
    if lower > upper + 4 * tol:
        raise InternalInvariantError("depth brackets are inconsistent")
    lower = min(lower, upper)
    return DimensionEstimate(alphabet, depth, lower, min(upper, 1.0))


def asymptote(alphabet: int) -> float:
    """Large-alphabet first-order value 1 - 6 / (pi^2 * A)."""
    return 1.0 - 6.0 / (np.pi**2 * alphabet)

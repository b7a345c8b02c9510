"""Excursion heights of the closed geodesics attached to periodic words.

Each rotation of an even word fixes a reduced quadratic irrational alpha > 1
whose conjugate lies in (-1, 0); the semicircle joining the two has apex
height (alpha - conj) / 2 = sqrt(tr^2 - 4) / (2c).  The largest apex over all
rotations is the cusp-excursion proxy: it is sandwiched between a_max / 2 and
(a_max + 2) / 2, so bounded digits and bounded height are interchangeable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

from .cf import Word, check_word, rotations, word_to_matrix


@dataclass(frozen=True)
class GeodesicProfile:
    period: Word
    rotation_heights: tuple[float, ...]
    max_height: float
    discriminant: int


def _rotation_matrices(word):
    w = check_word(word)
    if not w:
        raise ValueError("empty word")
    if len(w) % 2 != 0:
        raise ValueError("word must have even length (determinant +1)")
    ms = [word_to_matrix(r) for r in rotations(w)]
    if ms[0].trace * ms[0].trace <= 4:
        raise ValueError("non-hyperbolic word")
    return ms


def rotation_heights(word) -> list[float]:
    """Apex heights sqrt(D)/(2c), one per rotation of the word."""
    ms = _rotation_matrices(word)
    d = ms[0].trace * ms[0].trace - 4
    return [sqrt(d) / (2 * m.c) for m in ms]


def max_height(word) -> float:
    return max(rotation_heights(word))


def is_low_lying(word, cutoff: float) -> bool:
    return max_height(word) <= cutoff


def emit_arcs(word) -> list[tuple[float, float]]:
    """(center, radius) of each rotation's semicircle: center (alpha+conj)/2 = P/(2c)."""
    ms = _rotation_matrices(word)
    d = ms[0].trace * ms[0].trace - 4
    return [((m.a - m.d) / (2 * m.c), sqrt(d) / (2 * m.c)) for m in ms]


def geodesic_profile(word) -> GeodesicProfile:
    ms = _rotation_matrices(word)
    d = ms[0].trace * ms[0].trace - 4
    heights = tuple(sqrt(d) / (2 * m.c) for m in ms)
    return GeodesicProfile(tuple(word), heights, max(heights), d)

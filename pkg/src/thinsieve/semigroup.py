"""Enumeration of the bounded-partial-quotient matrix semigroup.

Words over the alphabet {1..A} multiply to nonnegative unimodular matrices;
the determinant-one elements are the even-length words.  Appending any
generator strictly increases the squared Frobenius norm, which justifies the
depth-first pruning used throughout; trace fibers add a second prune on the
least trace attainable by extending a prefix.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .arith import divisors
from .cf import Mat2, Word, canonical_rotation, check_word, word_from_matrix, word_to_matrix
from .errors import CapExceededError, InternalInvariantError
from .modular import sl2_order

DEFAULT_MAX_ELEMENTS = 5_000_000


@dataclass(frozen=True)
class SemigroupElement:
    """A word together with its matrix."""

    word: Word
    matrix: Mat2

    @classmethod
    def from_word(cls, word, alphabet: int | None = None) -> "SemigroupElement":
        w = check_word(word, alphabet)
        return cls(w, word_to_matrix(w))

    @property
    def trace(self) -> int:
        return self.matrix.trace

    @property
    def norm_sq(self) -> int:
        return self.matrix.norm_sq

    def __len__(self) -> int:
        return len(self.word)


def _norm_sq_cap(norm: float) -> int:
    """Integer cap for ||g||^2 <= norm^2 (norms on the grid are exact in floats)."""
    return round(norm * norm)


def iter_ball(
    alphabet: int,
    norm_sq_cap: int,
    parity: str = "even",
    max_elements: int | None = DEFAULT_MAX_ELEMENTS,
) -> Iterator[SemigroupElement]:
    """Yield every word with ||matrix||^2 <= norm_sq_cap, in lexicographic order."""
    if alphabet < 1:
        raise ValueError("alphabet bound must be >= 1")
    if parity not in ("even", "any"):
        raise ValueError("parity must be 'even' or 'any'")
    want_even = parity == "even"
    digits = range(1, alphabet + 1)
    yielded = 0

    def walk(word: Word, a: int, b: int, c: int, d: int) -> Iterator[SemigroupElement]:
        nonlocal yielded
        for g in digits:
            na, nb = g * a + b, a
            nc, nd = g * c + d, c
            if na * na + nb * nb + nc * nc + nd * nd > norm_sq_cap:
                break  # larger digits only grow the norm
            w = word + (g,)
            if not want_even or len(w) % 2 == 0:
                yielded += 1
                if max_elements is not None and yielded > max_elements:
                    raise CapExceededError(
                        f"ball enumeration exceeded {max_elements} elements"
                    )
                yield SemigroupElement(w, Mat2(na, nb, nc, nd))
            yield from walk(w, na, nb, nc, nd)

    yield from walk((), 1, 0, 0, 1)


def enumerate_ball(
    alphabet: int,
    norm: float,
    parity: str = "even",
    max_elements: int | None = DEFAULT_MAX_ELEMENTS,
) -> Iterator[SemigroupElement]:
    """Words whose matrix has Frobenius norm <= norm (closed ball)."""
    return iter_ball(alphabet, _norm_sq_cap(norm), parity, max_elements)


def ball_count(alphabet: int, norm: float, parity: str = "even") -> int:
    """Fast count of the ball, without materialising elements."""
    cap = _norm_sq_cap(norm)
    even = odd = 0
    stack = [(1, 0, 0, 1, 0)]
    while stack:
        a, b, c, d, par = stack.pop()
        npar = par ^ 1
        for g in range(1, alphabet + 1):
            na, nb = g * a + b, a
            nc, nd = g * c + d, c
            if na * na + nb * nb + nc * nc + nd * nd > cap:
                break
            if npar:
                odd += 1
            else:
                even += 1
            stack.append((na, nb, nc, nd, npar))
    if parity == "even":
        return even
    if parity == "any":
        return even + odd
    raise ValueError("parity must be 'even' or 'any'")


class HensleyFit(NamedTuple):
    slope: float
    residual: float
    counts: tuple[tuple[float, int], ...]


def hensley_exponent(alphabet: int, norms: Iterable[float]) -> HensleyFit:
    """Least-squares slope of log(ball count) against log(norm)."""
    grid = sorted(set(float(n) for n in norms))
    if len(grid) < 4:
        raise ValueError("degenerate grid: need at least 4 distinct norms")
    counts = [(n, ball_count(alphabet, n)) for n in grid]
    if any(c == 0 for _, c in counts):
        raise ValueError("degenerate grid: empty ball at smallest norm")
    xs = np.log([n for n, _ in counts])
    ys = np.log([c for _, c in counts])
    (slope, intercept), residual_arr = np.polyfit(xs, ys, 1, full=True)[:2]
    residual = float(residual_arr[0]) if len(residual_arr) else 0.0
    return HensleyFit(float(slope), residual, tuple(counts))


# ---------------------------------------------------------------------------
# trace fibers


def trace_fiber(
    alphabet: int, t: int, max_nodes: int = 20_000_000
) -> list[SemigroupElement]:
    """All even words over {1..alphabet} whose matrix has trace exactly t.

    Prunes a branch once the least trace attainable by any completion exceeds
    t: even extensions of M are bounded below by tr(M [[2,1],[1,1]]) and odd
    prefixes complete to at least tr(M [[1,1],[1,0]]), entrywise positivity
    making both bounds monotone in every digit.
    """
    if t < 3:
        raise ValueError("trace fibers start at t = 3")
    out: list[SemigroupElement] = []
    visited = 0

    def walk(word: Word, a: int, b: int, c: int, d: int) -> None:
        nonlocal visited
        visited += 1
        if visited > max_nodes:
            raise CapExceededError(f"trace fiber search exceeded {max_nodes} nodes")
        child_even = len(word) % 2 == 1
        for g in range(1, alphabet + 1):
            na, nb = g * a + b, a
            nc, nd = g * c + d, c
            if child_even:
                tr = na + nd
                if tr > t:
                    break
                if tr == t:
                    out.append(SemigroupElement(word + (g,), Mat2(na, nb, nc, nd)))
                if 2 * na + nb + nc + nd <= t:
                    walk(word + (g,), na, nb, nc, nd)
            else:
                if na + nb + nc > t:
                    break
                walk(word + (g,), na, nb, nc, nd)

    walk((), 1, 0, 0, 1)
    out.sort(key=lambda e: e.word)
    return out


def trace_multiplicity(alphabet: int, t: int) -> int:
    """#{even words over {1..alphabet} with trace t}."""
    return len(trace_fiber(alphabet, t))


def trace_multiplicity_by_divisors(alphabet: int, t: int) -> int:
    """Independent fiber count: solve a + d = t, bc = ad - 1 over divisor pairs,
    then test semigroup membership by digit peeling."""
    if t < 3:
        raise ValueError("trace fibers start at t = 3")
    count = 0
    for a in range(1, t):
        m = a * (t - a) - 1
        if m < 1:
            continue
        for b in divisors(m):
            w = word_from_matrix(Mat2(a, b, m // b, t - a))
            if w is not None and len(w) % 2 == 0 and w and max(w) <= alphabet:
                count += 1
    return count


def cyclic_classes(alphabet: int, t: int) -> list[Word]:
    """Rotation classes of the trace-t fiber, as lexicographically least rotations."""
    reps = {canonical_rotation(e.word) for e in trace_fiber(alphabet, t)}
    return sorted(reps)


# ---------------------------------------------------------------------------
# fixed-wordlength slices and the bilinear set


@dataclass(frozen=True)
class FixedSlice:
    """The most populous fixed-wordlength slice of a norm ball."""

    label: str
    wordlength: int
    elements: tuple[SemigroupElement, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[SemigroupElement]:
        return iter(self.elements)


def build_fixed_length_ball(alphabet: int, bound: float, label: str = "") -> FixedSlice:
    """Among even wordlengths in the open ball ||g|| < bound, keep the most
    populous one (ties resolved toward the shorter length)."""
    if bound < 3:
        raise ValueError("bound must be >= 3 so the even ball is nonempty")
    cap = ceil(bound * bound) - 1  # strict: ||g|| < bound
    by_length: dict[int, list[SemigroupElement]] = {}
    for e in iter_ball(alphabet, cap, "even"):
        by_length.setdefault(len(e.word), []).append(e)
    if not by_length:
        raise ValueError("empty ball")
    best = max(by_length, key=lambda length: (len(by_length[length]), -length))
    return FixedSlice(label, best, tuple(by_length[best]))


@dataclass(frozen=True)
class AlephSet:
    """Residue-balanced subset of the alphabet-2 semigroup.

    Built by pigeonholing the small ball on its residues mod B, powering the
    popular element to reach the identity class, then translating into every
    class of SL2(Z/B); the union therefore hits all classes mod B equally.
    """

    elements: tuple[SemigroupElement, ...]
    modulus: int
    group_order: int
    base_size: int
    pivot_bound: int
    pilot: SemigroupElement | None
    residue_reps: tuple[SemigroupElement, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[SemigroupElement]:
        return iter(self.elements)


def _residue_representatives(modulus: int) -> list[SemigroupElement]:
    """Short even alphabet-2 words covering every class of SL2(Z/B).

    Breadth-first over the quotient: one representative per residue, extending
    only newly discovered classes, so the work is linear in |SL2(Z/B)|.
    """
    want = sl2_order(modulus)
    steps = [SemigroupElement.from_word((g1, g2)) for g1 in (1, 2) for g2 in (1, 2)]
    found: dict[tuple[int, int, int, int], SemigroupElement] = {}
    frontier: list[SemigroupElement] = [SemigroupElement((), Mat2(1, 0, 0, 1))]
    while frontier and len(found) < want:
        nxt = []
        for e in frontier:
            for s in steps:
                m = e.matrix * s.matrix
                r = m.mod(modulus)
                if r not in found:
                    child = SemigroupElement(e.word + s.word, m)
                    found[r] = child
                    nxt.append(child)
        frontier = nxt
    if len(found) < want:
        raise CapExceededError(f"could not cover SL2(Z/{modulus}) with short words")
    return [found[r] for r in sorted(found)]


def aleph_construct(norm_bound: float, modulus: int = 2) -> AlephSet:
    """Residue-balanced set inside the alphabet-2 ball of norm < norm_bound.

    With B = 1 the construction degenerates to the plain even ball.
    """
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    R = sl2_order(modulus)  # also validates square-freeness
    if modulus == 1:
        cap = ceil(norm_bound * norm_bound) - 1
        els = tuple(iter_ball(2, cap, "even"))
        if not els:
            raise ValueError("ball too small; increase the norm bound")
        return AlephSet(els, 1, 1, len(els), int(norm_bound), None, ())
    reps = _residue_representatives(modulus)
    xmax_sq = max(e.norm_sq for e in reps)
    target = norm_bound * norm_bound
    u = 1
    while (u + 1) ** (2 * R) * xmax_sq <= target:
        u += 1
    base = list(iter_ball(2, u * u - 1, "even"))
    if not base:
        raise ValueError(f"ball too small at pivot {u}; increase the norm bound")
    residues = [e.matrix.mod(modulus) for e in base]
    tally = Counter(residues)
    top = max(tally.values())
    popular = min(r for r, n in tally.items() if n == top)
    pilot = base[residues.index(popular)]
    tail_word = pilot.word * (R - 1)
    tail_matrix = pilot.matrix ** (R - 1)
    elements = []
    for e, r in zip(base, residues):
        if r != popular:
            continue
        stem_word = e.word + tail_word
        stem_matrix = e.matrix * tail_matrix
        for x in reps:
            elements.append(SemigroupElement(stem_word + x.word, stem_matrix * x.matrix))
    for e in elements:
        if e.norm_sq >= target:
            raise InternalInvariantError("constructed element escaped the norm bound")
    return AlephSet(tuple(elements), modulus, R, top, u, pilot, tuple(reps))


def aleph_error(aleph: Iterable[SemigroupElement], q: int) -> float:
    """Worst deviation of the residue distribution of the set from uniform on SL2(Z/q)."""
    elements = list(aleph)
    if not elements:
        raise ValueError("empty set")
    order = sl2_order(q)
    counts = Counter(e.matrix.mod(q) for e in elements)
    n = len(elements)
    worst = Fraction(0)
    for c in counts.values():
        worst = max(worst, abs(Fraction(c, n) - Fraction(1, order)))
    if len(counts) < order:
        worst = max(worst, Fraction(1, order))
    return float(worst)


@dataclass(frozen=True)
class BilinearSet:
    """Triple product Xi * Aleph * Omega, realised lazily.

    Xi and Omega have fixed wordlengths and Aleph lives over the alphabet {1,2},
    so distinct factor triples concatenate to distinct words: the product set
    has exactly |Xi| * |Aleph| * |Omega| elements.
    """

    xi: tuple[SemigroupElement, ...]
    aleph: tuple[SemigroupElement, ...]
    omega: tuple[SemigroupElement, ...]

    def __post_init__(self):
        for name, factor in (("Xi", self.xi), ("Aleph", self.aleph), ("Omega", self.omega)):
            if not factor:
                raise ValueError(f"empty factor {name}")
        if len({len(e.word) for e in self.xi}) != 1:
            raise ValueError("Xi must have a fixed wordlength")
        if len({len(e.word) for e in self.omega}) != 1:
            raise ValueError("Omega must have a fixed wordlength")
        for e in self.aleph:
            if len(e.word) % 2 or (e.word and max(e.word) > 2):
                raise ValueError("Aleph must consist of even alphabet-2 words")

    @property
    def size(self) -> int:
        return len(self.xi) * len(self.aleph) * len(self.omega)

    def __len__(self) -> int:
        return self.size

    def norm_bound(self) -> float:
        """Upper bound on member norms (Frobenius norms are submultiplicative)."""
        parts = [max(e.norm_sq for e in f) for f in (self.xi, self.aleph, self.omega)]
        return float(np.sqrt(float(parts[0]) * parts[1] * parts[2]))

    def iter_elements(self) -> Iterator[SemigroupElement]:
        for mid in self.aleph:
            for right in self.omega:
                tail_w = mid.word + right.word
                tail_m = mid.matrix * right.matrix
                for left in self.xi:
                    yield SemigroupElement(left.word + tail_w, left.matrix * tail_m)

    def iter_traces(self) -> Iterator[int]:
        for mid in self.aleph:
            for right in self.omega:
                t = mid.matrix * right.matrix
                for left in self.xi:
                    m = left.matrix
                    yield m.a * t.a + m.b * t.c + m.c * t.b + m.d * t.d


def _as_elements(factor) -> tuple[SemigroupElement, ...]:
    out = []
    for item in factor:
        if isinstance(item, SemigroupElement):
            out.append(item)
        else:
            out.append(SemigroupElement.from_word(item))
    return tuple(out)


def build_pi(xi, aleph, omega) -> BilinearSet:
    """Assemble the bilinear product set from its three factors.

    Factors may be FixedSlice / AlephSet instances, element sequences, or raw
    word sequences.
    """
    return BilinearSet(_as_elements(xi), _as_elements(aleph), _as_elements(omega))

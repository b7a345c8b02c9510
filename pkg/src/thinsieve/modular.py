"""Exact computations over SL2(Z/q) for square-free q.

Composite moduli are handled prime-by-prime through the CRT, so the cost of
every operation scales with the sum (not the product) of the prime cubes.
Densities are exact rationals; only the exponential sums use floating point.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, tau
from typing import Iterator, NamedTuple

import numpy as np

from .arith import factorize, is_prime, is_squarefree
from .errors import CapExceededError

DEFAULT_MODULUS_CAP = 120


class ResidueMatrix(NamedTuple):
    """Element of SL2(Z/q): entries reduced mod q, det = 1 mod q."""

    a: int
    b: int
    c: int
    d: int


def _check_modulus(q: int, cap: int) -> list[int]:
    if q < 1:
        raise ValueError("modulus must be positive")
    if not is_squarefree(q):
        raise ValueError(f"modulus must be square-free, got {q}")
    if q > cap:
        raise CapExceededError(f"modulus {q} exceeds cap {cap}")
    return sorted(factorize(q))


def sl2_order(q: int) -> int:
    """|SL2(Z/q)| = q^3 prod_{p|q} (1 - 1/p^2) for square-free q."""
    if q < 1:
        raise ValueError("modulus must be positive")
    if not is_squarefree(q):
        raise ValueError(f"modulus must be square-free, got {q}")
    order = 1
    for p in factorize(q):
        order *= p * (p - 1) * (p + 1)
    return order


@lru_cache(maxsize=32)
def _sl2_prime(p: int) -> tuple[tuple[int, int, int, int], ...]:
    """All of SL2(F_p), ascending in (a, b); p rows per nonzero first row."""
    out = []
    for a in range(p):
        for b in range(p):
            if a == 0 and b == 0:
                continue
            if a != 0:
                inv_a = pow(a, p - 2, p) if p > 2 else a
                for c in range(p):
                    out.append((a, b, c, (1 + b * c) * inv_a % p))
            else:
                inv_b = pow(b, p - 2, p) if p > 2 else b
                c = (-inv_b) % p
                for d in range(p):
                    out.append((a, b, c, d))
    return tuple(out)


def sl2_enumerate(q: int, cap: int = DEFAULT_MODULUS_CAP) -> Iterator[ResidueMatrix]:
    """Yield each element of SL2(Z/q) exactly once (CRT product over primes)."""
    primes = _check_modulus(q, cap)
    if q == 1:
        yield ResidueMatrix(0, 0, 0, 0)
        return
    residues = [_sl2_prime(p) for p in primes]
    # CRT basis: e_p = (q/p) * ((q/p)^-1 mod p), so x = sum_p x_p e_p mod q
    basis = []
    for p in primes:
        m = q // p
        basis.append(m * pow(m % p, -1, p))
    for combo in product(*residues):
        a = b = c = d = 0
        for (ap, bp, cp, dp), e in zip(combo, basis):
            a += ap * e
            b += bp * e
            c += cp * e
            d += dp * e
        yield ResidueMatrix(a % q, b % q, c % q, d % q)


@lru_cache(maxsize=32)
def _trace_counts(p: int) -> tuple[int, ...]:
    counts = Counter((a + d) % p for a, b, c, d in _sl2_prime(p))
    return tuple(counts.get(t, 0) for t in range(p))


def beta(q: int, cap: int = 10**6) -> Fraction:
    """Multiplicative local density of the event  trace^2 = 4  on SL2(Z/q).

    At a prime:  beta(p) = ((1 + [p != 2]) / p) * (1 + 1/(p^2 - 1)).
    """
    primes = _check_modulus(q, cap)
    out = Fraction(1)
    for p in primes:
        out *= Fraction(1 + (1 if p != 2 else 0), p) * (1 + Fraction(1, p * p - 1))
    return out


def beta_bruteforce(p: int, cap: int = DEFAULT_MODULUS_CAP) -> Fraction:
    """#{g in SL2(p) : tr(g)^2 = 4 mod p} / |SL2(p)|, by full enumeration."""
    if not is_prime(p):
        raise ValueError(f"expected a prime, got {p}")
    _check_modulus(p, cap)
    counts = _trace_counts(p)
    hits = sum(counts[t] for t in range(p) if (t * t - 4) % p == 0)
    return Fraction(hits, sl2_order(p))


def sqrt4_count(q: int, cap: int = 10**6) -> int:
    """#{t mod q : t^2 = 4 mod q}, counted directly."""
    _check_modulus(q, cap)
    return sum(1 for t in range(q) if (t * t - 4) % q == 0)


def rho_t_bruteforce(p: int, t: int, cap: int = DEFAULT_MODULUS_CAP) -> Fraction:
    """Average over SL2(p) of the complete sum over r != 0 of e_p(r (tr - t)).

    The inner sum is p - 1 on the trace fiber and -1 off it, so the whole
    expression equals (p * #{tr = t} - |SL2(p)|) / |SL2(p)| exactly.
    """
    if not is_prime(p):
        raise ValueError(f"expected a prime, got {p}")
    _check_modulus(p, cap)
    counts = _trace_counts(p)
    fiber = counts[t % p]
    order = sl2_order(p)
    return Fraction(p * fiber - order, order)


def kloosterman(a: int, b: int, p: int) -> float:
    """K(a, b; p) = sum over x != 0 of e_p(a x + b x^{-1}); real by x -> -x symmetry."""
    if not is_prime(p):
        raise ValueError(f"expected a prime, got {p}")
    if (a * b) % p == 0:
        raise ValueError("degenerate Kloosterman sum")
    total = 0.0
    for x in range(1, p):
        inv = pow(x, p - 2, p)
        total += np.cos(tau * ((a * x + b * inv) % p) / p)
    return float(total)


@lru_cache(maxsize=32)
def _sl2_array(p: int) -> np.ndarray:
    return np.array(_sl2_prime(p), dtype=np.int64)


def _charsum_prime(p: int, s: tuple[int, int, int, int]) -> complex:
    arr = _sl2_array(p)
    phase = (arr @ np.array(s, dtype=np.int64)) % p
    return complex(np.exp(2j * np.pi * phase / p).sum())


def sl2_charsum(
    q: int, s: tuple[int, int, int, int], cap: int = DEFAULT_MODULUS_CAP
) -> complex:
    """sum over SL2(Z/q) of e_q(a x + b y + c z + d w) for s = (x, y, z, w).

    Multiplicative in q: computed prime-by-prime with the CRT scaling
    s -> ((q/p)^{-1} mod p) * s.
    """
    if len(tuple(s)) != 4:
        raise ValueError("s must be a 4-vector")
    primes = _check_modulus(q, cap)
    if q == 1:
        return complex(1.0)
    out = complex(1.0)
    for p in primes:
        u = pow((q // p) % p, -1, p)
        sp = tuple((u * x) % p for x in s)
        out *= _charsum_prime(p, sp)
    return out


def sl2_charsum_direct(
    q: int, s: tuple[int, int, int, int], cap: int = DEFAULT_MODULUS_CAP
) -> complex:
    """Reference implementation summing over SL2(Z/q) itself (test oracle)."""
    x, y, z, w = s
    total = 0j
    for g in sl2_enumerate(q, cap):
        phase = (g.a * x + g.b * y + g.c * z + g.d * w) % q
        total += complex(np.exp(2j * np.pi * phase / q))
    return total


def is_primitive_mod(s, q: int) -> bool:
    g = 0
    for x in s:
        g = gcd(g, x % q)
    return gcd(g, q) == 1

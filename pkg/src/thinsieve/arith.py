"""Small integer helpers: primes, factorisation, square-free tests, CRT."""

from __future__ import annotations

from bisect import bisect_right
from math import isqrt

_primes: list[int] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
_sieved_to = 31


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, from a cached sieve."""
    global _primes, _sieved_to
    if n > _sieved_to:
        limit = max(n, 2 * _sieved_to)
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for p in range(2, isqrt(limit) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
        _primes = [i for i, flag in enumerate(sieve) if flag]
        _sieved_to = limit
    return _primes[: bisect_right(_primes, n)]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in primes_up_to(isqrt(n)):
        if n % p == 0:
            return n == p
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division; fine for the desk-scale inputs here."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in primes_up_to(isqrt(n)):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    for p in primes_up_to(isqrt(n)):
        if p * p > n:
            break
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
    return True


def nu(n: int) -> int:
    """Number of distinct prime factors."""
    return len(factorize(n)) if n > 1 else 0


def crt(r1: int, m1: int, r2: int, m2: int) -> int:
    """Unique residue mod m1*m2 matching r1 mod m1 and r2 mod m2 (coprime moduli)."""
    u = pow(m1 % m2, -1, m2)
    return (r1 + m1 * ((r2 - r1) * u % m2)) % (m1 * m2)

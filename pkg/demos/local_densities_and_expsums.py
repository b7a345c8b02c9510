"""Exact local densities on SL2(Z/q) and the exponential sums behind them.

beta(q) is the density of matrices with trace^2 = 4 mod q; it is computed in
closed form and re-derived by brute-force enumeration.  Kloosterman sums and
the full SL2 character sums are checked against their square-root bounds.
"""

import math
import random

from thinsieve import (
    beta,
    beta_bruteforce,
    kloosterman,
    rho_t_bruteforce,
    sl2_charsum,
    sl2_order,
    sqrt4_count,
)

print("=== local densities at primes (closed form == brute force) ===")
print(f"{'p':>3} {'|SL2(p)|':>9} {'beta(p)':>10} {'brute':>10} {'rho_{+2}(p)':>12}")
for p in (2, 3, 5, 7, 11, 13):
    print(
        f"{p:>3} {sl2_order(p):>9} {str(beta(p)):>10} "
        f"{str(beta_bruteforce(p)):>10} {str(rho_t_bruteforce(p, 2)):>12}"
    )

print("\n=== composite moduli (multiplicative) ===")
for q in (6, 15, 30, 105):
    print(f"  beta({q}) = {beta(q)}   sqrt-of-4 count = {sqrt4_count(q)}")

print("\n=== Kloosterman sums vs the Weil bound 2 sqrt(p) ===")
for p in (5, 13, 31, 61, 101):
    worst = max(abs(kloosterman(1, m, p)) for m in range(1, p))
    print(f"  p = {p:>3}: worst |K| = {worst:7.3f}   bound = {2 * math.sqrt(p):7.3f}")

print("\n=== SL2 character sums vs 2 p^(3/2) ===")
rng = random.Random(0)
for p in (5, 7, 11, 13):
    worst = 0.0
    for _ in range(500):
        s = tuple(rng.randrange(p) for _ in range(4))
        if all(x % p == 0 for x in s):
            continue
        worst = max(worst, abs(sl2_charsum(p, s)))
    print(f"  p = {p:>3}: worst |S| = {worst:8.3f}   bound = {2 * p**1.5:8.3f}")

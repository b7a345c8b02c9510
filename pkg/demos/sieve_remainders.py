"""The remainder ledger: congruence counts against exact local expectations.

For the multiset {trace^2 - 4} over a norm ball, |A_q| should track
beta(q) * |ball|; the summed normalised remainder shrinks as the ball grows.
The same multiset feeds the almost-prime and square-free-trace censuses and
the discriminant records behind the low-lying-class table.
"""

from thinsieve import (
    BallSource,
    almost_prime_census,
    ball_count,
    class_census,
    discriminant_census,
    remainder_profile,
    sift_values,
    squarefree_trace_census,
)

print("=== remainder ledger, alphabet 2 ===")
for norm in (1e3, 1e4):
    seq = sift_values(BallSource(2, norm))
    profile = remainder_profile(seq, 100)
    print(f"N = {norm:>7.0f}  |ball| = {seq.source_size:>6}  "
          f"sum_q<100 |r(q)| / size = {float(profile.summary):.4f}")

seq = sift_values(BallSource(2, 1e4))
print("\nsample rows (N = 1e4):")
print(f"{'q':>3} {'A_q':>6} {'beta(q)*size':>16} {'r(q)':>14}")
for row in remainder_profile(seq, 100).rows:
    if row.q in (2, 3, 15, 97):
        print(f"{row.q:>3} {row.count:>6} {str(row.expected):>16} {str(row.remainder):>14}")

print("\n=== censuses over the same ball ===")
for z in (5, 20, 100):
    print(f"  values with no prime factor <= {z:>3}: {almost_prime_census(seq, z)}")
count = squarefree_trace_census(2, 1e4)
total = ball_count(2, 1e4)
print(f"  square-free trace^2 - 4: {count} of {total}  ({count / total:.4f})")

print("\n=== discriminants t^2 - 4 with populous fibers (alphabet 35, t <= 37) ===")
for rec in discriminant_census(35, 1369, min_multiplicity=2):
    print(f"  t = {rec.t:>2}  D = {rec.discriminant:>5}  multiplicity = {rec.multiplicity}")

print("\nclasses realised at D = 1365 by alphabet 35:", len(class_census(1365, 35)))
print("classes realised at D = 1365 by alphabet  2:", len(class_census(1365, 2)))

"""Ball growth of the alphabet-bounded semigroup versus Cantor-set dimension.

The number of even words of Frobenius norm <= N grows like N^(2 delta_A);
we measure the exponent by least squares on a half-decade grid and compare
with the pressure-equation bracket for delta_A, then tabulate the bracket
against the large-alphabet asymptote 1 - 6/(pi^2 A).
"""

from thinsieve import asymptote, ball_count, estimate, hensley_exponent

GRID = [1e3, 10**3.5, 1e4, 10**4.5, 1e5]

print("=== growth of the alphabet-2 ball ===")
for n in GRID:
    print(f"  N = {n:>9.0f}   count = {ball_count(2, n):>7}")
fit = hensley_exponent(2, GRID)
bracket = estimate(2, 14)
print(f"fitted slope           : {fit.slope:.4f}  (residual {fit.residual:.2e})")
print(f"dimension bracket (k=14): [{bracket.lower:.4f}, {bracket.upper:.4f}]")
print(f"2 x midpoint           : {2 * bracket.midpoint:.4f}\n")

print("=== alphabet-1 degenerates to logarithmic growth ===")
flat = hensley_exponent(1, GRID)
print(f"counts {[c for _, c in flat.counts]}, slope {flat.slope:.3f}\n")

print("=== dimension brackets vs the asymptote 1 - 6/(pi^2 A) ===")
print(f"{'A':>3} {'depth':>5} {'lower':>8} {'upper':>8} {'asymptote':>10}")
for alphabet, depth in [(2, 14), (3, 10), (4, 8), (5, 8), (10, 6), (20, 5), (50, 3)]:
    est = estimate(alphabet, depth)
    print(
        f"{alphabet:>3} {depth:>5} {est.lower:8.4f} {est.upper:8.4f} "
        f"{asymptote(alphabet):10.5f}"
    )
print("\n(the bracket widens honestly where the depth budget caps A^k)")

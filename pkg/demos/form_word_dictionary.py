"""Walk the dictionary: periodic words <-> matrices <-> forms <-> closed geodesics.

Reproduces the two showcase discriminants: D = 1365 = 37^2 - 4 with four
classes of wildly different cusp excursion, and D = 1337 with a single class
whose period contains the digit 35.
"""

from thinsieve import (
    Form,
    Surd,
    cf_expand,
    class_cycles,
    count_sign_merged,
    cycle,
    cycle_to_word,
    fixed_point,
    matrix_to_form,
    max_height,
    reduce_form,
    serialize_word,
    word_to_matrix,
)

print("=== D = 1365 = 37^2 - 4 ===")
words = [(1, 35), (5, 7), (1, 1, 1, 11), (1, 1, 1, 2, 1, 2)]
for w in words:
    m = word_to_matrix(w)
    f = matrix_to_form(m)
    alpha = fixed_point(m)
    print(
        f"word {serialize_word(w):<13} trace {m.trace}  form {f}  "
        f"fixed point {alpha}  max height {max_height(w):7.3f}"
    )

cycles = class_cycles(1365)
print(f"\nreduction cycles of 1365: {len(cycles)} (proper classes); "
      f"negation-merged class number: {count_sign_merged(cycles)}")
for cy in cycles:
    print(f"  length {len(cy):>2}  word {serialize_word(cycle_to_word(cy)):<13} "
          f"first form {cy.forms[0]}")

print("\n=== D = 1337 (class number one) ===")
cy = cycle(reduce_form(Form(19, 27, -8)))
word = cycle_to_word(cy)
print(f"cycle length {len(cy)}; period word {serialize_word(word)}")
print(f"the digit 35 forces a high excursion: max height {max_height(word):.3f}")

x = Surd(-27, 1337, 38)
pre, per = cf_expand(x)
print(f"expansion of {x}: preperiod {pre}, period {serialize_word(per)}")

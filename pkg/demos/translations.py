"""Walk one role-logic formula through the fragment translations.

    python3 demos/translations.py
"""

import random

from rolelogic import (
    alternate, check_c2, check_d2, check_sat_bounded, check_valid_bounded,
    coerce_rl2, eval_rl2, four_corner, parse_formula, pretty, rl2_to_d2,
)
from rolelogic.frontend import pretty_structure
from rolelogic.structure import PairEnv, random_structure
from rolelogic.translate import d2_to_c2, ensure_counting_condition

# objects in A with an f-successor are in B
f = coerce_rl2(parse_formula("[ card(>=1, f & A') => B ]"))
print("rl2      ", pretty(f))

d2 = rl2_to_d2(f)
print("d2       ", pretty(d2), check_d2(d2))
c2 = d2_to_c2(ensure_counting_condition(d2))
print("c2       ", pretty(c2), check_c2(c2))
alt = alternate(c2)
print("alternated", pretty(alt))
back = four_corner(f)
print("back     ", pretty(back))

rng = random.Random(1)
for _ in range(200):
    s = random_structure(rng, rng.randint(1, 3), ("A", "B"), ("f",))
    assert eval_rl2(f, s, PairEnv(1, 1)) == eval_rl2(back, s, PairEnv(1, 1))
print("round trip agrees on 200 random structures")

# bounded checks: validity refutes the negation, models come back certified
print("[B] entails it:", check_valid_bounded(parse_formula("[B] => [ card(>=1, f & A') => B ]"), 3).verdict)
r = check_sat_bounded(f, 3, n_min=2)
print("model at size", r.bound, "certified", r.certified)
print(pretty_structure(r.structure))

"""Description logic on top of role logic: subsumption by bounded search,
and composition/star through the full translation.

    python3 demos/description_logic.py
"""

from rolelogic import dl as D
from rolelogic import eval_formula, expand_default_args, pretty
from rolelogic.frontend.parse import parse_concept, parse_role
from rolelogic.structure import Env, Structure

queries = [
    ("atleast(2, r, A)", "atleast(1, r, top)"),
    ("atleast(1, r, top)", "atleast(1, r, A)"),
    ("and(atleast(1, r, A), not(atleast(1, r, B)))", "atleast(1, r, and(A, not(B)))"),
]
for c, d in queries:
    r = D.subsumes(parse_concept(c), parse_concept(d), 3)
    print(f"{c} [= {d}: {r.verdict}")

print("rl2 of atleast(1, inv(r), A):", pretty(D.dl_to_rl2(parse_concept("atleast(1, inv(r), A)"))))

# reachability needs star, which only full role logic has
reach = parse_role("star(r)")
s = Structure(3, {}, {"r": {(1, 2), (2, 3)}})
h = expand_default_args(D.dl_to_full(reach), D.dl_context(reach))
pairs = sorted((a, b) for a in s.universe for b in s.universe if eval_formula(h, s, Env((b, a))))
print("star(r) on 1->2->3:", pairs)
assert set(pairs) == D.eval_role(reach, s)

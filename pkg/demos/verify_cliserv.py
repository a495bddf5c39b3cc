"""Check the client-server refinement claims, then the mutated program.

    python3 demos/verify_cliserv.py
"""

from pathlib import Path

import rolelogic
from rolelogic import eval_rl2, parse_program
from rolelogic import verify as V
from rolelogic.frontend import pretty_structure
from rolelogic.structure import PairEnv

CORPUS = Path(rolelogic.__file__).parent / "corpus"

for name in ("cliserv.imp", "cliserv_buggy.imp"):
    prog = parse_program((CORPUS / name).read_text())
    print(f"== {name}")
    for claim in prog.claims:
        r = V.check_claim(prog, claim, 3)
        print(f"  {r.name}: {r.verdict} (size {r.bound}, {r.seconds:.2f}s)")
        if r.verdict != "Counterexample":
            continue
        # the model satisfies the implementation and falsifies the spec
        s1, s2 = V.claim_formulas(prog, *claim)
        env = PairEnv(1, 1)
        print("  impl holds:", eval_rl2(s1, r.model, env), " spec holds:", eval_rl2(s2, r.model, env))
        print("  pre-state:\n    " + pretty_structure(r.pre).rstrip().replace("\n", "\n    "))
        print("  post-state:\n    " + pretty_structure(r.post).rstrip().replace("\n", "\n    "))

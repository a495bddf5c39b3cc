"""Role logic: a variable-free notation for first-order logic with counting
and transitive closure, its two-variable fragment, a bounded solver, and a
verifier for a small imperative language."""

from .core import (
    desugar, eval_formula, expand_default_args, normalize, typecheck,
)
from .errors import *  # noqa: F401,F403
from .fo import check_c2, check_d2, check_i2, eval_fo, eval_i2
from .formula import Bool, Obj, RelK, TypeContext
from .frontend import (
    parse_fo, parse_formula, parse_i2, parse_program, parse_rl2, parse_structure, pretty,
)
from .rl2 import coerce_rl2, eval_rl2, is_bsac
from .solver import check_sat_bounded, check_valid_bounded
from .structure import Env, PairEnv, Structure
from .translate import (
    alternate, c2_to_i2, d2_to_c2, four_corner, i2_to_c2, i2_to_rl2, rl2_to_d2,
)
from .verify import check_claim, translate_statement

__version__ = "0.1.0"

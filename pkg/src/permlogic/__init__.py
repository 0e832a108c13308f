"""First-order logic engine over finite permutations.

Permutations are carried by two interchangeable first-order views: two
strict total orders (position and value) or a single bijection relation.
The package compiles pattern, sorting and cycle-structure conditions into
formulas, evaluates formulas by brute force on small permutations, decides
Ehrenfeucht-Fraissé equivalence by memoized game search, and verifies every
compiled formula against an independent combinatorial oracle.
"""
import sys

# Machine-generated disjunctions (count profiles, cycle-type unions) nest
# left-associated conjunctions/disjunctions hundreds deep; the recursive
# printer, parser and compiler need headroom beyond CPython's default.
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

from .errors import PermLogicError
from .perms import (
    Partition,
    Permutation,
    Point,
    from_one_line,
    parse_perm,
)
from .logic import Formula, Var
from .parser import parse, print_formula
from .evaluate import count_models, eval_formula, models

__all__ = [
    "Formula",
    "Partition",
    "PermLogicError",
    "Permutation",
    "Point",
    "Var",
    "count_models",
    "eval_formula",
    "from_one_line",
    "models",
    "parse",
    "parse_perm",
    "print_formula",
]

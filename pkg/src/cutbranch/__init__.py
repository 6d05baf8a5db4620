"""Exact-arithmetic lab for branch-and-bound tree relaxations and lift-and-project hierarchies."""

from .numeric import Q, format_rational, parse_rational, parse_vector
from .lp import LinearConstraint, LPOutcome, LPProblem, eq, ge, le, lp_solve
from .polytope import Polytope, is_member, optimize
from .geometry import (
    BudgetExceeded, IntegerHull, equals_integer_hull, explicit, hull, integer_hull, vertices,
)
from .trees import BBTree, Node, enumerate_trees, nogood_tree, skewed_k_tree, tree_relaxation
from .hierarchies import (
    OperatorResult, SALift, b_k_member, b_k_polytope, l_iterate, l_member, l_step, sa_lift,
    sa_member, t_k_member, t_k_polytope,
)
from .instances import Graph, Instance

__version__ = "0.1.0"

"""Branch-and-bound trees over variable disjunctions and their relaxations.

Trees are immutable nested :class:`Node` values.  Variables are 0-based in
the Python API and 1-based in JSON and DOT output.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Iterator, Sequence

from .geometry import LIMITS, BudgetExceeded, explicit, vertices
from .numeric import is_binary
from .polytope import EMPTY, Polytope, is_member


@dataclass(frozen=True)
class Node:
    var: int | None = None
    zero: "Node | None" = None
    one: "Node | None" = None

    def __post_init__(self):
        if (self.var is None) != (self.zero is None) or (self.zero is None) != (self.one is None):
            raise ValueError("a node has either no children or two children and a branch variable")

    @property
    def is_leaf(self) -> bool:
        return self.var is None

    def count(self) -> int:
        return 1 if self.is_leaf else 1 + self.zero.count() + self.one.count()

    def leaf_count(self) -> int:
        return 1 if self.is_leaf else self.zero.leaf_count() + self.one.leaf_count()


LEAF = Node()


@dataclass(frozen=True)
class NodeLabels:
    """Branching constraints ``C_v`` of a node and the derived sets."""

    C: tuple  # ((var, bit), ...) in root-to-node order

    @property
    def J0(self) -> frozenset:
        return frozenset(j for j, a in self.C if a == 0)

    @property
    def J1(self) -> frozenset:
        return frozenset(j for j, a in self.C if a == 1)

    @property
    def height(self) -> int:
        return len(self.C)

    def fixings(self) -> dict:
        return {j: a for j, a in self.C}


@dataclass(frozen=True)
class BBTree:
    root: Node
    n: int

    def walk(self) -> Iterator[tuple[Node, NodeLabels]]:
        stack = [(self.root, ())]
        while stack:
            node, C = stack.pop()
            yield node, NodeLabels(C)
            if not node.is_leaf:
                stack.append((node.one, C + ((node.var, 1),)))
                stack.append((node.zero, C + ((node.var, 0),)))

    def leaves(self) -> list[NodeLabels]:
        return [lab for node, lab in self.walk() if node.is_leaf]

    @property
    def size(self) -> int:
        return self.root.count()

    @property
    def leaf_count(self) -> int:
        return self.root.leaf_count()

    @property
    def height(self) -> int:
        return max(lab.height for _, lab in self.walk())

    def is_canonical(self) -> bool:
        return all(len(lab.J0 | lab.J1) == lab.height for _, lab in self.walk())

    def stats(self) -> dict:
        census: dict[int, int] = {}
        for lab in self.leaves():
            census[len(lab.J1)] = census.get(len(lab.J1), 0) + 1
        return {
            "size": self.size,
            "height": self.height,
            "leaves": self.leaf_count,
            "leaf_J1_census": {str(k): v for k, v in sorted(census.items())},
        }

    # -- serialisation ----------------------------------------------------------

    def to_json(self):
        def enc(node):
            if node.is_leaf:
                return "leaf"
            return {"branch": node.var + 1, "zero": enc(node.zero), "one": enc(node.one)}

        return enc(self.root)

    @classmethod
    def from_json(cls, obj, n: int) -> "BBTree":
        def dec(o):
            if o == "leaf":
                return LEAF
            j = int(o["branch"]) - 1
            if not 0 <= j < n:
                raise ValueError(f"branch variable {j + 1} outside 1..{n}")
            return Node(j, dec(o["zero"]), dec(o["one"]))

        return cls(dec(obj), n)

    def to_dot(self) -> str:
        lines = ["digraph bbtree {"]
        ids = {}

        def visit(node, path):
            ident = f"n{len(ids)}"
            ids[path] = ident
            label = "leaf" if node.is_leaf else f"x_{node.var + 1}"
            shape = "box" if node.is_leaf else "ellipse"
            lines.append(f'  {ident} [label="{label}", shape={shape}];')
            if not node.is_leaf:
                for bit, child in ((0, node.zero), (1, node.one)):
                    cid = visit(child, path + (bit,))
                    lines.append(f'  {ident} -> {cid} [label="{bit}"];')
            return ident

        visit(self.root, ())
        lines.append("}")
        return "\n".join(lines)


def trivial_tree(n: int) -> BBTree:
    return BBTree(LEAF, n)


def complete_tree(n: int, variables: Sequence[int]) -> BBTree:
    """Branch on ``variables`` in order along every path."""

    def build(i):
        if i == len(variables):
            return LEAF
        child = build(i + 1)
        return Node(variables[i], child, child)

    return BBTree(build(0), n)


def tree_from_leaves(n: int, leaves: Sequence[dict]) -> BBTree:
    """Rebuild a tree from the fixings of its leaves."""

    def build(group, fixed):
        if len(group) == 1 and set(group[0]) == fixed:
            return LEAF
        for j in range(n):
            if j in fixed:
                continue
            if all(j in g for g in group):
                zero = [g for g in group if g[j] == 0]
                one = [g for g in group if g[j] == 1]
                if zero and one:
                    return Node(j, build(zero, fixed | {j}), build(one, fixed | {j}))
        raise ValueError("leaf fixings do not form a tree")

    return BBTree(build(list(leaves), frozenset()), n)


# --------------------------------------------------------------------------
# atoms and relaxations


def atom(P: Polytope, labels: NodeLabels | dict) -> Polytope:
    fix = labels.fixings() if isinstance(labels, NodeLabels) else labels
    return P.restrict_many(fix)


def tree_relaxation(P: Polytope, T: BBTree, prune: bool = True) -> Polytope:
    """Convex hull of the leaf atoms (a Balas union, empty atoms dropped)."""
    if T.n != P.n:
        raise ValueError("tree and polytope disagree on n")
    return Polytope.union([atom(P, lab) for lab in T.leaves()], prune=prune)


def separates(P: Polytope, T: BBTree, x) -> bool:
    return not is_member(tree_relaxation(P, T), x)


def relaxation_size(P: Polytope, T: BBTree, prune: bool = False) -> dict:
    """Variable and row counts of the tree's extended formulation.

    Returns the actual counts next to the bounds ``|T|(n+p+1)`` and
    ``|T|·m + coupling`` where ``m`` counts the rows of ``P`` (box included)
    and coupling rows are the branching equalities, the linking rows, the
    convexity row and the multiplier signs.
    """
    R = tree_relaxation(P, T, prune=prune)
    leaves = T.leaves()
    m = len(P.rows)
    coupling = P.n + 1 + len(leaves) + sum(lab.height for lab in leaves)
    aux, rows = R.aux, len(R.rows)
    return {
        "aux_vars": aux,
        "rows": rows,
        "var_bound": T.size * (P.n + P.aux + 1),
        "row_bound": T.size * m + coupling,
        "ok": aux <= T.size * (P.n + P.aux + 1) and rows <= T.size * m + coupling,
    }


# --------------------------------------------------------------------------
# builders


def skewed_k_tree(n: int, k: int, perm: Sequence[int] | None = None) -> BBTree:
    """Branch in the order ``perm`` on every leaf with fewer than ``k`` ones."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    perm = list(range(n)) if perm is None else list(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("perm must be a permutation of 0..n-1")

    def build(i, ones):
        if ones == k or i == n:
            return LEAF
        return Node(perm[i], build(i + 1, ones), build(i + 1, ones + 1))

    return BBTree(build(0, 0), n)


def skewed_leaf_count(n: int, k: int) -> int:
    return sum(comb(n, i) for i in range(k + 1))


def nogood_tree(n: int, S: Sequence[Sequence[int]]) -> BBTree:
    """Isolate every point of ``S`` in its own leaf, branching in index order."""
    S = sorted({tuple(int(v) for v in s) for s in S})
    if not S:
        raise ValueError("S is empty; use the trivial tree")
    if any(len(s) != n or not is_binary(s) for s in S):
        raise ValueError("S must contain 0/1 vectors of length n")

    def build(group, depth):
        if not group or depth == n:
            return LEAF
        zero = [s for s in group if s[depth] == 0]
        one = [s for s in group if s[depth] == 1]
        return Node(depth, build(zero, depth + 1), build(one, depth + 1))

    return BBTree(build(S, 0), n)


def lowest_fractional(P: Polytope, verts: Sequence) -> int | None:
    for j in range(P.n):
        if any(v[j] != 0 and v[j] != 1 for v in verts):
            return j
    return None


def greedy_integral_tree(P: Polytope, rule: Callable | None = None, max_size: int = 4096) -> BBTree:
    """Branch on a node iff its atom is neither empty nor integral."""
    rule = rule or lowest_fractional
    budget = [0]

    def build(fix):
        budget[0] += 1
        if budget[0] > max_size:
            raise BudgetExceeded(f"greedy tree exceeded {max_size} nodes")
        A = P.restrict_many(fix)
        if A.kind == EMPTY or A.is_empty():
            return LEAF
        verts = vertices(explicit(A))
        if all(is_binary(v) for v in verts):
            return LEAF
        j = rule(P, verts)
        if j is None or j in fix:
            raise ValueError("variable rule returned no usable variable")
        budget[0] += 1
        return Node(j, build({**fix, j: 0}), build({**fix, j: 1}))

    return BBTree(build({}), P.n)


# --------------------------------------------------------------------------
# enumeration


def enumerate_trees(n: int, max_height: int | None = None, max_leaves: int | None = None,
                    budget: int | None = None) -> Iterator[BBTree]:
    """Every canonical tree within the bounds, each exactly once."""
    budget = LIMITS.trees if budget is None else budget
    if max_height is None and max_leaves is None:
        raise ValueError("bound the height or the leaf count")
    h0 = n if max_height is None else min(max_height, n)
    memo: dict = {}

    def gen(avail: frozenset, h: int, L: int) -> list:
        key = (avail, h, L)
        if key in memo:
            return memo[key]
        out = [(LEAF, 1)]
        if h > 0 and L >= 2:
            for v in sorted(avail):
                rest = avail - {v}
                for z, lz in gen(rest, h - 1, L - 1):
                    for o, lo in gen(rest, h - 1, L - lz):
                        out.append((Node(v, z, o), lz + lo))
                        if len(out) > budget:
                            raise BudgetExceeded(f"more than {budget} trees")
        memo[key] = out
        return out

    L0 = 2 ** h0 if max_leaves is None else max_leaves
    for node, _ in gen(frozenset(range(n)), h0, L0):
        yield BBTree(node, n)


def count_trees(n: int, max_height: int) -> int:
    """Closed-form count of canonical trees of height <= ``max_height``."""

    def c(avail, h):
        if h == 0 or avail == 0:
            return 1
        return 1 + avail * c(avail - 1, h - 1) ** 2

    return c(n, max_height)

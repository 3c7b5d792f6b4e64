"""
Constraints module - Compile a graph into its independent-set or kernel BDD

Both builders produce one large AND of local functions:

- independent sets: for every edge {u, v}, not (x_u and x_v)
- kernels: for every vertex v, x_v implies no neighbor is 1, and
  not x_v implies some neighbor is 1

Edges are conjoined in lexicographic order and vertices in ascending order so
builds, and therefore access counts, are reproducible.

Example usage:
    from counting.graph import Graph
    from counting.constraints import ConstraintMode, build_bdd

    g = Graph.from_edge_list(3, [(1, 2), (1, 3), (2, 3)])
    print(build_bdd(g, ConstraintMode.KERNEL).count())   # 3
"""

from enum import Enum
from typing import Dict, List, Optional, Sequence

from counting.bdd import ArityMismatch, Bdd, BddManager, Op, apply, negate, normalize_order
from counting.graph import Graph


class ConstraintMode(Enum):
    """Which vertex sets are counted."""
    INDEPENDENT_SET = "is"
    KERNEL = "kernel"

    @classmethod
    def parse(cls, text: str) -> 'ConstraintMode':
        """Accept 'is', 'independent_set', 'independent-set' or 'kernel'."""
        key = text.strip().lower().replace('-', '_')
        aliases = {
            'is': cls.INDEPENDENT_SET,
            'independent_set': cls.INDEPENDENT_SET,
            'independent_sets': cls.INDEPENDENT_SET,
            'kernel': cls.KERNEL,
            'kernels': cls.KERNEL,
            'mis': cls.KERNEL,
        }
        if key not in aliases:
            raise ValueError(f"Unknown constraint mode '{text}' (expected 'is' or 'kernel')")
        return aliases[key]


def variable_levels(n: int, order: Optional[Sequence[int]] = None) -> List[int]:
    """
    Map each vertex to its BDD variable.

    Args:
        n: Vertex count
        order: Vertices listed from the top BDD level down; None means 1..n

    Returns:
        List where index v holds the variable of vertex v (index 0 unused)
    """
    if order is None:
        return list(range(n + 1))
    order = [int(v) for v in order]
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError(f"Variable order must be a permutation of 1..{n}")
    levels = [0] * (n + 1)
    for position, v in enumerate(order, start=1):
        levels[v] = position
    return levels


def _session(g: Graph, manager: Optional[BddManager],
             order: Optional[Sequence[int]]) -> BddManager:
    if manager is None:
        return BddManager(g.n, order=order)
    if manager.num_vars != g.n:
        raise ValueError(f"Manager has {manager.num_vars} variables but graph has {g.n} vertices")
    if manager.order != normalize_order(g.n, order):
        raise ArityMismatch(f"Manager was built for variable order {manager.order}")
    manager.clear_memo()
    manager.reset_accesses()
    return manager


def independent_set_bdd(
    g: Graph,
    order: Optional[Sequence[int]] = None,
    manager: Optional[BddManager] = None
) -> Bdd:
    """
    BDD whose solutions are exactly the independent sets of g.

    Args:
        g: Graph
        order: Optional vertex order (see variable_levels)
        manager: Optional store to build in; a fresh one by default

    Example:
        >>> prism = Graph.from_edge_list(6, [(1, 2), (1, 4), (1, 6), (2, 3), (2, 6),
        ...                                  (3, 4), (3, 5), (4, 5), (5, 6)])
        >>> independent_set_bdd(prism).count()
        13
    """
    mgr = _session(g, manager, order)
    level = variable_levels(g.n, order)
    result = mgr.constant(True)
    for u, v in g.sorted_edges():
        both = apply(Op.AND, mgr.variable(level[u]), mgr.variable(level[v]))
        result = apply(Op.AND, result, negate(both))
    return result


def _kernel_local(mgr: BddManager, level: List[int], v: int, neighbors: Sequence[int]) -> Bdd:
    # [x_v => no neighbor in the set] and [not x_v => some neighbor in the set]
    none_in = mgr.constant(True)
    some_in = mgr.constant(False)
    for u in neighbors:
        none_in = apply(Op.AND, none_in, mgr.literal(level[u], positive=False))
        some_in = apply(Op.OR, some_in, mgr.literal(level[u]))
    chosen = apply(Op.AND, mgr.literal(level[v]), none_in)
    dominated = apply(Op.AND, mgr.literal(level[v], positive=False), some_in)
    return apply(Op.OR, chosen, dominated)


def kernel_bdd(
    g: Graph,
    order: Optional[Sequence[int]] = None,
    manager: Optional[BddManager] = None
) -> Bdd:
    """
    BDD whose solutions are exactly the kernels (maximal independent sets) of g.

    An isolated vertex must be in every kernel: its neighbor disjunction is
    empty, so the local function reduces to x_v.
    """
    mgr = _session(g, manager, order)
    level = variable_levels(g.n, order)
    result = mgr.constant(True)
    for v in g.vertices():
        result = apply(Op.AND, result, _kernel_local(mgr, level, v, g.neighbors(v)))
    return result


_BUILDERS = {
    ConstraintMode.INDEPENDENT_SET: independent_set_bdd,
    ConstraintMode.KERNEL: kernel_bdd,
}


def build_bdd(
    g: Graph,
    mode: ConstraintMode,
    order: Optional[Sequence[int]] = None,
    manager: Optional[BddManager] = None
) -> Bdd:
    """Dispatch to the builder for mode."""
    return _BUILDERS[ConstraintMode(mode)](g, order=order, manager=manager)


def count_sets(g: Graph, mode: ConstraintMode) -> int:
    """Exact number of independent sets or kernels of g."""
    return build_bdd(g, mode).count()


def build_stats(g: Graph, mode: ConstraintMode) -> Dict[str, int]:
    """Count, node count and access tally for one fresh build."""
    f = build_bdd(g, mode)
    return {
        'count': f.count(),
        'nodes': f.node_count(),
        'accesses': f.manager.accesses,
    }

"""
Validation utilities - Invariant sweeps with readable reports

Checks that a Graph and a BDD store really satisfy their structural
invariants, and that ensemble parameters are consistent, returning
collected messages instead of stopping at the first problem.

Example usage:
    from counting.validation import validate_graph, validate_bdd

    report = validate_graph(g)
    if report['errors']:
        print("Errors:", report['errors'])
"""

from typing import Dict, List, Tuple

from counting.bdd import Bdd, BddManager
from counting.graph import EnsembleKind, Graph, GraphError


def validate_graph(g: Graph) -> Dict[str, List[str]]:
    """
    Check the simple-graph invariants of g.

    - no self-loops, no edge outside 1..n
    - adjacency consistent with the edge set in both directions

    Returns:
        dict: {'errors': [...], 'warnings': [...], 'info': [...]}
    """
    errors = []
    warnings = []
    info = []

    for u, v in g.edges:
        if u == v:
            errors.append(f"Self-loop at vertex {u}")
        if not (1 <= u <= g.n and 1 <= v <= g.n):
            errors.append(f"Edge {{{u},{v}}} leaves the vertex range 1..{g.n}")
        elif v not in g.neighbors(u) or u not in g.neighbors(v):
            errors.append(f"Edge {{{u},{v}}} is missing from an adjacency list")

    for v in g.vertices():
        adj = g.neighbors(v)
        if len(set(adj)) != len(adj):
            errors.append(f"Vertex {v} lists a neighbor twice")
        for u in adj:
            if not g.has_edge(u, v):
                errors.append(f"Vertex {v} lists neighbor {u} without an edge")

    isolated = [v for v in g.vertices() if g.degree(v) == 0]
    if isolated:
        warnings.append(f"Isolated vertices {isolated} belong to every kernel")

    degrees = g.degree_histogram()
    info.append(f"n={g.n} m={g.m} degrees={degrees}")

    return {'errors': errors, 'warnings': warnings, 'info': info}


def validate_bdd(source) -> Dict[str, List[str]]:
    """
    Sweep a BDD store for reduction and ordering violations.

    Accepts a BddManager (whole store) or a Bdd (whole store of its manager).
    Reports duplicate (var, lo, hi) triples, nodes with lo == hi, children not
    strictly below their parent, and children stored after their parent.

    Returns:
        dict: {'errors': [...], 'warnings': [...], 'info': [...]}
    """
    mgr: BddManager = source.manager if isinstance(source, Bdd) else source
    errors = []
    seen: Dict[Tuple[int, int, int], int] = {}

    for u, var, lo, hi in mgr.nodes():
        if lo == hi:
            errors.append(f"Node {u} has LO == HI == {lo}")
        key = (var, lo, hi)
        if key in seen:
            errors.append(f"Nodes {seen[key]} and {u} share (var, lo, hi) = {key}")
        else:
            seen[key] = u
        if not (var < mgr.var(lo) and var < mgr.var(hi)):
            errors.append(f"Node {u} on variable {var} breaks the order "
                          f"(children on {mgr.var(lo)} and {mgr.var(hi)})")
        if lo >= u or hi >= u:
            errors.append(f"Node {u} refers to a child stored after it")
        if not 1 <= var <= mgr.num_vars:
            errors.append(f"Node {u} uses variable {var} outside 1..{mgr.num_vars}")

    info = [f"store size {len(mgr)} (sinks counted once), {mgr.accesses} accesses"]
    return {'errors': errors, 'warnings': [], 'info': info}


def validate_ensemble_params(n: int, ensemble: EnsembleKind) -> Dict[str, List[str]]:
    """Check that size n can be drawn from ensemble."""
    errors = []
    warnings = []
    try:
        ensemble.check_size(n)
    except GraphError as e:
        errors.append(str(e))
    if not ensemble.is_regular and ensemble.degree >= n - 1 and n > 1:
        warnings.append(f"Average degree {ensemble.degree:g} on {n} vertices is (nearly) complete")
    return {'errors': errors, 'warnings': warnings, 'info': []}


def quick_validate(g: Graph) -> Tuple[bool, str]:
    """
    Simple True/False check of a graph with a message.

    Example:
        >>> from counting.graph import Graph
        >>> quick_validate(Graph.from_edge_list(2, [(1, 2)]))
        (True, 'Valid graph')
    """
    result = validate_graph(g)
    if result['errors']:
        return False, "; ".join(result['errors'])
    return True, "Valid graph"

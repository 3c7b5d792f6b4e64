"""
Oracle module - Brute-force counting by exhaustive subset enumeration

Shares no code with the BDD engine: every subset of the vertices is
visited as an integer bitmask and tested against precomputed neighbor masks.
The vertices are split into a low and a high block; per-block tables of
independence and neighborhood cover make each subset test constant time.
Used to validate the BDD pipeline on small graphs.
"""

from typing import Iterator, List, Set, Tuple

from counting.constraints import ConstraintMode
from counting.graph import Graph

MAX_COUNT_VERTICES = 30
MAX_ENUMERATE_VERTICES = 20

# Subset tables cover at most this many vertices at a time
TABLE_BITS = 16


class OracleError(ValueError):
    pass


class TooLarge(OracleError):
    pass


def _neighbor_masks(g: Graph) -> List[int]:
    # Bit i-1 stands for vertex i.
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u - 1] |= 1 << (v - 1)
        masks[v - 1] |= 1 << (u - 1)
    return masks


def _subset_tables(masks: List[int], offset: int, bits: int) -> Tuple[bytearray, List[int]]:
    # Over the vertices at bits offset..offset+bits-1, indexed by part-local
    # subsets: whether the subset is independent, and the full-width mask of
    # its members plus their neighbors. Each subset extends the one without
    # its lowest member.
    size = 1 << bits
    independent = bytearray(size)
    independent[0] = 1
    cover = [0] * size
    for s in range(1, size):
        low = s & -s
        i = offset + low.bit_length() - 1
        rest = s ^ low
        independent[s] = independent[rest] and not (masks[i] >> offset) & rest
        cover[s] = cover[rest] | masks[i] | (1 << i)
    return independent, cover


def _iter_accepted(g: Graph, mode: ConstraintMode) -> Iterator[int]:
    masks = _neighbor_masks(g)
    full = (1 << g.n) - 1
    kernel = ConstraintMode(mode) is ConstraintMode.KERNEL

    low_bits = min(g.n, TABLE_BITS)
    low_mask = (1 << low_bits) - 1
    lo_independent, lo_cover = _subset_tables(masks, 0, low_bits)
    hi_independent, hi_cover = _subset_tables(masks, low_bits, g.n - low_bits)

    for hi in range(len(hi_independent)):
        if not hi_independent[hi]:
            continue
        blocked = hi_cover[hi] & low_mask
        base = hi << low_bits
        for lo in range(len(lo_independent)):
            if not lo_independent[lo] or lo & blocked:
                continue
            if kernel and (lo_cover[lo] | hi_cover[hi]) != full:
                continue
            yield base | lo


def brute_count(g: Graph, mode: ConstraintMode) -> int:
    """
    Count independent sets or kernels of g by trying all 2^n subsets.

    A kernel is an independent set S such that every vertex outside S has a
    neighbor in S.

    Raises:
        TooLarge: If g has more than MAX_COUNT_VERTICES vertices
    """
    if g.n > MAX_COUNT_VERTICES:
        raise TooLarge(f"Brute force is limited to {MAX_COUNT_VERTICES} vertices, got {g.n}")
    return sum(1 for _ in _iter_accepted(g, mode))


def enumerate_sets(g: Graph, mode: ConstraintMode) -> List[Set[int]]:
    """
    List the independent sets or kernels of g, sorted by size then lexicographically.

    Raises:
        TooLarge: If g has more than MAX_ENUMERATE_VERTICES vertices

    Example:
        >>> edge = Graph.from_edge_list(2, [(1, 2)])
        >>> enumerate_sets(edge, ConstraintMode.INDEPENDENT_SET)
        [set(), {1}, {2}]
    """
    if g.n > MAX_ENUMERATE_VERTICES:
        raise TooLarge(f"Enumeration is limited to {MAX_ENUMERATE_VERTICES} vertices, got {g.n}")
    found = [
        sorted(v for v in g.vertices() if subset >> (v - 1) & 1)
        for subset in _iter_accepted(g, mode)
    ]
    found.sort(key=lambda members: (len(members), members))
    return [set(members) for members in found]

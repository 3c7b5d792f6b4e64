"""
Graph module - Simple undirected graphs and the random ensembles

This module holds the combinatorial substrate for every count in the package:
an immutable simple graph with 1-based vertex labels, and the two random
ensembles used by the experiments (k-regular graphs and graphs with a fixed
average degree).

Example usage:
    from counting.graph import Graph, random_regular

    prism = Graph.from_edge_list(6, [(1, 2), (1, 4), (1, 6), (2, 3), (2, 6),
                                     (3, 4), (3, 5), (4, 5), (5, 6)])
    print(prism.degree(1))            # 3

    g = random_regular(20, 3, seed=7)
    print(g.degree_histogram())       # {3: 20}
"""

import itertools
import logging
from collections import Counter
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

#: Identifier of the bit generator behind every seeded generator below.
RNG_ALGORITHM = 'numpy.PCG64'

MAX_RESTARTS = 10000


class GraphError(ValueError):
    """Base class for graph construction and generation errors."""
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class ImpossibleDegreeSequence(GraphError):
    pass


class TooManyEdges(GraphError):
    pass


class OddHandshake(GraphError):
    pass


class GenerationFailed(GraphError):
    pass


class Strategy(Enum):
    """How random regular graphs are sampled."""
    GREEDY = "greedy"    # add random edges between deficient, unconnected vertices
    PAIRING = "pairing"  # configuration model, rejecting loops and multi-edges


class Graph:
    """
    Simple undirected graph on vertices 1..n.

    Instances are immutable after construction. Edges are stored as sorted
    pairs (u, v) with u < v; adjacency lists are sorted and derived from the
    edge set.
    """

    __slots__ = ('_n', '_edges', '_adjacency')

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        """
        Create a graph from already normalized edges.

        Prefer Graph.from_edge_list() for untrusted input; it reports
        self-loops, duplicates and out-of-range vertices with precise errors.
        """
        if n < 0:
            raise VertexOutOfRange(f"Vertex count must be nonnegative, got {n}")
        normalized = set()
        for u, v in edges:
            normalized.add(_normalize_pair(n, u, v))
        self._n = n
        self._edges: FrozenSet[Edge] = frozenset(normalized)

        neighbors: List[List[int]] = [[] for _ in range(n + 1)]
        for u, v in self._edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        self._adjacency: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(sorted(adj)) for adj in neighbors
        )

    @classmethod
    def from_edge_list(cls, n: int, pairs: Iterable[Sequence[int]]) -> 'Graph':
        """
        Build a graph with exactly the given edges.

        Args:
            n: Vertex count (vertices are labeled 1..n)
            pairs: Unordered vertex pairs

        Raises:
            SelfLoop: If a pair joins a vertex to itself
            DuplicateEdge: If an unordered pair appears twice
            VertexOutOfRange: If a label is outside 1..n

        Example:
            >>> Graph.from_edge_list(2, [(1, 2)]).degree_sequence()
            [1, 1]
        """
        seen = set()
        for pair in pairs:
            u, v = pair
            edge = _normalize_pair(n, u, v)
            if edge in seen:
                raise DuplicateEdge(f"Edge {{{u},{v}}} appears more than once")
            seen.add(edge)
        return cls(n, seen)

    @property
    def n(self) -> int:
        """Vertex count."""
        return self._n

    @property
    def m(self) -> int:
        """Edge count."""
        return len(self._edges)

    @property
    def edges(self) -> FrozenSet[Edge]:
        return self._edges

    def sorted_edges(self) -> List[Edge]:
        """Edges in lexicographic (u, v) order."""
        return sorted(self._edges)

    def vertices(self) -> range:
        return range(1, self._n + 1)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        """Sorted neighbor list of vertex v."""
        self._check_vertex(v)
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        """Number of edges connected to vertex v."""
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edges

    def degree_sequence(self) -> List[int]:
        """Degrees of vertices 1..n in label order."""
        return [len(self._adjacency[v]) for v in self.vertices()]

    def degree_histogram(self) -> Dict[int, int]:
        """Map degree -> number of vertices with that degree."""
        return dict(sorted(Counter(self.degree_sequence()).items()))

    def is_regular(self, k: Optional[int] = None) -> bool:
        degrees = set(self.degree_sequence())
        if not degrees:
            return True
        if len(degrees) != 1:
            return False
        return k is None or degrees.pop() == k

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self._n:
            raise VertexOutOfRange(f"Vertex {v} is outside 1..{self._n}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"

    def to_dict(self) -> dict:
        return {'n': self._n, 'edges': [list(e) for e in self.sorted_edges()]}


def _normalize_pair(n: int, u: int, v: int) -> Edge:
    if u == v:
        raise SelfLoop(f"Self-loop at vertex {u}")
    for w in (u, v):
        if not 1 <= w <= n:
            raise VertexOutOfRange(f"Vertex {w} is outside 1..{n}")
    return (u, v) if u < v else (v, u)


def from_edge_list(n: int, pairs: Iterable[Sequence[int]]) -> Graph:
    """Module-level alias of Graph.from_edge_list()."""
    return Graph.from_edge_list(n, pairs)


def degree(g: Graph, v: int) -> int:
    """Degree of vertex v in g."""
    return g.degree(v)


# ============================================================================
# ENSEMBLES
# ============================================================================

class EnsembleKind:
    """
    A random graph ensemble: REGULAR(k) or AVERAGE_DEGREE(d).

    Use the factories EnsembleKind.regular(k) and EnsembleKind.average_degree(d).
    """

    REGULAR = 'regular'
    AVERAGE_DEGREE = 'average_degree'

    def __init__(self, variant: str, degree: Union[int, float]):
        if variant not in (self.REGULAR, self.AVERAGE_DEGREE):
            raise ValueError(f"Unknown ensemble variant '{variant}'")
        if degree < 0:
            raise ValueError(f"Degree must be nonnegative, got {degree}")
        self.variant = variant
        self.degree = degree

    @classmethod
    def regular(cls, k: int) -> 'EnsembleKind':
        return cls(cls.REGULAR, int(k))

    @classmethod
    def average_degree(cls, d: Union[int, float]) -> 'EnsembleKind':
        return cls(cls.AVERAGE_DEGREE, d)

    @property
    def is_regular(self) -> bool:
        return self.variant == self.REGULAR

    def check_size(self, n: int) -> None:
        """Raise if n is incompatible with this ensemble's parity constraint."""
        if self.is_regular:
            _check_regular_params(n, self.degree)
        else:
            _edge_count_for(n, self.degree)

    def sample(self, n: int, seed, strategy: Strategy = Strategy.GREEDY) -> Graph:
        """Draw one graph of size n from this ensemble."""
        if self.is_regular:
            return random_regular(n, self.degree, seed, strategy=strategy)
        return random_average_degree(n, self.degree, seed)

    def label(self) -> str:
        if self.is_regular:
            return f"regular-{self.degree}"
        return f"avg-degree-{self.degree:g}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, EnsembleKind):
            return NotImplemented
        return self.variant == other.variant and self.degree == other.degree

    def __hash__(self) -> int:
        return hash((self.variant, self.degree))

    def __repr__(self) -> str:
        return f"EnsembleKind({self.variant!r}, {self.degree!r})"


def make_rng(seed) -> np.random.Generator:
    """Seeded PCG64 generator; passes an existing Generator through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def _check_regular_params(n: int, k: int) -> None:
    if n < 1:
        raise ImpossibleDegreeSequence(f"Need at least one vertex, got n={n}")
    if (n * k) % 2 != 0:
        raise ImpossibleDegreeSequence(
            f"No {k}-regular graph on {n} vertices: n*k = {n * k} is odd"
        )
    if k >= n:
        raise ImpossibleDegreeSequence(
            f"No simple {k}-regular graph on {n} vertices: need k < n"
        )


def random_regular(
    n: int,
    k: int,
    seed=None,
    strategy: Strategy = Strategy.GREEDY,
    max_restarts: int = MAX_RESTARTS
) -> Graph:
    """
    Generate a random k-regular simple graph on n vertices.

    The default GREEDY strategy repeatedly joins two random vertices that
    still have fewer than k edges and are not yet adjacent. When no such pair
    remains before every vertex reaches degree k, the partial graph is
    discarded and generation restarts. PAIRING uses the configuration model
    with rejection of self-loops and multi-edges, which is uniform over
    labeled k-regular graphs.

    Args:
        n: Vertex count
        k: Degree
        seed: Integer seed or numpy Generator
        strategy: Strategy.GREEDY (default) or Strategy.PAIRING
        max_restarts: Restart bound before GenerationFailed

    Raises:
        ImpossibleDegreeSequence: If n*k is odd or k >= n
        GenerationFailed: If max_restarts attempts all got stuck
    """
    _check_regular_params(n, k)
    rng = make_rng(seed)
    attempt = _greedy_attempt if Strategy(strategy) is Strategy.GREEDY else _pairing_attempt

    for restart in range(max_restarts):
        edges = attempt(n, k, rng)
        if edges is not None:
            if restart:
                logger.debug("random_regular(n=%d, k=%d) succeeded after %d restarts",
                             n, k, restart)
            return Graph(n, edges)

    raise GenerationFailed(
        f"Could not build a {k}-regular graph on {n} vertices "
        f"after {max_restarts} restarts ({Strategy(strategy).value} strategy)"
    )


def _greedy_attempt(n: int, k: int, rng: np.random.Generator) -> Optional[List[Edge]]:
    # Vertices are 1-based throughout; index 0 is unused.
    deg = [0] * (n + 1)
    adjacent = [set() for _ in range(n + 1)]
    deficient = list(range(1, n + 1)) if k > 0 else []
    edges = []

    while deficient:
        order = rng.permutation(len(deficient))
        for i in order:
            u = deficient[i]
            candidates = [v for v in deficient if v != u and v not in adjacent[u]]
            if candidates:
                v = candidates[int(rng.integers(len(candidates)))]
                break
        else:
            return None  # stuck: remaining deficient vertices are mutually adjacent

        edges.append((u, v) if u < v else (v, u))
        adjacent[u].add(v)
        adjacent[v].add(u)
        deg[u] += 1
        deg[v] += 1
        deficient = [w for w in deficient if deg[w] < k]

    return edges


def _pairing_attempt(n: int, k: int, rng: np.random.Generator) -> Optional[List[Edge]]:
    stubs = np.repeat(np.arange(1, n + 1), k)
    rng.shuffle(stubs)
    edges = set()
    for s1, s2 in zip(stubs[0::2], stubs[1::2]):
        s1, s2 = int(s1), int(s2)
        if s1 > s2:
            s1, s2 = s2, s1
        if s1 == s2 or (s1, s2) in edges:
            return None
        edges.add((s1, s2))
    return sorted(edges)


def _edge_count_for(n: int, d: Union[int, float]) -> int:
    twice_m = d * n
    if twice_m != int(twice_m) or int(twice_m) % 2 != 0:
        raise OddHandshake(
            f"Average degree {d:g} on {n} vertices needs d*n even, got {twice_m:g}"
        )
    m = int(twice_m) // 2
    if m > n * (n - 1) // 2:
        raise TooManyEdges(
            f"{m} edges do not fit in a simple graph on {n} vertices "
            f"(maximum {n * (n - 1) // 2})"
        )
    return m


def random_average_degree(n: int, d: Union[int, float], seed=None) -> Graph:
    """
    Generate a uniformly random simple graph with exactly d*n/2 edges.

    The edge set is a uniform sample without replacement from all n(n-1)/2
    vertex pairs, so degrees vary around the average d.

    Raises:
        OddHandshake: If d*n is not an even integer
        TooManyEdges: If d*n/2 exceeds n(n-1)/2
    """
    m = _edge_count_for(n, d)
    rng = make_rng(seed)
    all_pairs = list(itertools.combinations(range(1, n + 1), 2))
    if m == 0:
        return Graph(n)
    chosen = rng.choice(len(all_pairs), size=m, replace=False)
    return Graph(n, (all_pairs[int(i)] for i in chosen))

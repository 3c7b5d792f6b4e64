"""
Graph Counting Module

Exact counts of independent sets and kernels (maximal independent sets) of
graphs through reduced ordered binary decision diagrams, plus seeded
random-ensemble experiments on their growth rates and fluctuations.

Main components:
- graph: Graph type and random regular / average-degree generators
- bdd: BDD node store, apply, negation and exact solution counting
- constraints: independent-set and kernel BDD builders
- oracle: brute-force counting for validation
- experiment / ensemble_stats: ensemble runs, summaries, fluctuation curves
"""

from counting.bdd import Bdd, BddManager, Op
from counting.constraints import ConstraintMode, build_bdd, independent_set_bdd, kernel_bdd
from counting.graph import EnsembleKind, Graph, Strategy, random_average_degree, random_regular

__all__ = [
    'Bdd',
    'BddManager',
    'ConstraintMode',
    'EnsembleKind',
    'Graph',
    'Op',
    'Strategy',
    'build_bdd',
    'independent_set_bdd',
    'kernel_bdd',
    'random_average_degree',
    'random_regular',
]
__version__ = '1.0.0'

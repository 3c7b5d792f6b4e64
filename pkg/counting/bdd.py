"""
BDD module - Reduced ordered binary decision diagrams with exact counting

A BddManager owns an append-only node store. Ids 0 and 1 are the FALSE and
TRUE sinks; both carry the sentinel variable num_vars + 1. Every other node
is a (var, lo, hi) triple kept reduced by two rules: a node whose branches
coincide is never created, and each triple is stored once (unique table).

Because make_node() only refers to ids that already exist, insertion order
lists children before parents, which is exactly the order the counting pass
needs.

Example usage:
    from counting.bdd import BddManager, Op

    mgr = BddManager(3)
    x1, x2, x3 = (mgr.variable(i) for i in (1, 2, 3))
    majority = (x1 & x2) | (x1 & x3) | (x2 & x3)
    print(majority.count())        # 4
    print(majority.node_count())   # 6
    print(mgr.accesses)            # memory-access proxy for the whole session
"""

import logging
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

logger = logging.getLogger(__name__)

FALSE = 0
TRUE = 1


class BddError(ValueError):
    """Base class for BDD engine errors."""
    pass


class OrderingViolation(BddError):
    pass


class VariableOutOfRange(BddError):
    pass


class ArityMismatch(BddError):
    pass


class UnorderedStore(BddError):
    pass


class UnknownNode(BddError):
    pass


def normalize_order(num_vars: int, order: Optional[Sequence[int]]) -> Optional[Tuple[int, ...]]:
    """Order as a tuple of vertices, or None when it is the natural 1..n."""
    if order is None:
        return None
    order = tuple(int(v) for v in order)
    natural = tuple(range(1, num_vars + 1))
    if tuple(sorted(order)) != natural:
        raise VariableOutOfRange(f"Variable order must be a permutation of 1..{num_vars}")
    return None if order == natural else order


class Op(Enum):
    """Binary boolean operators supported by apply()."""
    AND = "and"
    OR = "or"


class BddManager:
    """
    Node store, unique table, apply memo table and access counter.

    One manager is one build session. The apply memo can be cleared between
    builds (clear_memo) and the access tally reset (reset_accesses); the node
    store itself only grows.

    Attributes:
        num_vars: Number of variables n; sinks carry variable n + 1
        order: Vertices from the top level down, or None for the natural
            order 1..n; functions from stores with different orders do not mix
        accesses: Tally of node-store reads/writes and table probes
    """

    def __init__(self, num_vars: int, order: Optional[Sequence[int]] = None):
        if num_vars < 0:
            raise VariableOutOfRange(f"Variable count must be nonnegative, got {num_vars}")
        self.num_vars = num_vars
        self.order = normalize_order(num_vars, order)
        sink_var = num_vars + 1
        self._var: List[int] = [sink_var, sink_var]
        self._lo: List[int] = [FALSE, TRUE]
        self._hi: List[int] = [FALSE, TRUE]
        self._unique: Dict[Tuple[int, int, int], int] = {}
        self._memo: Dict[Tuple[str, int, int], int] = {}
        self._not_memo: Dict[int, int] = {}
        self.accesses = 0

    # ------------------------------------------------------------------
    # Store primitives
    # ------------------------------------------------------------------

    def __len__(self) -> int:
        """Store size s, counting each sink once."""
        return len(self._var)

    def var(self, u: int) -> int:
        return self._var[u]

    def lo(self, u: int) -> int:
        return self._lo[u]

    def hi(self, u: int) -> int:
        return self._hi[u]

    def is_sink(self, u: int) -> bool:
        return u <= TRUE

    def nodes(self) -> Iterator[Tuple[int, int, int, int]]:
        """Yield (id, var, lo, hi) for every non-sink node in store order."""
        for u in range(2, len(self._var)):
            yield u, self._var[u], self._lo[u], self._hi[u]

    def make_node(self, var: int, lo: int, hi: int) -> int:
        """
        Return the id of the reduced node (var, lo, hi).

        If lo == hi the test is redundant and lo is returned. Otherwise the
        unique table is consulted and a new node appended only if the triple
        is not stored yet.

        Raises:
            OrderingViolation: If var is not strictly above both children
            UnknownNode: If lo or hi is not an id in this store
        """
        self.accesses += 1
        if not 1 <= var <= self.num_vars:
            raise VariableOutOfRange(f"Variable {var} is outside 1..{self.num_vars}")
        size = len(self._var)
        if not (0 <= lo < size and 0 <= hi < size):
            raise UnknownNode(f"Children {lo} and {hi} must be ids in 0..{size - 1}")
        if not (var < self._var[lo] and var < self._var[hi]):
            raise OrderingViolation(
                f"Node on variable {var} cannot point to children on variables "
                f"{self._var[lo]} and {self._var[hi]}"
            )
        if lo == hi:
            return lo

        key = (var, lo, hi)
        u = self._unique.get(key)
        if u is not None:
            return u

        self.accesses += 1
        u = len(self._var)
        self._var.append(var)
        self._lo.append(lo)
        self._hi.append(hi)
        self._unique[key] = u
        return u

    def clear_memo(self) -> None:
        """Drop apply/negation memo entries (between independent builds)."""
        self._memo.clear()
        self._not_memo.clear()

    def reset_accesses(self) -> None:
        self.accesses = 0

    # ------------------------------------------------------------------
    # Handles
    # ------------------------------------------------------------------

    def constant(self, value: bool) -> 'Bdd':
        return Bdd(self, TRUE if value else FALSE)

    def variable(self, i: int) -> 'Bdd':
        """The function x_i."""
        if not 1 <= i <= self.num_vars:
            raise VariableOutOfRange(f"Variable {i} is outside 1..{self.num_vars}")
        return Bdd(self, self.make_node(i, FALSE, TRUE))

    def literal(self, i: int, positive: bool = True) -> 'Bdd':
        """x_i when positive, otherwise not x_i."""
        if not 1 <= i <= self.num_vars:
            raise VariableOutOfRange(f"Variable {i} is outside 1..{self.num_vars}")
        lo, hi = (FALSE, TRUE) if positive else (TRUE, FALSE)
        return Bdd(self, self.make_node(i, lo, hi))

    # ------------------------------------------------------------------
    # Operations on ids
    # ------------------------------------------------------------------

    def apply(self, op: Op, f: int, g: int) -> int:
        """Reduced node for op(f, g); both ids must live in this store."""
        op = Op(op)
        if op is Op.AND:
            return self._and(f, g)
        return self._or(f, g)

    def _and(self, f: int, g: int) -> int:
        if f == FALSE or g == FALSE:
            return FALSE
        if f == TRUE or f == g:
            return g
        if g == TRUE:
            return f
        if f > g:
            f, g = g, f

        key = ('and', f, g)
        self.accesses += 1
        r = self._memo.get(key)
        if r is not None:
            return r

        v, f0, f1, g0, g1 = self._cofactors(f, g)
        r = self.make_node(v, self._and(f0, g0), self._and(f1, g1))
        self._memo[key] = r
        return r

    def _or(self, f: int, g: int) -> int:
        if f == TRUE or g == TRUE:
            return TRUE
        if f == FALSE or f == g:
            return g
        if g == FALSE:
            return f
        if f > g:
            f, g = g, f

        key = ('or', f, g)
        self.accesses += 1
        r = self._memo.get(key)
        if r is not None:
            return r

        v, f0, f1, g0, g1 = self._cofactors(f, g)
        r = self.make_node(v, self._or(f0, g0), self._or(f1, g1))
        self._memo[key] = r
        return r

    def _cofactors(self, f: int, g: int) -> Tuple[int, int, int, int, int]:
        # Two node reads: the top variables of both operands.
        self.accesses += 2
        vf = self._var[f]
        vg = self._var[g]
        v = vf if vf < vg else vg
        if vf == v:
            f0, f1 = self._lo[f], self._hi[f]
        else:
            f0 = f1 = f
        if vg == v:
            g0, g1 = self._lo[g], self._hi[g]
        else:
            g0 = g1 = g
        return v, f0, f1, g0, g1

    def negate(self, f: int) -> int:
        """Reduced node for not f."""
        if f <= TRUE:
            return TRUE - f
        self.accesses += 1
        r = self._not_memo.get(f)
        if r is not None:
            return r
        self.accesses += 1
        r = self.make_node(self._var[f], self.negate(self._lo[f]), self.negate(self._hi[f]))
        self._not_memo[f] = r
        return r

    def import_node(self, other: 'BddManager', u: int,
                    cache: Optional[Dict[int, int]] = None) -> int:
        """Copy node u of another store (same num_vars and order) into this one."""
        if other.num_vars != self.num_vars:
            raise ArityMismatch(
                f"Cannot combine BDDs over {other.num_vars} and {self.num_vars} variables"
            )
        if other.order != self.order:
            raise ArityMismatch(
                f"Cannot combine BDDs built with variable orders {other.order} and {self.order}"
            )
        if other is self:
            return u
        if cache is None:
            cache = {}
        return self._import(other, u, cache)

    def _import(self, other: 'BddManager', u: int, cache: Dict[int, int]) -> int:
        if u <= TRUE:
            return u
        r = cache.get(u)
        if r is None:
            lo = self._import(other, other._lo[u], cache)
            hi = self._import(other, other._hi[u], cache)
            r = self.make_node(other._var[u], lo, hi)
            cache[u] = r
        return r

    # ------------------------------------------------------------------
    # Counting and inspection
    # ------------------------------------------------------------------

    def count(self, root: int) -> int:
        """
        Exact number of satisfying assignments of the function at root.

        Walks the store in insertion order with c_0 = 0, c_1 = 1 and
        c_k = 2^(v_l - v_k - 1) c_l + 2^(v_h - v_k - 1) c_h, then returns
        2^(v_root - 1) c_root. Sinks carry variable n + 1.

        Raises:
            UnorderedStore: If some node refers to a child stored after it
        """
        var, lo, hi = self._var, self._lo, self._hi
        c = [0, 1]
        for k in range(2, root + 1):
            vk, l, h = var[k], lo[k], hi[k]
            if l >= k or h >= k:
                raise UnorderedStore(f"Node {k} refers to a child stored after it")
            c.append((c[l] << (var[l] - vk - 1)) + (c[h] << (var[h] - vk - 1)))
        return c[root] << (var[root] - 1)

    def reachable(self, root: int) -> Set[int]:
        """Non-sink node ids reachable from root."""
        seen: Set[int] = set()
        stack = [root]
        while stack:
            u = stack.pop()
            if u <= TRUE or u in seen:
                continue
            seen.add(u)
            stack.append(self._lo[u])
            stack.append(self._hi[u])
        return seen

    def node_count(self, root: int) -> int:
        """Reachable nodes plus both sinks, each sink counted once."""
        return len(self.reachable(root)) + 2

    def dump(self, root: int) -> str:
        """
        Debug listing of the function at root.

        Reachable nodes are renumbered 2, 3, ... in store order, one
        "k: var lo hi" line each; the final line holds the root id.
        """
        live = sorted(self.reachable(root))
        renumber = {FALSE: FALSE, TRUE: TRUE}
        for k, u in enumerate(live, start=2):
            renumber[u] = k
        lines = [
            f"{renumber[u]}: {self._var[u]} {renumber[self._lo[u]]} {renumber[self._hi[u]]}"
            for u in live
        ]
        lines.append(str(renumber[root]))
        return '\n'.join(lines) + '\n'


class Bdd:
    """
    Handle on one function: a manager plus a root id.

    Handles are cheap; combining them (&, |, ~) creates nodes in the shared
    store. Two handles in the same store represent the same function exactly
    when their roots are equal.
    """

    __slots__ = ('manager', 'root')

    def __init__(self, manager: BddManager, root: int):
        self.manager = manager
        self.root = root

    @property
    def num_vars(self) -> int:
        return self.manager.num_vars

    def __and__(self, other: 'Bdd') -> 'Bdd':
        return apply(Op.AND, self, other)

    def __or__(self, other: 'Bdd') -> 'Bdd':
        return apply(Op.OR, self, other)

    def __invert__(self) -> 'Bdd':
        return negate(self)

    def count(self) -> int:
        return self.manager.count(self.root)

    def node_count(self) -> int:
        return self.manager.node_count(self.root)

    def dump(self) -> str:
        return self.manager.dump(self.root)

    def is_true(self) -> bool:
        return self.root == TRUE

    def is_false(self) -> bool:
        return self.root == FALSE

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bdd):
            return NotImplemented
        return self.manager is other.manager and self.root == other.root

    def __hash__(self) -> int:
        return hash((id(self.manager), self.root))

    def __repr__(self) -> str:
        return f"Bdd(root={self.root}, num_vars={self.num_vars})"


# ============================================================================
# MODULE-LEVEL API
# ============================================================================

def constant(value: bool, num_vars: int, manager: Optional[BddManager] = None) -> Bdd:
    """TRUE or FALSE over num_vars variables (new store unless one is given)."""
    if manager is None:
        manager = BddManager(num_vars)
    elif manager.num_vars != num_vars:
        raise ArityMismatch(f"Manager has {manager.num_vars} variables, not {num_vars}")
    return manager.constant(value)


def variable(i: int, num_vars: int, manager: Optional[BddManager] = None) -> Bdd:
    """The function x_i over num_vars variables."""
    if not 1 <= i <= num_vars:
        raise VariableOutOfRange(f"Variable {i} is outside 1..{num_vars}")
    if manager is None:
        manager = BddManager(num_vars)
    elif manager.num_vars != num_vars:
        raise ArityMismatch(f"Manager has {manager.num_vars} variables, not {num_vars}")
    return manager.variable(i)


def apply(op: Op, f: Bdd, g: Bdd) -> Bdd:
    """
    Reduced BDD for op(f, g).

    Operands from different stores are allowed when they have the same
    number of variables and the same variable order; g is copied into f's
    store first.

    Raises:
        ArityMismatch: If f and g differ in num_vars or variable order
    """
    if f.num_vars != g.num_vars:
        raise ArityMismatch(
            f"Cannot combine BDDs over {f.num_vars} and {g.num_vars} variables"
        )
    mgr = f.manager
    g_root = mgr.import_node(g.manager, g.root)
    return Bdd(mgr, mgr.apply(op, f.root, g_root))


def negate(f: Bdd) -> Bdd:
    """Complement of f."""
    return Bdd(f.manager, f.manager.negate(f.root))


def conjoin(parts, manager: BddManager) -> Bdd:
    """AND of an iterable of Bdds, folded left to right from TRUE."""
    acc = manager.constant(True)
    for part in parts:
        acc = apply(Op.AND, acc, part)
    return acc


def count_solutions(f: Bdd) -> int:
    """Exact number of satisfying assignments of f over all its variables."""
    return f.count()


def node_count(f: Bdd) -> int:
    """Reachable nodes of f including both sinks (each counted once)."""
    return f.node_count()


def access_count(session) -> int:
    """Access tally of a BddManager, or of the manager behind a Bdd."""
    if isinstance(session, Bdd):
        session = session.manager
    return session.accesses


def dump(f: Bdd) -> str:
    return f.dump()

"""The free bounded distributive lattice over a diagram's node poset.

Elements are kept in a join-of-meets normal form: a term is an antichain
of clauses, each clause an antichain of generator nodes standing for
their meet.  The empty clause set is bottom, the single empty clause is
top.  Order between clauses follows the node poset: a meet of generators
M lies below a meet N exactly when every generator of N has one of M
below it.  Normal forms are canonical, so term equality is value
equality, and all operations are pure.

This completion deliberately keeps formally distinct terms distinct even
when their vector-space realizations are isomorphic; the realization
module attaches dimensions and ranks to node sets separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .diagram import CompositeTable, UnknownNodeError

__all__ = [
    "BudgetExceededError",
    "DEFAULT_BUDGET",
    "LatticeTerm",
    "TermLattice",
]

DEFAULT_BUDGET = 100_000

_MEET = "∧"
_JOIN = "∨"
_TOP = "⊤"
_BOTTOM = "⊥"


class BudgetExceededError(Exception):
    """Enumeration grew past the configured element budget."""

    def __init__(self, budget: int, partial: list["LatticeTerm"]):
        self.budget = budget
        self.partial = partial
        super().__init__(f"lattice enumeration exceeded budget of {budget} elements")


@dataclass(frozen=True)
class LatticeTerm:
    """A normal-form element: a frozenset of clauses (frozensets of node ids)."""

    clauses: frozenset[frozenset[str]]

    @property
    def is_bottom(self) -> bool:
        return not self.clauses

    @property
    def is_top(self) -> bool:
        return self.clauses == frozenset({frozenset()})

    def sort_key(self) -> tuple:
        return tuple(sorted(tuple(sorted(c)) for c in self.clauses))

    def __str__(self) -> str:
        if self.is_bottom:
            return _BOTTOM
        if self.is_top:
            return _TOP
        parts = []
        for clause in sorted(self.clauses, key=lambda c: tuple(sorted(c))):
            gens = sorted(clause)
            body = _MEET.join(gens)
            parts.append(f"({body})" if len(gens) > 1 and len(self.clauses) > 1 else body)
        return _JOIN.join(parts)

    def to_clause_lists(self) -> list[list[str]]:
        return sorted([sorted(c) for c in self.clauses])


class TermLattice:
    """Meet, join, order, and Heyting implication on normal-form terms.

    Built over a validated diagram; generator order is the diagram's
    reachability relation.
    """

    def __init__(self, table: CompositeTable):
        self.table = table
        self.nodes = tuple(sorted(table.diagram.node_ids))
        self._node_set = set(self.nodes)
        self.bottom = LatticeTerm(frozenset())
        self.top = LatticeTerm(frozenset({frozenset()}))
        self._leq_nodes = lru_cache(maxsize=None)(self._leq_nodes_uncached)

    # -- construction ------------------------------------------------

    def node(self, node_id: str) -> LatticeTerm:
        if node_id not in self._node_set:
            raise UnknownNodeError(node_id)
        return LatticeTerm(frozenset({frozenset({node_id})}))

    def term(self, clauses: Iterable[Iterable[str]]) -> LatticeTerm:
        """Normal form of an explicit join-of-meets clause list."""
        built = []
        for clause in clauses:
            gens = frozenset(clause)
            for g in gens:
                if g not in self._node_set:
                    raise UnknownNodeError(g)
            built.append(self._min_generators(gens))
        return LatticeTerm(self._max_clauses(built))

    # -- order -------------------------------------------------------

    def _leq_nodes_uncached(self, a: str, b: str) -> bool:
        return self.table.reachable(a, b)

    def _clause_leq(self, m: frozenset[str], n: frozenset[str]) -> bool:
        """Meet-of-m lies below meet-of-n."""
        return all(any(self._leq_nodes(g, h) for g in m) for h in n)

    def leq(self, a: LatticeTerm, b: LatticeTerm) -> bool:
        self._check(a)
        self._check(b)
        return all(any(self._clause_leq(m, n) for n in b.clauses) for m in a.clauses)

    def equal(self, a: LatticeTerm, b: LatticeTerm) -> bool:
        return a == b

    # -- normalization helpers ----------------------------------------

    def _min_generators(self, gens: frozenset[str]) -> frozenset[str]:
        return frozenset(
            g for g in gens if not any(h != g and self._leq_nodes(h, g) for h in gens)
        )

    def _max_clauses(self, clauses: Sequence[frozenset[str]]) -> frozenset[frozenset[str]]:
        distinct = set(clauses)
        return frozenset(
            m for m in distinct if not any(n != m and self._clause_leq(m, n) for n in distinct)
        )

    def _check(self, t: LatticeTerm):
        for clause in t.clauses:
            for g in clause:
                if g not in self._node_set:
                    raise UnknownNodeError(g)

    # -- operations ----------------------------------------------------

    def meet(self, *terms: LatticeTerm) -> LatticeTerm:
        """n-ary meet; the empty meet is top."""
        result = self.top
        for t in terms:
            self._check(t)
            merged = [
                self._min_generators(m | n) for m in result.clauses for n in t.clauses
            ]
            result = LatticeTerm(self._max_clauses(merged))
        return result

    def join(self, *terms: LatticeTerm) -> LatticeTerm:
        """n-ary join; the empty join is bottom."""
        clauses: list[frozenset[str]] = []
        for t in terms:
            self._check(t)
            clauses.extend(t.clauses)
        return LatticeTerm(self._max_clauses(clauses))

    def implies(self, a: LatticeTerm, b: LatticeTerm) -> LatticeTerm:
        """Heyting arrow: the join of every meet-clause x with x ∧ a ≤ b.

        Meet-clauses are the join-irreducible elements here, so this join
        is the largest element satisfying the adjunction.
        """
        passing = []
        for clause in self._all_clauses():
            x = LatticeTerm(frozenset({clause}))
            if self.leq(self.meet(x, a), b):
                passing.append(x)
        return self.join(*passing)

    def complement(self, a: LatticeTerm, budget: int = DEFAULT_BUDGET) -> LatticeTerm | None:
        """Some x with a ∧ x = ⊥ and a ∨ x = ⊤, if one exists."""
        for x in self.enumerate_elements(budget):
            if self.meet(a, x).is_bottom and self.join(a, x).is_top:
                return x
        return None

    def enumerate_elements(self, budget: int = DEFAULT_BUDGET) -> list[LatticeTerm]:
        """Close the generators (plus bounds) under meet and join.

        Deterministic order; raises BudgetExceededError carrying the
        partial element list when the closure outgrows the budget.
        """
        if budget < 1:
            raise ValueError("budget must be at least 1")
        elems: dict[LatticeTerm, None] = {}
        for t in [self.bottom, self.top] + [self.node(n) for n in self.nodes]:
            elems[t] = None
        if len(elems) > budget:
            raise BudgetExceededError(budget, sorted(elems, key=LatticeTerm.sort_key))
        frontier = list(elems)
        while frontier:
            new: dict[LatticeTerm, None] = {}
            known = list(elems)
            for x in frontier:
                for y in known:
                    for cand in (self.meet(x, y), self.join(x, y)):
                        if cand not in elems and cand not in new:
                            new[cand] = None
                            if len(elems) + len(new) > budget:
                                partial = sorted(list(elems) + list(new), key=LatticeTerm.sort_key)
                                raise BudgetExceededError(budget, partial)
            for t in new:
                elems[t] = None
            frontier = list(new)
        return sorted(elems, key=LatticeTerm.sort_key)

    def hasse_edges(
        self, elements: Sequence[LatticeTerm]
    ) -> list[tuple[LatticeTerm, LatticeTerm]]:
        """Covering pairs (a, b) with a < b and nothing strictly between."""
        elems = list(dict.fromkeys(elements))
        below: dict[LatticeTerm, list[LatticeTerm]] = {e: [] for e in elems}
        for a in elems:
            for b in elems:
                if a != b and self.leq(a, b):
                    below[b].append(a)
        edges = []
        for b in elems:
            for a in below[b]:
                if not any(c != a and self.leq(a, c) for c in below[b]):
                    edges.append((a, b))
        edges.sort(key=lambda e: (e[0].sort_key(), e[1].sort_key()))
        return edges

    # -- candidates for implication ------------------------------------

    def _all_clauses(self) -> tuple[frozenset[str], ...]:
        if not hasattr(self, "_clause_cache"):
            if len(self.nodes) > 20:
                raise BudgetExceededError(2 ** 20, [])
            seen: dict[frozenset[str], None] = {}
            for r in range(len(self.nodes) + 1):
                for combo in combinations(self.nodes, r):
                    seen[self._min_generators(frozenset(combo))] = None
            self._clause_cache = tuple(seen)
        return self._clause_cache

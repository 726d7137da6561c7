"""Commutative directed acyclic diagrams of GF(p) vector spaces.

A diagram is a finite set of named vector spaces (nodes with dimensions)
and linear maps (edges with matrices).  Validation checks acyclicity,
matrix shapes, edge uniqueness, and commutativity: every pair of directed
paths between the same two nodes must compose to the same matrix.  The
result is a table of the unique composite map for each reachable pair,
which doubles as the reachability relation ("A is below B" means some
composite A -> B exists in the diagram).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .gf import Field, FieldMismatchError, Matrix, ShapeError

__all__ = [
    "CommutativityError",
    "CompositeTable",
    "CycleError",
    "Diagram",
    "DiagramError",
    "DisconnectedDiagramWarning",
    "DuplicateEdgeError",
    "Edge",
    "GridShape",
    "UnknownNodeError",
    "validate",
]


class DiagramError(Exception):
    """Base class for diagram construction and validation failures."""

    code = "diagram"


class CycleError(DiagramError):
    code = "cycle"

    def __init__(self, nodes: Sequence[str]):
        self.nodes = tuple(nodes)
        super().__init__(f"diagram has a directed cycle through {sorted(self.nodes)}")


class DuplicateEdgeError(DiagramError):
    code = "duplicate-edge"

    def __init__(self, src: str, dst: str):
        self.src, self.dst = src, dst
        super().__init__(f"more than one edge {src} -> {dst}")


class UnknownNodeError(DiagramError):
    code = "unknown-node"

    def __init__(self, node_id: str):
        self.node_id = node_id
        super().__init__(f"unknown node id {node_id!r}")


class CommutativityError(DiagramError):
    code = "commutativity"

    def __init__(self, pair: tuple[str, str], path_a: Sequence[str], path_b: Sequence[str]):
        self.pair = pair
        self.path_a = tuple(path_a)
        self.path_b = tuple(path_b)
        super().__init__(
            f"paths {' -> '.join(self.path_a)} and {' -> '.join(self.path_b)} "
            f"compose to different maps {pair[0]} -> {pair[1]}"
        )


class DisconnectedDiagramWarning(UserWarning):
    """The diagram has more than one connected component."""


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    matrix: Matrix


@dataclass(frozen=True)
class GridShape:
    """Marks a diagram as a width x height bifiltration grid."""

    width: int
    height: int


class Diagram:
    """An immutable diagram; run :func:`validate` to obtain composites.

    Construction checks only local well-formedness (unique node ids,
    known edge endpoints, a single field).  Shape, acyclicity and
    commutativity are validation-time checks so that callers can report
    them all together.
    """

    __slots__ = ("field", "node_ids", "_dims", "edges", "shape", "_out", "_in")

    def __init__(
        self,
        field: Field,
        nodes: Sequence[tuple[str, int]],
        edges: Iterable[Edge | tuple[str, str, Matrix]],
        shape: str | GridShape | None = None,
    ):
        ids = []
        dims = {}
        for node_id, dim in nodes:
            if node_id in dims:
                raise ValueError(f"node id {node_id!r} declared twice")
            if dim < 0:
                raise ValueError(f"node {node_id!r} has negative dimension")
            ids.append(node_id)
            dims[node_id] = int(dim)
        edge_list = []
        for e in edges:
            if not isinstance(e, Edge):
                e = Edge(*e)
            if e.src not in dims:
                raise UnknownNodeError(e.src)
            if e.dst not in dims:
                raise UnknownNodeError(e.dst)
            if e.matrix.field != field:
                raise FieldMismatchError(f"edge {e.src}->{e.dst} is over {e.matrix.field}, diagram over {field}")
            edge_list.append(e)
        out: dict[str, list[Edge]] = {i: [] for i in ids}
        incoming: dict[str, list[Edge]] = {i: [] for i in ids}
        for e in edge_list:
            out[e.src].append(e)
            incoming[e.dst].append(e)
        for lst in out.values():
            lst.sort(key=lambda e: e.dst)
        for lst in incoming.values():
            lst.sort(key=lambda e: e.src)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "node_ids", tuple(ids))
        object.__setattr__(self, "_dims", dims)
        object.__setattr__(self, "edges", tuple(edge_list))
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_in", incoming)

    def __setattr__(self, name, value):
        raise AttributeError("Diagram is immutable")

    def dim(self, node_id: str) -> int:
        try:
            return self._dims[node_id]
        except KeyError:
            raise UnknownNodeError(node_id) from None

    def has_node(self, node_id: str) -> bool:
        return node_id in self._dims

    def out_edges(self, node_id: str) -> list[Edge]:
        self.dim(node_id)
        return list(self._out[node_id])

    def in_edges(self, node_id: str) -> list[Edge]:
        self.dim(node_id)
        return list(self._in[node_id])

    def sources(self) -> tuple[str, ...]:
        """Nodes that are not the codomain of any map."""
        return tuple(i for i in self.node_ids if not self._in[i])

    def targets(self) -> tuple[str, ...]:
        """Nodes that are not the domain of any map."""
        return tuple(i for i in self.node_ids if not self._out[i])

    def __repr__(self):
        return f"Diagram(GF({self.field.p}), {len(self.node_ids)} nodes, {len(self.edges)} edges)"


class CompositeTable:
    """The unique composite matrix for every reachable ordered node pair.

    comp[u][v] exists iff a directed path u -> v exists (reflexively, with
    the identity).  paths[u][v] records one witnessing node sequence.
    """

    __slots__ = ("diagram", "_comp", "_paths")

    def __init__(self, diagram: Diagram, comp: Mapping[str, dict[str, Matrix]], paths: Mapping[str, dict[str, tuple[str, ...]]]):
        object.__setattr__(self, "diagram", diagram)
        object.__setattr__(self, "_comp", {u: dict(d) for u, d in comp.items()})
        object.__setattr__(self, "_paths", {u: dict(d) for u, d in paths.items()})

    def __setattr__(self, name, value):
        raise AttributeError("CompositeTable is immutable")

    def reachable(self, u: str, v: str) -> bool:
        self.diagram.dim(u)
        self.diagram.dim(v)
        return v in self._comp[u]

    def composite(self, u: str, v: str) -> Matrix:
        self.diagram.dim(u)
        self.diagram.dim(v)
        try:
            return self._comp[u][v]
        except KeyError:
            raise ValueError(f"no path {u} -> {v}") from None

    def path(self, u: str, v: str) -> tuple[str, ...]:
        self.diagram.dim(u)
        try:
            return self._paths[u][v]
        except KeyError:
            raise ValueError(f"no path {u} -> {v}") from None

    def above(self, u: str) -> tuple[str, ...]:
        """All nodes reachable from u, lexicographically sorted."""
        self.diagram.dim(u)
        return tuple(sorted(self._comp[u]))

    def common_targets(self, node_set: Iterable[str]) -> tuple[str, ...]:
        """Nodes reachable from every member of the set."""
        members = list(dict.fromkeys(node_set))
        if not members:
            raise ValueError("common_targets of an empty set")
        for u in members:
            self.diagram.dim(u)
        acc = set(self._comp[members[0]])
        for u in members[1:]:
            acc &= set(self._comp[u])
        return tuple(sorted(acc))

    def common_sources(self, node_set: Iterable[str]) -> tuple[str, ...]:
        """Nodes that map to every member of the set."""
        members = list(dict.fromkeys(node_set))
        if not members:
            raise ValueError("common_sources of an empty set")
        for u in members:
            self.diagram.dim(u)
        wanted = set(members)
        return tuple(sorted(v for v in self.diagram.node_ids if wanted <= set(self._comp[v])))

    def minimal_common_targets(self, node_set: Iterable[str]) -> tuple[str, ...]:
        """Common targets with no other common target strictly below them."""
        cts = self.common_targets(node_set)
        return tuple(t for t in cts if not any(s != t and self.reachable(s, t) for s in cts))

    def maximal_common_sources(self, node_set: Iterable[str]) -> tuple[str, ...]:
        """Common sources with no other common source strictly above them."""
        css = self.common_sources(node_set)
        return tuple(s for s in css if not any(t != s and self.reachable(s, t) for t in css))

    def __eq__(self, other):
        return isinstance(other, CompositeTable) and other._comp == self._comp


def _topological_order(d: Diagram) -> list[str]:
    """Kahn's algorithm with lexicographic tie-breaks, so the order does
    not depend on declaration order."""
    indeg = {i: len(d.in_edges(i)) for i in d.node_ids}
    ready = sorted(i for i in d.node_ids if indeg[i] == 0)
    order = []
    while ready:
        u = ready.pop(0)
        order.append(u)
        changed = False
        for e in d.out_edges(u):
            indeg[e.dst] -= 1
            if indeg[e.dst] == 0:
                ready.append(e.dst)
                changed = True
        if changed:
            ready.sort()
    if len(order) != len(d.node_ids):
        raise CycleError([i for i in d.node_ids if indeg[i] > 0])
    return order


def _check_connected(d: Diagram):
    if not d.node_ids:
        return
    seen = {d.node_ids[0]}
    stack = [d.node_ids[0]]
    neighbors = {i: set() for i in d.node_ids}
    for e in d.edges:
        neighbors[e.src].add(e.dst)
        neighbors[e.dst].add(e.src)
    while stack:
        u = stack.pop()
        for v in neighbors[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    if len(seen) != len(d.node_ids):
        warnings.warn(
            "diagram is disconnected; meets and joins across components fall "
            "back to the empty-family conventions",
            DisconnectedDiagramWarning,
            stacklevel=3,
        )


def validate(d: Diagram) -> CompositeTable:
    """Check the diagram invariants and return its composite table.

    Raises DuplicateEdgeError, ShapeError, CycleError, or
    CommutativityError (reporting the two offending paths) as soon as a
    violation is found.  Composites are propagated in topological order,
    one matrix per reachable pair.
    """
    seen_pairs = set()
    for e in sorted(d.edges, key=lambda e: (e.src, e.dst)):
        if (e.src, e.dst) in seen_pairs:
            raise DuplicateEdgeError(e.src, e.dst)
        seen_pairs.add((e.src, e.dst))
        if e.matrix.rows != d.dim(e.dst) or e.matrix.cols != d.dim(e.src):
            raise ShapeError(
                f"edge {e.src} -> {e.dst} carries a {e.matrix.rows}x{e.matrix.cols} matrix, "
                f"expected {d.dim(e.dst)}x{d.dim(e.src)}"
            )
    order = _topological_order(d)
    _check_connected(d)

    comp: dict[str, dict[str, Matrix]] = {}
    paths: dict[str, dict[str, tuple[str, ...]]] = {}
    for u in order:
        comp[u] = {u: Matrix.identity(d.field, d.dim(u))}
        paths[u] = {u: (u,)}
        for v in order:
            if v not in comp[u]:
                continue
            for e in d.out_edges(v):
                cand = e.matrix @ comp[u][v]
                cand_path = paths[u][v] + (e.dst,)
                if e.dst in comp[u]:
                    if comp[u][e.dst] != cand:
                        raise CommutativityError((u, e.dst), paths[u][e.dst], cand_path)
                else:
                    comp[u][e.dst] = cand
                    paths[u][e.dst] = cand_path
    return CompositeTable(d, comp, paths)

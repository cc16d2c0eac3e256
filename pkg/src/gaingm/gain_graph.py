"""Gain graphs, vertex partitions and switching isomorphism."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    GainGraphError,
    GroupMismatchError,
    ParseError,
    UnsupportedFeatureError,
)
from .gg_matrix import GAMatrix
from .groups import Group, GroupElement
from .quaternions import QuatMatrix

MAX_SWISO_VERTICES = 12


class GainGraph:
    """A simple graph whose oriented edges carry group elements.

    Only psi(u, v) for u before v in the vertex order is stored; the reverse
    orientation is always the inverse. Instances are immutable.
    """

    __slots__ = ("group", "vertices", "_pos", "_gains", "_nbrs")

    def __init__(self, group: Group, vertices: Sequence, edges: Iterable = ()):
        self.group = group
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise GainGraphError("duplicate vertex labels")
        self._pos = {v: i for i, v in enumerate(self.vertices)}
        gains: dict[tuple[int, int], GroupElement] = {}
        items = edges.items() if isinstance(edges, Mapping) else edges
        for item in items:
            if len(item) == 2:
                (u, v), g = item
            else:
                u, v, g = item
            i, j = self.index(u), self.index(v)
            if i == j:
                raise GainGraphError(f"loop at vertex {u!r}")
            if isinstance(g, str):
                g = group.parse(g)
            if not isinstance(g, GroupElement) or g.group != group:
                raise GroupMismatchError(f"gain {g!r} on edge ({u}, {v}) is not in {group.name}")
            key = (i, j) if i < j else (j, i)
            if key in gains:
                raise GainGraphError(f"multiple edges between {u!r} and {v!r}")
            gains[key] = g if i < j else g.inverse()
        self._gains = dict(sorted(gains.items()))
        nbrs: list[list[int]] = [[] for _ in self.vertices]
        for i, j in self._gains:
            nbrs[i].append(j)
            nbrs[j].append(i)
        self._nbrs = tuple(tuple(sorted(x)) for x in nbrs)

    # -- basic queries ------------------------------------------------------

    def index(self, v) -> int:
        try:
            return self._pos[str(v)]
        except KeyError:
            raise GainGraphError(f"unknown vertex {v!r}") from None

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self._gains)

    def has_edge(self, u, v) -> bool:
        i, j = self.index(u), self.index(v)
        return (min(i, j), max(i, j)) in self._gains

    def gain(self, u, v) -> GroupElement | None:
        """psi(u, v), or None when u and v are not adjacent."""
        i, j = self.index(u), self.index(v)
        g = self._gains.get((min(i, j), max(i, j)))
        if g is None:
            return None
        return g if i < j else g.inverse()

    def neighbors(self, v) -> list[str]:
        return [self.vertices[j] for j in self._nbrs[self.index(v)]]

    def degree(self, v) -> int:
        return len(self._nbrs[self.index(v)])

    def degrees(self) -> list[int]:
        return [len(n) for n in self._nbrs]

    def edges(self) -> Iterator[tuple[str, str, GroupElement]]:
        """Edges as (u, v, psi(u, v)) with u before v in vertex order."""
        for (i, j), g in self._gains.items():
            yield self.vertices[i], self.vertices[j], g

    def underlying(self) -> np.ndarray:
        A = np.zeros((len(self), len(self)), dtype=int)
        for i, j in self._gains:
            A[i, j] = A[j, i] = 1
        return A

    # -- matrices -----------------------------------------------------------

    def adjacency(self, order: Sequence | None = None) -> GAMatrix:
        """A_(Gamma, psi) in vertex order, or in ``order`` if given."""
        if not self.group.is_finite:
            raise UnsupportedFeatureError(
                "adjacency over the unit quaternions lives in H; use quaternion_adjacency()")
        idx = self._order_indices(order)
        where = {old: new for new, old in enumerate(idx)}
        n = len(self)
        data = np.zeros((n, n, self.group.order), dtype=complex)
        for (i, j), g in self._gains.items():
            a, b = where[i], where[j]
            data[a, b, self.group.index(g)] = 1
            data[b, a, self.group.index(g.inverse())] = 1
        return GAMatrix(self.group, data)

    def quaternion_adjacency(self, order: Sequence | None = None) -> QuatMatrix:
        if self.group.kind != "unit_quaternion":
            raise GroupMismatchError("quaternion adjacency needs unit-quaternion gains")
        idx = self._order_indices(order)
        where = {old: new for new, old in enumerate(idx)}
        n = len(self)
        data = np.zeros((n, n, 4))
        for (i, j), g in self._gains.items():
            a, b = where[i], where[j]
            data[a, b] = g.value.as_tuple()
            data[b, a] = g.value.conj().as_tuple()
        return QuatMatrix(data)

    def _order_indices(self, order: Sequence | None) -> list[int]:
        if order is None:
            return list(range(len(self)))
        idx = [self.index(v) for v in order]
        if sorted(idx) != list(range(len(self))):
            raise GainGraphError("vertex order must list every vertex exactly once")
        return idx

    # -- walks and balance --------------------------------------------------

    def walk_gain(self, walk: Sequence) -> GroupElement:
        """psi(w0, w1) psi(w1, w2) ... along a walk; the empty walk has gain 1."""
        out = self.group.identity
        for u, v in zip(walk, walk[1:]):
            g = self.gain(u, v)
            if g is None:
                raise GainGraphError(f"{u!r} and {v!r} are not adjacent, not a walk")
            out = out * g
        if walk:
            self.index(walk[0])
        return out

    def potentials(self) -> dict[str, GroupElement]:
        """Spanning-forest potentials p with p(v) = p(u) psi(u, v) on tree edges."""
        pot: dict[int, GroupElement] = {}
        for root in range(len(self)):
            if root in pot:
                continue
            pot[root] = self.group.identity
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for w in self._nbrs[u]:
                    if w not in pot:
                        pot[w] = pot[u] * self.gain(self.vertices[u], self.vertices[w])
                        queue.append(w)
        return {self.vertices[i]: g for i, g in sorted(pot.items())}

    def is_balanced(self) -> bool:
        pot = self.potentials()
        return all(pot[u] * g == pot[v] for u, v, g in self.edges())

    # -- derived graphs -----------------------------------------------------

    def with_gains(self, edges: Iterable[tuple[str, str, GroupElement]]) -> GainGraph:
        return GainGraph(self.group, self.vertices, edges)

    def multiply_gain(self, u, v, left: GroupElement) -> GainGraph:
        """Replace psi(u, v) by left * psi(u, v) (and the reverse by its inverse)."""
        g = self.gain(u, v)
        if g is None:
            raise GainGraphError(f"no edge between {u!r} and {v!r}")
        if left.group != self.group:
            raise GroupMismatchError("multiplier is not in the gain group")
        key = {str(u), str(v)}
        out = [(a, b, h) for a, b, h in self.edges() if {a, b} != key]
        out.append((str(u), str(v), left * g))
        return self.with_gains(out)

    def switched_by(self, f: Mapping[str, GroupElement]) -> GainGraph:
        """Gain function f(u)^-1 psi(u, v) f(v) (missing vertices get 1)."""
        one = self.group.identity
        return self.with_gains(
            (u, v, f.get(u, one).inverse() * g * f.get(v, one)) for u, v, g in self.edges())

    def relabeled(self, phi: Mapping[str, str]) -> GainGraph:
        """Image of the graph under a vertex bijection; vertex order is kept."""
        return GainGraph(self.group, self.vertices,
                         ((phi[u], phi[v], g) for u, v, g in self.edges()))

    # -- comparison and serialisation --------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, GainGraph):
            return NotImplemented
        return (self.group == other.group and self.vertices == other.vertices
                and self._gains.keys() == other._gains.keys()
                and all(self._gains[k] == other._gains[k] for k in self._gains))

    __hash__ = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "group": self.group.to_spec(),
            "vertices": list(self.vertices),
            "edges": [{"u": u, "v": v, "gain": str(g)} for u, v, g in self.edges()],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> GainGraph:
        try:
            group = Group.from_spec(data["group"])
            vertices = [str(v) for v in data["vertices"]]
            raw_edges = data.get("edges", [])
            edges = [(str(e["u"]), str(e["v"]),
                      group.parse(str(e["gain"])) if "gain" in e else group.identity)
                     for e in raw_edges]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed graph object: missing or bad field {exc}") from exc
        try:
            return cls(group, vertices, edges)
        except GainGraphError as exc:
            raise ParseError(str(exc)) from exc

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> GainGraph:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"graph file is not valid JSON: {exc}") from exc
        return cls.from_dict(data)

    def __repr__(self) -> str:
        return f"GainGraph({self.group.name}, {len(self)} vertices, {self.num_edges} edges)"


@dataclass(frozen=True)
class Partition:
    """Ordered cells C0, C1, ..., Ck; C0 may be empty, the others may not."""

    cells: tuple[tuple[str, ...], ...]

    def __init__(self, cells: Iterable[Iterable]):
        object.__setattr__(self, "cells", tuple(tuple(str(v) for v in c) for c in cells))
        if not self.cells:
            raise GainGraphError("a partition needs at least the cell C0")
        for i, c in enumerate(self.cells[1:], start=1):
            if not c:
                raise GainGraphError(f"cell C{i} is empty")
        flat = [v for c in self.cells for v in c]
        if len(set(flat)) != len(flat):
            raise GainGraphError("partition cells overlap")

    @property
    def c0(self) -> tuple[str, ...]:
        return self.cells[0]

    @property
    def k(self) -> int:
        return len(self.cells) - 1

    def vertex_order(self) -> list[str]:
        return [v for c in self.cells for v in c]

    def sizes(self) -> list[int]:
        return [len(c) for c in self.cells]

    def cell_of(self, v) -> int:
        for i, c in enumerate(self.cells):
            if str(v) in c:
                return i
        raise GainGraphError(f"vertex {v!r} is in no cell")

    def validate(self, graph: GainGraph) -> None:
        flat = self.vertex_order()
        missing = set(graph.vertices) - set(flat)
        extra = set(flat) - set(graph.vertices)
        if missing or extra:
            raise GainGraphError(
                f"partition does not match the graph (missing {sorted(missing)}, unknown {sorted(extra)})")

    def to_dict(self) -> dict[str, Any]:
        return {"cells": [list(c) for c in self.cells]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> Partition:
        try:
            return cls(data["cells"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed partition object: {exc}") from exc
        except GainGraphError as exc:
            raise ParseError(str(exc)) from exc

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> Partition:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"partition file is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


def adjacency(g: GainGraph) -> GAMatrix:
    return g.adjacency()


def walk_gain(g: GainGraph, walk: Sequence) -> GroupElement:
    return g.walk_gain(walk)


def is_balanced(g: GainGraph) -> bool:
    return g.is_balanced()


def multiply_gain(g: GainGraph, edge: tuple, left: GroupElement) -> GainGraph:
    u, v = edge
    return g.multiply_gain(u, v, left)


# -- switching isomorphism ---------------------------------------------------

@dataclass(frozen=True)
class SwitchingWitness:
    """phi: V1 -> V2 and f: V1 -> G with psi2(phi u, phi v) = f(u)^-1 psi1(u, v) f(v)."""

    mapping: dict[str, str]
    switching: dict[str, GroupElement]

    def to_dict(self) -> dict[str, Any]:
        return {"mapping": dict(self.mapping),
                "switching": {v: str(g) for v, g in self.switching.items()}}


def _bijections(g1: GainGraph, g2: GainGraph) -> Iterator[list[int]]:
    """Adjacency-preserving bijections, lexicographic in g2's vertex order."""
    n = len(g1)
    A1, A2 = g1.underlying(), g2.underlying()
    d1, d2 = A1.sum(axis=1), A2.sum(axis=1)
    if sorted(d1) != sorted(d2):
        return
    image = [-1] * n
    used = [False] * n

    def extend(i: int) -> Iterator[list[int]]:
        if i == n:
            yield list(image)
            return
        for c in range(n):
            if used[c] or d2[c] != d1[i]:
                continue
            if any(A1[i, j] != A2[c, image[j]] for j in range(i)):
                continue
            image[i] = c
            used[c] = True
            yield from extend(i + 1)
            used[c] = False
        image[i] = -1

    yield from extend(0)


def _solve_gauge(g1: GainGraph, g2: GainGraph, image: list[int]) -> dict[int, GroupElement] | None:
    G = g1.group
    one = G.identity
    n = len(g1)
    v1, v2 = g1.vertices, g2.vertices
    f: dict[int, GroupElement] = {}
    seen = [False] * n
    for root in range(n):
        if seen[root]:
            continue
        X: dict[int, GroupElement] = {root: one}
        Y: dict[int, GroupElement] = {root: one}
        seen[root] = True
        comp = [root]
        tree: set[tuple[int, int]] = set()
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g1._nbrs[u]:
                if seen[w]:
                    continue
                seen[w] = True
                comp.append(w)
                tree.add((min(u, w), max(u, w)))
                p1 = g1.gain(v1[u], v1[w])
                p2 = g2.gain(v2[image[u]], v2[image[w]])
                X[w] = p1.inverse() * X[u]
                Y[w] = Y[u] * p2
                queue.append(w)
        conditions = []
        members = set(comp)
        for (i, j), p1 in g1._gains.items():
            if i not in members or (i, j) in tree:
                continue
            p2 = g2.gain(v2[image[i]], v2[image[j]])
            c1 = X[i].inverse() * p1 * X[j]
            c2 = Y[i] * p2 * Y[j].inverse()
            conditions.append((c1, c2))
        if G.is_abelian:
            candidates = [one] if all(c1 == c2 for c1, c2 in conditions) else []
        else:
            candidates = [g0 for g0 in G.elements()
                          if all(g0.inverse() * c1 * g0 == c2 for c1, c2 in conditions)]
        if not candidates:
            return None
        g0 = candidates[0]
        for w in comp:
            f[w] = X[w] * g0 * Y[w]
    return f


def switching_isomorphic(g1: GainGraph, g2: GainGraph) -> SwitchingWitness | None:
    """Search for a vertex bijection and switching function relating g1 to g2.

    Brute force over adjacency-preserving bijections (at most 12 vertices); for
    each, the switching function is fixed along a spanning forest up to one
    free element per component, which is then found by enumeration.
    """
    if g1.group != g2.group:
        raise GroupMismatchError("graphs have different gain groups")
    if not g1.group.is_finite:
        raise UnsupportedFeatureError(
            f"switching isomorphism over the infinite group {g1.group.name} is not supported")
    if len(g1) != len(g2) or g1.num_edges != g2.num_edges:
        return None
    if len(g1) > MAX_SWISO_VERTICES:
        raise UnsupportedFeatureError(
            f"switching isomorphism search is capped at {MAX_SWISO_VERTICES} vertices")
    for image in _bijections(g1, g2):
        f = _solve_gauge(g1, g2, image)
        if f is None:
            continue
        mapping = {g1.vertices[i]: g2.vertices[image[i]] for i in range(len(g1))}
        switching = {g1.vertices[i]: f[i] for i in range(len(g1))}
        witness = SwitchingWitness(mapping, switching)
        if check_witness(g1, g2, witness):
            return witness
    return None


def check_witness(g1: GainGraph, g2: GainGraph, w: SwitchingWitness) -> bool:
    if sorted(w.mapping.values()) != sorted(g2.vertices):
        return False
    if g1.num_edges != g2.num_edges:
        return False
    for u, v, p1 in g1.edges():
        p2 = g2.gain(w.mapping[u], w.mapping[v])
        if p2 is None or w.switching[u].inverse() * p1 * w.switching[v] != p2:
            return False
    return True

"""Random gain graphs with a planted GM partition, for property testing.

Blocks between cells C_i and C_j use a residue-class pattern: with
d = gcd(|C_i|, |C_j|), the gain from the a-th vertex of C_i to the b-th of C_j
is c[(a - b) mod d]. Every row and column of such a block has the same
multiset of gains, so the row sums Psi_j agree across a cell. Blocks inside a
cell are circulant with c[n - r] = c[r]^-1, which keeps psi(v, u) = psi(u, v)^-1.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .gain_graph import GainGraph, Partition
from .groups import Group, GroupElement, find_minus_identity
from .representations import Representation


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


class _Draw:
    def __init__(self, group: Group, rng: np.random.Generator, density: float):
        self.group = group
        self.rng = rng
        self.density = density
        self.els = group.elements()
        self.involutions = [x for x in self.els if (x * x).is_identity]

    def gain(self) -> GroupElement:
        return self.els[int(self.rng.integers(len(self.els)))]

    def entry(self) -> GroupElement | None:
        return self.gain() if self.rng.random() < self.density else None

    def involution_entry(self) -> GroupElement | None:
        if self.rng.random() >= self.density:
            return None
        return self.involutions[int(self.rng.integers(len(self.involutions)))]


def random_cells(rng: np.random.Generator, max_cells: int = 3, max_size: int = 5,
                 max_c0: int = 3) -> list[int]:
    """Sizes [n0, n1, ..., nk]; n0 may be 0."""
    k = int(rng.integers(1, max_cells + 1))
    return [int(rng.integers(0, max_c0 + 1))] + [int(rng.integers(1, max_size + 1)) for _ in range(k)]


def _layout(sizes: Sequence[int], rng: np.random.Generator) -> tuple[list[str], list[list[str]]]:
    n = sum(sizes)
    labels = [f"v{t}" for t in range(1, n + 1)]
    shuffled = [labels[t] for t in rng.permutation(n)]
    cells, start = [], 0
    for size in sizes:
        cells.append(shuffled[start:start + size])
        start += size
    return labels, cells


def _c0_row(draw: _Draw, cell: Sequence[str]) -> list[GroupElement | None]:
    """Gains from a C0 vertex into a cell that satisfy the half/half rule."""
    n = len(cell)
    options = ["skip", "full"] + (["half", "two"] if n % 2 == 0 else [])
    kind = options[int(draw.rng.integers(len(options)))]
    if kind == "skip":
        return [None] * n
    g1 = draw.gain()
    if kind == "full":
        return [g1] * n
    g2 = None if kind == "half" else draw.gain()
    row = [g1] * (n // 2) + [g2] * (n // 2)
    return [row[t] for t in draw.rng.permutation(n)]


def random_g_gm_instance(group: Group, seed=None, sizes: Sequence[int] | None = None,
                         density: float = 0.5) -> tuple[GainGraph, Partition]:
    """A random gain graph together with a G-GM partition of it."""
    rng = _rng(seed)
    draw = _Draw(group, rng, density)
    sizes = list(sizes) if sizes is not None else random_cells(rng)
    labels, cells = _layout(sizes, rng)
    edges = []
    k = len(cells) - 1
    for i in range(1, k + 1):
        ci = cells[i]
        n = len(ci)
        c: list[GroupElement | None] = [None] * n
        for r in range(1, n // 2 + 1):
            if 2 * r == n:
                c[r] = draw.involution_entry()
            else:
                c[r] = draw.entry()
                c[n - r] = None if c[r] is None else c[r].inverse()
        for a in range(n):
            for b in range(a + 1, n):
                x = c[(b - a) % n]
                if x is not None:
                    edges.append((ci[a], ci[b], x))
        for j in range(i + 1, k + 1):
            cj = cells[j]
            d = math.gcd(n, len(cj))
            pattern = [draw.entry() for _ in range(d)]
            for a in range(n):
                for b in range(len(cj)):
                    x = pattern[(a - b) % d]
                    if x is not None:
                        edges.append((ci[a], cj[b], x))
    c0 = cells[0]
    for a in range(len(c0)):
        for b in range(a + 1, len(c0)):
            x = draw.entry()
            if x is not None:
                edges.append((c0[a], c0[b], x))
        for i in range(1, k + 1):
            for w, x in zip(cells[i], _c0_row(draw, cells[i])):
                if x is not None:
                    edges.append((c0[a], w, x))
    return GainGraph(group, labels, edges), Partition(cells)


def random_pi_gm_instance(group: Group, pi: Representation, seed=None,
                          sizes: Sequence[int] | None = None, density: float = 0.5,
                          central: bool = True) -> tuple[GainGraph, Partition]:
    """A random graph with a pi-GM partition that is usually not G-GM.

    Starts from a planted G-GM instance, multiplies edges inside the cells by
    random elements of ker pi, and (when some s has pi(s) = -I and ``central``
    is set) rewires some C0 rows to pairs of gains g, s g, whose pi-images cancel.
    """
    rng = _rng(seed)
    g, alpha = random_g_gm_instance(group, rng, sizes, density)
    kernel = pi.kernel_elements()
    c0 = set(alpha.c0)
    edges = []
    for u, v, x in g.edges():
        if u not in c0 and v not in c0 and len(kernel) > 1 and rng.random() < 0.5:
            x = kernel[int(rng.integers(len(kernel)))] * x
        edges.append((u, v, x))
    s = find_minus_identity(group, pi) if central else None
    if s is not None:
        draw = _Draw(group, rng, density)
        rewired: dict[tuple[str, int], list] = {}
        for v in alpha.c0:
            for i in range(1, len(alpha.cells)):
                n = len(alpha.cells[i])
                if n >= 2 and rng.random() < 0.5:
                    pairs = int(rng.integers(1, n // 2 + 1))
                    order = [alpha.cells[i][t] for t in rng.permutation(n)]
                    row = []
                    for p in range(pairs):
                        h = draw.gain()
                        row += [(order[2 * p], h), (order[2 * p + 1], s * h)]
                    rewired[(v, i)] = row
        drop = {(v, w) for (v, i) in rewired for w in alpha.cells[i]}
        edges = [(u, w, x) for u, w, x in edges if (u, w) not in drop and (w, u) not in drop]
        for (v, _), row in rewired.items():
            edges += [(v, w, x) for w, x in row]
    return GainGraph(group, g.vertices, edges), alpha


def random_gain_graph(group: Group, n: int, seed=None, density: float = 0.5) -> GainGraph:
    rng = _rng(seed)
    draw = _Draw(group, rng, density)
    labels = [f"v{t}" for t in range(1, n + 1)]
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            x = draw.entry()
            if x is not None:
                edges.append((labels[a], labels[b], x))
    return GainGraph(group, labels, edges)


def random_partition(labels: Sequence[str], seed=None, max_cells: int = 3) -> Partition:
    rng = _rng(seed)
    k = int(rng.integers(1, max_cells + 1))
    shuffled = [labels[t] for t in rng.permutation(len(labels))]
    cuts = sorted(int(x) for x in rng.choice(np.arange(1, len(labels)), size=min(k, len(labels) - 1),
                                             replace=False)) if len(labels) > 1 else []
    bounds = [0] + cuts + [len(labels)]
    cells = [shuffled[bounds[t]:bounds[t + 1]] for t in range(len(bounds) - 1)]
    # C0 may be empty; the remaining cells are nonempty by construction
    if rng.random() < 0.3:
        cells = [[]] + cells
    return Partition(cells)


def random_switching_copy(g: GainGraph, seed=None) -> tuple[GainGraph, dict, dict]:
    """Switch by a random function and relabel by a random permutation.

    Returns (copy, phi, f) with psi'(phi u, phi v) = f(u)^-1 psi(u, v) f(v).
    """
    rng = _rng(seed)
    els = g.group.elements()
    f = {v: els[int(rng.integers(len(els)))] for v in g.vertices}
    perm = rng.permutation(len(g))
    phi = {v: g.vertices[int(perm[t])] for t, v in enumerate(g.vertices)}
    return g.switched_by(f).relabeled(phi), phi, f

"""The worked examples as ready-made graphs and partitions.

Vertex labels follow the figures (``v0``...``v8`` and so on). Each builder
returns fresh immutable objects.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .gain_graph import GainGraph, Partition
from .groups import Group

R = math.sqrt(2) / 2


@dataclass(frozen=True)
class Example:
    """A graph, a partition and, where drawn, the expected switched graph."""

    name: str
    graph: GainGraph
    partition: Partition
    switched: GainGraph | None = None
    extra: dict = field(default_factory=dict)


def _labels(lo: int, hi: int) -> list[str]:
    return [f"v{k}" for k in range(lo, hi + 1)]


def t_example() -> Example:
    """mu4-gain graph: 8-cycle rim, hub v0 joined by 1 or i."""
    G = Group.roots_of_unity(4)
    rim = [(f"v{k}", f"v{k % 8 + 1}", "1") for k in range(1, 9)]

    def hub(i_spokes):
        return [("v0", f"v{j}", "i" if j in i_spokes else "1") for j in range(1, 9)]

    before = GainGraph(G, _labels(0, 8), rim + hub({2, 3, 7, 8}))
    after = GainGraph(G, _labels(0, 8), rim + hub({1, 4, 5, 6}))
    alpha = Partition([["v0"], _labels(1, 8)])
    return Example("t-example", before, alpha, after)


def s4_example() -> Example:
    """S4-gain graph on v1..v9 with hub v1; pi_p-GM but not S4-GM."""
    G = Group.symmetric(4)
    inner = [
        ("v2", "v3", "(1 2)(3 4)"), ("v4", "v5", "(1 2)(3 4)"),
        ("v3", "v4", "e"), ("v2", "v5", "e"),
        ("v6", "v7", "(1 2)"), ("v8", "v9", "(1 2)"),
        ("v7", "v8", "(3 4)"), ("v6", "v9", "(3 4)"),
    ]
    before = GainGraph(G, _labels(1, 9), inner + [("v1", v, "e") for v in ("v3", "v4", "v5", "v6")])
    after = GainGraph(G, _labels(1, 9), inner + [("v1", v, "e") for v in ("v2", "v7", "v8", "v9")])
    alpha = Partition([["v1"], _labels(2, 9)])
    return Example("s4-example", before, alpha, after)


def s4_kernel_example() -> Example:
    """The chain psi1 -> psi2 -> psi2^alpha -> psi3 built from sign-kernel multiplications.

    ``graph`` is (Gamma, psi1); ``extra`` holds psi2, the expected switched
    psi2^alpha, psi3, the kernel multiplier used for psi2 and the
    multiplications that turn psi2^alpha into psi3.
    """
    G = Group.symmetric(4)
    square = [("v1", "v2", "e"), ("v2", "v3", "(1 2)"), ("v4", "v3", "(1 2 3)"), ("v4", "v1", "(1 3)")]
    psi1 = GainGraph(G, _labels(1, 7), square + [
        ("v1", "v7", "(1 2)(3 4)"), ("v7", "v5", "e"), ("v7", "v6", "e")])
    psi2 = GainGraph(G, _labels(1, 7), square + [
        ("v1", "v7", "e"), ("v7", "v5", "e"), ("v7", "v6", "e")])
    psi2_alpha = GainGraph(G, _labels(1, 7), square + [
        ("v7", "v2", "e"), ("v7", "v3", "e"), ("v7", "v4", "e")])
    psi3 = GainGraph(G, _labels(1, 7), [
        ("v1", "v2", "e"), ("v2", "v3", "(1 2)"), ("v4", "v3", "(1 4 3)"), ("v4", "v1", "(1 3)"),
        ("v7", "v2", "(1 2)(3 4)"), ("v7", "v3", "e"), ("v7", "v4", "(1 2)(3 4)")])
    alpha = Partition([["v7"], _labels(1, 6)])
    x = G.parse
    psi3_steps = [
        (("v4", "v3"), x("(1 4 3)") * x("(1 2 3)").inverse()),
        (("v7", "v2"), x("(1 2)(3 4)")),
        (("v7", "v4"), x("(1 2)(3 4)")),
    ]
    return Example("s4-kernel-example", psi1, alpha, psi2_alpha, {
        "psi2": psi2,
        "psi3": psi3,
        "psi2_step": (("v1", "v7"), x("(1 2)(3 4)")),
        "psi3_steps": psi3_steps,
    })


def d8_example() -> Example:
    """D8-gain graph where v7 needs the central involution a^2 under pi_2."""
    G = Group.dihedral(4)
    square = [("v1", "v2", "1"), ("v2", "v3", "1"), ("v4", "v3", "1"), ("v1", "v4", "1")]
    inner = square + [
        ("v2", "v5", "a"), ("v6", "v2", "a"), ("v4", "v6", "a"), ("v5", "v4", "a")]
    before = GainGraph(G, _labels(1, 8), inner + [
        ("v7", "v3", "a"), ("v4", "v7", "a"),
        ("v8", "v3", "1"), ("v8", "v2", "1"), ("v8", "v7", "b")])
    after = GainGraph(G, _labels(1, 8), inner + [
        ("v3", "v7", "a"), ("v7", "v4", "a"),
        ("v8", "v4", "1"), ("v8", "v1", "1"), ("v8", "v7", "b")])
    alpha = Partition([["v7", "v8"], _labels(1, 4), ["v5", "v6"]])
    return Example("d8-example", before, alpha, after, {
        "charpoly": (1, 0, -26, 0, 263, 0, -1306, 0, 3297, 0, -3968, 0, 1984, 0, -256, 0, 0),
    })


def quat_example() -> Example:
    """Unit-quaternion gain graph; v7's sums cancel in H, v8 sees half of C1."""
    G = Group.unit_quaternions()
    q_j = f"[{R!r},0,{R!r},0]"
    q_k = f"[{-R!r},0,0,{R!r}]"
    nq_j = f"[{-R!r},0,{-R!r},0]"
    nq_k = f"[{R!r},0,0,{-R!r}]"
    square = [("v1", "v2", "i"), ("v2", "v3", "i"), ("v3", "v4", "i"), ("v4", "v1", "i")]
    before = GainGraph(G, _labels(1, 8), square + [
        ("v8", "v2", "1"), ("v8", "v1", "1"), ("v8", "v4", "1"),
        ("v7", "v4", q_j), ("v3", "v7", q_j), ("v7", "v5", q_k), ("v6", "v7", q_k)])
    after = GainGraph(G, _labels(1, 8), square + [
        ("v8", "v3", "1"), ("v8", "v5", "1"), ("v8", "v6", "1"),
        ("v7", "v4", nq_j), ("v3", "v7", nq_j), ("v7", "v5", nq_k), ("v6", "v7", nq_k)])
    alpha = Partition([["v7", "v8"], _labels(1, 6)])
    return Example("quat-example", before, alpha, after, {
        "charpoly": (1, 0, -22, 0, 187, 0, -776, 0, 1639, 0, -1650, 0, 625, 0, 0, 0, 0),
    })


EXAMPLES = {
    "t-example": t_example,
    "s4-example": s4_example,
    "s4-kernel-example": s4_kernel_example,
    "d8-example": d8_example,
    "quat-example": quat_example,
}


def get(name: str) -> Example:
    try:
        return EXAMPLES[name]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}") from None

"""GM partitions of gain graphs and the switchings they enable.

Three predicates share one skeleton:

* ``check_g_gm``: row sums Psi_j(v) agree exactly in CG across each cell;
* ``check_pi_gm``: they agree after applying a unitary representation pi, and
  (optionally) a C0 row may be killed by pi when some s has pi(s) = -I;
* ``check_quat_gm``: unit-quaternion gains, sums taken in H, s = -1.

The C0 rows always use the half/half multiset rule first (Swap), falling
back to CentralMultiply only when that rule fails.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Sequence, Union

import numpy as np

from .errors import GroupMismatchError, PlanError, UnsupportedFeatureError
from .gain_graph import GainGraph, Partition
from .gg_matrix import build_qalpha, qalpha_real
from .group_algebra import GAElement
from .groups import QUATERNION, GroupElement, find_minus_identity
from .quaternions import ZERO, Quaternion, pi_h_matrix
from .representations import Representation

PI_TOL = 1e-9
QUAT_TOL = 1e-9
EXACT_TOL = 1e-12


# -- plans --------------------------------------------------------------------

def _fmt(g: GroupElement | None) -> str:
    return "0" if g is None else str(g)


@dataclass(frozen=True)
class Skip:
    """v has no neighbour in the cell; nothing changes."""

    def __str__(self) -> str:
        return "Skip"

    def to_dict(self) -> dict[str, Any]:
        return {"action": "skip"}


@dataclass(frozen=True)
class Swap:
    """Exchange gains g1 and g2 on the edges from v into the cell (None = non-adjacent)."""

    g1: GroupElement | None
    g2: GroupElement | None

    def __str__(self) -> str:
        return f"Swap({_fmt(self.g1)}, {_fmt(self.g2)})"

    def to_dict(self) -> dict[str, Any]:
        return {"action": "swap", "g1": _fmt(self.g1), "g2": _fmt(self.g2)}


@dataclass(frozen=True)
class CentralMultiply:
    """Left-multiply every gain from v into the cell by s."""

    s: GroupElement

    def __str__(self) -> str:
        return f"CentralMultiply({self.s})"

    def to_dict(self) -> dict[str, Any]:
        return {"action": "central", "s": str(self.s)}


Action = Union[Skip, Swap, CentralMultiply]


@dataclass(frozen=True)
class CellPlan:
    """One action per pair (v in C0, cell index i >= 1)."""

    entries: tuple[tuple[str, int, Action], ...]
    notices: tuple[str, ...] = ()

    def action(self, v: str, i: int) -> Action:
        for w, j, act in self.entries:
            if w == v and j == i:
                return act
        raise KeyError((v, i))

    def __iter__(self) -> Iterator[tuple[str, int, Action]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def uses_central(self) -> bool:
        return any(isinstance(a, CentralMultiply) for _, _, a in self.entries)

    @property
    def is_trivial(self) -> bool:
        return all(isinstance(a, Skip) or (isinstance(a, Swap) and a.g1 == a.g2)
                   for _, _, a in self.entries)

    def to_dict(self) -> dict[str, Any]:
        return {
            "entries": [{"vertex": v, "cell": i, **a.to_dict()} for v, i, a in self.entries],
            "notices": list(self.notices),
        }

    def __str__(self) -> str:
        lines = [f"({v}, C{i}): {a}" for v, i, a in self.entries] or ["(empty plan)"]
        lines += [f"notice: {n}" for n in self.notices]
        return "\n".join(lines)


@dataclass(frozen=True)
class GMCheck:
    """Outcome of a GM-partition test; truthy iff the partition qualifies."""

    ok: bool
    plan: CellPlan | None
    diagnostic: str | None = None
    failure: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


# -- sums -----------------------------------------------------------------------

def psi_sum(g: GainGraph, v, cell: Sequence) -> GAElement:
    """Psi(v) over a cell: the sum in CG of the gains psi(v, w), w in the cell."""
    acc: dict[GroupElement, complex] = {}
    for w in cell:
        x = g.gain(v, w)
        if x is not None:
            acc[x] = acc.get(x, 0) + 1
    return GAElement(g.group, acc)


def psi_sum_h(g: GainGraph, v, cell: Sequence) -> Quaternion:
    """The same sum taken in H, for unit-quaternion gains."""
    if g.group.kind != QUATERNION:
        raise GroupMismatchError("sums in H need unit-quaternion gains")
    acc = ZERO
    for w in cell:
        x = g.gain(v, w)
        if x is not None:
            acc = acc + x.value
    return acc


def _gain_row(g: GainGraph, v: str, cell: Sequence[str]) -> list[GroupElement | None]:
    return [g.gain(v, w) for w in cell]


def swap_rule(gains: Sequence[GroupElement | None]) -> tuple[Action | None, str | None]:
    """Half/half multiset rule on G u {0}; returns (action, reason-if-failed).

    g1 is the first gain met in cell order, g2 the other value (0 last).
    """
    n = len(gains)
    if all(x is None for x in gains):
        return Skip(), None
    distinct: list[list] = []
    for x in gains:
        for slot in distinct:
            if slot[0] == x:
                slot[1] += 1
                break
        else:
            distinct.append([x, 1])
    distinct.sort(key=lambda s: s[0] is None)
    if len(distinct) == 1:
        return Swap(distinct[0][0], distinct[0][0]), None
    if len(distinct) == 2 and distinct[0][1] == distinct[1][1]:
        return Swap(distinct[0][0], distinct[1][0]), None
    counts = ", ".join(f"{_fmt(x)} x{c}" for x, c in distinct)
    if len(distinct) == 2 and n % 2:
        return None, f"odd cell size {n} cannot be split half/half ({counts})"
    return None, f"gains are not half g1 and half g2 ({counts})"


# -- the shared skeleton ---------------------------------------------------------

def _run_check(
    g: GainGraph,
    alpha: Partition,
    row_value: Callable[[str, Sequence[str]], Any],
    same: Callable[[Any, Any], bool],
    render: Callable[[Any], str],
    label: Callable[[int, str], str],
    central: Callable[[str, Sequence[str]], CentralMultiply | None] | None = None,
) -> GMCheck:
    alpha.validate(g)
    cells = alpha.cells
    # first condition: for v, v' in C_j, equal row sums into every C_i
    for j in range(1, len(cells)):
        first = cells[j][0]
        refs = {i: row_value(first, cells[i]) for i in range(1, len(cells))}
        for v in cells[j][1:]:
            for i, ref in refs.items():
                val = row_value(v, cells[i])
                if not same(ref, val):
                    msg = (f"cell C{j}: {label(i, v)} = {render(val)} differs from "
                           f"{label(i, first)} = {render(ref)}")
                    return GMCheck(False, None, msg, {
                        "condition": "row-sums", "cell": j, "target_cell": i,
                        "vertex": v, "reference_vertex": first,
                        "value": render(val), "reference_value": render(ref)})
    # second condition on C0 rows
    entries = []
    notices = []
    for v in cells[0]:
        for i in range(1, len(cells)):
            act, reason = swap_rule(_gain_row(g, v, cells[i]))
            alt = central(v, cells[i]) if central is not None else None
            if act is not None:
                if alt is not None and not isinstance(act, Skip):
                    notices.append(f"({v}, C{i}): both {act} and {alt} apply; {act} is used")
                entries.append((v, i, act))
            elif alt is not None:
                entries.append((v, i, alt))
            else:
                msg = f"vertex {v} of C0 against cell C{i}: {reason}"
                return GMCheck(False, None, msg, {
                    "condition": "c0-row", "cell": i, "vertex": v, "reason": reason})
    return GMCheck(True, CellPlan(tuple(entries), tuple(notices)))


def _render_matrix(m: np.ndarray) -> str:
    m = np.where(np.abs(m) < 1e-12, 0, m)
    if m.shape == (1, 1):
        z = complex(m[0, 0])
        if abs(z.imag) < 1e-12:
            r = z.real
            return str(int(round(r))) if abs(r - round(r)) < 1e-12 else format(r, ".10g")
        return format(z, ".10g")
    rows = []
    for row in m:
        items = []
        for z in row:
            z = complex(z)
            if abs(z.imag) < 1e-12:
                r = z.real
                items.append(str(int(round(r))) if abs(r - round(r)) < 1e-12 else format(r, ".6g"))
            else:
                items.append(format(z, ".6g"))
        rows.append("[" + ", ".join(items) + "]")
    return "[" + ", ".join(rows) + "]"


def check_g_gm(g: GainGraph, alpha: Partition) -> GMCheck:
    """Test the G-GM conditions exactly in CG."""
    if not g.group.is_finite:
        raise UnsupportedFeatureError("the CG test needs a finite group; use check_quat_gm")
    return _run_check(
        g, alpha,
        row_value=lambda v, cell: psi_sum(g, v, cell),
        same=lambda a, b: a.isclose(b, EXACT_TOL),
        render=str,
        label=lambda i, v: f"Psi_{i}({v})",
    )


def check_pi_gm(g: GainGraph, alpha: Partition, pi: Representation,
                allow_central: bool = False) -> GMCheck:
    """Test the pi-GM conditions; row sums are compared on pi-images within 1e-9."""
    if pi.group != g.group:
        raise GroupMismatchError(f"{pi.name} is not a representation of {g.group.name}")
    if g.group.kind == QUATERNION:
        return check_quat_gm(g, alpha, allow_central=allow_central)
    if not g.group.is_finite:
        raise UnsupportedFeatureError(f"pi-GM test over {g.group.name} is not supported")

    central = None
    if allow_central:
        s = find_minus_identity(g.group, pi, PI_TOL)
        if s is not None:
            def central(v, cell, s=s):
                img = pi.apply_cg(psi_sum(g, v, cell))
                return CentralMultiply(s) if np.max(np.abs(img)) <= PI_TOL else None

    return _run_check(
        g, alpha,
        row_value=lambda v, cell: pi.apply_cg(psi_sum(g, v, cell)),
        same=lambda a, b: float(np.max(np.abs(a - b))) <= PI_TOL,
        render=_render_matrix,
        label=lambda i, v: f"{pi.name}(Psi_{i}({v}))",
        central=central,
    )


def check_quat_gm(g: GainGraph, alpha: Partition, allow_central: bool = True) -> GMCheck:
    """Quaternionic GM test: sums in H within 1e-9, s = -1 for killed rows."""
    if g.group.kind != QUATERNION:
        raise GroupMismatchError("quaternionic GM partitions need unit-quaternion gains")
    minus_one = g.group.element(Quaternion(-1.0))

    def central(v, cell):
        return CentralMultiply(minus_one) if psi_sum_h(g, v, cell).norm() <= QUAT_TOL else None

    return _run_check(
        g, alpha,
        row_value=lambda v, cell: psi_sum_h(g, v, cell),
        same=lambda a, b: a.isclose(b, QUAT_TOL),
        render=lambda q: str(g.group.element(q)) if abs(q.norm() - 1) < 1e-9 else repr(q.as_tuple()),
        label=lambda i, v: f"PsiH_{i}({v})",
        central=central if allow_central else None,
    )


# -- the switched graph -----------------------------------------------------------

def _check_plan_shape(alpha: Partition, plan: CellPlan) -> None:
    expected = [(v, i) for v in alpha.c0 for i in range(1, len(alpha.cells))]
    got = [(v, i) for v, i, _ in plan.entries]
    if sorted(expected) != sorted(got):
        raise PlanError("plan does not have exactly one action per (C0 vertex, cell) pair")


def apply_switch(g: GainGraph, alpha: Partition, plan: CellPlan) -> GainGraph:
    """Build the switched graph. Edges not joining C0 to a cell C_i are kept."""
    alpha.validate(g)
    _check_plan_shape(alpha, plan)
    c0 = set(alpha.c0)
    edges = [(u, v, x) for u, v, x in g.edges() if (u in c0) == (v in c0)]
    for v, i, act in plan.entries:
        cell = alpha.cells[i]
        row = _gain_row(g, v, cell)
        if isinstance(act, Skip):
            if any(x is not None for x in row):
                raise PlanError(f"Skip at ({v}, C{i}) but {v} has neighbours in C{i}")
            continue
        if isinstance(act, Swap):
            found, _ = swap_rule(row)
            if isinstance(found, Swap):
                valid = {_key(found.g1), _key(found.g2)} == {_key(act.g1), _key(act.g2)}
            else:
                valid = isinstance(found, Skip) and act.g1 is None and act.g2 is None
            if not valid:
                raise PlanError(f"{act} at ({v}, C{i}) does not match the gains from {v}")
            for w, x in zip(cell, row):
                new = act.g2 if x == act.g1 else act.g1
                if new is not None:
                    edges.append((v, w, new))
            continue
        if isinstance(act, CentralMultiply):
            if act.s.group != g.group:
                raise PlanError("central element is not in the gain group")
            for w, x in zip(cell, row):
                if x is not None:
                    edges.append((v, w, act.s * x))
            continue
        raise PlanError(f"unknown action {act!r}")
    return g.with_gains(edges)


def _key(x: GroupElement | None):
    # set keys for plan comparison; quaternion gains hash by group only, fine for 2 items
    return None if x is None else (x.group, str(x))


def apply_quat_switch(g: GainGraph, alpha: Partition, plan: CellPlan) -> GainGraph:
    """Quaternionic switching: as apply_switch, with s = -1 in killed rows."""
    if g.group.kind != QUATERNION:
        raise GroupMismatchError("quaternionic switching needs unit-quaternion gains")
    minus_one = g.group.element(Quaternion(-1.0))
    for v, i, act in plan.entries:
        if isinstance(act, CentralMultiply) and act.s != minus_one:
            raise PlanError(f"quaternionic switching multiplies by -1, not {act.s}")
    return apply_switch(g, alpha, plan)


# -- the conjugation identity -------------------------------------------------------

def conjugation_defect(g: GainGraph, alpha: Partition, plan: CellPlan,
                       pi: Representation | None = None) -> float:
    """max-entry distance between A(switched) and Q_alpha A Q_alpha.

    In CG when pi is None, otherwise on pi-images. Quaternion graphs always
    use pi_H.
    """
    switched = apply_switch(g, alpha, plan)
    order = alpha.vertex_order()
    sizes = alpha.sizes()
    if g.group.kind == QUATERNION:
        if pi is not None and pi.name != "pi_h":
            raise UnsupportedFeatureError("quaternion graphs are compared through pi_H only")
        A = pi_h_matrix(g.quaternion_adjacency(order))
        B = pi_h_matrix(switched.quaternion_adjacency(order))
        Q = np.kron(qalpha_real(sizes), np.eye(2))
        return float(np.max(np.abs(B - Q @ A @ Q))) if A.size else 0.0
    if pi is None:
        A = g.adjacency(order)
        Q = build_qalpha(alpha.cells, g.group)
        return switched.adjacency(order).max_abs_diff(Q @ A @ Q)
    A = pi.fourier(g.adjacency(order))
    B = pi.fourier(switched.adjacency(order))
    Q = np.kron(qalpha_real(sizes), np.eye(pi.degree))
    return float(np.max(np.abs(B - Q @ A @ Q))) if A.size else 0.0


def verify_conjugation(g: GainGraph, alpha: Partition, plan: CellPlan,
                       pi: Representation | None = None) -> bool:
    """A(switched) == Q_alpha A Q_alpha: exactly in CG, or within 1e-9 on pi-images."""
    exact = pi is None and g.group.kind != QUATERNION
    return conjugation_defect(g, alpha, plan, pi) <= (EXACT_TOL if exact else PI_TOL)

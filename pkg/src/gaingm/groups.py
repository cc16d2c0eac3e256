"""Exact arithmetic for the supported gain groups.

Finite groups (cyclic, roots of unity, dihedral, symmetric) are enumerated in a
fixed order with the identity first; the unit quaternions are the one infinite
group and only support element arithmetic.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable

import numpy as np

from .errors import GroupMismatchError, InfiniteGroupError, ParseError
from .quaternions import Quaternion

CYCLIC = "cyclic"
ROOTS = "roots_of_unity"
DIHEDRAL = "dihedral"
SYMMETRIC = "symmetric"
QUATERNION = "unit_quaternion"

KINDS = (CYCLIC, ROOTS, DIHEDRAL, SYMMETRIC, QUATERNION)
_KIND_ALIASES = {
    "cyclic": CYCLIC,
    "roots_of_unity": ROOTS,
    "roots": ROOTS,
    "mu": ROOTS,
    "dihedral": DIHEDRAL,
    "symmetric": SYMMETRIC,
    "unit_quaternion": QUATERNION,
    "quaternion": QUATERNION,
}

QUAT_EQ_TOL = 1e-9
QUAT_UNIT_TOL = 1e-12
QUAT_NORMALIZE_TOL = 1e-6


@dataclass(frozen=True)
class Group:
    """A supported gain group.

    ``n`` is the cyclic order for cyclic groups and roots of unity, the number
    of rotations for dihedral groups (so ``Group.dihedral(4)`` is D8, of order
    8), and the degree for symmetric groups.
    """

    kind: str
    n: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind == QUATERNION:
            if self.n is not None:
                raise ValueError("the unit quaternion group takes no size parameter")
        elif not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"{self.kind} group needs a positive integer n, got {self.n!r}")

    @classmethod
    def cyclic(cls, n: int) -> Group:
        return cls(CYCLIC, n)

    @classmethod
    def roots_of_unity(cls, n: int) -> Group:
        return cls(ROOTS, n)

    @classmethod
    def dihedral(cls, n: int) -> Group:
        return cls(DIHEDRAL, n)

    @classmethod
    def symmetric(cls, n: int) -> Group:
        return cls(SYMMETRIC, n)

    @classmethod
    def unit_quaternions(cls) -> Group:
        return cls(QUATERNION)

    @classmethod
    def from_spec(cls, spec: dict[str, Any]) -> Group:
        try:
            kind = _KIND_ALIASES[str(spec["kind"]).lower()]
        except KeyError as exc:
            raise ParseError(f"unknown or missing group kind in {spec!r}") from exc
        n = spec.get("n")
        if kind == DIHEDRAL and n is None and "order" in spec:
            order = int(spec["order"])
            if order % 2:
                raise ParseError(f"dihedral order must be even, got {order}")
            n = order // 2
        try:
            return cls(kind, None if n is None else int(n))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def to_spec(self) -> dict[str, Any]:
        return {"kind": self.kind} if self.n is None else {"kind": self.kind, "n": self.n}

    @property
    def name(self) -> str:
        return {
            CYCLIC: f"C{self.n}",
            ROOTS: f"mu{self.n}",
            DIHEDRAL: f"D{2 * (self.n or 0)}",
            SYMMETRIC: f"S{self.n}",
            QUATERNION: "U(H)",
        }[self.kind]

    def __str__(self) -> str:
        return self.name

    @property
    def is_finite(self) -> bool:
        return self.kind != QUATERNION

    @property
    def order(self) -> int | None:
        if self.kind in (CYCLIC, ROOTS):
            return self.n
        if self.kind == DIHEDRAL:
            return 2 * self.n
        if self.kind == SYMMETRIC:
            return math.factorial(self.n)
        return None

    def _require_finite(self, what: str) -> None:
        if not self.is_finite:
            raise InfiniteGroupError(f"{what} needs a finite group, {self.name} is infinite")

    # -- elements -----------------------------------------------------------

    def element(self, value) -> GroupElement:
        """Wrap a raw encoding, normalising it."""
        if self.kind in (CYCLIC, ROOTS):
            return GroupElement(self, int(value) % self.n)
        if self.kind == DIHEDRAL:
            p, f = value
            return GroupElement(self, (int(p) % self.n, int(f) % 2))
        if self.kind == SYMMETRIC:
            perm = tuple(int(x) for x in value)
            if sorted(perm) != list(range(self.n)):
                raise ValueError(f"{perm} is not a permutation of 0..{self.n - 1}")
            return GroupElement(self, perm)
        q = value if isinstance(value, Quaternion) else Quaternion.from_seq(value)
        norm = q.norm()
        if abs(norm - 1.0) > QUAT_NORMALIZE_TOL:
            raise ValueError(f"{q} is not a unit quaternion (norm {norm!r})")
        if abs(norm - 1.0) > QUAT_UNIT_TOL:
            q = q * (1.0 / norm)
        return GroupElement(self, q)

    @property
    def identity(self) -> GroupElement:
        if self.kind in (CYCLIC, ROOTS):
            return GroupElement(self, 0)
        if self.kind == DIHEDRAL:
            return GroupElement(self, (0, 0))
        if self.kind == SYMMETRIC:
            return GroupElement(self, tuple(range(self.n)))
        return GroupElement(self, Quaternion(1.0))

    @cached_property
    def _elements(self) -> tuple[GroupElement, ...]:
        self._require_finite("element enumeration")
        if self.kind in (CYCLIC, ROOTS):
            vals = list(range(self.n))
        elif self.kind == DIHEDRAL:
            vals = [(p, 0) for p in range(self.n)] + [(p, 1) for p in range(self.n)]
        else:
            vals = list(itertools.permutations(range(self.n)))
        return tuple(GroupElement(self, v) for v in vals)

    def elements(self) -> list[GroupElement]:
        """All elements, identity first, in the canonical order."""
        return list(self._elements)

    @cached_property
    def _index(self) -> dict[Any, int]:
        return {g.value: i for i, g in enumerate(self._elements)}

    def index(self, g: GroupElement) -> int:
        self._check(g)
        self._require_finite("element indexing")
        return self._index[g.value]

    @cached_property
    def mul_table(self) -> np.ndarray:
        """``table[i, j]`` is the index of ``elements[i] * elements[j]``."""
        els = self._elements
        t = np.empty((len(els), len(els)), dtype=np.intp)
        for i, x in enumerate(els):
            for j, y in enumerate(els):
                t[i, j] = self._index[self._mul_values(x.value, y.value)]
        t.setflags(write=False)
        return t

    @cached_property
    def inv_table(self) -> np.ndarray:
        t = np.array([self._index[self._inv_value(g.value)] for g in self._elements], dtype=np.intp)
        t.setflags(write=False)
        return t

    # -- arithmetic ---------------------------------------------------------

    def _check(self, g: GroupElement) -> None:
        if not isinstance(g, GroupElement) or g.group != self:
            raise GroupMismatchError(f"{g!r} is not an element of {self.name}")

    def _mul_values(self, x, y):
        if self.kind in (CYCLIC, ROOTS):
            return (x + y) % self.n
        if self.kind == DIHEDRAL:
            (p, f), (q, h) = x, y
            # a^p b^f a^q b^h = a^(p + (-1)^f q) b^(f + h)
            return ((p - q if f else p + q) % self.n, (f + h) % 2)
        if self.kind == SYMMETRIC:
            # functional composition: (xy)(k) = x(y(k))
            return tuple(x[k] for k in y)
        return x * y

    def _inv_value(self, x):
        if self.kind in (CYCLIC, ROOTS):
            return (-x) % self.n
        if self.kind == DIHEDRAL:
            p, f = x
            return (p, 1) if f else ((-p) % self.n, 0)
        if self.kind == SYMMETRIC:
            out = [0] * len(x)
            for k, image in enumerate(x):
                out[image] = k
            return tuple(out)
        return x.conj()

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        self._check(g)
        self._check(h)
        return GroupElement(self, self._mul_values(g.value, h.value))

    def inv(self, g: GroupElement) -> GroupElement:
        self._check(g)
        return GroupElement(self, self._inv_value(g.value))

    @cached_property
    def is_abelian(self) -> bool:
        if self.kind in (CYCLIC, ROOTS):
            return True
        if self.kind == DIHEDRAL:
            return self.n <= 2
        if self.kind == SYMMETRIC:
            return self.n <= 2
        return False

    def conjugacy_classes(self) -> list[tuple[GroupElement, ...]]:
        """Classes ordered by their minimal element; members in canonical order."""
        self._require_finite("conjugacy classes")
        els = self._elements
        mt, it = self.mul_table, self.inv_table
        seen: set[int] = set()
        classes = []
        for i in range(len(els)):
            if i in seen:
                continue
            members = sorted({int(mt[mt[it[h], i], h]) for h in range(len(els))})
            seen.update(members)
            classes.append(tuple(els[m] for m in members))
        return classes

    @cached_property
    def class_of(self) -> np.ndarray:
        """Map from element index to the index of its conjugacy class."""
        out = np.empty(self.order, dtype=np.intp)
        for c, members in enumerate(self.conjugacy_classes()):
            for g in members:
                out[self._index[g.value]] = c
        return out

    # -- text grammar -------------------------------------------------------

    def parse(self, text: str) -> GroupElement:
        s = str(text).strip()
        try:
            return _PARSERS[self.kind](self, s)
        except ParseError:
            raise
        except (ValueError, IndexError) as exc:
            raise ParseError(f"cannot parse {text!r} as an element of {self.name}: {exc}") from exc

    def format(self, g: GroupElement) -> str:
        self._check(g)
        return _FORMATTERS[self.kind](self, g.value)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An element of a :class:`Group` in its raw encoding.

    Encodings: exponent residue (cyclic, roots of unity), ``(rotation, flip)``
    for ``a^p b^f`` (dihedral), 0-based image tuple (symmetric), or a
    :class:`Quaternion` of norm one.
    """

    group: Group
    value: Any

    def __mul__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.group != self.group:
            raise GroupMismatchError(f"cannot multiply elements of {self.group} and {other.group}")
        return self.group.mul(self, other)

    def inverse(self) -> GroupElement:
        return self.group.inv(self)

    def __pow__(self, k: int) -> GroupElement:
        base = self if k >= 0 else self.inverse()
        out = self.group.identity
        for _ in range(abs(k)):
            out = out * base
        return out

    @property
    def is_identity(self) -> bool:
        return self == self.group.identity

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.group != other.group:
            return False
        if self.group.kind == QUATERNION:
            return self.value.isclose(other.value, QUAT_EQ_TOL)
        return self.value == other.value

    def __hash__(self) -> int:
        if self.group.kind == QUATERNION:
            # equality is approximate, so only the group can enter the hash
            return hash(self.group)
        return hash((self.group, self.value))

    def __str__(self) -> str:
        return self.group.format(self)

    def __repr__(self) -> str:
        return f"<{self.group.name} {self}>"


def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    return g * h


def inv(g: GroupElement) -> GroupElement:
    return g.inverse()


def elements(G: Group) -> list[GroupElement]:
    return G.elements()


def conjugacy_classes(G: Group) -> list[tuple[GroupElement, ...]]:
    return G.conjugacy_classes()


def find_minus_identity(G: Group, rep: Callable[[GroupElement], np.ndarray], tol: float = 1e-9):
    """First element (canonical order) whose image under ``rep`` is -I, or None.

    For the unit quaternions only the central involution -1 is tried.
    """
    candidates = G.elements() if G.is_finite else [G.element(Quaternion(-1.0))]
    for s in candidates:
        m = np.asarray(rep(s), dtype=complex)
        if np.max(np.abs(m + np.eye(m.shape[0]))) <= tol:
            return s
    return None


def sign(g: GroupElement) -> int:
    """Parity of a permutation: +1 even, -1 odd."""
    if g.group.kind != SYMMETRIC:
        raise GroupMismatchError("sign is defined for symmetric groups only")
    perm = g.value
    seen = [False] * len(perm)
    transpositions = 0
    for start in range(len(perm)):
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length:
            transpositions += length - 1
    return -1 if transpositions % 2 else 1


# -- parsing and printing ----------------------------------------------------

_CYCLIC_RE = re.compile(r"^(?:a(?:\^\s*(-?\d+))?|(-?\d+))$")


def _parse_cyclic(G: Group, s: str) -> GroupElement:
    if s in ("e", "id"):
        return G.identity
    m = _CYCLIC_RE.match(s)
    if not m:
        raise ParseError(f"bad cyclic element {s!r}")
    if m.group(2) is not None:
        return G.element(int(m.group(2)))
    return G.element(int(m.group(1)) if m.group(1) is not None else 1)


def _format_cyclic(G: Group, v: int) -> str:
    return str(v)


def _roots_aliases(n: int) -> dict[str, int]:
    out = {"1": 0}
    if n % 2 == 0:
        out["-1"] = n // 2
    if n % 4 == 0:
        out["i"] = n // 4
        out["-i"] = 3 * n // 4
    return out


_ROOTS_RE = re.compile(r"^w(?:\^\s*(-?\d+))?$")


def _parse_roots(G: Group, s: str) -> GroupElement:
    compact = s.replace(" ", "").replace("+", "")
    aliases = _roots_aliases(G.n)
    if compact in aliases:
        return G.element(aliases[compact])
    m = _ROOTS_RE.match(compact)
    if not m:
        raise ParseError(f"bad root of unity {s!r} (use 1, -1, i, -i or w^k)")
    return G.element(int(m.group(1)) if m.group(1) is not None else 1)


def _format_roots(G: Group, v: int) -> str:
    for name, k in _roots_aliases(G.n).items():
        if k == v:
            return name
    return "w" if v == 1 else f"w^{v}"


_DIHEDRAL_RE = re.compile(r"^(a(?:\^\s*(-?\d+))?)?\s*(b)?$")


def _parse_dihedral(G: Group, s: str) -> GroupElement:
    if s in ("1", "e", "id"):
        return G.identity
    m = _DIHEDRAL_RE.match(s)
    if not m or (m.group(1) is None and m.group(3) is None):
        raise ParseError(f"bad dihedral element {s!r} (use a^p or a^p b)")
    p = 0 if m.group(1) is None else (int(m.group(2)) if m.group(2) is not None else 1)
    return G.element((p, 1 if m.group(3) else 0))


def _format_dihedral(G: Group, v) -> str:
    p, f = v
    rot = "" if p == 0 else ("a" if p == 1 else f"a^{p}")
    if f:
        return rot + "b"
    return rot or "1"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_symmetric(G: Group, s: str) -> GroupElement:
    if s in ("e", "1", "()", "id"):
        return G.identity
    stripped = _CYCLE_RE.sub("", s).strip()
    if stripped:
        raise ParseError(f"bad cycle notation {s!r}")
    result = G.identity
    for body in _CYCLE_RE.findall(s):
        body = body.strip()
        if not body:
            continue
        if re.search(r"[\s,]", body):
            points = [int(t) for t in re.split(r"[\s,]+", body) if t]
        else:
            points = [int(ch) for ch in body]
        if len(set(points)) != len(points) or any(not 1 <= p <= G.n for p in points):
            raise ParseError(f"bad cycle ({body}) for S{G.n}")
        perm = list(range(G.n))
        for a, b in zip(points, points[1:] + points[:1]):
            perm[a - 1] = b - 1
        # cycles are composed right to left, like the group product
        result = result * GroupElement(G, tuple(perm))
    return result


def _format_symmetric(G: Group, v) -> str:
    seen = [False] * len(v)
    cycles = []
    for start in range(len(v)):
        if seen[start] or v[start] == start:
            seen[start] = True
            continue
        cyc = []
        k = start
        while not seen[k]:
            seen[k] = True
            cyc.append(k + 1)
            k = v[k]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "e"


_QUAT_ALIASES = {
    "1": (1.0, 0.0, 0.0, 0.0),
    "-1": (-1.0, 0.0, 0.0, 0.0),
    "i": (0.0, 1.0, 0.0, 0.0),
    "-i": (0.0, -1.0, 0.0, 0.0),
    "j": (0.0, 0.0, 1.0, 0.0),
    "-j": (0.0, 0.0, -1.0, 0.0),
    "k": (0.0, 0.0, 0.0, 1.0),
    "-k": (0.0, 0.0, 0.0, -1.0),
}


def _parse_quaternion(G: Group, s: str) -> GroupElement:
    compact = s.replace(" ", "")
    if compact in _QUAT_ALIASES:
        return G.element(_QUAT_ALIASES[compact])
    if not (compact.startswith("[") and compact.endswith("]")):
        raise ParseError(f"bad quaternion {s!r} (use [a,b,c,d] or 1, i, j, k with optional sign)")
    parts = compact[1:-1].split(",")
    if len(parts) != 4:
        raise ParseError(f"quaternion {s!r} needs four components")
    return G.element(tuple(float(p) for p in parts))


def _format_quaternion(G: Group, q: Quaternion) -> str:
    comps = q.as_tuple()
    for name, alias in _QUAT_ALIASES.items():
        if comps == alias:
            return name
    return "[" + ",".join(format(x + 0.0, ".17g") for x in comps) + "]"  # + 0.0 drops -0


_PARSERS = {
    CYCLIC: _parse_cyclic,
    ROOTS: _parse_roots,
    DIHEDRAL: _parse_dihedral,
    SYMMETRIC: _parse_symmetric,
    QUATERNION: _parse_quaternion,
}
_FORMATTERS = {
    CYCLIC: _format_cyclic,
    ROOTS: _format_roots,
    DIHEDRAL: _format_dihedral,
    SYMMETRIC: _format_symmetric,
    QUATERNION: _format_quaternion,
}

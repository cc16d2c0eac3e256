"""Dense matrices over the group algebra CG and the switching matrices Q_n, Q_alpha.

A matrix is stored as a complex array of shape ``(rows, cols, |G|)``: the last
axis holds the coefficients of each entry in the group's canonical element
order. Integer-valued matrices stay exact in double precision.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import GroupMismatchError, ShapeError, UnsupportedFeatureError
from .group_algebra import COEFF_TOL, GAElement
from .groups import Group, GroupElement


def _entry_vector(group: Group, x) -> np.ndarray:
    if x is None or (isinstance(x, (int, float, complex)) and x == 0):
        return np.zeros(group.order, dtype=complex)
    if isinstance(x, GroupElement):
        vec = np.zeros(group.order, dtype=complex)
        vec[group.index(x)] = 1
        return vec
    if isinstance(x, GAElement):
        if x.group != group:
            raise GroupMismatchError("entry lives over a different group")
        return x.to_vector()
    if isinstance(x, (int, float, complex)):
        vec = np.zeros(group.order, dtype=complex)
        vec[0] = x
        return vec
    raise TypeError(f"cannot use {x!r} as a group algebra entry")


class GAMatrix:
    """Matrix with entries in CG."""

    __slots__ = ("group", "data")

    def __init__(self, group: Group, data):
        if not group.is_finite:
            raise UnsupportedFeatureError(f"matrices over C{group.name} are not supported")
        arr = np.array(data, dtype=complex)
        if arr.ndim != 3 or arr.shape[2] != group.order:
            raise ShapeError(f"expected shape (rows, cols, {group.order}), got {arr.shape}")
        arr.setflags(write=False)
        self.group = group
        self.data = arr

    @classmethod
    def from_entries(cls, group: Group, rows: Iterable[Iterable]) -> GAMatrix:
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if n else 0
        arr = np.zeros((n, m, group.order), dtype=complex)
        for i, row in enumerate(rows):
            if len(row) != m:
                raise ShapeError("ragged matrix")
            for j, x in enumerate(row):
                arr[i, j] = _entry_vector(group, x)
        return cls(group, arr)

    @classmethod
    def zeros(cls, group: Group, n: int, m: int | None = None) -> GAMatrix:
        return cls(group, np.zeros((n, n if m is None else m, group.order), dtype=complex))

    @classmethod
    def identity(cls, group: Group, n: int) -> GAMatrix:
        arr = np.zeros((n, n, group.order), dtype=complex)
        arr[np.arange(n), np.arange(n), 0] = 1
        return cls(group, arr)

    @classmethod
    def scalar(cls, group: Group, M) -> GAMatrix:
        """Embed a complex matrix as multiples of the identity element."""
        M = np.asarray(M, dtype=complex)
        arr = np.zeros(M.shape + (group.order,), dtype=complex)
        arr[..., 0] = M
        return cls(group, arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[0], self.data.shape[1]

    def __getitem__(self, idx: tuple[int, int]) -> GAElement:
        return GAElement.from_vector(self.group, self.data[idx])

    def _check(self, other: GAMatrix) -> None:
        if not isinstance(other, GAMatrix):
            raise TypeError(f"expected GAMatrix, got {type(other).__name__}")
        if other.group != self.group:
            raise GroupMismatchError("matrices over different groups")

    def __add__(self, other: GAMatrix) -> GAMatrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return GAMatrix(self.group, self.data + other.data)

    def __sub__(self, other: GAMatrix) -> GAMatrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return GAMatrix(self.group, self.data - other.data)

    def scale(self, c: complex) -> GAMatrix:
        return GAMatrix(self.group, self.data * c)

    def __matmul__(self, other: GAMatrix) -> GAMatrix:
        self._check(other)
        if self.shape[1] != other.shape[0]:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        table = self.group.mul_table
        out = np.zeros((self.shape[0], other.shape[1], self.group.order), dtype=complex)
        xs = [x for x in range(self.group.order) if self.data[:, :, x].any()]
        ys = [y for y in range(self.group.order) if other.data[:, :, y].any()]
        for x in xs:
            left = self.data[:, :, x]
            for y in ys:
                out[:, :, table[x, y]] += left @ other.data[:, :, y]
        return GAMatrix(self.group, out)

    def star(self) -> GAMatrix:
        """(M*)_{ij} = (M_{ji})* entrywise in CG."""
        t = np.transpose(self.data, (1, 0, 2))
        out = np.empty_like(t)
        out[:, :, self.group.inv_table] = t.conj()
        return GAMatrix(self.group, out)

    def power(self, h: int) -> GAMatrix:
        if self.shape[0] != self.shape[1]:
            raise ShapeError("only square matrices have powers")
        if h < 0:
            raise ValueError("negative powers are not supported")
        out = GAMatrix.identity(self.group, self.shape[0])
        base = self
        while h:
            if h & 1:
                out = out @ base
            h >>= 1
            if h:
                base = base @ base
        return out

    def trace(self) -> GAElement:
        if self.shape[0] != self.shape[1]:
            raise ShapeError("trace needs a square matrix")
        vec = np.einsum("iix->x", self.data)
        return GAElement.from_vector(self.group, vec)

    def permuted(self, order: Sequence[int]) -> GAMatrix:
        """Rows and columns reordered so that new index k is old index order[k]."""
        idx = np.asarray(order, dtype=np.intp)
        return GAMatrix(self.group, self.data[np.ix_(idx, idx)])

    def max_abs_diff(self, other: GAMatrix) -> float:
        self._check(other)
        if self.shape != other.shape:
            return float("inf")
        if self.data.size == 0:
            return 0.0
        return float(np.max(np.abs(self.data - other.data)))

    def isclose(self, other: GAMatrix, tol: float = COEFF_TOL) -> bool:
        return self.max_abs_diff(other) <= tol

    def is_zero(self, tol: float = COEFF_TOL) -> bool:
        return self.data.size == 0 or float(np.max(np.abs(self.data))) <= tol

    def __eq__(self, other) -> bool:
        if not isinstance(other, GAMatrix):
            return NotImplemented
        return other.group == self.group and self.isclose(other)

    __hash__ = None

    def entries(self) -> list[list[GAElement]]:
        return [[self[i, j] for j in range(self.shape[1])] for i in range(self.shape[0])]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries())

    def __repr__(self) -> str:
        return f"GAMatrix({self.group.name}, shape={self.shape})"


def mat_mul(M: GAMatrix, N: GAMatrix) -> GAMatrix:
    return M @ N


def mat_star(M: GAMatrix) -> GAMatrix:
    return M.star()


def mat_pow(M: GAMatrix, h: int) -> GAMatrix:
    return M.power(h)


def mat_trace(M: GAMatrix) -> GAElement:
    return M.trace()


def qn_real(n: int) -> np.ndarray:
    """The real matrix (2/n) J - I."""
    if n < 1:
        raise ValueError("Q_n needs n >= 1")
    return np.full((n, n), 2.0 / n) - np.eye(n)


def build_qn(n: int, group: Group) -> GAMatrix:
    return GAMatrix.scalar(group, qn_real(n))


def qalpha_real(cell_sizes: Sequence[int]) -> np.ndarray:
    """Block diagonal [I_{n0}, Q_{n1}, ..., Q_{nk}] for cell sizes n0, n1, ..., nk."""
    if not cell_sizes:
        return np.zeros((0, 0))
    n0, rest = cell_sizes[0], cell_sizes[1:]
    total = sum(cell_sizes)
    out = np.zeros((total, total))
    out[:n0, :n0] = np.eye(n0)
    start = n0
    for size in rest:
        if size < 1:
            raise ValueError("cells other than C0 must be nonempty")
        out[start:start + size, start:start + size] = qn_real(size)
        start += size
    return out


def build_qalpha(cells: Sequence[Sequence], group: Group) -> GAMatrix:
    """Q_alpha in the cell order C0, C1, ..., Ck (cells given as vertex lists)."""
    return GAMatrix.scalar(group, qalpha_real([len(c) for c in cells]))

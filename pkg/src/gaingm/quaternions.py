"""Real quaternions, quaternionic matrices and their complex adjoints.

A quaternion ``a + bi + cj + dk`` is split as ``(a + bi) + (c + di) j``; a
matrix ``A = A1 + A2 j`` has complex adjoint ``[[A1, A2], [-conj(A2), conj(A1)]]``.
The same 2x2 block applied entrywise is the degree-2 representation of the unit
quaternions used as ``pi_H``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import NotHermitianError, NumericalError, ShapeError
from .spectra import Spectrum, hermitian_eigs

EQ_TOL = 1e-9
PAIRING_TOL = 1e-7


@dataclass(frozen=True)
class Quaternion:
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    @classmethod
    def from_seq(cls, comps: Sequence[float]) -> Quaternion:
        a, b, c, d = (float(x) for x in comps)
        return cls(a, b, c, d)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    @property
    def real(self) -> float:
        return self.a

    @property
    def imag(self) -> Quaternion:
        return Quaternion(0.0, self.b, self.c, self.d)

    def __add__(self, other: Quaternion) -> Quaternion:
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: Quaternion) -> Quaternion:
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other) -> Quaternion:
        if isinstance(other, (int, float)):
            return Quaternion(self.a * other, self.b * other, self.c * other, self.d * other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        a1, b1, c1, d1 = self.as_tuple()
        a2, b2, c2, d2 = other.as_tuple()
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other) -> Quaternion:
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def conj(self) -> Quaternion:
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> float:
        return math.sqrt(self.a**2 + self.b**2 + self.c**2 + self.d**2)

    def inverse(self) -> Quaternion:
        n2 = self.a**2 + self.b**2 + self.c**2 + self.d**2
        if n2 == 0.0:
            raise ZeroDivisionError("the zero quaternion has no inverse")
        return self.conj() * (1.0 / n2)

    def distance(self, other: Quaternion) -> float:
        return max(abs(x - y) for x, y in zip(self.as_tuple(), other.as_tuple()))

    def isclose(self, other: Quaternion, tol: float = EQ_TOL) -> bool:
        return self.distance(other) <= tol

    def complex_pair(self) -> tuple[complex, complex]:
        return complex(self.a, self.b), complex(self.c, self.d)

    def adjoint_block(self) -> np.ndarray:
        """The 2x2 complex adjoint of the 1x1 matrix [q]."""
        z1, z2 = self.complex_pair()
        return np.array([[z1, z2], [-z2.conjugate(), z1.conjugate()]], dtype=complex)


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)
ZERO = Quaternion()


def q_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    return p * q


def q_inv(q: Quaternion) -> Quaternion:
    return q.inverse()


def q_conj(q: Quaternion) -> Quaternion:
    return q.conj()


def q_norm(q: Quaternion) -> float:
    return q.norm()


def canonical_class(q: Quaternion) -> complex:
    """The complex representative Re(q) + |Im(q)| i of the similarity class of q."""
    return complex(q.a, math.sqrt(q.b**2 + q.c**2 + q.d**2))


def _hamilton(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    # P: (n, k, 4), Q: (k, m, 4)
    p = [P[..., t] for t in range(4)]
    q = [Q[..., t] for t in range(4)]
    out = np.empty((P.shape[0], Q.shape[1], 4))
    out[..., 0] = p[0] @ q[0] - p[1] @ q[1] - p[2] @ q[2] - p[3] @ q[3]
    out[..., 1] = p[0] @ q[1] + p[1] @ q[0] + p[2] @ q[3] - p[3] @ q[2]
    out[..., 2] = p[0] @ q[2] - p[1] @ q[3] + p[2] @ q[0] + p[3] @ q[1]
    out[..., 3] = p[0] @ q[3] + p[1] @ q[2] - p[2] @ q[1] + p[3] @ q[0]
    return out


class QuatMatrix:
    """Dense matrix of quaternions stored as a real array of shape (rows, cols, 4)."""

    __slots__ = ("data",)

    def __init__(self, data):
        arr = np.array(data, dtype=float)
        if arr.ndim != 3 or arr.shape[2] != 4:
            raise ShapeError(f"quaternion matrix data must have shape (n, m, 4), got {arr.shape}")
        arr.setflags(write=False)
        self.data = arr

    @classmethod
    def from_entries(cls, rows: Iterable[Iterable[Quaternion | float | int]]) -> QuatMatrix:
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if n else 0
        arr = np.zeros((n, m, 4))
        for i, row in enumerate(rows):
            if len(row) != m:
                raise ShapeError("ragged quaternion matrix")
            for j, q in enumerate(row):
                if isinstance(q, Quaternion):
                    arr[i, j] = q.as_tuple()
                else:
                    arr[i, j, 0] = float(q)
        return cls(arr)

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> QuatMatrix:
        return cls(np.zeros((n, n if m is None else m, 4)))

    @classmethod
    def identity(cls, n: int) -> QuatMatrix:
        arr = np.zeros((n, n, 4))
        arr[np.arange(n), np.arange(n), 0] = 1.0
        return cls(arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[0], self.data.shape[1]

    def __getitem__(self, idx: tuple[int, int]) -> Quaternion:
        return Quaternion.from_seq(self.data[idx])

    def __add__(self, other: QuatMatrix) -> QuatMatrix:
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return QuatMatrix(self.data + other.data)

    def __sub__(self, other: QuatMatrix) -> QuatMatrix:
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return QuatMatrix(self.data - other.data)

    def __matmul__(self, other: QuatMatrix) -> QuatMatrix:
        if self.shape[1] != other.shape[0]:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        return QuatMatrix(_hamilton(self.data, other.data))

    def scale(self, r: float) -> QuatMatrix:
        return QuatMatrix(self.data * r)

    def star(self) -> QuatMatrix:
        """Conjugate transpose."""
        out = np.transpose(self.data, (1, 0, 2)).copy()
        out[..., 1:] *= -1
        return QuatMatrix(out)

    def max_abs_diff(self, other: QuatMatrix) -> float:
        if self.shape != other.shape:
            return float("inf")
        if self.data.size == 0:
            return 0.0
        return float(np.max(np.abs(self.data - other.data)))

    def isclose(self, other: QuatMatrix, tol: float = EQ_TOL) -> bool:
        return self.max_abs_diff(other) <= tol

    def is_hermitian(self, tol: float = EQ_TOL) -> bool:
        return self.shape[0] == self.shape[1] and self.isclose(self.star(), tol)

    def split(self) -> tuple[np.ndarray, np.ndarray]:
        """Complex matrices A1, A2 with A = A1 + A2 j."""
        d = self.data
        return d[..., 0] + 1j * d[..., 1], d[..., 2] + 1j * d[..., 3]

    def inverse(self) -> QuatMatrix:
        """Gauss-Jordan inverse over the quaternions (rows scaled on the left)."""
        n, m = self.shape
        if n != m:
            raise ShapeError("only square matrices can be inverted")
        a = [[self[i, j] for j in range(n)] for i in range(n)]
        inv = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        for col in range(n):
            pivot = max(range(col, n), key=lambda r: a[r][col].norm())
            if a[pivot][col].norm() < 1e-14:
                raise ZeroDivisionError("quaternion matrix is singular")
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
            p = a[col][col].inverse()
            a[col] = [p * x for x in a[col]]
            inv[col] = [p * x for x in inv[col]]
            for r in range(n):
                if r == col:
                    continue
                factor = a[r][col]
                if factor.norm() == 0.0:
                    continue
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - factor * y for x, y in zip(inv[r], inv[col])]
        return QuatMatrix.from_entries(inv)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuatMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    __hash__ = None

    def __repr__(self) -> str:
        return f"QuatMatrix(shape={self.shape})"


def complex_adjoint(M: QuatMatrix) -> np.ndarray:
    """The 2n x 2n complex adjoint f(M)."""
    A1, A2 = M.split()
    return np.block([[A1, A2], [-A2.conj(), A1.conj()]])


def pi_h_matrix(M: QuatMatrix) -> np.ndarray:
    """Replace every entry by its 2x2 block under pi_H."""
    A1, A2 = M.split()
    n, m = M.shape
    out = np.zeros((2 * n, 2 * m), dtype=complex)
    out[0::2, 0::2] = A1
    out[0::2, 1::2] = A2
    out[1::2, 0::2] = -A2.conj()
    out[1::2, 1::2] = A1.conj()
    return out


def tau(n: int) -> list[int]:
    """The shuffle on {1, ..., 2n}: even 2k -> n + k, odd 2k + 1 -> k + 1.

    Returned 1-based as ``[tau(1), ..., tau(2n)]``.
    """
    out = []
    for r in range(1, 2 * n + 1):
        k, rem = divmod(r, 2)
        out.append(n + k if rem == 0 else k + 1)
    return out


def shuffle_column_matrix(n: int) -> np.ndarray:
    """C_tau: the permutation matrix whose b-th column is e_{tau^-1(b)}."""
    t = tau(n)
    inv = [0] * (2 * n)
    for r, image in enumerate(t, start=1):
        inv[image - 1] = r
    C = np.zeros((2 * n, 2 * n))
    for b in range(1, 2 * n + 1):
        C[inv[b - 1] - 1, b - 1] = 1.0
    return C


def shuffle_identity(M: QuatMatrix, tol: float = 1e-12) -> bool:
    """Check f(M) = R_tau pi_H(M) C_tau with R_tau = C_tau^T."""
    n, m = M.shape
    if n != m:
        raise ShapeError("shuffle identity needs a square matrix")
    C = shuffle_column_matrix(n)
    lhs = complex_adjoint(M)
    rhs = C.T @ pi_h_matrix(M) @ C
    return bool(np.max(np.abs(lhs - rhs), initial=0.0) <= tol)


def right_spectrum(M: QuatMatrix) -> Spectrum:
    """Right spectrum of a Hermitian quaternionic matrix.

    The spectrum of f(M) is the right spectrum taken twice; eigenvalues are
    paired after sorting and any pair wider than 1e-7 is a numerical failure.
    """
    if not M.is_hermitian():
        raise NotHermitianError("right spectrum needs a Hermitian quaternionic matrix")
    doubled = hermitian_eigs(complex_adjoint(M)).eigenvalues
    halves = []
    for lo, hi in zip(doubled[0::2], doubled[1::2]):
        if abs(hi - lo) > PAIRING_TOL:
            raise NumericalError(
                f"eigenvalues of the complex adjoint do not pair up ({lo!r} vs {hi!r})"
            )
        halves.append((lo + hi) / 2)
    return Spectrum(tuple(halves))


# The quaternionic GM switching lives with the other switchings; these names
# are re-exported here for discoverability (imported lazily to avoid a cycle).

def check_quat_gm(g, alpha):
    from .switching import check_quat_gm as _check

    return _check(g, alpha)


def apply_quat_switch(g, alpha, plan):
    from .switching import apply_quat_switch as _apply

    return _apply(g, alpha, plan)

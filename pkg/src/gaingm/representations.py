"""Unitary representations and their extensions to CG and to CG-matrices.

Naming scheme (also used by the CLI ``--rep`` flag):

``trivial``            every group
``identical``          roots of unity, z -> z
``char:<t>``           cyclic / roots of unity, generator -> exp(2 pi i t / n)
``char:<t>,<u>``       dihedral, a -> (-1)^t, b -> (-1)^u  (t = 1 needs an even n)
``dihedral2``          dihedral, a -> rotation by 2 pi / n, b -> diag(1, -1)
``dihedral2:<h>``      the same with rotation angle 2 pi h / n
``sign``, ``permutation``, ``standard``, ``standard_sign``   symmetric groups
``s4_two``             the 2-dimensional irreducible of S4 (through S4 -> S3)
``regular``            left regular representation of any finite group
``pi_h``               unit quaternions, q -> its 2x2 complex adjoint
``sum:<r1>+<r2>+...``  direct sum
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import block_diag

from .errors import GroupMismatchError, InfiniteGroupError, UnsupportedFeatureError
from .gg_matrix import GAMatrix
from .group_algebra import GAElement
from .groups import (
    CYCLIC,
    DIHEDRAL,
    QUATERNION,
    ROOTS,
    SYMMETRIC,
    Group,
    GroupElement,
    sign,
)

MATRIX_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Representation:
    """A homomorphism from a group to unitary k x k matrices.

    Finite groups carry a precomputed image stack of shape ``(|G|, k, k)`` in
    canonical element order; infinite groups carry a callable instead.
    """

    group: Group
    degree: int
    name: str
    images: np.ndarray | None = None
    func: Callable[[GroupElement], np.ndarray] | None = field(default=None, repr=False)

    @classmethod
    def from_function(cls, group: Group, name: str, func: Callable[[GroupElement], np.ndarray]):
        if not group.is_finite:
            degree = np.asarray(func(group.identity)).shape[0]
            return cls(group, degree, name, None, func)
        mats = np.array([np.asarray(func(g), dtype=complex) for g in group.elements()])
        mats.setflags(write=False)
        return cls(group, mats.shape[1], name, mats)

    def __call__(self, g: GroupElement) -> np.ndarray:
        if g.group != self.group:
            raise GroupMismatchError(f"{g!r} is not in the domain of {self.name}")
        if self.images is not None:
            return self.images[self.group.index(g)]
        return np.asarray(self.func(g), dtype=complex)

    def apply_cg(self, f: GAElement) -> np.ndarray:
        """Linear extension sum f_x x -> sum f_x pi(x)."""
        if f.group != self.group:
            raise GroupMismatchError(f"{self.name} cannot act on C{f.group.name}")
        return np.tensordot(f.to_vector(), self.images, axes=1)

    def fourier(self, M: GAMatrix) -> np.ndarray:
        """Replace each entry of M by its k x k image block."""
        if M.group != self.group:
            raise GroupMismatchError(f"{self.name} cannot act on matrices over {M.group.name}")
        n, m = M.shape
        k = self.degree
        blocks = np.einsum("ijx,xab->iajb", M.data, self.images)
        return blocks.reshape(n * k, m * k)

    def kernel_elements(self) -> list[GroupElement]:
        if not self.group.is_finite:
            raise InfiniteGroupError("kernel scan needs a finite group")
        eye = np.eye(self.degree)
        return [g for g, img in zip(self.group.elements(), self.images)
                if np.max(np.abs(img - eye)) <= MATRIX_TOL]

    def character(self, g: GroupElement) -> complex:
        return complex(np.trace(self(g)))

    def is_homomorphism(self, tol: float = MATRIX_TOL) -> bool:
        els = self.group.elements()
        if np.max(np.abs(self.images[0] - np.eye(self.degree))) > tol:
            return False
        table = self.group.mul_table
        for i in range(len(els)):
            for j in range(len(els)):
                if np.max(np.abs(self.images[i] @ self.images[j] - self.images[table[i, j]])) > tol:
                    return False
        return True

    def is_unitary(self, tol: float = MATRIX_TOL) -> bool:
        eye = np.eye(self.degree)
        return all(np.max(np.abs(m @ m.conj().T - eye)) <= tol for m in self.images)

    def __repr__(self) -> str:
        return f"Representation({self.name} of {self.group.name}, degree {self.degree})"


def direct_sum(*reps: Representation) -> Representation:
    if not reps:
        raise ValueError("direct sum of nothing")
    group = reps[0].group
    if any(r.group != group for r in reps):
        raise GroupMismatchError("direct sum of representations of different groups")
    name = "sum:" + "+".join(r.name[4:] if r.name.startswith("sum:") else r.name for r in reps)
    return Representation.from_function(group, name, lambda g: block_diag(*(r(g) for r in reps)))


def regular(group: Group) -> Representation:
    """Left regular representation: lambda(g) e_x = e_{gx} in canonical order."""
    if not group.is_finite:
        raise InfiniteGroupError("the regular representation needs a finite group")
    order = group.order
    table = group.mul_table
    mats = np.zeros((order, order, order), dtype=complex)
    for g in range(order):
        mats[g, table[g], np.arange(order)] = 1
    mats.setflags(write=False)
    return Representation(group, order, "regular", mats)


def _permutation_matrix(g: GroupElement) -> np.ndarray:
    n = len(g.value)
    P = np.zeros((n, n))
    P[list(g.value), list(range(n))] = 1
    return P


def _sum_zero_basis(n: int) -> np.ndarray:
    """Orthonormal (Helmert) basis of the vectors with zero coordinate sum, as columns."""
    V = np.zeros((n, n - 1))
    for k in range(1, n):
        V[:k, k - 1] = 1.0
        V[k, k - 1] = -k
        V[:, k - 1] /= math.sqrt(k * (k + 1))
    return V


def _standard(g: GroupElement) -> np.ndarray:
    V = _sum_zero_basis(len(g.value))
    return V.T @ _permutation_matrix(g) @ V


_PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def _s4_to_s3(g: GroupElement) -> GroupElement:
    perm = g.value
    keyed = [frozenset(frozenset(p) for p in pairing) for pairing in _PAIRINGS]
    images = []
    for pairing in _PAIRINGS:
        moved = frozenset(frozenset(perm[x] for x in p) for p in pairing)
        images.append(keyed.index(moved))
    return Group.symmetric(3).element(images)


def _dihedral_rotation(h: int, n: int) -> Callable[[GroupElement], np.ndarray]:
    theta = 2 * math.pi * h / n
    rot = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    # exact entries for quarter turns keep integer-valued matrices exact
    rot = np.where(np.abs(rot) < 1e-15, 0.0, rot)
    rot = np.where(np.abs(np.abs(rot) - 1) < 1e-15, np.round(rot), rot)
    flip = np.diag([1.0, -1.0])

    def image(g: GroupElement) -> np.ndarray:
        p, f = g.value
        return np.linalg.matrix_power(rot, p) @ (flip if f else np.eye(2))

    return image


def _root(t: int, n: int) -> complex:
    k = t % n
    if (4 * k) % n == 0:
        return [1, 1j, -1, -1j][(4 * k) // n]
    return cmath.exp(2j * math.pi * k / n)


def builtin(group: Group, name: str) -> Representation:
    """Look up a representation by name (see the module docstring)."""
    name = name.strip()
    if name.startswith("sum:"):
        parts = [p for p in name[4:].split("+") if p]
        if len(parts) < 2:
            raise ValueError(f"direct sum {name!r} needs at least two summands")
        return direct_sum(*(builtin(group, p) for p in parts))
    kind, n = group.kind, group.n

    if name == "trivial":
        return Representation.from_function(group, name, lambda g: np.eye(1))
    if name == "regular":
        return regular(group)
    if name == "identical" and kind == ROOTS:
        return Representation.from_function(group, name, lambda g: np.array([[_root(g.value, n)]]))
    if name.startswith("char:") and kind in (CYCLIC, ROOTS):
        t = int(name[5:])
        return Representation.from_function(
            group, f"char:{t % n}", lambda g: np.array([[_root(t * g.value, n)]]))
    if name.startswith("char:") and kind == DIHEDRAL:
        t, u = (int(x) for x in name[5:].split(","))
        if t % 2 and n % 2:
            raise ValueError(f"a -> -1 is not a character of D{2 * n} (odd n)")
        return Representation.from_function(
            group, f"char:{t % 2},{u % 2}",
            lambda g: np.array([[(-1.0) ** (t * g.value[0]) * (-1.0) ** (u * g.value[1])]]))
    if name.startswith("dihedral2") and kind == DIHEDRAL:
        h = int(name.split(":", 1)[1]) if ":" in name else 1
        return Representation.from_function(group, name, _dihedral_rotation(h, n))
    if kind == SYMMETRIC:
        if name == "sign":
            return Representation.from_function(group, name, lambda g: np.array([[float(sign(g))]]))
        if name == "permutation":
            return Representation.from_function(group, name, _permutation_matrix)
        if name == "standard" and n >= 2:
            return Representation.from_function(group, name, _standard)
        if name == "standard_sign" and n >= 2:
            return Representation.from_function(group, name, lambda g: sign(g) * _standard(g))
        if name == "s4_two" and n == 4:
            return Representation.from_function(group, name, lambda g: _standard(_s4_to_s3(g)))
    if name == "pi_h" and kind == QUATERNION:
        return pi_h_representation(group)
    raise ValueError(f"unknown representation {name!r} for {group.name}")


def pi_h_representation(group: Group | None = None) -> Representation:
    group = group or Group.unit_quaternions()
    if group.kind != QUATERNION:
        raise GroupMismatchError("pi_h is a representation of the unit quaternions")
    return Representation(group, 2, "pi_h", None, lambda g: g.value.adjoint_block())


def irreducible_system(group: Group) -> list[Representation]:
    """A complete system of irreducible unitary representations (hand-coded)."""
    kind, n = group.kind, group.n
    if kind in (CYCLIC, ROOTS):
        names = [f"char:{t}" for t in range(n)]
    elif kind == DIHEDRAL:
        names = ["char:0,0", "char:0,1"]
        if n % 2 == 0:
            names += ["char:1,0", "char:1,1"]
        names += [f"dihedral2:{h}" for h in range(1, (n - 1) // 2 + 1)]
    elif kind == SYMMETRIC and n <= 4:
        names = {1: ["trivial"], 2: ["trivial", "sign"], 3: ["trivial", "sign", "standard"],
                 4: ["trivial", "sign", "standard", "standard_sign", "s4_two"]}[n]
    else:
        raise UnsupportedFeatureError(f"no hand-coded irreducible system for {group.name}")
    return [builtin(group, name) for name in names]


def apply_cg(rep: Representation, f: GAElement) -> np.ndarray:
    return rep.apply_cg(f)


def fourier(rep: Representation, M: GAMatrix) -> np.ndarray:
    return rep.fourier(M)


def kernel_elements(rep: Representation, group: Group | None = None) -> list[GroupElement]:
    if group is not None and group != rep.group:
        raise GroupMismatchError("representation and group differ")
    return rep.kernel_elements()

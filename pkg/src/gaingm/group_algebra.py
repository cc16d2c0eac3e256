"""Elements of the complex group algebra CG of a finite group."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import GroupMismatchError, UnsupportedFeatureError
from .groups import Group, GroupElement

COEFF_TOL = 1e-12


def format_coefficient(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        r = c.real
        return str(int(r)) if float(r).is_integer() else format(r, ".12g")
    if c.real == 0:
        im = c.imag
        return (str(int(im)) if float(im).is_integer() else format(im, ".12g")) + "j"
    return f"({format(c.real, '.12g')}{format(c.imag, '+.12g')}j)"


class GAElement:
    """A finitely supported map from group elements to complex coefficients."""

    __slots__ = ("group", "_support")

    def __init__(self, group: Group, support: Mapping[GroupElement, complex] | None = None):
        if not group.is_finite:
            raise UnsupportedFeatureError(f"group algebra arithmetic over {group.name} is not supported")
        self.group = group
        clean: dict[GroupElement, complex] = {}
        for g, c in (support or {}).items():
            if g.group != group:
                raise GroupMismatchError(f"{g!r} does not belong to {group.name}")
            c = complex(c)
            if c != 0:
                clean[g] = clean.get(g, 0) + c
        self._support = {g: c for g, c in clean.items() if c != 0}

    @classmethod
    def zero(cls, group: Group) -> GAElement:
        return cls(group)

    @classmethod
    def unit(cls, group: Group) -> GAElement:
        return cls(group, {group.identity: 1})

    @classmethod
    def of(cls, g: GroupElement, coeff: complex = 1) -> GAElement:
        return cls(g.group, {g: coeff})

    @classmethod
    def sum_of(cls, group: Group, elements: Iterable[GroupElement]) -> GAElement:
        acc: dict[GroupElement, complex] = {}
        for g in elements:
            acc[g] = acc.get(g, 0) + 1
        return cls(group, acc)

    @classmethod
    def from_vector(cls, group: Group, vec) -> GAElement:
        els = group.elements()
        return cls(group, {els[i]: c for i, c in enumerate(np.asarray(vec)) if c != 0})

    @property
    def support(self) -> dict[GroupElement, complex]:
        return dict(self._support)

    def coefficient(self, g: GroupElement) -> complex:
        return self._support.get(g, 0j)

    def to_vector(self) -> np.ndarray:
        vec = np.zeros(self.group.order, dtype=complex)
        for g, c in self._support.items():
            vec[self.group.index(g)] = c
        return vec

    def _check(self, other: GAElement) -> None:
        if not isinstance(other, GAElement) or other.group != self.group:
            raise GroupMismatchError("group algebra operands over different groups")

    def __add__(self, other: GAElement) -> GAElement:
        self._check(other)
        out = dict(self._support)
        for g, c in other._support.items():
            out[g] = out.get(g, 0) + c
        return GAElement(self.group, out)

    def __neg__(self) -> GAElement:
        return GAElement(self.group, {g: -c for g, c in self._support.items()})

    def __sub__(self, other: GAElement) -> GAElement:
        return self + (-other)

    def scale(self, c: complex) -> GAElement:
        return GAElement(self.group, {g: c * v for g, v in self._support.items()})

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        self._check(other)
        out: dict[GroupElement, complex] = {}
        for x, fx in self._support.items():
            for y, hy in other._support.items():
                xy = x * y
                out[xy] = out.get(xy, 0) + fx * hy
        return GAElement(self.group, out)

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        return NotImplemented

    def star(self) -> GAElement:
        """f* = sum conj(f_{x^-1}) x."""
        return GAElement(self.group, {x.inverse(): c.conjugate() for x, c in self._support.items()})

    def mu(self) -> ClassFunction:
        """Sum coefficients over conjugacy classes."""
        vals: dict[GroupElement, complex] = {}
        classes = self.group.conjugacy_classes()
        class_of = self.group.class_of
        for g, c in self._support.items():
            rep = classes[class_of[self.group.index(g)]][0]
            vals[rep] = vals.get(rep, 0) + c
        return ClassFunction(self.group, {g: c for g, c in vals.items() if c != 0})

    def is_zero(self, tol: float = COEFF_TOL) -> bool:
        return all(abs(c) <= tol for c in self._support.values())

    def isclose(self, other: GAElement, tol: float = COEFF_TOL) -> bool:
        self._check(other)
        keys = set(self._support) | set(other._support)
        return all(abs(self.coefficient(g) - other.coefficient(g)) <= tol for g in keys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GAElement):
            return NotImplemented
        return other.group == self.group and self.isclose(other)

    __hash__ = None

    def terms(self) -> list[tuple[GroupElement, complex]]:
        """Support in canonical element order."""
        return sorted(self._support.items(), key=lambda kv: self.group.index(kv[0]))

    def __str__(self) -> str:
        terms = self.terms()
        if not terms:
            return "0"
        parts = []
        for k, (g, c) in enumerate(terms):
            if c.imag == 0 and c.real < 0:
                body = f"{format_coefficient(-c)}*{g}"
                parts.append(("- " if k else "-") + body)
            else:
                body = f"{format_coefficient(c)}*{g}"
                parts.append(("+ " if k else "") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"GAElement({self.group.name}: {self})"


@dataclass(frozen=True)
class ClassFunction:
    """Values on conjugacy classes, keyed by each class's first element."""

    group: Group
    values: Mapping[GroupElement, complex]

    def value_at(self, g: GroupElement) -> complex:
        rep = self.group.conjugacy_classes()[self.group.class_of[self.group.index(g)]][0]
        return self.values.get(rep, 0j)

    def isclose(self, other: ClassFunction, tol: float = COEFF_TOL) -> bool:
        if other.group != self.group:
            return False
        keys = set(self.values) | set(other.values)
        return all(abs(self.values.get(g, 0) - other.values.get(g, 0)) <= tol for g in keys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.isclose(other)

    __hash__ = None

    def __str__(self) -> str:
        items = sorted(self.values.items(), key=lambda kv: self.group.index(kv[0]))
        return ", ".join(f"[{g}]: {format_coefficient(c)}" for g, c in items) or "0"


def ga_add(f: GAElement, h: GAElement) -> GAElement:
    return f + h


def ga_scale(c: complex, f: GAElement) -> GAElement:
    return f.scale(c)


def ga_mul(f: GAElement, h: GAElement) -> GAElement:
    return f * h


def ga_star(f: GAElement) -> GAElement:
    return f.star()


def ga_mu(f: GAElement) -> ClassFunction:
    return f.mu()

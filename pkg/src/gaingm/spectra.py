"""Real spectra and characteristic polynomials of Hermitian complex matrices.

Eigenvalues come from LAPACK (``numpy.linalg.eigvalsh``); characteristic
polynomials are computed independently with the Faddeev-LeVerrier recursion so
the two routes can be cross-checked against each other.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import NotHermitianError, NumericalError, ShapeError

HERMITIAN_TOL = 1e-9
IMAG_TOL = 1e-6
INTEGER_TOL = 1e-6


def _square(M) -> np.ndarray:
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {A.shape}")
    return A


def hermitian_defect(M) -> float:
    A = _square(M)
    if A.size == 0:
        return 0.0
    return float(np.max(np.abs(A - A.conj().T)))


@dataclass(frozen=True)
class Spectrum:
    """Sorted multiset of real eigenvalues."""

    eigenvalues: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def __iter__(self) -> Iterator[float]:
        return iter(self.eigenvalues)

    def as_array(self) -> np.ndarray:
        return np.array(self.eigenvalues, dtype=float)

    @property
    def radius(self) -> float:
        return max((abs(x) for x in self.eigenvalues), default=0.0)

    def max_deviation(self, other: Spectrum) -> float:
        """Largest gap between the two spectra compared position by position."""
        if len(self) != len(other):
            return float("inf")
        if not len(self):
            return 0.0
        return float(np.max(np.abs(self.as_array() - other.as_array())))

    def matches(self, other: Spectrum, rtol: float = 1e-7) -> bool:
        scale = max(1.0, self.radius, other.radius)
        return self.max_deviation(other) <= rtol * scale


def hermitian_eigs(M) -> Spectrum:
    """Full real spectrum of a Hermitian matrix, ascending, with multiplicity."""
    A = _square(M)
    defect = hermitian_defect(A)
    if defect > HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian (max |M - M*| = {defect:.3g})")
    if A.shape[0] == 0:
        return Spectrum(())
    vals = np.linalg.eigvalsh((A + A.conj().T) / 2)
    return Spectrum(tuple(float(x) for x in np.sort(vals)))


@dataclass(frozen=True)
class CharPoly:
    """Monic polynomial, coefficients listed from the leading power down."""

    coefficients: tuple[float, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        return np.polyval(np.array(self.coefficients), x)

    def integer_coefficients(self, tol: float = INTEGER_TOL) -> tuple[int, ...] | None:
        """Rounded coefficients, or None when any of them is not near an integer."""
        out = []
        for c in self.coefficients:
            r = round(c)
            if abs(c - r) > tol:
                return None
            out.append(int(r))
        return tuple(out)

    def matches(self, coefficients: Sequence[float], tol: float = INTEGER_TOL) -> bool:
        if len(coefficients) != len(self.coefficients):
            return False
        return all(abs(a - b) <= tol for a, b in zip(self.coefficients, coefficients))

    def render(self) -> str:
        rounded = self.integer_coefficients()
        coeffs = rounded if rounded is not None else self.coefficients
        n = self.degree
        terms: list[tuple[str, str]] = []
        for k, c in enumerate(coeffs):
            power = n - k
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if isinstance(mag, float):
                mag_s = f"{mag:.10g}"
                is_one = mag == 1.0
            else:
                mag_s = str(mag)
                is_one = mag == 1
            if power == 0:
                body = mag_s
            else:
                var = "x" if power == 1 else f"x^{power}"
                body = var if is_one else f"{mag_s}{var}"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.render()


def char_poly(M) -> CharPoly:
    """Characteristic polynomial det(xI - M) by the Faddeev-LeVerrier recursion.

    Runs in complex doubles; the imaginary parts of the coefficients must vanish
    to within 1e-6 (true for Hermitian input) and are then dropped.
    """
    A = _square(M)
    n = A.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    eye = np.eye(n, dtype=complex)
    Mk = np.zeros_like(A)
    for k in range(1, n + 1):
        Mk = A @ Mk + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(A @ Mk) / k
    worst = float(np.max(np.abs(coeffs.imag))) if n else 0.0
    if worst > IMAG_TOL:
        raise NumericalError(f"characteristic polynomial has imaginary residue {worst:.3g}")
    return CharPoly(tuple(float(c) for c in coeffs.real))


def elementary_symmetric(values: Sequence[float]) -> np.ndarray:
    """Coefficients of prod(x - v), leading coefficient first."""
    poly = np.array([1.0])
    for v in values:
        poly = np.convolve(poly, np.array([1.0, -v]))
    return poly


# -- cospectrality of gain graphs ------------------------------------------------
# Graph-level helpers import lazily: gain graphs depend on this module through
# the quaternion code, so a top-level import would be circular.

def represented_adjacency(g, pi=None) -> np.ndarray:
    """pi(A) for a gain graph; quaternion graphs use pi_H, others need pi."""
    from .quaternions import pi_h_matrix

    if g.group.kind == "unit_quaternion":
        if pi is not None and pi.name != "pi_h":
            raise ValueError("quaternion graphs are represented through pi_h only")
        return pi_h_matrix(g.quaternion_adjacency())
    if pi is None:
        raise ValueError("a representation is needed for a finite gain group")
    return pi.fourier(g.adjacency())


def pi_spectrum(g, pi=None) -> Spectrum:
    return hermitian_eigs(represented_adjacency(g, pi))


def pi_cospectral(g1, g2, pi=None, rtol: float = 1e-7) -> bool:
    """Sorted pi-spectra agree within rtol * max(1, spectral radius)."""
    from .errors import GroupMismatchError

    if g1.group != g2.group:
        raise GroupMismatchError("graphs have different gain groups")
    return pi_spectrum(g1, pi).matches(pi_spectrum(g2, pi), rtol)


def right_cospectral(g1, g2, rtol: float = 1e-7) -> bool:
    from .quaternions import right_spectrum

    a = right_spectrum(g1.quaternion_adjacency())
    b = right_spectrum(g2.quaternion_adjacency())
    return a.matches(b, rtol)


def trace_sequence(g, hmax: int) -> list[dict]:
    """mu(Tr(A^h)) for h = 1..hmax, as exact integer class sums.

    Each entry maps the first element (canonical order) of a conjugacy class
    to its integer coefficient sum; walks are counted with Python integers.
    """
    G = g.group
    G._require_finite("trace sequences")
    order = G.order
    n = len(g)
    table = G.mul_table
    classes = G.class_of
    reps = [c[0] for c in G.conjugacy_classes()]
    arcs = []
    for u, v, x in g.edges():
        i, j = g.index(u), g.index(v)
        arcs.append((i, j, table[:, G.index(x)]))
        arcs.append((j, i, table[:, G.index(x.inverse())]))
    P = np.zeros((n, n, order), dtype=object)
    P[:, :, :] = 0
    for i in range(n):
        P[i, i, 0] = 1
    out = []
    for _ in range(hmax):
        nxt = np.zeros((n, n, order), dtype=object)
        nxt[:, :, :] = 0
        for k, j, col in arcs:
            # (P A)[., j] gains P[., k] * psi(k, j): coefficient of x moves to x psi
            nxt[:, j, col] += P[:, k, :]
        P = nxt
        diag = sum(P[i, i, :] for i in range(n)) if n else np.zeros(order, dtype=object)
        sums: dict = {}
        for idx in range(order):
            c = int(diag[idx])
            if c:
                rep = reps[classes[idx]]
                sums[rep] = sums.get(rep, 0) + c
        out.append(sums)
    return out


def g_cospectral(g1, g2, mode: str = "irreducible", hmax: int | None = None) -> bool:
    """G-cospectrality for finite gain groups.

    ``irreducible`` (the decision) compares the pi-spectra for every member of
    the hand-coded complete irreducible system; groups without one fall back
    to ``traces`` with the default bound. ``traces`` compares mu(Tr(A^h))
    exactly for h = 1..hmax (default |V|*|G|, enough to pin down every
    irreducible spectrum). ``regular`` compares spectra under the left regular
    representation only. That is necessary but not sufficient: the irreducible
    spectra can be shuffled between two graphs while their union agrees.
    """
    from .errors import GroupMismatchError, UnsupportedFeatureError
    from .representations import irreducible_system, regular

    if g1.group != g2.group:
        raise GroupMismatchError("graphs have different gain groups")
    if not g1.group.is_finite:
        raise UnsupportedFeatureError(
            f"no G-cospectrality decision over the infinite group {g1.group.name}")
    if len(g1) != len(g2):
        return False
    if mode == "irreducible":
        try:
            irreps = irreducible_system(g1.group)
        except UnsupportedFeatureError:
            return g_cospectral(g1, g2, "traces")
        return all(pi_cospectral(g1, g2, pi) for pi in irreps)
    if mode == "regular":
        return pi_cospectral(g1, g2, regular(g1.group))
    if mode == "traces":
        H = hmax if hmax is not None else len(g1) * g1.group.order
        return trace_sequence(g1, H) == trace_sequence(g2, H)
    raise ValueError(f"unknown mode {mode!r} (use 'irreducible', 'regular' or 'traces')")

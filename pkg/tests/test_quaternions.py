import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gaingm import QuatMatrix, Quaternion, catalog, complex_adjoint, pi_h_matrix, right_spectrum
from gaingm.errors import NotHermitianError
from gaingm.quaternions import (
    I,
    J,
    K,
    ONE,
    canonical_class,
    q_conj,
    q_inv,
    q_mul,
    q_norm,
    shuffle_column_matrix,
    shuffle_identity,
    tau,
)

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)
seeds = st.integers(0, 2**32 - 1)


def hamilton(p, q):
    a1, b1, c1, d1 = p.as_tuple()
    a2, b2, c2, d2 = q.as_tuple()
    return Quaternion(a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                      a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                      a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                      a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)


def random_qm(rng, n, m=None):
    return QuatMatrix(rng.normal(size=(n, n if m is None else m, 4)))


def test_units():
    minus = -ONE
    assert q_mul(I, I).isclose(minus) and q_mul(J, J).isclose(minus) and q_mul(K, K).isclose(minus)
    assert q_mul(q_mul(I, J), K).isclose(minus)
    assert q_mul(I, J).isclose(K) and q_mul(J, I).isclose(-K)
    assert q_inv(I).isclose(-I)
    r = math.sqrt(2) / 2
    assert abs(q_norm(Quaternion(r, 0, r, 0)) - 1) <= 1e-15
    with pytest.raises(ZeroDivisionError):
        q_inv(Quaternion())


def test_canonical_class_examples():
    assert canonical_class(Quaternion(-2.5)) == -2.5
    assert canonical_class(J) == 1j
    assert abs(canonical_class(Quaternion(1, 1, 1, 1)) - (1 + math.sqrt(3) * 1j)) <= 1e-15


@settings(max_examples=100, deadline=None)
@given(quats, quats)
def test_product_and_norm(p, q):
    assert q_mul(p, q).isclose(hamilton(p, q), 1e-9)
    assert abs(q_norm(q_mul(p, q)) - q_norm(p) * q_norm(q)) <= 1e-9
    assert q_mul(q_conj(q), q).isclose(Quaternion(q_norm(q) ** 2), 1e-9)


@settings(max_examples=60, deadline=None)
@given(quats, quats.filter(lambda h: q_norm(h) > 0.1))
def test_canonical_class_is_conjugation_invariant(q, h):
    h = h * (1 / q_norm(h))
    moved = q_mul(q_mul(q_inv(h), q), h)
    assert abs(canonical_class(moved) - canonical_class(q)) <= 1e-9


def test_adjoint_examples():
    assert np.allclose(complex_adjoint(QuatMatrix.from_entries([[I]])), np.diag([1j, -1j]))
    assert np.allclose(complex_adjoint(QuatMatrix.from_entries([[J]])), [[0, 1], [-1, 0]])
    assert np.array_equal(complex_adjoint(QuatMatrix.identity(2)), np.eye(4))


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_adjoint_identities(seed):
    rng = np.random.default_rng(seed)
    A, B = random_qm(rng, 3), random_qm(rng, 3)
    f = complex_adjoint
    assert np.max(np.abs(f(A + B) - f(A) - f(B))) <= 1e-9
    assert np.max(np.abs(f(A @ B) - f(A) @ f(B))) <= 1e-9
    assert np.max(np.abs(f(A.star()) - f(A).conj().T)) <= 1e-9
    assert np.max(np.abs(f(A.inverse()) - np.linalg.inv(f(A)))) <= 1e-9


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_matrix_product_matches_entrywise_oracle(seed):
    rng = np.random.default_rng(seed)
    A, B = random_qm(rng, 2, 3), random_qm(rng, 3, 2)
    C = A @ B
    for i in range(2):
        for j in range(2):
            acc = Quaternion()
            for t in range(3):
                acc = acc + hamilton(A[i, t], B[t, j])
            assert C[i, j].isclose(acc, 1e-9)


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(1, 6))
def test_eigenvalue_doubling(seed, n):
    rng = np.random.default_rng(seed)
    B = random_qm(rng, n)
    H = B + B.star()
    ev = np.linalg.eigvalsh(complex_adjoint(H))
    assert np.max(np.abs(ev[0::2] - ev[1::2])) <= 1e-7
    rs = right_spectrum(H).as_array()
    assert np.allclose(rs, ev[0::2], atol=1e-7)


def test_right_spectrum_examples():
    assert list(right_spectrum(QuatMatrix.zeros(2))) == [0, 0]
    M = QuatMatrix.from_entries([[0, J], [-J, 0]])
    assert np.allclose(right_spectrum(M).as_array(), [-1, 1], atol=1e-12)
    with pytest.raises(NotHermitianError):
        right_spectrum(QuatMatrix.from_entries([[0, J], [J, 0]]))


def test_tau_and_shuffle():
    assert tau(1) == [1, 2]
    assert tau(3) == [1, 4, 2, 5, 3, 6]
    C = shuffle_column_matrix(3)
    assert np.array_equal(C @ C.T, np.eye(6))
    one = QuatMatrix.from_entries([[Quaternion(0.6, 0, 0.8, 0)]])
    assert np.allclose(pi_h_matrix(one), complex_adjoint(one))


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 5))
def test_shuffle_identity_random(seed, n):
    rng = np.random.default_rng(seed)
    data = rng.normal(size=(n, n, 4))
    data /= np.linalg.norm(data, axis=2, keepdims=True)
    M = QuatMatrix(data)
    assert shuffle_identity(M)


def test_quaternion_example_adjacency():
    ex = catalog.quat_example()
    for g in (ex.graph, ex.switched):
        M = g.quaternion_adjacency()
        assert M.is_hermitian()
        assert shuffle_identity(M)
        a = np.linalg.eigvalsh(pi_h_matrix(M))
        b = np.linalg.eigvalsh(complex_adjoint(M))
        assert np.allclose(a, b, atol=1e-9)
    # right spectrum squared back up gives the degree-16 polynomial of the example
    rs = right_spectrum(ex.graph.quaternion_adjacency()).as_array()
    doubled = np.poly(np.repeat(rs, 2))
    target = [1, 0, -22, 0, 187, 0, -776, 0, 1639, 0, -1650, 0, 625, 0, 0, 0, 0]
    assert np.allclose(doubled, target, atol=1e-6)

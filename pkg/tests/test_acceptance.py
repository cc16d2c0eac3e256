"""The ten acceptance criteria, one test each.

Every test prints a single ``CRITERION k: PASS|FAIL`` line (visible with
``-s``) and the lines are repeated in the terminal summary.
"""
import itertools
import math
import time
from contextlib import contextmanager

import numpy as np

from conftest import ACCEPTANCE_LINES
from gaingm import (
    CentralMultiply,
    GAElement,
    GAMatrix,
    GainGraph,
    Group,
    QuatMatrix,
    Swap,
    apply_quat_switch,
    apply_switch,
    build_qn,
    builtin,
    catalog,
    char_poly,
    check_g_gm,
    check_pi_gm,
    check_quat_gm,
    complex_adjoint,
    g_cospectral,
    irreducible_system,
    pi_cospectral,
    pi_h_matrix,
    psi_sum,
    regular,
    right_spectrum,
    switching_isomorphic,
    verify_conjugation,
)
from gaingm.planted import (
    random_g_gm_instance,
    random_gain_graph,
    random_partition,
    random_pi_gm_instance,
    random_switching_copy,
)
from gaingm.quaternions import shuffle_identity

D8_POLY = (1, 0, -26, 0, 263, 0, -1306, 0, 3297, 0, -3968, 0, 1984, 0, -256, 0, 0)
QUAT_POLY = (1, 0, -22, 0, 187, 0, -776, 0, 1639, 0, -1650, 0, 625, 0, 0, 0, 0)


@contextmanager
def criterion(k: int, title: str, budget: float | None = None):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - t0
        if budget is not None:
            assert elapsed < budget, f"took {elapsed:.2f} s, budget {budget} s"
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        line = f"CRITERION {k:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f} s)"
        ACCEPTANCE_LINES[k] = line
        print("\n" + line)


def coeffs_close(cp, target, tol=1e-6):
    return len(cp.coefficients) == len(target) and all(
        abs(c - t) <= tol for c, t in zip(cp.coefficients, target))


def test_criterion_01_t_example():
    with criterion(1, "T/mu4 example: sums, G-GM, switch, G-cospectral, not switching isomorphic", 1.0):
        G = Group.roots_of_unity(4)
        one, i = G.parse("1"), G.parse("i")
        ex = catalog.t_example()
        g, alpha = ex.graph, ex.partition
        c1 = alpha.cells[1]
        assert psi_sum(g, "v0", c1) == GAElement(G, {one: 4, i: 4})
        for v in c1:
            assert psi_sum(g, v, c1) == GAElement(G, {one: 2})
        check = check_g_gm(g, alpha)
        assert check.ok
        sw = apply_switch(g, alpha, check.plan)
        # the figure: rim unchanged, hub gains i now on v1, v4, v5, v6
        expected = {frozenset((f"v{k}", f"v{k % 8 + 1}")): one for k in range(1, 9)}
        expected.update({frozenset(("v0", f"v{j}")): (i if j in (1, 4, 5, 6) else one) for j in range(1, 9)})
        assert {frozenset((u, v)): sw.gain("v0", v) if u == "v0" else x for u, v, x in sw.edges()} == expected
        assert g_cospectral(g, sw, "regular")
        assert g_cospectral(g, sw, "irreducible")
        assert switching_isomorphic(g, sw) is None


def test_criterion_02_s4_example():
    with criterion(2, "S4 example: pi_p-GM, not pi_s-GM (2 vs -2), pi_p-cospectral, pi_s spectra differ", 5.0):
        ex = catalog.s4_example()
        g, alpha = ex.graph, ex.partition
        G = g.group
        pp, ps = builtin(G, "permutation"), builtin(G, "sign")
        cp = check_pi_gm(g, alpha, pp)
        assert cp.ok
        cs = check_pi_gm(g, alpha, ps)
        assert not cs.ok
        c1 = alpha.cells[1]
        lo = ps.apply_cg(psi_sum(g, "v2", c1))
        hi = ps.apply_cg(psi_sum(g, "v6", c1))
        assert abs(lo[0, 0] - 2) <= 1e-12 and abs(hi[0, 0] + 2) <= 1e-12
        assert {cs.failure["value"], cs.failure["reference_value"]} == {"2", "-2"}
        assert not check_g_gm(g, alpha).ok
        sw = apply_switch(g, alpha, cp.plan)
        A, B = pp.fourier(g.adjacency()), pp.fourier(sw.adjacency())
        assert A.shape == B.shape == (36, 36)
        ea, eb = np.linalg.eigvalsh(A), np.linalg.eigvalsh(B)
        assert np.max(np.abs(ea - eb)) <= 1e-7
        sa = np.linalg.eigvalsh(ps.fourier(g.adjacency()))
        sb = np.linalg.eigvalsh(ps.fourier(sw.adjacency()))
        assert np.max(np.abs(sa - sb)) > 1e-3


def test_criterion_03_kernel_chain():
    with criterion(3, "S4 kernel chain: multiply by (12)(34), pi_s invariance, pi_s-GM, end-to-end cospectral"):
        ex = catalog.s4_kernel_example()
        psi1, alpha = ex.graph, ex.partition
        G = psi1.group
        ps = builtin(G, "sign")
        psi2 = psi1.multiply_gain("v1", "v7", G.parse("(1 2)(3 4)"))
        assert psi2 == ex.extra["psi2"]
        assert psi2.gain("v1", "v7") == G.identity
        assert np.array_equal(ps.fourier(psi1.adjacency()), ps.fourier(psi2.adjacency()))
        check = check_pi_gm(psi2, alpha, ps)
        assert check.ok
        psi3 = apply_switch(psi2, alpha, check.plan)
        for (u, v), k in ex.extra["psi3_steps"]:
            assert k in ps.kernel_elements()
            psi3 = psi3.multiply_gain(u, v, k)
        assert psi3 == ex.extra["psi3"]
        s1 = np.linalg.eigvalsh(ps.fourier(psi1.adjacency()))
        s3 = np.linalg.eigvalsh(ps.fourier(psi3.adjacency()))
        assert np.max(np.abs(s1 - s3)) <= 1e-7


def test_criterion_04_d8_example():
    with criterion(4, "D8 example: CentralMultiply(a^2) at (v7, C1), shared pi_2 characteristic polynomial", 2.0):
        ex = catalog.d8_example()
        g, alpha = ex.graph, ex.partition
        G = g.group
        p2 = builtin(G, "dihedral2")
        check = check_pi_gm(g, alpha, p2, allow_central=True)
        assert check.ok
        assert check.plan.action("v7", 1) == CentralMultiply(G.parse("a^2"))
        sw = apply_switch(g, alpha, check.plan)
        for h in (g, sw):
            assert coeffs_close(char_poly(p2.fourier(h.adjacency())), D8_POLY)
        rendered = char_poly(p2.fourier(g.adjacency())).render()
        assert rendered == "x^16 - 26x^14 + 263x^12 - 1306x^10 + 3297x^8 - 3968x^6 + 1984x^4 - 256x^2"


def test_criterion_05_quaternion_example():
    with criterion(5, "Quaternion example: plan, pi_H and f polynomials, right cospectral, shuffle identity"):
        ex = catalog.quat_example()
        g, alpha = ex.graph, ex.partition
        Q = g.group
        check = check_quat_gm(g, alpha)
        assert check.ok
        assert check.plan.action("v7", 1) == CentralMultiply(Q.parse("-1"))
        assert check.plan.action("v8", 1) == Swap(Q.identity, None)
        sw = apply_quat_switch(g, alpha, check.plan)
        spectra = []
        for h in (g, sw):
            M = h.quaternion_adjacency()
            assert coeffs_close(char_poly(pi_h_matrix(M)), QUAT_POLY)
            assert coeffs_close(char_poly(complex_adjoint(M)), QUAT_POLY)
            assert shuffle_identity(M)
            spectra.append(right_spectrum(M).as_array())
        assert np.max(np.abs(spectra[0] - spectra[1])) <= 1e-7


def _random_column(G, rng, n, elements=3):
    pool = [G.elements()[t] for t in rng.choice(G.order, size=elements, replace=False)]
    return [GAElement(G, {pool[int(rng.integers(elements))]: int(rng.integers(-3, 4))}) for _ in range(n)]


def _constant_sums_matrix(G, rng, m, n):
    # residue-class pattern: every row and every column sees the same multiset
    pool = [G.elements()[t] for t in rng.choice(G.order, size=3, replace=False)]
    d = math.gcd(m, n)
    pattern = [GAElement(G, {pool[int(rng.integers(3))]: int(rng.integers(-2, 3))}) for _ in range(d)]
    return GAMatrix.from_entries(G, [[pattern[(a - b) % d] for b in range(n)] for a in range(m)])


def test_criterion_06_q_lemma():
    with criterion(6, "Q-lemma properties (1)-(5), exact, n = 1..10, 100 random cases over D8 and mu4", 5.0):
        rng = np.random.default_rng(6)
        for G in (Group.dihedral(4), Group.roots_of_unity(4)):
            for n in range(1, 11):
                Q = build_qn(n, G)
                assert Q @ Q == GAMatrix.identity(G, n)  # (1)
            for _ in range(100):
                m, n = (int(x) for x in rng.integers(1, 11, size=2))
                X = _constant_sums_matrix(G, rng, m, n)
                assert build_qn(m, G) @ X @ build_qn(n, G) == X  # (2)
                Qn = build_qn(n, G)
                c = _random_column(G, rng, 1)[0]
                col = GAMatrix.from_entries(G, [[c]] * n)
                assert Qn @ col == col  # (3)
                entries = _random_column(G, rng, n)
                if n > 1:
                    total = entries[0]
                    for x in entries[1:-1]:
                        total = total + x
                    entries[-1] = -total
                    z = GAMatrix.from_entries(G, [[x] for x in entries])
                    assert Qn @ z == z.scale(-1)  # (4)
                if n % 2 == 0:
                    g1, g2 = (G.elements()[t] for t in rng.integers(G.order, size=2))
                    slots = [g1] * (n // 2) + [g2] * (n // 2)
                    slots = [slots[t] for t in rng.permutation(n)]
                    h = GAMatrix.from_entries(G, [[x] for x in slots])
                    s = GAElement.of(g1) + GAElement.of(g2)
                    assert Qn @ h == GAMatrix.from_entries(G, [[s]] * n) - h  # (5)


def test_criterion_07_theorems():
    with criterion(7, "Planted instances: 50 G-GM over D8 exact, 50 pi-GM at the pi level within 1e-9"):
        D8 = Group.dihedral(4)
        for seed in range(50):
            g, alpha = random_g_gm_instance(D8, seed)
            check = check_g_gm(g, alpha)
            assert check.ok, (seed, check.diagnostic)
            assert verify_conjugation(g, alpha, check.plan)
            sw = apply_switch(g, alpha, check.plan)
            assert g_cospectral(g, sw, "regular") and g_cospectral(g, sw, "irreducible")
        reps = [builtin(D8, name) for name in ("dihedral2", "char:1,0", "char:0,1", "char:1,1")]
        for seed in range(50):
            pi = reps[seed % len(reps)]
            g, alpha = random_pi_gm_instance(D8, pi, 1000 + seed)
            check = check_pi_gm(g, alpha, pi, allow_central=True)
            assert check.ok, (seed, pi.name, check.diagnostic)
            assert verify_conjugation(g, alpha, check.plan, pi)
            assert pi_cospectral(g, apply_switch(g, alpha, check.plan), pi)


def _instances(G, rng):
    """The example partition for G plus 20 mixed random ones."""
    if G.kind == "dihedral":
        ex = catalog.d8_example()
    else:
        ex = catalog.t_example()
    out = [(ex.graph, ex.partition)]
    irreps = irreducible_system(G)
    for t in range(20):
        kind = t % 3
        if kind == 0:
            out.append(random_g_gm_instance(G, rng))
        elif kind == 1:
            pi = irreps[int(rng.integers(len(irreps)))]
            out.append(random_pi_gm_instance(G, pi, rng, central=False))
        else:
            g = random_gain_graph(G, int(rng.integers(2, 8)), rng)
            out.append((g, random_partition(g.vertices, rng)))
    return out


def test_criterion_08_regular_equivalence():
    with criterion(8, "G-GM <=> lambda_G-GM <=> GM for every irreducible, over D8 and mu4, zero discrepancies"):
        rng = np.random.default_rng(8)
        discrepancies = []
        positives = 0
        for G in (Group.dihedral(4), Group.roots_of_unity(4)):
            lam = regular(G)
            irreps = irreducible_system(G)
            for g, alpha in _instances(G, rng):
                a = check_g_gm(g, alpha).ok
                b = check_pi_gm(g, alpha, lam).ok
                c = all(check_pi_gm(g, alpha, pi).ok for pi in irreps)
                positives += a
                if not a == b == c:
                    discrepancies.append((G.name, a, b, c))
        assert discrepancies == []
        assert positives >= 2


def _random_quaternion_matrix(rng, n=3):
    return QuatMatrix(rng.normal(size=(n, n, 4)))


def test_criterion_09_complex_adjoint():
    with criterion(9, "Complex adjoint: four identities on 50 random 3x3, eigenvalue doubling on 20 Hermitian"):
        rng = np.random.default_rng(9)
        f = complex_adjoint
        for _ in range(50):
            A, B = _random_quaternion_matrix(rng), _random_quaternion_matrix(rng)
            assert np.max(np.abs(f(A + B) - (f(A) + f(B)))) <= 1e-9
            assert np.max(np.abs(f(A @ B) - f(A) @ f(B))) <= 1e-9
            assert np.max(np.abs(f(A.star()) - f(A).conj().T)) <= 1e-9
            assert np.max(np.abs(f(A.inverse()) - np.linalg.inv(f(A)))) <= 1e-9
        for _ in range(20):
            n = int(rng.integers(2, 6))
            B = _random_quaternion_matrix(rng, n)
            H = B + B.star()
            ev = np.linalg.eigvalsh(f(H))
            assert np.max(np.abs(ev[0::2] - ev[1::2])) <= 1e-7
            assert len(right_spectrum(H)) == n


def test_criterion_10_negative_controls():
    with criterion(10, "Negative controls: P2 vs edgeless not cospectral, switching copies detected and cospectral"):
        for G in (Group.roots_of_unity(4), Group.dihedral(4), Group.symmetric(3)):
            p2 = GainGraph(G, ["u", "v"], [("u", "v", G.identity)])
            empty = GainGraph(G, ["u", "v"], [])
            assert not g_cospectral(p2, empty, "regular")
            assert not g_cospectral(p2, empty, "irreducible")
            assert not g_cospectral(p2, empty, "traces", 10)
            assert switching_isomorphic(p2, empty) is None
        finite = [catalog.t_example(), catalog.s4_example(), catalog.s4_kernel_example(), catalog.d8_example()]
        for seed, ex in itertools.product(range(2), finite):
            copy, phi, f = random_switching_copy(ex.graph, seed)
            w = switching_isomorphic(ex.graph, copy)
            assert w is not None, ex.name
            for u, v, x in ex.graph.edges():
                assert copy.gain(w.mapping[u], w.mapping[v]) == w.switching[u].inverse() * x * w.switching[v]
            assert g_cospectral(ex.graph, copy, "regular")
            assert g_cospectral(ex.graph, copy, "irreducible")
            assert g_cospectral(ex.graph, copy, "traces")

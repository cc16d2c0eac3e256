import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gaingm import Group, builtin
from gaingm.errors import GroupMismatchError, InfiniteGroupError, ParseError
from gaingm.groups import find_minus_identity, sign

SMALL = (
    [Group.cyclic(n) for n in (1, 2, 3, 5, 6, 12, 24)]
    + [Group.roots_of_unity(n) for n in (1, 2, 4, 8)]
    + [Group.dihedral(n) for n in (1, 2, 3, 4, 6, 12)]
    + [Group.symmetric(n) for n in (1, 2, 3, 4)]
)
ORDERS = {"cyclic": lambda n: n, "roots_of_unity": lambda n: n,
          "dihedral": lambda n: 2 * n, "symmetric": math.factorial}


def brute_classes(G):
    els = G.elements()
    seen, out = set(), []
    for g in els:
        if g in seen:
            continue
        cls = {h.inverse() * g * h for h in els}
        seen |= cls
        out.append(cls)
    return out


@pytest.mark.parametrize("G", SMALL, ids=str)
def test_axioms_exhaustive(G):
    els = G.elements()
    assert len(els) == len(set(els)) == ORDERS[G.kind](G.n)
    assert els[0] == G.identity
    e = G.identity
    for g in els:
        assert g * e == g == e * g
        assert g * g.inverse() == e
        assert g.inverse().inverse() == g
        for h in els:
            assert g * h in els


@pytest.mark.parametrize("G", SMALL, ids=str)
def test_classes_match_brute_force(G):
    ours = [set(c) for c in G.conjugacy_classes()]
    assert sorted(map(sorted_str, ours)) == sorted(map(sorted_str, brute_classes(G)))
    els = G.elements()
    for c in ours:
        for h in els:
            assert {h.inverse() * x * h for x in c} == c


def sorted_str(c):
    return tuple(sorted(str(x) for x in c))


@pytest.mark.parametrize("G", [Group.symmetric(3), Group.symmetric(4), Group.dihedral(4)], ids=str)
def test_associativity_exhaustive(G):
    els = G.elements()
    for x in els:
        for y in els:
            xy = x * y
            for z in els:
                assert xy * z == x * (y * z)


def test_dihedral_presentation():
    D = Group.dihedral(4)
    a, b = D.parse("a"), D.parse("b")
    assert a ** 4 == D.identity and b ** 2 == D.identity
    assert b * a * b == a.inverse()
    assert b * a == D.parse("a^3 b")
    assert a.inverse() == D.parse("a^3")


def test_spec_examples():
    S4 = Group.symmetric(4)
    t = S4.parse("(1 2)")
    assert t * t == S4.identity
    Q = Group.unit_quaternions()
    assert Q.parse("i") * Q.parse("j") == Q.parse("k")
    mu4 = Group.roots_of_unity(4)
    assert mu4.parse("i").inverse() == mu4.parse("-i")
    q = Q.parse("[0.5,0.5,0.5,0.5]")
    assert q.inverse() == Q.element(q.value.conj())
    C3 = Group.cyclic(3)
    assert [str(x) for x in C3.elements()] == ["0", "1", "2"]
    assert len(Group.dihedral(4).elements()) == 8


def test_class_shapes():
    assert all(len(c) == 1 for c in Group.cyclic(4).conjugacy_classes())
    assert sorted(len(c) for c in Group.symmetric(3).conjugacy_classes()) == [1, 2, 3]
    D = Group.dihedral(4)
    got = {frozenset(str(x) for x in c) for c in D.conjugacy_classes()}
    assert got == {frozenset(s) for s in (["1"], ["a^2"], ["a", "a^3"], ["b", "a^2b"], ["ab", "a^3b"])}


def test_infinite_group_rejects_enumeration():
    Q = Group.unit_quaternions()
    assert not Q.is_finite and Q.order is None
    with pytest.raises(InfiniteGroupError):
        Q.elements()
    with pytest.raises(InfiniteGroupError):
        Q.conjugacy_classes()


def test_find_minus_identity():
    D = Group.dihedral(4)
    assert find_minus_identity(D, builtin(D, "dihedral2")) == D.parse("a^2")
    S4 = Group.symmetric(4)
    assert find_minus_identity(S4, builtin(S4, "trivial")) is None
    Q = Group.unit_quaternions()
    assert find_minus_identity(Q, builtin(Q, "pi_h")) == Q.parse("-1")


def test_mismatched_groups():
    with pytest.raises(GroupMismatchError):
        Group.cyclic(3).identity * Group.cyclic(4).identity


@pytest.mark.parametrize("G,text", [
    (Group.dihedral(4), "c"), (Group.symmetric(3), "(1 4)"), (Group.symmetric(3), "(1 1)"),
    (Group.roots_of_unity(4), "j"), (Group.unit_quaternions(), "[2,0,0,0]"),
    (Group.unit_quaternions(), "[1,0,0]"),
])
def test_parse_errors(G, text):
    with pytest.raises(ParseError):
        G.parse(text)


def test_quaternion_normalization():
    Q = Group.unit_quaternions()
    q = Q.parse("[0.7071067,0,0.7071067,0]")
    assert abs(q.value.norm() - 1) <= 1e-12


@pytest.mark.parametrize("G", SMALL + [Group.unit_quaternions()], ids=str)
def test_format_parse_roundtrip(G):
    els = G.elements() if G.is_finite else [G.parse(s) for s in ("1", "-1", "i", "j", "k", "[0.6,0,0.8,0]")]
    for g in els:
        assert G.parse(G.format(g)) == g


def test_sign_matches_inversions():
    S4 = Group.symmetric(4)
    for g in S4.elements():
        img = list(g.value)
        inversions = sum(1 for a in range(4) for b in range(a + 1, 4) if img[a] > img[b])
        assert sign(g) == (-1) ** inversions


unit_q = st.lists(st.floats(-1, 1, allow_nan=False), min_size=4, max_size=4).filter(
    lambda xs: np.linalg.norm(xs) > 0.1)


@settings(max_examples=60, deadline=None)
@given(unit_q, unit_q, unit_q)
def test_quaternion_group_axioms(x, y, z):
    Q = Group.unit_quaternions()
    p, q, r = (Q.element(np.asarray(v) / np.linalg.norm(v)) for v in (x, y, z))
    assert (p * q) * r == p * (q * r)
    assert p * p.inverse() == Q.identity
    assert abs((p * q).value.norm() - 1) <= 1e-9

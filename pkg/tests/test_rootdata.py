import random

import pytest

from parahoric.exactmath import mat_vec, matrix_order
from parahoric.rootdata import (
    RootDatumError,
    build_automorphism,
    build_datum,
    classical_root_count,
    classical_weyl_order,
    dual_action,
    identity_automorphism,
    pairing,
    weyl_elements,
)


def test_a1_adjoint():
    d = build_datum("A1")
    assert set(d.roots) == {(1,), (-1,)}
    alpha = d.simple_roots[0]
    assert pairing(alpha, d.coroot_of(alpha)) == 2


def test_a2_cartan_pairings():
    d = build_datum("A2")
    assert len(d.roots) == 6
    a1, a2 = d.simple_roots
    c1, c2 = d.simple_coroots
    assert pairing(a1, c1) == 2 and pairing(a2, c2) == 2
    assert pairing(a1, c2) == -1 and pairing(a2, c1) == -1


def test_g2_long_short():
    d = build_datum("G2")
    assert len(d.roots) == 12
    a1, a2 = d.simple_roots
    c1, c2 = d.simple_coroots
    pair = {pairing(a1, c2), pairing(a2, c1)}
    assert pair == {-1, -3}


@pytest.mark.parametrize(
    "descriptor",
    ["A1", "A4", "B2", "B4", "C3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2", "A2+A2"],
)
def test_root_counts_and_invariants(descriptor):
    d = build_datum(descriptor)
    assert len(d.roots) == classical_root_count(descriptor)
    rootset = set(d.roots)
    for r in d.roots:
        assert tuple(-x for x in r) in rootset
        assert tuple(2 * x for x in r) not in rootset
        coeff = d.coeffs[d.root_index[r]]
        assert all(c >= 0 for c in coeff) or all(c <= 0 for c in coeff)
    for alpha, acheck in zip(d.simple_roots, d.simple_coroots):
        for r in d.roots:
            refl = tuple(a - pairing(r, acheck) * b for a, b in zip(r, alpha))
            assert refl in rootset


def test_simply_connected_convention():
    d = build_datum("A2", "simply_connected")
    assert set(d.simple_coroots) == {(1, 0), (0, 1)}
    for r, cr in zip(d.roots, d.coroots):
        assert pairing(r, cr) == 2


@pytest.mark.parametrize(
    "descriptor,order", [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("D4", 192)]
)
def test_weyl_sizes(descriptor, order):
    d = build_datum(descriptor)
    assert len(weyl_elements(d)) == order == classical_weyl_order(descriptor)


def test_weyl_preserves_roots_and_pairing():
    d = build_datum("B2")
    rootset = set(d.roots)
    elements = weyl_elements(d)
    rng = random.Random(11)
    for w in elements:
        assert {mat_vec(w, r) for r in d.roots} == rootset
    for _ in range(100):
        w = rng.choice(elements)
        wd = dual_action(w)
        chi = tuple(rng.randint(-4, 4) for _ in range(d.rank))
        mu = tuple(rng.randint(-4, 4) for _ in range(d.rank))
        assert pairing(mat_vec(w, chi), mat_vec(wd, mu)) == pairing(chi, mu)


def test_weyl_orbits_partition_roots():
    d = build_datum("G2")
    elements = weyl_elements(d)
    seen = set()
    orbits = 0
    for r in d.roots:
        if r in seen:
            continue
        orbit = {mat_vec(w, r) for w in elements}
        assert not orbit & seen
        seen |= orbit
        orbits += 1
    assert seen == set(d.roots)
    assert orbits == 2


def test_a2_swap_automorphism():
    d = build_datum("A2")
    auto = build_automorphism(d, (1, 0))
    assert auto.order == 2
    a1, a2 = d.simple_roots
    assert mat_vec(auto.matrix, a1) == a2
    theta = tuple(x + y for x, y in zip(a1, a2))
    assert mat_vec(auto.matrix, theta) == theta
    assert matrix_order(auto.matrix) == 2
    ident = identity_automorphism(d)
    assert ident.order == 1 and ident.is_identity


def test_d4_triality_orbits():
    d = build_datum("D4")
    auto = build_automorphism(d, (2, 1, 3, 0))
    assert auto.order == 3
    seen = set()
    sizes = []
    for r in d.roots:
        if r in seen:
            continue
        orbit = {r}
        cur = mat_vec(auto.matrix, r)
        while cur not in orbit:
            orbit.add(cur)
            cur = mat_vec(auto.matrix, cur)
        seen |= orbit
        sizes.append(len(orbit))
    assert sorted(sizes) == [1] * 6 + [3] * 6


def test_bad_automorphism_rejected():
    d = build_datum("A3")
    with pytest.raises(RootDatumError):
        build_automorphism(d, (1, 0, 2))
    build_automorphism(d, (2, 1, 0))


def test_unknown_type_rejected():
    with pytest.raises(RootDatumError):
        build_datum("H3")
    with pytest.raises(RootDatumError):
        build_datum("A9")
    with pytest.raises(RootDatumError):
        build_datum("A2", "weird")

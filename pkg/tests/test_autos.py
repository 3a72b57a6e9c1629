"""Automorphism search, isomorphism witnesses and power-conjugacy classes."""

from __future__ import annotations

import itertools
import math
import random

import numpy as np
import pytest

from cocentral.autos import (
    PermGroupView,
    aut_group_view,
    automorphism_group,
    dihedral_automorphism,
    find_isomorphism,
    identity_map,
    inner_automorphism,
    power_conjugacy_classes,
)
from cocentral.groups import make_group


def gl2_count(p):
    """Oracle: invertible 2x2 matrices over F_p."""
    return sum(
        1
        for a in range(p)
        for b in range(p)
        for c in range(p)
        for d in range(p)
        if (a * d - b * c) % p != 0
    )


def euler_phi(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def test_aut_counts():
    D6 = make_group("dihedral:6")
    auts = automorphism_group(D6)
    assert len(auts) == 6 * euler_phi(6)  # n*phi(n)
    # all are of the dihedral shape
    shaped = {dihedral_automorphism(D6, k, l).arr.tobytes()
              for k in range(6) for l in range(6) if math.gcd(l, 6) == 1}
    assert {f.arr.tobytes() for f in auts} == shaped

    S4 = make_group("symmetric:4")
    assert len(automorphism_group(S4)) == 24

    Z25 = make_group("product(cyclic:5,cyclic:5)")
    assert len(automorphism_group(Z25)) == gl2_count(5)


def test_aut_group_properties():
    G = make_group("dihedral:5")
    auts = automorphism_group(G)
    arrs = {f.arr.tobytes() for f in auts}
    assert identity_map(G).arr.tobytes() in arrs
    # closed under composition and inverse (full check on this small case)
    for f in auts:
        assert f.inverse_map().arr.tobytes() in arrs
        for g in auts:
            assert f.compose(g).arr.tobytes() in arrs


def test_constrained_aut_subgroups():
    G = make_group("dihedral:4")
    center = G.center()
    auts = automorphism_group(G)
    fix = automorphism_group(G, "fix", center)
    pres = automorphism_group(G, "preserve", center)
    assert set(f.arr.tobytes() for f in fix) <= set(f.arr.tobytes() for f in pres)
    assert set(f.arr.tobytes() for f in pres) <= set(f.arr.tobytes() for f in auts)
    rot = G.closure([1])
    pres_rot = automorphism_group(G, "preserve", rot)
    assert len(pres_rot) == len(auts)  # rotation subgroup is characteristic


def test_inner_automorphisms():
    G = make_group("symmetric:4")
    auts = {f.arr.tobytes() for f in automorphism_group(G)}
    inner = {inner_automorphism(G, g).arr.tobytes() for g in range(G.order)}
    assert inner == auts  # every automorphism of S4 is inner


def test_isomorphic_examples():
    Z4 = make_group("cyclic:4")
    K4 = make_group("product(cyclic:2,cyclic:2)")
    assert find_isomorphism(Z4, K4) is None  # exponent differs
    D3 = make_group("dihedral:3")
    S3 = make_group("symmetric:3")
    witness = find_isomorphism(D3, S3)
    assert witness is not None
    # oracle: exhaustive bijection check on 6 elements
    found = False
    for perm in itertools.permutations(range(6)):
        if perm[D3.identity] != S3.identity:
            continue
        if all(
            perm[D3.mul(x, y)] == S3.mul(perm[x], perm[y])
            for x in range(6)
            for y in range(6)
        ):
            found = True
            break
    assert found
    # witness really is an isomorphism
    arr = witness.arr
    assert all(
        arr[D3.mul(x, y)] == S3.mul(int(arr[x]), int(arr[y]))
        for x in range(6)
        for y in range(6)
    )
    G = make_group("alternating:4")
    assert find_isomorphism(G, G).arr is not None


def test_dihedral_automorphism_laws():
    G = make_group("dihedral:8")
    n = 8
    psi = dihedral_automorphism(G, 0, n - 1)
    assert psi.compose(psi).is_identity()
    psi2 = dihedral_automorphism(G, 1, n - 1)
    assert psi2.order() == 2  # k(l+1) = 0
    rng = random.Random(5)
    r, s = 1, n
    for _ in range(10):
        k1, k2 = rng.randrange(n), rng.randrange(n)
        l1 = rng.choice([l for l in range(n) if math.gcd(l, n) == 1])
        l2 = rng.choice([l for l in range(n) if math.gcd(l, n) == 1])
        lhs = dihedral_automorphism(G, k1, l1).compose(dihedral_automorphism(G, k2, l2))
        rhs = dihedral_automorphism(G, (k1 + l1 * k2) % n, (l1 * l2) % n)
        # oracle: compare on the generators r and s
        assert lhs(r) == rhs(r) and lhs(s) == rhs(s)
        assert np.array_equal(lhs.arr, rhs.arr)


def test_power_conjugacy_classes():
    S5 = make_group("symmetric:5")
    reps, classes, _ = power_conjugacy_classes(S5, 2)
    assert len(reps) == 2  # transpositions and double transpositions
    Z2 = make_group("cyclic:2")
    reps, _, _ = power_conjugacy_classes(Z2, 2)
    assert len(reps) == 1
    Z4 = make_group("cyclic:4")
    reps, classes, by_order = power_conjugacy_classes(Z4, 4)
    # oracle (brute force over 3 nontrivial elements): {1,3} merge, {2} alone
    assert len(reps) == 2
    assert sorted(map(tuple, classes)) == [(1, 3), (2,)]
    assert by_order == {4: [1], 2: [2]}


def test_power_conjugacy_on_aut_view():
    A5 = make_group("alternating:5")
    view = aut_group_view(A5)
    assert view.order == 120  # Aut(A5) = S5
    reps, _, _ = power_conjugacy_classes(view, 2)
    assert len(reps) == 2
    reps3, _, _ = power_conjugacy_classes(view, 3)
    assert len(reps3) == 1
    reps4, _, _ = power_conjugacy_classes(view, 4)
    assert len(reps4) == 3


def test_class_counts_stable_under_relabeling():
    rng = random.Random(11)
    G = make_group("dihedral:6")
    base = len(power_conjugacy_classes(G, 2)[0])
    for _ in range(5):
        sigma = list(range(G.order))
        rng.shuffle(sigma)
        sigma = np.array(sigma)
        table = np.zeros_like(G.table)
        for x in range(G.order):
            for y in range(G.order):
                table[sigma[x], sigma[y]] = sigma[G.table[x, y]]
        H = make_group({"name": "relabel", "order": G.order, "table": table.tolist()})
        assert len(power_conjugacy_classes(H, 2)[0]) == base

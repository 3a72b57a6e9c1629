"""Cohomology: coboundaries, solvers, Schur-multiplier detection, dihedral toolkit."""

from __future__ import annotations

import itertools
import math
import random

import numpy as np
import pytest

from cocentral.autos import dihedral_automorphism, identity_map, inner_automorphism
from cocentral.cohomology import (
    Cocycle2,
    UnitMap,
    characters,
    coboundary,
    corestriction,
    dihedral_rotation_cocycle,
    dihedral_trivial_test,
    h2_compute,
    inner_trivializer,
    is_kx_trivial,
    power_product,
    pullback,
    solve_coboundary,
    zero_cocycle,
    zero_unit_map,
    _h2_on_group,
)
from cocentral.groups import make_group


def brute_force_z2_b2(G, N):
    """Oracle: |Z^2| and |B^2| by filtering all normalized maps G x G -> Z/N."""
    n = G.order
    e = G.identity
    pairs = [(x, y) for x in range(n) for y in range(n) if x != e and y != e]
    z_count = 0
    tables = []
    for assignment in itertools.product(range(N), repeat=len(pairs)):
        table = np.zeros((n, n), dtype=np.int64)
        for (x, y), v in zip(pairs, assignment):
            table[x, y] = v
        ok = True
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    lhs = table[x, y] + table[G.mul(x, y), z]
                    rhs = table[y, z] + table[x, G.mul(y, z)]
                    if (lhs - rhs) % N:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            z_count += 1
            tables.append(table)
    b_tables = set()
    for vals in itertools.product(range(N), repeat=n - 1):
        mu = np.zeros(n, dtype=np.int64)
        others = [x for x in range(n) if x != e]
        for x, v in zip(others, vals):
            mu[x] = v
        b = (mu[:, None] + mu[None, :] - mu[G.table]) % N
        b_tables.add(b.tobytes())
    return z_count, len(b_tables)


def test_coboundary_basics():
    G = make_group("dihedral:3")
    assert np.all(coboundary(zero_unit_map(G, 6)).values == 0)
    # characters give the zero cocycle
    for chi in characters(G, 6):
        assert np.all(coboundary(chi).values == 0) == chi.is_character()
        if chi.is_character():
            assert np.all(coboundary(chi).values == 0)
    # random map on D3 mod 6: output passes the all-triples identity scan
    rng = random.Random(3)
    vals = [0] + [rng.randrange(6) for _ in range(5)]
    mu = UnitMap(G, 6, np.array(vals))
    assert coboundary(mu).full_identity_scan()


def test_brute_force_z2_b2_h2():
    # |Z^2| = |B^2| * |H^2| against the full filter oracle, |H| <= 4, N = 2
    for spec, h2_expected in [
        ("cyclic:2", 2),
        ("cyclic:3", 1),
        ("cyclic:4", 2),
        ("product(cyclic:2,cyclic:2)", 8),
    ]:
        G = make_group(spec)
        z, b = brute_force_z2_b2(G, 2)
        coh = h2_compute(G, 2)
        assert z == b * coh.order, spec
        assert coh.order == h2_expected, spec


def test_h2_direct_vs_transfer_routes():
    # the Sylow/transfer route must agree with the direct kernel route on
    # the whole group, for groups small enough to run both
    cases = [
        ("symmetric:3", 6),
        ("dihedral:4", 2),
        ("dihedral:4", 4),
        ("alternating:4", 2),
        ("alternating:4", 6),
        ("dihedral:6", 12),
    ]
    for spec, N in cases:
        G = make_group(spec)
        coh = h2_compute(G, N)
        direct_order = 1
        for p, e in [(p, e) for (p, e) in __import__("cocentral.linalg", fromlist=["prime_power_factors"]).prime_power_factors(N) if G.order % p == 0]:
            gens = _h2_on_group(G, p, e)
            for _, order in gens:
                direct_order *= order
        assert coh.order == direct_order, (spec, N)


def test_h2_known_values():
    # universal-coefficient oracle values
    assert h2_compute(make_group("cyclic:6"), 6).order == 6
    assert h2_compute(make_group("cyclic:5"), 3).order == 1
    assert h2_compute(make_group("symmetric:3"), 6).order == 2
    assert h2_compute(make_group("dihedral:4"), 2).order == 8
    assert h2_compute(make_group("alternating:4"), 2).order == 2


def test_schur_detection_over_kx():
    # dihedral: 1 class for odd n, 2 for even n
    for n in (3, 5, 7):
        G = make_group(f"dihedral:{n}")
        assert len(h2_compute(G, 2 * n).kx_reps) == 1, n
    for n in (4, 6):
        G = make_group(f"dihedral:{n}")
        assert len(h2_compute(G, 2 * n).kx_reps) == 2, n
    # Z_p^2: p classes
    G = make_group("product(cyclic:3,cyclic:3)")
    assert len(h2_compute(G, 9).kx_reps) == 3
    # S4: 2 classes
    assert len(h2_compute(make_group("symmetric:4"), 24).kx_reps) == 2


def test_schur_a5():
    A5 = make_group("alternating:5")
    coh = h2_compute(A5, 60)
    assert len(coh.kx_reps) == 2
    nontrivial = [r for r in coh.kx_reps if r.values.any()]
    assert len(nontrivial) == 1
    assert not is_kx_trivial(nontrivial[0])


def test_solve_coboundary_and_tau_omega():
    G = make_group("dihedral:6")
    # zero cocycle: canonical zero solution
    mu = solve_coboundary(zero_cocycle(G, 6))
    assert mu is not None and not mu.values.any()
    # tau_omega trivial iff omega^(n/2) = 1; here n = 6, zeta_6^w
    for w in range(6):
        tau = dihedral_rotation_cocycle(G, w)
        solvable = solve_coboundary(tau, tau.modulus * G.exponent()) is not None
        assert solvable == ((w * 3) % 6 == 0), w
    # random coboundary is recovered
    rng = random.Random(8)
    vals = np.array([0] + [rng.randrange(12) for _ in range(11)])
    mu0 = UnitMap(G, 12, vals)
    beta = coboundary(mu0)
    mu1 = solve_coboundary(beta)
    assert mu1 is not None
    assert np.array_equal(coboundary(mu1).values, beta.values)


def test_dihedral_trivial_test_matches_generic():
    rng = random.Random(21)
    for n in (4, 6, 8):
        G = make_group(f"dihedral:{n}")
        for w in range(n):
            tau = dihedral_rotation_cocycle(G, w)
            direct = dihedral_trivial_test(tau)
            generic = solve_coboundary(tau, tau.modulus * G.exponent())
            assert (direct is None) == (generic is None), (n, w)
            if direct is not None:
                assert np.array_equal(
                    coboundary(direct).values,
                    tau.lift(direct.modulus).values,
                )
        # random coboundaries pass
        for _ in range(3):
            vals = np.zeros(2 * n, dtype=np.int64)
            for i in range(2 * n):
                if i != G.identity:
                    vals[i] = rng.randrange(2 * n)
            beta = coboundary(UnitMap(G, 2 * n, vals))
            assert dihedral_trivial_test(beta) is not None


def test_dihedral_nontrivial_class_unique():
    # omega with omega^(n/2) = -1 represents the unique nontrivial class
    G = make_group("dihedral:6")
    tau = dihedral_rotation_cocycle(G, 1)  # zeta_6 primitive
    assert not is_kx_trivial(tau)
    coh = h2_compute(G, 12)
    nontrivial = [r for r in coh.kx_reps if not is_kx_trivial(r)]
    assert len(nontrivial) == 1
    # tau agrees with the computed representative up to coboundary over k^x
    diff = nontrivial[0].lift(12) - tau.lift(12)
    assert solve_coboundary(diff, diff.modulus * G.exponent()) is not None


def test_pullback_laws():
    G = make_group("dihedral:6")
    tau = dihedral_rotation_cocycle(G, 1)
    assert np.array_equal(pullback(tau, identity_map(G)).values, tau.values)
    # pullback respects composition
    f = dihedral_automorphism(G, 1, 5)
    g = dihedral_automorphism(G, 2, 1)
    lhs = pullback(pullback(tau, f), g)
    rhs = pullback(tau, f.compose(g))
    assert np.array_equal(lhs.values, rhs.values)
    # tau_omega pulled back by Psi_{0,v} equals tau_{omega^v}
    for v in (1, 5):
        psi = dihedral_automorphism(G, 0, v)
        assert np.array_equal(pullback(tau, psi).values, dihedral_rotation_cocycle(G, v).values)
    # pullback by an inner automorphism is cohomologous (witness mu_x)
    S4 = make_group("symmetric:4")
    rep = [r for r in h2_compute(S4, 2).class_reps if r.values.any()][0]
    x = S4.generators[0]
    mu = inner_trivializer(rep, x)
    # identity checked inside inner_trivializer; just confirm type
    assert mu.modulus == rep.modulus


def test_inner_trivializer_cases():
    G = make_group("symmetric:3")
    coh = h2_compute(G, 6)
    tau = coh.class_reps[-1]
    mu1 = inner_trivializer(tau, G.identity)
    assert not mu1.values.any()
    # abelian group: mu_x is a character
    Z = make_group("cyclic:4")
    tz = h2_compute(Z, 4).class_reps[-1]
    mu = inner_trivializer(tz, 1)
    assert mu.is_character()
    # random small-group identity
    rng = random.Random(4)
    D4 = make_group("dihedral:4")
    reps = h2_compute(D4, 4).class_reps
    for _ in range(5):
        tau = reps[rng.randrange(len(reps))]
        inner_trivializer(tau, rng.randrange(D4.order))


def test_power_product():
    G = make_group("dihedral:6")
    tau = dihedral_rotation_cocycle(G, 1)
    assert np.array_equal(power_product(tau, identity_map(G), 1).values, tau.values)
    assert np.array_equal(
        power_product(tau, identity_map(G), 3).values, (3 * tau.values) % 6
    )
    psi = dihedral_automorphism(G, 0, 5)
    pp = power_product(tau, psi, 2)
    assert pp.full_identity_scan()
    with pytest.raises(Exception):
        power_product(tau, dihedral_automorphism(G, 0, 5), 3)  # psi^3 != id


def test_characters():
    A5 = make_group("alternating:5")
    for N in (2, 4, 60):
        chars = characters(A5, N)
        assert len(chars) == 1 and not chars[0].values.any()
    S4 = make_group("symmetric:4")
    assert len(characters(S4, 4)) == 2
    Z6 = make_group("cyclic:6")
    assert len(characters(Z6, 3)) == 3
    for chi in characters(Z6, 3):
        assert chi.is_character()


def test_coboundary_is_homomorphism():
    G = make_group("dihedral:4")
    rng = random.Random(17)
    for _ in range(5):
        v1 = np.array([0] + [rng.randrange(8) for _ in range(7)])
        v2 = np.array([0] + [rng.randrange(8) for _ in range(7)])
        m1, m2 = UnitMap(G, 8, v1), UnitMap(G, 8, v2)
        lhs = coboundary(m1 + m2)
        rhs = coboundary(m1) + coboundary(m2)
        assert np.array_equal(lhs.values, rhs.values)


def test_corestriction_produces_cocycles():
    from cocentral.groups import subgroup_group, sylow_subgroup

    A5 = make_group("alternating:5")
    sub = sylow_subgroup(A5, 2)
    S, sigma = subgroup_group(A5, sub)
    gens = _h2_on_group(S, 2, 2)
    for table, order in gens:
        cor = corestriction(A5, sub, S, sigma, table, 4)
        Cocycle2(A5, 4, cor)  # validates the cocycle identity


def test_class_invariance_under_pullback():
    # cohomologous-ness preserved under pullback by any automorphism
    G = make_group("dihedral:6")
    tau = dihedral_rotation_cocycle(G, 1)
    f = dihedral_automorphism(G, 3, 5)
    moved = pullback(tau, f)
    diff = moved - tau
    # same class over k^x (inner/outer action on H^2 fixes the unique class)
    assert is_kx_trivial(diff)

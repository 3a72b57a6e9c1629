"""Group construction, quotients, extensions and structure scans."""

from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from cocentral.groups import (
    BudgetExceeded,
    ExtensionSpec,
    GroupError,
    Subgroup,
    abelian_basis,
    central_extension,
    cyclic_group,
    dihedral_group,
    make_group,
    product_group,
    quotient_group,
    structure_info,
    sylow_subgroup,
)


def sl2_matrix_count(p):
    """Oracle: count 2x2 matrices over F_p with determinant 1."""
    return sum(
        1
        for a in range(p)
        for b in range(p)
        for c in range(p)
        for d in range(p)
        if (a * d - b * c) % p == 1
    )


def test_family_orders():
    assert make_group("dihedral:3").order == 6
    assert make_group("alternating:5").order == 60
    assert make_group("symmetric:4").order == 24
    assert make_group("cyclic:7").order == 7
    assert make_group("sl2:3").order == sl2_matrix_count(3)
    assert make_group("product(cyclic:2,cyclic:3)").order == 6


def test_size_budget():
    with pytest.raises(BudgetExceeded):
        make_group("sl2:11")
    with pytest.raises(BudgetExceeded):
        make_group("symmetric:6")


def test_bad_table_rejected():
    with pytest.raises(GroupError):
        make_group({"name": "bad", "order": 2, "table": [[0, 1], [1, 1]]})


def test_generators_generate():
    for spec in ["dihedral:6", "symmetric:4", "alternating:4", "sl2:3"]:
        G = make_group(spec)
        assert len(G.closure(G.generators)) == G.order


def test_element_orders_dihedral():
    G = make_group("dihedral:5")
    orders = G.element_orders()
    assert orders[G.identity] == 1
    assert orders[1] == 5  # r
    assert all(orders[5 + i] == 2 for i in range(5))  # reflections


def test_central_extension_trivial_cocycle():
    from cocentral.autos import find_isomorphism

    Z2 = cyclic_group(2)
    tau = np.zeros((2, 2), dtype=np.int64)
    G = central_extension(ExtensionSpec(Z2, 2, tau))
    K4 = product_group(cyclic_group(2), cyclic_group(2))
    assert G.order == 4
    assert find_isomorphism(G, K4) is not None


def test_central_extension_z4():
    Z2 = cyclic_group(2)
    tau = np.array([[0, 0], [0, 1]], dtype=np.int64)
    G = central_extension(ExtensionSpec(Z2, 2, tau))
    # oracle: element orders must be those of Z4
    assert sorted(int(o) for o in G.element_orders()) == [1, 2, 4, 4]


def test_central_extension_rejects_bad_cocycle():
    Z2 = cyclic_group(2)
    bad = np.array([[0, 1], [0, 0]], dtype=np.int64)  # not normalized
    with pytest.raises(GroupError):
        central_extension(ExtensionSpec(Z2, 2, bad))


def test_quotient_trivial_and_center():
    G = make_group("dihedral:4")
    Q, proj = quotient_group(G, list(range(G.order)))
    assert Q.order == 1
    center = G.center()
    assert sorted(center) == [0, 2]  # 1 and r^2
    Q2, proj2 = quotient_group(G, center)
    assert Q2.order == 4
    assert Q2.exponent() == 2  # oracle on the 8-element table: D4/Z = Z2xZ2


def test_quotient_sl2f5_is_a5():
    from cocentral.autos import find_isomorphism

    G = make_group("sl2:5")
    center = G.center()
    assert len(center) == 2
    Q, _ = quotient_group(G, center)
    A5 = make_group("alternating:5")
    assert Q.order == 60
    assert find_isomorphism(Q, A5) is not None


def test_quotient_requires_normal():
    G = make_group("symmetric:3")
    # <transposition> is not normal in S3
    t = next(x for x in range(6) if G.element_order(x) == 2)
    with pytest.raises(GroupError):
        quotient_group(G, G.closure([t]))


def test_structure_info():
    D4 = make_group("dihedral:4")
    info = structure_info(D4)
    assert sorted(info.center.elements) == [0, 2]
    S4 = make_group("symmetric:4")
    assert len(structure_info(S4).center.elements) == 1
    Z6 = make_group("cyclic:6")
    info6 = structure_info(Z6)
    assert info6.is_cyclic and len(info6.center.elements) == 6
    assert structure_info(S4).abelianization.order == 2


def test_quotient_of_extension_recovers_base():
    from cocentral.autos import find_isomorphism

    H = make_group("dihedral:3")
    tau = np.zeros((6, 6), dtype=np.int64)
    G = central_extension(ExtensionSpec(H, 2, tau))
    fiber = [H.identity * 2 + t for t in range(2)]
    Q, _ = quotient_group(G, fiber)
    assert find_isomorphism(Q, H) is not None


def test_sylow_subgroups():
    S4 = make_group("symmetric:4")
    assert len(sylow_subgroup(S4, 2)) == 8
    assert len(sylow_subgroup(S4, 3)) == 3
    A5 = make_group("alternating:5")
    assert len(sylow_subgroup(A5, 2)) == 4
    assert len(sylow_subgroup(A5, 5)) == 5
    assert sylow_subgroup(S4, 7) == [S4.identity]
    # result is closed (Subgroup construction validates)
    Subgroup(S4, tuple(sylow_subgroup(S4, 2)))


def test_abelian_basis():
    for spec, expected in [
        ("cyclic:12", [12]),
        ("product(cyclic:2,cyclic:2)", [2, 2]),
        ("product(cyclic:2,cyclic:4)", [4, 2]),
        ("product(cyclic:3,cyclic:3)", [3, 3]),
    ]:
        A = make_group(spec)
        basis, orders, coords = abelian_basis(A)
        assert sorted(orders, reverse=True) == sorted(expected, reverse=True)
        # coordinates reconstruct each element
        for x in range(A.order):
            acc = A.identity
            for b, k in zip(basis, coords[x]):
                acc = A.mul(acc, A.power(b, int(k)))
            assert acc == x


def test_conjugacy_classes_counts():
    assert len(make_group("symmetric:3").conjugacy_classes()) == 3
    assert len(make_group("alternating:5").conjugacy_classes()) == 5
    Z8 = make_group("cyclic:8")
    assert len(Z8.conjugacy_classes()) == 8  # abelian: singletons


def test_conjugacy_classes_oracle():
    # independent full-scan partition oracle
    G = make_group("dihedral:6")
    oracle = []
    remaining = set(range(G.order))
    while remaining:
        x = min(remaining)
        cls = {G.conj(g, x) for g in range(G.order)}
        oracle.append(sorted(cls))
        remaining -= cls
    assert sorted(map(tuple, G.conjugacy_classes())) == sorted(map(tuple, oracle))


def test_group_json_roundtrip():
    G = make_group("dihedral:4")
    data = G.to_json()
    G2 = make_group(data)
    assert np.array_equal(G.table, G2.table)
    assert G2.name == "D4"

"""Cocentral actions of Z_m on finite groups and their equivalence classes.

A cocentral action is stored as (G, m, z, alpha): z a central element of
order m (the image of the fixed generator character) and alpha an
automorphism fixing every power of z with alpha^m = id.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .autos import GroupMap, automorphism_group, find_isomorphism, identity_map
from .groups import FiniteGroup, GroupError, Subgroup, quotient_group, subgroup_group
from .linalg import units_mod


@dataclass(frozen=True)
class CocentralAction:
    group: FiniteGroup
    m: int
    z: int
    alpha: GroupMap

    def __post_init__(self):
        G, m, z = self.group, self.m, self.z
        if G.element_order(z) != m:
            raise GroupError(f"z must have order {m}")
        center = set(G.center())
        if z not in center:
            raise GroupError("z must be central")
        powers = _powers(G, z, m)
        arr = self.alpha.arr
        for t in powers:
            if arr[t] != t:
                raise GroupError("alpha must fix the fiber pointwise")
        if not (self.alpha**m).is_identity():
            raise GroupError(f"alpha^{m} must be the identity")

    def fiber(self) -> List[int]:
        return _powers(self.group, self.z, self.m)

    def induces_identity_on_quotient(self) -> bool:
        G = self.group
        _, proj = quotient_group(G, self.fiber())
        return bool(np.array_equal(proj[self.alpha.arr], proj))


def _powers(G: FiniteGroup, z: int, m: int) -> List[int]:
    out = [G.identity]
    cur = z
    for _ in range(m - 1):
        out.append(cur)
        cur = G.mul(cur, z)
    return out


def central_cyclic_fiber(G: FiniteGroup, m: int) -> Tuple[int, List[int]]:
    """Generator and elements of the unique order-m subgroup of a cyclic center."""
    center = G.center()
    S, sigma = subgroup_group(G, center)
    if not S.is_cyclic():
        raise GroupError("center is not cyclic")
    if len(center) % m:
        raise GroupError(f"m={m} does not divide the center order {len(center)}")
    gen_local = next(x for x in range(S.order) if S.element_order(x) == S.order)
    z = int(sigma[S.power(gen_local, S.order // m)])
    return z, _powers(G, z, m)


def _aut_stack(G: FiniteGroup) -> Tuple[np.ndarray, np.ndarray]:
    key = ("stack", None)
    cached = G._aut_cache.get(key)
    if cached is None:
        auts = automorphism_group(G)
        F = np.stack([f.arr for f in auts])
        Finv = np.zeros_like(F)
        rng = np.arange(G.order)
        for i in range(F.shape[0]):
            Finv[i, F[i]] = rng
        cached = (F, Finv)
        G._aut_cache[key] = cached
    return cached


def _perm_power(arr: np.ndarray, k: int) -> np.ndarray:
    n = len(arr)
    acc = np.arange(n)
    base = arr
    while k:
        if k & 1:
            acc = base[acc]
        base = base[base]
        k >>= 1
    return acc


def cocentral_action_classes(
    G: FiniteGroup, m: int, nontrivial_only: bool = False
) -> List[CocentralAction]:
    """Equivalence classes of cocentral actions of Z_m on G.

    Realized as automorphisms alpha with alpha^m = id fixing the canonical
    order-m central subgroup pointwise, modulo conjugation by subgroup-
    preserving automorphisms combined with prime-to-m powers.  With
    nontrivial_only, classes inducing the identity on the quotient are
    dropped.  Representatives are minimal under lexicographic order of the
    map arrays.
    """
    z, fiber = central_cyclic_fiber(G, m)
    fiber_arr = np.array(fiber, dtype=np.int64)
    auts = automorphism_group(G)
    F, Finv = _aut_stack(G)
    # pool: alpha^m = id, alpha fixes the fiber pointwise
    pool = []
    for f in auts:
        if np.array_equal(f.arr[fiber_arr], fiber_arr) and (f**m).is_identity():
            pool.append(f)
    if not pool:
        return []
    units = units_mod(m)
    # look up beta in the pool from beta^l
    pow_lookup: Dict[int, Dict[bytes, List[int]]] = {l: {} for l in units}
    for j, beta in enumerate(pool):
        for l in units:
            pow_lookup[l].setdefault(_perm_power(beta.arr, l).tobytes(), []).append(j)
    # rows of F whose fiber restriction is t -> t^l
    masks = {}
    for l in units:
        pvals = np.array([G.power(t, l) for t in fiber], dtype=np.int64)
        masks[l] = np.nonzero(np.all(F[:, fiber_arr] == pvals[None, :], axis=1))[0]
    parent = list(range(len(pool)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for i, alpha in enumerate(pool):
        conj_all = np.take_along_axis(Finv, alpha.arr[F], axis=1)  # rows: f^-1 alpha f
        for l in units:
            table = pow_lookup[l]
            for r in masks[l]:
                for j in table.get(conj_all[r].tobytes(), ()):
                    union(i, j)
    classes: Dict[int, List[int]] = {}
    for i in range(len(pool)):
        classes.setdefault(find(i), []).append(i)
    reps = []
    for members in classes.values():
        rep = min((pool[i] for i in members), key=lambda f: f.arr.tobytes())
        reps.append(rep)
    reps.sort(key=lambda f: f.arr.tobytes())
    out = []
    for rep in reps:
        act = CocentralAction(G, m, z, rep)
        if nontrivial_only and act.induces_identity_on_quotient():
            continue
        out.append(act)
    return out


def xm_related(a1: CocentralAction, a2: CocentralAction) -> Optional[Tuple[int, GroupMap]]:
    """Witness (l, f) for the class relation between two stored actions."""
    G, m = a1.group, a1.m
    fiber = a1.fiber()
    F, _ = _aut_stack(G)
    fib_idx = np.array(fiber, dtype=np.int64)
    auts = automorphism_group(G)
    for l in units_mod(m):
        pmap = np.arange(G.order)
        for t in fiber:
            pmap[t] = G.power(t, l)
        beta_l = _perm_power(a2.alpha.arr, l)
        # f^-1 alpha f = beta^l  <=>  alpha f = f beta^l
        cond = np.all(F[:, fib_idx] == pmap[fib_idx][None, :], axis=1)
        cond &= np.all(a1.alpha.arr[F] == F[:, beta_l], axis=1)
        hits = np.nonzero(cond)[0]
        if hits.size:
            return l, auts[int(hits[0])]
    return None


@dataclass(frozen=True)
class ActionEquivalence:
    mode: str
    l: int
    f: GroupMap


def action_equivalence(
    a1: CocentralAction, a2: CocentralAction, mode: str = "strong"
) -> Optional[ActionEquivalence]:
    """Equivalence witness for two cocentral actions on the same group.

    strong: u in Aut(Z_m) = l and f in Aut(G) with f(z2) = z1^l and
    f^-1 alpha1 f = alpha2^l.  weak: an isomorphism between the two
    quotients conjugating the induced automorphisms.
    """
    if a1.group is not a2.group or a1.m != a2.m:
        raise GroupError("actions must live on the same group with the same m")
    G, m = a1.group, a1.m
    if mode == "strong":
        F, _ = _aut_stack(G)
        auts = automorphism_group(G)
        for l in units_mod(m):
            z_target = G.power(a1.z, l)
            alpha2_l = _perm_power(a2.alpha.arr, l)
            cond = F[:, a2.z] == z_target
            # f^-1 alpha1 f = alpha2^l  <=>  alpha1 f = f alpha2^l
            cond &= np.all(a1.alpha.arr[F] == F[:, alpha2_l], axis=1)
            hits = np.nonzero(cond)[0]
            if hits.size:
                return ActionEquivalence("strong", l, auts[int(hits[0])])
        return None
    if mode == "weak":
        Q1, proj1 = quotient_group(G, a1.fiber())
        Q2, proj2 = quotient_group(G, a2.fiber())
        bar1 = _induced_map(Q1, proj1, a1.alpha)
        bar2 = _induced_map(Q2, proj2, a2.alpha)
        iso0 = find_isomorphism(Q2, Q1)
        if iso0 is None:
            return None
        auts2 = automorphism_group(Q2)
        for l in units_mod(m):
            bar2_l = _perm_power(bar2, l)
            for g in auts2:
                phi = iso0.arr[g.arr]  # iso Q2 -> Q1
                inv = np.zeros_like(phi)
                inv[phi] = np.arange(len(phi))
                # phi^-1 bar1 phi = bar2^l
                if np.array_equal(inv[bar1[phi]], bar2_l):
                    return ActionEquivalence("weak", l, GroupMap(Q2, Q1, phi))
        return None
    raise GroupError(f"unknown mode {mode}")


def _induced_map(Q: FiniteGroup, proj: np.ndarray, alpha: GroupMap) -> np.ndarray:
    n = len(proj)
    out = np.full(Q.order, -1, dtype=np.int64)
    for x in range(n):
        out[proj[x]] = proj[alpha.arr[x]]
    return out


@dataclass
class AutSequenceReport:
    kernel_order: int
    hom_order: int
    exact: bool
    h2_order: Optional[int]
    surjective: Optional[bool]


def verify_aut_sequence(G: FiniteGroup, central: Sequence[int]) -> AutSequenceReport:
    """Exactness data for 1 -> Hom(G/T,T) -> Aut_T(G) -> Aut(G/T) x Aut(T).

    The kernel of the right map is matched against chi -> (x -> x chi(pi x));
    surjectivity is checked when |H^2(G/T, T)| <= 2.
    """
    from .cohomology import h2_compute
    from .groups import abelian_basis

    T = Subgroup(G, tuple(central))
    if not T.is_central():
        raise GroupError("subgroup is not central")
    Q, proj = quotient_group(G, T.elements)
    Tg, sigma = subgroup_group(G, T.elements)
    aut_T = automorphism_group(G, "preserve", T.elements)
    # kernel of the right-hand map
    kernel = []
    for f in aut_T:
        ind = _induced_map(Q, proj, f)
        if np.array_equal(ind, np.arange(Q.order)) and np.array_equal(
            f.arr[np.array(T.elements)], np.array(T.elements)
        ):
            kernel.append(f)
    # homs Q -> T through the abelian basis of T
    basis, orders, _ = abelian_basis(Tg)
    from .cohomology import characters

    hom_count = 1
    hom_maps: List[np.ndarray] = [np.full(Q.order, G.identity, dtype=np.int64)]
    for b, d in zip(basis, orders):
        new_maps = []
        chars = characters(Q, d)
        hom_count *= len(chars)
        for base_map in hom_maps:
            for chi in chars:
                cur = base_map.copy()
                for q in range(Q.order):
                    cur[q] = G.mul(int(cur[q]), G.power(int(sigma[b]), int(chi(q))))
                new_maps.append(cur)
        hom_maps = new_maps
    # dedupe (components may overlap when T is not a direct sum of the chars)
    hom_tables = {m.tobytes(): m for m in hom_maps}
    built = set()
    for hm in hom_tables.values():
        arr = np.array([G.mul(x, int(hm[proj[x]])) for x in range(G.order)])
        built.add(arr.tobytes())
    kernel_keys = {f.arr.tobytes() for f in kernel}
    exact = built == kernel_keys
    # surjectivity when |H^2(Q, T)| <= 2 (T decomposed into cyclic factors)
    h2_order = 1
    for d in orders:
        h2_order *= h2_compute(Q, d).order
    surjective = None
    if h2_order <= 2:
        images = set()
        t_arr = np.array(T.elements)
        for f in aut_T:
            ind = _induced_map(Q, proj, f)
            images.add((ind.tobytes(), f.arr[t_arr].tobytes()))
        target = len(automorphism_group(Q)) * len(automorphism_group(Tg))
        surjective = len(images) == target
    return AutSequenceReport(
        kernel_order=len(kernel),
        hom_order=len(hom_tables),
        exact=exact,
        h2_order=h2_order,
        surjective=surjective,
    )

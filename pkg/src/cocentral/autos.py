"""Automorphism and isomorphism search by backtracking on generator images.

The search enumerates candidate generator images filtered by necessary
invariants (element order, conjugacy class size, orders of generator
products), then builds and checks all candidate maps in one vectorized
batch.  Output ordering is canonical: maps sorted lexicographically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .groups import BudgetExceeded, FiniteGroup, GroupError, Subgroup
from .linalg import units_mod

DEFAULT_NODE_BUDGET = 4_000_000


class GroupMap:
    """Group homomorphism given by its image array on element indices."""

    __slots__ = ("domain", "codomain", "arr")

    def __init__(self, domain: FiniteGroup, codomain: FiniteGroup, arr):
        self.domain = domain
        self.codomain = codomain
        self.arr = np.asarray(arr, dtype=np.int64)
        self.arr.setflags(write=False)

    def __call__(self, x: int) -> int:
        return int(self.arr[x])

    def compose(self, other: "GroupMap") -> "GroupMap":
        """self after other."""
        if other.codomain is not self.domain:
            raise GroupError("composition domain mismatch")
        return GroupMap(other.domain, self.codomain, self.arr[other.arr])

    def inverse_map(self) -> "GroupMap":
        inv = np.empty_like(self.arr)
        inv[self.arr] = np.arange(len(self.arr))
        return GroupMap(self.codomain, self.domain, inv)

    def __pow__(self, k: int) -> "GroupMap":
        if self.domain is not self.codomain:
            raise GroupError("powers need an endomorphism")
        n = len(self.arr)
        if k < 0:
            return self.inverse_map() ** (-k)
        acc = np.arange(n)
        base = self.arr
        while k:
            if k & 1:
                acc = base[acc]
            base = base[base]
            k >>= 1
        return GroupMap(self.domain, self.codomain, acc)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.arr, np.arange(len(self.arr))))

    def order(self) -> int:
        k = 1
        cur = self.arr
        n = len(self.arr)
        idx = np.arange(n)
        while not np.array_equal(cur, idx):
            cur = self.arr[cur]
            k += 1
            if k > n:
                raise GroupError("map is not a bijection")
        return k

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupMap)
            and self.domain is other.domain
            and self.codomain is other.codomain
            and np.array_equal(self.arr, other.arr)
        )

    def __hash__(self):
        return hash((id(self.domain), id(self.codomain), self.arr.tobytes()))

    def __repr__(self):
        return f"GroupMap({self.domain.name}->{self.codomain.name}, {self.arr.tolist()})"


Automorphism = GroupMap  # an automorphism is a GroupMap with domain is codomain


def identity_map(G: FiniteGroup) -> GroupMap:
    return GroupMap(G, G, np.arange(G.order))


def inner_automorphism(G: FiniteGroup, g: int) -> GroupMap:
    arr = G.table[G.table[g, np.arange(G.order)], G.inv(g)]
    return GroupMap(G, G, arr)


# -- batch search ------------------------------------------------------------


def _bfs_schedule(G: FiniteGroup, gens: Sequence[int]) -> List[Tuple[int, int, int]]:
    """(src, gen position, dst) steps reaching every element from the identity."""
    seen = {G.identity}
    schedule = []
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for gi, g in enumerate(gens):
                y = G.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    schedule.append((x, gi, y))
                    nxt.append(y)
        frontier = nxt
    if len(seen) != G.order:
        raise GroupError("generators do not generate the group")
    return schedule


def _batch_build_maps(
    H: FiniteGroup, schedule, images: np.ndarray, identity_src: int
) -> np.ndarray:
    """Build candidate maps (K x n) from generator images (K x ngens)."""
    K = images.shape[0]
    n = len(schedule) + 1
    maps = np.zeros((K, n), dtype=np.int64)
    maps[:, identity_src] = H.identity
    T = H.table
    for src, gi, dst in schedule:
        maps[:, dst] = T[maps[:, src], images[:, gi]]
    return maps


def _batch_check_morphism(G: FiniteGroup, H: FiniteGroup, maps: np.ndarray, gens) -> np.ndarray:
    """Mask of maps that are bijective homomorphisms."""
    K, n = maps.shape
    ok = np.ones(K, dtype=bool)
    # bijectivity
    sortd = np.sort(maps, axis=1)
    ok &= np.all(sortd == np.arange(n)[None, :], axis=1)
    # homomorphism on (x, s) for all x and generators s
    T_G, T_H = G.table, H.table
    for s in gens:
        lhs = maps[:, T_G[:, s]]
        rhs = T_H[maps, maps[:, s][:, None]]
        ok &= np.all(lhs == rhs, axis=1)
    return ok


def _search_maps(
    G: FiniteGroup,
    H: FiniteGroup,
    node_budget: int,
    first_only: bool,
) -> List[np.ndarray]:
    """All bijective homomorphisms G -> H (or the first one found)."""
    if G.order != H.order:
        return []
    gens = G.generators if G.order > 1 else []
    if not gens:
        return [np.zeros(1, dtype=np.int64)]
    ordsG, ordsH = G.element_orders(), H.element_orders()
    sizesG, sizesH = G.class_sizes(), H.class_sizes()
    if sorted(zip(ordsG.tolist(), sizesG.tolist())) != sorted(zip(ordsH.tolist(), sizesH.tolist())):
        return []
    cand = []
    for g in gens:
        mask = (ordsH == ordsG[g]) & (sizesH == sizesG[g])
        cand.append(np.nonzero(mask)[0])
        if not len(cand[-1]):
            return []
    # iterative join with pairwise product-order filtering
    tuples = cand[0][:, None]
    for i in range(1, len(gens)):
        K = tuples.shape[0] * len(cand[i])
        if K > node_budget:
            raise BudgetExceeded(f"automorphism search needs {K} nodes > budget {node_budget}")
        grid_prev = np.repeat(tuples, len(cand[i]), axis=0)
        grid_new = np.tile(cand[i], tuples.shape[0])[:, None]
        joined = np.concatenate([grid_prev, grid_new], axis=1)
        keep = np.ones(joined.shape[0], dtype=bool)
        for j in range(i):
            want = ordsG[G.mul(gens[j], gens[i])]
            have = ordsH[H.table[joined[:, j], joined[:, i]]]
            keep &= have == want
        tuples = joined[keep]
        if not tuples.shape[0]:
            return []
    schedule = _bfs_schedule(G, gens)
    found: List[np.ndarray] = []
    chunk = max(1, (1 << 24) // max(G.order, 1))
    for start in range(0, tuples.shape[0], chunk):
        block = tuples[start : start + chunk]
        maps = _batch_build_maps(H, schedule, block, G.identity)
        ok = _batch_check_morphism(G, H, maps, gens)
        for row in maps[ok]:
            found.append(row.copy())
            if first_only:
                return found
    return found


def automorphism_group(
    G: FiniteGroup,
    constraint: Optional[str] = None,
    subgroup: Optional[Sequence[int]] = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> List[GroupMap]:
    """Complete automorphism list, canonically ordered.

    constraint: None, or "preserve"/"fix" together with `subgroup` (the
    automorphisms mapping the subgroup to itself / fixing it pointwise).
    Results are cached on the group object.
    """
    key = (constraint, tuple(sorted(subgroup)) if subgroup is not None else None)
    cached = G._aut_cache.get(key)
    if cached is not None:
        return cached
    base = G._aut_cache.get((None, None))
    if base is None:
        arrs = _search_maps(G, G, node_budget, first_only=False)
        arrs.sort(key=lambda a: a.tobytes())
        base = [GroupMap(G, G, a) for a in arrs]
        G._aut_cache[(None, None)] = base
        # spot-check closure under composition and inversion
        if base:
            index = {f.arr.tobytes(): True for f in base}
            for f in base[: min(8, len(base))]:
                for g in base[: min(8, len(base))]:
                    if f.arr[g.arr].tobytes() not in index:
                        raise GroupError("automorphism set not closed under composition")
                inv = f.inverse_map()
                if inv.arr.tobytes() not in index:
                    raise GroupError("automorphism set not closed under inversion")
    if constraint is None:
        return base
    if subgroup is None:
        raise GroupError("constrained search needs a subgroup")
    sub = np.array(sorted(subgroup), dtype=np.int64)
    Subgroup(G, tuple(int(x) for x in sub))
    if constraint == "preserve":
        out = [f for f in base if np.array_equal(np.sort(f.arr[sub]), sub)]
    elif constraint == "fix":
        out = [f for f in base if np.array_equal(f.arr[sub], sub)]
    else:
        raise GroupError(f"unknown constraint {constraint}")
    G._aut_cache[key] = out
    return out


def find_isomorphism(
    G1: FiniteGroup, G2: FiniteGroup, node_budget: int = DEFAULT_NODE_BUDGET
) -> Optional[GroupMap]:
    """First isomorphism G1 -> G2 in deterministic search order, or None."""
    arrs = _search_maps(G1, G2, node_budget, first_only=True)
    return GroupMap(G1, G2, arrs[0]) if arrs else None


def dihedral_automorphism(G: FiniteGroup, k: int, l: int) -> GroupMap:
    """The automorphism r -> r^l, s -> s r^k on the canonical dihedral ordering."""
    if G.meta.get("family") != "dihedral":
        raise GroupError("dihedral group expected")
    n = G.meta["n"]
    if math.gcd(l, n) != 1:
        raise GroupError(f"l={l} is not a unit mod {n}")
    arr = np.zeros(2 * n, dtype=np.int64)
    for j in (0, 1):
        for i in range(n):
            arr[j * n + i] = j * n + (l * i - j * k) % n
    return GroupMap(G, G, arr)


# -- permutation-group view (for automorphism groups) ------------------------


class PermGroupView:
    """A finite group whose elements are stored permutations.

    Supports the minimal interface needed by conjugacy/order machinery
    without materializing a multiplication table (sizes like |GL2(F13)| =
    26208 stay workable).
    """

    def __init__(self, maps: Sequence[np.ndarray], name: str = "P"):
        arrs = sorted((np.asarray(m, dtype=np.int64) for m in maps), key=lambda a: a.tobytes())
        self.elements = arrs
        self.index = {a.tobytes(): i for i, a in enumerate(arrs)}
        self.order = len(arrs)
        self.degree = len(arrs[0]) if arrs else 0
        self.name = name
        idn = np.arange(self.degree)
        self.identity = self.index[idn.tobytes()]
        self._orders: Optional[np.ndarray] = None
        self._gens: Optional[List[int]] = None

    def mul(self, i: int, j: int) -> int:
        a = self.elements[i][self.elements[j]]
        return self.index[a.tobytes()]

    def inv(self, i: int) -> int:
        a = self.elements[i]
        out = np.empty_like(a)
        out[a] = np.arange(len(a))
        return self.index[out.tobytes()]

    def power(self, i: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(i), -k)
        acc = self.identity
        base = i
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def element_order(self, i: int) -> int:
        a = self.elements[i]
        # lcm of cycle lengths
        seen = np.zeros(len(a), dtype=bool)
        out = 1
        for s in range(len(a)):
            if seen[s]:
                continue
            ln, j = 0, s
            while not seen[j]:
                seen[j] = True
                j = int(a[j])
                ln += 1
            out = out * ln // math.gcd(out, ln)
        return out

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            self._orders = np.array([self.element_order(i) for i in range(self.order)])
        return self._orders

    def generators(self) -> List[int]:
        if self._gens is None:
            orders = self.element_orders()
            by_order = sorted(range(self.order), key=lambda x: (-orders[x], x))
            gens: List[int] = []
            closed = {self.identity}
            for x in by_order:
                if x in closed:
                    continue
                gens.append(x)
                closed = self._closure(gens)
                if len(closed) == self.order:
                    break
            self._gens = gens
        return self._gens

    def _closure(self, gens: Sequence[int]) -> set:
        seen = {self.identity} | set(gens)
        frontier = list(seen)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def conjugacy_orbit(self, i: int) -> List[int]:
        gens = self.generators()
        seen = {i}
        frontier = [i]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(self.mul(g, x), self.inv(g))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)


def aut_group_view(G: FiniteGroup, node_budget: int = DEFAULT_NODE_BUDGET) -> PermGroupView:
    return PermGroupView([f.arr for f in automorphism_group(G, node_budget=node_budget)], f"Aut({G.name})")


class _TableGroupAdapter:
    """Duck-type adapter exposing FiniteGroup through the PermGroupView surface."""

    def __init__(self, G: FiniteGroup):
        self.G = G
        self.order = G.order
        self.identity = G.identity
        self.name = G.name

    def mul(self, i, j):
        return self.G.mul(i, j)

    def inv(self, i):
        return self.G.inv(i)

    def power(self, i, k):
        return self.G.power(i, k)

    def element_order(self, i):
        return self.G.element_order(i)

    def conjugacy_orbit(self, i):
        classes = self.G.conjugacy_classes()
        return classes[int(self.G.class_index()[i])]


def power_conjugacy_classes(group, m: int):
    """Nontrivial x with x^m = 1, modulo conjugacy combined with prime-to-m powers.

    `group` is a FiniteGroup or a PermGroupView.  Returns (reps, classes,
    by_order): canonical minimal representatives, the full classes, and,
    when m is a prime power, the representatives split by element order.
    """
    g = _TableGroupAdapter(group) if isinstance(group, FiniteGroup) else group
    members = [x for x in range(g.order) if x != g.identity and g.power(x, m) == g.identity]
    member_set = set(members)
    parent: Dict[int, int] = {x: x for x in members}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    orbit_cache: Dict[int, List[int]] = {}
    for x in members:
        if x not in orbit_cache:
            orb = [y for y in g.conjugacy_orbit(x) if y in member_set]
            for y in orb:
                orbit_cache[y] = orb
                union(x, y)
        for l in units_mod(m):
            y = g.power(x, l)
            if y in member_set:
                union(x, y)
    classes: Dict[int, List[int]] = {}
    for x in members:
        classes.setdefault(find(x), []).append(x)
    reps = sorted(classes)
    class_list = [sorted(classes[r]) for r in reps]
    by_order: Dict[int, List[int]] = {}
    from .linalg import prime_power_factors

    pp = prime_power_factors(m) if m > 1 else []
    if len(pp) == 1:
        for r in reps:
            by_order.setdefault(g.element_order(r), []).append(r)
    return reps, class_list, by_order

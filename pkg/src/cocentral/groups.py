"""Finite groups as dense multiplication tables over element indices 0..n-1.

Every group is explicit: an n x n table of indices, validated for full
associativity and identity/inverse consistency at construction.  Each
family fixes a documented canonical element ordering so class
representatives are reproducible:

  cyclic:n      value i at index i
  dihedral:n    r^i s^j at index j*n + i
  symmetric:n   permutation tuples in lexicographic order
  alternating:n even permutation tuples in lexicographic order
  sl2:p         matrices (a,b,c,d), det=1 mod p, in lexicographic order
  product(a,b)  pair (x,y) at index x*|B| + y

Values are immutable after construction and safe to share across
threads; searches are single-threaded and deterministic.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

DEFAULT_MAX_ORDER = 400


class BudgetExceeded(RuntimeError):
    """A configured search or size budget was exhausted."""


class GroupError(ValueError):
    """Invalid group data (associativity, identity or closure failure)."""


def _validate_table(table: np.ndarray) -> Tuple[int, np.ndarray]:
    """Full associativity/identity/inverse scan; returns (identity, inverses)."""
    n = table.shape[0]
    if table.shape != (n, n):
        raise GroupError("table must be square")
    if table.min() < 0 or table.max() >= n:
        raise GroupError("table entries out of range")
    idx = np.arange(n)
    identity = None
    for e in range(n):
        if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx):
            identity = e
            break
    if identity is None:
        raise GroupError("no identity element")
    inverse = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        ys = np.nonzero(table[x] == identity)[0]
        if len(ys) != 1 or table[ys[0], x] != identity:
            raise GroupError("inverses missing or inconsistent")
        inverse[x] = ys[0]
    # associativity in chunks: (xy)z == x(yz)
    chunk = max(1, (1 << 22) // (n * n))
    for start in range(0, n, chunk):
        xs = np.arange(start, min(start + chunk, n))
        left = table[table[xs][:, :, None], idx[None, None, :]]
        right = table[xs[:, None, None], table[None, :, :]]
        if not np.array_equal(left, right):
            raise GroupError("associativity fails")
    return identity, inverse


class FiniteGroup:
    """Immutable finite group on indices 0..order-1 given by its table."""

    def __init__(
        self,
        table,
        name: str = "G",
        generators: Optional[Sequence[int]] = None,
        meta: Optional[dict] = None,
        max_order: int = DEFAULT_MAX_ORDER,
    ):
        table = np.array(table, dtype=np.int64, copy=True)
        n = table.shape[0]
        if n > max_order:
            raise BudgetExceeded(f"group order {n} exceeds budget {max_order}")
        self.order = n
        self.table = table
        self.name = name
        self.identity, self.inverse = _validate_table(table)
        self.meta = dict(meta or {})
        self._orders: Optional[np.ndarray] = None
        self._classes: Optional[List[List[int]]] = None
        self._class_of: Optional[np.ndarray] = None
        self._aut_cache: Dict = {}
        if generators is not None:
            gens = [int(g) for g in generators]
            if len(self.closure(gens)) != n:
                raise GroupError("given generators do not generate the group")
        else:
            gens = self._greedy_generators()
        self.generators = gens
        self.table.setflags(write=False)

    # -- basic operations -------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(x), -k)
        acc = self.identity
        base = x
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def element_order(self, x: int) -> int:
        return int(self.element_orders()[x])

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            n = self.order
            orders = np.zeros(n, dtype=np.int64)
            idx = np.arange(n)
            cur = idx.copy()
            k = 0
            remaining = n
            while remaining:
                k += 1
                if k > n:
                    raise GroupError("element order exceeds group order")
                hit = (cur == self.identity) & (orders == 0)
                orders[hit] = k
                remaining -= int(hit.sum())
                cur = self.table[cur, idx]
            self._orders = orders
        return self._orders

    def closure(self, elems: Iterable[int]) -> List[int]:
        """Subgroup generated by elems, as a sorted index list."""
        gens = sorted(set(int(x) for x in elems))
        seen = np.zeros(self.order, dtype=bool)
        frontier = sorted(set(gens) | {self.identity})
        seen[frontier] = True
        current = list(frontier)
        while current:
            cur = np.array(current, dtype=np.int64)
            nxt = []
            for g in gens:
                prods = self.table[cur, g]
                fresh = prods[~seen[prods]]
                if len(fresh):
                    seen[fresh] = True
                    nxt.extend(int(v) for v in np.unique(fresh))
            current = sorted(set(nxt))
        return sorted(np.nonzero(seen)[0].tolist())

    def _greedy_generators(self) -> List[int]:
        if self.order == 1:
            return []
        orders = self.element_orders()
        by_order = sorted(range(self.order), key=lambda x: (-orders[x], x))
        gens: List[int] = []
        closed = {self.identity}
        for x in by_order:
            if x in closed:
                continue
            gens.append(x)
            closed = set(self.closure(gens))
            if len(closed) == self.order:
                return gens
        raise GroupError("could not find generators")

    # -- conjugacy ---------------------------------------------------------

    def conjugacy_classes(self) -> List[List[int]]:
        """Classes sorted by minimal representative; each class sorted."""
        if self._classes is None:
            n = self.order
            gs = np.arange(n)
            class_of = np.full(n, -1, dtype=np.int64)
            classes = []
            for x in range(n):
                if class_of[x] >= 0:
                    continue
                orbit = np.unique(self.table[self.table[gs, x], self.inverse[gs]])
                class_of[orbit] = len(classes)
                classes.append(orbit.tolist())
            self._classes = classes
            self._class_of = class_of
        return self._classes

    def class_sizes(self) -> np.ndarray:
        classes = self.conjugacy_classes()
        sizes = np.zeros(self.order, dtype=np.int64)
        for cl in classes:
            sizes[cl] = len(cl)
        return sizes

    def class_index(self) -> np.ndarray:
        self.conjugacy_classes()
        return self._class_of

    # -- structure ---------------------------------------------------------

    def center(self) -> List[int]:
        n = self.order
        mask = np.all(self.table == self.table.T, axis=1)
        return np.nonzero(mask)[0].tolist()

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders()))

    def is_cyclic(self) -> bool:
        return bool((self.element_orders() == self.order).any())

    def derived_subgroup(self) -> List[int]:
        n = self.order
        xs = np.arange(n)
        comms = set()
        for y in range(n):
            c = self.table[self.table[xs, y], self.table[self.inverse[xs], self.inverse[y]]]
            comms.update(int(v) for v in np.unique(c))
        return self.closure(comms)

    def key(self) -> str:
        return hashlib.sha256(self.table.tobytes()).hexdigest()[:16]

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "table": self.table.tolist(),
            "generators": list(self.generators),
        }


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of `parent` given by a sorted element index list."""

    parent: FiniteGroup
    elements: Tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(int(x) for x in self.elements))
        object.__setattr__(self, "elements", elems)
        G = self.parent
        members = set(elems)
        if G.identity not in members:
            raise GroupError("subgroup misses the identity")
        for x in elems:
            if G.inv(x) not in members:
                raise GroupError("subgroup not closed under inversion")
            for y in elems:
                if G.mul(x, y) not in members:
                    raise GroupError("subgroup not closed under product")

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_normal(self) -> bool:
        G = self.parent
        members = set(self.elements)
        for g in range(G.order):
            for x in self.elements:
                if G.conj(g, x) not in members:
                    return False
        return True

    def is_central(self) -> bool:
        center = set(self.parent.center())
        return all(x in center for x in self.elements)


@dataclass(frozen=True)
class StructureInfo:
    center: Subgroup
    exponent: int
    derived_subgroup: Subgroup
    abelianization: "FiniteGroup"
    abelianization_map: np.ndarray
    is_cyclic: bool


# -- families ---------------------------------------------------------------


def _perm_group_table(perms: List[Tuple[int, ...]], name: str, gens_perms=None):
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.zeros((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[k]] for k in range(len(p)))]
    generators = None
    if gens_perms:
        generators = [index[tuple(g)] for g in gens_perms]
    return table, generators


def cyclic_group(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    gens = [1] if n > 1 else []
    return FiniteGroup(table, f"Z{n}", gens, {"family": "cyclic", "n": n}, max_order)


def dihedral_group(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Dihedral group of order 2n; r^i s^j sits at index j*n + i."""
    if n < 1:
        raise GroupError("dihedral parameter must be >= 1")
    size = 2 * n
    table = np.zeros((size, size), dtype=np.int64)
    for j1 in (0, 1):
        for i1 in range(n):
            for j2 in (0, 1):
                for i2 in range(n):
                    i = (i1 + (i2 if j1 == 0 else -i2)) % n
                    j = (j1 + j2) % 2
                    table[j1 * n + i1, j2 * n + i2] = j * n + i
    gens = [1, n] if n > 1 else [n]
    return FiniteGroup(table, f"D{n}", gens, {"family": "dihedral", "n": n}, max_order)


def symmetric_group(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    if math.factorial(n) > max_order:
        raise BudgetExceeded(f"S{n} exceeds order budget {max_order}")
    gens_perms = []
    if n >= 2:
        t = list(range(n))
        t[0], t[1] = t[1], t[0]
        gens_perms.append(tuple(t))
    if n >= 3:
        gens_perms.append(tuple(list(range(1, n)) + [0]))
    table, gens = _perm_group_table(perms, f"S{n}", gens_perms)
    return FiniteGroup(table, f"S{n}", gens, {"family": "symmetric", "n": n, "perms": perms}, max_order)


def _perm_parity(p) -> int:
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j, ln = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            ln += 1
        parity ^= (ln - 1) & 1
    return parity


def alternating_group(n: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    perms = sorted(p for p in itertools.permutations(range(n)) if _perm_parity(p) == 0)
    gens_perms = []
    if n >= 3:
        c3 = list(range(n))
        c3[0], c3[1], c3[2] = c3[1], c3[2], c3[0]
        gens_perms.append(tuple(c3))
    if n >= 4:
        if n % 2 == 1:
            gens_perms.append(tuple(list(range(1, n)) + [0]))
        else:
            gens_perms.append(tuple([0] + list(range(2, n)) + [1]))
    table, gens = _perm_group_table(perms, f"A{n}", gens_perms)
    return FiniteGroup(table, f"A{n}", gens, {"family": "alternating", "n": n, "perms": perms}, max_order)


def sl2_group(p: int, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """SL2 over the prime field F_p, elements in lexicographic (a,b,c,d) order."""
    mats = [
        (a, b, c, d)
        for a in range(p)
        for b in range(p)
        for c in range(p)
        for d in range(p)
        if (a * d - b * c) % p == 1
    ]
    index = {m: i for i, m in enumerate(mats)}
    n = len(mats)
    if n > max_order:
        raise BudgetExceeded(f"SL2(F{p}) has order {n} > budget {max_order}")
    arr = np.array(mats, dtype=np.int64)
    a, b, c, d = arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3]
    table = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        ai, bi, ci, di = mats[i]
        prod = np.stack(
            [(ai * a + bi * c) % p, (ai * b + bi * d) % p, (ci * a + di * c) % p, (ci * b + di * d) % p],
            axis=1,
        )
        table[i] = [index[tuple(int(v) for v in row)] for row in prod]
    gens = [index[(0, p - 1, 1, 0)], index[(1, 1, 0, 1)]]
    return FiniteGroup(
        table, f"SL2(F{p})", gens, {"family": "sl2", "p": p, "matrices": mats}, max_order
    )


def product_group(A: FiniteGroup, B: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    nA, nB = A.order, B.order
    n = nA * nB
    ta = A.table[:, None, :, None] * nB
    tb = B.table[None, :, None, :]
    table = (ta + tb).reshape(nA * nB, nA * nB)
    # index (x, y) -> x*nB + y ; table[(x1,y1),(x2,y2)] = (x1x2, y1y2)
    gens = [g * nB + B.identity for g in A.generators] + [A.identity * nB + g for g in B.generators]
    return FiniteGroup(
        table, f"{A.name}x{B.name}", gens, {"family": "product", "parts": (A.name, B.name)}, max_order
    )


def group_from_json(data: dict, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    return FiniteGroup(
        np.array(data["table"], dtype=np.int64),
        data.get("name", "G"),
        data.get("generators"),
        {"family": "table"},
        max_order,
    )


def make_group(spec, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Build a group from a family descriptor string or a JSON dict.

    Accepted specs: cyclic:n, dihedral:n, symmetric:n, alternating:n,
    sl2:p, product(spec,spec), table:path.
    """
    if isinstance(spec, dict):
        return group_from_json(spec, max_order)
    spec = spec.strip()
    if spec.startswith("product(") and spec.endswith(")"):
        inner = spec[len("product(") : -1]
        depth = 0
        for i, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                left, right = inner[:i], inner[i + 1 :]
                return product_group(
                    make_group(left, max_order), make_group(right, max_order), max_order
                )
        raise GroupError(f"malformed product spec: {spec}")
    if ":" not in spec:
        raise GroupError(f"malformed group spec: {spec}")
    family, arg = spec.split(":", 1)
    if family == "table":
        with open(arg) as fh:
            return group_from_json(json.load(fh), max_order)
    n = int(arg)
    builders = {
        "cyclic": cyclic_group,
        "dihedral": dihedral_group,
        "symmetric": symmetric_group,
        "alternating": alternating_group,
        "sl2": sl2_group,
    }
    if family not in builders:
        raise GroupError(f"unknown family: {family}")
    return builders[family](n, max_order)


# -- quotients, extensions, structure ----------------------------------------


def quotient_group(G: FiniteGroup, normal: Sequence[int]):
    """Quotient by a normal subgroup; returns (Q, projection array).

    Cosets are numbered by their minimal member, ascending, so the
    ordering is canonical.
    """
    N = Subgroup(G, tuple(normal))
    if not N.is_normal():
        raise GroupError("subgroup is not normal")
    n = G.order
    coset_min = np.full(n, -1, dtype=np.int64)
    nelems = np.array(N.elements, dtype=np.int64)
    for x in range(n):
        if coset_min[x] >= 0:
            continue
        coset = G.table[x, nelems]
        coset_min[coset] = min(int(v) for v in coset)
    reps = sorted(set(int(v) for v in coset_min))
    rep_index = {r: i for i, r in enumerate(reps)}
    proj = np.array([rep_index[int(coset_min[x])] for x in range(n)], dtype=np.int64)
    m = len(reps)
    table = np.zeros((m, m), dtype=np.int64)
    for i, r in enumerate(reps):
        table[i] = proj[G.table[r, reps]]
    Q = FiniteGroup(table, f"{G.name}/N{len(normal)}", None, {"family": "quotient"})
    return Q, proj


@dataclass(frozen=True)
class ExtensionSpec:
    """Data for a central extension of `base` by Z_m along a 2-cocycle.

    `cocycle` is anything with an (order x order) integer exponent table
    mod m under `.values`, or a bare array.
    """

    base: FiniteGroup
    fiber_modulus: int
    cocycle: object

    def cocycle_table(self) -> np.ndarray:
        vals = getattr(self.cocycle, "values", self.cocycle)
        arr = np.asarray(vals, dtype=np.int64) % self.fiber_modulus
        if arr.shape != (self.base.order, self.base.order):
            raise GroupError("cocycle table has wrong shape")
        return arr


def central_extension(spec: ExtensionSpec, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Group on pairs (x, t), (x,r)(y,s) = (xy, tau(x,y)+r+s); index x*m + t."""
    H, m = spec.base, spec.fiber_modulus
    tau = spec.cocycle_table()
    e = H.identity
    if tau[e, :].any() or tau[:, e].any():
        raise GroupError("cocycle is not normalized")
    # cocycle identity
    n = H.order
    for x in range(n):
        lhs = tau[x, :][:, None] + tau[H.table[x, :], :]
        rhs = tau[None, :, :][0] + tau[x, H.table]
        if not np.array_equal(lhs % m, rhs % m):
            raise GroupError("cocycle identity fails")
    size = n * m
    ts = np.arange(m)
    table = np.zeros((size, size), dtype=np.int64)
    for x in range(n):
        for t in range(m):
            prod_x = H.table[x, :]
            prod_t = (tau[x, :][:, None] + t + ts[None, :]) % m
            table[x * m + t] = (prod_x[:, None] * m + prod_t).reshape(-1)
    name = f"{H.name}.{m}"
    return FiniteGroup(table, name, None, {"family": "central_extension", "m": m}, max_order)


def subgroup_group(G: FiniteGroup, elems: Sequence[int]) -> Tuple["FiniteGroup", np.ndarray]:
    """Subgroup as a standalone FiniteGroup plus the index embedding into G."""
    sigma = np.array(sorted(int(x) for x in elems), dtype=np.int64)
    pos = {int(h): i for i, h in enumerate(sigma)}
    sub = G.table[np.ix_(sigma, sigma)]
    table = np.vectorize(pos.__getitem__)(sub) if len(sigma) > 1 else np.zeros((1, 1), dtype=np.int64)
    S = FiniteGroup(table, f"{G.name}|{len(sigma)}", None, {"family": "subgroup"})
    return S, sigma


def sylow_subgroup(G: FiniteGroup, p: int) -> List[int]:
    """Elements of a Sylow p-subgroup (grown inside successive normalizers)."""
    n = G.order
    target = 1
    while (n // target) % p == 0:
        target *= p
    if target == 1:
        return [G.identity]
    orders = G.element_orders()
    p_elems = [x for x in range(n) if _is_p_power(int(orders[x]), p)]
    current = {G.identity}
    while len(current) < target:
        members = np.array(sorted(current), dtype=np.int64)
        grown = False
        for x in p_elems:
            if x in current:
                continue
            # x must normalize the current subgroup
            if all(G.conj(x, int(y)) in current for y in members):
                current = set(G.closure(list(current) + [x]))
                grown = True
                break
        if not grown:
            raise GroupError("sylow construction stalled")
    return sorted(current)


def _is_p_power(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def structure_info(G: FiniteGroup) -> StructureInfo:
    center = Subgroup(G, tuple(G.center()))
    derived = Subgroup(G, tuple(G.derived_subgroup()))
    ab, proj = quotient_group(G, derived.elements)
    return StructureInfo(
        center=center,
        exponent=G.exponent(),
        derived_subgroup=derived,
        abelianization=ab,
        abelianization_map=proj,
        is_cyclic=G.is_cyclic(),
    )


def abelian_basis(A: FiniteGroup) -> Tuple[List[int], List[int], np.ndarray]:
    """Basis (elements, orders, coordinates) of a finite abelian group.

    coordinates[x] gives the exponent vector of element x in the basis.
    """
    if not A.is_abelian():
        raise GroupError("abelian group expected")
    basis: List[int] = []
    orders: List[int] = []
    n = A.order
    covered = {A.identity}
    elem_orders = A.element_orders()
    while len(covered) < n:
        # element with maximal order in A / <basis>
        best, best_ord = None, 0
        covered_arr = sorted(covered)
        for x in range(n):
            if x in covered:
                continue
            # order of x modulo current subgroup
            k, y = 1, x
            while y not in covered:
                y = A.mul(y, x)
                k += 1
            if k > best_ord:
                best, best_ord = x, k
        # adjust the lift so its element order equals its coset order
        x = best
        d = best_ord
        adjusted = None
        for z in covered_arr:
            cand = A.mul(x, z)
            if int(elem_orders[cand]) == d:
                adjusted = cand
                break
        if adjusted is None:
            raise GroupError("abelian basis lift failed")
        basis.append(adjusted)
        orders.append(d)
        covered = set(A.closure(list(basis)))
    # coordinates by enumeration
    coords = np.zeros((n, len(basis)), dtype=np.int64)
    seen = {A.identity: tuple([0] * len(basis))}
    stack = [A.identity]
    while stack:
        x = stack.pop()
        cx = seen[x]
        for i, b in enumerate(basis):
            y = A.mul(x, b)
            if y not in seen:
                cy = list(cx)
                cy[i] = (cy[i] + 1) % orders[i]
                seen[y] = tuple(cy)
                stack.append(y)
    for x, c in seen.items():
        coords[x] = c
    return basis, orders, coords

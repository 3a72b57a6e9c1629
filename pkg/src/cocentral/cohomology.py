"""Second cohomology with root-of-unity coefficients, held as Z/N exponents.

Scalars are exponents of a fixed primitive N-th root of unity, so every
multiplicative identity in sight becomes additive arithmetic mod N.  The
main entry points:

  solve_coboundary   del(mu) = tau solver (BFS parameterization over
                     generator values, then a tiny linear system)
  h2_compute         H^2(G, Z/N) by CRT into prime powers; each p-part is
                     computed on a Sylow p-subgroup and carried back to G
                     with the transfer (corestriction) map, which is onto
                     the p-part because restriction-corestriction is
                     multiplication by the prime-to-p index
  is_kx_trivial      detects classes that die over the full multiplicative
                     group: del(phi) valued in mu_N forces phi^N to be a
                     character, so solving over N * exp(G) is complete

Triviality tests and class representatives are exact; nothing here is
floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .groups import FiniteGroup, GroupError, abelian_basis, quotient_group, subgroup_group, sylow_subgroup
from .linalg import (
    LocalDiagonalization,
    crt_coefficients,
    prime_power_factors,
    quotient_structure,
    solve_mod,
)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class UnitMap:
    """Map G -> mu_N stored as exponents; value at the identity is 0."""

    __slots__ = ("group", "modulus", "values")

    def __init__(self, group: FiniteGroup, modulus: int, values, validate: bool = True):
        self.group = group
        self.modulus = int(modulus)
        vals = np.asarray(values, dtype=np.int64) % self.modulus
        if vals.shape != (group.order,):
            raise GroupError("unit map needs one value per element")
        if validate and vals[group.identity] != 0:
            raise GroupError("unit map must be normalized at the identity")
        self.values = vals
        self.values.setflags(write=False)

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    def lift(self, modulus: int) -> "UnitMap":
        if modulus % self.modulus:
            raise GroupError("lift target must be a multiple of the modulus")
        return UnitMap(self.group, modulus, self.values * (modulus // self.modulus), False)

    def __add__(self, other: "UnitMap") -> "UnitMap":
        M = _lcm(self.modulus, other.modulus)
        return UnitMap(self.group, M, self.lift(M).values + other.lift(M).values, False)

    def __sub__(self, other: "UnitMap") -> "UnitMap":
        M = _lcm(self.modulus, other.modulus)
        return UnitMap(self.group, M, self.lift(M).values - other.lift(M).values, False)

    def scale(self, k: int) -> "UnitMap":
        return UnitMap(self.group, self.modulus, self.values * k, False)

    def compose(self, arr: np.ndarray) -> "UnitMap":
        """Precompose with an index map (values[arr])."""
        return UnitMap(self.group, self.modulus, self.values[arr], False)

    def is_character(self) -> bool:
        T = self.group.table
        v = self.values
        return bool(np.all((v[:, None] + v[None, :] - v[T]) % self.modulus == 0))

    def key(self) -> tuple:
        return (self.modulus, self.values.tobytes())

    def __repr__(self):
        return f"UnitMap({self.group.name}, mod {self.modulus})"


class Cocycle2:
    """Normalized 2-cocycle G x G -> mu_N as an exponent table mod N."""

    __slots__ = ("group", "modulus", "values")

    def __init__(self, group: FiniteGroup, modulus: int, values, validate: bool = True):
        self.group = group
        self.modulus = int(modulus)
        vals = np.asarray(values, dtype=np.int64) % self.modulus
        if vals.shape != (group.order, group.order):
            raise GroupError("cocycle table has wrong shape")
        self.values = vals
        if validate:
            self._validate()
        self.values.setflags(write=False)

    def _validate(self):
        G, v, M = self.group, self.values, self.modulus
        e = G.identity
        if v[e, :].any() or v[:, e].any():
            raise GroupError("cocycle is not normalized")
        # identity on triples (s, y, z) with s a generator implies it on all
        # triples, by induction on the word length of the first argument
        T = G.table
        for s in G.generators:
            lhs = (v[s, :][:, None] + v[T[s, :], :]) % M
            rhs = (v + v[s, T]) % M
            if not np.array_equal(lhs, rhs):
                raise GroupError("cocycle identity fails")

    def full_identity_scan(self) -> bool:
        """All-triples cocycle identity check (test oracle; O(n^3))."""
        G, v, M = self.group, self.values, self.modulus
        T = G.table
        for x in range(G.order):
            lhs = (v[x, :][:, None] + v[T[x, :], :]) % M
            rhs = (v + v[x, T]) % M
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def __call__(self, x: int, y: int) -> int:
        return int(self.values[x, y])

    def lift(self, modulus: int) -> "Cocycle2":
        if modulus % self.modulus:
            raise GroupError("lift target must be a multiple of the modulus")
        return Cocycle2(self.group, modulus, self.values * (modulus // self.modulus), False)

    def __add__(self, other: "Cocycle2") -> "Cocycle2":
        M = _lcm(self.modulus, other.modulus)
        return Cocycle2(self.group, M, self.lift(M).values + other.lift(M).values, False)

    def __sub__(self, other: "Cocycle2") -> "Cocycle2":
        M = _lcm(self.modulus, other.modulus)
        return Cocycle2(self.group, M, self.lift(M).values - other.lift(M).values, False)

    def scale(self, k: int) -> "Cocycle2":
        return Cocycle2(self.group, self.modulus, self.values * k, False)

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.values, self.values.T))

    def key(self) -> tuple:
        return (self.modulus, self.values.tobytes())

    def __repr__(self):
        return f"Cocycle2({self.group.name}, mod {self.modulus})"


def zero_cocycle(G: FiniteGroup, modulus: int) -> Cocycle2:
    return Cocycle2(G, modulus, np.zeros((G.order, G.order), dtype=np.int64), False)


def zero_unit_map(G: FiniteGroup, modulus: int) -> UnitMap:
    return UnitMap(G, modulus, np.zeros(G.order, dtype=np.int64), False)


def coboundary(mu: UnitMap) -> Cocycle2:
    """del(mu)(x,y) = mu(x) + mu(y) - mu(xy)."""
    G, v = mu.group, mu.values
    vals = v[:, None] + v[None, :] - v[G.table]
    return Cocycle2(G, mu.modulus, vals, False)


def pullback(tau: Cocycle2, f) -> Cocycle2:
    """(x, y) -> tau(f(x), f(y))."""
    arr = np.asarray(getattr(f, "arr", f), dtype=np.int64)
    return Cocycle2(tau.group, tau.modulus, tau.values[np.ix_(arr, arr)], False)


def power_product(tau: Cocycle2, theta, m: int) -> Cocycle2:
    """Sum of the pullbacks of tau along theta^i, i = 0..m-1."""
    arr = np.asarray(getattr(theta, "arr", theta), dtype=np.int64)
    n = tau.group.order
    idx = np.arange(n)
    cur = idx
    k = 1
    probe = arr
    while not np.array_equal(probe, idx):
        probe = arr[probe]
        k += 1
        if k > n:
            raise GroupError("theta is not a bijection")
    if m % k:
        raise GroupError(f"theta^{m} is not the identity")
    acc = np.zeros((n, n), dtype=np.int64)
    for _ in range(m):
        acc += tau.values[np.ix_(cur, cur)]
        cur = arr[cur]
    return Cocycle2(tau.group, tau.modulus, acc, False)


def inner_trivializer(tau: Cocycle2, x: int) -> UnitMap:
    """The map mu_x with tau = del(mu_x) + tau o (ad x, ad x)."""
    G = tau.group
    v = tau.values
    n = G.order
    xinv = G.inv(x)
    ys = np.arange(n)
    vals = v[G.table[x, ys], xinv] + v[x, ys] - v[x, xinv]
    mu = UnitMap(G, tau.modulus, vals, False)
    ad = G.table[G.table[x, ys], xinv]
    check = (coboundary(mu).values + tau.values[np.ix_(ad, ad)] - tau.values) % tau.modulus
    if check.any():
        raise GroupError("inner trivializer identity failed")
    return mu


# -- coboundary equation solver ----------------------------------------------


def _propagation_data(G: FiniteGroup):
    """BFS schedule plus generator-count coordinates for each element."""
    gens = G.generators
    k = len(gens)
    schedule = []
    seen = {G.identity}
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
    coeff = np.zeros((G.order, k), dtype=np.int64)
    for src, gi, dst in schedule:
        coeff[dst] = coeff[src]
        coeff[dst, gi] += 1
    return gens, schedule, coeff


def solve_del(G: FiniteGroup, table: np.ndarray, modulus: int) -> Optional[np.ndarray]:
    """Canonical mu with mu(x) + mu(y) - mu(xy) = table(x,y) mod modulus, or None."""
    n = G.order
    table = np.asarray(table, dtype=np.int64) % modulus
    e = G.identity
    if table[e, :].any() or table[:, e].any():
        return None
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    if modulus == 1:
        return np.zeros(n, dtype=np.int64)
    gens, schedule, coeff = _propagation_data(G)
    k = len(gens)
    alpha = np.zeros(n, dtype=np.int64)
    for src, gi, dst in schedule:
        alpha[dst] = (alpha[src] - table[src, gens[gi]]) % modulus
    T = G.table
    # residual: sum_j v_j * D_j(x,y) = C(x,y)
    C = (table - (alpha[:, None] + alpha[None, :] - alpha[T])) % modulus
    D = np.stack(
        [coeff[:, j][:, None] + coeff[:, j][None, :] - coeff[:, j][T] for j in range(k)],
        axis=2,
    )
    A = D.reshape(n * n, k)
    b = C.reshape(n * n)
    v = solve_mod(A, b, modulus)
    if v is None:
        return None
    mu = (alpha + coeff @ v) % modulus
    check = (mu[:, None] + mu[None, :] - mu[T] - table) % modulus
    if check.any():
        return None
    return mu


def solve_coboundary(tau: Cocycle2, modulus: Optional[int] = None) -> Optional[UnitMap]:
    """mu with del(mu) = tau over Z/modulus (canonical particular solution)."""
    M = modulus or tau.modulus
    if M % tau.modulus:
        raise GroupError("modulus of tau must divide the solve modulus")
    lifted = tau.values * (M // tau.modulus)
    mu = solve_del(tau.group, lifted, M)
    return None if mu is None else UnitMap(tau.group, M, mu, False)


def is_kx_trivial(tau: Cocycle2) -> bool:
    """Class triviality over the full multiplicative group k^x."""
    return solve_coboundary(tau, tau.modulus * tau.group.exponent()) is not None


def characters(G: FiniteGroup, modulus: int) -> List[UnitMap]:
    """All homomorphisms G -> Z/modulus, canonically ordered."""
    if modulus == 1 or G.order == 1:
        return [zero_unit_map(G, modulus)]
    derived = G.derived_subgroup()
    ab, proj = quotient_group(G, derived)
    basis, orders, coords = abelian_basis(ab)
    choice_counts = [math.gcd(d, modulus) for d in orders]
    out = []
    def rec(i, acc):
        if i == len(basis):
            out.append(acc.copy())
            return
        step = modulus // choice_counts[i]
        for j in range(choice_counts[i]):
            rec(i + 1, acc + [(j * step) % modulus])
        return
    rec(0, [])
    maps = []
    elem_coords = coords[proj]  # coords of pi(x) for each x in G
    for assign in out:
        vals = (elem_coords @ np.array(assign, dtype=np.int64)) % modulus
        maps.append(UnitMap(G, modulus, vals, False))
    maps.sort(key=lambda m: m.values.tobytes())
    return maps


# -- dihedral toolkit ---------------------------------------------------------


def dihedral_rotation_cocycle(G: FiniteGroup, w: int) -> Cocycle2:
    """(r^i s^j, r^k s^l) -> omega^(j*k) with omega = zeta_n^w; table mod n."""
    if G.meta.get("family") != "dihedral":
        raise GroupError("dihedral group expected")
    n = G.meta["n"]
    i2 = np.tile(np.arange(n), 2)
    j1 = np.repeat(np.array([0, 1]), n)
    vals = (np.outer(j1, i2) * w) % n
    return Cocycle2(G, n, vals)


def dihedral_trivial_test(beta: Cocycle2):
    """Coboundary test on dihedral groups with an explicit witness.

    Solves the exponent congruences x^n = beta(r,r)...beta(r,r^{n-1}),
    x^2 = beta(r,r^{n-1}) beta(r^{n-1},s)^{-1} beta(s,r), y^2 = beta(s,s)
    and assembles the witness map; returns None when no solution exists.
    """
    G = beta.group
    if G.meta.get("family") != "dihedral":
        raise GroupError("dihedral group expected")
    n = G.meta["n"]
    N = beta.modulus
    v = beta.values

    def r(i):
        return i % n

    def s(i, j=1):
        return (j % 2) * n + (i % n)

    b_n = sum(int(v[r(1), r(t)]) for t in range(1, n)) % N
    b_2 = (int(v[r(1), r(n - 1)]) - int(v[r(n - 1), s(0)]) + int(v[s(0), r(1)])) % N
    y_2 = int(v[s(0), s(0)]) % N
    M0 = 2 * n * N
    scale = M0 // N
    ex = solve_mod(np.array([[n], [2]], dtype=np.int64), np.array([b_n * scale, b_2 * scale], dtype=np.int64), M0)
    ey = solve_mod(np.array([[2]], dtype=np.int64), np.array([y_2 * scale], dtype=np.int64), M0)
    if ex is None or ey is None:
        return None
    ex, ey = int(ex[0]), int(ey[0])
    prefix = np.zeros(n, dtype=np.int64)  # prefix[i] = sum_{t<i} beta(r, r^t), t >= 1
    for i in range(2, n):
        prefix[i] = prefix[i - 1] + int(v[r(1), r(i - 1)])
    vals = np.zeros(2 * n, dtype=np.int64)
    for j in (0, 1):
        for i in range(n):
            acc = -int(v[r(i), s(0, j)]) - int(prefix[i])
            acc = acc * scale + i * ex + j * ey
            vals[s(i, j)] = acc % M0
    mu = UnitMap(G, M0, vals, False)
    if np.any((coboundary(mu).values - beta.lift(M0).values) % M0):
        return None
    return mu


# -- H^2 computation -----------------------------------------------------------


@dataclass
class CohomologyGroup:
    """H^2(G, Z/N): invariant factors, class reps, and the k^x survivors."""

    group: FiniteGroup
    modulus: int
    invariant_factors: List[int]
    class_reps: List[Cocycle2]
    kx_reps: List[Cocycle2]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out


def _pair_vars(n: int, identity: int):
    """Variable indexing for normalized tables: pairs of non-identity elements."""
    others = np.array([x for x in range(n) if x != identity], dtype=np.int64)
    pos = np.full(n, -1, dtype=np.int64)
    pos[others] = np.arange(n - 1)
    return others, pos


def _cocycle_constraints(S: FiniteGroup) -> np.ndarray:
    """Constraint matrix for normalized 2-cocycles, rows (s, y, z), s a generator."""
    n = S.order
    e = S.identity
    others, pos = _pair_vars(n, e)
    nv = (n - 1) * (n - 1)
    T = S.table
    gens = S.generators
    A = np.zeros((len(gens) * n * n, nv), dtype=np.int64)
    Y, Z = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    Yf, Zf = Y.ravel(), Z.ravel()
    for si, s0 in enumerate(gens):
        rows = si * n * n + np.arange(n * n)
        terms = [
            (1, np.full(n * n, s0), Yf),
            (1, T[s0, Yf], Zf),
            (-1, Yf, Zf),
            (-1, np.full(n * n, s0), T[Yf, Zf]),
        ]
        for sign, a, b in terms:
            mask = (a != e) & (b != e)
            cols = pos[a[mask]] * (n - 1) + pos[b[mask]]
            np.add.at(A, (rows[mask], cols), sign)
    return A


def _delta_coboundary_vector(S: FiniteGroup, x: int) -> np.ndarray:
    """del(delta_x) as a vector over the normalized pair variables."""
    n = S.order
    e = S.identity
    others, pos = _pair_vars(n, e)
    vec = np.zeros((n - 1) * (n - 1), dtype=np.int64)
    ys = others
    vec[pos[x] * (n - 1) + pos[ys]] += 1
    vec[pos[ys] * (n - 1) + pos[x]] += 1
    U, V = np.meshgrid(others, others, indexing="ij")
    hit = S.table[U, V] == x
    cols = pos[U[hit]] * (n - 1) + pos[V[hit]]
    np.add.at(vec, cols, -1)
    return vec


def _h2_on_group(S: FiniteGroup, p: int, e: int):
    """Generators of H^2(S, Z/p^e): list of (table, order), independent."""
    q = p**e
    n = S.order
    if n == 1:
        return []
    A = _cocycle_constraints(S)
    diag = LocalDiagonalization(A, p, e)
    kernel = diag.kernel_generators()
    if not kernel:
        return []
    W = diag.W
    piv = diag.piv_vals
    rank = diag.rank
    gen_index = []  # (column, scale) per kernel generator
    orders = []
    for i, v in enumerate(piv):
        if v > 0:
            gen_index.append((i, p ** (e - v)))
            orders.append(p**v)
    for j in range(rank, diag.ncols):
        gen_index.append((j, 1))
        orders.append(q)
    k = len(gen_index)
    # express each delta-coboundary in kernel coordinates
    relations = [[orders[i] if j == i else 0 for j in range(k)] for i in range(k)]
    e_id = S.identity
    others = [x for x in range(n) if x != e_id]
    for x in others:
        b = _delta_coboundary_vector(S, x) % q
        y = (W @ b) % q
        crd = []
        for (col, scale), order in zip(gen_index, orders):
            yi = int(y[col])
            if scale > 1:
                if yi % scale:
                    raise GroupError("coboundary not in the cocycle kernel")
                crd.append((yi // scale) % order)
            else:
                crd.append(yi % q)
        relations.append(crd)
    h_orders, combos = quotient_structure(relations, k)
    # build generator tables
    others_arr, pos = _pair_vars(n, e_id)
    out = []
    for order, combo in zip(h_orders, combos):
        vec = np.zeros((n - 1) * (n - 1), dtype=np.int64)
        for coefc, (col, scale) in zip(combo, gen_index):
            vec = (vec + (coefc % q) * scale * diag.V[:, col]) % q
        table = np.zeros((n, n), dtype=np.int64)
        grid = np.array([x for x in range(n) if x != e_id])
        table[np.ix_(grid, grid)] = vec.reshape(n - 1, n - 1)
        out.append((table % q, order))
    return out


def _coset_transfer_data(G: FiniteGroup, sub_elems: Sequence[int], S: FiniteGroup, sigma: np.ndarray):
    """kappa tables for the transfer: g * t_i = t_{act[g,i]} * sub[kappa[g,i]]."""
    n = G.order
    members = set(int(x) for x in sub_elems)
    pos_in_S = {int(h): i for i, h in enumerate(sigma)}
    coset_of = np.full(n, -1, dtype=np.int64)
    reps = []
    for x in range(n):
        if coset_of[x] >= 0:
            continue
        c = len(reps)
        reps.append(x)
        for h in members:
            coset_of[G.mul(x, h)] = c
    r = len(reps)
    act = np.zeros((n, r), dtype=np.int64)
    kappa = np.zeros((n, r), dtype=np.int64)
    for g in range(n):
        for i, t in enumerate(reps):
            gt = G.mul(g, t)
            c = int(coset_of[gt])
            act[g, i] = c
            kappa[g, i] = pos_in_S[G.mul(G.inv(reps[c]), gt)]
    return act, kappa


def corestriction(G: FiniteGroup, sub_elems: Sequence[int], S: FiniteGroup, sigma: np.ndarray, beta_table: np.ndarray, q: int) -> np.ndarray:
    """Transfer of a 2-cocycle table on S up to G (mod q)."""
    act, kappa = _coset_transfer_data(G, sub_elems, S, sigma)
    n = G.order
    r = act.shape[1]
    out = np.zeros((n, n), dtype=np.int64)
    beta_table = np.asarray(beta_table, dtype=np.int64) % q
    for h in range(n):
        # cor(g, h) = sum_i beta(kappa(g, act[h, i]), kappa(h, i))
        cols = act[h]  # length r
        left = kappa[:, cols]  # (n, r)
        right = kappa[h]  # (r,)
        out[:, h] = beta_table[left, right].sum(axis=1) % q
    return out


def _h2_part(G: FiniteGroup, p: int, e: int, max_order: int):
    """One prime-power part of H^2(G, Z/p^e): (orders, generator tables)."""
    q = p**e
    sub = sylow_subgroup(G, p)
    if len(sub) == 1:
        return [], []
    S, sigma = subgroup_group(G, sub)
    if S.order > max_order:
        raise GroupError(f"Sylow subgroup order {S.order} exceeds the H^2 budget {max_order}")
    local = _h2_on_group(S, p, e)
    if not local:
        return [], []
    if S.order == G.order:
        # identity embedding; local generators are already exact
        tables = []
        orders = []
        inv = np.argsort(sigma)
        for table, order in local:
            big = table[np.ix_(inv, inv)]
            tables.append(big % q)
            orders.append(order)
        return orders, tables
    cor_tables = [corestriction(G, sub, S, sigma, t, q) for t, _ in local]
    local_orders = [o for _, o in local]
    # find all coefficient combinations that die on G
    trivial_rows = []
    combos = _box(local_orders)
    for vec in combos:
        if all(c == 0 for c in vec):
            continue
        acc = np.zeros((G.order, G.order), dtype=np.int64)
        for c, t in zip(vec, cor_tables):
            acc = (acc + c * t) % q
        if solve_del(G, acc, q) is not None:
            trivial_rows.append(list(vec))
    k = len(cor_tables)
    relations = [[local_orders[i] if j == i else 0 for j in range(k)] for i in range(k)]
    relations += trivial_rows
    h_orders, h_combos = quotient_structure(relations, k)
    tables = []
    for combo in h_combos:
        acc = np.zeros((G.order, G.order), dtype=np.int64)
        for c, t in zip(combo, cor_tables):
            acc = (acc + (c % q) * t) % q
        tables.append(acc)
    return h_orders, tables


def _box(orders: Sequence[int]):
    if not orders:
        return [()]
    rest = _box(orders[1:])
    return [(i,) + r for i in range(orders[0]) for r in rest]


def _merge_invariant_factors(parts: List[List[int]]) -> List[int]:
    """Combine per-prime cyclic orders into a divisibility chain."""
    by_prime: Dict[int, List[int]] = {}
    for orders in parts:
        for d in orders:
            (pp, ee), = prime_power_factors(d)
            by_prime.setdefault(pp, []).append(ee)
    for pp in by_prime:
        by_prime[pp].sort(reverse=True)
    depth = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for i in range(depth):
        f = 1
        for pp, exps in by_prime.items():
            if i < len(exps):
                f *= pp ** exps[i]
        factors.append(f)
    factors.sort()
    return factors


def h2_compute(G: FiniteGroup, modulus: int, max_order: int = 400) -> CohomologyGroup:
    """H^2(G, Z/modulus) with class representatives lifted to the modulus."""
    if modulus < 1:
        raise GroupError("modulus must be positive")
    relevant = [(p, e) for p, e in prime_power_factors(modulus) if G.order % p == 0]
    part_orders: List[List[int]] = []
    part_tables: List[List[np.ndarray]] = []
    part_moduli: List[int] = []
    for p, e in relevant:
        orders, tables = _h2_part(G, p, e, max_order)
        if orders:
            part_orders.append(orders)
            part_tables.append(tables)
            part_moduli.append(p**e)
    invariant_factors = _merge_invariant_factors(part_orders)
    # enumerate every class: product of per-part coefficient tuples
    crt = dict(crt_coefficients(modulus)) if modulus > 1 else {}
    reps: List[Cocycle2] = []
    labels: List[tuple] = []

    def build(label_parts):
        acc = np.zeros((G.order, G.order), dtype=np.int64)
        for (orders, tables, q), coeffs in zip(zip(part_orders, part_tables, part_moduli), label_parts):
            t = np.zeros((G.order, G.order), dtype=np.int64)
            for c, tab in zip(coeffs, tables):
                t = (t + c * tab) % q
            acc = (acc + t * crt[q]) % modulus
        return acc

    boxes = [_box(orders) for orders in part_orders]

    def rec(i, acc_label):
        if i == len(boxes):
            labels.append(tuple(acc_label))
            return
        for t in boxes[i]:
            rec(i + 1, acc_label + [t])

    rec(0, [])
    for label in labels:
        reps.append(Cocycle2(G, modulus, build(label), False))
    if not labels:
        labels = [()]
        reps = [zero_cocycle(G, modulus)]
    # k^x filter: subgroup of classes that die over k^x, then coset reps
    trivial_mask = [is_kx_trivial(rep) for rep in reps]
    label_pos = {lab: i for i, lab in enumerate(labels)}
    all_orders = [o for orders in part_orders for o in orders]

    def add_labels(a, b):
        flat_a = [x for t in a for x in t]
        flat_b = [x for t in b for x in t]
        summed = [(x + y) % d for x, y, d in zip(flat_a, flat_b, all_orders)]
        out = []
        pos = 0
        for orders in part_orders:
            out.append(tuple(summed[pos : pos + len(orders)]))
            pos += len(orders)
        return tuple(out)

    kernel = [lab for lab, triv in zip(labels, trivial_mask) if triv]
    assigned = {}
    kx_reps = []
    for lab in labels:
        if lab in assigned:
            continue
        coset = sorted(add_labels(lab, kl) for kl in kernel) or [lab]
        canonical = min(coset)
        for member in coset:
            assigned[member] = canonical
        kx_reps.append(reps[label_pos[canonical]])
    return CohomologyGroup(G, modulus, invariant_factors, reps, kx_reps)

"""Extension data (H, m, theta, a, tau) and their equivalence calculus.

A datum packages a finite group H, an automorphism theta with theta^m =
id, a scalar map a (exponents mod N_a) fixed by theta, and a normalized
2-cocycle tau (exponents mod N_tau) subject to

    sum_{i<m} tau(theta^i x, theta^i y) + a(x) + a(y) = a(xy).

Data classify the Hopf algebras built in the hopf module; two data give
isomorphic algebras (compatibly with the canonical gradings) exactly when
they are equivalent in the sense implemented by `equivalent`.

Completeness of the witness search over a finite modulus: condition (3)
forces del(phi) to take values in mu_N for N the common cocycle modulus,
hence phi^N is a character and phi takes values in mu_{N*exp(H)}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .actions import CocentralAction, _aut_stack, _perm_power
from .autos import GroupMap, automorphism_group, find_isomorphism, identity_map
from .cohomology import (
    Cocycle2,
    UnitMap,
    characters,
    coboundary,
    h2_compute,
    power_product,
    pullback,
    solve_del,
    zero_cocycle,
    zero_unit_map,
)
from .groups import FiniteGroup, GroupError, Subgroup, quotient_group, subgroup_group
from .linalg import units_mod


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class ExtensionDatum:
    group: FiniteGroup
    m: int
    theta: GroupMap
    a: UnitMap
    tau: Cocycle2

    def common_modulus(self) -> int:
        return _lcm(self.a.modulus, self.tau.modulus)

    def key(self) -> tuple:
        M = self.common_modulus()
        return (
            self.theta.arr.tobytes(),
            self.tau.lift(M).values.tobytes(),
            self.a.lift(M).values.tobytes(),
        )

    def __repr__(self):
        return f"ExtensionDatum({self.group.name}, m={self.m})"


@dataclass
class ValidationReport:
    issues: List[str]
    twist_witness: Optional[UnitMap] = None

    @property
    def ok(self) -> bool:
        return not self.issues


def validate(d: ExtensionDatum, check_twist_type: bool = False) -> ValidationReport:
    """Check every datum clause; optionally the graded-twist-type condition."""
    issues = []
    H, m = d.group, d.m
    if not (d.theta**m).is_identity():
        issues.append(f"theta^{m} is not the identity")
    if d.a.values[H.identity] % d.a.modulus:
        issues.append("a(1) != 1")
    if not np.array_equal(d.a.values[d.theta.arr], d.a.values):
        issues.append("a is not theta-invariant")
    M = d.common_modulus()
    try:
        P = power_product(d.tau, d.theta, m).lift(M)
    except GroupError as exc:
        issues.append(str(exc))
        return ValidationReport(issues)
    a = d.a.lift(M).values
    lhs = (P.values + a[:, None] + a[None, :] - a[H.table]) % M
    if lhs.any():
        issues.append("datum equation fails")
    witness = None
    if check_twist_type and not issues:
        witness = twist_type_witness(d)
        if witness is None:
            issues.append("datum is not of graded twist type")
    return ValidationReport(issues, witness)


def twist_type_witness(d: ExtensionDatum) -> Optional[UnitMap]:
    """mu: H -> mu_m certifying graded twist type, or None.

    Requires tau and a to take values in mu_m, mu with
    sum_i mu(theta^i x) = 0, del(mu) = tau - tau o (theta x theta) and
    a(x) = sum_k k mu(theta^-k x).
    """
    H, m = d.group, d.m
    # both scalar layers must consist of m-th roots of unity
    if ((d.tau.values * m) % d.tau.modulus).any():
        return None
    if ((d.a.values * m) % d.a.modulus).any():
        return None
    tau_m = (d.tau.values * m) // d.tau.modulus % m
    a_m = (d.a.values * m) // d.a.modulus % m
    theta_inv = d.theta.inverse_map()
    target = (tau_m - tau_m[np.ix_(d.theta.arr, d.theta.arr)]) % m
    mu0 = solve_del(H, target, m)
    if mu0 is None:
        return None
    pows = [np.arange(H.order)]
    for _ in range(m - 1):
        pows.append(d.theta.arr[pows[-1]])
    inv_pows = [np.arange(H.order)]
    for _ in range(m - 1):
        inv_pows.append(theta_inv.arr[inv_pows[-1]])
    for chi in characters(H, m):
        mu = (mu0 + chi.values) % m
        power_sum = np.zeros(H.order, dtype=np.int64)
        for p in pows:
            power_sum = (power_sum + mu[p]) % m
        if power_sum.any():
            continue
        acc = np.zeros(H.order, dtype=np.int64)
        for k in range(1, m):
            acc = (acc + k * mu[inv_pows[k]]) % m
        if np.array_equal(acc, a_m):
            return UnitMap(H, m, mu, False)
    return None


@dataclass
class SolveAResult:
    modulus: int
    particular: Optional[UnitMap]
    characters: List[UnitMap]
    symmetric: List[UnitMap]


def solve_a(H: FiniteGroup, m: int, theta: GroupMap, tau: Cocycle2) -> SolveAResult:
    """Scalar maps completing (H, m, theta, tau) to a datum.

    Solves the datum equation as del(a) = -P over Z/(N_tau * exp(H)) and
    filters the full character coset by theta-invariance.
    """
    modulus = tau.modulus * H.exponent()
    P = power_product(tau, theta, m)
    target = (-P.lift(modulus).values) % modulus
    a0 = solve_del(H, target, modulus)
    chars = characters(H, modulus)
    if a0 is None:
        return SolveAResult(modulus, None, chars, [])
    symmetric = []
    for chi in chars:
        vals = (a0 + chi.values) % modulus
        if np.array_equal(vals[theta.arr], vals):
            symmetric.append(UnitMap(H, modulus, vals, False))
    symmetric.sort(key=lambda u: u.values.tobytes())
    return SolveAResult(modulus, UnitMap(H, modulus, a0, False), chars, symmetric)


def transport(d: ExtensionDatum, f: GroupMap, l: int) -> ExtensionDatum:
    """The equivalent datum (H, f theta^l f^-1, l*(a o f^-1), sum_k tau o (theta^k f^-1))."""
    if math.gcd(l, d.m) != 1:
        raise GroupError(f"l={l} is not a unit mod {d.m}")
    H = d.group
    finv = f.inverse_map()
    new_theta = GroupMap(H, H, f.arr[_perm_power(d.theta.arr, l)[finv.arr]])
    new_a = UnitMap(H, d.a.modulus, (l * d.a.values[finv.arr]), False)
    acc = np.zeros((H.order, H.order), dtype=np.int64)
    cur = finv.arr
    for _ in range(l):
        acc = (acc + d.tau.values[np.ix_(cur, cur)]) % d.tau.modulus
        cur = d.theta.arr[cur]
    new_tau = Cocycle2(H, d.tau.modulus, acc, False)
    return ExtensionDatum(H, d.m, new_theta, new_a, new_tau)


def shift_cocycle(d: ExtensionDatum, tau2: Cocycle2) -> ExtensionDatum:
    """Equivalent datum with cohomologous cocycle tau2; a shifts by -sum mu o theta^i."""
    M = _lcm(_lcm(d.tau.modulus, tau2.modulus), d.common_modulus()) * d.group.exponent()
    diff = tau2.lift(M) - d.tau.lift(M)
    mu = solve_del(d.group, diff.values, M)
    if mu is None:
        raise GroupError("cocycles are not cohomologous at the working modulus")
    H = d.group
    acc = np.zeros(H.order, dtype=np.int64)
    cur = np.arange(H.order)
    for _ in range(d.m):
        acc = (acc + mu[cur]) % M
        cur = d.theta.arr[cur]
    new_a = UnitMap(H, M, d.a.lift(M).values - acc, False)
    return ExtensionDatum(H, d.m, d.theta, new_a, tau2)


def relabel(d: ExtensionDatum, psi: GroupMap) -> ExtensionDatum:
    """Move a datum along an isomorphism psi: d.group -> K."""
    K = psi.codomain
    inv = psi.inverse_map()
    theta_k = GroupMap(K, K, psi.arr[d.theta.arr[inv.arr]])
    a_k = UnitMap(K, d.a.modulus, d.a.values[inv.arr], False)
    tau_k = Cocycle2(K, d.tau.modulus, d.tau.values[np.ix_(inv.arr, inv.arr)], False)
    return ExtensionDatum(K, d.m, theta_k, a_k, tau_k)


@dataclass(frozen=True)
class EquivalenceWitness:
    f: GroupMap
    l: int
    phi: UnitMap


def verify_witness(d1: ExtensionDatum, d2: ExtensionDatum, w: EquivalenceWitness) -> bool:
    """Exact check of the three defining conditions of an equivalence."""
    H, m = d2.group, d1.m
    M = w.phi.modulus
    f, l, phi = w.f, w.l, w.phi.values
    finv = f.inverse_map().arr
    th2 = d2.theta.arr
    # (1) theta2^l = f theta1 f^-1
    if not np.array_equal(_perm_power(th2, l), f.arr[d1.theta.arr[finv]]):
        return False
    # (2) sum_k phi(theta2^k y) + l*a2(y) = a1(f^-1 y)
    a1 = d1.a.lift(M).values
    a2 = d2.a.lift(M).values
    acc = np.zeros(H.order, dtype=np.int64)
    cur = np.arange(H.order)
    for _ in range(m):
        acc = (acc + phi[cur]) % M
        cur = th2[cur]
    if ((acc + l * a2 - a1[finv]) % M).any():
        return False
    # (3) sum_{k<l} tau2(theta2^-k x, theta2^-k y) + phi(xy) = tau1(f^-1 x, f^-1 y) + phi(x) + phi(y)
    t1 = d1.tau.lift(M).values
    t2 = d2.tau.lift(M).values
    th2_inv = d2.theta.inverse_map().arr
    S = np.zeros((H.order, H.order), dtype=np.int64)
    cur = np.arange(H.order)
    for _ in range(l):
        S = (S + t2[np.ix_(cur, cur)]) % M
        cur = th2_inv[cur]
    lhs = (S + phi[H.table]) % M
    rhs = (t1[np.ix_(finv, finv)] + phi[:, None] + phi[None, :]) % M
    return bool(np.array_equal(lhs, rhs))


def equivalent(
    d1: ExtensionDatum, d2: ExtensionDatum, auts: Optional[List[GroupMap]] = None
) -> Optional[EquivalenceWitness]:
    """First equivalence witness in canonical search order, or None.

    l ascends over units mod m, f follows the canonical automorphism
    ordering, phi runs over the particular solution plus characters.
    Data on distinct isomorphic groups are compared by absorbing an
    isomorphism into the second datum first.
    """
    if d1.m != d2.m:
        return None
    if d1.group is not d2.group:
        psi = find_isomorphism(d2.group, d1.group)
        if psi is None:
            return None
        d2 = relabel(d2, psi)
    H, m = d1.group, d1.m
    M = _lcm(d1.common_modulus(), d2.common_modulus())
    Mphi = M * H.exponent()
    t1 = d1.tau.lift(Mphi).values
    t2 = d2.tau.lift(Mphi).values
    a1 = d1.a.lift(Mphi).values
    a2 = d2.a.lift(Mphi).values
    th1 = d1.theta.arr
    th2 = d2.theta.arr
    th2_inv = d2.theta.inverse_map().arr
    if auts is None:
        auts = automorphism_group(H)
    F, Finv = _aut_stack(H)
    chars = characters(H, Mphi)
    # theta2-power tables for condition (2)
    th2_pows = [np.arange(H.order)]
    for _ in range(m - 1):
        th2_pows.append(th2[th2_pows[-1]])
    char_sums = []
    for chi in chars:
        acc = np.zeros(H.order, dtype=np.int64)
        for p in th2_pows:
            acc = (acc + chi.values[p]) % Mphi
        char_sums.append(acc)
    for l in units_mod(m):
        th2_l = _perm_power(th2, l)
        cond1 = np.all(F[:, th1] == th2_l[F], axis=1)
        hits = np.nonzero(cond1)[0]
        if not hits.size:
            continue
        # S_l(x,y) = sum_{k<l} tau2(theta2^-k x, theta2^-k y)
        S = np.zeros((H.order, H.order), dtype=np.int64)
        cur = np.arange(H.order)
        for _ in range(l):
            S = (S + t2[np.ix_(cur, cur)]) % Mphi
            cur = th2_inv[cur]
        for fi in hits:
            finv = Finv[fi]
            # condition (3) additively: del(phi) = S_l - tau1 o (f^-1 x f^-1)
            R = (S - t1[np.ix_(finv, finv)]) % Mphi
            phi0 = solve_del(H, R, Mphi)
            if phi0 is None:
                continue
            acc0 = np.zeros(H.order, dtype=np.int64)
            for p in th2_pows:
                acc0 = (acc0 + phi0[p]) % Mphi
            target = (a1[finv] - l * a2) % Mphi
            for chi, csum in zip(chars, char_sums):
                if not ((acc0 + csum - target) % Mphi).any():
                    phi = UnitMap(H, Mphi, (phi0 + chi.values) % Mphi, False)
                    w = EquivalenceWitness(GroupMap(H, H, F[fi]), l, phi)
                    if not verify_witness(d1, d2, w):
                        raise GroupError("equivalence witness failed verification")
                    return w
    return None


@dataclass
class StructureGroups:
    z_tau_theta: Subgroup
    fixed_points: Subgroup
    g_group: FiniteGroup
    g0_group: FiniteGroup
    is_cyclic_datum: bool
    is_reduced: bool


def _scalar_pair_group(
    H: FiniteGroup, elems: Sequence[int], m: int, a: UnitMap, tau: Cocycle2, name: str
) -> FiniteGroup:
    """Group of pairs (x, lambda), lambda^m = a(x), product twisted by tau."""
    M = _lcm(m * a.modulus, tau.modulus)
    a_scale = M // a.modulus
    tau_l = tau.lift(M)
    step = M // m
    pairs = []
    for x in elems:
        # m*t = a(x)*a_scale mod M; solutions t0 + j*(M/m)
        rhs = int(a.values[x]) * a_scale % M
        if rhs % m:
            raise GroupError("scalar equation has no m-th root at this modulus")
        t0 = rhs // m
        for j in range(m):
            pairs.append((int(x), (t0 + j * step) % M))
    index = {p: i for i, p in enumerate(pairs)}
    size = len(pairs)
    table = np.zeros((size, size), dtype=np.int64)
    for i, (x, t) in enumerate(pairs):
        for j, (y, s) in enumerate(pairs):
            xy = H.mul(x, y)
            table[i, j] = index[(xy, (t + s + int(tau_l.values[x, y])) % M)]
    return FiniteGroup(table, name, None, {"family": "scalar_pairs"})


def structure_groups(d: ExtensionDatum) -> StructureGroups:
    """Central symmetric subgroup, fixed points, character groups and flags."""
    H, m = d.group, d.m
    tau = d.tau
    center = H.center()
    pows = [np.arange(H.order)]
    for _ in range(m - 1):
        pows.append(d.theta.arr[pows[-1]])
    z_elems = []
    for x in center:
        ok = True
        for p in pows:
            xi = int(p[x])
            if np.any((tau.values[xi, :] - tau.values[:, xi]) % tau.modulus):
                ok = False
                break
        if ok:
            z_elems.append(x)
    z_sub = Subgroup(H, tuple(z_elems))
    fixed = Subgroup(H, tuple(int(x) for x in np.nonzero(d.theta.arr == np.arange(H.order))[0]))
    g_group = _scalar_pair_group(H, fixed.elements, m, d.a, tau, f"G({H.name})")
    z_fixed = tuple(x for x in z_elems if d.theta.arr[x] == x)
    g0_group = _scalar_pair_group(H, z_fixed, m, d.a, tau, f"G0({H.name})")
    theta_trivial_on_z = all(d.theta.arr[x] == x for x in z_elems)
    is_cyclic = g0_group.is_cyclic() and theta_trivial_on_z
    return StructureGroups(
        z_tau_theta=z_sub,
        fixed_points=fixed,
        g_group=g_group,
        g0_group=g0_group,
        is_cyclic_datum=is_cyclic,
        is_reduced=len(z_elems) == 1,
    )


def datum_from_action(act: CocentralAction) -> ExtensionDatum:
    """Extension datum of a cocentral action, via the canonical section.

    tau is the factor set of the central extension, theta the induced
    automorphism, and a is assembled from the section defect of alpha as
    a(x) = sum_k k * mu(theta^-k x), all with values in mu_m.
    """
    G, m, z = act.group, act.m, act.z
    fiber = act.fiber()
    Q, proj = quotient_group(G, fiber)
    section = np.full(Q.order, -1, dtype=np.int64)
    for x in range(G.order):
        q = int(proj[x])
        if section[q] < 0 or x < section[q]:
            section[q] = x
    dlog = {int(t): k for k, t in enumerate(fiber)}
    n = Q.order
    tau_vals = np.zeros((n, n), dtype=np.int64)
    for q1 in range(n):
        s1 = int(section[q1])
        for q2 in range(n):
            s2 = int(section[q2])
            prod = G.mul(s1, s2)
            defect = G.mul(G.inv(int(section[proj[prod]])), prod)
            tau_vals[q1, q2] = dlog[defect]
    theta_arr = proj[act.alpha.arr[section]]
    theta = GroupMap(Q, Q, theta_arr)
    mu = np.zeros(n, dtype=np.int64)
    for q in range(n):
        img = int(act.alpha.arr[section[q]])
        defect = G.mul(G.inv(int(section[theta_arr[q]])), img)
        mu[q] = dlog[defect]
    theta_inv = theta.inverse_map()
    a_vals = np.zeros(n, dtype=np.int64)
    cur = np.arange(n)
    for k in range(1, m):
        cur = theta_inv.arr[cur]
        a_vals = (a_vals + k * mu[cur]) % m
    d = ExtensionDatum(Q, m, theta, UnitMap(Q, m, a_vals, False), Cocycle2(Q, m, tau_vals))
    report = validate(d, check_twist_type=True)
    if not report.ok:
        raise GroupError(f"action produced an invalid datum: {report.issues}")
    return d


@dataclass
class DatumClass:
    representative: ExtensionDatum
    members: List[ExtensionDatum]
    is_reduced: bool
    is_cyclic: bool
    is_commutative: bool
    is_cocommutative: bool

    @property
    def size(self) -> int:
        return len(self.members)


def datum_flags(d: ExtensionDatum) -> Tuple[bool, bool, bool, bool]:
    """(reduced, cyclic, commutative, cocommutative) for one datum."""
    sg = structure_groups(d)
    commutative = d.theta.is_identity()
    cocommutative = d.group.is_abelian() and d.tau.is_symmetric()
    return sg.is_reduced, sg.is_cyclic_datum, commutative, cocommutative


def enumerate_datum_classes(
    H: FiniteGroup,
    m: int,
    which: str = "reduced",
    theta_reps: Optional[List[GroupMap]] = None,
    tau_reps: Optional[List[Cocycle2]] = None,
    h2_max_order: int = 400,
) -> List[DatumClass]:
    """Equivalence classes of data over H, from a reduced representative pool.

    Pool: theta over conjugacy classes of automorphisms with theta^m = id,
    tau over cohomology classes surviving to k^x, a over all theta-invariant
    solutions of the datum equation.  Filters:

      all             every class
      noncommutative  theta != id and not cocommutative
      reduced         noncommutative with trivial central symmetric subgroup
      cyclic          data whose grading is universal-cyclic
    """
    if which not in ("all", "noncommutative", "reduced", "cyclic"):
        raise GroupError(f"unknown filter {which}")
    if theta_reps is None:
        theta_reps = theta_class_representatives(H, m)
    if tau_reps is None:
        tau_reps = h2_compute(H, H.order, max_order=h2_max_order).kx_reps
    auts = automorphism_group(H)
    pool: List[ExtensionDatum] = []
    for theta in theta_reps:
        for tau in tau_reps:
            sol = solve_a(H, m, theta, tau)
            for a in sol.symmetric:
                d = ExtensionDatum(H, m, theta, a, tau)
                pool.append(d)
    flags = [datum_flags(d) for d in pool]

    def keep(fl):
        reduced, cyclic, comm, cocomm = fl
        if which == "all":
            return True
        if which == "noncommutative":
            return (not comm) and (not cocomm)
        if which == "reduced":
            return reduced and (not comm) and (not cocomm)
        return cyclic

    keep_idx = [i for i, fl in enumerate(flags) if keep(fl)]
    pool = [pool[i] for i in keep_idx]
    flags = [flags[i] for i in keep_idx]
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

    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            if find(i) == find(j):
                continue
            if equivalent(pool[i], pool[j], auts) is not None:
                union(i, j)
    grouped: Dict[int, List[int]] = {}
    for i in range(len(pool)):
        grouped.setdefault(find(i), []).append(i)
    out = []
    for root, members in grouped.items():
        rep = min((pool[i] for i in members), key=lambda d: d.key())
        fl = flags[members[0]]
        out.append(
            DatumClass(
                representative=rep,
                members=[pool[i] for i in members],
                is_reduced=fl[0],
                is_cyclic=fl[1],
                is_commutative=fl[2],
                is_cocommutative=fl[3],
            )
        )
    out.sort(key=lambda c: c.representative.key())
    return out


def theta_class_representatives(H: FiniteGroup, m: int) -> List[GroupMap]:
    """Conjugacy class representatives of automorphisms with theta^m = id."""
    auts = automorphism_group(H)
    pool = [f for f in auts if (f**m).is_identity()]
    index = {f.arr.tobytes(): i for i, f in enumerate(pool)}
    F, Finv = _aut_stack(H)
    seen = set()
    reps = []
    for f in pool:
        key = f.arr.tobytes()
        if key in seen:
            continue
        conj_all = np.take_along_axis(Finv, f.arr[F], axis=1)
        orbit = {conj_all[r].tobytes() for r in range(conj_all.shape[0])}
        seen |= orbit
        reps.append(min((pool[index[k]] for k in orbit if k in index), key=lambda g: g.arr.tobytes()))
    reps.sort(key=lambda g: g.arr.tobytes())
    return reps

"""Exact linear algebra mod N and over Z, sized for small dense systems.

Everything here works with numpy int64 matrices.  Composite moduli are
split into prime powers (CRT); within one prime power Z/p^e we use a
local Smith-style diagonalization (valuation-minimal pivoting), which is
enough to solve linear systems and to extract kernel generators together
with their orders.
"""

from __future__ import annotations

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np


def prime_power_factors(n: int) -> List[Tuple[int, int]]:
    """Factor n into [(p, e), ...] with p ascending."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def units_mod(m: int) -> List[int]:
    return [l for l in range(1, m + 1) if math.gcd(l, m) == 1] if m > 1 else [1]


def crt_coefficients(modulus: int) -> List[Tuple[int, int]]:
    """For each prime power q | modulus return (q, c) with c = 1 mod q, 0 mod modulus/q."""
    out = []
    for p, e in prime_power_factors(modulus):
        q = p**e
        rest = modulus // q
        c = rest * pow(rest, -1, q)
        out.append((q, c % modulus))
    return out


def _valuations(M: np.ndarray, p: int, e: int) -> np.ndarray:
    """Entrywise p-adic valuation of M (mod p^e); zeros get e+1."""
    vals = np.full(M.shape, e + 1, dtype=np.int64)
    t = M.copy()
    mask = t != 0
    vals[mask] = 0
    v = 0
    while mask.any() and v < e:
        mask = mask & (t % p == 0)
        t = np.where(mask, t // p, t)
        vals[mask] += 1
        v += 1
    return vals


class LocalDiagonalization:
    """U*A*V = diag(p^v_i) over Z/p^e with the column transform tracked.

    Row operations are folded into the transformed right-hand side (if
    given); V and its inverse W are tracked so kernels and particular
    solutions can be pulled back to the original coordinates.
    """

    def __init__(self, A: np.ndarray, p: int, e: int, rhs: Optional[np.ndarray] = None):
        q = p**e
        M = np.asarray(A, dtype=np.int64) % q
        if M.ndim != 2:
            raise ValueError("matrix expected")
        nrows, ncols = M.shape
        b = None if rhs is None else np.asarray(rhs, dtype=np.int64).copy() % q
        V = np.eye(ncols, dtype=np.int64)
        W = np.eye(ncols, dtype=np.int64)
        piv_vals: List[int] = []
        r = 0
        limit = min(nrows, ncols)
        while r < limit:
            # fast path: first unit entry scanning columns left to right
            i0 = j0 = -1
            v = 0
            for j in range(r, ncols):
                nz = np.nonzero(M[r:, j] % p)[0]
                if nz.size:
                    i0, j0 = r + int(nz[0]), j
                    break
            if i0 < 0:
                # no unit anywhere: full valuation scan for the minimal pivot
                sub = M[r:, r:]
                vals = _valuations(sub, p, e)
                si, sj = np.unravel_index(int(np.argmin(vals)), vals.shape)
                v = int(vals[si, sj])
                if v > e:
                    break
                i0, j0 = si + r, sj + r
            if i0 != r:
                M[[r, i0]] = M[[i0, r]]
                if b is not None:
                    b[[r, i0]] = b[[i0, r]]
            if j0 != r:
                M[:, [r, j0]] = M[:, [j0, r]]
                V[:, [r, j0]] = V[:, [j0, r]]
                W[[r, j0]] = W[[j0, r]]
            pv = p**v
            unit = int(M[r, r]) // pv
            inv = pow(unit, -1, q)
            M[r] = (M[r] * inv) % q
            if b is not None:
                b[r] = (b[r] * inv) % q
            # clear below the pivot (row ops); entries have valuation >= v.
            # Rows below r are zero left of column r, columns right of r in
            # pivot rows are zero, so updates stay inside M[r:, r:].
            col = M[r + 1 :, r]
            if col.any():
                factors = col // pv
                M[r + 1 :, r:] = (M[r + 1 :, r:] - np.outer(factors, M[r, r:])) % q
                if b is not None:
                    b[r + 1 :] = (b[r + 1 :] - factors * b[r]) % q
            # clear to the right of the pivot (column ops)
            row = M[r, r + 1 :]
            if row.any():
                factors = row // pv
                M[r:, r + 1 :] = (M[r:, r + 1 :] - np.outer(M[r:, r], factors)) % q
                V[:, r + 1 :] = (V[:, r + 1 :] - np.outer(V[:, r], factors)) % q
                W[r] = (W[r] + factors @ W[r + 1 :]) % q
            piv_vals.append(v)
            r += 1
        self.p, self.e, self.q = p, e, q
        self.M, self.V, self.W = M, V, W
        self.rhs = b
        self.piv_vals = piv_vals
        self.rank = len(piv_vals)
        self.ncols = ncols
        self.nrows = nrows

    def particular_solution(self) -> Optional[np.ndarray]:
        """A canonical x with A x = rhs, or None; free variables set to 0."""
        if self.rhs is None:
            raise ValueError("no right-hand side was supplied")
        b = self.rhs
        if self.rank < self.nrows and (b[self.rank :] % self.q).any():
            return None
        y = np.zeros(self.ncols, dtype=np.int64)
        for i, v in enumerate(self.piv_vals):
            pv = self.p**v
            if int(b[i]) % pv:
                return None
            y[i] = (int(b[i]) // pv) % (self.q // pv)
        return (self.V @ y) % self.q

    def kernel_generators(self) -> List[Tuple[np.ndarray, int]]:
        """Independent generators (vector, order) of {x : A x = 0 mod p^e}.

        The kernel is the internal direct sum of the cyclic groups they
        generate; orders are p-powers.
        """
        gens = []
        for i, v in enumerate(self.piv_vals):
            if v > 0:
                vec = (self.V[:, i] * self.p ** (self.e - v)) % self.q
                gens.append((vec, self.p**v))
        for j in range(self.rank, self.ncols):
            gens.append((self.V[:, j] % self.q, self.q))
        return gens


def solve_mod(A: np.ndarray, b: np.ndarray, modulus: int) -> Optional[np.ndarray]:
    """Canonical solution of A x = b mod a (possibly composite) modulus."""
    if modulus == 1:
        return np.zeros(np.asarray(A).shape[1], dtype=np.int64)
    parts = []
    for q, c in crt_coefficients(modulus):
        p, e = prime_power_factors(q)[0]
        diag = LocalDiagonalization(A, p, e, rhs=b)
        x = diag.particular_solution()
        if x is None:
            return None
        parts.append((x, c))
    out = np.zeros(np.asarray(A).shape[1], dtype=np.int64)
    for x, c in parts:
        out = (out + x * c) % modulus
    return out


def snf_diag(rows: Sequence[Sequence[int]], ncols: int):
    """Diagonalize an integer relation matrix: U*R*V = diag(d_i).

    Returns (diag, V, W) with W = V^{-1}; U is not tracked.  The diagonal
    is not normalized to a divisibility chain (not needed when all the
    entries are powers of one prime).  Pure-Python ints, so no overflow.
    """
    R = [list(map(int, r)) for r in rows]
    nrows = len(R)
    V = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    W = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def col_op(j, k, f):
        # col_j -= f * col_k ; inverse op on W rows
        for i in range(nrows):
            R[i][j] -= f * R[i][k]
        for i in range(ncols):
            V[i][j] -= f * V[i][k]
        for c in range(ncols):
            W[k][c] += f * W[j][c]

    def row_op(i, k, f):
        for j in range(ncols):
            R[i][j] -= f * R[k][j]

    def swap_cols(j, k):
        for i in range(nrows):
            R[i][j], R[i][k] = R[i][k], R[i][j]
        for i in range(ncols):
            V[i][j], V[i][k] = V[i][k], V[i][j]
        W[j], W[k] = W[k], W[j]

    def swap_rows(i, k):
        R[i], R[k] = R[k], R[i]

    diag = []
    t = 0
    while t < min(nrows, ncols):
        # locate minimal nonzero entry in R[t:, t:]
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                a = R[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        _, i0, j0 = best
        if i0 != t:
            swap_rows(t, i0)
        if j0 != t:
            swap_cols(t, j0)
        while True:
            done = True
            for i in range(t + 1, nrows):
                if R[i][t]:
                    f = R[i][t] // R[t][t]
                    row_op(i, t, f)
                    if R[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, ncols):
                if R[t][j]:
                    f = R[t][j] // R[t][t]
                    col_op(j, t, f)
                    if R[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        d = R[t][t]
        if d < 0:
            for i in range(nrows):
                R[i][t] = -R[i][t]
            for i in range(ncols):
                V[i][t] = -V[i][t]
            for c in range(ncols):
                W[t][c] = -W[t][c]
            d = -d
        diag.append(d)
        t += 1
    diag += [0] * (ncols - len(diag))
    return diag, V, W


def quotient_structure(relation_rows: Sequence[Sequence[int]], ncols: int):
    """Structure of Z^ncols / <relation rows>.

    Returns (orders, gen_combos): orders[i] > 1 are the cyclic orders of a
    minimal generating set, and gen_combos[i] is the coefficient vector of
    that generator in the ambient Z^ncols basis.  Requires the quotient to
    be finite.
    """
    diag, V, W = snf_diag(relation_rows, ncols)
    orders = []
    combos = []
    for i, d in enumerate(diag):
        if d == 0:
            raise ValueError("quotient is infinite")
        if d > 1:
            orders.append(d)
            combos.append(list(W[i]))
    return orders, combos

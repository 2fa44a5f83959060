"""Row canonical form over a prime field F_p.

The elimination is blocked Gauss-Jordan on a dense float64 array. Each
column panel is reduced with plain integer row operations to find its
pivots; the trailing update is a single matrix product, exact because every
partial sum stays below 2**53.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .matrix import SparseIntMatrix

_EXACT = 2**53

DEFAULT_PRIME = 101
CONFIRM_PRIME = 65521


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class ModularRCF:
    """Reduced row echelon form over F_p; ``rows`` is ``rank x ncols`` with entries in ``[0, p)``."""

    p: int
    rows: np.ndarray
    pivots: tuple[int, ...]
    nrows: int
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def nullity(self) -> int:
        return self.ncols - self.rank

    @property
    def free_columns(self) -> list[int]:
        piv = set(self.pivots)
        return [j for j in range(self.ncols) if j not in piv]

    def nullspace(self) -> list[np.ndarray]:
        """Canonical F_p kernel basis: free variable ``f`` set to 1, in free-column order."""
        piv = np.asarray(self.pivots, dtype=np.int64)
        out = []
        for f in self.free_columns:
            v = np.zeros(self.ncols, dtype=np.int64)
            v[f] = 1
            if len(piv):
                v[piv] = (-self.rows[:, f].astype(np.int64)) % self.p
            out.append(v)
        return out

    def term_counts(self) -> list[int]:
        """Number of nonzero entries of each canonical kernel vector, in free-column order."""
        if not self.rank:
            return [1] * self.nullity
        nz = np.count_nonzero(self.rows, axis=0)
        return [1 + int(nz[f]) for f in self.free_columns]


def _dense_mod(a: "SparseIntMatrix | Sequence[Sequence[int]] | np.ndarray", p: int) -> np.ndarray:
    if isinstance(a, SparseIntMatrix):
        m = np.zeros((a.nrows, a.ncols), dtype=np.float64)
        if a.entries:
            idx = np.array(list(a.entries.keys()), dtype=np.int64)
            vals = np.array([v % p for v in a.entries.values()], dtype=np.float64)
            m[idx[:, 0], idx[:, 1]] = vals
        return m
    if isinstance(a, np.ndarray):
        arr = np.mod(a.astype(np.int64), p).astype(np.float64)
    else:
        arr = np.array([[int(x) % p for x in row] for row in a], dtype=np.float64)
    if arr.ndim != 2:
        arr = arr.reshape(len(a), -1)
    return arr


def _inverse_mod(b: np.ndarray, p: int) -> np.ndarray:
    s = b.shape[0]
    aug = np.concatenate([b.astype(np.int64) % p, np.eye(s, dtype=np.int64)], axis=1)
    for j in range(s):
        nz = np.flatnonzero(aug[j:, j]) + j
        i = nz[0]
        if i != j:
            aug[[i, j]] = aug[[j, i]]
        aug[j] = aug[j] * pow(int(aug[j, j]), -1, p) % p
        col = aug[:, j].copy()
        col[j] = 0
        rows = np.flatnonzero(col)
        if len(rows):
            aug[rows] = (aug[rows] - np.outer(col[rows], aug[j])) % p
    return aug[:, s:]


def _reduce(x: np.ndarray, p: int) -> np.ndarray:
    """In-place reduction of exact integer-valued floats into ``[0, p)``."""
    q = x * (1.0 / p)
    np.floor(q, out=q)
    q *= p
    x -= q
    # the reciprocal can be off by one ulp; fix the few stragglers
    x[x < 0] += p
    x[x >= p] -= p
    return x


def _matmul_mod(x: np.ndarray, y: np.ndarray, p: int, chunk: int) -> np.ndarray:
    inner = x.shape[1]
    if inner <= chunk:
        return _reduce(x @ y, p)
    out = np.zeros((x.shape[0], y.shape[1]), dtype=np.float64)
    for k in range(0, inner, chunk):
        out += x[:, k:k + chunk] @ y[k:k + chunk]
        _reduce(out, p)
    return out


def rcf_modular(a: "SparseIntMatrix | Sequence[Sequence[int]] | np.ndarray", p: int = DEFAULT_PRIME, block: int = 128) -> ModularRCF:
    """Row canonical form of an integer matrix reduced modulo the prime ``p``.

    Pivots are the first independent columns (the RCF is unique, so the
    result does not depend on the blocking).
    """
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if (p - 1) ** 2 * 2 >= _EXACT:
        raise ValueError(f"prime {p} too large for exact float64 elimination")
    m = _dense_mod(a, p)
    nrows, ncols = m.shape
    # largest inner dimension whose dot products stay exact, with room for the subtraction
    chunk = max(1, min(4096, (_EXACT // (p - 1) ** 2) - 2))
    block = max(1, min(block, chunk))
    is_pivot = np.zeros(nrows, dtype=bool)
    pivots: list[tuple[int, int]] = []
    c = 0
    while c < ncols and len(pivots) < nrows:
        cend = min(c + block, ncols)
        cand = np.flatnonzero(~is_pivot)
        q = m[cand, c:cend].astype(np.int64)
        live = np.flatnonzero(q.any(axis=1))
        q = q[live]
        used = np.zeros(len(live), dtype=bool)
        sel_rows: list[int] = []
        sel_cols: list[int] = []
        for j in range(cend - c):
            nz = np.flatnonzero((q[:, j] != 0) & ~used)
            if not len(nz):
                continue
            i = nz[0]
            used[i] = True
            sel_rows.append(i)
            sel_cols.append(j)
            q[i, j:] = q[i, j:] * pow(int(q[i, j]), -1, p) % p
            rest = nz[1:]
            if len(rest):
                q[rest, j:] = (q[rest, j:] - np.outer(q[rest, j], q[i, j:])) % p
        if sel_rows:
            s_rows = cand[live[np.asarray(sel_rows)]]
            j_cols = c + np.asarray(sel_cols)
            binv = _inverse_mod(m[np.ix_(s_rows, j_cols)], p).astype(np.float64)
            rs = _matmul_mod(binv, m[s_rows, c:], p, chunk)
            touched = np.flatnonzero(m[:, j_cols].any(axis=1))
            if len(touched) > 0.8 * nrows:
                tail = m[:, c:]
                tail -= _matmul_mod(m[:, j_cols], rs, p, chunk)
                tail[tail < 0] += p
            elif len(touched):
                upd = _matmul_mod(m[np.ix_(touched, j_cols)], rs, p, chunk)
                blockv = m[touched, c:] - upd
                blockv[blockv < 0] += p
                m[touched, c:] = blockv
            m[s_rows, c:] = rs
            is_pivot[s_rows] = True
            pivots.extend(zip(j_cols.tolist(), s_rows.tolist()))
        c = cend
    pivots.sort()
    order = [r for _, r in pivots]
    rows = m[order].astype(np.int64) if order else np.zeros((0, ncols), dtype=np.int64)
    return ModularRCF(p, rows, tuple(col for col, _ in pivots), nrows, ncols)


def rank_modular(a, p: int = DEFAULT_PRIME) -> int:
    return rcf_modular(a, p).rank

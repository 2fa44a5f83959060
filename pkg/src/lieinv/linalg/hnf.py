"""Hermite normal form with a unimodular transform, and integer kernels from it."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .matrix import SparseIntMatrix


@dataclass(frozen=True)
class HNFResult:
    """``U * A == H`` with ``H`` in Hermite normal form and ``det(U) == +-1``."""

    H: list[list[int]]
    U: list[list[int]]
    rank: int
    pivots: tuple[int, ...]


def _dense(a: "SparseIntMatrix | Sequence[Sequence[int]]") -> list[list[int]]:
    if isinstance(a, SparseIntMatrix):
        return a.to_dense()
    return [[int(x) for x in row] for row in a]


def _addmul(dst: list[int], src: list[int], q: int) -> None:
    """dst -= q * src, in place."""
    for k, s in enumerate(src):
        if s:
            dst[k] -= q * s


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b (b != 0)."""
    if b < 0:
        a, b = -a, -b
    return (2 * a + b) // (2 * b)


def hnf(a: "SparseIntMatrix | Sequence[Sequence[int]]", ncols: int | None = None) -> HNFResult:
    """Row-style Hermite normal form by Euclidean elimination down each column.

    At each column the row with the smallest nonzero entry becomes the
    pivot and the others are reduced against it with rounded quotients,
    which keeps the transform entries from growing faster than necessary.
    Entries above each pivot are then reduced into ``[0, pivot)``.
    """
    h = _dense(a)
    m = len(h)
    n = len(h[0]) if m else (ncols or 0)
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    pivots: list[int] = []
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if h[i][j]]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(h[i][j]))
            if k != r:
                h[k], h[r] = h[r], h[k]
                u[k], u[r] = u[r], u[k]
            pv = h[r][j]
            done = True
            for i in range(r + 1, m):
                x = h[i][j]
                if not x:
                    continue
                q = _round_div(x, pv)
                _addmul(h[i], h[r], q)
                _addmul(u[i], u[r], q)
                if h[i][j]:
                    done = False
            if done:
                break
        if r >= m or not h[r][j]:
            continue
        if h[r][j] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        pv = h[r][j]
        for i in range(r):
            q = h[i][j] // pv
            if q:
                _addmul(h[i], h[r], q)
                _addmul(u[i], u[r], q)
        pivots.append(j)
        r += 1
    return HNFResult(h, u, r, tuple(pivots))


def is_hnf(h: Sequence[Sequence[int]]) -> bool:
    """Check the four Hermite normal form conditions entry by entry."""
    m = len(h)
    n = len(h[0]) if m else 0
    pivots = []
    r = 0
    for i in range(m):
        row = h[i]
        lead = next((j for j in range(n) if row[j]), None)
        if lead is None:
            break
        pivots.append(lead)
        r += 1
    for i in range(r, m):
        if any(h[i]):
            return False
    for k in range(1, r):
        if pivots[k] <= pivots[k - 1]:
            return False
    for i, ji in enumerate(pivots):
        if h[i][ji] < 1:
            return False
        for k in range(i):
            if not 0 <= h[k][ji] < h[i][ji]:
                return False
    return True


def integer_nullspace(a: "SparseIntMatrix | Sequence[Sequence[int]]") -> list[list[int]]:
    """A lattice basis of ``{v in Z^n : A v = 0}`` from the HNF of the transpose.

    If ``U A^t = H`` with rank ``r``, the last ``n - r`` rows of ``U`` form the basis.
    """
    if isinstance(a, SparseIntMatrix):
        at = a.transpose().to_dense()
        n = a.ncols
    else:
        rows = _dense(a)
        n = len(rows[0]) if rows else 0
        at = [list(col) for col in zip(*rows)] if rows else [[] for _ in range(n)]
    res = hnf(at, ncols=len(at[0]) if at and at[0] else 0)
    return [list(row) for row in res.U[res.rank:]] if n else []


def hnf_rows(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Nonzero rows of the HNF of the stacked vectors: a canonical lattice invariant."""
    if not vectors:
        return []
    res = hnf(vectors)
    return [list(row) for row in res.H[:res.rank]]


def same_lattice(b1: Sequence[Sequence[int]], b2: Sequence[Sequence[int]]) -> bool:
    return hnf_rows(b1) == hnf_rows(b2)


def lattice_index(vectors: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by independent rows ``B`` in its saturation.

    Equals the gcd of the maximal minors of ``B``, read off as the product of
    the pivots of the HNF of ``B^t``. A value of 1 means the rows generate
    every integer vector in their rational span.
    """
    if not vectors:
        return 1
    bt = [list(col) for col in zip(*vectors)]
    res = hnf(bt)
    if res.rank != len(vectors):
        raise ValueError("vectors are linearly dependent")
    out = 1
    for i, j in enumerate(res.pivots):
        out *= res.H[i][j]
    return out


def _prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def _left_kernel_mod(rows: list[list[int]], p: int) -> list[int] | None:
    """A nonzero ``c`` with ``sum c_i rows_i = 0 (mod p)``, or None."""
    k = len(rows)
    n = len(rows[0])
    # Gauss-Jordan on [rows | I]; a row whose left part vanishes carries its combination
    work = [[x % p for x in r] + [int(i == j) for j in range(k)] for i, r in enumerate(rows)]
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, k) if work[i][col]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = pow(work[rank][col], -1, p)
        work[rank] = [x * inv % p for x in work[rank]]
        for i in range(k):
            if i != rank and work[i][col]:
                f = work[i][col]
                work[i] = [(x - f * y) % p for x, y in zip(work[i], work[rank])]
        rank += 1
    if rank == k:
        return None
    return work[rank][n:]


def saturate(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of ``Z^n`` intersected with the rational span of independent rows.

    Works prime by prime on the lattice index: while some combination of
    the rows is divisible by ``p``, one row is replaced by that combination
    divided by ``p``, which enlarges the lattice by a factor ``p``.
    """
    b = [list(map(int, v)) for v in vectors]
    if not b:
        return b
    for p in _prime_factors(lattice_index(b)):
        while True:
            c = _left_kernel_mod(b, p)
            if c is None:
                break
            i = max(j for j, x in enumerate(c) if x)
            inv = pow(c[i], -1, p)
            c = [x * inv % p for x in c]
            comb = [sum(cj * row[t] for cj, row in zip(c, b)) for t in range(len(b[0]))]
            b[i] = [x // p for x in comb]
    return b

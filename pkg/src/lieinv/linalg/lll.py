"""LLL lattice basis reduction in exact integer arithmetic.

The Gram-Schmidt data is kept as the integers ``d_i`` (Gram determinants)
and ``lam[k][j] = d_{j+1} * mu_{k,j}``, so no rationals are formed during
the reduction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class DependentVectorsError(ValueError):
    """The input rows are linearly dependent."""


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction | int | float | str = Fraction(3, 4)) -> list[list[int]]:
    """Return an LLL-reduced basis of the lattice spanned by the rows of ``basis``.

    ``delta`` must lie in (1/4, 1]; floats are converted exactly. The output
    is size-reduced (``|mu| <= 1/2``) and satisfies the Lovasz condition
    ``|b*_k|^2 >= (delta - mu_{k,k-1}^2) |b*_{k-1}|^2``.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta <= 1:
        raise ValueError("delta must lie in (1/4, 1]")
    da, db = delta.numerator, delta.denominator
    b = [list(map(int, row)) for row in basis]
    n = len(b)
    if n == 0:
        return []
    d = [0] * (n + 1)  # d[i] = Gram determinant of the first i vectors; d[0] = 1
    d[0] = 1
    lam = [[0] * n for _ in range(n)]

    def gram_schmidt_row(k: int) -> None:
        for j in range(k + 1):
            u = _dot(b[k], b[j])
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            else:
                if u == 0:
                    raise DependentVectorsError("input vectors are linearly dependent")
                d[k + 1] = u

    def size_reduce(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            bl, bk = b[l], b[k]
            for t in range(len(bk)):
                bk[t] -= q * bl[t]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k: int, kmax: int) -> None:
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lk = lam[k][k - 1]
        big = (d[k - 1] * d[k + 1] + lk * lk) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lk * t) // d[k]
            lam[i][k - 1] = (big * t + lk * lam[i][k]) // d[k + 1]
        d[k] = big

    gram_schmidt_row(0)
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            gram_schmidt_row(k)
        while True:
            size_reduce(k, k - 1)
            # Lovasz: db * d_{k+1} d_{k-1} >= da * d_k^2 - db * lam^2 (indices shifted by one)
            if db * d[k + 1] * d[k - 1] < da * d[k] * d[k] - db * lam[k][k - 1] ** 2:
                swap(k, kmax)
                k = max(1, k - 1)
            else:
                break
        for l in range(k - 2, -1, -1):
            size_reduce(k, l)
        k += 1
    return b


def gram_schmidt(basis: Sequence[Sequence[int]]) -> tuple[list[list[Fraction]], list[list[Fraction]]]:
    """Classical rational Gram-Schmidt: returns ``(b_star, mu)``."""
    bstar: list[list[Fraction]] = []
    mu = [[Fraction(0)] * len(basis) for _ in basis]
    norms: list[Fraction] = []
    for i, v in enumerate(basis):
        w = [Fraction(x) for x in v]
        for j in range(i):
            if norms[j] == 0:
                raise DependentVectorsError("input vectors are linearly dependent")
            mu[i][j] = sum(Fraction(x) * y for x, y in zip(v, bstar[j])) / norms[j]
            w = [a - mu[i][j] * c for a, c in zip(w, bstar[j])]
        bstar.append(w)
        norms.append(sum(x * x for x in w))
    return bstar, mu


def is_lll_reduced(basis: Sequence[Sequence[int]], delta: Fraction | float | str = Fraction(3, 4)) -> bool:
    """Independent check of size reduction and the Lovasz condition with rational Gram-Schmidt."""
    delta = Fraction(delta)
    if not basis:
        return True
    bstar, mu = gram_schmidt(basis)
    norms = [sum(x * x for x in w) for w in bstar]
    if any(nv == 0 for nv in norms):
        return False
    for i in range(len(basis)):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, len(basis)):
        if norms[k] < (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            return False
    return True

"""Row canonical form over Q and the canonical nullspace basis read from it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .matrix import SparseIntMatrix, as_rows, sqnorm


@dataclass(frozen=True)
class RCF:
    """Reduced row echelon form: ``rows[i]`` has a 1 in column ``pivots[i]``."""

    rows: tuple[dict[int, Fraction], ...]
    pivots: tuple[int, ...]
    nrows: int
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def free_columns(self) -> list[int]:
        piv = set(self.pivots)
        return [j for j in range(self.ncols) if j not in piv]

    def dense(self) -> list[list[Fraction]]:
        """The full ``nrows x ncols`` form, zero rows at the bottom."""
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                out[i][j] = v
        return out


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _integer_row(row: dict[int, object]) -> dict[int, int]:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    if den == 1:
        return {j: int(v) for j, v in row.items() if v}
    return {j: int(v * den) for j, v in row.items() if v}


def rcf_rational(a: "SparseIntMatrix | Sequence[Sequence]") -> RCF:
    """Exact reduced row echelon form over the rationals.

    Rows are eliminated with fraction-free integer arithmetic (each stored
    row kept primitive) and divided by their pivots at the end. The result is
    the unique RCF, so the row order of the input does not matter.
    """
    rows, ncols = as_rows(a)
    nrows = len(rows)
    pivot_rows: dict[int, dict[int, int]] = {}
    for raw in rows:
        r = _integer_row(raw)
        if not r:
            continue
        for c in [c for c in r if c in pivot_rows]:
            a_c = r.get(c)
            if not a_c:
                continue
            prow = pivot_rows[c]
            pv = prow[c]
            g = gcd(pv, a_c)
            m_r, m_p = pv // g, a_c // g
            new = {j: v * m_r for j, v in r.items()}
            for j, v in prow.items():
                x = new.get(j, 0) - m_p * v
                if x:
                    new[j] = x
                else:
                    new.pop(j, None)
            r = _primitive(new)
        if not r:
            continue
        lead = min(r)
        if r[lead] < 0:
            r = {j: -v for j, v in r.items()}
        lv = r[lead]
        for c, prow in pivot_rows.items():
            b = prow.get(lead)
            if not b:
                continue
            g = gcd(lv, b)
            m_p, m_r = lv // g, b // g
            new = {j: v * m_p for j, v in prow.items()}
            for j, v in r.items():
                x = new.get(j, 0) - m_r * v
                if x:
                    new[j] = x
                else:
                    new.pop(j, None)
            pivot_rows[c] = _primitive(new)
        pivot_rows[lead] = r
    pivots = tuple(sorted(pivot_rows))
    out_rows = []
    for c in pivots:
        prow = pivot_rows[c]
        pv = prow[c]
        out_rows.append({j: Fraction(v, pv) for j, v in sorted(prow.items())})
    return RCF(tuple(out_rows), pivots, nrows, ncols)


def _canonical_sign(v: list[int]) -> list[int]:
    for x in v:
        if x:
            return v if x > 0 else [-y for y in v]
    return v


def primitive_vector(v: Sequence[object]) -> list[int]:
    """Scale a rational vector to coprime integers with first nonzero entry positive."""
    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return _canonical_sign(ints)


def canonical_kernel_rational(r: RCF) -> list[list[Fraction]]:
    """Kernel vectors with free variable ``f`` set to 1, in free-column order (unscaled)."""
    out = []
    for f in r.free_columns:
        v = [Fraction(0)] * r.ncols
        v[f] = Fraction(1)
        for c, row in zip(r.pivots, r.rows):
            x = row.get(f)
            if x:
                v[c] = -x
        out.append(v)
    return out


def nullspace_canonical(a: "SparseIntMatrix | Sequence[Sequence] | RCF") -> list[list[int]]:
    """Canonical nullspace basis as primitive integer vectors, sorted by squared norm.

    Ties keep free-column order. A full column-rank matrix gives ``[]``.
    """
    r = a if isinstance(a, RCF) else rcf_rational(a)
    vecs = [primitive_vector(v) for v in canonical_kernel_rational(r)]
    return sorted(vecs, key=sqnorm)


def rank_rational(a: "SparseIntMatrix | Sequence[Sequence]") -> int:
    return rcf_rational(a).rank

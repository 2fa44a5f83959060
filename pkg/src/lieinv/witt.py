"""Dimensions of multigraded free Lie algebras.

Multidegrees are integer tuples whose coordinate 0 is the total degree.
For generators with generating series ``f(t)`` the free Lie algebra
satisfies ``prod_tau (1 - t^tau)^{dim L_tau} = 1 - f(t)``. Taking logs,
``sum_tau dim L_tau sum_m t^{m tau} / m = sum_k f(t)^k / k``, which is
solved one multidegree at a time in increasing total degree.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

__all__ = [
    "DimTable",
    "free_lie_dims",
    "free_lie_dims_mobius",
    "mobius",
    "nonprimitive_dims",
    "rep_generators",
    "weight_count_check",
    "witt_number",
]

Multidegree = tuple[int, ...]


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for positive integers")
    result, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    return -result if n > 1 else result


def witt_number(q: int, n: int) -> int:
    """Classical necklace count ``(1/n) sum_{d | n} mu(d) q^(n/d)``."""
    total = sum(mobius(d) * q ** (n // d) for d in range(1, n + 1) if n % d == 0)
    return total // n


def _normalize_gens(gens: Mapping[Sequence[int] | int, int]) -> dict[Multidegree, int]:
    out: dict[Multidegree, int] = {}
    rank = None
    for deg, count in gens.items():
        key = (deg,) if isinstance(deg, int) else tuple(int(x) for x in deg)
        if key[0] < 1:
            raise ValueError(f"generator multidegree {key} must have positive total degree")
        if rank is None:
            rank = len(key)
        elif len(key) != rank:
            raise ValueError("generator multidegrees have different lengths")
        if count < 0:
            raise ValueError("generator counts must be nonnegative")
        if count:
            out[key] = out.get(key, 0) + count
    return out


def _log_series(gens: dict[Multidegree, int], bound: int) -> dict[Multidegree, Fraction]:
    """Coefficients of ``sum_k f^k / k`` up to total degree ``bound``."""
    acc: dict[Multidegree, Fraction] = defaultdict(Fraction)
    power: dict[Multidegree, int] = {tuple([0] * len(next(iter(gens)))): 1}
    for k in range(1, bound + 1):
        nxt: dict[Multidegree, int] = defaultdict(int)
        for a, ca in power.items():
            for g, cg in gens.items():
                if a[0] + g[0] <= bound:
                    nxt[tuple(x + y for x, y in zip(a, g))] += ca * cg
        power = nxt
        if not power:
            break
        for deg, c in power.items():
            acc[deg] += Fraction(c, k)
    return acc


def _divides(m: int, n: Multidegree) -> bool:
    return all(x % m == 0 for x in n)


@dataclass(frozen=True)
class DimTable:
    """Dimensions of the multigraded components up to a total-degree bound."""

    dims: dict[Multidegree, int]
    bound: int

    def __getitem__(self, deg: Sequence[int] | int) -> int:
        key = (deg,) if isinstance(deg, int) else tuple(deg)
        if key[0] > self.bound:
            raise KeyError(f"total degree {key[0]} beyond bound {self.bound}")
        return self.dims.get(key, 0)

    def total(self, n: int) -> int:
        return sum(v for k, v in self.dims.items() if k[0] == n)

    def components(self, n: int) -> dict[Multidegree, int]:
        return {k: v for k, v in sorted(self.dims.items()) if k[0] == n}

    def to_json(self) -> str:
        rows = [{"degree": list(k), "dim": v} for k, v in sorted(self.dims.items())]
        return json.dumps({"bound": self.bound, "components": rows}, indent=1)


def free_lie_dims(gens: Mapping[Sequence[int] | int, int], bound: int) -> DimTable:
    """Multigraded dimensions of the free Lie algebra on the given generators.

    ``gens`` maps a multidegree (or a plain positive degree) to the number of
    generators of that multidegree.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    g = _normalize_gens(gens)
    if not g:
        return DimTable({}, bound)
    logs = _log_series(g, bound)
    dims: dict[Multidegree, int] = {}
    for deg in sorted(logs, key=lambda k: (k[0], k)):
        val = logs[deg]
        for m in range(2, deg[0] + 1):
            if _divides(m, deg):
                val -= Fraction(dims.get(tuple(x // m for x in deg), 0), m)
        if val.denominator != 1 or val < 0:
            raise ArithmeticError(f"non-integral dimension {val} at {deg}")
        if val:
            dims[deg] = int(val)
    return DimTable(dims, bound)


def free_lie_dims_mobius(gens: Mapping[Sequence[int] | int, int], bound: int) -> DimTable:
    """Same table from the explicit formula ``dim L_n = sum_{m | n} mu(m)/m c_{n/m}``."""
    g = _normalize_gens(gens)
    if not g:
        return DimTable({}, bound)
    logs = _log_series(g, bound)
    dims = {}
    for deg in logs:
        val = Fraction(0)
        for m in range(1, deg[0] + 1):
            if _divides(m, deg):
                mu = mobius(m)
                if mu:
                    val += Fraction(mu, m) * logs.get(tuple(x // m for x in deg), 0)
        if val:
            dims[deg] = int(val)
    return DimTable(dims, bound)


def nonprimitive_dims(primitive_degrees: Mapping[int, int], bound: int) -> dict[int, int]:
    """Dimension of the part generated from lower degrees, for a free Lie algebra.

    Given the number of free generators in each degree, returns for every
    degree ``n <= bound`` the dimension of the degree-``n`` component minus
    the generators placed in degree ``n`` itself.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    table = free_lie_dims({d: c for d, c in primitive_degrees.items() if d <= bound}, bound)
    return {n: table.total(n) - primitive_degrees.get(n, 0) for n in range(1, bound + 1)}


def rep_generators(rep) -> dict[Multidegree, int]:
    """Letter multidegrees ``(1, *weight)`` for a representation."""
    out: dict[Multidegree, int] = {}
    for w in rep.letter_weights:
        key = (1, *w)
        out[key] = out.get(key, 0) + 1
    return out


def _rep_table(rep, bound: int) -> DimTable:
    key = ("witt", bound)
    hit = rep._cache.get(key)
    if hit is None:
        hit = rep._cache.setdefault(key, free_lie_dims(rep_generators(rep), bound))
    return hit


@dataclass(frozen=True)
class WeightCount:
    degree: int
    weights: tuple[tuple[int, ...], ...]
    predicted: tuple[int, ...]
    enumerated: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.predicted == self.enumerated


def weight_count_check(rep, degree: int, weights: Sequence[Sequence[int]] | None = None) -> WeightCount:
    """Compare predicted weight-space dimensions with direct Hall-word counts.

    By default checks the zero weight and each raising operator's target weight.
    """
    from .reps import weight_basis

    if weights is None:
        weights = [rep.zero_weight, *rep.raising_weights]
    weights = tuple(tuple(w) for w in weights)
    table = _rep_table(rep, degree)
    predicted = tuple(table[(degree, *w)] for w in weights)
    enumerated = tuple(len(weight_basis(rep, degree, w)) for w in weights)
    return WeightCount(degree, weights, predicted, enumerated)

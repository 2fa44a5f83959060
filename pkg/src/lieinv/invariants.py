"""Invariant Lie polynomials as the weight-zero kernel of the raising operators.

For a degree ``n`` the raising operators map the weight-zero space to the
spaces of their target weights. :func:`action_matrix` writes those maps in
Hall coordinates, :func:`compute_invariants` takes the joint kernel with one
of three backends, and :func:`primitive_split` separates what is already
generated by lower-degree invariants from new (primitive) ones.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .hall import LiePoly, Tree, bracket, format_word, hall_words_weighted, parse_word
from .linalg.hnf import integer_nullspace
from .linalg.lll import lll_reduce
from .linalg.matrix import SparseIntMatrix, sqnorm, vstack
from .linalg.modular import CONFIRM_PRIME, DEFAULT_PRIME, is_prime, rcf_modular
from .linalg.rational import nullspace_canonical, primitive_vector, rcf_rational
from .reps import RepSpec, act, act_word, weight_basis

__all__ = [
    "RATIONAL_COLUMN_LIMIT",
    "ActionMatrixBundle",
    "BackendDisagreement",
    "Certificate",
    "InvariantBasis",
    "InvariantError",
    "PrimitiveSplit",
    "action_matrix",
    "cached_invariants",
    "compute_invariants",
    "nonprimitive_basis",
    "parse_backend",
    "primitive_split",
    "verify_invariant",
]

RATIONAL_COLUMN_LIMIT = 3000


class InvariantError(ValueError):
    """Invalid request or inconsistent intermediate data."""


class BackendDisagreement(RuntimeError):
    """Two independent eliminations produced different ranks."""


# --------------------------------------------------------------------------
# action matrices


@dataclass(frozen=True)
class ActionMatrixBundle:
    """Matrices of the raising operators on the weight-zero space of one degree."""

    rep: RepSpec
    degree: int
    columns: tuple[Tree, ...]
    blocks: dict[str, SparseIntMatrix]

    @cached_property
    def stacked(self) -> SparseIntMatrix:
        return vstack([self.blocks[r] for r in self.rep.raising])

    @property
    def shape(self) -> tuple[int, int]:
        return self.stacked.shape


def action_matrix(rep: RepSpec, degree: int) -> ActionMatrixBundle:
    """Entry ``(i, j)`` of block ``r`` is the coefficient of row word ``i`` in ``r.(column word j)``."""
    if degree < 1:
        raise InvariantError("degree must be at least 1")
    cols = tuple(weight_basis(rep, degree, rep.zero_weight))
    blocks = {}
    for r, tw in zip(rep.raising, rep.raising_weights):
        rows = tuple(weight_basis(rep, degree, tw))
        index = {w: i for i, w in enumerate(rows)}
        entries = {}
        for j, w in enumerate(cols):
            for t, c in act_word(rep, r, w).items():
                entries[(index[t], j)] = c
        blocks[r] = SparseIntMatrix(len(rows), len(cols), entries, row_labels=rows, col_labels=cols)
    return ActionMatrixBundle(rep, degree, cols, blocks)


# --------------------------------------------------------------------------
# invariant bases


def parse_backend(spec: str) -> tuple[str, int | None]:
    """``"rational"``, ``"hnf-lll"``, ``"auto"``, ``"modular"`` or ``"modular:<p>"``."""
    if spec in ("rational", "hnf-lll", "auto"):
        return spec, None
    if spec == "modular":
        return "modular", DEFAULT_PRIME
    if spec.startswith("modular:"):
        try:
            p = int(spec.split(":", 1)[1])
        except ValueError:
            raise InvariantError(f"bad modulus in backend {spec!r}") from None
        if not is_prime(p):
            raise InvariantError(f"modulus {p} is not prime")
        return "modular", p
    raise InvariantError(f"unknown backend {spec!r}")


@dataclass
class InvariantBasis:
    """A basis of the invariants of one degree, as coefficient vectors over ``words``.

    For exact backends the vectors are primitive integer vectors. For the
    modular backend they are the canonical kernel vectors over ``F_p`` with
    ``p = primes[0]`` and ``exact`` is false.
    """

    degree: int
    rep_name: str
    rep_hash: str
    backend: str
    words: tuple[Tree, ...]
    vectors: list[list[int]]
    exact: bool
    primes: tuple[int, ...] = ()
    rank: int = 0
    nrows: int = 0
    block_ranks: dict[str, int] = field(default_factory=dict)
    block_rows: dict[str, int] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    @property
    def ncols(self) -> int:
        return len(self.words)

    @property
    def norms(self) -> list[int]:
        return [sqnorm(v) for v in self.vectors]

    @property
    def term_counts(self) -> list[int]:
        return [sum(1 for x in v if x) for v in self.vectors]

    @property
    def surjective(self) -> bool:
        """Each raising operator maps the weight-zero space onto its target space."""
        return all(self.block_ranks.get(r) == n for r, n in self.block_rows.items())

    def poly(self, i: int) -> LiePoly:
        v = self.vectors[i]
        return LiePoly._raw({w: c for w, c in zip(self.words, v) if c})

    @property
    def polys(self) -> list[LiePoly]:
        if not self.exact:
            raise InvariantError("modular bases are not integral invariants; use vectors")
        return [self.poly(i) for i in range(self.dimension)]

    def to_json(self, alphabet=None) -> dict:
        out = {
            "degree": self.degree,
            "rep": self.rep_name,
            "rep_hash": self.rep_hash,
            "backend": self.backend,
            "exact": self.exact,
            "primes": list(self.primes),
            "rank": self.rank,
            "nrows": self.nrows,
            "ncols": self.ncols,
            "block_ranks": self.block_ranks,
            "block_rows": self.block_rows,
            "dimension": self.dimension,
            "norms": self.norms,
            "words": [format_word(w, alphabet) for w in self.words],
            "vectors": [{"support": [j for j, x in enumerate(v) if x], "coeffs": [x for x in v if x]} for v in self.vectors],
        }
        if self.exact:
            out["polys"] = [self.poly(i).to_text(alphabet) for i in range(self.dimension)]
        return out

    @classmethod
    def from_json(cls, data: Mapping, alphabet=None) -> "InvariantBasis":
        words = tuple(parse_word(w, alphabet) for w in data["words"])
        n = len(words)
        vectors = []
        for v in data["vectors"]:
            dense = [0] * n
            for j, x in zip(v["support"], v["coeffs"]):
                dense[j] = int(x)
            vectors.append(dense)
        return cls(
            degree=int(data["degree"]),
            rep_name=data["rep"],
            rep_hash=data["rep_hash"],
            backend=data["backend"],
            words=words,
            vectors=vectors,
            exact=bool(data["exact"]),
            primes=tuple(data.get("primes", ())),
            rank=int(data.get("rank", 0)),
            nrows=int(data.get("nrows", 0)),
            block_ranks=dict(data.get("block_ranks", {})),
            block_rows=dict(data.get("block_rows", {})),
        )


def _block_ranks(bundle: ActionMatrixBundle, total_rank: int, p: int) -> dict[str, int]:
    if len(bundle.blocks) == 1:
        (r,) = bundle.blocks
        return {r: total_rank}
    return {r: rcf_modular(m, p).rank for r, m in bundle.blocks.items()}


def compute_invariants(
    rep: RepSpec,
    degree: int,
    backend: str = "auto",
    primes: Sequence[int] | None = None,
    delta: Fraction | str | float = Fraction(3, 4),
    bundle: ActionMatrixBundle | None = None,
) -> InvariantBasis:
    """Basis of the degree-``degree`` invariants of ``rep``.

    ``backend`` is ``rational`` (canonical RCF kernel sorted by squared norm),
    ``hnf-lll`` (integer kernel from the HNF transform, LLL-reduced with
    ``delta``), ``modular[:p]`` (kernel over F_p, rank confirmed at a second
    prime) or ``auto`` (rational up to ``RATIONAL_COLUMN_LIMIT`` columns,
    modular beyond).
    """
    kind, p = parse_backend(backend)
    primes = tuple(primes) if primes else ()
    for q in primes:
        if not is_prime(q):
            raise InvariantError(f"modulus {q} is not prime")
    start = time.perf_counter()
    if bundle is None:
        bundle = action_matrix(rep, degree)
    a = bundle.stacked
    if kind == "auto":
        kind = "rational" if a.ncols <= RATIONAL_COLUMN_LIMIT else "modular"
    block_rows = {r: m.nrows for r, m in bundle.blocks.items()}
    common = dict(degree=degree, rep_name=rep.name, rep_hash=rep.content_hash(), words=bundle.columns,
                  nrows=a.nrows, block_rows=block_rows)
    check_p = primes[0] if primes else DEFAULT_PRIME

    if kind == "rational":
        r = rcf_rational(a)
        vecs = nullspace_canonical(r)
        res = InvariantBasis(backend="rational", vectors=vecs, exact=True, rank=r.rank,
                             block_ranks=_block_ranks(bundle, r.rank, check_p), **common)
    elif kind == "hnf-lll":
        ker = integer_nullspace(a)
        if ker:
            ker = lll_reduce(ker, delta)
        vecs = sorted((primitive_vector(v) for v in ker), key=sqnorm)
        rank = a.ncols - len(vecs)
        res = InvariantBasis(backend=f"hnf-lll:{Fraction(delta)}", vectors=vecs, exact=True, rank=rank,
                             block_ranks=_block_ranks(bundle, rank, check_p), **common)
    else:
        if p is None or (primes and backend == "modular"):
            p = primes[0] if primes else DEFAULT_PRIME
        confirm = [q for q in primes if q != p] or [CONFIRM_PRIME if p != CONFIRM_PRIME else DEFAULT_PRIME]
        main = rcf_modular(a, p)
        for q in confirm:
            other = rcf_modular(a, q)
            if other.rank != main.rank:
                raise BackendDisagreement(
                    f"{rep.name} degree {degree}: rank {main.rank} mod {p} but {other.rank} mod {q}"
                )
        vecs = [v.tolist() for v in main.nullspace()]
        order = sorted(range(len(vecs)), key=lambda i: sum(1 for x in vecs[i] if x))
        res = InvariantBasis(backend=f"modular:{p}", vectors=[vecs[i] for i in order], exact=False,
                             primes=(p, *confirm), rank=main.rank,
                             block_ranks=_block_ranks(bundle, main.rank, p), **common)
    res.seconds = time.perf_counter() - start
    return res


# --------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Certificate:
    """Outcome of applying every generator; ``residuals`` holds the nonzero images."""

    passed: bool
    degree: int | None
    generators: tuple[str, ...]
    residuals: dict[str, LiePoly]

    def describe(self, alphabet=None) -> str:
        if self.passed:
            return f"invariant (annihilated by {', '.join(self.generators)})"
        parts = [f"{g}: {p.to_text(alphabet)}" for g, p in self.residuals.items()]
        return "not invariant; " + "; ".join(parts)


def verify_invariant(rep: RepSpec, p: LiePoly) -> Certificate:
    """Check ``g.p == 0`` exactly for every generator ``g`` of ``rep``."""
    if not p.is_homogeneous:
        raise InvariantError("verify_invariant needs a homogeneous polynomial")
    for w in p.words():
        if len(w.counts) > rep.n_letters:
            raise InvariantError(f"polynomial uses letters outside the alphabet of {rep.name}")
    gens = tuple(rep.generators)
    residuals = {}
    for g in gens:
        image = act(rep, g, p)
        if image:
            residuals[g] = image
    return Certificate(not residuals, p.degree, gens, residuals)


# --------------------------------------------------------------------------
# non-primitive invariants and primitive complements


def _coords(polys: Sequence[LiePoly], words: Sequence[Tree]) -> list[list[Fraction | int]]:
    index = {w: j for j, w in enumerate(words)}
    out = []
    for p in polys:
        v = [0] * len(words)
        for w, c in p.items():
            j = index.get(w)
            if j is None:
                raise InvariantError("polynomial has a term outside the weight-zero space")
            v[j] = c
        out.append(v)
    return out


def nonprimitive_basis(
    rep: RepSpec,
    degree: int,
    primitives: Mapping[int, Sequence[LiePoly]],
) -> list[LiePoly]:
    """Independent elements spanning the degree-``degree`` part generated by lower invariants.

    ``primitives[d]`` lists free generators of the invariant subalgebra in
    degree ``d``; every degree below ``degree`` that has invariants must be
    present. Candidates are the Hall words of the free Lie algebra on those
    generators (weighted by degree), evaluated by bracketing and reduced to
    an independent set in enumeration order.
    """
    gens: list[LiePoly] = []
    degs: list[int] = []
    for d in sorted(primitives):
        if d >= degree:
            continue
        for p in primitives[d]:
            if p.degree != d:
                raise InvariantError(f"primitive listed in degree {d} has degree {p.degree}")
            gens.append(p)
            degs.append(d)
    if not gens:
        return []
    memo: dict[Tree, LiePoly] = {}

    def evaluate(t: Tree) -> LiePoly:
        hit = memo.get(t)
        if hit is None:
            hit = gens[t.letter] if t.letter is not None else bracket(evaluate(t.left), evaluate(t.right))
            memo[t] = hit
        return hit

    cands = [evaluate(t) for t in hall_words_weighted(degs, degree) if t.letter is None]
    cands = [c for c in cands if c]
    if not cands:
        return []
    words = weight_basis(rep, degree, rep.zero_weight)
    coords = _coords(cands, words)
    # pivots of the column matrix = first independent candidates
    cols = [list(col) for col in zip(*coords)]
    r = rcf_rational(cols)
    return [cands[j] for j in r.pivots]


def _mod(x, p: int) -> int:
    x = Fraction(x)
    if x.denominator % p == 0:
        raise InvariantError(f"coefficient {x} is not defined modulo {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


@dataclass(frozen=True)
class PrimitiveSplit:
    degree: int
    nonprimitive: list[LiePoly]
    primitive_indices: tuple[int, ...]
    invariants: InvariantBasis

    @property
    def nonprimitive_dim(self) -> int:
        return len(self.nonprimitive)

    @property
    def primitive_dim(self) -> int:
        return len(self.primitive_indices)

    @property
    def primitive(self) -> list[LiePoly]:
        return [self.invariants.poly(i) for i in self.primitive_indices]


def primitive_split(
    rep: RepSpec,
    degree: int,
    invariants: InvariantBasis,
    nonprimitive: Sequence[LiePoly],
) -> PrimitiveSplit:
    """Extend the non-primitive span to the full invariant space greedily, in basis order.

    With a modular basis the selection is made over the same prime; the
    non-primitive elements are then reduced modulo that prime.
    """
    if invariants.degree != degree:
        raise InvariantError("invariant basis is for a different degree")
    words = invariants.words
    k = len(nonprimitive)
    np_coords = _coords(nonprimitive, words)
    columns = np_coords + [list(v) for v in invariants.vectors]
    if not columns:
        return PrimitiveSplit(degree, list(nonprimitive), (), invariants)
    if invariants.exact:
        pivots = rcf_rational([list(r) for r in zip(*columns)]).pivots
    else:
        p = invariants.primes[0]
        mat = np.array([[_mod(x, p) for x in v] for v in columns], dtype=np.int64).T
        pivots = rcf_modular(mat, p).pivots
    if len(pivots) != invariants.dimension:
        raise InvariantError("non-primitive elements fall outside the invariant span")
    if tuple(pivots[:k]) != tuple(range(k)):
        raise InvariantError("non-primitive elements are linearly dependent")
    return PrimitiveSplit(degree, list(nonprimitive), tuple(j - k for j in pivots[k:]), invariants)


# --------------------------------------------------------------------------
# cache


def _cache_path(cache_dir: Path, rep: RepSpec, degree: int) -> Path:
    return Path(cache_dir) / rep.name / f"{degree}.json"


def cached_invariants(
    rep: RepSpec,
    degree: int,
    backend: str = "auto",
    cache_dir: str | Path | None = None,
    **kwargs,
) -> tuple[InvariantBasis, bool]:
    """:func:`compute_invariants` through a JSON cache; returns ``(basis, cache_hit)``.

    Entries are stored per degree and keyed by backend string; a file
    written for a representation with a different content hash is ignored
    and overwritten.
    """
    if cache_dir is None:
        return compute_invariants(rep, degree, backend, **kwargs), False
    parse_backend(backend)
    key = json.dumps([backend, sorted(kwargs.get("primes") or ()), str(Fraction(kwargs.get("delta", Fraction(3, 4))))])
    path = _cache_path(Path(cache_dir), rep, degree)
    h = rep.content_hash()
    data = {"rep_hash": h, "entries": {}}
    if path.exists():
        try:
            stored = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            stored = None
        if stored and stored.get("rep_hash") == h:
            data = stored
            hit = data["entries"].get(key)
            if hit is not None:
                return InvariantBasis.from_json(hit, rep.alphabet), True
    basis = compute_invariants(rep, degree, backend, **kwargs)
    data["entries"][key] = basis.to_json(rep.alphabet)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(data, indent=1, sort_keys=True))
    tmp.replace(path)
    return basis, False

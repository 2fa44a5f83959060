"""Representations acting on the free Lie algebra by derivations.

A :class:`RepSpec` fixes how each generator of the acting Lie algebra moves
the letters; the action on longer Hall words follows from the derivation
rule ``D.[t, u] = [D.t, u] + [t, D.u]``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from numbers import Rational
from pathlib import Path
from typing import Mapping, Sequence

from .hall import Alphabet, HallError, LiePoly, Tree, bracket_words, hall_words, leaf

__all__ = [
    "BUILTIN_NAMES",
    "RepError",
    "RepSpec",
    "act",
    "act_word",
    "builtin_rep",
    "load_rep",
    "weight",
    "weight_basis",
]


class RepError(ValueError):
    """Invalid or unknown representation data."""


Action = Mapping[int, tuple[tuple[int, int], ...]]


@dataclass(frozen=True, eq=False)
class RepSpec:
    """A finite-dimensional representation on the degree-1 letters.

    ``generators[g][letter]`` is a tuple of ``(coeff, letter)`` pairs giving
    ``g.letter``; letters missing from a table are annihilated. ``cartan``
    names the generators whose eigenvalues are the weight coordinates, in
    order; it is only used for verification.
    """

    name: str
    alphabet: Alphabet
    rank: int
    letter_weights: tuple[tuple[int, ...], ...]
    generators: Mapping[str, Action]
    raising: tuple[str, ...]
    raising_weights: tuple[tuple[int, ...], ...]
    cartan: tuple[str, ...] = ()
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        self.validate()

    @property
    def n_letters(self) -> int:
        return len(self.alphabet)

    @property
    def zero_weight(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def validate(self) -> None:
        n = self.n_letters
        if len(self.letter_weights) != n:
            raise RepError(f"{self.name}: need one weight per letter")
        for w in self.letter_weights:
            if len(w) != self.rank:
                raise RepError(f"{self.name}: weight {w} does not have length {self.rank}")
        for g, table in self.generators.items():
            for src, image in table.items():
                if not 0 <= src < n:
                    raise RepError(f"{self.name}: generator {g} acts on unknown letter {src}")
                for c, dst in image:
                    if not 0 <= dst < n:
                        raise RepError(f"{self.name}: {g}.{src} has unknown letter {dst}")
                    if not isinstance(c, int):
                        raise RepError(f"{self.name}: {g} coefficients must be integers")
        if len(self.raising) != len(self.raising_weights):
            raise RepError(f"{self.name}: one target weight per raising operator")
        for r, rw in zip(self.raising, self.raising_weights):
            if r not in self.generators:
                raise RepError(f"{self.name}: raising operator {r} is not a generator")
            if len(rw) != self.rank:
                raise RepError(f"{self.name}: raising weight {rw} has wrong length")
            for src, image in self.generators[r].items():
                for c, dst in image:
                    if c == 0:
                        continue
                    shift = tuple(a - b for a, b in zip(self.letter_weights[dst], self.letter_weights[src]))
                    if shift != tuple(rw):
                        raise RepError(
                            f"{self.name}: {r} moves letter {self.alphabet.symbols[src]} "
                            f"by weight {shift}, expected {tuple(rw)}"
                        )
        for h in self.cartan:
            if h not in self.generators:
                raise RepError(f"{self.name}: Cartan generator {h} is not a generator")
        if self.cartan and len(self.cartan) != self.rank:
            raise RepError(f"{self.name}: need one Cartan generator per weight coordinate")

    def raising_weight(self, r: str) -> tuple[int, ...]:
        return tuple(self.raising_weights[self.raising.index(r)])

    # serialization -------------------------------------------------------

    def to_json(self) -> dict:
        sym = self.alphabet.symbols
        return {
            "name": self.name,
            "alphabet": list(sym),
            "rank": self.rank,
            "letter_weights": {sym[i]: list(w) for i, w in enumerate(self.letter_weights)},
            "generators": {
                g: {sym[src]: [[c, sym[dst]] for c, dst in image] for src, image in sorted(table.items())}
                for g, table in self.generators.items()
            },
            "raising": list(self.raising),
            "raising_weights": [list(w) for w in self.raising_weights],
            "cartan": list(self.cartan),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "RepSpec":
        try:
            alphabet = Alphabet.of(data["alphabet"])
            lw = data["letter_weights"]
            if isinstance(lw, Mapping):
                weights = tuple(tuple(int(x) for x in lw[s]) for s in alphabet.symbols)
            else:
                weights = tuple(tuple(int(x) for x in w) for w in lw)
            gens = {}
            for g, table in data["generators"].items():
                gens[g] = {
                    alphabet.index(src): tuple((int(c), alphabet.index(dst)) for c, dst in image)
                    for src, image in table.items()
                }
            return cls(
                name=str(data.get("name", "custom")),
                alphabet=alphabet,
                rank=int(data["rank"]),
                letter_weights=weights,
                generators=gens,
                raising=tuple(data["raising"]),
                raising_weights=tuple(tuple(int(x) for x in w) for w in data["raising_weights"]),
                cartan=tuple(data.get("cartan", ())),
            )
        except (KeyError, TypeError, HallError) as exc:
            raise RepError(f"malformed representation data: {exc}") from exc

    def content_hash(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _table(alphabet: str, rows: Mapping[str, Sequence[tuple[int, str]]]) -> dict[int, tuple[tuple[int, int], ...]]:
    return {alphabet.index(src): tuple((c, alphabet.index(dst)) for c, dst in image) for src, image in rows.items()}


def _sl2_natural() -> RepSpec:
    ab = "ab"
    return RepSpec(
        name="sl2-natural",
        alphabet=Alphabet.of(ab),
        rank=1,
        letter_weights=((1,), (-1,)),
        generators={
            "x": _table(ab, {"b": [(1, "a")]}),
            "h": _table(ab, {"a": [(1, "a")], "b": [(-1, "b")]}),
            "y": _table(ab, {"a": [(1, "b")]}),
        },
        raising=("x",),
        raising_weights=((2,),),
        cartan=("h",),
    )


def _sl2_adjoint() -> RepSpec:
    abc = "abc"
    return RepSpec(
        name="sl2-adjoint",
        alphabet=Alphabet.of(abc),
        rank=1,
        letter_weights=((2,), (0,), (-2,)),
        generators={
            "x": _table(abc, {"b": [(-2, "a")], "c": [(1, "b")]}),
            "h": _table(abc, {"a": [(2, "a")], "c": [(-2, "c")]}),
            "y": _table(abc, {"a": [(-1, "b")], "b": [(2, "c")]}),
        },
        raising=("x",),
        raising_weights=((2,),),
        cartan=("h",),
    )


def _sl3_natural() -> RepSpec:
    abc = "abc"
    # x3 = E_13 as a matrix: x3.c = a, x3.b = 0
    return RepSpec(
        name="sl3-natural",
        alphabet=Alphabet.of(abc),
        rank=2,
        letter_weights=((1, 0), (-1, 1), (0, -1)),
        generators={
            "x1": _table(abc, {"b": [(1, "a")]}),
            "x2": _table(abc, {"c": [(1, "b")]}),
            "x3": _table(abc, {"c": [(1, "a")]}),
            "h1": _table(abc, {"a": [(1, "a")], "b": [(-1, "b")]}),
            "h2": _table(abc, {"b": [(1, "b")], "c": [(-1, "c")]}),
            "y1": _table(abc, {"a": [(1, "b")]}),
            "y2": _table(abc, {"b": [(1, "c")]}),
            "y3": _table(abc, {"a": [(1, "c")]}),
        },
        raising=("x1", "x2"),
        raising_weights=((2, -1), (-1, 2)),
        cartan=("h1", "h2"),
    )


_BUILTINS = {
    "sl2-natural": _sl2_natural,
    "sl2-adjoint": _sl2_adjoint,
    "sl3-natural": _sl3_natural,
}
BUILTIN_NAMES = tuple(_BUILTINS)
_BUILTIN_CACHE: dict[str, RepSpec] = {}


def builtin_rep(name: str) -> RepSpec:
    """One of ``sl2-natural``, ``sl2-adjoint``, ``sl3-natural`` (shared instances)."""
    if name not in _BUILTINS:
        raise RepError(f"unknown representation {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    rep = _BUILTIN_CACHE.get(name)
    if rep is None:
        rep = _BUILTIN_CACHE.setdefault(name, _BUILTINS[name]())
    return rep


def load_rep(name_or_path: str | Path) -> RepSpec:
    """A built-in name or a path to a JSON RepSpec file."""
    if str(name_or_path) in _BUILTINS:
        return builtin_rep(str(name_or_path))
    path = Path(name_or_path)
    if not path.exists():
        raise RepError(f"unknown representation {name_or_path!r}")
    return RepSpec.from_json(json.loads(path.read_text()))


# --------------------------------------------------------------------------
# action


def _act_word(rep: RepSpec, g: str, w: Tree) -> dict[Tree, int]:
    cache = rep._cache.setdefault(("act", g), {})
    hit = cache.get(w)
    if hit is not None:
        return hit
    if w.letter is not None:
        out: dict[Tree, int] = {}
        for c, dst in rep.generators[g].get(w.letter, ()):
            t = leaf(dst)
            out[t] = out.get(t, 0) + c
    else:
        out = {}
        left, right = w.left, w.right
        for t, a in _act_word(rep, g, left).items():
            for t2, b in bracket_words(t, right).items():
                out[t2] = out.get(t2, 0) + a * b
        for t, a in _act_word(rep, g, right).items():
            for t2, b in bracket_words(left, t).items():
                out[t2] = out.get(t2, 0) + a * b
    out = {t: c for t, c in out.items() if c}
    cache[w] = out
    return out


def act_word(rep: RepSpec, g: str, w: Tree) -> dict[Tree, int]:
    """``g.w`` for a Hall word ``w`` as a ``{word: int}`` dict (shared; do not mutate)."""
    if g not in rep.generators:
        raise RepError(f"{rep.name} has no generator {g!r}")
    return _act_word(rep, g, w)


def act(rep: RepSpec, g: str, p: LiePoly | Tree) -> LiePoly:
    """Apply generator ``g`` to a Lie polynomial, extended as a derivation."""
    if g not in rep.generators:
        raise RepError(f"{rep.name} has no generator {g!r}")
    if isinstance(p, Tree):
        p = LiePoly.word(p)
    out: dict[Tree, Rational] = {}
    for w, c in p.items():
        for t, a in _act_word(rep, g, w).items():
            out[t] = out.get(t, 0) + c * a
    return LiePoly._raw(out)


def weight(rep: RepSpec, w: Tree) -> tuple[int, ...]:
    """Sum of the letter weights over the leaves of ``w``."""
    if len(w.counts) > rep.n_letters:
        raise RepError(f"word uses letters outside the alphabet of {rep.name}")
    total = [0] * rep.rank
    for letter, n in enumerate(w.counts):
        if n:
            lw = rep.letter_weights[letter]
            for i in range(rep.rank):
                total[i] += n * lw[i]
    return tuple(total)


def weight_basis(rep: RepSpec, degree: int, w: Sequence[int]) -> list[Tree]:
    """Hall words of the given degree and weight, in ascending Hall order."""
    w = tuple(w)
    if len(w) != rep.rank:
        raise RepError(f"weight {w} does not have length {rep.rank}")
    key = ("basis", degree, w)
    hit = rep._cache.get(key)
    if hit is None:
        hit = tuple(t for t in hall_words(rep.n_letters, degree) if weight(rep, t) == w)
        rep._cache[key] = hit
    return list(hit)


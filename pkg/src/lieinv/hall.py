"""Free magma trees, the Hall order, Hall basis enumeration and Hall normal form.

Trees are hash-consed: building the same bracketing twice returns the same
object, so equality is identity and the recursive sort keys share structure.
Letters are 0-based indices; an :class:`Alphabet` only matters when trees are
printed or parsed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import zip_longest
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Alphabet",
    "HallError",
    "LiePoly",
    "Tree",
    "bracket",
    "bracket_words",
    "compare",
    "format_word",
    "hall_form",
    "hall_words",
    "hall_words_weighted",
    "is_hall",
    "leaf",
    "node",
    "parse_poly",
    "parse_tree",
    "parse_word",
]


class HallError(ValueError):
    """Raised for malformed words, unknown letters or bad degree arguments."""


class Tree:
    """A complete binary tree with letter-labelled leaves (an element of the free magma).

    Never instantiate directly; use :func:`leaf` and :func:`node`.
    """

    __slots__ = ("left", "right", "letter", "degree", "key", "counts")

    left: "Tree | None"
    right: "Tree | None"
    letter: int | None
    degree: int
    key: tuple
    counts: tuple[int, ...]

    def __lt__(self, other: "Tree") -> bool:
        return self.key < other.key

    def __le__(self, other: "Tree") -> bool:
        return self is other or self.key < other.key

    def __gt__(self, other: "Tree") -> bool:
        return other.key < self.key

    def __ge__(self, other: "Tree") -> bool:
        return self is other or other.key < self.key

    @property
    def is_leaf(self) -> bool:
        return self.letter is not None

    def count(self, letter: int) -> int:
        return self.counts[letter] if letter < len(self.counts) else 0

    def leaves(self) -> Iterator[int]:
        if self.letter is not None:
            yield self.letter
        else:
            yield from self.left.leaves()
            yield from self.right.leaves()

    def __repr__(self) -> str:
        return f"Tree({format_word(self)!r})"

    def __reduce__(self):
        if self.letter is not None:
            return (leaf, (self.letter,))
        return (node, (self.left, self.right))


_LEAVES: dict[int, Tree] = {}
_NODES: dict[tuple[Tree, Tree], Tree] = {}


def leaf(letter: int) -> Tree:
    t = _LEAVES.get(letter)
    if t is None:
        if letter < 0:
            raise HallError(f"negative letter index {letter}")
        t = object.__new__(Tree)
        t.left = t.right = None
        t.letter = letter
        t.degree = 1
        t.key = (1, letter)
        t.counts = (0,) * letter + (1,)
        t = _LEAVES.setdefault(letter, t)
    return t


def node(left: Tree, right: Tree) -> Tree:
    """The bracketing ``(left, right)``; no Hall conditions are imposed."""
    pair = (left, right)
    t = _NODES.get(pair)
    if t is None:
        t = object.__new__(Tree)
        t.left = left
        t.right = right
        t.letter = None
        t.degree = left.degree + right.degree
        t.key = (t.degree, left.key, right.key)
        t.counts = tuple(x + y for x, y in zip_longest(left.counts, right.counts, fillvalue=0))
        t = _NODES.setdefault(pair, t)
    return t


def compare(t: Tree, u: Tree) -> int:
    """Return -1, 0 or 1 as ``t`` is less than, equal to or greater than ``u``.

    Degree decides first, then the letter order for single letters, then the
    left subtrees, then the right subtrees.
    """
    if t is u:
        return 0
    return -1 if t.key < u.key else 1


def is_hall(t: Tree) -> bool:
    """Check the Hall conditions at every internal node of ``t``."""
    if t.letter is not None:
        return True
    left, right = t.left, t.right
    if not right.key < left.key:
        return False
    if left.letter is None and right.key < left.right.key:
        return False
    return is_hall(left) and is_hall(right)


# --------------------------------------------------------------------------
# Alphabets, parsing and printing


@dataclass(frozen=True)
class Alphabet:
    """Ordered symbols; symbol ``i`` names letter index ``i``."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise HallError(f"repeated symbols in alphabet {self.symbols!r}")
        for s in self.symbols:
            if len(s) != 1 or not s.isalpha():
                raise HallError(f"alphabet symbols must be single letters, got {s!r}")

    @classmethod
    def of(cls, spec: "str | Sequence[str] | Alphabet | int") -> "Alphabet":
        if isinstance(spec, Alphabet):
            return spec
        if isinstance(spec, int):
            return cls(tuple("abcdefghijklmnopqrstuvwxyz"[:spec]))
        return cls(tuple(spec))

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise HallError(f"unknown letter {symbol!r} (alphabet {''.join(self.symbols)})") from None

    def letters(self) -> list[Tree]:
        return [leaf(i) for i in range(len(self.symbols))]


DEFAULT_ALPHABET = Alphabet.of("abcdefghijklmnopqrstuvwxyz")


def format_word(t: Tree, alphabet: Alphabet | None = None, sep: str = "") -> str:
    """Compact bracket notation, e.g. ``[[[ba]b][[ba]a]]``; ``sep=","`` gives ``[[[b,a],b],...]``."""
    alphabet = alphabet or DEFAULT_ALPHABET
    if t.letter is not None:
        return alphabet.symbols[t.letter]
    return "[" + format_word(t.left, alphabet, sep) + sep + format_word(t.right, alphabet, sep) + "]"


_TOKEN = re.compile(r"\s*(?:(\[)|(\])|(,)|([A-Za-z])|(\S))")


def parse_tree(text: str, alphabet: Alphabet | None = None) -> Tree:
    """Parse a bracketing in compact (``[ba]``) or comma (``[b,a]``) form.

    A bracket holding more than two items is nested to the left, so
    ``[abc]`` means ``[[a,b],c]``. No Hall conditions are checked.
    """
    alphabet = alphabet or DEFAULT_ALPHABET
    stack: list[list[Tree]] = [[]]
    pos = 0
    text = text.replace("{,}", ",")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        if m.group(1):
            stack.append([])
        elif m.group(2):
            if len(stack) == 1:
                raise HallError(f"unbalanced ']' in {text!r}")
            items = stack.pop()
            if len(items) < 2:
                raise HallError(f"bracket with fewer than two items in {text!r}")
            t = items[0]
            for item in items[1:]:
                t = node(t, item)
            stack[-1].append(t)
        elif m.group(3):
            continue
        elif m.group(4):
            stack[-1].append(leaf(alphabet.index(m.group(4))))
        else:
            raise HallError(f"unexpected character {m.group(5)!r} in {text!r}")
    if len(stack) != 1:
        raise HallError(f"unbalanced '[' in {text!r}")
    if len(stack[0]) != 1:
        raise HallError(f"expected exactly one word in {text!r}")
    return stack[0][0]


def parse_word(text: str, alphabet: Alphabet | None = None) -> Tree:
    """Parse a Hall word; raises :class:`HallError` if the bracketing is not a Hall word."""
    t = parse_tree(text, alphabet)
    if not is_hall(t):
        raise HallError(f"{text!r} is not a Hall word")
    return t


# --------------------------------------------------------------------------
# Hall basis enumeration


@lru_cache(maxsize=None)
def _hall_by_degree(n_letters: int, degree: int) -> tuple[Tree, ...]:
    if degree == 1:
        return tuple(leaf(i) for i in range(n_letters))
    out = []
    for d2 in range(1, degree // 2 + 1):
        d1 = degree - d2
        lefts = _hall_by_degree(n_letters, d1)
        for right in _hall_by_degree(n_letters, d2):
            rkey = right.key
            for left in lefts:
                if not rkey < left.key:
                    continue
                if left.letter is None and rkey < left.right.key:
                    continue
                out.append(node(left, right))
    out.sort(key=lambda t: t.key)
    return tuple(out)


def hall_words(alphabet: "Alphabet | str | int", degree: int) -> list[Tree]:
    """All Hall words of the given degree, in ascending Hall order."""
    if degree < 1:
        raise HallError("empty degree: Hall words exist only in degree >= 1")
    return list(_hall_by_degree(len(Alphabet.of(alphabet)), degree))


def hall_words_weighted(letter_degrees: Sequence[int], degree: int, max_leaves: int | None = None) -> list[Tree]:
    """Hall words whose letters, weighted by ``letter_degrees``, sum to ``degree``.

    Used to enumerate a Hall basis of a free Lie algebra whose generators
    carry arbitrary positive degrees. The order is the usual Hall order
    (leaf count first), which is independent of the weights.
    """
    if degree < 1:
        raise HallError("empty degree: Hall words exist only in degree >= 1")
    if any(d < 1 for d in letter_degrees):
        raise HallError("generator degrees must be positive")
    table: dict[int, list[Tree]] = {}

    def words(w: int) -> list[Tree]:
        if w in table:
            return table[w]
        out = [leaf(i) for i, d in enumerate(letter_degrees) if d == w]
        for w2 in range(1, w):
            w1 = w - w2
            lefts = words(w1)
            if not lefts:
                continue
            for right in words(w2):
                rkey = right.key
                for left in lefts:
                    if not rkey < left.key:
                        continue
                    if left.letter is None and rkey < left.right.key:
                        continue
                    t = node(left, right)
                    if max_leaves is None or t.degree <= max_leaves:
                        out.append(t)
        out.sort(key=lambda t: t.key)
        table[w] = out
        return out

    return list(words(degree))


# --------------------------------------------------------------------------
# Hall normal form

_BRACKET_CACHE: dict[tuple[Tree, Tree], dict[Tree, int]] = {}


def _bracket_hall(u: Tree, v: Tree) -> dict[Tree, int]:
    """Hall form of ``[u, v]`` for Hall words ``u > v`` (integer coefficients)."""
    if u.letter is not None:
        return {node(u, v): 1}
    q = u.right
    if not v.key < q.key:
        return {node(u, v): 1}
    pair = (u, v)
    cached = _BRACKET_CACHE.get(pair)
    if cached is not None:
        return cached
    p = u.left
    # Jacobi: ((p,q),v) = -((q,v),p) + ((p,v),q), each side renormalised
    out: dict[Tree, int] = {}
    for w, c in bracket_words(q, v).items():
        for w2, c2 in bracket_words(w, p).items():
            out[w2] = out.get(w2, 0) - c * c2
    for w, c in bracket_words(p, v).items():
        for w2, c2 in bracket_words(w, q).items():
            out[w2] = out.get(w2, 0) + c * c2
    out = {w: c for w, c in out.items() if c}
    _BRACKET_CACHE[pair] = out
    return out


def bracket_words(u: Tree, v: Tree) -> dict[Tree, int]:
    """Hall form of the bracket of two Hall words, as a plain ``{word: int}`` dict.

    The returned dict may be shared with the internal cache; do not mutate it.
    """
    if u is v:
        return {}
    if u.key < v.key:
        return {w: -c for w, c in _bracket_hall(v, u).items()}
    return _bracket_hall(u, v)


def clear_caches() -> None:
    """Drop the memoised Hall-form brackets (interned trees are kept)."""
    _BRACKET_CACHE.clear()


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LiePoly:
    """An element of the free Lie algebra in Hall coordinates.

    Coefficients are exact rationals, kept as ``int`` when integral and as
    :class:`fractions.Fraction` otherwise. Instances are treated as immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Tree, Rational] | Iterable[tuple[Tree, Rational]] | None = None, *, check: bool = True):
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        acc: dict[Tree, Rational] = {}
        for w, c in items:
            if check:
                if not isinstance(w, Tree):
                    raise TypeError(f"LiePoly keys must be trees, got {type(w).__name__}")
                if not is_hall(w):
                    raise HallError(f"{format_word(w)} is not a Hall word; use hall_form()")
                if not isinstance(c, Rational):
                    raise TypeError(f"coefficients must be exact rationals, got {c!r}")
            acc[w] = acc.get(w, 0) + c
        self._terms = {w: _normalize(c) for w, c in acc.items() if c}

    @classmethod
    def _raw(cls, terms: dict[Tree, Rational]) -> "LiePoly":
        p = object.__new__(cls)
        p._terms = {w: _normalize(c) for w, c in terms.items() if c}
        return p

    @classmethod
    def word(cls, w: Tree, coeff: Rational = 1) -> "LiePoly":
        if not is_hall(w):
            raise HallError(f"{format_word(w)} is not a Hall word")
        return cls._raw({w: coeff})

    @property
    def terms(self) -> Mapping[Tree, Rational]:
        return self._terms

    def items(self):
        return self._terms.items()

    def words(self) -> list[Tree]:
        return sorted(self._terms, key=lambda t: t.key)

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, w: Tree) -> Rational:
        return self._terms.get(w, 0)

    def degrees(self) -> set[int]:
        return {w.degree for w in self._terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        ds = self.degrees()
        if len(ds) > 1:
            raise HallError("inhomogeneous polynomial has no single degree")
        return next(iter(ds)) if ds else None

    def __eq__(self, other) -> bool:
        if isinstance(other, LiePoly):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "LiePoly") -> "LiePoly":
        if not isinstance(other, LiePoly):
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return LiePoly._raw(out)

    def __sub__(self, other: "LiePoly") -> "LiePoly":
        if not isinstance(other, LiePoly):
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) - c
        return LiePoly._raw(out)

    def __neg__(self) -> "LiePoly":
        return LiePoly._raw({w: -c for w, c in self._terms.items()})

    def __mul__(self, scalar: Rational) -> "LiePoly":
        if not isinstance(scalar, Rational):
            return NotImplemented
        return LiePoly._raw({w: c * scalar for w, c in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"LiePoly({self.to_text()!r})"

    def to_text(self, alphabet: Alphabet | None = None) -> str:
        return format_poly(self, alphabet)

    def to_json(self, alphabet: Alphabet | None = None) -> list[dict[str, str]]:
        return [{"coeff": str(Fraction(self._terms[w])), "word": format_word(w, alphabet)} for w in self.words()]

    @classmethod
    def from_json(cls, data: Sequence[Mapping[str, str]], alphabet: Alphabet | None = None) -> "LiePoly":
        return cls((parse_word(item["word"], alphabet), _normalize(Fraction(item["coeff"]))) for item in data)


def format_poly(p: LiePoly, alphabet: Alphabet | None = None) -> str:
    """Text form such as ``[[[ba]a][ba]] - 2*[[[ba]b][ca]] + 1/2*[ba]``; zero prints as ``0``."""
    if not p:
        return "0"
    parts = []
    for i, w in enumerate(p.words()):
        c = p[w]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = format_word(w, alphabet) if mag == 1 else f"{mag}*{format_word(w, alphabet)}"
        if i == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_POLY_TERM = re.compile(r"\s*([+\-−])?\s*(\d+(?:/\d+)?)?\s*\*?\s*(?=\[|[A-Za-z])")


def parse_poly(text: str, alphabet: Alphabet | None = None) -> LiePoly:
    """Parse a sum of bracketings with rational coefficients into Hall form.

    Terms need not be Hall words; each bracketing is normalised with
    :func:`hall_form`. Accepts ``-`` or a Unicode minus, ``c*w`` or ``c w``.
    """
    alphabet = alphabet or DEFAULT_ALPHABET
    text = text.strip()
    if text in ("", "0"):
        return LiePoly()
    acc: dict[Tree, Rational] = {}
    pos = 0
    first = True
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _POLY_TERM.match(text, pos)
        if m is None or (not first and m.group(1) is None):
            raise HallError(f"cannot parse polynomial near {text[pos:pos + 20]!r}")
        sign = -1 if m.group(1) in ("-", "−") else 1
        coeff = _normalize(Fraction(m.group(2))) if m.group(2) else 1
        pos = m.end()
        end = _scan_word(text, pos)
        tree = parse_tree(text[pos:end], alphabet)
        pos = end
        for w, c in hall_form(tree).items():
            acc[w] = acc.get(w, 0) + sign * coeff * c
        first = False
    return LiePoly._raw(acc)


def _scan_word(text: str, pos: int) -> int:
    if text[pos].isalpha():
        return pos + 1
    depth = 0
    for i in range(pos, len(text)):
        ch = text[i]
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth == 0:
                return i + 1
    raise HallError(f"unbalanced brackets in {text[pos:]!r}")


def bracket(p: LiePoly, q: LiePoly) -> LiePoly:
    """Bilinear Lie bracket of two Lie polynomials, in Hall form."""
    out: dict[Tree, Rational] = {}
    for u, a in p.items():
        for v, b in q.items():
            ab = a * b
            for w, c in bracket_words(u, v).items():
                out[w] = out.get(w, 0) + ab * c
    return LiePoly._raw(out)


def hall_form(x: "Tree | LiePoly", coeff: Rational = 1) -> LiePoly:
    """Rewrite an arbitrary bracketing as a combination of Hall words.

    Subtrees are normalised first, then brackets of Hall words are reduced by
    anticommutativity and the Jacobi identity, recursing until every term is a
    Hall word.
    """
    if isinstance(x, LiePoly):
        return x * coeff if coeff != 1 else x
    return LiePoly._raw({w: c * coeff for w, c in _hall_form_tree(x).items()})


def _hall_form_tree(t: Tree) -> dict[Tree, int]:
    if t.letter is not None:
        return {t: 1}
    left = _hall_form_tree(t.left)
    right = _hall_form_tree(t.right)
    out: dict[Tree, int] = {}
    for u, a in left.items():
        for v, b in right.items():
            for w, c in bracket_words(u, v).items():
                out[w] = out.get(w, 0) + a * b * c
    return {w: c for w, c in out.items() if c}

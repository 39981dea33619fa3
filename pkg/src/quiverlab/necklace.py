"""Paths in the double quiver, necklace words and the necklace Lie bracket.

Coefficients are :class:`fractions.Fraction` throughout. Paths are stored
in traversal order: ``(c1, c2, ..., cm)`` means ``c1`` first, so as an
element of the path algebra it is the product ``cm ... c2 c1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from . import kernels
from .quiver import DoubleQuiver, QuiverError


class NotClosedError(QuiverError):
    """A walk that is not a cycle was used where a necklace is needed."""


class NotComposableError(QuiverError):
    pass


@dataclass(frozen=True, order=True)
class Path:
    """An oriented path in a double quiver.

    ``start``/``end`` are vertex indices; a length-0 path is the idempotent
    at ``start`` (and then ``start == end``).
    """

    start: int
    end: int
    arrows: tuple[int, ...] = ()

    @classmethod
    def idempotent(cls, vertex: int) -> "Path":
        return cls(vertex, vertex, ())

    @classmethod
    def from_arrows(cls, dq: DoubleQuiver, arrows: Iterable[int]) -> "Path":
        arrows = tuple(arrows)
        if not arrows:
            raise NotComposableError("use Path.idempotent for length-0 paths")
        for c, d in zip(arrows, arrows[1:]):
            if dq.heads[c] != dq.tails[d]:
                raise NotComposableError(
                    f"{dq.name(c)} ends at {dq.vertices[dq.heads[c]]} but "
                    f"{dq.name(d)} starts at {dq.vertices[dq.tails[d]]}")
        return cls(dq.tails[arrows[0]], dq.heads[arrows[-1]], arrows)

    @property
    def closed(self) -> bool:
        return self.start == self.end

    def __len__(self) -> int:
        return len(self.arrows)


def parse_path(dq: DoubleQuiver, text: str) -> Path:
    """Parse space-separated arrow names (``*`` suffix for duals)."""
    tokens = text.split()
    if not tokens:
        raise QuiverError("empty word")
    if len(tokens) == 1 and tokens[0].startswith("e_"):
        return Path.idempotent(dq.base.vertex_index(tokens[0][2:]))
    return Path.from_arrows(dq, (dq.arrow_index(t) for t in tokens))


@dataclass(frozen=True, order=True)
class NecklaceWord:
    """Rotation class of a cycle, stored as its least rotation.

    ``vertex`` is the base point of the stored representative, which for
    the empty word identifies the vertex necklace.
    """

    arrows: tuple[int, ...]
    vertex: int

    def __len__(self) -> int:
        return len(self.arrows)

    def format(self, dq: DoubleQuiver) -> str:
        if not self.arrows:
            return "e_" + dq.vertices[self.vertex]
        return " ".join(dq.name(c) for c in self.arrows)


def canonicalize(dq: DoubleQuiver, cycle: Path) -> NecklaceWord:
    if not cycle.closed:
        raise NotClosedError(
            f"walk from {dq.vertices[cycle.start]} to {dq.vertices[cycle.end]} is not closed")
    if not cycle.arrows:
        return NecklaceWord((), cycle.start)
    rep = kernels.least_rotation(cycle.arrows)
    return NecklaceWord(rep, dq.tails[rep[0]])


def vertex_necklace(i: int) -> NecklaceWord:
    return NecklaceWord((), i)


def parse_necklace(dq: DoubleQuiver, text: str) -> NecklaceWord:
    return canonicalize(dq, parse_path(dq, text))


class _Combination:
    """Sparse formal combination with exact rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            c = acc.get(key, 0) + Fraction(c)
            if c:
                acc[key] = c
            else:
                acc.pop(key, None)
        self._terms = acc

    @classmethod
    def _raw(cls, terms: dict):
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def basis(cls, key, coeff=1):
        return cls({key: coeff})

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def __getitem__(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, type(self)):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            c = out.get(key, 0) + c
            if c:
                out[key] = c
            else:
                del out[key]
        return self._raw(out)

    def __neg__(self):
        return self._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, _Combination):
            return NotImplemented
        scalar = Fraction(scalar)
        if not scalar:
            return self.zero()
        return self._raw({k: c * scalar for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        inner = ", ".join(f"{k!r}: {c}" for k, c in sorted(self._terms.items()))
        return f"{type(self).__name__}({{{inner}}})"


class LieElement(_Combination):
    """Element of the necklace Lie algebra: NecklaceWord -> Fraction."""

    def format(self, dq: DoubleQuiver) -> str:
        if not self:
            return "0"
        parts = []
        for w, c in sorted(self.items()):
            body = f"{abs(c)} ({w.format(dq)})"
            if parts:
                parts.append(("- " if c < 0 else "+ ") + body)
            else:
                parts.append("-" + body if c < 0 else body)
        return " ".join(parts)

    def as_terms(self, dq: DoubleQuiver) -> list[dict]:
        return [{"coeff": str(c), "word": w.format(dq), "length": len(w)}
                for w, c in sorted(self.items())]


class PathElement(_Combination):
    """Element of the path algebra of the double quiver: Path -> Fraction."""


def multiply(x: PathElement, y: PathElement) -> PathElement:
    """Product ``x * y`` in the path algebra: traverse ``y`` first, then ``x``."""
    out: dict = {}
    for p, a in x.items():
        for q, b in y.items():
            if q.end != p.start:
                continue
            key = Path(q.start, p.end, q.arrows + p.arrows)
            c = out.get(key, 0) + a * b
            if c:
                out[key] = c
            else:
                out.pop(key, None)
    return PathElement._raw(out)


def arrow_element(dq: DoubleQuiver, c: int) -> PathElement:
    return PathElement.basis(Path(dq.tails[c], dq.heads[c], (c,)))


def idempotent_element(i: int) -> PathElement:
    return PathElement.basis(Path.idempotent(i))


def moment_element(dq: DoubleQuiver) -> PathElement:
    """The element sum over base arrows a of (a a* - a* a)."""
    m = PathElement.zero()
    for k in range(len(dq.base.arrows)):
        a = arrow_element(dq, 2 * k)
        s = arrow_element(dq, 2 * k + 1)
        m = m + multiply(a, s) - multiply(s, a)
    return m


def bracket(dq: DoubleQuiver, w1: NecklaceWord, w2: NecklaceWord) -> LieElement:
    """Necklace bracket of two words.

    Every occurrence of a base arrow ``a`` in ``w1`` paired with ``a*`` in
    ``w2`` is cut out and the two open paths glued into a new necklace;
    pairs with ``a*`` in ``w1`` and ``a`` in ``w2`` enter with sign -1.
    """
    counts = kernels.bracket_counts(w1.arrows, w2.arrows)
    terms = {}
    for rep, n in counts.items():
        if rep:
            key = NecklaceWord(rep, dq.tails[rep[0]])
        else:
            # only two loops of length 1 glue to nothing
            key = NecklaceWord((), dq.tails[w1.arrows[0]])
        terms[key] = Fraction(n)
    return LieElement._raw(terms)


def bracket_elements(dq: DoubleQuiver, x: LieElement, y: LieElement) -> LieElement:
    out: dict = {}
    for w1, a in x.items():
        for w2, b in y.items():
            for w, n in bracket(dq, w1, w2).items():
                c = out.get(w, 0) + a * b * n
                if c:
                    out[w] = c
                else:
                    del out[w]
    return LieElement._raw(out)


def necklace_element(w: NecklaceWord, coeff=1) -> LieElement:
    return LieElement.basis(w, coeff)

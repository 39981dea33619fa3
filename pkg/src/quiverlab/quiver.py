"""Quiver data model, doubling, the text DSL and the JSON format."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

STAR = "*"

_KEYWORDS = frozenset({"quiver", "vertices", "arrow", "lambda", "alpha"})
_PUNCT = frozenset("{}=")
_INT_RE = re.compile(r"[+-]?\d+\Z")
_RAT_RE = re.compile(r"([+-]?\d+)(?:/(\d+))?\Z")


class QuiverError(ValueError):
    """Base class for malformed quiver input."""


class QuiverSyntaxError(QuiverError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


class DuplicateIdentifierError(QuiverError):
    pass


class UnknownVertexError(QuiverError):
    pass


class DimensionMismatchError(QuiverError):
    pass


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


def _check_identifier(name: str, what: str) -> None:
    if not name or any(ch.isspace() for ch in name):
        raise QuiverError(f"invalid {what} identifier {name!r}")
    if STAR in name or "#" in name or any(ch in _PUNCT for ch in name):
        raise QuiverError(f"{what} identifier {name!r} contains a reserved character")


@dataclass(frozen=True)
class Quiver:
    """A finite quiver; loops and parallel arrows are allowed.

    Vertex and arrow order are the declaration order and are used as the
    total order for every canonical form downstream.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()
    _vindex: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        index: dict[str, int] = {}
        for v in self.vertices:
            _check_identifier(v, "vertex")
            if v in index:
                raise DuplicateIdentifierError(f"duplicate vertex {v}")
            index[v] = len(index)
        seen: set[str] = set()
        for a in self.arrows:
            _check_identifier(a.id, "arrow")
            if a.id in seen or a.id in index:
                raise DuplicateIdentifierError(f"duplicate identifier {a.id}")
            seen.add(a.id)
            for end in (a.tail, a.head):
                if end not in index:
                    raise UnknownVertexError(f"unknown vertex {end}")
        object.__setattr__(self, "_vindex", index)

    @property
    def k(self) -> int:
        return len(self.vertices)

    def vertex_index(self, v: str) -> int:
        try:
            return self._vindex[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {v}") from None

    def arrow_ends(self) -> list[tuple[int, int]]:
        """(tail, head) vertex indices for every arrow, in order."""
        return [(self._vindex[a.tail], self._vindex[a.head]) for a in self.arrows]

    def loops_at(self, i: int) -> int:
        return sum(1 for t, h in self.arrow_ends() if t == h == i)

    def neighbours(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in self.vertices]
        for t, h in self.arrow_ends():
            adj[t].add(h)
            adj[h].add(t)
        return adj


@dataclass(frozen=True)
class DoubleQuiver:
    """The double of a quiver.

    Arrows are indexed so that base arrow number ``k`` sits at index ``2k``
    and its dual at ``2k + 1``; the involution is ``c ^ 1``.
    """

    base: Quiver
    arrows: tuple[Arrow, ...] = field(init=False)
    tails: tuple[int, ...] = field(init=False, repr=False, compare=False)
    heads: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _aindex: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        arrows: list[Arrow] = []
        for a in self.base.arrows:
            arrows.append(a)
            arrows.append(Arrow(a.id + STAR, a.head, a.tail))
        vi = self.base.vertex_index
        object.__setattr__(self, "arrows", tuple(arrows))
        object.__setattr__(self, "tails", tuple(vi(a.tail) for a in arrows))
        object.__setattr__(self, "heads", tuple(vi(a.head) for a in arrows))
        object.__setattr__(self, "_aindex", {a.id: n for n, a in enumerate(arrows)})

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.base.vertices

    @property
    def k(self) -> int:
        return self.base.k

    @staticmethod
    def star(c: int) -> int:
        return c ^ 1

    @staticmethod
    def is_dual(c: int) -> bool:
        return bool(c & 1)

    def arrow_index(self, name: str) -> int:
        try:
            return self._aindex[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name}") from None

    def name(self, c: int) -> str:
        return self.arrows[c].id


def double(q: Quiver) -> DoubleQuiver:
    if not isinstance(q, Quiver):
        raise TypeError(f"can only double a Quiver, got {type(q).__name__}")
    return DoubleQuiver(q)


# dimension vectors and weights are plain tuples indexed by vertex order


def dim_vector(q: Quiver, values: Sequence[int] | Mapping[str, int]) -> tuple[int, ...]:
    vec = _by_vertex(q, values, int)
    if any(x < 0 for x in vec):
        raise QuiverError(f"dimension vector has a negative entry: {vec}")
    return vec


def weights(q: Quiver, values: Sequence | Mapping[str, object]) -> tuple[Fraction, ...]:
    return _by_vertex(q, values, Fraction)


def _by_vertex(q, values, conv):
    if isinstance(values, Mapping):
        out = [conv(0)] * q.k
        for v, x in values.items():
            out[q.vertex_index(v)] = conv(x)
        return tuple(out)
    values = tuple(conv(x) for x in values)
    if len(values) != q.k:
        raise DimensionMismatchError(
            f"expected {q.k} entries, got {len(values)}")
    return values


@dataclass(frozen=True)
class QuiverDocument:
    """A quiver with optional dimension vector and weights."""

    quiver: Quiver
    alpha: tuple[int, ...] | None = None
    lam: tuple[Fraction, ...] | None = None


# --- DSL -------------------------------------------------------------------


def _tokenize(text: str) -> list[tuple[str, int, int]]:
    tokens = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for m in re.finditer(r"[{}=]|[^\s{}=]+", line):
            tokens.append((m.group(), lineno, m.start() + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        lines = text.splitlines() or [""]
        self.eof = (len(lines), len(lines[-1]) + 1)

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def where(self) -> tuple[int, int]:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1:]
        return self.eof

    def fail(self, message: str):
        raise QuiverSyntaxError(message, *self.where())

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            self.fail(f"expected {expected or 'token'}, found end of input")
        if expected is not None and tok != expected:
            self.fail(f"expected {expected!r}, found {tok!r}")
        self.pos += 1
        return tok

    def ident(self, what: str) -> str:
        tok = self.peek()
        if tok is None or tok in _KEYWORDS or tok in _PUNCT:
            self.fail(f"expected {what} identifier, found {tok or 'end of input'!r}")
        if STAR in tok:
            self.fail(f"identifier {tok!r} contains the star marker")
        return self.take()

    def document(self) -> QuiverDocument:
        self.take("quiver")
        self.take("{")
        self.take("vertices")
        vertices = [self.ident("vertex")]
        while self.peek() not in ("arrow", "}", None):
            vertices.append(self.ident("vertex"))
        seen = set()
        for v in vertices:
            if v in seen:
                raise DuplicateIdentifierError(f"duplicate vertex {v}")
            seen.add(v)
        arrows = []
        while self.peek() == "arrow":
            self.take()
            aid = self.ident("arrow")
            tail = self.ident("vertex")
            head = self.ident("vertex")
            arrows.append(Arrow(aid, tail, head))
        self.take("}")
        q = Quiver(tuple(vertices), tuple(arrows))

        alpha = lam = None
        while self.peek() is not None:
            kw = self.take()
            if kw not in ("lambda", "alpha"):
                self.pos -= 1
                self.fail(f"expected 'lambda' or 'alpha' block, found {kw!r}")
            if (kw == "alpha" and alpha is not None) or (kw == "lambda" and lam is not None):
                raise DuplicateIdentifierError(f"duplicate {kw} block")
            values = self.assignments(q, kw)
            if kw == "alpha":
                alpha = dim_vector(q, values)
            else:
                lam = weights(q, values)
        return QuiverDocument(q, alpha, lam)

    def assignments(self, q: Quiver, kw: str) -> dict[str, object]:
        values: dict[str, object] = {}
        while True:
            v = self.ident("vertex")
            q.vertex_index(v)
            if v in values:
                raise DuplicateIdentifierError(f"duplicate {kw} entry for {v}")
            self.take("=")
            tok = self.peek()
            if tok is None:
                self.fail("expected a number")
            if kw == "alpha":
                if not _INT_RE.match(tok):
                    self.fail(f"expected an integer, found {tok!r}")
                values[v] = int(tok)
            else:
                values[v] = _parse_rational(tok, self)
            self.take()
            if self.peek() in ("lambda", "alpha", None):
                return values


def _parse_rational(tok: str, parser: _Parser | None = None) -> Fraction:
    m = _RAT_RE.match(tok)
    if not m or (m.group(2) is not None and int(m.group(2)) == 0):
        if parser is not None:
            parser.fail(f"expected a rational, found {tok!r}")
        raise QuiverError(f"expected a rational, found {tok!r}")
    return Fraction(int(m.group(1)), int(m.group(2) or 1))


def parse_document(text: str) -> QuiverDocument:
    """Parse the DSL or, if the text is a JSON object, the JSON format."""
    if text.lstrip().startswith("{"):
        return load_json(text)
    return _Parser(text).document()


def parse_quiver(text: str) -> Quiver:
    return parse_document(text).quiver


# --- JSON ------------------------------------------------------------------


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def to_dict(q: Quiver, alpha=None, lam=None) -> dict:
    out: dict = {
        "vertices": list(q.vertices),
        "arrows": [{"id": a.id, "tail": a.tail, "head": a.head} for a in q.arrows],
    }
    if alpha is not None:
        if len(alpha) != q.k:
            raise DimensionMismatchError(f"alpha has {len(alpha)} entries, quiver has {q.k} vertices")
        out["alpha"] = {v: int(x) for v, x in zip(q.vertices, alpha)}
    if lam is not None:
        if len(lam) != q.k:
            raise DimensionMismatchError(f"lambda has {len(lam)} entries, quiver has {q.k} vertices")
        out["lambda"] = {v: format_rational(x) for v, x in zip(q.vertices, lam)}
    return out


def serialize(q: Quiver, alpha: Sequence[int] | None = None,
              lam: Sequence[Fraction] | None = None) -> str:
    return json.dumps(to_dict(q, alpha, lam), sort_keys=True, indent=2, ensure_ascii=False)


def from_dict(data: Mapping) -> QuiverDocument:
    try:
        vertices = data["vertices"]
        arrows = [Arrow(a["id"], a["tail"], a["head"]) for a in data["arrows"]]
    except (KeyError, TypeError) as exc:
        raise QuiverError(f"malformed quiver JSON: missing {exc}") from None
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise QuiverError("malformed quiver JSON: 'vertices' must be a list of strings")
    q = Quiver(tuple(vertices), tuple(arrows))
    alpha = lam = None
    if data.get("alpha") is not None:
        raw = data["alpha"]
        if not isinstance(raw, Mapping) or not all(
                isinstance(x, int) and not isinstance(x, bool) for x in raw.values()):
            raise QuiverError("malformed quiver JSON: 'alpha' must map vertices to integers")
        alpha = dim_vector(q, raw)
    if data.get("lambda") is not None:
        raw = data["lambda"]
        if not isinstance(raw, Mapping):
            raise QuiverError("malformed quiver JSON: 'lambda' must map vertices to rationals")
        lam = weights(q, {v: _parse_rational(str(x)) for v, x in raw.items()})
    return QuiverDocument(q, alpha, lam)


def load_json(text: str) -> QuiverDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuiverSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, Mapping):
        raise QuiverError("malformed quiver JSON: top level must be an object")
    return from_dict(data)


def to_dsl(q: Quiver, alpha: Iterable[int] | None = None, lam=None) -> str:
    lines = ["quiver {", "  vertices " + " ".join(q.vertices)]
    lines += [f"  arrow {a.id} {a.tail} {a.head}" for a in q.arrows]
    lines.append("}")
    if alpha is not None:
        lines.append("alpha " + " ".join(f"{v}={x}" for v, x in zip(q.vertices, alpha)))
    if lam is not None:
        lines.append("lambda " + " ".join(f"{v}={format_rational(x)}" for v, x in zip(q.vertices, lam)))
    return "\n".join(lines) + "\n"

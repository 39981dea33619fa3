"""Euler and Tits forms, reflections, and positive roots inside a box.

All arithmetic is on Python ints so nothing overflows on wild quivers.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .quiver import DimensionMismatchError, Quiver

Vector = tuple[int, ...]


class LoopVertexError(ValueError):
    """Raised when reflecting at a vertex that carries loops."""


@dataclass(frozen=True)
class FormsContext:
    quiver: Quiver

    @cached_property
    def euler(self) -> tuple[tuple[int, ...], ...]:
        k = self.quiver.k
        m = [[int(i == j) for j in range(k)] for i in range(k)]
        for t, h in self.quiver.arrow_ends():
            m[t][h] -= 1
        return tuple(map(tuple, m))

    @cached_property
    def tits(self) -> tuple[tuple[int, ...], ...]:
        k = self.quiver.k
        e = self.euler
        return tuple(tuple(e[i][j] + e[j][i] for j in range(k)) for i in range(k))

    @cached_property
    def loop_free(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.quiver.k) if self.euler[i][i] == 1)

    def _check(self, *vecs: Sequence[int]) -> None:
        for v in vecs:
            if len(v) != self.quiver.k:
                raise DimensionMismatchError(
                    f"vector {tuple(v)} has length {len(v)}, expected {self.quiver.k}")


def _bilinear(m, a, b) -> int:
    return sum(a[i] * m[i][j] * b[j] for i in range(len(a)) if a[i] for j in range(len(b)) if b[j])


def chi(ctx: FormsContext, a: Sequence[int], b: Sequence[int]) -> int:
    """Euler form a^T chi b."""
    ctx._check(a, b)
    return _bilinear(ctx.euler, a, b)


def tits(ctx: FormsContext, a: Sequence[int], b: Sequence[int]) -> int:
    ctx._check(a, b)
    return _bilinear(ctx.tits, a, b)


def p(ctx: FormsContext, a: Sequence[int]) -> int:
    return 1 - chi(ctx, a, a)


def reflect(ctx: FormsContext, i: int, a: Sequence[int]) -> Vector:
    """Simple reflection s_i(a) = a - T(a, e_i) e_i at a loop-free vertex."""
    ctx._check(a)
    if i not in ctx.loop_free:
        raise LoopVertexError(f"vertex {ctx.quiver.vertices[i]} has loops; no reflection")
    t = sum(a[j] * ctx.tits[j][i] for j in range(len(a)))
    out = list(a)
    out[i] -= t
    return tuple(out)


def is_indivisible(a: Sequence[int]) -> bool:
    if not any(a):
        raise ValueError("the zero vector has no gcd")
    return math.gcd(*a) == 1


def support_connected(q: Quiver, a: Sequence[int]) -> bool:
    supp = {i for i, x in enumerate(a) if x}
    if not supp:
        return False
    adj = q.neighbours()
    start = next(iter(supp))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w in supp and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == supp


def in_fundamental_region(ctx: FormsContext, a: Sequence[int]) -> bool:
    if any(x < 0 for x in a) or not support_connected(ctx.quiver, a):
        return False
    return all(tits(ctx, a, _unit(ctx.quiver.k, j)) <= 0 for j in ctx.loop_free)


def _unit(k: int, i: int) -> Vector:
    return tuple(int(j == i) for j in range(k))


@dataclass(frozen=True)
class Root:
    vector: Vector
    real: bool
    p: int

    @property
    def indivisible(self) -> bool:
        return is_indivisible(self.vector)

    def as_dict(self) -> dict:
        return {
            "vector": list(self.vector),
            "kind": "real" if self.real else "imaginary",
            "p": self.p,
            "indivisible": self.indivisible,
        }


@dataclass(frozen=True)
class RootSet:
    box: Vector
    roots: tuple[Root, ...]

    def __contains__(self, v) -> bool:
        return tuple(v) in self.vectors

    def __iter__(self):
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    @cached_property
    def vectors(self) -> frozenset[Vector]:
        return frozenset(r.vector for r in self.roots)

    def get(self, v) -> Root | None:
        for r in self.roots:
            if r.vector == tuple(v):
                return r
        return None


def box_vectors(box: Sequence[int]):
    """All nonzero vectors 0 <= v <= box, in lexicographic order."""
    for v in itertools.product(*(range(b + 1) for b in box)):
        if any(v):
            yield v


def _closure(ctx: FormsContext, seeds: set[Vector], box: Vector) -> set[Vector]:
    found = set(seeds)
    frontier = list(seeds)
    while frontier:
        nxt = []
        for a in frontier:
            for i in ctx.loop_free:
                b = reflect(ctx, i, a)
                if b[i] < 0 or b[i] > box[i] or b in found:
                    continue
                found.add(b)
                nxt.append(b)
        frontier = nxt
    return found


def enumerate_roots(ctx: FormsContext, box: Sequence[int]) -> RootSet:
    """Positive roots that fit inside ``box``.

    Real roots are the reflection orbit of the simple roots at loop-free
    vertices; imaginary roots are the orbit of the fundamental region
    (which contains e_i for every loop vertex). Reflections whose image
    leaves the box are dropped; every positive root reduces to a seed by
    height-decreasing reflections, so nothing inside the box is missed.
    """
    box = tuple(int(b) for b in box)
    ctx._check(box)
    if any(b < 0 for b in box):
        raise ValueError("box entries must be nonnegative")
    k = ctx.quiver.k
    real_seeds = {_unit(k, i) for i in ctx.loop_free if box[i] >= 1}
    imag_seeds = {v for v in box_vectors(box) if in_fundamental_region(ctx, v)}
    real = _closure(ctx, real_seeds, box)
    imag = _closure(ctx, imag_seeds, box)
    roots = [Root(v, True, p(ctx, v)) for v in real]
    roots += [Root(v, False, p(ctx, v)) for v in imag - real]
    roots.sort(key=lambda r: r.vector)
    return RootSet(box, tuple(roots))

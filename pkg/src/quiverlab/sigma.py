"""Sigma_lambda membership, representation types, local quivers, decisions.

Membership in Sigma_lambda uses Crawley-Boevey's criterion: beta is a
positive root with lambda . beta = 0 and p(beta) strictly exceeds
sum p(beta_t) for every decomposition of beta into at least two positive
roots orthogonal to lambda.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .quiver import Arrow, DoubleQuiver, Quiver, QuiverError, double
from .roots import FormsContext, enumerate_roots, p, tits

Vector = tuple[int, ...]
_NEG_INF = float("-inf")


class DomainError(ValueError):
    """The query has no answer (e.g. lambda . alpha != 0)."""


class NotInSigmaError(DomainError):
    pass


class InvalidTypeError(DomainError):
    pass


class MinimalityMismatchWarning(UserWarning):
    """Poset-minimality and 'only the Azumaya type exists' disagree."""


def dot(lam: Sequence[Fraction], beta: Sequence[int]) -> Fraction:
    return sum((Fraction(l) * b for l, b in zip(lam, beta)), Fraction(0))


def _leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class SigmaQuery:
    quiver: Quiver
    lam: tuple[Fraction, ...]
    alpha: tuple[int, ...]
    box: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        k = self.quiver.k
        object.__setattr__(self, "lam", tuple(Fraction(x) for x in self.lam))
        object.__setattr__(self, "alpha", tuple(int(x) for x in self.alpha))
        if self.box is None:
            object.__setattr__(self, "box", self.alpha)
        else:
            object.__setattr__(self, "box", tuple(int(x) for x in self.box))
        for name in ("lam", "alpha", "box"):
            if len(getattr(self, name)) != k:
                raise QuiverError(f"{name} must have {k} entries")
        if any(x < 0 for x in self.alpha) or any(x < 0 for x in self.box):
            raise QuiverError("dimension vectors must be nonnegative")

    @cached_property
    def forms(self) -> FormsContext:
        return FormsContext(self.quiver)

    @cached_property
    def search_box(self) -> Vector:
        # covers the user box and everything below alpha
        return tuple(max(a, b) for a, b in zip(self.alpha, self.box))

    @cached_property
    def roots(self):
        return enumerate_roots(self.forms, self.search_box)

    @cached_property
    def lambda_roots(self) -> tuple[Vector, ...]:
        """Positive roots in the search box orthogonal to lambda, sorted."""
        return tuple(r.vector for r in self.roots if dot(self.lam, r.vector) == 0)

    @cached_property
    def _best(self) -> dict:
        return {}

    def best_split(self, beta: Vector) -> float | int:
        """Max of sum p(beta_t) over decompositions of beta into >= 1 lambda-roots."""
        memo = self._best
        if beta in memo:
            return memo[beta]
        if not any(beta):
            return 0
        best = _NEG_INF
        for r in self.lambda_roots:
            if _leq(r, beta):
                rest = self.best_split(_sub(beta, r))
                if rest != _NEG_INF:
                    best = max(best, p(self.forms, r) + rest)
        memo[beta] = best
        return best

    def best_proper_split(self, beta: Vector) -> float | int:
        """Same maximum restricted to decompositions with at least two parts."""
        best = _NEG_INF
        for r in self.lambda_roots:
            if r != beta and _leq(r, beta):
                rest = self.best_split(_sub(beta, r))
                if rest != _NEG_INF:
                    best = max(best, p(self.forms, r) + rest)
        return best

    @cached_property
    def sigma(self) -> tuple[Vector, ...]:
        """Sigma_lambda intersected with the search box, sorted."""
        return tuple(b for b in self.lambda_roots if self._in_sigma(b))

    def _in_sigma(self, beta: Vector) -> bool:
        if beta not in self.roots or dot(self.lam, beta) != 0:
            return False
        return p(self.forms, beta) > self.best_proper_split(beta)


def in_sigma(q: SigmaQuery, beta: Sequence[int]) -> bool:
    beta = tuple(int(x) for x in beta)
    if len(beta) != q.quiver.k:
        raise QuiverError(f"beta must have {q.quiver.k} entries")
    if not _leq(beta, q.search_box):
        raise DomainError(f"{beta} lies outside the search box {q.search_box}")
    if not any(beta):
        return False
    return q._in_sigma(beta)


def enumerate_sigma(q: SigmaQuery) -> list[Vector]:
    return [b for b in q.sigma if _leq(b, q.box)]


def _sums_below(gens: Sequence[Vector], bound: Vector) -> set[Vector]:
    """Nonempty sums (with repetition) of ``gens`` that stay below ``bound``."""
    seen: set[Vector] = set()
    frontier = [g for g in gens if _leq(g, bound)]
    while frontier:
        v = frontier.pop()
        if v in seen:
            continue
        seen.add(v)
        for g in gens:
            w = tuple(a + b for a, b in zip(v, g))
            if _leq(w, bound) and w not in seen:
                frontier.append(w)
    return seen


def is_minimal(q: SigmaQuery) -> bool:
    """Minimality of alpha in Sigma_lambda under the decomposition order.

    beta precedes alpha when alpha - beta is a nonzero sum of elements of
    Sigma_lambda, so alpha is minimal exactly when it is not a sum of two or
    more members. This is the order under which minimality is equivalent to
    every alpha-dimensional representation being simple.
    """
    if not in_sigma(q, q.alpha):
        raise NotInSigmaError(f"{q.alpha} is not in Sigma_lambda")
    below = [b for b in q.sigma if b != q.alpha and _leq(b, q.alpha)]
    sums = _sums_below(below, q.alpha)
    return not any(_sub(q.alpha, b) in sums for b in below)


def is_componentwise_minimal(q: SigmaQuery) -> bool:
    """No other member of Sigma_lambda lies below alpha entrywise.

    Stronger than :func:`is_minimal`; the two can differ when some
    beta < alpha in Sigma_lambda leaves a remainder outside its span.
    """
    if not in_sigma(q, q.alpha):
        raise NotInSigmaError(f"{q.alpha} is not in Sigma_lambda")
    return not any(b != q.alpha and _leq(b, q.alpha) for b in q.sigma)


@dataclass(frozen=True)
class RepType:
    """Semisimple representation type: pairs (multiplicity, dimension vector).

    Pairs are kept sorted by decreasing dimension vector, then decreasing
    multiplicity.
    """

    pairs: tuple[tuple[int, Vector], ...]
    dimension: int = field(default=0, compare=False)

    @property
    def total(self) -> Vector:
        k = len(self.pairs[0][1]) if self.pairs else 0
        out = [0] * k
        for e, b in self.pairs:
            for i, x in enumerate(b):
                out[i] += e * x
        return tuple(out)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.pairs)

    def is_azumaya(self, alpha: Sequence[int]) -> bool:
        return self.pairs == ((1, tuple(alpha)),)

    def format(self) -> str:
        return "; ".join(f"{e},({','.join(map(str, b))})" for e, b in self.pairs)

    def as_list(self) -> list:
        return [[e, list(b)] for e, b in self.pairs]


def make_type(q: SigmaQuery, pairs: Sequence[tuple[int, Sequence[int]]]) -> RepType:
    """Validate and normalise a representation type for ``q.alpha``."""
    norm = tuple(sorted(((int(e), tuple(int(x) for x in b)) for e, b in pairs),
                        key=lambda t: (t[1], t[0]), reverse=True))
    if not norm:
        raise InvalidTypeError("empty representation type")
    total = [0] * q.quiver.k
    for e, b in norm:
        if e < 1:
            raise InvalidTypeError(f"multiplicity {e} must be positive")
        if len(b) != q.quiver.k:
            raise InvalidTypeError(f"{b} has the wrong length")
        if not _leq(b, q.alpha) or not in_sigma(q, b):
            raise InvalidTypeError(f"{b} is not in Sigma_lambda")
        for i, x in enumerate(b):
            total[i] += e * x
    if tuple(total) != q.alpha:
        raise InvalidTypeError(f"type sums to {tuple(total)}, not {q.alpha}")
    betas = [b for _, b in norm]
    for b in set(betas):
        if betas.count(b) > 1 and p(q.forms, b) == 0:
            raise InvalidTypeError(f"real root {b} supports a unique simple and cannot repeat")
    dim = sum(2 * p(q.forms, b) for b in betas)
    return RepType(norm, dim)


def enumerate_types(q: SigmaQuery) -> list[RepType]:
    """All representation types of ``q.alpha``.

    Sorted by decreasing stratum dimension, ties broken by the pairs.
    """
    alpha = q.alpha
    if not any(alpha):
        return []
    betas = [b for b in q.sigma if _leq(b, alpha)]
    cands = sorted(((e, b) for b in betas for e in range(1, max(alpha) + 1)
                    if _leq(tuple(e * x for x in b), alpha)),
                   key=lambda t: (t[1], t[0]), reverse=True)
    real = {b for b in betas if p(q.forms, b) == 0}
    out: list[RepType] = []

    def rec(start: int, remaining: Vector, chosen: list, used_real: frozenset):
        if not any(remaining):
            pairs = tuple(chosen)
            dim = sum(2 * p(q.forms, b) for _, b in pairs)
            out.append(RepType(pairs, dim))
            return
        for n in range(start, len(cands)):
            e, b = cands[n]
            if b in used_real:
                continue
            step = tuple(e * x for x in b)
            if not _leq(step, remaining):
                continue
            chosen.append((e, b))
            rec(n, _sub(remaining, step),
                chosen, used_real | {b} if b in real else used_real)
            chosen.pop()

    rec(0, alpha, [], frozenset())
    out.sort(key=lambda t: (-t.dimension, tuple((tuple(-x for x in b), -e) for e, b in t.pairs)))
    return out


@dataclass(frozen=True)
class LocalQuiverSetting:
    """Local quiver of a type: a double quiver plus its dimension vector."""

    double: DoubleQuiver
    alpha: tuple[int, ...]

    @property
    def base(self) -> Quiver:
        return self.double.base


def local_quiver(q: SigmaQuery, tau: RepType | Sequence) -> LocalQuiverSetting:
    """Local quiver Gamma_tau, stored as the double of a base quiver Q'.

    Q' has p(beta_i) loops at vertex i and, for i < j, -T(beta_i, beta_j)
    arrows i -> j; doubling gives the symmetric quiver with 2 p(beta_i)
    loops and -T arrows each way.
    """
    if not isinstance(tau, RepType):
        tau = make_type(q, tau)
    else:
        tau = make_type(q, tau.pairs)
    betas = [b for _, b in tau.pairs]
    u = len(betas)
    vertices = tuple(f"s{i + 1}" for i in range(u))
    arrows = []
    for i, b in enumerate(betas):
        for n in range(p(q.forms, b)):
            arrows.append(Arrow(f"l{i + 1}_{n + 1}", vertices[i], vertices[i]))
    for i in range(u):
        for j in range(i + 1, u):
            m = -tits(q.forms, betas[i], betas[j])
            if m < 0:
                raise InvalidTypeError(
                    f"T({betas[i]}, {betas[j]}) = {-m} > 0; not a valid type")
            for n in range(m):
                arrows.append(Arrow(f"b{i + 1}_{j + 1}_{n + 1}", vertices[i], vertices[j]))
    base = Quiver(vertices, tuple(arrows))
    return LocalQuiverSetting(double(base), tau.multiplicities)


@dataclass
class Stratum:
    type: RepType
    dimension: int
    smooth: bool

    def as_dict(self) -> dict:
        return {"type": self.type.as_list(), "dimension": self.dimension, "smooth": self.smooth}


@dataclass
class DecisionReport:
    inSigma: bool
    minimal: bool
    dimension: int | None
    strata: list[Stratum]
    warnings: list[str] = field(default_factory=list)
    componentwiseMinimal: bool = False

    # the five conditions are equivalent, so each one is reported as minimality
    @property
    def coadjointOrbit(self) -> bool:
        return self.minimal

    @property
    def smoothQuotient(self) -> bool:
        return self.minimal

    @property
    def azumaya(self) -> bool:
        return self.minimal

    @property
    def alphaSmooth(self) -> bool:
        return self.minimal

    @property
    def conditions(self) -> dict[str, bool]:
        return {
            "minimal": self.minimal,
            "coadjointOrbit": self.coadjointOrbit,
            "smoothQuotient": self.smoothQuotient,
            "azumaya": self.azumaya,
            "alphaSmooth": self.alphaSmooth,
        }

    def as_dict(self) -> dict:
        out = {"inSigma": self.inSigma, **self.conditions,
               "dimension": self.dimension,
               "typeCount": len(self.strata),
               "componentwiseMinimal": self.componentwiseMinimal,
               "strata": [s.as_dict() for s in self.strata],
               "warnings": list(self.warnings)}
        return out


def decide(q: SigmaQuery) -> DecisionReport:
    if not any(q.alpha):
        raise DomainError("alpha must be nonzero")
    if dot(q.lam, q.alpha) != 0:
        raise DomainError("lambda·alpha ≠ 0")
    member = in_sigma(q, q.alpha)
    minimal = is_minimal(q) if member else False
    types = enumerate_types(q)
    strata = [Stratum(t, t.dimension, t.is_azumaya(q.alpha)) for t in types]
    notes = []
    if member and minimal != (len(types) == 1):
        msg = (f"minimality ({minimal}) disagrees with the type count "
               f"({len(types)}) for alpha={q.alpha}")
        warnings.warn(msg, MinimalityMismatchWarning, stacklevel=2)
        notes.append(msg)
    dim = 2 * p(q.forms, q.alpha) if member else None
    entrywise = is_componentwise_minimal(q) if member else False
    return DecisionReport(member, minimal, dim, strata, notes, entrywise)

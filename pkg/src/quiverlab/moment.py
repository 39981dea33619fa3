"""Moment-map lab: evaluate, differentiate and sample the complex moment map.

A representation point assigns to every arrow ``c`` of the double quiver a
matrix of shape ``alpha[head(c)] x alpha[tail(c)]``. Exact points hold
``Fraction`` entries in numpy object arrays; sampled points are complex128.
Numerical results are witnesses only; the authoritative verdict is
:func:`quiverlab.sigma.decide`.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import exact_rank, numeric_rank
from .necklace import PathElement
from .quiver import DoubleQuiver, QuiverError
from .roots import p
from .sigma import DomainError, SigmaQuery, dot, in_sigma, is_minimal

log = logging.getLogger(__name__)

EXACT = "exact"
COMPLEX = "complex"

RESIDUAL_TOL = 1e-8
RANK_TOL = 1e-8


class ShapeError(QuiverError):
    pass


class SamplingError(RuntimeError):
    def __init__(self, message: str, stats: dict):
        super().__init__(message)
        self.stats = stats


@dataclass(frozen=True)
class RepPoint:
    matrices: tuple[np.ndarray, ...]
    field: str = COMPLEX

    def __post_init__(self):
        if self.field not in (EXACT, COMPLEX):
            raise ValueError(f"unknown field {self.field!r}")

    def vector(self) -> np.ndarray:
        return np.concatenate([m.ravel() for m in self.matrices]) if self.matrices \
            else np.zeros(0, dtype=complex if self.field == COMPLEX else object)


def shapes(dq: DoubleQuiver, alpha: Sequence[int]) -> list[tuple[int, int]]:
    if len(alpha) != dq.k:
        raise ShapeError(f"alpha must have {dq.k} entries")
    return [(alpha[h], alpha[t]) for t, h in zip(dq.tails, dq.heads)]


def ambient_dimension(dq: DoubleQuiver, alpha: Sequence[int]) -> int:
    return sum(r * c for r, c in shapes(dq, alpha))


def gauge_dimension(alpha: Sequence[int]) -> int:
    """dim PGL(alpha) = sum a_i^2 - 1."""
    return sum(a * a for a in alpha) - 1


def _zeros(shape, exact: bool):
    if exact:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros(shape, dtype=complex)


def _mm(a, b, exact: bool):
    if exact and (a.shape[1] == 0):
        return _zeros((a.shape[0], b.shape[1]), True)
    return a @ b


def _check(dq: DoubleQuiver, alpha, V: RepPoint):
    expected = shapes(dq, alpha)
    if len(V.matrices) != len(expected):
        raise ShapeError(f"expected {len(expected)} matrices, got {len(V.matrices)}")
    for c, (m, s) in enumerate(zip(V.matrices, expected)):
        if m.shape != s:
            raise ShapeError(f"arrow {dq.name(c)}: shape {m.shape}, expected {s}")


def rep_point(dq: DoubleQuiver, alpha, matrices: dict | Sequence, field: str = COMPLEX) -> RepPoint:
    """Build a point; ``matrices`` may be keyed by arrow name, missing ones are zero."""
    exact = field == EXACT
    sh = shapes(dq, alpha)
    if isinstance(matrices, dict):
        out = []
        for c, s in enumerate(sh):
            if dq.name(c) in matrices:
                out.append(_coerce(matrices[dq.name(c)], s, exact))
            else:
                out.append(_zeros(s, exact))
        unknown = set(matrices) - {dq.name(c) for c in range(len(sh))}
        if unknown:
            raise ShapeError(f"unknown arrows {sorted(unknown)}")
    else:
        out = [_coerce(m, s, exact) for m, s in zip(matrices, sh)]
    V = RepPoint(tuple(out), field)
    _check(dq, alpha, V)
    return V


def _coerce(m, shape, exact):
    if exact:
        arr = np.empty(shape, dtype=object)
        src = np.asarray(m, dtype=object).reshape(shape)
        for idx in np.ndindex(*shape):
            arr[idx] = Fraction(src[idx])
        return arr
    return np.asarray(m, dtype=complex).reshape(shape)


def zero_point(dq: DoubleQuiver, alpha, field: str = COMPLEX) -> RepPoint:
    return RepPoint(tuple(_zeros(s, field == EXACT) for s in shapes(dq, alpha)), field)


def moment(dq: DoubleQuiver, alpha: Sequence[int], V: RepPoint) -> tuple[np.ndarray, ...]:
    """Blocks m_i = sum_{head a = i} V_a V_a* - sum_{tail a = i} V_a* V_a."""
    _check(dq, alpha, V)
    exact = V.field == EXACT
    blocks = [_zeros((a, a), exact) for a in alpha]
    for k in range(len(dq.base.arrows)):
        a, s = V.matrices[2 * k], V.matrices[2 * k + 1]
        blocks[dq.heads[2 * k]] = blocks[dq.heads[2 * k]] + _mm(a, s, exact)
        blocks[dq.tails[2 * k]] = blocks[dq.tails[2 * k]] - _mm(s, a, exact)
    return tuple(blocks)


def lambda_target(alpha: Sequence[int], lam: Sequence[Fraction], exact: bool = False):
    """Blockwise lambda_i * identity, converted to floats once if inexact."""
    out = []
    for a, l in zip(alpha, lam):
        m = _zeros((a, a), exact)
        for i in range(a):
            m[i, i] = Fraction(l) if exact else complex(float(Fraction(l)))
        out.append(m)
    return tuple(out)


def differential(dq: DoubleQuiver, alpha, V: RepPoint, X: RepPoint) -> tuple[np.ndarray, ...]:
    """d mu_V(X) = sum [X_a, V_a*] + [V_a, X_a*]."""
    _check(dq, alpha, V)
    _check(dq, alpha, X)
    exact = V.field == EXACT and X.field == EXACT
    blocks = [_zeros((a, a), exact) for a in alpha]
    for k in range(len(dq.base.arrows)):
        h, t = dq.heads[2 * k], dq.tails[2 * k]
        va, vs = V.matrices[2 * k], V.matrices[2 * k + 1]
        xa, xs = X.matrices[2 * k], X.matrices[2 * k + 1]
        blocks[h] = blocks[h] + _mm(xa, vs, exact) + _mm(va, xs, exact)
        blocks[t] = blocks[t] - _mm(vs, xa, exact) - _mm(xs, va, exact)
    return tuple(blocks)


def _basis_points(dq, alpha, exact):
    sh = shapes(dq, alpha)
    for c, (r, s) in enumerate(sh):
        for i in range(r):
            for j in range(s):
                mats = [_zeros(x, exact) for x in sh]
                mats[c][i, j] = Fraction(1) if exact else 1.0
                yield RepPoint(tuple(mats), EXACT if exact else COMPLEX)


def _flatten(blocks) -> list:
    return [x for b in blocks for x in b.ravel()]


def differential_matrix(dq: DoubleQuiver, alpha, V: RepPoint):
    """Matrix of d mu_V: rows index the target blocks, columns the arrow entries."""
    exact = V.field == EXACT
    cols = [_flatten(differential(dq, alpha, V, X)) for X in _basis_points(dq, alpha, exact)]
    nrows = sum(a * a for a in alpha)
    if exact:
        return [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]
    if not cols:
        return np.zeros((nrows, 0), dtype=complex)
    return np.array(cols, dtype=complex).T.reshape(nrows, len(cols))


def jacobian_rank(dq: DoubleQuiver, alpha, V: RepPoint, tol: float = RANK_TOL) -> int:
    """Rank of the differential; exact for rational points, else via SVD."""
    J = differential_matrix(dq, alpha, V)
    if V.field == EXACT:
        return exact_rank(J)
    return numeric_rank(J, tol)


def _endomorphism_system(dq: DoubleQuiver, alpha, V: RepPoint):
    """Rows of X_head V_c - V_c X_tail = 0 in the unknowns (X_i)."""
    exact = V.field == EXACT
    offsets = np.cumsum([0] + [a * a for a in alpha])
    nvars = int(offsets[-1])
    rows = []
    for c, Vc in enumerate(V.matrices):
        h, t = dq.heads[c], dq.tails[c]
        r, s = Vc.shape
        for i in range(r):
            for j in range(s):
                row = [Fraction(0) if exact else 0j] * nvars
                # (X_h V_c)_{ij} = sum_k X_h[i,k] V_c[k,j]
                for k in range(r):
                    row[offsets[h] + i * alpha[h] + k] += Vc[k, j]
                # (V_c X_t)_{ij} = sum_k V_c[i,k] X_t[k,j]
                for k in range(s):
                    row[offsets[t] + k * alpha[t] + j] -= Vc[i, k]
                rows.append(row)
    return rows, nvars


def endomorphism_dimension(dq: DoubleQuiver, alpha, V: RepPoint, tol: float = RANK_TOL) -> int:
    _check(dq, alpha, V)
    rows, nvars = _endomorphism_system(dq, alpha, V)
    if not rows:
        return nvars
    if V.field == EXACT:
        return nvars - exact_rank(rows)
    return nvars - numeric_rank(np.array(rows, dtype=complex), tol)


def evaluate(dq: DoubleQuiver, elt: PathElement, alpha, V: RepPoint) -> np.ndarray:
    """Evaluate a path-algebra element as an n x n block matrix.

    A path c1 ... cm (traversal order) maps to V_cm ... V_c1, placed in the
    block (end vertex, start vertex).
    """
    _check(dq, alpha, V)
    exact = V.field == EXACT
    offsets = np.cumsum([0] + list(alpha))
    n = int(offsets[-1])
    out = _zeros((n, n), exact)
    for path, coeff in elt.items():
        a_start = alpha[path.start]
        m = _zeros((a_start, a_start), exact)
        for i in range(a_start):
            m[i, i] = Fraction(1) if exact else 1.0
        for c in path.arrows:
            m = _mm(V.matrices[c], m, exact)
        scale = coeff if exact else complex(float(coeff))
        r0, c0 = offsets[path.end], offsets[path.start]
        out[r0:r0 + alpha[path.end], c0:c0 + a_start] += scale * m
    return out


def block_diagonal(blocks, exact: bool) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = _zeros((n, n), exact)
    o = 0
    for b in blocks:
        out[o:o + b.shape[0], o:o + b.shape[0]] = b
        o += b.shape[0]
    return out


def residual_norm(dq, alpha, V: RepPoint, lam) -> float:
    target = lambda_target(alpha, lam)
    mu = moment(dq, alpha, V)
    diff = [np.asarray(m, dtype=complex) - t for m, t in zip(mu, target)]
    return float(np.sqrt(sum(np.sum(np.abs(d) ** 2) for d in diff)))


def _unflatten(dq, alpha, x: np.ndarray) -> RepPoint:
    mats = []
    o = 0
    for r, c in shapes(dq, alpha):
        mats.append(x[o:o + r * c].reshape(r, c))
        o += r * c
    return RepPoint(tuple(mats), COMPLEX)


def newton_sample(dq: DoubleQuiver, alpha, lam, seed: int = 0, budget: int = 20,
                  start: RepPoint | None = None, max_iter: int = 100,
                  tol: float = RESIDUAL_TOL) -> RepPoint:
    """Find a complex point of mu^{-1}(lambda) by damped Gauss-Newton.

    Each restart draws a complex Gaussian start from a generator seeded by
    ``seed``; the step is the pseudoinverse solution and is halved while
    the residual grows.
    """
    alpha = tuple(int(a) for a in alpha)
    if dot(lam, alpha) != 0:
        raise DomainError("lambda·alpha ≠ 0")
    target = np.array(_flatten(lambda_target(alpha, lam)), dtype=complex)
    dim = ambient_dimension(dq, alpha)
    rng = np.random.default_rng(seed)

    def F(x):
        V = _unflatten(dq, alpha, x)
        return np.array(_flatten(moment(dq, alpha, V)), dtype=complex) - target, V

    best = np.inf
    iterations = []
    for restart in range(budget):
        if restart == 0 and start is not None:
            x = start.vector().astype(complex)
        else:
            x = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        r, V = F(x)
        norm = np.linalg.norm(r)
        it = 0
        while norm > tol and it < max_iter:
            it += 1
            J = differential_matrix(dq, alpha, V)
            step = -np.linalg.pinv(J, rcond=1e-12) @ r
            t = 1.0
            while True:
                x_new = x + t * step
                r_new, V_new = F(x_new)
                n_new = np.linalg.norm(r_new)
                if n_new < norm or t < 1e-6:
                    break
                t /= 2
            x, r, V, norm = x_new, r_new, V_new, n_new
        iterations.append(it)
        best = min(best, norm)
        if norm <= tol:
            log.debug("converged on restart %d after %d iterations", restart, it)
            return V
    raise SamplingError(
        f"no point with residual <= {tol} after {budget} restarts (best {best:.3g})",
        {"restarts": budget, "best_residual": float(best), "iterations": iterations})


@dataclass
class LabReport:
    residual: float
    jacobianRank: int
    expectedRank: int
    ambientDimension: int
    fiberDimension: int
    endomorphismDimension: int
    simple: bool
    quotientDimensionEstimate: int
    label: str = "witness"

    def as_dict(self) -> dict:
        return asdict(self)


def lab_report(dq, alpha, lam, V: RepPoint, tol: float = RANK_TOL) -> LabReport:
    rank = jacobian_rank(dq, alpha, V, tol)
    amb = ambient_dimension(dq, alpha)
    gauge = gauge_dimension(alpha)
    endo = endomorphism_dimension(dq, alpha, V, tol)
    fiber = amb - rank
    return LabReport(
        residual=residual_norm(dq, alpha, V, lam),
        jacobianRank=rank,
        expectedRank=gauge,
        ambientDimension=amb,
        fiberDimension=fiber,
        endomorphismDimension=endo,
        simple=endo == 1,
        quotientDimensionEstimate=fiber - gauge,
    )


@dataclass
class VerifyReport:
    """Aggregate of several sampled points, plus the checks against the decision."""

    summary: LabReport | None
    samples: list[LabReport]
    trials: int
    failures: int
    inSigma: bool
    minimal: bool
    expectedQuotientDimension: int | None
    checks: dict[str, bool] = field(default_factory=dict)
    sampling: list[dict] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {
            "label": "witness",
            "trials": self.trials,
            "failures": self.failures,
            "inSigma": self.inSigma,
            "minimal": self.minimal,
            "expectedQuotientDimension": self.expectedQuotientDimension,
            "report": self.summary.as_dict() if self.summary else None,
            "samples": [s.as_dict() for s in self.samples],
            "checks": dict(self.checks),
            "consistent": self.consistent,
            "samplingFailures": list(self.sampling),
        }


def verify(q: SigmaQuery, seed: int = 0, trials: int = 1, tol: float = RANK_TOL,
           budget: int = 20) -> VerifyReport:
    """Sample ``trials`` points of mu^{-1}(lambda) and compare with the decision.

    When alpha is a minimal element of Sigma_lambda every sample must have
    full-rank differential and quotient estimate 2 p(alpha).
    """
    if dot(q.lam, q.alpha) != 0:
        raise DomainError("lambda·alpha ≠ 0")
    dq = DoubleQuiver(q.quiver)
    member = any(q.alpha) and in_sigma(q, q.alpha)
    minimal = bool(member and is_minimal(q))
    expected = 2 * p(q.forms, q.alpha) if member else None
    seeds = np.random.SeedSequence(seed).spawn(trials)
    samples, fails = [], []
    for n, ss in enumerate(seeds):
        sub_seed = int(ss.generate_state(1)[0])
        try:
            V = newton_sample(dq, q.alpha, q.lam, seed=sub_seed, budget=budget)
        except SamplingError as exc:
            fails.append({"trial": n, **exc.stats})
            continue
        samples.append(lab_report(dq, q.alpha, q.lam, V, tol))
    checks = {"sampled": bool(samples)}
    if minimal and samples:
        checks["fullRank"] = all(s.jacobianRank == s.expectedRank for s in samples)
        checks["quotientDimension"] = all(
            s.quotientDimensionEstimate == expected for s in samples)
        checks["simple"] = all(s.simple for s in samples)
    return VerifyReport(
        summary=samples[0] if samples else None,
        samples=samples,
        trials=trials,
        failures=len(fails),
        inSigma=bool(member),
        minimal=minimal,
        expectedQuotientDimension=expected,
        checks=checks,
        sampling=fails,
    )

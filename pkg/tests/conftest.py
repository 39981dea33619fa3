from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

import pytest

from quiverlab.quiver import Arrow, Quiver, double

DATA = Path(__file__).parent / "data"


def jordan() -> Quiver:
    return Quiver(("u",), (Arrow("a", "u", "u"),))


def two_loops() -> Quiver:
    return Quiver(("u",), (Arrow("a", "u", "u"), Arrow("b", "u", "u")))


def calogero_moser() -> Quiver:
    return Quiver(("v0", "vinf"), (Arrow("x", "v0", "v0"), Arrow("v", "vinf", "v0")))


def line(n: int) -> Quiver:
    vs = tuple(f"v{i + 1}" for i in range(n))
    return Quiver(vs, tuple(Arrow(f"a{i + 1}", vs[i], vs[i + 1]) for i in range(n - 1)))


def single_vertex() -> Quiver:
    return Quiver(("u",))


def random_quiver(rng: random.Random, max_vertices=3, max_arrows=4, min_arrows=0) -> Quiver:
    k = rng.randint(1, max_vertices)
    vs = tuple(f"v{i}" for i in range(k))
    m = rng.randint(min_arrows, max_arrows)
    arrows = tuple(Arrow(f"a{n}", rng.choice(vs), rng.choice(vs)) for n in range(m))
    return Quiver(vs, arrows)


def random_closed_walk(rng: random.Random, dq, length: int, tries: int = 200):
    """Arrow indices of a random closed walk of the given length, or None."""
    out_arrows = [[c for c in range(len(dq.arrows)) if dq.tails[c] == v] for v in range(dq.k)]
    for _ in range(tries):
        start = rng.randrange(dq.k)
        v = start
        walk = []
        for _ in range(length - 1):
            if not out_arrows[v]:
                break
            c = rng.choice(out_arrows[v])
            walk.append(c)
            v = dq.heads[c]
        else:
            last = [c for c in out_arrows[v] if dq.heads[c] == start]
            if last:
                walk.append(rng.choice(last))
                return walk
    return None


def random_necklace(rng: random.Random, dq, max_len=6):
    from quiverlab.necklace import Path, canonicalize, vertex_necklace

    for _ in range(20):
        n = rng.randint(1, max_len)
        walk = random_closed_walk(rng, dq, n)
        if walk:
            return canonicalize(dq, Path.from_arrows(dq, walk))
    return vertex_necklace(rng.randrange(dq.k))


def random_lambda(rng: random.Random, alpha, zero_prob=0.4):
    """Integer-ish rational weights with lambda . alpha = 0."""
    k = len(alpha)
    if rng.random() < zero_prob or not any(alpha):
        return (Fraction(0),) * k
    lam = [Fraction(rng.randint(-2, 2)) for _ in range(k)]
    j = max(range(k), key=lambda i: alpha[i])
    rest = sum(l * a for i, (l, a) in enumerate(zip(lam, alpha)) if i != j)
    lam[j] = -rest / alpha[j]
    return tuple(lam)


def sigma_corpus(seed=2024, size=60, max_entry=2):
    """Reproducible (quiver, lambda, alpha) triples used across the sigma tests."""
    rng = random.Random(seed)
    out = []
    while len(out) < size:
        q = random_quiver(rng, max_vertices=3, max_arrows=4)
        alpha = tuple(rng.randint(0, max_entry) for _ in q.vertices)
        if not any(alpha):
            continue
        out.append((q, random_lambda(rng, alpha), alpha))
    fixed = [
        (calogero_moser(), (Fraction(1), Fraction(-n)), (n, 1)) for n in (1, 2, 3)
    ] + [
        (two_loops(), (Fraction(0),), (2,)),
        (jordan(), (Fraction(0),), (3,)),
        (line(2), (Fraction(0),) * 2, (1, 1)),
        (calogero_moser(), (Fraction(0),) * 2, (2, 1)),
    ]
    return fixed + out


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def cm():
    return calogero_moser()


@pytest.fixture
def cm_double():
    return double(calogero_moser())


@pytest.fixture
def jordan_double():
    return double(jordan())


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


_ACCEPTANCE: dict = {}


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None or (report.when != "call" and not report.failed):
        return
    if _ACCEPTANCE.get(crit) != "failed":
        _ACCEPTANCE[crit] = report.outcome


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        report.criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), outcome in sorted(_ACCEPTANCE.items()):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {num}: {title}")


def random_document(rng: random.Random):
    """A random quiver with alpha and rational lambda, for round-trip tests."""
    q = random_quiver(rng, max_vertices=4, max_arrows=5)
    alpha = tuple(rng.randint(0, 4) for _ in q.vertices)
    lam = tuple(Fraction(rng.randint(-7, 7), rng.randint(1, 4)) for _ in q.vertices)
    return q, alpha, lam

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverlab.quiver import Arrow, DimensionMismatchError, Quiver
from quiverlab.roots import (
    FormsContext,
    LoopVertexError,
    chi,
    enumerate_roots,
    is_indivisible,
    p,
    reflect,
    tits,
)

from conftest import calogero_moser, jordan, line, random_quiver, single_vertex, two_loops
from oracles import all_vectors, root_kind


def test_chi_examples():
    a2 = FormsContext(line(2))
    assert a2.euler == ((1, -1), (0, 1))
    assert chi(a2, (1, 1), (1, 1)) == 1
    assert chi(a2, (0, 0), (3, 5)) == 0
    cm = FormsContext(calogero_moser())
    assert cm.euler == ((0, 0), (-1, 1))
    for n in range(6):
        assert chi(cm, (n, 1), (n, 1)) == 1 - n
        assert p(cm, (n, 1)) == n


def test_p_of_simple_roots():
    assert p(FormsContext(line(3)), (0, 1, 0)) == 0
    assert p(FormsContext(jordan()), (1,)) == 1
    assert p(FormsContext(two_loops()), (1,)) == 2


def test_length_mismatch():
    with pytest.raises(DimensionMismatchError):
        chi(FormsContext(line(2)), (1,), (1, 1))


def test_form_matrix_invariants(rng):
    for _ in range(50):
        q = random_quiver(rng)
        ctx = FormsContext(q)
        k = q.k
        for i in range(k):
            assert ctx.euler[i][i] == 1 - q.loops_at(i)
            for j in range(k):
                assert ctx.tits[i][j] == ctx.tits[j][i] == ctx.euler[i][j] + ctx.euler[j][i]
                if i != j:
                    assert ctx.tits[i][j] <= 0


def test_reflect_examples():
    a2 = FormsContext(line(2))
    assert a2.tits == ((2, -1), (-1, 2))
    assert reflect(a2, 0, (1, 0)) == (-1, 0)
    assert reflect(a2, 1, (1, 0)) == (1, 1)
    with pytest.raises(LoopVertexError):
        reflect(FormsContext(jordan()), 0, (1,))


@st.composite
def quiver_and_vectors(draw):
    seed = draw(st.integers(0, 10_000))
    q = random_quiver(random.Random(seed))
    vec = st.tuples(*[st.integers(-5, 5)] * q.k)
    return q, draw(vec), draw(vec)


@given(quiver_and_vectors())
@settings(max_examples=200, deadline=None)
def test_reflection_involution_and_isometry(data):
    q, a, b = data
    ctx = FormsContext(q)
    for i in ctx.loop_free:
        assert reflect(ctx, i, reflect(ctx, i, a)) == a
        assert tits(ctx, reflect(ctx, i, a), reflect(ctx, i, b)) == tits(ctx, a, b)


def test_enumerate_examples():
    rs = enumerate_roots(FormsContext(line(2)), (1, 1))
    assert [r.vector for r in rs] == [(0, 1), (1, 0), (1, 1)]
    assert all(r.real for r in rs)

    rs = enumerate_roots(FormsContext(jordan()), (4,))
    assert [r.vector for r in rs] == [(1,), (2,), (3,), (4,)]
    assert not any(r.real for r in rs)

    rs = enumerate_roots(FormsContext(single_vertex()), (3,))
    assert [(r.vector, r.real) for r in rs] == [((1,), True)]

    assert len(enumerate_roots(FormsContext(line(2)), (0, 0))) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_type_a_root_count(n):
    rs = enumerate_roots(FormsContext(line(n)), (1,) * n)
    assert len(rs) == n * (n + 1) // 2
    assert all(r.real and r.p == 0 for r in rs)


def test_affine_a1_tilde():
    # Kronecker quiver: real roots (n, n+1), (n+1, n); imaginary (n, n)
    q = Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2")))
    rs = enumerate_roots(FormsContext(q), (3, 3))
    kinds = {r.vector: r.real for r in rs}
    assert kinds == {
        (1, 0): True, (0, 1): True, (1, 2): True, (2, 1): True, (2, 3): True, (3, 2): True,
        (1, 1): False, (2, 2): False, (3, 3): False,
    }


def test_enumeration_matches_descent_oracle(rng):
    """Every vector in the box is classified identically by the descent oracle."""
    for _ in range(40):
        q = random_quiver(rng)
        box = tuple(rng.randint(0, 3) for _ in q.vertices)
        rs = enumerate_roots(FormsContext(q), box)
        got = {r.vector: ("real" if r.real else "imaginary") for r in rs}
        expected = {v: root_kind(q, v) for v in all_vectors(box) if root_kind(q, v)}
        assert got == expected, (q, box)


def test_root_flags_match_p(rng):
    for _ in range(40):
        q = random_quiver(rng)
        ctx = FormsContext(q)
        for r in enumerate_roots(ctx, (3,) * q.k):
            if r.real:
                assert chi(ctx, r.vector, r.vector) == 1 and r.p == 0
            else:
                assert r.p >= 1
            assert all(0 <= x <= 3 for x in r.vector) and any(r.vector)


def test_is_indivisible():
    assert is_indivisible((2, 1))
    assert not is_indivisible((2, 4))
    assert is_indivisible((1,))
    with pytest.raises(ValueError):
        is_indivisible((0, 0))


def test_big_integers_do_not_overflow():
    q = Quiver(("1", "2"), tuple(Arrow(f"a{i}", "1", "2") for i in range(5)))
    ctx = FormsContext(q)
    v = (1, 0)
    for _ in range(60):
        v = reflect(ctx, 1, reflect(ctx, 0, v))
    assert max(abs(x) for x in v) > 2 ** 64
    assert tits(ctx, v, v) == 2

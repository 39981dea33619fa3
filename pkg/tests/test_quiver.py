import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverlab.quiver import (
    Arrow,
    DimensionMismatchError,
    DoubleQuiver,
    DuplicateIdentifierError,
    Quiver,
    QuiverError,
    QuiverSyntaxError,
    UnknownVertexError,
    double,
    load_json,
    parse_document,
    parse_quiver,
    serialize,
    to_dsl,
)

from conftest import calogero_moser, random_quiver


def test_parse_calogero_moser():
    q = parse_quiver("quiver { vertices v0 vinf  arrow x v0 v0  arrow v vinf v0 }")
    assert q.vertices == ("v0", "vinf")
    assert q.arrows == (Arrow("x", "v0", "v0"), Arrow("v", "vinf", "v0"))
    assert q.arrows[0].is_loop


def test_parse_single_vertex():
    q = parse_quiver("quiver { vertices u }")
    assert q.vertices == ("u",) and q.arrows == ()


def test_unknown_vertex():
    with pytest.raises(UnknownVertexError, match="unknown vertex w"):
        parse_quiver("quiver { vertices u  arrow a u w }")


def test_duplicate_identifiers():
    with pytest.raises(DuplicateIdentifierError):
        parse_quiver("quiver { vertices u u }")
    with pytest.raises(DuplicateIdentifierError):
        parse_quiver("quiver { vertices u v arrow a u v arrow a v u }")
    with pytest.raises(DuplicateIdentifierError):
        parse_quiver("quiver { vertices u arrow u u u }")


@pytest.mark.parametrize("text, line, col", [
    ("quiver { vertices }", 1, 19),
    ("quiver {\n vertices u\n arrow a u\n}", 4, 1),
    ("quiver { vertices u }\nalpha u=x", 2, 9),
    ("quiver { vertices u }\nbeta u=1", 2, 1),
    ("quiver vertices u", 1, 8),
])
def test_syntax_errors_report_position(text, line, col):
    with pytest.raises(QuiverSyntaxError) as info:
        parse_quiver(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_star_marker_is_reserved():
    with pytest.raises(QuiverSyntaxError):
        parse_quiver("quiver { vertices u arrow a* u u }")


def test_blocks_and_comments():
    doc = parse_document("""
    # CM quiver
    quiver {
      vertices v0 vinf   # two vertices
      arrow x v0 v0
      arrow v vinf v0
    }
    lambda v0=1 vinf = -2
    alpha v0=2 vinf=1
    """)
    assert doc.alpha == (2, 1)
    assert doc.lam == (Fraction(1), Fraction(-2))


def test_rational_weights():
    doc = parse_document("quiver { vertices a b } lambda a=-1/2 b=3/4")
    assert doc.lam == (Fraction(-1, 2), Fraction(3, 4))
    with pytest.raises(QuiverSyntaxError):
        parse_document("quiver { vertices a } lambda a=1/0")


def test_double():
    dq = double(Quiver(("u",), (Arrow("a", "u", "u"),)))
    assert [a.id for a in dq.arrows] == ["a", "a*"]
    assert all(a.is_loop for a in dq.arrows)

    dq = double(Quiver(("v1", "v2"), (Arrow("a", "v1", "v2"),)))
    assert dq.arrows == (Arrow("a", "v1", "v2"), Arrow("a*", "v2", "v1"))
    assert dq.star(0) == 1 and dq.star(1) == 0

    q = Quiver(("u", "w"))
    assert double(q).arrows == q.arrows == ()


def test_double_of_double_rejected():
    dq = double(calogero_moser())
    with pytest.raises(TypeError):
        double(dq)


def test_star_is_fixed_point_free_involution(rng):
    for _ in range(30):
        q = random_quiver(rng)
        dq = double(q)
        for c in range(len(dq.arrows)):
            assert dq.star(c) != c and dq.star(dq.star(c)) == c
            assert dq.tails[c] == dq.heads[dq.star(c)]
        assert tuple(dq.arrows[0::2]) == q.arrows


def test_serialize_round_trip_cm():
    q = calogero_moser()
    text = serialize(q, (2, 1), (Fraction(1), Fraction(-2)))
    doc = parse_document(text)
    assert doc.quiver == q and doc.alpha == (2, 1) and doc.lam == (1, -2)
    assert json.loads(text)["lambda"] == {"v0": "1", "vinf": "-2"}


def test_key_order_insensitive():
    q = calogero_moser()
    data = json.loads(serialize(q, (2, 1), (Fraction(1, 3), Fraction(-2, 3))))
    shuffled = {k: data[k] for k in reversed(list(data))}
    shuffled["arrows"] = [{k: a[k] for k in ("head", "id", "tail")} for a in data["arrows"]]
    doc = load_json(json.dumps(shuffled))
    assert doc.quiver == q and doc.lam == (Fraction(1, 3), Fraction(-2, 3))


def test_serialize_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        serialize(calogero_moser(), (1, 2, 3))
    with pytest.raises(DimensionMismatchError):
        serialize(calogero_moser(), None, (Fraction(1),))


def test_malformed_json():
    with pytest.raises(QuiverSyntaxError):
        load_json('{"vertices": [')
    with pytest.raises(QuiverError):
        load_json('{"vertices": ["u"]}')
    with pytest.raises(UnknownVertexError):
        load_json('{"vertices": ["u"], "arrows": [{"id": "a", "tail": "u", "head": "z"}]}')


@st.composite
def documents(draw):
    k = draw(st.integers(1, 5))
    vs = tuple(f"v{i}" for i in range(k))
    m = draw(st.integers(0, 8))
    arrows = tuple(Arrow(f"a{n}", draw(st.sampled_from(vs)), draw(st.sampled_from(vs)))
                   for n in range(m))
    alpha = draw(st.none() | st.tuples(*[st.integers(0, 9)] * k))
    lam = draw(st.none() | st.tuples(*[st.fractions(max_denominator=7)] * k))
    return Quiver(vs, arrows), alpha, lam


@given(documents())
@settings(max_examples=100, deadline=None)
def test_round_trip_property(doc):
    q, alpha, lam = doc
    for text in (serialize(q, alpha, lam), to_dsl(q, alpha, lam)):
        back = parse_document(text)
        assert back.quiver == q
        assert back.alpha == alpha
        assert back.lam == (None if lam is None else tuple(Fraction(x) for x in lam))


def test_arrow_order_is_declaration_order():
    rng = random.Random(7)
    q = random_quiver(rng, 3, 4, min_arrows=4)
    assert [a.id for a in q.arrows] == [f"a{i}" for i in range(4)]
    assert DoubleQuiver(q) == double(q)

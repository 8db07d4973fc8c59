from fractions import Fraction

import pytest

from quiverkoszul.quiver import (
    Path,
    PathCombination,
    QuiverError,
    RelationError,
    compose,
    double_quiver,
    enumerate_paths,
    make_quiver,
    opposite_quiver,
    trivial_path,
    validate_relation,
)


@pytest.fixture
def loop2():
    return make_quiver(["1"], [("a1", "1", "1"), ("a2", "1", "1")])


@pytest.fixture
def line3():
    return make_quiver(
        ["1", "2", "3"], [("a1", "1", "2"), ("a2", "2", "3")]
    )


def test_make_quiver_basic(line3):
    assert line3.vertices == ("1", "2", "3")
    assert [a.label for a in line3.arrows] == ["a1", "a2"]
    assert line3.arrow("a1").source == "1"
    assert line3.arrow("a1").target == "2"


def test_make_quiver_rejects_duplicates():
    with pytest.raises(QuiverError):
        make_quiver(["1", "1"], [])
    with pytest.raises(QuiverError):
        make_quiver(["1"], [("a", "1", "1"), ("a", "1", "1")])
    with pytest.raises(QuiverError):
        make_quiver(["1"], [("a", "1", "2")])


def test_trivial_path_endpoints(line3):
    e = trivial_path("2")
    assert e.source == "2"
    assert e.target == "2"
    assert e.length == 0


def test_path_from_labels_is_first_applied_order(line3):
    p = line3.path(["a1", "a2"])  # a1 first, then a2
    assert p.source == "1"
    assert p.target == "3"
    assert p.length == 2
    # stored last-applied-first
    assert [a.label for a in p.arrows] == ["a2", "a1"]


def test_path_rejects_non_composable(line3):
    with pytest.raises(QuiverError):
        line3.path(["a2", "a1"])


def test_compose_applies_right_factor_first(line3):
    p = line3.path(["a1"])
    q = line3.path(["a2"])
    pq = compose(q, p)  # p first, then q
    assert pq.source == "1"
    assert pq.target == "3"
    with pytest.raises(QuiverError):
        compose(p, q)


def test_compose_with_trivial_paths(line3):
    p = line3.path(["a1"])
    assert compose(p, trivial_path("1")) == p
    assert compose(trivial_path("2"), p) == p
    with pytest.raises(QuiverError):
        compose(trivial_path("3"), p)


def test_enumerate_paths_counts(loop2, line3):
    assert len(enumerate_paths(loop2, 0)) == 1
    assert len(enumerate_paths(loop2, 1)) == 2
    assert len(enumerate_paths(loop2, 3)) == 8
    assert len(enumerate_paths(line3, 2)) == 1
    assert len(enumerate_paths(line3, 3)) == 0


def test_enumerate_paths_lex_order_by_first_applied(loop2):
    words = [
        [a.label for a in reversed(p.arrows)] for p in enumerate_paths(loop2, 2)
    ]
    assert words == [
        ["a1", "a1"],
        ["a1", "a2"],
        ["a2", "a1"],
        ["a2", "a2"],
    ]


def test_enumerate_paths_endpoint_filters(line3):
    assert len(enumerate_paths(line3, 1, source="1")) == 1
    assert len(enumerate_paths(line3, 1, source="1", target="3")) == 0
    assert len(enumerate_paths(line3, 2, source="1", target="3")) == 1


def test_path_key_orders_by_first_applied_word(loop2):
    p12 = loop2.path(["a1", "a2"])
    p21 = loop2.path(["a2", "a1"])
    keys = sorted([loop2.path_key(p21), loop2.path_key(p12)])
    assert keys == [loop2.path_key(p12), loop2.path_key(p21)]
    # keys are compared within one degree; the word is the tiebreaker
    assert loop2.path_key(p12)[1] == (0, 1)
    assert loop2.path_key(p21)[1] == (1, 0)


def test_opposite_quiver(line3):
    op = opposite_quiver(line3)
    assert op.vertices == line3.vertices
    a = op.arrow("a1_op")
    assert a.source == "2"
    assert a.target == "1"


def test_double_quiver(line3):
    d = double_quiver(line3)
    assert [a.label for a in d.arrows] == ["a1", "a2", "a1*", "a2*"]
    star = d.arrow("a1*")
    assert star.source == "2"
    assert star.target == "1"


class TestPathCombination:
    def test_zero_coefficients_dropped(self, loop2):
        p = loop2.path(["a1", "a2"])
        q = loop2.path(["a2", "a1"])
        c = PathCombination({p: Fraction(1), q: Fraction(0)})
        assert dict(c.items()) == {p: Fraction(1)}

    def test_all_zero_combination_rejected(self, loop2):
        p = loop2.path(["a1"])
        with pytest.raises(RelationError):
            PathCombination({p: Fraction(0)})

    def test_endpoints_of_homogeneous_combination(self, loop2):
        p = loop2.path(["a1", "a2"])
        q = loop2.path(["a2", "a1"])
        c = PathCombination({p: Fraction(1), q: Fraction(1)})
        assert c.source == "1"
        assert c.target == "1"
        assert c.length == 2


def test_validate_relation_accepts_uniform_endpoints(loop2):
    p = loop2.path(["a1", "a1"])
    q = loop2.path(["a1", "a2"])
    validate_relation(loop2, PathCombination({p: Fraction(1), q: Fraction(1)}))


def test_validate_relation_rejects_mixed_endpoints(line3):
    p = line3.path(["a1"])
    q = line3.path(["a2"])
    with pytest.raises(RelationError):
        validate_relation(line3, PathCombination({p: Fraction(1), q: Fraction(1)}))


def test_validate_relation_rejects_trivial_terms(loop2):
    e = trivial_path("1")
    with pytest.raises(RelationError):
        validate_relation(loop2, PathCombination({e: Fraction(1)}))


def test_path_equality_and_hash(loop2):
    p = loop2.path(["a1", "a2"])
    q = loop2.path(["a1", "a2"])
    assert p == q
    assert hash(p) == hash(q)
    assert p != loop2.path(["a2", "a1"])

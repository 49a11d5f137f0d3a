import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaptuples.adjoin import AdjoinTransform, apply_tuple
from gaptuples.arith import ExponentPattern
from gaptuples.diagrams import (
    DiagramError,
    HypothesisError,
    Relation,
    RelationDiagram,
    canonical_diagram,
    check,
    diagram_from_coefficients,
    shift_conclusion,
)
from gaptuples.forms import FormTuple, LinearForm, OrderError, dist, max_diameter

FIVE = FormTuple.of("2m+1", "3m+2", "6m+5", "6m+7", "3m+4")
ADJ = FormTuple.of("70m+1", "105m+2", "42m+1", "30m+1", "105m+4")


@st.composite
def sorted_tuples(draw, kmin=2, kmax=7, amax=60, bmax=60):
    k = draw(st.integers(kmin, kmax))
    pairs = st.tuples(st.integers(1, amax), st.integers(-bmax, bmax)).filter(lambda ab: math.gcd(*ab) == 1)
    out = draw(st.sets(pairs, min_size=k, max_size=k))
    return FormTuple(sorted(LinearForm(a, b) for a, b in out))


def test_canonical_five_tuple():
    diagram = canonical_diagram(FIVE)
    assert diagram.coefficients() == [3, 2, 1, 1, 2]
    assert diagram.edge(0, 1).r == 1 and diagram.edge(0, 4).r == 5
    assert sorted(diagram.values()) == [1, 1, 1, 2, 2, 3, 3, 4, 4, 5]


def test_canonical_monic_is_trivial():
    t = FormTuple.shifts(range(1, 8))
    diagram = canonical_diagram(t)
    assert diagram.coefficients() == [1] * 7
    for (i, j), rel in diagram.edges.items():
        assert rel.r == j - i


def test_canonical_adjoined_tuple():
    assert canonical_diagram(ADJ).coefficients() == [3, 2, 5, 7, 2]


def test_canonical_requires_sorted():
    with pytest.raises(OrderError):
        canonical_diagram(FormTuple.shifts([0, 2, 1]))


def test_check_five_tuple_not_compatible():
    report = check(canonical_diagram(FIVE))
    assert report.consistent
    assert report.compatible_for == {"d": False, "omega": False, "Omega": False, "h": False}


def test_check_adjoined_compatibility():
    report = check(canonical_diagram(ADJ), ["ω", "Ω"])
    assert report.consistent
    assert report.compatible_for == {"omega": True, "Omega": True}
    assert report.common_value == {"omega": 1, "Omega": 1}
    assert (report.r_min, report.r_max) == (1, 5)


def test_single_form_vacuous():
    report = check(RelationDiagram(FormTuple.shifts([0]), {}))
    assert report.consistent and report.r_min is None


def test_bad_edge_is_named():
    diagram = canonical_diagram(FIVE)
    edges = dict(diagram.edges)
    edges[(1, 3)] = Relation(1, 3, 2, 1, 4)
    with pytest.raises(DiagramError, match="1->3"):
        check(RelationDiagram(FIVE, edges))


def test_per_edge_coefficients_inconsistent():
    # 2*(m+1) - 2*m = 2 uses coefficient 2 for m, while the other edges use 1
    t = FormTuple.shifts([0, 1, 2])
    edges = {
        (0, 1): Relation(0, 1, 2, 2, 2),
        (0, 2): Relation(0, 2, 1, 1, 2),
        (1, 2): Relation(1, 2, 1, 1, 1),
    }
    report = check(RelationDiagram(t, edges))
    assert not report.consistent and report.coefficients is None


def test_json_roundtrip_and_renderers():
    diagram = canonical_diagram(ADJ)
    doc = diagram.to_json()
    assert doc["edges"][0] == {"i": 0, "j": 1, "c_i": "3", "c_j": "2", "r": "1"}
    assert RelationDiagram.from_json(doc).edges == diagram.edges
    assert "70m+1 (3) |--1--> (2) 105m+2" in diagram.to_text()
    assert diagram.to_dot().startswith("digraph")


def test_realize_gives_relation_values():
    diagram = canonical_diagram(ADJ)
    x = diagram.realize(12)
    for (i, j), rel in diagram.edges.items():
        assert x[j] - x[i] == rel.r


def test_shift_conclusion_adjoined():
    diagram = canonical_diagram(ADJ)
    for f in ("Omega", "omega"):
        c = shift_conclusion(diagram, f, eh=True)
        assert (c.r_min, c.r_max, c.value) == (1, 5, 3)


def test_shift_conclusion_hypotheses_listed():
    with pytest.raises(HypothesisError, match="k too small"):
        shift_conclusion(canonical_diagram(ADJ), "Omega")
    with pytest.raises(HypothesisError, match="not d-compatible"):
        shift_conclusion(canonical_diagram(FIVE), "d", eh=True)
    with pytest.raises(HypothesisError, match="inadmissible"):
        shift_conclusion(canonical_diagram(FormTuple.shifts(range(1, 11))), "omega")


def test_shift_conclusion_primorial_tuple():
    base = FormTuple.shifts([4, 5, 7, 8, 9, 11, 13, 16, 17, 19])
    out = apply_tuple(AdjoinTransform(9699690, 0), base, canonical_diagram(base))
    c = shift_conclusion(out.diagram, "Omega")
    assert c.value == 3 and c.pattern == ExponentPattern([1, 1, 1])
    assert (c.r_min, c.r_max) == (1, 15)


# property tests


@settings(max_examples=200, deadline=None)
@given(sorted_tuples())
def test_canonical_diagram_invariants(t):
    diagram = canonical_diagram(t)
    report = check(diagram)
    assert report.consistent
    v = math.lcm(*(f.a for f in t))
    assert report.r_max == v // t[-1].a * t[-1].b - v // t[0].a * t[0].b
    assert all(rel.r > 0 for rel in diagram.edges.values())
    for h, i, j in itertools.combinations(range(t.k), 3):
        assert diagram.edge(h, j).r == diagram.edge(h, i).r + diagram.edge(i, j).r
    for (i, j), rel in diagram.edges.items():
        assert rel.r >= dist(t[i], t[j])
    if t.k >= 3:
        assert report.r_max >= max_diameter(t) >= t.k - 1


@settings(max_examples=100, deadline=None)
@given(sorted_tuples(), st.lists(st.integers(1, 30), min_size=7, max_size=7))
def test_scaled_coefficients_stay_consistent(t, extra):
    # any common multiple of the canonical coefficients gives another consistent diagram
    base = canonical_diagram(t).coefficients()
    s = extra[0]
    diagram = diagram_from_coefficients(t, [s * c for c in base])
    report = check(diagram)
    assert report.consistent and report.coefficients == [s * c for c in base]

import pytest

from abtqft.discrete import (NerveCocycle, circle_complex,
                             transition_winding, validate_nerve_cocycle)
from abtqft.discrete.complexes import CellComplex


def two_chart_circle(n=6):
    base = circle_complex(n)
    charts = {
        "U": {"vertices": [5, 0, 1, 2, 3], "edges": [5, 0, 1, 2]},
        "V": {"vertices": [2, 3, 4, 5, 0, 1], "edges": [2, 3, 4, 5, 0]},
    }
    return base, charts


def test_trivial_data_valid():
    base, charts = two_chart_circle()
    cocycle = NerveCocycle(
        base, charts,
        {("U", "V"): {v: 0.0 for v in (0, 1, 2, 3, 5)}})
    report = validate_nerve_cocycle(cocycle)
    assert report.valid


def test_antisymmetry_autofilled_and_checked():
    base, charts = two_chart_circle()
    cocycle = NerveCocycle(base, charts, {("U", "V"): {0: 0.3}})
    assert cocycle.transition_at("V", "U", 0) == pytest.approx(0.7)
    bad = NerveCocycle(base, charts, {("U", "V"): {0: 0.3},
                                      ("V", "U"): {0: 0.3}})
    report = validate_nerve_cocycle(bad)
    kinds = {v[0] for v in report.violations}
    assert kinds == {"antisymmetry"}


def test_winding_one_transition_valid_with_degree_one():
    base, charts = two_chart_circle()
    # transition values progressing once around the circle
    g = {5: 0.7, 0: 0.8, 1: 0.95, 2: 0.3, 3: 0.45, 4: 0.55}
    full_charts = {
        "U": {"vertices": list(range(6)), "edges": list(range(6))},
        "V": {"vertices": list(range(6)), "edges": list(range(6))},
    }
    # local forms matching the discrete log-derivative condition:
    # A_V - A_U = principal increment of g along each edge
    forms_U = {e: 0.0 for e in range(6)}
    from abtqft.analytic import wrap_half
    forms_V = {}
    for e in range(6):
        tail, head = base.edge_endpoints(e)
        forms_V[e] = wrap_half(g[head] - g[tail])
    cocycle = NerveCocycle(base, full_charts, {("U", "V"): g},
                           forms={"U": forms_U, "V": forms_V})
    report = validate_nerve_cocycle(cocycle)
    assert report.valid, report.violations
    deg = transition_winding(cocycle, "U", "V", [(e, 1) for e in range(6)])
    assert deg == 1
    assert transition_winding(cocycle, "V", "U",
                              [(e, 1) for e in range(6)]) == -1


def test_perturbation_flags_exactly_the_triples():
    # a point complex with three charts: no edges, so only the triple
    # condition can fire, and only for pairs involving the perturbed one
    base = CellComplex({0: 1}, {})
    charts = {a: {"vertices": [0], "edges": []} for a in ("A", "B", "C")}
    good = NerveCocycle(base, charts, {
        ("A", "B"): {0: 0.2}, ("B", "C"): {0: 0.3}, ("C", "A"): {0: 0.5}})
    assert validate_nerve_cocycle(good).valid

    perturbed = NerveCocycle(base, charts, {
        ("A", "B"): {0: 0.25}, ("B", "C"): {0: 0.3}, ("C", "A"): {0: 0.5}})
    report = validate_nerve_cocycle(perturbed)
    assert not report.valid
    assert all(kind == "triple" for kind, _, _ in report.violations)
    for _, where, _ in report.of_kind("triple"):
        assert "A" in where[:3] and "B" in where[:3]


def test_overlap_form_condition_flagged():
    base, _ = two_chart_circle()
    charts = {
        "U": {"vertices": list(range(6)), "edges": list(range(6))},
        "V": {"vertices": list(range(6)), "edges": list(range(6))},
    }
    g = {v: 0.25 for v in range(6)}  # constant transition, dlog = 0
    cocycle = NerveCocycle(base, charts, {("U", "V"): g},
                           forms={"U": {}, "V": {0: 0.125}})
    report = validate_nerve_cocycle(cocycle)
    flagged = report.of_kind("overlap-form")
    # both ordered pairs carry the condition, so the violation shows twice
    assert {v[1] for v in flagged} == {("U", "V", 0), ("V", "U", 0)}
    assert all(v[2] == pytest.approx(0.125) for v in flagged)


def test_chart_subcomplex_validated():
    base, _ = two_chart_circle()
    with pytest.raises(ValueError):
        NerveCocycle(base, {"U": {"vertices": [0], "edges": [0]}}, {})
    with pytest.raises(ValueError):
        NerveCocycle(base, {"U": {"vertices": [99], "edges": []}}, {})


def test_winding_requires_closed_loop_inside_overlap():
    base, charts = two_chart_circle()
    g = {v: 0.1 for v in (0, 1, 2, 3, 5)}
    cocycle = NerveCocycle(base, charts, {("U", "V"): g})
    with pytest.raises(ValueError):
        transition_winding(cocycle, "U", "V", [(0, 1)])
    with pytest.raises(KeyError):
        transition_winding(cocycle, "U", "V", [(e, 1) for e in range(6)])

import numpy as np
import pytest

from trichar._kernels import form_counts
from trichar.errors import InvalidParameter
from trichar.geometry import (
    Hyperplane,
    PointMultiset,
    _normalized_tuples,
    enumerate_hyperplanes,
    enumerate_points,
    form_from_view,
    hyperplanes_through_point,
    incidence,
    infinity_point,
    minimality_report,
    normalize_projective,
    num_hyperplanes,
    num_points,
    spectrum,
)
from trichar.varieties import Params, twisted_hermitian_set


def test_point_counts(gf9, gf4):
    assert sum(1 for _ in enumerate_points(gf9, 2, "affine")) == 81
    assert sum(1 for _ in enumerate_points(gf9, 3, "projective")) == 820
    assert sum(1 for _ in enumerate_points(gf4, 4, "projective")) == 341
    assert num_points(9, 3, "projective") == 820


def test_point_stream_order_and_normalization(gf9):
    pts = list(enumerate_points(gf9, 2, "projective"))
    assert pts[0] == infinity_point(2)
    assert pts == sorted(pts)
    assert len(set(pts)) == len(pts)
    for pt in pts:
        assert normalize_projective(gf9, pt) == pt
    # scaling does not change the normalized representative
    scaled = tuple(int(gf9.mul_table[2, c]) for c in (1, 2, 3))
    assert normalize_projective(gf9, scaled) == (1, 2, 3)


def test_hyperplane_counts(gf9):
    planes = list(enumerate_hyperplanes(gf9, 3, "affine"))
    assert len(planes) == 819
    through = [h for h in planes if h.through_infinity_point]
    assert len(through) == 90
    with_view = [h for h in planes if h.affine_view is not None]
    assert len(with_view) == 729  # q^(2r)
    proj = list(enumerate_hyperplanes(gf9, 4, "projective"))
    assert len(proj) == 7381
    assert proj[0].is_infinity


def test_affine_view_roundtrip(gf9):
    for h in enumerate_hyperplanes(gf9, 3, "affine"):
        view = h.affine_view
        if view is None:
            continue
        m, d = view
        assert form_from_view(gf9, m, d) == h.form
        # the view solves the incidence equation: (x, m.x + d) lies on h
        x = (4, 7)
        add, mul = gf9.add_table, gf9.mul_table
        xr = d
        for mi, xi in zip(m, x):
            xr = int(add[xr, mul[mi, xi]])
        assert incidence(gf9, x + (xr,), h)


def test_incidence_examples(gf9):
    pi_inf = Hyperplane(gf9, (1, 0, 0, 0))
    assert incidence(gf9, infinity_point(3), pi_inf)
    xr0 = Hyperplane(gf9, (0, 0, 0, 1))
    assert incidence(gf9, (0, 0, 0), xr0)
    # x3 = 2x1 + 2x2 contains (1, 1, 1): 2+2 = 4 = 1 mod 3
    h = Hyperplane(gf9, form_from_view(gf9, (2, 2), 0))
    assert incidence(gf9, (1, 1, 1), h)
    with pytest.raises(InvalidParameter):
        incidence(gf9, (1, 1), pi_inf)


def test_spectrum_single_point(gf9):
    S = PointMultiset.from_affine(gf9, 3, [(0, 0, 0)])
    spec = spectrum(S, "projective")
    assert spec.histogram == {0: 729, 1: 91}
    assert spec.total == 820


def test_spectrum_full_affine_plane(gf9):
    S = PointMultiset.from_affine(gf9, 2, enumerate_points(gf9, 2, "affine"))
    proj = spectrum(S, "projective")
    assert proj.histogram == {0: 1, 9: 90}
    aff = spectrum(S, "affine")
    assert aff.histogram == {9: 90}
    rep = minimality_report(S)
    assert rep.t == 9
    assert rep.is_minimal  # every line meets in exactly t = 9 points


def test_projective_equals_affine_plus_infinity_row(gf9):
    S = twisted_hermitian_set(Params(gf9, 3, 1, 3))
    aff = spectrum(S, "affine").histogram
    proj = spectrum(S, "projective").histogram
    aff_plus = dict(aff)
    aff_plus[0] = aff_plus.get(0, 0) + 1  # the infinity hyperplane misses S
    assert proj == aff_plus


def test_generic_path_matches_fast_path(gf4):
    """A multiset with a generic infinity point goes through the all-forms
    path; dropping that point must reproduce the fast-path histogram."""
    S = twisted_hermitian_set(Params(gf4, 3, 1, 2))
    extra = (0, 1, 0, 0)
    S_mixed = S.with_point(extra, 1)
    fast = spectrum(S, "projective").histogram
    mixed = spectrum(S_mixed, "projective").histogram
    # recompute the mixed histogram naively from the fast path pieces
    t = gf4
    pts, mult = S_mixed.projective_arrays()
    forms = np.array(list(_normalized_tuples(t.order, 4)), dtype=np.int16)
    counts = form_counts(pts, mult, forms, t.mul_table, t.add_table)
    ref: dict[int, int] = {}
    for c in counts.tolist():
        ref[int(c)] = ref.get(int(c), 0) + 1
    assert mixed == dict(sorted(ref.items()))
    assert sum(mixed.values()) == sum(fast.values())


def test_spectrum_multiset_with_infinity_multiplicity(gf9):
    S = twisted_hermitian_set(Params(gf9, 3, 1, 3))
    S5 = S.with_point(infinity_point(3), 5)
    proj = spectrum(S5, "projective").histogram
    # planes through the infinity point gain 5; the infinity hyperplane has 5
    assert proj[5] == 1
    assert proj[27 + 5] == 90
    assert sum(proj.values()) == 820


def test_minimality_single_point(gf9):
    S = PointMultiset.from_affine(gf9, 2, [(1, 2)])
    rep = minimality_report(S)
    assert rep.t == 0
    assert not rep.is_intersection_set
    assert not rep.is_minimal


def test_minimality_validation(gf9):
    with pytest.raises(InvalidParameter):
        minimality_report(PointMultiset(gf9, 2, {}))
    S = PointMultiset.from_affine(gf9, 2, [(0, 0)]).with_point((1, 0, 0), 1)
    with pytest.raises(InvalidParameter):
        minimality_report(S)  # multiplicity 2 on one point
    S_inf = PointMultiset(gf9, 2, {(0, 0, 1): 1})
    with pytest.raises(InvalidParameter):
        minimality_report(S_inf)  # not affine


def test_minimality_witnesses_are_valid(gf9):
    S = twisted_hermitian_set(Params(gf9, 3, 1, 3))
    rep = minimality_report(S)
    assert rep.t == 9 and rep.is_minimal
    assert set(rep.witnesses) == {pt[1:] for pt, _ in S.sorted_items()}
    add, mul = gf9.add_table, gf9.mul_table
    for pt, form in list(rep.witnesses.items())[:25]:
        h = Hyperplane(gf9, form)
        assert incidence(gf9, pt, h)
        members = sum(1 for other, _ in S.sorted_items() if incidence(gf9, other[1:], h))
        assert members == 9


def test_double_counting_identity(gf25):
    S = twisted_hermitian_set(Params(gf25, 2, 1, 5))
    proj = spectrum(S, "projective").histogram
    lhs = sum(s * c for s, c in proj.items())
    assert lhs == S.size * hyperplanes_through_point(25, 2)


def test_multiset_support_validation(gf9):
    with pytest.raises(InvalidParameter):
        PointMultiset(gf9, 2, {(1, 0, 0): 0})
    with pytest.raises(InvalidParameter):
        PointMultiset(gf9, 2, {(1, 0): 1})
    with pytest.raises(InvalidParameter):
        PointMultiset(gf9, 2, {(0, 0, 0): 1})
    scaled = tuple(int(gf9.mul_table[2, c]) for c in (1, 2, 3))
    S = PointMultiset(gf9, 2, {scaled: 2})
    assert S.sorted_items() == [((1, 2, 3), 2)]


def test_spectrum_of_infinity_point_only(gf9):
    S = PointMultiset(gf9, 2, {(0, 0, 1): 3})
    proj = spectrum(S, "projective").histogram
    # 10 of the 91 lines of PG(2,9) pass through the infinity point
    assert proj == {0: 81, 3: 10}


def test_spectrum_of_cone_uses_generic_path(gf9):
    from trichar.varieties import Params, hermitian_cone_at_infinity

    cone = hermitian_cone_at_infinity(Params(gf9, 3, 1, 3))
    spec = spectrum(cone, "projective")
    assert spec.total == 820
    assert sum(s * c for s, c in spec.histogram.items()) == 37 * 91
    # the infinity hyperplane contains the whole cone
    assert spec.histogram[37] >= 1


def test_spectrum_json_shape(gf9):
    S = PointMultiset.from_affine(gf9, 3, [(0, 0, 0)])
    doc = spectrum(S, "projective").as_json_dict()
    assert doc == {"mode": "projective", "histogram": {"0": 729, "1": 91}}


def test_minimality_json_shape(gf9):
    S = PointMultiset.from_affine(gf9, 2, enumerate_points(gf9, 2, "affine"))
    doc = minimality_report(S).as_json_dict()
    assert doc["t"] == 9 and doc["is_minimal"] is True
    # witnesses keyed by point, valued by hyperplane coefficient arrays
    assert len(doc["witnesses"]) == 81
    key, form = next(iter(sorted(doc["witnesses"].items())))
    assert key == "0,0"
    assert isinstance(form, list) and len(form) == 3
    point = tuple(int(c) for c in key.split(","))
    assert incidence(gf9, point, tuple(form))


def test_hyperplane_stream_mode_errors(gf9):
    with pytest.raises(InvalidParameter):
        list(enumerate_hyperplanes(gf9, 1, "affine"))
    with pytest.raises(InvalidParameter):
        list(enumerate_points(gf9, 2, "weird"))
    with pytest.raises(InvalidParameter):
        spectrum(PointMultiset.from_affine(gf9, 2, [(0, 0)]), "weird")

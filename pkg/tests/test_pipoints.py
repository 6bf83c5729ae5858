import pytest

from rankvar.errors import NotFlat
from rankvar.fields import FiniteField
from rankvar.modules import AlgebraSpec, direct_sum, free_module, trivial_module
from rankvar.pipoints import (
    ProjPoint,
    cosupport_points,
    dade_test,
    equivalent,
    generic_chart,
    jordan_type,
    linear_pi_point,
    make_pi_point,
    proj_points,
    support_points,
    support_report,
)


def _spec(p=2, r=2, flavor="grouplike"):
    return AlgebraSpec(p, r, FiniteField(p, 1), flavor)


def test_flatness_rejections():
    spec = _spec()
    with pytest.raises(NotFlat):
        make_pi_point(spec, "z1*z2")
    with pytest.raises(NotFlat):
        make_pi_point(spec, "1 + z1")


def test_equivalence_is_linear_part_proportionality():
    spec = _spec(3, 2)
    a = make_pi_point(spec, "z1 + z2")
    b = make_pi_point(spec, "2*z1 + 2*z2 + z1*z2")
    c = make_pi_point(spec, "z1 + 2*z2")
    assert equivalent(a, b)
    assert not equivalent(a, c)


def test_jordan_types_on_free_and_trivial():
    spec = _spec()
    lam = free_module(spec)
    k = trivial_module(spec)
    pt = make_pi_point(spec, "z1")
    assert jordan_type(pt, lam) == [2, 2]
    assert jordan_type(pt, k) == [1]
    spec3 = _spec(3, 2)
    assert jordan_type(make_pi_point(spec3, "z1 + z2"), free_module(spec3)) == [3, 3, 3]


def test_support_of_trivial_is_everything():
    for p, r in ((2, 2), (3, 2), (2, 3)):
        spec = _spec(p, r)
        field = spec.field
        supp = support_points(trivial_module(spec), field)
        assert supp == set(proj_points(field, r))


def test_support_of_free_is_empty():
    spec = _spec()
    lam = free_module(spec)
    assert not support_points(lam, FiniteField(2, 1))
    assert not support_points(lam, FiniteField(2, 2))
    assert dade_test(lam)


def test_dade_on_mixed_sum():
    spec = _spec(3, 2)
    m = direct_sum(free_module(spec), trivial_module(spec))
    assert not dade_test(m)
    assert dade_test(direct_sum(free_module(spec), free_module(spec)))


def test_generic_chart_strings():
    spec = _spec(2, 3)
    chart = generic_chart(spec, 2)
    assert str(chart.poly) == "t1*z1 + z2 + t2*z3"
    assert generic_chart(_spec(2, 1), 1).poly is not None


def test_cosupport_equals_support_over_extension():
    spec = _spec()
    m = direct_sum(trivial_module(spec), free_module(spec))
    for ext in (FiniteField(2, 1), FiniteField(2, 2)):
        assert cosupport_points(m, ext) == support_points(m, ext)


def test_twist_moves_coordinates():
    f4 = FiniteField(2, 2)
    spec = _spec()
    k = trivial_module(spec)
    plain = support_points(k, f4, twist=0)
    twisted = support_points(k, f4, twist=1)
    # the twist squares coordinates, a bijection on P^1(F_4)
    assert len(plain) == len(twisted) == 5
    assert {ProjPoint(tuple(c * c for c in pt.coords)) for pt in plain} == twisted


def test_support_report_json():
    spec = _spec()
    rep = support_report(trivial_module(spec), spec.field, with_cosupport=True)
    js = rep.to_json()
    assert js["schema"] == "v1"
    assert js["support"] == ["[0:1]", "[1:0]", "[1:1]"]
    assert js["cosupport"] == js["support"]
    assert js["charts"] == [False, False]

import pytest

from rankvar.errors import ZeroClass
from rankvar.fields import FiniteField
from rankvar.modules import AlgebraSpec, free_module, is_projective, trivial_module
from rankvar.homological import (
    carlson_module,
    ext_dim,
    koszul_cone,
    koszul_object,
    minimal_resolution,
    omega_k_module,
    parse_coh_class,
    syzygy,
    trivial_resolution,
)
from rankvar.pipoints import make_pi_point, jordan_type, proj_points, support_points


def _spec(p=2, r=2, flavor="grouplike"):
    return AlgebraSpec(p, r, FiniteField(p, 1), flavor)


def test_betti_numbers_of_trivial_module():
    spec = _spec()
    res = minimal_resolution(trivial_module(spec), 6)
    ranks = [c.dim // 4 for c in res.covers]
    assert ranks == [1, 2, 3, 4, 5, 6, 7]


def test_minimal_resolution_is_a_complex_and_exact():
    for p, r in ((2, 2), (3, 2), (2, 3)):
        spec = _spec(p, r)
        res = minimal_resolution(trivial_module(spec), 4)
        for i in range(1, 4):
            assert (res.boundaries[i - 1] @ res.boundaries[i]).is_zero()
            assert res.boundaries[i - 1].kernel_basis().ncols == res.boundaries[
                i
            ].rank()


def test_trivial_resolution_squares_to_zero():
    for p, r, flavor in ((2, 2, "grouplike"), (3, 2, "primitive"), (2, 3, "grouplike")):
        spec = _spec(p, r, flavor)
        res = trivial_resolution(spec)
        for n in range(2, 6):
            assert (res.boundary(n - 1) @ res.boundary(n)).is_zero()


def test_syzygy_of_projective_vanishes():
    spec = _spec()
    lam = free_module(spec)
    assert syzygy(lam, 1).dim == 0
    k = trivial_module(spec)
    assert syzygy(k, 1).dim == 3


def test_omega_k_dimensions():
    spec = _spec()
    assert omega_k_module(spec, 1).dim == 3
    assert omega_k_module(spec, 2).dim == 5


def test_ext_of_trivial_with_itself():
    spec = _spec()
    k = trivial_module(spec)
    # Betti numbers reappear as Ext dimensions into k
    assert [ext_dim(k, k, i) for i in range(4)] == [1, 2, 3, 4]


def test_ext_from_projective_vanishes():
    spec = _spec(3, 2)
    lam = free_module(spec)
    k = trivial_module(spec)
    for i in range(1, 5):
        assert ext_dim(lam, k, i) == 0


def test_carlson_module_of_linear_class():
    spec = _spec()
    cls = parse_coh_class(spec, "y1")
    L = carlson_module(cls)
    assert L.dim == 2
    assert {str(pt) for pt in support_points(L, spec.field)} == {"[0:1]"}
    pt = make_pi_point(spec, "z2")
    assert 1 in jordan_type(pt, L)


def test_carlson_supports_for_p3():
    spec = _spec(3, 2)
    cls = parse_coh_class(spec, "y1")
    L = carlson_module(cls)
    assert {str(pt) for pt in support_points(L, spec.field)} == {"[0:1]"}


def test_zero_class_rejected():
    spec = _spec()
    with pytest.raises(ZeroClass):
        carlson_module(parse_coh_class(spec, "0"))
    with pytest.raises(ZeroClass):
        koszul_cone(parse_coh_class(spec, "0"))


def test_koszul_cone_support():
    spec = _spec()
    cone = koszul_cone(parse_coh_class(spec, "y1"))
    assert cone.dim == 2
    assert {str(pt) for pt in support_points(cone, spec.field)} == {"[0:1]"}


def test_koszul_object_cuts_support():
    spec = _spec()
    k = trivial_module(spec)
    quad = parse_coh_class(spec, "y1*y2")
    obj = koszul_object(k, [quad])
    want = {
        pt
        for pt in proj_points(spec.field, 2)
        if not quad.poly.eval(pt.coords)
    }
    assert support_points(obj, spec.field) == want


def test_koszul_by_all_generators_is_projective():
    # V(y1) cap V(y2) is empty in Proj P^1, so the object dies entirely
    spec = _spec()
    k = trivial_module(spec)
    obj = koszul_object(
        k, [parse_coh_class(spec, "y1"), parse_coh_class(spec, "y2")]
    )
    assert is_projective(obj)
    assert not support_points(obj, spec.field)


def test_product_of_linear_classes_matches_composite():
    spec = _spec()
    a = parse_coh_class(spec, "y1")
    b = parse_coh_class(spec, "y2")
    ab = parse_coh_class(spec, "y1*y2")
    La = carlson_module(ab)
    # same support as cutting by y1 then y2 union-wise: V(y1*y2)
    assert {str(pt) for pt in support_points(La, spec.field)} == {"[0:1]", "[1:0]"}
    assert a.degree + b.degree == ab.degree

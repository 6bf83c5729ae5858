import json

import pytest

from rankvar.errors import InvariantViolation
from rankvar.fields import FiniteField
from rankvar.linalg import Matrix
from rankvar.modules import (
    AlgebraSpec,
    LambdaModule,
    direct_sum,
    dual_module,
    free_module,
    hom_module,
    is_projective,
    module_from_json,
    module_to_json,
    projective_cover,
    quotient_module,
    scalar_extension,
    submodule,
    tensor_product,
    trivial_module,
)


def _spec(p=2, r=2, flavor="grouplike"):
    return AlgebraSpec(p, r, FiniteField(p, 1), flavor)


def test_free_module_shape():
    for p, r in ((2, 2), (3, 2), (2, 3)):
        lam = free_module(_spec(p, r))
        assert lam.dim == p ** r
        assert is_projective(lam)
        for z in lam.actions:
            assert z.mat_pow(p).is_zero()


def test_invalid_actions_rejected():
    spec = _spec()
    f2 = spec.field
    a = Matrix.from_int_rows(f2, [[0, 0], [1, 0]])
    b = Matrix.from_int_rows(f2, [[0, 1], [0, 0]])
    # a and b do not commute
    with pytest.raises(InvariantViolation):
        LambdaModule(spec, [a, b])
    # not square-zero in characteristic 2
    c = Matrix.from_int_rows(f2, [[0, 1], [1, 0]])
    with pytest.raises(InvariantViolation):
        LambdaModule(spec, [c, Matrix.zeros(f2, 2, 2)])


def test_tensor_with_unit_and_free():
    spec = _spec()
    k = trivial_module(spec)
    lam = free_module(spec)
    assert tensor_product(k, lam).dim == lam.dim
    # Lambda tensor M is free for any M
    m = direct_sum(k, k)
    assert is_projective(tensor_product(lam, m))


def test_hom_trivial_source_is_identity():
    spec = _spec(3, 2)
    k = trivial_module(spec)
    lam = free_module(spec)
    h = hom_module(k, lam)
    assert h.dim == lam.dim
    assert is_projective(h)


def test_dual_of_free_is_projective():
    for flavor in ("grouplike", "primitive"):
        spec = _spec(2, 2, flavor)
        lam = free_module(spec)
        assert is_projective(dual_module(lam))


def test_projective_cover_of_trivial():
    spec = _spec()
    k = trivial_module(spec)
    cover, surj = projective_cover(k)
    assert cover.dim == 4
    assert surj.nrows == 1 and surj.ncols == 4
    assert not is_projective(k)


def test_submodule_and_quotient():
    spec = _spec()
    lam = free_module(spec)
    f2 = spec.field
    rad = lam.radical_matrix()
    sub = submodule(lam, rad.columns(rad.column_space_pivots()))
    assert sub.dim == 3
    quot, _ = quotient_module(lam, rad.columns(rad.column_space_pivots()))
    assert quot.dim == 1
    for z in quot.actions:
        assert z.is_zero()


def test_json_roundtrip():
    spec = _spec(3, 2)
    lam = free_module(spec)
    data = module_to_json(lam)
    text = json.dumps(data)
    again = module_from_json(json.loads(text))
    assert again.dim == lam.dim
    assert again.actions == lam.actions
    assert again.spec.flavor == lam.spec.flavor


def test_scalar_extension_preserves_structure():
    spec = _spec()
    k = trivial_module(spec)
    ke = scalar_extension(k, FiniteField(2, 2))
    assert ke.dim == 1
    assert ke.spec.field.q == 4
    lam = scalar_extension(free_module(spec), FiniteField(2, 2))
    assert is_projective(lam)

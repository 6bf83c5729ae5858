import random

import pytest

from rankvar.errors import UnitIdeal
from rankvar.fields import FiniteField, RatFuncField
from rankvar.poly import PolyRing, grevlex_key
from rankvar import grobner as gb


def _ring(field, n):
    return PolyRing(field, tuple(f"y{i + 1}" for i in range(n)))


def test_groebner_twisted_cubic_style():
    f2 = FiniteField(2, 1)
    R = _ring(f2, 3)
    y1, y2, y3 = R.gens()
    I = gb.GradedIdeal(R, [y1 * y3 - y2 * y2])
    assert gb.krull_dimension(I) == 2
    assert gb.radical_member(y2 * y2 - y1 * y3, I)
    assert not gb.radical_member(y2, I)


def test_ideal_membership_and_units():
    f3 = FiniteField(3, 1)
    R = _ring(f3, 2)
    y1, y2 = R.gens()
    I = gb.GradedIdeal(R, [y1, y2])
    assert I.contains(y1 * y2 + y2)
    assert not I.contains(R.one)
    with pytest.raises(UnitIdeal):
        gb.krull_dimension(gb.GradedIdeal(R, [R.one], check_homogeneous=False))


def test_saturation_and_quotient():
    f2 = FiniteField(2, 1)
    R = _ring(f2, 2)
    y1, y2 = R.gens()
    I = gb.GradedIdeal(R, [y1 * y2], check_homogeneous=False)
    sat = gb.saturate(I, y1)
    assert gb.ideals_equal(R, sat.gens, [y2])
    colon = gb.ideal_quotient(I, y1)
    assert gb.ideals_equal(R, colon.gens, [y2])


def test_contraction_of_localized_ideal():
    f2 = FiniteField(2, 1)
    K = RatFuncField(f2, ("t1",))
    B = PolyRing(K, ("y1", "y2"))
    b1, b2 = B.gens()
    t1 = K.gen(0)
    base = _ring(f2, 2)
    out = gb.contract_to_base([b1, b2 - b1.scale(t1)], base, ("t1",))
    assert gb.ideals_equal(base, out.gens, list(base.gens()))


def test_noether_normalization_cone():
    f2 = FiniteField(2, 1)
    R = _ring(f2, 3)
    y1, y2, y3 = R.gens()
    I = gb.GradedIdeal(R, [y1 * y3 - y2 * y2])
    forms = gb.noether_normalization(I)
    assert len(forms) == 2
    # quotient by the forms really is zero-dimensional
    from rankvar.grobner import GradedIdeal, krull_dimension

    assert krull_dimension(GradedIdeal(R, list(I.gens) + list(forms))) == 0


def test_weak_sequence_artificial_failure():
    f2 = FiniteField(2, 1)
    K = RatFuncField(f2, ("t1",))
    B = PolyRing(K, ("y1", "y2"))
    c1, c2 = B.gens()
    P = gb.GradedIdeal(B, [c1 * c1], check_homogeneous=False)
    # y1 is a zerodivisor mod (y1^2); inverting it kills everything
    assert gb.weak_sequence_check(P, [c1], c1) is False
    t1 = K.gen(0)
    assert gb.weak_sequence_check(
        gb.GradedIdeal(B, []), [c2 - c1.scale(t1)], c1
    )


def test_generic_point_bundled_primes():
    bundled = [("", 2), ("y1", 2), ("y1\ny2", 3), ("y1*y3 - y2^2", 3)]
    for p in (2, 3):
        field = FiniteField(p, 1)
        for text, nvars in bundled:
            data = gb.generic_point(gb.parse_ideal(text, field, nvars=nvars))
            assert data.all_pass(), (p, text, data.checks)
            js = data.to_json()
            assert js["schema"] == "v1"
            assert set(js["checks"]) == {
                "dimension_one",
                "contracts_to_prime",
                "weak_sequence",
            }


def test_generic_point_degenerate_stays_rational():
    f2 = FiniteField(2, 1)
    data = gb.generic_point(gb.parse_ideal("y1", f2, nvars=2))
    # dim Proj(A/(y1)) = 0, so no t variables get introduced
    assert isinstance(data.ext_field, FiniteField)
    assert [str(g) for g in data.q_ideal.gens] == ["y1"]


def _random_poly(ring, rng, max_terms=3, max_deg=2):
    els = ring.field.elements()
    n = len(ring.names)
    poly = ring.zero
    for _ in range(rng.randrange(1, max_terms + 1)):
        exps = tuple(rng.randrange(max_deg + 1) for _ in range(n))
        poly = poly + ring.term(exps, rng.choice(els))
    return poly


def test_buchberger_criterion_randomized():
    rng = random.Random(17)
    cases = 0
    for _ in range(300):
        field = FiniteField(rng.choice((2, 3)), 1)
        ring = _ring(field, rng.choice((2, 3)))
        gens = [_random_poly(ring, rng) for _ in range(rng.randrange(1, 3))]
        gens = [g for g in gens if g]
        if not gens:
            continue
        basis = gb.groebner(gens, grevlex_key)
        assert gb.buchberger_criterion_holds(basis, grevlex_key)
        # ideal membership of generators is preserved
        for g in gens:
            assert not gb.normal_form(g, basis, grevlex_key)
        cases += 1
    assert cases >= 250

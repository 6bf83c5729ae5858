"""Acceptance criteria, one test per criterion.

Every test prints exactly one PASS/FAIL line.  All comparisons are
exact (sets, integers, booleans); there are no numeric tolerances
anywhere.  Criteria with runtime caps assert them.
"""

import random
import time

from rankvar.fields import FiniteField, RatFuncField
from rankvar.linalg import Matrix
from rankvar.modules import AlgebraSpec, is_projective
from rankvar.pipoints import chart_verdicts, dade_test, support_points
from rankvar.homological import minimal_resolution, trivial_resolution
from rankvar.poly import PolyRing, grevlex_key
from rankvar import grobner as gb
from rankvar.corpus import build_corpus, random_module
from rankvar.suites import SuiteConfig, run_suite


def _line(num, label, ok, elapsed, detail=""):
    verdict = "PASS" if ok else "FAIL"
    suffix = f" {detail}" if detail else ""
    print(f"criterion {num} ({label}): {verdict} in {elapsed:.1f}s{suffix}")


def _full_corpus(per_cell=50, seed=0, flavor="grouplike"):
    mods = []
    for p in (2, 3):
        for r in (2, 3):
            spec = AlgebraSpec(p, r, FiniteField(p, 1), flavor)
            mods.extend(build_corpus(spec, per_cell, seed))
    return mods


def test_criterion_1_dade_equivalence():
    start = time.time()
    mods = _full_corpus(per_cell=50)
    assert len(mods) >= 200
    assert all(m.dim <= 16 for m in mods)
    mismatches = 0
    for m in mods:
        p = m.spec.p
        oracle = is_projective(m)
        verdict = dade_test(m)
        explicit = (
            not support_points(m, FiniteField(p, 1))
            and not support_points(m, FiniteField(p, 2))
            and all(chart_verdicts(m))
        )
        if not (oracle == verdict == explicit):
            mismatches += 1
    elapsed = time.time() - start
    ok = mismatches == 0 and elapsed <= 60.0
    _line(1, "Dade equivalence", ok, elapsed, f"{len(mods)} modules")
    assert mismatches == 0
    assert elapsed <= 60.0


def test_criterion_2_tensor_formula():
    start = time.time()
    reports = [
        run_suite("tensor", SuiteConfig(p=2, r=2, pairs=60, count=40)),
        run_suite("tensor", SuiteConfig(p=3, r=2, pairs=60, count=40)),
    ]
    cases = sum(rep["cases"] for rep in reports)
    elapsed = time.time() - start
    ok = all(rep["passed"] for rep in reports) and cases >= 200 and elapsed <= 60.0
    _line(2, "tensor formula", ok, elapsed, f"{cases} checks, both flavors")
    assert all(rep["passed"] for rep in reports)
    assert cases >= 200  # >= 100 pairs, each under both Hopf flavors
    assert elapsed <= 60.0


def test_criterion_3_hom_and_cosupport():
    start = time.time()
    reports = [
        run_suite("hom", SuiteConfig(p=2, r=2, pairs=50, count=40)),
        run_suite("hom", SuiteConfig(p=3, r=2, pairs=50, count=40)),
        run_suite("cosupport", SuiteConfig(p=2, r=2, count=40)),
        run_suite("cosupport", SuiteConfig(p=3, r=2, count=40)),
        run_suite("cosupport", SuiteConfig(p=2, r=3, count=30)),
    ]
    elapsed = time.time() - start
    ok = all(rep["passed"] for rep in reports)
    cases = sum(rep["cases"] for rep in reports)
    _line(3, "Hom and cosupport formulas", ok, elapsed, f"{cases} checks")
    assert ok


def test_criterion_4_koszul_support():
    start = time.time()
    reports = [
        run_suite("koszul", SuiteConfig(p=2, r=2, pairs=25, count=40)),
        run_suite("koszul", SuiteConfig(p=3, r=2, pairs=15, count=30)),
    ]
    cases = sum(rep["cases"] for rep in reports)
    elapsed = time.time() - start
    ok = all(rep["passed"] for rep in reports) and cases >= 50
    _line(4, "Koszul support", ok, elapsed, f"{cases} linear+quadratic cases")
    assert all(rep["passed"] for rep in reports)
    assert cases >= 50


def test_criterion_5_carlson_hypersurfaces():
    start = time.time()
    reports = []
    for p in (2, 3):
        for r in (2, 3):
            reports.append(run_suite("carlson", SuiteConfig(p=p, r=r)))
    cases = sum(rep["cases"] for rep in reports)
    elapsed = time.time() - start
    ok = all(rep["passed"] for rep in reports)
    _line(5, "Carlson hypersurfaces", ok, elapsed, f"all {cases} linear classes")
    assert ok


def test_criterion_6_equivalence_robustness():
    start = time.time()
    reports = []
    for p in (2, 3):
        for r in (2, 3):
            reports.append(run_suite("equiv", SuiteConfig(p=p, r=r, count=30)))
    cases = sum(rep["cases"] for rep in reports)
    elapsed = time.time() - start
    ok = all(rep["passed"] for rep in reports)
    _line(6, "pi-point tail robustness", ok, elapsed, f"{cases} perturbed points")
    assert ok


def test_criterion_7_generic_points():
    start = time.time()
    rep = run_suite("generic-points", SuiteConfig())
    elapsed = time.time() - start
    ok = rep["passed"] and rep["cases"] == 8 and elapsed <= 120.0
    _line(7, "generic closed points", ok, elapsed, "4 primes over F_2 and F_3")
    assert rep["passed"], rep["failures"]
    assert elapsed <= 120.0


def test_criterion_8_ext_symmetry():
    start = time.time()
    reports = [
        run_suite("ext-symmetry", SuiteConfig(p=2, r=2, pairs=30, count=40)),
        run_suite("ext-symmetry", SuiteConfig(p=3, r=2, pairs=20, count=30)),
    ]
    cases = sum(rep["cases"] for rep in reports)
    elapsed = time.time() - start
    ok = all(rep["passed"] for rep in reports) and cases >= 50
    _line(8, "Ext symmetry", ok, elapsed, f"{cases} pairs, bound 10")
    assert all(rep["passed"] for rep in reports)
    assert cases >= 50


def test_criterion_9_residue_model():
    start = time.time()
    rep = run_suite("residue-model", SuiteConfig())
    elapsed = time.time() - start
    ok = rep["passed"] and rep["cases"] == 4 and "skipped" not in rep
    _line(9, "residue model", ok, elapsed, "4 primes, 20 points each")
    assert ok, rep


def _hygiene_field_axioms(rng):
    fields = [FiniteField(2, 1), FiniteField(3, 1), FiniteField(5, 1),
              FiniteField(7, 1), FiniteField(2, 2), FiniteField(2, 3),
              FiniteField(3, 2)]
    K = RatFuncField(FiniteField(3, 1), ("t1",))
    t = K.gen(0)
    rat_pool = [K.zero, K.one, t, t + K.one, t * t, K.one / t,
                (t + K.one) / (t * t + K.one)]
    cases = 0
    for _ in range(900):
        field = rng.choice(fields)
        els = field.elements()
        a, b, c = (rng.choice(els) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == field.zero
        assert a * field.one == a
        if b:
            assert (a / b) * b == a
        cases += 1
    for _ in range(150):
        a, b, c = (rng.choice(rat_pool) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert (a + b) + c == a + (b + c)
        if c:
            assert (a / c) * c == a
        cases += 1
    return cases


def _hygiene_rank_nullity(rng):
    fields = [FiniteField(2, 1), FiniteField(3, 1), FiniteField(5, 1),
              FiniteField(2, 2), FiniteField(3, 2)]
    cases = 0
    for _ in range(1000):
        field = rng.choice(fields)
        els = field.elements()
        nrows = rng.randrange(1, 7)
        ncols = rng.randrange(1, 7)
        a = Matrix.from_rows(
            field,
            [[rng.choice(els) for _ in range(ncols)] for _ in range(nrows)],
        )
        ker = a.kernel_basis()
        assert a.rank() + ker.ncols == ncols
        if ker.ncols:
            assert (a @ ker).is_zero()
        cases += 1
    return cases


def _hygiene_complexes(rng):
    cases = 0
    for p, r in ((2, 2), (3, 2)):
        spec = AlgebraSpec(p, r, FiniteField(p, 1), "grouplike")
        res = trivial_resolution(spec)
        for n in range(2, 28):
            assert (res.boundary(n - 1) @ res.boundary(n)).is_zero()
            cases += 1
    specs = [AlgebraSpec(2, 2, FiniteField(2, 1), "grouplike"),
             AlgebraSpec(3, 2, FiniteField(3, 1), "grouplike")]
    while cases < 1000:
        spec = rng.choice(specs)
        m = random_module(spec, rng.choice((3, 4)), rng)
        res = minimal_resolution(m, 10)
        for i in range(1, 10):
            assert (res.boundaries[i - 1] @ res.boundaries[i]).is_zero()
            cases += 1
    return cases


def _hygiene_buchberger(rng):
    cases = 0
    while cases < 1000:
        field = FiniteField(rng.choice((2, 3, 5)), 1)
        nvars = rng.choice((2, 3))
        ring = PolyRing(field, tuple(f"y{i + 1}" for i in range(nvars)))
        els = field.elements()
        gens = []
        for _ in range(rng.randrange(1, 3)):
            poly = ring.zero
            for _ in range(rng.randrange(1, 4)):
                exps = tuple(rng.randrange(3) for _ in range(nvars))
                poly = poly + ring.term(exps, rng.choice(els))
            if poly:
                gens.append(poly)
        if not gens:
            continue
        basis = gb.groebner(gens, grevlex_key)
        assert gb.buchberger_criterion_holds(basis, grevlex_key)
        for g in gens:
            assert not gb.normal_form(g, basis, grevlex_key)
        cases += 1
    return cases


def test_criterion_10_numerical_hygiene():
    start = time.time()
    rng = random.Random("hygiene")
    n_fields = _hygiene_field_axioms(rng)
    n_rank = _hygiene_rank_nullity(rng)
    n_cpx = _hygiene_complexes(rng)
    n_gb = _hygiene_buchberger(rng)
    elapsed = time.time() - start
    ok = min(n_fields, n_rank, n_cpx, n_gb) >= 1000
    _line(
        10,
        "numerical hygiene",
        ok,
        elapsed,
        f"axioms={n_fields} rank={n_rank} complexes={n_cpx} groebner={n_gb}",
    )
    assert n_fields >= 1000
    assert n_rank >= 1000
    assert n_cpx >= 1000
    assert n_gb >= 1000

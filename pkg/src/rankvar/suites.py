"""Named verification suites.

Each suite reruns one of the library's structural formulas on a seeded
random corpus and returns a versioned report dict.  Reports carry full
counterexample dumps so a failure is reproducible from the JSON alone.
"""

import random

from .errors import UnknownSuite
from .fields import FiniteField, RatFuncField
from .grobner import generic_point, parse_ideal
from .homological import (
    CohClass,
    coh_class_from_poly,
    ext_dim,
    carlson_module,
    koszul_object,
    parse_coh_class,
    trivial_resolution,
    y_ring,
)
from .modules import (
    FLAVORS,
    AlgebraSpec,
    LambdaModule,
    hom_module,
    is_projective,
    module_to_json,
    scalar_extension,
    tensor_product,
    trivial_module,
)
from .pipoints import (
    ProjPoint,
    dade_test,
    cosupport_points,
    is_projective_at,
    linear_pi_point,
    make_pi_point,
    proj_points,
    support_points,
    z_ring,
)
from .corpus import build_corpus


BUNDLED_PRIMES = (
    ("(0)", 2, ""),
    ("(y1)", 2, "y1"),
    ("(y1,y2)", 3, "y1\ny2"),
    ("(y1*y3-y2^2)", 3, "y1*y3 - y2^2"),
)


class SuiteConfig:
    """Knobs shared by every suite; everything defaults to the cheap case."""

    def __init__(
        self,
        p=2,
        r=2,
        flavor="grouplike",
        seed=0,
        count=40,
        pairs=25,
        ext_bound=10,
        twist=0,
        residue_budget=1000,
    ):
        self.p = p
        self.r = r
        self.flavor = flavor
        self.seed = seed
        self.count = count
        self.pairs = pairs
        self.ext_bound = ext_bound
        self.twist = twist
        self.residue_budget = residue_budget

    def to_json(self):
        return {
            "p": self.p,
            "r": self.r,
            "flavor": self.flavor,
            "seed": self.seed,
            "count": self.count,
            "pairs": self.pairs,
            "ext_bound": self.ext_bound,
            "twist": self.twist,
            "residue_budget": self.residue_budget,
        }


def _report(name, config, cases, failures):
    failures = sorted(failures, key=lambda f: sorted(f.items()).__repr__())
    return {
        "schema": "v1",
        "suite": name,
        "config": config.to_json(),
        "cases": cases,
        "failures": failures,
        "passed": not failures,
    }


def _spec(config, flavor=None):
    return AlgebraSpec(
        config.p, config.r, FiniteField(config.p, 1), flavor or config.flavor
    )


def _points_str(points):
    return sorted(str(pt) for pt in points)


def suite_dade(config):
    """dade_test == projective-cover oracle on the corpus."""
    mods = build_corpus(_spec(config), config.count, config.seed)
    failures = []
    for m in mods:
        oracle = is_projective(m)
        verdict = dade_test(m)
        if verdict != oracle:
            failures.append(
                {
                    "module": module_to_json(m),
                    "oracle": oracle,
                    "dade": verdict,
                }
            )
    return _report("dade", config, len(mods), failures)


def _small_pairs(config, max_dim=6):
    mods = [m for m in build_corpus(_spec(config), config.count, config.seed)
            if 0 < m.dim <= max_dim]
    rng = random.Random(f"pairs-{config.seed}")
    return [(rng.choice(mods), rng.choice(mods)) for _ in range(config.pairs)]


def suite_tensor(config):
    """supp(M (x) N) = supp(M) cap supp(N) over F_p, both flavors."""
    field = FiniteField(config.p, 1)
    failures = []
    cases = 0
    for a, b in _small_pairs(config):
        for flavor in FLAVORS:
            spec = a.spec.with_flavor(flavor)
            m = LambdaModule(spec, a.actions, dim=a.dim, validate=False)
            n = LambdaModule(spec, b.actions, dim=b.dim, validate=False)
            cases += 1
            got = support_points(tensor_product(m, n), field)
            want = support_points(m, field) & support_points(n, field)
            if got != want:
                failures.append(
                    {
                        "flavor": flavor,
                        "m": module_to_json(m),
                        "n": module_to_json(n),
                        "tensor_support": _points_str(got),
                        "intersection": _points_str(want),
                    }
                )
    return _report("tensor", config, cases, failures)


def suite_hom(config):
    """supp(Hom(M,N)) = supp(M) cap supp(N) over F_p."""
    field = FiniteField(config.p, 1)
    failures = []
    cases = 0
    for m, n in _small_pairs(config):
        cases += 1
        got = support_points(hom_module(m, n), field)
        want = support_points(m, field) & support_points(n, field)
        if got != want:
            failures.append(
                {
                    "m": module_to_json(m),
                    "n": module_to_json(n),
                    "hom_support": _points_str(got),
                    "intersection": _points_str(want),
                }
            )
    return _report("hom", config, cases, failures)


def suite_cosupport(config):
    """cosupport = support over the quadratic extension."""
    ext = FiniteField(config.p, 2)
    mods = build_corpus(_spec(config), config.count, config.seed)
    failures = []
    for m in mods:
        co = cosupport_points(m, ext, config.twist)
        su = support_points(m, ext, config.twist)
        if co != su:
            failures.append(
                {
                    "module": module_to_json(m),
                    "cosupport": _points_str(co),
                    "support": _points_str(su),
                }
            )
    return _report("cosupport", config, len(mods), failures)


def _variety(cls, field):
    """Prime-field points of V(zeta)."""
    out = set()
    for pt in proj_points(field, cls.spec.r):
        if not cls.poly.eval(pt.coords):
            out.add(pt)
    return out


def _random_class(spec, rng, degree):
    ring = y_ring(spec)
    elems = [e for e in spec.field.elements()]
    while True:
        poly = ring.zero
        for e in _degree_exponents(spec.r, degree):
            poly = poly + ring.term(e, rng.choice(elems))
        if poly:
            return CohClass(spec, poly)


def _degree_exponents(r, degree):
    if r == 1:
        return [(degree,)]
    out = []
    for head in range(degree + 1):
        out.extend((head,) + tail for tail in _degree_exponents(r - 1, degree - head))
    return out


def suite_koszul(config):
    """supp(M // zeta) = supp(M) cap V(zeta), linear and quadratic zeta."""
    field = FiniteField(config.p, 1)
    spec = _spec(config)
    mods = [m for m in build_corpus(spec, config.count, config.seed) if m.dim <= 8]
    rng = random.Random(f"koszul-{config.seed}")
    failures = []
    cases = 0
    for degree in (1, 2):
        for _ in range(max(config.pairs, 1)):
            m = rng.choice(mods)
            cls = _random_class(spec, rng, degree)
            cases += 1
            got = support_points(koszul_object(m, [cls]), field, config.twist)
            want = support_points(m, field, config.twist) & _variety(cls, field)
            if got != want:
                failures.append(
                    {
                        "module": module_to_json(m),
                        "class": str(cls),
                        "koszul_support": _points_str(got),
                        "intersection": _points_str(want),
                    }
                )
    return _report("koszul", config, cases, failures)


def suite_carlson(config):
    """supp(L_zeta) = V(zeta) cap supp(k) for every linear zeta."""
    field = FiniteField(config.p, 1)
    spec = _spec(config)
    ring = y_ring(spec)
    supp_k = support_points(trivial_module(spec), field, config.twist)
    failures = []
    cases = 0
    for pt in proj_points(field, config.r):
        poly = ring.zero
        for i, c in enumerate(pt.coords):
            poly = poly + ring.gen(i).scale(c)
        cls = CohClass(spec, poly)
        cases += 1
        got = support_points(carlson_module(cls), field, config.twist)
        want = _variety(cls, field) & supp_k
        if got != want:
            failures.append(
                {
                    "class": str(cls),
                    "carlson_support": _points_str(got),
                    "expected": _points_str(want),
                }
            )
    return _report("carlson", config, cases, failures)


def _random_tail(ring, rng, p):
    """Nonzero polynomial with all terms of degree >= 2."""
    elems = [e for e in ring.field.elements() if e]
    r = len(ring.names)
    while True:
        tail = ring.zero
        for _ in range(rng.randrange(1, 4)):
            exps = [0] * r
            for _ in range(rng.randrange(2, 2 * p + 1)):
                exps[rng.randrange(r)] += 1
            tail = tail + ring.term(tuple(exps), rng.choice(elems))
        if tail:
            return tail


def suite_equiv(config):
    """Degree >= 2 tails never change a projectivity verdict."""
    spec = _spec(config)
    field = spec.field
    mods = [m for m in build_corpus(spec, config.count, config.seed) if m.dim <= 10]
    ring = z_ring(spec)
    rng = random.Random(f"equiv-{config.seed}")
    failures = []
    cases = 0
    points = proj_points(field, config.r)
    for m in mods:
        pt = rng.choice(points)
        alpha = linear_pi_point(spec, pt.coords)
        tail = _random_tail(ring, rng, config.p)
        beta = make_pi_point(spec, alpha.poly + tail)
        cases += 1
        if not (
            alpha.linear == beta.linear
            and is_projective_at(alpha, m) == is_projective_at(beta, m)
        ):
            failures.append(
                {
                    "module": module_to_json(m),
                    "alpha": str(alpha.poly),
                    "beta": str(beta.poly),
                    "verdict_alpha": is_projective_at(alpha, m),
                    "verdict_beta": is_projective_at(beta, m),
                }
            )
    return _report("equiv", config, cases, failures)


def suite_ext_symmetry(config):
    """Some Ext^i(M,N) with 1 <= i <= bound vanishes iff supports are disjoint."""
    bound = config.ext_bound
    failures = []
    cases = 0
    for m, n in _small_pairs(config):
        cases += 1
        dims = [ext_dim(m, n, i) for i in range(1, bound + 1)]
        some_zero = any(d == 0 for d in dims)
        disjoint = dade_test(tensor_product(m, n))
        ok = some_zero == disjoint
        if disjoint:
            ok = ok and all(d == 0 for d in dims)
        if not ok:
            failures.append(
                {
                    "m": module_to_json(m),
                    "n": module_to_json(n),
                    "ext_dims": dims,
                    "supports_disjoint": disjoint,
                }
            )
    return _report("ext-symmetry", config, cases, failures)


def suite_generic_points(config):
    """Certificates of the bundled generic closed points over F_2 and F_3."""
    failures = []
    cases = 0
    for p in (2, 3):
        field = FiniteField(p, 1)
        for name, nvars, text in BUNDLED_PRIMES:
            cases += 1
            data = generic_point(parse_ideal(text, field, nvars=nvars))
            if not data.all_pass():
                failures.append({"p": p, "prime": name, "record": data.to_json()})
    return _report("generic-points", config, cases, failures)


def _off_variety_points(gens, ring, rng, count):
    """>= count projective points where some generator is nonzero.

    Over a finite coefficient field the points come from the smallest
    extension with enough of them; over a rational function field they
    are built from low-degree polynomials in the t variables.
    """
    field = ring.field
    r = len(ring.names)
    if not gens:
        return []
    if isinstance(field, FiniteField):
        d = field.d
        while True:
            ext = FiniteField(field.p, d)
            emb = field.embedding_into(ext)
            pts = []
            for pt in proj_points(ext, r):
                vals = [g.eval(pt.coords, target=ext, embed=emb) for g in gens]
                if any(vals):
                    pts.append((ext, pt.coords))
            if len(pts) >= count:
                return pts[:count]
            d += 1
    pts = []
    seen = set()
    tgen = field.gen(0)
    while len(pts) < count:
        coords = []
        for _ in range(r):
            c = field.from_int(rng.randrange(field.base.q))
            if rng.randrange(2):
                c = c + tgen ** rng.randrange(1, 3)
            coords.append(c)
        if not any(coords):
            continue
        key = tuple(str(c) for c in coords)
        if key in seen:
            continue
        seen.add(key)
        if any(g.eval(coords) for g in gens):
            pts.append((field, tuple(coords)))
    return pts


def _predicted_koszul_dim(base_spec, classes):
    res = trivial_resolution(base_spec)
    pred = 1
    for cls in classes:
        d = cls.degree
        basis, _ = res.omega_basis(d)
        pred *= res.cover(d - 1).dim + 1 - basis.ncols
    return pred


def suite_residue_model(config):
    """Koszul residue object: nonprojective, dim 1, dead off V(q)."""
    field = FiniteField(config.p, 1)
    rng = random.Random(f"residue-{config.seed}")
    failures = []
    skipped = []
    cases = 0
    for name, nvars, text in BUNDLED_PRIMES:
        cases += 1
        data = generic_point(parse_ideal(text, field, nvars=nvars))
        ring = data.q_ideal.ring
        big = ring.field
        spec = AlgebraSpec(config.p, nvars, big, config.flavor)
        gens = [g for g in data.q_ideal.gens if g]
        classes = [coh_class_from_poly(spec, g) for g in gens]
        pred = _predicted_koszul_dim(
            AlgebraSpec(config.p, nvars, field, config.flavor), classes
        )
        if pred > config.residue_budget:
            cases -= 1
            skipped.append({"prime": name, "koszul_dim": pred})
            continue
        kappa = koszul_object(trivial_module(spec), classes)
        bad = {}
        if is_projective(kappa):
            bad["kappa_projective"] = True
        if not data.checks.get("dimension_one"):
            bad["dimension"] = data.checks
        alive = []
        extended = {}
        for pt_field, coords in _off_variety_points(gens, ring, rng, 20):
            target, pspec = kappa, spec
            if pt_field != big:
                if pt_field not in extended:
                    extended[pt_field] = (
                        scalar_extension(kappa, pt_field),
                        spec.with_field(pt_field),
                    )
                target, pspec = extended[pt_field]
            alpha = linear_pi_point(pspec, coords)
            if not is_projective_at(alpha, target):
                alive.append("[" + ":".join(str(c) for c in coords) + "]")
        if alive:
            bad["support_off_variety"] = alive
        if bad:
            bad["prime"] = name
            failures.append(bad)
    report = _report("residue-model", config, cases, failures)
    if skipped:
        report["skipped"] = skipped
    return report


SUITES = {
    "dade": suite_dade,
    "tensor": suite_tensor,
    "hom": suite_hom,
    "koszul": suite_koszul,
    "carlson": suite_carlson,
    "equiv": suite_equiv,
    "ext-symmetry": suite_ext_symmetry,
    "generic-points": suite_generic_points,
    "residue-model": suite_residue_model,
    "cosupport": suite_cosupport,
}


def run_suite(name, config=None):
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {sorted(SUITES)}")
    return SUITES[name](config or SuiteConfig())

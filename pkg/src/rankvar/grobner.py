"""Groebner bases and the generic-closed-point construction.

Buchberger's algorithm over any exact coefficient field, plus the
decision procedures built on it: ideal membership, Krull dimension of
the quotient via the leading-term ideal, saturation, ideal quotients,
contraction from k(t)[y] down to k[y], Noether normalization, and the
verified data of a generic closed point over a rational function field.
"""

import itertools
import json

from .errors import (
    NonHomogeneous,
    ParseError,
    RankvarError,
    SearchExhausted,
    UnitIdeal,
)
from .fields import RatFuncField, field_to_json
from .parsing import parse_expression
from .poly import (
    MPoly,
    PolyRing,
    block_elim_key,
    exact_div,
    grevlex_key,
    mpoly_gcd,
    poly_divmod,
)


def _lcm_exps(e1, e2):
    return tuple(max(a, b) for a, b in zip(e1, e2))


def s_polynomial(f, g, key):
    ef, cf = f.leading(key)
    eg, cg = g.leading(key)
    lcm = _lcm_exps(ef, eg)
    mf = f.ring.term(tuple(a - b for a, b in zip(lcm, ef)), cf.inv())
    mg = g.ring.term(tuple(a - b for a, b in zip(lcm, eg)), cg.inv())
    return mf * f - mg * g


def normal_form(f, basis, key=grevlex_key):
    if not basis:
        return f
    _, rem = poly_divmod(f, basis, key)
    return rem


def groebner(gens, key=grevlex_key):
    """Reduced Groebner basis of the ideal generated by `gens`."""
    basis = [g.monic(key) for g in gens if g]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop()
        ei, _ = basis[i].leading(key)
        ej, _ = basis[j].leading(key)
        lcm = _lcm_exps(ei, ej)
        if all(a + b == c for a, b, c in zip(ei, ej, lcm)):
            continue  # coprime leading terms: S-polynomial reduces to 0
        rem = normal_form(s_polynomial(basis[i], basis[j], key), basis, key)
        if rem:
            rem = rem.monic(key)
            pairs.extend((k, len(basis)) for k in range(len(basis)))
            basis.append(rem)
    # reduce: drop elements with redundant leading terms, then fully
    # reduce the survivors against each other
    lead_min = []
    for g in basis:
        eg, _ = g.leading(key)
        if not any(
            all(a <= b for a, b in zip(o.leading(key)[0], eg))
            for o in lead_min
        ):
            lead_min = [
                o
                for o in lead_min
                if not all(a <= b for a, b in zip(eg, o.leading(key)[0]))
            ]
            lead_min.append(g)
    final = []
    for g in lead_min:
        others = [o for o in lead_min if o is not g]
        rem = normal_form(g, others, key) if others else g
        if rem:
            final.append(rem.monic(key))
    final.sort(key=lambda h: key(h.leading(key)[0]))
    return final


def buchberger_criterion_holds(basis, key=grevlex_key):
    """All S-polynomials of the basis reduce to zero."""
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if normal_form(s_polynomial(basis[i], basis[j], key), basis, key):
                return False
    return True


class GradedIdeal:
    """Homogeneous ideal with a cached reduced Groebner basis."""

    def __init__(self, ring, gens, check_homogeneous=True):
        gens = [g for g in gens if g]
        if check_homogeneous:
            for g in gens:
                if not g.is_homogeneous():
                    raise NonHomogeneous(f"{g} is not homogeneous")
        self.ring = ring
        self.gens = gens
        self._gb = None

    def basis(self, key=grevlex_key):
        if self._gb is None:
            self._gb = groebner(self.gens, key)
        return self._gb

    def contains(self, f):
        return not normal_form(f, self.basis(), grevlex_key)

    def is_unit(self):
        b = self.basis()
        return bool(b) and b[0].is_constant()

    def __eq__(self, other):
        if not isinstance(other, GradedIdeal) or self.ring != other.ring:
            return NotImplemented
        return all(other.contains(g) for g in self.gens) and all(
            self.contains(g) for g in other.gens
        )

    def __hash__(self):
        return hash(self.ring)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.gens) or "0"
        return f"<GradedIdeal ({gens})>"


def ideals_equal(ring, gens_a, gens_b):
    ia = GradedIdeal(ring, gens_a, check_homogeneous=False)
    ib = GradedIdeal(ring, gens_b, check_homogeneous=False)
    return all(ib.contains(g) for g in gens_a) and all(
        ia.contains(g) for g in gens_b
    )


def krull_dimension(ideal):
    """Krull dimension of ring/ideal via the leading-term ideal: the
    size of the largest variable set meeting no leading monomial."""
    basis = ideal.basis()
    n = ideal.ring.nvars
    if not basis:
        return n
    if basis[0].is_constant():
        raise UnitIdeal("quotient by the unit ideal")
    leads = [g.leading(grevlex_key)[0] for g in basis]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            sset = set(subset)
            ok = True
            for e in leads:
                if all(k == 0 or i in sset for i, k in enumerate(e)):
                    ok = False
                    break
            if ok:
                return size
    return 0


def _with_extra_var(ring, name="w_"):
    return PolyRing(ring.field, (name,) + ring.names)


def _shift_in(poly, big_ring):
    """View a poly of `ring` inside big_ring (extra variable in front)."""
    return MPoly(big_ring, {(0,) + e: c for e, c in poly.terms.items()})


def _drop_first_var(poly, ring):
    return MPoly(ring, {e[1:]: c for e, c in poly.terms.items()})


def saturate(ideal, f):
    """(I : f^infinity) via the extra-variable elimination trick."""
    if not f:
        raise RankvarError("saturation by zero")
    ring = ideal.ring
    big = _with_extra_var(ring)
    w = big.gen(0)
    gens = [_shift_in(g, big) for g in ideal.gens]
    gens.append(big.one - w * _shift_in(f, big))
    gb = groebner(gens, block_elim_key(1))
    kept = [
        _drop_first_var(g, ring) for g in gb if g.degree_in(0) == 0
    ]
    return GradedIdeal(ring, kept, check_homogeneous=False)


def radical_member(f, ideal):
    """f in sqrt(I), decided by 1 in (I, 1 - w f)."""
    if not f:
        return True
    ring = ideal.ring
    big = _with_extra_var(ring)
    w = big.gen(0)
    gens = [_shift_in(g, big) for g in ideal.gens]
    gens.append(big.one - w * _shift_in(f, big))
    gb = groebner(gens, grevlex_key)
    return bool(gb) and gb[0].is_constant()


def ideal_quotient(ideal, f):
    """(I : f) via (I intersect (f)) / f."""
    if not f:
        raise RankvarError("quotient by the zero element")
    ring = ideal.ring
    big = _with_extra_var(ring, "s_")
    s = big.gen(0)
    gens = [s * _shift_in(g, big) for g in ideal.gens]
    gens.append((big.one - s) * _shift_in(f, big))
    gb = groebner(gens, block_elim_key(1))
    quot = []
    for g in gb:
        if g.degree_in(0) == 0:
            quot.append(exact_div(_drop_first_var(g, ring), f))
    return GradedIdeal(ring, quot, check_homogeneous=False)


# -- contraction from k(t)[y] to k[y] ------------------------------------


def _mixed_ring(base_field, t_names, y_names):
    return PolyRing(base_field, tuple(t_names) + tuple(y_names))


def _clear_generator(gen, mixed):
    """Move a k(t)-coefficient polynomial in y into k[t, y]."""
    kfield = gen.ring.field  # RatFuncField
    lcm = kfield.ring.one
    for c in gen.terms.values():
        if c.den != kfield.ring.one:
            g = mpoly_gcd(lcm, c.den)
            lcm = lcm * (c.den / g)
    nt = len(kfield.names)
    terms = {}
    for ey, c in gen.terms.items():
        tpoly = c.num * (lcm / c.den)
        for et, c0 in tpoly.terms.items():
            terms[et + ey] = c0
    return MPoly(mixed, terms)


def _y_block_key(nt):
    """Order with the y block dominant; leading coefficients live in k[t]."""

    def key(exps):
        return grevlex_key(exps[nt:]) + grevlex_key(exps[:nt])

    return key


def contract_to_base(gens, base_ring, t_names):
    """Contraction (gens) intersect k[y] for an ideal of k(t1..tn)[y].

    Clears denominators into k[t, y], saturates by the product of the
    k[t]-leading coefficients of a y-dominant Groebner basis, then
    eliminates the t variables.
    """
    nt = len(t_names)
    if not gens:
        return GradedIdeal(base_ring, [], check_homogeneous=False)
    mixed = _mixed_ring(base_ring.field, t_names, base_ring.names)
    cleared = [_clear_generator(g, mixed) for g in gens if g]
    ykey = _y_block_key(nt)
    ygb = groebner(cleared, ykey)
    h = mixed.one
    seen = set()
    for g in ygb:
        ey, _ = g.leading(ykey)
        ylead = ey[nt:]
        ny = len(base_ring.names)
        coeff = MPoly(
            mixed,
            {
                e[:nt] + (0,) * ny: c
                for e, c in g.terms.items()
                if e[nt:] == ylead
            },
        )
        if coeff.is_constant():
            continue
        if coeff not in seen:
            seen.add(coeff)
            h = h * coeff
    ideal = GradedIdeal(mixed, ygb, check_homogeneous=False)
    if not h.is_constant():
        ideal = saturate(ideal, h)
    elim = groebner(ideal.gens, block_elim_key(nt))
    kept = []
    for g in elim:
        if all(g.degree_in(j) == 0 for j in range(nt)):
            kept.append(MPoly(base_ring, {e[nt:]: c for e, c in g.terms.items()}))
    return GradedIdeal(base_ring, kept, check_homogeneous=False)


# -- Noether normalization and generic points ----------------------------


def _linear_forms(ring):
    """Nonzero linear forms over the base field, one per scalar class."""
    field = ring.field
    els = field.elements()
    out = []
    n = ring.nvars
    for lead in range(n):
        for tail in itertools.product(els, repeat=n - lead - 1):
            coeffs = [field.zero] * lead + [field.one] + list(tail)
            form = ring.zero
            for i, c in enumerate(coeffs):
                if c:
                    form = form + ring.gen(i).scale(c)
            out.append(form)
    return out


def noether_normalization(ideal, max_power=3):
    """Equal-degree homogeneous elements a_0..a_n with dim(I, a) = 0.

    Searches products of scalar classes of linear forms first, then
    their e-th powers for e up to max_power.
    """
    d = krull_dimension(ideal)
    if d == 0:
        return []
    ring = ideal.ring
    forms = _linear_forms(ring)
    for power in range(1, max_power + 1):
        cands = [f**power for f in forms] if power > 1 else forms
        chosen = _search_normalization(ideal, cands, d)
        if chosen is not None:
            return chosen
    raise SearchExhausted(
        f"no normalization of length {d} with powers up to {max_power}"
    )


def _search_normalization(ideal, cands, d):
    def rec(start, chosen, gens):
        dim_now = krull_dimension(
            GradedIdeal(ideal.ring, gens, check_homogeneous=False)
        )
        if dim_now == 0 and len(chosen) == d:
            return chosen
        if len(chosen) == d:
            return None
        for i in range(start, len(cands)):
            cand = cands[i]
            bigger = GradedIdeal(
                ideal.ring, gens + [cand], check_homogeneous=False
            )
            if krull_dimension(bigger) == dim_now - 1:
                got = rec(i + 1, chosen + [cand], gens + [cand])
                if got is not None:
                    return got
        return None

    return rec(0, [], list(ideal.gens))


def _embed_to_ratfunc(poly, big_ring):
    kfield = big_ring.field

    def lift(c):
        return kfield.const(c)

    return poly.map_coeffs(lift, big_ring)


def weak_sequence_check(ambient, b_list, a0):
    """Localized weak regular sequence test: for every i,
    saturate((J : b_i), a0) = saturate(J, a0) with J = (ambient, b_1..b_(i-1))."""
    ring = ambient.ring
    gens = list(ambient.gens)
    for i, b in enumerate(b_list):
        j_ideal = GradedIdeal(ring, gens, check_homogeneous=False)
        colon = ideal_quotient(j_ideal, b)
        left = saturate(colon, a0)
        right = saturate(j_ideal, a0)
        if right.is_unit():
            # inverting a0 killed the whole module: the localized
            # sequence condition is vacuous only because everything
            # became zero, which counts as a failed certificate
            return False
        if not ideals_equal(ring, left.gens, right.gens):
            return False
        gens.append(b)
    return True


class GenericPointData:
    """Certificate bundle for the generic closed point over k(t1..tn)."""

    def __init__(
        self,
        prime,
        normalization,
        ext_field,
        b_list,
        q_ideal,
        checks,
        certificates,
    ):
        self.prime = prime
        self.normalization = normalization
        self.ext_field = ext_field
        self.b_list = b_list
        self.q_ideal = q_ideal
        self.checks = checks
        self.certificates = certificates

    def all_pass(self):
        return all(self.checks.values())

    def to_json(self):
        return {
            "schema": "v1",
            "prime": [str(g) for g in self.prime.gens],
            "normalization": [str(a) for a in self.normalization],
            "extension_field": field_to_json(self.ext_field),
            "b_elements": [str(b) for b in self.b_list],
            "q_generators": [str(g) for g in self.q_ideal.gens],
            "checks": dict(self.checks),
            "certificates": dict(self.certificates),
        }


def generic_point(prime):
    """Data and verification record of the generic closed point construction:
    K = k(t1..tn), b_i = a_i - a_0 t_i, q = (p, b)B, with the dimension,
    contraction, and localized weak-sequence checks recorded.

    Primality of the input is the caller's responsibility.
    """
    ring = prime.ring
    base_field = ring.field
    a_list = noether_normalization(prime)
    n = len(a_list) - 1
    checks = {}
    certs = {
        "normalization_size": len(a_list),
        "prime_dimension": krull_dimension(prime),
    }
    if n <= 0:
        # already a closed point (dim A/p = 1); q = p over K = k
        ext_field = base_field
        q_ideal = prime
        b_list = []
        checks["dimension_one"] = krull_dimension(prime) == 1
        checks["contracts_to_prime"] = True
        checks["weak_sequence"] = True
        certs["q_basis_size"] = len(prime.basis())
        certs["q_dimension"] = krull_dimension(prime)
        return GenericPointData(
            prime, a_list, ext_field, b_list, q_ideal, checks, certs
        )
    t_names = tuple(f"t{i + 1}" for i in range(n))
    ext_field = RatFuncField(base_field, t_names)
    big_ring = PolyRing(ext_field, ring.names)
    a_big = [_embed_to_ratfunc(a, big_ring) for a in a_list]
    b_list = [
        a_big[i] - a_big[0].scale(ext_field.gen(i - 1))
        for i in range(1, len(a_big))
    ]
    p_big = [_embed_to_ratfunc(g, big_ring) for g in prime.gens]
    q_ideal = GradedIdeal(big_ring, p_big + b_list)
    q_dim = krull_dimension(q_ideal)
    checks["dimension_one"] = q_dim == 1
    certs["q_dimension"] = q_dim
    certs["q_basis_size"] = len(q_ideal.basis())
    contraction = contract_to_base(q_ideal.gens, ring, t_names)
    certs["contraction_generators"] = [str(g) for g in contraction.gens]
    down = all(radical_member(g, prime) for g in contraction.gens)
    up = all(radical_member(g, contraction) for g in prime.gens)
    checks["contracts_to_prime"] = down and up
    ambient = GradedIdeal(big_ring, p_big)
    a0_big = a_big[0]
    checks["weak_sequence"] = weak_sequence_check(ambient, b_list, a0_big)
    return GenericPointData(
        prime, a_list, ext_field, b_list, q_ideal, checks, certs
    )


# -- ideal text format ---------------------------------------------------


def parse_ideal(text, field, nvars=None):
    """One homogeneous polynomial per line, variables y1..yr (and the
    field's t variables through coefficients when field is rational)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if nvars is None:
        import re

        nvars = 0
        for ln in lines:
            for m in re.finditer(r"y(\d+)", ln):
                nvars = max(nvars, int(m.group(1)))
        if nvars == 0:
            raise ParseError("cannot infer variable count; no y variables found")
    ring = PolyRing(field, tuple(f"y{i + 1}" for i in range(nvars)))
    symbols = {name: ring.gen(i) for i, name in enumerate(ring.names)}
    if isinstance(field, RatFuncField):
        for i, name in enumerate(field.names):
            symbols[name] = ring.const(field.gen(i))
    gens = [parse_expression(ln, symbols, ring.from_int) for ln in lines]
    return GradedIdeal(ring, gens)


def save_generic_point(data, path):
    with open(path, "w") as fh:
        json.dump(data.to_json(), fh, indent=1)
        fh.write("\n")

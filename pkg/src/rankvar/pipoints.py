"""Pi-points of Lambda_K(r, p): flat maps K[t]/(t^p) -> Lambda_K.

A pi-point is the image polynomial alpha(z1..zr) with zero constant
term; flatness is equivalent to a nonzero linear part, and two
pi-points are equivalent exactly when their linear parts are
proportional.  Restriction along alpha turns a module into a single
p-nilpotent matrix whose Jordan type drives every support notion here.
"""

import itertools

from .errors import IncompatibleFields, NotFlat, SpecMismatch
from .fields import FiniteField, RatFuncField
from .linalg import Matrix, rank_ratfunc
from .modules import LambdaModule, scalar_extension
from .parsing import parse_expression
from .poly import PolyRing


def z_ring(spec):
    return PolyRing(spec.field, tuple(f"z{i + 1}" for i in range(spec.r)))


class PiPoint:
    """Validated pi-point: image polynomial plus cached linear part."""

    __slots__ = ("spec", "poly", "linear")

    def __init__(self, spec, poly, linear):
        self.spec = spec
        self.poly = poly
        self.linear = linear

    def __repr__(self):
        return f"<PiPoint {self.poly} (p={self.spec.p}, r={self.spec.r})>"

    def __str__(self):
        return str(self.poly)


def make_pi_point(spec, alpha):
    """Build a pi-point from a polynomial (or its text form) in z1..zr."""
    ring = z_ring(spec)
    if isinstance(alpha, str):
        symbols = {name: ring.gen(i) for i, name in enumerate(ring.names)}
        alpha = parse_expression(alpha, symbols, ring.from_int)
    if alpha.constant_coeff():
        raise NotFlat("image polynomial has a nonzero constant term")
    linear = tuple(
        alpha.terms.get(
            tuple(1 if j == i else 0 for j in range(spec.r)), spec.field.zero
        )
        for i in range(spec.r)
    )
    if not any(linear):
        raise NotFlat("image polynomial has zero linear part, so it is not flat")
    return PiPoint(spec, alpha, linear)


def linear_pi_point(spec, coeffs):
    """Pi-point with image sum coeffs[i] * z_{i+1}."""
    ring = z_ring(spec)
    poly = ring.zero
    for i, c in enumerate(coeffs):
        if c:
            poly = poly + ring.gen(i).scale(c)
    return make_pi_point(spec, poly)


def _compatible(pt, m):
    s, t = pt.spec, m.spec
    if s.p != t.p or s.r != t.r or s.field != t.field:
        raise SpecMismatch(f"pi-point over {s!r} against module over {t!r}")


def equivalent(a, b):
    """Pi-points are equivalent iff their linear parts are proportional."""
    if a.spec.p != b.spec.p or a.spec.r != b.spec.r or a.spec.field != b.spec.field:
        raise SpecMismatch("pi-points over different specs")
    la, lb = a.linear, b.linear
    for i in range(len(la)):
        for j in range(i + 1, len(la)):
            if la[i] * lb[j] != la[j] * lb[i]:
                return False
    return True


def restrict(pt, m):
    """The nilpotent matrix of t acting on M through the pi-point."""
    _compatible(pt, m)
    p = m.spec.p
    field = m.spec.field
    acc = Matrix.zeros(field, m.dim, m.dim)
    for exps, c in pt.poly.terms.items():
        if any(e >= p for e in exps):
            continue
        if sum(exps) == 1:
            word = m.actions[exps.index(1)]
        else:
            word = m.word(exps)
        acc = acc + word.scale(c)
    return acc


def _power_ranks(n_mat, p, dim):
    """[rank(N^0), rank(N^1), ..., rank(N^(p+1))]."""
    over_ratfunc = isinstance(n_mat.field, RatFuncField)
    ranks = [dim]
    power = None
    for s in range(1, p + 2):
        power = n_mat if power is None else power @ n_mat
        if over_ratfunc:
            cap = (dim * (p - s)) // p if s <= p else 0
            ranks.append(rank_ratfunc(power, cap=max(cap, 0)) if cap > 0 else 0)
        else:
            ranks.append(power.rank())
    return ranks


def jordan_type(pt, m):
    """Partition of dim M into Jordan block sizes (descending)."""
    n_mat = restrict(pt, m)
    ranks = _power_ranks(n_mat, m.spec.p, m.dim)
    parts = []
    for s in range(1, m.spec.p + 1):
        mult = ranks[s - 1] - 2 * ranks[s] + ranks[s + 1]
        parts.extend([s] * mult)
    parts.sort(reverse=True)
    return parts


def is_projective_at(pt, m):
    """Whether the restriction along the pi-point is free over K[t]/(t^p)."""
    p = m.spec.p
    if m.dim % p:
        return False
    if m.dim == 0:
        return True
    n_mat = restrict(pt, m)
    power = n_mat.mat_pow(p - 1)
    want = m.dim // p
    if isinstance(m.spec.field, RatFuncField):
        return rank_ratfunc(power, cap=want) == want
    return power.rank() == want


class ProjPoint:
    """Point of P^(r-1), first nonzero coordinate normalized to 1."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(coords)
        lead = None
        for c in coords:
            if c:
                lead = c
                break
        if lead is None:
            raise NotFlat("projective point needs a nonzero coordinate")
        inv = lead.inv()
        self.coords = tuple(inv * c for c in coords)

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def sort_key(self):
        return tuple(getattr(c, "code", 0) for c in self.coords) + tuple(
            str(c) for c in self.coords
        )

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"

    def __repr__(self):
        return f"<ProjPoint {self}>"


def proj_points(field, r):
    """All points of P^(r-1) over a finite field, canonical representatives."""
    els = field.elements()
    out = []
    for lead in range(r):
        head = [field.zero] * lead + [field.one]
        for tail in itertools.product(els, repeat=r - 1 - lead):
            out.append(ProjPoint(head + list(tail)))
    return out


def _twist_coords(coords, p, e):
    if e == 0:
        return coords
    q = p**e
    return tuple(c**q for c in coords)


def support_points(m, enum_field, twist=0):
    """Pi-support of M over the points of P^(r-1)(enum_field)."""
    me = scalar_extension(m, enum_field)
    spec = me.spec
    out = set()
    for pt in proj_points(enum_field, spec.r):
        alpha = linear_pi_point(spec, pt.coords)
        if not is_projective_at(alpha, me):
            out.add(ProjPoint(_twist_coords(pt.coords, spec.p, twist)))
    return out


def hom_k_module(m, ext_field):
    """Hom_k(K, M) as a Lambda_K-module, built from an explicit basis.

    K runs through multiplication operators on the coordinate space
    (f(1), f(u), ..., f(u^(d-1))); a K-basis is extracted greedily and
    the z-actions are rewritten in it.  This is the honest construction
    that the evaluation isomorphism Hom_k(K, M) = K (x) M is tested
    against.
    """
    k0 = m.spec.field
    if ext_field == k0:
        return m
    if not isinstance(k0, FiniteField) or k0.d != 1:
        raise IncompatibleFields("Hom_k(K, M) needs a prime ground field")
    if not isinstance(ext_field, FiniteField) or ext_field.p != k0.p:
        raise IncompatibleFields("K must be a finite extension of the ground field")
    d = ext_field.d
    dim = m.dim
    big = d * dim
    # multiplication by u on coordinates: shift blocks, last block via modulus
    rows = [[k0.zero] * big for _ in range(big)]
    mod = ext_field.modulus
    for i in range(d - 1):
        for a in range(dim):
            rows[i * dim + a][(i + 1) * dim + a] = k0.one
    for j in range(d):
        c = k0.from_int(-mod[j])
        if c:
            for a in range(dim):
                rows[(d - 1) * dim + a][j * dim + a] = c
    s_mat = Matrix.from_rows(k0, rows)
    # z-actions are blockwise
    z_big = []
    for z in m.actions:
        zb = Matrix.zeros(k0, 0, 0)
        for _ in range(d):
            zb = _diag(zb, z)
        z_big.append(zb)
    # greedy K-basis: orbits of coordinate vectors under multiplication
    ident = Matrix.identity(k0, big)
    span = Matrix.zeros(k0, big, 0)
    basis_orbits = []
    for i in range(big):
        if span.ncols == big:
            break
        e = ident.columns([i])
        if span.ncols and span.hstack(e).rank() == span.ncols:
            continue
        orbit = e
        v = e
        for _ in range(d - 1):
            v = s_mat @ v
            orbit = orbit.hstack(v)
        basis_orbits.append(orbit)
        span = span.hstack(orbit)
    t_mat = basis_orbits[0]
    for orb in basis_orbits[1:]:
        t_mat = t_mat.hstack(orb)
    p = k0.p
    actions = []
    for zb in z_big:
        coords = t_mat.solve(zb @ t_mat)
        out = [[None] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(dim):
                code = 0
                for l in range(d - 1, -1, -1):
                    code = code * p + coords.entry(i * d + l, j * d).code
                out[i][j] = ext_field.elem(code)
        actions.append(Matrix.from_rows(ext_field, out))
    spec = m.spec.with_field(ext_field)
    return LambdaModule(spec, actions, dim=dim, validate=False)


def _diag(a, b):
    field = b.field
    top = a.hstack(Matrix.zeros(field, a.nrows, b.ncols))
    bot = Matrix.zeros(field, b.nrows, a.ncols).hstack(b)
    return top.vstack(bot)


def cosupport_points(m, ext_field, twist=0):
    """Pi-cosupport of M over P^(r-1)(K), computed on Hom_k(K, M)."""
    hom = hom_k_module(m, ext_field)
    spec = hom.spec
    out = set()
    for pt in proj_points(ext_field, spec.r):
        alpha = linear_pi_point(spec, pt.coords)
        if not is_projective_at(alpha, hom):
            out.add(ProjPoint(_twist_coords(pt.coords, spec.p, twist)))
    return out


def generic_chart(spec, i):
    """Generic pi-point of chart i (1-based): coordinate i is 1, the
    rest are fresh indeterminates over a rational function field."""
    if not 1 <= i <= spec.r:
        raise SpecMismatch(f"chart index {i} out of range 1..{spec.r}")
    base = spec.field
    if isinstance(base, RatFuncField):
        raise IncompatibleFields("generic charts start from a finite ground field")
    if spec.r == 1:
        return linear_pi_point(spec, (base.one,))
    names = tuple(f"t{j + 1}" for j in range(spec.r - 1))
    bigfield = RatFuncField(base, names)
    bigspec = spec.with_field(bigfield)
    coeffs = []
    k = 0
    for j in range(spec.r):
        if j == i - 1:
            coeffs.append(bigfield.one)
        else:
            coeffs.append(bigfield.gen(k))
            k += 1
    return linear_pi_point(bigspec, coeffs)


def chart_verdicts(m):
    """Projectivity of M at the r generic charts."""
    out = []
    for i in range(1, m.spec.r + 1):
        chart = generic_chart(m.spec, i)
        me = scalar_extension(m, chart.spec.field)
        out.append(is_projective_at(chart, me))
    return out


def dade_test(m):
    """Certified projectivity: empty support over F_p and F_{p^2} and
    projective at every generic chart.  Charts alone are not enough;
    rank can drop at special parameter values, so the rational and
    quadratic-extension point scans are part of the certificate."""
    base = m.spec.field
    for d in (1, 2):
        if support_points(m, FiniteField(base.p, d)):
            return False
    for i in range(1, m.spec.r + 1):
        chart = generic_chart(m.spec, i)
        me = scalar_extension(m, chart.spec.field)
        if not is_projective_at(chart, me):
            return False
    return True


class SupportReport:
    """Support/cosupport point sets plus generic chart verdicts."""

    def __init__(self, enum_field, support, cosupport, charts, twist=0):
        self.enum_field = enum_field
        self.support = sorted(support)
        self.cosupport = sorted(cosupport) if cosupport is not None else None
        self.charts = list(charts)
        self.twist = twist

    def to_json(self):
        from .fields import field_to_json

        data = {
            "schema": "v1",
            "field": field_to_json(self.enum_field),
            "support": [str(pt) for pt in self.support],
            "charts": self.charts,
            "twist": self.twist,
        }
        if self.cosupport is not None:
            data["cosupport"] = [str(pt) for pt in self.cosupport]
        return data


def support_report(m, enum_field, with_cosupport=False, twist=0):
    support = support_points(m, enum_field, twist=twist)
    cosupport = (
        cosupport_points(m, enum_field, twist=twist) if with_cosupport else None
    )
    return SupportReport(enum_field, support, cosupport, chart_verdicts(m), twist)

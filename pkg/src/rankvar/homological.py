"""Minimal resolutions, syzygies, Ext, cohomology classes, Carlson
modules and Koszul objects.

Two resolutions are used.  Arbitrary modules get the generic minimal
resolution by iterated projective covers.  The trivial module gets an
explicit minimal resolution (the twisted tensor product of the periodic
resolutions over each k[z]/(z^p) factor) whose free modules come with
canonical generators e_a indexed by compositions a of the homological
degree; the polynomial generator y_i of the reduced cohomology ring is
the functional dual to e_(g*delta_i), where g = 1 for p = 2 and g = 2
for odd p.  Products of classes are computed honestly by lifting chain
maps through the resolution and composing.
"""

import itertools
import threading

from .errors import NonHomogeneous, RankvarError, ZeroClass
from .fields import FiniteField, RatFuncField
from .linalg import Matrix
from .modules import (
    LambdaModule,
    direct_sum,
    dual_module,
    free_module,
    monomial_basis,
    projective_cover,
    quotient_module,
    scalar_extension,
    submodule,
    tensor_product,
    trivial_module,
)
from .parsing import parse_expression
from .poly import PolyRing

_RES_LOCK = threading.Lock()


class Resolution:
    """Minimal free resolution ... -> P_1 -> P_0 -> M -> 0, extended on
    demand and cached on the module."""

    def __init__(self, module):
        self.module = module
        cover, aug = projective_cover(module)
        self.covers = [cover]
        self.augmentation = aug
        self.boundaries = []  # d_i : P_i -> P_(i-1), i >= 1
        self.syzygy_bases = []  # basis of Omega^(i+1) M inside P_i
        self.syzygy_modules = []

    def rank(self, i):
        q = self.module.spec.p ** self.module.spec.r
        return self.covers[i].dim // q if q else 0

    def extend(self, length):
        with _RES_LOCK:
            while len(self.boundaries) < length:
                i = len(self.boundaries)
                prev_map = self.boundaries[-1] if i else self.augmentation
                kernel = prev_map.kernel_basis()
                omega = submodule(self.covers[i], kernel)
                cover, surj = projective_cover(omega)
                self.covers.append(cover)
                self.boundaries.append(kernel @ surj)
                self.syzygy_bases.append(kernel)
                self.syzygy_modules.append(omega)
        return self


def minimal_resolution(module, length):
    """Resolution of `module` with boundaries d_1..d_length available."""
    if module._res is None:
        module._res = Resolution(module)
    return module._res.extend(length)


def syzygy(module, i):
    """Omega^i M; negative i via the dual module."""
    if i == 0:
        return module
    if i < 0:
        return dual_module(syzygy(dual_module(module), -i))
    res = minimal_resolution(module, i)
    return res.syzygy_modules[i - 1]


def _hom_lambda_matrix(boundary, n_src, n_tgt, target):
    """Matrix of (- compose boundary): Hom(P_tgt, N) -> Hom(P_src, N).

    Free-module maps are coordinatized by generator images in N,
    stacked per generator.  boundary: P_src -> P_tgt.
    """
    spec = target.spec
    q = spec.p**spec.r
    basis = monomial_basis(spec.p, spec.r)
    dim_n = target.dim
    words = {}
    rows = Matrix.zeros(spec.field, n_src * dim_n, n_tgt * dim_n).to_rows()
    for j in range(n_src):
        for k in range(n_tgt):
            acc = None
            for pos, e in enumerate(basis):
                c = boundary.entry(k * q + pos, j * q)
                if not c:
                    continue
                if e not in words:
                    words[e] = target.word(e)
                block = words[e].scale(c)
                acc = block if acc is None else acc + block
            if acc is None:
                continue
            for a in range(dim_n):
                for b in range(dim_n):
                    v = acc.entry(a, b)
                    if v:
                        rows[j * dim_n + a][k * dim_n + b] = v
    return Matrix.from_rows(spec.field, rows)


def ext_dim(m, n, i):
    """dim Ext^i(M, N) from Hom_Lambda of a minimal resolution of M."""
    if i < 0:
        raise RankvarError("Ext degree must be nonnegative")
    if m.dim == 0 or n.dim == 0:
        return 0
    res = minimal_resolution(m, i + 1)
    q = m.spec.p**m.spec.r
    ranks = [res.covers[j].dim // q for j in range(i + 2)]
    d_out = _hom_lambda_matrix(res.boundaries[i], ranks[i + 1], ranks[i], n)
    kernel_dim = ranks[i] * n.dim - d_out.transpose().rank()
    if i == 0:
        return kernel_dim
    d_in = _hom_lambda_matrix(res.boundaries[i - 1], ranks[i], ranks[i - 1], n)
    return kernel_dim - d_in.transpose().rank()


# -- explicit resolution of the trivial module --------------------------


def _compositions(r, n):
    """Nonnegative integer vectors of length r summing to n, lex order."""
    if r == 1:
        return [(n,)]
    out = []
    for first in range(n, -1, -1):
        for rest in _compositions(r - 1, n - first):
            out.append((first,) + rest)
    return out


class TrivialResolution:
    """Twisted tensor resolution of k over Lambda_k0(r, p), k0 finite.

    d(e_a) = sum_i (-1)^(a_1+..+a_(i-1)) z_i^(eps(a_i)) e_(a - delta_i)
    with eps(odd) = 1 and eps(even) = p - 1.
    """

    def __init__(self, spec):
        if not isinstance(spec.field, FiniteField):
            raise RankvarError("trivial resolution wants a finite ground field")
        self.spec = spec
        self.basis = monomial_basis(spec.p, spec.r)
        self.index = {e: i for i, e in enumerate(self.basis)}
        self.q = len(self.basis)
        self._gens = {}
        self._boundaries = {}
        self._covers = {}
        self._omega_bases = {}
        self._omega_modules = {}

    def gens(self, n):
        if n not in self._gens:
            self._gens[n] = _compositions(self.spec.r, n)
        return self._gens[n]

    def cover(self, n):
        if n not in self._covers:
            self._covers[n] = free_module(self.spec, len(self.gens(n)))
        return self._covers[n]

    def augmentation(self):
        field = self.spec.field
        row = [field.zero] * self.q
        row[self.index[(0,) * self.spec.r]] = field.one
        return Matrix.from_rows(field, [row])

    def boundary(self, n):
        """d_n : P_n -> P_(n-1), n >= 1."""
        if n in self._boundaries:
            return self._boundaries[n]
        spec = self.spec
        p, r, field = spec.p, spec.r, spec.field
        src = self.gens(n)
        tgt = {a: k for k, a in enumerate(self.gens(n - 1))}
        q = self.q
        rows = [[field.zero] * (q * len(src)) for _ in range(q * len(tgt))]
        minus_one = field.from_int(-1)
        for js, a in enumerate(src):
            sign = field.one
            for i in range(r):
                if a[i] > 0:
                    eps = 1 if a[i] % 2 == 1 else p - 1
                    down = a[:i] + (a[i] - 1,) + a[i + 1 :]
                    jt = tgt[down]
                    # full Lambda-linear column set: z^m e_a maps to
                    # sign * z^(m + eps*delta_i) e_down
                    for pos, m in enumerate(self.basis):
                        if m[i] + eps >= p:
                            continue
                        up = m[:i] + (m[i] + eps,) + m[i + 1 :]
                        rows[jt * q + self.index[up]][js * q + pos] = sign
                sign = sign * minus_one if a[i] % 2 == 1 else sign
        mat = Matrix.from_rows(field, rows)
        self._boundaries[n] = mat
        return mat

    def omega_basis(self, n):
        """Basis of Omega^n k inside P_(n-1): pivot columns of d_n, plus
        the pivot indices (preimage generators in P_n)."""
        if n not in self._omega_bases:
            d = self.boundary(n)
            pivots = d.column_space_pivots()
            self._omega_bases[n] = (d.columns(pivots), pivots)
        return self._omega_bases[n]

    def omega_module(self, n):
        if n not in self._omega_modules:
            if n == 0:
                self._omega_modules[n] = trivial_module(self.spec)
            else:
                basis, _ = self.omega_basis(n)
                self._omega_modules[n] = submodule(self.cover(n - 1), basis)
        return self._omega_modules[n]


_TRIVIAL_RES = {}
_COCYCLES = {}


def _res_key(spec):
    return (spec.p, spec.r, spec.field, spec.flavor)


def trivial_resolution(spec):
    key = _res_key(spec)
    with _RES_LOCK:
        if key not in _TRIVIAL_RES:
            _TRIVIAL_RES[key] = TrivialResolution(spec)
        return _TRIVIAL_RES[key]


def generator_degree(p):
    """Reduced-cohomology grading: deg y_i = 1 for p = 2, else 2."""
    return 1 if p == 2 else 2


def _lambda_linear(res, target_module, gen_images):
    """Full matrix of the Lambda-map sending generator j to column j."""
    spec = res.spec
    cols = []
    words = {}
    for j in range(gen_images.ncols):
        img = gen_images.columns([j])
        for e in res.basis:
            if e not in words:
                words[e] = target_module.word(e)
            cols.append(words[e] @ img)
    acc = cols[0]
    for c in cols[1:]:
        acc = acc.hstack(c)
    return acc


def _generator_cocycle(res, i):
    """The functional P_g -> k dual to the canonical generator y_i."""
    spec = res.spec
    g = generator_degree(spec.p)
    gens = res.gens(g)
    target = tuple(
        g if j == i else 0 for j in range(spec.r)
    )
    field = spec.field
    row = [field.zero] * (res.q * len(gens))
    row[gens.index(target) * res.q + res.index[(0,) * spec.r]] = field.one
    return Matrix.from_rows(field, [row])


def _cocycle_product(res, phi_a, deg_a, phi_b, deg_b):
    """Cocycle of the product: lift phi_a to a chain map and compose."""
    spec = res.spec
    # Phi_0 : P_(deg_a) -> P_0 = Lambda sending gen j to phi_a(gen j) * e_0
    n_a = len(res.gens(deg_a))
    images = Matrix.from_rows(
        spec.field,
        [[phi_a.entry(0, j * res.q) for j in range(n_a)]]
        + [[spec.field.zero] * n_a for _ in range(res.q - 1)],
    )
    phi = _lambda_linear(res, res.cover(0), images)
    for i in range(1, deg_b + 1):
        rhs_full = phi @ res.boundary(deg_a + i)
        n_src = len(res.gens(deg_a + i))
        gen_cols = [j * res.q for j in range(n_src)]
        rhs = rhs_full.columns(gen_cols)
        sol = res.boundary(i).solve(rhs)
        if sol is None:
            raise RankvarError("chain lift failed; resolution is not exact")
        phi = _lambda_linear(res, res.cover(i), sol)
    # phi is now the lifted chain map P_(deg_a+deg_b) -> P_(deg_b)
    return phi_b @ phi


def monomial_cocycle(spec, exps):
    """Cocycle P_D -> k of the monomial prod y_i^(exps[i]), cached."""
    key = (_res_key(spec), tuple(exps))
    with _RES_LOCK:
        if key in _COCYCLES:
            return _COCYCLES[key]
    res = trivial_resolution(spec)
    g = generator_degree(spec.p)
    order = [i for i in range(spec.r) for _ in range(exps[i])]
    if not order:
        raise ZeroClass("constant classes have no associated map")
    phi = _generator_cocycle(res, order[0])
    deg = g
    for i in order[1:]:
        phi = _cocycle_product(res, _generator_cocycle(res, i), g, phi, deg)
        deg += g
    with _RES_LOCK:
        _COCYCLES[key] = phi
    return phi


# -- cohomology classes --------------------------------------------------


class CohClass:
    """Homogeneous element of the reduced cohomology ring K[y1..yr]."""

    __slots__ = ("spec", "poly")

    def __init__(self, spec, poly):
        if poly and not poly.is_homogeneous():
            raise NonHomogeneous(f"{poly} is not homogeneous")
        self.spec = spec
        self.poly = poly

    @property
    def degree(self):
        """Cohomological degree in the reduced grading."""
        if not self.poly:
            return 0
        return self.poly.total_degree() * generator_degree(self.spec.p)

    def is_zero(self):
        return not self.poly

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"<CohClass {self.poly} deg {self.degree}>"


def y_ring(spec):
    return PolyRing(spec.field, tuple(f"y{i + 1}" for i in range(spec.r)))


def parse_coh_class(spec, text):
    ring = y_ring(spec)
    symbols = {name: ring.gen(i) for i, name in enumerate(ring.names)}
    poly = parse_expression(text, symbols, ring.from_int)
    return CohClass(spec, poly)


def coh_class_from_poly(spec, poly):
    """CohClass from an MPoly in y1..yr (possibly over another ring copy)."""
    ring = y_ring(spec)
    out = ring.zero
    for e, c in poly.terms.items():
        out = out + ring.term(e, c)
    return CohClass(spec, out)


def _base_spec(spec):
    """The finite-field spec underlying a possibly rational-function spec."""
    if isinstance(spec.field, RatFuncField):
        return spec.with_field(spec.field.base)
    return spec


def cohomology_cocycle(cls):
    """The cocycle P_D -> K of a homogeneous class, as a 1-row matrix.

    Monomial cocycles are computed over the finite base field and
    combined with the (possibly rational-function) coefficients.
    """
    spec = cls.spec
    if cls.is_zero():
        raise ZeroClass("zero class")
    base = _base_spec(spec)
    deg = cls.poly.total_degree()
    acc = None
    for e, c in cls.poly.terms.items():
        phi = monomial_cocycle(base, e)
        if spec.field != base.field:
            emb = base.field.embedding_into(spec.field)
            phi = phi.map_entries(emb, spec.field)
        term = phi.scale(c)
        acc = term if acc is None else acc + term
    return acc


def class_to_map(cls):
    """Matrix of the class as a map Omega^D k -> k (zero class allowed)."""
    spec = cls.spec
    base = _base_spec(spec)
    res = trivial_resolution(base)
    if cls.is_zero():
        raise ZeroClass("zero class has no degree; use the zero matrix directly")
    d = cls.degree
    phi = cohomology_cocycle(cls)
    _, pivots = res.omega_basis(d)
    # generator preimages of the Omega^D basis are the pivot columns
    return phi.columns(pivots)


def omega_k_module(spec, d):
    """Omega^d k over spec's field (computed over the base, then extended)."""
    base = _base_spec(spec)
    res = trivial_resolution(base)
    omega = res.omega_module(d)
    if spec.field != base.field:
        omega = scalar_extension(omega, spec.field)
    if omega.spec.flavor != spec.flavor:
        omega = LambdaModule(
            spec, omega.actions, dim=omega.dim, validate=False
        )
    return omega


def carlson_module(cls):
    """L_zeta = ker(Omega^D k -> k) with its induced actions."""
    if cls.is_zero():
        raise ZeroClass("Carlson module of the zero class")
    spec = cls.spec
    amap = class_to_map(cls)
    omega = omega_k_module(spec, cls.degree)
    kernel = amap.kernel_basis()
    return submodule(omega, kernel)


def koszul_cone(cls):
    """k // zeta: the mapping cone of the class, as the pushout
    (P_(D-1) + k) / graph(x -> (incl x, -zeta(x)))."""
    if cls.is_zero():
        raise ZeroClass("Koszul cone of the zero class")
    spec = cls.spec
    base = _base_spec(spec)
    res = trivial_resolution(base)
    d = cls.degree
    basis, _ = res.omega_basis(d)
    if spec.field != base.field:
        emb = base.field.embedding_into(spec.field)
        basis = basis.map_entries(emb, spec.field)
    amap = class_to_map(cls)
    cover = res.cover(d - 1)
    if spec.field != base.field or cover.spec.flavor != spec.flavor:
        cover = LambdaModule(
            spec,
            [
                z.map_entries(base.field.embedding_into(spec.field), spec.field)
                if spec.field != base.field
                else z
                for z in cover.actions
            ],
            dim=cover.dim,
            validate=False,
        )
    ambient = direct_sum(cover, trivial_module(spec))
    graph = basis.vstack(-amap)
    cone, _ = quotient_module(ambient, graph)
    return cone


def koszul_object(m, classes):
    """M // (a_1..a_n) = M (x) cone(a_1) (x) ... (x) cone(a_n)."""
    out = m
    for cls in classes:
        out = tensor_product(out, koszul_cone(cls))
    return out

"""Finite-dimensional modules over Lambda_K(r, p) = K[z1..zr]/(z^p).

A module is r commuting matrices Z_i with Z_i^p = 0 over a coefficient
field of characteristic p.  Two Hopf structures are supported and only
affect tensor/Hom constructions:

  * "primitive": the generators are primitive, so z acts on a tensor
    product as z (x) 1 + 1 (x) z,
  * "grouplike": z = g - 1 for a grouplike g, so g acts diagonally and
    z acts as z (x) 1 + 1 (x) z + z (x) z.
"""

import itertools
import json

from .errors import (
    IncompatibleFields,
    InvariantViolation,
    ParseError,
    SpecMismatch,
)
from .fields import _is_prime, field_from_json, field_to_json
from .linalg import Matrix

FLAVORS = ("grouplike", "primitive")


class AlgebraSpec:
    """Shape of the algebra: characteristic, rank, field, Hopf flavor."""

    __slots__ = ("p", "r", "field", "flavor")

    def __init__(self, p, r, field, flavor="grouplike"):
        if not _is_prime(p):
            raise InvariantViolation(f"{p} is not prime")
        if r < 1:
            raise InvariantViolation("rank must be at least 1")
        if field.characteristic != p:
            raise InvariantViolation(
                f"field characteristic {field.characteristic} != p = {p}"
            )
        if flavor not in FLAVORS:
            raise InvariantViolation(f"unknown Hopf flavor {flavor!r}")
        self.p = p
        self.r = r
        self.field = field
        self.flavor = flavor

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraSpec)
            and self.p == other.p
            and self.r == other.r
            and self.field == other.field
            and self.flavor == other.flavor
        )

    def __hash__(self):
        return hash((self.p, self.r, self.field, self.flavor))

    def __repr__(self):
        return f"AlgebraSpec(p={self.p}, r={self.r}, {self.field!r}, {self.flavor})"

    def with_field(self, field):
        return AlgebraSpec(self.p, self.r, field, self.flavor)

    def with_flavor(self, flavor):
        return AlgebraSpec(self.p, self.r, self.field, flavor)


class LambdaModule:
    """dim-dimensional module given by the action matrices of z1..zr."""

    __slots__ = ("spec", "dim", "actions", "_res")

    def __init__(self, spec, actions, dim=None, validate=True):
        self._res = None
        actions = list(actions)
        if len(actions) != spec.r:
            raise InvariantViolation(
                f"expected {spec.r} action matrices, got {len(actions)}"
            )
        if dim is None:
            dim = actions[0].nrows if actions else 0
        for z in actions:
            if z.nrows != dim or z.ncols != dim:
                raise InvariantViolation("action matrix shape mismatch")
            if z.field != spec.field:
                raise InvariantViolation("action matrix over the wrong field")
        if validate:
            _validate_actions(spec, actions)
        self.spec = spec
        self.dim = dim
        self.actions = actions

    def __repr__(self):
        return f"<LambdaModule dim={self.dim} over {self.spec!r}>"

    def action_of(self, i):
        return self.actions[i]

    def word(self, exps):
        """Action of the monomial z1^e1 ... zr^er."""
        m = None
        for z, e in zip(self.actions, exps):
            if e:
                zp = z.mat_pow(e)
                m = zp if m is None else m @ zp
        if m is None:
            return Matrix.identity(self.spec.field, self.dim)
        return m

    def radical_matrix(self):
        """Horizontal stack [Z1 | ... | Zr] whose column span is rad M."""
        acc = self.actions[0]
        for z in self.actions[1:]:
            acc = acc.hstack(z)
        return acc

    def top_dim(self):
        """dim of M / rad M."""
        return self.dim - self.radical_matrix().rank()


def _validate_actions(spec, actions):
    for i in range(spec.r):
        for j in range(i + 1, spec.r):
            if actions[i] @ actions[j] != actions[j] @ actions[i]:
                raise InvariantViolation(
                    f"actions {i + 1} and {j + 1} do not commute"
                )
    for i, z in enumerate(actions):
        if not z.mat_pow(spec.p).is_zero():
            raise InvariantViolation(
                f"action {i + 1} is not nilpotent of order {spec.p}"
            )


def monomial_basis(p, r):
    """Exponent tuples of the monomial basis of Lambda, lexicographic."""
    return list(itertools.product(range(p), repeat=r))


def free_module(spec, n=1):
    """The free module Lambda^n in the monomial basis."""
    p, r, field = spec.p, spec.r, spec.field
    basis = monomial_basis(p, r)
    index = {e: k for k, e in enumerate(basis)}
    d = len(basis)
    actions = []
    for i in range(r):
        block = Matrix.zeros(field, d, d).to_rows()
        for e, k in index.items():
            if e[i] + 1 < p:
                up = e[:i] + (e[i] + 1,) + e[i + 1 :]
                block[index[up]][k] = field.one
        z_block = Matrix.from_rows(field, block)
        z = z_block
        full = Matrix.zeros(field, 0, 0)
        for _ in range(n):
            full = _block_diag(full, z)
        actions.append(full)
    return LambdaModule(spec, actions, dim=d * n, validate=False)


def trivial_module(spec):
    z = Matrix.zeros(spec.field, 1, 1)
    return LambdaModule(spec, [z] * spec.r, dim=1, validate=False)


def zero_module(spec):
    z = Matrix.zeros(spec.field, 0, 0)
    return LambdaModule(spec, [z] * spec.r, dim=0, validate=False)


def _block_diag(a, b):
    field = b.field
    top = a.hstack(Matrix.zeros(field, a.nrows, b.ncols))
    bot = Matrix.zeros(field, b.nrows, a.ncols).hstack(b)
    return top.vstack(bot)


def _check_specs(m, n):
    if m.spec != n.spec:
        raise SpecMismatch(f"{m.spec!r} != {n.spec!r}")


def tensor_product(m, n):
    """M (x) N with the diagonal action of the chosen Hopf flavor."""
    _check_specs(m, n)
    spec = m.spec
    im = Matrix.identity(spec.field, m.dim)
    in_ = Matrix.identity(spec.field, n.dim)
    actions = []
    for zm, zn in zip(m.actions, n.actions):
        z = zm.kron(in_) + im.kron(zn)
        if spec.flavor == "grouplike":
            z = z + zm.kron(zn)
        actions.append(z)
    return LambdaModule(spec, actions, dim=m.dim * n.dim, validate=False)


def _group_inverse(z, p):
    """(1 + z)^(-1) = sum_{j<p} (-z)^j for z nilpotent of order p."""
    field = z.field
    acc = Matrix.identity(field, z.nrows)
    term = Matrix.identity(field, z.nrows)
    for _ in range(1, p):
        term = -(term @ z)
        acc = acc + term
    return acc


def hom_module(m, n):
    """Hom_K(M, N) with the action twisted by the antipode.

    Homomorphism space is coordinatized column-major: f corresponds to
    vec(F) for the n.dim x m.dim matrix F, and A F B has coordinates
    kron(B^T, A) vec(F).
    """
    _check_specs(m, n)
    spec = m.spec
    im = Matrix.identity(spec.field, m.dim)
    in_ = Matrix.identity(spec.field, n.dim)
    actions = []
    for zm, zn in zip(m.actions, n.actions):
        if spec.flavor == "primitive":
            # u.f = u_N f - f u_M
            z = im.kron(zn) - zm.transpose().kron(in_)
        else:
            # g.f = g_N f g_M^{-1}; z acts as that minus the identity
            gm_inv = _group_inverse(zm, spec.p)
            gn = Matrix.identity(spec.field, n.dim) + zn
            z = gm_inv.transpose().kron(gn) - im.kron(in_)
        actions.append(z)
    return LambdaModule(spec, actions, dim=m.dim * n.dim, validate=False)


def dual_module(m):
    return hom_module(m, trivial_module(m.spec))


def direct_sum(m, n):
    _check_specs(m, n)
    actions = [_block_diag(a, b) for a, b in zip(m.actions, n.actions)]
    return LambdaModule(m.spec, actions, dim=m.dim + n.dim, validate=False)


def scalar_extension(m, new_field):
    """Reinterpret the action matrices over a larger field."""
    old = m.spec.field
    if new_field == old:
        return m
    emb = _embedding(old, new_field)
    spec = m.spec.with_field(new_field)
    actions = [z.map_entries(emb, new_field) for z in m.actions]
    return LambdaModule(spec, actions, dim=m.dim, validate=False)


def _embedding(old, new):
    from .fields import FiniteField

    if isinstance(old, FiniteField):
        return old.embedding_into(new)
    raise IncompatibleFields(f"cannot extend scalars from {old!r}")


def projective_cover(m):
    """(P, surjection P -> M) with P free on a basis of M / rad M."""
    spec = m.spec
    field = spec.field
    rad = m.radical_matrix()
    aug = rad.hstack(Matrix.identity(field, m.dim))
    pivots = aug.column_space_pivots()
    gens = [p - rad.ncols for p in pivots if p >= rad.ncols]
    cover = free_module(spec, len(gens))
    basis = monomial_basis(spec.p, spec.r)
    ident = Matrix.identity(field, m.dim)
    if not gens:
        return cover, Matrix.zeros(field, m.dim, 0)
    # build monomial images on the generator slab by one action at a time
    gen_vecs = ident.columns(gens)
    word_images = {}
    for e in sorted(basis, key=sum):
        if not any(e):
            word_images[e] = gen_vecs
            continue
        i = next(j for j, k in enumerate(e) if k)
        prev = e[:i] + (e[i] - 1,) + e[i + 1 :]
        word_images[e] = m.actions[i] @ word_images[prev]
    cols = []
    for k in range(len(gens)):
        for e in basis:
            cols.append(word_images[e].columns([k]))
    surj = cols[0]
    for c in cols[1:]:
        surj = surj.hstack(c)
    return cover, surj


def is_projective(m):
    """Projective iff the projective cover is an isomorphism."""
    if m.dim == 0:
        return True
    cover, surj = projective_cover(m)
    return cover.dim == m.dim and surj.rank() == m.dim


def submodule(m, basis):
    """Module structure on the column span of `basis` (must be closed
    under the action and have independent columns)."""
    actions = []
    for z in m.actions:
        induced = basis.solve(z @ basis)
        if induced is None:
            raise InvariantViolation("subspace is not closed under the action")
        actions.append(induced)
    return LambdaModule(m.spec, actions, dim=basis.ncols, validate=False)


def quotient_module(m, basis):
    """Quotient of M by the submodule spanned by the columns of `basis`."""
    field = m.spec.field
    aug = basis.hstack(Matrix.identity(field, m.dim))
    pivots = aug.column_space_pivots()
    comp = [p - basis.ncols for p in pivots if p >= basis.ncols]
    t = basis.hstack(Matrix.identity(field, m.dim).columns(comp))
    k = basis.ncols
    actions = []
    for z in m.actions:
        coords = t.solve(z @ t.columns(range(k, t.ncols)))
        if coords is None:
            raise InvariantViolation("quotient basis failure")
        actions.append(coords.submatrix(range(k, coords.nrows), range(coords.ncols)))
    proj = LambdaModule(m.spec, actions, dim=m.dim - k, validate=False)
    return proj, comp


# -- serialization -----------------------------------------------------


def module_to_json(m):
    actions = []
    for z in m.actions:
        actions.append([str(v) for row in z.to_rows() for v in row])
    return {
        "p": m.spec.p,
        "r": m.spec.r,
        "field": field_to_json(m.spec.field),
        "flavor": m.spec.flavor,
        "dim": m.dim,
        "actions": actions,
    }


def module_from_json(data):
    try:
        p = data["p"]
        r = data["r"]
        field = field_from_json(data["field"])
        flavor = data.get("flavor", "grouplike")
        dim = data["dim"]
        raw = data["actions"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad module descriptor: {exc}") from None
    spec = AlgebraSpec(p, r, field, flavor)
    if len(raw) != r:
        raise ParseError(f"expected {r} action matrices, got {len(raw)}")
    actions = []
    for flat in raw:
        if len(flat) != dim * dim:
            raise ParseError(
                f"action matrix needs {dim * dim} entries, got {len(flat)}"
            )
        vals = [field.parse(s) for s in flat]
        rows = [vals[i * dim : (i + 1) * dim] for i in range(dim)]
        actions.append(
            Matrix.from_rows(field, rows) if dim else Matrix.zeros(field, 0, 0)
        )
    # report the first violated invariant precisely
    for i in range(r):
        for j in range(i + 1, r):
            if actions[i] @ actions[j] != actions[j] @ actions[i]:
                raise InvariantViolation(
                    f"actions ({i + 1},{j + 1}) do not commute"
                )
    for i, z in enumerate(actions):
        if not z.mat_pow(p).is_zero():
            raise InvariantViolation(f"action {i + 1}: z^{p} != 0")
    return LambdaModule(spec, actions, dim=dim, validate=False)


def load_module(path):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None
    return module_from_json(data)


def save_module(m, path):
    with open(path, "w") as fh:
        json.dump(module_to_json(m), fh, indent=1)
        fh.write("\n")

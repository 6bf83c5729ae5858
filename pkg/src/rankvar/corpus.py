"""Deterministic random module corpus.

Modules are produced by rejection sampling of commuting strictly lower
triangular nilpotent tuples, then closed up under direct sums, tensor
products, syzygies, and Carlson modules of linear classes.  Everything
is driven by a seeded random.Random, so a (spec, seed, count) triple
always yields the same list.
"""

import random

from .errors import SearchExhausted
from .linalg import Matrix
from .modules import (
    AlgebraSpec,
    LambdaModule,
    direct_sum,
    free_module,
    tensor_product,
    trivial_module,
)
from .homological import carlson_module, parse_coh_class, syzygy


def _lower_positions(n):
    return [(i, j) for i in range(n) for j in range(i)]


def _from_coords(field, n, positions, coords):
    rows = [[field.zero] * n for _ in range(n)]
    for (i, j), c in zip(positions, coords):
        rows[i][j] = c
    return Matrix.from_rows(field, rows)


def _commutant_basis(field, zs, n, positions):
    """Kernel of X -> ([Z, X] for Z in zs) on strictly lower X."""
    if not zs:
        eye = []
        for k in range(len(positions)):
            coords = [field.zero] * len(positions)
            coords[k] = field.one
            eye.append(coords)
        return eye
    rows = []
    for k in range(len(positions)):
        coords = [field.zero] * len(positions)
        coords[k] = field.one
        x = _from_coords(field, n, positions, coords)
        col = []
        for z in zs:
            comm = z @ x - x @ z
            col.extend(comm.to_rows()[i][j] for i in range(n) for j in range(n))
        rows.append(col)
    # rows[k] is the image of the k-th basis vector; kernel of the transpose
    constraint = Matrix.from_rows(field, rows).transpose()
    ker = constraint.kernel_basis()
    return [[ker.entry(i, j) for i in range(ker.nrows)] for j in range(ker.ncols)]


def _nilpotent(z, p):
    return z.mat_pow(p).is_zero()


def random_module(spec, dim, rng, attempts=400):
    """Random commuting p-nilpotent tuple on a dim-dimensional space."""
    field = spec.field
    elems = list(field.elements())
    positions = _lower_positions(dim)
    for _ in range(attempts):
        coords = [rng.choice(elems) for _ in positions]
        z1 = _from_coords(field, dim, positions, coords)
        if not _nilpotent(z1, spec.p):
            continue
        zs = [z1]
        ok = True
        for _ in range(spec.r - 1):
            basis = _commutant_basis(field, zs, dim, positions)
            found = None
            for _ in range(40):
                acc = [field.zero] * len(positions)
                for vec in basis:
                    c = rng.choice(elems)
                    if c == field.zero:
                        continue
                    acc = [a + c * v for a, v in zip(acc, vec)]
                cand = _from_coords(field, dim, positions, acc)
                if _nilpotent(cand, spec.p):
                    found = cand
                    break
            if found is None:
                ok = False
                break
            zs.append(found)
        if ok:
            return LambdaModule(spec, zs)
    raise SearchExhausted(
        f"no commuting nilpotent tuple of dim {dim} after {attempts} tries"
    )


def _linear_class_strings(r, rng, count):
    out = []
    for _ in range(count):
        coeffs = [rng.randrange(2) for _ in range(r)]
        if not any(coeffs):
            coeffs[rng.randrange(r)] = 1
        out.append(" + ".join(f"y{i + 1}" for i, c in enumerate(coeffs) if c))
    return out


def build_corpus(spec, count, seed, max_dim=16):
    """Deterministic list of `count` modules over spec, dims <= max_dim."""
    rng = random.Random((seed, spec.p, spec.r, spec.flavor, max_dim).__repr__())
    mods = [trivial_module(spec)]
    if spec.p ** spec.r <= max_dim:
        mods.append(free_module(spec))
    base_dims = [3, 4, 5, 6]
    while len(mods) < count:
        kind = rng.randrange(6)
        if kind <= 1 or len(mods) < 6:
            m = random_module(spec, rng.choice(base_dims), rng)
        elif kind == 2:
            a, b = rng.choice(mods), rng.choice(mods)
            if a.dim + b.dim > max_dim:
                continue
            m = direct_sum(a, b)
        elif kind == 3:
            a, b = rng.choice(mods), rng.choice(mods)
            if a.dim * b.dim > max_dim:
                continue
            m = tensor_product(a, b)
        elif kind == 4:
            a = rng.choice([x for x in mods if x.dim <= 6])
            m = syzygy(a, 1)
            if m.dim == 0 or m.dim > max_dim:
                continue
        else:
            text = _linear_class_strings(spec.r, rng, 1)[0]
            m = carlson_module(parse_coh_class(spec, text))
            if m.dim > max_dim:
                continue
        if m.dim == 0 or m.dim > max_dim:
            continue
        mods.append(m)
    return mods[:count]


def corpus_for_params(field, p, r, flavor, count, seed, max_dim=16):
    spec = AlgebraSpec(p, r, field, flavor)
    return build_corpus(spec, count, seed, max_dim)

"""Exact dense linear algebra over any of the package's fields.

Three execution paths share the same Gaussian-elimination logic:
  * prime finite fields: numpy int64 arrays reduced mod p,
  * small extension fields (q <= 1024): numpy arrays of element codes
    combined through addition/multiplication lookup tables,
  * everything else (rational function fields): plain Python over
    field elements, with pivots chosen to keep entries small.

Matrices are immutable; operations return fresh objects.
"""

import itertools

import numpy as np

from .errors import FieldMismatch, RankvarError
from .fields import TABLE_LIMIT, FFElem, FiniteField, RatFuncField
from .poly import mpoly_gcd


def _is_table_field(field):
    return isinstance(field, FiniteField) and (field.d > 1 and field.q <= TABLE_LIMIT)


def _is_prime_field(field):
    return isinstance(field, FiniteField) and field.d == 1


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "_arr", "_rows")

    def __init__(self, field, nrows, ncols, arr=None, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self._arr = arr
        self._rows = rows

    # -- construction ------------------------------------------------

    @classmethod
    def from_rows(cls, field, rows):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise RankvarError("ragged rows")
        if isinstance(field, FiniteField):
            arr = np.zeros((nrows, ncols), dtype=np.int64)
            for i, r in enumerate(rows):
                for j, v in enumerate(r):
                    arr[i, j] = v.code
            return cls(field, nrows, ncols, arr=arr)
        return cls(field, nrows, ncols, rows=tuple(tuple(r) for r in rows))

    @classmethod
    def from_int_rows(cls, field, rows):
        return cls.from_rows(
            field, [[field.from_int(v) for v in r] for r in rows]
        )

    @classmethod
    def zeros(cls, field, nrows, ncols):
        if isinstance(field, FiniteField):
            return cls(field, nrows, ncols, arr=np.zeros((nrows, ncols), dtype=np.int64))
        z = field.zero
        return cls(field, nrows, ncols, rows=tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, field, n):
        if isinstance(field, FiniteField):
            return cls(field, n, n, arr=np.eye(n, dtype=np.int64))
        z, o = field.zero, field.one
        rows = tuple(
            tuple(o if i == j else z for j in range(n)) for i in range(n)
        )
        return cls(field, n, n, rows=rows)

    # -- access ------------------------------------------------------

    def entry(self, i, j):
        if self._arr is not None:
            return FFElem(self.field, int(self._arr[i, j]))
        return self._rows[i][j]

    def to_rows(self):
        if self._arr is not None:
            f = self.field
            return [[FFElem(f, int(v)) for v in row] for row in self._arr]
        return [list(r) for r in self._rows]

    def is_zero(self):
        if self._arr is not None:
            return not self._arr.any()
        return all(not v for row in self._rows for v in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (
            self.field != other.field
            or self.nrows != other.nrows
            or self.ncols != other.ncols
        ):
            return False
        if self._arr is not None and other._arr is not None:
            return bool(np.array_equal(self._arr, other._arr))
        return self.to_rows() == other.to_rows()

    def __hash__(self):
        if self._arr is not None:
            return hash((self.field, self.nrows, self.ncols, self._arr.tobytes()))
        return hash((self.field, self._rows))

    def __repr__(self):
        return f"<Matrix {self.nrows}x{self.ncols} over {self.field!r}>"

    def __str__(self):
        rows = self.to_rows()
        return "\n".join("[" + ", ".join(str(v) for v in r) + "]" for r in rows)

    def _check_field(self, other):
        if self.field != other.field:
            raise FieldMismatch("matrices over different fields")

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        self._check_field(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise RankvarError("shape mismatch in addition")
        f = self.field
        if self._arr is not None:
            if f.d == 1:
                return Matrix(f, self.nrows, self.ncols, arr=(self._arr + other._arr) % f.p)
            add, _, _, _ = f.tables()
            return Matrix(f, self.nrows, self.ncols, arr=add[self._arr, other._arr])
        rows = tuple(
            tuple(a + b for a, b in zip(r1, r2))
            for r1, r2 in zip(self._rows, other._rows)
        )
        return Matrix(f, self.nrows, self.ncols, rows=rows)

    def __neg__(self):
        f = self.field
        if self._arr is not None:
            if f.d == 1:
                return Matrix(f, self.nrows, self.ncols, arr=(-self._arr) % f.p)
            _, _, neg, _ = f.tables()
            return Matrix(f, self.nrows, self.ncols, arr=neg[self._arr])
        rows = tuple(tuple(-v for v in r) for r in self._rows)
        return Matrix(f, self.nrows, self.ncols, rows=rows)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        f = self.field
        if self._arr is not None:
            if f.d == 1:
                return Matrix(f, self.nrows, self.ncols, arr=(self._arr * c.code) % f.p)
            _, mul, _, _ = f.tables()
            return Matrix(f, self.nrows, self.ncols, arr=mul[c.code, self._arr])
        rows = tuple(tuple(c * v for v in r) for r in self._rows)
        return Matrix(f, self.nrows, self.ncols, rows=rows)

    def __matmul__(self, other):
        self._check_field(other)
        if self.ncols != other.nrows:
            raise RankvarError("shape mismatch in multiplication")
        f = self.field
        if self._arr is not None:
            if f.d == 1:
                prod = (self._arr @ other._arr) % f.p
                return Matrix(f, self.nrows, other.ncols, arr=prod)
            add, mul, _, _ = f.tables()
            acc = np.zeros((self.nrows, other.ncols), dtype=np.int64)
            for k in range(self.ncols):
                col = self._arr[:, k]
                if not col.any():
                    continue
                acc = add[acc, mul[col[:, None], other._arr[k, :][None, :]]]
            return Matrix(f, self.nrows, other.ncols, arr=acc)
        z = f.zero
        orows = other._rows
        out = []
        for r in self._rows:
            nz = [(k, v) for k, v in enumerate(r) if v]
            row = [z] * other.ncols
            for k, v in nz:
                orow = orows[k]
                for j, w in enumerate(orow):
                    if w:
                        row[j] = row[j] + v * w
            out.append(tuple(row))
        return Matrix(f, self.nrows, other.ncols, rows=tuple(out))

    def mat_pow(self, n):
        if self.nrows != self.ncols:
            raise RankvarError("power of a non-square matrix")
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base if n > 1 else base
            n >>= 1
        return result

    def transpose(self):
        f = self.field
        if self._arr is not None:
            return Matrix(f, self.ncols, self.nrows, arr=self._arr.T.copy())
        rows = tuple(zip(*self._rows)) if self._rows else ()
        return Matrix(f, self.ncols, self.nrows, rows=rows)

    def kron(self, other):
        self._check_field(other)
        f = self.field
        m, n = self.nrows * other.nrows, self.ncols * other.ncols
        if self._arr is not None:
            if f.d == 1:
                return Matrix(f, m, n, arr=np.kron(self._arr, other._arr) % f.p)
            _, mul, _, _ = f.tables()
            big = mul[
                self._arr[:, None, :, None],
                other._arr[None, :, None, :],
            ].reshape(m, n)
            return Matrix(f, m, n, arr=big)
        z = f.zero
        rows = []
        for r1 in self._rows:
            for r2 in other._rows:
                row = []
                for a in r1:
                    if a:
                        row.extend(a * b if b else z for b in r2)
                    else:
                        row.extend([z] * other.ncols)
                rows.append(tuple(row))
        return Matrix(f, m, n, rows=tuple(rows))

    def hstack(self, other):
        self._check_field(other)
        if self.nrows != other.nrows:
            raise RankvarError("row count mismatch in hstack")
        if self._arr is not None:
            return Matrix(
                self.field,
                self.nrows,
                self.ncols + other.ncols,
                arr=np.hstack([self._arr, other._arr]),
            )
        rows = tuple(r1 + r2 for r1, r2 in zip(self._rows, other._rows))
        return Matrix(self.field, self.nrows, self.ncols + other.ncols, rows=rows)

    def vstack(self, other):
        self._check_field(other)
        if self.ncols != other.ncols:
            raise RankvarError("column count mismatch in vstack")
        if self._arr is not None:
            return Matrix(
                self.field,
                self.nrows + other.nrows,
                self.ncols,
                arr=np.vstack([self._arr, other._arr]),
            )
        return Matrix(
            self.field,
            self.nrows + other.nrows,
            self.ncols,
            rows=self._rows + other._rows,
        )

    def submatrix(self, row_idx, col_idx):
        if self._arr is not None:
            arr = self._arr[np.ix_(row_idx, col_idx)] if row_idx and col_idx else np.zeros(
                (len(row_idx), len(col_idx)), dtype=np.int64
            )
            return Matrix(self.field, len(row_idx), len(col_idx), arr=arr)
        rows = tuple(
            tuple(self._rows[i][j] for j in col_idx) for i in row_idx
        )
        return Matrix(self.field, len(row_idx), len(col_idx), rows=rows)

    def columns(self, col_idx):
        return self.submatrix(range(self.nrows), list(col_idx))

    def map_entries(self, func, target_field):
        rows = [[func(v) for v in r] for r in self.to_rows()]
        if not rows:
            return Matrix.zeros(target_field, self.nrows, self.ncols)
        return Matrix.from_rows(target_field, rows)

    # -- elimination ---------------------------------------------------

    def _rref(self):
        """Reduced row echelon form; returns (rref matrix, pivot column list)."""
        f = self.field
        if self._arr is not None:
            if f.d == 1:
                arr, piv = _rref_prime(self._arr, f.p)
            else:
                arr, piv = _rref_table(self._arr, f.tables())
            return Matrix(f, self.nrows, self.ncols, arr=arr), piv
        rows, piv = _rref_generic(self.to_rows(), f)
        return Matrix(f, self.nrows, self.ncols, rows=tuple(tuple(r) for r in rows)), piv

    def rank(self):
        _, piv = self._rref()
        return len(piv)

    def kernel_basis(self):
        """Matrix whose columns form a basis of the right kernel."""
        rref, piv = self._rref()
        n = self.ncols
        free = [j for j in range(n) if j not in set(piv)]
        f = self.field
        cols = []
        rows_of = rref.to_rows()
        for j in free:
            vec = [f.zero] * n
            vec[j] = f.one
            for row_i, pcol in enumerate(piv):
                v = rows_of[row_i][j]
                if v:
                    vec[pcol] = -v
            cols.append(vec)
        if not cols:
            return Matrix.zeros(f, n, 0)
        return Matrix.from_rows(f, [list(r) for r in zip(*cols)])

    def solve(self, b):
        """Some x with self @ x = b (b a matrix of column vectors), or None."""
        self._check_field(b)
        if b.nrows != self.nrows:
            raise RankvarError("shape mismatch in solve")
        aug = self.hstack(b)
        rref, piv = aug._rref()
        n = self.ncols
        if any(p >= n for p in piv):
            return None
        f = self.field
        rows_of = rref.to_rows()
        x = [[f.zero] * b.ncols for _ in range(n)]
        for row_i, pcol in enumerate(piv):
            x[pcol] = rows_of[row_i][n:]
        return Matrix.from_rows(f, x) if n else Matrix.zeros(f, 0, b.ncols)

    def column_space_pivots(self):
        """Indices of a maximal independent set of columns."""
        _, piv = self._rref()
        return piv


def _rref_prime(arr, p):
    a = arr % p
    a = a.astype(np.int64, copy=True)
    m, n = a.shape
    piv = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        rows = np.nonzero(a[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            a[rows] = (a[rows] - np.outer(a[rows, c], a[r])) % p
        piv.append(c)
        r += 1
    return a, piv


def _rref_table(arr, tables):
    add, mul, neg, inv = tables
    a = arr.astype(np.int64, copy=True)
    m, n = a.shape
    piv = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = mul[int(inv[a[r, c]]), a[r]]
        rows = np.nonzero(a[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            factors = neg[a[rows, c]]
            a[rows] = add[a[rows], mul[factors[:, None], a[r][None, :]]]
        piv.append(c)
        r += 1
    return a, piv


def _entry_weight(v):
    # pivot preference: cheap entries first to limit coefficient growth
    num = getattr(v, "num", None)
    if num is None:
        return 1
    return len(num.terms) + len(v.den.terms)


def _rref_generic(rows, field):
    m = len(rows)
    n = len(rows[0]) if m else 0
    piv = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        best = None
        for i in range(r, m):
            v = rows[i][c]
            if v:
                w = _entry_weight(v)
                if best is None or w < best[0]:
                    best = (w, i)
                    if w <= 2:
                        break
        if best is None:
            continue
        i = best[1]
        if i != r:
            rows[r], rows[i] = rows[i], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [inv * v if v else v for v in rows[r]]
        for i in range(m):
            if i == r:
                continue
            v = rows[i][c]
            if v:
                prow = rows[r]
                rows[i] = [
                    a - v * b if b else a for a, b in zip(rows[i], prow)
                ]
        piv.append(c)
        r += 1
    return rows, piv


# -- exact rank over rational function fields ---------------------------
#
# The rank of a matrix over k(t1..tn) equals the largest size of a
# nonvanishing minor; after clearing denominators row by row, every
# s-minor is a polynomial of degree at most s * (max entry degree) in
# each variable.  A nonzero polynomial with per-variable degrees d_j
# cannot vanish on a product grid with d_j + 1 points per variable, so
# evaluating on such a grid over a large enough finite field certifies
# the rank exactly.

_EVAL_FIELDS = {}


def _eval_field(base, min_size):
    """Smallest extension of `base` with at least min_size elements."""
    if base.q >= min_size:
        return base
    d = base.d
    while base.p**d < min_size:
        d += base.d
    key = (base.p, base.d, tuple(base.modulus or ()), d)
    if key not in _EVAL_FIELDS:
        _EVAL_FIELDS[key] = FiniteField(base.p, d)
    return _EVAL_FIELDS[key]


def _cleared_poly_rows(a):
    """Rows of `a` with denominators cleared (rank-preserving row scaling)."""
    ring = a.field.ring
    cleared = []
    for row in a.to_rows():
        lcm = ring.one
        for v in row:
            if v.den != ring.one:
                g = mpoly_gcd(lcm, v.den)
                lcm = lcm * (v.den / g)
        cleared.append([v.num * (lcm / v.den) for v in row])
    return cleared


def rank_ratfunc(a, cap=None):
    """Exact rank of a matrix over a rational function field.

    `cap`, if given, must be a mathematically valid upper bound on the
    rank; the grid scan stops as soon as it is attained.
    """
    if not isinstance(a.field, RatFuncField):
        raise RankvarError("rank_ratfunc needs a rational function field")
    m, n = a.nrows, a.ncols
    maxrank = min(m, n)
    if cap is not None:
        maxrank = min(maxrank, cap)
    if maxrank == 0:
        return 0
    base = a.field.base
    ring = a.field.ring
    nv = ring.nvars
    rows = _cleared_poly_rows(a)
    by_exp = {}
    for i, row in enumerate(rows):
        for j, poly in enumerate(row):
            for e, c in poly.terms.items():
                by_exp.setdefault(e, []).append((i, j, c))
    if not by_exp:
        return 0
    if nv == 0 or all(sum(e) == 0 for e in by_exp):
        vals = Matrix.zeros(base, m, n).to_rows()
        for e, triples in by_exp.items():
            for i, j, c in triples:
                vals[i][j] = c
        return Matrix.from_rows(base, vals).rank()
    degs = [max(e[j] for e in by_exp) for j in range(nv)]
    best = 0
    while True:
        target = best + 1
        if target > maxrank:
            return best
        sizes = [target * degs[j] + 1 for j in range(nv)]
        need = max(sizes)
        ev = _eval_field(base, need)
        if ev.d > 1 and ev.q > TABLE_LIMIT:
            # grid would not fit a table field: fall back to symbolic rank
            return a.rank()
        best = _grid_max_rank(by_exp, degs, sizes, base, ev, m, n, maxrank)
        if best < target or best >= maxrank:
            return best


def _grid_max_rank(by_exp, degs, sizes, base, ev, m, n, maxrank):
    emb = base.embedding_into(ev)
    embtab = np.array([emb(FFElem(base, c)).code for c in range(base.q)], dtype=np.int64)
    mats = {}
    for e, triples in by_exp.items():
        mat = np.zeros((m, n), dtype=np.int64)
        for i, j, c in triples:
            mat[i, j] = embtab[c.code]
        mats[e] = mat
    # powers of every grid value, per variable; larger codes first so
    # generic-looking points are tried early
    pows = []
    for j, size in enumerate(sizes):
        vals = [ev.elem(c) for c in range(ev.q - 1, ev.q - 1 - size, -1)]
        pows.append([[v**k for k in range(degs[j] + 1)] for v in vals])
    prime = ev.d == 1
    if prime:
        p = ev.p
    else:
        add, mul, _, _ = ev.tables()
    best = 0
    for idx in itertools.product(*(range(s) for s in sizes)):
        acc = np.zeros((m, n), dtype=np.int64)
        for e, mat in mats.items():
            s = ev.one
            for j, k in enumerate(e):
                if k:
                    s = s * pows[j][idx[j]][k]
            if not s:
                continue
            if prime:
                acc += s.code * mat
            else:
                acc = add[acc, mul[s.code, mat]]
        if prime:
            _, piv = _rref_prime(acc % p, p)
        else:
            _, piv = _rref_table(acc, ev.tables())
        if len(piv) > best:
            best = len(piv)
            if best >= maxrank:
                return best
    return best

"""Sparse multivariate polynomials over an exact coefficient field.

Polynomials are dicts mapping exponent tuples to nonzero coefficients.
The coefficient field only needs `zero`, `one`, `from_int` and elements
supporting + - * / with exact equality.  Monomial orders are realized as
sort keys on exponent tuples so `max(terms, key=order)` picks the
leading term.
"""

from .errors import DivisionByZero, RankvarError


def grevlex_key(exps):
    """Graded reverse lexicographic order key."""
    return (sum(exps),) + tuple(-e for e in reversed(exps))


def grlex_key(exps):
    """Graded lexicographic order key."""
    return (sum(exps),) + tuple(exps)


def lex_key(exps):
    return tuple(exps)


def block_elim_key(k):
    """Order eliminating the first k variables (grevlex in each block)."""

    def key(exps):
        return grevlex_key(exps[:k]) + grevlex_key(exps[k:])

    return key


class PolyRing:
    """Polynomial ring over a field in named variables."""

    def __init__(self, field, names):
        self.field = field
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.zero = MPoly(self, {})
        zexp = (0,) * self.nvars
        self.one = MPoly(self, {zexp: field.one})

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {self.names})"

    def gen(self, i):
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return MPoly(self, {exps: self.field.one})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def const(self, c):
        if not c:
            return self.zero
        return MPoly(self, {(0,) * self.nvars: c})

    def from_int(self, n):
        return self.const(self.field.from_int(n))

    def term(self, exps, coeff):
        if not coeff:
            return self.zero
        return MPoly(self, {tuple(exps): coeff})


class MPoly:
    """Immutable sparse polynomial.  Do not mutate `terms`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __neg__(self):
        return MPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MPoly(self.ring, out)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                if s is None:
                    if c:
                        out[e] = c
                else:
                    s = s + c
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        return MPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise RankvarError("negative polynomial power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            return exact_div(self, other)
        return self.scale(self.ring.field.one / other)

    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return self.ring.const(other)

    def scale(self, c):
        if isinstance(c, int):
            c = self.ring.field.from_int(c)
        if not c:
            return self.ring.zero
        return MPoly(self.ring, {e: co * c for e, co in self.terms.items()})

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i):
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading(self, key=grevlex_key):
        """Return (exponent tuple, coefficient) of the leading term."""
        if not self.terms:
            raise DivisionByZero("zero polynomial has no leading term")
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def monic(self, key=grevlex_key):
        if not self.terms:
            return self
        _, c = self.leading(key)
        return self.scale(self.ring.field.one / c)

    def coeffs_in(self, i):
        """View as a univariate polynomial in variable i.

        Returns {deg: MPoly coefficient} where the coefficients live in
        the same ring with exponent 0 in variable i.
        """
        out = {}
        for e, c in self.terms.items():
            d = e[i]
            rest = e[:i] + (0,) + e[i + 1 :]
            out.setdefault(d, {})[rest] = c
        return {d: MPoly(self.ring, t) for d, t in out.items()}

    def eval(self, values, target=None, embed=None):
        """Evaluate at a point; values live in `target` (default: own field)."""
        fld = target if target is not None else self.ring.field
        emb = embed if embed is not None else (lambda c: c)
        acc = fld.zero
        for e, c in self.terms.items():
            term = emb(c)
            for v, k in zip(values, e):
                if k:
                    term = term * v**k
            acc = acc + term
        return acc

    def subs(self, mapping):
        """Substitute polynomials for variables: {var index: MPoly}."""
        ring = self.ring
        acc = ring.zero
        for e, c in self.terms.items():
            rest = tuple(
                0 if i in mapping else k for i, k in enumerate(e)
            )
            term = MPoly(ring, {rest: c})
            for i, poly in mapping.items():
                if e[i]:
                    term = term * poly ** e[i]
            acc = acc + term
        return acc

    def map_coeffs(self, func, ring):
        """Rebuild in `ring` applying `func` to every coefficient."""
        out = {}
        for e, c in self.terms.items():
            v = func(c)
            if v:
                out[e] = v
        return MPoly(ring, out)

    def __str__(self):
        if not self.terms:
            return "0"
        field = self.ring.field
        parts = []
        for e in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.ring.names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            cs = str(c)
            if not factors:
                parts.append(cs if _is_simple(cs) else f"({cs})")
            elif c == field.one:
                parts.append("*".join(factors))
            else:
                head = cs if _is_simple(cs) else f"({cs})"
                parts.append(head + "*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"<MPoly {self}>"


def _is_simple(s):
    return not any(ch in s for ch in "+-*/ ") or (s.startswith("-") and _is_simple(s[1:]))


def _exp_divides(e1, e2):
    return all(a <= b for a, b in zip(e1, e2))


def poly_divmod(f, divisors, key=grevlex_key):
    """Multivariate division: f = sum q_i g_i + r with no term of r
    divisible by any leading term of the g_i."""
    ring = f.ring
    quots = [ring.zero] * len(divisors)
    rem = ring.zero
    leads = [g.leading(key) for g in divisors]
    work = f
    while work.terms:
        e = max(work.terms, key=key)
        c = work.terms[e]
        for i, (le, lc) in enumerate(leads):
            if _exp_divides(le, e):
                m = ring.term(tuple(a - b for a, b in zip(e, le)), c / lc)
                quots[i] = quots[i] + m
                work = work - m * divisors[i]
                break
        else:
            t = ring.term(e, c)
            rem = rem + t
            work = work - t
    return quots, rem


def exact_div(f, g):
    """Quotient f/g, raising if g does not divide f."""
    if not g:
        raise DivisionByZero("polynomial division by zero")
    (q,), r = poly_divmod(f, [g])
    if r:
        raise RankvarError("inexact polynomial division")
    return q


def _pseudo_rem(f, g, i):
    """Pseudo-remainder of f by g in variable i: lc(g)^(df-dg+1) f mod g."""
    ring = f.ring
    df = f.degree_in(i)
    dg = g.degree_in(i)
    lc_g = _lead_coeff_in(g, i)
    x = ring.gen(i)
    while f and f.degree_in(i) >= dg:
        d = f.degree_in(i)
        lc_f = _lead_coeff_in(f, i)
        f = f * lc_g - g * lc_f * x ** (d - dg)
        if f and f.degree_in(i) >= d:
            raise RankvarError("pseudo-division failed to reduce degree")
    return f


def _lead_coeff_in(f, i):
    d = f.degree_in(i)
    coeffs = f.coeffs_in(i)
    return coeffs[d]


def _content(f, i):
    """Gcd of the coefficients of f viewed in variable i."""
    c = f.ring.zero
    for part in f.coeffs_in(i).values():
        c = mpoly_gcd(c, part)
        if c.is_constant() and c:
            break
    return c


def mpoly_gcd(f, g):
    """Gcd, normalized with graded-lex-leading coefficient 1.

    Primitive pseudo-remainder sequence on the highest variable that
    occurs; contents recurse into fewer variables.
    """
    if not f:
        return g.monic(grlex_key)
    if not g:
        return f.monic(grlex_key)
    if f.is_constant() or g.is_constant():
        return f.ring.one
    main = max(
        i
        for i in range(f.ring.nvars)
        if f.degree_in(i) > 0 or g.degree_in(i) > 0
    )
    if f.degree_in(main) == 0 or g.degree_in(main) == 0:
        # one input misses the main variable: gcd divides both contents
        cf = _content(f, main) if f.degree_in(main) > 0 else f
        cg = _content(g, main) if g.degree_in(main) > 0 else g
        return mpoly_gcd(cf, cg)
    cf, cg = _content(f, main), _content(g, main)
    a = exact_div(f, cf)
    b = exact_div(g, cg)
    if a.degree_in(main) < b.degree_in(main):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b, main)
        a = b
        if r:
            r = exact_div(r, _content(r, main))
        b = r
    return (mpoly_gcd(cf, cg) * a).monic(grlex_key)

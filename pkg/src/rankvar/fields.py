"""Exact field arithmetic: F_p, F_q = F_p[x]/(f), and F_q(t1..tn).

Finite field elements are stored as a single integer code
sum_i c_i p^i over the coefficient vector of the residue polynomial;
for prime fields the code is the residue itself.  This makes elements
cheap to hash and lets linear algebra swap in numpy lookup tables.

Rational function elements are reduced eagerly (numerator/denominator
gcd 1, denominator monic in its graded-lex leading coefficient) so that
equality of canonical forms is equality of values.
"""

import numpy as np

from .errors import (
    DivisionByZero,
    FieldMismatch,
    IncompatibleFields,
    ParseError,
    RankvarError,
)
from .parsing import parse_expression
from .poly import MPoly, PolyRing, grlex_key, mpoly_gcd

MAX_FIELD_ORDER = 1 << 20
TABLE_LIMIT = 1024


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _decode(code, p, d):
    out = [0] * d
    for i in range(d):
        code, out[i] = divmod(code, p)
    return out


def _encode(coeffs, p):
    code = 0
    for c in reversed(coeffs):
        code = code * p + (c % p)
    return code


def _poly_mod(coeffs, modulus, p):
    """Reduce a coefficient list modulo the monic `modulus` over F_p."""
    coeffs = [c % p for c in coeffs]
    d = len(modulus) - 1
    for i in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[i]
        if c:
            for j in range(d + 1):
                coeffs[i - d + j] = (coeffs[i - d + j] - c * modulus[j]) % p
    while len(coeffs) < d:
        coeffs.append(0)
    return coeffs[:d]


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_divmod_univ(num, den, p):
    """Univariate division over F_p on coefficient lists (den != 0)."""
    num = [c % p for c in num]
    while num and num[-1] == 0:
        num.pop()
    dd = len(den) - 1
    while den[dd] == 0:
        dd -= 1
    inv = pow(den[dd], p - 2, p)
    quot = [0] * max(len(num) - dd, 0)
    while len(num) - 1 >= dd and num:
        k = len(num) - 1 - dd
        c = (num[-1] * inv) % p
        quot[k] = c
        for j in range(dd + 1):
            num[k + j] = (num[k + j] - c * den[j]) % p
        while num and num[-1] == 0:
            num.pop()
    return quot, num


class FFElem:
    """Element of a finite field, identified by its integer code."""

    __slots__ = ("field", "code")

    def __init__(self, field, code):
        self.field = field
        self.code = code

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if not isinstance(other, FFElem):
            return NotImplemented
        return self.code == other.code and (
            self.field is other.field or self.field == other.field
        )

    def __hash__(self):
        return hash((self.field, self.code))

    def _check(self, other):
        if not isinstance(other, FFElem):
            if isinstance(other, int):
                return self.field.from_int(other)
            raise FieldMismatch(f"cannot combine {other!r} with finite field element")
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatch("elements of different finite fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        f = self.field
        if f.d == 1:
            return FFElem(f, (self.code + other.code) % f.p)
        a = _decode(self.code, f.p, f.d)
        b = _decode(other.code, f.p, f.d)
        return FFElem(f, _encode([x + y for x, y in zip(a, b)], f.p))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.d == 1:
            return FFElem(f, (-self.code) % f.p)
        a = _decode(self.code, f.p, f.d)
        return FFElem(f, _encode([-x for x in a], f.p))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def __mul__(self, other):
        other = self._check(other)
        f = self.field
        if f.d == 1:
            return FFElem(f, (self.code * other.code) % f.p)
        a = _decode(self.code, f.p, f.d)
        b = _decode(other.code, f.p, f.d)
        prod = _poly_mod(_poly_mul(a, b, f.p), f.modulus, f.p)
        return FFElem(f, _encode(prod, f.p))

    __rmul__ = __mul__

    def inv(self):
        if self.code == 0:
            raise DivisionByZero("inverse of zero")
        f = self.field
        if f.d == 1:
            return FFElem(f, pow(self.code, f.p - 2, f.p))
        # extended Euclid on (element, modulus) over F_p
        r0, r1 = list(f.modulus), _decode(self.code, f.p, f.d)
        s0, s1 = [0], [1]
        while True:
            while r1 and r1[-1] == 0:
                r1.pop()
            if len(r1) == 1:
                c = pow(r1[0], f.p - 2, f.p)
                out = [(x * c) % f.p for x in s1]
                return FFElem(f, _encode(_poly_mod(out, f.modulus, f.p), f.p))
            q, r = _poly_divmod_univ(r0, r1, f.p)
            qs = _poly_mul(q, s1, f.p)
            ns = [0] * max(len(s0), len(qs))
            for i, x in enumerate(s0):
                ns[i] = x
            for i, x in enumerate(qs):
                ns[i] = (ns[i] - x) % f.p
            r0, r1, s0, s1 = r1, r, s1, ns

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self._check(other) * self.inv()

    def __pow__(self, n):
        f = self.field
        if n < 0:
            return self.inv() ** (-n)
        if f.d == 1:
            return FFElem(f, pow(self.code, n, f.p))
        result = f.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __str__(self):
        f = self.field
        if f.d == 1:
            return str(self.code)
        coeffs = _decode(self.code, f.p, f.d)
        parts = []
        for i in range(f.d - 1, -1, -1):
            c = coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f.var if c == 1 else f"{c}*{f.var}")
            else:
                parts.append(f"{f.var}^{i}" if c == 1 else f"{c}*{f.var}^{i}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"<FFElem {self} in {self.field}>"


class FiniteField:
    """F_p (d = 1) or F_p[x]/(modulus) with p^d <= 2^20."""

    def __init__(self, p, d=1, modulus=None, var="x"):
        if not _is_prime(p):
            raise RankvarError(f"{p} is not prime")
        if d < 1 or p**d > MAX_FIELD_ORDER:
            raise RankvarError(f"field order p^d = {p}^{d} out of range")
        self.p = p
        self.d = d
        self.q = p**d
        self.var = var
        if d == 1:
            self.modulus = None
        else:
            if modulus is None:
                modulus = self._find_irreducible()
            modulus = [c % p for c in modulus]
            if len(modulus) != d + 1 or modulus[-1] != 1:
                raise RankvarError("modulus must be monic of degree d")
            if not self._irreducible(modulus):
                raise RankvarError("modulus is reducible")
            self.modulus = modulus
        self.zero = FFElem(self, 0)
        self.one = FFElem(self, 1)
        self.characteristic = p
        self._tables = None
        self._embeddings = {}

    def _irreducible(self, modulus):
        # trial division by monic polynomials of degree <= d // 2
        p, d = self.p, self.d
        for deg in range(1, d // 2 + 1):
            for code in range(p**deg):
                div = _decode(code, p, deg) + [1]
                _, rem = _poly_divmod_univ(modulus, div, p)
                if not rem:
                    return False
        return True

    def _find_irreducible(self):
        p, d = self.p, self.d
        for code in range(p**d):
            cand = _decode(code, p, d) + [1]
            if self._irreducible(cand):
                return cand
        raise RankvarError("no irreducible polynomial found")

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.d == other.d
            and self.modulus == other.modulus
        )

    def __hash__(self):
        mod = tuple(self.modulus) if self.modulus else None
        return hash((self.p, self.d, mod))

    def __repr__(self):
        if self.d == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.d})"

    @property
    def is_finite(self):
        return True

    def elem(self, code):
        return FFElem(self, code % self.q if self.d == 1 else code)

    def from_int(self, n):
        return FFElem(self, n % self.p)

    def gen(self):
        if self.d == 1:
            raise RankvarError("prime field has no extension generator")
        return FFElem(self, self.p)

    def elements(self):
        return [FFElem(self, c) for c in range(self.q)]

    def parse(self, text):
        symbols = {} if self.d == 1 else {self.var: self.gen()}
        return parse_expression(str(text), symbols, self.from_int)

    def tables(self):
        """(ADD, MUL, NEG, INV) numpy int64 lookup tables over codes."""
        if self.q > TABLE_LIMIT:
            raise RankvarError("field too large for lookup tables")
        if self._tables is None:
            q = self.q
            els = self.elements()
            add = np.zeros((q, q), dtype=np.int64)
            mul = np.zeros((q, q), dtype=np.int64)
            neg = np.zeros(q, dtype=np.int64)
            invt = np.zeros(q, dtype=np.int64)
            for a in els:
                neg[a.code] = (-a).code
                if a.code:
                    invt[a.code] = a.inv().code
                for b in els:
                    if b.code < a.code:
                        continue
                    s = (a + b).code
                    m = (a * b).code
                    add[a.code, b.code] = add[b.code, a.code] = s
                    mul[a.code, b.code] = mul[b.code, a.code] = m
            self._tables = (add, mul, neg, invt)
        return self._tables

    def embedding_into(self, target):
        """Return a map FFElem -> element of `target` (finite or ratfunc)."""
        if target is self:
            return lambda a: a
        if isinstance(target, RatFuncField):
            inner = self.embedding_into(target.base)
            return lambda a: target.const(inner(a))
        if not isinstance(target, FiniteField) or target.p != self.p:
            raise IncompatibleFields(f"no embedding {self} -> {target}")
        if self.d == 1:
            return lambda a: FFElem(target, a.code % target.p)
        if target.d % self.d != 0:
            raise IncompatibleFields(f"no embedding {self} -> {target}")
        key = id(target)
        if key not in self._embeddings:
            root = self._find_root_in(target)
            powers = [target.one]
            for _ in range(self.d - 1):
                powers.append(powers[-1] * root)
            self._embeddings[key] = powers
        powers = self._embeddings[key]

        def emb(a):
            coeffs = _decode(a.code, self.p, self.d)
            acc = target.zero
            for c, w in zip(coeffs, powers):
                if c:
                    acc = acc + w * target.from_int(c)
            return acc

        return emb

    def _find_root_in(self, target):
        mod = self.modulus
        for cand in target.elements():
            acc = target.zero
            power = target.one
            for c in mod:
                if c:
                    acc = acc + power * target.from_int(c)
                power = power * cand
            if not acc:
                return cand
        raise IncompatibleFields(f"modulus of {self} has no root in {target}")


class RFElem:
    """Element of a rational function field, stored fully reduced."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den, reduced=False):
        self.field = field
        if not reduced:
            if not den:
                raise DivisionByZero("zero denominator")
            if not num:
                den = field.ring.one
            else:
                g = mpoly_gcd(num, den)
                if g != field.ring.one:
                    num = num / g
                    den = den / g
                _, lc = den.leading(grlex_key)
                if lc != field.base.one:
                    inv = lc.inv()
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.num = num
        self.den = den

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RFElem):
            return NotImplemented
        return (
            self.num == other.num
            and self.den == other.den
            and (self.field is other.field or self.field == other.field)
        )

    def __hash__(self):
        return hash((self.field, self.num, self.den))

    def _check(self, other):
        if not isinstance(other, RFElem):
            if isinstance(other, int):
                return self.field.from_int(other)
            if isinstance(other, FFElem) and other.field == self.field.base:
                return self.field.const(other)
            raise FieldMismatch(f"cannot combine {other!r} with rational function")
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatch("elements of different rational function fields")
        return other

    def is_polynomial(self):
        return self.den == self.field.ring.one

    def __add__(self, other):
        other = self._check(other)
        f = self.field
        if self.is_polynomial() and other.is_polynomial():
            return RFElem(f, self.num + other.num, f.ring.one, reduced=True)
        num = self.num * other.den + other.num * self.den
        return RFElem(f, num, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RFElem(self.field, -self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def __mul__(self, other):
        other = self._check(other)
        f = self.field
        if self.is_polynomial() and other.is_polynomial():
            return RFElem(f, self.num * other.num, f.ring.one, reduced=True)
        return RFElem(f, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return RFElem(self.field, self.den, self.num)

    def __truediv__(self, other):
        other = self._check(other)
        if not other.num:
            raise DivisionByZero("division by zero")
        return RFElem(self.field, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._check(other) * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        return RFElem(self.field, self.num**n, self.den**n, reduced=True)

    def __str__(self):
        if self.den == self.field.ring.one:
            return str(self.num)
        ns, ds = str(self.num), str(self.den)
        if " + " in ns or "/" in ns:
            ns = f"({ns})"
        if " + " in ds or "*" in ds or "/" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"<RFElem {self}>"


class RatFuncField:
    """Field of rational functions over a finite field."""

    def __init__(self, base, names):
        if not isinstance(base, FiniteField):
            raise RankvarError("rational function base must be a finite field")
        self.base = base
        self.names = tuple(names)
        self.ring = PolyRing(base, self.names)
        self.zero = RFElem(self, self.ring.zero, self.ring.one, reduced=True)
        self.one = RFElem(self, self.ring.one, self.ring.one, reduced=True)
        self.characteristic = base.p
        self.p = base.p

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, RatFuncField)
            and self.base == other.base
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.base, self.names))

    def __repr__(self):
        return f"{self.base!r}({', '.join(self.names)})"

    @property
    def is_finite(self):
        return False

    def const(self, c):
        return RFElem(self, self.ring.const(c), self.ring.one, reduced=True)

    def from_int(self, n):
        return self.const(self.base.from_int(n))

    def from_poly(self, num, den=None):
        if den is None:
            return RFElem(self, num, self.ring.one)
        return RFElem(self, num, den)

    def gen(self, i):
        return RFElem(self, self.ring.gen(i), self.ring.one, reduced=True)

    def gens(self):
        return [self.gen(i) for i in range(len(self.names))]

    def parse(self, text):
        symbols = {name: self.gen(i) for i, name in enumerate(self.names)}
        if self.base.d > 1:
            symbols[self.base.var] = self.const(self.base.gen())
        return parse_expression(str(text), symbols, self.from_int)


def field_to_json(field):
    if isinstance(field, FiniteField):
        if field.d == 1:
            return {"kind": "prime", "p": field.p}
        return {"kind": "ext", "p": field.p, "d": field.d, "modulus": field.modulus}
    if isinstance(field, RatFuncField):
        return {
            "kind": "ratfunc",
            "base": field_to_json(field.base),
            "vars": list(field.names),
        }
    raise RankvarError(f"unknown field type {type(field)}")


def field_from_json(data):
    try:
        kind = data["kind"]
        if kind == "prime":
            return FiniteField(data["p"])
        if kind == "ext":
            return FiniteField(data["p"], data["d"], data.get("modulus"))
        if kind == "ratfunc":
            return RatFuncField(field_from_json(data["base"]), data["vars"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad field descriptor: {exc}") from None
    raise ParseError(f"unknown field kind {kind!r}")


def embed(value, target):
    """Embed a field element into a compatible larger field."""
    if isinstance(value, FFElem):
        return value.field.embedding_into(target)(value)
    if isinstance(value, RFElem):
        if value.field is target or value.field == target:
            return value
        raise IncompatibleFields("cannot embed between rational function fields")
    raise IncompatibleFields(f"cannot embed {value!r}")

"""Sparse polynomials over F_p with standard grading.

A monomial is a tuple of exponents; a polynomial is a map monomial -> nonzero
coefficient in [0, p). Variables carry degree 1, so the degree of a monomial is
its exponent sum.
"""

import os
from functools import lru_cache
from itertools import combinations_with_replacement

DEFAULT_P = 32003

LT, EQ, GT = -1, 0, 1


def default_characteristic():
    return int(os.environ.get("TORSAM_FIELD", DEFAULT_P))


def is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class FieldSpec:
    __slots__ = ("p",)

    def __init__(self, p=None):
        p = default_characteristic() if p is None else int(p)
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        # products of two residues must fit comfortably in int64 sums
        if p >= 2**31:
            raise ValueError("characteristic too large for int64 elimination")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"FieldSpec({self.p})"

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)


# --- monomials -------------------------------------------------------------

def mdeg(m):
    return sum(m)


def mmul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mdivides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mquo(b, a):
    return tuple(y - x for x, y in zip(a, b))


def mlcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mgcd_is_one(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m):
    return tuple(m)


ORDER_KEYS = {"grevlex": grevlex_key, "lex": lex_key}


def monomial_compare(a, b, order="grevlex"):
    if len(a) != len(b):
        raise ValueError("monomials live in different variable counts")
    if order == "lex":
        ka, kb = lex_key(a), lex_key(b)
    else:
        ka, kb = grevlex_key(a), grevlex_key(b)
    return GT if ka > kb else LT if ka < kb else EQ


@lru_cache(maxsize=None)
def monomials_of_degree(n, d):
    """All monomials of degree d in n variables, descending in grevlex."""
    if d < 0:
        return ()
    if n == 0:
        return ((),) if d == 0 else ()
    out = []
    for c in combinations_with_replacement(range(n), d):
        e = [0] * n
        for v in c:
            e[v] += 1
        out.append(tuple(e))
    out.sort(key=grevlex_key, reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n, d):
    return {m: i for i, m in enumerate(monomials_of_degree(n, d))}


# --- polynomials -----------------------------------------------------------

class RingMismatch(ValueError):
    pass


class PolyRing:
    """The ambient polynomial ring F_p[x_1..x_n]."""

    def __init__(self, nvars, field=None, names=None):
        self.nvars = int(nvars)
        self.field = field if isinstance(field, FieldSpec) else FieldSpec(field)
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if len(names) != self.nvars:
            raise ValueError("one name per variable")
        self.names = tuple(names)

    @property
    def p(self):
        return self.field.p

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and other.nvars == self.nvars
                and other.field == self.field)

    def __hash__(self):
        return hash((self.nvars, self.field))

    def __repr__(self):
        return f"F_{self.p}[{','.join(self.names)}]"

    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        return Poly(self, {(0,) * self.nvars: c})

    def var(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, m, c=1):
        return Poly(self, {tuple(m): c})


class Poly:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "terms", "_h")

    def __init__(self, ring, terms):
        p = ring.p
        clean = {}
        for m, c in terms.items():
            c %= p
            if c:
                clean[tuple(m)] = c
        self.ring = ring
        self.terms = clean
        self._h = None

    # construction helpers
    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._h = None
        return obj

    def _check(self, other):
        if not isinstance(other, Poly):
            raise TypeError("expected a polynomial")
        if other.ring != self.ring:
            raise RingMismatch("polynomials from different rings")

    def _coerce(self, other):
        if isinstance(other, int):
            return self.ring.const(other)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.p
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = (t.get(m, 0) + c) % p
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Poly._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly._raw(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.ring.p
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = (t.get(m, 0) + c1 * c2) % p
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        return Poly._raw(self.ring, t)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c):
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Poly._raw(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def mul_monomial(self, mono, c=1):
        p = self.ring.p
        return Poly._raw(self.ring, {mmul(m, mono): v * c % p for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return isinstance(other, Poly) and other.ring == self.ring and other.terms == self.terms

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self.terms.items()))
        return self._h

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self):
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_components(self):
        comps = {}
        for m, c in self.terms.items():
            comps.setdefault(sum(m), {})[m] = c
        return {d: Poly._raw(self.ring, t) for d, t in sorted(comps.items())}

    def sorted_terms(self, order="grevlex"):
        key = ORDER_KEYS[order]
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def leading_term(self, order="grevlex"):
        if not self.terms:
            return None
        key = ORDER_KEYS[order]
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def monic(self):
        if not self.terms:
            return self
        _, c = self.leading_term()
        return self.scale(self.ring.field.inv(c))

    def __repr__(self):
        return format_poly(self)


def poly_add(a, b):
    a._check(b)
    return a + b


def poly_mul(a, b):
    a._check(b)
    return a * b


def initial_form(f, ring=None):
    """Lowest-degree homogeneous part; 0 for the zero polynomial."""
    if f.is_zero():
        return f
    comps = f.homogeneous_components()
    return comps[min(comps)]


def format_monomial(m, names):
    parts = []
    for e, nm in zip(m, names):
        if e == 1:
            parts.append(nm)
        elif e > 1:
            parts.append(f"{nm}^{e}")
    return "*".join(parts)


def format_poly(f, names=None):
    names = names or f.ring.names
    if f.is_zero():
        return "0"
    p = f.ring.p
    out = []
    for m, c in f.sorted_terms():
        neg = c > p // 2
        a = p - c if neg else c
        mono = format_monomial(m, names)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)

"""Exact arithmetic in F_q and its extensions F_{q^m}.

A FieldDesc fixes one finite field F_{q^m} (q = p^k) once and for all: the
algebraic closure of F_q is approximated by a single extension large enough
to contain every root of unity a computation will request.  Elements are
stored as discrete logs of a fixed generator, so multiplication is an index
sum and addition goes through a precomputed Zech table.  Everything is
deterministic: the modulus is the lexicographically least irreducible
polynomial and the generator is the least primitive element.
"""

from __future__ import annotations

import json
from functools import lru_cache


class FieldError(ValueError):
    pass


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mulmod(a, b, mod, p):
    # mod is monic, coefficients ascending
    n = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for i in range(len(res) - 1, n - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(n):
                res[i - n + j] = (res[i - n + j] - c * mod[j]) % p
    return _poly_trim(res[:n] if len(res) > n else res)


def _poly_powmod(a, e, mod, p):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _is_irreducible(mod, p):
    # x^(p^d) = x mod f exactly for d = deg f and for no proper divisor of it
    n = len(mod) - 1
    x = [0, 1]
    xq = _poly_powmod(x, p ** n, mod, p)
    if _poly_trim(xq) != _poly_trim(x):
        return False
    for d in range(1, n):
        if n % d == 0:
            xq = _poly_powmod(x, p ** d, mod, p)
            if _poly_trim(xq) == _poly_trim(x):
                return False
    return True


def _least_irreducible(p, n):
    # ascending-coefficient tuples in lexicographic order, monic degree n
    for code in range(p ** n):
        coeffs = []
        c = code
        for _ in range(n):
            coeffs.append(c % p)
            c //= p
        if coeffs[0] == 0:
            continue
        mod = coeffs + [1]
        if _is_irreducible(mod, p):
            return tuple(mod)
    raise FieldError("no irreducible polynomial found")


def _factorize(n):
    fs = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            fs[d] = fs.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        fs[n] = fs.get(n, 0) + 1
    return fs


def p_free_part(n, p):
    """Strip the p-part of n; in characteristic p only it carries roots of unity."""
    while n % p == 0:
        n //= p
    return n


class FieldDesc:
    """The session field F_{q^m}, q = p^k, with exp/log/Zech tables."""

    def __init__(self, p, k, m):
        self.p = p
        self.k = k
        self.m = m
        self.q = p ** k
        self.n = k * m
        self.order = p ** self.n
        self.modulus = _least_irreducible(p, self.n)
        self._build_tables()

    def _build_tables(self):
        p, n, order = self.p, self.n, self.order
        mod = list(self.modulus)

        def encode(poly):
            code = 0
            for i, c in enumerate(poly):
                code += c * p ** i
            return code

        group = order - 1
        fac = _factorize(group)
        # least primitive element in coefficient-lex order
        gen = None
        for code in range(1, order):
            poly = []
            c = code
            for _ in range(n):
                poly.append(c % p)
                c //= p
            poly = _poly_trim(poly)
            ok = all(
                _poly_trim(_poly_powmod(poly, group // f, mod, p)) != [1]
                for f in fac
            )
            if ok:
                gen = poly
                break
        if gen is None:
            raise FieldError("no generator found")
        self.generator = tuple(gen)

        exp = [0] * group          # exp[i] = code of g^i
        log = [0] * order          # log[code] = i, log[1-code] fixed below
        cur = [1]
        for i in range(group):
            code = encode(cur)
            exp[i] = code
            log[code] = i
            cur = _poly_mulmod(cur, gen, mod, p)
        self._exp = exp
        self._log = log

        # zech[i] = log(1 + g^i), or -1 when 1 + g^i = 0
        zech = [0] * group
        for i in range(group):
            code = exp[i]
            c0 = code % p
            code1 = code - c0 + (c0 + 1) % p
            zech[i] = log[code1] if code1 != 0 else -1
        self._zech = zech

    # -- element constructors ------------------------------------------------

    def zero(self):
        return FF(self, -1)

    def one(self):
        return FF(self, 0)

    def gen(self):
        return FF(self, 1 if self.order > 2 else 0)

    def from_int(self, a):
        """Image of the integer a under Z -> F_p."""
        a %= self.p
        if a == 0:
            return self.zero()
        if a == 1:
            return self.one()
        x = self.one()
        for _ in range(a - 1):
            x = x + self.one()
        return x

    def from_coeffs(self, coeffs):
        code = 0
        for i, c in enumerate(coeffs):
            code += (c % self.p) * self.p ** i
        if code == 0:
            return self.zero()
        return FF(self, self._log[code])

    def elements(self):
        yield self.zero()
        for i in range(self.order - 1):
            yield FF(self, i)

    def subfield_elements(self, d):
        """All elements of the subfield F_{p^d}; requires d | n."""
        if self.n % d != 0:
            raise FieldError("no such subfield in the session field")
        step = (self.order - 1) // (self.p ** d - 1)
        yield self.zero()
        for i in range(0, self.order - 1, step):
            yield FF(self, i)

    def zeta(self, order):
        """Canonical primitive root of unity of the p-free part of `order`."""
        order = p_free_part(order, self.p)
        if (self.order - 1) % order != 0:
            raise FieldError("root of unity of order %d not in session field" % order)
        if order == 1:
            return self.one()
        return FF(self, (self.order - 1) // order)

    def describe(self):
        return {"p": self.p, "k": self.k, "m": self.m, "modulus": list(self.modulus)}

    def to_json(self):
        return json.dumps(self.describe(), sort_keys=True)

    def __repr__(self):
        return "FieldDesc(p=%d, k=%d, m=%d)" % (self.p, self.k, self.m)

    def __eq__(self, other):
        return (
            isinstance(other, FieldDesc)
            and (self.p, self.k, self.m) == (other.p, other.k, other.m)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.m))


class FF:
    """Element of the session field, stored as a discrete log (-1 for zero)."""

    __slots__ = ("field", "i")

    def __init__(self, field, i):
        self.field = field
        self.i = i

    def is_zero(self):
        return self.i < 0

    def coeffs(self):
        """Coefficient vector over F_p, ascending, length k*m."""
        code = 0 if self.i < 0 else self.field._exp[self.i]
        out = []
        for _ in range(self.field.n):
            out.append(code % self.field.p)
            code //= self.field.p
        return tuple(out)

    def key(self):
        """Total order on field elements: coefficient-vector lex."""
        return self.coeffs()

    def __add__(self, other):
        f = self.field
        if self.i < 0:
            return other
        if other.i < 0:
            return self
        a, b = self.i, other.i
        if a > b:
            a, b = b, a
        z = f._zech[b - a]
        if z < 0:
            return FF(f, -1)
        return FF(f, (a + z) % (f.order - 1))

    def __neg__(self):
        f = self.field
        if self.i < 0 or f.p == 2:
            return self
        return FF(f, (self.i + (f.order - 1) // 2) % (f.order - 1))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        f = self.field
        if self.i < 0 or other.i < 0:
            return FF(f, -1)
        return FF(f, (self.i + other.i) % (f.order - 1))

    def __truediv__(self, other):
        f = self.field
        if other.i < 0:
            raise ZeroDivisionError("division by zero field element")
        if self.i < 0:
            return self
        return FF(f, (self.i - other.i) % (f.order - 1))

    def inverse(self):
        return self.field.one() / self

    def __pow__(self, e):
        f = self.field
        if self.i < 0:
            if e == 0:
                return f.one()
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return self
        return FF(f, (self.i * e) % (f.order - 1))

    def __eq__(self, other):
        return isinstance(other, FF) and self.field is other.field and self.i == other.i

    def __hash__(self):
        return hash((id(self.field), self.i))

    def __repr__(self):
        if self.i < 0:
            return "0"
        if self.i == 0:
            return "1"
        return "g^%d" % self.i

    def multiplicative_order(self):
        if self.i < 0:
            raise FieldError("zero has no multiplicative order")
        group = self.field.order - 1
        from math import gcd
        return group // gcd(group, self.i)


def make_field(p, k, orders, m_cap=24):
    """Smallest F_{q^m} whose unit group contains all requested root orders.

    The p-part of each order is discarded (mu_{p^j} is trivial in
    characteristic p).  Raises FieldError when no m below the cap works.
    """
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise FieldError("p must be prime")
    q = p ** k
    needed = sorted({p_free_part(n, p) for n in orders} | {1})
    for m in range(1, m_cap + 1):
        group = q ** m - 1
        if all(group % n == 0 for n in needed):
            return FieldDesc(p, k, m)
    raise FieldError("extension too large: no m <= %d fits orders %s" % (m_cap, orders))


@lru_cache(maxsize=None)
def cached_field(p, k, m):
    return FieldDesc(p, k, m)


def frobenius(a):
    """The q-power map; identity exactly on the subfield F_q."""
    return a ** a.field.q


def frobenius_inverse(a, times=1):
    """Unique q^(-times) root; Frobenius is bijective on a finite field."""
    f = a.field
    if a.i < 0:
        return a
    # q^(m-1) iterations of x -> x^q invert one Frobenius
    e = pow(f.q, (f.m - 1) * times, f.order - 1)
    return FF(f, (a.i * e) % (f.order - 1))


def nth_roots(a, n):
    """All x in the session field with x^n = a, sorted by coefficient lex.

    The p-part of n is handled by inverse Frobenius (p-th roots are unique in
    characteristic p); the p-free part becomes a linear congruence on
    discrete logs.  An empty list means a is not an n-th power.
    """
    f = a.field
    if a.is_zero():
        return [f.zero()]
    p = f.p
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    if e:
        # strip p-part: unique root, index multiplied by the inverse of p^e
        inv = pow(p ** e, -1, f.order - 1)
        a = FF(f, (a.i * inv) % (f.order - 1))
    group = f.order - 1
    from math import gcd
    g = gcd(n, group)
    if a.i % g != 0:
        return []
    # all solutions of n*x = log(a) mod group
    x0 = (a.i // g) * pow(n // g, -1, group // g) % (group // g)
    roots = [FF(f, (x0 + t * (group // g)) % group) for t in range(g)]
    roots.sort(key=lambda r: r.key())
    return roots

"""Truncated Puiseux series over the session field.

A series is a finite list of (rational exponent, nonzero coefficient) pairs
together with a precision bound: the value is known modulo O(pi^prec).
prec = None means the series is exact.  Valuations are normalized so that
v(pi) = 1.  All operations are pure and propagate precision pessimistically,
except q-th powers, which are exact termwise in characteristic p and
multiply the precision by q.
"""

from __future__ import annotations

from fractions import Fraction

from .field_tower import frobenius_inverse, nth_roots

Rat = Fraction


class PrecisionError(ArithmeticError):
    """Raised when an answer would need digits the operands do not carry."""


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Puiseux:
    __slots__ = ("field", "terms", "prec")

    def __init__(self, field, terms, prec=None):
        # terms: iterable of (Fraction, FF); normalized here
        merged = {}
        for e, c in terms:
            if c.is_zero():
                continue
            if e in merged:
                c = merged[e] + c
                if c.is_zero():
                    del merged[e]
                    continue
            merged[e] = c
        if prec is not None:
            merged = {e: c for e, c in merged.items() if e < prec}
        self.field = field
        self.terms = tuple(sorted(merged.items()))
        self.prec = prec

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, field, prec=None):
        return cls(field, (), prec)

    @classmethod
    def monomial(cls, field, coeff, exponent, prec=None):
        return cls(field, [(Rat(exponent), coeff)], prec)

    @classmethod
    def constant(cls, field, coeff, prec=None):
        return cls(field, [(Rat(0), coeff)], prec)

    @classmethod
    def pi(cls, field, exponent=1):
        return cls.monomial(field, field.one(), Rat(exponent))

    # -- structure ---------------------------------------------------------

    def is_zero_to_prec(self):
        return not self.terms

    def valuation(self):
        """Least exponent, or None for a series with no witnessed term."""
        return self.terms[0][0] if self.terms else None

    def valuation_or_raise(self):
        v = self.valuation()
        if v is None:
            raise PrecisionError("zero divisor to precision O(pi^%s)" % (self.prec,))
        return v

    def coeff(self, e):
        e = Rat(e)
        for ee, c in self.terms:
            if ee == e:
                return c
        return self.field.zero()

    def leading(self):
        if not self.terms:
            raise PrecisionError("no witnessed leading term")
        return self.terms[0]

    def truncate(self, prec):
        return Puiseux(self.field, self.terms, _min_prec(self.prec, prec))

    def sort_key(self, depth=4):
        """Deterministic ordering key: leading exponents and coefficients."""
        key = []
        for e, c in self.terms[:depth]:
            key.append((e, c.key()))
        return tuple(key)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        return Puiseux(
            self.field,
            self.terms + other.terms,
            _min_prec(self.prec, other.prec),
        )

    def __neg__(self):
        return Puiseux(self.field, [(e, -c) for e, c in self.terms], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        # prec(x*y) = min(v(x) + prec(y), v(y) + prec(x)); a factor that is
        # zero to its precision contributes prec in place of its valuation,
        # and an exact zero factor gives the exact zero product.
        if (not self.terms and self.prec is None) or (not other.terms and other.prec is None):
            return Puiseux.zero(self.field)
        cands = []
        if other.prec is not None:
            vx = self.valuation()
            cands.append((vx if vx is not None else self.prec) + other.prec)
        if self.prec is not None:
            vy = other.valuation()
            cands.append((vy if vy is not None else other.prec) + self.prec)
        prec = min(cands) if cands else None
        out = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if prec is not None and e >= prec:
                    continue
                c = c1 * c2
                if e in out:
                    c = out[e] + c
                    if c.is_zero():
                        del out[e]
                        continue
                out[e] = c
        return Puiseux(self.field, out.items(), prec)

    def scale(self, coeff, exponent=0):
        """Multiply by the exact monomial coeff * pi^exponent."""
        if coeff.is_zero():
            return Puiseux.zero(self.field)
        exponent = Rat(exponent)
        prec = None if self.prec is None else self.prec + exponent
        return Puiseux(
            self.field,
            [(e + exponent, c * coeff) for e, c in self.terms],
            prec,
        )

    def qpow(self, times=1):
        """x -> x^(q^times): exact termwise; precision scales by q^times."""
        q = self.field.q
        s = q ** times
        prec = None if self.prec is None else self.prec * s
        return Puiseux(
            self.field,
            [(e * s, c ** s) for e, c in self.terms],
            prec,
        )

    def qroot(self, times=1):
        """Unique q^times-th root (characteristic p): exact termwise."""
        q = self.field.q
        s = q ** times
        prec = None if self.prec is None else self.prec / s
        return Puiseux(
            self.field,
            [(e / s, frobenius_inverse(c, times)) for e, c in self.terms],
            prec,
        )

    def __pow__(self, n):
        """Integer power; p-power part taken termwise for sharper precision."""
        if n < 0:
            return self.inv() ** (-n)
        if n == 0:
            return Puiseux.constant(self.field, self.field.one())
        p = self.field.p
        e = 0
        while n % p == 0 and n > 1:
            n //= p
            e += 1
        base = self
        result = None
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if e:
            s = p ** e
            prec = None if result.prec is None else result.prec * s
            result = Puiseux(
                self.field,
                [(ee * s, c ** s) for ee, c in result.terms],
                prec,
            )
        return result

    def inv(self, rel_prec=None):
        """Geometric-series inverse.

        rel_prec bounds the relative precision of the result; it is required
        when the input is exact with more than one term (the expansion would
        not terminate).
        """
        v, lead = self.leading()
        rel = None if self.prec is None else self.prec - v
        rel = _min_prec(rel, rel_prec)
        head = Puiseux.monomial(self.field, lead.inverse(), -v)
        r = self.scale(lead.inverse(), -v) - Puiseux.constant(self.field, self.field.one())
        # r has positive valuation; sum (-r)^k while it matters
        if r.is_zero_to_prec():
            out = head
            if rel is not None:
                out = out.truncate(-v + rel)
            return out
        if rel is None:
            raise PrecisionError("inverse of an exact non-monomial needs rel_prec")
        vr = r.valuation()
        acc = Puiseux.constant(self.field, self.field.one(), rel)
        power = Puiseux.constant(self.field, self.field.one(), rel)
        k = 0
        while k * vr < rel:
            k += 1
            power = (power * r).truncate(rel)
            if k % 2:
                acc = acc - power
            else:
                acc = acc + power
            if power.is_zero_to_prec():
                break
        return acc * head

    def divide(self, other, rel_prec=None):
        return self * other.inv(rel_prec)

    # -- reductions ------------------------------------------------------------

    def residue(self):
        """Coefficient at exponent 0 for an integral series known past 0."""
        v = self.valuation()
        if v is not None and v < 0:
            raise PrecisionError("not integral: valuation %s < 0" % (v,))
        if self.prec is not None and self.prec <= 0:
            raise PrecisionError("insufficient precision for a residue")
        return self.coeff(0)

    def congruent(self, other, bound):
        """True iff v(self - other) > bound, the strict congruence mod bound+."""
        bound = Rat(bound)
        d = self - other
        if d.prec is not None and d.prec <= bound:
            raise PrecisionError(
                "cannot decide congruence mod %s+ at precision O(pi^%s)" % (bound, d.prec)
            )
        v = d.valuation()
        return v is None or v > bound

    # -- presentation -----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Puiseux)
            and self.field is other.field
            and self.terms == other.terms
            and self.prec == other.prec
        )

    def __hash__(self):
        return hash((id(self.field), self.terms, self.prec))

    def __str__(self):
        bits = []
        for e, c in self.terms:
            if e == 0:
                bits.append("%r" % c)
            else:
                bits.append("%r*pi^(%s)" % (c, e))
        if self.prec is not None:
            bits.append("O(pi^(%s))" % self.prec)
        return " + ".join(bits) if bits else "0"

    __repr__ = __str__

    def to_dict(self):
        return {
            "terms": [[str(e), list(c.coeffs())] for e, c in self.terms],
            "prec": None if self.prec is None else str(self.prec),
        }


def pz_root(x, n, rel_prec=None):
    """All n-th roots of x in the session Puiseux ring.

    The p-part of n is extracted termwise (unique in characteristic p); for
    the p-free part the leading coefficient takes every available field root
    and a Newton iteration lifts each choice.  Roots are returned sorted by
    their leading coefficients; an exact monomial input gives exact roots.
    """
    field = x.field
    p = field.p
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    if e:
        # termwise p-power root: c^(1/p^e) = c^(p^(n - e mod n)) on F_{p^n}
        s = p ** e
        prec = None if x.prec is None else Rat(x.prec, s)
        shift = (field.n - (e % field.n)) % field.n
        root_exp = pow(p, shift, field.order - 1)
        x = Puiseux(
            field,
            [(Rat(ee, s), c ** root_exp) for ee, c in x.terms],
            prec,
        )
    if n == 1:
        return [x]
    v, lead = x.leading()
    lead_roots = nth_roots(lead, n)
    if not lead_roots:
        raise PrecisionError(
            "enlarge field: leading coefficient has no %d-th root" % n
        )
    if len(x.terms) == 1 and x.prec is None:
        # exact monomial: exact roots
        return [Puiseux.monomial(field, r, v / n) for r in lead_roots]
    rel = None if x.prec is None else x.prec - v
    rel = _min_prec(rel, rel_prec)
    if rel is None:
        raise PrecisionError("root of an exact non-monomial needs rel_prec")
    roots = []
    for r in lead_roots:
        t = Puiseux.monomial(field, r, v / n, prec=v / n + rel)
        # Newton iteration for t^n = x; f'(t) = n t^(n-1) is a unit here
        n_ff = field.from_int(n)
        for _ in range(64):
            fval = (t ** n - x).truncate(v + rel)
            if fval.is_zero_to_prec():
                break
            deriv = t ** (n - 1)
            t = (t - fval.divide(deriv.scale(n_ff), rel)).truncate(v / n + rel)
        else:
            raise PrecisionError("root lift did not converge")
        roots.append(t)
    return roots

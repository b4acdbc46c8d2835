"""Newton polygons and root solving over the truncated Puiseux ring.

Roots are found by the classical polygon recursion: each lower-hull segment
of slope -lam contributes roots of valuation lam, whose leading coefficients
solve the segment's residue equation over the session field; substituting a
found digit and recursing yields the next digit.  The recursion refuses to
emit digits the coefficient precisions cannot guarantee and raises when a
residue equation has roots outside the session field.

Additive polynomials (F_q-linear plus an optional constant) get a kernel /
particular-solution interface on top of the same machinery; their residue
equations are solved by F_p-linear algebra instead of scanning when the
additive shape allows it.
"""

from __future__ import annotations

from math import comb

from .field_tower import FieldError, nth_roots
from .puiseux import PrecisionError, Puiseux, Rat

MAX_DEPTH = 400


class EnlargeFieldError(FieldError):
    """A residue equation has roots outside the session field."""


class PolyOverPz:
    """Polynomial with Puiseux coefficients, kept as a sparse degree map."""

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = {
            int(i): c for i, c in dict(coeffs).items()
            if c.terms or c.prec is not None
        }

    def degree(self):
        return max(self.coeffs) if self.coeffs else 0

    def __call__(self, x):
        out = Puiseux.zero(self.field)
        for i, a in self.coeffs.items():
            out = out + (a * x ** i if i else a)
        return out

    def newton_polygon(self):
        return newton_polygon(self)


class AdditivePoly:
    """Sum of a_i X^(q^i) plus an optional inhomogeneous constant."""

    def __init__(self, field, linear, constant=None):
        self.field = field
        self.linear = {int(i): c for i, c in dict(linear).items() if c.terms}
        self.constant = constant

    def __call__(self, x):
        out = Puiseux.zero(self.field)
        for i, a in self.linear.items():
            out = out + a * x.qpow(i)
        if self.constant is not None:
            out = out + self.constant
        return out

    def homogeneous(self):
        return AdditivePoly(self.field, self.linear)

    def to_poly(self):
        q = self.field.q
        coeffs = {q ** i: a for i, a in self.linear.items()}
        if self.constant is not None:
            coeffs[0] = self.constant
        return PolyOverPz(self.field, coeffs)


class NewtonPolygon:
    """Lower hull segments as (slope, horizontal length), slopes increasing."""

    def __init__(self, segments, order0=0):
        self.segments = list(segments)
        self.order0 = order0  # multiplicity of the root at the origin

    def root_valuations(self):
        """Multiset of finite root valuations: lam = -slope, repeated."""
        out = []
        for slope, length in self.segments:
            out.extend([-slope] * length)
        return sorted(out)

    def __repr__(self):
        return "NewtonPolygon(%r, order0=%d)" % (self.segments, self.order0)


def _witnessed_points(coeffs):
    pts, invisible = {}, {}
    for i, a in coeffs.items():
        v = a.valuation()
        if v is not None:
            pts[i] = v
        elif a.prec is not None:
            invisible[i] = a.prec
    return pts, invisible


def _lower_hull(points):
    pts = sorted(points.items())
    hull = []
    for i, v in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # pop while slopes fail to strictly increase
            if (y2 - y1) * (i - x2) >= (v - y2) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append((i, v))
    return hull


def _hull_height(verts, x):
    """Height of the hull above x, extrapolating the end slopes outward."""
    if x <= verts[0][0]:
        (x1, y1), (x2, y2) = verts[0], verts[1]
    elif x >= verts[-1][0]:
        (x1, y1), (x2, y2) = verts[-2], verts[-1]
    else:
        for (x1, y1), (x2, y2) in zip(verts, verts[1:]):
            if x1 <= x <= x2:
                break
    return y1 + Rat(y2 - y1, x2 - x1) * (x - x1)


def newton_polygon(poly):
    """Lower convex hull of (degree, valuation); refuses undecidable hulls."""
    pts, invisible = _witnessed_points(poly.coeffs)
    if len(pts) < 2:
        raise PrecisionError("refine precision: fewer than two witnessed coefficients")
    verts = _lower_hull(pts)
    for i, prec in invisible.items():
        if prec <= _hull_height(verts, i):
            raise PrecisionError(
                "refine precision: coefficient of degree %d undecidable" % i
            )
    segs = []
    for (x1, y1), (x2, y2) in zip(verts, verts[1:]):
        segs.append((Rat(y2 - y1, x2 - x1), x2 - x1))
    return NewtonPolygon(segs, order0=verts[0][0])


# -- residue equations over the session field --------------------------------


def _ff_dense_roots(field, coeffs):
    """Roots with multiplicity of a dense FF coefficient list, in-field only."""
    roots = []
    work = list(coeffs)
    while work and work[-1].is_zero():
        work.pop()
    for t in field.elements():
        while len(work) > 1:
            acc = work[-1]
            quot = [field.zero()] * (len(work) - 1)
            for i in range(len(work) - 2, -1, -1):
                quot[i] = acc
                acc = work[i] + acc * t
            if acc.is_zero():
                roots.append(t)
                work = quot
            else:
                break
        if len(work) <= 1:
            break
    return roots


def _p_root_ff(field, c):
    if c.is_zero():
        return c
    shift = (field.n - 1) % field.n
    return c ** pow(field.p, shift, field.order - 1)


def _additive_affine_solutions(field, sparse):
    """All t with sum_{e>0} c_e t^e = -c_0, exponents p-powers or 1."""
    p, n = field.p, field.n
    const = sparse.get(0, field.zero())
    lin = {e: c for e, c in sparse.items() if e != 0}
    cols = []
    for i in range(n):
        vec = [0] * n
        vec[i] = 1
        b = field.from_coeffs(vec)
        img = field.zero()
        for e, c in lin.items():
            img = img + c * b ** e
        cols.append(img.coeffs())
    mat = [[cols[j][i] % p for j in range(n)] for i in range(n)]
    rhs = [(-t) % p for t in const.coeffs()]
    aug = [row + [rhs[i]] for i, row in enumerate(mat)]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, n) if aug[i][c] % p), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] % p:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if aug[i][n] % p:
            return []
    free = [c for c in range(n) if c not in pivots]
    sols = []
    for code in range(p ** len(free)):
        x = [0] * n
        cc = code
        for f in free:
            x[f] = cc % p
            cc //= p
        for i, c in enumerate(pivots):
            x[c] = (aug[i][n] - sum(aug[i][j] * x[j] for j in free)) % p
        sols.append(field.from_coeffs(x))
    return sols


def _vp(e, p):
    v = 0
    while e % p == 0 and e:
        e //= p
        v += 1
    return v


def residue_roots(field, phi):
    """Nonzero in-field roots, with multiplicity, of a sparse FF polynomial.

    phi maps exponent -> coefficient and always has a nonzero constant term
    here (segment residue equations do).  Binomials are solved on discrete
    logs, additive shapes by F_p-linear algebra after stripping the exact
    p-power part, everything else by scanning the session field.
    """
    p = field.p
    phi = {e: c for e, c in phi.items() if not c.is_zero()}
    exps = sorted(phi)
    if not exps:
        return []
    pos = [e for e in exps if e > 0]

    # exact p-power part: phi = psi^(p^a) with exponents and coefficients rooted
    a = min(_vp(e, p) for e in pos)
    if a > 0:
        pa = p ** a
        psi = {}
        for e, c in phi.items():
            root = c
            for _ in range(a):
                root = _p_root_ff(field, root)
            psi[e // pa] = root
        inner = residue_roots(field, psi)
        out = []
        for t in inner:
            out.extend([t] * pa)
        # inner already multiplicity-expanded; repeat each entry pa times
        return sorted(out, key=lambda x: x.key())

    if len(exps) == 2 and exps[0] == 0:
        target = (-phi[0]) / phi[pos[0]]
        return nth_roots(target, pos[0])

    if all(e == 0 or _is_p_power(e, p) for e in exps):
        sols = _additive_affine_solutions(field, phi)
        sols.sort(key=lambda x: x.key())
        return [t for t in sols if not t.is_zero()]

    dense = [field.zero()] * (exps[-1] + 1)
    for e, c in phi.items():
        dense[e] = c
    rts = [t for t in _ff_dense_roots(field, dense) if not t.is_zero()]
    return sorted(rts, key=lambda x: x.key())


def _is_p_power(e, p):
    while e % p == 0:
        e //= p
    return e == 1


# -- polygon recursion ---------------------------------------------------------


def _shift_poly(field, coeffs, c):
    """Taylor shift: coefficients of f(c + Y) for an exact monomial c."""
    out = {}
    maxdeg = max(coeffs)
    cpow = {0: Puiseux.constant(field, field.one())}
    for d in range(1, maxdeg + 1):
        cpow[d] = cpow[d - 1] * c
    p = field.p
    for j in range(maxdeg + 1):
        acc = None
        for i, a in coeffs.items():
            if i < j:
                continue
            b = comb(i, j) % p
            if b == 0:
                continue
            term = a * cpow[i - j] if i > j else a
            if b != 1:
                term = term.scale(field.from_int(b))
            acc = term if acc is None else acc + term
        if acc is not None and (acc.terms or acc.prec is not None):
            out[j] = acc
    return out


def _segment_residue(coeffs, pts, i0, i1, lam):
    phi = {}
    base = pts[i0]
    for i in range(i0, i1 + 1):
        if i not in coeffs:
            continue
        a = coeffs[i]
        line = base - lam * (i - i0)
        v = a.valuation()
        if v is None:
            if a.prec is not None and a.prec <= line:
                raise PrecisionError("refine precision: residue row undecidable")
            continue
        if v == line:
            phi[i - i0] = a.coeff(v)
    return phi


def _rec(field, coeffs, acc, floor, target, out, depth, first_only, trace):
    if depth > MAX_DEPTH:
        raise PrecisionError("root recursion exceeded maximum depth")
    coeffs = {i: a for i, a in coeffs.items() if a.terms or a.prec is not None}
    if not coeffs:
        raise PrecisionError("refine precision: polynomial vanishes to precision")
    pts, invisible = _witnessed_points(coeffs)
    if not pts:
        raise PrecisionError("refine precision: no witnessed coefficient")

    if 0 not in pts:
        a0 = coeffs.get(0)
        n0 = min(pts)
        if any(0 < i < n0 for i in invisible):
            raise PrecisionError("refine precision: low-degree coefficients undecidable")
        if a0 is None:
            # Y^n0 divides exactly: the accumulated digits are an exact root
            copies = 1 if first_only else n0
            out.extend([acc] * copies)
            if first_only:
                return
            coeffs = {i - n0: a for i, a in coeffs.items() if i >= n0}
            if len(coeffs) < 2:
                return
            pts, invisible = _witnessed_points(coeffs)
        else:
            # constant term is zero to its precision: one hidden root near acc
            vis = min((Rat(a0.prec) - pts[i]) / i for i in pts if i > 0)
            if vis < target:
                raise PrecisionError(
                    "refine precision: root determined only mod O(pi^%s)" % (vis,)
                )
            if n0 > 1:
                raise PrecisionError("refine precision: cluster of hidden roots")
            out.append(acc.truncate(target))
            if first_only:
                return
            # no decidable segment may remain between floor and the horizon
            if len(pts) >= 2:
                sub = newton_polygon(PolyOverPz(field, {i: coeffs[i] for i in pts}))
                for slope, _length in sub.segments:
                    lam = -slope
                    if (floor is None or lam > floor) and lam < vis and lam < target:
                        raise PrecisionError(
                            "refine precision: hidden root mixed with visible segment"
                        )
            return

    if len(pts) < 2:
        return
    polygon = newton_polygon(PolyOverPz(field, coeffs))
    cursor = polygon.order0
    for slope, length in polygon.segments:
        lam = -slope
        i0 = cursor
        cursor += length
        if floor is not None and lam <= floor:
            continue
        if lam >= target:
            root = acc.truncate(target)
            out.extend([root] * (1 if first_only else length))
            if first_only:
                return
            continue
        phi = _segment_residue(coeffs, pts, i0, cursor, lam)
        rts = residue_roots(field, phi)
        if len(rts) < length:
            raise EnlargeFieldError(
                "enlarge field: residue equation of degree %d has only %d session roots"
                % (length, len(rts))
            )
        if trace is not None:
            trace.append(
                {
                    "depth": depth,
                    "valuation": str(lam),
                    "segment_length": length,
                    "residue_roots": [list(r.key()) for r in rts],
                }
            )
        seen = []
        for t0 in rts:
            if t0 in seen:
                continue
            seen.append(t0)
            c = Puiseux.monomial(field, t0, lam)
            shifted = _shift_poly(field, coeffs, c)
            _rec(field, shifted, acc + c, lam, target, out, depth + 1, first_only, trace)
            if first_only and out:
                return


def solve_poly(poly, target_prec, first_only=False, trace=None):
    """All roots of the polynomial in the session Puiseux ring.

    Roots are reported modulo O(pi^target_prec) (exact roots stay exact) and
    sorted by their leading digits, so runs are reproducible.
    """
    target = Rat(target_prec)
    out = []
    _rec(
        poly.field,
        dict(poly.coeffs),
        Puiseux.zero(poly.field),
        None,
        target,
        out,
        0,
        first_only,
        trace,
    )
    out.sort(key=lambda r: r.sort_key())
    return out


def solve_additive(f, target_prec, trace=None):
    """All roots of an additive polynomial, as particular + kernel structure.

    Returns (particular, kernel, roots): the kernel of the homogeneous part,
    one particular solution of the inhomogeneous equation (the zero series
    when there is no constant), and the complete list particular + kernel.
    """
    if not f.linear:
        raise ValueError("homogeneous part must be nonzero")
    kernel = solve_poly(f.homogeneous().to_poly(), target_prec, trace=trace)
    if f.constant is None or (not f.constant.terms and f.constant.prec is None):
        particular = Puiseux.zero(f.field)
    else:
        particular = solve_poly(f.to_poly(), target_prec, first_only=True, trace=trace)[0]
    roots = sorted((particular + k for k in kernel), key=lambda r: r.sort_key())
    return particular, kernel, roots

import random
from fractions import Fraction as F

import pytest

from lt2red.field_tower import FF, cached_field
from lt2red.puiseux import PrecisionError, Puiseux
from lt2red.solver import (
    AdditivePoly,
    EnlargeFieldError,
    PolyOverPz,
    newton_polygon,
    residue_roots,
    solve_additive,
    solve_poly,
)


def mk(field, **named):
    return {k: v for k, v in named.items()}


def test_polygon_cubic_split():
    f = cached_field(2, 1, 6)
    pi = Puiseux.pi(f)
    u = Puiseux.pi(f, F(1, 2))
    poly = PolyOverPz(f, {3: Puiseux.constant(f, f.one()), 1: u, 0: pi})
    ngon = newton_polygon(poly)
    assert ngon.segments == [(F(-1, 2), 1), (F(-1, 4), 2)]
    assert sorted(ngon.root_valuations()) == [F(1, 4), F(1, 4), F(1, 2)]


def test_polygon_single_segment_case():
    f = cached_field(2, 1, 6)
    pi = Puiseux.pi(f)
    u = Puiseux.pi(f, F(3, 4))
    poly = PolyOverPz(f, {3: Puiseux.constant(f, f.one()), 1: u, 0: pi})
    ngon = newton_polygon(poly)
    assert ngon.segments == [(F(-1, 3), 3)]


def test_polygon_monomial_plus_constant():
    f = cached_field(3, 1, 4)
    poly = PolyOverPz(
        f,
        {4: Puiseux.pi(f, F(1, 3)), 0: Puiseux.pi(f, F(3, 2)).scale(f.from_int(2))},
    )
    ngon = newton_polygon(poly)
    assert ngon.segments == [(-(F(3, 2) - F(1, 3)) / 4, 4)]


def test_polygon_undecidable_precision():
    f = cached_field(2, 1, 6)
    poly = PolyOverPz(
        f,
        {
            2: Puiseux.constant(f, f.one()),
            1: Puiseux.zero(f, prec=F(1, 4)),
            0: Puiseux.pi(f),
        },
    )
    with pytest.raises(PrecisionError):
        newton_polygon(poly)


def test_lt_kernel_q2():
    f = cached_field(2, 1, 6)
    pi = Puiseux.pi(f)
    lt = AdditivePoly(f, {0: pi, 1: Puiseux.constant(f, -f.one())})
    part, kernel, roots = solve_additive(lt, F(4))
    assert part.is_zero_to_prec()
    vals = sorted((k.valuation() for k in kernel), key=lambda v: (v is not None, v))
    assert len(kernel) == 2
    nonzero = [k for k in kernel if k.terms]
    assert len(nonzero) == 1
    assert nonzero[0].terms == Puiseux.pi(f).terms   # the root is exactly pi
    assert nonzero[0].prec is None


def test_lt_kernel_q3():
    f = cached_field(3, 1, 4)
    pi = Puiseux.pi(f)
    lt = AdditivePoly(f, {0: pi, 1: Puiseux.constant(f, -f.one())})
    _, kernel, _ = solve_additive(lt, F(4))
    nonzero = [k for k in kernel if k.terms]
    assert len(nonzero) == 2
    assert {k.valuation() for k in nonzero} == {F(1, 2)}
    for k in nonzero:
        assert lt(k).is_zero_to_prec() or lt(k).valuation() >= F(4)


def test_gauge_style_unit_equation():
    # X^q + c X + 1 with small v(c): q unit roots whose residues solve t^q = -1
    f = cached_field(3, 1, 4)
    c = Puiseux.pi(f, F(1, 27))
    eq = AdditivePoly(
        f,
        {1: Puiseux.constant(f, f.one()), 0: c},
        constant=Puiseux.constant(f, f.one()),
    )
    _, kernel, roots = solve_additive(eq, F(1))
    assert len(roots) == 3
    for r in roots:
        assert r.valuation() == 0
        assert r.residue() ** 3 == -f.one()
        res = eq(r)
        assert res.is_zero_to_prec() or res.valuation() >= F(1)


def test_solve_poly_cubic_and_reassembly():
    f = cached_field(2, 1, 6)
    pi = Puiseux.pi(f)
    u = Puiseux.pi(f, F(1, 2))
    one = Puiseux.constant(f, f.one())
    poly = PolyOverPz(f, {3: one, 1: u, 0: pi})
    roots = solve_poly(poly, F(3))
    assert sorted(r.valuation() for r in roots) == [F(1, 4), F(1, 4), F(1, 2)]
    # multiply the linear factors back together
    acc = PolyOverPz(f, {0: one})
    prod = {0: one}
    for r in roots:
        nxt = {}
        for i, cpz in prod.items():
            nxt[i + 1] = nxt.get(i + 1, Puiseux.zero(f)) + cpz
            nxt[i] = nxt.get(i, Puiseux.zero(f)) - cpz * r
        prod = nxt
    for i, cpz in poly.coeffs.items():
        assert cpz.congruent(prod.get(i, Puiseux.zero(f)), F(5, 2))


def test_solve_linear_and_q_power():
    f = cached_field(3, 1, 4)
    a = Puiseux.pi(f, F(1, 2)).scale(f.from_int(2))
    b = Puiseux.pi(f, F(2, 3))
    lin = PolyOverPz(f, {1: a, 0: -b})
    roots = solve_poly(lin, F(4))
    assert len(roots) == 1
    assert roots[0].valuation() == F(2, 3) - F(1, 2)
    # X^q = c has the unique q-th root as its only solution
    c = Puiseux.pi(f, F(1, 2))
    qq = PolyOverPz(f, {3: Puiseux.constant(f, f.one()), 0: -c})
    roots = solve_poly(qq, F(4))
    assert len(roots) == 3              # triple root in characteristic p
    assert all(r.valuation() == F(1, 6) for r in roots)
    assert len({r.sort_key() for r in roots}) == 1


def test_kernel_is_additive_and_counted():
    f = cached_field(3, 1, 4)
    pi = Puiseux.pi(f)
    u = Puiseux.pi(f, F(1, 2))
    one = Puiseux.constant(f, f.one())
    ker_poly = AdditivePoly(f, {0: pi, 1: u, 2: one})
    part, kernel, roots = solve_additive(ker_poly, F(2))
    assert len(kernel) == 9             # q^2 when every residue equation splits
    for a in kernel[:4]:
        for b in kernel[:4]:
            s = a + b
            val = ker_poly(s)
            assert val.is_zero_to_prec() or val.valuation() >= F(3, 2)
    # root valuations match the polygon of the kernel polynomial
    ngon = newton_polygon(ker_poly.to_poly())
    predicted = ngon.root_valuations()
    got = sorted(r.valuation() for r in kernel if r.terms)
    assert got == sorted(predicted)


def test_residual_check_random_inputs():
    f = cached_field(2, 1, 6)
    rng = random.Random(11)
    pi = Puiseux.pi(f)
    for vu_num in (1, 2, 3):
        u = Puiseux.pi(f, F(vu_num, 4))
        eq = AdditivePoly(f, {0: pi, 1: u, 2: Puiseux.constant(f, f.one())})
        _, kernel, _ = solve_additive(eq, F(2))
        assert len(kernel) == 4
        for r in kernel:
            val = eq(r)
            assert val.is_zero_to_prec() or val.valuation() >= F(2)


def test_residue_roots_dispatch():
    f = cached_field(3, 1, 4)
    # binomial: t^8 = 1 has all eighth roots of unity
    phi = {8: f.one(), 0: -f.one()}
    rts = residue_roots(f, phi)
    assert len(rts) == 8
    assert all(t ** 8 == f.one() for t in rts)
    # additive: t^9 + t^3 + t = 0 handled by linear algebra (nonzero roots)
    phi = {9: f.one(), 3: f.one(), 1: f.one()}
    rts = residue_roots(f, phi)
    for t in rts:
        assert t ** 9 + t ** 3 + t == f.zero()
    # inseparable cube: t^3 - 1 = (t - 1)^3
    phi = {3: f.one(), 0: -f.one()}
    rts = residue_roots(f, phi)
    assert len(rts) == 3
    assert all(t == f.one() for t in rts)


def test_enlarge_field_signal():
    # t^2 = generator of F_8 has no roots in F_8 (squaring permutes F_8 but
    # the polygon wants two roots); use q=2, m=3-free setup via F_4 session
    f = cached_field(2, 1, 2)
    g = f.gen()
    poly = PolyOverPz(
        f,
        {3: Puiseux.constant(f, f.one()), 0: Puiseux.monomial(f, g, F(0)) + Puiseux.pi(f)},
    )
    # roots are cube roots of a unit plus corrections; cube roots of g live
    # in F_64, not F_4
    with pytest.raises(EnlargeFieldError):
        solve_poly(poly, F(2))

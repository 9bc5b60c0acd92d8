import random
from fractions import Fraction

import pytest

from shintani.domain import build_signed_domain
from shintani.errors import NotValidated, ZeroIdeal
from shintani.ideals import (
    FractionalIdeal,
    coset_enumerate_R,
    enumerate_R_sigma,
    ideal_add,
    ideal_inverse,
    ideal_mul,
    integral_basis,
    parallelepiped_index,
    principal_ideal,
    smallest_positive_rational_integer,
)

from fixtures import cubic_81, q_sqrt2, q_sqrt5, quartic_725


@pytest.fixture(scope="module")
def ok2():
    fld, units = q_sqrt2()
    return fld, units, integral_basis(fld)


def test_integral_basis_power(ok2):
    fld, _, order = ok2
    assert [b.coeffs for b in order.basis] == [(1, 0), (0, 1)]
    assert order.assumed_maximal
    assert order.discriminant() == 8


def test_integral_basis_cubic():
    fld, _ = cubic_81()
    order = integral_basis(fld)
    assert order.discriminant() == 81


def test_user_basis_validated():
    fld, _ = q_sqrt5()
    # maximal order Z[(1+sqrt5)/2]: disc 5 = 20 / 2^2
    order = integral_basis(fld, [fld.one, fld.element([Fraction(1, 2), Fraction(1, 2)])])
    assert order.power_basis_index() == 2
    assert order.discriminant() == 5


def test_user_basis_rejected():
    fld, _ = q_sqrt2()
    with pytest.raises(NotValidated):
        integral_basis(fld, [fld.one, fld.element([0, Fraction(1, 2)])])  # theta/2 not integral
    with pytest.raises(NotValidated):
        integral_basis(fld, [fld.gen, fld.gen * 2])                        # 1 missing


def test_whole_ring_identity(ok2):
    fld, _, order = ok2
    o = FractionalIdeal.whole_ring(order)
    a = principal_ideal(order, fld.element([3, 1]))
    assert ideal_mul(a, o) == a
    assert o.is_whole_ring()
    assert o.norm() == 1


def test_sqrt2_squared_is_two(ok2):
    fld, _, order = ok2
    p = principal_ideal(order, fld.gen)
    assert p.hnf == ((2, 0), (0, 1)) and p.den == 1
    assert p.norm() == 2
    sq = ideal_mul(p, p)
    assert sq == principal_ideal(order, fld.element([2, 0]))
    assert sq.hnf == ((2, 0), (0, 2)) and sq.den == 1


def test_norm_multiplicative(ok2):
    fld, _, order = ok2
    rng = random.Random(4)
    for _ in range(20):
        a = principal_ideal(order, fld.element([rng.randint(1, 9), rng.randint(-9, 9)]))
        b = principal_ideal(order, fld.element([rng.randint(1, 9), rng.randint(-9, 9)]))
        assert ideal_mul(a, b).norm() == a.norm() * b.norm()


def test_ideal_inverse_whole_ring(ok2):
    _, _, order = ok2
    o = FractionalIdeal.whole_ring(order)
    assert ideal_inverse(o) == o


def test_ideal_inverse_sqrt2(ok2):
    fld, _, order = ok2
    p = principal_ideal(order, fld.gen)
    inv = ideal_inverse(p)
    # (sqrt2)^-1 = Z*1 + Z*(sqrt2/2): lattice (2, 0), (0, 1) over 2
    assert inv.hnf == ((2, 0), (0, 1)) and inv.den == 2
    assert ideal_mul(p, inv).is_whole_ring()


def test_ideal_inverse_roundtrip_random():
    fld, _ = cubic_81()
    order = integral_basis(fld)
    rng = random.Random(12)
    for _ in range(10):
        e = fld.element([rng.randint(1, 6), rng.randint(-5, 5), rng.randint(-5, 5)])
        if e.is_zero() or e.norm() == 0:
            continue
        a = principal_ideal(order, e)
        assert ideal_mul(a, ideal_inverse(a)).is_whole_ring()


def test_zero_ideal_rejected(ok2):
    fld, _, order = ok2
    with pytest.raises(ZeroIdeal):
        principal_ideal(order, fld.zero)


def test_ideal_json_roundtrip(ok2):
    fld, _, order = ok2
    a = ideal_inverse(principal_ideal(order, fld.gen))
    obj = a.to_json()
    assert obj == {"hnf": [[2, 0], [0, 1]], "den": 2}
    assert FractionalIdeal.from_json(order, obj) == a


def test_enumerate_R_sqrt2_hand(ok2):
    # R = {1, 2+sqrt2} with box coordinates (1, 0) and (1/2, 1/2)
    fld, units, order = ok2
    dom = build_signed_domain(units, fld)
    r = enumerate_R_sigma(dom.cones[0], FractionalIdeal.whole_ring(order))
    assert r.index == 2
    got = sorted((z.coeffs, t) for z, t in r.points)
    assert got == [
        ((Fraction(1), Fraction(0)), (Fraction(1), Fraction(0))),
        ((Fraction(2), Fraction(1)), (Fraction(1, 2), Fraction(1, 2))),
    ]


def test_enumerate_R_cardinality_matches_index():
    for make in (q_sqrt2, cubic_81, quartic_725):
        fld, units = make()
        order = integral_basis(fld)
        dom = build_signed_domain(units, fld)
        lat = FractionalIdeal.whole_ring(order)
        for cone in dom.cones:
            r = enumerate_R_sigma(cone, lat)
            assert r.index == parallelepiped_index(cone, lat)
            assert len(r.points) == r.index


def test_enumerate_R_halfopen_membership():
    fld, units = cubic_81()
    order = integral_basis(fld)
    dom = build_signed_domain(units, fld)
    lat = FractionalIdeal.whole_ring(order)
    for cone in dom.cones:
        r = enumerate_R_sigma(cone, lat)
        for z, t in r.points:
            for ti, fl in zip(t, cone.flags):
                if fl == "open":
                    assert 0 < ti <= 1
                else:
                    assert 0 <= ti < 1
            # reconstruction z = sum t_i f_i
            rec = fld.zero
            for ti, g in zip(t, cone.generators):
                rec = rec + g * ti
            assert rec == z


def test_coset_enumerate_matches_plain(ok2):
    fld, units, order = ok2
    dom = build_signed_domain(units, fld)
    lat = FractionalIdeal.whole_ring(order)
    plain = enumerate_R_sigma(dom.cones[0], lat)
    coset = coset_enumerate_R(dom.cones[0], lat, shift=0, scale=1)
    assert [(z.coeffs, t) for z, t in plain.points] == \
           [(z.coeffs, t) for z, t in coset.points]


def test_coset_enumerate_scaled_cardinality(ok2):
    fld, units, order = ok2
    dom = build_signed_domain(units, fld)
    lat = FractionalIdeal.whole_ring(order)
    base = enumerate_R_sigma(dom.cones[0], lat)
    for scale in (2, 3):
        r = coset_enumerate_R(dom.cones[0], lat, shift=0, scale=scale)
        assert len(r.points) == scale ** fld.degree * base.index
        # coset 1 + O_K = O_K here, so shifting by 1 is the same set
        r1 = coset_enumerate_R(dom.cones[0], lat, shift=fld.one, scale=scale)
        assert sorted(z.coeffs for z, _ in r.points) == \
               sorted(z.coeffs for z, _ in r1.points)


def test_translation_completeness():
    # a random lattice point has exactly one translate in the parallelepiped
    fld, units = cubic_81()
    order = integral_basis(fld)
    dom = build_signed_domain(units, fld)
    lat = FractionalIdeal.whole_ring(order)
    rng = random.Random(8)
    for cone in dom.cones:
        r = enumerate_R_sigma(cone, lat)
        zset = {z.coeffs for z, _ in r.points}
        for _ in range(25):
            p = fld.element([rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9)])
            from shintani.exactlinalg import mat_solve
            g_mat = [[cone.generators[j].coeffs[i] for j in range(3)] for i in range(3)]
            t = mat_solve(g_mat, list(p.coeffs))
            import math as _m
            tt = []
            for ti, fl in zip(t, cone.flags):
                tt.append(ti - (_m.ceil(ti) - 1) if fl == "open" else ti - _m.floor(ti))
            z = fld.element([sum(g_mat[i][j] * tt[j] for j in range(3)) for i in range(3)])
            # the translate is a lattice point of the R-set, and the offsets
            # are integers
            assert z.coeffs in zset
            assert all((a - b).denominator == 1 for a, b in zip(t, tt))


def test_smallest_positive_integer(ok2):
    fld, _, order = ok2
    assert smallest_positive_rational_integer(FractionalIdeal.whole_ring(order)) == 1
    assert smallest_positive_rational_integer(principal_ideal(order, fld.element([2, 0]))) == 2
    assert smallest_positive_rational_integer(principal_ideal(order, fld.gen)) == 2
    assert smallest_positive_rational_integer(
        ideal_inverse(principal_ideal(order, fld.gen))) == 1


def test_ideal_add_coprime(ok2):
    fld, _, order = ok2
    a = principal_ideal(order, fld.element([3, 1]))    # norm 7
    b = principal_ideal(order, fld.element([2, 0]))    # norm 4
    assert ideal_add(a, b).is_whole_ring()


def test_ideal_json_validation(ok2):
    fld, _, order = ok2
    import pytest as _pytest
    # (3+sqrt2) has canonical HNF [[1,5],[0,7]]
    good = FractionalIdeal.from_json(order, {"hnf": [[1, 5], [0, 7]], "den": 1})
    assert good == principal_ideal(order, fld.element([3, 1]))
    with _pytest.raises(NotValidated):
        FractionalIdeal.from_json(order, {"hnf": [[7, 4], [0, 1]], "den": 1})
    with _pytest.raises(NotValidated):
        # full lattice but not an O-module (theta * (0,1) escapes)
        FractionalIdeal.from_json(order, {"hnf": [[7, 0], [0, 1]], "den": 1})

import random
from fractions import Fraction

import pytest

from shintani.errors import DependentBasis, LastCoordinateZero, YNotInSimplex
from shintani.geometry import (
    Simplex,
    barycentric,
    cone_coordinates,
    face_span_det_sign,
    pierces_cone,
    pierces_simplex,
    project_ell,
)

from fixtures import cubic_81, q_sqrt2

SQRT2 = Fraction("1.41421356237309504880168872420969808")


def test_project_ell_exact():
    assert project_ell((2, 4, 2)) == (Fraction(1), Fraction(2))
    assert project_ell((1, 1, 1, 1)) == (Fraction(1),) * 3
    with pytest.raises(LastCoordinateZero):
        project_ell((1, 2, 0))


def test_project_ell_multiplicative():
    rng = random.Random(7)
    for _ in range(50):
        x = [Fraction(rng.randint(1, 100), rng.randint(1, 100)) for _ in range(3)]
        e = [Fraction(rng.randint(1, 100), rng.randint(1, 100)) for _ in range(3)]
        ex = [a * b for a, b in zip(e, x)]
        lx, le, lex = project_ell(x), project_ell(e), project_ell(ex)
        assert all(a * b == c for a, b, c in zip(lx, le, lex))


def test_project_ell_adaptive():
    fld, (eps,) = q_sqrt2()
    lv = project_ell(eps)
    out = lv.at(64)
    # l(eps) = eps^(1)/eps^(2) = (3-2*sqrt2)/(3+2*sqrt2) = 17 - 12*sqrt2
    assert out[0].contains(17 - 12 * SQRT2)


def test_cone_coordinates_basis_vector():
    fld, (eps,) = q_sqrt2()
    basis = [fld.one, eps]
    c = cone_coordinates(fld.one, basis, fld)
    assert c.exact and c.values == (Fraction(1), Fraction(0))
    assert c.signs == (1, 0)


def test_cone_coordinates_e2_hand_value():
    # e_2 = c_1 * 1 + c_2 * (3+2*sqrt2): c_1 < 0 < c_2, c_2 = 1/(4*sqrt2)
    fld, (eps,) = q_sqrt2()
    c = cone_coordinates((0, 1), [fld.one, eps], fld)
    assert c.signs == (-1, 1)
    assert c.values[1].contains(1 / (4 * SQRT2))


def test_cone_coordinates_exact_combination():
    fld, (eps,) = q_sqrt2()
    v = fld.one * 2 + eps * 3
    c = cone_coordinates(v, [fld.one, eps], fld)
    assert c.values == (Fraction(2), Fraction(3))


def test_cone_coordinates_dependent_basis():
    fld, (eps,) = q_sqrt2()
    with pytest.raises(DependentBasis):
        cone_coordinates(fld.one, [eps, eps], fld)


def simplex2():
    return Simplex([(0, 0), (1, 0), (0, 1)])


def test_barycentric_vertices_and_centroid():
    s = simplex2()
    b = barycentric((0, 0), s)
    assert b.values == (Fraction(1), Fraction(0), Fraction(0))
    b = barycentric((Fraction(1, 3), Fraction(1, 3)), s)
    assert b.values == (Fraction(1, 3),) * 3
    assert sum(b.values) == 1


def test_barycentric_affinity():
    s = Simplex([(0, 0), (2, 1), (1, 3)])
    rng = random.Random(3)
    for _ in range(40):
        x = (Fraction(rng.randint(-10, 10), 3), Fraction(rng.randint(-10, 10), 5))
        y = (Fraction(rng.randint(-10, 10), 7), Fraction(rng.randint(-10, 10), 2))
        t = Fraction(rng.randint(-5, 5), 4)
        mix = tuple((1 - t) * a + t * b for a, b in zip(x, y))
        bx, by, bm = (barycentric(p, s).values for p in (x, y, mix))
        assert all((1 - t) * a + t * b == c for a, b, c in zip(bx, by, bm))


def test_pierces_simplex_basic():
    s = simplex2()
    # y interior: every segment pierces
    assert pierces_simplex((5, 5), (Fraction(1, 4), Fraction(1, 4)), s)
    # x = y on a facet: no interior point on the segment
    facet_pt = (Fraction(1, 2), 0)
    assert not pierces_simplex(facet_pt, facet_pt, s)
    # x on the positive side of the facet's missing vertex
    assert pierces_simplex((Fraction(1, 4), Fraction(1, 4)), facet_pt, s)
    with pytest.raises(YNotInSimplex):
        pierces_simplex((0, 0), (-1, -1), s)


def test_pierces_cone_hand_cases():
    fld, (eps,) = q_sqrt2()
    basis = [fld.one, eps]
    e2 = (0, 1)
    # y = f_1: c(y) = (1, 0); piercing from e_2 iff c_2(e_2) > 0, which holds
    assert pierces_cone(e2, fld.one, basis, fld)
    # y = f_2: c(y) = (0, 1); x = -f_1 has c_1 = -1 < 0
    assert not pierces_cone(-fld.one, eps, basis, fld)
    # y interior
    assert pierces_cone((-5, -5), fld.one + eps, basis, fld)
    with pytest.raises(YNotInSimplex):
        pierces_cone(e2, -fld.one, basis, fld)


def test_en_has_no_zero_cone_coordinate():
    # the distinguished basis vector avoids every face hyperplane
    for make in (q_sqrt2, cubic_81):
        fld, units = make()
        from shintani.domain import build_signed_domain
        dom = build_signed_domain(units, fld)
        e_n = tuple(Fraction(int(i == fld.degree - 1)) for i in range(fld.degree))
        for cone in dom.cones:
            c = cone_coordinates(e_n, cone.generators, fld, zero_possible=False)
            assert all(s != 0 for s in c.signs)


def test_origin_avoids_face_spans():
    fld, units = cubic_81()
    from shintani.domain import build_signed_domain
    dom = build_signed_domain(units, fld)
    origin = (0,) * (fld.degree - 1)
    for cone in dom.cones:
        def rows_fn(prec, cone=cone):
            verts = []
            for g in cone.generators:
                conj = fld._positive_conjugates(g, prec)
                verts.append([c.div(conj[-1], prec) for c in conj[:-1]])
            return verts
        s = Simplex(rows_fn=rows_fn)
        for i in range(fld.degree):
            assert face_span_det_sign(s, i, origin) != 0


def test_coordinate_transfer_signs():
    # sign vector of cone coordinates (in R^n) matches sign vector of
    # barycentric coordinates of the projected point (in R^(n-1))
    fld, units = cubic_81()
    from shintani.domain import build_signed_domain
    dom = build_signed_domain(units, fld)
    cone = dom.cones[0]

    def rows_fn(prec):
        verts = []
        for g in cone.generators:
            conj = fld._positive_conjugates(g, prec)
            verts.append([c.div(conj[-1], prec) for c in conj[:-1]])
        return verts

    s = Simplex(rows_fn=rows_fn)
    rng = random.Random(11)
    for _ in range(25):
        x = tuple(Fraction(rng.uniform(0.05, 20)) for _ in range(fld.degree))
        c = cone_coordinates(x, cone.generators, fld)
        b = barycentric(project_ell(x), s)
        assert c.signs == b.signs


def test_barycentric_interval_reconstruction():
    # interval path: the coefficients sum to 1 and reconstruct the point
    fld, units = cubic_81()
    from shintani.domain import build_signed_domain, projected_simplex
    dom = build_signed_domain(units, fld)
    cone = dom.cones[0]
    s = projected_simplex(cone)
    rng = random.Random(2)
    for _ in range(10):
        x = tuple(Fraction(rng.uniform(0.1, 5.0)) for _ in range(3))
        p = project_ell(x)
        b = barycentric(p, s)
        total = b.values[0]
        for v in b.values[1:]:
            total = total + v
        assert total.contains(Fraction(1))
        # reconstruction: sum b_i * vertex_i contains the projected point
        verts = s._rows_fn(96)
        for k in range(2):
            acc = b.values[0] * verts[0][k]
            for i in range(1, 3):
                acc = acc + b.values[i] * verts[i][k]
            assert acc.lo_fraction() <= p[k] <= acc.hi_fraction()


def test_degenerate_simplex_rejected():
    from shintani.errors import DegenerateSimplex
    with pytest.raises(DegenerateSimplex):
        Simplex([(0, 0), (1, 1), (2, 2)])


def test_boundary_vector_decisions():
    from shintani.domain import build_signed_domain, cone_contains
    from shintani.errors import UndecidableSign
    from shintani.field import NumberField

    # in the quadratic the diagonal face is spanned by (1,1), so a dyadic
    # point on it yields an exactly-zero coordinate: decided, no guessing
    fld = NumberField([-2, 0, 1], prec_cap=256)
    dom = build_signed_domain([fld.element([3, 2])], fld)
    assert cone_contains(dom.cones[0], (1.0, 1.0))
    assert cone_contains(dom.cones[0], fld.one)

    # in the cubic the face through the diagonal is irrational, so the same
    # dyadic point is a true boundary-grazing input: the kernel must refuse
    # rather than decide by tolerance (the exact field-element route works)
    cfld = NumberField([-1, -3, 0, 1], prec_cap=256)
    cdom = build_signed_domain([cfld.element([1, 2, 1]), cfld.element([0, 0, 1])], cfld)
    hit = [cone for cone in cdom.cones
           if cone_contains(cone, cfld.one)]
    assert len(hit) == 1
    with pytest.raises(UndecidableSign):
        for cone in cdom.cones:
            cone_contains(cone, (1.0, 1.0, 1.0))


def test_origin_piercing_matches_simplex_membership():
    # membership in the half-open simplex (decided from the flags) is the
    # same as the segment from the origin piercing the closed simplex
    from shintani.domain import (build_signed_domain, cone_contains_via_simplex,
                                 projected_simplex)
    for make in (q_sqrt2, cubic_81):
        fld, units = make()
        dom = build_signed_domain(units, fld)
        n = fld.degree
        origin = (0,) * (n - 1)
        rng = random.Random(21)
        for cone in dom.cones:
            s = projected_simplex(cone)
            for _ in range(60):
                x = tuple(Fraction(rng.uniform(0.05, 12.0)) for _ in range(n))
                member = cone_contains_via_simplex(cone, x)
                try:
                    pier = pierces_simplex(origin, project_ell(x), s)
                except YNotInSimplex:
                    pier = False
                assert member == pier

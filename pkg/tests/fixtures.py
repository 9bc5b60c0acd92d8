"""Frozen fixture fields and units used across the test suite.

Units marked "generates E+" were derived as follows and are relied on by the
zeta consistency tests: the fundamental pair of the cubic field below was
found by exhaustive small-coordinate search (its regulator matches the known
field regulator), the sign map of the full unit group onto {+-1}^3 is
surjective, so the totally positive units are exactly the squares of the
fundamental ones.  The remaining fixtures only need independent totally
positive units (any finite index works for the net count).
"""

from fractions import Fraction

from shintani.field import NumberField

F12 = Fraction(1, 2)


def q_sqrt2():
    """x^2 - 2 with eps = 3 + 2*sqrt2 (generates E+)."""
    fld = NumberField([-2, 0, 1])
    return fld, [fld.element([3, 2])]


def q_sqrt3():
    """x^2 - 3 with eps = 2 + sqrt3 (generates E+)."""
    fld = NumberField([-3, 0, 1])
    return fld, [fld.element([2, 1])]


def q_sqrt5():
    """x^2 - 5 with eps = (3 + sqrt5)/2: rational coordinates on purpose."""
    fld = NumberField([-5, 0, 1])
    return fld, [fld.element([Fraction(3, 2), F12])]


def cubic_81():
    """x^3 - 3x - 1 (Galois, discriminant 81) with E+ generators
    (1 + t)^2 and t^2."""
    fld = NumberField([-1, -3, 0, 1])
    return fld, [fld.element([1, 2, 1]), fld.element([0, 0, 1])]


def cubic_148():
    """x^3 - x^2 - 3x + 1 with squares of a fundamental pair (independent
    totally positive, finite index in E+)."""
    fld = NumberField([1, -3, -1, 1])
    return fld, [fld.element([10, 2, -3]), fld.element([4, -4, 1])]


def quartic_725():
    """x^4 - x^3 - 3x^2 + x + 1 (monogenic: poly disc = field disc = 725)
    with squares of a fundamental triple."""
    fld = NumberField([1, 1, -3, -1, 1])
    return fld, [fld.element([1, 2, 1, -1]),
                 fld.element([3, 3, 0, -1]),
                 fld.element([2, -3, 1, 0])]


def cubic_signed_witness():
    """x^3 - 3x - 1 with the unit pair ((1+t)^2, (1+t)^4 t^-2): found by
    search; its domain has cone signs (-1, +1), so it exercises the signed
    (non-true) case end to end."""
    fld = NumberField([-1, -3, 0, 1])
    return fld, [fld.element([1, 2, 1]), fld.element([3, 5, 2])]


ALL_NET_COUNT = {
    "q_sqrt2": q_sqrt2,
    "q_sqrt3": q_sqrt3,
    "q_sqrt5": q_sqrt5,
    "cubic_81": cubic_81,
    "cubic_148": cubic_148,
    "quartic_725": quartic_725,
}


def maximal_order(name, fld):
    """Ring of integers per fixture: the power basis except for x^2 - 5,
    where the units live in Z[(1+sqrt5)/2] (validated user basis)."""
    from shintani.ideals import integral_basis

    if name == "q_sqrt5":
        return integral_basis(fld, [fld.one, fld.element([F12, F12])])
    return integral_basis(fld)

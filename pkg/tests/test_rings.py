import pytest
from hypothesis import given, settings, strategies as st

from elemcalc.errors import (
    DescriptorMismatch,
    IdealMismatch,
    LengthMismatch,
    NotAUnit,
    TwoNotInvertible,
    UnknownVariable,
)
from elemcalc.rings import (
    CertifiedElement,
    IdealPresentation,
    LocRing,
    PolyRing,
    ZmodRing,
    certify,
    half,
    invert_unit,
    lift_certificate,
    lift_ideal,
    product_certificate,
    substitute,
)

Z27 = ZmodRing(27)
Z8 = ZmodRing(8)
Z5 = ZmodRing(5)


def test_zmod_basic_arithmetic():
    a = Z27.el(5)
    b = Z27.el(11)
    assert (a * b) == Z27.one
    assert (a + b).payload == 16
    assert (a - b).payload == (5 - 11) % 27
    assert (-a).payload == 22
    assert (a ** 3).payload == pow(5, 3, 27)
    assert Z27.el(30).payload == 3


def test_zmod_units_and_half():
    assert invert_unit(Z27.el(2)) == Z27.el(14)
    assert half(Z27) == Z27.el(14)
    assert half(Z5) == Z5.el(3)
    with pytest.raises(NotAUnit):
        invert_unit(Z27.el(3))
    with pytest.raises(TwoNotInvertible):
        half(Z8)


def test_element_equality_only_within_ring():
    with pytest.raises(DescriptorMismatch):
        Z27.el(5) == ZmodRing(25).el(5)
    assert Z27.el(5) == 5
    assert Z27.el(0).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 26), st.integers(0, 26), st.integers(0, 26))
def test_zmod_ring_axioms(x, y, z):
    a, b, c = Z27.el(x), Z27.el(y), Z27.el(z)
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + Z27.zero == a
    assert a * Z27.one == a
    assert a + (-a) == Z27.zero


def make_pxy(base=None):
    return PolyRing(base or Z27, ("X", "Y"))


def test_poly_construction_and_repr():
    P = make_pxy()
    x = P.var("X")
    y = P.var("Y")
    p = x * x * P.el(2) + y * P.el(7) + P.el(5)
    assert p.payload == {(0, 0): 5, (2, 0): 2, (0, 1): 7}
    with pytest.raises(UnknownVariable):
        P.var("Z")


def test_poly_substitute():
    P = make_pxy()
    x = P.var("X")
    y = P.var("Y")
    p = x * x + y * P.el(3) + P.el(1)
    q = substitute(p, {"X": P.el(2), "Y": P.el(4)})
    assert q == P.el((4 + 12 + 1) % 27)
    # partial substitution keeps the other variable
    r = substitute(p, {"Y": P.zero})
    assert r == x * x + P.el(1)
    with pytest.raises(UnknownVariable):
        substitute(p, {"Q": P.zero})


def test_poly_lifts_base_elements():
    P = make_pxy()
    assert P.el(Z27.el(5)) == P.el(5)
    with pytest.raises(DescriptorMismatch):
        P.el(ZmodRing(25).el(5))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 26), st.integers(0, 26), st.integers(0, 2),
       st.integers(0, 2))
def test_poly_product_matches_evaluation(c1, c2, e1, e2):
    P = make_pxy()
    x = P.var("X")
    p = P.el(c1) * x ** e1 + P.el(1)
    q = P.el(c2) * x ** e2 + P.el(2)
    x0 = P.el(5)
    lhs = substitute(p * q, {"X": x0, "Y": P.zero})
    rhs = substitute(p, {"X": x0, "Y": P.zero}) \
        * substitute(q, {"X": x0, "Y": P.zero})
    assert lhs == rhs


def test_loc_ring_equality_and_inverse():
    L = LocRing(Z27, 2)
    x = L.wrap((5, 1))          # 5 / 2
    y = L.wrap((10, 2))         # 10 / 4
    assert x == y
    assert L.el(5) * invert_unit(L.el(5)) == L.one
    inv2 = L.wrap((1, 1))       # 1 / 2
    assert L.el(2) * inv2 == L.one


def test_ideal_presentation_and_square():
    P = PolyRing(Z27, ("X",))
    I = IdealPresentation(P, (P.el(3), P.var("X")))
    assert I.square_pairs() == ((0, 0), (0, 1), (1, 1))
    sq = I.square()
    assert sq.base == I
    assert sq.generators == (P.el(9), P.el(3) * P.var("X"),
                             P.var("X") * P.var("X"))


def test_certify_and_check():
    I = IdealPresentation(Z27, (Z27.el(3),))
    c = certify(I, [Z27.el(4)])
    assert c.value == Z27.el(12)
    assert c.check()
    assert (c + c).value == Z27.el(24)
    assert (-c).value == Z27.el(-12)
    assert c.scale(Z27.el(2)).value == Z27.el(24)
    assert c.scale(Z27.el(2)).check()
    assert I.zero_cert().is_zero()
    bad = CertifiedElement(I, [Z27.el(4)], value=Z27.el(1))
    assert not bad.check()
    with pytest.raises(LengthMismatch):
        certify(I, [Z27.el(1), Z27.el(2)])


def test_certificates_mixed_ideals_rejected():
    I = IdealPresentation(Z27, (Z27.el(3),))
    J = IdealPresentation(Z27, (Z27.el(3), Z27.el(6)))
    with pytest.raises(IdealMismatch):
        certify(I, [Z27.el(1)]) + certify(J, [Z27.el(1), Z27.el(0)])


def test_product_certificate_frozen_example():
    P = PolyRing(Z27, ("X",))
    I = IdealPresentation(P, (P.el(3), P.var("X")))
    a = certify(I, [P.el(1), P.el(2)])    # 3 + 2X
    b = certify(I, [P.el(1), P.el(0)])    # 3
    ab = product_certificate(a, b)
    assert ab.ideal == I.square()
    assert ab.coefficients == (P.el(1), P.el(2), P.el(0))
    assert ab.value == a.value * b.value
    assert ab.check()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 26), st.integers(0, 26), st.integers(0, 26),
       st.integers(0, 26))
def test_product_certificate_always_valid(a1, a2, b1, b2):
    I = IdealPresentation(Z27, (Z27.el(3), Z27.el(6)))
    a = certify(I, [Z27.el(a1), Z27.el(a2)])
    b = certify(I, [Z27.el(b1), Z27.el(b2)])
    ab = product_certificate(a, b)
    assert ab.check()
    assert ab.value == a.value * b.value


def test_lift_ideal_and_certificate():
    P = make_pxy()
    I = IdealPresentation(Z27, (Z27.el(3),))
    J = lift_ideal(I, P)
    assert J.ring == P
    assert J.generators == (P.el(3),)
    c = certify(I, [Z27.el(2)])
    lc = lift_certificate(c, J)
    assert lc.check() and lc.value == P.el(6)


def test_principal_cert():
    I = IdealPresentation(Z27, (Z27.el(3), Z27.el(6)))
    c = I.principal_cert([Z27.el(2), Z27.el(1)])
    assert c.check() and c.value == Z27.el(12)


def test_certificate_substitute():
    P = make_pxy()
    I = IdealPresentation(P, (P.el(3), P.el(3) * P.var("X")))
    c = certify(I, [P.var("Y"), P.el(2)])
    c0 = c.substitute({"Y": P.zero})
    assert c0.check()
    assert c0.value == substitute(c.value, {"Y": P.zero})

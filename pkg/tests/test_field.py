from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from substral.field import (
    FieldMismatch,
    NumberField,
    Pisot,
    left_pf_eigenvector,
    min_poly_of_pf_root,
    pf_field,
    pisot_test,
)
from substral.polynomial import parse_polynomial
from substral.substitution import Substitution, abelianization

GOLDEN = min_poly_of_pf_root(parse_polynomial("x^2-x-1"))
TRIB = min_poly_of_pf_root(parse_polynomial("x^3-x^2-x-1"))
PLASTIC = min_poly_of_pf_root(parse_polynomial("x^3-x-1"))
FIELDS = {"golden": GOLDEN, "tribonacci": TRIB, "plastic": PLASTIC}

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=50)


def elements(field):
    return st.lists(rationals, min_size=field.degree, max_size=field.degree).map(field.element)


def numeric(x, dps=60):
    """Value of x at a 60-digit approximation of the generator."""
    with mpmath.workdps(dps):
        coeffs = [float(c) for c in reversed(x.field.min_poly.coeffs)]
        lam = max(r.real for r in mpmath.polyroots(coeffs, maxsteps=200, extraprec=200) if abs(r.imag) < 1e-30)
        return sum(mpmath.mpf(c.numerator) / c.denominator * lam**k for k, c in enumerate(x.coords))


def test_golden_basics():
    lam = GOLDEN.gen
    assert lam * lam == lam + 1
    assert (lam - 1) * lam == GOLDEN.one
    assert lam.inverse() == lam - 1
    assert lam.floor() == 1 and (lam * lam).floor() == 2
    assert lam.decimal() == "1.61803398874989484820"
    assert (-lam).decimal(5) == "-1.61803"
    assert GOLDEN.rational(Fraction(1, 2)).decimal() == "0.5"
    assert (lam - 2).sign() == -1 and (lam - 1).sign() == 1


@pytest.mark.parametrize("name", sorted(FIELDS))
def test_ring_axioms(name):
    field = FIELDS[name]

    @settings(max_examples=40, deadline=None)
    @given(elements(field), elements(field), elements(field))
    def check(a, b, c):
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a - a == field.zero
        if not b.is_zero():
            assert (a / b) * b == a

    check()


@pytest.mark.parametrize("name", sorted(FIELDS))
def test_sign_and_floor_match_high_precision(name):
    field = FIELDS[name]

    @settings(max_examples=40, deadline=None)
    @given(elements(field))
    def check(x):
        v = numeric(x)
        assume(abs(v) > mpmath.mpf(10) ** -40)
        assert x.sign() == (1 if v > 0 else -1)
        assert x.floor() == int(mpmath.floor(v))
        assert abs(mpmath.mpf(x.decimal(15)) - v) < mpmath.mpf(10) ** -14

    check()


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        GOLDEN.gen + TRIB.gen


def test_bounds_certify():
    lo, hi = TRIB.gen.bounds(Fraction(1, 10**30))
    assert lo <= hi and hi - lo <= Fraction(1, 10**30)
    # 1.83928675521416113255185256465328660042...
    assert lo <= Fraction("1.8392867552141611325518525646533")
    assert hi >= Fraction("1.8392867552141611325518525646532")


def test_min_poly_selection_for_reducible():
    # (x^2-x-1)(x+1): the PF root 1.618 is a root of the quadratic factor
    f = min_poly_of_pf_root(parse_polynomial("x^3 - 2*x - 1"))
    assert f.min_poly == parse_polynomial("x^2-x-1")


@pytest.mark.parametrize(
    "poly,verdict",
    [
        ("x^2-x-1", Pisot.PISOT),
        ("x^3-x^2-x-1", Pisot.PISOT),
        ("x^3-x-1", Pisot.PISOT),
        ("x-2", Pisot.PISOT),
        ("x^2-x-3", Pisot.NOT_PISOT),
        ("x^4-x^3-x^2-x+1", Pisot.BORDERLINE),
    ],
)
def test_pisot(poly, verdict):
    v = pisot_test(min_poly_of_pf_root(parse_polynomial(poly)))
    assert v.verdict is verdict


def test_not_pisot_certified_modulus():
    # 1 -> 2, 2 -> 1112 has char poly x^2 - x - 3; the other root is about -1.3028
    phi = Substitution.from_strings("2", "1112")
    v = pisot_test(pf_field(abelianization(phi)))
    assert v.verdict is Pisot.NOT_PISOT
    ((lo, hi),) = v.conjugate_moduli
    with mpmath.workdps(50):
        modulus = (mpmath.sqrt(13) - 1) / 2
        assert 1 < lo and mpmath.mpf(lo.numerator) / lo.denominator <= modulus <= mpmath.mpf(hi.numerator) / hi.denominator


@pytest.mark.parametrize("images", [("21", "1"), ("12", "21"), ("21", "31", "1"), ("21", "3", "4", "5", "1"),
                                    ("1213121", "213121", "3121")])
def test_left_eigenvector_exact(images):
    phi = Substitution.from_strings(*images)
    a = abelianization(phi)
    field = pf_field(a)
    w = left_pf_eigenvector(a, field)
    d = len(a)
    for j in range(d):
        assert sum((w[i] * a[i][j] for i in range(d)), field.zero) == field.gen * w[j]
    assert all(x.sign() > 0 for x in w)


def test_golden_eigenvector_normalization():
    phi = Substitution.from_strings("21", "1")
    a = abelianization(phi)
    field = pf_field(a)
    w = left_pf_eigenvector(a, field)
    assert w == (field.gen, field.one)


def test_field_equality_uses_interval():
    other = NumberField(parse_polynomial("x^2-x-1"), GOLDEN.root_interval)
    assert other == GOLDEN

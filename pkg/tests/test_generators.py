import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import parry_digits
from substral.field import pf_field
from substral.generators import (
    JacobiPerronConstraint,
    MissingLetter,
    NoThree,
    NotParryWithinBound,
    arnoux_rauzy,
    beta_field,
    beta_orbit,
    beta_substitution,
    brun,
    greedy_expansion,
    jacobi_perron,
)
from substral.polynomial import char_poly
from substral.substitution import (
    Substitution,
    abelianization,
    final_letters_eventually_constant,
    initial_letter_injective,
)

PARRY = {
    "x^2-x-1": (1, 1),
    "x-2": (2,),
    "x^3-x^2-x-1": (1, 1, 1),
    "x^3-x-1": (1, 0, 0, 0, 1),
}


@pytest.mark.parametrize("poly", sorted(PARRY))
def test_parry_digits(poly):
    data = beta_orbit(beta_field(poly))
    assert data.simple
    assert data.digits == PARRY[poly] == parry_digits(poly)
    assert data.orbit[0] == data.field.one and data.orbit[-1].is_zero()


def test_plastic_orbit():
    data = beta_orbit(beta_field("x^3-x-1"))
    b = data.field.gen
    assert list(data.orbit[1:]) == [b - 1, b * b - b, b + 1 - b * b, b * b - 1, data.field.zero]


def test_non_simple_parry():
    # beta = (3 + sqrt 5)/2: 1 -> beta - 2 -> beta - 2 (fixed point)
    data = beta_orbit(beta_field("x^2-3x+1"))
    assert not data.simple and data.digits == (2, 1)
    assert (data.preperiod, data.period) == (1, 1)
    with pytest.raises(ValueError):
        beta_substitution(data)


def test_not_parry_within_bound():
    with pytest.raises(NotParryWithinBound):
        beta_orbit(beta_field("x^2-2"), max_steps=50)


@pytest.mark.parametrize(
    "poly,images",
    [
        ("x^2-x-1", ("21", "1")),
        ("x^3-x^2-x-1", ("21", "31", "1")),
        ("x^3-x-1", ("21", "3", "4", "5", "1")),
        ("x-2", ("11",)),
    ],
)
def test_beta_substitution(poly, images):
    data = beta_orbit(beta_field(poly))
    phi = beta_substitution(data)
    assert phi == Substitution.from_strings(*images)
    a = abelianization(phi)
    assert (char_poly(a) % data.parry_polynomial()).is_zero()
    field = pf_field(a)
    assert field == data.field
    assert initial_letter_injective(phi) and final_letters_eventually_constant(phi)[0]


def test_greedy_examples():
    f = beta_field("x^2-x-1")
    assert greedy_expansion(1, f, 3).digits == (1, 0, 0, 0)
    g = greedy_expansion(f.gen, f, 3)
    assert g.start == -1 and g.digits == (1, 0, 0, 0, 0)
    h = greedy_expansion(Fraction(1, 2), f, 8)
    assert h.start == 0 and h.digits == (0, 0, 1, 0, 0, 1, 0, 0, 1)  # regression value
    with pytest.raises(ValueError):
        greedy_expansion(-1, f, 3)


@pytest.mark.parametrize("poly", ["x^2-x-1", "x^3-x-1"])
def test_greedy_bound_random(poly):
    f = beta_field(poly)
    beta = f.gen
    rng = random.Random(poly)
    for _ in range(20):
        x = Fraction(rng.randint(0, 999), rng.randint(1, 100))
        g = greedy_expansion(x, f, 10)
        for m in range(g.start, g.last + 1):
            gap = f.rational(x) - g.partial_sum(m)
            assert gap.sign() >= 0 and gap < beta ** (-m)
        assert all(0 <= d <= beta.floor() for d in g.digits)


def test_arnoux_rauzy():
    assert arnoux_rauzy(2, "12") == Substitution.from_strings("121", "21")
    assert arnoux_rauzy(3, "123") == Substitution.from_strings("1213121", "213121", "3121")  # regression value
    with pytest.raises(MissingLetter) as info:
        arnoux_rauzy(2, "11")
    assert info.value.letter == 2


def test_brun():
    assert brun("3") == Substitution.from_strings("2", "3", "13")
    assert brun("33") == Substitution.from_strings("3", "13", "213")
    with pytest.raises(NoThree):
        brun("12")


def test_jacobi_perron():
    assert jacobi_perron([(0, 1)]) == Substitution.from_strings("3", "1", "23")
    assert jacobi_perron([(1, 1)]) == Substitution.from_strings("3", "13", "23")
    with pytest.raises(JacobiPerronConstraint) as info:
        jacobi_perron([(1, 1), (2, 1)])
    assert info.value.index == 2


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=5).filter(lambda w: 3 in w))
def test_brun_hypotheses(word):
    phi = brun(word)
    assert initial_letter_injective(phi)
    assert final_letters_eventually_constant(phi)[0]


pairs = st.integers(1, 3).flatmap(lambda b: st.tuples(st.integers(0, b), st.just(b)))


@settings(max_examples=40, deadline=None)
@given(st.lists(pairs, min_size=1, max_size=5))
def test_jacobi_perron_hypotheses(ps):
    phi = jacobi_perron(ps)
    assert initial_letter_injective(phi)
    assert final_letters_eventually_constant(phi)[0]


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4).flatmap(lambda d: st.tuples(st.just(d), st.permutations(range(1, d + 1)),
                                                    st.lists(st.integers(1, d), max_size=3))))
def test_arnoux_rauzy_hypotheses(args):
    d, perm, extra = args
    word = list(perm) + extra
    phi = arnoux_rauzy(d, word)
    ok, _, c = final_letters_eventually_constant(phi)
    assert ok and c == word[0]
    assert initial_letter_injective(phi)

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import language_factors
from substral.substitution import (
    AlphabetMismatch,
    DuplicateRule,
    EmptyImage,
    MissingRule,
    Periodicity,
    Substitution,
    SubstitutionError,
    UnknownLetter,
    abelianization,
    admissible_seed,
    complexity,
    compose,
    factors,
    final_letters_eventually_constant,
    format_substitution,
    initial_letter_injective,
    is_primitive,
    parse_substitution,
    periodicity_heuristic,
    power,
    read_provenance,
)


def substitutions(max_d=3, max_len=4):
    return st.integers(1, max_d).flatmap(
        lambda d: st.lists(
            st.lists(st.integers(1, d), min_size=1, max_size=max_len).map(tuple), min_size=d, max_size=d
        ).map(lambda ims: Substitution(tuple(ims)))
    )


def test_parse_symbolic_names():
    phi = parse_substitution("# golden\na -> ab\nb -> a   # tail comment\n")
    assert phi.images == ((1, 2), (1,))
    assert phi.names == ("a", "b")


def test_parse_dotted_multichar():
    phi = parse_substitution("x1 -> x1.x2\nx2 -> x1\n")
    assert phi.images == ((1, 2), (1,))


@pytest.mark.parametrize(
    "text,exc,line",
    [
        ("1 -> 12\n2 ->\n", EmptyImage, 2),
        ("1 -> 12\n1 -> 2\n2 -> 1\n", DuplicateRule, 2),
        ("1 -> 12\n", MissingRule, 1),
        ("\n1 = 12\n", SubstitutionError, 2),
        ("1 -> 1$\n", SubstitutionError, 1),
    ],
)
def test_parse_errors_carry_line(text, exc, line):
    with pytest.raises(exc) as info:
        parse_substitution(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_missing_rule_is_unknown_letter():
    assert issubclass(MissingRule, UnknownLetter)


def test_constructor_validation():
    with pytest.raises(EmptyImage):
        Substitution(((1,), ()))
    with pytest.raises(UnknownLetter):
        Substitution(((3,), (1,)))


@given(substitutions(max_d=12))
def test_format_roundtrip(phi):
    text = format_substitution(phi, {"generator": "test"})
    assert parse_substitution(text) == phi
    assert read_provenance(text) == {"generator": "test"}


def test_abelianization_and_compose():
    phi = Substitution.from_strings("21", "1")
    assert abelianization(phi) == ((1, 1), (1, 0))
    sq = compose(phi, phi)
    assert sq.images == ((1, 2, 1), (2, 1))
    assert power(phi, 2) == sq
    with pytest.raises(AlphabetMismatch):
        compose(phi, Substitution.from_strings("1"))


@given(substitutions(), substitutions())
def test_abelianization_is_multiplicative(phi, psi):
    assume(phi.d == psi.d)
    a, b = abelianization(phi), abelianization(psi)
    d = phi.d
    prod = tuple(tuple(sum(a[i][k] * b[k][j] for k in range(d)) for j in range(d)) for i in range(d))
    assert abelianization(compose(phi, psi)) == prod


def test_primitivity():
    assert is_primitive(abelianization(Substitution.from_strings("21", "1"))) == (True, 2)
    assert is_primitive(abelianization(Substitution.from_strings("12", "21"))) == (True, 1)
    assert is_primitive(abelianization(Substitution.from_strings("1", "2")))[0] is False
    assert is_primitive(abelianization(Substitution.from_strings("12", "2")))[0] is False


def test_initial_and_final_letters():
    golden = Substitution.from_strings("21", "1")
    assert initial_letter_injective(golden)
    assert final_letters_eventually_constant(golden) == (True, 1, 1)
    tm = Substitution.from_strings("12", "21")
    assert initial_letter_injective(tm)
    assert final_letters_eventually_constant(tm) == (False, None, None)
    plastic = Substitution.from_strings("21", "3", "4", "5", "1")
    assert final_letters_eventually_constant(plastic) == (True, 4, 1)
    assert not initial_letter_injective(Substitution.from_strings("12", "1"))


@given(substitutions(max_d=4))
def test_final_constancy_matches_iteration(phi):
    ok, k, c = final_letters_eventually_constant(phi)
    f = {a: phi(a)[-1] for a in range(1, phi.d + 1)}
    images = set(f)
    seen = []
    for _ in range(phi.d + 1):
        seen.append(images)
        images = {f[a] for a in images}
    assert ok == (len(seen[-1]) == 1)
    if ok:
        assert seen[k] == {c} and (k == 1 or len(seen[k - 1]) > 1)


def test_admissible_seed_examples():
    assert admissible_seed(Substitution.from_strings("21", "1")) == (2, 1, 1)
    # phi^2(1) = 1221 starts and ends with 1 and 11 is legal, so (1, 1) wins at k = 2
    assert admissible_seed(Substitution.from_strings("12", "21")) == (2, 1, 1)


def test_thue_morse_complexity():
    tm = Substitution.from_strings("12", "21")
    assert complexity(tm, 12) == [2, 4, 6, 10, 12, 16, 20, 22, 24, 28, 32, 36]
    assert complexity(Substitution.from_strings("12", "1"), 8) == list(range(2, 10))


def primitive_substitutions():
    return substitutions().filter(lambda p: is_primitive(abelianization(p))[0]
                                  and any(len(w) > 1 for w in p.images))


@settings(max_examples=60, deadline=None)
@given(primitive_substitutions(), st.integers(1, 6))
def test_factors_match_bruteforce(phi, n):
    assert factors(phi, n) == language_factors(phi.images, n)


def test_factors_refuses_non_primitive():
    with pytest.raises(SubstitutionError):
        factors(Substitution.from_strings("12", "2"), 3)


def test_periodicity():
    assert periodicity_heuristic(Substitution.from_strings("21", "1")) is Periodicity.YES
    assert periodicity_heuristic(Substitution.from_strings("12", "21")) is Periodicity.UNKNOWN
    # 1 -> 12, 2 -> 12 has the periodic language (12)^inf
    assert periodicity_heuristic(Substitution.from_strings("12", "12")) is Periodicity.PERIODIC_DETECTED

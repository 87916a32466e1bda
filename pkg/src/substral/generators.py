"""Example families: beta-substitutions, greedy expansions, AR, Brun and JP products."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import FieldElement, NumberField, min_poly_of_pf_root
from .polynomial import RationalPolynomial, parse_polynomial
from .substitution import (
    Substitution,
    SubstitutionError,
    abelianization,
    compose,
    final_letters_eventually_constant,
    initial_letter_injective,
    is_primitive,
)


class NotParryWithinBound(ArithmeticError):
    pass


class MissingLetter(SubstitutionError):
    def __init__(self, letter):
        self.letter = letter
        super().__init__(f"word does not contain letter {letter}")


class NoThree(SubstitutionError):
    def __init__(self):
        super().__init__("Brun word must contain at least one 3")


class JacobiPerronConstraint(SubstitutionError):
    def __init__(self, index, pair):
        self.index = index
        super().__init__(f"pair {index} = {pair} violates 0 <= a <= b, b != 0")


def beta_field(min_poly) -> NumberField:
    """Field of beta, the largest real root of ``min_poly`` (a polynomial or its text)."""
    if isinstance(min_poly, str):
        min_poly = parse_polynomial(min_poly)
    return min_poly_of_pf_root(min_poly)


# -- beta-transformation ---------------------------------------------------------


@dataclass(frozen=True)
class ParryData:
    field: NumberField
    digits: tuple[int, ...]
    simple: bool
    orbit: tuple[FieldElement, ...]
    preperiod: int | None = None  # for non-simple: orbit[preperiod] repeats
    period: int | None = None

    @property
    def n(self) -> int:
        return len(self.digits)

    def parry_polynomial(self) -> RationalPolynomial:
        """x^n - a_1 x^(n-1) - ... - a_n."""
        return RationalPolynomial([-a for a in reversed(self.digits)] + [1])


def beta_orbit(field: NumberField, max_steps: int = 256) -> ParryData:
    """Iterate T(x) = beta x - floor(beta x) from x = 1 exactly.

    Stops at the first exact zero (simple Parry) or the first repeated
    element (non-simple Parry).
    """
    beta = field.gen
    if not beta > 1:
        raise ValueError("beta must exceed 1")
    x = field.one
    orbit = [x]
    seen = {x.coords: 0}
    digits = []
    for _ in range(max_steps):
        y = beta * x
        a = y.floor()
        x = y - a
        digits.append(a)
        orbit.append(x)
        if x.is_zero():
            data = ParryData(field, tuple(digits), True, tuple(orbit))
            assert digits[0] >= 1 and digits[-1] >= 1
            assert field.from_polynomial(data.parry_polynomial()).is_zero()
            return data
        if x.coords in seen:
            start = seen[x.coords]
            return ParryData(field, tuple(digits), False, tuple(orbit), start, len(orbit) - 1 - start)
        seen[x.coords] = len(orbit) - 1
    raise NotParryWithinBound(f"no zero and no cycle in {max_steps} steps of the beta-transformation")


def beta_substitution(parry: ParryData) -> Substitution:
    """phi(i) = (i+1) 1^{a_i} for i < n and phi(n) = 1^{a_n}."""
    if not parry.simple:
        raise ValueError("beta-substitution is defined for simple Parry numbers only")
    a = parry.digits
    n = len(a)
    if a[0] == 0 or a[-1] == 0:
        raise ValueError("first and last Parry digits must be nonzero")
    images = [(i + 1,) + (1,) * a[i - 1] for i in range(1, n)]
    images.append((1,) * a[-1])
    phi = Substitution(tuple(images))
    assert initial_letter_injective(phi)
    assert final_letters_eventually_constant(phi)[0]
    return phi


# -- greedy expansions ------------------------------------------------------------


@dataclass(frozen=True)
class GreedyExpansion:
    x: FieldElement
    start: int  # index of the leading digit, -N
    digits: tuple[int, ...]  # x_{-N}, ..., x_M

    @property
    def last(self) -> int:
        return self.start + len(self.digits) - 1

    def partial_sum(self, m: int | None = None) -> FieldElement:
        m = self.last if m is None else m
        beta = self.x.field.gen
        total = self.x.field.zero
        for k, digit in zip(range(self.start, m + 1), self.digits):
            total = total + beta ** (-k) * digit
        return total


def greedy_expansion(x, field: NumberField, last: int) -> GreedyExpansion:
    """Greedy digits x_{-N} ... x_M of x >= 0 in base beta.

    N is the least integer >= 0 with x < beta^(N+1). The bound
    0 <= x - sum_{k<=m} x_k beta^-k < beta^-m is checked exactly at every m.
    """
    if not isinstance(x, FieldElement):
        x = field.rational(Fraction(x))
    if x.sign() < 0:
        raise ValueError("greedy expansion needs x >= 0")
    beta = field.gen
    top = beta.floor()
    n = 0
    while not x < beta ** (n + 1):
        n += 1
    if last < -n:
        raise ValueError(f"last index {last} precedes the leading index {-n}")
    s = x * beta ** (-n)  # Horner remainder, in [0, beta)
    digits = []
    total = field.zero
    for k in range(-n, last + 1):
        d = s.floor()
        assert 0 <= d <= top
        digits.append(d)
        s = (s - d) * beta
        total = total + beta ** (-k) * d
        gap = x - total
        assert gap.sign() >= 0 and gap < beta ** (-k), f"greedy bound fails at index {k}"
    return GreedyExpansion(x, -n, tuple(digits))


# -- S-adic families ---------------------------------------------------------------


def _compose_all(subs: list[Substitution]) -> Substitution:
    result = subs[0]
    for s in subs[1:]:
        result = compose(result, s)
    return result


def arnoux_rauzy_letter(d: int, i: int) -> Substitution:
    """sigma_i: i -> i and j -> j i for j != i."""
    return Substitution(tuple((j,) if j == i else (j, i) for j in range(1, d + 1)))


def arnoux_rauzy(d: int, word) -> Substitution:
    word = [int(c) for c in word]
    if not word or any(not 1 <= c <= d for c in word):
        raise SubstitutionError(f"word must be a nonempty word over 1..{d}")
    for letter in range(1, d + 1):
        if letter not in word:
            raise MissingLetter(letter)
    phi = _compose_all([arnoux_rauzy_letter(d, i) for i in word])
    assert is_primitive(abelianization(phi))[0]
    assert initial_letter_injective(phi)
    ok, _, c = final_letters_eventually_constant(phi)
    assert ok and c == word[0]  # the outermost sigma fixes the last letter
    return phi


BRUN = {
    1: Substitution(((1,), (2,), (3, 2))),
    2: Substitution(((1,), (3,), (2, 3))),
    3: Substitution(((2,), (3,), (1, 3))),
}


def brun(word) -> Substitution:
    word = [int(c) for c in word]
    if any(c not in BRUN for c in word):
        raise SubstitutionError("Brun words use the letters 1, 2, 3")
    if 3 not in word:
        raise NoThree()
    return _compose_all([BRUN[c] for c in word])


def jacobi_perron_letter(a: int, b: int) -> Substitution:
    """1 -> 3, 2 -> 1 3^a, 3 -> 2 3^b."""
    return Substitution(((3,), (1,) + (3,) * a, (2,) + (3,) * b))


def jacobi_perron(pairs) -> Substitution:
    pairs = [tuple(p) for p in pairs]
    if not pairs:
        raise SubstitutionError("need at least one (a, b) pair")
    for k, (a, b) in enumerate(pairs, 1):
        if not (0 <= a <= b and b != 0):
            raise JacobiPerronConstraint(k, (a, b))
    return _compose_all([jacobi_perron_letter(a, b) for a, b in pairs])

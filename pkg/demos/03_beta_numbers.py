"""
Beta-numbers, Parry digits and greedy expansions
================================================

Iterate the beta-transformation on 1 in exact arithmetic. A simple Parry
number gives a terminating digit string and hence a beta-substitution.
"""

from fractions import Fraction

from substral import beta_field, beta_orbit, beta_substitution, greedy_expansion, theorem_certify
from substral.polynomial import char_poly
from substral.substitution import abelianization

for poly in ("x^2-x-1", "x^3-x^2-x-1", "x^3-x-1", "x^2-3x+1"):
    field = beta_field(poly)
    data = beta_orbit(field)
    line = f"{poly:14s} beta = {field.gen.decimal(10)}  digits {data.digits}"
    if not data.simple:
        print(line, f"(eventually periodic: preperiod {data.preperiod}, period {data.period})")
        continue
    phi = beta_substitution(data)
    cp = char_poly(abelianization(phi))
    assert (cp % data.parry_polynomial()).is_zero()
    print(line, "->", phi, "|", theorem_certify(phi).verdict.kind.value)

# greedy digits of 1/2 in base golden mean, with the partial-sum bound at each step
field = beta_field("x^2-x-1")
g = greedy_expansion(Fraction(1, 2), field, 8)
print("1/2 =", " + ".join(f"{d}*b^{-k}" for k, d in zip(range(g.start, g.last + 1), g.digits) if d), "+ ...")

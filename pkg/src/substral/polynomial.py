"""Exact univariate polynomials over Q, characteristic polynomials and
real-root isolation by Sturm sequences."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class RationalPolynomial:
    """Polynomial with Fraction coefficients, lowest degree first.

    Instances are immutable; trailing zero coefficients are stripped so the
    zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPolynomial is immutable")

    @classmethod
    def x(cls) -> RationalPolynomial:
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> RationalPolynomial:
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic_integer(self) -> bool:
        return bool(self.coeffs) and self.lead == 1 and all(c.denominator == 1 for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return format_polynomial(self)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return RationalPolynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.lead
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return RationalPolynomial(quot), RationalPolynomial(rem[: other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> RationalPolynomial:
        return RationalPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> RationalPolynomial:
        if self.is_zero():
            return self
        lead = self.lead
        return RationalPolynomial(c / lead for c in self.coeffs)

    def primitive_integer(self) -> RationalPolynomial:
        """Scale to integer coefficients with content 1 and positive lead."""
        if self.is_zero():
            return self
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints)
        if ints[-1] < 0:
            g = -g
        return RationalPolynomial(Fraction(i, g) for i in ints)

    def sign_at(self, x) -> int:
        v = self(x)
        return (v > 0) - (v < 0)


def _as_poly(p) -> RationalPolynomial:
    if isinstance(p, RationalPolynomial):
        return p
    return RationalPolynomial.constant(p)


def poly_gcd(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    """Monic gcd (the zero polynomial if both inputs vanish)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: RationalPolynomial, b: RationalPolynomial):
    """Return (g, s, t) with s*a + t*b = g and g monic."""
    r0, r1 = a, b
    s0, s1 = RationalPolynomial.constant(1), RationalPolynomial()
    t0, t1 = RationalPolynomial(), RationalPolynomial.constant(1)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lead = r0.lead
    return r0.monic(), s0 * (1 / lead), t0 * (1 / lead)


def squarefree_part(p: RationalPolynomial) -> RationalPolynomial:
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def char_poly(matrix) -> RationalPolynomial:
    """det(xI - A) by the Faddeev-LeVerrier recursion (exact over Z)."""
    n = len(matrix)
    a = [[Fraction(v) for v in row] for row in matrix]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        am = [[sum(a[i][l] * m[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            am[i][i] += coeffs[n - k + 1]
        m = am
        tr = sum(sum(a[i][l] * m[l][i] for l in range(n)) for i in range(n))
        coeffs[n - k] = -tr / k
    return RationalPolynomial(coeffs)


# -- Sturm sequences ---------------------------------------------------------


def sturm_sequence(p: RationalPolynomial) -> list[RationalPolynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _variations(seq, x) -> int:
    signs = [s for s in (q.sign_at(x) for q in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_real_roots(seq, a, b) -> int:
    """Number of distinct real roots in (a, b] for a Sturm sequence."""
    return _variations(seq, a) - _variations(seq, b)


def cauchy_bound(p: RationalPolynomial) -> Fraction:
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_largest_real_root(p: RationalPolynomial, width=Fraction(1, 2**32)):
    """Isolating interval (lo, hi] for the largest real root of ``p``.

    Returns ``None`` when ``p`` has no real roots. If a bisection point hits
    the root exactly the interval is degenerate, ``lo == hi``.
    """
    q = squarefree_part(p)
    if q.degree < 1:
        return None
    seq = sturm_sequence(q)
    hi = cauchy_bound(q)
    lo = -hi
    if count_real_roots(seq, lo, hi) == 0:
        return None
    # keep the largest root inside (lo, hi]
    while count_real_roots(seq, lo, hi) > 1:
        mid = (lo + hi) / 2
        if count_real_roots(seq, mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    return refine_root(q, lo, hi, width)


def refine_root(q: RationalPolynomial, lo, hi, width):
    """Bisect an interval (lo, hi] holding exactly one simple root of ``q``."""
    if q(hi) == 0:
        return hi, hi
    s_hi = q.sign_at(hi)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = q.sign_at(mid)
        if s == 0:
            return mid, mid
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi


# -- factorisation -------------------------------------------------------------

MAX_FACTOR_DEGREE = 12


class FactorizationError(ValueError):
    pass


def factor_rational(p: RationalPolynomial) -> list[RationalPolynomial]:
    """Irreducible monic factors of ``p`` over Q (without multiplicity)."""
    if p.degree > MAX_FACTOR_DEGREE:
        raise FactorizationError(
            f"degree {p.degree} exceeds supported factorization degree {MAX_FACTOR_DEGREE}"
        )
    if p.degree < 1:
        return []
    import sympy

    x = sympy.Symbol("x")
    ip = p.primitive_integer()
    expr = sympy.Poly([int(c) for c in reversed(ip.coeffs)], x, domain="ZZ")
    _, factors = expr.factor_list()
    out = []
    for f, _mult in factors:
        coeffs = [Fraction(int(c)) for c in reversed(f.all_coeffs())]
        out.append(RationalPolynomial(coeffs).monic())
    out.sort(key=lambda f: (f.degree, f.coeffs))
    return out


# -- text form -----------------------------------------------------------------

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?
        (?P<var>[a-zA-Z]+(?:\s*\^\s*(?P<exp>\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_polynomial(text: str, variables=("x",)) -> RationalPolynomial:
    """Parse terms like ``3*x^2 - x + 1/2`` (``*`` optional, ``**`` accepted)."""
    s = text.replace("**", "^").strip()
    if not s:
        raise ValueError("empty polynomial")
    pos = 0
    coeffs: dict[int, Fraction] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        sign, coef, var, exp = m.group("sign", "coef", "var", "exp")
        if sign is None and not first:
            raise ValueError(f"missing operator in polynomial {text!r} at position {pos}")
        if coef is None and var is None:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        if var is None:
            k = 0
        else:
            name = var.split("^")[0].strip()
            if name not in variables:
                raise ValueError(f"unknown variable {name!r} in polynomial {text!r}")
            k = int(exp) if exp else 1
        coeffs[k] = coeffs.get(k, Fraction(0)) + c
        pos = m.end()
        first = False
    top = max(coeffs)
    return RationalPolynomial(coeffs.get(k, 0) for k in range(top + 1))


def format_polynomial(p: RationalPolynomial, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out

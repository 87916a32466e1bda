"""The real number field Q(lambda) generated by a Perron-Frobenius root.

Elements are coordinate vectors in the power basis 1, lambda, ..., lambda^(n-1).
Every comparison is decided exactly: the sign of a nonzero element is read
off integer fixed-point bounds for the powers of lambda, and the precision is
raised until the bound excludes zero. Since the minimal polynomial is
irreducible, a nonzero element never embeds to zero, so this terminates.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from math import floor, gcd, isqrt, lcm

from .polynomial import (
    RationalPolynomial,
    char_poly,
    count_real_roots,
    factor_rational,
    isolate_largest_real_root,
    poly_xgcd,
    refine_root,
    sturm_sequence,
)


class FieldMismatch(ValueError):
    pass


class NotAlgebraicInteger(ValueError):
    pass


class NumberField:
    """Q(lambda) for a real root lambda > 1 of a monic irreducible integer polynomial.

    ``root_interval`` is an isolating interval for lambda; it is refined in
    place (under a lock) whenever a comparison needs more precision.
    """

    def __init__(self, min_poly: RationalPolynomial, root_interval):
        if not min_poly.is_monic_integer():
            raise ValueError(f"minimal polynomial must be monic with integer coefficients: {min_poly}")
        lo, hi = (Fraction(v) for v in root_interval)
        if hi <= 1:
            raise ValueError("the distinguished root must exceed 1")
        self.min_poly = min_poly
        self.degree = min_poly.degree
        self._lo, self._hi = lo, hi
        self._lock = threading.Lock()
        self._bounds_cache: dict[int, list[tuple[int, int]]] = {}
        n = self.degree
        # x^(n+j) reduced to the power basis, j = 0 .. n-2
        self._reduction = []
        top = [-c for c in min_poly.coeffs[:n]]
        cur = top
        for _ in range(max(n - 1, 0)):
            self._reduction.append(tuple(cur))
            shifted = [Fraction(0)] + list(cur[:-1])
            carry = cur[-1]
            cur = [s + carry * t for s, t in zip(shifted, top)]
        if n == 1:
            root = -min_poly.coeffs[0]
            self._lo = self._hi = root
        self.zero = FieldElement(self, (Fraction(0),) * n)
        self.one = self.rational(1)
        self.gen = self._generator()

    def _generator(self) -> FieldElement:
        if self.degree == 1:
            return self.rational(-self.min_poly.coeffs[0])
        return FieldElement(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    @property
    def root_interval(self) -> tuple[Fraction, Fraction]:
        with self._lock:
            return self._lo, self._hi

    def __repr__(self):
        return f"NumberField({self.min_poly}, root in [{float(self._lo):.12g}, {float(self._hi):.12g}])"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, NumberField):
            return NotImplemented
        if self.min_poly != other.min_poly:
            return False
        a, b = self.root_interval
        c, d = other.root_interval
        return not (b < c or d < a)

    def __hash__(self):
        return hash(self.min_poly)

    # -- construction of elements ---------------------------------------------

    def rational(self, q) -> FieldElement:
        q = Fraction(q)
        return FieldElement(self, (q,) + (Fraction(0),) * (self.degree - 1))

    def element(self, coords) -> FieldElement:
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            return self.from_polynomial(RationalPolynomial(coords))
        coords += [Fraction(0)] * (self.degree - len(coords))
        return FieldElement(self, tuple(coords))

    def from_polynomial(self, p: RationalPolynomial) -> FieldElement:
        return FieldElement(self, self._reduce(list(p.coeffs)))

    def _reduce(self, cs) -> tuple[Fraction, ...]:
        n = self.degree
        if len(cs) <= n:
            return tuple(cs) + (Fraction(0),) * (n - len(cs))
        if len(cs) > 2 * n - 1:  # beyond the precomputed table
            r = RationalPolynomial(cs) % self.min_poly
            return self._reduce(list(r.coeffs))
        out = list(cs[:n])
        for j, c in enumerate(cs[n:]):
            if c:
                for k, t in enumerate(self._reduction[j]):
                    if t:
                        out[k] += c * t
        return tuple(out)

    # -- certified real embedding ----------------------------------------------

    def refine(self, width: Fraction) -> tuple[Fraction, Fraction]:
        with self._lock:
            if self._hi - self._lo > width:
                self._lo, self._hi = refine_root(self.min_poly, self._lo, self._hi, width)
            return self._lo, self._hi

    def power_bounds(self, prec: int) -> list[tuple[int, int]]:
        """Integer bounds L_k <= lambda^k * 2^prec <= U_k for k < degree."""
        cached = self._bounds_cache.get(prec)
        if cached is not None:
            return cached
        n = self.degree
        # lambda^k has derivative <= k * hi^(k-1); pick interval width accordingly
        lo, hi = self.root_interval
        slack = max(n, 1) * (int(hi) + 2) ** max(n - 1, 0)
        lo, hi = self.refine(Fraction(1, 2 ** (prec + 2) * slack))
        bounds = []
        plo, phi = Fraction(1), Fraction(1)
        scale = 2**prec
        for _ in range(n):
            bounds.append((floor(plo * scale), -floor(-phi * scale)))
            plo *= lo
            phi *= hi
        self._bounds_cache[prec] = bounds
        return bounds

    def embedding_bounds(self, x: FieldElement, prec: int) -> tuple[Fraction, Fraction]:
        """A rational interval of width about 2^-prec containing the real value of x."""
        den = reduce(lcm, (c.denominator for c in x.coords), 1)
        nums = [int(c * den) for c in x.coords]
        lo = hi = 0
        for nk, (lk, uk) in zip(nums, self.power_bounds(prec)):
            if nk > 0:
                lo += nk * lk
                hi += nk * uk
            elif nk < 0:
                lo += nk * uk
                hi += nk * lk
        scale = den * 2**prec
        return Fraction(lo, scale), Fraction(hi, scale)


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: NumberField
    coords: tuple

    def _other(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("elements belong to different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        a, b = self.coords, o.coords
        prod = [Fraction(0)] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return FieldElement(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        g, s, _ = poly_xgcd(RationalPolynomial(self.coords), self.field.min_poly)
        assert g.degree == 0
        return self.field.from_polynomial(s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * self._other(other).inverse()

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.coords == other.coords and (self.field is other.field or self.field == other.field)
        if isinstance(other, (int, Fraction)):
            return self.coords == self.field.rational(other).coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"FieldElement({[str(c) for c in self.coords]} ~ {self.approx():.10g})"

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def sign(self) -> int:
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.coords[0] > 0 else -1
        prec = 64
        while True:
            lo, hi = self.field.embedding_bounds(self, prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2

    def bounds(self, width: Fraction) -> tuple[Fraction, Fraction]:
        """Certified rational interval of width < ``width`` around the value."""
        if self.is_rational():
            return self.coords[0], self.coords[0]
        prec = 64
        while True:
            lo, hi = self.field.embedding_bounds(self, prec)
            if hi - lo < width:
                return lo, hi
            prec *= 2

    def floor(self) -> int:
        if self.is_rational():
            return floor(self.coords[0])
        lo, hi = self.bounds(Fraction(1, 2))
        n = floor(lo)
        if floor(hi) == n:
            return n
        m = n + 1  # the only integer in (lo, hi]
        return m if (self - m).sign() >= 0 else m - 1

    def approx(self) -> float:
        lo, hi = self.bounds(Fraction(1, 2**60))
        return float((lo + hi) / 2)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def decimal(self, digits: int = 20) -> str:
        """Decimal string truncated toward zero to ``digits`` places.

        Rationals with a terminating expansion are printed exactly.
        """
        if self.is_rational():
            return _rational_decimal(self.coords[0], digits)
        width = Fraction(1, 10 ** (digits + 1))
        scale = 10**digits
        while True:
            lo, hi = self.bounds(width)
            a, b = _trunc(lo * scale), _trunc(hi * scale)
            if a == b and (lo > 0) == (hi > 0):
                return _format_scaled(a, digits, negative=hi < 0)
            width /= 2**32


def _trunc(q: Fraction) -> int:
    return int(q)  # toward zero


def _format_scaled(n: int, digits: int, negative: bool) -> str:
    s = str(abs(n)).rjust(digits + 1, "0")
    body = f"{s[:-digits]}.{s[-digits:]}" if digits else s
    if negative:
        body = "-" + body
    return body


def _rational_decimal(q: Fraction, digits: int) -> str:
    den = q.denominator
    while den % 2 == 0:
        den //= 2
    while den % 5 == 0:
        den //= 5
    if den == 1:
        sign = "-" if q < 0 else ""
        a = abs(q)
        ip, frac = divmod(a.numerator, a.denominator)
        if not frac:
            return f"{sign}{ip}"
        out = []
        while frac:
            frac *= 10
            d, frac = divmod(frac, a.denominator)
            out.append(str(d))
        return f"{sign}{ip}." + "".join(out)
    return _format_scaled(_trunc(q * 10**digits), digits, negative=q < 0)


# -- the Perron-Frobenius field ---------------------------------------------------


def min_poly_of_pf_root(p: RationalPolynomial, width=Fraction(1, 2**32)) -> NumberField:
    """Field generated by the largest real root of ``p``.

    ``p`` is factored over Q and the irreducible factor vanishing at that root
    becomes the minimal polynomial.
    """
    iso = isolate_largest_real_root(p, width)
    if iso is None:
        raise ValueError(f"{p} has no real root")
    lo, hi = iso
    for f in factor_rational(p):
        if lo == hi:
            if f(lo) == 0:
                return NumberField(f, (lo, lo))
            continue
        if count_real_roots(sturm_sequence(f), lo, hi) >= 1:
            return NumberField(f, refine_root(f, lo, hi, width))
    raise ArithmeticError("no irreducible factor vanishes at the isolated root")


def pf_field(matrix) -> NumberField:
    return min_poly_of_pf_root(char_poly(matrix))


# -- Pisot test ---------------------------------------------------------------


class Pisot(Enum):
    PISOT = "Pisot"
    NOT_PISOT = "NotPisot"
    BORDERLINE = "Borderline"


@dataclass(frozen=True)
class PisotVerdict:
    verdict: Pisot
    conjugate_moduli: tuple  # rational (lo, hi) modulus intervals, lambda excluded
    digits: int = 0

    def __bool__(self):
        return self.verdict is Pisot.PISOT


def _sqrt_bounds(q: Fraction, bits: int = 96) -> tuple[Fraction, Fraction]:
    scale = 4**bits
    n = q.numerator * scale // q.denominator
    r = isqrt(n)
    lo = Fraction(r, 2**bits)
    hi = Fraction(r + 1, 2**bits)
    if hi * hi < q:  # floor division lost a little
        hi += Fraction(1, 2**bits)
    return lo, hi


def _mpf_fraction(x) -> Fraction:
    import mpmath

    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if not man:
        return Fraction(0)
    v = Fraction(int(man)) * (Fraction(2) ** exp)
    return -v if sign else v


def _complex_eval(coeffs, zr: Fraction, zi: Fraction):
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        ar, ai = ar * zr - ai * zi + c, ar * zi + ai * zr
    return ar, ai


def _root_disks(p: RationalPolynomial, dps: int):
    """Approximate roots with certified inclusion radii (squared)."""
    import mpmath

    n = p.degree
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(
            [int(c) for c in reversed(p.coeffs)], maxsteps=200 + 20 * dps, extraprec=2 * dps
        )
    dp = p.derivative()
    disks = []
    for z in roots:
        zr, zi = _mpf_fraction(mpmath.re(z)), _mpf_fraction(mpmath.im(z))
        vr, vi = _complex_eval(p.coeffs, zr, zi)
        dr, di = _complex_eval(dp.coeffs, zr, zi)
        dnorm = dr * dr + di * di
        if dnorm == 0:
            return None
        # some root lies within n |p(z)| / |p'(z)| of z
        r2 = Fraction(n * n) * (vr * vr + vi * vi) / dnorm
        disks.append((zr, zi, r2))
    return disks


def _disjoint(d1, d2) -> bool:
    (x1, y1, r1), (x2, y2, r2) = d1, d2
    dist2 = (x1 - x2) ** 2 + (y1 - y2) ** 2
    s = _sqrt_bounds(r1)[1] + _sqrt_bounds(r2)[1]
    return dist2 > s * s


def pisot_test(field: NumberField, tolerance=Fraction(1, 10**9)) -> PisotVerdict:
    """Certify that every conjugate of lambda other than itself has modulus < 1.

    Roots are approximated numerically and then enclosed in disks whose radii
    are bounded exactly; precision doubles until every conjugate's modulus
    interval is on one side of 1 or is narrower than ``tolerance``.
    """
    p = field.min_poly
    if not p.is_monic_integer():
        raise NotAlgebraicInteger(str(p))
    if p.degree == 1:
        return PisotVerdict(Pisot.PISOT, ())
    tolerance = Fraction(tolerance)
    dps = 30
    last = None
    while dps <= 2000:
        disks = _root_disks(p, dps)
        if disks is None or not all(
            _disjoint(disks[i], disks[j]) for i in range(len(disks)) for j in range(i)
        ):
            dps *= 2
            continue
        lam_lo, lam_hi = field.refine(Fraction(1, 2 ** (dps * 3)))
        mid = (lam_lo + lam_hi) / 2
        k = min(range(len(disks)), key=lambda i: (disks[i][0] - mid) ** 2 + disks[i][1] ** 2)
        moduli = []
        decided = True
        fine = True
        for i, (x, y, r2) in enumerate(disks):
            if i == k:
                continue
            m_lo, m_hi = _sqrt_bounds(x * x + y * y)
            r_hi = _sqrt_bounds(r2)[1]
            lo, hi = max(Fraction(0), m_lo - r_hi), m_hi + r_hi
            moduli.append((lo, hi))
            if not (hi < 1 or lo >= 1):
                decided = False
                if hi - lo >= tolerance:
                    fine = False
        moduli.sort()
        last = tuple(moduli)
        if decided:
            bad = any(lo >= 1 for lo, _ in moduli)
            return PisotVerdict(Pisot.NOT_PISOT if bad else Pisot.PISOT, last, dps)
        if any(lo >= 1 for lo, _ in moduli):
            return PisotVerdict(Pisot.NOT_PISOT, last, dps)
        if fine:
            break
        dps *= 2
    return PisotVerdict(Pisot.BORDERLINE, last or (), dps)


# -- eigenvector -----------------------------------------------------------------


def left_pf_eigenvector(matrix, field: NumberField) -> tuple[FieldElement, ...]:
    """Positive left eigenvector of ``matrix`` for the field's generator.

    Solved by elimination on (A^T - lambda I) over the field with the last
    coordinate free, then scaled by a positive rational so that the first
    coordinate has coprime integer coordinates.
    """
    d = len(matrix)
    lam = field.gen
    rows = [
        [field.rational(matrix[j][i]) - (lam if i == j else 0) for j in range(d)]
        for i in range(d)
    ]
    pivot_row = 0
    for col in range(d - 1):
        piv = next((r for r in range(pivot_row, d) if not rows[r][col].is_zero()), None)
        if piv is None:
            raise ArithmeticError("degenerate elimination: eigenspace is not one-dimensional")
        rows[pivot_row], rows[piv] = rows[piv], rows[pivot_row]
        inv = rows[pivot_row][col].inverse()
        rows[pivot_row] = [v * inv for v in rows[pivot_row]]
        for r in range(d):
            if r != pivot_row and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
    if d > 1 and any(not v.is_zero() for v in rows[d - 1]):
        raise ArithmeticError("degenerate elimination: lambda is not an eigenvalue")
    omega = [-rows[i][d - 1] for i in range(d - 1)] + [field.one]
    first = omega[0].coords
    den = reduce(lcm, (c.denominator for c in first), 1)
    content = reduce(gcd, (int(c * den) for c in first))
    scale = Fraction(den, content)
    if omega[0].sign() < 0:
        scale = -scale
    omega = [w * scale for w in omega]
    if any(w.sign() <= 0 for w in omega):
        raise ArithmeticError("eigenvector is not positive; is the matrix primitive?")
    return tuple(omega)

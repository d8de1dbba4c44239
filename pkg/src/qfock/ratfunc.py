"""Field of fractions of the Laurent polynomial ring.

A RatFunc is a reduced pair num/den of LaurentPoly.  Canonical form:

  * num and den share no polynomial factor (reduced by multivariate GCD);
  * den is an honest polynomial with componentwise-minimal exponent 0
    (any monomial factor is a unit and lives in num, which may be Laurent);
  * den has integer, globally coprime coefficients and positive
    lex-leading coefficient.

Equality of canonical forms is structural, and doubles as the
cross-multiplication test.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .laurent import (
    LaurentPoly,
    UsageError,
    VarTable,
    _d_divexact,
    _d_gcd,
    _d_strip_monomial,
    poly_divexact,
    poly_gcd,
)

ZERO = Fraction(0)
ONE = Fraction(1)


class RatFunc:
    """A rational function num/den in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None,
                 *, _canonical: bool = False):
        if den is None:
            den = LaurentPoly.one(num.table)
        if _canonical:
            self.num = num
            self.den = den
            return
        if num.table != den.table:
            raise UsageError("num and den use different variable tables")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _reduce(num, den)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, table: VarTable) -> "RatFunc":
        return cls(LaurentPoly.zero(table), LaurentPoly.one(table),
                   _canonical=True)

    @classmethod
    def one(cls, table: VarTable) -> "RatFunc":
        return cls(LaurentPoly.one(table), LaurentPoly.one(table),
                   _canonical=True)

    @classmethod
    def const(cls, table: VarTable, c) -> "RatFunc":
        return cls(LaurentPoly.const(table, c), LaurentPoly.one(table),
                   _canonical=True)

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RatFunc":
        return cls(p, LaurentPoly.one(p.table), _canonical=True)

    @property
    def table(self) -> VarTable:
        return self.num.table

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def as_poly(self) -> LaurentPoly:
        if not self.den.is_one():
            raise UsageError("rational function has a nontrivial denominator")
        return self.num

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        if self.den.is_one():
            return RatFunc(self.num * other.den + other.num, other.den,
                           _canonical=True)
        if other.den.is_one():
            return RatFunc(self.num + other.num * self.den, self.den,
                           _canonical=True)
        # classical reduced addition: with g = gcd(d1, d2) and
        # t = n1 (d2/g) + n2 (d1/g), the sum is (t/g2) / ((d1/g2)(d2/g))
        # for g2 = gcd(t, g), already in lowest terms.
        g = poly_gcd(self.den, other.den)
        if g.is_one():
            num = self.num * other.den + other.num * self.den
            if num.is_zero():
                return RatFunc.zero(self.table)
            return RatFunc(*_finalize(num, self.den * other.den),
                           _canonical=True)
        t = self.num * poly_divexact(other.den, g) + \
            other.num * poly_divexact(self.den, g)
        if t.is_zero():
            return RatFunc.zero(self.table)
        g2 = poly_gcd(t, g)
        num = t if g2.is_one() else poly_divexact(t, g2)
        den = poly_divexact(self.den, g2) * poly_divexact(other.den, g)
        return RatFunc(*_finalize(num, den), _canonical=True)

    def _renormalized(self) -> "RatFunc":
        """Re-normalize a pair already known to be in lowest terms."""
        return RatFunc(*_finalize(self.num, self.den), _canonical=True)

    def __radd__(self, other) -> "RatFunc":
        return self + other

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _canonical=True)

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return RatFunc.zero(self.table)
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, self.den, _canonical=True)
        # cross-cancellation: with both inputs reduced, only num-den pairs
        # across the product can share factors
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_one() else poly_divexact(self.num, g1)
        n2 = other.num if g2.is_one() else poly_divexact(other.num, g2)
        d1 = self.den if g2.is_one() else poly_divexact(self.den, g2)
        d2 = other.den if g1.is_one() else poly_divexact(other.den, g1)
        return RatFunc(*_finalize(n1 * n2, d1 * d2), _canonical=True)

    def __rmul__(self, other) -> "RatFunc":
        return self * other

    def __truediv__(self, other) -> "RatFunc":
        other = self._coerce(other)
        return self * other.inverse()

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFunc.one(self.table)
        for _ in range(n):
            out = out * self
        return out

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.table != self.table:
                raise UsageError("operands use different variable tables")
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(self.table, other)
        if isinstance(other, LaurentPoly):
            return RatFunc.from_poly(other)
        raise UsageError(f"cannot combine RatFunc with {type(other).__name__}")

    # -- substitution / evaluation ----------------------------------------------

    def subst(self, var: int, target) -> "RatFunc":
        num = self.num.subst(var, target)
        den = self.den.subst(var, target)
        if den.is_zero():
            raise ZeroDivisionError("substitution annihilated the denominator")
        return RatFunc(num, den)

    def evaluate(self, assignment, new_table: VarTable | None = None) -> "RatFunc":
        den = self.den.evaluate(assignment, new_table)
        if den.is_zero():
            raise _eval_error()
        num = self.num.evaluate(assignment, den.table)
        return RatFunc(num, den)

    def embed(self, new_table: VarTable) -> "RatFunc":
        return RatFunc(self.num.embed(new_table), self.den.embed(new_table),
                       _canonical=True)

    def rename_signed(self, new_table: VarTable, mapping) -> "RatFunc":
        num = self.num.rename_signed(new_table, mapping)
        den = self.den.rename_signed(new_table, mapping)
        return RatFunc(num, den)

    def tddt(self, var: int) -> "RatFunc":
        """t d/dt by the quotient rule."""
        if self.den.is_one():
            return RatFunc(self.num.tddt(var), self.den, _canonical=True)
        dn = self.num.tddt(var) * self.den - self.num * self.den.tddt(var)
        return RatFunc(dn, self.den * self.den)

    def constant_value(self) -> Fraction:
        if not (self.num.is_constant() and self.den.is_constant()):
            raise UsageError("not a constant")
        if self.num.is_zero():
            return ZERO
        return self.num.constant_value() / self.den.constant_value()

    # -- equality / display --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.den.is_one():
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num}) / ({self.den}))"

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _eval_error():
    from .laurent import EvaluationPointError
    return EvaluationPointError("denominator vanished at the evaluation point")


def _finalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Normalize a pair already in lowest terms: fold the denominator's
    monomial content into the numerator and scale the denominator to coprime
    integer coefficients with positive lead."""
    table = num.table
    if num.is_zero():
        return LaurentPoly.zero(table), LaurentPoly.one(table)
    dd, sd = _d_strip_monomial(dict(den.terms))
    den_p = LaurentPoly(table, dd, _clean=True)
    scale = _normalizing_scale(den_p)
    num_p = num * scale
    if scale != 1:
        den_p = den_p * scale
    if any(sd):
        num_p = num_p.shift(tuple(-s for s in sd))
    return num_p, den_p


def _reduce(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Canonicalize num/den: strip monomial content, divide by the GCD,
    normalize the denominator's coefficients."""
    table = num.table
    if num.is_zero():
        return LaurentPoly.zero(table), LaurentPoly.one(table)
    dn, sn = _d_strip_monomial(dict(num.terms))
    dd, sd = _d_strip_monomial(dict(den.terms))
    g = _d_gcd(dn, dd)
    w = len(table)
    if g != {(0,) * w: ONE}:
        dn = _d_divexact(dn, g)
        dd = _d_divexact(dd, g)
    # normalize den: integer coprime coefficients, positive lex-leading coeff
    den_p = LaurentPoly(table, dd, _clean=True)
    scale = _normalizing_scale(den_p)
    num_p = LaurentPoly(table, dn, _clean=True) * scale
    den_p = den_p * scale
    shift = tuple(a - b for a, b in zip(sn, sd))
    return num_p.shift(shift), den_p


def _normalizing_scale(p: LaurentPoly) -> Fraction:
    """The rational c > 0 (up to sign) making p's coefficients integer and
    coprime with positive lex-leading coefficient."""
    coeffs = list(p.terms.values())
    den_lcm = 1
    for c in coeffs:
        den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
    num_gcd = 0
    for c in coeffs:
        num_gcd = int_gcd(num_gcd, c.numerator * (den_lcm // c.denominator))
    scale = Fraction(den_lcm, num_gcd)
    _, lead = p.lead()
    if lead * scale < 0:
        scale = -scale
    return scale


def rf_reduce(num: LaurentPoly, den: LaurentPoly) -> RatFunc:
    """Build the canonical rational function num/den."""
    return RatFunc(num, den)

"""Sparse exact Laurent polynomials in several variables.

Every exponent in this library lives in (1/2)Z and is stored *doubled*, so a
stored integer e represents the true exponent e/2.  Equivalently, a t-variable
is represented through its square root u = t^(1/2): the stored integer is the
honest integer exponent of u.  Coefficients are exact rationals
(fractions.Fraction).

A polynomial is a dict mapping exponent tuples (one doubled exponent per
variable) to nonzero Fraction coefficients; the zero polynomial stores no
terms.

  t1^(1/2) - t1^(-1/2)   over  VarTable(("t1", "t2"))
      ->  {(1, 0): Fraction(1), (-1, 0): Fraction(-1)}

Monomial order, where one is needed (exact division, canonical forms), is lex
on the exponent tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

Exps = tuple[int, ...]

T_KIND = "t"
Z_KIND = "z"

ZERO = Fraction(0)
ONE = Fraction(1)


class UsageError(ValueError):
    """Caller broke a precondition (mismatched tables, bad variable kind...)."""


class InternalInvariantError(RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""


class EvaluationPointError(ArithmeticError):
    """A denominator vanished at the requested evaluation point."""


@dataclass(frozen=True)
class VarTable:
    """Ordered, immutable list of variable descriptors.

    Each variable has a name and a kind: "t" for correlation variables
    (exponents in (1/2)Z, stored via their square roots) and "z" for charge
    variables (same storage convention).  q is not a table entry; it is the
    series grading variable of HalfSeries.
    """

    names: tuple[str, ...]
    kinds: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.names) != len(self.kinds):
            raise UsageError("names and kinds must have equal length")
        if len(set(self.names)) != len(self.names):
            raise UsageError(f"duplicate variable names: {self.names}")
        for k in self.kinds:
            if k not in (T_KIND, Z_KIND):
                raise UsageError(f"unknown variable kind {k!r}")

    @classmethod
    def make(cls, n_t: int, n_z: int = 0, t_prefix: str = "t",
             z_prefix: str = "z") -> "VarTable":
        names = tuple(f"{t_prefix}{i + 1}" for i in range(n_t)) + tuple(
            f"{z_prefix}{i + 1}" for i in range(n_z))
        kinds = (T_KIND,) * n_t + (Z_KIND,) * n_z
        return cls(names, kinds)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UsageError(f"no variable named {name!r}") from None

    def t_indices(self) -> tuple[int, ...]:
        return tuple(i for i, k in enumerate(self.kinds) if k == T_KIND)

    def z_indices(self) -> tuple[int, ...]:
        return tuple(i for i, k in enumerate(self.kinds) if k == Z_KIND)


def _fr(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise UsageError(f"coefficient must be rational, got {type(x).__name__}")


class LaurentPoly:
    """Sparse Laurent polynomial over a VarTable with Fraction coefficients."""

    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable, terms: Mapping[Exps, Fraction] | None = None,
                 *, _clean: bool = False):
        self.table = table
        if terms is None:
            self.terms: dict[Exps, Fraction] = {}
        elif _clean:
            self.terms = dict(terms)
        else:
            w = len(table)
            clean: dict[Exps, Fraction] = {}
            for e, c in terms.items():
                if len(e) != w:
                    raise UsageError(
                        f"exponent tuple {e} has wrong width (table has {w} variables)")
                c = _fr(c)
                if c != 0:
                    clean[tuple(e)] = c
            self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, table: VarTable) -> "LaurentPoly":
        return cls(table, {}, _clean=True)

    @classmethod
    def const(cls, table: VarTable, c) -> "LaurentPoly":
        c = _fr(c)
        if c == 0:
            return cls.zero(table)
        return cls(table, {(0,) * len(table): c}, _clean=True)

    @classmethod
    def one(cls, table: VarTable) -> "LaurentPoly":
        return cls.const(table, 1)

    @classmethod
    def monomial(cls, table: VarTable, exps: Mapping[int, int], c=1) -> "LaurentPoly":
        """c times the product of var_i^(exps[i]/2) (exponents doubled)."""
        c = _fr(c)
        if c == 0:
            return cls.zero(table)
        e = [0] * len(table)
        for i, v in exps.items():
            e[i] = v
        return cls(table, {tuple(e): c}, _clean=True)

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * len(self.table): ONE}

    def is_constant(self) -> bool:
        z = (0,) * len(self.table)
        return not self.terms or (len(self.terms) == 1 and z in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise UsageError("not a constant polynomial")
        return self.terms.get((0,) * len(self.table), ZERO)

    def coeff(self, exps: Exps) -> Fraction:
        return self.terms.get(tuple(exps), ZERO)

    def min_exps(self) -> Exps:
        """Componentwise minimum exponent over the support (requires nonzero)."""
        if not self.terms:
            raise UsageError("zero polynomial has no support")
        w = len(self.table)
        return tuple(min(e[i] for e in self.terms) for i in range(w))

    def degrees(self) -> Exps:
        if not self.terms:
            raise UsageError("zero polynomial has no support")
        w = len(self.table)
        return tuple(max(e[i] for e in self.terms) for i in range(w))

    def variables_used(self) -> tuple[int, ...]:
        w = len(self.table)
        return tuple(i for i in range(w)
                     if any(e[i] != 0 for e in self.terms))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if self.table is not other.table and self.table != other.table:
            raise UsageError("operands use different variable tables")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(self.table, out, _clean=True)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.table, {e: -c for e, c in self.terms.items()},
                           _clean=True)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            c = _fr(other)
            if c == 0:
                return LaurentPoly.zero(self.table)
            return LaurentPoly(self.table,
                               {e: v * c for e, v in self.terms.items()},
                               _clean=True)
        self._check(other)
        out: dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(self.table, out, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise UsageError("negative powers are RatFunc territory")
        result = LaurentPoly.one(self.table)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shift(self, exps: Exps) -> "LaurentPoly":
        """Multiply by the monomial with the given (doubled) exponents."""
        return LaurentPoly(self.table,
                           {tuple(a + b for a, b in zip(e, exps)): c
                            for e, c in self.terms.items()}, _clean=True)

    # -- the t d/dt operator ------------------------------------------------

    def tddt(self, var: int) -> "LaurentPoly":
        """Apply t d/dt in the given variable.

        A monomial with stored exponent e (true exponent e/2) is an
        eigenvector with eigenvalue e/2.
        """
        if self.table.kinds[var] != T_KIND:
            raise UsageError("tddt applies to t-type variables only")
        out: dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            if e[var]:
                out[e] = c * Fraction(e[var], 2)
        return LaurentPoly(self.table, out, _clean=True)

    # -- substitution and evaluation ----------------------------------------

    def subst(self, var: int, target: Sequence[tuple[int, int]]) -> "LaurentPoly":
        """Replace var by a monomial in other variables.

        target is a sequence of (variable index, +1/-1) pairs; the empty
        sequence substitutes the constant 1.  An occurrence with stored
        exponent e contributes e*sign to each target variable.
        """
        for j, s in target:
            if j == var:
                raise UsageError("substitution target may not involve the variable itself")
            if s not in (1, -1):
                raise UsageError("target exponents must be +1 or -1")
        out: dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            ne = list(e)
            ev = ne[var]
            ne[var] = 0
            for j, s in target:
                ne[j] += ev * s
            ne = tuple(ne)
            s2 = out.get(ne, ZERO) + c
            if s2:
                out[ne] = s2
            else:
                out.pop(ne, None)
        return LaurentPoly(self.table, out, _clean=True)

    def evaluate(self, assignment: Mapping[int, Fraction],
                 new_table: VarTable | None = None) -> "LaurentPoly":
        """Evaluate the given variables at square-root values.

        assignment maps variable index -> value of the variable's square
        root (so a stored exponent e contributes value**e).  Unassigned
        variables survive into the result, which lives over new_table (the
        table with assigned variables removed; built here if not supplied).
        """
        for i, v in assignment.items():
            if _fr(v) == 0:
                raise EvaluationPointError("square-root values must be nonzero")
        keep = [i for i in range(len(self.table)) if i not in assignment]
        if new_table is None:
            new_table = VarTable(tuple(self.table.names[i] for i in keep),
                                 tuple(self.table.kinds[i] for i in keep))
        out: dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            val = c
            for i, v in assignment.items():
                val *= _fr(v) ** e[i]
            ne = tuple(e[i] for i in keep)
            s = out.get(ne, ZERO) + val
            if s:
                out[ne] = s
            else:
                out.pop(ne, None)
        return LaurentPoly(new_table, out, _clean=True)

    def embed(self, new_table: VarTable) -> "LaurentPoly":
        """Reinterpret over a larger table, matching variables by name."""
        pos = [new_table.index(nm) for nm in self.table.names]
        w = len(new_table)
        out: dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            ne = [0] * w
            for i, v in enumerate(e):
                ne[pos[i]] = v
            out[tuple(ne)] = c
        return LaurentPoly(new_table, out, _clean=True)

    def rename_signed(self, new_table: VarTable,
                      mapping: Sequence[tuple[int, int]]) -> "LaurentPoly":
        """Send variable j to new_table variable mapping[j][0], raised to the
        sign mapping[j][1] (so exponents flip for -1 targets)."""
        if len(mapping) != len(self.table):
            raise UsageError("mapping must cover every source variable")
        w = len(new_table)
        out: dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            ne = [0] * w
            for j, (tgt, sgn) in enumerate(mapping):
                if e[j]:
                    ne[tgt] += e[j] * sgn
            ne = tuple(ne)
            s = out.get(ne, ZERO) + c
            if s:
                out[ne] = s
            else:
                out.pop(ne, None)
        return LaurentPoly(new_table, out, _clean=True)

    # -- ordering helpers -----------------------------------------------------

    def lead(self) -> tuple[Exps, Fraction]:
        """Lex-leading (exponents, coefficient)."""
        if not self.terms:
            raise UsageError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    # -- equality / display ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self):
        return hash((self.table, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)})"

    def __str__(self) -> str:
        return format_poly(self)


def format_exponent(e2: int) -> str:
    """Render a doubled exponent as its true value: 3 -> '3/2', 4 -> '2'."""
    if e2 % 2 == 0:
        return str(e2 // 2)
    return f"{e2}/2"


def format_poly(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    bits = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        factors = []
        for i, v in enumerate(e):
            if v == 0:
                continue
            if v == 2:
                factors.append(p.table.names[i])
            else:
                factors.append(f"{p.table.names[i]}^{{{format_exponent(v)}}}")
        mono = "*".join(factors)
        if not mono:
            bits.append(str(c))
        elif c == 1:
            bits.append(mono)
        elif c == -1:
            bits.append(f"-{mono}")
        else:
            bits.append(f"{c}*{mono}")
    out = " + ".join(bits)
    return out.replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Polynomial GCD (recursive PRS with content/primitive-part split)
# ---------------------------------------------------------------------------
#
# These helpers work on raw dicts {exps: coeff} whose exponents are all
# nonnegative (callers strip monomial content first).  The "main variable"
# view keeps full-width tuples and treats one slot as the polynomial variable,
# so coefficient-ring arithmetic is the same dict arithmetic.
#
# Inputs arrive with Fraction coefficients; the PRS itself runs over integer
# coefficients (gcds over the rational field are only defined up to units, so
# clearing denominators is free) because pseudo-remainders swell badly under
# rational normalization.

_Dict = dict


def _exact_div_scalar(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise InternalInvariantError("non-exact coefficient division")
        return q
    return a / b


def _d_add(a: _Dict, b: _Dict) -> _Dict:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _d_neg(a: _Dict) -> _Dict:
    return {e: -c for e, c in a.items()}


def _d_mul(a: _Dict, b: _Dict) -> _Dict:
    out: _Dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _d_pow(a: _Dict, n: int, width: int) -> _Dict:
    out: _Dict = {(0,) * width: 1}
    for _ in range(n):
        out = _d_mul(out, a)
    return out


def _d_divexact(num: _Dict, den: _Dict) -> _Dict:
    """Exact division using lex leading terms; raises if not exact."""
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    if not num:
        return {}
    lden = max(den)
    cden = den[lden]
    rem = dict(num)
    quo: _Dict = {}
    while rem:
        lnum = max(rem)
        qe = tuple(a - b for a, b in zip(lnum, lden))
        if any(x < 0 for x in qe):
            raise InternalInvariantError("non-exact polynomial division")
        qc = _exact_div_scalar(rem[lnum], cden)
        quo[qe] = quo.get(qe, 0) + qc
        for e, c in den.items():
            te = tuple(a + b for a, b in zip(qe, e))
            s = rem.get(te, 0) - qc * c
            if s:
                rem[te] = s
            else:
                rem.pop(te, None)
    return {e: c for e, c in quo.items() if c}


def _d_deg(a: _Dict, v: int) -> int:
    return max((e[v] for e in a), default=-1)


def _d_coeff_of(a: _Dict, v: int, d: int) -> _Dict:
    """Coefficient of x_v^d as a polynomial with slot v zeroed."""
    out: _Dict = {}
    for e, c in a.items():
        if e[v] == d:
            ne = list(e)
            ne[v] = 0
            out[tuple(ne)] = c
    return out


def _d_lc(a: _Dict, v: int) -> _Dict:
    return _d_coeff_of(a, v, _d_deg(a, v))


def _d_mul_var_pow(a: _Dict, v: int, k: int) -> _Dict:
    out: _Dict = {}
    for e, c in a.items():
        ne = list(e)
        ne[v] += k
        out[tuple(ne)] = c
    return out


def _d_prem(f: _Dict, g: _Dict, v: int) -> _Dict:
    """Pseudo-remainder of f by g in variable v: lc(g)^(df-dg+1) f mod g."""
    dg = _d_deg(g, v)
    lg = _d_lc(g, v)
    r = dict(f)
    e = _d_deg(f, v) - dg + 1
    while r:
        dr = _d_deg(r, v)
        if dr < dg:
            break
        lr = _d_lc(r, v)
        r = _d_add(_d_mul(lg, r),
                   _d_neg(_d_mul(_d_mul_var_pow(lr, v, dr - dg), g)))
        e -= 1
    if e > 0 and r:
        width = len(next(iter(r)))
        r = _d_mul(r, _d_pow(lg, e, width))
    return r


def _d_strip_monomial(a: _Dict) -> tuple[_Dict, Exps]:
    """Factor out the componentwise-minimal monomial; returns (stripped, shift)."""
    if not a:
        return a, ()
    w = len(next(iter(a)))
    mins = tuple(min(e[i] for e in a) for i in range(w))
    if all(m == 0 for m in mins):
        return a, mins
    return ({tuple(x - m for x, m in zip(e, mins)): c for e, c in a.items()},
            mins)


def _integerize(a: _Dict) -> _Dict:
    """Scale a Fraction-coefficient dict to coprime integer coefficients."""
    if not a:
        return {}
    if all(isinstance(c, int) for c in a.values()):
        num_gcd = 0
        for c in a.values():
            num_gcd = _int_gcd(num_gcd, c)
        if num_gcd in (0, 1):
            return dict(a)
        return {e: c // num_gcd for e, c in a.items()}
    den_lcm = 1
    for c in a.values():
        d = c.denominator
        den_lcm = den_lcm * d // _int_gcd(den_lcm, d)
    ints = {e: int(c * den_lcm) for e, c in a.items()}
    num_gcd = 0
    for c in ints.values():
        num_gcd = _int_gcd(num_gcd, c)
    if num_gcd > 1:
        ints = {e: c // num_gcd for e, c in ints.items()}
    return ints


def _int_gcd(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)


def _ig_primitive(a: _Dict) -> _Dict:
    """Integer content 1, positive lex-leading coefficient."""
    if not a:
        return {}
    g = 0
    for c in a.values():
        g = _int_gcd(g, c)
    if a[max(a)] < 0:
        g = -g
    if g == 1:
        return dict(a)
    return {e: c // g for e, c in a.items()}


def _ig_content(a: _Dict, v: int) -> _Dict:
    """GCD of the x_v-coefficients (integer dicts)."""
    cont: _Dict = {}
    w = len(next(iter(a)))
    unit_exps = (0,) * w
    for d in sorted({e[v] for e in a}, reverse=True):
        cont = _ig_gcd(cont, _d_coeff_of(a, v, d))
        if len(cont) == 1 and unit_exps in cont and cont[unit_exps] == 1:
            break
    return cont


def _d_mul_var_pow_multi(a: _Dict, shift: Exps) -> _Dict:
    return {tuple(x + s for x, s in zip(e, shift)): c for e, c in a.items()}


def _d_gcd(a: _Dict, b: _Dict) -> _Dict:
    """GCD of polynomials with nonnegative exponents; integer-primitive,
    positive-leading result."""
    return _ig_gcd(_integerize(a), _integerize(b))


def _ig_gcd(a: _Dict, b: _Dict) -> _Dict:
    if not a:
        return _ig_primitive(b)
    if not b:
        return _ig_primitive(a)
    a, sa = _d_strip_monomial(a)
    b, sb = _d_strip_monomial(b)
    w = len(next(iter(a)))
    common = tuple(min(x, y) for x, y in zip(sa, sb)) if sa else (0,) * w
    g = _ig_gcd_core(_ig_primitive(a), _ig_primitive(b))
    if any(common):
        g = _d_mul_var_pow_multi(g, common)
    return g


def _ig_gcd_core(a: _Dict, b: _Dict) -> _Dict:
    w = len(next(iter(a)))
    unit = {(0,) * w: 1}
    if a == b:
        return dict(a)
    if len(a) == 1 or len(b) == 1:
        # after monomial stripping, a single term means a unit
        return unit
    va = {i for e in a for i in range(w) if e[i]}
    vb = {i for e in b for i in range(w) if e[i]}
    both = va & vb
    if not both:
        return unit
    # divisibility shortcut: nested powers of one base dominate the real
    # workload, and one exact division settles them
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    try:
        _d_divexact(large, small)
        return _ig_primitive(small)
    except InternalInvariantError:
        pass
    # main variable: smallest combined degree keeps remainders small
    v = min(both, key=lambda i: _d_deg(a, i) + _d_deg(b, i))
    ca = _ig_content(a, v)
    cb = _ig_content(b, v)
    pa = _d_divexact(a, ca)
    pb = _d_divexact(b, cb)
    cg = _ig_gcd(ca, cb)
    if _ig_probe_coprime(pa, pb, v, w):
        pg = unit
    else:
        pg = _ig_prs_gcd(pa, pb, v)
    g = _ig_primitive(_d_mul(cg, pg))
    # safety net: a gcd must divide both inputs
    try:
        _d_divexact(a, g)
        _d_divexact(b, g)
    except InternalInvariantError:
        raise InternalInvariantError("PRS produced a non-divisor; gcd bug")
    return g


def _ig_probe_coprime(pa: _Dict, pb: _Dict, v: int, w: int) -> bool:
    """Certify that the primitive parts share no factor of positive degree
    in v, by specializing the other variables at integer points.

    If neither leading coefficient drops degree under the specialization,
    any common factor survives with its v-degree intact, so a degree-0
    univariate gcd proves coprimality.  Failure to certify returns False
    (full PRS runs); no wrong answers either way.
    """
    others = [i for i in range(w) if i != v and
              (_d_deg(pa, i) > 0 or _d_deg(pb, i) > 0)]
    if not others:
        return _uni_gcd_degree(_as_univariate(pa, v), _as_univariate(pb, v)) == 0
    da, db = _d_deg(pa, v), _d_deg(pb, v)
    for salt in range(3, 3 + 4):
        point = {i: salt + 2 * k + 1 for k, i in enumerate(others)}
        fa = _specialize(pa, v, point)
        fb = _specialize(pb, v, point)
        if max(fa, default=-1) != da or max(fb, default=-1) != db:
            continue
        if _uni_gcd_degree(fa, fb) == 0:
            return True
        return False
    return False


def _specialize(p: _Dict, v: int, point: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e, c in p.items():
        val = c
        for i, x in point.items():
            if e[i]:
                val *= x ** e[i]
        d = e[v]
        s = out.get(d, 0) + val
        if s:
            out[d] = s
        else:
            out.pop(d, None)
    return out


def _as_univariate(p: _Dict, v: int) -> dict[int, int]:
    return {e[v]: c for e, c in p.items()}


def _uni_gcd_degree(f: dict[int, int], g: dict[int, int]) -> int:
    """Degree of the gcd of univariate integer polynomials (primitive PRS)."""
    def content(p):
        c = 0
        for x in p.values():
            c = _int_gcd(c, x)
        return c or 1

    f = {d: c // content(f) for d, c in f.items()}
    g = {d: c // content(g) for d, c in g.items()}
    while g:
        df, dg = max(f), max(g)
        if df < dg:
            f, g = g, f
            continue
        # pseudo-remainder step
        lcg = g[max(g)]
        r = dict(f)
        while r and max(r) >= dg:
            dr = max(r)
            lcr = r[dr]
            shift = dr - dg
            nr: dict[int, int] = {}
            for d, c in r.items():
                nr[d] = c * lcg
            for d, c in g.items():
                nr[d + shift] = nr.get(d + shift, 0) - c * lcr
            r = {d: c for d, c in nr.items() if c}
        cr = content(r)
        r = {d: c // cr for d, c in r.items()}
        f, g = g, r
    return max(f) if f else 0


def _ig_prs_gcd(f: _Dict, g: _Dict, v: int) -> _Dict:
    """Subresultant PRS on primitive integer inputs; primitive gcd part."""
    w = len(next(iter(f)))
    unit = {(0,) * w: 1}
    if _d_deg(f, v) < _d_deg(g, v):
        f, g = g, f
    r_prev, r_cur = f, g
    first = True
    psi: _Dict = {(0,) * w: -1}
    delta_prev = 0
    delta = _d_deg(r_prev, v) - _d_deg(r_cur, v)
    while True:
        rem = _d_prem(r_prev, r_cur, v)
        if not rem:
            break
        if first:
            beta: _Dict = {(0,) * w: (-1) ** (delta + 1)}
            first = False
        else:
            lc_prev = _d_lc(r_prev, v)
            # psi = (-lc)^delta_prev / psi^(delta_prev - 1)
            num = _d_pow(_d_neg(lc_prev), delta_prev, w)
            if delta_prev >= 1:
                psi = _d_divexact(num, _d_pow(psi, delta_prev - 1, w))
            else:
                psi = _d_mul(num, _d_pow(psi, 1 - delta_prev, w))
            beta = _d_neg(_d_mul(lc_prev, _d_pow(psi, delta, w)))
        rem = _d_divexact(rem, beta)
        delta_prev = delta
        r_prev, r_cur = r_cur, rem
        d_new = _d_deg(r_cur, v)
        if d_new == 0:
            return unit
        delta = _d_deg(r_prev, v) - d_new
    if _d_deg(r_cur, v) == 0:
        return unit
    cont = _ig_content(r_cur, v)
    return _d_divexact(r_cur, cont)


# -- public wrappers ---------------------------------------------------------

def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_tddt(a: LaurentPoly, var: int) -> LaurentPoly:
    return a.tddt(var)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """GCD of the polynomial parts (monomial content handled by the caller).

    Inputs may be Laurent; each is shifted to have min exponent 0 first, and
    the returned gcd is a polynomial with min exponent 0 (monomial factors of
    a Laurent polynomial are units in the Laurent ring).
    """
    if a.table != b.table:
        raise UsageError("operands use different variable tables")
    da, _ = _d_strip_monomial(dict(a.terms))
    db, _ = _d_strip_monomial(dict(b.terms))
    g = _d_gcd(da, db)
    return LaurentPoly(a.table, {e: Fraction(c) for e, c in g.items()},
                       _clean=True)


def poly_divexact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact division in the Laurent ring; raises InternalInvariantError."""
    if num.table != den.table:
        raise UsageError("operands use different variable tables")
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return LaurentPoly.zero(num.table)
    dn, sn = _d_strip_monomial(dict(num.terms))
    dd, sd = _d_strip_monomial(dict(den.terms))
    q = _d_divexact(dn, dd)
    shift = tuple(a - b for a, b in zip(sn, sd))
    return LaurentPoly(num.table, q, _clean=True).shift(shift)

"""Type-B combinatorics: partitions, orthogonal-group labels, the hyperoctahedral
group with its sign characters, weight arithmetic, Weyl denominators, and the
odd-orthogonal character as an exact determinant ratio.

Weights are tuples of Fractions (half-integers appear through rho).  The
hyperoctahedral group W(B_l) of signed permutations carries two characters
used here: the full sign character (-1)^(length), which equals the
determinant of the signed permutation matrix, and the permutation-only sign,
which forgets the sign flips.  The "minus" Weyl denominator is the alternating
sum over the full character; the "plus" variant alternates only over the
permutation sign and equals the determinant with + entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product as iproduct
from typing import Iterator, Sequence

from .laurent import LaurentPoly, UsageError, VarTable, Z_KIND
from .ratfunc import RatFunc

Weight = tuple[Fraction, ...]


def check_partition(parts: Sequence[int], l: int | None = None,
                    allow_negative: bool = False) -> tuple[int, ...]:
    """Validate a weakly decreasing integer sequence; returns it as a tuple."""
    t = tuple(int(p) for p in parts)
    for a, b in zip(t, t[1:]):
        if a < b:
            raise UsageError(f"parts must be weakly decreasing: {t}")
    if not allow_negative and any(p < 0 for p in t):
        raise UsageError(f"parts must be nonnegative: {t}")
    if l is not None and len(t) > l:
        raise UsageError(f"partition {t} has more than {l} parts")
    return t


@dataclass(frozen=True)
class BLabel:
    """An irreducible label: a partition with at most l parts plus a det flag."""

    partition: tuple[int, ...]
    det: bool = False

    def __post_init__(self):
        check_partition(self.partition)


@dataclass(frozen=True)
class SignedPerm:
    """A signed permutation: i -> signs[perm[i]] * (place perm[i]).

    perm is a 0-based permutation tuple (perm[i] is the image of i); signs is
    a +/-1 tuple indexed by position.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise UsageError(f"not a permutation: {self.perm}")
        if len(self.signs) != len(self.perm) or any(s not in (1, -1) for s in self.signs):
            raise UsageError(f"bad sign vector: {self.signs}")

    @property
    def l(self) -> int:
        return len(self.perm)

    def inverse_perm(self) -> tuple[int, ...]:
        inv = [0] * self.l
        for i, p in enumerate(self.perm):
            inv[p] = i
        return tuple(inv)

    def perm_sign(self) -> int:
        sign = 1
        p = self.perm
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                if p[i] > p[j]:
                    sign = -sign
        return sign

    def sign_character(self) -> int:
        """(-1)^length = det of the signed permutation matrix."""
        s = self.perm_sign()
        for x in self.signs:
            s *= x
        return s

    def compose(self, other: "SignedPerm") -> "SignedPerm":
        """self after other, so act(a.compose(b), v) == act(a, act(b, v))."""
        if self.l != other.l:
            raise UsageError("rank mismatch")
        inv_a = self.inverse_perm()
        perm = tuple(self.perm[other.perm[i]] for i in range(self.l))
        signs = tuple(self.signs[i] * other.signs[inv_a[i]] for i in range(self.l))
        return SignedPerm(perm, signs)


def rho_B(l: int) -> Weight:
    """(l - 1/2, l - 3/2, ..., 1/2)."""
    if l < 0:
        raise UsageError("rank must be nonnegative")
    return tuple(Fraction(2 * (l - i) + 1, 2) for i in range(1, l + 1))


def enumerate_WB(l: int) -> Iterator[tuple[SignedPerm, int]]:
    """All 2^l l! signed permutations with the full sign character."""
    for perm in permutations(range(l)):
        for signs in iproduct((1, -1), repeat=l):
            sp = SignedPerm(tuple(perm), tuple(signs))
            yield sp, sp.sign_character()


def act(sigma: SignedPerm, v: Weight) -> Weight:
    """Permute then flip: result[i] = signs[i] * v[perm^(-1)(i)]."""
    if sigma.l != len(v):
        raise UsageError("rank mismatch")
    inv = sigma.inverse_perm()
    return tuple(sigma.signs[i] * v[inv[i]] for i in range(sigma.l))


def norm_sq(v: Weight) -> Fraction:
    return sum((Fraction(x) * Fraction(x) for x in v), Fraction(0))


def sign_vectors(n: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """All vectors in {+1,-1}^n with their products."""
    for eps in iproduct((1, -1), repeat=n):
        p = 1
        for e in eps:
            p *= e
        yield eps, p


def pad_weight(parts: Sequence[int], l: int) -> Weight:
    t = tuple(Fraction(p) for p in parts) + (Fraction(0),) * (l - len(parts))
    if len(t) != l:
        raise UsageError(f"weight {parts} does not fit rank {l}")
    return t


def _z_vars(table: VarTable, l: int, z_indices: Sequence[int] | None) -> tuple[int, ...]:
    if z_indices is None:
        z_indices = table.z_indices()
    if len(z_indices) != l:
        raise UsageError(f"need {l} z-variables, got {len(z_indices)}")
    for i in z_indices:
        if table.kinds[i] != Z_KIND:
            raise UsageError("Weyl denominators live in z-variables")
    return tuple(z_indices)


def weyl_denominator_B(l: int, table: VarTable,
                       z_indices: Sequence[int] | None = None,
                       variant: str = "minus") -> LaurentPoly:
    """The signed sum over W(B_l) of z^(sigma(rho)).

    variant "minus" uses the full sign character (the type-B Weyl
    denominator); variant "plus" uses the permutation sign only (the
    alternant with + entries, used for twisted-trace extraction).
    """
    if variant not in ("minus", "plus"):
        raise UsageError(f"unknown denominator variant {variant!r}")
    zi = _z_vars(table, l, z_indices)
    rho = rho_B(l)
    out = LaurentPoly.zero(table)
    for sigma, char in enumerate_WB(l):
        if variant == "plus":
            char = sigma.perm_sign()
        w = act(sigma, rho)
        exps = {zi[i]: int(2 * w[i]) for i in range(l)}
        out = out + LaurentPoly.monomial(table, exps, char)
    return out


def weyl_denominator_det(l: int, table: VarTable,
                         z_indices: Sequence[int] | None = None,
                         variant: str = "minus") -> LaurentPoly:
    """det(z_j^(rho_i) -/+ z_j^(-rho_i)) expanded over the Laurent ring."""
    zi = _z_vars(table, l, z_indices)
    rho = rho_B(l)
    return _alternant_det(table, zi, rho, variant)


def _alternant_det(table: VarTable, zi: Sequence[int], exps: Weight,
                   variant: str) -> LaurentPoly:
    l = len(exps)
    sign = -1 if variant == "minus" else 1
    out = LaurentPoly.zero(table)
    for perm in permutations(range(l)):
        psign = SignedPerm(tuple(perm), (1,) * l).perm_sign()
        term = LaurentPoly.const(table, psign)
        for j in range(l):
            i = perm[j]  # row index assigned to column j
            e2 = int(2 * exps[i])
            entry = (LaurentPoly.monomial(table, {zi[j]: e2})
                     + sign * LaurentPoly.monomial(table, {zi[j]: -e2}))
            term = term * entry
        out = out + term
    return out


def char_numerator_B(lam: Sequence[int], l: int, table: VarTable,
                     z_indices: Sequence[int] | None = None,
                     variant: str = "minus") -> LaurentPoly:
    """det(z_j^(lam_i+rho_i) -/+ z_j^(-(lam_i+rho_i)))."""
    zi = _z_vars(table, l, z_indices)
    lam = check_partition(lam, l)
    rho = rho_B(l)
    nu = tuple(Fraction(lam[i]) + rho[i] if i < len(lam) else rho[i]
               for i in range(l))
    return _alternant_det(table, zi, nu, variant)


def char_B(lam: Sequence[int], l: int, table: VarTable | None = None,
           z_indices: Sequence[int] | None = None) -> RatFunc:
    """Odd-orthogonal character as the exact ratio of two determinants.

    The quotient is a Laurent polynomial; a nontrivial denominator after
    reduction indicates a bug.
    """
    if table is None:
        table = VarTable.make(0, l)
    num = char_numerator_B(lam, l, table, z_indices, "minus")
    den = weyl_denominator_det(l, table, z_indices, "minus")
    r = RatFunc(num, den)
    if not r.den.is_one():
        from .laurent import InternalInvariantError
        raise InternalInvariantError("character ratio failed to divide exactly")
    return r

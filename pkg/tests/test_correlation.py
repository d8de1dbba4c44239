"""Correlation-engine tests: closed forms, vacuum recursion, block functions."""

import pytest

from qfock.laurent import LaurentPoly, UsageError, VarTable
from qfock.ratfunc import RatFunc
from qfock.series import HalfSeries
from qfock.special import f_bo, pochhammer_inf, qq_inf
from qfock.weylb import BLabel
from qfock.correlation import (
    d_half_vacuum,
    d_sum_function,
    d_twisted_function,
    fock_trace_at_sign,
    fock_trace_closed,
    gl_function,
    irreducible_function,
    pair_block,
    vacuum_one_point_series,
)

N2 = 6


def x_inv(table, i=0):
    return RatFunc(LaurentPoly.monomial(table, {i: 1}),
                   LaurentPoly.monomial(table, {i: 2}) - LaurentPoly.one(table))


class TestGlFunction:
    def test_simplest_case(self):
        # one pair, one point, weight (m): q^(m^2/2) t^m F_bo
        tab = VarTable.make(1)
        fb = f_bo(1, N2, tab, (0,))
        for m in (0, 1, 2, -1):
            got = gl_function((m,), 1, 1, N2, tab, (0,))
            want = fb.scale(LaurentPoly.monomial(tab, {0: 2 * m})) * \
                HalfSeries.q_power(tab, N2, m * m)
            assert got.eq_upto(want), (m, got.first_mismatch(want))

    def test_weight_zero_is_the_kernel(self):
        tab = VarTable.make(1)
        got = gl_function((0,), 1, 1, N2, tab, (0,))
        assert got.eq_upto(f_bo(1, N2, tab, (0,)))

    def test_rank_two_vacuum(self):
        tab = VarTable.make(1)
        fb = f_bo(1, N2, tab, (0,))
        got = gl_function((0, 0), 2, 1, N2, tab, (0,))
        want = (fb * fb) * HalfSeries(tab, N2, {0: 1, 2: -1})
        assert got.eq_upto(want)

    def test_wrong_length_rejected(self):
        with pytest.raises(UsageError):
            gl_function((1,), 2, 1, N2)
        with pytest.raises(UsageError):
            gl_function((0, 1), 2, 1, N2)  # not weakly decreasing


class TestFockTraceClosed:
    def test_leading_coefficient(self):
        # z^0 q^0 coefficient for one point: 2/(t^(1/2)-t^(-1/2))
        tab = VarTable.make(1, 1)
        tr = fock_trace_closed(1, N2, tab, (0,), 1)
        c = tr.coeff(0)
        # z-degree 0 part only at q^0
        assert c == x_inv(tab) * 2

    def test_zero_points(self):
        tab = VarTable.make(0, 1)
        tr = fock_trace_closed(0, N2, tab, (), 0)
        qq = qq_inf(tab, N2).inverse()
        want = HalfSeries.zero(tab, N2)
        for k in (-2, -1, 0, 1, 2):
            if k * k <= N2:
                want = want + (qq * HalfSeries.q_power(tab, N2, k * k)).scale(
                    LaurentPoly.monomial(tab, {0: 2 * k}))
        assert tr.eq_upto(want)

    def test_sign_specialization_matches_twisted_k_sum(self):
        tab = VarTable.make(1)
        minus = fock_trace_at_sign(1, N2, -1, tab, (0,))
        acc = HalfSeries.zero(tab, N2)
        for k in (-2, -1, 0, 1, 2):
            blk = pair_block(tab, (0,), k, N2)
            acc = acc + (-blk if k % 2 else blk)
        assert minus.eq_upto(acc)


class TestVacuum:
    def test_bases(self):
        tab = VarTable.make(0)
        tw = d_half_vacuum(0, N2, True, tab, ())
        un = d_half_vacuum(0, N2, False, tab, ())
        assert tw.eq_upto(pochhammer_inf(tab, N2, 1))
        assert un.eq_upto(pochhammer_inf(tab, N2, 1, coeff=-1))
        # untwisted base counts partitions into distinct half-odd parts
        got = {e2: c.constant_value() for e2, c in un.items()}
        assert got == {0: 1, 1: 1, 3: 1, 4: 1, 5: 1, 6: 1}

    def test_one_point_leading(self):
        tab = VarTable.make(1)
        tw = d_half_vacuum(1, N2, True, tab, (0,))
        assert tw.coeff(0) == x_inv(tab)

    def test_one_point_classical_series(self):
        tab = VarTable.make(1)
        tw = d_half_vacuum(1, N2, True, tab, (0,))
        good = vacuum_one_point_series(N2, "q-step", tab, 0)
        assert tw.eq_upto(good)
        bad = vacuum_one_point_series(N2, "half-step", tab, 0)
        mm = tw.first_mismatch(bad)
        assert mm is not None and mm[0] == 2  # differs first at q^1

    def test_permutation_symmetry(self):
        tab = VarTable.make(2)
        v = d_half_vacuum(2, N2, True, tab, (0, 1))
        swapped = v.rename_signed(tab, [(1, 1), (0, 1)])
        assert v.eq_upto(swapped)

    def test_three_point_subset_identity_symbolic(self):
        from itertools import combinations
        from qfock.fock import FockSpace, oracle_trace
        tab = VarTable.make(3)
        ti = (0, 1, 2)
        closed = fock_trace_at_sign(3, 4, -1, tab, ti)
        oracle = oracle_trace(FockSpace(1, neutral=False), 4, tab, ti,
                              parity_sign=True, parity_source="total")
        assert closed.eq_upto(oracle)
        rhs = HalfSeries.zero(tab, 4)
        for r in range(4):
            for I in combinations(range(3), r):
                Ic = tuple(i for i in ti if i not in I)
                rhs = rhs + d_half_vacuum(len(I), 4, True, tab, I) * \
                    d_half_vacuum(len(Ic), 4, True, tab, Ic)
        assert oracle.eq_upto(rhs)


class TestDFunctions:
    def test_rank_zero_reduces_to_vacuum(self):
        tab = VarTable.make(1)
        for twisted, fn in ((False, d_sum_function), (True, d_twisted_function)):
            got = fn((), 0, 1, N2, "convolved", tab, (0,))
            want = d_half_vacuum(1, N2, twisted, tab, (0,))
            assert got.eq_upto(want)

    def test_printed_rank_zero_agrees(self):
        tab = VarTable.make(1)
        a = d_sum_function((), 0, 1, N2, "convolved", tab, (0,))
        b = d_sum_function((), 0, 1, N2, "printed", tab, (0,))
        assert a.eq_upto(b)

    def test_zero_points_match_graded_dimensions(self):
        from qfock.qdim import QDimForm, q_minus, q_plus
        tab = VarTable.make(0)
        for lam, l in (((), 1), ((1,), 1), ((0,), 1), ((2, 1), 2)):
            plus = d_sum_function(lam, l, 0, N2, "convolved", tab, ())
            minus = d_twisted_function(lam, l, 0, N2, "convolved", tab, ())
            lam_n = tuple(p for p in lam if p)
            assert plus.eq_upto(q_plus(lam_n, l, N2, QDimForm(), tab))
            assert minus.eq_upto(q_minus(lam_n, l, N2, QDimForm(), tab))

    def test_leading_coefficients_rank_one(self):
        # q^0: vacuum eigenvalue (2l+1)/(t^(1/2)-t^(-1/2)) for the plain sum
        tab = VarTable.make(1)
        got = d_sum_function((), 1, 1, N2, "convolved", tab, (0,))
        assert got.coeff(0) == x_inv(tab) * 3

    def test_printed_leading_differs(self):
        tab = VarTable.make(1)
        got = d_sum_function((), 1, 1, N2, "printed", tab, (0,))
        assert got.coeff(0) == x_inv(tab) * x_inv(tab) * 2

    def test_permutation_symmetry(self):
        tab = VarTable.make(2)
        for fn in (d_sum_function, d_twisted_function):
            s = fn((1,), 1, 2, 4, "convolved", tab, (0, 1))
            swapped = s.rename_signed(tab, [(1, 1), (0, 1)])
            assert s.eq_upto(swapped)

    def test_irreducible_flags_sum(self):
        tab = VarTable.make(1)
        for lam, l in (((), 1), ((1,), 1)):
            plain = d_sum_function(lam, l, 1, N2, "convolved", tab, (0,))
            a = irreducible_function(BLabel(lam, False), l, 1, N2,
                                     "convolved", tab, (0,))
            b = irreducible_function(BLabel(lam, True), l, 1, N2,
                                     "convolved", tab, (0,))
            assert (a + b).eq_upto(plain)

    def test_rank_zero_irreducible_series(self):
        # even/odd counts of distinct half-odd parts
        tab = VarTable.make(0)
        even = irreducible_function(BLabel((), False), 0, 0, 9, "convolved",
                                    tab, ())
        odd = irreducible_function(BLabel((), True), 0, 0, 9, "convolved",
                                   tab, ())
        assert {e2: c.constant_value() for e2, c in even.items()} == \
            {0: 1, 4: 1, 6: 1, 8: 2}
        assert {e2: c.constant_value() for e2, c in odd.items()} == \
            {1: 1, 3: 1, 5: 1, 7: 1, 9: 2}

    def test_arity_guard(self):
        with pytest.raises(UsageError):
            d_sum_function((1, 1), 1, 1, N2)

    def test_rank_two_with_insertions_matches_oracle(self):
        # beyond the acceptance grid: three tensor slots, eight Weyl elements
        from fractions import Fraction
        from qfock.fock import FockSpace, oracle_trace, extract_module_function
        space = FockSpace(2, neutral=True)
        for n, asn in ((1, {0: Fraction(7, 4)}),
                       (2, {0: Fraction(7, 4), 1: Fraction(-3, 2)})):
            tabz = VarTable.make(n, 2)
            ftab = VarTable.make(n)
            ti = tuple(range(n))
            zi = (n, n + 1)
            tru = oracle_trace(space, 4, tabz, ti, z_indices=zi, assignment=asn)
            trt = oracle_trace(space, 4, tabz, ti, z_indices=zi,
                               parity_sign=True, assignment=asn)
            for lam in ((), (1, 1), (2, 1)):
                f_u = d_sum_function(lam, 2, n, 4, "convolved", ftab, ti,
                                     assignment=asn)
                ext_u = extract_module_function(tru, lam, 2, None, "minus")
                assert f_u.eq_upto(ext_u), (n, lam, f_u.first_mismatch(ext_u))
                f_t = d_twisted_function(lam, 2, n, 4, "convolved", ftab, ti,
                                         assignment=asn)
                ext_t = extract_module_function(trt, lam, 2, None, "plus")
                assert f_t.eq_upto(ext_t), (n, lam, f_t.first_mismatch(ext_t))

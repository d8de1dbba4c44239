"""Fock-oracle tests: state enumeration, operator algebra, traces, extraction."""

import random
from fractions import Fraction

import pytest

from qfock.laurent import LaurentPoly, UsageError, VarTable
from qfock.ratfunc import RatFunc
from qfock.weylb import BLabel
from qfock.correlation import d_half_vacuum, irreducible_function
from qfock.fock import (
    FockSpace,
    FockState,
    Gradings,
    annihilate,
    apply_D,
    apply_field,
    create,
    enumerate_states,
    extract_module_function,
    irreducible_from_projected,
    oracle_trace,
)

SP0 = FockSpace(0, True)
SP1 = FockSpace(1, True)
PAIR = FockSpace(1, False)


def x_inv(table, i=0):
    return RatFunc(LaurentPoly.monomial(table, {i: 1}),
                   LaurentPoly.monomial(table, {i: 2}) - LaurentPoly.one(table))


def rand_state(rng, space, max2=5):
    fams = []
    for _ in range(space.families):
        modes = [m for m in range(1, max2 + 1, 2) if rng.random() < 0.4]
        fams.append(tuple(sorted(modes, reverse=True)))
    return FockState(tuple(fams))


class TestStates:
    def test_level_sizes_neutral_only(self):
        sizes = {e2: len(s) for e2, s in enumerate_states(SP0, 4).items()}
        assert sizes == {0: 1, 1: 1, 2: 0, 3: 1, 4: 1}

    def test_level_half_one_pair(self):
        assert len(enumerate_states(SP1, 1)[1]) == 3

    def test_vacuum_only_at_zero(self):
        levels = enumerate_states(SP1, 0)
        assert levels[0] == [FockState.vacuum(SP1)]

    def test_gradings_recompute(self):
        rng = random.Random(20)
        for _ in range(50):
            st = rand_state(rng, SP1)
            g = Gradings.of(st, SP1)
            assert g.energy2 == sum(sum(f) for f in st.modes)
            assert g.charges == (len(st.modes[0]) - len(st.modes[1]),)
            assert g.alpha_parity == len(st.modes[2]) % 2

    def test_invalid_modes_rejected(self):
        with pytest.raises(UsageError):
            FockState(((2,),))
        with pytest.raises(UsageError):
            FockState(((1, 3),))  # must strictly decrease


class TestOperatorAlgebra:
    def test_create_annihilate_inverse(self):
        rng = random.Random(21)
        for _ in range(100):
            st = rand_state(rng, SP1)
            fam = rng.randrange(SP1.families)
            m2 = rng.choice([1, 3, 5])
            r = create(st, fam, m2)
            if r is None:
                s, st2 = annihilate(st, fam, m2)
                s2, st3 = create(st2, fam, m2)
                assert st3 == st and s * s2 == 1
            else:
                s, st2 = r
                s2, st3 = annihilate(st2, fam, m2)
                assert st3 == st and s * s2 == 1

    def test_anticommutators(self):
        """Mode operators obey the canonical anticommutation relations:
        {a_x, a*_y} = delta_xy and {a_x, a_y} = {a*_x, a*_y} = 0, exercised
        across families and modes up to 5/2 on random states."""
        rng = random.Random(22)
        slots = [(fam, m2) for fam in range(SP1.families) for m2 in (1, 3, 5)]

        def op(kind, slot):
            def run(vec):
                out = {}
                for st, c in vec.items():
                    r = (create if kind == "c" else annihilate)(st, *slot)
                    if r is not None:
                        s, st2 = r
                        out[st2] = out.get(st2, 0) + s * c
                return {k: v for k, v in out.items() if v}
            return run

        def add(a, b):
            out = dict(a)
            for k, v in b.items():
                out[k] = out.get(k, 0) + v
            return {k: v for k, v in out.items() if v}

        for _ in range(200):
            st = rand_state(rng, SP1)
            vec = {st: 1}
            x = rng.choice(slots)
            y = rng.choice(slots)
            kx = rng.choice("ca")
            ky = rng.choice("ca")
            lhs = add(op(kx, x)(op(ky, y)(vec)), op(ky, y)(op(kx, x)(vec)))
            if x == y and kx != ky:
                assert lhs == vec, (x, y, kx, ky, st)
            else:
                assert lhs == {}, (x, y, kx, ky, st)

    def test_field_addressing(self):
        vac = FockState.vacuum(SP1)
        s, st = apply_field(vac, SP1, "psi+", 0, -1)
        assert st.modes[0] == (1,) and s == 1
        # psi-_{+1} annihilates the plus excitation
        s2, st2 = apply_field(st, SP1, "psi-", 0, 1)
        assert st2 == vac and s2 == 1
        assert apply_field(vac, SP1, "psi+", 0, 1) is None
        with pytest.raises(UsageError):
            apply_field(vac, SP1, "phi", 0, 2)

    def test_parity_counts_neutral_modes_only(self):
        # neutral mode operators flip the parity grading; pair operators
        # leave it alone
        rng = random.Random(24)
        for _ in range(100):
            st = rand_state(rng, SP1)
            p = st.alpha_parity(SP1)
            for r2 in (-1, 1, -3, 3):
                r = apply_field(st, SP1, "phi", 0, r2)
                if r is not None:
                    assert r[1].alpha_parity(SP1) == 1 - p
                r = apply_field(st, SP1, "psi+", 0, r2)
                if r is not None:
                    assert r[1].alpha_parity(SP1) == p


class TestApplyD:
    def test_vacuum_neutral_space(self):
        tab = VarTable.make(1)
        sv = apply_D(FockState.vacuum(SP0), SP0, tab, 0)
        assert sv == {FockState.vacuum(SP0): x_inv(tab)}

    def test_single_neutral_excitation(self):
        tab = VarTable.make(1)
        st = FockState(((1,),))
        sv = apply_D(st, SP0, tab, 0)
        u = LaurentPoly.monomial(tab, {0: 1})
        ui = LaurentPoly.monomial(tab, {0: -1})
        want = RatFunc.from_poly(u - ui) + x_inv(tab)
        assert sv == {st: want}

    def test_central_scalar_scales_with_space(self):
        tab = VarTable.make(1)
        sv = apply_D(FockState.vacuum(SP1), SP1, tab, 0)
        assert sv == {FockState.vacuum(SP1): x_inv(tab) * 3}

    def test_energy_preserved(self):
        rng = random.Random(23)
        tab = VarTable.make(1)
        for _ in range(60):
            st = rand_state(rng, SP1)
            for st2 in apply_D(st, SP1, tab, 0):
                assert st2.energy2() == st.energy2()


class TestTraces:
    def test_neutral_bases(self):
        tab = VarTable.make(0)
        tw = oracle_trace(SP0, 6, tab, (), parity_sign=True)
        got = {e2: c.constant_value() for e2, c in tw.items()}
        assert got == {0: 1, 1: -1, 3: -1, 4: 1, 5: -1, 6: 1}
        un = oracle_trace(SP0, 6, tab, ())
        assert {e2: c.constant_value() for e2, c in un.items()} == \
            {0: 1, 1: 1, 3: 1, 4: 1, 5: 1, 6: 1}

    def test_cyclic_invariance(self):
        tab = VarTable.make(2)
        a = oracle_trace(SP1, 4, tab, (0, 1))
        b = oracle_trace(SP1, 4, tab, (1, 0))
        assert a.eq_upto(b)

    def test_charge_parity_blocks(self):
        """Elementary bilinears change each pair charge by 0 or +/-2, so the
        graded trace is supported on even-charge differences from zero."""
        tab = VarTable.make(1, 1)
        tr = oracle_trace(SP1, 4, tab, (0,), z_indices=(1,))
        for _, c in tr.items():
            assert all(e[1] % 2 == 0 for e in c.num.terms)

    def test_projectors_partition_the_trace(self):
        tab = VarTable.make(1)
        full = oracle_trace(SP1, 4, tab, (0,))
        even = oracle_trace(SP1, 4, tab, (0,), parity_projector="even")
        odd = oracle_trace(SP1, 4, tab, (0,), parity_projector="odd")
        assert (even + odd).eq_upto(full)
        signed = oracle_trace(SP1, 4, tab, (0,), parity_sign=True)
        assert (even - odd).eq_upto(signed)

    def test_eval_mode_matches_symbolic(self):
        tab = VarTable.make(1, 1)
        pt = {0: Fraction(7, 3)}
        sym = oracle_trace(SP1, 4, tab, (0,), z_indices=(1,)).evaluate(pt)
        ev = oracle_trace(SP1, 4, tab, (0,), z_indices=(1,), assignment=pt)
        assert sym.eq_upto(ev)

    def test_pair_space_isomorphism_identity(self):
        # one complex pair vs two neutral copies: subset convolution
        tab = VarTable.make(1)
        tw = oracle_trace(PAIR, 6, tab, (0,), parity_sign=True,
                          parity_source="total")
        conv = d_half_vacuum(1, 6, True, tab, (0,)) * \
            d_half_vacuum(0, 6, True, tab, ()) * 2
        assert tw.eq_upto(conv)


class TestExtraction:
    def test_rank_zero_is_identity(self):
        tab = VarTable.make(1)
        tr = oracle_trace(SP0, 4, tab, (0,), parity_sign=True)
        ext = extract_module_function(tr, (), 0)
        assert ext.eq_upto(tr)

    def test_projector_route_matches_formula(self):
        tab = VarTable.make(1, 1)
        even = oracle_trace(SP1, 6, tab, (0,), z_indices=(1,),
                            parity_projector="even")
        odd = oracle_trace(SP1, 6, tab, (0,), z_indices=(1,),
                           parity_projector="odd")
        ftab = VarTable.make(1)
        for det in (False, True):
            ext = irreducible_from_projected(even, odd, (), 1, det)
            frm = irreducible_function(BLabel((), det), 1, 1, 6, "convolved",
                                       ftab, (0,))
            assert frm.eq_upto(ext), frm.first_mismatch(ext)

    def test_qdim_extraction(self):
        from qfock.qdim import qdim_irreducible
        tab = VarTable.make(0, 1)
        even = oracle_trace(SP1, 8, tab, (), z_indices=(0,),
                            parity_projector="even")
        odd = oracle_trace(SP1, 8, tab, (), z_indices=(0,),
                           parity_projector="odd")
        for lam in ((), (1,)):
            for det in (False, True):
                ext = irreducible_from_projected(even, odd, lam, 1, det)
                assert ext.eq_upto(qdim_irreducible(BLabel(lam, det), 1, 8))

    def test_out_of_range_coefficient(self):
        tab = VarTable.make(1)
        tr = oracle_trace(SP0, 4, tab, (0,))
        with pytest.raises(UsageError):
            tr.coeff(6)

"""CLI and serialization tests."""

import io
import json
import random
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction

from qfock.laurent import LaurentPoly, VarTable
from qfock.ratfunc import RatFunc
from qfock.series import HalfSeries
from qfock.cli import main, series_from_json, series_to_json


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def rand_series(rng, trunc2=6):
    table = VarTable.make(2, 1)
    terms = {}
    for e2 in range(-2, trunc2 + 1):
        if rng.random() < 0.5:
            num = {}
            for _ in range(rng.randint(1, 3)):
                e = tuple(rng.randint(-3, 3) for _ in range(3))
                num[e] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            np = LaurentPoly(table, num)
            if np.is_zero():
                continue
            den = LaurentPoly.monomial(table, {0: 2}) + LaurentPoly.const(
                table, rng.randint(1, 3))
            terms[e2] = RatFunc(np, den if rng.random() < 0.5 else
                                LaurentPoly.one(table))
    return HalfSeries(table, trunc2, terms)


class TestSerialization:
    def test_round_trip_random(self):
        rng = random.Random(31)
        for _ in range(25):
            s = rand_series(rng)
            data = json.loads(json.dumps(series_to_json(s)))
            back = series_from_json(data)
            assert back == s

    def test_schema_fields(self):
        s = HalfSeries(VarTable.make(1), 3, {3: Fraction(1, 2)})
        data = series_to_json(s)
        assert data["variables"] == ["t1"]
        assert data["order_x2"] == 3
        assert data["terms"][0]["q_x2"] == 3
        assert data["terms"][0]["coeff"]["num"] == [
            {"exps_x2": [0], "val": "1/2"}]
        assert data["terms"][0]["coeff"]["den"] == [
            {"exps_x2": [0], "val": "1"}]


class TestCompute:
    def test_theta_order_zero(self):
        code, out, _ = run_cli("compute", "--family", "theta", "--order", "0")
        assert code == 0
        data = json.loads(out)
        assert data["order_x2"] == 0
        assert data["terms"] == [{"q_x2": 0, "coeff": {
            "num": [{"exps_x2": [-1], "val": "-1"},
                    {"exps_x2": [1], "val": "1"}],
            "den": [{"exps_x2": [0], "val": "1"}]}}]

    def test_det_sector_counting_series(self):
        code, out, _ = run_cli("compute", "--family", "d-irreducible",
                               "--l", "0", "--lambda", "", "--det",
                               "--n", "0", "--order", "9/2")
        assert code == 0
        data = json.loads(out)
        got = {t["q_x2"]: t["coeff"]["num"][0]["val"] for t in data["terms"]}
        assert got == {1: "1", 3: "1", 5: "1", 7: "1", 9: "2"}

    def test_gl_simplest_case(self):
        code, out, _ = run_cli("compute", "--family", "gl", "--l", "1",
                               "--lambda", "1", "--n", "1", "--order", "2")
        assert code == 0
        data = json.loads(out)
        back = series_from_json(data)
        from qfock.special import f_bo
        tab = back.table
        fb = f_bo(1, 4, tab, (0,))
        want = fb.scale(LaurentPoly.monomial(tab, {0: 2})) * \
            HalfSeries.q_power(tab, 4, 1)
        assert back.eq_upto(want)

    def test_deterministic_output(self):
        args = ("compute", "--family", "d-twisted", "--l", "1", "--lambda",
                "1", "--n", "1", "--order", "2", "--mode", "eval",
                "--seed", "5")
        _, out1, _ = run_cli(*args)
        _, out2, _ = run_cli(*args)
        assert out1 == out2 and out1

    def test_text_format(self):
        code, out, _ = run_cli("compute", "--family", "fbo", "--n", "1",
                               "--order", "1", "--format", "text")
        assert code == 0
        assert "q^" in out


class TestExitCodes:
    def test_bad_order(self):
        code, _, err = run_cli("compute", "--family", "theta", "--order", "1/3")
        assert code == 2 and "half-integer" in err

    def test_bad_family(self):
        code, _, _ = run_cli("compute", "--family", "nope")
        assert code == 2

    def test_bad_lambda_arity(self):
        code, _, err = run_cli("compute", "--family", "d-sum", "--l", "1",
                               "--lambda", "2,1", "--n", "1", "--order", "1")
        assert code == 2

    def test_verify_pass(self):
        code, out, _ = run_cli("verify", "--suite", "weyl-denominator")
        assert code == 0
        assert "PASS" in out

    def test_verify_reports_first_mismatch_shape(self):
        # the onepoint suite passes; exercise its reporting path
        code, out, _ = run_cli("verify", "--suite", "onepoint", "--order", "2")
        assert code == 0
        assert "selected" in out


class TestOracleCommand:
    def test_neutral_base(self):
        code, out, _ = run_cli("oracle", "--l", "0", "--n", "0",
                               "--parity-sign", "--order", "3")
        assert code == 0
        data = json.loads(out)
        got = {t["q_x2"]: t["coeff"]["num"][0]["val"] for t in data["terms"]}
        assert got == {0: "1", 1: "-1", 3: "-1", 4: "1", 5: "-1", 6: "1"}

    def test_qdim_command(self):
        code, out, _ = run_cli("qdim", "--l", "1", "--lambda", "1",
                               "--sector", "plus", "--order", "3")
        assert code == 0
        data = json.loads(out)
        assert data["terms"][0]["q_x2"] == 1

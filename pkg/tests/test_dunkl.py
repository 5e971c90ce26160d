import random

import pytest

from sralgebra.dunkl import Polynomial, calibrate, monomial_basis, oracle_check, random_word

from conftest import make_algebra


def polys(H, d):
    return [Polynomial({m: H.field.one}) for m in monomial_basis(H.N, d)]


def test_eta_zero_is_plain_derivative():
    H = make_algebra("I2", 3, "0")
    rep = calibrate(H)
    for p in polys(H, 3):
        for i in range(H.N):
            assert rep.dunkl_apply(i, p) == rep.partial(i, p)


@pytest.mark.parametrize("eta", ["1/3", "2"])
def test_constants_killed_and_operators_commute(eta):
    H = make_algebra("I2", 3, eta)
    rep = calibrate(H)
    one = Polynomial({(0, 0): H.field.one})
    assert not rep.dunkl_apply(0, one) and not rep.dunkl_apply(1, one)
    for p in polys(H, 5):
        assert rep.dunkl_apply(0, rep.dunkl_apply(1, p)) == rep.dunkl_apply(1, rep.dunkl_apply(0, p))


def test_canonical_bracket_at_eta_zero():
    H = make_algebra("I2", 3, "0")
    rep = calibrate(H)
    for p in polys(H, 3):
        b01 = rep.rep_generator(0, 0, rep.rep_generator(1, 0, p))
        b10 = rep.rep_generator(1, 0, rep.rep_generator(0, 0, p))
        assert b01 - b10 == p.scale(2)


def test_mixed_bracket_matches_relation(i2_3):
    H = i2_3
    rep = calibrate(H)
    want_el = H.bracket("trace", H.gen(0, 0), H.gen(1, 1))
    for p in polys(H, 3):
        got = rep.rep_generator(0, 0, rep.rep_generator(1, 1, p)) - rep.rep_generator(1, 1, rep.rep_generator(0, 0, p))
        assert got == rep.apply_element(want_el, p, 2)


def test_equivariance(i2_3):
    H = i2_3
    rep = calibrate(H)
    for g in range(H.group.order):
        R = H.group.elements[g].matrix
        for p in polys(H, 3):
            for i in range(H.N):
                lhs = rep.act_group(g, rep.dunkl_apply(i, p))
                rhs = Polynomial()
                for j in range(H.N):
                    rhs = rhs + rep.dunkl_apply(j, rep.act_group(g, p)).scale(R[j][i])
                assert lhs == rhs


@pytest.mark.parametrize("family,param,eta", [("I2", 3, "1/3"), ("I2", 4, "1/2,1/5"), ("A", 1, "1/2")])
def test_oracle_words(family, param, eta):
    H = make_algebra(family, param, *eta.split(","))
    rep = calibrate(H)
    rng = random.Random(11)
    for _ in range(12):
        word = random_word(H, rng, 4)
        res = oracle_check(H, word, 2, rep)
        assert res.passed, res

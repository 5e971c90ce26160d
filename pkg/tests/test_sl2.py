import random
from fractions import Fraction
from math import comb

import pytest

from sralgebra.errors import DegreeExceeded
from sralgebra.sl2 import Sl2Action, ad_T, check_sl2_relations, make_T, singlet_project, spin_decompose

from conftest import make_algebra


def weight_dims_oracle(N, order, d):
    """Count normal-form monomials by (deg1 - deg0) directly."""
    out = {}
    for a in range(d + 1):
        for b in range(d + 1 - a):
            out[b - a] = out.get(b - a, 0) + comb(a + N - 1, N - 1) * comb(b + N - 1, N - 1) * order
    return out


@pytest.fixture(scope="module")
def dec4(i2_3):
    return spin_decompose(i2_3, 4)


def test_make_T(i2_3):
    H = i2_3
    T = make_T(H)
    assert T.T00 == H.parse("a0_1^2 + a0_2^2")
    assert T.T11 == H.parse("a1_1^2 + a1_2^2")
    assert T["10"] is T.T01


def test_ad_T_examples(i2_3):
    H = i2_3
    T = make_T(H)
    assert ad_T(T, "11", T.T00) == T.T01 * (-4)
    assert ad_T(T, "01", H.gen(1, 0)) == H.gen(1, 0)
    assert ad_T(T, "01", H.gen(0, 1)) == -H.gen(0, 1)
    for g in range(H.group.order):
        assert not ad_T(T, "00", H.group_element(g))


@pytest.mark.parametrize("d", [0, 3, 4])
def test_relations_i2_3(i2_3, d):
    rep = check_sl2_relations(i2_3, d)
    assert rep.passed, rep.witness
    assert rep.checks > 0


def test_relations_a1(a1):
    assert check_sl2_relations(a1, 4).passed


def test_weight_dims_match_count(i2_3, dec4):
    assert dec4.weight_dims == dict(sorted(weight_dims_oracle(2, 6, 4).items()))


def test_spin_multiplicities(dec4):
    want = weight_dims_oracle(2, 6, 4)
    mults = {s: m for s, m, _ in dec4.blocks}
    for j in range(0, 5):
        assert mults.get(Fraction(j, 2), 0) == want[j] - want.get(j + 2, 0)
    assert mults == {Fraction(0): 18, Fraction(1, 2): 24, Fraction(1): 36, Fraction(3, 2): 24, Fraction(2): 30}
    assert dec4.singlet_dim == 18


def test_highest_weight_vectors_are_killed(i2_3, dec4):
    act = dec4.action
    for s, mult, hw in dec4.blocks:
        assert len(hw) == mult
        for v in hw[:5]:
            assert not act.apply("11", v)


def test_singlet_projector(i2_3, dec4):
    H = i2_3
    act = dec4.action
    T = make_T(H)
    assert not singlet_project(dec4, T.T01)
    rng = random.Random(9)
    w0 = [m for m in H.basis(4) if sum(m[0]) == sum(m[1])]
    for _ in range(10):
        f = H.element({m: H.field.scalar(rng.randint(-3, 3) or 2) for m in rng.sample(w0, 6)})
        p = singlet_project(dec4, f)
        assert singlet_project(dec4, p) == p
        for ab in ("00", "11"):
            assert not act.element(ab, p)
        # the remainder lies in the image of the raising operator
        assert dec4.project(f - p) == H.zero()
    for row in dec4.singlets.rows:
        s = H.element(dict(row))
        assert singlet_project(dec4, s) == s


def test_singlet_projector_ignores_nonzero_weight(i2_3, dec4):
    assert not singlet_project(dec4, i2_3.parse("a1_1*a1_2*rot(1)"))


def test_projector_degree_guard(i2_3, dec4):
    with pytest.raises(DegreeExceeded):
        singlet_project(dec4, i2_3.parse("a0_1^3*a1_1^3"))


def test_action_memo_agrees_with_commutator(i2_3):
    H = i2_3
    act = Sl2Action(H)
    T = make_T(H)
    for m in H.basis(3)[::7]:
        assert act.element("01", H.monomial(m)) == H.commutator(T.T01, H.monomial(m))

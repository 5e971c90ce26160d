import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sralgebra.algebra import SUPERTRACE, TRACE, mono_degree, parity
from sralgebra.errors import InstanceMismatch

from conftest import make_algebra


def g(H, label):
    return H.group_element(H.group.by_label(label).index)


def test_defining_relation(i2_3):
    H = i2_3
    lhs = H.gen(0, 0) * H.gen(1, 0) - H.gen(1, 0) * H.gen(0, 0)
    # six unit roots at angles k*pi/3, each reflection hit by +-v: coefficient 2*eta*cos^2
    want = H.one() + g(H, "ref(0)") * Fraction(2, 3) + g(H, "ref(1)") * Fraction(1, 6) + g(H, "ref(2)") * Fraction(1, 6)
    assert lhs == want
    assert H.bracket(TRACE, H.gen(0, 0), H.gen(1, 0)) == want


def test_same_block_commutes(i2_3):
    H = i2_3
    for a in (0, 1):
        assert not (H.gen(a, 0) * H.gen(a, 1) - H.gen(a, 1) * H.gen(a, 0))


def test_group_relation(i2_3):
    H = i2_3
    r = g(H, "ref(0)")
    for a in (0, 1):
        assert r * H.gen(a, 0) == -(H.gen(a, 0) * r)
        assert r * H.gen(a, 1) == H.gen(a, 1) * r


def test_unit_and_involution(i2_3):
    H = i2_3
    f = H.parse("a0_1*a1_2 + 3*rot(1) - 1/2*a1_1")
    assert H.multiply(H.one(), f) == f == H.multiply(f, H.one())
    for r in H.rs.reflections:
        assert H.group_element(r) * H.group_element(r) == H.one()


def test_instance_mismatch(i2_3, a1):
    with pytest.raises(InstanceMismatch):
        i2_3.multiply(i2_3.one(), a1.one())


def test_basis_sizes(i2_3, a1):
    assert len(i2_3.basis(0)) == 6
    assert len(i2_3.basis(2)) == 90 == i2_3.basis_size(2)
    assert len(a1.basis(1)) == 10 == a1.basis_size(1)
    assert len(set(i2_3.basis(4))) == i2_3.basis_size(4)


def test_parity(i2_3):
    H = i2_3
    assert parity(H.gen(0, 0)) == "odd"
    assert parity(g(H, "ref(1)")) == "even"
    assert parity(H.gen(0, 0) + g(H, "ref(1)")) == "mixed"


def test_bracket_examples(i2_3):
    H = i2_3
    f = H.parse("a0_1 + 2*a1_2*rot(1)")
    assert H.bracket(SUPERTRACE, f, f) == 2 * (f * f)
    assert not H.bracket(TRACE, f, H.one())


def _random_element(H, rng, d, terms=3):
    basis = H.basis(d)
    return H.element({m: H.field.scalar(rng.randint(-3, 3) or 1) for m in rng.sample(basis, terms)})


def test_jacobi(i2_3):
    H = i2_3
    rng = random.Random(3)
    for _ in range(15):
        x, y, z = (_random_element(H, rng, 2) for _ in range(3))
        br = H.commutator
        assert not (br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y)))


def test_filtration_of_corrections(i2_3):
    H = i2_3
    rng = random.Random(4)
    pure = [m for m in H.basis(3) if m[2] == H.group.identity and mono_degree(m)]
    for _ in range(30):
        u, v = rng.choice(pure), rng.choice(pure)
        c = H.commutator(H.monomial(u), H.monomial(v))
        assert c.degree <= mono_degree(u) + mono_degree(v) - 2 or not c
        prod = H.monomial(u) * H.monomial(v)
        assert prod.degree <= mono_degree(u) + mono_degree(v)


atoms = st.one_of(
    st.tuples(st.just("a"), st.integers(0, 1), st.integers(0, 1)),
    st.tuples(st.just("g"), st.integers(0, 5)),
)


@settings(max_examples=60, deadline=None)
@given(st.lists(atoms, min_size=1, max_size=7), st.randoms(use_true_random=False))
def test_confluence_random_bracketing(word, rnd):
    H = _I2_3
    whole = H.normal_form(word)
    # split into random consecutive pieces, normalize each, multiply in a random tree order
    pieces = [H.normal_form([a]) for a in word]
    while len(pieces) > 1:
        k = rnd.randrange(len(pieces) - 1)
        pieces[k:k + 2] = [pieces[k] * pieces[k + 1]]
    assert pieces[0] == whole


_I2_3 = make_algebra("I2", 3, "1/3")

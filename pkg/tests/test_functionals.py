import random

import pytest

from sralgebra.errors import DegreeExceeded, NotStabilized
from sralgebra.functionals import (
    ANNIHILATOR,
    RECURSIVE,
    adapted_directions,
    simple_generators,
    trace_space,
)
from sralgebra.sl2 import Sl2Action

from conftest import make_algebra

KINDS = ("trace", "supertrace")


@pytest.fixture(scope="module")
def spaces(i2_3):
    return {k: trace_space(i2_3, k, 4) for k in KINDS}


def test_dims_i2_3(spaces):
    assert spaces["trace"].dim == 1
    assert spaces["supertrace"].dim == 2


@pytest.mark.parametrize("kind", KINDS)
def test_strategies_agree(i2_3, spaces, kind):
    other = trace_space(i2_3, kind, 4, ANNIHILATOR)
    assert other.subspace == spaces[kind].subspace
    assert other.certificate["stable_margin"] >= 4


def test_a1_dims(a1):
    # permutation action on two coordinates: every element fixes (1, 1)
    assert trace_space(a1, "trace", 4).dim == 0
    assert trace_space(a1, "supertrace", 4).dim == 1


def test_simple_generators(i2_3):
    gens = simple_generators(i2_3)
    assert len(gens) == 2


def test_adapted_directions(i2_3):
    H = i2_3
    for g in range(H.group.order):
        for kind in KINDS:
            fixed, moving = adapted_directions(H, kind, g)
            assert len(fixed) + len(moving) == H.N
    e = H.group.identity
    assert len(adapted_directions(H, "trace", e)[0]) == 2
    assert len(adapted_directions(H, "supertrace", e)[0]) == 0


def _rand(H, rng, d, n=4):
    basis = H.basis(d)
    return H.element({m: H.field.scalar(rng.randint(-5, 5) or 1) for m in rng.sample(basis, n)})


@pytest.mark.parametrize("kind", KINDS)
def test_vanish_on_brackets(i2_3, spaces, kind):
    H = i2_3
    rng = random.Random(5)
    for t in spaces[kind].functionals:
        for _ in range(25):
            x, y = _rand(H, rng, 2), _rand(H, rng, 2)
            assert not t(H.bracket(kind, x, y))


@pytest.mark.parametrize("kind", KINDS)
def test_conjugation_invariance(i2_3, spaces, kind):
    H = i2_3
    rng = random.Random(6)
    for t in spaces[kind].functionals:
        for _ in range(10):
            f = _rand(H, rng, 4)
            for g in range(H.group.order):
                ge = H.group_element(g)
                gi = H.group_element(H.group.inverse[g])
                assert t(ge * f * gi) == t(f)


@pytest.mark.parametrize("kind", KINDS)
def test_sl2_invariance(i2_3, spaces, kind):
    H = i2_3
    act = Sl2Action(H)
    rng = random.Random(7)
    for t in spaces[kind].functionals:
        for _ in range(10):
            f = _rand(H, rng, 2)
            for ab in ("00", "01", "11"):
                assert not t(act.element(ab, f))


def test_recursive_certificate(spaces, i2_3):
    cert = spaces["trace"].certificate
    assert cert["initial_parameters"] == i2_3.group.order
    assert cert["determined_by_group_algebra"]
    assert [s["degree"] for s in cert["stages"]] == [0, 2, 4]


def test_not_stabilized(i2_3):
    with pytest.raises(NotStabilized) as err:
        trace_space(i2_3, "trace", 2, ANNIHILATOR, margin_max=2)
    assert err.value.dims == {2: 1}


def test_degree_exceeded(spaces, i2_3):
    t = spaces["trace"].functionals[0]
    with pytest.raises(DegreeExceeded):
        t(i2_3.parse("a0_1^3*a1_1^3"))


def test_bad_arguments(i2_3):
    with pytest.raises(ValueError):
        trace_space(i2_3, "trace", 2, "guess")
    with pytest.raises(ValueError):
        trace_space(i2_3, "cotrace", 2, RECURSIVE)


def test_class_function_on_group_algebra(spaces, i2_3):
    H = i2_3
    for t in spaces["trace"].functionals + spaces["supertrace"].functionals:
        assert t(H.parse("rot(1)")) == t(H.parse("rot(2)"))
        assert t(H.parse("ref(0)")) == t(H.parse("ref(1)")) == t(H.parse("ref(2)"))

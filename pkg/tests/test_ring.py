import random

import pytest

from quadmod.poly import parse_int_poly
from quadmod.ring import (FiniteZAlgebra, RingError, RingPresentation, canonical_presentation,
                          frobenius_square, integers, integers_mod, is_2_binomial, make_ring,
                          monogenic, product, ring_eq, ring_mul, validate_ring)
from conftest import PRESETS, ring


def el(R, *c):
    return R.element(list(c))


def test_make_ring_presets():
    Z = make_ring("integers")
    assert Z.rank == 1 and Z.lattice.rank == 0
    S = make_ring("monogenic", [-2, 0])
    assert S.rank == 2
    sqrt2 = el(S, 0, 1)
    assert sqrt2 * sqrt2 == 2
    assert make_ring("integers_mod", 6).order() == 6
    assert make_ring("product", integers_mod(2), integers_mod(3)).order() == 6


@pytest.mark.parametrize("preset,args", [("integers_mod", (0,)), ("monogenic", ([],)), ("nonsense", ())])
def test_make_ring_rejects_bad_parameters(preset, args):
    with pytest.raises(RingError):
        make_ring(preset, *args)


def test_idempotent_ring_is_product_of_integers():
    R = monogenic([0, -1])
    P = product(integers(), integers())
    X = el(R, 0, 1)
    assert X * X == X

    def phi(a):
        # aX + b -> (a + b, b)
        b, x = a.coords
        return P.element([x + b, b])

    rng = random.Random(3)
    for _ in range(100):
        a = el(R, rng.randint(-9, 9), rng.randint(-9, 9))
        b = el(R, rng.randint(-9, 9), rng.randint(-9, 9))
        assert phi(a * b) == phi(a) * phi(b)
        assert phi(a + b) == phi(a) + phi(b)
    assert phi(R.element(R.one())) == P.element(P.one())
    # bijective: (u, v) comes from (u - v) X + v
    for u in range(-3, 4):
        for v in range(-3, 4):
            assert phi(el(R, v, u - v)) == P.element([u, v])


def test_ring_mul_examples():
    S = monogenic([-2, 0])
    assert ring_mul(S, el(S, 0, 1), el(S, 0, 1)) == el(S, 2, 0)
    Z4 = integers_mod(4)
    assert ring_mul(Z4, el(Z4, 2), el(Z4, 2)) == 0
    E = monogenic([0, -1])
    assert ring_mul(E, el(E, 0, 1), el(E, 0, 1)) == el(E, 0, 1)


def test_ring_eq_examples():
    Z4, Z, S = integers_mod(4), integers(), monogenic([-2, 0])
    assert ring_eq(Z4, el(Z4, 5), el(Z4, 1))
    assert not ring_eq(Z, el(Z, 1), el(Z, 2))
    assert ring_eq(S, el(S, 2, 0), el(S, 0, 1) * el(S, 0, 1))


def test_frobenius_square_examples():
    Z, S, F2 = integers(), monogenic([-2, 0]), integers_mod(2)
    assert frobenius_square(Z, el(Z, 3)) == 9
    assert frobenius_square(S, el(S, 0, 1)) == 2
    for a in (0, 1):
        assert frobenius_square(F2, el(F2, a)) == el(F2, a)


def test_is_2_binomial_examples():
    assert is_2_binomial(integers())
    assert not is_2_binomial(integers_mod(2))
    assert not is_2_binomial(monogenic([-2, 0]))


def test_validate_ring_flags_broken_constants():
    assert validate_ring(integers()).ok
    structure = [[[1, 0], [0, 1]], [[0, 0], [0, 1]]]  # b0*b1 != b1*b0
    bad = FiniteZAlgebra(2, [], structure, [1, 0])
    assert any("commutativity" in f for f in validate_ring(bad).failures)
    Z = integers()
    perturbed = FiniteZAlgebra(1, [], Z.structure, [2])
    assert any("unit" in f for f in validate_ring(perturbed).failures)


@pytest.mark.parametrize("name", list(PRESETS))
def test_presets_validate(name):
    assert validate_ring(ring(name)).ok


@pytest.mark.parametrize("name", list(PRESETS))
def test_ring_axioms_on_samples(name):
    R = ring(name)
    rng = random.Random(7)
    for _ in range(60):
        a, b, c = (R.element(R.random_element(rng, 4)) for _ in range(3))
        one = R.element(R.one())
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * one == a
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("name", list(PRESETS))
def test_frobenius_additive_mod_2(name):
    R = ring(name)
    two = R.ideal_lattice([R.from_int(2)])
    rng = random.Random(11)
    for _ in range(60):
        a, b = R.random_element(rng, 4), R.random_element(rng, 4)
        diff = R.sub(R.square(R.add(a, b)), R.add(R.square(a), R.square(b)))
        assert diff in two


@pytest.mark.parametrize("name", list(PRESETS))
def test_canonical_presentation_is_valid(name):
    pres = canonical_presentation(ring(name))
    assert pres.validate() == []


def test_presentation_validation_catches_bad_relation():
    S = monogenic([-2, 0])
    bad = RingPresentation(["X"], [parse_int_poly("X^2 - 3", ["X"])], S, [S.basis_element(1)])
    assert bad.validate()
    not_generating = RingPresentation(["X"], [parse_int_poly("X", ["X"])], S, [S.zero()])
    assert any("generate" in f for f in not_generating.validate())


def test_divide_and_inverse():
    S = monogenic([-2, 0])
    assert S.divide([4, 2], S.from_int(2)) is not None
    assert S.divide([1, 0], S.from_int(2)) is None
    F3 = integers_mod(3)
    assert F3.inverse([2]) == [2] or F3.eq(F3.inverse([2]), [2])
    assert integers().inverse([2]) is None

import itertools
import random

import pytest

from quadmod import modules as mod
from quadmod.functors import QuadraticStructure
from quadmod.modules import FPModule
from quadmod.quadmaps import (PolyMap, QuadMapError, RPoly, cross_actions, cross_effect, decompose_lin_hom,
                              factor_through_p2, factorization_check, find_unit_pair, is_homogeneous,
                              is_linear, is_quadratic, parse_polymap, poly_equal)
from quadmod.ring import integers, integers_mod
from conftest import PRESETS, ring

BINOMIAL = "1/2*x^2 - 1/2*x"


def coeff_text(R, c):
    return str(c[0]) if R.rank == 1 else "(" + ",".join(map(str, c)) + ")"


def random_quadratic_texts(R, m, n, rng):
    """Random quadratic maps R^m -> R^n: monomials of degree <= 2, plus binomials where they are integral."""
    names = [f"x{i + 1}" for i in range(m)]
    monos = names + [f"{a}*{b}" for a, b in itertools.combinations_with_replacement(names, 2)]
    texts = []
    for _ in range(n):
        terms = [f"{coeff_text(R, R.random_element(rng, 3))}*{mono}" for mono in monos if rng.random() < 0.7]
        v = rng.choice(names)
        if rng.random() < 0.5 and admits_binomial(R):
            terms.append(f"1/2*{v}^2 - 1/2*{v}")
        texts.append(" + ".join(terms) or "0*x1")
    return texts


def admits_binomial(R):
    try:
        parse_polymap(R, 1, 1, [BINOMIAL])
    except QuadMapError:
        return False
    return True


def random_point(R, m, rng, bound=4):
    return [R.random_element(rng, bound) for _ in range(m)]


# -- parsing -----------------------------------------------------------------------------------


def test_parse_rejects_constant_terms():
    with pytest.raises(QuadMapError, match="constant"):
        parse_polymap(integers(), 1, 1, ["x^2 + 1"])


def test_parse_rejects_non_integer_valued_maps():
    with pytest.raises(QuadMapError, match="integer valued"):
        parse_polymap(integers(), 1, 1, ["1/2*x^2"])
    with pytest.raises(QuadMapError, match="torsion"):
        parse_polymap(integers_mod(4), 1, 1, [BINOMIAL])


def test_binomial_evaluates_exactly():
    f = parse_polymap(integers(), 1, 1, [BINOMIAL])
    assert [f([[n]])[0][0] for n in range(-3, 5)] == [n * (n - 1) // 2 for n in range(-3, 5)]


# -- cross effects ------------------------------------------------------------------------------


def test_cross_effect_of_square_is_twice_the_product():
    f = parse_polymap(integers(), 1, 1, ["x^2"])
    ce = cross_effect(f)
    assert ce.bilinear
    assert ce.matrix == [[[f.K.of([2])]]]
    assert ce.format(1) == "[2*x1*y1]"


def test_cross_effect_of_cube_is_not_bilinear():
    f = parse_polymap(integers(), 1, 1, ["x^3"])
    ce = cross_effect(f)
    assert not ce.bilinear
    k, mono = ce.offending
    assert k == 0 and sum(mono) == 3


def test_cross_effect_of_linear_map_vanishes():
    f = parse_polymap(integers(), 2, 1, ["3*x1 - x2"])
    ce = cross_effect(f)
    assert ce.bilinear
    assert all(P.is_zero() for P in ce.polynomials)


def test_cross_actions_of_binomial():
    f = parse_polymap(integers(), 1, 1, [BINOMIAL])
    fr, fsq = cross_actions(f, [2])
    assert fr.format() == "[x1^2]"
    assert fsq.format() == "[x1]"
    fr, fsq = cross_actions(f, [1])
    assert all(F.is_zero() for F in fr.components + fsq.components)


def test_square_brackets_action_kills_homogeneous_map():
    f = parse_polymap(integers(), 1, 1, ["x^2"])
    for r in range(-3, 4):
        assert all(F.is_zero() for F in cross_actions(f, [r])[1].components)


# -- quadraticity ------------------------------------------------------------------------------


def test_quadraticity_examples():
    Z = integers()
    assert is_quadratic(parse_polymap(Z, 1, 1, [BINOMIAL])).quadratic
    assert is_quadratic(parse_polymap(Z, 2, 1, ["2*x1 + x2"])).quadratic
    v = is_quadratic(parse_polymap(Z, 1, 1, ["x^3"]))
    assert not v.quadratic
    assert v.identity == "defadd1"
    assert v.point is not None


def test_cube_is_quadratic_as_a_function_over_f3():
    # x^3 = x on F3, so the map is linear even though its polynomial has degree 3
    f = parse_polymap(ring("F3"), 1, 1, ["x^3"])
    v = is_quadratic(f)
    assert v.quadratic and v.method == "exhaustive"
    assert v.format() == "quadratic (exhaustive)"


def test_cubic_verdict_names_the_failing_point():
    v = is_quadratic(parse_polymap(integers(), 1, 1, ["x^3"]))
    assert v.format().startswith("not quadratic: defadd1 fails")
    f = parse_polymap(integers(), 1, 1, ["x^3"])
    x, y, z = (int(v.point[k]) for k in ("x1", "y1", "z1"))
    cube = lambda a: f([[a]])[0][0]
    lhs = cube(x + y + z) - cube(x + y) - cube(y + z) - cube(x + z) + cube(x) + cube(y) + cube(z)
    assert lhs != 0


@pytest.mark.parametrize("name", list(PRESETS))
def test_random_quadratic_maps_are_recognized(name):
    R = ring(name)
    rng = random.Random(f"recognize/{name}")
    for _ in range(4):
        f = parse_polymap(R, 2, 2, random_quadratic_texts(R, 2, 2, rng))
        assert is_quadratic(f).quadratic
        assert cross_effect(f).bilinear


# -- linear plus homogeneous -------------------------------------------------------------------


def test_decomposition_over_f3():
    f = parse_polymap(ring("F3"), 1, 1, ["x^2 + x"])
    split = decompose_lin_hom(f, [2])
    assert split.available
    assert split.linear.format() == "[x1]"
    assert split.homogeneous.format() == "[x1^2]"


def test_decomposition_independent_of_r_over_z5():
    f = parse_polymap(integers_mod(5), 2, 1, ["2*x1^2 + 3*x1*x2 + 4*x2 + x1"])
    splits = [decompose_lin_hom(f, [r]) for r in (2, 3, 4)]
    assert all(s.available for s in splits)
    for s in splits[1:]:
        assert poly_equal(s.linear, splits[0].linear)
        assert poly_equal(s.homogeneous, splits[0].homogeneous)


def test_decomposition_unavailable_over_integers():
    f = parse_polymap(integers(), 1, 1, [BINOMIAL])
    assert find_unit_pair(integers()) is None
    split = decompose_lin_hom(f)
    assert not split.available and split.reason
    assert not decompose_lin_hom(parse_polymap(ring("F3"), 1, 1, ["x^2"]), [1]).available


def test_decomposition_of_homogeneous_map_has_no_linear_part():
    f = parse_polymap(ring("F3"), 2, 1, ["x1^2 + 2*x1*x2"])
    split = decompose_lin_hom(f)
    assert all(F.is_zero() for F in split.linear.components)
    assert poly_equal(split.homogeneous, f)


def test_decomposition_rejects_non_quadratic_map():
    with pytest.raises(QuadMapError):
        decompose_lin_hom(parse_polymap(integers_mod(5), 1, 1, ["x^3"]))


@pytest.mark.parametrize("seed", range(5))
def test_random_decompositions_over_z5(seed):
    R = integers_mod(5)
    rng = random.Random(seed)
    f = parse_polymap(R, 2, 2, random_quadratic_texts(R, 2, 2, rng))
    split = decompose_lin_hom(f)
    assert split.available
    assert is_linear(split.linear) and is_homogeneous(split.homogeneous)
    for _ in range(20):
        x = random_point(R, 2, rng)
        got = [R.add(a, b) for a, b in zip(split.linear(x), split.homogeneous(x))]
        assert all(R.eq(a, b) for a, b in zip(got, f(x)))


# -- factorization through P^2 ---------------------------------------------------------------------


def test_binomial_factors_through_the_ideal_slot():
    f = parse_polymap(integers(), 1, 1, [BINOMIAL])
    fac = factor_through_p2(f)
    assert fac.map.columns == [[0], [1]]


def test_product_factors_through_the_cross_term():
    f = parse_polymap(integers(), 2, 1, ["x1*x2"])
    fac = factor_through_p2(f)
    lay = fac.layout
    for k, col in enumerate(fac.map.columns):
        assert col == ([1] if k == lay.cross[(0, 1)] else [0])


def test_linear_map_factors_through_projection():
    R = ring("Z[sqrt2]")
    f = parse_polymap(R, 2, 1, ["(1,1)*x1 + (0,3)*x2"])
    fac = factor_through_p2(f)
    Q = QuadraticStructure(FPModule.free(R, 2))
    lin = mod.ModuleMap(Q.M, FPModule.free(R, 1), [[1, 1], [0, 3]])
    assert fac.map.equals(mod.compose(lin, Q.epsilon))


def test_factorization_rejects_non_quadratic_map():
    with pytest.raises(QuadMapError):
        factor_through_p2(parse_polymap(integers(), 1, 1, ["x^3"]))


@pytest.mark.parametrize("name", list(PRESETS))
def test_factorization_roundtrip(name):
    R = ring(name)
    rng = random.Random(f"roundtrip/{name}")
    for m, n in ((1, 1), (2, 1), (2, 2)):
        f = parse_polymap(R, m, n, random_quadratic_texts(R, m, n, rng))
        fac = factor_through_p2(f)
        points = [random_point(R, m, rng) for _ in range(40)]
        assert factorization_check(f, fac, points)


def test_factorization_check_catches_a_wrong_map():
    f = parse_polymap(integers(), 1, 1, [BINOMIAL])
    fac = factor_through_p2(parse_polymap(integers(), 1, 1, ["x^2"]))
    assert not factorization_check(f, fac, [[[n]] for n in range(-3, 4)])


# -- structural properties ----------------------------------------------------------------------------


@pytest.mark.parametrize("name", list(PRESETS))
def test_map_on_a_sum_splits_into_parts_and_a_bilinear_term(name):
    R = ring(name)
    rng = random.Random(f"sum/{name}")
    for _ in range(3):
        f = parse_polymap(R, 2, 1, random_quadratic_texts(R, 2, 1, rng))
        K = f.K
        h = cross_effect(f).polynomials[0]

        def hval(x, y):
            return R.reduce(K.integral(h.evaluate([x[0], R.zero(), R.zero(), y[0]])))

        for _ in range(15):
            x, y, x2 = random_point(R, 1, rng), random_point(R, 1, rng), random_point(R, 1, rng)
            r = R.random_element(rng, 3)
            whole = f([x[0], y[0]])[0]
            parts = R.add(R.add(f([x[0], R.zero()])[0], f([R.zero(), y[0]])[0]), hval(x, y))
            assert R.eq(whole, parts)
            assert R.eq(hval([R.add(x[0], x2[0])], y), R.add(hval(x, y), hval(x2, y)))
            assert R.eq(hval([R.mul(r, x[0])], y), R.mul(r, hval(x, y)))
            assert R.eq(hval(x, [R.mul(r, y[0])]), R.mul(r, hval(x, y)))


@pytest.mark.parametrize("name", list(PRESETS))
def test_first_cross_action_is_homogeneous(name):
    R = ring(name)
    rng = random.Random(f"vardef/{name}")
    for _ in range(3):
        f = parse_polymap(R, 2, 1, random_quadratic_texts(R, 2, 1, rng))
        for _ in range(3):
            s = R.random_element(rng, 3)
            assert is_homogeneous(cross_actions(f, s)[0])


def test_polymap_shape_is_checked():
    Z = integers()
    K = parse_polymap(Z, 1, 1, ["x"]).K
    with pytest.raises(QuadMapError):
        PolyMap(Z, 1, 2, [RPoly.var(K, 1, 0)])
    with pytest.raises(QuadMapError):
        PolyMap(Z, 2, 1, [RPoly.var(K, 1, 0)])

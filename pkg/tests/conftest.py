import random

import pytest

from quadmod.poly import parse_int_poly
from quadmod.ring import RingPresentation, integers, integers_mod, monogenic, product

# ring name -> constructor; every ring-generic test runs over all of them
PRESETS = {
    "Z": integers,
    "Z/2": lambda: integers_mod(2),
    "Z/4": lambda: integers_mod(4),
    "F3": lambda: integers_mod(3),
    "Z[sqrt2]": lambda: monogenic([-2, 0]),
    "Z[X]/(X^2-X)": lambda: monogenic([0, -1]),
    "F2xF2": lambda: product(integers_mod(2), integers_mod(2)),
}

_cache = {}


def ring(name):
    if name not in _cache:
        _cache[name] = PRESETS[name]()
    return _cache[name]


def presentation_samples():
    Z = integers()
    E = monogenic([0, -1])
    S = monogenic([-2, 0])
    Z4 = integers_mod(4)
    out = [("Z", RingPresentation([], [], Z, []))]
    out.append(("Z[X]/(X^2-X)", RingPresentation(["X"], [parse_int_poly("X^2 - X", ["X"])], E, [E.basis_element(1)])))
    out.append(("Z[X]/(X^2-2)", RingPresentation(["X"], [parse_int_poly("X^2 - 2", ["X"])], S, [S.basis_element(1)])))
    out.append(("Z[X]/(X,4)", RingPresentation(["X"], [parse_int_poly("X", ["X"]), parse_int_poly("4", ["X"])],
                                               Z4, [Z4.zero()])))
    P = product(integers(), integers())
    names = ["X", "Y"]
    rels = [parse_int_poly(t, names) for t in ("X^2 - X", "Y^2 - Y", "X*Y", "X + Y - 1")]
    out.append(("two variables", RingPresentation(names, rels, P, [[1, 0], [0, 1]])))
    return out


@pytest.fixture(params=list(PRESETS))
def any_ring(request):
    return ring(request.param)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def Z():
    return ring("Z")


@pytest.fixture
def Zsqrt2():
    return ring("Z[sqrt2]")

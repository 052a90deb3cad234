"""Acceptance suite: one PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""
import random
import sys
from math import comb
from pathlib import Path

import pytest

from quadmod import modules as mod
from quadmod.functors import QuadraticStructure, eval_canonical, functor_object, tau_oracle
from quadmod.i2 import i2_ideal
from quadmod.lattice import Lattice
from quadmod.modules import FPModule
from quadmod.quadmaps import (cross_effect, decompose_lin_hom, factor_through_p2, factorization_check,
                              is_quadratic, parse_polymap, poly_equal)
from quadmod.ring import integers, integers_mod
from quadmod.verify import (module_suite, verify_car2sym, verify_passi_Z, verify_presred, verify_relrho,
                            verify_sequence, verify_splitting, verify_uqd)

sys.path.insert(0, str(Path(__file__).parent))
from conftest import PRESETS, presentation_samples, ring  # noqa: E402


class Criterion:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.failures = []

    def expect(self, ok, what):
        if not ok:
            self.failures.append(what)

    def expect_report(self, rep, what):
        if not rep.ok:
            bad = ", ".join(f"{c.position} {c.witness or ''}".strip() for c in rep.failures())
            self.failures.append(f"{what}: {bad}")

    def line(self):
        verdict = "PASS" if not self.failures else "FAIL"
        out = f"{verdict} criterion {self.number}: {self.title}"
        if self.failures:
            out += " [" + "; ".join(self.failures[:5]) + "]"
        return out


def criterion_1():
    c = Criterion(1, "P2 of the free rank one Z-module is free of rank 2 with p(n) = (n, C(n,2))")
    F = functor_object("p2", FPModule.free(integers(), 1))
    c.expect(F.module.invariants() == [0, 0], f"invariants {F.module.invariants()}")
    for n in range(-5, 6):
        want = [n, comb(n, 2) if n >= 0 else n * (n - 1) // 2]
        c.expect(eval_canonical(F, [n]) == want, f"p({n})")
    return c


def criterion_2():
    c = Criterion(2, "I2 of Z, F2, F2xF2, Z[sqrt2], Z[X]/(X^2-X)")
    expected = {
        "Z": Lattice(1, [[2]]),
        "Z/2": Lattice(1, [[2]]),
        "F2xF2": Lattice(2, [[2, 0], [0, 2]]),
        "Z[sqrt2]": Lattice(2, [[2, 0], [0, 1]]),
        # 2Z x 2Z, pulled back along a + bX -> (a + b, a)
        "Z[X]/(X^2-X)": Lattice(2, [[2, 0], [0, 2]]),
    }
    for name, lattice in expected.items():
        R = ring(name)
        I = i2_ideal(R)
        # the ideal is compared as a lattice in Z^rank, so the ring's own lattice is added
        got = Lattice(R.rank, I.lattice().basis + R.lattice.basis)
        c.expect(got == lattice, f"{name}: {I.lattice().basis}")
    c.expect(i2_ideal(ring("Z/2")).module.is_zero(), "I2(F2) nonzero")
    c.expect(i2_ideal(ring("F2xF2")).module.is_zero(), "I2(F2xF2) nonzero")
    c.expect(i2_ideal(ring("Z[X]/(X^2-X)")).module.invariants() == [0, 0], "idempotent ring rank")
    R = ring("Z[sqrt2]")
    c.expect(i2_ideal(R).lattice() == R.ideal_lattice([R.basis_element(1)]), "I2(Z[sqrt2]) != (sqrt2)")
    return c


def criterion_3():
    c = Criterion(3, "quadratic derivations factor uniquely through D (20 specs, 100 samples per ring)")
    for name in PRESETS:
        rep = verify_uqd(ring(name), random.Random(f"uqd/{name}"), specs=20, samples=100)
        c.expect_report(rep, name)
    return c


def criterion_4():
    c = Criterion(4, "reduced presentations of I2 are certified isomorphisms")
    for label, pres in presentation_samples():
        c.expect_report(verify_presred(pres), label)
    return c


def criterion_5():
    c = Criterion(5, "Tor -> Sym2/d -> Gamma2 -> (R/2R)[1] x M -> 0 is exact, tau agrees with the chase")
    for name in PRESETS:
        R = ring(name)
        for label, M in module_suite(R, 0):
            Q = QuadraticStructure(M)
            c.expect_report(verify_sequence("gmsequ", Q), f"{name} {label}")
            c.expect(Q.tau.equals(tau_oracle(Q)), f"{name} {label} tau")
            if name == "Z":
                c.expect(Q.tau.is_zero(), f"Z {label} tau nonzero")
    S = ring("Z[sqrt2]")
    Q = QuadraticStructure(FPModule.cyclic(S, [S.basis_element(1)]))
    c.expect(not Q.tau.is_zero() and mod.is_surjective(Q.tau), "tau over Z[sqrt2] on R/sqrt2R")
    return c


def criterion_6():
    c = Criterion(6, "0 -> K(M) -> P2(M) -> M -> 0 is exact and the cocycle model agrees")
    for name in PRESETS:
        R = ring(name)
        for label, M in module_suite(R, 0):
            rep = verify_sequence("main", M, random.Random(f"main/{name}/{label}"))
            c.expect_report(rep, f"{name} {label}")
            c.expect({ch.position for ch in rep.checks} == {"1", "2", "3", "model"}, f"{name} {label} positions")
    return c


def criterion_7():
    c = Criterion(7, "cokernel and kernel claims for free modules of ranks 1-3, K and K' shapes")
    for name in PRESETS:
        R = ring(name)
        for g in (1, 2, 3):
            Q = QuadraticStructure(FPModule.free(R, g))
            coker = verify_sequence("coker_props", Q)
            c.expect_report(coker, f"{name} R^{g} coker")
            c.expect(len(coker.checks) == 12, f"{name} R^{g} coker count {len(coker.checks)}")
            c.expect_report(verify_sequence("ker_props_free", Q), f"{name} R^{g} ker")
    return c


def criterion_8():
    c = Criterion(8, "Passi sequence, coker phi1/phi2 sequences, Gamma factor, splittings, square map")
    Z = integers()
    passi = {"Z": FPModule.free(Z, 1), "Z/2": FPModule.cyclic(Z, [[2]]), "Z/4": FPModule.cyclic(Z, [[4]]),
             "Z+Z/2": mod.direct_sum(FPModule.free(Z, 1), FPModule.cyclic(Z, [[2]])).module}
    for label, M in passi.items():
        c.expect_report(verify_passi_Z(M), f"passi {label}")
    for name in PRESETS:
        for label, M in module_suite(ring(name), 0):
            Q = QuadraticStructure(M)
            for seq in ("cokphi1_a", "cokphi1_b", "cokphi1_tor", "cokphi2", "gamma_factor"):
                c.expect_report(verify_sequence(seq, Q), f"{seq} {name} {label}")
    for name in ("Z/2", "F2xF2", "F3"):
        for label, M in module_suite(ring(name), 0):
            c.expect_report(verify_splitting(M), f"splitting {name} {label}")
    for name in ("Z/2", "F2xF2"):
        R = ring(name)
        rng = random.Random(f"car2sym/{name}")
        for k in range(5):
            M = FPModule.from_matrix(R, 2, [[R.random_element(rng, 2), R.random_element(rng, 2)]])
            c.expect_report(verify_car2sym(M), f"car2sym {name} #{k}")
    return c


def criterion_9():
    c = Criterion(9, "the ten rho identities with negative controls over Z/4, F3, Z[sqrt2]")
    for name in ("Z/4", "F3", "Z[sqrt2]"):
        rep = verify_relrho(ring(name), random.Random(f"relrho/{name}"), samples=100, bound=2)
        c.expect(len(rep.checks) == 20, f"{name} check count")
        c.expect_report(rep, name)
    return c


def criterion_10():
    c = Criterion(10, "quadratic maps: C(n,2) factors, x^3 is rejected, linear plus homogeneous split")
    Z = integers()
    f = parse_polymap(Z, 1, 1, ["1/2*x^2 - 1/2*x"])
    c.expect(is_quadratic(f).quadratic, "C(n,2) rejected")
    fac = factor_through_p2(f)
    c.expect(fac.map.columns == [[0], [1]], f"factor columns {fac.map.columns}")
    c.expect(factorization_check(f, fac, [[[n]] for n in range(-10, 11)]), "factorization roundtrip")
    cube = parse_polymap(Z, 1, 1, ["x^3"])
    v = is_quadratic(cube)
    c.expect(not v.quadratic and v.identity and v.point, "x^3 accepted or without witness")
    c.expect(not cross_effect(cube).bilinear, "x^3 cross effect bilinear")
    split = decompose_lin_hom(parse_polymap(ring("F3"), 1, 1, ["x^2 + x"]), [2])
    c.expect(split.available and split.linear.format() == "[x1]" and split.homogeneous.format() == "[x1^2]",
             "F3 split")
    F5 = integers_mod(5)
    g = parse_polymap(F5, 2, 1, ["2*x1^2 + 3*x1*x2 + 4*x2 + x1"])
    splits = [decompose_lin_hom(g, [r]) for r in (2, 3, 4)]
    c.expect(all(s.available for s in splits), "Z/5 split unavailable")
    c.expect(all(poly_equal(s.linear, splits[0].linear) and poly_equal(s.homogeneous, splits[0].homogeneous)
                 for s in splits), "Z/5 split depends on r")
    c.expect(not decompose_lin_hom(f).available, "split reported over Z")
    return c


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{k + 1}" for k in range(len(CRITERIA))])
def test_criterion(criterion, capsys):
    c = criterion()
    with capsys.disabled():
        print("\n" + c.line())
    assert not c.failures, c.line()


if __name__ == "__main__":
    results = [criterion() for criterion in CRITERIA]
    for c in results:
        print(c.line())
    sys.exit(0 if all(not c.failures for c in results) else 1)

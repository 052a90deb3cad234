import random

import pytest

from quadmod import modules as mod
from quadmod.functors import QuadraticStructure
from quadmod.modules import FPModule, ModuleError
from quadmod.ring import integers, integers_mod, monogenic
from quadmod.verify import (SEQUENCES, SequenceReport, module_suite, verify_car2sym, verify_chi_kernel,
                            verify_passi_Z, verify_relrho, verify_sequence, verify_splitting)
from conftest import PRESETS, ring

GENERAL = ("gmsequ", "main", "six_term", "cokphi1_a", "cokphi1_b", "cokphi1_tor", "cokphi2",
           "gamma_factor", "lemA", "chi_kernel")
FREE_ONLY = ("coker_props", "ker_props_free")


def describe(rep):
    return "; ".join(f"{c.position}: {c.note} {c.witness}" for c in rep.failures())


@pytest.mark.parametrize("name", list(PRESETS))
@pytest.mark.parametrize("seq", GENERAL)
def test_sequence_holds_on_module_suite(name, seq):
    R = ring(name)
    for label, M in module_suite(R, 0):
        rep = verify_sequence(seq, M, random.Random(0))
        assert rep.checks, (label, seq)
        assert rep.ok, (label, describe(rep))


@pytest.mark.parametrize("name", list(PRESETS))
@pytest.mark.parametrize("seq", FREE_ONLY)
def test_free_module_claims(name, seq):
    R = ring(name)
    for g in (1, 2, 3):
        rep = verify_sequence(seq, FPModule.free(R, g))
        assert rep.ok, (g, describe(rep))


@pytest.mark.parametrize("seed", range(6))
def test_sequences_on_more_random_modules(seed):
    for name in ("Z", "Z[sqrt2]", "Z/4"):
        R = ring(name)
        M = module_suite(R, seed)[-1][1]
        Q = QuadraticStructure(M)
        for seq in ("gmsequ", "main", "cokphi2"):
            rep = verify_sequence(seq, Q)
            assert rep.ok, (name, seed, seq, describe(rep))


def test_ker_props_rejects_non_free_module():
    Z = integers()
    with pytest.raises(ModuleError):
        verify_sequence("ker_props_free", FPModule.cyclic(Z, [[2]]))


def test_unknown_sequence_name():
    with pytest.raises(ModuleError):
        verify_sequence("nope", FPModule.free(integers(), 1))


def test_passi_over_integers():
    Z = integers()
    modules = {"Z": FPModule.free(Z, 1), "Z/2": FPModule.cyclic(Z, [[2]]), "Z/4": FPModule.cyclic(Z, [[4]]),
               "Z+Z/2": mod.direct_sum(FPModule.free(Z, 1), FPModule.cyclic(Z, [[2]])).module}
    for label, M in modules.items():
        assert verify_passi_Z(M).ok, label
    rep = verify_passi_Z(modules["Z/2"])
    orders = [inv for _, inv in rep.terms]
    assert orders == [[2], [4], [2]]
    with pytest.raises(ModuleError):
        verify_passi_Z(FPModule.free(integers_mod(2), 1))


@pytest.mark.parametrize("name", ["F3", "Z/2", "F2xF2"])
def test_splitting(name):
    R = ring(name)
    for label, M in module_suite(R, 1):
        assert verify_splitting(M).ok, label


def test_splitting_over_f3_uses_gamma_plus_m():
    R = ring("F3")
    Q = QuadraticStructure(FPModule.free(R, 2))
    rep = verify_splitting(Q)
    assert [c.position for c in rep.checks] == ["iso", "k", "model"]
    assert rep.ok


def test_splitting_rejects_intermediate_ideal():
    with pytest.raises(ModuleError):
        verify_splitting(FPModule.free(integers(), 1))


@pytest.mark.parametrize("name", ["Z/2", "F2xF2"])
def test_square_map_injective_when_i2_vanishes(name):
    R = ring(name)
    rng = random.Random(31)
    for _ in range(5):
        M = FPModule.from_matrix(R, 2, [[R.random_element(rng, 2), R.random_element(rng, 2)]])
        assert verify_car2sym(M).ok


def test_chi_kernel_remarks_over_integers():
    Z = integers()
    for label, M in module_suite(Z, 4):
        rep = verify_chi_kernel(M)
        assert {c.position for c in rep.checks} == {"twotorsion", "contained", "equal", "count"}
        assert rep.ok, label


def test_relrho_report_has_controls():
    rep = verify_relrho(integers_mod(4), random.Random(1), samples=20)
    assert len(rep.checks) == 20
    assert rep.ok


def test_report_lines_format():
    rep = SequenceReport("main")
    rep.add(1, True)
    rep.add(2, False, [0, 1], "kernel not contained in image")
    lines = rep.lines()
    assert lines[0] == "CHECK main@1 PASS"
    assert lines[1] == "CHECK main@2 FAIL witness=(0, 1) [kernel not contained in image]"
    assert lines[2] == "CHECK main@all FAIL"


def test_gmsequ_on_sqrt2_quotient_detects_nonzero_tau():
    S = monogenic([-2, 0])
    Q = QuadraticStructure(FPModule.cyclic(S, [S.basis_element(1)]))
    rep = verify_sequence("gmsequ", Q)
    assert rep.ok
    assert not Q.tau.is_zero()


def test_every_sequence_is_registered():
    assert set(GENERAL) | set(FREE_ONLY) | {"passi_Z", "splitting", "car2sym"} == set(SEQUENCES)

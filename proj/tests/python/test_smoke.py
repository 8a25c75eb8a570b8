"""Smoke tests for the python bindings: the main operations end to end."""

import math

import numpy as np
import pytest

import covmark as cm


def test_group_oracle_and_counts():
    f2 = cm.GroupOracle.free_group(2)
    assert f2.sphere_count(3) == 36
    assert f2.word_length([0, 2, 1]) == 3  # a b A
    assert f2.reduce([0, 1]) == []  # a A -> e

    a = cm.build_free_group_automaton(2)
    assert cm.count_paths(a, 3) == 36
    # Exact big-integer counting beyond 64 bits.
    assert cm.count_paths(a, 45) == 4 * 3**44


def test_strong_markov_and_growth():
    a = cm.build_free_product_automaton([2, 3])
    g = cm.GroupOracle.free_product_cyclic([2, 3])
    rep = cm.verify_strong_markov(a, g, 6)
    assert rep["ok"]

    spec = cm.growth_rate(a)
    assert abs(spec["rho"] - math.sqrt(2)) < 1e-9
    assert spec["contributing_count"] == 1

    c1, c2 = cm.growth_constants(a, spec["rho"], 30)
    assert c2 / c1 <= 3.0


def test_invalid_inputs_raise():
    with pytest.raises(cm.InputError):
        cm.GroupOracle.free_product_cyclic([2, 2])
    with pytest.raises(cm.InputError):
        cm.build_free_group_automaton(0)


def test_covering_identity_small():
    g = cm.GroupOracle.free_group(2)
    st = cm.AlgebraState.tracial(2)
    assign = cm.ActionAssignment.seeded(g, st, 7)
    p = cm.CoveringOperator(cm.build_free_group_automaton(2), assign)

    rng = np.random.default_rng(0)
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    x = z + z.conj().T
    for n in range(5):
        via_p = p.sphere_sum(x, n)
        brute = cm.sphere_sum_bruteforce(assign, g, x, n)
        assert np.linalg.norm(via_p - brute) < 1e-10


def test_cesaro_trivial_closed_form():
    a = cm.build_free_group_automaton(2)
    assign = cm.ActionAssignment.trivial(a.generators, 2)
    p = cm.CoveringOperator(a, assign)
    x = np.diag([1.0, -1.0]).astype(complex)
    s = cm.cesaro_average(p, x, 3.0, 16)
    assert np.max(np.abs(s - 4.0 * x)) < 1e-12

    st = cm.AlgebraState.tracial(2)
    rep = cm.convergence_diagnostics(p, st, x, 3.0, 64)
    assert rep["ladder"] == [8, 16, 32, 64]
    assert rep["cauchy"]

    sf = cm.state_functional_check(p, st, x, 3.0, 32)
    assert sf["ok"]
    assert abs(sf["c_n"] - 4.0) < 1e-12


def test_order_properties():
    g = cm.GroupOracle.free_group(2)
    st = cm.AlgebraState.tracial(2)
    assign = cm.ActionAssignment.seeded(g, st, 3)
    p = cm.CoveringOperator(cm.build_free_group_automaton(2), assign)

    rng = np.random.default_rng(1)
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    x = z @ z.conj().T

    rep = cm.majorant_bound(p, x, p.rho, 16)
    assert rep["majorant_ok"]
    doubled = cm.majorant_bound(p, 2.0 * x, p.rho, 16)
    assert doubled["c_star"] == 2.0 * rep["c_star"]

    sq = cm.squares_check(p, x, p.rho, 8)
    assert sq["schwarz_ok"]


def test_file_round_trip(tmp_path):
    a = cm.build_free_abelian_automaton(2)
    path = str(tmp_path / "automaton.json")
    cm.save_automaton(a, path)
    assert cm.load_automaton(path) == a

    g = cm.GroupOracle.free_abelian(2)
    st = cm.AlgebraState.diagonal([0.6, 0.4])
    assign = cm.ActionAssignment.seeded(g, st, 11)
    apath = str(tmp_path / "action.json")
    cm.save_action(apath, st, assign)
    st2, assign2 = cm.load_action(apath, g.generators)
    assert st2.dim == 2
    assign2.require_relator_compatibility(g, 3)

from fractions import Fraction

import numpy as np
import pytest

from conftest import random_connected_graph, random_rational_graphon
from limit_cheeger.cheeger import graphon_cheeger, induced_graph
from limit_cheeger.gallery import constant, counterexample_wn, k2
from limit_cheeger.graphon import StepGraphon, WeightedGraph, from_graph
from limit_cheeger.intervals import InputError, StepFunction
from limit_cheeger.spectral import (
    DegenerateDegreeError,
    EdgeStepFunction,
    apply_d,
    apply_dstar,
    apply_laplacian,
    apply_T,
    block_eigenfunction,
    inner_e,
    inner_v,
    lambda_graph,
    lambda_graphon,
    project_mean_zero,
    rayleigh,
    sandwich_flags,
    verify_sandwich,
)

F = Fraction
HALVES = (F(0), F(1, 2), F(1))


def _rand_f(rng, W):
    return StepFunction(W.cuts, tuple(F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(W.n)))


def _rand_phi(rng, W):
    return EdgeStepFunction(W.cuts, [[F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(W.n)]
                                     for _ in range(W.n)])


def test_operator_examples():
    W = k2()
    f = StepFunction(HALVES, (F(1), F(-1)))
    assert apply_T(W, f).values == (F(-1, 2), F(1, 2))
    assert apply_laplacian(W, f).values == (F(2), F(-2))
    assert apply_d(W, f).phi[0, 1] == -2
    phi = EdgeStepFunction(HALVES, [[0, 1], [0, 0]])
    # degree 1/2 on each block: d* phi = (-1/2, 1/2) / (1/2)
    assert apply_dstar(W, phi).values == (F(-1), F(1))
    assert rayleigh(W, f) == 2
    assert rayleigh(constant(1), StepFunction(HALVES, (F(1), F(0)))) == 1


def test_laplacian_zero_degree():
    W = StepGraphon.uniform([[1, 0], [0, 0]])
    with pytest.raises(DegenerateDegreeError, match="block 2"):
        apply_laplacian(W, StepFunction(HALVES, (F(1), F(1))))
    # d* vanishes there instead of failing
    assert apply_dstar(W, EdgeStepFunction(HALVES, [[0, 1], [0, 0]])).values[1] == 0


def test_edge_function_ignores_lower_triangle():
    phi = EdgeStepFunction(HALVES, [[5, 1], [7, 9]])
    assert phi.phi[1, 0] == 0 and phi.phi[0, 0] == 0 and phi.phi[0, 1] == 1
    with pytest.raises(InputError):
        EdgeStepFunction(HALVES, [[1]])


def test_lambda_graph_examples():
    assert lambda_graph(WeightedGraph.complete(2)) == pytest.approx(2.0)
    assert lambda_graph(WeightedGraph.cycle(4)) == pytest.approx(1.0)
    assert lambda_graph(WeightedGraph.complete(5)) == pytest.approx(1.25)
    with pytest.raises(InputError, match="disconnected"):
        lambda_graph(WeightedGraph.from_edges(4, [(0, 1), (2, 3)]))


def test_lambda_graphon_examples():
    assert lambda_graphon(constant(1)) == 1.0
    assert lambda_graphon(k2()) == 1.0
    assert lambda_graphon(from_graph(WeightedGraph.cycle(4))) == pytest.approx(1.0)
    with pytest.raises(InputError):
        lambda_graphon(StepGraphon.uniform([[1, 0], [0, 1]]))


def test_adjointness_and_norm_bound(rng):
    for _ in range(500):
        W = random_rational_graphon(rng, rng.randint(1, 5))
        f, g = _rand_f(rng, W), _rand_f(rng, W)
        phi = _rand_phi(rng, W)
        assert inner_e(W, apply_d(W, f), phi) == inner_v(W, f, apply_dstar(W, phi))
        df = apply_d(W, f)
        assert inner_e(W, df, df) <= 2 * inner_v(W, f, f)


def test_laplacian_matches_dstar_d(rng):
    # <Delta f, g>_v = <df, dg>_e holds up to the diagonal-block mass
    for _ in range(50):
        W = random_rational_graphon(rng, rng.randint(1, 5))
        f = _rand_f(rng, W)
        assert inner_v(W, apply_dstar(W, apply_d(W, f)), f) == inner_e(W, apply_d(W, f), apply_d(W, f))


def test_project_mean_zero(rng):
    for _ in range(50):
        W = random_rational_graphon(rng, rng.randint(1, 5))
        p = project_mean_zero(W, _rand_f(rng, W))
        one = StepFunction(W.cuts, (1,) * W.n)
        assert inner_v(W, p, one) == 0


def test_rayleigh_at_least_lambda(rng):
    for _ in range(100):
        W = random_rational_graphon(rng, rng.randint(2, 5))
        f = _rand_f(rng, W)
        try:
            r = rayleigh(W, f)
        except InputError:
            continue
        assert float(r) >= lambda_graphon(W) - 1e-12
    with pytest.raises(InputError, match="constant"):
        rayleigh(k2(), StepFunction(HALVES, (F(3), F(3))))


def test_block_eigenfunction_attains_lambda(rng):
    for _ in range(20):
        W = random_rational_graphon(rng, rng.randint(2, 5))
        g = block_eigenfunction(W)
        lam_g = float(rayleigh(W.refine(W.cuts), g))
        assert min(lam_g, 1.0) == pytest.approx(lambda_graphon(W), abs=1e-9)
    assert block_eigenfunction(constant(1)) is None


def test_refinement_stability(rng):
    for _ in range(20):
        W = random_rational_graphon(rng, rng.randint(2, 4))
        extra = sorted({F(rng.randint(1, 15), 16) for _ in range(3)} | set(W.cuts))
        assert lambda_graphon(W.refine(extra)) == pytest.approx(lambda_graphon(W), abs=1e-9)


def test_graph_versus_graphon_spectrum(rng):
    for _ in range(30):
        G = random_connected_graph(rng, rng.randint(2, 8), weighted=rng.random() < 0.5)
        assert lambda_graphon(from_graph(G)) == pytest.approx(min(lambda_graph(G), 1.0), abs=1e-12)


def test_kernel_functions_have_rayleigh_one():
    # zero mean inside each block: T kills it and the quotient is exactly 1
    W = StepGraphon.uniform([[F(1, 2), 1], [1, F(1, 3)]]).refine((F(0), F(1, 4), F(1, 2), F(3, 4), F(1)))
    f = StepFunction(W.cuts, (F(1), F(-1), F(2), F(-2)))
    assert apply_T(W, f).values == (0, 0, 0, 0)
    assert rayleigh(W, f) == 1 or float(rayleigh(W, f)) >= lambda_graphon(W)


def test_sandwich_flags_directions():
    flags = sandwich_flags(0.5, 1.0, 0.3, 0.6)
    assert flags["cheeger_ok"] and flags["buser_ok"] and flags["buser_sym_ok"]
    assert not sandwich_flags(0.7, 1.0, 0.3, 0.6)["buser_ok"]
    assert not sandwich_flags(0.1, 1.0, 0.3, 0.6)["cheeger_ok"]


def test_verify_sandwich(rng):
    for W in [k2(), constant(1), counterexample_wn(6)] + [random_rational_graphon(rng, 4) for _ in range(10)]:
        rep = verify_sandwich(W)
        assert rep.ok, rep.slack
        assert rep.h_certified and rep.g_certified
        assert rep.h == pytest.approx(graphon_cheeger(W).value)
        assert rep.to_json()["convention_note"]

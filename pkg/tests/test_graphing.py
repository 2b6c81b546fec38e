import math
import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import random_connected_graph
from limit_cheeger.cheeger import DegenerateCutError, integral_cheeger
from limit_cheeger.graphing import (
    GOLDEN,
    Graphing,
    TranslationMap,
    cheeger_atomic,
    coarea_graphing,
    complement_set,
    e_graphing,
    full_set,
    graphing_from_graph,
    graphing_from_json,
    lambda_atomic,
    ratio_h_graphing,
    rotation_cut,
    rotation_graphing,
    rotation_lambda_upper,
    sandwich_atomic,
    symmetry_audit,
    vol_graphing,
)
from limit_cheeger.graphon import WeightedGraph
from limit_cheeger.intervals import InputError, IntervalSet, StepFunction, normalize, translate_mod1
from limit_cheeger.spectral import lambda_graph

F = Fraction
C4 = WeightedGraph.cycle(4)
K2 = WeightedGraph.complete(2)
SQRT2M1 = math.sqrt(2) - 1


def _random_intervals(rng, k):
    pts = sorted(F(rng.randrange(1 << 16), 1 << 16) for _ in range(2 * k))
    return normalize(zip(pts[0::2], pts[1::2]))


def test_atomic_construction():
    G = graphing_from_graph(K2)
    assert G.atoms == ((F(1, 4), F(1, 2)), (F(3, 4), F(1, 2)))
    assert G.atom_edges == ((0, 1),)
    G = graphing_from_graph(C4)
    assert G.n_atoms == 4 and len(G.atom_edges) == 4 and G.max_degree() == 2
    assert all(len(a) == 2 for a in G.neighbors())
    with pytest.raises(InputError):
        graphing_from_graph(WeightedGraph([[0, 2], [2, 0]]))
    with pytest.raises(InputError):
        graphing_from_graph(WeightedGraph([[1, 1], [1, 0]]))


def test_atomic_measures():
    G = graphing_from_graph(C4)
    assert e_graphing(G, {0}, {1}) == F(1, 4)
    assert vol_graphing(G, full_set(G)) == 2
    assert ratio_h_graphing(graphing_from_graph(K2), {0}) == 1
    # interval-set arguments select the atoms they contain
    assert e_graphing(G, IntervalSet.interval(0, F(1, 4)), IntervalSet.interval(F(1, 4), F(1, 2))) == F(1, 4)


def test_rotation_examples():
    G = rotation_graphing(SQRT2M1)
    assert G.max_degree() == 2 and not G.rational_warning
    A = IntervalSet.interval(0, F(1, 10))
    assert float(e_graphing(G, A, A.complement())) == pytest.approx(0.2, abs=1e-15)
    assert e_graphing(G, IntervalSet.full(), IntervalSet.full()) == 2
    half = IntervalSet.interval(0, F(1, 2))
    assert vol_graphing(G, half) == 1
    assert ratio_h_graphing(G, half) == 2 * G.maps[0].offset
    with pytest.raises(InputError):
        rotation_graphing(1.5)
    assert rotation_graphing(F(1, 3)).rational_warning


def test_volume_additivity(rng):
    G = rotation_graphing(GOLDEN)
    for _ in range(50):
        A = _random_intervals(rng, rng.randint(1, 6))
        assert vol_graphing(G, A) == 2 * A.measure
        assert vol_graphing(G, A) + vol_graphing(G, A.complement()) == vol_graphing(G, IntervalSet.full())


def test_degenerate_cut_names_side():
    G = rotation_graphing(GOLDEN)
    with pytest.raises(DegenerateCutError):
        ratio_h_graphing(G, IntervalSet.full())
    H = Graphing(atoms=((F(1, 4), F(1, 2)), (F(3, 4), F(1, 2))), atom_edges=())
    with pytest.raises(DegenerateCutError, match="vol\\(A\\)"):
        ratio_h_graphing(H, {0})


def test_atomic_equals_graph(rng):
    for _ in range(50):
        Fg = random_connected_graph(rng, rng.randint(2, 10))
        G = graphing_from_graph(Fg)
        assert cheeger_atomic(G).value == integral_cheeger(Fg).value
        assert lambda_atomic(G) == lambda_graph(Fg)
    assert cheeger_atomic(graphing_from_graph(C4)).value == 0.5
    assert lambda_atomic(graphing_from_graph(C4)) == pytest.approx(1.0)
    assert lambda_atomic(graphing_from_graph(K2)) == pytest.approx(2.0)


def test_atomic_disconnected():
    G = graphing_from_graph(WeightedGraph.from_edges(4, [(0, 1), (2, 3)]))
    assert cheeger_atomic(G).value == 0
    with pytest.raises(InputError):
        lambda_atomic(G)


def test_rotation_cut_examples():
    for N, expected in ((9, F(1, 10)), (49, F(1, 50))):
        r = rotation_cut(GOLDEN, N)
        assert r.valid and r.ratio == expected
        assert e_graphing(rotation_graphing(GOLDEN), r.A, r.A.complement()) == 2 * r.ell
    assert rotation_cut(GOLDEN, 200).valid
    with pytest.raises(InputError):
        rotation_cut(GOLDEN, 0)


def test_rotation_cut_ratio_identity():
    for N in range(1, 51):
        r = rotation_cut(GOLDEN, N)
        assert r.valid and r.ratio * (N + 1) == 1


def test_rotation_lambda_upper():
    assert rotation_lambda_upper(GOLDEN, 10 ** 4) <= 1e-6
    vals = [rotation_lambda_upper(GOLDEN, K) for K in (1, 10, 100, 1000)]
    assert vals == sorted(vals, reverse=True)
    assert rotation_lambda_upper(0.25, 4) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(InputError):
        rotation_lambda_upper(GOLDEN, 0)


def test_rotation_lambda_upper_vs_sampled_cosine():
    # numeric Rayleigh quotient of cos(2 pi k x) for the minimizing k on a 2^16 grid
    a, K = GOLDEN, 200
    k = int(np.argmin([1 - math.cos(2 * math.pi * j * a) for j in range(1, K + 1)])) + 1
    x = np.arange(1 << 16) / (1 << 16)
    f = np.cos(2 * np.pi * k * x)
    num = np.mean((np.cos(2 * np.pi * k * ((x + a) % 1)) - f) ** 2)
    assert num / (2 * np.mean(f ** 2)) == pytest.approx(rotation_lambda_upper(a, K), rel=1e-6)


def test_symmetry_audit():
    assert symmetry_audit(rotation_graphing(GOLDEN)) <= 1e-12
    assert symmetry_audit(graphing_from_graph(C4)) == 0
    dom = IntervalSet.interval(0, F(1, 2))
    bad = TranslationMap(dom, F(1, 4), image=translate_mod1(IntervalSet.interval(0, F(3, 8)), F(1, 4)))
    G = Graphing(maps=(bad,), validate=False)
    assert symmetry_audit(G) > 0
    with pytest.raises(InputError, match="map 1"):
        Graphing(maps=(bad,))


def test_ergodicity_proxy(rng):
    G = rotation_graphing(GOLDEN)
    seen = 0
    while seen < 100:
        A = _random_intervals(rng, rng.randint(1, 64))
        if not F(1, 20) <= A.measure <= F(19, 20):
            continue
        seen += 1
        assert e_graphing(G, A, complement_set(G, A)) > 0


def test_degree_bound():
    two = Graphing(maps=(TranslationMap(IntervalSet.full(), F(1, 7)),
                         TranslationMap(IntervalSet.interval(0, F(1, 2)), F(1, 3))))
    assert two.max_degree() == 4
    with pytest.raises(InputError, match="exceeds"):
        Graphing(maps=two.maps, degree_bound=3)


def test_coarea_graphing(rng):
    G = graphing_from_graph(C4)
    rep = coarea_graphing(G, (1, 0, 0, 0))
    assert rep.max_abs_gap == 0 and rep.lhs_simple == F(1, 2)
    assert coarea_graphing(G, (2, 2, 2, 2)).lhs_simple == 0
    R = rotation_graphing(GOLDEN)
    cuts = tuple(F(k, 8) for k in range(9))
    for _ in range(100):
        f = StepFunction(cuts, tuple(F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(8)))
        assert coarea_graphing(R, f).max_abs_gap <= 1e-12
    with pytest.raises(InputError):
        coarea_graphing(G, (1, 0))
    with pytest.raises(InputError):
        coarea_graphing(R, (1, 0))


def test_sandwich_atomic(rng):
    for _ in range(50):
        res = sandwich_atomic(graphing_from_graph(random_connected_graph(rng, rng.randint(2, 10))))
        assert res["cheeger_ok"] and res["buser_ok"] and res["certified"]


def test_json_roundtrip():
    G = graphing_from_json({"atoms": [[0.25, 0.5], [0.75, 0.5]], "atom_edges": [[0, 1]]})
    assert ratio_h_graphing(G, {0}) == 1
    R = graphing_from_json({"maps": [{"domain": "0:1", "offset": "1/3"}]})
    assert R.maps[0].offset == F(1, 3)
    with pytest.raises(InputError):
        graphing_from_json({"nodes": []})
    with pytest.raises(InputError):
        graphing_from_json({"atoms": [[0.25, 0.5], [0.75, 0.5]], "atom_edges": [[0, 5]]})
    with pytest.raises(InputError):
        Graphing(atoms=((0.2, 0.3), (0.4, 0.3)))

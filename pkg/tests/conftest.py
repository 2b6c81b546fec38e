import itertools
import random
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from limit_cheeger.graphon import StepGraphon, WeightedGraph


def random_rational_graphon(rng: random.Random, n: int, denom: int = 4, connected: bool = True) -> StepGraphon:
    """Random step graphon with rational cuts and entries; optionally forced connected."""
    while True:
        inner = sorted(rng.sample(range(1, 4 * n), n - 1))
        cuts = [Fraction(0)] + [Fraction(c, 4 * n) for c in inner] + [Fraction(1)]
        M = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                M[i][j] = M[j][i] = Fraction(rng.randint(0, denom), denom)
        W = StepGraphon(tuple(cuts), M)
        if not connected:
            return W
        from limit_cheeger.graphon import is_connected

        if is_connected(W):
            return W


def random_connected_graph(rng: random.Random, n: int, p: float = 0.5, weighted: bool = False) -> WeightedGraph:
    while True:
        w = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < p:
                    w[i][j] = w[j][i] = Fraction(rng.randint(1, 4), 4) if weighted else Fraction(1)
        G = WeightedGraph(w)
        if n == 1 or G.is_connected():
            return G


def random_regular_graph(rng: random.Random, n: int, d: int) -> WeightedGraph:
    """Pairing model with rejection; connected, simple."""
    while True:
        stubs = [v for v in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for a, b in zip(stubs[0::2], stubs[1::2]):
            if a == b or (min(a, b), max(a, b)) in edges:
                ok = False
                break
            edges.add((min(a, b), max(a, b)))
        if ok:
            G = WeightedGraph.from_edges(n, sorted(edges))
            if G.is_connected():
                return G


def brute_integral_cheeger(G: WeightedGraph) -> float:
    """Independent oracle: every proper subset, plain Python floats."""
    n = G.n
    w = [[float(G.w[i, j]) for j in range(n)] for i in range(n)]
    vol = [sum(r) for r in w]
    V = sum(vol)
    best = float("inf")
    for k in range(1, n):
        for S in itertools.combinations(range(n), k):
            s = set(S)
            cut = sum(w[i][j] for i in s for j in range(n) if j not in s)
            vs = sum(vol[i] for i in s)
            best = min(best, cut / min(vs, V - vs))
    return best


@pytest.fixture
def rng():
    return random.Random(12345)


@st.composite
def interval_sets(draw, max_parts=5, denom=64):
    from limit_cheeger.intervals import normalize

    k = draw(st.integers(0, max_parts))
    pts = sorted(draw(st.lists(st.integers(0, denom), min_size=2 * k, max_size=2 * k)))
    return normalize((Fraction(a, denom), Fraction(b, denom)) for a, b in zip(pts[0::2], pts[1::2]))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)

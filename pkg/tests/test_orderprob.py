import math
import random

import numpy as np
import pytest

from uncertain_xes.orderprob import Piecewise, chain_probability, uniform_step


@pytest.mark.parametrize("measures, expected", [
    ([(0, 1), (0, 1)], 1 / 2),
    ([(0, 1), (0, 1), (0, 1)], 1 / 6),
    ([(0, 1)] * 4, 1 / 24),
    ([(0, 1), (0.5, 1.5)], 7 / 8),          # 1 - (1/2)(1/2)(1/2)
    ([(0.5, 1.5), (0, 1)], 1 / 8),
    ([(0.5, 0.5), (0, 1)], 1 / 2),
    ([(0, 1), (0.25, 0.25)], 1 / 4),
    ([(0, 2), (1, 1), (0, 2)], 1 / 4),      # P(X<1) * P(Y>1)
    ([(0, 1), (2, 3)], 1.0),
    ([(2, 3), (0, 1)], 0.0),
    ([(3, 3), (1, 1)], 0.0),
])
def test_hand_integrals(measures, expected):
    assert chain_probability(measures, [False] * (len(measures) - 1)) == pytest.approx(expected, abs=1e-12)


def test_touching_uniforms():
    # X ~ U(0,2), Y ~ U(1,3): P(X <= Y) = 1 - (1/2)(1/2)(1/2)
    assert chain_probability([(0, 2), (1, 3)], [False]) == pytest.approx(7 / 8, abs=1e-12)


def test_point_ties():
    assert chain_probability([(1, 1), (1, 1)], [False]) == 1.0
    assert chain_probability([(1, 1), (1, 1)], [True]) == 0.0
    # a point at the left edge of a uniform: strictness has no effect on a null set
    assert chain_probability([(0, 1), (0, 0)], [True]) == 0.0
    assert chain_probability([(0, 0), (0, 1)], [True]) == 1.0


def test_piecewise_evaluation():
    h = uniform_step(Piecewise(1.0), 0.0, 2.0)
    assert h(-1) == 0.0
    assert h(1) == pytest.approx(0.5)
    assert h(5) == pytest.approx(1.0)
    assert h.left_limit(0.0) == 0.0


def _mc(measures, strict, n, rng):
    draws = [np.full(n, lo) if lo == hi else rng.uniform(lo, hi, n) for lo, hi in measures]
    ok = np.ones(n, dtype=bool)
    for i, (a, b) in enumerate(zip(draws, draws[1:])):
        ok &= (a < b) if strict[i] else (a <= b)
    return ok.mean()


@pytest.mark.parametrize("case", range(25))
def test_against_monte_carlo(case):
    r = random.Random(case)
    k = r.randint(2, 5)
    measures = []
    for _ in range(k):
        lo = r.randint(0, 6)
        width = r.choice([0, 0, 1, 2, 4])
        measures.append((float(lo), float(lo + width)))
    strict = [r.random() < 0.5 for _ in range(k - 1)]
    n = 400_000
    exact = chain_probability(measures, strict)
    est = _mc(measures, strict, n, np.random.default_rng(case))
    se = math.sqrt(max(exact * (1 - exact), 1e-12) / n)
    assert abs(exact - est) <= 4 * se + 1e-12

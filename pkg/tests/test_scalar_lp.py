from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog as scipy_linprog

from widthlab._scalar import fmt, sign, to_scalar, tolerance
from widthlab.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, linprog


def test_scalar_parsing_and_format():
    assert to_scalar("3/6") == Fraction(1, 2)
    assert to_scalar(0.1) == Fraction(1, 10)
    assert to_scalar(0.1, exact=False) == 0.1
    assert fmt(Fraction(4)) == "4/1"
    assert fmt(Fraction(-3, 9)) == "-1/3"
    with pytest.raises(TypeError):
        to_scalar(True)


def test_float_sign_uses_tolerance():
    assert sign(1e-12) == 0
    with tolerance(1e-15):
        assert sign(1e-12) == 1
    assert sign(Fraction(1, 10 ** 30)) == 1


def test_small_lp():
    # max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18, x, y >= 0
    res = linprog([3, 5], A_ub=[[1, 0], [0, 2], [3, 2], [-1, 0], [0, -1]],
                  b_ub=[4, 12, 18, 0, 0], maximize=True)
    assert res.status == OPTIMAL
    assert res.fun == 36 and res.x == (2, 6)


def test_lp_status():
    assert linprog([1], A_ub=[[1], [-1]], b_ub=[-1, -1]).status == INFEASIBLE
    assert linprog([1], A_ub=[[1]], b_ub=[0]).status == UNBOUNDED


@given(st.integers(0, 10 ** 6))
def test_lp_matches_scipy(seed):
    rng = np.random.default_rng(seed)
    n, m = rng.integers(2, 4), rng.integers(3, 7)
    A = rng.integers(-5, 6, size=(m, n))
    b = rng.integers(1, 10, size=m)
    c = rng.integers(-5, 6, size=n)
    # box keeps the problem bounded
    A = np.vstack([A, np.eye(n, dtype=int), -np.eye(n, dtype=int)])
    b = np.concatenate([b, 10 * np.ones(n, dtype=int), 10 * np.ones(n, dtype=int)])
    ours = linprog(c.tolist(), A_ub=A.tolist(), b_ub=b.tolist())
    ref = scipy_linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * n, method="highs")
    assert ours.status == OPTIMAL and ref.status == 0
    assert abs(float(ours.fun) - ref.fun) <= 1e-7
    x = ours.x
    assert all(sum(Fraction(int(a)) * xi for a, xi in zip(row, x)) <= int(bi)
               for row, bi in zip(A, b))

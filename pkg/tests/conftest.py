import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from widthlab.geometry import convex_hull
from widthlab.norms import PolytopalNorm, l1_norm, linf_norm

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("default")

TETRAHEDRON = [(-1, -1, -1), (1, 1, -1), (1, -1, 1), (-1, 1, 1)]


def rationals(lo=-4, hi=4, max_den=4):
    return st.builds(lambda n, d: Fraction(n, d),
                     st.integers(lo * max_den, hi * max_den), st.integers(1, max_den))


def points(dim, **kw):
    return st.tuples(*[rationals(**kw)] * dim)


def point_sets(dim, min_size=2, max_size=6):
    return st.lists(points(dim), min_size=min_size, max_size=max_size, unique=True)


def random_hexagon_norm(rng):
    """Centrally symmetric hexagon with small integer vertices."""
    while True:
        pts = [(Fraction(rng.randint(1, 6)), Fraction(rng.randint(-6, 6))) for _ in range(3)]
        pts = [(x if i == 0 else x * rng.choice((1, -1)), y) for i, (x, y) in enumerate(pts)]
        P = convex_hull(pts + [(-x, -y) for x, y in pts])
        if len(P.vertices) == 6:
            return PolytopalNorm(P, name="hexagon")


def random_planar_body(rng):
    while True:
        pts = [(Fraction(rng.randint(-6, 6), rng.randint(1, 3)),
                Fraction(rng.randint(-6, 6), rng.randint(1, 3)))
               for _ in range(rng.randint(2, 4))]
        K = convex_hull(pts)
        if len(K.vertices) >= 2:
            return K


@st.composite
def planar_norms(draw):
    kind = draw(st.sampled_from(["l1", "linf", "hexagon"]))
    if kind == "l1":
        return l1_norm(2)
    if kind == "linf":
        return linf_norm(2)
    return random_hexagon_norm(random.Random(draw(st.integers(0, 10 ** 6))))


@pytest.fixture
def l12():
    return l1_norm(2)


@pytest.fixture
def l13():
    return l1_norm(3)


@pytest.fixture
def linf2():
    return linf_norm(2)


@pytest.fixture
def tetrahedron():
    return convex_hull(TETRAHEDRON)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)

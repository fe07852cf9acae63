import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from greenlie.cohomology import EquivCochain, complex_for
from greenlie.constructions import build_example
from greenlie.mackey import LieBimodule

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

# every catalog constructor at desk scale
EXAMPLE_ARGS = [
    ("heisenberg", "2", "2"),
    ("heisenberg", "3", "2"),
    ("heisenberg", "3", "3"),
    ("sl-transpose", "2"),
    ("sl-transpose", "3"),
    ("fixed-point", "sl2"),
    ("fixed-point", "h5"),
    ("direct-sum", "h3", "2"),
    ("direct-sum", "h3", "3"),
    ("derivation", "dual-numbers"),
]

# small enough for degree <= 3 complexes with both modules
SMALL_ARGS = [
    ("heisenberg", "2", "2"),
    ("sl-transpose", "2"),
    ("fixed-point", "sl2"),
    ("fixed-point", "h5"),
    ("direct-sum", "h3", "2"),
    ("direct-sum", "h3", "3"),
    ("derivation", "dual-numbers"),
]


def example_id(args):
    return "-".join(args)


_cache = {}


def example(*args):
    if args not in _cache:
        _cache[args] = build_example(*args)
    return _cache[args]


def modules(L):
    return {"trivial": LieBimodule.trivial(L, 1), "adjoint": LieBimodule.adjoint(L)}


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def rand_q(rng: random.Random, span=3, den=3):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_vec(rng, n, density=1.0):
    return tuple(rand_q(rng) if rng.random() < density else Fraction(0) for _ in range(n))


def random_constrained(cx, n, rng) -> EquivCochain:
    K = cx.top_basis(n)
    return EquivCochain.from_vector(n, K @ rand_vec(rng, K.cols), cx.top_len(n))


def random_cocycle(cx, n, rng) -> EquivCochain:
    Z = cx.top_cocycles(n)
    v = [Fraction(0)] * Z.ambient_dim
    for b in Z.basis:
        c = rand_q(rng)
        v = [x + c * y for x, y in zip(v, b)]
    return EquivCochain.from_vector(n, tuple(v), cx.top_len(n))


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture(scope="session")
def h22():
    return example("heisenberg", "2", "2")


@pytest.fixture(scope="session")
def sl2t():
    return example("sl-transpose", "2")


@pytest.fixture(scope="session")
def cx_h22_adj(h22):
    return complex_for(h22, LieBimodule.adjoint(h22))


@pytest.fixture(scope="session")
def cx_sl2_adj(sl2t):
    return complex_for(sl2t, LieBimodule.adjoint(sl2t))

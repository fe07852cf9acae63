import pytest
from hypothesis import given, strategies as st

from greenlie.constructions import abelian_functor, fixed_point_functor, heisenberg_example, zero_functor
from greenlie.errors import InvalidStructure, PrecondViolation
from greenlie.exactq import Matrix
from greenlie.liecore import LieAlgebra
from greenlie.mackey import (CpMackey, GreenLieFunctor, GreenLieMorphism, LieBimodule, validate_bimodule,
                             validate_green_lie, validate_mackey, validate_morphism)

from conftest import EXAMPLE_ARGS, example, example_id

SWAP = Matrix.from_rows([[0, 1], [1, 0]])


def swap_functor():
    return fixed_point_functor(LieAlgebra.abelian(2), SWAP, 2)


def test_swap_fixed_points():
    F = swap_functor()
    assert F.r @ F.t == Matrix.identity(2) + SWAP
    # oracle: diagonal inclusion and t = id + swap in diagonal coordinates
    assert F.r == Matrix.from_rows([[1], [1]])
    assert F.t == Matrix.from_rows([[1, 1]])


def test_zero_functor_valid():
    assert validate_mackey(zero_functor(3).mackey).ok


def test_doubled_transfer_fails():
    F = swap_functor()
    rep = validate_mackey(CpMackey(2, F.r, F.t * 2, F.c))
    assert rep.axioms() == ["(vi) r o t = sum c^i"]


def test_heisenberg_transfer_without_factor_p():
    F = heisenberg_example(2, 2)
    z_bottom, z_top = 4, 2
    rows = F.t.tolist()
    assert rows[z_top][z_bottom] == 2
    rows[z_top][z_bottom] = 1
    t = Matrix.from_rows(rows)
    bad = GreenLieFunctor.unchecked(2, F.top, F.bottom, F.r, t, F.c)
    rep = validate_green_lie(bad)
    assert "(vi) r o t = sum c^i" in rep.axioms()
    assert any(z_bottom in f.indices for f in rep.findings)
    with pytest.raises(InvalidStructure):
        GreenLieFunctor(2, F.top, F.bottom, F.r, t, F.c)


def test_c_order_violation_named():
    m = CpMackey(2, Matrix.identity(1), Matrix.scalar(1, 2), Matrix.scalar(1, 2))
    assert "(iii)/(iv) c^p = id" in validate_mackey(m).axioms()


def test_non_prime_rejected():
    with pytest.raises(PrecondViolation):
        CpMackey(4, Matrix.identity(1), Matrix.scalar(1, 4), Matrix.identity(1))


@pytest.mark.parametrize("args", EXAMPLE_ARGS, ids=example_id)
def test_adjoint_and_trivial_modules_valid(args):
    L = example(*args)
    assert validate_bimodule(L, LieBimodule.adjoint(L)).ok
    assert validate_bimodule(L, LieBimodule.trivial(L, 2)).ok


def test_adjoint_with_identity_conjugation_fails():
    L = heisenberg_example(2, 2)
    mk = CpMackey(2, L.r, L.t, Matrix.identity(L.bottom.dim))
    top = [L.top.ad(i) for i in range(L.top.dim)]
    bottom = [L.bottom.ad(i) for i in range(L.bottom.dim)]
    M = LieBimodule.unchecked(L, mk, top, bottom)
    rep = validate_bimodule(L, M)
    assert "compatibility c(x.u) = c(x).c(u)" in rep.axioms()
    # x1 . y1 = z, but c(x1) . y1 = x2 . y1 = 0
    assert (0, 2) in [f.indices for f in rep.findings]
    with pytest.raises(InvalidStructure):
        LieBimodule(L, mk, top, bottom)


def test_morphism_examples():
    L = heisenberg_example(2, 2)
    assert validate_morphism(L, L, GreenLieMorphism.identity(L)).ok
    assert validate_morphism(L, L, GreenLieMorphism.zero(L, L)).ok
    # (id, c): every square commutes because c r = r, t c = t and c is an automorphism
    assert validate_morphism(L, L, GreenLieMorphism(Matrix.identity(L.top.dim), L.c)).ok


def test_morphism_failure_reports_square():
    L = heisenberg_example(2, 2)
    f = GreenLieMorphism(Matrix.zeros(L.top.dim, L.top.dim), L.c)
    rep = validate_morphism(L, L, f)
    assert "f_bottom o r = r o f_top" in rep.axioms()


@given(st.integers(0, 1), st.integers(0, 1))
def test_composition_of_morphisms(a, b):
    L = heisenberg_example(2, 2)
    ms = [GreenLieMorphism.identity(L), GreenLieMorphism(Matrix.identity(L.top.dim), L.c)]
    g = ms[a].compose(ms[b])
    assert validate_morphism(L, L, g).ok


@pytest.mark.parametrize("args", EXAMPLE_ARGS, ids=example_id)
def test_image_of_r_fixed_by_c(args):
    L = example(*args)
    for col in L.r.columns():
        assert L.c @ col == col


@pytest.mark.parametrize("p", [2, 3, 5])
def test_abelian_trivial_action(p):
    F = abelian_functor(2, p)
    assert F.r == Matrix.identity(2) and F.t == Matrix.scalar(2, p)

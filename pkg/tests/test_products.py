from math import comb

import pytest

from greenlie.constructions import abelian_functor, zero_functor
from greenlie.errors import InvalidStructure, PrecondViolation, PrimeMismatch
from greenlie.exactq import Matrix, rank, unit_vec
from greenlie.liecore import alt_tuples
from greenlie.mackey import validate_mackey
from greenlie.products import exterior_product, tensor_product

from conftest import EXAMPLE_ARGS, example, example_id


def test_zero_factor():
    L = example("heisenberg", "2", "2")
    Z = zero_functor(2)
    P = tensor_product(L, Z)
    assert P.top.dim == 0 and P.bottom.dim == 0


def test_trivial_one_dim_regression():
    L = abelian_functor(1, 2)
    # ambient top = <x (x) y> (+) <a (x) b>; both generator families give 2<a(x)b> - <x(x)y>
    rels = Matrix.from_rows([[-1, 2], [-1, 2]])
    assert 2 - rank(rels) == 1
    P = tensor_product(L, L)
    assert P.bottom.dim == 1 and P.top.dim == 1


@pytest.mark.parametrize("args", EXAMPLE_ARGS, ids=example_id)
def test_transfer_hits_every_bottom_class(args):
    L = example(*args)
    P = tensor_product(L, L, coinvariants=True)
    nb = P.bottom.ambient_dim
    for k in range(nb):
        amb = tuple(1 if i == k else 0 for i in range(P.top.ambient_dim))
        assert P.underlying.t.column(k) == P.top.map.project(amb)


@pytest.mark.parametrize("args", EXAMPLE_ARGS, ids=example_id)
@pytest.mark.parametrize("build", [tensor_product, exterior_product], ids=["tensor", "exterior"])
def test_coinvariant_products_are_mackey(args, build):
    L = example(*args)
    P = build(L, L, coinvariants=True)
    assert validate_mackey(P.underlying).ok


@pytest.mark.parametrize("args", EXAMPLE_ARGS, ids=example_id)
@pytest.mark.parametrize("build", [tensor_product, exterior_product], ids=["tensor", "exterior"])
def test_literal_product_defect_is_only_t_c(args, build):
    """The literal quotient satisfies every axiom except, possibly, t o c = t."""
    L = example(*args)
    P = build(L, L, strict=False)
    assert set(P.report.axioms()) <= {"(v) t o c = t"}
    if L.p == 2:
        assert P.report.ok


def test_literal_product_fails_for_p3():
    L = example("direct-sum", "h3", "3")
    with pytest.raises(InvalidStructure) as info:
        tensor_product(L, L)
    assert info.value.report.axioms() == ["(v) t o c = t"]


def test_prime_mismatch():
    with pytest.raises(PrimeMismatch):
        tensor_product(abelian_functor(1, 2), abelian_functor(1, 3))


@pytest.mark.parametrize("args", EXAMPLE_ARGS, ids=example_id)
def test_exterior_bottom_is_wedge_square(args):
    L = example(*args)
    P = exterior_product(L, L, coinvariants=True)
    d = L.bottom.dim
    assert P.bottom.dim == comb(d, 2)
    assert sorted(P.wedge_bijection().values()) == list(alt_tuples(d, 2))


def test_exterior_one_dim_bottom_vanishes():
    L = abelian_functor(1, 2)
    assert exterior_product(L, L).bottom.dim == 0


def test_exterior_needs_equal_dims():
    with pytest.raises(PrecondViolation):
        exterior_product(abelian_functor(1, 2), abelian_functor(2, 2))


def _wedge(P, x, y):
    """Class of x (x) y in the exterior bottom, as quotient coordinates."""
    d = P.factor_dims[1][1]
    v = [0] * (d * d)
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            v[i * d + j] += a * b
    return P.bottom.map.project(tuple(v))


@pytest.mark.parametrize("args", [("heisenberg", "2", "2"), ("direct-sum", "h3", "3")], ids=example_id)
def test_exterior_restriction_formula(args):
    L = example(*args)
    P = exterior_product(L, L, coinvariants=True)
    d, p = L.bottom.dim, L.p
    for x in range(d):
        for y in range(d):
            amb = [0] * P.top.ambient_dim
            amb[P.bottom_index(x, y)] = 1
            lhs = P.underlying.r @ P.top.map.project(tuple(amb))
            rhs = [0] * P.bottom.dim
            cx_, cy_ = unit_vec(d, x), unit_vec(d, y)
            for _ in range(p):
                rhs = [a + b for a, b in zip(rhs, _wedge(P, cx_, cy_))]
                cx_, cy_ = L.c @ cx_, L.c @ cy_
            assert lhs == tuple(rhs)


@pytest.mark.parametrize("args", EXAMPLE_ARGS[:4], ids=example_id)
def test_conjugation_preserves_wedge_relations(args):
    L = example(*args)
    E = exterior_product(L, L, coinvariants=True)
    c = E.underlying.c
    assert c.rows == E.bottom.dim
    rel = E.bottom.relations
    for v in rel.basis:
        w = [0] * len(v)
        d = L.bottom.dim
        for i in range(d):
            for j in range(d):
                a = v[i * d + j]
                if a:
                    ci, cj = L.c.column(i), L.c.column(j)
                    for k in range(d):
                        for l in range(d):
                            w[k * d + l] += a * ci[k] * cj[l]
        assert tuple(w) in rel

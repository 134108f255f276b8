import pytest

import oracles
from tauu.errors import InvalidCoordinate, InvalidInput, NotProjectable
from tauu.factor import (
    Factorization,
    UFactorization,
    all_u_factorizations,
    check_tau_factorization,
    check_u_factorization,
    enumerate_tau_factorizations,
)
from tauu.products import (
    CoordinateFactorization,
    decompose_product_factorization,
    lift_u_factorization,
    project_u_factorization,
)
from tauu.relations import make_tau
from tauu.rings import make_ring


@pytest.fixture(scope="module")
def prod68():
    R = make_ring("Z6xZ8")
    return R, make_tau(R, "prod(full,full)")


@pytest.mark.parametrize("i", [1, 2])
def test_lift_then_project_round_trip(prod68, i):
    R, T = prod68
    Ri, Ti = R.factors[i - 1], T.components[i - 1]
    B = oracles.BRing((6, 8))
    tau = oracles.product_relation(B, [oracles.full(None), oracles.full(None)])
    for a in Ri.elements:
        if Ri.is_unit(a):
            continue
        for inner in all_u_factorizations(Ri, Ti, a):
            lifted = lift_u_factorization(R, T, CoordinateFactorization(i, inner))
            assert check_u_factorization(R, T, lifted.value(R), lifted)
            assert oracles.u_conditions(B, lifted.inessential, lifted.essential)
            assert oracles.is_tau_list(tau, lifted.inessential + lifted.essential)
            if a != Ri.zero:
                back = project_u_factorization(R, T, lifted, i)
                assert back.inner.inessential == inner.inessential
                assert back.inner.essential == inner.essential


def test_lift_rejects_invalid_inner(prod68):
    R, T = prod68
    bad = CoordinateFactorization(1, UFactorization(1, (), (2, 2)))
    with pytest.raises(InvalidInput):
        lift_u_factorization(R, T, bad)
    with pytest.raises(InvalidCoordinate):
        lift_u_factorization(R, T, CoordinateFactorization(3, UFactorization(1, (), (2,))))


def test_projection_needs_unit_elsewhere(prod68):
    R, T = prod68
    uf = UFactorization((1, 1), (), ((2, 2),))
    with pytest.raises(NotProjectable):
        project_u_factorization(R, T, uf, 1)


def test_projection_rejects_zero_parts(prod68):
    R, T = prod68
    uf = UFactorization((1, 1), (), ((0, 1),))
    with pytest.raises(NotProjectable):
        project_u_factorization(R, T, uf, 1)


def test_not_a_product():
    R = make_ring("Z12")
    T = make_tau(R, "full")
    with pytest.raises(InvalidCoordinate):
        project_u_factorization(R, T, UFactorization(1, (), (2,)), 1)
    with pytest.raises(InvalidCoordinate):
        decompose_product_factorization(R, T, Factorization(1, (2,)))


def test_decompose(prod68):
    R, T = prod68
    for a in [(3, 4), (2, 0), (0, 2), (3, 1)]:
        res = enumerate_tau_factorizations(R, T, a, limit=30)
        for F in res.factorizations.values():
            D = decompose_product_factorization(R, T, F)
            assert D.value(R) == F.value(R) == a
            for f in D.factors:
                nonunit = [k for k, (Rk, x) in enumerate(zip(R.factors, f)) if not Rk.is_unit(x)]
                assert len(nonunit) == 1
            assert len(D) >= len(F)

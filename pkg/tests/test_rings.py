import pytest

from conftest import SMALL_MODULI
import oracles
from tauu.errors import ElementError, InvalidCoordinate, InvalidSpec, RingAxiomViolation
from tauu.rings import (
    ASSOC,
    MODES,
    STRONG,
    VERY_STRONG,
    associated,
    carrier_partition,
    class_reps,
    embed,
    ideal_chain_height,
    make_ring,
    principal_ideal,
    ring_flags,
    table_ring,
)


@pytest.mark.parametrize("n", SMALL_MODULI)
def test_partition_matches_oracle(n):
    R = make_ring(f"Z{n}")
    B = oracles.BRing((n,))
    part = carrier_partition(R)
    assert part.units == set(B.units)
    assert part.r_sharp == set(B.sharp)
    assert len(R) == n


@pytest.mark.parametrize("n", SMALL_MODULI)
def test_associate_relations_match_oracle(n):
    R = make_ring(f"Z{n}")
    B = oracles.BRing((n,))
    for a in B.elements:
        for b in B.elements:
            assert associated(R, a, b, ASSOC) == B.assoc(a, b)
            assert associated(R, a, b, STRONG) == B.strong(a, b)
            assert associated(R, a, b, VERY_STRONG) == B.cong(a, b)


def test_principal_ideal_z12():
    R = make_ring("Z12")
    assert principal_ideal(R, 8).members == {0, 4, 8}
    assert 4 in principal_ideal(R, 8)


def test_product_ring_elements_and_embed():
    R = make_ring("Z6xZ8")
    assert len(R) == 48
    assert R.mul((3, 4), (3, 3)) == (3, 4)
    assert embed(R, 2, 4) == (1, 4)
    with pytest.raises(InvalidCoordinate):
        embed(R, 3, 1)
    with pytest.raises(ElementError):
        embed(R, 1, 7)


def test_z5_squared_cong_caveat():
    R = make_ring("Z5xZ5")
    x = (0, 1)
    assert associated(R, x, x, ASSOC)
    assert associated(R, x, x, STRONG)
    assert not associated(R, x, x, VERY_STRONG)
    Z5 = R.factors[0]
    assert associated(Z5, 0, 0, VERY_STRONG) and associated(Z5, 1, 1, VERY_STRONG)


@pytest.mark.parametrize("spec", ["Z1", "Z0", "Q7", "", "Z4 x", "Z6xZ"])
def test_bad_ring_specs(spec):
    with pytest.raises(InvalidSpec):
        make_ring(spec)


def test_element_parsing():
    R = make_ring("Z6xZ8")
    assert R.parse_element(" (3, 4) ") == (3, 4)
    with pytest.raises(ElementError):
        R.parse_element("(3,9)")
    with pytest.raises(ElementError):
        make_ring("Z6").parse_element("abc")


def test_table_ring_round_trip(tmp_path):
    add = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    mul = [[(i * j) % 4 for j in range(4)] for i in range(4)]
    R = table_ring(add, mul)
    assert [R.val(i) for i in R.unit_idx] == [1, 3]
    body = "4\n" + "\n".join(" ".join(map(str, r)) for r in add + mul)
    p = tmp_path / "z4.tbl"
    p.write_text(body)
    R2 = make_ring(f"table:{p}")
    assert len(R2) == 4 and R2.mul(2, 2) == 0


def test_table_ring_rejects_non_distributive():
    add = [[(i + j) % 3 for j in range(3)] for i in range(3)]
    mul = [[0, 0, 0], [0, 1, 2], [0, 2, 2]]
    with pytest.raises(RingAxiomViolation) as exc:
        table_ring(add, mul)
    assert exc.value.witness


@pytest.mark.parametrize("n", SMALL_MODULI)
def test_flags_match_oracle(n):
    R = make_ring(f"Z{n}")
    B = oracles.BRing((n,))
    flags = ring_flags(R)
    assert flags.presimplifiable == oracles.presimplifiable(B)
    sa = all(B.strong(a, b) for a in B.elements for b in B.elements if B.assoc(a, b))
    assert flags.strongly_associate == sa


def test_chain_height():
    assert ideal_chain_height(make_ring("Z6")) == 2
    assert ideal_chain_height(make_ring("Z20")) == 3
    assert ideal_chain_height(make_ring("Z8")) == 3


@pytest.mark.parametrize("mode", MODES)
def test_class_reps_are_class_invariant(mode):
    R = make_ring("Z12")
    reps = class_reps(R, mode)
    for i in range(len(R)):
        for j in range(len(R)):
            if mode != VERY_STRONG and associated(R, R.val(i), R.val(j), mode):
                assert reps[i] == reps[j]

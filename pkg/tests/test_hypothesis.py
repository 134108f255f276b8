"""Property-based checks on random rings, relations and factorizations."""

import itertools

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles
from tauu.factor import (
    Factorization,
    check_tau_factorization,
    check_u_factorization,
    to_u_factorization,
    u_split,
)
from tauu.relations import from_pairs, make_tau
from tauu.render import format_any, parse_factorization
from tauu.rings import ASSOC, STRONG, VERY_STRONG, associated, make_ring

SPECS = ["Z2", "Z4", "Z6", "Z8", "Z9", "Z10", "Z12", "Z2xZ4", "Z3xZ4", "Z2xZ2xZ2"]
FAST = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def _moduli(spec):
    return tuple(int(p[1:]) for p in spec.split("x"))


@st.composite
def ring_and_elems(draw, k=3):
    spec = draw(st.sampled_from(SPECS))
    R = make_ring(spec)
    xs = [R.val(draw(st.integers(0, len(R) - 1))) for _ in range(k)]
    return R, xs


@FAST
@given(ring_and_elems())
def test_ring_laws(data):
    R, (a, b, c) = data
    assert R.mul(a, b) == R.mul(b, a)
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.mul(R.one, a) == a and R.add(R.zero, a) == a


@FAST
@given(ring_and_elems(k=2))
def test_associate_hierarchy(data):
    R, (a, b) = data
    B = oracles.BRing(_moduli(R.name))
    assert associated(R, a, b, ASSOC) == B.assoc(a, b)
    assert associated(R, a, b, STRONG) == B.strong(a, b)
    assert associated(R, a, b, VERY_STRONG) == B.cong(a, b)
    if associated(R, a, b, STRONG):
        assert associated(R, a, b, ASSOC)
    if associated(R, a, b, VERY_STRONG):
        assert associated(R, a, b, ASSOC)
    assert associated(R, a, b, ASSOC) == associated(R, b, a, ASSOC)


@st.composite
def random_relation(draw):
    spec = draw(st.sampled_from(["Z4", "Z6", "Z8", "Z9", "Z12", "Z2xZ4"]))
    R = make_ring(spec)
    sharp = [R.val(i) for i in R.sharp_idx]
    pairs = [p for p in itertools.combinations_with_replacement(sharp, 2) if draw(st.booleans())]
    return R, from_pairs(R, pairs), pairs


@FAST
@given(random_relation())
def test_pair_relations_symmetric_and_restricted(data):
    R, T, pairs = data
    rel = oracles.pair_relation(pairs)
    sharp = [R.val(i) for i in R.sharp_idx]
    for a, b in itertools.product(sharp, repeat=2):
        assert T.holds(a, b) == T.holds(b, a) == rel(a, b)


@st.composite
def tau_factorization(draw):
    spec = draw(st.sampled_from(["Z4", "Z6", "Z8", "Z12", "Z20", "Z2xZ4", "Z6xZ8"]))
    R = make_ring(spec)
    kind = draw(st.sampled_from(["full", "comaximal"]))
    T = make_tau(R, kind)
    sharp = [R.val(i) for i in R.sharp_idx]
    factors = [draw(st.sampled_from(sharp))]
    for _ in range(draw(st.integers(0, 4))):
        ok = [x for x in sharp if all(T.holds(x, y) for y in factors)]
        if not ok:
            break
        factors.append(draw(st.sampled_from(ok)))
    units = [R.val(i) for i in sorted(R.inverse)]
    unit = draw(st.sampled_from(units))
    return R, T, Factorization(unit, tuple(factors))


@FAST
@given(tau_factorization())
def test_rearrangement_is_always_a_u_factorization(data):
    R, T, F = data
    a = F.value(R)
    assert check_tau_factorization(R, T, a, F)
    uf = to_u_factorization(R, F)
    assert check_u_factorization(R, T, a, uf)
    splits = u_split(R, F)
    assert any(s.same_split(uf) for s in splits)
    B = oracles.BRing(_moduli(R.name))
    for s in splits:
        assert oracles.u_conditions(B, s.inessential, s.essential)


@FAST
@given(tau_factorization())
def test_render_round_trip(data):
    R, _, F = data
    assert parse_factorization(R, format_any(R, F)) == F
    uf = to_u_factorization(R, F)
    assert parse_factorization(R, format_any(R, uf)) == uf

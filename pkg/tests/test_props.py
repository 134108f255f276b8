import itertools

import pytest

from conftest import both, pair_sample
import oracles
from tauu.errors import InvalidSpec
from tauu.factor import check_tau_factorization, check_u_factorization
from tauu.props import (
    CHAIN_PROPS,
    COUNTING_PROPS,
    check_atomicity,
    check_chain_props,
    check_counting_props,
    check_presimplifiable_variants,
    check_uniqueness_props,
    u_bfr_bound,
)
from tauu.rings import make_ring

CASES = [(n, k) for n in (4, 6, 8, 9, 10, 12) for k in ("full", "comaximal", "pairs")]


def _setup(n, kind):
    pairs = pair_sample(make_ring(f"Z{n}"), seed=3 * n + 1) if kind == "pairs" else None
    return both(n, kind, pairs)


def _oracle_u(B, t):
    return {a: oracles.u_factorizations(B, t, a, 5) for a in B.nonunits}


def test_z6_u_bfr_bound(z6):
    R, T = z6
    v = check_chain_props(R, T, "U-BFR")
    assert v.holds and v.details["bound"] == 2
    wit = v.details["realized_by"]
    assert check_u_factorization(R, T, wit["element"], wit["factorization"])
    assert len(wit["factorization"].essential) == 2


@pytest.mark.parametrize("n,kind", CASES)
def test_u_bfr_bound_matches_oracle(n, kind):
    R, T, B, t = _setup(n, kind)
    bound, _ = u_bfr_bound(R, T)
    brute = max((len(e) for found in _oracle_u(B, t).values() for _, e in found), default=0)
    assert bound == brute


@pytest.mark.parametrize("n,kind", CASES)
def test_bfr_matches_pumping(n, kind):
    R, T, B, t = _setup(n, kind)
    v = check_chain_props(R, T, "BFR")
    # lengths either stop growing or keep growing between the two horizons
    short = {a: oracles.longest_factorization(B, t, a, 4) for a in B.nonunits}
    long_ = {a: oracles.longest_factorization(B, t, a, 6) for a in B.nonunits}
    grows = any(long_[a] > short[a] for a in B.nonunits)
    assert v.holds == (not grows)
    if not v.holds:
        cert = v.witness["pump"]
        a = v.witness["element"]
        assert check_tau_factorization(R, T, a, cert.replay(3, B.one))
    assert check_chain_props(R, T, "FFR").holds == v.holds


def test_chain_props_on_finite_rings(z20):
    R, T = z20
    for which in ("ACCP", "U-ACCP", "U-FFR", "U-BFR"):
        assert check_chain_props(R, T, which).holds
    acc = check_chain_props(R, T, "ACCP")
    chain = acc.details["longest_chain"]
    B = oracles.BRing((20,))
    ideals = [B.ideal(x) for x in chain]
    assert all(a < b for a, b in zip(ideals, ideals[1:]))
    with pytest.raises(InvalidSpec):
        check_chain_props(R, T, "XYZ")


def test_counting_props_hold_with_sizes(z20):
    R, T = z20
    for which in COUNTING_PROPS:
        v = check_counting_props(R, T, which)
        assert v.holds and v.details["max_inventory"] >= 1
    with pytest.raises(InvalidSpec):
        check_counting_props(R, T, "nope")


def _u_alpha(B, t, found, alpha):
    grades = {}
    out = []
    for ine, ess in found:
        for b in ess:
            if b not in grades:
                grades[b] = oracles.grades(B, t, b, 5)[alpha]
        if all(grades[b] for b in ess):
            out.append((ine, ess))
    return out


@pytest.mark.parametrize("n,kind", CASES)
def test_u_atomic_and_u_hfr_match_oracle(n, kind):
    R, T, B, t = _setup(n, kind)
    per = {a: _u_alpha(B, t, f, "irreducible") for a, f in _oracle_u(B, t).items()}
    atomic = all(per[a] for a in B.nonunits)
    assert check_atomicity(R, T, "irreducible").holds == atomic
    hfr = atomic and all(len({len(e) for _, e in per[a]}) == 1 for a in B.nonunits)
    assert check_uniqueness_props(R, T, "U-HFR").holds == hfr


@pytest.mark.parametrize("n,kind", CASES)
def test_u_ufr_assoc_matches_oracle(n, kind):
    R, T, B, t = _setup(n, kind)
    per = {a: _u_alpha(B, t, f, "irreducible") for a, f in _oracle_u(B, t).items()}
    ok = all(per[a] for a in B.nonunits)
    for a in B.nonunits:
        classes = {tuple(sorted(tuple(sorted(B.ideal(b))) for b in e)) for _, e in per[a]}
        ok = ok and len(classes) <= 1
    assert check_uniqueness_props(R, T, "U-UFR", beta="assoc").holds == ok


@pytest.mark.parametrize("n,kind", CASES)
def test_presimplifiable_variants_match_oracle(n, kind):
    R, T, B, t = _setup(n, kind)
    rep = check_presimplifiable_variants(R, T)
    assert rep.presimplifiable.holds == oracles.presimplifiable(B)
    tau_pre = not any(
        x in f and len(f) >= 2 for x in B.sharp for f in oracles.factorizations(B, t, x, 4)
    )
    assert rep.tau_presimplifiable.holds == tau_pre
    u_pre = not any(ine for x in B.sharp for ine, _ in oracles.u_factorizations(B, t, x, 5))
    assert rep.tau_u_presimplifiable.holds == u_pre
    if not u_pre:
        w = rep.tau_u_presimplifiable.witness
        assert w["factorization"].inessential
        assert check_u_factorization(R, T, w["element"], w["factorization"])


def test_field_is_not_atomic_with_note():
    R, T, _, _ = both(5, "full")
    v = check_atomicity(R, T, "irreducible")
    assert not v.holds and v.witness["element"] == 0
    assert "empty" in v.note


def test_uniqueness_fails_through_atomicity():
    R, T, _, _ = both(4, "comaximal")
    v = check_uniqueness_props(R, T, "U-UFR")
    assert not v.holds and "atomicity" in v.note


def test_plain_hfr_z6_full_fails(z6):
    R, T = z6
    v = check_uniqueness_props(R, T, "HFR")
    assert not v.holds
    f1, f2 = v.witness["factorizations"]
    assert len(f1) != len(f2)


def test_z20_bounds(z20):
    R, T = z20
    u = check_chain_props(R, T, "U-BFR")
    assert u.details["bound"] == 3
    assert sorted(u.details["realized_by"]["factorization"].essential) == [2, 2, 5]
    b = check_chain_props(R, T, "BFR")
    assert not b.holds and 10 in b.witness["unbounded_elements"]

"""Acceptance criteria, one test per criterion, each with its time limit.

A summary line per criterion is printed at the end of the pytest run.
"""

import json
import time
from contextlib import contextmanager

import pytest

from conftest import pair_sample
from tauu import cli
from tauu.classify import classify_all, irreducibility
from tauu.factor import (
    UFactorization,
    apply_u_refinement,
    check_u_factorization,
    enumerate_tau_factorizations,
    enumerate_tau_u_factorizations,
    unboundedness_certificate,
)
from tauu.lab import FAIL, DEFAULT_CORPUS, SEPARATION, FINITE_IRREDUCIBLES_NOTE, run_corpus, search_open_question, verify
from tauu.props import check_chain_props, check_presimplifiable_variants
from tauu.relations import from_pairs, make_tau
from tauu.rings import ASSOC, STRONG, VERY_STRONG, associated, make_ring

CORPUS = [(f"Z{n}", t) for n in (4, 6, 8, 12, 20) for t in ("full", "comaximal")]
IMPLICATION_IDS = (
    [f"GEN-REL-{k}" for k in range(1, 8)]
    + [f"TAU-U-REL-{k}" for k in range(1, 9)]
    + ["BFR-SQUARE", "SA-ESSENTIAL", "FFR-WFFR"]
)
PRODUCT_IDS = [
    "PROD-ASSOC", "PROD-ONE-NONUNIT", "PROD-ATOMS", "PROD-LIFT", "PROD-UATOMIC",
    "PROD-DF", "PROD-BFR", "PROD-HFR", "PROD-UFR",
]


@contextmanager
def within(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, limit {seconds}s"


def _json(argv, capsys):
    code = cli.main(argv + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)["result"]


def test_criterion_1_z20_refinement(capsys):
    with within(1):
        code, zero = _json(["ufactorize", "--ring", "Z20", "--tau", "full", "--elem", "0"], capsys)
        assert code == 0 and [10, 10] in zero["essential_multisets"]
        code, ten = _json(["ufactorize", "--ring", "Z20", "--tau", "full", "--elem", "10"], capsys)
        assert code == 0 and [2, 5] in ten["essential_multisets"]
        R = make_ring("Z20")
        T = make_tau(R, "full")
        _, check = apply_u_refinement(
            R, T, UFactorization(1, (), (10, 10)), 10, UFactorization(1, (), (2, 5))
        )
        assert not check.ok
        assert check.reason == "essential divisor 5 is inessential"


def test_criterion_2_z6_pump():
    with within(1):
        R = make_ring("Z6")
        T = make_tau(R, "full")
        cert = unboundedness_certificate(R, T, 3)
        assert cert is not None and cert.cycle == (3,) and R.mul(3, 3) == 3
        assert not check_chain_props(R, T, "BFR").holds
        v = check_chain_props(R, T, "U-BFR")
        assert v.holds and v.details["bound"] == 2


def test_criterion_3_z6z8_two_rearrangements():
    with within(1):
        R = make_ring("Z6xZ8")
        T = make_tau(R, "prod(full,full)")
        first = UFactorization((1, 1), ((3, 1),), ((3, 3), (1, 4)))
        second = UFactorization((1, 1), ((3, 3),), ((3, 1), (1, 4)))
        assert check_u_factorization(R, T, (3, 4), first)
        assert check_u_factorization(R, T, (3, 4), second)
        assert not first.same_split(second)


def test_criterion_4_irreducible_one_essential():
    with within(30):
        for rs, ts in CORPUS:
            R = make_ring(rs)
            T = make_tau(R, ts)
            rep = verify(R, T, "IRR-ONE-ESS")
            assert rep.status != FAIL, (rs, ts, rep.counterexample)
            for a in (R.val(i) for i in R.nonunit_idx):
                irr = irreducibility(R, T, a).irreducible
                keys = enumerate_tau_u_factorizations(R, T, a).keys
                assert irr == all(len(k) == 1 for k in keys), (rs, ts, a)


def test_criterion_5_hierarchy_and_presimplifiable():
    with within(30):
        for rs, ts in CORPUS:
            R = make_ring(rs)
            T = make_tau(R, ts)
            for tid in ("HIER-IRR", "PRES-CHAIN"):
                rep = verify(R, T, tid)
                assert rep.status != FAIL, (rs, ts, tid, rep.counterexample)
            if ts == "full":
                p = check_presimplifiable_variants(R, T)
                assert p.presimplifiable.holds == p.tau_u_presimplifiable.holds == p.tau_presimplifiable.holds


def test_criterion_6_implication_suite():
    with within(300):
        rep = run_corpus(DEFAULT_CORPUS, ids=IMPLICATION_IDS)
    assert rep.uncovered == []
    failures = [(r.theorem_id, r.ring, r.relation, r.counterexample) for r in rep.failures]
    assert failures == [], f"{len(failures)} FAIL reports: " + "; ".join(
        f"{t} on {r} | {s}" for t, r, s, _ in failures
    )


def test_criterion_7_product_suite():
    with within(300):
        rep = run_corpus([("Z6xZ8", "prod(full,full)"), ("Z4xZ9", "prod(full,full)")], ids=PRODUCT_IDS)
    assert rep.counts[FAIL] == 0, [(r.theorem_id, r.ring, r.counterexample) for r in rep.failures]
    assert rep.uncovered == []


def _cap_snapshot(R, T, cap):
    flags = {a: rep.flags for a, rep in classify_all(R, T, cap=cap).items()}
    enum = {}
    for a in (R.val(i) for i in R.nonunit_idx):
        plain = enumerate_tau_factorizations(R, T, a, cap=cap)
        short = {k for k in plain.keys if len(k) <= len(R) + 2}
        u = enumerate_tau_u_factorizations(R, T, a, cap=cap)
        enum[a] = (short, plain.unbounded_witness is not None, plain.max_length, u.keys)
    return flags, enum


def test_criterion_8_cap_stability():
    specs = ["Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2xZ2", "Z2xZ3", "Z2xZ4", "Z2xZ2xZ2"]
    with within(120):
        for spec in specs:
            R = make_ring(spec)
            assert len(R) <= 8
            relations = [make_tau(R, "full"), make_tau(R, "comaximal")]
            relations += [from_pairs(R, pair_sample(R, seed=s)) for s in (1, 2, 3)]
            for T in relations:
                lo = _cap_snapshot(R, T, len(R) + 2)
                hi = _cap_snapshot(R, T, len(R) + 4)
                assert lo == hi, (spec, T.name)


def test_criterion_9_very_strong_caveat():
    with within(1):
        R = make_ring("Z5xZ5")
        x = (0, 1)
        assert associated(R, x, x, ASSOC)
        assert associated(R, x, x, STRONG)
        assert not associated(R, x, x, VERY_STRONG)
        Z5 = make_ring("Z5")
        assert associated(Z5, 0, 0, VERY_STRONG) and associated(Z5, 1, 1, VERY_STRONG)


def test_criterion_10_open_question():
    with within(60):
        rep = search_open_question("Q-UATOMIC")
    assert [c["ring"] for c in rep.checked] == [f"Z{n}" for n in range(2, 31)]
    assert rep.separations == []
    assert all(c["status"] != SEPARATION for c in rep.checked)
    assert FINITE_IRREDUCIBLES_NOTE in rep.note

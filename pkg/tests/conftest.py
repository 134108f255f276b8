import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from tauu.relations import from_pairs, make_tau  # noqa: E402
from tauu.rings import make_ring  # noqa: E402

SMALL_MODULI = (2, 3, 4, 5, 6, 8, 9, 10, 12)
CORPUS_MODULI = (4, 6, 8, 12, 20)


def pair_sample(R, seed, density=0.5):
    """Deterministic random symmetric pair set over R^#."""
    rng = random.Random(seed)
    sharp = [R.val(i) for i in R.sharp_idx]
    pairs = []
    for i, a in enumerate(sharp):
        for b in sharp[i:]:
            if rng.random() < density:
                pairs.append((a, b))
    return pairs


def oracle_relation(B, kind, pairs=None):
    if kind == "pairs":
        return oracles.pair_relation(pairs)
    return getattr(oracles, kind)(B)


def both(n, kind="full", pairs=None):
    """The package ring/relation and the oracle ring/relation for Z/n."""
    R = make_ring(f"Z{n}")
    T = from_pairs(R, pairs) if kind == "pairs" else make_tau(R, kind)
    B = oracles.BRing((n,))
    return R, T, B, oracle_relation(B, kind, pairs)


@pytest.fixture(scope="session")
def z6():
    R = make_ring("Z6")
    return R, make_tau(R, "full")


@pytest.fixture(scope="session")
def z20():
    R = make_ring("Z20")
    return R, make_tau(R, "full")


@pytest.fixture(scope="session")
def z6z8():
    R = make_ring("Z6xZ8")
    return R, make_tau(R, "prod(full,full)")


# -- acceptance summary -------------------------------------------------------------

_CRITERIA = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    num = int(name.split("_")[2])
    _CRITERIA[num] = (name, report.outcome.upper(), report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        name, outcome, secs = _CRITERIA[num]
        verdict = "PASS" if outcome == "PASSED" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  {name} ({secs:.2f}s)")

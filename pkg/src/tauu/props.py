"""Ring-level factorization properties (plain and U-forms), each decided exactly
with a re-checkable witness on failure."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .classify import IRREDUCIBLE, grade, grade_mask
from .errors import InvalidSpec
from .factor import (
    Factorization,
    UFactorization,
    enumerate_tau_u_factorizations,
    factor_multisets,
    unboundedness_certificate,
    unit_for,
)
from .rings import ASSOC, VERY_STRONG, assoc_idx, bits, check_mode, class_reps, ring_flags
from .search import context

FINITE_NOTE = "holds trivially on finite rings"
CHAIN_SEARCH_LIMIT = 24

CHAIN_PROPS = ("ACCP", "U-ACCP", "BFR", "U-BFR", "FFR", "U-FFR")
COUNTING_PROPS = ("WFFR", "U-WFFR", "df", "U-df")
UNIQUENESS_PROPS = ("HFR", "U-HFR", "UFR", "U-UFR")


@dataclass
class PropertyVerdict:
    property: str
    params: dict
    holds: bool
    witness: dict | None = None
    note: str | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds

    def as_dict(self):
        out = {"property": self.property, "params": dict(self.params), "holds": self.holds}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        if self.details:
            out["details"] = self.details
        return out


def _nonunits(R):
    """Non-units with nonzero ones first, so witnesses avoid 0 when possible."""
    rest = [i for i in R.nonunit_idx if i != R.zero_i]
    return rest + [R.zero_i]


def _fact(R, a_idx, path):
    factors = tuple(R.val(i) for i in path)
    return Factorization(unit_for(R, factors, R.val(a_idx)), factors)


def _ufact(R, a_idx, E, A):
    ess = tuple(R.val(i) for i in E)
    iness = tuple(R.val(i) for i in A)
    return UFactorization(unit_for(R, iness + ess, R.val(a_idx)), iness, ess)


# -- atomicity ----------------------------------------------------------------------

def check_atomicity(R, T, alpha=IRREDUCIBLE, u_form=True):
    """tau-alpha (plain) or tau-U-alpha: every non-unit factors with tau-alpha (essential) divisors."""
    alpha = grade(alpha)
    ctx = context(R, T)
    mask = grade_mask(R, T, alpha)
    name = "U-atomic" if u_form else "atomic"
    params = {"alpha": alpha}
    wit = {}
    for a in _nonunits(R):
        if u_form:
            found = ctx.u_factorizations(a, allowed=mask)
            ok = bool(found)
            if ok:
                E, A = min(found, key=lambda ea: (len(ea[0]), ea[0]))
                wit[R.format(R.val(a))] = _ufact(R, a, E, A)
        else:
            p = ctx.find_factorization(a, allowed=mask)
            ok = p is not None
            if ok:
                wit[R.format(R.val(a))] = _fact(R, a, p)
        if not ok:
            note = None
            if not R.sharp_idx:
                note = (
                    "R# is empty, so 0 has no factorization at all; reported as a failure "
                    "(the vacuous reading would make this hold)"
                )
            return PropertyVerdict(
                name, params, False,
                {"element": R.val(a), "reason": f"no tau-{alpha} {'U-' if u_form else ''}factorization"},
                note,
            )
    return PropertyVerdict(name, params, True, details={"factorizations": wit})


# -- chain / boundedness / finiteness -----------------------------------------------------

def _longest_chain(R, links):
    """Longest chain (a1) < (a2) < ... with a_{i+1} in links[a_i]; returns the element list."""
    memo = {}

    def best(a):
        if a in memo:
            return memo[a]
        out = [a]
        for d in bits(links[a]):
            m, n = R.ideal_mask[a], R.ideal_mask[d]
            if m != n and (m & n) == m:
                cand = [a] + best(d)
                if len(cand) > len(out):
                    out = cand
        memo[a] = out
        return out

    chains = [best(a) for a in R.nonunit_idx]
    return max(chains, key=len, default=[])


def _essential_links(R, ctx):
    links = {}
    for a in R.nonunit_idx:
        m = 0
        for E, _ in ctx.u_factorizations(a):
            for b in E:
                m |= 1 << b
        links[a] = m
    return links


def u_bfr_bound(R, T):
    """Largest essential part over all tau-U-factorizations of all non-units, with its witness."""
    ctx = context(R, T)
    best, where = 0, None
    for a in R.nonunit_idx:
        for E, A in ctx.u_factorizations(a):
            if len(E) > best:
                best, where = len(E), (a, E, A)
    return best, where


def check_chain_props(R, T, which, beta=ASSOC):
    if which not in CHAIN_PROPS:
        raise InvalidSpec(f"unknown chain property {which!r}; choose from {', '.join(CHAIN_PROPS)}")
    check_mode(beta)
    ctx = context(R, T)
    params = {"beta": beta} if which.endswith("FFR") else {}

    if which in ("ACCP", "U-ACCP"):
        details = {}
        if len(R) <= CHAIN_SEARCH_LIMIT:
            if which == "ACCP":
                links = {a: ctx.divisors(a) for a in R.nonunit_idx}
            else:
                links = _essential_links(R, ctx)
            chain = _longest_chain(R, links)
            details = {"longest_chain": [R.val(i) for i in chain], "length": len(chain)}
        return PropertyVerdict(which, params, True, note="finite ring: chains terminate", details=details)

    if which == "U-FFR":
        counts = {
            R.format(R.val(a)): len(enumerate_tau_u_factorizations(R, T, R.val(a), beta))
            for a in R.nonunit_idx
        }
        note = FINITE_NOTE + " (essential parts only)"
        return PropertyVerdict(which, params, True, note=note, details={"classes_per_element": counts})

    if which == "U-BFR":
        bound, where = u_bfr_bound(R, T)
        details = {"bound": bound, "ideal_chain_height": ctx.height}
        if where is not None:
            details["realized_by"] = {
                "element": R.val(where[0]),
                "factorization": _ufact(R, *where),
            }
        return PropertyVerdict(which, params, True, note=FINITE_NOTE, details=details)

    # BFR and FFR: on a finite ring both fail exactly when some length is unbounded
    unbounded = []
    for a in _nonunits(R):
        cert = unboundedness_certificate(R, T, R.val(a))
        if cert is not None:
            unbounded.append((a, cert))
    if unbounded:
        a, cert = unbounded[0]
        wit = {
            "element": R.val(a),
            "pump": cert,
            "unbounded_elements": [R.val(x) for x, _ in unbounded],
        }
        note = "infinitely many lengths give infinitely many classes" if which == "FFR" else None
        return PropertyVerdict(which, params, False, wit, note)
    lengths = {R.format(R.val(a)): ctx.max_length(a) for a in R.nonunit_idx}
    return PropertyVerdict(which, params, True, details={"max_length": lengths})


# -- counting ---------------------------------------------------------------------

def check_counting_props(R, T, which, alpha=IRREDUCIBLE, beta=ASSOC):
    if which not in COUNTING_PROPS:
        raise InvalidSpec(f"unknown counting property {which!r}; choose from {', '.join(COUNTING_PROPS)}")
    check_mode(beta)
    ctx = context(R, T)
    rep = ctx.class_rep(beta)
    params = {"beta": beta}
    keep = R.sharp_mask
    if which.endswith("df"):
        alpha = grade(alpha)
        params["alpha"] = alpha
        keep = grade_mask(R, T, alpha)
    sizes = {}
    for a in R.nonunit_idx:
        if which.startswith("U-"):
            found = set()
            for E, _ in ctx.u_factorizations(a):
                found.update(rep[b] for b in E if (keep >> b) & 1)
        else:
            found = {rep[b] for b in bits(ctx.divisors(a) & keep)}
        sizes[R.format(R.val(a))] = len(found)
    details = {"inventory_sizes": sizes, "max_inventory": max(sizes.values(), default=0)}
    return PropertyVerdict(which, params, True, note=FINITE_NOTE, details=details)


# -- uniqueness -------------------------------------------------------------------

def _matchable(R, E, F, beta):
    """Can the multisets E and F be paired off so that paired elements are beta-related?"""
    if len(E) != len(F):
        return False
    if beta != VERY_STRONG:
        rep = class_reps(R, beta)
        return sorted(rep[i] for i in E) == sorted(rep[j] for j in F)
    # Kuhn's augmenting paths on the direct relation
    match = [None] * len(F)

    def augment(i, seen):
        for j in range(len(F)):
            if j in seen or not assoc_idx(R, E[i], F[j], VERY_STRONG):
                continue
            seen.add(j)
            if match[j] is None or augment(match[j], seen):
                match[j] = i
                return True
        return False

    return all(augment(i, set()) for i in range(len(E)))


def check_uniqueness_props(R, T, which, alpha=IRREDUCIBLE, beta=ASSOC):
    """HFR / UFR and their U-forms.

    U-forms compare essential parts of tau-U-alpha-factorizations; plain forms
    compare full factor lists of tau-alpha-factorizations.  For UFR, "any two"
    ranges over pairs of distinct factor multisets.
    """
    if which not in UNIQUENESS_PROPS:
        raise InvalidSpec(f"unknown uniqueness property {which!r}; choose from {', '.join(UNIQUENESS_PROPS)}")
    alpha = grade(alpha)
    check_mode(beta)
    u_form = which.startswith("U-")
    want_ufr = which.endswith("UFR")
    params = {"alpha": alpha}
    if want_ufr:
        params["beta"] = beta
    atom = check_atomicity(R, T, alpha, u_form=u_form)
    if not atom.holds:
        return PropertyVerdict(which, params, False, atom.witness, "fails through the atomicity conjunct")
    ctx = context(R, T)
    mask = grade_mask(R, T, alpha)
    for a in _nonunits(R):
        if u_form:
            found = ctx.u_factorizations(a, allowed=mask)
            lens = sorted({len(E) for E, _ in found})
            if len(lens) > 1:
                (E1, A1) = next(ea for ea in found if len(ea[0]) == lens[0])
                (E2, A2) = next(ea for ea in found if len(ea[0]) == lens[-1])
                return PropertyVerdict(which, params, False, {
                    "element": R.val(a),
                    "factorizations": [_ufact(R, a, E1, A1), _ufact(R, a, E2, A2)],
                    "reason": "different numbers of essential divisors",
                })
            if want_ufr:
                for (E1, A1), (E2, A2) in itertools.permutations(found, 2):
                    if not _matchable(R, E1, E2, beta):
                        return PropertyVerdict(which, params, False, {
                            "element": R.val(a),
                            "factorizations": [_ufact(R, a, E1, A1), _ufact(R, a, E2, A2)],
                            "reason": f"essential divisors cannot be matched up to {beta}",
                        })
            continue
        shortest = ctx.find_factorization(a, allowed=mask)
        L = len(shortest)
        longer = ctx.find_factorization(a, allowed=mask, min_len=L + 1)
        if longer is not None:
            return PropertyVerdict(which, params, False, {
                "element": R.val(a),
                "factorizations": [_fact(R, a, shortest), _fact(R, a, longer)],
                "reason": "different lengths",
            })
        if want_ufr:
            keys = factor_multisets(R, T, R.val(a), allowed=mask, exact_len=L)
            for F1, F2 in itertools.permutations(keys, 2):
                if not _matchable(R, F1, F2, beta):
                    return PropertyVerdict(which, params, False, {
                        "element": R.val(a),
                        "factorizations": [_fact(R, a, F1), _fact(R, a, F2)],
                        "reason": f"factors cannot be matched up to {beta}",
                    })
    return PropertyVerdict(which, params, True)


# -- presimplifiable variants ---------------------------------------------------------

@dataclass
class PresimplifiableReport:
    presimplifiable: PropertyVerdict
    tau_u_presimplifiable: PropertyVerdict
    tau_presimplifiable: PropertyVerdict

    def as_dict(self):
        return {
            "presimplifiable": self.presimplifiable.as_dict(),
            "tau_u_presimplifiable": self.tau_u_presimplifiable.as_dict(),
            "tau_presimplifiable": self.tau_presimplifiable.as_dict(),
        }


def tau_presimplifiable_witness(R, T):
    """A tau-factorization of some x containing x as a factor plus at least one more factor."""
    ctx = context(R, T)
    for x in R.sharp_idx:
        p = ctx.find_factorization(x, prefix=(x,), min_len=2)
        if p is not None:
            return x, p
    return None


def tau_u_presimplifiable_witness(R, T):
    """A tau-U-factorization of a nonzero non-unit with a non-empty inessential part."""
    ctx = context(R, T)
    for x in R.sharp_idx:
        for E in ctx.essentials_by_ideal.get(R.ideal_mask[x], ()):
            g = ctx.completion_graph(E)
            acc = g.accepting(x, min_depth=1)
            if acc:
                v = min(acc, key=lambda w: (g.dist[w], w))
                return x, E, g.path(v)
    return None


def check_presimplifiable_variants(R, T):
    flags = ring_flags(R)
    pre = PropertyVerdict("presimplifiable", {}, flags.presimplifiable)
    if not flags.presimplifiable:
        x, y = flags.presimplifiable_witness
        pre.witness = {"x": x, "y": y, "reason": f"{R.format(x)} = {R.format(x)} * {R.format(y)} with {R.format(y)} not a unit"}

    w = tau_u_presimplifiable_witness(R, T)
    upre = PropertyVerdict("tau-U-presimplifiable", {}, w is None)
    if w is not None:
        x, E, A = w
        upre.witness = {"element": R.val(x), "factorization": _ufact(R, x, E, A)}

    w = tau_presimplifiable_witness(R, T)
    tpre = PropertyVerdict("tau-presimplifiable", {}, w is None)
    if w is not None:
        x, p = w
        tpre.witness = {"element": R.val(x), "factorization": _fact(R, x, p)}
    if not any(T.nbr[i] for i in R.sharp_idx):
        tpre.note = "only trivial tau-factorizations exist"
    return PresimplifiableReport(pre, upre, tpre)

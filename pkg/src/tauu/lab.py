"""Catalog of theorem checks run over (ring, relation) corpora, and the search
harness for the two open questions.

Each checker returns a list of :class:`Instance` records, one per
(hypotheses, antecedent, conclusion) triple it evaluated.  Conditional
statements are material implications: an instance whose hypotheses fail is
skipped, one whose antecedent fails passes vacuously.
"""

from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass, field
from pathlib import Path

from . import classify as cl
from .errors import InvalidInput, InvalidSpec, NotProjectable, UnknownTheorem
from .factor import (
    Factorization,
    UFactorization,
    check_tau_factorization,
    check_u_factorization,
    factor_multisets,
    to_u_factorization,
    u_split,
    unit_for,
)
from .products import CoordinateFactorization, lift_u_factorization, project_u_factorization
from .props import (
    check_atomicity,
    check_chain_props,
    check_counting_props,
    check_presimplifiable_variants,
    check_uniqueness_props,
)
from .relations import make_tau, relation_report
from .rings import ASSOC, MODES, STRONG, VERY_STRONG, assoc_idx, bits, make_ring, ring_flags
from .search import context

log = logging.getLogger(__name__)

PASS = "PASS"
VACUOUS = "PASS-vacuous"
SKIP = "SKIP"
FAIL = "FAIL"
SEPARATION = "SEPARATION"
STATUSES = (PASS, VACUOUS, SKIP, FAIL, SEPARATION)

SAMPLE_LIMIT = 300


@dataclass
class Instance:
    label: str
    hypotheses: dict
    antecedent: bool
    conclusion: bool | None
    witness: object = None

    @property
    def status(self):
        if not all(self.hypotheses.values()):
            return SKIP
        if not self.antecedent:
            return VACUOUS
        return PASS if self.conclusion else FAIL


@dataclass
class VerificationReport:
    theorem_id: str
    ring: str
    relation: str
    hypotheses_satisfied: bool
    conclusion_holds: bool
    status: str
    counterexample: object = None
    instances: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def non_vacuous(self):
        return sum(1 for i in self.instances if i.status in (PASS, FAIL))

    def as_dict(self):
        counts = {}
        for inst in self.instances:
            counts[inst.status] = counts.get(inst.status, 0) + 1
        out = {
            "theorem": self.theorem_id,
            "ring": self.ring,
            "relation": self.relation,
            "status": self.status,
            "hypotheses_satisfied": self.hypotheses_satisfied,
            "conclusion_holds": self.conclusion_holds,
            "instances": counts,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.notes:
            out["notes"] = list(self.notes)
        return out


# -- cached facts per (ring, relation) -----------------------------------------------

class Facts:
    """Memoized property verdicts for one (ring, relation) pair."""

    def __init__(self, R, T):
        self.R, self.T = R, T

    @functools.cached_property
    def flags(self):
        return ring_flags(self.R)

    @functools.cached_property
    def rel(self):
        return relation_report(self.R, self.T)

    @functools.cached_property
    def presimp(self):
        return check_presimplifiable_variants(self.R, self.T)

    @functools.cached_property
    def grades(self):
        return cl.classify_all(self.R, self.T)

    @functools.cached_property
    def is_full(self):
        R, T = self.R, self.T
        return all(T.nbr[i] == R.sharp_mask for i in R.sharp_idx)

    @functools.lru_cache(maxsize=None)
    def atomic(self, alpha, u_form):
        return check_atomicity(self.R, self.T, alpha, u_form).holds

    @functools.lru_cache(maxsize=None)
    def chain(self, which, beta=ASSOC):
        return check_chain_props(self.R, self.T, which, beta).holds

    @functools.lru_cache(maxsize=None)
    def counting(self, which, alpha=cl.IRREDUCIBLE, beta=ASSOC):
        return check_counting_props(self.R, self.T, which, alpha, beta)

    @functools.lru_cache(maxsize=None)
    def unique(self, which, alpha, beta=ASSOC):
        return check_uniqueness_props(self.R, self.T, which, alpha, beta).holds

    @functools.lru_cache(maxsize=None)
    def essential_max(self, a):
        """Most essential divisors in any tau-U-factorization of the element index ``a``."""
        return max((len(E) for E, _ in context(self.R, self.T).u_factorizations(a)), default=0)


@functools.lru_cache(maxsize=64)
def facts(R, T):
    return Facts(R, T)


def _fmt(R, idxs):
    return [R.val(i) for i in idxs]


def _sample_len(R):
    return 5 if len(R) <= 20 else 3


# -- grades, rearrangement, presimplifiable ----------------------------------------------

def _hier_irr(R, T, F):
    sa = F.flags.strongly_associate
    out = []
    for a, rep in F.grades.items():
        f = rep.flags
        out += [
            Instance(f"very_strong=>strong@{a}", {}, f[cl.VERY_STRONGLY], f[cl.STRONGLY], a),
            Instance(f"strong=>irreducible@{a}", {}, f[cl.STRONGLY], f[cl.IRREDUCIBLE], a),
            Instance(f"m=>irreducible@{a}", {}, f[cl.M_IRREDUCIBLE], f[cl.IRREDUCIBLE], a),
            Instance(f"m=>strong@{a}", {"strongly_associate": sa}, f[cl.M_IRREDUCIBLE], f[cl.STRONGLY], a),
        ]
    return out


def _rearrange(R, T, F, alpha=None):
    out = []
    mask = None if alpha is None else cl.grade_mask(R, T, alpha)
    for a in R.nonunit_idx:
        keys = factor_multisets(R, T, R.val(a), allowed=mask, max_len=_sample_len(R), limit=SAMPLE_LIMIT)
        for key in keys:
            factors = tuple(R.val(i) for i in key)
            fac = Factorization(unit_for(R, factors, R.val(a)), factors)
            uf = to_u_factorization(R, fac)
            ok = (
                bool(check_u_factorization(R, T, R.val(a), uf))
                and sorted(uf.flat().factors, key=R.idx) == list(factors)
                and any(uf.same_split(s) for s in u_split(R, fac))
            )
            if alpha is not None:
                ok = ok and all(cl.is_tau_alpha(R, T, b, alpha) for b in uf.essential)
            label = f"{alpha or 'any'}@{R.format(R.val(a))}"
            out.append(Instance(label, {}, True, ok, {"factorization": fac, "rearranged": uf}))
    return out


def _rearrange_alpha(R, T, F):
    out = []
    for alpha in cl.GRADES:
        out += _rearrange(R, T, F, alpha)
    return out


def _irr_one_ess(R, T, F):
    ctx = context(R, T)
    out = []
    for a, rep in F.grades.items():
        ai = R.idx(a)
        found = ctx.u_factorizations(ai)
        multi = [E for E, _ in found if len(E) > 1]
        one_ess = not multi
        wit = {"element": a, "irreducible": rep.irreducible}
        if multi:
            wit["essential"] = _fmt(R, multi[0])
        elif not rep.irreducible:
            wit["factorization"] = rep.witnesses.get(cl.IRREDUCIBLE)
        out.append(Instance(f"@{R.format(a)}", {}, True, rep.irreducible == one_ess, wit))
    return out


def _pres_chain(R, T, F):
    p = F.presimp
    pre, upre, tpre = p.presimplifiable.holds, p.tau_u_presimplifiable.holds, p.tau_presimplifiable.holds
    wit = p.as_dict()
    return [
        Instance("presimplifiable=>tau-U", {}, pre, upre, wit),
        Instance("tau-U=>tau", {}, upre, tpre, wit),
        Instance("full=>all-equal", {"tau_full": F.is_full}, True, pre == upre == tpre, wit),
    ]


# -- chains, bounds and property implications ------------------------------------------

def inessential_unbounded_witness(R, T):
    """An element and essential part admitting arbitrarily many inessential divisors, or None."""
    ctx = context(R, T)
    for a in R.nonunit_idx:
        for E, _ in ctx.u_factorizations(a):
            g = ctx.completion_graph(E)
            acc = g.accepting(a, min_depth=0)
            co = g.coreach(acc)
            cyc = g.cyclic_nodes() & co
            if cyc:
                v = min(cyc)
                return {
                    "element": R.val(a),
                    "essential": _fmt(R, E),
                    "prefix": _fmt(R, g.path(v)),
                    "cycle": _fmt(R, g.shortest_cycle(v)),
                }
    return None


def _bfr_square(R, T, F):
    tpre = F.presimp.tau_presimplifiable.holds
    upre = F.presimp.tau_u_presimplifiable.holds
    s1 = F.chain("BFR")
    s2 = tpre and F.chain("ACCP")  # chain lengths are bounded on a finite ring
    s3 = tpre and F.chain("U-BFR")
    w4 = inessential_unbounded_witness(R, T)
    s4 = w4 is None
    wit = {"statements": {"1": s1, "2": s2, "3": s3, "4": s4}}
    if w4 is not None:
        wit["unbounded_inessential"] = w4
    refinable = F.rel.refinable
    return [
        Instance("(4)=>(1)", {}, s4, s1, wit),
        Instance("(2)=>(3)", {}, s2, s3, wit),
        Instance("(1)=>(2)", {"refinable": refinable}, s1, s2, wit),
        Instance("(3)=>(4)", {"tau_u_presimplifiable": upre}, s3, s4, wit),
    ]


def _sa_essential(R, T, F):
    ctx = context(R, T)
    hyp = {"strongly_associate": F.flags.strongly_associate}
    out = []
    for alpha in cl.GRADES:
        mask = cl.grade_mask(R, T, alpha)
        seen, bad = 0, None
        for a in R.nonunit_idx:
            for E, A in ctx.u_factorizations(a, allowed=mask):
                seen += 1
                ess = tuple(R.val(i) for i in E)
                mu = unit_for(R, ess, R.val(a))
                ok = mu is not None and bool(check_tau_factorization(R, T, R.val(a), Factorization(mu, ess)))
                ok = ok and all(cl.is_tau_alpha(R, T, b, alpha) for b in ess)
                if not ok and bad is None:
                    bad = {"element": R.val(a), "essential": list(ess), "inessential": _fmt(R, A)}
        out.append(Instance(alpha, hyp, seen > 0, bad is None, bad))
    return out


def _imp(label, hyp, ante, concl, wit=None):
    return Instance(label, hyp, ante, concl, wit)


def _gen_rel(k):
    def check(R, T, F):
        out = []
        sa = {"strongly_associate": F.flags.strongly_associate}
        if k == 1:
            for al in cl.GRADES:
                out.append(_imp(al, {}, F.atomic(al, False), F.atomic(al, True)))
        elif k == 2:
            out.append(_imp("", {}, F.chain("ACCP"), F.chain("U-ACCP")))
        elif k == 3:
            out.append(_imp("", {}, F.chain("BFR"), F.chain("U-BFR")))
        elif k == 4:
            for b in MODES:
                out.append(_imp(b, {}, F.chain("FFR", b), F.chain("U-FFR", b)))
        elif k == 5:
            for b in MODES:
                out.append(_imp(b, {}, F.counting("WFFR", beta=b).holds, F.counting("U-WFFR", beta=b).holds))
        elif k == 6:
            for al, b in itertools.product(cl.GRADES, MODES):
                out.append(_imp(f"{al}/{b}", {}, F.counting("df", al, b).holds, F.counting("U-df", al, b).holds))
        elif k == 7:
            for al in cl.GRADES:
                out.append(_imp(f"HFR {al}", sa, F.unique("HFR", al), F.unique("U-HFR", al)))
                for b in MODES:
                    out.append(_imp(f"UFR {al}/{b}", sa, F.unique("UFR", al, b), F.unique("U-UFR", al, b)))
        return out

    return check


def _tau_u_rel(k):
    def check(R, T, F):
        out = []
        ur = {"tau_u_refinable": F.rel.tau_u_refinable}
        if k == 1:
            for al, b in itertools.product(cl.GRADES, MODES):
                out.append(_imp(f"{al}/{b}", {}, F.unique("U-UFR", al, b), F.unique("U-HFR", al)))
        elif k == 2:
            for al, b in itertools.product(cl.GRADES, MODES):
                out.append(_imp(f"{al}/{b}", ur, F.unique("U-UFR", al, b), F.chain("U-FFR", b)))
        elif k == 3:
            for al in cl.GRADES:
                out.append(_imp(al, ur, F.unique("U-HFR", al), F.chain("U-BFR")))
        elif k == 4:
            for b in MODES:
                out.append(_imp(b, {}, F.chain("U-FFR", b), F.chain("U-BFR")))
        elif k == 5:
            for b in MODES:
                out.append(_imp(b, {}, F.chain("U-FFR", b), F.counting("U-WFFR", beta=b).holds))
        elif k == 6:
            for al, b in itertools.product(cl.GRADES, MODES):
                out.append(_imp(f"{al}/{b}", {}, F.counting("U-WFFR", beta=b).holds, F.counting("U-df", al, b).holds))
        elif k == 7:
            out.append(_imp("", ur, F.chain("U-BFR"), F.chain("U-ACCP")))
        elif k == 8:
            for al in cl.GRADES:
                wit = None
                if not F.atomic(al, True):
                    wit = check_atomicity(R, T, al, True).witness
                out.append(_imp(al, ur, F.chain("U-ACCP"), F.atomic(al, True), wit))
        return out

    return check


def _ffr_wffr(R, T, F):
    hyp = {
        "combinable": F.rel.combinable,
        "associate_preserving": F.rel.associate_preserving[ASSOC],
    }
    return [
        Instance(b, hyp, True, F.chain("U-FFR", b) == F.counting("U-WFFR", beta=b).holds)
        for b in MODES
    ]


# -- direct products ----------------------------------------------------------------

def _components(R, T):
    if R.kind != "product" or len(T.components) != len(R.factors):
        return None
    return list(zip(R.factors, T.components))


def _product_hyp(R, T):
    return {"product_relation": _components(R, T) is not None}


def _unit_elsewhere(R, a):
    """Index of the only non-unit coordinate of ``a`` (0-based), or None."""
    nonunits = [k for k, (F, x) in enumerate(zip(R.factors, a)) if not F.is_unit(x)]
    return nonunits[0] if len(nonunits) == 1 else None


def _prod_assoc(R, T, F):
    comps = _components(R, T)
    hyp = _product_hyp(R, T)
    if comps is None:
        return [Instance("", hyp, False, None)]
    bad = {}
    n = len(R)
    for i, j in itertools.product(range(n), repeat=2):
        x, y = R.val(i), R.val(j)
        cw = {
            m: all(assoc_idx(Fk, Fk.idx(u), Fk.idx(v), m) for Fk, u, v in zip(R.factors, x, y))
            for m in MODES
        }
        whole = {m: assoc_idx(R, i, j, m) for m in MODES}
        nonzero = all(u != Fk.zero and v != Fk.zero for Fk, u, v in zip(R.factors, x, y))
        checks = {
            "assoc iff": whole[ASSOC] == cw[ASSOC],
            "strong iff": whole[STRONG] == cw[STRONG],
            "very strong implies coordinatewise": (not whole[VERY_STRONG]) or cw[VERY_STRONG],
            "coordinatewise very strong and nonzero implies": (not (cw[VERY_STRONG] and nonzero)) or whole[VERY_STRONG],
        }
        for name, ok in checks.items():
            if not ok and name not in bad:
                bad[name] = {"x": x, "y": y}
    names = ["assoc iff", "strong iff", "very strong implies coordinatewise",
             "coordinatewise very strong and nonzero implies"]
    return [Instance(nm, hyp, True, nm not in bad, bad.get(nm)) for nm in names]


def _prod_one_nonunit(R, T, F):
    hyp = _product_hyp(R, T)
    if _components(R, T) is None:
        return [Instance("", hyp, False, None)]
    out = []
    for alpha in cl.GRADES:
        atoms = [a for a, rep in F.grades.items() if rep.flags[alpha]]
        bad = next((a for a in atoms if _unit_elsewhere(R, a) is None), None)
        out.append(Instance(alpha, hyp, bool(atoms), bad is None, None if bad is None else {"element": bad}))
    return out


def _component_alpha(Rk, Tk, x, alpha):
    if Rk.is_unit(x):
        return False
    return facts(Rk, Tk).grades[x].flags[alpha]


def _prod_atoms(R, T, F):
    comps = _components(R, T)
    hyp = _product_hyp(R, T)
    if comps is None:
        return [Instance("", hyp, False, None)]
    out = []
    for alpha in cl.GRADES:
        bad = None
        for a, rep in F.grades.items():
            lhs = rep.flags[alpha]
            k = _unit_elsewhere(R, a)
            rhs = False
            if k is not None:
                Rk, Tk = comps[k]
                rhs = _component_alpha(Rk, Tk, a[k], alpha)
                if alpha == cl.VERY_STRONGLY:
                    rhs = rhs and a[k] != Rk.zero
            if lhs != rhs and bad is None:
                bad = {"element": a, "product_side": lhs, "coordinate_side": rhs}
        out.append(Instance(alpha, hyp, True, bad is None, bad))
    return out


def _prod_lift(R, T, F):
    comps = _components(R, T)
    hyp = _product_hyp(R, T)
    if comps is None:
        return [Instance("", hyp, False, None)]
    ctx = context(R, T)
    out = []
    for alpha in cl.GRADES:
        # (1) lifting coordinate factorizations
        seen, bad = 0, None
        for k, (Rk, Tk) in enumerate(comps, 1):
            cctx = context(Rk, Tk)
            mask = cl.grade_mask(Rk, Tk, alpha)
            for x in Rk.nonunit_idx:
                for E, A in cctx.u_factorizations(x, allowed=mask):
                    seen += 1
                    ess = tuple(Rk.val(i) for i in E)
                    iness = tuple(Rk.val(i) for i in A)
                    inner = UFactorization(unit_for(Rk, iness + ess, Rk.val(x)), iness, ess)
                    lifted = lift_u_factorization(R, T, CoordinateFactorization(k, inner))
                    ok = bool(check_u_factorization(R, T, lifted.value(R), lifted))
                    ok = ok and all(cl.is_tau_alpha(R, T, b, alpha) for b in lifted.essential)
                    if not ok and bad is None:
                        bad = {"coordinate": k, "inner": inner, "lifted": lifted}
        out.append(Instance(f"lift {alpha}", hyp, seen > 0, bad is None, bad))

        # (2) projecting factorizations of elements with one non-unit coordinate
        seen, bad = 0, None
        mask = cl.grade_mask(R, T, alpha)
        for ai in R.nonunit_idx:
            a = R.val(ai)
            k = _unit_elsewhere(R, a)
            if k is None:
                continue
            Rk, Tk = comps[k]
            for E, A in ctx.u_factorizations(ai, allowed=mask):
                seen += 1
                ess = tuple(R.val(i) for i in E)
                iness = tuple(R.val(i) for i in A)
                uf = UFactorization(unit_for(R, iness + ess, a), iness, ess)
                try:
                    proj = project_u_factorization(R, T, uf, k + 1).inner
                    ok = bool(check_u_factorization(Rk, Tk, a[k], proj))
                    ok = ok and all(cl.is_tau_alpha(Rk, Tk, b, alpha) for b in proj.essential)
                except NotProjectable as exc:
                    ok, proj = False, str(exc)
                if not ok and bad is None:
                    bad = {"element": a, "factorization": uf, "projection": proj}
        out.append(Instance(f"project {alpha}", hyp, seen > 0, bad is None, bad))
    return out


def _prod_iff(prop):
    """Product verdict against the conjunction of coordinate verdicts."""

    def check(R, T, F):
        comps = _components(R, T)
        hyp = _product_hyp(R, T)
        if comps is None:
            return [Instance("", hyp, False, None)]
        out = []
        for label, get in prop(R, T):
            lhs = get(F)
            rhs = [get(facts(Rk, Tk)) for Rk, Tk in comps]
            wit = {"product": lhs, "coordinates": rhs}
            out.append(Instance(label, hyp, True, lhs == all(rhs), wit))
        return out

    return check


def _uatomic_props(R, T):
    return [(al, lambda F, al=al: F.atomic(al, True)) for al in cl.GRADES]


def _df_props(R, T):
    return [
        (f"{al}/{b}", lambda F, al=al, b=b: F.counting("U-df", al, b).holds)
        for al, b in itertools.product(cl.GRADES, MODES)
    ]


def _hfr_props(R, T):
    return [(al, lambda F, al=al: F.unique("U-HFR", al)) for al in cl.GRADES]


def _ufr_props(R, T):
    # the product theorem is stated for associate and strong associate only
    return [
        (f"{al}/{b}", lambda F, al=al, b=b: F.unique("U-UFR", al, b))
        for al, b in itertools.product(cl.GRADES, (ASSOC, STRONG))
    ]


def _prod_df(R, T, F):
    out = _prod_iff(_df_props)(R, T, F)
    comps = _components(R, T)
    if comps is None:
        return out
    hyp = _product_hyp(R, T)
    # counting bound from the proof: product inventory <= sum of coordinate inventories.
    # Under very strong association the unit coordinates also separate classes
    # (an element not very strongly associate to itself is alone in its class),
    # so there each coordinate term is scaled by the unit counts of the others.
    units = [len(Rk.unit_idx) for Rk, _ in comps]
    for al, b in itertools.product(cl.GRADES, MODES):
        whole = F.counting("U-df", al, b).details["inventory_sizes"]
        parts = [facts(Rk, Tk).counting("U-df", al, b).details["inventory_sizes"] for Rk, Tk in comps]
        bad = None
        for ai in R.nonunit_idx:
            a = R.val(ai)
            bound = 0
            for k, ((Rk, _), sizes, x) in enumerate(zip(comps, parts, a)):
                if Rk.is_unit(x):
                    continue
                scale = 1
                if b == VERY_STRONG:
                    for j, u in enumerate(units):
                        scale *= u if j != k else 1
                bound += scale * sizes[Rk.format(x)]
            if whole[R.format(a)] > bound and bad is None:
                bad = {"element": a, "inventory": whole[R.format(a)], "bound": bound}
        out.append(Instance(f"bound {al}/{b}", hyp, True, bad is None, bad))
    return out


def _prod_bfr(R, T, F):
    out = _prod_iff(lambda R, T: [("U-BFR", lambda F: F.chain("U-BFR"))])(R, T, F)
    comps = _components(R, T)
    if comps is None:
        return out
    hyp = _product_hyp(R, T)
    bad = None
    for ai in R.nonunit_idx:
        a = R.val(ai)
        per = [0 if Rk.is_unit(x) else facts(Rk, Tk).essential_max(Rk.idx(x)) for (Rk, Tk), x in zip(comps, a)]
        bound = len(comps) * max(per)
        got = F.essential_max(ai)
        if got > bound and bad is None:
            bad = {"element": a, "essential_max": got, "bound": bound}
    out.append(Instance("bound", hyp, True, bad is None, bad))
    return out


# -- open questions -------------------------------------------------------------------

FINITE_IRREDUCIBLES_NOTE = (
    "every ring searched is finite and so has finitely many non-associate irreducible "
    "elements; for such rings U-atomic and atomic are known to coincide "
    "(Anderson and Valdez-Leon), so a separation cannot appear here"
)
FINITE_ACCP_NOTE = (
    "every ring searched is finite and so has finitely many principal ideals; "
    "both chain conditions hold outright, so a separation cannot appear here"
)


def _q_uatomic(R, T, F):
    out = []
    for al in cl.GRADES:
        u, p = F.atomic(al, True), F.atomic(al, False)
        out.append(Instance(al, {}, u, p, {"u_atomic": u, "atomic": p}))
    return out


def _q_uaccp(R, T, F):
    u, p = F.chain("U-ACCP"), F.chain("ACCP")
    return [Instance("", {}, u, p, {"u_accp": u, "accp": p})]


# -- catalog ---------------------------------------------------------------------------

CATALOG = {
    "HIER-IRR": (_hier_irr, "irreducibility grades respect the implication diagram"),
    "REARRANGE": (_rearrange, "every factorization rearranges into a U-factorization"),
    "REARRANGE-ALPHA": (_rearrange_alpha, "every tau-alpha factorization rearranges into a tau-U-alpha one"),
    "IRR-ONE-ESS": (_irr_one_ess, "irreducible iff every tau-U-factorization has one essential divisor"),
    "PRES-CHAIN": (_pres_chain, "presimplifiable => tau-U-presimplifiable => tau-presimplifiable"),
    "BFR-SQUARE": (_bfr_square, "the four bounded-length statements and their arrows"),
    "SA-ESSENTIAL": (_sa_essential, "strongly associate: essential parts are tau-alpha factorizations"),
    **{f"GEN-REL-{k}": (_gen_rel(k), f"plain property => U-property, item {k}") for k in range(1, 8)},
    **{f"TAU-U-REL-{k}": (_tau_u_rel(k), f"relations among U-properties, item {k}") for k in range(1, 9)},
    "FFR-WFFR": (_ffr_wffr, "combinable and associate preserving: U-FFR iff U-WFFR"),
    "PROD-ASSOC": (_prod_assoc, "associate relations in a product, coordinatewise"),
    "PROD-ONE-NONUNIT": (_prod_one_nonunit, "tau-alpha elements of a product have one non-unit coordinate"),
    "PROD-ATOMS": (_prod_atoms, "tau-alpha elements of a product, characterized"),
    "PROD-LIFT": (_prod_lift, "lifting and projecting tau-U-alpha factorizations"),
    "PROD-UATOMIC": (_prod_iff(_uatomic_props), "product is tau-U-alpha iff every factor is"),
    "PROD-DF": (_prod_df, "product is U-df iff every factor is"),
    "PROD-BFR": (_prod_bfr, "product is U-BFR iff every factor is"),
    "PROD-HFR": (_prod_iff(_hfr_props), "product is U-HFR iff every factor is"),
    "PROD-UFR": (_prod_iff(_ufr_props), "product is U-UFR iff every factor is (assoc and strong)"),
    "Q-UATOMIC": (_q_uatomic, "open question: U-atomic without atomic"),
    "Q-UACCP": (_q_uaccp, "open question: U-ACCP without ACCP"),
}

THEOREM_IDS = tuple(k for k in CATALOG if not k.startswith("Q-"))
QUESTION_IDS = ("Q-UATOMIC", "Q-UACCP")


# Explanations attached to FAIL reports for statements whose published argument
# has a gap that finite rings expose.
KNOWN_GAPS = {
    "TAU-U-REL-8": (
        "the argument builds a chain of essential divisors that it claims ascends properly, "
        "but a factorization with a single essential divisor keeps the ideal fixed; for grades "
        "other than irreducible such elements need not be tau-alpha (for example no element of "
        "Z6 is very strongly irreducible under the full relation), and an element with no "
        "tau-factorization at all (0 in Z4 under comaximal) has no tau-U-factorization either"
    ),
    "BFR-SQUARE": (
        "tau-U-presimplifiable only constrains nonzero non-units, so 0 can keep arbitrarily many "
        "inessential divisors (in Z4, 0 = 2^k [2*2] for every k) while statement (3) holds"
    ),
}


def _aggregate(theorem_id, R, T, instances):
    statuses = [i.status for i in instances]
    if theorem_id.startswith("Q-"):
        sep = [i for i in instances if i.status == FAIL]
        status = SEPARATION if sep else (PASS if PASS in statuses else VACUOUS)
        counter = sep[0].witness if sep else None
    elif FAIL in statuses:
        status = FAIL
        first = next(i for i in instances if i.status == FAIL)
        counter = {"instance": first.label, "witness": first.witness}
    else:
        status = PASS if PASS in statuses else (VACUOUS if VACUOUS in statuses else SKIP)
        counter = None
    hyp_ok = any(all(i.hypotheses.values()) for i in instances)
    notes = []
    if status == SKIP:
        failed = sorted({k for i in instances for k, v in i.hypotheses.items() if not v})
        notes.append("hypotheses not satisfied: " + ", ".join(failed))
    elif status == VACUOUS:
        notes.append("antecedent false in every instance")
    if status == FAIL and theorem_id in KNOWN_GAPS:
        notes.append(KNOWN_GAPS[theorem_id])
    if theorem_id == "Q-UATOMIC":
        notes.append(FINITE_IRREDUCIBLES_NOTE)
    if theorem_id == "Q-UACCP":
        notes.append(FINITE_ACCP_NOTE)
    return VerificationReport(
        theorem_id, R.name, T.name, hyp_ok, status not in (FAIL, SEPARATION),
        status, counter, instances, notes,
    )


def verify(R, T, theorem_id):
    if theorem_id not in CATALOG:
        raise UnknownTheorem(theorem_id)
    check, _ = CATALOG[theorem_id]
    return _aggregate(theorem_id, R, T, check(R, T, facts(R, T)))


# -- corpora ---------------------------------------------------------------------------

DEFAULT_CORPUS = tuple(
    [(f"Z{n}", t) for n in (4, 6, 8, 12, 20) for t in ("full", "comaximal")]
    + [(r, t) for r in ("Z6xZ8", "Z4xZ9") for t in ("full", "comaximal", "prod(full,full)")]
)


def read_corpus_file(path):
    """Lines of ``ring-spec | relation-spec``; blank lines and ``#`` comments are ignored."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InvalidSpec(f"cannot read corpus file {path}: {exc}") from None
    out = []
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 2 or not all(parts):
            raise InvalidSpec(f"{path}:{lineno}: expected 'ring | relation', got {line!r}")
        out.append(tuple(parts))
    return out


@dataclass
class CorpusReport:
    reports: list
    counts: dict
    coverage: dict

    @property
    def failures(self):
        return [r for r in self.reports if r.status == FAIL]

    @property
    def uncovered(self):
        return sorted(k for k, v in self.coverage.items() if v == 0)

    def as_dict(self):
        return {
            "counts": dict(self.counts),
            "coverage": dict(self.coverage),
            "failures": [r.as_dict() for r in self.failures],
            "reports": [r.as_dict() for r in self.reports],
        }


def run_corpus(corpus, ids=None, progress=None):
    ids = list(THEOREM_IDS if ids is None else ids)
    for t in ids:
        if t not in CATALOG:
            raise UnknownTheorem(t)
    parsed = []
    for k, (rs, ts) in enumerate(corpus, 1):
        try:
            R = make_ring(rs)
            T = make_tau(R, ts)
        except InvalidSpec as exc:
            raise InvalidSpec(f"corpus entry {k} ({rs} | {ts}): {exc}") from None
        parsed.append((rs, ts, R, T))
    reports = []
    for rs, ts, R, T in sorted(parsed, key=lambda e: (e[0], e[1])):
        for t in sorted(ids):
            if progress:
                progress(rs, ts, t)
            rep = verify(R, T, t)
            rep.ring, rep.relation = rs, ts
            reports.append(rep)
    counts = {s: 0 for s in STATUSES}
    coverage = {t: 0 for t in ids}
    for r in reports:
        counts[r.status] += 1
        if r.non_vacuous:
            coverage[r.theorem_id] += 1
    return CorpusReport(reports, counts, coverage)


@dataclass
class OpenQuestionReport:
    question: str
    checked: list
    separations: list
    note: str

    def as_dict(self):
        return {
            "question": self.question,
            "checked": self.checked,
            "separations": self.separations,
            "note": self.note,
        }


def default_generator(max_n=30):
    for n in range(2, max_n + 1):
        yield (f"Z{n}", "full")


def search_open_question(which, generator=None, budget=None):
    """Look for rings satisfying the U-form of a property but not the plain form."""
    if which not in QUESTION_IDS:
        raise UnknownTheorem(which)
    if budget is not None and budget < 1:
        raise InvalidInput("budget must be at least 1")
    gen = default_generator() if generator is None else generator
    checked, separations = [], []
    for rs, ts in itertools.islice(gen, budget):
        R = make_ring(rs)
        T = make_tau(R, ts)
        rep = verify(R, T, which)
        entry = {"ring": rs, "relation": ts, "status": rep.status}
        for inst in rep.instances:
            entry.setdefault("results", {})[inst.label or which] = inst.witness
        checked.append(entry)
        if rep.status == SEPARATION:
            separations.append({"ring": rs, "relation": ts, "witness": rep.counterexample})
    note = FINITE_IRREDUCIBLES_NOTE if which == "Q-UATOMIC" else FINITE_ACCP_NOTE
    if separations:
        note = "separation candidates found; " + note
    return OpenQuestionReport(which, checked, separations, note)

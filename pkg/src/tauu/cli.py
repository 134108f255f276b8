"""Command-line entry point: ``tauu <verb> --ring ... --tau ... [options]``.

Exit status is 0 on success, 1 when a checked property fails or a theorem
check finds a counterexample, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter

from . import classify as cl
from . import lab, props, render
from .errors import TauError
from .factor import enumerate_tau_factorizations, enumerate_tau_u_factorizations
from .relations import make_tau, relation_report
from .rings import MODES, check_mode, ideal_chain_height, make_ring, ring_flags

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

PROPERTIES = (
    props.CHAIN_PROPS + props.COUNTING_PROPS + props.UNIQUENESS_PROPS
    + ("atomic", "U-atomic", "presimplifiable")
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _ring_tau(args):
    R = make_ring(args.ring)
    T = make_tau(R, args.tau)
    return R, T


def _elem(R, text):
    return R.parse_element(text)


def _beta(text):
    check_mode(text)
    return text


# -- verbs ---------------------------------------------------------------------------

def cmd_ring_info(args):
    R = make_ring(args.ring)
    flags = ring_flags(R)
    info = {
        "ring": R.name,
        "size": len(R),
        "units": [R.val(i) for i in R.unit_idx],
        "nonzero_nonunits": [R.val(i) for i in R.sharp_idx],
        "strongly_associate": flags.strongly_associate,
        "presimplifiable": flags.presimplifiable,
        "ideal_chain_height": ideal_chain_height(R),
    }
    if flags.strongly_associate_witness:
        info["strongly_associate_witness"] = flags.strongly_associate_witness
    if flags.presimplifiable_witness:
        info["presimplifiable_witness"] = flags.presimplifiable_witness
    lines = [f"{k}: {_txt(R, v)}" for k, v in info.items()]
    return info, lines, EXIT_OK, R


def cmd_factorize(args):
    R, T = _ring_tau(args)
    a = _elem(R, args.elem)
    res = enumerate_tau_factorizations(R, T, a, args.beta, cap=args.cap, limit=args.limit)
    payload = {
        "element": a,
        "beta": args.beta,
        "exact": res.exact,
        "cap": res.cap_used,
        "max_length": res.max_length,
        "factorizations": list(res.factorizations.values()),
        "notes": res.notes,
    }
    if res.unbounded_witness is not None:
        payload["pump"] = res.unbounded_witness
    lines = [render.format_factorization(R, f) for f in res.factorizations.values()]
    lines.append(f"# {len(res)} classes up to {args.beta}; exact={res.exact}")
    if res.unbounded_witness is not None:
        w = res.unbounded_witness
        lines.append(f"# unbounded: cycle {' * '.join(R.format(x) for x in w.cycle)} "
                     f"after prefix {' * '.join(R.format(x) for x in w.prefix) or '1'}")
    lines += [f"# {n}" for n in res.notes]
    return payload, lines, EXIT_OK, R


def cmd_ufactorize(args):
    R, T = _ring_tau(args)
    a = _elem(R, args.elem)
    res = enumerate_tau_u_factorizations(R, T, a, args.beta, cap=args.cap)
    payload = {
        "element": a,
        "beta": args.beta,
        "exact": res.exact,
        "essential_multisets": [list(k) for k in res.factorizations],
        "factorizations": list(res.factorizations.values()),
    }
    lines = [render.format_u_factorization(R, uf) for uf in res.factorizations.values()]
    lines.append(f"# {len(res)} essential multisets up to {args.beta}; exact={res.exact}")
    return payload, lines, EXIT_OK, R


def cmd_classify(args):
    R, T = _ring_tau(args)
    if args.elem is None:
        reports = cl.classify_all(R, T, cap=args.cap)
    else:
        a = _elem(R, args.elem)
        reports = {a: cl.irreducibility(R, T, a, cap=args.cap)}
    payload, lines = {}, []
    for a, rep in reports.items():
        payload[R.format(a)] = {"flags": rep.flags, "witnesses": rep.witnesses}
        marks = " ".join(f"{g}={'yes' if rep.flags[g] else 'no'}" for g in cl.GRADES)
        lines.append(f"{R.format(a)}: {marks}")
        for g, w in rep.witnesses.items():
            lines.append(f"    {g}: {render.format_any(R, w) if not isinstance(w, str) else w}")
    return payload, lines, EXIT_OK, R


def cmd_inventory(args):
    R, T = _ring_tau(args)
    a = _elem(R, args.elem)
    alpha = None if args.alpha is None else cl.grade(args.alpha)
    inv = cl.essential_divisor_inventory(R, T, a, args.beta, alpha)
    payload = {"element": a, "beta": args.beta, "alpha": alpha, "inventory": inv}
    lines = [" ".join(R.format(x) for x in inv) or "(none)"]
    return payload, lines, EXIT_OK, R


def cmd_check_relation(args):
    R, T = _ring_tau(args)
    rep = relation_report(R, T)
    d = rep.as_dict()
    lines = [f"relation {T.name} on {R.name}"]
    for k, v in d.items():
        if k != "witnesses":
            lines.append(f"  {k}: {_txt(R, v)}")
    for k, v in d["witnesses"].items():
        lines.append(f"  witness {k}: {_txt(R, v)}")
    return d, lines, EXIT_OK, R


def _check_prop(R, T, prop, alpha, beta):
    if prop in props.CHAIN_PROPS:
        return props.check_chain_props(R, T, prop, beta)
    if prop in props.COUNTING_PROPS:
        return props.check_counting_props(R, T, prop, alpha, beta)
    if prop in props.UNIQUENESS_PROPS:
        return props.check_uniqueness_props(R, T, prop, alpha, beta)
    if prop in ("atomic", "U-atomic"):
        return props.check_atomicity(R, T, alpha, u_form=prop == "U-atomic")
    rep = props.check_presimplifiable_variants(R, T)
    return [rep.presimplifiable, rep.tau_u_presimplifiable, rep.tau_presimplifiable]


def cmd_check_ring(args):
    R, T = _ring_tau(args)
    alpha = cl.grade(args.alpha)
    names = PROPERTIES if args.prop == "all" else args.prop.split(",")
    verdicts = []
    for name in names:
        name = name.strip()
        if name not in PROPERTIES:
            raise UsageError(f"unknown property {name!r}; choose from {', '.join(PROPERTIES)} or all")
        v = _check_prop(R, T, name, alpha, args.beta)
        verdicts += v if isinstance(v, list) else [v]
    lines = []
    for v in verdicts:
        extra = ""
        if v.details.get("bound") is not None:
            extra = f" bound={v.details['bound']}"
        lines.append(f"{v.property}: {'holds' if v.holds else 'fails'}{extra}")
        if v.witness is not None:
            lines.append(f"    witness: {_txt(R, v.witness)}")
        if v.note:
            lines.append(f"    note: {v.note}")
    code = EXIT_OK if all(v.holds for v in verdicts) else EXIT_FAIL
    return verdicts, lines, code, R


def _ids(text):
    if text in (None, "all"):
        return list(lab.THEOREM_IDS)
    if text == "questions":
        return list(lab.QUESTION_IDS)
    return [t.strip() for t in text.split(",") if t.strip()]


def _load_corpus(spec):
    if spec == "default":
        return list(lab.DEFAULT_CORPUS)
    return lab.read_corpus_file(spec)


def _progress(verbose):
    if not verbose:
        return None
    return lambda r, t, i: print(f"  {r} | {t} : {i}", file=sys.stderr)


def cmd_verify(args):
    ids = _ids(args.ids)
    if args.corpus:
        rep = lab.run_corpus(_load_corpus(args.corpus), ids, progress=_progress(args.verbose))
        reports = rep.reports
    else:
        if not args.ring:
            raise UsageError("verify needs --ring (with --tau) or --corpus")
        R, T = _ring_tau(args)
        reports = [lab.verify(R, T, t) for t in ids]
        for r in reports:
            r.ring, r.relation = args.ring, args.tau
    lines = []
    for r in reports:
        lines.append(f"{r.status:<12} {r.theorem_id:<17} {r.ring} | {r.relation}")
        if r.counterexample is not None:
            lines.append(f"    counterexample: {_txt(None, r.counterexample)}")
        for n in r.notes:
            if r.status != lab.PASS:
                lines.append(f"    note: {n}")
    counts = Counter(r.status for r in reports)
    lines.append("# totals: " + ", ".join(f"{k}={counts[k]}" for k in lab.STATUSES))
    failed = counts[lab.FAIL] or counts[lab.SEPARATION]
    return reports, lines, EXIT_FAIL if failed else EXIT_OK, None


def cmd_corpus(args):
    if args.question:
        gen = lab.default_generator(args.max_n) if args.corpus is None else iter(_load_corpus(args.corpus))
        rep = lab.search_open_question(args.question, gen, args.budget)
        lines = [f"{e['ring']} | {e['relation']}: {e['status']}" for e in rep.checked]
        lines.append(f"# {len(rep.checked)} checked, {len(rep.separations)} separations")
        lines.append(f"# {rep.note}")
        return rep, lines, EXIT_FAIL if rep.separations else EXIT_OK, None
    corpus = _load_corpus(args.corpus or "default")
    rep = lab.run_corpus(corpus, _ids(args.ids), progress=_progress(args.verbose))
    ids = list(rep.coverage)
    width = max([len(i) for i in ids] + [8])
    lines = [f"{'theorem':<{width}}  PASS  vacuous  SKIP  FAIL  covered"]
    for t in ids:
        row = [r for r in rep.reports if r.theorem_id == t]
        c = {s: sum(r.status == s for r in row) for s in (lab.PASS, lab.VACUOUS, lab.SKIP, lab.FAIL)}
        lines.append(
            f"{t:<{width}}  {c[lab.PASS]:>4}  {c[lab.VACUOUS]:>7}  {c[lab.SKIP]:>4}  {c[lab.FAIL]:>4}  "
            f"{rep.coverage[t]:>7}"
        )
    lines.append("# totals: " + ", ".join(f"{k}={v}" for k, v in rep.counts.items()))
    for r in rep.failures:
        lines.append(f"# FAIL {r.theorem_id} on {r.ring} | {r.relation}: {_txt(None, r.counterexample)}")
    if rep.uncovered:
        lines.append("# no non-vacuous instance: " + ", ".join(rep.uncovered))
    code = EXIT_FAIL if rep.failures else EXIT_OK
    return rep, lines, code, None


def _txt(R, v):
    data = render.jsonable(v, R)
    if isinstance(data, str):
        return data
    return json.dumps(data, separators=(", ", ": "))


# -- argument parsing ----------------------------------------------------------------------

VERBS = {
    "ring-info": cmd_ring_info,
    "factorize": cmd_factorize,
    "ufactorize": cmd_ufactorize,
    "classify": cmd_classify,
    "inventory": cmd_inventory,
    "check-relation": cmd_check_relation,
    "check-ring": cmd_check_ring,
    "verify": cmd_verify,
    "corpus": cmd_corpus,
}


def build_parser():
    p = _Parser(prog="tauu", description="Factorization with respect to a symmetric relation in finite rings.")
    sub = p.add_subparsers(dest="verb", parser_class=_Parser, required=True)

    def common(sp, tau=True, ring_required=True):
        sp.add_argument("--ring", required=ring_required, help="Z<n>, A x B, or table:<path>")
        if tau:
            sp.add_argument("--tau", default="full", help="full | comaximal | empty | pairs:<path> | prod(...)")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("-v", "--verbose", action="store_true")

    sp = sub.add_parser("ring-info", help="carrier, units and ring-level flags")
    common(sp, tau=False)

    for verb, helptext in (("factorize", "tau-factorizations of an element"),
                           ("ufactorize", "tau-U-factorizations of an element")):
        sp = sub.add_parser(verb, help=helptext)
        common(sp)
        sp.add_argument("--elem", required=True)
        sp.add_argument("--beta", type=_beta, default="assoc", help="/".join(MODES))
        sp.add_argument("--cap", type=int, default=None)
        if verb == "factorize":
            sp.add_argument("--limit", type=int, default=200, help="stop after this many classes")

    sp = sub.add_parser("classify", help="irreducibility grades")
    common(sp)
    sp.add_argument("--elem", default=None, help="omit to classify every non-unit")
    sp.add_argument("--cap", type=int, default=None)

    sp = sub.add_parser("inventory", help="essential divisors up to beta")
    common(sp)
    sp.add_argument("--elem", required=True)
    sp.add_argument("--beta", type=_beta, default="assoc")
    sp.add_argument("--alpha", default=None)

    sp = sub.add_parser("check-relation", help="structural flags of the relation")
    common(sp)

    sp = sub.add_parser("check-ring", help="factorization properties")
    common(sp)
    sp.add_argument("--prop", required=True, help="comma list or all: " + ", ".join(PROPERTIES))
    sp.add_argument("--alpha", default="irreducible")
    sp.add_argument("--beta", type=_beta, default="assoc")

    sp = sub.add_parser("verify", help="run theorem checks on one ring or a corpus")
    common(sp, ring_required=False)
    sp.add_argument("--corpus", default=None, help="corpus file, or 'default'")
    sp.add_argument("--ids", default="all", help="comma list, 'all' or 'questions'")

    sp = sub.add_parser("corpus", help="aggregate corpus table, or open-question search")
    sp.add_argument("--corpus", default=None, help="corpus file, or 'default' (the default)")
    sp.add_argument("--ids", default="all")
    sp.add_argument("--question", choices=lab.QUESTION_IDS, default=None)
    sp.add_argument("--max-n", type=int, default=30, help="largest Z/n for the question search")
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "verbose", False):
            logging.getLogger("tauu").setLevel(logging.INFO)
        payload, lines, code, R = VERBS[args.verb](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except TauError as exc:
        print(f"tauu: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(render.dumps(render.document(args.verb, payload, R)))
    else:
        for line in lines:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())

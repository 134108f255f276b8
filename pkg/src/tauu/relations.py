"""Symmetric relations tau on the nonzero non-units, and their structural flags."""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ElementError, InvalidPair, InvalidSpec
from .rings import ASSOC, MODES, Ring, assoc_idx, bits

log = logging.getLogger(__name__)


class TauRelation:
    """A symmetric relation on R^#, stored as one neighbourhood bitmask per element.

    ``nbr[i]`` has bit ``j`` set iff ``i tau j``; bit ``i`` itself is set iff
    the relation is reflexive at ``i`` (needed for repeated factors).
    Non-members of R^# have empty neighbourhoods, so every query involving a
    unit or zero is false.
    """

    def __init__(self, ring, kind, nbr, name, components=(), notes=()):
        self.ring = ring
        self.kind = kind
        self.name = name
        self.nbr = tuple(nbr)
        self.components = tuple(components)
        self.notes = tuple(notes)

    def __repr__(self):
        return f"TauRelation({self.name} on {self.ring.name})"

    def __str__(self):
        return self.name

    def holds(self, a, b):
        R = self.ring
        if a not in R or b not in R:
            return False
        return (self.nbr[R.idx(a)] >> R.idx(b)) & 1 == 1

    def holds_idx(self, i, j):
        return (self.nbr[i] >> j) & 1 == 1

    def pairs(self):
        R = self.ring
        return {(R.val(i), R.val(j)) for i in R.sharp_idx for j in bits(self.nbr[i])}


def tau_holds(T, a, b):
    return T.holds(a, b)


def _from_predicate(R, kind, name, pred, **kw):
    nbr = [0] * len(R)
    for i in R.sharp_idx:
        for j in R.sharp_idx:
            if pred(i, j):
                nbr[i] |= 1 << j
    return TauRelation(R, kind, nbr, name, **kw)


def full(R):
    return _from_predicate(R, "full", "full", lambda i, j: True)


def comaximal(R):
    """``a tau b`` iff (a) + (b) contains a unit."""
    add = R.add_table
    ideals = {i: bits(R.ideal_mask[i]) for i in R.sharp_idx}

    def pred(i, j):
        return any(add[x][y] in R.inverse for x in ideals[i] for y in ideals[j])

    return _from_predicate(R, "comaximal", "comaximal", pred)


def from_pairs(R, pairs, name="pairs"):
    """Explicit relation; asymmetric input is symmetrized with a logged note."""
    nbr = [0] * len(R)
    given = set()
    for a, b in pairs:
        for x in (a, b):
            if x not in R:
                raise ElementError(f"{x!r} is not an element of {R.name}")
            if not R.in_sharp(x):
                raise InvalidPair(f"pair ({a!r}, {b!r}) uses {x!r}, which is not a nonzero non-unit")
        i, j = R.idx(a), R.idx(b)
        given.add((i, j))
        nbr[i] |= 1 << j
        nbr[j] |= 1 << i
    notes = []
    missing = sorted((j, i) for i, j in given if (j, i) not in given)
    if missing:
        msg = f"symmetrized {len(missing)} one-directional pair(s)"
        log.warning(msg)
        notes.append(msg)
    return TauRelation(R, "pairs", nbr, name, notes=notes)


def empty(R):
    return from_pairs(R, (), name="empty")


def tau_product(R, components):
    """tau_x: tuples relate iff every coordinate where both entries are non-units relates."""
    if R.kind != "product":
        raise InvalidSpec(f"prod(...) relation needs a product ring, got {R.name}")
    if len(components) != len(R.factors):
        raise InvalidSpec(
            f"prod(...) has {len(components)} components but {R.name} has {len(R.factors)} factors"
        )
    for comp, F in zip(components, R.factors):
        if comp.ring is not F:
            raise InvalidSpec(f"component relation {comp} is not over factor {F.name}")
    coords = [tuple(F.idx(v) for F, v in zip(R.factors, R.val(i))) for i in range(len(R))]

    def pred(i, j):
        for F, T, x, y in zip(R.factors, components, coords[i], coords[j]):
            if x not in F.inverse and y not in F.inverse and not T.holds_idx(x, y):
                return False
        return True

    name = "prod(" + ",".join(c.name for c in components) + ")"
    return _from_predicate(R, "product", name, pred, components=components)


def read_pairs_file(R, path):
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InvalidSpec(f"cannot read pairs file {path}: {exc}") from None
    pairs = []
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        toks = _split_top(line, sep=None)
        if len(toks) != 2:
            raise InvalidSpec(f"{path}:{lineno}: expected two elements, got {line!r}")
        pairs.append(tuple(R.parse_element(t) for t in toks))
    return pairs


def _split_top(text, sep=","):
    """Split on ``sep`` (or whitespace/comma when None) outside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        is_sep = (ch in " \t,") if sep is None else ch == sep
        if is_sep and depth == 0:
            if cur:
                out.append("".join(cur).strip())
            cur = []
            continue
        cur.append(ch)
    if "".join(cur).strip():
        out.append("".join(cur).strip())
    return out


def make_tau(R, spec):
    """Parse ``full | comaximal | empty | pairs:<path> | prod(s1,...,sN)``."""
    if isinstance(spec, TauRelation):
        return spec
    if not isinstance(spec, str):
        raise InvalidSpec(f"bad relation spec {spec!r}")
    s = spec.strip()
    if s == "full":
        return full(R)
    if s == "comaximal":
        return comaximal(R)
    if s == "empty":
        return empty(R)
    if s.startswith("pairs:"):
        path = s[len("pairs:"):]
        return from_pairs(R, read_pairs_file(R, path), name=s)
    m = re.fullmatch(r"prod\((.*)\)", s)
    if m:
        if R.kind != "product":
            raise InvalidSpec(f"prod(...) relation needs a product ring, got {R.name}")
        parts = _split_top(m.group(1))
        if len(parts) != len(R.factors):
            raise InvalidSpec(
                f"prod(...) has {len(parts)} components but {R.name} has {len(R.factors)} factors"
            )
        return tau_product(R, [make_tau(F, p) for F, p in zip(R.factors, parts)])
    raise InvalidSpec(f"unknown relation spec {spec!r}")


# -- structural report ------------------------------------------------------------

@dataclass
class RelationReport:
    multiplicative: bool
    divisive: bool
    associate_preserving: dict
    combinable: bool
    refinable: bool
    tau_u_refinable: bool
    witnesses: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "multiplicative": self.multiplicative,
            "divisive": self.divisive,
            "associate_preserving": dict(self.associate_preserving),
            "combinable": self.combinable,
            "refinable": self.refinable,
            "tau_u_refinable": self.tau_u_refinable,
            "witnesses": dict(self.witnesses),
        }


def _multiplicative(R, T):
    mul = R.mul_table
    for a, b, c in itertools.product(R.sharp_idx, repeat=3):
        if T.holds_idx(a, b) and T.holds_idx(a, c) and not T.holds_idx(a, mul[b][c]):
            return (a, b, c)
    return None


def _divisive(R, T):
    for a, b, b2 in itertools.product(R.sharp_idx, repeat=3):
        if T.holds_idx(a, b) and R.divides(b2, b) and not T.holds_idx(a, b2):
            return (a, b, b2)
    return None


def _assoc_preserving(R, T, mode):
    for a, b, b2 in itertools.product(R.sharp_idx, repeat=3):
        if assoc_idx(R, b, b2, mode) and T.holds_idx(a, b) and not T.holds_idx(a, b2):
            return (a, b, b2)
    return None


def _combinable(R, T):
    """Sub-multisets of tau-factorizations are tau-factorizations, so pairs and triples suffice."""
    mul = R.mul_table
    for x in R.sharp_idx:
        for y in bits(T.nbr[x]):
            xy = mul[x][y]
            if not (R.sharp_mask >> xy) & 1:
                return (x, y)
            for z in bits(T.nbr[x] & T.nbr[y]):
                if not T.holds_idx(xy, z):
                    return (x, y, z)
    return None


def relation_report(R, T):
    from .search import context

    ctx = context(R, T)
    wit = {}

    def vals(t):
        return None if t is None else tuple(R.val(i) for i in t)

    m = _multiplicative(R, T)
    d = _divisive(R, T)
    ap = {}
    for mode in MODES:
        w = _assoc_preserving(R, T, mode)
        ap[mode] = w is None
        if w is not None:
            wit[f"associate_preserving.{mode}"] = vals(w)
    c = _combinable(R, T)
    ref = ctx.refinable_witness()
    uref = ctx.tau_u_refinable_witness()
    if m is not None:
        wit["multiplicative"] = vals(m)
    if d is not None:
        wit["divisive"] = vals(d)
    if c is not None:
        wit["combinable"] = vals(c)
    if ref is not None:
        wit["refinable"] = ref
    if uref is not None:
        wit["tau_u_refinable"] = uref
    return RelationReport(
        multiplicative=m is None,
        divisive=d is None,
        associate_preserving=ap,
        combinable=c is None,
        refinable=ref is None,
        tau_u_refinable=uref is None,
        witnesses=wit,
    )


def is_symmetric(T):
    R = T.ring
    return all(T.holds_idx(j, i) for i in R.sharp_idx for j in bits(T.nbr[i]))

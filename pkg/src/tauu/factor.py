"""tau-factorizations and tau-U-factorizations: validation, rearrangement,
refinement and exact enumeration on finite rings."""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field

from .errors import FixpointFailure, InvalidRefinement, InvalidTarget, NotFactorable
from .rings import ASSOC, bits, check_mode
from .search import context, default_cap


@dataclass(frozen=True)
class Factorization:
    unit: object
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def value(self, R):
        return R.prod((self.unit,) + self.factors)

    def __len__(self):
        return len(self.factors)


@dataclass(frozen=True)
class UFactorization:
    unit: object
    inessential: tuple
    essential: tuple

    def __post_init__(self):
        object.__setattr__(self, "inessential", tuple(self.inessential))
        object.__setattr__(self, "essential", tuple(self.essential))

    def flat(self):
        return Factorization(self.unit, self.inessential + self.essential)

    def value(self, R):
        return self.flat().value(R)

    def same_split(self, other):
        """Equal as multisets, ignoring factor order."""
        return (
            self.unit == other.unit
            and Counter(self.inessential) == Counter(other.inessential)
            and Counter(self.essential) == Counter(other.essential)
        )


@dataclass(frozen=True)
class Check:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class PumpCycle:
    """``prefix + cycle * k + suffix`` is a tau-factorization of the same element for all k."""

    prefix: tuple
    cycle: tuple
    suffix: tuple = ()
    partial_product: object = None

    def replay(self, k, unit):
        return Factorization(unit, self.prefix + self.cycle * k + self.suffix)


@dataclass
class EnumerationResult:
    factorizations: dict
    exact: bool
    cap_used: int
    unbounded_witness: PumpCycle | None = None
    max_length: int | None = None
    notes: list = field(default_factory=list)

    @property
    def keys(self):
        return set(self.factorizations)

    def __len__(self):
        return len(self.factorizations)


# -- validation --------------------------------------------------------------------

def check_tau_factorization(R, T, a, F):
    if a not in R:
        return Check(False, f"{a!r} is not an element of {R.name}")
    if F.unit not in R or not R.is_unit(F.unit):
        return Check(False, f"leading factor {F.unit!r} is not a unit")
    if not F.factors:
        return Check(False, "a factorization needs at least one factor")
    for f in F.factors:
        if not R.in_sharp(f):
            return Check(False, f"factor {f!r} is not a nonzero non-unit")
    if F.value(R) != a:
        return Check(False, f"factors multiply to {F.value(R)!r}, not {a!r}")
    for (i, x), (j, y) in itertools.combinations(enumerate(F.factors), 2):
        if not T.holds(x, y):
            return Check(False, f"factors {x!r} (#{i + 1}) and {y!r} (#{j + 1}) are not tau-related")
    return Check(True)


def _u_conditions(R, inessential, essential):
    if not essential:
        return Check(False, "essential part is empty")
    e = R.idx(R.prod(essential))
    for x in inessential:
        if not R.in_sharp(x):
            return Check(False, f"inessential factor {x!r} is not a nonzero non-unit")
        if R.ideal_mask[R.mul_table[R.idx(x)][e]] != R.ideal_mask[e]:
            return Check(False, f"{x!r} changes the ideal of the essential product, so it is essential")
    for k, b in enumerate(essential):
        rest = R.idx(R.prod(essential[:k] + essential[k + 1:]))
        if R.ideal_mask[R.mul_table[R.idx(b)][rest]] == R.ideal_mask[rest]:
            return Check(False, f"essential divisor {b!r} is inessential")
    return Check(True)


def check_u_factorization(R, T, a, UF):
    c = check_tau_factorization(R, T, a, UF.flat())
    if not c:
        return c
    return _u_conditions(R, UF.inessential, UF.essential)


def is_u_factorization(R, UF):
    """Both U-conditions, without reference to any relation."""
    return _u_conditions(R, UF.inessential, UF.essential)


# -- rearrangement ----------------------------------------------------------------

def u_split(R, F):
    """Every (inessential, essential) split of F's factor multiset satisfying both conditions."""
    counts = Counter(F.factors)
    values = sorted(counts, key=R.idx)
    out = []
    for take in itertools.product(*[range(counts[v] + 1) for v in values]):
        essential = tuple(v for v, k in zip(values, take) for _ in range(k))
        if not essential:
            continue
        inessential = tuple(v for v, k in zip(values, take) for _ in range(counts[v] - k))
        if _u_conditions(R, inessential, essential):
            out.append(UFactorization(F.unit, inessential, essential))
    return out


def to_u_factorization(R, F):
    """Move factors that do not shrink the ideal of the others to the front, until stable."""
    essential = list(F.factors)
    inessential = []
    moved = True
    while moved:
        moved = False
        k = 0
        while k < len(essential):
            rest = essential[:k] + essential[k + 1:]
            if rest:
                r = R.idx(R.prod(rest))
                if R.ideal_mask[R.mul_table[R.idx(essential[k])][r]] == R.ideal_mask[r]:
                    inessential.append(essential.pop(k))
                    moved = True
                    continue
            k += 1
    out = UFactorization(F.unit, tuple(inessential), tuple(essential))
    if not _u_conditions(R, out.inessential, out.essential):
        raise FixpointFailure(f"rearrangement of {F} ended at {out}")
    return out


# -- refinement -------------------------------------------------------------------

def apply_refinement(R, T, F, position, sub):
    """Replace factor number ``position`` (1-based) by the factorization ``sub``."""
    if not 1 <= position <= len(F.factors):
        raise InvalidRefinement(f"position {position} out of range 1..{len(F.factors)}")
    target = F.factors[position - 1]
    c = check_tau_factorization(R, T, target, sub)
    if not c:
        raise InvalidRefinement(f"sub is not a tau-factorization of {target!r}: {c.reason}")
    others = F.factors[: position - 1] + F.factors[position:]
    out = Factorization(R.mul(F.unit, sub.unit), sub.factors + others)
    return out, check_tau_factorization(R, T, F.value(R), out)


def apply_u_refinement(R, T, UF, target, sub):
    """Refine one copy of the essential divisor ``target`` by the tau-U-factorization ``sub``."""
    if target not in UF.essential:
        raise InvalidTarget(f"{target!r} is not an essential divisor of {UF}")
    c = check_u_factorization(R, T, target, sub)
    if not c:
        raise InvalidRefinement(f"sub is not a tau-U-factorization of {target!r}: {c.reason}")
    k = UF.essential.index(target)
    out = UFactorization(
        R.mul(UF.unit, sub.unit),
        UF.inessential + sub.inessential,
        UF.essential[:k] + sub.essential + UF.essential[k + 1:],
    )
    return out, check_u_factorization(R, T, UF.value(R), out)


# -- enumeration ----------------------------------------------------------------------

def _require_nonunit(R, a):
    if R.is_unit(a):
        raise NotFactorable(f"{a!r} is a unit of {R.name}")
    return R.idx(a)


def _key_values(R, key):
    return tuple(R.val(i) for i in key)


def unboundedness_certificate(R, T, a):
    ai = _require_nonunit(R, a)
    ctx = context(R, T)
    found = ctx.pump(ai)
    if found is None:
        return None
    prefix, cycle, suffix = found
    return PumpCycle(
        prefix=_key_values(R, prefix),
        cycle=_key_values(R, cycle),
        suffix=_key_values(R, suffix),
        partial_product=R.val(R.prod_idx(prefix)),
    )


def max_factorization_length(R, T, a):
    """Longest tau-factorization of ``a``; ``None`` when lengths are unbounded."""
    ai = _require_nonunit(R, a)
    ctx = context(R, T)
    if ctx.pump(ai) is not None:
        return None
    return ctx.max_length(ai)


def unit_for(R, factors, a):
    """The unit ``u`` with ``u * prod(factors) == a`` (smallest by index)."""
    u = R.unit_between(R.prod_idx(R.idx(f) for f in factors), R.idx(a))
    return None if u is None else R.val(u)


def enumerate_tau_factorizations(R, T, a, beta=ASSOC, cap=None, limit=None):
    """All tau-factorizations of ``a`` with at most ``cap`` factors, up to rearrangement and beta.

    Keys are sorted tuples of beta-class representatives; each maps to one
    witnessing factorization.  ``limit`` stops the search once that many
    classes are found (shortest first), which marks the result inexact.
    """
    check_mode(beta)
    ai = _require_nonunit(R, a)
    ctx = context(R, T)
    cap = default_cap(R) if cap is None else cap
    rep = ctx.class_rep(beta)
    mul, nbr, orbit, ideal = R.mul_table, T.nbr, R.orbit_mask, R.ideal_mask
    start = (R.one_i, R.sharp_mask, ())
    witness = {start: ()}
    frontier = deque([start])
    found = {}
    truncated = False
    for _depth in range(cap):
        if limit is not None and len(found) >= limit:
            truncated = bool(frontier)
            break
        nxt = deque()
        while frontier:
            if limit is not None and len(found) >= limit:
                truncated = True
                break
            s = frontier.popleft()
            p, K, key = s
            path = witness[s]
            for x in bits(K):
                q = mul[p][x]
                # every completion stays inside (q), so a must lie there
                if not (ideal[q] >> ai) & 1:
                    continue
                nk = tuple(sorted(key + (rep[x],)))
                ns = (q, K & nbr[x], nk)
                if ns in witness:
                    continue
                witness[ns] = path + (x,)
                nxt.append(ns)
                if (orbit[q] >> ai) & 1 and nk not in found:
                    found[nk] = witness[ns]
        frontier = nxt
    result = {}
    ordered = sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0]))
    if limit is not None and len(ordered) > limit:
        ordered, truncated = ordered[:limit], True
    for key, path in ordered:
        factors = _key_values(R, path)
        result[_key_values(R, key)] = Factorization(unit_for(R, factors, a), factors)
    pump = unboundedness_certificate(R, T, a)
    longest = None if pump is not None else ctx.max_length(ai)
    exact = pump is None and longest <= cap and not truncated
    res = EnumerationResult(result, exact, cap, pump, longest)
    if truncated:
        res.notes.append(f"stopped after {limit} classes")
    if pump is not None:
        res.notes.append("lengths are unbounded; listing truncated at the cap")
    return res


def enumerate_tau_u_factorizations(R, T, a, beta=ASSOC, cap=None):
    """Every realizable essential multiset of ``a`` up to beta, with one witness each.

    Two tau-U-factorizations count as the same when their essential parts
    match up to beta; inessential parts are ignored.
    """
    check_mode(beta)
    ai = _require_nonunit(R, a)
    ctx = context(R, T)
    cap = len(R) + 1 if cap is None else cap
    found = {}
    for E, A in ctx.u_factorizations(ai, cap=cap):
        key = _key_values(R, ctx.canon(E, beta))
        if key in found:
            continue
        ess = _key_values(R, E)
        iness = _key_values(R, A)
        found[key] = UFactorization(unit_for(R, iness + ess, a), iness, ess)
    uncapped = {tuple(E) for E, _ in ctx.u_factorizations(ai)}
    capped = {tuple(E) for E, _ in ctx.u_factorizations(ai, cap=cap)}
    ordered = dict(sorted(found.items(), key=lambda kv: (len(kv[0]), [R.idx(v) for v in kv[0]])))
    return EnumerationResult(ordered, capped == uncapped, cap, None)


def all_u_factorizations(R, T, a, cap=None):
    """Element-level list: one witness per realizable essential multiset (no beta merging)."""
    ai = _require_nonunit(R, a)
    ctx = context(R, T)
    out = []
    for E, A in ctx.u_factorizations(ai, cap=cap):
        ess, iness = _key_values(R, E), _key_values(R, A)
        out.append(UFactorization(unit_for(R, iness + ess, a), iness, ess))
    return out


def factor_multisets(R, T, a, allowed=None, max_len=None, exact_len=None, limit=None):
    """Sorted index tuples of tau-factorizations of ``a`` (element level, no beta merging).

    Factors come from the ``allowed`` mask; lengths run up to ``max_len``
    (default |R|+2) or are fixed to ``exact_len``.  At most ``limit`` multisets
    are returned, shortest first.
    """
    ai = _require_nonunit(R, a)
    mask = R.sharp_mask if allowed is None else allowed & R.sharp_mask
    top = exact_len if exact_len is not None else (default_cap(R) if max_len is None else max_len)
    mul, nbr, orbit = R.mul_table, T.nbr, R.orbit_mask
    frontier = {(R.one_i, mask, ())}
    out = []
    for depth in range(1, top + 1):
        nxt = set()
        for p, K, key in frontier:
            for x in bits(K):
                if key and x < key[-1]:
                    continue
                nxt.add((mul[p][x], K & nbr[x], key + (x,)))
        frontier = nxt
        if exact_len is None or depth == exact_len:
            hits = sorted(key for p, _, key in frontier if (orbit[p] >> ai) & 1)
            out.extend(hits)
            if limit is not None and len(out) >= limit:
                return out[:limit]
    return out

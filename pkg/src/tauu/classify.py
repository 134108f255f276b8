"""Irreducibility grades of single elements, essential-divisor inventories and
atomic tau-U-factorizations."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .errors import InvalidSpec, NotClassifiable, NotFactorable
from .factor import Factorization, UFactorization, unit_for
from .rings import ASSOC, VERY_STRONG, assoc_idx, check_mode
from .search import context

IRREDUCIBLE = "irreducible"
STRONGLY = "strongly_irreducible"
M_IRREDUCIBLE = "m_irreducible"
VERY_STRONGLY = "very_strongly_irreducible"
GRADES = (IRREDUCIBLE, STRONGLY, M_IRREDUCIBLE, VERY_STRONGLY)

_ALIASES = {
    "irreducible": IRREDUCIBLE,
    "irr": IRREDUCIBLE,
    "atomic": IRREDUCIBLE,
    "strong": STRONGLY,
    "strongly": STRONGLY,
    "strongly_irreducible": STRONGLY,
    "m": M_IRREDUCIBLE,
    "m_irreducible": M_IRREDUCIBLE,
    "very_strong": VERY_STRONGLY,
    "very_strongly": VERY_STRONGLY,
    "very_strongly_irreducible": VERY_STRONGLY,
}


def grade(name):
    key = str(name).strip().lower().replace("-", "_")
    if key not in _ALIASES:
        raise InvalidSpec(f"unknown irreducibility grade {name!r}; choose from {', '.join(GRADES)}")
    return _ALIASES[key]


@dataclass
class IrreducibilityReport:
    element: object
    flags: dict
    witnesses: dict = field(default_factory=dict)

    @property
    def irreducible(self):
        return self.flags[IRREDUCIBLE]

    @property
    def strongly_irreducible(self):
        return self.flags[STRONGLY]

    @property
    def m_irreducible(self):
        return self.flags[M_IRREDUCIBLE]

    @property
    def very_strongly_irreducible(self):
        return self.flags[VERY_STRONGLY]


def _witness(R, a, path):
    factors = tuple(R.val(i) for i in path)
    return Factorization(unit_for(R, factors, a), factors)


def _flags_idx(R, T, ai, cap=None):
    """Grade flags and violating factor-index paths for the element index ``ai``."""
    ctx = context(R, T)
    not_assoc = R.sharp_mask & ~R.ideal_mask[ai]
    not_approx = R.sharp_mask & ~R.orbit_mask[ai]
    flags, paths = {}, {}

    # a trivial factorization a = u*a1 always has a1 ~ a and a1 ~= a, so only
    # factorizations avoiding every such factor can violate these grades
    p = ctx.find_factorization(ai, allowed=not_assoc, cap=cap)
    flags[IRREDUCIBLE] = p is None
    if p is not None:
        paths[IRREDUCIBLE] = p
    p = ctx.find_factorization(ai, allowed=not_approx, cap=cap)
    flags[STRONGLY] = p is None
    if p is not None:
        paths[STRONGLY] = p
    p = ctx.find_factorization(ai, need=not_assoc, cap=cap) if not_assoc else None
    flags[M_IRREDUCIBLE] = p is None
    if p is not None:
        paths[M_IRREDUCIBLE] = p
    p = ctx.find_factorization(ai, min_len=2, cap=cap)
    self_cong = assoc_idx(R, ai, ai, VERY_STRONG)
    flags[VERY_STRONGLY] = p is None and self_cong
    if p is not None:
        paths[VERY_STRONGLY] = p
    elif not self_cong:
        paths[VERY_STRONGLY] = "not_self_cong"
    return flags, paths


def irreducibility(R, T, a, cap=None):
    """Decide the four grades for the non-unit ``a``.

    Every false flag carries a violating tau-factorization.  When ``a`` has no
    factorization of length two or more but is not very strongly associate to
    itself, the very-strong witness is an explanatory string instead.
    """
    if R.is_unit(a):
        raise NotClassifiable(f"{a!r} is a unit of {R.name}")
    flags, paths = _flags_idx(R, T, R.idx(a), cap)
    wit = {}
    for name, p in paths.items():
        if p == "not_self_cong":
            wit[name] = f"{R.format(a)} is not very strongly associate to itself"
        else:
            wit[name] = _witness(R, a, p)
    return IrreducibilityReport(a, flags, wit)


@functools.lru_cache(maxsize=128)
def grade_mask(R, T, alpha):
    """Bitmask of the elements of R^# that are tau-alpha."""
    alpha = grade(alpha)
    mask = 0
    for i in R.sharp_idx:
        if _flags_idx(R, T, i)[0][alpha]:
            mask |= 1 << i
    return mask


def is_tau_alpha(R, T, x, alpha):
    return R.in_sharp(x) and (grade_mask(R, T, alpha) >> R.idx(x)) & 1 == 1


def essential_divisor_inventory(R, T, a, beta=ASSOC, alpha=None):
    """Essential divisors over all tau-U-factorizations of ``a``, one value per beta class."""
    check_mode(beta)
    if R.is_unit(a):
        raise NotFactorable(f"{a!r} is a unit of {R.name}")
    ctx = context(R, T)
    rep = ctx.class_rep(beta)
    keep = R.sharp_mask if alpha is None else grade_mask(R, T, grade(alpha))
    found = set()
    for E, _ in ctx.u_factorizations(R.idx(a)):
        found.update(rep[b] for b in E if (keep >> b) & 1)
    return [R.val(i) for i in sorted(found)]


def atomic_u_factorization(R, T, a, alpha=IRREDUCIBLE):
    """A tau-U-factorization of ``a`` whose essential divisors are all tau-alpha, or None.

    Among the candidates the one with the fewest essential divisors (then the
    smallest by element order) is returned.
    """
    if R.is_unit(a):
        raise NotFactorable(f"{a!r} is a unit of {R.name}")
    ctx = context(R, T)
    found = ctx.u_factorizations(R.idx(a), allowed=grade_mask(R, T, grade(alpha)))
    if not found:
        return None
    E, A = min(found, key=lambda ea: (len(ea[0]), ea[0]))
    ess = tuple(R.val(i) for i in E)
    iness = tuple(R.val(i) for i in A)
    return UFactorization(unit_for(R, iness + ess, a), iness, ess)


def classify_all(R, T, cap=None):
    """``{element: IrreducibilityReport}`` for every non-unit."""
    return {R.val(i): irreducibility(R, T, R.val(i), cap) for i in range(len(R)) if i not in R.inverse}


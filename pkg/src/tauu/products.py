"""Moving factorizations between a direct product and its coordinate rings."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidCoordinate, InvalidInput, NotProjectable
from .factor import Factorization, UFactorization, check_u_factorization
from .rings import embed


@dataclass(frozen=True)
class CoordinateFactorization:
    """A U-factorization ``inner`` over the factor ring at ``coordinate`` (1-based)."""

    coordinate: int
    inner: UFactorization


def _component(Rprod, Tprod, i):
    if Rprod.kind != "product":
        raise InvalidCoordinate(f"{Rprod.name} is not a product ring")
    if not 1 <= i <= len(Rprod.factors):
        raise InvalidCoordinate(f"coordinate {i} out of range 1..{len(Rprod.factors)}")
    if len(Tprod.components) != len(Rprod.factors):
        raise InvalidInput(f"relation {Tprod} is not a product relation over {Rprod.name}")
    return Rprod.factors[i - 1], Tprod.components[i - 1]


def lift_u_factorization(Rprod, Tprod, cf):
    """Embed every part of ``cf.inner`` at its coordinate; other coordinates become 1."""
    i = cf.coordinate
    Ri, Ti = _component(Rprod, Tprod, i)
    inner = cf.inner
    c = check_u_factorization(Ri, Ti, inner.value(Ri), inner)
    if not c:
        raise InvalidInput(f"inner factorization is not valid in {Ri.name}: {c.reason}")
    return UFactorization(
        embed(Rprod, i, inner.unit),
        tuple(embed(Rprod, i, x) for x in inner.inessential),
        tuple(embed(Rprod, i, x) for x in inner.essential),
    )


def project_u_factorization(Rprod, Tprod, UF, i):
    """Coordinate ``i`` of every part of a factorization of an element that is a unit elsewhere."""
    Ri, Ti = _component(Rprod, Tprod, i)
    a = UF.value(Rprod)
    for k, (F, x) in enumerate(zip(Rprod.factors, a), 1):
        if k != i and not F.is_unit(x):
            raise NotProjectable(
                f"{Rprod.format(a)} has a non-unit at coordinate {k} as well as {i}"
            )
    for x in UF.inessential + UF.essential:
        if x[i - 1] == Ri.zero:
            raise NotProjectable(
                f"factor {Rprod.format(x)} has zero at coordinate {i}, which is not in R#"
            )
    return CoordinateFactorization(
        i,
        UFactorization(
            UF.unit[i - 1],
            tuple(x[i - 1] for x in UF.inessential),
            tuple(x[i - 1] for x in UF.essential),
        ),
    )


def decompose_product_factorization(Rprod, Tprod, F):
    """Split every factor into single-coordinate embeddings; unit coordinates join the leading unit."""
    if Rprod.kind != "product":
        raise InvalidCoordinate(f"{Rprod.name} is not a product ring")
    unit = F.unit
    factors = []
    for f in F.factors:
        unit_part = []
        for k, (Rk, x) in enumerate(zip(Rprod.factors, f), 1):
            if Rk.is_unit(x):
                unit_part.append(x)
            else:
                unit_part.append(Rk.one)
                factors.append(embed(Rprod, k, x))
        unit = Rprod.mul(unit, tuple(unit_part))
    return Factorization(unit, tuple(factors))

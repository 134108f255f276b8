"""Finite commutative rings with identity, principal ideals and associate relations.

Elements are plain hashable values: ``int`` residues for ``Z<n>`` and table
rings, flat tuples of component values for direct products.  Internally every
ring also numbers its carrier ``0..k-1`` and keeps operation tables over those
indices; subsets of the carrier are stored as ``int`` bitmasks.
"""

from __future__ import annotations

import functools
import itertools
import re
import warnings
from dataclasses import dataclass
from pathlib import Path

from .errors import ElementError, InvalidCoordinate, InvalidSpec, RingAxiomViolation

ASSOC = "assoc"
STRONG = "strong"
VERY_STRONG = "very_strong"
MODES = (ASSOC, STRONG, VERY_STRONG)

SIZE_WARNING = 64


def bits(mask):
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(idxs):
    mask = 0
    for i in idxs:
        mask |= 1 << i
    return mask


def check_mode(mode):
    if mode not in MODES:
        raise InvalidSpec(f"unknown associate mode {mode!r}; expected one of {MODES}")
    return mode


@dataclass(frozen=True)
class Ideal:
    generator: object
    members: frozenset

    def __contains__(self, x):
        return x in self.members

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class Partition:
    units: frozenset
    r_sharp: frozenset


class Ring:
    """A validated finite commutative ring with identity.

    Use :func:`modular`, :func:`product`, :func:`table_ring` or
    :func:`make_ring` rather than calling the constructor directly.
    """

    def __init__(self, kind, elements, add, mul, name, modulus=None, factors=()):
        self.kind = kind
        self.name = name
        self.modulus = modulus
        self.factors = tuple(factors)
        self.elements = tuple(elements)
        self._index = {v: i for i, v in enumerate(self.elements)}
        self.add_table = tuple(tuple(r) for r in add)
        self.mul_table = tuple(tuple(r) for r in mul)
        n = len(self.elements)
        if n > SIZE_WARNING:
            warnings.warn(
                f"ring {name} has {n} elements; exhaustive checks may be slow",
                stacklevel=3,
            )
        self.zero_i = _identity(self.add_table, n)
        self.one_i = _identity(self.mul_table, n)
        if self.zero_i is None or self.one_i is None:
            raise RingAxiomViolation("identity", ())
        mul = self.mul_table
        self.inverse = {}
        for i in range(n):
            for j in range(n):
                if mul[i][j] == self.one_i:
                    self.inverse[i] = j
                    break
        self.unit_idx = tuple(sorted(self.inverse))
        self.unit_mask = sum(1 << i for i in self.unit_idx)
        self.sharp_idx = tuple(i for i in range(n) if i != self.zero_i and i not in self.inverse)
        self.sharp_mask = sum(1 << i for i in self.sharp_idx)
        self.nonunit_idx = tuple(i for i in range(n) if i not in self.inverse)
        # principal ideal and unit orbit of every element, as bitmasks
        self.ideal_mask = tuple(to_mask(mul[r][i] for r in range(n)) for i in range(n))
        self.orbit_mask = tuple(to_mask(mul[u][i] for u in self.unit_idx) for i in range(n))

    # -- plumbing ---------------------------------------------------------
    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"Ring({self.name})"

    def __str__(self):
        return self.name

    @property
    def zero(self):
        return self.elements[self.zero_i]

    @property
    def one(self):
        return self.elements[self.one_i]

    @property
    def arity(self):
        return len(self.factors) if self.kind == "product" else 1

    def idx(self, value):
        try:
            return self._index[value]
        except (KeyError, TypeError):
            raise ElementError(f"{value!r} is not an element of {self.name}") from None

    def val(self, i):
        return self.elements[i]

    def __contains__(self, value):
        try:
            return value in self._index
        except TypeError:
            return False

    def add(self, a, b):
        return self.elements[self.add_table[self.idx(a)][self.idx(b)]]

    def mul(self, a, b):
        return self.elements[self.mul_table[self.idx(a)][self.idx(b)]]

    def prod(self, values):
        p = self.one_i
        for v in values:
            p = self.mul_table[p][self.idx(v)]
        return self.elements[p]

    def prod_idx(self, idxs, start=None):
        mul = self.mul_table
        p = self.one_i if start is None else start
        for i in idxs:
            p = mul[p][i]
        return p

    def is_unit(self, a):
        return self.idx(a) in self.inverse

    def in_sharp(self, a):
        return a in self and (self.sharp_mask >> self.idx(a)) & 1 == 1

    def unit_between(self, p, a):
        """Index of a unit ``u`` with ``u * p == a`` (indices), or ``None``."""
        mul = self.mul_table
        for u in self.unit_idx:
            if mul[u][p] == a:
                return u
        return None

    def divides(self, d, x):
        """``d | x`` on indices: x lies in the principal ideal of d."""
        return (self.ideal_mask[d] >> x) & 1 == 1

    def parse_element(self, text):
        text = text.strip()
        if self.kind == "product":
            m = re.fullmatch(r"\(\s*(.*?)\s*\)", text)
            if not m:
                raise ElementError(f"expected a tuple like (3,4) for {self.name}, got {text!r}")
            try:
                value = tuple(int(t) for t in m.group(1).split(","))
            except ValueError:
                raise ElementError(f"bad tuple literal {text!r}") from None
        else:
            try:
                value = int(text)
            except ValueError:
                raise ElementError(f"bad element literal {text!r}") from None
        if value not in self:
            raise ElementError(f"{text} is not an element of {self.name}")
        return value

    def format(self, value):
        if isinstance(value, tuple):
            return "(" + ",".join(str(v) for v in value) + ")"
        return str(value)


def _identity(table, n):
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            return e
    return None


# -- constructors -------------------------------------------------------------

def modular(n):
    if not isinstance(n, int) or n < 2:
        raise InvalidSpec(f"Z<n> requires n >= 2, got {n!r}")
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[(a * b) % n for b in range(n)] for a in range(n)]
    return Ring("modular", range(n), add, mul, name=f"Z{n}", modulus=n)


def product(rings):
    rings = list(rings)
    if not rings:
        raise InvalidSpec("a product needs at least one factor ring")
    flat = []
    for r in rings:
        flat.extend(r.factors if r.kind == "product" else [r])
    sizes = [len(r) for r in flat]
    combos = list(itertools.product(*[range(s) for s in sizes]))
    position = {c: k for k, c in enumerate(combos)}
    elements = [tuple(r.val(i) for r, i in zip(flat, c)) for c in combos]

    def table(attr):
        return [
            [position[tuple(getattr(r, attr)[x][y] for r, x, y in zip(flat, c, d))] for d in combos]
            for c in combos
        ]

    name = "x".join(r.name for r in flat)
    return Ring("product", elements, table("add_table"), table("mul_table"), name=name, factors=flat)


def table_ring(add, mul, name=None):
    """Build a ring from explicit tables over ``0..k-1``, checking every axiom."""
    k = len(add)
    if k < 2 or len(mul) != k or any(len(r) != k for r in add) or any(len(r) != k for r in mul):
        raise InvalidSpec("table rings need two square k x k tables with k >= 2")
    for t in (add, mul):
        for row in t:
            for v in row:
                if not (isinstance(v, int) and 0 <= v < k):
                    raise InvalidSpec(f"table entry {v!r} outside 0..{k - 1}")
    _validate_tables(add, mul, k)
    return Ring("table", range(k), add, mul, name=name or f"T{k}")


def _validate_tables(add, mul, k):
    r = range(k)
    for op, t in (("addition", add), ("multiplication", mul)):
        for a, b in itertools.product(r, r):
            if t[a][b] != t[b][a]:
                raise RingAxiomViolation(f"commutativity of {op}", (a, b, None))
        for a, b, c in itertools.product(r, r, r):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise RingAxiomViolation(f"associativity of {op}", (a, b, c))
    zero = _identity(add, k)
    if zero is None:
        raise RingAxiomViolation("additive identity", ())
    if _identity(mul, k) is None:
        raise RingAxiomViolation("multiplicative identity", ())
    for a in r:
        if not any(add[a][b] == zero for b in r):
            raise RingAxiomViolation("additive inverse", (a, None, None))
    for a, b, c in itertools.product(r, r, r):
        if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
            raise RingAxiomViolation("distributivity", (a, b, c))


def read_table_file(path):
    """Carrier size ``k`` then the k*k addition and k*k multiplication tables."""
    try:
        tokens = Path(path).read_text().split()
    except OSError as exc:
        raise InvalidSpec(f"cannot read table file {path}: {exc}") from None
    try:
        nums = [int(t) for t in tokens]
    except ValueError:
        raise InvalidSpec(f"non-integer token in table file {path}") from None
    if not nums:
        raise InvalidSpec(f"empty table file {path}")
    k = nums[0]
    if len(nums) != 1 + 2 * k * k:
        raise InvalidSpec(f"table file {path}: expected {2 * k * k} entries after k={k}")
    add = [nums[1 + i * k: 1 + (i + 1) * k] for i in range(k)]
    off = 1 + k * k
    mul = [nums[off + i * k: off + (i + 1) * k] for i in range(k)]
    return table_ring(add, mul, name=f"table:{path}")


_FACTOR_SPLIT = re.compile(r"\s*x\s*(?=Z\d|table:)")


def make_ring(spec):
    """Parse the ring mini-language: ``Z<n>``, ``A x B x ...`` or ``table:<path>``."""
    if isinstance(spec, Ring):
        return spec
    if not isinstance(spec, str) or not spec.strip():
        raise InvalidSpec(f"bad ring spec {spec!r}")
    parts = _FACTOR_SPLIT.split(spec.strip())
    rings = []
    pos = 0
    for part in parts:
        m = re.fullmatch(r"Z(\d+)", part)
        if m:
            rings.append(modular(int(m.group(1))))
        elif part.startswith("table:"):
            rings.append(read_table_file(part[len("table:"):]))
        else:
            raise InvalidSpec(f"bad ring factor {part!r} at position {pos} in {spec!r}")
        pos += len(part) + 1
    return rings[0] if len(rings) == 1 else product(rings)


# -- element level queries --------------------------------------------------------

def carrier_partition(R):
    return Partition(
        units=frozenset(R.val(i) for i in R.unit_idx),
        r_sharp=frozenset(R.val(i) for i in R.sharp_idx),
    )


def principal_ideal(R, a):
    return Ideal(a, frozenset(R.val(j) for j in bits(R.ideal_mask[R.idx(a)])))


def assoc_idx(R, i, j, mode):
    if mode == ASSOC:
        return R.ideal_mask[i] == R.ideal_mask[j]
    if mode == STRONG:
        return (R.orbit_mask[j] >> i) & 1 == 1
    if R.ideal_mask[i] != R.ideal_mask[j]:
        return False
    if i == j == R.zero_i:
        return True
    mul = R.mul_table
    return all(r in R.inverse for r in range(len(R)) if mul[r][j] == i)


def associated(R, a, b, mode=ASSOC):
    check_mode(mode)
    return assoc_idx(R, R.idx(a), R.idx(b), mode)



@functools.lru_cache(maxsize=256)
def class_reps(R, mode):
    """Representative index of each element's class under the given associate mode.

    Very strong association is not reflexive everywhere, so its classes are
    those of the closure of (cong or equal).
    """
    n = len(R)
    if mode == ASSOC:
        first = {}
        return tuple(first.setdefault(R.ideal_mask[i], i) for i in range(n))
    if mode == STRONG:
        return tuple(bits(R.orbit_mask[i])[0] for i in range(n))
    check_mode(mode)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if assoc_idx(R, i, j, VERY_STRONG) or assoc_idx(R, j, i, VERY_STRONG):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    return tuple(find(i) for i in range(n))

@dataclass(frozen=True)
class RingFlags:
    strongly_associate: bool
    presimplifiable: bool
    strongly_associate_witness: tuple | None = None
    presimplifiable_witness: tuple | None = None


def ring_flags(R):
    n = len(R)
    sa_wit = None
    for i, j in itertools.combinations(range(n), 2):
        if R.ideal_mask[i] == R.ideal_mask[j] and not assoc_idx(R, i, j, STRONG):
            sa_wit = (R.val(i), R.val(j))
            break
    pre_wit = presimplifiable_witness_idx(R)
    return RingFlags(
        strongly_associate=sa_wit is None,
        presimplifiable=pre_wit is None,
        strongly_associate_witness=sa_wit,
        presimplifiable_witness=None if pre_wit is None else tuple(R.val(i) for i in pre_wit),
    )


def presimplifiable_witness_idx(R):
    mul = R.mul_table
    for x in range(len(R)):
        if x == R.zero_i:
            continue
        for y in range(len(R)):
            if mul[x][y] == x and y not in R.inverse:
                return (x, y)
    return None


def ideal_chain_height(R):
    """Longest strictly ascending chain of principal ideals generated by non-units."""
    ideals = sorted({R.ideal_mask[i] for i in R.nonunit_idx}, key=lambda m: bin(m).count("1"))
    best = {}
    for m in ideals:
        best[m] = 1 + max((best[s] for s in best if s != m and (s & m) == s), default=0)
    return max(best.values())


def embed(Rprod, i, x):
    """``x`` placed at coordinate ``i`` (1-based), identity elsewhere."""
    if Rprod.kind != "product":
        raise InvalidCoordinate(f"{Rprod.name} is not a product ring")
    if not 1 <= i <= len(Rprod.factors):
        raise InvalidCoordinate(f"coordinate {i} out of range 1..{len(Rprod.factors)}")
    comp = Rprod.factors[i - 1]
    if x not in comp:
        raise ElementError(f"{x!r} is not an element of {comp.name}")
    return tuple(x if k == i - 1 else f.one for k, f in enumerate(Rprod.factors))

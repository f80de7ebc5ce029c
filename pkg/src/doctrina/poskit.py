"""Finite posets, monotone maps, pointwise 2-cells, and monoidal posets.

The two concrete predicate algebras live here as well: powerset lattices
(bitmask indexing, tensor = intersection) and the truncated min-plus
quantale (value chain 0..cap plus infinity, ordered by >=, tensor =
saturating addition).  Because the carriers are posets, every coherence
2-cell of the theory degenerates to a boolean: ``Cell2`` records exactly
that boolean, and an invertible cell is one that holds both ways.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import ShapeMismatch
from .finset import FinFn
from .report import Report


@dataclass(frozen=True)
class Poset:
    """A finite poset; ``leq[i]`` is the bitmask of elements above i."""

    size: int
    leq: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.leq) != self.size:
            raise ValueError("leq row count does not match size")
        full = (1 << self.size) - 1
        for i, row in enumerate(self.leq):
            if row & ~full:
                raise ValueError("leq row mentions nonexistent elements")
            if not (row >> i) & 1:
                raise ValueError(f"not reflexive at {i}")
        for i in range(self.size):
            m = self.leq[i]
            while m:
                low = m & -m
                j = low.bit_length() - 1
                m ^= low
                if self.leq[j] & ~self.leq[i]:
                    raise ValueError(f"not transitive through {i} <= {j}")
                if i != j and (self.leq[j] >> i) & 1:
                    raise ValueError(f"not antisymmetric at {i}, {j}")

    def le(self, i: int, j: int) -> bool:
        return bool((self.leq[i] >> j) & 1)

    def pairs(self):
        """All (i, j) with i <= j, ascending in i."""
        for i in range(self.size):
            m = self.leq[i]
            while m:
                low = m & -m
                yield i, low.bit_length() - 1
                m ^= low


@lru_cache(maxsize=None)
def cover_pairs(p: Poset) -> tuple[tuple[int, int], ...]:
    """The covering relation of a poset; order preservation on covers
    implies order preservation everywhere, by transitivity."""
    ups = [p.leq[i] & ~(1 << i) for i in range(p.size)]
    downs = [0] * p.size
    for i in range(p.size):
        m = ups[i]
        while m:
            low = m & -m
            downs[low.bit_length() - 1] |= 1 << i
            m ^= low
    out = []
    for i in range(p.size):
        m = ups[i]
        while m:
            low = m & -m
            j = low.bit_length() - 1
            m ^= low
            if not (ups[i] & downs[j]):
                out.append((i, j))
    return tuple(out)


@lru_cache(maxsize=None)
def chain(n: int) -> Poset:
    """The n-element chain 0 < 1 < ... < n-1."""
    full = (1 << n) - 1
    return Poset(n, tuple((full >> i) << i for i in range(n)))


@lru_cache(maxsize=None)
def singleton_poset() -> Poset:
    return chain(1)


@lru_cache(maxsize=None)
def subset_lattice(n: int) -> Poset:
    """Subsets of an n-set as bitmasks, ordered by inclusion."""
    size = 1 << n
    rows = []
    for s in range(size):
        row = 0
        for t in range(size):
            if s & ~t == 0:
                row |= 1 << t
        rows.append(row)
    return Poset(size, tuple(rows))


@lru_cache(maxsize=None)
def product_poset(a: Poset, b: Poset) -> Poset:
    """Row-major product order, consistent with finset.product."""
    size = a.size * b.size
    rows = []
    for i in range(a.size):
        for j in range(b.size):
            row = 0
            ma = a.leq[i]
            while ma:
                la = ma & -ma
                i2 = la.bit_length() - 1
                ma ^= la
                mb = b.leq[j]
                base = i2 * b.size
                while mb:
                    lb = mb & -mb
                    row |= 1 << (base + lb.bit_length() - 1)
                    mb ^= lb
            rows.append(row)
    return Poset(size, tuple(rows))


@dataclass(frozen=True)
class MonotoneMap:
    """An order-preserving map, tabulated on indices.

    Shape is always validated; order preservation is checked by the
    factories that build primitive maps (see ``monotone_map``) and by the
    law suites, not on every composite.
    """

    dom: Poset
    cod: Poset
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.dom.size:
            raise ValueError("table length does not match domain size")
        if any(not 0 <= v < self.cod.size for v in self.table):
            raise ValueError("table entry outside codomain")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def is_monotone(self) -> bool:
        return all(
            self.cod.le(self.table[i], self.table[j])
            for i, j in cover_pairs(self.dom)
        )

    @staticmethod
    def identity(p: Poset) -> "MonotoneMap":
        return MonotoneMap(p, p, tuple(range(p.size)))

    def then(self, g: "MonotoneMap") -> "MonotoneMap":
        if self.cod != g.dom:
            raise ShapeMismatch("composition across different posets")
        return MonotoneMap(self.dom, g.cod, tuple(g.table[v] for v in self.table))


def monotone_map(dom: Poset, cod: Poset, table) -> MonotoneMap:
    """Checked constructor for primitive maps."""
    m = MonotoneMap(dom, cod, tuple(table))
    if not m.is_monotone():
        raise ValueError("map is not order-preserving")
    return m


def map_product(f: MonotoneMap, g: MonotoneMap) -> MonotoneMap:
    dom = product_poset(f.dom, g.dom)
    cod = product_poset(f.cod, g.cod)
    gn = g.dom.size
    table = tuple(
        f.table[k // gn] * g.cod.size + g.table[k % gn] for k in range(dom.size)
    )
    return MonotoneMap(dom, cod, table)


def swap_map(a: Poset, b: Poset) -> MonotoneMap:
    dom = product_poset(a, b)
    cod = product_poset(b, a)
    table = tuple((k % b.size) * a.size + k // b.size for k in range(dom.size))
    return MonotoneMap(dom, cod, table)


@dataclass(frozen=True)
class Cell2:
    """A 2-cell of Pos: the pointwise inequality between two parallel maps."""

    lower: MonotoneMap
    upper: MonotoneMap
    holds: bool


def leq_maps(f: MonotoneMap, g: MonotoneMap) -> Cell2:
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeMismatch("2-cells need parallel maps")
    holds = all(f.cod.le(f.table[i], g.table[i]) for i in range(f.dom.size))
    return Cell2(f, g, holds)


def iso_maps(f: MonotoneMap, g: MonotoneMap) -> bool:
    """Both inequality directions; by antisymmetry this is table equality."""
    return leq_maps(f, g).holds and leq_maps(g, f).holds


# ---------------------------------------------------------------------------
# monoidal posets


@dataclass(frozen=True)
class MonoPoset:
    """A symmetric monoidal poset; coherence is property, not data.

    The tensor is tabulated row-major over carrier pairs;
    ``tensor_map()`` wraps it as a monotone map on demand (sensible only
    for carriers small enough to materialise the product order).
    """

    carrier: Poset
    tensor_table: tuple[int, ...]
    unit: int

    def __post_init__(self) -> None:
        n = self.carrier.size
        if len(self.tensor_table) != n * n:
            raise ShapeMismatch("tensor table is not carrier x carrier")
        if any(not 0 <= v < n for v in self.tensor_table):
            raise ValueError("tensor entry outside carrier")
        if not 0 <= self.unit < n:
            raise ValueError("unit outside carrier")

    def mul(self, i: int, j: int) -> int:
        return self.tensor_table[i * self.carrier.size + j]

    def tensor_map(self) -> MonotoneMap:
        return MonotoneMap(
            product_poset(self.carrier, self.carrier), self.carrier, self.tensor_table
        )


def check_mono_poset(m: MonoPoset) -> Report:
    """Exhaustive pseudo-monoid laws: associativity, unit, symmetry,
    monotonicity of the tensor in each argument."""
    rep = Report()
    n = m.carrier.size
    assoc = rep.clause("monoposet.assoc", "tensor is associative")
    for a, b, c in itertools.product(range(n), repeat=3):
        assoc.check(
            m.mul(m.mul(a, b), c) == m.mul(a, m.mul(b, c)),
            f"({a}*{b})*{c} != {a}*({b}*{c})",
        )
    unit = rep.clause("monoposet.unit", "unit is neutral on both sides")
    for a in range(n):
        unit.check(m.mul(m.unit, a) == a, f"unit*{a} != {a}")
        unit.check(m.mul(a, m.unit) == a, f"{a}*unit != {a}")
    sym = rep.clause("monoposet.symmetry", "tensor is commutative")
    for a, b in itertools.product(range(n), repeat=2):
        sym.check(m.mul(a, b) == m.mul(b, a), f"{a}*{b} != {b}*{a}")
    mono = rep.clause("monoposet.monotone", "tensor preserves order in each slot")
    for i, j in m.carrier.pairs():
        for c in range(n):
            mono.check(
                m.carrier.le(m.mul(i, c), m.mul(j, c)),
                f"left slot at {i}<={j} with {c}",
            )
            mono.check(
                m.carrier.le(m.mul(c, i), m.mul(c, j)),
                f"right slot at {i}<={j} with {c}",
            )
    return rep


# ---------------------------------------------------------------------------
# powerset fibers


@lru_cache(maxsize=None)
def powerset_fiber(n: int) -> MonoPoset:
    """Subsets of an n-set under intersection, unit the full set."""
    carrier = subset_lattice(n)
    size = carrier.size
    table = tuple(
        (k // size) & (k % size) for k in range(size * size)
    )
    return MonoPoset(carrier, table, size - 1)


def subset_elements(mask: int, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if (mask >> i) & 1)


def preimage_mask(f: FinFn, mask: int) -> int:
    out = 0
    for a, b in enumerate(f.table):
        if (mask >> b) & 1:
            out |= 1 << a
    return out


def image_mask(f: FinFn, mask: int) -> int:
    out = 0
    m = mask
    while m:
        low = m & -m
        out |= 1 << f.table[low.bit_length() - 1]
        m ^= low
    return out


# ---------------------------------------------------------------------------
# truncated min-plus fibers


def trop_add(x: int, y: int, cap: int) -> int:
    """Saturating addition on the chain 0..cap with cap+1 standing for
    infinity: any sum exceeding cap collapses to infinity."""
    inf = cap + 1
    if x == inf or y == inf or x + y > cap:
        return inf
    return x + y


@lru_cache(maxsize=None)
def trop_value_poset(cap: int) -> Poset:
    """The chain 0..cap plus infinity under >=, so 0 is the top element."""
    n = cap + 2
    return Poset(n, tuple((1 << (i + 1)) - 1 for i in range(n)))


@lru_cache(maxsize=None)
def trop_carrier(n: int, cap: int) -> Poset:
    p = trop_value_poset(cap)
    out = p if n == 1 else None
    if out is None:
        if n == 0:
            out = singleton_poset()
        else:
            out = p
            for _ in range(n - 1):
                out = product_poset(out, p)
    return out


def trop_index(values, cap: int) -> int:
    """Row-major index of a value tuple, first slot most significant."""
    base = cap + 2
    idx = 0
    for v in values:
        idx = idx * base + v
    return idx


def trop_values(idx: int, n: int, cap: int) -> tuple[int, ...]:
    base = cap + 2
    out = []
    for _ in range(n):
        out.append(idx % base)
        idx //= base
    return tuple(reversed(out))


@lru_cache(maxsize=None)
def trop_all_values(n: int, cap: int) -> tuple[tuple[int, ...], ...]:
    """Decoded value tuples for every carrier index, in index order."""
    return tuple(trop_values(i, n, cap) for i in range((cap + 2) ** n))


@lru_cache(maxsize=None)
def tropical_fiber(n: int, cap: int) -> MonoPoset:
    """Predicates valued in the truncated min-plus chain, ordered
    pointwise; tensor is pointwise saturating addition, unit constant 0."""
    carrier = trop_carrier(n, cap)
    size = carrier.size
    decode = trop_all_values(n, cap)
    table = []
    for i in range(size):
        a = decode[i]
        for j in range(size):
            b = decode[j]
            table.append(trop_index((trop_add(x, y, cap) for x, y in zip(a, b)), cap))
    return MonoPoset(carrier, tuple(table), 0)

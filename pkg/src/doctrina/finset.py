"""Finite sets and functions, their limits and colimits, and morphism classes.

Everything downstream is built on these values.  Conventions are chosen so
that constructions are *literally* equal whenever the theory says they are
canonically isomorphic:

* elements of a ``FinSet`` are the dense indices ``0..size-1``;
* product pairs are row-major: ``(i, j) -> i * b.size + j``;
* pullback apices enumerate matching pairs in lexicographic order, except
  that a pullback along an identity is the other map itself (the unitary
  convention), returned verbatim;
* pushout classes are ordered by their least representative in the
  disjoint union (left block first).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional, Sequence

from .errors import CodMismatch, DomMismatch, LabelClash
from .report import Report


@dataclass(frozen=True)
class FinSet:
    """A finite set; its elements are the indices 0..size-1."""

    size: int

    def __post_init__(self) -> None:
        if self.size < 0:
            raise ValueError(f"negative size {self.size}")

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.size))

    def __repr__(self) -> str:
        return f"FinSet({self.size})"


@dataclass(frozen=True)
class FinFn:
    """A function between finite sets, tabulated as a tuple of cod-indices."""

    dom: FinSet
    cod: FinSet
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.dom.size:
            raise ValueError("table length does not match domain size")
        if self.table and (min(self.table) < 0 or max(self.table) >= self.cod.size):
            raise ValueError("table entry outside codomain")

    def __call__(self, i: int) -> int:
        return self.table[i]

    @staticmethod
    def identity(a: FinSet) -> "FinFn":
        return FinFn(a, a, tuple(range(a.size)))

    @staticmethod
    def constant(a: FinSet, b: FinSet, value: int) -> "FinFn":
        return FinFn(a, b, (value,) * a.size)

    @property
    def is_identity(self) -> bool:
        return self.dom == self.cod and self.table == tuple(range(self.dom.size))

    @property
    def is_injective(self) -> bool:
        return len(set(self.table)) == self.dom.size

    @property
    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.cod.size

    def then(self, g: "FinFn") -> "FinFn":
        return compose(self, g)

    def __repr__(self) -> str:
        return f"FinFn({self.dom.size}->{self.cod.size}:{list(self.table)})"


def compose(f: FinFn, g: FinFn) -> FinFn:
    """Diagrammatic composite: apply ``f`` first, then ``g``."""
    if f.cod != g.dom:
        raise CodMismatch(f"cannot compose {f} then {g}")
    return FinFn(f.dom, g.cod, tuple(g.table[v] for v in f.table))


class Pullback(NamedTuple):
    apex: FinSet
    p: FinFn  # apex -> x.dom
    q: FinFn  # apex -> y.dom


def pullback(x: FinFn, y: FinFn) -> Pullback:
    """Pullback of the cospan ``x.dom -> Z <- y.dom``.

    The apex lists the pairs (a, b) with x(a) = y(b) in lexicographic
    order; p and q are the coordinate projections.  A pullback along an
    identity is the other map, verbatim.
    """
    if x.cod != y.cod:
        raise CodMismatch(f"cospan legs disagree: {x} vs {y}")
    if y.is_identity:
        return Pullback(x.dom, FinFn.identity(x.dom), x)
    if x.is_identity:
        return Pullback(y.dom, y, FinFn.identity(y.dom))
    pairs = [
        (a, b) for a in range(x.dom.size) for b in range(y.dom.size)
        if x.table[a] == y.table[b]
    ]
    apex = FinSet(len(pairs))
    p = FinFn(apex, x.dom, tuple(a for a, _ in pairs))
    q = FinFn(apex, y.dom, tuple(b for _, b in pairs))
    return Pullback(apex, p, q)


class Pushout(NamedTuple):
    apex: FinSet
    i1: FinFn  # cod(f) -> apex
    i2: FinFn  # cod(g) -> apex
    labels: Optional[tuple]


def pushout(
    f: FinFn,
    g: FinFn,
    labels: Optional[tuple[Sequence, Sequence]] = None,
) -> Pushout:
    """Pushout of ``cod(f) <- dom -> cod(g)``.

    The apex is the quotient of cod(f) + cod(g) by the smallest
    equivalence with f(x) ~ g(x); classes are numbered by their least
    representative (left block first).  When ``labels`` carries the label
    sequences of the two codomains, the quotient inherits them and a
    clash between identified elements raises ``LabelClash``.
    """
    if f.dom != g.dom:
        raise DomMismatch(f"pushout legs have different domains: {f} vs {g}")
    n1, n2 = f.cod.size, g.cod.size
    parent = list(range(n1 + n2))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            # keep the least representative as root
            if ri > rj:
                ri, rj = rj, ri
            parent[rj] = ri

    for x in range(f.dom.size):
        union(f.table[x], n1 + g.table[x])

    roots = sorted({find(i) for i in range(n1 + n2)})
    index = {r: k for k, r in enumerate(roots)}
    apex = FinSet(len(roots))
    i1 = FinFn(f.cod, apex, tuple(index[find(i)] for i in range(n1)))
    i2 = FinFn(g.cod, apex, tuple(index[find(n1 + j)] for j in range(n2)))

    out_labels = None
    if labels is not None:
        left_labels, right_labels = labels
        merged: list = [None] * apex.size
        for i in range(n1):
            k = i1.table[i]
            if merged[k] is not None and merged[k] != left_labels[i]:
                raise LabelClash(f"class {k}: {merged[k]!r} vs {left_labels[i]!r}")
            merged[k] = left_labels[i]
        for j in range(n2):
            k = i2.table[j]
            if merged[k] is not None and merged[k] != right_labels[j]:
                raise LabelClash(f"class {k}: {merged[k]!r} vs {right_labels[j]!r}")
            merged[k] = right_labels[j]
        out_labels = tuple(merged)
    return Pushout(apex, i1, i2, out_labels)


class Product(NamedTuple):
    prod: FinSet
    pa: FinFn  # projection onto first factor
    pb: FinFn  # projection onto second factor


@lru_cache(maxsize=None)
def product(a: FinSet, b: FinSet) -> Product:
    """Cartesian product with row-major pairing (i, j) -> i * b.size + j."""
    prod = FinSet(a.size * b.size)
    pa = FinFn(prod, a, tuple(k // b.size for k in range(prod.size)))
    pb = FinFn(prod, b, tuple(k % b.size for k in range(prod.size)))
    return Product(prod, pa, pb)


def pair_index(i: int, j: int, b: FinSet) -> int:
    return i * b.size + j


@lru_cache(maxsize=None)
def fn_product(f: FinFn, g: FinFn) -> FinFn:
    """The map f x g between row-major products."""
    dom = product(f.dom, g.dom).prod
    cod = product(f.cod, g.cod).prod
    table = tuple(
        f.table[k // g.dom.size] * g.cod.size + g.table[k % g.dom.size]
        for k in range(dom.size)
    )
    return FinFn(dom, cod, table)


def diagonal(a: FinSet) -> FinFn:
    prod = product(a, a).prod
    return FinFn(a, prod, tuple(i * a.size + i for i in range(a.size)))


def terminal() -> FinSet:
    return FinSet(1)


def bang(a: FinSet) -> FinFn:
    return FinFn(a, terminal(), (0,) * a.size)


def swap_fn(a: FinSet, b: FinSet) -> FinFn:
    """The symmetry a x b -> b x a on row-major products."""
    dom = product(a, b).prod
    cod = product(b, a).prod
    table = tuple((k % b.size) * a.size + k // b.size for k in range(dom.size))
    return FinFn(dom, cod, table)


# ---------------------------------------------------------------------------
# enumeration


def finsets(max_size: int, nonempty: bool = False) -> Iterator[FinSet]:
    return (FinSet(n) for n in range(1 if nonempty else 0, max_size + 1))


def functions(a: FinSet, b: FinSet) -> Iterator[FinFn]:
    """All functions a -> b in lexicographic table order."""
    if a.size == 0:
        yield FinFn(a, b, ())
        return
    if b.size == 0:
        return
    for table in itertools.product(range(b.size), repeat=a.size):
        yield FinFn(a, b, table)


def all_functions(max_size: int, nonempty: bool = False) -> Iterator[FinFn]:
    for a in finsets(max_size, nonempty):
        for b in finsets(max_size, nonempty):
            yield from functions(a, b)


# ---------------------------------------------------------------------------
# labelled finite sets


@dataclass(frozen=True)
class LabelledFinSet:
    """A finite set whose elements carry type tags from a finite alphabet."""

    base: FinSet
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != self.base.size:
            raise ValueError("labels length does not match base size")

    @staticmethod
    def of(*labels: str) -> "LabelledFinSet":
        return LabelledFinSet(FinSet(len(labels)), tuple(labels))

    def __repr__(self) -> str:
        return f"LabelledFinSet({list(self.labels)})"


# ---------------------------------------------------------------------------
# morphism classes and adequate triples


@dataclass(frozen=True)
class MorClass:
    """A decidable class of finite-set functions."""

    kind: str  # "all" | "inj" | "surj" | "explicit"
    members: Optional[frozenset[FinFn]] = None

    ALL_KINDS = ("all", "inj", "surj", "explicit")

    def __post_init__(self) -> None:
        if self.kind not in self.ALL_KINDS:
            raise ValueError(f"unknown class kind {self.kind!r}")
        if (self.kind == "explicit") != (self.members is not None):
            raise ValueError("explicit classes and only they carry members")

    @staticmethod
    def all() -> "MorClass":
        return MorClass("all")

    @staticmethod
    def injections() -> "MorClass":
        return MorClass("inj")

    @staticmethod
    def surjections() -> "MorClass":
        return MorClass("surj")

    @staticmethod
    def explicit(maps) -> "MorClass":
        return MorClass("explicit", frozenset(maps))

    def contains(self, f: FinFn) -> bool:
        if self.kind == "all":
            return True
        if self.kind == "inj":
            return f.is_injective
        if self.kind == "surj":
            return f.is_surjective
        return f in self.members  # type: ignore[operator]


@dataclass(frozen=True)
class AdequateTriple:
    """Generator bound plus the two morphism classes, validation deferred
    to check_adequate_triple."""

    universe: int
    left: MorClass
    right: MorClass
    nonempty_only: bool = False

    def objects(self) -> Iterator[FinSet]:
        return finsets(self.universe, self.nonempty_only)

    def maps(self, a: FinSet, b: FinSet) -> Iterator[FinFn]:
        return functions(a, b)

    def left_maps(self, a: FinSet, b: FinSet) -> Iterator[FinFn]:
        return (f for f in functions(a, b) if self.left.contains(f))

    def right_maps(self, a: FinSet, b: FinSet) -> Iterator[FinFn]:
        return (f for f in functions(a, b) if self.right.contains(f))


def trivial_triple(universe: int = 3) -> AdequateTriple:
    return AdequateTriple(universe, MorClass.all(), MorClass.all())


def surjection_triple(universe: int = 3) -> AdequateTriple:
    """All maps on the left, surjections on the right; restricted to
    nonempty sets so that product projections stay surjective."""
    return AdequateTriple(
        universe, MorClass.all(), MorClass.surjections(), nonempty_only=True
    )


def injection_right_triple(universe: int = 3) -> AdequateTriple:
    """A known-defective configuration: projections are not injective."""
    return AdequateTriple(universe, MorClass.all(), MorClass.injections())


def check_adequate_triple(t: AdequateTriple) -> Report:
    """Exhaustively verify the triple axioms up to the universe bound."""
    if t.universe < 1:
        raise ValueError("universe bound must be at least 1")
    rep = Report()
    objs = list(t.objects())
    fns = [f for a in objs for b in objs for f in functions(a, b)]

    ids = rep.clause("triple.identities", "identities belong to both classes")
    for a in objs:
        ident = FinFn.identity(a)
        ids.check(t.left.contains(ident), f"id_{a.size} not in L")
        ids.check(t.right.contains(ident), f"id_{a.size} not in R")

    comp = rep.clause("triple.composition", "classes are closed under composition")
    for name, cls in (("L", t.left), ("R", t.right)):
        members = [f for f in fns if cls.contains(f)]
        by_dom: dict[FinSet, list[FinFn]] = {}
        for g in members:
            by_dom.setdefault(g.dom, []).append(g)
        for f in members:
            for g in by_dom.get(f.cod, ()):
                comp.check(
                    cls.contains(compose(f, g)),
                    f"{name}: {f};{g} escapes the class",
                )

    pb = rep.clause(
        "triple.pullbacks",
        "every L against R cospan has a pullback with stable classes",
    )
    for z in objs:
        for a in objs:
            for x in functions(a, z):
                if not t.left.contains(x):
                    continue
                for b in objs:
                    for y in functions(b, z):
                        if not t.right.contains(y):
                            continue
                        apex, p, q = pullback(x, y)
                        ok_shape = (
                            compose(p, x).table == compose(q, y).table
                        )
                        # base change of x (in L) along y lands over b;
                        # base change of y (in R) along x lands over a
                        pb.check(
                            ok_shape
                            and t.left.contains(q)
                            and t.right.contains(p),
                            f"cospan {x} / {y}: unstable pullback legs",
                        )

    prods = rep.clause("triple.products", "classes are closed under finite products")
    for name, cls in (("L", t.left), ("R", t.right)):
        members = [f for f in fns if cls.contains(f)]
        for f in members:
            for g in members:
                prods.check(
                    cls.contains(fn_product(f, g)),
                    f"{name}: {f} x {g} escapes the class",
                )

    projs = rep.clause("triple.projections", "product projections lie in both classes")
    for a in objs:
        for b in objs:
            _, pa, p_b = product(a, b)
            projs.check(
                t.left.contains(pa),
                f"projection {a.size}x{b.size}->{a.size} not in L",
            )
            projs.check(
                t.right.contains(pa),
                f"projection {a.size}x{b.size}->{a.size} not in R",
            )
            projs.check(
                t.left.contains(p_b),
                f"projection {a.size}x{b.size}->{b.size} not in L",
            )
            projs.check(
                t.right.contains(p_b),
                f"projection {a.size}x{b.size}->{b.size} not in R",
            )
    if t.nonempty_only:
        projs.note(
            "universe restricted to nonempty sets: projections out of a "
            "product with an empty factor would not be surjective"
        )

    if t.left.kind == "explicit" or t.right.kind == "explicit":
        rep.find("triple.composition").note(
            "explicit class lists are closed-by-assertion; closure verified above"
        )
    return rep

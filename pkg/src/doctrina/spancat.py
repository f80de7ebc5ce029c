"""The double category of spans over an adequate triple, taken with tight
arrows reversed.

A ``Span`` is a loose arrow: two legs out of a shared apex, left leg in
the L class, right leg in R.  A ``SpanCell`` is stored as a morphism of
spans in the base category (apex map plus two foot maps, both squares
commuting); under the reversed-tight-arrow reading its boundary tights
point the other way, which is what makes the quantifier cells below come
out as adjunction units and counits.

Loose composition is by pullback and is strictly unital thanks to the
identity convention in :mod:`doctrina.finset`; associativity holds only
up to the canonical mediating bijection, which the property suite checks
but composites never carry.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .errors import BoundaryMismatch, ClassViolation, ObjMismatch
from .finset import (
    AdequateTriple,
    FinFn,
    FinSet,
    compose,
    finsets,
    functions,
    pullback,
)
from .report import Report


@dataclass(frozen=True)
class Span:
    """A loose arrow source <- apex -> target."""

    left: FinFn
    right: FinFn

    def __post_init__(self) -> None:
        if self.left.dom != self.right.dom:
            raise ValueError("span legs must share an apex")

    @property
    def apex(self) -> FinSet:
        return self.left.dom

    @property
    def source(self) -> FinSet:
        return self.left.cod

    @property
    def target(self) -> FinSet:
        return self.right.cod

    @staticmethod
    def identity(a: FinSet) -> "Span":
        i = FinFn.identity(a)
        return Span(i, i)

    @property
    def is_identity(self) -> bool:
        return self.left.is_identity and self.right.is_identity

    def __repr__(self) -> str:
        return f"Span({self.left!r}, {self.right!r})"


@dataclass(frozen=True)
class SpanCell:
    """A morphism of spans src -> dst; the double cell it presents has its
    tight boundaries running dst -> src in the reversed orientation."""

    src: Span
    dst: Span
    tight_left: FinFn   # src.source -> dst.source
    tight_right: FinFn  # src.target -> dst.target
    apex_map: FinFn     # src.apex -> dst.apex

    def __post_init__(self) -> None:
        if (
            self.tight_left.dom != self.src.source
            or self.tight_left.cod != self.dst.source
            or self.tight_right.dom != self.src.target
            or self.tight_right.cod != self.dst.target
            or self.apex_map.dom != self.src.apex
            or self.apex_map.cod != self.dst.apex
        ):
            raise BoundaryMismatch("cell data does not frame src -> dst")
        if compose(self.apex_map, self.dst.left) != compose(self.src.left, self.tight_left):
            raise BoundaryMismatch("left square does not commute")
        if compose(self.apex_map, self.dst.right) != compose(self.src.right, self.tight_right):
            raise BoundaryMismatch("right square does not commute")

    @staticmethod
    def loose_identity(x: Span) -> "SpanCell":
        """The identity cell on a loose arrow."""
        return SpanCell(
            x, x,
            FinFn.identity(x.source), FinFn.identity(x.target),
            FinFn.identity(x.apex),
        )

    @staticmethod
    def tight_identity(f: FinFn) -> "SpanCell":
        """The cell the identity-span functor assigns to a tight arrow."""
        return SpanCell(Span.identity(f.dom), Span.identity(f.cod), f, f, f)


class CompanionData(NamedTuple):
    tight: FinFn
    span: Span
    unit: SpanCell
    counit: SpanCell


class ConjointData(NamedTuple):
    tight: FinFn
    span: Span
    unit: SpanCell
    counit: SpanCell


class SpanCategory:
    """Span(triple) with reversed tight arrows, at finite scale."""

    def __init__(self, triple: AdequateTriple):
        self.triple = triple

    # -- loose arrows -------------------------------------------------

    def span(self, left: FinFn, right: FinFn) -> Span:
        if not self.triple.left.contains(left):
            raise ClassViolation(f"left leg {left} not in L")
        if not self.triple.right.contains(right):
            raise ClassViolation(f"right leg {right} not in R")
        return Span(left, right)

    def loose_compose(self, x: Span, y: Span) -> Span:
        if x.target != y.source:
            raise ObjMismatch(f"{x} then {y}: middle objects differ")
        _, p, q = pullback(x.right, y.left)
        left = compose(p, x.left)
        right = compose(q, y.right)
        if not self.triple.left.contains(left) or not self.triple.right.contains(right):
            raise ClassViolation("composite legs escaped their classes")
        return Span(left, right)

    # -- cells --------------------------------------------------------

    def cell_vcompose(self, a: SpanCell, b: SpanCell) -> SpanCell:
        if a.dst != b.src:
            raise BoundaryMismatch("vertical pasting needs a.dst == b.src")
        return SpanCell(
            a.src, b.dst,
            compose(a.tight_left, b.tight_left),
            compose(a.tight_right, b.tight_right),
            compose(a.apex_map, b.apex_map),
        )

    def cell_hcompose(self, a: SpanCell, b: SpanCell) -> SpanCell:
        if a.src.target != b.src.source or a.dst.target != b.dst.source:
            raise BoundaryMismatch("horizontal pasting needs matching feet")
        if a.tight_right != b.tight_left:
            raise BoundaryMismatch("horizontal pasting needs equal middle tights")
        src = self.loose_compose(a.src, b.src)
        dst = self.loose_compose(a.dst, b.dst)
        s_apex, sp, sq = pullback(a.src.right, b.src.left)
        d_apex, dp, dq = pullback(a.dst.right, b.dst.left)
        index = {
            (dp.table[m], dq.table[m]): m for m in range(d_apex.size)
        }
        table = tuple(
            index[(a.apex_map.table[sp.table[k]], b.apex_map.table[sq.table[k]])]
            for k in range(s_apex.size)
        )
        return SpanCell(
            src, dst,
            a.tight_left, b.tight_right,
            FinFn(s_apex, d_apex, table),
        )

    # -- companions and conjoints --------------------------------------

    def companion_of(self, f: FinFn) -> CompanionData:
        if not self.triple.left.contains(f):
            raise ClassViolation(f"{f} is not in L, no companion")
        a, b = f.dom, f.cod
        span = Span(f, FinFn.identity(a))
        unit = SpanCell(
            Span.identity(a), span, f, FinFn.identity(a), FinFn.identity(a)
        )
        counit = SpanCell(
            span, Span.identity(b), FinFn.identity(b), f, f
        )
        return CompanionData(f, span, unit, counit)

    def conjoint_of(self, f: FinFn) -> ConjointData:
        if not self.triple.right.contains(f):
            raise ClassViolation(f"{f} is not in R, no conjoint")
        a, b = f.dom, f.cod
        span = Span(FinFn.identity(a), f)
        unit = SpanCell(
            Span.identity(a), span, FinFn.identity(a), f, FinFn.identity(a)
        )
        counit = SpanCell(
            span, Span.identity(b), f, FinFn.identity(b), f
        )
        return ConjointData(f, span, unit, counit)

    def verify_triangles(self, data) -> bool:
        """Both pasting identities, as literal cell equalities."""
        f = data.tight
        snake_v = self.cell_vcompose(data.unit, data.counit)
        if snake_v != SpanCell.tight_identity(f):
            return False
        if isinstance(data, CompanionData):
            snake_h = self.cell_hcompose(data.counit, data.unit)
        else:
            snake_h = self.cell_hcompose(data.unit, data.counit)
        return snake_h == SpanCell.loose_identity(data.span)

    # -- enumeration ----------------------------------------------------

    def objects(self, max_size: int) -> Iterator[FinSet]:
        return finsets(max_size, self.triple.nonempty_only)

    def enumerate_spans(self, max_size: int) -> Iterator[Span]:
        """All spans with every object bounded by max_size, legs in class;
        deterministic: objects by size, legs lexicographic."""
        for apex in self.objects(max_size):
            for s in self.objects(max_size):
                for left in functions(apex, s):
                    if not self.triple.left.contains(left):
                        continue
                    for t in self.objects(max_size):
                        for right in functions(apex, t):
                            if self.triple.right.contains(right):
                                yield Span(left, right)

    def check_triangles(self, max_size: int) -> Report:
        """All four snake identities, for every map in the relevant class,
        as literal cell equalities."""
        rep = Report()
        comp = rep.clause(
            "spancat.companion-triangles",
            "companion snake identities hold on the nose",
        )
        conj = rep.clause(
            "spancat.conjoint-triangles",
            "conjoint snake identities hold on the nose",
        )
        for a in self.objects(max_size):
            for b in self.objects(max_size):
                for f in functions(a, b):
                    if self.triple.left.contains(f):
                        comp.check(
                            self.verify_triangles(self.companion_of(f)), f"f={f}"
                        )
                    if self.triple.right.contains(f):
                        conj.check(
                            self.verify_triangles(self.conjoint_of(f)), f"f={f}"
                        )
        return rep

    def enumerate_cells(self, max_size: int) -> Iterator[SpanCell]:
        spans = list(self.enumerate_spans(max_size))
        for src, dst in itertools.product(spans, repeat=2):
            for tl in functions(src.source, dst.source):
                want_left = compose(src.left, tl)
                for am in functions(src.apex, dst.apex):
                    if compose(am, dst.left) != want_left:
                        continue
                    want_right = compose(am, dst.right)
                    for tr in functions(src.target, dst.target):
                        if compose(src.right, tr) == want_right:
                            yield SpanCell(src, dst, tl, tr, am)

"""Undirected wiring diagrams over typed ports, and their predicate action.

A diagram is a cospan of labelled finite sets: inner ports and outer
ports soldered onto shared junctions.  Evaluating a system means
substituting its predicate along the junction-to-inner reindexing and
then quantifying along the junction-to-outer reindexing; nesting
diagrams composes by pushout, and the whole point of the law suites is
that evaluation does not care whether you nest first or evaluate first.

Value domains for the port types are supplied by a ``TypeAssignment``;
contexts denote as row-major products with port 0 most significant.
Relational predicates travel as subset bitmasks (hex in files), cost
predicates as arrays over the denoted product ("inf" for infinity).
"""

from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import BoundaryMismatch, ContextMismatch, LabelClash
from .finset import FinFn, FinSet, LabelledFinSet, compose, pushout
from .poskit import trop_index, trop_values
from .doctrine import Doctrine
from .report import Report


@dataclass
class TypeAssignment:
    """A finite value domain for each port label."""

    domains: dict[str, int]

    def size(self, label: str) -> int:
        if label not in self.domains:
            raise KeyError(f"no domain for label {label!r}")
        return self.domains[label]

    def values(self, label: str) -> range:
        return range(self.size(label))


def denote(ctx: LabelledFinSet, types: TypeAssignment) -> FinSet:
    """The product of the port value domains, row-major in port order."""
    n = 1
    for lab in ctx.labels:
        n *= types.size(lab)
    return FinSet(n)


def tuple_index(values: Iterable[int], ctx: LabelledFinSet, types: TypeAssignment) -> int:
    idx = 0
    for v, lab in zip(values, ctx.labels):
        idx = idx * types.size(lab) + v
    return idx


def index_tuple(idx: int, ctx: LabelledFinSet, types: TypeAssignment) -> tuple[int, ...]:
    out = []
    for lab in reversed(ctx.labels):
        s = types.size(lab)
        out.append(idx % s)
        idx //= s
    return tuple(reversed(out))


def all_tuples(ctx: LabelledFinSet, types: TypeAssignment):
    return itertools.product(*(types.values(lab) for lab in ctx.labels))


def reindex(
    ports: FinFn,
    src: LabelledFinSet,
    dst: LabelledFinSet,
    types: TypeAssignment,
) -> FinFn:
    """The value-level map induced by a port map src -> dst, running
    contravariantly from assignments on dst to assignments on src."""
    dden, sden = denote(dst, types), denote(src, types)
    table = []
    for j in range(dden.size):
        vals = index_tuple(j, dst, types)
        table.append(tuple_index((vals[ports.table[p]] for p in range(src.base.size)), src, types))
    return FinFn(dden, sden, tuple(table))


@dataclass(frozen=True)
class UwdDiagram:
    """A cospan inner -> junctions <- outer of labelled finite sets."""

    inner: LabelledFinSet
    junctions: LabelledFinSet
    outer: LabelledFinSet
    f: FinFn  # inner ports onto junctions
    g: FinFn  # outer ports onto junctions

    def __post_init__(self) -> None:
        if self.f.dom != self.inner.base or self.f.cod != self.junctions.base:
            raise BoundaryMismatch("inner leg does not match its boundaries")
        if self.g.dom != self.outer.base or self.g.cod != self.junctions.base:
            raise BoundaryMismatch("outer leg does not match its boundaries")
        for p, j in enumerate(self.f.table):
            if self.inner.labels[p] != self.junctions.labels[j]:
                raise LabelClash(
                    f"inner port {p} ({self.inner.labels[p]}) on junction "
                    f"{j} ({self.junctions.labels[j]})"
                )
        for p, j in enumerate(self.g.table):
            if self.outer.labels[p] != self.junctions.labels[j]:
                raise LabelClash(
                    f"outer port {p} ({self.outer.labels[p]}) on junction "
                    f"{j} ({self.junctions.labels[j]})"
                )

    def dangling_junctions(self) -> tuple[int, ...]:
        hit = set(self.f.table) | set(self.g.table)
        return tuple(j for j in range(self.junctions.base.size) if j not in hit)


def identity_diagram(ctx: LabelledFinSet) -> UwdDiagram:
    i = FinFn.identity(ctx.base)
    return UwdDiagram(ctx, ctx, ctx, i, i)


@dataclass
class System:
    """A context plus a predicate index in the fiber over its denotation."""

    context: LabelledFinSet
    predicate: int


def evaluate(w: UwdDiagram, sys: System, d: Doctrine, types: TypeAssignment) -> System:
    """Push a system through a diagram: substitute, then quantify."""
    if sys.context != w.inner:
        raise ContextMismatch(
            f"system context {sys.context} is not the diagram's inner boundary"
        )
    for j in w.dangling_junctions():
        if types.size(w.junctions.labels[j]) == 0:
            warnings.warn(
                f"dangling junction {j} has an empty domain; "
                "the quantified predicate collapses",
                stacklevel=2,
            )
    fhat = reindex(w.f, w.inner, w.junctions, types)
    ghat = reindex(w.g, w.outer, w.junctions, types)
    return System(w.outer, d.act(fhat, ghat, sys.predicate))


def compose_diagrams(outer: UwdDiagram, inner_fill: UwdDiagram) -> UwdDiagram:
    """Nest inner_fill into outer; junctions merge by pushout."""
    if inner_fill.outer != outer.inner:
        raise BoundaryMismatch("filler's outer boundary must be the host's inner")
    po = pushout(
        inner_fill.g,
        outer.f,
        labels=(inner_fill.junctions.labels, outer.junctions.labels),
    )
    junctions = LabelledFinSet(po.apex, po.labels)
    return UwdDiagram(
        inner_fill.inner,
        junctions,
        outer.outer,
        compose(inner_fill.f, po.i1),
        compose(outer.g, po.i2),
    )


def disjoint_union(w1: UwdDiagram, w2: UwdDiagram) -> UwdDiagram:
    """Side-by-side diagrams: contexts concatenate, junctions stack."""

    def cat(a: LabelledFinSet, b: LabelledFinSet) -> LabelledFinSet:
        return LabelledFinSet(FinSet(a.base.size + b.base.size), a.labels + b.labels)

    off = w1.junctions.base.size
    junctions = cat(w1.junctions, w2.junctions)
    inner = cat(w1.inner, w2.inner)
    outer = cat(w1.outer, w2.outer)
    f = FinFn(inner.base, junctions.base, w1.f.table + tuple(j + off for j in w2.f.table))
    g = FinFn(outer.base, junctions.base, w1.g.table + tuple(j + off for j in w2.g.table))
    return UwdDiagram(inner, junctions, outer, f, g)


def tensor_systems(
    s1: System, s2: System, d: Doctrine, types: TypeAssignment
) -> System:
    """Combine independent systems over the concatenated context."""
    ctx = LabelledFinSet(
        FinSet(s1.context.base.size + s2.context.base.size),
        s1.context.labels + s2.context.labels,
    )
    a, b = denote(s1.context, types), denote(s2.context, types)
    return System(ctx, d.pair_predicate(a, b, s1.predicate, s2.predicate))


def functoriality_check(
    outer: UwdDiagram,
    inner_fill: UwdDiagram,
    sys: System,
    d: Doctrine,
    types: TypeAssignment,
) -> Report:
    """Nest-then-evaluate equals evaluate-then-evaluate, literally."""
    rep = Report()
    c = rep.clause(
        "uwd.functorial", "evaluation commutes with nesting of diagrams"
    )
    flat = evaluate(compose_diagrams(outer, inner_fill), sys, d, types)
    nested = evaluate(outer, evaluate(inner_fill, sys, d, types), d, types)
    c.check(
        flat.context == nested.context and flat.predicate == nested.predicate,
        f"flat={flat.predicate} nested={nested.predicate}",
    )
    return rep


# ---------------------------------------------------------------------------
# predicate codecs


def rel_tuples(mask: int, ctx: LabelledFinSet, types: TypeAssignment) -> frozenset:
    n = denote(ctx, types).size
    return frozenset(
        index_tuple(i, ctx, types) for i in range(n) if (mask >> i) & 1
    )


def rel_mask(tuples: Iterable[tuple], ctx: LabelledFinSet, types: TypeAssignment) -> int:
    mask = 0
    for t in tuples:
        mask |= 1 << tuple_index(t, ctx, types)
    return mask


def trop_costs(
    index: int, ctx: LabelledFinSet, types: TypeAssignment, cap: int
) -> dict[tuple, int]:
    n = denote(ctx, types).size
    values = trop_values(index, n, cap)
    return {
        index_tuple(i, ctx, types): values[i] for i in range(n)
    }


def trop_pred(
    costs: Mapping[tuple, int], ctx: LabelledFinSet, types: TypeAssignment, cap: int
) -> int:
    inf = cap + 1
    n = denote(ctx, types).size
    values = [inf] * n
    for t, v in costs.items():
        values[tuple_index(t, ctx, types)] = min(v, inf)
    return trop_index(values, cap)


# ---------------------------------------------------------------------------
# independent oracles


def relational_oracle(
    w: UwdDiagram, members: frozenset, types: TypeAssignment
) -> frozenset:
    """Brute-force conjunctive-query evaluation over raw value tuples."""
    out = set()
    for j in all_tuples(w.junctions, types):
        inner = tuple(j[w.f.table[p]] for p in range(w.inner.base.size))
        if inner in members:
            out.add(tuple(j[w.g.table[p]] for p in range(w.outer.base.size)))
    return frozenset(out)


def tropical_oracle(
    w: UwdDiagram, costs: Mapping[tuple, int], types: TypeAssignment, cap: int
) -> dict[tuple, int]:
    """Brute-force min-over-fibres evaluation over raw value tuples."""
    inf = cap + 1
    out: dict[tuple, int] = {
        t: inf for t in all_tuples(w.outer, types)
    }
    for j in all_tuples(w.junctions, types):
        inner = tuple(j[w.f.table[p]] for p in range(w.inner.base.size))
        cost = costs.get(inner, inf)
        o = tuple(j[w.g.table[p]] for p in range(w.outer.base.size))
        if cost < out[o]:
            out[o] = cost
    return out


# ---------------------------------------------------------------------------
# file format


@dataclass
class Corpus:
    types: TypeAssignment
    diagrams: dict[str, UwdDiagram]
    systems: dict[str, tuple[System, str]]  # name -> (system, semantics)


def _labelled(labels: list, types: TypeAssignment) -> LabelledFinSet:
    for lab in labels:
        types.size(lab)  # raises on unknown labels
    return LabelledFinSet(FinSet(len(labels)), tuple(labels))


def load_corpus(doc: dict, cap: int = 3) -> Corpus:
    """Parse the diagram/system interchange dictionary.

    Top-level keys: labels, domains, diagrams, systems.  Relational data
    is a hex bitmask over the denoted product; cost data is an array with
    "inf" for infinity.  Arrays are 0-indexed, row-major, port 0 most
    significant.
    """
    labels = doc.get("labels", [])
    domains = doc.get("domains", {})
    missing = [t for t in labels if t not in domains]
    if missing:
        raise ValueError(f"labels without domains: {missing}")
    types = TypeAssignment({t: int(domains[t]) for t in labels})

    diagrams: dict[str, UwdDiagram] = {}
    for name, spec in doc.get("diagrams", {}).items():
        inner = _labelled(spec["inner"], types)
        junctions = _labelled(spec["junctions"], types)
        outer = _labelled(spec["outer"], types)
        f = FinFn(inner.base, junctions.base, tuple(spec["f"]))
        g = FinFn(outer.base, junctions.base, tuple(spec["g"]))
        diagrams[name] = UwdDiagram(inner, junctions, outer, f, g)

    systems: dict[str, tuple[System, str]] = {}
    for name, spec in doc.get("systems", {}).items():
        ctx = _labelled(spec["context"], types)
        semantics = spec["semantics"]
        data = spec["data"]
        if semantics == "rel":
            pred = int(data, 16)
        elif semantics == "trop":
            inf = cap + 1
            vals = [inf if v == "inf" else min(int(v), inf) for v in data]
            n = denote(ctx, types).size
            if len(vals) != n:
                raise ValueError(f"system {name}: expected {n} costs, got {len(vals)}")
            pred = trop_index(vals, cap)
        else:
            raise ValueError(f"system {name}: unknown semantics {semantics!r}")
        systems[name] = (System(ctx, pred), semantics)
    return Corpus(types, diagrams, systems)


def load_corpus_file(path: str, cap: int = 3) -> Corpus:
    with open(path, "r", encoding="utf-8") as fh:
        return load_corpus(json.load(fh), cap=cap)


def format_predicate(sys: System, semantics: str, types: TypeAssignment, cap: int) -> str:
    """Render a result the way files carry it: hex mask or cost array."""
    if semantics == "rel":
        return format(sys.predicate, "x")
    n = denote(sys.context, types).size
    vals = trop_values(sys.predicate, n, cap)
    return json.dumps(["inf" if v > cap else v for v in vals])

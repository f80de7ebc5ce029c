"""Indexed monoidal structures over an adequate triple, with quantifiers.

A doctrine assigns a monoidal poset of predicates to every finite set,
a substitution map to every function, and a left-adjoint quantifier to
every function in the right class.  Two concrete instances are provided:

* ``PowersetDoctrine``: predicates are subsets, substitution is
  preimage, quantification is image;
* ``TropicalDoctrine``: predicates are cost vectors in the truncated
  min-plus chain, substitution is precomposition, quantification takes
  the minimum over each fibre (infinity over an empty fibre).

The checkers at the bottom verify, exhaustively over a finite universe,
every law the theory demands: functoriality, strong monoidality of
substitution, the Galois biconditional, comonoidality of the quantifier,
Beck-Chevalley over designated pullback squares, and both Frobenius
equalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import ClassViolation, NotAPullback
from .finset import (
    AdequateTriple,
    FinFn,
    FinSet,
    compose,
    fn_product,
    functions,
    product,
    pullback,
    swap_fn,
    terminal,
)
from .poskit import (
    MonoPoset,
    MonotoneMap,
    image_mask,
    iso_maps,
    map_product,
    monotone_map,
    powerset_fiber,
    preimage_mask,
    product_poset,
    singleton_poset,
    swap_map,
    trop_add,
    trop_all_values,
    trop_index,
    trop_values,
    tropical_fiber,
)
from .report import Report


class Doctrine:
    """Base class: fibers, substitution, quantification, all cached."""

    def __init__(self, triple: AdequateTriple):
        self.triple = triple
        self._fibers: dict[FinSet, MonoPoset] = {}
        self._subst: dict[FinFn, MonotoneMap] = {}
        self._exists: dict[FinFn, MonotoneMap] = {}
        self._lax: dict[tuple[FinSet, FinSet], MonotoneMap] = {}

    def fiber(self, a: FinSet) -> MonoPoset:
        if a not in self._fibers:
            self._fibers[a] = self._make_fiber(a)
        return self._fibers[a]

    def subst(self, f: FinFn) -> MonotoneMap:
        if f not in self._subst:
            self._subst[f] = self._make_subst(f)
        return self._subst[f]

    def exists(self, f: FinFn) -> MonotoneMap:
        if not self.triple.right.contains(f):
            raise ClassViolation(f"no quantifier along {f}: not in R")
        if f not in self._exists:
            self._exists[f] = self._make_exists(f)
        return self._exists[f]

    def span_action(self, left: FinFn, right: FinFn) -> MonotoneMap:
        """Substitute along ``left`` then quantify along ``right``, as one
        map between the foot fibers.  Computed directly so that a large
        apex never forces materialising an intermediate fiber."""
        if left.dom != right.dom:
            raise ValueError("span legs must share an apex")
        if not self.triple.right.contains(right):
            raise ClassViolation(f"no quantifier along {right}: not in R")
        return self._make_span_action(left, right)

    def act(self, left: FinFn, right: FinFn, pred: int) -> int:
        """Span action on a single predicate; never materialises a fiber,
        so the feet may be denoted products of arbitrary size."""
        if left.dom != right.dom:
            raise ValueError("span legs must share an apex")
        if not self.triple.right.contains(right):
            raise ClassViolation(f"no quantifier along {right}: not in R")
        return self._act(left, right, pred)

    def pair_predicate(self, a: FinSet, b: FinSet, p: int, q: int) -> int:
        """The external tensor of two predicates, pointwise."""
        return self._pair(a, b, p, q)

    def _make_fiber(self, a: FinSet) -> MonoPoset:
        raise NotImplementedError

    def _make_subst(self, f: FinFn) -> MonotoneMap:
        raise NotImplementedError

    def _make_exists(self, f: FinFn) -> MonotoneMap:
        raise NotImplementedError

    def _make_span_action(self, left: FinFn, right: FinFn) -> MonotoneMap:
        return self.subst(left).then(self.exists(right))

    def _act(self, left: FinFn, right: FinFn, pred: int) -> int:
        return self.span_action(left, right).table[pred]

    def _pair(self, a: FinSet, b: FinSet, p: int, q: int) -> int:
        fib = self.fiber(product(a, b).prod)
        return fib.mul(
            self.subst(product(a, b).pa).table[p],
            self.subst(product(a, b).pb).table[q],
        )


class PowersetDoctrine(Doctrine):
    name = "powerset"

    def _make_fiber(self, a: FinSet) -> MonoPoset:
        return powerset_fiber(a.size)

    def _make_subst(self, f: FinFn) -> MonotoneMap:
        pb, pa = self.fiber(f.cod).carrier, self.fiber(f.dom).carrier
        return monotone_map(pb, pa, (preimage_mask(f, s) for s in range(pb.size)))

    def _make_exists(self, f: FinFn) -> MonotoneMap:
        pa, pb = self.fiber(f.dom).carrier, self.fiber(f.cod).carrier
        return monotone_map(pa, pb, (image_mask(f, s) for s in range(pa.size)))

    def _make_span_action(self, left: FinFn, right: FinFn) -> MonotoneMap:
        p1 = self.fiber(left.cod).carrier
        p2 = self.fiber(right.cod).carrier
        table = [self._act(left, right, s) for s in range(p1.size)]
        return monotone_map(p1, p2, table)

    def _act(self, left: FinFn, right: FinFn, pred: int) -> int:
        out = 0
        lt, rt = left.table, right.table
        for a in range(left.dom.size):
            if (pred >> lt[a]) & 1:
                out |= 1 << rt[a]
        return out

    def _pair(self, a: FinSet, b: FinSet, p: int, q: int) -> int:
        # cylinder intersection: the product of the two subsets
        out = 0
        n = b.size
        mp = p
        while mp:
            low = mp & -mp
            i = low.bit_length() - 1
            mp ^= low
            out |= q << (i * n)
        return out


class TropicalDoctrine(Doctrine):
    name = "tropical"

    def __init__(self, triple: AdequateTriple, cap: int = 3):
        if cap < 1:
            raise ValueError("cap must be at least 1")
        super().__init__(triple)
        self.cap = cap

    def _make_fiber(self, a: FinSet) -> MonoPoset:
        return tropical_fiber(a.size, self.cap)

    def _make_subst(self, f: FinFn) -> MonotoneMap:
        cap = self.cap
        pb, pa = self.fiber(f.cod).carrier, self.fiber(f.dom).carrier
        decode = trop_all_values(f.cod.size, cap)
        table = (
            trop_index((decode[psi][b] for b in f.table), cap)
            for psi in range(pb.size)
        )
        return monotone_map(pb, pa, table)

    def _make_exists(self, f: FinFn) -> MonotoneMap:
        cap = self.cap
        inf = cap + 1
        pa, pb = self.fiber(f.dom).carrier, self.fiber(f.cod).carrier
        n, m = f.dom.size, f.cod.size
        decode = trop_all_values(n, cap)
        fibres = [[a for a in range(n) if f.table[a] == b] for b in range(m)]
        table = (
            trop_index(
                (
                    min((decode[phi][a] for a in fib), default=inf)
                    for fib in fibres
                ),
                cap,
            )
            for phi in range(pa.size)
        )
        return monotone_map(pa, pb, table)

    def _make_span_action(self, left: FinFn, right: FinFn) -> MonotoneMap:
        p1 = self.fiber(left.cod).carrier
        p2 = self.fiber(right.cod).carrier
        table = [self._act(left, right, phi) for phi in range(p1.size)]
        return monotone_map(p1, p2, table)

    def _act(self, left: FinFn, right: FinFn, pred: int) -> int:
        cap = self.cap
        inf = cap + 1
        src = trop_values(pred, left.cod.size, cap)
        vals = [inf] * right.cod.size
        lt, rt = left.table, right.table
        for a in range(left.dom.size):
            v = src[lt[a]]
            if v < vals[rt[a]]:
                vals[rt[a]] = v
        return trop_index(vals, cap)

    def _pair(self, a: FinSet, b: FinSet, p: int, q: int) -> int:
        cap = self.cap
        pv = trop_values(p, a.size, cap)
        qv = trop_values(q, b.size, cap)
        vals = [trop_add(x, y, cap) for x in pv for y in qv]
        return trop_index(vals, cap)


def powerset_doctrine(triple: AdequateTriple) -> PowersetDoctrine:
    return PowersetDoctrine(triple)


def tropical_doctrine(triple: AdequateTriple, cap: int = 3) -> TropicalDoctrine:
    return TropicalDoctrine(triple, cap)


# ---------------------------------------------------------------------------
# external monoidal structure


def external_laxator(d: Doctrine, a: FinSet, b: FinSet) -> MonotoneMap:
    """P(a) x P(b) -> P(a x b): substitute along both projections, tensor."""
    if (a, b) in d._lax:
        return d._lax[(a, b)]
    ab, pa, pb = product(a, b)
    fib = d.fiber(ab)
    sa, sb = d.subst(pa), d.subst(pb)
    ca, cb = d.fiber(a).carrier, d.fiber(b).carrier
    dom = product_poset(ca, cb)
    table = tuple(
        fib.mul(sa.table[k // cb.size], sb.table[k % cb.size])
        for k in range(dom.size)
    )
    out = MonotoneMap(dom, fib.carrier, table)
    d._lax[(a, b)] = out
    return out


def external_unit(d: Doctrine) -> int:
    """The element of P(1) the monoidal unit picks out."""
    return d.fiber(terminal()).unit


def external_unit_map(d: Doctrine) -> MonotoneMap:
    return monotone_map(
        singleton_poset(), d.fiber(terminal()).carrier, (external_unit(d),)
    )


@dataclass(frozen=True)
class ExternalMonoidal:
    """The derived external structure of a doctrine, bundled for callers
    that only need the lax monoidal view."""

    doctrine: Doctrine

    def laxator(self, a: FinSet, b: FinSet) -> MonotoneMap:
        return external_laxator(self.doctrine, a, b)

    @property
    def unit(self) -> int:
        return external_unit(self.doctrine)


# ---------------------------------------------------------------------------
# designated pullback squares


@dataclass(frozen=True)
class PullbackSquare:
    """A commuting square: top: A -> I, left: A -> B, right: I -> J,
    bottom: B -> J, with right(top(.)) = bottom(left(.))."""

    top: FinFn
    left: FinFn
    right: FinFn
    bottom: FinFn

    def __post_init__(self) -> None:
        if (
            self.top.dom != self.left.dom
            or self.top.cod != self.right.dom
            or self.left.cod != self.bottom.dom
            or self.right.cod != self.bottom.cod
        ):
            raise ValueError("square corners do not match")
        if compose(self.top, self.right) != compose(self.left, self.bottom):
            raise ValueError("square does not commute")


def is_pullback(sq: PullbackSquare) -> bool:
    """The apex corner is a genuine limit of the cospan (bottom, right)."""
    apex, p, q = pullback(sq.bottom, sq.right)
    if apex.size != sq.top.dom.size:
        return False
    pairs = sorted(zip(p.table, q.table))
    mine = sorted(zip(sq.left.table, sq.top.table))
    return pairs == mine and len(set(zip(sq.left.table, sq.top.table))) == apex.size


def is_clr_pullback(sq: PullbackSquare, triple: AdequateTriple) -> bool:
    """A designated square: a pullback whose cospan has one leg per class."""
    if not is_pullback(sq):
        return False
    lb, rb = triple.left.contains(sq.bottom), triple.right.contains(sq.bottom)
    lr, rr = triple.left.contains(sq.right), triple.right.contains(sq.right)
    return (lb and rr) or (rb and lr)


def square_from_cospan(f: FinFn, g: FinFn) -> PullbackSquare:
    """The chosen pullback square over the cospan f: B -> J <- I : g."""
    apex, p, q = pullback(f, g)
    return PullbackSquare(top=q, left=p, right=g, bottom=f)


def generated_pullbacks(
    triple: AdequateTriple, max_size: int
) -> Iterator[PullbackSquare]:
    """All designated squares arising from cospans within the bound."""
    objs = [
        FinSet(n)
        for n in range(1 if triple.nonempty_only else 0, max_size + 1)
    ]
    for j in objs:
        for b in objs:
            for f in functions(b, j):
                for i in objs:
                    for g in functions(i, j):
                        sq = square_from_cospan(f, g)
                        if is_clr_pullback(sq, triple):
                            yield sq


# ---------------------------------------------------------------------------
# law checkers


def check_adjunction(d: Doctrine, f: FinFn) -> Report:
    """Unit, counit, and the Galois biconditional for the quantifier
    along f, exhaustively over both fibers."""
    rep = Report()
    ex, sb = d.exists(f), d.subst(f)
    pa, pb = ex.dom, ex.cod
    unit = rep.clause("adjunction.unit", "predicate implies substituted image")
    for a in range(pa.size):
        unit.check(pa.le(a, sb.table[ex.table[a]]), f"a={a}")
    counit = rep.clause("adjunction.counit", "image of substitution implies predicate")
    for b in range(pb.size):
        counit.check(pb.le(ex.table[sb.table[b]], b), f"b={b}")
    galois = rep.clause(
        "adjunction.galois", "image below iff predicate below substitution"
    )
    for a in range(pa.size):
        for b in range(pb.size):
            galois.check(
                pb.le(ex.table[a], b) == pa.le(a, sb.table[b]),
                f"a={a} b={b}",
            )
    return rep


def check_beck_chevalley(d: Doctrine, sq: PullbackSquare) -> Report:
    """Quantification commutes with substitution around the square.

    For each parallel pair of the square that lies in the right class
    (bottom with top, right with left), the two composite maps are
    compared and must be equal outright.
    """
    if not is_clr_pullback(sq, d.triple):
        raise NotAPullback(f"{sq} is not a designated pullback")
    rep = Report()
    checked = False
    if d.triple.right.contains(sq.bottom):
        # quantify bottom: B -> J and its base change top's partner A -> I
        lhs = d.exists(sq.bottom).then(d.subst(sq.right))
        rhs = d.subst(sq.left).then(d.exists(sq.top))
        c = rep.clause("beck-chevalley.bottom", "substitution after quantifying the base map")
        c.check(iso_maps(lhs, rhs), f"square {sq}")
        checked = True
    if d.triple.right.contains(sq.right):
        lhs = d.exists(sq.right).then(d.subst(sq.bottom))
        rhs = d.subst(sq.top).then(d.exists(sq.left))
        c = rep.clause("beck-chevalley.right", "substitution after quantifying the fibre map")
        c.check(iso_maps(lhs, rhs), f"square {sq}")
        checked = True
    if not checked:
        raise NotAPullback("no quantifiable leg in the square")
    return rep


def check_frobenius(d: Doctrine, f: FinFn) -> Report:
    """Both projection-formula equalities for the quantifier along f."""
    rep = Report()
    ex, sb = d.exists(f), d.subst(f)
    fa, fb = d.fiber(f.dom), d.fiber(f.cod)
    right = rep.clause("frobenius.right", "quantifier absorbs substituted factors on the left")
    left = rep.clause("frobenius.left", "quantifier absorbs substituted factors on the right")
    for b in range(fb.carrier.size):
        sbb = sb.table[b]
        for a in range(fa.carrier.size):
            right.check(
                ex.table[fa.mul(sbb, a)] == fb.mul(b, ex.table[a]),
                f"b={b} a={a}",
            )
            left.check(
                ex.table[fa.mul(a, sbb)] == fb.mul(ex.table[a], b),
                f"a={a} b={b}",
            )
    return rep


def _universe_maps(triple: AdequateTriple, max_size: int) -> list[FinFn]:
    objs = [
        FinSet(n)
        for n in range(1 if triple.nonempty_only else 0, max_size + 1)
    ]
    return [f for a in objs for b in objs for f in functions(a, b)]


def check_doctrine(d: Doctrine, max_size: int | None = None, bc_size: int = 2) -> Report:
    """The whole doctrine law suite over the enumerated universe."""
    t = d.triple
    bound = t.universe if max_size is None else max_size
    rep = Report()
    fns = _universe_maps(t, bound)
    r_fns = [f for f in fns if t.right.contains(f)]
    objs = [
        FinSet(n) for n in range(1 if t.nonempty_only else 0, bound + 1)
    ]

    fid = rep.clause("doctrine.subst-identity", "substitution sends identities to identities")
    for a in objs:
        fid.check(
            d.subst(FinFn.identity(a)).table == tuple(range(d.fiber(a).carrier.size)),
            f"A={a.size}",
        )
    fcomp = rep.clause("doctrine.subst-compose", "substitution is strictly functorial")
    by_dom: dict[FinSet, list[FinFn]] = {}
    for g in fns:
        by_dom.setdefault(g.dom, []).append(g)
    for f in fns:
        for g in by_dom.get(f.cod, ()):
            fcomp.check(
                d.subst(compose(f, g)) == d.subst(g).then(d.subst(f)),
                f"f={f} g={g}",
            )

    strong = rep.clause(
        "doctrine.subst-strong", "substitution preserves tensor and unit"
    )
    for f in fns:
        fa, fb = d.fiber(f.dom), d.fiber(f.cod)
        sb = d.subst(f)
        strong.check(sb.table[fb.unit] == fa.unit, f"unit along {f}")
        for x in range(fb.carrier.size):
            for y in range(fb.carrier.size):
                strong.check(
                    sb.table[fb.mul(x, y)] == fa.mul(sb.table[x], sb.table[y]),
                    f"f={f} x={x} y={y}",
                )

    eid = rep.clause("doctrine.exists-identity", "quantifier along an identity is the identity")
    for a in objs:
        ident = FinFn.identity(a)
        if t.right.contains(ident):
            eid.check(
                d.exists(ident).table == tuple(range(d.fiber(a).carrier.size)),
                f"A={a.size}",
            )
    ecomp = rep.clause("doctrine.exists-compose", "quantifiers compose strictly")
    r_by_dom: dict[FinSet, list[FinFn]] = {}
    for g in r_fns:
        r_by_dom.setdefault(g.dom, []).append(g)
    for f in r_fns:
        for g in r_by_dom.get(f.cod, ()):
            ecomp.check(
                d.exists(compose(f, g)) == d.exists(f).then(d.exists(g)),
                f"f={f} g={g}",
            )

    gal = rep.clause("doctrine.galois", "quantifier is left adjoint to substitution")
    for f in r_fns:
        sub = check_adjunction(d, f)
        gal.check(sub.passed, f"f={f}: {sub.failures} failures")

    com = rep.clause(
        "doctrine.comonoidal", "quantifier laxly preserves the tensor"
    )
    for f in r_fns:
        ex = d.exists(f)
        fa, fb = d.fiber(f.dom), d.fiber(f.cod)
        for a in range(fa.carrier.size):
            for a2 in range(fa.carrier.size):
                com.check(
                    fb.carrier.le(
                        ex.table[fa.mul(a, a2)], fb.mul(ex.table[a], ex.table[a2])
                    ),
                    f"f={f} a={a} a'={a2}",
                )

    bc = rep.clause(
        "doctrine.beck-chevalley",
        "quantification commutes with substitution over designated squares",
    )
    for sq in generated_pullbacks(t, min(bc_size, bound)):
        sub = check_beck_chevalley(d, sq)
        bc.check(sub.passed, f"square {sq}")

    fr = rep.clause("doctrine.frobenius", "both projection formulas hold")
    for f in r_fns:
        sub = check_frobenius(d, f)
        fr.check(sub.passed, f"f={f}")

    lax = rep.clause(
        "doctrine.laxator-natural", "the external tensor map is natural"
    )
    lax_bound = min(bound, 2)
    small = [a for a in objs if a.size <= lax_bound]
    small_fns = [f for f in fns if f.dom.size <= lax_bound and f.cod.size <= lax_bound]
    for f in small_fns:
        for g in small_fns:
            mu_cod = external_laxator(d, f.cod, g.cod)
            mu_dom = external_laxator(d, f.dom, g.dom)
            lhs = map_product(d.subst(f), d.subst(g)).then(mu_dom)
            rhs = mu_cod.then(d.subst(fn_product(f, g)))
            lax.check(lhs == rhs, f"f={f} g={g}")

    sym = rep.clause(
        "doctrine.laxator-symmetric", "the external tensor map respects the symmetry"
    )
    for a in small:
        for b in small:
            mu_ab = external_laxator(d, a, b)
            mu_ba = external_laxator(d, b, a)
            sw_pos = swap_map(d.fiber(a).carrier, d.fiber(b).carrier)
            sw_set = swap_fn(a, b)
            sym.check(
                sw_pos.then(mu_ba).then(d.subst(sw_set)) == mu_ab,
                f"A={a.size} B={b.size}",
            )
    return rep

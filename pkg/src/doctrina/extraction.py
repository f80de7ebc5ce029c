"""Recovering a doctrine from double-functor data, and the round trip.

The converse direction only ever consumes the double-functor interface:
object posets, tight images, loose images, the external tensor map and
unit.  Quantifiers come back as loose images of one-legged spans,
fiberwise tensors as diagonal substitution after the external tensor,
and the Frobenius equality is rebuilt from one designated pullback
square plus one laxator-commuter verdict, then cross-checked against the
direct computation.
"""

from __future__ import annotations

from .errors import ClassViolation, NotAPullback
from .finset import (
    FinFn,
    FinSet,
    bang,
    compose,
    diagonal,
    fn_product,
    functions,
    terminal,
)
from .doctrine import (
    Doctrine,
    PullbackSquare,
    check_frobenius,
    external_laxator,
    external_unit,
    is_clr_pullback,
)
from .doubling import PDot
from .poskit import MonotoneMap, Poset, iso_maps, map_product
from .report import Report
from .spancat import Span


class DoubleFunctorData:
    """The double-functor face of a built extension.

    Populated only from :class:`doctrina.doubling.PDot`; arbitrary
    user-supplied double functors are out of scope.  Everything below is
    expressed through this interface alone, so the extraction never
    peeks at the source doctrine's own quantifiers or tensors.
    """

    def __init__(self, pdot: PDot):
        self._pdot = pdot
        self.triple = pdot.triple

    def object_poset(self, a: FinSet) -> Poset:
        return self._pdot.d.fiber(a).carrier

    def tight(self, f: FinFn) -> MonotoneMap:
        return self._pdot.d.subst(f)

    def loose(self, x: Span) -> MonotoneMap:
        return self._pdot.loose_image(x)

    def mu0(self, a: FinSet, b: FinSet) -> MonotoneMap:
        return external_laxator(self._pdot.d, a, b)

    def unit0(self) -> int:
        return external_unit(self._pdot.d)

    def laxator_invertible(self, x: Span, y: Span) -> bool:
        return self._pdot.laxator_cell(x, y).invertible


def conjoint_span(f: FinFn) -> Span:
    return Span(FinFn.identity(f.dom), f)


def companion_span(f: FinFn) -> Span:
    return Span(f, FinFn.identity(f.dom))


def quantifier_from_conjoint(q: DoubleFunctorData, f: FinFn) -> MonotoneMap:
    """The quantifier along f is the loose image of its one-legged span."""
    if not q.triple.right.contains(f):
        raise ClassViolation(f"{f} is not in R")
    return q.loose(conjoint_span(f))


def tensor_from_laxator(q: DoubleFunctorData, a: FinSet) -> MonotoneMap:
    """Fiber tensor recovered as diagonal substitution after the external
    tensor map."""
    return q.mu0(a, a).then(q.tight(diagonal(a)))


def unit_from_I(q: DoubleFunctorData, a: FinSet) -> int:
    """Fiber unit recovered by substituting the global unit along bang."""
    return q.tight(bang(a)).table[q.unit0()]


def frobenius_via_Bhat(q: DoubleFunctorData, f: FinFn) -> Report:
    """Rebuild the Frobenius equality along f from the designated square
    on the graph of f and the laxator-commuter verdict, and confirm the
    rebuilt route agrees with the direct one.

    Requires diagonals in the left class (trivially true for the stock
    triples used here).
    """
    if not q.triple.right.contains(f):
        raise ClassViolation(f"{f} is not in R")
    a, b = f.dom, f.cod
    if not q.triple.left.contains(diagonal(a)) or not q.triple.left.contains(
        diagonal(b)
    ):
        raise NotAPullback("left class must contain diagonals")
    rep = Report()

    # designated square: the graph of f sits over b x a
    k = compose(diagonal(a), fn_product(f, FinFn.identity(a)))  # a -> b x a
    bottom = fn_product(FinFn.identity(b), f)  # b x a -> b x b
    sq = PullbackSquare(top=f, left=k, right=diagonal(b), bottom=bottom)
    if not is_clr_pullback(sq, q.triple):
        raise NotAPullback(f"graph square of {f} is not designated")

    exists_f = quantifier_from_conjoint(q, f)
    exists_bottom = quantifier_from_conjoint(q, bottom)
    mu_ba = q.mu0(b, a)
    mu_bb = q.mu0(b, b)
    tensor_a = tensor_from_laxator(q, a)
    tensor_b = tensor_from_laxator(q, b)
    ident_a = MonotoneMap.identity(q.object_poset(a))
    ident_b = MonotoneMap.identity(q.object_poset(b))

    # direct left-hand route: substitute, tensor in the fiber, quantify
    direct_lhs = map_product(q.tight(f), ident_a).then(tensor_a).then(exists_f)
    # the square rewrites it through the product context
    recipe_mid = mu_ba.then(exists_bottom).then(q.tight(diagonal(b)))
    # the commuter collapses the product context to the target tensor
    direct_rhs = map_product(ident_b, exists_f).then(tensor_b)

    bc_leg = rep.clause(
        "frobenius-recipe.square",
        "the graph square turns the substituted tensor into a product image",
    )
    bc_leg.check(iso_maps(direct_lhs, recipe_mid), f"f={f}")

    comm_leg = rep.clause(
        "frobenius-recipe.commuter",
        "the laxator commuter collapses the product image",
    )
    comm_leg.check(
        q.laxator_invertible(Span.identity(b), conjoint_span(f))
        and iso_maps(recipe_mid, direct_rhs),
        f"f={f}",
    )

    total = rep.clause(
        "frobenius-recipe.total", "the rebuilt equality is the projection formula"
    )
    total.check(iso_maps(direct_lhs, direct_rhs), f"f={f}")
    return rep


def roundtrip(d: Doctrine, max_size: int) -> Report:
    """Extract the extension of a doctrine and compare every recovered
    piece with the source, literally."""
    pdot = PDot(d)
    q = DoubleFunctorData(pdot)
    t = d.triple
    rep = Report()
    objs = [
        FinSet(n) for n in range(1 if t.nonempty_only else 0, max_size + 1)
    ]
    fns = [f for a in objs for b in objs for f in functions(a, b)]
    r_fns = [f for f in fns if t.right.contains(f)]

    fib = rep.clause(
        "roundtrip.fibers", "recovered tensor and unit equal the source fiber"
    )
    for a in objs:
        src = d.fiber(a)
        fib.check(
            tensor_from_laxator(q, a) == src.tensor_map()
            and unit_from_I(q, a) == src.unit,
            f"A={a.size}",
        )

    sub = rep.clause(
        "roundtrip.subst", "recovered substitution equals the source substitution"
    )
    for f in fns:
        sub.check(q.tight(f) == d.subst(f), f"f={f}")

    qua = rep.clause(
        "roundtrip.exists", "recovered quantifier equals the source quantifier"
    )
    for f in r_fns:
        qua.check(quantifier_from_conjoint(q, f) == d.exists(f), f"f={f}")

    fac = rep.clause(
        "roundtrip.factorisation",
        "every loose image factors through its companion and conjoint legs",
    )
    for x in pdot.cat.enumerate_spans(max_size):
        comp = companion_span(x.left)
        conj = conjoint_span(x.right)
        lhs = q.loose(x)
        rhs = q.loose(comp).then(q.loose(conj))
        fac.check(
            lhs == rhs and pdot.cat.loose_compose(comp, conj) == x,
            f"{x}",
        )

    fro = rep.clause(
        "roundtrip.frobenius",
        "the rebuilt Frobenius verdict matches the direct check",
    )
    for f in r_fns:
        via = frobenius_via_Bhat(q, f)
        direct = check_frobenius(d, f)
        fro.check(via.passed == direct.passed and via.passed, f"f={f}")

    ext = rep.clause(
        "roundtrip.unit-object", "the external unit is the terminal fiber's unit"
    )
    ext.check(q.unit0() == d.fiber(terminal()).unit, "unit")
    return rep

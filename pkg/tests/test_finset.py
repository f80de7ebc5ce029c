import pytest
from hypothesis import given, strategies as st

from doctrina.errors import CodMismatch, DomMismatch, LabelClash
from doctrina.finset import (
    AdequateTriple,
    FinFn,
    FinSet,
    MorClass,
    bang,
    check_adequate_triple,
    compose,
    diagonal,
    finsets,
    fn_product,
    functions,
    injection_right_triple,
    product,
    pullback,
    pushout,
    surjection_triple,
    swap_fn,
    terminal,
    trivial_triple,
)


def brute_pullback_pairs(x, y):
    """Independent oracle: matching pairs in lexicographic order."""
    return [
        (a, b)
        for a in range(x.dom.size)
        for b in range(y.dom.size)
        if x.table[a] == y.table[b]
    ]


def quotient_oracle(f, g):
    """Independent pushout oracle: repeatedly merge overlapping blocks."""
    n1, n2 = f.cod.size, g.cod.size
    blocks = [{i} for i in range(n1 + n2)]
    for x in range(f.dom.size):
        u, v = f.table[x], n1 + g.table[x]
        bu = next(b for b in blocks if u in b)
        bv = next(b for b in blocks if v in b)
        if bu is not bv:
            blocks.remove(bu)
            blocks.remove(bv)
            blocks.append(bu | bv)
    return [frozenset(b) for b in blocks]


class TestCompose:
    def test_identity(self):
        i = FinFn.identity(FinSet(2))
        assert compose(i, i) == i

    def test_constant_then_point(self):
        f = FinFn(FinSet(2), FinSet(1), (0, 0))
        g = FinFn(FinSet(1), FinSet(2), (1,))
        assert compose(f, g).table == (1, 1)

    def test_swap_involution(self):
        swap = FinFn(FinSet(2), FinSet(2), (1, 0))
        assert compose(swap, swap) == FinFn.identity(FinSet(2))

    def test_cod_mismatch(self):
        f = FinFn(FinSet(1), FinSet(2), (0,))
        with pytest.raises(CodMismatch):
            compose(f, f)

    @given(
        st.integers(1, 3), st.integers(1, 3), st.integers(1, 3),
        st.integers(1, 3), st.data(),
    )
    def test_associative(self, na, nb, nc, nd, data):
        def draw_fn(m, n):
            return FinFn(
                FinSet(m), FinSet(n),
                tuple(data.draw(st.integers(0, n - 1)) for _ in range(m)),
            )

        f, g, h = draw_fn(na, nb), draw_fn(nb, nc), draw_fn(nc, nd)
        assert compose(compose(f, g), h) == compose(f, compose(g, h))


class TestPullback:
    def test_along_identity_verbatim(self):
        x = FinFn(FinSet(2), FinSet(1), (0, 0))
        apex, p, q = pullback(x, FinFn.identity(FinSet(1)))
        assert (apex, p, q) == (x.dom, FinFn.identity(x.dom), x)

    def test_identity_first_leg(self):
        x = FinFn.identity(FinSet(2))
        y = FinFn(FinSet(1), FinSet(2), (1,))
        apex, p, q = pullback(x, y)
        assert apex.size == 1
        assert (p.table[0], q.table[0]) == (1, 0)

    def test_constant_both(self):
        x = FinFn(FinSet(2), FinSet(1), (0, 0))
        apex, p, q = pullback(x, x)
        assert apex.size == 4
        assert list(zip(p.table, q.table)) == brute_pullback_pairs(x, x)

    def test_matches_pair_oracle(self):
        z = FinSet(2)
        for a in finsets(3):
            for b in finsets(3):
                for x in functions(a, z):
                    for y in functions(b, z):
                        apex, p, q = pullback(x, y)
                        pairs = sorted(zip(p.table, q.table))
                        assert pairs == sorted(brute_pullback_pairs(x, y))
                        assert apex.size == len(pairs)

    def test_universal_property(self):
        # every competitor cone factors uniquely, sets <= 3
        z = FinSet(2)
        for a in finsets(2):
            for b in finsets(2):
                for x in functions(a, z):
                    for y in functions(b, z):
                        apex, p, q = pullback(x, y)
                        index = {
                            (p.table[k], q.table[k]): k for k in range(apex.size)
                        }
                        for w in finsets(3):
                            for z1 in functions(w, a):
                                for z2 in functions(w, b):
                                    if compose(z1, x) != compose(z2, y):
                                        continue
                                    mediators = [
                                        m
                                        for m in functions(w, apex)
                                        if compose(m, p) == z1 and compose(m, q) == z2
                                    ]
                                    assert len(mediators) == 1
                                    want = tuple(
                                        index[(z1.table[i], z2.table[i])]
                                        for i in range(w.size)
                                    )
                                    assert mediators[0].table == want


class TestPushout:
    def test_identities(self):
        i = FinFn.identity(FinSet(1))
        po = pushout(i, i)
        assert po.apex.size == 1

    def test_glued_endpoint(self):
        f = FinFn(FinSet(1), FinSet(2), (0,))
        g = FinFn(FinSet(1), FinSet(2), (1,))
        po = pushout(f, g)
        assert po.apex.size == 3
        # the glued class contains left-0 and right-1
        assert po.i1.table[0] == po.i2.table[1]

    def test_empty_gluing_disjoint_union(self):
        f = FinFn(FinSet(0), FinSet(2), ())
        g = FinFn(FinSet(0), FinSet(3), ())
        po = pushout(f, g)
        assert po.apex.size == 5

    @given(
        st.integers(1, 3), st.integers(1, 3), st.integers(0, 3), st.data()
    )
    def test_matches_quotient_oracle(self, n1, n2, k, data):
        dom = FinSet(k)
        f = FinFn(dom, FinSet(n1), tuple(data.draw(st.integers(0, n1 - 1)) for _ in range(k)))
        g = FinFn(dom, FinSet(n2), tuple(data.draw(st.integers(0, n2 - 1)) for _ in range(k)))
        po = pushout(f, g)
        blocks = quotient_oracle(f, g)
        assert po.apex.size == len(blocks)
        # classes agree: elements mapped together iff in the same block
        for i in range(n1):
            for j in range(n2):
                same = po.i1.table[i] == po.i2.table[j]
                block_same = any(i in b and (n1 + j) in b for b in blocks)
                assert same == block_same

    def test_couniversal_property(self):
        f = FinFn(FinSet(1), FinSet(2), (0,))
        g = FinFn(FinSet(1), FinSet(2), (1,))
        po = pushout(f, g)
        for w in finsets(3):
            for u in functions(f.cod, w):
                for v in functions(g.cod, w):
                    if compose(f, u) != compose(g, v):
                        continue
                    mediators = [
                        m
                        for m in functions(po.apex, w)
                        if compose(po.i1, m) == u and compose(po.i2, m) == v
                    ]
                    assert len(mediators) == 1

    def test_label_inheritance_and_clash(self):
        f = FinFn(FinSet(1), FinSet(2), (0,))
        g = FinFn(FinSet(1), FinSet(2), (1,))
        po = pushout(f, g, labels=(("a", "b"), ("c", "a")))
        assert po.labels == ("a", "b", "c")
        with pytest.raises(LabelClash):
            pushout(f, g, labels=(("a", "b"), ("c", "d")))

    def test_dom_mismatch(self):
        f = FinFn(FinSet(1), FinSet(2), (0,))
        g = FinFn(FinSet(2), FinSet(2), (0, 1))
        with pytest.raises(DomMismatch):
            pushout(f, g)


class TestProducts:
    def test_row_major(self):
        prod, pa, pb = product(FinSet(2), FinSet(3))
        assert prod.size == 6
        assert pa.table == (0, 0, 0, 1, 1, 1)
        assert pb.table == (0, 1, 2, 0, 1, 2)

    def test_diagonal(self):
        assert diagonal(FinSet(2)).table == (0, 3)

    def test_terminal_and_bang(self):
        assert terminal().size == 1
        assert bang(FinSet(3)).table == (0, 0, 0)

    def test_projection_after_diagonal(self):
        for n in range(4):
            a = FinSet(n)
            d = diagonal(a)
            _, pa, pb = product(a, a)
            assert compose(d, pa) == FinFn.identity(a)
            assert compose(d, pb) == FinFn.identity(a)

    def test_swap_after_diagonal(self):
        for n in range(4):
            a = FinSet(n)
            assert compose(diagonal(a), swap_fn(a, a)) == diagonal(a)

    def test_fn_product_commutes_with_projections(self):
        f = FinFn(FinSet(2), FinSet(3), (2, 0))
        g = FinFn(FinSet(3), FinSet(2), (1, 1, 0))
        fg = fn_product(f, g)
        _, pa, pb = product(f.dom, g.dom)
        _, qa, qb = product(f.cod, g.cod)
        assert compose(fg, qa) == compose(pa, f)
        assert compose(fg, qb) == compose(pb, g)


class TestAdequateTriples:
    def test_trivial_passes(self):
        assert check_adequate_triple(trivial_triple(3)).passed

    def test_surjection_triple_passes(self):
        rep = check_adequate_triple(surjection_triple(3))
        assert rep.passed
        assert rep.find("triple.projections").notes

    def test_injection_right_fails_exactly_projections(self):
        rep = check_adequate_triple(injection_right_triple(3))
        failing = [c.clause for c in rep.clauses if not c.passed]
        assert failing == ["triple.projections"]
        assert "1x2->1 not in R" in rep.find("triple.projections").witnesses[0]

    def test_explicit_class_closure_is_verified(self):
        id0 = FinFn.identity(FinSet(0))
        id1 = FinFn.identity(FinSet(1))
        empty_to_1 = FinFn(FinSet(0), FinSet(1), ())
        # {id, id} misses the projection 0x1 -> 1 of the empty product
        short = AdequateTriple(1, MorClass.explicit([id0, id1]), MorClass.all())
        rep = check_adequate_triple(short)
        assert not rep.find("triple.projections").passed
        # closing up under that projection makes the triple adequate
        full = AdequateTriple(
            1, MorClass.explicit([id0, id1, empty_to_1]), MorClass.all()
        )
        assert check_adequate_triple(full).passed

    def test_universe_bound_guard(self):
        with pytest.raises(ValueError):
            check_adequate_triple(AdequateTriple(0, MorClass.all(), MorClass.all()))

import itertools

import pytest
from hypothesis import given, strategies as st

from doctrina.errors import ShapeMismatch
from doctrina.finset import FinFn, FinSet
from doctrina.poskit import (
    MonoPoset,
    MonotoneMap,
    Poset,
    chain,
    check_mono_poset,
    cover_pairs,
    image_mask,
    iso_maps,
    leq_maps,
    map_product,
    monotone_map,
    powerset_fiber,
    preimage_mask,
    product_poset,
    subset_lattice,
    swap_map,
    trop_add,
    trop_all_values,
    trop_index,
    trop_value_poset,
    trop_values,
    tropical_fiber,
)


class TestPoset:
    def test_rejects_non_reflexive(self):
        with pytest.raises(ValueError):
            Poset(2, (0b01, 0b00))

    def test_rejects_non_transitive(self):
        # 0<=1, 1<=2, but not 0<=2
        with pytest.raises(ValueError):
            Poset(3, (0b011, 0b110, 0b100))

    def test_rejects_non_antisymmetric(self):
        with pytest.raises(ValueError):
            Poset(2, (0b11, 0b11))

    def test_chain_order(self):
        c = chain(3)
        assert c.le(0, 2) and not c.le(2, 0)

    def test_subset_lattice_is_inclusion(self):
        p = subset_lattice(3)
        for s in range(8):
            for t in range(8):
                assert p.le(s, t) == (s & ~t == 0)

    def test_cover_pairs_generate_order(self):
        p = subset_lattice(3)
        covers = set(cover_pairs(p))
        # covers of the subset lattice add exactly one element
        assert all(bin(j & ~i).count("1") == 1 for i, j in covers)
        assert len(covers) == 3 * 4  # n * 2^(n-1)


class TestMonotoneMap:
    def test_monotone_validation(self):
        c = chain(2)
        with pytest.raises(ValueError):
            monotone_map(c, c, (1, 0))

    def test_composite_of_monotones_is_monotone(self):
        p = subset_lattice(2)
        f = monotone_map(p, p, tuple(s & 0b01 for s in range(4)))
        g = monotone_map(p, p, tuple(s | 0b10 for s in range(4)))
        assert f.then(g).is_monotone()

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            MonotoneMap.identity(chain(2)).then(MonotoneMap.identity(chain(3)))


class TestCell2:
    def test_equal_maps_hold_both_ways(self):
        f = MonotoneMap.identity(chain(2))
        assert leq_maps(f, f).holds
        assert iso_maps(f, f)

    def test_constants_on_chain(self):
        c = chain(2)
        lo = monotone_map(c, c, (0, 0))
        hi = monotone_map(c, c, (1, 1))
        assert leq_maps(lo, hi).holds
        assert not leq_maps(hi, lo).holds

    def test_image_preimage_direction(self):
        # image of preimage is below the identity on a 2-element powerset
        f = FinFn(FinSet(2), FinSet(2), (0, 0))
        p = subset_lattice(2)
        img_pre = monotone_map(
            p, p, tuple(image_mask(f, preimage_mask(f, s)) for s in range(4))
        )
        assert leq_maps(img_pre, MonotoneMap.identity(p)).holds

    def test_iso_iff_equal_tables(self):
        # antisymmetry meta-test
        p = subset_lattice(2)
        maps = [
            MonotoneMap(p, p, t)
            for t in itertools.product(range(4), repeat=4)
            if MonotoneMap(p, p, t).is_monotone()
        ]
        for f in maps:
            for g in maps:
                assert iso_maps(f, g) == (f.table == g.table)


class TestProductPoset:
    def test_row_major_pairs(self):
        a, b = chain(2), chain(3)
        p = product_poset(a, b)
        assert p.size == 6
        assert p.le(0 * 3 + 1, 1 * 3 + 2)
        assert not p.le(1 * 3 + 0, 0 * 3 + 2)

    def test_map_product_indexing(self):
        f = MonotoneMap.identity(chain(2))
        g = monotone_map(chain(2), chain(2), (0, 0))
        fg = map_product(f, g)
        assert fg.table == (0, 0, 2, 2)

    def test_swap_is_an_involution(self):
        a, b = chain(2), chain(3)
        assert swap_map(a, b).then(swap_map(b, a)) == MonotoneMap.identity(
            product_poset(a, b)
        )


class TestMonoPosets:
    def test_powerset_fiber_laws(self):
        assert check_mono_poset(powerset_fiber(3)).passed

    def test_tropical_fiber_laws(self):
        fib = tropical_fiber(2, 3)
        assert fib.carrier.size == 25
        assert check_mono_poset(fib).passed

    def test_broken_tensor_reported_with_witness(self):
        good = powerset_fiber(1)
        # non-monotone tensor: swap the order on the second argument
        bad = MonoPoset(good.carrier, (1, 0, 0, 1), good.unit)
        rep = check_mono_poset(bad)
        assert not rep.passed
        assert any(c.witnesses for c in rep.clauses if not c.passed)

    def test_powerset_tensor_idempotent_tropical_not(self):
        pf = powerset_fiber(2)
        assert all(pf.mul(s, s) == s for s in range(4))
        tf = tropical_fiber(1, 3)
        assert any(tf.mul(v, v) != v for v in range(tf.carrier.size))

    def test_tensor_map_is_monotone(self):
        assert powerset_fiber(2).tensor_map().is_monotone()
        assert tropical_fiber(1, 2).tensor_map().is_monotone()


class TestTropical:
    def test_value_chain_zero_is_top(self):
        p = trop_value_poset(3)
        assert all(p.le(i, 0) for i in range(p.size))
        assert all(p.le(p.size - 1, i) for i in range(p.size))

    def test_saturation_collapses_to_infinity(self):
        assert trop_add(2, 2, 3) == 4  # 4 > cap means infinity
        assert trop_add(4, 0, 3) == 4
        assert trop_add(1, 2, 3) == 3

    def test_distributes_over_min(self):
        cap = 3
        vals = range(cap + 2)
        for x, y, z in itertools.product(vals, repeat=3):
            assert trop_add(x, min(y, z), cap) == min(
                trop_add(x, y, cap), trop_add(x, z, cap)
            )

    @given(st.integers(1, 4), st.integers(1, 3), st.data())
    def test_index_roundtrip(self, cap, n, data):
        vals = tuple(data.draw(st.integers(0, cap + 1)) for _ in range(n))
        assert trop_values(trop_index(vals, cap), n, cap) == vals

    def test_all_values_table(self):
        assert trop_all_values(2, 1)[0] == (0, 0)
        assert len(trop_all_values(2, 1)) == 9

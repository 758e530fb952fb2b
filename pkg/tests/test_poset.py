import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import NaiveOrder, reachability, subsets
from rzlogic import BOTTOM_NAME, DomainError, build_domain
from rzlogic.generate import random_domain
from rzlogic.poset import bits, to_mask

seeds = st.integers(min_value=0, max_value=2**32)
sizes = st.integers(min_value=1, max_value=8)


def domain_of(seed, size, density=0.35):
    return random_domain(random.Random(seed), size, density)


class TestBuildDomain:
    def test_diamond_gets_bottom(self, diamond):
        assert len(diamond) == 4
        bot = diamond.index(BOTTOM_NAME)
        assert diamond.bottom == bot
        a, b, t = (diamond.index(x) for x in "abt")
        assert diamond.leq(bot, a) and diamond.leq(bot, b)
        assert diamond.leq(a, t) and diamond.leq(b, t)
        assert diamond.synthetic_bottom

    def test_cycle_rejected(self):
        with pytest.raises(DomainError, match="cycle"):
            build_domain(["a", "b"], [("a", "b"), ("b", "a")])

    def test_missing_bottom_rejected(self):
        with pytest.raises(DomainError):
            build_domain(["a", "b"], [])

    def test_unknown_element(self):
        with pytest.raises(DomainError):
            build_domain(["a"], [("a", "zz")])

    def test_duplicate_names(self):
        with pytest.raises(DomainError):
            build_domain(["a", "a"], [])

    def test_insertion_order_preserved(self):
        d = build_domain(["z", "y", "x"], [("z", "y"), ("z", "x")])
        assert [d.name(i) for i in range(3)] == ["z", "y", "x"]

    def test_restaurant_size(self, restaurant):
        d, _ = restaurant
        # 10 attributes and 9 meals collapse to 17 nodes (2 ~ rw, 1 ~ ww) plus a bottom
        assert len(d) == 18

    def test_aliases_resolve(self, restaurant):
        d, _ = restaurant
        assert d.index("2") == d.index("rw")
        assert d.index("1") == d.index("ww")

    @given(seeds, sizes)
    def test_closure_matches_search(self, seed, size):
        rng = random.Random(seed)
        names = [f"x{i}" for i in range(size)]
        pairs = [(names[0], n) for n in names[1:]]
        pairs += [(names[i], names[j]) for i in range(1, size) for j in range(i + 1, size)
                  if rng.random() < 0.3]
        d = build_domain(names, pairs)
        above = reachability(names, pairs)
        for x in names:
            for y in names:
                assert d.leq(d.index(x), d.index(y)) == (y in above[x])


class TestLeq:
    def test_diamond(self, diamond):
        i = diamond.index
        assert diamond.leq(i(BOTTOM_NAME), i("t"))
        assert not diamond.leq(i("a"), i("b"))

    def test_restaurant_meal_order(self, restaurant):
        d, emb = restaurant
        # intent(4) is contained in intent(7), so 4 lies below 7
        assert d.leq(emb.of("4"), emb.of("7"))
        assert not d.leq(emb.of("7"), emb.of("4"))

    @given(seeds, sizes)
    def test_partial_order_axioms(self, seed, size):
        d = domain_of(seed, size)
        n = len(d)
        for x in range(n):
            assert d.leq(x, x)
            assert d.leq(d.bottom, x)
            for y in range(n):
                if x != y:
                    assert not (d.leq(x, y) and d.leq(y, x))
                for z in range(n):
                    if d.leq(x, y) and d.leq(y, z):
                        assert d.leq(x, z)


class TestMub:
    def test_diamond(self, diamond):
        i = diamond.index
        assert diamond.mub({i("a"), i("b")}) == {i("t")}

    def test_empty_is_bottom(self, diamond):
        assert diamond.mub(set()) == {diamond.bottom}

    def test_restaurant_salad_fish(self, restaurant):
        d, emb = restaurant
        assert d.mub({emb.of("sd"), emb.of("f")}) == {emb.of("3"), emb.of("5")}

    def test_no_upper_bound(self, vee):
        assert vee.mub({vee.index("a"), vee.index("b")}) == frozenset()

    @given(seeds, sizes, st.data())
    @settings(max_examples=60)
    def test_antichain_and_dominating(self, seed, size, data):
        d = domain_of(seed, size)
        naive = NaiveOrder.of(d)
        xs = data.draw(st.sets(st.integers(0, len(d) - 1), max_size=3))
        m = d.mub(xs)
        names = {d.name(x) for x in xs}
        assert {d.name(u) for u in m} == naive.mub(names)
        for u in m:
            for v in m:
                assert u == v or not d.leq(u, v)
        for ub in naive.upper_bounds(names):
            assert any(d.leq(u, d.index(ub)) for u in m)


class TestConsistentPair:
    def test_vee(self, vee):
        assert not vee.consistent_pair(vee.index("a"), vee.index("b"))

    def test_reflexive(self, diamond):
        for x in range(len(diamond)):
            assert diamond.consistent_pair(x, x)

    def test_diamond(self, diamond):
        assert diamond.consistent_pair(diamond.index("a"), diamond.index("b"))


class TestUpwardClosure:
    def test_diamond(self, diamond):
        i = diamond.index
        assert diamond.upward_closure({i("a")}) == {i("a"), i("t")}

    def test_minimal_of_empty(self, diamond):
        assert diamond.minimal_elements(set()) == frozenset()

    @given(seeds, sizes, st.data())
    @settings(max_examples=60)
    def test_closure_operator(self, seed, size, data):
        d = domain_of(seed, size)
        elems = st.sets(st.integers(0, len(d) - 1))
        xs, ys = data.draw(elems), data.draw(elems)
        up = d.upward_closure
        assert xs <= up(xs)
        assert up(up(xs)) == up(xs)
        assert up(xs) <= up(xs | ys)
        assert d.minimal_elements(up(xs)) == d.minimal_elements(xs)


def test_bits_round_trip():
    for xs in subsets(range(6)):
        assert set(bits(to_mask(xs))) == xs


def test_covers_generate_order(restaurant):
    d, _ = restaurant
    names = [d.name(i) for i in range(len(d))]
    pairs = [(d.name(a), d.name(b)) for a, b in d.covers()]
    above = reachability(names, pairs)
    assert all((d.name(y) in above[d.name(x)]) == d.leq(x, y)
               for x in range(len(d)) for y in range(len(d)))

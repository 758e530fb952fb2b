import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import NaiveOrder, cp_conclusions
from rzlogic import BoundExceeded, build_domain
from rzlogic.cpengine import CPEngine, cp_consequences, tp_fixpoint, tp_step
from rzlogic.generate import random_domain, random_program, random_theory
from rzlogic.logic import clause_from_mask, clause_to_mask, satisfies
from rzlogic.programs import ExtendedRule, Program, cons_program, models_mask, rule

seeds = st.integers(min_value=0, max_value=2**32)


def names(d, mask):
    return frozenset(d.name(x) for x in clause_from_mask(mask))


def masks(d, named):
    return {clause_to_mask(d.index(x) for x in c) for c in named}


def tiny(seed, max_size=3, max_rules=3):
    rng = random.Random(seed)
    d = random_domain(rng, rng.randint(2, max_size), density=0.5)
    p = random_program(rng, d, max_rules=max_rules)
    eng = CPEngine(d)
    t = eng.closure(clause_to_mask(c) for c in random_theory(rng, d, max_clauses=2))
    return d, p, eng, t


class TestInitial:
    def test_clauses_with_bottom(self, diamond):
        eng = CPEngine(diamond)
        init = eng.initial()
        assert all((c >> diamond.bottom & 1) == (c in init) for c in range(16))

    def test_empty_program_step(self, diamond, rng):
        eng = CPEngine(diamond)
        p = Program(diamond, [])
        for _ in range(10):
            t = eng.closure(clause_to_mask(c) for c in random_theory(rng, diamond))
            assert tp_step(p, t) == eng.initial()

    def test_bound(self):
        names_ = [f"x{i}" for i in range(13)]
        d = build_domain(names_, [(names_[0], n) for n in names_[1:]])
        with pytest.raises(BoundExceeded):
            CPEngine(d)


class TestPropagation:
    def test_fact_fires_without_premises(self, diamond):
        eng = CPEngine(diamond)
        p = Program(diamond, [rule(diamond, ["a"])])
        assert 1 << diamond.index("a") in cp_consequences(p, eng.initial())

    def test_join_of_selected_elements(self, diamond):
        i = diamond.index
        eng = CPEngine(diamond)
        t = eng.closure([1 << i("a"), 1 << i("b")])
        p = Program(diamond, [ExtendedRule({i("a")}, {i("t")})])
        assert 1 << i("a") in cp_consequences(p, t)

    def test_residue_carried_into_conclusion(self):
        d = build_domain(["_bot_", "a", "c", "y"],
                         [("_bot_", "a"), ("_bot_", "c"), ("_bot_", "y")])
        i = d.index
        eng = CPEngine(d)
        t = eng.closure([clause_to_mask({i("a"), i("c")})])
        p = Program(d, [ExtendedRule({i("y")}, {i("a")})])
        assert clause_to_mask({i("y"), i("c")}) in cp_consequences(p, t)
        assert 1 << i("y") not in cp_consequences(p, t)

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_matches_literal_rule_on_three_elements(self, seed):
        d, p, eng, t = tiny(seed)
        order = NaiveOrder.of(d)
        theory = [names(d, c) for c in t.clauses]
        rules = [({d.name(x) for x in r.head}, {d.name(x) for x in r.pos_body}) for r in p.rules]
        expected = masks(d, cp_conclusions(order, theory, rules, len(d)))
        assert set(cp_consequences(p, t)) == expected

    @given(seeds)
    @settings(max_examples=25, deadline=None)
    def test_two_premise_conclusions_included(self, seed):
        d, p, eng, t = tiny(seed, max_size=4)
        order = NaiveOrder.of(d)
        theory = [names(d, c) for c in t.clauses]
        rules = [({d.name(x) for x in r.head}, {d.name(x) for x in r.pos_body}) for r in p.rules]
        assert masks(d, cp_conclusions(order, theory, rules, 2)) <= set(cp_consequences(p, t))

    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_sound(self, seed):
        d, p, eng, t = tiny(seed, max_size=5, max_rules=4)
        models = eng.models_of(t.clauses) & models_mask(p)
        for c in cp_consequences(p, t):
            for w in clause_from_mask(models):
                assert satisfies(d, w, clause_from_mask(c))


class TestOperator:
    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_monotone(self, seed):
        d, p, eng, t = tiny(seed, max_size=4)
        rng = random.Random(seed ^ 0x5A5A)
        bigger = eng.closure(set(t.clauses) | {clause_to_mask(c) for c in random_theory(rng, d)})
        assert t <= bigger
        assert tp_step(p, t) <= tp_step(p, bigger)

    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_fixpoint_is_fixed(self, seed):
        rng = random.Random(seed)
        d = random_domain(rng, rng.randint(1, 6))
        p = random_program(rng, d)
        fix = tp_fixpoint(p)
        assert tp_step(p, fix) == fix

    def test_empty_program(self, diamond):
        fix = tp_fixpoint(Program(diamond, []))
        assert fix == CPEngine(diamond).initial()

    def test_diamond_chain(self, diamond):
        t = diamond.index("t")
        p = Program(diamond, [rule(diamond, ["a"]), rule(diamond, ["t"], ["a"])])
        fix = tp_fixpoint(p)
        assert fix.clauses == {c for c in range(16) if satisfies(diamond, t, clause_from_mask(c))}

    def test_trace_is_increasing(self, diamond):
        p = Program(diamond, [rule(diamond, ["a"]), rule(diamond, ["t"], ["a"])])
        stages = CPEngine(diamond).trace(p)
        assert all(a <= b for a, b in zip(stages, stages[1:]))
        assert len(stages) >= 2

    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_fixpoint_equals_consequences(self, seed):
        rng = random.Random(seed)
        d = random_domain(rng, rng.randint(1, 7))
        p = random_program(rng, d)
        fix = tp_fixpoint(p)
        cons = cons_program(p)
        assert all((c in fix) == cons.contains(clause_from_mask(c)) for c in range(1 << len(d)))

"""Seeded random instances for differential and property testing."""

from __future__ import annotations

import random

from .poset import Domain, build_domain
from .programs import ExtendedRule, Program


def random_domain(rng: random.Random, size: int, density: float = 0.35) -> Domain:
    """Random poset of exactly ``size`` elements whose element 0 is bottom."""
    names = [f"e{i}" for i in range(size)]
    pairs = [("e0", n) for n in names[1:]]
    for i in range(1, size):
        for j in range(i + 1, size):
            if rng.random() < density:
                pairs.append((names[i], names[j]))
    return build_domain(names, pairs)


def random_clause(rng: random.Random, d: Domain, max_size: int = 3,
                  allow_empty: bool = True) -> frozenset[int]:
    lo = 0 if allow_empty else 1
    k = rng.randint(lo, min(max_size, len(d)))
    return frozenset(rng.sample(range(len(d)), k))


def random_theory(rng: random.Random, d: Domain, max_clauses: int = 4) -> list[frozenset[int]]:
    return [random_clause(rng, d, allow_empty=rng.random() < 0.1)
            for _ in range(rng.randint(0, max_clauses))]


def random_program(rng: random.Random, d: Domain, max_rules: int = 6,
                   negation: bool = False) -> Program:
    rules = []
    for _ in range(rng.randint(0, max_rules)):
        head = random_clause(rng, d, allow_empty=rng.random() < 0.15)
        if rng.random() < 0.3:
            body = frozenset({d.bottom})
        else:
            body = random_clause(rng, d, max_size=2, allow_empty=rng.random() < 0.05)
        neg = random_clause(rng, d, max_size=2) if negation and rng.random() < 0.6 else frozenset()
        rules.append(ExtendedRule(head, body, neg))
    return Program(d, tuple(rules))


def random_classical_program(rng: random.Random, n_vars: int = 5, max_rules: int = 8,
                             max_head: int = 2, negation: bool = True,
                             classical_negation: bool = True,
                             constraints: bool = True):
    """Random program whose positive bodies are consistent literal sets."""
    from .asp import ClassicalProgram, ClassicalRule, Literal

    variables = [f"p{i}" for i in range(n_vars)]

    def literal():
        neg = classical_negation and rng.random() < 0.35
        return Literal(rng.choice(variables), neg)

    rules = []
    for _ in range(rng.randint(0, max_rules)):
        lo = 0 if constraints and rng.random() < 0.1 else 1
        head = tuple(dict.fromkeys(literal() for _ in range(rng.randint(lo, max_head))))
        pos = {}
        for _ in range(rng.randint(0, 2)):
            lit = literal()
            pos.setdefault(lit.var, lit)
        neg = ()
        if negation:
            neg = tuple(dict.fromkeys(literal() for _ in range(rng.randint(0, 2))))
        rules.append(ClassicalRule(head, tuple(pos.values()), neg))
    return ClassicalProgram(tuple(rules), tuple(variables))


def random_context(rng: random.Random, n_objects: int, n_attributes: int,
                   density: float = 0.45):
    from .fca import FormalContext

    objects = [f"g{i}" for i in range(n_objects)]
    attributes = [f"m{j}" for j in range(n_attributes)]
    incidence = [[rng.random() < density for _ in attributes] for _ in objects]
    return FormalContext.from_matrix(objects, attributes, incidence)

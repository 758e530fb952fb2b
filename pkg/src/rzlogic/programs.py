"""Disjunctive programs with default negation over a finite domain.

A rule ``Y <- C, ~N`` fires at ``w`` when ``w`` satisfies ``C`` and not
``N``.  Reducts, answer models and min-answer models follow the usual
stable-model pattern, lifted to the domain order.

Answer models are decided via saturation: in a finite domain the elements
satisfying every consequence of a negation-free program ``Q`` are exactly
the upward closure of the models of ``Q``.  ``cpengine`` recomputes the
same consequence set syntactically as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .errors import ProgramError
from .logic import ClosedTheory
from .poset import Domain, bits


@dataclass(frozen=True)
class ExtendedRule:
    head: frozenset[int]
    pos_body: frozenset[int]
    neg_body: frozenset[int] = frozenset()

    def __post_init__(self):
        for name in ("head", "pos_body", "neg_body"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    @property
    def trivially_extended(self) -> bool:
        return not self.neg_body

    def positive(self) -> "ExtendedRule":
        return ExtendedRule(self.head, self.pos_body)


@dataclass(frozen=True)
class Program:
    domain: Domain
    rules: tuple[ExtendedRule, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        n = len(self.domain)
        for r in self.rules:
            for x in r.head | r.pos_body | r.neg_body:
                if not 0 <= x < n:
                    raise ProgramError(f"rule mentions element {x} outside the domain")

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def negation_free(self) -> bool:
        return all(r.trivially_extended for r in self.rules)

    def add(self, rule: ExtendedRule) -> "Program":
        return Program(self.domain, self.rules + (rule,))


class AnswerKind(str, Enum):
    ANSWER = "answer"
    MIN_ANSWER = "min-answer"
    NONE = "none"


@dataclass(frozen=True)
class AnswerModelReport:
    element: int
    reduct_size: int
    kind: AnswerKind
    witness: int | None


def _require_negation_free(p: Program) -> None:
    if not p.negation_free:
        raise ProgramError("operation requires a program without default negation")


def models_mask(p: Program) -> int:
    """Bitmask of models of a negation-free program."""
    d = p.domain
    m = d.full
    for r in p.rules:
        m &= ~d.up_mask(r.pos_body) | d.up_mask(r.head)
    return m & d.full


def model_of_program(w: int, p: Program) -> bool:
    _require_negation_free(p)
    return bool(models_mask(p) >> w & 1)


def program_models(p: Program) -> frozenset[int]:
    _require_negation_free(p)
    return p.domain.members(models_mask(p))


def cons_program(p: Program) -> ClosedTheory:
    _require_negation_free(p)
    d = p.domain
    return ClosedTheory(d, d.up_mask(bits(models_mask(p))))


def minimal_models(p: Program) -> list[int]:
    _require_negation_free(p)
    return list(bits(p.domain.minimal_mask(models_mask(p))))


def reduct(p: Program, w: int) -> Program:
    dw = p.domain.down(w)
    kept = [r.positive() for r in p.rules
            if not any(dw >> x & 1 for x in r.neg_body)]
    return Program(p.domain, kept)


def _reduct_models(p: Program, w: int) -> tuple[Program, int]:
    q = reduct(p, w)
    return q, models_mask(q)


def answer_witness(w: int, p: Program) -> int | None:
    """Least-index ``v <= w`` modelling the reduct at ``w``, or None."""
    _, mods = _reduct_models(p, w)
    below = mods & p.domain.down(w)
    if not below:
        return None
    return (below & -below).bit_length() - 1


def is_answer_model(w: int, p: Program) -> bool:
    return answer_witness(w, p) is not None


def is_min_answer_model(w: int, p: Program) -> bool:
    _, mods = _reduct_models(p, w)
    return mods & p.domain.down(w) == 1 << w


def answer_report(w: int, p: Program) -> AnswerModelReport:
    q, mods = _reduct_models(p, w)
    below = mods & p.domain.down(w)
    if below == 1 << w:
        kind = AnswerKind.MIN_ANSWER
    elif below:
        kind = AnswerKind.ANSWER
    else:
        kind = AnswerKind.NONE
    witness = (below & -below).bit_length() - 1 if below else None
    return AnswerModelReport(w, len(q), kind, witness)


class _ReductCache:
    """Model masks of reducts keyed by which rules survive."""

    def __init__(self, p: Program):
        self.p = p
        d = p.domain
        self._neg = [d.up_mask(r.neg_body) for r in p.rules]
        self._imp = [~d.up_mask(r.pos_body) | d.up_mask(r.head) for r in p.rules]
        self._cache: dict[int, int] = {}

    def models(self, w: int) -> int:
        key = 0
        for i, neg in enumerate(self._neg):
            if not neg >> w & 1:
                key |= 1 << i
        try:
            return self._cache[key]
        except KeyError:
            pass
        m = self.p.domain.full
        for i in bits(key):
            m &= self._imp[i]
        m &= self.p.domain.full
        self._cache[key] = m
        return m


def enumerate_answer_models(p: Program) -> list[int]:
    d = p.domain
    cache = _ReductCache(p)
    return [w for w in range(len(d)) if cache.models(w) & d.down(w)]


def enumerate_min_answer_models(p: Program) -> list[int]:
    d = p.domain
    cache = _ReductCache(p)
    return [w for w in range(len(d)) if cache.models(w) & d.down(w) == 1 << w]


def rule(d: Domain, head: Iterable[str], body: Iterable[str] = (),
         neg: Iterable[str] = ()) -> ExtendedRule:
    """Build a rule from element names; an empty ``body`` means ``{bottom}``."""
    body = list(body)
    pos = d.elements(body) if body else frozenset({d.bottom})
    return ExtendedRule(d.elements(head), pos, d.elements(neg))


def program(d: Domain, rules: Sequence[ExtendedRule]) -> Program:
    return Program(d, tuple(rules))

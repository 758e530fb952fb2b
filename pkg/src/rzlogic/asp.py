"""Classical extended disjunctive programs and the truth-value domain.

The domain of partial truth assignments over a finite variable set ``V``
has one element per consistent literal set, ordered by inclusion, with the
empty set as bottom.  A propositional domain program over it corresponds
rule by rule to a classical program with classical negation ``-p`` and
default negation ``not p``; the checks at the bottom of this module compare
min-answer models on the domain side with brute-force Gelfond-Lifschitz
answer sets on the classical side.

Literal sets are encoded as bitmasks: variable ``i`` owns bit ``2i`` for
``p`` and bit ``2i+1`` for ``-p``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .errors import BoundExceeded, ProgramError
from .poset import BOTTOM_NAME, Domain, bits
from .programs import (ExtendedRule, Program, enumerate_min_answer_models,
                       minimal_models, models_mask, reduct)

DEFAULT_MAX_VARS = 8


@dataclass(frozen=True, order=True)
class Literal:
    var: str
    negated: bool = False

    def complement(self) -> "Literal":
        return Literal(self.var, not self.negated)

    def __str__(self) -> str:
        return ("-" if self.negated else "") + self.var

    @classmethod
    def parse(cls, text: str) -> "Literal":
        text = text.strip()
        if text.startswith("-"):
            return cls(text[1:], True)
        return cls(text)


@dataclass(frozen=True)
class ClassicalRule:
    head: tuple[Literal, ...] = ()
    pos: tuple[Literal, ...] = ()
    neg: tuple[Literal, ...] = ()

    def __str__(self) -> str:
        head = ", ".join(map(str, self.head))
        body = [str(l) for l in self.pos] + [f"not {l}" for l in self.neg]
        if not body:
            return f"{head}." if head else ":- ."
        return f"{head} :- {', '.join(body)}.".lstrip()


@dataclass(frozen=True)
class ClassicalProgram:
    rules: tuple[ClassicalRule, ...] = ()
    variables: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        seen = dict.fromkeys(self.variables)
        for r in self.rules:
            for lit in r.head + r.pos + r.neg:
                seen.setdefault(lit.var)
        object.__setattr__(self, "variables", tuple(seen))

    @property
    def negation_free(self) -> bool:
        return all(not r.neg for r in self.rules)

    def __str__(self) -> str:
        return "\n".join(map(str, self.rules))


@dataclass(frozen=True)
class AnswerSet:
    """A proper literal set, or the inconsistent total set ``V+-``."""

    literals: frozenset[Literal]
    inconsistent: bool = False

    @property
    def kind(self) -> str:
        return "inconsistent-total" if self.inconsistent else "proper"

    def __str__(self) -> str:
        if self.inconsistent:
            return "V+-"
        return "{" + ", ".join(sorted(map(str, self.literals))) + "}"


class LiteralCoder:
    """Bitmask encoding of literal sets over a fixed variable list."""

    def __init__(self, variables: Sequence[str]):
        self.variables = tuple(variables)
        self.pos = {v: i for i, v in enumerate(self.variables)}
        self.n = len(self.variables)
        self.total = (1 << (2 * self.n)) - 1
        self.even = sum(1 << (2 * i) for i in range(self.n))

    def bit(self, lit: Literal) -> int:
        try:
            i = self.pos[lit.var]
        except KeyError:
            raise ProgramError(f"variable {lit.var!r} not declared") from None
        return 1 << (2 * i + lit.negated)

    def encode(self, lits: Iterable[Literal]) -> int:
        m = 0
        for lit in lits:
            m |= self.bit(lit)
        return m

    def decode(self, mask: int) -> frozenset[Literal]:
        return frozenset(Literal(self.variables[b >> 1], bool(b & 1)) for b in bits(mask))

    def consistent(self, mask: int) -> bool:
        return not (mask & (mask >> 1) & self.even)

    def consistent_sets(self) -> list[int]:
        out = []
        for choice in product((0, 1, 2), repeat=self.n):
            m = 0
            for i, c in enumerate(choice):
                if c:
                    m |= 1 << (2 * i + c - 1)
            out.append(m)
        return out

    def name(self, mask: int) -> str:
        if not mask:
            return BOTTOM_NAME
        return "&".join(str(l) for l in sorted(self.decode(mask),
                                               key=lambda l: (self.pos[l.var], l.negated)))


# -- the truth-value domain ------------------------------------------------

@dataclass(frozen=True)
class TVDomain:
    domain: Domain
    coder: LiteralCoder
    masks: tuple[int, ...]
    index_of: dict

    def element(self, lits: Iterable[Literal]) -> int:
        return self.index_of[self.coder.encode(lits)]

    def literals(self, w: int) -> frozenset[Literal]:
        return self.coder.decode(self.masks[w])


@lru_cache(maxsize=32)
def _tv_domain(variables: tuple[str, ...]) -> TVDomain:
    coder = LiteralCoder(variables)
    masks = sorted(coder.consistent_sets(), key=lambda m: (m.bit_count(), _order_key(m)))
    index_of = {m: i for i, m in enumerate(masks)}
    up = []
    for m in masks:
        row = 0
        # supersets of m among consistent sets: extend each unassigned variable
        free = [i for i in range(coder.n) if not (m >> (2 * i)) & 3]
        for choice in product((0, 1, 2), repeat=len(free)):
            s = m
            for i, c in zip(free, choice):
                if c:
                    s |= 1 << (2 * i + c - 1)
            row |= 1 << index_of[s]
        up.append(row)
    names = [coder.name(m) for m in masks]
    d = Domain(names, up, 0, check=False)
    return TVDomain(d, coder, tuple(masks), index_of)


def _order_key(mask: int) -> tuple:
    return tuple(b for b in bits(mask))


def tv_domain(variables: Sequence[str], max_vars: int = DEFAULT_MAX_VARS) -> TVDomain:
    if len(variables) > max_vars:
        raise BoundExceeded(f"truth-value domain limited to {max_vars} variables")
    return _tv_domain(tuple(variables))


# -- classical semantics ---------------------------------------------------

class _Encoded:
    """A classical program with every rule pre-encoded as bitmasks."""

    def __init__(self, p: ClassicalProgram, coder: LiteralCoder):
        self.coder = coder
        self.rules = [(coder.encode(r.head), coder.encode(r.pos), coder.encode(r.neg))
                      for r in p.rules]

    def closed(self, x: int, keep: int | None = None) -> bool:
        for i, (head, pos, _) in enumerate(self.rules):
            if keep is not None and not keep >> i & 1:
                continue
            if pos & ~x == 0 and not head & x:
                return False
        return True

    def alpha(self, keep: int | None = None) -> list[int]:
        """Answer sets (as masks) of the negation-free subprogram ``keep``."""
        closed = [x for x in self.coder.consistent_sets() if self.closed(x, keep)]
        closed.sort(key=int.bit_count)
        minimal: list[int] = []
        for x in closed:
            if not any(y & x == y for y in minimal):
                minimal.append(x)
        if minimal:
            return sorted(minimal)
        if self.closed(self.coder.total, keep):
            return [self.coder.total]
        return []

    def gl_keep(self, x: int) -> int:
        keep = 0
        for i, (_, _, neg) in enumerate(self.rules):
            if not neg & x:
                keep |= 1 << i
        return keep

    def answer_sets(self) -> list[int]:
        cache: dict[int, list[int]] = {}
        out = []
        candidates = self.coder.consistent_sets()
        if self.coder.n:
            candidates.append(self.coder.total)
        for x in candidates:
            keep = self.gl_keep(x)
            if keep not in cache:
                cache[keep] = self.alpha(keep)
            if x in cache[keep]:
                out.append(x)
        return sorted(out)


def _coder_for(p: ClassicalProgram, variables: Sequence[str] | None) -> LiteralCoder:
    return LiteralCoder(p.variables if variables is None else variables)


def _to_answer(coder: LiteralCoder, mask: int) -> AnswerSet:
    if not coder.consistent(mask):
        return AnswerSet(coder.decode(mask), inconsistent=True)
    return AnswerSet(coder.decode(mask))


def closed_by_rules(x: Iterable[Literal], p: ClassicalProgram) -> bool:
    if not p.negation_free:
        raise ProgramError("closed_by_rules expects a program without 'not'")
    x = frozenset(x)
    return all(not set(r.pos) <= x or bool(set(r.head) & x) for r in p.rules)


def alpha(p: ClassicalProgram, variables: Sequence[str] | None = None) -> list[AnswerSet]:
    if not p.negation_free:
        raise ProgramError("alpha expects a program without 'not'")
    coder = _coder_for(p, variables)
    return [_to_answer(coder, m) for m in _Encoded(p, coder).alpha()]


def gl_transform(p: ClassicalProgram, x: Iterable[Literal]) -> ClassicalProgram:
    x = frozenset(x)
    kept = [ClassicalRule(r.head, r.pos) for r in p.rules if not set(r.neg) & x]
    return ClassicalProgram(tuple(kept), p.variables)


def answer_sets(p: ClassicalProgram, variables: Sequence[str] | None = None) -> list[AnswerSet]:
    coder = _coder_for(p, variables)
    return [_to_answer(coder, m) for m in _Encoded(p, coder).answer_sets()]


# -- association between domain and classical programs ---------------------

def associate_inverse(p: ClassicalProgram, tv: TVDomain) -> Program:
    """Domain program over ``tv`` associated with a classical program."""
    rules = []
    coder = tv.coder
    for r in p.rules:
        body = coder.encode(r.pos)
        if not coder.consistent(body):
            raise ProgramError(f"positive body of '{r}' is not a consistent literal set")
        head = frozenset(tv.index_of[coder.bit(l)] for l in r.head)
        neg = frozenset(tv.index_of[coder.bit(l)] for l in r.neg)
        rules.append(ExtendedRule(head, frozenset({tv.index_of[body]}), neg))
    return Program(tv.domain, tuple(rules))


def associate(p: Program, tv: TVDomain) -> ClassicalProgram:
    """Classical program associated with a propositional domain program."""
    d = tv.domain
    out = []
    for r in p.rules:
        if len(r.pos_body) != 1:
            raise ProgramError("positive body of a propositional rule must be a singleton")
        if d.bottom in r.head:
            raise ProgramError("bottom may not occur in a rule head")
        if d.bottom in r.neg_body:
            raise ProgramError("bottom may not occur in a default-negated clause")
        for x in r.head | r.neg_body:
            if tv.masks[x].bit_count() != 1:
                raise ProgramError(f"{d.name(x)!r} is not an atom")
        (body,) = r.pos_body

        def lits(xs):
            return tuple(sorted((next(iter(tv.literals(x))) for x in xs),
                                key=lambda l: (tv.coder.pos[l.var], l.negated)))

        pos = tuple(sorted(tv.literals(body), key=lambda l: (tv.coder.pos[l.var], l.negated)))
        out.append(ClassicalRule(lits(r.head), pos, lits(r.neg_body)))
    return ClassicalProgram(tuple(out), tv.coder.variables)


def atoms_of(tv: TVDomain, w: int) -> frozenset[Literal]:
    """``w' = {p | w |= {p}}``; in the truth-value domain this is ``w`` itself."""
    d = tv.domain
    dw = d.down(w)
    return frozenset(lit for lit in tv.literals(w)
                     if dw >> tv.index_of[tv.coder.bit(lit)] & 1)


# -- theorem checks --------------------------------------------------------

@dataclass
class TheoremReport:
    name: str
    checks: dict[str, bool] = field(default_factory=dict)
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def check(self, key: str, ok: bool, why: str = "") -> None:
        self.checks[key] = self.checks.get(key, True) and ok
        if not ok and self.counterexample is None:
            self.counterexample = f"{key}: {why}"


def _rule_sets(p: ClassicalProgram) -> list:
    return [(frozenset(r.head), frozenset(r.pos), frozenset(r.neg)) for r in p.rules]


def _fmt(coder: LiteralCoder, mask: int) -> str:
    if not coder.consistent(mask):
        return "V+-"
    return "{" + ", ".join(map(str, sorted(coder.decode(mask)))) + "}"


def verify_theorem1(p: ClassicalProgram, variables: Sequence[str] | None = None,
                    max_vars: int = DEFAULT_MAX_VARS) -> TheoremReport:
    """Min-answer models over the truth-value domain versus answer sets."""
    variables = p.variables if variables is None else tuple(variables)
    tv = tv_domain(variables, max_vars)
    coder, d = tv.coder, tv.domain
    rep = TheoremReport("theorem1")
    dom_p = associate_inverse(p, tv)
    enc = _Encoded(p, coder)

    min_answer = enumerate_min_answer_models(dom_p)
    answers = enc.answer_sets()
    answer_set = set(answers)
    rep.details = {"min_answer_models": [d.name(w) for w in min_answer],
                   "answer_sets": [_fmt(coder, x) for x in answers]}

    # the associated program of a reduct is the Gelfond-Lifschitz transform
    neg_sat = [d.up_mask(r.neg_body) for r in dom_p.rules]
    seen: set[int] = set()
    for w in range(len(d)):
        dom_keep = 0
        for i, m in enumerate(neg_sat):
            if not m >> w & 1:
                dom_keep |= 1 << i
        keep = enc.gl_keep(tv.masks[w])
        rep.check("reduct_commutes", dom_keep == keep,
                  f"(P/w)' != P'/w' at w={d.name(w)}")
        if keep in seen:
            continue
        seen.add(keep)
        red = reduct(dom_p, w)
        gl = gl_transform(p, tv.literals(w))
        rep.check("reduct_commutes", _rule_sets(associate(red, tv)) == _rule_sets(gl),
                  f"(P/w)' != P'/w' at w={d.name(w)}")
        _check_negation_free_claims(rep, tv, red, enc, keep, enc.alpha(keep))

    for w in min_answer:
        wp = coder.encode(atoms_of(tv, w))
        rep.check("min_answer_to_answer_set", wp in answer_set,
                  f"min-answer model {d.name(w)} but w' is not an answer set")
    min_set = set(min_answer)
    for x in answers:
        if coder.consistent(x):
            rep.check("answer_set_to_min_answer", tv.index_of[x] in min_set,
                      f"answer set {_fmt(coder, x)} but its join is not a min-answer model")
    if coder.n and coder.total in answer_set:
        rep.check("inconsistent_answer_set", answers == [coder.total] and not min_answer,
                  "V+- is an answer set but not the only one or min-answer models exist")
    else:
        rep.checks.setdefault("inconsistent_answer_set", True)
    rep.checks.setdefault("min_answer_to_answer_set", True)
    rep.checks.setdefault("answer_set_to_min_answer", True)
    return rep


def _check_negation_free_claims(rep: TheoremReport, tv: TVDomain, q: Program,
                                enc: _Encoded, keep: int, alpha_q: list[int]) -> None:
    """The four intermediate claims for a negation-free pair ``Q``, ``Q'``."""
    coder, d = tv.coder, tv.domain
    mods = models_mask(q)
    minimal = d.minimal_mask(mods)
    alpha_set = set(alpha_q)
    for v in bits(minimal):
        vp = tv.masks[v]
        rep.check("claim_closed", coder.consistent(vp) and enc.closed(vp, keep),
                  f"minimal model {d.name(v)} of a reduct gives a non-closed v'")
        rep.check("claim_min_to_answer_set", vp in alpha_set,
                  f"minimal model {d.name(v)} of a reduct gives v' outside alpha")
    for x in alpha_q:
        if not coder.consistent(x):
            continue
        xi = tv.index_of[x]
        rep.check("claim_join_answer_model", bool(mods & d.down(xi)),
                  f"join of {_fmt(coder, x)} is not an answer model of a reduct")
        rep.check("claim_join_min_answer", bool(minimal >> xi & 1),
                  f"join of {_fmt(coder, x)} is not a minimal model of a reduct")


def verify_theorem2(p: ClassicalProgram, variables: Sequence[str] | None = None,
                    max_vars: int = DEFAULT_MAX_VARS) -> TheoremReport:
    """Minimal models of a negation-free program versus minimally closed sets."""
    if not p.negation_free:
        raise ProgramError("minimal-model check needs a program without 'not'")
    variables = p.variables if variables is None else tuple(variables)
    tv = tv_domain(variables, max_vars)
    coder, d = tv.coder, tv.domain
    rep = TheoremReport("theorem2")
    dom_p = associate_inverse(p, tv)
    mins = minimal_models(dom_p)
    closed = _Encoded(p, coder).alpha()
    closed_set = set(closed)
    rep.details = {"minimal_models": [d.name(w) for w in mins],
                   "minimally_closed": [_fmt(coder, x) for x in closed]}
    for w in mins:
        wp = coder.encode(atoms_of(tv, w))
        rep.check("minimal_model_to_closed", wp in closed_set,
                  f"minimal model {d.name(w)} but w' is not minimally closed")
    min_set = set(mins)
    for x in closed:
        if coder.consistent(x):
            rep.check("closed_to_minimal_model", tv.index_of[x] in min_set,
                      f"{_fmt(coder, x)} minimally closed but its join is not a minimal model")
    if coder.n and coder.total in closed_set:
        rep.check("inconsistent_no_models", closed == [coder.total] and models_mask(dom_p) == 0,
                  "V+- minimally closed but the domain program has models")
    for key in ("minimal_model_to_closed", "closed_to_minimal_model", "inconsistent_no_models"):
        rep.checks.setdefault(key, True)
    return rep

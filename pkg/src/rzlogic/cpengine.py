"""Clause propagation (hyperresolution) and its consequence operator.

This is a syntactic oracle for ``cons(P)`` on tiny domains.  Theories are
stored extensionally, as the full set of member clauses (bitmasks over the
domain), and every step recomputes the logical closure of the derived
clauses.

The propagation rule takes premises ``X_1..X_n`` from the theory, one
selected element ``a_i`` in each, and a rule ``Y <- Z`` such that the
minimal upper bounds of the selected elements entail ``Z``; it concludes
``Y | union(X_i - {a_i})``.

Enumerating premise tuples literally is hopeless even at eight elements,
so the engine exploits that an extensional closed theory is closed under
clause supersets.  For a fixed set ``S`` of selected elements the residues
``X - {a}`` available for ``a`` form a family that is upward closed inside
the subsets of ``D - {a}``; the conclusions for ``S`` are then generated
exactly by the unions of minimal residues.  Picking the same element from
two premises only enlarges a residue and adds nothing new.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .errors import BoundExceeded
from .logic import all_sat_masks
from .poset import Domain, bits, to_mask
from .programs import Program, _require_negation_free

DEFAULT_MAX_DOMAIN = 12


@dataclass(frozen=True)
class ExtensionalTheory:
    domain: Domain
    clauses: frozenset[int]

    def __contains__(self, clause_mask: int) -> bool:
        return clause_mask in self.clauses

    def __len__(self) -> int:
        return len(self.clauses)

    def __le__(self, other: "ExtensionalTheory") -> bool:
        return self.clauses <= other.clauses


def _check_bound(d: Domain, max_domain: int) -> None:
    if len(d) > max_domain:
        raise BoundExceeded(
            f"extensional engine limited to {max_domain} elements, domain has {len(d)}")


def _minimize(family) -> list[int]:
    out: list[int] = []
    for c in sorted(set(family), key=lambda m: (m.bit_count(), m)):
        if not any(k & c == k for k in out):
            out.append(c)
    return out


class CPEngine:
    """Runs the propagation rule and the operator over one domain."""

    def __init__(self, domain: Domain, max_domain: int = DEFAULT_MAX_DOMAIN,
                 max_premises: int | None = None):
        _check_bound(domain, max_domain)
        self.domain = domain
        self.max_premises = len(domain) if max_premises is None else max_premises
        self.sat = all_sat_masks(domain)

    # -- closed theories --------------------------------------------------

    def from_models(self, models: int) -> ExtensionalTheory:
        return ExtensionalTheory(
            self.domain, frozenset(c for c, s in enumerate(self.sat) if models & ~s == 0))

    def models_of(self, clauses) -> int:
        m = self.domain.full
        for c in clauses:
            m &= self.sat[c]
        return m

    def closure(self, clauses) -> ExtensionalTheory:
        """Logical closure of an explicit clause set."""
        return self.from_models(self.models_of(clauses))

    def initial(self) -> ExtensionalTheory:
        """``cons({{bottom}})``: every clause containing the bottom."""
        return self.closure([1 << self.domain.bottom])

    # -- propagation ------------------------------------------------------

    def _residues(self, theory: ExtensionalTheory) -> dict[int, list[int]]:
        out = {}
        for a in range(len(self.domain)):
            bit = 1 << a
            fam = [c & ~bit for c in theory.clauses if c & bit]
            if fam:
                out[a] = _minimize(fam)
        return out

    def generators(self, p: Program, theory: ExtensionalTheory) -> Iterator[tuple[int, int | None, bool]]:
        """Yield ``(clause, forbidden, exact)`` describing all conclusions.

        ``exact`` marks a single conclusion.  Otherwise the conclusions are
        every superset of ``clause`` that avoids ``forbidden`` (when not None).
        """
        _require_negation_free(p)
        d = self.domain
        rules = [(d.up_mask(r.pos_body), to_mask(r.head)) for r in p.rules]
        residues = self._residues(theory)
        selectable = sorted(residues)
        # n = 0: mub of nothing is {bottom}
        for body_sat, head in rules:
            if body_sat >> d.bottom & 1:
                yield head, None, True
        products = {0: [0]}
        for size in range(1, min(self.max_premises, len(selectable)) + 1):
            nxt = {}
            for combo in combinations(selectable, size):
                key = 0
                for a in combo:
                    key |= 1 << a
                last = combo[-1]
                prev = products[key & ~(1 << last)]
                unions = _minimize(u | r for u in prev for r in residues[last])
                nxt[key] = unions
                mub = d.minimal_mask(d.upper_bounds_mask(combo))
                for body_sat, head in rules:
                    if mub & ~body_sat:
                        continue
                    for u in unions:
                        g = head | u
                        if size == 1 and not head >> last & 1:
                            yield g, last, False
                        else:
                            yield g, None, False
            products = nxt

    def consequences(self, p: Program, theory: ExtensionalTheory) -> frozenset[int]:
        """Every CP(P)-consequence of ``theory`` as a clause bitmask."""
        full = self.domain.full
        out = set()
        for g, forbidden, exact in self.generators(p, theory):
            if exact:
                out.add(g)
                continue
            free = full & ~g
            if forbidden is not None:
                free &= ~(1 << forbidden)
            sub = free
            while True:
                out.add(g | sub)
                if sub == 0:
                    break
                sub = (sub - 1) & free
        return frozenset(out)

    def step(self, p: Program, theory: ExtensionalTheory) -> ExtensionalTheory:
        models = self.domain.full
        for g, _, _ in self.generators(p, theory):
            models &= self.sat[g]
        return self.from_models(models)

    def trace(self, p: Program) -> list[ExtensionalTheory]:
        """``[T_P^0, T_P^1, ...]`` up to and including the fixpoint."""
        stages = [self.initial()]
        while True:
            nxt = self.step(p, stages[-1])
            if nxt == stages[-1]:
                return stages
            stages.append(nxt)

    def fixpoint(self, p: Program) -> ExtensionalTheory:
        return self.trace(p)[-1]


def cp_consequences(p: Program, theory: ExtensionalTheory,
                    max_domain: int = DEFAULT_MAX_DOMAIN,
                    max_premises: int | None = None) -> frozenset[int]:
    return CPEngine(p.domain, max_domain, max_premises).consequences(p, theory)


def tp_step(p: Program, theory: ExtensionalTheory,
            max_domain: int = DEFAULT_MAX_DOMAIN) -> ExtensionalTheory:
    return CPEngine(p.domain, max_domain).step(p, theory)


def tp_fixpoint(p: Program, max_domain: int = DEFAULT_MAX_DOMAIN) -> ExtensionalTheory:
    return CPEngine(p.domain, max_domain).fixpoint(p)

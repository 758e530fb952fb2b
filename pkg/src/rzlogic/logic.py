"""Clausal logic over a finite domain.

A clause is a finite set of elements read disjunctively: ``w`` satisfies
``X`` when some member of ``X`` lies below ``w``.  Clauses are
``frozenset[int]`` and theories are any iterable of clauses.  A logically
closed theory is represented by its (upward-closed) set of models.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .poset import Domain, bits, to_mask

Clause = frozenset
Theory = Iterable[frozenset]


def sat_mask(d: Domain, clause: Iterable[int]) -> int:
    """Bitmask of all elements satisfying ``clause``."""
    return d.up_mask(clause)


def theory_mask(d: Domain, theory: Theory) -> int:
    m = d.full
    for clause in theory:
        m &= d.up_mask(clause)
    return m


def satisfies(d: Domain, w: int, clause: Iterable[int]) -> bool:
    dw = d.down(w)
    return any(dw >> x & 1 for x in clause)


def models_theory(d: Domain, w: int, theory: Theory) -> bool:
    return all(satisfies(d, w, clause) for clause in theory)


def model_set(d: Domain, theory: Theory) -> frozenset[int]:
    return d.members(theory_mask(d, theory))


def entails(d: Domain, theory: Theory, clause: Iterable[int]) -> bool:
    """``theory |= clause``, decided on the minimal models only."""
    target = d.up_mask(clause)
    minimal = d.minimal_mask(theory_mask(d, theory))
    return minimal & ~target == 0


def entails_full_scan(d: Domain, theory: Theory, clause: Iterable[int]) -> bool:
    theory = list(theory)
    clause = list(clause)
    return all(satisfies(d, w, clause)
               for w in range(len(d)) if models_theory(d, w, theory))


def smyth_leq(d: Domain, x: Iterable[int], y: Iterable[int]) -> bool:
    """Smyth preorder: every member of ``y`` is above some member of ``x``."""
    above_x = d.up_mask(x)
    return all(above_x >> e & 1 for e in y)


def canonical_clause(d: Domain, clause: Iterable[int]) -> frozenset[int]:
    return d.minimal_elements(clause)


def is_consistent(d: Domain, theory: Theory) -> bool:
    return theory_mask(d, theory) != 0


@dataclass(frozen=True)
class ClosedTheory:
    """A logically closed theory, stored as its upward-closed model set."""

    domain: Domain
    mask: int

    def __post_init__(self):
        if self.domain.up_mask(bits(self.mask)) != self.mask:
            raise ValueError("model set of a closed theory must be upward closed")

    @property
    def model_set(self) -> frozenset[int]:
        return self.domain.members(self.mask)

    @property
    def minimal_models(self) -> frozenset[int]:
        return self.domain.members(self.domain.minimal_mask(self.mask))

    @property
    def consistent(self) -> bool:
        return self.mask != 0

    def contains(self, clause: Iterable[int]) -> bool:
        return self.mask & ~self.domain.up_mask(clause) == 0

    def __le__(self, other: ClosedTheory) -> bool:
        # theory inclusion is reverse model-set inclusion
        return other.mask & ~self.mask == 0

    def clauses(self) -> frozenset[int]:
        """All member clauses as bitmasks over the domain (exponential)."""
        return frozenset(clause_masks_containing(self.domain, self.mask))


def close(d: Domain, theory: Theory) -> ClosedTheory:
    return ClosedTheory(d, theory_mask(d, theory))


def closed_contains(ct: ClosedTheory, clause: Iterable[int]) -> bool:
    return ct.contains(clause)


def all_sat_masks(d: Domain) -> list[int]:
    """``sat[c]`` for every clause bitmask ``c`` over ``d`` (2**|d| entries)."""
    n = len(d)
    sat = [0] * (1 << n)
    for c in range(1, 1 << n):
        low = c & -c
        sat[c] = sat[c ^ low] | d.up(low.bit_length() - 1)
    return sat


def clause_masks_containing(d: Domain, models: int, sat: list[int] | None = None):
    """Every clause bitmask satisfied by all of ``models``."""
    if sat is None:
        sat = all_sat_masks(d)
    return [c for c, s in enumerate(sat) if models & ~s == 0]


def clause_from_mask(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


def clause_to_mask(clause: Iterable[int]) -> int:
    return to_mask(clause)

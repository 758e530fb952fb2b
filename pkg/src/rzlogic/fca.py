"""Formal contexts, concepts and the Galois subhierarchy.

The subhierarchy of attribute and object concepts, turned upside down and
given a bottom if needed, is a finite domain.  On that domain concept
closure of an attribute set coincides with entailment between singleton
clauses, which :func:`verify_theorem3` checks subset by subset.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BoundExceeded, DomainError, ParseError
from .logic import entails
from .poset import BOTTOM_NAME, Domain, bits, transitive_closure

DEFAULT_MAX_ATTRIBUTES = 16
EXHAUSTIVE_LIMIT = 12


@dataclass(frozen=True)
class FormalContext:
    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    rows: tuple[int, ...]  # attribute bitmask per object

    def __post_init__(self):
        if len(set(self.objects)) != len(self.objects):
            raise ParseError("object names must be distinct")
        if len(set(self.attributes)) != len(self.attributes):
            raise ParseError("attribute names must be distinct")
        clash = set(self.objects) & set(self.attributes)
        if clash:
            raise ParseError(f"objects and attributes share names: {sorted(clash)}")
        if len(self.rows) != len(self.objects):
            raise ParseError("one incidence row per object required")

    @classmethod
    def from_matrix(cls, objects: Sequence[str], attributes: Sequence[str],
                    incidence: Sequence[Sequence[bool]]) -> "FormalContext":
        rows = []
        for row in incidence:
            if len(row) != len(attributes):
                raise ParseError("incidence row has wrong width")
            rows.append(sum(1 << j for j, x in enumerate(row) if x))
        return cls(tuple(objects), tuple(attributes), tuple(rows))

    @classmethod
    def from_sets(cls, objects: Sequence[str], attributes: Sequence[str],
                  intents: dict) -> "FormalContext":
        col = {m: j for j, m in enumerate(attributes)}
        rows = tuple(sum(1 << col[m] for m in intents.get(g, ())) for g in objects)
        return cls(tuple(objects), tuple(attributes), rows)

    def matrix(self) -> list[list[bool]]:
        return [[bool(r >> j & 1) for j in range(len(self.attributes))] for r in self.rows]

    def incident(self, g: str, m: str) -> bool:
        return bool(self.rows[self.objects.index(g)] >> self.attributes.index(m) & 1)

    @property
    def columns(self) -> tuple[int, ...]:
        """Object bitmask per attribute."""
        cols = [0] * len(self.attributes)
        for i, r in enumerate(self.rows):
            for j in bits(r):
                cols[j] |= 1 << i
        return tuple(cols)

    # -- masks and names --------------------------------------------------

    def attr_mask(self, names: Iterable[str]) -> int:
        m = 0
        for n in names:
            try:
                m |= 1 << self.attributes.index(n)
            except ValueError:
                raise DomainError(f"unknown attribute {n!r}") from None
        return m

    def obj_mask(self, names: Iterable[str]) -> int:
        m = 0
        for n in names:
            try:
                m |= 1 << self.objects.index(n)
            except ValueError:
                raise DomainError(f"unknown object {n!r}") from None
        return m

    def attr_names(self, mask: int) -> frozenset[str]:
        return frozenset(self.attributes[j] for j in bits(mask))

    def obj_names(self, mask: int) -> frozenset[str]:
        return frozenset(self.objects[i] for i in bits(mask))

    # -- derivation operators on masks ------------------------------------

    def intent_of(self, objs: int) -> int:
        m = (1 << len(self.attributes)) - 1
        for i in bits(objs):
            m &= self.rows[i]
        return m

    def extent_of(self, attrs: int) -> int:
        g = (1 << len(self.objects)) - 1
        for i, r in enumerate(self.rows):
            if attrs & ~r:
                g &= ~(1 << i)
        return g

    def closure_mask(self, attrs: int) -> int:
        return self.intent_of(self.extent_of(attrs))


def derive_objects(ctx: FormalContext, objects: Iterable[str]) -> frozenset[str]:
    """``A'``: attributes shared by all given objects."""
    return ctx.attr_names(ctx.intent_of(ctx.obj_mask(objects)))


def derive_attrs(ctx: FormalContext, attributes: Iterable[str]) -> frozenset[str]:
    """``B'``: objects having all given attributes."""
    return ctx.obj_names(ctx.extent_of(ctx.attr_mask(attributes)))


def closure(ctx: FormalContext, attributes: Iterable[str]) -> frozenset[str]:
    return ctx.attr_names(ctx.closure_mask(ctx.attr_mask(attributes)))


@dataclass(frozen=True, order=True)
class Concept:
    extent: frozenset[str]
    intent: frozenset[str]

    def leq(self, other: "Concept") -> bool:
        return self.extent <= other.extent


def make_concept(ctx: FormalContext, extent: Iterable[str], intent: Iterable[str]) -> Concept:
    extent, intent = frozenset(extent), frozenset(intent)
    if derive_objects(ctx, extent) != intent or derive_attrs(ctx, intent) != extent:
        raise ValueError("not a formal concept")
    return Concept(extent, intent)


def _concept_masks(ctx: FormalContext, max_attributes: int) -> list[tuple[int, int]]:
    n = len(ctx.attributes)
    if n > max_attributes:
        raise BoundExceeded(f"concept enumeration limited to {max_attributes} attributes")
    seen = {}
    for b in range(1 << n):
        ext = ctx.extent_of(b)
        if ext not in seen:
            seen[ext] = ctx.intent_of(ext)
    return sorted(seen.items(), key=lambda t: (t[0].bit_count(), t[0]))


def all_concepts(ctx: FormalContext, max_attributes: int = DEFAULT_MAX_ATTRIBUTES) -> list[Concept]:
    """Every concept ``(B', B'')``, ordered by extent size then extent bits."""
    return [Concept(ctx.obj_names(e), ctx.attr_names(i))
            for e, i in _concept_masks(ctx, max_attributes)]


# -- Galois subhierarchy ---------------------------------------------------

@dataclass(frozen=True)
class AOCPoset:
    """Attribute and object concepts; names sharing a concept share a node."""

    context: FormalContext
    labels: tuple[tuple[str, ...], ...]
    extents: tuple[int, ...]  # object bitmasks
    intents: tuple[int, ...]  # attribute bitmasks
    node_of: dict = field(compare=False)

    def __len__(self) -> int:
        return len(self.labels)

    def leq(self, i: int, j: int) -> bool:
        return self.extents[i] & ~self.extents[j] == 0

    def node(self, name: str) -> int:
        try:
            return self.node_of[name]
        except KeyError:
            raise DomainError(f"unknown object or attribute {name!r}") from None

    def concept(self, i: int) -> Concept:
        ctx = self.context
        return Concept(ctx.obj_names(self.extents[i]), ctx.attr_names(self.intents[i]))


def aoc_poset(ctx: FormalContext) -> AOCPoset:
    """Nodes in first-appearance order: attributes, then objects."""
    by_extent: dict[int, int] = {}
    labels: list[list[str]] = []
    extents: list[int] = []
    intents: list[int] = []
    node_of = {}

    def add(name, ext):
        if ext not in by_extent:
            by_extent[ext] = len(labels)
            labels.append([])
            extents.append(ext)
            intents.append(ctx.intent_of(ext))
        k = by_extent[ext]
        labels[k].append(name)
        node_of[name] = k

    cols = ctx.columns
    for j, m in enumerate(ctx.attributes):
        add(m, cols[j])
    for i, g in enumerate(ctx.objects):
        add(g, ctx.extent_of(ctx.rows[i]))
    return AOCPoset(ctx, tuple(map(tuple, labels)), tuple(extents), tuple(intents), node_of)


@dataclass(frozen=True)
class Embedding:
    """Order-reversing injection of AOC nodes into a domain."""

    aoc: AOCPoset
    domain: Domain
    iota: tuple[int, ...]  # domain element per AOC node

    def of(self, name: str) -> int:
        return self.iota[self.aoc.node(name)]


def to_domain(aoc: AOCPoset) -> tuple[Domain, Embedding]:
    """Order dual of the AOC poset, with a fresh bottom if none exists.

    Each element is named by the first label of its node; the remaining
    labels become aliases.
    """
    n = len(aoc)
    pairs = [(j, i) for i in range(n) for j in range(n) if i != j and aoc.leq(i, j)]
    up = transitive_closure(n, pairs)
    names = [lab[0] for lab in aoc.labels]
    aliases = {a: k for k, lab in enumerate(aoc.labels) for a in lab[1:]}
    full = (1 << n) - 1
    least = [i for i in range(n) if up[i] == full]
    synthetic = not least
    if synthetic:
        if BOTTOM_NAME in names or BOTTOM_NAME in aliases:
            raise DomainError(f"cannot add {BOTTOM_NAME!r}: name already used")
        names.append(BOTTOM_NAME)
        up.append((1 << (n + 1)) - 1)
        bottom = n
    else:
        bottom = least[0]
    d = Domain(names, up, bottom, aliases, synthetic_bottom=synthetic)
    return d, Embedding(aoc, d, tuple(range(n)))


def check_embedding(emb: Embedding) -> dict[str, bool]:
    """Mechanical check of the hypotheses on ``iota``.

    Coverage ignores an added bottom, the only element outside the image
    when the subhierarchy has no greatest node.
    """
    aoc, d, iota = emb.aoc, emb.domain, emb.iota
    n = len(aoc)
    reversing = all(d.leq(iota[j], iota[i]) == aoc.leq(i, j)
                    for i in range(n) for j in range(n))
    injective = len(set(iota)) == n
    image = set(iota)
    uncovered = set(range(len(d))) - image
    if d.synthetic_bottom:
        uncovered.discard(d.bottom)
    return {"order_reversing": reversing, "injective": injective, "covers": not uncovered}


def closure_via_entailment(ctx: FormalContext, attributes: Iterable[str],
                           embedding: Embedding | None = None) -> frozenset[str]:
    """Attributes ``m`` with ``{{i(m_1)}, ..., {i(m_n)}} |= {i(m)}``."""
    if embedding is None:
        _, embedding = to_domain(aoc_poset(ctx))
    d = embedding.domain
    theory = [frozenset({embedding.of(m)}) for m in attributes]
    return frozenset(m for m in ctx.attributes
                     if entails(d, theory, frozenset({embedding.of(m)})))


@dataclass
class Theorem3Report:
    checked: int = 0
    exhaustive: bool = True
    embedding: dict = field(default_factory=dict)
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None and all(self.embedding.values())


def verify_theorem3(ctx: FormalContext, exhaustive: bool | None = None,
                    samples: int = 4096, seed: int = 0) -> Theorem3Report:
    """Compare ``A''`` with entailment-based closure for attribute subsets.

    All subsets are checked when there are at most 12 attributes (or when
    ``exhaustive`` is forced); otherwise ``samples`` random subsets are drawn.
    """
    aoc = aoc_poset(ctx)
    d, emb = to_domain(aoc)
    rep = Theorem3Report(embedding=check_embedding(emb))
    n = len(ctx.attributes)
    if exhaustive is None:
        exhaustive = n <= EXHAUSTIVE_LIMIT
    rep.exhaustive = exhaustive
    if exhaustive:
        subsets = range(1 << n)
    else:
        rng = random.Random(seed)
        subsets = [rng.getrandbits(n) if n else 0 for _ in range(samples)]
    iota = [emb.of(m) for m in ctx.attributes]
    for a in subsets:
        lhs = ctx.closure_mask(a)
        theory = [frozenset({iota[j]}) for j in bits(a)]
        rhs = 0
        for j in range(n):
            if entails(d, theory, frozenset({iota[j]})):
                rhs |= 1 << j
        rep.checked += 1
        if lhs != rhs:
            rep.counterexample = {
                "attributes": sorted(ctx.attr_names(a)),
                "closure": sorted(ctx.attr_names(lhs)),
                "via_entailment": sorted(ctx.attr_names(rhs)),
            }
            break
    return rep


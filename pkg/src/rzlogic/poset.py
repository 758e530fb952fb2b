"""Finite partial orders with a least element.

Every finite poset with bottom is treated as a coherent algebraic cpo in
which all elements are compact.  Elements are plain ``int`` indices in
construction order; element sets travel as ``frozenset[int]`` at the API
surface and as ``int`` bitmasks (bit ``i`` set <=> element ``i`` present)
internally.  The order is stored densely: ``up[i]`` is the bitmask of all
``j`` with ``i <= j`` and ``down[i]`` the bitmask of all ``j <= i``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DomainError

BOTTOM_NAME = "_bot_"


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(xs: Iterable[int]) -> int:
    m = 0
    for x in xs:
        m |= 1 << x
    return m


class Domain:
    """An immutable finite poset with bottom.

    Use :func:`build_domain` (or a parser) rather than calling the
    constructor, which expects an already transitively closed order.
    """

    __slots__ = ("names", "aliases", "bottom", "synthetic_bottom",
                 "_up", "_down", "_index", "full")

    def __init__(self, names: Sequence[str], up: Sequence[int], bottom: int,
                 aliases: Mapping[str, int] | None = None,
                 synthetic_bottom: bool = False, check: bool = True):
        self.names = tuple(names)
        self._up = tuple(up)
        n = len(self.names)
        if len(self._up) != n:
            raise DomainError("order rows do not match element count")
        if len(set(self.names)) != n:
            raise DomainError("element names must be distinct")
        down = [0] * n
        for i, row in enumerate(self._up):
            for j in bits(row):
                down[j] |= 1 << i
        self._down = tuple(down)
        self.full = (1 << n) - 1
        self.bottom = bottom
        self.synthetic_bottom = synthetic_bottom
        self._index = {name: i for i, name in enumerate(self.names)}
        self.aliases = dict(aliases or {})
        for alias, target in self.aliases.items():
            if alias in self._index:
                raise DomainError(f"alias {alias!r} clashes with an element name")
            if not 0 <= target < n:
                raise DomainError(f"alias {alias!r} points outside the domain")
        if check:
            self._validate()

    def _validate(self) -> None:
        n = len(self.names)
        if n == 0:
            raise DomainError("a domain needs at least one element")
        for i in range(n):
            row = self._up[i]
            if not row >> i & 1:
                raise DomainError(f"order is not reflexive at {self.names[i]!r}")
            for j in bits(row):
                if j != i and self._up[j] >> i & 1:
                    raise DomainError(
                        f"cycle between {self.names[i]!r} and {self.names[j]!r}")
                if self._up[j] & ~row:
                    raise DomainError("order is not transitive")
        if self._up[self.bottom] != self.full:
            raise DomainError(f"{self.names[self.bottom]!r} is not below every element")

    # -- naming -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"Domain({len(self)} elements, bottom={self.names[self.bottom]!r})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Domain) and self.names == other.names
                and self._up == other._up and self.bottom == other.bottom
                and self.aliases == other.aliases)

    def __hash__(self) -> int:
        return hash((self.names, self._up, self.bottom))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            pass
        try:
            return self.aliases[name]
        except KeyError:
            raise DomainError(f"unknown element {name!r}") from None

    def name(self, i: int) -> str:
        return self.names[i]

    def labels(self, i: int) -> list[str]:
        """Primary name followed by all aliases of element ``i``."""
        return [self.names[i]] + sorted(a for a, t in self.aliases.items() if t == i)

    def elements(self, names: Iterable[str]) -> frozenset[int]:
        return frozenset(self.index(n) for n in names)

    def sorted_names(self, xs: Iterable[int]) -> list[str]:
        return [self.names[i] for i in sorted(xs)]

    # -- order queries ----------------------------------------------------

    def up(self, x: int) -> int:
        return self._up[x]

    def down(self, x: int) -> int:
        return self._down[x]

    def leq(self, x: int, y: int) -> bool:
        return bool(self._up[x] >> y & 1)

    def members(self, mask: int) -> frozenset[int]:
        return frozenset(bits(mask))

    def up_mask(self, xs: Iterable[int]) -> int:
        m = 0
        for x in xs:
            m |= self._up[x]
        return m

    def minimal_mask(self, mask: int) -> int:
        out = 0
        for x in bits(mask):
            if self._down[x] & mask == 1 << x:
                out |= 1 << x
        return out

    def upper_bounds_mask(self, xs: Iterable[int]) -> int:
        m = self.full
        for x in xs:
            m &= self._up[x]
        return m

    def upward_closure(self, xs: Iterable[int]) -> frozenset[int]:
        return self.members(self.up_mask(xs))

    def minimal_elements(self, xs: Iterable[int]) -> frozenset[int]:
        return self.members(self.minimal_mask(to_mask(xs)))

    def mub(self, xs: Iterable[int]) -> frozenset[int]:
        """Minimal upper bounds; ``mub(())`` is ``{bottom}``, empty means inconsistent."""
        return self.members(self.minimal_mask(self.upper_bounds_mask(xs)))

    def consistent_pair(self, x: int, y: int) -> bool:
        return bool(self._up[x] & self._up[y])

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(x, y)`` with ``x`` covered by ``y``."""
        out = []
        for x in range(len(self)):
            strict = self._up[x] & ~(1 << x)
            for y in bits(strict):
                between = strict & self._down[y] & ~(1 << y)
                if not between:
                    out.append((x, y))
        return out


def transitive_closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    """Reflexive-transitive closure as up-set bitmasks (Warshall on bit rows)."""
    up = [1 << i for i in range(n)]
    for x, y in pairs:
        up[x] |= 1 << y
    for k in range(n):
        bk = 1 << k
        row_k = up[k]
        for i in range(n):
            if up[i] & bk:
                up[i] |= row_k
    return up


def build_domain(elements: Sequence[str], order_pairs: Iterable[tuple[str, str]],
                 auto_bottom: bool = False, bottom: str | None = None,
                 aliases: Mapping[str, str] | None = None) -> Domain:
    """Build a Domain from names and arbitrary ``(x, y)`` pairs meaning x <= y.

    With ``auto_bottom`` a fresh ``_bot_`` element is appended below
    everything when no unique least element exists.  ``bottom``, if given,
    must name the least element.
    """
    names = list(elements)
    if len(set(names)) != len(names):
        raise DomainError("element names must be distinct")
    index = {name: i for i, name in enumerate(names)}

    def lookup(name):
        try:
            return index[name]
        except KeyError:
            raise DomainError(f"unknown element {name!r}") from None

    pairs = [(lookup(x), lookup(y)) for x, y in order_pairs]
    n = len(names)
    up = transitive_closure(n, pairs)
    for i in range(n):
        for j in bits(up[i] & ~(1 << i)):
            if up[j] >> i & 1:
                raise DomainError(f"cycle between {names[i]!r} and {names[j]!r}")
    full = (1 << n) - 1
    least = [i for i in range(n) if up[i] == full]
    synthetic = False
    if bottom is not None:
        bot = lookup(bottom)
        if up[bot] != full:
            raise DomainError(f"declared bottom {bottom!r} is not below every element")
    elif least:
        bot = least[0]
    elif auto_bottom:
        if BOTTOM_NAME in index:
            raise DomainError(f"cannot add {BOTTOM_NAME!r}: name already used")
        names.append(BOTTOM_NAME)
        up.append((1 << (n + 1)) - 1)
        bot = n
        synthetic = True
    else:
        raise DomainError("no least element (set auto_bottom to add one)")
    index = {name: i for i, name in enumerate(names)}
    alias_idx = {a: lookup(t) for a, t in (aliases or {}).items()}
    return Domain(names, up, bot, alias_idx, synthetic_bottom=synthetic, check=False)

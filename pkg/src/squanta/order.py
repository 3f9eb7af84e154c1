"""Finite posets, pomonoids, monotone maps, and antichain utilities.

All values are immutable after validation; element identifiers are opaque
strings and tables are kept in canonical (sorted) order, so equality of
validated structures is syntactic.
"""

from dataclasses import dataclass, field
from itertools import product

from .errors import (
    NotAPartialOrder,
    NotAssociative,
    NotMonotone,
    TooLarge,
    UnitNotNeutral,
    UnknownElement,
)

__all__ = [
    "FinPoset",
    "Pomonoid",
    "MonotoneMap",
    "validate_structure",
    "antichain_ops",
    "enumerate_monotone_selfmaps",
]


@dataclass(frozen=True)
class FinPoset:
    """Finite partial order: elements plus the full <= relation as a pair set."""

    elements: tuple
    pairs: frozenset

    def leq(self, x, y):
        return (x, y) in self.pairs

    def check_element(self, x):
        if x not in self.elements:
            raise UnknownElement(f"element {x!r} not in poset", witness=x)

    def up(self, subset):
        return {y for y in self.elements for x in subset if self.leq(x, y)}

    def down(self, subset):
        return {y for y in self.elements for x in subset if self.leq(y, x)}

    def minimal(self, subset):
        s = set(subset)
        return {x for x in s if not any(self.leq(y, x) and y != x for y in s)}

    def maximal(self, subset):
        s = set(subset)
        return {x for x in s if not any(self.leq(x, y) and y != x for y in s)}

    @property
    def is_discrete(self):
        return len(self.pairs) == len(self.elements)


def _build_poset(elements, leq_pairs):
    elements = tuple(sorted(elements))
    if len(set(elements)) != len(elements):
        raise NotAPartialOrder("duplicate elements", witness=elements)
    pairs = set()
    for x, y in leq_pairs:
        if x not in elements or y not in elements:
            raise UnknownElement(f"leq mentions unknown element", witness=(x, y))
        pairs.add((x, y))
    for x in elements:
        pairs.add((x, x))
    # antisymmetry and transitivity, exhaustively
    for x, y in list(pairs):
        if x != y and (y, x) in pairs:
            raise NotAPartialOrder("antisymmetry fails", witness=(x, y))
    for (x, y), (u, z) in product(list(pairs), repeat=2):
        if y == u and (x, z) not in pairs:
            raise NotAPartialOrder("transitivity fails", witness=(x, y, z))
    return FinPoset(elements, frozenset(pairs))


@dataclass(frozen=True, eq=True)
class Pomonoid:
    """Monoid table over a finite poset, monotone in each coordinate.

    `notation` records whether the structure is being read additively (+ / 0)
    or multiplicatively (* / 1); it is presentation-only. The three flags are
    always derived from the table, never taken from input.
    """

    poset: FinPoset
    op: tuple  # canonical tuple of ((x, y), z)
    unit: str
    notation: str = "additive"
    commutative: bool = field(default=False, compare=False)
    dually_integral: bool = field(default=False, compare=False)
    idempotent: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_table", dict(self.op))

    @property
    def elements(self):
        return self.poset.elements

    def apply(self, x, y):
        return self._table[(x, y)]

    def leq(self, x, y):
        return self.poset.leq(x, y)

    def fold(self, xs):
        acc = self.unit
        for x in xs:
            acc = self.apply(acc, x)
        return acc

    @property
    def is_cdi(self):
        return self.commutative and self.dually_integral


def _build_pomonoid(poset, op_triples, unit, notation):
    table = {}
    for x, y, z in op_triples:
        for e in (x, y, z):
            poset.check_element(e)
        table[(x, y)] = z
    for x, y in product(poset.elements, repeat=2):
        if (x, y) not in table:
            raise NotAssociative("operation table incomplete", witness=(x, y))
    poset.check_element(unit)
    for x in poset.elements:
        if table[(unit, x)] != x or table[(x, unit)] != x:
            raise UnitNotNeutral("unit is not two-sided neutral", witness=(unit, x))
    for x, y, z in product(poset.elements, repeat=3):
        if table[(table[(x, y)], z)] != table[(x, table[(y, z)])]:
            raise NotAssociative("associativity fails", witness=(x, y, z))
    for x, y, z in product(poset.elements, repeat=3):
        if poset.leq(x, y):
            if not poset.leq(table[(x, z)], table[(y, z)]):
                raise NotMonotone("right translation not monotone", witness=(x, y, z))
            if not poset.leq(table[(z, x)], table[(z, y)]):
                raise NotMonotone("left translation not monotone", witness=(x, y, z))
    commutative = all(
        table[(x, y)] == table[(y, x)] for x, y in product(poset.elements, repeat=2)
    )
    dually_integral = all(poset.leq(unit, x) for x in poset.elements)
    idempotent = all(table[(x, x)] == x for x in poset.elements)
    canonical = tuple(sorted(table.items()))
    return Pomonoid(
        poset,
        canonical,
        unit,
        notation,
        commutative=commutative,
        dually_integral=dually_integral,
        idempotent=idempotent,
    )


@dataclass(frozen=True)
class MonotoneMap:
    domain: FinPoset
    codomain: FinPoset
    table: tuple  # canonical tuple of (x, f(x))

    def __post_init__(self):
        object.__setattr__(self, "_table", dict(self.table))

    def apply(self, x):
        return self._table[x]

    def compose(self, other):
        """self after other (as functions)."""
        tab = tuple((x, self.apply(other.apply(x))) for x in other.domain.elements)
        return MonotoneMap(other.domain, self.codomain, tab)


def _build_monotone_map(domain, codomain, mapping):
    table = {}
    for x, y in mapping:
        domain.check_element(x)
        codomain.check_element(y)
        table[x] = y
    for x in domain.elements:
        if x not in table:
            raise NotMonotone("map table incomplete", witness=x)
    for x, y in product(domain.elements, repeat=2):
        if domain.leq(x, y) and not codomain.leq(table[x], table[y]):
            raise NotMonotone("order not preserved", witness=(x, y))
    return MonotoneMap(domain, codomain, tuple(sorted(table.items())))


def validate_structure(raw):
    """Validate a raw structure description.

    Accepted shapes (JSON-compatible dicts):
      {"poset": {"elements": [...], "leq": [[x, y], ...]}}
      {"poset": {...}, "monoid": {"op": [[x, y, z], ...], "unit": u,
                                  "notation": "additive"|"multiplicative"}}
      {"map": {"domain": <poset desc>, "codomain": <poset desc>,
               "table": [[x, y], ...]}}
    """
    if "map" in raw:
        spec = raw["map"]
        dom = validate_structure({"poset": spec["domain"]})
        cod = validate_structure({"poset": spec["codomain"]})
        return _build_monotone_map(dom, cod, [tuple(p) for p in spec["table"]])
    poset = _build_poset(
        raw["poset"]["elements"], [tuple(p) for p in raw["poset"].get("leq", [])]
    )
    if "monoid" not in raw:
        return poset
    mon = raw["monoid"]
    return _build_pomonoid(
        poset,
        [tuple(t) for t in mon["op"]],
        mon["unit"],
        mon.get("notation", "additive"),
    )


def monotone_map(domain, codomain, mapping):
    """Validate an explicit table as a MonotoneMap between built posets."""
    return _build_monotone_map(domain, codomain, list(mapping.items()))


def antichain_ops(poset, subset, mode):
    """Closure/extremal-antichain operations: mode in up|down|min|max."""
    for x in subset:
        poset.check_element(x)
    if mode == "up":
        return poset.up(subset)
    if mode == "down":
        return poset.down(subset)
    if mode == "min":
        return poset.minimal(subset)
    if mode == "max":
        return poset.maximal(subset)
    raise ValueError(f"unknown mode {mode!r}")


def enumerate_monotone_selfmaps(poset, limit=6):
    """All order-preserving self-maps, plus their componentwise order.

    Returns (maps, order_pairs) where order_pairs contains (i, j) whenever
    maps[i] <= maps[j] pointwise. The list is closed under composition and
    contains the identity.
    """
    n = len(poset.elements)
    if n > limit:
        raise TooLarge(f"poset has {n} > {limit} elements", witness=n)
    maps = []
    for values in product(poset.elements, repeat=n):
        tab = dict(zip(poset.elements, values))
        if all(
            poset.leq(tab[x], tab[y])
            for x, y in product(poset.elements, repeat=2)
            if poset.leq(x, y)
        ):
            maps.append(MonotoneMap(poset, poset, tuple(sorted(tab.items()))))
    order = {
        (i, j)
        for i, f in enumerate(maps)
        for j, g in enumerate(maps)
        if all(poset.leq(f.apply(x), g.apply(x)) for x in poset.elements)
    }
    return maps, order


def selfmap_pomonoid(poset, limit=6):
    """The monotone self-maps as a multiplicative pomonoid under composition."""
    maps, order = enumerate_monotone_selfmaps(poset, limit)
    names = {m: f"f{i}" for i, m in enumerate(maps)}
    elems = sorted(names.values())
    pairs = [(names[maps[i]], names[maps[j]]) for i, j in order]
    by_name = {v: k for k, v in names.items()}
    triples = []
    for a, b in product(elems, repeat=2):
        comp = by_name[a].compose(by_name[b])
        triples.append((a, b, names[comp]))
    ident = next(m for m in maps if all(m.apply(x) == x for x in poset.elements))
    base = _build_poset(elems, pairs)
    return (
        _build_pomonoid(base, triples, names[ident], "multiplicative"),
        {v: k for k, v in names.items()},
    )

"""Finitely generated multiupsets over a finite poset.

A multiupset is represented canonically by its full evaluation table
element -> N (cheap for the desk-scale posets used here); the generator
multiset is kept only as a presentation. Values are immutable and all
operations are pure.
"""

from itertools import combinations_with_replacement

from .errors import BaseMismatch, NotCDI, UnknownElement
from .order import FinPoset

__all__ = [
    "Multiupset",
    "generator_embed",
    "mliteral",
    "msum",
    "mleq",
    "decompose",
    "free_extend_pomonoid",
    "enumerate_fragment",
    "parse_multiupset",
]

MAX_COUNT = 10**6  # multiplicities stay tiny at desk scale; anything near this is a bug


class Multiupset:
    """Order-preserving map base -> N presented by a generator multiset."""

    __slots__ = ("base", "counts", "gens", "_key")

    def __init__(self, base: FinPoset, gens):
        self.base = base
        self.gens = tuple(sorted(gens))
        counts = {x: 0 for x in base.elements}
        for a in self.gens:
            base.check_element(a)
            for x in base.elements:
                if base.leq(a, x):
                    counts[x] += 1
                    if counts[x] > MAX_COUNT:
                        raise OverflowError("multiupset multiplicity overflow")
        self.counts = counts
        self._key = tuple(counts[x] for x in base.elements)

    def value(self, x):
        self.base.check_element(x)
        return self.counts[x]

    @property
    def total_multiplicity(self):
        return len(self.gens)

    @property
    def is_empty(self):
        return all(v == 0 for v in self._key)

    def sort_key(self):
        return self._key

    def __eq__(self, other):
        return (
            isinstance(other, Multiupset)
            and self.base == other.base
            and self._key == other._key
        )

    def __hash__(self):
        return hash((self.base, self._key))

    def __repr__(self):
        return "[" + ",".join(self.gens) + "]"


def _check_same_base(f, g):
    if f.base != g.base:
        raise BaseMismatch("multiupsets over different posets", witness=(f, g))


def generator_embed(base, a):
    """The principal multiupset of a single generator."""
    base.check_element(a)
    return Multiupset(base, (a,))


def mliteral(base, gens):
    """Build a multiupset from a generator list, e.g. ["a", "a", "b"]."""
    return Multiupset(base, gens)


def msum(f, g):
    _check_same_base(f, g)
    return Multiupset(f.base, f.gens + g.gens)


def mleq(f, g):
    """Componentwise order on evaluation tables."""
    _check_same_base(f, g)
    return all(f.counts[x] <= g.counts[x] for x in f.base.elements)


def _level_generators(f):
    gens = []
    i = 1
    while True:
        level = {x for x in f.base.elements if f.counts[x] >= i}
        if not level:
            break
        gens.extend(f.base.minimal(level))
        i += 1
    return tuple(sorted(gens))


def decompose(f):
    """Canonical generator multiset: for each threshold i, the minimal
    elements of the i-th level upset, with multiplicity one per level.

    The formula double-counts on posets where incomparable elements share an
    upper bound; re-summing is verified and a violation raised rather than
    returning a wrong decomposition (all shipped fixture bases are safe).
    """
    gens = _level_generators(f)
    if Multiupset(f.base, gens) != f:
        raise ArithmeticError(
            f"level decomposition does not re-sum to the multiupset on this "
            f"base (non-forest order): {f!r}"
        )
    return gens


def from_table(base, table):
    """Rebuild a multiupset from an evaluation table, if one denotes it.

    Returns None when the table is not the evaluation of any generator
    multiset over this base (possible on posets with diamond-shaped upsets).
    """
    probe = Multiupset(base, ())
    probe.counts = {x: int(table[x]) for x in base.elements}
    probe._key = tuple(probe.counts[x] for x in base.elements)
    candidate = Multiupset(base, _level_generators(probe))
    if candidate._key == probe._key:
        return candidate
    return None


def free_extend_pomonoid(h, target):
    """Extend a map on generators to the additive evaluator on multiupsets.

    `h` is a MonotoneMap from the base poset into the poset of `target`,
    a commutative dually integral pomonoid. Returns a callable evaluator
    computed by level decomposition; it agrees with h on generators and is
    additive with unit 0.
    """
    if not target.is_cdi:
        raise NotCDI(
            "target pomonoid must be commutative and dually integral",
            witness=(target.commutative, target.dually_integral),
        )
    base = h.domain

    def evaluator(f):
        if f.base != base:
            raise BaseMismatch("multiupset over a different poset", witness=f)
        return target.fold(h.apply(a) for a in decompose(f))

    return evaluator


def enumerate_fragment(base, k):
    """All multiupsets of total generator multiplicity <= k (duplicate-free)."""
    seen = {}
    for size in range(k + 1):
        for gens in combinations_with_replacement(base.elements, size):
            m = Multiupset(base, gens)
            seen.setdefault(m._key, m)
    return sorted(seen.values(), key=Multiupset.sort_key)


def parse_multiupset(base, text):
    """Parse the literal syntax used in configs and reports: "[a,a,b]"
    (order-insensitive, repetition is multiplicity); "[]" is empty."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise UnknownElement(f"bad multiupset literal {text!r}", witness=text)
    body = text[1:-1].strip()
    gens = [g.strip() for g in body.split(",")] if body else []
    return Multiupset(base, gens)

"""Generalized quantales, additive quantales with multiplication, and the
two canonical ways of producing them: the endomorphism construction over a
finite quantale, and the free construction over the downset fragment of a
multiplicative pomonoid.
"""

from dataclasses import dataclass
from itertools import combinations, product

from .downset import (
    MultiBase,
    djoin,
    dleq,
    dsum,
    dzero,
    normalize,
    unit_embed,
)
from .errors import (
    FragmentExceeded,
    LawViolated,
    TooLarge,
    UnboundVariable,
)
from .multiupset import Multiupset, enumerate_fragment
from .order import Pomonoid, validate_structure
from .reporting import Report

__all__ = [
    "QuantaleTerm",
    "term",
    "FinGenQuantale",
    "make_quantale",
    "AQM",
    "table_aqm",
    "eval_term",
    "check_aqm",
    "exp_end",
    "DmFragment",
    "free_aqm",
    "naive_elementwise_product",
    "dg_closure",
]


@dataclass(frozen=True)
class QuantaleTerm:
    """Formal finite join of additive monoid terms (sums of variables)."""

    joinands: frozenset  # each joinand: tuple of variable names; () is the constant 0

    def __post_init__(self):
        if not self.joinands:
            raise LawViolated("term-nonempty", witness=self)

    @property
    def variables(self):
        return {v for j in self.joinands for v in j}


def term(*joinands):
    return QuantaleTerm(frozenset(tuple(j) for j in joinands))


def eval_term(t, env, q):
    """Interpret a quantale term in `q` under the variable assignment `env`."""
    missing = t.variables - set(env)
    if missing:
        raise UnboundVariable("unbound variables", witness=sorted(missing))
    values = [q.fold_plus([env[v] for v in j]) for j in sorted(t.joinands)]
    return q.join(values)


class FinGenQuantale:
    """Finite-carrier generalized quantale: an additive pomonoid in which all
    non-empty joins exist and distribute over the sum on both sides."""

    def __init__(self, pomonoid: Pomonoid, name=""):
        self.pomonoid = pomonoid
        self.name = name
        self._join2 = {}
        els = pomonoid.elements
        for x, y in product(els, repeat=2):
            uppers = [z for z in els if pomonoid.leq(x, z) and pomonoid.leq(y, z)]
            lubs = [z for z in uppers if all(pomonoid.leq(z, w) for w in uppers)]
            if len(lubs) != 1:
                raise LawViolated("join-exists", witness=(x, y))
            self._join2[(x, y)] = lubs[0]
        for x, y, z in product(els, repeat=3):
            if self.plus(x, self.join([y, z])) != self.join(
                [self.plus(x, y), self.plus(x, z)]
            ):
                raise LawViolated("join-dist-left", witness=(x, y, z))
            if self.plus(self.join([y, z]), x) != self.join(
                [self.plus(y, x), self.plus(z, x)]
            ):
                raise LawViolated("join-dist-right", witness=(x, y, z))
        bottoms = [b for b in els if all(pomonoid.leq(b, x) for x in els)]
        self.bottom = bottoms[0] if bottoms else None
        self.complete = self.bottom is not None

    @property
    def elements(self):
        return self.pomonoid.elements

    @property
    def zero(self):
        return self.pomonoid.unit

    def leq(self, x, y):
        return self.pomonoid.leq(x, y)

    def plus(self, x, y):
        return self.pomonoid.apply(x, y)

    def fold_plus(self, xs):
        return self.pomonoid.fold(xs)

    def join(self, xs):
        xs = list(xs)
        if not xs:
            if self.complete:
                return self.bottom
            raise LawViolated("empty-join", witness=())
        acc = xs[0]
        for x in xs[1:]:
            acc = self._join2[(acc, x)]
        return acc

    def enumerate(self, bound=None):
        return list(self.elements)

    def sort_key(self, x):
        return x

    @property
    def is_cdi(self):
        return self.pomonoid.is_cdi

    @property
    def idempotent(self):
        return self.pomonoid.idempotent

    def __eq__(self, other):
        return isinstance(other, FinGenQuantale) and self.pomonoid == other.pomonoid

    def __repr__(self):
        return f"FinGenQuantale({self.name or ','.join(self.elements)})"


def make_quantale(raw_or_pomonoid, name=""):
    """Build a FinGenQuantale from a pomonoid or a raw structure description."""
    if isinstance(raw_or_pomonoid, Pomonoid):
        return FinGenQuantale(raw_or_pomonoid, name)
    pom = validate_structure(raw_or_pomonoid)
    if not isinstance(pom, Pomonoid):
        raise LawViolated("quantale-needs-monoid", witness=raw_or_pomonoid)
    return FinGenQuantale(pom, name)


class AQM:
    """Two-sorted additive quantale with multiplication <A_d, A, iota>.

    `dist` is the multiplicative pomonoid of distributive elements, `quant`
    the additive quantale sort (a FinGenQuantale or a DmFragment), `mult`
    and `one` the monoid structure on the quantale sort, and `iota` the
    linking map.
    """

    def __init__(self, dist, quant, mult, one, iota, name=""):
        self.dist = dist
        self.quant = quant
        self._mult = mult
        self.one = one
        self._iota = iota
        self.name = name
        self.distributively_generated = None
        self.dg_witness = None

    def mult(self, x, y):
        if callable(self._mult):
            return self._mult(x, y)
        return self._mult[(x, y)]

    def iota(self, d):
        if callable(self._iota):
            return self._iota(d)
        return self._iota[d]

    @property
    def is_finite(self):
        return isinstance(self.quant, FinGenQuantale)

    def elements(self):
        return self.quant.enumerate()

    def iota_image(self):
        return [self.iota(d) for d in self.dist.elements]

    def __repr__(self):
        return f"AQM({self.name})"


def _finite_table_aqm(dist, quant, mult_table, one, iota_table, name=""):
    return AQM(dist, quant, dict(mult_table), one, dict(iota_table), name)


def table_aqm(quant, mult_table, one, name=""):
    """AQM whose distributive sort is the whole multiplicative monoid
    (iota the identity), as in the self-acting fixtures."""
    from . import errors

    mult = dict(mult_table)
    triples = [(x, y, z) for (x, y), z in mult.items()]
    try:
        dist = validate_structure(
            {
                "poset": {
                    "elements": list(quant.elements),
                    "leq": [[x, y] for x in quant.elements for y in quant.elements
                            if quant.leq(x, y)],
                },
                "monoid": {"op": [list(t) for t in triples], "unit": one,
                           "notation": "multiplicative"},
            }
        )
    except errors.UnitNotNeutral as exc:
        raise LawViolated("unit", witness=exc.witness) from exc
    except errors.NotAssociative as exc:
        raise LawViolated("assoc", witness=exc.witness) from exc
    except errors.NotMonotone as exc:
        raise LawViolated("mult-monotone", witness=exc.witness) from exc
    iota = {d: d for d in quant.elements}
    return _finite_table_aqm(dist, quant, mult, one, iota, name)


def dg_closure(a):
    """Closure of the iota-image under 0, +, and finite joins, with a term
    witness for every element reached. Finite quantale sort only."""
    q = a.quant
    witness = {q.zero: "0"}
    for d in sorted(a.dist.elements):
        witness.setdefault(a.iota(d), f"i({d})")
    frontier = True
    while frontier:
        frontier = False
        current = sorted(witness)
        for x, y in product(current, repeat=2):
            for z, how in (
                (q.plus(x, y), f"({witness[x]}+{witness[y]})"),
                (q.join([x, y]), f"({witness[x]}v{witness[y]})"),
            ):
                if z not in witness:
                    witness[z] = how
                    frontier = True
    return set(witness), witness


def check_aqm(a, strict=True, bounds=None):
    """Exhaustively verify the AQM laws; on a fragment sort, scan the bounded
    fragment instead and count instances that leave it.

    With strict=True the first violated law raises LawViolated; otherwise all
    violations are collected into the returned report.
    """
    rep = Report(f"aqm {a.name or ''}".strip())

    def fail(law, witness):
        if strict:
            raise LawViolated(law, witness=witness)
        rep.failed(law, witness)

    if a.is_finite:
        q = a.quant
        els = list(q.elements)
        pairs = list(product(els, repeat=2))
        for x in els:
            if a.mult(a.one, x) != x or a.mult(x, a.one) != x:
                fail("unit", (a.one, x))
        for x, y, z in product(els, repeat=3):
            if a.mult(a.mult(x, y), z) != a.mult(x, a.mult(y, z)):
                fail("assoc", (x, y, z))
        for x, y, z in product(els, repeat=3):
            if a.mult(q.join([x, y]), z) != q.join([a.mult(x, z), a.mult(y, z)]):
                fail("right-join-dist", (x, y, z))
            if a.mult(q.plus(x, y), z) != q.plus(a.mult(x, z), a.mult(y, z)):
                fail("right-plus-dist", (x, y, z))
        for x in els:
            if a.mult(q.zero, x) != q.zero:
                fail("zero-annihilates", x)
        for d in a.dist.elements:
            i = a.iota(d)
            for x, y in pairs:
                if a.mult(i, q.join([x, y])) != q.join([a.mult(i, x), a.mult(i, y)]):
                    fail("left-join-dist-iota", (d, x, y))
                if a.mult(i, q.plus(x, y)) != q.plus(a.mult(i, x), a.mult(i, y)):
                    fail("left-plus-dist-iota", (d, x, y))
            if a.mult(i, q.zero) != q.zero:
                fail("left-zero-iota", d)
        for d, e in product(a.dist.elements, repeat=2):
            if a.iota(a.dist.apply(d, e)) != a.mult(a.iota(d), a.iota(e)):
                fail("iota-hom", (d, e))
            if a.dist.leq(d, e) and not q.leq(a.iota(d), a.iota(e)):
                fail("iota-monotone", (d, e))
        if a.iota(a.dist.unit) != a.one:
            fail("iota-unit", a.dist.unit)
        closure, witness = dg_closure(a)
        a.distributively_generated = closure == set(els)
        a.dg_witness = witness
        rep.note(f"laws scanned over {len(els)} elements: all hold"
                 if rep.ok else "violations found")
        rep.note(f"distributively generated: {a.distributively_generated}")
        rep.data["distributively_generated"] = a.distributively_generated
        rep.data["dg_witness"] = dict(sorted(witness.items()))
        return rep

    # fragment sort: bounded scan
    frag = a.quant
    b = bounds or frag.scan_bounds()
    els = frag.enumerate(b)
    skipped = 0
    checked = 0

    def guarded(law, wit, thunk):
        nonlocal skipped, checked
        try:
            lhs, rhs = thunk()
        except FragmentExceeded:
            skipped += 1
            return
        checked += 1
        if lhs != rhs:
            fail(law, wit)

    for x in els:
        guarded("unit", x, lambda x=x: (a.mult(a.one, x), x))
        guarded("unit", x, lambda x=x: (a.mult(x, a.one), x))
        guarded("zero-annihilates", x, lambda x=x: (a.mult(frag.zero, x), frag.zero))
    for x, y, z in product(els, repeat=3):
        guarded("assoc", (x, y, z),
                lambda x=x, y=y, z=z: (a.mult(a.mult(x, y), z), a.mult(x, a.mult(y, z))))
        guarded("right-join-dist", (x, y, z),
                lambda x=x, y=y, z=z: (a.mult(frag.join([x, y]), z),
                                       frag.join([a.mult(x, z), a.mult(y, z)])))
        guarded("right-plus-dist", (x, y, z),
                lambda x=x, y=y, z=z: (a.mult(frag.plus(x, y), z),
                                       frag.plus(a.mult(x, z), a.mult(y, z))))
    for d in a.dist.elements:
        i = a.iota(d)
        for x, y in product(els, repeat=2):
            guarded("left-join-dist-iota", (d, x, y),
                    lambda i=i, x=x, y=y: (a.mult(i, frag.join([x, y])),
                                           frag.join([a.mult(i, x), a.mult(i, y)])))
            guarded("left-plus-dist-iota", (d, x, y),
                    lambda i=i, x=x, y=y: (a.mult(i, frag.plus(x, y)),
                                           frag.plus(a.mult(i, x), a.mult(i, y))))
        guarded("left-zero-iota", d, lambda i=i: (a.mult(i, frag.zero), frag.zero))
    for d, e in product(a.dist.elements, repeat=2):
        guarded("iota-hom", (d, e),
                lambda d=d, e=e: (a.iota(a.dist.apply(d, e)),
                                  a.mult(a.iota(d), a.iota(e))))
    a.distributively_generated = True  # by construction of the free product
    rep.note(f"fragment scan (multiplicity<={b[0]}, antichain<={b[1]}): "
             f"{checked} instances checked, {skipped} left the fragment")
    rep.data.update(checked=checked, skipped=skipped)
    return rep


# -- the endomorphism construction --------------------------------------------


def _map_name(q, tab):
    return "(" + ",".join(tab[x] for x in q.elements) + ")"


def exp_end(q, limit=5):
    """The two-sorted endomorphism object of a finite generalized quantale:
    endomorphisms as the distributive sort, their closure under pointwise
    sums and joins as the quantale sort, composition as the product."""
    els = q.elements
    if len(els) > limit:
        raise TooLarge(f"quantale has {len(els)} > {limit} elements", witness=len(els))
    endos = []
    for values in product(els, repeat=len(els)):
        tab = dict(zip(els, values))
        if any(q.leq(x, y) and not q.leq(tab[x], tab[y])
               for x, y in product(els, repeat=2)):
            continue
        if any(tab[q.join([x, y])] != q.join([tab[x], tab[y]])
               for x, y in product(els, repeat=2)):
            continue
        if any(tab[q.plus(x, y)] != q.plus(tab[x], tab[y])
               for x, y in product(els, repeat=2)):
            continue
        if tab[q.zero] != q.zero:
            continue
        if q.complete and tab[q.bottom] != q.bottom:
            continue
        endos.append(tuple(sorted(tab.items())))

    # close under pointwise + and binary join inside the monotone maps
    gen = {t: dict(t) for t in endos}
    frontier = True
    while frontier:
        frontier = False
        current = list(gen.values())
        for f, g in product(current, repeat=2):
            for h in (
                {x: q.plus(f[x], g[x]) for x in els},
                {x: q.join([f[x], g[x]]) for x in els},
            ):
                key = tuple(sorted(h.items()))
                if key not in gen:
                    gen[key] = h
                    frontier = True

    gen_tabs = sorted(gen.values(), key=lambda t: tuple(t[x] for x in els))
    names = {_map_name(q, t): t for t in gen_tabs}
    leq_pairs = [
        [n1, n2]
        for n1, t1 in names.items()
        for n2, t2 in names.items()
        if all(q.leq(t1[x], t2[x]) for x in els)
    ]
    plus_triples = [
        [n1, n2, _map_name(q, {x: q.plus(t1[x], t2[x]) for x in els})]
        for n1, t1 in names.items()
        for n2, t2 in names.items()
    ]
    zero_name = _map_name(q, {x: q.zero for x in els})
    quant = make_quantale(
        {
            "poset": {"elements": sorted(names), "leq": leq_pairs},
            "monoid": {"op": plus_triples, "unit": zero_name},
        },
        name=f"Gen({q.name})" if q.name else "Gen",
    )
    mult_table = {
        (n1, n2): _map_name(q, {x: t1[t2[x]] for x in els})
        for n1, t1 in names.items()
        for n2, t2 in names.items()
    }
    id_name = _map_name(q, {x: x for x in els})
    endo_names = sorted(_map_name(q, dict(t)) for t in endos)
    dist = validate_structure(
        {
            "poset": {
                "elements": endo_names,
                "leq": [[x, y] for x, y in
                        ((p[0], p[1]) for p in leq_pairs)
                        if x in endo_names and y in endo_names],
            },
            "monoid": {
                "op": [[x, y, mult_table[(x, y)]] for x in endo_names
                       for y in endo_names],
                "unit": id_name,
                "notation": "multiplicative",
            },
        }
    )
    iota = {n: n for n in endo_names}
    a = _finite_table_aqm(dist, quant, mult_table, id_name, iota,
                          name=f"ExpEnd({q.name})" if q.name else "ExpEnd")
    check_aqm(a)
    a.endo_tables = {n: dict(names[n]) for n in endo_names}
    a.gen_tables = {n: dict(t) for n, t in names.items()}
    return a


# -- the free construction over a pomonoid ------------------------------------


@dataclass(frozen=True)
class DmFragment:
    """Bounded window into the downsets of the multiupset pomonoid over a
    poset: total generator multiplicity <= k, antichains of size <= 3 by
    default. Operations compute exact results and raise FragmentExceeded
    instead of truncating when a result leaves the multiplicity bound."""

    base: MultiBase
    k: int = 4
    antichain_bound: int = 3

    def check_bound(self, p):
        for g in p.maxgens:
            if g.total_multiplicity > self.k:
                raise FragmentExceeded(
                    f"generator multiplicity {g.total_multiplicity} > {self.k}",
                    witness=p,
                )
        return p

    @property
    def zero(self):
        return dzero(self.base)

    def leq(self, p, q):
        return dleq(p, q)

    def plus(self, p, q):
        return self.check_bound(dsum(p, q))

    def join(self, ps):
        return djoin(ps)

    def sort_key(self, p):
        return p.sort_key()

    def scan_bounds(self):
        return (min(self.k, 2), min(self.antichain_bound, 2))

    def enumerate(self, bounds=None):
        k, width = bounds if bounds else (self.k, self.antichain_bound)
        mus = enumerate_fragment(self.base.poset, k)
        out = []
        for size in range(1, width + 1):
            for combo in combinations(mus, size):
                ok = all(
                    not mleq_either(self.base, a, b)
                    for a, b in combinations(combo, 2)
                )
                if ok:
                    out.append(normalize(self.base, list(combo)))
        return sorted(out, key=self.sort_key)


def mleq_either(base, a, b):
    return base.leq(a, b) or base.leq(b, a)


def free_aqm(m, k=4, antichain_bound=3):
    """The free additive quantale with multiplication over a multiplicative
    pomonoid, realized on the bounded downset fragment.

    The quantale sort is the downset fragment over the multiupsets of m's
    carrier; the distributive sort is m itself, linked by the principal
    downset of a one-element multiset. The product of P and Q reduces to
    per-generator scalar actions: a multiset of scalars acts as the sum of
    its members' elementwise actions, and P acts as the join over its
    maximal generator multisets.
    """
    frag = DmFragment(MultiBase(m.poset), k, antichain_bound)
    base = frag.base
    poset = m.poset

    def scalar_act(a, q):
        gens = [
            Multiupset(poset, tuple(m.apply(a, x) for x in g.gens))
            for g in q.maxgens
        ]
        return normalize(base, gens)

    def multiset_act(sigma, q):
        acc = frag.zero
        for a in sigma.gens:
            acc = dsum(acc, scalar_act(a, q))
        return acc

    def mult(p, q):
        return frag.check_bound(djoin([multiset_act(sigma, q) for sigma in p.maxgens]))

    def iota(a):
        m.poset.check_element(a)
        return unit_embed(base, Multiupset(poset, (a,)))

    one = unit_embed(base, Multiupset(poset, (m.unit,)))
    a = AQM(m, frag, mult, one, iota, name=f"Free({','.join(m.elements)})")
    a.distributively_generated = True
    a.multiset_act = multiset_act
    a.scalar_act = scalar_act
    return a


def naive_elementwise_product(m, p, q):
    """The elementwise multiset product on downsets, kept as a foil: it does
    not in general agree with the free product above."""
    base = p.base
    gens = [
        Multiupset(m.poset, tuple(m.apply(a, b) for a in f.gens for b in g.gens))
        for f in p.maxgens
        for g in q.maxgens
    ]
    return normalize(base, gens)

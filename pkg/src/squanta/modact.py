"""Actions at the three levels of the hierarchy: pomonoids on posets,
pomonoids on quantales (acts), and additive quantales with multiplication on
quantales (modules), together with the extension and restriction functors
between them.
"""

from dataclasses import dataclass
from itertools import product

from .aqm import DmFragment, free_aqm
from .downset import MultiBase, normalize
from .errors import FragmentExceeded, LawViolated, UnitNotEmbedding
from .multiupset import Multiupset, generator_embed, mleq
from .order import FinPoset
from .reporting import Report

__all__ = [
    "ActionMap",
    "check_action",
    "extend_poset_action_to_dm",
    "extend_act_to_module",
    "restrict_module_to_act",
]

POSET, ACT, MODULE = "poset", "act", "module"


@dataclass
class ActionMap:
    """An action star(scalar, point) at a declared level of structure.

    scalars: Pomonoid (poset/act level) or AQM (module level).
    space:   FinPoset (poset level) or FinGenQuantale / DmFragment.
    Universes for law scans default to full carriers; fragment spaces use
    their bounded enumerations.
    """

    level: str
    scalars: object
    space: object
    star: object
    name: str = ""
    scan_bounds: tuple = None

    def scalar_universe(self):
        if self.level == MODULE:
            if self.scalars.is_finite:
                return list(self.scalars.quant.elements)
            return self.scalars.quant.enumerate(
                self.scan_bounds or self.scalars.quant.scan_bounds()
            )
        return list(self.scalars.elements)

    def space_universe(self):
        if isinstance(self.space, FinPoset):
            return list(self.space.elements)
        if isinstance(self.space, DmFragment):
            return self.space.enumerate(self.scan_bounds or self.space.scan_bounds())
        return list(self.space.elements)

    def iota_scalars(self):
        """The distributive scalars, as quantale-sort elements."""
        return [self.scalars.iota(d) for d in self.scalars.dist.elements]


def _space_leq(space, x, y):
    return space.leq(x, y)


def check_action(am, strict=True):
    """Verify the law set appropriate to the action's level, exhaustively on
    finite carriers and over the bounded fragment otherwise."""
    rep = Report(f"action {am.name or am.level}".strip())
    skipped = 0
    checked = 0

    def fail(law, witness):
        if strict:
            raise LawViolated(law, witness=witness)
        rep.failed(law, witness)

    def eq(law, wit, thunk):
        nonlocal skipped, checked
        try:
            lhs, rhs = thunk()
        except FragmentExceeded:
            skipped += 1
            return
        checked += 1
        if lhs != rhs:
            fail(law, wit)

    def le(law, wit, thunk):
        nonlocal skipped, checked
        try:
            lhs, rhs = thunk()
        except FragmentExceeded:
            skipped += 1
            return
        checked += 1
        if not _space_leq(am.space, lhs, rhs):
            fail(law, wit)

    scalars = am.scalar_universe()
    points = am.space_universe()
    star = am.star

    if am.level == POSET:
        mon = am.scalars
        for x in points:
            eq("unit", x, lambda x=x: (star(mon.unit, x), x))
        for a, b in product(mon.elements, repeat=2):
            for x in points:
                eq("compose", (a, b, x),
                   lambda a=a, b=b, x=x: (star(mon.apply(a, b), x), star(a, star(b, x))))
        for a, b in product(mon.elements, repeat=2):
            if mon.leq(a, b):
                for x in points:
                    le("scalar-monotone", (a, b, x),
                       lambda a=a, b=b, x=x: (star(a, x), star(b, x)))
        for x, y in product(points, repeat=2):
            if _space_leq(am.space, x, y):
                for a in mon.elements:
                    le("point-monotone", (a, x, y),
                       lambda a=a, x=x, y=y: (star(a, x), star(a, y)))
    elif am.level == ACT:
        mon = am.scalars
        sp = am.space
        for x in points:
            eq("unit", x, lambda x=x: (star(mon.unit, x), x))
            for a in mon.elements:
                eq("zero", (a, x), lambda a=a: (star(a, sp.zero), sp.zero))
        for a, b in product(mon.elements, repeat=2):
            for x in points:
                eq("compose", (a, b, x),
                   lambda a=a, b=b, x=x: (star(mon.apply(a, b), x), star(a, star(b, x))))
        for a in mon.elements:
            for x, y in product(points, repeat=2):
                eq("join-dist", (a, x, y),
                   lambda a=a, x=x, y=y: (star(a, sp.join([x, y])),
                                          sp.join([star(a, x), star(a, y)])))
                eq("plus-dist", (a, x, y),
                   lambda a=a, x=x, y=y: (star(a, sp.plus(x, y)),
                                          sp.plus(star(a, x), star(a, y))))
        for a, b in product(mon.elements, repeat=2):
            if mon.leq(a, b):
                for x in points:
                    le("scalar-monotone", (a, b, x),
                       lambda a=a, b=b, x=x: (star(a, x), star(b, x)))
    elif am.level == MODULE:
        a_ = am.scalars
        sp = am.space
        q = a_.quant
        for x in points:
            eq("unit", x, lambda x=x: (star(a_.one, x), x))
            eq("zero-scalar", x, lambda x=x: (star(q.zero, x), sp.zero))
        for s, t in product(scalars, repeat=2):
            for x in points:
                eq("compose", (s, t, x),
                   lambda s=s, t=t, x=x: (star(a_.mult(s, t), x), star(s, star(t, x))))
                eq("scalar-plus", (s, t, x),
                   lambda s=s, t=t, x=x: (star(q.plus(s, t), x),
                                          sp.plus(star(s, x), star(t, x))))
                eq("scalar-join", (s, t, x),
                   lambda s=s, t=t, x=x: (star(q.join([s, t]), x),
                                          sp.join([star(s, x), star(t, x)])))
        for i in am.iota_scalars():
            for x, y in product(points, repeat=2):
                eq("iota-join-dist", (i, x, y),
                   lambda i=i, x=x, y=y: (star(i, sp.join([x, y])),
                                          sp.join([star(i, x), star(i, y)])))
                eq("iota-plus-dist", (i, x, y),
                   lambda i=i, x=x, y=y: (star(i, sp.plus(x, y)),
                                          sp.plus(star(i, x), star(i, y))))
            eq("iota-zero", i, lambda i=i: (star(i, sp.zero), sp.zero))
    else:
        raise ValueError(f"unknown action level {am.level!r}")

    scope = f"{len(scalars)} scalars x {len(points)} points"
    if isinstance(am.space, DmFragment):
        k, width = am.scan_bounds or am.space.scan_bounds()
        scope += f"; fragment scope: multiplicity<={k}, antichain<={width}"
    if skipped:
        scope += f", {skipped} instances left the fragment"
    rep.note(f"scanned {checked} instances ({scope}): "
             + ("all laws hold" if rep.ok else "violations found"))
    rep.data.update(checked=checked, skipped=skipped)
    return rep


def extend_poset_action_to_dm(pa, k=4, antichain_bound=3):
    """Lift a poset-level action to the downset fragment over the space:
    scalars act elementwise on generator multisets, then on maximal
    generators of a downset, followed by normalization."""
    check_action(pa)
    poset = pa.space
    frag = DmFragment(MultiBase(poset), k, antichain_bound)
    base = frag.base

    def star(a, p):
        gens = [
            Multiupset(poset, tuple(pa.star(a, x) for x in g.gens))
            for g in p.maxgens
        ]
        return normalize(base, gens)

    return ActionMap(ACT, pa.scalars, frag, star, name=f"DM({pa.name})" if pa.name else "DM-act")


def extend_act_to_module(aa, k=4, antichain_bound=3):
    """Expand an act of a pomonoid on a quantale-sort space to a module over
    the free additive quantale with multiplication on that pomonoid.

    Requires the unit map of the scalars into the free quantale sort to be an
    order-embedding. A multiset of scalars acts as the sum of its members'
    actions; a downset of multisets acts as the join over its maximal
    generators.
    """
    mon = aa.scalars
    for a, b in product(mon.elements, repeat=2):
        emb_le = mleq(generator_embed(mon.poset, a), generator_embed(mon.poset, b))
        if mon.leq(a, b) != emb_le:
            raise UnitNotEmbedding(
                "unit map of scalars is not an order-embedding", witness=(a, b)
            )
    aqm = free_aqm(mon, k, antichain_bound)
    sp = aa.space

    def multiset_star(sigma, x):
        acc = sp.zero
        for a in sigma.gens:
            acc = sp.plus(acc, aa.star(a, x))
        return acc

    def star(scalar, x):
        return sp.join([multiset_star(sigma, x) for sigma in scalar.maxgens])

    ma = ActionMap(MODULE, aqm, sp, star,
                   name=f"Free({aa.name})" if aa.name else "free-module")
    ma.multiset_star = multiset_star
    return ma


def restrict_module_to_act(ma):
    """Forgetful restriction along iota: distributive scalars act directly."""
    aqm = ma.scalars

    def star(d, x):
        return ma.star(aqm.iota(d), x)

    return ActionMap(ACT, aqm.dist, ma.space, star,
                     name=f"restrict({ma.name})" if ma.name else "restricted-act")

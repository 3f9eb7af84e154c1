"""Residuals of module actions, dividing elements, the induced nucleus of a
module element, cyclicity at the three action levels, and the dividing-
idempotent characterization of cyclic projective modules, including direct
lifting checks."""

from dataclasses import dataclass
from itertools import product

from .aqm import make_quantale
from .errors import (
    FragmentExceeded,
    NoLift,
    NoResidual,
    NotDividing,
    TooLarge,
)
from .modact import ACT, MODULE, POSET, ActionMap, check_action
from .nucleus import nucleus, structural_check, validate_presentation
from .reporting import Report

__all__ = [
    "ResidualResult",
    "residual",
    "gamma_u",
    "cyclic_check",
    "cyclic_projective_check",
    "lifting_check",
    "self_module",
    "submodule_on_orbit",
    "is_module_hom",
    "enumerate_module_homs",
    "enumerate_surjective_homs",
    "exhaustive_family",
]


@dataclass
class ResidualResult:
    value: object
    certificate: tuple
    fragment_limited: bool = False


def residual(y, x, ma):
    """Largest scalar sending x below y; exact on finite scalar carriers,
    best-within-fragment otherwise."""
    aqm = ma.scalars
    q = aqm.quant
    limited = not aqm.is_finite
    certificate = []
    for b in ma.scalar_universe():
        try:
            if ma.space.leq(ma.star(b, x), y):
                certificate.append(b)
        except FragmentExceeded:
            limited = True
    if not certificate:
        raise NoResidual("no scalar sends x below y", witness=(y, x))
    value = q.join(certificate)
    if not limited:
        # the defining adjunction, scanned for every scalar
        if not ma.space.leq(ma.star(value, x), y):
            raise NoResidual("join of the certificate set escapes the bound",
                             witness=(value, x, y))
        for a in ma.scalar_universe():
            if q.leq(a, value) != ma.space.leq(ma.star(a, x), y):
                raise NoResidual("adjunction fails", witness=(a, value, x, y))
    return ResidualResult(value, tuple(certificate), limited)


def self_module(aqm, name=None):
    """The AQM acting on its own quantale sort by multiplication."""
    return ActionMap(MODULE, aqm, aqm.quant, aqm.mult,
                     name=name or f"{aqm.name}-self")


def submodule_on_orbit(ma, u, name=None):
    """The submodule on the scalar orbit of u (finite carriers)."""
    q = ma.space
    orbit = sorted({ma.star(a, u) for a in ma.scalar_universe()})
    quant = make_quantale(
        {
            "poset": {
                "elements": orbit,
                "leq": [[x, y] for x in orbit for y in orbit if q.leq(x, y)],
            },
            "monoid": {
                "op": [[x, y, q.plus(x, y)] for x in orbit for y in orbit],
                "unit": q.zero,
            },
        },
        name=f"{ma.name}|orbit({u})",
    )
    sub = ActionMap(MODULE, ma.scalars, quant, ma.star,
                    name=name or f"{ma.name}*{u}")
    check_action(sub)
    return sub


def gamma_u(u, ma):
    """Dividing report for u and, when dividing over finite scalars, the
    induced structural nucleus a -> (a*u)/u on the scalar quantale together
    with the verified isomorphism between the orbit module and the quotient.
    """
    rep = Report(f"gamma_u(u={u})")
    aqm = ma.scalars
    results = {}
    for x in ma.space_universe():
        try:
            results[x] = residual(x, u, ma)
        except NoResidual as exc:
            raise NotDividing(f"residual missing at {x!r}", witness=x) from exc
    limited = any(r.fragment_limited for r in results.values())
    rep.data["dividing"] = True
    rep.data["fragment_limited"] = limited
    rep.note("u is dividing" + (" (fragment scope)" if limited else ""))
    if limited:
        return None, rep

    q = aqm.quant
    table = {a: residual(ma.star(a, u), u, ma).value for a in q.elements}
    nuc = nucleus(q, table)
    validate_presentation(nuc)
    selfm = self_module(aqm)
    sc = structural_check(nuc, selfm, scope="all")
    if not sc.data["structural"]:
        rep.failed("gamma_u structural on the scalar quantale")
        return nuc, rep
    rep.passed("gamma_u is a structural nucleus on the scalar quantale")

    # orbit module A*u is isomorphic to the quotient by gamma_u
    orbit_mod = submodule_on_orbit(ma, u)
    from .nucleus import quotient

    qm = quotient(selfm, nuc)
    fwd = {x: results[x].value for x in orbit_mod.space.elements}  # x -> x/u
    bwd = {a: ma.star(a, u) for a in qm.module.space.elements}     # a -> a*u
    iso_ok = all(bwd[fwd[x]] == x for x in orbit_mod.space.elements) and all(
        fwd[bwd[a]] == a for a in qm.module.space.elements
    )
    iso_ok = iso_ok and is_module_hom(fwd, orbit_mod, qm.module)
    iso_ok = iso_ok and is_module_hom(bwd, qm.module, orbit_mod)
    if iso_ok:
        rep.passed("orbit module isomorphic to scalar quotient",
                   "via x->x/u and a->a*u")
    else:
        rep.failed("orbit module isomorphic to scalar quotient")
    rep.data["nucleus"] = nuc
    return nuc, rep


def _element_key(x):
    return x.sort_key() if hasattr(x, "sort_key") else x


def _quantale_closure(sp, seed):
    closed = set(seed)
    closed.add(sp.zero)
    frontier = True
    while frontier:
        frontier = False
        for x, y in product(sorted(closed, key=_element_key), repeat=2):
            try:
                new = (sp.plus(x, y), sp.join([x, y]))
            except FragmentExceeded:
                continue
            for z in new:
                if z not in closed:
                    closed.add(z)
                    frontier = True
    return closed


def cyclic_check(am, u):
    """Is the action generated by the scalar orbit of u, at its level?

    Returns (bool, witness): the witness is an element outside the generated
    part when the answer is no. At module level over finite scalars the
    residual characterization (x/u)*u = x is cross-checked when u divides.
    """
    if am.level == POSET:
        orbit = {am.star(a, u) for a in am.scalars.elements}
        missing = [x for x in am.space.elements if x not in orbit]
        return (not missing, missing[0] if missing else None)
    if am.level == ACT:
        orbit = {am.star(a, u) for a in am.scalars.elements}
        closed = _quantale_closure(am.space, orbit)
        missing = [x for x in am.space_universe() if x not in closed]
        return (not missing, missing[0] if missing else None)
    if am.level == MODULE:
        orbit = set()
        for a in am.scalar_universe():
            try:
                orbit.add(am.star(a, u))
            except FragmentExceeded:
                pass
        missing = [x for x in am.space_universe() if x not in orbit]
        is_cyclic = not missing
        if am.scalars.is_finite:
            # cross-check against the residual characterization (x/u)*u = x
            try:
                ok = all(
                    am.star(residual(x, u, am).value, u) == x
                    for x in am.space_universe()
                )
            except NoResidual:
                ok = False
            if ok != is_cyclic:
                raise ArithmeticError(
                    f"orbit and residual characterizations of cyclicity "
                    f"disagree at u={u!r}"
                )
        return (is_cyclic, missing[0] if missing else None)
    raise ValueError(am.level)


def _iso_between(m1, m2):
    """Some module isomorphism m1 -> m2, or None."""
    for h in enumerate_module_homs(m1, m2):
        vals = sorted(h.values())
        if vals == sorted(m2.space.elements):
            inv = {v: k for k, v in h.items()}
            if is_module_hom(inv, m2, m1):
                return h
    return None


def cyclic_projective_check(ma, lifting_family=None):
    """Evaluate conditions (ii)-(v) of the dividing-idempotent
    characterization independently, assert their mutual equivalence, and
    report shared witnesses. Condition (i), projectivity itself, is checked
    directly only when a lifting family is supplied."""
    aqm = ma.scalars
    if not aqm.is_finite:
        raise TooLarge("characterization check needs finite scalars")
    q = aqm.quant
    rep = Report(f"cyclic-projective {ma.name or 'module'}")
    selfm = self_module(aqm)

    def dividing(u, module):
        try:
            return {x: residual(x, u, module).value for x in module.space_universe()}
        except NoResidual:
            return None

    idempotents = [u for u in q.elements if aqm.mult(u, u) == u]
    cyclic_gens = [v for v in ma.space.elements if cyclic_check(ma, v)[0]]
    rep.note(f"idempotent scalars: {idempotents}")
    rep.note(f"cyclic generators: {cyclic_gens}")

    def gamma_of(u, module):
        res = dividing(u, module)
        if res is None:
            return None
        return {a: residual(module.star(a, u), u, module).value for a in q.elements}

    w2, w3, w4, w5 = [], [], [], []
    for u in q.elements:  # ascending carrier order: minimal witnesses first
        u_div_self = dividing(u, selfm) is not None
        if u in idempotents and u_div_self:
            orbit_mod = submodule_on_orbit(selfm, u)
            if _iso_between(ma, orbit_mod) is not None:
                w2.append(u)
        for v in cyclic_gens:
            gv = gamma_of(v, ma)
            if gv is None:
                continue
            if u in idempotents and u_div_self:
                gu = gamma_of(u, selfm)
                if gu == gv:
                    w3.append((u, v))
            if u_div_self:
                if gv[u] == gv[aqm.one] and all(
                    aqm.mult(gv[a], u) == aqm.mult(a, u) for a in q.elements
                ):
                    w4.append((u, v))
                if ma.star(u, v) == v and all(
                    aqm.mult(residual(ma.star(a, v), v, ma).value, u)
                    == aqm.mult(a, u)
                    for a in q.elements
                ):
                    w5.append((u, v))

    conds = {"ii": sorted(set(w2)), "iii": sorted(set(w3)),
             "iv": sorted(set(w4)), "v": sorted(set(w5))}
    truth = {k: bool(v) for k, v in conds.items()}
    for k in ("ii", "iii", "iv", "v"):
        if truth[k]:
            rep.passed(f"condition ({k})", f"witness {conds[k][0]}")
        else:
            rep.note(f"condition ({k}): no witness")
    if len(set(truth.values())) > 1:
        rep.failed("conditions (ii)-(v) mutually equivalent", witness=truth)
    else:
        rep.passed("conditions (ii)-(v) mutually equivalent", f"all {truth['ii']}")
    rep.data["conditions"] = truth
    rep.data["witnesses"] = conds
    if truth["iii"]:
        shared = sorted(set(conds["iii"]) & set(conds["iv"]) & set(conds["v"]))
        shared = [uv for uv in shared if uv[0] in conds["ii"]]
        if shared:
            rep.passed("shared witness across conditions", f"(u,v)={shared[0]}")
            rep.data["shared_witness"] = shared[0]
        else:
            rep.failed("shared witness across conditions")
    if lifting_family is not None:
        lift_rep = lifting_check(ma, lifting_family)
        rep.merge(lift_rep)
        rep.data["lifting_ok"] = lift_rep.ok
        if lift_rep.ok != truth["ii"]:
            rep.failed("condition (i) agrees with (ii)-(v)",
                       witness=(lift_rep.ok, truth))
        else:
            rep.passed("condition (i) agrees with (ii)-(v)")
    if not any(truth.values()):
        rep.data["exhausted"] = True
        rep.note("conditions (ii)-(v) fail: no dividing idempotent witness "
                 "(not a projectivity verdict unless lifting also ran)")
    return rep


# -- module homomorphisms ------------------------------------------------------


def is_module_hom(h, src, dst):
    """h: dict mapping src carrier into dst carrier over the same scalars."""
    p, r = src.space, dst.space
    els = p.elements
    if sorted(h) != sorted(els):
        return False
    for x, y in product(els, repeat=2):
        if h[p.join([x, y])] != r.join([h[x], h[y]]):
            return False
        if h[p.plus(x, y)] != r.plus(h[x], h[y]):
            return False
    if h[p.zero] != r.zero:
        return False
    for a in src.scalar_universe():
        for x in els:
            if h[src.star(a, x)] != dst.star(a, h[x]):
                return False
    return True


def enumerate_module_homs(src, dst):
    """All module homomorphisms between finite modules over one AQM."""
    els = src.space.elements
    out = []
    for values in product(dst.space.elements, repeat=len(els)):
        h = dict(zip(els, values))
        if is_module_hom(h, src, dst):
            out.append(h)
    return out


def enumerate_surjective_homs(src, dst):
    return [
        h
        for h in enumerate_module_homs(src, dst)
        if set(h.values()) == set(dst.space.elements)
    ]


def lifting_check(p, family, size_guard=64):
    """For each (g, h) with g: q ->> r surjective and h: p -> r, search all
    module homomorphisms p -> q for a lift through g.

    `family` is a list of (g, q_module, r_module, h) tuples; use
    `exhaustive_family` to build one from a module list. The report records,
    per pair, the first lift found (deterministic enumeration order) or a
    NoLift verdict.
    """
    rep = Report(f"lifting {p.name or 'module'}")
    if len(family) > size_guard:
        raise TooLarge(f"{len(family)} lifting pairs > guard {size_guard}")
    from .errors import NotAHomomorphism

    for idx, (g, q_mod, r_mod, h) in enumerate(family):
        if not is_module_hom(g, q_mod, r_mod):
            raise NotAHomomorphism("surjection is not a module homomorphism",
                                   witness=sorted(g.items()))
        if set(g.values()) != set(r_mod.space.elements):
            raise NotAHomomorphism("map is not onto its codomain",
                                   witness=sorted(g.items()))
        if not is_module_hom(h, p, r_mod):
            raise NotAHomomorphism("candidate is not a module homomorphism",
                                   witness=sorted(h.items()))
        lift = None
        for cand in enumerate_module_homs(p, q_mod):
            if all(g[cand[x]] == h[x] for x in p.space.elements):
                lift = cand
                break
        label = f"pair {idx} ({q_mod.name}->>{r_mod.name})"
        if lift is None:
            rep.failed(label, witness=NoLift("no lift exists").args[0])
        else:
            rep.passed(label, f"lift {sorted(lift.items())}")
    rep.data["pairs"] = len(family)
    return rep


def exhaustive_family(p, modules, max_size=3):
    """Every surjection/hom pair among the given modules with carriers up to
    max_size, targeting lifts of p."""
    family = []
    small = [m for m in modules if len(m.space.elements) <= max_size]
    for q_mod in small:
        for r_mod in small:
            for g in enumerate_surjective_homs(q_mod, r_mod):
                for h in enumerate_module_homs(p, r_mod):
                    family.append((g, q_mod, r_mod, h))
    return family

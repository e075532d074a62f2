"""Relative categories and the partial Brown category axioms.

A PBC structure on a finite category is: a wide subcategory of weak
equivalences satisfying two-out-of-three, a wide subcategory of trivial
cofibrations containing the isomorphisms and contained in the weak
equivalences, closure of trivial cofibrations under cobase change (with the
pushouts required to exist), and a functorial factorization f = w(f)∘c(f) of
every weak equivalence with w(f)∘s(f) = id and c(f), s(f) trivial
cofibrations.

The factorization data is stored explicitly: mid objects, the three morphism
families c/w/s, and the mid-morphism table μ indexed by commuting squares
between weak equivalences.  μ is defined on squares with arbitrary legs (the
full subcategory of the arrow category spanned by the weak equivalences);
this is what the functor-category combinator needs, and the trivial scheme
satisfies it.  Functoriality of μ is checked by materializing the square
category and validating the mid assignment as an ordinary functor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .fincat import (
    BudgetExceededError,
    CategoryError,
    CheckReport,
    FinCategory,
    Functor,
    NatTransformation,
    Violation,
    WideSubcategory,
    combine,
    enumerate_functors,
    enumerate_nat_trans,
    pair_id,
    pushout,
    validate_category,
)


@dataclass(frozen=True)
class RelativeCategory:
    carrier: FinCategory
    weq: WideSubcategory

    @staticmethod
    def of(carrier: FinCategory, weq_ids: Iterable[str]) -> "RelativeCategory":
        return RelativeCategory(carrier, WideSubcategory.of(carrier, weq_ids))


def check_relative_category(rc: RelativeCategory) -> CheckReport:
    """weq must be a wide subcategory of a valid carrier."""
    rep = validate_category(rc.carrier)
    if not rep.ok:
        return rep
    return rc.weq.check()


def check_two_out_of_three(rc: RelativeCategory) -> CheckReport:
    """If two of f, g, g∘f are weak equivalences then so is the third."""
    out: list[Violation] = []
    cat = rc.carrier
    members = rc.weq.members
    for (g, f), h in cat.composition.items():
        flags = (f in members, g in members, h in members)
        if sum(flags) == 2:
            out.append(Violation("two-of-three", (f, g, h),
                                 "exactly two of f, g, g∘f are weak equivalences"))
    return CheckReport(tuple(out))


# -- factorization schemes -----------------------------------------------------

SquareKey = tuple[str, str, str, str]  # (f, g, leg on sources u, leg on targets v)


@dataclass(frozen=True)
class FactorizationScheme:
    """Axiom-4 data: f = back(f)∘front(f), back(f)∘section(f) = id, with
    front and section trivial cofibrations, plus the mid-morphism table μ."""

    mid: Mapping[str, str]
    front: Mapping[str, str]
    back: Mapping[str, str]
    section: Mapping[str, str]
    mu: Mapping[SquareKey, str]


def weq_squares(cat: FinCategory, weq: frozenset[str]) -> list[SquareKey]:
    """All commuting squares (f, g, u, v) between weak equivalences, with
    arbitrary legs u: src f -> src g, v: tgt f -> tgt g."""
    out = []
    ws = sorted(weq)
    for f in ws:
        fa, fb = cat.morphisms[f]
        for g in ws:
            ga, gb = cat.morphisms[g]
            for u in cat.hom(fa, ga):
                gu = cat.compose(g, u)
                for v in cat.hom(fb, gb):
                    if cat.compose(v, f) == gu:
                        out.append((f, g, u, v))
    return out


def square_id(sq: SquareKey) -> str:
    f, g, u, v = sq
    return f"sq({f}>{g}|{u}|{v})"


def square_category(cat: FinCategory, weq: frozenset[str]) -> tuple[FinCategory, dict[str, SquareKey]]:
    """The arrow-category-of-weak-equivalences, materialized.

    Objects are the weq morphisms of the carrier; morphisms are commuting
    squares with arbitrary legs, composed legwise.
    """
    squares = weq_squares(cat, weq)
    objects = sorted(weq)
    morphisms: dict[str, tuple[str, str]] = {}
    index: dict[str, SquareKey] = {}
    identity: dict[str, str] = {}
    for sq in squares:
        f, g, u, v = sq
        sid = square_id(sq)
        morphisms[sid] = (f, g)
        index[sid] = sq
    for f in objects:
        fa, fb = cat.morphisms[f]
        sid = square_id((f, f, cat.identity[fa], cat.identity[fb]))
        identity[f] = sid
    comp = {}
    for s2 in morphisms:
        f2, g2, u2, v2 = index[s2]
        for s1 in morphisms:
            f1, g1, u1, v1 = index[s1]
            if g1 == f2:
                comp[(s2, s1)] = square_id((f1, g2, cat.compose(u2, u1), cat.compose(v2, v1)))
    return FinCategory.build(objects, morphisms, identity, comp), index


def trivial_scheme(cat: FinCategory, weq: frozenset[str]) -> FactorizationScheme:
    """c(f) = f, mid = target, w = s = id, μ of a square = its target leg.

    Legal exactly when every weak equivalence is a trivial cofibration, which
    a finite PBC always has.
    """
    mid = {f: cat.tgt(f) for f in weq}
    front = {f: f for f in weq}
    back = {f: cat.identity[cat.tgt(f)] for f in weq}
    section = dict(back)
    mu = {sq: sq[3] for sq in weq_squares(cat, weq)}
    return FactorizationScheme(mid, front, back, section, mu)


# -- PBC structures ---------------------------------------------------------------

@dataclass(frozen=True)
class PBCStructure:
    rel: RelativeCategory
    tcof: WideSubcategory
    fact: Optional[FactorizationScheme]

    @property
    def carrier(self) -> FinCategory:
        return self.rel.carrier

    @property
    def weq(self) -> frozenset[str]:
        return self.rel.weq.members

    def weq_subcategory(self) -> FinCategory:
        return self.rel.weq.as_category()


def check_pbc(pbc: PBCStructure) -> CheckReport:
    """Every PBC axiom, exhaustively; the report names the violated axiom.

    Axiom 3 runs a pushout search for every (trivial cofibration, map) span;
    axiom 4 checks the factorization equations, membership constraints, and
    μ-functoriality over the materialized square category.
    """
    cat = pbc.carrier
    out: list[Violation] = []
    base = validate_category(cat)
    if not base.ok:
        return base
    out.extend(pbc.rel.weq.check().violations)
    out.extend(pbc.tcof.check().violations)
    if out:
        return CheckReport(tuple(out))
    weq, tcof = pbc.weq, pbc.tcof.members
    # axiom 1
    for f in cat.isomorphisms():
        if f not in weq:
            out.append(Violation("axiom1-iso-not-weq", (f,), "isomorphism missing from weq"))
        if f not in tcof:
            out.append(Violation("axiom1-iso-not-tcof", (f,), "isomorphism missing from tcof"))
    for f in sorted(tcof - weq):
        out.append(Violation("axiom1-tcof-not-weq", (f,), "trivial cofibration is not a weak equivalence"))
    # axiom 2
    for v in check_two_out_of_three(pbc.rel).violations:
        out.append(Violation("axiom2-" + v.law, v.subjects, v.detail))
    # axiom 3
    for i in sorted(tcof):
        a = cat.src(i)
        for g in cat._out_of(a):
            got = pushout(cat, i, g)
            if got is None:
                out.append(Violation("axiom3-pushout-missing", (i, g),
                                     "no pushout of the trivial cofibration along the map"))
            elif got.leg_right not in tcof:
                out.append(Violation("axiom3-cobase-not-tcof", (i, g, got.leg_right),
                                     "cobase change is not a trivial cofibration"))
    # axiom 4
    out.extend(check_axiom4(cat, weq, tcof, pbc.fact))
    return CheckReport(tuple(out))


def check_axiom4(cat: FinCategory, weq: frozenset[str], tcof: frozenset[str],
                 fact: Optional[FactorizationScheme]) -> list[Violation]:
    """The factorization-axiom section of check_pbc, reusable by the
    derivation search."""
    out: list[Violation] = []
    if fact is None:
        return [Violation("axiom4-missing-scheme", (), "no factorization scheme given")]
    for f in sorted(weq):
        a, b = cat.morphisms[f]
        if f not in fact.mid or f not in fact.front or f not in fact.back or f not in fact.section:
            out.append(Violation("axiom4-domain", (f,), "scheme missing this weak equivalence"))
            continue
        m, c, w, s = fact.mid[f], fact.front[f], fact.back[f], fact.section[f]
        if cat.morphisms.get(c) != (a, m) or cat.morphisms.get(w) != (m, b) \
                or cat.morphisms.get(s) != (b, m):
            out.append(Violation("axiom4-endpoints", (f,), "c/w/s endpoints disagree with mid"))
            continue
        if cat.compose(w, c) != f:
            out.append(Violation("axiom4-factor", (f, c, w), "w(f)∘c(f) != f"))
        if cat.compose(w, s) != cat.identity[b]:
            out.append(Violation("axiom4-section", (f, w, s), "w(f)∘s(f) != id"))
        if c not in tcof:
            out.append(Violation("axiom4-front-not-tcof", (f, c), "c(f) is not a trivial cofibration"))
        if s not in tcof:
            out.append(Violation("axiom4-section-not-tcof", (f, s), "s(f) is not a trivial cofibration"))
        if w not in weq:
            out.append(Violation("axiom4-back-not-weq", (f, w),
                                 "w(f) must be a weak equivalence (forced by two-of-three; input inconsistent)"))
    if out:
        return out
    # the three squares per arrow-category morphism, then μ functoriality
    squares = weq_squares(cat, weq)
    for sq in squares:
        f, g, u, v = sq
        t = fact.mu.get(sq)
        if t is None:
            out.append(Violation("axiom4-mu-missing", sq, "μ undefined on a square"))
            continue
        if cat.morphisms.get(t) != (fact.mid[f], fact.mid[g]):
            out.append(Violation("axiom4-mu-endpoints", sq + (t,), "μ endpoints disagree"))
            continue
        if cat.compose(t, fact.front[f]) != cat.compose(fact.front[g], u):
            out.append(Violation("axiom4-front-square", sq, "c-square does not commute"))
        if cat.compose(v, fact.back[f]) != cat.compose(fact.back[g], t):
            out.append(Violation("axiom4-back-square", sq, "w-square does not commute"))
        if cat.compose(t, fact.section[f]) != cat.compose(fact.section[g], v):
            out.append(Violation("axiom4-section-square", sq, "s-square does not commute"))
    if out:
        return out
    sq_cat, sq_index = square_category(cat, weq)
    mid_fun = Functor(sq_cat, cat, dict(fact.mid),
                      {sid: fact.mu[sq] for sid, sq in sq_index.items()})
    rep = mid_fun.check()
    for v in rep.violations:
        out.append(Violation("axiom4-mu-functorial", v.subjects, v.render()))
    return out


def derive_factorization(rel: RelativeCategory, tcof: WideSubcategory,
                         budget: int = 200_000) -> Optional[FactorizationScheme]:
    """Search for axiom-4 data, preferring the trivial scheme when legal.

    Enumerates (mid, c, w, s) per weak equivalence and μ per square, checking
    all equations and μ-functoriality; returns None when no scheme exists.
    """
    cat = rel.carrier
    weq = rel.weq.members
    tc = tcof.members
    ws = sorted(weq)
    candidates: dict[str, list[tuple[str, str, str, str]]] = {}
    for f in ws:
        a, b = cat.morphisms[f]
        opts = []
        for m in cat.objects:
            for c in cat.hom(a, m):
                if c not in tc:
                    continue
                for w in cat.hom(m, b):
                    if w not in weq or cat.compose(w, c) != f:
                        continue
                    for s in cat.hom(b, m):
                        if s in tc and cat.compose(w, s) == cat.identity[b]:
                            opts.append((m, c, w, s))
        trivial = (b, f, cat.identity[b], cat.identity[b])
        opts.sort()
        if trivial in opts:
            opts.remove(trivial)
            opts.insert(0, trivial)
        if not opts:
            return None
        candidates[f] = opts
    squares = weq_squares(cat, weq)
    visited = 0

    def try_mu(assign: dict[str, tuple[str, str, str, str]]) -> Optional[dict[SquareKey, str]]:
        nonlocal visited
        mid = {f: assign[f][0] for f in ws}
        front = {f: assign[f][1] for f in ws}
        back = {f: assign[f][2] for f in ws}
        section = {f: assign[f][3] for f in ws}
        per_square: list[tuple[SquareKey, list[str]]] = []
        for sq in squares:
            f, g, u, v = sq
            opts = []
            for t in cat.hom(mid[f], mid[g]):
                if (cat.compose(t, front[f]) == cat.compose(front[g], u)
                        and cat.compose(v, back[f]) == cat.compose(back[g], t)
                        and cat.compose(t, section[f]) == cat.compose(section[g], v)):
                    opts.append(t)
            if not opts:
                return None
            per_square.append((sq, opts))

        chosen: dict[SquareKey, str] = {}

        def place(i: int) -> Optional[dict[SquareKey, str]]:
            nonlocal visited
            if i == len(per_square):
                scheme = FactorizationScheme(mid, front, back, section, dict(chosen))
                # functoriality is the only thing left to verify
                bad = check_axiom4(cat, weq, tc, scheme)
                return dict(chosen) if not bad else None
            sq, opts = per_square[i]
            for t in opts:
                visited += 1
                if visited > budget:
                    raise BudgetExceededError("factorization search exceeded budget")
                chosen[sq] = t
                got = place(i + 1)
                if got is not None:
                    return got
                del chosen[sq]
            return None

        return place(0)

    assign: dict[str, tuple[str, str, str, str]] = {}

    def place_f(i: int) -> Optional[FactorizationScheme]:
        nonlocal visited
        if i == len(ws):
            mu = try_mu(assign)
            if mu is None:
                return None
            return FactorizationScheme({f: assign[f][0] for f in ws},
                                       {f: assign[f][1] for f in ws},
                                       {f: assign[f][2] for f in ws},
                                       {f: assign[f][3] for f in ws}, mu)
        f = ws[i]
        for opt in candidates[f]:
            visited += 1
            if visited > budget:
                raise BudgetExceededError("factorization search exceeded budget")
            assign[f] = opt
            got = place_f(i + 1)
            if got is not None:
                return got
            del assign[f]
        return None

    return place_f(0)


def derive_mu(rel: RelativeCategory, tcof: WideSubcategory,
              mid: Mapping[str, str], front: Mapping[str, str],
              back: Mapping[str, str], section: Mapping[str, str],
              budget: int = 200_000) -> Optional[Mapping[SquareKey, str]]:
    """Fill in the μ table for given per-morphism factorization data."""
    cat = rel.carrier
    squares = weq_squares(cat, rel.weq.members)
    per_square: list[tuple[SquareKey, list[str]]] = []
    for sq in squares:
        f, g, u, v = sq
        opts = []
        for t in cat.hom(mid[f], mid[g]):
            if (cat.compose(t, front[f]) == cat.compose(front[g], u)
                    and cat.compose(v, back[f]) == cat.compose(back[g], t)
                    and cat.compose(t, section[f]) == cat.compose(section[g], v)):
                opts.append(t)
        if not opts:
            return None
        per_square.append((sq, opts))
    chosen: dict[SquareKey, str] = {}
    visited = 0

    def place(i: int) -> Optional[Mapping[SquareKey, str]]:
        nonlocal visited
        if i == len(per_square):
            scheme = FactorizationScheme(dict(mid), dict(front), dict(back),
                                         dict(section), dict(chosen))
            bad = check_axiom4(cat, rel.weq.members, tcof.members, scheme)
            return dict(chosen) if not bad else None
        sq, opts = per_square[i]
        for t in opts:
            visited += 1
            if visited > budget:
                raise BudgetExceededError("μ search exceeded budget")
            chosen[sq] = t
            got = place(i + 1)
            if got is not None:
                return got
            del chosen[sq]
        return None

    return place(0)


# -- Ken Brown's lemma as a checkable property --------------------------------------

@dataclass(frozen=True)
class KenBrownReport:
    hypothesis_holds: bool          # F sends trivial cofibrations into target weq
    conclusion_holds: bool          # F sends all weak equivalences into target weq
    hypothesis_counterexample: Optional[str] = None
    conclusion_counterexample: Optional[str] = None

    @property
    def flag_raised(self) -> bool:
        """H ∧ ¬C: impossible on a valid PBC; raising it indicates a defect."""
        return self.hypothesis_holds and not self.conclusion_holds


def ken_brown_check(fun: Functor, pbc: PBCStructure,
                    target: RelativeCategory) -> KenBrownReport:
    """Evaluate the hypothesis and conclusion of Ken Brown's lemma for a
    functor defined on the weq-subcategory of the PBC."""
    wsub = pbc.weq_subcategory()
    if fun.source != wsub:
        raise CategoryError("functor must be defined on the weq-subcategory of the PBC")
    if fun.target != target.carrier:
        raise CategoryError("functor target disagrees with the target relative category")
    h_ok, h_bad = True, None
    for f in sorted(pbc.tcof.members):
        if fun.morphism_map[f] not in target.weq.members:
            h_ok, h_bad = False, f
            break
    c_ok, c_bad = True, None
    for f in sorted(pbc.weq):
        if fun.morphism_map[f] not in target.weq.members:
            c_ok, c_bad = False, f
            break
    return KenBrownReport(h_ok, c_ok, h_bad, c_bad)


# -- PBC combinators ----------------------------------------------------------------

def pbc_combine(a: PBCStructure, b: PBCStructure, mode: str) -> PBCStructure:
    """Product or coproduct of PBCs, classes and factorization included."""
    carrier = combine(a.carrier, b.carrier, mode)
    if mode == "product":
        weq = {pair_id(f, g) for f in a.weq for g in b.weq}
        tcof = {pair_id(f, g) for f in a.tcof.members for g in b.tcof.members}
        fact = None
        if a.fact is not None and b.fact is not None:
            mid = {}
            front = {}
            back = {}
            section = {}
            for f in a.weq:
                for g in b.weq:
                    m = pair_id(f, g)
                    mid[m] = pair_id(a.fact.mid[f], b.fact.mid[g])
                    front[m] = pair_id(a.fact.front[f], b.fact.front[g])
                    back[m] = pair_id(a.fact.back[f], b.fact.back[g])
                    section[m] = pair_id(a.fact.section[f], b.fact.section[g])
            mu = {}
            from .fincat import _split_pair

            for sq in weq_squares(carrier, frozenset(weq)):
                f, g, u, v = sq
                f1, f2 = _split_pair(f)
                g1, g2 = _split_pair(g)
                u1, u2 = _split_pair(u)
                v1, v2 = _split_pair(v)
                mu[sq] = pair_id(a.fact.mu[(f1, g1, u1, v1)], b.fact.mu[(f2, g2, u2, v2)])
            fact = FactorizationScheme(mid, front, back, section, mu)
        rel = RelativeCategory.of(carrier, weq)
        return PBCStructure(rel, WideSubcategory.of(carrier, tcof), fact)
    if mode == "coproduct":
        def tag(side, s):
            return f"in{side}({s})"

        weq = {tag("l", f) for f in a.weq} | {tag("r", f) for f in b.weq}
        tcof = {tag("l", f) for f in a.tcof.members} | {tag("r", f) for f in b.tcof.members}
        fact = None
        if a.fact is not None and b.fact is not None:
            def tagmap(side, m):
                return {tag(side, k): tag(side, v) for k, v in m.items()}

            mid = tagmap("l", a.fact.mid) | tagmap("r", b.fact.mid)
            front = tagmap("l", a.fact.front) | tagmap("r", b.fact.front)
            back = tagmap("l", a.fact.back) | tagmap("r", b.fact.back)
            section = tagmap("l", a.fact.section) | tagmap("r", b.fact.section)
            mu = {}
            for side, src in (("l", a.fact.mu), ("r", b.fact.mu)):
                for (f, g, u, v), t in src.items():
                    mu[(tag(side, f), tag(side, g), tag(side, u), tag(side, v))] = tag(side, t)
            fact = FactorizationScheme(mid, front, back, section, mu)
        rel = RelativeCategory.of(carrier, weq)
        return PBCStructure(rel, WideSubcategory.of(carrier, tcof), fact)
    raise CategoryError(f"unknown combine mode: {mode!r}")


def _functor_key(shape: FinCategory, fun: Functor) -> str:
    objs = ",".join(fun.object_map[x] for x in shape.objects)
    mors = ",".join(fun.morphism_map[m] for m in shape.morphisms)
    return f"F[{objs};{mors}]"


def _nat_key(shape: FinCategory, components: Mapping[str, str]) -> tuple[str, ...]:
    return tuple(components[x] for x in shape.objects)


def pbc_functor_category(m: PBCStructure, shape: RelativeCategory,
                         budget: int = 500_000) -> PBCStructure:
    """The PBC of relative functors shape -> m with levelwise classes.

    Objects: functors sending shape weak equivalences into m's weak
    equivalences.  Morphisms: all natural transformations.  Weak equivalences
    and trivial cofibrations are levelwise; the factorization scheme is
    applied levelwise, with μ supplying the mid functor's action on
    non-weak-equivalence shape morphisms.
    """
    scat = shape.carrier
    funs = [f for f in enumerate_functors(scat, m.carrier, budget=budget)
            if all(f.morphism_map[w] in m.weq for w in shape.weq.members)]
    fun_by_key = {_functor_key(scat, f): f for f in funs}
    obj_ids = sorted(fun_by_key)
    # natural transformations, all of them, between every ordered pair
    morphisms: dict[str, tuple[str, str]] = {}
    components: dict[str, dict[str, str]] = {}
    nt_id: dict[tuple[str, str, tuple[str, ...]], str] = {}
    identity: dict[str, str] = {}
    for src_id in obj_ids:
        for tgt_id in obj_ids:
            nts = enumerate_nat_trans(fun_by_key[src_id], fun_by_key[tgt_id])
            for k, nt in enumerate(nts):
                mid_ = f"{src_id}=>{tgt_id}#{k:03d}"
                morphisms[mid_] = (src_id, tgt_id)
                components[mid_] = dict(nt.components)
                nt_id[(src_id, tgt_id, _nat_key(scat, nt.components))] = mid_
    for oid in obj_ids:
        f = fun_by_key[oid]
        comps = {x: m.carrier.identity[f.object_map[x]] for x in scat.objects}
        identity[oid] = nt_id[(oid, oid, _nat_key(scat, comps))]
    comp: dict[tuple[str, str], str] = {}
    for g, (gs, gt) in morphisms.items():
        for f, (fs, ft) in morphisms.items():
            if ft == gs:
                comps = {x: m.carrier.compose(components[g][x], components[f][x])
                         for x in scat.objects}
                comp[(g, f)] = nt_id[(fs, gt, _nat_key(scat, comps))]
    carrier = FinCategory.build(obj_ids, morphisms, identity, comp)
    weq = {mid_ for mid_, cs in components.items()
           if all(c in m.weq for c in cs.values())}
    tcof = {mid_ for mid_, cs in components.items()
            if all(c in m.tcof.members for c in cs.values())}
    fact = None
    if m.fact is not None:
        mid_map: dict[str, str] = {}
        front: dict[str, str] = {}
        back: dict[str, str] = {}
        section: dict[str, str] = {}
        for eta in sorted(weq):
            src_id, tgt_id = morphisms[eta]
            fsrc, ftgt = fun_by_key[src_id], fun_by_key[tgt_id]
            cs = components[eta]
            mobj = {x: m.fact.mid[cs[x]] for x in scat.objects}
            mmor = {}
            for sm, (x, y) in scat.morphisms.items():
                key = (cs[x], cs[y], fsrc.morphism_map[sm], ftgt.morphism_map[sm])
                mmor[sm] = m.fact.mu[key]
            mid_fun = Functor(scat, m.carrier, mobj, mmor)
            mid_id = _functor_key(scat, mid_fun)
            if mid_id not in fun_by_key:
                raise CategoryError(
                    f"levelwise mid functor of {eta} is not a relative functor; "
                    "the input scheme is inconsistent")
            mid_map[eta] = mid_id
            front[eta] = nt_id[(src_id, mid_id,
                                _nat_key(scat, {x: m.fact.front[cs[x]] for x in scat.objects}))]
            back[eta] = nt_id[(mid_id, tgt_id,
                               _nat_key(scat, {x: m.fact.back[cs[x]] for x in scat.objects}))]
            section[eta] = nt_id[(tgt_id, mid_id,
                                  _nat_key(scat, {x: m.fact.section[cs[x]] for x in scat.objects}))]
        mu: dict[SquareKey, str] = {}
        for sq in weq_squares(carrier, frozenset(weq)):
            eta, theta, sigma, tau = sq
            comps = {x: m.fact.mu[(components[eta][x], components[theta][x],
                                   components[sigma][x], components[tau][x])]
                     for x in scat.objects}
            mu[sq] = nt_id[(mid_map[eta], mid_map[theta], _nat_key(scat, comps))]
        fact = FactorizationScheme(mid_map, front, back, section, mu)
    rel = RelativeCategory.of(carrier, weq)
    return PBCStructure(rel, WideSubcategory.of(carrier, tcof), fact)


# -- Brown categories -----------------------------------------------------------------

@dataclass(frozen=True)
class ChosenCoproducts:
    initial: str
    pairs: Mapping[tuple[str, str], tuple[str, str, str]]  # (x, y) -> (obj, inj_x, inj_y)


@dataclass(frozen=True)
class CylinderData:
    cyl: Mapping[str, str]        # X -> X⊗I
    on_mor: Mapping[str, str]     # f -> f⊗I (functorial)
    fold_cof: Mapping[str, str]   # X⊔X -> X⊗I, a cofibration
    fold_weq: Mapping[str, str]   # X⊗I -> X, a weak equivalence


@dataclass(frozen=True)
class BrownStructure:
    rel: RelativeCategory
    cof: WideSubcategory
    coproducts: ChosenCoproducts
    cylinder: CylinderData

    @property
    def carrier(self) -> FinCategory:
        return self.rel.carrier


class MissingPushoutError(CategoryError):
    def __init__(self, f: str, g: str):
        super().__init__(f"required pushout of span ({f}, {g}) does not exist in the carrier")
        self.span = (f, g)


def _is_coproduct(cat: FinCategory, x: str, y: str,
                  obj: str, ix: str, iy: str) -> bool:
    if cat.morphisms.get(ix) != (x, obj) or cat.morphisms.get(iy) != (y, obj):
        return False
    for q in cat.objects:
        for u in cat.hom(x, q):
            for v in cat.hom(y, q):
                n = sum(1 for h in cat.hom(obj, q)
                        if cat.compose(h, ix) == u and cat.compose(h, iy) == v)
                if n != 1:
                    return False
    return True


def copair(cat: FinCategory, cop: ChosenCoproducts, x: str, y: str,
           u: str, v: str) -> Optional[str]:
    """The mediating morphism x⊔y -> q for a cocone (u: x->q, v: y->q)."""
    obj, ix, iy = cop.pairs[(x, y)]
    for h in cat.hom(obj, cat.tgt(u)):
        if cat.compose(h, ix) == u and cat.compose(h, iy) == v:
            return h
    return None


def check_brown_category(b: BrownStructure) -> CheckReport:
    """The five Brown axioms plus the chosen-structure obligations.

    Chosen coproducts must satisfy their universal property, the fold
    factorization must be cofibration-then-weak-equivalence with composite the
    codiagonal, the empty-to-X maps must be cofibrations, and the cylinder
    assignment must be functorial and natural.
    """
    cat = b.carrier
    out: list[Violation] = []
    base = validate_category(cat)
    if not base.ok:
        return base
    out.extend(b.rel.weq.check().violations)
    out.extend(b.cof.check().violations)
    if out:
        return CheckReport(tuple(out))
    weq, cof = b.rel.weq.members, b.cof.members
    # axiom 1
    for v in check_two_out_of_three(b.rel).violations:
        out.append(Violation("brown1-" + v.law, v.subjects, v.detail))
    for f in cat.isomorphisms():
        if f not in weq:
            out.append(Violation("brown1-iso-not-weq", (f,), "isomorphism missing from weq"))
        # axiom 2
        if f not in cof:
            out.append(Violation("brown2-iso-not-cof", (f,), "isomorphism missing from cof"))
    # axiom 3
    tcof = cof & weq
    for i in sorted(cof):
        for g in cat._out_of(cat.src(i)):
            got = pushout(cat, i, g)
            if got is None:
                out.append(Violation("brown3-pushout-missing", (i, g), "no pushout"))
                continue
            if got.leg_right not in cof:
                out.append(Violation("brown3-cobase-not-cof", (i, g, got.leg_right), ""))
            if i in tcof and got.leg_right not in tcof:
                out.append(Violation("brown3-cobase-not-trivial", (i, g, got.leg_right), ""))
    # chosen coproducts
    init = b.coproducts.initial
    if init not in set(cat.objects):
        out.append(Violation("coproduct-initial-missing", (init,), "not an object"))
    else:
        for x in cat.objects:
            maps = cat.hom(init, x)
            if len(maps) != 1:
                out.append(Violation("coproduct-initial-not-initial", (x,),
                                     f"{len(maps)} maps from the initial object"))
            # axiom 5
            elif maps[0] not in cof:
                out.append(Violation("brown5-empty-to-X-not-cof", (x, maps[0]), ""))
    for x in cat.objects:
        for y in cat.objects:
            if (x, y) not in b.coproducts.pairs:
                out.append(Violation("coproduct-pair-missing", (x, y), "no chosen coproduct"))
                continue
            obj, ix, iy = b.coproducts.pairs[(x, y)]
            if not _is_coproduct(cat, x, y, obj, ix, iy):
                out.append(Violation("coproduct-not-universal", (x, y, obj), ""))
    if any(v.law.startswith("coproduct") for v in out):
        return CheckReport(tuple(out))
    # axiom 4: fold factorization through the cylinder
    for x in cat.objects:
        cyl = b.cylinder.cyl.get(x)
        q = b.cylinder.fold_cof.get(x)
        r = b.cylinder.fold_weq.get(x)
        obj, ix, iy = b.coproducts.pairs[(x, x)]
        if cyl is None or q is None or r is None:
            out.append(Violation("brown4-missing", (x,), "cylinder data incomplete"))
            continue
        if cat.morphisms.get(q) != (obj, cyl) or cat.morphisms.get(r) != (cyl, x):
            out.append(Violation("brown4-endpoints", (x,), "fold factorization endpoints wrong"))
            continue
        codiag = copair(cat, b.coproducts, x, x, cat.identity[x], cat.identity[x])
        if codiag is None or cat.compose(r, q) != codiag:
            out.append(Violation("brown4-not-codiagonal", (x,), "r∘q is not the fold map"))
        if q not in cof:
            out.append(Violation("brown4-fold-not-cof", (x, q), ""))
        if r not in weq:
            out.append(Violation("brown4-collapse-not-weq", (x, r), ""))
    # cylinder functoriality and naturality
    for x in cat.objects:
        i = cat.identity[x]
        if b.cylinder.on_mor.get(i) != cat.identity.get(b.cylinder.cyl.get(x, "")):
            out.append(Violation("cylinder-identity", (x,), "X⊗I does not preserve identities"))
    for (g, f), h in cat.composition.items():
        gg, ff, hh = (b.cylinder.on_mor.get(m) for m in (g, f, h))
        if None in (gg, ff, hh):
            out.append(Violation("cylinder-missing", (g, f), "morphism action incomplete"))
            continue
        if cat.compose(gg, ff) != hh:
            out.append(Violation("cylinder-functorial", (g, f), "(g∘f)⊗I != (g⊗I)∘(f⊗I)"))
    for f, (x, y) in cat.morphisms.items():
        fI = b.cylinder.on_mor.get(f)
        if fI is None:
            continue
        rX, rY = b.cylinder.fold_weq[x], b.cylinder.fold_weq[y]
        if cat.compose(f, rX) != cat.compose(rY, fI):
            out.append(Violation("cylinder-collapse-natural", (f,), ""))
        # naturality of the inclusion: (f⊗I)∘q_X = q_Y∘(f⊔f)
        objx, ix1, ix2 = b.coproducts.pairs[(x, x)]
        objy, iy1, iy2 = b.coproducts.pairs[(y, y)]
        ff_cop = copair(cat, b.coproducts, x, x,
                        cat.compose(iy1, f), cat.compose(iy2, f))
        if ff_cop is None:
            out.append(Violation("cylinder-copair-missing", (f,), ""))
            continue
        if cat.compose(fI, b.cylinder.fold_cof[x]) != cat.compose(b.cylinder.fold_cof[y], ff_cop):
            out.append(Violation("cylinder-inclusion-natural", (f,), ""))
    return CheckReport(tuple(out))


def brown_to_pbc(b: BrownStructure) -> PBCStructure:
    """The factorization-lemma PBC of a Brown category with functorial
    cylinder: f: m -> n factors through (m⊗I)⊔^m n, the section is the
    pushout leg from n, and μ comes from the pushout universal property.

    Raises MissingPushoutError when the carrier lacks a required pushout.
    """
    cat = b.carrier
    weq = b.rel.weq.members
    cof = b.cof.members
    tcof = frozenset(weq & cof)
    mid: dict[str, str] = {}
    front: dict[str, str] = {}
    back: dict[str, str] = {}
    section: dict[str, str] = {}
    legs: dict[str, tuple[str, str]] = {}  # f -> (leg from m⊗I, leg from n)
    i0: dict[str, str] = {}
    i1: dict[str, str] = {}
    for x in cat.objects:
        obj, ix1, ix2 = b.coproducts.pairs[(x, x)]
        q = b.cylinder.fold_cof[x]
        i0[x] = cat.compose(q, ix1)
        i1[x] = cat.compose(q, ix2)
    for f in sorted(weq):
        m, n = cat.morphisms[f]
        got = pushout(cat, i1[m], f)
        if got is None:
            raise MissingPushoutError(i1[m], f)
        p, from_cyl, from_n = got.apex, got.leg_left, got.leg_right
        mid[f] = p
        front[f] = cat.compose(from_cyl, i0[m])
        section[f] = from_n
        legs[f] = (from_cyl, from_n)
        # mediating collapse P -> n for the cocone (f∘r_m, id_n)
        target = None
        fr = cat.compose(f, b.cylinder.fold_weq[m])
        for h in cat.hom(p, n):
            if cat.compose(h, from_cyl) == fr and cat.compose(h, from_n) == cat.identity[n]:
                target = h
                break
        if target is None:
            raise MissingPushoutError(i1[m], f)
        back[f] = target
    mu: dict[SquareKey, str] = {}
    for sq in weq_squares(cat, weq):
        f, g, u, v = sq
        m, n = cat.morphisms[f]
        bcyl_f, bn_f = legs[f]
        bcyl_g, bn_g = legs[g]
        uI = b.cylinder.on_mor[u]
        lhs = cat.compose(bcyl_g, uI)
        rhs = cat.compose(bn_g, v)
        found = None
        for t in cat.hom(mid[f], mid[g]):
            if cat.compose(t, bcyl_f) == lhs and cat.compose(t, bn_f) == rhs:
                found = t
                break
        if found is None:
            raise MissingPushoutError(f, g)
        mu[sq] = found
    fact = FactorizationScheme(mid, front, back, section, mu)
    return PBCStructure(b.rel, WideSubcategory.of(cat, tcof), fact)


# -- convenient constructors ------------------------------------------------------------

def pbc_all_weq(cat: FinCategory) -> PBCStructure:
    """weq = tcof = every morphism, with the trivial factorization scheme."""
    weq = frozenset(cat.morphisms)
    rel = RelativeCategory.of(cat, weq)
    return PBCStructure(rel, WideSubcategory.of(cat, weq), trivial_scheme(cat, weq))


def pbc_discrete(cat: FinCategory) -> PBCStructure:
    """weq = tcof = the isomorphisms only (for loop-free carriers these are
    the identities), with the trivial scheme."""
    weq = frozenset(cat.isomorphisms()) | frozenset(cat.identity.values())
    rel = RelativeCategory.of(cat, weq)
    return PBCStructure(rel, WideSubcategory.of(cat, weq), trivial_scheme(cat, weq))

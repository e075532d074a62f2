"""Finite categories with explicit composition tables.

Everything downstream (relative categories, nerves, the zig-zag machinery)
lives inside a FinCategory: a finite set of object ids, a finite set of
morphism ids with sources and targets, a chosen identity per object, and a
total composition table on composable pairs.  All ids are strings and all
canonical orderings are lexicographic on the id string; that ordering is part
of the module contract and is what makes golden tests and reports
deterministic.

Values are immutable after construction and every operation is a pure
function, so they can be shared freely.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence


class CategoryError(Exception):
    """Raised on malformed input (mismatched sources, shape errors, ...)."""


class BudgetExceededError(Exception):
    """Raised when an enumeration exceeds its configured candidate budget."""


@dataclass(frozen=True)
class Violation:
    """One broken law, with the ids needed to locate it."""

    law: str
    subjects: tuple[str, ...] = ()
    detail: str = ""

    def render(self) -> str:
        subj = ", ".join(self.subjects)
        return f"{self.law}[{subj}]: {self.detail}" if subj else f"{self.law}: {self.detail}"


@dataclass(frozen=True)
class CheckReport:
    """A bag of violations; empty means every checked law holds."""

    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def laws(self) -> tuple[str, ...]:
        return tuple(v.law for v in self.violations)

    def render(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(v.render() for v in self.violations)

    @staticmethod
    def merge(*reports: "CheckReport") -> "CheckReport":
        out: list[Violation] = []
        for r in reports:
            out.extend(r.violations)
        return CheckReport(tuple(out))


def _sorted_mapping(m: Mapping) -> dict:
    return {k: m[k] for k in sorted(m)}


@dataclass(frozen=True)
class FinCategory:
    """A finite category given by explicit tables.

    morphisms maps morphism id -> (source object id, target object id);
    composition maps (g, f) -> g∘f and must be defined exactly on composable
    pairs (target of f = source of g).
    """

    objects: tuple[str, ...]
    morphisms: Mapping[str, tuple[str, str]]
    identity: Mapping[str, str]
    composition: Mapping[tuple[str, str], str]

    @staticmethod
    def build(objects: Iterable[str],
              morphisms: Mapping[str, tuple[str, str]],
              identity: Mapping[str, str],
              composition: Mapping[tuple[str, str], str]) -> "FinCategory":
        return FinCategory(
            objects=tuple(sorted(objects)),
            morphisms=_sorted_mapping(morphisms),
            identity=_sorted_mapping(identity),
            composition=dict(composition),
        )

    # -- basic accessors ---------------------------------------------------

    def src(self, f: str) -> str:
        return self.morphisms[f][0]

    def tgt(self, f: str) -> str:
        return self.morphisms[f][1]

    def id_of(self, x: str) -> str:
        return self.identity[x]

    def is_identity(self, f: str) -> bool:
        x = self.src(f)
        return self.tgt(f) == x and self.identity.get(x) == f

    def composable(self, g: str, f: str) -> bool:
        return self.tgt(f) == self.src(g)

    def compose(self, g: str, f: str) -> str:
        """g∘f; raises CategoryError if the pair is not composable."""
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise CategoryError(
                f"compose({g}, {f}) undefined: "
                f"tgt({f})={self.tgt(f)} vs src({g})={self.src(g)}") from None

    def compose_path(self, path: Sequence[str]) -> str:
        """Compose a chain [f1, f2, ..., fn] as fn∘...∘f1."""
        if not path:
            raise CategoryError("cannot compose an empty path without an object")
        acc = path[0]
        for f in path[1:]:
            acc = self.compose(f, acc)
        return acc

    @cached_property
    def _hom_index(self) -> dict[tuple[str, str], tuple[str, ...]]:
        idx: dict[tuple[str, str], list[str]] = {}
        for f in self.morphisms:
            idx.setdefault(self.morphisms[f], []).append(f)
        return {k: tuple(sorted(v)) for k, v in idx.items()}

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._hom_index.get((x, y), ())

    @cached_property
    def _inverses(self) -> dict[str, str]:
        inv: dict[str, str] = {}
        for f, (a, b) in self.morphisms.items():
            if f in inv:
                continue
            for g in self.hom(b, a):
                if (self.composition.get((g, f)) == self.identity.get(a)
                        and self.composition.get((f, g)) == self.identity.get(b)):
                    inv[f] = g
                    inv[g] = f
                    break
        return inv

    def is_iso(self, f: str) -> bool:
        return f in self._inverses

    def inverse(self, f: str) -> str:
        try:
            return self._inverses[f]
        except KeyError:
            raise CategoryError(f"{f} is not an isomorphism") from None

    def isomorphisms(self) -> tuple[str, ...]:
        return tuple(sorted(self._inverses))

    def iso_objects(self, x: str, y: str) -> Optional[str]:
        """Some isomorphism x -> y, or None."""
        for f in self.hom(x, y):
            if self.is_iso(f):
                return f
        return None

    def non_identity_morphisms(self) -> tuple[str, ...]:
        return tuple(f for f in self.morphisms if not self.is_identity(f))

    @cached_property
    def _out_index(self) -> dict[str, tuple[str, ...]]:
        idx: dict[str, list[str]] = {}
        for f, (a, _) in self.morphisms.items():
            idx.setdefault(a, []).append(f)
        return {k: tuple(sorted(v)) for k, v in idx.items()}

    def _out_of(self, x: str) -> tuple[str, ...]:
        return self._out_index.get(x, ())


def validate_category(cat: FinCategory) -> CheckReport:
    """Scan every FinCategory law; violations carry the offending ids."""
    out: list[Violation] = []
    objset = set(cat.objects)
    for f, (a, b) in cat.morphisms.items():
        if a not in objset or b not in objset:
            out.append(Violation("morphism-endpoints", (f,), f"src/tgt ({a}, {b}) not objects"))
    for x in cat.objects:
        i = cat.identity.get(x)
        if i is None or i not in cat.morphisms:
            out.append(Violation("identity-missing", (x,), "no identity morphism assigned"))
        elif cat.morphisms[i] != (x, x):
            out.append(Violation("identity-endpoints", (x, i), "identity is not an endomorphism of its object"))
    mors = list(cat.morphisms)
    # composition defined exactly on composable pairs
    for g, f in itertools.product(mors, mors):
        defined = (g, f) in cat.composition
        if cat.composable(g, f) != defined:
            law = "composition-missing" if not defined else "composition-spurious"
            out.append(Violation(law, (g, f), "table domain must be the composable pairs"))
    for (g, f), h in cat.composition.items():
        if g in cat.morphisms and f in cat.morphisms and cat.composable(g, f):
            if h not in cat.morphisms:
                out.append(Violation("composition-range", (g, f, h), "composite not a morphism"))
            elif cat.morphisms[h] != (cat.src(f), cat.tgt(g)):
                out.append(Violation("composition-endpoints", (g, f, h),
                                     "composite endpoints disagree with the pair"))
    # unit laws
    for f, (a, b) in cat.morphisms.items():
        ia, ib = cat.identity.get(a), cat.identity.get(b)
        if ia and cat.composition.get((f, ia)) != f:
            out.append(Violation("identity-right", (f,), f"compose({f}, id_{a}) != {f}"))
        if ib and cat.composition.get((ib, f)) != f:
            out.append(Violation("identity-left", (f,), f"compose(id_{b}, {f}) != {f}"))
    # associativity
    for f in mors:
        for g in cat._out_of(cat.tgt(f)):
            gf = cat.composition.get((g, f))
            if gf is None:
                continue
            for h in cat._out_of(cat.tgt(g)):
                left = cat.composition.get((h, gf))
                hg = cat.composition.get((h, g))
                right = cat.composition.get((hg, f)) if hg is not None else None
                if left != right:
                    out.append(Violation("associativity", (h, g, f),
                                         f"(h∘g)∘f={right} but h∘(g∘f)={left}"))
    return CheckReport(tuple(out))


# -- constructors ----------------------------------------------------------

def terminal_category() -> FinCategory:
    return FinCategory.build(["*"], {"id(*)": ("*", "*")}, {"*": "id(*)"},
                             {("id(*)", "id(*)"): "id(*)"})


def empty_category() -> FinCategory:
    return FinCategory.build([], {}, {}, {})


def discrete_category(objects: Iterable[str]) -> FinCategory:
    objs = sorted(objects)
    morphisms = {f"id({x})": (x, x) for x in objs}
    identity = {x: f"id({x})" for x in objs}
    comp = {(i, i): i for i in morphisms}
    return FinCategory.build(objs, morphisms, identity, comp)


def poset_category(objects: Iterable[str], relations: Iterable[tuple[str, str]]) -> FinCategory:
    """The category of a poset given by generating relations.

    Takes the reflexive-transitive closure; morphism ids are "le(a,b)" for
    a < b and "id(a)" on the diagonal.  Rejects input whose closure is not
    antisymmetric (that would not be a poset).
    """
    objs = sorted(set(objects))
    below: dict[str, set[str]] = {x: {x} for x in objs}
    edges = list(relations)
    for a, b in edges:
        if a not in below or b not in below:
            raise CategoryError(f"relation ({a}, {b}) mentions unknown object")
    changed = True
    reach: dict[str, set[str]] = {x: {x} for x in objs}
    for a, b in edges:
        reach[a].add(b)
    while changed:
        changed = False
        for x in objs:
            new = set()
            for y in reach[x]:
                new |= reach[y]
            if not new <= reach[x]:
                reach[x] |= new
                changed = True
    for x in objs:
        for y in reach[x]:
            if x != y and x in reach[y]:
                raise CategoryError(f"not a poset: {x} and {y} are in a cycle")
    morphisms: dict[str, tuple[str, str]] = {}
    identity: dict[str, str] = {}
    for x in objs:
        identity[x] = f"id({x})"
        morphisms[f"id({x})"] = (x, x)
        for y in reach[x]:
            if y != x:
                morphisms[f"le({x},{y})"] = (x, y)

    def arrow(x, y):
        return identity[x] if x == y else f"le({x},{y})"

    comp = {}
    for f, (a, b) in morphisms.items():
        for g, (b2, c) in morphisms.items():
            if b == b2:
                comp[(g, f)] = arrow(a, c)
    return FinCategory.build(objs, morphisms, identity, comp)


def chain_poset(n: int) -> FinCategory:
    """The linear poset 0 < 1 < ... < n."""
    objs = [str(i) for i in range(n + 1)]
    rels = [(str(i), str(i + 1)) for i in range(n)]
    return poset_category(objs, rels)


# -- opposite, products, coproducts ---------------------------------------

def opposite(cat: FinCategory) -> FinCategory:
    """Same ids, arrows reversed; an involution."""
    morphisms = {f: (b, a) for f, (a, b) in cat.morphisms.items()}
    comp = {(f, g): h for (g, f), h in cat.composition.items()}
    return FinCategory.build(cat.objects, morphisms, dict(cat.identity), comp)


def pair_id(x: str, y: str) -> str:
    return f"({x}|{y})"


def tuple_id(parts: Sequence[str]) -> str:
    return "(" + "|".join(parts) + ")"


def combine(c: FinCategory, d: FinCategory, mode: str) -> FinCategory:
    """Product or coproduct of two categories.

    Product: pairs with componentwise composition.  Coproduct: disjoint union
    of the tables, ids tagged inl(...)/inr(...).
    """
    if mode == "product":
        objects = [pair_id(x, y) for x in c.objects for y in d.objects]
        morphisms = {}
        for f, (a, b) in c.morphisms.items():
            for g, (u, v) in d.morphisms.items():
                morphisms[pair_id(f, g)] = (pair_id(a, u), pair_id(b, v))
        identity = {pair_id(x, y): pair_id(c.identity[x], d.identity[y])
                    for x in c.objects for y in d.objects}
        comp = {}
        for (g1, f1), h1 in c.composition.items():
            for (g2, f2), h2 in d.composition.items():
                comp[(pair_id(g1, g2), pair_id(f1, f2))] = pair_id(h1, h2)
        return FinCategory.build(objects, morphisms, identity, comp)
    if mode == "coproduct":
        def tag(side, s):
            return f"in{side}({s})"
        objects = [tag("l", x) for x in c.objects] + [tag("r", x) for x in d.objects]
        morphisms = {}
        identity = {}
        comp = {}
        for side, cat in (("l", c), ("r", d)):
            for f, (a, b) in cat.morphisms.items():
                morphisms[tag(side, f)] = (tag(side, a), tag(side, b))
            for x, i in cat.identity.items():
                identity[tag(side, x)] = tag(side, i)
            for (g, f), h in cat.composition.items():
                comp[(tag(side, g), tag(side, f))] = tag(side, h)
        return FinCategory.build(objects, morphisms, identity, comp)
    raise CategoryError(f"unknown combine mode: {mode!r}")


def power_category(cat: FinCategory, k: int) -> FinCategory:
    """The k-fold product with flat tuple ids; k = 0 gives the terminal category."""
    if k < 0:
        raise CategoryError("power requires k >= 0")
    if k == 0:
        return terminal_category()
    objects = [tuple_id(p) for p in itertools.product(cat.objects, repeat=k)]
    morphisms = {}
    identity = {}
    for p in itertools.product(cat.objects, repeat=k):
        identity[tuple_id(p)] = tuple_id([cat.identity[x] for x in p])
    for ms in itertools.product(cat.morphisms, repeat=k):
        srcs = tuple_id([cat.src(f) for f in ms])
        tgts = tuple_id([cat.tgt(f) for f in ms])
        morphisms[tuple_id(ms)] = (srcs, tgts)
    comp = {}
    for gs in itertools.product(cat.morphisms, repeat=k):
        for fs in itertools.product(cat.morphisms, repeat=k):
            if all(cat.composable(g, f) for g, f in zip(gs, fs)):
                comp[(tuple_id(gs), tuple_id(fs))] = tuple_id(
                    [cat.compose(g, f) for g, f in zip(gs, fs)])
    return FinCategory.build(objects, morphisms, identity, comp)


# -- functors ---------------------------------------------------------------

@dataclass(frozen=True)
class Functor:
    source: FinCategory
    target: FinCategory
    object_map: Mapping[str, str]
    morphism_map: Mapping[str, str]

    def on_object(self, x: str) -> str:
        return self.object_map[x]

    def on_morphism(self, f: str) -> str:
        return self.morphism_map[f]

    def check(self) -> CheckReport:
        out: list[Violation] = []
        for x in self.source.objects:
            if x not in self.object_map or self.object_map[x] not in set(self.target.objects):
                out.append(Violation("functor-object-map", (x,), "object not mapped into target"))
        for f, (a, b) in self.source.morphisms.items():
            ff = self.morphism_map.get(f)
            if ff is None or ff not in self.target.morphisms:
                out.append(Violation("functor-morphism-map", (f,), "morphism not mapped"))
                continue
            want = (self.object_map.get(a), self.object_map.get(b))
            if self.target.morphisms[ff] != want:
                out.append(Violation("functor-endpoints", (f, ff), f"image endpoints {self.target.morphisms[ff]} != {want}"))
        for x in self.source.objects:
            i = self.source.identity.get(x)
            if i and self.morphism_map.get(i) != self.target.identity.get(self.object_map.get(x, "")):
                out.append(Violation("functor-identity", (x,), "identity not preserved"))
        for (g, f), h in self.source.composition.items():
            fg, fff = self.morphism_map.get(g), self.morphism_map.get(f)
            if fg is None or fff is None:
                continue
            lhs = self.target.composition.get((fg, fff))
            if lhs != self.morphism_map.get(h):
                out.append(Violation("functor-composition", (g, f),
                                     f"F(g)∘F(f)={lhs} != F(g∘f)={self.morphism_map.get(h)}"))
        return CheckReport(tuple(out))

    def is_valid(self) -> bool:
        return self.check().ok


def identity_functor(cat: FinCategory) -> Functor:
    return Functor(cat, cat, {x: x for x in cat.objects},
                   {f: f for f in cat.morphisms})


def compose_functors(g: Functor, f: Functor) -> Functor:
    if g.source is not f.target and g.source != f.target:
        raise CategoryError("compose_functors: middle categories disagree")
    return Functor(f.source, g.target,
                   {x: g.object_map[f.object_map[x]] for x in f.source.objects},
                   {m: g.morphism_map[f.morphism_map[m]] for m in f.source.morphisms})


def functor_equal(f: Functor, g: Functor) -> bool:
    return (f.source == g.source and f.target == g.target
            and dict(f.object_map) == dict(g.object_map)
            and dict(f.morphism_map) == dict(g.morphism_map))


def constant_functor(source: FinCategory, target: FinCategory, obj: str) -> Functor:
    i = target.identity[obj]
    return Functor(source, target, {x: obj for x in source.objects},
                   {f: i for f in source.morphisms})


def is_isomorphism_functor(f: Functor) -> bool:
    """Bijective on objects and morphisms, and a valid functor."""
    if not f.is_valid():
        return False
    if sorted(f.object_map.values()) != list(f.target.objects):
        return False
    return sorted(f.morphism_map.values()) == sorted(f.target.morphisms)


def inverse_functor(f: Functor) -> Functor:
    if not is_isomorphism_functor(f):
        raise CategoryError("functor is not an isomorphism of categories")
    return Functor(f.target, f.source,
                   {v: k for k, v in f.object_map.items()},
                   {v: k for k, v in f.morphism_map.items()})


# -- fiber products and fibers ----------------------------------------------

def fiber_product(f: Functor, g: Functor) -> tuple[FinCategory, Functor, Functor]:
    """Strict pullback of categories over a common target.

    Objects are pairs (c, d) with F(c) = G(d); morphisms likewise.  Returns
    the pullback with both projection functors.
    """
    if f.target != g.target:
        raise CategoryError("fiber_product requires a common target")
    c, d = f.source, g.source
    objects = [pair_id(x, y) for x in c.objects for y in d.objects
               if f.object_map[x] == g.object_map[y]]
    objset = set(objects)
    morphisms = {}
    for m1, (a1, b1) in c.morphisms.items():
        for m2, (a2, b2) in d.morphisms.items():
            if f.morphism_map[m1] == g.morphism_map[m2]:
                if pair_id(a1, a2) in objset and pair_id(b1, b2) in objset:
                    morphisms[pair_id(m1, m2)] = (pair_id(a1, a2), pair_id(b1, b2))
    identity = {}
    for o in objects:
        x, y = _split_pair(o)
        identity[o] = pair_id(c.identity[x], d.identity[y])
    comp = {}
    morset = set(morphisms)
    for mg in morphisms:
        g1, g2 = _split_pair(mg)
        for mf in morphisms:
            f1, f2 = _split_pair(mf)
            if c.composable(g1, f1) and d.composable(g2, f2):
                h = pair_id(c.compose(g1, f1), d.compose(g2, f2))
                if h in morset:
                    comp[(mg, mf)] = h
    cat = FinCategory.build(objects, morphisms, identity, comp)
    p1 = Functor(cat, c, {o: _split_pair(o)[0] for o in objects},
                 {m: _split_pair(m)[0] for m in morphisms})
    p2 = Functor(cat, d, {o: _split_pair(o)[1] for o in objects},
                 {m: _split_pair(m)[1] for m in morphisms})
    return cat, p1, p2


def _split_pair(s: str) -> tuple[str, str]:
    # ids are built by pair_id, so the split point is the top-level "|"
    if not (s.startswith("(") and s.endswith(")")):
        raise CategoryError(f"not a pair id: {s}")
    depth = 0
    body = s[1:-1]
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "|" and depth == 0:
            return body[:i], body[i + 1:]
    raise CategoryError(f"not a pair id: {s}")


def pair_functor(f: Functor, g: Functor) -> Functor:
    """The induced functor C -> A×B from F: C->A and G: C->B."""
    if f.source != g.source:
        raise CategoryError("pair_functor requires a common source")
    prod = combine(f.target, g.target, "product")
    return Functor(f.source, prod,
                   {x: pair_id(f.object_map[x], g.object_map[x]) for x in f.source.objects},
                   {m: pair_id(f.morphism_map[m], g.morphism_map[m]) for m in f.source.morphisms})


def fiber(f: Functor, d: str) -> FinCategory:
    """Subcategory of the source on objects over d and morphisms over id_d."""
    if d not in set(f.target.objects):
        raise CategoryError(f"{d} is not an object of the target")
    idd = f.target.identity[d]
    objects = [x for x in f.source.objects if f.object_map[x] == d]
    objset = set(objects)
    morphisms = {m: ends for m, ends in f.source.morphisms.items()
                 if f.morphism_map[m] == idd and ends[0] in objset and ends[1] in objset}
    identity = {x: f.source.identity[x] for x in objects}
    comp = {(g, h): v for (g, h), v in f.source.composition.items()
            if g in morphisms and h in morphisms}
    return FinCategory.build(objects, morphisms, identity, comp)


# -- pushouts ----------------------------------------------------------------

@dataclass(frozen=True)
class PushoutCocone:
    """A pushout of a span f: a->b, g: a->c.

    apex is the pushout object; leg_left: b -> apex, leg_right: c -> apex.
    leg_right is the cobase change of f along g.
    """

    apex: str
    leg_left: str
    leg_right: str


def _cocones(cat: FinCategory, f: str, g: str) -> list[tuple[str, str, str]]:
    b, c = cat.tgt(f), cat.tgt(g)
    out = []
    for q in cat.objects:
        for u in cat.hom(b, q):
            uf = cat.compose(u, f)
            for v in cat.hom(c, q):
                if uf == cat.compose(v, g):
                    out.append((q, u, v))
    return out


def is_pushout(cat: FinCategory, f: str, g: str, cocone: PushoutCocone,
               cocones: Optional[list[tuple[str, str, str]]] = None) -> bool:
    """Universal-property test: exactly one mediating morphism to every cocone."""
    if cat.src(f) != cat.src(g):
        raise CategoryError(f"span mismatch: src({f}) != src({g})")
    p, i, j = cocone.apex, cocone.leg_left, cocone.leg_right
    if cat.morphisms.get(i) != (cat.tgt(f), p) or cat.morphisms.get(j) != (cat.tgt(g), p):
        return False
    if cat.compose(i, f) != cat.compose(j, g):
        return False
    if cocones is None:
        cocones = _cocones(cat, f, g)
    for q, u, v in cocones:
        n = 0
        for h in cat.hom(p, q):
            if cat.compose(h, i) == u and cat.compose(h, j) == v:
                n += 1
                if n > 1:
                    return False
        if n != 1:
            return False
    return True


def pushout(cat: FinCategory, f: str, g: str) -> Optional[PushoutCocone]:
    """Search for the pushout of the span f: a->b, g: a->c.

    Returns the cocone on the smallest apex id (then smallest legs) among the
    valid pushouts; pushouts are unique up to unique isomorphism so the
    tie-break only fixes a representative.  None when no pushout exists.
    """
    if cat.src(f) != cat.src(g):
        raise CategoryError(f"pushout span mismatch: src({f})={cat.src(f)} != src({g})={cat.src(g)}")
    cocones = _cocones(cat, f, g)
    b, c = cat.tgt(f), cat.tgt(g)
    for p in cat.objects:
        for i in cat.hom(b, p):
            for j in cat.hom(c, p):
                cand = PushoutCocone(p, i, j)
                if cat.compose(i, f) != cat.compose(j, g):
                    continue
                if is_pushout(cat, f, g, cand, cocones):
                    return cand
    return None


# -- equivalences -------------------------------------------------------------

@dataclass(frozen=True)
class EquivalenceResult:
    ok: bool
    fully_faithful: bool
    essentially_surjective: bool
    failure: Optional[Violation] = None
    iso_witness: Mapping[str, tuple[str, str]] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def check_equivalence(f: Functor) -> EquivalenceResult:
    """Fully faithful + essentially surjective, by exhaustive table scan.

    On failure the violation names the offending hom-pair or target object.
    The iso witness maps each target object to (source object, iso in the
    target from the object to the image).
    """
    c, d = f.source, f.target
    for x in c.objects:
        for y in c.objects:
            dom = c.hom(x, y)
            cod = d.hom(f.object_map[x], f.object_map[y])
            image = [f.morphism_map[m] for m in dom]
            if len(set(image)) != len(dom):
                return EquivalenceResult(False, False, False,
                                         Violation("not-faithful", (x, y), "hom map not injective"))
            if set(image) != set(cod):
                return EquivalenceResult(False, False, False,
                                         Violation("not-full", (x, y), "hom map not surjective"))
    witness: dict[str, tuple[str, str]] = {}
    image_objects = sorted(set(f.object_map.values()))
    for dobj in d.objects:
        found = None
        for x in c.objects:
            u = d.iso_objects(dobj, f.object_map[x])
            if u is not None:
                found = (x, u)
                break
        if found is None:
            return EquivalenceResult(False, True, False,
                                     Violation("not-essentially-surjective", (dobj,),
                                               f"no object isomorphic to the image; image objects: {image_objects}"))
        witness[dobj] = found
    return EquivalenceResult(True, True, True, None, witness)


# -- natural transformations ---------------------------------------------------

@dataclass(frozen=True)
class NatTransformation:
    source: Functor
    target: Functor
    components: Mapping[str, str]

    def component(self, x: str) -> str:
        return self.components[x]

    def check(self) -> CheckReport:
        out: list[Violation] = []
        f, g = self.source, self.target
        if f.source != g.source or f.target != g.target:
            return CheckReport((Violation("nat-parallel", (), "functors are not parallel"),))
        cat, tgt = f.source, f.target
        for x in cat.objects:
            comp = self.components.get(x)
            if comp is None or tgt.morphisms.get(comp) != (f.object_map[x], g.object_map[x]):
                out.append(Violation("nat-component", (x,), "component missing or wrong endpoints"))
        if out:
            return CheckReport(tuple(out))
        for m, (x, y) in cat.morphisms.items():
            lhs = tgt.compose(self.components[y], f.morphism_map[m])
            rhs = tgt.compose(g.morphism_map[m], self.components[x])
            if lhs != rhs:
                out.append(Violation("naturality", (m,), f"square fails: {lhs} != {rhs}"))
        return CheckReport(tuple(out))

    def is_identity(self) -> bool:
        tgt = self.source.target
        return all(tgt.is_identity(c) for c in self.components.values())


def identity_nat_trans(f: Functor) -> NatTransformation:
    return NatTransformation(f, f, {x: f.target.identity[f.object_map[x]]
                                    for x in f.source.objects})


def compose_nat_trans(beta: NatTransformation, alpha: NatTransformation) -> NatTransformation:
    """Vertical composite beta∘alpha (alpha: F=>G, beta: G=>H)."""
    if not functor_equal(alpha.target, beta.source):
        raise CategoryError("vertical composition shape mismatch")
    tgt = alpha.source.target
    return NatTransformation(alpha.source, beta.target,
                             {x: tgt.compose(beta.components[x], alpha.components[x])
                              for x in alpha.source.source.objects})


def enumerate_nat_trans(f: Functor, g: Functor,
                        restriction: Optional[frozenset[str]] = None) -> list[NatTransformation]:
    """All natural transformations F => G, exhaustively.

    restriction, when given, confines every component to that morphism set
    (e.g. the members of a wide subcategory).  Results are ordered
    lexicographically by component tuple.
    """
    if f.source != g.source or f.target != g.target:
        raise CategoryError("enumerate_nat_trans requires parallel functors")
    cat, tgt = f.source, f.target
    objs = list(cat.objects)
    pos = {x: i for i, x in enumerate(objs)}
    candidates = []
    for x in objs:
        cands = [m for m in tgt.hom(f.object_map[x], g.object_map[x])
                 if restriction is None or m in restriction]
        candidates.append(cands)
    # morphisms checkable once both endpoints are assigned
    by_last: dict[int, list[tuple[str, str, str]]] = {i: [] for i in range(len(objs))}
    for m, (x, y) in cat.morphisms.items():
        by_last[max(pos[x], pos[y])].append((m, x, y))
    out: list[NatTransformation] = []
    assign: dict[str, str] = {}

    def place(i: int) -> None:
        if i == len(objs):
            out.append(NatTransformation(f, g, dict(assign)))
            return
        x = objs[i]
        for comp in candidates[i]:
            assign[x] = comp
            ok = True
            for m, a, b in by_last[i]:
                if tgt.compose(assign[b], f.morphism_map[m]) != tgt.compose(g.morphism_map[m], assign[a]):
                    ok = False
                    break
            if ok:
                place(i + 1)
            del assign[x]

    place(0)
    out.sort(key=lambda n: tuple(n.components[x] for x in objs))
    return out


def enumerate_functors(source: FinCategory, target: FinCategory,
                       budget: int = 200_000) -> list[Functor]:
    """All functors source -> target, by backtracking over the tables.

    Used by the bounded witness searches.  The budget counts partial
    assignments visited; exceeding it raises BudgetExceededError.
    """
    objs = list(source.objects)
    pos = {x: i for i, x in enumerate(objs)}
    nonid = [m for m in source.morphisms if not source.is_identity(m)]
    mor_pos = {m: i for i, m in enumerate(nonid)}
    # composition facts checkable once all three morphisms are assigned
    morphs_ready: dict[int, list[tuple[str, str, str]]] = {i: [] for i in range(len(nonid))}
    for (g, f), h in source.composition.items():
        trio = [m for m in (g, f, h) if m in mor_pos]
        if trio:
            last = max(mor_pos[m] for m in trio)
            morphs_ready[last].append((g, f, h))
    out: list[Functor] = []
    omap: dict[str, str] = {}
    mmap: dict[str, str] = {}
    visited = 0

    def mor_image(m):
        if m in mmap:
            return mmap[m]
        x = source.src(m)  # identity
        return target.identity[omap[x]]

    def place_mor(i: int) -> None:
        nonlocal visited
        if i == len(nonid):
            full = {m: target.identity[omap[source.src(m)]] for m in source.morphisms
                    if source.is_identity(m)}
            full.update(mmap)
            out.append(Functor(source, target, dict(omap), full))
            return
        m = nonid[i]
        a, b = source.morphisms[m]
        for img in target.hom(omap[a], omap[b]):
            visited += 1
            if visited > budget:
                raise BudgetExceededError(f"functor enumeration exceeded {budget} candidates")
            mmap[m] = img
            ok = True
            for (g, f, h) in morphs_ready[i]:
                if all(x in mmap or source.is_identity(x) for x in (g, f, h)):
                    if target.compose(mor_image(g), mor_image(f)) != mor_image(h):
                        ok = False
                        break
            if ok:
                place_mor(i + 1)
            del mmap[m]

    def place_obj(i: int) -> None:
        nonlocal visited
        if i == len(objs):
            place_mor(0)
            return
        x = objs[i]
        for o in target.objects:
            visited += 1
            if visited > budget:
                raise BudgetExceededError(f"functor enumeration exceeded {budget} candidates")
            omap[x] = o
            place_obj(i + 1)
            del omap[x]

    place_obj(0)
    out.sort(key=lambda fu: (tuple(fu.object_map[x] for x in objs),
                             tuple(fu.morphism_map[m] for m in source.morphisms)))
    return out


# -- wide subcategories ---------------------------------------------------------

@dataclass(frozen=True)
class WideSubcategory:
    carrier: FinCategory
    members: frozenset[str]

    @staticmethod
    def of(carrier: FinCategory, members: Iterable[str]) -> "WideSubcategory":
        return WideSubcategory(carrier, frozenset(members))

    def check(self) -> CheckReport:
        out: list[Violation] = []
        for m in self.members:
            if m not in self.carrier.morphisms:
                out.append(Violation("wide-unknown-morphism", (m,), "not a carrier morphism"))
        for x in self.carrier.objects:
            if self.carrier.identity[x] not in self.members:
                out.append(Violation("wide-identity-missing", (x,), "identity not a member"))
        for (g, f), h in self.carrier.composition.items():
            if g in self.members and f in self.members and h not in self.members:
                out.append(Violation("wide-not-closed", (g, f, h), "composite escapes the subcategory"))
        return CheckReport(tuple(out))

    def contains(self, f: str) -> bool:
        return f in self.members

    def as_category(self) -> FinCategory:
        morphisms = {m: e for m, e in self.carrier.morphisms.items() if m in self.members}
        comp = {(g, f): h for (g, f), h in self.carrier.composition.items()
                if g in self.members and f in self.members}
        return FinCategory.build(self.carrier.objects, morphisms,
                                 dict(self.carrier.identity), comp)


def identities_subcategory(cat: FinCategory) -> WideSubcategory:
    return WideSubcategory.of(cat, set(cat.identity.values()))


def all_subcategory(cat: FinCategory) -> WideSubcategory:
    return WideSubcategory.of(cat, set(cat.morphisms))


# -- adjunctions -----------------------------------------------------------------

@dataclass(frozen=True)
class Adjunction:
    """left ⊣ right, with unit: id => right∘left and counit: left∘right => id."""

    left: Functor
    right: Functor
    unit: NatTransformation
    counit: NatTransformation


def verify_adjunction(adj: Adjunction) -> bool:
    """Both triangle identities, componentwise; shape errors raise."""
    f, g = adj.left, adj.right
    if f.source != g.target or f.target != g.source:
        raise CategoryError("adjunction shape mismatch: left/right endpoints disagree")
    c, d = f.source, f.target
    gf = compose_functors(g, f)
    fg = compose_functors(f, g)
    if not functor_equal(adj.unit.source, identity_functor(c)) or not functor_equal(adj.unit.target, gf):
        raise CategoryError("unit must go id_C => right∘left")
    if not functor_equal(adj.counit.source, fg) or not functor_equal(adj.counit.target, identity_functor(d)):
        raise CategoryError("counit must go left∘right => id_D")
    if not adj.unit.check().ok or not adj.counit.check().ok:
        return False
    for x in c.objects:
        lhs = d.compose(adj.counit.components[f.object_map[x]],
                        f.morphism_map[adj.unit.components[x]])
        if lhs != d.identity[f.object_map[x]]:
            return False
    for y in d.objects:
        lhs = c.compose(g.morphism_map[adj.counit.components[y]],
                        adj.unit.components[g.object_map[y]])
        if lhs != c.identity[g.object_map[y]]:
            return False
    return True


# -- isomorphism of categories (search, for tests and witnesses) -------------------

def find_category_isomorphism(c: FinCategory, d: FinCategory,
                              budget: int = 500_000) -> Optional[Functor]:
    """Search for an isomorphism of categories c ≅ d; None if there is none."""
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return None

    def obj_profile(cat, x):
        outs = sorted(len(cat.hom(x, y)) for y in cat.objects)
        ins = sorted(len(cat.hom(y, x)) for y in cat.objects)
        return (len(cat.hom(x, x)), tuple(outs), tuple(ins))

    cprof = {x: obj_profile(c, x) for x in c.objects}
    dprof = {y: obj_profile(d, y) for y in d.objects}
    visited = 0

    def extend(omap: dict[str, str], used: set[str]) -> Optional[Functor]:
        nonlocal visited
        if len(omap) == len(c.objects):
            # objects fixed; match morphisms hom-set by hom-set
            return match_morphisms(omap)
        x = next(o for o in c.objects if o not in omap)
        for y in d.objects:
            if y in used or dprof[y] != cprof[x]:
                continue
            visited += 1
            if visited > budget:
                raise BudgetExceededError("isomorphism search budget exceeded")
            omap[x] = y
            used.add(y)
            got = extend(omap, used)
            if got is not None:
                return got
            del omap[x]
            used.remove(y)
        return None

    def match_morphisms(omap: dict[str, str]) -> Optional[Functor]:
        nonlocal visited
        homs = []
        for x in c.objects:
            for y in c.objects:
                hc = c.hom(x, y)
                hd = d.hom(omap[x], omap[y])
                if len(hc) != len(hd):
                    return None
                if hc:
                    homs.append((hc, hd))

        mmap: dict[str, str] = {}

        def place(i: int) -> Optional[Functor]:
            nonlocal visited
            if i == len(homs):
                cand = Functor(c, d, dict(omap), dict(mmap))
                return cand if is_isomorphism_functor(cand) else None
            hc, hd = homs[i]
            for perm in itertools.permutations(hd):
                visited += 1
                if visited > budget:
                    raise BudgetExceededError("isomorphism search budget exceeded")
                for m, im in zip(hc, perm):
                    mmap[m] = im
                # partial composition check over assigned morphisms
                ok = True
                for (g, f), h in c.composition.items():
                    if g in mmap and f in mmap and h in mmap:
                        if d.composition.get((mmap[g], mmap[f])) != mmap[h]:
                            ok = False
                            break
                if ok:
                    got = place(i + 1)
                    if got is not None:
                        return got
                for m in hc:
                    del mmap[m]
            return None

        return place(0)

    return extend({}, set())


def find_object_isomorphism(cat: FinCategory, x: str, y: str) -> Optional[str]:
    """An isomorphism x -> y inside the category, or None."""
    return cat.iso_objects(x, y)

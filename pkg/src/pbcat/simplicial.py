"""Indexing categories T_n, truncated nerves, integer homology, and the
weak-equivalence witness system.

T_n is the full subcategory of [n]^op x [n] on pairs (p, q) with p <= q; its
morphisms that move only the first coordinate are the "backward" maps that
diagram categories send to trivial cofibrations.  Nerves are truncated at a
requested dimension; homology is computed from the normalized chains of
loop-free categories by integer Smith normal form.

Thomason weak equivalence of functors is undecidable in general, so the
witness system collects decidable sufficient evidence instead: strict
isomorphism, equivalence of categories, an adjunction (either handedness), a
bounded zig-zag of natural transformations, or an integer homology
isomorphism.  A verdict of "none" means no evidence was found, not a
refutation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from . import intlinalg as la
from .fincat import (
    Adjunction,
    CategoryError,
    CheckReport,
    EquivalenceResult,
    FinCategory,
    Functor,
    Violation,
    check_equivalence,
    compose_functors,
    enumerate_functors,
    enumerate_nat_trans,
    identity_functor,
    inverse_functor,
    is_isomorphism_functor,
    verify_adjunction,
)


# -- the cosimplicial family T_n ---------------------------------------------

def _pq_id(p: int, q: int) -> str:
    return f"({p},{q})"


def _arrow_id(a: str, b: str) -> str:
    return f"{a}->{b}"


@dataclass(frozen=True)
class TnCategory:
    """T_n with its backward/forward marking and elementary squares."""

    degree: int
    category: FinCategory
    backward: frozenset[str]
    forward: frozenset[str]
    backward_generators: tuple[str, ...]
    forward_generators: tuple[str, ...]
    pq_of: Mapping[str, tuple[int, int]]

    def object_id(self, p: int, q: int) -> str:
        return _pq_id(p, q)

    def morphism_between(self, a: tuple[int, int], b: tuple[int, int]) -> str:
        """The unique morphism a -> b (must exist: b[0] <= a[0], a[1] <= b[1])."""
        ia, ib = _pq_id(*a), _pq_id(*b)
        if a == b:
            return self.category.identity[ia]
        return _arrow_id(ia, ib)

    def condition_squares(self) -> list[dict[str, str]]:
        """The elementary squares of Construction-style condition 2.

        For 0 <= p < q <= n-1: span m_{p,q} <= m_{p+1,q} -> m_{p+1,q+1} with
        corner m_{p,q+1}; keys: span_back, span_fwd, leg_top, leg_right, and
        the four object ids.
        """
        out = []
        n = self.degree
        for p in range(n):
            for q in range(p + 1, n):
                out.append({
                    "inner": _pq_id(p + 1, q),
                    "left": _pq_id(p, q),
                    "bottom": _pq_id(p + 1, q + 1),
                    "corner": _pq_id(p, q + 1),
                    "span_back": self.morphism_between((p + 1, q), (p, q)),
                    "span_fwd": self.morphism_between((p + 1, q), (p + 1, q + 1)),
                    "leg_top": self.morphism_between((p, q), (p, q + 1)),
                    "leg_right": self.morphism_between((p + 1, q + 1), (p, q + 1)),
                })
        return out


def build_T(n: int) -> TnCategory:
    """The full subcategory of [n]^op x [n] on pairs p <= q.

    There is a unique morphism (p,q) -> (p',q') iff p' <= p and q <= q'.
    Morphisms that strictly decrease p at fixed q are marked backward; those
    that strictly increase q at fixed p are marked forward.
    """
    if n < 0:
        raise CategoryError("build_T requires n >= 0")
    pairs = [(p, q) for p in range(n + 1) for q in range(p, n + 1)]
    objects = [_pq_id(p, q) for p, q in pairs]
    morphisms: dict[str, tuple[str, str]] = {}
    identity: dict[str, str] = {}
    pq_of: dict[str, tuple[int, int]] = {}
    for p, q in pairs:
        o = _pq_id(p, q)
        pq_of[o] = (p, q)
        identity[o] = f"id({o})"
        morphisms[f"id({o})"] = (o, o)
    for (p, q), (p2, q2) in itertools.product(pairs, pairs):
        if (p, q) != (p2, q2) and p2 <= p and q <= q2:
            morphisms[_arrow_id(_pq_id(p, q), _pq_id(p2, q2))] = (_pq_id(p, q), _pq_id(p2, q2))

    def arrow(a, b):
        return identity[_pq_id(*a)] if a == b else _arrow_id(_pq_id(*a), _pq_id(*b))

    comp = {}
    for f, (sa, sb) in morphisms.items():
        for g, (sb2, sc) in morphisms.items():
            if sb == sb2:
                comp[(g, f)] = arrow(pq_of[sa], pq_of[sc])
    cat = FinCategory.build(objects, morphisms, identity, comp)
    backward = frozenset(
        _arrow_id(_pq_id(p, q), _pq_id(p2, q)) for (p, q) in pairs for p2 in range(p)
        if (p2, q) in set(pairs))
    forward = frozenset(
        _arrow_id(_pq_id(p, q), _pq_id(p, q2)) for (p, q) in pairs
        for q2 in range(q + 1, n + 1))
    bgen = tuple(_arrow_id(_pq_id(p, q), _pq_id(p - 1, q))
                 for (p, q) in pairs if p >= 1)
    fgen = tuple(_arrow_id(_pq_id(p, q), _pq_id(p, q + 1))
                 for (p, q) in pairs if q + 1 <= n)
    return TnCategory(n, cat, backward, forward, tuple(sorted(bgen)), tuple(sorted(fgen)), pq_of)


def is_monotone(values: Sequence[int]) -> bool:
    return all(values[i] <= values[i + 1] for i in range(len(values) - 1))


def cosimplicial_T(values: Sequence[int], target_degree: int) -> Functor:
    """The functor T_m -> T_n induced by a monotone map [m] -> [n].

    values lists the images of 0..m; (p,q) goes to (f(p), f(q)).
    """
    values = tuple(values)
    m = len(values) - 1
    if m < 0:
        raise CategoryError("monotone map needs a nonempty value list")
    if not is_monotone(values):
        raise CategoryError(f"map {values} is not monotone")
    if any(v < 0 or v > target_degree for v in values):
        raise CategoryError(f"map {values} does not land in [{target_degree}]")
    tm, tn = build_T(m), build_T(target_degree)
    omap = {}
    for o, (p, q) in tm.pq_of.items():
        omap[o] = tn.object_id(values[p], values[q])
    mmap = {}
    for mor, (a, b) in tm.category.morphisms.items():
        pa, pb = tm.pq_of[a], tm.pq_of[b]
        ia = (values[pa[0]], values[pa[1]])
        ib = (values[pb[0]], values[pb[1]])
        mmap[mor] = tn.morphism_between(ia, ib)
    return Functor(tm.category, tn.category, omap, mmap)


def delta_face(i: int, n: int) -> tuple[int, ...]:
    """d^i: [n-1] -> [n], skipping i."""
    if not (0 <= i <= n):
        raise CategoryError(f"face index {i} out of range for [{n}]")
    return tuple(x for x in range(n + 1) if x != i)


def delta_degeneracy(j: int, n: int) -> tuple[int, ...]:
    """s^j: [n+1] -> [n], repeating j."""
    if not (0 <= j <= n):
        raise CategoryError(f"degeneracy index {j} out of range for [{n}]")
    return tuple(list(range(j + 1)) + list(range(j, n + 1)))


def compose_monotone(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    return tuple(outer[i] for i in inner)


def spine_edge(i: int, n: int) -> tuple[int, ...]:
    """The map [1] -> [n] with 0 -> i, 1 -> i+1 (a Segal spine edge)."""
    if not (0 <= i < n):
        raise CategoryError(f"spine edge {i} out of range for [{n}]")
    return (i, i + 1)


def vertex_map(i: int, n: int) -> tuple[int, ...]:
    """The map [0] -> [n] picking vertex i."""
    if not (0 <= i <= n):
        raise CategoryError(f"vertex {i} out of range for [{n}]")
    return (i,)


# -- truncated simplicial sets --------------------------------------------------

@dataclass(frozen=True)
class TruncatedSimplicialSet:
    """Levels 0..max_dim with face and degeneracy maps between them."""

    max_dim: int
    simplices: Mapping[int, tuple[str, ...]]
    faces: Mapping[tuple[int, int], Mapping[str, str]]
    degeneracies: Mapping[tuple[int, int], Mapping[str, str]]

    def face(self, n: int, i: int, s: str) -> str:
        return self.faces[(n, i)][s]

    def degeneracy(self, n: int, j: int, s: str) -> str:
        return self.degeneracies[(n, j)][s]

    def is_degenerate(self, n: int, s: str) -> bool:
        if n == 0:
            return False
        for j in range(n):
            for t in self.simplices[n - 1]:
                if self.degeneracies[(n - 1, j)][t] == s:
                    return True
        return False


def chain_id(chain: Sequence[str]) -> str:
    return repr(tuple(chain))


def truncated_nerve(cat: FinCategory, k: int) -> TruncatedSimplicialSet:
    """Nerve up to dimension k: n-simplices are composable n-chains."""
    if k < 0:
        raise CategoryError("truncation dimension must be >= 0")
    chains: dict[int, list[tuple[str, ...]]] = {0: [(x,) for x in cat.objects]}
    for n in range(1, k + 1):
        level = []
        if n == 1:
            level = [(m,) for m in sorted(cat.morphisms)]
        else:
            for c in chains[n - 1]:
                last_tgt = cat.tgt(c[-1])
                for m in cat._out_of(last_tgt):
                    level.append(c + (m,))
        chains[n] = sorted(level)
    simplices = {n: tuple(chain_id(c) for c in chains[n]) for n in chains}
    faces: dict[tuple[int, int], dict[str, str]] = {}
    degeneracies: dict[tuple[int, int], dict[str, str]] = {}

    def vertex(c: tuple[str, ...], n: int, i: int) -> str:
        # the i-th object of an n-chain
        if n == 0:
            return c[0]
        return cat.src(c[0]) if i == 0 else cat.tgt(c[i - 1])

    for n in range(1, k + 1):
        for i in range(n + 1):
            fmap = {}
            for c in chains[n]:
                if n == 1:
                    img = (vertex(c, 1, 1 - i),)
                elif i == 0:
                    img = c[1:]
                elif i == n:
                    img = c[:-1]
                else:
                    img = c[:i - 1] + (cat.compose(c[i], c[i - 1]),) + c[i + 1:]
                fmap[chain_id(c)] = chain_id(img)
            faces[(n, i)] = fmap
    for n in range(0, k):
        for j in range(n + 1):
            dmap = {}
            for c in chains[n]:
                ident = cat.identity[vertex(c, n, j)]
                if n == 0:
                    img = (ident,)
                else:
                    img = c[:j] + (ident,) + c[j:]
                dmap[chain_id(c)] = chain_id(img)
            degeneracies[(n, j)] = dmap
    return TruncatedSimplicialSet(k, simplices, faces, degeneracies)


def check_simplicial_identities(x: TruncatedSimplicialSet) -> CheckReport:
    """All simplicial identities whose source and target dimensions fit."""
    out: list[Violation] = []
    k = x.max_dim

    def check_eq(tag, dom_dim, lhs, rhs):
        for s in x.simplices[dom_dim]:
            if lhs(s) != rhs(s):
                out.append(Violation(tag, (s,), f"{lhs(s)} != {rhs(s)}"))

    for n in range(2, k + 1):
        for j in range(n + 1):
            for i in range(j):
                check_eq(f"dd[{i},{j}]@{n}", n,
                         lambda s, i=i, j=j, n=n: x.face(n - 1, i, x.face(n, j, s)),
                         lambda s, i=i, j=j, n=n: x.face(n - 1, j - 1, x.face(n, i, s)))
    for n in range(0, k - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                check_eq(f"ss[{i},{j}]@{n}", n,
                         lambda s, i=i, j=j, n=n: x.degeneracy(n + 1, i, x.degeneracy(n, j, s)),
                         lambda s, i=i, j=j, n=n: x.degeneracy(n + 1, j + 1, x.degeneracy(n, i, s)))
    for n in range(0, k):
        for j in range(n + 1):
            for i in range(n + 2):
                if i == j or i == j + 1:
                    check_eq(f"ds-id[{i},{j}]@{n}", n,
                             lambda s, i=i, j=j, n=n: x.face(n + 1, i, x.degeneracy(n, j, s)),
                             lambda s: s)
                elif i < j:
                    if n >= 1:
                        check_eq(f"ds[{i},{j}]@{n}", n,
                                 lambda s, i=i, j=j, n=n: x.face(n + 1, i, x.degeneracy(n, j, s)),
                                 lambda s, i=i, j=j, n=n: x.degeneracy(n - 1, j - 1, x.face(n, i, s)))
                else:
                    if n >= 1:
                        check_eq(f"ds[{i},{j}]@{n}", n,
                                 lambda s, i=i, j=j, n=n: x.face(n + 1, i, x.degeneracy(n, j, s)),
                                 lambda s, i=i, j=j, n=n: x.degeneracy(n - 1, j, x.face(n, i - 1, s)))
    return CheckReport(tuple(out))


def nondegenerate_counts(x: TruncatedSimplicialSet) -> dict[int, int]:
    return {n: sum(1 for s in x.simplices[n] if not x.is_degenerate(n, s))
            for n in range(x.max_dim + 1)}


# -- simplicial categories (truncated) --------------------------------------------

@dataclass(frozen=True)
class SimplicialCategoryTrunc:
    """Levels 0..max_dim in Cat with face/degeneracy functors."""

    max_dim: int
    levels: Mapping[int, FinCategory]
    faces: Mapping[tuple[int, int], Functor]
    degeneracies: Mapping[tuple[int, int], Functor]


def check_simplicial_category(sc: SimplicialCategoryTrunc) -> CheckReport:
    out: list[Violation] = []
    k = sc.max_dim
    for key, fun in itertools.chain(sc.faces.items(), sc.degeneracies.items()):
        rep = fun.check()
        if not rep.ok:
            out.append(Violation("structure-functor", (str(key),), rep.render()))

    def feq(tag, f, g):
        if not (dict(f.object_map) == dict(g.object_map)
                and dict(f.morphism_map) == dict(g.morphism_map)):
            out.append(Violation(tag, (), "functor equality fails"))

    for n in range(2, k + 1):
        for j in range(n + 1):
            for i in range(j):
                feq(f"dd[{i},{j}]@{n}",
                    compose_functors(sc.faces[(n - 1, i)], sc.faces[(n, j)]),
                    compose_functors(sc.faces[(n - 1, j - 1)], sc.faces[(n, i)]))
    for n in range(0, k - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                feq(f"ss[{i},{j}]@{n}",
                    compose_functors(sc.degeneracies[(n + 1, i)], sc.degeneracies[(n, j)]),
                    compose_functors(sc.degeneracies[(n + 1, j + 1)], sc.degeneracies[(n, i)]))
    for n in range(0, k):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = compose_functors(sc.faces[(n + 1, i)], sc.degeneracies[(n, j)])
                if i == j or i == j + 1:
                    feq(f"ds-id[{i},{j}]@{n}", lhs, identity_functor(sc.levels[n]))
                elif i < j and n >= 1:
                    feq(f"ds[{i},{j}]@{n}", lhs,
                        compose_functors(sc.degeneracies[(n - 1, j - 1)], sc.faces[(n, i)]))
                elif i > j + 1 and n >= 1:
                    feq(f"ds[{i},{j}]@{n}", lhs,
                        compose_functors(sc.degeneracies[(n - 1, j)], sc.faces[(n, i - 1)]))
    return CheckReport(tuple(out))


def parse_chain_id(s: str) -> tuple[str, ...]:
    import ast

    return tuple(ast.literal_eval(s))


def nerve_map(fun: Functor, k: int) -> dict[int, dict[str, str]]:
    """The simplicial map of truncated nerves induced by a functor."""
    src = truncated_nerve(fun.source, k)
    out: dict[int, dict[str, str]] = {}
    for n in range(k + 1):
        level = {}
        for s in src.simplices[n]:
            chain = parse_chain_id(s)
            if n == 0:
                img = (fun.object_map[chain[0]],)
            else:
                img = tuple(fun.morphism_map[m] for m in chain)
            level[s] = chain_id(img)
        out[n] = level
    return out


def bisimplicial_consistency(sc: SimplicialCategoryTrunc, k: int = 2) -> CheckReport:
    """Levelwise nerve consistency at low degrees: every structure functor
    induces a simplicial map of truncated nerves."""
    out: list[Violation] = []
    for (key, fun) in itertools.chain(sc.faces.items(), sc.degeneracies.items()):
        n_src = truncated_nerve(fun.source, k)
        n_tgt = truncated_nerve(fun.target, k)
        fmap = nerve_map(fun, k)
        for n in range(1, k + 1):
            for i in range(n + 1):
                for s in n_src.simplices[n]:
                    lhs = n_tgt.faces[(n, i)][fmap[n][s]]
                    rhs = fmap[n - 1][n_src.faces[(n, i)][s]]
                    if lhs != rhs:
                        out.append(Violation("nerve-face", (str(key), s), f"{lhs} != {rhs}"))
    return CheckReport(tuple(out))


# -- loop-freeness and homology -----------------------------------------------------

def find_morphism_cycle(cat: FinCategory) -> Optional[list[str]]:
    """A cycle of non-identity morphisms (composite is an endomorphism), or None."""
    adj: dict[str, list[tuple[str, str]]] = {x: [] for x in cat.objects}
    for m, (a, b) in cat.morphisms.items():
        if not cat.is_identity(m):
            adj[a].append((b, m))
    color: dict[str, int] = {x: 0 for x in cat.objects}
    stack_edges: list[str] = []
    stack_objs: list[str] = []

    def dfs(x: str) -> Optional[list[str]]:
        color[x] = 1
        stack_objs.append(x)
        for (y, m) in adj[x]:
            if color[y] == 1:
                i = stack_objs.index(y)
                return stack_edges[i:] + [m]
            if color[y] == 0:
                stack_edges.append(m)
                got = dfs(y)
                if got is not None:
                    return got
                stack_edges.pop()
        stack_objs.pop()
        color[x] = 2
        return None

    for x in cat.objects:
        if color[x] == 0:
            got = dfs(x)
            if got is not None:
                return got
    return None


class LoopFreeError(CategoryError):
    def __init__(self, cycle: list[str]):
        super().__init__(f"category has a morphism cycle: {' ; '.join(cycle)}")
        self.cycle = cycle


@dataclass(frozen=True)
class ChainComplexZ:
    """Normalized chains: basis per dimension, integer boundary matrices.

    boundary[n] maps C_n -> C_{n-1} (rows indexed by basis[n-1])."""

    max_dim: int
    basis: Mapping[int, tuple[tuple[str, ...], ...]]
    boundary: Mapping[int, la.Matrix]

    def to_json_obj(self) -> dict:
        return {
            "max_dim": self.max_dim,
            "basis": {str(n): [list(c) for c in self.basis[n]] for n in self.basis},
            "boundary": {str(n): [row[:] for row in self.boundary[n]] for n in self.boundary},
        }


def normalized_chain_complex(cat: FinCategory, max_dim: int) -> ChainComplexZ:
    """Chains on nondegenerate nerve simplices (no identity entries).

    Requires a loop-free category so the basis is finite in every dimension.
    """
    cycle = find_morphism_cycle(cat)
    if cycle is not None:
        raise LoopFreeError(cycle)
    nonid = [m for m in cat.morphisms if not cat.is_identity(m)]
    basis: dict[int, list[tuple[str, ...]]] = {0: [(x,) for x in cat.objects]}
    for n in range(1, max_dim + 1):
        if n == 1:
            basis[n] = [(m,) for m in sorted(nonid)]
            continue
        level = []
        for c in basis[n - 1]:
            for m in cat._out_of(cat.tgt(c[-1])):
                if not cat.is_identity(m):
                    level.append(c + (m,))
        basis[n] = sorted(level)
    index = {n: {c: i for i, c in enumerate(basis[n])} for n in basis}
    boundary: dict[int, la.Matrix] = {}
    for n in range(1, max_dim + 1):
        rows = len(basis[n - 1])
        cols = len(basis[n])
        mat = [[0] * cols for _ in range(rows)]
        for j, c in enumerate(basis[n]):
            if n == 1:
                m = c[0]
                mat[index[0][(cat.tgt(m),)]][j] += 1
                mat[index[0][(cat.src(m),)]][j] -= 1
                continue
            # d_0 drops the first arrow, d_n the last, inner faces compose
            faces: list[tuple[int, tuple[str, ...]]] = [(0, c[1:]), (n, c[:-1])]
            for i in range(1, n):
                comp = cat.compose(c[i], c[i - 1])
                if not cat.is_identity(comp):
                    faces.append((i, c[:i - 1] + (comp,) + c[i + 1:]))
            for i, fchain in faces:
                mat[index[n - 1][fchain]][j] += (-1) ** i
        boundary[n] = mat
    return ChainComplexZ(max_dim, {n: tuple(basis[n]) for n in basis}, boundary)


@dataclass(frozen=True)
class HomologyResult:
    """Betti numbers and torsion coefficients for dimensions 0..max_dim."""

    max_dim: int
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def group_str(self, n: int) -> str:
        parts = ["Z"] * self.betti[n] + [f"Z/{t}" for t in self.torsion[n]]
        return " + ".join(parts) if parts else "0"


def _cycle_basis(boundary_n: Optional[la.Matrix], dim_n: int) -> la.Matrix:
    if boundary_n is None or not boundary_n:
        return la.identity_matrix(dim_n)
    return la.kernel_basis(boundary_n)


def _matrix_width(m: la.Matrix) -> int:
    if not m:
        return 0
    return len(m[0])


def homology(cat: FinCategory, max_dim: int) -> HomologyResult:
    """H_0..H_max_dim of the normalized nerve chains, over the integers."""
    cx = normalized_chain_complex(cat, max_dim + 1)
    betti: list[int] = []
    torsion: list[tuple[int, ...]] = []
    for n in range(max_dim + 1):
        dim_n = len(cx.basis[n])
        bnd_n = cx.boundary.get(n)
        k = _cycle_basis(bnd_n, dim_n)
        z = _matrix_width(k)
        bnd_up = cx.boundary.get(n + 1)
        cols_up = len(cx.basis[n + 1])
        if dim_n == 0:
            betti.append(0)
            torsion.append(())
            continue
        if cols_up == 0:
            x = [[0] * 0 for _ in range(z)]
        else:
            x = la.solve_integer_matrix(k, bnd_up, cols_b=cols_up)
            if x is None:
                raise AssertionError("boundaries are not cycles; complex is broken")
        free, tors = la.cokernel_invariants(x, z)
        betti.append(free)
        torsion.append(tuple(tors))
    return HomologyResult(max_dim, tuple(betti), tuple(torsion))


def chain_map_of_functor(fun: Functor, max_dim: int,
                         src_cx: Optional[ChainComplexZ] = None,
                         tgt_cx: Optional[ChainComplexZ] = None
                         ) -> tuple[ChainComplexZ, ChainComplexZ, dict[int, la.Matrix]]:
    """The induced map of normalized chain complexes.

    A basis chain maps to its image chain, or to 0 if any arrow becomes an
    identity (the degenerate part is killed in the normalized complex).
    """
    src_cx = src_cx or normalized_chain_complex(fun.source, max_dim)
    tgt_cx = tgt_cx or normalized_chain_complex(fun.target, max_dim)
    phi: dict[int, la.Matrix] = {}
    for n in range(max_dim + 1):
        tgt_index = {c: i for i, c in enumerate(tgt_cx.basis[n])}
        mat = [[0] * len(src_cx.basis[n]) for _ in range(len(tgt_cx.basis[n]))]
        for j, c in enumerate(src_cx.basis[n]):
            if n == 0:
                img: tuple[str, ...] = (fun.object_map[c[0]],)
            else:
                img = tuple(fun.morphism_map[m] for m in c)
                if any(fun.target.is_identity(m) for m in img):
                    continue
            mat[tgt_index[img]][j] = 1
        phi[n] = mat
    return src_cx, tgt_cx, phi


def _induced_map_is_iso(k_src: la.Matrix, x_src: la.Matrix,
                        k_tgt: la.Matrix, x_tgt: la.Matrix,
                        phi_n: la.Matrix, z_src: int, z_tgt: int) -> bool:
    """Does the chain map induce an isomorphism coker(x_src) -> coker(x_tgt)
    in the cycle bases k_src, k_tgt?"""
    # express phi(cycles) in the target cycle basis
    if z_src == 0 and z_tgt == 0:
        return True
    phik = la.mat_mul(phi_n, k_src) if k_src and phi_n else [[0] * z_src for _ in range(len(phi_n))]
    y = la.solve_integer_matrix(k_tgt, phik, cols_b=z_src) if z_tgt else None
    if z_tgt == 0:
        # target homology is 0; need source homology 0 too
        free, tors = la.cokernel_invariants(x_src, z_src)
        return free == 0 and not tors
    if y is None:
        raise AssertionError("chain map does not preserve cycles")
    # surjectivity: [Y | X_tgt] spans Z^{z_tgt}
    stacked = [y[i] + (x_tgt[i] if x_tgt else []) for i in range(z_tgt)]
    free, tors = la.cokernel_invariants(stacked, z_tgt)
    if free != 0 or tors:
        return False
    # injectivity: {v : Y v in im X_tgt} must lie in im X_src
    glue = [y[i] + [-v for v in (x_tgt[i] if x_tgt else [])] for i in range(z_tgt)]
    null = la.kernel_basis(glue)
    for col in range(_matrix_width(null)):
        v = [null[i][col] for i in range(z_src)]
        if any(v) and la.solve_integer(x_src, v) is None:
            return False
    return True


def homology_iso_check(fun: Functor, max_dim: int) -> bool:
    """True iff the induced map is an isomorphism on H_0..H_max_dim.

    Both categories must be loop-free (LoopFreeError otherwise).
    """
    depth = max_dim + 1
    src_cx, tgt_cx, phi = chain_map_of_functor(fun, depth)
    for n in range(max_dim + 1):
        k_src = _cycle_basis(src_cx.boundary.get(n), len(src_cx.basis[n]))
        k_tgt = _cycle_basis(tgt_cx.boundary.get(n), len(tgt_cx.basis[n]))
        z_src, z_tgt = _matrix_width(k_src), _matrix_width(k_tgt)
        x_src = la.solve_integer_matrix(k_src, src_cx.boundary.get(n + 1, []),
                                        cols_b=len(src_cx.basis[n + 1]))
        x_tgt = la.solve_integer_matrix(k_tgt, tgt_cx.boundary.get(n + 1, []),
                                        cols_b=len(tgt_cx.basis[n + 1]))
        if x_src is None or x_tgt is None:
            raise AssertionError("boundaries are not cycles; complex is broken")
        if not _induced_map_is_iso(k_src, x_src, k_tgt, x_tgt, phi[n], z_src, z_tgt):
            return False
    return True


def is_loop_free(cat: FinCategory) -> bool:
    return find_morphism_cycle(cat) is None


# -- weak-equivalence witnesses ---------------------------------------------------

@dataclass(frozen=True)
class WitnessConfig:
    functor_budget: int = 100_000
    zigzag_length: int = 2
    homology_dim: int = 2


@dataclass(frozen=True)
class ZigzagWitness:
    """G together with zig-zags of natural transformations connecting
    G∘F with id and F∘G with id (directions recorded per step)."""

    partner: Functor
    source_chain: tuple[tuple[str, str], ...]   # (functor key, direction) per step
    target_chain: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class WeqWitness:
    """Tagged, re-verifiable evidence that a functor is a nerve equivalence."""

    kind: str
    inverse: Optional[Functor] = None
    equivalence: Optional[EquivalenceResult] = None
    adjunction: Optional[Adjunction] = None
    functor_is_left_adjoint: Optional[bool] = None
    zigzag: Optional[ZigzagWitness] = None
    homology_dim: Optional[int] = None

    @property
    def found(self) -> bool:
        return self.kind != "none"

    def to_json_obj(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "adjunction":
            out["functor_is_left_adjoint"] = self.functor_is_left_adjoint
        if self.kind == "homology":
            out["up_to_dim"] = self.homology_dim
        if self.kind == "zigzag":
            out["lengths"] = [len(self.zigzag.source_chain), len(self.zigzag.target_chain)]
        return out


def _adjunction_between(left: Functor, right: Functor) -> Optional[Adjunction]:
    gf = compose_functors(right, left)
    fg = compose_functors(left, right)
    id_c = identity_functor(left.source)
    id_d = identity_functor(left.target)
    units = enumerate_nat_trans(id_c, gf)
    if not units:
        return None
    counits = enumerate_nat_trans(fg, id_d)
    for unit in units:
        for counit in counits:
            adj = Adjunction(left, right, unit, counit)
            if verify_adjunction(adj):
                return adj
    return None


def _connected_by_zigzag(a: Functor, b: Functor, pool: list[Functor],
                         max_len: int) -> Optional[tuple[tuple[str, str], ...]]:
    """Breadth-first zig-zag of natural transformations from a to b through
    the functor pool; steps record (index of next functor, direction)."""

    def key(f: Functor):
        return (tuple(sorted(f.object_map.items())), tuple(sorted(f.morphism_map.items())))

    if key(a) == key(b):
        return ()
    frontier = [(a, ())]
    seen = {key(a)}
    for _ in range(max_len):
        nxt = []
        for cur, path in frontier:
            for idx, cand in enumerate(pool):
                ck = key(cand)
                if ck in seen:
                    continue
                step = None
                if enumerate_nat_trans(cur, cand):
                    step = (str(idx), "fwd")
                elif enumerate_nat_trans(cand, cur):
                    step = (str(idx), "bwd")
                if step is None:
                    continue
                newpath = path + (step,)
                if ck == key(b):
                    return newpath
                seen.add(ck)
                nxt.append((cand, newpath))
        frontier = nxt
    return None


def weq_witness(fun: Functor, config: WitnessConfig = WitnessConfig()) -> WeqWitness:
    """Search for decidable evidence that `fun` induces a nerve equivalence.

    Tried in order: strict isomorphism, equivalence of categories, adjunction
    (either handedness, bounded search), bounded natural-transformation
    zig-zag homotopy equivalence, homology isomorphism (loop-free inputs).
    """
    if is_isomorphism_functor(fun):
        return WeqWitness("isomorphism", inverse=inverse_functor(fun))
    eq = check_equivalence(fun)
    if eq.ok:
        return WeqWitness("equivalence", equivalence=eq)
    from .fincat import BudgetExceededError

    try:
        partners = enumerate_functors(fun.target, fun.source, budget=config.functor_budget)
    except BudgetExceededError:
        partners = []
    for g in partners:
        adj = _adjunction_between(fun, g)
        if adj is not None:
            return WeqWitness("adjunction", adjunction=adj, functor_is_left_adjoint=True)
        adj = _adjunction_between(g, fun)
        if adj is not None:
            return WeqWitness("adjunction", adjunction=adj, functor_is_left_adjoint=False)
    if partners and config.zigzag_length > 0:
        try:
            pool_c = enumerate_functors(fun.source, fun.source, budget=config.functor_budget)
            pool_d = enumerate_functors(fun.target, fun.target, budget=config.functor_budget)
        except BudgetExceededError:
            pool_c, pool_d = [], []
        if pool_c and pool_d:
            id_c = identity_functor(fun.source)
            id_d = identity_functor(fun.target)
            for g in partners:
                c1 = _connected_by_zigzag(compose_functors(g, fun), id_c, pool_c,
                                          config.zigzag_length)
                if c1 is None:
                    continue
                c2 = _connected_by_zigzag(compose_functors(fun, g), id_d, pool_d,
                                          config.zigzag_length)
                if c2 is not None:
                    return WeqWitness("zigzag", zigzag=ZigzagWitness(g, c1, c2))
    if is_loop_free(fun.source) and is_loop_free(fun.target):
        if homology_iso_check(fun, config.homology_dim):
            return WeqWitness("homology", homology_dim=config.homology_dim)
    return WeqWitness("none")


def verify_witness(fun: Functor, wit: WeqWitness,
                   config: WitnessConfig = WitnessConfig()) -> bool:
    """Re-verify a witness against its functor from scratch."""
    if wit.kind == "isomorphism":
        return (wit.inverse is not None and is_isomorphism_functor(fun)
                and is_isomorphism_functor(wit.inverse))
    if wit.kind == "equivalence":
        return check_equivalence(fun).ok
    if wit.kind == "adjunction":
        if wit.adjunction is None:
            return False
        side = wit.adjunction.left if wit.functor_is_left_adjoint else wit.adjunction.right
        if not (dict(side.object_map) == dict(fun.object_map)
                and dict(side.morphism_map) == dict(fun.morphism_map)):
            return False
        return verify_adjunction(wit.adjunction)
    if wit.kind == "zigzag":
        if wit.zigzag is None:
            return False
        # existence is re-checked by rerunning the bounded search
        return weq_witness(fun, config).found
    if wit.kind == "homology":
        return homology_iso_check(fun, wit.homology_dim or config.homology_dim)
    return wit.kind == "none"


def homology_refutes(fun: Functor, max_dim: int) -> bool:
    """True when both sides are loop-free and the induced map provably fails
    to be a homology isomorphism (a genuine obstruction, not mere absence)."""
    if not (is_loop_free(fun.source) and is_loop_free(fun.target)):
        return False
    return not homology_iso_check(fun, max_dim)

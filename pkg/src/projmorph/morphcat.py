"""The morphism category H(A) and its subcategories P(A) and I(A).

An object is a map f: X -> Y of A-modules; a morphism (a, b): f -> f' is a
commutative square b f = f' a.  H(A) is identified with modules over the
triangular matrix algebra T2(A), which is built as a bound quiver algebra:
two copies of the quiver of A joined by one arrow per vertex, subject to the
relations of A in each copy and commutativity of every square.  Hom spaces,
decompositions and isomorphism tests in H(A) go through that identification.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .algebra import BoundQuiverAlgebra, build_algebra
from .linalg import Matrix, NoSolution, kernel_basis
from .modcat import (ShortExactSeq, Verdict, decompose_with_maps, extend_through, find_isomorphism,
                     is_indecomposable, is_injective, is_projective, knit_indecomposables,
                     left_projective_approximation, min_proj_presentation, projective_cover,
                     pushout_with_epi, radical_of_end, in_radical, _indecomposable_iso,
                     verify_almost_split)
from .modules import (Module, ModuleMap, PreconditionFailed, NotAMorphism, cokernel, combine,
                      coordinates, direct_sum, factor_through_epi, factor_through_mono, hom_basis,
                      identity, inverse_map, kernel, lift_through_epi, map_diag, map_hstack,
                      map_vstack, nakayama_map, projective_module, pullback, star_map,
                      sum_injections, sum_projections, zero_map, zero_module)


# -- the triangular matrix algebra ------------------------------------------------

def t2_algebra(A: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    T = A.__dict__.get("_t2")
    if T is not None:
        return T
    verts = [f"{v}'" for v in A.vertices] + [f"{v}\"" for v in A.vertices]
    arrows, rels = [], []
    for a in A.arrows:
        arrows.append((a.name + "'", verts[a.source], verts[a.target]))
    for a in A.arrows:
        arrows.append((a.name + '"', verts[A.n + a.source], verts[A.n + a.target]))
    for v in range(A.n):
        arrows.append((f"f{A.vertices[v]}", verts[v], verts[A.n + v]))
    for suffix in ("'", '"'):
        for r in A.relations:
            rels.append([(c, [A.arrows[i].name + suffix for i in w]) for w, c in r.items()])
    for a in A.arrows:
        s, t = A.vertices[a.source], A.vertices[a.target]
        rels.append([(1, [a.name + "'", f"f{t}"]), (-1, [f"f{s}", a.name + '"'])])
    T = build_algebra(verts, arrows, rels, name=f"T2({A.name})")
    A.__dict__["_t2"] = T
    T.__dict__["_base"] = A
    return T


# -- objects and morphisms ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MorphObject:
    """An object f: dom -> cod of H(A)."""
    map: ModuleMap

    @property
    def algebra(self) -> BoundQuiverAlgebra:
        return self.map.algebra

    @property
    def dom(self) -> Module:
        return self.map.source

    @property
    def cod(self) -> Module:
        return self.map.target

    def in_P(self) -> bool:
        return self.dom.proj_labels is not None and self.cod.proj_labels is not None

    def in_I(self) -> bool:
        return self.dom.inj_labels is not None and self.cod.inj_labels is not None

    @cached_property
    def t2(self) -> Module:
        A = self.algebra
        T = t2_algebra(A)
        return Module(T, self.dom.dims + self.cod.dims, self.dom.maps + self.cod.maps + self.map.comps)

    @property
    def dims(self) -> tuple:
        return self.dom.dims + self.cod.dims

    def __repr__(self) -> str:
        return f"MorphObject({self.dom.dims} -> {self.cod.dims})"


@dataclass(frozen=True, eq=False)
class MorphMap:
    source: MorphObject
    target: MorphObject
    top: ModuleMap
    bottom: ModuleMap

    def __matmul__(self, other: "MorphMap") -> "MorphMap":
        return MorphMap(other.source, self.target, self.top @ other.top, self.bottom @ other.bottom)

    def __add__(self, other: "MorphMap") -> "MorphMap":
        return MorphMap(self.source, self.target, self.top + other.top, self.bottom + other.bottom)

    def __sub__(self, other: "MorphMap") -> "MorphMap":
        return MorphMap(self.source, self.target, self.top - other.top, self.bottom - other.bottom)

    def __neg__(self) -> "MorphMap":
        return MorphMap(self.source, self.target, -self.top, -self.bottom)

    def scale(self, c) -> "MorphMap":
        return MorphMap(self.source, self.target, self.top.scale(c), self.bottom.scale(c))

    def is_zero(self) -> bool:
        return self.top.is_zero() and self.bottom.is_zero()

    def check(self) -> None:
        lhs = self.target.map @ self.top
        rhs = self.bottom @ self.source.map
        if lhs.comps != rhs.comps:
            raise NotAMorphism("square does not commute")

    @cached_property
    def t2(self) -> ModuleMap:
        return ModuleMap(self.source.t2, self.target.t2, self.top.comps + self.bottom.comps)

    def __repr__(self) -> str:
        return f"MorphMap({self.source!r} -> {self.target!r})"


def morph(f: ModuleMap) -> MorphObject:
    return MorphObject(f)


def make_morph_map(X: MorphObject, Y: MorphObject, top: ModuleMap, bottom: ModuleMap) -> MorphMap:
    phi = MorphMap(X, Y, top.retarget(X.dom, Y.dom), bottom.retarget(X.cod, Y.cod))
    phi.check()
    return phi


def from_t2_map(f: ModuleMap, X: MorphObject, Y: MorphObject) -> MorphMap:
    n = X.algebra.n
    return MorphMap(X, Y, ModuleMap(X.dom, Y.dom, f.comps[:n]), ModuleMap(X.cod, Y.cod, f.comps[n:]))


def from_t2_module(M: Module, A: BoundQuiverAlgebra) -> MorphObject:
    n, m = A.n, len(A.arrows)
    dom = Module(A, M.dims[:n], M.maps[:m])
    cod = Module(A, M.dims[n:], M.maps[m:2 * m])
    return MorphObject(ModuleMap(dom, cod, M.maps[2 * m:]))


def identity_morph(X: MorphObject) -> MorphMap:
    return MorphMap(X, X, identity(X.dom), identity(X.cod))


def zero_morph(X: MorphObject, Y: MorphObject) -> MorphMap:
    return MorphMap(X, Y, zero_map(X.dom, Y.dom), zero_map(X.cod, Y.cod))


def zero_to(M: Module) -> MorphObject:
    """(0 -> M)."""
    return MorphObject(zero_map(zero_module(M.algebra), M))


def to_zero(M: Module) -> MorphObject:
    """(M -> 0)."""
    return MorphObject(zero_map(M, zero_module(M.algebra)))


def identity_object(M: Module) -> MorphObject:
    """(M -1-> M)."""
    return MorphObject(identity(M))


def morph_sum(objs: Sequence[MorphObject]) -> MorphObject:
    A = objs[0].algebra
    dom = direct_sum([X.dom for X in objs], A)
    cod = direct_sum([X.cod for X in objs], A)
    return MorphObject(map_diag([X.map for X in objs], dom, cod))


def morph_injections(objs: Sequence[MorphObject], S: MorphObject) -> list[MorphMap]:
    ti = sum_injections([X.dom for X in objs], S.dom)
    bi = sum_injections([X.cod for X in objs], S.cod)
    return [MorphMap(X, S, t, b) for X, t, b in zip(objs, ti, bi)]


def morph_projections(objs: Sequence[MorphObject], S: MorphObject) -> list[MorphMap]:
    tp = sum_projections([X.dom for X in objs], S.dom)
    bp = sum_projections([X.cod for X in objs], S.cod)
    return [MorphMap(S, X, t, b) for X, t, b in zip(objs, tp, bp)]


@dataclass(eq=False)
class MorphSES:
    """0 -> X -mono-> Y -epi-> Z -> 0 in H(A)."""
    mono: MorphMap
    epi: MorphMap
    certified: bool | None = None
    witness: str = ""

    @property
    def left(self) -> MorphObject:
        return self.mono.source

    @property
    def middle(self) -> MorphObject:
        return self.mono.target

    @property
    def right(self) -> MorphObject:
        return self.epi.target

    @property
    def t2(self) -> ShortExactSeq:
        return ShortExactSeq(self.mono.t2, self.epi.t2)

    def is_exact(self) -> bool:
        return self.t2.is_exact()


# -- Hom spaces, decomposition, isomorphism ----------------------------------------

def hom_basis_H(X: MorphObject, Y: MorphObject) -> list[MorphMap]:
    return [from_t2_map(f, X, Y) for f in hom_basis(X.t2, Y.t2)]


def labeled(X: MorphObject) -> tuple[MorphObject, MorphMap]:
    """An isomorphic object whose ends are labeled projectives, with the iso to X."""
    if X.in_P():
        return X, identity_morph(X)
    P, s = projective_cover(X.dom)
    Q, t = projective_cover(X.cod)
    if P.dims != X.dom.dims or Q.dims != X.cod.dims:
        raise PreconditionFailed("object does not lie in P(A)")
    f = inverse_map(t) @ X.map @ s
    Y = MorphObject(f.retarget(P, Q))
    return Y, MorphMap(Y, X, s, t)


def find_iso_H(X: MorphObject, Y: MorphObject) -> MorphMap | None:
    f = find_isomorphism(X.t2, Y.t2)
    return None if f is None else from_t2_map(f, X, Y)


def is_iso_H(X: MorphObject, Y: MorphObject) -> bool:
    return X.dims == Y.dims and find_iso_H(X, Y) is not None


def indecomposable_iso_H(X: MorphObject, Y: MorphObject) -> bool:
    return X.dims == Y.dims and _indecomposable_iso(X.t2, Y.t2) is not None


def is_indecomposable_H(X: MorphObject) -> bool:
    return is_indecomposable(X.t2)


@dataclass(eq=False)
class MorphSummand:
    obj: MorphObject
    inclusion: MorphMap
    projection: MorphMap


def decompose_H(X: MorphObject, relabel: bool = True) -> list[MorphSummand]:
    """Indecomposable summands; summands of P-objects come back with labeled ends."""
    A = X.algebra
    out = []
    for s in decompose_with_maps(X.t2):
        Y = from_t2_module(s.module, A)
        inc = from_t2_map(s.inclusion, Y, X)
        proj = from_t2_map(s.projection, X, Y)
        if relabel and X.in_P():
            Z, iso = labeled(Y)
            inv = MorphMap(Y, Z, inverse_map(iso.top), inverse_map(iso.bottom))
            inc, proj, Y = inc @ iso, inv @ proj, Z
        out.append(MorphSummand(Y, inc, proj))
    return out


def decompose_H_classes(X: MorphObject) -> list[tuple[MorphObject, int]]:
    groups: list[list] = []
    for s in decompose_H(X):
        for g in groups:
            if indecomposable_iso_H(g[0], s.obj):
                g[1] += 1
                break
        else:
            groups.append([s.obj, 1])
    return [(Y, k) for Y, k in groups]


# -- functors ------------------------------------------------------------------------

def cok(X: MorphObject) -> Module:
    return cokernel(X.map)[0]


def cok_map(phi: MorphMap) -> ModuleMap:
    _, px = cokernel(phi.source.map)
    _, py = cokernel(phi.target.map)
    return factor_through_epi(px, py @ phi.bottom)


def cok_ses(s: MorphSES) -> ShortExactSeq:
    return ShortExactSeq(cok_map(s.mono), cok_map(s.epi))


class NotInI(PreconditionFailed):
    pass


def _require_I(X: MorphObject) -> None:
    if not X.in_I() and not (is_injective(X.dom) and is_injective(X.cod)):
        raise NotInI("Ker is applied to objects with injective ends")


def ker(X: MorphObject) -> Module:
    _require_I(X)
    return kernel(X.map)[0]


def ker_map(phi: MorphMap) -> ModuleMap:
    _require_I(phi.source)
    _require_I(phi.target)
    _, ix = kernel(phi.source.map)
    _, iy = kernel(phi.target.map)
    return factor_through_mono(iy, phi.top @ ix)


def ker_ses(s: MorphSES) -> ShortExactSeq:
    return ShortExactSeq(ker_map(s.mono), ker_map(s.epi))


def nu_object(X: MorphObject) -> MorphObject:
    if not X.in_P():
        raise PreconditionFailed("the Nakayama functor is applied to P(A)")
    return MorphObject(nakayama_map(X.map))


def nu_map(phi: MorphMap) -> MorphMap:
    return MorphMap(nu_object(phi.source), nu_object(phi.target), nakayama_map(phi.top), nakayama_map(phi.bottom))


def nu_ses(s: MorphSES) -> MorphSES:
    return MorphSES(nu_map(s.mono), nu_map(s.epi))


def nu_equivalence(X):
    """nu: P(A) -> I(A) on objects, morphisms and sequences."""
    if isinstance(X, MorphObject):
        return nu_object(X)
    if isinstance(X, MorphMap):
        return nu_map(X)
    return nu_ses(X)


def star_object(X: MorphObject) -> MorphObject:
    """(P -f-> Q) |-> (Q* -f*-> P*) over the opposite algebra."""
    if not X.in_P():
        raise PreconditionFailed("the duality (-)* is applied to P(A)")
    return MorphObject(star_map(X.map))


def star_morph(phi: MorphMap) -> MorphMap:
    return MorphMap(star_object(phi.target), star_object(phi.source), star_map(phi.bottom), star_map(phi.top))


def star_ses(s: MorphSES) -> MorphSES:
    return MorphSES(star_morph(s.epi), star_morph(s.mono), s.certified, s.witness)


def star_duality(X):
    if isinstance(X, MorphObject):
        return star_object(X)
    if isinstance(X, MorphMap):
        return star_morph(X)
    return star_ses(X)


def presentation_object(M: Module) -> tuple[MorphObject, ModuleMap]:
    """The minimal projective presentation of M as a P-object, with P0 -> M."""
    f, sigma = min_proj_presentation(M)
    return MorphObject(f), sigma


# -- stable categories -------------------------------------------------------------

def _as_t2(X):
    return X.t2 if isinstance(X, MorphObject) else X


def stable_hom(X, Y, generators: Sequence) -> tuple[int, list]:
    """Hom(X, Y) modulo maps factoring through sums of the generators.

    Returns the quotient dimension and maps of Hom(X, Y) whose classes form a basis.
    """
    Xm, Ym = _as_t2(X), _as_t2(Y)
    H = hom_basis(Xm, Ym)
    through = []
    for G in generators:
        Gm = _as_t2(G)
        for a in hom_basis(Xm, Gm):
            for b in hom_basis(Gm, Ym):
                through.append(b @ a)
    n = len(H)
    if n == 0:
        return 0, []
    vecs = [coordinates(H, f) for f in through]
    rank = Matrix.from_cols(vecs, n).rank() if vecs else 0
    quotient_dim = n - rank
    basis = []
    for j, h in enumerate(H):
        e = [Fraction(int(i == j)) for i in range(n)]
        r = Matrix.from_cols(vecs + [e], n).rank()
        if r > rank:
            vecs.append(e)
            rank = r
            basis.append(h)
    out = [from_t2_map(h, X, Y) if isinstance(X, MorphObject) else h for h in basis]
    return quotient_dim, out


def V_generators(A: BoundQuiverAlgebra) -> list[MorphObject]:
    """(P -1-> P) and (P -> 0) for every indecomposable projective P."""
    out = []
    for v in range(A.n):
        P = projective_module(A, (v,))
        out += [identity_object(P), to_zero(P)]
    return out


# -- classification of objects of P(A) ------------------------------------------

def classify_indecomposable(X: MorphObject) -> str:
    """'projective', 'injective', 'both' or 'neither' for an indecomposable P-object."""
    if X.dom.dim == 0:
        return "projective"
    if X.cod.dim == 0:
        return "injective"
    if X.map.is_iso():
        return "both"
    return "neither"


def classify_P_object(X: MorphObject) -> tuple[str, list[tuple[MorphObject, str]]]:
    parts = [(s.obj, classify_indecomposable(s.obj)) for s in decompose_H(X)]
    kinds = {k for _, k in parts}
    proj = all(k in ("projective", "both") for k in kinds)
    inj = all(k in ("injective", "both") for k in kinds)
    verdict = "both" if proj and inj else "projective" if proj else "injective" if inj else "neither"
    return verdict, parts


# -- canonical sequences ---------------------------------------------------------

def _two(M: Module, N: Module):
    S = direct_sum([M, N])
    return S, sum_injections([M, N], S), sum_projections([M, N], S)


def standard_ses_pair(X: MorphObject) -> tuple[MorphSES, MorphSES]:
    """For X = (P -d-> Q):
    0 -> (0,P) -> (0,Q) + (P,P)_1 -> (P,Q)_d -> 0 and
    0 -> (P,Q)_d -> (Q,Q)_1 + (P,0) -> (Q,0) -> 0.
    """
    P, Q, d = X.dom, X.cod, X.map
    A = X.algebra
    Z = zero_module(A)
    # first sequence
    left = zero_to(P)
    mid = morph_sum([zero_to(Q), identity_object(P)])
    mono = MorphMap(left, mid, zero_map(Z, mid.dom), map_vstack([d, identity(P)], mid.cod))
    epi = MorphMap(mid, X, identity(P).retarget(source=mid.dom),
                   map_hstack([-identity(Q), d], mid.cod))
    s1 = MorphSES(mono, epi)
    # second sequence
    mid2 = morph_sum([identity_object(Q), to_zero(P)])
    right = to_zero(Q)
    mono2 = MorphMap(X, mid2, map_vstack([d, identity(P)], mid2.dom), identity(Q).retarget(target=mid2.cod))
    epi2 = MorphMap(mid2, right, map_hstack([-identity(Q), d], mid2.dom), zero_map(mid2.cod, right.cod))
    s2 = MorphSES(mono2, epi2)
    return s1, s2


def dominant_ses(P: Module) -> MorphSES:
    """0 -> (0,P) -> (P,P)_1 -> (P,0) -> 0."""
    L, M, R = zero_to(P), identity_object(P), to_zero(P)
    mono = MorphMap(L, M, zero_map(L.dom, P), identity(P))
    epi = MorphMap(M, R, identity(P), zero_map(P, R.cod))
    return MorphSES(mono, epi)


def normalize_ses(s: MorphSES):
    """Rewrite a sequence in P(A) with middle (P1+Q1 -h-> P2+Q2), h = [[f, q], [0, g]].

    Returns (normalized sequence, iso from the new middle to the old one, q).
    """
    X, Y, Z = s.left, s.middle, s.right
    if not (X.in_P() and Z.in_P()):
        raise PreconditionFailed("normalization needs end terms in P(A)")
    s1 = lift_through_epi(identity(Z.dom), s.epi.top)
    s2 = lift_through_epi(identity(Z.cod), s.epi.bottom)
    D1, i1, p1 = _two(X.dom, Z.dom)
    D2, i2, p2 = _two(X.cod, Z.cod)
    th1 = map_hstack([s.mono.top, s1], D1)
    th2 = map_hstack([s.mono.bottom, s2], D2)
    h = inverse_map(th2) @ Y.map @ th1
    h = h.retarget(D1, D2)
    N = MorphObject(h)
    iso = MorphMap(N, Y, th1.retarget(source=D1), th2.retarget(source=D2))
    mono = MorphMap(X, N, i1[0], i2[0])
    epi = MorphMap(N, Z, p1[1], p2[1])
    q = p2[0] @ h @ i1[1]
    return MorphSES(mono, epi, s.certified, s.witness), iso, q


# -- zero-Auslander checks --------------------------------------------------------

def check_zero_auslander(A: BoundQuiverAlgebra, objects: Sequence[MorphObject] | None = None) -> dict:
    """Witness sequences for the zero-Auslander property of P(A).

    Every object X has 0 -> (0,P) -> (0,Q)+(P,P) -> X -> 0 with projective first two
    terms, and 0 -> X -> (Q,Q)+(P,0) -> (Q,0) -> 0 with injective middle and right
    terms.  Each indecomposable projective has
    0 -> (0,P) -> (P,P) -> (P,0) -> 0.
    """
    if objects is None:
        objects = p_indecomposables(A)
    report = {"resolution": True, "coresolution": True, "dominant": True, "failures": []}
    for k, X in enumerate(objects):
        s1, s2 = standard_ses_pair(X)
        ok1 = s1.is_exact() and all(classify_P_object(Y)[0] in ("projective", "both")
                                    for Y in (s1.left, s1.middle))
        ok2 = s2.is_exact() and all(classify_P_object(Y)[0] in ("injective", "both")
                                    for Y in (s2.middle, s2.right))
        if not ok1:
            report["resolution"] = False
            report["failures"].append(("resolution", k))
        if not ok2:
            report["coresolution"] = False
            report["failures"].append(("coresolution", k))
    for v in range(A.n):
        d = dominant_ses(projective_module(A, (v,)))
        if not (d.is_exact() and classify_P_object(d.middle)[0] == "both"):
            report["dominant"] = False
            report["failures"].append(("dominant", v))
    report["ok"] = report["resolution"] and report["coresolution"] and report["dominant"]
    return report


# -- probes ---------------------------------------------------------------------

_P_CACHE: dict = {}


def p_indecomposables(A: BoundQuiverAlgebra) -> list[MorphObject]:
    """Indecomposable objects of P(A): minimal presentations of indecomposable modules,
    (P -1-> P) and (P -> 0)."""
    hit = _P_CACHE.get(id(A))
    if hit is not None and hit[0] is A:
        return hit[1]
    out = [presentation_object(M)[0] for M in knit_indecomposables(A).modules]
    for v in range(A.n):
        P = projective_module(A, (v,))
        out.append(identity_object(P))
    for v in range(A.n):
        out.append(to_zero(projective_module(A, (v,))))
    _P_CACHE[id(A)] = (A, out)
    return out


def generating_family(A: BoundQuiverAlgebra) -> list[MorphObject]:
    """(0 -> P_i), (P_i -1-> P_i) and (P_i -p-> P_j) for every basis path p from j to i."""
    out = []
    for v in range(A.n):
        P = projective_module(A, (v,))
        out += [zero_to(P), identity_object(P)]
    from .modules import proj_map
    for i in range(A.n):
        for j in range(A.n):
            for p in A.paths_between(j, i):
                if A.basis[p].arrows:
                    out.append(MorphObject(proj_map(A, (i,), (j,), [[{p: Fraction(1)}]])))
    return out


def h_indecomposables(A: BoundQuiverAlgebra) -> list[Module]:
    """Indecomposable T2(A)-modules, i.e. indecomposable objects of H(A)."""
    return knit_indecomposables(t2_algebra(A)).modules


def verify_ass_P(s: MorphSES, probes: Sequence[MorphObject] | None = None) -> Verdict:
    A = s.left.algebra
    probes = p_indecomposables(A) if probes is None else probes
    return verify_almost_split(s.t2, [X.t2 for X in probes])


def verify_ass_H(s: MorphSES) -> Verdict:
    return verify_almost_split(s.t2, h_indecomposables(s.left.algebra))


# -- approximations ----------------------------------------------------------------

def right_P_approx_special(M: Module, shape: str) -> MorphMap:
    """Minimal right P-approximations of (0 -> M), (M -1-> M) and (M -> 0)."""
    f, sigma = min_proj_presentation(M)
    P1, P0 = f.source, f.target
    if shape == "0->M":
        X = zero_to(M)
        return MorphMap(MorphObject(f), X, zero_map(P1, X.dom), sigma)
    if shape == "M->M":
        X = identity_object(M)
        return MorphMap(identity_object(P0), X, sigma, sigma)
    if shape == "M->0":
        X, Y = to_zero(M), to_zero(P0)
        return MorphMap(Y, X, sigma, zero_map(Y.cod, X.cod))
    raise ValueError(f"unknown shape {shape!r}")


def right_P_approx(X: MorphObject) -> MorphMap:
    """Right P-approximation ([0 e], sigma): (P1+Q -[f de']-> P0) -> (N -g-> M)."""
    N, M, g = X.dom, X.cod, X.map
    f, sigma = min_proj_presentation(M)
    P1 = f.source
    Q, e = projective_cover(N)
    U, h, d = pullback(g, sigma)
    e1 = lift_through_epi(e, h)
    S = direct_sum([P1, Q])
    src = MorphObject(map_hstack([f, d @ e1], S))
    return MorphMap(src, X, map_hstack([zero_map(P1, N), e], S), sigma)


def right_P_approx_min_dom(g: ModuleMap) -> MorphMap:
    """For a projective cover g: Q -> M: ([0 1], sigma): (P1+Q -[f g']-> P0) -> (Q -g-> M)."""
    Q, M = g.source, g.target
    if Q.proj_labels is None or projective_cover(M)[0].dims != Q.dims or not g.is_surjective():
        raise PreconditionFailed("expected a projective cover")
    f, sigma = min_proj_presentation(M)
    P1 = f.source
    g1 = lift_through_epi(g, sigma)
    S = direct_sum([P1, Q])
    src = MorphObject(map_hstack([f, g1], S))
    return MorphMap(src, MorphObject(g), map_hstack([zero_map(P1, Q), identity(Q)], S), sigma)


def right_minimal_kernel(phi_t2: ModuleMap) -> list[ModuleMap]:
    """Endomorphisms v of the source with phi v = 0."""
    E = hom_basis(phi_t2.source, phi_t2.source)
    if not E:
        return []
    imgs = [phi_t2 @ e for e in E]
    n = len(imgs[0].flat())
    if n == 0:
        return list(E)
    K = kernel_basis(Matrix.from_cols([x.flat() for x in imgs], n))
    return [combine(E, K.col(j)) for j in range(K.cols)]


def is_right_minimal_module_map(phi: ModuleMap) -> bool:
    rad = radical_of_end(phi.source)
    return all(in_radical(v, rad) for v in right_minimal_kernel(phi))


def is_left_minimal_module_map(phi: ModuleMap) -> bool:
    E = hom_basis(phi.target, phi.target)
    if not E:
        return True
    imgs = [e @ phi for e in E]
    n = len(imgs[0].flat())
    if n == 0:
        K = Matrix.identity(len(E))
    else:
        K = kernel_basis(Matrix.from_cols([x.flat() for x in imgs], n))
    rad = radical_of_end(phi.target, E)
    return all(in_radical(combine(E, K.col(j)), rad) for j in range(K.cols))


def right_P_approx_min_cod(g: ModuleMap) -> MorphMap:
    """For right minimal g: M -> Q with Q projective: (f, 1): (P -gf-> Q) -> (M -g-> Q)."""
    M, Q = g.source, g.target
    if Q.proj_labels is None:
        raise PreconditionFailed("codomain must be a labeled projective")
    if not is_right_minimal_module_map(g):
        raise PreconditionFailed("g is not right minimal")
    P, f = projective_cover(M)
    return MorphMap(MorphObject(g @ f), MorphObject(g), f, identity(Q))


def left_P_approx_special(M: Module, shape: str) -> MorphMap:
    """Minimal left P-approximations of (M -> 0), (M -1-> M) and (0 -> M)."""
    delta, g = min_proj_copresentation_pair(M)
    Q0 = delta.target
    if shape == "M->0":
        X = to_zero(M)
        return MorphMap(X, MorphObject(g), delta, zero_map(X.cod, g.target))
    if shape == "M->M":
        X = identity_object(M)
        return MorphMap(X, identity_object(Q0), delta, delta)
    if shape == "0->M":
        X = zero_to(M)
        Y = zero_to(Q0)
        return MorphMap(X, Y, zero_map(X.dom, Y.dom), delta)
    raise ValueError(f"unknown shape {shape!r}")


def min_proj_copresentation_pair(M: Module):
    from .modcat import min_proj_copresentation
    return min_proj_copresentation(M)


def left_P_approx(X: MorphObject) -> MorphMap:
    """Left P-approximation (delta, d lambda): (N -g-> M) -> (Q0 -dh-> Q)."""
    N, g = X.dom, X.map
    delta = left_projective_approximation(N)
    U, h, lam, _ = pushout_with_epi(delta, g)
    d = left_projective_approximation(U)
    tgt = MorphObject(d @ h)
    return MorphMap(X, tgt, delta, d @ lam)


def left_P_approx_min(X: MorphObject) -> MorphMap:
    """For X = (P -g-> M) with P projective: (1, h): X -> (P -hg-> Q), h minimal left approximation."""
    if X.dom.proj_labels is None:
        raise PreconditionFailed("domain must be a labeled projective")
    h = left_projective_approximation(X.cod)
    return MorphMap(X, MorphObject(h @ X.map), identity(X.dom), h)


def is_selfinjective(A: BoundQuiverAlgebra) -> bool:
    return all(is_injective(projective_module(A, (v,))) for v in range(A.n))


def left_P_approx_selfinjective(X: MorphObject) -> MorphMap:
    """Left P-approximation over a selfinjective algebra: (sigma, [e; 0]): (N -f-> M) -> (I0 -dr-> I + I1)."""
    A = X.algebra
    if not is_selfinjective(A):
        raise PreconditionFailed("the algebra is not selfinjective")
    N, M, f = X.dom, X.cod, X.map
    sigma = left_projective_approximation(N)          # injective envelope N -> I0
    C, p = cokernel(sigma)
    i = left_projective_approximation(C)               # Omega^-1 N -> I1
    e = left_projective_approximation(M)               # M -> I
    U, r, j, pe = pushout_with_epi(sigma, f)
    S = direct_sum([sigma.target, M])
    h = factor_through_epi(pe, map_hstack([p, zero_map(M, C)], S))
    e1 = extend_through(j, e)
    T = direct_sum([e.target, i.target])
    d = map_vstack([e1, i @ h], T)
    tgt = MorphObject(d @ r)
    return MorphMap(X, tgt, sigma, map_vstack([e, zero_map(M, i.target)], T))


def is_right_approximation(phi: MorphMap, probes: Sequence[MorphObject]) -> Verdict:
    for k, W in enumerate(probes):
        need = hom_basis(W.t2, phi.target.t2)
        have = [phi.t2 @ b for b in hom_basis(W.t2, phi.source.t2)]
        if not _spans(have, need):
            return Verdict(False, f"a map from probe {k} does not factor")
    return Verdict(True, f"{len(probes)} probes")


def is_left_approximation(phi: MorphMap, probes: Sequence[MorphObject]) -> Verdict:
    for k, W in enumerate(probes):
        need = hom_basis(phi.source.t2, W.t2)
        have = [b @ phi.t2 for b in hom_basis(phi.target.t2, W.t2)]
        if not _spans(have, need):
            return Verdict(False, f"a map to probe {k} does not factor")
    return Verdict(True, f"{len(probes)} probes")


def _spans(have, need) -> bool:
    if not need:
        return True
    n = len(need[0].flat())
    if n == 0:
        return True
    base = [h.flat() for h in have]
    r = Matrix.from_rows(base, n).rank() if base else 0
    return Matrix.from_rows(base + [x.flat() for x in need], n).rank() == r


def is_right_minimal(phi: MorphMap) -> bool:
    """Every endomorphism u of the source with phi u = phi is invertible."""
    return is_right_minimal_module_map(phi.t2)


def is_left_minimal(phi: MorphMap) -> bool:
    return is_left_minimal_module_map(phi.t2)


def _restrict(phi: MorphMap, parts: list, keep: list[int]) -> MorphMap:
    """phi restricted to the direct sum of the chosen summands of its source."""
    S = morph_sum([parts[k].obj for k in keep])
    projs = morph_projections([parts[k].obj for k in keep], S)
    return _sum_maps([phi @ parts[k].inclusion @ p for k, p in zip(keep, projs)], S, phi.target)


def right_minimal_version(phi: MorphMap) -> MorphMap:
    """Drop indecomposable summands of the source whose component factors through the rest."""
    parts = decompose_H(phi.source)
    keep = list(range(len(parts)))
    changed = True
    while changed and keep:
        changed = False
        for j in keep:
            rest = [k for k in keep if k != j]
            comp = phi @ parts[j].inclusion
            if not rest:
                if comp.is_zero():
                    keep, changed = rest, True
                break
            try:
                lift_H(_restrict(phi, parts, rest), comp)
            except NoSolution:
                continue
            keep, changed = rest, True
            break
    if not keep:
        A = phi.source.algebra
        Z = MorphObject(zero_map(zero_module(A), zero_module(A)))
        return zero_morph(Z, phi.target)
    return _restrict(phi, parts, keep)


def _sum_maps(maps: Sequence[MorphMap], S: MorphObject, T: MorphObject) -> MorphMap:
    out = zero_morph(S, T)
    for m in maps:
        out = out + MorphMap(S, T, m.top, m.bottom)
    return out


def lift_H(phi: MorphMap, h: MorphMap) -> MorphMap:
    """Some t with phi t = h (raises NoSolution)."""
    H = hom_basis_H(h.source, phi.source)
    c = coordinates([(phi @ b).t2 for b in H], h.t2) if H else ([] if h.is_zero() else None)
    if c is None:
        raise NoSolution("map does not factor")
    out = zero_morph(h.source, phi.source)
    for b, x in zip(H, c):
        if x:
            out = out + b.scale(x)
    return out


# -- consistency checks through the morphism category ------------------------------

def theta_stable_tau(M: Module) -> Module:
    """Ker of nu applied to the minimal presentation of M."""
    if is_projective(M):
        raise PreconditionFailed("theta is defined on non-projective modules")
    X, _ = presentation_object(M)
    return ker(nu_object(X))


def tr_via_morphcat(M: Module) -> Module:
    """Cok of the dual of the minimal presentation of M."""
    X, _ = presentation_object(M)
    return cok(star_object(X))

"""g-vectors in K0(prj-A) = Z^n and the map (P -f-> Q) |-> [Q] - [P]."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter

import sympy
from sympy.matrices.normalforms import smith_normal_form

from .algebra import BoundQuiverAlgebra
from .arquiver import knit_module_quiver
from .ars import nu_soc_quotients
from .modcat import BoundExceeded, ShortExactSeq, _indecomposable_iso, min_proj_presentation
from .modules import Module, PreconditionFailed, injective_module
from .morphcat import MorphObject, labeled
from .naming import module_name


class NotInP(PreconditionFailed):
    pass


class NotRepFinite(RuntimeError):
    pass


class CyclicQuiver(RuntimeError):
    pass


@dataclass(frozen=True)
class GVector:
    """Coordinates in the basis [P_1], ..., [P_n] of K0(prj-A)."""
    coords: tuple[int, ...]

    def __add__(self, other: "GVector") -> "GVector":
        return GVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "GVector") -> "GVector":
        return GVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def _class(labels, n: int) -> GVector:
    c = Counter(labels)
    return GVector(tuple(c[v] for v in range(n)))


def g_vector(M: Module) -> GVector:
    """[P0] - [P1] for the minimal projective presentation P1 -> P0 -> M."""
    n = M.algebra.n
    f, _ = min_proj_presentation(M)
    return _class(f.target.proj_labels, n) - _class(f.source.proj_labels, n)


def psi(X: MorphObject) -> GVector:
    """[Q] - [P] for X = (P -> Q) in P(A)."""
    if not X.in_P():
        try:
            X, _ = labeled(X)
        except PreconditionFailed:
            raise NotInP("object does not lie in P(A)") from None
    n = X.algebra.n
    return _class(X.cod.proj_labels, n) - _class(X.dom.proj_labels, n)


@dataclass
class AdditivityReport:
    gL: GVector
    gN: GVector
    gM: GVector
    excluded: bool      # L is a summand of some nu P / soc nu P
    holds: bool         # g(N) = g(L) + g(M)

    @property
    def consistent(self) -> bool:
        """Additivity must hold whenever L is not excluded."""
        return self.holds or self.excluded


def is_excluded(L: Module) -> bool:
    return any(X.dims == L.dims and _indecomposable_iso(X, L) is not None
               for X in nu_soc_quotients(L.algebra))


def g_additivity_check(eps: ShortExactSeq) -> AdditivityReport:
    gL, gN, gM = g_vector(eps.left), g_vector(eps.middle), g_vector(eps.right)
    return AdditivityReport(gL, gN, gM, is_excluded(eps.left), gN == gL + gM)


@dataclass
class GenerationReport:
    vectors: list                 # g-vectors of I_1, ..., I_n
    invariant_factors: list       # diagonal of the Smith normal form
    rank: int
    determinant: int
    generates: bool


def injective_generation_check(A: BoundQuiverAlgebra, max_vertices: int = 10000) -> GenerationReport:
    """Do the g-vectors of the indecomposable injectives generate Z^n?

    Decided by the Smith normal form of the integer matrix with rows g(I_j).
    """
    try:
        G = knit_module_quiver(A, max_vertices)
    except BoundExceeded as e:
        raise NotRepFinite(str(e)) from None
    graph = {j: set() for j in range(len(G))}
    for (i, j) in G.arrows:
        graph[j].add(i)
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError:
        raise CyclicQuiver("the AR quiver has an oriented cycle") from None
    vecs = [g_vector(injective_module(A, (v,))) for v in range(A.n)]
    M = sympy.Matrix([list(g.coords) for g in vecs])
    snf = smith_normal_form(M, domain=sympy.ZZ)
    factors = [int(snf[i, i]) for i in range(min(snf.shape))]
    rank = sum(1 for d in factors if d != 0)
    det = int(M.det()) if M.shape[0] == M.shape[1] else 0
    generates = rank == A.n and all(abs(d) == 1 for d in factors)
    return GenerationReport(vecs, factors, rank, det, generates)


def gvector_table(A: BoundQuiverAlgebra) -> list[dict]:
    """g-vectors of all indecomposables, for JSON export."""
    G = knit_module_quiver(A)
    return [{"name": module_name(M), "dims": list(M.dims), "g": list(g_vector(M).coords)}
            for M in G.vertices]

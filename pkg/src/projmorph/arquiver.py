"""Auslander-Reiten quivers: knitting for mod-A, extension to P(A), and export."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .algebra import BoundQuiverAlgebra
from .ars import ass_P_ending_at, ass_P_ending_at_P_to_zero
from .linalg import Matrix
from .modcat import (BoundExceeded, _indecomposable_iso, decompose, is_projective,
                     knit_indecomposables, radical, radical_of_end)
from .modules import hom_basis, projective_module, simple_module
from .morphcat import (classify_indecomposable, decompose_H_classes, from_t2_module, identity_object,
                       indecomposable_iso_H, labeled, presentation_object, t2_algebra, to_zero)
from .naming import dims_str, module_name, object_name


class IncompleteInput(ValueError):
    pass


@dataclass(eq=False)
class ARQuiver:
    """Translation quiver on iso-classes of indecomposables.

    arrows maps (i, j) to the number of irreducible maps i -> j; tau maps every
    non-projective vertex to its translate.
    """
    algebra: BoundQuiverAlgebra
    kind: str                         # "mod" or "P"
    vertices: list
    projective: list
    injective: list
    arrows: dict = field(default_factory=dict)
    tau: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def tau_inverse(self) -> dict:
        return {t: z for z, t in self.tau.items()}

    def names(self) -> list[str]:
        base = [module_name(X) if self.kind == "mod" else object_name(X) for X in self.vertices]
        seen: Counter = Counter()
        out = []
        for b in base:
            seen[b] += 1
            out.append(b if seen[b] == 1 else f"{b}#{seen[b]}")
        return out

    def index_of(self, X) -> int | None:
        for k, Y in enumerate(self.vertices):
            if Y.dims != X.dims:
                continue
            if self.kind == "mod" and _indecomposable_iso(Y, X) is not None:
                return k
            if self.kind == "P" and indecomposable_iso_H(Y, X):
                return k
        return None

    def into(self, j: int) -> Counter:
        return Counter({i: m for (i, t), m in self.arrows.items() if t == j})

    def out_of(self, i: int) -> Counter:
        return Counter({j: m for (s, j), m in self.arrows.items() if s == i})

    def to_json(self) -> dict:
        names = self.names()
        return {
            "kind": self.kind,
            "algebra": self.algebra.name,
            "vertices": [{"id": k, "name": names[k], "dims": list(X.dims),
                          "projective": self.projective[k], "injective": self.injective[k]}
                         for k, X in enumerate(self.vertices)],
            "arrows": [[i, j, m] for (i, j), m in sorted(self.arrows.items())],
            "tau": [[z, t] for z, t in sorted(self.tau.items())],
        }


def _add_arrow(arrows: dict, i: int, j: int, m: int = 1) -> None:
    if m:
        arrows[(i, j)] = arrows.get((i, j), 0) + m


def knit_module_quiver(A: BoundQuiverAlgebra, max_vertices: int = 10000, max_dim: int = 512) -> ARQuiver:
    """Gamma of mod-A, knitted from the projectives by almost split sequences."""
    K = knit_indecomposables(A, max_vertices, max_dim)
    if len(K.modules) > max_vertices:
        raise BoundExceeded(f"more than {max_vertices} indecomposables")
    G = ARQuiver(A, "mod", list(K.modules), list(K.projective), list(K.injective))
    for j, M in enumerate(K.modules):
        if K.projective[j]:
            parts = decompose(radical(M)[0]) if M.dim > 1 else []
        else:
            s = K.ending[j]
            G.tau[j] = K.index_of(s.left)
            parts = decompose(s.middle)
        for X, m in parts:
            _add_arrow(G.arrows, K.index_of(X), j, m)
    return G


def mesh_check(G: ARQuiver) -> list[int]:
    """Vertices Z whose arrows in differ from the arrows out of tau Z (empty when consistent)."""
    bad = []
    for z, t in sorted(G.tau.items()):
        if G.into(z) != G.out_of(t):
            bad.append(z)
    return bad


def extend_to_P_quiver(G: ARQuiver) -> ARQuiver:
    """Gamma of P(A) from Gamma of mod-A.

    Modules become their minimal presentations; (P -1-> P) and (P -> 0) are added
    for each indecomposable projective P.  Arrows into (P -1-> P) come from the
    presentation of top P, arrows into (P -> 0) and tau of (P -> 0) from the
    almost split sequence ending there, and arrows out of the new vertices from
    the meshes they lie in.
    """
    if G.kind != "mod":
        raise IncompleteInput("expected the quiver of mod-A")
    if mesh_check(G) or any(not G.projective[z] and z not in G.tau for z in range(len(G))):
        raise IncompleteInput("input quiver is not a complete translation quiver")
    A = G.algebra
    n_old = len(G)
    verts = [presentation_object(M)[0] for M in G.vertices]
    proj = list(G.projective)
    inj = [False] * n_old
    pp, pz = {}, {}
    for v in range(A.n):
        P = projective_module(A, (v,))
        pp[v] = len(verts)
        verts.append(identity_object(P))
        proj.append(True)
        inj.append(True)
    for v in range(A.n):
        P = projective_module(A, (v,))
        pz[v] = len(verts)
        verts.append(to_zero(P))
        proj.append(False)
        inj.append(True)
    H = ARQuiver(A, "P", verts, proj, inj, dict(G.arrows), dict(G.tau))

    def find(X) -> int:
        k = H.index_of(X)
        if k is None:
            raise IncompleteInput(f"object {object_name(X)} missing from the quiver")
        return k

    for v in range(A.n):
        t = G.index_of(simple_module(A, A.vertices[v]))
        if t is None:
            raise IncompleteInput("a simple module is missing from the quiver")
        _add_arrow(H.arrows, t, pp[v])
        s = ass_P_ending_at_P_to_zero(projective_module(A, (v,)), certify=False)
        H.tau[pz[v]] = find(s.left)
        for X, m in decompose_H_classes(s.middle):
            _add_arrow(H.arrows, find(X), pz[v], m)
    tau_inv = H.tau_inverse
    sinks = set(pz.values())
    for V in list(pp.values()) + list(pz.values()):
        for U, m in H.into(V).items():
            W = tau_inv.get(U)
            if W is None or W in sinks:
                continue
            _add_arrow(H.arrows, V, W, m)
    return H


# -- direct construction of Gamma of P(A) ----------------------------------------

def _span_rank(maps) -> int:
    if not maps:
        return 0
    n = len(maps[0].flat())
    return Matrix.from_rows([f.flat() for f in maps], n).rank() if n else 0


def knit_P_quiver_direct(A: BoundQuiverAlgebra) -> ARQuiver:
    """Gamma of P(A) computed without the extension rules: vertices from the
    indecomposable T2(A)-modules with projective ends, arrows from rad / rad^2
    inside P(A), translates from almost split sequences obtained by pulling
    back along minimal right P-approximations."""
    T = t2_algebra(A)
    objs = []
    for M in knit_indecomposables(T).modules:
        X = from_t2_module(M, A)
        if is_projective(X.dom) and is_projective(X.cod):
            objs.append(labeled(X)[0])
    n = len(objs)
    kinds = [classify_indecomposable(X) for X in objs]
    G = ARQuiver(A, "P", objs, [k in ("projective", "both") for k in kinds],
                 [k in ("injective", "both") for k in kinds])
    rad = {}
    for i in range(n):
        for j in range(n):
            rad[i, j] = (radical_of_end(objs[i].t2) if i == j
                         else hom_basis(objs[i].t2, objs[j].t2))
    for i in range(n):
        for j in range(n):
            if not rad[i, j]:
                continue
            sq = [g @ f for k in range(n) for f in rad[i, k] for g in rad[k, j]]
            m = _span_rank(rad[i, j] + sq) - _span_rank(sq)
            _add_arrow(G.arrows, i, j, m)
    for z in range(n):
        if not G.projective[z]:
            s = ass_P_ending_at(objs[z])
            G.tau[z] = G.index_of(s.left)
    return G


def translation_isomorphism(G: ARQuiver, H: ARQuiver) -> dict | None:
    """A vertex bijection G -> H matching objects up to iso that carries arrows
    (with multiplicity) and tau onto each other, or None."""
    if len(G) != len(H) or G.kind != H.kind:
        return None
    phi = {}
    for i, X in enumerate(G.vertices):
        j = H.index_of(X)
        if j is None or j in phi.values():
            return None
        phi[i] = j
    if {(phi[i], phi[j]): m for (i, j), m in G.arrows.items()} != H.arrows:
        return None
    if {phi[z]: phi[t] for z, t in G.tau.items()} != H.tau:
        return None
    return phi


# -- orbits and export -------------------------------------------------------------

@dataclass
class Orbit:
    members: list          # ordered by tau^-1, starting from the most projective end
    has_zero_to_P: bool    # contains an object (0 -> P)
    has_P_to_zero: bool    # contains an object (P -> 0)


def tau_P_orbits(G: ARQuiver) -> list[Orbit]:
    tau_inv = G.tau_inverse
    seen: set = set()
    out = []
    for start in range(len(G)):
        if start in seen:
            continue
        # walk back to the beginning of the orbit
        z = start
        visited = {z}
        while z in G.tau and G.tau[z] not in visited:
            z = G.tau[z]
            visited.add(z)
        if z in G.tau:
            z = min(visited)
        chain = [z]
        while chain[-1] in tau_inv and tau_inv[chain[-1]] not in chain:
            chain.append(tau_inv[chain[-1]])
        seen.update(chain)
        objs = [G.vertices[k] for k in chain]
        zp = G.kind == "P" and any(X.dom.dim == 0 for X in objs)
        pz = G.kind == "P" and any(X.cod.dim == 0 for X in objs)
        out.append(Orbit(chain, zp, pz))
    return out


def export_dot(G: ARQuiver | None) -> str:
    """Deterministic DOT text; tau is drawn as dashed edges Z -> tau Z."""
    lines = ["digraph AR {", "  node [shape=box];"]
    if G is not None:
        names = G.names()
        for k, X in enumerate(G.vertices):
            label = f"{names[k]}\\n{dims_str(X.dims)}"
            lines.append(f'  v{k} [label="{label}"];')
        for (i, j), m in sorted(G.arrows.items()):
            for _ in range(m):
                lines.append(f"  v{i} -> v{j};")
        for z, t in sorted(G.tau.items()):
            lines.append(f"  v{z} -> v{t} [style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_json(G: ARQuiver) -> str:
    return json.dumps(G.to_json(), sort_keys=True, separators=(",", ":"))

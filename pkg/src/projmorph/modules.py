"""Right modules over a bound quiver algebra, given as quiver representations.

A module assigns a vector space of dimension ``dims[v]`` to each vertex and a
matrix ``maps[a]`` of shape (dim target, dim source) to each arrow.  Vectors are
columns, so the action of a path ``a1 a2 ... an`` is ``maps[an] @ ... @ maps[a1]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import BoundQuiverAlgebra
from .linalg import (Matrix, DimensionMismatch, block_diag, hstack, vstack, kernel_basis,
                     left_kernel_basis, column_space, solve, try_solve, inverse)


class AlgebraMismatch(ValueError):
    pass


class RelationViolation(ValueError):
    pass


class NotAMorphism(ValueError):
    pass


class PreconditionFailed(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Module:
    algebra: BoundQuiverAlgebra
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]
    proj_labels: tuple[int, ...] | None = None
    inj_labels: tuple[int, ...] | None = None

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    def is_zero(self) -> bool:
        return self.dim == 0

    def path_action(self, word: Sequence[int], start: int) -> Matrix:
        m = Matrix.identity(self.dims[start])
        for a in word:
            m = self.maps[a] @ m
        return m

    def element_action(self, elem: dict, start: int, end: int) -> Matrix:
        """Matrix of right multiplication by an element of e_start A e_end."""
        A = self.algebra
        out = Matrix.zeros(self.dims[end], self.dims[start])
        for k, c in elem.items():
            p = A.basis[k]
            out = out + self.path_action(p.arrows, start).scale(c)
        return out

    def unlabeled(self) -> "Module":
        return Module(self.algebra, self.dims, self.maps)

    def same_data(self, other: "Module") -> bool:
        return (self.algebra is other.algebra and self.dims == other.dims
                and self.maps == other.maps)

    def __repr__(self) -> str:
        return f"Module(dims={self.dims})"


def make_module(A: BoundQuiverAlgebra, dims, maps) -> Module:
    """Build and validate a module; ``dims`` and ``maps`` may be keyed by label/name."""
    if isinstance(dims, dict):
        dims = tuple(int(dims.get(v, dims.get(i, 0))) for i, v in enumerate(A.vertices))
    dims = tuple(int(d) for d in dims)
    if len(dims) != A.n or any(d < 0 for d in dims):
        raise DimensionMismatch("dimension vector does not match the quiver")
    if isinstance(maps, dict):
        ms = []
        for i, a in enumerate(A.arrows):
            m = maps.get(a.name, maps.get(i))
            if m is None:
                m = Matrix.zeros(dims[a.target], dims[a.source])
            elif not isinstance(m, Matrix):
                m = Matrix.from_rows(m, dims[a.source])
            ms.append(m)
        maps = ms
    maps = tuple(maps)
    if len(maps) != len(A.arrows):
        raise DimensionMismatch("one matrix per arrow is required")
    for a, m in zip(A.arrows, maps):
        if m.shape != (dims[a.target], dims[a.source]):
            raise DimensionMismatch(f"matrix for arrow {a.name} has shape {m.shape}")
    M = Module(A, dims, maps)
    check_relations(M)
    return M


def check_relations(M: Module) -> None:
    A = M.algebra
    for rel in A.relations:
        total = None
        for word, c in rel.items():
            s = A.arrows[word[0]].source
            term = M.path_action(word, s).scale(c)
            total = term if total is None else total + term
        if total is not None and not total.is_zero():
            raise RelationViolation("module does not satisfy the relations")


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: Module
    target: Module
    comps: tuple[Matrix, ...]

    def __post_init__(self):
        if self.source.algebra is not self.target.algebra:
            raise AlgebraMismatch("source and target live over different algebras")

    @property
    def algebra(self):
        return self.source.algebra

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        if other.target is not self.source and not other.target.same_data(self.source):
            raise DimensionMismatch("composition of non-composable maps")
        return ModuleMap(other.source, self.target, tuple(a @ b for a, b in zip(self.comps, other.comps)))

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self) -> "ModuleMap":
        return ModuleMap(self.source, self.target, tuple(-a for a in self.comps))

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, tuple(a.scale(c) for a in self.comps))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def flat(self) -> tuple:
        return tuple(x for c in self.comps for x in c.flat())

    def rank(self) -> int:
        return sum(c.rank() for c in self.comps)

    def is_injective(self) -> bool:
        return all(c.rank() == c.cols for c in self.comps)

    def is_surjective(self) -> bool:
        return all(c.rank() == c.rows for c in self.comps)

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def retarget(self, source: Module | None = None, target: Module | None = None) -> "ModuleMap":
        return ModuleMap(source or self.source, target or self.target, self.comps)

    def __repr__(self) -> str:
        return f"ModuleMap({self.source.dims} -> {self.target.dims})"


def make_map(M: Module, N: Module, comps, check: bool = True) -> ModuleMap:
    A = M.algebra
    if N.algebra is not A:
        raise AlgebraMismatch("modules over different algebras")
    if isinstance(comps, dict):
        comps = [comps.get(v, comps.get(i)) for i, v in enumerate(A.vertices)]
    cs = []
    for v, c in enumerate(comps):
        if c is None:
            c = Matrix.zeros(N.dims[v], M.dims[v])
        elif not isinstance(c, Matrix):
            c = Matrix.from_rows(c, M.dims[v])
        if c.shape != (N.dims[v], M.dims[v]):
            raise DimensionMismatch(f"component at vertex {A.vertices[v]} has shape {c.shape}")
        cs.append(c)
    f = ModuleMap(M, N, tuple(cs))
    if check:
        check_morphism(f)
    return f


def check_morphism(f: ModuleMap) -> None:
    M, N = f.source, f.target
    for i, a in enumerate(M.algebra.arrows):
        if N.maps[i] @ f.comps[a.source] != f.comps[a.target] @ M.maps[i]:
            raise NotAMorphism(f"square for arrow {a.name} does not commute")


def identity(M: Module) -> ModuleMap:
    return ModuleMap(M, M, tuple(Matrix.identity(d) for d in M.dims))


def zero_map(M: Module, N: Module) -> ModuleMap:
    return ModuleMap(M, N, tuple(Matrix.zeros(N.dims[v], M.dims[v]) for v in range(M.algebra.n)))


def zero_module(A: BoundQuiverAlgebra) -> Module:
    return Module(A, (0,) * A.n, tuple(Matrix.zeros(0, 0) for _ in A.arrows), (), ())


# -- direct sums ------------------------------------------------------------

def direct_sum(mods: Sequence[Module], A: BoundQuiverAlgebra | None = None) -> Module:
    if not mods:
        if A is None:
            raise ValueError("empty direct sum needs an algebra")
        return zero_module(A)
    A = mods[0].algebra
    if any(m.algebra is not A for m in mods):
        raise AlgebraMismatch("direct sum over different algebras")
    dims = tuple(sum(m.dims[v] for m in mods) for v in range(A.n))
    maps = tuple(block_diag([m.maps[i] for m in mods]) for i in range(len(A.arrows)))
    pl = tuple(x for m in mods for x in m.proj_labels) if all(m.proj_labels is not None for m in mods) else None
    il = tuple(x for m in mods for x in m.inj_labels) if all(m.inj_labels is not None for m in mods) else None
    return Module(A, dims, maps, pl, il)


def sum_injections(mods: Sequence[Module], S: Module) -> list[ModuleMap]:
    out = []
    offs = [0] * S.algebra.n
    for m in mods:
        comps = []
        for v in range(S.algebra.n):
            rows = [[Fraction(1) if i == offs[v] + j else Fraction(0) for j in range(m.dims[v])]
                    for i in range(S.dims[v])]
            comps.append(Matrix.from_rows(rows, m.dims[v]))
            offs[v] += m.dims[v]
        out.append(ModuleMap(m, S, tuple(comps)))
    return out


def sum_projections(mods: Sequence[Module], S: Module) -> list[ModuleMap]:
    return [ModuleMap(S, i.source, tuple(c.T for c in i.comps)) for i in sum_injections(mods, S)]


def map_hstack(maps: Sequence[ModuleMap], source: Module | None = None) -> ModuleMap:
    """[f1 f2 ...]: X1 + X2 + ... -> Y."""
    Y = maps[0].target
    S = source or direct_sum([f.source for f in maps])
    return ModuleMap(S, Y, tuple(hstack([f.comps[v] for f in maps], Y.dims[v]) for v in range(Y.algebra.n)))


def map_vstack(maps: Sequence[ModuleMap], target: Module | None = None) -> ModuleMap:
    """[f1; f2; ...]: X -> Y1 + Y2 + ..."""
    X = maps[0].source
    T = target or direct_sum([f.target for f in maps])
    return ModuleMap(X, T, tuple(vstack([f.comps[v] for f in maps], X.dims[v]) for v in range(X.algebra.n)))


def map_diag(maps: Sequence[ModuleMap], source: Module | None = None, target: Module | None = None) -> ModuleMap:
    S = source or direct_sum([f.source for f in maps])
    T = target or direct_sum([f.target for f in maps])
    return ModuleMap(S, T, tuple(block_diag([f.comps[v] for f in maps]) for v in range(S.algebra.n)))


def map_blocks(grid: Sequence[Sequence[ModuleMap]], source: Module, target: Module) -> ModuleMap:
    rows = [map_hstack(list(r), source) for r in grid]
    return map_vstack(rows, target) if len(rows) > 1 else rows[0].retarget(target=target)


# -- subquotients -----------------------------------------------------------

def submodule(M: Module, bases: Sequence[Matrix]) -> tuple[Module, ModuleMap]:
    """Submodule spanned by the columns of ``bases[v]`` (assumed closed and independent)."""
    A = M.algebra
    maps = []
    for i, a in enumerate(A.arrows):
        img = M.maps[i] @ bases[a.source]
        maps.append(solve(bases[a.target], img))
    S = Module(A, tuple(b.cols for b in bases), tuple(maps))
    return S, ModuleMap(S, M, tuple(bases))


def quotient(M: Module, bases: Sequence[Matrix]) -> tuple[Module, ModuleMap]:
    """Quotient of M by the submodule spanned by ``bases[v]``; returns (M/U, projection)."""
    A = M.algebra
    projs = [left_kernel_basis(b) if b.cols else Matrix.identity(M.dims[v]) for v, b in enumerate(bases)]
    maps = []
    for i, a in enumerate(A.arrows):
        # C_a p_s = p_t M_a
        rhs = projs[a.target] @ M.maps[i]
        maps.append(solve(projs[a.source].T, rhs.T).T)
    Q = Module(A, tuple(p.rows for p in projs), tuple(maps))
    return Q, ModuleMap(M, Q, tuple(projs))


def kernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return submodule(f.source, [kernel_basis(c) for c in f.comps])


def cokernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return quotient(f.target, [column_space(c) for c in f.comps])


def image(f: ModuleMap) -> tuple[Module, ModuleMap, ModuleMap]:
    """Image I with the epi X -> I and the mono I -> Y."""
    I, inc = submodule(f.target, [column_space(c) for c in f.comps])
    epi = ModuleMap(f.source, I, tuple(solve(b, c) for b, c in zip(inc.comps, f.comps)))
    return I, epi, inc


def pullback(f: ModuleMap, g: ModuleMap) -> tuple[Module, ModuleMap, ModuleMap]:
    """U with p: U -> X, q: U -> Y and f p = g q."""
    X, Y = f.source, g.source
    S = direct_sum([X, Y])
    pi = sum_projections([X, Y], S)
    h = map_hstack([f, -g], S)
    U, inc = kernel(h)
    return U, pi[0] @ inc, pi[1] @ inc


def pushout(f: ModuleMap, g: ModuleMap) -> tuple[Module, ModuleMap, ModuleMap]:
    """W with i: Y -> W, j: Z -> W and i f = j g for f: X -> Y, g: X -> Z."""
    Y, Z = f.target, g.target
    S = direct_sum([Y, Z])
    inj = sum_injections([Y, Z], S)
    h = map_vstack([f, -g], S)
    W, p = cokernel(h)
    return W, p @ inj[0], p @ inj[1]


def factor_through_mono(mono: ModuleMap, h: ModuleMap) -> ModuleMap:
    """The unique t with mono t = h (raises NoSolution if im h is not inside im mono)."""
    return ModuleMap(h.source, mono.source, tuple(solve(m, c) for m, c in zip(mono.comps, h.comps)))


def factor_through_epi(epi: ModuleMap, h: ModuleMap) -> ModuleMap:
    """The unique t with t epi = h (raises NoSolution if h does not kill ker epi)."""
    return ModuleMap(epi.target, h.target, tuple(solve(e.T, c.T).T for e, c in zip(epi.comps, h.comps)))


def inverse_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(f.target, f.source, tuple(inverse(c) for c in f.comps))


# -- homomorphism spaces ----------------------------------------------------

def hom_basis(M: Module, N: Module) -> list[ModuleMap]:
    """Canonical basis of Hom(M, N), from the null space of the commuting-square system."""
    A = M.algebra
    if N.algebra is not A:
        raise AlgebraMismatch("Hom between modules over different algebras")
    offs = []
    total = 0
    for v in range(A.n):
        offs.append(total)
        total += N.dims[v] * M.dims[v]
    if total == 0:
        return []
    rows = []
    zero = Fraction(0)
    for i, a in enumerate(A.arrows):
        s, t = a.source, a.target
        Na, Ma = N.maps[i], M.maps[i]
        # (N_a phi_s - phi_t M_a)[r, c] = 0
        for r in range(N.dims[t]):
            for c in range(M.dims[s]):
                row = [zero] * total
                for k in range(N.dims[s]):
                    x = Na.data[r][k]
                    if x:
                        row[offs[s] + k * M.dims[s] + c] += x
                for k in range(M.dims[t]):
                    x = Ma.data[k][c]
                    if x:
                        row[offs[t] + r * M.dims[t] + k] -= x
                rows.append(row)
    K = kernel_basis(Matrix.from_rows(rows, total)) if rows else Matrix.identity(total)
    out = []
    for j in range(K.cols):
        col = K.col(j)
        comps = []
        for v in range(A.n):
            d, e = N.dims[v], M.dims[v]
            o = offs[v]
            comps.append(Matrix._raw(d, e, [col[o + r * e:o + (r + 1) * e] for r in range(d)]))
        out.append(ModuleMap(M, N, tuple(comps)))
    return out


def combine(basis: Sequence[ModuleMap], coeffs, M: Module | None = None, N: Module | None = None) -> ModuleMap:
    if not basis:
        return zero_map(M, N)
    out = None
    for b, c in zip(basis, coeffs):
        if c:
            term = b.scale(c)
            out = term if out is None else out + term
    return out if out is not None else zero_map(basis[0].source, basis[0].target)


def coordinates(basis: Sequence[ModuleMap], f: ModuleMap) -> list[Fraction] | None:
    """Coordinates of f in the given (independent) maps, or None if f is not in their span."""
    n = len(f.flat())
    if not basis:
        return [] if f.is_zero() else None
    a = Matrix.from_cols([b.flat() for b in basis], n)
    x = try_solve(a, Matrix.from_cols([f.flat()], n))
    return None if x is None else [x[i, 0] for i in range(x.rows)]


# -- projective and injective modules ---------------------------------------

def projective_module(A: BoundQuiverAlgebra, labels: Sequence[int]) -> Module:
    """The labeled projective P_{v1} + ... + P_{vr}, each P_v = e_v A with its path basis."""
    labels = tuple(labels)
    key = ("proj", labels)
    cache = A.__dict__.setdefault("_module_cache", {})
    if key in cache:
        return cache[key]
    dims = tuple(sum(len(A.paths_between(u, x)) for u in labels) for x in range(A.n))
    maps = []
    for ai, a in enumerate(A.arrows):
        s, t = a.source, a.target
        arrow = A.arrow_element(ai)
        rows_total = dims[t]
        mat = [[Fraction(0)] * dims[s] for _ in range(rows_total)]
        roff = 0
        coff = 0
        for u in labels:
            tp = A.paths_between(u, t)
            sp = A.paths_between(u, s)
            pos = {k: i for i, k in enumerate(tp)}
            for j, p in enumerate(sp):
                for k, c in A.mul({p: Fraction(1)}, arrow).items():
                    mat[roff + pos[k]][coff + j] = c
            roff += len(tp)
            coff += len(sp)
        maps.append(Matrix._raw(rows_total, dims[s], mat))
    P = Module(A, dims, tuple(maps), labels, None)
    cache[key] = P
    return P


def indecomposable_projective(A: BoundQuiverAlgebra, v) -> Module:
    return projective_module(A, (A.vertex_index(v),))


def simple_module(A: BoundQuiverAlgebra, v) -> Module:
    v = A.vertex_index(v)
    dims = tuple(1 if i == v else 0 for i in range(A.n))
    return Module(A, dims, tuple(Matrix.zeros(dims[a.target], dims[a.source]) for a in A.arrows))


def proj_map(A: BoundQuiverAlgebra, src: Sequence[int], tgt: Sequence[int], entries) -> ModuleMap:
    """Map between labeled projectives from a path matrix.

    ``entries[l][k]`` is an element of e_{tgt[l]} A e_{src[k]}: the generator of
    the k-th source summand goes to left multiplication by that element.
    """
    P = projective_module(A, src)
    Q = projective_module(A, tgt)
    comps = []
    for x in range(A.n):
        mat = [[Fraction(0)] * P.dims[x] for _ in range(Q.dims[x])]
        coff = 0
        for k, v in enumerate(src):
            sp = A.paths_between(v, x)
            roff = 0
            for l, w in enumerate(tgt):
                tp = A.paths_between(w, x)
                q = entries[l][k]
                if q:
                    pos = {b: i for i, b in enumerate(tp)}
                    for j, p in enumerate(sp):
                        for b, c in A.mul(q, {p: Fraction(1)}).items():
                            mat[roff + pos[b]][coff + j] += c
                roff += len(tp)
            coff += len(sp)
        comps.append(Matrix._raw(Q.dims[x], P.dims[x], mat))
    return ModuleMap(P, Q, tuple(comps))


def path_matrix(f: ModuleMap) -> list[list[dict]]:
    """Inverse of ``proj_map``: read off where each generator is sent."""
    A = f.algebra
    src, tgt = f.source.proj_labels, f.target.proj_labels
    if src is None or tgt is None:
        raise PreconditionFailed("path matrices need labeled projective modules")
    out = [[{} for _ in src] for _ in tgt]
    for k, v in enumerate(src):
        # position of the k-th generator in the fiber at v
        off = sum(len(A.paths_between(u, v)) for u in src[:k])
        col = f.comps[v].col(off + A.paths_between(v, v).index(A.trivial(v)))
        roff = 0
        for l, w in enumerate(tgt):
            tp = A.paths_between(w, v)
            out[l][k] = {b: col[roff + i] for i, b in enumerate(tp) if col[roff + i]}
            roff += len(tp)
    return out


def generator_map(P: Module, M: Module, elements: Sequence[Matrix]) -> ModuleMap:
    """The map from a labeled projective P sending its k-th generator to ``elements[k]``
    (a column vector in the fiber of M at the k-th label)."""
    A = P.algebra
    comps = []
    for x in range(A.n):
        cols = []
        for k, v in enumerate(P.proj_labels):
            m = elements[k]
            for p in A.paths_between(v, x):
                cols.append((M.path_action(A.basis[p].arrows, v) @ m).col(0))
        comps.append(Matrix.from_cols(cols, M.dims[x]) if cols else Matrix.zeros(M.dims[x], 0))
    return ModuleMap(P, M, tuple(comps))


def generator_images(f: ModuleMap) -> list[Matrix]:
    """Images of the generators of a labeled projective source."""
    A = f.algebra
    out = []
    for k, v in enumerate(f.source.proj_labels):
        off = sum(len(A.paths_between(u, v)) for u in f.source.proj_labels[:k])
        j = off + A.paths_between(v, v).index(A.trivial(v))
        out.append(f.comps[v].submatrix(range(f.comps[v].rows), [j]))
    return out


def lift_through_epi(h: ModuleMap, epi: ModuleMap) -> ModuleMap:
    """A map t: P -> Y with epi t = h, for P = h.source a labeled projective."""
    if h.source.proj_labels is None:
        raise PreconditionFailed("lifting needs a labeled projective source")
    gens = generator_images(h)
    lifted = [solve(epi.comps[v], g) for v, g in zip(h.source.proj_labels, gens)]
    return generator_map(h.source, epi.source, lifted)


# -- duality ---------------------------------------------------------------

def dual_module(M: Module) -> Module:
    """D M = Hom_k(M, k) as a module over the opposite algebra."""
    Aop = M.algebra.opposite()
    return Module(Aop, M.dims, tuple(m.T for m in M.maps), M.inj_labels, M.proj_labels)


def dual_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(dual_module(f.target), dual_module(f.source), tuple(c.T for c in f.comps))


def injective_module(A: BoundQuiverAlgebra, labels: Sequence[int]) -> Module:
    """The labeled injective I_{v1} + ..., with I_v = D(A e_v)."""
    labels = tuple(labels)
    key = ("inj", labels)
    cache = A.__dict__.setdefault("_module_cache", {})
    if key not in cache:
        cache[key] = dual_module(projective_module(A.opposite(), labels))
    return cache[key]


def indecomposable_injective(A: BoundQuiverAlgebra, v) -> Module:
    return injective_module(A, (A.vertex_index(v),))


def star_map(f: ModuleMap) -> ModuleMap:
    """Hom_A(-, A) on a map between labeled projectives, landing over the opposite algebra."""
    A = f.algebra
    pm = path_matrix(f)
    src, tgt = f.source.proj_labels, f.target.proj_labels
    # basis indices are shared with the opposite algebra, so elements carry over as they are
    entries = [[pm[l][k] for l in range(len(tgt))] for k in range(len(src))]
    return proj_map(A.opposite(), tgt, src, entries)


def nakayama_map(f: ModuleMap) -> ModuleMap:
    """nu = D Hom_A(-, A) on a map between labeled projectives."""
    return dual_map(star_map(f))


def inverse_nakayama_map(f: ModuleMap) -> ModuleMap:
    """nu^-1 on a map between labeled injectives."""
    if f.source.inj_labels is None or f.target.inj_labels is None:
        raise PreconditionFailed("inverse Nakayama needs labeled injective modules")
    return star_map(dual_map(f))


def nakayama_module(P: Module) -> Module:
    if P.proj_labels is None:
        raise PreconditionFailed("Nakayama functor needs a labeled projective")
    return injective_module(P.algebra, P.proj_labels)

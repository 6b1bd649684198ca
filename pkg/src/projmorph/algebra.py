"""Finite-dimensional bound quiver algebras kQ/I over the rationals.

Paths compose left to right: the path ``ab`` runs along ``a`` and then ``b``.
Normal forms come from a noncommutative Groebner basis of the ideal with
respect to the length-then-lexicographic order on arrow words.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

MAX_PATH_LENGTH = 64
MAX_BASIS = 20000


class AlgebraError(ValueError):
    pass


class NonAdmissibleIdeal(AlgebraError):
    pass


class InfiniteDimensional(AlgebraError):
    pass


class DuplicateName(AlgebraError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Path:
    source: int
    target: int
    arrows: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.arrows)


Element = dict  # basis index -> Fraction


def _key(word: tuple[int, ...]):
    return (len(word), word)


def _leading(poly: dict) -> tuple[int, ...]:
    return max(poly, key=_key)


def _monic(poly: dict) -> dict:
    c = poly[_leading(poly)]
    return {w: x / c for w, x in poly.items()}


def _find(word, sub):
    n, m = len(word), len(sub)
    for i in range(n - m + 1):
        if word[i:i + m] == sub:
            return i
    return -1


class _Groebner:
    def __init__(self, polys: list[dict], max_len: int):
        self.max_len = max_len
        self.basis: list[dict] = []
        self.lead: list[tuple] = []
        work = [_monic(p) for p in polys if p]
        for p in work:
            self._add(p)
        self._complete()

    def reduce(self, poly: dict) -> dict:
        poly = {w: c for w, c in poly.items() if c}
        done: dict = {}
        while poly:
            w = _leading(poly)
            c = poly.pop(w)
            for g, lt in zip(self.basis, self.lead):
                i = _find(w, lt)
                if i >= 0:
                    pre, post = w[:i], w[i + len(lt):]
                    for u, x in g.items():
                        if u == lt:
                            continue
                        v = pre + u + post
                        poly[v] = poly.get(v, 0) - c * x
                        if not poly[v]:
                            del poly[v]
                    break
            else:
                done[w] = c
        return done

    def _add(self, p: dict):
        p = self.reduce(p)
        if not p:
            return False
        p = _monic(p)
        if max(len(w) for w in p) > self.max_len:
            raise InfiniteDimensional("relation rewriting exceeded the path-length bound")
        self.basis.append(p)
        self.lead.append(_leading(p))
        return True

    def _complete(self):
        queue = [(i, j) for i in range(len(self.basis)) for j in range(len(self.basis))]
        while queue:
            if len(self.basis) > 4000:
                raise InfiniteDimensional("Groebner completion did not terminate within bounds")
            i, j = queue.pop()
            t1, t2 = self.lead[i], self.lead[j]
            for k in range(1, min(len(t1), len(t2))):
                if t1[-k:] != t2[:k]:
                    continue
                left = {w + t2[k:]: c for w, c in self.basis[i].items()}
                right = {t1[:-k] + w: c for w, c in self.basis[j].items()}
                s = dict(left)
                for w, c in right.items():
                    s[w] = s.get(w, 0) - c
                n = len(self.basis)
                if self._add(s):
                    queue.extend((n, m) for m in range(n + 1))
                    queue.extend((m, n) for m in range(n))


class BoundQuiverAlgebra:
    """kQ/I with an explicit path basis and multiplication table.

    Instances compare by identity; ``opposite()`` is cached so that the
    opposite of the opposite is the original object.
    """

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Arrow],
                 relations: Sequence[dict], name: str = "", *, _twin=None):
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)
        self.relations = tuple(relations)
        self.name = name
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        self._aindex = {a.name: i for i, a in enumerate(self.arrows)}
        self._mult_cache: dict = {}
        self._twin = _twin
        if _twin is None:
            self._gb = _Groebner([dict(r) for r in self.relations], MAX_PATH_LENGTH)
            self.basis = self._enumerate_basis()
            self._opposite = None
        else:
            # opposite algebra: same basis indices, reversed words
            self._gb = None
            self.basis = [Path(p.target, p.source, tuple(reversed(p.arrows))) for p in _twin.basis]
            self._opposite = _twin
        self._index = {p.arrows if p.arrows else ("e", p.source): k for k, p in enumerate(self.basis)}
        self._between: dict = {}
        for k, p in enumerate(self.basis):
            self._between.setdefault((p.source, p.target), []).append(k)
        if _twin is None:
            self._check_admissible()

    # -- construction helpers -----------------------------------------
    def _enumerate_basis(self) -> list[Path]:
        leads = self._gb.lead
        out = []
        for v in range(len(self.vertices)):
            frontier = [()]
            out.append(Path(v, v, ()))
            while frontier:
                nxt = []
                for w in frontier:
                    end = self.arrows[w[-1]].target if w else v
                    for ai, a in enumerate(self.arrows):
                        if a.source != end:
                            continue
                        u = w + (ai,)
                        if any(_find(u[-len(t):], t) == 0 for t in leads if len(t) <= len(u)):
                            continue
                        if len(u) > MAX_PATH_LENGTH or len(out) > MAX_BASIS:
                            raise InfiniteDimensional(
                                f"path basis exceeds the bound (length {MAX_PATH_LENGTH}, size {MAX_BASIS})")
                        out.append(Path(v, a.target, u))
                        nxt.append(u)
                frontier = nxt
        out.sort(key=lambda p: (p.source, p.target, len(p.arrows), p.arrows))
        return out

    def _check_admissible(self):
        # the arrow ideal must be nilpotent in the quotient
        from .linalg import Matrix
        n = self.dim
        layer = [k for k, p in enumerate(self.basis) if p.arrows]
        current = [{k: Fraction(1)} for k in layer]
        arrows = [self.arrow_element(i) for i in range(len(self.arrows))]
        prev_rank = None
        for _ in range(MAX_PATH_LENGTH + 1):
            rows = [[e.get(k, Fraction(0)) for k in range(n)] for e in current]
            if not rows:
                return
            m = Matrix.from_rows(rows, n)
            r = m.rank()
            if r == 0:
                return
            if prev_rank is not None and r == prev_rank:
                raise NonAdmissibleIdeal("the arrow ideal is not nilpotent modulo the relations")
            prev_rank = r
            from .linalg import rref
            red, piv = rref(m)
            span = [{k: x for k, x in enumerate(red.data[i]) if x} for i in range(len(piv))]
            current = [self.mul(e, a) for e in span for a in arrows]
            current = [e for e in current if e]
        raise NonAdmissibleIdeal("arrow ideal power test failed within the path-length bound")

    # -- basic data ----------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vertex_index(self, v) -> int:
        if isinstance(v, int) and v not in self._vindex and 0 <= v < self.n:
            return v
        if v in self._vindex:
            return self._vindex[v]
        if str(v) in self._vindex:
            return self._vindex[str(v)]
        raise KeyError(f"unknown vertex {v!r}")

    def arrow_index(self, name: str) -> int:
        return self._aindex[name]

    def paths_between(self, u: int, w: int) -> list[int]:
        """Basis indices of paths from vertex u to vertex w."""
        return self._between.get((u, w), [])

    def trivial(self, v: int) -> int:
        return self._index[("e", v)]

    def path_name(self, k: int) -> str:
        p = self.basis[k]
        if not p.arrows:
            return f"e{self.vertices[p.source]}"
        return "*".join(self.arrows[a].name for a in p.arrows)

    def arrow_element(self, ai: int) -> Element:
        return self.word_element((ai,))

    def word_element(self, word: Sequence[int], start: int | None = None) -> Element:
        """The algebra element represented by an arrow word (empty word needs ``start``)."""
        word = tuple(word)
        if not word:
            return {self.trivial(start): Fraction(1)}
        for a, b in zip(word, word[1:]):
            if self.arrows[a].target != self.arrows[b].source:
                return {}
        if self._twin is not None:
            return self._twin.word_element(tuple(reversed(word)))
        red = self._gb.reduce({word: Fraction(1)})
        return {self._index[w]: c for w, c in red.items()}

    def mult(self, i: int, j: int) -> Element:
        """Product of basis elements i and j."""
        key = (i, j)
        hit = self._mult_cache.get(key)
        if hit is not None:
            return hit
        if self._twin is not None:
            res = self._twin.mult(j, i)
        else:
            p, q = self.basis[i], self.basis[j]
            if p.target != q.source:
                res = {}
            elif not p.arrows:
                res = {j: Fraction(1)}
            elif not q.arrows:
                res = {i: Fraction(1)}
            else:
                res = self.word_element(p.arrows + q.arrows)
        self._mult_cache[key] = res
        return res

    def mul(self, x: Element, y: Element) -> Element:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mult(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: c for k, c in out.items() if c}

    def opposite(self) -> "BoundQuiverAlgebra":
        if self._opposite is None:
            arrows = [Arrow(a.name, a.target, a.source) for a in self.arrows]
            rels = [{tuple(reversed(w)): c for w, c in r.items()} for r in self.relations]
            name = self.name[:-3] if self.name.endswith("^op") else (self.name + "^op" if self.name else "")
            self._opposite = BoundQuiverAlgebra(self.vertices, arrows, rels, name, _twin=self)
        return self._opposite

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "source": self.vertices[a.source], "target": self.vertices[a.target]}
                       for a in self.arrows],
            "relations": [[[str(c), [self.arrows[i].name for i in w]] for w, c in sorted(r.items())]
                          for r in self.relations],
        }

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra({self.name or '?'}; {self.n} vertices, dim {self.dim})"


def build_algebra(vertices: Sequence, arrows: Iterable[tuple], relations: Iterable = (),
                  name: str = "") -> BoundQuiverAlgebra:
    """Build kQ/I.

    ``arrows`` holds ``(name, source, target)`` triples and each relation is a
    list of ``(coefficient, [arrow names])`` pairs; the arrow names of a term
    are read left to right.
    """
    vertices = [str(v) for v in vertices]
    if len(set(vertices)) != len(vertices):
        raise DuplicateName("duplicate vertex label")
    vidx = {v: i for i, v in enumerate(vertices)}
    arrs = []
    for nm, s, t in arrows:
        if str(s) not in vidx or str(t) not in vidx:
            raise AlgebraError(f"arrow {nm} uses an unknown vertex")
        arrs.append(Arrow(str(nm), vidx[str(s)], vidx[str(t)]))
    if len({a.name for a in arrs}) != len(arrs):
        raise DuplicateName("duplicate arrow name")
    aidx = {a.name: i for i, a in enumerate(arrs)}
    rels = []
    for rel in relations:
        poly: dict = {}
        ends = set()
        for coeff, word in rel:
            w = tuple(aidx[a] if a in aidx else _unknown(a) for a in word)
            if len(w) < 2:
                raise NonAdmissibleIdeal("relations must be combinations of paths of length at least 2")
            for a, b in zip(w, w[1:]):
                if arrs[a].target != arrs[b].source:
                    raise AlgebraError(f"non-composable path {'*'.join(word)} in relation")
            ends.add((arrs[w[0]].source, arrs[w[-1]].target))
            poly[w] = poly.get(w, 0) + Fraction(coeff)
        poly = {w: c for w, c in poly.items() if c}
        if len(ends) > 1:
            raise AlgebraError("relation mixes non-parallel paths")
        if poly:
            rels.append(poly)
    return BoundQuiverAlgebra(vertices, arrs, rels, name)


def _unknown(a):
    raise AlgebraError(f"unknown arrow {a!r} in relation")


def opposite_algebra(A: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    return A.opposite()

"""Exact rational matrices.

Every matrix is a dense, immutable grid of ``Fraction`` entries.  Zero-row and
zero-column matrices are ordinary values, so kernels of injective maps and
cokernels of surjective maps need no special casing downstream.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionMismatch(ValueError):
    pass


class NoSolution(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact matrices")
    return Fraction(x)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    data: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise DimensionMismatch(f"data does not match shape {self.rows}x{self.cols}")

    # -- constructors --------------------------------------------------
    @staticmethod
    def from_rows(rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [tuple(_frac(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionMismatch("column count needed for an empty row list")
            cols = len(rows[0])
        return Matrix(len(rows), cols, tuple(rows))

    @staticmethod
    def from_cols(cols: Sequence[Sequence], rows: int) -> "Matrix":
        cols = [list(c) for c in cols]
        return Matrix.from_rows([[c[i] for c in cols] for i in range(rows)], len(cols))

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @staticmethod
    def _raw(rows: int, cols: int, lists) -> "Matrix":
        return Matrix(rows, cols, tuple(tuple(r) for r in lists))

    # -- basic access --------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.data]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic ----------------------------------------------------
    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ocols = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = []
        for r in self.data:
            nz = [(k, x) for k, x in enumerate(r) if x]
            out.append(tuple(sum((x * c[k] for k, x in nz), ZERO) for c in ocols))
        return Matrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols,
                      tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data))

    def scale(self, c) -> "Matrix":
        c = _frac(c)
        return Matrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.data))

    @property
    def T(self) -> "Matrix":
        if self.rows == 0:
            return Matrix.zeros(self.cols, 0)
        return Matrix(self.cols, self.rows, tuple(zip(*self.data)))

    def submatrix(self, rows: Iterable[int] | slice, cols: Iterable[int] | slice) -> "Matrix":
        ri = range(self.rows)[rows] if isinstance(rows, slice) else list(rows)
        ci = range(self.cols)[cols] if isinstance(cols, slice) else list(cols)
        return Matrix(len(ri), len(ci), tuple(tuple(self.data[i][j] for j in ci) for i in ri))

    def rank(self) -> int:
        return len(rref(self)[1])

    def flat(self) -> tuple:
        return tuple(x for r in self.data for x in r)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def hstack(mats: Sequence[Matrix], rows: int | None = None) -> Matrix:
    if not mats:
        return Matrix.zeros(rows or 0, 0)
    r = mats[0].rows
    if any(m.rows != r for m in mats):
        raise DimensionMismatch("hstack needs equal row counts")
    return Matrix(r, sum(m.cols for m in mats),
                  tuple(tuple(x for m in mats for x in m.data[i]) for i in range(r)))


def vstack(mats: Sequence[Matrix], cols: int | None = None) -> Matrix:
    if not mats:
        return Matrix.zeros(0, cols or 0)
    c = mats[0].cols
    if any(m.cols != c for m in mats):
        raise DimensionMismatch("vstack needs equal column counts")
    return Matrix(sum(m.rows for m in mats), c, tuple(r for m in mats for r in m.data))


def block_diag(mats: Sequence[Matrix]) -> Matrix:
    R = sum(m.rows for m in mats)
    C = sum(m.cols for m in mats)
    out = [[ZERO] * C for _ in range(R)]
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m.data):
            out[r0 + i][c0:c0 + m.cols] = row
        r0 += m.rows
        c0 += m.cols
    return Matrix._raw(R, C, out)


def blocks(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    return vstack([hstack(list(row)) for row in grid])


def _rref_lists(a: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place reduced row echelon form; returns the pivot columns."""
    pivots = []
    r = 0
    nrows = len(a)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        if piv != 1:
            inv = 1 / piv
            a[r] = [x * inv for x in a[r]]
        prow = a[r]
        nz = [(j, x) for j, x in enumerate(prow) if x and j >= c]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    row = a[i]
                    for j, x in nz:
                        row[j] -= f * x
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Canonical reduced row echelon form and pivot columns."""
    a = m.tolist()
    piv = _rref_lists(a, m.cols)
    return Matrix._raw(m.rows, m.cols, a), tuple(piv)


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form the canonical basis of the null space (one per free column)."""
    a = m.tolist()
    piv = _rref_lists(a, m.cols)
    free = [j for j in range(m.cols) if j not in set(piv)]
    cols = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for i, p in enumerate(piv):
            v[p] = -a[i][f]
        cols.append(v)
    return Matrix.from_cols(cols, m.cols) if cols else Matrix.zeros(m.cols, 0)


def left_kernel_basis(m: Matrix) -> Matrix:
    """Rows span {y : y m = 0}."""
    return kernel_basis(m.T).T


def column_space(m: Matrix) -> Matrix:
    """Basis of the column space given by the pivot columns of ``m``."""
    _, piv = rref(m)
    return m.submatrix(range(m.rows), piv)


def solve(a: Matrix, b: Matrix) -> Matrix:
    """A particular solution x of a x = b (canonical: free variables set to zero)."""
    if a.rows != b.rows:
        raise DimensionMismatch(f"solve: {a.shape} vs right-hand side {b.shape}")
    aug = [list(ra) + list(rb) for ra, rb in zip(a.data, b.data)]
    piv = _rref_lists(aug, a.cols)
    for i in range(len(piv), a.rows):
        if any(aug[i][a.cols:]):
            raise NoSolution("inconsistent linear system")
    x = [[ZERO] * b.cols for _ in range(a.cols)]
    for i, p in enumerate(piv):
        x[p] = aug[i][a.cols:]
    return Matrix._raw(a.cols, b.cols, x)


def try_solve(a: Matrix, b: Matrix) -> Matrix | None:
    try:
        return solve(a, b)
    except NoSolution:
        return None


def solve_left(a: Matrix, b: Matrix) -> Matrix:
    """A solution x of x a = b."""
    return solve(a.T, b.T).T


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    x = solve(m, Matrix.identity(m.rows))
    if m.rank() != m.rows:
        raise NoSolution("matrix is singular")
    return x


def is_invertible(m: Matrix) -> bool:
    return m.is_square() and m.rank() == m.rows


def in_span(vectors: Sequence[Sequence], target: Sequence) -> bool:
    """Whether ``target`` is a linear combination of ``vectors``."""
    n = len(target)
    if not vectors:
        return all(x == 0 for x in target)
    a = Matrix.from_cols(vectors, n)
    return try_solve(a, Matrix.from_cols([target], n)) is not None


def span_rank(vectors: Sequence[Sequence], n: int) -> int:
    if not vectors:
        return 0
    return Matrix.from_rows(vectors, n).rank()


def pullback(f: Matrix, g: Matrix) -> tuple[Matrix, Matrix]:
    """Maps p: X -> A, q: X -> B with f p = g q, X = ker [f | -g]."""
    if f.rows != g.rows:
        raise DimensionMismatch("pullback needs a common codomain")
    k = kernel_basis(hstack([f, -g]))
    return k.submatrix(range(f.cols), range(k.cols)), k.submatrix(range(f.cols, f.cols + g.cols), range(k.cols))


def pushout(f: Matrix, g: Matrix) -> tuple[Matrix, Matrix]:
    """Maps i: A -> Y, j: B -> Y with i f = j g, Y = coker [f ; -g]."""
    if f.cols != g.cols:
        raise DimensionMismatch("pushout needs a common domain")
    c = left_kernel_basis(vstack([f, -g]))
    return c.submatrix(range(c.rows), range(f.rows)), c.submatrix(range(c.rows), range(f.rows, f.rows + g.rows))

"""Exact rational linear algebra on small dense matrices.

Scalars are :class:`fractions.Fraction`, which already keeps values in
lowest terms with a positive denominator.  Vectors are tuples of
fractions.  A :class:`Matrix` is immutable and stores its entries row-major;
as a linear map, column ``j`` is the image of the ``j``-th source basis
vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError

ZERO = Fraction(0)
ONE = Fraction(1)

Vector = tuple  # tuple[Fraction, ...]


def to_scalar(x) -> Fraction:
    """Coerce ints, fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {x!r} as an exact scalar")


def vec(values: Iterable) -> Vector:
    return tuple(to_scalar(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def basis_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Vector) -> Vector:
    c = to_scalar(c)
    return tuple(c * a for a in u)


def is_zero(u: Vector) -> bool:
    return not any(u)


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError(
                f"matrix entries do not match declared shape {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        data = tuple(vec(r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> Matrix:
        cols = [vec(c) for c in columns]
        if rows is None:
            rows = len(cols[0]) if cols else 0
        return cls(rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int, c=1) -> Matrix:
        c = to_scalar(c)
        return cls(n, n, tuple(tuple(c if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence) -> Matrix:
        d = vec(values)
        n = len(d)
        return cls(n, n, tuple(tuple(d[i] if i == j else ZERO for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> Matrix:
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                      tuple(() for _ in range(self.cols)))

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for a {self.rows}x{self.cols} matrix")
        return tuple(sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in self.entries)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        cols = [self.apply(other.column(j)) for j in range(other.cols)]
        return Matrix.from_columns(cols, rows=self.rows)

    def __add__(self, other: Matrix) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(add(r, s) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(sub(r, s) for r, s in zip(self.entries, other.entries)))

    def scaled(self, c) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(scale(c, r) for r in self.entries))

    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(c) for c in r) for r in self.entries)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def block_diagonal(a: Matrix, b: Matrix) -> Matrix:
    rows = [r + (ZERO,) * b.cols for r in a.entries]
    rows += [(ZERO,) * a.cols + r for r in b.entries]
    return Matrix(a.rows + b.rows, a.cols + b.cols, tuple(rows))


def _rref_rows(rows: list, ncols: int) -> tuple[list, list]:
    """Gauss-Jordan elimination; returns (nonzero reduced rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form; zero rows are kept at the bottom so the shape is unchanged."""
    reduced, _ = _rref_rows(list(m.entries), m.cols)
    reduced += [(ZERO,) * m.cols] * (m.rows - len(reduced))
    return Matrix(m.rows, m.cols, tuple(reduced))


def rank(m: Matrix) -> int:
    return len(_rref_rows(list(m.entries), m.cols)[1])


@dataclass(frozen=True)
class Subspace:
    """A subspace of K^n, stored as the RREF of a spanning set (so equality is canonical)."""

    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        rows = [vec(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in a subspace of K^{ambient_dim}")
        reduced, _ = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, Matrix(len(reduced), ambient_dim, tuple(reduced)))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, Matrix(0, n, ()))

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, Matrix.identity(n))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def vectors(self) -> list:
        return list(self.basis.entries)

    @property
    def pivots(self) -> list:
        return [next(j for j, x in enumerate(row) if x != 0) for row in self.basis.entries]

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the RREF basis; raises ValueError if ``v`` is not in the span."""
        v = vec(v)
        coords = tuple(v[p] for p in self.pivots)
        recon = zero_vector(self.ambient_dim)
        for c, row in zip(coords, self.basis.entries):
            if c:
                recon = add(recon, scale(c, row))
        if recon != v:
            raise ValueError("vector is not in the subspace")
        return coords

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __le__(self, other: Subspace) -> bool:
        return all(contains(other, v) for v in self.vectors)


def kernel(m: Matrix) -> Subspace:
    reduced, pivots = _rref_rows(list(m.entries), m.cols)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return Subspace.span(basis, m.cols)


def image(m: Matrix) -> Subspace:
    return Subspace.span(m.columns(), m.rows)


def contains(s: Subspace, v: Sequence) -> bool:
    if len(v) != s.ambient_dim:
        raise DimensionError(f"vector of length {len(v)} tested against a subspace of K^{s.ambient_dim}")
    try:
        s.coordinates(v)
    except ValueError:
        return False
    return True


def complement_basis(s: Subspace) -> Matrix:
    """Standard basis vectors on the non-pivot columns of ``s``; together with ``s`` they span K^n."""
    piv = set(s.pivots)
    rows = [basis_vector(s.ambient_dim, j) for j in range(s.ambient_dim) if j not in piv]
    return Matrix(len(rows), s.ambient_dim, tuple(rows))


def sum_of(*spaces: Subspace) -> Subspace:
    n = spaces[0].ambient_dim
    return Subspace.span([v for s in spaces for v in s.vectors], n)


def stack(mats: Sequence[Matrix], cols: int) -> Matrix:
    rows = tuple(r for m in mats for r in m.entries)
    return Matrix(len(rows), cols, rows)


def solve_in_basis(vectors: Sequence[Vector], target: Vector) -> Vector | None:
    """Coefficients expressing ``target`` in the (independent) ``vectors``, or None."""
    n = len(vectors)
    aug = Matrix.from_columns(list(vectors) + [target], rows=len(target))
    reduced, pivots = _rref_rows(list(aug.entries), n + 1)
    if n in pivots:
        return None
    coeffs = [ZERO] * n
    for row, p in zip(reduced, pivots):
        coeffs[p] = row[n]
    return tuple(coeffs)

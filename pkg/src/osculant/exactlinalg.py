"""Exact rational matrices: row reduction, rank, and subspaces in canonical form."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple  # of Fraction


class DimensionError(ValueError):
    pass


def _vec(v: Iterable) -> Vector:
    return tuple(Fraction(x) for x in v)


class QMatrix:
    """Immutable row-major matrix of Fractions."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        self.rows = tuple(_vec(r) for r in rows)
        if ncols is None:
            if not self.rows:
                raise DimensionError("column count required for an empty matrix")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise DimensionError(f"ragged row of length {len(r)}, expected {ncols}")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"QMatrix([{body}])"

    def transpose(self) -> "QMatrix":
        return QMatrix(zip(*self.rows), ncols=self.nrows) if self.rows else QMatrix([], 0)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return QMatrix(
            [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows],
            ncols=other.ncols,
        )

    def stack(self, other: "QMatrix | Sequence") -> "QMatrix":
        extra = other.rows if isinstance(other, QMatrix) else (_vec(other),)
        return QMatrix(self.rows + tuple(extra), ncols=self.ncols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)


def _primitive(row: list[Fraction]) -> list[Fraction]:
    # scale to a primitive integer row; keeps entry size down during elimination
    den = 1
    for x in row:
        if x:
            den = lcm(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return [Fraction(x) for x in ints]


def _reduce(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    work = [_primitive(list(r)) for r in rows if any(r)]
    pivot_row = 0
    for c in range(ncols):
        if pivot_row == len(work):
            break
        sel = next((i for i in range(pivot_row, len(work)) if work[i][c]), None)
        if sel is None:
            continue
        work[pivot_row], work[sel] = work[sel], work[pivot_row]
        piv = work[pivot_row]
        inv = 1 / piv[c]
        piv = [x * inv for x in piv]
        work[pivot_row] = piv
        for i in range(len(work)):
            if i != pivot_row and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], piv)]
        pivot_row += 1
    return work[:pivot_row]


def rref(m: QMatrix) -> tuple[QMatrix, int]:
    """Reduced row-echelon form (zero rows dropped to the bottom) and rank."""
    reduced = _reduce(m.rows, m.ncols)
    rank = len(reduced)
    full = reduced + [[Fraction(0)] * m.ncols for _ in range(m.nrows - rank)]
    return QMatrix(full, ncols=m.ncols), rank


def rank(m: QMatrix | Sequence[Sequence]) -> int:
    if not isinstance(m, QMatrix):
        rows = [_vec(r) for r in m]
        if not rows:
            return 0
        m = QMatrix(rows)
    return len(_reduce(m.rows, m.ncols))


class Subspace:
    """Linear subspace of Q^ambient_dim held as its reduced row-echelon basis.

    Equality of subspaces is equality of canonical bases.
    """

    __slots__ = ("basis", "ambient_dim", "pivots")

    def __init__(self, basis: QMatrix, ambient_dim: int):
        self.basis = basis
        self.ambient_dim = ambient_dim
        self.pivots = tuple(next(j for j, x in enumerate(r) if x) for r in basis.rows)

    @classmethod
    def span(cls, vectors: Iterable[Iterable], ambient_dim: int) -> "Subspace":
        rows = [_vec(v) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionError(f"vector of length {len(r)} in ambient dimension {ambient_dim}")
        return cls(QMatrix(_reduce(rows, ambient_dim), ncols=ambient_dim), ambient_dim)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def projective_dim(self) -> int:
        return self.dim - 1

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return span_equal(self, other)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


def _check(s: Subspace, v: Vector):
    if len(v) != s.ambient_dim:
        raise DimensionError(f"vector of length {len(v)} vs ambient dimension {s.ambient_dim}")


def quotient_residual(s: Subspace, v: Iterable) -> Vector:
    """``v`` with every pivot coordinate of ``s`` eliminated; zero iff v is in s."""
    v = list(_vec(v))
    _check(s, v)
    for row, p in zip(s.basis.rows, s.pivots):
        f = v[p]
        if f:
            v = [a - f * b for a, b in zip(v, row)]
    return tuple(v)


def span_contains(s: Subspace, v: Iterable) -> bool:
    return not any(quotient_residual(s, v))


def span_equal(a: Subspace, b: Subspace) -> bool:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")
    return a.basis.rows == b.basis.rows

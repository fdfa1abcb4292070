"""Exact linear algebra over Q (default) or a prime field F_p.

Matrices are immutable row-major tables of field elements.  Subspaces are
stored by their reduced row-echelon basis, so two subspaces are equal iff
their ``basis`` tuples are equal.

Index convention for Kronecker products: the left factor is the most
significant index, ``kron(a, b)[i*rb + k][j*cb + l] = a[i][j] * b[k][l]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

try:
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover
    _rational = Fraction


class DimensionError(ValueError):
    """Ambient dimensions or matrix shapes do not match."""


class ContainmentError(ValueError):
    """A subspace expected to lie inside another does not."""


@total_ordering
class ModP:
    """Element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if hasattr(other, "denominator"):  # Fraction, gmpy2 mpz/mpq
            num, den = int(other.numerator), int(other.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"{other} has no image in F_{self.p}")
            return num * pow(den, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else self.v == o

    def __lt__(self, other):
        # Only for deterministic sorting; not a field order.
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else self.v < o

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class Field:
    """Coefficient field: ``characteristic == 0`` means Q, otherwise F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p < 0 or p == 1 or (p > 1 and any(p % d == 0 for d in range(2, int(p**0.5) + 1))):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")

    def __call__(self, value):
        if self.characteristic == 0:
            if isinstance(value, ModP):
                raise ValueError("cannot coerce an F_p element into Q")
            return _rational(value)
        if isinstance(value, ModP):
            if value.p != self.characteristic:
                raise ValueError(f"mixing F_{value.p} and F_{self.characteristic}")
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        e = ModP(0, self.characteristic)
        return e + value

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __str__(self):
        return "rational" if self.characteristic == 0 else f"prime {self.characteristic}"


QQ = Field(0)


def to_fraction(x) -> Fraction:
    """Rational field element as a stdlib ``Fraction``."""
    return Fraction(int(x.numerator), int(x.denominator))


def format_scalar(x) -> str:
    """``p/q`` text form; ``q`` omitted when 1.  F_p elements print as residues."""
    if isinstance(x, ModP):
        return str(x)
    x = to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over a :class:`Field`."""

    nrows: int
    ncols: int
    data: tuple[tuple, ...]
    field: Field = QQ

    def __post_init__(self):
        if len(self.data) != self.nrows or any(len(r) != self.ncols for r in self.data):
            raise DimensionError(f"data does not have shape {self.nrows}x{self.ncols}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], ncols: int | None = None, field: Field = QQ) -> Matrix:
        data = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise DimensionError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        return cls(len(data), ncols, data, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> Matrix:
        one, zero = field.one, field.zero
        return cls(n, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), field)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> Matrix:
        z = field.zero
        return cls(nrows, ncols, tuple((z,) * ncols for _ in range(nrows)), field)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def transpose(self) -> Matrix:
        return Matrix(self.ncols, self.nrows, tuple(zip(*self.data)) if self.nrows else
                      tuple(() for _ in range(self.ncols)), self.field)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.field.zero
        cols = other.transpose().data
        out = []
        for row in self.data:
            nz = [(k, x) for k, x in enumerate(row) if x]
            out.append(tuple(sum((x * col[k] for k, x in nz), zero) for col in cols))
        return Matrix(self.nrows, other.ncols, tuple(out), self.field)

    def __sub__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix(self.nrows, self.ncols,
                      tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.data, other.data)),
                      self.field)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {other.shape} to {self.shape}")
        return Matrix(self.nrows, self.ncols,
                      tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.data, other.data)),
                      self.field)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        zero = self.field.zero
        nz = [(k, x) for k, x in enumerate(v) if x]
        return tuple(sum((row[k] * x for k, x in nz), zero) for row in self.data)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and all(
            self.data[i][j] == (1 if i == j else 0) for i in range(self.nrows) for j in range(self.ncols))

    def trace(self):
        if self.nrows != self.ncols:
            raise DimensionError("trace of a non-square matrix")
        return sum((self.data[i][i] for i in range(self.nrows)), self.field.zero)

    def rank(self) -> int:
        return rref(self)[2]

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def vstack(self, other: Matrix) -> Matrix:
        if self.ncols != other.ncols:
            raise DimensionError("vstack needs equal column counts")
        return Matrix(self.nrows + other.nrows, self.ncols, self.data + other.data, self.field)

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self.data)
        return f"Matrix({self.nrows}x{self.ncols}, [{body}])"


def _rref_rows(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan on a list of row lists.  Returns nonzero rows and pivots."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        prow = [x * inv for x in rows[r]]
        rows[r] = prow
        support = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for k in support:
                        row[k] = row[k] - f * prow[k]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row-echelon form of ``m``.

    Returns ``(reduced, pivots, rank)``; ``reduced`` keeps the shape of ``m``
    with the zero rows at the bottom.
    """
    rows, pivots = _rref_rows([list(r) for r in m.data], m.ncols)
    zero = m.field.zero
    data = tuple(tuple(r) for r in rows) + tuple((zero,) * m.ncols for _ in range(m.nrows - len(rows)))
    return Matrix(m.nrows, m.ncols, data, m.field), pivots, len(pivots)


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``field^ambient_dim`` held by its canonical RREF basis."""

    ambient_dim: int
    basis: tuple[tuple, ...]
    pivots: tuple[int, ...]
    field: Field = QQ

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int, field: Field = QQ) -> Subspace:
        rows = [[field(x) for x in v] for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionError(f"vector of length {len(r)} in ambient dimension {ambient_dim}")
        reduced, pivots = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in reduced), tuple(pivots), field)

    @classmethod
    def zero(cls, ambient_dim: int, field: Field = QQ) -> Subspace:
        return cls(ambient_dim, (), (), field)

    @classmethod
    def full(cls, ambient_dim: int, field: Field = QQ) -> Subspace:
        eye = Matrix.identity(ambient_dim, field)
        return cls(ambient_dim, eye.data, tuple(range(ambient_dim)), field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        return Matrix(self.dim, self.ambient_dim, self.basis, self.field)

    def reduce(self, v: Sequence) -> list:
        """Remainder of ``v`` after elimination against the basis."""
        w = list(v)
        for row, c in zip(self.basis, self.pivots):
            f = w[c]
            if f:
                for k in range(c, self.ambient_dim):
                    if row[k]:
                        w[k] = w[k] - f * row[k]
        return w

    def contains_vector(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        return not any(self.reduce(v))

    def contains(self, other: Subspace) -> bool:
        _check_ambient(self, other)
        return all(self.contains_vector(v) for v in other.basis)

    def __le__(self, other: Subspace) -> bool:
        return other.contains(self)


def _check_ambient(s1: Subspace, s2: Subspace) -> None:
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {s1.ambient_dim} vs {s2.ambient_dim}")


def kernel(m: Matrix) -> Subspace:
    """Right null space ``{v : m v = 0}`` as a subspace of ``field^m.ncols``."""
    rows, pivots = _rref_rows([list(r) for r in m.data], m.ncols)
    F = m.field
    pivset = set(pivots)
    vectors = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = [F.zero] * m.ncols
        v[free] = F.one
        for row, c in zip(rows, pivots):
            v[c] = -row[free]
        vectors.append(v)
    return Subspace.span(vectors, m.ncols, F)


def subspace_sum(s1: Subspace, s2: Subspace) -> Subspace:
    _check_ambient(s1, s2)
    return Subspace.span(s1.basis + s2.basis, s1.ambient_dim, s1.field)


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    """``s1 ∩ s2`` via the kernel of ``[B1^T | -B2^T]``."""
    _check_ambient(s1, s2)
    if not s1.dim or not s2.dim:
        return Subspace.zero(s1.ambient_dim, s1.field)
    r1 = s1.dim
    cols = list(s1.basis) + [tuple(-x for x in v) for v in s2.basis]
    stacked = Matrix(len(cols), s1.ambient_dim, tuple(cols), s1.field).transpose()
    coeffs = kernel(stacked)
    F = s1.field
    vectors = []
    for c in coeffs.basis:
        v = [F.zero] * s1.ambient_dim
        for a, row in zip(c[:r1], s1.basis):
            if a:
                v = [x + a * y for x, y in zip(v, row)]
        vectors.append(v)
    return Subspace.span(vectors, s1.ambient_dim, F)


def complement_within(inner: Subspace, outer: Subspace) -> Subspace:
    """Deterministic complement of ``inner`` inside ``outer``.

    Walks the RREF basis of ``outer`` in order and keeps each vector that is
    independent of ``inner`` plus the vectors kept so far.
    """
    _check_ambient(inner, outer)
    if not outer.contains(inner):
        raise ContainmentError("inner subspace is not contained in outer")
    running = inner
    kept = []
    for v in outer.basis:
        if running.dim == outer.dim:
            break
        if not running.contains_vector(v):
            kept.append(v)
            running = Subspace.span(running.basis + (v,), outer.ambient_dim, outer.field)
    return Subspace.span(kept, outer.ambient_dim, outer.field)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product, left factor most significant."""
    data = tuple(
        tuple(x * y for x in ra for y in rb)
        for ra in a.data for rb in b.data
    )
    return Matrix(a.nrows * b.nrows, a.ncols * b.ncols, data, a.field)


def kron_vec(u: Sequence, v: Sequence) -> tuple:
    return tuple(x * y for x in u for y in v)

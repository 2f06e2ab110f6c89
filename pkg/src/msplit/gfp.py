"""Exact arithmetic and linear algebra over the prime field GF(p).

Every value is stored as a canonical residue in ``[0, p)``.  Matrices are
small (the enumeration layers above are exponential in the column count),
so everything here is plain Python on tuples of ints.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatch, NotPrime, SizeCapExceeded, ZeroInverse

MAX_ROWS = 16
DEFAULT_MAX_ELEMENTS = 20


def max_elements() -> int:
    """Ground-set size cap, overridable through ``MSPLIT_MAX_ELEMENTS``."""
    raw = os.environ.get("MSPLIT_MAX_ELEMENTS")
    if raw is None:
        return DEFAULT_MAX_ELEMENTS
    try:
        value = int(raw)
    except ValueError:
        raise SizeCapExceeded(f"MSPLIT_MAX_ELEMENTS must be an integer, got {raw!r}") from None
    if value < 1:
        raise SizeCapExceeded("MSPLIT_MAX_ELEMENTS must be positive")
    return value


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise NotPrime(f"modulus must be an integer, got {self.p!r}")
        if not is_prime(self.p):
            raise NotPrime(f"modulus {self.p} is not prime")

    def __int__(self) -> int:
        return self.p


def _modulus(p: int | PrimeModulus) -> PrimeModulus:
    return p if isinstance(p, PrimeModulus) else PrimeModulus(p)


@dataclass(frozen=True)
class FieldElement:
    value: int
    modulus: PrimeModulus

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus.p)

    @classmethod
    def of(cls, value: int, p: int | PrimeModulus) -> FieldElement:
        return cls(value, _modulus(p))

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise DimensionMismatch("field elements over different moduli")
            return other.value
        return int(other)

    def __add__(self, other):
        return FieldElement(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return FieldElement(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value


def inv(a: int, p: int) -> int:
    """Inverse of a residue modulo the prime ``p``."""
    a %= p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse modulo {p}")
    return pow(a, p - 2, p)


def fe_inv(x: FieldElement) -> FieldElement:
    return FieldElement(inv(x.value, x.modulus.p), x.modulus)


class FieldVector:
    """An immutable vector of canonical residues."""

    __slots__ = ("modulus", "entries")

    def __init__(self, p: int | PrimeModulus, entries: Iterable[int]):
        modulus = _modulus(p)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "entries", tuple(int(e) % modulus.p for e in entries))

    def __setattr__(self, name, value):
        raise AttributeError("FieldVector is immutable")

    @property
    def p(self) -> int:
        return self.modulus.p

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def element(self, i: int) -> FieldElement:
        return FieldElement(self.entries[i], self.modulus)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldVector):
            return NotImplemented
        return self.modulus == other.modulus and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.modulus.p, self.entries))

    def __repr__(self) -> str:
        return f"FieldVector(p={self.p}, {list(self.entries)})"

    def scaled(self, c: int) -> FieldVector:
        return FieldVector(self.modulus, (c * e for e in self.entries))

    def normalized(self) -> FieldVector:
        """Scale so the first nonzero entry is 1."""
        for e in self.entries:
            if e:
                return self.scaled(inv(e, self.p))
        return self

    def is_zero(self) -> bool:
        return not any(self.entries)


class FieldMatrix:
    """An immutable dense matrix over GF(p), stored row-major."""

    __slots__ = ("modulus", "rows")

    def __init__(self, p: int | PrimeModulus, rows: Iterable[Iterable[int]]):
        modulus = _modulus(p)
        q = modulus.p
        grid = tuple(tuple(int(e) % q for e in row) for row in rows)
        if not grid or not grid[0]:
            raise DimensionMismatch("a matrix needs at least one row and one column")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise DimensionMismatch("ragged matrix rows")
        if len(grid) > MAX_ROWS:
            raise SizeCapExceeded(f"{len(grid)} rows exceeds the cap of {MAX_ROWS}")
        # one spare column so the element-splitting column fits on a full-size matroid
        if width > max_elements() + 1:
            raise SizeCapExceeded(f"{width} columns exceeds the cap of {max_elements()}")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "rows", grid)

    def __setattr__(self, name, value):
        raise AttributeError("FieldMatrix is immutable")

    @classmethod
    def from_columns(cls, p: int | PrimeModulus, columns: Sequence[Sequence[int]]) -> FieldMatrix:
        if not columns:
            raise DimensionMismatch("a matrix needs at least one column")
        height = len(columns[0])
        if any(len(c) != height for c in columns):
            raise DimensionMismatch("columns have different lengths")
        return cls(p, zip(*columns))

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.rows[i][j], self.modulus)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(c) for c in zip(*self.rows)]

    def submatrix(self, cols: Sequence[int]) -> FieldMatrix:
        return FieldMatrix(self.modulus, ([row[j] for j in cols] for row in self.rows))

    def with_row(self, row: Sequence[int]) -> FieldMatrix:
        if len(row) != self.ncols:
            raise DimensionMismatch(f"row of length {len(row)} for {self.ncols} columns")
        return FieldMatrix(self.modulus, self.rows + (tuple(row),))

    def with_column(self, col: Sequence[int]) -> FieldMatrix:
        if len(col) != self.nrows:
            raise DimensionMismatch(f"column of length {len(col)} for {self.nrows} rows")
        return FieldMatrix(self.modulus, (row + (c,) for row, c in zip(self.rows, col)))

    def apply(self, v: FieldVector | Sequence[int]) -> FieldVector:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.ncols} columns")
        q = self.p
        return FieldVector(self.modulus, (sum(a * b for a, b in zip(row, v)) % q for row in self.rows))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.modulus == other.modulus and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.p, self.rows))

    def __repr__(self) -> str:
        return f"FieldMatrix(p={self.p}, {self.tolist()})"


class Rref(NamedTuple):
    reduced: FieldMatrix
    pivot_cols: list[int]
    rank: int


def _rref_rows(rows: Sequence[Sequence[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        scale = inv(m[r][c], p)
        prow = [(x * scale) % p for x in m[r]]
        m[r] = prow
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], prow)]
        pivots.append(c)
        r += 1
    return m, pivots


def rref(m: FieldMatrix) -> Rref:
    """Reduced row-echelon form, pivot columns and rank."""
    rows, pivots = _rref_rows(m.rows, m.ncols, m.p)
    return Rref(FieldMatrix(m.modulus, rows), pivots, len(pivots))


def rank(m: FieldMatrix) -> int:
    return len(_rref_rows(m.rows, m.ncols, m.p)[1])


def kernel_basis(m: FieldMatrix) -> list[FieldVector]:
    """Basis of the right null space, one vector per free column.

    Each vector has a 1 in its free column, 0 in the other free columns,
    and the pivot entries forced by the reduced rows.
    """
    p = m.p
    rows, pivots = _rref_rows(m.rows, m.ncols, p)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        x = [0] * m.ncols
        x[f] = 1
        for i, c in enumerate(pivots):
            x[c] = (-rows[i][f]) % p
        basis.append(FieldVector(m.modulus, x))
    return basis


def row_space_contains(m: FieldMatrix, v: FieldVector | Sequence[int]) -> bool:
    if len(v) != m.ncols:
        raise DimensionMismatch(f"vector of length {len(v)} for {m.ncols} columns")
    p = m.p
    before = len(_rref_rows(m.rows, m.ncols, p)[1])
    after = len(_rref_rows(m.rows + (tuple(int(x) % p for x in v),), m.ncols, p)[1])
    return before == after


def subset_ranks(m: FieldMatrix) -> list[int]:
    """Rank of every column subset, indexed by bitmask over column order.

    Built incrementally: the subset ``mask`` extends ``mask`` minus its lowest
    column, whose echelon basis is reduced against once.
    """
    p = m.p
    n = m.ncols
    cols = m.columns()
    size = 1 << n
    ranks = [0] * size
    # echelon bases as tuples of (pivot index, vector with 1 at pivot)
    bases: list[tuple] = [()] * size
    for mask in range(1, size):
        low = mask & -mask
        j = low.bit_length() - 1
        prev = mask ^ low
        basis = bases[prev]
        v = list(cols[j])
        for piv, b in basis:
            f = v[piv]
            if f:
                v = [(x - f * y) % p for x, y in zip(v, b)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            bases[mask] = basis
            ranks[mask] = ranks[prev]
        else:
            s = inv(v[piv], p)
            bases[mask] = basis + ((piv, tuple((x * s) % p for x in v)),)
            ranks[mask] = ranks[prev] + 1
    return ranks

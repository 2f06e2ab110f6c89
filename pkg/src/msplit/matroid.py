"""Matroids represented by a matrix over GF(p).

All queries are exhaustive over column subsets; subsets are bitmasks over
the column order internally and :class:`GroundSubset` at the API surface.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from . import gfp
from .errors import (
    ColoopPresent,
    DimensionMismatch,
    ForeignSubset,
    LabelCollision,
    LoopPresent,
    NotACircuit,
    SizeCapExceeded,
)
from .gfp import FieldMatrix, FieldVector, PrimeModulus


def bits_of(mask: int) -> list[int]:
    """Column indices set in ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def order_key(mask: int) -> tuple[int, list[int]]:
    """Sort key: size first, then lexicographic on column indices."""
    return (mask.bit_count(), bits_of(mask))


@dataclass(frozen=True)
class GroundSubset:
    bits: int
    ground: tuple[str, ...]

    @classmethod
    def from_labels(cls, ground: Sequence[str], labels: Iterable[str]) -> GroundSubset:
        ground = tuple(ground)
        index = {lab: i for i, lab in enumerate(ground)}
        bits = 0
        for lab in labels:
            if lab not in index:
                raise ForeignSubset(f"{lab!r} is not a ground element")
            bits |= 1 << index[lab]
        return cls(bits, ground)

    @property
    def indices(self) -> list[int]:
        return bits_of(self.bits)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.ground[i] for i in bits_of(self.bits))

    def as_set(self) -> frozenset[str]:
        return frozenset(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, label: str) -> bool:
        try:
            return bool(self.bits >> self.ground.index(label) & 1)
        except ValueError:
            return False

    def __repr__(self) -> str:
        return "{" + ",".join(self.labels) + "}"

    def issubset(self, other: GroundSubset) -> bool:
        return self.bits & ~other.bits == 0


@dataclass(frozen=True)
class Circuit:
    members: GroundSubset
    coeffs: FieldVector

    @property
    def bits(self) -> int:
        return self.members.bits

    def coefficient(self, label: str) -> int:
        return self.coeffs[self.members.labels.index(label)]


@dataclass(frozen=True)
class Basis:
    members: GroundSubset


class Matroid:
    """The vector matroid of a matrix over GF(p), one label per column.

    User-built matroids must be loopless and coloopless.  Pass
    ``derived=True`` for internally constructed matroids (duals, splits),
    which skips those two checks.
    """

    def __init__(self, matrix: FieldMatrix, ground: Sequence[str], *, derived: bool = False):
        ground = tuple(str(g) for g in ground)
        if len(ground) != matrix.ncols:
            raise DimensionMismatch(f"{len(ground)} labels for {matrix.ncols} columns")
        if len(set(ground)) != len(ground):
            raise LabelCollision("ground labels must be distinct")
        if len(ground) > gfp.max_elements() + (1 if derived else 0):
            raise SizeCapExceeded(f"{len(ground)} elements exceeds the cap of {gfp.max_elements()}")
        self.matrix = matrix
        self.ground = ground
        self.derived = derived
        self._separation_cache: dict[tuple[int, bool], int | None] = {}
        if not derived:
            for j, label in enumerate(ground):
                if not any(matrix.column(j)):
                    raise LoopPresent(label)
            full = self.full_mask
            r = self.rank
            for j, label in enumerate(ground):
                if self._ranks[full ^ (1 << j)] < r:
                    raise ColoopPresent(label)

    def __repr__(self) -> str:
        return f"Matroid(p={self.p}, ground={list(self.ground)}, rank={self.rank})"

    @property
    def modulus(self) -> PrimeModulus:
        return self.matrix.modulus

    @property
    def p(self) -> int:
        return self.matrix.p

    @property
    def size(self) -> int:
        return len(self.ground)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.ground)) - 1

    @cached_property
    def _ranks(self) -> list[int]:
        return gfp.subset_ranks(self.matrix)

    @property
    def rank(self) -> int:
        return self._ranks[self.full_mask]

    # subsets

    def subset(self, labels: Iterable[str] | GroundSubset | int) -> GroundSubset:
        if isinstance(labels, GroundSubset):
            if labels.ground != self.ground:
                raise ForeignSubset(f"subset {labels!r} belongs to a different ground set")
            return labels
        if isinstance(labels, int):
            if labels < 0 or labels > self.full_mask:
                raise ForeignSubset(f"bitmask {labels} out of range")
            return GroundSubset(labels, self.ground)
        if isinstance(labels, str):
            labels = [labels]
        return GroundSubset.from_labels(self.ground, labels)

    def _mask(self, S) -> int:
        return self.subset(S).bits

    def _gs(self, mask: int) -> GroundSubset:
        return GroundSubset(mask, self.ground)

    # rank oracle

    def rank_of(self, S) -> int:
        return self._ranks[self._mask(S)]

    def is_independent(self, S) -> bool:
        m = self._mask(S)
        return self._ranks[m] == m.bit_count()

    # circuits and bases

    @cached_property
    def _circuit_masks(self) -> tuple[int, ...]:
        ranks = self._ranks
        found: list[int] = []
        for k in range(1, self.size + 1):
            for combo in combinations(range(self.size), k):
                m = mask_of(combo)
                if any(c & m == c for c in found):
                    continue
                # no recorded circuit inside, so every proper subset is independent
                if ranks[m] < k:
                    found.append(m)
        return tuple(found)

    def _coefficients(self, mask: int) -> FieldVector:
        cols = bits_of(mask)
        kernel = gfp.kernel_basis(self.matrix.submatrix(cols))
        if len(kernel) != 1 or not all(kernel[0]):
            raise NotACircuit(f"{self._gs(mask)!r} is not a circuit")
        return kernel[0].normalized()

    @cached_property
    def _circuits(self) -> tuple[Circuit, ...]:
        return tuple(Circuit(self._gs(m), self._coefficients(m)) for m in self._circuit_masks)

    def circuits(self) -> list[Circuit]:
        """Every circuit with its normalized dependency, by size then column order."""
        return list(self._circuits)

    def circuit_coefficients(self, C) -> FieldVector:
        return self._coefficients(self._mask(C))

    @cached_property
    def _basis_masks(self) -> tuple[int, ...]:
        r = self.rank
        ranks = self._ranks
        out = []
        for combo in combinations(range(self.size), r):
            m = mask_of(combo)
            if ranks[m] == r:
                out.append(m)
        return tuple(out)

    def bases(self) -> list[Basis]:
        return [Basis(self._gs(m)) for m in self._basis_masks]

    def girth(self) -> int | None:
        """Size of a smallest circuit, or None for a free matroid."""
        masks = self._circuit_masks
        return masks[0].bit_count() if masks else None

    # duality

    @cached_property
    def _dual(self) -> Matroid:
        red = gfp.rref(self.matrix)
        p = self.p
        pivots = red.pivot_cols
        free = [j for j in range(self.size) if j not in set(pivots)]
        rows = []
        for j in free:
            row = [0] * self.size
            row[j] = 1
            for i, c in enumerate(pivots):
                row[c] = (-red.reduced.rows[i][j]) % p
            rows.append(row)
        if not rows:
            # the dual of a free matroid is all loops
            rows = [[0] * self.size]
        return Matroid(FieldMatrix(self.modulus, rows), self.ground, derived=True)

    def dual(self) -> Matroid:
        """Dual matroid from the standard form [I | D] -> [-D^T | I]."""
        return self._dual

    @cached_property
    def _cocircuit_masks(self) -> frozenset[int]:
        return frozenset(self._dual._circuit_masks)

    def is_cocircuit(self, T) -> bool:
        return self._mask(T) in self._cocircuit_masks

    # connectivity

    def _separations(self, k: int, vertical: bool) -> Iterator[int]:
        n = self.size
        ranks = self._ranks
        full = self.full_mask
        r = self.rank
        # every partition once: X holds element 0, Y nonempty
        for size in range(1, n):
            for rest in combinations(range(1, n), size - 1):
                x = 1 | mask_of(rest)
                y = full ^ x
                rx, ry = ranks[x], ranks[y]
                if vertical:
                    if min(rx, ry) < k:
                        continue
                elif min(size, n - size) < k:
                    continue
                if rx + ry - r <= k - 1:
                    yield x

    def _first_separation(self, k: int, vertical: bool) -> int | None:
        key = (k, vertical)
        if key not in self._separation_cache:
            self._separation_cache[key] = next(self._separations(k, vertical), None)
        return self._separation_cache[key]

    def connectivity_separation(self, k: int) -> tuple[GroundSubset, GroundSubset] | None:
        """Some k-separation (X, Y), or None when there is none."""
        if k < 1:
            raise ValueError("k must be at least 1")
        x = self._first_separation(k, False)
        if x is None:
            return None
        return self._gs(x), self._gs(self.full_mask ^ x)

    def vertical_separation(self, k: int) -> tuple[GroundSubset, GroundSubset] | None:
        if k < 1:
            raise ValueError("k must be at least 1")
        x = self._first_separation(k, True)
        if x is None:
            return None
        return self._gs(x), self._gs(self.full_mask ^ x)

    def is_n_connected(self, n: int) -> bool:
        if n < 1:
            raise ValueError("n must be at least 1")
        return all(self._first_separation(k, False) is None for k in range(1, n))

    def is_connected(self) -> bool:
        return self.is_n_connected(2)

    def is_vertically_n_connected(self, n: int) -> bool:
        if n < 1:
            raise ValueError("n must be at least 1")
        return all(self._first_separation(k, True) is None for k in range(1, n))

    # circuit decompositions

    def _decompositions(self) -> Iterator[list[int]]:
        circuits = self._circuit_masks
        full = self.full_mask
        containing: dict[int, list[int]] = {}
        for c in circuits:
            for j in bits_of(c):
                containing.setdefault(j, []).append(c)

        chosen: list[int] = []

        def search(covered: int) -> Iterator[list[int]]:
            if covered == full:
                yield list(chosen)
                return
            free = full ^ covered
            j = (free & -free).bit_length() - 1
            for c in containing.get(j, ()):
                if c & covered:
                    continue
                chosen.append(c)
                yield from search(covered | c)
                chosen.pop()

        yield from search(0)

    def _as_circuits(self, masks: list[int]) -> list[Circuit]:
        lookup = {c.bits: c for c in self._circuits}
        return [lookup[m] for m in masks]

    def eulerian_decomposition(self) -> list[Circuit] | None:
        """A partition of the ground set into circuits, or None."""
        first = next(self._decompositions(), None)
        return None if first is None else self._as_circuits(first)

    def all_eulerian_decompositions(self) -> list[list[Circuit]]:
        return [self._as_circuits(d) for d in self._decompositions()]

    def is_eulerian(self) -> bool:
        return next(self._decompositions(), None) is not None


def from_matrix(p: int | PrimeModulus, matrix: FieldMatrix | Sequence[Sequence[int]], labels: Sequence[str]) -> Matroid:
    """Validated matroid from a row-major matrix and one label per column."""
    if not isinstance(matrix, FieldMatrix):
        matrix = FieldMatrix(p, matrix)
    elif int(matrix.p) != int(p):
        raise DimensionMismatch(f"matrix is over GF({matrix.p}), not GF({int(p)})")
    return Matroid(matrix, labels)


def from_columns(p: int | PrimeModulus, columns: Sequence[Sequence[int]], labels: Sequence[str]) -> Matroid:
    return Matroid(FieldMatrix.from_columns(p, columns), labels)

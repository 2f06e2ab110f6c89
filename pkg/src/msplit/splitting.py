"""Generalized splitting and element splitting of GF(p)-represented matroids.

Given a matroid M with representation A and a split set T, the splitting
matroid M_T is represented by A with one extra row (1 on T, 0 elsewhere) and
the element splitting matroid M'_T additionally gets a column ``z`` that is 1
only in that new row.  :class:`SplitInstance` builds both and predicts their
circuits, bases and rank function from the circuits of M alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterator

from . import gfp
from .errors import EmptyT, FullT, NoNptCircuit, NotACircuit, NotEulerian
from .gfp import FieldElement, FieldMatrix, FieldVector
from .matroid import Circuit, GroundSubset, Matroid, bits_of, mask_of, order_key


class CircuitClass(str, enum.Enum):
    DISJOINT = "DISJOINT"
    PT = "PT"
    NPT = "NPT"


class PairMode(str, enum.Enum):
    C2_UNION = "C2-UNION"
    BOTH_PT = "BOTH-PT"


@dataclass(frozen=True)
class ClassifiedCircuit:
    circuit: Circuit
    klass: CircuitClass
    t_sum: FieldElement


@dataclass(frozen=True)
class PTPair:
    first: Circuit
    second: Circuit
    mode: PairMode


@dataclass(frozen=True)
class PTDecomposition:
    pairs: list[PTPair]
    singles: list[Circuit]

    def circuits(self) -> list[Circuit]:
        out = [c for pair in self.pairs for c in (pair.first, pair.second)]
        return out + list(self.singles)


@dataclass(frozen=True)
class NconnHypotheses:
    n: int
    n_connected: bool
    vertically_connected: bool
    size_ok: bool
    girth_ok: bool
    t_size_ok: bool

    @property
    def all_hold(self) -> bool:
        return (self.n_connected and self.vertically_connected and self.size_ok
                and self.girth_ok and self.t_size_ok)


def full_support_vector(m: FieldMatrix) -> FieldVector | None:
    """A kernel vector of ``m`` with no zero entry, first entry 1, if any.

    Scans the kernel projectively in a fixed order, so the result is
    deterministic.
    """
    basis = gfp.kernel_basis(m)
    if not basis:
        return None
    n = m.ncols
    if any(all(b[j] == 0 for b in basis) for j in range(n)):
        return None
    p = m.p
    k = len(basis)
    for lead in range(k):
        # coefficient vectors whose first nonzero entry (at ``lead``) is 1
        for tail in product(range(p), repeat=k - lead - 1):
            coeffs = (0,) * lead + (1,) + tail
            x = [sum(c * b[j] for c, b in zip(coeffs, basis)) % p for j in range(n)]
            if all(x):
                return FieldVector(m.modulus, x).normalized()
    return None


def _z_label(ground: tuple[str, ...]) -> str:
    label = "z"
    while label in ground:
        label += "'"
    return label


class SplitInstance:
    """A matroid M, a split set T, and the derived M_T and M'_T."""

    def __init__(self, base: Matroid, T):
        t = base.subset(T)
        if t.bits == 0:
            raise EmptyT("the split set T must be nonempty")
        if t.bits == base.full_mask:
            raise FullT("the split set T must be a proper subset of E")
        self.base = base
        self.T = t
        self.z_label = _z_label(base.ground)
        indicator = [1 if t.bits >> j & 1 else 0 for j in range(base.size)]
        split_matrix = base.matrix.with_row(indicator)
        esplit_matrix = split_matrix.with_column([0] * base.matrix.nrows + [1])
        self.split = Matroid(split_matrix, base.ground, derived=True)
        self.esplit = Matroid(esplit_matrix, base.ground + (self.z_label,), derived=True)

    def __repr__(self) -> str:
        return f"SplitInstance(p={self.base.p}, ground={list(self.base.ground)}, T={self.T!r})"

    @property
    def t_mask(self) -> int:
        return self.T.bits

    @property
    def z_bit(self) -> int:
        return 1 << self.base.size

    def _gs(self, mask: int) -> GroundSubset:
        return GroundSubset(mask, self.base.ground)

    def _egs(self, mask: int) -> GroundSubset:
        return GroundSubset(mask, self.esplit.ground)

    def _sorted(self, masks) -> list[int]:
        return sorted(set(masks), key=order_key)

    # triviality

    @cached_property
    def indicator(self) -> FieldVector:
        return FieldVector(self.base.modulus, (self.t_mask >> j & 1 for j in range(self.base.size)))

    def is_trivial_split(self) -> bool:
        """True when the indicator row of T already lies in the row space of A."""
        return gfp.row_space_contains(self.base.matrix, self.indicator)

    # classification

    def _classify(self, circuit: Circuit) -> ClassifiedCircuit:
        p = self.base.p
        t_sum = sum(circuit.coeffs[i] for i, j in enumerate(circuit.members.indices)
                    if self.t_mask >> j & 1) % p
        if circuit.bits & self.t_mask == 0:
            klass = CircuitClass.DISJOINT
        elif t_sum == 0:
            klass = CircuitClass.PT
        else:
            klass = CircuitClass.NPT
        return ClassifiedCircuit(circuit, klass, FieldElement(t_sum, self.base.modulus))

    @cached_property
    def classified(self) -> tuple[ClassifiedCircuit, ...]:
        return tuple(self._classify(c) for c in self.base.circuits())

    def classify_circuit(self, C: Circuit | GroundSubset) -> ClassifiedCircuit:
        mask = C.bits if isinstance(C, Circuit) else self.base.subset(C).bits
        for cc in self.classified:
            if cc.circuit.bits == mask:
                return cc
        raise NotACircuit(f"{self._gs(mask)!r} is not a circuit of M")

    def _masks_of(self, *classes: CircuitClass) -> tuple[int, ...]:
        return tuple(cc.circuit.bits for cc in self.classified if cc.klass in classes)

    @cached_property
    def _npt(self) -> tuple[int, ...]:
        return self._masks_of(CircuitClass.NPT)

    @cached_property
    def _pt(self) -> tuple[int, ...]:
        return self._masks_of(CircuitClass.PT)

    @cached_property
    def _c0(self) -> tuple[int, ...]:
        return self._masks_of(CircuitClass.PT, CircuitClass.DISJOINT)

    def npt_circuits(self) -> list[Circuit]:
        return [cc.circuit for cc in self.classified if cc.klass is CircuitClass.NPT]

    def c0(self) -> list[Circuit]:
        return [cc.circuit for cc in self.classified if cc.klass is not CircuitClass.NPT]

    # PT-dependent sets and the circuit families

    def _contains_any(self, mask: int, family) -> bool:
        return any(c & mask == c for c in family)

    def _pt_dependent_witness(self, mask: int) -> FieldVector | None:
        if mask & self.t_mask == 0 or self._contains_any(mask, self._c0):
            return None
        base = self.base
        # D must split as an NPT-circuit plus a disjoint independent set
        if not any(c & mask == c and base.is_independent(mask ^ c) for c in self._npt):
            return None
        sub = self.split.matrix.submatrix(bits_of(mask))
        return full_support_vector(sub)

    def is_pt_dependent(self, D) -> FieldVector | None:
        """Witness dependency (over D in column order) if D is PT-dependent."""
        return self._pt_dependent_witness(self.base.subset(D).bits)

    @cached_property
    def _c1(self) -> tuple[int, ...]:
        n = self.base.size
        split_ranks = self.split._ranks
        found: list[int] = []
        if not self._npt:
            return ()
        for k in range(2, n + 1):
            for combo in combinations(range(n), k):
                m = mask_of(combo)
                # a PT-dependent set is dependent in M_T
                if split_ranks[m] == k or self._contains_any(m, found):
                    continue
                if self._pt_dependent_witness(m) is not None:
                    found.append(m)
        return tuple(found)

    def c1(self) -> list[GroundSubset]:
        return [self._gs(m) for m in self._c1]

    @cached_property
    def _c2(self) -> tuple[int, ...]:
        c0, c1 = self._c0, self._c1
        unions = set()
        for a, b in combinations(self._npt, 2):
            if a & b:
                continue
            u = a | b
            if self._contains_any(u, c0) or self._contains_any(u, c1):
                continue
            unions.add(u)
        minimal = [u for u in unions if not any(v != u and v & u == v for v in unions)]
        return tuple(self._sorted(minimal))

    def c2(self) -> list[GroundSubset]:
        return [self._gs(m) for m in self._c2]

    @cached_property
    def _cz(self) -> tuple[int, ...]:
        return tuple(c | self.z_bit for c in self._npt)

    def cz(self) -> list[GroundSubset]:
        return [self._egs(m) for m in self._cz]

    @cached_property
    def _predicted_split(self) -> tuple[int, ...]:
        return tuple(self._sorted(self._c0 + self._c1 + self._c2))

    @cached_property
    def _predicted_esplit(self) -> tuple[int, ...]:
        return tuple(self._sorted(self._predicted_split + self._cz))

    def predicted_circuits_split(self) -> list[GroundSubset]:
        return [self._gs(m) for m in self._predicted_split]

    def predicted_circuits_esplit(self) -> list[GroundSubset]:
        return [self._egs(m) for m in self._predicted_esplit]

    # bases

    def _require_npt(self) -> None:
        if not self._npt:
            raise NoNptCircuit("M has no NPT-circuit for this T (trivial split)")

    @cached_property
    def _predicted_bases_split(self) -> tuple[int, ...]:
        self._require_npt()
        out = set()
        for b in self.base._basis_masks:
            for x in range(self.base.size):
                if b >> x & 1:
                    continue
                cand = b | 1 << x
                # C0 holds every circuit of M that survives in M_T, disjoint ones included
                if self._contains_any(cand, self._c0) or self._contains_any(cand, self._c1):
                    continue
                out.add(cand)
        return tuple(self._sorted(out))

    @cached_property
    def _predicted_bases_split_literal(self) -> tuple[int, ...]:
        self._require_npt()
        out = set()
        for b in self.base._basis_masks:
            for x in range(self.base.size):
                if b >> x & 1:
                    continue
                cand = b | 1 << x
                if self._contains_any(cand, self._pt) or self._contains_any(cand, self._c1):
                    continue
                out.add(cand)
        return tuple(self._sorted(out))

    def predicted_bases_split(self, *, literal: bool = False) -> list[GroundSubset]:
        """Bases of M_T as one-element extensions of bases of M.

        By default an extension is rejected when it contains any circuit of M
        that survives in M_T (PT or disjoint from T) or a minimal PT-dependent
        set.  ``literal=True`` rejects only PT-circuits and PT-dependent sets,
        which also admits extensions whose circuit misses T entirely.
        """
        masks = self._predicted_bases_split_literal if literal else self._predicted_bases_split
        return [self._gs(m) for m in masks]

    def predicted_bases_esplit(self) -> list[GroundSubset]:
        masks = list(self._predicted_bases_split)
        masks += [b | self.z_bit for b in self.base._basis_masks]
        return [self._egs(m) for m in self._sorted(masks)]

    # rank

    def _split_rank(self, mask: int) -> int:
        r = self.base._ranks[mask]
        return r + 1 if self._contains_any(mask, self._npt) else r

    def split_rank(self, S) -> int:
        """Rank in M_T from the rank in M: one more iff S holds an NPT-circuit."""
        return self._split_rank(self.base.subset(S).bits)

    def esplit_rank(self, S, *, include_z: bool = True) -> int:
        """Rank of S together with z in M'_T; ``include_z=False`` ranks S alone."""
        mask = self.base.subset(S).bits
        if include_z:
            return self.base._ranks[mask] + 1
        return self._split_rank(mask)

    # connectivity criteria

    def lemma_con_hypothesis(self) -> tuple[bool, GroundSubset | None]:
        """Whether every split (X, E-X) has an NPT-circuit on one side.

        On failure the least offending X (by size, then column order) is
        returned.
        """
        n = self.base.size
        full = self.base.full_mask
        npt = self._npt
        for k in range(1, n):
            for combo in combinations(range(n), k):
                x = mask_of(combo)
                if not (self._contains_any(x, npt) or self._contains_any(full ^ x, npt)):
                    return False, self._gs(x)
        return True, None

    def nconn_hypotheses(self, n: int) -> NconnHypotheses:
        if n < 2:
            raise ValueError("n must be at least 2")
        m = self.base
        girth = m.girth()
        return NconnHypotheses(
            n=n,
            n_connected=m.is_n_connected(n),
            vertically_connected=m.is_vertically_n_connected(n + 1),
            size_ok=m.size >= 2 * (n - 1),
            girth_ok=girth is None or girth >= n + 1,
            t_size_ok=len(self.T) >= n,
        )

    def nconn_criterion(self, n: int) -> tuple[bool, GroundSubset | None]:
        """Every (n-1)-subset S is avoided by some NPT-circuit; else the least failing S."""
        if n < 2:
            raise ValueError("n must be at least 2")
        npt = self._npt
        for combo in combinations(range(self.base.size), n - 1):
            s = mask_of(combo)
            if not any(c & s == 0 for c in npt):
                return False, self._gs(s)
        return True, None

    # Eulerian structure

    def _decompositions(self) -> Iterator[list[Circuit]]:
        seen_any = False
        for d in self.base.all_eulerian_decompositions():
            seen_any = True
            yield d
        if not seen_any:
            raise NotEulerian("M has no partition into circuits")

    def _pairings(self, meeting: list[ClassifiedCircuit]) -> Iterator[tuple[list[PTPair], list[Circuit]]]:
        if not meeting:
            yield [], []
            return
        head, rest = meeting[0], meeting[1:]
        if head.klass is CircuitClass.PT:
            for pairs, singles in self._pairings(rest):
                yield pairs, [head.circuit] + singles
        c2 = set(self._c2)
        for i, other in enumerate(rest):
            if head.circuit.bits | other.circuit.bits in c2:
                mode = PairMode.C2_UNION
            elif head.klass is CircuitClass.PT and other.klass is CircuitClass.PT:
                mode = PairMode.BOTH_PT
            else:
                continue
            pair = PTPair(head.circuit, other.circuit, mode)
            for pairs, singles in self._pairings(rest[:i] + rest[i + 1:]):
                yield [pair] + pairs, singles

    def pt_decomposition(self) -> PTDecomposition | None:
        """First circuit decomposition of M whose T-meeting circuits pair up.

        Raises NotEulerian when M has no circuit decomposition at all.
        """
        for decomposition in self._decompositions():
            classified = [self.classify_circuit(c) for c in decomposition]
            meeting = [cc for cc in classified if cc.klass is not CircuitClass.DISJOINT]
            disjoint = [cc.circuit for cc in classified if cc.klass is CircuitClass.DISJOINT]
            found = next(self._pairings(meeting), None)
            if found is not None:
                pairs, singles = found
                return PTDecomposition(pairs, sorted(singles + disjoint, key=lambda c: order_key(c.bits)))
        return None

    def one_npt_decomposition(self) -> list[Circuit] | None:
        for decomposition in self._decompositions():
            kinds = [self.classify_circuit(c).klass for c in decomposition]
            if kinds.count(CircuitClass.NPT) == 1:
                return decomposition
        return None


def make_split(M: Matroid, T) -> SplitInstance:
    return SplitInstance(M, T)

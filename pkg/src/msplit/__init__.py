"""Generalized splitting and element splitting of matroids represented over GF(p)."""

from .errors import MsplitError
from .gfp import FieldElement, FieldMatrix, FieldVector, PrimeModulus, fe_inv, kernel_basis, rank, row_space_contains, rref
from .matroid import Basis, Circuit, GroundSubset, Matroid, from_columns, from_matrix
from .splitting import CircuitClass, ClassifiedCircuit, PTDecomposition, SplitInstance, make_split

__all__ = [
    "Basis", "Circuit", "CircuitClass", "ClassifiedCircuit", "FieldElement", "FieldMatrix",
    "FieldVector", "GroundSubset", "Matroid", "MsplitError", "PTDecomposition", "PrimeModulus",
    "SplitInstance", "fe_inv", "from_columns", "from_matrix", "kernel_basis", "make_split",
    "rank", "row_space_contains", "rref",
]

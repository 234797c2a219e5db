"""Exact arithmetic and linear algebra primitives."""
from .fields import (QQ, CyclotomicField, Field, FieldError, PrimeField, RationalField,
                     GF, cyclotomic, cyclotomic_polynomial, field_from_descriptor)
from .laurent import (LaurentPoly, RationalFunction, Singular, laurent_matmul,
                      laurentMatrixInverse, rational_matmul, to_rational_matrix)
from .linalg import (Matrix, NoSolution, canonical_basis, identity_rows, inverse, inverse_rows,
                     kernel_rows, kernelBasis, lin_comb, matmul, matvec, rank, rref, rref_rows,
                     solve_rows, solveLinear, transpose, unit_vector, vec_add, vec_is_zero,
                     vec_scale, vec_sub, zero_vector)
from .subspace import Subspace

__all__ = [
    "QQ", "CyclotomicField", "Field", "FieldError", "PrimeField", "RationalField", "GF",
    "cyclotomic", "cyclotomic_polynomial", "field_from_descriptor",
    "LaurentPoly", "RationalFunction", "Singular", "laurent_matmul", "laurentMatrixInverse",
    "rational_matmul", "to_rational_matrix",
    "Matrix", "NoSolution", "canonical_basis", "identity_rows", "inverse", "inverse_rows",
    "kernel_rows", "kernelBasis", "lin_comb", "matmul", "matvec", "rank", "rref", "rref_rows",
    "solve_rows", "solveLinear", "transpose", "unit_vector", "vec_add", "vec_is_zero",
    "vec_scale", "vec_sub", "zero_vector", "Subspace",
]

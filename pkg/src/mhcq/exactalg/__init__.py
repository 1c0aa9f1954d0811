"""Exact scalars, finitely supported tensors, and basis algebras."""

from .algebras import (
    Algebra,
    FunctionAlgebra,
    GroupAlgebra,
    KernelMap,
    NondegeneracyReport,
    ScalarAlgebra,
    TableAlgebra,
    TensorProductAlgebra,
    check_nondegeneracy,
    compose,
    find_unit,
    flip_kernel,
    pack,
    unpack,
    zero_product_algebra,
)
from .linalg import Echelon, invert_on_basis, solve_combination, solve_system
from .scalars import I, GaussianRational, Scalar, conj, gaussian, parse_scalar, scalar_str
from .tensor import FinTensor, FinVec, delta, key_str, sort_key

__all__ = [
    "Algebra", "FunctionAlgebra", "GroupAlgebra", "KernelMap", "NondegeneracyReport",
    "ScalarAlgebra", "TableAlgebra", "TensorProductAlgebra", "check_nondegeneracy",
    "compose", "find_unit", "flip_kernel", "pack", "unpack", "zero_product_algebra",
    "Echelon", "invert_on_basis", "solve_combination", "solve_system",
    "I", "GaussianRational", "Scalar", "conj", "gaussian", "parse_scalar", "scalar_str",
    "FinTensor", "FinVec", "delta", "key_str", "sort_key",
]

from deltakoszul.exactla.field import Field
from deltakoszul.exactla.matrix import Mat, RowReduceResult, kernel_basis, left_kernel, rank, rref, solve
from deltakoszul.exactla.scalar import Scalar
from deltakoszul.exactla.subspace import Subspace, intersect, subspace_leq

__all__ = [
    "Field",
    "Mat",
    "RowReduceResult",
    "Scalar",
    "Subspace",
    "intersect",
    "kernel_basis",
    "left_kernel",
    "rank",
    "rref",
    "solve",
    "subspace_leq",
]

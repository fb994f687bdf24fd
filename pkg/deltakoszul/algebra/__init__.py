from deltakoszul.algebra.quiver import AlgebraSpec, Arrow, Path, Quiver, Relation, make_relation
from deltakoszul.algebra.table import AlgebraTable, Block, Element, build_algebra

__all__ = [
    "AlgebraSpec",
    "AlgebraTable",
    "Arrow",
    "Block",
    "Element",
    "Path",
    "Quiver",
    "Relation",
    "build_algebra",
    "make_relation",
]

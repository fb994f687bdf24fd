from deltakoszul.module.core import (
    Module,
    Morphism,
    ProjectiveShape,
    compose,
    identity,
    shapes_equal,
    validate,
    validate_morphism,
)
from deltakoszul.module.cover import Cover, Syzygy, check_cover, projective_cover, syzygy
from deltakoszul.module.projective import (
    generator_key,
    map_from_projective,
    projective,
    summand_inclusion,
    summand_projection,
)
from deltakoszul.module.radical import Generator, Top, radical, radical_multiple, top
from deltakoszul.module.subquotient import (
    cokernel,
    direct_sum,
    direct_sum_maps,
    image,
    image_subspaces,
    kernel,
    quotient,
    restrict,
    semisimple_top,
    shift,
    simple,
    submodule,
    submodule_generated,
)

__all__ = [
    "Cover",
    "Generator",
    "Module",
    "Morphism",
    "ProjectiveShape",
    "Syzygy",
    "Top",
    "check_cover",
    "cokernel",
    "compose",
    "direct_sum",
    "direct_sum_maps",
    "generator_key",
    "identity",
    "image",
    "image_subspaces",
    "kernel",
    "map_from_projective",
    "projective",
    "projective_cover",
    "quotient",
    "radical",
    "radical_multiple",
    "restrict",
    "semisimple_top",
    "shapes_equal",
    "shift",
    "simple",
    "submodule",
    "submodule_generated",
    "summand_inclusion",
    "summand_projection",
    "syzygy",
    "top",
    "validate",
    "validate_morphism",
]

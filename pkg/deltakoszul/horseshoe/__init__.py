from deltakoszul.horseshoe.audits import (
    AuditResult,
    Lemma33Report,
    audit_extension_closure,
    audit_lemma32,
    audit_theorem_a,
    audit_theorem_c,
    audit_theorem_d,
    lemma33_conditions,
)
from deltakoszul.horseshoe.conditions import (
    RadicalCondition,
    induced_map,
    radical_condition,
    radical_row_exact,
    snake_dims_consistent,
    top_map_injective,
    top_maps,
    top_row_exact,
)
from deltakoszul.horseshoe.diagram import (
    HorseshoeDiagram,
    HorseshoeLevel,
    HorseshoeStep,
    build_minimal_horseshoe,
    classic_horseshoe,
    horseshoe_step,
    syzygy_ses,
)
from deltakoszul.horseshoe.ses import ShortExactSequence, make_ses, split_ses

__all__ = [
    "AuditResult",
    "HorseshoeDiagram",
    "HorseshoeLevel",
    "HorseshoeStep",
    "Lemma33Report",
    "RadicalCondition",
    "ShortExactSequence",
    "audit_extension_closure",
    "audit_lemma32",
    "audit_theorem_a",
    "audit_theorem_c",
    "audit_theorem_d",
    "build_minimal_horseshoe",
    "classic_horseshoe",
    "horseshoe_step",
    "induced_map",
    "lemma33_conditions",
    "make_ses",
    "radical_condition",
    "radical_row_exact",
    "snake_dims_consistent",
    "split_ses",
    "syzygy_ses",
    "top_map_injective",
    "top_maps",
    "top_row_exact",
]

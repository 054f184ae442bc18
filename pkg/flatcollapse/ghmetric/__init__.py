from .diameter import diameter_s
from .distances import (
    FlatMetric,
    conjugated_group,
    flat_distance,
    flat_metric,
    scaled_form,
    scaling_map,
    subspace_projector,
)
from .verify import (
    MetricRecord,
    MetricReport,
    conjugation_consistency,
    sample_pairs,
    verify_collapse_metric,
    write_report_csv,
)

__all__ = [
    "diameter_s", "FlatMetric", "conjugated_group", "flat_distance", "flat_metric", "scaled_form",
    "scaling_map", "subspace_projector", "MetricRecord", "MetricReport", "conjugation_consistency",
    "sample_pairs", "verify_collapse_metric", "write_report_csv",
]

"""Semi-supervised outlier detection for mixed-attribute tabular data.

The pipeline: per-attribute fuzzy similarity relations with adaptive radii,
fuzzy rough approximations of the labeled classes (attribute weights),
leave-one-out fuzzy relative entropy on the unlabeled side (outlier factors),
weighted outlier degrees, and an adaptive threshold from labeled normals.
"""

__version__ = "0.1.0"

from .dataset import (
    Attribute,
    Kind,
    Label,
    MixedTable,
    bundled_path,
    load_csv,
    load_csv_text,
    mask_labels,
    normalize,
    stratified_split,
)
from .detector import (
    AttributeDetail,
    DetectionResult,
    FrodConfig,
    adaptive_threshold,
    detect,
    outlier_degree,
    outlier_factor,
    outlier_factors,
    write_scores_csv,
    write_sidecar_json,
)
from .entropy import (
    EntropyState,
    fuzzy_entropy,
    fuzzy_relative_entropy,
    leave_one_out_entropies,
    leave_one_out_entropy,
    relative_entropies,
)
from .evaluation import (
    ExperimentReport,
    GridSpec,
    RunResult,
    auc,
    average_precision,
    grid_search,
    grid_search_pooled,
    run_experiment,
    score_detection,
)
from .relation import (
    FuzzyRelation,
    dump_relation,
    fuzzy_radius,
    load_relation_matrix,
    relation_for_attribute,
    relation_for_set,
)
from .rough import (
    FuzzySet,
    approximation_accuracy,
    decision_faa,
    lower_approximation,
    similarity_class,
    upper_approximation,
)
from .supervision import (
    AttributeWeight,
    attribute_classification_accuracy,
    class_accuracies,
    class_indicators,
)
from . import errors

__all__ = [
    "__version__",
    "Attribute",
    "AttributeDetail",
    "AttributeWeight",
    "DetectionResult",
    "EntropyState",
    "ExperimentReport",
    "FrodConfig",
    "FuzzyRelation",
    "FuzzySet",
    "GridSpec",
    "Kind",
    "Label",
    "MixedTable",
    "RunResult",
    "adaptive_threshold",
    "approximation_accuracy",
    "attribute_classification_accuracy",
    "auc",
    "average_precision",
    "bundled_path",
    "class_accuracies",
    "class_indicators",
    "decision_faa",
    "detect",
    "dump_relation",
    "errors",
    "fuzzy_entropy",
    "fuzzy_radius",
    "fuzzy_relative_entropy",
    "grid_search",
    "grid_search_pooled",
    "leave_one_out_entropies",
    "leave_one_out_entropy",
    "load_csv",
    "load_csv_text",
    "load_relation_matrix",
    "lower_approximation",
    "mask_labels",
    "normalize",
    "outlier_degree",
    "outlier_factor",
    "outlier_factors",
    "relation_for_attribute",
    "relation_for_set",
    "relative_entropies",
    "run_experiment",
    "score_detection",
    "similarity_class",
    "stratified_split",
    "upper_approximation",
    "write_scores_csv",
    "write_sidecar_json",
]

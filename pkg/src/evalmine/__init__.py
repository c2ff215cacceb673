"""Mining pipeline for the Gazi University course-evaluation table.

Load and validate the 5820x33 evaluation CSV, recode it to nominal
values, mine class association rules with Apriori, learn reduced-error-
pruned decision trees and score them with stratified cross-validation.
"""

__version__ = "0.1.0"

from .assoc import (
    AssociationRule,
    Item,
    Itemset,
    brute_force_itemsets,
    frequent_itemsets,
    generate_rules,
    itemize,
)
from .evaluate import EvalReport, Metrics, compute_metrics, cross_validate, stratified_folds
from .ingest import (
    COLUMN_NAMES,
    SCHEMA,
    ColumnSpec,
    DatasetError,
    RawTable,
    ValidationSummary,
    file_sha256,
    load_csv,
    validate_schema,
)
from .recode import (
    ANALYSES,
    TARGET_COLUMN,
    TARGET_TOKENS,
    RecodedTable,
    map_code_to_letter,
    project_analysis,
    recode_repeat_label,
    recode_scale,
    recode_table,
)
from .reptree import (
    Leaf,
    Node,
    Split,
    TreeParams,
    entropy,
    fit,
    grow_tree,
    info_gain,
    predict,
    predict_codes,
    render_tree,
    rep_prune,
)

__all__ = [
    "ANALYSES",
    "AssociationRule",
    "COLUMN_NAMES",
    "ColumnSpec",
    "DatasetError",
    "EvalReport",
    "Item",
    "Itemset",
    "Leaf",
    "Metrics",
    "Node",
    "RawTable",
    "RecodedTable",
    "SCHEMA",
    "Split",
    "TARGET_COLUMN",
    "TARGET_TOKENS",
    "TreeParams",
    "ValidationSummary",
    "brute_force_itemsets",
    "compute_metrics",
    "cross_validate",
    "entropy",
    "file_sha256",
    "fit",
    "frequent_itemsets",
    "generate_rules",
    "grow_tree",
    "info_gain",
    "itemize",
    "load_csv",
    "map_code_to_letter",
    "predict",
    "predict_codes",
    "project_analysis",
    "recode_repeat_label",
    "recode_scale",
    "recode_table",
    "render_tree",
    "rep_prune",
    "stratified_folds",
    "validate_schema",
]

"""kotaro: density-adaptive kernel classification for imbalanced binary data.

The classifier assigns every training sample its own Gaussian bandwidth,
the largest distance to its n nearest neighbors, then solves a signed
interpolation system so kernels stay tight in dense majority regions and
spread out where minority samples are sparse.
"""

from .baselines import (
    ExplicitGamma,
    FixedBandwidthModel,
    KnnModel,
    MajorityModel,
    MedianHeuristic,
    fit_fixed,
    fit_knn,
    fit_majority,
    predict_fixed,
    predict_knn,
    predict_majority,
)
from .core import (
    AdaptiveKernelModel,
    Dataset,
    DecisionValue,
    FloorPolicy,
    NeighborScales,
    build_design_matrix,
    compute_neighbor_scales,
    decision_function,
    decision_values,
    fit,
    kernel_value,
    predict_batch,
)
from .evaluation import (
    ExperimentReport,
    FixedBandwidthConfig,
    FoldAssignment,
    KnnConfig,
    KotaroConfig,
    MajorityConfig,
    TrialResult,
    cross_validate,
    imbalance_sweep,
    make_config,
    stratified_kfold,
)
from .io import (
    ColumnSpec,
    NormalizationParams,
    apply_normalization,
    load_csv,
    load_model,
    load_scene,
    save_csv,
    save_model,
    save_report,
    save_scene,
    zscore_params,
)
from .metrics import ConfusionCounts, accuracy, confusion, f1, gmean, precision, recall, specificity
from .solver import Pseudoinverse, Ridge, SolveReport, solve
from .synth import (
    Flavor,
    HypersphereScene,
    ImbalanceSpec,
    generate,
    generate_balanced_test,
    random_scene,
    sample_inside,
    sample_outside,
)

__version__ = "0.1.0"

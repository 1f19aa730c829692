"""GEL-S distribution toolkit: density, fitting, simulation, comparison."""

from .distribution import (
    DistributionSummary,
    GelSParams,
    MomentOverflowError,
    cdf,
    log_norm_const,
    log_pdf,
    mode,
    moment,
    pdf,
    quantile,
    sample,
    sf,
    summary,
)
from .estimation import (
    ConfidenceIntervals,
    Dataset,
    DegenerateDataError,
    FitError,
    FitResult,
    KGridTrace,
    UncertaintyUnavailableError,
    confidence_intervals,
    fit,
    fit_given_k,
    information_criteria,
    log_likelihood,
    observed_information,
    score,
)
from .simulation import STUDY_PARAMS, StudyConfig, StudyReport, run_study

__all__ = [
    "ConfidenceIntervals",
    "Dataset",
    "DegenerateDataError",
    "DistributionSummary",
    "FitError",
    "FitResult",
    "GelSParams",
    "KGridTrace",
    "MomentOverflowError",
    "STUDY_PARAMS",
    "StudyConfig",
    "StudyReport",
    "UncertaintyUnavailableError",
    "cdf",
    "confidence_intervals",
    "fit",
    "fit_given_k",
    "information_criteria",
    "log_likelihood",
    "log_norm_const",
    "log_pdf",
    "mode",
    "moment",
    "observed_information",
    "pdf",
    "quantile",
    "sample",
    "score",
    "sf",
    "summary",
]

__version__ = "0.1.0"

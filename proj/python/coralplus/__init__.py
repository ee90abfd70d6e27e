"""PLDA speaker-verification backend with CORAL and CORAL+ adaptation."""

from ._coralplus import (
    Error,
    NumericalError,
    PldaModel,
    PreconditionError,
    SynthConfig,
    coral_plus,
    compute_eer,
    compute_min_dcf,
    eigh,
    fit_coral,
    fit_lda,
    generate,
    inv_sqrt_psd,
    run_experiment,
    score_pair,
    simdiag,
    sqrt_psd,
    train_plda,
)

__version__ = "0.1.0"

__all__ = [
    "Error",
    "NumericalError",
    "PldaModel",
    "PreconditionError",
    "SynthConfig",
    "coral_plus",
    "compute_eer",
    "compute_min_dcf",
    "eigh",
    "fit_coral",
    "fit_lda",
    "generate",
    "inv_sqrt_psd",
    "run_experiment",
    "score_pair",
    "simdiag",
    "sqrt_psd",
    "train_plda",
]

"""Teacher/student normalizing flows for calorimeter responses."""

from ._core import (
    ConfigError,
    FlowStack,
    FormatError,
    IoError,
    NumericError,
    channel_mae,
    channel_of,
    condition_key,
    diversity,
    extract_channels,
    generate_dataset,
    inverse_diversity_weights,
    postprocess,
    preprocess,
    read_dataset,
    run_stage,
    shower_centre,
    shower_radius,
    soft_channels,
    wasserstein1,
    write_dataset,
    ws_score,
)

__all__ = [
    "ConfigError",
    "FlowStack",
    "FormatError",
    "IoError",
    "NumericError",
    "channel_mae",
    "channel_of",
    "condition_key",
    "diversity",
    "extract_channels",
    "generate_dataset",
    "inverse_diversity_weights",
    "postprocess",
    "preprocess",
    "read_dataset",
    "run_stage",
    "shower_centre",
    "shower_radius",
    "soft_channels",
    "wasserstein1",
    "write_dataset",
    "ws_score",
]

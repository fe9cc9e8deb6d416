"""
schemas module

Defines Pydantic schemas for configuration, data and reports.

Submodules:
- config_schema: MatchConfig, TrainConfig and SynthTaskSpec.
- example_schema: MultiChoiceExample.
- metrics_schema: EpochMetrics, GradReport and the ablation report.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from .config_schema import MatchConfig, SynthTaskSpec, TrainConfig
from .example_schema import MultiChoiceExample
from .metrics_schema import AblationReport, AblationRow, EpochMetrics, GradReport

__all__ = [
    "MatchConfig",
    "TrainConfig",
    "SynthTaskSpec",
    "MultiChoiceExample",
    "EpochMetrics",
    "GradReport",
    "AblationRow",
    "AblationReport",
]

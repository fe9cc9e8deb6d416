"""
metrics_schema.py

Defines Pydantic schemas for training, verification and ablation reports.

Schemas:
- EpochMetrics: One line-delimited record per training epoch.
- GradReport: Outcome of a finite-difference gradient check.
- AblationRow: Aggregated accuracy of one ablation variant over several seeds.
- AblationReport: The full ablation table with published reference deltas.

Features:
- Serializable with `model_dump_json()` for machine-readable output.
- Validators keep accuracies in [0, 1] and losses non-negative.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class EpochMetrics(BaseModel):
    """
    Schema for per-epoch training metrics.

    Attributes:
        epoch (int): Zero-based epoch index.
        train_loss (float): Mean training loss over the epoch.
        dev_accuracy (Optional[float]): Dev accuracy after the epoch, if a dev split was given.
        wall_time (float): Seconds spent in the epoch, evaluation included.
        skipped_steps (int): Optimizer steps skipped because of non-finite gradients.
    """

    epoch: int = Field(..., ge=0)
    train_loss: float = Field(..., ge=0.0)
    dev_accuracy: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    wall_time: float = Field(..., ge=0.0)
    skipped_steps: int = Field(default=0, ge=0)

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "epoch": 0,
                "train_loss": 1.21,
                "dev_accuracy": 0.58,
                "wall_time": 12.4,
                "skipped_steps": 0,
            }
        }
    )


class GradReport(BaseModel):
    """
    Schema for a gradient check report.

    Attributes:
        max_relative_error (Dict[str, float]): Worst relative error per parameter.
        step (float): Central-difference step h.
        tolerance (float): Pass threshold.
        passed (bool): True iff every error is within tolerance.
    """

    max_relative_error: Dict[str, float]
    step: float = Field(..., gt=0.0)
    tolerance: float = Field(..., gt=0.0)
    passed: bool

    @property
    def worst(self) -> float:
        return max(self.max_relative_error.values(), default=0.0)

    @property
    def worst_parameter(self) -> Optional[str]:
        if not self.max_relative_error:
            return None
        return max(self.max_relative_error, key=self.max_relative_error.__getitem__)


class AblationRow(BaseModel):
    """
    Schema for one ablation variant.

    Attributes:
        variant (str): Variant name (`full`, `unidirectional`, `concat_fusion`, `no_qa_pair`, ...).
        representation_size (int): Length of C under the variant.
        accuracies (List[float]): Test accuracy per seed.
        mean (float): Mean accuracy.
        stdev (float): Sample standard deviation (0 for a single seed).
        delta_vs_full (float): Mean accuracy minus the full model's, in points.
        published_delta (Optional[float]): Published accuracy change in points, if any.
    """

    variant: str
    representation_size: int = Field(..., ge=1)
    accuracies: List[float]
    mean: float = Field(..., ge=0.0, le=1.0)
    stdev: float = Field(..., ge=0.0)
    delta_vs_full: float
    published_delta: Optional[float] = None


class AblationReport(BaseModel):
    """
    Schema for the ablation suite report.

    Attributes:
        seeds (List[int]): Seeds each variant was trained with.
        hidden_size (int): Hidden size l of every variant.
        rows (List[AblationRow]): One row per variant, `full` first.
        notes (List[str]): Footnotes, including the published reference deltas.
    """

    seeds: List[int]
    hidden_size: int
    rows: List[AblationRow]
    notes: List[str] = Field(default_factory=list)

    def row(self, variant: str) -> AblationRow:
        for row in self.rows:
            if row.variant == variant:
                return row
        raise KeyError(variant)

"""
test_metrics_schema.py

Unit tests for the report schemas.

Tests:
- Worst-error helpers of GradReport.
- EpochMetrics ranges and JSON round trip.
- Row lookup in AblationReport.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import pytest
from pydantic import ValidationError

from dual_comatch.schemas.metrics_schema import AblationReport, AblationRow, EpochMetrics, GradReport


def test_grad_report_worst():
    """
    Test the worst-parameter helpers.

    Expected Outcome:
    - The largest error and its parameter name; None for an empty report.
    """
    report = GradReport(max_relative_error={"V": 1e-9, "pq.W": 3e-7}, step=1e-5, tolerance=1e-4, passed=True)
    empty = GradReport(max_relative_error={}, step=1e-5, tolerance=1e-4, passed=True)

    assert report.worst == 3e-7 and report.worst_parameter == "pq.W"
    assert empty.worst == 0.0 and empty.worst_parameter is None


def test_epoch_metrics():
    """
    Test epoch metrics validation and serialization.

    Expected Outcome:
    - JSON round trip preserves values; accuracy above 1 is rejected.
    """
    metrics = EpochMetrics(epoch=0, train_loss=1.2, dev_accuracy=0.5, wall_time=0.1)

    assert EpochMetrics.model_validate_json(metrics.model_dump_json()) == metrics
    with pytest.raises(ValidationError):
        EpochMetrics(epoch=0, train_loss=1.2, dev_accuracy=1.5, wall_time=0.1)


def test_ablation_report_row_lookup():
    """
    Test variant lookup.

    Expected Outcome:
    - The named row is returned; unknown names raise KeyError.
    """
    row = AblationRow(
        variant="full", representation_size=12, accuracies=[0.5], mean=0.5, stdev=0.0, delta_vs_full=0.0
    )
    report = AblationReport(seeds=[1], hidden_size=4, rows=[row])

    assert report.row("full") is row
    with pytest.raises(KeyError):
        report.row("missing")

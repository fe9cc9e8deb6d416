"""
trainer.py

Training loop and evaluation for the dual co-matching model.

Features:
- Seeded shuffling per epoch and seeded matching dropout (train mode only).
- Gradients summed over `batch_size` examples per Adam step.
- Per-epoch `EpochMetrics`, logged and optionally appended as JSON lines.
- Best-dev-accuracy parameters restored at the end of training.
- Order-preserving evaluation, optionally fanned out over a thread pool.
- Accuracy broken down by subset (the first path component of RACE ids).
- Optional early stop once dev accuracy reaches `target_dev_accuracy`.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
from hestia_logger import get_logger

from dual_comatch.config import Config
from dual_comatch.errors.exceptions import DataFormatError, TrainingDivergedError
from dual_comatch.harness.optimizer import OptimizerState, adam_step
from dual_comatch.models.dmn_model import DualCoMatchModel
from dual_comatch.numerics.tensor import Tape
from dual_comatch.readers.race import subset_of
from dual_comatch.schemas.config_schema import TrainConfig
from dual_comatch.schemas.example_schema import MultiChoiceExample
from dual_comatch.schemas.metrics_schema import EpochMetrics
from dual_comatch.utils.seed_utils import derive_rng

logger = get_logger("dmn_logger")


@dataclass
class EvaluationResult:
    """
    Attributes:
        accuracy (float): Correct predictions over examples.
        predictions (List[int]): Argmax candidate per example, in dataset order.
        probabilities (List[np.ndarray]): Candidate distribution per example.
        subset_accuracy (Dict[str, float]): Accuracy per subset, keyed by subset name.
    """

    accuracy: float
    predictions: List[int]
    probabilities: List[np.ndarray] = field(default_factory=list)
    subset_accuracy: Dict[str, float] = field(default_factory=dict)


@dataclass
class TrainingResult:
    model: DualCoMatchModel
    metrics: List[EpochMetrics]
    optimizer_state: OptimizerState
    best_epoch: Optional[int] = None
    stopped_early: bool = False


def evaluate(
    model: DualCoMatchModel,
    dataset: Sequence[MultiChoiceExample],
    workers: int = 1,
) -> EvaluationResult:
    """
    Predict every example with dropout off.

    Args:
        model (DualCoMatchModel): Model to evaluate; its parameters are only read.
        dataset (Sequence[MultiChoiceExample]): Non-empty evaluation set.
        workers (int): Threads scoring examples; results keep dataset order.

    Returns:
        EvaluationResult: Accuracy, predictions and probabilities.

    Raises:
        DataFormatError: If the dataset is empty.
    """
    if not dataset:
        raise DataFormatError("Cannot evaluate on an empty dataset")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            scores = list(pool.map(model.predict, dataset))
    else:
        scores = [model.predict(example) for example in dataset]

    predictions = [score.prediction for score in scores]
    hits = [int(p == example.gold) for p, example in zip(predictions, dataset)]
    by_subset: Dict[str, List[int]] = {}
    for example, hit in zip(dataset, hits):
        by_subset.setdefault(subset_of(example.id), []).append(hit)
    return EvaluationResult(
        accuracy=sum(hits) / len(dataset),
        predictions=predictions,
        probabilities=[score.probs for score in scores],
        subset_accuracy={name: sum(v) / len(v) for name, v in sorted(by_subset.items())},
    )


def _write_metrics(path: Path, metrics: EpochMetrics) -> None:
    with path.open("a", encoding="utf-8") as handle:
        handle.write(metrics.model_dump_json() + "\n")


def train(
    model: DualCoMatchModel,
    dataset: Sequence[MultiChoiceExample],
    cfg: TrainConfig,
    dev: Optional[Sequence[MultiChoiceExample]] = None,
    metrics_path: Union[str, Path, None] = Config.METRICS_PATH,
    state: Optional[OptimizerState] = None,
) -> TrainingResult:
    """
    Train a model in place.

    Args:
        model (DualCoMatchModel): Model to train.
        dataset (Sequence[MultiChoiceExample]): Non-empty training set.
        cfg (TrainConfig): Optimizer and loop settings.
        dev (Optional[Sequence[MultiChoiceExample]]): Dev set for per-epoch accuracy
            and best-epoch selection.
        metrics_path (str | Path | None): JSON-lines file receiving one record per epoch;
            truncated at the start of training.
        state (Optional[OptimizerState]): Optimizer state to resume from.

    Returns:
        TrainingResult: The model (best dev epoch restored), metrics and optimizer state.
            Training ends early when a dev set is given and `cfg.target_dev_accuracy` is reached.

    Raises:
        DataFormatError: If the training set is empty.
        TrainingDivergedError: If a training loss is not finite.
    """
    if not dataset:
        raise DataFormatError("Cannot train on an empty dataset")

    params = model.named_parameters()
    state = state or OptimizerState.for_parameters(params)
    if cfg.epochs == 0:
        logger.info("Training skipped: 0 epochs requested")
        return TrainingResult(model=model, metrics=[], optimizer_state=state)

    steps_per_epoch = math.ceil(len(dataset) / cfg.batch_size)
    total_steps = cfg.epochs * steps_per_epoch
    shuffle_rng = derive_rng(cfg.seed, "shuffle")
    dropout_rng = derive_rng(cfg.seed, "dropout")

    metrics_file = Path(metrics_path) if metrics_path else None
    if metrics_file is not None:
        metrics_file.parent.mkdir(parents=True, exist_ok=True)
        metrics_file.write_text("", encoding="utf-8")

    logger.info(
        f"Training on {len(dataset)} examples: {cfg.epochs} epochs x {steps_per_epoch} steps, "
        f"batch {cfg.batch_size}, lr {cfg.learning_rate}"
    )

    history: List[EpochMetrics] = []
    best_accuracy = -1.0
    best_epoch: Optional[int] = None
    best_snapshot: Optional[Dict[str, np.ndarray]] = None
    stopped_early = False

    for epoch in range(cfg.epochs):
        started = time.perf_counter()
        order = shuffle_rng.permutation(len(dataset))
        loss_total = 0.0
        skipped = 0

        for start in range(0, len(order), cfg.batch_size):
            for tensor in params.values():
                tensor.zero_grad()
            for index in order[start : start + cfg.batch_size]:
                example = dataset[int(index)]
                with Tape() as tape:
                    loss = model.loss(
                        example, train=True, rng=dropout_rng, dropout=cfg.matching_dropout
                    )
                value = loss.item()
                if not math.isfinite(value):
                    logger.error(f"Loss diverged at epoch {epoch}, example '{example.id}'")
                    raise TrainingDivergedError(
                        f"Loss {value} at epoch {epoch} on example '{example.id}'"
                    )
                tape.backward(loss)
                loss_total += value

            grads = {name: tensor.grad for name, tensor in params.items()}
            if not adam_step(params, grads, state, cfg, total_steps):
                skipped += 1

        dev_accuracy = None
        if dev:
            dev_accuracy = evaluate(model, dev, workers=cfg.eval_workers).accuracy
            if dev_accuracy > best_accuracy:
                best_accuracy, best_epoch = dev_accuracy, epoch
                best_snapshot = model.snapshot()

        metrics = EpochMetrics(
            epoch=epoch,
            train_loss=loss_total / len(dataset),
            dev_accuracy=dev_accuracy,
            wall_time=time.perf_counter() - started,
            skipped_steps=skipped,
        )
        history.append(metrics)
        logger.info(
            f"Epoch {epoch}: train_loss={metrics.train_loss:.4f} "
            f"dev_accuracy={dev_accuracy if dev_accuracy is not None else 'n/a'} "
            f"skipped_steps={skipped}"
        )
        if metrics_file is not None:
            _write_metrics(metrics_file, metrics)

        target = cfg.target_dev_accuracy
        if target is not None and dev_accuracy is not None and dev_accuracy >= target:
            stopped_early = epoch + 1 < cfg.epochs
            logger.info(f"Dev accuracy {dev_accuracy:.4f} reached target {target} at epoch {epoch}")
            break

    if best_snapshot is not None:
        model.restore(best_snapshot)
        logger.info(f"Restored parameters of epoch {best_epoch} (dev accuracy {best_accuracy:.4f})")

    for tensor in params.values():
        tensor.zero_grad()
    return TrainingResult(
        model=model,
        metrics=history,
        optimizer_state=state,
        best_epoch=best_epoch,
        stopped_early=stopped_early,
    )

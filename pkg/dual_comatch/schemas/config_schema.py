"""
config_schema.py

Defines Pydantic schemas for per-run settings.

Schemas:
- MatchConfig: Switches of the matching stack (attention normalization, direction, fusion, q-a pair).
- TrainConfig: Optimizer and training-loop settings.
- SynthTaskSpec: Parameters of the synthetic multi-choice task.

Features:
- Field defaults reproduce the desk-scale setup; `published_preset()` returns the published values.
- Validators enforce the documented invariants.
- Includes example values for documentation.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from dual_comatch.config import Config


class MatchConfig(BaseModel):
    """
    Schema for the matching stack configuration.

    Attributes:
        hidden_size (int): Hidden dimension l shared by encoder and matching layers.
        max_seq_len (int): Truncation length applied by the tokenizer.
        attention_normalization (str): `dual` (one row-softmax per direction) or `literal`.
        direction (str): `bidirectional` or `unidirectional` (S^v dropped).
        fusion (str): `gated` or `concat`.
        use_qa_pair (bool): Whether the question-answer pair contributes to C.
        matching_dropout (float): Dropout rate applied to S^u and S^v in training.
        share_pair_parameters (bool): Use one PairParameters set for all three pairs.
    """

    hidden_size: int = Field(default=Config.HIDDEN_SIZE, ge=1)
    max_seq_len: int = Field(default=Config.MAX_SEQ_LEN, ge=1)
    attention_normalization: Literal["dual", "literal"] = "dual"
    direction: Literal["bidirectional", "unidirectional"] = "bidirectional"
    fusion: Literal["gated", "concat"] = "gated"
    use_qa_pair: bool = True
    matching_dropout: float = Field(default=0.3, ge=0.0, lt=1.0)
    share_pair_parameters: bool = False

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "hidden_size": 32,
                "max_seq_len": 64,
                "attention_normalization": "dual",
                "direction": "bidirectional",
                "fusion": "gated",
                "use_qa_pair": True,
                "matching_dropout": 0.3,
                "share_pair_parameters": False,
            }
        },
    )

    @property
    def pair_size(self) -> int:
        """Length of one fused pair vector under this configuration."""
        if self.direction == "unidirectional":
            return self.hidden_size
        if self.fusion == "concat":
            return 2 * self.hidden_size
        return self.hidden_size

    @property
    def representation_size(self) -> int:
        """Length of C, and therefore of the classifier V."""
        pairs = 3 if self.use_qa_pair else 2
        return pairs * self.pair_size

    @classmethod
    def published_preset(cls) -> "MatchConfig":
        """The published encoder width and sequence length."""
        return cls(
            hidden_size=Config.PUBLISHED_HIDDEN_SIZE, max_seq_len=Config.PUBLISHED_MAX_SEQ_LEN
        )


class TrainConfig(BaseModel):
    """
    Schema for training-loop settings.

    Attributes:
        learning_rate (float): Peak Adam learning rate (toy default 1e-3).
        batch_size (int): Examples whose gradients are summed per optimizer step.
        epochs (int): Number of passes over the training set.
        warmup_fraction (float): Fraction of total steps with linearly increasing learning rate.
        seed (int): Seed for initialization, shuffling and dropout.
        matching_dropout (float): Dropout rate used while training.
        gradient_clip_norm (float): Global-norm clipping threshold, 0 disables clipping.
        eval_workers (int): Threads used for dev evaluation.
        target_dev_accuracy (Optional[float]): Stop after the first epoch whose dev accuracy
            reaches this value; None trains every epoch.
    """

    learning_rate: float = Field(default=1e-3, gt=0.0)
    batch_size: int = Field(default=4, ge=1)
    epochs: int = Field(default=10, ge=0)
    warmup_fraction: float = Field(default=0.1, ge=0.0, lt=1.0)
    seed: int = Field(default=Config.SEED, ge=0)
    matching_dropout: float = Field(default=0.3, ge=0.0, lt=1.0)
    gradient_clip_norm: float = Field(default=1.0, ge=0.0)
    eval_workers: int = Field(default=Config.EVAL_WORKERS, ge=1)
    target_dev_accuracy: Optional[float] = Field(default=None, gt=0.0, le=1.0)

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "learning_rate": 1e-3,
                "batch_size": 4,
                "epochs": 10,
                "warmup_fraction": 0.1,
                "seed": 13,
                "matching_dropout": 0.3,
                "gradient_clip_norm": 1.0,
                "eval_workers": 1,
                "target_dev_accuracy": None,
            }
        },
    )

    @classmethod
    def published_preset(cls) -> "TrainConfig":
        """The published fine-tuning hyperparameters."""
        return cls(learning_rate=5e-6, batch_size=4, epochs=10, matching_dropout=0.3)


class SynthTaskSpec(BaseModel):
    """
    Schema for the synthetic multi-choice task.

    Attributes:
        vocab_size (int): Total vocabulary size including reserved ids.
        num_candidates (int): Candidates per example (N).
        passage_len (int): Tokens per passage, key phrase included.
        answer_len (int): Tokens per candidate and in the key phrase.
        distractor_overlap (float): Fraction of each distractor drawn from passage tokens.
        train_size (int): Examples in the train split.
        dev_size (int): Examples in the dev split.
        test_size (int): Examples in the test split.
        seed (int): Generator seed.
    """

    vocab_size: int = Field(default=64, ge=8)
    num_candidates: int = Field(default=4, ge=2)
    passage_len: int = Field(default=10, ge=1)
    answer_len: int = Field(default=3, ge=1)
    distractor_overlap: float = Field(default=0.5, ge=0.0, le=1.0)
    train_size: int = Field(default=2000, ge=0)
    dev_size: int = Field(default=500, ge=0)
    test_size: int = Field(default=500, ge=0)
    seed: int = Field(default=Config.SEED, ge=0)

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "vocab_size": 64,
                "num_candidates": 4,
                "passage_len": 10,
                "answer_len": 3,
                "distractor_overlap": 0.5,
                "train_size": 2000,
                "dev_size": 500,
                "test_size": 500,
                "seed": 13,
            }
        },
    )

    @field_validator("distractor_overlap")
    @classmethod
    def validate_overlap(cls, value: float) -> float:
        """
        Rejects NaN overlaps, which pass the range check.
        """
        if value != value:
            raise ValueError("distractor_overlap must be a number.")
        return value

"""
exceptions.py

Defines custom exception classes for the dual co-matching toolkit.

Features:
- DMNError: Base class carrying a human-readable detail and a machine-readable code.
- ShapeError / NonFiniteError / EmptySequenceError: Numeric contract violations.
- VocabularyError / EmbeddingLookupError: Encoder failures.
- DataFormatError: Malformed or contradictory input data.
- UsageError: Invalid command-line arguments.
- TrainingDivergedError / GradientCheckError: Optimization and verification failures.
- IntegrityError / VersionMismatchError: Persistence failures.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""


class DMNError(Exception):
    """
    Base exception for the toolkit.
    """

    code = "dmn_error"
    default_detail = "Dual co-matching operation failed"

    def __init__(self, detail: str | None = None):
        self.detail = detail or self.default_detail
        super().__init__(self.detail)


class ShapeError(DMNError):
    """
    Raised when operand shapes are incompatible.
    """

    code = "shape_mismatch"
    default_detail = "Incompatible shapes"


class NonFiniteError(DMNError):
    """
    Raised when a kernel receives NaN or Inf values.
    """

    code = "non_finite"
    default_detail = "Non-finite values encountered"


class EmptySequenceError(DMNError):
    """
    Raised for zero-length token sequences or matrices with no rows.
    """

    code = "empty_sequence"
    default_detail = "Sequence is empty"


class VocabularyError(DMNError):
    """
    Raised when a token id falls outside the embedding table.
    """

    code = "vocabulary"
    default_detail = "Token id out of range"


class EmbeddingLookupError(DMNError):
    """
    Raised when a precomputed embedding entry is missing.
    """

    code = "embedding_lookup"

    def __init__(self, example_id: str, role: str, candidate: int = 0):
        self.example_id = example_id
        self.role = role
        self.candidate = candidate
        super().__init__(
            f"No precomputed embedding for example '{example_id}', "
            f"role '{role}', candidate {candidate}"
        )


class DataFormatError(DMNError):
    """
    Raised for malformed dataset files, invalid answers or contradictory task specs.
    """

    code = "data_format"
    default_detail = "Invalid input data"


class UsageError(DMNError):
    """
    Raised for command-line arguments the parser rejects.
    """

    code = "invalid_input"
    default_detail = "Invalid command-line arguments"


class TrainingDivergedError(DMNError):
    """
    Raised when the training loss becomes non-finite.
    """

    code = "training_diverged"
    default_detail = "Training loss is not finite"


class GradientCheckError(DMNError):
    """
    Raised by the CLI when analytic and numeric gradients disagree.
    """

    code = "gradient_check_failed"
    default_detail = "Gradient check failed"


class IntegrityError(DMNError):
    """
    Raised for truncated or corrupted binary files.
    """

    code = "integrity"
    default_detail = "File integrity check failed"


class VersionMismatchError(DMNError):
    """
    Raised when a file was written with an unsupported format version.
    """

    code = "version_mismatch"

    def __init__(self, found: int, expected: int):
        self.found = found
        self.expected = expected
        super().__init__(
            f"Unsupported format version {found} (expected {expected})"
        )

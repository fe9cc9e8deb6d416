"""
config.py

Central configuration module for the dual co-matching toolkit.

Features:
- Loads `.env` / `.env.<environment>` files with python-dotenv before reading variables.
- Provides process-wide defaults (hidden size, sequence length, seeds, worker counts).
- Every variable is optional; defaults reproduce the desk-scale setup.
- Provides validation for numeric settings on import.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import os
from typing import Optional

from dotenv import load_dotenv


def _load_env_files() -> None:
    """
    Loads `.env` first and then `.env.<DMN_ENVIRONMENT>` if present.

    Values already set in the process environment always win.
    """
    load_dotenv(".env", override=False)
    environment = os.getenv("DMN_ENVIRONMENT", "local")
    load_dotenv(f".env.{environment}", override=False)


def _get_env_variable(var_name: str, default: Optional[str] = None) -> str:
    """
    Retrieve environment variables with an optional default.

    Args:
        var_name (str): The name of the environment variable to retrieve.
        default (Optional[str]): The default value if the variable is not set.

    Returns:
        str: The value of the environment variable.

    Raises:
        ValueError: If the environment variable is not set and no default is provided.
    """
    value = os.getenv(var_name, default)
    if value is None:
        raise ValueError(
            f"Missing environment variable: '{var_name}'. "
            "Please set it in your environment."
        )
    return value


_load_env_files()


class Config:
    """
    Configuration class for the dual co-matching toolkit.
    Loads environment variables and provides run defaults.
    """

    # Application settings
    ENVIRONMENT = _get_env_variable("DMN_ENVIRONMENT", "local")

    # Model dimensions (desk scale; the published setup used 1024 / 512)
    HIDDEN_SIZE = int(_get_env_variable("DMN_HIDDEN_SIZE", "32"))
    MAX_SEQ_LEN = int(_get_env_variable("DMN_MAX_SEQ_LEN", "64"))
    PUBLISHED_HIDDEN_SIZE = 1024
    PUBLISHED_MAX_SEQ_LEN = 512

    # Reproducibility
    SEED = int(_get_env_variable("DMN_SEED", "13"))

    # Evaluation fan-out
    EVAL_WORKERS = int(_get_env_variable("DMN_EVAL_WORKERS", "1"))

    # Gradient verification
    GRADCHECK_STEP = float(_get_env_variable("DMN_GRADCHECK_STEP", "1e-5"))
    GRADCHECK_TOL = float(_get_env_variable("DMN_GRADCHECK_TOL", "1e-4"))

    # Ablation suite
    ABLATION_SEEDS = int(_get_env_variable("DMN_ABLATION_SEEDS", "5"))

    # Line-delimited epoch metrics (unset: metrics are only logged)
    METRICS_PATH: Optional[str] = os.getenv("DMN_METRICS_PATH") or None

    @staticmethod
    def validate():
        """
        Ensures numeric settings are usable.
        Raises an error if any value is out of range.
        """
        if Config.HIDDEN_SIZE < 1:
            raise ValueError("`DMN_HIDDEN_SIZE` must be a positive integer.")
        if Config.MAX_SEQ_LEN < 1:
            raise ValueError("`DMN_MAX_SEQ_LEN` must be a positive integer.")
        if Config.EVAL_WORKERS < 1:
            raise ValueError("`DMN_EVAL_WORKERS` must be at least 1.")
        if Config.GRADCHECK_STEP <= 0:
            raise ValueError("`DMN_GRADCHECK_STEP` must be positive.")
        if Config.GRADCHECK_TOL <= 0:
            raise ValueError("`DMN_GRADCHECK_TOL` must be positive.")
        if Config.ABLATION_SEEDS < 1:
            raise ValueError("`DMN_ABLATION_SEEDS` must be at least 1.")


# Validate configuration on startup
Config.validate()

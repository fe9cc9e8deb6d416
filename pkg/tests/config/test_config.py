"""
test_config.py

Unit tests for the configuration module.

Tests:
- Retrieval of environment variables with defaults.
- Handling of missing environment variables.
- Validation of numeric settings.

Features:
- Uses `pytest-mock` to override environment variables and class attributes.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import os

import pytest

from dual_comatch.config import Config, _get_env_variable


def test_get_env_variable_with_existing_value(mocker):
    """
    Test retrieval of an existing environment variable.

    Expected Outcome:
    - The function should return the value set in the environment.
    """
    mocker.patch.dict(os.environ, {"DMN_TEST_VAR": "17"})

    assert _get_env_variable("DMN_TEST_VAR") == "17"


def test_get_env_variable_with_default_value():
    """
    Test retrieval of an unset variable with a default.

    Expected Outcome:
    - The default value is returned.
    """
    assert _get_env_variable("DMN_NON_EXISTENT_VAR", "default") == "default"


def test_get_env_variable_missing_without_default():
    """
    Test that a missing variable without default raises.

    Expected Outcome:
    - ValueError naming the variable.
    """
    with pytest.raises(ValueError, match="Missing environment variable: 'DMN_MISSING_VAR'"):
        _get_env_variable("DMN_MISSING_VAR")


def test_defaults_are_desk_scale():
    """
    Test the built-in defaults.

    Expected Outcome:
    - Positive toy dimensions and the published 1024 / 512 preset constants.
    """
    assert Config.HIDDEN_SIZE >= 1 and Config.MAX_SEQ_LEN >= 1
    assert (Config.PUBLISHED_HIDDEN_SIZE, Config.PUBLISHED_MAX_SEQ_LEN) == (1024, 512)
    assert Config.GRADCHECK_TOL == pytest.approx(1e-4)


@pytest.mark.parametrize(
    "attribute, value",
    [
        ("HIDDEN_SIZE", 0),
        ("EVAL_WORKERS", 0),
        ("GRADCHECK_STEP", 0.0),
        ("ABLATION_SEEDS", 0),
    ],
)
def test_validate_rejects_out_of_range(mocker, attribute, value):
    """
    Test validation of numeric settings.

    Expected Outcome:
    - ValueError for each out-of-range value.
    """
    mocker.patch.object(Config, attribute, value)

    with pytest.raises(ValueError):
        Config.validate()

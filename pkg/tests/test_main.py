"""
test_main.py

Tests for the CLI parser assembly in `dual_comatch.main`.

Tests:
- Every command is registered with its handler.
- A command is required; argument errors give one error line and exit code 2.
- `--version` prints the package version.
- Unexpected exceptions become exit code 1.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import pytest

from dual_comatch import __version__
from dual_comatch.errors.exceptions import UsageError
from dual_comatch.main import build_parser, main


@pytest.mark.parametrize("command", ["train", "eval", "gradcheck", "ablate", "synth"])
def test_commands_registered(command, tmp_path):
    """
    Test that each sub-command parses and carries a handler.

    Expected Outcome:
    - `args.command` names the command and `args.handler` is callable.
    """
    extra = {
        "train": [],
        "eval": ["--model", "m.dmnb"],
        "gradcheck": [],
        "ablate": [],
        "synth": ["--out", str(tmp_path)],
    }[command]
    args = build_parser().parse_args([command, *extra])

    assert args.command == command
    assert callable(args.handler)


def test_command_required():
    """
    Test that parsing without a command is a usage error.

    Expected Outcome:
    - The parser raises UsageError instead of exiting.
    """
    with pytest.raises(UsageError, match="required"):
        build_parser().parse_args([])


@pytest.mark.parametrize(
    "argv",
    [[], ["train", "--epochs", "many"], ["eval"], ["synth", "--out", "x", "--unknown"], ["fly"]],
)
def test_usage_errors_print_one_line(argv, capsys):
    """
    Test the report for rejected arguments.

    Expected Outcome:
    - Exit code 2 and an invalid_input error line on stderr instead of a usage block.
    """
    assert main(argv) == 2

    err = capsys.readouterr().err.strip().splitlines()
    assert err[-1].startswith("error code=invalid_input type=UsageError detail=\"dual-comatch")
    assert not any(line.startswith("usage:") for line in err)


def test_version(capsys):
    """
    Test the version flag.

    Expected Outcome:
    - Exit status 0 and the package version on stdout.
    """
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["--version"])

    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_unexpected_error_exit_code(mocker, tmp_path, capsys):
    """
    Test that an unexpected exception in a handler is caught.

    Expected Outcome:
    - Exit code 1 and an `error code=unexpected` line on stderr.
    """
    mocker.patch(
        "dual_comatch.commands.synth_command.generate_synthetic",
        side_effect=RuntimeError("boom"),
    )

    assert main(["synth", "--out", str(tmp_path)]) == 1
    assert "error code=unexpected type=RuntimeError" in capsys.readouterr().err

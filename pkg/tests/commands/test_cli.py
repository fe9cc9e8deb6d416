"""
test_cli.py

End-to-end tests for the `dual-comatch` command line.

Tests:
- synth -> train -> eval on JSON-lines splits.
- RACE evaluation with per-subset accuracy.
- Early stop at a target dev accuracy.
- gradcheck passing and failing.
- ablate on a tiny synthetic task.
- Error lines and exit codes for missing, corrupted and invalid input.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import json

import pytest

from dual_comatch.harness.trainer import EvaluationResult
from dual_comatch.main import main

TINY_TASK = [
    "--synth-vocab", "24",
    "--passage-len", "6",
    "--answer-len", "2",
    "--train-size", "8",
    "--dev-size", "4",
    "--test-size", "4",
]


@pytest.fixture
def synth_dir(tmp_path, capsys):
    out = tmp_path / "synth"
    assert main(["synth", "--out", str(out), *TINY_TASK]) == 0
    capsys.readouterr()
    return out


def test_synth_train_eval(tmp_path, synth_dir, capsys):
    """
    Test the main workflow.

    Expected Outcome:
    - Exit code 0 everywhere, a saved bundle, metrics lines, predictions per example.
    """
    bundle = tmp_path / "model.dmnb"
    metrics = tmp_path / "metrics.jsonl"
    predictions = tmp_path / "predictions.jsonl"

    code = main(
        [
            "train", "--format", "jsonl",
            "--data", str(synth_dir / "train.jsonl"),
            "--dev", str(synth_dir / "dev.jsonl"),
            "--test", str(synth_dir / "test.jsonl"),
            "--hidden", "4", "--epochs", "2", "--batch", "4",
            "--metrics", str(metrics), "--out", str(bundle),
        ]
    )
    trained = capsys.readouterr().out

    assert code == 0
    assert "test_accuracy=" in trained and f"saved={bundle}" in trained
    assert len(metrics.read_text().splitlines()) == 2

    code = main(
        [
            "eval", "--model", str(bundle),
            "--data", str(synth_dir / "test.jsonl"),
            "--predictions", str(predictions),
        ]
    )
    evaluated = capsys.readouterr().out

    assert code == 0
    assert "accuracy=" in evaluated and "examples=4" in evaluated
    records = [json.loads(line) for line in predictions.read_text().splitlines()]
    assert len(records) == 4 and abs(sum(records[0]["probs"]) - 1.0) < 1e-9


def test_gradcheck_command(capsys):
    """
    Test the gradient check command.

    Expected Outcome:
    - Passes with the default tolerance; exit code 3 with an impossible tolerance.
    """
    assert main(["gradcheck", "--hidden", "3", "--seed", "1"]) == 0
    assert "gradcheck=passed" in capsys.readouterr().out

    assert main(["gradcheck", "--hidden", "3", "--seed", "1", "--tol", "1e-30"]) == 3
    assert "error code=gradient_check" in capsys.readouterr().err


def test_ablate_command(tmp_path, capsys):
    """
    Test the ablation command on the synthetic task.

    Expected Outcome:
    - A table row per variant and a JSON report.
    """
    report = tmp_path / "ablation.json"
    code = main(
        ["ablate", *TINY_TASK, "--hidden", "4", "--epochs", "1", "--seeds", "1", "--json", str(report)]
    )
    out = capsys.readouterr().out

    assert code == 0
    for variant in ("full", "unidirectional", "concat_fusion", "no_qa_pair"):
        assert variant in out
    assert json.loads(report.read_text())["rows"][0]["variant"] == "full"


def test_missing_model_file(tmp_path, capsys):
    """
    Test a missing bundle.

    Expected Outcome:
    - Exit code 2 and a single not_found error line.
    """
    code = main(["eval", "--model", str(tmp_path / "none.dmnb"), "--format", "synth"])
    err = capsys.readouterr().err.strip().splitlines()

    assert code == 2
    assert err[-1].startswith("error code=not_found type=FileNotFoundError detail=")


def test_corrupted_model_file(tmp_path, capsys):
    """
    Test a corrupted bundle.

    Expected Outcome:
    - Exit code 4 and an integrity error line.
    """
    bundle = tmp_path / "bad.dmnb"
    bundle.write_bytes(b"DMNB" + b"\x00" * 40)

    assert main(["eval", "--model", str(bundle), "--format", "synth"]) == 4
    assert "error code=integrity" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv, code, marker",
    [
        (["synth", "--out", "unused", "--passage-len", "3", "--answer-len", "5"], 2, "code=data_format"),
        (["train", *TINY_TASK, "--lr", "-1"], 2, "code=invalid_input"),
    ],
)
def test_invalid_settings(tmp_path, monkeypatch, capsys, argv, code, marker):
    """
    Test rejected settings.

    Expected Outcome:
    - Exit code 2 and the matching error code.
    """
    monkeypatch.chdir(tmp_path)

    assert main(argv) == code
    assert marker in capsys.readouterr().err


def test_race_eval_reports_subsets(tmp_path, synth_dir, capsys):
    """
    Test evaluation on a RACE-format directory.

    Expected Outcome:
    - Overall accuracy plus one accuracy line per subset.
    """
    bundle = tmp_path / "model.dmnb"
    assert main(
        [
            "train", "--format", "jsonl", "--data", str(synth_dir / "train.jsonl"),
            "--hidden", "4", "--epochs", "1", "--metrics", str(tmp_path / "m.jsonl"),
            "--out", str(bundle),
        ]
    ) == 0
    race = tmp_path / "race"
    for subset in ("high", "middle"):
        (race / subset).mkdir(parents=True)
        record = {
            "article": "Tom went to the market.",
            "questions": ["Where did Tom go?"],
            "options": [["market", "school", "home", "park"]],
            "answers": ["A"],
        }
        (race / subset / "1.txt").write_text(json.dumps(record), encoding="utf-8")
    capsys.readouterr()

    assert main(["eval", "--model", str(bundle), "--format", "race", "--data", str(race)]) == 0
    out = [line for line in capsys.readouterr().out.splitlines() if line.startswith("accuracy")]

    assert out[0].startswith("accuracy=") and out[0].endswith(" examples=2")
    assert [line.split("=")[0] for line in out[1:]] == ["accuracy_high", "accuracy_middle"]


def test_train_stops_at_target_accuracy(mocker, tmp_path, capsys):
    """
    Test the early-stop flag.

    Expected Outcome:
    - One epoch row and a stopped_early line when the first dev score meets the target.
    """
    mocker.patch(
        "dual_comatch.harness.trainer.evaluate",
        return_value=EvaluationResult(accuracy=1.0, predictions=[]),
    )
    metrics = tmp_path / "metrics.jsonl"

    code = main(
        [
            "train", *TINY_TASK, "--hidden", "4", "--epochs", "5",
            "--target-accuracy", "0.9", "--metrics", str(metrics),
        ]
    )

    assert code == 0
    assert "stopped_early=epoch_0" in capsys.readouterr().out
    assert len(metrics.read_text().splitlines()) == 1

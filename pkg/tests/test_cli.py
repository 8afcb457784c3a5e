"""Tests for the command-line interface."""

import click
import orjson
import pytest
from click.testing import CliRunner

import denoiser.dataset.fetch as fetch_module
from denoiser.cli import cli, parse_overrides
from tests.conftest import write_csv


def _summary(result) -> str:
    """The machine-readable stdout line (always printed last)."""
    lines = [line for line in result.stdout.splitlines() if line.strip()]
    return lines[-1] if lines else ""


def _invoke(runner: CliRunner, args: list[str]):
    return runner.invoke(cli, args, catch_exceptions=False)


@pytest.fixture
def runner(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("LOG_FILE", raising=False)
    return CliRunner()


@pytest.fixture
def corpus(runner):
    """Synthesize, prepare and corrupt twelve 5000-sample recordings."""
    assert _invoke(runner, ["synth", "data", "--count", "12", "--duration", "0.1"]).exit_code == 0
    assert _invoke(runner, ["prepare", "--dataset-dir", "data"]).exit_code == 0
    assert _invoke(runner, ["corrupt"]).exit_code == 0
    return runner


class TestParseOverrides:
    """Tests for parse_overrides."""

    def test_forms(self):
        """Space and equals forms, JSON values and bare strings."""
        parsed = parse_overrides(["--train.epochs", "3", "--noise.kind=blue", "--category", "all", "--train.shuffle_each_epoch", "false"])
        assert parsed == {"train.epochs": 3, "noise.kind": "blue", "category": "all", "train.shuffle_each_epoch": False}

    def test_missing_value(self):
        with pytest.raises(click.UsageError):
            parse_overrides(["--train.epochs"])

    def test_positional(self):
        with pytest.raises(click.UsageError):
            parse_overrides(["stray"])


class TestPipelineCommands:
    """Full synth -> prepare -> corrupt -> train -> evaluate -> denoise run."""

    def test_full_pipeline(self, corpus, tmp_path):
        runner = corpus
        assert (tmp_path / "work" / "clean" / "manifest.json").is_file()
        paired = orjson.loads((tmp_path / "work" / "noisy" / "manifest.json").read_bytes())
        assert len(paired["entries"]) == 12
        assert paired["noise"] == {"kind": "gaussian", "factor": 0.1, "seed": 0, "path": None}

        result = _invoke(runner, ["train", "--train.epochs", "2"])
        assert result.exit_code == 0
        epoch, train_loss, val_loss, model_path = _summary(result).split()
        assert epoch == "2"
        assert float(train_loss) > 0
        assert float(val_loss) > 0
        assert model_path == "work/model.json"
        assert (tmp_path / "work" / "model.bin").is_file()
        assert (tmp_path / "work" / "reports" / "loss_curve.csv").is_file()

        split = orjson.loads((tmp_path / "work" / "reports" / "split.json").read_bytes())
        assert (len(split["train"]), len(split["val"]), len(split["test"])) == (6, 2, 4)

        result = _invoke(runner, ["evaluate"])
        assert result.exit_code == 0
        fields = _summary(result).split()
        assert fields[:3] == ["normal", "gaussian", "4"]
        report = orjson.loads((tmp_path / "work" / "reports" / "eval_report.json").read_bytes())
        assert [e["sound_id"] for e in report["entries"]] == split["test"]

        result = _invoke(runner, [
            "denoise", "work/noisy/normal/0000.wav", "out/denoised.wav",
            "--bundle", "bundle", "--clean", "work/clean/normal/0000.wav",
        ])
        assert result.exit_code == 0
        assert _summary(result) == "5000 out/denoised.wav"
        assert len(list((tmp_path / "bundle").iterdir())) == 9

    def test_same_seed_same_artifacts(self, corpus, tmp_path):
        """Two training runs with one seed write identical checkpoints and curves."""
        runner = corpus
        for name in ("a", "b"):
            result = _invoke(runner, [
                "--seed", "3", "train", "--train.epochs", "1",
                "--model_path", f"{name}/model.json", "--report_dir", f"{name}/reports",
            ])
            assert result.exit_code == 0

        assert (tmp_path / "a" / "model.bin").read_bytes() == (tmp_path / "b" / "model.bin").read_bytes()
        a_curve = (tmp_path / "a" / "reports" / "loss_curve.json").read_bytes()
        assert a_curve == (tmp_path / "b" / "reports" / "loss_curve.json").read_bytes()


class TestExitCodes:
    """Failure exit codes."""

    def test_prepare_empty_dataset(self, runner, tmp_path):
        (tmp_path / "empty").mkdir()
        assert _invoke(runner, ["prepare", "--dataset-dir", "empty"]).exit_code == 20

    def test_prepare_malformed_csv(self, runner, tmp_path):
        write_csv(tmp_path / "data" / "normal" / "bad.csv", ["1,2,3"])
        assert _invoke(runner, ["prepare", "--dataset-dir", "data"]).exit_code == 20

    def test_corrupt_missing_noise_file(self, runner):
        assert _invoke(runner, ["synth", "data", "--count", "2", "--duration", "0.1"]).exit_code == 0
        assert _invoke(runner, ["prepare", "--dataset-dir", "data"]).exit_code == 0
        result = _invoke(runner, ["corrupt", "--noise.kind", "file", "--noise.path", "missing.wav"])
        assert result.exit_code == 21

    def test_invalid_configuration(self, runner):
        assert _invoke(runner, ["train", "--train.bogus", "1"]).exit_code == 2
        assert _invoke(runner, ["corrupt", "--noise.kind", "file"]).exit_code == 2
        assert _invoke(runner, ["prepare", "--mic-column", "9"]).exit_code == 2

    def test_train_empty_category(self, corpus):
        result = _invoke(corpus, ["train", "--category", "horizontal_misalignment_0_5mm"])
        assert result.exit_code == 31

    def test_denoise_missing_checkpoint(self, corpus):
        result = _invoke(corpus, ["denoise", "work/noisy/normal/0000.wav", "out.wav", "--model", "none.json"])
        assert result.exit_code == 40

    def test_evaluate_empty_test_split(self, corpus, tmp_path):
        split = tmp_path / "split.json"
        split.write_bytes(orjson.dumps({"seed": 0, "train": ["normal/0000"], "val": [], "test": []}))
        assert _invoke(corpus, ["evaluate", "--split", str(split)]).exit_code == 50

    def test_fetch_unreachable(self, runner, monkeypatch):
        monkeypatch.setattr(fetch_module, "RETRY_DELAY_SECONDS", 0)
        assert _invoke(runner, ["fetch", "http://127.0.0.1:1/data.tar.gz", "dest"]).exit_code == 10

    def test_version(self, runner):
        result = _invoke(runner, ["--version"])
        assert result.exit_code == 0
        assert "motor-denoise" in result.output

"""Test the ``clevrshift`` command end to end on small runs."""

import json
from pathlib import Path

import pytest

from clevrshift.cli import EXIT_CONFIG, EXIT_DATA, EXIT_OK, main
from clevrshift.perception import load_perceived
from clevrshift.questions import load_questions
from clevrshift.scenes import load_scenes


@pytest.fixture(scope="module")
def generated(tmp_path_factory: pytest.TempPathFactory) -> Path:
    out = tmp_path_factory.mktemp("generate")
    code = main([
        "generate", "--num-scenes", "3", "--visual", "easy", "--seed", "7",
        "--questions-per-scene", "object=3,part=2", "--out", str(out), "-q",
    ])  # fmt: skip
    assert code == EXIT_OK
    return out


class TestGenerate:
    def test_outputs(self, generated: Path) -> None:
        scenes, info = load_scenes(generated / "scenes.json")
        questions, qinfo = load_questions(generated / "questions.json")
        assert [s.scene_id for s in scenes] == [0, 1, 2]
        assert info["visual"] == "easy"
        assert info["seed"] == 7
        assert len(questions) == 15
        assert [q.question_index for q in questions] == list(range(15))
        assert qinfo["redundancy"] == "rd"

    def test_provenance(self, generated: Path) -> None:
        payload = json.loads((generated / "generate.provenance.json").read_text())
        assert payload["config"]["num_scenes"] == 3
        assert payload["config"]["dist"] == "bal"

    def test_reproducible(self, generated: Path, tmp_path: Path) -> None:
        main([
            "generate", "--num-scenes", "3", "--visual", "easy", "--seed", "7",
            "--questions-per-scene", "object=3,part=2", "--out", str(tmp_path), "-q",
        ])  # fmt: skip
        for name in ("scenes.json", "questions.json"):
            assert (tmp_path / name).read_bytes() == (generated / name).read_bytes()

    def test_config_file(self, tmp_path: Path) -> None:
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"generate": {"num-scenes": 1, "questions_per_scene":
                                                "object=1,part=0"}}))  # fmt: skip
        assert main(["generate", "--config", str(cfg), "--out", str(tmp_path), "-q"]) == 0
        questions, _ = load_questions(tmp_path / "questions.json")
        assert len(questions) == 1


class TestPipeline:
    def test_det_is_perfect(self, generated: Path, tmp_path: Path) -> None:
        assert main([
            "execute", "--mode", "det", "--questions", str(generated / "questions.json"),
            "--scenes", str(generated / "scenes.json"), "--out", str(tmp_path), "-q",
        ]) == EXIT_OK  # fmt: skip
        assert main([
            "evaluate", "--pred", str(tmp_path / "predictions.json"),
            "--gold", str(generated / "questions.json"), "--out", str(tmp_path), "-q",
        ]) == EXIT_OK  # fmt: skip
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["accuracy"] == 1.0
        assert (tmp_path / "report.txt").read_text().startswith("accuracy: 100.00%")

    def test_perturb_then_prob(self, generated: Path, tmp_path: Path) -> None:
        assert main([
            "perturb", "--scenes", str(generated / "scenes.json"), "--epsilon", "0.1",
            "--out", str(tmp_path), "-q",
        ]) == EXIT_OK  # fmt: skip
        perceived, info = load_perceived(tmp_path / "perceived.json")
        assert len(perceived) == 3
        assert info["noise"]["epsilon"] == 0.1

        assert main([
            "execute", "--mode", "prob", "--questions", str(generated / "questions.json"),
            "--perceived", str(tmp_path / "perceived.json"), "--out", str(tmp_path), "-q",
        ]) == EXIT_OK  # fmt: skip
        payload = json.loads((tmp_path / "predictions.json").read_text())
        assert payload["info"]["mode"] == "prob"
        assert payload["info"]["executor"]["query_rule"] == "joint-argmax"
        assert len(payload["predictions"]) == 15

    def test_majority(self, generated: Path, tmp_path: Path) -> None:
        questions = str(generated / "questions.json")
        assert main([
            "execute", "--mode", "majority", "--questions", questions,
            "--train-questions", questions, "--out", str(tmp_path), "-q",
        ]) == EXIT_OK  # fmt: skip
        payload = json.loads((tmp_path / "predictions.json").read_text())
        assert all(p["answer"] is not None for p in payload["predictions"])


class TestExitCodes:
    def test_conflicting_variants(self, tmp_path: Path) -> None:
        argv = ["generate", "--dist", "long", "--comp", "co-1", "--out", str(tmp_path)]
        assert main(argv) == EXIT_CONFIG
        assert not (tmp_path / "scenes.json").exists()

    def test_missing_input_flag(self, tmp_path: Path) -> None:
        assert main(["execute", "--mode", "det", "--out", str(tmp_path)]) == EXIT_CONFIG

    def test_grid_with_pred(self, tmp_path: Path) -> None:
        argv = ["evaluate", "--grid", "g.json", "--pred", "p.json", "--out", str(tmp_path)]
        assert main(argv) == EXIT_CONFIG

    def test_missing_file(self, tmp_path: Path) -> None:
        argv = ["perturb", "--scenes", str(tmp_path / "nope.json"), "--out", str(tmp_path)]
        assert main(argv) == EXIT_DATA

    def test_wrong_file_kind(self, generated: Path, tmp_path: Path) -> None:
        argv = ["perturb", "--scenes", str(generated / "questions.json"),
                "--out", str(tmp_path)]  # fmt: skip
        assert main(argv) == EXIT_DATA

    def test_bad_choice(self) -> None:
        with pytest.raises(SystemExit) as exc:
            main(["generate", "--visual", "blurry"])
        assert exc.value.code == EXIT_CONFIG

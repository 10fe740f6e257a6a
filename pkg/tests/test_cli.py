"""Tests for the command-line front end."""

import json

import pytest

from app.cli import EXIT_CAP, EXIT_INVALID, EXIT_OK, main
from app.config import settings

CLASS_II_SMALL = ["--class", "II", "--h", "1", "--k", "0", "--m", "3"]
CLASS_II_RESTRICTED = ["--class", "II", "--h", "2", "--p", "0", "--k", "1", "--r", "2", "--m", "4"]


def json_lines(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.fixture
def run(capsys):
    """Call main() and return (exit code, stdout, stderr)."""
    def invoke(*argv: str):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return invoke


class TestGenerate:
    """Tests for the generate command."""

    def test_davis_jedwab_code(self, run):
        code, out, _ = run("generate", *CLASS_II_SMALL)
        assert code == EXIT_OK
        records = json_lines(out)
        assert len(records) == 48
        assert [r["index"] for r in records] == list(range(48))
        assert all(len(r["word"]) == 8 for r in records)

    def test_zrm_mode(self, run):
        code, out, _ = run("generate", "--zrm", "--h", "2", "--p", "1", "--r", "2", "--m", "3")
        assert code == EXIT_OK
        assert len(out.splitlines()) == 2048

    def test_q_flag_matches_h(self, run):
        _, by_h, _ = run("generate", "--zrm", "--h", "2", "--r", "1", "--m", "2")
        _, by_q, _ = run("generate", "--zrm", "--q", "4", "--r", "1", "--m", "2")
        assert by_h == by_q

    def test_q_must_be_power_of_two(self, run):
        with pytest.raises(SystemExit) as exc:
            run("generate", "--zrm", "--q", "6", "--r", "1", "--m", "2")
        assert exc.value.code == 2

    def test_csv_output(self, run):
        code, out, _ = run("generate", *CLASS_II_SMALL, "--format", "csv")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "index,word"
        assert len(lines) == 49

    def test_writes_to_file(self, run, tmp_path):
        target = tmp_path / "words.jsonl"
        code, out, _ = run("generate", *CLASS_II_SMALL, "--out", str(target))
        assert code == EXIT_OK
        assert out == ""
        assert len(target.read_text().splitlines()) == 48

    def test_cap_exceeded(self, run):
        code, out, err = run("generate", *CLASS_II_RESTRICTED, "--cap", "10")
        assert code == EXIT_CAP
        assert out == ""
        assert "[error]" in err

    def test_sampling_is_reproducible(self, run):
        argv = ["generate", *CLASS_II_RESTRICTED, "--cap", "10", "--sample", "100", "--seed", "7"]
        code, first, _ = run(*argv)
        assert code == EXIT_OK
        _, second, _ = run(*argv)
        assert first == second
        assert len(json_lines(first)) == 100

    def test_sampling_needs_seed(self, run):
        code, _, _ = run("generate", *CLASS_II_RESTRICTED, "--sample", "5")
        assert code == EXIT_INVALID

    def test_invalid_parameters(self, run):
        code, _, err = run("generate", "--class", "II", "--h", "1", "--k", "2", "--m", "3")
        assert code == EXIT_INVALID
        assert "m - k >= 2" in err


class TestConfigFile:
    """Tests for --config."""

    def test_overrides_flags(self, run, tmp_path):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"m": 2}))
        code, out, _ = run("generate", *CLASS_II_SMALL, "--config", str(config))
        assert code == EXIT_OK
        assert len(json_lines(out)) == 8

    def test_unknown_key(self, run, tmp_path):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"colour": "red"}))
        code, _, _ = run("generate", *CLASS_II_SMALL, "--config", str(config))
        assert code == EXIT_INVALID

    def test_missing_file(self, run, tmp_path):
        code, _, _ = run("generate", *CLASS_II_SMALL, "--config", str(tmp_path / "absent.json"))
        assert code == EXIT_INVALID


class TestEncodeAndIndex:
    """Tests for encode and index."""

    def test_round_trip(self, run):
        code, out, _ = run("encode", *CLASS_II_RESTRICTED, "--payload", "1f3a5")
        assert code == EXIT_OK
        encoded = json.loads(out)
        assert encoded["payload"] == "1f3a5"
        assert encoded["pmepr"] <= 4 + 1e-9

        code, out, _ = run("index", *CLASS_II_RESTRICTED, "--word", json.dumps(encoded["word"]))
        assert code == EXIT_OK
        decoded = json.loads(out)
        assert decoded["payload"] == "1f3a5"
        assert decoded["index"] == encoded["index"]
        assert len(decoded["bits"]) == 17

    def test_comma_separated_word(self, run):
        _, out, _ = run("encode", *CLASS_II_SMALL, "--payload", "00")
        word = json.loads(out)["word"]
        code, out, _ = run("index", *CLASS_II_SMALL, "--word", ",".join(map(str, word)))
        assert code == EXIT_OK
        assert json.loads(out)["payload"] == "00"

    @pytest.mark.parametrize("payload", ["1f", "1f3a5f", "3ffff", "xyzzy"])
    def test_bad_payload(self, run, payload):
        code, out, _ = run("encode", *CLASS_II_RESTRICTED, "--payload", payload)
        assert code == EXIT_INVALID
        assert out == ""

    def test_not_a_codeword(self, run):
        code, _, _ = run("index", *CLASS_II_SMALL, "--word", "0,0,0,0,0,0,0,1")
        assert code == EXIT_INVALID

    def test_plain_zrm_rejected(self, run):
        code, _, _ = run("encode", "--zrm", "--h", "1", "--r", "1", "--m", "3", "--payload", "0")
        assert code == EXIT_INVALID


class TestInfo:
    """Tests for the info command."""

    def test_class_code(self, run):
        code, out, _ = run("info", *CLASS_II_RESTRICTED)
        assert code == EXIT_OK
        info = json.loads(out)
        assert info["capacity_bits"] == 17
        assert info["pmepr_bound"] == 4
        assert info["coset_count"] == 3

    def test_zrm_code(self, run):
        code, out, _ = run("info", "--zrm", "--h", "2", "--p", "1", "--r", "2", "--m", "3")
        assert code == EXIT_OK
        info = json.loads(out)
        assert info["size_log2"] == 11
        assert (info["d_hamming"], info["d_lee"]) == (2, 4)

    def test_class_iii_capacity(self, run):
        code, out, _ = run("info", "--class", "III", "--h", "2", "--p", "1", "--k", "1", "--m", "4")
        assert code == EXIT_OK
        assert json.loads(out)["capacity_bits"] == 19


class TestPmepr:
    """Tests for the pmepr command."""

    def test_constant_word(self, run, tmp_path):
        source = tmp_path / "words.jsonl"
        source.write_text("[0, 0, 0, 0, 0, 0, 0, 0]\n")
        code, out, _ = run("pmepr", "--h", "1", "--input", str(source))
        assert code == EXIT_OK
        (record,) = json_lines(out)
        assert record["index"] == 0
        assert record["pmepr"] == pytest.approx(8.0)

    def test_mixed_line_forms(self, run, tmp_path):
        source = tmp_path / "words.jsonl"
        source.write_text(
            json.dumps({"m": 2, "q": 2, "coeffs": [0, 0, 0, 1]}) + "\n"
            + "\n"
            + json.dumps({"index": 42, "word": [0, 1], "q": 2}) + "\n"
        )
        code, out, _ = run("pmepr", "--input", str(source))
        assert code == EXIT_OK
        first, second = json_lines(out)
        assert first["word"] == [0, 0, 0, 1]
        assert first["pmepr"] == pytest.approx(1.7698, abs=0.005)
        assert second["index"] == 42
        assert second["pmepr"] == pytest.approx(2.0)

    def test_malformed_line(self, run, tmp_path):
        source = tmp_path / "words.jsonl"
        source.write_text("[0, 1]\nnot json\n")
        code, _, err = run("pmepr", "--input", str(source))
        assert code == EXIT_INVALID
        assert "line 2" in err

    def test_whole_code_with_summary(self, run, tmp_path):
        summary = tmp_path / "summary.csv"
        code, out, _ = run(
            "pmepr", *CLASS_II_SMALL, "--oversample", "16", "--summary", str(summary)
        )
        assert code == EXIT_OK
        records = json_lines(out)
        assert len(records) == 48
        assert max(r["pmepr"] for r in records) <= 2 + 1e-9
        header, row = summary.read_text().splitlines()
        assert header == "count,min,mean,max,q50,q90,q99,oversample"
        assert row.startswith("48,")
        assert row.endswith(",16")

    def test_csv_summary_on_stdout(self, run):
        code, out, _ = run("pmepr", *CLASS_II_SMALL, "--format", "csv", "--oversample", "8")
        assert code == EXIT_OK
        assert out.splitlines()[0].startswith("count,")

    def test_worker_threads_match_single_thread(self, run):
        argv = ["pmepr", *CLASS_II_SMALL, "--oversample", "8"]
        _, single, _ = run(*argv, "--workers", "1")
        code, pooled, _ = run(*argv, "--workers", str(settings.MAX_WORKERS))
        assert code == EXIT_OK
        assert pooled == single

    def test_workers_above_limit(self, run):
        code, out, _ = run("pmepr", *CLASS_II_SMALL, "--workers", str(settings.MAX_WORKERS + 1))
        assert code == EXIT_INVALID
        assert out == ""

    def test_cap_checked_before_output(self, run, tmp_path):
        target = tmp_path / "out.jsonl"
        code, _, _ = run("pmepr", *CLASS_II_RESTRICTED, "--cap", "8", "--out", str(target))
        assert code == EXIT_CAP
        assert not target.exists()


class TestVerify:
    """Tests for the verify command."""

    def test_passing_suite(self, run):
        code, out, err = run("verify", "golay-pairs", "--h", "1", "--m", "3")
        assert code == EXIT_OK
        assert json.loads(out)["passed"] is True
        assert "PASS golay-pairs" in err

    def test_suite_option(self, run):
        code, out, _ = run("verify", "--suite", "zrm-distance", "--h", "2", "--p", "1", "--r", "2", "--m", "3")
        assert code == EXIT_OK
        assert json.loads(out)["details"]["d_lee"] == 4

    @pytest.mark.parametrize("argv", [
        ["thm3", "--m", "5", "--k", "1", "--q", "4", "--trials", "20"],
        ["thm4", "--h", "2", "--p", "1", "--r", "2", "--m", "3"],
        ["thm5", "--class", "II", "--h", "1", "--k", "0", "--m", "3"],
    ])
    def test_short_suite_names(self, run, argv):
        code, out, err = run("verify", *argv)
        assert code == EXIT_OK
        assert json.loads(out)["passed"] is True
        assert "PASS" in err

    def test_class_pmepr_by_short_name(self, run):
        code, out, _ = run("verify", "thm5", "--class", "II", "--h", "1", "--k", "0", "--m", "3")
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["name"] == "class-pmepr"
        assert report["details"]["words"] == 48
        assert report["details"]["max_pmepr"] <= 2 + 1e-9

    def test_missing_suite(self, run):
        code, _, _ = run("verify", "--m", "3")
        assert code == EXIT_INVALID

    def test_trials_and_seed_from_config(self, run, tmp_path):
        config = tmp_path / "verify.json"
        config.write_text(json.dumps({"trials": 3, "seed": 11, "h": 2, "m": 4}))
        code, out, _ = run("verify", "restriction-identity", "--config", str(config))
        assert code == EXIT_OK
        assert json.loads(out)["checks"] == 3

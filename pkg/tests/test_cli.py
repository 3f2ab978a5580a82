"""Command-line surface: records, formats, exit codes, cache behaviour."""

import json

import pytest
from click.testing import CliRunner

from app.cli import cli
from app.core.output import parse_record, render
from helpers.oracles import validate_csv, validate_record


@pytest.fixture
def run(tmp_path):
    runner = CliRunner()

    def invoke(*args, fmt: str = "json"):
        return runner.invoke(
            cli,
            ["--cache-dir", str(tmp_path / "cache"), "--format", fmt, *[str(a) for a in args]],
            catch_exceptions=False,
        )

    return invoke


def payload_of(result, command: str):
    record = json.loads(result.stdout)
    validation = validate_record(record, command)
    assert validation["valid"], validation["errors"]
    return record["payload"]


@pytest.fixture
def exported(run, tmp_path):
    """Export a published triple by name and return the file path."""

    def export(name: str):
        path = tmp_path / f"{name}.json"
        result = run("reference", "export", name, path)
        assert result.exit_code == 0, result.stderr
        return path

    return export


class TestCount:
    def test_small_counts(self, run):
        result = run("count", "--max-n", 3)
        assert result.exit_code == 0
        assert payload_of(result, "count") == [
            {"n": 0, "a": 1},
            {"n": 1, "a": 3},
            {"n": 2, "a": 6},
            {"n": 3, "a": 12},
        ]

    def test_single_length_csv(self, run):
        result = run("count", "--max-n", 13, "--from-n", 13, fmt="csv")
        assert result.exit_code == 0
        validation = validate_csv(result.stdout, ["n", "a"])
        assert validation["valid"], validation["errors"]
        assert result.stdout.strip().split("\n")[1] == "13,342"

    def test_zero(self, run):
        assert payload_of(run("count", "--max-n", 0), "count") == [{"n": 0, "a": 1}]

    def test_table_format(self, run):
        result = run("count", "--max-n", 2, fmt="table")
        assert result.exit_code == 0
        assert "n" in result.stdout.splitlines()[1]
        assert "shape" not in result.stdout

    @pytest.mark.parametrize(
        "args",
        [("count", "--max-n", 3, "--from-n", 5), ("count", "--max-n", -1), ("count",)],
    )
    def test_bad_flags(self, run, args):
        assert run(*args).exit_code == 2

    def test_unknown_format(self, run):
        assert run("count", "--max-n", 3, fmt="xml").exit_code == 2

    def test_logs_are_json_lines_on_stderr(self, run, monkeypatch):
        import app.config.common as config

        monkeypatch.setattr(config, "log_json", True)
        result = run("--log-level", "info", "count", "--max-n", 5)
        assert result.exit_code == 0
        entries = [json.loads(line) for line in result.stderr.splitlines() if line.strip()]
        counted = [e for e in entries if e["message"].startswith("Counted square-free words")]
        assert counted
        assert counted[0]["command"] == "count"
        assert counted[0]["n"] == 5
        json.loads(result.stdout)

    def test_overflow_exit_code(self, run, monkeypatch):
        import app.config.common as config

        monkeypatch.setattr(config, "MAX_COUNT", 100)
        result = run("count", "--max-n", 10)
        assert result.exit_code == 3
        assert result.stderr.strip().splitlines()[-1].startswith("Error:")


class TestFamilies:
    def test_family_stats(self, run):
        payload = payload_of(run("family-stats", "--family", "trip1", "--min-n", 25), "family-stats")
        assert payload == [{"n": 25, "family": "A1", "total": 13, "palindromes": 3, "pairs": 5}]

    def test_family_stats_too_short(self, run):
        assert run("family-stats", "--family", "A2", "--min-n", 12).exit_code == 2

    def test_unknown_family(self, run):
        assert run("family-stats", "--family", "A7", "--min-n", 20).exit_code == 2


class TestSearchCommands:
    def test_admissible(self, run):
        payload = payload_of(run("admissible", "--family", "A1", "--n", 25), "admissible")
        assert (payload["b_p"], payload["b_n"]) == (2, 1)

    def test_short_admissible(self, run):
        payload = payload_of(run("admissible", "--short", "--n", 12), "admissible")
        assert payload == {"n": 12, "words": []}

    def test_triples_writes_edge_list(self, run, tmp_path):
        edges = tmp_path / "edges.txt"
        payload = payload_of(run("triples", "--family", "A1", "--n", 29, "--edges", edges), "triples")
        assert payload["t"] == 4
        assert edges.read_text().startswith("# n=29 family=A1 ")

    def test_optimal_then_verify(self, run, tmp_path):
        saved = tmp_path / "optimum.json"
        payload = payload_of(run("optimal", "--family", "A2", "--n", 29, "--save", saved), "optimal")
        assert {(r["k_p"], r["k_n"]) for r in payload} >= {(0, 3)}
        assert all(r["k"] == 6 for r in payload)
        result = run("verify", saved, "--mode", "reduced")
        assert result.exit_code == 0
        assert payload_of(result, "verify")["valid"] is True

    def test_optimal_save_without_triple(self, run, tmp_path):
        assert run("optimal", "--family", "A1", "--n", 14, "--save", tmp_path / "none.json").exit_code == 2

    def test_tables_row_25(self, run):
        (row,) = payload_of(run("tables", "trip1", "--min-n", 25), "tables")
        assert row == {
            "n": 25,
            "family": "A1",
            "a": 9198,
            "a_f": 13,
            "a_fp": 3,
            "a_fn": 5,
            "b_fp": 2,
            "b_fn": 1,
            "t_f": 1,
            "signature": [2, 1],
            "k_opt": 4,
        }

    def test_tables_compare(self, run):
        rows = payload_of(run("tables", "A2", "--min-n", 13, "--max-n", 16, "--compare"), "tables")
        assert [row["n"] for row in rows] == [13, 14, 15, 16]
        assert all(row["mismatches"] == [] for row in rows)

    def test_tables_steps_12(self, run):
        (row,) = payload_of(run("tables", "A1", "--min-n", 29, "--steps", "12"), "tables")
        assert row["t_f"] == 4
        assert row["k_opt"] is None
        assert row["signature"] is None

    @pytest.mark.parametrize("args", [("tables", "ALL", "--min-n", 20), ("tables", "A1", "--min-n", 12)])
    def test_tables_bad_family_or_length(self, run, args):
        result = run(*args)
        assert result.exit_code == 2
        assert "Error:" in result.stderr

    def test_warm_cache_gives_identical_output(self, run):
        cold = run("tables", "A1", "--min-n", 28, "--max-n", 29)
        warm = run("tables", "A1", "--min-n", 28, "--max-n", 29)
        assert cold.exit_code == warm.exit_code == 0
        assert cold.stdout == warm.stdout

    def test_output_independent_of_threads(self, run):
        one = run("--threads", 1, "count", "--max-n", 20)
        two = run("--threads", 2, "count", "--max-n", 20)
        assert one.stdout == two.stdout


class TestVerify:
    def test_g41_reduced(self, run, exported):
        result = run("verify", exported("G41"), "--mode", "reduced")
        assert result.exit_code == 0
        verdict = payload_of(result, "verify")
        assert verdict["valid"] is True
        assert verdict["checked"] == 549445

    def test_ez_full(self, run, exported):
        result = run("verify", exported("EZ"))
        assert result.exit_code == 0
        assert payload_of(result, "verify")["checked"] == 96

    def test_tampered_g13(self, run, exported):
        path = exported("G13")
        path.write_text(path.read_text().replace("0121021201210", "0121020201210"))
        result = run("verify", path, "--mode", "reduced")
        assert result.exit_code == 1
        verdict = payload_of(result, "verify")
        assert verdict["valid"] is False
        assert verdict["witness"]["blocks"] == ["0121020201210"]
        assert verdict["witness"]["square"] == {"start": 4, "half": 2}

    def test_invalid_triple_exit_1(self, run, write_triple):
        path = write_triple({"n": 3, "kind": "general", "b0": ["010"], "b1": ["121"], "b2": ["202"]})
        result = run("verify", path)
        assert result.exit_code == 1
        assert payload_of(result, "verify")["witness"]["word"] == "010121010"

    def test_parse_errors(self, run, tmp_path, write_triple):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert run("verify", bad).exit_code == 2
        assert run("verify", tmp_path / "missing.json").exit_code == 2
        general = write_triple({"n": 2, "kind": "general", "b0": ["01"], "b1": ["12"], "b2": ["20"]})
        assert run("verify", general, "--mode", "reduced").exit_code == 2


class TestSubstitute:
    def test_g13_image(self, run, exported):
        payload = payload_of(run("substitute", exported("G13"), "012"), "substitute")
        assert payload["length"] == 39
        assert payload["square_free"] is True

    def test_ez_letter_is_a_block_word(self, run, exported, reference):
        payload = payload_of(run("substitute", exported("EZ"), "0", "--seed", 3), "substitute")
        assert payload["image"] in reference.ez_triple["b0"]

    def test_seeded_choice_is_reproducible(self, run, exported):
        path = exported("EZ")
        first = run("substitute", path, "0120210", "--seed", 11)
        second = run("substitute", path, "0120210", "--seed", 11)
        assert first.stdout == second.stdout

    def test_input_must_be_square_free(self, run, exported):
        result = run("substitute", exported("EZ"), "00")
        assert result.exit_code == 2

    def test_image_with_square_is_not_emitted(self, run, write_triple):
        path = write_triple({"n": 3, "kind": "general", "b0": ["010"], "b1": ["121"], "b2": ["202"]})
        result = run("substitute", path, "010")
        assert result.exit_code == 1
        assert result.stdout == ""
        assert "has a square" in result.stderr


class TestBounds:
    def test_lower(self, run):
        payload = payload_of(run("bounds", "lower", "--n", 41, "--k", 65), "bounds")
        assert 1.109999 <= payload["decimal"] < 1.110001
        assert payload["direction"] == "lower"

    def test_upper(self, run):
        payload = payload_of(run("bounds", "upper", "--n", 110, "--a", 50499301907904), "bounds")
        assert abs(payload["decimal"] - 1.317277) < 2e-6

    def test_trivial_lower(self, run):
        assert payload_of(run("bounds", "lower", "--n", 13, "--k", 1), "bounds")["decimal"] == 1.0

    def test_general_lower(self, run):
        payload = payload_of(run("bounds", "lower-general", "--n", 18, "--k0", 2, "--k1", 2, "--k2", 2), "bounds")
        assert (payload["base"], payload["denominator"]) == (2, 17)

    def test_domain_error(self, run):
        assert run("bounds", "lower", "--n", 1, "--k", 2).exit_code == 2

    def test_best(self, run):
        low, high = payload_of(run("bounds", "best"), "bounds")
        assert low["provenance"] == {"n": 41, "k": 65}
        assert high["provenance"]["n"] == 110


class TestSearch211:
    def test_small_lengths(self, run):
        payload = payload_of(run("search211", "--max-n", 7), "search211")
        assert [r["n"] for r in payload] == list(range(1, 8))
        assert not any(r["found"] for r in payload)

    def test_budget(self, run):
        assert run("search211", "--max-n", 12, "--budget", 0.000001).exit_code == 3


class TestReference:
    def test_list(self, run):
        payload = payload_of(run("reference", "list"), "reference")
        assert len(payload) == 12
        g41 = next(item for item in payload if item["name"] == "G41")
        assert (g41["signature"], g41["k"]) == ([3, 31], 65)

    def test_unknown_name(self, run, tmp_path):
        assert run("reference", "export", "G99", tmp_path / "x.json").exit_code == 2


class TestRecords:
    @pytest.mark.parametrize(
        "payload",
        [
            [{"n": 0, "a": 1}],
            {"n": 5, "valid": False, "checked": 3, "witness": {"word": "0101", "blocks": ["0101"], "square": None}},
            [{"n": 25, "signature": [2, 1], "k_opt": 4}, {"n": 42, "signature": None, "k_opt": None}],
        ],
    )
    def test_json_round_trip(self, payload):
        record = parse_record(render("x", payload, "json"))
        assert record == {"schema_version": 1, "command": "x", "payload": payload}

    def test_csv_flattens_lists(self):
        text = render("tables", [{"n": 25, "signature": [2, 1]}], "csv")
        assert text.splitlines() == ["n,signature", '25,"(2,1)"']

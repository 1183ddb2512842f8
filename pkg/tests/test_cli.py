import csv
import io
import json

import numpy as np
import pytest

from pbindex import ParseError, ValidationError
from pbindex.cli import (
    format_subset,
    main,
    parse_game,
    parse_profile,
    parse_subsets,
    serialize_game,
)

OR_DOC = {"version": 1, "n": 2, "values": [0, 1, 1, 1]}


def write_game(tmp_path, doc, name="game.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def read_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["subset", "index", "value"]
    return {(subset, index): float(value) for subset, index, value in rows[1:]}


class TestParseGame:
    def test_explicit_table(self, tmp_path):
        game = parse_game(write_game(tmp_path, OR_DOC))
        assert game.values.tolist() == [0, 1, 1, 1]

    def test_weighted_voting(self, tmp_path):
        doc = {"version": 1, "weighted_voting": {"quota": 3, "weights": [2, 2, 1]}}
        game = parse_game(write_game(tmp_path, doc))
        # {1,2}, {1,3}, {2,3}, {1,2,3} reach the quota of 3
        assert game.values.tolist() == [0, 0, 0, 1, 0, 1, 1, 1]

    def test_unanimity_over_three_players(self, tmp_path):
        doc = {"version": 1, "n": 3, "unanimity": {"players": [1, 2]}}
        game = parse_game(write_game(tmp_path, doc))
        assert [m for m in range(8) if game.values[m] == 1] == [0b011, 0b111]

    def test_random_generator_is_deterministic(self, tmp_path):
        doc = {"version": 1, "n": 4, "random": {"seed": 7, "distribution": "uniform"}}
        one = parse_game(write_game(tmp_path, doc, "a.json"))
        two = parse_game(write_game(tmp_path, doc, "b.json"))
        assert np.array_equal(one.values, two.values)

    def test_stream_input(self):
        game = parse_game(io.StringIO(json.dumps(OR_DOC)))
        assert game.n == 2

    def test_malformed_json(self):
        with pytest.raises(ParseError, match="line"):
            parse_game(io.StringIO("{not json"))

    def test_missing_fields_and_bad_versions(self):
        with pytest.raises(ParseError, match="version"):
            parse_game(io.StringIO(json.dumps({"version": 9, "n": 1, "values": [0, 1]})))
        with pytest.raises(ParseError, match="'n'"):
            parse_game(io.StringIO(json.dumps({"values": [0, 1]})))
        with pytest.raises(ParseError):
            parse_game(io.StringIO(json.dumps({"n": 2})))

    def test_structural_validation(self):
        with pytest.raises(ValidationError):
            parse_game(io.StringIO(json.dumps({"n": 2, "values": [0, 1, 1]})))
        with pytest.raises(ValidationError):
            parse_game(io.StringIO(json.dumps({"n": 25, "values": [0.0]})))

    def test_serialize_roundtrip(self, tmp_path):
        game = parse_game(io.StringIO(json.dumps(OR_DOC)))
        path = tmp_path / "copy.json"
        serialize_game(game, path)
        again = parse_game(path)
        assert np.array_equal(game.values, again.values)


class TestSelectors:
    def test_profile_parsing(self):
        assert parse_profile(None, 3).p.tolist() == [0.5, 0.5, 0.5]
        assert parse_profile("0.25", 3).p.tolist() == [0.25, 0.25, 0.25]
        assert parse_profile("0.1,0.2,0.3", 3).p.tolist() == [0.1, 0.2, 0.3]
        with pytest.raises(ValidationError):
            parse_profile("0.1,0.2", 3)
        with pytest.raises(ValidationError):
            parse_profile("zero", 3)

    def test_subset_selectors(self):
        assert parse_subsets("all", 2) == [0, 1, 2, 3]
        assert parse_subsets("singletons", 3) == [1, 2, 4]
        assert parse_subsets("pairs", 3) == [0b011, 0b101, 0b110]
        assert parse_subsets("1,2;3;0", 3) == [0b011, 0b100, 0]
        with pytest.raises(ValidationError):
            parse_subsets("all", 17)
        with pytest.raises(ValidationError):
            parse_subsets("4", 3)

    def test_subset_formatting(self):
        assert format_subset(0) == "{}"
        assert format_subset(0b101) == "{1,3}"


class TestAnalyze:
    def test_or_game_csv_rows(self, tmp_path, capsys):
        rc = main(["analyze", write_game(tmp_path, OR_DOC)])
        assert rc == 0
        table = read_csv(capsys.readouterr().out)
        assert table[("{1}", "Phi_B")] == 0.5
        assert table[("{2}", "Phi_B")] == 0.5
        assert table[("{1,2}", "Phi_B")] == 1.0
        assert table[("{}", "Phi_B")] == 0.0
        assert table[("{1}", "I_B")] == 0.5
        assert table[("{1,2}", "I_B")] == -1.0
        assert table[("{1}", "Phi_Sh")] == 0.5
        assert ("{}", "r") not in table

    def test_scalar_profile_replication(self, tmp_path, capsys):
        rc = main(["analyze", write_game(tmp_path, OR_DOC), "--p", "0.25", "--subsets", "1"])
        assert rc == 0
        table = read_csv(capsys.readouterr().out)
        assert table[("{1}", "Phi_B")] == pytest.approx(0.75)  # 1 - p2

    def test_singleton_selector_row_count(self, tmp_path, capsys):
        rc = main(["analyze", write_game(tmp_path, OR_DOC), "--subsets", "singletons"])
        assert rc == 0
        out = capsys.readouterr().out
        assert len(out.strip().splitlines()) == 1 + 2 * 4  # header + 4 indexes per player

    def test_text_format_and_out_file(self, tmp_path):
        out = tmp_path / "report.txt"
        rc = main(
            ["analyze", write_game(tmp_path, OR_DOC), "--format", "text", "--out", str(out)]
        )
        assert rc == 0
        assert "Phi_B" in out.read_text()

    def test_missing_file_is_a_validation_failure(self, capsys):
        assert main(["analyze", "no/such/game.json"]) == 1

    def test_bad_flag_exits_one(self, tmp_path, capsys):
        assert main(["analyze", write_game(tmp_path, OR_DOC), "--format", "xml"]) == 1


class TestApproximate:
    def test_or_game_first_player(self, tmp_path, capsys):
        rc = main(
            ["approximate", write_game(tmp_path, OR_DOC), "--subset", "1", "--format", "csv"]
        )
        assert rc == 0
        table = read_csv(capsys.readouterr().out)
        assert table[("{}", "coeff")] == 0.5
        assert table[("{1}", "coeff")] == 0.5
        assert table[("{1}", "I_B")] == 0.5
        assert table[("{1}", "residual")] == 0.125

    def test_full_subset_has_zero_residual(self, tmp_path, capsys):
        rc = main(
            ["approximate", write_game(tmp_path, OR_DOC), "--subset", "1,2", "--format", "csv"]
        )
        assert rc == 0
        table = read_csv(capsys.readouterr().out)
        assert table[("{1,2}", "residual")] == pytest.approx(0.0, abs=1e-12)

    def test_unanimity_recovered_exactly(self, tmp_path, capsys):
        doc = {"version": 1, "n": 3, "unanimity": {"players": [1, 2]}}
        rc = main(
            ["approximate", write_game(tmp_path, doc), "--subset", "1,2,3", "--format", "csv"]
        )
        assert rc == 0
        table = read_csv(capsys.readouterr().out)
        assert table[("{1,2}", "coeff")] == pytest.approx(1.0, abs=1e-12)
        assert table[("{1}", "coeff")] == pytest.approx(0.0, abs=1e-12)

    def test_text_labels_the_leading_coefficient(self, tmp_path, capsys):
        rc = main(["approximate", write_game(tmp_path, OR_DOC), "--subset", "1"])
        assert rc == 0
        assert "interaction index" in capsys.readouterr().out


class TestVerify:
    def test_or_game_passes(self, tmp_path, capsys):
        rc = main(["verify", write_game(tmp_path, OR_DOC)])
        out = capsys.readouterr().out
        assert rc == 0
        assert "all checks passed" in out
        assert out.count("PASS") == 5

    def test_injected_fault_is_caught(self, tmp_path, capsys):
        rc = main(["verify", write_game(tmp_path, OR_DOC), "--inject-fault"])
        out = capsys.readouterr().out
        assert rc == 2
        assert "FAIL" in out
        assert "four-way-influence" in out

    def test_nonuniform_profile(self, tmp_path, capsys):
        rc = main(["verify", write_game(tmp_path, OR_DOC), "--p", "0.3,0.8", "--trials", "4"])
        assert rc == 0


class TestGenerate:
    def test_weighted_voting_to_file(self, tmp_path):
        out = tmp_path / "wv.json"
        rc = main(
            ["generate", "weighted-voting", "--quota", "3", "--weights", "2,2,1", "--out", str(out)]
        )
        assert rc == 0
        game = parse_game(out)
        assert game.values.tolist() == [0, 0, 0, 1, 0, 1, 1, 1]

    def test_unanimity_to_stdout(self, capsys):
        rc = main(["generate", "unanimity", "--n", "2", "--players", "1,2"])
        assert rc == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["values"] == [0, 0, 0, 1]

    def test_random_is_reproducible(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            rc = main(["generate", "random", "--n", "5", "--seed", "11", "--out", str(path)])
            assert rc == 0
        assert a.read_text() == b.read_text()

    def test_missing_options_fail_validation(self):
        assert main(["generate", "weighted-voting"]) == 1
        assert main(["generate", "unanimity", "--n", "2"]) == 1
        assert main(["generate", "random"]) == 1

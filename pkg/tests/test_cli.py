"""Command line surface: output formats, exit codes, cap handling."""

import json

import pytest

from chorddiag import oracle
from chorddiag.cli import main
from chorddiag.series import series_from_json_dict


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSeries:
    def test_two_connected_plain(self, capsys):
        code, out, _ = run(capsys, "series", "--family", "C2", "--order", "6")
        assert code == 0
        assert out.strip() == "0, 0, 1, 1, 7, 63, 729"

    def test_all_diagrams_plain(self, capsys):
        code, out, _ = run(capsys, "series", "--family", "D", "--order", "3")
        assert code == 0
        assert out.strip() == "1, 1, 3, 15"

    def test_json_round_trip(self, capsys):
        code, out, _ = run(
            capsys, "series", "--family", "S", "--order", "6", "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        series = series_from_json_dict(data)
        assert [int(c) for c in series.coefficients] == [1, 1, 2, 10, 82, 898, 12018]

    def test_csv(self, capsys):
        code, out, _ = run(
            capsys, "series", "--family", "C1", "--order", "4", "--format", "csv"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "index,num,den"
        assert lines[1:] == ["0,0,1", "1,1,1", "2,0,1", "3,3,1", "4,20,1"]

    def test_unknown_family_exits_2(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["series", "--family", "X"])
        assert info.value.code == 2


class TestEnumerate:
    def test_two_connected_count(self, capsys):
        code, out, _ = run(
            capsys,
            "enumerate", "--chords", "4", "--class", "2connected", "--count-only",
        )
        assert code == 0
        assert out.strip() == "7"

    def test_all_count(self, capsys):
        code, out, _ = run(
            capsys, "enumerate", "--chords", "2", "--class", "all", "--count-only"
        )
        assert code == 0
        assert out.strip() == "3"

    def test_connected_count(self, capsys):
        code, out, _ = run(
            capsys,
            "enumerate", "--chords", "3", "--class", "connected", "--count-only",
        )
        assert code == 0
        assert out.strip() == "4"

    def test_k_class_count(self, capsys):
        code, out, _ = run(
            capsys, "enumerate", "--chords", "3", "--class", "k:3", "--count-only"
        )
        assert code == 0
        assert out.strip() == "1"

    def test_count_json(self, capsys):
        code, out, _ = run(
            capsys,
            "enumerate", "--chords", "5", "--class", "connected",
            "--count-only", "--format", "json",
        )
        assert code == 0
        assert json.loads(out) == {"n": 5, "class": "connected", "count": "248"}

    def test_listing_order_and_format(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--chords", "2", "--class", "all")
        assert code == 0
        assert out.splitlines() == ["2: 2 1 4 3", "2: 3 4 1 2", "2: 4 3 2 1"]

    def test_cap_exceeded(self, capsys):
        code, _, err = run(capsys, "enumerate", "--chords", "9", "--count-only")
        assert code == 2
        assert "cap" in err

    def test_env_raises_cap(self, capsys, monkeypatch):
        if oracle.census_backend() != "compiled":
            pytest.skip("n=7 census without the compiled kernel is slow")
        monkeypatch.setenv("CHORDDIAG_CAP", "7")
        code, out, _ = run(
            capsys,
            "enumerate", "--chords", "7", "--class", "connected", "--count-only",
        )
        assert code == 0
        assert out.strip() == "38232"

    def test_env_cap_hard_bound(self, capsys, monkeypatch):
        monkeypatch.setenv("CHORDDIAG_CAP", "11")
        code, _, err = run(capsys, "enumerate", "--chords", "4", "--count-only")
        assert code == 2
        assert "1..10" in err

    def test_bad_class(self, capsys):
        code, _, err = run(capsys, "enumerate", "--chords", "3", "--class", "nope")
        assert code == 2
        assert "unknown class" in err


class TestVerify:
    def test_lemmas(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "lemmas", "--order", "20")
        assert code == 0
        assert out.count("PASS") == 3

    def test_tables(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "tables", "--order", "7")
        assert code == 0
        assert "FAIL" not in out

    def test_proposition(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "proposition", "--order", "12")
        assert code == 0
        assert "FAIL" not in out

    def test_chain_rule(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "chain-rule", "--order", "8")
        assert code == 0
        assert out.count("PASS") == 3

    def test_bijection(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "bijection", "--order", "5")
        assert code == 0
        assert out.count("PASS") == 4  # n = 2..5

    def test_failure_exits_1(self, capsys, monkeypatch):
        from chorddiag import cli

        def broken_suite(order, cap):
            return [("forced failure", False, "injected")]

        monkeypatch.setitem(cli.SUITES, "lemmas", broken_suite)
        code, out, _ = run(capsys, "verify", "--suite", "lemmas")
        assert code == 1
        assert "FAIL forced failure" in out
        assert "injected" in out


class TestAlien:
    def test_two_connected_json(self, capsys):
        code, out, _ = run(capsys, "alien", "--family", "C2", "--order", "5")
        assert code == 0
        data = json.loads(out)
        assert data["family"] == "C2"
        assert data["e_exp"] == {"num": "-2", "den": "1"}
        assert data["sqrt_two_pi_exp"] == -1
        nums = [c["num"] for c in data["series"]["coefficients"]]
        dens = [c["den"] for c in data["series"]["coefficients"]]
        assert nums == ["1", "-6", "-4", "-218", "-890", "-196838"]
        assert dens == ["1", "1", "1", "3", "1", "15"]

    def test_connected_plain(self, capsys):
        code, out, _ = run(
            capsys, "alien", "--family", "C", "--order", "3", "--format", "plain"
        )
        assert code == 0
        assert "e^-1" in out
        assert "1, -5/2, -43/8, -579/16" in out


class TestEstimate:
    def test_leading_term_row(self, capsys):
        code, out, _ = run(
            capsys,
            "estimate", "--family", "C2", "--terms", "1",
            "--n-from", "6", "--n-to", "6",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,R,estimate,exact,rel_error,norm_error"
        fields = lines[1].split(",")
        assert fields[0] == "6"
        assert fields[1] == "1"
        assert fields[2].startswith("1406.810269")
        assert fields[3] == "729"

    def test_connected_family(self, capsys):
        code, out, _ = run(
            capsys,
            "estimate", "--family", "C", "--terms", "2",
            "--n-from", "20", "--n-to", "22",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 4
        for line in lines[1:]:
            rel = float(line.split(",")[4])
            assert rel < 0.05

    def test_range_validation(self, capsys):
        code, _, err = run(
            capsys,
            "estimate", "--family", "C2", "--terms", "1",
            "--n-from", "8", "--n-to", "6",
        )
        assert code == 2
        assert "n-to" in err


class TestQft:
    def test_phi3(self, capsys):
        code, out, _ = run(capsys, "qft", "--model", "phi3", "--order", "2")
        assert code == 0
        assert out.strip() == "1, 5/24, 385/1152"

    def test_custom_action(self, capsys):
        code, out, _ = run(
            capsys,
            "qft", "--quadratic", "1", "--coupling", "4=1", "--order", "1",
        )
        assert code == 0
        assert out.strip() == "1, 1/8"

    def test_graph_dump(self, capsys):
        code, out, _ = run(capsys, "qft", "--graph-of", "2: 3 4 1 2")
        assert code == 0
        assert out.strip() == "3: 1-3 r2"

    def test_phi3_json(self, capsys):
        code, out, _ = run(
            capsys, "qft", "--model", "phi3", "--order", "1", "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        assert data["coefficients"] == [
            {"num": "1", "den": "1"},
            {"num": "5", "den": "24"},
        ]

    def test_bad_coupling(self, capsys):
        code, _, err = run(capsys, "qft", "--coupling", "4:x", "--order", "1")
        assert code == 2
        assert "coupling" in err

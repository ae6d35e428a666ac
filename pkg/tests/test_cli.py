import json

import pytest

from pglab.cli import main
from pglab.polyadic import as_table
from pglab.serialize import polyadic_to_doc


@pytest.fixture
def doc_path(tmp_path, structs):
    def write(name, table_form=False):
        p = structs[name]
        doc = polyadic_to_doc(as_table(p) if table_form else p)
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(doc))
        return str(path)

    return write


class TestVerify:
    def test_valid_table(self, doc_path, capsys):
        rc = main(["verify", doc_path("T2b", table_form=True)])
        out = capsys.readouterr().out
        assert rc == 0
        assert "associative: yes" in out and "solvable: yes" in out

    def test_corrupted_table(self, tmp_path, structs, capsys):
        doc = polyadic_to_doc(as_table(structs["T2b"]))
        doc["presentation"]["flat"][0] = 0
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        assert main(["verify", str(path)]) == 1

    def test_derived_gate_failure(self, tmp_path, structs):
        doc = polyadic_to_doc(structs["T9"])
        doc["presentation"]["b"] = 1
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        assert main(["verify", str(path)]) == 1

    def test_json_output(self, doc_path, capsys):
        rc = main(["--json", "verify", doc_path("T3")])
        payload = json.loads(capsys.readouterr().out)
        assert rc == 0
        assert payload["dornte"] is True


class TestAnalyze:
    def test_simplicity(self, doc_path, capsys):
        rc = main(["analyze", doc_path("T9"), "--simplicity"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "UAS: no" in out and "GTS: yes" in out and "GTS*: yes" in out

    def test_skew(self, doc_path, capsys):
        rc = main(["analyze", doc_path("T3"), "--skew"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "1↦2" in out and "2↦1" in out

    def test_congruences(self, doc_path, capsys):
        rc = main(["analyze", doc_path("T4"), "--congruences"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "congruences: 3" in out and "modular: yes" in out

    def test_json_roundtrip(self, doc_path, capsys):
        main(["--json", "analyze", doc_path("T9"), "--simplicity", "--normal"])
        first = json.loads(capsys.readouterr().out)
        main(["--json", "analyze", doc_path("T9"), "--simplicity", "--normal"])
        second = json.loads(capsys.readouterr().out)
        assert first == second
        assert first["simplicity"]["gts_star"] is True

    def test_quotient_flag(self, doc_path, capsys):
        rc = main(["analyze", doc_path("V4swap"), "--quotient", "0,3"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "2 classes" in out


class TestCensus:
    def test_exhaustive(self, capsys):
        rc = main(["census", "--order", "2", "--arity", "3", "--mode", "exhaustive"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "2 classes" in out

    def test_cap_exit_code(self, capsys):
        rc = main(["census", "--order", "3", "--arity", "3", "--mode", "exhaustive"])
        assert rc == 2

    def test_env_cap_override(self, doc_path, monkeypatch, capsys):
        monkeypatch.setenv("PGLAB_AXIOM_COST_CAP", "4")
        rc = main(["verify", doc_path("T2b", table_form=True)])
        assert rc == 2

    def test_flag_cap_override(self, doc_path):
        rc = main(["--axiom-cost-cap", "4", "verify", doc_path("T2b", table_form=True)])
        assert rc == 2


class TestHomIsoQuotient:
    def test_hom_enumerate(self, doc_path, capsys):
        rc = main(["hom", "--from", doc_path("T3"), "--to", doc_path("T3"), "--enumerate"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "3 homomorphisms" in out

    def test_hom_map_valid(self, doc_path, capsys):
        rc = main([
            "hom", "--from", doc_path("T3"), "--to", doc_path("T3"), "--map", "0,2,1",
        ])
        out = capsys.readouterr().out
        assert rc == 0
        assert "a = 0" in out

    def test_hom_map_invalid(self, doc_path, capsys):
        rc = main([
            "hom", "--from", doc_path("T3"), "--to", doc_path("T3"), "--map", "1,2,0",
        ])
        out = capsys.readouterr().out
        assert rc == 1
        assert "witness (0, 0, 0)" in out

    def test_iso(self, doc_path, capsys):
        rc = main(["iso", "--from", doc_path("T4inv"), "--to", doc_path("T4")])
        out = capsys.readouterr().out
        assert rc == 0
        assert "not isomorphic" in out

    def test_quotient_subgroup(self, doc_path, capsys):
        rc = main(["quotient", doc_path("V4swap"), "--subgroup", "0,3"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "2 classes" in out

    def test_quotient_congruence(self, doc_path, capsys):
        rc = main([
            "quotient", doc_path("T9"), "--congruence", "0,3,6|1,4,7|2,5,8",
        ])
        out = capsys.readouterr().out
        assert rc == 0
        assert "order 3" in out

    def test_quotient_rejects_non_normal(self, doc_path, capsys):
        rc = main(["quotient", doc_path("T4inv"), "--subgroup", "1"])
        assert rc == 1


class TestEmittedJsonRoundTrip:
    def test_census_documents_reload_and_reanalyze(self, tmp_path, capsys):
        main(["--json", "census", "--order", "2", "--arity", "3", "--mode", "exhaustive"])
        payload = json.loads(capsys.readouterr().out)
        for i, entry in enumerate(payload["classes"]):
            path = tmp_path / f"class{i}.json"
            path.write_text(json.dumps(entry["polyadic"]))
            rc = main(["--json", "analyze", str(path), "--simplicity"])
            report = json.loads(capsys.readouterr().out)["simplicity"]
            assert rc == 0
            for flag in ("uas", "gts", "gts_star", "reduced"):
                assert report[flag] == entry["report"][flag]


class TestParseFailures:
    def test_missing_file(self, tmp_path):
        assert main(["verify", str(tmp_path / "none.json")]) == 1

    def test_wrong_kind(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(json.dumps({"kind": "group", "order": 1, "table": [[0]]}))
        assert main(["verify", str(path)]) == 1

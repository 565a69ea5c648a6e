import json

import pytest

from wciq.cli import main
from wciq.serialize import canonical_json

REF_PAIR = {
    "weights": [1] * 62 + [6, 10, 15],
    "degrees": [16, 21, 25, 30],
}
SMALL_PAIR = {"weights": [1, 1, 1, 1, 1, 2], "degrees": [4]}
MAP_PAIR = {"weights": [1, 6, 10, 15], "degrees": [16, 21, 25, 30]}


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def write_json(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(canonical_json(data), encoding="utf-8")
    return str(p)


@pytest.fixture
def ref_file(tmp_path):
    return write_json(tmp_path, "ref.json", REF_PAIR)


@pytest.fixture
def small_file(tmp_path):
    return write_json(tmp_path, "small.json", SMALL_PAIR)


@pytest.fixture
def map_file(tmp_path):
    return write_json(tmp_path, "map_pair.json", MAP_PAIR)


class TestAnalyze:
    def test_reference_is_refused_and_unfound(self, ref_file, capsys):
        code, out = run(["analyze", "--input", ref_file], capsys)
        assert code == 1
        report = json.loads(out)
        assert report["fano_index"] == 1
        assert report["construction"]["ok"] is False
        assert report["construction"]["failed_hypothesis"] == "pair_trivial"
        assert report["construction"]["witness"] == [62, 63, 64]
        assert report["search"] == {
            "mode": "strong", "found": False, "partition": None}
        assert report["regularity"]["strictly_regular"] is True
        assert report["regularity"]["pair_trivial"] is False
        assert report["pair_trivial_literal"] is False

    def test_small_instance_succeeds(self, small_file, capsys):
        code, out = run(["analyze", "--input", small_file], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["construction"]["ok"] is True
        assert report["construction"]["partition"]["parts"] == [
            [0, 1, 2], [3, 4, 5]]
        assert report["construction"]["deltas"] == [2]
        assert report["construction"]["classification"] == {
            "valid": True, "nice": True, "strong": True}
        assert report["search"]["found"] is True
        assert report["family"]["built"] is True
        assert report["poset_map"]["all_ok"] is True

    def test_seed_is_echoed(self, small_file, capsys):
        code, out = run(
            ["analyze", "--input", small_file, "--seed", "7"], capsys)
        assert code == 0
        assert json.loads(out)["seed"] == 7

    def test_deterministic_modulo_timings(self, ref_file, capsys):
        _, first = run(["analyze", "--input", ref_file], capsys)
        _, second = run(["analyze", "--input", ref_file], capsys)
        a, b = json.loads(first), json.loads(second)
        a.pop("timings")
        b.pop("timings")
        assert a == b

    def test_text_format(self, small_file, capsys):
        code, out = run(
            ["analyze", "--input", small_file, "--format", "text"], capsys)
        assert code == 0
        assert "fano_index: 3" in out.splitlines()

    def test_nice_mode_search_on_reference(self, ref_file, capsys):
        code, out = run(
            ["analyze", "--input", ref_file, "--mode", "nice"], capsys)
        # a nice partition exists even though the construction is refused
        assert code == 0
        assert json.loads(out)["search"]["found"] is True


class TestComplex:
    def test_reference_complexes(self, map_file, capsys):
        code, out = run(["complex", "--input", map_file], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["singular_complex"]["facets"] == [[1, 2], [1, 3], [2, 3]]
        assert report["singular_complex"]["vertex_weights"] == {
            "1": 6, "2": 10, "3": 15}
        assert report["singular_sr"]["generators"] == [[1, 2, 3]]
        bases = report["base_complexes"]
        assert bases["1"] == {"degree": 16, "facets": [[1, 3], [2, 3]]}
        assert bases["2"] == {"degree": 21, "facets": [[1, 2], [2, 3]]}
        assert bases["3"] == {"degree": 25, "facets": [[1, 2], [1, 3]]}
        assert bases["4"] == {"degree": 30, "facets": []}

    def test_dp_cap_limits(self, map_file, capsys):
        code, _ = run(
            ["complex", "--input", map_file, "--dp-cap", "1"], capsys)
        assert code == 3


class TestNef:
    def test_find_strong_on_reference(self, ref_file, capsys):
        code, out = run(["nef", "find", "--input", ref_file], capsys)
        assert code == 1
        assert json.loads(out)["found"] is False

    def test_find_nice_on_reference(self, ref_file, capsys):
        code, out = run(
            ["nef", "find", "--input", ref_file, "--mode", "nice"], capsys)
        assert code == 0
        assert json.loads(out)["found"] is True

    def test_find_budget(self, ref_file, capsys):
        code, _ = run(
            ["nef", "find", "--input", ref_file, "--mode", "any",
             "--node-budget", "3"], capsys)
        assert code == 3

    def test_construct_small(self, small_file, capsys):
        code, out = run(["nef", "construct", "--input", small_file], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["ok"] is True
        assert report["partition"]["parts"] == [[0, 1, 2], [3, 4, 5]]
        assert report["deltas"] == [2]
        assert report["classification"]["strong"] is True
        assert report["family"]["im_phi"] == [2]

    def test_construct_reference_refused(self, ref_file, capsys):
        code, out = run(["nef", "construct", "--input", ref_file], capsys)
        assert code == 1
        report = json.loads(out)
        assert report["ok"] is False
        assert report["failed_hypothesis"] == "pair_trivial"
        assert report["witness"] == [62, 63, 64]

    def test_classify(self, small_file, tmp_path, capsys):
        part = write_json(tmp_path, "part.json",
                          {"parts": [[0, 1, 2], [3, 4, 5]]})
        code, out = run(
            ["nef", "classify", "--input", small_file,
             "--partition", part], capsys)
        assert code == 0
        assert json.loads(out)["classification"] == {
            "valid": True, "nice": True, "strong": True}

    def test_classify_needs_partition(self, small_file, capsys):
        code, _ = run(["nef", "classify", "--input", small_file], capsys)
        assert code == 2


class TestPosetmap:
    def test_build_reference_family(self, map_file, capsys):
        code, out = run(["posetmap", "build", "--input", map_file], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["built"] is True
        assert report["family"]["im_phi"] == [2, 3, 5, 6, 10, 15]
        assert report["family"]["injections"]["2"] == {"1": 1, "2": 4}
        assert report["family"]["injections"]["15"] == {"3": 4}
        assert report["fibers"] == {"4": [1, 2, 3]}

    def test_verify_built_family(self, map_file, tmp_path, capsys):
        _, out = run(["posetmap", "build", "--input", map_file], capsys)
        fam = write_json(tmp_path, "fam.json", json.loads(out)["family"])
        code, out = run(
            ["posetmap", "verify", "--input", map_file, "--family", fam],
            capsys)
        assert code == 0
        report = json.loads(out)["poset_map"]
        assert report["all_ok"] is True
        assert report["scope"] == "all-faces"
        assert report["family_violations"] == []

    def test_verify_rejects_tampered_family(self, map_file, tmp_path, capsys):
        _, out = run(["posetmap", "build", "--input", map_file], capsys)
        fam_data = json.loads(out)["family"]
        # degree 21 is odd, no even weights can reach it
        fam_data["injections"]["2"]["1"] = 2
        fam = write_json(tmp_path, "bad.json", fam_data)
        code, out = run(
            ["posetmap", "verify", "--input", map_file, "--family", fam],
            capsys)
        assert code == 1
        report = json.loads(out)["poset_map"]
        assert report["all_ok"] is False
        assert report["scope"] == "invariants-failed"

    def test_verify_needs_family(self, map_file, capsys):
        code, _ = run(["posetmap", "verify", "--input", map_file], capsys)
        assert code == 2

    def test_build_refused_on_irregular_pair(self, tmp_path, capsys):
        pair = write_json(tmp_path, "irr.json",
                          {"weights": [2, 2, 2], "degrees": [2, 3]})
        code, out = run(["posetmap", "build", "--input", pair], capsys)
        assert code == 1
        report = json.loads(out)
        assert report["built"] is False
        assert report["failed_hypothesis"] == "strictly_regular"


class TestRealize:
    def test_plain_realization(self, tmp_path, capsys):
        cx = write_json(tmp_path, "cx.json",
                        {"n_vertices": 4,
                         "facets": [[0, 1], [0, 2], [0, 3],
                                    [1, 2], [1, 3], [2, 3]]})
        code, out = run(["realize", "--complex", cx], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["weights"] == ["30", "154", "273", "715"]
        assert report["prime_assignment"]["0,1"] == 2
        assert report["prime_assignment"]["2,3"] == 13
        assert report["round_trip"] is True

    def test_map_instance(self, tmp_path, capsys):
        cx = write_json(tmp_path, "cx.json",
                        {"n_vertices": 3,
                         "facets": [[0, 1], [0, 2], [1, 2]]})
        mp = write_json(tmp_path, "mp.json",
                        {"target": {"n_vertices": 3, "facets": [[0, 1, 2]]},
                         "assignment": {"0": 0, "1": 1, "2": 2}})
        code, out = run(
            ["realize", "--complex", cx, "--map", mp,
             "--pad", "1", "--ones", "2"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["weights"] == ["1", "1", "6", "10", "15"]
        assert report["degrees"] == ["12", "20", "30", "30"]
        assert report["planted_assignment"] == {"2": 0, "3": 1, "4": 2}
        assert report["validation"]["simplicial"] is True
        assert report["validation"]["weighted"] is True
        assert report["validation"]["contracts_face"] is None

    def test_map_file_shape_checked(self, tmp_path, capsys):
        cx = write_json(tmp_path, "cx.json",
                        {"n_vertices": 2, "facets": [[0, 1]]})
        mp = write_json(tmp_path, "mp.json", {"assignment": {}})
        code, _ = run(["realize", "--complex", cx, "--map", mp], capsys)
        assert code == 2

    def test_contracting_map_rejected(self, tmp_path, capsys):
        cx = write_json(tmp_path, "cx.json",
                        {"n_vertices": 3,
                         "facets": [[0, 1], [0, 2], [1, 2]]})
        mp = write_json(tmp_path, "mp.json",
                        {"target": {"n_vertices": 2, "facets": [[0, 1]]},
                         "assignment": {"0": 0, "1": 1, "2": 0}})
        code, _ = run(["realize", "--complex", cx, "--map", mp], capsys)
        assert code == 2


class TestOracle:
    def test_clean_small_pair(self, tmp_path, capsys):
        pair = write_json(tmp_path, "p.json",
                          {"weights": [1, 1, 2, 3], "degrees": [4, 6]})
        code, out = run(["oracle", "--input", pair], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["divergences"] == []
        assert report["representability"]["1"] == {"fast": True, "brute": True}
        assert set(report["partitions"]) == {"any", "nice", "strong"}

    def test_too_many_heavy(self, tmp_path, capsys):
        pair = write_json(tmp_path, "p.json",
                          {"weights": [2] * 13, "degrees": [4]})
        code, _ = run(["oracle", "--input", pair], capsys)
        assert code == 3

    def test_degree_too_large(self, tmp_path, capsys):
        pair = write_json(tmp_path, "p.json",
                          {"weights": [1, 2], "degrees": [201]})
        code, _ = run(["oracle", "--input", pair], capsys)
        assert code == 3


class TestInputHandling:
    def test_missing_input_flag(self, capsys):
        assert main(["analyze"]) == 2

    def test_unreadable_file(self, capsys):
        assert main(["analyze", "--input", "/no/such/file.json"]) == 2

    def test_invalid_json(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{not json", encoding="utf-8")
        assert main(["analyze", "--input", str(p)]) == 2

    def test_missing_weights_key(self, tmp_path, capsys):
        p = write_json(tmp_path, "p.json", {"degrees": [2]})
        assert main(["analyze", "--input", p]) == 2

    def test_output_is_canonical_json(self, small_file, capsys):
        _, out = run(["complex", "--input", small_file], capsys)
        assert out.endswith("\n")
        assert canonical_json(json.loads(out)) == out

import json

import pytest

from hvgrgs import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_exact_edge_prob(capsys):
    code, out, _ = run_cli(
        capsys, "exact", "edge-prob", "--n", "4", "--i", "2", "--j", "4", "--mode", "strong"
    )
    assert code == 0
    assert out.strip() == "2/15"


def test_exact_expected_edges(capsys):
    code, out, _ = run_cli(capsys, "exact", "expected-edges", "--n", "4", "--mode", "strong")
    assert (code, out.strip()) == (0, "47/15")
    code, out, _ = run_cli(capsys, "exact", "expected-edges", "--n", "4", "--mode", "weak")
    assert (code, out.strip()) == (0, "59/15")


def test_exact_expected_degree(capsys):
    code, out, _ = run_cli(capsys, "exact", "expected-degree", "--n", "4", "--i", "1", "--mode", "strong")
    assert (code, out.strip()) == (0, "1")


def test_exact_json_row(capsys):
    code, out, _ = run_cli(
        capsys, "exact", "edge-prob", "--n", "4", "--i", "2", "--j", "4", "--format", "json"
    )
    assert code == 0
    assert json.loads(out) == [
        {"n": 4, "i": 2, "j": 4, "mode": "strong", "exact": "2/15"}
    ]


def test_exact_decimal_rendering(capsys):
    code, out, _ = run_cli(
        capsys, "exact", "edge-prob", "--n", "4", "--i", "2", "--j", "4", "--decimal", "4"
    )
    assert (code, out.strip()) == (0, "0.1333")


def test_exact_invalid_pair_exits_two(capsys):
    code, _, err = run_cli(capsys, "exact", "edge-prob", "--n", "4", "--i", "3", "--j", "2")
    assert code == 2
    assert err.startswith("error:") and "\n" not in err.strip()


def test_exact_difference_mode_only_for_edge_prob(capsys):
    code, out, _ = run_cli(
        capsys, "exact", "edge-prob", "--n", "4", "--i", "1", "--j", "3",
        "--mode", "weak-minus-strong",
    )
    assert (code, out.strip()) == (0, "1/3")
    code, _, err = run_cli(
        capsys, "exact", "expected-edges", "--n", "4", "--mode", "weak-minus-strong"
    )
    assert code == 2 and "strong or weak" in err


def test_series_q_moments(capsys):
    code, out, _ = run_cli(capsys, "series", "q-moments", "--order", "5", "--format", "json")
    rows = json.loads(out)
    assert code == 0
    assert rows[0] == {"n": 2, "coeff": "1", "expected_edges": "1"}
    assert rows[1] == {"n": 3, "coeff": "5/3", "expected_edges": "2"}
    assert rows[2] == {"n": 4, "coeff": "47/24", "expected_edges": "47/15"}
    assert rows[3]["coeff"] == "113/60"


def test_series_sum_p(capsys):
    code, out, _ = run_cli(capsys, "series", "sum-p", "--order", "3", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["order"] == 3
    assert payload["coeffs"] == [
        {"x": 0, "poly": {"q^0": "1"}},
        {"x": 1, "poly": {"q^0": "1"}},
        {"x": 2, "poly": {"q^1": "2"}},
        {"x": 3, "poly": {"q^2": "5"}},
    ]


def test_series_pk(capsys):
    code, out, _ = run_cli(capsys, "series", "pk", "--k", "1", "--order", "3", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["coeffs"] == [
        {"x": 1, "poly": {"q^0": "1"}},
        {"x": 2, "poly": {"q^1": "1"}},
        {"x": 3, "poly": {"q^2": "1"}},
    ]


def test_series_order_guard(capsys):
    code, _, err = run_cli(capsys, "series", "q-moments", "--order", "17")
    assert code == 2 and "order" in err


def test_hvg_json(capsys):
    code, out, _ = run_cli(capsys, "hvg", "--seq", "12122", "--format", "json")
    assert code == 0
    assert json.loads(out) == {
        "n": 5,
        "mode": "strong",
        "edges": [[1, 2], [2, 3], [2, 4], [3, 4], [4, 5]],
    }


def test_hvg_scan_algorithm_agrees(capsys):
    _, fast, _ = run_cli(capsys, "hvg", "--seq", "1213121", "--mode", "weak", "--format", "json")
    _, slow, _ = run_cli(
        capsys, "hvg", "--seq", "1213121", "--mode", "weak", "--algorithm", "scan", "--format", "json"
    )
    assert fast == slow


def test_enumerate_plain_and_partitions(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--n", "3")
    assert code == 0
    assert out.splitlines() == ["111", "112", "121", "122", "123"]
    code, out, _ = run_cli(capsys, "enumerate", "--n", "3", "--k", "2", "--partitions")
    assert out.splitlines() == ["{1,2}|{3}", "{1,3}|{2}", "{1}|{2,3}"]


def test_enumerate_prefix(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--n", "4", "--prefix", "12")
    assert code == 0
    assert all(line.startswith("12") for line in out.splitlines())
    assert len(out.splitlines()) == 10


def test_enumerate_guard(capsys, monkeypatch):
    code, _, err = run_cli(capsys, "enumerate", "--n", "40")
    assert code == 2 and "--force" in err
    monkeypatch.setenv("HVGRGS_NMAX", "2")
    code, _, err = run_cli(capsys, "enumerate", "--n", "3")
    assert code == 2 and "HVGRGS_NMAX" in err
    monkeypatch.setenv("HVGRGS_NMAX", "5")
    code, out, _ = run_cli(capsys, "enumerate", "--n", "3")
    assert code == 0 and len(out.splitlines()) == 5


def test_numbers_values(capsys):
    assert run_cli(capsys, "numbers", "bell", "--n", "9")[1].strip() == "21147"
    assert run_cli(capsys, "numbers", "stirling", "--n", "4", "--k", "2")[1].strip() == "7"
    assert run_cli(capsys, "numbers", "bernoulli", "--n", "1")[1].strip() == "1/2"
    assert run_cli(capsys, "numbers", "psi", "--n", "1", "--t", "4")[1].strip() == "5"
    assert run_cli(capsys, "numbers", "theta", "--n", "2", "--t", "1")[1].strip() == "5"


def test_numbers_stirling_row_csv(capsys):
    code, out, _ = run_cli(capsys, "numbers", "stirling", "--n", "4", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "n,k,value"
    assert lines[1:] == ["4,0,0", "4,1,1", "4,2,7", "4,3,6", "4,4,1"]


def test_sample_sequences_deterministic(capsys):
    args = ["sample", "--n", "4", "--samples", "50", "--seed", "7", "--emit", "sequences"]
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second
    _, other_seed, _ = run_cli(
        capsys, "sample", "--n", "4", "--samples", "50", "--seed", "8", "--emit", "sequences"
    )
    assert first != other_seed


def test_sample_worker_count_invariance(capsys):
    base = ["sample", "--n", "5", "--samples", "40", "--seed", "3", "--emit", "sequences"]
    _, one, _ = run_cli(capsys, *base, "--workers", "1")
    _, three, _ = run_cli(capsys, *base, "--workers", "3")
    assert one == three


def test_sample_single_letter(capsys):
    code, out, _ = run_cli(
        capsys, "sample", "--n", "1", "--samples", "10", "--emit", "sequences"
    )
    assert code == 0
    assert out.splitlines() == ["1"] * 10


def test_sample_stats_csv(capsys):
    code, out, _ = run_cli(
        capsys,
        "sample", "--n", "4", "--samples", "400", "--seed", "1",
        "--stats", "V,Vw", "--emit", "stats", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "stat,samples,estimate,stderr"
    assert lines[1].startswith("V,400,") and lines[2].startswith("Vw,400,")


def test_sample_histogram(capsys):
    code, out, _ = run_cli(
        capsys,
        "sample", "--n", "4", "--samples", "300", "--seed", "2",
        "--stats", "V", "--emit", "histogram", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "stat,value,count"
    total = sum(int(line.split(",")[2]) for line in lines[1:])
    assert total == 300


def test_sample_mean_matches_exact_value(capsys):
    code, out, _ = run_cli(
        capsys,
        "sample", "--n", "4", "--samples", "100000", "--seed", "7",
        "--stats", "V", "--emit", "stats", "--format", "json",
    )
    assert code == 0
    row = json.loads(out)[0]
    assert abs(row["estimate"] - 47 / 15) < 3 * row["stderr"]


def test_sample_rejects_zero_samples(capsys):
    code, _, err = run_cli(capsys, "sample", "--n", "4", "--samples", "0")
    assert code == 2 and err.startswith("error:")


def test_sample_rejects_unknown_stat(capsys):
    code, _, err = run_cli(capsys, "sample", "--n", "4", "--samples", "5", "--stats", "bogus")
    assert code == 2 and "bogus" in err


def test_out_file(tmp_path, capsys):
    target = tmp_path / "rows.csv"
    code, out, _ = run_cli(
        capsys, "numbers", "bell", "--n", "4", "--format", "csv", "--out", str(target)
    )
    assert code == 0 and out == ""
    assert target.read_text().strip().splitlines()[1] == "4,15"


def test_verify_small(capsys):
    code, out, _ = run_cli(capsys, "verify", "--max-n", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert all(line.startswith("PASS") for line in lines)
    assert "checks passed" in lines[-1]


def test_verify_guard(capsys):
    code, _, err = run_cli(capsys, "verify", "--max-n", "10")
    assert code == 2 and "--slow" in err

import json

import pytest

import kdiamond as kd


def test_delta_coeffs_small():
    assert kd.delta_coeffs(1, 5) == [1, 3, 8, 18, 38, 75]


def brute_partitions(n):
    # p(n) by the standard coin-change recurrence
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways


def test_partition_coeffs_match_recurrence():
    assert kd.partition_coeffs(60) == brute_partitions(60)


def test_big_coefficients_are_exact_ints():
    c = kd.delta_coeffs(2, 400)
    assert all(isinstance(x, int) for x in c)
    assert c[400] > 2**64


def test_hyperbolic():
    assert kd.is_hyperbolic([-1, 0, 1])
    assert not kd.is_hyperbolic([1, 0, 1])
    assert kd.count_distinct_real_roots([-4, 8, -1, -5, 1, 1]) == 2


def test_turan_controls_on_partitions():
    p = kd.partition_coeffs(120)
    assert not kd.log_concave_at(p, 25)
    assert kd.log_concave_at(p, 26)
    assert not kd.turan3_at(p, 94)
    assert kd.turan3_at(p, 95)


def test_scan_and_mult():
    r = kd.scan(1, 3, horizon=300)
    assert r["N"] == 4
    assert kd.multiplicative_violations(1, 30, 30) == []


def test_verify_round_trip():
    row = kd.verify(1, 50)
    assert row["exact"] == "893362514"
    assert row["round_trip"] is True


def test_applicability():
    ok, witness, _ = kd.applicable(3)
    assert not ok and witness == 1
    assert kd.applicable(1)[0]


def test_audits():
    assert kd.audit_sandwich(1, 3512)["verdict"] == "certified_true"
    assert kd.audit_tail_sum("10", 2)["verdict"] == "certified_false"


def test_run_cli():
    code, out, _ = kd.run_cli(["coeffs", "--k", "1", "--n", "5"])
    assert code == 0
    assert json.loads(out.splitlines()[-1])["value"] == "75"
    assert kd.run_cli(["coeffs", "--k", "0"])[0] == 2


def test_bad_k_raises():
    with pytest.raises(Exception):
        kd.delta_coeffs(0, 5)

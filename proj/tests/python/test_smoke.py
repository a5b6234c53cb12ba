import pathlib

import numpy as np
import pytest

oamix = pytest.importorskip("oamix")

GOLDEN = pathlib.Path(__file__).resolve().parents[1] / "golden"


def test_catalog_matches_golden():
    t3 = oamix.catalog("czitrom-d-oofa")
    assert len(t3) == 24
    assert t3.to_csv() == (GOLDEN / "table3.csv").read_text()
    assert oamix.Design.read(str(GOLDEN / "table3.csv")) == t3
    t8 = oamix.catalog("ca-projection", a_max=100)
    assert t8.kind == "amount"
    assert sorted(set(t8.amounts)) == [24, 75, 76, 100]
    assert "ca-projection" in oamix.catalog_names()


def test_table3_report():
    t3 = oamix.catalog("czitrom-d-oofa")
    r = oamix.evaluate(t3, "scheffe-q", interactions="default")
    assert r["p"] == 13
    assert r["avg_pv"] == pytest.approx(13 / 24, abs=1e-10)
    assert r["max_pv"] == pytest.approx(0.922, abs=0.02)
    assert r["g_efficiency"] == pytest.approx(58.8, abs=1.0)
    se = {c["name"]: c["se"] for c in r["columns"]}
    assert se["z12"] == pytest.approx(0.32, abs=0.02)
    assert oamix.check_blocks(t3, "scheffe-q", interactions="default")["pass"]


def test_model_matrix_shape():
    names, x = oamix.model_matrix(oamix.catalog("ca-projection", 100), "ca-q", interactions="default")
    assert x.shape == (36, 17)
    assert names[0] == "1" and names[-1] == "blk"
    assert np.all(x[:, 0] == 1.0)


def test_pwo_and_expand():
    assert oamix.pwo_from_permutation([2, 1, 3], 3) == [-1, 1, 1]
    assert oamix.pwo_to_permutation([-1, 1, 1], [1, 2, 3], 3) == [2, 1, 3]
    assert len(oamix.enumerate_orderings([0.333, 0.333, 0.334])) == 6
    expanded = oamix.expand(oamix.catalog("czitrom-d"))
    assert len(expanded) == 24
    with pytest.raises(oamix.OamixError, match="AlreadyExpanded"):
        oamix.expand(expanded)


def test_fds_is_deterministic():
    t8 = oamix.catalog("ca-projection", 100)
    f1, v1 = oamix.fds(t8, "ca-q", interactions="default", samples=2000, seed=42)
    f2, v2 = oamix.fds(t8, "ca-q", interactions="default", samples=2000, seed=42, threads=3)
    assert np.array_equal(v1, v2)
    assert np.all(np.diff(v1) >= 0)
    assert f1[0] == pytest.approx(0.5 / 2000)


def test_fit_and_power():
    t3 = oamix.catalog("czitrom-d-oofa")
    names, x = oamix.model_matrix(t3, "scheffe-q")
    beta = np.arange(1.0, x.shape[1] + 1)
    res = oamix.fit(t3, "scheffe-q", y=list(x @ beta))
    est = [c["estimate"] for c in res["coefficients"]]
    assert np.allclose(est, beta, atol=1e-8)
    rows = oamix.power(t3, "scheffe-q", interactions="default")
    assert all(0.0 <= r["power"] <= 1.0 for r in rows)
    assert oamix.t_test_power(4.0, 3.0, 0.05) == pytest.approx(0.754984, abs=1e-5)


def test_errors():
    with pytest.raises(oamix.OamixError, match="SingularMatrix"):
        oamix.evaluate(oamix.catalog("czitrom-d"), "scheffe-q", pwo=True, interactions="full")
    with pytest.raises(oamix.OamixError, match="SpecError"):
        oamix.evaluate(oamix.catalog("czitrom-d"), "nope")

import pytest

import uhecke


@pytest.fixture(scope="module")
def i2_8(tmp_path_factory):
    return uhecke.instance("I2", m=8, weights="s1=3,s2=2", cache_dir=str(tmp_path_factory.mktemp("cache")))


def test_group_and_config(i2_8):
    assert len(i2_8) == 16
    assert i2_8.config["weights"] == [[3], [2]]
    assert len(i2_8.config_hash) == 64


def test_verify_all_properties(i2_8):
    report = i2_8.verify()
    assert report["ok"]
    assert [r["name"] for r in report["results"]][:15] == [f"P{i}" for i in range(1, 16)]


def test_oracle_matches(i2_8):
    data = i2_8.oracle_dihedral(compare=True)
    assert data["comparison"]["ok"]


def test_negative_coefficient():
    inst = uhecke.instance("I2", m=4, weights="s1=2,s2=1", use_cache=False)
    kl = inst.klpolys()
    y, w = kl["elements"].index([]), kl["elements"].index([1, 2, 1])
    hits = [p for a, b, p in kl["p"] if a == w and b == y]
    assert {(m["e"][0], m["c"]) for m in hits[0]} == {(-5, "1"), (-3, "-1")}


def test_a1_structure_constants():
    inst = uhecke.instance("A", rank=1, weights="s1=2", use_cache=False)
    h = inst.hconsts([([1], [1])])
    assert h


def test_jring_and_psi():
    inst = uhecke.instance("A", rank=2, use_cache=False)
    assert inst.jring()["associativity"]["ok"]
    assert inst.psi()["certificate"]["ok"]


def test_cache_roundtrip(tmp_path):
    first = uhecke.instance("B", rank=2, weights="s1=2,s2=1", cache_dir=str(tmp_path))
    second = uhecke.instance("B", rank=2, weights="s1=2,s2=1", cache_dir=str(tmp_path))
    assert any("cache hit" in line for line in second.log)
    assert first.klpolys() == second.klpolys()


def test_bad_input():
    with pytest.raises(ValueError):
        uhecke.instance("Q", rank=3, use_cache=False)
    with pytest.raises(ValueError):
        uhecke.instance("A", rank=2, weights="s1=2,s2=1", use_cache=False)

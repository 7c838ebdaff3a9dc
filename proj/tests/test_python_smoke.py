"""End-to-end checks of the compiled python module."""

import pytest

import fibrecount


REFERENCE_POLYS = ["1,15,16,1,1", "15,0,16,13,1"]


def test_count_reference_system():
    report = fibrecount.count("17", REFERENCE_POLYS)
    assert report["q"] == 17
    assert report["genus"] == 5
    assert report["n"] == 48
    assert report["hws"] == 58
    assert [s["a"] for s in report["subsets"]] == [-8, -6, -16]
    assert report["affine_oracle"] == 44
    assert report["rational_infinity"]["count"] == 4
    assert report["geometric_infinity"] == 4


def test_count_extension_field():
    report = fibrecount.count("5^2:1,1,1", ["0,[0,1],1,0,1", "2,[0,1],0,[0,3],1"])
    assert report["q"] == 25
    assert report["n"] == 32


def test_scalar_helpers():
    assert fibrecount.hws_bound(17, 5) == 58
    assert fibrecount.hws_bound(25, 5) == 76
    assert tuple(fibrecount.genus_fibre([4, 4])) == (5, 0)
    assert fibrecount.geometric_infinity([4, 4]) == 4
    assert fibrecount.geometric_infinity([3, 4]) == 2
    assert fibrecount.field_order("13^2") == 169


def test_verify_paper_bundled():
    report = fibrecount.verify_paper()
    assert len(report["rows"]) == 27
    assert report["mismatches"] == 6
    assert report["discrepant"] == 3
    assert report["ok"] is False
    by_label = {row["label"]: row for row in report["rows"]}
    assert by_label["g5-q17"]["status"] == "OK"
    assert by_label["g5-q79"]["status"] == "DISCREPANT"
    assert by_label["g5-q13^2"]["status"] == "MISMATCH"
    assert fibrecount.default_fixtures_path().endswith("paper_fixtures.json")


def test_verify_isogeny():
    report = fibrecount.verify_isogeny("5", ["0,1,0,1", "2,1,0,1"])
    assert report["ok"] is True
    assert report["genus"] == 4
    assert len(report["checks"]) == 4
    for check in report["checks"]:
        assert 0 <= check["defect"] <= report["geometric_infinity"]


def test_search_deterministic():
    kwargs = dict(strategy="random", budget=2000, seed=9)
    first = fibrecount.search("17", [4, 4], **kwargs)
    second = fibrecount.search("17", [4, 4], **kwargs)
    assert first == second
    assert first["leaderboard"]
    top = first["leaderboard"][0]
    assert top["n"] <= top["hws"]
    roundtrip = fibrecount.count("17", top["polys"])
    assert roundtrip["n"] == top["n"]


def test_errors_map_to_value_error():
    with pytest.raises(fibrecount.ParseError):
        fibrecount.count("banana", ["0,1"])
    with pytest.raises(fibrecount.ParseError):
        fibrecount.count("4", ["0,1"])
    with pytest.raises(fibrecount.ValidationError):
        fibrecount.count("5", ["1,2,1"])  # (x+1)^2 is not separable
    with pytest.raises(ValueError):
        fibrecount.search("17", [], strategy="random")
    with pytest.raises(fibrecount.ParseError):
        fibrecount.search("17", [4, 4], strategy="annealing")

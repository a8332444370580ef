import json
import os
import pathlib

import pytest

import hybridcp

MODELS = pathlib.Path(
    os.environ.get("HYBRIDCP_MODELS_DIR", pathlib.Path(__file__).resolve().parents[2] / "models")
)


def test_interval_arithmetic():
    s = hybridcp.Interval(1, 2) + hybridcp.Interval(3, 4)
    assert (s.lo, s.hi) == (4, 6)
    assert hybridcp.unary("sqrt", hybridcp.Interval(-4, 9)) == hybridcp.Interval(0, 3)
    assert hybridcp.unary("sqrt", hybridcp.Interval(-2, -1)).is_empty()
    third = hybridcp.Interval(1, 1) / hybridcp.Interval(3, 3)
    assert third.lo <= 1 / 3 <= third.hi
    assert third.lo < third.hi
    assert hybridcp.binary("max", hybridcp.Interval(1, 5), hybridcp.Interval(2, 3)) == hybridcp.Interval(2, 5)
    with pytest.raises(ValueError):
        hybridcp.unary("frobnicate", hybridcp.Interval(0, 1))


def test_parse_round_trip_and_errors():
    assert hybridcp.parse("{0}<{1}", 2) == "{0}<{1}"
    text = hybridcp.parse("({0}+{1}+{2})/3={3}", 4)
    assert text == "((({0}+{1})+{2})/3)={3}"
    assert hybridcp.parse(text, 4) == text
    with pytest.raises(hybridcp.ParseError):
        hybridcp.parse("({0}+", 1)


@pytest.mark.parametrize(
    "function, arity, bounds, status, expected",
    [
        ("{0}<{1}", 2, [0, 1, 2, 3], hybridcp.ContractStatus.ENTAILED, [0, 1, 2, 3]),
        ("{0}={1}", 2, [0, 1, 2, 3], hybridcp.ContractStatus.FAIL, None),
        ("{0}+{1}=10", 2, [0, 10, 0, 3], hybridcp.ContractStatus.CONTRACT, [7, 10, 0, 3]),
        ("{0}={0}", 1, [1, 2], hybridcp.ContractStatus.ENTAILED, [1, 2]),
    ],
)
def test_contract_status_vectors(function, arity, bounds, status, expected):
    reg = hybridcp.ContractorRegistry()
    cid = reg.create_contractor([function], arity)
    got, out = reg.contract(cid, bounds)
    assert got == status
    assert int(got) == {"FAIL": 0, "ENTAILED": 1, "CONTRACT": 2, "NOTHING": 3}[got.name]
    if expected is not None:
        assert out == expected


def test_registry_errors():
    reg = hybridcp.ContractorRegistry()
    assert reg.create_contractor(["{0}<1"], 1) == 0
    assert reg.create_contractor(["{0}>1"], 1) == 1
    assert len(reg) == 2
    with pytest.raises(hybridcp.ParseError):
        reg.create_contractor(["{9}=1"], 2)
    with pytest.raises(IndexError):
        reg.contract(5, [0, 1])
    with pytest.raises(ValueError):
        reg.contract(0, [0, 1, 2])


def test_santa_claus_model():
    report = hybridcp.solve_model((MODELS / "santa_claus.json").read_text())
    assert report["status"] == "OPTIMAL"
    best = report["solutions"][-1]
    assert best["Total cost"] == 64
    assert sorted(best[f"p2k[{i}]"] for i in range(3)) == [17, 23, 24]
    lo, hi = best["Average deviation"]
    assert abs((lo + hi) / 2 - 2.8888888888888866) < 1e-4


def test_enumerate_and_errors():
    model = {
        "ints": [
            {"name": "a", "lb": 0, "ub": 1, "enumerated": True},
            {"name": "b", "lb": 0, "ub": 1, "enumerated": True},
        ],
        "constraints": [{"type": "alldifferent", "vars": ["a", "b"]}],
        "objective": {"satisfy": True},
    }
    report = hybridcp.solve_model(json.dumps(model), all=True)
    assert report["status"] == "SATISFIED"
    assert sorted((s["a"], s["b"]) for s in report["solutions"]) == [(0, 1), (1, 0)]
    with pytest.raises(hybridcp.ModelError):
        hybridcp.solve_model('{"bogus": 1}')

import os

import pytest

import cspw

DATA = os.environ.get("CSPW_DATA", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def load(name):
    return cspw.Instance.load(os.path.join(DATA, name))


def test_cyclo_arithmetic():
    z = cspw.CycloValue.root(4, 1)
    one = cspw.CycloValue("1", 4)
    assert str((one + z) * (one - z)) == "2"
    assert str(cspw.CycloValue("1+w", 4).inv()) == "1/2-1/2*w"
    assert z.conj() == -z


def test_solve_hadamard():
    inst = load("hadamard.cspw")
    res = cspw.solve(inst, cspw.MaltsevMap.xor3())
    assert str(res["Z"]) == "2"
    assert res["violation"] is None
    assert cspw.brute_force_Z(inst) == res["Z"]


def test_zeta_rows_violation():
    res = cspw.solve(load("zeta_rows.cspw"), cspw.MaltsevMap.xor3(), "verified")
    assert res["Z"] is None
    kind, level, cert = res["violation"]
    assert kind == "BlockOrthogonality" and level == 2 and cert


def test_search_phi():
    assert cspw.search_phi(load("xor3.cspw")) == cspw.MaltsevMap.xor3()
    assert cspw.search_phi(load("or.cspw")) is None


def test_counts():
    inst = load("hadamard.cspw")
    assert cspw.value_counts(inst) == cspw.value_histogram(inst) == {"1": 3, "-1": 1}


def test_split_parts():
    parts = cspw.split_parts(2, [[0, 0], [1, 1]], cspw.MaltsevMap.xor3(), lambda t: t[0])
    assert parts == {0: [[0, 0]], 1: [[1, 1]]}
    with pytest.raises(cspw.TypePartitionViolation):
        full = [[0, 0], [0, 1], [1, 0], [1, 1]]
        cspw.split_parts(2, full, cspw.MaltsevMap.xor3(), lambda t: 1 if t[0] == t[1] else 2 + t[0])


def test_parse_error():
    with pytest.raises(cspw.ParseError):
        cspw.Instance.load(os.path.join(DATA, "bad_apply.cspw"))

"""Smoke tests for the python bindings."""

import json

import pytest

import nscover


@pytest.fixture(scope="module")
def sys22():
    return nscover.System(2, 2, 2)


def test_model_dimension(sys22):
    assert sys22.dim() == 13
    names = sys22.coord_names()
    assert len(names) == 13
    assert names[0] == "A" and names[1] == "B"
    info = json.loads(sys22.model_json())
    assert info["dimension"] == 13


def test_varrho_y_is_diagonal(sys22):
    m = sys22.varrho("Y")
    assert m[0][0] == "-1"
    assert m[1][1] == "1" and m[2][2] == "1"
    assert m[0][1] == "0" and m[1][0] == "0"


def test_rho_functoriality(sys22):
    assert sys22.in_gamma("W R2^-1 Y")
    assert sys22.gamma_alpha("V", 0)
    one = sys22.rho(0, 1, "R2 R2^-1")
    n = len(one)
    assert all(one[i][i] == "1" for i in range(n))
    assert all(one[i][j] == "0" for i in range(n) for j in range(n) if i != j)


def test_structure_and_identities(sys22):
    ok, lines = sys22.verify_structure()
    assert ok, lines
    ok, lines = sys22.verify_identities("W R2", 1)
    assert ok, lines


def test_certify_roundtrip(sys22):
    cert = json.loads(sys22.certify())
    assert cert["table_complete"]
    assert int(cert["family"]["n"]) != 0
    sys22.replay(json.dumps(cert))
    cert["family"]["n"] = str(int(cert["family"]["n"]) + 1)
    with pytest.raises(Exception):
        sys22.replay(json.dumps(cert))


def test_orientation_info():
    info = nscover.orientation_info(2)
    assert info["dim"] == 8
    assert info["pstar_kernel_ok"]
    assert info["pstar_relator_ok"]
    assert info["duality_intertwiner"]


def test_bad_word_raises(sys22):
    with pytest.raises(Exception):
        sys22.varrho("Zx")

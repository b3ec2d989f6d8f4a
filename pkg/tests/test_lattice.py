import json
from fractions import Fraction as F

import pytest

from lattice_kissing import lattice as L
from lattice_kissing.exact import RationalMatrix
from lattice_kissing.shells import min_norm2


def test_hex_gram_from_coordinates():
    lat = L.gram_from_basis([["sqrt(3)", 1], ["sqrt(3)", -1]])
    assert lat.gram == RationalMatrix([[4, 2], [2, 4]])
    assert lat.det == 12


def test_opt14_gram_entries_are_exact():
    assert L.catalog("opt14_3d").gram == RationalMatrix(
        [[4, "-4/3", "4/3"], ["-4/3", 4, "4/3"], ["4/3", "4/3", 4]]
    )


@pytest.mark.parametrize(
    "expr, want",
    [
        ("2/3*sqrt(6)", {6: F(2, 3)}),
        ("sqrt(5)/sqrt(3)", {15: F(1, 3)}),
        ("-sqrt(3)", {3: F(-1)}),
        ("sqrt(8)", {2: F(2)}),
        (3, {1: F(3)}),
    ],
)
def test_parse_surd(expr, want):
    assert L.parse_surd(expr) == want


def test_irrational_inner_product_rejected():
    with pytest.raises(L.LatticeError):
        L.gram_from_basis([[1, 0], ["sqrt(2)", 1]])


@pytest.mark.parametrize(
    "gram",
    [
        [[1, 2], [3, 4]],  # not symmetric
        [[1, 2], [2, 1]],  # indefinite
        [[0, 0], [0, 1]],  # singular
        [[1, 0, 0], [0, 1, 0]],  # not square
    ],
)
def test_invalid_gram_rejected(gram):
    with pytest.raises(ValueError):
        L.GramLattice(gram)


def test_dimension_limit():
    with pytest.raises(L.LatticeError):
        L.GramLattice(RationalMatrix.identity(25))


def test_scale_multiplies_det():
    lat = L.catalog("D4")
    s = L.scale(lat, F(2))
    assert s.det == lat.det * 2**4
    assert L.scale(lat, 1) is lat
    with pytest.raises(ValueError):
        L.scale(lat, 0)
    assert "sqrt(2)" in s.label


def test_catalog_families():
    assert L.catalog("A2").gram == RationalMatrix([[2, -1], [-1, 2]])
    assert L.catalog("D3").det == 4
    assert L.catalog("A4*").det == F(1, 5)
    assert L.catalog("E8").det == 1
    assert L.catalog("E7").det == 2
    assert L.catalog("E6").det == 3
    with pytest.raises(KeyError):
        L.catalog("E9")
    with pytest.raises(KeyError):
        L.catalog("D1")


@pytest.mark.parametrize("name", [n for n in L.catalog_names() if n != "Leech"])
def test_catalog_minimum_norms(name):
    e = L.catalog_entry(name)
    assert min_norm2(e.lattice) == e.expected_min_norm2


def test_leech_data():
    lat = L.catalog("Leech")
    assert lat.dim == 24
    assert lat.det == 1
    assert lat.gram.is_integral()
    assert all(lat.gram[i, i] % 2 == 0 for i in range(24))
    assert min_norm2(lat) == 4


def test_packing_verdicts():
    assert L.is_packing_lattice(L.catalog("hex4"))
    v = L.is_packing_lattice(L.catalog("A2"))
    assert not v and v.min_norm2 == 2 and L.catalog("A2").norm2(v.witness) == 2
    assert L.scale_to_min_norm(L.catalog_entry("A5*"), 4).gram == L.scale(L.catalog("A5*"), F(24, 5)).gram


def test_resolve_from_path(tmp_path):
    doc = {"name": "toy", "dim": 2, "gram": [["4", "0"], ["0", "9/2"]], "expected_min_norm2": "4"}
    p = tmp_path / "toy.json"
    p.write_text(json.dumps(doc))
    lat = L.resolve_lattice(str(p), F(2))
    assert lat.gram == RationalMatrix([[8, 0], [0, 9]])
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "bad", "dim": 3, "gram": [["1"]]}))
    with pytest.raises(L.LatticeError):
        L.load_lattice(bad)


def test_data_dir_override(monkeypatch, tmp_path):
    monkeypatch.setenv(L.ENV_DATA_DIR, str(tmp_path))
    assert L.data_dir() == tmp_path

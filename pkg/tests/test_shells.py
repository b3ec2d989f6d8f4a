from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from lattice_kissing.exact import det
from lattice_kissing.lattice import GramLattice, catalog, resolve_lattice, scale
from lattice_kissing.shells import (
    EnumerationRefused,
    ShellQuery,
    enumerate_shell,
    estimate_nodes,
    kappa_star_alpha_certificate,
    min_norm2,
)


def shell(lat, lo2, hi2, **kw):
    return enumerate_shell(ShellQuery(lat, F(lo2), F(hi2), **kw))


def test_hex_shells():
    hex4 = catalog("hex4")
    assert shell(hex4, 4, 4).total == 6
    assert shell(hex4, 4, 12).histogram == {4: 6, 12: 6}
    assert shell(hex4, 4, F(23, 2)).total == 6


def test_collect_matches_box_scan():
    lat = catalog("opt14_3d")
    got = shell(lat, 4, F(16, 3), mode="collect")
    want = oracles.box_scan([list(r) for r in lat.gram.entries], 4, F(16, 3))
    assert got.coords_set() == set(want)
    assert got.histogram == oracles.histogram(want)
    assert got.vectors == sorted(got.vectors, key=lambda v: (v.norm2, v.coords))


def test_pairs_are_half():
    sh = shell(resolve_lattice("D4", F(2)), 4, 8, mode="collect")
    assert len(sh.pairs()) * 2 == sh.total == 48


def test_count_mode_has_no_vectors():
    sh = shell(catalog("hex4"), 4, 4)
    with pytest.raises(ValueError):
        list(sh)


def test_query_validation():
    with pytest.raises(ValueError):
        ShellQuery(catalog("hex4"), F(8), F(4))
    with pytest.raises(ValueError):
        ShellQuery(catalog("hex4"), F(-1), F(4))
    with pytest.raises(ValueError):
        ShellQuery(catalog("hex4"), F(4), F(4), mode="list")
    with pytest.raises(TypeError):
        ShellQuery(catalog("hex4"), 4.0, 8.0)


def test_zero_vector_never_reported():
    sh = shell(catalog("Z2"), 0, 1)
    assert sh.histogram == {1: 4}


def test_budget_refusal_and_long():
    leech = catalog("Leech")
    assert estimate_nodes(leech, 8) > 1e9
    with pytest.raises(EnumerationRefused):
        shell(leech, 4, 8)
    with pytest.raises(EnumerationRefused):
        enumerate_shell(ShellQuery(catalog("E8"), F(2), F(8)), budget=1000)


def test_workers_agree():
    lat = resolve_lattice("E7", F(2))
    one = enumerate_shell(ShellQuery(lat, F(4), F(8)))
    two = enumerate_shell(ShellQuery(lat, F(4), F(8)), workers=2)
    assert one.histogram == two.histogram
    assert one.total == 882


def test_min_norm2():
    assert min_norm2(catalog("A4*")) == F(4, 5)
    assert min_norm2(catalog("bcc2")) == 3


def test_certificate():
    c = kappa_star_alpha_certificate(catalog("opt14_3d"), F(16, 3))
    assert (c.count, c.bound, c.bound_respected, c.is_packing) == (14, 14, True, True)
    c8 = kappa_star_alpha_certificate(catalog("opt20_3d"), 8)
    assert c8.bound is None and c8.count == 20
    doc = c.to_json()
    assert doc["hi2"] == "16/3" and doc["histogram"] == {"4": 8, "16/3": 6}


@st.composite
def small_lattices(draw):
    n = draw(st.integers(1, 3))
    rows = draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n))
    if det(rows) == 0:
        rows = [[int(i == j) for j in range(n)] for i in range(n)]
    return oracles.matmul(rows, oracles.transpose(rows))


@settings(max_examples=40, deadline=None)
@given(small_lattices(), st.integers(1, 20), st.integers(0, 12))
def test_random_forms_match_box_scan(g, hi2, lo_off):
    lo2 = max(0, hi2 - lo_off)
    sh = enumerate_shell(ShellQuery(GramLattice(g), F(lo2), F(hi2), mode="collect"))
    want = oracles.box_scan(g, lo2, hi2)
    got = sh.coords_set()
    assert got == set(want)
    assert all(tuple(-c for c in z) in got for z in got)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["hex4", "D3", "opt14_3d", "A4*", "bcc2"]), st.fractions(F(1, 4), 5, max_denominator=6))
def test_scaling_covariance(name, c):
    lat = catalog(name)
    a = enumerate_shell(ShellQuery(lat, F(1), F(6))).histogram
    b = enumerate_shell(ShellQuery(scale(lat, c), c, 6 * c)).histogram
    assert {k * c: v for k, v in a.items()} == b

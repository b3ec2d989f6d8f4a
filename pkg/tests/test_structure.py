from fractions import Fraction as F
from itertools import product

import pytest

import oracles
from lattice_kissing.lattice import resolve_lattice
from lattice_kissing.shells import ShellQuery, enumerate_shell
from lattice_kissing.structure import (
    ClassProfile,
    IntegrityError,
    MidpointTripleSet,
    check_equivalent_pairs,
    check_triple_double_count,
    find_collinear_quadruples,
    midpoint_triples,
    partition_mod2,
    solve_profile_system,
    sublattice_indices,
)


def X(name, c2, hi2, lo2=4):
    lat = resolve_lattice(name, None if c2 is None else F(c2))
    return enumerate_shell(ShellQuery(lat, F(lo2), F(hi2), mode="collect"))


@pytest.mark.parametrize(
    "name, c2, hi2, want",
    [
        ("E8", 2, 8, {1: 120, 8: 135}),
        ("Z3", 4, 8, {1: 3, 2: 3}),
        ("D4", 2, 8, {1: 12, 4: 3}),
        ("hex4", None, 4, {1: 3}),
        ("Z2", 4, 8, {1: 2, 2: 1}),
    ],
)
def test_profiles(name, c2, hi2, want):
    sh = X(name, c2, hi2)
    part, prof = partition_mod2(sh)
    assert prof.m == want
    assert prof.pairs * 2 == sh.total
    if sh.total < 500:
        assert prof.m == oracles.brute_profile(list(sh.coords_set()))


def test_zero_class_means_not_packing():
    with pytest.raises(IntegrityError):
        partition_mod2(X("Z2", None, 4, lo2=1))


def test_equivalent_pairs():
    assert check_equivalent_pairs(X("D4", 2, 8)) == []
    assert check_equivalent_pairs(X("E8", 2, 8)) == []
    z2 = X("Z2", 4, 8)
    part, _ = partition_mod2(z2)
    big = [vs for vs in part.classes.values() if len(vs) == 4]
    assert len(big) == 1 and all(v.norm2 == 8 for v in big[0])
    bad = check_equivalent_pairs(X("hex4", None, 12))
    assert bad and all({b.norm2_1, b.norm2_2} == {4, 12} for b in bad)


def test_e8_big_classes_are_orthogonal_frames():
    sh = X("E8", 2, 8)
    lat = sh.query.lattice
    part, _ = partition_mod2(sh)
    for vs in part.classes.values():
        if len(vs) == 16:
            reps = [v for v in vs if v.coords > tuple(-c for c in v.coords)]
            assert all(v.norm2 == 8 for v in reps)
            for i, a in enumerate(reps):
                for b in reps[i + 1 :]:
                    assert lat.inner(a.coords, b.coords) == 0


def test_hex_collinear_line():
    lines = find_collinear_quadruples(X("hex4", None, 12))
    # (sqrt3, 3), (sqrt3, 1), (sqrt3, -1), (sqrt3, -3) in the basis (sqrt3, 1), (sqrt3, -1)
    target = {(2, -1), (1, 0), (0, 1), (-1, 2)}
    assert any(set(ln.points) == target for ln in lines)
    line = next(ln for ln in lines if set(ln.points) == target)
    ps = line.params()
    assert sorted(ps) == list(range(min(ps), min(ps) + 4))


@pytest.mark.parametrize("name, c2", [("Z2", 4), ("hex4", None), ("D3", 2), ("opt20_3d", None)])
def test_no_collinear_quadruple_below_12(name, c2):
    assert find_collinear_quadruples(X(name, c2, F(1199, 100))) == []


@pytest.mark.parametrize("name, c2, hi2", [("Z2", 4, 8), ("D4", 2, 8), ("Z3", 4, 8), ("hex4", None, 12)])
def test_triples_match_brute_force(name, c2, hi2):
    sh = X(name, c2, hi2)
    got = midpoint_triples(sh)
    assert sorted(got.triples) == oracles.brute_triples(list(sh.coords_set()))


def test_z2_triples():
    t = midpoint_triples(X("Z2", 4, 8))
    assert len(t) == 4
    assert ((1, -1), (1, 0), (1, 1)) in t.triples
    assert len(midpoint_triples(X("hex4", None, 4))) == 0


def test_double_count():
    sh = X("E8", 2, 8)
    _, prof = partition_mod2(sh)
    rep = check_triple_double_count(prof, midpoint_triples(sh), 126)
    assert (rep.triples, rep.rhs, rep.tight) == (15120, 15120, True)
    assert rep.triples == 2 * 8 * 7 * 135

    sh4 = X("D4", 2, 8)
    _, p4 = partition_mod2(sh4)
    rep4 = check_triple_double_count(p4, midpoint_triples(sh4), 12)
    assert rep4.identity_holds and rep4.inequality_holds and not rep4.tight

    empty = check_triple_double_count(ClassProfile({}), MidpointTripleSet([]), 12)
    assert (empty.triples, empty.rhs, empty.inequality_holds) == (0, 0, True)

    with pytest.raises(IntegrityError):
        check_triple_double_count(ClassProfile({2: 1}), MidpointTripleSet([]), 12)


def test_profile_system_e8_unique():
    assert solve_profile_system(8, 126, 255, 2400) == [(120, 0, 0, 0, 0, 0, 0, 135)]


def test_profile_system_reduced_4d_has_no_solution():
    # 4 m2 <= 10 m1, m1 + 2 m2 >= 26, m1 + m2 <= 15
    assert solve_profile_system(4, 12, 15, 52, strict=True, max_class_size=2) == []


def test_profile_system_zero_target():
    assert (0, 0, 0) in solve_profile_system(3, 6, 7, 0)


def _brute_profiles(n, kap, budget, target):
    out = []
    for m in product(range(budget + 1), repeat=n):
        if sum(m) > budget:
            continue
        if 2 * sum((i + 1) * c for i, c in enumerate(m)) < target:
            continue
        if sum(2 * (i + 1) * i * c for i, c in enumerate(m)) > kap * m[0]:
            continue
        out.append(m)
    return sorted(out)


@pytest.mark.parametrize("n, kap, budget, target", [(2, 2, 3, 6), (3, 6, 7, 14), (3, 6, 7, 18), (3, 4, 7, 16), (4, 12, 6, 20)])
def test_profile_system_matches_brute_force(n, kap, budget, target):
    assert solve_profile_system(n, kap, budget, target) == _brute_profiles(n, kap, budget, target)


@pytest.mark.parametrize("name, c2", [("D3", 2), ("opt14_3d", None), ("opt20_3d", None), ("fcc_stacked", None)])
def test_sublattice_indices_below_16_3(name, c2):
    idx = sublattice_indices(X(name, c2, 8), below=F(16, 3))
    assert idx and set(idx) <= {1, 2}

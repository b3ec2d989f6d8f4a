"""Regenerate data/lattices/leech.json.

Builds sqrt(8) * Leech inside Z^24 from the extended Golay code, reduces
a basis with LLL (sympy, tool-time only), and writes the Gram matrix
divided by 8 (even unimodular, minimum norm 4).
"""
import itertools
import pathlib
import sys

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.matrices.normalforms import hermite_normal_form
from sympy import Matrix

from _jsonfmt import dumps


A = [
    [1, 0, 0, 1, 1, 1, 1, 1, 0, 0, 0, 1],
    [0, 1, 0, 0, 1, 1, 1, 1, 1, 0, 1, 0],
    [0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 0, 1],
    [1, 0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 0],
    [1, 1, 0, 0, 1, 0, 0, 1, 1, 1, 0, 1],
    [1, 1, 1, 0, 0, 1, 0, 0, 1, 1, 1, 0],
    [1, 1, 1, 1, 0, 0, 1, 0, 0, 1, 0, 1],
    [1, 1, 1, 1, 1, 0, 0, 1, 0, 0, 1, 0],
    [0, 1, 1, 1, 1, 1, 0, 0, 1, 0, 0, 1],
    [0, 0, 1, 1, 1, 1, 1, 0, 0, 1, 1, 0],
    [0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1, 1],
    [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1],
]


def golay_generators():
    return [[int(i == j) for j in range(12)] + A[i] for i in range(12)]


def check_golay(gens):
    weights = {}
    for coeffs in itertools.product((0, 1), repeat=12):
        w = sum(sum(c * g[k] for c, g in zip(coeffs, gens)) % 2 for k in range(24))
        weights[w] = weights.get(w, 0) + 1
    assert weights == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}, weights


def main(out):
    gens = golay_generators()
    check_golay(gens)
    rows = [[2 * x for x in g] for g in gens]
    for i in range(23):
        r = [0] * 24
        r[i], r[i + 1] = 4, -4
        rows.append(r)
    r = [0] * 24
    r[0] = r[1] = 4
    rows.append(r)
    rows.append([-3] + [1] * 23)
    # HNF of the transpose gives a column basis
    H = hermite_normal_form(Matrix(rows).T)
    basis = H.T
    assert basis.shape == (24, 24), basis.shape
    dm = DomainMatrix.from_Matrix(basis).convert_to(ZZ)
    red = dm.lll().to_Matrix()
    gram = red * red.T
    assert all(x % 8 == 0 for x in gram)
    gram = gram / 8
    assert gram.det() == 1
    assert all(gram[i, i] % 2 == 0 for i in range(24))
    doc = {
        "name": "Leech",
        "dim": 24,
        "gram": [[str(int(gram[i, j])) for j in range(24)] for i in range(24)],
        "expected_min_norm2": "4",
        "description": "Leech lattice, standard normalization (even unimodular, minimum norm 4); "
        "LLL-reduced basis of the Golay-code construction.",
    }
    pathlib.Path(out).write_text(dumps(doc))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/lattice_kissing/data/lattices/leech.json")

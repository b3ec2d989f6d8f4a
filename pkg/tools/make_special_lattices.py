"""Regenerate the coordinate-defined lattices in data/lattices/.

Each Gram matrix is computed exactly from a basis with surd coordinates.
"""
import pathlib
import sys

from lattice_kissing.exact import format_rational
from lattice_kissing.lattice import gram_from_basis
from lattice_kissing.shells import min_norm2

from _jsonfmt import dumps


SPECIAL = {
    "hex4": (
        [["sqrt(3)", 1], ["sqrt(3)", -1]],
        "hexagonal lattice with minimum norm 4",
    ),
    "opt14_3d": (
        [
            ["-2/3*sqrt(6)", "2/3*sqrt(3)", 0],
            ["2/3*sqrt(6)", "2/3*sqrt(3)", 0],
            [0, "2/3*sqrt(3)", "2/3*sqrt(6)"],
        ],
        "3-dim lattice with 14 vectors of norm^2 in [4, 16/3]",
    ),
    "opt20_3d": (
        [[2, 0, 0], [0, 2, 0], [1, 0, "sqrt(3)"]],
        "square layers stacked over edge midpoints; 20 vectors of norm^2 in [4, 8]",
    ),
    "fcc_stacked": (
        [[2, 0, 0], [0, 2, 0], [1, 1, "sqrt(2)"]],
        "face-centred cubic, square layers stacked over cell centres; 18 vectors of norm^2 in [4, 8]",
    ),
    "opt50_4d": (
        [[2, 0, 0, 0], [0, 2, 0, 0], [1, 0, "sqrt(3)", 0], [0, 1, "2/3*sqrt(3)", "sqrt(5)/sqrt(3)"]],
        "4-dim lattice with 50 vectors of norm^2 in [4, 8]",
    ),
    "stacked48_4d": (
        [[2, 0, 0, 0], [0, 2, 0, 0], [1, 0, "sqrt(3)", 0], [0, 1, 0, "sqrt(3)"]],
        "4-dim lattice matching sqrt(2)D4 with 48 vectors of norm^2 in [4, 8]",
    ),
    "bcc2": (
        [[2, 0, 0], [0, 2, 0], [1, 1, 1]],
        "body-centred cubic 2Z^3 + Z(1,1,1); packs the L_p ball at p = log2(3)",
    ),
}


def main(outdir):
    outdir = pathlib.Path(outdir)
    for name, (basis, desc) in SPECIAL.items():
        lat = gram_from_basis(basis, name=name)
        doc = {
            "name": name,
            "dim": lat.dim,
            "gram": lat.gram.to_json(),
            "expected_min_norm2": format_rational(min_norm2(lat)),
            "description": desc,
            "basis": [[str(x) for x in v] for v in basis],
        }
        (outdir / f"{name}.json").write_text(dumps(doc))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/lattice_kissing/data/lattices")

"""Regenerate the halfspace and recipe files in data/polytopes/.

The snub dodecahedron vertex file comes from make_snub.py.
"""
import json
import pathlib
import sys

from lattice_kissing import polytope as pt

EXPR = {
    "truncated_icosahedron": ("1+tau", "4/3+tau"),
    "rhombicosidodecahedron": ("3tau+2", "4tau+1", "3(1+tau)"),
    "truncated_icosidodecahedron": ("5tau+4", "6tau+3", "5(1+tau)"),
}


def main(outdir):
    outdir = pathlib.Path(outdir)
    for name in ("dodecahedron", "icosahedron", "rhombic_triacontahedron"):
        doc = pt.polytope_to_json(pt.shipped(name), "hrep")
        (outdir / f"{name}.json").write_text(json.dumps(doc, indent=1) + "\n")
    for name, parts in pt.RECIPES.items():
        doc = {
            "name": name,
            "intersect": [
                {"file": f"{body}.json", "scale": f"{c:.17g}", "scale_expr": e}
                for (body, c), e in zip(parts, EXPR[name])
            ],
        }
        (outdir / f"{name}.json").write_text(json.dumps(doc, indent=1) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/lattice_kissing/data/polytopes")

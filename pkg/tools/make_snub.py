"""Regenerate data/polytopes/snub_dodecahedron.json.

The snub dodecahedron is the orbit of one point under the 60 rotations of
the icosahedral group, placed so that all 150 edges have equal length.
The frame has 5-fold axes along (+-1, 0, +-tau) and cyclic permutations,
the seed point is taken near the vertex (-0.3477, -0.3069, 1.9454) and the
body is scaled to circumradius 2.
"""
import pathlib
import sys

import numpy as np
from scipy.optimize import least_squares
from scipy.spatial import ConvexHull

TAU = (1 + 5**0.5) / 2


def rotation(axis, angle):
    a = np.asarray(axis, float)
    a /= np.linalg.norm(a)
    k = np.array([[0, -a[2], a[1]], [a[2], 0, -a[0]], [-a[1], a[0], 0]])
    return np.eye(3) + np.sin(angle) * k + (1 - np.cos(angle)) * k @ k


def icosahedral_rotations():
    gens = [
        rotation((1, 0, TAU), 2 * np.pi / 5),
        rotation((0, 0, 1), np.pi),
        np.array([[0.0, 0, 1], [1, 0, 0], [0, 1, 0]]),
    ]
    group = [np.eye(3)]
    frontier = [np.eye(3)]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                m = h @ g
                if not any(np.allclose(m, x, atol=1e-9) for x in group):
                    group.append(m)
                    nxt.append(m)
        frontier = nxt
    assert len(group) == 60, len(group)
    return np.array(group)


def orbit(group, p):
    return group @ p


def neighbours(group, p):
    dist = np.linalg.norm(orbit(group, p) - p, axis=1)
    return np.argsort(dist)[1:6]


def residual(group, idx, x):
    p = np.array([x[0], x[1], 1.0])
    d = np.linalg.norm(group[idx] @ p - p, axis=1)
    return d[1:] - d[0]


def main(out):
    group = icosahedral_rotations()
    seed = np.array([-0.3477, -0.3069, 1.9454])
    x = seed[:2] / seed[2]
    # neighbour set can change during the first steps, so re-pick until stable
    for _ in range(10):
        idx = neighbours(group, np.array([x[0], x[1], 1.0]))
        x = least_squares(lambda y: residual(group, idx, y), x, xtol=1e-15, ftol=1e-15, gtol=1e-15).x
    p = np.array([x[0], x[1], 1.0])
    pts = orbit(group, p)
    pts *= 2.0 / np.linalg.norm(p)
    dist = np.linalg.norm(pts[:, None] - pts[None], axis=2)
    edge = np.sort(dist, axis=1)[:, 1:6]
    assert np.ptp(edge) < 1e-12, np.ptp(edge)
    assert (np.sort(dist, axis=1)[:, 6] - edge[:, -1]).min() > 0.1
    hull = ConvexHull(pts)
    assert len(hull.vertices) == 60 and len(hull.simplices) == 80 + 12 * 3
    assert np.linalg.norm(pts - seed, axis=1).min() < 1e-3
    lines = ",\n".join("  [" + ", ".join(f'"{c:.17g}"' for c in v) + "]" for v in pts)
    doc = (
        "{\n"
        ' "name": "snub_dodecahedron",\n'
        ' "description": "snub dodecahedron, circumradius 2, 5-fold axes along (+-1, 0, +-tau) and cyclic permutations",\n'
        f' "vrep": [\n{lines}\n ]\n'
        "}\n"
    )
    pathlib.Path(out).write_text(doc)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/lattice_kissing/data/polytopes/snub_dodecahedron.json")

"""Inradius/circumradius sandwich certificates for 3-D convex polytopes.

Floating point with fixed tolerances: TOL for vertex dedup, facet incidence
and the default verdict margin. Every ratio handled here is at least 0.04
away from the threshold.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

from .lattice import data_dir

__all__ = [
    "TOL",
    "TAU",
    "THRESHOLD",
    "LP_LOW",
    "LP_HIGH",
    "RECIPES",
    "PolytopeError",
    "DomainError",
    "Polytope3",
    "SandwichCertificate",
    "abs_halfspaces",
    "from_halfspaces",
    "from_vertices",
    "intersect",
    "difference_body",
    "radii",
    "sandwich_verdict",
    "lp_ball_verdict",
    "lp_contact_count",
    "LpContactReport",
    "dodecahedron",
    "icosahedron",
    "rhombic_triacontahedron",
    "truncated_icosahedron",
    "rhombicosidodecahedron",
    "truncated_icosidodecahedron",
    "cube",
    "snub_dodecahedron",
    "shipped",
    "shipped_names",
    "load_polytope",
    "polytope_from_json",
    "polytope_to_json",
]

TOL = 1e-9
TAU = (1 + math.sqrt(5)) / 2
THRESHOLD = 2 * math.sqrt(3) / 3
# the looser constant that shows up when the bound is stated for 2C
DOUBLED_THRESHOLD = 4 * math.sqrt(3) / 3


class PolytopeError(ValueError):
    """Body is empty, unbounded, degenerate, or does not contain the origin."""


class DomainError(ValueError):
    pass


def _dedup(points: np.ndarray, tol: float = TOL) -> np.ndarray:
    kept: list = []
    for p in points:
        if not kept or np.min(np.max(np.abs(np.asarray(kept) - p), axis=1)) > tol:
            kept.append(p)
    return np.asarray(kept, dtype=float).reshape(-1, points.shape[1] if points.ndim == 2 else 3)


def _normalize(rows) -> np.ndarray:
    h = np.asarray(rows, dtype=float).reshape(-1, 4)
    nrm = np.linalg.norm(h[:, :3], axis=1)
    if np.any(nrm < TOL):
        raise PolytopeError("halfspace with zero normal")
    h = h / nrm[:, None]
    if np.any(h[:, 3] <= TOL):
        raise PolytopeError("origin is not strictly inside every halfspace")
    return _dedup(h)


@dataclass(frozen=True, eq=False)
class Polytope3:
    """Bounded 3-D polytope with the origin in its interior.

    halfspaces rows are (nx, ny, nz, b) with unit normal, meaning n.x <= b.
    Only non-redundant facets are kept.
    """

    halfspaces: np.ndarray
    vertices: np.ndarray
    name: str = ""

    @property
    def symmetric(self) -> bool:
        return _closed_under_negation(self.vertices)

    def facets(self):
        return [(tuple(h[:3]), float(h[3])) for h in self.halfspaces]

    def scaled(self, c: float) -> Polytope3:
        if c <= 0:
            raise ValueError("scale factor must be positive")
        h = self.halfspaces.copy()
        h[:, 3] *= c
        return Polytope3(h, self.vertices * c, self.name)

    def __repr__(self):
        return f"Polytope3({self.name or '?'}, {len(self.vertices)} vertices, {len(self.halfspaces)} facets)"


def _closed_under_negation(pts: np.ndarray) -> bool:
    for p in pts:
        if np.min(np.max(np.abs(pts + p), axis=1)) > 1e-7:
            return False
    return True


def abs_halfspaces(coeffs, b: float = 1.0) -> list:
    """Expand sum_i |c_i x_i| <= b into its sign combinations."""
    nz = [i for i, c in enumerate(coeffs) if c != 0]
    rows = []
    for signs in itertools.product((1, -1), repeat=len(nz)):
        n = [0.0, 0.0, 0.0]
        for i, s in zip(nz, signs):
            n[i] = s * abs(float(coeffs[i]))
        rows.append(n + [float(b)])
    return rows


def _check_bounded(h: np.ndarray) -> None:
    a, b = h[:, :3], h[:, 3]
    for k in range(3):
        for s in (1.0, -1.0):
            c = np.zeros(3)
            c[k] = -s
            res = linprog(c, A_ub=a, b_ub=b, bounds=[(None, None)] * 3, method="highs")
            if res.status == 3:
                raise PolytopeError("halfspaces do not bound a body")
            if res.status != 0:
                raise PolytopeError(f"feasibility check failed: {res.message}")


def _facet_triples(h: np.ndarray) -> np.ndarray:
    n, b = h[:, :3], h[:, 3]
    idx = np.array(list(itertools.combinations(range(len(h)), 3)))
    if len(idx) == 0:
        raise PolytopeError("need at least 4 halfspaces")
    a = n[idx]
    ok = np.abs(np.linalg.det(a)) > 1e-12
    x = np.linalg.solve(a[ok], b[idx][ok][..., None])[..., 0]
    x = x[np.all(x @ n.T <= b + TOL, axis=1)]
    return _dedup(x)


def _incidence(vertices: np.ndarray, h: np.ndarray) -> np.ndarray:
    return np.abs(vertices @ h[:, :3].T - h[:, 3]) <= TOL


def _assemble(h: np.ndarray, vertices: np.ndarray, name: str) -> Polytope3:
    inc = _incidence(vertices, h)
    h = h[inc.sum(axis=0) >= 3]
    vertices = vertices[_incidence(vertices, h).sum(axis=1) >= 3]
    if len(vertices) < 4 or len(h) < 4:
        raise PolytopeError("degenerate body")
    # sort on rounded keys so that float noise and -0.0 do not change the order
    order = np.lexsort((np.round(vertices, 9) + 0.0).T[::-1])
    horder = np.lexsort((np.round(h, 9) + 0.0).T[::-1])
    return Polytope3(h[horder], vertices[order], name)


def from_halfspaces(rows, name: str = "") -> Polytope3:
    h = _normalize(rows)
    _check_bounded(h)
    return _assemble(h, _facet_triples(h), name)


def from_vertices(points, name: str = "") -> Polytope3:
    pts = _dedup(np.asarray(points, dtype=float).reshape(-1, 3))
    if len(pts) < 4:
        raise PolytopeError("need at least 4 points")
    planes = []
    for i, j, k in itertools.combinations(range(len(pts)), 3):
        n = np.cross(pts[j] - pts[i], pts[k] - pts[i])
        nn = np.linalg.norm(n)
        if nn < 1e-12:
            continue
        n /= nn
        d = float(n @ pts[i])
        if d < 0:
            n, d = -n, -d
        if d <= TOL:
            continue  # plane through the origin: never a facet when the origin is interior
        if np.all(pts @ n <= d + TOL):
            planes.append([*n, d])
    if not planes:
        raise PolytopeError("origin is not interior to the convex hull")
    h = _dedup(np.asarray(planes))
    # planes through the origin were dropped, so an origin on the boundary leaves h unbounded
    if len(h) < 4:
        raise PolytopeError("degenerate point set")
    _check_bounded(h)
    return _assemble(h, pts, name)


def intersect(parts, name: str = "") -> Polytope3:
    """Intersection of (polytope, scale) pairs."""
    rows = np.vstack([p.scaled(c).halfspaces for p, c in parts])
    return from_halfspaces(rows, name)


def difference_body(p: Polytope3) -> Polytope3:
    """(P - P)/2, which is centrally symmetric."""
    v = p.vertices
    pts = ((v[:, None, :] - v[None, :, :]) / 2).reshape(-1, 3)
    hull = ConvexHull(pts)
    # qhull returns outward unit normals with offset as the 4th entry
    eq = hull.equations.copy()
    h = _dedup(np.column_stack([eq[:, :3], -eq[:, 3]]))
    return _assemble(h, _dedup(pts[hull.vertices]), f"D({p.name})" if p.name else "")


def radii(p: Polytope3) -> tuple:
    """(inradius, circumradius) about the origin."""
    return float(p.halfspaces[:, 3].min()), float(np.linalg.norm(p.vertices, axis=1).max())


@dataclass
class SandwichCertificate:
    name: str
    r_in: float
    r_out: float
    ratio: float
    threshold: float
    margin: float
    verdict: str
    witness_vertex: list | None = None
    witness_facet: dict | None = None
    tested: str = "body"
    body_ratio: float | None = None
    notes: list = field(default_factory=list)

    @property
    def kissing12(self) -> bool:
        return self.verdict == "kissing12"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "r_in": self.r_in,
            "r_out": self.r_out,
            "ratio": self.ratio,
            "threshold": self.threshold,
            "margin": self.margin,
            "verdict": self.verdict,
            "witness_vertex": self.witness_vertex,
            "witness_facet": self.witness_facet,
            "tested": self.tested,
            "body_ratio": self.body_ratio,
            "notes": list(self.notes),
        }


_THRESHOLD_NOTE = (
    f"threshold 2*sqrt(3)/3 = {THRESHOLD:.6f} applies to C itself; "
    f"the bound 4*sqrt(3)/3 = {DOUBLED_THRESHOLD:.6f} applies to 2C and is the same condition"
)


def sandwich_verdict(p: Polytope3, margin: float = TOL, difference_body_ok: bool = False) -> SandwichCertificate:
    """Decide whether B^3 subset C/r_in subset int(2/sqrt(3) B^3).

    If so every lattice packing of C has at most 12 touching neighbours,
    and 12 is always attained, so kappa*(C) = 12.
    A body without central symmetry raises DomainError unless
    difference_body_ok is set, in which case the test runs on (P - P)/2,
    whose lattice packings and contacts are those of P.
    """
    notes = [_THRESHOLD_NOTE]
    body_ratio = None
    tested = "body"
    q = p
    if not p.symmetric:
        if not difference_body_ok:
            raise DomainError(f"{p.name or 'polytope'} is not centrally symmetric")
        r_in, r_out = radii(p)
        body_ratio = r_out / r_in
        q = difference_body(p)
        tested = "difference_body"
        notes.append("body is not centrally symmetric; verdict uses (P - P)/2")
    r_in, r_out = radii(q)
    ratio = r_out / r_in
    iv = int(np.argmax(np.linalg.norm(q.vertices, axis=1)))
    ifc = int(np.argmin(q.halfspaces[:, 3]))
    facet = q.halfspaces[ifc]
    return SandwichCertificate(
        name=p.name,
        r_in=r_in,
        r_out=r_out,
        ratio=ratio,
        threshold=THRESHOLD,
        margin=margin,
        verdict="kissing12" if ratio < THRESHOLD - margin else "inconclusive",
        witness_vertex=[float(x) for x in q.vertices[iv]],
        witness_facet={"normal": [float(x) for x in facet[:3]], "offset": float(facet[3]),
                       "foot": [float(x) for x in facet[:3] * facet[3]]},
        tested=tested,
        body_ratio=body_ratio if body_ratio is not None else ratio,
        notes=notes,
    )


LP_LOW = math.log(3) / math.log(2)
LP_HIGH = math.log(3) / (math.log(3) - math.log(2))


def lp_ball_verdict(p: float) -> SandwichCertificate:
    """Sandwich test for the unit ball of the l_p norm in R^3, p > 1."""
    if not p > 1:
        raise DomainError(f"p must exceed 1, got {p}")
    if math.isinf(p):
        e = 0.5
    else:
        e = 0.5 - 1 / p
    ratio = 3 ** abs(e)
    # extreme radii sit on the axes and on the diagonal (t, t, t)
    if e < 0:
        r_in, r_out = 3**e, 1.0
    else:
        r_in, r_out = 1.0, 3**e
    inside = LP_LOW < p < LP_HIGH
    return SandwichCertificate(
        name=f"lp_ball(p={p})",
        r_in=r_in,
        r_out=r_out,
        ratio=ratio,
        threshold=THRESHOLD,
        margin=0.0,
        verdict="kissing12" if inside else "inconclusive",
        notes=[_THRESHOLD_NOTE, f"kissing12 exactly on the open interval ({LP_LOW!r}, {LP_HIGH!r})"],
    )


@dataclass
class LpContactReport:
    p: float
    contacts: int
    packing: bool
    violators: list
    scanned: int

    def to_json(self) -> dict:
        return {"p": self.p, "contacts": self.contacts, "packing": self.packing,
                "violators": self.violators, "scanned": self.scanned}


LP_BASIS = ((2, 0, 0), (0, 2, 0), (1, 1, 1))


def lp_contact_count(radius: int = 3) -> LpContactReport:
    """Lattice points of 2Z^3 + Z(1,1,1) on the boundary of twice the l_p ball, p = log2(3).

    At this p, |x|^p is 0, 1, 3 for |x| = 0, 1, 2, and exceeds 3 (= 2^p) for
    |x| >= 3, so membership is decided with integers. Any point with
    l_p norm <= 2 has all |x_i| <= 2, hence lattice coordinates within radius 3.
    """
    power = {0: 0, 1: 1, 2: 3}
    contacts = 0
    violators = []
    scanned = 0
    rng = range(-radius, radius + 1)
    for z in itertools.product(rng, rng, rng):
        if z == (0, 0, 0):
            continue
        scanned += 1
        x = [sum(z[i] * LP_BASIS[i][k] for i in range(3)) for k in range(3)]
        if any(abs(c) > 2 for c in x):
            continue
        s = sum(power[abs(c)] for c in x)
        if s == 3:
            contacts += 1
        elif s < 3:
            violators.append(x)
    return LpContactReport(p=LP_LOW, contacts=contacts, packing=not violators,
                           violators=violators, scanned=scanned)


# builders

def _pd_rows():
    return (abs_halfspaces((TAU, 1, 0)) + abs_halfspaces((0, TAU, 1))
            + abs_halfspaces((1, 0, TAU)))


def _pi_rows():
    return (abs_halfspaces((1, 1, 1)) + abs_halfspaces((TAU, 0, 1 / TAU))
            + abs_halfspaces((1 / TAU, TAU, 0)) + abs_halfspaces((0, 1 / TAU, TAU)))


def _prtc_rows():
    a, b, c = 0.5, TAU / 2, (TAU + 1) / 2
    return (abs_halfspaces((TAU, 0, 0)) + abs_halfspaces((0, TAU, 0)) + abs_halfspaces((0, 0, TAU))
            + abs_halfspaces((a, b, c)) + abs_halfspaces((b, c, a)) + abs_halfspaces((c, a, b)))


@lru_cache(maxsize=None)
def dodecahedron() -> Polytope3:
    return from_halfspaces(_pd_rows(), "dodecahedron")


@lru_cache(maxsize=None)
def icosahedron() -> Polytope3:
    return from_halfspaces(_pi_rows(), "icosahedron")


@lru_cache(maxsize=None)
def rhombic_triacontahedron() -> Polytope3:
    return from_halfspaces(_prtc_rows(), "rhombic_triacontahedron")


# scale factors for the Archimedean intersections, as (body, factor)
RECIPES = {
    "truncated_icosahedron": (("icosahedron", 1 + TAU), ("dodecahedron", 4 / 3 + TAU)),
    "rhombicosidodecahedron": (
        ("rhombic_triacontahedron", 3 * TAU + 2), ("icosahedron", 4 * TAU + 1), ("dodecahedron", 3 * (1 + TAU))),
    "truncated_icosidodecahedron": (
        ("rhombic_triacontahedron", 5 * TAU + 4), ("icosahedron", 6 * TAU + 3), ("dodecahedron", 5 * (1 + TAU))),
}

_BASE = {
    "dodecahedron": dodecahedron,
    "icosahedron": icosahedron,
    "rhombic_triacontahedron": rhombic_triacontahedron,
}


def _recipe(name):
    return intersect([(_BASE[b](), c) for b, c in RECIPES[name]], name)


@lru_cache(maxsize=None)
def truncated_icosahedron() -> Polytope3:
    return _recipe("truncated_icosahedron")


@lru_cache(maxsize=None)
def rhombicosidodecahedron() -> Polytope3:
    return _recipe("rhombicosidodecahedron")


@lru_cache(maxsize=None)
def truncated_icosidodecahedron() -> Polytope3:
    return _recipe("truncated_icosidodecahedron")


def cube(a: float = 1.0) -> Polytope3:
    return from_halfspaces(abs_halfspaces((1, 0, 0), a) + abs_halfspaces((0, 1, 0), a)
                           + abs_halfspaces((0, 0, 1), a), "cube")


@lru_cache(maxsize=None)
def snub_dodecahedron() -> Polytope3:
    return load_polytope(data_dir() / "polytopes" / "snub_dodecahedron.json")


_SHIPPED = {
    "dodecahedron": dodecahedron,
    "icosahedron": icosahedron,
    "rhombic_triacontahedron": rhombic_triacontahedron,
    "truncated_icosahedron": truncated_icosahedron,
    "rhombicosidodecahedron": rhombicosidodecahedron,
    "truncated_icosidodecahedron": truncated_icosidodecahedron,
    "snub_dodecahedron": snub_dodecahedron,
    "cube": cube,
}


def shipped_names() -> list:
    return sorted(_SHIPPED)


def shipped(name: str) -> Polytope3:
    try:
        return _SHIPPED[name]()
    except KeyError:
        raise KeyError(f"unknown polytope {name!r}; known: {', '.join(shipped_names())}") from None


# JSON

def _num(x) -> float:
    return float(x)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def polytope_from_json(doc: dict, base: Path | None = None) -> Polytope3:
    name = doc.get("name", "")
    if "hrep" in doc:
        return from_halfspaces([[_num(c) for c in row] for row in doc["hrep"]], name)
    if "vrep" in doc:
        return from_vertices([[_num(c) for c in row] for row in doc["vrep"]], name)
    if "intersect" in doc:
        parts = []
        for item in doc["intersect"]:
            if "file" in item:
                body = load_polytope((base or Path(".")) / item["file"])
            else:
                body = shipped(item["body"])
            parts.append((body, _num(item.get("scale", "1"))))
        return intersect(parts, name)
    raise PolytopeError("polytope JSON needs one of 'hrep', 'vrep', 'intersect'")


def load_polytope(path) -> Polytope3:
    path = Path(path)
    with path.open() as fh:
        doc = json.load(fh)
    return polytope_from_json(doc, base=path.parent)


def polytope_to_json(p: Polytope3, rep: str = "hrep") -> dict:
    if rep == "hrep":
        rows = [[_fmt(c) for c in h] for h in p.halfspaces]
    elif rep == "vrep":
        rows = [[_fmt(c) for c in v] for v in p.vertices]
    else:
        raise ValueError("rep must be 'hrep' or 'vrep'")
    return {"name": p.name, rep: rows}

"""Lattices as rational Gram matrices, plus the built-in catalog."""
from __future__ import annotations

import json
import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional

from .exact import RationalMatrix, as_rational, det, format_rational

MAX_DIM = 24

__all__ = [
    "GramLattice",
    "LatticeError",
    "LatticeCatalogEntry",
    "PackingVerdict",
    "gram_from_basis",
    "parse_surd",
    "scale",
    "is_packing_lattice",
    "catalog",
    "catalog_entry",
    "catalog_names",
    "load_lattice",
    "resolve_lattice",
    "data_dir",
]


class LatticeError(ValueError):
    """Malformed lattice input (not symmetric, not positive definite, ...)."""


@dataclass(frozen=True)
class GramLattice:
    gram: RationalMatrix
    name: Optional[str] = None
    scale_note: str = ""

    def __post_init__(self):
        g = self.gram
        if not isinstance(g, RationalMatrix):
            g = RationalMatrix(g)
            object.__setattr__(self, "gram", g)
        if not g.is_square:
            raise LatticeError(f"Gram matrix is {g.rows}x{g.cols}")
        if not 1 <= g.rows <= MAX_DIM:
            raise LatticeError(f"dimension {g.rows} outside 1..{MAX_DIM}")
        if not g.is_symmetric():
            raise LatticeError("Gram matrix is not symmetric")
        for k in range(1, g.rows + 1):
            if g.leading_minor(k) <= 0:
                raise LatticeError(f"Gram matrix not positive definite (leading minor {k} <= 0)")

    @property
    def dim(self) -> int:
        return self.gram.rows

    @property
    def det(self) -> Fraction:
        return det(self.gram)

    def norm2(self, z) -> Fraction:
        return self.inner(z, z)

    def inner(self, x, y) -> Fraction:
        g = self.gram.entries
        return sum(
            (xi * gij * yj for xi, row in zip(x, g) if xi for gij, yj in zip(row, y) if yj),
            Fraction(0),
        )

    @property
    def label(self) -> str:
        base = self.name or f"<{self.dim}-dim lattice>"
        return f"{base} ({self.scale_note})" if self.scale_note else base

    def to_json(self) -> dict:
        return {
            "name": self.name or "",
            "dim": self.dim,
            "gram": self.gram.to_json(),
        }


@dataclass(frozen=True)
class LatticeCatalogEntry:
    name: str
    lattice: GramLattice
    expected_min_norm2: Fraction
    description: str = ""

    @property
    def dim(self) -> int:
        return self.lattice.dim

    @property
    def gram(self) -> RationalMatrix:
        return self.lattice.gram

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "gram": self.gram.to_json(),
            "expected_min_norm2": format_rational(self.expected_min_norm2),
            "description": self.description,
        }


# --- surds -----------------------------------------------------------------

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?P<coef>\d+(?:/\d+)?)?\s*\*?\s*
        (?:sqrt\((?P<rad>\d+)\))?\s*
        (?:/\s*(?:sqrt\((?P<drad>\d+)\)|(?P<dint>\d+)))?\s*""",
    re.VERBOSE,
)


def _squarefree(n: int) -> tuple[int, int]:
    """Return (k, f) with n = k*k*f and f squarefree."""
    k, f, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            k *= p
        if n % p == 0:
            n //= p
            f *= p
        p += 1
    return k, f * n


def parse_surd(expr) -> dict[int, Fraction]:
    """Parse a coordinate into ``{squarefree radicand: rational coefficient}``.

    Accepts ints, Fractions, ``"p/q"``, and sums of terms like
    ``"2/3*sqrt(6)"``, ``"-sqrt(3)"``, ``"sqrt(5)/sqrt(3)"``, ``"1/sqrt(2)"``.
    A pre-parsed dict or a list of ``(coef, radicand)`` pairs is also taken.
    """
    out: dict[int, Fraction] = {}

    def add(c: Fraction, r: int):
        k, f = _squarefree(r)
        out[f] = out.get(f, Fraction(0)) + c * k

    if isinstance(expr, dict):
        for r, c in expr.items():
            add(as_rational(c), int(r))
    elif isinstance(expr, (list, tuple)):
        for c, r in expr:
            add(as_rational(c), int(r))
    elif isinstance(expr, str):
        s = expr.replace(" ", "")
        if not s:
            raise ValueError("empty coordinate")
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos or not (m["coef"] or m["rad"]):
                raise ValueError(f"cannot parse coordinate {expr!r} at {s[pos:]!r}")
            c = Fraction(m["coef"]) if m["coef"] else Fraction(1)
            if m["sign"] == "-":
                c = -c
            r = int(m["rad"]) if m["rad"] else 1
            if m["drad"]:
                d = int(m["drad"])
                # a/sqrt(d) = a*sqrt(d)/d
                c /= d
                r *= d
            elif m["dint"]:
                c /= int(m["dint"])
            add(c, r)
            pos = m.end()
    else:
        add(as_rational(expr), 1)
    return {r: c for r, c in out.items() if c}


def _surd_product_sum(xs, ys) -> Fraction:
    acc: dict[int, Fraction] = {}
    for x, y in zip(xs, ys):
        for r1, c1 in x.items():
            for r2, c2 in y.items():
                k, f = _squarefree(r1 * r2)
                acc[f] = acc.get(f, Fraction(0)) + c1 * c2 * k
    irrational = {f: c for f, c in acc.items() if f != 1 and c}
    if irrational:
        raise LatticeError(f"inner product is not rational (surd parts {irrational})")
    return acc.get(1, Fraction(0))


def gram_from_basis(vectors, name: Optional[str] = None) -> GramLattice:
    """Gram matrix of a basis whose coordinates are rational surd sums."""
    rows = [[parse_surd(x) for x in v] for v in vectors]
    if len({len(r) for r in rows}) != 1:
        raise LatticeError("basis vectors have different lengths")
    n = len(rows)
    g = [[_surd_product_sum(rows[i], rows[j]) for j in range(n)] for i in range(n)]
    return GramLattice(RationalMatrix(g), name=name)


def length_factor(c2) -> str:
    """``sqrt(c2)`` as text, without the root when c2 is a rational square."""
    c2 = as_rational(c2)
    a, b = c2.numerator, c2.denominator
    ra, rb = math.isqrt(a), math.isqrt(b)
    if ra * ra == a and rb * rb == b:
        return format_rational(Fraction(ra, rb))
    return f"sqrt({format_rational(c2)})"


def scale(lat: GramLattice, c2) -> GramLattice:
    """Scale lengths by sqrt(c2), i.e. multiply the Gram matrix by c2."""
    c2 = as_rational(c2)
    if c2 <= 0:
        raise ValueError(f"scale factor must be positive, got {c2}")
    if c2 == 1:
        return lat
    note = f"scaled by {length_factor(c2)}"
    if lat.scale_note:
        note = f"{lat.scale_note}; {note}"
    return GramLattice(lat.gram.scale(c2), name=lat.name, scale_note=note)


# --- packing check -----------------------------------------------------------


@dataclass(frozen=True)
class PackingVerdict:
    is_packing: bool
    min_norm2: Fraction
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.is_packing


def is_packing_lattice(lat: GramLattice) -> PackingVerdict:
    """Unit balls centred at the lattice points pack iff min norm^2 >= 4."""
    from .shells import ShellQuery, enumerate_shell, min_norm2

    m = min_norm2(lat)
    if m >= 4:
        return PackingVerdict(True, m)
    shell = enumerate_shell(ShellQuery(lat, m, m, mode="collect"))
    return PackingVerdict(False, m, shell.vectors[0].coords)


# --- catalog -----------------------------------------------------------------

ENV_DATA_DIR = "LATTICE_KISSING_DATA"


def data_dir() -> Path:
    override = os.environ.get(ENV_DATA_DIR)
    if override:
        return Path(override)
    return Path(str(resources.files("lattice_kissing") / "data"))


def _cartan_from_edges(n: int, edges) -> list:
    g = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        g[i][j] = g[j][i] = -1
    return g


def _z(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _a(n):
    return _cartan_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _d(n):
    if n < 2:
        raise KeyError("D_n needs n >= 2")
    if n == 2:
        # basis e1-e2, e1+e2
        return [[2, 0], [0, 2]]
    edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    return _cartan_from_edges(n, edges)


def _a_dual(n):
    # inverse of the A_n Cartan matrix: min(i,j)*(n+1-max(i,j))/(n+1), 1-based
    return [
        [Fraction(min(i, j) * (n + 1 - max(i, j)), n + 1) for j in range(1, n + 1)]
        for i in range(1, n + 1)
    ]


def _e(n):
    # Bourbaki numbering: chain 1-3-4-5-...-n, node 2 attached to 4
    edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
    return _cartan_from_edges(n, edges)


_FAMILY = re.compile(r"^(Z|A|D)(\d+)(\*?)$")

_FAMILY_MIN = {
    "Z": lambda n: Fraction(1),
    "A": lambda n: Fraction(2),
    "D": lambda n: Fraction(2),
    "A*": lambda n: Fraction(n, n + 1),
}

_FAMILY_DESC = {
    "Z": "integer lattice Z^{n}",
    "A": "root lattice A_{n} (Cartan matrix)",
    "D": "root lattice D_{n} = {{v in Z^{n} : sum v_i even}}",
    "A*": "dual lattice A_{n}^* (inverse Cartan matrix of A_{n})",
}

_EXCEPTIONAL = {
    "E6": (6, "root lattice E6 (Cartan matrix)"),
    "E7": (7, "root lattice E7 (Cartan matrix)"),
    "E8": (8, "root lattice E8 (Cartan matrix), even unimodular"),
}

DEFAULT_FAMILY_RANGE = range(1, 9)


@lru_cache(maxsize=None)
def _json_entries() -> dict:
    out = {}
    for path in sorted((data_dir() / "lattices").glob("*.json")):
        entry = _entry_from_json(json.loads(path.read_text()))
        out[entry.name] = entry
    return out


def _entry_from_json(doc: dict) -> LatticeCatalogEntry:
    try:
        gram = RationalMatrix.from_json(doc["gram"])
        name = doc["name"]
    except (KeyError, TypeError) as exc:
        raise LatticeError(f"malformed lattice document: {exc}") from None
    if "dim" in doc and int(doc["dim"]) != gram.rows:
        raise LatticeError(f"{name}: dim {doc['dim']} does not match Gram size {gram.rows}")
    lat = GramLattice(gram, name=name)
    emin = as_rational(doc["expected_min_norm2"]) if "expected_min_norm2" in doc else None
    return LatticeCatalogEntry(name, lat, emin, doc.get("description", ""))


def catalog_entry(name: str) -> LatticeCatalogEntry:
    """Look up a catalog lattice: ``Zn``, ``An``, ``Dn``, ``An*``, ``E6``-``E8``,
    ``Leech`` or one of the shipped special lattices."""
    entries = _json_entries()
    if name in entries:
        return entries[name]
    if name in _EXCEPTIONAL:
        n, desc = _EXCEPTIONAL[name]
        return LatticeCatalogEntry(name, GramLattice(RationalMatrix(_e(n)), name=name), Fraction(2), desc)
    m = _FAMILY.match(name)
    if m:
        fam, n = m[1] + m[3], int(m[2])
        if fam in ("Z", "A", "D", "A*") and 1 <= n <= MAX_DIM and not (fam == "D" and n < 2):
            build = {"Z": _z, "A": _a, "D": _d, "A*": _a_dual}[fam]
            lat = GramLattice(RationalMatrix(build(n)), name=name)
            return LatticeCatalogEntry(name, lat, _FAMILY_MIN[fam](n), _FAMILY_DESC[fam].format(n=n))
    raise KeyError(f"unknown lattice {name!r}")


def catalog(name: str) -> GramLattice:
    return catalog_entry(name).lattice


def catalog_names() -> list[str]:
    names = []
    for n in DEFAULT_FAMILY_RANGE:
        names += [f"Z{n}", f"A{n}", f"A{n}*"]
        if n >= 2:
            names.append(f"D{n}")
    names += list(_EXCEPTIONAL)
    names += sorted(_json_entries())
    return names


def load_lattice(path) -> LatticeCatalogEntry:
    return _entry_from_json(json.loads(Path(path).read_text()))


def resolve_lattice(ref: str, c2=None) -> GramLattice:
    """Catalog name or JSON file path, optionally scaled by ``c2``."""
    p = Path(ref)
    if ref.endswith(".json") or p.is_file():
        lat = load_lattice(p).lattice
    else:
        lat = catalog(ref)
    if c2 is not None:
        lat = scale(lat, c2)
    return lat


def scale_to_min_norm(entry: LatticeCatalogEntry, target=4) -> GramLattice:
    """Scale a catalog entry so its documented minimum norm^2 becomes ``target``."""
    return scale(entry.lattice, as_rational(target) / entry.expected_min_norm2)

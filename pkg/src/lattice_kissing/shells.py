"""Exact enumeration of lattice vectors in a norm^2 interval.

The Gram matrix G is split as G = L D L^T (unit lower triangular L) so
that z^T G z = sum_i D_i (z_i + sum_{j>i} L_ji z_j)^2.  Everything is then
rescaled to integers: with Y_i = den_i * (z_i + sum_{j>i} L_ji z_j)
integral, S * z^T G z = sum_i w_i Y_i^2 for integer weights w_i and one
global integer S.  The depth-first search (coordinate n-1 first) only
touches Python ints, so every bound is exact.
"""
from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import NamedTuple, Optional

from .exact import as_rational, format_rational
from .lattice import MAX_DIM, GramLattice

DEFAULT_NODE_BUDGET = 10**8

__all__ = [
    "DEFAULT_NODE_BUDGET",
    "EnumerationRefused",
    "ShellQuery",
    "ShellVector",
    "ShellSet",
    "Certificate",
    "enumerate_shell",
    "estimate_nodes",
    "min_norm2",
    "kappa_star_alpha_certificate",
]


class EnumerationRefused(RuntimeError):
    """The requested enumeration exceeds the node budget or size limits."""


@dataclass(frozen=True)
class ShellQuery:
    lattice: GramLattice
    lo2: Fraction
    hi2: Fraction
    mode: str = "count"

    def __post_init__(self):
        lo2, hi2 = as_rational(self.lo2), as_rational(self.hi2)
        object.__setattr__(self, "lo2", lo2)
        object.__setattr__(self, "hi2", hi2)
        if lo2 < 0:
            raise ValueError(f"lo2 must be >= 0, got {lo2}")
        if lo2 > hi2:
            raise ValueError(f"empty interval [{lo2}, {hi2}]")
        if self.mode not in ("count", "collect"):
            raise ValueError(f"mode must be 'count' or 'collect', got {self.mode!r}")


@dataclass(frozen=True, order=True)
class ShellVector:
    norm2: Fraction
    coords: tuple

    def __neg__(self):
        return ShellVector(self.norm2, tuple(-c for c in self.coords))


@dataclass
class ShellSet:
    query: ShellQuery
    histogram: dict
    vectors: Optional[list] = None
    nodes: int = 0

    @property
    def total(self) -> int:
        return sum(self.histogram.values())

    def __len__(self):
        return self.total

    def __iter__(self):
        if self.vectors is None:
            raise ValueError("shell was enumerated in count mode")
        return iter(self.vectors)

    def pairs(self) -> list:
        """One representative per antipodal pair (first nonzero coordinate positive)."""
        if self.vectors is None:
            raise ValueError("shell was enumerated in count mode")
        return [v for v in self.vectors if _leading_positive(v.coords)]

    def coords_set(self) -> set:
        return {v.coords for v in self}

    def to_json(self, include_vectors: bool = False, pairs_only: bool = False) -> dict:
        doc = {
            "total": self.total,
            "histogram": {format_rational(k): v for k, v in sorted(self.histogram.items())},
            "lo2": format_rational(self.query.lo2),
            "hi2": format_rational(self.query.hi2),
        }
        if include_vectors and self.vectors is not None:
            vs = self.pairs() if pairs_only else self.vectors
            doc["vectors"] = [
                {"coords": list(v.coords), "norm2": format_rational(v.norm2)} for v in vs
            ]
        return doc


def _leading_positive(coords) -> bool:
    for c in coords:
        if c:
            return c > 0
    return False


class _Plan(NamedTuple):
    n: int
    dens: tuple  # den_i
    weights: tuple  # w_i
    coeffs: tuple  # per level: tuple of (j, c_ji) with j > i
    scale: int  # S
    lo: int  # ceil(S * lo2)
    hi: int  # floor(S * hi2)
    d_real: tuple  # D_i as Fractions of the original Gram, for estimates


def _ldl(g):
    n = len(g)
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = [Fraction(0)] * n
    for i in range(n):
        D[i] = g[i][i] - sum((L[i][k] ** 2 * D[k] for k in range(i)), Fraction(0))
        for j in range(i + 1, n):
            L[j][i] = (g[j][i] - sum((L[j][k] * L[i][k] * D[k] for k in range(i)), Fraction(0))) / D[i]
    return L, D


def _plan(lat: GramLattice, lo2: Fraction, hi2: Fraction) -> _Plan:
    g = lat.gram.entries
    n = len(g)
    gden = lcm(*(x.denominator for row in g for x in row))
    gi = [[x * gden for x in row] for row in g]
    L, D = _ldl(gi)
    dens, coeffs, wprime = [], [], []
    for i in range(n):
        d = lcm(1, *(L[j][i].denominator for j in range(i + 1, n)))
        dens.append(d)
        coeffs.append(tuple((j, int(L[j][i] * d)) for j in range(i + 1, n) if L[j][i]))
        wprime.append(D[i] / (d * d))
    W = lcm(*(w.denominator for w in wprime))
    weights = tuple(int(w * W) for w in wprime)
    S = W * gden
    lo = math.ceil(lo2 * S)
    hi = math.floor(hi2 * S)
    return _Plan(n, tuple(dens), weights, tuple(coeffs), S, lo, hi, tuple(x / gden for x in D))


def estimate_nodes(lat: GramLattice, hi2) -> float:
    """Gaussian-heuristic estimate of the search-tree size for radius^2 ``hi2``."""
    p = _plan(lat, Fraction(0), as_rational(hi2))
    est, vol_det = 0.0, 1.0
    r = math.sqrt(float(hi2))
    for k in range(1, p.n + 1):
        vol_det *= float(p.d_real[p.n - k])
        vk = math.pi ** (k / 2) / math.gamma(k / 2 + 1)
        est += vk * r**k / math.sqrt(vol_det)
    return est


class _Walker:
    """Depth-first traversal over one subtree; owns its own histogram."""

    def __init__(self, plan: _Plan, collect: bool, budget: Optional[int]):
        self.p = plan
        self.collect = collect
        self.budget = budget
        self.hist = Counter()
        self.found = []
        self.nodes = 0
        self.z = [0] * plan.n

    def run(self, level: int, acc: int, top_zero: bool):
        if level < 0:
            return
        self._walk(level, acc, top_zero)

    def _walk(self, level, acc, top_zero):
        p, z = self.p, self.z
        w = p.weights[level]
        d = p.dens[level]
        s = 0
        for j, c in p.coeffs[level]:
            s += c * z[j]
        t = isqrt((p.hi - acc) // w)
        lo = -((s + t) // d)
        hi = (t - s) // d
        if top_zero and lo < 0:
            lo = 0
        if hi < lo:
            return
        self.nodes += hi - lo + 1
        if self.budget is not None and self.nodes > self.budget:
            raise EnumerationRefused(f"node budget {self.budget} exceeded")
        if level == 0:
            plo, hist = p.lo, self.hist
            for v in range(lo, hi + 1):
                y = d * v + s
                val = acc + w * y * y
                if val >= plo and (v or not top_zero):
                    hist[val] += 1
                    if self.collect:
                        z[0] = v
                        self.found.append((val, tuple(z)))
            z[0] = 0
            return
        for v in range(lo, hi + 1):
            y = d * v + s
            z[level] = v
            self._walk(level - 1, acc + w * y * y, top_zero and v == 0)
        z[level] = 0


def _prefixes(plan: _Plan, depth: int):
    """Top-of-tree assignments (z_{n-1}, ..., z_{n-depth}) as independent tasks."""
    out = []

    def rec(level, acc, top_zero, z):
        if plan.n - 1 - level == depth:
            out.append((tuple(z), acc, top_zero))
            return
        w, d = plan.weights[level], plan.dens[level]
        full = [0] * plan.n
        for k, v in zip(range(plan.n - 1, level, -1), z):
            full[k] = v
        s = sum(c * full[j] for j, c in plan.coeffs[level])
        t = isqrt((plan.hi - acc) // w)
        lo, hi = -((s + t) // d), (t - s) // d
        if top_zero and lo < 0:
            lo = 0
        for v in range(lo, hi + 1):
            y = d * v + s
            rec(level - 1, acc + w * y * y, top_zero and v == 0, z + [v])

    rec(plan.n - 1, 0, True, [])
    return out


def _run_task(args):
    plan, collect, budget, prefix, acc, top_zero = args
    wk = _Walker(plan, collect, budget)
    for k, v in zip(range(plan.n - 1, -1, -1), prefix):
        wk.z[k] = v
    level = plan.n - 1 - len(prefix)
    if level < 0:
        # the prefix is a full vector
        if acc >= plan.lo and any(prefix):
            wk.hist[acc] += 1
            if collect:
                wk.found.append((acc, tuple(wk.z)))
    else:
        wk.run(level, acc, top_zero)
    return wk.hist, wk.found, wk.nodes


def enumerate_shell(
    q: ShellQuery,
    *,
    budget: Optional[int] = DEFAULT_NODE_BUDGET,
    long: bool = False,
    workers: int = 1,
) -> ShellSet:
    """All nonzero z with lo2 <= z^T G z <= hi2 (closed at both ends).

    Only one vector of each antipodal pair is visited; counts are doubled
    and, in collect mode, negatives are added back.  ``long=True`` lifts
    the node budget.  ``workers > 1`` splits the top of the search tree
    across processes; totals do not depend on the split.
    """
    lat = q.lattice
    if lat.dim > MAX_DIM:
        raise EnumerationRefused(f"dimension {lat.dim} > {MAX_DIM}")
    if long:
        budget = None
    if budget is not None:
        est = estimate_nodes(lat, q.hi2)
        if est > budget:
            raise EnumerationRefused(
                f"estimated {est:.3g} search nodes for {lat.label} at hi2={q.hi2} "
                f"exceeds budget {budget:.3g}; pass long=True (--long) to run anyway"
            )
    plan = _plan(lat, q.lo2, q.hi2)
    collect = q.mode == "collect"
    if workers > 1 and plan.n > 1:
        depth = min(2, plan.n - 1)
        tasks = [(plan, collect, budget, pre, acc, tz) for pre, acc, tz in _prefixes(plan, depth)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        results = [_run_task((plan, collect, budget, (), 0, True))]
    hist = Counter()
    found = []
    nodes = 0
    for h, f, k in results:
        hist.update(h)
        found.extend(f)
        nodes += k
    S = plan.scale
    histogram = {Fraction(val, S): 2 * c for val, c in sorted(hist.items())}
    vectors = None
    if collect:
        vectors = []
        for val, z in found:
            nv = Fraction(val, S)
            vectors.append(ShellVector(nv, z))
            vectors.append(ShellVector(nv, tuple(-c for c in z)))
        vectors.sort()
    return ShellSet(q, histogram, vectors, nodes)


def min_norm2(lat: GramLattice) -> Fraction:
    """Minimum of z^T G z over nonzero integer z."""
    bound = min(lat.gram[i, i] for i in range(lat.dim))
    shell = enumerate_shell(ShellQuery(lat, Fraction(0), bound), long=True)
    return min(shell.histogram)


@dataclass
class Certificate:
    lattice: str
    dim: int
    hi2: Fraction
    is_packing: bool
    min_norm2: Fraction
    count: int
    histogram: dict
    bound: Optional[int]
    bound_respected: Optional[bool]

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice,
            "dim": self.dim,
            "lo2": "4",
            "hi2": format_rational(self.hi2),
            "is_packing": self.is_packing,
            "min_norm2": format_rational(self.min_norm2),
            "count": self.count,
            "histogram": {format_rational(k): v for k, v in sorted(self.histogram.items())},
            "bound": self.bound,
            "bound_respected": self.bound_respected,
        }


def kappa_star_alpha_certificate(lat: GramLattice, alpha2plus, **kw) -> Certificate:
    """Count of X = {v : 4 <= |v|^2 <= (2+alpha)^2} plus the 2(2^n - 1) bound check.

    The bound only applies below (2+alpha)^2 = 8; above it ``bound`` is None.
    """
    from .lattice import is_packing_lattice

    hi2 = as_rational(alpha2plus)
    verdict = is_packing_lattice(lat)
    shell = enumerate_shell(ShellQuery(lat, Fraction(4), hi2), **kw)
    bound = 2 * (2**lat.dim - 1) if hi2 < 8 else None
    respected = None if bound is None else shell.total <= bound
    return Certificate(
        lat.label, lat.dim, hi2, verdict.is_packing, verdict.min_norm2,
        shell.total, shell.histogram, bound, respected,
    )

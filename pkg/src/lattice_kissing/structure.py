"""Combinatorics of shell sets: classes mod 2L, midpoint triples, lines,
and the integer feasibility system on class profiles."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional

from .exact import det
from .shells import ShellSet

__all__ = [
    "IntegrityError",
    "ClassPartition",
    "ClassProfile",
    "PairViolation",
    "CollinearLine",
    "MidpointTripleSet",
    "DoubleCountReport",
    "partition_mod2",
    "check_equivalent_pairs",
    "find_collinear_quadruples",
    "midpoint_triples",
    "check_triple_double_count",
    "solve_profile_system",
    "sublattice_indices",
]


class IntegrityError(RuntimeError):
    """An identity that must hold exactly failed; indicates a bug upstream."""


@dataclass(frozen=True)
class ClassProfile:
    """``m[i]`` = number of classes holding exactly ``i`` antipodal pairs."""

    m: dict

    def __getitem__(self, i: int) -> int:
        return self.m.get(i, 0)

    @property
    def pairs(self) -> int:
        return sum(i * c for i, c in self.m.items())

    @property
    def classes(self) -> int:
        return sum(self.m.values())

    def as_tuple(self, n: int) -> tuple:
        return tuple(self[i] for i in range(1, n + 1))

    def triple_count(self) -> int:
        """Number of midpoint triples implied by the profile: sum 2i(i-1) m_i."""
        return sum(2 * i * (i - 1) * c for i, c in self.m.items())

    def to_json(self) -> dict:
        return {str(i): c for i, c in sorted(self.m.items())}


@dataclass
class ClassPartition:
    n: int
    classes: dict  # residue tuple -> list[ShellVector]

    def sizes(self) -> dict:
        return {r: len(vs) // 2 for r, vs in self.classes.items()}


def _residue(coords) -> tuple:
    return tuple(c & 1 for c in coords)


def partition_mod2(shell: ShellSet) -> tuple[ClassPartition, ClassProfile]:
    """Group a collected shell by basis coordinates mod 2.

    A nonzero vector in the zero class is half of another lattice vector,
    which for a packing lattice is impossible below norm^2 16.
    """
    n = shell.query.lattice.dim
    classes = defaultdict(list)
    for v in shell:
        classes[_residue(v.coords)].append(v)
    zero = (0,) * n
    if zero in classes and shell.query.hi2 < 16:
        v = classes[zero][0]
        raise IntegrityError(
            f"vector {v.coords} (norm^2 {v.norm2}) is twice a lattice vector: not a packing lattice"
        )
    m = defaultdict(int)
    for vs in classes.values():
        if len(vs) % 2:
            raise IntegrityError("class not closed under negation")
        m[len(vs) // 2] += 1
    return ClassPartition(n, dict(classes)), ClassProfile(dict(sorted(m.items())))


@dataclass(frozen=True)
class PairViolation:
    v1: tuple
    v2: tuple
    norm2_1: Fraction
    norm2_2: Fraction
    inner: Fraction


def check_equivalent_pairs(shell: ShellSet) -> list[PairViolation]:
    """Equivalent v1 != +-v2 in X must both have norm^2 8 and be orthogonal.

    Returns the offending pairs (one entry per unordered pair, up to sign).
    """
    lat = shell.query.lattice
    part, _ = partition_mod2(shell)
    bad = []
    for vs in part.classes.values():
        reps = [v for v in vs if v.coords > tuple(-c for c in v.coords)]
        for a, b in combinations(reps, 2):
            ip = lat.inner(a.coords, b.coords)
            if not (a.norm2 == 8 and b.norm2 == 8 and ip == 0):
                bad.append(PairViolation(a.coords, b.coords, a.norm2, b.norm2, ip))
    return bad


@dataclass(frozen=True)
class CollinearLine:
    direction: tuple  # primitive, first nonzero entry positive
    base: tuple  # canonical point of the line
    points: tuple  # members of X on the line, ordered along direction

    def params(self) -> tuple:
        k = next(i for i, c in enumerate(self.direction) if c)
        return tuple((p[k] - self.base[k]) // self.direction[k] for p in self.points)


def _line_key(u, v):
    d = [b - a for a, b in zip(u, v)]
    g = 0
    for c in d:
        g = gcd(g, c)
    d = [c // g for c in d]
    k = next(i for i, c in enumerate(d) if c)
    if d[k] < 0:
        d = [-c for c in d]
    t = u[k] // d[k]
    base = tuple(a - t * c for a, c in zip(u, d))
    return tuple(d), base, k


def find_collinear_quadruples(shell: ShellSet, min_points: int = 4) -> list[CollinearLine]:
    """Lines (in basis coordinates) carrying at least ``min_points`` points of X."""
    pts = sorted(v.coords for v in shell)
    lines = defaultdict(set)
    keyed_k = {}
    for i, u in enumerate(pts):
        for v in pts[i + 1 :]:
            d, base, k = _line_key(u, v)
            s = lines[(d, base)]
            s.add(u)
            s.add(v)
            keyed_k[(d, base)] = k
    out = []
    for (d, base), s in lines.items():
        if len(s) >= min_points:
            k = keyed_k[(d, base)]
            out.append(CollinearLine(d, base, tuple(sorted(s, key=lambda p: p[k]))))
    out.sort(key=lambda ln: (ln.direction, ln.base))
    return out


@dataclass
class MidpointTripleSet:
    triples: list  # (v1, v2, v3) coordinate tuples with v2 = (v1 + v3)/2, v1 < v3

    def __len__(self):
        return len(self.triples)

    def centres(self) -> dict:
        """Number of triples per middle vector."""
        c = defaultdict(int)
        for _, mid, _ in self.triples:
            c[mid] += 1
        return dict(c)


def midpoint_triples(shell: ShellSet) -> MidpointTripleSet:
    """All {v1, v2, v3} in X with v2 = (v1 + v3)/2.

    (v1 + v3)/2 is a lattice vector exactly when v1 and v3 agree mod 2,
    so only pairs within one class need testing.
    """
    members = shell.coords_set()
    part, _ = partition_mod2(shell)
    triples = []
    for vs in part.classes.values():
        cs = sorted(v.coords for v in vs)
        for a, b in combinations(cs, 2):
            mid = tuple((x + y) // 2 for x, y in zip(a, b))
            if mid in members:
                triples.append((a, mid, b))
    triples.sort()
    return MidpointTripleSet(triples)


@dataclass(frozen=True)
class DoubleCountReport:
    triples: int
    from_profile: int
    kappa_prev: int
    m1: int
    rhs: int
    identity_holds: bool
    inequality_holds: bool
    tight: bool

    def to_json(self) -> dict:
        return {
            "count": self.triples,
            "identity_check": {
                "triples": self.triples,
                "sum_2i(i-1)m_i": self.from_profile,
                "pass": self.identity_holds,
            },
            "inequality_check": {
                "lhs": self.triples,
                "rhs": self.rhs,
                "kappa_prev": self.kappa_prev,
                "m1": self.m1,
                "pass": self.inequality_holds,
                "tight": self.tight,
            },
        }


def check_triple_double_count(
    profile: ClassProfile, triples: MidpointTripleSet, kappa_prev: int
) -> DoubleCountReport:
    """Count the midpoint triples two ways and compare with kappa_prev * m_1.

    The identity card(triples) == sum 2i(i-1) m_i is exact; failure raises
    :class:`IntegrityError`.  The inequality is reported, not raised.
    """
    t = len(triples)
    fp = profile.triple_count()
    if t != fp:
        raise IntegrityError(f"{t} midpoint triples but class profile implies {fp}")
    rhs = kappa_prev * profile[1]
    return DoubleCountReport(t, fp, kappa_prev, profile[1], rhs, True, t <= rhs, t == rhs)


# --- profile feasibility -------------------------------------------------------


def _lp_max(obj, a_c, cap_b, cap_c):
    """max obj.x  s.t.  sum x <= cap_b,  a_c.x <= cap_c,  x >= 0  (exact).

    Returns None when infeasible.  With two constraints every vertex has at
    most two nonzero coordinates, so enumerating those is exhaustive.
    """
    best = None

    def consider(val):
        nonlocal best
        if best is None or val > best:
            best = val

    if cap_b >= 0 and cap_c >= 0:
        consider(Fraction(0))
    k = len(obj)
    for j in range(k):
        lo, hi = Fraction(0), Fraction(cap_b)
        if a_c[j] > 0:
            hi = min(hi, Fraction(cap_c, 1) / a_c[j])
        elif a_c[j] < 0:
            lo = max(lo, Fraction(cap_c, 1) / a_c[j])
        elif cap_c < 0:
            continue
        if lo <= hi:
            consider(obj[j] * hi)
    for j in range(k):
        for l in range(j + 1, k):
            dd = a_c[l] - a_c[j]
            if dd == 0:
                continue
            xl = Fraction(cap_c - a_c[j] * cap_b, dd)
            xj = cap_b - xl
            if xj >= 0 and xl >= 0:
                consider(obj[j] * xj + obj[l] * xl)
    return best


class SearchBudgetExceeded(RuntimeError):
    pass


def solve_profile_system(
    n: int,
    kappa_prev: int,
    class_budget: int,
    target: int,
    *,
    strict: bool = False,
    max_class_size: Optional[int] = None,
    node_budget: int = 10**6,
) -> list[tuple]:
    """All nonnegative integer (m_1, ..., m_n) with

        sum i*m_i >= target/2,   sum m_i <= class_budget,
        sum_{i>=2} 2i(i-1) m_i <= kappa' * m_1,

    where kappa' = kappa_prev, or kappa_prev - 2 when ``strict`` (every
    norm-4 vector is the centre of fewer than kappa_prev/2 triples).
    ``max_class_size`` forces m_i = 0 above it (default n).
    """
    K = n if max_class_size is None else min(max_class_size, n)
    kap = kappa_prev - 2 if strict else kappa_prev
    need = -(-target // 2)
    coef = {i: 2 * i * (i - 1) for i in range(1, K + 1)}
    sols = []
    nodes = 0

    def feasible(free, cap_b, cap_c, need_left):
        # free: indices i >= 2 still open; m_1 is always open
        obj = [Fraction(1)] + [Fraction(i) for i in free]
        a_c = [Fraction(-kap)] + [Fraction(coef[i]) for i in free]
        best = _lp_max(obj, a_c, cap_b, cap_c)
        return best is not None and best >= need_left

    m = [0] * (K + 1)

    def rec(i, cap_b, cap_c, need_left):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise SearchBudgetExceeded(f"profile search exceeded {node_budget} nodes")
        if i == 1:
            # kap * m1 >= -cap_c ; m1 >= need_left ; m1 <= cap_b
            lo = max(0, need_left)
            if kap > 0:
                lo = max(lo, -(cap_c // kap))
            elif cap_c < 0:
                return
            for m1 in range(lo, cap_b + 1):
                m[1] = m1
                sols.append(tuple(m[1:]) + (0,) * (n - K))
            m[1] = 0
            return
        free_below = list(range(i - 1, 1, -1))
        seen_ok = False
        for v in range(0, cap_b + 1):
            nb, nc, nl = cap_b - v, cap_c - coef[i] * v, need_left - i * v
            if feasible(free_below, nb, nc, nl):
                seen_ok = True
                m[i] = v
                rec(i - 1, nb, nc, nl)
            elif seen_ok:
                # the relaxation's feasible set in m_i is an interval
                break
        m[i] = 0

    if K == 1:
        rec(1, class_budget, 0, need)
    elif feasible(list(range(K, 1, -1)), class_budget, 0, need):
        rec(K, class_budget, 0, need)
    sols.sort()
    return sols


def sublattice_indices(shell: ShellSet, below=None) -> dict:
    """Index [L : L'] for sublattices L' spanned by n independent shell vectors.

    Only vectors with norm^2 strictly below ``below`` are used (all when None).
    Returns ``{index: number of n-subsets of pair representatives}``.
    """
    n = shell.query.lattice.dim
    reps = [v.coords for v in shell.pairs() if below is None or v.norm2 < below]
    out = defaultdict(int)
    for combo in combinations(reps, n):
        d = abs(det([list(c) for c in combo]))
        if d:
            out[int(d)] += 1
    return dict(sorted(out.items()))

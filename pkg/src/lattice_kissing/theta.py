"""Theta-series coefficients of E8 and the Leech lattice.

E8 (min norm 2):    #{v : |v|^2 = 2k} = 240 sigma_3(k)
Leech (min norm 4): #{v : |v|^2 = 2k} = 65520/691 (sigma_11(k) - tau(k))
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .structure import IntegrityError

__all__ = ["sigma", "ramanujan_tau", "delta_coefficients", "theta_coefficient", "ThetaSeries"]

TAU_MAX = 64


def sigma(k: int, n: int) -> int:
    """Sum of d**k over the positive divisors d of n."""
    if n < 1:
        raise ValueError(f"sigma needs n >= 1, got {n}")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**k
            e = n // d
            if e != d:
                total += e**k
        d += 1
    return total


@lru_cache(maxsize=None)
def delta_coefficients(nmax: int = TAU_MAX) -> tuple:
    """Coefficients c[0..nmax] of q * prod_{m>=1} (1 - q^m)^24."""
    # prod (1 - q^m)^24 truncated at q^(nmax-1)
    N = nmax
    poly = [0] * N
    poly[0] = 1
    for m in range(1, N):
        for _ in range(24):
            for i in range(N - 1, m - 1, -1):
                poly[i] -= poly[i - m]
    return (0,) + tuple(poly)


def ramanujan_tau(n: int) -> int:
    if not 1 <= n <= TAU_MAX:
        raise ValueError(f"tau is tabulated for 1 <= n <= {TAU_MAX}, got {n}")
    return delta_coefficients(TAU_MAX)[n]


def theta_coefficient(lattice_name: str, k: int) -> int:
    """Number of vectors of norm^2 2k in E8 (min 2) or Leech (min 4)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return 1
    if lattice_name == "E8":
        return 240 * sigma(3, k)
    if lattice_name == "Leech":
        num = 65520 * (sigma(11, k) - ramanujan_tau(k))
        q, r = divmod(num, 691)
        if r:
            raise IntegrityError(f"65520 (sigma_11({k}) - tau({k})) is not divisible by 691")
        return q
    raise KeyError(f"no theta formula for {lattice_name!r}")


@dataclass(frozen=True)
class ThetaSeries:
    lattice_name: str
    kmax: int

    @property
    def coeffs(self) -> dict:
        return {k: theta_coefficient(self.lattice_name, k) for k in range(self.kmax + 1)}

    def shell_sum(self, kmin: int, kmax: int) -> int:
        return sum(theta_coefficient(self.lattice_name, k) for k in range(kmin, kmax + 1))

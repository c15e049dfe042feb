"""Ground parameters for the truncated polynomial ring and its derivation algebra.

Everything downstream is parametrized by an odd prime p and a variable count n.
The ring is A(n) = F_p[x_1,...,x_n] / (x_1^p,...,x_n^p) and the derivation
algebra W(n) = Der A(n) has the monomial basis x^a d_i with a in {0,...,p-1}^n.
"""

from __future__ import annotations

from dataclasses import dataclass


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Params:
    """Fixed (p, n) pair; p an odd prime, n >= 1.

    Core arithmetic accepts any odd prime.  The classification routines
    (solvability suites, maximality probes) are only meaningful for p > 3;
    they check this themselves where it matters.
    """

    p: int
    n: int

    def __post_init__(self) -> None:
        if not _is_prime(self.p) or self.p == 2:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")

    @property
    def ring_dim(self) -> int:
        """dim A(n) = p^n."""
        return self.p ** self.n

    @property
    def witt_dim(self) -> int:
        """dim W(n) = n * p^n."""
        return self.n * self.p ** self.n

    @property
    def top_degree(self) -> int:
        """Largest standard degree s = n(p-1) - 1 of W(n)."""
        return self.n * (self.p - 1) - 1

    def check_exponents(self, exp: tuple) -> None:
        if len(exp) != self.n:
            raise ValueError(f"exponent vector {exp} has length {len(exp)}, expected {self.n}")
        for e in exp:
            if not (0 <= e < self.p):
                raise ValueError(f"exponent {e} outside [0, {self.p - 1}]")

    def same(self, other: "Params") -> None:
        """Raise if two objects do not live over the same (p, n)."""
        if self != other:
            raise ValueError(f"parameter mismatch: {self} vs {other}")


@dataclass(frozen=True)
class TorusCoords:
    """Coordinate change attached to the standard torus t_r.

    z_i = x_i for the first n-r variables, z_i = 1 + x_i for the last r.
    r = 0 is the identity change (standard grading).
    """

    params: Params
    r: int

    def __post_init__(self) -> None:
        if not (0 <= self.r <= self.params.n):
            raise ValueError(f"r must lie in [0, {self.params.n}], got {self.r}")

    def is_shifted(self, i: int) -> bool:
        """True when variable i (0-based) uses z_i = 1 + x_i."""
        return i >= self.params.n - self.r

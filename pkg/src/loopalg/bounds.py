"""Closed-form torsion and prime bounds.

The bounds grow far too fast to materialise, so they are kept as exact
symbolic data (integer multipliers and bases of a base-2 logarithm) with a
float approximation alongside for display.
"""

from dataclasses import dataclass
from math import comb, isqrt, log2

from .berglund import MAX_MF, bad_primes
from .linalg import primes_below

# m·2^(2^m) is written out as an integer only while it stays small
CRUDE_EXACT_MAX_M = 8


class PrimeSet(frozenset):
    """A frozenset of primes that remembers which source contributed each one."""

    def __new__(cls, sources=None):
        sources = {k: sorted(set(v)) for k, v in (sources or {}).items()}
        primes = set()
        for ps in sources.values():
            primes.update(ps)
        obj = super().__new__(cls, primes)
        obj.sources = sources
        return obj

    def sorted(self):
        return sorted(self)

    def provenance(self):
        """``{prime: [source names]}`` in ascending prime order."""
        return {str(p): sorted(k for k, ps in self.sources.items() if p in ps) for p in sorted(self)}

    def to_json(self):
        return {"primes": self.sorted(), "sources": self.provenance()}


@dataclass(frozen=True)
class SqrtPower:
    """The number ``sqrt(base)^multiplier``."""

    multiplier: int
    base: int

    @property
    def log2(self):
        return self.multiplier * log2(self.base) / 2 if self.base > 1 else 0.0

    @property
    def exact(self):
        """The value as an int when it is one and is reasonably small, else None."""
        if self.base <= 1:
            return 1
        if self.log2 > 4096:
            return None
        if self.multiplier % 2 == 0:
            return self.base ** (self.multiplier // 2)
        r = isqrt(self.base)
        return r ** self.multiplier if r * r == self.base else None

    def __str__(self):
        e = self.exact
        return str(e) if e is not None else f"sqrt({self.base})^{self.multiplier}"

    def to_json(self):
        return {
            "multiplier": self.multiplier,
            "base": self.base,
            "log2": self.log2,
            "exact": self.exact,
            "symbolic": f"sqrt({self.base})^{self.multiplier}",
        }


def simplicial_torsion_bound(k):
    """Bound on the torsion order in the homology of a complex on ``k`` vertices."""
    if k < 0:
        raise ValueError("number of vertices must be non-negative")
    return SqrtPower(comb(k, k // 2), k + 1)


def f_bound(m):
    """``f(m) = sqrt(k+1)^C(k, k//2)`` with ``k = C(m, m//2)``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return simplicial_torsion_bound(comb(m, m // 2))


@dataclass(frozen=True)
class CrudeBound:
    """``2^(m·2^(2^m))``; ``log2`` is exact when small enough to write out."""

    m: int

    @property
    def log2_exponent(self):
        # log2(log2 bound) = log2(m) + 2^m
        return (log2(self.m) if self.m else float("-inf")) + 2 ** self.m

    @property
    def log2(self):
        if self.m > CRUDE_EXACT_MAX_M:
            return None
        return self.m * 2 ** (2 ** self.m)

    def to_json(self):
        return {
            "m": self.m,
            "symbolic_log2": f"{self.m}*2^(2^{self.m})",
            "log2": self.log2,
            "log2_of_log2": self.log2_exponent,
        }


def crude_bound(m):
    if m < 0:
        raise ValueError("m must be non-negative")
    return CrudeBound(m)


def anick_prime_set(K, jobs=1, max_mf=MAX_MF):
    """Primes to invert: the bad primes of ``K`` together with all ``p < 2m``."""
    return PrimeSet({"bad_primes": bad_primes(K, jobs=jobs, max_mf=max_mf), "below_2m": primes_below(2 * K.m)})


@dataclass
class BoundReport:
    m: int
    f: SqrtPower
    crude: CrudeBound
    primes_below_2m: list

    def to_json(self):
        return {
            "m": self.m,
            "f_m": self.f.to_json(),
            "crude": self.crude.to_json(),
            "primes_below_2m": self.primes_below_2m,
        }


def bound_report(m):
    return BoundReport(m, f_bound(m), crude_bound(m), primes_below(2 * m))

"""Truncated power series and the loop-homology Poincaré series formulas.

All series are in one variable ``t`` and truncated at degree ``N`` (the
coefficients of ``t^0 .. t^N`` are kept).  Coefficients are Python ints, or
``Fraction`` when a non-unit constant term has to be inverted.
"""

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .berglund import bb_table
from .complex import is_k_neighbourly, popcount
from .errors import DomainWarning, InternalAssertion, InvalidInput
from .linalg import QQ
from .poly import LaurentPoly

DEFAULT_TRUNC = 16


class NonUnitConstant(InvalidInput):
    pass


class BadConstantTerm(InvalidInput):
    pass


class NegativeExponent(InternalAssertion):
    def __init__(self, n, value):
        super().__init__(f"D_{n} = {value} < 0: the series is not a product of (1 - t^(n-1)) factors")
        self.n = n
        self.value = value


class TruncatedSeries:
    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs, trunc):
        if trunc < 0:
            raise InvalidInput("truncation degree must be non-negative")
        c = list(coeffs)[: trunc + 1]
        c += [0] * (trunc + 1 - len(c))
        self.coeffs = tuple(c)
        self.trunc = trunc

    @classmethod
    def from_poly(cls, poly, trunc):
        if poly and poly.low_degree < 0:
            raise InvalidInput("a power series cannot have negative-degree terms")
        return cls([poly[d] for d in range(trunc + 1)], trunc)

    @classmethod
    def one(cls, trunc):
        return cls([1], trunc)

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(obj["coeffs"], obj["trunc"])
        except (KeyError, TypeError):
            raise InvalidInput("series JSON needs 'trunc' and 'coeffs'") from None

    def to_json(self):
        return {"trunc": self.trunc, "coeffs": [_plain(c) for c in self.coeffs]}

    def __getitem__(self, d):
        return self.coeffs[d] if 0 <= d <= self.trunc else 0

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.trunc, other.trunc)
            return self.coeffs[: n + 1] == other.coeffs[: n + 1]
        return NotImplemented

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)}, trunc={self.trunc})"

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, LaurentPoly):
            return TruncatedSeries.from_poly(other, self.trunc)
        return TruncatedSeries([other], self.trunc)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.trunc, other.trunc)
        return TruncatedSeries([self[i] + other[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        n = min(self.trunc, other.trunc)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = TruncatedSeries.one(self.trunc)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self):
        """Inverse mod ``t^{N+1}``; exact ints when the constant is ±1."""
        c0 = self.coeffs[0]
        if c0 == 0:
            raise NonUnitConstant("series with zero constant term is not invertible")
        unit = c0 in (1, -1)
        inv0 = c0 if unit else Fraction(1, 1) / c0
        out = [inv0]
        for n in range(1, self.trunc + 1):
            acc = sum(self.coeffs[i] * out[n - i] for i in range(1, n + 1))
            out.append(-acc * inv0)
        return TruncatedSeries(out, self.trunc)

    def shift(self, k):
        """Multiply by ``t^k`` (k >= 0)."""
        return TruncatedSeries([0] * k + list(self.coeffs), self.trunc)


def _plain(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c if isinstance(c, int) else str(c)


def series_mul(a, b):
    return a * b


def series_inverse(s):
    return s.inverse()


def _reflected_sum(K, k, weight, table=None):
    table = table if table is not None else bb_table(K, k)
    total = LaurentPoly()
    for J, bhat in table.reflected().items():
        total = total + bhat.shift(weight(J))
    return total


def inv_poincare_zk(K, k=QQ, table=None):
    """``1/F(H_*(ΩZ_K; k); t) = Σ_J b̂_{K_J}(t) t^{|J|}``, a polynomial."""
    poly = _reflected_sum(K, k, popcount, table)
    if poly[0] != 1 or poly[1] != 0:
        raise InternalAssertion(f"1/F(ΩZ_K) must start 1 + 0·t, got {poly!r}")
    return poly


def poincare_zk(K, k=QQ, trunc=DEFAULT_TRUNC, table=None):
    return TruncatedSeries.from_poly(inv_poincare_zk(K, k, table), trunc).inverse()


def poincare_dj(K, k=QQ, trunc=DEFAULT_TRUNC, table=None):
    """``F(ΩDJ(K)) = (1 + t)^m · F(ΩZ_K)`` from the split fibration."""
    circle = TruncatedSeries([1, 1], trunc)
    return circle ** K.m * poincare_zk(K, k, trunc, table)


def inv_poincare_rk(K, k=QQ, table=None):
    """``1/F(H_*(ΩR_K; k); t) = Σ_J b̂_{K_J}(t)``.

    Only meaningful for 1-neighbourly ``K``; otherwise a
    :class:`DomainWarning` is issued and the formal sum is still returned.
    """
    if not is_k_neighbourly(K, 1):
        warnings.warn(
            "K is not 1-neighbourly: R_K need not be simply connected and the "
            "sum is not a loop-homology series",
            DomainWarning,
            stacklevel=2,
        )
    return _reflected_sum(K, k, lambda J: 0, table)


def general_pp_inverse(K, G_series, omega_x_series, k=QQ, trunc=DEFAULT_TRUNC, table=None):
    """``1/F(H_*(Ω(X, A)^K))`` from the fibre and loop-space series.

    ``G_series[i]`` is ``F(H̃_*(G_i))`` for the homotopy fibre of
    ``A_i → X_i`` and ``omega_x_series[i]`` is ``F(H_*(ΩX_i))``; both are
    supplied by the caller.
    """
    m = K.m
    if len(G_series) != m or len(omega_x_series) != m:
        raise InvalidInput(f"need {m} fibre series and {m} loop-space series")
    G = [TruncatedSeries.from_poly(s, trunc) if isinstance(s, LaurentPoly) else s for s in G_series]
    X = [TruncatedSeries.from_poly(s, trunc) if isinstance(s, LaurentPoly) else s for s in omega_x_series]
    for i, s in enumerate(G, 1):
        if s[0] != 0:
            raise BadConstantTerm(f"fibre series {i} must be reduced (constant term 0)")
    for i, s in enumerate(X, 1):
        if s[0] != 1:
            raise BadConstantTerm(f"loop-space series {i} must have constant term 1")
    table = table if table is not None else bb_table(K, k)
    total = TruncatedSeries([0], trunc)
    for J, bhat in table.reflected().items():
        if not bhat:
            continue
        term = TruncatedSeries.from_poly(bhat, trunc)
        for j in range(m):
            if J >> j & 1:
                term = term * G[j]
        total = total + term
    for s in X:
        total = total * s.inverse()
    return total


@dataclass
class SphereExponents:
    """Exponents ``D_n`` of ``ΩS^n`` factors, determined for ``n <= trunc + 1``."""

    D: dict = field(default_factory=dict)
    trunc: int = DEFAULT_TRUNC
    torus_rank: int = 0
    A: int = None
    B: int = None
    C: int = None

    def nonzero(self):
        return {n: d for n, d in self.D.items() if d}

    def rebuild(self):
        """``Π (1 - t^{n-1})^{D_n}`` as a truncated series."""
        return rebuild(self)


def _factor(k, trunc):
    c = [0] * (trunc + 1)
    c[0] = 1
    if k <= trunc:
        c[k] = -1
    return TruncatedSeries(c, trunc)


def _peel(s):
    if s[0] != 1:
        raise NonUnitConstant("the series must have constant term 1")
    if s[1] != 0:
        raise InvalidInput("coefficient of t must vanish (no ΩS^2 factors)")
    rest = s
    D = {}
    for k in range(2, s.trunc + 1):
        d = -rest[k]
        if d < 0:
            raise NegativeExponent(k + 1, d)
        D[k + 1] = d
        if d:
            rest = rest * _factor(k, s.trunc) ** (-d)
    return D


def extract_zk_exponents(s, trunc=DEFAULT_TRUNC):
    """Peel ``Π_{n>=3} (1 - t^{n-1})^{D_n}`` off ``s``, degree by degree."""
    if isinstance(s, LaurentPoly):
        s = TruncatedSeries.from_poly(s, trunc)
    elif s.trunc > trunc:
        s = TruncatedSeries(s.coeffs, trunc)
    return SphereExponents(_peel(s), s.trunc)


def extract_with_spheres(s, A=0, B=0, C=0, trunc=DEFAULT_TRUNC):
    """As :func:`extract_zk_exponents` after clearing ``(1+t)^A (1+t^3)^B (1+t^7)^C``.

    ``A``, ``B`` and ``C`` are not recoverable from the series alone and must
    be supplied.
    """
    if min(A, B, C) < 0:
        raise InvalidInput("sphere counts A, B, C must be non-negative")
    if isinstance(s, LaurentPoly):
        s = TruncatedSeries.from_poly(s, trunc)
    elif s.trunc > trunc:
        s = TruncatedSeries(s.coeffs, trunc)
    n = s.trunc
    for deg, e in ((1, A), (3, B), (7, C)):
        if e:
            c = [0] * (n + 1)
            c[0] = 1
            if deg <= n:
                c[deg] = 1
            s = s * TruncatedSeries(c, n) ** e
    return SphereExponents(_peel(s), n, A=A, B=B, C=C)


def rebuild(exponents):
    """``Π (1 - t^{n-1})^{D_n}`` truncated at the exponents' degree."""
    out = TruncatedSeries.one(exponents.trunc)
    for n, d in exponents.D.items():
        if d:
            out = out * _factor(n - 1, exponents.trunc) ** d
    return out

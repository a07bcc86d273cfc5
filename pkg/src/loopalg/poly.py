"""Finitely supported integer Laurent polynomials in one variable."""


class LaurentPoly:
    """Immutable ``{degree: coefficient}`` polynomial; zero is the empty map."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())
        c = {}
        for d, v in items:
            if v:
                c[d] = c.get(d, 0) + v
                if not c[d]:
                    del c[d]
        object.__setattr__(self, "_c", dict(sorted(c.items())))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    def __reduce__(self):
        return (LaurentPoly, (self._c,))

    @classmethod
    def from_list(cls, coeffs, low=0):
        return cls({low + i: v for i, v in enumerate(coeffs)})

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls({degree: coeff})

    @property
    def coeffs(self):
        return dict(self._c)

    def __getitem__(self, degree):
        return self._c.get(degree, 0)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(tuple(self._c.items()))

    @property
    def degree(self):
        """Top degree; ``None`` for the zero polynomial."""
        return max(self._c) if self._c else None

    @property
    def low_degree(self):
        return min(self._c) if self._c else None

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        out = dict(self._c)
        for d, v in other._c.items():
            out[d] = out.get(d, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({d: -v for d, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentPoly) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({d: v * other for d, v in self._c.items()})
        out = {}
        for d1, v1 in self._c.items():
            for d2, v2 in other._c.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = LaurentPoly({0: 1})
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k):
        """Multiply by ``z**k``."""
        return LaurentPoly({d + k: v for d, v in self._c.items()})

    def to_list(self, low=0):
        """Dense coefficients from degree ``low`` up to the top degree."""
        if not self._c:
            return []
        if min(self._c) < low:
            raise ValueError(f"polynomial has terms below degree {low}")
        return [self[d] for d in range(low, max(self._c) + 1)]

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for d, v in self._c.items():
            if d == 0:
                parts.append(f"{v}")
            elif d == 1:
                parts.append(f"{v}*z")
            else:
                parts.append(f"{v}*z^{d}")
        return " + ".join(parts).replace("+ -", "- ")


ONE = LaurentPoly({0: 1})
ZERO = LaurentPoly()
Z = LaurentPoly({1: 1})

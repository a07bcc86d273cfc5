"""Brute-force Backelin–Berglund polynomials from the bar construction.

Nothing here touches missing faces or saturated sets.  For each squarefree
multidegree ``2J`` the normalized bar complex of ``k[K]`` is spanned by
ordered partitions of ``J`` into non-empty faces; its homology gives
``g_J(z) = Σ_n dim Tor_{n,2J}(k, k) z^n``.  Inverting the squarefree part
of the Poincaré series and multiplying by ``Π(1 + x_i z)`` yields ``b_J``.
"""

from dataclasses import dataclass

from .berglund import BBTable, bb_table
from .complex import popcount, vertices_of
from .errors import InternalAssertion, TooLarge
from .linalg import QQ, sparse_rank
from .poly import ONE, ZERO, LaurentPoly

ORACLE_CAP = 6


def _nonempty_faces_within(K, J):
    return [f for f in sorted(K.faces) if f and f & J == f]


def bar_bases(K, J):
    """``{n: [blocks, ...]}`` for every bar degree n in multidegree 2J."""
    faces = _nonempty_faces_within(K, J)
    out = {}

    def grow(prefix, rest):
        if not rest:
            out.setdefault(len(prefix), []).append(tuple(prefix))
            return
        for f in faces:
            if f & rest == f:
                prefix.append(f)
                grow(prefix, rest ^ f)
                prefix.pop()

    if J:
        grow([], J)
    return out


def bar_basis(K, J, n):
    return bar_bases(K, J).get(n, [])


def _differential(K, source, target):
    index = {w: i for i, w in enumerate(target)}
    cols = []
    for word in source:
        col = {}
        for t in range(1, len(word)):
            merged = word[t - 1] | word[t]
            if merged in K.faces:
                new = word[: t - 1] + (merged,) + word[t + 1:]
                r = index[new]
                col[r] = col.get(r, 0) + (-1) ** t
                if not col[r]:
                    del col[r]
        cols.append(col)
    return cols


def bar_differential(K, J, n):
    """Sparse columns of ``d: B_n → B_{n-1}`` in multidegree 2J.

    ``d[a_1|…|a_n] = Σ_t (-1)^t [a_1|…|a_t a_{t+1}|…|a_n]`` where a product
    of blocks whose union is not a face vanishes.
    """
    bases = bar_bases(K, J)
    return _differential(K, bases.get(n, []), bases.get(n - 1, []))


def _compose_is_zero(d_hi, d_lo):
    for col in d_hi:
        acc = {}
        for r, v in col.items():
            for r2, w in d_lo[r].items():
                acc[r2] = acc.get(r2, 0) + v * w
        if any(acc.values()):
            return False
    return True


def tor_dims(K, J, k=QQ):
    """``{n: dim_k Tor_{n,2J}(k, k)}`` with zero entries omitted."""
    if not J:
        return {0: 1}
    bases = bar_bases(K, J)
    top = max(bases)
    diffs = {n: _differential(K, bases.get(n, []), bases.get(n - 1, [])) for n in range(2, top + 1)}
    for n in range(3, top + 1):
        if not _compose_is_zero(diffs[n], diffs[n - 1]):
            raise InternalAssertion(f"d∘d ≠ 0 in the bar complex at n={n}, J={vertices_of(J)}")
    ranks = {n: sparse_rank(d, k) for n, d in diffs.items()}
    dims = {}
    for n, basis in bases.items():
        h = len(basis) - ranks.get(n, 0) - ranks.get(n + 1, 0)
        if h:
            dims[n] = h
    return dims


def oracle_bb_table(K, k=QQ, max_m=ORACLE_CAP):
    """The b-table computed from Tor dimensions alone."""
    if K.m > max_m:
        raise TooLarge(f"the bar oracle is capped at m={max_m}, got m={K.m}")
    size = 1 << K.m
    g = [LaurentPoly(tor_dims(K, J, k)) for J in range(size)]
    h = [ZERO] * size
    h[0] = ONE
    for J in range(1, size):
        acc = ZERO
        A = J
        while A:
            acc = acc + g[A] * h[J ^ A]
            A = (A - 1) & J
        h[J] = -acc
    table = {}
    for J in range(size):
        acc = ZERO
        L = J
        while True:
            acc = acc + h[J ^ L].shift(popcount(L))
            if L == 0:
                break
            L = (L - 1) & J
        table[J] = acc
    return BBTable(K.m, table, k)


@dataclass
class Verification:
    ok: bool
    subset: list = None
    degree: int = None
    berglund: int = None
    oracle: int = None

    def describe(self):
        if self.ok:
            return "bar oracle and Berglund formula agree"
        return (
            f"mismatch at J={self.subset}, degree {self.degree}: "
            f"Berglund {self.berglund}, oracle {self.oracle}"
        )


def verify(K, k=QQ, table=None, max_m=ORACLE_CAP):
    """Compare the Berglund table with the oracle; report the first difference."""
    if table is None:
        table = bb_table(K, k)
    oracle = oracle_bb_table(K, k, max_m=max_m)
    for J in range(1 << K.m):
        a, b = table[J], oracle[J]
        if a != b:
            degrees = sorted(set(a.coeffs) | set(b.coeffs))
            d = next(d for d in degrees if a[d] != b[d])
            return Verification(False, vertices_of(J), d, a[d], b[d])
    return Verification(True)

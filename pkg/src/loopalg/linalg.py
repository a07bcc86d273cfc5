"""Exact linear algebra over Q, F_p and Z, and simplicial (co)chain homology.

Matrices come in two shapes.  Small dense ones are lists of rows of Python
ints.  Boundary maps are kept sparse as a list of columns, each column a
``{row_index: coefficient}`` dict.  No floating point is used anywhere.
"""

from dataclasses import dataclass, field
from math import gcd

from .errors import InternalAssertion, InvalidInput
from .poly import LaurentPoly


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n):
    n = abs(n)
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def primes_below(n):
    return [p for p in range(2, n) if is_prime(p)]


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals (``p is None``) or F_p."""

    p: int = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise InvalidInput(f"{self.p} is not prime")

    @classmethod
    def parse(cls, text):
        text = text.strip().lower()
        if text in ("q", "qq", "rational", "rationals"):
            return cls()
        for prefix in ("fp:", "f", "gf"):
            if text.startswith(prefix):
                try:
                    return cls(int(text[len(prefix):]))
                except ValueError:
                    break
        raise InvalidInput(f"unknown field {text!r}; use 'q' or 'fp:<p>'")

    @property
    def is_rational(self):
        return self.p is None

    def __str__(self):
        return "Q" if self.p is None else f"F_{self.p}"


QQ = FieldSpec()
F2 = FieldSpec(2)
F3 = FieldSpec(3)
F5 = FieldSpec(5)


def dense_to_columns(M):
    if not M:
        return [], 0
    rows, cols = len(M), len(M[0])
    columns = []
    for j in range(cols):
        columns.append({i: M[i][j] for i in range(rows) if M[i][j]})
    return columns, rows


def _content(col):
    g = 0
    for v in col.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def sparse_rank(columns, k=QQ):
    """Rank of a sparse column matrix over ``k``.

    Over F_p entries are reduced mod p.  Over Q the elimination is
    fraction-free: each update is ``b*col - a*pivot`` followed by division by
    the column content, so entries stay integral and small.
    """
    p = k.p
    pivots = {}
    rank = 0
    for raw in columns:
        if p:
            col = {r: v % p for r, v in raw.items() if v % p}
        else:
            col = {r: v for r, v in raw.items() if v}
        while col:
            r = max(col)
            piv = pivots.get(r)
            if piv is None:
                if p:
                    inv = pow(col[r], -1, p)
                    col = {i: v * inv % p for i, v in col.items()}
                else:
                    g = _content(col)
                    if g > 1:
                        col = {i: v // g for i, v in col.items()}
                pivots[r] = col
                rank += 1
                break
            a = col[r]
            if p:
                for i, v in piv.items():
                    nv = (col.get(i, 0) - a * v) % p
                    if nv:
                        col[i] = nv
                    else:
                        col.pop(i, None)
            else:
                b = piv[r]
                g = gcd(a, b)
                ca, cb = b // g, a // g
                new = {i: ca * v for i, v in col.items()}
                for i, v in piv.items():
                    nv = new.get(i, 0) - cb * v
                    if nv:
                        new[i] = nv
                    else:
                        new.pop(i, None)
                g = _content(new) if new else 0
                col = {i: v // g for i, v in new.items()} if g > 1 else new
    return rank


def rank_over_field(M, k=QQ):
    columns, _ = dense_to_columns(M)
    return sparse_rank(columns, k)


def _check_chain(diag):
    nz = [d for d in diag if d]
    for a, b in zip(nz, nz[1:]):
        if b % a:
            raise InternalAssertion(f"Smith form chain broken: {a} does not divide {b}")
    if any(d for d in diag[len(nz):]):
        raise InternalAssertion("Smith form zeros are not trailing")


def smith_normal_form(M):
    """Invariant factors ``d1 | d2 | ...`` of an integer matrix, zeros last.

    The result has ``min(rows, cols)`` entries.
    """
    A = [list(r) for r in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    n = min(rows, cols)
    diag = []
    for t in range(n):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if not done:
                # move the smallest remaining entry of row/column t to the pivot
                best = (t, t)
                for i in range(t, rows):
                    if A[i][t] and abs(A[i][t]) < abs(A[best[0]][best[1]]):
                        best = (i, t)
                for j in range(t, cols):
                    if A[t][j] and abs(A[t][j]) < abs(A[best[0]][best[1]]):
                        best = (t, j)
                i, j = best
                A[t], A[i] = A[i], A[t]
                for row in A:
                    row[t], row[j] = row[j], row[t]
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
        diag.append(abs(A[t][t]))
    diag += [0] * (n - len(diag))
    _check_chain(diag)
    return diag


def sparse_invariant_factors(columns):
    """Non-zero invariant factors of a sparse integer matrix, ascending.

    Unit pivots are eliminated first with column operations (they do not
    change the invariant factors); the small residual goes through the
    dense Smith form.
    """
    cols = {j: {r: v for r, v in c.items() if v} for j, c in enumerate(columns)}
    cols = {j: c for j, c in cols.items() if c}
    rows = {}
    for j, c in cols.items():
        for r in c:
            rows.setdefault(r, set()).add(j)
    ones = 0
    queue = sorted(cols, key=lambda j: (len(cols[j]), j), reverse=True)
    while queue:
        j = queue.pop()
        c = cols.get(j)
        if not c:
            continue
        units = [r for r, v in c.items() if v == 1 or v == -1]
        if not units:
            continue
        r = min(units, key=lambda r: (len(rows[r]), r))
        u = c[r]
        for j2 in sorted(rows[r]):
            if j2 == j:
                continue
            c2 = cols[j2]
            f = c2[r] * u
            for rr, v in c.items():
                nv = c2.get(rr, 0) - f * v
                if nv:
                    if rr not in c2:
                        rows[rr].add(j2)
                    c2[rr] = nv
                elif rr in c2:
                    del c2[rr]
                    rows[rr].discard(j2)
            queue.append(j2)
        for rr in c:
            rows[rr].discard(j)
        del cols[j]
        ones += 1
    residual = [c for c in cols.values() if c]
    if not residual:
        return [1] * ones
    row_ids = sorted({r for c in residual for r in c})
    index = {r: i for i, r in enumerate(row_ids)}
    dense = [[0] * len(residual) for _ in row_ids]
    for j, c in enumerate(residual):
        for r, v in c.items():
            dense[index[r]][j] = v
    return [1] * ones + [d for d in smith_normal_form(dense) if d]


# -- simplicial chains -------------------------------------------------------


def _popcount(mask):
    return bin(mask).count("1")


def chain_groups(faces):
    """Face masks grouped by size: ``groups[s]`` lists the faces of size s."""
    top = max((_popcount(f) for f in faces), default=0)
    groups = [[] for _ in range(top + 1)]
    for f in sorted(faces):
        groups[_popcount(f)].append(f)
    return groups


def boundary_columns(groups, size):
    """Sparse matrix of the augmented boundary from size-``size`` faces."""
    index = {f: i for i, f in enumerate(groups[size - 1])}
    out = []
    for f in groups[size]:
        col = {}
        sign = 1
        rest = f
        while rest:
            low = rest & -rest
            col[index[f ^ low]] = sign
            sign = -sign
            rest ^= low
        out.append(col)
    return out


@dataclass
class HomologyProfile:
    """Reduced homology: ``dims[d]`` for d >= -1 (zeros omitted).

    ``torsion`` maps a degree to the invariant factors > 1 of H̃_d(-; Z);
    it is ``None`` unless the profile was computed integrally.
    """

    dims: dict = field(default_factory=dict)
    torsion: dict = None

    def dim(self, d):
        return self.dims.get(d, 0)

    @property
    def torsion_primes(self):
        out = set()
        for factors in (self.torsion or {}).values():
            for f in factors:
                out |= prime_factors(f)
        return out


def _faces_of(K):
    return K.faces if hasattr(K, "faces") else K


def reduced_homology(K, k=QQ):
    """Reduced simplicial homology dims over ``k``, degree -1 included.

    ``K`` is a :class:`SimplicialComplex` or any collection of face masks
    closed under subsets.  The complex ``{∅}`` has H̃_{-1} = k.
    """
    groups = chain_groups(_faces_of(K))
    ranks = [0] * (len(groups) + 1)
    for s in range(1, len(groups)):
        ranks[s] = sparse_rank(boundary_columns(groups, s), k)
    dims = {}
    for s in range(len(groups)):
        h = len(groups[s]) - ranks[s] - ranks[s + 1]
        if h:
            dims[s - 1] = h
    return HomologyProfile(dims)


def integral_homology(K):
    """Reduced integral homology: free ranks in ``dims`` plus torsion."""
    groups = chain_groups(_faces_of(K))
    factors = [[] for _ in range(len(groups) + 1)]
    for s in range(1, len(groups)):
        factors[s] = sparse_invariant_factors(boundary_columns(groups, s))
    dims, torsion = {}, {}
    for s in range(len(groups)):
        h = len(groups[s]) - len(factors[s]) - len(factors[s + 1])
        if h:
            dims[s - 1] = h
        tors = [f for f in factors[s + 1] if f > 1]
        if tors:
            torsion[s - 1] = tors
    return HomologyProfile(dims, torsion)


def integral_torsion_primes(K):
    return integral_homology(K).torsion_primes


def homology_series(profile):
    """``Σ dim H̃_d · z^d`` as a Laurent polynomial (may contain z^-1)."""
    return LaurentPoly(profile.dims)

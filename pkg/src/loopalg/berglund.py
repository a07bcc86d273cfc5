"""Backelin–Berglund polynomials from saturated sets of missing faces.

For a non-empty ``J ⊆ [m]``::

    b_{K_J,k}(z) = Σ_{S saturated, ∪S = J} (-z)^{c(S)+2} · F(H̃_*(Δ'_S; k); z)

where the reduced homology of ``{∅}`` sits in degree -1.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from ._parallel import parallel_map
from .complex import SimplicialComplex, euler_char, full_subcomplex, is_flag, missing_faces, popcount
from .errors import InvalidInput, TooLarge
from .linalg import QQ, homology_series, integral_homology, reduced_homology
from .poly import ONE, ZERO, LaurentPoly

MAX_MF = 20


class EmptySet(InvalidInput):
    pass


class DegreeTooHigh(InvalidInput):
    pass


class NotFlag(InvalidInput):
    pass


def _adjacency(sets):
    adj = [0] * len(sets)
    for i, j in combinations(range(len(sets)), 2):
        if sets[i] & sets[j]:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return adj


def _component(start, members, adj):
    seen = 1 << start
    frontier = seen
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        new = adj[low.bit_length() - 1] & members & ~seen
        seen |= new
        frontier |= new
    return seen


def _is_connected(members, adj):
    if not members:
        return False
    low = members & -members
    return _component(low.bit_length() - 1, members, adj) == members


def intersection_components(sets):
    """Connected components of the intersection graph of ``sets``.

    Returns ``(components, c)`` where each component is a tuple of the input
    masks in input order.
    """
    sets = list(sets)
    if not sets:
        raise EmptySet("the intersection graph of an empty collection has no components")
    parent = list(range(len(sets)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in combinations(range(len(sets)), 2):
        if sets[i] & sets[j]:
            parent[find(i)] = find(j)
    groups = {}
    for i, s in enumerate(sets):
        groups.setdefault(find(i), []).append(s)
    comps = sorted((tuple(g) for g in groups.values()), key=lambda g: sets.index(g[0]))
    return comps, len(comps)


@dataclass(frozen=True)
class SaturatedSet:
    """A non-empty saturated subset of MF(K).

    ``members`` is a bit mask over indices into the missing-face list it was
    built from; ``faces`` holds the missing faces themselves (vertex masks).
    """

    members: int
    faces: tuple
    union: int
    components: tuple
    c: int


def _members_inside(U, mf):
    out = 0
    for i, I in enumerate(mf):
        if I & U == I:
            out |= 1 << i
    return out


def _connected_unions(mf):
    """All vertex sets that are unions of a connected subfamily of ``mf``."""
    found = set(mf)
    frontier = list(mf)
    while frontier:
        nxt = []
        for U in frontier:
            for I in mf:
                if I & U and I & ~U:
                    V = U | I
                    if V not in found:
                        found.add(V)
                        nxt.append(V)
        frontier = nxt
    return sorted(found)


def saturated_subsets(mf, max_mf=MAX_MF):
    """All non-empty saturated subsets of the missing-face list ``mf``.

    A subset is saturated exactly when each of its connected components
    equals the set of all missing faces inside the component's union, so the
    saturated subsets are the families of pairwise disjoint "connected
    unions" ``U``, each contributing every missing face contained in ``U``.
    Sorted by ``(|S|, members)``.
    """
    mf = list(mf)
    if len(mf) > max_mf:
        raise TooLarge(f"|MF| = {len(mf)} exceeds the saturated-set cap {max_mf}")
    if not mf:
        return []
    blocks = [(U, _members_inside(U, mf)) for U in _connected_unions(mf)]
    out = []

    def extend(start, used, members, comps):
        for idx in range(start, len(blocks)):
            U, mem = blocks[idx]
            if U & used:
                continue
            new_members = members | mem
            new_comps = comps + (mem,)
            out.append(_make(new_members, used | U, new_comps))
            extend(idx + 1, used | U, new_members, new_comps)

    def _make(members, union, comps):
        faces = tuple(mf[i] for i in range(len(mf)) if members >> i & 1)
        comp_faces = tuple(
            tuple(mf[i] for i in range(len(mf)) if mem >> i & 1) for mem in sorted(comps)
        )
        return SaturatedSet(members, faces, union, comp_faces, len(comps))

    extend(0, 0, 0, ())
    out.sort(key=lambda S: (popcount(S.members), S.members))
    return out


def is_saturated(members, mf):
    """Definitional check: every connected ``T ⊆ S`` is closed in MF.

    Exponential in ``|S|``; intended for verification of small cases.
    """
    adj = _adjacency(mf)
    idx = [i for i in range(len(mf)) if members >> i & 1]
    for r in range(1, len(idx) + 1):
        for T in combinations(idx, r):
            tmask = sum(1 << i for i in T)
            if not _is_connected(tmask, adj):
                continue
            U = 0
            for i in T:
                U |= mf[i]
            if _members_inside(U, mf) & ~members:
                return False
    return True


@lru_cache(maxsize=8192)
def _delta_prime_faces(faces, components):
    s = len(faces)
    adj = _adjacency(faces)
    comp_masks = []
    for comp in components:
        comp_masks.append(sum(1 << faces.index(I) for I in comp))
    target = 0
    for I in faces:
        target |= I

    def is_face(R):
        U = 0
        rest = R
        while rest:
            low = rest & -rest
            U |= faces[low.bit_length() - 1]
            rest ^= low
        if U != target:
            return True
        return any(not _is_connected(R & cm, adj) for cm in comp_masks)

    found = [0]
    stack = [(0, 0)]
    while stack:
        R, start = stack.pop()
        for j in range(start, s):
            G = R | 1 << j
            if is_face(G):
                found.append(G)
                stack.append((G, j + 1))
    return frozenset(found)


def delta_prime(S):
    """The complex Δ'_S on the vertex set S (vertex i = ``S.faces[i-1]``).

    When ``|S| = 1`` the complex is ``{∅}`` and its single vertex is a ghost.
    """
    return SimplicialComplex(len(S.faces), _delta_prime_faces(S.faces, S.components), S.faces)


def berglund_term(S, k=QQ):
    """``(-z)^{c(S)+2} · F(H̃_*(Δ'_S; k); z)``."""
    F = homology_series(reduced_homology(_delta_prime_faces(S.faces, S.components), k))
    return LaurentPoly({S.c + 2: (-1) ** (S.c % 2)}) * F


class BBTable:
    """``J ↦ b_{K_J,k}(z)`` for every ``J ⊆ [m]`` (vertex masks as keys)."""

    def __init__(self, m, by_subset, field=QQ):
        self.m = m
        self.field = field
        self.by_subset = dict(sorted(by_subset.items()))

    def __getitem__(self, J):
        return self.by_subset[J]

    def __eq__(self, other):
        if not isinstance(other, BBTable):
            return NotImplemented
        return self.m == other.m and self.by_subset == other.by_subset

    def items(self):
        return self.by_subset.items()

    def reflected(self):
        return {J: reflect(b, popcount(J)) for J, b in self.by_subset.items()}

    def __repr__(self):
        return f"BBTable(m={self.m}, field={self.field}, nonzero={sum(1 for b in self.by_subset.values() if b)})"


def _term_job(args):
    S, k = args
    return berglund_term(S, k)


def bb_table(K, k=QQ, jobs=1, max_mf=MAX_MF):
    """All Backelin–Berglund polynomials of full subcomplexes in one pass.

    Saturated sets of MF(K) are bucketed by their union: those with
    ``∪S = J`` are exactly the saturated sets of MF(K_J) covering J.
    """
    sat = saturated_subsets(missing_faces(K), max_mf=max_mf)
    terms = parallel_map(_term_job, [(S, k) for S in sat], jobs)
    table = {J: ZERO for J in range(1 << K.m)}
    table[0] = ONE
    for S, term in zip(sat, terms):
        table[S.union] = table[S.union] + term
    return BBTable(K.m, table, k)


def bb_polynomial(K, k=QQ, max_mf=MAX_MF):
    if K.m == 0:
        return ONE
    full = K.full_mask
    total = ZERO
    for S in saturated_subsets(missing_faces(K), max_mf=max_mf):
        if S.union == full:
            total = total + berglund_term(S, k)
    return total


def reflect(b, size):
    """``z^size · b(1/z)``."""
    if not b:
        return ZERO
    if b.low_degree < 0 or b.degree > size:
        raise DegreeTooHigh(f"cannot reflect {b!r} in degree {size}")
    return LaurentPoly({size - d: v for d, v in b.coeffs.items()})


def flag_bb_table(K):
    """Reflected table for a flag complex: the constants ``1 - χ(K_J)``."""
    if not is_flag(K):
        raise NotFlag("flag_bb_table needs a flag complex")
    return {J: LaurentPoly({0: 1 - euler_char(full_subcomplex(K, J))}) for J in range(1 << K.m)}


def _torsion_job(S):
    return integral_homology(_delta_prime_faces(S.faces, S.components)).torsion_primes


def bad_primes(K, jobs=1, max_mf=MAX_MF):
    """Union of the integral torsion primes of every Δ'_S.

    For a prime outside this set the F_p and Q tables coincide, so it
    contains the torsion primes of H_*(ΩZ_K; Z).  Tightness is not claimed.
    """
    sat = saturated_subsets(missing_faces(K), max_mf=max_mf)
    out = set()
    for primes in parallel_map(_torsion_job, sat, jobs):
        out |= primes
    return sorted(out)

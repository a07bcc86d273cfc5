"""Simplicial complexes on the vertex set [m].

Vertex ``i`` (1-based) is bit ``i - 1`` of an integer mask, so a face, a
vertex subset ``J`` and a missing face are all plain ``int`` values.  Masks
are iterated in increasing numeric order everywhere, which keeps every
derived table deterministic.
"""

import json
from itertools import combinations
from math import comb
from pathlib import Path

from .errors import GhostVertex, InternalAssertion, InvalidInput, OutOfRange, TooLarge

MAX_VERTICES = 24


def mask_of(vertices):
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def vertices_of(mask):
    """1-based vertex labels of ``mask`` in increasing order."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask):
    return bin(mask).count("1")


def submasks(mask):
    """All submasks of ``mask`` in increasing numeric order."""
    bits = [1 << (v - 1) for v in vertices_of(mask)]
    out = []
    for r in range(1 << len(bits)):
        sub = 0
        for j, b in enumerate(bits):
            if r >> j & 1:
                sub |= b
        out.append(sub)
    return sorted(out)


def compress(mask, support):
    """Relabel the bits of ``mask`` (a submask of ``support``) to 0..|support|-1."""
    out = 0
    j = 0
    for v in vertices_of(support):
        if mask >> (v - 1) & 1:
            out |= 1 << j
        j += 1
    return out


class SimplicialComplex:
    """A downward-closed family of subsets of [m] with no ghost vertices.

    Instances are immutable.  ``labels[i - 1]`` records which vertex of some
    ambient complex vertex ``i`` came from (identity unless the complex was
    produced by :func:`full_subcomplex`, :func:`link` or :func:`delete`).
    """

    __slots__ = ("m", "faces", "labels", "_facets")

    def __init__(self, m, faces, labels=None):
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "faces", frozenset(faces))
        object.__setattr__(self, "labels", tuple(labels) if labels else tuple(range(1, m + 1)))
        object.__setattr__(self, "_facets", None)

    def __setattr__(self, name, value):
        raise AttributeError("SimplicialComplex is immutable")

    def __reduce__(self):
        return (SimplicialComplex, (self.m, self.faces, self.labels))

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.m == other.m and self.faces == other.faces

    def __hash__(self):
        return hash((self.m, self.faces))

    def __repr__(self):
        facets = [vertices_of(f) for f in self.facets]
        return f"SimplicialComplex(m={self.m}, facets={facets})"

    @classmethod
    def from_facets(cls, facets, m, max_vertices=MAX_VERTICES):
        return validate(facets, m, max_vertices=max_vertices)

    @property
    def full_mask(self):
        return (1 << self.m) - 1

    @property
    def facets(self):
        if self._facets is None:
            faces = sorted(self.faces, key=lambda f: (-popcount(f), f))
            maximal = []
            for f in faces:
                if not any(f & g == f for g in maximal):
                    maximal.append(f)
            object.__setattr__(self, "_facets", tuple(sorted(maximal)))
        return self._facets

    @property
    def dim(self):
        return max(popcount(f) for f in self.faces) - 1

    def is_face(self, mask):
        return mask in self.faces

    def faces_by_size(self):
        """Faces grouped by cardinality, each group sorted by mask."""
        out = {}
        for f in sorted(self.faces):
            out.setdefault(popcount(f), []).append(f)
        return out

    def to_json(self):
        return {"m": self.m, "facets": [vertices_of(f) for f in self.facets]}


def _closure(facet_masks):
    faces = set()
    for f in facet_masks:
        if f in faces:
            continue
        for sub in submasks(f):
            faces.add(sub)
    faces.add(0)
    return faces


def validate(raw_facets, m, max_vertices=MAX_VERTICES):
    """Build a closed, canonical complex from a facet list on [m]."""
    if not isinstance(m, int) or m < 0:
        raise InvalidInput(f"vertex count must be a non-negative integer, got {m!r}")
    if m > max_vertices:
        raise TooLarge(f"m={m} exceeds the vertex cap {max_vertices}")
    masks = []
    for facet in raw_facets:
        for v in facet:
            if not isinstance(v, int) or v < 1 or v > m:
                raise OutOfRange(f"vertex label {v!r} outside 1..{m}")
        masks.append(mask_of(facet))
    faces = _closure(masks)
    for i in range(1, m + 1):
        if 1 << (i - 1) not in faces:
            raise GhostVertex(i)
    return SimplicialComplex(m, faces)


def simplex(m):
    """The full simplex on [m] (``Δ^{m-1}``)."""
    return validate([list(range(1, m + 1))] if m else [], m)


def simplex_boundary(m):
    """The boundary of the (m-1)-simplex, a sphere of dimension m - 2."""
    if m < 2:
        raise InvalidInput("the boundary of a simplex needs at least 2 vertices")
    return validate([list(c) for c in combinations(range(1, m + 1), m - 1)], m)


def disjoint_points(m):
    return validate([[i] for i in range(1, m + 1)], m)


def cycle(m):
    return validate([[i, i % m + 1] for i in range(1, m + 1)], m)


def flag_complex(m, edges):
    """Clique complex of the graph on [m] with the given edge list."""
    adj = [0] * (m + 1)
    for a, b in edges:
        adj[a] |= 1 << (b - 1)
        adj[b] |= 1 << (a - 1)
    faces = {0}
    frontier = [1 << (i - 1) for i in range(1, m + 1)]
    faces.update(frontier)
    while frontier:
        nxt = []
        for f in frontier:
            top = f.bit_length()
            common = -1
            for v in vertices_of(f):
                common &= adj[v]
            for w in range(top + 1, m + 1):
                if common >> (w - 1) & 1:
                    g = f | 1 << (w - 1)
                    if g not in faces:
                        faces.add(g)
                        nxt.append(g)
        frontier = nxt
    return SimplicialComplex(m, faces)


def full_subcomplex(K, J):
    """``K_J``: faces of ``K`` inside ``J``, relabelled to 1..|J|."""
    J &= K.full_mask
    faces = {compress(f, J) for f in K.faces if f & J == f}
    labels = [K.labels[v - 1] for v in vertices_of(J)]
    return SimplicialComplex(popcount(J), faces, labels)


def missing_faces(K):
    """Minimal non-faces of ``K`` as masks in increasing order."""
    found = set()
    for f in K.faces:
        for i in range(K.m):
            bit = 1 << i
            if f & bit:
                continue
            cand = f | bit
            if cand in K.faces or cand in found:
                continue
            if all(cand ^ b in K.faces for b in _bits(cand)):
                found.add(cand)
    out = sorted(found)
    if len(out) > comb(K.m, K.m // 2):
        raise InternalAssertion(f"{len(out)} missing faces violate the Sperner bound for m={K.m}")
    return out


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def is_flag(K):
    return all(popcount(I) == 2 for I in missing_faces(K))


def is_k_neighbourly(K, k):
    if k < 0:
        raise InvalidInput("k must be non-negative")
    if k + 1 > K.m:
        return True
    return all(mask_of(c) in K.faces for c in combinations(range(1, K.m + 1), k + 1))


def euler_char(K):
    """Non-reduced Euler characteristic; the complex {∅} has χ = 0."""
    return sum((-1) ** (popcount(f) - 1) for f in K.faces if f)


def link(K, i):
    """Link of vertex ``i``.

    The vertex set is the vertices of [m] minus ``i`` that span a face with
    ``i``, so the result never has ghost vertices; ``labels`` maps back.
    """
    bit = 1 << (i - 1)
    faces = [f for f in K.faces if not f & bit and f | bit in K.faces]
    support = 0
    for f in faces:
        support |= f
    labels = [K.labels[v - 1] for v in vertices_of(support)]
    return SimplicialComplex(popcount(support), {compress(f, support) for f in faces}, labels)


def delete(K, i):
    """``K`` minus vertex ``i``, on the vertex set [m] minus ``i``."""
    bit = 1 << (i - 1)
    return full_subcomplex(K, K.full_mask & ~bit)


def from_json(obj, max_vertices=MAX_VERTICES):
    try:
        m = obj["m"]
        facets = obj["facets"]
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"complex JSON needs 'm' and 'facets': {exc}") from None
    return validate(facets, m, max_vertices=max_vertices)


def parse_complex(text, max_vertices=MAX_VERTICES):
    """Parse either the JSON form or the one-facet-per-line text form."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"malformed complex JSON: {exc}") from None
        return from_json(obj, max_vertices=max_vertices)
    facets = []
    for line in stripped.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            facets.append([int(tok) for tok in line.split()])
        except ValueError:
            raise InvalidInput(f"bad facet line {line!r}") from None
    m = max((max(f) for f in facets if f), default=0)
    return validate(facets, m, max_vertices=max_vertices)


def read_complex(path, max_vertices=MAX_VERTICES):
    return parse_complex(Path(path).read_text(), max_vertices=max_vertices)

"""Rational simplicial fans: lattice invariants and loop-space decompositions.

A fan is given by its ray matrix ``A`` (rays ``a_1..a_m`` in ``Z^n``) and the
simplicial complex ``K`` on ``[m]`` whose faces index the cones.  Everything
computed here depends only on ``(K, A)``; the cone-intersection conditions
that make ``Σ`` an honest fan are assumed, not checked.
"""

import json
import warnings
from dataclasses import dataclass, field
from math import gcd

from .berglund import MAX_MF, bad_primes
from .bounds import PrimeSet
from .complex import MAX_VERTICES, validate, vertices_of
from .errors import DomainWarning, GhostVertex, InvalidInput
from .linalg import QQ, prime_factors, primes_below, rank_over_field, smith_normal_form
from .series import DEFAULT_TRUNC, SphereExponents, extract_zk_exponents, inv_poincare_zk

FAN_DISCLAIMER = "fan conditions (cone intersections) assumed, not verified"


class NonPrimitiveRay(InvalidInput):
    def __init__(self, i, ray):
        super().__init__(f"ray {i} = {list(ray)} is not primitive")
        self.ray_index = i


class DependentCone(InvalidInput):
    def __init__(self, cone):
        super().__init__(f"rays of cone {cone} are linearly dependent")
        self.cone = cone


class BadRank(InvalidInput):
    pass


class NotSimplyConnected(InvalidInput):
    def __init__(self, invariants):
        shown = ", ".join("Z" if d == 0 else f"Z/{d}" for d in invariants)
        super().__init__(f"X_Σ is not simply connected: π₁ ≅ {shown}")
        self.invariants = list(invariants)


class NotSpanning(DomainWarning):
    pass


@dataclass(frozen=True)
class Fan:
    n: int
    rays: tuple
    K: object

    @property
    def m(self):
        return len(self.rays)

    def columns(self, mask):
        """The n × |I| submatrix of A on the rays in ``mask``."""
        idx = [i - 1 for i in vertices_of(mask)]
        return [[self.rays[j][r] for j in idx] for r in range(self.n)]

    def matrix(self):
        return self.columns(self.K.full_mask)

    def to_json(self):
        return {"n": self.n, "rays": [list(r) for r in self.rays], "cones": self.K.to_json()["facets"]}


def parse_fan(obj, max_vertices=MAX_VERTICES):
    """Build a :class:`Fan` from ``{"n", "rays", "cones"}`` (cones 1-based)."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"fan is not valid JSON: {exc}") from None
    try:
        n, rays, cones = obj["n"], obj["rays"], obj["cones"]
    except (KeyError, TypeError):
        raise InvalidInput("fan JSON needs 'n', 'rays' and 'cones'") from None
    if not isinstance(n, int) or n < 0:
        raise InvalidInput("lattice rank n must be a non-negative integer")
    rays = tuple(tuple(r) for r in rays)
    for i, r in enumerate(rays, 1):
        if len(r) != n or not all(isinstance(x, int) for x in r):
            raise InvalidInput(f"ray {i} must be a list of {n} integers")
        g = 0
        for x in r:
            g = gcd(g, x)
        if g != 1:
            raise NonPrimitiveRay(i, r)
    K = validate(cones, len(rays), max_vertices=max_vertices)
    covered = 0
    for f in K.facets:
        covered |= f
    for i in range(1, len(rays) + 1):
        if not covered >> (i - 1) & 1:
            raise GhostVertex(i)
    fan = Fan(n, rays, K)
    for f in K.facets:
        # independence of a facet's rays implies it for every face
        if rank_over_field(fan.columns(f), QQ) != bin(f).count("1"):
            raise DependentCone(vertices_of(f))
    return fan


def read_fan(path, max_vertices=MAX_VERTICES):
    with open(path) as fh:
        return parse_fan(fh.read(), max_vertices=max_vertices)


def pi1_invariants(F):
    """Invariant factors ≠ 1 of ``coker(A) = N/N_Σ``; a 0 marks a free summand.

    Empty exactly when ``N = N_Σ``.  A free summand means the rays do not
    span ``N ⊗ R`` and a :class:`NotSpanning` warning is issued.
    """
    if F.n == 0:
        return []
    diag = smith_normal_form(F.matrix()) if F.m else []
    diag = diag + [0] * (F.n - len(diag))
    free = sum(1 for d in diag if d == 0)
    if free:
        warnings.warn(
            f"rays span a sublattice of rank {F.n - free} < {F.n}: X_Σ splits off "
            f"a (C^×)^{free} factor, which is not computed",
            NotSpanning,
            stacklevel=2,
        )
    return [d for d in diag if d != 1 and d != 0] + [0] * free


def _face_factors(F):
    for I in sorted(F.K.faces):
        if I:
            yield I, smith_normal_form(F.columns(I))


def stabiliser_primes(F):
    """``P_Σ``: primes dividing ``|Tors N/N_I|`` for some face ``I``."""
    out = set()
    for _, diag in _face_factors(F):
        for d in diag:
            if d > 1:
                out |= prime_factors(d)
    return sorted(out)


def is_smooth(F):
    """True when every ``N_I`` is a direct summand of ``N``."""
    return all(d == 1 for _, diag in _face_factors(F) for d in diag)


def _homotopy_line(D):
    terms = " ⊕ ".join(f"π_N(S^{n})^{{⊕{d}}}" for n, d in sorted(D.items()) if d)
    return f"π_N ⊗ Z[1/P] ≅ {terms or '0'} ⊗ Z[1/P] for N ≥ 3"


@dataclass
class OrbifoldReport:
    simply_connected: bool
    pi1_invariants: list
    P_sigma: list
    smooth: bool
    anick_primes: list
    decomposition: SphereExponents
    prime_sources: dict = field(default_factory=dict)
    pi2_rank: int = None
    discrete_factor: list = None
    notes: list = field(default_factory=list)

    @property
    def homotopy_line(self):
        return _homotopy_line(self.decomposition.D)

    @property
    def loop_line(self):
        parts = []
        r = self.decomposition.torus_rank
        if r:
            parts.append(f"T^{r}")
        parts.append("ΩZ_K")
        if self.discrete_factor:
            parts.append("N/N_Σ")
        return "Ω ≃ " + " × ".join(parts)

    def to_json(self):
        D = self.decomposition
        return {
            "simply_connected": self.simply_connected,
            "pi1_invariants": self.pi1_invariants,
            "P_sigma": self.P_sigma,
            "smooth": self.smooth,
            "torus_rank": D.torus_rank,
            "exponents": {str(n): d for n, d in sorted(D.D.items()) if d},
            "determined_for_n_up_to": D.trunc + 1,
            "anick_primes": self.anick_primes,
            "prime_sources": self.prime_sources,
            "pi2_rank": self.pi2_rank,
            "discrete_factor": self.discrete_factor,
            "loop_decomposition": self.loop_line,
            "homotopy_groups": self.homotopy_line,
            "notes": self.notes,
        }


def _decompose(K, torus_rank, trunc, jobs, max_mf):
    exps = extract_zk_exponents(inv_poincare_zk(K, QQ), trunc)
    exps.torus_rank = torus_rank
    bad = bad_primes(K, jobs=jobs, max_mf=max_mf)
    return exps, bad


def orbifold_report(F, trunc=DEFAULT_TRUNC, allow_smooth_cover=False, jobs=1, max_mf=MAX_MF):
    """Loop-space decomposition of the toric orbifold ``X_Σ`` localised away from P.

    Raises :class:`NotSimplyConnected` when ``N ≠ N_Σ``.  For a smooth fan the
    universal-cover route (a partial quotient of ``Z_K``) is taken only when
    ``allow_smooth_cover`` is set; the discrete factor ``N/N_Σ`` then
    appears in the report unchanged.
    """
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        pi1 = pi1_invariants(F)
    for w in caught:
        warnings.warn(w.message, w.category, stacklevel=2)
    smooth = is_smooth(F)
    notes = [FAN_DISCLAIMER]
    discrete = None
    if pi1:
        if not (smooth and allow_smooth_cover):
            raise NotSimplyConnected(pi1)
        discrete = pi1
        notes.append("smooth, not simply connected: decomposition via the universal cover")
    P_sigma = stabiliser_primes(F)
    exps, bad = _decompose(F.K, F.m - F.n, trunc, jobs, max_mf)
    anick = PrimeSet({"P_sigma": P_sigma, "bad_primes": bad, "below_2m": primes_below(2 * F.m)})
    return OrbifoldReport(
        simply_connected=not pi1,
        pi1_invariants=pi1,
        P_sigma=P_sigma,
        smooth=smooth,
        anick_primes=anick.sorted(),
        decomposition=exps,
        prime_sources=anick.provenance(),
        discrete_factor=discrete,
        notes=notes,
    )


def partial_quotient_report(K, r, trunc=DEFAULT_TRUNC, jobs=1, max_mf=MAX_MF):
    """``Ω(Z_K / T^r) ≃ T^r × ΩZ_K`` for a freely acting subtorus of rank ``r``."""
    if not isinstance(r, int) or not 0 <= r < max(K.m, 1):
        raise BadRank(f"quotient rank must satisfy 0 ≤ r < m = {K.m}, got {r}")
    exps, bad = _decompose(K, r, trunc, jobs, max_mf)
    anick = PrimeSet({"bad_primes": bad, "below_2m": primes_below(2 * K.m)})
    return OrbifoldReport(
        simply_connected=True,
        pi1_invariants=[],
        P_sigma=[],
        smooth=True,
        anick_primes=anick.sorted(),
        decomposition=exps,
        prime_sources=anick.provenance(),
        pi2_rank=r,
        notes=["freeness of the T^r action is assumed, not verified"],
    )

"""Polyhedral cones: double description, duality, membership certificates.

A cone is stored through a reduced generator (ray) list; the facet normals
are computed on demand by running double description on the dual side and
cached (write-once, so sharing across threads is safe).  Rays are kept in a
canonical form, integer entries with content 1 and direction preserved,
which makes cone comparisons plain set comparisons for pointed cones.

Cones that contain lines are represented by including both v and -v among
the generators; equality constraints in a facet description appear as the
corresponding pair of opposite normals.

Membership questions are answered by the exact simplex in `lp` and come
back as Farkas-style certificates that have been re-verified before being
handed out.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import lp
from .errors import DimensionMismatch, InputError, InternalCheckError
from .linalg import (
    Vec,
    basis_vec,
    inner,
    integerize,
    is_zero_vec,
    mat,
    normalize_sign,
    rank,
    vec_add,
    vec_scale,
    vec_sub,
    zeros,
)


# ---------------------------------------------------------------------------
# double description


def double_description(normals: Sequence[Vec], dim: int) -> tuple[tuple[Vec, ...], tuple[Vec, ...]]:
    """V-representation of { x : <n, x> >= 0 for all n }.

    Returns (lineality_basis, extreme_rays): the cone is the linear span of
    the lineality basis plus the conic hull of the rays, and the rays are
    extreme modulo lineality.  Incremental halfspace insertion with the
    combinatorial adjacency test.
    """
    lineality: list[Vec] = [basis_vec(i, dim) for i in range(dim)]
    rays: list[tuple[Vec, frozenset[int]]] = []

    active = [n for n in normals if not is_zero_vec(n)]
    for idx, a in enumerate(active):
        lin_vals = [inner(a, l) for l in lineality]
        pivot = next((i for i, d in enumerate(lin_vals) if d != 0), None)
        if pivot is not None:
            lp_vec = lineality[pivot]
            dp = lin_vals[pivot]
            new_lineality = [
                vec_sub(l, vec_scale(d / dp, lp_vec))
                for i, (l, d) in enumerate(zip(lineality, lin_vals))
                if i != pivot
            ]
            new_rays: list[tuple[Vec, frozenset[int]]] = []
            for r, tight in rays:
                shifted = vec_sub(r, vec_scale(inner(a, r) / dp, lp_vec))
                if is_zero_vec(shifted):
                    raise InternalCheckError("ray collapsed into lineality during projection")
                new_rays.append((integerize(shifted), tight | {idx}))
            pivot_ray = lp_vec if dp > 0 else vec_scale(-1, lp_vec)
            new_rays.append((integerize(pivot_ray), frozenset(range(idx))))
            lineality = new_lineality
            rays = new_rays
            continue

        vals = [inner(a, r) for r, _ in rays]
        plus = [i for i, v in enumerate(vals) if v > 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        minus = [i for i, v in enumerate(vals) if v < 0]
        if not minus:
            rays = [
                (r, tight | {idx}) if i in zero else (r, tight)
                for i, (r, tight) in enumerate(rays)
            ]
            continue

        def adjacent(i: int, j: int) -> bool:
            common = rays[i][1] & rays[j][1]
            for k, (_, tight_k) in enumerate(rays):
                if k != i and k != j and common <= tight_k:
                    return False
            return True

        new_rays = [(rays[i][0], rays[i][1]) for i in plus]
        new_rays += [(rays[i][0], rays[i][1] | {idx}) for i in zero]
        for i in plus:
            for j in minus:
                if adjacent(i, j):
                    combo = vec_add(
                        vec_scale(vals[i], rays[j][0]),
                        vec_scale(-vals[j], rays[i][0]),
                    )
                    new_rays.append((integerize(combo), (rays[i][1] & rays[j][1]) | {idx}))
        rays = new_rays

    lin_canon = tuple(sorted(normalize_sign(l) for l in lineality))
    ray_canon = tuple(sorted(r for r, _ in rays))
    return lin_canon, ray_canon


# ---------------------------------------------------------------------------
# generator reduction


def in_conic_hull(q: Vec, generators: Sequence[Vec]) -> bool:
    if not generators:
        return is_zero_vec(q)
    return lp.solve_feasibility(list(generators), q).feasible


def reduce_generators(vectors: Iterable[Vec]) -> tuple[Vec, ...]:
    """Minimal sub-list generating the same cone: canonicalise scaling, drop
    zeros and duplicates, then greedily remove conic combinations.

    For pointed cones the result is exactly the set of extreme rays; for
    cones with lines a minimal generating set is not unique and the greedy
    order (canonical sort) pins the answer down.
    """
    seen: dict[Vec, None] = {}
    for v in vectors:
        cv = integerize(v)
        if not is_zero_vec(cv):
            seen.setdefault(cv, None)
    current = sorted(seen)
    i = 0
    while i < len(current):
        others = current[:i] + current[i + 1 :]
        if others and in_conic_hull(current[i], others):
            current.pop(i)
        else:
            i += 1
    return tuple(current)


# ---------------------------------------------------------------------------
# the cone value


class Cone:
    """Polyhedral cone in ray representation, facets cached on first use."""

    __slots__ = ("dim", "rays", "_facets")

    def __init__(self, dim: int, rays: tuple[Vec, ...], facets: tuple[Vec, ...] | None = None):
        self.dim = dim
        self.rays = rays
        self._facets = facets

    def __repr__(self) -> str:
        return f"Cone(dim={self.dim}, rays={len(self.rays)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return cones_equal(self, other)

    def __hash__(self):
        return hash((self.dim, self.rays))

    @property
    def facets(self) -> tuple[Vec, ...]:
        """Reduced inward normals; opposite pairs encode equality constraints."""
        if self._facets is None:
            lin, rays = double_description(self.rays, self.dim)
            normals = list(rays)
            for l in lin:
                normals.append(l)
                normals.append(vec_scale(-1, l))
            self._facets = tuple(sorted(integerize(n) for n in normals))
        return self._facets


def cone_from_rays(rays: Iterable[Vec], dim: int) -> Cone:
    reduced = reduce_generators(rays)
    for r in reduced:
        if len(r) != dim:
            raise DimensionMismatch(dim, len(r), "cone ray")
    return Cone(dim, reduced)


def cone_from_facets(normals: Iterable[Vec], dim: int) -> Cone:
    kept = reduce_generators(normals)  # same Farkas reduction applies to normals
    for n in kept:
        if len(n) != dim:
            raise DimensionMismatch(dim, len(n), "cone facet normal")
    lin, rays = double_description(kept, dim)
    all_rays = list(rays)
    for l in lin:
        all_rays.append(l)
        all_rays.append(vec_scale(-1, l))
    return Cone(dim, tuple(sorted(integerize(r) for r in all_rays)), facets=kept)


def dual_cone(c: Cone) -> Cone:
    """{ f : <f, r> >= 0 for every ray r }, with its own reduced rays."""
    lin, rays = double_description(c.rays, c.dim)
    all_rays = list(rays)
    for l in lin:
        all_rays.append(l)
        all_rays.append(vec_scale(-1, l))
    # the primal rays are exactly the facet normals of the dual
    return Cone(c.dim, tuple(sorted(integerize(r) for r in all_rays)), facets=c.rays)


def extreme_rays(c: Cone) -> tuple[Vec, ...]:
    return c.rays


def is_simplicial(c: Cone) -> bool:
    if len(c.rays) != c.dim:
        return False
    return rank(mat(c.rays)) == c.dim


def is_pointed(c: Cone) -> bool:
    if not c.rays:
        return True
    # pointed iff no nontrivial nonnegative combination of rays vanishes
    columns = [r + (Fraction(1),) for r in c.rays]
    target = zeros(c.dim) + (Fraction(1),)
    return not lp.solve_feasibility(columns, target).feasible


def is_full_dimensional(c: Cone) -> bool:
    return bool(c.rays) and rank(mat(c.rays)) == c.dim


def cones_equal(a: Cone, b: Cone) -> bool:
    if a.dim != b.dim:
        return False
    if a.rays == b.rays:
        return True
    return all(in_conic_hull(r, b.rays) for r in a.rays) and all(
        in_conic_hull(r, a.rays) for r in b.rays
    )


# ---------------------------------------------------------------------------
# membership certificates


@dataclass(frozen=True)
class MembershipCertificate:
    """Exact Farkas certificate for (conic or convex) hull membership.

    Inside: nonnegative coefficients expanding the query over the
    generators (summing to one in the convex case).  Outside: a separating
    functional, nonnegative on every generator and negative on the query;
    for convex membership the separator is affine, stored as (y, y0) in one
    vector of length dim + 1 acting as <y, x> + y0.
    """

    inside: bool
    coefficients: tuple[Fraction, ...] | None
    separator: Vec | None

    def verify(self, query: Vec, generators: Sequence[Vec], convex: bool) -> bool:
        if self.inside:
            if self.coefficients is None or len(self.coefficients) != len(generators):
                return False
            if any(c < 0 for c in self.coefficients):
                return False
            if convex and sum(self.coefficients) != 1:
                return False
            dim = len(query)
            total = zeros(dim)
            for coef, g in zip(self.coefficients, generators):
                total = vec_add(total, vec_scale(coef, g))
            return total == tuple(query)
        if self.separator is None:
            return False
        if convex:
            dim = len(query)
            if len(self.separator) != dim + 1:
                return False
            y, y0 = self.separator[:dim], self.separator[dim]
            if any(inner(y, g) + y0 < 0 for g in generators):
                return False
            return inner(y, query) + y0 < 0
        if any(inner(self.separator, g) < 0 for g in generators):
            return False
        return inner(self.separator, query) < 0


def member_cone(q: Vec, c: Cone) -> MembershipCertificate:
    """Decide q in cone(rays), with an expansion or a separating functional."""
    if len(q) != c.dim:
        raise DimensionMismatch(c.dim, len(q), "membership query")
    if not c.rays:
        if is_zero_vec(q):
            return MembershipCertificate(True, (), None)
        return MembershipCertificate(False, None, vec_scale(-1, q))
    result = lp.solve_feasibility(list(c.rays), q)
    if result.feasible:
        cert = MembershipCertificate(True, result.x, None)
    else:
        # solve_feasibility guarantees <farkas, ray> <= 0 and <farkas, q> > 0
        cert = MembershipCertificate(False, None, vec_scale(-1, result.farkas))
    if not cert.verify(q, c.rays, convex=False):
        raise InternalCheckError("membership certificate failed re-verification")
    return cert


def member_convex(q: Vec, points: Sequence[Vec]) -> MembershipCertificate:
    """Decide q in conv(points); like member_cone plus the sum = 1 constraint."""
    if not points:
        raise InputError("convex membership needs at least one point")
    dim = len(q)
    for p in points:
        if len(p) != dim:
            raise DimensionMismatch(dim, len(p), "convex membership")
    columns = [p + (Fraction(1),) for p in points]
    target = tuple(q) + (Fraction(1),)
    result = lp.solve_feasibility(columns, target)
    if result.feasible:
        cert = MembershipCertificate(True, result.x, None)
    else:
        # lift of the Farkas vector: (y, y0) with <y, p> + y0 <= 0 on points
        # and positive on the query; negate for the certificate convention
        cert = MembershipCertificate(False, None, vec_scale(-1, result.farkas))
    if not cert.verify(q, points, convex=True):
        raise InternalCheckError("convex membership certificate failed re-verification")
    return cert

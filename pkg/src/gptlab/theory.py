"""The theory data model: effect and state generator families over an
exact-rational vector space, with the bilinear probability rule.

A theory is a pair of generated convex bodies.  The state set is the convex
hull of the state generators, and the effect set is the order interval
[0, U] carved out of the conic hull of the effect generators: downward
scalings of effects are effects (accepting an outcome only when a biased
coin agrees), and every effect has a complement summing to the unit, so the
interval is the smallest closed set honouring both.

Theories that assert the no-restriction property claim that their state set
equals everything the effect set allows (and dually); `no_restriction_check`
decides that claim with explicit gap witnesses, and `complete` produces the
canonical closures that make it true.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import cones
from .cones import Cone, cone_from_rays, dual_cone, member_cone, member_convex
from .errors import DimensionMismatch, InputError, InternalCheckError, TheoryConsistencyError
from .linalg import (
    Mat,
    Scalar,
    Vec,
    format_rational,
    format_vec,
    inner,
    integerize,
    mat,
    rank,
    vec_from,
    vec_scale,
    vec_sub,
    vec_sum,
)

MAX_DIM_ENV = "GPTLAB_MAX_DIM"
DEFAULT_MAX_DIM = 10


def max_dimension() -> int:
    raw = os.environ.get(MAX_DIM_ENV, "")
    if raw.strip():
        try:
            value = int(raw)
        except ValueError:
            raise InputError(f"{MAX_DIM_ENV} must be an integer, got {raw!r}")
        if value < 1:
            raise InputError(f"{MAX_DIM_ENV} must be >= 1, got {value}")
        return value
    return DEFAULT_MAX_DIM


@dataclass(frozen=True)
class Pvvm:
    """A measurement: named effect generators summing to the unit."""

    name: str
    outcome_labels: tuple[str, ...]


@dataclass(frozen=True)
class Gpt:
    dim: int
    unit: Vec
    effect_names: tuple[str, ...]
    effect_vectors: tuple[Vec, ...]
    state_names: tuple[str, ...]
    state_vectors: tuple[Vec, ...]
    claims_no_restriction: bool
    pvvms: tuple[Pvvm, ...] = ()
    bonus: tuple["BonusElement", ...] = ()  # parsed alongside, used by resources
    name: str = ""

    def effects(self) -> tuple[tuple[str, Vec], ...]:
        return tuple(zip(self.effect_names, self.effect_vectors))

    def states(self) -> tuple[tuple[str, Vec], ...]:
        return tuple(zip(self.state_names, self.state_vectors))

    def effect(self, label: str) -> Vec:
        try:
            return self.effect_vectors[self.effect_names.index(label)]
        except ValueError:
            raise InputError(f"unknown effect label {label!r}") from None

    def state(self, label: str) -> Vec:
        try:
            return self.state_vectors[self.state_names.index(label)]
        except ValueError:
            raise InputError(f"unknown state label {label!r}") from None


@dataclass(frozen=True)
class BonusElement:
    """A single extra measurement effect or preparation to classify."""

    kind: str  # "effect" | "state"
    label: str
    vector: Vec


def build_gpt(
    dim: int,
    unit: Iterable[Scalar],
    effects: Sequence[tuple[str, Iterable[Scalar]]],
    states: Sequence[tuple[str, Iterable[Scalar]]],
    claims_no_restriction: bool,
    pvvms: Sequence[Pvvm] = (),
    bonus: Sequence[BonusElement] = (),
    name: str = "",
) -> Gpt:
    """Validate shapes and labels, returning an immutable theory value."""
    if dim < 1:
        raise InputError(f"dimension must be >= 1, got {dim}")
    cap = max_dimension()
    if dim > cap:
        raise InputError(
            f"dimension {dim} exceeds the enumeration cap {cap}; raise {MAX_DIM_ENV} to override"
        )
    unit_v = vec_from(unit)
    if len(unit_v) != dim:
        raise DimensionMismatch(dim, len(unit_v), "unit vector")
    if not effects or not states:
        raise InputError("a theory needs at least one effect and one state generator")

    def convert(kind: str, named: Sequence[tuple[str, Iterable[Scalar]]]):
        names, vectors, seen = [], [], set()
        for label, entries in named:
            if label in seen:
                raise InputError(f"duplicate {kind} label {label!r}")
            seen.add(label)
            v = vec_from(entries)
            if len(v) != dim:
                raise DimensionMismatch(dim, len(v), f"{kind} generator {label!r}")
            names.append(label)
            vectors.append(v)
        return tuple(names), tuple(vectors)

    effect_names, effect_vectors = convert("effect", effects)
    state_names, state_vectors = convert("state", states)
    effect_labels = set(effect_names)
    for p in pvvms:
        for label in p.outcome_labels:
            if label not in effect_labels:
                raise InputError(f"pvvm {p.name!r} references unknown effect {label!r}")
    return Gpt(
        dim=dim,
        unit=unit_v,
        effect_names=effect_names,
        effect_vectors=effect_vectors,
        state_names=state_names,
        state_vectors=state_vectors,
        claims_no_restriction=claims_no_restriction,
        pvvms=tuple(pvvms),
        bonus=tuple(bonus),
        name=name,
    )


# ---------------------------------------------------------------------------
# cached geometry


@lru_cache(maxsize=None)
def effect_cone(g: Gpt) -> Cone:
    return cone_from_rays(g.effect_vectors, g.dim)


@lru_cache(maxsize=None)
def state_cone(g: Gpt) -> Cone:
    return cone_from_rays(g.state_vectors, g.dim)


@lru_cache(maxsize=None)
def max_state_points(g: Gpt) -> tuple[Vec, ...]:
    """Extreme points of the largest state set the effects allow: the dual
    cone of the effect cone, sliced at <U, x> = 1."""
    dual = dual_cone(effect_cone(g))
    points = []
    for ray in dual.rays:
        weight = inner(g.unit, ray)
        if weight <= 0:
            raise TheoryConsistencyError(
                f"unit is not strictly positive on the dual ray {format_vec(ray)}; "
                "the allowed state set is unbounded"
            )
        points.append(vec_scale(Fraction(1) / weight, ray))
    return tuple(sorted(points))


@lru_cache(maxsize=None)
def max_effect_rays(g: Gpt) -> tuple[Vec, ...]:
    """Extreme rays of the largest effect cone the states allow."""
    return dual_cone(state_cone(g)).rays


def scale_to_effect_interval(h: Vec, states: Sequence[Vec]) -> Vec:
    """The maximal scaling of the direction h with <h, s> <= 1 on every
    listed (normalised) state: the extreme effect on that ray."""
    bounds = [Fraction(1) / inner(s, h) for s in states if inner(s, h) > 0]
    if not bounds:
        raise TheoryConsistencyError(
            f"direction {format_vec(h)} is bounded by no state; "
            "the effect interval is unbounded"
        )
    return vec_scale(min(bounds), h)


def maximal_effect_atoms(g: Gpt) -> tuple[Vec, ...]:
    """Generators of the full dual order interval of the state cone: each
    extreme ray of the maximal effect cone scaled onto [0, unit].  These are
    valid effect generators (complement closure holds by construction)."""
    return tuple(
        sorted(scale_to_effect_interval(h, g.state_vectors) for h in max_effect_rays(g))
    )


def in_effect_set(g: Gpt, e: Vec) -> bool:
    """Effect-set membership: e and its complement both in the effect cone."""
    c = effect_cone(g)
    return member_cone(e, c).inside and member_cone(vec_sub(g.unit, e), c).inside


def in_state_set(g: Gpt, s: Vec) -> bool:
    return member_convex(s, g.state_vectors).inside


# ---------------------------------------------------------------------------
# probability rule


def probability(e: Vec, s: Vec, e_label: str = "", s_label: str = "") -> Fraction:
    """The bilinear probability rule <e, s>, guarded to land in [0, 1]."""
    p = inner(e, s)
    if p < 0 or p > 1:
        e_name = e_label or format_vec(e)
        s_name = s_label or format_vec(s)
        raise TheoryConsistencyError(
            f"probability {format_rational(p)} outside [0, 1] for effect {e_name} on state {s_name}"
        )
    return p


@dataclass(frozen=True)
class ProbabilityTable:
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    entries: Mat

    def row(self, label: str) -> Vec:
        return self.entries[self.row_labels.index(label)]


def probability_table(
    states: Sequence[tuple[str, Vec]], effects: Sequence[tuple[str, Vec]]
) -> ProbabilityTable:
    rows = []
    for s_label, s in states:
        rows.append(tuple(probability(e, s, e_label, s_label) for e_label, e in effects))
    return ProbabilityTable(
        row_labels=tuple(label for label, _ in states),
        col_labels=tuple(label for label, _ in effects),
        entries=tuple(rows),
    )


def theory_table(g: Gpt) -> ProbabilityTable:
    return probability_table(g.states(), g.effects())


def min_model_dimension(t: ProbabilityTable) -> int:
    """Lower bound on the dimension of any model reproducing the table."""
    return rank(t.entries)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]


def _base_violations(g: Gpt) -> list[Violation]:
    out: list[Violation] = []
    for label, s in g.states():
        norm = inner(g.unit, s)
        if norm != 1:
            out.append(
                Violation(
                    "state-normalization",
                    f"<unit, {label}> = {format_rational(norm)}, expected 1",
                )
            )
    for e_label, e in g.effects():
        for s_label, s in g.states():
            p = inner(e, s)
            if p < 0 or p > 1:
                out.append(
                    Violation(
                        "probability-range",
                        f"<{e_label}, {s_label}> = {format_rational(p)} outside [0, 1]",
                    )
                )
    ec = effect_cone(g)
    for label, e in g.effects():
        if not member_cone(vec_sub(g.unit, e), ec).inside:
            out.append(
                Violation(
                    "missing-complement",
                    f"unit - {label} is not in the effect cone; no complement event",
                )
            )
    if rank(mat(g.effect_vectors)) != g.dim:
        out.append(Violation("effects-span", "effect generators do not span the ambient space"))
    if rank(mat(g.state_vectors)) != g.dim:
        out.append(Violation("states-span", "state generators do not span the ambient space"))
    for p in g.pvvms:
        total = vec_sum([g.effect(l) for l in p.outcome_labels], g.dim)
        if total != g.unit:
            out.append(
                Violation(
                    "pvvm-sum",
                    f"measurement {p.name!r} sums to {format_vec(total)}, not the unit",
                )
            )
    return out


def validate(g: Gpt) -> ValidationReport:
    """Check every theory invariant; violations are data, not faults."""
    out = _base_violations(g)
    if not out and g.claims_no_restriction:
        # an asserted-but-false no-restriction claim is reported, never
        # silently reinterpreted: the theory/subtheory split is load-bearing
        check = no_restriction_check(g)
        if not check.holds:
            out.append(
                Violation(
                    "no-restriction-claim",
                    "theory asserts the no-restriction property but its state and "
                    "effect sets are not mutually dual",
                )
            )
    return ValidationReport(ok=not out, violations=tuple(out))


def require_valid(g: Gpt) -> None:
    report = validate(g)
    if not report.ok:
        details = "; ".join(v.message for v in report.violations)
        raise InputError(f"theory {g.name or '<anonymous>'} is inconsistent: {details}")


# ---------------------------------------------------------------------------
# the no-restriction check


@dataclass(frozen=True)
class NoRestrictionResult:
    holds: bool
    state_witnesses: tuple[Vec, ...]  # allowed-by-effects states missing from the state set
    effect_witnesses: tuple[Vec, ...]  # allowed-by-states effects missing from the effect set
    max_state_points: tuple[Vec, ...]
    max_effect_rays: tuple[Vec, ...]


def no_restriction_check(g: Gpt) -> NoRestrictionResult:
    """Is the state set everything the effects allow, and dually?

    Witnesses are actual elements of the gaps: valid maximal states outside
    the stored state set, and maximal effects (scaled into [0, unit]) outside
    the stored effect set.
    """
    state_points = max_state_points(g)
    state_gap = tuple(
        p for p in state_points if not member_convex(p, g.state_vectors).inside
    )

    effect_rays = max_effect_rays(g)
    ec = effect_cone(g)
    effect_gap = []
    for h in effect_rays:
        if member_cone(h, ec).inside:
            continue
        # scale the missing direction onto [0, unit] so the witness is a
        # genuine effect of the maximal theory
        effect_gap.append(scale_to_effect_interval(h, g.state_vectors))
    return NoRestrictionResult(
        holds=not state_gap and not effect_gap,
        state_witnesses=state_gap,
        effect_witnesses=tuple(effect_gap),
        max_state_points=state_points,
        max_effect_rays=effect_rays,
    )


# ---------------------------------------------------------------------------
# completions


FIX_EFFECTS = "fix-effects"
FIX_STATES = "fix-states"


def complete(g: Gpt, mode: str) -> Gpt:
    """The canonical extension satisfying the no-restriction property.

    fix-effects keeps the effect generators and replaces the states by the
    full dual slice; fix-states keeps the states and replaces the effects by
    the dual order interval's cone.  The kept side is reduced to its extreme
    generators (labels of survivors are preserved).
    """
    require_valid(g)
    if mode == FIX_EFFECTS:
        kept = _reduce_named(g.effects(), effect_cone(g).rays)
        new_states = tuple(
            (f"d{i + 1}", p) for i, p in enumerate(max_state_points(g))
        )
        completed = Gpt(
            dim=g.dim,
            unit=g.unit,
            effect_names=tuple(n for n, _ in kept),
            effect_vectors=tuple(v for _, v in kept),
            state_names=tuple(n for n, _ in new_states),
            state_vectors=tuple(v for _, v in new_states),
            claims_no_restriction=True,
            pvvms=g.pvvms,
            name=f"{g.name}.completed-states" if g.name else "completed-states",
        )
    elif mode == FIX_STATES:
        kept_states = [
            (label, s)
            for label, s in g.states()
            if not member_convex(s, [v for l, v in g.states() if l != label]).inside
        ]
        new_effects = tuple((f"f{i + 1}", a) for i, a in enumerate(maximal_effect_atoms(g)))
        completed = Gpt(
            dim=g.dim,
            unit=g.unit,
            effect_names=tuple(n for n, _ in new_effects),
            effect_vectors=tuple(v for _, v in new_effects),
            state_names=tuple(n for n, _ in kept_states),
            state_vectors=tuple(v for _, v in kept_states),
            claims_no_restriction=True,
            pvvms=(),
            name=f"{g.name}.completed-effects" if g.name else "completed-effects",
        )
    else:
        raise InputError(f"unknown completion mode {mode!r}; use {FIX_EFFECTS} or {FIX_STATES}")
    # the no-restriction flag is only asserted because this check passes
    if not no_restriction_check(completed).holds:
        raise InternalCheckError("completion failed its own duality check")
    return completed


def _reduce_named(named: tuple[tuple[str, Vec], ...], extreme: tuple[Vec, ...]) -> list[tuple[str, Vec]]:
    """Keep one named generator per extreme ray (the first matching), so a
    redundant input list comes back reduced with its labels intact."""
    out = []
    used = set()
    for ray in extreme:
        for label, v in named:
            if label in used:
                continue
            if integerize(v) == ray:
                out.append((label, v))
                used.add(label)
                break
        else:
            out.append((f"r{len(out) + 1}", ray))
    return out


# ---------------------------------------------------------------------------
# extremal elements


@lru_cache(maxsize=None)
def pure_states(g: Gpt) -> tuple[tuple[str, Vec], ...]:
    """Generators that are extreme points of the state set."""
    out = []
    for label, s in g.states():
        others = [v for l, v in g.states() if l != label]
        if not others or not member_convex(s, others).inside:
            out.append((label, s))
    return tuple(out)


@lru_cache(maxsize=None)
def effect_set_vertices(g: Gpt) -> tuple[Vec, ...]:
    """Extreme points of the effect set [0, U] within the effect cone.

    Enumerated by homogenisation: lift to { (x, t) : x in t*[0, U] } one
    dimension up and read vertices off the rays with positive last
    coordinate.
    """
    ec = effect_cone(g)
    lifted_normals: list[Vec] = []
    for n in ec.facets:
        lifted_normals.append(n + (Fraction(0),))  # <n, x> >= 0
        lifted_normals.append(vec_scale(-1, n) + (inner(n, g.unit),))  # <n, tU - x> >= 0
    lifted_normals.append(tuple(Fraction(0) for _ in range(g.dim)) + (Fraction(1),))
    lin, rays = cones.double_description(lifted_normals, g.dim + 1)
    if lin:
        raise InternalCheckError("effect set is not pointed; cannot enumerate vertices")
    vertices = []
    for r in rays:
        t = r[-1]
        if t == 0:
            raise InternalCheckError("effect set is unbounded; recession ray found")
        vertices.append(vec_scale(Fraction(1) / t, r[:-1]))
    return tuple(sorted(vertices))


@lru_cache(maxsize=None)
def nonrefinable_effects(g: Gpt) -> tuple[tuple[str, Vec], ...]:
    """Extreme effects on extreme rays of the effect cone: the effects that
    admit no split into two nonzero, non-proportional effects.

    Computed per extreme ray (the maximal scaling of the ray inside the
    order interval), then cross-checked against the refinability
    characterisation on the full vertex list: every other vertex must admit
    an explicit refinement, which is constructed and verified.
    """
    ec = effect_cone(g)
    atoms: list[Vec] = []
    for ray in ec.rays:
        bounds = [
            inner(n, g.unit) / inner(n, ray)
            for n in ec.facets
            if inner(n, ray) > 0
        ]
        if not bounds:
            raise TheoryConsistencyError("effect cone has an unbounded order interval")
        t = min(bounds)
        if t <= 0:
            raise InternalCheckError("nonpositive scaling bound on an extreme ray")
        atoms.append(vec_scale(t, ray))
    atom_set = set(atoms)

    # agreement check: vertices off the extreme rays must be refinable
    for vertex in effect_set_vertices(g):
        if vertex in atom_set or all(x == 0 for x in vertex):
            continue
        if any(integerize(vertex) == integerize(a) for a in atoms):
            raise InternalCheckError(
                "vertex proportional to an atom but not equal: scaling bound is wrong"
            )
        cert = member_cone(vertex, ec)
        positive = [
            (idx, coef) for idx, coef in enumerate(cert.coefficients) if coef > 0
        ]
        if len(positive) < 2:
            raise InternalCheckError(
                f"effect-set vertex {format_vec(vertex)} sits on one extreme ray "
                "but was not recognised as an atom"
            )
        idx, coef = positive[0]
        part = vec_scale(coef, ec.rays[idx])
        rest = vec_sub(vertex, part)
        for piece in (part, rest):
            if not in_effect_set(g, piece):
                raise InternalCheckError("constructed refinement left the effect set")
        if integerize(part) == integerize(vertex):
            raise InternalCheckError("constructed refinement is proportional to the original")
    out = []
    named = list(g.effects())
    used: set[str] = set()
    for i, a in enumerate(atoms):
        label = None
        for gen_label, v in named:
            if gen_label not in used and v == a:
                label = gen_label
                used.add(gen_label)
                break
        out.append((label or f"nr{i + 1}", a))
    return tuple(out)

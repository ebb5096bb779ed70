"""Classifying a single bonus measurement effect or preparation against a
classical (simplicial) theory.

Adding one element to a theory that must keep the no-restriction property
forces a full rebuild of the other side: a bonus effect joins the effect
cone together with its complement (a measurement must sum to the unit), and
the allowed states are recomputed as the dual slice, possibly expelling
previously valid preparations; dually for a bonus state.  The verdict
evaluates the equivalent conditions independently and audits that they
agree; when a bonus element swallows a former extreme point the conditions
can genuinely diverge, and the verdict then carries the counterexample
under its own classification instead of reconciling it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .cones import cone_from_rays, dual_cone
from .contextuality import (
    NonUniqueDecomposition,
    classify,
    interior_state_functional,
    nonconvexly_overcomplete,
)
from .errors import InputError, InternalCheckError
from .linalg import Vec, format_vec, inner, integerize, vec_scale, vec_sub
from .theory import (
    BonusElement,
    Gpt,
    effect_cone,
    in_effect_set,
    in_state_set,
    no_restriction_check,
    require_valid,
    scale_to_effect_interval,
    state_cone,
)

CLASSICAL = "classical"
NONCLASSICAL = "nonclassical"
DIMENSION_RAISING = "dimension-raising"
DIVERGENT = "divergent"


@dataclass(frozen=True)
class ConditionReport:
    condition: str  # "i" | "ii" | "iii" | "iv"
    holds: bool
    detail: str


@dataclass(frozen=True)
class ExtensionOutcome:
    theory: Gpt
    added_labels: tuple[str, ...]
    expelled: tuple[tuple[str, Vec], ...]  # old generators no longer valid
    warnings: tuple[str, ...]


@dataclass(frozen=True)
class ResourceVerdict:
    classification: str
    extended: Gpt | None
    conditions: tuple[ConditionReport, ...]
    expelled: tuple[tuple[str, Vec], ...]
    warnings: tuple[str, ...]
    witness: NonUniqueDecomposition | None  # the overcompletion dependence, if any


def _require_classical_host(g: Gpt) -> None:
    require_valid(g)
    if not no_restriction_check(g).holds:
        raise InputError(
            "the host theory must satisfy the no-restriction property before "
            "a bonus element can be classified"
        )
    if not classify(g).noncontextual:
        raise InputError(
            "the host theory is already ontologically contextual; bonus "
            "classification presumes a classical (simplicial) free theory"
        )


def extend_theory(g: Gpt, b: BonusElement) -> ExtensionOutcome:
    """The minimal no-restriction theory containing g's kept side plus b.

    For a bonus effect the new effect cone is generated by the old effects,
    b and unit - b (the rest of b's measurement); states are recomputed as
    the dual slice.  For a bonus state the state cone gains b and the
    effects are recomputed.  Old generators invalidated by the new element
    are reported as expelled, with no guess at their operational fate.
    """
    _require_classical_host(g)
    if len(b.vector) != g.dim:
        raise InputError(
            f"bonus element {b.label!r} has dimension {len(b.vector)}, theory has {g.dim}; "
            "classification of dimension-raising elements is reported, not computed"
        )
    warnings: list[str] = []
    if b.kind == "effect":
        complement = vec_sub(g.unit, b.vector)
        raw = list(g.effects()) + [(b.label, b.vector), (f"{b.label}_c", complement)]
        new_cone = cone_from_rays([v for _, v in raw], g.dim)
        dual = dual_cone(new_cone)
        points = []
        for ray in dual.rays:
            w = inner(g.unit, ray)
            if w <= 0:
                raise InputError(
                    f"bonus effect {b.label!r} leaves an unbounded or empty state set; "
                    f"offending dual direction {format_vec(ray)}"
                )
            points.append(vec_scale(Fraction(1) / w, ray))
        if not points:
            evidence = lp.solve_feasibility(
                [v + (Fraction(0),) for v in new_cone.rays], g.unit + (Fraction(0),)
            )
            raise InputError(
                f"bonus effect {b.label!r} empties the state set; evidence: {evidence}"
            )
        kept_effects = _reduced_named(raw, new_cone.rays)
        new_states = tuple((f"d{i + 1}", p) for i, p in enumerate(sorted(points)))
        extended = Gpt(
            dim=g.dim,
            unit=g.unit,
            effect_names=tuple(n for n, _ in kept_effects),
            effect_vectors=tuple(v for _, v in kept_effects),
            state_names=tuple(n for n, _ in new_states),
            state_vectors=tuple(v for _, v in new_states),
            claims_no_restriction=True,
            pvvms=(),
            name=f"{g.name}+{b.label}" if g.name else f"extended+{b.label}",
        )
        expelled = tuple(
            (label, s)
            for label, s in g.states()
            if not (0 <= inner(b.vector, s) <= 1)
        )
        added = tuple(n for n, _ in kept_effects if n not in g.effect_names)
    elif b.kind == "state":
        if inner(g.unit, b.vector) != 1:
            raise InputError(
                f"bonus state {b.label!r} is not normalised: <unit, b> = "
                f"{inner(g.unit, b.vector)}"
            )
        raw_states = list(g.states()) + [(b.label, b.vector)]
        new_state_cone = cone_from_rays([v for _, v in raw_states], g.dim)
        kept_states = _reduced_named(raw_states, new_state_cone.rays)
        atoms = sorted(
            scale_to_effect_interval(h, [v for _, v in kept_states])
            for h in dual_cone(new_state_cone).rays
        )
        new_effects = tuple((f"f{i + 1}", a) for i, a in enumerate(atoms))
        extended = Gpt(
            dim=g.dim,
            unit=g.unit,
            effect_names=tuple(n for n, _ in new_effects),
            effect_vectors=tuple(v for _, v in new_effects),
            state_names=tuple(n for n, _ in kept_states),
            state_vectors=tuple(v for _, v in kept_states),
            claims_no_restriction=True,
            pvvms=(),
            name=f"{g.name}+{b.label}" if g.name else f"extended+{b.label}",
        )
        expelled = tuple(
            (label, e)
            for label, e in g.effects()
            if not (0 <= inner(e, b.vector) <= 1)
        )
        added = tuple(n for n, _ in kept_states if n not in g.state_names)
    else:
        raise InputError(f"bonus element kind must be 'effect' or 'state', got {b.kind!r}")

    require_valid(extended)
    if not no_restriction_check(extended).holds:
        raise InternalCheckError("extension failed its own duality check")
    if expelled:
        warnings.append(
            "previously valid generators were expelled by the bonus element: "
            + ", ".join(label for label, _ in expelled)
        )
    return ExtensionOutcome(
        theory=extended, added_labels=added, expelled=expelled, warnings=tuple(warnings)
    )


def _reduced_named(named, extreme_rays):
    out, used = [], set()
    for ray in extreme_rays:
        for label, v in named:
            if label not in used and integerize(v) == ray:
                out.append((label, v))
                used.add(label)
                break
        else:
            out.append((f"r{len(out) + 1}", ray))
    return out


def classify_bonus(g: Gpt, b: BonusElement) -> ResourceVerdict:
    """Evaluate the four equivalent classicality conditions independently.

    (i) the extension is ontologically contextual; (ii) b is a nonclassical
    resource, definitionally identical to (i) and recorded as such;
    (iii) the extended theory's nonrefinable family (pure states, for a
    bonus preparation) is nonconvexly overcomplete, detected by the
    negative-dependence search; (iv) b lies in the host's span but outside
    its effect (state) set.  Nonclassical iff they hold, classical iff all
    fail.  A divergence, possible when the bonus element swallows a former
    extreme point, yields the 'divergent' classification carrying the full
    counterexample; it is reported, never reconciled.
    """
    _require_classical_host(g)
    if len(b.vector) != g.dim:
        report = ConditionReport(
            "iv",
            False,
            f"bonus vector has dimension {len(b.vector)} != {g.dim}: it lies outside "
            "the host's space, so the classification theorem's premise fails",
        )
        return ResourceVerdict(
            classification=DIMENSION_RAISING,
            extended=None,
            conditions=(report,),
            expelled=(),
            warnings=(
                "the extended theory lives in a strictly larger space; "
                "simpliciality classification does not transfer",
            ),
            witness=None,
        )

    outcome = extend_theory(g, b)
    extended = outcome.theory
    warnings = list(outcome.warnings)

    # premise check: the bonus measurement is nonrefinable iff its effect
    # sits on an extreme ray of the extended cone (dually for states)
    if b.kind == "effect":
        on_extreme = any(integerize(b.vector) == r for r in effect_cone(extended).rays)
    else:
        on_extreme = any(integerize(b.vector) == r for r in state_cone(extended).rays)
    if not on_extreme:
        warnings.append(
            f"bonus {b.kind} {b.label!r} is not extremal in the extended theory: "
            "the single-nonrefinable-element premise is unmet; conditions are "
            "still evaluated"
        )

    verdict_ext = classify(extended)
    cond_i = ConditionReport(
        "i",
        not verdict_ext.noncontextual,
        "extended theory is ontologically "
        + ("contextual" if not verdict_ext.noncontextual else "noncontextual"),
    )
    cond_ii = ConditionReport(
        "ii",
        cond_i.holds,
        "recorded as definitionally identical to (i): a nonclassical resource is "
        "one whose extension is ontologically contextual",
    )

    if b.kind == "effect":
        from .theory import nonrefinable_effects

        family = nonrefinable_effects(extended)
        normalizer = interior_state_functional(extended)
        inside = in_effect_set(g, b.vector)
        side_name = "effect set"
    else:
        from .theory import pure_states

        family = pure_states(extended)
        normalizer = g.unit
        inside = in_state_set(g, b.vector)
        side_name = "state set"

    witness = nonconvexly_overcomplete(family, normalizer)
    cond_iii = ConditionReport(
        "iii",
        witness is not None,
        "the extended nonrefinable family "
        + (
            "is nonconvexly overcomplete"
            if witness is not None
            else "carries no negative-coefficient dependence"
        ),
    )
    cond_iv = ConditionReport(
        "iv",
        not inside,
        "bonus element lies in the host's span and is "
        + ("outside" if not inside else "inside")
        + f" the host's {side_name}",
    )

    answers = {cond_i.holds, cond_iii.holds, cond_iv.holds}
    if len(answers) != 1:
        warnings.append(
            "equivalence audit failed: conditions diverge "
            f"(i={cond_i.holds}, iii={cond_iii.holds}, iv={cond_iv.holds}); "
            "counterexample retained, not reconciled"
        )
        classification = DIVERGENT
    else:
        classification = NONCLASSICAL if cond_i.holds else CLASSICAL
    return ResourceVerdict(
        classification=classification,
        extended=extended,
        conditions=(cond_i, cond_ii, cond_iii, cond_iv),
        expelled=outcome.expelled,
        warnings=tuple(warnings),
        witness=witness,
    )

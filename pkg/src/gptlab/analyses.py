"""Report builders: one per CLI command, shared by the library surface.

Each builder runs the relevant decision procedures, lays the results out in
deterministic section order, and attaches the re-verification closures for
every certificate it embeds (membership witnesses, models, decomposition
witnesses, infeasibility vectors).  Reports are byte-stable: everything is
sorted canonically and no ambient state enters.
"""

from __future__ import annotations

from .cones import cone_from_rays, is_simplicial, member_cone, member_convex
from .contextuality import (
    OntModel,
    classify,
    embed_exact_dim,
    embed_lp,
    indistinguishability_witness,
    interior_state_functional,
    model_dimension_bound,
    nonunique_decomposition,
    verify_ncom,
)
from .errors import InputError, InternalCheckError
from .linalg import format_vec, inner
from .report import Report, labelled_coeffs, table_from_rows, vector_list
from .resources import classify_bonus
from .theory import (
    FIX_EFFECTS,
    BonusElement,
    Gpt,
    complete,
    effect_cone,
    min_model_dimension,
    no_restriction_check,
    nonrefinable_effects,
    pure_states,
    theory_table,
    validate,
)

_RESTRICTED_STATE_NOTE = (
    "state generators are interpreted up to convex closure; a theory that "
    "forbids some mixtures of its pure states is analysed through its hull"
)


def _theory_section(report: Report, g: Gpt) -> None:
    s = report.section("theory")
    s.add("name", g.name or "<anonymous>")
    s.add("dimension", g.dim)
    s.add("unit", g.unit)
    s.add("effect generators", ", ".join(g.effect_names))
    s.add("state generators", ", ".join(g.state_names))
    s.add("asserts no-restriction", g.claims_no_restriction)
    if not g.claims_no_restriction:
        s.note(_RESTRICTED_STATE_NOTE)


def _validation_section(report: Report, g: Gpt) -> bool:
    rep = validate(g)
    s = report.section("validation")
    s.add("consistent", rep.ok)
    for v in rep.violations:
        s.add(v.code, v.message)
    return rep.ok


def _no_restriction_section(report: Report, g: Gpt):
    check = no_restriction_check(g)
    s = report.section("no_restriction")
    s.add("holds", check.holds)
    s.add("maximal state extreme points", vector_list(check.max_state_points))
    if check.state_witnesses:
        s.add("missing states", vector_list(check.state_witnesses))
        for w in check.state_witnesses:
            report.add_check(
                f"state witness {format_vec(w)} lies outside the stored state set",
                lambda w=w: not member_convex(w, g.state_vectors).inside,
            )
    if check.effect_witnesses:
        s.add("missing effects", vector_list(check.effect_witnesses))
        for w in check.effect_witnesses:
            report.add_check(
                f"effect witness {format_vec(w)} lies outside the stored effect cone",
                lambda w=w: not member_cone(w, effect_cone(g)).inside,
            )
    return check


def _classification_section(report: Report, g: Gpt, heading: str = "classification"):
    verdict = classify(g)
    s = report.section(heading)
    s.add("pure states", ", ".join(verdict.pure_state_labels))
    s.add("nonrefinable effects", ", ".join(verdict.nonrefinable_labels))
    s.add("pure states simplicial", verdict.states_simplicial)
    s.add("nonrefinable effects simplicial", verdict.effects_simplicial)
    s.add(
        "verdict",
        "ontologically noncontextual" if verdict.noncontextual else "ontologically contextual",
    )
    if verdict.noncontextual:
        _model_entries(report, s, g, verdict.model, "point-mass model")
    else:
        s.add("witness side", verdict.witness_side)
        _witness_entries(report, s, verdict.witness)
    return verdict


def _witness_entries(report: Report, s, witness) -> None:
    s.add("witness point", witness.point)
    s.add("dependent generator", witness.dependent_label)
    s.add("affine expansion", labelled_coeffs(witness.expansion))
    s.add("decomposition 1", labelled_coeffs(witness.decomposition_1))
    s.add("decomposition 2", labelled_coeffs(witness.decomposition_2))
    report.add_check(
        f"decomposition witness at {format_vec(witness.point)} re-verifies",
        witness.verify,
    )


def _model_entries(report: Report, s, g: Gpt, model: OntModel, label: str) -> None:
    s.add(f"{label} ontic size", model.ontic_size)
    s.add(f"{label} state frame", vector_list(model.state_frame))
    s.add(f"{label} effect frame", vector_list(model.effect_frame))
    report.add_check(
        f"{label} passes all model conditions",
        lambda: verify_ncom(model, g).ok,
    )


def _embedding_sections(report: Report, g: Gpt):
    exact = embed_exact_dim(g)
    s = report.section("embedding_same_dimension")
    s.add("sought ontic size", g.dim)
    s.add("candidates explored", exact.explored)
    s.add("model found", exact.found)
    if exact.found:
        _model_entries(report, s, g, exact.model, "model")
    else:
        s.note(exact.caveat)
    bound = model_dimension_bound(g)
    s.add("table rank bound", bound)

    lp_result = embed_lp(g)
    s2 = report.section("embedding_lp")
    s2.add("model found", lp_result.found)
    if lp_result.found:
        _model_entries(report, s2, g, lp_result.model, "model")
        if lp_result.model.ontic_size < bound:
            raise InternalCheckError("model undercuts the table rank bound")
    else:
        s2.add("infeasibility certificate", vector_list(lp_result.farkas))
        report.add_check(
            "embedding infeasibility certificate re-verifies",
            lp_result.verify_farkas,
        )
    return exact, lp_result


def _indistinguishability_section(report: Report, g: Gpt, model: OntModel | None) -> None:
    s = report.section("indistinguishability")
    if model is None:
        s.add("applicable", "no (no finite model exists)")
        return
    witness = indistinguishability_witness(g, model)
    if witness is None:
        s.add("applicable", "no (ontic size equals dimension)")
        return
    s.add("distribution 1", witness.first)
    s.add("distribution 2", witness.second)
    s.add("unresolvable ontic direction", witness.null_direction)
    for label, p in witness.statistics:
        s.add(f"shared statistics on {label}", p)
    s.note(
        "two distinct ontic distributions reproduce identical statistics on "
        "every allowed effect: the model depends on more than the equivalence "
        "classes of preparations"
    )
    report.add_check(
        "indistinguishable distribution pair re-verifies",
        lambda: witness.verify(g, model),
    )


def analyze_report(g: Gpt) -> Report:
    report = Report(title=f"analysis of {g.name or 'theory'}")
    _theory_section(report, g)
    if not _validation_section(report, g):
        return report
    check = _no_restriction_section(report, g)

    table = theory_table(g)
    s = report.section("statistics")
    s.tables.append(
        table_from_rows("probability table", table.row_labels, table.col_labels, table.entries)
    )
    s.add("table rank", min_model_dimension(table))
    report.add_check(
        "probability table re-verifies entry by entry",
        lambda: all(
            table.entries[i][j] == inner(e, st)
            for i, (_, st) in enumerate(g.states())
            for j, (_, e) in enumerate(g.effects())
        ),
    )

    if check.holds:
        _classification_section(report, g)
        exact, lp_result = _embedding_sections(report, g)
    else:
        completion = complete(g, FIX_EFFECTS)
        cs = report.section("completion")
        cs.add("mode", FIX_EFFECTS)
        cs.add("completed state extreme points", vector_list(completion.state_vectors))
        cs.add(
            "completion simplicial",
            is_simplicial(cone_from_rays(completion.state_vectors, g.dim)),
        )
        _classification_section(report, completion, heading="completion_classification")
        exact, lp_result = _embedding_sections(report, g)

    _indistinguishability_section(report, g, lp_result.model)

    conclusion = report.section("conclusion")
    if check.holds:
        conclusion.add(
            "theory verdict",
            "ontologically noncontextual" if exact.found else "ontologically contextual",
        )
    else:
        if exact.found:
            conclusion.add("theory verdict", "ontologically noncontextual")
            conclusion.add(
                "reason",
                "a same-dimension model exists: the theory restricts a "
                "simplicial theory of equal dimension",
            )
        else:
            conclusion.add("theory verdict", "ontologically contextual")
            conclusion.add(
                "reason",
                "no same-dimension model in the candidate class; any model "
                "needs more ontic points than dimensions and then violates "
                "preparation noncontextuality (see indistinguishability)",
            )
        if lp_result.found:
            conclusion.add(
                "unbounded-cardinality embedding",
                f"model with {lp_result.model.ontic_size} ontic points exists",
            )
        else:
            conclusion.add("unbounded-cardinality embedding", "no model of any finite size")
    return report


def table_report(g: Gpt) -> Report:
    report = Report(title=f"probability table of {g.name or 'theory'}")
    _theory_section(report, g)
    if not _validation_section(report, g):
        return report
    table = theory_table(g)
    s = report.section("statistics")
    s.tables.append(
        table_from_rows("probability table", table.row_labels, table.col_labels, table.entries)
    )
    s.add("table rank", min_model_dimension(table))
    s.add("model dimension lower bound", min_model_dimension(table))
    report.add_check(
        "probability table re-verifies entry by entry",
        lambda: all(
            table.entries[i][j] == inner(e, st)
            for i, (_, st) in enumerate(g.states())
            for j, (_, e) in enumerate(g.effects())
        ),
    )
    return report


def complete_report(g: Gpt, mode: str) -> Report:
    report = Report(title=f"completion of {g.name or 'theory'} ({mode})")
    _theory_section(report, g)
    if not _validation_section(report, g):
        return report
    completion = complete(g, mode)
    s = report.section("completion")
    s.add("mode", mode)
    s.add("effect generators", vector_list(completion.effect_vectors))
    s.add("state generators", vector_list(completion.state_vectors))
    s.add("no-restriction holds on result", no_restriction_check(completion).holds)
    for label, v in g.states():
        report.add_check(
            f"original state {label} is contained in the completed state set",
            lambda v=v: member_convex(v, completion.state_vectors).inside,
        )
    return report


def embed_report(g: Gpt, exact_dim: bool) -> Report:
    kind = "same-dimension" if exact_dim else "unbounded-cardinality"
    report = Report(title=f"{kind} embedding of {g.name or 'theory'}")
    _theory_section(report, g)
    if not _validation_section(report, g):
        return report
    if exact_dim:
        result = embed_exact_dim(g)
        s = report.section("embedding_same_dimension")
        s.add("sought ontic size", g.dim)
        s.add("candidates explored", result.explored)
        s.add("model found", result.found)
        if result.found:
            _model_entries(report, s, g, result.model, "model")
        else:
            s.note(result.caveat)
            lp_result = embed_lp(g)
            s.add(
                "unbounded-cardinality comparison",
                f"model with {lp_result.model.ontic_size} ontic points exists"
                if lp_result.found
                else "no model of any finite size",
            )
            s.add("table rank bound", model_dimension_bound(g))
    else:
        result = embed_lp(g)
        s = report.section("embedding_lp")
        s.add("model found", result.found)
        if result.found:
            _model_entries(report, s, g, result.model, "model")
        else:
            s.add("infeasibility certificate", vector_list(result.farkas))
            report.add_check(
                "embedding infeasibility certificate re-verifies", result.verify_farkas
            )
    return report


def witness_report(g: Gpt, kind: str) -> Report:
    report = Report(title=f"{kind} witness for {g.name or 'theory'}")
    _theory_section(report, g)
    if not _validation_section(report, g):
        return report
    if kind == "lemma2":
        s = report.section("nonunique_decomposition")
        pure = pure_states(g)
        witness = nonunique_decomposition(pure, g.unit)
        side = "states"
        if witness is None:
            witness = nonunique_decomposition(
                nonrefinable_effects(g), interior_state_functional(g)
            )
            side = "effects"
        if witness is None:
            s.add("witness", "none: both extremal families have unique decompositions")
            return report
        s.add("side", side)
        _witness_entries(report, s, witness)
        if not g.claims_no_restriction:
            s.note(
                "for a restricted theory a non-unique decomposition alone does "
                "not settle contextuality; see the same-dimension embedding"
            )
        return report
    if kind == "indistinguishable":
        lp_result = embed_lp(g)
        _indistinguishability_section(report, g, lp_result.model)
        return report
    raise InputError(f"unknown witness kind {kind!r}")


def resource_report(g: Gpt, b: BonusElement) -> Report:
    report = Report(title=f"resource classification of {b.label} against {g.name or 'theory'}")
    _theory_section(report, g)
    if not _validation_section(report, g):
        return report
    verdict = classify_bonus(g, b)
    s = report.section("resource")
    s.add("bonus kind", b.kind)
    s.add("bonus vector", b.vector)
    s.add("classification", verdict.classification)
    for c in verdict.conditions:
        s.add(f"condition ({c.condition})", f"{'holds' if c.holds else 'fails'}: {c.detail}")
    if verdict.extended is not None:
        s.add("extended effect generators", vector_list(verdict.extended.effect_vectors))
        s.add("extended state generators", vector_list(verdict.extended.state_vectors))
        ext = verdict.extended
        report.add_check(
            "extended theory satisfies the no-restriction property",
            lambda: no_restriction_check(ext).holds,
        )
    if verdict.expelled:
        s.add("expelled generators", ", ".join(label for label, _ in verdict.expelled))
        s.note(
            "expelled generators are reported as data; their operational "
            "status in the extended theory is not decided here"
        )
    for w in verdict.warnings:
        s.note(w)
    if verdict.witness is not None:
        _witness_entries(report, s, verdict.witness)
    return report

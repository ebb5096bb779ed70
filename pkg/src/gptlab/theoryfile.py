"""The flat text format for theories.

Hand-writable key/value text with sections; vectors are comma-separated
rationals in brackets.  A commented example:

    # lines starting with '#' are ignored
    dimension: 3
    unit: [0, 0, 2]
    no_restriction: false

    effects:
      e1 = [1, 0, 1]
      e2 = [-1, 0, 1]

    states:
      s1 = [1/2, 0, 1/2]
      s2 = [-1/2, 0, 1/2]

    pvvms:
      Z = e1 + e2

    bonus:
      b1 = effect [3/2, 0, -1/2]

Parsing either yields a theory that passes shape checks or fails with a
diagnostic carrying the offending line.  serialize(parse(text)) reparses to
an identical theory.
"""

from __future__ import annotations

import re
from dataclasses import replace

from .errors import InputError
from .linalg import Vec, format_rational, rat
from .theory import BonusElement, Gpt, Pvvm, build_gpt


class ParseError(InputError):
    def __init__(self, source: str, line_no: int, message: str):
        self.source = source
        self.line_no = line_no
        super().__init__(f"{source}:{line_no}: {message}")


_SECTIONS = ("effects", "states", "pvvms", "bonus")
_VECTOR_RE = re.compile(r"^\[(.*)\]$")


def _parse_vector(text: str, source: str, line_no: int) -> tuple:
    m = _VECTOR_RE.match(text.strip())
    if not m:
        raise ParseError(source, line_no, f"expected a bracketed vector, got {text!r}")
    body = m.group(1).strip()
    if not body:
        raise ParseError(source, line_no, "empty vector")
    entries = []
    for piece in body.split(","):
        piece = piece.strip()
        try:
            entries.append(rat(piece))
        except InputError as exc:
            raise ParseError(source, line_no, str(exc)) from None
    return tuple(entries)


def parse_text(text: str, source: str = "<text>") -> Gpt:
    dimension: int | None = None
    unit: Vec | None = None
    no_restriction: bool | None = None
    name = ""
    effects: list[tuple[str, Vec]] = []
    states: list[tuple[str, Vec]] = []
    pvvms: list[Pvvm] = []
    bonus: list[BonusElement] = []
    section: str | None = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()

        if stripped.endswith(":") and stripped[:-1] in _SECTIONS:
            section = stripped[:-1]
            continue

        if ":" in stripped and not stripped.startswith("["):
            key, _, value = stripped.partition(":")
            key = key.strip()
            value = value.strip()
            if key == "dimension":
                try:
                    dimension = int(value)
                except ValueError:
                    raise ParseError(source, line_no, f"dimension must be an integer, got {value!r}")
                section = None
                continue
            if key == "unit":
                unit = _parse_vector(value, source, line_no)
                section = None
                continue
            if key == "no_restriction":
                if value not in ("true", "false"):
                    raise ParseError(source, line_no, f"no_restriction must be true or false, got {value!r}")
                no_restriction = value == "true"
                section = None
                continue
            if key == "name":
                name = value
                section = None
                continue

        if section in ("effects", "states"):
            label, eq, vec_text = stripped.partition("=")
            label = label.strip()
            if not eq or not label:
                raise ParseError(source, line_no, f"expected 'label = [vector]', got {stripped!r}")
            v = _parse_vector(vec_text, source, line_no)
            target = effects if section == "effects" else states
            if any(l == label for l, _v in target):
                raise ParseError(source, line_no, f"duplicate {section[:-1]} label {label!r}")
            target.append((label, v))
            continue

        if section == "pvvms":
            pname, eq, rhs = stripped.partition("=")
            if not eq:
                raise ParseError(source, line_no, f"expected 'name = label + label + ...', got {stripped!r}")
            labels = tuple(piece.strip() for piece in rhs.split("+"))
            if any(not l for l in labels):
                raise ParseError(source, line_no, "empty outcome label in measurement")
            pvvms.append(Pvvm(pname.strip(), labels))
            continue

        if section == "bonus":
            blabel, eq, rhs = stripped.partition("=")
            if not eq:
                raise ParseError(source, line_no, f"expected 'label = effect|state [vector]', got {stripped!r}")
            rhs = rhs.strip()
            kind, _, vec_text = rhs.partition(" ")
            if kind not in ("effect", "state"):
                raise ParseError(source, line_no, f"bonus kind must be 'effect' or 'state', got {kind!r}")
            bonus.append(BonusElement(kind, blabel.strip(), _parse_vector(vec_text, source, line_no)))
            continue

        raise ParseError(source, line_no, f"unrecognised line {stripped!r}")

    if dimension is None:
        raise ParseError(source, 0, "missing 'dimension:' entry")
    if unit is None:
        raise ParseError(source, 0, "missing 'unit:' entry")
    if no_restriction is None:
        raise ParseError(source, 0, "missing 'no_restriction:' entry")
    if not effects:
        raise ParseError(source, 0, "missing or empty 'effects:' section")
    if not states:
        raise ParseError(source, 0, "missing or empty 'states:' section")
    try:
        return build_gpt(
            dim=dimension,
            unit=unit,
            effects=effects,
            states=states,
            claims_no_restriction=no_restriction,
            pvvms=pvvms,
            bonus=bonus,
            name=name,
        )
    except InputError as exc:
        raise ParseError(source, 0, str(exc)) from None


def parse_path(path: str) -> Gpt:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read theory file {path!r}: {exc}") from None
    g = parse_text(text, source=path)
    if not g.name:
        stem = path.rsplit("/", 1)[-1]
        stem = stem[:-4] if stem.endswith(".gpt") else stem
        g = replace(g, name=stem)
    return g


def _format_vector(v: Vec) -> str:
    return "[" + ", ".join(format_rational(x) for x in v) + "]"


def serialize(g: Gpt) -> str:
    lines = []
    if g.name:
        lines.append(f"name: {g.name}")
    lines.append(f"dimension: {g.dim}")
    lines.append(f"unit: {_format_vector(g.unit)}")
    lines.append(f"no_restriction: {'true' if g.claims_no_restriction else 'false'}")
    lines.append("")
    lines.append("effects:")
    for label, v in g.effects():
        lines.append(f"  {label} = {_format_vector(v)}")
    lines.append("")
    lines.append("states:")
    for label, v in g.states():
        lines.append(f"  {label} = {_format_vector(v)}")
    if g.pvvms:
        lines.append("")
        lines.append("pvvms:")
        for p in g.pvvms:
            lines.append(f"  {p.name} = " + " + ".join(p.outcome_labels))
    if g.bonus:
        lines.append("")
        lines.append("bonus:")
        for b in g.bonus:
            lines.append(f"  {b.label} = {b.kind} {_format_vector(b.vector)}")
    return "\n".join(lines) + "\n"

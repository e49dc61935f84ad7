"""JSON formats for coalgebras, comodules and lists of dual elements."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .coalgebra import Coalgebra
from .comodule import Comodule
from .exactlin import Field, Fp, PrimeField, parse_field
from .incidence import FinitePoset, build_incidence, parse_poset


class FormatError(ValueError):
    def __init__(self, message: str, path: str | None = None, line: int | None = None, column: int | None = None):
        self.path, self.line, self.column = path, line, column
        where = path or "<input>"
        if line is not None:
            where += f":{line}:{column}"
        super().__init__(f"{where}: {message}")


def _load_json(text: str, path: str | None):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, path, exc.lineno, exc.colno) from None


def _scalar(field: Field, raw, path):
    """Q entries are [num, den] (or a bare integer); F_p entries a single integer."""
    if isinstance(field, PrimeField):
        if isinstance(raw, list) and len(raw) == 1:
            raw = raw[0]
        if not isinstance(raw, int):
            raise FormatError(f"F_p coefficient must be an integer, got {raw!r}", path)
        return field(raw)
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, list) and len(raw) == 2 and all(isinstance(x, int) for x in raw):
        if raw[1] == 0:
            raise FormatError("zero denominator", path)
        return Fraction(raw[0], raw[1])
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except ValueError:
            pass
    raise FormatError(f"bad rational coefficient {raw!r}", path)


def _term(field: Field, entry, path, arity: int):
    """Split a term [a, b, num, den] (Q) or [a, b, k] (F_p) into labels and coefficient."""
    if not isinstance(entry, list) or len(entry) < arity + 1:
        raise FormatError(f"bad term {entry!r}", path)
    labels = entry[:arity]
    rest = entry[arity:]
    coef = _scalar(field, rest[0] if len(rest) == 1 else rest, path)
    return [str(x) for x in labels], coef


def coalgebra_from_dict(doc: dict, path: str | None = None, field: Field | None = None) -> Coalgebra:
    if not isinstance(doc, dict):
        raise FormatError("coalgebra document must be a JSON object", path)
    for key in ("basis", "delta", "counit"):
        if key not in doc:
            raise FormatError(f"missing key {key!r}", path)
    try:
        fld = field or parse_field(doc.get("field", "Q"))
    except ValueError as exc:
        raise FormatError(str(exc), path) from None
    basis = [str(x) for x in doc["basis"]]
    delta = {}
    for lab, terms in doc["delta"].items():
        delta[lab] = []
        for entry in terms:
            (a, b), coef = _term(fld, entry, path, 2)
            delta[lab].append((a, b, coef))
    counit = {lab: _scalar(fld, raw, path) for lab, raw in doc["counit"].items()}
    try:
        return Coalgebra.from_labelled(fld, basis, delta, counit)
    except ValueError as exc:
        raise FormatError(str(exc), path) from None


def load_coalgebra(path: str | Path, field: Field | None = None) -> Coalgebra:
    path = Path(path)
    return coalgebra_from_dict(_load_json(path.read_text(encoding="utf-8"), str(path)), str(path), field)


def _raw_scalar(x):
    if isinstance(x, Fp):
        return x.value
    return [x.numerator, x.denominator]


def coalgebra_to_dict(c: Coalgebra) -> dict:
    delta = {}
    for i, terms in enumerate(c.delta):
        out = []
        for (j, k), v in sorted(terms.items()):
            raw = _raw_scalar(v)
            out.append([c.labels[j], c.labels[k]] + (raw if isinstance(raw, list) else [raw]))
        delta[c.labels[i]] = out
    counit = {c.labels[i]: _raw_scalar(v) for i, v in enumerate(c.counit) if v}
    return {"field": c.field.tag, "basis": list(c.labels), "delta": delta, "counit": counit}


def comodule_from_dict(doc: dict, path: str | None = None, coalgebra: Coalgebra | None = None,
                       field: Field | None = None) -> Comodule:
    if not isinstance(doc, dict):
        raise FormatError("comodule document must be a JSON object", path)
    for key in ("side", "basis", "rho"):
        if key not in doc:
            raise FormatError(f"missing key {key!r}", path)
    if coalgebra is None:
        ref = doc.get("coalgebra")
        if ref is None:
            raise FormatError("missing key 'coalgebra'", path)
        if isinstance(ref, dict):
            coalgebra = coalgebra_from_dict(ref, path, field)
        else:
            base = Path(path).parent if path else Path(".")
            ref_path = base / ref
            if ref_path.suffix == ".poset":
                coalgebra = build_incidence(load_poset(ref_path), field or parse_field("Q"))
            else:
                coalgebra = load_coalgebra(ref_path, field)
    rho = {}
    for lab, terms in doc["rho"].items():
        rho[lab] = []
        for entry in terms:
            (m_lab, c_lab), coef = _term(coalgebra.field, entry, path, 2)
            rho[lab].append((m_lab, c_lab, coef))
    try:
        return Comodule.from_labelled(coalgebra, doc["side"], [str(x) for x in doc["basis"]], rho)
    except ValueError as exc:
        raise FormatError(str(exc), path) from None


def load_comodule(path: str | Path, coalgebra: Coalgebra | None = None, field: Field | None = None) -> Comodule:
    path = Path(path)
    return comodule_from_dict(_load_json(path.read_text(encoding="utf-8"), str(path)), str(path), coalgebra, field)


def comodule_to_dict(m: Comodule, coalgebra_ref=None) -> dict:
    rho = {}
    for i, terms in enumerate(m.rho):
        out = []
        for (j, k), v in sorted(terms.items()):
            raw = _raw_scalar(v)
            out.append([m.labels[j], m.coalgebra.labels[k]] + (raw if isinstance(raw, list) else [raw]))
        rho[m.labels[i]] = out
    return {"side": m.side,
            "coalgebra": coalgebra_ref if coalgebra_ref is not None else coalgebra_to_dict(m.coalgebra),
            "basis": list(m.labels), "rho": rho}


def load_poset(path: str | Path) -> FinitePoset:
    path = Path(path)
    return parse_poset(path.read_text(encoding="utf-8"))


def dual_elements_from_doc(c: Coalgebra, doc, path: str | None = None) -> list[tuple]:
    """A JSON list of ``{label: coefficient}`` objects, each a dual element of C."""
    if not isinstance(doc, list):
        raise FormatError("expected a JSON list of {label: coefficient} objects", path)
    out = []
    for item in doc:
        if not isinstance(item, dict):
            raise FormatError(f"bad dual element {item!r}", path)
        try:
            out.append(c.dual_element({lab: _scalar(c.field, raw, path) for lab, raw in item.items()}))
        except ValueError as exc:
            raise FormatError(str(exc), path) from None
    return out


def load_dual_elements(path: str | Path, c: Coalgebra) -> list[tuple]:
    path = Path(path)
    return dual_elements_from_doc(c, _load_json(path.read_text(encoding="utf-8"), str(path)), str(path))


def scalar_str(x) -> str:
    return str(x)


def vector_to_dict(labels, vector) -> dict:
    """Nonzero coordinates as ``{label: "p/q"}``, keys in label order."""
    return {lab: scalar_str(x) for lab, x in sorted(zip(labels, vector)) if x}

"""``coalg`` command-line front end.

Exit codes: 0 on success, 1 when a validation or verification fails (or the
input is rejected), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .coalgebra import (
    Coalgebra,
    CoalgebraError,
    coradical,
    dual_radical,
    injective_block_decomposition,
    lift_idempotent_with_count,
    validate,
)
from .comodule import (
    Comodule,
    ComoduleError,
    block_comodules,
    hom_space,
    integrals,
    socle,
    validate_comodule,
)
from .exactlin import Field, parse_field
from .formats import (
    FormatError,
    load_coalgebra,
    load_comodule,
    load_dual_elements,
    load_poset,
    vector_to_dict,
)
from .frobenius import frobenius_report, verify_integral_bounds
from .incidence import (
    FinitePoset,
    IntegralProfile,
    PosetError,
    build_incidence,
    closed_form_integral_dims,
    e_l_injective,
    e_r_injective,
    equality_order,
    semiperfect_predicates,
)

DEFAULT_MAX_DIM = 512


class CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(f"{self.prog}: error: {message}", 2)


# -- output helpers --------------------------------------------------------------


def format_table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(h) for h in headers]] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = []
    for n, r in enumerate(cells):
        lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _emit(out, args, doc: dict, text: str) -> None:
    if args.json:
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _span_labels(labels, basis) -> list[dict]:
    return [vector_to_dict(labels, v) for v in basis.vectors]


def _fmt_vec(d: dict) -> str:
    if not d:
        return "0"
    parts = []
    for lab, x in d.items():
        parts.append(lab if x == "1" else f"{x}*{lab}")
    return " + ".join(parts)


# -- input resolution ---------------------------------------------------------------


def _max_dim() -> int:
    raw = os.environ.get("COALG_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"COALG_MAX_DIM must be an integer, got {raw!r}", 2) from None


def _check_size(*dims: int) -> None:
    cap = _max_dim()
    for d in dims:
        if d > cap:
            raise CliError(f"problem size {d} exceeds COALG_MAX_DIM={cap}")


def _field(args) -> Field | None:
    if getattr(args, "field", None) is None:
        return None
    try:
        return parse_field(args.field)
    except ValueError as exc:
        raise CliError(str(exc), 2) from None


def _is_poset_file(path: str) -> bool:
    if path.endswith(".poset"):
        return True
    text = Path(path).read_text(encoding="utf-8").lstrip()
    return not text.startswith("{")


def _resolve(args) -> tuple[Coalgebra, FinitePoset | None]:
    """Coalgebra from --coalgebra, --poset or the positional input."""
    field = _field(args)
    poset_path = getattr(args, "poset", None)
    coalg_path = getattr(args, "coalgebra", None)
    pos = getattr(args, "input", None)
    if pos is not None:
        if not Path(pos).exists():
            raise CliError(f"file not found: {pos}")
        if _is_poset_file(pos):
            poset_path = poset_path or pos
        else:
            coalg_path = coalg_path or pos
    for p in (poset_path, coalg_path):
        if p is not None and not Path(p).exists():
            raise CliError(f"file not found: {p}")
    if poset_path is not None:
        poset = load_poset(poset_path)
        _check_size(len(poset.pairs()))
        return build_incidence(poset, field or parse_field("Q")), poset
    if coalg_path is not None:
        c = load_coalgebra(coalg_path, field)
        _check_size(c.dim)
        return c, None
    raise CliError("no input: give a path, --coalgebra or --poset", 2)


def _comodules(args, c: Coalgebra | None) -> list[Comodule]:
    out = []
    for p in args.comodule or []:
        if not Path(p).exists():
            raise CliError(f"file not found: {p}")
        m = load_comodule(p, c, _field(args))
        _check_size(m.dim)
        out.append(m)
    return out


def _idempotents(args, c: Coalgebra):
    if getattr(args, "idempotents", None) is None:
        return None
    if not Path(args.idempotents).exists():
        raise CliError(f"file not found: {args.idempotents}")
    return load_dual_elements(args.idempotents, c)


# -- verbs ------------------------------------------------------------------------------


def cmd_check(args, out) -> int:
    c, _ = _resolve(args)
    reports = [("coalgebra", validate(c))]
    for i, m in enumerate(_comodules(args, c)):
        reports.append((f"comodule[{i}] ({m.side})", validate_comodule(m)))
    ok = all(r.passed for _, r in reports)
    rows = []
    for name, r in reports:
        for chk in r.checks:
            rows.append([name, chk.name, "pass" if chk.passed else "FAIL", chk.witness or "-"])
    doc = {"passed": ok, "reports": {name: r.to_dict() for name, r in reports}}
    _emit(out, args, doc, format_table(["object", "axiom", "result", "first violation"], rows)
          + f"\n\n{'all axioms hold' if ok else 'axiom failure'}")
    return 0 if ok else 1


def _require_valid(c: Coalgebra) -> None:
    rep = validate(c)
    if not rep.passed:
        bad = next(ch for ch in rep.checks if not ch.passed)
        raise CliError(f"coalgebra fails {bad.name} at {bad.witness}")


def cmd_coradical(args, out) -> int:
    c, _ = _resolve(args)
    _require_valid(c)
    J = dual_radical(c)
    C0 = coradical(c)
    dual_labels = [f"{lab}*" for lab in c.labels]
    doc = {
        "dim": c.dim,
        "dual_radical": {"dim": J.dim, "nilpotency_index": J.nilpotency_index,
                         "basis": _span_labels(dual_labels, J.basis)},
        "coradical": {"dim": C0.dim, "basis": _span_labels(c.labels, C0.basis)},
    }
    lines = [f"dim C = {c.dim}",
             f"dim Rad(C*) = {J.dim} (nilpotency index {J.nilpotency_index})",
             f"dim C0 = {C0.dim}", "", "Rad(C*) basis:"]
    lines += ["  " + _fmt_vec(v) for v in doc["dual_radical"]["basis"]] or ["  (zero)"]
    lines += ["", "C0 basis:"] + ["  " + _fmt_vec(v) for v in doc["coradical"]["basis"]]
    _emit(out, args, doc, "\n".join(lines))
    return 0


def _matrix_doc(mat) -> list[list[str]]:
    return [[str(x) for x in row] for row in mat.to_rows()]


def cmd_hom(args, out) -> int:
    mods = _comodules(args, None)
    if len(mods) != 2:
        raise CliError("hom needs exactly two --comodule arguments", 2)
    m, n = mods
    if m.coalgebra != n.coalgebra:
        raise CliError("comodules are over different coalgebras")
    if m.side != n.side:
        raise CliError(f"side mismatch: {m.side} vs {n.side}")
    h = hom_space(m, n)
    doc = {"side": m.side, "dim_source": m.dim, "dim_target": n.dim, "dim_hom": h.dim,
           "basis": [_matrix_doc(b) for b in h.basis]}
    lines = [f"dim Hom = {h.dim}  ({m.side} comodules, {m.dim} -> {n.dim})"]
    for i, b in enumerate(h.basis):
        lines.append(f"basis[{i}]:")
        lines += ["  " + " ".join(r) for r in _matrix_doc(b)]
    _emit(out, args, doc, "\n".join(lines))
    return 0


def cmd_integrals(args, out) -> int:
    c, _ = _resolve(args)
    mods = _comodules(args, c)
    if not mods:
        raise CliError("integrals needs at least one --comodule", 2)
    rows, items = [], []
    for i, m in enumerate(mods):
        if args.side and m.side != args.side:
            raise CliError(f"comodule[{i}] is a {m.side} comodule, --side says {args.side}")
        d = integrals(c, m).dim
        rows.append([i, m.side, m.dim, d])
        items.append({"index": i, "side": m.side, "dim": m.dim, "dim_integrals": d})
    _emit(out, args, {"comodules": items}, format_table(["#", "side", "dim M", "dim integrals"], rows))
    return 0


def cmd_incidence(args, out) -> int:
    c, poset = _resolve(args)
    if poset is None:
        raise CliError("incidence needs a poset (--poset)", 2)
    sides = {"right": ["right"], "left": ["left"], "both": ["right", "left"]}[args.integrals]
    us = list(poset.elements)
    if args.u:
        for u in args.u:
            if u not in us:
                raise CliError(f"unknown element {u!r}")
        us = args.u
    elif not args.all_u:
        raise CliError("choose --all-u or --u", 2)
    rows, items = [], []
    ok = True
    for side in sides:
        for u in us:
            prof = IntegralProfile.of(poset, u)
            if side == "right":
                m = e_r_injective(poset, u, coalgebra=c)
                closed_m, closed_int = closed_form_integral_dims(prof)
            else:
                # mirror through the opposite poset: E_l(S_u) has dim |u⁻| and |u⁺| integrals
                m = e_l_injective(poset, u, coalgebra=c)
                closed_int, closed_m = closed_form_integral_dims(prof)
            d = integrals(c, m).dim
            agree = m.dim == closed_m.value and d == closed_int.value
            ok &= agree
            rows.append([side, u, len(poset.up(u)), len(poset.down(u)), m.dim, d, "yes" if agree else "NO"])
            items.append({"side": side, "u": u, "u_plus": len(poset.up(u)), "u_minus": len(poset.down(u)),
                          "dim_M": m.dim, "dim_integrals": d, "closed_form_agrees": agree})
    sp = semiperfect_predicates(poset)
    doc = {"dim_C": c.dim, "rows": items, "equality_order": equality_order(poset),
           "right_semiperfect": sp.right, "left_semiperfect": sp.left}
    text = format_table(["side", "u", "|u+|", "|u-|", "dim M", "dim integrals", "closed form"], rows)
    text += (f"\n\nM = E_r(S_u) for side right, E_l(S_u) for side left"
             f"\norder is equality (co-Frobenius criterion): {str(equality_order(poset)).lower()}")
    _emit(out, args, doc, text)
    return 0 if ok else 1


def cmd_cofrobenius(args, out) -> int:
    c, poset = _resolve(args)
    _require_valid(c)
    rep = frobenius_report(c)
    doc = rep.to_dict()
    doc["dim_C"] = c.dim
    lines = [f"dim C = {c.dim}",
             f"right co-Frobenius: {str(rep.right.holds).lower()} "
             f"(dim Hom = {rep.right.hom_dim}, max rank {rep.right.max_rank})",
             f"left co-Frobenius: {str(rep.left.holds).lower()} "
             f"(dim Hom = {rep.left.hom_dim}, max rank {rep.left.max_rank})"]
    if rep.coradical_dim is not None:
        lines.append(f"coradical dim = {rep.coradical_dim} (finite, so C* is semiperfect)")
    if poset is not None:
        eq = equality_order(poset)
        doc["equality_order"] = eq
        lines.append(f"order is equality: {str(eq).lower()}")
    _emit(out, args, doc, "\n".join(lines))
    return 0


def _default_theorem_comodules(c: Coalgebra, idem) -> tuple[list, list, dict]:
    left = block_comodules(c, "left", idem)
    right = block_comodules(c, "right", idem)
    names = {}
    lmods, rmods = [], []
    for side, blocks, acc in (("left", left, lmods), ("right", right, rmods)):
        for i, b in enumerate(blocks):
            acc.append(b)
            names[id(b)] = f"E_{side[0]}[{i}]"
            s = b.subcomodule(socle(b))
            if s.dim != b.dim:
                acc.append(s)
                names[id(s)] = f"soc E_{side[0]}[{i}]"
    return lmods, rmods, names


def cmd_verify_theorem(args, out) -> int:
    c, _ = _resolve(args)
    _require_valid(c)
    idem = _idempotents(args, c)
    mods = _comodules(args, c)
    if mods:
        lmods = [m for m in mods if m.side == "left"]
        rmods = [m for m in mods if m.side == "right"]
        names = {id(m): f"{m.side}:{p}" for m, p in zip(mods, args.comodule)}
    else:
        lmods, rmods, names = _default_theorem_comodules(c, idem)
    table = verify_integral_bounds(c, lmods, rmods, names)
    rows = [[r.side, r.name, r.dim_module, r.dim_integrals, r.verdict] for r in table.rows]
    text = ""
    if table.banner:
        text += table.banner + "\n\n"
    text += (f"right co-Frobenius: {str(table.right_co_frobenius).lower()}, "
             f"left co-Frobenius: {str(table.left_co_frobenius).lower()}\n\n")
    text += format_table(["side", "comodule", "dim", "dim integrals", "verdict"], rows)
    text += f"\n\n{'PASS' if table.passed else 'FAIL'}"
    _emit(out, args, table.to_dict(), text)
    return 0 if table.passed else 1


def cmd_lift_idempotent(args, out) -> int:
    c, _ = _resolve(args)
    _require_valid(c)
    if args.idempotents is None:
        raise CliError("lift-idempotent needs --idempotents <path>", 2)
    xs = _idempotents(args, c)
    dual_labels = [f"{lab}*" for lab in c.labels]
    items, lines = [], []
    for i, x in enumerate(xs):
        res = lift_idempotent_with_count(c, x)
        d = vector_to_dict(dual_labels, res.idempotent)
        items.append({"input": vector_to_dict(dual_labels, x), "idempotent": d, "iterations": res.iterations})
        lines.append(f"[{i}] {_fmt_vec(vector_to_dict(dual_labels, x))}  ->  {_fmt_vec(d)}"
                     f"  (iterations: {res.iterations})")
    _emit(out, args, {"lifts": items}, "\n".join(lines))
    return 0


def cmd_blocks(args, out) -> int:
    c, _ = _resolve(args)
    dec = injective_block_decomposition(c, _idempotents(args, c))
    dual_labels = [f"{lab}*" for lab in c.labels]
    items, rows = [], []
    for i, b in enumerate(dec.blocks):
        r = [_fmt_vec(v) for v in _span_labels(c.labels, b.right)]
        lft = [_fmt_vec(v) for v in _span_labels(c.labels, b.left)]
        items.append({"idempotent": vector_to_dict(dual_labels, b.idempotent), "right": r, "left": lft})
        rows.append([i, _fmt_vec(vector_to_dict(dual_labels, b.idempotent)), ", ".join(r), ", ".join(lft)])
    _emit(out, args, {"blocks": items}, format_table(["#", "idempotent", "C <- e (right)", "e -> C (left)"], rows))
    return 0


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coalg", description="Exact computations with finite-dimensional coalgebras.")
    sub = parser.add_subparsers(dest="verb", parser_class=_Parser, required=True)

    def common(p, positional=True):
        if positional:
            p.add_argument("input", nargs="?", help="coalgebra JSON or poset file")
        p.add_argument("--field", help="Q or Fp:<prime> (default: from file, else Q)")
        p.add_argument("--poset")
        p.add_argument("--coalgebra")
        p.add_argument("--json", action="store_true", help="emit JSON instead of a text table")
        p.add_argument("--seed", type=int, help="reserved for randomized fallbacks (none are used by default)")
        return p

    p = common(sub.add_parser("check", help="validate coalgebra and comodule axioms"))
    p.add_argument("--comodule", action="append")
    p.set_defaults(func=cmd_check)

    p = common(sub.add_parser("coradical", help="dual radical and coradical"))
    p.set_defaults(func=cmd_coradical)

    p = common(sub.add_parser("hom", help="comodule morphisms between two comodules"), positional=False)
    p.add_argument("--comodule", action="append")
    p.set_defaults(func=cmd_hom)

    p = common(sub.add_parser("integrals", help="dimension of the space of integrals"))
    p.add_argument("--comodule", action="append")
    p.add_argument("--side", choices=["left", "right"])
    p.set_defaults(func=cmd_integrals)

    p = common(sub.add_parser("incidence", help="closed forms vs solver on an incidence coalgebra"))
    p.add_argument("--integrals", choices=["right", "left", "both"], default="right")
    p.add_argument("--all-u", action="store_true")
    p.add_argument("--u", action="append")
    p.set_defaults(func=cmd_incidence)

    p = common(sub.add_parser("cofrobenius", help="left/right co-Frobenius test"))
    p.set_defaults(func=cmd_cofrobenius)

    p = common(sub.add_parser("verify-theorem", help="integral dimension bounds"))
    p.add_argument("--comodule", action="append")
    p.add_argument("--idempotents")
    p.set_defaults(func=cmd_verify_theorem)

    p = common(sub.add_parser("lift-idempotent", help="lift idempotents modulo Rad(C*)"))
    p.add_argument("--idempotents")
    p.set_defaults(func=cmd_lift_idempotent)

    p = common(sub.add_parser("blocks", help="injective block decomposition of C"))
    p.add_argument("--idempotents")
    p.set_defaults(func=cmd_blocks)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except CliError as exc:
        err.write(f"{exc}\n")
        return exc.code
    except (FormatError, PosetError, CoalgebraError, ComoduleError, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Co-Frobenius diagnostics and the integral-dimension verification harness."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .coalgebra import Coalgebra, coradical, dual_radical
from .comodule import (
    Comodule,
    TopReport,
    block_comodules,
    find_full_rank,
    injective_envelope,
    integrals,
    intertwiners,
    radical_and_top,
)
from .exactlin import Matrix, SubspaceBasis, kernel_basis


class HypothesisError(ValueError):
    """The coalgebra does not satisfy a hypothesis the operation relies on."""


@dataclass(frozen=True)
class EmbeddingCheck:
    """Result of searching Hom(C, C*) for an injective module map."""

    holds: bool
    witness: Matrix | None
    hom_dim: int
    max_rank: int

    def to_dict(self) -> dict:
        return {"holds": self.holds, "hom_dim": self.hom_dim, "max_rank": self.max_rank,
                "witness": None if self.witness is None else [[str(x) for x in r] for r in self.witness.to_rows()]}


@dataclass(frozen=True)
class FrobeniusReport:
    right: EmbeddingCheck
    left: EmbeddingCheck
    coradical_dim: int | None

    def to_dict(self) -> dict:
        return {"right_co_frobenius": self.right.to_dict(), "left_co_frobenius": self.left.to_dict(),
                "coradical_dim": self.coradical_dim}


def _regular_actions(c: Coalgebra, side: str) -> tuple[list[Matrix], list[Matrix]]:
    """(actions on C, actions on C*) for the module structure used by the co-Frobenius test.

    ``side='right'``: C as right C*-module (c ↼ f) and C* acting on itself by
    right multiplication; ``side='left'``: the mirror image.
    """
    duals = [c.dual_basis(k) for k in range(c.dim)]
    if side == "right":
        return [c.hit_left_matrix(f) for f in duals], [c.right_mult_matrix(f) for f in duals]
    return [c.hit_matrix(f) for f in duals], [c.left_mult_matrix(f) for f in duals]


def embedding_check(c: Coalgebra, side: str) -> EmbeddingCheck:
    src, tgt = _regular_actions(c, side)
    hom = intertwiners(src, tgt, c.dim, c.dim, c.field)
    if c.dim == 0:
        return EmbeddingCheck(True, Matrix(c.field, 0, 0), 0, 0)
    hit = find_full_rank(hom, c.field, c.dim)
    return EmbeddingCheck(hit.found is not None, hit.found, len(hom), hit.max_rank)


def is_right_co_frobenius(c: Coalgebra) -> EmbeddingCheck:
    """Does C embed in C* as a right C*-module?"""
    return embedding_check(c, "right")


def is_left_co_frobenius(c: Coalgebra) -> EmbeddingCheck:
    return embedding_check(c, "left")


def frobenius_report(c: Coalgebra) -> FrobeniusReport:
    c0 = coradical(c).dim if c.field.characteristic == 0 else None
    return FrobeniusReport(is_right_co_frobenius(c), is_left_co_frobenius(c), c0)


def witness_is_valid(c: Coalgebra, w: Matrix, side: str = "right") -> bool:
    """Full column rank plus the module-map identity on basis duals."""
    if w.rank() != c.dim:
        return False
    src, tgt = _regular_actions(c, side)
    return all(w @ s == t @ w for s, t in zip(src, tgt))


# -- φ-matching ----------------------------------------------------------------


@dataclass(frozen=True)
class PhiMatching:
    """Pairs (left block i, right block j) with E(S_i) ≅ E(T_j)* as right C*-modules."""

    pairs: tuple[tuple[int, int, Matrix], ...]
    left_dims: tuple[int, ...] = dc_field(default_factory=tuple)
    right_dims: tuple[int, ...] = dc_field(default_factory=tuple)

    @property
    def mapping(self) -> dict[int, int]:
        return {i: j for i, j, _ in self.pairs}

    @property
    def injective(self) -> bool:
        js = [j for _, j, _ in self.pairs]
        return len(js) == len(set(js))

    @property
    def complete(self) -> bool:
        return len(self.pairs) == len(self.left_dims)

    @property
    def summand_dims_ok(self) -> bool:
        """Matched right blocks have the same total dimension as C (the finite check of the summand claim)."""
        return sum(self.right_dims[j] for j in self.mapping.values()) == sum(self.left_dims)


def _dual_actions(m: Comodule) -> list[Matrix]:
    """Right C*-action on the dual of a right comodule: (g·f)(w) = g(f ⇀ w)."""
    return [a.T for a in m.basis_actions()]


def _match(options: dict[int, list[int]], n_left: int) -> dict[int, int]:
    owner: dict[int, int] = {}

    def augment(i: int, seen: set) -> bool:
        for j in options.get(i, []):
            if j in seen:
                continue
            seen.add(j)
            if j not in owner or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    for i in range(n_left):
        augment(i, set())
    return {i: j for j, i in owner.items()}


def phi_matching(c: Coalgebra, idempotents=None, force: bool = False) -> PhiMatching:
    """Match each left injective block with the dual of a right one."""
    if not force and not is_right_co_frobenius(c).holds:
        raise HypothesisError("coalgebra is not right co-Frobenius")
    left = block_comodules(c, "left", idempotents)
    right = block_comodules(c, "right", idempotents)
    witnesses: dict[tuple[int, int], Matrix] = {}
    options: dict[int, list[int]] = {}
    for i, L in enumerate(left):
        src = L.basis_actions()
        for j, R in enumerate(right):
            if R.dim != L.dim:
                continue
            hom = intertwiners(src, _dual_actions(R), L.dim, R.dim, c.field)
            hit = find_full_rank(hom, c.field, L.dim)
            if hit.found is not None:
                witnesses[(i, j)] = hit.found
                options.setdefault(i, []).append(j)
    match = _match(options, len(left))
    pairs = tuple((i, match[i], witnesses[(i, match[i])]) for i in sorted(match))
    return PhiMatching(pairs, tuple(L.dim for L in left), tuple(R.dim for R in right))


# -- unique maximal subcomodules --------------------------------------------------------


@dataclass(frozen=True)
class UniqueMaximalReport:
    hypothesis_holds: bool
    tops: tuple[TopReport, ...]

    @property
    def passed(self) -> bool:
        return all(t.top_simple for t in self.tops)


def unique_maximal_in_left_injectives(c: Coalgebra, idempotents=None, force: bool = False) -> UniqueMaximalReport:
    hyp = is_right_co_frobenius(c).holds
    if not hyp and not force:
        raise HypothesisError("coalgebra is not right co-Frobenius; use force=True for a diagnostic run")
    tops = tuple(radical_and_top(b) for b in block_comodules(c, "left", idempotents))
    return UniqueMaximalReport(hyp, tops)


# -- integral bounds ---------------------------------------------------------------


@dataclass(frozen=True)
class BoundRow:
    side: str
    name: str
    dim_module: int
    dim_integrals: int
    inequality: bool
    equality: bool
    asserted: str | None  # None, "inequality" or "equality"

    @property
    def passed(self) -> bool:
        if self.asserted == "equality":
            return self.equality
        if self.asserted == "inequality":
            return self.inequality
        return True

    @property
    def verdict(self) -> str:
        rel = "<=" if self.side == "left" else ">="
        if self.asserted is None:
            held = "holds" if self.inequality else "fails"
            return f"integrals {rel} dim {held}; hypothesis fails, no claim"
        if self.asserted == "equality":
            return "equality" if self.equality else "FAIL: equality expected"
        return ("equality" if self.equality else f"integrals {rel} dim") if self.inequality else "FAIL"


@dataclass(frozen=True)
class IntegralBoundsTable:
    right_co_frobenius: bool
    left_co_frobenius: bool
    rows: tuple[BoundRow, ...]

    @property
    def banner(self) -> str | None:
        if not self.right_co_frobenius:
            return "hypothesis not satisfied: coalgebra is not right co-Frobenius"
        return None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "right_co_frobenius": self.right_co_frobenius,
            "left_co_frobenius": self.left_co_frobenius,
            "banner": self.banner,
            "passed": self.passed,
            "rows": [{"side": r.side, "comodule": r.name, "dim": r.dim_module, "dim_integrals": r.dim_integrals,
                      "verdict": r.verdict} for r in self.rows],
        }


def verify_integral_bounds(c: Coalgebra, left_comodules: Sequence = (), right_comodules: Sequence = (),
                           names: dict | None = None) -> IntegralBoundsTable:
    """Tabulate dim ∫ against dim M for left and right comodules.

    Over a right co-Frobenius C, left integrals satisfy dim ∫ ≤ dim M and
    right integrals dim N ≤ dim ∫; if C is co-Frobenius on both sides both
    become equalities.  Without the hypothesis the rows are still computed
    but nothing is asserted.
    """
    right_cf = is_right_co_frobenius(c).holds
    left_cf = is_left_co_frobenius(c).holds
    names = names or {}
    rows = []
    for side, mods in (("left", left_comodules), ("right", right_comodules)):
        for idx, m in enumerate(mods):
            if m.side != side:
                raise ValueError(f"expected a {side} comodule, got a {m.side} one")
            d = integrals(c, m).dim
            ineq = d <= m.dim if side == "left" else m.dim <= d
            asserted = None
            if right_cf:
                asserted = "equality" if left_cf else "inequality"
            rows.append(BoundRow(side, names.get(id(m), f"{side}[{idx}]"), m.dim, d, ineq, d == m.dim, asserted))
    return IntegralBoundsTable(right_cf, left_cf, tuple(rows))


# -- projective covers of duals ------------------------------------------------------


@dataclass(frozen=True)
class ProjectiveCoverReport:
    envelope_dim: int
    kernel_dim: int
    radical_dim: int
    module_map: bool
    surjective: bool
    superfluous: bool

    @property
    def passed(self) -> bool:
        return self.module_map and self.surjective and self.superfluous


def dual_projective_cover_check(c: Coalgebra, m: Comodule, idempotents=None) -> ProjectiveCoverReport:
    """Check that E(m)* → m* (dual of the envelope embedding) has a superfluous kernel.

    Finite-dimensional criterion: the kernel must lie in E(m)*·Rad(C*).
    """
    env = injective_envelope(m, idempotents)
    E = env.target
    iota = env.embedding.matrix
    kernel = kernel_basis(iota.T)
    J = dual_radical(c)
    rad_vecs = []
    for j in J.vectors:
        a = E.action_matrix(j)
        rad_vecs.extend(a.row(r) for r in range(a.nrows))
    rad = SubspaceBasis(c.field, E.dim, rad_vecs)
    module_map = all(E.action_matrix(c.dual_basis(k)) @ iota == iota @ m.action_matrix(c.dual_basis(k))
                     for k in range(c.dim))
    return ProjectiveCoverReport(E.dim, kernel.dim, rad.dim, module_map, iota.rank() == m.dim,
                                 kernel.issubspace(rad))

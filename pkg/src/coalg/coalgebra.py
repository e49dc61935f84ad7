"""Finite-dimensional coalgebras and their convolution dual algebras.

A coalgebra is stored by its structure constants: ``delta[i]`` maps
``(j, k)`` to the coefficient of ``c_j ⊗ c_k`` in the comultiplication of
basis element ``c_i``.  Elements of the dual algebra C* are plain tuples of
field elements indexed by the basis (coordinates in the dual basis).

Action conventions used throughout the package:

* a right comodule is a left C*-module, ``f ⇀ m = Σ m₀ f(m₁)``;
* a left comodule is a right C*-module, ``m ↼ f = Σ f(m₋₁) m₀``;
* on C itself, ``f ⇀ c = Σ c₁ f(c₂)`` and ``c ↼ f = Σ f(c₁) c₂``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .exactlin import (
    Echelon,
    Field,
    Matrix,
    QQ,
    ShapeError,
    SubspaceBasis,
    vec_add,
    vec_scale,
    vec_sub,
)


class CoalgebraError(ValueError):
    pass


class UnsupportedFieldError(CoalgebraError):
    """Radical computations use the trace form and need characteristic zero."""


class NotAlmostIdempotentError(CoalgebraError):
    pass


class IdempotentDataError(CoalgebraError):
    """Bad or missing resolving idempotents for a block decomposition."""


DualElement = tuple


class Coalgebra:
    """A coalgebra with a finite basis, given by structure constants.

    Args:
        field: scalar field.
        labels: basis labels, in basis order.
        delta: per basis index, a mapping ``(j, k) -> coefficient``.
        counit: the counit as a vector over the basis.
    """

    def __init__(self, field: Field, labels: Sequence[str], delta: Sequence[Mapping], counit: Sequence):
        labels = [str(x) for x in labels]
        if len(set(labels)) != len(labels):
            raise CoalgebraError("duplicate basis labels")
        n = len(labels)
        if len(delta) != n or len(counit) != n:
            raise ShapeError("delta and counit must have one entry per basis element")
        self.field = field
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(labels)}
        dl = []
        for terms in delta:
            t = {}
            for (j, k), v in terms.items():
                if not (0 <= j < n and 0 <= k < n):
                    raise ShapeError(f"tensor index {(j, k)} out of range")
                v = field(v)
                if v:
                    t[(j, k)] = v
            dl.append(t)
        self.delta = tuple(dl)
        self.counit = tuple(field(v) for v in counit)
        self._cache: dict = {}

    @classmethod
    def from_labelled(cls, field: Field, labels: Sequence[str], delta: Mapping[str, Sequence],
                      counit: Mapping[str, object]) -> "Coalgebra":
        """Build from ``delta[label] = [(left, right, coef), ...]`` and ``counit[label] = coef``."""
        index = {lab: i for i, lab in enumerate(labels)}
        dl = [dict() for _ in labels]
        for lab, terms in delta.items():
            if lab not in index:
                raise CoalgebraError(f"unknown basis label {lab!r} in delta")
            acc = dl[index[lab]]
            for a, b, coef in terms:
                for x in (a, b):
                    if x not in index:
                        raise CoalgebraError(f"unknown basis label {x!r} in delta of {lab!r}")
                key = (index[a], index[b])
                acc[key] = acc.get(key, field.zero) + field(coef)
        eps = [field.zero] * len(labels)
        for lab, coef in counit.items():
            if lab not in index:
                raise CoalgebraError(f"unknown basis label {lab!r} in counit")
            eps[index[lab]] = field(coef)
        return cls(field, labels, dl, eps)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise CoalgebraError(f"unknown basis label {label!r}") from None

    def __eq__(self, other):
        if not isinstance(other, Coalgebra):
            return NotImplemented
        return (self is other or (self.field == other.field and self.labels == other.labels
                                  and self.delta == other.delta and self.counit == other.counit))

    def __hash__(self):
        return hash((self.field, self.labels))

    def __repr__(self):
        return f"Coalgebra<{self.field.tag} dim {self.dim}>"

    # -- dual elements ------------------------------------------------

    def dual_basis(self, label_or_index) -> DualElement:
        i = label_or_index if isinstance(label_or_index, int) else self.index(label_or_index)
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return tuple(v)

    def dual_element(self, values: Mapping[str, object]) -> DualElement:
        v = [self.field.zero] * self.dim
        for lab, x in values.items():
            v[self.index(lab)] = self.field(x)
        return tuple(v)

    def zero_dual(self) -> DualElement:
        return (self.field.zero,) * self.dim

    def _check_dual(self, f: Sequence) -> None:
        if len(f) != self.dim:
            raise ShapeError(f"dual element of length {len(f)} for coalgebra of dimension {self.dim}")

    # -- matrices of the algebra and the actions -----------------------

    def left_mult_matrix(self, f: Sequence) -> Matrix:
        """Matrix of ``g ↦ f*g`` on C* in dual-basis coordinates."""
        self._check_dual(f)
        rows = [dict() for _ in range(self.dim)]
        for i, terms in enumerate(self.delta):
            row = rows[i]
            for (j, k), mu in terms.items():
                if f[j]:
                    row[k] = row.get(k, self.field.zero) + mu * f[j]
        return Matrix(self.field, self.dim, self.dim, rows)

    def right_mult_matrix(self, f: Sequence) -> Matrix:
        """Matrix of ``g ↦ g*f`` on C*."""
        self._check_dual(f)
        rows = [dict() for _ in range(self.dim)]
        for i, terms in enumerate(self.delta):
            row = rows[i]
            for (j, k), mu in terms.items():
                if f[k]:
                    row[j] = row.get(j, self.field.zero) + mu * f[k]
        return Matrix(self.field, self.dim, self.dim, rows)

    def hit_matrix(self, f: Sequence) -> Matrix:
        """Matrix of ``c ↦ f ⇀ c = Σ c₁ f(c₂)`` on C (right comodule C as left C*-module)."""
        return self.right_mult_matrix(f).T

    def hit_left_matrix(self, f: Sequence) -> Matrix:
        """Matrix of ``c ↦ c ↼ f = Σ f(c₁) c₂`` on C (left comodule C as right C*-module)."""
        return self.left_mult_matrix(f).T

    def comultiply(self, vector: Sequence) -> dict:
        """Δ of an element of C, as a sparse ``{(j, k): coef}`` dict."""
        out: dict = {}
        for i, x in enumerate(vector):
            if not x:
                continue
            for key, mu in self.delta[i].items():
                out[key] = out.get(key, self.field.zero) + x * mu
        return {k: v for k, v in out.items() if v}

    def grouplike_labels(self) -> list[str]:
        one = self.field.one
        return [lab for i, lab in enumerate(self.labels)
                if self.delta[i] == {(i, i): one} and self.counit[i] == one]


# -- axioms -------------------------------------------------------------


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    witness: str | None = None


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"passed": self.passed,
                "checks": [{"axiom": c.name, "passed": c.passed, "witness": c.witness} for c in self.checks]}


def validate(c: Coalgebra) -> AxiomReport:
    """Check coassociativity and both counit laws on every basis element."""
    F = c.field
    zero = F.zero
    coassoc = left_counit = right_counit = None
    for i, terms in enumerate(c.delta):
        if coassoc is None:
            lhs: dict = {}
            rhs: dict = {}
            for (j, k), mu in terms.items():
                # (Δ ⊗ id)Δ
                for (a, b), nu in c.delta[j].items():
                    key = (a, b, k)
                    lhs[key] = lhs.get(key, zero) + mu * nu
                # (id ⊗ Δ)Δ
                for (a, b), nu in c.delta[k].items():
                    key = (j, a, b)
                    rhs[key] = rhs.get(key, zero) + mu * nu
            if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                coassoc = c.labels[i]
        left = [zero] * c.dim
        right = [zero] * c.dim
        for (j, k), mu in terms.items():
            left[k] = left[k] + c.counit[j] * mu
            right[j] = right[j] + mu * c.counit[k]
        unit = c.dual_basis(i)
        if left_counit is None and tuple(left) != unit:
            left_counit = c.labels[i]
        if right_counit is None and tuple(right) != unit:
            right_counit = c.labels[i]
    return AxiomReport((
        AxiomCheck("coassociativity", coassoc is None, coassoc),
        AxiomCheck("left counit", left_counit is None, left_counit),
        AxiomCheck("right counit", right_counit is None, right_counit),
    ))


# -- convolution algebra -------------------------------------------------


def convolve(c: Coalgebra, f: Sequence, g: Sequence) -> DualElement:
    """Convolution product ``(f*g)(c_i) = Σ μ[i][j,k] f(c_j) g(c_k)``."""
    c._check_dual(f)
    c._check_dual(g)
    zero = c.field.zero
    out = []
    for terms in c.delta:
        s = zero
        for (j, k), mu in terms.items():
            if f[j] and g[k]:
                s = s + mu * f[j] * g[k]
        out.append(s)
    return tuple(out)


def _span_products(c: Coalgebra, left: Sequence[Sequence], right: Sequence[Sequence]) -> SubspaceBasis:
    return SubspaceBasis(c.field, c.dim, [convolve(c, a, b) for a in left for b in right])


@dataclass(frozen=True)
class Subobject:
    """A subspace of C (``kind='subcoalgebra'``) or of C* (``kind='ideal'``)."""

    basis: SubspaceBasis
    kind: str
    nilpotency_index: int | None = None

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def vectors(self) -> tuple:
        return self.basis.vectors


def _require_char_zero(c: Coalgebra, what: str) -> None:
    if c.field.characteristic != 0:
        raise UnsupportedFieldError(f"{what} needs characteristic 0 (trace-form method); got {c.field.tag}")


def trace_form(c: Coalgebra) -> Matrix:
    """Gram matrix of ``(x, y) ↦ tr(left multiplication by x*y)`` on the dual basis."""
    F = c.field
    n = c.dim
    # trace of left multiplication by the i-th dual basis vector
    tr = [F.zero] * n
    for k, terms in enumerate(c.delta):
        for (j, kk), mu in terms.items():
            if kk == k:
                tr[j] = tr[j] + mu
    rows = [dict() for _ in range(n)]
    for i, terms in enumerate(c.delta):
        if not tr[i]:
            continue
        for (a, b), mu in terms.items():
            rows[a][b] = rows[a].get(b, F.zero) + mu * tr[i]
    return Matrix(F, n, n, rows)


def dual_radical(c: Coalgebra) -> Subobject:
    """Jacobson radical of C*, as the radical of the trace form.

    The result is checked to be a nilpotent ideal; its nilpotency index is
    recorded on the returned object.
    """
    _require_char_zero(c, "dual_radical")
    if "radical" in c._cache:
        return c._cache["radical"]
    from .exactlin import kernel_basis

    J = kernel_basis(trace_form(c))
    power = J
    index = 1
    while power.dim:
        if index > c.dim + 1:
            raise CoalgebraError("trace-form radical failed to be nilpotent")
        power = _span_products(c, power.vectors, J.vectors)
        index += 1
    result = Subobject(J, "ideal", nilpotency_index=index)
    c._cache["radical"] = result
    return result


def coradical(c: Coalgebra) -> Subobject:
    """C₀ as the annihilator in C of the dual radical."""
    J = dual_radical(c)
    C0 = J.basis.annihilator()
    for j in J.vectors:
        hit = c.hit_matrix(j)
        hit_left = c.hit_left_matrix(j)
        for v in C0.vectors:
            if any(hit.apply(v)) or any(hit_left.apply(v)):
                raise CoalgebraError("annihilator of the radical is not a subcoalgebra")
    return Subobject(C0, "subcoalgebra")


def in_radical(c: Coalgebra, f: Sequence) -> bool:
    return dual_radical(c).basis.contains(f)


# -- idempotents -----------------------------------------------------------


@dataclass(frozen=True)
class IdempotentLift:
    idempotent: DualElement
    iterations: int


def lift_idempotent_with_count(c: Coalgebra, x: Sequence) -> IdempotentLift:
    """Lift ``x`` (idempotent modulo the radical) to an exact idempotent.

    Iterates ``y ← 3y² − 2y³``; each step squares the defect ``y² − y``
    in the radical filtration, so the loop ends after at most
    ``⌈log₂ N⌉`` steps where N is the nilpotency index of the radical.
    """
    x = tuple(c.field(v) for v in x)
    c._check_dual(x)
    J = dual_radical(c)
    if not J.basis.contains(vec_sub(convolve(c, x, x), x)):
        raise NotAlmostIdempotentError("x*x - x is not in the radical of C*")
    bound = max(1, math.ceil(math.log2(J.nilpotency_index))) if J.nilpotency_index else 1
    y = x
    steps = 0
    while True:
        y2 = convolve(c, y, y)
        if y2 == y:
            return IdempotentLift(y, steps)
        if steps > bound:
            raise CoalgebraError("idempotent lifting did not stabilise")
        y3 = convolve(c, y2, y)
        y = vec_sub(vec_scale(c.field(3), y2), vec_scale(c.field(2), y3))
        steps += 1


def lift_idempotent(c: Coalgebra, x: Sequence) -> DualElement:
    return lift_idempotent_with_count(c, x).idempotent


def lift_orthogonal_family(c: Coalgebra, approximations: Sequence[Sequence]) -> list[DualElement]:
    """Lift a family that is, modulo the radical, a complete set of orthogonal
    idempotents, to an exact complete orthogonal family in C*.
    """
    eps = c.counit
    out: list[DualElement] = []
    rest = eps
    for x in approximations[:-1]:
        # work in the corner rest * C* * rest
        y = convolve(c, convolve(c, rest, x), rest)
        e = lift_idempotent(c, y)
        out.append(e)
        rest = vec_sub(rest, e)
    if approximations:
        last = tuple(c.field(v) for v in approximations[-1])
        if not dual_radical(c).basis.contains(vec_sub(rest, last)):
            raise IdempotentDataError("approximations do not sum to the counit modulo the radical")
        out.append(rest)
    return out


def grouplike_idempotents(c: Coalgebra) -> list[DualElement]:
    """Resolving idempotents for a coalgebra whose coradical is spanned by
    grouplike basis elements (e.g. incidence coalgebras).
    """
    glike = c.grouplike_labels()
    C0 = coradical(c)
    span = SubspaceBasis(c.field, c.dim, [c.dual_basis(g) for g in glike])
    # dual_basis(g) has the same coordinates as the basis vector g of C
    if span.dim != C0.dim or not span.issubspace(C0.basis):
        raise IdempotentDataError(
            "coradical is not spanned by grouplike basis elements; supply idempotents explicitly")
    return lift_orthogonal_family(c, [c.dual_basis(g) for g in glike])


@dataclass(frozen=True)
class Block:
    """One injective summand of C, cut out by a resolving idempotent e.

    ``right`` is ``C ↼ e`` (a right subcomodule of C) and ``left`` is
    ``e ⇀ C`` (a left subcomodule).
    """

    idempotent: DualElement
    right: SubspaceBasis
    left: SubspaceBasis
    right_socle: SubspaceBasis | None = None
    left_socle: SubspaceBasis | None = None


@dataclass(frozen=True)
class BlockDecomposition:
    coalgebra: Coalgebra
    blocks: tuple[Block, ...] = dc_field(default_factory=tuple)

    @property
    def idempotents(self) -> list[DualElement]:
        return [b.idempotent for b in self.blocks]

    def right_summands(self) -> list[SubspaceBasis]:
        return [b.right for b in self.blocks]

    def left_summands(self) -> list[SubspaceBasis]:
        return [b.left for b in self.blocks]


def check_resolving_idempotents(c: Coalgebra, idempotents: Sequence[Sequence]) -> None:
    """Raise IdempotentDataError unless the family is complete and orthogonal."""
    es = [tuple(c.field(v) for v in e) for e in idempotents]
    zero = c.zero_dual()
    for i, e in enumerate(es):
        c._check_dual(e)
        if convolve(c, e, e) != e:
            raise IdempotentDataError(f"idempotent #{i} is not idempotent")
        if e == zero:
            raise IdempotentDataError(f"idempotent #{i} is zero")
        for k, f in enumerate(es):
            if k != i and convolve(c, e, f) != zero:
                raise IdempotentDataError(f"idempotents #{i} and #{k} are not orthogonal")
    total = zero
    for e in es:
        total = vec_add(total, e)
    if total != c.counit:
        raise IdempotentDataError("idempotents do not sum to the counit")


def _image(m: Matrix) -> SubspaceBasis:
    return SubspaceBasis(m.field, m.nrows, m.columns())


def injective_block_decomposition(c: Coalgebra, idempotents: Sequence[Sequence] | None = None,
                                  with_socles: bool | None = None) -> BlockDecomposition:
    """Split C into the summands cut out by a complete orthogonal family of
    idempotents of C*.

    Without ``idempotents`` the family is derived automatically, which is only
    possible when the coradical is spanned by grouplike basis elements.
    """
    if idempotents is None:
        if c.field.characteristic != 0:
            raise IdempotentDataError("automatic idempotents need characteristic 0")
        idempotents = grouplike_idempotents(c)
    idempotents = [tuple(c.field(v) for v in e) for e in idempotents]
    check_resolving_idempotents(c, idempotents)
    if with_socles is None:
        with_socles = c.field.characteristic == 0
    if with_socles:
        J = dual_radical(c)
        kill_right = Echelon(c.field, c.dim)
        kill_left = Echelon(c.field, c.dim)
        for j in J.vectors:
            for r in range(c.dim):
                kill_right.add(c.hit_matrix(j).sparse_row(r))
                kill_left.add(c.hit_left_matrix(j).sparse_row(r))
        soc_right = SubspaceBasis(c.field, c.dim, kill_right.null_vectors())
        soc_left = SubspaceBasis(c.field, c.dim, kill_left.null_vectors())
    blocks = []
    for e in idempotents:
        right = _image(c.hit_left_matrix(e))
        left = _image(c.hit_matrix(e))
        blocks.append(Block(
            e, right, left,
            right.intersection(soc_right) if with_socles else None,
            left.intersection(soc_left) if with_socles else None,
        ))
    total_r = SubspaceBasis(c.field, c.dim)
    total_l = SubspaceBasis(c.field, c.dim)
    for b in blocks:
        total_r = total_r + b.right
        total_l = total_l + b.left
    if (total_r.dim != c.dim or sum(b.right.dim for b in blocks) != c.dim
            or total_l.dim != c.dim or sum(b.left.dim for b in blocks) != c.dim):
        raise IdempotentDataError("summands do not form a direct sum decomposition of C")
    return BlockDecomposition(c, tuple(blocks))


# -- standard examples -------------------------------------------------------


def grouplike_coalgebra(n: int, field: Field = QQ, prefix: str = "g") -> Coalgebra:
    """The cosemisimple coalgebra k^n spanned by n grouplikes."""
    labels = [f"{prefix}{i}" for i in range(n)]
    return Coalgebra(field, labels, [{(i, i): 1} for i in range(n)], [1] * n)


def matrix_coalgebra(n: int, field: Field = QQ) -> Coalgebra:
    """The comatrix coalgebra M^c(n): Δ(x_ij) = Σ_k x_ik ⊗ x_kj, ε(x_ij) = δ_ij."""
    labels = [f"x{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]

    def idx(i, j):
        return (i - 1) * n + (j - 1)

    delta = []
    counit = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            delta.append({(idx(i, k), idx(k, j)): 1 for k in range(1, n + 1)})
            counit.append(1 if i == j else 0)
    return Coalgebra(field, labels, delta, counit)


def matrix_coalgebra_idempotents(n: int, field: Field = QQ) -> list[DualElement]:
    """The diagonal dual elements x_ii*, a complete orthogonal family for M^c(n)."""
    c = matrix_coalgebra(n, field)
    return [c.dual_basis(f"x{i}{i}") for i in range(1, n + 1)]

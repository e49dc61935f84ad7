"""Comodules, comodule morphisms, socles, Hom spaces and integrals.

Structure constants are stored uniformly for both sides: ``rho[i]`` maps
``(j, k)`` (comodule index, coalgebra index) to a coefficient.  For a right
comodule this reads ``ρ(m_i) = Σ ν m_j ⊗ c_k``; for a left comodule
``ρ(m_i) = Σ ν c_k ⊗ m_j``.  With this storage the C*-action matrix has the
same formula on both sides (``f ⇀ m`` on the right, ``m ↼ f`` on the left).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .coalgebra import (
    Coalgebra,
    CoalgebraError,
    AxiomCheck,
    AxiomReport,
    dual_radical,
    injective_block_decomposition,
)
from .exactlin import Echelon, Field, Matrix, ShapeError, SubspaceBasis

SIDES = ("left", "right")


class ComoduleError(ValueError):
    pass


class SideMismatchError(ComoduleError):
    pass


class ParentMismatchError(ComoduleError):
    pass


class NotSubcomoduleError(ComoduleError):
    pass


class EmbeddingNotFoundError(ComoduleError):
    pass


class Comodule:
    """A finite-dimensional left or right comodule over ``coalgebra``."""

    def __init__(self, coalgebra: Coalgebra, side: str, labels: Sequence[str], rho: Sequence[Mapping]):
        if side not in SIDES:
            raise ComoduleError(f"side must be 'left' or 'right', got {side!r}")
        labels = [str(x) for x in labels]
        if len(set(labels)) != len(labels):
            raise ComoduleError("duplicate basis labels")
        if len(rho) != len(labels):
            raise ShapeError("rho must have one entry per basis element")
        F = coalgebra.field
        n, d = len(labels), coalgebra.dim
        clean = []
        for terms in rho:
            t = {}
            for (j, k), v in terms.items():
                if not (0 <= j < n and 0 <= k < d):
                    raise ShapeError(f"coaction index {(j, k)} out of range")
                v = F(v)
                if v:
                    t[(j, k)] = v
            clean.append(t)
        self.coalgebra = coalgebra
        self.side = side
        self.labels = tuple(labels)
        self.rho = tuple(clean)

    @property
    def field(self) -> Field:
        return self.coalgebra.field

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ComoduleError(f"unknown basis label {label!r}") from None

    def __repr__(self):
        return f"Comodule<{self.side} dim {self.dim} over {self.coalgebra!r}>"

    def __eq__(self, other):
        if not isinstance(other, Comodule):
            return NotImplemented
        return (self.side == other.side and self.labels == other.labels and self.rho == other.rho
                and self.coalgebra == other.coalgebra)

    def __hash__(self):
        return hash((self.side, self.labels))

    # -- constructors ---------------------------------------------------

    @classmethod
    def regular(cls, c: Coalgebra, side: str) -> "Comodule":
        """C as a comodule over itself via Δ."""
        if side == "right":
            rho = [dict(t) for t in c.delta]
        elif side == "left":
            rho = [{(j, k): v for (k, j), v in t.items()} for t in c.delta]
        else:
            raise ComoduleError(f"bad side {side!r}")
        return cls(c, side, c.labels, rho)

    @classmethod
    def zero(cls, c: Coalgebra, side: str) -> "Comodule":
        return cls(c, side, [], [])

    @classmethod
    def from_labelled(cls, c: Coalgebra, side: str, labels: Sequence[str],
                      rho: Mapping[str, Iterable]) -> "Comodule":
        """Build from ``rho[label] = [(m_label, c_label, coef), ...]``."""
        index = {lab: i for i, lab in enumerate(labels)}
        out = [dict() for _ in labels]
        F = c.field
        for lab, terms in rho.items():
            if lab not in index:
                raise ComoduleError(f"unknown comodule label {lab!r} in rho")
            acc = out[index[lab]]
            for m_lab, c_lab, coef in terms:
                if m_lab not in index:
                    raise ComoduleError(f"unknown comodule label {m_lab!r} in rho of {lab!r}")
                key = (index[m_lab], c.index(c_lab))
                acc[key] = acc.get(key, F.zero) + F(coef)
        return cls(c, side, labels, out)

    def coaction(self, vector: Sequence) -> dict:
        """ρ(v) as ``{(j, k): coef}`` (comodule index j, coalgebra index k)."""
        out: dict = {}
        zero = self.field.zero
        for i, x in enumerate(vector):
            if not x:
                continue
            for key, v in self.rho[i].items():
                out[key] = out.get(key, zero) + x * v
        return {k: v for k, v in out.items() if v}

    def subcomodule(self, subspace: SubspaceBasis | Sequence[Sequence], labels: Sequence[str] | None = None,
                    vectors: Sequence[Sequence] | None = None) -> "Comodule":
        """The subcomodule on a subspace, in the basis ``vectors`` (default: the
        echelon basis of ``subspace``).
        """
        if not isinstance(subspace, SubspaceBasis):
            subspace = SubspaceBasis(self.field, self.dim, subspace)
        vecs = list(vectors) if vectors is not None else list(subspace.vectors)
        if SubspaceBasis(self.field, self.dim, vecs).dim != len(vecs):
            raise ComoduleError("subcomodule basis vectors are dependent")
        to_coords = _coordinate_solver(self.field, vecs, self.dim)
        rho = []
        for v in vecs:
            co = self.coaction(v)
            by_c: dict = {}
            for (j, k), x in co.items():
                by_c.setdefault(k, [self.field.zero] * self.dim)[j] = x
            terms = {}
            for k, w in by_c.items():
                coords = to_coords(w)
                if coords is None:
                    raise NotSubcomoduleError("subspace is not closed under the coaction")
                for s, x in enumerate(coords):
                    if x:
                        terms[(s, k)] = x
            rho.append(terms)
        if labels is None:
            labels = []
            for v in vecs:
                nz = [i for i, x in enumerate(v) if x]
                if len(nz) == 1 and v[nz[0]] == self.field.one:
                    labels.append(self.labels[nz[0]])
                else:
                    labels = [f"w{s}" for s in range(len(vecs))]
                    break
        return Comodule(self.coalgebra, self.side, labels, rho)

    def quotient(self, subspace: SubspaceBasis) -> tuple["Comodule", Matrix]:
        """M / W for a subcomodule W, with the projection matrix M → M/W.

        Representatives of the quotient basis are the standard basis vectors
        in the non-pivot positions of W's echelon basis.
        """
        if subspace.ambient_dim != self.dim:
            raise ShapeError("subspace lives in a different ambient space")
        pivots = set(subspace.pivots)
        free = [i for i in range(self.dim) if i not in pivots]
        pos = {f: s for s, f in enumerate(free)}
        ech = subspace._ech

        def project(vec: dict) -> dict:
            r = ech.reduce(vec)
            return {pos[i]: x for i, x in r.items()}

        proj_rows = [dict() for _ in free]
        for i in range(self.dim):
            for s, x in project({i: self.field.one}).items():
                proj_rows[s][i] = x
        projection = Matrix(self.field, len(free), self.dim, proj_rows)
        for w in subspace.vectors:
            co = self.coaction(w)
            by_c: dict = {}
            for (j, k), x in co.items():
                by_c.setdefault(k, {})[j] = x
            if any(project(vec) for vec in by_c.values()):
                raise NotSubcomoduleError("cannot form quotient by a non-subcomodule")
        rho = []
        for f in free:
            by_c = {}
            for (j, k), x in self.rho[f].items():
                by_c.setdefault(k, {})[j] = x
            terms = {}
            for k, vec in by_c.items():
                for s, x in project(vec).items():
                    terms[(s, k)] = x
            rho.append(terms)
        return Comodule(self.coalgebra, self.side, [self.labels[f] for f in free], rho), projection

    # -- actions ----------------------------------------------------------

    def action_matrix(self, f: Sequence) -> Matrix:
        """Matrix of the C*-action by f: ``f ⇀ ·`` (right side) or ``· ↼ f`` (left side)."""
        self.coalgebra._check_dual(f)
        n = self.dim
        rows = [dict() for _ in range(n)]
        zero = self.field.zero
        for i, terms in enumerate(self.rho):
            for (j, k), v in terms.items():
                if f[k]:
                    rows[j][i] = rows[j].get(i, zero) + v * f[k]
        return Matrix(self.field, n, n, rows)

    def basis_actions(self) -> list[Matrix]:
        c = self.coalgebra
        return [self.action_matrix(c.dual_basis(k)) for k in range(c.dim)]


def direct_sum(mods: Sequence[Comodule]) -> Comodule:
    if not mods:
        raise ComoduleError("empty direct sum")
    c, side = mods[0].coalgebra, mods[0].side
    labels, rho = [], []
    off = 0
    for t, m in enumerate(mods):
        _same_parent(mods[0], m)
        labels.extend(f"{lab}#{t}" for lab in m.labels)
        rho.extend({(j + off, k): v for (j, k), v in terms.items()} for terms in m.rho)
        off += m.dim
    return Comodule(c, side, labels, rho)


def _coordinate_solver(field: Field, vectors: Sequence[Sequence], ambient: int):
    """Return a function mapping w to its coordinates in ``vectors`` (or None)."""
    # augment with an identity block to track combinations
    n = len(vectors)
    ech = Echelon(field, ambient + n)
    for s, v in enumerate(vectors):
        row = {i: x for i, x in enumerate(v) if x}
        row[ambient + s] = field.one
        ech.add(row)

    def solve(w: Sequence):
        r = ech.reduce({i: x for i, x in enumerate(w) if x})
        if any(i < ambient for i in r):
            return None
        # r = w - Σ a_s v_s expressed as  -Σ a_s e_s in the tracking block
        coords = [field.zero] * n
        for i, x in r.items():
            coords[i - ambient] = -x
        return coords

    return solve


# -- axioms ------------------------------------------------------------------


def validate_comodule(m: Comodule) -> AxiomReport:
    """Check the coassociativity and counit laws of ``m`` on every basis element."""
    c = m.coalgebra
    zero = m.field.zero
    coassoc = counit = None
    for i, terms in enumerate(m.rho):
        lhs: dict = {}
        rhs: dict = {}
        for (j, k), v in terms.items():
            # apply ρ again to the comodule leg
            for (l, a), w in m.rho[j].items():
                key = (l, a, k) if m.side == "right" else (l, k, a)
                lhs[key] = lhs.get(key, zero) + v * w
            # apply Δ to the coalgebra leg
            for (a, b), mu in c.delta[k].items():
                key = (j, a, b)
                rhs[key] = rhs.get(key, zero) + v * mu
        if coassoc is None and {k: x for k, x in lhs.items() if x} != {k: x for k, x in rhs.items() if x}:
            coassoc = m.labels[i]
        back = [zero] * m.dim
        for (j, k), v in terms.items():
            back[j] = back[j] + v * c.counit[k]
        unit = [zero] * m.dim
        unit[i] = m.field.one
        if counit is None and back != unit:
            counit = m.labels[i]
    return AxiomReport((
        AxiomCheck("coassociativity", coassoc is None, coassoc),
        AxiomCheck("counit", counit is None, counit),
    ))


def dual_action(m: Comodule, f: Sequence, v: Sequence) -> tuple:
    """``f ⇀ v`` for a right comodule, ``v ↼ f`` for a left comodule."""
    if len(v) != m.dim:
        raise ShapeError(f"vector of length {len(v)} for comodule of dimension {m.dim}")
    return m.action_matrix(f).apply([m.field(x) for x in v])


# -- socle and radical -------------------------------------------------------


def socle(m: Comodule) -> SubspaceBasis:
    """Vectors killed by the radical of C*; this is the socle of ``m``."""
    J = dual_radical(m.coalgebra)
    ech = Echelon(m.field, m.dim)
    for j in J.vectors:
        a = m.action_matrix(j)
        for r in range(a.nrows):
            ech.add(a.sparse_row(r))
    return SubspaceBasis(m.field, m.dim, ech.null_vectors())


def radical(m: Comodule) -> SubspaceBasis:
    """J·M, the intersection of the maximal subcomodules of ``m``."""
    J = dual_radical(m.coalgebra)
    vecs = []
    for j in J.vectors:
        vecs.extend(m.action_matrix(j).columns())
    return SubspaceBasis(m.field, m.dim, vecs)


@dataclass(frozen=True)
class TopReport:
    radical: SubspaceBasis
    top_dim: int
    top_simple: bool
    certified: bool

    @property
    def unique_maximal(self) -> bool:
        return self.top_simple


def radical_and_top(m: Comodule) -> TopReport:
    """Radical of ``m`` and whether the top ``m / rad m`` is simple.

    The top is semisimple, so it is simple exactly when its endomorphism
    ring is a division algebra.  One-dimensional endomorphism rings settle
    this at once; otherwise a non-scalar endomorphism with reducible
    minimal polynomial exhibits zero divisors.  When no such element turns
    up among the searched candidates the answer is reported uncertified.
    """
    rad = radical(m)
    top, _ = m.quotient(rad)
    if top.dim == 0:
        return TopReport(rad, 0, False, True)
    end = hom_space(top, top)
    if end.dim == 1:
        return TopReport(rad, top.dim, True, True)
    for cand in _small_combinations(end.basis, top.field):
        if _is_scalar(cand):
            continue
        if _min_poly_reducible(cand):
            return TopReport(rad, top.dim, False, True)
    return TopReport(rad, top.dim, True, False)


def _is_scalar(a: Matrix) -> bool:
    d = a[0, 0]
    return a == Matrix.identity(a.field, a.nrows).scale(d)


def _min_poly(a: Matrix) -> list:
    """Monic minimal polynomial coefficients, lowest degree first."""
    F = a.field
    n = a.nrows
    powers = [Matrix.identity(F, n)]
    ech = Echelon(F, n * n + n + 1)
    while True:
        p = powers[-1]
        d = len(powers) - 1
        row = {r * n + c: v for (r, c), v in p.entries.items()}
        row[n * n + d] = F.one
        reduced = ech.reduce(row)
        if not any(i < n * n for i in reduced):
            # Σ coef_i A^i = 0 with the tracking block giving the coefficients
            coeffs = [F.zero] * (d + 1)
            for i, x in reduced.items():
                coeffs[i - n * n] = x
            lead = coeffs[d]
            return [x / lead for x in coeffs]
        ech.add(row)
        powers.append(p @ a)


def _min_poly_reducible(a: Matrix) -> bool:
    import sympy

    coeffs = _min_poly(a)
    if len(coeffs) <= 2:
        return False
    t = sympy.Symbol("t")
    poly = sympy.Poly(list(reversed([sympy.Rational(x.numerator, x.denominator) for x in coeffs])), t,
                      domain="QQ")
    _, factors = poly.factor_list()
    return len(factors) > 1 or factors[0][1] > 1


# -- Hom spaces ---------------------------------------------------------------


@dataclass(frozen=True)
class ComoduleMorphism:
    matrix: Matrix
    source: Comodule
    target: Comodule

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)

    def intertwines(self) -> bool:
        return is_comodule_morphism(self.matrix, self.source, self.target)


@dataclass(frozen=True)
class HomSpace:
    source: Comodule
    target: Comodule
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def morphisms(self) -> list[ComoduleMorphism]:
        return [ComoduleMorphism(b, self.source, self.target) for b in self.basis]


def _same_parent(m: Comodule, n: Comodule) -> None:
    if m.side != n.side:
        raise SideMismatchError(f"{m.side} vs {n.side} comodule")
    if m.coalgebra != n.coalgebra:
        raise ParentMismatchError("comodules over different coalgebras")


def _hom_equations(m: Comodule, n: Comodule) -> Iterable[dict]:
    """Rows of the linear system ρ_N ∘ f = (f ⊗ id) ∘ ρ_M in the entries of f.

    The unknown f[b][a] (target b, source a) has index ``b * dim M + a``.
    """
    dm = m.dim
    zero = m.field.zero
    for a in range(dm):
        eqs: dict = {}
        # ρ_N(f m_a) = Σ_b f[b][a] Σ ν_N[b][(b', k)] n_b' ⊗ c_k
        for b in range(n.dim):
            for (bp, k), v in n.rho[b].items():
                row = eqs.setdefault((bp, k), {})
                key = b * dm + a
                row[key] = row.get(key, zero) + v
        # (f ⊗ id) ρ_M(m_a) = Σ ν_M[a][(a', k)] Σ_b f[b][a'] n_b ⊗ c_k
        for (ap, k), v in m.rho[a].items():
            for b in range(n.dim):
                row = eqs.setdefault((b, k), {})
                key = b * dm + ap
                row[key] = row.get(key, zero) - v
        for row in eqs.values():
            yield {i: x for i, x in row.items() if x}


def is_comodule_morphism(f: Matrix, m: Comodule, n: Comodule) -> bool:
    if f.shape != (n.dim, m.dim):
        return False
    for a in range(m.dim):
        lhs = n.coaction(f.column(a))
        rhs: dict = {}
        for (ap, k), v in m.rho[a].items():
            for b in range(n.dim):
                x = f[b, ap]
                if x:
                    rhs[(b, k)] = rhs.get((b, k), m.field.zero) + v * x
        if lhs != {k: v for k, v in rhs.items() if v}:
            return False
    return True


def hom_space(m: Comodule, n: Comodule) -> HomSpace:
    """Basis of the comodule morphisms m → n, from one kernel computation."""
    _same_parent(m, n)
    F = m.field
    nvars = m.dim * n.dim
    ech = Echelon(F, nvars)
    for row in _hom_equations(m, n):
        if row:
            ech.add(row)
    basis = []
    for v in ech.null_vectors():
        rows = [{a: v[b * m.dim + a] for a in range(m.dim) if v[b * m.dim + a]} for b in range(n.dim)]
        mat = Matrix(F, n.dim, m.dim, rows)
        if not is_comodule_morphism(mat, m, n):
            raise CoalgebraError("internal error: kernel vector fails the intertwining identity")
        basis.append(mat)
    return HomSpace(m, n, tuple(basis))


def left_integrals(c: Coalgebra, m: Comodule) -> HomSpace:
    """Left m-integrals on C: morphisms of left comodules C → m."""
    if m.side != "left":
        raise SideMismatchError("left integrals need a left comodule")
    return hom_space(Comodule.regular(c, "left"), m)


def right_integrals(c: Coalgebra, n: Comodule) -> HomSpace:
    """Right n-integrals on C: morphisms of right comodules C → n."""
    if n.side != "right":
        raise SideMismatchError("right integrals need a right comodule")
    return hom_space(Comodule.regular(c, "right"), n)


def integrals(c: Coalgebra, m: Comodule) -> HomSpace:
    return left_integrals(c, m) if m.side == "left" else right_integrals(c, m)


# -- module-theoretic Hom (intertwiners of action matrices) -------------------


def intertwiners(src_actions: Sequence[Matrix], tgt_actions: Sequence[Matrix],
                 src_dim: int, tgt_dim: int, field: Field) -> list[Matrix]:
    """Basis of {X : X S_f = T_f X for every f}, X of shape (tgt_dim, src_dim)."""
    nvars = src_dim * tgt_dim
    ech = Echelon(field, nvars)
    zero = field.zero
    for S, T in zip(src_actions, tgt_actions, strict=True):
        # (X S)[b][a] = Σ_c X[b][c] S[c][a];  (T X)[b][a] = Σ_d T[b][d] X[d][a]
        S_cols = [dict() for _ in range(src_dim)]
        for (cc, a), v in S.entries.items():
            S_cols[a][cc] = v
        T_entries = [T.sparse_row(b) for b in range(tgt_dim)]
        for b in range(tgt_dim):
            for a in range(src_dim):
                row: dict = {}
                for cc, v in S_cols[a].items():
                    key = b * src_dim + cc
                    row[key] = row.get(key, zero) + v
                for d, v in T_entries[b].items():
                    key = d * src_dim + a
                    row[key] = row.get(key, zero) - v
                row = {i: x for i, x in row.items() if x}
                if row:
                    ech.add(row)
    out = []
    for v in ech.null_vectors():
        rows = [{a: v[b * src_dim + a] for a in range(src_dim) if v[b * src_dim + a]} for b in range(tgt_dim)]
        out.append(Matrix(field, tgt_dim, src_dim, rows))
    return out


def _small_combinations(basis: Sequence[Matrix], field: Field, max_terms: int = 3,
                        coefficients: Sequence[int] = (1, 2, 3)) -> Iterable[Matrix]:
    """Deterministic candidate elements of a span: basis elements, then sums of
    up to ``max_terms`` basis elements with coefficients from ``coefficients``.
    """
    yield from basis
    for r in range(2, max_terms + 1):
        for idx in itertools.combinations(range(len(basis)), r):
            for coefs in itertools.product(coefficients, repeat=r):
                if coefs[0] != 1:
                    continue
                acc = basis[idx[0]]
                for i, cf in zip(idx[1:], coefs[1:]):
                    acc = acc + basis[i].scale(cf)
                yield acc


@dataclass(frozen=True)
class RankSearch:
    found: Matrix | None
    max_rank: int


def _greedy_combination(basis: Sequence[Matrix], field: Field) -> tuple[Matrix, int]:
    """X = Σ t_i B_i with each t_i chosen in turn to maximise rank(X + t_i B_i).

    For fixed X and B, rank(X + tB) drops below its maximum for at most
    min(shape) values of t (roots of a nonzero minor), so trying that many
    plus one distinct nonzero scalars always reaches the maximum of the pencil.
    """
    x = basis[0].scale(field.zero)
    rank = 0
    n = min(x.nrows, x.ncols) + 1
    if field.characteristic:
        scalars = [field(t) for t in range(1, min(field.characteristic, n + 1))]
    else:
        scalars = [field(t) for t in range(1, n + 1)]
    for b in basis:
        best, best_rank = x, rank
        for t in scalars:
            cand = x + b.scale(t)
            r = cand.rank()
            if r > best_rank:
                best, best_rank = cand, r
        x, rank = best, best_rank
    return x, rank


def find_full_rank(basis: Sequence[Matrix], field: Field, target_rank: int | None = None) -> RankSearch:
    """Look for an element of the span with full column rank.

    The deterministic candidate order is shared by every injectivity search
    in the package: basis elements, then one greedy pass over the basis
    (see :func:`_greedy_combination`), then sums of at most three basis
    elements with coefficients in {1, 2, 3}.
    """
    if not basis:
        return RankSearch(None, 0)
    want = basis[0].ncols if target_rank is None else target_rank
    if want == 0:
        return RankSearch(Matrix(field, basis[0].nrows, 0), 0)
    # every element's image lies in the sum of the images, and its kernel
    # contains the common kernel of the basis
    images, kernels = basis[0], basis[0]
    for b in basis[1:]:
        images = images.hstack(b)
        kernels = kernels.vstack(b)
    if images.rank() < want or kernels.rank() < want:
        return RankSearch(None, max(b.rank() for b in basis))
    best = 0
    for b in basis:
        r = b.rank()
        best = max(best, r)
        if r >= want:
            return RankSearch(b, r)
    cand, r = _greedy_combination(basis, field)
    best = max(best, r)
    if r >= want:
        return RankSearch(cand, r)
    for cand in _small_combinations(basis, field):
        r = cand.rank()
        best = max(best, r)
        if r >= want:
            return RankSearch(cand, r)
    return RankSearch(None, best)


# -- γ_M ---------------------------------------------------------------------


def gamma_eval(m: Comodule, v: Sequence, f: Sequence) -> tuple:
    """γ_M(v)(f): the action of f on v."""
    return dual_action(m, f, v)


@dataclass(frozen=True)
class GammaReport:
    comodule_dim: int
    hom_dim: int
    injective: bool
    counit_ok: bool

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.hom_dim == self.comodule_dim and self.counit_ok


def _gamma_matrix(m: Comodule, v: Sequence) -> Matrix:
    c = m.coalgebra
    cols = [m.action_matrix(c.dual_basis(k)).apply(v) for k in range(c.dim)]
    return Matrix.from_columns(m.field, cols, m.dim) if cols else Matrix(m.field, m.dim, 0)


def module_hom_from_dual(m: Comodule) -> list[Matrix]:
    """Basis of Hom_{-C*}(C*, m) (left m) or Hom_{C*-}(C*, m) (right m), as
    matrices of shape (dim m, dim C) acting on dual-basis coordinates.
    """
    c = m.coalgebra
    duals = [c.dual_basis(k) for k in range(c.dim)]
    if m.side == "left":
        src = [c.right_mult_matrix(f) for f in duals]
    else:
        src = [c.left_mult_matrix(f) for f in duals]
    tgt = [m.action_matrix(f) for f in duals]
    return intertwiners(src, tgt, c.dim, m.dim, m.field)


def gamma_iso_check(m: Comodule) -> GammaReport:
    """Compare dim Hom(C*, m) with dim m and test γ_m for injectivity."""
    c = m.coalgebra
    hom = module_hom_from_dual(m)
    images = [_gamma_matrix(m, m_basis) for m_basis in Matrix.identity(m.field, m.dim).columns()]
    span = SubspaceBasis(m.field, m.dim * c.dim,
                         [tuple(g[r, k] for r in range(m.dim) for k in range(c.dim)) for g in images])
    hom_span = SubspaceBasis(m.field, m.dim * c.dim,
                             [tuple(h[r, k] for r in range(m.dim) for k in range(c.dim)) for h in hom])
    injective = span.dim == m.dim and span.issubspace(hom_span)
    counit_ok = all(g.apply(c.counit) == v for g, v in zip(images, Matrix.identity(m.field, m.dim).columns()))
    return GammaReport(m.dim, len(hom), injective, counit_ok)


# -- injective envelopes -------------------------------------------------------


@dataclass(frozen=True)
class Envelope:
    embedding: ComoduleMorphism
    blocks: tuple[int, ...]

    @property
    def target(self) -> Comodule:
        return self.embedding.target


def block_comodules(c: Coalgebra, side: str, idempotents=None) -> list[Comodule]:
    """The indecomposable injective summands of C on the given side."""
    dec = injective_block_decomposition(c, idempotents)
    reg = Comodule.regular(c, side)
    summands = dec.right_summands() if side == "right" else dec.left_summands()
    return [reg.subcomodule(s) for s in summands]


def isomorphic(m: Comodule, n: Comodule) -> bool:
    if m.dim != n.dim:
        return False
    if m.dim == 0:
        return True
    return find_full_rank(hom_space(m, n).basis, m.field).found is not None


def injective_envelope(m: Comodule, idempotents=None, blocks: Sequence[Comodule] | None = None) -> Envelope:
    """Embed ``m`` into a direct sum of indecomposable injective summands of C."""
    c = m.coalgebra
    if blocks is None:
        blocks = block_comodules(c, m.side, idempotents)
    socles = [b.subcomodule(socle(b)) for b in blocks]
    # group blocks by the isomorphism type of their socle
    types: list[list[int]] = []
    for i, s in enumerate(socles):
        for t in types:
            if isomorphic(socles[t[0]], s):
                t.append(i)
                break
        else:
            types.append([i])
    chosen: list[int] = []
    soc_dim = 0
    for t in types:
        rep = socles[t[0]]
        end_dim = hom_space(rep, rep).dim
        mult = hom_space(rep, m).dim // end_dim
        soc_dim += mult * rep.dim
        chosen.extend(t[s % len(t)] for s in range(mult))
    if soc_dim != socle(m).dim:
        raise EmbeddingNotFoundError("socle of the comodule is not covered by block socles")
    if not chosen:
        target = Comodule.zero(c, m.side)
        return Envelope(ComoduleMorphism(Matrix(m.field, 0, m.dim), m, target), ())
    target = direct_sum([blocks[i] for i in chosen])
    hom = hom_space(m, target)
    hit = find_full_rank(hom.basis, m.field, m.dim)
    if hit.found is None:
        raise EmbeddingNotFoundError(f"no injective morphism found (max rank {hit.max_rank} < {m.dim})")
    return Envelope(ComoduleMorphism(hit.found, m, target), tuple(chosen))


@dataclass(frozen=True)
class Support:
    subspace: SubspaceBasis
    finite: bool = True

    @property
    def dim(self) -> int:
        return self.subspace.dim


def coefficient_support(m: Comodule) -> Support:
    """Span of the C-legs of ρ on the basis of ``m``.

    The C-legs are read off the matrix ρ(m_i) in M ⊗ C: its column space in C
    (for each i) is the minimal X with ρ(m_i) ∈ M ⊗ X.
    """
    d = m.coalgebra.dim
    vecs = []
    for terms in m.rho:
        rows: dict = {}
        for (j, k), v in terms.items():
            rows.setdefault(j, {})[k] = v
        for row in rows.values():
            vec = [m.field.zero] * d
            for k, v in row.items():
                vec[k] = v
            vecs.append(vec)
    return Support(SubspaceBasis(m.field, d, vecs), True)

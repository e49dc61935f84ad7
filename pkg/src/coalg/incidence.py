"""Finite posets, incidence coalgebras and their closed-form integral dimensions."""

from __future__ import annotations

import re
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Sequence

from .coalgebra import Coalgebra
from .comodule import Comodule, ComoduleMorphism
from .exactlin import QQ, Field, Matrix


class PosetError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class FinitePoset:
    """A finite poset given by its elements and a generating set of relations a < b.

    The order is the reflexive-transitive closure of the relations, which must
    be acyclic.
    """

    def __init__(self, elements: Sequence[str], covers: Iterable[tuple[str, str]] = ()):
        elements = [str(e) for e in elements]
        seen = set()
        for e in elements:
            if e in seen:
                raise PosetError(f"duplicate element {e!r}")
            seen.add(e)
        covers = [(str(a), str(b)) for a, b in covers]
        for a, b in covers:
            for x in (a, b):
                if x not in seen:
                    raise PosetError(f"unknown element {x!r} in relation {a} < {b}")
            if a == b:
                raise PosetError(f"cycle detected: {a} < {a}")
        self.elements = tuple(elements)
        self.covers = tuple(dict.fromkeys(covers))
        preds: dict[str, set] = {e: set() for e in elements}
        for a, b in self.covers:
            preds[b].add(a)
        try:
            order = list(TopologicalSorter(preds).static_order())
        except CycleError as exc:
            raise PosetError(f"cycle detected: {' < '.join(reversed(exc.args[1]))}") from None
        below: dict[str, set] = {}
        for x in order:
            s = {x}
            for a in preds[x]:
                s |= below[a]
            below[x] = s
        self._below = {x: frozenset(s) for x, s in below.items()}
        self._above = {x: frozenset(y for y in elements if x in self._below[y]) for x in elements}

    def leq(self, x: str, y: str) -> bool:
        self._check(x)
        self._check(y)
        return x in self._below[y]

    def _check(self, x: str) -> None:
        if x not in self._below:
            raise PosetError(f"unknown element {x!r}")

    def up(self, x: str) -> list[str]:
        """x⁺ = {y : x ≤ y}, in element order."""
        self._check(x)
        return [y for y in self.elements if y in self._above[x]]

    def down(self, x: str) -> list[str]:
        """x⁻ = {y : y ≤ x}, in element order."""
        self._check(x)
        return [y for y in self.elements if y in self._below[x]]

    def interval(self, x: str, y: str) -> list[str]:
        return [z for z in self.elements if self.leq(x, z) and self.leq(z, y)]

    def pairs(self) -> list[tuple[str, str]]:
        """All (x, y) with x ≤ y, ordered by x then y in element order."""
        return [(x, y) for x in self.elements for y in self.up(x)]

    def strict_pairs(self) -> list[tuple[str, str]]:
        return [(x, y) for x, y in self.pairs() if x != y]

    def opposite(self) -> "FinitePoset":
        return FinitePoset(self.elements, [(b, a) for a, b in self.covers])

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return set(self.elements) == set(other.elements) and self._below == other._below

    def __repr__(self):
        return f"FinitePoset({list(self.elements)!r}, {list(self.covers)!r})"


_TOKEN = re.compile(r"<|,|[^\s<,]+")


def parse_poset(text: str) -> FinitePoset:
    """Parse the text poset format.

    One ``elements: a b c`` line, then relation lines such as ``a < b`` or
    chains ``a < b < c``.  ``;`` also separates statements, ``#`` starts a
    comment, and an optional ``covers`` keyword may precede relations.
    """
    elements: list[str] | None = None
    relations: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for stmt in line.split(";"):
            stmt = stmt.strip()
            if not stmt:
                continue
            head = stmt.split(None, 1)[0].rstrip(":")
            if head == "elements":
                if elements is not None:
                    raise PosetError("second 'elements' statement", lineno)
                rest = stmt[len("elements"):].lstrip().lstrip(":")
                elements = rest.replace(",", " ").split()
                dup = {e for e in elements if elements.count(e) > 1}
                if dup:
                    raise PosetError(f"duplicate element {sorted(dup)[0]!r}", lineno)
                continue
            if head == "covers":
                stmt = stmt[len("covers"):].lstrip().lstrip(":")
            tokens = [t for t in _TOKEN.findall(stmt) if t != ","]
            used = [False] * len(tokens)
            for i, t in enumerate(tokens):
                if t == "<":
                    if i == 0 or i + 1 >= len(tokens) or "<" in (tokens[i - 1], tokens[i + 1]):
                        raise PosetError("dangling '<'", lineno)
                    relations.append((tokens[i - 1], tokens[i + 1], lineno))
                    used[i - 1] = used[i] = used[i + 1] = True
            for t, u in zip(tokens, used):
                if not u:
                    raise PosetError(f"unexpected token {t!r}", lineno)
    if elements is None:
        raise PosetError("missing 'elements' statement")
    known = set(elements)
    for a, b, lineno in relations:
        for x in (a, b):
            if x not in known:
                raise PosetError(f"unknown element {x!r}", lineno)
    try:
        return FinitePoset(elements, [(a, b) for a, b, _ in relations])
    except PosetError as exc:
        if exc.line is None and "cycle" in str(exc):
            raise PosetError(str(exc), relations[-1][2] if relations else None) from None
        raise


def format_poset(p: FinitePoset) -> str:
    lines = ["elements: " + " ".join(p.elements)]
    lines += [f"{a} < {b}" for a, b in p.covers]
    return "\n".join(lines) + "\n"


# -- standard posets ---------------------------------------------------------


def chain(n: int, prefix: str = "") -> FinitePoset:
    els = [f"{prefix}{i}" for i in range(n)]
    return FinitePoset(els, list(zip(els, els[1:])))


def antichain(n: int, prefix: str = "") -> FinitePoset:
    return FinitePoset([f"{prefix}{i}" for i in range(n)])


def diamond() -> FinitePoset:
    return FinitePoset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def n_poset() -> FinitePoset:
    """The N-shaped poset a < c, b < c, b < d."""
    return FinitePoset(["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("b", "d")])


# -- incidence coalgebra -------------------------------------------------------


def pair_label(x: str, y: str) -> str:
    return f"e[{x},{y}]"


def build_incidence(p: FinitePoset, field: Field = QQ) -> Coalgebra:
    """Δ(e_xy) = Σ_{x≤z≤y} e_xz ⊗ e_zy and ε(e_xy) = δ_xy."""
    pairs = p.pairs()
    index = {pq: i for i, pq in enumerate(pairs)}
    delta = []
    counit = []
    for x, y in pairs:
        delta.append({(index[(x, z)], index[(z, y)]): 1 for z in p.interval(x, y)})
        counit.append(1 if x == y else 0)
    return Coalgebra(field, [pair_label(x, y) for x, y in pairs], delta, counit)


def _incidence_for(p: FinitePoset, coalgebra: Coalgebra | None, field: Field) -> Coalgebra:
    return coalgebra if coalgebra is not None else build_incidence(p, field)


def e_r_injective(p: FinitePoset, x: str, field: Field = QQ, coalgebra: Coalgebra | None = None) -> Comodule:
    """E_r(S_x) = span{e_xy : y ∈ x⁺}, a right subcomodule of C."""
    c = _incidence_for(p, coalgebra, field)
    vecs = [c.dual_basis(pair_label(x, y)) for y in p.up(x)]
    return Comodule.regular(c, "right").subcomodule(vecs, vectors=vecs)


def e_l_injective(p: FinitePoset, x: str, field: Field = QQ, coalgebra: Coalgebra | None = None) -> Comodule:
    """E_l(S_x) = span{e_yx : y ∈ x⁻}, a left subcomodule of C."""
    c = _incidence_for(p, coalgebra, field)
    vecs = [c.dual_basis(pair_label(y, x)) for y in p.down(x)]
    return Comodule.regular(c, "left").subcomodule(vecs, vectors=vecs)


def simple_comodule(p: FinitePoset, x: str, side: str, field: Field = QQ,
                    coalgebra: Coalgebra | None = None) -> Comodule:
    """S_x = span{e_xx} on the given side."""
    c = _incidence_for(p, coalgebra, field)
    v = [c.dual_basis(pair_label(x, x))]
    return Comodule.regular(c, side).subcomodule(v, vectors=v)


def closed_form_hom_dim(p: FinitePoset, x: str, u: str) -> int:
    """dim Hom(E_r(S_x), E_r(S_u)): 1 when x ∈ u⁻, else 0."""
    return 1 if p.leq(x, u) else 0


def construct_integral(p: FinitePoset, x: str, u: str, alpha=1, field: Field = QQ,
                       coalgebra: Coalgebra | None = None) -> ComoduleMorphism:
    """The morphism E_r(S_x) → E_r(S_u) sending e_xy to α e_uy when u ∈ [x, y], else 0."""
    alpha = field(alpha)
    if not p.leq(x, u) and alpha:
        raise ValueError(f"{x} is not below {u}: only the zero morphism exists")
    src = e_r_injective(p, x, field, coalgebra)
    tgt = e_r_injective(p, u, field, coalgebra)
    ups_x = p.up(x)
    ups_u = p.up(u)
    entries = {}
    if alpha:
        for a, y in enumerate(ups_x):
            if p.leq(x, u) and p.leq(u, y):
                entries[(ups_u.index(y), a)] = alpha
    mat = Matrix.from_entries(field, tgt.dim, src.dim, entries)
    return ComoduleMorphism(mat, src, tgt)


# -- cardinal arithmetic and the closed form ---------------------------------------


@dataclass(frozen=True)
class CardinalDim:
    """A finite dimension, or ``value=None`` for a countably infinite one."""

    value: int | None

    @classmethod
    def finite(cls, n: int) -> "CardinalDim":
        if n < 0:
            raise ValueError("negative dimension")
        return cls(n)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __add__(self, other: "CardinalDim") -> "CardinalDim":
        if self.is_infinite or other.is_infinite:
            return INFINITE
        return CardinalDim(self.value + other.value)

    def __le__(self, other: "CardinalDim") -> bool:
        if other.is_infinite:
            return True
        return not self.is_infinite and self.value <= other.value

    def __str__(self):
        return "inf" if self.is_infinite else str(self.value)

    def to_json(self):
        return "infinite" if self.is_infinite else self.value


INFINITE = CardinalDim(None)


def cardinal(x) -> CardinalDim:
    if isinstance(x, CardinalDim):
        return x
    if x is None or (isinstance(x, str) and x.lower() in ("inf", "infinite", "aleph0")):
        return INFINITE
    return CardinalDim.finite(int(x))


@dataclass(frozen=True)
class IntegralProfile:
    u_plus: CardinalDim
    u_minus: CardinalDim

    def __post_init__(self):
        for name in ("u_plus", "u_minus"):
            v = getattr(self, name)
            if not isinstance(v, CardinalDim):
                object.__setattr__(self, name, cardinal(v))
        for v in (self.u_plus, self.u_minus):
            if not v.is_infinite and v.value < 1:
                raise ValueError("u⁺ and u⁻ both contain u, so they have size at least 1")

    @classmethod
    def of(cls, p: FinitePoset, u: str) -> "IntegralProfile":
        return cls(CardinalDim(len(p.up(u))), CardinalDim(len(p.down(u))))


def closed_form_integral_dims(profile: IntegralProfile) -> tuple[CardinalDim, CardinalDim]:
    """(dim E_r(S_u), dim of the right E_r(S_u)-integrals) = (|u⁺|, |u⁻|).

    An infinite u⁺ makes E_r(S_u) infinite dimensional; the integral count
    |u⁻| is returned either way.
    """
    return profile.u_plus, profile.u_minus


@dataclass(frozen=True)
class SemiperfectReport:
    right: bool
    left: bool
    max_down: int
    max_up: int


def semiperfect_predicates(p: FinitePoset) -> SemiperfectReport:
    """Right semiperfect iff every x⁻ is finite; left iff every x⁺ is.

    Always true for a finite poset; the largest |x⁻| and |x⁺| are reported as
    the witnessing bounds.
    """
    max_down = max((len(p.down(x)) for x in p.elements), default=0)
    max_up = max((len(p.up(x)) for x in p.elements), default=0)
    return SemiperfectReport(True, True, max_down, max_up)


def equality_order(p: FinitePoset) -> bool:
    """True iff the order is equality, the co-Frobenius criterion for incidence coalgebras."""
    return not p.strict_pairs()


def realizability_poset(m: int, n: int) -> tuple[FinitePoset, str]:
    """A chain x1 < … < x_{n-1} < u < y1 < … < y_{m-1}, so |u⁺| = m and |u⁻| = n."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    els = [f"x{i}" for i in range(1, n)] + ["u"] + [f"y{i}" for i in range(1, m)]
    return FinitePoset(els, list(zip(els, els[1:]))), "u"

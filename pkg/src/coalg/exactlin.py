"""Exact linear algebra over the rationals and prime fields.

Everything in the package reduces to kernels, ranks and row spaces of
sparse matrices.  Rationals are represented by :class:`fractions.Fraction`
and prime-field elements by :class:`Fp`; a :class:`Field` object converts
raw input into one of the two and is carried by every matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence


class FieldMismatchError(ValueError):
    """Raised when values from different fields meet in one computation."""


class ShapeError(ValueError):
    """Raised on incompatible matrix or vector dimensions."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@total_ordering
class Fp:
    """An element of the prime field F_p, stored as its residue in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> "Fp":
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} vs F_{other.p}")
            return other
        if isinstance(other, bool) or not isinstance(other, int):
            raise FieldMismatchError(f"cannot combine F_{self.p} element with {type(other).__name__}")
        return Fp(other, self.p)

    def __add__(self, other):
        return Fp(self.value + self._coerce(other).value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.value - self._coerce(other).value, self.p)

    def __rsub__(self, other):
        return Fp(self._coerce(other).value - self.value, self.p)

    def __mul__(self, other):
        return Fp(self.value * self._coerce(other).value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def inverse(self) -> "Fp":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Fp(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.p
        return NotImplemented

    def __lt__(self, other):
        return self.value < self._coerce(other).value

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class Field:
    """Base class for the supported scalar fields."""

    tag: str
    characteristic: int

    def __call__(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def from_pair(self, num: int, den: int = 1):
        return self(num) / self(den)

    def __eq__(self, other):
        return isinstance(other, Field) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"<field {self.tag}>"


class Rationals(Field):
    tag = "Q"
    characteristic = 0

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, Fp):
            raise FieldMismatchError(f"F_{value.p} element given where Q was expected")
        if isinstance(value, float):
            raise TypeError("floating-point input is not exact; pass a Fraction or a string")
        return Fraction(value)


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.tag = f"Fp:{p}"

    def __call__(self, value) -> Fp:
        if isinstance(value, Fp):
            if value.p != self.p:
                raise FieldMismatchError(f"F_{value.p} element given where F_{self.p} was expected")
            return value
        if isinstance(value, Fraction):
            return Fp(value.numerator, self.p) / Fp(value.denominator, self.p)
        if isinstance(value, bool) or not isinstance(value, int):
            raise FieldMismatchError(f"cannot convert {value!r} into F_{self.p}")
        return Fp(value, self.p)

    def elements(self) -> list[Fp]:
        return [Fp(i, self.p) for i in range(self.p)]


QQ = Rationals()


def parse_field(text: str) -> Field:
    """Parse ``"Q"`` or ``"Fp:<prime>"``."""
    text = text.strip()
    if text == "Q":
        return QQ
    if text.startswith("Fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise ValueError(f"bad field tag {text!r}") from None
        return PrimeField(p)
    raise ValueError(f"bad field tag {text!r}; expected 'Q' or 'Fp:<prime>'")


def _check_field(field: Field, value) -> None:
    if isinstance(field, Rationals):
        if not isinstance(value, Fraction):
            raise FieldMismatchError(f"{value!r} is not an element of Q")
    elif not (isinstance(value, Fp) and value.p == field.p):
        raise FieldMismatchError(f"{value!r} is not an element of {field.tag}")


class Matrix:
    """Immutable sparse matrix; each row is a ``{column: nonzero value}`` dict."""

    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows: Sequence[dict] | None = None):
        if nrows < 0 or ncols < 0:
            raise ShapeError("negative dimension")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ShapeError(f"expected {nrows} rows, got {len(rows)}")
        clean = []
        for row in rows:
            r = {}
            for c, v in row.items():
                if not 0 <= c < ncols:
                    raise ShapeError(f"column {c} out of range for {ncols} columns")
                _check_field(field, v)
                if v:
                    r[c] = v
            clean.append(r)
        self._rows = tuple(clean)

    # -- construction -------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        rows = list(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        out = []
        for row in rows:
            if len(row) != ncols:
                raise ShapeError("ragged rows")
            out.append({c: field(v) for c, v in enumerate(row) if v})
        return cls(field, len(rows), ncols, out)

    @classmethod
    def from_entries(cls, field: Field, nrows: int, ncols: int, entries: dict) -> "Matrix":
        rows = [{} for _ in range(nrows)]
        for (r, c), v in entries.items():
            if not 0 <= r < nrows:
                raise ShapeError(f"row {r} out of range")
            v = field(v)
            if v:
                rows[r][c] = v
        return cls(field, nrows, ncols, rows)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        return cls.from_rows(field, columns, nrows).T

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, [{i: field.one} for i in range(n)])

    # -- access -------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> dict:
        return {(r, c): v for r, row in enumerate(self._rows) for c, v in row.items()}

    def sparse_row(self, i: int) -> dict:
        return dict(self._rows[i])

    def row(self, i: int) -> tuple:
        zero = self.field.zero
        row = self._rows[i]
        return tuple(row.get(c, zero) for c in range(self.ncols))

    def column(self, j: int) -> tuple:
        zero = self.field.zero
        return tuple(row.get(j, zero) for row in self._rows)

    def __getitem__(self, key):
        r, c = key
        return self._rows[r].get(c, self.field.zero)

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.nrows)]

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        return not any(self._rows)

    # -- arithmetic ---------------------------------------------------

    @property
    def T(self) -> "Matrix":
        rows = [{} for _ in range(self.ncols)]
        for r, row in enumerate(self._rows):
            for c, v in row.items():
                rows[c][r] = v
        return Matrix(self.field, self.ncols, self.nrows, rows)

    def _same_field(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.tag} vs {other.field.tag}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"{self.shape} + {other.shape}")
        rows = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            for c, v in b.items():
                r[c] = r.get(c, self.field.zero) + v
            rows.append({c: v for c, v in r.items() if v})
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.nrows, self.ncols, [{c: -v for c, v in row.items()} for row in self._rows])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, s) -> "Matrix":
        s = self.field(s)
        return Matrix(self.field, self.nrows, self.ncols, [{c: s * v for c, v in row.items()} for row in self._rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.ncols != other.nrows:
            raise ShapeError(f"{self.shape} @ {other.shape}")
        zero = self.field.zero
        rows = []
        for a in self._rows:
            acc: dict = {}
            for k, av in a.items():
                for c, bv in other._rows[k].items():
                    acc[c] = acc.get(c, zero) + av * bv
            rows.append({c: v for c, v in acc.items() if v})
        return Matrix(self.field, self.nrows, other.ncols, rows)

    def apply(self, vector: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(vector) != self.ncols:
            raise ShapeError(f"vector of length {len(vector)} for {self.shape} matrix")
        zero = self.field.zero
        out = []
        for row in self._rows:
            s = zero
            for c, v in row.items():
                s = s + v * vector[c]
            out.append(s)
        return tuple(out)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.ncols != other.ncols:
            raise ShapeError("column count differs")
        return Matrix(self.field, self.nrows + other.nrows, self.ncols, self._rows + other._rows)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.nrows != other.nrows:
            raise ShapeError("row count differs")
        off = self.ncols
        rows = [{**a, **{c + off: v for c, v in b.items()}} for a, b in zip(self._rows, other._rows)]
        return Matrix(self.field, self.nrows, self.ncols + other.ncols, rows)

    def rank(self) -> int:
        return len(rref(self)[1])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.field, self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in self.row(i)) for i in range(self.nrows))
        return f"Matrix<{self.field.tag} {self.nrows}x{self.ncols}>[{body}]"


class Echelon:
    """Incremental reduced row echelon form.

    Rows are fed one at a time; the stored basis is always fully reduced and
    each stored row is normalised so its pivot (its leftmost entry) is 1.
    """

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self._pivot_rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self._pivot_rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._pivot_rows)

    def reduce(self, row: dict) -> dict:
        """Return ``row`` reduced against the stored basis (input untouched)."""
        r = dict(row)
        for p in [c for c in r if c in self._pivot_rows]:
            coef = r.get(p)
            if not coef:
                continue
            for c, v in self._pivot_rows[p].items():
                nv = r.get(c, self.field.zero) - coef * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        return r

    def add(self, row: dict) -> bool:
        """Insert ``row``; return True when it enlarged the row space."""
        r = self.reduce(row)
        if not r:
            return False
        p = min(r)
        inv = self.field.one / r[p]
        r = {c: v * inv for c, v in r.items()}
        for q, other in self._pivot_rows.items():
            coef = other.get(p)
            if coef:
                for c, v in r.items():
                    nv = other.get(c, self.field.zero) - coef * v
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
        self._pivot_rows[p] = r
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def rows(self) -> list[dict]:
        return [dict(self._pivot_rows[p]) for p in self.pivots]

    def matrix(self) -> Matrix:
        rows = self.rows()
        return Matrix(self.field, len(rows), self.ncols, rows)

    def null_vectors(self) -> list[tuple]:
        """Basis of {x : row . x = 0 for every stored row}, one vector per free column."""
        field = self.field
        pivots = self.pivots
        pivset = set(pivots)
        out = []
        for f in range(self.ncols):
            if f in pivset:
                continue
            v = [field.zero] * self.ncols
            v[f] = field.one
            for p in pivots:
                coef = self._pivot_rows[p].get(f)
                if coef:
                    v[p] = -coef
            out.append(tuple(v))
        return out


def _dense_to_sparse(vector: Sequence) -> dict:
    return {i: v for i, v in enumerate(vector) if v}


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with zero rows dropped, plus pivot columns.

    >>> m, piv = rref(Matrix.from_rows(QQ, [[1, 1], [0, 0]]))
    >>> m.to_rows(), piv
    ([[Fraction(1, 1), Fraction(1, 1)]], [0])
    """
    ech = Echelon(m.field, m.ncols)
    for i in range(m.nrows):
        ech.add(m.sparse_row(i))
    return ech.matrix(), ech.pivots


def kernel_basis(m: Matrix) -> "SubspaceBasis":
    """Basis of the right null space {v : m v = 0}."""
    ech = Echelon(m.field, m.ncols)
    for i in range(m.nrows):
        ech.add(m.sparse_row(i))
    return SubspaceBasis(m.field, m.ncols, ech.null_vectors())


def solve_linear(a: Matrix, b: Sequence) -> tuple | None:
    """Some x with ``a x = b``, or None when the system is inconsistent."""
    if len(b) != a.nrows:
        raise ShapeError(f"right-hand side of length {len(b)} for {a.shape} matrix")
    field = a.field
    b = [field(v) for v in b]
    n = a.ncols
    ech = Echelon(field, n + 1)
    for i in range(a.nrows):
        row = a.sparse_row(i)
        if b[i]:
            row[n] = b[i]
        ech.add(row)
    if n in ech._pivot_rows:
        return None
    x = [field.zero] * n
    for p in ech.pivots:
        x[p] = ech._pivot_rows[p].get(n, field.zero)
    return tuple(x)


class SubspaceBasis:
    """A subspace of k^n held as the rows of a reduced echelon matrix.

    The vectors passed in may be dependent; they are reduced on construction.
    """

    def __init__(self, field: Field, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.ambient_dim = ambient_dim
        ech = Echelon(field, ambient_dim)
        for v in vectors:
            if len(v) != ambient_dim:
                raise ShapeError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            ech.add({i: field(x) for i, x in enumerate(v) if x})
        self._ech = ech
        zero = field.zero
        self.pivots = tuple(ech.pivots)
        self.vectors = tuple(tuple(r.get(i, zero) for i in range(ambient_dim)) for r in ech.rows())

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "SubspaceBasis":
        return cls(field, ambient_dim)

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "SubspaceBasis":
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim).to_rows())

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return self.dim

    def __iter__(self):
        return iter(self.vectors)

    def contains(self, vector: Sequence) -> bool:
        return self._ech.contains(_dense_to_sparse(vector))

    def coordinates(self, vector: Sequence) -> tuple | None:
        """Coefficients of ``vector`` in this basis, or None when outside."""
        if not self.contains(vector):
            return None
        # reduced echelon: the coefficient of basis row i is the pivot entry
        return tuple(vector[p] for p in self.pivots)

    def as_matrix(self) -> Matrix:
        """Basis vectors as rows."""
        return Matrix.from_rows(self.field, self.vectors, self.ambient_dim)

    def annihilator(self) -> "SubspaceBasis":
        """Orthogonal complement under the standard pairing of k^n with its dual."""
        return SubspaceBasis(self.field, self.ambient_dim, self._ech.null_vectors())

    def _compat(self, other: "SubspaceBasis") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.tag} vs {other.field.tag}")
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError(f"ambient dimensions {self.ambient_dim} and {other.ambient_dim}")

    def __add__(self, other: "SubspaceBasis") -> "SubspaceBasis":
        self._compat(other)
        return SubspaceBasis(self.field, self.ambient_dim, self.vectors + other.vectors)

    def intersection(self, other: "SubspaceBasis") -> "SubspaceBasis":
        self._compat(other)
        # (U ∩ V)^⊥ = U^⊥ + V^⊥
        return (self.annihilator() + other.annihilator()).annihilator()

    def issubspace(self, other: "SubspaceBasis") -> bool:
        self._compat(other)
        return all(other.contains(v) for v in self.vectors)

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return (self.field == other.field and self.ambient_dim == other.ambient_dim
                and self.vectors == other.vectors)

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.vectors))

    def __repr__(self):
        return f"SubspaceBasis<{self.field.tag} dim {self.dim} in {self.ambient_dim}>"


@dataclass(frozen=True)
class SubspaceRelation:
    sum: SubspaceBasis
    intersection: SubspaceBasis
    u_in_v: bool
    v_in_u: bool

    @property
    def equal(self) -> bool:
        return self.u_in_v and self.v_in_u


def subspace_ops(u: SubspaceBasis, v: SubspaceBasis) -> SubspaceRelation:
    """Sum, intersection and containment flags of two subspaces."""
    s = u + v
    i = u.intersection(v)
    return SubspaceRelation(s, i, u_in_v=s.dim == v.dim, v_in_u=s.dim == u.dim)


def vector_is_zero(v: Sequence) -> bool:
    return not any(v)


def vec_add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_scale(s, a: Sequence) -> tuple:
    return tuple(s * x for x in a)


def vec_sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b, strict=True))

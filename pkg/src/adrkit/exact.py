"""Exact linear algebra over Q and prime fields.

Scalars are ``gmpy2.mpq`` over the rationals and plain ``int`` residues over
F_p.  Matrices and subspaces are immutable; a :class:`Subspace` always holds
its basis in reduced row-echelon form, so two subspaces compare equal exactly
when they are the same space.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


class Field:
    """The rationals (``p is None``) or the prime field F_p."""

    __slots__ = ("p", "zero", "one")

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        if p is None:
            self.zero, self.one = mpq(0), mpq(1)
        else:
            self.zero, self.one = 0, 1

    @property
    def tag(self) -> str:
        return "Q" if self.p is None else f"Fp:{self.p}"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __call__(self, x):
        p = self.p
        if p is None:
            if isinstance(x, str):
                return mpq(Fraction(x))
            return mpq(x)
        if isinstance(x, int):
            return x % p
        if isinstance(x, str):
            x = Fraction(x)
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {p}")
        return x.numerator * pow(x.denominator, p - 2, p) % p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / a
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"Field({self.tag})"


QQ = Field()


def parse_field(tag: str) -> Field:
    """``"Q"`` or ``"Fp:<prime>"``."""
    tag = tag.strip()
    if tag == "Q":
        return QQ
    if tag.startswith("Fp:"):
        try:
            p = int(tag[3:])
        except ValueError:
            raise FieldError(f"bad field tag {tag!r}") from None
        return Field(p)
    raise FieldError(f"bad field tag {tag!r}; expected Q or Fp:<prime>")


def fmt_scalar(x) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# row-level kernels (lists of lists, mutated in place)

def _rref_rows(rows: list[list], ncols: int, p: int | None) -> tuple[list[list], list[int]]:
    rows = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            if p is None:
                inv = 1 / lead
                prow = [x * inv for x in prow]
            else:
                inv = pow(lead, p - 2, p)
                prow = [x * inv % p for x in prow]
            rows[r] = prow
        nz = [(k, prow[k]) for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            if p is None:
                for k, b in nz:
                    row[k] -= f * b
            else:
                for k, b in nz:
                    row[k] = (row[k] - f * b) % p
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _reduce(vec: list, basis: Sequence[Sequence], pivots: Sequence[int], p: int | None) -> list:
    """Subtract the RREF basis from ``vec`` (in place); the remainder is zero iff vec is in the span."""
    for row, c in zip(basis, pivots):
        f = vec[c]
        if f:
            if p is None:
                for k in range(len(vec)):
                    b = row[k]
                    if b:
                        vec[k] -= f * b
            else:
                for k in range(len(vec)):
                    b = row[k]
                    if b:
                        vec[k] = (vec[k] - f * b) % p
    return vec


# ---------------------------------------------------------------------------

class Matrix:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def _raw(cls, field, rows, ncols) -> "Matrix":
        m = object.__new__(cls)
        m.field = field
        m.rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m.rows)
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, field, nrows, ncols) -> "Matrix":
        z = field.zero
        return cls._raw(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls._raw(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i) -> tuple:
        return self.rows[i]

    def col(self, j) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.field, [self.col(j) for j in range(self.ncols)], self.nrows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldError("mixed fields")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.field.p
        z = self.field.zero
        n = other.ncols
        brows = other.rows
        out = []
        for r in self.rows:
            acc = [z] * n
            for k, a in enumerate(r):
                if a:
                    for j, b in enumerate(brows[k]):
                        if b:
                            acc[j] += a * b
            if p is not None:
                acc = [x % p for x in acc]
            out.append(acc)
        return Matrix._raw(self.field, out, n)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product."""
        p = self.field.p
        out = []
        for r in self.rows:
            s = self.field.zero
            for a, b in zip(r, vec):
                if a and b:
                    s += a * b
            out.append(s % p if p is not None else s)
        return tuple(out)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch in +")
        p = self.field.p
        rows = [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        if p is not None:
            rows = [[x % p for x in r] for r in rows]
        return Matrix._raw(self.field, rows, self.ncols)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        p = self.field.p
        rows = [[c * x for x in r] for r in self.rows]
        if p is not None:
            rows = [[x % p for x in r] for r in rows]
        return Matrix._raw(self.field, rows, self.ncols)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.shape == other.shape and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix[{self.nrows}x{self.ncols}]({body})"

    def to_lists(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def rank(self) -> int:
        return len(_rref_rows(self.rows, self.ncols, self.field.p)[1])

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        ident = Matrix.identity(self.field, n)
        aug = [list(r) + list(e) for r, e in zip(self.rows, ident.rows)]
        red, piv = _rref_rows(aug, 2 * n, self.field.p)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw(self.field, [r[n:] for r in red[:n]], n)


def hstack(field: Field, mats: Sequence[Matrix], nrows: int) -> Matrix:
    rows = [[] for _ in range(nrows)]
    ncols = 0
    for m in mats:
        if m.nrows != nrows:
            raise ValueError("hstack row mismatch")
        for i, r in enumerate(m.rows):
            rows[i].extend(r)
        ncols += m.ncols
    return Matrix._raw(field, rows, ncols)


def vstack(field: Field, mats: Sequence[Matrix], ncols: int) -> Matrix:
    rows = []
    for m in mats:
        if m.ncols != ncols:
            raise ValueError("vstack column mismatch")
        rows.extend(m.rows)
    return Matrix._raw(field, rows, ncols)


def block_diag(field: Field, mats: Sequence[Matrix]) -> Matrix:
    ncols = sum(m.ncols for m in mats)
    z = field.zero
    rows = []
    off = 0
    for m in mats:
        for r in m.rows:
            rows.append([z] * off + list(r) + [z] * (ncols - off - m.ncols))
        off += m.ncols
    return Matrix._raw(field, rows, ncols)


def rref_with_pivots(m: Matrix) -> tuple[Matrix, list[int]]:
    rows, piv = _rref_rows(m.rows, m.ncols, m.field.p)
    return Matrix._raw(m.field, rows, m.ncols), piv


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form, zero rows dropped."""
    return rref_with_pivots(m)[0]


def rank(m: Matrix) -> int:
    return m.rank()


# ---------------------------------------------------------------------------

class Subspace:
    """A subspace of K^n stored by its canonical (RREF) basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        rows, piv = _rref_rows([[field(x) for x in v] for v in vectors], ambient_dim, field.p)
        for r in rows:
            if len(r) != ambient_dim:
                raise ValueError("vector length differs from ambient dimension")
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in rows)
        self.pivots = tuple(piv)

    @classmethod
    def _from_rref(cls, field, n, rows, pivots) -> "Subspace":
        s = object.__new__(cls)
        s.field = field
        s.ambient_dim = n
        s.basis = tuple(tuple(r) for r in rows)
        s.pivots = tuple(pivots)
        return s

    @classmethod
    def zero(cls, field, n) -> "Subspace":
        return cls._from_rref(field, n, (), ())

    @classmethod
    def full(cls, field, n) -> "Subspace":
        return cls._from_rref(field, n, Matrix.identity(field, n).rows, range(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def as_matrix(self) -> Matrix:
        return Matrix._raw(self.field, self.basis, self.ambient_dim)

    def reduce(self, v: Sequence) -> list:
        return _reduce(list(v), self.basis, self.pivots, self.field.p)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` in the canonical basis (its values at the pivots)."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return tuple(v[c] for c in self.pivots)

    def combine(self, coords: Sequence) -> tuple:
        p = self.field.p
        out = [self.field.zero] * self.ambient_dim
        for c, row in zip(coords, self.basis):
            if c:
                for k, b in enumerate(row):
                    if b:
                        out[k] += c * b
        if p is not None:
            out = [x % p for x in out]
        return tuple(out)

    def __add__(self, other: "Subspace") -> "Subspace":
        _same_ambient(self, other)
        return Subspace(self.field, self.ambient_dim, self.basis + other.basis)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __le__(self, other: "Subspace") -> bool:
        _same_ambient(self, other)
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.field == other.field and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _same_ambient(u: Subspace, v: Subspace):
    if u.ambient_dim != v.ambient_dim:
        raise ValueError(f"ambient mismatch: {u.ambient_dim} vs {v.ambient_dim}")
    if u.field != v.field:
        raise FieldError("mixed fields")


def nullspace(m: Matrix) -> Subspace:
    """Right kernel {x : m x = 0}."""
    field, n = m.field, m.ncols
    rows, piv = _rref_rows(m.rows, n, field.p)
    pivset = set(piv)
    vecs = []
    for f in range(n):
        if f in pivset:
            continue
        v = [field.zero] * n
        v[f] = field.one
        for r, c in zip(rows, piv):
            if r[f]:
                v[c] = -r[f] if field.p is None else (-r[f]) % field.p
        vecs.append(v)
    return Subspace(field, n, vecs)


def column_space(m: Matrix) -> Subspace:
    return Subspace(m.field, m.nrows, m.columns())


def intersect(u: Subspace, v: Subspace) -> Subspace:
    _same_ambient(u, v)
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(u.field, u.ambient_dim)
    qu, _ = quotient_map(u.ambient_dim, u)
    qv, _ = quotient_map(v.ambient_dim, v)
    return nullspace(vstack(u.field, [qu, qv], u.ambient_dim))


def quotient_map(ambient_dim: int, w: Subspace) -> tuple[Matrix, int]:
    """Surjection K^n -> K^(n - dim w) with kernel exactly ``w``.

    The quotient is identified with the span of the non-pivot coordinates of
    ``w``; coordinate ``c`` of the image of ``x`` is entry ``c`` of ``x``
    reduced modulo ``w``.
    """
    if w.ambient_dim != ambient_dim:
        raise ValueError("ambient mismatch")
    field = w.field
    p = field.p
    pivset = set(w.pivots)
    free = [c for c in range(ambient_dim) if c not in pivset]
    rows = []
    for c in free:
        r = [field.zero] * ambient_dim
        r[c] = field.one
        for brow, pc in zip(w.basis, w.pivots):
            if brow[c]:
                r[pc] = -brow[c] if p is None else (-brow[c]) % p
        rows.append(r)
    return Matrix._raw(field, rows, ambient_dim), len(free)


def complement_lift(ambient_dim: int, w: Subspace) -> Matrix:
    """Right inverse of :func:`quotient_map`: quotient coordinate k lifts to a unit vector."""
    pivset = set(w.pivots)
    free = [c for c in range(ambient_dim) if c not in pivset]
    field = w.field
    cols = []
    for c in free:
        v = [field.zero] * ambient_dim
        v[c] = field.one
        cols.append(v)
    return Matrix.from_columns(field, cols, ambient_dim)


def preimage(m: Matrix, s: Subspace) -> Subspace:
    """{x : m x in s}."""
    if s.ambient_dim != m.nrows:
        raise ValueError("ambient mismatch")
    q, _ = quotient_map(m.nrows, s)
    if q.nrows == 0:
        return Subspace.full(m.field, m.ncols)
    return nullspace(q @ m)


def image_of(m: Matrix, s: Subspace) -> Subspace:
    """m(s)."""
    return Subspace(m.field, m.nrows, [m.apply(v) for v in s.basis])


class EchelonBuilder:
    """Incrementally grown RREF basis; :meth:`add` reports whether a vector was new."""

    def __init__(self, field: Field, n: int):
        self.field = field
        self.n = n
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def add(self, v: Sequence) -> bool:
        p = self.field.p
        r = _reduce([self.field(x) for x in v], self.rows, self.pivots, p)
        c = next((k for k, x in enumerate(r) if x), None)
        if c is None:
            return False
        inv = self.field.inv(r[c])
        r = [x * inv for x in r] if p is None else [x * inv % p for x in r]
        for row in self.rows:
            f = row[c]
            if f:
                for k, b in enumerate(r):
                    if b:
                        row[k] = row[k] - f * b if p is None else (row[k] - f * b) % p
        # keep pivots sorted so the stored rows are a genuine RREF
        idx = 0
        while idx < len(self.pivots) and self.pivots[idx] < c:
            idx += 1
        self.rows.insert(idx, r)
        self.pivots.insert(idx, c)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)

    def subspace(self) -> Subspace:
        return Subspace._from_rref(self.field, self.n, self.rows, self.pivots)


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """One solution x of m x = b (free variables zero), or None."""
    field = m.field
    aug = [list(r) + [field(bi)] for r, bi in zip(m.rows, b)]
    rows, piv = _rref_rows(aug, m.ncols + 1, field.p)
    if piv and piv[-1] == m.ncols:
        return None
    x = [field.zero] * m.ncols
    for r, c in zip(rows, piv):
        x[c] = r[-1]
    return tuple(x)

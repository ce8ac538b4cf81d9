"""Exact linear algebra over the rationals and over prime fields.

Every rank, kernel, and solve in this package runs through this module, so
there is deliberately no floating point anywhere.  Values are immutable and
all operations are pure functions, which makes concurrent evaluation of
independent matrices safe.

Scalars are represented by ``fractions.Fraction`` over the rationals and by
canonical integers in ``[0, p)`` over a prime field.  Matrices are small and
dense; a sparse column-reduction routine is provided separately for the large
boundary-membership problems that arise in big multidegree strands.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class LinAlgError(ValueError):
    """Dimension mismatch or violated precondition in a linear-algebra call."""


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: the rationals (``char == 0``) or F_p for prime p."""

    char: int = 0

    def __post_init__(self):
        if self.char != 0 and not _is_prime(self.char):
            raise ValueError(f"field characteristic must be 0 or a prime, got {self.char}")

    @property
    def is_rational(self):
        return self.char == 0

    def of(self, x):
        """Coerce an int or Fraction to a canonical element of this field."""
        p = self.char
        if p == 0:
            return x if isinstance(x, Fraction) else Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise LinAlgError(f"denominator of {x} is not invertible mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def add(self, a, b):
        return a + b if self.char == 0 else (a + b) % self.char

    def sub(self, a, b):
        return a - b if self.char == 0 else (a - b) % self.char

    def mul(self, a, b):
        return a * b if self.char == 0 else (a * b) % self.char

    def neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.char == 0 else pow(a, -1, self.char)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def __str__(self):
        return "Q" if self.char == 0 else f"F_{self.char}"


QQ = Field(0)
GF2 = Field(2)
GF3 = Field(3)


def parse_field(text):
    """Parse a field name: ``q`` for the rationals or ``fp:<prime>``."""
    t = text.strip().lower()
    if t in ("q", "qq", "0"):
        return QQ
    if t.startswith("fp:"):
        return Field(int(t[3:]))
    raise ValueError(f"unrecognized field {text!r}; use 'q' or 'fp:<prime>'")


@dataclass(frozen=True)
class Matrix:
    """Dense matrix with canonical entries over a fixed field."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    @classmethod
    def from_rows(cls, field, rows):
        rows = tuple(tuple(field.of(x) for x in r) for r in rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise LinAlgError("ragged rows")
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, field, columns, nrows):
        cols = [tuple(field.of(x) for x in c) for c in columns]
        if any(len(c) != nrows for c in cols):
            raise LinAlgError("column length mismatch")
        rows = tuple(tuple(c[i] for c in cols) for i in range(nrows))
        return cls(field, nrows, len(cols), rows)

    @classmethod
    def zero(cls, field, rows, cols):
        z = field.zero()
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero(), field.one()
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    def entry(self, i, j):
        return self.entries[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def apply(self, vec):
        """Matrix-vector product; ``vec`` has length ``cols``."""
        if len(vec) != self.cols:
            raise LinAlgError(f"vector length {len(vec)} != cols {self.cols}")
        f = self.field
        out = []
        for r in self.entries:
            acc = f.zero()
            for a, x in zip(r, vec):
                if a != 0 and x != 0:
                    acc = f.add(acc, f.mul(a, x))
            out.append(acc)
        return tuple(out)

    def is_zero(self):
        return all(x == 0 for r in self.entries for x in r)


@dataclass(frozen=True)
class RrefResult:
    rank: int
    pivots: tuple
    reduced: Matrix


def rref(m):
    """Reduced row echelon form; returns (rank, pivot columns, reduced matrix).

    Pivoting is deterministic: the first nonzero entry from the top of each
    column wins, so results depend only on the input ordering.
    """
    f = m.field
    R = [list(r) for r in m.entries]
    pivots = []
    pr = 0
    for c in range(m.cols):
        pv = None
        for r in range(pr, m.rows):
            if R[r][c] != 0:
                pv = r
                break
        if pv is None:
            continue
        if pv != pr:
            R[pr], R[pv] = R[pv], R[pr]
        inv = f.inv(R[pr][c])
        if inv != 1:
            R[pr] = [f.mul(inv, x) for x in R[pr]]
        for r in range(m.rows):
            if r != pr and R[r][c] != 0:
                fac = R[r][c]
                row, prow = R[r], R[pr]
                R[r] = [f.sub(x, f.mul(fac, y)) for x, y in zip(row, prow)]
        pivots.append(c)
        pr += 1
        if pr == m.rows:
            break
    reduced = Matrix(f, m.rows, m.cols, tuple(tuple(r) for r in R))
    return RrefResult(len(pivots), tuple(pivots), reduced)


def rank(m):
    return rref(m).rank


def kernel_basis(m):
    """Basis of the right kernel {v : m v = 0}, one vector per free column."""
    f = m.field
    res = rref(m)
    pivset = set(res.pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [f.zero()] * m.cols
        v[free] = f.one()
        for i, p in enumerate(res.pivots):
            v[p] = f.neg(res.reduced.entry(i, free))
        basis.append(tuple(v))
    return basis


def solve(m, rhs):
    """Some x with m x = rhs, or None.

    Free variables are set to zero (the pivot solution), so the choice is
    deterministic given the column order.
    """
    if len(rhs) != m.rows:
        raise LinAlgError(f"rhs length {len(rhs)} != rows {m.rows}")
    f = m.field
    aug = Matrix.from_rows(f, [list(r) + [b] for r, b in zip(m.entries, rhs)])
    res = rref(aug)
    if m.cols in res.pivots:
        return None
    x = [f.zero()] * m.cols
    for i, p in enumerate(res.pivots):
        x[p] = res.reduced.entry(i, m.cols)
    return tuple(x)


class Echelon:
    """Incremental row-echelon accumulator used to pick independent vectors.

    Vectors are reduced against the rows absorbed so far; ``absorb`` returns
    True when the vector was independent of the current span.  Greedy and
    deterministic, which fixes all basis choices downstream.
    """

    def __init__(self, field):
        self.field = field
        self.rows = {}  # pivot index -> normalized reduced row (list)

    def reduce(self, vec):
        f = self.field
        v = list(vec)
        for p in sorted(self.rows):
            if v[p] != 0:
                fac = v[p]
                row = self.rows[p]
                v = [f.sub(x, f.mul(fac, y)) for x, y in zip(v, row)]
        return v

    def absorb(self, vec):
        f = self.field
        v = self.reduce(vec)
        for p, x in enumerate(v):
            if x != 0:
                inv = f.inv(x)
                if inv != 1:
                    v = [f.mul(inv, y) for y in v]
                self.rows[p] = v
                return True
        return False

    @property
    def rank(self):
        return len(self.rows)


def extend_independent(field, base, candidates):
    """Indices of candidates that greedily extend span(base) to span(base+candidates)."""
    ech = Echelon(field)
    for v in base:
        ech.absorb(v)
    chosen = []
    for i, v in enumerate(candidates):
        if ech.absorb(v):
            chosen.append(i)
    return chosen


def quotient_coordinates(field, cycles, boundaries, v):
    """Coordinates of v in a fixed basis of span(cycles)/span(boundaries).

    The quotient basis consists of the cycles that greedily extend the span of
    the boundaries (in the given order).  Returns the zero vector exactly when
    v lies in span(boundaries); raises if v is not in span(cycles).
    """
    chosen = extend_independent(field, boundaries, cycles)
    rep = [cycles[i] for i in chosen]
    n = len(v)
    columns = list(boundaries) + rep
    if not columns:
        if any(x != 0 for x in v):
            raise LinAlgError("vector not in the span of the cycles")
        return ()
    mat = Matrix.from_columns(field, columns, n)
    x = solve(mat, tuple(field.of(c) for c in v))
    if x is None:
        raise LinAlgError("vector not in the span of the cycles")
    return tuple(x[len(boundaries):])


def sparse_reduce_columns(field, columns):
    """Eliminate sparse columns (dicts key -> coeff); returns pivot table.

    The pivot table maps a key to a normalized column whose minimal key it is.
    Keys must be totally ordered.  Column processing order only affects speed,
    never the resulting span.
    """
    pivots = {}
    for col in sorted(columns, key=lambda c: (len(c), min(c) if c else 0)):
        col = {k: x for k, x in col.items() if x != 0}
        col = _sparse_reduce(field, pivots, col)
        if col:
            lead = min(col)
            inv = field.inv(col[lead])
            if inv != 1:
                col = {k: field.mul(inv, x) for k, x in col.items()}
            pivots[lead] = col
    return pivots


def _sparse_reduce(field, pivots, col):
    while col:
        lead = min(col)
        piv = pivots.get(lead)
        if piv is None:
            return col
        fac = col[lead]
        for k, x in piv.items():
            nv = field.sub(col.get(k, field.zero()), field.mul(fac, x))
            if nv == 0:
                col.pop(k, None)
            else:
                col[k] = nv
    return col


def sparse_in_span(field, columns, rhs):
    """Whether the sparse vector rhs lies in the span of the sparse columns."""
    rhs = {k: field.of(x) for k, x in rhs.items() if x != 0}
    if not rhs:
        return True
    pivots = sparse_reduce_columns(field, columns)
    return not _sparse_reduce(field, pivots, dict(rhs))

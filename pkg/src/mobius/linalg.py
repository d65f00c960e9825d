"""Exact dense linear algebra over the rationals and prime fields.

Matrices act on column vectors.  Elimination runs on sparse row dictionaries
with a fixed pivot rule (lowest column first, rows in input order), so every
basis returned here is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FieldMismatch, InconsistentSystem, NotAComplex, ShapeMismatch


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "rationals"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == "prime":
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    def coerce(self, x):
        """Convert an int, Fraction or ``"p/q"`` string into a field scalar."""
        if isinstance(x, bool):
            raise TypeError("booleans are not field scalars")
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, float):
            raise TypeError("floating point entries are not exact")
        if self.kind == "rationals":
            return Fraction(x)
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {self.p}")
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.kind == "rationals" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "rationals" else 1

    def to_json(self) -> dict:
        return {"kind": "rationals"} if self.kind == "rationals" else {"kind": "prime", "p": self.p}

    def __str__(self):
        return "QQ" if self.kind == "rationals" else f"GF({self.p})"


QQ = FieldSpec.rationals()


@dataclass(frozen=True)
class Matrix:
    """Immutable ``rows x cols`` matrix of exact field scalars (row-major)."""

    field: FieldSpec
    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ShapeMismatch(f"entries do not form a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ShapeMismatch("column count is ambiguous for a matrix with no rows")
            cols = len(rows[0])
        c = field.coerce
        return cls(field, len(rows), cols, tuple(tuple(c(x) for x in r) for r in rows))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    @property
    def T(self) -> "Matrix":
        if self.rows == 0:
            return Matrix.zeros(self.field, self.cols, 0)
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.data)))

    def is_zero(self) -> bool:
        return all(not x for r in self.data for x in r)

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        return self._map(lambda x: x * c)

    def __neg__(self) -> "Matrix":
        return self._map(lambda x: -x)

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        data = tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.data, other.data))
        return Matrix(self.field, self.rows, self.cols, data)._reduced()

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return compose(self, other)

    def rows_of(self, idx: Iterable[int]) -> "Matrix":
        data = tuple(self.data[i] for i in idx)
        return Matrix(self.field, len(data), self.cols, data)

    def cols_of(self, idx: Iterable[int]) -> "Matrix":
        idx = list(idx)
        return Matrix(self.field, self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.data))

    def tolist(self) -> list:
        return [list(r) for r in self.data]

    def to_json(self) -> list:
        """Row-major array of ints, or ``"p/q"`` strings for non-integers."""
        def enc(x):
            if isinstance(x, Fraction) and x.denominator != 1:
                return f"{x.numerator}/{x.denominator}"
            return int(x)

        return [[enc(x) for x in r] for r in self.data]

    def _map(self, fn) -> "Matrix":
        data = tuple(tuple(fn(x) for x in r) for r in self.data)
        return Matrix(self.field, self.rows, self.cols, data)._reduced()

    def _reduced(self) -> "Matrix":
        if not self.field.is_prime:
            return self
        p = self.field.p
        return Matrix(self.field, self.rows, self.cols, tuple(tuple(x % p for x in r) for r in self.data))

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols}, {self.tolist()})"


def _same_shape(f: Matrix, g: Matrix):
    if f.field != g.field:
        raise FieldMismatch(f"{f.field} vs {g.field}")
    if f.shape != g.shape:
        raise ShapeMismatch(f"{f.shape} vs {g.shape}")


def compose(f: Matrix, g: Matrix) -> Matrix:
    """The product ``f g`` (apply ``g`` first)."""
    if f.field != g.field:
        raise FieldMismatch(f"cannot compose over {f.field} and {g.field}")
    if g.rows != f.cols:
        raise ShapeMismatch(f"cannot compose {f.rows}x{f.cols} after {g.rows}x{g.cols}")
    z = f.field.zero
    gcols = [dict((i, x) for i, x in enumerate(col) if x) for col in zip(*g.data)] if g.rows else [
        {} for _ in range(g.cols)
    ]
    out = []
    p = f.field.p
    for r in f.data:
        nz = [(i, x) for i, x in enumerate(r) if x]
        row = []
        for col in gcols:
            s = z
            for i, x in nz:
                y = col.get(i)
                if y:
                    s += x * y
            row.append(s % p if p else s)
        out.append(tuple(row))
    return Matrix(f.field, f.rows, g.cols, tuple(out))


def block_matrix(field: FieldSpec, row_sizes: Sequence[int], col_sizes: Sequence[int], blocks: dict) -> Matrix:
    """Assemble a matrix from ``{(i, j): Matrix}`` blocks; missing blocks are zero."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    z = field.zero
    data = [[z] * coff[-1] for _ in range(roff[-1])]
    for (i, j), b in blocks.items():
        if b.shape != (row_sizes[i], col_sizes[j]):
            raise ShapeMismatch(f"block {(i, j)} has shape {b.shape}")
        r0, c0 = roff[i], coff[j]
        for bi, brow in enumerate(b.data):
            target = data[r0 + bi]
            for bj, x in enumerate(brow):
                if x:
                    target[c0 + bj] += x
    if field.is_prime:
        data = [[x % field.p for x in r] for r in data]
    return Matrix(field, roff[-1], coff[-1], tuple(tuple(r) for r in data))


def _rref(field: FieldSpec, rows: Iterable[dict]) -> dict:
    """Reduced row echelon form of sparse rows.

    Returns ``{pivot column: row}`` with each row normalised to 1 at its pivot
    and zero at every other pivot column.
    """
    p = field.p
    pivots: dict = {}
    for row in rows:
        if p:
            r = {k: v % p for k, v in row.items() if v % p}
        else:
            r = {k: v for k, v in row.items() if v}
        for c in [c for c in r if c in pivots]:
            v = r.pop(c)
            for k, w in pivots[c].items():
                if k == c:
                    continue
                nv = r.get(k, 0) - v * w
                if p:
                    nv %= p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        if not r:
            continue
        pc = min(r)
        inv = pow(r[pc], -1, p) if p else 1 / r[pc]
        r = {k: (v * inv % p if p else v * inv) for k, v in r.items()}
        for c, prow in pivots.items():
            v = prow.get(pc)
            if not v:
                continue
            for k, w in r.items():
                nv = prow.get(k, 0) - v * w
                if p:
                    nv %= p
                if nv:
                    prow[k] = nv
                else:
                    prow.pop(k, None)
        pivots[pc] = r
    return pivots


def _sparse_rows(m: Matrix) -> list:
    return [{j: x for j, x in enumerate(r) if x} for r in m.data]


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref(m.field, _sparse_rows(m)))


def sparse_kernel(field: FieldSpec, rows: Iterable[dict], ncols: int) -> list:
    """Kernel vectors (as lists) of the matrix given by sparse rows."""
    pivots = _rref(field, rows)
    z, o = field.zero, field.one
    p = field.p
    out = []
    for j in range(ncols):
        if j in pivots:
            continue
        v = [z] * ncols
        v[j] = o
        for c, row in pivots.items():
            w = row.get(j)
            if w:
                v[c] = (-w) % p if p else -w
        out.append(v)
    return out


def kernel_basis(m: Matrix) -> Matrix:
    """Matrix whose columns form a basis of ``{v : m v = 0}``.

    The basis vector for free column ``j`` has a 1 at ``j`` and zeros at the
    other free columns, so coordinates of a kernel vector can be read off its
    free entries.
    """
    cols = sparse_kernel(m.field, _sparse_rows(m), m.cols)
    if not cols:
        return Matrix.zeros(m.field, m.cols, 0)
    return Matrix(m.field, m.cols, len(cols), tuple(zip(*cols)))


def cokernel_projection(m: Matrix) -> Matrix:
    """Surjection ``q`` out of the codomain of ``m`` whose kernel is ``im m``."""
    return kernel_basis(m.T).T


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Some ``x`` with ``a x = b`` (free variables set to zero)."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if a.rows != b.rows:
        raise ShapeMismatch(f"cannot solve {a.shape} against {b.shape}")
    n = a.cols
    rows = []
    for ra, rb in zip(a.data, b.data):
        r = {j: x for j, x in enumerate(ra) if x}
        r.update({n + j: x for j, x in enumerate(rb) if x})
        rows.append(r)
    pivots = _rref(a.field, rows)
    if any(c >= n for c in pivots):
        raise InconsistentSystem("right-hand side is not in the column space")
    z = a.field.zero
    x = [[z] * b.cols for _ in range(n)]
    for c, row in pivots.items():
        for k, w in row.items():
            if k >= n:
                x[c][k - n] = w
    return Matrix(a.field, n, b.cols, tuple(tuple(r) for r in x))


def is_invertible(m: Matrix) -> bool:
    return m.rows == m.cols and rank(m) == m.rows


def cohomology_dim(delta_in: Matrix, delta_out: Matrix) -> int:
    """``dim ker(delta_out) - rank(delta_in)`` at the degree between the two maps."""
    if delta_in.rows != delta_out.cols:
        raise ShapeMismatch(f"{delta_in.shape} does not feed into {delta_out.shape}")
    if not compose(delta_out, delta_in).is_zero():
        raise NotAComplex("consecutive coboundaries do not compose to zero")
    return delta_out.cols - rank(delta_out) - rank(delta_in)

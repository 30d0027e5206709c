"""Dense exact linear algebra plus a sparse echelon span for rank counting.

The dense Matrix operations (rref / kernel / solve) are the audit-grade
reference path.  Length computations elsewhere funnel through SpanBasis,
which keeps vectors sparse so graded problems fall apart into their degree
blocks without any bookkeeping.
"""

from __future__ import annotations

from .field import Field


class Matrix:
    """Immutable dense matrix over an exact field; entries row-major."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, field, n):
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, field, m, n):
        z = field.zero
        return cls(field, [[z] * n for _ in range(m)])

    @classmethod
    def from_int_rows(cls, field, rows):
        return cls(field, [[field.from_int(a) for a in r] for r in rows])

    def transpose(self):
        if not self.rows:
            return self
        return Matrix(self.field, list(zip(*self.rows)))

    def mul_vec(self, v):
        F = self.field
        out = []
        for row in self.rows:
            s = F.zero
            for a, x in zip(row, v):
                if a != F.zero and x != F.zero:
                    s = F.add(s, F.mul(a, x))
            out.append(s)
        return tuple(out)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        F = self.field
        cols = other.transpose().rows
        return Matrix(F, [[_dot(F, row, col) for col in cols] for row in self.rows])

    def add(self, other: "Matrix") -> "Matrix":
        F = self.field
        return Matrix(F, [[F.add(a, b) for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.rows, other.rows)])

    def scale(self, c) -> "Matrix":
        F = self.field
        return Matrix(F, [[F.mul(c, a) for a in r] for r in self.rows])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field.name})"


def _dot(F, u, v):
    s = F.zero
    for a, b in zip(u, v):
        if a != F.zero and b != F.zero:
            s = F.add(s, F.mul(a, b))
    return s


def rref(A: Matrix):
    """Reduced row-echelon form.  Returns (R, rank, pivot column tuple)."""
    F = A.field
    rows = [list(r) for r in A.rows]
    m, n = A.nrows, A.ncols
    pivots = []
    pr = 0
    for pc in range(n):
        pivot_row = None
        for i in range(pr, m):
            if rows[i][pc] != F.zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        inv = F.inv(rows[pr][pc])
        rows[pr] = [F.mul(inv, a) for a in rows[pr]]
        for i in range(m):
            if i != pr and rows[i][pc] != F.zero:
                f = rows[i][pc]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[pr])]
        pivots.append(pc)
        pr += 1
        if pr == m:
            break
    return Matrix(F, rows), len(pivots), tuple(pivots)


def rank(A: Matrix) -> int:
    return rref(A)[1]


def kernel(A: Matrix):
    """Basis of the right null space as a list of column vectors (tuples)."""
    F = A.field
    R, rk, pivots = rref(A)
    n = A.ncols
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for j in free:
        v = [F.zero] * n
        v[j] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R.rows[i][j])
        basis.append(tuple(v))
    return basis


def solve(A: Matrix, b):
    """Some x with A x = b, or None when the system is inconsistent."""
    F = A.field
    if len(b) != A.nrows:
        raise ValueError("dimension mismatch")
    if A.nrows == 0:
        return tuple([F.zero] * A.ncols)
    aug = Matrix(F, [list(r) + [bv] for r, bv in zip(A.rows, b)])
    R, rk, pivots = rref(aug)
    if A.ncols in pivots:  # pivot in the constant column
        return None
    x = [F.zero] * A.ncols
    for i, pc in enumerate(pivots):
        x[pc] = R.rows[i][A.ncols]
    return tuple(x)


def _sub_into(F, v: dict, f, row: dict):
    """v -= f * row, dropping zeros; mutates and returns v."""
    for k, c in row.items():
        nv = F.sub(v.get(k, F.zero), F.mul(f, c))
        if nv == F.zero:
            v.pop(k, None)
        else:
            v[k] = nv
    return v


class SpanBasis:
    """Incremental echelon basis of sparse vectors (dict index -> coefficient).

    Rows are monic at their pivot (least index).  Disjointly supported inputs
    never interact, so graded systems reduce blockwise for free.
    """

    __slots__ = ("field", "pivot_rows")

    def __init__(self, field: Field):
        self.field = field
        self.pivot_rows: dict = {}

    @property
    def dim(self) -> int:
        return len(self.pivot_rows)

    def clone(self) -> "SpanBasis":
        other = SpanBasis(self.field)
        other.pivot_rows = {p: dict(row) for p, row in self.pivot_rows.items()}
        return other

    def reduce(self, vec: dict) -> dict:
        """Residual of vec modulo the span; vec is not mutated."""
        F = self.field
        v = {k: c for k, c in vec.items() if c != F.zero}
        while v:
            p = min(v)
            row = self.pivot_rows.get(p)
            if row is None:
                return v
            _sub_into(F, v, v[p], row)
        return v

    def add(self, vec: dict) -> bool:
        """Insert vec; True when it enlarged the span."""
        F = self.field
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        inv = F.inv(r[p])
        self.pivot_rows[p] = {k: F.mul(inv, c) for k, c in r.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def coords(self, vec: dict):
        """Coefficients of vec on the stored pivot rows, or None if outside.

        The returned dict maps pivot index -> coefficient, so that
        vec = sum coeff * pivot_rows[pivot].
        """
        F = self.field
        v = {k: c for k, c in vec.items() if c != F.zero}
        out = {}
        while v:
            p = min(v)
            row = self.pivot_rows.get(p)
            if row is None:
                return None
            out[p] = v[p]
            _sub_into(F, v, v[p], row)
        return out


def sparse_rank(field: Field, vectors) -> int:
    """Rank of the span of sparse vectors."""
    span = SpanBasis(field)
    for v in vectors:
        span.add(v)
    return span.dim


def sparse_kernel(field: Field, columns):
    """Kernel of e_j -> columns[j] for sparse column dicts.

    Returns a basis of {a : sum_j a_j columns[j] = 0} as sparse dicts {j: a_j}.
    """
    F = field
    span = SpanBasis(F)
    history: dict = {}  # pivot -> expression of that row in input columns
    out = []
    for j, col in enumerate(columns):
        v = {k: c for k, c in col.items() if c != F.zero}
        expr = {j: F.one}
        while v:
            p = min(v)
            row = span.pivot_rows.get(p)
            if row is None:
                break
            f = v[p]
            _sub_into(F, v, f, row)
            _sub_into(F, expr, f, history[p])
        if not v:
            out.append(expr)
        else:
            p = min(v)
            inv = F.inv(v[p])
            span.pivot_rows[p] = {k: F.mul(inv, c) for k, c in v.items()}
            history[p] = {k: F.mul(inv, c) for k, c in expr.items()}
    return out

"""Dense matrices over an exact number field or float64, spans, and eigensolvers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .fields import QQ, FieldElement, NumberField

_INT64_LIMIT = 2**62


class DomainMismatchError(TypeError):
    """Exact and float matrices were combined."""


class ShapeError(ValueError):
    pass


class NotSymmetricError(ValueError):
    pass


class ResidualError(ArithmeticError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class ToleranceContext:
    rank_rtol: float = 1e-9
    cluster_rtol: float = 1e-7
    residual: float = 1e-8

    def __post_init__(self):
        if min(self.rank_rtol, self.cluster_rtol, self.residual) <= 0:
            raise ValueError("tolerances must be strictly positive")
        if self.cluster_rtol < self.rank_rtol:
            raise ValueError("clustering width must be at least the rank threshold")


DEFAULT_TOL = ToleranceContext()


# ---------------------------------------------------------------- integers

def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return int(max(a.max(), -a.min()))
    return int(np.max(np.abs(a)))


def _shrink(a: np.ndarray) -> np.ndarray:
    if a.dtype == object and _maxabs(a) < _INT64_LIMIT:
        return a.astype(np.int64)
    return a


def _grow(a: np.ndarray) -> np.ndarray:
    return a if a.dtype == object else a.astype(object)


def imatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer matrix product, int64 when provably safe."""
    inner = max(a.shape[-1], 1)
    if a.dtype != object and b.dtype != object and _maxabs(a) * _maxabs(b) * inner < _INT64_LIMIT:
        return a @ b
    return _shrink(_grow(a) @ _grow(b))


def imul(a: np.ndarray, b) -> np.ndarray:
    """Exact elementwise product; ``b`` may be an array or a Python int."""
    bm = abs(int(b)) if not isinstance(b, np.ndarray) else _maxabs(b)
    b_obj = isinstance(b, np.ndarray) and b.dtype == object
    if a.dtype != object and not b_obj and _maxabs(a) * bm < _INT64_LIMIT:
        return a * (np.int64(b) if not isinstance(b, np.ndarray) else b)
    return _shrink(_grow(a) * (int(b) if not isinstance(b, np.ndarray) else _grow(b)))


def iadd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype != object and b.dtype != object and _maxabs(a) + _maxabs(b) < _INT64_LIMIT:
        return a + b
    return _shrink(_grow(a) + _grow(b))


def icontent(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return math.gcd(*(int(x) for x in a.flat))
    return int(np.gcd.reduce(a.ravel()))


# ---------------------------------------------------------------- matrices

class Matrix:
    """Common surface of exact and float matrices."""

    domain: str
    shape: tuple

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected a Matrix, got {type(other).__name__}")
        if other.domain != self.domain:
            raise DomainMismatchError(f"cannot combine {self.domain} and {other.domain} matrices")

    @property
    def n(self) -> int:
        return self.shape[0]


class ExactMatrix(Matrix):
    """Matrix over a number field K = Q(a).

    Entries are ``(sum_k num[k] * a**k) / den`` with integer arrays ``num``.
    """

    domain = "exact"
    __slots__ = ("field", "num", "den", "shape")

    def __init__(self, field: NumberField, num: np.ndarray, den: int = 1, _normalized=False):
        if num.ndim != 3 or num.shape[0] != field.degree:
            raise ShapeError("numerator must have shape (degree, rows, cols)")
        self.field = field
        self.shape = num.shape[1:]
        if not _normalized:
            num = _shrink(num) if num.dtype == object else num.astype(np.int64, copy=False)
            den = int(den)
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if den < 0:
                num, den = imul(num, -1), -den
            g = math.gcd(icontent(num), den)
            if g > 1:
                num = num // g
                den //= g
        self.num = num
        self.den = den

    # construction
    @classmethod
    def from_ints(cls, a, field: NumberField = QQ) -> "ExactMatrix":
        arr = np.asarray(a)
        if arr.dtype != object:
            arr = arr.astype(np.int64)
        num = np.zeros((field.degree,) + arr.shape, dtype=arr.dtype)
        num[0] = arr
        return cls(field, num, 1)

    @classmethod
    def from_fractions(cls, rows, field: NumberField = QQ) -> "ExactMatrix":
        fr = [[Fraction(x) for x in row] for row in rows]
        den = reduce(math.lcm, (x.denominator for row in fr for x in row), 1)
        arr = np.array([[int(x * den) for x in row] for row in fr], dtype=object)
        if arr.ndim != 2:
            arr = arr.reshape(len(fr), -1)
        return cls.from_ints(arr, field) * Fraction(1, den)

    @classmethod
    def identity(cls, n: int, field: NumberField = QQ) -> "ExactMatrix":
        return cls.from_ints(np.eye(n, dtype=np.int64), field)

    @classmethod
    def zeros(cls, r: int, c: int, field: NumberField = QQ) -> "ExactMatrix":
        return cls(field, np.zeros((field.degree, r, c), dtype=np.int64), 1, _normalized=True)

    @classmethod
    def diagonal_matrix(cls, values: Sequence, field: NumberField = QQ) -> "ExactMatrix":
        n = len(values)
        vals = [field(v) for v in values]
        den = reduce(math.lcm, (c.denominator for v in vals for c in v.c), 1)
        num = np.zeros((field.degree, n, n), dtype=object)
        for i, v in enumerate(vals):
            for k, c in enumerate(v.c):
                num[k, i, i] = int(c * den)
        return cls(field, num, den)

    # internal product over the power basis
    def _product(self, other_num, other_den, op) -> "ExactMatrix":
        f = self.field
        m = f.degree
        if m == 1:
            return ExactMatrix(f, op(self.num[0], other_num[0])[None], self.den * other_den)
        terms = [None] * (2 * m - 1)
        for k in range(m):
            if not self.num[k].any():
                continue
            for l in range(m):
                if not np.any(other_num[l]):
                    continue
                prod = op(self.num[k], other_num[l])
                terms[k + l] = prod if terms[k + l] is None else iadd(terms[k + l], prod)
        shape = None
        for t in terms:
            if t is not None:
                shape = t.shape
                break
        if shape is None:
            shape = op(self.num[0], other_num[0]).shape
            return ExactMatrix.zeros(*shape, field=f)
        has_high = any(t is not None for t in terms[m:])
        scale = f.red_den if has_high else 1
        out = []
        for j in range(m):
            acc = np.zeros(shape, dtype=np.int64)
            if terms[j] is not None:
                acc = iadd(acc, imul(terms[j], scale))
            for p in range(m, 2 * m - 1):
                if terms[p] is not None and f.red_int[p][j]:
                    acc = iadd(acc, imul(terms[p], f.red_int[p][j]))
            out.append(_grow(acc))
        num = np.stack(out)
        return ExactMatrix(f, num, self.den * other_den * scale)

    def __matmul__(self, other):
        self._check(other)
        if other.field != self.field:
            raise DomainMismatchError("matrices over different number fields")
        if self.shape[1] != other.shape[0]:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        return self._product(other.num, other.den, imatmul)

    def hadamard(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError("entrywise product needs equal shapes")
        return self._product(other.num, other.den, imul)

    def _scalar(self, s) -> "ExactMatrix":
        s = self.field(s)
        den = reduce(math.lcm, (c.denominator for c in s.c), 1)
        comps = [int(c * den) for c in s.c]
        return self._product(comps, den, lambda a, b: imul(a, b))

    def __mul__(self, s):
        if isinstance(s, Matrix):
            raise TypeError("use @ for matrix products or hadamard() for entrywise")
        return self._scalar(s)

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self._scalar(1 / self.field(s))

    def _lin(self, other, sign: int) -> "ExactMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        den = math.lcm(self.den, other.den)
        a = imul(self.num, den // self.den)
        b = imul(other.num, sign * (den // other.den))
        return ExactMatrix(self.field, iadd(a, b), den)

    def __add__(self, other):
        return self._lin(other, 1)

    def __sub__(self, other):
        return self._lin(other, -1)

    def __neg__(self):
        return ExactMatrix(self.field, imul(self.num, -1), self.den, _normalized=True)

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.field, np.ascontiguousarray(self.num.transpose(0, 2, 1)), self.den,
                           _normalized=True)

    def _element(self, comps) -> FieldElement:
        return FieldElement(self.field, tuple(Fraction(int(c), self.den) for c in comps))

    def entry(self, i: int, j: int) -> FieldElement:
        return self._element(self.num[:, i, j])

    def trace(self) -> FieldElement:
        return self._element([int(np.trace(_grow(c))) for c in self.num])

    def sum(self) -> FieldElement:
        return self._element([sum(int(x) for x in c.flat) if c.dtype == object else int(c.sum())
                              for c in self.num])

    def diagonal(self) -> list:
        return [self.entry(i, i) for i in range(min(self.shape))]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        r = np.asarray(rows, dtype=np.intp)
        c = np.asarray(cols, dtype=np.intp)
        return ExactMatrix(self.field, self.num[:, r][:, :, c], self.den)

    def embed(self, n: int, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        """Place this block into an n x n zero matrix at (rows, cols)."""
        num = np.zeros((self.field.degree, n, n), dtype=self.num.dtype)
        num[np.ix_(range(self.field.degree), rows, cols)] = self.num
        return ExactMatrix(self.field, num, self.den, _normalized=True)

    def is_zero(self, ctx: ToleranceContext | None = None) -> bool:
        return not np.any(self.num)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix) or other.field != self.field or other.shape != self.shape:
            return False
        return self.den == other.den and bool(np.all(self.num == other.num))

    __hash__ = None

    def is_symmetric(self, ctx: ToleranceContext | None = None) -> bool:
        return self.shape[0] == self.shape[1] and self == self.T

    def residual(self, other: "ExactMatrix") -> float:
        return 0.0 if self == other else self.to_float_distance(other)

    def to_float_distance(self, other) -> float:
        return float(np.max(np.abs(self.to_float() - other.to_float()))) if self.shape[0] else 0.0

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.to_float()))) if self.num.size else 0.0

    def to_float(self) -> np.ndarray:
        out = np.zeros(self.shape)
        a = 1.0
        for k in range(self.field.degree):
            comp = self.num[k]
            if comp.dtype == object:
                comp_f = np.array([[float(Fraction(int(x), self.den)) for x in row] for row in comp])
            else:
                comp_f = comp.astype(np.float64) / self.den
            out += comp_f * a
            a *= self.field.root_float
        return out

    def to_float_matrix(self) -> "FloatMatrix":
        return FloatMatrix(self.to_float())

    def is_integral(self) -> bool:
        return self.den == 1 and self.field.is_rational

    def int_array(self) -> np.ndarray:
        if not self.is_integral():
            raise ValueError("matrix is not an integer matrix")
        return self.num[0]

    def qvector(self) -> np.ndarray:
        """Coordinates over Q (power-basis components, row-major), scaled to integers."""
        return _grow(self.num.reshape(-1))

    def __repr__(self):
        return f"ExactMatrix({self.shape[0]}x{self.shape[1]} over {self.field!r})"


class FloatMatrix(Matrix):
    domain = "float"
    __slots__ = ("data", "shape")

    def __init__(self, data):
        self.data = np.asarray(data, dtype=np.float64)
        if self.data.ndim != 2:
            raise ShapeError("FloatMatrix needs a 2-d array")
        self.shape = self.data.shape

    @classmethod
    def identity(cls, n: int) -> "FloatMatrix":
        return cls(np.eye(n))

    @classmethod
    def zeros(cls, r: int, c: int) -> "FloatMatrix":
        return cls(np.zeros((r, c)))

    @classmethod
    def diagonal_matrix(cls, values) -> "FloatMatrix":
        return cls(np.diag([float(v) for v in values]))

    def __matmul__(self, other):
        self._check(other)
        if self.shape[1] != other.shape[0]:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        return FloatMatrix(self.data @ other.data)

    def hadamard(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError("entrywise product needs equal shapes")
        return FloatMatrix(self.data * other.data)

    def __mul__(self, s):
        if isinstance(s, Matrix):
            raise TypeError("use @ for matrix products or hadamard() for entrywise")
        return FloatMatrix(self.data * float(s))

    __rmul__ = __mul__

    def __truediv__(self, s):
        return FloatMatrix(self.data / float(s))

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        return FloatMatrix(self.data + other.data)

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        return FloatMatrix(self.data - other.data)

    def __neg__(self):
        return FloatMatrix(-self.data)

    @property
    def T(self):
        return FloatMatrix(self.data.T.copy())

    def entry(self, i, j) -> float:
        return float(self.data[i, j])

    def trace(self) -> float:
        return float(np.trace(self.data))

    def sum(self) -> float:
        return float(self.data.sum())

    def diagonal(self) -> list:
        return [float(x) for x in np.diagonal(self.data)]

    def submatrix(self, rows, cols):
        return FloatMatrix(self.data[np.ix_(rows, cols)])

    def embed(self, n, rows, cols):
        out = np.zeros((n, n))
        out[np.ix_(rows, cols)] = self.data
        return FloatMatrix(out)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.data))) if self.data.size else 0.0

    def is_zero(self, ctx: ToleranceContext | None = None) -> bool:
        ctx = ctx or DEFAULT_TOL
        return self.max_abs() <= ctx.residual

    def is_symmetric(self, ctx: ToleranceContext | None = None) -> bool:
        ctx = ctx or DEFAULT_TOL
        return self.shape[0] == self.shape[1] and float(np.max(np.abs(self.data - self.data.T), initial=0.0)) <= ctx.residual

    def residual(self, other) -> float:
        return float(np.max(np.abs(self.data - other.data), initial=0.0))

    def to_float(self) -> np.ndarray:
        return self.data

    def to_float_matrix(self):
        return self

    def __repr__(self):
        return f"FloatMatrix({self.shape[0]}x{self.shape[1]})"


def as_domain(mat: Matrix, domain: str) -> Matrix:
    if mat.domain == domain:
        return mat
    if domain == "float":
        return mat.to_float_matrix()
    raise DomainMismatchError("float matrices cannot be promoted to the exact domain")


def matrices_equal(a: Matrix, b: Matrix, ctx: ToleranceContext | None = None) -> bool:
    a._check(b)
    if a.shape != b.shape:
        return False
    if a.domain == "exact":
        return a == b
    return a.residual(b) <= (ctx or DEFAULT_TOL).residual


def residual(a: Matrix, b: Matrix) -> float:
    """Max-entry distance; exactly 0.0 when exact matrices coincide."""
    a._check(b)
    return a.residual(b)


# ---------------------------------------------------------------- spans

class RationalSpan:
    """Incremental fraction-free echelon basis of integer vectors over Q."""

    def __init__(self, length: int):
        self.length = length
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> np.ndarray:
        v = _grow(np.asarray(vec)).copy()
        if v.shape != (self.length,):
            raise ShapeError(f"vector of length {v.shape} in span of length {self.length}")
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                rp = row[p]
                g = math.gcd(int(rp), int(c))
                v = (rp // g) * v - (c // g) * row
                cont = icontent(v)
                if cont > 1:
                    v = v // cont
        return v

    def add(self, vec) -> bool:
        v = self.reduce(vec)
        nz = np.flatnonzero(v != 0)
        if nz.size == 0:
            return False
        p = int(nz[0])
        if v[p] < 0:
            v = -v
        self.rows.append(v)
        self.pivots.append(p)
        return True

    def contains(self, vec) -> bool:
        return not np.any(self.reduce(vec) != 0)


class FieldSpan:
    """Span over K = Q(a) of exact matrices, tracked as a Q-span of a^j M."""

    def __init__(self, field: NumberField, shape: tuple):
        self.field = field
        self.shape = tuple(shape)
        self._q = RationalSpan(field.degree * int(np.prod(self.shape)))
        self._powers = [field.gen() ** j for j in range(field.degree)]

    @property
    def rank(self) -> int:
        return self._q.rank // self.field.degree

    def _check(self, mat: ExactMatrix):
        if not isinstance(mat, ExactMatrix):
            raise DomainMismatchError("exact span needs exact matrices")
        if mat.shape != self.shape:
            raise ShapeError(f"matrix {mat.shape} in span of shape {self.shape}")

    def add(self, mat: ExactMatrix) -> bool:
        self._check(mat)
        if not self._q.add(mat.qvector()):
            return False
        for a in self._powers[1:]:
            self._q.add((mat * a).qvector())
        return True

    def contains(self, mat: ExactMatrix) -> bool:
        self._check(mat)
        return self._q.contains(mat.qvector())


class FloatSpan:
    """Orthonormal (trace-form) basis grown by twice-repeated Gram-Schmidt."""

    def __init__(self, shape: tuple, ctx: ToleranceContext | None = None):
        self.shape = tuple(shape)
        self.ctx = ctx or DEFAULT_TOL
        self.basis: list[np.ndarray] = []
        self._q = np.zeros((0, int(np.prod(self.shape))))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def _residual(self, mat) -> tuple[np.ndarray, float]:
        v = np.asarray(mat.data if isinstance(mat, FloatMatrix) else mat, dtype=np.float64).reshape(-1)
        if v.shape[0] != self._q.shape[1]:
            raise ShapeError("shape mismatch in float span")
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            return v, 0.0
        r = v / norm
        for _ in range(2):
            if self._q.shape[0]:
                r = r - self._q.T @ (self._q @ r)
        return r, float(np.linalg.norm(r))

    def add(self, mat) -> bool:
        if isinstance(mat, ExactMatrix):
            raise DomainMismatchError("float span needs float matrices")
        r, rn = self._residual(mat)
        if rn <= self.ctx.rank_rtol * 10:
            return False
        r = r / rn
        self._q = np.vstack([self._q, r])
        self.basis.append(r.reshape(self.shape))
        return True

    def contains(self, mat) -> bool:
        _, rn = self._residual(mat)
        return rn <= self.ctx.rank_rtol * 10

    def distance(self, mat) -> float:
        """Absolute distance of ``mat`` from the span."""
        v = np.asarray(mat.data, dtype=np.float64).reshape(-1)
        if self._q.shape[0]:
            v = v - self._q.T @ (self._q @ v)
            v = v - self._q.T @ (self._q @ v)
        return float(np.max(np.abs(v), initial=0.0))


def make_span(sample: Matrix, ctx: ToleranceContext | None = None):
    if isinstance(sample, ExactMatrix):
        return FieldSpan(sample.field, sample.shape)
    return FloatSpan(sample.shape, ctx)


def _check_family(mats: Sequence[Matrix]):
    first = mats[0]
    for m in mats[1:]:
        first._check(m)
        if m.shape != first.shape:
            raise ShapeError(f"shape mismatch {first.shape} vs {m.shape}")
        if isinstance(m, ExactMatrix) and m.field != first.field:
            raise DomainMismatchError("matrices over different number fields")


def gram_trace_basis(mats: Sequence[Matrix], ctx: ToleranceContext | None = None) -> list[Matrix]:
    """Basis for the span of ``mats`` under the trace form <M, N> = tr(M^T N).

    Exact inputs give the maximal independent subset chosen greedily in input
    order; float inputs give an orthonormal basis.
    """
    mats = list(mats)
    if not mats:
        return []
    _check_family(mats)
    span = make_span(mats[0], ctx)
    chosen = []
    for m in mats:
        if span.add(m):
            chosen.append(m)
    if isinstance(span, FloatSpan):
        return [FloatMatrix(b) for b in span.basis]
    return chosen


def span_rank(mats: Sequence[Matrix], ctx: ToleranceContext | None = None) -> int:
    return len(gram_trace_basis(mats, ctx))


def exact_rank(mat: ExactMatrix) -> int:
    """Rank of a single exact matrix over its field."""
    span = FieldSpan(mat.field, (1, mat.shape[1]))
    for i in range(mat.shape[0]):
        span.add(mat.submatrix([i], range(mat.shape[1])))
    return span.rank


def float_rank(a: np.ndarray, ctx: ToleranceContext | None = None) -> int:
    ctx = ctx or DEFAULT_TOL
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > ctx.rank_rtol * max(s[0], 1.0)))


# ---------------------------------------------------------------- subspaces

@dataclass
class SubspaceBasis:
    """Column basis of a subspace of F^n; float bases are orthonormal."""

    ambient: int
    vectors: np.ndarray  # n x k float

    domain = "float"

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=np.float64).reshape(self.ambient, -1)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @classmethod
    def from_columns(cls, cols: np.ndarray, ctx: ToleranceContext | None = None) -> "SubspaceBasis":
        ctx = ctx or DEFAULT_TOL
        cols = np.asarray(cols, dtype=np.float64)
        n = cols.shape[0]
        if cols.size == 0:
            return cls(n, np.zeros((n, 0)))
        u, s, _ = np.linalg.svd(cols, full_matrices=False)
        if s.size == 0 or s[0] == 0.0:
            return cls(n, np.zeros((n, 0)))
        k = int(np.sum(s > ctx.rank_rtol * max(s[0], 1.0)))
        return cls(n, u[:, :k])

    @classmethod
    def whole(cls, n: int) -> "SubspaceBasis":
        return cls(n, np.eye(n))

    def projector(self) -> np.ndarray:
        return self.vectors @ self.vectors.T

    def contains(self, vec, ctx: ToleranceContext | None = None) -> bool:
        ctx = ctx or DEFAULT_TOL
        v = np.asarray(vec, dtype=np.float64)
        return float(np.linalg.norm(v - self.projector() @ v)) <= ctx.residual * max(1.0, float(np.linalg.norm(v)))

    def same_span(self, other: "SubspaceBasis", ctx: ToleranceContext | None = None) -> bool:
        ctx = ctx or DEFAULT_TOL
        return self.dim == other.dim and float(np.max(np.abs(self.projector() - other.projector()), initial=0.0)) <= ctx.residual


def _check_ambient(u: SubspaceBasis, w: SubspaceBasis):
    if u.ambient != w.ambient:
        raise ShapeError(f"ambient dimensions differ: {u.ambient} vs {w.ambient}")


def intersect(u: SubspaceBasis, w: SubspaceBasis, ctx: ToleranceContext | None = None) -> SubspaceBasis:
    ctx = ctx or DEFAULT_TOL
    _check_ambient(u, w)
    if u.dim == 0 or w.dim == 0:
        return SubspaceBasis(u.ambient, np.zeros((u.ambient, 0)))
    # principal vectors with cosine 1
    _, s, vt = np.linalg.svd(u.vectors.T @ w.vectors)
    k = int(np.sum(s > 1.0 - math.sqrt(ctx.rank_rtol)))
    cols = w.vectors @ vt[:k].T
    return SubspaceBasis.from_columns(cols, ctx)


def orthogonal_complement_within(u: SubspaceBasis, w: SubspaceBasis,
                                 ctx: ToleranceContext | None = None) -> SubspaceBasis:
    """Orthogonal complement of U inside W (U need not lie in W)."""
    ctx = ctx or DEFAULT_TOL
    _check_ambient(u, w)
    cols = w.vectors - u.projector() @ w.vectors
    return SubspaceBasis.from_columns(cols, ctx)


def project(p: Matrix, u: SubspaceBasis, ctx: ToleranceContext | None = None) -> SubspaceBasis:
    """Image P(U)."""
    if p.shape[1] != u.ambient:
        raise ShapeError(f"matrix {p.shape} cannot act on ambient dimension {u.ambient}")
    return SubspaceBasis.from_columns(p.to_float() @ u.vectors, ctx)


# ---------------------------------------------------------------- eigen

def cluster_sorted(values: np.ndarray, width: float) -> list[list[int]]:
    """Union-find clustering of indices whose sorted neighbours lie within ``width``."""
    order = np.argsort(values, kind="stable")
    parent = list(range(len(values)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in zip(order[:-1], order[1:]):
        if values[b] - values[a] <= width:
            ra, rb = find(int(a)), find(int(b))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for i in order:
        groups.setdefault(find(int(i)), []).append(int(i))
    return sorted(groups.values(), key=lambda g: float(np.mean(values[g])))


def symmetric_eigendecomposition(m: Matrix, ctx: ToleranceContext | None = None):
    """Eigenvalue clusters of a symmetric float matrix, descending.

    Returns a list of ``(eigenvalue, SubspaceBasis)``.
    """
    ctx = ctx or DEFAULT_TOL
    if isinstance(m, ExactMatrix):
        raise DomainMismatchError("symmetric_eigendecomposition works in the float domain")
    a = m.to_float()
    if a.shape[0] != a.shape[1]:
        raise ShapeError("square matrix required")
    scale = max(float(np.max(np.abs(a), initial=0.0)), 1e-300)
    if float(np.max(np.abs(a - a.T), initial=0.0)) > ctx.residual * max(scale, 1.0):
        raise NotSymmetricError("matrix is not symmetric")
    a = (a + a.T) / 2
    n = a.shape[0]
    if n == 0:
        return []
    w, v, _ = kernels.jacobi_eigh(a)
    radius = float(np.max(np.abs(w))) if n else 0.0
    groups = cluster_sorted(w, ctx.cluster_rtol * max(radius, 1.0))
    out = []
    recon = np.zeros_like(a)
    total = np.zeros_like(a)
    for g in reversed(groups):
        theta = float(np.mean(w[g]))
        q, _ = np.linalg.qr(v[:, g])
        p = q @ q.T
        recon += theta * p
        total += p
        out.append((theta, SubspaceBasis(n, q)))
    res = max(float(np.max(np.abs(recon - a))), float(np.max(np.abs(total - np.eye(n)))))
    if res > ctx.residual * max(radius, 1.0):
        raise ResidualError("eigendecomposition reconstruction failed", res)
    return out


# ---------------------------------------------------------------- exact spectra

class _NotAllInteger:
    def __repr__(self):
        return "NotAllInteger"

    def __bool__(self):
        return False


NotAllInteger = _NotAllInteger()


def minimal_polynomial(a: ExactMatrix) -> list[Fraction]:
    """Monic minimal polynomial (low to high) from the first dependency among I, A, A^2, ..."""
    if a.shape[0] != a.shape[1]:
        raise ShapeError("square matrix required")
    if not a.field.is_rational:
        raise DomainMismatchError("minimal_polynomial expects a rational matrix")
    n = a.shape[0]
    power = ExactMatrix.identity(n)
    powers = []
    # augmented rows track the combination that produced each echelon row
    for k in range(n + 2):
        powers.append(power)
        span = RationalSpan(n * n + k + 1)
        rows = []
        for j, p in enumerate(powers):
            scale = math.lcm(*(p.den for p in powers))
            vec = np.concatenate([_grow(imul(p.num[0], scale // p.den)).reshape(-1),
                                  np.array([int(i == j) for i in range(k + 1)], dtype=object)])
            rows.append(vec)
        for vec in rows[:-1]:
            span.add(vec)
        red = span.reduce(rows[-1])
        if not np.any(red[: n * n] != 0):
            # red = c_k * e_k + sum_j c_j e_j with c_k * A^k + ... = 0 in the first block
            combo = [Fraction(int(x)) for x in red[n * n:]]
            lead = combo[k]
            return [c / lead for c in combo]
        power = power @ a
    raise ArithmeticError("minimal polynomial search did not terminate")


def _poly_eval(coeffs: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def integer_spectrum(a: ExactMatrix):
    """Distinct eigenvalues (descending) of an integer symmetric matrix, or ``NotAllInteger``."""
    if not isinstance(a, ExactMatrix):
        raise DomainMismatchError("integer_spectrum needs an exact matrix")
    if not a.is_integral():
        raise DomainMismatchError("integer_spectrum needs integer entries")
    poly = minimal_polynomial(a)
    deg = len(poly) - 1
    bound = int(np.max(np.sum(np.abs(a.int_array().astype(object)), axis=1))) if a.shape[0] else 0
    roots = [t for t in range(-bound, bound + 1) if _poly_eval(poly, t) == 0]
    if len(roots) != deg:
        return NotAllInteger
    return sorted(roots, reverse=True)


def _monic_fractions(poly) -> list[Fraction]:
    lead = poly.LC()
    out = []
    for c in reversed(poly.all_coeffs()):
        num, den = (c / lead).as_numer_denom()
        out.append(Fraction(int(num), int(den)))
    return out


def exact_spectrum(a: ExactMatrix):
    """Eigenvalues of a rational symmetric matrix inside one real number field.

    Returns ``(field, eigenvalues)`` with eigenvalues descending, or ``None``
    when no field containing every eigenvalue is found.
    """
    import mpmath
    import sympy

    spec = integer_spectrum(a) if a.is_integral() else NotAllInteger
    if spec is not NotAllInteger:
        return QQ, [QQ(t) for t in spec]
    poly = minimal_polynomial(a)
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(poly))
    _, factors = sympy.factor_list(expr, x)
    factors = [sympy.Poly(f, x) for f, _ in factors]
    big = max(factors, key=lambda f: f.degree())
    if big.degree() == 1:
        field = QQ
    else:
        with mpmath.workdps(80):
            root = max(mpmath.mpf(str(sympy.re(r))) for r in big.nroots(n=70))
        field = NumberField(_monic_fractions(big), root=root)
    eigen = []
    for f in factors:
        fc = _monic_fractions(f)
        for r in f.nroots(n=70):
            with mpmath.workdps(70):
                theta = mpmath.mpf(str(sympy.re(r)))
                if f.degree() == 1:
                    eigen.append(field(-fc[0]))
                    continue
                alpha = field._root
                vec = [theta] + [alpha**k for k in range(field.degree)]
                rel = mpmath.pslq(vec, maxcoeff=10**8, maxsteps=10**5)
            if rel is None or rel[0] == 0:
                return None
            coeffs = [Fraction(-c, rel[0]) for c in rel[1:]]
            el = FieldElement(field, tuple(coeffs))
            acc = field(0)
            for c in reversed(fc):
                acc = acc * el + c
            if not acc.is_zero():
                return None
            eigen.append(el)
    if len(set(eigen)) != len(poly) - 1:
        return None
    eigen.sort(key=float, reverse=True)
    return field, eigen


def primitive(mat: Matrix) -> Matrix:
    """A nonzero scalar multiple of ``mat`` with small entries (content removed, or max-normalized)."""
    if isinstance(mat, ExactMatrix):
        c = icontent(mat.num)
        if c == 0:
            return mat
        return ExactMatrix(mat.field, mat.num // c, 1, _normalized=True)
    m = mat.max_abs()
    return mat if m == 0.0 else mat / m


def rational_components(mat: ExactMatrix) -> list[ExactMatrix]:
    """The rational matrices M_k with M = sum_k a^k M_k."""
    return [ExactMatrix(QQ, mat.num[k][None], mat.den) for k in range(mat.field.degree)]


# ---------------------------------------------------------------- modular rank

BLOCK_PRIME = 4194301  # largest prime below 2**22; 64 * p**2 < 2**53 keeps float64 products exact


def _fmod(v: np.ndarray, p: int) -> np.ndarray:
    """Exact v mod p for integer-valued float64 arrays with |v| < 2**53."""
    out = v - p * np.floor(v * (1.0 / p))
    out[out < 0] += p
    out[out >= p] -= p
    return out


def inverse_mod_p(m: np.ndarray, p: int) -> np.ndarray:
    k = m.shape[0]
    aug = np.concatenate([np.asarray(m, dtype=np.int64) % p, np.eye(k, dtype=np.int64)], axis=1)
    red, piv = kernels.rref_mod_p(aug, p)
    if list(piv[:k]) != list(range(k)):
        raise ZeroDivisionError("matrix is singular modulo p")
    return red[:, k:]


def rank_mod_p(m: np.ndarray, p: int = BLOCK_PRIME, block: int = 64) -> int:
    """Rank over F_p by blocked elimination; trailing updates run through float64 BLAS.

    Each panel contributes a maximal independent set of rows; the remaining
    rows are cleared on the panel columns by one matrix product.
    """
    if p >= 2**22 and block * p * p >= 2**53:
        raise ValueError("prime too large for exact float64 block updates")
    a = np.mod(np.asarray(m, dtype=np.int64), p).astype(np.float64)
    rows, cols = a.shape
    r = 0
    c0 = 0
    while c0 < cols and r < rows:
        c1 = min(c0 + block, cols)
        panel = a[r:, c0:c1].astype(np.int64)
        _, indep = kernels.rref_mod_p(np.ascontiguousarray(panel.T), p)
        s = len(indep)
        if s:
            indep = np.asarray(indep, dtype=np.intp)
            _, pcols = kernels.rref_mod_p(np.ascontiguousarray(panel[indep]), p)
            rest = np.setdiff1d(np.arange(rows - r), indep)
            a[r:] = a[r:][np.concatenate([indep, rest])]
            piv = a[r:r + s, c0:c1][:, pcols].astype(np.int64)
            inv = inverse_mod_p(piv, p).astype(np.float64)
            below = a[r + s:, c0:c1][:, pcols]
            x = _fmod(below @ inv, p)
            a[r + s:, c0:] = _fmod(a[r + s:, c0:] - x @ a[r:r + s, c0:], p)
            r += s
        c0 = c1
    return r

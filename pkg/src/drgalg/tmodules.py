"""Irreducible T-modules: commutant, decomposition, profiles, isomorphism classes, Wedderburn counts."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .bose_mesner import BoseMesnerData
from .dual import DualData
from .fields import QQ
from .linalg import (BLOCK_PRIME, DEFAULT_TOL, ExactMatrix, FieldSpan, FloatMatrix, FloatSpan, Matrix,
                     ResidualError, SubspaceBasis, ToleranceContext, cluster_sorted, float_rank,
                     rank_mod_p, symmetric_eigendecomposition)
from .terwilliger import MatrixAlgebra, TerwilligerAlgebra

MAX_RETRIES = 5
COEFF_BOUND = 10**6
RATIONAL_DEN = 10**6


class DecompositionError(RuntimeError):
    pass


class ProfileError(ArithmeticError):
    """A module violates a shape law; for ρ0 this would contradict sharpness."""


# ---------------------------------------------------------------- helpers

def _generators(t: MatrixAlgebra) -> list[Matrix]:
    gens = getattr(t, "generators", None)
    return list(gens) if gens else list(t.basis)


def _float_gens(t: MatrixAlgebra) -> list[np.ndarray]:
    return [g.to_float() for g in _generators(t)]


def rationalize(arr: np.ndarray, max_den: int = RATIONAL_DEN, tol: float = 1e-8):
    """Integer numerators and a common denominator close to ``arr``, or None.

    Only the distinct values (to 9 decimals) go through continued fractions.
    """
    arr = np.asarray(arr, dtype=np.float64)
    if arr.size == 0:
        return np.zeros(arr.shape, dtype=object), 1
    uniq, inverse = np.unique(np.round(arr, 9), return_inverse=True)
    fracs = [Fraction(float(u)).limit_denominator(max_den) for u in uniq]
    approx = np.array([float(f) for f in fracs])[inverse.reshape(arr.shape)]
    if float(np.max(np.abs(approx - arr))) > tol * max(1.0, float(np.max(np.abs(arr)))):
        return None
    den = math.lcm(*(f.denominator for f in fracs))
    if den > max_den:
        return None
    nums = np.array([int(f * den) for f in fracs], dtype=object)
    return nums[inverse.reshape(arr.shape)], den


def _float_nullspace(mat, rtol: float) -> np.ndarray:
    """Orthonormal null-space basis (columns) of a sparse or dense matrix via L^T L."""
    gram = (mat.T @ mat)
    gram = gram.toarray() if sp.issparse(gram) else np.asarray(gram)
    gram = np.asarray(gram, dtype=np.float64)
    if gram.shape[0] == 0:
        return np.zeros((0, 0))
    w, v = scipy.linalg.eigh(gram)
    scale = max(float(w[-1]), 1.0)
    keep = w <= rtol * scale
    return v[:, keep]


def _echelon_basis(null: np.ndarray, tol: float = 1e-9):
    """Reduced row-echelon form (leftmost pivots) of the row space of ``null.T``, as columns."""
    a = np.array(null.T, dtype=np.float64)
    k, c = a.shape
    pivots = []
    r = 0
    for j in range(c):
        if r == k:
            break
        i = r + int(np.argmax(np.abs(a[r:, j])))
        if abs(a[i, j]) < tol:
            continue
        a[[r, i]] = a[[i, r]]
        a[r] /= a[r, j]
        others = np.arange(k) != r
        a[others] -= np.outer(a[others, j], a[r])
        pivots.append(j)
        r += 1
    return a[:r].T, pivots


# ---------------------------------------------------------------- commutant

@dataclass
class CommutantInfo:
    dim: int
    unknowns: int
    exact_basis: bool
    rank_certified: bool
    prime: int | None = None


def _support(gens: Sequence[Matrix], n: int) -> np.ndarray:
    """Pairs (y, z) allowed by the diagonal generators: C_yz = 0 unless every diagonal agrees."""
    profile = np.zeros((n, 0))
    for g in gens:
        f = g.to_float()
        if not np.any(f - np.diag(np.diagonal(f))):
            profile = np.column_stack([profile, np.diagonal(f)])
    if profile.shape[1] == 0:
        return np.ones((n, n), dtype=bool)
    keys = {}
    labels = np.array([keys.setdefault(tuple(np.round(row, 9)), len(keys)) for row in profile])
    return labels[:, None] == labels[None, :]


def _constraints(gens: Sequence[Matrix], mask: np.ndarray, exact: bool):
    n = mask.shape[0]
    cols = np.flatnonzero(mask.ravel())
    blocks = []
    eye = sp.identity(n, format="csr", dtype=np.int64 if exact else np.float64)
    for g in gens:
        f = g.to_float()
        if not np.any(f - np.diag(np.diagonal(f))):
            continue
        if exact:
            if not g.field.is_rational:
                raise ValueError("exact commutant needs rational generators")
            m = sp.csr_matrix(g.num[0].astype(np.int64))
        else:
            m = sp.csr_matrix(f)
        # vec(C G - G C) in row-major order
        op = sp.kron(eye, m.T, format="csr") - sp.kron(m, eye, format="csr")
        op = op[:, cols]
        nz = np.flatnonzero(op.getnnz(axis=1))
        blocks.append(op[nz])
    if not blocks:
        return sp.csr_matrix((0, len(cols))), cols
    return sp.vstack(blocks, format="csr"), cols


def _verify_exact(lmat: sp.csr_matrix, num: np.ndarray) -> bool:
    """L @ num == 0 in exact integer arithmetic."""
    if lmat.shape[0] == 0 or num.size == 0:
        return True
    big = max(abs(int(x)) for x in np.unique(num))
    if int(abs(lmat).sum(axis=1).max()) * big < 2**62:
        return not np.any(lmat.astype(np.int64) @ num.astype(np.int64))
    coo = lmat.tocoo()
    for j in range(num.shape[1]):
        acc = np.zeros(lmat.shape[0], dtype=object)
        np.add.at(acc, coo.row, coo.data.astype(object) * num[coo.col, j])
        if np.any(acc != 0):
            return False
    return True


def _certify_rank(lmat: sp.csr_matrix, expected_rank: int, rng: np.random.Generator, tries: int = 2) -> bool:
    """rank_p(R L) >= expected for a random R implies rank_Q(L) >= expected."""
    rows, cols = lmat.shape
    if expected_rank == 0:
        return True
    for _ in range(tries):
        if rows > cols + 8:
            r = rng.integers(0, BLOCK_PRIME, size=(cols + 8, rows)).astype(np.float64)
            dense = np.asarray((lmat.T.astype(np.float64) @ r.T).T)
            dense = np.mod(dense, BLOCK_PRIME).astype(np.int64)
        else:
            dense = lmat.toarray()
        if rank_mod_p(dense) >= expected_rank:
            return True
    return False


def commutant(t: MatrixAlgebra, ctx: ToleranceContext | None = None, seed: int = 0) -> MatrixAlgebra:
    """All C with C G = G C for every generator G of ``t``.

    Exact route: the null space of the (sparse, integer) commutation system is
    found in floats, put in echelon form, rationalized and verified exactly;
    its dimension is certified from above by a modular rank of a random
    compression of the system.  Falls back to the float basis when
    rationalization fails.
    """
    ctx = ctx or t.ctx
    gens = _generators(t)
    n = gens[0].shape[0]
    exact = isinstance(gens[0], ExactMatrix) and all(g.field.is_rational for g in gens)
    mask = _support(gens, n)
    lmat, cols = _constraints(gens, mask, exact)
    null = _float_nullspace(lmat.astype(np.float64), 1e-10)
    k = null.shape[1]
    basis: list = []
    exact_basis = False
    if exact:
        ech, _ = _echelon_basis(null)
        rat = rationalize(ech)
        if rat is not None and _verify_exact(lmat, rat[0]):
            num, den = rat
            for j in range(k):
                full = np.zeros(n * n, dtype=object)
                full[cols] = num[:, j]
                basis.append(ExactMatrix.from_ints(full.reshape(n, n)))
            exact_basis = True
    if not exact_basis:
        for j in range(k):
            full = np.zeros(n * n)
            full[cols] = null[:, j]
            basis.append(FloatMatrix(full.reshape(n, n)))
    certified = exact and _certify_rank(lmat, len(cols) - k, np.random.default_rng(seed))
    if basis and isinstance(basis[0], ExactMatrix):
        span = FieldSpan(QQ, (n, n))
        unit = ExactMatrix.identity(n)
    else:
        span = FloatSpan((n, n), ctx)
        unit = FloatMatrix.identity(n)
    kept = [b for b in basis if span.add(b)]
    alg = MatrixAlgebra(kept, span, unit, "commutant", ctx)
    alg.info = CommutantInfo(len(kept), len(cols), exact_basis, certified, BLOCK_PRIME if certified else None)
    return alg


# ---------------------------------------------------------------- modules

@dataclass
class TModule:
    basis: SubspaceBasis
    r: int = -1
    s: int = -1
    d: int = -1
    dual_d: int = -1
    shape: tuple = ()
    star_dims: tuple = ()
    dims: tuple = ()
    primary: bool = False
    mu: float | None = None
    phi: tuple | None = None
    end_dim: int | None = None

    @property
    def dim(self) -> int:
        return self.basis.dim

    def key(self) -> tuple:
        local = (self.mu,) if self.mu is not None else tuple(self.phi or ())
        return (self.r, self.s, self.d, self.shape, tuple(round(x, 6) for x in local))


@dataclass
class TModuleDecomposition:
    modules: list
    classes: list            # class id per module
    multiplicities: list     # per class
    summands: list           # n_i per class
    seed: int
    coefficients: list
    draws: int
    dim_T: int
    dim_commutant: int
    exact_checks: dict = field(default_factory=dict)

    @property
    def class_count(self) -> int:
        return len(self.multiplicities)

    def representatives(self) -> list:
        reps = {}
        for m, c in zip(self.modules, self.classes):
            reps.setdefault(c, m)
        return [reps[c] for c in range(self.class_count)]


def _stability_residual(q: np.ndarray, gens: list[np.ndarray]) -> float:
    worst = 0.0
    for g in gens:
        gq = g @ q
        worst = max(worst, float(np.max(np.abs(gq - q @ (q.T @ gq)), initial=0.0)) / max(1.0, float(np.max(np.abs(g)))))
    return worst


def _end_space(q: np.ndarray, gens: list[np.ndarray], q2: np.ndarray | None = None, rtol: float = 1e-9):
    """Null space of sigma -> sigma G|W1 - G|W2 sigma over all generators (columns = vec(sigma))."""
    q2 = q if q2 is None else q2
    w1, w2 = q.shape[1], q2.shape[1]
    rows = []
    for g in gens:
        g1 = q.T @ g @ q
        g2 = q2.T @ g @ q2
        # vec(sigma g1 - g2 sigma), sigma is w2 x w1, row-major
        rows.append(np.kron(np.eye(w2), g1.T) - np.kron(g2, np.eye(w1)))
    mat = np.vstack(rows)
    return _float_nullspace(mat, rtol)


def is_irreducible(w: SubspaceBasis, t: MatrixAlgebra, ctx: ToleranceContext | None = None) -> bool:
    """True iff End_T(W) is one-dimensional; W must be T-stable."""
    ctx = ctx or t.ctx
    gens = _float_gens(t)
    if _stability_residual(w.vectors, gens) > ctx.residual:
        raise ValueError("subspace is not T-stable")
    return _end_space(w.vectors, gens).shape[1] == 1


def _random_symmetric(basis: list[np.ndarray], rng: np.random.Generator) -> tuple[np.ndarray, list[int]]:
    coeffs = [int(c) for c in rng.integers(-COEFF_BOUND, COEFF_BOUND + 1, size=len(basis))]
    c = sum(((b + b.T) / 2 * g for g, b in zip(coeffs, basis)), np.zeros_like(basis[0]))
    return c, coeffs


def _split(q: np.ndarray, gens, rng, ctx, depth: int = 0) -> list[np.ndarray]:
    """Split a T-stable W into irreducibles using random symmetric endomorphisms."""
    end = _end_space(q, gens)
    if end.shape[1] <= 1:
        return [q]
    if depth > MAX_RETRIES:
        raise DecompositionError(f"could not split a {q.shape[1]}-dimensional candidate")
    w = q.shape[1]
    mats = [end[:, j].reshape(w, w) for j in range(end.shape[1])]
    for _ in range(MAX_RETRIES):
        x, _ = _random_symmetric(mats, rng)
        parts = symmetric_eigendecomposition(FloatMatrix(x), ctx)
        if len(parts) > 1:
            out = []
            for _, sub in parts:
                out.extend(_split(q @ sub.vectors, gens, rng, ctx, depth + 1))
            return out
    raise DecompositionError("random endomorphisms failed to split a reducible candidate")


def decompose_standard_module(t: MatrixAlgebra, dual: DualData, bm: BoseMesnerData,
                              comm: MatrixAlgebra | None = None, ctx: ToleranceContext | None = None,
                              seed: int = 0) -> TModuleDecomposition:
    """Orthogonal decomposition of the standard module into irreducible T-modules.

    Eigenspaces of a seeded random symmetric commutant element are the
    candidates; each is checked for T-stability and irreducibility and split
    further when its endomorphism algebra is larger than the scalars.
    """
    ctx = ctx or t.ctx
    comm = comm if comm is not None else commutant(t, ctx, seed)
    gens = _float_gens(t)
    n = t.n
    basis = [b.to_float() for b in comm.basis]
    rng = np.random.default_rng(seed)
    pieces = None
    draws = 0
    coeffs: list = []
    for draws in range(1, MAX_RETRIES + 1):
        c, coeffs = _random_symmetric(basis, rng)
        parts = symmetric_eigendecomposition(FloatMatrix(c), ctx)
        if all(_stability_residual(sub.vectors, gens) <= ctx.residual for _, sub in parts):
            pieces = [sub.vectors for _, sub in parts]
            break
    if pieces is None:
        raise DecompositionError(f"no T-stable eigenspace split after {MAX_RETRIES} draws (seed {seed})")
    modules = []
    for q in pieces:
        for sub in _split(q, gens, rng, ctx):
            modules.append(TModule(SubspaceBasis(n, sub)))
    allq = np.hstack([m.basis.vectors for m in modules])
    if allq.shape[1] != n or float(np.max(np.abs(allq.T @ allq - np.eye(n)))) > ctx.residual:
        raise DecompositionError("modules do not form an orthogonal direct sum of the standard module")
    for m in modules:
        module_profile(m, dual, bm, ctx)
        m.end_dim = _end_space(m.basis.vectors, gens).shape[1]
    modules.sort(key=lambda m: (m.key(), -m.dim))
    classes = _classify(modules, gens)
    mult = [classes.count(c) for c in range(max(classes) + 1)]
    reps = {}
    for m, c in zip(modules, classes):
        reps.setdefault(c, m)
    summands = [reps[c].dim for c in range(len(mult))]
    dec = TModuleDecomposition(modules, classes, mult, summands, seed, coeffs, draws, t.dim, comm.dim)
    dec.exact_checks = exact_cross_check(dec, dual, bm)
    return dec


def _classify(modules: list[TModule], gens) -> list[int]:
    reps: list[TModule] = []
    ids = []
    for m in modules:
        for cid, rep in enumerate(reps):
            if rep.dim == m.dim and _intertwiner_iso(rep.basis.vectors, m.basis.vectors, gens):
                ids.append(cid)
                break
        else:
            reps.append(m)
            ids.append(len(reps) - 1)
    # ids follow the sorted profile order, so class ids are stable across runs
    return ids


def _intertwiner_iso(q1: np.ndarray, q2: np.ndarray, gens) -> bool:
    if q1.shape[1] != q2.shape[1]:
        return False
    space = _end_space(q1, gens, q2)
    if space.shape[1] != 1:
        return False
    w = q1.shape[1]
    sigma = space[:, 0].reshape(w, w)
    sv = np.linalg.svd(sigma, compute_uv=False)
    return bool(sv[-1] > 1e-8 * sv[0])


def modules_isomorphic(w1: TModule, w2: TModule, t: MatrixAlgebra) -> bool:
    """Intertwiner test: a one-dimensional space of T-maps W1 -> W2 spanned by an invertible map."""
    return _intertwiner_iso(w1.basis.vectors, w2.basis.vectors, _float_gens(t))


def local_criterion(w1: TModule, w2: TModule, tol: float = 1e-6) -> bool | None:
    """Isomorphism predicted by the local eigenvalue mu (r = 1) or the sequence phi (r + d = D)."""
    if w1.r == 1 and w2.r == 1 and w1.mu is not None and w2.mu is not None:
        return abs(w1.mu - w2.mu) <= tol * max(1.0, abs(w1.mu))
    if w1.phi is not None and w2.phi is not None:
        return len(w1.phi) == len(w2.phi) and all(abs(a - b) <= tol * max(1.0, abs(a)) for a, b in zip(w1.phi, w2.phi))
    return None


# ---------------------------------------------------------------- profiles

def module_profile(w: TModule | SubspaceBasis, dual: DualData, bm: BoseMesnerData,
                   ctx: ToleranceContext | None = None) -> TModule:
    """Endpoint, dual endpoint, diameter, shape and local eigenvalues; shape laws enforced."""
    ctx = ctx or bm.ctx
    mod = w if isinstance(w, TModule) else TModule(w)
    q = mod.basis.vectors
    big_d = bm.D
    estar = [np.diagonal(e.to_float()) for e in dual.Estar]
    star_dims = tuple(float_rank(es[:, None] * q, ctx) for es in estar)
    dims = tuple(float_rank(e.to_float() @ q, ctx) for e in bm.E)
    mod.star_dims, mod.dims = star_dims, dims
    support = [i for i, v in enumerate(star_dims) if v]
    dsupport = [i for i, v in enumerate(dims) if v]
    if not support or not dsupport:
        raise ProfileError("module has no support")
    r, s = support[0], dsupport[0]
    d, dd = support[-1] - r, dsupport[-1] - s
    if support != list(range(r, r + d + 1)):
        raise ProfileError(f"E_i*W nonzero on a non-interval {support}")
    if dsupport != list(range(s, s + dd + 1)):
        raise ProfileError(f"E_iW nonzero on a non-interval {dsupport}")
    mod.r, mod.s, mod.d, mod.dual_d = r, s, d, dd
    mod.shape = tuple(star_dims[r:r + d + 1])
    mod.primary = r == 0
    if d != dd:
        raise ProfileError(f"diameter {d} differs from dual diameter {dd}")
    if mod.shape != tuple(dims[s:s + d + 1]):
        raise ProfileError(f"dim E*_(r+i)W {mod.shape} differs from dim E_(s+i)W {dims[s:s + d + 1]}")
    if mod.shape != mod.shape[::-1]:
        raise ProfileError(f"shape {mod.shape} is not symmetric")
    if any(mod.shape[i - 1] > mod.shape[i] for i in range(1, d // 2 + 1)):
        raise ProfileError(f"shape {mod.shape} is not unimodal")
    if mod.shape[0] != 1:
        raise ProfileError(f"module is not sharp: rho_0 = {mod.shape[0]}")
    if (r == 0) != (s == 0) or (r == 0) != (d == big_d):
        raise ProfileError(f"primary equivalences fail for (r, s, d) = {(r, s, d)}")
    if mod.primary and any(x != 1 for x in mod.shape):
        raise ProfileError("primary module is not thin")
    if not mod.primary and not (1 <= r <= big_d and 1 <= s <= big_d):
        raise ProfileError(f"non-primary module has r = {r}, s = {s}")
    a = bm.A[1].to_float()
    if r == 1:
        u = _unit_in(estar[1][:, None] * q)
        au = estar[1] * (a @ (estar[1] * u))
        mod.mu = float(u @ au)
        if float(np.linalg.norm(au - mod.mu * u)) > ctx.residual * max(1.0, abs(mod.mu)):
            raise ProfileError("E1*W is not an eigenvector of E1* A E1*")
    if r + d == big_d:
        u = _unit_in(estar[big_d][:, None] * q)
        phi = []
        for h in range(1, big_d + 1):
            ah = bm.A[h].to_float()
            v = estar[big_d] * (ah @ (estar[big_d] * u))
            val = float(u @ v)
            if float(np.linalg.norm(v - val * u)) > ctx.residual * max(1.0, abs(val)):
                raise ProfileError("E_D*W is not an eigenvector of E_D* A_h E_D*")
            phi.append(val)
        mod.phi = tuple(phi)
    return mod


def _unit_in(cols: np.ndarray) -> np.ndarray:
    u, s, _ = np.linalg.svd(cols, full_matrices=False)
    v = u[:, 0]
    idx = int(np.argmax(np.abs(v)))
    return v if v[idx] > 0 else -v


def exact_cross_check(dec: TModuleDecomposition, dual: DualData, bm: BoseMesnerData) -> dict:
    """Re-derive isotypic ranks exactly where the isotypic projector rationalizes.

    The projector P onto class c is verified exactly (P^2 = P, P = P^T, P
    commutes with A and every E_i*), then rank(E_i* P) = mult * dim E_i*W is
    checked with exact ranks.  Classes whose projector is irrational are skipped.
    """
    from .linalg import exact_rank

    out = {}
    n = bm.n
    a = ExactMatrix.from_ints((bm.graph.distances == 1).astype(np.int64))
    stars = [ExactMatrix.from_ints(np.diag((bm.graph.distances[dual.x] == i).astype(np.int64)))
             for i in range(bm.D + 1)]
    for cid in range(dec.class_count):
        mods = [m for m, c in zip(dec.modules, dec.classes) if c == cid]
        proj = sum(m.basis.projector() for m in mods)
        rat = rationalize(proj)
        if rat is None:
            out[cid] = "skipped"
            continue
        num, den = rat
        p = ExactMatrix.from_ints(num) * Fraction(1, den)
        ok = p @ p == p and p == p.T and a @ p == p @ a and all(s @ p == p @ s for s in stars)
        if ok:
            rep = mods[0]
            mult = len(mods)
            for i, cell in enumerate(dual.cells):
                if exact_rank(p.submatrix(cell, range(n))) != mult * rep.star_dims[i]:
                    ok = False
                    break
        out[cid] = "verified" if ok else "failed"
    return out


# ---------------------------------------------------------------- reports

@dataclass
class WedderburnReport:
    summands: list
    multiplicities: list
    dim_T: int
    dim_commutant: int
    sum_squares: int
    sum_mult_squares: int
    primary_multiplicity: int
    primary_dim: int
    D: int

    @property
    def dimension_ok(self) -> bool:
        return self.sum_squares == self.dim_T

    @property
    def commutant_ok(self) -> bool:
        return self.sum_mult_squares == self.dim_commutant

    @property
    def primary_ok(self) -> bool:
        return self.primary_multiplicity == 1 and self.primary_dim == self.D + 1

    @property
    def ok(self) -> bool:
        return self.dimension_ok and self.commutant_ok and self.primary_ok


def wedderburn_report(dec: TModuleDecomposition, t: MatrixAlgebra, strict: bool = False) -> WedderburnReport:
    """sum n_i^2 against dim T and sum mult_i^2 against dim of the commutant."""
    prim = [c for m, c in zip(dec.modules, dec.classes) if m.primary]
    pclass = prim[0] if prim else None
    rep = WedderburnReport(
        summands=list(dec.summands), multiplicities=list(dec.multiplicities), dim_T=t.dim,
        dim_commutant=dec.dim_commutant, sum_squares=sum(x * x for x in dec.summands),
        sum_mult_squares=sum(x * x for x in dec.multiplicities),
        primary_multiplicity=dec.multiplicities[pclass] if pclass is not None else 0,
        primary_dim=dec.summands[pclass] if pclass is not None else 0, D=len(dec.modules[0].star_dims) - 1)
    if strict and not rep.ok:
        raise ArithmeticError(f"Wedderburn counts disagree: {rep}")
    return rep


def corner_spectrum_bridge(dec: TModuleDecomposition, dual: DualData, bm: BoseMesnerData,
                           ctx: ToleranceContext | None = None) -> tuple[int, int]:
    """(classes with endpoint 1, distinct eigenvalues of E1* A E1* on E1* of their span)."""
    ctx = ctx or bm.ctx
    classes = {c for m, c in zip(dec.modules, dec.classes) if m.r == 1}
    mods = [m for m in dec.modules if m.r == 1]
    if not mods:
        return 0, 0
    e1 = np.diagonal(dual.Estar[1].to_float())
    cols = np.hstack([e1[:, None] * m.basis.vectors for m in mods])
    u = SubspaceBasis.from_columns(cols, ctx).vectors
    a = bm.A[1].to_float()
    op = u.T @ (e1[:, None] * (a @ (e1[:, None] * u)))
    op = (op + op.T) / 2
    w = np.linalg.eigvalsh(op)
    groups = cluster_sorted(w, ctx.cluster_rtol * max(1.0, float(np.max(np.abs(w)))))
    return len(classes), len(groups)

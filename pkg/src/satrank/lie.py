"""Restricted Lie algebras by structure constants and p-map.

An algebra of dimension n over F_q keeps, per basis pair, the bracket
coordinates [b_i, b_j] and, per basis vector, the p-map image b_i^[p]; an
optional matrix model realizes the basis inside gl_m and must agree with both
tables.  Elements are coordinate tuples of field codes.

x^[p] for a general element is evaluated with Jacobson's formula, folding the
coordinate expansion pairwise; the correction terms s_i(x, y) are read off as
t-coefficients of (ad(tx+y))^(p-1)(x) over g[t].  Matrix models shortcut this
with a plain p-th matrix power.

The saturation rank machinery works over the restricted nullcone
V(g) = {x : x^[p] = 0}: the local rank of x is the largest size of a linearly
independent tuple of pairwise commuting nullcone points inside the centralizer
of x, and srk(g) is the minimum of the local ranks over nonzero nullcone
points.  Tuples related by a base change span the same subalgebra, so the
search walks candidates in a fixed order modulo the running span.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import BudgetError, PreconditionError
from .fields import FieldSpec, Mat, _rref

DEFAULT_BUDGET = 10_000_000

Vec = tuple


def _vec_add(f, u, v):
    return tuple(f.add(a, b) for a, b in zip(u, v))


def _vec_scale(f, c, u):
    return tuple(f.mul(c, a) for a in u)


def _vec_is_zero(u):
    return not any(u)


class RestrictedLieAlgebra:
    """Basis-indexed bracket table, p-map, and optional matrix model.

    brackets maps (i, j) to {k: c} with [b_i, b_j] = sum_k c b_k; pmap lists
    the coordinates of b_i^[p].  Coefficients are field codes (use
    field.neg/from_int rather than raw negative ints over extension fields).
    """

    def __init__(self, field: FieldSpec, brackets, pmap, labels=None,
                 matrix_model=None, validate="auto"):
        self.field = field
        self.dim = len(pmap)
        self.labels = list(labels) if labels else [f"b{i}" for i in range(self.dim)]
        if len(self.labels) != self.dim:
            raise PreconditionError("label count must match dimension")
        # ad tensor: _adb[i][:, j] = coords of [b_i, b_j]
        self._adb = [np.zeros((self.dim, self.dim), dtype=np.int64) for _ in range(self.dim)]
        for (i, j), out in brackets.items():
            for k, c in out.items():
                self._adb[i][k, j] = c % field.q
        self.pmap = [tuple(int(c) % field.q for c in row) for row in pmap]
        self.matrix_model = list(matrix_model) if matrix_model else None
        self._coord_solver = None
        if self.matrix_model:
            if len(self.matrix_model) != self.dim:
                raise PreconditionError("matrix model must have one matrix per basis vector")
            self._coord_solver = _CoordSolver(field, self.matrix_model)
        if validate == "auto":
            validate = "model" if self.matrix_model else "full"
        if validate != "none":
            self.validate(validate)

    # -- structure access ----------------------------------------------------

    def ad(self, x: Vec) -> np.ndarray:
        """Matrix of ad(x) on the basis, as a code array."""
        f = self.field
        acc = np.zeros((self.dim, self.dim), dtype=np.int64)
        for i, c in enumerate(x):
            if c:
                acc = f.varr_add(acc, f.varr_scale(c, self._adb[i]))
        return acc

    def bracket(self, x: Vec, y: Vec) -> Vec:
        f = self.field
        ax = self.ad(x)
        col = np.array(y, dtype=np.int64)
        if f.k == 1:
            return tuple(int(v) for v in (ax @ col) % f.p)
        out = np.zeros(self.dim, dtype=np.int64)
        for j, c in enumerate(y):
            if c:
                out = f.varr_add(out, f.varr_scale(c, ax[:, j]))
        return tuple(int(v) for v in out)

    def basis_vec(self, i: int) -> Vec:
        v = [0] * self.dim
        v[i] = self.field.one
        return tuple(v)

    def zero(self) -> Vec:
        return (0,) * self.dim

    def matrix_of(self, x: Vec) -> Mat:
        if not self.matrix_model:
            raise PreconditionError("algebra has no matrix model")
        f = self.field
        n = self.matrix_model[0].rows
        acc = Mat.zeros(f, n, n)
        for i, c in enumerate(x):
            if c:
                acc = acc + self.matrix_model[i].scale(c)
        return acc

    def coords_of_matrix(self, m: Mat) -> Vec:
        if not self._coord_solver:
            raise PreconditionError("algebra has no matrix model")
        coords = self._coord_solver.solve(m)
        if coords is None:
            raise PreconditionError("matrix lies outside the span of the model basis")
        return coords

    # -- p-map ----------------------------------------------------------------

    def pmap_eval(self, x: Vec) -> Vec:
        """x^[p], via the matrix model when present, else Jacobson's formula."""
        if self.matrix_model:
            return self.coords_of_matrix(self.matrix_of(x) ** self.field.p)
        return self._pmap_jacobson(x)

    def _pmap_jacobson(self, x: Vec) -> Vec:
        f = self.field
        terms = [(i, c) for i, c in enumerate(x) if c]
        if not terms:
            return self.zero()

        def single(i, c):
            return _vec_scale(f, f.pow(c, f.p), self.pmap[i])

        i0, c0 = terms[-1]
        acc = single(i0, c0)
        suffix = _vec_scale(f, c0, self.basis_vec(i0))
        for i, c in reversed(terms[:-1]):
            u = _vec_scale(f, c, self.basis_vec(i))
            acc = _vec_add(f, _vec_add(f, single(i, c), acc), self._jacobson_terms(u, suffix))
            suffix = _vec_add(f, u, suffix)
        return acc

    def _jacobson_terms(self, u: Vec, v: Vec) -> Vec:
        # sum of s_i(u, v): i * s_i = coefficient of t^(i-1) in (ad(tu+v))^(p-1)(u)
        f = self.field
        p = f.p
        ad_u = self.ad(u)
        ad_v = self.ad(v)
        w = np.zeros((p, self.dim), dtype=np.int64)  # w[d] = t^d coefficient
        w[0] = np.array(u, dtype=np.int64)
        for _ in range(p - 1):
            nw = np.zeros_like(w)
            for d in range(p):
                col = self._apply(ad_v, w[d])
                if d > 0:
                    col = f.varr_add(col, self._apply(ad_u, w[d - 1]))
                nw[d] = col
            w = nw
        acc = np.zeros(self.dim, dtype=np.int64)
        for i in range(1, p):
            inv_i = f.inv(i % p)
            acc = f.varr_add(acc, f.varr_scale(inv_i, w[i - 1]))
        return tuple(int(c) for c in acc)

    def _apply(self, ad_mat, col):
        f = self.field
        if f.k == 1:
            return (ad_mat @ col) % f.p
        out = np.zeros(self.dim, dtype=np.int64)
        for j, c in enumerate(col):
            if c:
                out = f.varr_add(out, f.varr_scale(int(c), ad_mat[:, j]))
        return out

    # -- validation ------------------------------------------------------------

    def validate(self, level="full"):
        f = self.field
        if level == "model" and not self.matrix_model:
            level = "full"
        # antisymmetry on the stored table
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = self._adb[i][:, j]
                rhs = f.varr_neg(self._adb[j][:, i])
                if (lhs != rhs).any():
                    raise PreconditionError(f"bracket table is not antisymmetric at ({i},{j})")
            if self._adb[i][:, i].any():
                raise PreconditionError(f"[b_{i}, b_{i}] != 0")
        if self.matrix_model:
            self._validate_model()
        if level == "full":
            self._validate_jacobi()
            self._validate_restricted()

    def _validate_jacobi(self):
        f = self.field
        for i in range(self.dim):
            bi = self.basis_vec(i)
            for j in range(i + 1, self.dim):
                bj = self.basis_vec(j)
                bij = self.bracket(bi, bj)
                for k in range(j, self.dim):
                    bk = self.basis_vec(k)
                    s = _vec_add(f, self.bracket(bij, bk),
                                 _vec_add(f, self.bracket(self.bracket(bj, bk), bi),
                                          self.bracket(self.bracket(bk, bi), bj)))
                    if not _vec_is_zero(s):
                        raise PreconditionError(f"Jacobi fails on basis triple ({i},{j},{k})")

    def _validate_restricted(self):
        # ad(b_i^[p]) == ad(b_i)^p as matrices
        f = self.field
        for i in range(self.dim):
            lhs = self.ad(self.pmap[i])
            rhs = (Mat(f, self.ad(self.basis_vec(i))) ** f.p).a
            if (lhs != rhs).any():
                raise PreconditionError(f"restrictedness fails: ad(b_{i}^[p]) != ad(b_{i})^p")

    def _validate_model(self):
        f = self.field
        for i, mi in enumerate(self.matrix_model):
            for j, mj in enumerate(self.matrix_model):
                comm = mi @ mj - mj @ mi
                if self.coords_of_matrix(comm) != self.bracket(self.basis_vec(i), self.basis_vec(j)):
                    raise PreconditionError(f"model commutator disagrees with table at ({i},{j})")
            if self.coords_of_matrix(mi ** f.p) != self.pmap[i]:
                raise PreconditionError(f"model p-th power disagrees with p-map at {i}")

    # -- element enumeration ----------------------------------------------------

    def element_count(self) -> int:
        return self.field.q ** self.dim

    def iter_elements(self):
        return itertools.product(range(self.field.q), repeat=self.dim)

    def __repr__(self):
        return f"RestrictedLieAlgebra(dim={self.dim}, field={self.field!r})"


class _CoordSolver:
    """Precomputed elimination expressing matrices in a fixed matrix basis."""

    def __init__(self, field, basis_mats):
        self.field = field
        self.dim = len(basis_mats)
        n2 = basis_mats[0].rows * basis_mats[0].cols
        cols = [m.a.ravel() for m in basis_mats]
        b = np.stack(cols, axis=1)  # n2 x dim
        aug = np.concatenate([b, np.eye(n2, dtype=np.int64)], axis=1)
        r, pivots = _rref(field, aug)
        if any(pc >= self.dim for pc in pivots[: self.dim]) or len([pc for pc in pivots if pc < self.dim]) != self.dim:
            raise PreconditionError("matrix model basis is linearly dependent")
        self._rows = r
        self._pivots = pivots
        self._n2 = n2

    def solve(self, m: Mat) -> Optional[Vec]:
        f = self.field
        vec = m.a.ravel()
        transformed = np.zeros(self._rows.shape[0], dtype=np.int64)
        e = self._rows[:, self.dim:]
        if f.k == 1:
            transformed = (e @ vec) % f.p
        else:
            for j, c in enumerate(vec):
                if c:
                    transformed = f.varr_add(transformed, f.varr_scale(int(c), e[:, j]))
        coords = [0] * self.dim
        for row, pc in enumerate(self._pivots):
            if pc < self.dim:
                coords[pc] = int(transformed[row])
            elif transformed[row]:
                return None  # inconsistent: m outside the span
        for row in range(len(self._pivots), self._rows.shape[0]):
            if transformed[row]:
                return None
        return tuple(coords)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def heisenberg(n: int, field: FieldSpec) -> RestrictedLieAlgebra:
    """Heisenberg algebra of dimension 2n+1: [x_i, y_i] = z, p-map zero (p >= 3)."""
    if field.p < 3:
        raise PreconditionError("the Heisenberg construction requires p >= 3")
    if n < 1:
        raise PreconditionError("n must be >= 1")
    dim = 2 * n + 1
    one = field.one
    brackets = {}
    for i in range(n):
        brackets[(i, n + i)] = {2 * n: one}
        brackets[(n + i, i)] = {2 * n: field.neg(one)}
    labels = [f"x{i+1}" for i in range(n)] + [f"y{i+1}" for i in range(n)] + ["z"]
    pmap = [(0,) * dim] * dim
    return RestrictedLieAlgebra(field, brackets, pmap, labels=labels, validate="full")


def abelian_p_trivial(dim: int, field: FieldSpec) -> RestrictedLieAlgebra:
    return RestrictedLieAlgebra(field, {}, [(0,) * dim] * dim, validate="full")


def toral(dim: int, field: FieldSpec) -> RestrictedLieAlgebra:
    """Abelian with b_i^[p] = b_i; its restricted nullcone is {0}."""
    pmap = []
    for i in range(dim):
        row = [0] * dim
        row[i] = field.one
        pmap.append(tuple(row))
    return RestrictedLieAlgebra(field, {}, pmap, validate="full")


def from_matrix_basis(field: FieldSpec, mats, labels=None, validate="model") -> RestrictedLieAlgebra:
    """Algebra spanned by commutator-closed, p-power-closed matrices."""
    solver = _CoordSolver(field, list(mats))
    dim = len(mats)
    brackets = {}
    pmap = []
    for i in range(dim):
        for j in range(dim):
            if i == j:
                continue
            comm = mats[i] @ mats[j] - mats[j] @ mats[i]
            coords = solver.solve(comm)
            if coords is None:
                raise PreconditionError("matrix span is not closed under commutators")
            out = {k: c for k, c in enumerate(coords) if c}
            if out:
                brackets[(i, j)] = out
        pc = solver.solve(mats[i] ** field.p)
        if pc is None:
            raise PreconditionError("matrix span is not closed under p-th powers")
        pmap.append(pc)
    return RestrictedLieAlgebra(field, brackets, pmap, labels=labels,
                                matrix_model=list(mats), validate=validate)


_SL_CACHE = {}


def special_linear(n: int, field: FieldSpec, validate="model") -> RestrictedLieAlgebra:
    """sl_n as a restricted matrix algebra: basis E_ij (i != j) then h_i = E_ii - E_(i+1)(i+1)."""
    key = (n, field.p, field.k, field.modulus)
    if key in _SL_CACHE:
        return _SL_CACHE[key]
    if n < 2:
        raise PreconditionError("n must be >= 2")
    one = field.one
    mats = []
    labels = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            m = np.zeros((n, n), dtype=np.int64)
            m[i, j] = one
            mats.append(Mat(field, m))
            labels.append(f"E{i}{j}")
    for i in range(n - 1):
        m = np.zeros((n, n), dtype=np.int64)
        m[i, i] = one
        m[i + 1, i + 1] = field.neg(one)
        mats.append(Mat(field, m))
        labels.append(f"h{i+1}")
    alg = from_matrix_basis(field, mats, labels=labels, validate=validate)
    _SL_CACHE[key] = alg
    return alg


# ---------------------------------------------------------------------------
# nullcone, centralizers, elementary subalgebras
# ---------------------------------------------------------------------------

def nullcone(g: RestrictedLieAlgebra, budget: int = DEFAULT_BUDGET):
    """All x with x^[p] = 0, in lexicographic coordinate order (zero first)."""
    total = g.element_count()
    if total > budget:
        raise BudgetError(
            f"nullcone needs {total} points > budget {budget}; use srk_sampled for a non-certified bound")
    f = g.field
    if g.matrix_model and f.k == 1:
        coords = np.array(list(g.iter_elements()), dtype=np.int64)
        model = np.stack([m.a for m in g.matrix_model])  # dim x n x n
        x = np.tensordot(coords, model, axes=([1], [0])) % f.p
        power = _batch_matpow(x, f.p, f.p)
        mask = ~power.any(axis=(1, 2))
        return [tuple(int(c) for c in row) for row in coords[mask]]
    out = []
    for x in g.iter_elements():
        if _vec_is_zero(g.pmap_eval(x)):
            out.append(x)
    return out


def _batch_matpow(x, e, p):
    n = x.shape[-1]
    result = np.broadcast_to(np.eye(n, dtype=np.int64), x.shape).copy()
    base = x
    while e:
        if e & 1:
            result = np.matmul(result, base) % p
        base = np.matmul(base, base) % p
        e >>= 1
    return result


def centralizer(g: RestrictedLieAlgebra, x: Vec):
    """Basis of ker(ad x) as coordinate tuples."""
    from .fields import mat_kernel_basis
    return mat_kernel_basis(Mat(g.field, g.ad(x)))


def is_elementary(g: RestrictedLieAlgebra, basis) -> bool:
    """Independent, pairwise commuting, p-map zero."""
    basis = [tuple(v) for v in basis]
    if not basis:
        return True
    from .fields import mat_rank
    if mat_rank(Mat(g.field, np.array(basis, dtype=np.int64))) != len(basis):
        return False
    for i, u in enumerate(basis):
        for v in basis[i + 1:]:
            if not _vec_is_zero(g.bracket(u, v)):
                return False
    return all(_vec_is_zero(g.pmap_eval(v)) for v in basis)


@dataclass(frozen=True)
class ElementarySubalgebra:
    rank: int
    basis: tuple  # tuple of coordinate tuples


@dataclass(frozen=True)
class CommutingTuple:
    entries: tuple
    independent: bool

    @classmethod
    def of(cls, g: RestrictedLieAlgebra, entries):
        from .fields import mat_rank
        entries = tuple(tuple(v) for v in entries)
        for u in entries:
            if not _vec_is_zero(g.pmap_eval(u)):
                raise PreconditionError("tuple entry outside the restricted nullcone")
        for i, u in enumerate(entries):
            for v in entries[i + 1:]:
                if not _vec_is_zero(g.bracket(u, v)):
                    raise PreconditionError("tuple entries do not commute")
        indep = mat_rank(Mat(g.field, np.array(entries, dtype=np.int64))) == len(entries)
        return cls(entries=entries, independent=indep)


# ---------------------------------------------------------------------------
# local rank search
# ---------------------------------------------------------------------------

def _canonical_projective(f, v):
    """Scale v so its first nonzero coordinate is 1."""
    for c in v:
        if c:
            return _vec_scale(f, f.inv(c), v)
    return v


class _TupleSearch:
    """Max independent commuting tuple search over a fixed projective point set."""

    def __init__(self, g: RestrictedLieAlgebra, proj_points):
        self.g = g
        self.f = g.field
        self.points = list(proj_points)
        self.index = {v: i for i, v in enumerate(self.points)}
        self.n = len(self.points)
        self.commuting = self._commuting_masks()

    def _commuting_masks(self):
        f, g = self.f, self.g
        n = self.n
        if n == 0:
            return []
        masks = []
        pts = np.array(self.points, dtype=np.int64).T  # dim x n
        for i in range(n):
            ad_u = g.ad(self.points[i])
            if f.k == 1:
                br = (ad_u @ pts) % f.p
            else:
                br = np.zeros((g.dim, n), dtype=np.int64)
                for r in range(g.dim):
                    rowacc = np.zeros(n, dtype=np.int64)
                    for j in range(g.dim):
                        if ad_u[r, j]:
                            rowacc = f.varr_add(rowacc, f.varr_scale(int(ad_u[r, j]), pts[j]))
                    br[r] = rowacc
            zero_cols = ~br.any(axis=0)
            mask = 0
            for j in np.nonzero(zero_cols)[0]:
                mask |= 1 << int(j)
            masks.append(mask)
        return masks

    def _span_closure_bits(self, span_vecs):
        """All projective candidate bits lying in the span of span_vecs."""
        f = self.f
        pts = [self.g.zero()]
        mask = 0
        for v in span_vecs:
            new = []
            for w in pts:
                for c in range(1, f.q):
                    u = _vec_add(f, w, _vec_scale(f, c, v))
                    new.append(u)
            for u in new:
                b = self.index.get(_canonical_projective(f, u))
                if b is not None:
                    mask |= 1 << b
            pts.extend(new)
        return mask, pts

    def max_tuple_containing(self, x, stop_at=None):
        """(r, witness, exhausted): r = best tuple size found with x forced in.

        A tuple of size stop_at aborts the search early (exhausted=False); the
        returned witness always starts with x.
        """
        f = self.f
        xc = _canonical_projective(f, x)
        xi = self.index[xc]
        span_mask, span_pts = self._span_closure_bits([xc])
        best = [1, [xc], True]
        allowed0 = self.commuting[xi]

        def rec(last, allowed, chosen, span_mask, span_pts, pivots_dim):
            fresh = allowed & ~span_mask
            size = len(chosen)
            if size > best[0]:
                best[0], best[1] = size, list(chosen)
            if stop_at is not None and best[0] >= stop_at:
                best[2] = False
                return True  # abort
            # best < stop_at here (else we already aborted), so a branch that
            # cannot beat best cannot reach stop_at either
            cap = size + min(fresh.bit_count(), self.g.dim - pivots_dim)
            if cap <= best[0]:
                return False
            # if the remaining candidates all pairwise commute, the maximum is
            # size + rank(fresh modulo span): close the node in one step
            m = fresh
            all_comm = True
            bits = []
            while m:
                b = m & -m
                i = b.bit_length() - 1
                m ^= b
                bits.append(i)
                if fresh & ~self.commuting[i]:
                    all_comm = False
                    break
            if all_comm:
                extra = self._rank_mod_span(bits, chosen)
                total = size + extra
                if total > best[0]:
                    # materialize a witness by greedy span extension
                    wit = list(chosen)
                    sm, sp = span_mask, list(span_pts)
                    for i in bits:
                        if not ((1 << i) & sm):
                            wit.append(self.points[i])
                            add_mask, sp = self._extend_span(sp, self.points[i])
                            sm |= add_mask
                    best[0], best[1] = total, wit
                if stop_at is not None and best[0] >= stop_at:
                    best[2] = False
                    return True
                return False
            m = fresh
            while m:
                b = m & -m
                i = b.bit_length() - 1
                m ^= b
                if i <= last:
                    continue
                v = self.points[i]
                add_mask, new_pts = self._extend_span(span_pts, v)
                if rec(i, allowed & self.commuting[i], chosen + [v],
                       span_mask | add_mask, new_pts, pivots_dim + 1):
                    return True
            return False

        rec(-1, allowed0, [xc], span_mask, span_pts, 1)
        return best[0], best[1], best[2]

    def _extend_span(self, span_pts, v):
        f = self.f
        mask = 0
        new = []
        for w in span_pts:
            for c in range(1, f.q):
                u = _vec_add(f, w, _vec_scale(f, c, v))
                new.append(u)
                b = self.index.get(_canonical_projective(f, u))
                if b is not None:
                    mask |= 1 << b
        return mask, span_pts + new

    def _rank_mod_span(self, bits, chosen):
        from .fields import mat_rank
        rows = [list(v) for v in chosen] + [list(self.points[i]) for i in bits]
        return mat_rank(Mat(self.f, np.array(rows, dtype=np.int64))) - len(chosen)


class LocalRank(NamedTuple):
    rank: int
    witness: ElementarySubalgebra


def _projective_reps(f, points):
    reps = sorted({_canonical_projective(f, v) for v in points if any(v)})
    return reps


def local_rank(g: RestrictedLieAlgebra, x: Vec, budget: int = DEFAULT_BUDGET) -> LocalRank:
    """Largest elementary-subalgebra dimension at x, with a witness containing x."""
    x = tuple(x)
    if _vec_is_zero(x):
        raise PreconditionError("local rank is defined for nonzero nullcone points")
    if not _vec_is_zero(g.pmap_eval(x)):
        raise PreconditionError("x is outside the restricted nullcone")
    f = g.field
    zbasis = centralizer(g, x)
    d = len(zbasis)
    if f.q ** d > budget:
        raise BudgetError(f"centralizer has {f.q ** d} points > budget {budget}")
    cand = []
    basis_arr = np.array(zbasis, dtype=np.int64)
    for coeffs in itertools.product(range(f.q), repeat=d):
        if f.k == 1:
            v = tuple(int(c) for c in (np.array(coeffs, dtype=np.int64) @ basis_arr) % f.p)
        else:
            v = g.zero()
            for c, w in zip(coeffs, zbasis):
                if c:
                    v = _vec_add(f, v, _vec_scale(f, c, w))
        if any(v) and _vec_is_zero(g.pmap_eval(v)):
            cand.append(v)
    reps = _projective_reps(f, cand)
    search = _TupleSearch(g, reps)
    r, witness, _ = search.max_tuple_containing(x)
    wit = list(witness)
    wit[0] = x  # report the caller's point, not its projective representative
    return LocalRank(rank=r, witness=ElementarySubalgebra(rank=r, basis=tuple(wit)))


class SrkBrute(NamedTuple):
    srk: int
    r_min: int
    o_rmin_count: int
    o_rmin: tuple       # all nonzero nullcone points of minimal local rank, sorted
    witness: Optional[ElementarySubalgebra]
    note: str


def srk_brute(g: RestrictedLieAlgebra, budget: int = DEFAULT_BUDGET) -> SrkBrute:
    """Exact saturation rank by exhausting the restricted nullcone.

    Local ranks are scalar-invariant, so the search runs once per projective
    class and results are expanded back to points.  The minimum is maintained
    with an early-abort threshold: a class proven to exceed the current
    minimum is discarded without exhausting its search tree.
    """
    points = nullcone(g, budget=budget)
    nonzero = [v for v in points if any(v)]
    if not nonzero:
        return SrkBrute(srk=0, r_min=0, o_rmin_count=0, o_rmin=(),
                        witness=None, note="restricted nullcone is {0}; srk reported as 0")
    f = g.field
    reps = _projective_reps(f, nonzero)
    search = _TupleSearch(g, reps)
    order = sorted(range(len(reps)), key=lambda i: (search.commuting[i].bit_count(), i))
    m = None
    argmin = []
    witnesses = {}
    for i in order:
        x = reps[i]
        stop = None if m is None else m + 1
        r, wit, exhausted = search.max_tuple_containing(x, stop_at=stop)
        if not exhausted:
            continue  # r_x > current minimum
        if m is None or r < m:
            m = r
            argmin = [x]
            witnesses = {x: wit}
        elif r == m:
            argmin.append(x)
            witnesses[x] = wit
    o_rmin = sorted(_vec_scale(f, c, x) for x in argmin for c in range(1, f.q))
    wx = min(argmin)
    witness = ElementarySubalgebra(rank=m, basis=tuple(witnesses[wx]))
    return SrkBrute(srk=m, r_min=m, o_rmin_count=len(o_rmin), o_rmin=tuple(o_rmin),
                    witness=witness, note="")


class SampledBound(NamedTuple):
    srk_upper_bound: int
    certified: bool
    samples: int


def srk_sampled(g: RestrictedLieAlgebra, samples: int = 32, seed: int = 0,
                budget: int = DEFAULT_BUDGET) -> SampledBound:
    """Non-certified bound: min of exact local ranks over sampled nullcone points.

    Each sampled local rank is >= srk(g), so the reported minimum is an upper
    bound for the saturation rank, not a certificate.
    """
    rng = random.Random(seed)
    f = g.field
    best = None
    found = 0
    attempts = 0
    while found < samples and attempts < 1000 * samples:
        attempts += 1
        x = tuple(rng.randrange(f.q) for _ in range(g.dim))
        if _vec_is_zero(x) or not _vec_is_zero(g.pmap_eval(x)):
            continue
        found += 1
        r = local_rank(g, x, budget=budget).rank
        if best is None or r < best:
            best = r
    if best is None:
        raise PreconditionError("no nonzero nullcone point found by sampling")
    return SampledBound(srk_upper_bound=best, certified=False, samples=found)


# ---------------------------------------------------------------------------
# JSON interface
# ---------------------------------------------------------------------------

def _coeff(field, payload):
    if isinstance(payload, int):
        return field.from_int(payload)
    return field.from_coeffs(list(payload) + [0] * (field.k - len(payload)))


def load_lie(data) -> RestrictedLieAlgebra:
    """Parse the structure-constant JSON schema into an algebra."""
    if isinstance(data, str):
        with open(data) as fp:
            data = json.load(fp)
    try:
        p = int(data["p"])
        k = int(data.get("k", 1))
        dim = int(data["dim"])
        from .fields import field_make
        field = field_make(p, k)
        labels = data.get("labels")
        declared = {}
        for entry in data.get("brackets", []):
            i, j = int(entry["i"]), int(entry["j"])
            declared[(i, j)] = {int(t["k"]): _coeff(field, t["c"]) for t in entry.get("out", [])}
        brackets = dict(declared)
        for (i, j), out in declared.items():
            if (j, i) not in declared:
                brackets[(j, i)] = {kk: field.neg(c) for kk, c in out.items()}
        pmap = [(0,) * dim for _ in range(dim)]
        for entry in data.get("pmap", []):
            i = int(entry["i"])
            row = [0] * dim
            for t in entry.get("out", []):
                row[int(t["k"])] = _coeff(field, t["c"])
            pmap[i] = tuple(row)
        model = None
        if data.get("matrix_model"):
            model = []
            for flat in data["matrix_model"]:
                n = int(round(len(flat) ** 0.5))
                if n * n != len(flat):
                    raise PreconditionError("matrix model entries must form square matrices")
                codes = [_coeff(field, e) for e in flat]
                model.append(Mat(field, np.array(codes, dtype=np.int64).reshape(n, n)))
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"malformed Lie algebra input: {exc}")
    return RestrictedLieAlgebra(field, brackets, pmap, labels=labels,
                                matrix_model=model, validate="full")


def lie_report(g: RestrictedLieAlgebra, budget: int = DEFAULT_BUDGET) -> dict:
    res = srk_brute(g, budget=budget)
    report = {
        "srk": res.srk,
        "r_min": res.r_min,
        "o_rmin_count": res.o_rmin_count,
        "witnesses": [] if res.witness is None else
            [[list(g.field.coeffs(c)) for c in v] for v in res.witness.basis],
    }
    if res.note:
        report["note"] = res.note
    return report

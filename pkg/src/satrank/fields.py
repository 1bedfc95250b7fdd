"""Arithmetic over F_{p^k} and dense matrices on top of it.

A field element is encoded as a plain int in [0, p**k): the base-p digits of
the code are the coefficients of the residue polynomial, least significant
digit first, so code = sum(c_i * p**i) for the element sum(c_i * x**i) in
F_p[x]/(modulus).  For k == 1 this is ordinary arithmetic mod p.  For k >= 2
the field precomputes q x q add/mul tables (q = p**k), which also back the
vectorized numpy helpers; above _TABLE_CAP codes it falls back to on-the-fly
polynomial reduction.

Matrices are numpy int64 arrays of codes wrapped in Mat.  Rank and kernel go
through Gaussian elimination over the field; nothing here is sparse.
"""

from __future__ import annotations

import numpy as np

from .errors import PreconditionError

_TABLE_CAP = 2048  # largest q for which the q*q tables are built


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient tuples, little endian)
# ---------------------------------------------------------------------------

def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    for d in range(len(a) - 1, dm - 1, -1):
        c = a[d] % p
        if c:
            for i in range(dm + 1):
                a[d - dm + i] = (a[d - dm + i] - c * m[i]) % p
    return [c % p for c in a[:dm]] + [0] * max(0, dm - len(a))


def _divides(g, f, p):
    """Whether monic g divides f over F_p."""
    r = list(f)
    dg = len(g) - 1
    while len(r) - 1 >= dg:
        lead = r[-1] % p
        if lead:
            shift = len(r) - 1 - dg
            for i in range(dg + 1):
                r[shift + i] = (r[shift + i] - lead * g[i]) % p
        r.pop()
    return all(c % p == 0 for c in r)


def _is_irreducible(modulus, p, k):
    # exhaustive factor scan; fine for k <= 4
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for m in range(p ** d):
            g = [(m // p ** i) % p for i in range(d)] + [1]
            if _divides(g, modulus, p):
                return False
    return True


def field_make(p: int, k: int = 1) -> "FieldSpec":
    """F_{p^k} with the lexicographically smallest irreducible monic modulus.

    Candidates x^k + c_{k-1}x^{k-1} + ... + c_0 are scanned in ascending
    lexicographic order on (c_{k-1}, ..., c_0); the first irreducible one
    wins, so the modulus (and hence every code) is reproducible.
    """
    if not is_prime(p):
        raise PreconditionError(f"p={p} is not prime")
    if not 1 <= k <= 4:
        raise PreconditionError(f"extension degree k={k} out of range [1, 4]")
    if k == 1:
        return FieldSpec(p, 1, (0, 1))
    for m in range(p ** k):
        coeffs = tuple((m // p ** i) % p for i in range(k))
        modulus = coeffs + (1,)
        if _is_irreducible(modulus, p, k):
            return FieldSpec(p, k, modulus)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldSpec:
    """The field F_{p^k} = F_p[x]/(modulus) acting on int codes."""

    def __init__(self, p: int, k: int, modulus):
        if not is_prime(p):
            raise PreconditionError(f"p={p} is not prime")
        if not 1 <= k <= 4:
            raise PreconditionError(f"extension degree k={k} out of range [1, 4]")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[k] != 1:
            raise PreconditionError("modulus must be monic of degree k")
        if not _is_irreducible(modulus, p, k):
            raise PreconditionError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p ** k
        self.zero = 0
        self.one = 1 % self.q
        self._add_t = self._mul_t = self._neg_t = self._inv_t = None
        if k > 1 and self.q <= _TABLE_CAP:
            self._build_tables()

    # -- construction of the q*q tables (k >= 2 only) -----------------------

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        codes = np.arange(q, dtype=np.int64)
        digits = np.stack([(codes // p ** i) % p for i in range(k)], axis=1)
        # x^d mod modulus for d = k .. 2k-2, as digit vectors
        xpow = {}
        cur = [(-c) % p for c in self.modulus[:k]]
        xpow[k] = list(cur)
        for d in range(k + 1, 2 * k - 1):
            top = cur[k - 1]
            cur = [0] + cur[: k - 1]
            if top:
                red = xpow[k]
                cur = [(cur[i] + top * red[i]) % p for i in range(k)]
            xpow[d] = list(cur)

        acc = np.zeros((q, q, k), dtype=np.int64)
        for i in range(k):
            di = digits[:, i][:, None]
            for j in range(k):
                contrib = di * digits[:, j][None, :]
                d = i + j
                if d < k:
                    acc[:, :, d] += contrib
                else:
                    red = xpow[d]
                    for t in range(k):
                        if red[t]:
                            acc[:, :, t] += contrib * red[t]
        acc %= p
        weights = np.array([p ** i for i in range(k)], dtype=np.int64)
        self._mul_t = (acc * weights).sum(axis=2)

        s = (digits[:, None, :] + digits[None, :, :]) % p
        self._add_t = (s * weights).sum(axis=2)
        self._neg_t = ((-digits) % p * weights).sum(axis=1)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(self._mul_t[a] == 1)[0][0])
        self._inv_t = inv

    # -- scalar ops ----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self._add_t is not None:
            return int(self._add_t[a, b])
        return self.from_coeffs([(x + y) % self.p for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self._neg_t is not None:
            return int(self._neg_t[a])
        return self.from_coeffs([(-x) % self.p for x in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if self._mul_t is not None:
            return int(self._mul_t[a, b])
        prod = _poly_mul(self.coeffs(a), self.coeffs(b), self.p)
        return self.from_coeffs(_poly_mod(prod, self.modulus, self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._inv_t is not None:
            return int(self._inv_t[a])
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r, b = self.one, a
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def frob(self, a: int) -> int:
        return self.pow(a, self.p)

    def coeffs(self, a: int):
        """Little-endian coefficient tuple of a code."""
        return tuple((a // self.p ** i) % self.p for i in range(self.k))

    def from_coeffs(self, cs) -> int:
        cs = list(cs)
        if len(cs) != self.k:
            raise PreconditionError(f"coefficient vector must have length {self.k}")
        return sum((int(c) % self.p) * self.p ** i for i, c in enumerate(cs))

    def from_int(self, n: int) -> int:
        """Image of an integer under Z -> F_p <= F_q."""
        return n % self.p

    def elements(self):
        return range(self.q)

    # -- vectorized ops on numpy code arrays ----------------------------------

    def varr_add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self._add_t is None:
            return self._vectorized(self.add, a, b)
        return self._add_t[a, b]

    def varr_mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        if self._mul_t is None:
            return self._vectorized(self.mul, a, b)
        return self._mul_t[a, b]

    def varr_neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        if self._neg_t is None:
            return self._vectorized(lambda x, _: self.neg(x), a, a)
        return self._neg_t[a]

    def varr_scale(self, c, a):
        if self.k == 1:
            return (c * a) % self.p
        if self._mul_t is None:
            return self._vectorized(lambda x, y: self.mul(int(c), x), a, a)
        return self._mul_t[c][a]

    @staticmethod
    def _vectorized(op, a, b):
        # slow elementwise fallback for fields above the table cap
        a = np.asarray(a)
        b = np.broadcast_to(np.asarray(b), np.broadcast_shapes(a.shape, np.shape(b)))
        a = np.broadcast_to(a, b.shape)
        out = np.empty(b.shape, dtype=np.int64)
        flat_a, flat_b, flat_o = a.ravel(), b.ravel(), out.ravel()
        for idx in range(flat_o.size):
            flat_o[idx] = op(int(flat_a[idx]), int(flat_b[idx]))
        return out

    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus))

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.k}(mod={self.modulus})"


class Mat:
    """Dense matrix of field codes; all operations return new matrices."""

    __slots__ = ("field", "a")

    def __init__(self, field: FieldSpec, array):
        self.field = field
        a = np.array(array, dtype=np.int64)
        if a.ndim != 2:
            raise PreconditionError("matrix data must be 2-dimensional")
        self.a = a

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field, n):
        m = np.zeros((n, n), dtype=np.int64)
        np.fill_diagonal(m, field.one)
        return cls(field, m)

    @classmethod
    def from_rows(cls, field, rows):
        a = np.array([[int(c) % field.q for c in row] for row in rows], dtype=np.int64)
        return cls(field, a)

    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    def copy(self):
        return Mat(self.field, self.a.copy())

    def __add__(self, other):
        return Mat(self.field, self.field.varr_add(self.a, other.a))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Mat(self.field, self.field.varr_neg(self.a))

    def __matmul__(self, other):
        f = self.field
        if f.k == 1:
            return Mat(f, (self.a @ other.a) % f.p)
        acc = np.zeros((self.rows, other.cols), dtype=np.int64)
        for t in range(self.cols):
            term = f.varr_mul(self.a[:, t][:, None], other.a[t, :][None, :])
            acc = f.varr_add(acc, term)
        return Mat(f, acc)

    def scale(self, c: int):
        return Mat(self.field, self.field.varr_scale(c % self.field.q, self.a))

    def __pow__(self, e: int):
        if self.rows != self.cols:
            raise PreconditionError("matrix power needs a square matrix")
        if e < 0:
            raise PreconditionError("negative matrix powers not supported")
        r = Mat.identity(self.field, self.rows)
        b = self
        while e:
            if e & 1:
                r = r @ b
            b = b @ b
            e >>= 1
        return r

    def t(self):
        return Mat(self.field, self.a.T.copy())

    def trace(self) -> int:
        f = self.field
        t = 0
        for i in range(min(self.rows, self.cols)):
            t = f.add(t, int(self.a[i, i]))
        return t

    def is_zero(self) -> bool:
        return not self.a.any()

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.field == other.field
                and self.a.shape == other.a.shape and bool((self.a == other.a).all()))

    def __hash__(self):
        return hash((self.field, self.a.shape, self.a.tobytes()))

    def __repr__(self):
        return f"Mat({self.a.tolist()})"

    def tolist(self):
        return self.a.tolist()


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def _rref(field, a):
    """Reduced row echelon form of a code array; returns (array, pivot cols)."""
    a = a.copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        ic = field.inv(int(a[r, c]))
        a[r] = field.varr_scale(ic, a[r])
        for i in range(rows):
            if i != r and a[i, c]:
                factor = field.neg(int(a[i, c]))
                a[i] = field.varr_add(a[i], field.varr_scale(factor, a[r]))
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def mat_rank(m: Mat) -> int:
    _, pivots = _rref(m.field, m.a)
    return len(pivots)


def mat_kernel_basis(m: Mat):
    """Basis of the right null space as coordinate tuples; [] iff full column rank."""
    f = m.field
    r, pivots = _rref(f, m.a)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * m.cols
        v[fc] = f.one
        for row, pc in enumerate(pivots):
            v[pc] = f.neg(int(r[row, fc]))
        basis.append(tuple(v))
    return basis


def mat_det(m: Mat) -> int:
    """Determinant by fraction-free elimination over the field."""
    if m.rows != m.cols:
        raise PreconditionError("determinant needs a square matrix")
    f = m.field
    a = m.a.copy()
    det = f.one
    n = m.rows
    for c in range(n):
        piv = None
        for r in range(c, n):
            if a[r, c]:
                piv = r
                break
        if piv is None:
            return 0
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            det = f.neg(det)
        det = f.mul(det, int(a[c, c]))
        ic = f.inv(int(a[c, c]))
        for r in range(c + 1, n):
            if a[r, c]:
                factor = f.neg(f.mul(int(a[r, c]), ic))
                a[r] = f.varr_add(a[r], f.varr_scale(factor, a[c]))
    return det


def mat_is_p_nilpotent(m: Mat, p: int) -> bool:
    """Whether m**p == 0 (membership in the restricted nullcone of gl_n)."""
    if m.rows != m.cols:
        raise PreconditionError("p-nilpotency is only defined for square matrices")
    return (m ** p).is_zero()


def mat_solve(m: Mat, rhs):
    """One solution x of m @ x = rhs as a tuple, or None if inconsistent."""
    f = m.field
    aug = np.concatenate([m.a, np.array(rhs, dtype=np.int64).reshape(-1, 1)], axis=1)
    r, pivots = _rref(f, aug)
    if m.cols in pivots:
        return None
    x = [0] * m.cols
    for row, pc in enumerate(pivots):
        x[pc] = int(r[row, m.cols])
    return tuple(x)

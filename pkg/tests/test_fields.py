import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satrank import PreconditionError
from satrank.fields import (
    FieldSpec,
    Mat,
    field_make,
    is_prime,
    mat_is_p_nilpotent,
    mat_kernel_basis,
    mat_rank,
    mat_solve,
)

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3), (3, 4), (2, 4)]


def naive_irreducible_quadratics(p):
    # independent scan: monic x^2+bx+c with no root in F_p
    out = []
    for b in range(p):
        for c in range(p):
            if all((x * x + b * x + c) % p != 0 for x in range(p)):
                out.append((c, b, 1))
    return out


def test_field_make_prime_field_trivial_modulus():
    f = field_make(2, 1)
    assert (f.p, f.k, f.q) == (2, 1, 2)
    assert f.modulus == (0, 1)


def test_field_make_f9_smallest_irreducible():
    # oracle: exhaustive irreducibility scan over the 9 monic degree-2 candidates,
    # ordered lexicographically on (b, c) for x^2 + b x + c
    cands = []
    for b in range(3):
        for c in range(3):
            cands.append((c, b, 1))
    irred = [m for m in cands if m in naive_irreducible_quadratics(3)]
    assert field_make(3, 2).modulus == irred[0] == (1, 0, 1)  # x^2 + 1


def test_field_make_rejects_non_prime():
    with pytest.raises(PreconditionError):
        field_make(4, 1)
    with pytest.raises(PreconditionError):
        field_make(5, 0)
    with pytest.raises(PreconditionError):
        field_make(5, 5)


def test_fieldspec_rejects_reducible_modulus():
    with pytest.raises(PreconditionError):
        FieldSpec(3, 2, (0, 0, 1))  # x^2 = x * x
    with pytest.raises(PreconditionError):
        FieldSpec(2, 2, (1, 0, 1))  # x^2 + 1 = (x+1)^2 over F_2


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_field_axioms_exhaustive_small(p, k):
    """Associativity/distributivity/inverses, exhaustive for |F| <= 81."""
    f = field_make(p, k)
    assert f.q <= 81
    els = list(f.elements())
    arr = np.arange(f.q)
    # commutativity + associativity of * via vector ops
    a, b = np.meshgrid(arr, arr, indexing="ij")
    assert (f.varr_mul(a, b) == f.varr_mul(b, a)).all()
    assert (f.varr_add(a, b) == f.varr_add(b, a)).all()
    for x in els:
        row_mul = f.varr_mul(np.full(f.q, x), arr)
        for y in els:
            assert f.varr_mul(np.full(f.q, f.mul(x, y)), arr).tolist() == \
                f.varr_mul(np.full(f.q, x), f.varr_mul(np.full(f.q, y), arr)).tolist()
            # distributivity x*(y+z) = x*y + x*z
            lhs = f.varr_scale(x, f.varr_add(np.full(f.q, y), arr))
            rhs = f.varr_add(np.full(f.q, f.mul(x, y)), f.varr_scale(x, arr))
            assert (lhs == rhs).all()
    for x in els[1:]:
        assert f.mul(x, f.inv(x)) == f.one


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_frobenius_additive_exhaustive(p, k):
    f = field_make(p, k)
    for a in f.elements():
        for b in f.elements():
            assert f.frob(f.add(a, b)) == f.add(f.frob(a), f.frob(b))


@given(st.integers(0, 124), st.integers(0, 124), st.integers(0, 124))
@settings(max_examples=200, deadline=None)
def test_field_axioms_sampled_f125(a, b, c):
    f = field_make(5, 3)  # |F| = 125 > 81: sampled
    assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    if a:
        assert f.mul(a, f.inv(a)) == f.one
    assert f.frob(f.add(a, b)) == f.add(f.frob(a), f.frob(b))


def jordan_block(field, n):
    m = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        m[i, i + 1] = 1
    return Mat(field, m)


def test_mat_rank_trivial():
    f = field_make(3, 1)
    assert mat_rank(Mat.zeros(f, 3, 3)) == 0
    for n in (1, 2, 5):
        assert mat_rank(Mat.identity(f, n)) == n


def test_mat_rank_jordan3():
    # hand elimination: two independent rows
    f = field_make(5, 1)
    assert mat_rank(jordan_block(f, 3)) == 2


def test_mat_kernel_basis():
    f = field_make(3, 1)
    assert mat_kernel_basis(Mat.identity(f, 4)) == []
    z = Mat.zeros(f, 3, 3)
    assert mat_kernel_basis(z) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    j2 = jordan_block(f, 2)
    assert mat_kernel_basis(j2) == [(1, 0)]


def test_mat_is_p_nilpotent():
    f = field_make(7, 1)
    j3 = jordan_block(f, 3)
    assert mat_is_p_nilpotent(Mat.zeros(f, 4, 4), 2)
    assert mat_is_p_nilpotent(j3, 3)
    assert not mat_is_p_nilpotent(j3, 2)  # J3^2 has the corner entry
    assert not mat_is_p_nilpotent(Mat.identity(f, 3), 5)
    with pytest.raises(PreconditionError):
        mat_is_p_nilpotent(Mat.zeros(f, 2, 3), 2)


def random_mat(field, rng, n):
    return Mat(field, rng.integers(0, field.q, size=(n, n)))


def random_invertible(field, rng, n):
    while True:
        m = random_mat(field, rng, n)
        if mat_rank(m) == n:
            return m


@pytest.mark.parametrize("p,k", [(3, 1), (5, 1), (3, 2)])
def test_rank_nullity_and_invariance(p, k):
    f = field_make(p, k)
    rng = np.random.default_rng(1234)
    for n in (2, 3, 4, 6):
        for _ in range(8):
            m = random_mat(f, rng, n)
            r = mat_rank(m)
            assert r + len(mat_kernel_basis(m)) == n
            # invariance under row/col permutation
            perm = rng.permutation(n)
            assert mat_rank(Mat(f, m.a[perm])) == r
            assert mat_rank(Mat(f, m.a[:, perm])) == r
            # invariance under invertible multiply
            g = random_invertible(f, rng, n)
            assert mat_rank(g @ m) == r
            assert mat_rank(m @ g) == r


def test_matmul_extension_field_agrees_with_scalar_loop():
    f = field_make(3, 2)
    rng = np.random.default_rng(7)
    a = random_mat(f, rng, 3)
    b = random_mat(f, rng, 3)
    c = a @ b
    for i in range(3):
        for j in range(3):
            s = 0
            for t in range(3):
                s = f.add(s, f.mul(int(a.a[i, t]), int(b.a[t, j])))
            assert s == int(c.a[i, j])


def test_mat_det():
    from satrank.fields import mat_det
    f = field_make(5, 1)
    assert mat_det(Mat.identity(f, 3)) == 1
    assert mat_det(Mat.zeros(f, 2, 2)) == 0
    assert mat_det(Mat.from_rows(f, [[1, 2], [3, 4]])) == (4 - 6) % 5
    # multiplicative on random samples, also over an extension field
    for fld in (f, field_make(3, 2)):
        rng = np.random.default_rng(3)
        for _ in range(10):
            a = random_mat(fld, rng, 3)
            b = random_mat(fld, rng, 3)
            assert mat_det(a @ b) == fld.mul(mat_det(a), mat_det(b))
    with pytest.raises(PreconditionError):
        mat_det(Mat.zeros(f, 2, 3))


def test_mat_solve():
    f = field_make(5, 1)
    m = Mat.from_rows(f, [[1, 2], [3, 4]])
    x = mat_solve(m, (1, 1))
    assert x is not None
    mx = m @ Mat(f, np.array(x).reshape(-1, 1))
    assert mx.a.ravel().tolist() == [1, 1]
    inconsistent = Mat.from_rows(f, [[1, 1], [2, 2]])
    assert mat_solve(inconsistent, (0, 1)) is None


def test_kernel_vectors_are_killed():
    f = field_make(3, 2)
    rng = np.random.default_rng(99)
    for _ in range(10):
        m = random_mat(f, rng, 4)
        for v in mat_kernel_basis(m):
            col = Mat(f, np.array(v, dtype=np.int64).reshape(-1, 1))
            assert (m @ col).is_zero()


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_field_element_roundtrip():
    f = field_make(3, 4)
    for a in itertools.islice(f.elements(), 0, 81, 7):
        assert f.from_coeffs(f.coeffs(a)) == a

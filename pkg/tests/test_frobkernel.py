import itertools
import random

import numpy as np
import pytest

from satrank import PreconditionError
from satrank.fields import Mat, field_make, mat_is_p_nilpotent
from satrank.frobkernel import (
    ElemAbComplexity,
    NilPair,
    OneParamSubgroup,
    complexity,
    conjugate_pair,
    eval_one_param,
    frob2_report,
    homomorphism_sweep,
    regular_nilpotent,
    srk_height_bound,
    srk_sln2,
    trunc_exp,
    u_e_data,
)

F5 = field_make(5, 1)
F7 = field_make(7, 1)


def test_trunc_exp_zero():
    assert trunc_exp(Mat.zeros(F5, 3, 3), 5) == Mat.identity(F5, 3)


def test_trunc_exp_regular_sl3_p5():
    e = regular_nilpotent(3, F5)
    # I + e + e^2 / 2 with 1/2 = 3 mod 5
    assert trunc_exp(e, 5) == Mat.from_rows(F5, [[1, 1, 3], [0, 1, 1], [0, 0, 1]])


def test_trunc_exp_inverse():
    for n in (2, 3, 4):
        e = regular_nilpotent(n, F5)
        x = e + (e @ e).scale(2)
        assert trunc_exp(x, 5) @ trunc_exp(-x, 5) == Mat.identity(F5, n)


def test_trunc_exp_rejects_non_nilpotent():
    with pytest.raises(PreconditionError):
        trunc_exp(Mat.identity(F5, 2), 5)
    # regular nilpotent of size 4 is not 3-nilpotent
    with pytest.raises(PreconditionError):
        trunc_exp(regular_nilpotent(4, field_make(3, 1)), 3)


def test_trunc_exp_unipotent_det_one():
    from satrank.fields import mat_det
    rng = random.Random(2)
    for n, p in [(3, 5), (4, 5), (4, 7)]:
        f = field_make(p, 1)
        e = regular_nilpotent(n, f)
        for _ in range(6):
            x = Mat.zeros(f, n, n)
            power = e
            for _ in range(n - 1):
                x = x + power.scale(rng.randrange(f.q))
                power = power @ e
            u = trunc_exp(x, p)
            assert mat_det(u) == f.one
            assert mat_is_p_nilpotent(u - Mat.identity(f, n), p)
            assert trunc_exp(-x, p) @ u == Mat.identity(f, n)


def test_eval_one_param_lands_in_sl():
    from satrank.fields import mat_det
    e = regular_nilpotent(4, F5)
    u = OneParamSubgroup(pair=NilPair(e, e + (e @ e)), n=4, p=5)
    for s in F5.elements():
        assert mat_det(eval_one_param(u, s)) == F5.one


def test_trunc_exp_additive_on_commuting_exhaustive():
    """exp(x+y) = exp(x)exp(y) over u_e, exhaustive for n <= 4, p <= 7."""
    for n, p in [(2, 2), (2, 3), (3, 3), (3, 5), (4, 5), (4, 7), (2, 7), (3, 7)]:
        if p < n:
            continue
        f = field_make(p, 1)
        basis = u_e_data(n, f).basis
        d = len(basis)
        pts = []
        for coeffs in itertools.product(range(f.q), repeat=d):
            x = Mat.zeros(f, n, n)
            for c, b in zip(coeffs, basis):
                x = x + b.scale(c)
            pts.append(x)
        exps = [trunc_exp(x, p) for x in pts]
        index = {x: i for i, x in enumerate(pts)}
        for i, x in enumerate(pts):
            for j, y in enumerate(pts):
                assert exps[index[x + y]] == exps[i] @ exps[j]


def test_nilpair_validation():
    e = regular_nilpotent(3, F5)
    NilPair(e, e @ e).validate(5)
    with pytest.raises(PreconditionError):
        NilPair(e, Mat.identity(F5, 3)).validate(5)  # not nilpotent
    f3 = field_make(3, 1)
    a = Mat.from_rows(f3, [[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    b = Mat.from_rows(f3, [[0, 0, 0], [0, 0, 1], [0, 0, 0]])
    with pytest.raises(PreconditionError):
        NilPair(a, b).validate(3)  # do not commute


def test_eval_one_param_degenerate():
    e = regular_nilpotent(3, F5)
    u = OneParamSubgroup(pair=NilPair(e, Mat.zeros(F5, 3, 3)), n=3, p=5)
    assert eval_one_param(u, 0) == Mat.identity(F5, 3)
    for s in F5.elements():
        assert eval_one_param(u, s) == trunc_exp(e.scale(s), 5)


def test_homomorphism_sweep_f25():
    f25 = field_make(5, 2)
    e = regular_nilpotent(4, f25)
    u = OneParamSubgroup(pair=NilPair(e, e @ e), n=4, p=5)
    assert homomorphism_sweep(u) == 625


def test_conjugation_equivariance():
    rng = random.Random(17)
    n, p = 3, 5
    f = field_make(p, 1)
    e = regular_nilpotent(n, f)
    u = OneParamSubgroup(pair=NilPair(e, e + (e @ e)), n=n, p=p)
    for _ in range(5):
        g = Mat.identity(f, n)
        ginv = Mat.identity(f, n)
        for _ in range(4):
            i, j = rng.sample(range(n), 2)
            c = rng.randrange(f.q)
            t = np.eye(n, dtype=np.int64)
            t[i, j] = c
            tinv = np.eye(n, dtype=np.int64)
            tinv[i, j] = f.neg(c)
            g = g @ Mat(f, t)
            ginv = Mat(f, tinv) @ ginv
        assert (g @ ginv) == Mat.identity(f, n)
        gu = OneParamSubgroup(pair=conjugate_pair(u.pair, g, ginv), n=n, p=p)
        for s in f.elements():
            assert eval_one_param(gu, s) == g @ eval_one_param(u, s) @ ginv


def test_u_e_data_examples():
    d3 = u_e_data(3, F5)
    assert len(d3.basis) == 2 and d3.v2_dim == 4
    assert u_e_data(4, F5).v2_dim == 6
    with pytest.raises(PreconditionError):
        u_e_data(4, field_make(3, 1))
    # every pair from u_e x u_e is a valid commuting p-nilpotent pair
    basis = d3.basis
    for a in basis:
        for b in basis:
            NilPair(a, b).validate(5)


def test_srk_sln2_examples():
    assert srk_sln2(3, 5).value == 4
    assert srk_sln2(5, 7).value == 8
    res = srk_sln2(4, 5)
    assert res.value == 6
    res.pair.validate(5)
    assert complexity(res.datum) == 6
    with pytest.raises(PreconditionError):
        srk_sln2(4, 3)
    with pytest.raises(PreconditionError):
        srk_sln2(1, 5)


def test_srk_height_bound():
    assert srk_height_bound(2, 3) == 6
    assert srk_height_bound(1, 7) == 7
    assert srk_height_bound(3, 2) == 6
    with pytest.raises(PreconditionError):
        srk_height_bound(0, 1)


def test_bound_attained_at_height_two():
    from satrank.slnorbits import srk_sln
    for n, p in [(2, 3), (3, 5), (4, 5), (5, 7)]:
        assert srk_sln2(n, p).value == srk_height_bound(2, srk_sln(n, p).value)


def test_complexity_examples():
    assert complexity(ElemAbComplexity((2, 1))) == 4
    assert complexity(ElemAbComplexity((7,))) == 7
    assert complexity(ElemAbComplexity((0, 3), etale_rank=2)) == 8
    with pytest.raises(PreconditionError):
        ElemAbComplexity((-1,))
    # height-1 restriction bounds: sum l_i <= cx <= r * sum l_i
    for mults in [(2, 1), (0, 4), (1, 1, 1)]:
        e = ElemAbComplexity(mults)
        r = len(mults)
        assert sum(mults) <= complexity(e) <= r * sum(mults)


def test_frob2_report():
    rep = frob2_report(3, 5)
    assert rep["srk_sln2"] == 4
    assert rep["bound_attained"] is True
    assert len(rep["witness_pair"]) == 2

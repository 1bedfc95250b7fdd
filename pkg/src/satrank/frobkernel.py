"""Height-2 data for SL_n: truncated exponentials and commuting nilpotent pairs.

An infinitesimal one-parameter subgroup of the second Frobenius kernel is a
commuting pair of p-nilpotent traceless matrices (a0, a1), evaluated at a
field point s as exp(s a0) . exp(s^p a1) with the truncated exponential
exp(x) = sum_{i<p} x^i / i!.  Since (s+t)^p = s^p + t^p and the pair commutes,
these maps are homomorphisms, and the regular nilpotent e together with
e0 = e + e^2 realizes the extreme value srk(SL_n(2)) = 2(n-1) = 2 srk(sl_n):
the pair lives in u_e x u_e for u_e = span{e, ..., e^(n-1)}, an abelian
unipotent of dimension n-1 whose height-2 kernel has complexity 2(n-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

import numpy as np

from .errors import PreconditionError
from .fields import FieldSpec, Mat, field_make, mat_is_p_nilpotent, mat_rank


def trunc_exp(x: Mat, p: int) -> Mat:
    """exp(x) = 1 + x + x^2/2 + ... + x^(p-1)/(p-1)! for p-nilpotent x."""
    if not mat_is_p_nilpotent(x, p):
        raise PreconditionError("truncated exponential needs a p-nilpotent argument")
    f = x.field
    acc = Mat.identity(f, x.rows)
    term = Mat.identity(f, x.rows)
    fact = 1
    for i in range(1, p):
        term = term @ x
        fact = (fact * i) % p
        acc = acc + term.scale(f.from_int(pow(fact, p - 2, p)))
    return acc


@dataclass(frozen=True)
class NilPair:
    """Commuting pair of p-nilpotent traceless matrices."""

    alpha0: Mat
    alpha1: Mat

    def validate(self, p: int):
        for m in (self.alpha0, self.alpha1):
            if m.rows != m.cols:
                raise PreconditionError("pair entries must be square")
            if m.trace() != 0:
                raise PreconditionError("pair entries must be traceless")
            if not mat_is_p_nilpotent(m, p):
                raise PreconditionError("pair entries must be p-nilpotent")
        if not (self.alpha0 @ self.alpha1 - self.alpha1 @ self.alpha0).is_zero():
            raise PreconditionError("pair entries must commute")
        return self


@dataclass(frozen=True)
class OneParamSubgroup:
    pair: NilPair
    n: int
    p: int

    def __post_init__(self):
        self.pair.validate(self.p)


def eval_one_param(u: OneParamSubgroup, s: int) -> Mat:
    """exp(s a0) . exp(s^p a1) at the field code s."""
    f = u.pair.alpha0.field
    sp = f.pow(s, u.p)
    return trunc_exp(u.pair.alpha0.scale(s), u.p) @ trunc_exp(u.pair.alpha1.scale(sp), u.p)


@dataclass(frozen=True)
class ElemAbComplexity:
    """Multiplicities of height-i infinitesimal factors, plus an etale rank."""

    multiplicities: tuple
    etale_rank: int = 0

    def __post_init__(self):
        if any(m < 0 for m in self.multiplicities) or self.etale_rank < 0:
            raise PreconditionError("multiplicities must be nonnegative")


def complexity(e: ElemAbComplexity) -> int:
    """sum_i l_i * i over the factor multiplicities, plus the etale rank."""
    return sum(l * (i + 1) for i, l in enumerate(e.multiplicities)) + e.etale_rank


def srk_height_bound(r: int, srk1: int) -> int:
    """Upper bound r * srk at height r from the height-1 saturation rank."""
    if r < 1 or srk1 < 0:
        raise PreconditionError("need r >= 1 and srk1 >= 0")
    return r * srk1


def regular_nilpotent(n: int, field: FieldSpec) -> Mat:
    a = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        a[i, i + 1] = field.one
    return Mat(field, a)


class UEData(NamedTuple):
    basis: tuple   # e, e^2, ..., e^(n-1)
    v2_dim: int    # 2 dim u_e = 2(n-1)


def u_e_data(n: int, field: FieldSpec) -> UEData:
    """The abelian unipotent u_e = span{e, ..., e^(n-1)}; needs p >= n."""
    if field.p < n:
        raise PreconditionError("u_e needs p >= n so that powers of e are p-nilpotent")
    e = regular_nilpotent(n, field)
    basis = []
    cur = e
    for _ in range(n - 1):
        basis.append(cur)
        cur = cur @ e
    return UEData(basis=tuple(basis), v2_dim=2 * (n - 1))


class Sln2Result(NamedTuple):
    value: int
    pair: NilPair
    datum: ElemAbComplexity


def srk_sln2(n: int, p: int, field: FieldSpec = None) -> Sln2Result:
    """srk of the second Frobenius kernel of SL_n: 2(n-1) for p >= n.

    The witness pair is (e, e + e^2) with e regular nilpotent; e + e^2 is
    again regular (same rank sequence, checked), and the elementary abelian
    subgroup carrying the value is the height-2 kernel of u_e, i.e. n-1
    height-2 factors of complexity 2(n-1).
    """
    if n < 2:
        raise PreconditionError("n must be >= 2")
    if p < n:
        raise PreconditionError("srk(SL_n(2)) = 2(n-1) needs p >= n")
    if field is None:
        field = field_make(p, 1)
    if field.p != p:
        raise PreconditionError("field characteristic must match p")
    e = regular_nilpotent(n, field)
    e0 = e + (e @ e)
    pair = NilPair(alpha0=e, alpha1=e0).validate(p)
    # e0 is regular: its rank powers match those of e
    a, b = e, e0
    for _ in range(n):
        if mat_rank(a) != mat_rank(b):
            raise PreconditionError("witness e + e^2 is not regular")
        a, b = a @ e, b @ e0
    datum = ElemAbComplexity(multiplicities=(0, n - 1))
    assert complexity(datum) == 2 * (n - 1)
    return Sln2Result(value=2 * (n - 1), pair=pair, datum=datum)


def conjugate_pair(pair: NilPair, g: Mat, ginv: Mat) -> NilPair:
    return NilPair(alpha0=g @ pair.alpha0 @ ginv, alpha1=g @ pair.alpha1 @ ginv)


def homomorphism_sweep(u: OneParamSubgroup) -> int:
    """Exhaustively confirm eval(s+t) = eval(s) eval(t); returns pair count."""
    f = u.pair.alpha0.field
    table = [eval_one_param(u, s) for s in f.elements()]
    checked = 0
    for s in f.elements():
        for t in f.elements():
            if table[f.add(s, t)] != table[s] @ table[t]:
                raise AssertionError(f"homomorphism fails at ({s}, {t})")
            checked += 1
    return checked


def frob2_report(n: int, p: int, field: FieldSpec = None) -> dict:
    res = srk_sln2(n, p, field=field)
    return {
        "n": n,
        "p": p,
        "srk_sln2": res.value,
        "witness_pair": [res.pair.alpha0.tolist(), res.pair.alpha1.tolist()],
        "bound_attained": res.value == srk_height_bound(2, n - 1),
    }

"""Trig-polynomial layer: evaluation, convolution, conjugation, norms, products."""

import random
from fractions import Fraction

import mpmath as mpm
import pytest
from mpmath import mpc, mpf

from akcocycle.errors import ConditioningError
from akcocycle.frequency import Frequency, fibonacci, torus_frac
from akcocycle.hyperbolic import SU11Algebra, exp_su11
from akcocycle.mat2 import Mat2, dist
from akcocycle.precision import tol_identity
from akcocycle.trigpoly import (
    TrigPoly,
    cocycle_product,
    conjugate_shift,
)

from oracles import rand_mpf

GOLDEN = Frequency.golden()
SEED = 31415


def herm(mat: Mat2) -> Mat2:
    return mat.conj_t()


def rand_su11_group_poly(rng, modes=(0, 1, -2)) -> TrigPoly:
    """A poly with the [[a,b],[conj b, conj a]] coefficient symmetry."""
    out = TrigPoly.zero()
    for k in modes:
        a = mpc(rand_mpf(rng, -1, 1), rand_mpf(rng, -1, 1))
        b = mpc(rand_mpf(rng, -1, 1), rand_mpf(rng, -1, 1))
        up = TrigPoly.mode(k, Mat2(a, b, 0, 0))
        lo = TrigPoly.mode(-k, Mat2(0, 0, mpm.conj(b), mpm.conj(a)))
        out = out + up + lo
    return out


def test_eval_constant_and_resonant_at_zero():
    h = TrigPoly.resonant_diagonal(fibonacci(100))
    assert dist(h.eval_fraction(Fraction(0, 1)), Mat2.identity()) == 0


def test_eval_single_mode_quarter():
    p = TrigPoly.mode(3, Mat2.identity())
    got = p.eval_fraction(Fraction(1, 4))
    expected = Mat2.identity().scale(mpm.expjpi(mpf(3) / 2))
    assert dist(got, expected) < tol_identity()


def test_eval_huge_mode_exact_reduction():
    # modes {-2k1, 0, 2k1} with k1 = Fib(100); phase reduced mod 7 exactly
    k1 = fibonacci(100)
    p = (TrigPoly.mode(2 * k1, Mat2.identity())
         + TrigPoly.constant(Mat2.identity())
         + TrigPoly.mode(-2 * k1, Mat2.identity()))
    got = p.eval_fraction(Fraction(1, 7))
    r = (2 * k1) % 7
    w = mpm.expjpi(mpf(2 * r) / 7)
    expected = Mat2.identity().scale(1 + w + mpm.conj(w))
    assert dist(got, expected) < tol_identity()
    # and the high-precision multiply path agrees when theta carries the
    # extra digits the huge index consumes
    with mpm.extraprec((2 * k1).bit_length() + 32):
        th = mpf(1) / 7
        got2 = p.eval_mpf(th)
    assert dist(got, got2) < mpf(2) ** (-(mpm.mp.prec - 20)) * 3


def test_shift_matches_pointwise():
    rng = random.Random(SEED)
    p = rand_su11_group_poly(rng)
    ps = p.shift(GOLDEN)
    a = GOLDEN.value()
    for j in (0, 1, 5):
        th = mpf(j) / 11
        lhs = ps.eval_mpf(th)
        rhs = p.eval_mpf(th + a - mpm.floor(th + a))
        assert dist(lhs, rhs) < tol_identity() * max(mpf(1), p.coeff_abs_sum())


def test_product_is_pointwise_product():
    rng = random.Random(SEED + 1)
    p = rand_su11_group_poly(rng, modes=(0, 2))
    q = rand_su11_group_poly(rng, modes=(1, -3))
    pq = p * q
    for j in range(7):
        th = Fraction(j, 7)
        assert dist(pq.eval_fraction(th), p.eval_fraction(th) * q.eval_fraction(th)) \
            < tol_identity() * max(mpf(1), p.coeff_abs_sum() * q.coeff_abs_sum())


def test_conjugate_shift_identity_conjugation():
    rng = random.Random(SEED + 2)
    a = rand_su11_group_poly(rng, modes=(0, 1))
    res = conjugate_shift(TrigPoly.identity(), GOLDEN, a)
    assert res.discarded_mass == 0
    assert res.poly.support() == a.support()
    for k in a.support():
        assert dist(res.poly.coeff(k[0]), a.coeff(k[0])) < tol_identity()


def test_conjugate_shift_pointwise_identity():
    # eval(conjugate_shift) == B(theta+alpha)^-1 A(theta) B(theta) at 128 points
    k1 = 2
    d0 = exp_su11(SU11Algebra(mpf("0.15"), mpc(0, "0.08")))
    b = TrigPoly.resonant_diagonal(k1) * TrigPoly.constant(d0.matrix())
    rng = random.Random(SEED + 3)
    a = rand_su11_group_poly(rng, modes=(0, 2 * k1, -2 * k1))
    res = conjugate_shift(b, GOLDEN, a, floor=mpf(0))
    alpha_val = GOLDEN.value()
    scale = max(mpf(1), a.coeff_abs_sum() * b.coeff_abs_sum() ** 2)
    for j in range(128):
        th = mpf(j) / 128
        lhs = res.poly.eval_mpf(th)
        tha = th + alpha_val
        tha -= mpm.floor(tha)
        rhs = b.eval_mpf(tha).inv() * a.eval_mpf(th) * b.eval_mpf(th)
        assert dist(lhs, rhs) < mpf(2) ** (-(mpm.mp.prec - 30)) * scale


def test_pointwise_inverse_requires_unimodular():
    p = TrigPoly.constant(Mat2.diag(2, 1))  # det 2
    with pytest.raises(ConditioningError):
        p.pointwise_inverse()
    q = TrigPoly.resonant_diagonal(5)
    inv = q.pointwise_inverse()
    prod = inv * q
    assert dist(prod.eval_fraction(Fraction(3, 8)), Mat2.identity()) < tol_identity()


def test_strip_norm_majorant_and_monotonicity():
    rng = random.Random(SEED + 4)
    p = rand_su11_group_poly(rng, modes=(0, 1, 4))
    for h in (mpf("0.01"), mpf("0.1")):
        maj = p.strip_norm_upper(h)
        samp = p.sup_on_strip_boundary(h, samples=64)
        assert samp <= maj * (1 + tol_identity())
    assert p.strip_norm_upper(mpf("0.01")) <= p.strip_norm_upper(mpf("0.1"))
    # log variant is an upper bound within the 2x2 entry-sum factor of 2
    lg = p.log_strip_norm(mpf("0.1")).to_mpf()
    up = p.strip_norm_upper(mpf("0.1"))
    assert up <= lg * (1 + tol_identity()) <= 2 * up * (1 + tol_identity())


def test_strip_norm_constant_and_zero():
    c = TrigPoly.constant(Mat2.diag(3, mpf(1) / 3))
    assert c.strip_norm_upper(mpf("0.3")) == 3
    assert TrigPoly.zero().strip_norm_upper(mpf("0.5")) == 0


def test_strip_norm_perturbation_bound():
    # 3-mode perturbation with t=0.01, lam=0.005, k=2: majorant <= 2 pi t e^{4 pi k h}
    t, lam, k, h = mpf("0.01"), mpf("0.005"), 2, mpf("0.1")
    f = (TrigPoly.constant(Mat2(mpc(0, 2 * mpm.pi * t), 0, 0, mpc(0, -2 * mpm.pi * t)))
         + TrigPoly.mode(2 * k, Mat2(0, mpc(0, 2 * mpm.pi * lam), 0, 0))
         + TrigPoly.mode(-2 * k, Mat2(0, 0, mpc(0, -2 * mpm.pi * lam), 0)))
    bound = 2 * mpm.pi * t * mpm.exp(4 * mpm.pi * k * h)
    assert f.strip_norm_upper(h) <= bound
    assert mpm.almosteq(bound, mpf("0.77567706659662201828"), rel_eps=mpf("1e-18"))


def test_cs_norm():
    assert TrigPoly.constant(Mat2.diag(2, 2)).cs_norm(5) == 2
    p = TrigPoly.mode(10, Mat2.identity())
    assert p.cs_norm(2) == 121
    q = p + TrigPoly.constant(Mat2.identity())
    assert q.cs_norm(0) < q.cs_norm(1) < q.cs_norm(2)


def test_cocycle_product_basics():
    assert dist(cocycle_product(TrigPoly.identity(), GOLDEN, Fraction(1, 3), 0),
                Mat2.identity()) == 0
    # constant rotation composes: 5 steps of angle 2 pi xi
    xi = mpf("0.07")
    rot = TrigPoly.constant(Mat2.diag(mpm.expjpi(2 * xi), mpm.expjpi(-2 * xi)))
    p5 = cocycle_product(rot, GOLDEN, Fraction(0, 1), 5)
    expected = Mat2.diag(mpm.expjpi(10 * xi), mpm.expjpi(-10 * xi))
    assert dist(p5, expected) < tol_identity()


def test_cocycle_inverse_convention():
    rng = random.Random(SEED + 5)
    base = rand_su11_group_poly(rng, modes=(0, 1))
    # force unimodularity by projecting onto a conjugated resonant map
    d0 = exp_su11(SU11Algebra(mpf("0.2"), mpc("0.05", "0.02")))
    a = TrigPoly.resonant_diagonal(1) * TrigPoly.constant(d0.matrix())
    for n in (1, 3, 10):
        th = mpf("0.3")
        fwd = cocycle_product(a, GOLDEN, th, n)
        bwd = cocycle_product(a, GOLDEN, th, -n)
        alpha_val = GOLDEN.value()
        shifted = th - n * alpha_val
        shifted -= mpm.floor(shifted)
        direct = cocycle_product(a, GOLDEN, shifted, n).inv()
        assert dist(bwd, direct) < tol_identity() * max(mpf(1), fwd.op_norm() ** 2)


def test_cocycle_chain_rule():
    rng = random.Random(SEED + 6)
    d0 = exp_su11(SU11Algebra(mpf("0.11"), mpc("0.03", "-0.04")))
    a = TrigPoly.resonant_diagonal(2) * TrigPoly.constant(d0.matrix())
    alpha_val = GOLDEN.value()
    for _ in range(6):
        m, n = rng.randint(0, 50), rng.randint(0, 50)
        th = rand_mpf(rng, 0, 1)
        lhs = cocycle_product(a, GOLDEN, th, m + n)
        mid = th + n * alpha_val
        mid -= mpm.floor(mid)
        rhs = cocycle_product(a, GOLDEN, mid, m) * cocycle_product(a, GOLDEN, th, n)
        assert dist(lhs, rhs) < mpf(2) ** (-(mpm.mp.prec - 40)) * max(
            mpf(1), lhs.op_norm())


def test_su11_shape_predicates():
    rng = random.Random(SEED + 7)
    g = rand_su11_group_poly(rng)
    assert g.is_su11_group_like()
    t, lam, k = mpf("0.3"), mpf("0.1"), 3
    f = (TrigPoly.constant(Mat2(mpc(0, t), 0, 0, mpc(0, -t)))
         + TrigPoly.mode(2 * k, Mat2(0, mpc(0, lam), 0, 0))
         + TrigPoly.mode(-2 * k, Mat2(0, 0, mpc(0, -lam), 0)))
    assert f.is_su11_algebra_like()
    assert not TrigPoly.mode(1, Mat2.identity()).is_su11_group_like()


def test_json_round_trip():
    rng = random.Random(SEED + 8)
    p = rand_su11_group_poly(rng, modes=(0, 1, fibonacci(90)))
    p2 = TrigPoly.from_json(p.to_json())
    assert p2.support() == p.support()
    for k in p.support():
        assert p2.coeffs[k].entries() == p.coeffs[k].entries()


def test_truncate_reports_mass():
    p = TrigPoly.mode(0, Mat2.identity()) + TrigPoly.mode(7, Mat2.identity().scale(mpf("1e-70")))
    q, dropped = p.truncate(mpf("1e-60"))
    assert (7,) not in q.coeffs
    assert mpm.almosteq(dropped, mpf("1e-70"), rel_eps=mpf("1e-10"))

"""Independent oracles used to freeze expected values.

These deliberately avoid the closed forms under test: the exponential oracle
is plain scaling-and-squaring on the series, the eigen oracle solves the
characteristic polynomial and linear systems directly, and the torus-norm
oracle multiplies out big integers at inflated precision.
"""

from __future__ import annotations

import random
from fractions import Fraction

import mpmath as mpm
from mpmath import mpc, mpf

from akcocycle.mat2 import Mat2


def series_exp(m: Mat2, terms: int = 64, squarings: int = 16) -> Mat2:
    """exp(m) by scaling and squaring of the truncated series."""
    s = m.scale(mpf(1) / (1 << squarings))
    acc = Mat2.identity()
    term = Mat2.identity()
    for j in range(1, terms + 1):
        term = (term * s).scale(mpf(1) / j)
        acc = acc + term
    for _ in range(squarings):
        acc = acc * acc
    return acc


def eig2(m: Mat2) -> list[tuple[mpc, tuple[mpc, mpc]]]:
    """Eigenpairs of a 2x2 matrix via the characteristic polynomial."""
    tr, det = m.trace(), m.det()
    disc = mpm.sqrt(tr * tr - 4 * det)
    out = []
    for lam in ((tr + disc) / 2, (tr - disc) / 2):
        # (m - lam) v = 0: use the numerically larger row
        r1 = (m.a11 - lam, m.a12)
        r2 = (m.a21, m.a22 - lam)
        row = r1 if abs(r1[0]) + abs(r1[1]) >= abs(r2[0]) + abs(r2[1]) else r2
        if abs(row[0]) >= abs(row[1]):
            v = (-row[1] / row[0], mpc(1)) if row[0] != 0 else (mpc(1), mpc(0))
        else:
            v = (mpc(1), -row[0] / row[1])
        n = mpm.sqrt(abs(v[0]) ** 2 + abs(v[1]) ** 2)
        out.append((lam, (v[0] / n, v[1] / n)))
    return out


def torus_norm_bigmul(k: int, alpha_digits_fn, guard: int = 60) -> mpf:
    """||k * alpha|| by direct multiplication at inflated precision.

    alpha_digits_fn(bits) must return alpha as an mpf computed at `bits`.
    """
    need = abs(k).bit_length() + mpm.mp.prec + guard
    with mpm.workprec(need):
        x = alpha_digits_fn(need) * k
        fr = x - mpm.floor(x)
        val = min(fr, 1 - fr)
    return +val


def golden_alpha(bits: int) -> mpf:
    with mpm.workprec(bits):
        return (mpm.sqrt(5) - 1) / 2


def fib(n: int) -> int:
    """Fibonacci with F(1) = F(2) = 1, fast doubling."""

    def _fd(m: int) -> tuple[int, int]:
        if m == 0:
            return 0, 1
        a, b = _fd(m >> 1)
        c = a * ((b << 1) - a)
        d = a * a + b * b
        if m & 1:
            return d, c + d
        return c, d

    return _fd(n)[0]


def rand_mpf(rng: random.Random, lo: float, hi: float) -> mpf:
    # 60 random bits mapped affinely into [lo, hi]
    u = mpf(rng.getrandbits(60)) / mpf(1 << 60)
    return mpf(lo) + (mpf(hi) - mpf(lo)) * u


def rand_sl2(rng: random.Random, spread: float = 2.0) -> Mat2:
    """Random SL(2,R) via Iwasawa-style factors (det exactly 1 up to roundoff)."""
    theta = rand_mpf(rng, 0, 6.283185307179586)
    lam = mpm.exp(rand_mpf(rng, -spread, spread))
    s = rand_mpf(rng, -spread, spread)
    rot = Mat2(mpm.cos(theta), -mpm.sin(theta), mpm.sin(theta), mpm.cos(theta))
    diag = Mat2.diag(lam, 1 / lam)
    shear = Mat2(1, s, 0, 1)
    return rot * diag * shear


def rand_elliptic_algebra(rng: random.Random, tmax: float = 10.0, zfrac: float = 0.99):
    """(t, z) with 0 < t < tmax and |z| < zfrac * t."""
    t = rand_mpf(rng, 1e-3, tmax)
    r = rand_mpf(rng, 0, zfrac) * t
    phase = rand_mpf(rng, 0, 6.283185307179586)
    return t, r * mpm.expj(phase)


def theta_grid_fractions(q: int) -> list[Fraction]:
    return [Fraction(j, q) for j in range(q)]

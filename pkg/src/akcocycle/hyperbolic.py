"""Exact-formula linear algebra on SL(2,R), SU(1,1) and su(1,1).

The fixed unitary M = (1/(1+i)) [[1, -i], [1, i]] intertwines SL(2,R) with
SU(1,1). Elements of su(1,1) are written [[i t, z], [conj(z), -i t]] with
t real, z complex; the sign of det = t^2 - |z|^2 splits the algebra into
elliptic (> 0), parabolic (= 0) and hyperbolic (< 0) regimes.

`exp_su11` applies the group exponential to 2*pi times the stored algebra
element, so SU11Algebra(t, z) exponentiates to a matrix with eigenvalues
exp(+-2*pi*i*rho), rho = sqrt(t^2 - |z|^2), in the elliptic regime.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import mpmath as mpm
from mpmath import mpc, mpf

from .errors import DomainError, InvariantViolation, RegimeError
from .mat2 import Mat2
from .precision import (
    mpc_to_str,
    mpf_to_str,
    str_to_mpc,
    str_to_mpf,
    tol_det,
    tol_identity,
    working_bits,
)


class RegimeTag(enum.Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


def m_matrix() -> Mat2:
    """The fixed SL(2,R) <-> SU(1,1) intertwiner (unitary, det 1)."""
    c = 1 / mpc(1, 1)
    return Mat2(c, -c * mpc(0, 1), c, c * mpc(0, 1))


def m_inverse() -> Mat2:
    return m_matrix().conj_t()


@dataclass(frozen=True)
class SL2Matrix:
    a11: mpf
    a12: mpf
    a21: mpf
    a22: mpf

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22"):
            object.__setattr__(self, name, mpf(getattr(self, name)))
        det = self.a11 * self.a22 - self.a12 * self.a21
        scale = max(mpf(1), self.matrix().fro_norm() ** 2)
        if abs(det - 1) > tol_det() * scale:
            raise InvariantViolation(f"SL(2,R) determinant off by {det - 1}")

    def matrix(self) -> Mat2:
        return Mat2(self.a11, self.a12, self.a21, self.a22)

    @staticmethod
    def from_mat(m: Mat2, tol=None) -> "SL2Matrix":
        tol = tol if tol is not None else tol_identity() * max(mpf(1), m.fro_norm())
        for e in m.entries():
            if abs(mpm.im(e)) > tol:
                raise InvariantViolation("matrix has non-real entries beyond tolerance")
        return SL2Matrix(mpm.re(m.a11), mpm.re(m.a12), mpm.re(m.a21), mpm.re(m.a22))

    @staticmethod
    def rotation(angle) -> "SL2Matrix":
        c, s = mpm.cos(angle), mpm.sin(angle)
        return SL2Matrix(c, -s, s, c)

    def to_json(self) -> dict:
        return {
            "type": "sl2",
            "precision_bits": working_bits(),
            "entries": [mpf_to_str(x) for x in (self.a11, self.a12, self.a21, self.a22)],
        }

    @staticmethod
    def from_json(d: dict) -> "SL2Matrix":
        return SL2Matrix(*(str_to_mpf(s) for s in d["entries"]))


@dataclass(frozen=True)
class SU11Matrix:
    a: mpc
    b: mpc

    def __post_init__(self):
        object.__setattr__(self, "a", mpc(self.a))
        object.__setattr__(self, "b", mpc(self.b))
        r = abs(self.a) ** 2 - abs(self.b) ** 2
        scale = max(mpf(1), abs(self.a) ** 2 + abs(self.b) ** 2)
        if abs(r - 1) > tol_det() * scale:
            raise InvariantViolation(f"SU(1,1) normalization off by {r - 1}")

    def matrix(self) -> Mat2:
        return Mat2(self.a, self.b, mpm.conj(self.b), mpm.conj(self.a))

    @staticmethod
    def from_mat(m: Mat2, tol=None) -> "SU11Matrix":
        tol = tol if tol is not None else tol_identity() * max(mpf(1), m.fro_norm())
        if abs(m.a21 - mpm.conj(m.a12)) > tol or abs(m.a22 - mpm.conj(m.a11)) > tol:
            raise InvariantViolation("matrix is not of SU(1,1) shape beyond tolerance")
        return SU11Matrix(m.a11, m.a12)

    @staticmethod
    def identity() -> "SU11Matrix":
        return SU11Matrix(1, 0)

    @staticmethod
    def diagonal_phase(xi) -> "SU11Matrix":
        """diag(e^{2 pi i xi}, e^{-2 pi i xi})."""
        return SU11Matrix(mpm.expjpi(2 * mpf(xi)), 0)

    def inv(self) -> "SU11Matrix":
        return SU11Matrix(mpm.conj(self.a), -self.b)

    def __mul__(self, other: "SU11Matrix") -> "SU11Matrix":
        return SU11Matrix(
            self.a * other.a + self.b * mpm.conj(other.b),
            self.a * other.b + self.b * mpm.conj(other.a),
        )

    def op_norm(self) -> mpf:
        # singular values of [[a,b],[conj b, conj a]] are |a|+|b|, |a|-|b|
        return abs(self.a) + abs(self.b)

    def to_json(self) -> dict:
        return {
            "type": "su11",
            "precision_bits": working_bits(),
            "a": mpc_to_str(self.a),
            "b": mpc_to_str(self.b),
        }

    @staticmethod
    def from_json(d: dict) -> "SU11Matrix":
        return SU11Matrix(str_to_mpc(d["a"]), str_to_mpc(d["b"]))


@dataclass(frozen=True)
class SU11Algebra:
    t: mpf
    z: mpc

    def __post_init__(self):
        object.__setattr__(self, "t", mpf(self.t))
        object.__setattr__(self, "z", mpc(self.z))

    def matrix(self) -> Mat2:
        return Mat2(mpc(0, self.t), self.z, mpm.conj(self.z), mpc(0, -self.t))

    def det(self) -> mpf:
        return self.t ** 2 - abs(self.z) ** 2

    def regime(self, tol=None) -> RegimeTag:
        tol = tol if tol is not None else tol_det() * max(mpf(1), self.t ** 2 + abs(self.z) ** 2)
        d = self.det()
        if abs(d) <= tol:
            return RegimeTag.PARABOLIC
        return RegimeTag.ELLIPTIC if d > 0 else RegimeTag.HYPERBOLIC

    def to_json(self) -> dict:
        return {
            "type": "su11_algebra",
            "precision_bits": working_bits(),
            "t": mpf_to_str(self.t),
            "z": mpc_to_str(self.z),
        }

    @staticmethod
    def from_json(d: dict) -> "SU11Algebra":
        return SU11Algebra(str_to_mpf(d["t"]), str_to_mpc(d["z"]))


def to_su11(a: SL2Matrix) -> SU11Matrix:
    """Conjugate an SL(2,R) element into SU(1,1) by the fixed intertwiner."""
    m = m_matrix()
    res = m * a.matrix() * m.conj_t()
    return SU11Matrix.from_mat(res)


def to_sl2(b: SU11Matrix) -> SL2Matrix:
    m = m_matrix()
    res = m.conj_t() * b.matrix() * m
    return SL2Matrix.from_mat(res)


def exp_su11(x: SU11Algebra) -> SU11Matrix:
    """Group exponential of 2*pi*x, in closed form per regime.

    Elliptic:  cos(2 pi rho) Id + sin(2 pi rho)/rho * x,  rho = sqrt(det x) > 0
    Parabolic: Id + 2 pi x
    Hyperbolic: cosh(2 pi mu) Id + sinh(2 pi mu)/mu * x,  mu = sqrt(-det x)
    """
    d = x.det()
    two_pi = 2 * mpm.pi
    tol = tol_det() * max(mpf(1), x.t ** 2 + abs(x.z) ** 2)
    if abs(d) <= tol:
        coef = two_pi
        a = 1 + coef * mpc(0, x.t)
        b = coef * x.z
    elif d > 0:
        rho = mpm.sqrt(d)
        coef = mpm.sinpi(2 * rho) / rho
        a = mpm.cospi(2 * rho) + coef * mpc(0, x.t)
        b = coef * x.z
    else:
        mu = mpm.sqrt(-d)
        coef = mpm.sinh(two_pi * mu) / mu
        a = mpm.cosh(two_pi * mu) + coef * mpc(0, x.t)
        b = coef * x.z
    return SU11Matrix(a, b)


def diagonalize_elliptic(x: SU11Algebra) -> tuple[SU11Matrix, mpf]:
    """Minimal-norm SU(1,1) conjugation D with D^-1 x D = diag(i rho, -i rho).

    D = (cos 2 theta)^(-1/2) [[cos theta, e^{2 i phi} sin theta],
                              [e^{-2 i phi} sin theta, cos theta]]
    with 2 phi = arg z - pi/2 and 2 theta = -arctan(|z| / sqrt(t^2 - |z|^2)).
    The squared operator norm of D is (|t| + |z|) / rho.

    Requires the strictly elliptic regime with t > 0 (the positive component
    of the elliptic cone; SU(1,1) conjugation cannot flip the sign of t).
    """
    d = x.det()
    tol = tol_det() * max(mpf(1), x.t ** 2 + abs(x.z) ** 2)
    if abs(d) <= tol or d < 0:
        raise RegimeError("diagonalization requires a strictly elliptic element",
                          regime=x.regime())
    if x.t <= 0:
        raise DomainError("t must be positive; diag(i rho, -i rho) with rho > 0 "
                          "is reachable only on the t > 0 component")
    rho = mpm.sqrt(d)
    az = abs(x.z)
    if az == 0:
        return SU11Matrix.identity(), rho
    two_theta = -mpm.atan(az / rho)
    theta = two_theta / 2
    two_phi = mpm.arg(x.z) - mpm.pi / 2
    pref = 1 / mpm.sqrt(mpm.cos(two_theta))
    a = pref * mpm.cos(theta)
    b = pref * mpm.sin(theta) * mpm.expj(two_phi)
    return SU11Matrix(a, b), rho


def corollary_bounds(t, lam) -> tuple[mpf, mpf, mpf]:
    """Closed-form enclosures for the entries of the diagonalizing D.

    For the elliptic element i*[[t, lam], [-lam, -t]] with t > lam >= 0 and
    x = lam/t:
      |diagonal entry - 1|  <  x^2 / sqrt(1 - x^2)
      |off-diagonal entry| in [ x / (2 (1-x^2)^(1/4)), x / (1-x^2)^(1/4) ]
    """
    t, lam = mpf(t), mpf(lam)
    if not (t > lam >= 0):
        raise DomainError("requires t > lambda >= 0")
    x = lam / t
    root = mpm.sqrt(1 - x ** 2)
    c1 = x ** 2 / root
    quarter = root ** mpf("0.5")
    return c1, x / (2 * quarter), x / quarter


def operator_norm(m) -> mpf:
    if isinstance(m, (SL2Matrix, SU11Matrix)):
        m = m.matrix()
    return m.op_norm()


def rotation_angle_fraction(b: SU11Matrix | Mat2, tol=None) -> mpf:
    """xi in [0, 1/2] with spectrum {e^{2 pi i xi}, e^{-2 pi i xi}}.

    Raises RegimeError when the spectrum is off the unit circle beyond tol.
    """
    m = b.matrix() if isinstance(b, SU11Matrix) else b
    tr = m.trace()
    tol = tol if tol is not None else tol_identity() * max(mpf(1), m.fro_norm())
    if abs(mpm.im(tr)) > 4 * tol:
        raise RegimeError("trace is not real; matrix not conjugate to a rotation")
    half = mpm.re(tr) / 2
    if abs(half) > 1:
        if abs(half) - 1 > tol:
            raise RegimeError("|trace| > 2: hyperbolic spectrum", regime=RegimeTag.HYPERBOLIC)
        half = mpf(1) if half > 0 else mpf(-1)
    return mpm.acos(half) / (2 * mpm.pi)


def schur_unitary(b: SU11Matrix | Mat2) -> tuple[Mat2, mpc]:
    """Unitary U with U^H B U = [[e^{2 pi i xi}, c], [0, e^{-2 pi i xi}]].

    The input must have unit-modulus spectrum (elliptic conjugate); xi is
    taken in [0, 1/2] so the eigenvalue with nonnegative imaginary part sits
    in the upper-left corner.
    """
    m = b.matrix() if isinstance(b, SU11Matrix) else b
    xi = rotation_angle_fraction(m)
    lam = mpm.expjpi(2 * xi)
    # eigenvector for lam: rows of (m - lam I) are proportional; pick the
    # larger row for stability, v orthogonal to it.
    r1 = (m.a11 - lam, m.a12)
    r2 = (m.a21, m.a22 - lam)
    row = r1 if (abs(r1[0]) ** 2 + abs(r1[1]) ** 2) >= (abs(r2[0]) ** 2 + abs(r2[1]) ** 2) else r2
    nr = mpm.sqrt(abs(row[0]) ** 2 + abs(row[1]) ** 2)
    if nr == 0:
        return Mat2.identity(), mpc(0)  # scalar matrix, already diagonal
    v = (-mpm.conj(row[1]) / nr, mpm.conj(row[0]) / nr)
    # deterministic phase: make the largest component real positive
    piv = v[0] if abs(v[0]) >= abs(v[1]) else v[1]
    ph = mpm.conj(piv) / abs(piv)
    v = (v[0] * ph, v[1] * ph)
    w = (-mpm.conj(v[1]), mpm.conj(v[0]))
    u = Mat2(v[0], w[0], v[1], w[1])
    t = u.conj_t() * m * u
    return u, t.a12


def regime_of_sl2(a: SL2Matrix, tol=None) -> RegimeTag:
    tr = abs(a.a11 + a.a22)
    tol = tol if tol is not None else tol_det() * max(mpf(1), a.matrix().fro_norm())
    if abs(tr - 2) <= tol:
        return RegimeTag.PARABOLIC
    return RegimeTag.ELLIPTIC if tr < 2 else RegimeTag.HYPERBOLIC

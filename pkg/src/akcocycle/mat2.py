"""Immutable 2x2 complex matrices over mpmath with closed-form spectral helpers.

Everything in this package is 2x2; a dedicated value type is faster and far
less error prone than a generic matrix library at 256-bit precision.
"""

from __future__ import annotations

import mpmath as mpm
from mpmath import mpc, mpf, sqrt


class Mat2:
    __slots__ = ("a11", "a12", "a21", "a22")

    def __init__(self, a11, a12, a21, a22):
        object.__setattr__(self, "a11", mpc(a11))
        object.__setattr__(self, "a12", mpc(a12))
        object.__setattr__(self, "a21", mpc(a21))
        object.__setattr__(self, "a22", mpc(a22))

    def __setattr__(self, *_):
        raise AttributeError("Mat2 is immutable")

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(1, 0, 0, 1)

    @staticmethod
    def zero() -> "Mat2":
        return Mat2(0, 0, 0, 0)

    @staticmethod
    def diag(x, y) -> "Mat2":
        return Mat2(x, 0, 0, y)

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a11 + other.a11, self.a12 + other.a12,
                    self.a21 + other.a21, self.a22 + other.a22)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a11 - other.a11, self.a12 - other.a12,
                    self.a21 - other.a21, self.a22 - other.a22)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a11, -self.a12, -self.a21, -self.a22)

    def scale(self, c) -> "Mat2":
        c = mpc(c)
        return Mat2(c * self.a11, c * self.a12, c * self.a21, c * self.a22)

    def det(self) -> mpc:
        return self.a11 * self.a22 - self.a12 * self.a21

    def trace(self) -> mpc:
        return self.a11 + self.a22

    def conj_t(self) -> "Mat2":
        return Mat2(mpm.conj(self.a11), mpm.conj(self.a21),
                    mpm.conj(self.a12), mpm.conj(self.a22))

    def adjugate(self) -> "Mat2":
        return Mat2(self.a22, -self.a12, -self.a21, self.a11)

    def inv(self) -> "Mat2":
        d = self.det()
        if d == 0:
            raise ZeroDivisionError("singular 2x2 matrix")
        return self.adjugate().scale(1 / d)

    def fro_norm(self) -> mpf:
        s = (abs(self.a11) ** 2 + abs(self.a12) ** 2
             + abs(self.a21) ** 2 + abs(self.a22) ** 2)
        return sqrt(s)

    def op_norm(self) -> mpf:
        # largest singular value: s^2 = (T + sqrt(T^2 - 4|det|^2)) / 2
        t = (abs(self.a11) ** 2 + abs(self.a12) ** 2
             + abs(self.a21) ** 2 + abs(self.a22) ** 2)
        d = abs(self.det()) ** 2
        disc = t * t - 4 * d
        if disc < 0:
            disc = mpf(0)  # roundoff on normal matrices
        return sqrt((t + sqrt(disc)) / 2)

    def max_abs(self) -> mpf:
        return max(abs(self.a11), abs(self.a12), abs(self.a21), abs(self.a22))

    def eigenvalues(self) -> tuple[mpc, mpc]:
        """Roots of the characteristic polynomial, closed form."""
        t, d = self.trace(), self.det()
        disc = mpm.sqrt(t * t - 4 * d)
        return (t + disc) / 2, (t - disc) / 2

    def spectral_radius(self) -> mpf:
        l1, l2 = self.eigenvalues()
        return max(abs(l1), abs(l2))

    def entries(self) -> tuple[mpc, mpc, mpc, mpc]:
        return (self.a11, self.a12, self.a21, self.a22)

    def __repr__(self) -> str:
        return f"Mat2([[{self.a11}, {self.a12}], [{self.a21}, {self.a22}]])"

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat2) and self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())


def dist(a: Mat2, b: Mat2) -> mpf:
    return (a - b).op_norm()

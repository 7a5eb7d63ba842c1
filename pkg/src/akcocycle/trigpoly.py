"""Matrix-valued trigonometric polynomials on the d-torus.

Coefficients live on integer frequency vectors with unbounded components
(resonant indices grow like iterated exponentials), so evaluation at a
rational point reduces the phase k.j mod Q in exact integer arithmetic
before any trigonometric call. The index norm |k| used by every strip
majorant is l^1 on Z^d, which makes the majorant submultiplicative under
convolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mpm
from mpmath import mpc, mpf

from .errors import ConditioningError, DomainError
from .frequency import Frequency, torus_frac
from .logreal import LogReal, logsum
from .mat2 import Mat2
from .precision import mpc_to_str, str_to_mpc, working_bits

_ROOT_CACHE: dict[tuple[int, int], list[mpc]] = {}


def _roots_of_unity(q: int) -> list[mpc]:
    key = (q, working_bits())
    tab = _ROOT_CACHE.get(key)
    if tab is None:
        tab = [mpm.expjpi(mpf(2 * j) / q) for j in range(q)]
        if len(_ROOT_CACHE) > 8:
            _ROOT_CACHE.clear()
        _ROOT_CACHE[key] = tab
    return tab


def _l1(k: tuple[int, ...]) -> int:
    return sum(abs(x) for x in k)


def _as_index(k, d: int) -> tuple[int, ...]:
    if isinstance(k, int):
        if d != 1:
            raise DomainError("scalar index on a d >= 2 polynomial")
        return (k,)
    k = tuple(int(x) for x in k)
    if len(k) != d:
        raise DomainError("index dimension mismatch")
    return k


def big_exp(x) -> mpf:
    """e^x for an mpf whose magnitude may dwarf the ambient exponent range."""
    return mpm.exp(x)


class TrigPoly:
    __slots__ = ("d", "coeffs")

    def __init__(self, d: int, coeffs: dict[tuple[int, ...], Mat2]):
        self.d = d
        self.coeffs = {k: v for k, v in coeffs.items() if v.max_abs() != 0}

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def constant(mat: Mat2, d: int = 1) -> "TrigPoly":
        return TrigPoly(d, {(0,) * d: mat})

    @staticmethod
    def identity(d: int = 1) -> "TrigPoly":
        return TrigPoly.constant(Mat2.identity(), d)

    @staticmethod
    def zero(d: int = 1) -> "TrigPoly":
        return TrigPoly(d, {})

    @staticmethod
    def mode(k, mat: Mat2, d: int = 1) -> "TrigPoly":
        return TrigPoly(d, {_as_index(k, d): mat})

    @staticmethod
    def resonant_diagonal(k, d: int = 1) -> "TrigPoly":
        """H(theta) = diag(e_k(theta), e_{-k}(theta))."""
        k = _as_index(k, d)
        mk = tuple(-x for x in k)
        poly = {k: Mat2(1, 0, 0, 0)}
        if mk == k:
            poly[k] = Mat2.identity()
        else:
            poly[mk] = Mat2(0, 0, 0, 1)
        return TrigPoly(d, poly)

    # -- linear structure -----------------------------------------------------

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return TrigPoly(self.d, out)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "TrigPoly":
        return TrigPoly(self.d, {k: v.scale(c) for k, v in self.coeffs.items()})

    def map_coeffs(self, fn) -> "TrigPoly":
        return TrigPoly(self.d, {k: fn(v) for k, v in self.coeffs.items()})

    # -- products -------------------------------------------------------------

    def __mul__(self, other: "TrigPoly") -> "TrigPoly":
        """Pointwise matrix product, i.e. coefficient convolution. Exact."""
        if self.d != other.d:
            raise DomainError("dimension mismatch")
        out: dict[tuple[int, ...], Mat2] = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                prod = v1 * v2
                out[k] = out[k] + prod if k in out else prod
        return TrigPoly(self.d, out)

    def truncate(self, floor) -> tuple["TrigPoly", mpf]:
        """Drop coefficients with operator norm <= floor; report the mass."""
        floor = mpf(floor)
        kept, dropped = {}, mpf(0)
        for k, v in self.coeffs.items():
            n = v.op_norm()
            if n <= floor:
                dropped += n
            else:
                kept[k] = v
        return TrigPoly(self.d, kept), dropped

    def adjugate(self) -> "TrigPoly":
        """Entrywise adjugate; equals the pointwise inverse iff det == 1."""
        return TrigPoly(self.d, {k: v.adjugate() for k, v in self.coeffs.items()})

    def det_poly(self) -> dict[tuple[int, ...], mpc]:
        # scalar convolution det = a11*a22 - a12*a21
        out: dict[tuple[int, ...], mpc] = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in self.coeffs.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                term = v1.a11 * v2.a22 - v1.a12 * v2.a21
                out[k] = out.get(k, mpc(0)) + term
        return {k: v for k, v in out.items() if abs(v) != 0}

    def unimodular_deviation(self) -> mpf:
        """sup-norm distance of det(P) from the constant 1 (coefficient sum)."""
        dp = self.det_poly()
        zero = (0,) * self.d
        dev = abs(dp.get(zero, mpc(0)) - 1)
        for k, v in dp.items():
            if k != zero:
                dev += abs(v)
        return dev

    def pointwise_inverse(self, tol=None) -> "TrigPoly":
        """Inverse within trig polys; requires det identically 1.

        A trig polynomial has a trig-polynomial pointwise inverse only when
        its determinant is a nonzero constant; every conjugation produced by
        the construction is unimodular, so det == 1 is enforced here.
        """
        tol = tol if tol is not None else mpf(2) ** (-(working_bits() - 24)) * max(
            mpf(1), self.coeff_abs_sum() ** 2)
        dev = self.unimodular_deviation()
        if dev > tol:
            raise ConditioningError(
                f"determinant deviates from 1 by {mpm.nstr(dev, 8)}; "
                "pointwise inverse is not a trig polynomial")
        return self.adjugate()

    def shift(self, alpha: Frequency) -> "TrigPoly":
        """The composition theta -> theta + alpha: coefficient k picks up e_k(alpha)."""
        out = {}
        for k, v in self.coeffs.items():
            fr = torus_frac(k if self.d > 1 else k[0], alpha)
            out[k] = v.scale(mpm.expjpi(2 * fr))
        return TrigPoly(self.d, out)

    def conj_transpose_reflect(self) -> "TrigPoly":
        """theta -> P(theta)^H for su(1,1)-real P: conjugate entries, negate modes."""
        out = {}
        for k, v in self.coeffs.items():
            out[tuple(-x for x in k)] = v.conj_t()
        return TrigPoly(self.d, out)

    # -- evaluation -------------------------------------------------------------

    def eval_fraction(self, theta: "Fraction | tuple[Fraction, ...]") -> Mat2:
        """Evaluate at an exact rational point; phases reduced mod 1 in Z."""
        th = (theta,) if isinstance(theta, Fraction) else tuple(theta)
        if len(th) != self.d:
            raise DomainError("theta dimension mismatch")
        q = 1
        for f in th:
            q = _lcm(q, f.denominator)
        roots = _roots_of_unity(q)
        acc = Mat2.zero()
        for k, v in self.coeffs.items():
            r = 0
            for ki, f in zip(k, th):
                r += ki * (f.numerator * (q // f.denominator))
            acc = acc + v.scale(roots[r % q])
        return acc

    def eval_mpf(self, theta) -> Mat2:
        """Evaluate at a real (or complex) point given as mpf/mpc tuple."""
        th = (theta,) if not isinstance(theta, (tuple, list)) else tuple(theta)
        if len(th) != self.d:
            raise DomainError("theta dimension mismatch")
        acc = Mat2.zero()
        for k, v in self.coeffs.items():
            kbits = max(abs(x).bit_length() for x in k) if any(k) else 1
            with mpm.extraprec(kbits + 16):
                ph = mpm.fsum(mpf(ki) * t for ki, t in zip(k, th)) if not any(
                    isinstance(t, mpc) for t in th) else sum(mpc(ki) * t for ki, t in zip(k, th))
                w = mpm.expjpi(2 * ph)
            acc = acc + v.scale(+w)
        return acc

    def eval(self, theta) -> Mat2:
        flat = (theta,) if not isinstance(theta, (tuple, list)) else tuple(theta)
        if all(isinstance(t, Fraction) for t in flat):
            return self.eval_fraction(flat if self.d > 1 else flat[0])
        return self.eval_mpf(flat if self.d > 1 else flat[0])

    # -- norms --------------------------------------------------------------------

    def coeff_abs_sum(self) -> mpf:
        return mpm.fsum(v.op_norm() for v in self.coeffs.values()) if self.coeffs else mpf(0)

    def strip_norm_upper(self, h) -> mpf:
        """Certified majorant of sup_{|Im theta| < h} ||P(theta)||.

        Operator norm of the entrywise majorant matrix
        M[i][j] = sum_k |P^(k)[i][j]| e^{2 pi |k|_1 h}: entrywise domination
        bounds the spectral norm, and the weight is submultiplicative under
        convolution. Tighter than the crude sum of coefficient norms.
        """
        h = mpf(h)
        m11 = m12 = m21 = m22 = mpf(0)
        for k, v in self.coeffs.items():
            n1 = _l1(k)
            with mpm.extraprec(int(n1).bit_length() + 16):
                w = big_exp(2 * mpm.pi * mpf(n1) * h)
            m11 += abs(v.a11) * w
            m12 += abs(v.a12) * w
            m21 += abs(v.a21) * w
            m22 += abs(v.a22) * w
        return Mat2(m11, m12, m21, m22).op_norm()

    def log_strip_norm(self, h) -> LogReal:
        """Log-space upper bound for strip_norm_upper (Frobenius-style sum)."""
        h = mpf(h)
        terms = []
        for k, v in self.coeffs.items():
            n1 = _l1(k)
            with mpm.extraprec(int(n1).bit_length() + 16):
                w = LogReal.exp(2 * mpm.pi * mpf(n1) * h)
            for e in v.entries():
                if abs(e) != 0:
                    terms.append(LogReal.from_mpf(abs(e)) * w)
        return logsum(terms)

    def cs_norm(self, s: int) -> mpf:
        """sum_k ||P^(k)|| (1 + |k|_1)^s, a C^s-norm surrogate."""
        if s < 0:
            raise DomainError("s must be >= 0")
        total = mpf(0)
        for k, v in self.coeffs.items():
            n1 = _l1(k)
            with mpm.extraprec(int(n1).bit_length() * (s + 1) + 16):
                total += v.op_norm() * mpf(1 + n1) ** s
        return total

    def sup_on_grid(self, q: int = 256) -> mpf:
        best = mpf(0)
        for j in range(q):
            val = self.eval_fraction((Fraction(j, q),) * self.d if self.d > 1 else Fraction(j, q))
            best = max(best, val.op_norm())
        return best

    def sup_on_strip_boundary(self, h, samples: int = 64) -> mpf:
        """max ||P(theta +- i h)|| over equispaced theta, both boundary signs."""
        h = mpf(h)
        best = mpf(0)
        for sgn in (1, -1):
            for j in range(samples):
                th = (mpf(j) / samples + mpc(0, sgn) * h,) * self.d
                best = max(best, self.eval_mpf(th if self.d > 1 else th[0]).op_norm())
        return best

    # -- structure ----------------------------------------------------------------

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.coeffs.keys())

    def coeff(self, k) -> Mat2:
        return self.coeffs.get(_as_index(k, self.d), Mat2.zero())

    def max_mode_l1(self) -> int:
        return max((_l1(k) for k in self.coeffs), default=0)

    def is_su11_group_like(self, tol=None) -> bool:
        """Pointwise shape [[a, b], [conj b, conj a]] as coefficient symmetry."""
        tol = tol if tol is not None else mpf(2) ** (-(working_bits() - 24)) * max(
            mpf(1), self.coeff_abs_sum())
        for k, v in self.coeffs.items():
            w = self.coeffs.get(tuple(-x for x in k), Mat2.zero())
            if abs(v.a22 - mpm.conj(w.a11)) > tol or abs(v.a21 - mpm.conj(w.a12)) > tol:
                return False
        return True

    def is_su11_algebra_like(self, tol=None) -> bool:
        """Pointwise shape [[i t, z], [conj z, -i t]] as coefficient symmetry."""
        tol = tol if tol is not None else mpf(2) ** (-(working_bits() - 24)) * max(
            mpf(1), self.coeff_abs_sum())
        for k, v in self.coeffs.items():
            w = self.coeffs.get(tuple(-x for x in k), Mat2.zero())
            if abs(v.a11 + mpm.conj(w.a11)) > tol:
                return False
            if abs(v.a22 + v.a11) > tol:
                return False
            if abs(v.a21 - mpm.conj(w.a12)) > tol:
                return False
        return True

    # -- io -------------------------------------------------------------------------

    def to_json(self) -> dict:
        items = []
        for k in sorted(self.coeffs):
            v = self.coeffs[k]
            items.append({
                "k": [str(x) for x in k],
                "c": [mpc_to_str(e) for e in v.entries()],
            })
        return {"type": "trigpoly", "d": self.d, "precision_bits": working_bits(),
                "coeffs": items}

    @staticmethod
    def from_json(data: dict) -> "TrigPoly":
        out = {}
        for item in data["coeffs"]:
            k = tuple(int(x) for x in item["k"])
            e = [str_to_mpc(c) for c in item["c"]]
            out[k] = Mat2(*e)
        return TrigPoly(int(data["d"]), out)

    def __repr__(self):
        return f"TrigPoly(d={self.d}, modes={len(self.coeffs)}, |k|max={self.max_mode_l1()})"


def _lcm(a: int, b: int) -> int:
    import math
    return a // math.gcd(a, b) * b


@dataclass
class ConjugationResult:
    poly: TrigPoly
    discarded_mass: mpf
    det_deviation: mpf


def conjugate_shift(b: TrigPoly, alpha: Frequency, a: TrigPoly,
                    floor=mpf("1e-60")) -> ConjugationResult:
    """B(.+alpha)^-1 A(.) B(.) at coefficient level, with truncation report."""
    dev = b.unimodular_deviation()
    b_inv_shift = b.shift(alpha).pointwise_inverse()
    prod = b_inv_shift * a * b
    poly, dropped = prod.truncate(floor)
    return ConjugationResult(poly, dropped, dev)


def cocycle_product(a: TrigPoly, alpha: Frequency, theta, n: int) -> Mat2:
    """A(theta; n) = A(theta+(n-1)alpha) ... A(theta); n = 0 gives Id,
    negative n follows A(.; -n) = A(. - n alpha; n)^-1."""
    if n == 0:
        return Mat2.identity()
    if n < 0:
        shifted = _translate_point(theta, alpha, n, a.d)
        return cocycle_product(a, alpha, shifted, -n).inv()
    acc = Mat2.identity()
    point = theta
    for _ in range(n):
        acc = a.eval(point) * acc
        point = _translate_point(point, alpha, 1, a.d)
    return acc


def _translate_point(theta, alpha: Frequency, steps: int, d: int):
    """theta + steps * alpha as mpf tuple (exact rationals get promoted)."""
    flat = (theta,) if not isinstance(theta, (tuple, list)) else tuple(theta)
    vals = alpha.values() if alpha.kind == "vector" else (alpha.value(),)
    out = []
    for t, av in zip(flat, vals):
        base = mpf(t.numerator) / t.denominator if isinstance(t, Fraction) else t
        x = base + steps * av
        out.append(x - mpm.floor(x))
    return tuple(out) if d > 1 else out[0]

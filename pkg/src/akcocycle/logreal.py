"""Leveled log-space reals for the construction ledger.

Strict schedules produce towers such as |k_4| > exp(exp(exp(10^8000))): no
fixed-level float survives. A LogReal stores a sign together with log10 of
the magnitude, and that log10 field is itself either an mpf or another
LogReal, so the representation deepens exactly as fast as the quantities do.

Arithmetic is exact where both operands live at mpf level; across levels a
dominated summand whose relative contribution is below the absorption
threshold (10^-(dps+20) at the ambient precision) is dropped. That is the
right contract for this ledger: every inequality it certifies either holds
with astronomically many orders of magnitude to spare or is resolved at mpf
level. A genuine tie raises PrecisionLossError rather than guessing.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath as mpm
from mpmath import mpf

from .errors import DomainError, PrecisionLossError
from .precision import mpf_to_str, str_to_mpf

# log10 magnitudes below this stay plain mpf; above it we nest one level.
_LEVEL_CAP = mpf("1e8")

_LN10 = None
_LN10_PREC = 0


def _ln10() -> mpf:
    global _LN10, _LN10_PREC
    if _LN10 is None or _LN10_PREC != mpm.mp.prec:
        _LN10 = mpm.log(10)
        _LN10_PREC = mpm.mp.prec
    return _LN10


def _absorption_threshold() -> mpf:
    return -(mpf(mpm.mp.dps) + 20)


class LogReal:
    """A real number held as (sign, log10 magnitude chain)."""

    __slots__ = ("sign", "log10")

    def __init__(self, sign: int, log10):
        if sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or 1")
        if sign == 0:
            log10 = None
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "log10", log10)

    def __setattr__(self, *_):
        raise AttributeError("LogReal is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LogReal":
        return LogReal(0, None)

    @staticmethod
    def one() -> "LogReal":
        return LogReal(1, mpf(0))

    @staticmethod
    def from_mpf(x) -> "LogReal":
        x = mpf(x)
        if x == 0:
            return LogReal.zero()
        return LogReal(1 if x > 0 else -1, mpm.log10(abs(x)))

    @staticmethod
    def from_int(n: int) -> "LogReal":
        if n == 0:
            return LogReal.zero()
        sign = 1 if n > 0 else -1
        n = abs(n)
        if n.bit_length() <= mpm.mp.prec:
            return LogReal(sign, mpm.log10(mpf(n)))
        with mpm.extraprec(n.bit_length().bit_length() + 16):
            lg = mpm.log10(mpf(n))
        return LogReal(sign, +lg)

    @staticmethod
    def from_log10(lg, sign: int = 1) -> "LogReal":
        """Number whose log10 magnitude is `lg` (mpf or LogReal)."""
        if isinstance(lg, LogReal):
            lowered = lg._as_mpf_or_none()
            if lowered is not None:
                lg = lowered
        else:
            lg = mpf(lg)
        return LogReal(sign, _normalize_logfield(lg))

    @staticmethod
    def exp(v: "LogReal | mpf") -> "LogReal":
        """e^v for a signed real v (itself possibly a LogReal)."""
        v = as_logreal(v)
        if v.sign == 0:
            return LogReal.one()
        scaled = v._scaled_value(1 / _ln10())  # v * log10(e), signed LogReal
        fld = scaled._as_mpf_or_none()
        return LogReal(1, _normalize_logfield(scaled if fld is None else fld))

    # -- representation helpers --------------------------------------------

    def _as_mpf_or_none(self):
        """The mpf value when safely representable, else None."""
        if self.sign == 0:
            return mpf(0)
        if isinstance(self.log10, LogReal):
            return None
        if abs(self.log10) > _LEVEL_CAP:
            return None
        return self.sign * mpm.power(10, self.log10)

    def to_mpf(self) -> mpf:
        v = self._as_mpf_or_none()
        if v is None:
            raise OverflowError("LogReal magnitude is beyond direct mpf range")
        return v

    def _signed_field(self):
        """log10 field as a signed object usable in recursive arithmetic."""
        return self.log10

    def _scaled_value(self, c):
        """self * c for a plain positive mpf scalar c, returned like self."""
        c = mpf(c)
        if c <= 0:
            raise DomainError("scale must be positive here")
        if self.sign == 0:
            return self
        new_log = _sadd(self.log10, mpm.log10(c))
        return LogReal(self.sign, _normalize_logfield(new_log))

    def depth(self) -> int:
        d, f = 1, self.log10
        while isinstance(f, LogReal):
            d += 1
            f = f.log10
        return d if self.sign != 0 else 0

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "LogReal":
        return LogReal(-self.sign, self.log10)

    def abs(self) -> "LogReal":
        return LogReal(abs(self.sign), self.log10)

    def __mul__(self, other) -> "LogReal":
        other = as_logreal(other)
        if self.sign == 0 or other.sign == 0:
            return LogReal.zero()
        return LogReal(self.sign * other.sign,
                       _normalize_logfield(_sadd(self.log10, other.log10)))

    def __truediv__(self, other) -> "LogReal":
        other = as_logreal(other)
        if other.sign == 0:
            raise ZeroDivisionError
        if self.sign == 0:
            return LogReal.zero()
        return LogReal(self.sign * other.sign,
                       _normalize_logfield(_sadd(self.log10, _sneg(other.log10))))

    def pow(self, e) -> "LogReal":
        """self**e for rational/real e; requires self > 0 unless e is integer."""
        if self.sign == 0:
            return LogReal.zero()
        if isinstance(e, Fraction):
            ev = mpf(e.numerator) / e.denominator
        else:
            ev = mpf(e)
        if self.sign < 0:
            if not (isinstance(e, int) or (isinstance(e, Fraction) and e.denominator == 1)):
                raise DomainError("negative base with non-integer exponent")
            sign = -1 if int(e) % 2 else 1
        else:
            sign = 1
        if ev == 0:
            return LogReal.one()
        scaled = _smul_scalar(self.log10, ev)
        return LogReal(sign, _normalize_logfield(scaled))

    def __add__(self, other) -> "LogReal":
        other = as_logreal(other)
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        cmp = _cmp_logfield(self.log10, other.log10)
        big, small = (self, other) if cmp >= 0 else (other, self)
        delta = _ssub_or_none(small.log10, big.log10)  # log10(small/big) <= 0
        if delta is None or (not isinstance(delta, LogReal) and delta < _absorption_threshold()) \
                or (isinstance(delta, LogReal) and delta.sign < 0):
            if cmp == 0 and self.sign != other.sign:
                raise PrecisionLossError("cancellation between indistinguishable magnitudes")
            return big  # dominated summand absorbed
        ratio = mpm.power(10, delta)
        if self.sign == other.sign:
            corr = mpm.log10(1 + ratio)
            return LogReal(big.sign, _normalize_logfield(_sadd(big.log10, corr)))
        if ratio >= 1:
            raise PrecisionLossError("cancellation between indistinguishable magnitudes")
        corr = mpm.log10(1 - ratio)
        return LogReal(big.sign, _normalize_logfield(_sadd(big.log10, corr)))

    def __sub__(self, other) -> "LogReal":
        return self + (-as_logreal(other))

    def ln(self) -> "LogReal":
        """Natural log of a positive LogReal, as a signed LogReal."""
        if self.sign <= 0:
            raise DomainError("ln of a non-positive LogReal")
        f = self.log10
        if not isinstance(f, LogReal):
            val = f * _ln10()
            return LogReal.from_mpf(val)
        scaled = f._scaled_value(_ln10())
        return scaled

    def log10_value(self) -> "LogReal":
        if self.sign <= 0:
            raise DomainError("log10 of a non-positive LogReal")
        f = self.log10
        return LogReal.from_mpf(f) if not isinstance(f, LogReal) else f

    def sqrt(self) -> "LogReal":
        return self.pow(Fraction(1, 2))

    # -- comparisons --------------------------------------------------------

    def cmp(self, other) -> int:
        other = as_logreal(other)
        if self.sign != other.sign:
            return 1 if self.sign > other.sign else -1
        if self.sign == 0:
            return 0
        c = _cmp_logfield(self.log10, other.log10)
        return c * self.sign

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def __eq__(self, other):
        try:
            return self.cmp(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.sign, repr(self.log10)))

    # -- io -------------------------------------------------------------

    def magnitude_descriptor(self) -> dict:
        """Report-friendly snapshot: nesting depth, chain signs, top float.

        depth 1 means log10|x| = top; depth 2 means log10|log10|x|| = top
        with `chain` recording the sign of log10|x|; and so on.
        """
        signs, f = [], self.log10
        while isinstance(f, LogReal):
            signs.append(f.sign)
            f = f.log10
        if f is None:
            return {"sign": 0, "depth": 0, "chain": [], "top": 0.0}
        try:
            top = float(f)
        except OverflowError:
            top = float("inf") if f > 0 else float("-inf")
        return {"sign": self.sign, "depth": len(signs) + 1, "chain": signs, "top": top}

    def to_json(self) -> dict:
        if self.sign == 0:
            return {"sign": 0, "log10": None}
        if not isinstance(self.log10, LogReal):
            return {"sign": self.sign, "log10": mpf_to_str(self.log10)}
        return {"sign": self.sign, "log10": None, "log10_nested": self.log10.to_json()}

    @staticmethod
    def from_json(d: dict) -> "LogReal":
        if d["sign"] == 0:
            return LogReal.zero()
        if d.get("log10") is not None:
            return LogReal(d["sign"], str_to_mpf(d["log10"]))
        return LogReal(d["sign"], LogReal.from_json(d["log10_nested"]))

    def __repr__(self):
        if self.sign == 0:
            return "LogReal(0)"
        s = "-" if self.sign < 0 else ""
        f = self.log10
        if not isinstance(f, LogReal):
            return f"LogReal({s}10^{mpm.nstr(f, 10)})"
        return f"LogReal({s}10^({f!r}))"


def as_logreal(x) -> LogReal:
    if isinstance(x, LogReal):
        return x
    if isinstance(x, int):
        return LogReal.from_int(x)
    return LogReal.from_mpf(x)


# -- signed arithmetic on log10 fields (mpf or LogReal) ---------------------


def _normalize_logfield(f):
    """Lower a LogReal field back to mpf when it is small enough."""
    if isinstance(f, LogReal):
        if f.sign == 0:
            return mpf(0)
        if not isinstance(f.log10, LogReal) and f.log10 <= 8:
            return f.sign * mpm.power(10, f.log10)
        return f
    if abs(f) > _LEVEL_CAP:
        return LogReal.from_mpf(f)
    return f


def _sneg(f):
    return -f if not isinstance(f, LogReal) else LogReal(-f.sign, f.log10)


def _sadd(a, b):
    """a + b where each is mpf or LogReal (signed)."""
    if not isinstance(a, LogReal) and not isinstance(b, LogReal):
        return a + b
    la, lb = as_logreal(a) if not isinstance(a, LogReal) else a, \
        as_logreal(b) if not isinstance(b, LogReal) else b
    return la + lb


def _ssub_or_none(a, b):
    """a - b, or None when the cancellation is below resolution."""
    try:
        r = _sadd(a, _sneg(b))
    except PrecisionLossError:
        return None
    if isinstance(r, LogReal):
        v = r._as_mpf_or_none()
        return r if v is None else v
    return r


def _smul_scalar(f, c: mpf):
    """f * c for signed field f and mpf scalar c."""
    if not isinstance(f, LogReal):
        return f * c
    if c == 0:
        return mpf(0)
    scaled = f._scaled_value(abs(c))
    return scaled if c > 0 else LogReal(-scaled.sign, scaled.log10)


def _cmp_logfield(a, b) -> int:
    """Compare signed fields a, b."""
    if not isinstance(a, LogReal) and not isinstance(b, LogReal):
        return 0 if a == b else (1 if a > b else -1)
    la = a if isinstance(a, LogReal) else LogReal.from_mpf(a)
    lb = b if isinstance(b, LogReal) else LogReal.from_mpf(b)
    if la.sign != lb.sign:
        return 1 if la.sign > lb.sign else -1
    if la.sign == 0:
        return 0
    return _cmp_logfield(la.log10, lb.log10) * la.sign


def logsum(terms) -> LogReal:
    """Fold a sequence of LogReals with dominance-absorbing addition."""
    acc = LogReal.zero()
    for t in terms:
        acc = acc + as_logreal(t)
    return acc

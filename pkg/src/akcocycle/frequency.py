"""Base-frequency arithmetic: torus norms, continued fractions, resonances.

d = 1 is the fully supported path. The golden mean carries an exact ledger
backing (||q_n alpha|| = phi^-(n+1) for the convergent denominators
q_n = Fib(n+1)), which is what lets strict schedules run to depths where the
resonant indices themselves are only representable in iterated log space.
d >= 2 frequencies support high-precision brute-force scans only.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mpm
from mpmath import mpf

from .errors import BudgetError, DomainError
from .logreal import LogReal, as_logreal
from .precision import mpf_to_str, str_to_mpf, working_bits


def _fib_pair(n: int) -> tuple[int, int]:
    """(F(n), F(n+1)) by fast doubling, F(1) = F(2) = 1."""
    if n == 0:
        return 0, 1
    a, b = _fib_pair(n >> 1)
    c = a * ((b << 1) - a)
    d = a * a + b * b
    return (d, c + d) if n & 1 else (c, d)


def fibonacci(n: int) -> int:
    return _fib_pair(n)[0]


@dataclass(frozen=True)
class Frequency:
    """A rationally independent frequency on the d-torus.

    Backings for d = 1:
      * kind="golden": (sqrt(5)-1)/2 with the exact convergent ledger
      * kind="cf":     explicit continued-fraction coefficients [a0, a1, ...]
      * kind="decimal": decimal string at a stated precision
    d >= 2 uses kind="vector" with per-component decimal strings.
    """

    kind: str
    data: tuple = ()
    precision_bits: int = 0

    @property
    def d(self) -> int:
        return len(self.data) if self.kind == "vector" else 1

    # -- constructors --------------------------------------------------------

    @staticmethod
    def golden() -> "Frequency":
        return Frequency("golden")

    @staticmethod
    def from_cf(coeffs) -> "Frequency":
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) < 2 or any(c < 1 for c in coeffs[1:]):
            raise DomainError("continued fraction needs a0 and positive partial quotients")
        return Frequency("cf", coeffs)

    @staticmethod
    def from_decimal(s: str, precision_bits: int) -> "Frequency":
        return Frequency("decimal", (s,), precision_bits)

    @staticmethod
    def from_vector(components: list[str], precision_bits: int) -> "Frequency":
        return Frequency("vector", tuple(components), precision_bits)

    @staticmethod
    def from_config(spec: dict) -> "Frequency":
        if "quadratic" in spec:
            name = spec["quadratic"]
            if name != "golden":
                raise DomainError(f"unknown quadratic frequency {name!r}")
            return Frequency.golden()
        if "cf" in spec:
            return Frequency.from_cf(spec["cf"])
        if "decimal" in spec:
            return Frequency.from_decimal(spec["decimal"], int(spec.get("precision_bits", 0) or working_bits()))
        if "vector" in spec:
            return Frequency.from_vector(list(spec["vector"]), int(spec.get("precision_bits", 0) or working_bits()))
        raise DomainError("frequency spec needs one of quadratic/cf/decimal/vector")

    def to_config(self) -> dict:
        if self.kind == "golden":
            return {"quadratic": "golden"}
        if self.kind == "cf":
            return {"cf": list(self.data)}
        if self.kind == "decimal":
            return {"decimal": self.data[0], "precision_bits": self.precision_bits}
        return {"vector": list(self.data), "precision_bits": self.precision_bits}

    # -- values ---------------------------------------------------------------

    def value(self, bits: int | None = None) -> mpf:
        """The frequency as an mpf at `bits` (d = 1 only)."""
        if self.kind == "vector":
            raise DomainError("scalar value undefined for d >= 2")
        bits = bits or working_bits()
        if self.kind == "golden":
            with mpm.workprec(bits):
                return (mpm.sqrt(5) - 1) / 2
        if self.kind == "decimal":
            if bits > self.precision_bits:
                raise DomainError("decimal backing has insufficient precision")
            with mpm.workprec(bits):
                return mpm.mpf(self.data[0])
        # cf: evaluate convergents until the error 1/(q_m q_{m+1}) clears bits
        with mpm.workprec(bits + 16):
            p0, q0, p1, q1 = 1, 0, int(self.data[0]), 1
            for a in self.data[1:]:
                p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
                if q0 and (q0 * q1).bit_length() > bits + 8:
                    return mpf(p1) / q1
            raise DomainError("cf backing too short for the requested precision")

    def values(self, bits: int | None = None) -> tuple[mpf, ...]:
        if self.kind != "vector":
            return (self.value(bits),)
        bits = bits or working_bits()
        if bits > self.precision_bits:
            raise DomainError("vector backing has insufficient precision")
        with mpm.workprec(bits):
            return tuple(mpm.mpf(s) for s in self.data)

    # -- continued-fraction structure (d = 1) ---------------------------------

    def cf_coefficients(self, count: int) -> list[int]:
        if self.kind == "golden":
            return [0] + [1] * (count - 1)
        if self.kind == "cf":
            if count > len(self.data):
                raise DomainError("cf backing shorter than requested depth")
            return list(self.data[:count])
        # decimal: run the Gauss map at the stated backing precision
        out = []
        with mpm.workprec(self.precision_bits):
            x = mpm.mpf(self.data[0])
            budget = self.precision_bits
            for _ in range(count):
                a = int(mpm.floor(x))
                out.append(a)
                frac = x - a
                if frac == 0 or budget < 16:
                    raise DomainError("decimal backing exhausted while expanding cf")
                budget -= max(1, int(mpm.log(1 / frac, 2)) + 1)
                x = 1 / frac
        return out

    def convergents(self, count: int):
        """Yield (p_n, q_n) for n = 0 .. count-1; q_0 = 1."""
        coeffs = self.cf_coefficients(count)
        p0, q0 = 1, 0
        p1, q1 = coeffs[0], 1
        yield p1, q1
        for a in coeffs[1:]:
            p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
            yield p1, q1

    def convergent_denominator(self, n: int) -> int:
        if self.kind == "golden":
            return fibonacci(n + 1)
        for i, (_, q) in enumerate(self.convergents(n + 1)):
            if i == n:
                return q
        raise DomainError("convergent index out of backing range")


def _work_bits_for(alpha: Frequency, k_bits: int) -> int:
    """Internal precision for <k, alpha>: ambient + index size, capped by a
    finite backing (which must still clear the index with 64 guard bits)."""
    want = working_bits() + k_bits + 32
    if alpha.kind in ("decimal", "vector"):
        if alpha.precision_bits < k_bits + 64:
            raise DomainError("frequency backing too short for this index")
        return min(want, alpha.precision_bits)
    return want


def torus_norm(k, alpha: Frequency) -> mpf:
    """Distance of <k, alpha> to the nearest integer, at ambient precision."""
    if alpha.kind == "vector":
        ks = tuple(k) if isinstance(k, (tuple, list)) else (k,)
        if len(ks) != alpha.d:
            raise DomainError("index dimension mismatch")
        bits = _work_bits_for(alpha, max(int(abs(x)).bit_length() for x in ks))
        with mpm.workprec(bits):
            vals = alpha.values(bits)
            x = mpm.fsum(mpf(int(ki)) * v for ki, v in zip(ks, vals))
            fr = x - mpm.floor(x)
            res = min(fr, 1 - fr)
        return +res
    k = int(k[0]) if isinstance(k, (tuple, list)) else int(k)
    if k == 0:
        return mpf(0)
    bits = _work_bits_for(alpha, abs(k).bit_length())
    with mpm.workprec(bits):
        x = alpha.value(bits) * k
        fr = x - mpm.floor(x)
        res = min(fr, 1 - fr)
    return +res


def torus_frac(k, alpha: Frequency) -> mpf:
    """<k, alpha> mod 1 in [0, 1)."""
    if alpha.kind == "vector":
        ks = tuple(k)
        bits = _work_bits_for(alpha, max(int(abs(x)).bit_length() for x in ks))
        with mpm.workprec(bits):
            vals = alpha.values(bits)
            x = mpm.fsum(mpf(int(ki)) * v for ki, v in zip(ks, vals))
            res = x - mpm.floor(x)
        return +res
    k = int(k[0]) if isinstance(k, (tuple, list)) else int(k)
    bits = _work_bits_for(alpha, abs(k).bit_length())
    with mpm.workprec(bits):
        x = alpha.value(bits) * k
        res = x - mpm.floor(x)
    return +res


def _golden_log_phi() -> mpf:
    return mpm.log((1 + mpm.sqrt(5)) / 2)


def log_torus_norm(alpha: Frequency, k=None, convergent_index=None) -> LogReal:
    """log-space ||<k, alpha>||, by value or by convergent index.

    For the golden mean the convergent path is the exact closed form
    ||q_n alpha|| = phi^-(n+1); the index may then be an int or a LogReal.
    """
    if alpha.kind == "vector":
        raise DomainError("log_torus_norm supports d = 1 only")
    if (k is None) == (convergent_index is None):
        raise DomainError("give exactly one of k / convergent_index")
    if convergent_index is not None:
        n = convergent_index
        if alpha.kind == "golden":
            # ||q_n alpha|| = phi^-(n+1) for n >= 1; the n = 0 convergent 0/1
            # is not a best approximation (nearest integer to alpha is 1)
            lnphi = _golden_log_phi()
            if isinstance(n, LogReal):
                ln_beta = -((n + LogReal.one()) * LogReal.from_mpf(lnphi))
                return LogReal.exp(ln_beta)
            return LogReal.exp(LogReal.from_mpf(-(mpf(max(int(n), 1)) + 1) * lnphi))
        if isinstance(n, LogReal):
            raise DomainError("ledger-scale convergent indices need the golden backing")
        k = alpha.convergent_denominator(int(n))
    return LogReal.from_mpf(torus_norm(k, alpha))


def golden_index_for_log_beta(alpha: Frequency, ln_beta_bound) -> "int | LogReal":
    """Smallest convergent index n with ln ||q_n alpha|| < ln_beta_bound (< 0).

    Returns an exact int when the index is materializable, else a LogReal
    with 25% headroom over the threshold (documented ledger convention).
    """
    if alpha.kind != "golden":
        raise DomainError("exact index inversion needs the golden backing")
    bound = as_logreal(ln_beta_bound)
    if bound.sign >= 0:
        return 0
    lnphi = _golden_log_phi()
    need = bound.abs() / LogReal.from_mpf(lnphi)  # need n+1 > this
    direct = need._as_mpf_or_none()
    if direct is not None and direct < mpf("1e15"):
        n_plus_1 = int(mpm.floor(direct)) + 1
        return max(0, n_plus_1 - 1)
    return need * LogReal.from_mpf(mpf("1.25"))


def golden_log_denominator(alpha: Frequency, n) -> LogReal:
    """ln q_n for the golden backing; n int or LogReal."""
    if alpha.kind != "golden":
        raise DomainError("ledger denominators need the golden backing")
    lnphi = _golden_log_phi()
    ln_sqrt5 = mpm.log(5) / 2
    if isinstance(n, LogReal):
        return (n + LogReal.one()) * LogReal.from_mpf(lnphi) - LogReal.from_mpf(ln_sqrt5)
    n = int(n)
    if n < 64:
        return LogReal.from_mpf(mpm.log(fibonacci(n + 1)))
    return LogReal.from_mpf((n + 1) * lnphi - ln_sqrt5
                            + mpm.log(1 - mpf(-1) ** (n + 1) * mpm.exp(-2 * (n + 1) * lnphi)))


def resolve_sign(k: int, alpha: Frequency) -> int:
    """Flip k so that <k, alpha> mod 1 lands in (0, 1/2]."""
    fr = torus_frac(k, alpha)
    return k if fr <= mpf("0.5") else -k


def find_resonance(alpha: Frequency, eps, min_size: int = 0, budget: int = 200000):
    """Smallest examined k with ||<k, alpha>|| < eps and |k| > min_size.

    d = 1 walks convergent denominators (best approximations); the returned
    k is sign-resolved so that <k, alpha> mod 1 is in (0, 1/2]. d >= 2 scans
    boxes of increasing sup-radius.
    """
    eps_l = as_logreal(eps)
    if eps_l.sign <= 0:
        raise DomainError("eps must be positive")
    if alpha.kind == "vector":
        return _find_resonance_box(alpha, eps_l, min_size, budget)
    best = None
    count = 64
    while count <= budget:
        if alpha.kind == "cf":
            count = min(count, len(alpha.data))
        n = 0
        try:
            for _, q in alpha.convergents(count):
                beta = log_torus_norm(alpha, convergent_index=n)
                if q > min_size and beta < eps_l:
                    return resolve_sign(q, alpha)
                if q > min_size and (best is None or beta < best[1]):
                    best = (q, beta)
                n += 1
        except DomainError:
            break  # backing exhausted
        if alpha.kind == "cf" and count >= len(alpha.data):
            break
        if alpha.kind == "decimal":
            break
        count *= 2
    raise BudgetError("resonance search budget exhausted",
                      best=None if best is None else best[0])


def _find_resonance_box(alpha: Frequency, eps_l: LogReal, min_size: int, budget: int):
    d = alpha.d
    radius, examined = 1, 0
    best = None
    while examined <= budget:
        from itertools import product
        for k in product(range(-radius, radius + 1), repeat=d):
            if all(abs(x) < radius for x in k):
                continue  # only the new shell
            size = sum(abs(x) for x in k)
            if size == 0 or size <= min_size:
                continue
            examined += 1
            beta = LogReal.from_mpf(torus_norm(k, alpha))
            if beta < eps_l:
                fr = torus_frac(k, alpha)
                return k if fr <= mpf("0.5") else tuple(-x for x in k)
            if best is None or beta < best[1]:
                best = (k, beta)
        radius += 1
    raise BudgetError("resonance box scan budget exhausted",
                      best=None if best is None else best[0])


def dio_estimate(alpha: Frequency, radius: int, tau) -> mpf:
    """min over 0 < |n| <= radius of ||<n, alpha>|| * |n|^tau.

    A certified lower-bound witness for the Diophantine constant up to the
    scanned radius.
    """
    if radius < 1:
        raise DomainError("radius must be >= 1")
    tau = mpf(tau)
    if alpha.kind == "vector":
        from itertools import product
        best = None
        for k in product(range(-radius, radius + 1), repeat=alpha.d):
            size = max(abs(x) for x in k)
            if size == 0:
                continue
            v = torus_norm(k, alpha) * mpf(sum(abs(x) for x in k)) ** tau
            best = v if best is None else min(best, v)
        return best
    # d = 1: one high-precision pass over n alpha mod 1
    guard = radius.bit_length() + 48
    with mpm.workprec(working_bits() + guard):
        a = alpha.value(working_bits() + guard)
        x = mpf(0)
        best = None
        for n in range(1, radius + 1):
            x += a
            x -= mpm.floor(x)
            nrm = min(x, 1 - x)
            v = nrm * mpf(n) ** tau
            if best is None or v < best:
                best = v
    return +best


@dataclass(frozen=True)
class DioParams:
    kappa_prime: mpf
    tau: mpf

    def __post_init__(self):
        object.__setattr__(self, "kappa_prime", mpf(self.kappa_prime))
        object.__setattr__(self, "tau", mpf(self.tau))
        if not self.kappa_prime > 0:
            raise DomainError("kappa_prime must be positive")

    def to_json(self) -> dict:
        return {"kappa_prime": mpf_to_str(self.kappa_prime), "tau": mpf_to_str(self.tau)}

    @staticmethod
    def from_json(d: dict) -> "DioParams":
        return DioParams(str_to_mpf(d["kappa_prime"]), str_to_mpf(d["tau"]))

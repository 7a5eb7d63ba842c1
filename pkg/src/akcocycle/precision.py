"""Working-precision control and the tolerance ladder used across the package.

All numerics run on mpmath. The ambient binary precision P (bits) is a
process-wide setting; every tolerance is expressed relative to P so that
raising the precision tightens the whole verification suite automatically.

Tolerance ladder (relative):
  * det / group-membership checks:   2^-(P-16)
  * algebraic identities (round trips, diagonalization, norms): 2^-(P-20)
  * construction step identities on theta grids:                2^-(P-30)
"""

from __future__ import annotations

import contextlib
import math

import mpmath as mpm
from mpmath import mpf

DEFAULT_BITS = 256


def set_working_precision(bits: int) -> None:
    if bits < 64:
        raise ValueError("working precision must be at least 64 bits")
    mpm.mp.prec = bits


def working_bits() -> int:
    return mpm.mp.prec


@contextlib.contextmanager
def working_precision(bits: int):
    """Temporarily run at `bits` of binary precision."""
    old = mpm.mp.prec
    mpm.mp.prec = bits
    try:
        yield
    finally:
        mpm.mp.prec = old


@contextlib.contextmanager
def extra_precision(bits: int):
    old = mpm.mp.prec
    mpm.mp.prec = old + bits
    try:
        yield
    finally:
        mpm.mp.prec = old


def tol_det(bits: int | None = None) -> mpf:
    p = bits if bits is not None else working_bits()
    return mpf(2) ** (-(p - 16))


def tol_identity(bits: int | None = None) -> mpf:
    p = bits if bits is not None else working_bits()
    return mpf(2) ** (-(p - 20))


def tol_step(bits: int | None = None) -> mpf:
    p = bits if bits is not None else working_bits()
    return mpf(2) ** (-(p - 30))


def dps_for_bits(bits: int) -> int:
    """Decimal digits that round-trip a `bits`-bit float exactly."""
    return int(math.ceil(bits * 0.30103)) + 3


def mpf_to_str(x) -> str:
    """Decimal string that reparses to the same mpf at the current precision."""
    return mpm.nstr(mpm.mpf(x), dps_for_bits(working_bits()), strip_zeros=False)


def str_to_mpf(s: str) -> mpf:
    return mpm.mpf(s)


def mpc_to_str(z) -> dict:
    z = mpm.mpc(z)
    return {"re": mpf_to_str(z.real), "im": mpf_to_str(z.imag)}


def str_to_mpc(d: dict) -> mpm.mpc:
    return mpm.mpc(str_to_mpf(d["re"]), str_to_mpf(d["im"]))


set_working_precision(DEFAULT_BITS)

"""Structured pass/fail records with log-space margins, JSON/CSV emission."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field

import mpmath as mpm
from mpmath import mpf

from .logreal import LogReal, as_logreal


def margin_orders(lhs, rhs) -> float:
    """Signed decimal orders of slack in 'lhs < rhs' (positive = passing)."""
    lhs, rhs = as_logreal(lhs), as_logreal(rhs)
    if lhs.sign <= 0 and rhs.sign > 0:
        return float("inf")
    if rhs.sign <= 0 and lhs.sign > 0:
        return float("-inf")
    if lhs.sign == 0 and rhs.sign == 0:
        return 0.0
    la = lhs.log10_value()
    lb = rhs.log10_value()
    try:
        diff = lb - la
    except Exception:
        return float("inf") if rhs > lhs else float("-inf")
    d = diff.magnitude_descriptor()
    if d["sign"] == 0:
        return 0.0
    if d["depth"] <= 1 and abs(d["top"]) < 300:
        return d["sign"] * 10.0 ** d["top"] if d["top"] > -300 else 0.0
    return float("inf") * d["sign"]


@dataclass
class CheckRecord:
    name: str
    passed: bool
    margin_log10: float
    stamp: str            # "strict" | "relaxed" | "identity" | "measured"
    lhs: str = ""
    rhs: str = ""
    note: str = ""

    def to_row(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "margin_log10": _finite(self.margin_log10),
            "stamp": self.stamp,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "note": self.note,
        }


def _finite(x: float):
    if x == float("inf"):
        return "inf"
    if x == float("-inf"):
        return "-inf"
    return round(float(x), 6)


@dataclass
class VerificationReport:
    title: str
    mode: str
    checks: list[CheckRecord] = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def add(self, name: str, passed: bool, margin: float = 0.0, stamp: str | None = None,
            lhs: str = "", rhs: str = "", note: str = "") -> CheckRecord:
        rec = CheckRecord(name, bool(passed), margin, stamp or self.mode, lhs, rhs, note)
        self.checks.append(rec)
        return rec

    def add_bound(self, name: str, lhs, rhs, stamp: str | None = None, note: str = "",
                  strict: bool = True) -> CheckRecord:
        """Record the inequality lhs < rhs (<= when strict=False)."""
        lhs_l, rhs_l = as_logreal(lhs), as_logreal(rhs)
        ok = lhs_l < rhs_l if strict else lhs_l <= rhs_l
        return self.add(name, ok, margin_orders(lhs_l, rhs_l), stamp,
                        lhs=_fmt(lhs_l), rhs=_fmt(rhs_l), note=note)

    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[CheckRecord]:
        return [c for c in self.checks if not c.passed]

    def to_json_dict(self) -> dict:
        return {
            "title": self.title,
            "mode": self.mode,
            "all_passed": self.all_passed(),
            "checks": [c.to_row() for c in sorted(self.checks, key=lambda c: c.name)],
            "extras": self.extras,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["name", "passed", "margin_log10",
                                            "stamp", "lhs", "rhs", "note"])
        w.writeheader()
        for c in sorted(self.checks, key=lambda c: c.name):
            w.writerow(c.to_row())
        return buf.getvalue()


def _fmt(x: LogReal) -> str:
    if x.sign == 0:
        return "0"
    d = x.magnitude_descriptor()
    s = "-" if x.sign < 0 else ""
    if d["depth"] <= 1:
        return f"{s}10^{d['top']:.6g}"
    inner = "10^" * (d["depth"] - 1)
    signs = "".join("-" if c < 0 else "" for c in d["chain"])
    return f"{s}{inner}({signs}10^{d['top']:.6g})"


def dump_json(obj: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")


def config_hash(cfg: dict) -> str:
    blob = json.dumps(cfg, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def mpf_repr(x) -> str:
    return mpm.nstr(mpf(x), int(mpm.mp.dps) + 3, strip_zeros=False)

"""Sweeps over primes and random curves: minimal box sides, moment reports,
and the log-log growth exponent of the worst minimal side per prime.
"""

import csv
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import charsum
from .cubic import ReducedCubic, brute_detect_in_box, min_box_side
from .modarith import MODULUS_CAP, UsageError, check_modulus, next_prime
from .rng import FAMILY_STREAM, Stream, sample_curve

RECORD_FIELDS = (
    "p", "a", "c", "h_min", "u", "v_signed",
    "x1", "y1", "x2", "y2", "anchor_x", "anchor_y", "micros",
)

# Above this, minimality is trusted to the bisection and only membership is rechecked.
VERIFY_LIMIT = 10**4


class ScanIOError(OSError):
    pass


@dataclass
class ScanConfig:
    prime_lo: int = 1000
    prime_hi: int = 10**6
    primes_per_decade: int = 14
    primes: Optional[List[int]] = None
    curves_per_prime: int = 50
    curves: Optional[List[Tuple[int, int]]] = None
    seed: int = 0
    r_values: List[int] = field(default_factory=lambda: [1, 2, 3])
    epsilon: float = 0.1
    workers: int = 1
    output: Optional[str] = None
    moment_H: Optional[int] = None
    family_count: Optional[int] = None
    timing: bool = False

    def validate(self) -> "ScanConfig":
        if self.primes is None:
            if self.prime_lo < 5:
                raise UsageError("prime_lo must be >= 5")
            if self.prime_hi >= MODULUS_CAP or self.prime_hi < self.prime_lo:
                raise UsageError("need prime_lo <= prime_hi < 2^62")
            if self.primes_per_decade < 1:
                raise UsageError("primes_per_decade must be >= 1")
        else:
            if not self.primes:
                raise UsageError("explicit prime list is empty")
            for p in self.primes:
                check_modulus(p)
        if self.curves is None and self.curves_per_prime < 1:
            raise UsageError("curves_per_prime must be >= 1")
        if self.workers < 1:
            raise UsageError("worker count must be >= 1")
        if not self.r_values or any(r < 1 for r in self.r_values):
            raise UsageError("r values must be positive integers")
        if self.epsilon < 0:
            raise UsageError("epsilon must be nonnegative")
        return self


@dataclass(frozen=True)
class ScanRecord:
    p: int
    a: int
    c: int
    h_min: int
    u: int
    v_signed: int
    x1: int
    y1: int
    x2: int
    y2: int
    anchor_x: int
    anchor_y: int
    micros: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PrimeSummary:
    p: int
    h_worst: int
    curves: int


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    n_points: int


def sample_primes(lo: int, hi: int, per_decade: int) -> List[int]:
    """Log-uniform primes: next prime above 10^(d + i/per_decade), kept if in [lo, hi]."""
    out = set()
    for d in range(int(math.floor(math.log10(lo))), int(math.floor(math.log10(hi))) + 1):
        for i in range(per_decade):
            q = next_prime(math.ceil(10 ** (d + i / per_decade)))
            if lo <= q <= hi:
                out.add(q)
    return sorted(out)


def config_primes(cfg: ScanConfig) -> List[int]:
    if cfg.primes is not None:
        return sorted(set(int(p) for p in cfg.primes))
    return [p for p in sample_primes(cfg.prime_lo, cfg.prime_hi, cfg.primes_per_decade) if p > 3]


def config_curves(cfg: ScanConfig, p: int) -> List[Tuple[int, int]]:
    if cfg.curves is not None:
        return [(a % p, c % p) for a, c in cfg.curves]
    return [sample_curve(cfg.seed, p, i) for i in range(cfg.curves_per_prime)]


def _scan_unit(unit: Tuple[int, int, int, bool]) -> ScanRecord:
    p, a, c, timing = unit
    cur = ReducedCubic(p, a, c)
    t0 = time.perf_counter_ns()
    h, wit = min_box_side(cur)
    micros = (time.perf_counter_ns() - t0) // 1000 if timing else 0
    wit.check(cur)
    if p <= VERIFY_LIMIT and brute_detect_in_box(cur, h - 1) is not None:
        raise RuntimeError(f"minimality check failed for p={p}, a={a}, c={c}: h_min={h}")
    return ScanRecord(
        p=p, a=cur.a, c=cur.c, h_min=h, u=wit.u, v_signed=wit.v_signed,
        x1=wit.p1.x, y1=wit.p1.y, x2=wit.p2.x, y2=wit.p2.y,
        anchor_x=wit.anchor_x, anchor_y=wit.anchor_y, micros=micros,
    )


def _run_units(func, units, workers: int):
    if workers == 1 or len(units) < 2:
        return [func(u) for u in units]
    chunk = max(1, len(units) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, units, chunksize=chunk))


def summarize(records: Sequence[ScanRecord]) -> List[PrimeSummary]:
    worst: Dict[int, List[int]] = {}
    for rec in records:
        worst.setdefault(rec.p, []).append(rec.h_min)
    return [PrimeSummary(p, max(hs), len(hs)) for p, hs in sorted(worst.items())]


def run_minbox_scan(cfg: ScanConfig) -> Tuple[List[ScanRecord], List[PrimeSummary]]:
    """Minimal box side for every sampled (p, a, c); records sorted by (p, a, c)."""
    cfg.validate()
    units = [
        (p, a, c, cfg.timing)
        for p in config_primes(cfg)
        for a, c in config_curves(cfg, p)
    ]
    records = _run_units(_scan_unit, units, cfg.workers)
    records.sort(key=lambda r: (r.p, r.a, r.c))
    if cfg.output is not None:
        write_records(records, _format_for(cfg.output), cfg.output)
    return records, summarize(records)


def _ceil_cbrt(p: int) -> int:
    h = max(1, round(p ** (1 / 3)))
    while h**3 < p:
        h += 1
    while h > 1 and (h - 1) ** 3 >= p:
        h -= 1
    return h


def _moment_unit(unit) -> List[charsum.MomentReport]:
    p, seed, H, count, curve, r_values, eps = unit
    stream = Stream(seed, p, FAMILY_STREAM)
    J = count or charsum.default_family_size(p, H)
    J = min(J, (p - 1) // H + 1)
    rand_fam = charsum.SpacedFamily(p, H, tuple(charsum.random_spaced_points(p, H, J, stream.randint)))
    curve_fam = charsum.curve_value_family(ReducedCubic(p, *curve), H)
    out = []
    for r in r_values:
        out.append(charsum.moment_report(rand_fam, r, eps, family="random"))
        out.append(charsum.moment_report(curve_fam, r, eps, family="curve"))
    return out


def run_moment_scan(cfg: ScanConfig) -> List[charsum.MomentReport]:
    """Moment reports for a random spaced family and a curve-value family per prime.

    H defaults to ceil(p^(1/3)). Reports are sorted by (p, r, family).
    """
    cfg.validate()
    units = []
    for p in config_primes(cfg):
        H = cfg.moment_H or _ceil_cbrt(p)
        curve = config_curves(cfg, p)[0]
        units.append((p, cfg.seed, min(H, p), cfg.family_count, curve, list(cfg.r_values), cfg.epsilon))
    reports = [rep for batch in _run_units(_moment_unit, units, cfg.workers) for rep in batch]
    reports.sort(key=lambda m: (m.p, m.r, m.family))
    return reports


def fit_exponent(points: Sequence[Tuple[float, float]]) -> FitResult:
    """Least squares line through (ln p, ln H); the slope is the growth exponent."""
    pts = [(float(p), float(h)) for p, h in points]
    if len(pts) < 2:
        raise UsageError("fit needs at least two points")
    if any(h < 1 for _, h in pts) or any(p <= 0 for p, _ in pts):
        raise UsageError("fit needs p > 0 and H >= 1")
    lx = np.log([p for p, _ in pts])
    ly = np.log([h for _, h in pts])
    if np.ptp(lx) == 0:
        raise UsageError("fit is degenerate: all p values are equal")
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_tot = float(((ly - ly.mean()) ** 2).sum())
    ss_res = float((resid**2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return FitResult(float(slope), float(intercept), r2, len(pts))


def fit_summary(summary: Sequence[PrimeSummary]) -> Optional[FitResult]:
    if len({s.p for s in summary}) < 2:
        return None
    return fit_exponent([(s.p, s.h_worst) for s in summary])


def _format_for(path: str) -> str:
    return "json" if str(path).lower().endswith(".json") else "csv"


def _dump(rows: List[dict], header: Sequence[str], fmt: str, path: str) -> None:
    if fmt not in ("csv", "json"):
        raise UsageError(f"unknown record format {fmt!r}")
    try:
        with open(path, "w", newline="") as fh:
            if fmt == "csv":
                writer = csv.DictWriter(fh, fieldnames=list(header), lineterminator="\n")
                writer.writeheader()
                writer.writerows(rows)
            else:
                json.dump(rows, fh, indent=1)
                fh.write("\n")
    except OSError as exc:
        raise ScanIOError(f"cannot write records to {path}: {exc}") from exc


def write_records(records: Sequence[ScanRecord], fmt: str, path: str) -> None:
    _dump([r.as_dict() for r in records], RECORD_FIELDS, fmt, path)


def write_reports(reports: Sequence[charsum.MomentReport], fmt: str, path: str) -> None:
    header = ("p", "H", "r", "epsilon", "J", "family", "lhs_moment", "rhs_bound", "ratio")
    _dump([m.as_dict() for m in reports], header, fmt, path)


def read_records(path: str) -> List[ScanRecord]:
    try:
        with open(path, newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise ScanIOError(f"cannot read records from {path}: {exc}") from exc
    if text.lstrip().startswith("["):
        rows = json.loads(text)
    else:
        rows = list(csv.DictReader(text.splitlines()))
    names = [f.name for f in fields(ScanRecord)]
    try:
        return [ScanRecord(**{k: int(row[k]) for k in names}) for row in rows]
    except (KeyError, ValueError) as exc:
        raise UsageError(f"{path}: malformed record file ({exc})") from exc


def default_workers() -> int:
    env = os.environ.get("MODCUBIC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1

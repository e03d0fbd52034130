"""Reduced modular cubics y = a*x^3 + c*x (mod p) and two-points-in-a-box detection.

Two curve points (x, f(x)) and (x + u, f(x + u)) exist with f(x + u) - f(x) = v
exactly when (2x + u)^2 = R(u, v) is solvable, where

    R(u, v) = 4 v / (3 a u) - u^2 / 3 - 4 c / (3 a)   (mod p),

and the Legendre symbol of R factors as (-3/p)(a/p)(u/p)((a u^3 + 4 c u - 4 v)/p).
The number of such x is 1 + (R/p). The fast detector scans small offsets (u, v)
with this criterion; the brute detector compares coordinates directly.

Boxes are cyclic: B(X, Y; H) holds x in X+1..X+H and y in Y+1..Y+H (mod p).
Two points fit in some side-H box iff both cyclic coordinate gaps are <= H - 1.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .modarith import (
    DomainError,
    UsageError,
    check_modulus,
    inv_mod,
    legendre,
    legendre_table,
    sqrt_mod,
)


class CurvePoint(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class GeneralCubic:
    """y = a x^3 + b x^2 + c x + d (mod p) with a != 0."""

    p: int
    a: int
    b: int = 0
    c: int = 0
    d: int = 0

    def __post_init__(self):
        p = check_modulus(self.p)
        object.__setattr__(self, "p", p)
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, int(getattr(self, name)) % p)
        if self.a == 0:
            raise DomainError(f"leading coefficient a must be nonzero mod {p}")

    def eval(self, x: int) -> int:
        p = self.p
        x %= p
        return (((self.a * x + self.b) * x + self.c) * x + self.d) % p

    def values(self) -> np.ndarray:
        """y-values for x = 0..p-1 (requires p < 2^31)."""
        return np.array([self.eval(x) for x in range(self.p)], dtype=np.int64)


@dataclass(frozen=True)
class ReducedCubic:
    """The curve C_{a,c} = {(x, a x^3 + c x mod p)}."""

    p: int
    a: int
    c: int = 0

    def __post_init__(self):
        p = check_modulus(self.p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "a", int(self.a) % p)
        object.__setattr__(self, "c", int(self.c) % p)
        if self.a == 0:
            raise DomainError(f"leading coefficient a must be nonzero mod {p}")

    @cached_property
    def _prefactor(self) -> int:
        # (-3/p)(a/p), shared by every pair condition on this curve
        return legendre(-3, self.p) * legendre(self.a, self.p)

    @cached_property
    def _inverses(self) -> Tuple[int, int]:
        return inv_mod(3, self.p), inv_mod(self.a, self.p)


@dataclass(frozen=True)
class Translation:
    """(x, y) -> (x + dx, y - dy) maps a general cubic onto its reduced form."""

    dx: int
    dy: int

    def apply(self, point: Tuple[int, int], p: int) -> CurvePoint:
        x, y = point
        return CurvePoint((x + self.dx) % p, (y - self.dy) % p)


@dataclass(frozen=True)
class BoxWitness:
    """Two distinct curve points inside B(anchor_x, anchor_y; side).

    p1.x + u = p2.x and p1.y + v_signed = p2.y (mod p).
    """

    p1: CurvePoint
    p2: CurvePoint
    u: int
    v_signed: int
    anchor_x: int
    anchor_y: int
    side: int

    def problems(self, cur: ReducedCubic) -> List[str]:
        p, H = cur.p, self.side
        out = []
        if not 2 <= H <= p:
            out.append(f"side {H} outside [2, p]")
        if self.p1 == self.p2:
            out.append("points coincide")
        for pt in (self.p1, self.p2):
            if eval_at(cur, pt.x) != pt.y % p:
                out.append(f"{tuple(pt)} not on curve")
            if not (_in_window(pt.x, self.anchor_x, H, p) and _in_window(pt.y, self.anchor_y, H, p)):
                out.append(f"{tuple(pt)} outside box")
        if not 1 <= self.u <= H - 1 or (self.p1.x + self.u - self.p2.x) % p:
            out.append(f"bad x-offset u={self.u}")
        if abs(self.v_signed) > H - 1 or (self.p1.y + self.v_signed - self.p2.y) % p:
            out.append(f"bad y-offset v_signed={self.v_signed}")
        return out

    def is_valid(self, cur: ReducedCubic) -> bool:
        return not self.problems(cur)

    def check(self, cur: ReducedCubic) -> "BoxWitness":
        bad = self.problems(cur)
        if bad:
            raise ValueError("invalid witness: " + "; ".join(bad))
        return self


def _in_window(t: int, anchor: int, H: int, p: int) -> bool:
    return (t - anchor - 1) % p < H


def normalize(g: GeneralCubic) -> Tuple[ReducedCubic, Translation]:
    """Remove the quadratic and constant terms by shifting x and y.

    With dx = b / (3a): g(x - dx) = a x^3 + c' x + dy, c' = c - b^2 / (3a).
    """
    if not isinstance(g, GeneralCubic):
        raise DomainError("normalize expects a GeneralCubic")
    p, a, b, c, d = g.p, g.a, g.b, g.c, g.d
    inv3a = inv_mod(3 * a, p)
    dx = b * inv3a % p
    c_red = (c - b * b * inv3a) % p
    dy = (-a * pow(dx, 3, p) + b * dx * dx - c * dx + d) % p
    return ReducedCubic(p, a, c_red), Translation(dx, dy)


def eval_at(cur: ReducedCubic, x: int) -> int:
    p = cur.p
    x %= p
    return (cur.a * x * x % p * x + cur.c * x) % p


def all_points(cur: ReducedCubic) -> List[CurvePoint]:
    return [CurvePoint(x, eval_at(cur, x)) for x in range(cur.p)]


def curve_values(cur: ReducedCubic) -> np.ndarray:
    """f(x) for x = 0..p-1 as int64 (requires p < 2^31)."""
    p = cur.p
    if p >= 1 << 31:
        raise UsageError("curve_values requires p < 2^31")
    x = np.arange(p, dtype=np.int64)
    x3 = x * x % p * x % p
    return (cur.a * x3 % p + cur.c * x % p) % p


def _require_offset(u: int, p: int) -> int:
    u %= p
    if u == 0:
        raise DomainError("x-offset u must be nonzero mod p (two points cannot share x)")
    return u


def difference_rhs(cur: ReducedCubic, u: int, v: int) -> int:
    """R with (2x + u)^2 = R  <=>  f(x + u) - f(x) = v."""
    p = cur.p
    u = _require_offset(u, p)
    v %= p
    i3, ia = cur._inverses
    iu = inv_mod(u, p)
    term_v = 4 * i3 % p * v % p * ia % p * iu % p
    term_u = i3 * (u * u % p) % p
    term_c = 4 * i3 % p * ia % p * cur.c % p
    return (term_v - term_u - term_c) % p


def _cubic_factor(cur: ReducedCubic, u: int, v: int) -> int:
    p = cur.p
    return (cur.a * pow(u, 3, p) + 4 * cur.c * u - 4 * v) % p


def symbol_factors(cur: ReducedCubic, u: int, v: int) -> Tuple[int, int, int, int]:
    """The four symbols (-3/p), (a/p), (u/p), ((a u^3 + 4 c u - 4 v)/p)."""
    p = cur.p
    u = _require_offset(u, p)
    return (
        legendre(-3, p),
        legendre(cur.a, p),
        legendre(u, p),
        legendre(_cubic_factor(cur, u, v), p),
    )


def pair_condition(cur: ReducedCubic, u: int, v: int) -> int:
    """(-3/p)(a/p)(u/p)((a u^3 + 4cu - 4v)/p); equals legendre(difference_rhs(u, v))."""
    p = cur.p
    u = _require_offset(u, p)
    last = legendre(_cubic_factor(cur, u, v), p)
    if last == 0:
        return 0
    return cur._prefactor * legendre(u, p) * last


def reduced_parity_condition(cur: ReducedCubic, u_half: int, v_half: int) -> int:
    """Criterion for even offsets u = 2u', v = 2v', after dividing out the factor 8."""
    p = cur.p
    u_half = _require_offset(u_half, p)
    last = legendre(cur.a * pow(u_half, 3, p) + cur.c * u_half - v_half, p)
    if last == 0:
        return 0
    return cur._prefactor * legendre(u_half, p) * last


def count_x_solutions(cur: ReducedCubic, u: int, v: int) -> int:
    return 1 + pair_condition(cur, u, v)


def solve_pair(cur: ReducedCubic, u: int, v: int) -> List[int]:
    """All x with f(x + u) - f(x) = v, ascending: x = (r - u) / 2 for each root r of R."""
    p = cur.p
    u = _require_offset(u, p)
    roots = sqrt_mod(difference_rhs(cur, u, v), p)
    if roots is None:
        return []
    inv2 = (p + 1) // 2
    return sorted({(r - u) * inv2 % p for r in roots})


def _make_witness(cur: ReducedCubic, x1: int, u: int, w: int, H: int) -> BoxWitness:
    p = cur.p
    x2 = (x1 + u) % p
    y1, y2 = eval_at(cur, x1), eval_at(cur, x2)
    ystart = y1 if w >= 0 else y2
    return BoxWitness(
        p1=CurvePoint(x1, y1),
        p2=CurvePoint(x2, y2),
        u=u,
        v_signed=w,
        anchor_x=(x1 - 1) % p,
        anchor_y=(ystart - 1) % p,
        side=H,
    )


def _check_side(cur: ReducedCubic, H: int) -> int:
    H = int(H)
    if not 1 <= H <= cur.p:
        raise UsageError(f"box side H={H} must lie in [1, p={cur.p}]")
    return H


def detect_in_box(cur: ReducedCubic, H: int) -> Optional[BoxWitness]:
    """A witness that some side-H box holds two curve points, or None if none does.

    Offsets are scanned in order (u, |w|, +w before -w); the first offset that
    passes the pair criterion yields the witness with the smallest x.
    """
    H = _check_side(cur, H)
    p = cur.p
    for u in range(1, H):
        for m in range(H):
            for w in (m, -m) if m else (0,):
                if pair_condition(cur, u, w % p) >= 0:
                    x1 = solve_pair(cur, u, w % p)[0]
                    return _make_witness(cur, x1, u, w, H)
    return None


def _cyclic_gap(d: np.ndarray, p: int) -> np.ndarray:
    return np.minimum(d, p - d)


def brute_detect_values(p: int, ys: np.ndarray, H: int) -> Optional[Tuple[int, int, int]]:
    """Pair scan over points (x, ys[x]); returns (x1, u, w) for the first fitting pair."""
    x = np.arange(p)
    for u in range(1, H):
        d = (ys[(x + u) % p] - ys) % p
        hits = np.flatnonzero(_cyclic_gap(d, p) <= H - 1)
        if hits.size:
            x1 = int(hits[0])
            dd = int(d[x1])
            w = dd if dd <= H - 1 else dd - p
            return x1, u, w
    return None


def brute_detect_in_box(cur: ReducedCubic, H: int) -> Optional[BoxWitness]:
    """Same contract as detect_in_box, using only coordinate comparisons."""
    H = _check_side(cur, H)
    hit = brute_detect_values(cur.p, curve_values(cur), H)
    if hit is None:
        return None
    x1, u, w = hit
    return _make_witness(cur, x1, u, w, H)


def min_box_side(cur: ReducedCubic) -> Tuple[int, BoxWitness]:
    """Smallest H for which detect_in_box succeeds, with its witness.

    Doubles H from 2, then bisects; detection is monotone in H.
    """
    p = cur.p
    lo = 1  # detect(1) is always absent
    H = 2
    while True:
        wit = detect_in_box(cur, H)
        if wit is not None:
            break
        lo = H
        H = min(2 * H, p)
    hi, best = H, wit
    while hi - lo > 1:
        mid = (lo + hi) // 2
        wit = detect_in_box(cur, mid)
        if wit is None:
            lo = mid
        else:
            hi, best = mid, wit
    return hi, best


def brute_min_box_side_values(p: int, ys: Sequence[int]) -> int:
    """min over unordered point pairs of max(cyclic x-gap, cyclic y-gap) + 1."""
    ys = np.asarray(ys, dtype=np.int64) % p
    x = np.arange(p)
    best = p
    for u in range(1, p // 2 + 1):
        if u + 1 >= best:
            break
        gap = _cyclic_gap((ys[(x + u) % p] - ys) % p, p)
        best = min(best, max(u, int(gap.min())) + 1)
    return best


def brute_min_box_side(cur: ReducedCubic) -> int:
    return brute_min_box_side_values(cur.p, curve_values(cur))


# Whole-grid versions of the criterion for exhaustive checks; all arrays are
# indexed [u - 1, v] for u in 1..p-1 and v in 0..p-1. Require p < 2^31.


def _offset_arrays(p: int) -> Tuple[np.ndarray, np.ndarray]:
    if p >= 1 << 31:
        raise UsageError("grid computations require p < 2^31")
    u = np.arange(1, p, dtype=np.int64)[:, None]
    v = np.arange(p, dtype=np.int64)[None, :]
    return u, v


def pair_condition_grid(cur: ReducedCubic) -> np.ndarray:
    p = cur.p
    chi = legendre_table(p).astype(np.int64)
    u, v = _offset_arrays(p)
    u3 = u * u % p * u % p
    inner = (cur.a * u3 % p + 4 * cur.c % p * u % p - 4 * v % p) % p
    return chi[(-3) % p] * chi[cur.a] * chi[u] * chi[inner]


def difference_rhs_grid(cur: ReducedCubic) -> np.ndarray:
    p = cur.p
    i3, ia = cur._inverses
    u, v = _offset_arrays(p)
    iu = np.array([inv_mod(k, p) for k in range(1, p)], dtype=np.int64)[:, None]
    term_v = 4 * i3 % p * ia % p * v % p * iu % p
    term_u = i3 * (u * u % p) % p
    term_c = 4 * i3 % p * ia % p * cur.c % p
    return (term_v - term_u - term_c) % p


def reduced_parity_grid(cur: ReducedCubic) -> np.ndarray:
    p = cur.p
    chi = legendre_table(p).astype(np.int64)
    u, v = _offset_arrays(p)
    inner = (cur.a * (u * u % p * u % p) % p + cur.c * u % p - v) % p
    return chi[(-3) % p] * chi[cur.a] * chi[u] * chi[inner]


def brute_count_grid(cur: ReducedCubic) -> np.ndarray:
    """counts[u - 1, v] = #{x : f(x + u) - f(x) = v}, by direct evaluation."""
    p = cur.p
    ys = curve_values(cur)
    u, _ = _offset_arrays(p)
    x = np.arange(p, dtype=np.int64)[None, :]
    diff = (ys[(x + u) % p] - ys[None, :]) % p
    flat = (u - 1) * p + diff
    return np.bincount(flat.ravel(), minlength=(p - 1) * p).reshape(p - 1, p)

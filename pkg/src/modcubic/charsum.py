"""Character sums of the Legendre symbol: interval sums, spaced-family moments,
the moment bound H^(2r-2) p^(1/2 + 1/(2r) + eps), and a Hoelder check on the
double sum over u', v' <= H/2 attached to a reduced cubic.
"""

from dataclasses import dataclass
from typing import Iterable, List, Sequence

import numpy as np

from .cubic import ReducedCubic
from .modarith import UsageError, check_modulus, legendre, legendre_table

# Above this, symbols are evaluated one at a time instead of from a table.
TABLE_LIMIT = 10**7


def _chi(p: int):
    if p <= TABLE_LIMIT:
        table = legendre_table(p)
        return lambda n: int(table[n % p])
    return lambda n: legendre(n, p)


@dataclass(frozen=True)
class SpacedFamily:
    """Points 0 <= N_1 < ... < N_J < p with consecutive gaps >= H."""

    p: int
    H: int
    points: tuple

    def __post_init__(self):
        pts = tuple(int(n) for n in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise UsageError("a spaced family needs at least one point")
        if self.H < 1:
            raise UsageError("spacing H must be positive")
        if not all(0 <= n < self.p for n in pts):
            raise UsageError("family points must lie in [0, p)")
        for left, right in zip(pts, pts[1:]):
            if right - left < self.H:
                raise UsageError(f"points {left} and {right} are closer than H={self.H}")

    @property
    def J(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class MomentReport:
    p: int
    H: int
    r: int
    epsilon: float
    J: int
    lhs_moment: float
    rhs_bound: float
    family: str = "given"

    @property
    def ratio(self) -> float:
        return self.lhs_moment / self.rhs_bound

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "H": self.H,
            "r": self.r,
            "epsilon": self.epsilon,
            "J": self.J,
            "family": self.family,
            "lhs_moment": self.lhs_moment,
            "rhs_bound": self.rhs_bound,
            "ratio": self.ratio,
        }


def interval_sum(p: int, N: int, h: int) -> int:
    """S(N; h) = sum of (n/p) over N < n <= N + h."""
    if h < 0:
        raise UsageError("interval length must be nonnegative")
    if p <= TABLE_LIMIT:
        chi = legendre_table(p)
        idx = np.arange(N + 1, N + h + 1, dtype=np.int64) % p
        return int(chi[idx].sum(dtype=np.int64))
    return sum(legendre(n, p) for n in range(N + 1, N + h + 1))


def max_partial(p: int, N: int, H: int) -> int:
    """max over 1 <= h <= H of |S(N; h)|."""
    chi = _chi(p)
    best = run = 0
    for n in range(N + 1, N + H + 1):
        run += chi(n)
        best = max(best, abs(run))
    return best


def moment(fam: SpacedFamily, r: int) -> float:
    """sum_j max_{h <= H} |S(N_j; h)|^(2r); summed exactly, returned as float."""
    if r < 1:
        raise UsageError("moment order r must be a positive integer")
    return float(sum(max_partial(fam.p, n, fam.H) ** (2 * r) for n in fam.points))


def shao_bound(p: int, H: int, r: int, epsilon: float = 0.0) -> float:
    """H^(2r-2) * p^(1/2 + 1/(2r) + epsilon), implied constant 1."""
    return float(H) ** (2 * r - 2) * float(p) ** (0.5 + 1.0 / (2 * r) + epsilon)


def moment_report(fam: SpacedFamily, r: int, epsilon: float = 0.1, family: str = "given") -> MomentReport:
    return MomentReport(
        p=fam.p,
        H=fam.H,
        r=r,
        epsilon=epsilon,
        J=fam.J,
        lhs_moment=moment(fam, r),
        rhs_bound=shao_bound(fam.p, fam.H, r, epsilon),
        family=family,
    )


def greedy_spaced_family(p: int, values: Iterable[int], H: int) -> SpacedFamily:
    """Keep the smallest value, then each later value at least H past the last kept."""
    pts = sorted({int(v) % p for v in values})
    if not pts:
        raise UsageError("greedy_spaced_family needs at least one value")
    kept = [pts[0]]
    for n in pts[1:]:
        if n - kept[-1] >= H:
            kept.append(n)
    return SpacedFamily(p, H, tuple(kept))


def curve_value_family(cur: ReducedCubic, H: int, count: int = None) -> SpacedFamily:
    """Greedy family from {a u^3 + c u mod p : 1 <= u <= count}, count defaulting to H // 2."""
    if count is None:
        count = max(1, H // 2)
    p = cur.p
    values = [(cur.a * pow(u, 3, p) + cur.c * u) % p for u in range(1, count + 1)]
    return greedy_spaced_family(p, values, H)


def inner_sums(cur: ReducedCubic, H: int) -> List[int]:
    """T(u') = sum_{v' <= H/2} ((a u'^3 + c u' - v')/p) for u' = 1..H/2."""
    p = cur.p
    chi = _chi(p)
    M = H // 2
    out = []
    for u in range(1, M + 1):
        base = cur.a * pow(u, 3, p) + cur.c * u
        out.append(sum(chi(base - v) for v in range(1, M + 1)))
    return out


@dataclass(frozen=True)
class HolderCheck:
    """lhs = sum |T|, rhs = M^((2r-1)/(2r)) * (sum |T|^(2r))^(1/(2r)).

    `holds` compares lhs^(2r) <= M^(2r-1) * sum |T|^(2r) in exact integers,
    so equality cases are not lost to rounding.
    """

    lhs: float
    rhs: float
    r: int
    terms: int
    lhs_power: int
    rhs_power: int

    @property
    def holds(self) -> bool:
        return self.lhs_power <= self.rhs_power


def holder_chain_check(cur: ReducedCubic, H: int, r: int) -> HolderCheck:
    if H < 2:
        raise UsageError("Hoelder check needs H >= 2 (at least one term)")
    if r < 1:
        raise UsageError("r must be a positive integer")
    T = [abs(t) for t in inner_sums(cur, H)]
    M = len(T)
    k = 2 * r
    lhs_int = sum(T)
    power_sum = sum(t**k for t in T)
    rhs = M ** ((k - 1) / k) * power_sum ** (1.0 / k)
    return HolderCheck(
        lhs=float(lhs_int),
        rhs=rhs,
        r=r,
        terms=M,
        lhs_power=lhs_int**k,
        rhs_power=M ** (k - 1) * power_sum,
    )


def polya_vinogradov_max(p: int) -> int:
    """max |S(N; h)| over 0 <= N < p, 1 <= h <= p.

    Prefix sums P are p-periodic (a full period sums to 0), so every interval
    sum is P(j) - P(i) for some pair of indices; the answer is max P - min P.
    """
    check_modulus(p)
    prefix = np.cumsum(legendre_table(p), dtype=np.int64)
    return int(prefix.max() - prefix.min())


def polya_vinogradov_budget(p: int) -> float:
    return float(np.sqrt(p) * np.log(p))


def random_spaced_points(p: int, H: int, J: int, randint) -> List[int]:
    """J sorted points in [0, p) with gaps >= H, uniform over such configurations.

    Draws J distinct slots t_1 < ... < t_J from [0, p - 1 - (J-1)(H-1)] with
    Floyd's sampling, then spreads them: N_j = t_j + (j-1)(H-1).
    `randint(lo, hi)` must return an integer uniform on [lo, hi].
    """
    top = p - 1 - (J - 1) * (H - 1)
    if J < 1 or top < J - 1:
        raise UsageError(f"cannot fit {J} points spaced {H} apart below {p}")
    chosen = set()
    for j in range(top + 1 - J, top + 1):
        t = randint(0, j)
        chosen.add(j if t in chosen else t)
    return [t + i * (H - 1) for i, t in enumerate(sorted(chosen))]


def default_family_size(p: int, H: int) -> int:
    """Half the densest packing, p // (2H), at least 1."""
    return max(1, p // (2 * H))


def trend(reports: Sequence[MomentReport]) -> dict:
    """Largest ratio per (r, family), a compact summary for printing."""
    out = {}
    for rep in reports:
        key = f"r={rep.r} {rep.family}"
        out[key] = max(out.get(key, 0.0), rep.ratio)
    return out

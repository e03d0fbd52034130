"""Two points of a modular cubic y = a x^3 + c x (mod p) in a small box."""

from .modarith import (
    DomainError,
    UsageError,
    check_modulus,
    inv_mod,
    is_prime,
    legendre,
    next_prime,
    pow_mod,
    sqrt_mod,
)
from .cubic import (
    BoxWitness,
    CurvePoint,
    GeneralCubic,
    ReducedCubic,
    Translation,
    all_points,
    brute_detect_in_box,
    brute_min_box_side,
    count_x_solutions,
    detect_in_box,
    difference_rhs,
    eval_at,
    min_box_side,
    normalize,
    pair_condition,
    reduced_parity_condition,
    solve_pair,
)

__version__ = "0.1.0"

"""Exact binomial coefficients and the combinatorial identities behind the queue model.

Everything in this module is integer arithmetic: no floats, no rounding.
The symbols follow the queueing setup used throughout the package:

    l    order of the last probe vehicle in the queue
    m    number of probe vehicles in the queue
    t    queue-joining second of the last probe (from red start)
    red  red duration in whole seconds; the red phase holds 2*red
         half-second arrival slots
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator


def binom(n: int, k: int) -> int:
    """n-choose-k with compact support: 0 when k < 0 or k > n.

    Negative n is rejected; the identities below never need it at runtime.
    """
    if n < 0:
        raise ValueError(f"binom requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _check_weight_args(l: int, m: int, t: int, red: int) -> None:
    if min(l, m, t, red) < 0:
        raise ValueError("arguments must be nonnegative")
    if m > l:
        raise ValueError(f"need m <= l, got m={m}, l={l}")
    if t > red:
        raise ValueError(f"need t <= red, got t={t}, red={red}")
    if l > 2 * t:
        raise ValueError(f"need l <= 2t, got l={l}, t={t}")


def support_weight_sum(l: int, m: int, t: int, red: int) -> int:
    """Sum of the arrangement weights over the full queue support.

    Sums C(n-m, l-m) * C(2*red+m-n, 2t+m-l) for n from l to 2*red-2t+l.
    Equals binom(2*red+1, 2t+1) for every valid (l, m, t): the sum does
    not depend on l or m, which is what makes the queue PMF normalizable
    in closed form.
    """
    _check_weight_args(l, m, t, red)
    return sum(
        binom(n - m, l - m) * binom(2 * red + m - n, 2 * t + m - l)
        for n in range(l, 2 * red - 2 * t + l + 1)
    )


def vandermonde_chu(x: int, y: int, z: int) -> int:
    """Sum of C(x,k)*C(z,y-k) for k=0..y; equals binom(x+z, y)."""
    if min(x, y, z) < 0:
        raise ValueError("arguments must be nonnegative")
    return sum(binom(x, k) * binom(z, y - k) for k in range(y + 1))


def truncated_weight_sum(l: int, m: int, t: int, red: int) -> int:
    """Arrangement-weight sum truncated at n = 2*red-2t instead of the full support.

    No closed form exists for this sum; it satisfies the first-difference
    relation checked by :func:`truncated_sum_recurrence_holds`.
    """
    _check_weight_args(l, m, t, red)
    if l > 2 * red - 2 * t:
        raise ValueError(f"need l <= 2*red-2t, got l={l}, red={red}, t={t}")
    return sum(
        binom(n - m, l - m) * binom(2 * red + m - n, 2 * t + m - l)
        for n in range(l, 2 * red - 2 * t + 1)
    )


def truncated_sum_recurrence_holds(l: int, m: int, t: int, red: int) -> bool:
    """Check the exact first-difference relation of the truncated sum.

    True iff  f(l+1) - f(l) == -C(2*red-2t-m+1, l-m+1) * C(2t+m, l)
    where f is :func:`truncated_weight_sum`. Both l and l+1 must be in
    the truncated sum's domain.
    """
    step = truncated_weight_sum(l + 1, m, t, red) - truncated_weight_sum(l, m, t, red)
    expected = -binom(2 * red - 2 * t - m + 1, l - m + 1) * binom(2 * t + m, l)
    return step == expected


def order_sweep_sum(m: int, t: int, red: int) -> int:
    """Sum of the recurrence step magnitudes over all last-probe orders.

    Sums C(2*red-2t-m+1, l-m+1) * C(2t+m, l) for l = 0..2*red-2t; equals
    binom(2*red+1, 2t+1), the same normalizer as the full-support sum.
    """
    if min(m, t, red) < 0:
        raise ValueError("arguments must be nonnegative")
    if t > red:
        raise ValueError(f"need t <= red, got t={t}, red={red}")
    if m > 2 * red - 2 * t + 1:
        raise ValueError(f"need m <= 2*red-2t+1, got m={m}, red={red}, t={t}")
    return sum(
        binom(2 * red - 2 * t - m + 1, l - m + 1) * binom(2 * t + m, l)
        for l in range(2 * red - 2 * t + 1)
    )


def subset_partition_sum(l: int, t: int, upper: int) -> int:
    """Single-scale re-indexed form of the same identity.

    Sums C(m, l) * C(upper-m, t-l) for m = l..upper-t+l; equals
    binom(upper+1, t+1). Counts the (t+1)-subsets of {0..upper}
    partitioned by the value of their rank-l element.
    """
    if min(l, t, upper) < 0:
        raise ValueError("arguments must be nonnegative")
    if not l <= t <= upper:
        raise ValueError(f"need l <= t <= upper, got l={l}, t={t}, upper={upper}")
    return sum(binom(m, l) * binom(upper - m, t - l) for m in range(l, upper - t + l + 1))


def identity_grid(r_max: int) -> Iterator[tuple[int, int, int, int]]:
    """All (l, m, t, red) tuples on which the weight-sum identities apply."""
    for red in range(r_max + 1):
        for t in range(red + 1):
            for l in range(2 * t + 1):
                for m in range(l + 1):
                    yield l, m, t, red


@dataclass
class IdentityCheck:
    """Outcome of one exhaustive identity verification."""

    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, describe: str) -> None:
        self.cases += 1
        if not ok and len(self.failures) < 10:
            self.failures.append(describe)


def _check_support_sum(r_max: int) -> IdentityCheck:
    check = IdentityCheck("full-support weight sum")
    for l, m, t, red in identity_grid(r_max):
        got = support_weight_sum(l, m, t, red)
        want = binom(2 * red + 1, 2 * t + 1)
        check.record(got == want, f"(l={l},m={m},t={t},red={red}): {got} != {want}")
    return check


def _check_vandermonde(r_max: int) -> IdentityCheck:
    check = IdentityCheck("vandermonde-chu")
    for x in range(r_max + 1):
        for z in range(r_max + 1):
            for y in range(2 * r_max + 1):
                got = vandermonde_chu(x, y, z)
                want = binom(x + z, y)
                check.record(got == want, f"(x={x},y={y},z={z}): {got} != {want}")
    return check


def _check_recurrence(r_max: int) -> IdentityCheck:
    check = IdentityCheck("truncated-sum recurrence")
    for l, m, t, red in identity_grid(r_max):
        if l + 1 > min(2 * t, 2 * red - 2 * t):
            continue
        ok = truncated_sum_recurrence_holds(l, m, t, red)
        check.record(ok, f"(l={l},m={m},t={t},red={red}): recurrence step mismatch")
    return check


def _check_order_sweep(r_max: int) -> IdentityCheck:
    check = IdentityCheck("order-sweep sum")
    for red in range(r_max + 1):
        for t in range(red + 1):
            for m in range(2 * red - 2 * t + 2):
                got = order_sweep_sum(m, t, red)
                want = binom(2 * red + 1, 2 * t + 1)
                check.record(got == want, f"(m={m},t={t},red={red}): {got} != {want}")
    return check


def _check_subset_partition(r_max: int) -> IdentityCheck:
    check = IdentityCheck("subset-partition sum")
    for upper in range(r_max + 1):
        for t in range(upper + 1):
            for l in range(t + 1):
                got = subset_partition_sum(l, t, upper)
                want = binom(upper + 1, t + 1)
                check.record(got == want, f"(l={l},t={t},upper={upper}): {got} != {want}")
    return check


def _check_pascal(n_max: int) -> IdentityCheck:
    check = IdentityCheck("pascal rule")
    for n in range(1, n_max + 1):
        for k in range(n + 1):
            got = binom(n, k)
            want = binom(n - 1, k - 1) + binom(n - 1, k)
            check.record(got == want, f"(n={n},k={k}): {got} != {want}")
    return check


# Default grid bounds; exhaustive verification finishes well under a minute.
DEFAULT_GRID_BOUNDS = {
    "support": 12,
    "vandermonde": 20,
    "recurrence": 8,
    "order_sweep": 10,
    "subset_partition": 20,
}


def verify_identities(r_max: int | None = None) -> list[IdentityCheck]:
    """Exhaustively verify every identity on its grid.

    With ``r_max`` given, all grids are capped at that bound; otherwise each
    identity uses its default bound from ``DEFAULT_GRID_BOUNDS``.
    """
    bounds = dict(DEFAULT_GRID_BOUNDS)
    if r_max is not None:
        if r_max < 0:
            raise ValueError("r_max must be nonnegative")
        bounds = {name: r_max for name in bounds}
    return [
        _check_support_sum(bounds["support"]),
        _check_vandermonde(bounds["vandermonde"]),
        _check_recurrence(bounds["recurrence"]),
        _check_order_sweep(bounds["order_sweep"]),
        _check_subset_partition(bounds["subset_partition"]),
        _check_pascal(2 * bounds["support"] + 1),
    ]

"""Conditional queue-length distributions, evaluated exactly as rationals.

The queue left at the end of a red phase, conditioned on what the probe
vehicles in it reveal, follows a negative hypergeometric law over the
half-second arrival slots. All PMFs here are computed as
:class:`fractions.Fraction` and converted to float only at the caller's
request, so normalization and moment checks can be asserted exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinat import binom


@dataclass(frozen=True)
class NhgParams:
    """Negative hypergeometric parameters.

    size       slot count S (draws available)
    successes  total successes K among the S slots
    failures   failure count r at which counting stops
    """

    size: int
    successes: int
    failures: int

    def __post_init__(self) -> None:
        if not 0 <= self.successes <= self.size:
            raise ValueError(f"need 0 <= successes <= size, got {self}")
        if not 1 <= self.failures <= self.size - self.successes + 1:
            raise ValueError(f"need 1 <= failures <= size-successes+1, got {self}")


@dataclass(frozen=True)
class QueueObservation:
    """Probe-vehicle evidence for one red phase.

    l    order of the last probe among the queued vehicles
    m    number of probes in the queue
    t    queue-joining second of the last probe, from red start
    red  red duration in whole seconds (2*red arrival slots)
    """

    l: int
    m: int
    t: int
    red: int

    def __post_init__(self) -> None:
        if min(self.l, self.m, self.t, self.red) < 0:
            raise ValueError(f"negative field in {self}")
        if self.m > self.l:
            raise ValueError(f"need m <= l: {self}")
        if self.t > self.red:
            raise ValueError(f"need t <= red: {self}")
        if self.m >= 1:
            if self.t < 1:
                raise ValueError(f"need t >= 1 when m >= 1: {self}")
            if self.l > 2 * self.t:
                raise ValueError(f"need l <= 2t when m >= 1: {self}")
        else:
            if self.l != 0 or self.t != 0:
                raise ValueError(f"m = 0 requires l = 0 and t = 0: {self}")


@dataclass(frozen=True)
class QueueObservationNoTime:
    """Probe evidence without the joining time; cmax is the maximum possible queue."""

    l: int
    m: int
    cmax: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError(f"negative probe count in {self}")
        if not self.m <= self.l <= self.cmax:
            raise ValueError(f"need m <= l <= cmax: {self}")


def nhg_pmf(k: int, p: NhgParams) -> Fraction:
    """P(k successes before the r-th failure); zero outside the support."""
    s, big_k, r = p.size, p.successes, p.failures
    first = binom(k + r - 1, k) if k >= 0 else 0
    # At k = K with r = S-K+1 the second factor is C(-1, 0), an empty
    # selection, which must count as 1 for the distribution to close.
    remaining = big_k - k
    if remaining == 0:
        second = 1
    elif remaining < 0:
        second = 0
    else:
        second = binom(s - r - k, remaining) if s - r - k >= 0 else 0
    return Fraction(first * second, binom(s, big_k))


def nhg_mean(p: NhgParams) -> Fraction:
    """Expected successes before the r-th failure: rK/(S-K+1)."""
    return Fraction(p.failures * p.successes, p.size - p.successes + 1)


def nhg_var(p: NhgParams) -> Fraction:
    """Variance rK(S+1)(S-K-r+1) / ((S-K+1)^2 (S-K+2))."""
    s, big_k, r = p.size, p.successes, p.failures
    num = r * big_k * (s + 1) * (s - big_k - r + 1)
    den = (s - big_k + 1) ** 2 * (s - big_k + 2)
    return Fraction(num, den)


def nhg_params_for(obs: QueueObservation) -> NhgParams:
    """The NHG parameters under which n - l counts the unseen tail arrivals."""
    return NhgParams(
        size=2 * obs.red + 1,
        successes=2 * obs.red - 2 * obs.t,
        failures=obs.l - obs.m + 1,
    )


def queue_support_time(obs: QueueObservation) -> range:
    """Possible total queues given the observation: l .. 2*red-2t+l."""
    return range(obs.l, 2 * obs.red - 2 * obs.t + obs.l + 1)


def queue_pmf_time(n: int, obs: QueueObservation) -> Fraction:
    """P(queue = n | l, m, t, red), exactly."""
    l, m, t, red = obs.l, obs.m, obs.t, obs.red
    if n < l or n > 2 * red - 2 * t + l:
        return Fraction(0)
    num = binom(n - m, l - m) * binom(2 * red + m - n, 2 * t + m - l)
    return Fraction(num, binom(2 * red + 1, 2 * t + 1))


def unnormalized_weight(n: int, obs: QueueObservation) -> Fraction:
    """Arrangement weight of queue size n before normalization.

    The weight is the fraction of placements of the n-m non-probe arrivals
    among the 2*red slots that put exactly l-m of them before the last
    probe's slot. Summed over the support it totals (2*red+1)/(2t+1),
    which is why :func:`queue_pmf_time` carries the extra normalizer.
    """
    l, m, t, red = obs.l, obs.m, obs.t, obs.red
    if n < l or n > 2 * red - 2 * t + l:
        return Fraction(0)
    num = binom(n - m, l - m) * binom(2 * red - (n - m), 2 * t - (l - m))
    return Fraction(num, binom(2 * red, 2 * t))


def queue_support_notime(obs: QueueObservationNoTime) -> range:
    """Possible total queues without time information: l .. cmax."""
    return range(obs.l, obs.cmax + 1)


def queue_pmf_notime(n: int, obs: QueueObservationNoTime) -> Fraction:
    """P(queue = n | l, m, cmax), exactly; normalizer (l+1)/(cmax+1)."""
    l, m, c = obs.l, obs.m, obs.cmax
    if n < l or n > c:
        return Fraction(0)
    num = binom(c - n + m, c - n) * binom(n - m, n - l)
    return Fraction(num * (l + 1), binom(c, l) * (c + 1))


def queue_pmf_time_vector(obs: QueueObservation) -> list[Fraction]:
    """Dense PMF over queue_support_time(obs)."""
    return [queue_pmf_time(n, obs) for n in queue_support_time(obs)]


def queue_pmf_notime_vector(obs: QueueObservationNoTime) -> list[Fraction]:
    """Dense PMF over queue_support_notime(obs)."""
    return [queue_pmf_notime(n, obs) for n in queue_support_notime(obs)]


def queue_mean_time(obs: QueueObservation) -> Fraction:
    """Exact conditional mean: l + (l-m+1)(red-t)/(t+1)."""
    return obs.l + Fraction((obs.l - obs.m + 1) * (obs.red - obs.t), obs.t + 1)


def queue_var_time(obs: QueueObservation) -> Fraction:
    """Exact conditional variance of the queue given (l, m, t, red)."""
    l, m, t, red = obs.l, obs.m, obs.t, obs.red
    r1 = l - m + 1
    lead = Fraction(r1 * (2 * red + 2) * (2 * red - 2 * t), (2 * t + 2) * (2 * t + 3))
    return lead * (1 - Fraction(r1, 2 * t + 2))


def queue_mean_notime(obs: QueueObservationNoTime) -> Fraction:
    """Exact conditional mean without time: l + (l-m+1)(cmax-l)/(l+2)."""
    return obs.l + Fraction((obs.l - obs.m + 1) * (obs.cmax - obs.l), obs.l + 2)


def queue_var_notime(obs: QueueObservationNoTime) -> Fraction:
    """Exact conditional variance of the queue given (l, m, cmax)."""
    l, m, c = obs.l, obs.m, obs.cmax
    r1 = l - m + 1
    lead = Fraction(r1 * (c + 2) * (c - l), (l + 2) * (l + 3))
    return lead * (1 - Fraction(r1, l + 2))


def observation_grid(red_max: int):
    """All valid QueueObservations with red <= red_max (m = 0 included)."""
    for red in range(red_max + 1):
        yield QueueObservation(0, 0, 0, red)
        for t in range(1, red + 1):
            for l in range(1, 2 * t + 1):
                for m in range(1, l + 1):
                    yield QueueObservation(l, m, t, red)


def observation_grid_notime(cmax_max: int):
    """All valid QueueObservationNoTime with cmax <= cmax_max."""
    for cmax in range(cmax_max + 1):
        for l in range(cmax + 1):
            for m in range(l + 1):
                yield QueueObservationNoTime(l, m, cmax)

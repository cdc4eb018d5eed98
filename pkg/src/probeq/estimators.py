"""The six queue-length estimators compared by the evaluation harness.

Two combinatorial estimators (NP1 with probe time, NP2 without), two
parametric estimators with history fallback for probe-free cycles (EST1,
EST2), and two capacity-manual baselines (HCM_DELAY via Little's law,
Q_BACK back-of-queue).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .distributions import (
    QueueObservation,
    QueueObservationNoTime,
)

ESTIMATOR_IDS = ("NP1", "NP2", "EST1", "EST2", "HCM_DELAY", "Q_BACK")


class EstimationError(ValueError):
    """An estimator was invoked outside its domain."""


class HistoryRequiredError(EstimationError):
    """A probe-free cycle needs history means, but none are recorded yet."""


class OversaturationError(EstimationError):
    """Arrival rate at or above saturation flow: queue service never completes."""


@dataclass(frozen=True)
class Estimate:
    """One estimator's output for a cycle.

    variance is None for the baselines that define none.
    """

    mean: float
    variance: float | None
    estimator_id: str

    def __post_init__(self) -> None:
        if self.estimator_id not in ESTIMATOR_IDS:
            raise ValueError(f"unknown estimator_id {self.estimator_id!r}")
        if self.mean < 0:
            raise ValueError(f"negative mean in {self}")
        if self.variance is not None and self.variance < -1e-12:
            raise ValueError(f"negative variance in {self}")


@dataclass(frozen=True)
class SignalCycle:
    """Cycle timing in seconds; red defaults to half the cycle."""

    cycle_s: float
    red_s: float | None = None
    green_s: float | None = None

    def __post_init__(self) -> None:
        if self.cycle_s <= 0:
            raise ValueError("cycle length must be positive")
        red, green = self.red_s, self.green_s
        if red is None and green is None:
            red = self.cycle_s / 2.0
            green = self.cycle_s - red
        elif red is None:
            red = self.cycle_s - green
        elif green is None:
            green = self.cycle_s - red
        object.__setattr__(self, "red_s", float(red))
        object.__setattr__(self, "green_s", float(green))
        if self.red_s < 0 or self.green_s < 0:
            raise ValueError(f"negative phase in {self}")
        if not math.isclose(self.red_s + self.green_s, self.cycle_s, rel_tol=1e-9):
            raise ValueError(f"red + green must equal cycle: {self}")


@dataclass(frozen=True)
class HcmConfig:
    """Capacity-manual constants; defaults match the field setup the
    harness replicates (progression factor 1, incremental factor 0.5,
    no upstream filtering, 1029 veh/h capacity, 0.286 veh/s saturation).

    analysis_hours = None means the per-cycle period cycle_s/3600.
    """

    pf: float = 1.0
    k_inc: float = 0.5
    upstream_i: float = 1.0
    capacity_vph: float = 1029.0
    sat_flow_vps: float = 0.286
    analysis_hours: float | None = None

    def __post_init__(self) -> None:
        for name in ("pf", "k_inc", "upstream_i", "capacity_vph", "sat_flow_vps"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.analysis_hours is not None and self.analysis_hours <= 0:
            raise ValueError("analysis_hours must be positive")


class ProbeHistory:
    """Running means of (l, m, t) over the probe-carrying cycles seen so far.

    Only cycles with at least one probe are recorded; the means are
    undefined (has_samples False) until the first such cycle.
    """

    def __init__(self) -> None:
        self._sum_l = 0.0
        self._sum_m = 0.0
        self._sum_t = 0.0
        self.count = 0

    def update(self, l: float, m: float, t: float) -> None:
        if m < 1:
            raise ValueError("history records probe-carrying cycles only (m >= 1)")
        self._sum_l += l
        self._sum_m += m
        self._sum_t += t
        self.count += 1

    @property
    def has_samples(self) -> bool:
        return self.count > 0

    def _require(self) -> None:
        if not self.count:
            raise HistoryRequiredError("no probe-carrying cycles recorded yet")

    @property
    def mean_l(self) -> float:
        self._require()
        return self._sum_l / self.count

    @property
    def mean_m(self) -> float:
        self._require()
        return self._sum_m / self.count

    @property
    def mean_t(self) -> float:
        self._require()
        return self._sum_t / self.count


@dataclass(frozen=True)
class RateEstimates:
    """Primary-parameter estimates recovered from one observation.

    lambda1 = l/red              arrival rate from probe order
    lambda2 = (l-m)/t + m/red    arrival rate splitting probes and others
    p1 = m/l                     penetration from counts
    p2 = m*t/(m*t + (l-m)*red)   penetration weighting by time
    """

    lambda1: float
    lambda2: float
    p1: float
    p2: float


def rate_estimates(obs: QueueObservation) -> RateEstimates:
    """Rates and penetrations from a probe-carrying observation.

    Undefined for m = 0; callers fall back to history means.
    """
    if obs.m == 0:
        raise EstimationError("rate estimates undefined for m = 0; use history")
    l, m, t, red = obs.l, obs.m, obs.t, obs.red
    return RateEstimates(
        lambda1=l / red,
        lambda2=(l - m) / t + m / red,
        p1=m / l,
        p2=(m * t) / (m * t + (l - m) * red),
    )


def np_est1(obs: QueueObservation) -> Estimate:
    """Combinatorial estimator using probe order, count and joining time.

    mean = l + (l-m+1)(red-t)/(t+1); the matching conditional variance is
    exact under the slot arrangement model. Denominators are positive for
    every valid observation, so probe-free cycles fall back to the
    no-information prior (mean = red) rather than erroring.
    """
    l, m, t, red = obs.l, obs.m, obs.t, obs.red
    r1 = l - m + 1
    mean = l + r1 * (red - t) / (t + 1)
    variance = (
        r1 * (2 * red + 2) * (2 * red - 2 * t)
        / ((2 * t + 2) * (2 * t + 3))
        * (1 - r1 / (2 * t + 2))
    )
    return Estimate(mean, variance, "NP1")


def np_est2(obs: QueueObservationNoTime) -> Estimate:
    """Combinatorial estimator without probe time: mean = l + (l-m+1)(cmax-l)/(l+2)."""
    l, m, c = obs.l, obs.m, obs.cmax
    r1 = l - m + 1
    mean = l + r1 * (c - l) / (l + 2)
    variance = (
        r1 * (c + 2) * (c - l) / ((l + 2) * (l + 3)) * (1 - r1 / (l + 2))
    )
    return Estimate(mean, variance, "NP2")


def param_est1(obs: QueueObservation, hist: ProbeHistory) -> Estimate:
    """Parametric estimator 1: l + (l-m)(1 - t/red) when probes are present.

    Probe-free cycles use the recorded history means; raises
    HistoryRequiredError when there are none.
    """
    if obs.m > 0:
        mean = obs.l + (obs.l - obs.m) * (1 - obs.t / obs.red)
    else:
        lb, mb, tb = hist.mean_l, hist.mean_m, hist.mean_t
        mean = (1 - mb / lb) * (lb + (lb - mb) * (1 - tb / obs.red))
    return Estimate(max(mean, 0.0), None, "EST1")


def param_est2(obs: QueueObservation, hist: ProbeHistory) -> Estimate:
    """Parametric estimator 2: m + (l-m)*red/t, history means when m = 0."""
    if obs.m > 0:
        mean = obs.m + (obs.l - obs.m) * obs.red / obs.t
    else:
        lb, mb, tb = hist.mean_l, hist.mean_m, hist.mean_t
        mean = mb + (lb - mb) * obs.red / tb
    return Estimate(max(mean, 0.0), None, "EST2")


def hcm_control_delay(
    cycle: SignalCycle, arrival_rate: float, cfg: HcmConfig = HcmConfig()
) -> tuple[float, float]:
    """Uniform and incremental control delay (seconds per vehicle).

    d1 = (C/2) (1 - G/C)^2 / (1 - min(1, X) G/C) with X = rate/saturation;
    d2 = 900 T [(X-1) + sqrt((X-1)^2 + 8 k I X / (c T))]. The uniform term
    clamps X at 1; the incremental term uses the raw X. The initial-queue
    term is taken as zero (no overflow queues).
    """
    if arrival_rate < 0:
        raise EstimationError("arrival rate must be nonnegative")
    c_s, g_s = cycle.cycle_s, cycle.green_s
    x_hat = arrival_rate / cfg.sat_flow_vps
    g_ratio = g_s / c_s
    denom = 1.0 - min(1.0, x_hat) * g_ratio
    if denom <= 0:
        raise EstimationError(
            f"uniform-delay denominator vanished (X={x_hat:.3f}, G/C={g_ratio:.3f})"
        )
    d1 = (c_s / 2.0) * (1.0 - g_ratio) ** 2 / denom
    t_hours = cfg.analysis_hours if cfg.analysis_hours is not None else c_s / 3600.0
    inc = 8.0 * cfg.k_inc * cfg.upstream_i * x_hat / (cfg.capacity_vph * t_hours)
    d2 = 900.0 * t_hours * ((x_hat - 1.0) + math.sqrt((x_hat - 1.0) ** 2 + inc))
    return d1, d2


def hcm_delay_queue(
    cycle: SignalCycle, arrival_rate: float, cfg: HcmConfig = HcmConfig()
) -> Estimate:
    """Queue from control delay via Little's law: (d1*PF + d2) * rate."""
    d1, d2 = hcm_control_delay(cycle, arrival_rate, cfg)
    mean = (d1 * cfg.pf + d2) * arrival_rate
    return Estimate(max(mean, 0.0), None, "HCM_DELAY")


def q_back(arrival_rate: float, red_s: float, sat_flow_vps: float) -> Estimate:
    """Back of queue: rate * (red + service time), service = rate*red/(sat-rate)."""
    if arrival_rate < 0:
        raise EstimationError("arrival rate must be nonnegative")
    if arrival_rate >= sat_flow_vps:
        raise OversaturationError(
            f"arrival rate {arrival_rate:.4f} >= saturation flow {sat_flow_vps:.4f}"
        )
    service_s = arrival_rate * red_s / (sat_flow_vps - arrival_rate)
    return Estimate(arrival_rate * (red_s + service_s), None, "Q_BACK")

"""Transition-probability accumulation with batch means and ratio estimates.

Events are recorded into a fixed number of batches in arrival order;
probabilities are reported per product knot with Student-t confidence
intervals over the batch proportions. Unknown products are counted and
reported but excluded from the probability denominator.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from scipy import stats as _sstats


class TooFewBatches(Exception):
    pass


class ZeroDenominator(Exception):
    pass


@dataclass
class TransitionNetwork:
    substrate: str
    n_batches: int = 30
    planned_events: int | None = None                 # enables contiguous batching
    counts: dict = field(default_factory=dict)        # product name -> count
    unknown: int = 0
    attempted: int = 0                                # conformations examined
    usable: int = 0                                   # reconnection events
    batch_counts: list = field(default_factory=list)  # per batch: name -> count
    batch_events: list = field(default_factory=list)  # per batch: event count
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.batch_counts:
            self.batch_counts = [dict() for _ in range(self.n_batches)]
            self.batch_events = [0] * self.n_batches

    def record_attempt(self, usable: bool) -> None:
        self.attempted += 1
        if usable:
            self.usable += 1

    def record(self, product_name: str | None) -> None:
        """Record one identified reconnection event (None = Unknown)."""
        batch = self._current_batch()
        self.batch_events[batch] += 1
        if product_name is None:
            self.unknown += 1
        else:
            self.counts[product_name] = self.counts.get(product_name, 0) + 1
            b = self.batch_counts[batch]
            b[product_name] = b.get(product_name, 0) + 1

    def _current_batch(self) -> int:
        done = sum(self.batch_events)
        if self.planned_events:
            # contiguous blocks so batch means absorb autocorrelation
            return min(done * self.n_batches // self.planned_events,
                       self.n_batches - 1)
        return done % self.n_batches

    @property
    def total_identified(self) -> int:
        return sum(self.counts.values())

    def probability(self, product: str) -> float:
        denom = self.total_identified
        return self.counts.get(product, 0) / denom if denom else 0.0

    def product_ci(self, product: str, confidence: float = 0.95):
        nums = [b.get(product, 0) for b in self.batch_counts]
        dens = [e - 0 for e in self.batch_events]
        # exclude unknowns per batch from the denominator
        unk = [self.batch_events[i] - sum(self.batch_counts[i].values())
               for i in range(self.n_batches)]
        dens = [d - u for d, u in zip(dens, unk)]
        used = [(x, d) for x, d in zip(nums, dens) if d > 0]
        if len(used) < 2:
            return self.probability(product), float("inf")
        props = [x / d for x, d in used]
        return batch_mean_ci_from_props(props, confidence)


def batch_mean_ci_from_props(props: list[float], confidence: float = 0.95):
    b = len(props)
    if b < 2:
        raise TooFewBatches("need at least 2 batches")
    mean = sum(props) / b
    var = sum((p - mean) ** 2 for p in props) / (b - 1)
    tq = _sstats.t.ppf(0.5 + confidence / 2.0, b - 1)
    half = tq * math.sqrt(var / b)
    return mean, half


def batch_mean_ci(batches: list[tuple[int, int]], confidence: float = 0.95):
    """(estimate, half_width) from per-batch (successes, trials) pairs."""
    if len(batches) < 2:
        raise TooFewBatches("need at least 2 batches")
    props = [x / n for x, n in batches if n > 0]
    if len(props) < 2:
        raise TooFewBatches("need at least 2 nonempty batches")
    return batch_mean_ci_from_props(props, confidence)


def ratio_estimate(numerator_batches: list[int], denominator_batches: list[int],
                   confidence: float = 0.95):
    """Ratio of batch sums with delta-method (jackknife-free) variance.

    Standard survey-sampling ratio estimator: R = sum(x)/sum(y), with
    variance estimated from per-batch residuals x_i - R y_i.
    """
    if len(numerator_batches) != len(denominator_batches):
        raise ValueError("batch vectors must align")
    b = len(numerator_batches)
    if b < 2:
        raise TooFewBatches("need at least 2 batches")
    sx = float(sum(numerator_batches))
    sy = float(sum(denominator_batches))
    if sy == 0:
        raise ZeroDenominator("denominator batches sum to zero")
    r = sx / sy
    ybar = sy / b
    resid = [x - r * y for x, y in zip(numerator_batches, denominator_batches)]
    var_r = sum(e * e for e in resid) / (b - 1) / (b * ybar * ybar)
    tq = _sstats.t.ppf(0.5 + confidence / 2.0, b - 1)
    return r, tq * math.sqrt(var_r)


def export_csv(net: TransitionNetwork, confidence: float = 0.95) -> str:
    """Table-style CSV: knot, probability, number observed, CI, totals."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["knot", "probability", "number_observed", "ci_low", "ci_high",
                "total_events"])
    denom = net.total_identified
    for name in sorted(net.counts, key=lambda n: (-net.counts[n], n)):
        p = net.counts[name] / denom if denom else 0.0
        est, half = net.product_ci(name, confidence)
        w.writerow([name, f"{p:.9g}", net.counts[name],
                    f"{max(0.0, est - half):.6g}", f"{est + half:.6g}", denom])
    if net.unknown:
        w.writerow(["UNKNOWN", "", net.unknown, "", "", denom])
    return buf.getvalue()


def export_json(net: TransitionNetwork, confidence: float = 0.95) -> str:
    payload = {
        "substrate": net.substrate,
        "attempted": net.attempted,
        "usable_events": net.usable,
        "identified": net.total_identified,
        "unknown": net.unknown,
        "n_batches": net.n_batches,
        "confidence": confidence,
        "counts": dict(sorted(net.counts.items())),
        "probabilities": {k: v / net.total_identified
                          for k, v in sorted(net.counts.items())} if net.total_identified else {},
        "metadata": net.metadata,
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def network_from_events(substrate: str, events: list[str | None],
                        n_batches: int = 30, metadata: dict | None = None) -> TransitionNetwork:
    """Build a network by replaying an event list (deterministic)."""
    net = TransitionNetwork(substrate=substrate, n_batches=n_batches,
                            planned_events=len(events), metadata=metadata or {})
    for name in events:
        net.record_attempt(usable=True)
        net.record(name)
    return net

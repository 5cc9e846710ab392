"""Monte Carlo estimation of tiling probabilities.

Tiles are kept available independently with probability p; each trial draws
one availability configuration and asks whether the unit square tiles. The
estimator is the success fraction with a 99% Wilson score interval.

Reproducibility is exact: trial t of seed s reads the counter-based stream
keyed (s, t), so results are independent of batching, thread count, and of
which other trials run. A sweep gives row r the trial range
[r*trials, (r+1)*trials) under one seed, keeping rows independent while any
single cell remains reproducible in isolation. Because a trial's stream is
shared across p, estimates under a common seed are exactly monotone in p.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import engine
from .tileability import AvailabilityConfig

# two-sided 99%: Phi^{-1}(0.995)
_Z99 = 2.5758293035489004


def parse_p(value) -> Fraction:
    """Accept Fractions, ints, floats, and strings like '7/8' or '0.856'."""
    if isinstance(value, float):
        p = Fraction(value).limit_denominator(10**12)
    else:
        p = Fraction(value)
    if not (0 <= p <= 1):
        raise ValueError("p must lie in [0, 1]")
    return p


def wilson_interval(successes: int, trials: int, z: float = _Z99) -> tuple[float, float]:
    if trials <= 0:
        raise ValueError("trials must be positive")
    if not (0 <= successes <= trials):
        raise ValueError("successes out of range")
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(
        phat * (1 - phat) / trials + z * z / (4 * trials * trials)
    )
    return max(0.0, center - half), min(1.0, center + half)


@dataclass(frozen=True)
class Estimate:
    n: int
    p: Fraction
    trials: int
    successes: int
    seed: int
    trial_offset: int = 0

    @property
    def estimate(self) -> float:
        return self.successes / self.trials

    @property
    def ci(self) -> tuple[float, float]:
        return wilson_interval(self.successes, self.trials)

    def row(self) -> dict:
        lo, hi = self.ci
        return {
            "n": self.n,
            "p": f"{self.p.numerator}/{self.p.denominator}",
            "trials": self.trials,
            "successes": self.successes,
            "estimate": f"{self.estimate:.9f}",
            "ci_lo": f"{lo:.9f}",
            "ci_hi": f"{hi:.9f}",
            "seed": self.seed,
        }


def sample_config(n: int, p, seed: int, trial: int = 0) -> AvailabilityConfig:
    """The availability configuration that trial `trial` of this seed sees."""
    p = parse_p(p)
    threshold = engine.bernoulli_threshold(p)
    bits = engine.sample_trial_bits(seed, trial, (n + 1) << n, threshold)
    return AvailabilityConfig(n, bits)


def estimate_tiling_probability(
    n: int,
    p,
    trials: int,
    seed: int = 0,
    threads: int = 1,
    trial_offset: int = 0,
) -> Estimate:
    """Monte Carlo estimate of the order-n tiling probability at p."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    if threads < 1:
        raise ValueError("threads must be positive")
    p = parse_p(p)
    threshold = engine.bernoulli_threshold(p)
    if threads == 1 or trials < 256:
        successes = engine.count_tileable_roots(n, threshold, seed, trials, trial_offset)
    else:
        # split the trial range; per-trial keying makes the split invisible
        per = -(-trials // threads)
        spans = [
            (trial_offset + w * per, min(per, trials - w * per))
            for w in range(threads)
            if trials - w * per > 0
        ]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(
                lambda span: engine.count_tileable_roots(
                    n, threshold, seed, span[1], span[0]
                ),
                spans,
            )
            successes = sum(parts)
    return Estimate(
        n=n,
        p=p,
        trials=trials,
        successes=successes,
        seed=seed,
        trial_offset=trial_offset,
    )


def sweep(
    orders: Sequence[int],
    ps: Sequence,
    trials: int,
    seed: int = 0,
    threads: int = 1,
) -> list[Estimate]:
    """One estimate per (n, p) pair, rows on disjoint trial ranges."""
    out = []
    for row, (n, p) in enumerate((n, p) for n in orders for p in ps):
        out.append(
            estimate_tiling_probability(
                n, p, trials, seed, threads, trial_offset=row * trials
            )
        )
    return out


_FIELDS = ["n", "p", "trials", "successes", "estimate", "ci_lo", "ci_hi", "seed"]


def to_csv(estimates: Iterable[Estimate]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=_FIELDS, lineterminator="\n")
    w.writeheader()
    for e in estimates:
        w.writerow(e.row())
    return buf.getvalue()


def to_json(estimates: Iterable[Estimate]) -> str:
    return json.dumps([e.row() for e in estimates], indent=2) + "\n"

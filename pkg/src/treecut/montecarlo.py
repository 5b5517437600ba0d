"""Monte Carlo verification: sampled frequencies against an exact law.

``run_trials`` tallies repeated partition draws; ``compare`` turns a tally
plus an exact probability map into a report with per-partition z-scores and a
Pearson chi-square over the full support.  Trials are split across
independent seed streams (see :func:`treecut.sampling.make_rng`), so a
parallel run with any worker count produces the same tally as a serial one,
and tallies from disjoint streams merge associatively.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from scipy.stats import chi2 as _chi2

from .errors import PreconditionError
from .graphs import Graph, Partition
from .probability import render_decimal, render_rational
from .sampling import make_rng, sample_connected_partition


def run_trials(
    g: Graph,
    k: int,
    samples: int,
    seed: int,
    mode: str = "uniform-tree",
    streams: int = 1,
) -> Counter:
    """Tally of canonical partitions over ``samples`` independent draws.

    The draws are split round-robin-free across ``streams`` generators
    (stream i gets the i-th near-equal share), so the result depends only on
    (graph, k, samples, seed, mode, streams), not on scheduling.
    """
    if samples < 1:
        raise PreconditionError("samples must be >= 1")
    if streams < 1:
        raise PreconditionError("streams must be >= 1")
    tally: Counter = Counter()
    base, extra = divmod(samples, streams)
    for stream in range(streams):
        count = base + (1 if stream < extra else 0)
        tally.update(run_stream(g, k, count, seed, stream, mode))
    return tally


def run_stream(
    g: Graph, k: int, count: int, seed: int, stream: int, mode: str = "uniform-tree"
) -> Counter:
    """Tally one seed stream; merging streams is plain Counter addition."""
    rng = make_rng(seed, stream)
    tally: Counter = Counter()
    for _ in range(count):
        tally[sample_connected_partition(g, k, rng, mode)] += 1
    return tally


def merge_tallies(*tallies: Counter) -> Counter:
    merged: Counter = Counter()
    for t in tallies:
        merged.update(t)
    return merged


@dataclass
class PartitionRow:
    partition: Partition
    expected: Fraction
    observed: int
    frequency: float
    z: float

    def to_json_dict(self, digits: int = 4) -> dict:
        return {
            "blocks": self.partition.to_json_dict()["blocks"],
            "expected_rational": render_rational(self.expected),
            "expected_float": float(self.expected),
            "expected_decimal": render_decimal(self.expected, digits),
            "observed": self.observed,
            "frequency": self.frequency,
            "z": self.z,
        }


@dataclass
class TrialReport:
    """Comparison of a sample tally against an exact distribution."""

    rows: list[PartitionRow]
    samples: int
    seed: int | None
    mode: str
    chi_square: float
    df: int
    p_value: float
    significance: float
    z_bound: float
    max_abs_z: float
    pooled_cells: int
    passed: bool
    reference: str = "closed-form"

    def to_json_dict(self, digits: int = 4) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "mode": self.mode,
            "reference": self.reference,
            "chi_square": self.chi_square,
            "df": self.df,
            "p_value": self.p_value,
            "significance": self.significance,
            "z_bound": self.z_bound,
            "max_abs_z": self.max_abs_z,
            "pooled_cells": self.pooled_cells,
            "passed": self.passed,
            "rows": [r.to_json_dict(digits) for r in self.rows],
        }


def compare(
    tally: Mapping[Partition, int],
    exact: Mapping[Partition, Fraction],
    samples: int,
    significance: float = 0.001,
    z_bound: float = 6.0,
    min_expected: float = 5.0,
    seed: int | None = None,
    mode: str = "uniform-tree",
    reference: str = "closed-form",
) -> TrialReport:
    """Build a TrialReport for a tally against an exact law.

    Any observed partition missing from ``exact`` is a hard failure: it would
    mean the sampler left the enumerated support.  Chi-square cells with
    expected count below ``min_expected`` are pooled (smallest first); the
    z-score gate also applies only to cells above that threshold, since the
    normal approximation is meaningless for near-empty cells, which the
    pooled chi-square already covers.
    """
    if samples < 1:
        raise PreconditionError("samples must be >= 1")
    total_prob = sum(exact.values(), Fraction(0))
    if total_prob != 1:
        raise PreconditionError(
            f"exact probabilities sum to {total_prob}, expected 1"
        )
    observed_total = sum(tally.values())
    if observed_total != samples:
        raise PreconditionError(
            f"tally holds {observed_total} observations, expected {samples}"
        )
    for part in tally:
        if part not in exact:
            raise PreconditionError(
                f"sampled partition {part!r} is outside the exact support"
            )

    rows: list[PartitionRow] = []
    max_abs_z = 0.0
    for part in sorted(exact):
        p = exact[part]
        obs = tally.get(part, 0)
        pf = float(p)
        mean = samples * pf
        var = samples * pf * (1.0 - pf)
        if var > 0.0:
            z = (obs - mean) / math.sqrt(var)
        else:
            z = 0.0 if obs == round(mean) else math.inf
        if mean >= min_expected and abs(z) > max_abs_z:
            max_abs_z = abs(z)
        rows.append(
            PartitionRow(part, p, obs, obs / samples, z)
        )

    # pool small-expectation cells, smallest first, for the chi-square
    cells = sorted(
        ((float(r.expected) * samples, float(r.observed)) for r in rows),
        key=lambda c: c[0],
    )
    pooled: list[tuple[float, float]] = []
    acc_e = acc_o = 0.0
    for e, o in cells:
        acc_e += e
        acc_o += o
        if acc_e >= min_expected:
            pooled.append((acc_e, acc_o))
            acc_e = acc_o = 0.0
    if acc_e > 0.0 or acc_o > 0.0:
        if pooled:
            e, o = pooled[-1]
            pooled[-1] = (e + acc_e, o + acc_o)
        else:
            pooled.append((acc_e, acc_o))

    df = len(pooled) - 1
    if df >= 1:
        chi_square = sum((o - e) ** 2 / e for e, o in pooled)
        p_value = float(_chi2.sf(chi_square, df))
    else:
        chi_square = 0.0
        p_value = 1.0
    passed = p_value >= significance and max_abs_z <= z_bound
    return TrialReport(
        rows=rows,
        samples=samples,
        seed=seed,
        mode=mode,
        chi_square=chi_square,
        df=df,
        p_value=p_value,
        significance=significance,
        z_bound=z_bound,
        max_abs_z=max_abs_z,
        pooled_cells=len(pooled),
        passed=passed,
        reference=reference,
    )

"""Seeded batch campaigns cross-checking the measures against each other.

Four families of checks run over freshly sampled random states:

* closed-form vs eigenvalue geometric discord (must agree to 1e-9),
* the ordering Q <= D_G (slack 1e-10),
* D_G >= N^2 on mixed two-qubit states (slack 1e-9),
* D_G = N^2 on pure two-qubit states (tolerance 1e-9).

Each campaign draws from its own child of the master seed, so reports
are reproducible and campaigns are insensitive to one another.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import bloch_decompose, random_density_matrix
from .io import dump_json, format_float
from .measures import geometric_discord_closed, geometric_discord_eig, negativity, \
    q_lower_bound, s_matrix

CLOSED_VS_EIG_TOL = 1e-9
ORDER_TOL = 1e-10
MIXED_BOUND_TOL = 1e-9
PURE_IDENTITY_TOL = 1e-9


@dataclass(frozen=True)
class CampaignResult:
    name: str
    samples: int
    violations: int
    worst: float
    tolerance: float

    def as_record(self) -> dict:
        return {
            "name": self.name,
            "samples": self.samples,
            "violations": self.violations,
            "worst": self.worst,
            "tolerance": self.tolerance,
        }


def _sampled_measures(rng: np.random.Generator, d: int, rank: int):
    rho = random_density_matrix(2 * d, rank=rank, seed=rng)
    s = s_matrix(bloch_decompose(rho, d), d)
    closed, _ = geometric_discord_closed(s)
    return rho, closed, geometric_discord_eig(s), q_lower_bound(s)


def run_batch_campaigns(n: int, seed: int, dims=(2, 3)) -> list[CampaignResult]:
    """Run every campaign with n samples each; deterministic in seed."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    dims = tuple(dims)
    children = iter(np.random.SeedSequence(seed).spawn(len(dims) + 2))
    results: list[CampaignResult] = []

    for d in dims:
        rng = np.random.default_rng(next(children))
        worst_gap = 0.0
        worst_order = -np.inf
        bad_gap = 0
        bad_order = 0
        for i in range(n):
            _, closed, eig, q = _sampled_measures(rng, d, rank=1 + i % (2 * d))
            gap = abs(closed - eig)
            worst_gap = max(worst_gap, gap)
            bad_gap += gap > CLOSED_VS_EIG_TOL
            order = q - closed
            worst_order = max(worst_order, order)
            bad_order += order > ORDER_TOL
        results.append(CampaignResult(
            name=f"closed_vs_eig[d={d}]", samples=n, violations=bad_gap,
            worst=worst_gap, tolerance=CLOSED_VS_EIG_TOL))
        results.append(CampaignResult(
            name=f"order_q_le_dg[d={d}]", samples=n, violations=bad_order,
            worst=worst_order, tolerance=ORDER_TOL))

    rng = np.random.default_rng(next(children))
    worst = -np.inf
    bad = 0
    for i in range(n):
        rho, closed, _, _ = _sampled_measures(rng, 2, rank=1 + i % 4)
        shortfall = negativity(rho) ** 2 - closed
        worst = max(worst, shortfall)
        bad += shortfall > MIXED_BOUND_TOL
    results.append(CampaignResult(
        name="mixed_dg_ge_nsq", samples=n, violations=bad,
        worst=worst, tolerance=MIXED_BOUND_TOL))

    rng = np.random.default_rng(next(children))
    worst = 0.0
    bad = 0
    for _ in range(n):
        rho, closed, _, _ = _sampled_measures(rng, 2, rank=1)
        gap = abs(closed - negativity(rho) ** 2)
        worst = max(worst, gap)
        bad += gap > PURE_IDENTITY_TOL
    results.append(CampaignResult(
        name="pure_dg_eq_nsq", samples=n, violations=bad,
        worst=worst, tolerance=PURE_IDENTITY_TOL))
    return results


def total_violations(results: list[CampaignResult]) -> int:
    return sum(r.violations for r in results)


def render_batch_report(results: list[CampaignResult], fmt: str = "text") -> str:
    if fmt == "json":
        return dump_json([r.as_record() for r in results]) + "\n"
    if fmt == "csv":
        lines = ["name,samples,violations,worst,tolerance"]
        lines += [
            f"{r.name},{r.samples},{r.violations},{format_float(r.worst)},"
            f"{format_float(r.tolerance)}"
            for r in results
        ]
        return "\n".join(lines) + "\n"
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = "ok" if r.violations == 0 else "VIOLATED"
        lines.append(
            f"{r.name:<{width}}  samples={r.samples}  violations={r.violations}  "
            f"worst={format_float(r.worst)}  tol={format_float(r.tolerance)}  [{status}]"
        )
    return "\n".join(lines) + "\n"

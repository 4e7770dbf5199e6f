"""Star-shaped graphs: analytic principal eigenvectors, the identity
rho_r(n_1..n_s) = r with r = index^2, and an inverse solver that finds the
index by one-dimensional bracketing instead of eigendecomposition.

The solver exploits the exact r = 4 trichotomy of the branch vector:
extended-Dynkin vectors short-circuit to r = 4 exactly; hyperbolic vectors
bracket r in [4, 2s] where r - rho_r(v) is increasing; Dynkin vectors
bracket in (r* + eps, 4] where r* is the largest pole of the summands.
Every solve is cross-checked against power iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Sequence

from .errors import BracketError, DomainError, InternalConsistencyError, PoleError
from .graphs import Graph, SpectralResult, index_and_principal, make_star
from .rho import (
    DYNKIN,
    EXTENDED_DYNKIN,
    canonical_branches,
    classify_branch_vector,
    rho_prefix,
    v_sequence,
)

__all__ = [
    "StarIndexReport",
    "analytic_star_eigenvector",
    "branch_vectors",
    "solve_star_index",
    "verify_star_theorem",
]


@dataclass(frozen=True)
class StarIndexReport:
    branches: tuple
    r: float
    index: float
    residual: float  # |rho_r(v) - r| at the reported r
    method: str  # "eigensolver", "bisection", or "exact" (r = 4 shortcut)
    cross_check_delta: float | None  # |r - index_power^2| when cross-checked


def analytic_star_eigenvector(branches: Sequence[int], r: float) -> tuple:
    """Principal-eigenvector candidate of the star on the given branches,
    assuming index^2 = r.

    With the recurrence w_0 = 0, w_1 = 1, w_{i+2} = sqrt(r) w_{i+1} - w_i,
    the center takes value 1 and position i of a branch of length n takes
    w_i / w_{n+1}; coordinates follow make_star's vertex order (branches
    first, center last).  A vanishing w_{n+1} is a pole of the
    parametrization and is reported as such.
    """
    v = canonical_branches(branches)
    if r <= 0:
        raise DomainError(f"r must be positive, got {r}")
    seq = v_sequence(float(r))
    values = []
    for n in v:
        w = seq.prefix(n + 1)
        if abs(w[n + 1]) < 1e-14 * max(1.0, abs(w[n])):
            raise PoleError(f"branch of length {n} hits a vanishing chain value at r={r}")
        values.extend(w[i] / w[n + 1] for i in range(1, n + 1))
    values.append(1.0)
    return tuple(values)


def _rho_sum_float(branches: tuple, r: float) -> float:
    values = rho_prefix(r, branches[-1], exact=False)
    total = 0.0
    for n in branches:
        val = values[n]
        if not isinstance(val, float):  # formal infinity; cannot happen off-pole
            return math.inf
        total += val
    return total


def verify_star_theorem(
    branches: Sequence[int],
    tol: float = 1e-8,
    spectral: SpectralResult | None = None,
) -> StarIndexReport:
    """Check rho_r(v) = r with r = (power-iteration index)^2.

    Raises InternalConsistencyError if the residual exceeds tol: the
    identity is exact mathematics, so a violation means broken numerics.
    """
    v = canonical_branches(branches)
    if spectral is None:
        spectral = index_and_principal(make_star(v))
    r = spectral.index ** 2
    residual = abs(_rho_sum_float(v, r) - r)
    if not residual <= tol:
        raise InternalConsistencyError(
            f"star identity residual {residual:.3e} exceeds {tol} for {v}"
        )
    return StarIndexReport(
        branches=v,
        r=r,
        index=spectral.index,
        residual=residual,
        method="eigensolver",
        cross_check_delta=None,
    )


def _largest_summand_pole(v: tuple) -> float:
    """max_i 4 cos^2(pi / (n_i + 1)): the largest pole of r -> rho_r(n_i)."""
    n = v[-1]
    c = math.cos(math.pi / (n + 1))
    return 4.0 * c * c


def solve_star_index(
    branches: Sequence[int],
    tol: float = 1e-12,
    spectral_tol: float = 1e-13,
    debug_checks: bool = False,
) -> StarIndexReport:
    """Find r with rho_r(v) = r by bisection, and the index sqrt(r).

    Always cross-checks against power iteration on the star and records the
    squared-index discrepancy.  With debug_checks=True the bracketed
    function is sampled at 100 points and monotonicity is asserted.
    """
    v = canonical_branches(branches)
    cls = classify_branch_vector(v)

    def f(r: float) -> float:
        return r - _rho_sum_float(v, r)

    if cls.tag == EXTENDED_DYNKIN:
        r = 4.0
        method = "exact"
    else:
        if cls.tag == DYNKIN:
            lo = max(_largest_summand_pole(v) + 1e-9, 1.0)
            hi = 4.0
        else:
            lo = 4.0
            hi = 2.0 * len(v)
        f_lo, f_hi = f(lo), f(hi)
        if f_lo == 0.0:
            r, method = lo, "bisection"
        elif f_hi == 0.0:
            r, method = hi, "bisection"
        elif f_lo > 0.0 or f_hi < 0.0:
            raise BracketError(
                f"no sign change on [{lo}, {hi}] for {v}: f={f_lo:.3e}..{f_hi:.3e}",
                f_lo=f_lo,
                f_hi=f_hi,
            )
        else:
            if debug_checks:
                samples = [f(lo + (hi - lo) * k / 99) for k in range(100)]
                for a, b in zip(samples, samples[1:]):
                    if not b >= a - 1e-12:
                        raise InternalConsistencyError(
                            f"bracketed function not monotone on [{lo}, {hi}] for {v}"
                        )
            for _ in range(200):
                if hi - lo <= tol:
                    break
                mid = 0.5 * (lo + hi)
                if f(mid) < 0.0:
                    lo = mid
                else:
                    hi = mid
            r = 0.5 * (lo + hi)
            method = "bisection"

    spectral = index_and_principal(make_star(v), tol=spectral_tol)
    delta = abs(r - spectral.index ** 2)
    return StarIndexReport(
        branches=v,
        r=r,
        index=math.sqrt(r),
        residual=abs(_rho_sum_float(v, r) - r),
        method=method,
        cross_check_delta=delta,
    )


def branch_vectors(s_max: int, entry_max: int) -> list:
    """All canonical branch vectors with 1 <= len <= s_max and entries in
    1..entry_max, in lexicographic order."""
    if s_max < 1 or entry_max < 1:
        raise DomainError("s_max and entry_max must be positive")
    out = []
    for s in range(1, s_max + 1):
        out.extend(combinations_with_replacement(range(1, entry_max + 1), s))
    return sorted(out)

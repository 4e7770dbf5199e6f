"""Admissible-parameter sets for sums of r projections, and the k-fold
Coxeter-functor action on the scalar parameter.

For r >= 4 the admissible set splits into two increasing discrete series
Lambda1 = {rho_r(2k)} (starting at 0) and Lambda2 = {rho_r(2k+1)} (starting
at 1), the continuous band [(r - sqrt(r^2-4r))/2, (r + sqrt(r^2-4r))/2],
and the reflections r - Lambda1, r - Lambda2 of the two series.  Both
series increase strictly toward the left band edge.

The parameter map Phi^{+k} is the Moebius transform

    Phi^{+k}(alpha) = (r - rho_r(2k-1) * alpha) / (r - rho_r(2k-1) - alpha)

and has an equivalent quotient form 1 + a_k / a_{k+1} in the companion
series seeded by a_1 = 1, a_2 = r - 1 - alpha.  The quotient reads one
index ahead of the seeds; that shift is pinned by the closed-form
agreement tests at k = 2..5 (see PHI_QUOTIENT_SHIFT).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PoleError
from .rho import is_rational, phi_sequence, rho, rho_prefix

__all__ = [
    "PHI_QUOTIENT_SHIFT",
    "SigmaDescription",
    "band_edges",
    "phi_plus",
    "phi_plus_recurrent",
    "sigma_description",
    "sigma_membership",
]

# The companion series a_1 = 1, a_2 = r - 1 - alpha satisfies the same
# recurrence as a_k = u_k + (1 - alpha) u_{k-1}; the quotient form of the
# parameter map needs the shifted read 1 + a_k / a_{k+1}.  Calibrated
# against the closed form (exact agreement for rational inputs).
PHI_QUOTIENT_SHIFT = 1

_FLOAT_POLE_TOL = 1e-12


def _check_r4(r) -> None:
    if isinstance(r, bool) or not isinstance(r, (int, float, Fraction)):
        raise DomainError(f"r must be a real number, got {r!r}")
    if r < 4:
        raise DomainError(f"defined for r >= 4, got {r}")


def band_edges(r) -> tuple:
    """Endpoints of the continuous band, as floats."""
    _check_r4(r)
    rf = float(r)
    d = math.sqrt(rf * rf - 4 * rf)
    return ((rf - d) / 2, (rf + d) / 2)


@dataclass(frozen=True)
class SigmaDescription:
    r: object
    lambda1: tuple  # rho_r(0), rho_r(2), ..., rho_r(2 k_max)
    lambda2: tuple  # rho_r(1), rho_r(3), ..., rho_r(2 k_max + 1)
    band: tuple
    reflected1: tuple  # r - lambda1, pointwise
    reflected2: tuple  # r - lambda2, pointwise


def sigma_description(r, k_max: int = 10) -> SigmaDescription:
    """Discrete series prefixes (0 <= k <= k_max), band, and reflections.

    The series values are exact Fractions whenever r is rational; the band
    endpoints are always floats (irrational for r > 4 in general).
    """
    _check_r4(r)
    if k_max < 0:
        raise DomainError("k_max must be >= 0")
    values = rho_prefix(r, 2 * k_max + 1)
    lambda1 = tuple(values[0 : 2 * k_max + 1 : 2])
    lambda2 = tuple(values[1 : 2 * k_max + 2 : 2])
    return SigmaDescription(
        r=r,
        lambda1=lambda1,
        lambda2=lambda2,
        band=band_edges(r),
        reflected1=tuple(r - x for x in lambda1),
        reflected2=tuple(r - x for x in lambda2),
    )


def sigma_membership(r, alpha, tol: float = 1e-9, k_cap: int = 10_000) -> list:
    """Which parts of the admissible set contain alpha, within tol.

    Returns a list of (part, k, value) triples where part is one of
    "lambda1", "lambda2", "r-lambda1", "r-lambda2" (k and value give the
    matching series member) or ("band", None, None).  Both discrete series
    increase strictly toward the left band edge, so each scan stops once the
    members pass the query or stop being distinguishable at tolerance tol.
    """
    _check_r4(r)
    a = float(alpha)
    rf = float(r)
    lo, hi = band_edges(r)
    hits = []

    def scan(target: float, parity: int, part: str, reflected: bool) -> None:
        prev = None
        for k in range(k_cap):
            val = float(rho(r, 2 * k + parity, exact=False))
            if abs(target - val) <= tol:
                hits.append((part, k, rf - val if reflected else val))
                return
            if val > target + tol or (prev is not None and val - prev <= tol / 16):
                return
            prev = val

    scan(a, 0, "lambda1", False)
    scan(a, 1, "lambda2", False)
    scan(rf - a, 0, "r-lambda1", True)
    scan(rf - a, 1, "r-lambda2", True)
    if lo - tol <= a <= hi + tol:
        hits.append(("band", None, None))
    return hits


def _rho_odd(r, k: int, exact: bool):
    """rho_r(2k - 1); finite for r >= 4."""
    return rho(r, 2 * k - 1, exact)


def phi_plus(r, alpha, k: int):
    """Closed form of the k-fold parameter map.

    Exact (Fraction) when both r and alpha are rational, float otherwise.
    A vanishing denominator is a PoleError, distinct from domain errors;
    in floating mode the pole test uses a 1e-12 window.
    """
    _check_r4(r)
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    exact = is_rational(r) and is_rational(alpha)
    if exact:
        p = _rho_odd(Fraction(r), k, True)
        denom = Fraction(r) - p - Fraction(alpha)
        if denom == 0:
            raise PoleError(f"Moebius pole: r - rho_r(2k-1) = alpha at k={k}")
        return (Fraction(r) - p * Fraction(alpha)) / denom
    rf, af = float(r), float(alpha)
    p = float(_rho_odd(rf, k, False))
    denom = rf - p - af
    if abs(denom) <= _FLOAT_POLE_TOL:
        raise PoleError(f"Moebius pole: r - rho_r(2k-1) = alpha at k={k}")
    return (rf - p * af) / denom


def phi_plus_recurrent(r, alpha, k: int):
    """Quotient form 1 + a_k / a_{k+1} of the same map (shifted read,
    see PHI_QUOTIENT_SHIFT).  Agrees with phi_plus exactly for rational
    inputs and to ~1e-12 relative in floats."""
    _check_r4(r)
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    seq = phi_sequence(r, alpha)
    num = seq.term(k - 1 + PHI_QUOTIENT_SHIFT)
    den = seq.term(k + PHI_QUOTIENT_SHIFT)
    if den == 0:
        raise PoleError(f"companion series vanishes at index {k + PHI_QUOTIENT_SHIFT}")
    return 1 + num / den

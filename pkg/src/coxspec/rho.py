"""Separating functions rho_r: exact and floating evaluation, companion
recurrences, the equation solver and the r = 4 classification.

rho_r is defined on nonnegative integers by rho_r(0) = 0 and

    rho_r(n+1) = r / (r - rho_r(n)),          r >= 1,

and extends to an unordered vector of positive integers by summation.
For 1 <= r < 4 the iteration can hit rho_r(n) = r; the next value is then
formally infinite and the one after that is 0, which makes the sequence
periodic.  Infinity is a dedicated singleton (`INFINITE`), never a float
sentinel, so the limit convention stays testable.

Two numeric paths exist side by side.  When r is an int or Fraction the
whole iteration stays in exact rational arithmetic, and equality tests
(pole detection, the equation solver) are exact.  Otherwise plain floats
are used and only *exact* float equality triggers the pole branch: callers
sitting near a pole get large finite values, by design, because snapping
with an epsilon would corrupt the exact searches built on top.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import CapacityError, DomainError

__all__ = [
    "INFINITE",
    "Infinite",
    "BranchClass",
    "RecurrenceSequence",
    "RhoSolveResult",
    "DYNKIN",
    "EXTENDED_DYNKIN",
    "HYPERBOLIC",
    "canonical_branches",
    "classify_branch_vector",
    "is_rational",
    "phi_sequence",
    "rho",
    "rho_closed_form",
    "rho_prefix",
    "rho_vector",
    "solve_rho_equation",
    "u_sequence",
    "v_sequence",
]

# Guard for exact-mode requests: rational terms grow exponentially with the
# index, so an absurd index is refused instead of grinding forever.
MAX_EXACT_INDEX = 1_000_000


class Infinite:
    """Formal infinity arising at poles of rho_r.  Singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"


INFINITE = Infinite()

Scalar = Union[int, Fraction, float]
ExtendedValue = Union[Fraction, float, Infinite]


def is_rational(x) -> bool:
    """True for ints and Fractions (bool excluded)."""
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _check_r(r) -> None:
    if isinstance(r, bool) or not isinstance(r, (int, float, Fraction)):
        raise DomainError(f"r must be a real number, got {r!r}")
    if isinstance(r, float) and not math.isfinite(r):
        raise DomainError(f"r must be finite, got {r}")
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")


def _check_n(n) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")


def _resolve_exact(r, exact) -> bool:
    if exact is None:
        return is_rational(r)
    if exact and not is_rational(r):
        raise DomainError("exact mode requires an int or Fraction value of r")
    return bool(exact)


def rho_prefix(r, n_max: int, exact=None) -> list:
    """The values rho_r(0), ..., rho_r(n_max) in one pass."""
    _check_r(r)
    _check_n(n_max)
    exact = _resolve_exact(r, exact)
    if exact:
        if n_max > MAX_EXACT_INDEX:
            raise CapacityError(f"exact evaluation capped at index {MAX_EXACT_INDEX}")
        rr = Fraction(r)
        value: ExtendedValue = Fraction(0)
    else:
        rr = float(r)
        value = 0.0
    out = [value]
    for _ in range(n_max):
        if value is INFINITE:
            value = Fraction(0) if exact else 0.0
        elif value == rr:
            value = INFINITE
        else:
            value = rr / (rr - value)
        out.append(value)
    return out


def rho(r, n: int, exact=None) -> ExtendedValue:
    """rho_r(n).

    exact=None picks exact rational arithmetic whenever r is an int or
    Fraction; exact=True insists on it; exact=False forces floats.
    Returns a Fraction, a float, or INFINITE at a pole.
    """
    return rho_prefix(r, n, exact)[n]


def rho_closed_form(r, n: int) -> float:
    """rho_r(n) via (lam+1)(lam^n - 1) / (lam^(n+1) - 1) for r > 4 strictly,
    with lam = (r - 2 + sqrt(r^2 - 4r)) / 2.

    Evaluated in the equivalent form (lam+1)(1 - lam^-n) / (lam - lam^-n),
    which cannot overflow: lam > 1, so lam^-n decays instead of lam^n
    blowing up.
    """
    _check_n(n)
    if isinstance(r, bool) or not isinstance(r, (int, float, Fraction)):
        raise DomainError(f"r must be a real number, got {r!r}")
    rf = float(r)
    if not rf > 4 or not math.isfinite(rf):
        raise DomainError("closed form needs finite r > 4 (lam degenerates at r = 4)")
    lam = (rf - 2 + math.sqrt(rf * rf - 4 * rf)) / 2
    decay = lam**-n
    return (lam + 1) * (1 - decay) / (lam - decay)


def canonical_branches(entries: Iterable[int]) -> tuple:
    """Canonical (nondecreasing) form of an unordered suit of positive integers."""
    v = tuple(entries)
    if not v:
        raise DomainError("branch vector must be nonempty")
    for x in v:
        if isinstance(x, bool) or not isinstance(x, int) or x < 1:
            raise DomainError(f"branch entries must be integers >= 1, got {x!r}")
    return tuple(sorted(v))


def rho_vector(r, branches: Sequence[int], exact=None) -> ExtendedValue:
    """Sum of rho_r over the entries; INFINITE if any summand is infinite."""
    v = canonical_branches(branches)
    values = rho_prefix(r, v[-1], exact)
    terms = [values[n] for n in v]
    if any(t is INFINITE for t in terms):
        return INFINITE
    return sum(terms)


# --------------------------------------------------------------------------
# Companion recurrences


class RecurrenceSequence:
    """Cached three-term recurrence; thread-safe growth, read-only terms.

    kind "u":    u0 = 0, u1 = 1,           u_{i+2} = (r-2) u_{i+1} - u_i
    kind "v":    v0 = 0, v1 = 1,           v_{i+2} = sqrt(r) v_{i+1} - v_i
    kind "phi":  a1 = 1, a2 = r - 1 - alpha, a_{i+2} = (r-2) a_{i+1} - a_i,
                 extended backwards to a0 = alpha - 1.

    "u" and "phi" stay exact when their parameters are rational; "v" always
    uses floats because of the square root.
    """

    def __init__(self, kind: str, r, alpha=None):
        if kind not in ("u", "v", "phi"):
            raise DomainError(f"unknown sequence kind {kind!r}")
        self.kind = kind
        self.r = r
        self.alpha = alpha
        if kind == "v":
            if isinstance(r, bool) or not isinstance(r, (int, float, Fraction)) or r < 0:
                raise DomainError(f"v-sequence needs r >= 0, got {r!r}")
            self._coeff = math.sqrt(float(r))
            self._terms = [0.0, 1.0]
        else:
            _check_r(r)
            if kind == "phi":
                if alpha is None:
                    raise DomainError("phi sequence requires alpha")
                exact = is_rational(r) and is_rational(alpha)
                if exact:
                    self._coeff = Fraction(r) - 2
                    self._terms = [Fraction(alpha) - 1, Fraction(1)]
                else:
                    self._coeff = float(r) - 2.0
                    self._terms = [float(alpha) - 1.0, 1.0]
            else:
                if is_rational(r):
                    self._coeff = Fraction(r) - 2
                    self._terms = [Fraction(0), Fraction(1)]
                else:
                    self._coeff = float(r) - 2.0
                    self._terms = [0.0, 1.0]
        self._lock = threading.Lock()

    def term(self, i: int):
        _check_n(i)
        if i > MAX_EXACT_INDEX:
            raise CapacityError(f"sequence index capped at {MAX_EXACT_INDEX}")
        if i >= len(self._terms):
            with self._lock:
                while len(self._terms) <= i:
                    self._terms.append(
                        self._coeff * self._terms[-1] - self._terms[-2]
                    )
        return self._terms[i]

    def prefix(self, n: int) -> list:
        self.term(n)
        return self._terms[: n + 1]


def u_sequence(r) -> RecurrenceSequence:
    return RecurrenceSequence("u", r)


def v_sequence(r) -> RecurrenceSequence:
    return RecurrenceSequence("v", r)


def phi_sequence(r, alpha) -> RecurrenceSequence:
    return RecurrenceSequence("phi", r, alpha)


# --------------------------------------------------------------------------
# Branch-vector classification at r = 4

DYNKIN = "dynkin"
EXTENDED_DYNKIN = "extended"
HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class BranchClass:
    tag: str
    rho4: Fraction


def classify_branch_vector(branches: Sequence[int]) -> BranchClass:
    """Exact trichotomy of rho_4(v) against 4.

    rho_4(n) = 2n/(n+1) has no poles, so the sum is always a Fraction.
    """
    v = canonical_branches(branches)
    total = rho_vector(4, v, exact=True)
    if total < 4:
        tag = DYNKIN
    elif total == 4:
        tag = EXTENDED_DYNKIN
    else:
        tag = HYPERBOLIC
    return BranchClass(tag=tag, rho4=total)


# --------------------------------------------------------------------------
# Exact solver for rho_r(v) = r


@dataclass(frozen=True)
class RhoSolveResult:
    r: Fraction
    solutions: tuple
    exhaustive: bool
    s_max: int
    n_max: int


def _below_series_limit(x: Fraction, r: Fraction) -> bool:
    """Exact test x < L, where L = (r - sqrt(r^2 - 4r)) / 2 is the smaller
    root of t^2 - r t + r = 0 and equals sup_n rho_r(n) for r >= 4."""
    if 2 * x > r:
        return False
    return x * x - r * x + r > 0


def solve_rho_equation(r, s_max: int | None = None, n_max: int = 50) -> RhoSolveResult:
    """All canonical vectors v with len(v) <= s_max, entries <= n_max and
    rho_r(v) = r, decided in exact rational arithmetic.

    The search is a depth-first walk over nondecreasing entries.  Since each
    summand is >= 1 and < L (the series limit), infeasible subtrees are cut
    exactly.  The result also reports whether the returned set is provably
    exhaustive over *all* vectors: at every node the solver checks whether a
    completion using entries beyond n_max could still hit the target, which
    requires the remaining value to fall in [c * rho_r(n_max + 1), c * L) for
    some remaining count c; if no node admits that window (and s_max covers
    the trivial length bound s <= floor(r)), truncation lost nothing.
    """
    if not is_rational(r):
        raise DomainError("solver requires exact rational r (int or Fraction)")
    rr = Fraction(r)
    if rr < 4:
        raise DomainError(f"solver defined for r >= 4, got {r}")
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    if s_max is None:
        s_max = int(rr) + 1
    if s_max < 1:
        raise DomainError("s_max must be >= 1")

    values = rho_prefix(rr, n_max + 1, exact=True)
    beyond = values[n_max + 1]

    solutions: list = []
    prefix: list = []
    exhaustive = s_max >= int(rr)  # every solution has length <= floor(r)

    def walk(min_entry: int, remaining: Fraction, depth: int) -> None:
        nonlocal exhaustive
        if remaining == 0:
            if depth > 0:
                solutions.append(tuple(prefix))
            return
        capacity = s_max - depth
        if exhaustive:
            for c in range(1, capacity + 1):
                if c * beyond <= remaining and _below_series_limit(remaining / c, rr):
                    exhaustive = False
                    break
        if capacity == 0:
            return
        # count-window feasibility: j summands with entries >= min_entry have
        # total in [j rho(min_entry), j L); prune unless some j can hit the
        # target (also rules out completions running past n_max)
        rho_min = values[min_entry]
        if not any(
            j * rho_min <= remaining and _below_series_limit(remaining / j, rr)
            for j in range(1, capacity + 1)
        ):
            return
        for n in range(min_entry, n_max + 1):
            val = values[n]
            if val > remaining:
                break
            prefix.append(n)
            walk(n, remaining - val, depth + 1)
            prefix.pop()

    walk(1, rr, 0)
    return RhoSolveResult(
        r=rr,
        solutions=tuple(sorted(solutions)),
        exhaustive=exhaustive,
        s_max=s_max,
        n_max=n_max,
    )

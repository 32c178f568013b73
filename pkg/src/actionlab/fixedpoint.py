"""Arithmetic for fixed-point data of finite-order diffeomorphisms.

Covers four desk-checkable ingredients: the rotation-weighted signature
sum over fixed surfaces, a sign-balance margin check for the zero
signature case, the search for an exponent making a family of roots of
unity stay away from the real axis, and the fixed-subspace dimension of
a product of two commuting block rotations of R^4.

Angles are exact rationals until the final sine evaluation.  Every
comparison against the threshold delta = sin(pi/k0) is done in exact
integer arithmetic (|sin(pi*u/v)| >= sin(pi/k0) iff min(u mod v,
v - u mod v) * k0 >= v), so no boundary case can be misclassified.
The remaining float work runs at 100 bits of precision in mpmath.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from itertools import product
from typing import NamedTuple

import mpmath as mp

from .errors import (
    DegenerateRotation,
    NoExponentFound,
    ParamOutOfRange,
    PreconditionViolated,
)

_PREC = 100


def _as_fraction(q) -> Fraction:
    if isinstance(q, float):
        raise ParamOutOfRange(f"rotation must be an exact rational, got float {q!r}")
    return Fraction(q)


@dataclass(frozen=True)
class FixedSurfaceDatum:
    """One fixed surface: normal rotation by angle 2*pi*rotation and its
    self-intersection number."""

    rotation: Fraction
    self_intersection: int

    def __post_init__(self):
        q = _as_fraction(self.rotation)
        if q.denominator == 1:
            raise DegenerateRotation(f"rotation {q} is a full turn")
        if not 0 < q < 1:
            raise ParamOutOfRange(f"rotation must lie in (0, 1), got {q}")
        object.__setattr__(self, "rotation", q)
        object.__setattr__(self, "self_intersection", int(self.self_intersection))


@dataclass(frozen=True)
class RotationBlockPair:
    """Rotation numbers on two orthogonal planes of R^4 (0 allowed)."""

    q1: Fraction
    q2: Fraction

    def __post_init__(self):
        for name in ("q1", "q2"):
            q = _as_fraction(getattr(self, name))
            if not 0 <= q < 1:
                raise ParamOutOfRange(f"{name} must lie in [0, 1), got {q}")
            object.__setattr__(self, name, q)


class GSignatureValue(NamedTuple):
    value: float
    error_bound: float


def g_signature_sum(data) -> GSignatureValue:
    """sum of self_intersection / sin(pi * rotation)^2 over the data.

    Empty data gives 0.  The error bound covers the 100-bit evaluation
    and the final rounding to a double.
    """
    data = list(data)
    if not data:
        return GSignatureValue(0.0, 0.0)
    with mp.workprec(_PREC):
        total = mp.mpf(0)
        total_abs = mp.mpf(0)
        for datum in data:
            q = _as_fraction(datum.rotation)
            if q.denominator == 1:
                raise DegenerateRotation(f"rotation {q} has vanishing sine")
            s = mp.sin(mp.pi * q.numerator / q.denominator)
            term = datum.self_intersection / (s * s)
            total += term
            total_abs += abs(term)
        err = total_abs * (4 * len(data) + 4) * mp.mpf(2) ** -_PREC
        err += abs(total) * mp.mpf(2) ** -52
        return GSignatureValue(float(total), float(err))


def signature_consistency(sigma: int, data, tol: float = 1e-9) -> bool:
    """Whether the rotation data reproduces the signature sigma.

    A nonzero signature with an empty fixed set is inconsistent on its
    own, before any evaluation.
    """
    if not tol > 0:
        raise ParamOutOfRange(f"tol must be positive, got {tol}")
    data = list(data)
    if sigma != 0 and not data:
        return False
    return abs(g_signature_sum(data).value - sigma) < tol


def roots_constants(n: int) -> tuple[float, int]:
    """(delta, k0) = (sin(pi / (4(n+1))), 4(n+1)) for n rotation classes."""
    if n < 1:
        raise ParamOutOfRange(f"n must be >= 1, got {n}")
    k0 = 4 * (n + 1)
    with mp.workprec(_PREC):
        delta = float(mp.sin(mp.pi / k0))
    return delta, k0


def _sine_meets_threshold(num: int, den: int, k0: int) -> bool:
    # |sin(pi * num/den)| >= sin(pi/k0), exactly
    u = num % den
    return min(u, den - u) * k0 >= den


def _exponent_table(k: int, k0: int) -> bytes:
    # table[m] = 1 iff |sin(2*pi*m/k)| >= sin(pi/k0)
    return bytes(
        1 if _sine_meets_threshold(2 * m, k, k0) else 0 for m in range(k)
    )


def find_good_exponent(k: int, exponents) -> int:
    """Least a in 1..k with |sin(2*pi*a*c/k)| >= delta for every c.

    delta is the constant for n = len(exponents).  An exponent always
    exists once k >= k0(n); a failed search below k0 is an expected
    out-of-range outcome, while a failure at k >= k0 would contradict
    the existence argument, so the raised error carries k and k0 for
    the caller to tell the two apart.
    """
    exponents = [int(c) for c in exponents]
    if k < 2:
        raise ParamOutOfRange(f"k must be >= 2, got {k}")
    if not exponents:
        raise ParamOutOfRange("need at least one exponent")
    for c in exponents:
        if gcd(c, k) != 1:
            raise ParamOutOfRange(f"exponent {c} is not coprime to {k}")
    n = len(exponents)
    k0 = 4 * (n + 1)
    good = _exponent_table(k, k0)
    for a in range(1, k + 1):
        if all(good[(a * c) % k] for c in exponents):
            return a
    err = NoExponentFound(f"no exponent for k={k} (threshold k0={k0}): {exponents}")
    err.k = k
    err.k0 = k0
    err.exponents = tuple(exponents)
    raise err


def exhaustive_roots_verify(n: int, kmax: int):
    """Check every k in [k0(n), kmax] and every n-tuple of units mod k.

    Tuples are scanned up to simultaneous negation.  Returns True, or
    the failing (k, tuple) pair.
    """
    if not 1 <= n <= 3:
        raise ParamOutOfRange(f"n must be in 1..3, got {n}")
    if kmax > 120:
        raise ParamOutOfRange(f"kmax must be <= 120, got {kmax}")
    k0 = 4 * (n + 1)
    for k in range(k0, kmax + 1):
        units = [c for c in range(1, k) if gcd(c, k) == 1]
        good = _exponent_table(k, k0)
        for tup in product(units, repeat=n):
            neg = tuple(k - c for c in tup)
            if neg < tup:
                continue
            if not any(
                all(good[(a * c) % k] for c in tup) for a in range(1, k + 1)
            ):
                return (k, tup)
    return True


@dataclass(frozen=True)
class SignBalanceReport:
    """Extremal self-intersections and their lambda margins."""

    n_bound: int
    lam: float
    mu_max: int
    mu_min: int
    upper_margin: float
    lower_margin: float
    weighted_sum: float


def sign_balance_check(data, n_bound: int, tol: float = 1e-9) -> SignBalanceReport:
    """Sign-balance margins for zero-signature rotation data.

    Preconditions: every |sin(pi*q_k)| >= delta(n_bound), at most
    n_bound surfaces of each sign, and the weighted sum is zero within
    tol.  Under these, with lam = delta(n_bound)^2 / n_bound, the
    extremes mu_max = max s_k and mu_min = min s_k satisfy
    mu_max >= -lam*mu_min >= 0 and mu_min <= -lam*mu_max <= 0; the
    report carries both margins (always nonnegative).
    """
    data = list(data)
    if not data:
        raise ParamOutOfRange("need at least one fixed surface")
    if n_bound < 1:
        raise ParamOutOfRange(f"n_bound must be >= 1, got {n_bound}")
    if not tol > 0:
        raise ParamOutOfRange(f"tol must be positive, got {tol}")
    k0 = 4 * (n_bound + 1)
    for datum in data:
        q = _as_fraction(datum.rotation)
        if not _sine_meets_threshold(q.numerator, q.denominator, k0):
            raise PreconditionViolated(
                f"rotation {q} has |sin| below the n={n_bound} threshold"
            )
    signs = [datum.self_intersection for datum in data]
    for side in (1, -1):
        if sum(1 for s in signs if side * s > 0) > n_bound:
            raise PreconditionViolated(
                f"more than {n_bound} surfaces with sign {side}"
            )
    with mp.workprec(_PREC):
        weighted = mp.mpf(0)
        for datum in data:
            q = datum.rotation
            s = mp.sin(mp.pi * q.numerator / q.denominator)
            weighted += datum.self_intersection / (s * s)
        if not abs(weighted) < tol:
            raise PreconditionViolated(
                f"weighted self-intersection sum {float(weighted)} is not 0"
            )
        delta = mp.sin(mp.pi / k0)
        lam = delta * delta / n_bound
        mu_max, mu_min = max(signs), min(signs)
        upper = mu_max + lam * mu_min
        lower = -lam * mu_max - mu_min
        assert upper >= 0 and lower >= 0
        return SignBalanceReport(
            n_bound,
            float(lam),
            mu_max,
            mu_min,
            float(upper),
            float(lower),
            float(weighted),
        )


def so4_product_fixed_dim(u: RotationBlockPair, v: RotationBlockPair) -> int:
    """dim Ker(UV - 1) for block rotations u, v on the same two planes.

    The product rotates plane i by q1_i + q2_i, which contributes 2 to
    the kernel exactly when that sum is an integer.
    """
    dim = 0
    for a, b in ((u.q1, v.q1), (u.q2, v.q2)):
        if (a + b).denominator == 1:
            dim += 2
    return dim

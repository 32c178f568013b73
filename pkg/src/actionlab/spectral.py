"""Cardinality ledgers for the second page of a fibration spectral sequence.

The base group is Gamma = (Z/p^r)^d acting with a fixed 4-manifold
cohomology profile as fiber: degrees 0, 1, 4 carry Z/p^r, degree 2
carries T + T, and degree 3 carries Z/p^r + T, where T is a torsion
group of order p^t with t < r.  Every quantity tracked here is a
log_p of a cardinality, so T may be modeled as Z/p^t or as (Z/p)^t
without changing any ledger entry; the alt_torsion flag switches the
model to let tests confirm that.

No differentials are computed.  The obstruction verdict only compares
the corner entry at (4, 0) against the total size of the entries that
could kill it, which is exactly a cardinality argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .abelian import (
    FgAbelian,
    GradedAbelian,
    Z,
    ZERO,
    cyclic_group,
    cyclic_integral_homology,
    direct_sum,
    elementary_cohomology_closed,
    ucf_cohomology,
)
from .errors import ParamOutOfRange, ProfileViolation, UnsupportedRank
from .intmat import is_prime


def _check_profile_params(p: int, r: int, t: int) -> None:
    if not is_prime(p):
        raise ParamOutOfRange(f"p must be prime, got {p}")
    if r < 1:
        raise ParamOutOfRange(f"r must be >= 1, got {r}")
    if t < 0:
        raise ParamOutOfRange(f"t must be >= 0, got {t}")


def _torsion_model(p: int, t: int, alt: bool) -> FgAbelian:
    if alt:
        return FgAbelian.from_orders([p] * t)
    return cyclic_group(p ** t)


@dataclass(frozen=True)
class XProfile:
    """Mod-p^r cohomology of the fiber, graded in degrees 0..4."""

    p: int
    r: int
    t: int
    graded: GradedAbelian

    def __post_init__(self):
        _check_profile_params(self.p, self.r, self.t)
        logs = [self.graded.degree(j).log_order(self.p) for j in range(5)]
        want = [self.r, self.r, 2 * self.t, self.r + self.t, self.r]
        if logs != want or self.graded.degree(5) != ZERO:
            raise ProfileViolation(f"graded sizes {logs} do not match {want}")

    @classmethod
    def build(cls, p: int, r: int, t: int, alt_torsion: bool = False) -> "XProfile":
        _check_profile_params(p, r, t)
        big = cyclic_group(p ** r)
        tor = _torsion_model(p, t, alt_torsion)
        graded = GradedAbelian(
            (big, big, direct_sum(tor, tor), direct_sum(big, tor), big)
        )
        return cls(p, r, t, graded)


@dataclass(frozen=True)
class E2Ledger:
    """entries[i][j] = log_p of the size of H^i(Gamma; H^j(fiber))."""

    p: int
    r: int
    t: int
    d: int
    entries: tuple[tuple[int, ...], ...]

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]


def _coeff_cohomology_log(i: int, d: int, p: int, r: int, coeff: FgAbelian) -> int:
    # distribute the coefficient module over its cyclic primary factors
    total = 0
    for q in coeff.primary_orders():
        e = 0
        while q % p == 0:
            q //= p
            e += 1
        if q != 1:
            raise ParamOutOfRange("coefficient module is not a p-group")
        total += elementary_cohomology_closed(i, d, p, r, e).log_order(p)
    return total


def e2_matrix(
    p: int, r: int, t: int, d: int, imax: int, alt_torsion: bool = False
) -> E2Ledger:
    """Full ledger for j = 0..5 (the j = 5 row is zero), i = 0..imax.

    Requires r > t so that every cyclic factor of the fiber cohomology
    has exponent dividing p^r; under that condition each entry equals
    (log_p size of H^j) * C(i+d-1, d-1), which is asserted.
    """
    _check_profile_params(p, r, t)
    if r <= t:
        raise ProfileViolation(f"need r > t, got r={r}, t={t}")
    if d < 1:
        raise ParamOutOfRange(f"d must be >= 1, got {d}")
    if imax < 0:
        raise ParamOutOfRange(f"imax must be >= 0, got {imax}")
    profile = XProfile.build(p, r, t, alt_torsion)
    rows = []
    for i in range(imax + 1):
        row = []
        for j in range(6):
            coeff = profile.graded.degree(j)
            assert (p ** r) % coeff.exponent() == 0
            log = _coeff_cohomology_log(i, d, p, r, coeff)
            assert log == coeff.log_order(p) * comb(i + d - 1, d - 1)
            row.append(log)
        rows.append(tuple(row))
    return E2Ledger(p, r, t, d, tuple(rows))


@dataclass(frozen=True)
class ObstructionVerdict:
    """Corner-versus-killers comparison at position (4, 0)."""

    p: int
    r: int
    t: int
    d: int
    d2_killed: bool
    corner_log: int
    lower_bound_log: int
    obstructed: bool

    @property
    def verdict(self) -> str:
        return "obstructed" if self.obstructed else "inconclusive"


def free_action_obstruction(
    p: int, r: int, t: int, d: int, d2_killed: bool = False
) -> ObstructionVerdict:
    """Decide whether the corner entry survives to the limit page.

    The surviving size at (4, 0) is at least the entry there divided by
    the sizes of all entries whose differentials can hit it: (2, 1),
    (1, 2) and (0, 3).  For d = 2 the d2_killed flag records the extra
    hypothesis that the differential out of (2, 1) vanishes, removing
    that term; for d = 3 the flag is ignored.  A free action forces the
    surviving size to be at most p^r, so a lower bound exponent L > r
    is a contradiction ("obstructed"); otherwise the ledger is
    inconclusive.
    """
    if d not in (2, 3):
        raise UnsupportedRank(f"corner arithmetic is tabulated for d in (2, 3), got {d}")
    ledger = e2_matrix(p, r, t, d, imax=4)
    corner = ledger.entry(4, 0)
    drop = ledger.entry(1, 2) + ledger.entry(0, 3)
    if not (d == 2 and d2_killed):
        drop += ledger.entry(2, 1)
    lower = corner - drop
    assert lower <= corner
    return ObstructionVerdict(p, r, t, d, d2_killed, corner, lower, lower > r)


@dataclass(frozen=True)
class CyclicCornerLedger:
    """Integer-coefficient second page over a cyclic base group Z/p^a.

    entries[sigma][tau] = H^sigma(B(Z/p^a); H^tau(fiber; Z)) for
    sigma, tau in 0..5, with the fiber's integral cohomology pattern
    (Z, Z, T, Z + T, Z, 0) and T of order p^t.  kill_log bounds the
    size of the subgroup of the (4, 0) corner reachable from (1, 2):
    kill_log <= t, and consequently any element of the base group
    acting trivially on a corner quotient of index p^kill_log has
    stabilizer of index at most p^t.
    """

    p: int
    a: int
    t: int
    entries: tuple[tuple[FgAbelian, ...], ...]
    kill_log: int
    kill_bound_log: int
    stabilizer_index_bound_log: int


def cyclic_e2_profile(a: int, t: int, p: int) -> CyclicCornerLedger:
    """6x6 integer-coefficient corner over Z/p^a with torsion size p^t."""
    if a < 1:
        raise ParamOutOfRange(f"a must be >= 1, got {a}")
    _check_profile_params(p, max(a, 1), t)
    tor = cyclic_group(p ** t)
    fiber = (Z, Z, tor, direct_sum(Z, tor), Z, ZERO)
    base_h = [cyclic_integral_homology(s, p ** a) for s in range(6)]
    rows = []
    for sigma in range(6):
        lower = base_h[sigma - 1] if sigma else ZERO
        rows.append(
            tuple(ucf_cohomology(lower, base_h[sigma], fiber[tau]) for tau in range(6))
        )
    kill_log = rows[1][2].log_order(p)
    assert kill_log == min(a, t) and kill_log <= t
    return CyclicCornerLedger(p, a, t, tuple(rows), kill_log, t, t)

"""Group-level index invariants: alpha, its class-2 relaxation beta2,
the (C, d) uniform-abelian-subgroup property over collections, the
two-prime normal-Sylow classifier, and the Minkowski order bound for
finite subgroups of GL(k, Z).

alpha(G) is the least index of an abelian subgroup; beta2(G) the least
index of a subgroup of nilpotency class at most 2.  Ties are broken by
the lexicographically least member tuple so reports are deterministic.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass
from math import prod

from .errors import ParamOutOfRange
from .groups import (
    Group,
    Subgroup,
    abelian_invariants,
    centralizer_mask,
    commutator_closure_mask,
    enumerate_subgroups,
    full_subgroup,
    is_normal,
    members_of,
    min_generator_count,
    subgroup_from_mask,
    sylow_subgroup,
    trivial_subgroup,
)
from .intmat import is_prime, prime_factorization

AlphaResult = namedtuple("AlphaResult", ["value", "witness"])
Beta2Result = namedtuple("Beta2Result", ["value", "witness", "commutator_cyclic"])


def alpha(G: Group) -> AlphaResult:
    """Least index of an abelian subgroup, with the first witness in
    canonical (order, members) subgroup order.

    >>> from .families import make_family, FamilySpec
    >>> alpha(make_family(FamilySpec("symmetric", (3,)))).value
    2
    """
    if G.is_abelian():
        return AlphaResult(1, full_subgroup(G))
    best: Subgroup | None = None
    for sub in enumerate_subgroups(G):
        if sub.is_abelian() and (best is None or sub.order > best.order):
            best = sub
    assert best is not None  # the trivial subgroup is always abelian
    return AlphaResult(G.order // best.order, best)


def _class_at_most_two(G: Group, sub: Subgroup) -> bool:
    # [H, H] central in H <=> H has nilpotency class <= 2
    comm = commutator_closure_mask(G, sub.mask, sub.mask)
    return centralizer_mask(G, subgroup_from_mask(G, comm)) & sub.mask == sub.mask


def _commutator_is_cyclic(G: Group, sub: Subgroup) -> bool:
    comm = subgroup_from_mask(G, commutator_closure_mask(G, sub.mask, sub.mask))
    invs = abelian_invariants(comm.as_group()[0])
    return len(invs) <= 1


def beta2(G: Group) -> Beta2Result:
    """Least index of a subgroup of nilpotency class <= 2, with witness
    and a flag for whether the witness's commutator subgroup is cyclic.
    """
    if _class_at_most_two(G, full_subgroup(G)):
        w = full_subgroup(G)
        return Beta2Result(1, w, _commutator_is_cyclic(G, w))
    best: Subgroup | None = None
    for sub in enumerate_subgroups(G):
        if best is not None and sub.order <= best.order:
            continue
        if _class_at_most_two(G, sub):
            best = sub
    assert best is not None
    return Beta2Result(
        G.order // best.order, best, _commutator_is_cyclic(G, best)
    )


@dataclass(frozen=True)
class JordanReport:
    alpha: int
    witness_abelian: Subgroup
    beta2: int
    witness_class2: Subgroup
    commutator_of_witness_cyclic: bool


def jordan_report(G: Group) -> JordanReport:
    a = alpha(G)
    b = beta2(G)
    assert b.value <= a.value
    return JordanReport(a.value, a.witness, b.value, b.witness, b.commutator_cyclic)


@dataclass(frozen=True)
class JFailure:
    """One collection member missing the (C, d) target, with the Pareto
    frontier of achievable (index, generator count) pairs."""

    position: int
    best_pairs: tuple[tuple[int, int], ...]


JPropertyResult = namedtuple("JPropertyResult", ["holds", "failures"])


def _abelian_index_frontier(G: Group) -> tuple[tuple[int, int], ...]:
    pairs = set()
    for sub in enumerate_subgroups(G):
        if sub.is_abelian():
            pairs.add((G.order // sub.order, min_generator_count(sub.as_group()[0])))
    frontier = [
        (idx, d)
        for (idx, d) in pairs
        if not any(
            (i2 <= idx and d2 <= d) and (i2, d2) != (idx, d) for (i2, d2) in pairs
        )
    ]
    return tuple(sorted(frontier))


def j_property(collection, C: int, d: int) -> JPropertyResult:
    """Whether every group in the collection has an abelian subgroup of
    index <= C needing <= d generators; failing members are reported
    with their achievable (index, generators) Pareto pairs.

    >>> from .families import make_family, FamilySpec
    >>> j_property([make_family(FamilySpec("symmetric", (3,)))], 2, 1).holds
    True
    """
    if C < 1 or d < 1:
        raise ParamOutOfRange("need C >= 1 and d >= 1")
    failures = []
    for pos, G in enumerate(collection):
        ok = any(
            G.order // sub.order <= C
            and sub.is_abelian()
            and min_generator_count(sub.as_group()[0]) <= d
            for sub in enumerate_subgroups(G)
        )
        if not ok:
            failures.append(JFailure(pos, _abelian_index_frontier(G)))
    return JPropertyResult(not failures, tuple(failures))


@dataclass(frozen=True)
class TClassReport:
    """Decomposition G = PQ with P a normal Sylow p-subgroup and Q a
    Sylow q-subgroup (trivial for p-groups); member is False and the
    fields are None when no such pair of primes exists."""

    member: bool
    p: int | None = None
    q: int | None = None
    sylow_p: Subgroup | None = None
    sylow_q: Subgroup | None = None


def in_T_class(G: Group) -> TClassReport:
    """Classify G as a product of a normal Sylow subgroup with one other
    Sylow subgroup.  The normal prime is chosen smallest-first.

    >>> from .families import make_family, FamilySpec
    >>> rep = in_T_class(make_family(FamilySpec("symmetric", (3,))))
    >>> rep.member, rep.p, rep.q
    (True, 3, 2)
    """
    primes = [p for p, _ in prime_factorization(G.order)]
    if len(primes) > 2:
        return TClassReport(False)
    if len(primes) <= 1:
        p = primes[0] if primes else None
        P = full_subgroup(G)
        return TClassReport(True, p, None, P, trivial_subgroup(G))
    for p in primes:
        P = sylow_subgroup(G, p)
        if is_normal(G, P):
            q = next(r for r in primes if r != p)
            return TClassReport(True, p, q, P, sylow_subgroup(G, q))
    return TClassReport(False)


def minkowski_bound(k: int) -> int:
    """Order bound M(k) for finite subgroups of GL(k, Z):
    M(k) = prod_p p^(sum_i floor(k / (p^i (p-1)))).

    >>> [minkowski_bound(k) for k in (1, 2, 3)]
    [2, 24, 48]
    """
    if not 1 <= k <= 8:
        raise ParamOutOfRange(f"k must be in 1..8, got {k}")
    total = 1
    for p in range(2, k + 2):
        if not is_prime(p):
            continue
        e, q = 0, p - 1
        while k // q:
            e += k // q
            q *= p
        total *= p ** e
    return total


if __name__ == "__main__":  # pragma: no cover
    import doctest

    doctest.testmod()

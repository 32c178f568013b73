"""Finite groups as explicit multiplication tables.

A group of order n lives on the elements 0..n-1 with 0 the identity;
table[i][j] is the index of the product of elements i and j.  Subgroups
are bitmasks over 0..n-1, which keeps enumeration and set algebra cheap
for the orders handled here (a few hundred).

Conventions: conjugation is conj(g, x) = g x g^-1, the commutator is
[g, h] = g^-1 h^-1 g h, and permutations compose right to left
((p * q)(x) = p[q[x]]).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import intmat
from .config import Caps, active_caps
from .errors import (
    ClosureLimitExceeded,
    InvalidTable,
    NotNormal,
    OrderCapExceeded,
    ParamOutOfRange,
)

ASSOC_EXHAUSTIVE_LIMIT = 256
ASSOC_SAMPLE_FACTOR = 10
_ASSOC_SAMPLE_SEED = 0x5EED
_ASSOC_CHUNK = 1 << 22


def _validate_table(arr: np.ndarray) -> None:
    n = arr.shape[0]
    if arr.ndim != 2 or arr.shape[1] != n:
        raise InvalidTable(f"table must be square, got shape {arr.shape}")
    if n == 0:
        raise InvalidTable("empty table")
    if arr.min() < 0 or arr.max() >= n:
        raise InvalidTable("table entries must lie in 0..order-1")
    idx = np.arange(n)
    if not (np.array_equal(arr[0], idx) and np.array_equal(arr[:, 0], idx)):
        raise InvalidTable("element 0 must be a two-sided identity")
    if not (
        np.array_equal(np.sort(arr, axis=1), np.tile(idx, (n, 1)))
        and np.array_equal(np.sort(arr, axis=0), np.tile(idx[:, None], (1, n)))
    ):
        raise InvalidTable("rows and columns must each be permutations")
    if n <= ASSOC_EXHAUSTIVE_LIMIT:
        if not np.array_equal(arr[arr, :], arr[:, arr]):
            raise InvalidTable("associativity fails")
    else:
        rng = np.random.RandomState(_ASSOC_SAMPLE_SEED)
        remaining = ASSOC_SAMPLE_FACTOR * n * n
        while remaining > 0:
            m = min(remaining, _ASSOC_CHUNK)
            i = rng.randint(0, n, size=m)
            j = rng.randint(0, n, size=m)
            k = rng.randint(0, n, size=m)
            if not np.array_equal(arr[arr[i, j], k], arr[i, arr[j, k]]):
                raise InvalidTable("associativity fails on sampled triples")
            remaining -= m


class Group:
    """Immutable finite group given by its multiplication table."""

    def __init__(self, table, labels=None, name: str | None = None, check: bool = True):
        arr = np.asarray(table, dtype=np.int64)
        if check:
            _validate_table(arr)
        self.order: int = int(arr.shape[0])
        self.table: tuple[tuple[int, ...], ...] = tuple(
            tuple(int(x) for x in row) for row in arr
        )
        self._rows = [list(row) for row in self.table]
        self._arr = arr
        self.name = name
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != self.order:
                raise InvalidTable("labels length must equal the order")
        self.labels = labels
        self.inverse: tuple[int, ...] = tuple(
            int(np.where(arr[i] == 0)[0][0]) for i in range(self.order)
        )
        self._element_orders: list[int] | None = None
        self._center_mask: int | None = None
        self._is_abelian: bool | None = None
        self._subgroups: list[Subgroup] | None = None
        self._commutator_mask: int | None = None
        self._min_gens: tuple[int, ...] | None = None

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"Group(order={self.order}{tag})"

    def mul(self, i: int, j: int) -> int:
        return self._rows[i][j]

    def inv(self, i: int) -> int:
        return self.inverse[i]

    def power(self, i: int, e: int) -> int:
        if e < 0:
            i, e = self.inverse[i], -e
        acc, base = 0, i
        row = self._rows
        while e:
            if e & 1:
                acc = row[acc][base]
            base = row[base][base]
            e >>= 1
        return acc

    def conj(self, g: int, x: int) -> int:
        return self._rows[self._rows[g][x]][self.inverse[g]]

    def commutator(self, g: int, h: int) -> int:
        r = self._rows
        return r[r[r[self.inverse[g]][self.inverse[h]]][g]][h]

    def element_order(self, i: int) -> int:
        if self._element_orders is None:
            self._element_orders = [0] * self.order
        cached = self._element_orders[i]
        if cached:
            return cached
        x, k = i, 1
        row = self._rows
        while x != 0:
            x = row[x][i]
            k += 1
        self._element_orders[i] = k
        return k

    def element_orders(self) -> tuple[int, ...]:
        return tuple(self.element_order(i) for i in range(self.order))

    def is_abelian(self) -> bool:
        if self._is_abelian is None:
            self._is_abelian = bool(np.array_equal(self._arr, self._arr.T))
        return self._is_abelian

    def exponent(self) -> int:
        e = 1
        for i in range(self.order):
            o = self.element_order(i)
            e = e * o // gcd(e, o)
        return e

    def center_mask(self) -> int:
        if self._center_mask is None:
            central = (self._arr == self._arr.T).all(axis=1)
            mask = 0
            for i in np.nonzero(central)[0]:
                mask |= 1 << int(i)
            self._center_mask = mask
        return self._center_mask

    def label_of(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)


def mask_of(members) -> int:
    mask = 0
    for x in members:
        mask |= 1 << x
    return mask


def members_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of `group`, stored as a bitmask plus sorted members."""

    group: Group
    mask: int
    members: tuple[int, ...]
    gens: tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return len(self.members)

    def contains(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def is_abelian(self) -> bool:
        r = self.group._rows
        ms = self.members
        for a_pos, a in enumerate(ms):
            for b in ms[a_pos + 1:]:
                if r[a][b] != r[b][a]:
                    return False
        return True

    def as_group(self) -> tuple[Group, tuple[int, ...]]:
        """Reindexed copy of this subgroup plus the embedding into the parent."""
        ms = self.members
        pos = {x: k for k, x in enumerate(ms)}
        r = self.group._rows
        table = [[pos[r[a][b]] for b in ms] for a in ms]
        labels = None
        if self.group.labels is not None:
            labels = [self.group.labels[x] for x in ms]
        return Group(table, labels=labels, check=False), ms

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={self.members})"


def subgroup_from_mask(G: Group, mask: int, gens: tuple[int, ...] = ()) -> Subgroup:
    return Subgroup(G, mask, members_of(mask), gens)


def closure_mask(G: Group, gens) -> int:
    """Bitmask of the subgroup generated by `gens` (indices into G)."""
    rows = G._rows
    gens = [g for g in dict.fromkeys(gens)]
    mask = 1
    elems = [0]
    for g in gens:
        if not mask >> g & 1:
            mask |= 1 << g
            elems.append(g)
    i = 0
    while i < len(elems):
        row = rows[elems[i]]
        i += 1
        for g in gens:
            y = row[g]
            if not mask >> y & 1:
                mask |= 1 << y
                elems.append(y)
    return mask


def closure_subgroup(G: Group, gens) -> Subgroup:
    gens = tuple(dict.fromkeys(gens))
    return subgroup_from_mask(G, closure_mask(G, gens), gens)


def trivial_subgroup(G: Group) -> Subgroup:
    return Subgroup(G, 1, (0,), ())


def full_subgroup(G: Group) -> Subgroup:
    return Subgroup(G, (1 << G.order) - 1, tuple(range(G.order)), minimal_generating_tuple(G))


def cyclic_subgroup(G: Group, x: int) -> Subgroup:
    return closure_subgroup(G, (x,))


def center_subgroup(G: Group) -> Subgroup:
    mask = G.center_mask()
    return subgroup_from_mask(G, mask)


def commutator_subgroup(G: Group) -> Subgroup:
    if G._commutator_mask is None:
        comms = {G.commutator(g, h) for g in range(G.order) for h in range(G.order)}
        comms.discard(0)
        G._commutator_mask = closure_mask(G, sorted(comms))
    return subgroup_from_mask(G, G._commutator_mask)


def is_subgroup_mask(G: Group, mask: int) -> bool:
    if not mask & 1:
        return False
    ms = members_of(mask)
    r = G._rows
    for a in ms:
        for b in ms:
            if not mask >> r[a][b] & 1:
                return False
    return True


def _extend_closure(G: Group, base_members: tuple[int, ...], base_mask: int,
                    gens: tuple[int, ...], g: int) -> int:
    """Mask of <base, g> given base = <gens[:-1]> with known members."""
    rows = G._rows
    mask = base_mask | 1 << g
    elems = list(base_members)
    if not base_mask >> g & 1:
        elems.append(g)
    i = 0
    while i < len(elems):
        row = rows[elems[i]]
        i += 1
        for h in gens:
            y = row[h]
            if not mask >> y & 1:
                mask |= 1 << y
                elems.append(y)
    return mask


def enumerate_subgroups(
    G: Group, max_order_cap: int | None = None, caps: Caps | None = None
) -> list[Subgroup]:
    """All subgroups of G, sorted by (order, members).

    Bottom-up closure of cyclic subgroups under one-generator extensions.
    Raises OrderCapExceeded when G.order exceeds the cap (default 512,
    override via max_order_cap or ACTIONLAB_MAX_ORDER).  The result is
    cached on G.
    """
    if G._subgroups is not None:
        return G._subgroups
    cap = max_order_cap if max_order_cap is not None else (caps or active_caps()).subgroup_order
    if G.order > cap:
        raise OrderCapExceeded(
            f"subgroup enumeration capped at order {cap}, got {G.order}"
        )
    full = (1 << G.order) - 1
    seen: dict[int, tuple[int, ...]] = {1: ()}
    members: dict[int, tuple[int, ...]] = {1: (0,)}
    queue: deque[int] = deque()
    for x in range(1, G.order):
        m = closure_mask(G, (x,))
        if m not in seen:
            seen[m] = (x,)
            members[m] = members_of(m)
            queue.append(m)
    while queue:
        m = queue.popleft()
        if m == full:
            continue
        gens = seen[m]
        ms = members[m]
        rest = full & ~m
        g = 0
        while rest:
            if rest & 1:
                new_gens = gens + (g,)
                nm = _extend_closure(G, ms, m, new_gens, g)
                if nm not in seen:
                    seen[nm] = new_gens
                    members[nm] = members_of(nm)
                    queue.append(nm)
            rest >>= 1
            g += 1
    subs = [Subgroup(G, m, members[m], gens) for m, gens in seen.items()]
    subs.sort(key=lambda s: (s.order, s.members))
    G._subgroups = subs
    return subs


def normalizer_mask(G: Group, sub: Subgroup) -> int:
    gens = sub.gens or sub.members
    mask = 0
    for g in range(G.order):
        if all(sub.mask >> G.conj(g, h) & 1 for h in gens):
            mask |= 1 << g
    return mask


def normalizer(G: Group, sub: Subgroup) -> Subgroup:
    return subgroup_from_mask(G, normalizer_mask(G, sub))


def centralizer_mask(G: Group, sub: Subgroup) -> int:
    gens = sub.gens or sub.members
    r = G._rows
    mask = 0
    for g in range(G.order):
        if all(r[g][h] == r[h][g] for h in gens):
            mask |= 1 << g
    return mask


def centralizer(G: Group, sub: Subgroup) -> Subgroup:
    return subgroup_from_mask(G, centralizer_mask(G, sub))


def is_normal(G: Group, sub: Subgroup) -> bool:
    for g in minimal_generating_tuple(G):
        for h in (sub.gens or sub.members):
            if not sub.mask >> G.conj(g, h) & 1:
                return False
    return True


def conjugate_mask(G: Group, sub: Subgroup, g: int) -> int:
    mask = 0
    for h in sub.members:
        mask |= 1 << G.conj(g, h)
    return mask


def conjugates(G: Group, sub: Subgroup) -> list[Subgroup]:
    masks = {conjugate_mask(G, sub, g) for g in range(G.order)}
    return [subgroup_from_mask(G, m) for m in sorted(masks)]


@dataclass(frozen=True)
class Quotient:
    """Quotient G/N with its projection and a minimal-representative section."""

    parent: Group
    kernel: Subgroup
    group: Group
    projection: tuple[int, ...]
    reps: tuple[int, ...]


def quotient(G: Group, N: Subgroup) -> Quotient:
    """G/N for a normal subgroup N; cosets indexed by least representative."""
    if not is_normal(G, N):
        raise NotNormal(f"subgroup {N.members} is not normal")
    r = G._rows
    proj = [-1] * G.order
    reps: list[int] = []
    for x in range(G.order):
        if proj[x] == -1:
            k = len(reps)
            reps.append(x)
            for m in N.members:
                proj[r[x][m]] = k
    q = len(reps)
    table = [[proj[r[reps[a]][reps[b]]] for b in range(q)] for a in range(q)]
    labels = None
    if G.labels is not None:
        labels = [G.labels[x] for x in reps]
    return Quotient(G, N, Group(table, labels=labels, check=False), tuple(proj), tuple(reps))


@dataclass(frozen=True)
class SubgroupCalculus:
    normalizer: Subgroup
    centralizer: Subgroup
    normal: bool
    conjugates: tuple[Subgroup, ...]
    quotient: Quotient | None
    intersection: Subgroup | None = None
    join: Subgroup | None = None


def subgroup_calculus(G: Group, H: Subgroup, K: Subgroup | None = None) -> SubgroupCalculus:
    """Normalizer, centralizer, normality, conjugates, and (when normal)
    the quotient of H; with a second subgroup K, also meet and join."""
    normal = is_normal(G, H)
    inter = join = None
    if K is not None:
        inter = subgroup_from_mask(G, H.mask & K.mask)
        join = closure_subgroup(G, H.members + K.members)
    return SubgroupCalculus(
        normalizer=normalizer(G, H),
        centralizer=centralizer(G, H),
        normal=normal,
        conjugates=tuple(conjugates(G, H)),
        quotient=quotient(G, H) if normal else None,
        intersection=inter,
        join=join,
    )


def sylow_subgroup(G: Group, p: int) -> Subgroup:
    """A Sylow p-subgroup (trivial when p does not divide the order)."""
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ParamOutOfRange(f"p must be prime, got {p}")
    target = 1
    rest = G.order
    while rest % p == 0:
        rest //= p
        target *= p
    H = trivial_subgroup(G)
    while H.order < target:
        nmask = normalizer_mask(G, H)
        grown = False
        for x in members_of(nmask & ~H.mask):
            # order of the coset xH inside the normalizer
            e, y = 1, x
            while not H.mask >> y & 1:
                y = G.mul(y, x)
                e += 1
            if e % p == 0:
                z = G.power(x, e // p)
                H = closure_subgroup(G, H.gens + (z,))
                grown = True
                break
        if not grown:  # cannot happen for p-subgroups below full p-part
            raise RuntimeError("sylow growth stalled")
    return H


def commutator_closure_mask(G: Group, mask_a: int, mask_b: int) -> int:
    comms = set()
    for a in members_of(mask_a):
        for b in members_of(mask_b):
            comms.add(G.commutator(a, b))
    comms.discard(0)
    return closure_mask(G, sorted(comms))


def lower_central_series(G: Group) -> list[Subgroup]:
    full = (1 << G.order) - 1
    series = [subgroup_from_mask(G, full, minimal_generating_tuple(G))]
    while True:
        prev = series[-1].mask
        nxt = commutator_closure_mask(G, prev, full)
        if nxt == prev:
            break
        series.append(subgroup_from_mask(G, nxt))
        if nxt == 1:
            break
    return series


def nilpotency_class(G: Group) -> int | None:
    series = lower_central_series(G)
    if series[-1].mask != 1:
        return None
    return len(series) - 1


def minimal_generating_tuple(G: Group) -> tuple[int, ...]:
    """Greedy generating tuple: elements taken in descending order of
    element order (ties by index), then pruned to an irredundant set."""
    if G._min_gens is not None:
        return G._min_gens
    if G.order == 1:
        G._min_gens = ()
        return ()
    candidates = sorted(range(1, G.order), key=lambda x: (-G.element_order(x), x))
    full = (1 << G.order) - 1
    gens: list[int] = []
    mask = 1
    for c in candidates:
        if not mask >> c & 1:
            gens.append(c)
            mask = closure_mask(G, gens)
            if mask == full:
                break
    pruned = list(gens)
    for g in list(gens):
        trial = [x for x in pruned if x != g]
        if trial and closure_mask(G, trial) == full:
            pruned = trial
    G._min_gens = tuple(pruned)
    return G._min_gens


@dataclass(frozen=True)
class AbelianBasis:
    """Invariant-factor coordinates for a finite abelian group.

    orders is the invariant-factor chain d_1 | d_2 | ... (each > 1),
    basis[i] is an element of order orders[i], and coords[x] are the
    coordinates of element x, so multiplication becomes coordinatewise
    addition mod orders.
    """

    group: Group
    orders: tuple[int, ...]
    basis: tuple[int, ...]
    coords: tuple[tuple[int, ...], ...]

    def element_from_coords(self, vec) -> int:
        g = 0
        G = self.group
        for b, e, d in zip(self.basis, vec, self.orders):
            g = G.mul(g, G.power(b, e % d))
        return g


def abelian_basis(G: Group) -> AbelianBasis:
    """Decompose an abelian group into invariant-factor coordinates.

    Exponent vectors of all elements over a greedy generating tuple are
    collected by breadth-first search; the collision relations span the
    full relation lattice, and its Smith normal form yields the chain.
    """
    if not G.is_abelian():
        raise ParamOutOfRange("abelian_basis needs an abelian group")
    if G.order == 1:
        return AbelianBasis(G, (), (), ((),))
    gens = minimal_generating_tuple(G)
    r = len(gens)
    rows = G._rows
    rep: list[tuple[int, ...] | None] = [None] * G.order
    rep[0] = (0,) * r
    queue = deque([0])
    relations: list[list[int]] = []
    seen_rel: set[tuple[int, ...]] = set()
    while queue:
        x = queue.popleft()
        vx = rep[x]
        for i, g in enumerate(gens):
            y = rows[x][g]
            vy = tuple(e + (1 if k == i else 0) for k, e in enumerate(vx))
            if rep[y] is None:
                rep[y] = vy
                queue.append(y)
            else:
                delta = tuple(a - b for a, b in zip(vy, rep[y]))
                if any(delta) and delta not in seen_rel:
                    seen_rel.add(delta)
                    relations.append(list(delta))
    d, _, v = intmat.smith_normal_form(relations)
    if len(d) < r or any(x == 0 for x in d):
        raise RuntimeError("relation lattice not full rank for a finite group")
    kept = [j for j in range(r) if d[j] != 1]
    orders = tuple(d[j] for j in kept)

    def coords_of(vec: tuple[int, ...]) -> tuple[int, ...]:
        w = [sum(vec[i] * v[i][j] for i in range(r)) for j in kept]
        return tuple(w[k] % orders[k] for k in range(len(kept)))

    coords = tuple(coords_of(rep[x]) for x in range(G.order))
    if len(set(coords)) != G.order:
        raise RuntimeError("coordinate map failed to separate elements")
    basis = []
    for k in range(len(kept)):
        unit = tuple(1 if j == k else 0 for j in range(len(kept)))
        basis.append(coords.index(unit))
    return AbelianBasis(G, orders, tuple(basis), coords)


def abelian_invariants(G: Group) -> tuple[int, ...]:
    return abelian_basis(G).orders


def min_generator_count(G: Group) -> int:
    """d(G): exact for abelian groups, size of the greedy tuple otherwise."""
    if G.is_abelian():
        return len(abelian_basis(G).orders)
    return len(minimal_generating_tuple(G))


def _extend_partial_map(
    G: Group, H: Group, gens: tuple[int, ...], images: tuple[int, ...]
) -> tuple[int, ...] | None:
    """Map gens[i] -> images[i] into H, closing under products.

    Returns the partial map on <gens> as a tuple over G (unmapped = -1),
    or None when the assignment is inconsistent or non-injective.
    Consistency is checked on every (element, generator) product, which
    pins the homomorphism property on the generated subgroup.
    """
    img = [-1] * G.order
    img[0] = 0
    used = 1
    queue = deque([0])
    rows_g, rows_h = G._rows, H._rows
    while queue:
        x = queue.popleft()
        for g, ig in zip(gens, images):
            y = rows_g[x][g]
            t = rows_h[img[x]][ig]
            if img[y] == -1:
                if used >> t & 1:
                    return None
                img[y] = t
                used |= 1 << t
                queue.append(y)
            elif img[y] != t:
                return None
    return tuple(img)


def automorphism_group(G: Group, caps: Caps | None = None) -> list[tuple[int, ...]]:
    """All automorphisms of G as permutation tuples, sorted.

    Backtracking over images of a greedy generating tuple, pruned by
    element orders and partial-closure consistency.  Guards: group order
    above caps.aut_order, or more than caps.aut_search_count
    automorphisms collected, raise OrderCapExceeded.
    """
    caps = caps or active_caps()
    if G.order > caps.aut_order:
        raise OrderCapExceeded(
            f"automorphism search capped at order {caps.aut_order}, got {G.order}"
        )
    gens = minimal_generating_tuple(G)
    if not gens:
        return [(0,)]
    pools = [
        [c for c in range(G.order) if G.element_order(c) == G.element_order(g)]
        for g in gens
    ]
    found: list[tuple[int, ...]] = []

    def descend(k: int, images: tuple[int, ...]) -> None:
        if k == len(gens):
            m = _extend_partial_map(G, G, gens, images)
            if m is not None and -1 not in m:
                found.append(m)
                if len(found) > caps.aut_search_count:
                    raise OrderCapExceeded(
                        f"more than {caps.aut_search_count} automorphisms"
                    )
            return
        for c in pools[k]:
            trial = images + (c,)
            if _extend_partial_map(G, G, gens[: k + 1], trial) is not None:
                descend(k + 1, trial)

    descend(0, ())
    found.sort()
    return found


def find_isomorphism(G: Group, H: Group) -> tuple[int, ...] | None:
    """An isomorphism G -> H as a tuple over G, or None."""
    if G.order != H.order:
        return None
    if sorted(G.element_orders()) != sorted(H.element_orders()):
        return None
    gens = minimal_generating_tuple(G)
    if not gens:
        return (0,)
    pools = [
        [c for c in range(H.order) if H.element_order(c) == G.element_order(g)]
        for g in gens
    ]

    def descend(k: int, images: tuple[int, ...]) -> tuple[int, ...] | None:
        if k == len(gens):
            m = _extend_partial_map(G, H, gens, images)
            if m is not None and -1 not in m:
                return m
            return None
        for c in pools[k]:
            trial = images + (c,)
            if _extend_partial_map(G, H, gens[: k + 1], trial) is not None:
                out = descend(k + 1, trial)
                if out is not None:
                    return out
        return None

    return descend(0, ())


def is_isomorphic(G: Group, H: Group) -> bool:
    return find_isomorphism(G, H) is not None


# ---------------------------------------------------------------------------
# permutation input


def parse_permutation(text: str, degree: int) -> tuple[int, ...]:
    """Parse disjoint cycles in 1-based notation, e.g. "(1 2 3)(4 5)".

    "()" and the empty string denote the identity.  Commas and spaces
    both separate points.
    """
    if degree < 1:
        raise ParamOutOfRange("degree must be >= 1")
    perm = list(range(degree))
    seen: set[int] = set()
    body = text.strip()
    if body in ("", "()"):
        return tuple(perm)
    if not (body.startswith("(") and body.endswith(")")):
        raise ParamOutOfRange(f"bad cycle string: {text!r}")
    for chunk in body[1:-1].split(")("):
        pts = [p for p in chunk.replace(",", " ").split() if p]
        if not pts:
            continue
        try:
            cyc = [int(p) for p in pts]
        except ValueError:
            raise ParamOutOfRange(f"bad cycle string: {text!r}") from None
        for p in cyc:
            if not 1 <= p <= degree:
                raise ParamOutOfRange(f"point {p} outside 1..{degree}")
            if p in seen:
                raise ParamOutOfRange(f"point {p} repeated in {text!r}")
            seen.add(p)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a - 1] = b - 1
    return tuple(perm)


def permutation_cycles(perm: tuple[int, ...]) -> str:
    """Canonical disjoint-cycle string, 1-based; identity prints as ()."""
    n = len(perm)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = perm[x]
        out.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
    return "".join(out) if out else "()"


def compose_permutations(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p[x] for x in q)


def permutation_group(
    generators, degree: int, caps: Caps | None = None, name: str | None = None
) -> Group:
    """Group generated by permutations, elements sorted lexicographically.

    Generators may be cycle strings or 0-based image tuples.  Raises
    ClosureLimitExceeded past caps.closure_limit elements.
    """
    caps = caps or active_caps()
    gens: list[tuple[int, ...]] = []
    for g in generators:
        if isinstance(g, str):
            gens.append(parse_permutation(g, degree))
        else:
            perm = tuple(int(x) for x in g)
            if sorted(perm) != list(range(degree)):
                raise ParamOutOfRange(f"not a permutation of 0..{degree - 1}: {g}")
            gens.append(perm)
    identity = tuple(range(degree))
    elems = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose_permutations(x, g)
            if y not in elems:
                if len(elems) >= caps.closure_limit:
                    raise ClosureLimitExceeded(
                        f"closure exceeded {caps.closure_limit} elements"
                    )
                elems.add(y)
                queue.append(y)
    ordered = sorted(elems)
    index = {p: i for i, p in enumerate(ordered)}
    table = [
        [index[compose_permutations(a, b)] for b in ordered] for a in ordered
    ]
    labels = [permutation_cycles(p) for p in ordered]
    return Group(table, labels=labels, name=name, check=False)


def build_group(spec: dict, caps: Caps | None = None) -> Group:
    """Construct a group from a JSON-style description.

    Types: {"type": "cayley", "table": [[...]]},
    {"type": "permutation", "degree": m, "generators": ["(1 2 3)", ...]},
    {"type": "family", "name": ..., "params": [...]}.
    """
    if not isinstance(spec, dict) or "type" not in spec:
        raise ParamOutOfRange("group spec must be a dict with a 'type' key")
    kind = spec["type"]
    if kind == "cayley":
        if "table" not in spec:
            raise InvalidTable("cayley spec needs a 'table'")
        return Group(spec["table"], labels=spec.get("labels"), name=spec.get("name"))
    if kind == "permutation":
        if "degree" not in spec or "generators" not in spec:
            raise ParamOutOfRange("permutation spec needs 'degree' and 'generators'")
        return permutation_group(
            spec["generators"], int(spec["degree"]), caps=caps, name=spec.get("name")
        )
    if kind == "family":
        from . import families

        if "name" not in spec:
            raise ParamOutOfRange("family spec needs a 'name'")
        return families.make_family(
            families.FamilySpec(
                name=spec["name"],
                params=tuple(spec.get("params", ())),
                action=spec.get("action"),
            )
        )
    raise ParamOutOfRange(f"unknown group spec type: {kind!r}")


@dataclass(frozen=True)
class StructureReport:
    order: int
    abelian: bool
    exponent: int
    center_order: int
    commutator_order: int
    nilpotency_class: int | None
    abelian_invariants: tuple[int, ...] | None
    min_generators: int
    order_histogram: tuple[tuple[int, int], ...]


def structure_report(G: Group) -> StructureReport:
    hist: dict[int, int] = {}
    for x in range(G.order):
        o = G.element_order(x)
        hist[o] = hist.get(o, 0) + 1
    invs = abelian_basis(G).orders if G.is_abelian() else None
    return StructureReport(
        order=G.order,
        abelian=G.is_abelian(),
        exponent=G.exponent(),
        center_order=bin(G.center_mask()).count("1"),
        commutator_order=commutator_subgroup(G).order,
        nilpotency_class=nilpotency_class(G),
        abelian_invariants=invs,
        min_generators=min_generator_count(G),
        order_histogram=tuple(sorted(hist.items())),
    )

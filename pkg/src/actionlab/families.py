"""Constructors for the standard families of small finite groups.

Every constructor returns a Group whose element 0 is the identity and
whose name records the construction, e.g. "heisenberg(3)".  Orderings
are canonical (documented per family) so tables are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations as _permutations
from math import prod

from .errors import ParamOutOfRange
from .groups import Group, compose_permutations
from .intmat import is_prime

_MAX_TABLE_ORDER = 4096


def _guard_order(n: int, what: str) -> None:
    if n > _MAX_TABLE_ORDER:
        raise ParamOutOfRange(f"{what} would have order {n} > {_MAX_TABLE_ORDER}")


def cyclic(n: int) -> Group:
    """Z/n with elements 0..n-1 under addition."""
    if n < 1:
        raise ParamOutOfRange(f"cyclic order must be >= 1, got {n}")
    _guard_order(n, "cyclic group")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return Group(table, labels=[str(i) for i in range(n)], name=f"cyclic({n})")


def abelian_group(moduli) -> Group:
    """Direct sum of Z/m for m in moduli, elements in mixed-radix order."""
    mods = tuple(int(m) for m in moduli)
    if not mods or any(m < 1 for m in mods):
        raise ParamOutOfRange(f"moduli must be positive, got {mods}")
    n = prod(mods)
    _guard_order(n, "abelian group")

    def unpack(i: int) -> tuple[int, ...]:
        out = []
        for m in reversed(mods):
            i, r = divmod(i, m)
            out.append(r)
        return tuple(reversed(out))

    def pack(v) -> int:
        i = 0
        for x, m in zip(v, mods):
            i = i * m + x
        return i

    vecs = [unpack(i) for i in range(n)]
    table = [
        [pack(tuple((a + b) % m for a, b, m in zip(u, v, mods))) for v in vecs]
        for u in vecs
    ]
    labels = ["(" + ",".join(str(x) for x in v) + ")" for v in vecs]
    return Group(table, labels=labels, name=f"abelian({','.join(str(m) for m in mods)})")


def dihedral(n: int) -> Group:
    """Dihedral group of order 2n: rotations r^k (index k) and
    reflections r^k s (index n + k)."""
    if n < 1:
        raise ParamOutOfRange(f"dihedral parameter must be >= 1, got {n}")
    _guard_order(2 * n, "dihedral group")

    def mul(i: int, j: int) -> int:
        s1, k1 = divmod(i, n)
        s2, k2 = divmod(j, n)
        k = (k1 + (k2 if s1 == 0 else -k2)) % n
        return k + n * (s1 ^ s2)

    table = [[mul(i, j) for j in range(2 * n)] for i in range(2 * n)]
    labels = [f"r{k}" for k in range(n)] + [f"r{k}s" for k in range(n)]
    return Group(table, labels=labels, name=f"dihedral({n})")


def quaternion(m: int) -> Group:
    """Generalized quaternion group of order m = 2^k >= 8.

    Elements x^a y^b with x of order m/2, y^2 = x^(m/4), y x y^-1 = x^-1;
    index is a + (m/2) * b.
    """
    if m < 8 or m & (m - 1):
        raise ParamOutOfRange(f"quaternion order must be a power of two >= 8, got {m}")
    _guard_order(m, "quaternion group")
    half, quarter = m // 2, m // 4

    def mul(i: int, j: int) -> int:
        a1, b1 = i % half, i // half
        a2, b2 = j % half, j // half
        a = (a1 + (a2 if b1 == 0 else -a2)) % half
        if b1 and b2:
            a = (a + quarter) % half
        return a + half * (b1 ^ b2)

    table = [[mul(i, j) for j in range(m)] for i in range(m)]
    labels = [f"x{a}" if b == 0 else f"x{a}y" for b in range(2) for a in range(half)]
    return Group(table, labels=labels, name=f"quaternion({m})")


def heisenberg(n: int) -> Group:
    """Upper unitriangular 3x3 matrices over Z/n; order n^3.

    The element (a, b, c) has 1s on the diagonal, a and b on the first
    superdiagonal and c in the corner; index is (a*n + b)*n + c.
    """
    if n < 2:
        raise ParamOutOfRange(f"heisenberg parameter must be >= 2, got {n}")
    _guard_order(n ** 3, "heisenberg group")
    size = n ** 3

    def mul(i: int, j: int) -> int:
        a1, r = divmod(i, n * n)
        b1, c1 = divmod(r, n)
        a2, r = divmod(j, n * n)
        b2, c2 = divmod(r, n)
        return ((a1 + a2) % n * n + (b1 + b2) % n) * n + (c1 + c2 + a1 * b2) % n

    table = [[mul(i, j) for j in range(size)] for i in range(size)]
    labels = [
        f"({i // (n * n)},{i // n % n},{i % n})" for i in range(size)
    ]
    return Group(table, labels=labels, name=f"heisenberg({n})")


def extraspecial(p: int, exponent: int) -> Group:
    """Extraspecial group of order p^3 for odd prime p.

    exponent == p gives the Heisenberg group over Z/p; exponent == p^2
    gives Z/p^2 semidirect Z/p with the generator acting as x -> (1+p)x.
    """
    if not is_prime(p) or p == 2:
        raise ParamOutOfRange(f"extraspecial needs an odd prime, got {p}")
    if exponent == p:
        g = heisenberg(p)
        g.name = f"extraspecial({p},{p})"
        return g
    if exponent != p * p:
        raise ParamOutOfRange(
            f"exponent must be {p} or {p * p}, got {exponent}"
        )
    p2 = p * p
    _guard_order(p * p2, "extraspecial group")

    def mul(i: int, j: int) -> int:
        a1, b1 = divmod(i, p)
        a2, b2 = divmod(j, p)
        a = (a1 + a2 * pow(1 + p, b1, p2)) % p2
        return a * p + (b1 + b2) % p

    size = p * p2
    table = [[mul(i, j) for j in range(size)] for i in range(size)]
    labels = [f"({i // p},{i % p})" for i in range(size)]
    return Group(table, labels=labels, name=f"extraspecial({p},{p * p})")


def _perm_parity(perm: tuple[int, ...]) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return inv & 1


def _perm_table(perms: list[tuple[int, ...]], name: str) -> Group:
    from .groups import permutation_cycles

    index = {p: i for i, p in enumerate(perms)}
    table = [[index[compose_permutations(a, b)] for b in perms] for a in perms]
    labels = [permutation_cycles(p) for p in perms]
    return Group(table, labels=labels, name=name)


def symmetric(n: int) -> Group:
    """Symmetric group on n <= 5 points, elements in lexicographic order."""
    if not 1 <= n <= 5:
        raise ParamOutOfRange(f"symmetric supports 1 <= n <= 5, got {n}")
    perms = sorted(_permutations(range(n)))
    return _perm_table(perms, f"symmetric({n})")


def alternating(n: int) -> Group:
    """Alternating group on n <= 5 points, elements in lexicographic order."""
    if not 1 <= n <= 5:
        raise ParamOutOfRange(f"alternating supports 1 <= n <= 5, got {n}")
    perms = sorted(p for p in _permutations(range(n)) if _perm_parity(p) == 0)
    return _perm_table(perms, f"alternating({n})")


def direct_product(*groups: Group, name: str | None = None) -> Group:
    """Direct product; element index is mixed-radix over the factors."""
    if not groups:
        raise ParamOutOfRange("direct_product needs at least one factor")
    orders = [g.order for g in groups]
    n = prod(orders)
    _guard_order(n, "direct product")

    def unpack(i: int) -> tuple[int, ...]:
        out = []
        for m in reversed(orders):
            i, r = divmod(i, m)
            out.append(r)
        return tuple(reversed(out))

    vecs = [unpack(i) for i in range(n)]

    def pack(v) -> int:
        i = 0
        for x, m in zip(v, orders):
            i = i * m + x
        return i

    table = [
        [
            pack(tuple(g.mul(a, b) for g, a, b in zip(groups, u, v)))
            for v in vecs
        ]
        for u in vecs
    ]
    labels = [
        "(" + ",".join(g.label_of(x) for g, x in zip(groups, v)) + ")" for v in vecs
    ]
    if name is None:
        name = "x".join(g.name or f"order{g.order}" for g in groups)
    return Group(table, labels=labels, name=name)


def _check_automorphism(N: Group, perm) -> None:
    if sorted(perm) != list(range(N.order)) or perm[0] != 0:
        raise ParamOutOfRange("action value is not a permutation fixing 0")
    for a in range(N.order):
        for b in range(N.order):
            if perm[N.mul(a, b)] != N.mul(perm[a], perm[b]):
                raise ParamOutOfRange("action value is not an automorphism")


def expand_action(H: Group, N: Group, images: dict) -> list[tuple[int, ...]]:
    """Extend generator images h -> automorphism of N to a full action.

    images maps element indices of H to permutations of N; the keys must
    generate H.  The result is verified to be a homomorphism.
    """
    gens: dict[int, tuple[int, ...]] = {}
    for h, perm in images.items():
        h = int(h)
        if not 0 <= h < H.order:
            raise ParamOutOfRange(f"action key {h} outside 0..{H.order - 1}")
        gens[h] = tuple(int(x) for x in perm)
    for perm in gens.values():
        _check_automorphism(N, perm)
    act: dict[int, tuple[int, ...]] = {0: tuple(range(N.order))}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, pg in gens.items():
                y = H.mul(x, g)
                if y not in act:
                    act[y] = compose_permutations(act[x], pg)
                    nxt.append(y)
        frontier = nxt
    if len(act) != H.order:
        raise ParamOutOfRange("action keys do not generate the acting group")
    return [act[h] for h in range(H.order)]


def semidirect(N: Group, H: Group, action, name: str | None = None) -> Group:
    """Semidirect product N x| H.

    action is either a list of H.order permutations of N (the full
    homomorphism H -> Aut(N)) or a dict of generator images expanded via
    expand_action.  Element (n, h) has index n * H.order + h and
    (n1, h1)(n2, h2) = (n1 * act[h1](n2), h1 h2).
    """
    if isinstance(action, dict):
        act = expand_action(H, N, action)
    else:
        act = [tuple(int(x) for x in perm) for perm in action]
        if len(act) != H.order:
            raise ParamOutOfRange(
                f"action must list {H.order} permutations, got {len(act)}"
            )
        for perm in act:
            _check_automorphism(N, perm)
    if act[0] != tuple(range(N.order)):
        raise ParamOutOfRange("action at the identity must be trivial")
    for h1 in range(H.order):
        for h2 in range(H.order):
            if act[H.mul(h1, h2)] != compose_permutations(act[h1], act[h2]):
                raise ParamOutOfRange("action is not a homomorphism")
    n, m = N.order, H.order
    _guard_order(n * m, "semidirect product")

    def mul(i: int, j: int) -> int:
        n1, h1 = divmod(i, m)
        n2, h2 = divmod(j, m)
        return N.mul(n1, act[h1][n2]) * m + H.mul(h1, h2)

    table = [[mul(i, j) for j in range(n * m)] for i in range(n * m)]
    labels = [
        f"({N.label_of(i // m)},{H.label_of(i % m)})" for i in range(n * m)
    ]
    if name is None:
        name = f"{N.name or N.order}:{H.name or H.order}"
    return Group(table, labels=labels, name=name)


@dataclass(frozen=True)
class FamilySpec:
    """Description of a family instance.

    name is one of cyclic, abelian, dihedral, quaternion, heisenberg,
    extraspecial, symmetric, alternating, direct_product, semidirect.
    params holds integers, or nested specs for the two product forms.
    action (semidirect only) maps acting-factor element indices to
    permutations of the base factor (generator images suffice).
    """

    name: str
    params: tuple = ()
    action: dict | None = field(default=None, hash=False)


_FAMILIES = {
    "cyclic": (cyclic, 1),
    "abelian": (abelian_group, None),
    "dihedral": (dihedral, 1),
    "quaternion": (quaternion, 1),
    "heisenberg": (heisenberg, 1),
    "extraspecial": (extraspecial, 2),
    "symmetric": (symmetric, 1),
    "alternating": (alternating, 1),
}


def _coerce_spec(obj) -> FamilySpec:
    if isinstance(obj, FamilySpec):
        return obj
    if isinstance(obj, dict):
        return FamilySpec(
            name=obj.get("name", ""),
            params=tuple(obj.get("params", ())),
            action=obj.get("action"),
        )
    raise ParamOutOfRange(f"expected a family spec, got {obj!r}")


def make_family(spec: FamilySpec | dict) -> Group:
    """Resolve a FamilySpec (or equivalent dict) to a Group."""
    spec = _coerce_spec(spec)
    name = spec.name
    if name == "direct_product":
        factors = [make_family(p) for p in spec.params]
        if not factors:
            raise ParamOutOfRange("direct_product needs at least one factor spec")
        return direct_product(*factors)
    if name == "semidirect":
        if len(spec.params) != 2:
            raise ParamOutOfRange("semidirect takes [base spec, acting spec]")
        base = make_family(spec.params[0])
        acting = make_family(spec.params[1])
        if spec.action is None:
            raise ParamOutOfRange("semidirect needs an action (generator images)")
        action = {int(k): tuple(int(x) for x in v) for k, v in spec.action.items()}
        return semidirect(base, acting, action)
    if name not in _FAMILIES:
        raise ParamOutOfRange(
            f"unknown family {name!r}; choices: "
            f"{sorted(_FAMILIES) + ['direct_product', 'semidirect']}"
        )
    ctor, arity = _FAMILIES[name]
    params = [int(p) for p in spec.params]
    if arity is None:
        return ctor(params)
    if len(params) != arity:
        raise ParamOutOfRange(
            f"family {name!r} takes {arity} parameter(s), got {len(params)}"
        )
    return ctor(*params)


def _mult_mod(n: int, factor: int) -> tuple[int, ...]:
    return tuple(x * factor % n for x in range(n))


def standard_corpus(max_order: int = 128) -> list[tuple[str, Group]]:
    """Curated list of (label, group) spanning all families, order-capped."""
    out: list[tuple[str, Group]] = []

    def add(g: Group) -> None:
        if g.order <= max_order:
            out.append((g.name, g))

    for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 16, 24, 32, 64, 128):
        if n <= max_order:
            add(cyclic(n))
    for mods in (
        (2, 2), (3, 3), (2, 4), (2, 2, 2), (5, 5), (2, 6), (4, 4),
        (2, 2, 4), (3, 9), (2, 2, 2, 2), (2, 2, 2, 2, 2), (2, 4, 8), (9, 9),
    ):
        if prod(mods) <= max_order:
            add(abelian_group(mods))
    for n in (2, 3, 4, 5, 6, 8, 9, 12, 16, 32, 64):
        if 2 * n <= max_order:
            add(dihedral(n))
    for m in (8, 16, 32, 64, 128):
        if m <= max_order:
            add(quaternion(m))
    for n in (2, 3, 4, 5):
        if n ** 3 <= max_order:
            add(heisenberg(n))
    for p in (3, 5):
        if p ** 3 <= max_order:
            add(extraspecial(p, p * p))
    for n in (3, 4, 5):
        add(symmetric(n))
    for n in (4, 5):
        add(alternating(n))

    c2 = cyclic(2)
    pairs = [
        (c2, symmetric(3)),
        (c2, dihedral(4)),
        (c2, quaternion(8)),
        (cyclic(3), quaternion(8)),
        (c2, alternating(4)),
        (symmetric(3), symmetric(3)),
        (c2, symmetric(4)),
    ]
    for a, b in pairs:
        if a.order * b.order <= max_order:
            add(direct_product(a, b))

    if 12 <= max_order:
        add(semidirect(cyclic(3), cyclic(4), {1: _mult_mod(3, 2)}, name="dicyclic(12)"))
    if 20 <= max_order:
        add(semidirect(cyclic(5), cyclic(4), {1: _mult_mod(5, 2)}, name="frobenius(20)"))
    if 21 <= max_order:
        add(semidirect(cyclic(7), cyclic(3), {1: _mult_mod(7, 2)}, name="frobenius(21)"))
    return out

"""Finitely generated abelian groups and the cohomology toolkit on them.

FgAbelian is the canonical form Z^free_rank + Z/d_1 + ... + Z/d_s with
d_1 | d_2 | ... .  On top of it: Hom/Ext/Tor/tensor by the cyclic gcd
rules, Kunneth and universal-coefficient assembly, the closed formula
for H^k((Z/p^a)^d; Z/p^b), the e/f counting recursions, and two
independent cochain-complex oracles (bar complex and tensor-of-periodic
resolutions) whose homology is extracted by exact Smith-style
elimination modulo prime powers.

>>> FgAbelian.from_orders([4, 6])
FgAbelian(free_rank=0, torsion=(2, 12))
>>> print(hom_ext_tor_tensor(cyclic_group(6), cyclic_group(4)).tor)
Z/2
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as _iproduct
from math import comb, gcd, prod

import numpy as np

from .config import Caps, active_caps
from .errors import OracleCapExceeded, ParamOutOfRange
from .groups import Group
from .intmat import is_prime, prime_factorization


@dataclass(frozen=True)
class FgAbelian:
    """Finitely generated abelian group in invariant-factor form."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ParamOutOfRange("free_rank must be nonnegative")
        for a, b in zip((1,) + self.torsion, self.torsion):
            if b < 2 or b % a:
                raise ParamOutOfRange(
                    f"torsion {self.torsion} is not a divisibility chain of factors >= 2"
                )

    @classmethod
    def from_orders(cls, orders, free_rank: int = 0) -> "FgAbelian":
        """Canonicalize arbitrary cyclic orders into an invariant chain.

        >>> FgAbelian.from_orders([2, 6, 1])
        FgAbelian(free_rank=0, torsion=(2, 6))
        >>> FgAbelian.from_orders([4, 6]).torsion
        (2, 12)
        """
        buckets: dict[int, list[int]] = {}
        for m in orders:
            m = int(m)
            if m < 1:
                raise ParamOutOfRange(f"cyclic order must be >= 1, got {m}")
            for p, e in prime_factorization(m):
                buckets.setdefault(p, []).append(e)
        for exps in buckets.values():
            exps.sort(reverse=True)
        depth = max((len(v) for v in buckets.values()), default=0)
        chain = []
        for i in range(depth):
            f = prod(p ** exps[i] for p, exps in buckets.items() if i < len(exps))
            chain.append(f)
        return cls(free_rank, tuple(reversed(chain)))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def torsion_order(self) -> int:
        return prod(self.torsion)

    def exponent(self) -> int:
        return self.torsion[-1] if self.torsion else 1

    def min_generators(self) -> int:
        return self.free_rank + len(self.torsion)

    def log_order(self, p: int) -> int:
        """log_p of the order, defined for finite p-groups of exponent p^k."""
        if self.free_rank:
            raise ParamOutOfRange("log_order needs a finite group")
        total = 0
        for d in self.torsion:
            while d % p == 0:
                d //= p
                total += 1
            if d != 1:
                raise ParamOutOfRange(f"not a {p}-group: factor remainder {d}")
        return total

    def primary_orders(self) -> tuple[int, ...]:
        """Sorted prime-power orders of the cyclic primary components."""
        out = []
        for d in self.torsion:
            out.extend(p ** e for p, e in prime_factorization(d))
        return tuple(sorted(out))

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


ZERO = FgAbelian()
Z = FgAbelian(1)


def cyclic_group(n: int) -> FgAbelian:
    """Z/n as an FgAbelian (trivial for n = 1)."""
    return FgAbelian.from_orders([n])


def direct_sum(*groups: FgAbelian) -> FgAbelian:
    orders: list[int] = []
    free = 0
    for g in groups:
        free += g.free_rank
        orders.extend(g.torsion)
    return FgAbelian.from_orders(orders, free)


def _tor_orders(A: FgAbelian, B: FgAbelian) -> list[int]:
    return [gcd(m, n) for m in A.torsion for n in B.torsion]


def hom_group(A: FgAbelian, B: FgAbelian) -> FgAbelian:
    free = A.free_rank * B.free_rank
    orders = [n for n in B.torsion for _ in range(A.free_rank)]
    orders += _tor_orders(A, B)
    return FgAbelian.from_orders(orders, free)


def ext_group(A: FgAbelian, B: FgAbelian) -> FgAbelian:
    orders = [m for m in A.torsion for _ in range(B.free_rank)]
    orders += _tor_orders(A, B)
    return FgAbelian.from_orders(orders)


def tor_group(A: FgAbelian, B: FgAbelian) -> FgAbelian:
    return FgAbelian.from_orders(_tor_orders(A, B))


def tensor_group(A: FgAbelian, B: FgAbelian) -> FgAbelian:
    free = A.free_rank * B.free_rank
    orders = [n for n in B.torsion for _ in range(A.free_rank)]
    orders += [m for m in A.torsion for _ in range(B.free_rank)]
    orders += _tor_orders(A, B)
    return FgAbelian.from_orders(orders, free)


HomExtTorTensor = namedtuple("HomExtTorTensor", ["hom", "ext", "tor", "tensor"])


def hom_ext_tor_tensor(A: FgAbelian, B: FgAbelian) -> HomExtTorTensor:
    """Hom, Ext, Tor and tensor computed factor-by-factor.

    Cyclic rules: Hom(Z/m,Z/n) = Ext(Z/m,Z/n) = Tor(Z/m,Z/n) =
    Z/m (x) Z/n = Z/gcd(m,n); Hom(Z,B) = B; Ext(Z,.) = Tor(Z,.) = 0;
    Ext(Z/m,Z) = Z/m.

    >>> print(hom_ext_tor_tensor(cyclic_group(8), cyclic_group(4)).ext)
    Z/4
    """
    return HomExtTorTensor(
        hom_group(A, B), ext_group(A, B), tor_group(A, B), tensor_group(A, B)
    )


@dataclass(frozen=True)
class GradedAbelian:
    """FgAbelian entries indexed by degree 0..len-1; other degrees trivial."""

    entries: tuple[FgAbelian, ...]

    def degree(self, i: int) -> FgAbelian:
        if 0 <= i < len(self.entries):
            return self.entries[i]
        return ZERO

    def __len__(self) -> int:
        return len(self.entries)


def _as_graded(H) -> GradedAbelian:
    if isinstance(H, GradedAbelian):
        return H
    return GradedAbelian(tuple(H))


def kunneth_cohomology(HX, HY, k: int) -> FgAbelian:
    """Degree-k cohomology of a product from the factors' graded groups:
    sum of H^p (x) H^q over p+q = k plus Tor(H^p', H^q') over p'+q' = k+1.
    """
    HX, HY = _as_graded(HX), _as_graded(HY)
    if k < 0:
        return ZERO
    parts = [tensor_group(HX.degree(p), HY.degree(k - p)) for p in range(k + 1)]
    parts += [tor_group(HX.degree(p), HY.degree(k + 1 - p)) for p in range(k + 2)]
    return direct_sum(*parts)


def kunneth_homology(HX, HY, k: int) -> FgAbelian:
    """Homology Kunneth: tensor terms in degree k, Tor terms in k-1."""
    HX, HY = _as_graded(HX), _as_graded(HY)
    if k < 0:
        return ZERO
    parts = [tensor_group(HX.degree(p), HY.degree(k - p)) for p in range(k + 1)]
    parts += [tor_group(HX.degree(p), HY.degree(k - 1 - p)) for p in range(k)]
    return direct_sum(*parts)


def _as_coeff(coeff) -> FgAbelian:
    if isinstance(coeff, FgAbelian):
        return coeff
    n = int(coeff)
    if n == 0:
        return Z
    if n >= 1:
        return cyclic_group(n)
    raise ParamOutOfRange(f"coefficient modulus must be >= 0, got {coeff}")


def ucf_cohomology(H_lower: FgAbelian, H_this: FgAbelian, coeff) -> FgAbelian:
    """H^k from homology: Hom(H_k, coeff) + Ext(H_{k-1}, coeff).

    coeff is an FgAbelian, or an int n with n = 0 meaning Z and n >= 1
    meaning Z/n.
    """
    c = _as_coeff(coeff)
    return direct_sum(hom_group(H_this, c), ext_group(H_lower, c))


def elementary_cohomology_closed(k: int, d: int, p: int, a: int, b: int) -> FgAbelian:
    """H^k((Z/p^a)^d; Z/p^b) with trivial action, in closed form.

    For k >= 1 this is (Z/p^c)^C(k+d-1, d-1) with c = min(a, b).  For
    k = 0 the value is forced to be the coefficient module Z/p^b.
    """
    if k < 0 or d < 1 or a < 1 or b < 1:
        raise ParamOutOfRange("need k >= 0, d >= 1, a >= 1, b >= 1")
    if not is_prime(p):
        raise ParamOutOfRange(f"p must be prime, got {p}")
    if k == 0:
        return cyclic_group(p ** b)
    c = p ** min(a, b)
    return FgAbelian.from_orders([c] * comb(k + d - 1, d - 1))


@lru_cache(maxsize=None)
def _f(k: int, d: int) -> int:
    # number of Z/p^a summands in H^k(G_a^d; Z) for k >= 1, with the
    # degree-0 convention f(0, d) = 1 standing in for the Z summand
    if k == 0:
        return 1
    if d == 1:
        return 1 if k % 2 == 0 else 0
    total = sum(_f(k - 2 * l, d - 1) for l in range(k // 2 + 1))
    total += sum(_f(k + 1 - 2 * l, d - 1) for l in range(1, (k + 1) // 2 + 1)
                 if 2 * l < k + 1)
    return total


@lru_cache(maxsize=None)
def _e(k: int, d: int) -> int:
    # number of cyclic summands in H^k(G_a^d; G_b)
    if d == 1 or k == 0:
        return 1
    return sum(_e(j, d - 1) for j in range(k + 1))


def e_f_recursions(k: int, d: int) -> tuple[int, int]:
    """(f(k,d), e(k,d)) by the torsion-counting recursions.

    f counts torsion summands of the integral homology of (Z/p^a)^d
    (H_k = G_a^f(k+1,d) for k >= 1); e counts cyclic summands of
    H^k((Z/p^a)^d; Z/p^b) and must equal C(k+d-1, d-1).
    """
    if k < 0 or d < 1:
        raise ParamOutOfRange("need k >= 0 and d >= 1")
    return _f(k, d), _e(k, d)


def cyclic_integral_cohomology(k: int, m: int) -> FgAbelian:
    """H^k(Z/m; Z): Z at 0, 0 in odd degrees, Z/m in positive even ones."""
    if k < 0 or m < 1:
        raise ParamOutOfRange("need k >= 0 and m >= 1")
    if k == 0:
        return Z
    if k % 2:
        return ZERO
    return cyclic_group(m)


def cyclic_integral_homology(k: int, m: int) -> FgAbelian:
    """H_k(Z/m; Z): Z at 0, Z/m in odd degrees, 0 in positive even ones."""
    if k < 0 or m < 1:
        raise ParamOutOfRange("need k >= 0 and m >= 1")
    if k == 0:
        return Z
    if k % 2:
        return cyclic_group(m)
    return ZERO


def integral_homology_product(moduli, kmax: int) -> GradedAbelian:
    """H_0..H_kmax of B(Z/m_1 x ... x Z/m_d) by iterated Kunneth."""
    graded = GradedAbelian((Z,))
    for m in moduli:
        factor = GradedAbelian(
            tuple(cyclic_integral_homology(k, m) for k in range(kmax + 1))
        )
        graded = GradedAbelian(
            tuple(kunneth_homology(graded, factor, k) for k in range(kmax + 1))
        )
    return graded


# ---------------------------------------------------------------------------
# exact homology of cochain complexes modulo prime powers


def _min_valuation_pos(sub: np.ndarray, p: int, b: int):
    """(valuation, flat index) of the first minimal-valuation entry, or
    None if the block is zero mod p^b."""
    pk = p
    for v in range(b):
        cand = np.flatnonzero(sub.ravel() % pk)
        if cand.size:
            return v, int(cand[0])
        pk *= p
    return None


def _kernel_gens(M: np.ndarray, p: int, b: int) -> np.ndarray:
    """Rows generating {x in (Z/p^b)^m : M x = 0}, via diagonalization
    with column tracking (row operations are free for kernels)."""
    mod = p ** b
    A = np.asarray(M, dtype=np.int64) % mod
    R, m = A.shape
    C = np.eye(m, dtype=np.int64)
    pivot_vals: list[int] = []
    t = 0
    while t < min(R, m):
        sub = A[t:, t:]
        hit = _min_valuation_pos(sub, p, b)
        if hit is None:
            break
        v, flat = hit
        pi, pj = divmod(flat, sub.shape[1])
        pi += t
        pj += t
        if pi != t:
            A[[t, pi], :] = A[[pi, t], :]
        if pj != t:
            A[:, [t, pj]] = A[:, [pj, t]]
            C[:, [t, pj]] = C[:, [pj, t]]
        pk = p ** v
        uinv = pow(int(A[t, t]) // pk, -1, mod)
        cols = np.nonzero(A[t, t + 1:])[0] + t + 1
        if cols.size:
            qs = (A[t, cols] // pk * uinv) % mod
            A[:, cols] = (A[:, cols] - A[:, t:t + 1] * qs[None, :]) % mod
            C[:, cols] = (C[:, cols] - C[:, t:t + 1] * qs[None, :]) % mod
        rows = np.nonzero(A[t + 1:, t])[0] + t + 1
        if rows.size:
            qs = (A[rows, t] // pk * uinv) % mod
            A[rows, :] = (A[rows, :] - qs[:, None] * A[t:t + 1, :]) % mod
        pivot_vals.append(v)
        t += 1
    gens = []
    for j, v in enumerate(pivot_vals):
        if v > 0:
            gens.append(p ** (b - v) * C[:, j] % mod)
    for j in range(len(pivot_vals), m):
        gens.append(C[:, j] % mod)
    if not gens:
        return np.zeros((0, m), dtype=np.int64)
    return np.array(gens, dtype=np.int64)


def _span_log_size(rows: np.ndarray, p: int, b: int) -> int:
    """log_p of the size of the subgroup of (Z/p^b)^m spanned by rows."""
    mod = p ** b
    m = rows.shape[1]
    basis: dict[int, np.ndarray] = {}
    queue = [r % mod for r in rows]
    while queue:
        r = queue.pop()
        while True:
            nz = np.nonzero(r)[0]
            if nz.size == 0:
                break
            col = int(nz[0])
            x = int(r[col])
            v = 0
            while x % p == 0:
                x //= p
                v += 1
            cur = basis.get(col)
            if cur is None:
                r = (r * pow(x, -1, mod)) % mod  # leading entry becomes p^v
                basis[col] = r
                if v > 0:
                    # shadow row keeps the span Howell-complete: elements
                    # whose col entry dies must be spanned by later columns
                    queue.append((p ** (b - v) * r) % mod)
                break
            cv = 0
            c = int(cur[col])
            while c % p == 0:
                c //= p
                cv += 1
            if v >= cv:
                q = (int(r[col]) // p ** cv) * pow(c, -1, mod) % mod
                r = (r - q * cur) % mod
            else:
                queue.append(cur)
                r = (r * pow(x, -1, mod)) % mod
                basis[col] = r
                if v > 0:
                    queue.append((p ** (b - v) * r) % mod)
                break
    total = 0
    for col, row in basis.items():
        x = int(row[col])
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        total += b - v
    return total


def _quotient_orders(kernel: np.ndarray, image: np.ndarray, p: int, b: int) -> list[int]:
    """Cyclic orders of ker/im inside (Z/p^b)^m from size filtration."""
    mod = p ** b
    base = _span_log_size(image, p, b)
    logs = []
    for i in range(b + 1):
        scaled = (kernel * p ** i) % mod
        stacked = np.vstack([scaled, image]) if image.size else scaled
        logs.append(_span_log_size(stacked, p, b) - base)
    logs.append(0)
    orders = []
    for j in range(1, b + 1):
        c = (logs[j - 1] - logs[j]) - (logs[j] - logs[j + 1])
        orders.extend([p ** j] * c)
    return orders


def _homology_from_matrices(
    d_out: np.ndarray, d_in: np.ndarray | None, n: int
) -> FgAbelian:
    """ker(d_out)/im(d_in) as a Z/n-module, split by prime powers."""
    if n == 1:
        return ZERO
    orders: list[int] = []
    for p, e in prime_factorization(n):
        if p ** e > 1 << 20:
            raise OracleCapExceeded(f"modulus {p}^{e} too large for the oracle")
        kernel = _kernel_gens(d_out, p, e)
        if d_in is not None and d_in.size:
            image = np.asarray(d_in, dtype=np.int64).T % p ** e
        else:
            image = np.zeros((0, d_out.shape[1]), dtype=np.int64)
        orders.extend(_quotient_orders(kernel, image, p, e))
    return FgAbelian.from_orders(orders)


def _bar_matrix(G: Group, k: int) -> np.ndarray:
    """Matrix of the degree-k bar coboundary C^k -> C^{k+1}.

    C^k is the free module of all functions G^k -> Z/n; rows are indexed
    by (k+1)-tuples, columns by k-tuples, both in mixed-radix order.
    """
    n = G.order
    rows = n ** (k + 1)
    cols = n ** k
    M = np.zeros((rows, cols), dtype=np.int64)

    def pack(tup) -> int:
        idx = 0
        for g in tup:
            idx = idx * n + g
        return idx

    for row, tup in enumerate(_iproduct(range(n), repeat=k + 1)):
        M[row, pack(tup[1:])] += 1
        sign = -1
        for i in range(k):
            merged = tup[:i] + (G.mul(tup[i], tup[i + 1]),) + tup[i + 2:]
            M[row, pack(merged)] += sign
            sign = -sign
        M[row, pack(tup[:k])] += sign
    return M


def bar_cohomology_oracle(G: Group, k: int, n: int, caps: Caps | None = None) -> FgAbelian:
    """H^k(G; Z/n) for abelian G with trivial action, from the full bar
    cochain complex (cochains are all functions G^k -> Z/n).

    Caps: |G| <= caps.oracle_group_order, k <= 3, and each coboundary
    matrix at most caps.oracle_matrix_cells cells.
    """
    caps = caps or active_caps()
    if not G.is_abelian():
        raise ParamOutOfRange("bar oracle restricted to abelian groups")
    if n < 1:
        raise ParamOutOfRange(f"modulus must be >= 1, got {n}")
    if k < 0:
        raise ParamOutOfRange(f"degree must be >= 0, got {k}")
    if G.order > caps.oracle_group_order:
        raise OracleCapExceeded(
            f"bar oracle capped at |G| = {caps.oracle_group_order}, got {G.order}"
        )
    if k > 3:
        raise OracleCapExceeded(f"bar oracle capped at degree 3, got {k}")
    if G.order ** (2 * k + 1) > caps.oracle_matrix_cells:
        raise OracleCapExceeded(
            f"bar coboundary needs {G.order ** (2 * k + 1)} cells, "
            f"cap is {caps.oracle_matrix_cells}"
        )
    d_out = _bar_matrix(G, k)
    d_in = _bar_matrix(G, k - 1) if k >= 1 else None
    return _homology_from_matrices(d_out, d_in, n)


def _compositions(k: int, d: int) -> list[tuple[int, ...]]:
    if d == 1:
        return [(k,)]
    out = []
    for first in range(k + 1):
        for rest in _compositions(k - first, d - 1):
            out.append((first,) + rest)
    return out


def _resolution_matrix(moduli, k: int) -> np.ndarray:
    """Degree-k differential of the tensor of periodic resolutions.

    Basis of C^k: multidegrees alpha with |alpha| = k, lexicographic.
    Component alpha -> alpha + e_i carries 0 if alpha_i is even, else
    m_i, with Koszul sign (-1)^(alpha_1 + ... + alpha_{i-1}).
    """
    d = len(moduli)
    cols_idx = _compositions(k, d)
    rows_idx = _compositions(k + 1, d)
    pos = {a: i for i, a in enumerate(rows_idx)}
    M = np.zeros((len(rows_idx), len(cols_idx)), dtype=np.int64)
    for j, alpha in enumerate(cols_idx):
        sign = 1
        for i in range(d):
            # even alpha_i: zero component, and an even sign contribution
            if alpha[i] % 2 == 1:
                beta = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]
                M[pos[beta], j] += sign * moduli[i]
                sign = -sign
    return M


def resolution_cohomology_oracle(
    moduli, k: int, n: int, caps: Caps | None = None
) -> FgAbelian:
    """H^k(Z/m_1 x ... x Z/m_d; Z/n), trivial action, via the tensor of
    the standard two-periodic resolutions of the cyclic factors.

    Independent of the bar oracle and of the closed formula; the cochain
    spaces have dimension C(k+d-1, d-1) so large groups stay cheap.
    """
    caps = caps or active_caps()
    moduli = [int(m) for m in moduli]
    if any(m < 1 for m in moduli) or not moduli:
        raise ParamOutOfRange(f"moduli must be positive, got {moduli}")
    if n < 1:
        raise ParamOutOfRange(f"modulus must be >= 1, got {n}")
    if k < 0:
        raise ParamOutOfRange(f"degree must be >= 0, got {k}")
    d = len(moduli)
    cells = comb(k + d, d - 1) * comb(k + d - 1, d - 1)
    if cells > caps.oracle_matrix_cells:
        raise OracleCapExceeded(
            f"resolution differential needs {cells} cells, "
            f"cap is {caps.oracle_matrix_cells}"
        )
    d_out = _resolution_matrix(moduli, k)
    d_in = _resolution_matrix(moduli, k - 1) if k >= 1 else None
    if d_in is not None and (d_out @ d_in).any():
        raise RuntimeError("resolution differential does not square to zero")
    return _homology_from_matrices(d_out, d_in, n)


if __name__ == "__main__":  # pragma: no cover
    import doctest

    doctest.testmod()

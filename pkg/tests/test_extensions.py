"""Central extensions: the commutator form, isotropic subgroups,
generation and Aut-index bounds, MNAS checks."""

from itertools import product as iproduct
from math import log2, prod

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from actionlab.errors import (
    IllDefined,
    IndexTooLarge,
    NotCentral,
    NotElementaryAbelian,
    NotPGroup,
)
from actionlab.extensions import (
    aut_pointwise_bound,
    brute_force_pointwise_count,
    central_extension,
    characteristic_core,
    corpus_central_extensions,
    elementary_reduction,
    generation_bound_check,
    hillar_rhea_aut_order,
    maximal_isotropic,
    max_abelian_generators,
    mnas_suite,
    omega_form,
    pointwise_fixed_aut_count,
    verify_omega_lifts,
)
from actionlab.families import (
    abelian_group,
    cyclic,
    dihedral,
    direct_product,
    extraspecial,
    heisenberg,
    quaternion,
    standard_corpus,
    symmetric,
)
from actionlab.groups import (
    abelian_basis,
    automorphism_group,
    center_subgroup,
    commutator_subgroup,
    enumerate_subgroups,
    full_subgroup,
    subgroup_from_mask,
    trivial_subgroup,
)


def center_ext(G):
    return central_extension(G, center_subgroup(G))


def test_omega_heisenberg3_symplectic():
    ext = center_ext(heisenberg(3))
    form = omega_form(ext)
    assert ext.A.order == 9
    assert form.p == 3
    assert len(form.basis) == 2
    assert form.values[0][0] == 0 and form.values[1][1] == 0
    assert form.values[0][1] != 0  # nondegenerate on the plane
    assert form.values[1][0] == ext.G.inv(form.values[0][1])
    assert form.z_omega.order == 3
    assert form.rank == 1


def test_omega_dihedral4_nondegenerate():
    ext = center_ext(dihedral(4))
    form = omega_form(ext)
    assert form.p == 2
    assert form.values[0][1] != 0
    assert form.z_omega.order == 2


def test_omega_trivial_on_abelian():
    G = abelian_group([2, 4])
    for Z in enumerate_subgroups(G):
        form = omega_form(central_extension(G, Z))
        assert all(w == 0 for row in form.values for w in row)
        assert form.z_omega.order == 1


def test_central_extension_rejects_bad_z():
    G = symmetric(3)
    rot = next(s for s in enumerate_subgroups(G) if s.order == 3)
    with pytest.raises(NotCentral):
        central_extension(G, rot)  # normal but not central
    D = dihedral(4)
    with pytest.raises(NotCentral):
        central_extension(D, trivial_subgroup(D))  # misses [G, G]


def test_verify_omega_lifts_small_corpus():
    for label, G in standard_corpus(max_order=32):
        for ext in corpus_central_extensions(G):
            assert verify_omega_lifts(ext, trials=20)


def brute_force_max_isotropic_order(form):
    A = form.ext.A
    best = 1
    for sub in enumerate_subgroups(A):
        if all(form.eval(x, y) == 0 for x in sub.members for y in sub.members):
            best = max(best, sub.order)
    return best


def test_maximal_isotropic_examples_and_maximality():
    # zero form on (Z/2)^3: everything is isotropic
    G = abelian_group([2, 2, 2])
    form = omega_form(central_extension(G, trivial_subgroup(G)))
    iso = maximal_isotropic(form)
    assert iso.dim == 3 and iso.subgroup.order == 8
    assert iso.preimage_abelian
    assert brute_force_max_isotropic_order(form) == 8

    # symplectic plane from heisenberg(3): lagrangian is a line
    form = omega_form(center_ext(heisenberg(3)))
    iso = maximal_isotropic(form)
    assert iso.dim == 1
    assert iso.preimage.order == 9 and iso.preimage_abelian
    assert brute_force_max_isotropic_order(form) == 3

    # symplectic plane + zero plane on (Z/2)^4: dimension 3
    G = direct_product(dihedral(4), abelian_group([2, 2]))
    Z = commutator_subgroup(G)  # the central order-2 subgroup of the D4 factor
    assert Z.order == 2
    form = omega_form(central_extension(G, Z))
    assert form.p == 2 and G.order // Z.order == 16
    iso = maximal_isotropic(form)
    assert iso.dim == 3
    assert iso.preimage_abelian
    assert brute_force_max_isotropic_order(form) == 8

    form = omega_form(center_ext(extraspecial(3, 9)))
    iso = maximal_isotropic(form)
    assert iso.dim == 1
    assert brute_force_max_isotropic_order(form) == 3


def test_isotropic_requires_elementary_quotient():
    ext = center_ext(heisenberg(4))  # quotient (Z/4)^2
    form = omega_form(ext)
    assert form.p is None
    with pytest.raises(NotElementaryAbelian):
        maximal_isotropic(form)


def test_elementary_reduction_enables_isotropic():
    ext = center_ext(heisenberg(4))
    red = elementary_reduction(ext, 2)
    assert red.G.order == 16
    assert red.Z.order == 4
    assert red.A.order == 4
    form = omega_form(red)
    assert form.p == 2
    iso = maximal_isotropic(form)
    assert iso.preimage_abelian
    # reduction of an already-elementary quotient is itself
    ext3 = center_ext(heisenberg(3))
    red3 = elementary_reduction(ext3, 3)
    assert red3.G.order == ext3.G.order


def test_generation_bound_examples():
    rep = generation_bound_check(center_ext(heisenberg(3)))
    assert (rep.s, rep.r, rep.z_order, rep.bound) == (2, 2, 3, 5)
    assert rep.ok and rep.witness_abelian

    rep = generation_bound_check(center_ext(extraspecial(5, 5)))
    assert (rep.s, rep.r, rep.z_order) == (2, 2, 5)
    assert rep.bound == 6 and rep.ok

    G = abelian_group([2, 4])
    rep = generation_bound_check(central_extension(G, trivial_subgroup(G)))
    assert rep.s == 2 and rep.s <= rep.r


@given(st.integers(min_value=1, max_value=8), st.integers(min_value=1, max_value=10 ** 6))
def test_generation_bound_formula_is_exact_floor(r, m):
    # r + bit_length(m^r) - 1 == floor(r (log2 m + 1))
    bound = r + (m ** r).bit_length() - 1
    k = bound - r
    assert 2 ** k <= m ** r < 2 ** (k + 1)


def test_max_abelian_generators():
    assert max_abelian_generators(abelian_group([2, 2, 4])) == 3
    assert max_abelian_generators(heisenberg(3)) == 2
    assert max_abelian_generators(symmetric(4)) == 2  # the Klein subgroup


def test_hillar_rhea_matches_enumeration():
    cases = [
        ((1,), 2), ((1,), 3), ((2,), 2), ((2,), 3), ((1, 1), 2), ((1, 1), 3),
        ((1, 2), 2), ((1, 1, 1), 2), ((2, 2), 2), ((1, 2), 3), ((3,), 2),
    ]
    for lams, p in cases:
        A = abelian_group([p ** l for l in lams])
        assert hillar_rhea_aut_order(lams, p) == len(automorphism_group(A))


def test_aut_pointwise_frozen_examples():
    A = cyclic(4)
    two = subgroup_from_mask(A, 0b101)
    rep = aut_pointwise_bound(A, two)
    assert rep.count == 2 and rep.bound == 2 and rep.ok

    A = abelian_group([3, 3])
    rep = aut_pointwise_bound(A, trivial_subgroup(A))
    assert rep.count == 48
    assert rep.bound == 9 ** 4 and rep.ok

    rep = aut_pointwise_bound(A, full_subgroup(A))
    assert rep.count == 1 and rep.bound == 1 and rep.ok


def test_aut_pointwise_engine_vs_brute_force_small():
    shapes = [
        (2, (1,)), (2, (2,)), (2, (1, 1)), (2, (3,)), (2, (1, 2)),
        (2, (1, 1, 1)), (2, (4,)), (2, (1, 3)), (2, (2, 2)), (2, (1, 1, 2)),
        (2, (1, 1, 1, 1)), (3, (1,)), (3, (2,)), (3, (1, 1)), (3, (1, 2)),
        (3, (1, 1, 1)), (5, (1,)), (5, (2,)),
    ]
    for p, lams in shapes:
        A = abelian_group([p ** l for l in lams])
        auts = np.array(automorphism_group(A), dtype=np.int64)
        subs = enumerate_subgroups(A)
        for B in subs:
            got = aut_pointwise_bound(A, B)
            members = np.array(B.members, dtype=np.int64)
            want = int((auts[:, members] == members).all(axis=1).sum())
            assert got.count == want, (p, lams, B.members)
            assert got.count <= got.bound
        # the module's own slow path agrees at the extremes
        assert brute_force_pointwise_count(A, subs[0]) == len(auts)
        assert brute_force_pointwise_count(A, subs[-1]) == 1 or A.order == 1


def _independent_fixed_aut_count(lams, p, bcoords):
    """Third implementation: enumerate every endomorphism matrix, keep
    automorphisms (invertible mod p by Nakayama), count those fixing the
    listed coordinate vectors.  Column j of a matrix is the image of
    generator j; hom constraint m[i][j] = p^max(0, li-lj) * c."""
    n = len(lams)
    orders = [p ** l for l in lams]
    ranges = [
        [p ** max(0, lams[i] - lams[j]) * c % orders[i]
         for c in range(p ** min(lams[i], lams[j]))]
        for i in range(n) for j in range(n)
    ]
    total = prod(len(r) for r in ranges)
    mats = np.zeros((total, n, n), dtype=np.int64)
    reps = total
    for pos, vals in enumerate(ranges):
        reps //= len(vals)
        i, j = divmod(pos, n)
        tile = total // (reps * len(vals))
        col = np.tile(np.repeat(np.array(vals, dtype=np.int64), reps), tile)
        mats[:, i, j] = col
    # invertibility over F_p via elimination on a scratch copy
    m = mats % p
    alive = np.ones(total, dtype=bool)
    for col in range(n):
        pivoted = m[:, col, col] % p != 0
        for r in range(col + 1, n):
            swap = alive & ~pivoted & (m[:, r, col] % p != 0)
            if swap.any():
                tmp = m[swap, col, :].copy()
                m[swap, col, :] = m[swap, r, :]
                m[swap, r, :] = tmp
                pivoted |= swap
        alive &= pivoted
        if not alive.any():
            return 0
        pivvals = m[:, col, col].copy()
        pivvals[~alive] = 1
        inv = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
        m[:, col, :] = m[:, col, :] * inv[pivvals % p][:, None] % p
        for r in range(col + 1, n):
            m[:, r, :] = (m[:, r, :] - m[:, r, col][:, None] * m[:, col, :]) % p
    keep = alive
    for v in bcoords:
        vec = np.array(v, dtype=np.int64)
        img = mats @ vec
        ok = np.ones(total, dtype=bool)
        for i in range(n):
            ok &= img[:, i] % orders[i] == vec[i] % orders[i]
        keep = keep & ok
    return int(keep.sum())


def test_aut_pointwise_engine_vs_matrix_validator_order64():
    shapes = [
        (2, (6,)), (2, (1, 5)), (2, (2, 4)), (2, (3, 3)), (2, (1, 2, 3)),
        (2, (1, 1, 4)), (2, (2, 2, 2)), (2, (1, 1, 1, 3)),
        (3, (1, 3)), (3, (2, 2)), (3, (1, 1, 2)),
    ]
    for p, lams in shapes:
        n = len(lams)
        orders = [p ** l for l in lams]
        # B ranges over all cyclic subgroups, via deduped generators
        seen = set()
        bsets = [()]
        for coords in iproduct(*[range(o) for o in orders]):
            if not any(coords):
                continue
            members = set()
            cur = coords
            while any(cur):
                members.add(cur)
                cur = tuple((a + b) % o for a, b, o in zip(cur, coords, orders))
            key = frozenset(members)
            if key not in seen:
                seen.add(key)
                bsets.append(tuple(sorted(members)))
        for bcoords in bsets:
            got = pointwise_fixed_aut_count(lams, p, bcoords)
            want = _independent_fixed_aut_count(lams, p, bcoords)
            assert got == want, (p, lams, bcoords)


def test_aut_pointwise_regression_coupled_shape():
    # Z/4 x Z/2 with B generated by (1, 1): the pointwise-fixing
    # endomorphism lattice does not split coordinatewise
    lams, p = (2, 1), 2
    b = ((1, 1),)
    got = pointwise_fixed_aut_count(lams, p, b)
    assert got == _independent_fixed_aut_count(lams, p, b)
    A = abelian_group([4, 2])
    ab = abelian_basis(A)
    member = ab.element_from_coords((1, 1))
    sub = next(
        s for s in enumerate_subgroups(A) if member in s.members and s.order == 4
    )
    if set(sub.members) == {0, member, A.mul(member, member),
                            A.mul(member, A.mul(member, member))}:
        assert aut_pointwise_bound(A, sub).count == got


def test_mnas_examples():
    rep = mnas_suite(abelian_group([2, 4]))
    assert len(rep.entries) == 1
    assert rep.entries[0].subgroup.order == 8
    assert rep.all_injective and rep.all_bounds_ok

    rep = mnas_suite(dihedral(4))
    orders = {e.subgroup.order for e in rep.entries}
    assert orders == {4}
    assert rep.all_injective and rep.all_bounds_ok

    rep = mnas_suite(heisenberg(3))
    assert all(e.subgroup.order == 9 and e.index == 3 for e in rep.entries)
    assert rep.all_injective and rep.all_bounds_ok

    with pytest.raises(NotPGroup):
        mnas_suite(symmetric(3))


def test_mnas_corpus_p_groups_order16():
    from actionlab.intmat import prime_factorization

    for label, G in standard_corpus(max_order=16):
        if G.order == 1 or len(prime_factorization(G.order)) != 1:
            continue
        rep = mnas_suite(G)
        assert rep.all_injective
        assert rep.all_bounds_ok


def test_characteristic_core_examples():
    G = symmetric(3)
    A3 = next(s for s in enumerate_subgroups(G) if s.order == 3)
    rep = characteristic_core(G, A3, 2)
    assert rep.aut_core.order == 3
    assert rep.characteristic
    assert rep.orbit_size == 1
    assert rep.aut_order == 6

    K = abelian_group([2, 2])
    line = next(s for s in enumerate_subgroups(K) if s.order == 2)
    rep = characteristic_core(K, line, 2)
    assert rep.aut_core.order == 1
    assert rep.power_core.order == 1
    assert rep.ok

    rep = characteristic_core(K, full_subgroup(K), 1)
    assert rep.aut_core.order == 4 and rep.index_in_a == 1

    with pytest.raises(IndexTooLarge):
        characteristic_core(G, trivial_subgroup(G), 2)


def test_corpus_central_extensions_structure():
    # quaternion(16): [G,G] has order 4 but the center has order 2,
    # so no central subgroup yields an abelian quotient
    assert corpus_central_extensions(quaternion(16)) == []
    exts = corpus_central_extensions(heisenberg(3))
    assert len(exts) == 1 and exts[0].Z.order == 3
    G = abelian_group([2, 2])
    assert len(corpus_central_extensions(G)) == len(enumerate_subgroups(G))
    total = sum(
        len(corpus_central_extensions(G)) for _, G in standard_corpus(max_order=64)
    )
    assert total == 699

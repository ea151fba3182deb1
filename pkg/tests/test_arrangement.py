import random
from itertools import combinations

import pytest
import sympy
from hypothesis import given, strategies as st

from idealtype.arrangement import (
    Arrangement,
    ArrangementError,
    Flat,
    FlatBudgetExceeded,
    build_lattice,
    characteristic_polynomial,
    flat_basis,
    from_ideal,
    integer_roots,
    is_modular,
    is_supersolvable,
    localization,
    poly_str,
    product,
    restrict_to_subspace,
    restriction,
    split_over_integers,
    supersolvable_exponents,
)
from idealtype.certify import _check
from idealtype.families import build_Jn, build_Jn_r, build_Kn
from idealtype.ideals import Ideal, enumerate_ideals, ideal_generated_by
from idealtype.roots import build_root_system, maximal_parabolic, parse_root_label
from oracles import (
    finite_field_count,
    good_primes,
    mobius_by_definition,
    modular_by_subspaces,
    poly_eval,
)


def boolean(n):
    return Arrangement(n, [[int(i == j) for j in range(n)] for i in range(n)])


def expand(roots):
    t = sympy.symbols("t")
    p = sympy.Poly(sympy.prod([t - r for r in roots]), t)
    return tuple(int(c) for c in reversed(p.all_coeffs()))


def chi(arr):
    return characteristic_polynomial(build_lattice(arr))


K3 = Arrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1)])


def test_rejects_degenerate_normals():
    with pytest.raises(ArrangementError):
        Arrangement(2, [(1, 0), (2, 0)])
    with pytest.raises(ArrangementError):
        Arrangement(2, [(0, 0)])
    with pytest.raises(ArrangementError):
        Arrangement(2, [(1, 0, 0)])


def test_boolean_lattice():
    lat = build_lattice(boolean(3))
    assert len(lat) == 8
    assert [len(l) for l in lat.levels] == [1, 3, 3, 1]
    assert characteristic_polynomial(lat) == expand([1, 1, 1])


def test_k3_lattice():
    lat = build_lattice(K3)
    assert [len(l) for l in lat.levels] == [1, 6, 9, 1]
    sizes = sorted(f.hyperplane_set.bit_count() for f in lat.levels[2])
    assert sizes == [2] * 6 + [3] * 3
    assert characteristic_polynomial(lat) == (-7, 12, -6, 1)
    assert split_over_integers(characteristic_polynomial(lat)) is None
    assert integer_roots(characteristic_polynomial(lat)) == [1]


def test_full_a2():
    rs = build_root_system("A", 2)
    lat = build_lattice(from_ideal(rs, Ideal(rs, 0)))
    assert len(lat.levels[1]) == 3
    assert lat.mobius[lat.center.hyperplane_set] == 2


def test_from_ideal_sizes():
    g2 = build_root_system("G", 2)
    assert len(from_ideal(g2, Ideal(g2, g2.full_mask))) == 0
    top = ideal_generated_by(g2, [g2.highest_root])
    assert len(from_ideal(g2, top)) == 5


def test_budget_error_names_level():
    with pytest.raises(FlatBudgetExceeded) as exc:
        build_lattice(K3, flat_budget=8)
    assert exc.value.level == 2
    assert "rank-2" in str(exc.value)


def test_mobius_matches_definition():
    for arr in (K3, build_Jn(3), boolean(3)):
        lat = build_lattice(arr)
        assert lat.mobius == mobius_by_definition(lat)


def test_mobius_interval_sums_vanish():
    lat = build_lattice(build_Jn(3))
    for X in lat.flats[1:]:
        sub = lat.interval(X)
        assert sum(sub.mobius.values()) == 0


def test_jn_charpoly():
    assert chi(build_Jn(3)) == expand([1, 2, 3])


def test_poly_str():
    assert poly_str((-7, 12, -6, 1)) == "t^3 - 6t^2 + 12t - 7"
    assert poly_str((0, 0)) == "0"
    assert poly_str((0, -1)) == "-t"


@given(st.lists(st.integers(-4, 6), min_size=1, max_size=5))
def test_integer_roots_recovered(roots):
    assert split_over_integers(expand(roots)) == sorted(roots)


def test_localization_at_center_is_whole():
    lat = build_lattice(K3)
    assert localization(K3, lat.center).normals == K3.normals


def test_localization_rejects_non_flat():
    with pytest.raises(ArrangementError):
        localization(K3, Flat(0b11, 2))


def test_kn_localization():
    k4 = build_Kn(4)
    mask = sum(1 << i for i, v in enumerate(k4.normals) if v[3] == 0)
    X = build_lattice(k4).flat(mask)
    loc = localization(k4, X)
    assert len(loc) == len(build_Kn(3))
    assert chi(loc)[1:] == chi(build_Kn(3))  # one extra factor t from the free coordinate


def test_localization_is_parabolic_arrangement():
    rs = build_root_system("A", 3)
    for I in enumerate_ideals(rs):
        arr = from_ideal(rs, I)
        p = maximal_parabolic(rs, 2)
        mask = sum(1 << k for k, idx in enumerate(arr.labels) if p.member_mask >> idx & 1)
        assert arr.closure(mask) == mask


def test_restriction_boolean():
    b3 = boolean(3)
    lat = build_lattice(b3)
    X = lat.flat(1)
    r = restriction(b3, X)
    assert r.dim == 2 and chi(r) == expand([1, 1])
    assert restriction(b3, lat.center).dim == 0


@pytest.mark.parametrize("n", [3, 4])
def test_braid_restricted_to_x0_is_jn(n):
    braid = Arrangement(n + 1, [[(k == i) - (k == j) for k in range(n + 1)]
                                for i, j in combinations(range(n + 1), 2)])
    basis = [[int(k == i) for k in range(n + 1)] for i in range(1, n + 1)]
    r = restrict_to_subspace(braid, basis)
    jn = build_Jn(n)
    assert sorted(r.normals) == sorted(jn.normals)
    assert chi(r) == chi(jn)


def test_modular_basics():
    lat = build_lattice(K3)
    assert is_modular(lat, lat.center) and is_modular(lat, lat.bottom)
    assert all(is_modular(lat, a) for a in lat.levels[1])


@pytest.mark.parametrize("arr", [K3, build_Jn(3), build_Kn(4), build_Jn_r(4, 1)])
def test_modular_matches_subspace_oracle(arr):
    lat = build_lattice(arr)
    for X in lat.flats:
        assert is_modular(lat, X) == modular_by_subspaces(arr, lat, X)


def test_supersolvable_chain_is_modular():
    for arr in (boolean(3), build_Jn(4), build_Jn_r(5, 2)):
        lat = build_lattice(arr)
        chain = is_supersolvable(lat)
        assert chain is not None
        assert [f.rank for f in chain] == list(range(lat.rank + 1))
        assert all(is_modular(lat, f) for f in chain)
        ex = supersolvable_exponents(lat, chain)
        assert characteristic_polynomial(lat) == expand(ex + [0] * (arr.dim - lat.rank))


def test_k3_not_supersolvable():
    assert is_supersolvable(build_lattice(K3)) is None


def test_e6_example_not_supersolvable():
    rs = build_root_system("E", 6)
    I = ideal_generated_by(rs, [parse_root_label(rs, "00111/0")])
    lat = build_lattice(from_ideal(rs, I))
    assert is_supersolvable(lat) is None
    assert split_over_integers(characteristic_polynomial(lat)) == [1, 2, 3, 4, 5, 7]


def test_product():
    assert chi(product(boolean(2), Arrangement(1, []))) == expand([1, 1, 0])
    assert chi(product(boolean(2), boolean(3))) == chi(boolean(5))
    j52 = build_lattice(build_Jn_r(5, 2))
    prod = build_lattice(product(build_Jn(2), build_Jn(3)))
    assert [len(l) for l in j52.levels] == [len(l) for l in prod.levels]
    assert characteristic_polynomial(j52) == characteristic_polynomial(prod)


def _random_root_subarrangements(count, seed):
    rng = random.Random(seed)
    systems = [build_root_system(*tn) for tn in
               [("A", 3), ("B", 3), ("C", 3), ("A", 4), ("B", 4), ("D", 4), ("F", 4), ("G", 2), ("D", 5)]]
    out = []
    while len(out) < count:
        rs = rng.choice(systems)
        k = rng.randint(1, min(rs.size, 10))
        idx = sorted(rng.sample(range(rs.size), k))
        out.append(Arrangement(rs.rank, [rs.normals[i] for i in idx]))
    return out


def test_finite_field_oracle_small():
    for arr in _random_root_subarrangements(12, 7):
        coeffs = chi(arr)
        for q in good_primes(arr.normals, 3)[:3]:
            if q ** arr.dim > 200_000:
                continue
            assert finite_field_count(arr.dim, arr.normals, q) == poly_eval(coeffs, q)


def test_deletion_restriction_small():
    rng = random.Random(11)
    for arr in _random_root_subarrangements(25, 3):
        k = rng.randrange(len(arr))
        lat = build_lattice(arr)
        H = lat.flat(arr.closure(1 << k))
        lhs = characteristic_polynomial(lat)
        d = chi(arr.deletion(k))
        r = chi(restriction(arr, H)) + (0,)
        assert lhs == tuple(a - b for a, b in zip(d, r))


def test_flat_basis_dimension():
    lat = build_lattice(K3)
    for X in lat.flats:
        assert len(flat_basis(K3, X)) == K3.dim - X.rank

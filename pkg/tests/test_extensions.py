import itertools
import random
from fractions import Fraction

import pytest

from dehnq import (
    Cochain,
    DomainError,
    FiniteAbelianGroup,
    QuandleCocycle2,
    build_extension,
    coboundary,
    components,
    dihedral_quandle,
    is_cocycle2,
    iterated_mean,
    kappa,
    mean,
    pullback,
    trivial_quandle,
    verify_gmt,
    verify_quandle,
)
from dehnq.extensions import (
    cocycle_is_coboundary,
    coboundary_cocycle,
    enumerate_cocycles2,
    extension_table,
    zero_cocycle,
)

R3 = dihedral_quandle(3)
T2 = trivial_quandle(2)
Z2 = FiniteAbelianGroup((2,))
Z3 = FiniteAbelianGroup((3,))
Z2xZ2 = FiniteAbelianGroup((2, 2))

T2_COCYCLE = QuandleCocycle2(T2, Z3, (((0,), (1,)), ((0,), (0,))))


def test_group_basics():
    assert Z2xZ2.size == 4
    assert Z2xZ2.add((1, 0), (1, 1)) == (0, 1)
    assert Z2xZ2.neg((1, 1)) == (1, 1)
    assert [Z2xZ2.index(a) for a in Z2xZ2.elements()] == list(range(4))
    with pytest.raises(DomainError):
        FiniteAbelianGroup(())


def test_zero_cocycle_valid():
    assert is_cocycle2(zero_cocycle(R3, Z2))


def test_coboundary_cocycles_valid():
    for g in itertools.product(Z2.elements(), repeat=3):
        assert is_cocycle2(coboundary_cocycle(R3, Z2, list(g)))


def test_invalid_diagonal_rejected():
    phi = [[(0,)] * 3 for _ in range(3)]
    phi[0][0] = (1,)
    cand = QuandleCocycle2(R3, Z2, tuple(tuple(r) for r in phi))
    assert not is_cocycle2(cand)
    # the raw table then fails the idempotency axiom
    report = verify_quandle(extension_table(R3, Z2, cand.phi))
    assert not report.valid and report.first_violation[0] == 1


def test_cocycle_condition_iff_extension_is_quandle():
    rng = random.Random(0)
    elements = Z2.elements()
    for _ in range(120):
        phi = [[rng.choice(elements) for _ in range(3)] for _ in range(3)]
        cand = QuandleCocycle2(R3, Z2, tuple(tuple(r) for r in phi))
        table_ok = verify_quandle(extension_table(R3, Z2, cand.phi)).valid
        assert table_ok == is_cocycle2(cand)


def test_r3_z2_cocycle_census():
    # exactly four cocycles, all of coboundary form
    found = list(enumerate_cocycles2(R3, Z2))
    assert len(found) == 4
    assert all(cocycle_is_coboundary(c) for c in found)


def test_t2_z3_has_non_coboundary_cocycle():
    assert is_cocycle2(T2_COCYCLE)
    assert not cocycle_is_coboundary(T2_COCYCLE)


def test_build_extension_product_case():
    ext = build_extension(R3, Z2, zero_cocycle(R3, Z2))
    assert ext.size == 6
    assert verify_quandle(ext.quandle.table).valid
    assert ext.is_covering()
    # components follow the components(X) x A pattern
    assert components(ext.quandle) == ((0, 2, 4), (1, 3, 5))
    for e in range(6):
        assert ext.project(e) == e // 2


def test_build_extension_nonzero_cocycle():
    phi = coboundary_cocycle(R3, Z2, [(0,), (0,), (1,)])
    ext = build_extension(R3, Z2, phi)
    product = build_extension(R3, Z2, zero_cocycle(R3, Z2))
    assert ext.quandle.table != product.quandle.table
    assert ext.is_covering()


def test_build_extension_trivial_base():
    ext = build_extension(trivial_quandle(1), Z3, zero_cocycle(trivial_quandle(1), Z3))
    assert ext.quandle == trivial_quandle(3)


def test_build_extension_rejects_invalid():
    phi = [[(0,)] * 3 for _ in range(3)]
    phi[0][0] = (1,)
    with pytest.raises(DomainError):
        build_extension(R3, Z2, tuple(tuple(r) for r in phi))


def test_covering_symmetries_depend_on_base_only():
    ext = build_extension(T2, Z3, T2_COCYCLE)
    na = Z3.size
    for x in range(T2.size):
        ref = ext.quandle.symmetry(x * na)
        for ai in range(na):
            assert ext.quandle.symmetry(x * na + ai) == ref


def test_mean_properties():
    m = mean(Z3)
    assert m(lambda a: Fraction(7)) == 7
    assert m(lambda a: Fraction(a[0])) == 1
    # positivity and translation invariance
    f = {(0,): Fraction(1), (1,): Fraction(2), (2,): Fraction(4)}
    assert m(lambda a: f[a]) == Fraction(7, 3)
    for shift in Z3.elements():
        assert m(lambda a: f[Z3.add(shift, a)]) == Fraction(7, 3)
    assert abs(m(lambda a: f[a])) <= max(abs(v) for v in f.values())


def test_mean_on_two_elements():
    m = mean(Z2)
    assert m(lambda a: Fraction(a[0])) == Fraction(1, 2)


def test_iterated_mean_equals_plain_average():
    rng = random.Random(1)
    for n in (1, 2, 3, 4):
        table = {
            t: Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))
            for t in itertools.product(Z2.elements(), repeat=n)
        }
        got = iterated_mean(Z2, n, lambda t: table[t])
        want = sum(table.values()) / len(table)
        assert got == want


def test_mean_drop_law():
    rng = random.Random(2)
    for m_vars in (1, 2, 3):
        for _ in range(100):
            table = {
                t: Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))
                for t in itertools.product(Z3.elements(), repeat=m_vars)
            }
            axis = rng.randrange(m_vars + 1)
            wide = lambda t: table[t[:axis] + t[axis + 1 :]]
            assert iterated_mean(Z3, m_vars + 1, wide) == iterated_mean(
                Z3, m_vars, lambda t: table[t]
            )


def _random_cochain(rng, quandle, degree):
    return Cochain(
        quandle,
        degree,
        tuple(
            Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))
            for _ in range(quandle.size**degree)
        ),
    )


def test_kappa_constant_and_section():
    ext = build_extension(R3, Z2, zero_cocycle(R3, Z2))
    const = Cochain(ext.quandle, 2, (Fraction(5),) * 36)
    out = kappa(ext, 2, const)
    assert all(v == 5 for v in out.values)
    rng = random.Random(3)
    for degree in (1, 2, 3):
        g = _random_cochain(rng, R3, degree)
        assert kappa(ext, degree, pullback(ext, g)).values == g.values


def test_kappa_chain_map_and_norm():
    rng = random.Random(4)
    phi = coboundary_cocycle(R3, Z2, [(0,), (1,), (1,)])
    ext = build_extension(R3, Z2, phi)
    for degree in (1, 2):
        for _ in range(20):
            f = _random_cochain(rng, ext.quandle, degree)
            lhs = kappa(ext, degree + 1, coboundary(f))
            rhs = coboundary(kappa(ext, degree, f))
            assert lhs.values == rhs.values
            assert kappa(ext, degree, f).norm_inf() <= f.norm_inf()


def test_kappa_linear():
    rng = random.Random(5)
    ext = build_extension(T2, Z3, T2_COCYCLE)
    f = _random_cochain(rng, ext.quandle, 2)
    g = _random_cochain(rng, ext.quandle, 2)
    assert kappa(ext, 2, f + g).values == (kappa(ext, 2, f) + kappa(ext, 2, g)).values


def test_kappa_degree_mismatch():
    ext = build_extension(R3, Z2, zero_cocycle(R3, Z2))
    f = Cochain(ext.quandle, 2, (Fraction(0),) * 36)
    with pytest.raises(DomainError):
        kappa(ext, 3, f)
    g = Cochain(R3, 1, (Fraction(0),) * 3)
    with pytest.raises(DomainError):
        kappa(ext, 1, g)


def test_verify_gmt_fixtures_quick():
    rep = verify_gmt(R3, Z2, zero_cocycle(R3, Z2), n_max=2, trials=15, seed=9)
    assert rep["all_ok"]
    rep = verify_gmt(T2, Z3, T2_COCYCLE, n_max=2, trials=15, seed=9)
    assert rep["all_ok"]
    assert set(rep["degrees"]) == {1, 2}
    for deg_report in rep["degrees"].values():
        assert deg_report["pullback_injective_on_cohomology"]


def test_cocycle_json_round_trip():
    back = QuandleCocycle2.from_json(T2_COCYCLE.to_json())
    assert back == T2_COCYCLE

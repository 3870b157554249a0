import random
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dehnq import (
    ZERO_CURVE,
    CurveClass,
    DomainError,
    MappingClassT,
    WeightedMulticurve,
    braid_check,
    dehn_twist,
    distinct_four,
    intersection,
    normalize,
    op_c1,
    op_d1,
    op_w1,
    phi,
    phi_inverse,
    twist_matrix,
)
from dehnq.torus import (
    op_w1_inverse,
    parse_curve,
    parse_multicurve,
    primitive_classes,
)

coords = st.integers(min_value=-50, max_value=50)


def test_normalize_examples():
    assert normalize(0, 0) == CurveClass(0, 0)
    assert normalize(1, -2) == CurveClass(-1, 2)
    assert (normalize(1, -2).p, normalize(1, -2).q) == (-1, 2)
    assert (normalize(-3, 0).p, normalize(-3, 0).q) == (3, 0)


@given(p=coords, q=coords)
def test_normalize_is_sign_canonical(p, q):
    c = normalize(p, q)
    assert c == normalize(-p, -q)
    assert c.q > 0 or (c.q == 0 and c.p >= 0)


def test_intersection_examples():
    assert intersection(CurveClass(1, 0), CurveClass(0, 1)) == 1
    assert intersection(CurveClass(2, 3), CurveClass(2, 3)) == 0
    assert intersection(CurveClass(1, 0), CurveClass(3, 4)) == 4
    assert intersection(ZERO_CURVE, CurveClass(5, 7)) == 0


@given(p1=coords, q1=coords, p2=coords, q2=coords)
def test_intersection_symmetric(p1, q1, p2, q2):
    a, b = CurveClass(p1, q1), CurveClass(p2, q2)
    assert intersection(a, b) == intersection(b, a)


def test_twist_matrix_basis():
    assert twist_matrix(CurveClass(0, 1)).entries() == (1, 0, 1, 1)
    assert twist_matrix(CurveClass(2, 0)).entries() == (1, -2, 0, 1)
    # a twist fixes its own class
    for c in (CurveClass(0, 1), CurveClass(3, 5), CurveClass(4, 2)):
        base = c.primitive_part()[0] if not c.is_zero else c
        assert twist_matrix(c).apply(base) == base


def test_twist_matrix_rejects_zero():
    with pytest.raises(DomainError):
        twist_matrix(ZERO_CURVE)


def test_dehn_twist_examples():
    assert dehn_twist(CurveClass(0, 1), 1, CurveClass(1, 0)) == CurveClass(1, 1)
    assert dehn_twist(CurveClass(2, 3), 0, CurveClass(1, 0)) == CurveClass(1, 0)
    moved = dehn_twist(CurveClass(1, 2), 1, CurveClass(1, 0))
    assert moved == CurveClass(3, 4)
    assert intersection(moved, CurveClass(1, 0)) == intersection(CurveClass(1, 0), CurveClass(1, 2)) ** 2


def test_dehn_twist_matches_matrix_power():
    rng = random.Random(5)
    for _ in range(200):
        gamma = CurveClass(rng.randint(-9, 9), rng.randint(-9, 9))
        if gamma.is_zero:
            continue
        v = CurveClass(rng.randint(-9, 9), rng.randint(-9, 9))
        k = rng.randint(-4, 4)
        assert dehn_twist(gamma, k, v) == (twist_matrix(gamma) ** k).apply(v)


def test_dehn_twist_preserves_content():
    rng = random.Random(6)
    for _ in range(300):
        gamma = CurveClass(rng.randint(-9, 9), rng.randint(-9, 9))
        v = CurveClass(rng.randint(-20, 20), rng.randint(-20, 20))
        if gamma.is_zero:
            continue
        assert dehn_twist(gamma, rng.randint(-3, 3), v).content == v.content


def test_intersection_twist_power_identity():
    # i(T_gamma^k (a), a) = |k| * g^2(?) specializes to i(a,gamma)^2 for k=1 primitive
    rng = random.Random(7)
    for _ in range(300):
        a = CurveClass(rng.randint(-20, 20), rng.randint(-20, 20))
        gamma = CurveClass(rng.randint(-9, 9), rng.randint(-9, 9))
        if gamma.is_zero or not gamma.is_primitive:
            continue
        k = rng.randint(-4, 4)
        lhs = intersection(dehn_twist(gamma, k, a), a)
        assert lhs == abs(k) * intersection(a, gamma) ** 2


def test_op_d1_conventions():
    b = CurveClass(2, 1)
    assert op_d1(b, b) == b
    assert op_d1(CurveClass(1, 0), CurveClass(0, 1)) == CurveClass(1, 1)
    assert op_d1(b, ZERO_CURVE) == b
    assert op_d1(ZERO_CURVE, b) == ZERO_CURVE
    with pytest.raises(DomainError):
        op_d1(CurveClass(2, 4), b)


def test_op_c1_examples():
    assert op_c1(CurveClass(1, 0), CurveClass(0, 2)) == CurveClass(1, 2)
    assert op_c1(CurveClass(2, 0), CurveClass(0, 1)) == CurveClass(2, 2)
    assert op_c1(ZERO_CURVE, CurveClass(3, 1)) == ZERO_CURVE
    assert op_c1(CurveClass(3, 1), ZERO_CURVE) == CurveClass(3, 1)


def test_op_w1_examples():
    x = WeightedMulticurve(0, 1, CurveClass(1, 0))
    y = WeightedMulticurve(0, 3, CurveClass(0, 1))
    assert op_w1(x, y) == WeightedMulticurve(0, 1, CurveClass(1, 3))
    mixed = WeightedMulticurve(2, 5, CurveClass(1, 0))
    assert op_w1(mixed, WeightedMulticurve(1, None, None)) == mixed
    assert op_w1(mixed, mixed) == mixed


def _random_w1(rng, cap=40):
    zero_weight = rng.randint(-3, 3)
    if rng.random() < 0.2:
        return WeightedMulticurve(zero_weight, None, None)
    while True:
        base = CurveClass(rng.randint(-cap, cap), rng.randint(-cap, cap))
        if base.is_primitive:
            break
    return WeightedMulticurve(zero_weight, rng.choice((-3, -2, -1, 1, 2, 3)), base)


def test_w1_quandle_axioms_sampled():
    rng = random.Random(11)
    for _ in range(500):
        x, y, z = _random_w1(rng), _random_w1(rng), _random_w1(rng)
        assert op_w1(x, x) == x
        assert op_w1_inverse(op_w1(x, y), y) == x
        assert op_w1(op_w1_inverse(x, y), y) == x
        assert op_w1(op_w1(x, y), z) == op_w1(op_w1(x, z), op_w1(y, z))


def test_phi_examples():
    assert phi(CurveClass(2, 4)) == WeightedMulticurve(0, 2, CurveClass(1, 2))
    assert phi(CurveClass(1, 1)) == WeightedMulticurve(0, 1, CurveClass(1, 1))
    assert phi(ZERO_CURVE) == WeightedMulticurve(1, None, None)


def test_phi_inverse_examples():
    assert phi_inverse(WeightedMulticurve(0, 2, CurveClass(1, 2))) == CurveClass(2, 4)
    assert phi_inverse(WeightedMulticurve(1, None, None)) == ZERO_CURVE
    with pytest.raises(DomainError):
        phi_inverse(WeightedMulticurve(0, -1, CurveClass(1, 2)))
    with pytest.raises(DomainError):
        phi_inverse(WeightedMulticurve(2, None, None))
    with pytest.raises(DomainError):
        phi_inverse(WeightedMulticurve(1, 2, CurveClass(1, 2)))


def test_phi_round_trip_random():
    rng = random.Random(13)
    for _ in range(1000):
        c = CurveClass(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
        assert phi_inverse(phi(c)) == c


def test_phi_is_homomorphism_random():
    rng = random.Random(17)
    for _ in range(500):
        a = CurveClass(rng.randint(-100, 100), rng.randint(-100, 100))
        b = CurveClass(rng.randint(-100, 100), rng.randint(-100, 100))
        assert phi(op_c1(b, a)) == op_w1(phi(b), phi(a))


def test_braid_check():
    assert braid_check(CurveClass(1, 0), CurveClass(0, 1))
    assert braid_check(CurveClass(1, 1), CurveClass(0, 1))
    with pytest.raises(DomainError):
        braid_check(CurveClass(1, 0), CurveClass(1, 0))
    with pytest.raises(DomainError):
        braid_check(CurveClass(1, 0), CurveClass(1, 2))


def test_braid_check_all_unit_pairs_in_box():
    pool = primitive_classes(12)
    count = 0
    for a in pool:
        for b in pool:
            if intersection(a, b) == 1:
                assert braid_check(a, b)
                count += 1
    assert count > 100


def test_distinct_four():
    assert distinct_four(CurveClass(1, 0), CurveClass(0, 1))
    assert distinct_four(CurveClass(1, 0), CurveClass(1, 2))
    with pytest.raises(DomainError):
        distinct_four(CurveClass(1, 0), CurveClass(1, 0))


def test_distinct_four_sampled():
    rng = random.Random(19)
    pool = primitive_classes(50)
    checked = 0
    while checked < 2000:
        a, b = rng.choice(pool), rng.choice(pool)
        if a == b or intersection(a, b) < 1:
            continue
        checked += 1
        assert distinct_four(a, b)


def test_equivariance_under_mapping_classes():
    rng = random.Random(23)
    for _ in range(200):
        m = MappingClassT.identity()
        for _ in range(rng.randint(1, 4)):
            gamma = CurveClass(rng.randint(-5, 5), rng.randint(-5, 5))
            if gamma.is_zero:
                continue
            m = m @ (twist_matrix(gamma) ** rng.choice((-1, 1)))
        alpha = CurveClass(rng.randint(-9, 9), rng.randint(-9, 9))
        if alpha.is_zero:
            continue
        assert twist_matrix(m.apply(alpha)) == m @ twist_matrix(alpha) @ m.inverse()


def _reduced_words(depth):
    letters = [("a", 1), ("a", -1), ("b", 1), ("b", -1)]
    words = [()]
    frontier = [()]
    for _ in range(depth):
        nxt = []
        for w in frontier:
            for letter in letters:
                if w and w[-1][0] == letter[0] and w[-1][1] == -letter[1]:
                    continue
                nxt.append(w + (letter,))
        words.extend(nxt)
        frontier = nxt
    return words


@pytest.mark.parametrize("pair", [(CurveClass(1, 0), CurveClass(1, 2)),
                                  (CurveClass(0, 1), CurveClass(2, 1))])
def test_twists_generate_free_group_spot_check(pair):
    # all reduced words of length <= 6 in the two twists are distinct mod +-I
    a, b = pair
    assert intersection(a, b) >= 2
    mats = {"a": twist_matrix(a), "b": twist_matrix(b)}
    seen = {}
    for word in _reduced_words(6):
        m = MappingClassT.identity()
        for name, e in word:
            m = m @ (mats[name] ** e)
        assert m.entries() not in seen, f"collision {word} vs {seen[m.entries()]}"
        seen[m.entries()] = word
    assert len(seen) == 1457


def test_mapping_class_validation():
    with pytest.raises(DomainError):
        MappingClassT(1, 0, 0, 2)
    m = MappingClassT(-1, 0, 0, -1)
    assert m == MappingClassT.identity()


def test_mapping_class_pow_matches_repeated_product():
    m = twist_matrix(CurveClass(2, 3))
    acc = MappingClassT.identity()
    for k in range(5):
        assert m**k == acc
        acc = acc @ m
    assert m**-3 == (m.inverse()) ** 3


def test_primitive_classes_box():
    pool = primitive_classes(5)
    assert CurveClass(1, 0) in pool and CurveClass(0, 1) in pool
    assert all(c.is_primitive for c in pool)
    assert all(max(abs(c.p), abs(c.q)) <= 5 for c in pool)
    # every in-box primitive normal form appears exactly once
    assert len(pool) == len(set(pool))
    brute = {
        CurveClass(p, q)
        for p in range(-5, 6)
        for q in range(-5, 6)
        if gcd(abs(p), abs(q)) == 1
    }
    assert set(pool) == brute


def test_parse_curve_and_multicurve():
    assert parse_curve("1/0") == CurveClass(1, 0)
    assert parse_curve("(1,-2)") == CurveClass(-1, 2)
    assert parse_curve("o") == ZERO_CURVE
    w = parse_multicurve("2*o + 3*(1,2)")
    assert w == WeightedMulticurve(2, 3, CurveClass(1, 2))
    assert parse_multicurve("1*o - 2*(1,0)") == WeightedMulticurve(1, -2, CurveClass(1, 0))
    with pytest.raises(DomainError):
        parse_curve("nonsense")
    with pytest.raises(DomainError):
        parse_multicurve("1*(1,0) + 1*(0,1)")


def test_multicurve_validation():
    with pytest.raises(DomainError):
        WeightedMulticurve(0, 0, CurveClass(1, 0))
    with pytest.raises(DomainError):
        WeightedMulticurve(0, 2, CurveClass(2, 4))
    with pytest.raises(DomainError):
        WeightedMulticurve(0, 2, None)


def test_json_round_trips():
    c = CurveClass(3, -4)
    assert CurveClass.from_json(c.to_json()) == c
    w = WeightedMulticurve(1, 2, CurveClass(1, 2))
    assert WeightedMulticurve.from_json(w.to_json()) == w
    assert WeightedMulticurve.from_json(WeightedMulticurve.zero().to_json()) == WeightedMulticurve.zero()

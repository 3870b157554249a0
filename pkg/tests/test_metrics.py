import random

import pytest

from dehnq import (
    BfsConfig,
    CurveClass,
    DomainError,
    MappingClassT,
    ResourceCapError,
    farey_distance,
    intersection,
    min_twist_word_length,
    quandle_distance,
    twist_matrix,
)
from dehnq.metrics import replay_path, twist_word_matrix
from dehnq.torus import ZERO_CURVE, dehn_twist, primitive_classes

CFG = BfsConfig(coord_cap=200, twist_cap=30, depth_cap=6)
SMALL = BfsConfig(coord_cap=60, twist_cap=10, depth_cap=5)


def test_distance_zero_and_one():
    a = CurveClass(1, 0)
    r = quandle_distance(a, a, CFG)
    assert (r.value, r.exact_within_caps, r.path) == (0, True, ())
    r = quandle_distance(a, CurveClass(1, 1), CFG)
    assert r.value == 1
    assert replay_path(a, r.path) == CurveClass(1, 1)


def test_distance_braid_route_to_dual_curve():
    # one twist about T_(1,0)((0,1)) = (-1,1) carries (1,0) to (0,1)
    a, b = CurveClass(1, 0), CurveClass(0, 1)
    r = quandle_distance(a, b, CFG)
    assert r.value == 1
    assert replay_path(a, r.path) == b


def test_distance_ladder_exact_values():
    # single-twist images of (1,0) are (1 + e*p*q, e*q^2); e*q^2 = +-2, +-3
    # has no solution, so (1,2) and (1,3) are not one step away, while
    # T_(1,2)^{-1}((1,0)) = (-1,-4) ~ (1,4) is.  The resulting exact values:
    a = CurveClass(1, 0)
    expected = {1: 1, 2: 2, 3: 2, 4: 1}
    for n, want in expected.items():
        r = quandle_distance(a, CurveClass(1, n), CFG)
        assert r.value == want, f"(1,{n})"
        assert replay_path(a, r.path) == CurveClass(1, n)
        assert len(r.path) == r.value


def test_distance_one_twist_reachability_is_complete():
    # exhaustive one-step check agrees with the BFS on a small box
    a = CurveClass(1, 0)
    one_step = set()
    for gamma in primitive_classes(SMALL.twist_cap):
        for e in (-1, 1):
            img = dehn_twist(gamma, e, a)
            if max(abs(img.p), abs(img.q)) <= SMALL.coord_cap:
                one_step.add(img)
    for target in sorted(one_step, key=lambda c: (c.p, c.q))[:40]:
        if target == a:
            continue
        assert quandle_distance(a, target, SMALL).value == 1


def test_gap_witness_pair():
    a, b = CurveClass(1, 0), CurveClass(3, 4)
    dq = quandle_distance(a, b, CFG)
    df = farey_distance(a, b, CFG)
    assert dq.value == 1 and df.value == 2
    assert replay_path(a, df.path) == b


def test_quandle_leq_farey_on_samples():
    rng = random.Random(3)
    pool = primitive_classes(12)
    for _ in range(30):
        x, y = rng.choice(pool), rng.choice(pool)
        dq = quandle_distance(x, y, SMALL)
        df = farey_distance(x, y, SMALL)
        if dq.exact_within_caps and df.exact_within_caps:
            assert dq.value <= df.value


def test_symmetry_and_triangle_inequality():
    rng = random.Random(4)
    pool = primitive_classes(10)
    pts = [rng.choice(pool) for _ in range(6)]
    for fn in (quandle_distance, farey_distance):
        vals = {}
        for x in pts:
            for y in pts:
                r = fn(x, y, SMALL)
                assert r.exact_within_caps
                vals[(x, y)] = r.value
        for x in pts:
            for y in pts:
                assert vals[(x, y)] == vals[(y, x)]
                for z in pts:
                    assert vals[(x, z)] <= vals[(x, y)] + vals[(y, z)]


def test_monotone_in_caps():
    a, b = CurveClass(1, 0), CurveClass(5, 3)
    tight = BfsConfig(coord_cap=40, twist_cap=6, depth_cap=4)
    loose = BfsConfig(coord_cap=200, twist_cap=30, depth_cap=6)
    r_tight = quandle_distance(a, b, tight)
    r_loose = quandle_distance(a, b, loose)
    assert r_loose.exact_within_caps
    if r_tight.exact_within_caps:
        assert r_loose.value <= r_tight.value


def test_farey_examples():
    a = CurveClass(1, 0)
    assert farey_distance(a, CurveClass(0, 1), CFG).value == 1
    # (1,0)-(0,1)-(1,n) is a two-edge walk for every n >= 2
    for n in (2, 3, 4, 7):
        r = farey_distance(a, CurveClass(1, n), CFG)
        assert r.value == 2
        assert replay_path(a, r.path) == CurveClass(1, n)


def test_farey_neighbors_have_intersection_one():
    r = farey_distance(CurveClass(2, 1), CurveClass(5, 3), CFG)
    assert r.exact_within_caps
    walk = [CurveClass(2, 1)]
    for gamma, e in r.path:
        walk.append(dehn_twist(gamma, e, walk[-1]))
    for u, v in zip(walk, walk[1:]):
        assert intersection(u, v) == 1


def test_unreached_when_caps_too_small():
    cfg = BfsConfig(coord_cap=40, twist_cap=3, depth_cap=1)
    r = quandle_distance(CurveClass(1, 0), CurveClass(11, 7), cfg)
    assert r.value is None and not r.exact_within_caps


def test_cross_component_rejected():
    with pytest.raises(DomainError):
        quandle_distance(CurveClass(1, 0), ZERO_CURVE, CFG)
    with pytest.raises(DomainError):
        quandle_distance(CurveClass(2, 4), CurveClass(1, 0), CFG)
    with pytest.raises(DomainError):
        farey_distance(CurveClass(1, 0), CurveClass(400, 1), CFG)


def test_twistlen_identity_and_single():
    cfg = BfsConfig(twist_cap=20, depth_cap=4, node_cap=4_000_000)
    assert min_twist_word_length(MappingClassT.identity(), 1, cfg).value == 0
    tb = twist_matrix(CurveClass(0, 1))
    r = min_twist_word_length(tb, 1, cfg)
    assert r.value == 1 and twist_word_matrix(r.path) == tb


def test_twistlen_powers():
    # mod +-I: T^2 needs 2, T^3 needs 3 (cap-relative), and
    # T^4 = T_(1,1)^{-1} T_(-1,1)^{-1} needs only 2
    cfg = BfsConfig(twist_cap=20, depth_cap=6, node_cap=4_000_000)
    tb = twist_matrix(CurveClass(0, 1))
    expected = {2: 2, 3: 3, 4: 2}
    for n, want in expected.items():
        r = min_twist_word_length(tb**n, n, cfg)
        assert r.value == want, f"T^{n}"
        assert twist_word_matrix(r.path) == tb**n


def test_twistlen_two_factor_example():
    cfg = BfsConfig(twist_cap=20, depth_cap=4, node_cap=4_000_000)
    f = twist_matrix(CurveClass(0, 1)) @ twist_matrix(CurveClass(1, 0))
    r = min_twist_word_length(f, 4, cfg)
    assert r.value == 2
    assert twist_word_matrix(r.path) == f


def test_twistlen_respects_target_bound():
    cfg = BfsConfig(twist_cap=20, depth_cap=6, node_cap=4_000_000)
    tb = twist_matrix(CurveClass(0, 1))
    r = min_twist_word_length(tb**3, 2, cfg)  # only lengths <= 2 searched
    assert r.value is None and not r.exact_within_caps


def test_twistlen_word_cap():
    cfg = BfsConfig(twist_cap=20, depth_cap=8, node_cap=4_000_000)
    # (T_(1,0) T_(0,1)^{-1})^4 is not a product of <= 4 twists within cap 20
    f = (twist_matrix(CurveClass(1, 0)) @ twist_matrix(CurveClass(0, 1)).inverse()) ** 4
    assert min_twist_word_length(f, 4, cfg).value is None
    with pytest.raises(ResourceCapError):
        min_twist_word_length(f, 8, cfg)


def test_twistlen_node_cap_for_length4():
    # this word has length exactly 4, so the search must reach the stored
    # two-factor join, which the tiny node budget forbids
    ta = twist_matrix(CurveClass(1, 0))
    tb = twist_matrix(CurveClass(0, 1))
    f = ta**2 @ tb**2 @ ta**2 @ tb**2 @ ta**2
    cfg = BfsConfig(twist_cap=20, depth_cap=6, node_cap=4_000_000)
    assert min_twist_word_length(f, 4, cfg).value == 4
    tight = BfsConfig(twist_cap=20, depth_cap=6, node_cap=1000)
    with pytest.raises(ResourceCapError):
        min_twist_word_length(f, 4, tight)


def test_twistlen_parabolic_power_has_short_word():
    # mod +-I even high twist powers collapse: T^9 is a 3-letter word
    cfg = BfsConfig(twist_cap=20, depth_cap=4, node_cap=4_000_000)
    tb = twist_matrix(CurveClass(0, 1))
    r = min_twist_word_length(tb**9, 4, cfg)
    assert r.value == 3
    assert twist_word_matrix(r.path) == tb**9


def test_twistlen_half_turn_relation():
    # (T_(1,0) T_(0,1))^3 is the hyperelliptic class, trivial mod +-I
    cfg = BfsConfig(twist_cap=10, depth_cap=4, node_cap=1_000_000)
    f = (twist_matrix(CurveClass(1, 0)) @ twist_matrix(CurveClass(0, 1))) ** 3
    assert f == MappingClassT.identity()
    assert min_twist_word_length(f, 2, cfg).value == 0


def test_twist_cap_restricts_recognition():
    # T_(7,1) is one twist, but not within twist_cap 5
    f = twist_matrix(CurveClass(7, 1))
    tight = BfsConfig(twist_cap=5, depth_cap=2, node_cap=100_000)
    r = min_twist_word_length(f, 1, tight)
    assert r.value != 1
    wide = BfsConfig(twist_cap=10, depth_cap=2, node_cap=100_000)
    assert min_twist_word_length(f, 1, wide).value == 1


def test_determinism():
    a, b = CurveClass(1, 0), CurveClass(8, 5)
    r1 = quandle_distance(a, b, CFG)
    r2 = quandle_distance(a, b, CFG)
    assert r1 == r2
    f1 = farey_distance(a, b, CFG)
    f2 = farey_distance(a, b, CFG)
    assert f1 == f2


def test_bfs_config_validation():
    with pytest.raises(DomainError):
        BfsConfig(coord_cap=0)
    with pytest.raises(ResourceCapError):
        BfsConfig(coord_cap=10**7)

"""The acceptance battery: one callable per criterion, shared by the test
suite and the `dehnq suite` command.

Each criterion returns a CriterionResult with pass/fail, timing, and enough
detail to audit a failure.  Criteria 4 and 6 are kept exactly as specified
even though exact arithmetic refutes two of their stated distance values;
they fail with certifying witnesses, and the true values are asserted in
tests/test_metrics.py.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import linalg
from .cohomology import cohomology, comparison_check, delta_matrix
from .extensions import (
    FiniteAbelianGroup,
    QuandleCocycle2,
    build_extension,
    verify_gmt,
    zero_cocycle,
)
from .groups import symmetric_group, transpositions_s3
from .metrics import BfsConfig, farey_distance, min_twist_word_length, quandle_distance, replay_path
from .quandle import (
    CosetQuandleSpec,
    FiniteQuandle,
    alexander_quandle,
    conj_quandle,
    coset_decomposition,
    coset_quandle,
    dihedral_quandle,
    disjoint_union,
    relabel,
    trivial_quandle,
    verify_quandle,
)
from .ring import (
    IdemScanConfig,
    augmentation,
    distinct_curves_audit,
    enumerate_idempotents,
    torus_idempotent_scan,
)
from .torus import (
    ZERO_CURVE,
    CurveClass,
    WeightedMulticurve,
    dehn_twist,
    op_c1,
    op_d1,
    op_w1,
    op_w1_inverse,
    phi,
    phi_inverse,
    twist_matrix,
)

TRIPLES = 10_000


@dataclass
class CriterionResult:
    id: int
    name: str
    ok: bool
    seconds: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} criterion {self.id}: {self.name} [{self.seconds:.1f}s]"


def _child_rng(seed: int, purpose: str) -> random.Random:
    import zlib

    return random.Random((seed << 32) ^ zlib.crc32(purpose.encode()))


# ---------------------------------------------------------------------------
# random generators


def random_quandle(rng: random.Random, max_size: int = 8) -> FiniteQuandle:
    """A random valid quandle table, label-shuffled, of size <= max_size."""
    kind = rng.choice(("trivial", "dihedral", "alexander", "conj", "union"))
    if kind == "trivial":
        q = trivial_quandle(rng.randint(1, max_size))
    elif kind == "dihedral":
        q = dihedral_quandle(rng.randint(2, max_size))
    elif kind == "alexander":
        n = rng.randint(2, max_size)
        units = [t for t in range(1, n) if _coprime(t, n)]
        q = alexander_quandle(n, rng.choice(units))
    elif kind == "conj":
        g, cls = transpositions_s3()
        q = conj_quandle(g, cls) if rng.random() < 0.5 else conj_quandle(g)
        if q.size > max_size:
            q = conj_quandle(g, cls)
    else:
        left = random_quandle(rng, max_size=max(1, max_size // 2))
        right = random_quandle(rng, max_size=max(1, max_size - left.size))
        q = disjoint_union(left, right)
    perm = list(range(q.size))
    rng.shuffle(perm)
    return relabel(q, perm)


def _coprime(a: int, b: int) -> bool:
    from math import gcd

    return gcd(a, b) == 1


def _random_primitive(rng: random.Random, cap: int) -> CurveClass:
    while True:
        c = CurveClass(rng.randint(-cap, cap), rng.randint(-cap, cap))
        if c.is_primitive:
            return c


def _random_d1(rng: random.Random, cap: int) -> CurveClass:
    if rng.random() < 0.05:
        return ZERO_CURVE
    return _random_primitive(rng, cap)


def _random_c1(rng: random.Random, cap: int) -> CurveClass:
    return CurveClass(rng.randint(-cap, cap), rng.randint(-cap, cap))


def _random_w1(rng: random.Random, cap: int) -> WeightedMulticurve:
    zero_weight = rng.randint(-3, 3)
    if rng.random() < 0.2:
        return WeightedMulticurve(zero_weight, None, None)
    weight = rng.choice((-3, -2, -1, 1, 2, 3))
    return WeightedMulticurve(zero_weight, weight, _random_primitive(rng, cap))


# ---------------------------------------------------------------------------
# fixture sets


def _gmt_fixtures():
    r3 = dihedral_quandle(3)
    t2 = trivial_quandle(2)
    z2 = FiniteAbelianGroup((2,))
    z3 = FiniteAbelianGroup((3,))
    phi_zero = zero_cocycle(r3, z2)
    # g = [0, 0, 1] gives the first nonzero coboundary cocycle on R3 over Z/2
    from .extensions import coboundary_cocycle

    phi_nonzero = coboundary_cocycle(r3, z2, [(0,), (0,), (1,)])
    phi_t2 = QuandleCocycle2(
        t2, z3, (((0,), (1,)), ((0,), (0,)))
    )
    return [
        ("R3 x Z/2, phi = 0", r3, z2, phi_zero),
        ("R3 x Z/2, phi nonzero", r3, z2, phi_nonzero),
        ("T2 x Z/3, phi non-coboundary", t2, z3, phi_t2),
    ]


def _finite_fixtures() -> list[tuple[str, FiniteQuandle]]:
    g, cls = transpositions_s3()
    return [
        ("T1", trivial_quandle(1)),
        ("T4", trivial_quandle(4)),
        ("R3", dihedral_quandle(3)),
        ("R5", dihedral_quandle(5)),
        ("Alexander(5,2)", alexander_quandle(5, 2)),
        ("Conj(S3) transpositions", conj_quandle(g, cls)),
        ("R3 + T1", disjoint_union(dihedral_quandle(3), trivial_quandle(1))),
    ]


# ---------------------------------------------------------------------------
# criteria


def criterion_1(seed: int = 42) -> CriterionResult:
    """Axiom suite over every constructed quandle family."""
    t0 = time.time()
    rng = _child_rng(seed, "axioms")
    failures: list[str] = []
    structures: list[tuple[str, FiniteQuandle]] = []
    g3 = symmetric_group(3)
    _, cls = transpositions_s3()
    structures.append(("Conj(S3)", conj_quandle(g3)))
    structures.append(("Conj(S3)|transpositions", conj_quandle(g3, cls)))
    from .groups import cyclic_group

    structures.append(("Conj(Z4)", conj_quandle(cyclic_group(4))))
    from .groups import symmetric_group_permutations

    z_idx = symmetric_group_permutations(3).index((0, 2, 1))
    structures.append(
        ("coset S3/(e,(12))", coset_quandle(CosetQuandleSpec(g3, ((z_idx, frozenset({0, z_idx})),))))
    )
    for name, x, a, phi_c in _gmt_fixtures():
        structures.append((f"extension {name}", build_extension(x, a, phi_c).quandle))
    for name, q in structures:
        if not verify_quandle(q.table).valid:
            failures.append(f"{name}: table fails axioms")
        n = q.size
        for _ in range(TRIPLES):
            x, y, z = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if q.op(x, x) != x:
                failures.append(f"{name}: idempotency at {x}")
            if q.dual(q.op(x, y), y) != x or q.op(q.dual(x, y), y) != x:
                failures.append(f"{name}: translation inverse at ({x},{y})")
            if q.op(q.op(x, y), z) != q.op(q.op(x, z), q.op(y, z)):
                failures.append(f"{name}: distributivity at ({x},{y},{z})")
            if failures:
                break
    cap = 100
    for _ in range(TRIPLES):
        b, a, c = (_random_d1(rng, cap) for _ in range(3))
        if op_d1(b, b) != b:
            failures.append(f"D1 idempotency at {b}")
        via = op_d1(b, a)
        undone = via if a.is_zero else dehn_twist(a, -1, via)
        if (b.is_zero and via != ZERO_CURVE) or (not b.is_zero and undone != b):
            failures.append(f"D1 inverse at ({b},{a})")
        if op_d1(op_d1(b, a), c) != op_d1(op_d1(b, c), op_d1(a, c)):
            failures.append(f"D1 distributivity at ({b},{a},{c})")
        if failures:
            break
    for _ in range(TRIPLES):
        b, a, c = (_random_c1(rng, cap) for _ in range(3))
        if op_c1(b, b) != b:
            failures.append(f"C1 idempotency at {b}")
        via = op_c1(b, a)
        undone = via if (a.is_zero or b.is_zero) else dehn_twist(a, -1, via)
        if (b.is_zero and via != ZERO_CURVE) or (not b.is_zero and undone != b):
            failures.append(f"C1 inverse at ({b},{a})")
        if op_c1(op_c1(b, a), c) != op_c1(op_c1(b, c), op_c1(a, c)):
            failures.append(f"C1 distributivity at ({b},{a},{c})")
        if failures:
            break
    for _ in range(TRIPLES):
        x, y, z = (_random_w1(rng, cap) for _ in range(3))
        if op_w1(x, x) != x:
            failures.append(f"W1 idempotency at {x}")
        if op_w1_inverse(op_w1(x, y), y) != x:
            failures.append(f"W1 inverse at ({x},{y})")
        if op_w1(op_w1(x, y), z) != op_w1(op_w1(x, z), op_w1(y, z)):
            failures.append(f"W1 distributivity at ({x},{y},{z})")
        if failures:
            break
    dt = time.time() - t0
    ok = not failures and dt < 10.0
    details = {"failures": failures, "structures": len(structures) + 3, "triples": TRIPLES}
    if dt >= 10.0:
        details["runtime_exceeded"] = dt
    return CriterionResult(1, "quandle axioms on every constructed family", ok, dt, details)


def criterion_2(seed: int = 42) -> CriterionResult:
    """Coset decomposition with verified isomorphism on fixtures and 20
    random tables."""
    t0 = time.time()
    rng = _child_rng(seed, "decomposition")
    g, cls = transpositions_s3()
    cases: list[tuple[str, FiniteQuandle]] = [
        ("R3", dihedral_quandle(3)),
        ("T4", trivial_quandle(4)),
        ("Conj(S3)|transpositions", conj_quandle(g, cls)),
    ]
    for i in range(20):
        cases.append((f"random-{i}", random_quandle(rng, 8)))
    failures = []
    for name, q in cases:
        try:
            spec, iso = coset_decomposition(q)
        except Exception as exc:  # decomposition verifies internally
            failures.append(f"{name}: {exc}")
            continue
        built = coset_quandle(spec)
        if sorted(iso) != list(range(q.size)):
            failures.append(f"{name}: iso is not a bijection")
            continue
        for a in range(built.size):
            for b in range(built.size):
                if iso[built.op(a, b)] != q.op(iso[a], iso[b]):
                    failures.append(f"{name}: operation mismatch at ({a},{b})")
                    break
    dt = time.time() - t0
    return CriterionResult(
        2,
        "coset decompositions return verified isomorphisms",
        not failures,
        dt,
        {"cases": len(cases), "failures": failures},
    )


def criterion_3(seed: int = 42) -> CriterionResult:
    """The resolution map and its inverse are mutually inverse quandle
    homomorphisms on random classes with coordinates up to 10^6."""
    t0 = time.time()
    rng = _child_rng(seed, "phi")
    cap = 10**6
    failures = []
    for _ in range(TRIPLES):
        alpha = _random_c1(rng, cap)
        beta = _random_c1(rng, cap)
        if phi_inverse(phi(alpha)) != alpha:
            failures.append(f"round trip fails at {alpha}")
        w = phi(beta)
        if phi(phi_inverse(w)) != w:
            failures.append(f"reverse round trip fails at {w}")
        if phi(op_c1(beta, alpha)) != op_w1(phi(beta), phi(alpha)):
            failures.append(f"homomorphism fails at ({beta},{alpha})")
        if phi_inverse(op_w1(phi(beta), phi(alpha))) != op_c1(beta, alpha):
            failures.append(f"inverse homomorphism fails at ({beta},{alpha})")
        if failures:
            break
    dt = time.time() - t0
    return CriterionResult(
        3,
        "resolution map is an exact quandle isomorphism on sampled classes",
        not failures,
        dt,
        {"samples": TRIPLES, "failures": failures},
    )


def criterion_4(seed: int = 42) -> CriterionResult:
    """Stated distance ladder: d((1,0),(1,n)) = n = d'((1,0),(1,n)) for
    n = 1..4 (caps: coord 200, twist 30, depth 6) and d((1,0),(0,1)) = 1."""
    t0 = time.time()
    cfg = BfsConfig(coord_cap=200, twist_cap=30, depth_cap=6)
    src = CurveClass(1, 0)
    failures = []
    computed = {}
    for n in range(1, 5):
        dst = CurveClass(1, n)
        dq = quandle_distance(src, dst, cfg)
        df = farey_distance(src, dst, cfg)
        computed[n] = {
            "quandle": dq.value,
            "farey": df.value,
            "quandle_path": [(str(g), e) for g, e in dq.path],
        }
        if dq.value != n:
            failures.append(
                f"quandle_distance((1,0),(1,{n})) = {dq.value}, stated {n}; "
                f"witness path {[(str(g), e) for g, e in dq.path]} replays exactly"
            )
        if df.value != n:
            failures.append(
                f"farey_distance((1,0),(1,{n})) = {df.value}, stated {n}"
            )
    braid = quandle_distance(src, CurveClass(0, 1), cfg)
    if braid.value != 1:
        failures.append(f"d((1,0),(0,1)) = {braid.value}, stated 1")
    dt = time.time() - t0
    ok = not failures and dt < 60.0
    return CriterionResult(
        4,
        "distance ladder d = d' = n for n = 1..4 (stated values)",
        ok,
        dt,
        {"computed": computed, "failures": failures},
    )


def criterion_5(seed: int = 42) -> CriterionResult:
    """One-twist vs curve-graph gap witness: d((1,0),(3,4)) = 1 while
    d'((1,0),(3,4)) = 2."""
    t0 = time.time()
    cfg = BfsConfig(coord_cap=200, twist_cap=30, depth_cap=6)
    a, b = CurveClass(1, 0), CurveClass(3, 4)
    dq = quandle_distance(a, b, cfg)
    df = farey_distance(a, b, cfg)
    failures = []
    if dq.value != 1:
        failures.append(f"d = {dq.value}, expected 1")
    if df.value != 2:
        failures.append(f"d' = {df.value}, expected 2")
    if replay_path(a, dq.path) != b or replay_path(a, df.path) != b:
        failures.append("path replay failed")
    dt = time.time() - t0
    return CriterionResult(
        5,
        "metric gap witness d((1,0),(3,4)) = 1 < 2 = d'",
        not failures,
        dt,
        {"quandle": dq.value, "farey": df.value, "failures": failures},
    )


def criterion_6(seed: int = 42) -> CriterionResult:
    """Stated twist word lengths: len(T_(0,1)^n) = n for n <= 4 under
    twist_cap 20."""
    t0 = time.time()
    cfg = BfsConfig(coord_cap=200, twist_cap=20, depth_cap=6, node_cap=4_000_000)
    tb = twist_matrix(CurveClass(0, 1))
    failures = []
    computed = {}
    for n in range(1, 5):
        res = min_twist_word_length(tb**n, n, cfg)
        computed[n] = {
            "value": res.value,
            "path": [(str(g), e) for g, e in res.path],
        }
        if res.value != n:
            failures.append(
                f"min_twist_word_length(T^{n}) = {res.value}, stated {n}; "
                f"witness {[(str(g), e) for g, e in res.path]} multiplies back exactly"
            )
    dt = time.time() - t0
    return CriterionResult(
        6,
        "twist word lengths of twist powers (stated values)",
        not failures,
        dt,
        {"computed": computed, "failures": failures},
    )


def criterion_7(seed: int = 42) -> CriterionResult:
    """Coboundary exactness, dual-routine rank agreement, trivial-quandle
    rack dimensions."""
    import numpy as np

    t0 = time.time()
    failures = []
    fixtures = [(n, q) for n, q in _finite_fixtures() if q.size <= 5]
    for name, q in fixtures:
        for n in range(0, 4):
            up = delta_matrix(q, n)
            upper = delta_matrix(q, n + 1)
            if up and up[0] and upper:
                prod = np.array(upper, dtype=np.int64) @ np.array(up, dtype=np.int64)
                if prod.any():
                    failures.append(f"{name}: delta o delta != 0 at degree {n}")
    for name, q in fixtures:
        max_deg = 3 if q.size <= 4 else 2
        for n in range(0, max_deg + 1):
            for kind in ("rack", "sub", "quotient"):
                up = delta_matrix(q, n, kind)
                if not (up and up[0]):
                    continue
                rg = linalg.rank_gauss(up)
                rf = linalg.rank_fraction_free(up)
                if rg != rf:
                    failures.append(
                        f"{name}: rank routines disagree ({rg} vs {rf}) "
                        f"at degree {n} kind {kind}"
                    )
    for size in (2, 3, 4):
        q = trivial_quandle(size)
        for n in range(0, 4):
            res = cohomology(q, n, "rack")
            if res.betti != size**n:
                failures.append(
                    f"T{size}: rack betti({n}) = {res.betti}, expected {size**n}"
                )
    dt = time.time() - t0
    return CriterionResult(
        7,
        "cohomology exactness and dual-routine rank agreement",
        not failures,
        dt,
        {"fixtures": [n for n, _ in fixtures], "failures": failures},
    )


def criterion_8(seed: int = 42) -> CriterionResult:
    """Averaging-map battery on three extension fixtures, 100 trials per
    degree up to 3, plus the mean drop law through degree 4."""
    t0 = time.time()
    failures = []
    reports = {}
    for name, x, a, phi_c in _gmt_fixtures():
        rep = verify_gmt(x, a, phi_c, n_max=3, trials=100, seed=seed)
        reports[name] = {
            "all_ok": rep["all_ok"],
            "degrees": rep["degrees"],
            "mean_drop_law": rep["mean_drop_law"],
        }
        if not rep["all_ok"]:
            failures.append(f"{name}: {rep}")
    dt = time.time() - t0
    return CriterionResult(
        8,
        "averaging map: chain map, section, norms, injective pullback",
        not failures,
        dt,
        {"reports": reports, "failures": failures},
    )


def _naive_idempotents(q: FiniteQuandle, max_length: int, bound: int) -> set[tuple]:
    """Independent brute-force oracle over full coefficient vectors."""
    n = q.size
    coeff_range = range(-bound, bound + 1)
    out = set()
    for vec in itertools.product(coeff_range, repeat=n):
        support = [i for i, c in enumerate(vec) if c]
        if not support or len(support) > max_length:
            continue
        square: dict[int, int] = {}
        for i in support:
            for j in support:
                k = q.table[i][j]
                square[k] = square.get(k, 0) + vec[i] * vec[j]
        square = {k: v for k, v in square.items() if v}
        if square == {i: vec[i] for i in support}:
            out.add(tuple((i, vec[i]) for i in support))
    return out


def criterion_9(seed: int = 42) -> CriterionResult:
    """Idempotent searches: dual-oracle agreement, augmentation law, the
    torus box scan, and the distinct-quadruple audit."""
    t0 = time.time()
    failures = []
    for name, q in [("T2", trivial_quandle(2)), ("T3", trivial_quandle(3)), ("R3", dihedral_quandle(3))]:
        cfg = IdemScanConfig(max_length=3, coeff_bound=3)
        found = enumerate_idempotents(q, cfg)
        got = {tuple(u.terms) for u in found}
        oracle = _naive_idempotents(q, 3, 3)
        if got != oracle:
            failures.append(f"{name}: oracle disagreement ({len(got)} vs {len(oracle)})")
        bad_aug = [u for u in found if augmentation(u) not in (0, 1)]
        if bad_aug:
            failures.append(f"{name}: augmentation outside {{0,1}}: {bad_aug[0]}")
    scan = torus_idempotent_scan(IdemScanConfig(max_length=3, coeff_bound=3, coord_cap=10))
    if not scan["all_convex_disjoint"]:
        bad = [e for e in scan["found"] if not e["convex_disjoint"]]
        failures.append(f"torus scan found non convex-disjoint idempotent: {bad[0]['element']}")
    audit = distinct_curves_audit(samples=TRIPLES, coord_cap=50, seed=seed)
    if not audit["ok"]:
        failures.append(f"distinct-quadruple audit failed: {audit['failures'][:3]}")
    dt = time.time() - t0
    ok = not failures and dt < 300.0
    return CriterionResult(
        9,
        "idempotent enumeration, torus scan, distinctness audit",
        ok,
        dt,
        {
            "torus_scan_found": len(scan["found"]),
            "audit_pairs": audit["pairs_checked"],
            "failures": failures,
        },
    )


def criterion_10(seed: int = 42) -> CriterionResult:
    """Comparison-map sanity: finite diameters, trivial degree-2 kernel."""
    t0 = time.time()
    failures = []
    reports = {}
    for name, q in _finite_fixtures():
        rep = comparison_check(q, 2)
        reports[name] = rep
        if not rep["bounded_equals_ordinary"] or not rep["comparison_kernel_trivial"]:
            failures.append(f"{name}: comparison report inconsistent")
        if any(d < 0 for d in rep["component_diameters"]):
            failures.append(f"{name}: negative diameter")
    dt = time.time() - t0
    return CriterionResult(
        10,
        "comparison map consistency report on all finite fixtures",
        not failures,
        dt,
        {"reports": {k: v["component_diameters"] for k, v in reports.items()}, "failures": failures},
    )


CRITERIA: list[Callable[[int], CriterionResult]] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


def run_suite(seed: int = 42, out=None) -> list[CriterionResult]:
    """Run every criterion, emitting one pass/fail line each."""
    results = []
    for fn in CRITERIA:
        result = fn(seed)
        results.append(result)
        if out is not None:
            out(result.line() + "\n")
            if not result.ok:
                for failure in result.details.get("failures", [])[:4]:
                    out(f"    {failure}\n")
    return results

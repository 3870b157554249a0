"""Certified bounded search for torus curve distances and twist word lengths.

quandle_distance counts single-twist moves between simple closed classes,
farey_distance is the path metric of the graph whose edges join classes
meeting exactly once, and min_twist_word_length is word length in the
twist generators of the torus mapping class group modulo +-I.

All three searches enumerate only twisting curves with coordinates within
twist_cap and visit only classes within coord_cap, so a returned value is
an absolute upper bound and a lower bound relative to those caps; the
exact_within_caps flag records whether the target was reached.  Searches
are deterministic: states and generators are expanded in lexicographic
order and ties are broken canonically.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, ResourceCapError, global_node_cap
from .torus import CurveClass, MappingClassT, dehn_twist, primitive_classes, twist_matrix

MAX_COORD_CAP = 10**6
MAX_TWIST_CAP = 10**4
MAX_WORD_LENGTH = 4
MAX_MATRIX_ENTRY = 10**9


@dataclass(frozen=True)
class BfsConfig:
    """Search budget: coordinate box, twisting-curve box, depth, node count."""

    coord_cap: int = 200
    twist_cap: int = 30
    depth_cap: int = 8
    node_cap: int = 0  # 0 means: use the global default (QK_MAX_NODES aware)

    def __post_init__(self) -> None:
        if min(self.coord_cap, self.twist_cap, self.depth_cap) <= 0 or self.node_cap < 0:
            raise DomainError("caps must be positive")
        if self.coord_cap > MAX_COORD_CAP or self.twist_cap > MAX_TWIST_CAP:
            raise ResourceCapError(
                f"caps beyond coord {MAX_COORD_CAP} / twist {MAX_TWIST_CAP} are not supported"
            )

    @property
    def nodes(self) -> int:
        return self.node_cap if self.node_cap else global_node_cap()

    def to_json(self) -> dict:
        return {
            "coord_cap": self.coord_cap,
            "twist_cap": self.twist_cap,
            "depth_cap": self.depth_cap,
            "node_cap": self.nodes,
        }


@dataclass(frozen=True)
class DistanceResult:
    """value None means unreached within the caps.

    path entries are (twisting class, exponent); replaying them from the
    source with dehn_twist reproduces the target, and for word-length
    queries the twist product equals the query matrix.
    """

    value: Optional[int]
    exact_within_caps: bool
    path: tuple[tuple[CurveClass, int], ...] = ()

    def to_json(self) -> dict:
        return {
            "value": self.value if self.value is not None else "unreached",
            "exact_within_caps": self.exact_within_caps,
            "path": [{"gamma": str(g), "exp": e} for g, e in self.path],
        }


def replay_path(start: CurveClass, path) -> CurveClass:
    v = start
    for gamma, e in path:
        v = dehn_twist(gamma, e, v)
    return v


def twist_word_matrix(path) -> MappingClassT:
    """Product of the path's twists, first entry applied first."""
    out = MappingClassT.identity()
    for gamma, e in path:
        out = (twist_matrix(gamma) ** e) @ out
    return out


# ---------------------------------------------------------------------------
# packed-state helpers


def _pack(p: int, q: int, cap: int) -> int:
    return (p + cap) * (2 * cap + 1) + (q + cap)


def _unpack(key: int, cap: int) -> tuple[int, int]:
    p, q = divmod(key, 2 * cap + 1)
    return p - cap, q - cap


def _twist_generators(twist_cap: int):
    """Twist moves (class, exponent) sorted by (p, q, e), with numpy columns."""
    classes = primitive_classes(twist_cap)
    moves = [(c, e) for c in classes for e in (-1, 1)]
    moves.sort(key=lambda m: (m[0].p, m[0].q, m[1]))
    gp = np.array([m[0].p for m in moves], dtype=np.int64)
    gq = np.array([m[0].q for m in moves], dtype=np.int64)
    ge = np.array([m[1] for m in moves], dtype=np.int64)
    return moves, gp, gq, ge


def _expand_twists(keys: np.ndarray, gens, cap: int):
    """All in-cap twist images of the packed states.

    Returns (child_key, parent_key, move_index) arrays, deduplicated so each
    child keeps the lexicographically least (parent_key, move_index).
    """
    _, gp, gq, ge = gens
    width = 2 * cap + 1
    p = keys // width - cap
    q = keys % width - cap
    chunk = max(1, 4_000_000 // max(1, len(gp)))
    outs = []
    for lo in range(0, len(keys), chunk):
        pp = p[lo : lo + chunk, None]
        qq = q[lo : lo + chunk, None]
        kk = keys[lo : lo + chunk, None]
        cross = pp * gq[None, :] - qq * gp[None, :]
        t = ge[None, :] * cross
        np_new = pp + t * gp[None, :]
        nq_new = qq + t * gq[None, :]
        flip = (nq_new < 0) | ((nq_new == 0) & (np_new < 0))
        np_new = np.where(flip, -np_new, np_new)
        nq_new = np.where(flip, -nq_new, nq_new)
        ok = (np.abs(np_new) <= cap) & (np.abs(nq_new) <= cap)
        child = (np_new + cap) * width + (nq_new + cap)
        parent = np.broadcast_to(kk, child.shape)
        move = np.broadcast_to(np.arange(len(gp), dtype=np.int64)[None, :], child.shape)
        outs.append((child[ok], parent[ok], move[ok]))
    child = np.concatenate([o[0] for o in outs]) if outs else np.empty(0, dtype=np.int64)
    parent = np.concatenate([o[1] for o in outs]) if outs else np.empty(0, dtype=np.int64)
    move = np.concatenate([o[2] for o in outs]) if outs else np.empty(0, dtype=np.int64)
    order = np.lexsort((move, parent, child))
    child, parent, move = child[order], parent[order], move[order]
    keep = np.ones(len(child), dtype=bool)
    keep[1:] = child[1:] != child[:-1]
    return child[keep], parent[keep], move[keep]


def _expand_farey(keys: np.ndarray, cap: int):
    """Farey neighbors of the packed states, complete within the cap.

    For a primitive (p, q), the classes meeting it once are the one-
    parameter family (r0 + t p, s0 + t q) around a particular solution of
    p s - q r = 1; the family is cut to the coordinate box.
    """
    width = 2 * cap + 1
    child_parts = []
    parent_parts = []
    for key in keys.tolist():
        p, q = _unpack(key, cap)
        g, u, v = _ext_gcd(p, q)
        # p*u + q*v = 1, so (r, s) = (-v, u) solves p*s - q*r = 1
        r0, s0 = -v, u
        lo, hi = -(10**9), 10**9
        for base, step in ((r0, p), (s0, q)):
            if step == 0:
                if abs(base) > cap:
                    lo, hi = 1, 0
                    break
                continue
            # integer bounds for -cap <= base + t*step <= cap
            a, b = -cap - base, cap - base
            if step < 0:
                a, b, step_abs = -b, -a, -step
            else:
                step_abs = step
            lo = max(lo, -((-a) // step_abs))
            hi = min(hi, b // step_abs)
        if lo > hi:
            continue
        t = np.arange(lo, hi + 1, dtype=np.int64)
        r = r0 + t * p
        s = s0 + t * q
        flip = (s < 0) | ((s == 0) & (r < 0))
        r = np.where(flip, -r, r)
        s = np.where(flip, -s, s)
        child_parts.append((r + cap) * width + (s + cap))
        parent_parts.append(np.full(len(t), key, dtype=np.int64))
    if not child_parts:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty, empty
    child = np.concatenate(child_parts)
    parent = np.concatenate(parent_parts)
    move = np.zeros(len(child), dtype=np.int64)
    order = np.lexsort((parent, child))
    child, parent, move = child[order], parent[order], move[order]
    keep = np.ones(len(child), dtype=bool)
    keep[1:] = child[1:] != child[:-1]
    return child[keep], parent[keep], move[keep]


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with a*u + b*v = g = gcd(a, b)."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_u, u = u, old_u - k * u
        old_v, v = v, old_v - k * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def _bidirectional(start: int, goal: int, expand: Callable, cfg: BfsConfig):
    """Layered meet-in-the-middle BFS; exact for inverse-closed move sets.

    Returns (distance, fwd_tree, bwd_tree, meet_key) or None when the caps
    are exhausted first.  Trees map key -> (depth, parent_key, move_index).
    """
    if start == goal:
        return 0, {start: (0, -1, -1)}, {goal: (0, -1, -1)}, start
    fwd = {start: (0, -1, -1)}
    bwd = {goal: (0, -1, -1)}
    fwd_frontier = np.array([start], dtype=np.int64)
    bwd_frontier = np.array([goal], dtype=np.int64)
    fwd_depth = bwd_depth = 0
    best: Optional[tuple[int, int]] = None  # (total, meet key)
    while True:
        if best is not None and fwd_depth + bwd_depth >= best[0]:
            return best[0], fwd, bwd, best[1]
        if fwd_depth + bwd_depth >= cfg.depth_cap:
            return None
        if len(fwd) + len(bwd) > cfg.nodes:
            return None
        if len(fwd_frontier) == 0 and len(bwd_frontier) == 0:
            return None
        expand_fwd = len(fwd_frontier) <= len(bwd_frontier)
        if len(fwd_frontier) == 0:
            expand_fwd = False
        if len(bwd_frontier) == 0:
            expand_fwd = True
        tree, other = (fwd, bwd) if expand_fwd else (bwd, fwd)
        frontier = fwd_frontier if expand_fwd else bwd_frontier
        depth = (fwd_depth if expand_fwd else bwd_depth) + 1
        child, parent, move = expand(frontier)
        fresh = []
        for c, par, mv in zip(child.tolist(), parent.tolist(), move.tolist()):
            if c in tree:
                continue
            tree[c] = (depth, par, mv)
            fresh.append(c)
            if c in other:
                total = depth + other[c][0]
                cand = (total, c)
                if best is None or cand < best:
                    best = cand
        new_frontier = np.array(sorted(fresh), dtype=np.int64)
        if expand_fwd:
            fwd_frontier, fwd_depth = new_frontier, depth
        else:
            bwd_frontier, bwd_depth = new_frontier, depth


def _walk(tree: dict, key: int) -> list[tuple[int, int]]:
    """Moves from the tree root to key as (parent_key, move_index) steps."""
    steps = []
    while True:
        depth, parent, move = tree[key]
        if depth == 0:
            break
        steps.append((parent, move))
        key = parent
    steps.reverse()
    return steps


def _require_essential(c: CurveClass, cfg: BfsConfig, name: str) -> None:
    if not c.is_primitive:
        raise DomainError(
            f"{name} must be an essential simple closed class; "
            f"{c} is in a different component"
        )
    if max(abs(c.p), abs(c.q)) > cfg.coord_cap:
        raise DomainError(f"{name} {c} lies outside coord_cap {cfg.coord_cap}")


def quandle_distance(
    x: CurveClass, y: CurveClass, cfg: BfsConfig = BfsConfig()
) -> DistanceResult:
    """Least number of single twists carrying x to y, within the caps.

    Moves are T_gamma^{+-1} over all primitive gamma within twist_cap whose
    images stay within coord_cap.
    """
    _require_essential(x, cfg, "source")
    _require_essential(y, cfg, "target")
    gens = _twist_generators(cfg.twist_cap)
    moves = gens[0]
    cap = cfg.coord_cap

    def expand(keys: np.ndarray):
        return _expand_twists(keys, gens, cap)

    outcome = _bidirectional(_pack(x.p, x.q, cap), _pack(y.p, y.q, cap), expand, cfg)
    if outcome is None:
        return DistanceResult(None, False, ())
    value, fwd, bwd, meet = outcome
    path = [moves[mv] for _, mv in _walk(fwd, meet)]
    back = [(moves[mv][0], -moves[mv][1]) for _, mv in reversed(_walk(bwd, meet))]
    return DistanceResult(value, True, tuple(path + back))


def farey_distance(
    x: CurveClass, y: CurveClass, cfg: BfsConfig = BfsConfig()
) -> DistanceResult:
    """Path metric of the graph with an edge between classes meeting once.

    Neighbor enumeration is parametric and complete within coord_cap.  The
    returned path is the edge walk converted to twist moves (each graph
    edge is realized by one twist), so replaying it reproduces the target.
    """
    _require_essential(x, cfg, "source")
    _require_essential(y, cfg, "target")
    cap = cfg.coord_cap

    def expand(keys: np.ndarray):
        return _expand_farey(keys, cap)

    outcome = _bidirectional(_pack(x.p, x.q, cap), _pack(y.p, y.q, cap), expand, cfg)
    if outcome is None:
        return DistanceResult(None, False, ())
    value, fwd, bwd, meet = outcome
    # vertex sequence x .. meet .. y, then each edge realized by one twist
    seq = []
    key = meet
    while True:
        depth, parent, _ = fwd[key]
        seq.append(key)
        if depth == 0:
            break
        key = parent
    seq.reverse()
    key = meet
    while True:
        depth, parent, _ = bwd[key]
        if depth == 0:
            break
        seq.append(parent)
        key = parent
    classes = [CurveClass(*_unpack(k, cap)) for k in seq]
    path = []
    for a, b in zip(classes, classes[1:]):
        path.append((dehn_twist(a, 1, b), 1))
    return DistanceResult(value, True, tuple(path))


# ---------------------------------------------------------------------------
# twist word length in the mapping class group


def _canonical(m: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    for entry in m:
        if entry != 0:
            return m if entry > 0 else tuple(-x for x in m)  # type: ignore[return-value]
    return m


def _decode_twist(
    m: tuple[int, int, int, int], twist_cap: int
) -> Optional[tuple[CurveClass, int]]:
    """Recognize m (mod +-I) as a single twist along a primitive class
    within twist_cap; the pattern is I + e*[[pq, -p^2], [q^2, -pq]]."""
    for sign in (1, -1):
        a, b, c, d = (sign * x for x in m)
        if a + d != 2:
            continue
        u, v, w = a - 1, b, c
        if u * u + v * w != 0:
            continue
        if u == 0 and v == 0 and w == 0:
            continue  # identity
        if w != 0:
            e = 1 if w > 0 else -1
            q2 = e * w
            q = isqrt(q2)
            p2 = -e * v
            if q * q != q2 or p2 < 0:
                continue
            p = isqrt(p2)
            if p * p != p2:
                continue
            if p and u != e * p * q:
                p = -p
                if u != e * p * q:
                    continue
            if p == 0 and u != 0:
                continue
        else:
            if u != 0 or v == 0:
                continue
            e = -1 if v > 0 else 1
            p2 = -e * v
            p = isqrt(p2)
            if p * p != p2:
                continue
            q = 0
        if gcd(abs(p), abs(q)) != 1:
            continue
        if max(abs(p), abs(q)) > twist_cap:
            continue
        return CurveClass(p, q), e
    return None


def _gen_matrices(gens) -> tuple[np.ndarray, np.ndarray]:
    """(matrices, inverses) as (G, 4) int64 arrays for the move list."""
    moves, gp, gq, ge = gens
    a = 1 + ge * gp * gq
    b = -ge * gp * gp
    c = ge * gq * gq
    d = 1 - ge * gp * gq
    mats = np.stack([a, b, c, d], axis=1)
    invs = np.stack([d, -b, -c, a], axis=1)
    return mats, invs


def _mat_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Row-encoded 2x2 products for broadcastable stacks of (.., 4)."""
    a = x[..., 0] * y[..., 0] + x[..., 1] * y[..., 2]
    b = x[..., 0] * y[..., 1] + x[..., 1] * y[..., 3]
    c = x[..., 2] * y[..., 0] + x[..., 3] * y[..., 2]
    d = x[..., 2] * y[..., 1] + x[..., 3] * y[..., 3]
    return np.stack([a, b, c, d], axis=-1)


def _canonical_rows(m: np.ndarray) -> np.ndarray:
    sign = np.zeros(m.shape[:-1], dtype=np.int64)
    for i in range(4):
        entry = m[..., i]
        sign = np.where(sign == 0, np.sign(entry), sign)
    sign = np.where(sign == 0, 1, sign)
    return m * sign[..., None]


_HASH_MULTS = np.array(
    [0x9E3779B97F4A7C15, 0xBF58476D1CE4E5B9, 0x94D049BB133111EB, 0x2545F4914F6CDD1D],
    dtype=np.uint64,
)


def _hash_rows(m: np.ndarray) -> np.ndarray:
    h = np.zeros(m.shape[:-1], dtype=np.uint64)
    for i in range(4):
        h += m[..., i].astype(np.uint64) * _HASH_MULTS[i]
    return h


def min_twist_word_length(
    f: MappingClassT, n_target: int, cfg: BfsConfig = BfsConfig()
) -> DistanceResult:
    """Least number of twist factors expressing f, searched up to
    min(depth_cap, n_target).

    The search is exhaustive over the twist generators within twist_cap:
    lengths 0..2 by direct twist recognition, length 3 by a vectorized
    peel-and-recognize sweep, length 4 by meeting two-factor products in
    the middle.  Lengths beyond 4 exceed the supported budget and raise
    ResourceCapError; an unreached result means no word of length up to
    the searched bound exists over the capped generator set.
    """
    if n_target <= 0:
        raise DomainError("n_target must be positive")
    if max(abs(e) for e in f.entries()) > MAX_MATRIX_ENTRY:
        raise ResourceCapError(f"matrix entries beyond {MAX_MATRIX_ENTRY} are not supported")
    l_max = min(cfg.depth_cap, n_target)
    search_to = min(l_max, MAX_WORD_LENGTH)
    gens = _twist_generators(cfg.twist_cap)
    moves = gens[0]
    g_count = len(moves)
    target = _canonical(f.entries())

    if target == (1, 0, 0, 1):
        return DistanceResult(0, True, ())

    hit = _decode_twist(target, cfg.twist_cap)
    if hit is not None:
        return DistanceResult(1, True, (hit,))

    mats, invs = _gen_matrices(gens)
    tgt = np.array(target, dtype=np.int64)

    if search_to >= 2:
        peeled = _canonical_rows(_mat_mul(tgt[None, :], invs))
        for i in range(g_count):
            rest = _decode_twist(tuple(int(v) for v in peeled[i]), cfg.twist_cap)
            if rest is not None:
                return DistanceResult(2, True, (moves[i], rest))

    if search_to >= 3:
        if g_count * g_count > 10**8:
            raise ResourceCapError(
                f"{g_count}^2 two-factor probes exceed the search work budget"
            )
        first = _canonical_rows(_mat_mul(tgt[None, :], invs))  # peel move i
        twice = _mat_mul(first[:, None, :], invs[None, :, :])  # then move j
        trace = twice[..., 0] + twice[..., 3]
        u = np.where(trace == 2, twice[..., 0], -twice[..., 0]) - 1
        v = np.where(trace == 2, twice[..., 1], -twice[..., 1])
        w = np.where(trace == 2, twice[..., 2], -twice[..., 2])
        mask = (np.abs(trace) == 2) & (u * u + v * w == 0)
        idx = np.argwhere(mask)
        for i, j in idx.tolist():
            rest = _decode_twist(tuple(int(x) for x in twice[i, j]), cfg.twist_cap)
            if rest is not None:
                return DistanceResult(3, True, (moves[i], moves[j], rest))
        del twice, trace, u, v, w, mask

    if search_to >= 4:
        if g_count * g_count > cfg.nodes:
            raise ResourceCapError(
                f"storing {g_count}^2 two-factor products exceeds node_cap {cfg.nodes}"
            )
        pair = _mat_mul(mats[:, None, :], mats[None, :, :]).reshape(-1, 4)
        pair = _canonical_rows(pair)
        pair_hash = _hash_rows(pair)
        order = np.argsort(pair_hash, kind="stable")
        pair_sorted = pair[order]
        hash_sorted = pair_hash[order]
        best_match: Optional[tuple[int, int, int, int]] = None
        chunk = max(1, 2_000_000 // max(1, g_count))
        first = _canonical_rows(_mat_mul(tgt[None, :], invs))
        for lo in range(0, g_count, chunk):
            hi = min(g_count, lo + chunk)
            peel2 = _canonical_rows(
                _mat_mul(first[lo:hi, None, :], invs[None, :, :])
            ).reshape(-1, 4)
            h = _hash_rows(peel2)
            pos = np.searchsorted(hash_sorted, h)
            clipped = np.minimum(pos, len(hash_sorted) - 1)
            hashes_hit = (pos < len(hash_sorted)) & (hash_sorted[clipped] == h)
            for flat in np.nonzero(hashes_hit)[0].tolist():
                row = peel2[flat]
                hv = h[flat]
                k = int(pos[flat])
                while k < len(hash_sorted) and hash_sorted[k] == hv:
                    if np.array_equal(pair_sorted[k], row):
                        pair_flat = int(order[k])
                        a_idx, b_idx = divmod(pair_flat, g_count)
                        i = lo + flat // g_count
                        j = flat % g_count
                        cand = (i, j, b_idx, a_idx)
                        if best_match is None or cand < best_match:
                            best_match = cand
                    k += 1
        if best_match is not None:
            i, j, b_idx, a_idx = best_match
            return DistanceResult(
                4, True, (moves[i], moves[j], moves[b_idx], moves[a_idx])
            )

    if l_max > MAX_WORD_LENGTH:
        raise ResourceCapError(
            f"word searches beyond length {MAX_WORD_LENGTH} are not supported; "
            f"lower depth_cap or n_target"
        )
    return DistanceResult(None, False, ())

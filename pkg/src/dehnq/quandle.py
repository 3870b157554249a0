"""Finite quandles as operation tables.

Elements are 0-indexed integers and table[x][y] = x * y.  The three axioms:

  1. x * x = x,
  2. for fixed y the map x -> x * y is a bijection,
  3. (x * y) * z = (x * z) * (y * z).

Tables larger than 64 elements are rejected; everything here is meant to be
exhaustively checkable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import DomainError, ResourceCapError, global_node_cap
from .groups import Group

MAX_SIZE = 64

AXIOM_IDEMPOTENT = 1
AXIOM_BIJECTIVE = 2
AXIOM_DISTRIBUTIVE = 3


@dataclass(frozen=True)
class AxiomReport:
    """Result of an axiom check; the witness is the least violating tuple.

    Witness layout by axiom: (x,) for idempotency, (x, x', y) with
    x*y = x'*y for right-translation bijectivity, (x, y, z) for
    self-distributivity.
    """

    valid: bool
    first_violation: Optional[tuple[int, tuple[int, ...]]] = None


def _normalize_table(table: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    rows = tuple(tuple(int(x) for x in row) for row in table)
    n = len(rows)
    if n == 0:
        raise DomainError("quandle table must be nonempty")
    if n > MAX_SIZE:
        raise DomainError(f"quandle size {n} exceeds supported maximum {MAX_SIZE}")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise DomainError(f"table row {i} has length {len(row)}, expected {n}")
        for x in row:
            if not 0 <= x < n:
                raise DomainError(f"table entry {x} out of range [0,{n})")
    return rows


def verify_quandle(table: Sequence[Sequence[int]]) -> AxiomReport:
    """Check the three quandle axioms, reporting the first violation found.

    Axioms are checked in order 1, 2, 3; raises DomainError on a malformed
    table (non-square or out-of-range entries).
    """
    t = _normalize_table(table)
    n = len(t)
    for x in range(n):
        if t[x][x] != x:
            return AxiomReport(False, (AXIOM_IDEMPOTENT, (x,)))
    for y in range(n):
        first_with_value: dict[int, int] = {}
        for x in range(n):
            v = t[x][y]
            if v in first_with_value:
                return AxiomReport(False, (AXIOM_BIJECTIVE, (first_with_value[v], x, y)))
            first_with_value[v] = x
    for x in range(n):
        for y in range(n):
            xy = t[x][y]
            for z in range(n):
                if t[xy][z] != t[t[x][z]][t[y][z]]:
                    return AxiomReport(False, (AXIOM_DISTRIBUTIVE, (x, y, z)))
    return AxiomReport(True, None)


class FiniteQuandle:
    """A verified finite quandle; construction fails on an invalid table."""

    __slots__ = ("size", "table", "_dual")

    def __init__(self, table: Sequence[Sequence[int]]):
        report = verify_quandle(table)
        if not report.valid:
            axiom, witness = report.first_violation  # type: ignore[misc]
            raise DomainError(f"table violates quandle axiom {axiom} at {witness}")
        self.table = _normalize_table(table)
        self.size = len(self.table)
        dual = [[0] * self.size for _ in range(self.size)]
        for y in range(self.size):
            for x in range(self.size):
                dual[self.table[x][y]][y] = x
        self._dual = tuple(tuple(row) for row in dual)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def dual(self, x: int, y: int) -> int:
        """The unique z with z * y = x."""
        return self._dual[x][y]

    def symmetry(self, x: int) -> tuple[int, ...]:
        """S_x as a permutation: S_x(y) = y * x."""
        return tuple(self.table[y][x] for y in range(self.size))

    def elements(self) -> range:
        return range(self.size)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteQuandle) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"FiniteQuandle(size={self.size})"

    def to_json(self) -> dict:
        return {"size": self.size, "table": [list(row) for row in self.table]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteQuandle":
        if not isinstance(data, dict) or "table" not in data:
            raise DomainError("quandle JSON must carry a 'table'")
        table = data["table"]
        if "size" in data and len(table) != int(data["size"]):
            raise DomainError("quandle JSON 'size' does not match table")
        return cls(table)


def dual_op(q: FiniteQuandle, x: int, y: int) -> int:
    """The unique z with z * y = x (column inversion)."""
    if not (0 <= x < q.size and 0 <= y < q.size):
        raise DomainError("dual_op arguments out of range")
    return q.dual(x, y)


# ---------------------------------------------------------------------------
# permutation groups


def compose(f: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    """(f o g)(i) = f(g(i))."""
    return tuple(f[g[i]] for i in range(len(g)))


def invert(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


@dataclass(frozen=True)
class PermGroup:
    """A permutation group stored as its full element set (sorted)."""

    degree: int
    generators: tuple[tuple[int, ...], ...]
    elements: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: tuple[int, ...]) -> bool:
        return p in set(self.elements)

    def to_group(self, order_cap: int = 1024) -> Group:
        """Multiplication table over the sorted element list."""
        elems = self.elements
        if len(elems) > order_cap:
            raise ResourceCapError(
                f"group table for {len(elems)} elements exceeds cap {order_cap}"
            )
        index = {p: i for i, p in enumerate(elems)}
        table = [[index[compose(a, b)] for b in elems] for a in elems]
        return Group(table, check_associativity=False)


def close_permutations(
    degree: int,
    generators: Iterable[tuple[int, ...]],
    cap: Optional[int] = None,
) -> tuple[tuple[int, ...], ...]:
    """Breadth-first closure of a generator set under composition."""
    if cap is None:
        cap = global_node_cap()
    identity = tuple(range(degree))
    gens = []
    for g in generators:
        p = tuple(g)
        if sorted(p) != list(range(degree)):
            raise DomainError(f"not a permutation of degree {degree}: {p}")
        gens.append(p)
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = compose(g, p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
                    if len(seen) > cap:
                        raise ResourceCapError(
                            f"permutation closure exceeded cap {cap}"
                        )
        frontier = nxt
    return tuple(sorted(seen))


def inner_group(q: FiniteQuandle, cap: Optional[int] = None) -> PermGroup:
    """Group generated by the symmetries S_x (closed, sorted elements)."""
    gens = tuple(q.symmetry(x) for x in range(q.size))
    elements = close_permutations(q.size, gens, cap)
    return PermGroup(q.size, gens, elements)


def components(q: FiniteQuandle) -> tuple[tuple[int, ...], ...]:
    """Orbits of the inner group, sorted lexicographically.

    Computed by union-find over the generator action, so no group closure
    is required.
    """
    parent = list(range(q.size))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for x in range(q.size):
        for y in range(q.size):
            union(y, q.table[y][x])
    orbits: dict[int, list[int]] = {}
    for y in range(q.size):
        orbits.setdefault(find(y), []).append(y)
    return tuple(tuple(sorted(v)) for _, v in sorted(orbits.items()))


def component_diameters(q: FiniteQuandle) -> tuple[int, ...]:
    """Diameter of each component under single-symmetry moves.

    A move sends z to z * w or to the unique u with u * w = z, for any w.
    Order matches components(q).
    """
    diams = []
    for comp in components(q):
        comp_set = set(comp)
        best = 0
        for src in comp:
            dist = {src: 0}
            frontier = [src]
            while frontier:
                nxt = []
                for z in frontier:
                    for w in range(q.size):
                        for moved in (q.table[z][w], q.dual(z, w)):
                            if moved not in dist:
                                dist[moved] = dist[z] + 1
                                nxt.append(moved)
                frontier = nxt
            if set(dist) != comp_set:
                raise DomainError("component not closed under symmetry moves")
            best = max(best, max(dist.values()))
        diams.append(best)
    return tuple(diams)


# ---------------------------------------------------------------------------
# constructions


def trivial_quandle(n: int) -> FiniteQuandle:
    """x * y = x."""
    if n <= 0:
        raise DomainError("size must be positive")
    return FiniteQuandle([[x] * n for x in range(n)])


def dihedral_quandle(n: int) -> FiniteQuandle:
    """x * y = 2y - x mod n."""
    if n <= 0:
        raise DomainError("size must be positive")
    return FiniteQuandle([[(2 * y - x) % n for y in range(n)] for x in range(n)])


def alexander_quandle(n: int, t: int) -> FiniteQuandle:
    """x * y = t*x + (1-t)*y mod n, for t a unit mod n."""
    if n <= 0:
        raise DomainError("size must be positive")
    if gcd(t % n if n > 1 else 1, n) != 1:
        raise DomainError(f"t={t} is not a unit modulo {n}")
    return FiniteQuandle(
        [[(t * x + (1 - t) * y) % n for y in range(n)] for x in range(n)]
    )


def disjoint_union(a: FiniteQuandle, b: FiniteQuandle) -> FiniteQuandle:
    """Disjoint union; elements of different parts act trivially on each other."""
    n, m = a.size, b.size
    table = [[0] * (n + m) for _ in range(n + m)]
    for x in range(n + m):
        for y in range(n + m):
            if x < n and y < n:
                table[x][y] = a.table[x][y]
            elif x >= n and y >= n:
                table[x][y] = b.table[x - n][y - n] + n
            else:
                table[x][y] = x
    return FiniteQuandle(table)


def relabel(q: FiniteQuandle, perm: Sequence[int]) -> FiniteQuandle:
    """Transport the table along a permutation of the element labels."""
    p = tuple(perm)
    if sorted(p) != list(range(q.size)):
        raise DomainError("relabel requires a permutation of the elements")
    table = [[0] * q.size for _ in range(q.size)]
    for x in range(q.size):
        for y in range(q.size):
            table[p[x]][p[y]] = p[q.table[x][y]]
    return FiniteQuandle(table)


def conj_quandle(group: Group, subset: Optional[Iterable[int]] = None) -> FiniteQuandle:
    """Conjugation quandle x * y = y x y^-1 on a conjugation-closed subset."""
    if subset is None:
        elems = list(group.elements())
    else:
        elems = sorted(set(int(x) for x in subset))
        for x in elems:
            if not 0 <= x < group.order:
                raise DomainError(f"subset element {x} out of range")
        if not group.is_closed_under_conjugation(elems):
            raise DomainError("subset is not closed under conjugation")
    index = {x: i for i, x in enumerate(elems)}
    table = [
        [index[group.conjugate(x, y)] for y in elems]
        for x in elems
    ]
    return FiniteQuandle(table)


@dataclass(frozen=True)
class CosetQuandleSpec:
    """Data for a coset quandle on the disjoint union of G/H_i.

    Each part is a pair (z_i, H_i) with H_i a subgroup of the centralizer
    of z_i; the operation is H_i x * H_j y = H_i (z_i x y^-1 z_j^-1 y).
    """

    group: Group
    parts: tuple[tuple[int, frozenset[int]], ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise DomainError("coset quandle needs at least one part")
        for z, h in self.parts:
            if not 0 <= z < self.group.order:
                raise DomainError(f"part element {z} out of range")
            if not self.group.is_subgroup(h):
                raise DomainError("part subgroup is not a subgroup")
            if not h <= self.group.centralizer(z):
                raise DomainError(
                    f"subgroup of part with z={z} is not inside the centralizer of z"
                )


def _coset_labels(spec: CosetQuandleSpec) -> list[tuple[int, tuple[int, ...]]]:
    labels = []
    for i, (_, h) in enumerate(spec.parts):
        for coset in spec.group.right_cosets(h):
            labels.append((i, coset))
    return labels


def coset_quandle(spec: CosetQuandleSpec) -> FiniteQuandle:
    """The quandle on the disjoint union of right cosets G/H_i."""
    g = spec.group
    labels = _coset_labels(spec)
    locate: dict[tuple[int, int], int] = {}
    for idx, (i, coset) in enumerate(labels):
        for member in coset:
            locate[(i, member)] = idx
    n = len(labels)
    table = [[0] * n for _ in range(n)]
    for a, (i, ca) in enumerate(labels):
        zi = spec.parts[i][0]
        x = ca[0]
        for b, (j, cb) in enumerate(labels):
            zj = spec.parts[j][0]
            y = cb[0]
            word = g.mul(g.mul(g.mul(g.mul(zi, x), g.inv(y)), g.inv(zj)), y)
            table[a][b] = locate[(i, word)]
    return FiniteQuandle(table)


def coset_decomposition(
    q: FiniteQuandle,
    closure_cap: Optional[int] = None,
    group_order_cap: int = 1024,
) -> tuple[CosetQuandleSpec, tuple[int, ...]]:
    """Express q as a coset quandle over its inner group.

    Uses one orbit representative x_i per component, with z_i = S_{x_i} and
    H_i the stabilizer of x_i.  Returns the spec together with the verified
    isomorphism iso, where iso[k] is the element of q corresponding to the
    k-th coset of coset_quandle(spec).
    """
    inn = inner_group(q, closure_cap)
    g = inn.to_group(group_order_cap)
    perm_index = {p: i for i, p in enumerate(inn.elements)}
    parts = []
    reps = []
    for comp in components(q):
        x = comp[0]
        reps.append(x)
        z = perm_index[q.symmetry(x)]
        stab = frozenset(
            i for i, p in enumerate(inn.elements) if p[x] == x
        )
        parts.append((z, stab))
    spec = CosetQuandleSpec(g, tuple(parts))
    labels = _coset_labels(spec)
    iso = []
    for i, coset in labels:
        rep_perm = inn.elements[coset[0]]
        iso.append(rep_perm.index(reps[i]))
    built = coset_quandle(spec)
    if sorted(iso) != list(range(q.size)):
        raise DomainError("decomposition map is not a bijection")
    for a in range(built.size):
        for b in range(built.size):
            if iso[built.table[a][b]] != q.table[iso[a]][iso[b]]:
                raise DomainError("decomposition map does not preserve the operation")
    return spec, tuple(iso)


def find_isomorphism(a: FiniteQuandle, b: FiniteQuandle) -> Optional[tuple[int, ...]]:
    """A quandle isomorphism a -> b as a permutation list, or None.

    Backtracking over component-respecting bijections; meant for sizes
    up to 16.
    """
    if a.size != b.size:
        return None
    comps_a = components(a)
    comps_b = components(b)
    if sorted(len(c) for c in comps_a) != sorted(len(c) for c in comps_b):
        return None
    size_of_a = {x: len(comp) for comp in comps_a for x in comp}
    size_of_b = {y: len(comp) for comp in comps_b for y in comp}
    order = [x for comp in comps_a for x in comp]
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent() -> bool:
        for x, y in mapping.items():
            for u, v in mapping.items():
                lhs = a.table[x][u]
                if lhs in mapping and mapping[lhs] != b.table[y][v]:
                    return False
        return True

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        x = order[k]
        for y in range(b.size):
            if y in used or size_of_b[y] != size_of_a[x]:
                continue
            mapping[x] = y
            used.add(y)
            if consistent() and extend(k + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    if extend(0):
        return tuple(mapping[x] for x in range(a.size))
    return None

"""Finite groups as 0-indexed multiplication tables."""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .errors import DomainError


class Group:
    """Finite group given by an n x n table mul[a][b] = a*b.

    The constructor verifies the group axioms (associativity, identity,
    inverses) so downstream code can rely on them; pass check_associativity
    False only for tables that are associative by construction, e.g. built
    from permutation composition.
    """

    __slots__ = ("order", "mul_table", "identity", "inv_table")

    def __init__(
        self,
        mul_table: Sequence[Sequence[int]],
        check_associativity: bool = True,
    ):
        table = tuple(tuple(int(x) for x in row) for row in mul_table)
        n = len(table)
        if n == 0:
            raise DomainError("group table must be nonempty")
        for i, row in enumerate(table):
            if len(row) != n:
                raise DomainError(f"group table row {i} has length {len(row)}, expected {n}")
            for x in row:
                if not 0 <= x < n:
                    raise DomainError(f"group table entry {x} out of range [0,{n})")
        identity = None
        for e in range(n):
            if all(table[e][x] == x and table[x][e] == x for x in range(n)):
                identity = e
                break
        if identity is None:
            raise DomainError("group table has no identity element")
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if table[a][b] == identity and table[b][a] == identity:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise DomainError(f"group element {a} has no inverse")
        if check_associativity:
            for a in range(n):
                for b in range(n):
                    tab = table[a][b]
                    for c in range(n):
                        if table[tab][c] != table[a][table[b][c]]:
                            raise DomainError(f"group table not associative at ({a},{b},{c})")
        self.order = n
        self.mul_table = table
        self.identity = identity
        self.inv_table = tuple(inv)

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        return self.inv_table[a]

    def elements(self) -> range:
        return range(self.order)

    def conjugate(self, x: int, y: int) -> int:
        """y * x * y^-1."""
        return self.mul(self.mul(y, x), self.inv(y))

    def conjugacy_class(self, x: int) -> frozenset[int]:
        return frozenset(self.conjugate(x, g) for g in self.elements())

    def centralizer(self, z: int) -> frozenset[int]:
        return frozenset(g for g in self.elements() if self.mul(g, z) == self.mul(z, g))

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        if not s or not s.issubset(set(self.elements())):
            return False
        if self.identity not in s:
            return False
        return all(self.mul(a, b) in s and self.inv(a) in s for a in s for b in s)

    def is_closed_under_conjugation(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        return all(self.conjugate(x, g) in s for x in s for g in self.elements())

    def right_cosets(self, subgroup: Iterable[int]) -> list[tuple[int, ...]]:
        """Right cosets Hg as sorted tuples, ordered by least member."""
        h = sorted(set(subgroup))
        if not self.is_subgroup(h):
            raise DomainError("right_cosets requires a subgroup")
        seen: set[int] = set()
        cosets = []
        for g in self.elements():
            if g in seen:
                continue
            coset = tuple(sorted(self.mul(x, g) for x in h))
            seen.update(coset)
            cosets.append(coset)
        return cosets

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Group) and self.mul_table == other.mul_table

    def __hash__(self) -> int:
        return hash(self.mul_table)

    def to_json(self) -> dict:
        return {"size": self.order, "mul": [list(row) for row in self.mul_table]}

    @classmethod
    def from_json(cls, data: dict) -> "Group":
        if not isinstance(data, dict) or "mul" not in data:
            raise DomainError("group JSON must carry a 'mul' table")
        table = data["mul"]
        if "size" in data and len(table) != int(data["size"]):
            raise DomainError("group JSON 'size' does not match table")
        return cls(table)


def cyclic_group(n: int) -> Group:
    if n <= 0:
        raise DomainError(f"cyclic group order must be positive, got {n}")
    return Group([[(a + b) % n for b in range(n)] for a in range(n)])


def symmetric_group(n: int) -> Group:
    """S_n on {0..n-1}; elements are permutation tuples in lexicographic order."""
    if not 1 <= n <= 5:
        raise DomainError(f"symmetric_group supports 1 <= n <= 5, got {n}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[i]] for i in range(n))] for q in perms]
        for p in perms
    ]
    return Group(table, check_associativity=False)


def symmetric_group_permutations(n: int) -> list[tuple[int, ...]]:
    """Permutation tuples matching the element order of symmetric_group(n)."""
    return list(itertools.permutations(range(n)))


def transpositions_s3() -> tuple[Group, frozenset[int]]:
    """S_3 together with the indices of its three transpositions."""
    g = symmetric_group(3)
    perms = symmetric_group_permutations(3)
    cls = frozenset(
        i for i, p in enumerate(perms)
        if p != (0, 1, 2) and tuple(p[p[k]] for k in range(3)) == (0, 1, 2)
    )
    return g, cls

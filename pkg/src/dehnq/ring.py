"""Integral quandle rings: formal sums with exact integer coefficients.

Multiplication extends the quandle operation bilinearly; it is distributive
by construction but in general neither associative nor commutative.  The
augmentation (coefficient sum) is multiplicative, which forces every
idempotent's coefficient sum into {0, 1}.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DomainError, ResourceCapError, global_node_cap
from .quandle import FiniteQuandle
from .torus import (
    ZERO_CURVE,
    CurveClass,
    intersection,
    op_d1,
    parse_curve,
    primitive_classes,
)


class FiniteCarrier:
    """Ring carrier for a finite quandle; elements are 0-indexed integers."""

    def __init__(self, quandle: FiniteQuandle):
        self.quandle = quandle

    def op(self, x: int, y: int) -> int:
        return self.quandle.table[x][y]

    def key(self, x: int):
        return x

    def check(self, x) -> int:
        x = int(x)
        if not 0 <= x < self.quandle.size:
            raise DomainError(f"element {x} out of range for quandle of size {self.quandle.size}")
        return x

    def format(self, x: int) -> str:
        return str(x)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteCarrier) and self.quandle == other.quandle

    def __hash__(self) -> int:
        return hash(("finite", self.quandle))


class TorusCarrier:
    """Ring carrier for simple closed classes on the torus (primitive or null)."""

    def op(self, x: CurveClass, y: CurveClass) -> CurveClass:
        return op_d1(x, y)

    def key(self, x: CurveClass):
        return x.key()

    def check(self, x) -> CurveClass:
        if not isinstance(x, CurveClass):
            raise DomainError(f"expected a CurveClass, got {type(x).__name__}")
        if not (x.is_zero or x.is_primitive):
            raise DomainError(f"{x} is not a simple closed class")
        return x

    def format(self, x: CurveClass) -> str:
        return "o" if x.is_zero else f"({x.p},{x.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TorusCarrier)

    def __hash__(self) -> int:
        return hash("torus")


@dataclass(frozen=True)
class RingElement:
    """Finitely supported integer combination of quandle elements."""

    carrier: object
    terms: tuple[tuple[object, int], ...] = field(default=())

    def __post_init__(self) -> None:
        collected: dict = {}
        for elem, coeff in self.terms:
            elem = self.carrier.check(elem)
            coeff = int(coeff)
            if coeff:
                collected[elem] = collected.get(elem, 0) + coeff
        canonical = tuple(
            (e, c)
            for e, c in sorted(collected.items(), key=lambda item: self.carrier.key(item[0]))
            if c != 0
        )
        object.__setattr__(self, "terms", canonical)

    @classmethod
    def from_terms(cls, carrier, terms: Iterable[tuple[object, int]]) -> "RingElement":
        return cls(carrier, tuple(terms))

    @classmethod
    def monomial(cls, carrier, elem, coeff: int = 1) -> "RingElement":
        return cls(carrier, ((elem, coeff),))

    def coeff(self, elem) -> int:
        for e, c in self.terms:
            if e == elem:
                return c
        return 0

    @property
    def support(self) -> tuple:
        return tuple(e for e, _ in self.terms)

    def __add__(self, other: "RingElement") -> "RingElement":
        self._match(other)
        return RingElement(self.carrier, self.terms + other.terms)

    def __neg__(self) -> "RingElement":
        return RingElement(self.carrier, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "RingElement":
        return RingElement(self.carrier, tuple((e, int(scalar) * c) for e, c in self.terms))

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._match(other)
        out: list[tuple[object, int]] = []
        for x, a in self.terms:
            for y, b in other.terms:
                out.append((self.carrier.op(x, y), a * b))
        return RingElement(self.carrier, tuple(out))

    def _match(self, other: "RingElement") -> None:
        if not isinstance(other, RingElement) or self.carrier != other.carrier:
            raise DomainError("ring elements live over different carriers")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{self.carrier.format(e)}" for e, c in self.terms)


def multiply(u: RingElement, v: RingElement) -> RingElement:
    """Ring product with like terms collected and zeros dropped."""
    return u * v


def is_idempotent(u: RingElement) -> bool:
    return u * u == u


def augmentation(u: RingElement) -> int:
    return sum(c for _, c in u.terms)


def length(u: RingElement) -> int:
    return len(u.terms)


@dataclass(frozen=True)
class IdemScanConfig:
    """Search box for idempotent scans."""

    max_length: int = 3
    coeff_bound: int = 3
    coord_cap: int = 10
    include_zero_curve: bool = True

    def __post_init__(self) -> None:
        if self.max_length <= 0 or self.coeff_bound <= 0 or self.coord_cap <= 0:
            raise DomainError("scan configuration values must be positive")


def _coefficients(bound: int) -> list[int]:
    return [c for c in range(-bound, bound + 1) if c != 0]


def enumerate_idempotents(
    quandle: FiniteQuandle, cfg: IdemScanConfig = IdemScanConfig()
) -> list[RingElement]:
    """Every idempotent with support size <= max_length and nonzero
    coefficients in [-B, B], by exhaustive search."""
    carrier = FiniteCarrier(quandle)
    coeffs = _coefficients(cfg.coeff_bound)
    n = quandle.size
    total = 0
    for k in range(1, min(cfg.max_length, n) + 1):
        combos = 1
        for i in range(k):
            combos = combos * (n - i) // (i + 1)
        total += combos * len(coeffs) ** k
    if total > global_node_cap(10**7):
        raise ResourceCapError(f"{total} candidates exceed the idempotent scan budget")
    found = []
    for k in range(1, min(cfg.max_length, n) + 1):
        for support in itertools.combinations(range(n), k):
            for cs in itertools.product(coeffs, repeat=k):
                u = RingElement.from_terms(carrier, zip(support, cs))
                if u * u == u:
                    found.append(u)
    return sorted(found, key=lambda u: (length(u), [(carrier.key(e), c) for e, c in u.terms]))


def _solves_box(products: dict, support: Sequence, cs: Sequence[int]) -> bool:
    """Check sum_{ij} c_i c_j [x_i * x_j] = sum_i c_i [x_i] by bucket sums."""
    acc: dict = {}
    for (i, j), cls in products.items():
        acc[cls] = acc.get(cls, 0) + cs[i] * cs[j]
    for idx, elem in enumerate(support):
        acc[elem] = acc.get(elem, 0) - cs[idx]
    return all(v == 0 for v in acc.values())


def torus_idempotent_scan(cfg: IdemScanConfig = IdemScanConfig()) -> dict:
    """Exhaustive idempotent scan over the torus simple closed classes.

    Supports run over the null class (optional) plus all primitive classes
    within coord_cap; coefficients over [-B, B] \\ {0}.  Support sets whose
    products would leave an unmatched cross term cannot carry solutions and
    are pruned, which does not change the scanned set.  Each hit is
    classified by coefficient sum, pairwise disjointness, sign pattern, and
    use of the null class.
    """
    carrier = TorusCarrier()
    pool: list[CurveClass] = []
    if cfg.include_zero_curve:
        pool.append(ZERO_CURVE)
    pool.extend(primitive_classes(cfg.coord_cap))
    coeffs = _coefficients(cfg.coeff_bound)
    npool = len(pool)
    sets = 0
    for k in range(1, cfg.max_length + 1):
        combos = 1
        for i in range(k):
            combos = combos * (npool - i) // (i + 1)
        sets += combos
    if sets > global_node_cap(10**7):
        raise ResourceCapError(f"{sets} support sets exceed the torus scan budget")

    # pairwise products are shared across support sets
    prod_cache: dict[tuple[int, int], CurveClass] = {}

    def product(i: int, j: int) -> CurveClass:
        key = (i, j)
        hit = prod_cache.get(key)
        if hit is None:
            hit = op_d1(pool[i], pool[j])
            prod_cache[key] = hit
        return hit

    found_entries = []
    for k in range(1, cfg.max_length + 1):
        for support_idx in itertools.combinations(range(npool), k):
            support = [pool[i] for i in support_idx]
            support_set = set(support)
            products: dict[tuple[int, int], CurveClass] = {}
            producers: dict[CurveClass, int] = {}
            for a in range(k):
                for b in range(k):
                    cls = product(support_idx[a], support_idx[b])
                    products[(a, b)] = cls
                    producers[cls] = producers.get(cls, 0) + 1
            # a lone cross term outside the support forces c_a * c_b = 0
            if any(
                cls not in support_set and count == 1
                for cls, count in producers.items()
            ):
                continue
            for cs in itertools.product(coeffs, repeat=k):
                if not _solves_box(products, support, cs):
                    continue
                u = RingElement.from_terms(carrier, zip(support, cs))
                if not is_idempotent(u):  # defense in depth; always true here
                    continue
                disjoint = all(
                    intersection(a, b) == 0
                    for a, b in itertools.combinations(support, 2)
                )
                entry = {
                    "element": u,
                    "coeff_sum": augmentation(u),
                    "pairwise_disjoint": disjoint,
                    "includes_zero": any(c.is_zero for c in support),
                    "has_negative_coeff": any(c < 0 for c in cs),
                    "convex_disjoint": disjoint and augmentation(u) == 1,
                }
                found_entries.append(entry)
    found_entries.sort(key=lambda e: (length(e["element"]), str(e["element"])))
    return {
        "pool_size": npool,
        "config": cfg,
        "found": found_entries,
        "all_convex_disjoint": all(e["convex_disjoint"] for e in found_entries),
    }


def distinct_curves_audit(
    samples: int = 10**4, coord_cap: int = 50, seed: int = 0
) -> dict:
    """Randomized audit over intersecting pairs of primitive classes.

    Checks that {a, b, a*b, b*a} has four distinct classes and that
    i(T_b(a), a) = i(a, b)^2.
    """
    rng = random.Random(seed)
    pool = primitive_classes(coord_cap)
    checked = 0
    failures: list[str] = []
    while checked < samples:
        a = rng.choice(pool)
        b = rng.choice(pool)
        if a == b or intersection(a, b) < 1:
            continue
        checked += 1
        ab = op_d1(a, b)
        ba = op_d1(b, a)
        if len({a, b, ab, ba}) != 4:
            failures.append(f"collision in twisted quadruple for {a}, {b}")
        if intersection(ab, a) != intersection(a, b) ** 2:
            failures.append(f"intersection identity failed for {a}, {b}")
    return {
        "pairs_checked": checked,
        "all_distinct_four": not any("collision" in f for f in failures),
        "intersection_identity_ok": not any("identity" in f for f in failures),
        "failures": failures[:10],
        "ok": not failures,
    }


# ---------------------------------------------------------------------------
# literals

_RING_TERM_RE = re.compile(r"^(-?\d+)\s*\*\s*(.+)$")


def parse_ring_literal(text: str, carrier) -> RingElement:
    """Parse sums like '2*(1,0) - 1*(0,1) + 3*o' (torus) or '2*0 - 1*3' (finite)."""
    from .torus import split_terms

    s = text.strip()
    if s in ("", "0"):
        return RingElement(carrier, ())
    terms = []
    for sign, chunk in split_terms(s):
        m = _RING_TERM_RE.match(chunk)
        if m:
            coeff = sign * int(m.group(1))
            atom_text = m.group(2).strip()
        else:
            coeff = sign
            atom_text = chunk
        if isinstance(carrier, TorusCarrier):
            atom: object = parse_curve(atom_text)
        else:
            try:
                atom = int(atom_text)
            except ValueError as exc:
                raise DomainError(f"cannot parse ring term {chunk!r}") from exc
        terms.append((atom, coeff))
    return RingElement.from_terms(carrier, terms)

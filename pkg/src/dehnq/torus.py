"""Exact calculus of curve classes on the torus.

An unoriented closed-curve class is a pair (p, q) of integers taken modulo
a global sign; (0, 0) is the null class.  Twists act as integer
transvections: T_gamma(v) = v + <v, gamma'> * g * gamma' where
gamma = g * gamma' with gamma' primitive and <(r,s),(p,q)> = r*q - s*p.
That sign convention is the single global choice for the whole package;
flipping it swaps every operation with its inverse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Optional

from .errors import DomainError


@dataclass(frozen=True)
class CurveClass:
    """Normal form: q > 0, or q = 0 and p >= 0.  (0, 0) is the null class."""

    p: int
    q: int

    def __post_init__(self) -> None:
        p, q = int(self.p), int(self.q)
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    @property
    def content(self) -> int:
        """gcd(|p|, |q|); 0 for the null class."""
        return gcd(abs(self.p), abs(self.q))

    @property
    def is_primitive(self) -> bool:
        return self.content == 1

    def primitive_part(self) -> tuple["CurveClass", int]:
        """(base, multiplicity) with self = multiplicity * base; base primitive."""
        if self.is_zero:
            raise DomainError("the null class has no primitive part")
        g = self.content
        return CurveClass(self.p // g, self.q // g), g

    def key(self) -> tuple[int, int]:
        return (self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q}

    @classmethod
    def from_json(cls, data: dict) -> "CurveClass":
        try:
            return cls(int(data["p"]), int(data["q"]))
        except (KeyError, TypeError) as exc:
            raise DomainError("curve JSON must carry integer 'p' and 'q'") from exc


ZERO_CURVE = CurveClass(0, 0)


def normalize(p: int, q: int) -> CurveClass:
    """Canonical representative of +-(p, q)."""
    return CurveClass(p, q)


def intersection(a: CurveClass, b: CurveClass) -> int:
    """Geometric intersection number |p_a q_b - q_a p_b|."""
    return abs(a.p * b.q - a.q * b.p)


def _pairing(v: CurveClass, w: CurveClass) -> int:
    """<v, w> = v.p * w.q - v.q * w.p (signed)."""
    return v.p * w.q - v.q * w.p


@dataclass(frozen=True)
class MappingClassT:
    """A 2x2 integer matrix [[a, b], [c, d]] of determinant 1, modulo +-I.

    The canonical representative has its first nonzero entry (in the order
    a, b, c, d) positive.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        a, b, c, d = int(self.a), int(self.b), int(self.c), int(self.d)
        if a * d - b * c != 1:
            raise DomainError(f"matrix [[{a},{b}],[{c},{d}]] has determinant != 1")
        for entry in (a, b, c, d):
            if entry != 0:
                if entry < 0:
                    a, b, c, d = -a, -b, -c, -d
                break
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def identity(cls) -> "MappingClassT":
        return cls(1, 0, 0, 1)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "MappingClassT") -> "MappingClassT":
        return MappingClassT(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MappingClassT":
        return MappingClassT(self.d, -self.b, -self.c, self.a)

    def __pow__(self, k: int) -> "MappingClassT":
        if k < 0:
            return self.inverse() ** (-k)
        out = MappingClassT.identity()
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def apply(self, v: CurveClass) -> CurveClass:
        """Action on column vectors, then class normalization."""
        return CurveClass(self.a * v.p + self.b * v.q, self.c * v.p + self.d * v.q)


def twist_matrix(gamma: CurveClass) -> MappingClassT:
    """Matrix of the twist along gamma; for gamma = g * gamma' this is the
    g-th power of the primitive transvection along gamma'."""
    if gamma.is_zero:
        raise DomainError("no twist along the null class")
    base, g = gamma.primitive_part()
    p, q = base.p, base.q
    return MappingClassT(1 + g * p * q, -g * p * p, g * q * q, 1 - g * p * q)


def dehn_twist(gamma: CurveClass, k: int, v: CurveClass) -> CurveClass:
    """Class of T_gamma^k(v); the twist along the null class is the identity.

    Closed form: transvections along one line commute, so
    T_gamma^k(v) = v + k*g*<v, gamma'> * gamma'.
    """
    if gamma.is_zero or k == 0:
        return v
    base, g = gamma.primitive_part()
    c = k * g * _pairing(v, base)
    return CurveClass(v.p + c * base.p, v.q + c * base.q)


def op_d1(beta: CurveClass, alpha: CurveClass) -> CurveClass:
    """beta * alpha = T_alpha(beta) on simple closed classes.

    Inputs must be primitive or null; beta * 0 = beta and 0 * alpha = 0.
    """
    for c in (beta, alpha):
        if not (c.is_zero or c.is_primitive):
            raise DomainError(f"{c} is not a simple closed class")
    if alpha.is_zero:
        return beta
    if beta.is_zero:
        return ZERO_CURVE
    return dehn_twist(alpha, 1, beta)


def op_c1(beta: CurveClass, alpha: CurveClass) -> CurveClass:
    """beta * alpha = T_alpha(beta) where T_alpha is the multitwist of the
    class's resolved parallel copies (the gcd-th power of the primitive twist)."""
    if alpha.is_zero:
        return beta
    if beta.is_zero:
        return ZERO_CURVE
    return dehn_twist(alpha, 1, beta)


@dataclass(frozen=True)
class WeightedMulticurve:
    """Integer combination m0 * o + n * base on the torus.

    o is the null class; a multicurve here holds at most one essential
    class since distinct essential classes on the torus intersect.
    """

    zero_weight: int = 0
    weight: Optional[int] = None
    base: Optional[CurveClass] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "zero_weight", int(self.zero_weight))
        if (self.weight is None) != (self.base is None):
            raise DomainError("weight and base must be given together")
        if self.weight is not None:
            if int(self.weight) == 0:
                raise DomainError("essential weight must be nonzero")
            object.__setattr__(self, "weight", int(self.weight))
            base = self.base
            assert base is not None
            if base.is_zero or not base.is_primitive:
                raise DomainError("essential base must be a primitive class")

    @classmethod
    def zero(cls) -> "WeightedMulticurve":
        return cls(0, None, None)

    @property
    def is_group_zero(self) -> bool:
        return self.zero_weight == 0 and self.weight is None

    def __str__(self) -> str:
        parts = []
        if self.zero_weight:
            parts.append(f"{self.zero_weight}*o")
        if self.weight is not None:
            parts.append(f"{self.weight}*({self.base.p},{self.base.q})")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "zero": self.zero_weight,
            "weight": self.weight,
            "base": self.base.to_json() if self.base is not None else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> "WeightedMulticurve":
        if not isinstance(data, dict):
            raise DomainError("weighted multicurve JSON must be an object")
        base = data.get("base")
        return cls(
            int(data.get("zero", 0)),
            data.get("weight"),
            CurveClass.from_json(base) if base is not None else None,
        )


def op_w1(x: WeightedMulticurve, y: WeightedMulticurve) -> WeightedMulticurve:
    """x * y twists x's essential base by y's weighted multitwist.

    Weights are untouched; y acts through T_base^weight only, since the
    null class twists trivially.
    """
    if x.weight is None or y.weight is None:
        return x
    assert x.base is not None and y.base is not None
    moved = dehn_twist(y.base, y.weight, x.base)
    return WeightedMulticurve(x.zero_weight, x.weight, moved)


def op_w1_inverse(x: WeightedMulticurve, y: WeightedMulticurve) -> WeightedMulticurve:
    """The unique z with z * y = x."""
    if x.weight is None or y.weight is None:
        return x
    assert x.base is not None and y.base is not None
    moved = dehn_twist(y.base, -y.weight, x.base)
    return WeightedMulticurve(x.zero_weight, x.weight, moved)


def phi(alpha: CurveClass) -> WeightedMulticurve:
    """Resolve a class into its positively weighted multicurve.

    (p, q) with content g maps to g * (p/g, q/g); the null class maps
    to 1 * o.
    """
    if alpha.is_zero:
        return WeightedMulticurve(1, None, None)
    base, g = alpha.primitive_part()
    return WeightedMulticurve(0, g, base)


def phi_inverse(w: WeightedMulticurve) -> CurveClass:
    """Inverse of phi on its image.

    Accepts 1 * o (giving the null class) and n * base with n > 0 (giving
    n * base as coordinates).  Other positively weighted multicurves are
    outside the image and rejected.
    """
    if w.zero_weight < 0 or (w.weight is not None and w.weight <= 0):
        raise DomainError("phi_inverse requires positive weights")
    if w.weight is None:
        if w.zero_weight == 1:
            return ZERO_CURVE
        raise DomainError(f"{w} is not in the image of phi")
    if w.zero_weight != 0:
        raise DomainError(f"{w} is not in the image of phi")
    assert w.base is not None
    return CurveClass(w.weight * w.base.p, w.weight * w.base.q)


def braid_check(alpha: CurveClass, beta: CurveClass) -> bool:
    """Verify T_{T_alpha(beta)}(alpha) = beta for classes meeting once."""
    if not (alpha.is_primitive and beta.is_primitive):
        raise DomainError("braid_check requires primitive classes")
    if intersection(alpha, beta) != 1:
        raise DomainError("braid_check requires intersection number 1")
    delta = dehn_twist(alpha, 1, beta)
    return dehn_twist(delta, 1, alpha) == beta


def distinct_four(a1: CurveClass, a2: CurveClass) -> bool:
    """Whether {a1, a2, a1*a2, a2*a1} consists of four distinct classes."""
    if not (a1.is_primitive and a2.is_primitive):
        raise DomainError("distinct_four requires primitive classes")
    if a1 == a2:
        raise DomainError("distinct_four requires distinct classes")
    if intersection(a1, a2) < 1:
        raise DomainError("distinct_four requires intersecting classes")
    return len({a1, a2, op_d1(a1, a2), op_d1(a2, a1)}) == 4


def primitive_classes(cap: int) -> list[CurveClass]:
    """All primitive normal-form classes with |p|, |q| <= cap, sorted by (p, q)."""
    if cap <= 0:
        raise DomainError("cap must be positive")
    out = []
    for p in range(-cap, cap + 1):
        for q in range(0, cap + 1):
            c = CurveClass(p, q)
            if (c.p, c.q) == (p, q) and c.is_primitive:
                out.append(c)
    return sorted(set(out), key=CurveClass.key)


# ---------------------------------------------------------------------------
# literal parsing for the CLI

_CURVE_RE = re.compile(r"^\(?\s*(-?\d+)\s*[,/]\s*(-?\d+)\s*\)?$")
_TERM_RE = re.compile(r"^(-?\d+)\s*\*\s*(.+)$")


def parse_curve(text: str) -> CurveClass:
    """Parse 'p/q', '(p,q)' or 'o' (the null class)."""
    s = text.strip()
    if s in ("o", "O", "0"):
        return ZERO_CURVE
    m = _CURVE_RE.match(s)
    if not m:
        raise DomainError(f"cannot parse curve literal {text!r}")
    return CurveClass(int(m.group(1)), int(m.group(2)))


def split_terms(text: str) -> list[tuple[int, str]]:
    """Split a sum into (sign, term) chunks at top-level +/- only.

    Signs inside parentheses (as in '(1,-2)') do not split terms.
    """
    chunks: list[tuple[int, str]] = []
    depth = 0
    sign = 1
    current: list[str] = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise DomainError(f"unbalanced parentheses in {text!r}")
        if depth == 0 and ch in "+-" and current and current[-1] not in "*,/(":
            chunk = "".join(current).strip()
            if chunk:
                chunks.append((sign, chunk))
            current = []
            sign = 1 if ch == "+" else -1
            continue
        if depth == 0 and ch in "+-" and not any(c.strip() for c in current):
            sign = sign * (1 if ch == "+" else -1)
            continue
        current.append(ch)
    if depth != 0:
        raise DomainError(f"unbalanced parentheses in {text!r}")
    chunk = "".join(current).strip()
    if chunk:
        chunks.append((sign, chunk))
    return chunks


def parse_multicurve(text: str) -> WeightedMulticurve:
    """Parse 'm0*o + n*(p,q)' style literals."""
    s = text.strip()
    if s in ("0", ""):
        return WeightedMulticurve.zero()
    zero_weight = 0
    weight = 0
    base: Optional[CurveClass] = None
    for sign, chunk in split_terms(s):
        m = _TERM_RE.match(chunk)
        if m:
            coeff = sign * int(m.group(1))
            atom = parse_curve(m.group(2))
        else:
            coeff = sign
            atom = parse_curve(chunk)
        if atom.is_zero:
            zero_weight += coeff
        else:
            if not atom.is_primitive:
                raise DomainError(f"essential base {atom} must be primitive")
            if base is not None and atom != base:
                raise DomainError("a torus multicurve holds at most one essential class")
            base = atom
            weight += coeff
    if base is None or weight == 0:
        return WeightedMulticurve(zero_weight, None, None)
    return WeightedMulticurve(zero_weight, weight, base)

"""F-curves, elliptic bridge curves and their intersection numbers.

The six F-curve families are one-dimensional boundary strata.  Their
intersection numbers with a class ``a lambda - b_irr delta_irr - sum b_I delta_I``
are

    Ell            a - 12 b_irr + b_{1,{}}
    FIrr           b_irr
    F3(i,I)        b_{i,I}
    Fs(i,I)        2 b_irr - b_{i,I}
    F5(P,Q)        b_P + b_Q - b_{P+Q}
    F6(P,Q,R)      b_P + b_Q + b_R - b_{P+Q} - b_{P+R} - b_{Q+R} + b_{P+Q+R}

where P + Q adds genera and unites marks.  Two curves are identified when
they have the same intersection vector.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

from .divisor_algebra import (
    LAMBDA,
    DivisorClass,
    Space,
    bridge_functional,
    index_set_of,
)
from .index_set import IRR, BoundaryIndex, BridgeType, MarkedGenus, TSubset, bridge_types

__all__ = [
    "FCurve",
    "FAMILIES",
    "enumerate_fcurves",
    "intersect",
    "intersection_vector",
    "bridge_curves",
    "intersect_bridge",
    "weight",
    "fcurves_in_NE_upsilonT",
    "BridgeType",
]

FAMILIES = ("Ell", "FIrr", "F3", "Fs", "F5", "F6")

Part = tuple[int, tuple[int, ...]]


def _add(p: Part, q: Part) -> Part:
    return (p[0] + q[0], tuple(sorted(p[1] + q[1])))


@dataclass(frozen=True, eq=False)
class FCurve:
    """An F-curve given by its family and raw parameters.

    ``parts`` holds (genus, marks) tuples: one for F3 and Fs, two for F5 and
    three for F6.  Equality and hashing go through the intersection vector.
    """

    family: str
    ambient: MarkedGenus
    parts: tuple[Part, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple((int(i), tuple(sorted(m))) for i, m in self.parts)
        object.__setattr__(self, "parts", parts)
        reason = _invalid_reason(self.family, self.ambient, parts)
        if reason:
            raise ValueError(f"invalid {self.family} curve {parts} on {self.ambient}: {reason}")

    def vector_key(self) -> frozenset:
        return frozenset(intersection_vector(self).items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, FCurve):
            return NotImplemented
        return self.ambient == other.ambient and self.vector_key() == other.vector_key()

    def __hash__(self) -> int:
        return hash((self.ambient, self.vector_key()))

    def fourth_part(self) -> Part:
        """For F6, the complementary part (g - i - j - k, marks not in I, J, K)."""
        used = sum(p[0] for p in self.parts)
        marks = set().union(*(set(p[1]) for p in self.parts)) if self.parts else set()
        return (self.ambient.g - used, self.ambient.complement(marks))

    def __str__(self) -> str:
        if not self.parts:
            return self.family
        body = ",".join("(%d,{%s})" % (i, ",".join(map(str, m))) for i, m in self.parts)
        return f"{self.family}({body})"

    __repr__ = __str__


def _nonzero(p: Part) -> bool:
    return p != (0, ())


def _invalid_reason(family: str, amb: MarkedGenus, parts: tuple[Part, ...]) -> Optional[str]:
    g = amb.g
    allmarks = set(amb.marks)
    for i, m in parts:
        if i < 0 or not set(m) <= allmarks:
            return "part out of range"
    expected = {"Ell": 0, "FIrr": 0, "F3": 1, "Fs": 1, "F5": 2, "F6": 3}
    if family not in expected:
        return "unknown family"
    if len(parts) != expected[family]:
        return f"expects {expected[family]} parts"
    seen: set[int] = set()
    for _, m in parts:
        if seen & set(m):
            return "marks must be disjoint"
        seen |= set(m)
    if family == "Ell":
        return None if g >= 1 else "needs g >= 1"
    if family == "FIrr":
        return None if g >= 3 else "needs g >= 3"
    if family == "F3":
        (i, m), = parts
        return None if 0 <= i <= g - 2 and _nonzero((i, m)) else "needs 0 <= i <= g-2 and (i,I) != (0,{})"
    if family == "Fs":
        (i, _), = parts
        return None if 1 <= i <= g - 1 else "needs 1 <= i <= g-1"
    if family == "F5":
        p, q = parts
        if p[0] + q[0] > g - 1:
            return "needs i + j <= g-1"
        return None if _nonzero(p) and _nonzero(q) else "parts must differ from (0,{})"
    p, q, r = parts
    if p[0] + q[0] + r[0] > g:
        return "needs i + j + k <= g"
    fourth = (g - p[0] - q[0] - r[0], amb.complement(seen))
    if not all(_nonzero(x) for x in (p, q, r, fourth)):
        return "all four parts must differ from (0,{})"
    return None


def _b(L: DivisorClass, part: Part) -> Fraction:
    """The sign-flipped coefficient b = -(stored coefficient) of delta_part."""
    amb = L.ambient
    key = amb.maybe_index(*part)
    if key is None:
        return Fraction(0)
    return -L.coefficient(key)


def intersect(L: DivisorClass, C: FCurve) -> Fraction:
    """Intersection number of a class on the stable space with an F-curve."""
    if L.ambient != C.ambient:
        raise ValueError("ambient mismatch")
    if L.space is not Space.MGN:
        raise ValueError("F-curves live on the stable space; pull back first")
    a = L.lam
    b_irr = -L.irr
    f = C.family
    if f == "Ell":
        return a - 12 * b_irr + _b(L, (1, ()))
    if f == "FIrr":
        return b_irr
    if f == "F3":
        return _b(L, C.parts[0])
    if f == "Fs":
        return 2 * b_irr - _b(L, C.parts[0])
    if f == "F5":
        p, q = C.parts
        return _b(L, p) + _b(L, q) - _b(L, _add(p, q))
    p, q, r = C.parts
    return (_b(L, p) + _b(L, q) + _b(L, r)
            - _b(L, _add(p, q)) - _b(L, _add(p, r)) - _b(L, _add(q, r))
            + _b(L, _add(_add(p, q), r)))


@lru_cache(maxsize=None)
def _vector(family: str, ambient: MarkedGenus, parts: tuple[Part, ...]) -> tuple:
    C = FCurve.__new__(FCurve)
    object.__setattr__(C, "family", family)
    object.__setattr__(C, "ambient", ambient)
    object.__setattr__(C, "parts", parts)
    out = []
    for key in [LAMBDA, IRR] + index_set_of(ambient, Space.MGN):
        v = intersect(DivisorClass.basis_element(ambient, key), C)
        if v:
            out.append((key, v))
    return tuple(out)


def intersection_vector(C: FCurve) -> dict:
    """Map basis element -> value so that L.C = sum v(e) * coefficient_L(e)."""
    return dict(_vector(C.family, C.ambient, C.parts))


def dot(vector: dict, L: DivisorClass) -> Fraction:
    return sum((c * L.coefficient(k) for k, c in vector.items()), Fraction(0))


def _raw_fcurves(amb: MarkedGenus):
    g, marks = amb.g, amb.marks
    if g >= 1:
        yield FCurve("Ell", amb)
    if g >= 3:
        yield FCurve("FIrr", amb)
    subsets = list(amb.subsets())
    for i in range(0, g - 1):
        for m in subsets:
            if _nonzero((i, m)):
                yield FCurve("F3", amb, ((i, m),))
    for i in range(1, g):
        for m in subsets:
            yield FCurve("Fs", amb, ((i, m),))
    for i in range(g):
        for j in range(g - i):
            for assign in product(range(3), repeat=len(marks)):
                p = (i, tuple(k for k, s in zip(marks, assign) if s == 0))
                q = (j, tuple(k for k, s in zip(marks, assign) if s == 1))
                if _nonzero(p) and _nonzero(q):
                    yield FCurve("F5", amb, (p, q))
    for i in range(g + 1):
        for j in range(g + 1 - i):
            for k in range(g + 1 - i - j):
                for assign in product(range(4), repeat=len(marks)):
                    parts = tuple(
                        (gen, tuple(x for x, s in zip(marks, assign) if s == slot))
                        for slot, gen in enumerate((i, j, k))
                    )
                    fourth = (g - i - j - k, tuple(x for x, s in zip(marks, assign) if s == 3))
                    if all(_nonzero(x) for x in parts + (fourth,)):
                        yield FCurve("F6", amb, parts)


@lru_cache(maxsize=None)
def _enumerate(amb: MarkedGenus) -> tuple[FCurve, ...]:
    seen = set()
    out = []
    for C in _raw_fcurves(amb):
        key = C.vector_key()
        if key in seen:
            continue
        seen.add(key)
        out.append(C)
    return tuple(out)


def enumerate_fcurves(ambient: MarkedGenus) -> list[FCurve]:
    """F-curves up to numerical equivalence, families in catalogue order."""
    return list(_enumerate(ambient))


def bridge_curves(ambient: MarkedGenus, T: Optional[TSubset] = None) -> list[BridgeType]:
    """Elliptic bridge types (all of them, or those of type contained in T)."""
    return bridge_types(ambient, T)


def intersect_bridge(L: DivisorClass, B: BridgeType) -> Fraction:
    """Intersection of a class on the pseudostable space with an elliptic bridge curve."""
    if L.space is not Space.MGN_PS:
        raise ValueError("elliptic bridge curves live on the pseudostable space")
    if L.ambient != B.ambient:
        raise ValueError("ambient mismatch")
    return bridge_functional(L, B)


def weight(L: DivisorClass, B: BridgeType) -> Fraction:
    """Weight of the one-parameter subgroup of an elliptic bridge on L.

    lambda has weight 1, delta_irr weight 10 (type irr) or 12, and delta_{i,I}
    weight -1 per slot of the type it fills.
    """
    total = L.lam + L.irr * (10 if B.is_irr else 12)
    for key, c in L.boundary.items():
        total += c * -sum(1 for s in B.slots if s == key)
    return total


def elliptic_bridge_fcurve(B: BridgeType) -> FCurve:
    """The F-curve on the stable space mapping onto the elliptic bridge curve of type B."""
    amb = B.ambient
    if B.is_irr:
        return FCurve("Fs", amb, ((1, ()),))
    return FCurve("F5", amb, ((B.tau, B.marks), (amb.g - B.tau - 1, amb.complement(B.marks))))


def fcurves_in_NE_upsilonT(ambient: MarkedGenus, T: TSubset) -> list[FCurve]:
    """F-curves whose classes are contracted by the map to the T-semistable space."""
    ambient.require_not((1, 1), (2, 0), (1, 2), what="fcurves_in_NE_upsilonT")
    out = [FCurve("Ell", ambient)]
    for B in bridge_types(ambient, T):
        C = elliptic_bridge_fcurve(B)
        if C not in out:
            out.append(C)
    return out

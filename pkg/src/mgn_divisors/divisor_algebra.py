"""Exact divisor classes in the tautological basis.

Classes live either on the space of stable curves (``Space.MGN``) or on the
space of pseudostable curves (``Space.MGN_PS``), where the elliptic tail
divisor delta_{1,{}} is absent.  A class is stored as its coefficients on
lambda, delta_irr and the boundary classes delta_{i,I}; psi_k is not a basis
element and is written as -delta_{0,{k}}.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Union

from .index_set import (
    IRR,
    BoundaryIndex,
    MarkedGenus,
    TSubset,
    adm_is_divisorial,
    bridge_types,
    divisorial_marks,
    enumerate_indices,
)

__all__ = [
    "Space",
    "DivisorClass",
    "AdjointParams",
    "NotAdjoint",
    "LAMBDA",
    "from_adjoint",
    "to_adjoint",
    "pushforward_upsilon",
    "pullback_upsilon",
    "push_pull_defect",
    "is_T_compatible",
    "canonical_divisor",
    "canonical_pullback",
    "pullback_flag_map",
    "elliptic_tail_class",
]

Rational = Union[int, Fraction]
LAMBDA = "lambda"


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class Space(enum.Enum):
    MGN = "Mgn"
    MGN_PS = "MgnPs"


def index_set_of(ambient: MarkedGenus, space: Space) -> list[BoundaryIndex]:
    """Boundary pair classes carrying a coefficient on the given space."""
    pairs = enumerate_indices(ambient, include_irr=False)
    if space is Space.MGN_PS:
        tail = ambient.elliptic_tail
        pairs = [p for p in pairs if p != tail]
    return pairs


@dataclass(frozen=True)
class DivisorClass:
    """A Q-divisor class  lam*lambda + irr*delta_irr + sum c_I delta_I."""

    space: Space
    ambient: MarkedGenus
    lam: Fraction = Fraction(0)
    irr: Fraction = Fraction(0)
    boundary: Mapping[BoundaryIndex, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        lam, irr = as_fraction(self.lam), as_fraction(self.irr)
        if self.ambient.g == 0:
            # lambda and delta_irr vanish in genus zero
            lam, irr = Fraction(0), Fraction(0)
        allowed = set(index_set_of(self.ambient, self.space))
        clean = {}
        for key, c in dict(self.boundary).items():
            if not isinstance(key, BoundaryIndex) or key.is_irr:
                raise TypeError(f"boundary keys must be pair classes, got {key!r}")
            if key not in allowed:
                if self.space is Space.MGN_PS and key == self.ambient.elliptic_tail:
                    raise ValueError("delta_{1,{}} does not exist on the pseudostable space")
                raise ValueError(f"{key} is not a boundary class of {self.ambient}")
            c = as_fraction(c)
            if c:
                clean[key] = c
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "irr", irr)
        object.__setattr__(self, "boundary", dict(sorted(clean.items())))

    # --- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, ambient: MarkedGenus, space: Space = Space.MGN) -> "DivisorClass":
        return cls(space, ambient)

    @classmethod
    def lambda_class(cls, ambient: MarkedGenus, space: Space = Space.MGN) -> "DivisorClass":
        return cls(space, ambient, lam=Fraction(1))

    @classmethod
    def delta_irr(cls, ambient: MarkedGenus, space: Space = Space.MGN) -> "DivisorClass":
        return cls(space, ambient, irr=Fraction(1))

    @classmethod
    def delta(cls, ambient: MarkedGenus, i: int, marks: Iterable[int] = (), space: Space = Space.MGN) -> "DivisorClass":
        return cls(space, ambient, boundary={ambient.index(i, marks): Fraction(1)})

    @classmethod
    def psi(cls, ambient: MarkedGenus, k: int, space: Space = Space.MGN) -> "DivisorClass":
        return -cls.delta(ambient, 0, (k,), space)

    @classmethod
    def basis_element(cls, ambient: MarkedGenus, key, space: Space = Space.MGN) -> "DivisorClass":
        if key == LAMBDA:
            return cls.lambda_class(ambient, space)
        if key == IRR:
            return cls.delta_irr(ambient, space)
        return cls(space, ambient, boundary={key: Fraction(1)})

    # --- access ---------------------------------------------------------------

    def coefficient(self, key) -> Fraction:
        """Stored coefficient of ``LAMBDA``, ``IRR`` or a pair class (0 if absent)."""
        if key == LAMBDA:
            return self.lam
        if key == IRR:
            return self.irr
        return self.boundary.get(key, Fraction(0))

    def basis(self) -> list:
        return [LAMBDA, IRR] + index_set_of(self.ambient, self.space)

    def items(self):
        """Nonzero (basis element, coefficient) pairs in basis order."""
        out = []
        if self.lam:
            out.append((LAMBDA, self.lam))
        if self.irr:
            out.append((IRR, self.irr))
        out.extend(self.boundary.items())
        return out

    # --- arithmetic -----------------------------------------------------------

    def _check(self, other: "DivisorClass") -> None:
        if other.space is not self.space or other.ambient != self.ambient:
            raise ValueError("classes live on different spaces")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        b = dict(self.boundary)
        for k, c in other.boundary.items():
            b[k] = b.get(k, Fraction(0)) + c
        return DivisorClass(self.space, self.ambient, self.lam + other.lam, self.irr + other.irr, b)

    def __neg__(self) -> "DivisorClass":
        return self.scale(-1)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def scale(self, c: Rational) -> "DivisorClass":
        c = as_fraction(c)
        return DivisorClass(
            self.space, self.ambient, self.lam * c, self.irr * c, {k: v * c for k, v in self.boundary.items()}
        )

    def __rmul__(self, c: Rational) -> "DivisorClass":
        return self.scale(c)

    def __mul__(self, c: Rational) -> "DivisorClass":
        return self.scale(c)

    def __str__(self) -> str:
        terms = []
        for key, c in self.items():
            name = "lambda" if key == LAMBDA else ("delta_irr" if key == IRR else f"delta{key}")
            terms.append(f"{c}*{name}")
        return " + ".join(terms) if terms else "0"


def elliptic_tail_class(ambient: MarkedGenus) -> DivisorClass:
    tail = ambient.elliptic_tail
    if tail is None:
        raise ValueError(f"no elliptic tail divisor on {ambient}")
    return DivisorClass(Space.MGN, ambient, boundary={tail: Fraction(1)})


def canonical_divisor(ambient: MarkedGenus, space: Space = Space.MGN) -> DivisorClass:
    """The canonical class K = 13 lambda - 2 delta + psi, expanded in the basis.

    delta is delta_irr plus every boundary class except the [0,{k}], and
    psi = sum_k psi_k = -sum_k delta_{0,{k}}.
    """
    psi_classes = {ambient.maybe_index(0, (k,)) for k in ambient.marks} - {None}
    b = {}
    for key in index_set_of(ambient, space):
        b[key] = Fraction(-1) if key in psi_classes else Fraction(-2)
    return DivisorClass(space, ambient, Fraction(13), Fraction(-2), b)


@dataclass(frozen=True)
class AdjointParams:
    """Coefficients (a, alpha_irr, alpha_{i,I}) of K + psi + a lambda + Delta."""

    ambient: MarkedGenus
    a: Fraction
    alpha_irr: Fraction
    alphas: Mapping[BoundaryIndex, Fraction]
    space: Space = Space.MGN

    def __post_init__(self) -> None:
        a, ai = as_fraction(self.a), as_fraction(self.alpha_irr)
        if a < 0:
            raise ValueError(f"a must be >= 0, got {a}")
        if not 0 <= ai <= 1:
            raise ValueError(f"alpha_irr must lie in [0,1], got {ai}")
        expected = index_set_of(self.ambient, self.space)
        given = dict(self.alphas)
        tail = self.ambient.elliptic_tail
        if self.space is Space.MGN_PS and tail in given:
            raise ValueError("alpha_{1,{}} is not a coefficient on the pseudostable space")
        if set(given) != set(expected):
            missing = sorted(set(expected) - set(given))
            extra = sorted(set(given) - set(expected), key=lambda k: k.sort_key())
            raise ValueError(f"alphas must cover exactly the boundary classes; missing {missing}, extra {extra}")
        clean = {}
        for k in expected:
            v = as_fraction(given[k])
            if not 0 <= v <= 1:
                raise ValueError(f"alpha{k} must lie in [0,1], got {v}")
            clean[k] = v
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "alpha_irr", ai)
        object.__setattr__(self, "alphas", clean)

    @classmethod
    def uniform(cls, ambient: MarkedGenus, a: Rational, alpha_irr: Rational, alpha: Rational,
                space: Space = Space.MGN) -> "AdjointParams":
        return cls(ambient, as_fraction(a), as_fraction(alpha_irr),
                   {k: as_fraction(alpha) for k in index_set_of(ambient, space)}, space)

    def alpha(self, i: int, marks: Iterable[int] = ()) -> Fraction:
        return self.alphas[self.ambient.index(i, marks)]

    @property
    def alpha_tail(self) -> Fraction:
        """alpha_{1,{}} on the stable space (0 when the class does not exist)."""
        tail = self.ambient.elliptic_tail
        if tail is None or tail not in self.alphas:
            return Fraction(0)
        return self.alphas[tail]

    def pushforward(self) -> "AdjointParams":
        """The same coefficients with alpha_{1,{}} dropped, on the pseudostable space."""
        if self.space is not Space.MGN:
            raise ValueError("already on the pseudostable space")
        tail = self.ambient.elliptic_tail
        return AdjointParams(self.ambient, self.a, self.alpha_irr,
                             {k: v for k, v in self.alphas.items() if k != tail}, Space.MGN_PS)

    def with_alpha(self, key: BoundaryIndex, value: Rational) -> "AdjointParams":
        d = dict(self.alphas)
        d[key] = as_fraction(value)
        return AdjointParams(self.ambient, self.a, self.alpha_irr, d, self.space)

    def replace(self, a: Optional[Rational] = None, alpha_irr: Optional[Rational] = None) -> "AdjointParams":
        return AdjointParams(self.ambient, self.a if a is None else as_fraction(a),
                             self.alpha_irr if alpha_irr is None else as_fraction(alpha_irr),
                             self.alphas, self.space)


@dataclass(frozen=True)
class NotAdjoint:
    """Returned by :func:`to_adjoint` when a recovered coefficient is out of range."""

    reason: str


def from_adjoint(p: AdjointParams) -> DivisorClass:
    """(13+a) lambda - (2-alpha_irr) delta_irr - sum (2-alpha_{i,I}) delta_{i,I}."""
    b = {k: -(2 - v) for k, v in p.alphas.items()}
    return DivisorClass(p.space, p.ambient, 13 + p.a, -(2 - p.alpha_irr), b)


def to_adjoint(L: DivisorClass) -> Union[AdjointParams, NotAdjoint]:
    """Inverse of :func:`from_adjoint`."""
    a = L.lam - 13
    alpha_irr = 2 + L.irr
    alphas = {k: 2 + L.coefficient(k) for k in index_set_of(L.ambient, L.space)}
    if a < 0:
        return NotAdjoint(f"a = {a} < 0")
    if not 0 <= alpha_irr <= 1:
        return NotAdjoint(f"alpha_irr = {alpha_irr} outside [0,1]")
    for k, v in alphas.items():
        if not 0 <= v <= 1:
            return NotAdjoint(f"alpha{k} = {v} outside [0,1]")
    return AdjointParams(L.ambient, a, alpha_irr, alphas, L.space)


def _require_tail(ambient: MarkedGenus) -> BoundaryIndex:
    tail = ambient.elliptic_tail
    if tail is None:
        raise ValueError(f"there is no elliptic tail divisor on {ambient}")
    return tail


def pushforward_upsilon(L: DivisorClass) -> DivisorClass:
    """Push a class from the stable to the pseudostable space (delta_{1,{}} maps to 0)."""
    if L.space is not Space.MGN:
        raise ValueError("pushforward expects a class on the stable space")
    tail = _require_tail(L.ambient)
    b = {k: v for k, v in L.boundary.items() if k != tail}
    return DivisorClass(Space.MGN_PS, L.ambient, L.lam, L.irr, b)


def pullback_upsilon(L: DivisorClass) -> DivisorClass:
    """Pull back from the pseudostable space: lambda -> lambda + delta_{1,{}}, delta_irr -> delta_irr + 12 delta_{1,{}}."""
    if L.space is not Space.MGN_PS:
        raise ValueError("pullback expects a class on the pseudostable space")
    tail = _require_tail(L.ambient)
    b = dict(L.boundary)
    b[tail] = L.lam + 12 * L.irr
    return DivisorClass(Space.MGN, L.ambient, L.lam, L.irr, b)


def push_pull_defect(p: AdjointParams) -> Fraction:
    """Coefficient c with L = pullback(pushforward(L)) + c delta_{1,{}}."""
    if p.space is not Space.MGN:
        raise ValueError("push_pull_defect expects parameters on the stable space")
    p.ambient.require_not((1, 1), (2, 0), what="push_pull_defect")
    _require_tail(p.ambient)
    return 9 + p.alpha_tail - p.a - 12 * p.alpha_irr


def bridge_functional(L: DivisorClass, bridge) -> Fraction:
    """a + 10 b_irr for irr, a + 12 b_irr - b_{tau,I} - b_{tau+1,I} for a pair (stored coefficients)."""
    if bridge.is_irr:
        return L.lam + 10 * L.irr
    tail = L.ambient.elliptic_tail
    total = L.lam + 12 * L.irr
    for slot in bridge.slots:
        if slot != tail:
            total -= L.coefficient(slot)
    return total


def is_T_compatible(L: DivisorClass, T: TSubset) -> bool:
    """Vanishing on every elliptic bridge curve whose type lies in T."""
    if L.space is not Space.MGN_PS:
        raise ValueError("T-compatibility is defined for classes on the pseudostable space")
    if T.ambient != L.ambient:
        raise ValueError("ambient mismatch")
    return all(bridge_functional(L, b) == 0 for b in bridge_types(L.ambient, T))


_CANONICAL_EXCLUDED = ((1, 1), (2, 0), (1, 2), (2, 1), (3, 0))


def canonical_pullback(T: TSubset) -> DivisorClass:
    """Pullback of the canonical class of the T-semistable space to the pseudostable one.

    K - 8 delta_{1,{j}} summed over the distinct classes [1,{j}] of the
    divisorial pairs in T.  Requires the target to be Q-Gorenstein.
    """
    amb = T.ambient
    amb.require_not(*_CANONICAL_EXCLUDED, what="canonical_pullback")
    if not adm_is_divisorial(T):
        raise ValueError(f"the space for T={T} is not Q-Gorenstein")
    K = canonical_divisor(amb, Space.MGN_PS)
    b = dict(K.boundary)
    ones = {amb.index(1, (j,)) for j in divisorial_marks(T)}
    for one in ones:
        b[one] = b.get(one, Fraction(0)) - 8
    return DivisorClass(Space.MGN_PS, amb, K.lam, K.irr, b)


def pullback_flag_map(L: DivisorClass) -> DivisorClass:
    """Pull back along the map attaching fixed elliptic tails at g new marks, into genus 0.

    lambda and delta_irr go to 0; delta_{i,I} goes to the sum of delta_{0, I u J}
    over i-element subsets J of the new marks {n+1, ..., n+g}.
    """
    if L.space is not Space.MGN:
        raise ValueError("flag map pullback expects a class on the stable space")
    g, n = L.ambient.g, L.ambient.n
    target = MarkedGenus(0, g + n)
    new_marks = tuple(range(n + 1, n + g + 1))
    b: dict[BoundaryIndex, Fraction] = {}
    for key, c in L.boundary.items():
        for J in combinations(new_marks, key.genus):
            img = target.index(0, key.marks + J)
            b[img] = b.get(img, Fraction(0)) + c
    return DivisorClass(Space.MGN, target, 0, 0, b)

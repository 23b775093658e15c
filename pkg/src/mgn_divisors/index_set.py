"""Boundary index combinatorics for the moduli space of pointed stable curves.

A boundary divisor of genus g with n marks is labelled either by ``irr`` or by
a class ``[i, I]`` of pairs with 0 <= i <= g and I a subset of {1..n}, where
``(i, I)`` and ``(g - i, I^c)`` name the same divisor.  The pairs ``(0, {})``
and ``(g, {1..n})`` do not label anything.

This module canonicalizes those labels and implements the neighbour calculus
used to describe which sets of tacnodal singularities may be allowed together
(admissible subsets), their divisorial part, and their counts.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import chain, combinations
from typing import Iterable, Iterator, Optional

__all__ = [
    "MarkedGenus",
    "BoundaryIndex",
    "IRR",
    "TSubset",
    "BridgeType",
    "Containment",
    "CapExceeded",
    "canonical_index",
    "enumerate_indices",
    "is_admissible",
    "t_adm",
    "t_div",
    "bridge_types",
    "minimal_subsets",
    "count_admissible",
    "enumerate_admissible",
    "subsets_give_same_stack",
]

DEFAULT_ENUMERATION_CAP = 2 ** 20


class CapExceeded(RuntimeError):
    """Raised when an enumeration would produce more sets than allowed."""


@dataclass(frozen=True, order=True)
class MarkedGenus:
    """A pair (g, n): genus and number of marked points."""

    g: int
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.g, int) or not isinstance(self.n, int):
            raise TypeError("g and n must be integers")
        if self.g < 0 or self.n < 0:
            raise ValueError(f"g and n must be nonnegative, got ({self.g},{self.n})")

    @property
    def marks(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    def require_not(self, *excluded: tuple[int, int], what: str = "operation") -> None:
        if (self.g, self.n) in excluded:
            raise ValueError(f"{what} is not defined for (g,n)=({self.g},{self.n})")

    def is_valid_pair(self, i: int, marks: Iterable[int]) -> bool:
        marks = frozenset(marks)
        if not 0 <= i <= self.g:
            return False
        if not marks <= frozenset(self.marks):
            return False
        if i == 0 and not marks:
            return False
        if i == self.g and len(marks) == self.n:
            return False
        return True

    def complement(self, marks: Iterable[int]) -> tuple[int, ...]:
        marks = frozenset(marks)
        return tuple(k for k in self.marks if k not in marks)

    def index(self, i: int, marks: Iterable[int] = ()) -> "BoundaryIndex":
        return canonical_index(i, marks, self)

    def maybe_index(self, i: int, marks: Iterable[int] = ()) -> Optional["BoundaryIndex"]:
        """Canonical index of (i, marks), or None when the pair labels nothing."""
        marks = tuple(marks)
        if not self.is_valid_pair(i, marks):
            return None
        return canonical_index(i, marks, self)

    @property
    def elliptic_tail(self) -> Optional["BoundaryIndex"]:
        """The class [1, {}], or None when it is not a boundary label."""
        return self.maybe_index(1, ())

    def subsets(self) -> Iterator[tuple[int, ...]]:
        m = self.marks
        return chain.from_iterable(combinations(m, r) for r in range(len(m) + 1))

    def __str__(self) -> str:
        return f"({self.g},{self.n})"


@dataclass(frozen=True)
class BoundaryIndex:
    """``irr`` (genus < 0) or a canonical pair ``[genus, marks]``.

    Build pairs with :func:`canonical_index`; equality is equality of classes.
    """

    genus: int = -1
    marks: tuple[int, ...] = ()

    @property
    def is_irr(self) -> bool:
        return self.genus < 0

    def sort_key(self) -> tuple:
        if self.is_irr:
            return (-1, 0, ())
        return (self.genus, len(self.marks), self.marks)

    def __lt__(self, other: "BoundaryIndex") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.is_irr:
            return "irr"
        return "[%d,{%s}]" % (self.genus, ",".join(map(str, self.marks)))

    __repr__ = __str__


IRR = BoundaryIndex()


def _pair_key(i: int, marks: tuple[int, ...]) -> tuple:
    return (i, len(marks), marks)


def canonical_index(i: int, marks: Iterable[int], ambient: MarkedGenus) -> BoundaryIndex:
    """Canonical representative of the class of (i, marks).

    The representative is the smaller of (i, I) and (g - i, I^c) under the key
    (genus, number of marks, sorted marks).
    """
    return _canonical(i, tuple(sorted(set(marks))), ambient)


@lru_cache(maxsize=None)
def _canonical(i: int, marks: tuple[int, ...], ambient: MarkedGenus) -> BoundaryIndex:
    if not 0 <= i <= ambient.g:
        raise ValueError(f"genus {i} out of range 0..{ambient.g}")
    if not set(marks) <= set(ambient.marks):
        raise ValueError(f"marks {set(marks)} not contained in [{ambient.n}]")
    if not ambient.is_valid_pair(i, marks):
        raise ValueError(f"({i},{set(marks) or '{}'}) is not a boundary label")
    other = (ambient.g - i, ambient.complement(marks))
    best = min((i, marks), other, key=lambda p: _pair_key(*p))
    return BoundaryIndex(best[0], best[1])


@lru_cache(maxsize=None)
def _sorted_pair_classes(ambient: MarkedGenus) -> tuple[BoundaryIndex, ...]:
    found = set()
    for i in range(ambient.g + 1):
        for marks in ambient.subsets():
            if ambient.is_valid_pair(i, marks):
                found.add(canonical_index(i, marks, ambient))
    return tuple(sorted(found))


@lru_cache(maxsize=None)
def _pair_classes(ambient: MarkedGenus) -> frozenset[BoundaryIndex]:
    return frozenset(_sorted_pair_classes(ambient))


def enumerate_indices(ambient: MarkedGenus, include_irr: bool = True) -> list[BoundaryIndex]:
    """All classes of T_{g,n}, ``irr`` first, pairs sorted by canonical key."""
    pairs = list(_sorted_pair_classes(ambient))
    return ([IRR] if include_irr else []) + pairs


def neighbours(index: BoundaryIndex, ambient: MarkedGenus) -> frozenset[BoundaryIndex]:
    """Classes [i-1, I] and [i+1, I] that exist, for a pair class [i, I].

    The result does not depend on the representative chosen for [i, I].
    """
    if index.is_irr:
        return frozenset()
    out = set()
    i, marks = index.genus, index.marks
    for j in (i - 1, i + 1):
        nb = ambient.maybe_index(j, marks)
        if nb is not None:
            out.add(nb)
    return frozenset(out)


@dataclass(frozen=True)
class TSubset:
    """A subset of T_{g,n}."""

    ambient: MarkedGenus
    members: frozenset[BoundaryIndex] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))
        valid = _pair_classes(self.ambient)
        for m in self.members:
            if not isinstance(m, BoundaryIndex):
                raise TypeError(f"not a boundary index: {m!r}")
            if not m.is_irr and m not in valid:
                raise ValueError(f"{m} is not a canonical class of T_{self.ambient}")

    @classmethod
    def of(cls, ambient: MarkedGenus, *items) -> "TSubset":
        """Build from ``"irr"``, ``IRR``, BoundaryIndex values or raw (i, marks) pairs."""
        members = []
        for item in items:
            if isinstance(item, BoundaryIndex):
                members.append(item)
            elif item == "irr":
                members.append(IRR)
            else:
                i, marks = item
                members.append(canonical_index(i, marks, ambient))
        return cls(ambient, frozenset(members))

    @property
    def has_irr(self) -> bool:
        return IRR in self.members

    def pairs(self) -> list[BoundaryIndex]:
        return sorted(m for m in self.members if not m.is_irr)

    def sorted(self) -> list[BoundaryIndex]:
        return sorted(self.members)

    def _same(self, other: "TSubset") -> None:
        if other.ambient != self.ambient:
            raise ValueError("subsets live in different index sets")

    def __contains__(self, item: BoundaryIndex) -> bool:
        return item in self.members

    def __iter__(self) -> Iterator[BoundaryIndex]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.members)

    def __or__(self, other: "TSubset") -> "TSubset":
        self._same(other)
        return TSubset(self.ambient, self.members | other.members)

    def __sub__(self, other: "TSubset") -> "TSubset":
        self._same(other)
        return TSubset(self.ambient, self.members - other.members)

    def __le__(self, other: "TSubset") -> bool:
        self._same(other)
        return self.members <= other.members

    def __lt__(self, other: "TSubset") -> bool:
        self._same(other)
        return self.members < other.members

    def sort_key(self) -> tuple:
        return (len(self.members), tuple(m.sort_key() for m in self.sorted()))

    def __str__(self) -> str:
        return "{" + ", ".join(str(m) for m in self.sorted()) + "}"


def is_admissible(T: TSubset) -> bool:
    """Admissibility of T.

    No elliptic tail [1,{}], every pair class has a neighbour in T, and ``irr``
    is excluded in genus one.  In genus zero only the empty set qualifies.
    """
    amb = T.ambient
    if amb.g == 0:
        return len(T) == 0
    tail = amb.elliptic_tail
    if tail is not None and tail in T:
        return False
    if amb.g == 1 and T.has_irr:
        return False
    return all(neighbours(m, amb) & T.members for m in T.members if not m.is_irr)


def t_adm(T: TSubset) -> TSubset:
    """The admissible subset obtained from T by the two-step reduction."""
    amb = T.ambient
    kept = set(T.members)
    tail = amb.elliptic_tail
    if tail is not None:
        kept.discard(tail)
    if amb.g <= 1:
        kept.discard(IRR)
    reduced = {m for m in kept if m.is_irr or neighbours(m, amb) & kept}
    return TSubset(amb, frozenset(reduced))


def _psi_pairs(ambient: MarkedGenus) -> list[tuple[int, BoundaryIndex, BoundaryIndex]]:
    """Triples (j, [0,{j}], [1,{j}]) for every mark j where both classes exist."""
    out = []
    for j in ambient.marks:
        a = ambient.maybe_index(0, (j,))
        b = ambient.maybe_index(1, (j,))
        if a is not None and b is not None:
            out.append((j, a, b))
    return out


def t_div(T: TSubset, ambient: Optional[MarkedGenus] = None) -> TSubset:
    """Divisorial part: the union of the pairs {[0,{j}],[1,{j}]} inside T."""
    amb = T.ambient if ambient is None else ambient
    if amb != T.ambient:
        raise ValueError("ambient mismatch")
    if (amb.g, amb.n) in ((1, 1), (2, 1)):
        return TSubset(amb)
    members: set[BoundaryIndex] = set()
    for _, a, b in _psi_pairs(amb):
        if a in T and b in T:
            members |= {a, b}
    return TSubset(amb, frozenset(members))


def divisorial_marks(T: TSubset) -> list[int]:
    """Marks j with {[0,{j}],[1,{j}]} inside the divisorial part of T, ascending."""
    div = t_div(T)
    return [j for j, a, b in _psi_pairs(T.ambient) if a in div and b in div]


def divisorial_pairs(T: TSubset) -> list[frozenset[BoundaryIndex]]:
    """The pairs {[0,{j}],[1,{j}]} inside the divisorial part of T (deduplicated)."""
    div = t_div(T)
    out: list[frozenset[BoundaryIndex]] = []
    for _, a, b in _psi_pairs(T.ambient):
        pair = frozenset((a, b))
        if a in div and b in div and pair not in out:
            out.append(pair)
    return out


def adm_is_divisorial(T: TSubset) -> bool:
    """t_adm(T) == t_div(T), and every bridge type inside it is one of the divisorial pairs.

    The second half matters when pairs overlap: on (3,2) the set
    {[0,{1}],[1,{1}],[0,{2}],[1,{2}]} equals its divisorial part, yet it also
    contains the bridge type {[1,{1}],[2,{1}]} = {[1,{1}],[1,{2}]}.
    """
    adm = t_adm(T)
    if adm != t_div(T):
        return False
    pairs = divisorial_pairs(T)
    return all(frozenset(b.slots) in pairs for b in bridge_types(T.ambient, adm))


@dataclass(frozen=True)
class BridgeType:
    """Type of an elliptic bridge: ``irr`` or a pair {[tau, I], [tau+1, I]}.

    For a pair type, ``tau`` and ``marks`` hold the representative (tau, I)
    that is smallest under the canonical key among the two descriptions
    (tau, I) and (g - tau - 1, I^c) of the same pair.
    """

    ambient: MarkedGenus
    tau: int = -1
    marks: tuple[int, ...] = ()

    @property
    def is_irr(self) -> bool:
        return self.tau < 0

    @property
    def slots(self) -> tuple[BoundaryIndex, ...]:
        """The two classes [tau, I] and [tau+1, I]; they coincide when g = 2 tau + 1, n = 0."""
        if self.is_irr:
            return ()
        return (self.ambient.index(self.tau, self.marks), self.ambient.index(self.tau + 1, self.marks))

    @property
    def members(self) -> TSubset:
        if self.is_irr:
            return TSubset(self.ambient, frozenset([IRR]))
        return TSubset(self.ambient, frozenset(self.slots))

    def sort_key(self) -> tuple:
        return (-1,) if self.is_irr else (0,) + _pair_key(self.tau, self.marks)

    def __str__(self) -> str:
        if self.is_irr:
            return "irr"
        a, b = self.slots
        return "{%s,%s}" % (a, b)


def bridge_types(ambient: MarkedGenus, T: Optional[TSubset] = None) -> list[BridgeType]:
    """Elliptic bridge types, optionally only those whose members lie in T.

    ``irr`` needs g >= 2; a pair {[tau,I],[tau+1,I]} needs both classes to
    exist and to differ from [1,{}].
    """
    tail = ambient.elliptic_tail
    out: list[BridgeType] = []
    if ambient.g >= 2:
        out.append(BridgeType(ambient))
    seen = set()
    for tau in range(ambient.g):
        for marks in ambient.subsets():
            a = ambient.maybe_index(tau, marks)
            b = ambient.maybe_index(tau + 1, marks)
            if a is None or b is None or tail in (a, b):
                continue
            mirror = (ambient.g - tau - 1, ambient.complement(marks))
            rep = min((tau, marks), mirror, key=lambda p: _pair_key(*p))
            if rep in seen:
                continue
            seen.add(rep)
            out.append(BridgeType(ambient, rep[0], rep[1]))
    out.sort(key=BridgeType.sort_key)
    if T is not None:
        out = [b for b in out if b.members <= T]
    return out


def minimal_subsets(ambient: MarkedGenus) -> list[TSubset]:
    """Minimal nonempty admissible subsets, deduplicated, in a fixed order."""
    out: list[TSubset] = []
    for b in bridge_types(ambient):
        m = b.members
        if m not in out:
            out.append(m)
    return out


def count_admissible(ambient: MarkedGenus) -> int:
    """Number of admissible subsets, by closed formula."""
    g, n = ambient.g, ambient.n
    if g == 0 or (g, n) == (1, 0):
        return 1
    if (g, n) == (2, 0):
        return 2
    if n == 0:
        if g % 2 == 1:
            return 2 ** ((g - 1) // 2)
        return 2 ** (g // 2 - 1)
    return 2 ** (g * 2 ** (n - 1) - 1)


def enumerate_admissible(ambient: MarkedGenus, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[TSubset]:
    """All admissible subsets as unions of minimal subsets, smallest first."""
    found: set[frozenset[BoundaryIndex]] = {frozenset()}
    for m in minimal_subsets(ambient):
        found |= {s | m.members for s in found}
        if len(found) > cap:
            raise CapExceeded(f"more than {cap} admissible subsets for {ambient}")
    subsets = [TSubset(ambient, s) for s in found]
    subsets.sort(key=TSubset.sort_key)
    return iter(subsets)


class Containment(enum.Enum):
    SUBSET = "Subset"
    EQUAL = "Equal"
    SUPERSET = "Superset"
    INCOMPARABLE = "Incomparable"


def subsets_give_same_stack(T: TSubset, S: TSubset) -> Containment:
    """Compare the stacks of T- and S-semistable curves via their admissible reductions."""
    a, b = t_adm(T), t_adm(S)
    if a == b:
        return Containment.EQUAL
    if a < b:
        return Containment.SUBSET
    if b < a:
        return Containment.SUPERSET
    return Containment.INCOMPARABLE

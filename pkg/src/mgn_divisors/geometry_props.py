"""Properties of the T-semistable spaces: Q-factoriality, descent, factorization."""
from __future__ import annotations

from dataclasses import dataclass

from .divisor_algebra import DivisorClass, Space, is_T_compatible
from .index_set import (
    BridgeType,
    TSubset,
    adm_is_divisorial,
    bridge_types,
    divisorial_marks,
    divisorial_pairs,
    t_adm,
)

__all__ = [
    "FactorizationDescriptor",
    "is_q_factorial",
    "is_q_gorenstein",
    "descends",
    "factorize",
]

_K_NEGATIVE_ALWAYS = ((3, 1), (3, 2), (2, 2))


def _require(T: TSubset, what: str) -> None:
    T.ambient.require_not((2, 0), what=what)


def is_q_factorial(T: TSubset) -> bool:
    """Q-factorial (equivalently Q-Gorenstein) iff the admissible reduction is all divisorial.

    Checked on bridge types, not only as sets; see :func:`adm_is_divisorial`.
    """
    _require(T, "is_q_factorial")
    return adm_is_divisorial(T)


def is_q_gorenstein(T: TSubset) -> bool:
    return is_q_factorial(T)


def descends(L: DivisorClass, T: TSubset) -> bool:
    """Whether a class on the pseudostable space descends to the T-semistable space."""
    _require(T, "descends")
    if L.space is not Space.MGN_PS:
        raise ValueError("descent is asked of classes on the pseudostable space")
    return is_T_compatible(L, t_adm(T))


@dataclass(frozen=True)
class FactorizationDescriptor:
    """f_T = (small contraction) o (divisorial contractions, one per mark j)."""

    divisorial_steps: tuple[int, ...]
    small_contraction_generators: tuple[BridgeType, ...]
    k_negative_small: bool

    @property
    def small_is_identity(self) -> bool:
        return not self.small_contraction_generators


def _has_triple(T: TSubset) -> bool:
    amb = T.ambient
    for j in amb.marks:
        triple = [amb.maybe_index(i, (j,)) for i in range(3)]
        if None not in triple and all(x in T for x in triple):
            return True
    return False


def factorize(T: TSubset) -> FactorizationDescriptor:
    _require(T, "factorize")
    amb = T.ambient
    pairs = divisorial_pairs(T)
    gens = tuple(b for b in bridge_types(amb, t_adm(T)) if frozenset(b.slots) not in pairs)
    k_neg = (amb.g, amb.n) in _K_NEGATIVE_ALWAYS or not _has_triple(T)
    return FactorizationDescriptor(tuple(divisorial_marks(T)), gens, k_neg)

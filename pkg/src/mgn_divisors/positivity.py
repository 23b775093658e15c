"""F-nef and F-ample tests.

Two independent routes are provided.  The brute-force route intersects a class
with every enumerated F-curve.  The closed-form route evaluates explicit
inequalities on the coefficients of an adjoint divisor

    K + psi + a lambda + alpha_irr delta_irr + sum alpha_{i,I} delta_{i,I}

without computing any intersection number.  The test suite checks that they
agree.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Optional

from .divisor_algebra import (
    AdjointParams,
    DivisorClass,
    Space,
    from_adjoint,
    index_set_of,
    pullback_upsilon,
)
from .fcurves import FCurve, dot, enumerate_fcurves, fcurves_in_NE_upsilonT, intersection_vector
from .index_set import MarkedGenus, TSubset

__all__ = [
    "Status",
    "Mode",
    "PositivityVerdict",
    "Inequality",
    "brute_force_verdict",
    "adjoint_fnef_closed_form",
    "ps_adjoint_fnef_for_T",
    "verdict_matches_T",
    "mgn_conditions",
    "ps_conditions",
    "PS_EXCLUDED",
    "random_adjoint_params",
    "wall_params",
    "crosscheck_mgn",
    "crosscheck_ps",
    "Discrepancy",
    "verdict_for_T",
]

PS_EXCLUDED = ((1, 1), (2, 0), (1, 2))


class Status(enum.Enum):
    F_AMPLE = "FAmple"
    F_NEF_STRICT_EXCEPT_ELL = "FNefStrictExceptEll"
    F_NEF_ON_EXACT_SET = "FNefOnExactSet"
    F_NEF = "FNef"
    NOT_F_NEF = "NotFNef"


class Mode(enum.Enum):
    AMPLE = "ample"
    NEF_ELL_ONLY = "nef"


@dataclass(frozen=True)
class PositivityVerdict:
    status: Status
    witnesses: tuple[tuple[FCurve, Fraction], ...] = ()

    def zero_set(self) -> list[FCurve]:
        return [C for C, v in self.witnesses if v == 0]

    def negatives(self) -> list[FCurve]:
        return [C for C, v in self.witnesses if v < 0]


def _values(L: DivisorClass) -> list[tuple[FCurve, Fraction]]:
    return [(C, dot(intersection_vector(C), L)) for C in enumerate_fcurves(L.ambient)]


def brute_force_verdict(L: DivisorClass) -> PositivityVerdict:
    """Classify L by its intersection numbers with all F-curves."""
    if L.space is not Space.MGN:
        raise ValueError("brute force runs on the stable space; pull back first")
    values = _values(L)
    witnesses = tuple((C, v) for C, v in values if v <= 0)
    if not witnesses:
        return PositivityVerdict(Status.F_AMPLE)
    if any(v < 0 for _, v in witnesses):
        return PositivityVerdict(Status.NOT_F_NEF, witnesses)
    if len(witnesses) == 1 and witnesses[0][0].family == "Ell":
        return PositivityVerdict(Status.F_NEF_STRICT_EXCEPT_ELL, witnesses)
    return PositivityVerdict(Status.F_NEF, witnesses)


def verdict_for_T(L: DivisorClass, T: TSubset) -> PositivityVerdict:
    """Brute-force verdict for a pseudostable class, relative to the curves contracted for T.

    Status is ``FNefOnExactSet`` when the pullback is F-nef and vanishes
    exactly on the F-curves of the contracted face.
    """
    if L.space is not Space.MGN_PS:
        raise ValueError("expects a class on the pseudostable space")
    amb = L.ambient
    amb.require_not(*PS_EXCLUDED, what="verdict_matches_T")
    pulled = pullback_upsilon(L)
    base = brute_force_verdict(pulled)
    if base.status is Status.NOT_F_NEF:
        return base
    expected = set(fcurves_in_NE_upsilonT(amb, T))
    if set(base.zero_set()) == expected:
        return PositivityVerdict(Status.F_NEF_ON_EXACT_SET, base.witnesses)
    return base


def verdict_matches_T(L: DivisorClass, T: TSubset) -> bool:
    """True iff the pullback of L is F-nef and vanishes exactly on the contracted F-curves."""
    return verdict_for_T(L, T).status is Status.F_NEF_ON_EXACT_SET


# --- closed-form inequalities -------------------------------------------------

_RELATIONS = {
    "<": lambda x, y: x < y,
    "<=": lambda x, y: x <= y,
    "=": lambda x, y: x == y,
    ">=": lambda x, y: x >= y,
    ">": lambda x, y: x > y,
}


@dataclass(frozen=True)
class Inequality:
    """``lhs rel rhs`` with exact sides and a short label naming the condition."""

    label: str
    lhs: Fraction
    rel: str
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return _RELATIONS[self.rel](self.lhs, self.rhs)

    def __str__(self) -> str:
        return f"{self.label}: {self.lhs} {self.rel} {self.rhs}"


Part = tuple[int, tuple[int, ...]]


def _assignments(marks: tuple[int, ...], bins: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    for assign in product(range(bins), repeat=len(marks)):
        yield tuple(tuple(k for k, s in zip(marks, assign) if s == b) for b in range(bins))


def _u(*sets: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(set().union(*map(set, sets))))


def mgn_conditions(p: AdjointParams, mode: Mode) -> Iterator[Inequality]:
    """Coefficient inequalities equivalent to F-ampleness (or F-nef, trivial only on Ell)."""
    if p.space is not Space.MGN:
        raise ValueError("expects parameters on the stable space")
    amb = p.ambient
    g, marks = amb.g, amb.marks

    def al(i: int, m) -> Optional[Fraction]:
        key = amb.maybe_index(i, m)
        return None if key is None else p.alphas[key]

    if g >= 1:
        thr = (9 - p.a + p.alpha_tail) / 12
        yield Inequality("(i) alpha_irr vs (9-a+alpha_1)/12", p.alpha_irr, ">" if mode is Mode.AMPLE else "=", thr)
    for i in range(1, g):
        for m in amb.subsets():
            x = al(i, m)
            if x is not None:
                yield Inequality(f"(ii) i={i} I={set(m) or '{}'}", p.alpha_irr, "<", 1 + x / 2)
    for i in range(g):
        for j in range(g - i):
            for I, J, _ in _assignments(marks, 3):
                xs = (al(i, I), al(j, J), al(i + j, _u(I, J)))
                if None in xs:
                    continue
                yield Inequality(f"(iii) ({i},{I}) ({j},{J})", xs[0] + xs[1] - xs[2], "<", Fraction(2))
    for i in range(g + 1):
        for j in range(g + 1 - i):
            for k in range(g + 1 - i - j):
                for I, J, K, _ in _assignments(marks, 4):
                    xs = (al(i, I), al(j, J), al(k, K),
                          al(i + j, _u(I, J)), al(i + k, _u(I, K)), al(j + k, _u(J, K)),
                          al(i + j + k, _u(I, J, K)))
                    if None in xs:
                        continue
                    lhs = xs[0] + xs[1] + xs[2] - xs[3] - xs[4] - xs[5] + xs[6]
                    yield Inequality(f"(iv) ({i},{I}) ({j},{J}) ({k},{K})", lhs, "<", Fraction(2))


def adjoint_fnef_closed_form(p: AdjointParams, mode: Mode = Mode.AMPLE) -> bool:
    """Closed-form F-ample test (``Mode.AMPLE``) or F-nef-trivial-only-on-Ell test (``Mode.NEF_ELL_ONLY``)."""
    if mode is Mode.NEF_ELL_ONLY and p.ambient.g == 0:
        return False  # there is no elliptic curve class to be trivial on
    return all(q.holds for q in mgn_conditions(p, mode))


def ps_conditions(p: AdjointParams, T: TSubset) -> Iterator[Inequality]:
    """Coefficient inequalities for a pseudostable adjoint divisor and a subset T.

    Together they say: the pullback to the stable space is F-nef and is
    trivial exactly on the F-curves contracted to the T-semistable space.
    Every coefficient alpha_{k,K} used must be a genuine boundary class other
    than [1,{}]; quantified terms whose coefficients do not exist are absent.
    """
    if p.space is not Space.MGN_PS:
        raise ValueError("expects parameters on the pseudostable space")
    amb = p.ambient
    amb.require_not(*PS_EXCLUDED, what="ps_adjoint_fnef_for_T")
    if T.ambient != amb:
        raise ValueError("ambient mismatch")
    g, n, marks = amb.g, amb.n, amb.marks
    a, ai = p.a, p.alpha_irr
    tail = amb.elliptic_tail

    def al(i: int, m) -> Optional[Fraction]:
        key = amb.maybe_index(i, m)
        if key is None or key == tail:
            return None
        return p.alphas[key]

    if g >= 2:
        thr = (7 - a) / 10
        rel = "=" if T.has_irr else ">"
        yield Inequality("(i) alpha_irr vs (7-a)/10", ai, rel, thr)

    for i in range(g):
        for j in range(g - i):
            for I, J, _ in _assignments(marks, 3):
                xs = (al(i, I), al(j, J), al(i + j, _u(I, J)))
                if None in xs:
                    continue
                yield Inequality(f"(ii)(a) ({i},{I}) ({j},{J})", xs[0] + xs[1] - xs[2], "<", Fraction(2))

    for i in range(g):
        for I in amb.subsets():
            x, y = al(i, I), al(i + 1, I)
            if x is None or y is None:
                continue
            pair = {amb.index(i, I), amb.index(i + 1, I)}
            rel = "=" if pair <= T.members else ">"
            yield Inequality(f"(ii)(b) ({i},{I})", 12 * ai - 7 + a, rel, x + y)

    for i in range(g + 1):
        for j in range(g + 1 - i):
            for h in range(g + 1 - i - j):
                for I, J, H, _ in _assignments(marks, 4):
                    xs = (al(i, I), al(j, J), al(h, H),
                          al(i + j, _u(I, J)), al(i + h, _u(I, H)), al(j + h, _u(J, H)),
                          al(i + j + h, _u(I, J, H)))
                    if None in xs:
                        continue
                    lhs = xs[0] + xs[1] + xs[2] - xs[3] - xs[4] - xs[5] + xs[6]
                    yield Inequality(f"(iii)(a) ({i},{I}) ({j},{J}) ({h},{H})", lhs, "<", Fraction(2))

    for i in range(g):
        for j in range(g - i):
            for I, J, _ in _assignments(marks, 3):
                IJ = _u(I, J)
                xs = (al(i, I), al(i + 1, I), al(j, J), al(j + 1, J), al(i + j + 1, IJ), al(i + j, IJ))
                if None in xs:
                    continue
                lhs = (xs[0] - xs[1]) + (xs[2] - xs[3]) + (xs[4] - xs[5])
                yield Inequality(f"(iii)(b) ({i},{I}) ({j},{J})", lhs, "<", 11 - (12 * ai + a))

    two = al(2, ())
    for i in range(g - 1):
        for I in amb.subsets():
            xs = (al(i, I), al(i + 1, I), al(i + 2, I), two)
            if None in xs:
                continue
            lhs = (xs[0] - xs[1]) + (xs[2] - xs[1]) - xs[3]
            yield Inequality(f"(iii)(c) ({i},{I})", lhs, "<", 20 - 2 * (12 * ai + a))

    if (g, n) == (3, 0):
        yield Inequality("(iii)(d) genus 3", ai, "<", (11 - a) / 12)
    elif (g, n) == (4, 0):
        yield Inequality("(iii)(d) genus 4", ai, "<", (Fraction(19, 2) - a + Fraction(3, 4) * two) / 12)
    else:
        for i in range(g - 1):
            for I in amb.subsets():
                x, y = al(i, I), al(i + 1, I)
                if x is None or y is None:
                    continue
                yield Inequality(f"(iii)(d) first ({i},{I})", ai, "<", (11 - a + y - x) / 12)
        if g >= 3:
            yield Inequality("(iii)(d) second", ai, "<", (10 - a + two / 2) / 12)
            three = al(3, ())
            if three is not None:
                yield Inequality("(iii)(d) third", ai, "<", (Fraction(29, 3) - a + two - three / 3) / 12)


def ps_adjoint_fnef_for_T(p: AdjointParams, T: TSubset) -> bool:
    """Closed-form version of :func:`verdict_matches_T` for adjoint divisors."""
    return all(q.holds for q in ps_conditions(p, T))


# --- sampling for cross-validation ----------------------------------------------

def random_adjoint_params(ambient: MarkedGenus, rng, space: Space = Space.MGN, den: int = 24) -> AdjointParams:
    """Random adjoint parameters on the grid 1/den, biased toward the walls.

    A third of the draws use one shared boundary coefficient.  alpha_irr is
    either uniform or placed exactly on one of the thresholds (7-a)/10,
    (9-a)/12, (9-a+alpha_{1,{}})/12 or (7-a+alpha+alpha')/12.
    """
    keys = index_set_of(ambient, space)

    def draw() -> Fraction:
        return Fraction(rng.randint(0, den), den)

    a = draw() if rng.random() < 0.7 else Fraction(0)
    if rng.random() < 0.3:
        c = draw()
        alphas = {k: c for k in keys}
    else:
        alphas = {k: draw() for k in keys}
    cands = [draw(), (7 - a) / 10, (9 - a) / 12]
    tail = ambient.elliptic_tail
    if space is Space.MGN and tail is not None:
        cands.append((9 - a + alphas[tail]) / 12)
    if keys:
        cands.append((7 - a + alphas[rng.choice(keys)] + alphas[rng.choice(keys)]) / 12)
    ai = rng.choice(cands)
    if not 0 <= ai <= 1:
        ai = draw()
    return AdjointParams(ambient, a, ai, alphas, space)


def wall_params(ambient: MarkedGenus, T: TSubset, a: Fraction, alpha_irr: Fraction) -> Optional[AdjointParams]:
    """Pseudostable parameters putting every equality case of T on its wall at once.

    The shared coefficient alpha = (12 alpha_irr - 7 + a)/2 makes every pair
    {[i,I],[i+1,I]} an equality; returns None when alpha leaves [0,1].
    """
    c = (12 * alpha_irr - 7 + a) / 2
    if not 0 <= c <= 1 or not 0 <= alpha_irr <= 1:
        return None
    return AdjointParams(ambient, a, alpha_irr, {k: c for k in index_set_of(ambient, Space.MGN_PS)}, Space.MGN_PS)


@dataclass(frozen=True)
class Discrepancy:
    kind: str
    params: AdjointParams
    detail: str


def crosscheck_mgn(ambient: MarkedGenus, samples: int, rng) -> list[Discrepancy]:
    """Closed form against brute force on random stable-space parameters, both modes."""
    out = []
    for _ in range(samples):
        p = random_adjoint_params(ambient, rng)
        status = brute_force_verdict(from_adjoint(p)).status
        for mode, expect in ((Mode.AMPLE, Status.F_AMPLE), (Mode.NEF_ELL_ONLY, Status.F_NEF_STRICT_EXCEPT_ELL)):
            if adjoint_fnef_closed_form(p, mode) != (status is expect):
                out.append(Discrepancy(mode.value, p, f"brute force says {status.value}"))
    return out


def crosscheck_ps(ambient: MarkedGenus, Ts: Iterable[TSubset], samples: int, rng) -> list[Discrepancy]:
    """Closed form against brute force on random pseudostable parameters, for each T."""
    out = []
    for T in Ts:
        for _ in range(samples):
            p = random_adjoint_params(ambient, rng, Space.MGN_PS)
            if ps_adjoint_fnef_for_T(p, T) != verdict_matches_T(from_adjoint(p), T):
                out.append(Discrepancy(f"ps {T}", p, "closed form and brute force disagree"))
    return out

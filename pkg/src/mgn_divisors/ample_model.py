"""Ample models of adjoint divisors and the chamber sweep.

``classify`` walks a fixed decision ladder:

(A) the closed-form F-ample test passes: the ample model is the identity.
(B) F-nef and trivial only on the elliptic tail curve: the contraction to the
    pseudostable space.
(C) the coefficients lie in the explicitly described region (all boundary
    coefficients within 1/3 of each other, plus the two lower bounds on
    alpha_irr): the model is read off from where alpha_irr sits.
(D) otherwise search the admissible subsets T for the unique one whose
    F-nef pattern matches the pushforward.

Every result carries a certificate listing the clause that fired and the
exact inequalities that were evaluated.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .divisor_algebra import AdjointParams, Space, as_fraction, from_adjoint
from .index_set import (
    CapExceeded,
    MarkedGenus,
    TSubset,
    enumerate_admissible,
    is_admissible,
)
from .positivity import (
    PS_EXCLUDED,
    Inequality,
    Mode,
    mgn_conditions,
    ps_conditions,
    verdict_matches_T,
)

__all__ = [
    "Model",
    "Reason",
    "Certificate",
    "AmpleModelResult",
    "classify",
    "uniqueness_check",
    "RationalRange",
    "GridSpec",
    "ChamberRecord",
    "sweep",
    "summarize",
    "Wall",
    "WallReport",
    "recover_walls",
    "SEARCH_CAP",
]

SEARCH_CAP = 2 ** 16


class Model(enum.Enum):
    IDENTITY = "Identity"
    UPSILON_PS = "UpsilonPs"
    UPSILON_T = "UpsilonT"
    UNCLASSIFIED = "Unclassified"


class Reason(enum.Enum):
    HYPOTHESIS_VIOLATED = "HypothesisViolated"
    OUTSIDE_REGION = "OutsideRegion"
    SEARCH_CAPPED = "SearchCapped"
    # the pushforward matches some T but alpha_irr exceeds (9-a+alpha_{1,{}})/12,
    # so only the pushforward's ample model is known
    PUSHFORWARD_ONLY = "PushforwardOnly"
    AMBIGUOUS = "Ambiguous"


@dataclass(frozen=True)
class Certificate:
    clause: str
    inequalities: tuple[Inequality, ...] = ()
    notes: tuple[str, ...] = ()


def _t_label(T: TSubset) -> str:
    return "UpsilonT" + str(T)


@dataclass(frozen=True)
class AmpleModelResult:
    """Reported model plus the raw clause outcome.

    ``t`` is set for UpsilonT results, for UpsilonPs results that came from
    T = {} (the T-semistable space for the empty set is the pseudostable
    space), and for PushforwardOnly results.
    """

    model: Model
    certificate: Certificate
    t: Optional[TSubset] = None
    reason: Optional[Reason] = None

    @property
    def label(self) -> str:
        if self.model is Model.UPSILON_T:
            return _t_label(self.t)
        if self.model is Model.UNCLASSIFIED:
            return f"Unclassified({self.reason.value})"
        return self.model.value

    @property
    def raw_label(self) -> str:
        """Like ``label`` but keeps UpsilonT{} apart from UpsilonPs."""
        if self.model is Model.UPSILON_PS and self.t is not None:
            return _t_label(self.t)
        return self.label


def _result_for_T(T: TSubset, cert: Certificate) -> AmpleModelResult:
    if len(T) == 0:
        return AmpleModelResult(Model.UPSILON_PS, cert, t=T)
    return AmpleModelResult(Model.UPSILON_T, cert, t=T)


def _region_hypotheses(p: AdjointParams) -> tuple[list[Inequality], Optional[TSubset]]:
    """Hypothesis inequalities of the explicit region, and the T their equalities pick out."""
    amb = p.ambient
    a, ai = p.a, p.alpha_irr
    out: list[Inequality] = []
    values = sorted(p.alphas.items(), key=lambda kv: kv[0].sort_key())
    if values:
        lo = min(values, key=lambda kv: kv[1])
        hi = max(values, key=lambda kv: kv[1])
        out.append(Inequality(f"spread |alpha{hi[0]} - alpha{lo[0]}|", hi[1] - lo[1], "<", Fraction(1, 3)))
    if ai == 1 and values:
        out.append(Inequality(f"alpha_irr = 1 needs alpha{lo[0]} > 0", lo[1], ">", Fraction(0)))
    members = set()
    if amb.g >= 2:
        bound = (7 - a) / 10
        out.append(Inequality("inq1 (7-a)/10 <= alpha_irr", bound, "<=", ai))
        if bound == ai:
            members.add("irr")
    tail = amb.elliptic_tail
    for i in range(amb.g):
        for m in amb.subsets():
            x, y = amb.maybe_index(i, m), amb.maybe_index(i + 1, m)
            if x is None or y is None or tail in (x, y):
                continue
            bound = (7 - a + p.alphas[x] + p.alphas[y]) / 12
            out.append(Inequality(f"inq2 ({i},{set(m) or '{}'})", bound, "<=", ai))
            if bound == ai:
                members.update((x, y))
    if not all(q.holds for q in out):
        return out, None
    return out, TSubset.of(amb, *members)


def classify(p: AdjointParams, search_cap: int = SEARCH_CAP) -> AmpleModelResult:
    """Ample model of the adjoint divisor with parameters ``p`` (on the stable space)."""
    if p.space is not Space.MGN:
        raise ValueError("classify expects parameters on the stable space")
    amb = p.ambient
    gn = (amb.g, amb.n)
    a, ai = p.a, p.alpha_irr

    ample = tuple(mgn_conditions(p, Mode.AMPLE))
    if all(q.holds for q in ample):
        return AmpleModelResult(Model.IDENTITY, Certificate("A: F-ample", ample))

    if gn not in ((1, 1), (2, 0)) and amb.g >= 1:
        nef = tuple(mgn_conditions(p, Mode.NEF_ELL_ONLY))
        if all(q.holds for q in nef):
            return AmpleModelResult(Model.UPSILON_PS, Certificate("B: F-nef, trivial only on Ell", nef))

    if gn in PS_EXCLUDED or amb.g == 0:
        note = "g = 0 has no pseudostable contraction" if amb.g == 0 else f"{amb} is excluded"
        reason = Reason.OUTSIDE_REGION if amb.g == 0 else Reason.HYPOTHESIS_VIOLATED
        return AmpleModelResult(Model.UNCLASSIFIED, Certificate("none", (), (note,)), reason=reason)

    upper = (9 - a + p.alpha_tail) / 12
    hyps, T = _region_hypotheses(p)
    if T is not None:
        ineqs = tuple(hyps)
        if ai > upper:
            # (A) already failed, so this branch means the region description and the
            # F-ample test disagree; keep both in the certificate
            note = "region says identity but the F-ample test failed"
            return AmpleModelResult(Model.IDENTITY, Certificate("C: region, identity", ineqs, (note,)))
        if ai > (9 - a) / 12:
            return AmpleModelResult(Model.UPSILON_PS, Certificate("C: region, pseudostable", ineqs))
        return _result_for_T(T, Certificate("C: region, T from equalities", ineqs))

    cap_bound = Inequality("alpha_irr <= (10-a)/12", ai, "<=", (10 - a) / 12)
    if not cap_bound.holds:
        return AmpleModelResult(Model.UNCLASSIFIED, Certificate("D: not applicable", tuple(hyps) + (cap_bound,)),
                                reason=Reason.OUTSIDE_REGION)
    q = p.pushforward()
    hits = []
    try:
        for S in enumerate_admissible(amb, cap=search_cap):
            if all(c.holds for c in ps_conditions(q, S)):
                hits.append(S)
    except CapExceeded:
        return AmpleModelResult(Model.UNCLASSIFIED, Certificate("D: search", (cap_bound,), (f"more than {search_cap} admissible subsets",)),
                                reason=Reason.SEARCH_CAPPED)
    if not hits:
        return AmpleModelResult(Model.UNCLASSIFIED, Certificate("D: search, no admissible T matches", (cap_bound,)),
                                reason=Reason.OUTSIDE_REGION)
    if len(hits) > 1:
        return AmpleModelResult(Model.UNCLASSIFIED, Certificate("D: search", (cap_bound,), tuple(map(str, hits))),
                                reason=Reason.AMBIGUOUS)
    S = hits[0]
    ineqs = (cap_bound,) + tuple(ps_conditions(q, S))
    low = Inequality("alpha_irr <= (9-a+alpha_{1,{}})/12", ai, "<=", upper)
    if not low.holds:
        return AmpleModelResult(Model.UNCLASSIFIED, Certificate("D: search, pushforward only", ineqs + (low,)),
                                t=S, reason=Reason.PUSHFORWARD_ONLY)
    return _result_for_T(S, Certificate("D: search", ineqs + (low,)))


def uniqueness_check(p: AdjointParams, r: AmpleModelResult) -> bool:
    """Re-verify an UpsilonT answer by brute force on the pushforward."""
    if r.t is None or r.model not in (Model.UPSILON_T, Model.UPSILON_PS):
        raise ValueError("uniqueness_check needs a result carrying an admissible T")
    if not is_admissible(r.t):
        return False
    if p.alpha_irr > (9 - p.a + p.alpha_tail) / 12:
        return False
    return verdict_matches_T(from_adjoint(p.pushforward()), r.t)


# --- sweeps -----------------------------------------------------------------

@dataclass(frozen=True)
class RationalRange:
    """Closed range start, start+step, ..., up to stop."""

    start: Fraction
    stop: Fraction
    step: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        for name in ("start", "stop", "step"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.stop < self.start:
            raise ValueError("empty range")

    @classmethod
    def point(cls, x) -> "RationalRange":
        return cls(x, x, 1)

    def values(self) -> list[Fraction]:
        out, x = [], self.start
        while x <= self.stop:
            out.append(x)
            x += self.step
        return out


@dataclass(frozen=True)
class GridSpec:
    """A grid of adjoint parameters.

    Either ``alpha`` (one value shared by every boundary coefficient) or
    ``per_index`` (fixed coefficients) must be given.
    """

    ambient: MarkedGenus
    a: RationalRange
    alpha_irr: RationalRange
    alpha: Optional[RationalRange] = None
    per_index: Optional[Mapping] = None

    def __post_init__(self) -> None:
        if (self.alpha is None) == (self.per_index is None):
            raise ValueError("give exactly one of alpha (uniform) or per_index")

    def points(self) -> Iterator[AdjointParams]:
        """Row-major: a, then alpha, then alpha_irr varies fastest."""
        alphas = self.alpha.values() if self.alpha is not None else [None]
        for a in self.a.values():
            for al in alphas:
                for ai in self.alpha_irr.values():
                    if al is None:
                        yield AdjointParams(self.ambient, a, ai, dict(self.per_index))
                    else:
                        yield AdjointParams.uniform(self.ambient, a, ai, al)


@dataclass(frozen=True)
class ChamberRecord:
    point: AdjointParams
    result: AmpleModelResult


def sweep(grid: GridSpec) -> Iterator[ChamberRecord]:
    for p in grid.points():
        yield ChamberRecord(p, classify(p))


def summarize(records: Iterable[ChamberRecord], raw: bool = True) -> Counter:
    return Counter(r.result.raw_label if raw else r.result.label for r in records)


# --- wall recovery ------------------------------------------------------------

@dataclass(frozen=True)
class Wall:
    """The line alpha_irr = intercept + slope * alpha, and the labels it separates."""

    intercept: Fraction
    slope: Fraction
    labels: tuple[str, ...]
    support: int

    def __str__(self) -> str:
        s = f"alpha_irr = {self.intercept}"
        if self.slope:
            s += f" + ({self.slope})*alpha"
        return s

    @property
    def line(self) -> tuple[Fraction, Fraction]:
        return (self.intercept, self.slope)


@dataclass
class WallReport:
    walls: list[Wall] = field(default_factory=list)
    region_boundary: list[Wall] = field(default_factory=list)
    vertices: list[tuple[str, Fraction, Fraction]] = field(default_factory=list)

    def lines(self) -> set[tuple[Fraction, Fraction]]:
        return {w.line for w in self.walls}


def _simplest_in(lo: Fraction, hi: Fraction, max_den: int) -> Optional[Fraction]:
    for q in range(1, max_den + 1):
        p = -((-lo.numerator * q) // lo.denominator)  # ceil(lo * q)
        x = Fraction(p, q)
        if x <= hi:
            return x
    return None


def _fit_intervals(cols: Sequence[tuple[Fraction, Fraction, Fraction]], max_den: int) -> Optional[tuple[Fraction, Fraction]]:
    """Simplest line c0 + c1*x meeting every closed interval [lo, hi] at its column x."""
    best = None
    if len({x for x, _, _ in cols}) == 1:
        slopes = [Fraction(0)]
    else:
        slopes = sorted({Fraction(p, q) for q in range(1, max_den + 1) for p in range(-2 * q, 2 * q + 1)},
                        key=lambda s: (s.denominator, abs(s), s))
    for c1 in slopes:
        if best is not None and c1.denominator > best[0]:
            break
        lo = max(l - c1 * x for x, l, _ in cols)
        hi = min(h - c1 * x for x, _, h in cols)
        if lo > hi:
            continue
        c0 = _simplest_in(lo, hi, max_den)
        if c0 is None:
            continue
        key = max(c0.denominator, c1.denominator)
        if best is None or key < best[0]:
            best = (key, c0, c1)
    return None if best is None else (best[1], best[2])


def _fit_points(pts: Sequence[tuple[Fraction, Fraction]]) -> Optional[tuple[Fraction, Fraction]]:
    (x0, y0), (x1, y1) = pts[0], pts[-1]
    slope = (y1 - y0) / (x1 - x0)
    c0 = y0 - slope * x0
    if all(y == c0 + slope * x for x, y in pts):
        return (c0, slope)
    return None


def recover_walls(records: Sequence[ChamberRecord], max_den: int = 60) -> WallReport:
    """Recover chamber walls of a sweep over (alpha, alpha_irr) with everything else fixed.

    Walls are read off along each column of constant alpha.  A label that
    occupies at most one point per column (and more than one column) is a
    chamber living on a line; that line is fitted exactly through its points.
    A change between two full-dimensional labels inside a column brackets the
    wall between the two grid values; the simplest rational line meeting all
    brackets is reported.  Changes involving Unclassified points bound the
    classified region rather than separate two models, and are reported apart.
    """
    columns: dict[Fraction, list[tuple[Fraction, str]]] = {}
    for r in records:
        al = _uniform_alpha(r.point)
        columns.setdefault(al, []).append((r.point.alpha_irr, r.result.raw_label))
    for col in columns.values():
        col.sort()

    per_label: dict[str, dict[Fraction, list[Fraction]]] = {}
    for x, col in columns.items():
        for y, lab in col:
            per_label.setdefault(lab, {}).setdefault(x, []).append(y)
    thin = {lab for lab, cols in per_label.items()
            if all(len(ys) == 1 for ys in cols.values()) and not lab.startswith("Unclassified")}

    report = WallReport()
    for lab in sorted(thin):
        pts = sorted((x, ys[0]) for x, ys in per_label[lab].items())
        if len(pts) == 1:
            report.vertices.append((lab, pts[0][0], pts[0][1]))
            continue
        fit = _fit_points(pts)
        if fit is not None:
            report.walls.append(Wall(fit[0], fit[1], (lab,), len(pts)))

    brackets: dict[tuple[str, str], list[tuple[Fraction, Fraction, Fraction]]] = {}
    for x, col in columns.items():
        for (y0, l0), (y1, l1) in zip(col, col[1:]):
            if l0 != l1 and l0 not in thin and l1 not in thin:
                brackets.setdefault((l0, l1), []).append((x, y0, y1))
    for labs, cols in sorted(brackets.items()):
        fit = _fit_intervals(cols, max_den)
        if fit is None:
            continue
        wall = Wall(fit[0], fit[1], labs, len(cols))
        if any(l.startswith("Unclassified") for l in labs):
            report.region_boundary.append(wall)
        else:
            report.walls.append(wall)
    return report


def _uniform_alpha(p: AdjointParams) -> Fraction:
    vals = set(p.alphas.values())
    if len(vals) > 1:
        raise ValueError("wall recovery expects a uniform boundary coefficient")
    return vals.pop() if vals else Fraction(0)

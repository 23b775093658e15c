"""Which model a pair (curve, weighted boundary) lands on, and where the walls sit."""
from fractions import Fraction as Q

from mgn_divisors.ample_model import GridSpec, RationalRange, classify, recover_walls, summarize, sweep, uniqueness_check
from mgn_divisors.divisor_algebra import AdjointParams
from mgn_divisors.index_set import MarkedGenus

amb = MarkedGenus(3, 1)
for ai, alpha in [(1, 1), (Q(4, 5), 1), (Q(3, 4), 1), (Q(7, 10), Q(7, 10))]:
    p = AdjointParams.uniform(amb, 0, ai, alpha)
    r = classify(p)
    extra = f", unique={uniqueness_check(p, r)}" if r.t is not None else ""
    print(f"alpha_irr={ai}, alpha={alpha}: {r.label} via {r.certificate.clause}{extra}")

r = classify(AdjointParams.uniform(amb, 0, Q(7, 10), Q(7, 10)))
print("\ncertificate:")
for q in r.certificate.inequalities:
    print("  ", q)

# a coarse sweep of the (alpha, alpha_irr) square at a = 0
grid = GridSpec(amb, RationalRange.point(0), RationalRange(Q(1, 2), 1, Q(1, 60)),
                alpha=RationalRange(Q(1, 2), 1, Q(1, 20)))
records = list(sweep(grid))
print(f"\n{len(records)} grid points:", dict(summarize(records)))
print("walls alpha_irr = c + m * alpha:")
for c, m in sorted(recover_walls(records).lines()):
    print(f"  c={c}, m={m}")

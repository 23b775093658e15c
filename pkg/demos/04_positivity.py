"""Closed-form F-nefness of adjoint classes checked against brute force over F-curves."""
import random
from fractions import Fraction as Q

from mgn_divisors.divisor_algebra import AdjointParams, Space, from_adjoint
from mgn_divisors.index_set import MarkedGenus, TSubset, enumerate_admissible
from mgn_divisors.positivity import (
    Mode,
    adjoint_fnef_closed_form,
    brute_force_verdict,
    crosscheck_mgn,
    crosscheck_ps,
    mgn_conditions,
    ps_adjoint_fnef_for_T,
    verdict_matches_T,
)

amb = MarkedGenus(3, 1)
for ai in (Q(1), Q(3, 4), Q(2, 3)):
    p = AdjointParams.uniform(amb, 0, ai, Q(1))
    v = brute_force_verdict(from_adjoint(p))
    print(f"alpha_irr={ai}: closed form ample={adjoint_fnef_closed_form(p, Mode.AMPLE)}, brute force {v.status.value}")
    for q in mgn_conditions(p, Mode.AMPLE):
        if not q.holds:
            print("   fails", q)

# on the pseudostable side the answer depends on which bridges T contracts
p = AdjointParams.uniform(amb, 0, Q(7, 10), Q(7, 10), Space.MGN_PS)
L = from_adjoint(p)
print("\npseudostable class at alpha_irr = alpha = 7/10")
for T in enumerate_admissible(amb):
    print(f"  T={str(T):28s} closed form {ps_adjoint_fnef_for_T(p, T)}, brute force {verdict_matches_T(L, T)}")

rng = random.Random(7)
print("\nrandom cross-checks:")
print("  stable side, 200 draws:", crosscheck_mgn(amb, 200, rng) or "no discrepancies")
print("  pseudostable side, 100 draws:", crosscheck_ps(amb, list(enumerate_admissible(amb)), 100, rng) or "no discrepancies")

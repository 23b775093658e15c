"""Adjoint classes and their push and pull across the map to the pseudostable space."""
from fractions import Fraction as Q

from mgn_divisors.divisor_algebra import (
    AdjointParams,
    DivisorClass,
    Space,
    canonical_divisor,
    canonical_pullback,
    from_adjoint,
    push_pull_defect,
    pullback_upsilon,
    pushforward_upsilon,
    to_adjoint,
)
from mgn_divisors.index_set import MarkedGenus, TSubset

amb = MarkedGenus(3, 1)
K = canonical_divisor(amb)
print("K =", K)

p = AdjointParams.uniform(amb, Q(1, 2), Q(2, 3), Q(3, 4))
L = from_adjoint(p)
print("\nadjoint class at a=1/2, alpha_irr=2/3, alpha=3/4:\n ", L)
print("recovered parameters match:", to_adjoint(L) == p)

down = pushforward_upsilon(L)
back = pullback_upsilon(down)
print("\npushed to the pseudostable space:\n ", down)
print("pulled back minus original:", back - L)
print("defect, a multiple of the elliptic tail:", push_pull_defect(p))

# lambda on its own is not adjoint
print("\nlambda as adjoint:", to_adjoint(DivisorClass.lambda_class(amb)))

T = TSubset.of(amb, (0, (1,)), (1, (1,)))
print(f"\ncanonical class pulled back through T = {T}:\n ", canonical_pullback(T))
print("pseudostable K:", canonical_divisor(amb, Space.MGN_PS))

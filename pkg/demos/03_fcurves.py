"""F-curves, their intersection numbers, and the elliptic bridge curves."""
from mgn_divisors.divisor_algebra import DivisorClass, Space, canonical_divisor
from mgn_divisors.fcurves import (
    bridge_curves,
    elliptic_bridge_fcurve,
    enumerate_fcurves,
    intersect,
    intersect_bridge,
    weight,
)
from mgn_divisors.index_set import MarkedGenus

amb = MarkedGenus(2, 1)
lam = DivisorClass.lambda_class(amb)
K = canonical_divisor(amb)
curves = enumerate_fcurves(amb)
print(f"{len(curves)} F-curves on {amb}")
for C in curves:
    print(f"  {str(C):36s} lambda.C={intersect(lam, C)}  K.C={intersect(K, C)}")

amb = MarkedGenus(3, 1)
Kps = canonical_divisor(amb, Space.MGN_PS)
print(f"\nelliptic bridges on {amb} against the pseudostable K:")
for B in bridge_curves(amb):
    print(f"  {str(B):24s} K.B={intersect_bridge(Kps, B)}  as F-curve {elliptic_bridge_fcurve(B)}")

# weights of a bridge against single boundary classes
B = bridge_curves(amb)[-1]
for k in B.slots:
    print(f"  weight of delta{k} on {B}:", weight(DivisorClass.basis_element(amb, k, Space.MGN_PS), B))

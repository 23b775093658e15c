"""Boundary indices, admissible subsets and their counts for a few small (g, n)."""
from mgn_divisors.index_set import (
    MarkedGenus,
    TSubset,
    bridge_types,
    count_admissible,
    enumerate_admissible,
    enumerate_indices,
    minimal_subsets,
    t_adm,
    t_div,
)

amb = MarkedGenus(3, 1)
print(f"boundary indices of {amb}:", ", ".join(str(k) for k in enumerate_indices(amb)))

print("\nminimal admissible subsets, one per elliptic bridge type:")
for B, M in zip(bridge_types(amb), minimal_subsets(amb)):
    print(f"  {B}  ->  {M}")

print("\nadmissible subsets:")
for T in enumerate_admissible(amb):
    print(f"  {str(T):40s} adm={t_adm(T)}  div={t_div(T)}")

# a non-admissible T only keeps the bridges it fully contains
T = TSubset.of(amb, (0, (1,)))
print(f"\nt_adm of {T} is {t_adm(T)}")

print("\ncounts:")
for g, n in [(2, 1), (2, 2), (3, 0), (3, 1), (4, 0), (4, 1)]:
    m = MarkedGenus(g, n)
    print(f"  {m}: formula {count_admissible(m)}, enumerated {sum(1 for _ in enumerate_admissible(m))}")

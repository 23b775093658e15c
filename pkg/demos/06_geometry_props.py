"""Q-factoriality, descent of divisors and the factorization of each admissible contraction."""
from mgn_divisors.divisor_algebra import Space, canonical_divisor, canonical_pullback
from mgn_divisors.geometry_props import descends, factorize, is_q_factorial
from mgn_divisors.index_set import MarkedGenus, enumerate_admissible

for g, n in [(3, 1), (2, 2)]:
    amb = MarkedGenus(g, n)
    K = canonical_divisor(amb, Space.MGN_PS)
    print(f"{amb}")
    for T in enumerate_admissible(amb):
        f = factorize(T)
        qf = is_q_factorial(T)
        line = f"  {str(T):44s} Q-factorial={qf!s:5s} steps={list(f.divisorial_steps)}"
        line += f" small={[str(b) for b in f.small_contraction_generators]} K-negative={f.k_negative_small}"
        print(line)
        if qf and len(T):
            print(f"    K descends: {descends(K, T)}, its corrected pullback descends: {descends(canonical_pullback(T), T)}")

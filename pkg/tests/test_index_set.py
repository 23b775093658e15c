from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mgn_divisors.index_set import (
    IRR,
    BoundaryIndex,
    CapExceeded,
    Containment,
    MarkedGenus,
    TSubset,
    bridge_types,
    canonical_index,
    count_admissible,
    enumerate_admissible,
    enumerate_indices,
    is_admissible,
    minimal_subsets,
    subsets_give_same_stack,
    t_adm,
    t_div,
)

from strategies import ambients, tsubsets


def P(i, *marks):
    return BoundaryIndex(i, tuple(sorted(marks)))


# canonical representatives

@pytest.mark.parametrize("gn, raw, expected", [
    ((3, 0), (2, ()), P(1)),
    ((2, 2), (2, (1,)), P(0, 2)),
    ((4, 1), (2, (1,)), P(2)),
])
def test_canonical_index_examples(gn, raw, expected):
    assert canonical_index(*raw, MarkedGenus(*gn)) == expected


@pytest.mark.parametrize("bad", [(0, ()), (3, (1,)), (-1, ()), (4, ()), (1, (2,))])
def test_canonical_index_rejects(bad):
    with pytest.raises(ValueError):
        canonical_index(*bad, MarkedGenus(3, 1))


@given(st.data())
def test_canonical_index_is_complement_invariant(data):
    amb = data.draw(ambients())
    i = data.draw(st.integers(0, amb.g))
    marks = data.draw(st.sets(st.sampled_from(amb.marks))) if amb.n else set()
    marks = tuple(sorted(marks))
    if not amb.is_valid_pair(i, marks):
        return
    assert canonical_index(i, marks, amb) == canonical_index(amb.g - i, amb.complement(marks), amb)


# enumeration of indices

def test_enumerate_indices_small():
    assert enumerate_indices(MarkedGenus(2, 0)) == [IRR, P(1)]
    assert enumerate_indices(MarkedGenus(1, 2)) == [IRR, P(0, 1), P(0, 2), P(0, 1, 2)]
    assert len(enumerate_indices(MarkedGenus(0, 4))) == 8
    assert IRR not in enumerate_indices(MarkedGenus(3, 1), include_irr=False)


def _brute_classes(amb):
    seen = set()
    for i in range(amb.g + 1):
        for r in range(amb.n + 1):
            for I in combinations(amb.marks, r):
                if amb.is_valid_pair(i, I):
                    seen.add(frozenset([(i, I), (amb.g - i, amb.complement(I))]))
    return seen


@pytest.mark.parametrize("gn", [(0, 4), (0, 5), (1, 3), (2, 2), (3, 2), (4, 1), (5, 0), (6, 0)])
def test_enumerate_indices_matches_orbit_count(gn):
    amb = MarkedGenus(*gn)
    idx = enumerate_indices(amb)
    assert len(idx) == len(set(idx)) == 1 + len(_brute_classes(amb))


# admissibility

def test_empty_and_irr_admissible():
    for g in range(0, 5):
        assert is_admissible(TSubset(MarkedGenus(g, 1)))
    for g in (2, 3, 6):
        assert is_admissible(TSubset.of(MarkedGenus(g, 0), "irr"))
    assert not is_admissible(TSubset.of(MarkedGenus(1, 2), "irr"))


def test_isolated_index_not_admissible():
    assert not is_admissible(TSubset.of(MarkedGenus(6, 0), (2, ())))
    # for g = 5 the neighbour [3,{}] is the same class as [2,{}]
    assert is_admissible(TSubset.of(MarkedGenus(5, 0), (2, ())))


def test_tail_never_admissible():
    amb = MarkedGenus(3, 1)
    assert not is_admissible(TSubset.of(amb, (1, ()), (2, ())))


def test_t_adm_examples():
    amb = MarkedGenus(5, 1)
    assert t_adm(TSubset.of(amb, (1, ()))) == TSubset(amb)
    assert t_adm(TSubset.of(MarkedGenus(1, 2), "irr")) == TSubset(MarkedGenus(1, 2))
    for g in (5, 7, 8):
        T = TSubset.of(MarkedGenus(g, 1), (2, ()), (3, ()), (2, (1,)))
        assert t_adm(T) == TSubset.of(MarkedGenus(g, 1), (2, ()), (3, ()))
    # on (6,1) the class [2,{1}] is [4,{}], whose neighbour [3,{}] is present
    T = TSubset.of(MarkedGenus(6, 1), (2, ()), (3, ()), (2, (1,)))
    assert t_adm(T) == T


def _admissible_by_definition(T):
    """Independent reading of the definition, on raw pairs."""
    amb = T.ambient
    if amb.g == 0:
        return len(T) == 0
    tail = amb.elliptic_tail
    if tail in T or (amb.g == 1 and T.has_irr):
        return False
    for m in T.pairs():
        ok = False
        for i, I in ((m.genus, m.marks), (amb.g - m.genus, amb.complement(m.marks))):
            for d in (-1, 1):
                nb = amb.maybe_index(i + d, I)
                ok = ok or (nb is not None and nb in T)
        if not ok:
            return False
    return True


@pytest.mark.parametrize("gn", [(1, 2), (1, 3), (2, 1), (2, 2), (3, 0), (3, 1), (4, 0), (5, 0), (3, 2), (4, 1), (7, 0)])
def test_enumeration_equals_brute_force_over_all_subsets(gn):
    amb = MarkedGenus(*gn)
    idx = enumerate_indices(amb)
    brute = set()
    for r in range(len(idx) + 1):
        for c in combinations(idx, r):
            T = TSubset(amb, frozenset(c))
            if _admissible_by_definition(T):
                brute.add(T)
    assert set(enumerate_admissible(amb)) == brute
    assert all(is_admissible(T) == _admissible_by_definition(T)
               for r in range(len(idx) + 1) for T in (TSubset(amb, frozenset(c)) for c in combinations(idx, r)))


@given(tsubsets())
def test_t_adm_properties(T):
    A = t_adm(T)
    assert A <= T
    assert is_admissible(A)
    assert t_adm(A) == A


@given(tsubsets())
def test_admissible_fixed_by_t_adm(T):
    if is_admissible(T):
        assert t_adm(T) == T


@given(tsubsets())
def test_admissible_is_union_of_its_minimal_subsets(T):
    mins = [M for M in minimal_subsets(T.ambient) if M <= T]
    union = TSubset(T.ambient)
    for M in mins:
        union = union | M
    assert is_admissible(T) == (union == T)


@given(st.data())
def test_unions_of_minimal_subsets_are_admissible(data):
    amb = data.draw(ambients())
    mins = minimal_subsets(amb)
    chosen = data.draw(st.lists(st.sampled_from(mins), max_size=4)) if mins else []
    union = TSubset(amb)
    for M in chosen:
        union = union | M
    assert is_admissible(union)


# divisorial part

def test_t_div_examples():
    amb = MarkedGenus(4, 0)
    assert t_div(TSubset.of(amb, "irr", (2, ()), (1, ()))) == TSubset(amb)
    amb = MarkedGenus(2, 1)
    assert t_div(TSubset.of(amb, (0, (1,)), (1, (1,)))) == TSubset(amb)
    amb = MarkedGenus(3, 2)
    T = TSubset.of(amb, (0, (1,)), (1, (1,)), (2, ()))
    assert t_div(T) == TSubset.of(amb, (0, (1,)), (1, (1,)))


@given(tsubsets())
def test_t_div_admissible_subset(T):
    D = t_div(T)
    assert D <= T
    assert is_admissible(D)


# minimal subsets and bridge types

def test_minimal_subsets_examples():
    assert minimal_subsets(MarkedGenus(2, 0)) == [TSubset.of(MarkedGenus(2, 0), "irr")]
    assert minimal_subsets(MarkedGenus(1, 1)) == []
    amb = MarkedGenus(1, 2)
    # [1,{1}] is the class [0,{2}], so both listed pairs are one set
    assert minimal_subsets(amb) == [TSubset.of(amb, (0, (1,)), (0, (2,)))]


def test_bridge_types_genus_three_one_mark():
    amb = MarkedGenus(3, 1)
    got = [str(b) for b in bridge_types(amb)]
    # {[1,{1}],[2,{1}]} touches [2,{1}] = [1,{}] and is not a bridge type
    assert got == ["irr", "{[0,{1}],[1,{1}]}"]


def test_odd_genus_collapsed_pair():
    amb = MarkedGenus(5, 0)
    assert TSubset.of(amb, (2, ())) in minimal_subsets(amb)


# counting

@pytest.mark.parametrize("gn, count", [
    ((0, 3), 1), ((1, 0), 1), ((1, 1), 1), ((2, 0), 2), ((3, 0), 2), ((4, 0), 2), ((5, 0), 4),
    ((1, 2), 2), ((2, 1), 2), ((2, 2), 8), ((1, 3), 8), ((3, 1), 4), ((4, 1), 8),
])
def test_count_formula_values(gn, count):
    assert count_admissible(MarkedGenus(*gn)) == count


def _instances_with_few_minimal_subsets():
    out = []
    for g in range(0, 8):
        for n in range(0, 6):
            if len(minimal_subsets(MarkedGenus(g, n))) <= 12:
                out.append((g, n))
    return out


@pytest.mark.parametrize("gn", _instances_with_few_minimal_subsets(), ids=lambda gn: "g%dn%d" % gn)
def test_count_formula_matches_enumeration(gn):
    amb = MarkedGenus(*gn)
    assert sum(1 for _ in enumerate_admissible(amb)) == count_admissible(amb)


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        list(enumerate_admissible(MarkedGenus(2, 3), cap=10))


# containment of stacks

def test_same_stack_examples():
    amb = MarkedGenus(3, 1)
    assert subsets_give_same_stack(TSubset.of(amb, (1, ())), TSubset(amb)) is Containment.EQUAL
    amb1 = MarkedGenus(1, 2)
    assert subsets_give_same_stack(TSubset.of(amb1, "irr"), TSubset(amb1)) is Containment.EQUAL
    assert subsets_give_same_stack(TSubset.of(amb, "irr"), TSubset(amb)) is Containment.SUPERSET
    assert subsets_give_same_stack(TSubset(amb), TSubset.of(amb, "irr")) is Containment.SUBSET
    pair = TSubset.of(amb, (0, (1,)), (1, (1,)))
    assert subsets_give_same_stack(TSubset.of(amb, "irr"), pair) is Containment.INCOMPARABLE


def test_tsubset_rejects_foreign_members():
    with pytest.raises(ValueError):
        TSubset(MarkedGenus(3, 1), frozenset([P(2)]))  # [2,{}] is not the canonical form

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mgn_divisors.divisor_algebra import DivisorClass, Space, canonical_divisor, canonical_pullback
from mgn_divisors.geometry_props import descends, factorize, is_q_factorial, is_q_gorenstein
from mgn_divisors.index_set import (
    MarkedGenus,
    TSubset,
    bridge_types,
    enumerate_admissible,
    minimal_subsets,
    t_adm,
    t_div,
)

from strategies import divisor_classes, tsubsets

PS = Space.MGN_PS
POOL = [MarkedGenus(g, n) for g, n in [(2, 1), (2, 2), (3, 0), (3, 1), (3, 2), (4, 0), (4, 1), (1, 3), (2, 3)]]
CANONICAL_OK = [a for a in POOL if (a.g, a.n) not in ((2, 1), (3, 0))]


# Q-factoriality

def test_q_factorial_examples():
    assert is_q_factorial(TSubset(MarkedGenus(3, 1)))
    for g in (3, 4, 5):
        assert not is_q_factorial(TSubset.of(MarkedGenus(g, 0), "irr"))
    amb = MarkedGenus(3, 2)
    assert is_q_factorial(TSubset.of(amb, (0, (1,)), (1, (1,))))


def test_q_factorial_excluded():
    with pytest.raises(ValueError):
        is_q_factorial(TSubset(MarkedGenus(2, 0)))


def test_q_factorial_needs_divisorial_bridges():
    # t_adm and t_div agree as sets, but {[1,{1}],[1,{2}]} is a bridge that is not a divisorial pair
    amb = MarkedGenus(3, 2)
    T = TSubset.of(amb, (0, (1,)), (0, (2,)), (1, (1,)), (1, (2,)))
    assert t_adm(T) == t_div(T)
    assert not is_q_factorial(T)


@pytest.mark.parametrize("amb", [MarkedGenus(3, 1), MarkedGenus(2, 2), MarkedGenus(4, 1), MarkedGenus(2, 3), MarkedGenus(1, 3)], ids=str)
def test_q_factorial_is_set_equality_here(amb):
    for T in enumerate_admissible(amb):
        assert is_q_factorial(T) == (t_adm(T) == t_div(T))
        assert is_q_gorenstein(T) == is_q_factorial(T)


# descent

def test_descend_examples():
    amb = MarkedGenus(3, 1)
    irr = TSubset.of(amb, "irr")
    assert not descends(DivisorClass.lambda_class(amb, PS), irr)
    assert not descends(canonical_divisor(amb, PS), irr)
    pair = TSubset.of(amb, (0, (1,)), (1, (1,)))
    assert descends(canonical_pullback(pair), pair)


@given(st.data())
def test_descent_only_sees_admissible_part(data):
    amb = data.draw(st.sampled_from(POOL))
    T = data.draw(tsubsets(amb))
    L = data.draw(divisor_classes(amb, PS))
    assert descends(L, T) == descends(L, t_adm(T))


@pytest.mark.parametrize("amb", CANONICAL_OK, ids=str)
def test_canonical_pullback_descends(amb):
    for T in enumerate_admissible(amb):
        if is_q_factorial(T):
            assert descends(canonical_pullback(T), T)
        else:
            with pytest.raises(ValueError):
                canonical_pullback(T)


@pytest.mark.parametrize("amb", CANONICAL_OK, ids=str)
def test_canonical_class_never_descends(amb):
    K = canonical_divisor(amb, PS)
    for T in enumerate_admissible(amb):
        if len(t_adm(T)):
            assert not descends(K, T)


# factorization

def test_factorize_examples():
    amb = MarkedGenus(3, 1)
    f = factorize(TSubset.of(amb, (0, (1,)), (1, (1,))))
    assert f.divisorial_steps == (1,)
    assert f.small_is_identity
    amb41 = MarkedGenus(4, 1)
    f = factorize(TSubset.of(amb41, (0, (1,)), (1, (1,)), (2, (1,))))
    assert not f.k_negative_small
    amb22 = MarkedGenus(2, 2)
    f = factorize(TSubset.of(amb22, (0, (1,)), (1, (1,)), (0, (2,))))
    assert f.k_negative_small


def test_factorize_irr_is_small():
    amb = MarkedGenus(3, 0)
    f = factorize(TSubset.of(amb, "irr"))
    assert f.divisorial_steps == ()
    assert [str(b) for b in f.small_contraction_generators] == ["irr"]


def test_factorize_excluded():
    with pytest.raises(ValueError):
        factorize(TSubset(MarkedGenus(2, 0)))


@pytest.mark.parametrize("amb", POOL, ids=str)
def test_steps_count_half_of_divisorial_part(amb):
    for T in enumerate_admissible(amb):
        f = factorize(T)
        assert 2 * len(f.divisorial_steps) == len(t_div(T)), str(T)
        assert list(f.divisorial_steps) == sorted(f.divisorial_steps)


@pytest.mark.parametrize("amb", POOL, ids=str)
def test_generators_are_non_divisorial_minimal_subsets(amb):
    mins = set(minimal_subsets(amb))
    for T in enumerate_admissible(amb):
        f = factorize(T)
        D = t_div(T)
        for b in f.small_contraction_generators:
            M = b.members
            assert M in mins and M <= t_adm(T)
        if t_adm(T) == D and is_q_factorial(T):
            assert f.small_is_identity
        # every bridge of t_adm is either a generator or inside the divisorial part
        for b in bridge_types(amb, t_adm(T)):
            assert b in f.small_contraction_generators or b.members <= D

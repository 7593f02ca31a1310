from functools import reduce
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from defring.semigroup import (SemigroupError, apery_set, artin_schreier_semigroup, generated_members,
                               hermitian_semigroup, jump_report, orbit_covers, semigroup,
                               total_not_divisible_forces_singleton)


def _members_brute(gens, bound):
    reach = {0}
    for x in range(1, bound + 1):
        if any(x - a in reach for a in gens if x >= a):
            reach.add(x)
    return reach


@settings(max_examples=80, derandomize=True)
@given(st.lists(st.integers(2, 15), min_size=2, max_size=4))
def test_gaps_and_conductor_against_enumeration(gens):
    if reduce(gcd, gens) != 1:
        with pytest.raises(SemigroupError):
            semigroup(gens)
        return
    S = semigroup(gens)
    bound = S.conductor + max(gens) + 5
    members = _members_brute(gens, bound)
    assert set(S.members(bound)) == members
    assert all(x in members for x in range(S.conductor, bound + 1))
    assert S.conductor == 0 or S.conductor - 1 not in members
    assert S.genus == len(set(range(bound)) - members)


def test_apery_set_small_example():
    assert apery_set([3, 5]) == [0, 10, 5]


def test_two_generator_genus_formula():
    for a, b in [(3, 4), (3, 10), (5, 6), (4, 9)]:
        assert semigroup((a, b)).genus == (a - 1) * (b - 1) // 2


@pytest.mark.parametrize("p,s", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)])
def test_artin_schreier_jumps_are_one_plus_multiples_of_p(p, s):
    rep = jump_report(artin_schreier_semigroup(p, s), p)
    assert rep.m == p ** s + 1
    assert set(rep.candidate_jumps) == {1 + k * p for k in range(p ** (s - 1) + 1)}
    assert rep.dim_L == p ** (s - 1) + 2
    assert rep.order_values() == tuple(j + 1 for j in rep.candidate_jumps)


def test_hermitian_semigroup_jumps():
    rep = jump_report(hermitian_semigroup(3, 1), 3)
    assert rep.poles_below == (4, 3, 0)
    assert set(rep.candidate_jumps) == {1, 4}


@settings(max_examples=60, derandomize=True)
@given(st.sampled_from([3, 5, 7]), st.lists(st.integers(2, 20), min_size=1, max_size=3))
def test_every_emitted_jump_is_prime_to_p(p, extra):
    gens = sorted(set(extra + [p, p + 1]))
    rep = jump_report(semigroup(gens), p)
    assert rep.m % p
    assert all(j % p for j in rep.candidate_jumps)


def test_non_numerical_semigroup_is_rejected():
    with pytest.raises(SemigroupError):
        semigroup((6, 9))
    with pytest.raises(SemigroupError):
        semigroup((0, 3))


def test_orbit_cover_helpers():
    S = semigroup((3, 4))
    assert orbit_covers([3, 4], S, 10)
    assert not orbit_covers([3], S, 10)
    with pytest.raises(SemigroupError):
        orbit_covers([3, 4], S, 2)
    assert generated_members([3, 4], 8) == {0, 3, 4, 6, 7, 8}
    assert total_not_divisible_forces_singleton([1, 3, 9], 3)
    assert not total_not_divisible_forces_singleton([3, 9, 2], 3)

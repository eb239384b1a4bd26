import itertools

import numpy as np
import pytest

from toruslat.errors import CapacityError, InputError
from toruslat.group_catalog import (SMALL_GROUPS, cyclic, direct_product, group_by_name,
                                    small_group_names, sylow_cyclic_names)
from toruslat.group_core import (all_subgroups, enumerate_group, is_cyclic, is_sylow_cyclic,
                                 representatives, subgroup_from_elements, trivial_subgroup,
                                 whole_group)


def compose(g, h):
    return tuple(g[h[x]] for x in range(len(h)))


def test_trivial_group():
    G = enumerate_group([], 1)
    assert G.order == 1
    assert G.elements[0] == (0,)


def test_transposition():
    G = enumerate_group([(1, 0)], 2)
    assert G.order == 2


def test_s3_from_two_generators():
    G = enumerate_group([(1, 2, 0), (1, 0, 2)], 3)
    assert G.order == 6
    assert set(G.elements) == set(itertools.permutations(range(3)))


@pytest.mark.parametrize("gens, degree", [
    ([(0, 0)], 2),
    ([(0, 1, 3)], 3),
    ([(1, 2)], 3),
])
def test_non_bijective_generators_rejected(gens, degree):
    with pytest.raises(InputError):
        enumerate_group(gens, degree)


def test_identity_first_and_deterministic():
    a = enumerate_group([(1, 2, 0), (1, 0, 2)], 3)
    b = enumerate_group([(1, 2, 0), (1, 0, 2)], 3)
    assert a.elements == b.elements
    assert a.elements[0] == (0, 1, 2)
    assert np.array_equal(a.table, b.table)


@pytest.mark.parametrize("name", small_group_names(16))
def test_table_matches_composition(name):
    G = group_by_name(name)
    for i, g in enumerate(G.elements):
        for j, h in enumerate(G.elements):
            assert G.elements[G.table[i, j]] == compose(g, h)


@pytest.mark.parametrize("name", ["C2", "S3", "Q8", "A4", "C2xD4"])
def test_inverse_and_closure(name):
    G = group_by_name(name)
    for i in range(G.order):
        assert G.table[i, G.inverse[i]] == 0
    assert G.closure(G.generator_indices).all()


def test_subgroups_of_small_groups():
    assert len(all_subgroups(enumerate_group([], 1))) == 1
    assert len(all_subgroups(group_by_name("C2"))) == 2
    assert len(all_subgroups(group_by_name("C2xC2"))) == 5


def test_s3_subgroup_inventory():
    G = enumerate_group([(1, 2, 0), (1, 0, 2)], 3)
    subs = all_subgroups(G)
    orders = [H.order for H in subs]
    assert orders == [1, 2, 2, 2, 3, 6]
    assert sum(H.is_representative for H in subs) == 4
    # the three order-2 subgroups are one conjugacy class
    assert len({H.class_id for H in subs if H.order == 2}) == 1


def test_subgroups_sorted_and_ids_stable():
    G = group_by_name("D4")
    subs = all_subgroups(G)
    keys = [(H.order, H.elements) for H in subs]
    assert keys == sorted(keys)
    assert [H.id for H in subs] == list(range(len(subs)))
    again = all_subgroups(group_by_name("D4"))
    assert [H.elements for H in again] == [H.elements for H in subs]


@pytest.mark.parametrize("n", range(1, 13))
def test_cyclic_subgroup_count_is_divisor_count(n):
    divisors = sum(1 for d in range(1, n + 1) if n % d == 0)
    assert len(all_subgroups(cyclic(n))) == divisors


def test_subgroups_are_closed():
    G = group_by_name("S4")
    for H in all_subgroups(G):
        els = set(H.elements)
        assert 0 in els
        for a in els:
            assert G.inverse[a] in els
            for b in els:
                assert G.table[a, b] in els


def test_subgroup_bound():
    with pytest.raises(CapacityError):
        all_subgroups(cyclic(49))
    assert len(all_subgroups(cyclic(49), max_order=64)) == 3


def test_subgroup_from_elements_validates():
    G = group_by_name("S3")
    with pytest.raises(InputError):
        subgroup_from_elements(G, [0, 1, 2])
    assert whole_group(G).order == 6
    assert trivial_subgroup(G).order == 1


def test_representatives_cover_classes():
    G = group_by_name("S4")
    subs = all_subgroups(G)
    reps = representatives(G)
    assert {H.class_id for H in subs} == {H.id for H in reps}
    assert len(reps) == 11


@pytest.mark.parametrize("n", range(1, 49))
def test_cyclic_groups_are_sylow_cyclic(n):
    assert is_sylow_cyclic(cyclic(n))


def test_sylow_cyclic_examples():
    assert is_sylow_cyclic(group_by_name("C2"))
    assert not is_sylow_cyclic(group_by_name("C2xC2"))
    assert is_sylow_cyclic(group_by_name("S3"))
    assert not is_sylow_cyclic(group_by_name("Q8"))
    assert is_sylow_cyclic(group_by_name("Dic3"))


def test_sylow_cyclic_catalog_agrees_with_brute_force():
    # brute force: a Sylow p-subgroup is cyclic iff it has an element of its order
    for name in sylow_cyclic_names(24):
        G = group_by_name(name)
        n = G.order
        for p in {p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))}:
            pa = 1
            while n % (pa * p) == 0:
                pa *= p
            assert any(H.order == pa and is_cyclic_sub(G, H) for H in all_subgroups(G))


def is_cyclic_sub(G, H):
    orders = G.element_orders()
    return any(orders[h] == H.order for h in H.elements)


def test_catalog_orders():
    for order, names in SMALL_GROUPS.items():
        for name in names:
            assert group_by_name(name).order == order


def test_direct_product_and_cyclic_test():
    G = direct_product(cyclic(2), cyclic(3))
    assert G.order == 6 and is_cyclic(G)
    assert not is_cyclic(group_by_name("C2xC2"))


def test_unknown_catalog_name():
    with pytest.raises(InputError):
        group_by_name("Monster")

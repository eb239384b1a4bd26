import numpy as np
import pytest

from toruslat.cohomology.tate import is_coflasque, is_flasque
from toruslat.errors import CapacityError, InputError, UndecidedError
from toruslat.group_catalog import group_by_name
from toruslat.group_core import all_subgroups, representatives, trivial_subgroup, whole_group
from toruslat.lattice import (LatticeMap, direct_sum, dual, norm_one_lattice,
                              permutation_lattice, regular_lattice, sign_lattice,
                              trivial_lattice, zero_lattice)
from toruslat.resolve import (attempt_split, canonical_summands, classify, coflasque_cover,
                              cover_from_summands, fixed_points_onto, flasque_cover,
                              greedy_summands, iterate_resolution, lift_morphism,
                              stabilized_split)

from _corpus import corpus


def check_cover(res):
    assert res.check_exact()
    assert res.cover.permutation_summands is not None
    assert is_coflasque(res.kernel)
    for H in all_subgroups(res.base.group):
        assert fixed_points_onto(res, H)


@pytest.mark.parametrize("strategy", ["canonical", "greedy"])
@pytest.mark.parametrize("name", ["C2", "C2xC2", "S3", "D4", "Q8", "C6"])
def test_cover_on_catalog(name, strategy):
    G = group_by_name(name)
    for L in [trivial_lattice(G), norm_one_lattice(G), dual(norm_one_lattice(G))]:
        check_cover(coflasque_cover(L, strategy))


def test_canonical_rank_formula():
    G = group_by_name("C2")
    Z = trivial_lattice(G)
    res = coflasque_cover(Z, "canonical")
    # one summand per representative: Z[G/1] + Z[G/G]
    assert res.cover.rank == 3
    assert len(canonical_summands(Z)) == 2


def test_greedy_is_small():
    G = group_by_name("D4")
    Z = trivial_lattice(G)
    # Z is itself Z[G/G]
    assert greedy_summands(Z) == [(whole_group(G), greedy_summands(Z)[0][1])]
    assert coflasque_cover(Z, "greedy").kernel.rank == 0


def test_zero_lattice_cover():
    G = group_by_name("S3")
    res = coflasque_cover(zero_lattice(G), "greedy")
    assert res.cover.rank == 0 and res.check_exact()


def test_regular_only_cover_fails_fixed_points():
    # Z[G] -> Z is onto but not on G-fixed points, so its kernel I_G is not coflasque
    G = group_by_name("C2xC2")
    Z = trivial_lattice(G)
    res = cover_from_summands(Z, [(trivial_subgroup(G), np.array([1]))], check=False)
    assert res.check_exact()
    assert not fixed_points_onto(res, whole_group(G))
    assert not is_coflasque(res.kernel)
    with pytest.raises(InputError):
        cover_from_summands(Z, [(trivial_subgroup(G), np.array([1]))])


def test_summand_vector_must_be_fixed():
    G = group_by_name("C2")
    Zm = sign_lattice(G, [-1])
    with pytest.raises(InputError):
        cover_from_summands(Zm, [(whole_group(G), np.array([1]))])


def test_representative_order_validated():
    G = group_by_name("S3")
    with pytest.raises(InputError):
        canonical_summands(trivial_lattice(G), order=all_subgroups(G))
    reps = list(reversed(representatives(G)))
    check_cover(coflasque_cover(norm_one_lattice(G), "greedy", order=reps))


def test_unknown_strategy():
    with pytest.raises(InputError):
        coflasque_cover(trivial_lattice(group_by_name("C2")), "fancy")


@pytest.mark.parametrize("name", ["C2", "C2xC2", "S3"])
def test_flasque_cover(name):
    G = group_by_name(name)
    for L in [trivial_lattice(G), norm_one_lattice(G), dual(norm_one_lattice(G))]:
        for strategy in ("canonical", "greedy"):
            res = flasque_cover(L, strategy)
            assert res.kind == "flasque"
            assert res.check_exact()
            assert is_flasque(res.cover)
            assert res.kernel.is_permutation_action()


def test_classify_examples():
    C2 = group_by_name("C2")
    c = classify(regular_lattice(C2))
    assert c.is_permutation_witnessed and c.invertible
    c = classify(sign_lattice(C2, [-1]))
    assert not c.invertible and not c.flasque and not c.coflasque
    V = group_by_name("C2xC2")
    c = classify(norm_one_lattice(V))
    assert not c.invertible and not c.flasque
    # H^-1(C3, I_G) = H^-2(C3, Z) = Z/3 and H^1(C3, I_G) = H^0(C3, Z) = Z/3
    c = classify(norm_one_lattice(group_by_name("C3")))
    assert not c.flasque and not c.coflasque and not c.invertible
    assert c.certificates[1]["H^-1"].torsion == (3,)


def test_classify_planted_summand():
    G = group_by_name("S3")
    P = permutation_lattice(G, all_subgroups(G)[1])
    R = regular_lattice(G)
    S = direct_sum(P, R)
    c = classify(S)
    assert c.invertible


def test_classification_dict():
    c = classify(norm_one_lattice(group_by_name("C2xC2")))
    doc = c.to_dict()
    assert set(doc) == {"is_permutation_witnessed", "flasque", "coflasque", "invertible",
                        "certificates"}
    assert doc["certificates"]["4"]["H^-1"]["torsion"] == [2, 2]


def test_split():
    G = group_by_name("C2")
    R, Z = regular_lattice(G), trivial_lattice(G)
    aug = LatticeMap(R, Z, [[1, 1]])
    assert not attempt_split(aug).found
    res = coflasque_cover(Z, "canonical")
    sp = attempt_split(res.surjection)
    assert sp.found and sp.method == "frobenius"
    assert np.array_equal(res.surjection.matrix @ sp.section.matrix, [[1]])
    with pytest.raises(InputError):
        attempt_split(LatticeMap(R, Z, [[0, 0]]))


def test_split_general_route():
    G = group_by_name("C2")
    Z = trivial_lattice(G)
    S = direct_sum(Z, Z)
    S.permutation_summands = None
    f = LatticeMap(S, Z, [[1, 0]])
    sp = attempt_split(f)
    assert sp.found and sp.method == "general"


def test_stabilized_split():
    G = group_by_name("C2")
    R, Z = regular_lattice(G), trivial_lattice(G)
    aug = LatticeMap(R, Z, [[1, 1]])
    F, s, used = stabilized_split(aug, [trivial_subgroup(G), whole_group(G)])
    assert used == 2
    assert np.array_equal(F.matrix @ s.matrix, [[1]])
    with pytest.raises(UndecidedError):
        stabilized_split(aug, [trivial_subgroup(G)])


def test_lift_inclusion():
    G = group_by_name("D4")
    I, R = norm_one_lattice(G), regular_lattice(G)
    B = np.zeros((8, 7), dtype=np.int64)
    for h in range(1, 8):
        B[h, h - 1], B[0, h - 1] = 1, -1
    f = LatticeMap(I, R, B)
    src = coflasque_cover(I, "greedy")
    tgt = coflasque_cover(R, "greedy")
    out = lift_morphism(f, tgt, src)
    assert out.found
    assert np.array_equal(tgt.surjection.matrix @ out.lift.matrix, f.matrix @ src.surjection.matrix)


def test_lift_obstruction_reported():
    # Z -> Z over C2 lifted against the cover Z[G] -> Z: the fixed vector 1 has no fixed preimage
    G = group_by_name("C2")
    Z = trivial_lattice(G)
    R = regular_lattice(G)
    bad = cover_from_summands(Z, [(trivial_subgroup(G), np.array([1]))], check=False)
    src = cover_from_summands(Z, [(whole_group(G), np.array([1]))])
    out = lift_morphism(LatticeMap(Z, Z, [[1]]), bad, src)
    assert not out.found
    assert out.obstruction_group.torsion == (2,)
    assert R.rank == 2


def test_lift_mismatch():
    G = group_by_name("C2")
    Z = trivial_lattice(G)
    res = coflasque_cover(Z)
    with pytest.raises(InputError):
        lift_morphism(LatticeMap(regular_lattice(G), Z, [[1, 1]]), res, res)


@pytest.mark.parametrize("name", ["C2", "C2xC2", "S3", "Q8"])
def test_iterate_resolution(name):
    G = group_by_name(name)
    cx = iterate_resolution(norm_one_lattice(G), 3, "greedy")
    assert cx.verify() == []
    assert len(cx.levels) == 4 and len(cx.kernels) == 5
    maps = [d for _, d in cx.levels]
    for a, b in zip(maps, maps[1:]):
        assert not (a.matrix @ b.matrix).any()


def test_iterate_limits():
    G = group_by_name("C2")
    with pytest.raises(CapacityError):
        iterate_resolution(trivial_lattice(G), 5)
    with pytest.raises(InputError):
        iterate_resolution(trivial_lattice(G), -1)


def test_canonical_depth_two_small():
    cx = iterate_resolution(sign_lattice(group_by_name("C2"), [-1]), 2, "canonical")
    assert cx.verify() == []


def test_greedy_covers_on_corpus_sample():
    for L in corpus("D4")[::4]:
        check_cover(coflasque_cover(L, "greedy"))

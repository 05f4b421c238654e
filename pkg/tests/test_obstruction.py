from fractions import Fraction

import pytest

from hurwitz.characters import (augmentation_char, character_table, one_char,
                                pair)
from hurwitz.groups import cyclic, subgroup_class_of, subgroup_classes
from hurwitz.obstruction import (ObstructionError, bertin_check,
                                 enumerate_shapes, grid_feasibility,
                                 hurwitz_feasibility, quaternion_report,
                                 solve_tree_metric)
from hurwitz.trees import all_axioms_pass, validate


def test_bertin_decompositions_z2(z2):
    a = augmentation_char(z2) * 2
    decomps = bertin_check(a)
    assert len(decomps) == 1
    assert [C.order for C in decomps[0]] == [2, 2]


def test_bertin_empty_when_not_decomposable(z4):
    # twice the order-2 linear character: a true character orthogonal to 1
    # but not a nonnegative sum of u*'s over nontrivial cyclic subgroups
    from hurwitz.characters import ClassFunction
    a = ClassFunction(z4, [2, 2, -2, -2])
    assert bertin_check(a) == []
    report = hurwitz_feasibility(z4, 2, a)
    assert report.verdict == "infeasible"
    assert report.shapes_tried == 0


def test_bertin_rejects_non_character(z2):
    bad = augmentation_char(z2) - one_char(z2)
    with pytest.raises(ObstructionError):
        bertin_check(bad)


def test_shape_enumeration_counts(z2, q8):
    G = z2
    full = subgroup_class_of(G, range(2))
    assert len(enumerate_shapes(G, [full])) == 1
    assert len(enumerate_shapes(G, [full] * 2)) == 1
    shapes3 = enumerate_shapes(G, [full] * 3)
    assert len(shapes3) == 2       # flat, and one nested pair
    tau = subgroup_class_of(q8, q8.closure([q8.element_by_name("tau")]))
    sig = subgroup_class_of(q8, q8.closure([q8.element_by_name("sigma")]))
    rho = subgroup_class_of(q8,
                            q8.closure([q8.element_by_name("sigma*tau")]))
    assert len(enumerate_shapes(q8, [tau, sig, rho])) == 32


def test_witness_for_doubled_augmentation():
    for p in (2, 3):
        G = cyclic(p)
        a = augmentation_char(G) * 2
        report = hurwitz_feasibility(G, p, a)
        assert report.verdict == "witness"
        ht = report.witness
        assert all_axioms_pass(validate(ht))
        assert ht.artin_character == a
        assert ht.depth_character.is_zero()
        eps = [e for _, _, e in ht.tree.edges if e]
        assert eps == [Fraction(p, p - 1)]


def test_tame_single_leaf_witness(z2):
    a = augmentation_char(z2)
    report = hurwitz_feasibility(z2, 3, a)
    assert report.verdict == "witness"
    assert report.witness.depth_character.is_zero()


def test_wild_single_leaf_infeasible(z2):
    a = augmentation_char(z2)
    report = hurwitz_feasibility(z2, 2, a)
    assert report.verdict == "infeasible"
    assert report.decompositions          # Bertin alone does not obstruct
    assert report.certificates


def test_solve_tree_metric_infeasible_reason(z2):
    full = subgroup_class_of(z2, range(2))
    sh = ("leaf", full.class_id)
    sol = solve_tree_metric(z2, 2, sh)
    assert sol.tree is None


def test_grid_oracle_agrees_small(z2, z3):
    for G, p in ((z2, 2), (z3, 3)):
        for k in (1, 2):
            a = augmentation_char(G) * k
            lp = hurwitz_feasibility(G, p, a)
            grid = grid_feasibility(G, p, a)
            assert lp.verdict == grid.verdict


def test_quaternion_counterexample_structure():
    rep = quaternion_report(2)
    assert rep.group.n == 8
    assert rep.cyclic_classification_ok
    assert sorted(rep.subgroup_names) == \
        sorted(["<tau>", "<sigma>", "<sigma*tau>"])
    assert sorted(rep.klein_artin_pairings) == [0, 2, 2, 2]
    assert rep.chi_pairings == [2, 2, 2]
    assert rep.psi_u_pairings_all_two
    assert rep.psi_leaf_depth == 6
    assert rep.density_terms == [2, 2]
    assert rep.density_lower == 4
    assert rep.density_upper == 3
    assert rep.contradiction
    assert rep.minimal_candidates == 1
    assert rep.obstruction.verdict == "infeasible"
    assert rep.obstruction.decompositions


def test_quaternion_rejects_small_n():
    with pytest.raises(ObstructionError):
        quaternion_report(1)

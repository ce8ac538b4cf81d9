import pytest

from conftest import ideal_corpus
from golod_lab.exact_linalg import GF2, GF3, QQ
from golod_lab.homology_engine import (
    betti,
    chain_is_boundary,
    class_of,
    homology_dimension,
    strand_homology,
)
from golod_lab.monomial_core import MonomialIdeal, counterexample_ideal
from golod_lab.simplicial import reduced_cohomology_dims
from golod_lab.taylor_dga import (
    fiber_complex,
    lcm_lattice,
    mask_of,
    reduced_boundary,
    strand,
)

EDGES = MonomialIdeal.from_strings(("x", "y", "z"), ["x*y", "y*z", "z*x"])


def test_three_edges_strand_homology():
    # oracle: every pair has vanishing reduced boundary, so the kernel is all
    # of degree two; the triple maps onto a single line, leaving dimension 2
    for pair in ([0, 1], [1, 2], [0, 2]):
        assert reduced_boundary(EDGES, mask_of(pair)) == {}
    assert len(reduced_boundary(EDGES, mask_of([0, 1, 2]))) == 3
    s = strand(EDGES, (1, 1, 1), QQ)
    dim, classes = strand_homology(s, 2)
    assert dim == 2 and len(classes) == 2
    for cls in classes:
        assert not cls.is_zero


def test_minimal_generator_strand_class(example_ideal):
    u = tuple(example_ideal.gens[0].exps)
    s = strand(example_ideal, u, QQ)
    dim, classes = strand_homology(s, 1)
    assert dim == 1
    assert dict(classes[0].representative) == {mask_of([0]): QQ.one()}


def test_top_strand_degree_four(example_ideal):
    assert homology_dimension(example_ideal, QQ, (1, 2, 1, 2, 3), 4) == 1


def test_betti_counterexample_table(example_ideal):
    bd = betti(example_ideal, QQ)
    coarse = bd.coarse
    assert coarse[(0, 0)] == 1
    assert coarse[(1, 3)] == 4
    assert coarse[(1, 4)] == 3
    assert coarse[(2, 5)] == 10
    assert coarse[(3, 6)] == 2
    assert coarse[(1, 5)] == 1
    assert coarse[(2, 6)] == 4
    assert coarse[(3, 7)] == 6
    assert coarse[(4, 9)] == 1
    assert sum(coarse.values()) == 1 + 8 + 14 + 8 + 1
    assert bd.totals == (1, 8, 14, 8, 1)
    assert bd.regularity == 5
    assert bd.projective_dimension == 4


def test_betti_field_independence(example_ideal):
    mq = betti(example_ideal, QQ).multigraded
    m2 = betti(example_ideal, GF2).multigraded
    m3 = betti(example_ideal, GF3).multigraded
    assert mq == m2 == m3


def test_betti_principal_ideal():
    ideal = MonomialIdeal.from_strings(("x", "y"), ["x*y"])
    bd = betti(ideal, QQ)
    assert bd.totals == (1, 1)
    assert bd.regularity == 1
    assert bd.projective_dimension == 1


def test_betti_table_render(example_ideal):
    text = betti(example_ideal, QQ).table_str()
    lines = text.splitlines()
    assert lines[1].split() == ["0:", "1", ".", ".", ".", "."]
    assert lines[4].split() == ["3:", ".", "3", "10", "2", "."]
    assert lines[6].split() == ["5:", ".", ".", ".", ".", "1"]
    assert lines[7].split() == ["tot:", "1", "8", "14", "8", "1"]


def test_betti_generator_positions(example_ideal):
    md = betti(example_ideal, QQ).multigraded_dict
    gen_degrees = {tuple(g.exps) for g in example_ideal.gens}
    found = {u for (i, u) in md if i == 1}
    assert found == gen_degrees
    for u in found:
        assert md[(1, u)] == 1


def test_class_of_boundary_is_zero(example_ideal):
    chain = {m: QQ.of(s) for m, s in reduced_boundary(example_ideal, mask_of([0, 1, 3])).items()}
    cls = class_of(example_ideal, QQ, chain)
    assert cls.is_zero
    assert chain_is_boundary(example_ideal, QQ, chain)


def test_class_of_generator_nonzero(example_ideal):
    cls = class_of(example_ideal, QQ, {mask_of([2]): 1})
    assert not cls.is_zero


def test_class_of_massey_representative_nonzero(example_ideal):
    chain = {mask_of([0, 1, 3, 6]): -1, mask_of([0, 3, 4, 6]): -1}
    cls = class_of(example_ideal, QQ, chain)
    assert not cls.is_zero
    assert cls.hom_degree == 4
    assert cls.multidegree == (1, 2, 1, 2, 3)
    assert len(cls.coordinates) == 1


def test_class_of_rejects_non_cycle(example_ideal):
    with pytest.raises(ValueError):
        class_of(example_ideal, QQ, {mask_of([0, 1, 3]): 1})


def test_class_of_rejects_mixed_chain(example_ideal):
    with pytest.raises(ValueError):
        class_of(example_ideal, QQ, {mask_of([0]): 1, mask_of([0, 3]): 1})


def test_multigraded_sums_match_coarse(example_ideal):
    bd = betti(example_ideal, QQ)
    for i in range(bd.projective_dimension + 1):
        assert bd.total(i) == sum(
            d for (ii, j), d in bd.coarse.items() if ii == i
        )


def test_euler_characteristic_per_strand():
    ideals = [counterexample_ideal()] + ideal_corpus(20, seed=61)
    for ideal in ideals:
        for u in lcm_lattice(ideal):
            s = strand(ideal, tuple(u), QQ)
            chi_basis = sum((-1) ** i * s.dim(i) for i in s.degrees)
            chi_hom = sum(
                (-1) ** i * homology_dimension(ideal, QQ, tuple(u), i)
                for i in s.degrees
            )
            assert chi_basis == chi_hom


def test_strand_homology_matches_fiber_cohomology(example_ideal):
    # dimension duality between the strand and its fiber complex
    lat = lcm_lattice(example_ideal)
    for u in lat:
        below = lat.generators_below(u)
        fib = fiber_complex(example_ideal, tuple(u))
        dims = reduced_cohomology_dims(fib, QQ)
        for i in range(1, len(below) + 1):
            want = dims.get(len(below) - i - 1, 0)
            assert homology_dimension(example_ideal, QQ, tuple(u), i) == want


def test_zero_ideal_betti():
    ideal = MonomialIdeal(("x", "y"), ())
    bd = betti(ideal, QQ)
    assert bd.multigraded == (((0, (0, 0)), 1),)
    assert bd.projective_dimension == 0
    assert bd.regularity == 0

import random
from itertools import combinations

import pytest

from conftest import ideal_corpus
from golod_lab.exact_linalg import QQ
from golod_lab.monomial_core import (
    MonomialIdeal,
    counterexample_ideal,
    lcm_of,
    parse_monomial,
)
from golod_lab.simplicial import reduced_cochain_complex
from golod_lab.taylor_dga import (
    boundary,
    chain_to_cochain,
    fiber_complex,
    lcm_lattice,
    mask_members,
    mask_of,
    product,
    product_reduced,
    reduced_boundary,
    strand,
    strand_degree_basis,
    subset_lcm,
)

EDGES = MonomialIdeal.from_strings(("x", "y", "z"), ["x*y", "y*z", "z*x"])


def test_boundary_two_edges():
    # m_I = xyz: dropping xy leaves coefficient x, dropping yz leaves z
    out = boundary(EDGES, mask_of([0, 1]))
    x = parse_monomial("x", EDGES.variables)
    z = parse_monomial("z", EDGES.variables)
    assert out == {mask_of([1]): (1, x), mask_of([0]): (-1, z)}


def test_boundary_singleton():
    out = boundary(EDGES, mask_of([0]))
    assert out == {0: (1, EDGES.gens[0])}


def _full_boundary_of_chain(ideal, chain):
    """Apply the full Taylor differential to a chain with monomial coefficients."""
    acc = {}
    for mask, (sign, mono) in chain.items():
        for rest, (s2, m2) in boundary(ideal, mask).items():
            key = (rest, (mono * m2).exps)
            acc[key] = acc.get(key, 0) + sign * s2
    return {k: v for k, v in acc.items() if v}


def test_boundary_squared_zero_counterexample():
    ideal = counterexample_ideal()
    for mask in range(1, 1 << ideal.n_gens):
        first = {m: (s, mono) for m, (s, mono) in boundary(ideal, mask).items()}
        assert _full_boundary_of_chain(ideal, first) == {}


def test_reduced_boundary_all_edges():
    out = reduced_boundary(EDGES, mask_of([0, 1, 2]))
    assert set(out) == {mask_of([1, 2]), mask_of([0, 2]), mask_of([0, 1])}
    assert out[mask_of([1, 2])] == 1
    assert out[mask_of([0, 2])] == -1
    assert out[mask_of([0, 1])] == 1


def test_reduced_boundary_two_edges_vanishes():
    assert reduced_boundary(EDGES, mask_of([0, 1])) == {}


def test_reduced_boundary_filler_sign():
    # indices: a=0, ab=1, b=3; dropping ab keeps the lcm and carries one sign
    ideal = counterexample_ideal()
    out = reduced_boundary(ideal, mask_of([0, 1, 3]))
    assert out == {mask_of([0, 3]): -1}


def test_product_self_zero():
    assert product(EDGES, mask_of([0]), mask_of([0])) is None
    assert product_reduced(EDGES, mask_of([0, 1]), mask_of([1])) is None


def test_product_coprime_generators():
    ideal = counterexample_ideal()
    sign, mono, union = product(ideal, mask_of([0]), mask_of([3]))
    assert (sign, union) == (1, mask_of([0, 3]))
    assert mono.is_constant
    assert product_reduced(ideal, mask_of([0]), mask_of([3])) == (1, mask_of([0, 3]))


def test_product_non_coprime_dies_in_reduction():
    ideal = counterexample_ideal()
    assert product_reduced(ideal, mask_of([0]), mask_of([1])) is None
    sign, mono, union = product(ideal, mask_of([0]), mask_of([1]))
    assert not mono.is_constant


def test_product_sign_order():
    # swapping disjoint singletons flips nothing for (0,3) but counts pairs
    ideal = counterexample_ideal()
    s1, _ = product_reduced(ideal, mask_of([0]), mask_of([3]))
    s2, _ = product_reduced(ideal, mask_of([3]), mask_of([0]))
    assert (s1, s2) == (1, -1)


def test_lcm_lattice_three_edges():
    lat = lcm_lattice(EDGES)
    # oracle: enumerate all nonempty subsets directly
    want = set()
    for r in range(1, 4):
        for c in combinations(range(3), r):
            want.add(tuple(lcm_of([EDGES.gens[i] for i in c], 3).exps))
    assert lat.elements == frozenset(want)
    assert len(lat) == 4


def test_lcm_lattice_single_generator():
    ideal = MonomialIdeal.from_strings(("x",), ["x^2"])
    assert len(lcm_lattice(ideal)) == 1


def test_lcm_lattice_contains_top_multidegree(example_ideal):
    lat = lcm_lattice(example_ideal)
    assert (1, 2, 1, 2, 3) in lat
    assert lat.top == (1, 2, 1, 2, 3)


def test_lattice_closure_matches_subset_enumeration_random():
    for ideal in ideal_corpus(15, seed=77):
        want = set()
        for r in range(1, ideal.n_gens + 1):
            for c in combinations(range(ideal.n_gens), r):
                want.add(tuple(lcm_of([ideal.gens[i] for i in c], ideal.n_vars).exps))
        assert lcm_lattice(ideal).elements == frozenset(want)


def test_strand_three_edges():
    s = strand(EDGES, (1, 1, 1), QQ)
    assert s.dim(2) == 3 and s.dim(3) == 1
    assert s.dim(1) == 0


def test_strand_minimal_generator():
    ideal = counterexample_ideal()
    s = strand(ideal, tuple(ideal.gens[0].exps), QQ)
    assert s.degrees == [1]
    assert s.dim(1) == 1


def test_strand_top_contains_all_generators(example_ideal):
    s = strand(example_ideal, (1, 2, 1, 2, 3), QQ)
    assert s.gens_below == list(range(8))


def test_strand_rejects_non_lattice_degree():
    with pytest.raises(ValueError):
        strand(EDGES, (2, 0, 0), QQ)


def test_strand_matrices_compose_to_zero(example_ideal):
    for u in lcm_lattice(example_ideal):
        s = strand(example_ideal, u, QQ)
        for i in s.degrees:
            a = s.boundary_matrix(i)
            b = s.boundary_matrix(i + 1)
            if b.cols == 0 or a.rows == 0:
                continue
            for col in range(b.cols):
                assert all(x == 0 for x in a.apply(b.column(col)))


def test_strand_basis_sizes_invariant_under_reordering():
    rng = random.Random(21)
    ideal = counterexample_ideal()
    perm = list(range(8))
    rng.shuffle(perm)
    reordered = MonomialIdeal(ideal.variables, tuple(ideal.gens[i] for i in perm))
    for u in lcm_lattice(ideal):
        a = strand(ideal, u, QQ)
        b = strand(reordered, tuple(u), QQ)
        assert {i: a.dim(i) for i in a.degrees} == {i: b.dim(i) for i in b.degrees}


def test_fiber_single_generator_strand():
    ideal = MonomialIdeal.from_strings(("x", "y"), ["x*y"])
    cx = fiber_complex(ideal, (1, 1))
    assert cx.facets == (frozenset(),)
    assert cx.ghost_vertices == ("g0",)


def test_fiber_three_edges():
    cx = fiber_complex(EDGES, (1, 1, 1))
    # oracle: all 8 subsets checked by hand; complement must still reach xyz
    faces = {frozenset(), frozenset(["g0"]), frozenset(["g1"]), frozenset(["g2"])}
    got = set(cx.all_faces())
    assert got == faces


def test_leibniz_rule_random():
    field = QQ
    for ideal in ideal_corpus(25, seed=31):
        g = ideal.n_gens
        rng = random.Random(g * 1000 + ideal.n_vars)
        for _ in range(10):
            maskI = rng.randrange(1, 1 << g)
            maskJ = rng.randrange(1, 1 << g)
            if maskI & maskJ:
                continue
            lhs = {}
            pr = product_reduced(ideal, maskI, maskJ)
            if pr is not None:
                s, union = pr
                for rest, sb in reduced_boundary(ideal, union).items():
                    lhs[rest] = lhs.get(rest, 0) + s * sb
            rhs = {}
            for rest, sb in reduced_boundary(ideal, maskI).items():
                p = product_reduced(ideal, rest, maskJ)
                if p is not None:
                    rhs[p[1]] = rhs.get(p[1], 0) + sb * p[0]
            sign = -1 if bin(maskI).count("1") % 2 else 1
            for rest, sb in reduced_boundary(ideal, maskJ).items():
                p = product_reduced(ideal, maskI, rest)
                if p is not None:
                    rhs[p[1]] = rhs.get(p[1], 0) + sign * sb * p[0]
            lhs = {k: v for k, v in lhs.items() if v}
            rhs = {k: v for k, v in rhs.items() if v}
            assert lhs == rhs


def test_nonzero_reduced_products_have_multiplicative_lcm():
    for ideal in ideal_corpus(20, seed=41):
        g = ideal.n_gens
        for maskI in range(1, 1 << g):
            for maskJ in range(1, 1 << g):
                r = product_reduced(ideal, maskI, maskJ)
                if r is None:
                    continue
                assert subset_lcm(ideal, maskI) * subset_lcm(ideal, maskJ) == subset_lcm(
                    ideal, r[1]
                )
                assert bin(r[1]).count("1") == bin(maskI).count("1") + bin(maskJ).count("1")


def test_chain_to_cochain_full_subset(example_ideal):
    u = (1, 2, 1, 2, 3)
    full = mask_of(range(8))
    cochain = chain_to_cochain(example_ideal, u, {full: 1})
    assert list(cochain) == [frozenset()]


def test_chain_to_cochain_zero_chain(example_ideal):
    assert chain_to_cochain(example_ideal, (1, 2, 1, 2, 3), {}) == {}


def test_chain_to_cochain_massey_representative(example_ideal):
    u = (1, 2, 1, 2, 3)
    chain = {mask_of([0, 1, 3, 6]): -1, mask_of([0, 3, 4, 6]): -1}
    cochain = chain_to_cochain(example_ideal, u, chain)
    supports = {frozenset({"g2", "g4", "g5", "g7"}), frozenset({"g1", "g2", "g5", "g7"})}
    assert set(cochain) == supports
    assert {abs(c) for c in cochain.values()} == {1}


def test_chain_to_cochain_rejects_mixed_chains(example_ideal):
    with pytest.raises(ValueError):
        chain_to_cochain(
            example_ideal, (1, 2, 1, 2, 3), {mask_of([0, 1, 3, 6]): 1, mask_of(range(8)): 1}
        )


def _intertwining_holds(ideal, u, field):
    """chain_to_cochain must carry the strand differential to the coboundary."""
    s = strand(ideal, u, field)
    fib = fiber_complex(ideal, u)
    cc = reduced_cochain_complex(fib, field)
    n_below = len(s.gens_below)
    for i in s.degrees:
        for mask in s.basis[i]:
            image = chain_to_cochain(ideal, u, dict(reduced_boundary(ideal, mask)))
            cdim = n_below - i - 1
            phi = chain_to_cochain(ideal, u, {mask: 1})
            vec = cc.cochain_vector(cdim, phi)
            delta = cc.delta(cdim)
            want = {f: c for f, c in zip(cc.faces(cdim + 1), delta.apply(vec)) if c != 0}
            got = {f: field.of(c) for f, c in image.items() if c != 0}
            if got != want:
                return False
    return True


def test_chain_to_cochain_intertwines_counterexample(example_ideal):
    for u in lcm_lattice(example_ideal):
        assert _intertwining_holds(example_ideal, tuple(u), QQ)


def test_chain_to_cochain_intertwines_random():
    for ideal in ideal_corpus(10, seed=51, max_gens=5):
        for u in lcm_lattice(ideal):
            assert _intertwining_holds(ideal, tuple(u), QQ)


def test_strand_degree_basis_matches_full_strand(example_ideal):
    for u in list(lcm_lattice(example_ideal))[:10]:
        s = strand(example_ideal, tuple(u), QQ)
        for i in s.degrees:
            assert strand_degree_basis(example_ideal, tuple(u), i) == s.basis[i]


def test_mask_helpers():
    assert mask_members(0b1011) == [0, 1, 3]
    assert mask_of([0, 1, 3]) == 0b1011

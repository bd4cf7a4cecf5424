import random

import pytest

from spanfact.blocks import (
    BlockSystem,
    atoms,
    block_action,
    block_construction,
    cycle_block_system,
    difference_class_orbits,
    invariant_refinements,
    phase_profile,
    position_block_system,
    position_system,
    relative_block_permutation,
    swap_relabel,
)
from spanfact.digraph import (
    Digraph2,
    build_doubled_cycle,
    build_shift,
    build_toy,
    enumerate_factorizations,
    factorization_at,
    initial_factorization,
)
from spanfact.errors import (
    NonInvarianceError,
    PhaseInconsistencyError,
    PreconditionError,
    UniformityError,
)
from spanfact.fixtures import load_fixture
from spanfact.perm import Perm
from spanfact.spanning import WordSet, verify_sharply_transitive

from oracles import brute_force_refinement_families


def test_position_system_toy():
    d, f = build_toy(3)
    ps = position_system(f)
    assert (ps.m, ps.r) == (2, 3)
    assert ps.cycle_list == ((0, 3), (1, 4), (2, 5))
    assert ps.blocks == (frozenset({0, 1, 2}), frozenset({3, 4, 5}))


def test_position_system_fixture_shapes():
    # computed x-structure: ex3 five blocks of six, ex2 three blocks of ten
    f3 = initial_factorization(load_fixture("a5-ex3").digraph)
    ps3 = position_system(f3)
    assert (ps3.m, ps3.r) == (5, 6)
    f2 = initial_factorization(load_fixture("a5-ex2").digraph)
    ps2 = position_system(f2)
    assert (ps2.m, ps2.r) == (3, 10)


def test_position_system_single_cycle():
    d, f = build_shift(5)
    ps = position_system(f)
    assert (ps.m, ps.r) == (5, 1)
    assert all(len(b) == 1 for b in ps.blocks)


def test_position_system_uniformity_error():
    d = Digraph2([(1, 1), (2, 0), (0, 2)])
    f = initial_factorization(d)
    with pytest.raises(UniformityError):
        position_system(f)


def test_phase_profile_toy_values():
    d, f = build_toy(3)
    ps = position_system(f)
    pp = phase_profile(f, ps)
    assert pp.delta == (0, 0, 0)
    assert pp.phase_counts == (3, 0)
    assert pp.tied_blocks[0] == frozenset({0, 1, 2})


def test_identity_phase_when_f1_fixes_blocks():
    # all-zero phases exactly when F1 maps every position block to itself
    d, f = build_toy(4)
    ps = position_system(f)
    pp = phase_profile(f, ps)
    fixes = all(frozenset(f.f1(v) for v in blk) == blk for blk in ps.blocks)
    assert fixes == all(dd == 0 for dd in pp.delta)


@pytest.mark.parametrize("m", [3, 5])
def test_phase_laws_all_toy_factorizations(m):
    d, _ = build_toy(m)
    for f in enumerate_factorizations(d):
        ps = position_system(f)
        pp = phase_profile(f, ps)
        A = atoms(f, ps, pp)
        assert sum(pp.phase_counts) == ps.r
        for j in range(ps.m):
            for dd in range(ps.m):
                assert len(A[(j, (j + dd) % ps.m)]) == pp.phase_counts[dd]
        # atoms really are the meet of positions and tied blocks
        for j in range(ps.m):
            for k in range(ps.m):
                assert A[(j, k)] == ps.blocks[j] & pp.tied_blocks[k]


def test_phase_profile_ex3_inconsistent():
    # computed truth: no factorization of this digraph has constant phases
    d = load_fixture("a5-ex3").digraph
    for b in (0, 17, 63):
        f = factorization_at(d, b)
        ps = position_system(f)
        with pytest.raises(PhaseInconsistencyError):
            phase_profile(f, ps)


def test_atoms_toy_values():
    d, f = build_toy(3)
    ps = position_system(f)
    pp = phase_profile(f, ps)
    A = atoms(f, ps, pp)
    assert A[(0, 0)] == frozenset({0, 1, 2})
    assert A[(0, 1)] == frozenset()


def test_atoms_single_cycle():
    d, f = build_shift(4)
    ps = position_system(f)
    pp = phase_profile(f, ps)
    A = atoms(f, ps, pp)
    for j in range(ps.m):
        nonempty = [k for k in range(ps.m) if A[(j, k)]]
        assert len(nonempty) == 1


def test_difference_class_orbits_toy():
    d, f = build_toy(3)
    ps = position_system(f)
    assert difference_class_orbits(f, ps) == ((0,), (1,))


def test_difference_class_orbits_m1():
    d = build_doubled_cycle(3)
    f = initial_factorization(d)
    ps = position_system(f)
    assert ps.m == 1
    assert difference_class_orbits(f, ps) == ((0,),)


def test_refinement_count_and_full_union():
    d, f = build_toy(3)
    ps = position_system(f)
    pi = difference_class_orbits(f, ps)
    refs = invariant_refinements(f, ps, pi)
    assert len(refs) == (1 << len(pi)) - 1
    full = [rs for rs in refs if rs.class_orbits == pi]
    assert len(full) == 1
    assert set(full[0].system.blocks) == set(ps.blocks)
    assert all(rs.invariant for rs in refs)


def test_refinement_block_sizes_uniform():
    for m in (3, 4, 5):
        d, _ = build_toy(m)
        for f in enumerate_factorizations(d):
            ps = position_system(f)
            pi = difference_class_orbits(f, ps)
            for rs in invariant_refinements(f, ps, pi):
                assert all(len(b) == rs.block_size for b in rs.system.blocks)


@pytest.mark.parametrize(
    "builder",
    [
        lambda: build_toy(3),
        lambda: build_toy(4),
        lambda: build_toy(5),
        lambda: build_shift(4),
        lambda: build_shift(5),
        lambda: (load_fixture("morris").digraph, None),
    ],
)
def test_refinements_match_brute_force(builder):
    d, _ = builder()
    for f in enumerate_factorizations(d):
        ps = position_system(f)
        try:
            pi = difference_class_orbits(f, ps)
        except PhaseInconsistencyError:
            continue
        refs = invariant_refinements(f, ps, pi)
        returned = {frozenset(rs.system.blocks) for rs in refs if rs.invariant}
        oracle = brute_force_refinement_families(f)
        assert returned == oracle


def test_phase_laws_morris():
    # a coset instance where the covering group respects the x-cycles:
    # constant phases for all 8 labelings, nonzero for 7 of them
    d = load_fixture("morris").digraph
    nonzero = 0
    for f in enumerate_factorizations(d):
        ps = position_system(f)
        pp = phase_profile(f, ps)
        assert sum(pp.phase_counts) == ps.r
        A = atoms(f, ps, pp)
        for j in range(ps.m):
            for dd in range(ps.m):
                assert len(A[(j, (j + dd) % ps.m)]) == pp.phase_counts[dd]
        if any(dd != 0 for dd in pp.delta):
            nonzero += 1
    assert nonzero == 7


def test_block_action_toy():
    d, f = build_toy(3)
    ps = position_system(f)
    cyc = cycle_block_system(ps)
    pos = position_block_system(ps)
    assert block_action(f.f1, cyc) == block_action(f.f2, cyc) == Perm([1, 2, 0])
    assert block_action(Perm.identity(6), cyc).is_identity()
    assert block_action(f.f1, pos).is_identity()
    assert block_action(f.f2, pos) == Perm([1, 0])


def test_block_action_non_invariance():
    d, f = build_toy(3)
    bs = BlockSystem((frozenset({0, 1}), frozenset({2, 3}), frozenset({4, 5})))
    with pytest.raises(NonInvarianceError):
        block_action(f.f1, bs)


def test_relative_block_permutation_toy():
    d, f = build_toy(3)
    ps = position_system(f)
    tau_c, der_c = relative_block_permutation(f, cycle_block_system(ps))
    assert tau_c.is_identity() and not der_c
    tau_p, der_p = relative_block_permutation(f, position_block_system(ps))
    assert tau_p == Perm([1, 0]) and der_p


def test_relative_block_permutation_equal_factors():
    d = build_doubled_cycle(3)
    f = initial_factorization(d)
    ps = position_system(f)
    tau, der = relative_block_permutation(f, cycle_block_system(ps))
    assert tau.is_identity() and not der


def test_swap_relabel_masks():
    d, f = build_toy(3)
    dec = d.alt_decomposition
    full = (1 << dec.r) - 1
    assert swap_relabel(f, 0) == f
    g = swap_relabel(f, full)
    assert (g.f1, g.f2) == (f.f2, f.f1)
    mixed = swap_relabel(f, 1)
    assert mixed.is_valid()
    # labels swapped exactly on the masked cycle
    for e in dec.cycles[0]:
        v = e[0]
        head = d.head(e)
        assert (f.f1(v) == head) == (mixed.f2(v) == head)
    for ci in (1, 2):
        for e in dec.cycles[ci]:
            v = e[0]
            head = d.head(e)
            assert (f.f1(v) == head) == (mixed.f1(v) == head)


def test_swap_invariance_cycle_blocks_toy():
    rng = random.Random(11)
    for m in (3, 5):
        d, _ = build_toy(m)
        r = d.alt_decomposition.r
        for f in enumerate_factorizations(d):
            ps = position_system(f)
            bs = cycle_block_system(ps)
            tau0, _ = relative_block_permutation(f, bs)
            for _ in range(20):
                mask = rng.randrange(1 << r)
                g = swap_relabel(f, mask)
                tau1, _ = relative_block_permutation(g, bs)
                assert tau1 == tau0


def test_block_construction_toy_success():
    d, f = build_toy(3)
    ps = position_system(f)
    ws = block_construction(f, ps)
    assert isinstance(ws, WordSet)
    assert len(ws) == 6
    assert {(), (1,), (2,)} <= set(ws.words)
    assert verify_sharply_transitive(ws, f).passed


def test_block_construction_cycle_blocks_precondition():
    d, f = build_toy(3)
    ps = position_system(f)
    with pytest.raises(PreconditionError):
        block_construction(f, ps, blocks=cycle_block_system(ps))


def test_block_construction_n1():
    d = Digraph2([(0, 0)])
    f = initial_factorization(d)
    ps = position_system(f)
    ws = block_construction(f, ps)
    assert isinstance(ws, WordSet)
    assert ws.words == ((),)

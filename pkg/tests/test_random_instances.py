"""Seeded random small digraphs: cross-validate enumeration invariants and
the search kernels against the naive oracle."""
import random

import pytest

from spanfact.blocks import (
    difference_class_orbits,
    invariant_refinements,
    phase_profile,
    position_system,
    swap_relabel,
)
from spanfact.digraph import (
    Digraph2,
    build_doubled_cycle,
    enumerate_factorizations,
    initial_factorization,
)
from spanfact.errors import PhaseInconsistencyError, SpanfactError, UniformityError
from spanfact.spanning import max_relocatable_tree, phase_addressing, splice_generators, verify_sharply_transitive

from oracles import brute_force_refinement_families, naive_max_tree_size


def random_digraph(rng: random.Random, n: int) -> Digraph2:
    """A random 2-regular strongly connected simple digraph on n vertices."""
    while True:
        f1 = list(range(n))
        rng.shuffle(f1)
        f2 = list(range(n))
        rng.shuffle(f2)
        if any(a == v or b == v or a == b for v, (a, b) in enumerate(zip(f1, f2))):
            continue
        try:
            return Digraph2(list(zip(f1, f2)))
        except SpanfactError:
            continue


@pytest.mark.parametrize("seed", range(8))
def test_enumeration_invariants_random(seed):
    rng = random.Random(seed)
    d = random_digraph(rng, rng.choice([4, 5, 6, 7, 8]))
    dec = d.alt_decomposition
    facs = enumerate_factorizations(d)
    assert len(facs) == 1 << dec.r
    full = (1 << dec.r) - 1
    for f in facs:
        assert f.is_valid()
        g = facs[f.bitmask ^ full]
        assert (f.f1, f.f2) == (g.f2, g.f1)
        # labeling independence: x-orbit tails match the decomposition cycles
        tails = {frozenset(e[0] for e in cyc) for cyc in dec.cycles}
        xc = {frozenset(c) for c in f.x().cycles()}
        assert xc == tails


@pytest.mark.parametrize("seed", range(6))
def test_tree_search_matches_oracle_random(seed):
    rng = random.Random(100 + seed)
    d = random_digraph(rng, rng.choice([4, 5, 6]))
    for f in enumerate_factorizations(d):
        res = max_relocatable_tree(f)
        pure = max_relocatable_tree(f, force_pure=True)
        assert res.certificate and pure.certificate
        assert res.size == pure.size == naive_max_tree_size(f)
        assert res.words == pure.words


@pytest.mark.parametrize("seed", range(4))
def test_refinements_match_oracle_random(seed):
    rng = random.Random(200 + seed)
    d = random_digraph(rng, rng.choice([4, 6, 8]))
    for f in enumerate_factorizations(d):
        try:
            ps = position_system(f)
            pi = difference_class_orbits(f, ps)
        except (UniformityError, PhaseInconsistencyError):
            continue
        refs = invariant_refinements(f, ps, pi)
        returned = {frozenset(rs.system.blocks) for rs in refs if rs.invariant}
        assert returned == brute_force_refinement_families(f)


@pytest.mark.parametrize("seed", range(4))
def test_swap_relabel_always_valid_random(seed):
    rng = random.Random(300 + seed)
    d = random_digraph(rng, rng.choice([5, 6, 7]))
    r = d.alt_decomposition.r
    f = initial_factorization(d)
    for _ in range(20):
        mask = rng.randrange(1 << r)
        g = swap_relabel(f, mask)
        assert g.is_valid()
        assert swap_relabel(g, mask) == f


def test_phase_addressing_doubled_cycle():
    # m = 1: singleton x-cycles, trivial phases, transitive top action
    d = build_doubled_cycle(3)
    f = initial_factorization(d)
    ps = position_system(f)
    pp = phase_profile(f, ps)
    s0 = phase_addressing(f, ps, pp)
    assert verify_sharply_transitive(s0, f).passed
    # both out-edges of the root share a head here, so the splice that would
    # inject the two single-factor words must refuse
    from spanfact.errors import PreconditionError

    with pytest.raises(PreconditionError):
        splice_generators(s0, f)

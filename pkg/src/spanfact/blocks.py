"""Position systems, tied refinements, phases, atoms, invariant refinements,
block actions, and the block-derangement criterion.

The phase of an x-cycle is the constant offset between a vertex's position
and the index of the tied block containing it; the profile computation
verifies that constancy along every cycle and reports the failing cycle
when the offset drifts.
"""
from __future__ import annotations

from dataclasses import dataclass

from .digraph import Factorization, factorization_at
from .errors import (
    NonInvarianceError,
    PhaseInconsistencyError,
    PreconditionError,
    UniformityError,
)
from .perm import Perm, compose

# orbit operator convention used throughout; its inverse yields the same
# orbit partition, so position systems are convention-independent
X_CONVENTION = "F2^-1 F1"


@dataclass(frozen=True)
class PositionSystem:
    """The m position blocks P_j = x^j(P_0) built from the canonical transversal.

    cycle_list holds the x-cycles sorted by minimum vertex, each starting at
    its minimum vertex, so P_0 is the set of cycle minima.
    """

    m: int
    r: int
    cycle_list: tuple[tuple[int, ...], ...]
    blocks: tuple[frozenset[int], ...]
    _cycle_of: dict[int, int]
    _pos_of: dict[int, int]

    def cycle_of(self, v: int) -> int:
        return self._cycle_of[v]

    def position_of(self, v: int) -> int:
        return self._pos_of[v]


def position_system(f: Factorization) -> PositionSystem:
    x = f.x()
    cycles = x.cycles()
    lengths = {len(c) for c in cycles}
    if len(lengths) != 1:
        raise UniformityError(
            f"x-cycle lengths are not uniform: {sorted(len(c) for c in cycles)}"
        )
    m = lengths.pop()
    r = len(cycles)
    blocks = tuple(frozenset(c[j] for c in cycles) for j in range(m))
    cycle_of = {v: i for i, cyc in enumerate(cycles) for v in cyc}
    pos_of = {v: j for cyc in cycles for j, v in enumerate(cyc)}
    return PositionSystem(m, r, cycles, blocks, cycle_of, pos_of)


@dataclass(frozen=True)
class PhaseProfile:
    """Per-cycle phases, their counts, and the tied refinement F1(P_j)."""

    delta: tuple[int, ...]
    phase_counts: tuple[int, ...]
    tied_blocks: tuple[frozenset[int], ...]


def phase_profile(f: Factorization, ps: PositionSystem) -> PhaseProfile:
    """Phases from tied-block membership, verified constant along every cycle."""
    m = ps.m
    f1 = f.f1
    tied = tuple(frozenset(f1(v) for v in ps.blocks[k]) for k in range(m))
    tied_pos = {}
    for k, blk in enumerate(tied):
        for v in blk:
            tied_pos[v] = k
    delta = []
    for i, cyc in enumerate(ps.cycle_list):
        d0 = tied_pos[cyc[0]] % m
        for j in range(1, m):
            dj = (tied_pos[cyc[j]] - j) % m
            if dj != d0:
                raise PhaseInconsistencyError(
                    f"phase not constant on cycle {i}: offset {d0} at position 0 "
                    f"but {dj} at position {j}"
                )
        delta.append(d0)
    counts = [0] * m
    for d in delta:
        counts[d] += 1
    return PhaseProfile(tuple(delta), tuple(counts), tied)


def atoms(
    f: Factorization, ps: PositionSystem, pp: PhaseProfile
) -> dict[tuple[int, int], frozenset[int]]:
    """A_{j,k} = P_j intersect tied block k; empty atoms included."""
    m = ps.m
    out = {}
    for j in range(m):
        for k in range(m):
            d = (k - j) % m
            out[(j, k)] = frozenset(
                cyc[j] for i, cyc in enumerate(ps.cycle_list) if pp.delta[i] == d
            )
    return out


def difference_class_orbits(f: Factorization, ps: PositionSystem) -> tuple[tuple[int, ...], ...]:
    """Orbits on difference classes d in Z_m under the images of atoms by F1 and x,
    traced explicitly; empty classes stay singleton orbits."""
    pp = phase_profile(f, ps)
    m = ps.m
    parent = list(range(m))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    class_of_vertex = {}
    for i, cyc in enumerate(ps.cycle_list):
        for v in cyc:
            class_of_vertex[v] = pp.delta[i]
    x = f.x()
    for g in (f.f1, x):
        for i, cyc in enumerate(ps.cycle_list):
            d = pp.delta[i]
            for v in cyc:
                union(d, class_of_vertex[g(v)])
    orbits: dict[int, list[int]] = {}
    for d in range(m):
        orbits.setdefault(find(d), []).append(d)
    return tuple(tuple(sorted(o)) for o in sorted(orbits.values(), key=min))


@dataclass(frozen=True)
class BlockSystem:
    """Equal-size blocks partitioning their support (usually all of V)."""

    blocks: tuple[frozenset[int], ...]

    @property
    def support(self) -> frozenset[int]:
        out: set[int] = set()
        for blk in self.blocks:
            out |= blk
        return frozenset(out)

    def block_of(self, v: int) -> int:
        for i, blk in enumerate(self.blocks):
            if v in blk:
                return i
        raise KeyError(v)


def position_block_system(ps: PositionSystem) -> BlockSystem:
    """The m transversal-position blocks of size r."""
    return BlockSystem(ps.blocks)


def cycle_block_system(ps: PositionSystem) -> BlockSystem:
    """The r x-cycle blocks of size m (labeling-independent)."""
    return BlockSystem(tuple(frozenset(c) for c in ps.cycle_list))


@dataclass(frozen=True)
class RefinementSystem:
    """One class-union coarsening, tagged by its subcollection of class orbits.

    invariant records whether F1 and x both map every block onto a block;
    the flag is reported rather than enforced so callers can see exactly
    which subcollections the covering group respects.
    """

    class_orbits: tuple[tuple[int, ...], ...]
    block_size: int
    system: BlockSystem
    invariant: bool


def invariant_refinements(
    f: Factorization, ps: PositionSystem, pi: tuple[tuple[int, ...], ...]
) -> list[RefinementSystem]:
    """One system per nonempty subcollection of Pi, each with its verified
    invariance flag; deterministic order by subcollection bitmask."""
    pp = phase_profile(f, ps)
    m = ps.m
    out = []
    k = len(pi)
    x = f.x()
    for mask in range(1, 1 << k):
        chosen = tuple(pi[t] for t in range(k) if (mask >> t) & 1)
        classes = {d for orb in chosen for d in orb}
        blocks = []
        for j in range(m):
            blk = frozenset(
                cyc[j] for i, cyc in enumerate(ps.cycle_list) if pp.delta[i] in classes
            )
            if blk:
                blocks.append(blk)
        system = BlockSystem(tuple(blocks))
        size = sum(pp.phase_counts[d] for d in classes)
        invariant = all(is_invariant(g, system) for g in (f.f1, x))
        out.append(RefinementSystem(chosen, size, system, invariant))
    return out


def is_invariant(g: Perm, bs: BlockSystem) -> bool:
    """Whether g maps every block of the system onto a block of the system."""
    block_index = {}
    for i, blk in enumerate(bs.blocks):
        for v in blk:
            block_index[v] = i
    for blk in bs.blocks:
        targets = {block_index.get(g(v)) for v in blk}
        if None in targets or len(targets) != 1:
            return False
    return True


def block_action(g: Perm, bs: BlockSystem) -> Perm:
    """The induced permutation of block ids, or NonInvarianceError if g splits one."""
    block_index = {}
    for i, blk in enumerate(bs.blocks):
        for v in blk:
            block_index[v] = i
    images = []
    for i, blk in enumerate(bs.blocks):
        targets = set()
        for v in blk:
            u = g(v)
            if u not in block_index:
                raise NonInvarianceError(f"{g} maps block {i} outside the support")
            targets.add(block_index[u])
            if len(targets) > 1:
                raise NonInvarianceError(f"{g} splits block {i}")
        images.append(targets.pop())
    return Perm(images)


def relative_block_permutation(f: Factorization, bs: BlockSystem) -> tuple[Perm, bool]:
    """tau = sigma(F1)^{-1} sigma(F2) on block ids, with its derangement flag."""
    s1 = block_action(f.f1, bs)
    s2 = block_action(f.f2, bs)
    tau = compose(s1.inverse(), s2)
    return tau, tau.is_derangement()


def swap_relabel(f: Factorization, swap_mask: int) -> Factorization:
    """Swap the F1/F2 labels on exactly the masked alternating cycles."""
    r = f.digraph.alt_decomposition.r
    if not 0 <= swap_mask < (1 << r):
        raise PreconditionError(f"mask {swap_mask} out of range for r={r}")
    return factorization_at(f.digraph, f.bitmask ^ swap_mask)


@dataclass(frozen=True)
class BlockConstructionFailure:
    """Bounded search ended without a verified set; not a precondition failure."""

    reason: str
    words_tried: int


def block_construction(
    f: Factorization,
    ps: PositionSystem,
    blocks: BlockSystem | None = None,
    word_cap: int | None = None,
):
    """Build a sharply transitive word set containing the empty word and both
    single-factor words, gated by the block-derangement criterion.

    blocks defaults to the transversal position system; pass the x-cycle
    system to test the criterion it induces instead.  Returns a WordSet or a
    BlockConstructionFailure; raises PreconditionError when the relative
    block permutation is not a derangement.
    """
    from .spanning import WordSet, search_sharply_transitive, verify_sharply_transitive

    if f.n == 1:
        return WordSet.from_words([()], f, root=0)
    bs = blocks if blocks is not None else position_block_system(ps)
    tau, is_der = relative_block_permutation(f, bs)
    if not is_der:
        raise PreconditionError(
            f"relative block permutation {tau} has a fixed block; criterion fails"
        )
    n = f.n
    if word_cap is None:
        word_cap = 4 * n
    root = ps.cycle_list[0][0]
    result = search_sharply_transitive(
        f, root=root, required=((), (1,), (2,)), max_len=word_cap
    )
    if result is None:
        return BlockConstructionFailure(
            reason=f"no sharply transitive completion within word length {word_cap}",
            words_tried=word_cap,
        )
    verdict = verify_sharply_transitive(result, f)
    if not verdict.passed:
        return BlockConstructionFailure(
            reason=f"candidate set failed verification: {verdict.reason}",
            words_tried=word_cap,
        )
    return result

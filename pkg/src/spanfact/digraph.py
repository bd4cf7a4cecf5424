"""2-regular digraphs, their 1-factorizations, and classification up to symmetry.

Edges are addressed as (tail, slot) with slot in {0, 1} indexing the out-edge
pair, so parallel edges stay distinguishable.  The alternating-cycle
decomposition is computed from the digraph alone; a 1-factorization is then
exactly a choice of orientation bit per alternating cycle, which gives the
2^r enumeration, the complement pairing, and mask-based relabeling for free.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import PreconditionError, SizeCapError, StrongConnectivityError
from .groups import CosetSpace, Presentation, left_multiplication, validate_presentation
from .perm import Perm, compose

Edge = tuple[int, int]

DEFAULT_CYCLE_CAP = 24


class Digraph2:
    """A digraph in which every vertex has out-degree and in-degree 2."""

    def __init__(self, out_edges):
        self.out_edges: tuple[tuple[int, int], ...] = tuple(
            (int(a), int(b)) for a, b in out_edges
        )
        self.n = len(self.out_edges)
        indeg = [0] * self.n
        for a, b in self.out_edges:
            for u in (a, b):
                if not 0 <= u < self.n:
                    raise PreconditionError(f"edge head {u} out of range")
                indeg[u] += 1
        bad = [v for v in range(self.n) if indeg[v] != 2]
        if bad:
            raise PreconditionError(f"vertices with in-degree != 2: {bad}")
        if not self._strongly_connected():
            raise StrongConnectivityError("digraph is not strongly connected")

    def _strongly_connected(self) -> bool:
        if self.n == 0:
            return False
        fwd = [[] for _ in range(self.n)]
        bwd = [[] for _ in range(self.n)]
        for v, (a, b) in enumerate(self.out_edges):
            fwd[v] += [a, b]
            bwd[a].append(v)
            bwd[b].append(v)
        for adj in (fwd, bwd):
            seen = [False] * self.n
            seen[0] = True
            queue = deque([0])
            while queue:
                v = queue.popleft()
                for u in adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        queue.append(u)
            if not all(seen):
                return False
        return True

    def head(self, e: Edge) -> int:
        return self.out_edges[e[0]][e[1]]

    def edges(self) -> list[Edge]:
        return [(v, sl) for v in range(self.n) for sl in (0, 1)]

    def __repr__(self) -> str:
        return f"Digraph2(n={self.n})"

    @cached_property
    def alt_decomposition(self) -> "AltCycleDecomposition":
        """Alternating cycles, independent of any factorization labeling."""
        ins: list[list[Edge]] = [[] for _ in range(self.n)]
        for e in self.edges():
            ins[self.head(e)].append(e)

        def other_in(e: Edge) -> Edge:
            a, b = ins[self.head(e)]
            return b if a == e else a

        seen: set[Edge] = set()
        cycles: list[tuple[Edge, ...]] = []
        for e0 in self.edges():
            if e0 in seen:
                continue
            cyc: list[Edge] = []
            e = e0
            while True:
                cyc.append(e)
                seen.add(e)
                f = other_in(e)
                cyc.append(f)
                seen.add(f)
                e = (f[0], 1 - f[1])
                if e == e0:
                    break
            cycles.append(tuple(cyc))
        cycle_of_edge = {}
        for ci, cyc in enumerate(cycles):
            for e in cyc:
                cycle_of_edge[e] = ci
        return AltCycleDecomposition(tuple(cycles), cycle_of_edge)

    @cached_property
    def _default_f1_label(self) -> dict[Edge, bool]:
        """Edge -> True when the initial matching assigns it to F1."""
        f1 = self._matching_f1
        labels: dict[Edge, bool] = {}
        for v, (a, b) in enumerate(self.out_edges):
            if a == b:
                labels[(v, 0)] = True
                labels[(v, 1)] = False
            elif f1[v] == a:
                labels[(v, 0)] = True
                labels[(v, 1)] = False
            else:
                labels[(v, 0)] = False
                labels[(v, 1)] = True
        return labels

    @cached_property
    def _matching_f1(self) -> tuple[int, ...]:
        """A perfect matching tail -> head via augmenting paths; deterministic."""
        n = self.n
        match_l = [-1] * n
        match_r = [-1] * n

        def augment(v: int, visited: list[bool]) -> bool:
            for u in self.out_edges[v]:
                if visited[u]:
                    continue
                visited[u] = True
                if match_r[u] == -1 or augment(match_r[u], visited):
                    match_l[v] = u
                    match_r[u] = v
                    return True
            return False

        for v in range(n):
            if match_l[v] == -1:
                augment(v, [False] * n)
        if any(m == -1 for m in match_l):
            raise PreconditionError("no perfect matching; digraph is not 2-regular")
        return tuple(match_l)


@dataclass(frozen=True)
class AltCycleDecomposition:
    """Edge partition into alternating cycles; each edge list alternates direction."""

    cycles: tuple[tuple[Edge, ...], ...]
    cycle_of_edge: dict[Edge, int]

    @property
    def r(self) -> int:
        return len(self.cycles)


@dataclass(frozen=True)
class Factorization:
    """An ordered pair of 1-factors tagged with its orientation bitmask."""

    digraph: Digraph2
    f1: Perm
    f2: Perm
    bitmask: int

    @property
    def n(self) -> int:
        return self.digraph.n

    def swapped(self) -> "Factorization":
        full = (1 << self.digraph.alt_decomposition.r) - 1
        return Factorization(self.digraph, self.f2, self.f1, self.bitmask ^ full)

    def x(self) -> Perm:
        """The orbit operator F2^{-1} F1."""
        return compose(self.f2.inverse(), self.f1)

    def y(self) -> Perm:
        """The conjugate operator F1 F2^{-1}."""
        return compose(self.f1, self.f2.inverse())

    def is_valid(self) -> bool:
        return all(
            sorted((self.f1(v), self.f2(v))) == sorted(self.digraph.out_edges[v])
            for v in range(self.n)
        )


def alternating_cycles(d: Digraph2, f: Factorization) -> AltCycleDecomposition:
    """The alternating-cycle decomposition; identical for every valid labeling."""
    if f.digraph is not d or not f.is_valid():
        raise PreconditionError("factorization does not belong to this digraph")
    return d.alt_decomposition


def factorization_at(d: Digraph2, bitmask: int) -> Factorization:
    """The 1-factorization selected by flipping the masked alternating cycles."""
    dec = d.alt_decomposition
    if not 0 <= bitmask < (1 << dec.r):
        raise PreconditionError(f"bitmask {bitmask} out of range for r={dec.r}")
    labels = d._default_f1_label
    f1 = [-1] * d.n
    f2 = [-1] * d.n
    for ci, cyc in enumerate(dec.cycles):
        flip = (bitmask >> ci) & 1
        for e in cyc:
            v = e[0]
            if labels[e] ^ bool(flip):
                f1[v] = d.head(e)
            else:
                f2[v] = d.head(e)
    return Factorization(d, Perm(f1), Perm(f2), bitmask)


def initial_factorization(d: Digraph2) -> Factorization:
    """The all-default factorization; defines bit 0 on every alternating cycle."""
    return factorization_at(d, 0)


def bitmask_of(d: Digraph2, f1: Perm) -> int:
    """Recover the orientation bitmask of the factorization whose first factor is f1."""
    dec = d.alt_decomposition
    labels = d._default_f1_label
    mask = 0
    for ci, cyc in enumerate(dec.cycles):
        v, sl = cyc[0]
        a, b = d.out_edges[v]
        if a == b:
            continue
        is_f1 = f1(v) == d.head((v, sl))
        if is_f1 != labels[(v, sl)]:
            mask |= 1 << ci
    return mask


def enumerate_factorizations(d: Digraph2, cap: int = DEFAULT_CYCLE_CAP) -> list[Factorization]:
    """All 2^r factorizations, bitmask ascending."""
    r = d.alt_decomposition.r
    if r > cap:
        raise SizeCapError(f"alternating cycle count {r} exceeds cap {cap}")
    return [factorization_at(d, b) for b in range(1 << r)]


# --- builders ----------------------------------------------------------------


@dataclass(frozen=True)
class CosetDigraph:
    """A coset digraph together with its group context."""

    digraph: Digraph2
    space: CosetSpace
    presentation: Presentation

    def default_aut_generators(self) -> list[Perm]:
        """Left multiplications by the group's defining generators."""
        return [left_multiplication(self.space, g) for g in self.presentation.group.generators]


def build_coset_digraph(p: Presentation, space: CosetSpace | None = None) -> CosetDigraph:
    """Vertices are right cosets gH; out-edges of gH are gsH for s in S."""
    report = validate_presentation(p)
    if not report.valid:
        failed = [c.label for c in report.checks if not c.passed]
        raise PreconditionError(f"invalid presentation; failing conditions: {failed}")
    if len(p.S) != 2:
        raise PreconditionError("degree-2 digraph needs |S| = 2")
    from .groups import coset_space as build_space

    group = p.group
    if space is None:
        space = build_space(group, list(p.H_generators))
    s_el, t_el = (group.elements[i] for i in p.S)
    out = []
    for rep in space.representative:
        g = group.elements[rep]
        out.append(
            (
                space.coset_of[group.index[compose(g, s_el)]],
                space.coset_of[group.index[compose(g, t_el)]],
            )
        )
    return CosetDigraph(Digraph2(out), space, p)


def build_toy(m: int) -> tuple[Digraph2, Factorization]:
    """The two-row family on {0,1} x Z_m with vertex id m*i + j.

    F1 keeps the row, F2 flips it; both advance the column by one.
    """
    if m < 3:
        raise PreconditionError("toy family needs m >= 3")
    n = 2 * m
    f1 = [0] * n
    f2 = [0] * n
    for i in (0, 1):
        for j in range(m):
            v = m * i + j
            f1[v] = m * i + (j + 1) % m
            f2[v] = m * (1 - i) + (j + 1) % m
    d = Digraph2(tuple(zip(f1, f2)))
    p1 = Perm(f1)
    return d, Factorization(d, p1, Perm(f2), bitmask_of(d, p1))


def build_shift(n: int, steps: tuple[int, int] = (1, 2)) -> tuple[Digraph2, Factorization]:
    """Circulant digraph on Z_n with out-edges v -> v+a, v -> v+b."""
    a, b = steps
    if n < 3 or a % n == b % n or a % n == 0 or b % n == 0:
        raise PreconditionError("shift digraph needs n >= 3 and distinct nonzero steps")
    f1 = [(v + a) % n for v in range(n)]
    f2 = [(v + b) % n for v in range(n)]
    d = Digraph2(tuple(zip(f1, f2)))
    p1 = Perm(f1)
    return d, Factorization(d, p1, Perm(f2), bitmask_of(d, p1))


def build_doubled_cycle(n: int) -> Digraph2:
    """Directed n-cycle with every edge doubled (parallel edges)."""
    return Digraph2(tuple(((v + 1) % n, (v + 1) % n) for v in range(n)))


# --- classification ----------------------------------------------------------


def is_digraph_automorphism(phi: Perm, d: Digraph2) -> bool:
    for v in range(d.n):
        a, b = d.out_edges[v]
        img = sorted((phi(a), phi(b)))
        tgt = sorted(d.out_edges[phi(v)])
        if img != tgt:
            return False
    return True


@dataclass(frozen=True)
class FactorizationClass:
    representative: int
    members: tuple[int, ...]
    cycle_type_pair: tuple[tuple[int, ...], tuple[int, ...]]

    @property
    def size(self) -> int:
        return len(self.members)


def classify_factorizations(
    d: Digraph2,
    facs: list[Factorization],
    aut_generators: list[Perm],
    allow_swap: bool,
) -> list[FactorizationClass]:
    """Orbits of the factorization list under conjugation by <aut_generators>
    (and the F1<->F2 swap when allowed); canonical representative is the
    minimal orientation bitmask in each orbit.
    """
    for phi in aut_generators:
        if not is_digraph_automorphism(phi, d):
            raise PreconditionError(f"{phi} is not a digraph automorphism")
    r = d.alt_decomposition.r
    total = 1 << r
    by_mask = {f.bitmask: f for f in facs}

    maps = []
    for phi in aut_generators:
        phi_inv = phi.inverse()
        action = [0] * total
        for b in range(total):
            f = by_mask.get(b) or factorization_at(d, b)
            conj = compose(phi, compose(f.f1, phi_inv))
            action[b] = bitmask_of(d, conj)
        maps.append(action)

    full = total - 1
    seen = [False] * total
    classes = []
    masks = sorted(by_mask)
    mask_set = set(masks)
    for b0 in masks:
        if seen[b0]:
            continue
        orbit = set()
        queue = deque([b0])
        while queue:
            b = queue.popleft()
            if b in orbit:
                continue
            orbit.add(b)
            for action in maps:
                if action[b] not in orbit:
                    queue.append(action[b])
            if allow_swap and (b ^ full) not in orbit:
                queue.append(b ^ full)
        members = tuple(sorted(orbit & mask_set))
        for b in members:
            seen[b] = True
        rep = members[0]
        f = by_mask[rep]
        classes.append(
            FactorizationClass(rep, members, (f.f1.cycle_type(), f.f2.cycle_type()))
        )
    classes.sort(key=lambda c: c.representative)
    return classes

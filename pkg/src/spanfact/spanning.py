"""Walk semantics over a factorization: equivalence and relocatability,
sharply transitive verification, relocatable-tree search, and the
phase-corrected addressing construction with generator splicing.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .blocks import PhaseProfile, PositionSystem
from .digraph import Factorization
from .errors import PreconditionError
from .perm import Perm, Word, compose, evaluate
from . import treesearch


def equivalent(a: Word, b: Word, f: Factorization) -> bool:
    """Walks agreeing at every vertex."""
    return evaluate(a, f.f1, f.f2) == evaluate(b, f.f1, f.f2)


def relocatable(a: Word, b: Word, f: Factorization) -> bool:
    """Walks disagreeing at every vertex."""
    ea = evaluate(a, f.f1, f.f2)
    eb = evaluate(b, f.f1, f.f2)
    return compose(eb, ea.inverse()).is_derangement()


@dataclass(frozen=True)
class WordSet:
    """Words with cached evaluation images and an optional distinguished root."""

    words: tuple[Word, ...]
    images: tuple[Perm, ...]
    root: int | None = None
    positive_only: bool = True

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def from_words(cls, words, f: Factorization, root: int | None = None) -> "WordSet":
        words = tuple(tuple(w) for w in words)
        images = tuple(evaluate(w, f.f1, f.f2) for w in words)
        positive = all(sym > 0 for w in words for sym in w)
        return cls(words, images, root, positive)

    def duplicate_pairs(self) -> list[tuple[int, int]]:
        """Index pairs whose words evaluate to the same permutation."""
        seen: dict[Perm, int] = {}
        out = []
        for i, img in enumerate(self.images):
            if img in seen:
                out.append((seen[img], i))
            else:
                seen[img] = i
        return out


@dataclass(frozen=True)
class Verdict:
    passed: bool
    reason: str = ""
    first_violation: tuple | None = None
    readings_agree: bool = True


def verify_sharply_transitive(ws: WordSet, f: Factorization) -> Verdict:
    """Size n, all pairs relocatable; cross-checked against the per-pair
    unique-word reading, which must agree."""
    n = f.n
    images = ws.images
    pair_ok = True
    violation = None
    if len(ws) != n:
        return Verdict(False, f"size {len(ws)} != n = {n}")
    for i in range(n):
        for j in range(i + 1, n):
            a, b = images[i], images[j]
            if any(x == y for x, y in zip(a.images, b.images)):
                pair_ok = False
                violation = (ws.words[i], ws.words[j])
                break
        if not pair_ok:
            break
    # independent reading: every ordered vertex pair hit by exactly one word
    table_ok = True
    for u in range(n):
        hits = [img(u) for img in images]
        if len(set(hits)) != n:
            table_ok = False
            break
    agree = pair_ok == table_ok
    if not pair_ok:
        return Verdict(False, "two words agree at a vertex", violation, agree)
    return Verdict(True, "", None, agree)


# --- relocatable trees --------------------------------------------------------


@dataclass(frozen=True)
class RelocTree:
    """A prefix-closed, pairwise-relocatable word set containing the empty word."""

    words: tuple[Word, ...]
    images: tuple[Perm, ...]

    @classmethod
    def build(cls, words, f: Factorization, prefix_mode: str = "last") -> "RelocTree":
        words = tuple(tuple(w) for w in words)
        check = verify_reloc_tree(words, f, prefix_mode)
        if not check.valid:
            raise PreconditionError(f"not a relocatable tree: {check.reason}")
        return cls(words, tuple(evaluate(w, f.f1, f.f2) for w in words))

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class RelocTreeReport:
    valid: bool
    reason: str = ""


def verify_reloc_tree(
    words: tuple[Word, ...], f: Factorization, prefix_mode: str = "last"
) -> RelocTreeReport:
    """Independent post-hoc check: contains the empty word, prefix-closed,
    pairwise relocatable.  prefix_mode 'last' removes the last-applied
    (leftmost) symbol; 'first' removes the first-applied symbol instead.
    """
    wordset = set(words)
    if () not in wordset:
        return RelocTreeReport(False, "missing empty word")
    for w in words:
        if not w:
            continue
        parent = w[1:] if prefix_mode == "last" else w[:-1]
        if parent not in wordset:
            return RelocTreeReport(False, f"missing prefix of {w}")
    imgs = [evaluate(w, f.f1, f.f2) for w in words]
    for i in range(len(imgs)):
        for j in range(i + 1, len(imgs)):
            if any(x == y for x, y in zip(imgs[i].images, imgs[j].images)):
                return RelocTreeReport(
                    False, f"words {words[i]} and {words[j]} agree at a vertex"
                )
    return RelocTreeReport(True)


@dataclass(frozen=True)
class TreeSearchResult:
    size: int
    words: tuple[Word, ...]
    certificate: bool
    nodes: int
    kernel: str


def max_relocatable_tree(
    f: Factorization,
    node_cap: int = 100_000_000,
    closure_cap: int = 4000,
    force_pure: bool = False,
) -> TreeSearchResult:
    """Exact branch-and-bound over prefix-closed pairwise-relocatable word
    trees; certificate is emitted only when the search ran to exhaustion."""
    size, witness, nodes, certified, kernel = treesearch.run_search(
        f.n, f.f1.images, f.f2.images, node_cap, closure_cap, force_pure=force_pure
    )
    words: list[Word] = []
    for parent, sym in witness:
        if parent < 0:
            words.append(())
        else:
            words.append((sym,) + words[parent])
    return TreeSearchResult(size, tuple(words), certified, nodes, kernel)


# --- exact sharply transitive search -----------------------------------------


def _bfs_elements(f: Factorization, max_len: int, element_cap: int = 200_000):
    """Distinct evaluation images by word length; first word per element."""
    n = f.n
    ident = Perm.identity(n)
    f1, f2 = f.f1, f.f2
    found: dict[Perm, Word] = {ident: ()}
    frontier: list[tuple[Perm, Word]] = [(ident, ())]
    for _ in range(max_len):
        nxt = []
        for elem, w in frontier:
            for sym, g in ((1, f1), (2, f2)):
                ne = compose(g, elem)
                if ne not in found:
                    found[ne] = (sym,) + w
                    nxt.append((ne, (sym,) + w))
                    if len(found) >= element_cap:
                        return found
        frontier = nxt
        if not frontier:
            break
    return found


def search_sharply_transitive(
    f: Factorization,
    root: int,
    required: tuple[Word, ...] = ((),),
    max_len: int | None = None,
    element_cap: int = 200_000,
) -> WordSet | None:
    """Exact backtracking search for a sharply transitive word set containing
    the required words; None when the bounded word universe admits none."""
    n = f.n
    if max_len is None:
        max_len = 4 * n
    universe = _bfs_elements(f, max_len, element_cap)
    req_imgs = [evaluate(w, f.f1, f.f2) for w in required]
    if len({img(root) for img in req_imgs}) != len(required):
        raise PreconditionError("required words collide at the root")
    chosen: list[tuple[Word, Perm]] = list(zip(required, req_imgs))
    for i in range(len(chosen)):
        for j in range(i + 1, len(chosen)):
            a, b = chosen[i][1], chosen[j][1]
            if any(p == q for p, q in zip(a.images, b.images)):
                return None

    by_root_image: dict[int, list[tuple[Perm, Word]]] = {v: [] for v in range(n)}
    for elem, w in universe.items():
        by_root_image[elem(root)].append((elem, w))
    for v in by_root_image:
        by_root_image[v].sort(key=lambda ew: (len(ew[1]), ew[1]))

    taken_roots = {img(root) for img in req_imgs}
    vertices = sorted(
        (v for v in range(n) if v not in taken_roots),
        key=lambda v: len(by_root_image[v]),
    )

    def compatible(elem: Perm, members: list[tuple[Word, Perm]]) -> bool:
        return all(
            not any(x == y for x, y in zip(elem.images, mb.images)) for _, mb in members
        )

    def backtrack(k: int, members: list[tuple[Word, Perm]]):
        if k == len(vertices):
            return members
        v = vertices[k]
        for elem, w in by_root_image[v]:
            if compatible(elem, members):
                members.append((w, elem))
                res = backtrack(k + 1, members)
                if res is not None:
                    return res
                members.pop()
        return None

    result = backtrack(0, chosen)
    if result is None:
        return None
    words = tuple(w for w, _ in result)
    images = tuple(e for _, e in result)
    return WordSet(words, images, root, all(sym > 0 for w in words for sym in w))


# --- phase-corrected addressing ----------------------------------------------

X_WORD: Word = (-2, 1)  # F2^{-1} after F1


def _top_action(f: Factorization, ps: PositionSystem, g: Perm) -> Perm | None:
    """Induced permutation of x-cycle indices, or None when g splits a cycle."""
    images = []
    for cyc in ps.cycle_list:
        targets = {ps.cycle_of(g(v)) if g(v) in ps._cycle_of else None for v in cyc}
        if len(targets) != 1 or None in targets:
            return None
        images.append(targets.pop())
    seen = set(images)
    if len(seen) != ps.r:
        return None
    return Perm(images)


def phase_addressing(
    f: Factorization, ps: PositionSystem, pp: PhaseProfile
) -> WordSet:
    """Addressing words u_i x^(j - sigma(i)) evaluating bijectively at the root.

    Preconditions: the top action on the x-cycles exists and is transitive,
    and the phases generate all of Z_m.
    """
    import math

    m, r = ps.m, ps.r
    top1 = _top_action(f, ps, f.f1)
    top2 = _top_action(f, ps, f.f2)
    if top1 is None or top2 is None:
        which = "F1" if top1 is None else "F2"
        raise PreconditionError(
            f"top action undefined: {which} does not permute the x-cycles"
        )
    if m > 1 and math.gcd(m, *pp.delta) != 1:
        raise PreconditionError(
            f"phases {pp.delta} generate a proper subgroup of Z_{m}"
        )
    # transversal words over the top action, breadth-first from cycle 0
    u_words: dict[int, Word] = {0: ()}
    u_elems: dict[int, Perm] = {0: Perm.identity(f.n)}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for sym, g, tg in ((1, f.f1, top1), (2, f.f2, top2)):
            j = tg(i)
            if j not in u_words:
                u_words[j] = (sym,) + u_words[i]
                u_elems[j] = compose(g, u_elems[i])
                queue.append(j)
    if len(u_words) != r:
        raise PreconditionError(
            f"top action is not transitive: reached {len(u_words)} of {r} cycles"
        )
    # net phase shifts, verified uniform along cycle 0
    root_cycle = ps.cycle_list[0]
    sigma = {}
    for i in range(r):
        e = u_elems[i]
        shift = (ps.position_of(e(root_cycle[0])) - 0) % m
        for j in range(1, m):
            sj = (ps.position_of(e(root_cycle[j])) - j) % m
            if sj != shift:
                raise PreconditionError(
                    f"transversal word for cycle {i} has non-uniform shift "
                    f"({shift} at position 0, {sj} at position {j})"
                )
        sigma[i] = shift
    x = f.x()
    root = root_cycle[0]
    words: list[Word] = []
    images: list[Perm] = []
    for i in range(r):
        for j in range(m):
            e = (j - sigma[i]) % m
            words.append(u_words[i] + X_WORD * e)
            images.append(compose(u_elems[i], x.power(e)))
    hits = {img(root) for img in images}
    if len(hits) != f.n:
        raise PreconditionError("addressing family is not bijective at the root")
    return WordSet(tuple(words), tuple(images), root, positive_only=False)


def splice_generators(s0: WordSet, f: Factorization) -> WordSet:
    """Replace the three words hitting v0, F1(v0), F2(v0) by the empty word
    and the two single-factor words; bijectivity at the root is preserved."""
    if s0.root is None:
        raise PreconditionError("word set has no distinguished root")
    root = s0.root
    targets = (root, f.f1(root), f.f2(root))
    if len(set(targets)) != 3:
        raise PreconditionError("root and its two out-neighbors are not distinct")
    replacements = {targets[0]: (), targets[1]: (1,), targets[2]: (2,)}
    new_words = []
    new_images = []
    for w, img in zip(s0.words, s0.images):
        hit = img(root)
        if hit in replacements:
            nw = replacements[hit]
            new_words.append(nw)
            new_images.append(evaluate(nw, f.f1, f.f2))
        else:
            new_words.append(w)
            new_images.append(img)
    return WordSet(
        tuple(new_words),
        tuple(new_images),
        root,
        all(sym > 0 for w in new_words for sym in w),
    )

"""Pure-Python branch-and-bound kernel for the maximum relocatable tree.

Search states are element sets (evaluation images), grown one frontier
element at a time; branching is include-first on the oldest frontier entry.
The bound at a node is the member count plus, minimized over vertices, the
number of distinct images that elements reachable through still-admissible
elements can take at that vertex.  Witnesses are returned as (parent, symbol)
pairs indexing the member list, so callers can rebuild the tree words.

The compiled kernel in _treekernel.pyx implements the identical traversal;
the two must stay behaviourally in lockstep.
"""
from __future__ import annotations


def run(n, f1_images, f2_images, node_cap, closure_cap):
    """Return (best_size, witness, nodes, certified).

    witness is a list of (parent_index, symbol) in member order; the root has
    parent -1.
    """
    if n > 255:
        raise ValueError("kernel supports up to 255 points")
    tables = (
        bytes(f1_images) + bytes(range(n, 256)),
        bytes(f2_images) + bytes(range(n, 256)),
    )
    identity = bytes(range(n))

    members: list[bytes] = [identity]
    member_set = {identity}
    prov: list[tuple[int, int]] = [(-1, 0)]
    excluded: set[bytes] = set()

    best_size = 1
    best_witness = list(prov)
    nodes = 0
    aborted = False

    def conflicts(a: bytes, b: bytes) -> bool:
        return any(x == y for x, y in zip(a, b))

    def closure_bound(frontier) -> int:
        """Upper bound on how many more members this branch can gain."""
        seen = set()
        queue = [entry[0] for entry in frontier]
        img_bits = [0] * n
        qi = 0
        while qi < len(queue):
            e = queue[qi]
            qi += 1
            if e in seen:
                continue
            seen.add(e)
            if len(seen) > closure_cap:
                return n
            for v in range(n):
                img_bits[v] |= 1 << e[v]
            for table in tables:
                ne = e.translate(table)
                if ne in seen or ne in excluded:
                    continue
                if any(conflicts(ne, m) for m in members):
                    continue
                queue.append(ne)
        return min(bits.bit_count() for bits in img_bits)

    def rec(frontier) -> None:
        nonlocal best_size, best_witness, nodes, aborted
        nodes += 1
        if nodes > node_cap:
            aborted = True
            return
        if not frontier:
            return
        if len(members) + closure_bound(frontier) <= best_size:
            return
        elem, parent, sym = frontier[0]

        # include
        members.append(elem)
        member_set.add(elem)
        prov.append((parent, sym))
        my_index = len(members) - 1
        new_frontier = [f for f in frontier[1:] if not conflicts(f[0], elem)]
        for s, table in ((1, tables[0]), (2, tables[1])):
            ne = elem.translate(table)
            if ne in excluded or ne in member_set:
                continue
            if any(ne == f[0] for f in new_frontier):
                continue
            if any(conflicts(ne, m) for m in members):
                continue
            new_frontier.append((ne, my_index, s))
        if len(members) > best_size:
            best_size = len(members)
            best_witness = list(prov)
        rec(new_frontier)
        members.pop()
        member_set.discard(elem)
        prov.pop()
        if aborted:
            return

        # exclude
        excluded.add(elem)
        rec(frontier[1:])
        excluded.discard(elem)

    frontier0 = []
    for s, table in ((1, tables[0]), (2, tables[1])):
        ne = identity.translate(table)
        if not conflicts(ne, identity) and all(ne != f[0] for f in frontier0):
            frontier0.append((ne, 0, s))
    rec(frontier0)
    return best_size, best_witness[:best_size], nodes, not aborted

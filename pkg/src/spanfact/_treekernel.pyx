# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled branch-and-bound kernel for the maximum relocatable tree.

Behavioural twin of _treekernel_py.run: identical traversal order, bound,
and witness encoding.  The hot operations (composition by table lookup,
pointwise conflict tests, closure image accumulation) run as C loops over
raw byte buffers; set/list bookkeeping stays in Python objects since state
sizes are tiny compared to the number of inner-loop operations.
"""

from cpython.bytes cimport PyBytes_AS_STRING


cdef inline bint _conflicts(bytes a, bytes b, Py_ssize_t n):
    cdef const unsigned char* pa = <const unsigned char*> PyBytes_AS_STRING(a)
    cdef const unsigned char* pb = <const unsigned char*> PyBytes_AS_STRING(b)
    cdef Py_ssize_t i
    for i in range(n):
        if pa[i] == pb[i]:
            return True
    return False


cdef bytes _translate(bytes e, bytes table, Py_ssize_t n):
    cdef const unsigned char* src = <const unsigned char*> PyBytes_AS_STRING(e)
    cdef const unsigned char* tab = <const unsigned char*> PyBytes_AS_STRING(table)
    cdef bytearray out = bytearray(n)
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = tab[src[i]]
    return bytes(out)


cdef class _Search:
    cdef Py_ssize_t n
    cdef bytes t1, t2
    cdef list members, prov, best_witness
    cdef set member_set, excluded
    cdef long long nodes, node_cap, closure_cap
    cdef int best_size
    cdef bint aborted

    def __init__(self, n, f1_images, f2_images, node_cap, closure_cap):
        self.n = n
        self.t1 = bytes(f1_images) + bytes(range(n, 256))
        self.t2 = bytes(f2_images) + bytes(range(n, 256))
        identity = bytes(range(n))
        self.members = [identity]
        self.member_set = {identity}
        self.prov = [(-1, 0)]
        self.excluded = set()
        self.best_size = 1
        self.best_witness = list(self.prov)
        self.nodes = 0
        self.node_cap = node_cap
        self.closure_cap = closure_cap
        self.aborted = False

    cdef bint _conflicts_any_member(self, bytes e):
        cdef bytes m
        for m in self.members:
            if _conflicts(e, m, self.n):
                return True
        return False

    cdef int _closure_bound(self, list frontier):
        cdef set seen = set()
        cdef list queue = [entry[0] for entry in frontier]
        cdef list img_bits = [0] * self.n
        cdef Py_ssize_t qi = 0, v
        cdef bytes e, ne
        cdef const unsigned char* ep
        cdef int table_id
        while qi < len(queue):
            e = queue[qi]
            qi += 1
            if e in seen:
                continue
            seen.add(e)
            if len(seen) > self.closure_cap:
                return self.n
            ep = <const unsigned char*> PyBytes_AS_STRING(e)
            for v in range(self.n):
                img_bits[v] = img_bits[v] | (1 << ep[v])
            for table_id in range(2):
                ne = _translate(e, self.t1 if table_id == 0 else self.t2, self.n)
                if ne in seen or ne in self.excluded:
                    continue
                if self._conflicts_any_member(ne):
                    continue
                queue.append(ne)
        best = None
        for v in range(self.n):
            count = (<object> img_bits[v]).bit_count()
            if best is None or count < best:
                best = count
        return best

    cdef void _rec(self, list frontier):
        self.nodes += 1
        if self.nodes > self.node_cap:
            self.aborted = True
            return
        if not frontier:
            return
        if len(self.members) + self._closure_bound(frontier) <= self.best_size:
            return
        elem, parent, sym = frontier[0]
        cdef bytes e = <bytes> elem

        # include
        self.members.append(e)
        self.member_set.add(e)
        self.prov.append((parent, sym))
        my_index = len(self.members) - 1
        cdef list new_frontier = []
        cdef bytes fe
        for entry in frontier[1:]:
            fe = entry[0]
            if not _conflicts(fe, e, self.n):
                new_frontier.append(entry)
        cdef bytes ne
        cdef int s
        cdef bint dup
        for s in (1, 2):
            ne = _translate(e, self.t1 if s == 1 else self.t2, self.n)
            if ne in self.excluded or ne in self.member_set:
                continue
            dup = False
            for entry in new_frontier:
                if entry[0] == ne:
                    dup = True
                    break
            if dup:
                continue
            if self._conflicts_any_member(ne):
                continue
            new_frontier.append((ne, my_index, s))
        if len(self.members) > self.best_size:
            self.best_size = len(self.members)
            self.best_witness = list(self.prov)
        self._rec(new_frontier)
        self.members.pop()
        self.member_set.discard(e)
        self.prov.pop()
        if self.aborted:
            return

        # exclude
        self.excluded.add(e)
        self._rec(frontier[1:])
        self.excluded.discard(e)

    def run(self):
        cdef bytes identity = bytes(range(self.n))
        cdef list frontier0 = []
        cdef bytes child
        cdef int s
        cdef bint dup
        for s in (1, 2):
            child = _translate(identity, self.t1 if s == 1 else self.t2, self.n)
            if not _conflicts(child, identity, self.n):
                dup = False
                for entry in frontier0:
                    if entry[0] == child:
                        dup = True
                        break
                if not dup:
                    frontier0.append((child, 0, s))
        self._rec(frontier0)
        return (
            self.best_size,
            self.best_witness[: self.best_size],
            self.nodes,
            not self.aborted,
        )


def run(n, f1_images, f2_images, node_cap, closure_cap):
    """Return (best_size, witness, nodes, certified); see the Python twin."""
    if n > 255:
        raise ValueError("kernel supports up to 255 points")
    return _Search(n, f1_images, f2_images, node_cap, closure_cap).run()

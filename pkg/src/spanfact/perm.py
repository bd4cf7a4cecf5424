"""Exact permutation algebra on {0..n-1} and word evaluation.

Conventions fixed project-wide:

* A permutation is stored as its image array: ``images[v]`` is the image
  of point ``v``.
* The product ``g * f`` applies ``f`` first: ``(g * f)(v) = g(f(v))``.
* A word is a tuple of factor symbols drawn from ``1, 2`` (and ``-1, -2``
  for inverse factors), stored in composition order: the *rightmost*
  symbol is applied first, so ``(2, 1)`` means "F2 after F1".
"""
from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence

from .errors import SizeMismatchError

Word = tuple[int, ...]

EMPTY_WORD: Word = ()


class Perm:
    """An immutable bijection on {0..n-1}."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int], check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation image array: {images!r}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n), check=False)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        images = list(range(n))
        touched = set()
        for cycle in cycles:
            for i, v in enumerate(cycle):
                if not (0 <= v < n):
                    raise ValueError(f"point {v} out of range for degree {n}")
                if v in touched:
                    raise ValueError(f"point {v} appears in two cycles")
                touched.add(v)
                images[v] = cycle[(i + 1) % len(cycle)]
        return cls(images, check=False)

    def __call__(self, v: int) -> int:
        return self.images[v]

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Perm({list(self.images)})"

    def __str__(self) -> str:
        return cycle_string(self)

    def is_identity(self) -> bool:
        return all(img == v for v, img in enumerate(self.images))

    def inverse(self) -> "Perm":
        out = [0] * self.n
        for v, img in enumerate(self.images):
            out[img] = v
        return Perm(out, check=False)

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles, each starting at its minimum point, sorted by minimum."""
        n = self.n
        seen = [False] * n
        out = []
        for start in range(n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            v = self.images[start]
            while v != start:
                cyc.append(v)
                seen[v] = True
                v = self.images[v]
            out.append(tuple(cyc))
        return tuple(out)

    def cycle_type(self) -> tuple[int, ...]:
        """Multiset of cycle lengths, ascending."""
        return tuple(sorted(len(c) for c in self.cycles()))

    def is_derangement(self) -> bool:
        return all(img != v for v, img in enumerate(self.images))

    def power(self, k: int) -> "Perm":
        out = [0] * self.n
        for cyc in self.cycles():
            L = len(cyc)
            for i, v in enumerate(cyc):
                out[v] = cyc[(i + k) % L]
        return Perm(out, check=False)


def compose(g: Perm, f: Perm) -> Perm:
    """Product gf: applies f first, then g."""
    if g.n != f.n:
        raise SizeMismatchError(f"degree mismatch: {g.n} != {f.n}")
    gi = g.images
    return Perm(tuple(gi[v] for v in f.images), check=False)


def inverse(p: Perm) -> Perm:
    return p.inverse()


def cycle_type(p: Perm) -> tuple[int, ...]:
    return p.cycle_type()


def orbits(p: Perm) -> tuple[tuple[int, ...], ...]:
    return p.cycles()


def is_derangement(p: Perm) -> bool:
    return p.is_derangement()


def agree_somewhere(a: Perm, b: Perm) -> bool:
    """True iff a(v) = b(v) for some point v."""
    return any(x == y for x, y in zip(a.images, b.images))


def evaluate(word: Word, f1: Perm, f2: Perm) -> Perm:
    """Evaluate a word over factor symbols; symbols apply right to left."""
    if f1.n != f2.n:
        raise SizeMismatchError(f"degree mismatch: {f1.n} != {f2.n}")
    lookup = {}
    acc = Perm.identity(f1.n)
    for sym in reversed(word):
        if sym not in lookup:
            if sym == 1:
                lookup[sym] = f1
            elif sym == 2:
                lookup[sym] = f2
            elif sym == -1:
                lookup[sym] = f1.inverse()
            elif sym == -2:
                lookup[sym] = f2.inverse()
            else:
                raise ValueError(f"bad word symbol {sym!r}")
        acc = compose(lookup[sym], acc)
    return acc


def word_str(word: Word) -> str:
    """Render a word in application order; inverse symbols get a trailing apostrophe.

    ``(2, 1)`` (F2 after F1) renders as ``"12"``; the empty word renders as ``"-"``.
    """
    if not word:
        return "-"
    parts = []
    for sym in reversed(word):
        parts.append(f"{abs(sym)}'" if sym < 0 else str(sym))
    return "".join(parts)


def parse_word(text: str) -> Word:
    """Inverse of word_str."""
    text = text.strip()
    if text in ("", "-"):
        return ()
    syms = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch not in "12":
            raise ValueError(f"bad word character {ch!r} in {text!r}")
        sym = int(ch)
        if i + 1 < len(text) and text[i + 1] == "'":
            sym = -sym
            i += 1
        syms.append(sym)
        i += 1
    return tuple(reversed(syms))


def word_concat(u: Word, v: Word) -> Word:
    """Concatenation with u applied after v (matching compose(eval(u), eval(v)))."""
    return u + v


# --- text forms -------------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")
_ONELINE_RE = re.compile(r"^\[([^\[\]]*)\]$")


def cycle_string(p: Perm) -> str:
    """Cycle-notation text form; fixed points omitted; identity is '()'."""
    parts = [
        "(" + " ".join(str(v) for v in cyc) + ")"
        for cyc in p.cycles()
        if len(cyc) > 1
    ]
    return "".join(parts) if parts else "()"


def oneline_string(p: Perm) -> str:
    return "[" + ",".join(str(v) for v in p.images) + "]"


def parse_perm(text: str, n: int | None = None) -> Perm:
    """Parse cycle notation like '(0 2)(1 3)' or one-line form '[2,3,0,1]'.

    For cycle notation the degree is max point + 1 unless n is given.
    """
    text = text.strip()
    m = _ONELINE_RE.match(text)
    if m:
        body = m.group(1).strip()
        images = [int(tok) for tok in body.split(",")] if body else []
        if n is not None and len(images) != n:
            raise ValueError(f"one-line form has {len(images)} points, expected {n}")
        return Perm(images)
    if text == "()":
        return Perm.identity(n if n is not None else 0)
    rest = _CYCLE_RE.sub("", text)
    if rest.strip():
        raise ValueError(f"unparsable permutation text {text!r}: leftover {rest.strip()!r}")
    cycles = []
    for m in _CYCLE_RE.finditer(text):
        body = m.group(1).replace(",", " ").split()
        if not body:
            continue
        cycles.append([int(tok) for tok in body])
    points = [v for cyc in cycles for v in cyc]
    degree = (max(points) + 1) if points else 0
    if n is not None:
        if points and max(points) >= n:
            raise ValueError(f"point {max(points)} out of range for degree {n}")
        degree = n
    return Perm.from_cycles(degree, cycles)


def iter_words(max_len: int, alphabet: Sequence[int] = (1, 2)) -> Iterator[Word]:
    """All words up to max_len, by length then lexicographically, empty word first."""
    frontier: list[Word] = [()]
    yield ()
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for sym in alphabet:
                child = (sym,) + w
                nxt.append(child)
                yield child
        frontier = nxt

"""Single Temperley-Lieb diagrams as noncrossing perfect matchings.

An (m, n)-diagram has m points on its left side and n on its right side.  The
boundary is read as one circle: left points top to bottom are 0..m-1, then the
right points bottom to top are m..m+n-1.  A diagram is the partner involution
on these m+n points; noncrossing means no two chords interleave in that
circular order.  The left side is the target and the right side the source,
so ``compose(a, b)`` glues the right side of ``a`` to the left side of ``b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "PlanarPairing",
    "enumerate_diagrams",
    "compose",
    "tensor_stack",
    "reflect",
    "markov_close",
    "generator",
    "generators",
    "identity",
    "cup",
    "cap",
    "catalan",
    "parse_diagram",
]


@dataclass(frozen=True, slots=True)
class PlanarPairing:
    left: int
    right: int
    partner: tuple[int, ...]

    def __post_init__(self):
        size = self.left + self.right
        if len(self.partner) != size:
            raise ValueError("partner map has wrong length")
        for a, b in enumerate(self.partner):
            if not 0 <= b < size or b == a or self.partner[b] != a:
                raise ValueError(f"not a fixed-point-free involution: {self.partner}")
        stack: list[int] = []
        for a, b in enumerate(self.partner):
            if a < b:
                stack.append(b)
            elif stack.pop() != a:
                raise ValueError(f"chords cross: {self.partner}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.left, self.right

    # boundary helpers: "top index" counts from the top on either side
    def left_point(self, i: int) -> int:
        return i

    def right_point(self, j: int) -> int:
        return self.left + self.right - 1 - j

    def chords(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in enumerate(self.partner) if a < b]

    def through_strands(self) -> int:
        m = self.left
        return sum(1 for a in range(m) if self.partner[a] >= m)

    def has_right_cap(self) -> bool:
        """True if some chord joins two right-side points."""
        m = self.left
        return any(a >= m and b >= m for a, b in self.chords())

    def has_left_cap(self) -> bool:
        m = self.left
        return any(a < m and b < m for a, b in self.chords())

    def encode(self) -> str:
        body = ",".join(f"{a + 1}-{b + 1}" for a, b in self.chords())
        return f"{self.left},{self.right}:[{body}]"

    def __str__(self) -> str:
        return self.encode()

    def __repr__(self) -> str:
        return f"PlanarPairing({self.encode()!r})"


_ENCODING = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*:\s*\[(.*)\]\s*$")


def parse_diagram(text: str) -> PlanarPairing:
    """Inverse of :meth:`PlanarPairing.encode`."""
    match = _ENCODING.match(text)
    if not match:
        raise ValueError(f"bad diagram encoding: {text!r}")
    m, n = int(match.group(1)), int(match.group(2))
    partner = [-1] * (m + n)
    body = match.group(3).strip()
    if body:
        for chord in body.split(","):
            a, b = (int(t) - 1 for t in chord.split("-"))
            partner[a], partner[b] = b, a
    if -1 in partner:
        raise ValueError(f"unmatched boundary point in {text!r}")
    return PlanarPairing(m, n, tuple(partner))


def catalan(n: int) -> int:
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


@lru_cache(maxsize=None)
def _matchings(size: int) -> tuple[tuple[int, ...], ...]:
    """All noncrossing perfect matchings of points 0..size-1 (size even)."""
    if size == 0:
        return ((),)
    out = []
    for t in range(1, size, 2):
        for inner in _matchings(t - 1):
            for outer in _matchings(size - t - 1):
                partner = [0] * size
                partner[0], partner[t] = t, 0
                for a, b in enumerate(inner):
                    partner[a + 1] = b + 1
                for a, b in enumerate(outer):
                    partner[a + t + 1] = b + t + 1
                out.append(tuple(partner))
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_diagrams(m: int, n: int) -> tuple[PlanarPairing, ...]:
    """Every (m, n)-diagram; empty when m + n is odd."""
    if m < 0 or n < 0:
        raise ValueError("point counts must be nonnegative")
    if (m + n) % 2:
        return ()
    return tuple(PlanarPairing(m, n, p) for p in _matchings(m + n))


def _find(parent: list[int], x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def _union(parent: list[int], a: int, b: int) -> None:
    ra, rb = _find(parent, a), _find(parent, b)
    if ra != rb:
        parent[ra] = rb


@lru_cache(maxsize=1 << 20)
def compose(a: PlanarPairing, b: PlanarPairing) -> tuple[int, PlanarPairing]:
    """Glue ``a`` (m, n) to ``b`` (n, p); return (closed loops, resulting (m, p)-diagram)."""
    m, n = a.shape
    if b.left != n:
        raise ValueError(f"cannot compose {a.shape} with {b.shape}")
    p = b.right
    # nodes: a-left 0..m-1, interface m..m+n-1 (top index), b-right m+n..m+n+p-1
    size = m + n + p
    parent = list(range(size))

    def a_node(x: int) -> int:
        return x if x < m else m + (n - 1 - (x - m))

    def b_node(x: int) -> int:
        return m + x if x < n else m + n + (p - 1 - (x - n))

    for x, y in enumerate(a.partner):
        if x < y:
            _union(parent, a_node(x), a_node(y))
    for x, y in enumerate(b.partner):
        if x < y:
            _union(parent, b_node(x), b_node(y))

    outer: dict[int, list[int]] = {}
    for i in range(m):
        outer.setdefault(_find(parent, i), []).append(i)
    for t in range(p):
        outer.setdefault(_find(parent, m + n + t), []).append(m + (p - 1 - t))
    loop_roots = {_find(parent, m + j) for j in range(n)} - outer.keys()

    partner = [0] * (m + p)
    for ends in outer.values():
        x, y = ends
        partner[x], partner[y] = y, x
    return len(loop_roots), PlanarPairing(m, p, tuple(partner))


@lru_cache(maxsize=1 << 16)
def tensor_stack(a: PlanarPairing, b: PlanarPairing) -> PlanarPairing:
    """Place ``a`` above ``b``."""
    ma, na = a.shape
    mb, nb = b.shape
    m, n = ma + mb, na + nb

    def place(x: int, left_off: int, right_off: int, dm: int, dn: int) -> int:
        if x < dm:
            return left_off + x
        top = dn - 1 - (x - dm)
        return m + (n - 1 - (right_off + top))

    partner = [0] * (m + n)
    for x, y in enumerate(a.partner):
        partner[place(x, 0, 0, ma, na)] = place(y, 0, 0, ma, na)
    for x, y in enumerate(b.partner):
        partner[place(x, ma, na, mb, nb)] = place(y, ma, na, mb, nb)
    return PlanarPairing(m, n, tuple(partner))


@lru_cache(maxsize=1 << 16)
def reflect(a: PlanarPairing) -> PlanarPairing:
    """Mirror about a vertical axis: an (m, n)-diagram becomes an (n, m)-diagram."""
    m, n = a.shape

    def old_to_new(x: int) -> int:
        if x < m:  # old left top index x -> new right top index x
            return n + (m - 1 - x)
        top = n - 1 - (x - m)  # old right top index -> new left
        return top

    partner = [0] * (m + n)
    for x, y in enumerate(a.partner):
        partner[old_to_new(x)] = old_to_new(y)
    return PlanarPairing(n, m, tuple(partner))


@lru_cache(maxsize=1 << 16)
def markov_close(a: PlanarPairing) -> int:
    """Loops formed by joining right point i to left point i around the outside."""
    m, n = a.shape
    if m != n:
        raise ValueError(f"trace closure needs a square diagram, got {a.shape}")
    parent = list(range(n))
    for x, y in enumerate(a.partner):
        if x < y:
            u = x if x < n else n - 1 - (x - n)
            v = y if y < n else n - 1 - (y - n)
            _union(parent, u, v)
    return len({_find(parent, i) for i in range(n)})


@lru_cache(maxsize=None)
def identity(n: int) -> PlanarPairing:
    partner = [0] * (2 * n)
    for i in range(n):
        j = 2 * n - 1 - i
        partner[i], partner[j] = j, i
    return PlanarPairing(n, n, tuple(partner))


@lru_cache(maxsize=None)
def generator(n: int, i: int) -> PlanarPairing:
    """E_i in TL_n (1 <= i <= n-1): cup on left points i,i+1 and cap on right points i,i+1."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for n={n}")
    partner = list(identity(n).partner)
    a, b = i - 1, i  # left top indices
    ra, rb = 2 * n - 1 - a, 2 * n - 1 - b
    partner[a], partner[b] = b, a
    partner[ra], partner[rb] = rb, ra
    return PlanarPairing(n, n, tuple(partner))


def cup() -> PlanarPairing:
    """The (0, 2)-diagram joining its two right points."""
    return PlanarPairing(0, 2, (1, 0))


def cap() -> PlanarPairing:
    """The (2, 0)-diagram joining its two left points."""
    return PlanarPairing(2, 0, (1, 0))


# plural spelling kept for callers that think of E_i as "the generators"
generators = generator

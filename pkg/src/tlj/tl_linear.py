"""Linear combinations of Temperley-Lieb diagrams over the cyclotomic field of a level.

Crossings are never stored.  A braid letter is expanded at once by the
Kauffman substitution, so every braid identity becomes an equality of
coefficient maps.

Crossing convention: the positive letter ``(i, +1)`` is the crossing in which
the strand entering at source (right) position i, counted from the top,
passes over and leaves at target (left) position i+1.  It expands to
``z^-1 id + z E_i``; the negative letter is its adjoint ``z id + z^-1 E_i``.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from tlj import diagrams as dg
from tlj.diagrams import PlanarPairing
from tlj.linalg import exact_rank
from tlj.scalars import Cyclotomic, Level

__all__ = [
    "tl_arith",
    "tl_trace",
    "POSITIVE_CROSSING",
    "TLMorphism",
    "braid_morphism",
    "routed_braid",
    "block_crossing",
    "jones_wenzl",
    "trace_pairing",
    "radical_contains",
    "quotient_equal",
    "gram_matrix",
    "gram_rank",
    "radical_is_trivial",
]

POSITIVE_CROSSING = "source strand i passes over to target i+1: z^-1 id + z E_i"


@lru_cache(maxsize=None)
def _delta_powers(level: Level, upto: int = 64) -> tuple[Cyclotomic, ...]:
    d = level.delta
    out = [Cyclotomic.one(level.order)]
    for _ in range(upto):
        out.append(out[-1] * d)
    return tuple(out)


def _dpow(level: Level, n: int) -> Cyclotomic:
    table = _delta_powers(level)
    if n < len(table):
        return table[n]
    return level.delta**n


class TLMorphism:
    """An element of TL_{m,n}: a map from (m, n)-diagrams to nonzero coefficients."""

    __slots__ = ("level", "left", "right", "terms")

    def __init__(
        self,
        level: Level,
        left: int,
        right: int,
        terms: Mapping[PlanarPairing, Cyclotomic] | None = None,
    ):
        self.level = level
        self.left = left
        self.right = right
        clean: dict[PlanarPairing, Cyclotomic] = {}
        order = level.order
        for d, c in (terms or {}).items():
            if d.shape != (left, right):
                raise ValueError(f"diagram {d} does not have shape {(left, right)}")
            if not isinstance(c, Cyclotomic):
                c = Cyclotomic.from_rational(order, c)
            elif c.order != order:
                c = c.embed(order)
            if c:
                clean[d] = c
        self.terms = clean

    @classmethod
    def _raw(cls, level: Level, left: int, right: int, terms: dict) -> "TLMorphism":
        obj = cls.__new__(cls)
        obj.level, obj.left, obj.right = level, left, right
        obj.terms = {d: c for d, c in terms.items() if c}
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, level: Level, left: int, right: int) -> "TLMorphism":
        return cls._raw(level, left, right, {})

    @classmethod
    def from_diagram(cls, level: Level, d: PlanarPairing, coeff=1) -> "TLMorphism":
        return cls(level, d.left, d.right, {d: coeff})

    @classmethod
    def identity(cls, level: Level, n: int) -> "TLMorphism":
        return cls.from_diagram(level, dg.identity(n))

    @classmethod
    def generator(cls, level: Level, n: int, i: int) -> "TLMorphism":
        return cls.from_diagram(level, dg.generator(n, i))

    # -- structure ----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.left, self.right

    def coefficient(self, d: PlanarPairing) -> Cyclotomic:
        return self.terms.get(d, Cyclotomic.zero(self.level.order))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TLMorphism):
            return NotImplemented
        return (
            self.level == other.level
            and self.shape == other.shape
            and self.terms == other.terms
        )

    __hash__ = None  # type: ignore[assignment]

    def _check(self, other: "TLMorphism") -> None:
        if self.level != other.level:
            raise ValueError(f"level mismatch: {self.level} vs {other.level}")

    # -- linear structure ---------------------------------------------------
    def __add__(self, other: "TLMorphism") -> "TLMorphism":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"cannot add shapes {self.shape} and {other.shape}")
        out = dict(self.terms)
        for d, c in other.terms.items():
            prev = out.get(d)
            out[d] = c if prev is None else prev + c
        return TLMorphism._raw(self.level, self.left, self.right, out)

    def __neg__(self) -> "TLMorphism":
        return TLMorphism._raw(
            self.level, self.left, self.right, {d: -c for d, c in self.terms.items()}
        )

    def __sub__(self, other: "TLMorphism") -> "TLMorphism":
        return self + (-other)

    def scale(self, s) -> "TLMorphism":
        if not isinstance(s, Cyclotomic):
            s = Cyclotomic.from_rational(self.level.order, s)
        return TLMorphism._raw(
            self.level, self.left, self.right, {d: c * s for d, c in self.terms.items()}
        )

    def __mul__(self, s) -> "TLMorphism":
        if isinstance(s, TLMorphism):
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    # -- diagram operations -------------------------------------------------
    def compose(self, other: "TLMorphism") -> "TLMorphism":
        """self after other: the right side of self is glued to the left side of other."""
        self._check(other)
        if self.right != other.left:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        level = self.level
        out: dict[PlanarPairing, Cyclotomic] = {}
        for da, ca in self.terms.items():
            for db, cb in other.terms.items():
                loops, d = dg.compose(da, db)
                c = ca * cb
                if loops:
                    c = c * _dpow(level, loops)
                prev = out.get(d)
                out[d] = c if prev is None else prev + c
        return TLMorphism._raw(level, self.left, other.right, out)

    __matmul__ = compose

    def tensor(self, other: "TLMorphism") -> "TLMorphism":
        """Stack self above other."""
        self._check(other)
        out: dict[PlanarPairing, Cyclotomic] = {}
        for da, ca in self.terms.items():
            for db, cb in other.terms.items():
                d = dg.tensor_stack(da, db)
                c = ca * cb
                prev = out.get(d)
                out[d] = c if prev is None else prev + c
        return TLMorphism._raw(
            self.level, self.left + other.left, self.right + other.right, out
        )

    def star(self) -> "TLMorphism":
        return TLMorphism._raw(
            self.level,
            self.right,
            self.left,
            {dg.reflect(d): c.conj() for d, c in self.terms.items()},
        )

    def trace(self) -> Cyclotomic:
        if self.left != self.right:
            raise ValueError(f"trace needs a square morphism, got {self.shape}")
        by_loops: dict[int, Cyclotomic] = {}
        for d, c in self.terms.items():
            n = dg.markov_close(d)
            prev = by_loops.get(n)
            by_loops[n] = c if prev is None else prev + c
        total = Cyclotomic.zero(self.level.order)
        for n, c in by_loops.items():
            total = total + c * _dpow(self.level, n)
        return total

    # -- rendering ----------------------------------------------------------
    def to_json(self) -> list[dict[str, str]]:
        items = sorted((d.encode(), c) for d, c in self.terms.items())
        return [{"diagram": text, "coeff": c.to_string()} for text, c in items]

    def __repr__(self) -> str:
        body = " + ".join(f"({c.to_string()})*[{d.encode()}]" for d, c in self.terms.items())
        return f"TLMorphism<{self.level}, {self.shape}>({body or '0'})"


# -- crossings and braids ---------------------------------------------------------


@lru_cache(maxsize=None)
def _crossing(level: Level, n: int, i: int, sign: int) -> TLMorphism:
    if not 1 <= i <= n - 1:
        raise ValueError(f"crossing position {i} out of range for {n} strands")
    if sign not in (1, -1):
        raise ValueError("crossing sign must be +1 or -1")
    z = level.z
    zi = z.conj()
    a, b = (zi, z) if sign == 1 else (z, zi)
    return TLMorphism(level, n, n, {dg.identity(n): a, dg.generator(n, i): b})


def _apply_letter(level: Level, x: TLMorphism, i: int, sign: int) -> TLMorphism:
    """crossing(i, sign) composed on the target side of x."""
    n = x.left
    return _crossing(level, n, i, sign).compose(x)


def braid_morphism(n: int, word: Iterable[tuple[int, int]], level: Level) -> TLMorphism:
    """Product of crossings, first letter nearest the target: word[0] o word[1] o ..."""
    letters = list(word)
    out = TLMorphism.identity(level, n)
    for i, sign in reversed(letters):
        out = _apply_letter(level, out, i, sign)
    return out


def routing_word(targets: Sequence[int], heights: Sequence[int]) -> list[tuple[int, int]]:
    """Braid word (source-side letter first) carrying source strand s to position targets[s].

    Strands are layered: at every crossing the strand with the larger height is on
    top.  Strands of equal height must not cross.
    """
    n = len(targets)
    if sorted(targets) != list(range(n)):
        raise ValueError(f"targets {targets} are not a permutation")
    arrangement = list(range(n))
    letters: list[tuple[int, int]] = []
    changed = True
    while changed:
        changed = False
        for p in range(n - 1):
            a, b = arrangement[p], arrangement[p + 1]
            if targets[a] > targets[b]:
                if heights[a] == heights[b]:
                    raise ValueError("strands on the same layer would cross")
                # a sits above b at the source side and moves down over or under b
                letters.append((p + 1, 1 if heights[a] > heights[b] else -1))
                arrangement[p], arrangement[p + 1] = b, a
                changed = True
    return letters


def routed_braid(level: Level, targets: Sequence[int], heights: Sequence[int]) -> TLMorphism:
    letters = routing_word(targets, heights)
    out = TLMorphism.identity(level, len(targets))
    for i, sign in letters:
        out = _apply_letter(level, out, i, sign)
    return out


@lru_cache(maxsize=None)
def block_crossing(level: Level, a: int, b: int) -> TLMorphism:
    """sigma_{pi^a, pi^b}: the top a source strands pass over the bottom b to the target bottom."""
    targets = [s + b for s in range(a)] + [s for s in range(b)]
    heights = [1] * a + [0] * b
    return routed_braid(level, targets, heights)


# -- Jones-Wenzl projections -------------------------------------------------------


@lru_cache(maxsize=None)
def jones_wenzl(n: int, level: Level) -> TLMorphism:
    """Wenzl's recursion f(n+1) = f(n)x1 - [n]/[n+1] (f(n)x1) E_n (f(n)x1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if level.k is not None and n > level.k + 1:
        raise ValueError(f"f^({n}) does not exist at {level}: [{n}] = 0")
    if n <= 1:
        return TLMorphism.identity(level, n)
    prev = jones_wenzl(n - 1, level)
    lifted = prev.tensor(TLMorphism.identity(level, 1))
    ratio = level.qint(n - 1) / level.qint(n)
    middle = lifted.compose(TLMorphism.generator(level, n, n - 1)).compose(lifted)
    return lifted - middle.scale(ratio)


# -- trace form, radical, ranks -----------------------------------------------------


@lru_cache(maxsize=1 << 20)
def pairing_loops(a: PlanarPairing, b: PlanarPairing) -> int:
    """Loops in the closure of reflect(a) o b, i.e. the exponent of delta in Tr(a* b)."""
    loops, d = dg.compose(dg.reflect(a), b)
    return loops + dg.markov_close(d)


def trace_pairing(x: TLMorphism, y: TLMorphism) -> Cyclotomic:
    """Tr(star(x) o y) without forming the product."""
    x._check(y)
    if x.shape != y.shape:
        raise ValueError(f"pairing needs equal shapes, got {x.shape} and {y.shape}")
    by_loops: dict[int, Cyclotomic] = {}
    for da, ca in x.terms.items():
        cc = ca.conj()
        for db, cb in y.terms.items():
            n = pairing_loops(da, db)
            v = cc * cb
            prev = by_loops.get(n)
            by_loops[n] = v if prev is None else prev + v
    total = Cyclotomic.zero(x.level.order)
    for n, c in by_loops.items():
        total = total + c * _dpow(x.level, n)
    return total


def radical_is_trivial(level: Level, m: int, n: int) -> bool:
    """The trace form on TL_{m,n} is nondegenerate iff (m+n)/2 <= k (always when delta = 2)."""
    return level.k is None or (m + n) // 2 <= level.k


def radical_contains(x: TLMorphism, *, use_shortcut: bool = True) -> bool:
    """x lies in the trace radical: Tr(D* x) = 0 for every basis diagram D."""
    if not x.terms:
        return True
    if use_shortcut and radical_is_trivial(x.level, x.left, x.right):
        return False
    level = x.level
    for d in dg.enumerate_diagrams(x.left, x.right):
        by_loops: dict[int, Cyclotomic] = {}
        for e, c in x.terms.items():
            n = pairing_loops(d, e)
            prev = by_loops.get(n)
            by_loops[n] = c if prev is None else prev + c
        total = Cyclotomic.zero(level.order)
        for n, c in by_loops.items():
            total = total + c * _dpow(level, n)
        if total:
            return False
    return True


def quotient_equal(x: TLMorphism, y: TLMorphism) -> bool:
    """Equality in TLJ_{m,n}: the difference lies in the trace radical."""
    if x.shape != y.shape:
        raise ValueError(f"cannot compare shapes {x.shape} and {y.shape}")
    return radical_contains(x - y)


Pairing = Callable[[TLMorphism, TLMorphism], Cyclotomic]


def gram_matrix(
    vectors: Sequence[TLMorphism], pairing: Pairing | None = None
) -> list[list[Cyclotomic]]:
    pairing = pairing or trace_pairing
    shapes = {v.shape for v in vectors}
    if len(shapes) > 1:
        raise ValueError(f"vectors have mixed shapes {sorted(shapes)}")
    n = len(vectors)
    g: list[list[Cyclotomic]] = [[None] * n for _ in range(n)]  # type: ignore[list-item]
    for i in range(n):
        for j in range(i, n):
            v = pairing(vectors[i], vectors[j])
            g[i][j] = v
            if i != j:
                g[j][i] = pairing(vectors[j], vectors[i]) if pairing is not trace_pairing else v.conj()
    return g


def gram_rank(vectors: Sequence[TLMorphism], pairing: Pairing | None = None) -> int:
    vectors = [v for v in vectors if v.terms]
    if not vectors:
        return 0
    g = gram_matrix(vectors, pairing)
    return exact_rank(g, vectors[0].level.order)


def basis_gram(level: Level, m: int, n: int) -> list[list[Cyclotomic]]:
    """Gram matrix of the diagram basis of TL_{m,n} under Tr(x* y)."""
    basis = dg.enumerate_diagrams(m, n)
    return [[_dpow(level, pairing_loops(a, b)) for b in basis] for a in basis]


def linear_combination(level: Level, m: int, n: int, pairs: Iterable[tuple[PlanarPairing, object]]) -> TLMorphism:
    acc: dict[PlanarPairing, Cyclotomic] = defaultdict(lambda: Cyclotomic.zero(level.order))
    for d, c in pairs:
        acc[d] = acc[d] + c
    return TLMorphism(level, m, n, dict(acc))


def tl_arith(op: str, *operands):
    """``compose``/``tensor``/``add`` take two morphisms, ``star`` one, ``scale`` a morphism and a scalar."""
    if op == "star":
        (x,) = operands
        return x.star()
    x, y = operands
    if op == "compose":
        return x.compose(y)
    if op == "tensor":
        return x.tensor(y)
    if op == "add":
        return x + y
    if op == "scale":
        return x.scale(y)
    raise ValueError(f"unknown operation {op!r}")


def tl_trace(x: TLMorphism) -> Cyclotomic:
    return x.trace()

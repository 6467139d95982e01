"""Finite truncations of the pattern-indexed operator algebra B.

A pattern is a finite 0/1 word (1 = filled node carrying pi, 0 = empty node)
with trailing zeros trimmed.  ``L_{x,y}(a)`` sends the summand indexed by the
right pattern y to the one indexed by the left pattern x, so its morphism
``a`` has shape (weight(x), weight(y)).  A ``BElement`` is a finite sum of such
operators keyed by (x, y).

Infinite braid families are given as recipes: each filled left node i is
routed to a right node, and the strands are layered so that every crossing
has a definite over-strand.  ``compile_recipe(D, x)`` returns the component
v(D, x), the finite braid obtained by deleting strands at empty left nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Callable, Iterable, Iterator, Mapping

import numpy as np

from tlj import diagrams as dg
from tlj.category import FusionVector, multiplicity
from tlj.linalg import exact_rank
from tlj.scalars import Cyclotomic, Level
from tlj.tl_linear import (
    TLMorphism,
    jones_wenzl,
    braid_morphism,
    radical_contains,
    routing_word,
    trace_pairing,
)

__all__ = [
    "b_arith",
    "b_trace",
    "Pattern",
    "interleave",
    "deinterleave",
    "concat",
    "all_patterns",
    "BElement",
    "p_pattern",
    "p_consecutive",
    "p_star",
    "BraidRecipe",
    "compile_recipe",
    "standard_family",
    "recipe",
    "u_recipe",
    "unm_recipe",
    "dalpha_recipe",
    "dsigma_recipe",
    "dr_recipe",
    "dl_recipe",
    "interleave_braid",
    "phi",
    "phi_n",
    "k0_class",
    "b_gram_rank",
    "bratteli",
    "BratteliData",
    "generators",
    "iter_generator_tuples",
    "component",
    "k0_family",
    "norm_spot_check",
]


class Pattern(tuple):
    """A finite 0/1 word with trailing zeros removed."""

    def __new__(cls, bits: Iterable[int] = ()):
        if isinstance(bits, str):
            bits = [int(c) for c in bits if c in "01"]
        bits = [int(b) for b in bits]
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"pattern entries must be 0 or 1, got {b}")
        while bits and bits[-1] == 0:
            bits.pop()
        return super().__new__(cls, bits)

    @property
    def weight(self) -> int:
        return sum(self)

    def bit(self, i: int) -> int:
        """Entry at 1-based node i (0 beyond the end)."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def filled(self) -> list[int]:
        """1-based positions of the filled nodes."""
        return [i + 1 for i, b in enumerate(self) if b]

    def padded(self, n: int) -> tuple[int, ...]:
        if len(self) > n:
            raise ValueError(f"pattern {self} does not fit in {n} nodes")
        return tuple(self) + (0,) * (n - len(self))

    @classmethod
    def from_filled(cls, nodes: Iterable[int]) -> "Pattern":
        nodes = list(nodes)
        if not nodes:
            return cls()
        bits = [0] * max(nodes)
        for i in nodes:
            bits[i - 1] = 1
        return cls(bits)

    @classmethod
    def consecutive(cls, n: int) -> "Pattern":
        return cls((1,) * n)

    def __str__(self) -> str:
        return "".join(map(str, self)) or "()"

    def __repr__(self) -> str:
        return f"Pattern({str(self)!r})"


def interleave(a: Pattern, b: Pattern) -> Pattern:
    """a on the odd nodes, b on the even nodes."""
    n = max(len(a), len(b))
    bits = []
    for j in range(1, n + 1):
        bits += [a.bit(j), b.bit(j)]
    return Pattern(bits)


def deinterleave(w: Pattern) -> tuple[Pattern, Pattern]:
    return Pattern(w[0::2]), Pattern(w[1::2])


def concat(x: Pattern, v: Pattern, n: int) -> Pattern:
    """x padded to n nodes followed by v."""
    return Pattern(x.padded(n) + tuple(v))


def all_patterns(max_len: int, max_filled: int | None = None) -> list[Pattern]:
    """Distinct patterns fitting in max_len nodes, ordered by length then lexicographically."""
    out = {Pattern()}
    top = max_len if max_filled is None else min(max_len, max_filled)
    for w in range(1, top + 1):
        for nodes in combinations(range(1, max_len + 1), w):
            out.add(Pattern.from_filled(nodes))
    return sorted(out, key=lambda p: (len(p), tuple(p)))


Key = tuple[Pattern, Pattern]


class BElement:
    """A finite sum of L_{x,y}(a), keyed by (x, y)."""

    __slots__ = ("level", "terms")

    def __init__(self, level: Level, terms: Mapping[Key, TLMorphism] | None = None):
        self.level = level
        clean: dict[Key, TLMorphism] = {}
        for (x, y), a in (terms or {}).items():
            x, y = Pattern(x), Pattern(y)
            if a.level != level:
                raise ValueError("morphism level does not match")
            if (x.weight - y.weight) % 2:
                raise ValueError(f"key ({x}, {y}) has mismatched parity")
            if a.shape != (x.weight, y.weight):
                raise ValueError(f"key ({x}, {y}) needs shape {(x.weight, y.weight)}, got {a.shape}")
            if a:
                prev = clean.get((x, y))
                clean[(x, y)] = a if prev is None else prev + a
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def L(cls, level: Level, x, y, a: TLMorphism) -> "BElement":
        return cls(level, {(Pattern(x), Pattern(y)): a})

    @classmethod
    def zero(cls, level: Level) -> "BElement":
        return cls(level)

    def keys(self) -> list[Key]:
        return sorted(self.terms, key=lambda k: (len(k[0]), k[0], len(k[1]), k[1]))

    def support_length(self) -> int:
        return max((max(len(x), len(y)) for x, y in self.terms), default=0)

    def _check(self, other: "BElement") -> None:
        if self.level != other.level:
            raise ValueError(f"level mismatch: {self.level} vs {other.level}")

    def __mul__(self, other):
        if not isinstance(other, BElement):
            return self.scale(other)
        self._check(other)
        by_left: dict[Pattern, list[tuple[Pattern, TLMorphism]]] = {}
        for (v, w), b in other.terms.items():
            by_left.setdefault(v, []).append((w, b))
        out: dict[Key, TLMorphism] = {}
        for (x, y), a in self.terms.items():
            for w, b in by_left.get(y, ()):
                c = a.compose(b)
                prev = out.get((x, w))
                out[(x, w)] = c if prev is None else prev + c
        return BElement(self.level, out)

    def __rmul__(self, s):
        return self.scale(s)

    def scale(self, s) -> "BElement":
        return BElement(self.level, {k: a.scale(s) for k, a in self.terms.items()})

    def __add__(self, other: "BElement") -> "BElement":
        self._check(other)
        out = dict(self.terms)
        for k, a in other.terms.items():
            out[k] = out[k] + a if k in out else a
        return BElement(self.level, out)

    def __neg__(self) -> "BElement":
        return BElement(self.level, {k: -a for k, a in self.terms.items()})

    def __sub__(self, other: "BElement") -> "BElement":
        return self + (-other)

    def star(self) -> "BElement":
        return BElement(self.level, {(y, x): a.star() for (x, y), a in self.terms.items()})

    def trace(self) -> Cyclotomic:
        total = Cyclotomic.zero(self.level.order)
        for (x, y), a in self.terms.items():
            if x == y:
                total = total + a.trace()
        return total

    def is_zero(self) -> bool:
        """Zero in the truncation: every component lies in the trace radical."""
        return all(radical_contains(a) for a in self.terms.values())

    def quotient_equal(self, other: "BElement") -> bool:
        self._check(other)
        for k in set(self.terms) | set(other.terms):
            a = self.terms.get(k)
            b = other.terms.get(k)
            if a is None:
                if not radical_contains(b):
                    return False
            elif b is None:
                if not radical_contains(a):
                    return False
            elif a != b and not radical_contains(a - b):
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, BElement):
            return NotImplemented
        return self.level == other.level and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def to_json(self) -> list[dict]:
        return [
            {"out": str(x), "in": str(y), "morphism": self.terms[(x, y)].to_json()}
            for x, y in self.keys()
        ]

    def __repr__(self) -> str:
        body = ", ".join(f"({x},{y}): {len(self.terms[(x, y)])} terms" for x, y in self.keys())
        return f"BElement<{self.level}>({body})"


def p_pattern(level: Level, x) -> BElement:
    x = Pattern(x)
    return BElement.L(level, x, x, TLMorphism.identity(level, x.weight))


def p_consecutive(level: Level, n: int) -> BElement:
    return p_pattern(level, Pattern.consecutive(n))


def p_star(level: Level) -> BElement:
    return p_pattern(level, Pattern())


# -- braid recipes ----------------------------------------------------------------


NodeMap = Callable[[int], int]


@dataclass(frozen=True, eq=False)
class BraidRecipe:
    """Routing of left nodes to right nodes through layered stages.

    ``route(i)`` is the right node of the strand starting at left node i.
    ``columns`` are ordering keys of intermediate columns between the two sides
    (left to right); ``layers[s](i)`` is the height of strand i in stage s, which
    runs from column s to column s+1.  Higher strands pass over lower ones.
    """

    name: str
    route: NodeMap
    layers: tuple[NodeMap, ...]
    columns: tuple[Callable[[int], tuple], ...] = ()
    max_node: int | None = None
    _inverse: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.layers) != len(self.columns) + 1:
            raise ValueError("need exactly one layer map per stage")

    def check_pattern(self, x: Pattern) -> None:
        if self.max_node is not None and len(x) > self.max_node:
            raise ValueError(f"pattern {x} exceeds the {self.max_node} nodes of {self.name}")

    def right_pattern(self, x: Pattern) -> Pattern:
        self.check_pattern(x)
        return Pattern.from_filled(self.route(i) for i in x.filled())

    def left_pattern(self, w: Pattern) -> Pattern | None:
        """The left pattern x with right_pattern(x) = w, or None if w is not reached."""
        nodes = []
        for r in w.filled():
            i = self._preimage(r)
            if i is None:
                return None
            nodes.append(i)
        return Pattern.from_filled(nodes)

    def _preimage(self, r: int) -> int | None:
        if r in self._inverse:
            return self._inverse[r]
        found = None
        # every family here sends left node i to a right node no smaller than i/2
        bound = 2 * r + 2 if self.max_node is None else self.max_node
        for i in range(1, bound + 1):
            if self.route(i) == r:
                found = i
                break
        self._inverse[r] = found
        return found

    def stage_words(self, x: Pattern) -> list[list[tuple[int, int]]]:
        """Braid word of each stage (source-side letter first), left stage first."""
        self.check_pattern(x)
        strands = x.filled()
        keys = [lambda i: (i,)] + [c for c in self.columns] + [lambda i: (self.route(i),)]
        words = []
        for s in range(len(self.layers)):
            target_order = sorted(strands, key=keys[s])
            source_order = sorted(strands, key=keys[s + 1])
            rank = {i: p for p, i in enumerate(target_order)}
            targets = [rank[i] for i in source_order]
            heights = [self.layers[s](i) for i in source_order]
            words.append(routing_word(targets, heights))
        return words


@lru_cache(maxsize=1 << 16)
def _compile(level: Level, recipe: BraidRecipe, x: Pattern) -> TLMorphism:
    out = TLMorphism.identity(level, x.weight)
    for word in reversed(recipe.stage_words(x)):
        out = braid_morphism(x.weight, list(reversed(word)), level).compose(out)
    return out


def component(recipe: BraidRecipe, x, level: Level) -> tuple[Pattern, TLMorphism]:
    """(right pattern, braid morphism) of v(D, x)."""
    x = Pattern(x)
    return recipe.right_pattern(x), _compile(level, recipe, x)


def compile_recipe(recipe: BraidRecipe, x, level: Level) -> BElement:
    """v(D, x) = L_{x, r(x)}(braid of the strands surviving at the filled nodes of x)."""
    x = Pattern(x)
    right, morphism = component(recipe, x, level)
    return BElement.L(level, x, right, morphism)


def _odd(i: int) -> bool:
    return i % 2 == 1


@lru_cache(maxsize=None)
def u_recipe(n: int, flip: bool = False) -> BraidRecipe:
    """U_n: left node 2j-1 comes from right node j, left 2j from right n+j; first block on top."""
    hi, lo = (0, 1) if flip else (1, 0)
    return BraidRecipe(
        f"U_{n}",
        route=lambda i: (i + 1) // 2 if _odd(i) else n + i // 2,
        layers=(lambda i: hi if _odd(i) else lo,),
        max_node=2 * n,
    )


@lru_cache(maxsize=None)
def unm_recipe(n: int, m: int) -> BraidRecipe:
    """U_{n,m}: left node i <= n comes from right node 2i-1, left n+j from right 2j."""
    return BraidRecipe(
        f"U_{n},{m}",
        route=lambda i: 2 * i - 1 if i <= n else 2 * (i - n),
        layers=(lambda i: 1 if i <= n else 0,),
        max_node=n + m,
    )


def _alpha_route(i: int) -> int:
    if _odd(i):
        return 2 * i - 1  # 4j-3 <- 2j-1
    if i % 4 == 2:
        return i + 1  # 4j-1 <- 4j-2
    return i // 2  # 2j <- 4j


@lru_cache(maxsize=None)
def dalpha_recipe(red: int = 0, green: int = 1, blue: int = 2) -> BraidRecipe:
    """Associator family: red (left 4j), green (left 4j-2) and blue (left odd) layers."""

    def height(i: int) -> int:
        if _odd(i):
            return blue
        return green if i % 4 == 2 else red

    return BraidRecipe("D^alpha", route=_alpha_route, layers=(height,))


@lru_cache(maxsize=None)
def dsigma_recipe(flip_left: bool = False, flip_right: bool = False) -> BraidRecipe:
    """Braiding family: left 2k-1 (blue) from right 2k, left 2k (red) from right 2k-1.

    In the middle column the blue strands lie above the red ones.  Blue passes
    over red between the left side and the middle, and under red afterwards.
    """
    left_blue = 0 if flip_left else 1
    right_blue = 1 if flip_right else 0
    return BraidRecipe(
        "D^sigma",
        route=lambda i: i + 1 if _odd(i) else i - 1,
        columns=(lambda i: (0, i) if _odd(i) else (1, i),),
        layers=(
            lambda i: left_blue if _odd(i) else 1 - left_blue,
            lambda i: right_blue if _odd(i) else 1 - right_blue,
        ),
    )


@lru_cache(maxsize=None)
def dr_recipe() -> BraidRecipe:
    return BraidRecipe("D^r", route=lambda i: 2 * i - 1, layers=(lambda i: 0,))


@lru_cache(maxsize=None)
def dl_recipe() -> BraidRecipe:
    return BraidRecipe("D^l", route=lambda i: 2 * i, layers=(lambda i: 0,))


_FAMILIES = {
    "Dalpha": dalpha_recipe,
    "Dsigma": dsigma_recipe,
    "Dr": dr_recipe,
    "Dell": dl_recipe,
}


def recipe(name: str) -> BraidRecipe:
    try:
        return _FAMILIES[name]()
    except KeyError:
        raise ValueError(f"unknown family {name!r}") from None


def standard_family(name: str, level: Level, x=None, n: int | None = None, m: int | None = None) -> BElement:
    """Per-pattern component of Dalpha/Dsigma/Dr/Dell at x, or the finite elements Un(n) and Unm(n, m)."""
    if name == "Un":
        if n is None:
            raise ValueError("Un needs n")
        rec = u_recipe(n)
        out = BElement.zero(level)
        for bits in product((0, 1), repeat=2 * n):
            out = out + compile_recipe(rec, Pattern(bits), level)
        return out
    if name == "Unm":
        if n is None or m is None:
            raise ValueError("Unm needs n and m")
        return compile_recipe(unm_recipe(n, m), Pattern.consecutive(n + m), level)
    if x is None:
        raise ValueError(f"{name} needs a pattern")
    return compile_recipe(recipe(name), Pattern(x), level)


# -- the interleaving homomorphism -------------------------------------------------


def interleave_braid(level: Level, a: Pattern, b: Pattern, n: int | None = None) -> TLMorphism:
    """Component of U_n at the left pattern interleave(a, b); its right pattern is concat(a, b, n)."""
    n = max(len(a), len(b)) if n is None else n
    return _compile(level, u_recipe(n), interleave(a, b))


def phi_n(a: BElement, b: BElement, n: int) -> BElement:
    """Phi_n(a x b) = U_n L_{xv, yw}(a x b) U_n^* on B_n x B_n -> B_2n."""
    a._check(b)
    if max(a.support_length(), b.support_length()) > n:
        raise ValueError(f"arguments are not supported in the first {n} nodes")
    level = a.level
    rec = u_recipe(n)
    out: dict[Key, TLMorphism] = {}
    for (x, y), s in a.terms.items():
        for (v, w), t in b.terms.items():
            left_out, left_in = interleave(x, v), interleave(y, w)
            u_out = _compile(level, rec, left_out)
            u_in = _compile(level, rec, left_in)
            c = u_out.compose(s.tensor(t)).compose(u_in.star())
            k = (left_out, left_in)
            out[k] = out[k] + c if k in out else c
    return BElement(level, out)


def phi(a: BElement, b: BElement) -> BElement:
    """Phi on the union of the tower: phi_n at the smallest n supporting both arguments."""
    return phi_n(a, b, max(a.support_length(), b.support_length()))


# -- trace-form ranks, K0 and Bratteli data ---------------------------------------


def b_gram_rank(vectors: list[BElement]) -> int:
    """Rank of the Gram matrix Tr(x* y) of a family of B-elements."""
    vectors = [v for v in vectors if v.terms]
    if not vectors:
        return 0
    level = vectors[0].level
    n = len(vectors)
    g = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            total = Cyclotomic.zero(level.order)
            for k, a in vectors[i].terms.items():
                b = vectors[j].terms.get(k)
                if b is not None:
                    total = total + trace_pairing(a, b)
            g[i][j] = total
            g[j][i] = total.conj()
    return exact_rank(g, level.order)


def k0_family(p: BElement, s: int) -> list[BElement]:
    """{p L_{x, (1^s)}(D f^(s))} over output patterns x of p and diagrams D without right caps."""
    level = p.level
    f = jones_wenzl(s, level)
    mu = Pattern.consecutive(s)
    outs = sorted({x for x, _ in p.terms}, key=lambda q: (len(q), q))
    family = []
    for x in outs:
        if (x.weight - s) % 2 or s > x.weight:
            continue
        for d in dg.enumerate_diagrams(x.weight, s):
            if d.has_right_cap():
                continue
            g = BElement.L(level, x, mu, TLMorphism.from_diagram(level, d).compose(f))
            v = p * g
            if v.terms:
                family.append(v)
    return family


def k0_class(p: BElement) -> FusionVector:
    """Class of a projection in K0(B) = Z[S]: s -> rank of the family p L(D f^(s))."""
    level = p.level
    if not p.terms:
        return FusionVector.zero(level)
    top = min(max(x.weight for x, _ in p.terms), level.max_simple)
    return FusionVector(level, tuple(b_gram_rank(k0_family(p, s)) for s in range(top + 1)))


@dataclass
class BratteliData:
    level: Level
    tower: str
    blocks: list[dict[int, int]]
    inclusions: list[list[list[int]]]

    def to_json(self) -> dict:
        return {
            "level": self.level.name,
            "tower": self.tower,
            "levels": [
                {"n": n, "blocks": {f"f{s}": size for s, size in b.items()}}
                for n, b in enumerate(self.blocks)
            ],
            "inclusions": self.inclusions,
        }

    def to_dot(self) -> str:
        lines = [f'digraph "bratteli {self.level.name}" {{', "  rankdir=TB;"]
        for n, b in enumerate(self.blocks):
            for s, size in b.items():
                if size:
                    lines.append(f'  "{s}@{n}" [label="f{s}: {size}"];')
        for n, mat in enumerate(self.inclusions):
            for s, row in enumerate(mat):
                for t, mult in enumerate(row):
                    if mult and self.blocks[n].get(s) and self.blocks[n + 1].get(t):
                        lines.append(f'  "{s}@{n}" -> "{t}@{n + 1}" [label="{mult}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        simples = sorted({s for b in self.blocks for s in b})
        head = "n  " + " ".join(f"f{s}".rjust(6) for s in simples)
        rows = [head]
        for n, b in enumerate(self.blocks):
            rows.append(f"{n:<3}" + " ".join(str(b.get(s, 0)).rjust(6) for s in simples))
        return "\n".join(rows)


def bratteli(level: Level, depth: int, tower: str = "unital") -> BratteliData:
    """Block sizes of B_n for n <= depth and the inclusion multiplicities B_n -> B_{n+1}.

    ``unital`` embeds B_n by x -> x (x) id_{1+pi}; ``padding`` is the literal
    inclusion that keeps every key and appends an empty node.
    """
    if tower not in ("unital", "padding"):
        raise ValueError(f"unknown tower {tower!r}")
    top = level.max_simple
    mult = {
        (s, j): multiplicity(s, TLMorphism.identity(level, j))
        for j in range(depth + 1)
        for s in range(min(j, top) + 1)
    }
    blocks = []
    for n in range(depth + 1):
        sizes = {}
        for s in range(min(n, top) + 1):
            sizes[s] = sum(comb(n, j) * mult.get((s, j), 0) for j in range(n + 1))
        blocks.append(sizes)
    simples = list(range(min(depth, top) + 1))
    inclusions = []
    for n in range(depth):
        if tower == "padding":
            mat = [[int(s == t) for t in simples] for s in simples]
        else:
            mat = [[_unital_edge(level, s, t) for t in simples] for s in simples]
        inclusions.append(mat)
    return BratteliData(level, tower, blocks, inclusions)


@lru_cache(maxsize=None)
def _unital_edge(level: Level, s: int, t: int) -> int:
    """Multiplicity of f^(t) in f^(s) x (f^(0) + f^(1))."""
    fs = jones_wenzl(s, level)
    total = 0
    for r in (0, 1):
        p = fs.tensor(jones_wenzl(r, level))
        if t <= s + r and (s + r - t) % 2 == 0:
            total += multiplicity(t, p)
    return total


# -- generator samples -------------------------------------------------------------


def generators(level: Level, max_len: int, max_filled: int) -> list[BElement]:
    """All L_{x,y}(D) with single diagrams D, patterns within max_len nodes and max_filled ones."""
    pats = all_patterns(max_len, max_filled)
    out = []
    for x in pats:
        for y in pats:
            for d in dg.enumerate_diagrams(x.weight, y.weight):
                out.append(BElement.L(level, x, y, TLMorphism.from_diagram(level, d)))
    return out


def iter_generator_tuples(
    level: Level, arity: int, max_len: int, max_filled: int
) -> Iterator[tuple[BElement, ...]]:
    """Tuples of generators with total filled nodes at most max_filled on each side."""
    gens = generators(level, max(1, max_len // arity), max_filled)
    for tup in product(gens, repeat=arity):
        keys = [next(iter(g.terms)) for g in tup]
        if sum(x.weight for x, _ in keys) <= max_filled and sum(y.weight for _, y in keys) <= max_filled:
            yield tup


def norm_spot_check(level: Level, x, y, a: TLMorphism) -> tuple[float, float]:
    """Float estimates of ||L_{x,y}(a)|| on H and of ||a|| in TLJ (they should agree)."""
    x, y = Pattern(x), Pattern(y)
    cpx = lambda c: complex(c)  # noqa: E731
    a_star_a = a.star().compose(a)
    n = a.right
    # ||a||^2 from the left regular representation of a*a on TL_n with the trace form
    basis = [TLMorphism.from_diagram(level, d) for d in dg.enumerate_diagrams(n, n)]
    gram = np.array([[cpx(trace_pairing(u, v)) for v in basis] for u in basis])
    act = np.array([[cpx(trace_pairing(u, a_star_a.compose(v))) for v in basis] for u in basis])
    norm_a = _generalized_top(act, gram)
    # ||L_{x,y}(a)||^2 from its action on the summands Hom(s, o(y)) of H
    best = 0.0
    for s in range(0, min(n, level.max_simple) + 1):
        if (n - s) % 2:
            continue
        f = jones_wenzl(s, level)
        vecs = [
            TLMorphism.from_diagram(level, d).compose(f)
            for d in dg.enumerate_diagrams(n, s)
            if not d.has_right_cap()
        ]
        if not vecs:
            continue
        g = np.array([[cpx(trace_pairing(u, v)) for v in vecs] for u in vecs])
        h = np.array([[cpx(trace_pairing(a.compose(u), a.compose(v))) for v in vecs] for u in vecs])
        best = max(best, _generalized_top(h, g))
    return float(np.sqrt(best)), float(np.sqrt(norm_a))


def _generalized_top(h, g) -> float:
    """Largest eigenvalue of h relative to the positive semidefinite form g on its range."""
    w, v = np.linalg.eigh((g + g.conj().T) / 2)
    keep = w > 1e-9 * max(1.0, float(np.max(np.abs(w))))
    if not keep.any():
        return 0.0
    t = v[:, keep] / np.sqrt(w[keep])
    m = t.conj().T @ h @ t
    return float(np.max(np.linalg.eigvalsh((m + m.conj().T) / 2)))


def b_arith(op: str, *operands):
    """``mul``/``add`` on two elements, ``star`` on one, ``scale`` an element by a scalar."""
    if op == "star":
        (a,) = operands
        return a.star()
    a, b = operands
    if op == "mul":
        return a * b
    if op == "add":
        return a + b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


def b_trace(b: BElement) -> Cyclotomic:
    return b.trace()

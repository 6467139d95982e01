"""The category TLJ(delta): projections as objects, matrices of TL morphisms as arrows.

Simples are the Jones-Wenzl projections f^(0..k).  Multiplicities are ranks of
Gram matrices, so every structure constant stays inside the cyclotomic field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from tlj import diagrams as dg
from tlj.scalars import Level
from tlj.tl_linear import (
    TLMorphism,
    block_crossing,
    gram_rank,
    jones_wenzl,
    quotient_equal,
    trace_pairing,
)

__all__ = [
    "cat_arith",
    "CatObject",
    "CatMorphism",
    "FusionVector",
    "FusionTable",
    "braiding_of",
    "multiplicity",
    "fusion_table",
    "validate_object",
    "ValidationReport",
    "hom_dimension",
    "hom_family",
    "k0_of_projection",
]


def _is_projection(p: TLMorphism) -> bool:
    return quotient_equal(p.compose(p), p) and quotient_equal(p.star(), p)


@dataclass(frozen=True, eq=False)
class CatObject:
    """A formal direct sum of projections P_j in TL_{n_j}."""

    summands: tuple[TLMorphism, ...]

    def __post_init__(self):
        for p in self.summands:
            if p.left != p.right:
                raise ValueError(f"summand of shape {p.shape} is not square")
        levels = {p.level for p in self.summands}
        if len(levels) > 1:
            raise ValueError("summands live at different levels")

    @classmethod
    def of(cls, *projections: TLMorphism, check: bool = True) -> "CatObject":
        for p in projections:
            if check and not _is_projection(p):
                raise ValueError(f"not a projection modulo the radical: {p!r}")
        return cls(tuple(projections))

    @classmethod
    def simple(cls, level: Level, s: int) -> "CatObject":
        return cls((jones_wenzl(s, level),))

    @classmethod
    def tensor_power(cls, level: Level, n: int) -> "CatObject":
        return cls((TLMorphism.identity(level, n),))

    @classmethod
    def unit(cls, level: Level) -> "CatObject":
        return cls.tensor_power(level, 0)

    @property
    def strand_counts(self) -> tuple[int, ...]:
        return tuple(p.left for p in self.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CatObject):
            return NotImplemented
        return self.summands == other.summands

    def dsum(self, other: "CatObject") -> "CatObject":
        return CatObject(self.summands + other.summands)

    def tensor(self, other: "CatObject") -> "CatObject":
        return CatObject(tuple(p.tensor(q) for p, q in product(self.summands, other.summands)))

    def identity(self) -> "CatMorphism":
        n = len(self.summands)
        entries = [
            [self.summands[i] if i == j else _zero_between(self.summands[i], self.summands[j]) for j in range(n)]
            for i in range(n)
        ]
        return CatMorphism(self, self, entries)


def _zero_between(target: TLMorphism, source: TLMorphism) -> TLMorphism:
    return TLMorphism.zero(target.level, target.left, source.left)


@dataclass(eq=False)
class CatMorphism:
    """entries[i][j] is a TL morphism from source summand j to target summand i."""

    source: CatObject
    target: CatObject
    entries: list[list[TLMorphism]] = field(default_factory=list)

    def __post_init__(self):
        if len(self.entries) != len(self.target):
            raise ValueError("row count must match the target summands")
        for i, row in enumerate(self.entries):
            if len(row) != len(self.source):
                raise ValueError("column count must match the source summands")
            for j, a in enumerate(row):
                want = (self.target.strand_counts[i], self.source.strand_counts[j])
                if a.shape != want:
                    raise ValueError(f"entry ({i},{j}) has shape {a.shape}, expected {want}")

    def is_well_formed(self) -> bool:
        """Every entry satisfies Q_i a_ij P_j = a_ij in the quotient."""
        for i, row in enumerate(self.entries):
            q = self.target.summands[i]
            for j, a in enumerate(row):
                p = self.source.summands[j]
                if not quotient_equal(q.compose(a).compose(p), a):
                    return False
        return True

    def compose(self, other: "CatMorphism") -> "CatMorphism":
        """self after other."""
        if self.source != other.target:
            raise ValueError("source of the left factor must equal target of the right factor")
        rows = []
        for i in range(len(self.target)):
            row = []
            for k in range(len(other.source)):
                acc = _zero_between(self.target.summands[i], other.source.summands[k])
                for j in range(len(self.source)):
                    acc = acc + self.entries[i][j].compose(other.entries[j][k])
                row.append(acc)
            rows.append(row)
        return CatMorphism(other.source, self.target, rows)

    def tensor(self, other: "CatMorphism") -> "CatMorphism":
        rows = []
        for i, k in product(range(len(self.target)), range(len(other.target))):
            rows.append(
                [
                    self.entries[i][j].tensor(other.entries[k][l])
                    for j, l in product(range(len(self.source)), range(len(other.source)))
                ]
            )
        return CatMorphism(self.source.tensor(other.source), self.target.tensor(other.target), rows)

    def star(self) -> "CatMorphism":
        rows = [
            [self.entries[i][j].star() for i in range(len(self.target))]
            for j in range(len(self.source))
        ]
        return CatMorphism(self.target, self.source, rows)

    def dsum(self, other: "CatMorphism") -> "CatMorphism":
        src = self.source.dsum(other.source)
        tgt = self.target.dsum(other.target)
        rows = []
        for i, q in enumerate(tgt.summands):
            row = []
            for j, p in enumerate(src.summands):
                a = _zero_between(q, p)
                if i < len(self.target) and j < len(self.source):
                    a = self.entries[i][j]
                elif i >= len(self.target) and j >= len(self.source):
                    a = other.entries[i - len(self.target)][j - len(self.source)]
                row.append(a)
            rows.append(row)
        return CatMorphism(src, tgt, rows)

    def quotient_equal(self, other: "CatMorphism") -> bool:
        if self.source != other.source or self.target != other.target:
            return False
        return all(
            quotient_equal(a, b)
            for ra, rb in zip(self.entries, other.entries)
            for a, b in zip(ra, rb)
        )


def braiding_of(p: TLMorphism, q: TLMorphism) -> CatMorphism:
    """sigma_{P,Q} = sigma_{pi^n, pi^m} o (P x Q), an arrow P x Q -> Q x P."""
    n, m = p.left, q.left
    pq = p.tensor(q)
    sigma = block_crossing(p.level, n, m).compose(pq)
    return CatMorphism(CatObject((pq,)), CatObject((q.tensor(p),)), [[sigma]])


# -- multiplicities and fusion ------------------------------------------------------


@dataclass(frozen=True)
class FusionVector:
    """An element of Z[S] written in the basis f^(0), f^(1), ...; trailing zeros trimmed."""

    level: Level
    mult: tuple[int, ...]

    def __post_init__(self):
        m = list(self.mult)
        while m and m[-1] == 0:
            m.pop()
        object.__setattr__(self, "mult", tuple(m))

    @classmethod
    def basis(cls, level: Level, s: int) -> "FusionVector":
        return cls(level, (0,) * s + (1,))

    @classmethod
    def zero(cls, level: Level) -> "FusionVector":
        return cls(level, ())

    def __getitem__(self, s: int) -> int:
        return self.mult[s] if 0 <= s < len(self.mult) else 0

    def __add__(self, other: "FusionVector") -> "FusionVector":
        n = max(len(self.mult), len(other.mult))
        return FusionVector(self.level, tuple(self[i] + other[i] for i in range(n)))

    def scale(self, c: int) -> "FusionVector":
        return FusionVector(self.level, tuple(c * x for x in self.mult))

    def support(self) -> list[int]:
        return [s for s, c in enumerate(self.mult) if c]

    def __str__(self) -> str:
        parts = [(f"f{s}" if c == 1 else f"{c}*f{s}") for s, c in enumerate(self.mult) if c]
        return " + ".join(parts) or "0"

    def to_json(self) -> dict[str, int]:
        return {f"f{s}": c for s, c in enumerate(self.mult) if c}


def _left_killers(p: TLMorphism) -> frozenset[int]:
    """Indices i with P o E_i = 0 exactly."""
    n = p.right
    return frozenset(
        i for i in range(1, n) if p.compose(TLMorphism.generator(p.level, n, i)).is_zero()
    )


def _adjacent_left_caps(d: dg.PlanarPairing) -> list[int]:
    return [i + 1 for i in range(d.left - 1) if d.partner[i] == i + 1]


def multiplicity_vectors(s: int, p: TLMorphism) -> list[TLMorphism]:
    """The nonzero members of {P o D o f^(s) : D an (n, s)-diagram}.

    Diagrams with a right-right chord are dropped since D o f^(s) = 0, and a left cap
    at (i, i+1) with P o E_i = 0 forces P o D = 0 because E_i o D = delta D.
    """
    level = p.level
    n = p.left
    if (n - s) % 2 or s > n:
        return []
    f = jones_wenzl(s, level)
    killers = _left_killers(p)
    is_identity = p == TLMorphism.identity(level, n)
    out = []
    for d in dg.enumerate_diagrams(n, s):
        if d.has_right_cap():
            continue
        if killers and any(i in killers for i in _adjacent_left_caps(d)):
            continue
        v = TLMorphism.from_diagram(level, d).compose(f)
        if not is_identity:
            v = p.compose(v)
        if v:
            out.append(v)
    return out


def multiplicity(s: int, p: TLMorphism | CatObject) -> int:
    """N^s(P): Gram rank of {P D f^(s)} under (x, y) -> Tr(x* y) / Tr(f^(s))."""
    if isinstance(p, CatObject):
        return sum(multiplicity(s, q) for q in p.summands)
    level = p.level
    if s < 0 or s > level.max_simple:
        raise ValueError(f"simple f^({s}) is not available at {level}")
    vectors = multiplicity_vectors(s, p)
    if not vectors:
        return 0
    norm = jones_wenzl(s, level).trace().inverse()
    return gram_rank(vectors, lambda x, y: trace_pairing(x, y) * norm)


def k0_of_projection(p: TLMorphism | CatObject) -> FusionVector:
    level = p.summands[0].level if isinstance(p, CatObject) else p.level
    n = max(p.strand_counts) if isinstance(p, CatObject) else p.left
    top = min(n, level.max_simple)
    return FusionVector(level, tuple(multiplicity(s, p) for s in range(top + 1)))


@dataclass
class FusionTable:
    level: Level
    simples: list[int]
    table: dict[tuple[int, int], FusionVector]

    def __getitem__(self, key: tuple[int, int]) -> FusionVector:
        return self.table[key]

    def product(self, a: FusionVector, b: FusionVector) -> FusionVector:
        out = FusionVector.zero(self.level)
        for s in a.support():
            for t in b.support():
                out = out + self.table[(s, t)].scale(a[s] * b[t])
        return out

    def to_json(self) -> dict:
        return {
            "level": self.level.name,
            "simples": [f"f{s}" for s in self.simples],
            "table": [[self.table[(s, t)].to_json() for t in self.simples] for s in self.simples],
        }

    def to_text(self) -> str:
        cells = [[str(self.table[(s, t)]) for t in self.simples] for s in self.simples]
        heads = [f"f{s}" for s in self.simples]
        width = max(len(c) for c in heads + [x for row in cells for x in row])
        lines = [" " * 4 + " ".join(h.ljust(width) for h in heads)]
        for s, row in zip(self.simples, cells):
            lines.append(f"f{s}".ljust(4) + " ".join(c.ljust(width) for c in row))
        return "\n".join(line.rstrip() for line in lines)


@lru_cache(maxsize=None)
def _product_multiplicities(level: Level, s: int, t: int) -> FusionVector:
    p = jones_wenzl(s, level).tensor(jones_wenzl(t, level))
    top = min(s + t, level.max_simple)
    return FusionVector(level, tuple(multiplicity(r, p) for r in range(top + 1)))


def fusion_table(level: Level, up_to_power: int | None = None) -> FusionTable:
    """Entry (s, t) is r -> N^r(f^(s) x f^(t)) for simples s, t up to the bound."""
    bound = level.max_simple if up_to_power is None else min(up_to_power, level.max_simple)
    simples = list(range(bound + 1))
    table = {}
    for s in simples:
        for t in simples:
            table[(s, t)] = _product_multiplicities(level, s, t)
    return FusionTable(level, simples, table)


@dataclass
class ValidationReport:
    valid: bool
    end_rank: int
    multiplicity_square_sum: int
    diagnostics: list[str]

    @property
    def semisimple_witness(self) -> bool:
        return self.end_rank == self.multiplicity_square_sum


def validate_object(obj: CatObject | TLMorphism) -> ValidationReport:
    if isinstance(obj, TLMorphism):
        obj = CatObject((obj,))
    diagnostics: list[str] = []
    for j, p in enumerate(obj.summands):
        if not quotient_equal(p.compose(p), p):
            diagnostics.append(f"summand {j} is not idempotent modulo the radical")
        if not quotient_equal(p.star(), p):
            diagnostics.append(f"summand {j} is not self-adjoint modulo the radical")
    end_rank = 0
    for q in obj.summands:
        for p in obj.summands:
            end_rank += hom_dimension(q, p)
    squares = 0
    if obj.summands:
        level = obj.summands[0].level
        top = min(max(obj.strand_counts), level.max_simple)
        squares = sum(multiplicity(s, obj) ** 2 for s in range(top + 1))
    return ValidationReport(not diagnostics, end_rank, squares, diagnostics)


def hom_family(q: TLMorphism, p: TLMorphism) -> list[TLMorphism]:
    """The nonzero members of {Q o D o P : D an (m, n)-diagram}."""
    level = q.level
    out = []
    for d in dg.enumerate_diagrams(q.left, p.left):
        v = q.compose(TLMorphism.from_diagram(level, d)).compose(p)
        if v:
            out.append(v)
    return out


def hom_dimension(q: TLMorphism, p: TLMorphism) -> int:
    """dim Q TLJ_{m,n} P as a Gram rank."""
    return gram_rank(hom_family(q, p))


def cat_arith(op: str, a, b=None):
    """``compose``/``tensor``/``dsum`` on two operands (objects or morphisms), ``star`` on a morphism."""
    if op == "star":
        return a.star()
    if op not in ("compose", "tensor", "dsum"):
        raise ValueError(f"unknown operation {op!r}")
    if b is None:
        raise ValueError(f"{op} needs two operands")
    return getattr(a, op)(b)

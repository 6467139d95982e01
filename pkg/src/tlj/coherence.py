"""Exact verification of the coherence identities in per-pattern form.

Infinite operators such as V = v(D^alpha) are sums of partial isometries with
pairwise orthogonal components, so each of them, and every product or
interleaving built from them, sends the summand of an input pattern w to at
most one output pattern.  An expression is therefore evaluated one input at a
time, giving ``None`` or an (output pattern, TL morphism) pair.  Two
expressions agree as operators iff they agree on every input pattern, and
this is checked exhaustively within the bounds, comparing morphisms modulo
the trace radical.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from random import Random
from typing import Callable, Iterable

from tlj.category import FusionVector, fusion_table, hom_dimension
from tlj.dilute import (
    BElement,
    BraidRecipe,
    Pattern,
    all_patterns,
    b_gram_rank,
    component,
    dalpha_recipe,
    deinterleave,
    dl_recipe,
    dr_recipe,
    dsigma_recipe,
    generators,
    interleave,
    interleave_braid,
    iter_generator_tuples,
    k0_class,
    p_consecutive,
    p_pattern,
    p_star,
    phi,
    phi_n,
    standard_family,
)
from tlj.scalars import Level
from tlj.tl_linear import TLMorphism, block_crossing, jones_wenzl, radical_contains

__all__ = [
    "CATALOG",
    "MUTATIONS",
    "Report",
    "Bounds",
    "check_identity",
    "check_all",
    "check_full_faithful",
    "check_k0_ring",
    "catalog_names",
]

Value = tuple[Pattern, TLMorphism] | None


# -- operator expressions ----------------------------------------------------------


class Expr:
    """An operator on the pattern-graded space, evaluated one input pattern at a time."""

    def apply(self, w: Pattern, level: Level) -> Value:
        raise NotImplementedError

    def inputs(self) -> set[Pattern] | None:
        """Inputs on which the operator can be nonzero, or None if unconstrained."""
        return None

    def preimage(self, out: Pattern) -> set[Pattern] | None:
        """Inputs sent to ``out``; None if this operator cannot be inverted on patterns."""
        return None

    def __matmul__(self, other: "Expr") -> "Expr":
        return Prod((self, other))


@dataclass(frozen=True, eq=False)
class Identity(Expr):
    def apply(self, w, level):
        return w, TLMorphism.identity(level, w.weight)

    def preimage(self, out):
        return {out}

    def __str__(self):
        return "1"


@dataclass(frozen=True, eq=False)
class Family(Expr):
    """v(D) = sum over left patterns x of v(D, x), mapping r(x) to x."""

    recipe: BraidRecipe
    label: str

    def apply(self, w, level):
        x = self.recipe.left_pattern(w)
        if x is None:
            return None
        return x, component(self.recipe, x, level)[1]

    def preimage(self, out):
        return {self.recipe.right_pattern(out)}

    def __str__(self):
        return self.label


@dataclass(frozen=True, eq=False)
class FamilyStar(Expr):
    recipe: BraidRecipe
    label: str

    def apply(self, w, level):
        right, morphism = component(self.recipe, w, level)
        return right, morphism.star()

    def preimage(self, out):
        x = self.recipe.left_pattern(out)
        return set() if x is None else {x}

    def __str__(self):
        return f"{self.label}*"


@dataclass(frozen=True, eq=False)
class Element(Expr):
    """A finite element of B with a single key, e.g. a generator L_{x,y}(D) or p_x."""

    element: BElement
    label: str

    def __post_init__(self):
        if len(self.element.terms) != 1:
            raise ValueError("expression elements must have exactly one key")

    @property
    def key(self):
        return next(iter(self.element.terms))

    def apply(self, w, level):
        (x, y), a = next(iter(self.element.terms.items()))
        return (x, a) if w == y else None

    def inputs(self):
        return {self.key[1]}

    def preimage(self, out):
        x, y = self.key
        return {y} if out == x else set()

    def __str__(self):
        return self.label


@dataclass(frozen=True, eq=False)
class Phi(Expr):
    """Phi(A x B): A acts on the odd nodes, B on the even nodes, conjugated by the interleaving braid."""

    a: Expr
    b: Expr

    def apply(self, w, level):
        w1, w2 = deinterleave(w)
        ra = self.a.apply(w1, level)
        if ra is None:
            return None
        rb = self.b.apply(w2, level)
        if rb is None:
            return None
        (o1, x), (o2, y) = ra, rb
        u_out = interleave_braid(level, o1, o2)
        u_in = interleave_braid(level, w1, w2)
        return interleave(o1, o2), u_out.compose(x.tensor(y)).compose(u_in.star())

    def inputs(self):
        ia, ib = self.a.inputs(), self.b.inputs()
        if ia is None or ib is None:
            return None
        return {interleave(p, q) for p in ia for q in ib}

    def preimage(self, out):
        o1, o2 = deinterleave(out)
        pa, pb = self.a.preimage(o1), self.b.preimage(o2)
        if pa is None or pb is None:
            return None
        return {interleave(p, q) for p in pa for q in pb}

    def __str__(self):
        return f"Phi({self.a} x {self.b})"


@dataclass(frozen=True, eq=False)
class Prod(Expr):
    """Product f_0 f_1 ... f_last; the rightmost factor acts first."""

    factors: tuple[Expr, ...]

    def apply(self, w, level):
        cur = w
        morphism = None
        for f in reversed(self.factors):
            r = f.apply(cur, level)
            if r is None:
                return None
            cur, m = r
            morphism = m if morphism is None else m.compose(morphism)
            if morphism.is_zero():
                return None
        return cur, morphism

    def chain(self, w, level) -> list[Pattern]:
        """Patterns met while applying the factors right to left."""
        out = [w]
        cur = w
        for f in reversed(self.factors):
            r = f.apply(cur, level)
            if r is None:
                break
            cur = r[0]
            out.append(cur)
        return out

    def inputs(self):
        last = self.factors[-1].inputs()
        if last is not None:
            return last
        if len(self.factors) == 1:
            return None
        upstream = Prod(self.factors[:-1]).inputs()
        if upstream is None:
            return None
        out: set[Pattern] = set()
        for u in upstream:
            pre = self.factors[-1].preimage(u)
            if pre is None:
                return None
            out |= pre
        return out

    def preimage(self, out):
        targets = {out}
        for f in self.factors:
            nxt: set[Pattern] = set()
            for t in targets:
                pre = f.preimage(t)
                if pre is None:
                    return None
                nxt |= pre
            targets = nxt
        return targets

    def __str__(self):
        return " ".join(str(f) for f in self.factors)


def prod(*factors: Expr) -> Expr:
    return factors[0] if len(factors) == 1 else Prod(tuple(factors))


# -- families and mutations ---------------------------------------------------------

MUTATIONS = {
    "alpha-green-under-red": "D^alpha with the green layer below the red layer",
    "sigma-left": "D^sigma with the over/under choice reversed next to the left side",
    "sigma-right": "D^sigma with the over/under choice reversed next to the right side",
}


@dataclass(frozen=True)
class Families:
    V: Family
    U: Family
    Wr: Family
    Wl: Family

    @classmethod
    def build(cls, mutation: str | None = None) -> "Families":
        alpha = dalpha_recipe()
        sigma = dsigma_recipe()
        if mutation == "alpha-green-under-red":
            alpha = dalpha_recipe(red=1, green=0, blue=2)
        elif mutation == "sigma-left":
            sigma = dsigma_recipe(flip_left=True)
        elif mutation == "sigma-right":
            sigma = dsigma_recipe(flip_right=True)
        elif mutation is not None:
            raise ValueError(f"unknown mutation {mutation!r}")
        return cls(
            Family(alpha, "V"),
            Family(sigma, "U"),
            Family(dr_recipe(), "Wr"),
            Family(dl_recipe(), "Wl"),
        )


def star(f: Family) -> FamilyStar:
    return FamilyStar(f.recipe, f.label)


# -- catalog ------------------------------------------------------------------------


MAX_LEN_LIMIT = 12
MAX_FILLED_LIMIT = 6


@dataclass(frozen=True)
class Bounds:
    max_len: int = 6
    max_filled: int = 3

    def __post_init__(self):
        if not 0 <= self.max_len <= MAX_LEN_LIMIT:
            raise ValueError(f"max_len must lie in 0..{MAX_LEN_LIMIT}, got {self.max_len}")
        if not 0 <= self.max_filled <= MAX_FILLED_LIMIT:
            raise ValueError(f"max_filled must lie in 0..{MAX_FILLED_LIMIT}, got {self.max_filled}")

    def to_json(self) -> dict:
        return {"max_len": self.max_len, "max_filled": self.max_filled}


@dataclass
class Instance:
    """One relation lhs = rhs together with the data that produced it."""

    label: str
    lhs: Expr
    rhs: Expr
    data: tuple[str, ...] = ()


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    formula: str
    build: Callable[[Level, Bounds, Families], Iterable[Instance]]
    families: tuple[str, ...]


def _gen_label(g: BElement) -> str:
    (x, y), a = next(iter(g.terms.items()))
    (d,) = a.terms
    return f"L[{x},{y}]({d.encode()})"


def _gens(level: Level, bounds: Bounds, arity: int):
    for tup in iter_generator_tuples(level, arity, bounds.max_len, bounds.max_filled):
        yield tup, tuple(_gen_label(g) for g in tup)


def _build_pentagon(level, bounds, fam):
    V, one = fam.V, Identity()
    yield Instance("pentagon", prod(V, Phi(V, one)), prod(Phi(one, star(V)), V, V))


def _build_triangle(level, bounds, fam):
    one = Identity()
    yield Instance("triangle", prod(Phi(one, fam.Wl), fam.V), Phi(fam.Wr, one))


def _build_hexagon1(level, bounds, fam):
    V, U, one = fam.V, fam.U, Identity()
    yield Instance("hexagon1", prod(V, U, V), prod(Phi(one, U), V, Phi(U, one)))


def _build_hexagon2(level, bounds, fam):
    V, Us, one = fam.V, star(fam.U), Identity()
    yield Instance("hexagon2", prod(V, Us, V), prod(Phi(one, Us), V, Phi(Us, one)))


def _build_eqv(level, bounds, fam):
    V = fam.V
    for (b1, b2, b3), labels in _gens(level, bounds, 3):
        e1, e2, e3 = (Element(b, s) for b, s in zip((b1, b2, b3), labels))
        yield Instance(
            "eqV",
            prod(V, Phi(Phi(e1, e2), e3), star(V)),
            Phi(e1, Phi(e2, e3)),
            labels,
        )


def _build_braid_conj(level, bounds, fam):
    U = fam.U
    for (b1, b2), labels in _gens(level, bounds, 2):
        e1, e2 = (Element(b, s) for b, s in zip((b1, b2), labels))
        yield Instance("braid-conj", prod(U, Phi(e1, e2), star(U)), Phi(e2, e1), labels)


def _build_unit(side: str):
    def build(level, bounds, fam):
        W = fam.Wr if side == "r" else fam.Wl
        ps = Element(p_star(level), "p*")
        for (b,), labels in _gens(level, bounds, 1):
            e = Element(b, labels[0])
            inner = Phi(e, ps) if side == "r" else Phi(ps, e)
            yield Instance(f"unit-{side}", prod(W, inner, star(W)), e, labels)
            yield Instance(f"unit-{side}:left", prod(star(W), W, inner), inner, labels)
            yield Instance(f"unit-{side}:right", prod(inner, star(W), W), inner, labels)

    return build


def _block_sizes(total: int, parts: int):
    for sizes in product(range(total + 1), repeat=parts):
        if sum(sizes) <= total:
            yield sizes


def _unm(level: Level, n: int, m: int) -> Element:
    return Element(standard_family("Unm", level, n=n, m=m), f"U_{n},{m}")


def _pn(level: Level, n: int) -> Element:
    return Element(p_consecutive(level, n), f"p_{n}")


def _build_j_braided(level, bounds, fam):
    for n, m in _block_sizes(bounds.max_filled, 2):
        sigma = Element(
            BElement.L(level, Pattern.consecutive(n + m), Pattern.consecutive(n + m), block_crossing(level, n, m)),
            f"L_{n + m}(sigma)",
        )
        pp = Phi(_pn(level, n), _pn(level, m))
        yield Instance(
            "j-braided",
            prod(sigma, _unm(level, n, m), pp),
            prod(_unm(level, m, n), fam.U, pp),
            (f"n={n}", f"m={m}"),
        )


def _build_j_monoidal(level, bounds, fam):
    for n, m, k in _block_sizes(bounds.max_filled, 3):
        yield Instance(
            "j-monoidal",
            prod(_unm(level, n, m + k), Phi(_pn(level, n), _unm(level, m, k)), fam.V),
            prod(_unm(level, n + m, k), Phi(_unm(level, n, m), _pn(level, k))),
            (f"n={n}", f"m={m}", f"k={k}"),
        )


def _build_unm_unitary(level, bounds, fam):
    for n, m in _block_sizes(bounds.max_filled, 2):
        u = _unm(level, n, m)
        ustar = Element(u.element.star(), f"U_{n},{m}*")
        pp = Phi(_pn(level, n), _pn(level, m))
        yield Instance("Unm:U*U", prod(ustar, u), pp, (f"n={n}", f"m={m}"))
        yield Instance("Unm:UU*", prod(u, ustar), _pn(level, n + m), (f"n={n}", f"m={m}"))


CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        CatalogEntry("eqV", "V Phi(Phi(b1 x b2) x b3) V* = Phi(b1 x Phi(b2 x b3))", _build_eqv, ("alpha",)),
        CatalogEntry("pentagon", "V Phi(V x 1) = Phi(1 x V*) V V", _build_pentagon, ("alpha",)),
        CatalogEntry("unit-r", "Wr Phi(b x p*) Wr* = b, Wr* Wr Phi(b x p*) = Phi(b x p*) = Phi(b x p*) Wr* Wr", _build_unit("r"), ()),
        CatalogEntry("unit-l", "Wl Phi(p* x b) Wl* = b, Wl* Wl Phi(p* x b) = Phi(p* x b) = Phi(p* x b) Wl* Wl", _build_unit("l"), ()),
        CatalogEntry("triangle", "Phi(1 x Wl) V = Phi(Wr x 1)", _build_triangle, ("alpha",)),
        CatalogEntry("braid-conj", "U Phi(b1 x b2) U* = Phi(b2 x b1)", _build_braid_conj, ("sigma",)),
        CatalogEntry("hexagon1", "V U V = Phi(1 x U) V Phi(U x 1)", _build_hexagon1, ("alpha", "sigma")),
        CatalogEntry("hexagon2", "V U* V = Phi(1 x U*) V Phi(U* x 1)", _build_hexagon2, ("alpha", "sigma")),
        CatalogEntry("phi-tower", "Phi_{n+1}(a x b) = Phi_n(a x b) for a, b in B_n", None, ()),  # type: ignore[arg-type]
        CatalogEntry("phi-mult", "Phi(a a' x b b') = Phi(a x b) Phi(a' x b')", None, ()),  # type: ignore[arg-type]
        CatalogEntry("phi-trace", "Tr_2n(Phi_n(a x b)) = Tr_n(a) Tr_n(b)", None, ()),  # type: ignore[arg-type]
        CatalogEntry("j-braided", "L_{n+m}(sigma) U_{n,m} Phi(p_n x p_m) = U_{m,n} U Phi(p_n x p_m)", _build_j_braided, ("sigma",)),
        CatalogEntry("j-monoidal", "U_{n,m+k} Phi(p_n x U_{m,k}) V = U_{n+m,k} Phi(U_{n,m} x p_k)", _build_j_monoidal, ("alpha",)),
        CatalogEntry("unm-unitary", "U_{n,m}* U_{n,m} = Phi(p_n x p_m), U_{n,m} U_{n,m}* = p_{n+m}", _build_unm_unitary, ()),
    ]
}


def catalog_names() -> list[str]:
    return list(CATALOG)


# -- checking -----------------------------------------------------------------------


@dataclass
class Report:
    identity: str
    level: str
    bounds: dict
    tuples_checked: int
    status: str
    wall_time_ms: int
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {
            "identity": self.identity,
            "level": self.level,
            "bounds": self.bounds,
            "tuples_checked": self.tuples_checked,
            "status": self.status,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details:
            out["details"] = self.details
        out["wall_time_ms"] = self.wall_time_ms
        return out


def _same(lhs: Value, rhs: Value) -> bool:
    if lhs is None and rhs is None:
        return True
    if lhs is None:
        return radical_contains(rhs[1])
    if rhs is None:
        return radical_contains(lhs[1])
    if lhs[0] != rhs[0]:
        return radical_contains(lhs[1]) and radical_contains(rhs[1])
    return lhs[1] == rhs[1] or radical_contains(lhs[1] - rhs[1])


def _chain(expr: Expr, w: Pattern, level: Level) -> list[str]:
    if isinstance(expr, Prod):
        return [str(p) for p in expr.chain(w, level)]
    r = expr.apply(w, level)
    return [str(w)] + ([str(r[0])] if r is not None else [])


def _inputs_for(inst: Instance, bounds: Bounds) -> list[Pattern]:
    a, b = inst.lhs.inputs(), inst.rhs.inputs()
    if a is not None and b is not None:
        return sorted(a | b, key=lambda p: (len(p), tuple(p)))
    return all_patterns(bounds.max_len, bounds.max_filled)


def _check_instance(inst: Instance, level: Level, bounds: Bounds) -> tuple[int, dict | None]:
    checked = 0
    for w in _inputs_for(inst, bounds):
        checked += 1
        lhs = inst.lhs.apply(w, level)
        rhs = inst.rhs.apply(w, level)
        if not _same(lhs, rhs):
            lchain = _chain(inst.lhs, w, level)
            rchain = _chain(inst.rhs, w, level)
            size = sum(len(s) for s in lchain + rchain) + sum(len(s) for s in inst.data)
            return checked, {
                "relation": inst.label,
                "input": str(w),
                "lhs_patterns": lchain,
                "rhs_patterns": rchain,
                "data": list(inst.data),
                "lhs_out": None if lhs is None else str(lhs[0]),
                "rhs_out": None if rhs is None else str(rhs[0]),
                "_size": size,
            }
    return checked, None


def _phi_pairs(level: Level, bounds: Bounds, n: int):
    gens = generators(level, n, bounds.max_filled)
    for a in gens:
        for b in gens:
            yield a, b


def _check_phi(name: str, level: Level, bounds: Bounds) -> tuple[int, dict | None]:
    checked = 0
    if name == "phi-tower":
        for n in range(0, 3):
            for a, b in _phi_pairs(level, bounds, n):
                checked += 1
                if not phi_n(a, b, n + 1).quotient_equal(phi_n(a, b, n)):
                    return checked, {"n": n, "a": _gen_label(a), "b": _gen_label(b), "_size": 2 * n}
        return checked, None
    gens = generators(level, 2, bounds.max_filled)
    if name == "phi-trace":
        for a in gens:
            for b in gens:
                checked += 1
                if phi(a, b).trace() != a.trace() * b.trace():
                    return checked, {"a": _gen_label(a), "b": _gen_label(b), "_size": 0}
        return checked, None
    # multiplicativity on composable generator pairs in B_2
    by_in: dict[Pattern, list[BElement]] = {}
    for g in gens:
        by_in.setdefault(next(iter(g.terms))[0], []).append(g)
    for a in gens:
        for a2 in by_in.get(next(iter(a.terms))[1], []):
            aa = a * a2
            for b in gens:
                pb = phi(a, b)
                for b2 in by_in.get(next(iter(b.terms))[1], []):
                    checked += 1
                    lhs = phi(aa, b * b2)
                    rhs = pb * phi(a2, b2)
                    if not lhs.quotient_equal(rhs):
                        return checked, {
                            "a": _gen_label(a), "a2": _gen_label(a2),
                            "b": _gen_label(b), "b2": _gen_label(b2), "_size": 0,
                        }
    return checked, None


def check_identity(
    name: str,
    level: Level,
    bounds: Bounds | None = None,
    *,
    mode: str = "exhaustive",
    samples: int = 200,
    seed: int = 0,
    mutation: str | None = None,
    jobs: int = 1,
) -> Report:
    """Check one catalog identity on every compatible input within the bounds."""
    if name not in CATALOG:
        raise KeyError(f"unknown identity {name!r}; known: {', '.join(CATALOG)}")
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    bounds = bounds or Bounds()
    start = time.perf_counter()
    entry = CATALOG[name]
    if entry.build is None:
        checked, counter = _check_phi(name, level, bounds)
    else:
        fam = Families.build(mutation)
        instances = list(entry.build(level, bounds, fam))
        if mode == "sampled" and len(instances) > samples:
            instances = Random(seed).sample(instances, samples)
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(lambda i: _check_instance(i, level, bounds), instances))
        else:
            results = [_check_instance(i, level, bounds) for i in instances]
        checked = sum(c for c, _ in results)
        failures = [f for _, f in results if f is not None]
        counter = min(failures, key=lambda f: f["_size"]) if failures else None
    if counter is not None:
        counter = {k: v for k, v in counter.items() if k != "_size"}
    elapsed = int((time.perf_counter() - start) * 1000)
    details = {"formula": entry.formula}
    if mutation:
        details["mutation"] = mutation
    if mode == "sampled":
        details["mode"] = "sampled"
        details["seed"] = seed
    return Report(
        name,
        level.name,
        bounds.to_json(),
        checked,
        "pass" if counter is None else "fail",
        elapsed,
        counter,
        details,
    )


def check_all(level: Level, bounds: Bounds | None = None, **kwargs) -> list[Report]:
    return [check_identity(name, level, bounds, **kwargs) for name in CATALOG]


# -- full faithfulness and K0 ---------------------------------------------------------


def check_full_faithful(
    p: TLMorphism, q: TLMorphism, level: Level | None = None, names: tuple[str, str] | None = None
) -> Report:
    """dim L_m(Q) B_K L_n(P) against dim Q TLJ_{m,n} P, with K = max(m, n)."""
    start = time.perf_counter()
    level = level or p.level
    n, m = p.left, q.left
    big_k = max(m, n)
    lp = BElement.L(level, Pattern.consecutive(n), Pattern.consecutive(n), p)
    lq = BElement.L(level, Pattern.consecutive(m), Pattern.consecutive(m), q)
    family = []
    pats = all_patterns(big_k)
    count = 0
    for x in pats:
        if x.weight != m:
            continue
        for y in pats:
            if y.weight != n:
                continue
            for g in _diagram_elements(level, x, y):
                count += 1
                v = lq * g * lp
                if v.terms:
                    family.append(v)
    dim_b = b_gram_rank(family)
    dim_tlj = hom_dimension(q, p)
    elapsed = int((time.perf_counter() - start) * 1000)
    return Report(
        "full-faithful",
        level.name,
        {"K": big_k},
        count,
        "pass" if dim_b == dim_tlj else "fail",
        elapsed,
        None if dim_b == dim_tlj else {"dim_B": dim_b, "dim_TLJ": dim_tlj},
        {"dim_B": dim_b, "dim_TLJ": dim_tlj, "source": n, "target": m, **({"P": names[0], "Q": names[1]} if names else {})},
    )


def _diagram_elements(level: Level, x: Pattern, y: Pattern):
    from tlj import diagrams as dg

    for d in dg.enumerate_diagrams(x.weight, y.weight):
        yield BElement.L(level, x, y, TLMorphism.from_diagram(level, d))


def k0_product_table(level: Level, bound: int) -> dict[tuple[int, int], FusionVector]:
    """K0(Phi) on the classes of L_s(f^(s)): entry (s, t) = class of Phi(L_s f^(s) x L_t f^(t))."""
    top = min(bound, level.max_simple)
    lifts = {
        s: BElement.L(level, Pattern.consecutive(s), Pattern.consecutive(s), jones_wenzl(s, level))
        for s in range(top + 1)
    }
    table = {}
    for s in range(top + 1):
        for t in range(top + 1):
            table[(s, t)] = k0_class(phi(lifts[s], lifts[t]))
    return table


def check_k0_ring(level: Level, bound: int | None = None) -> Report:
    start = time.perf_counter()
    bound = level.max_simple if bound is None else bound
    k0 = k0_product_table(level, bound)
    fusion = fusion_table(level, bound)
    mismatches = [
        {"s": s, "t": t, "k0": str(v), "fusion": str(fusion[(s, t)])}
        for (s, t), v in sorted(k0.items())
        if v != fusion[(s, t)]
    ]
    elapsed = int((time.perf_counter() - start) * 1000)
    return Report(
        "k0-ring",
        level.name,
        {"bound": bound},
        len(k0),
        "fail" if mismatches else "pass",
        elapsed,
        mismatches[0] if mismatches else None,
        {"table": {f"f{s}*f{t}": str(v) for (s, t), v in sorted(k0.items())}},
    )

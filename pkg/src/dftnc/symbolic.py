"""Sparse multivariate polynomials and rational functions in named LEC symbols,
with exact small-case equality and seeded randomized identity testing."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .galois import FieldCtx, FieldElement, FieldError, find_embedding, format_element

EXACT_TERM_BUDGET = 20000


class SymbolicError(ValueError):
    pass


@dataclass(frozen=True)
class LecSymbol:
    """A named local encoding coefficient, optionally indexed by time or block."""

    name: str
    time_index: int | None = None
    block_index: int | None = None

    def __str__(self):
        if self.time_index is not None:
            return f"{self.name}@{self.time_index}"
        if self.block_index is not None:
            return f"{self.name}#{self.block_index}"
        return self.name

    @classmethod
    def parse(cls, text: str) -> LecSymbol:
        if "@" in text:
            name, t = text.split("@", 1)
            return cls(name, time_index=int(t))
        if "#" in text:
            name, l = text.split("#", 1)
            return cls(name, block_index=int(l))
        return cls(text)

    def __lt__(self, other):  # deterministic term ordering; None sorts first
        def key(s):
            return (s.name,
                    s.time_index is not None, s.time_index or 0,
                    s.block_index is not None, s.block_index or 0)
        return key(self) < key(other)


# the delay parameter, usable as an ordinary symbol in symbolic transfer grids
D_SYMBOL = LecSymbol("D")

Monomial = tuple[tuple[LecSymbol, int], ...]  # sorted, positive exponents


class MultiPoly:
    """Sparse multivariate polynomial: monomial -> nonzero FieldElement."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms: dict[Monomial, FieldElement] | None = None):
        self.ctx = ctx
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, ctx: FieldCtx) -> MultiPoly:
        return cls(ctx)

    @classmethod
    def const(cls, c: FieldElement) -> MultiPoly:
        return cls(c.ctx, {(): c})

    @classmethod
    def one(cls, ctx: FieldCtx) -> MultiPoly:
        return cls.const(ctx.one())

    @classmethod
    def symbol(cls, ctx: FieldCtx, sym: LecSymbol) -> MultiPoly:
        return cls(ctx, {((sym, 1),): ctx.one()})

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> FieldElement | None:
        if not self.terms:
            return self.ctx.zero()
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def variables(self) -> set[LecSymbol]:
        return {s for m in self.terms for s, _ in m}

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def term_count(self) -> int:
        return len(self.terms)

    def __add__(self, other: MultiPoly) -> MultiPoly:
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            out[m] = c if s is None else s + c
        return MultiPoly(self.ctx, out)

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def __mul__(self, other: MultiPoly) -> MultiPoly:
        out = self.mul_capped(other, None)
        assert out is not None
        return out

    def mul_capped(self, other: MultiPoly, cap: int | None) -> MultiPoly | None:
        """Product, or None once the intermediate term count exceeds cap."""
        out: dict[Monomial, FieldElement] = {}
        for m1, c1 in self.terms.items():
            d1 = dict(m1)
            for m2, c2 in other.terms.items():
                d = dict(d1)
                for s, e in m2:
                    d[s] = d.get(s, 0) + e
                key = tuple(sorted(d.items()))
                c = c1 * c2
                prev = out.get(key)
                v = c if prev is None else prev + c
                if v:
                    out[key] = v
                elif prev is not None:
                    del out[key]
                if cap is not None and len(out) > cap:
                    return None
        return MultiPoly(self.ctx, out)

    def scale(self, c: FieldElement) -> MultiPoly:
        return MultiPoly(self.ctx, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, e: int) -> MultiPoly:
        out = MultiPoly.one(self.ctx)
        for _ in range(e):
            out = out * self
        return out

    def evaluate(self, assignment: dict[LecSymbol, FieldElement],
                 tgt: FieldCtx | None = None, lift=None) -> FieldElement:
        """Full evaluation; every variable must be assigned.  `lift` maps the
        coefficients into the evaluation field when it is an extension."""
        ctx = tgt or self.ctx
        out = ctx.zero()
        for m, c in self.terms.items():
            v = lift(c) if lift else c
            for s, e in m:
                a = assignment.get(s)
                if a is None:
                    raise SymbolicError(f"no value assigned to symbol {s}")
                v = v * a ** e
            out = out + v
        return out

    def substitute(self, partial: dict[LecSymbol, FieldElement]) -> MultiPoly:
        """Partial evaluation, keeping the remaining symbols."""
        out = MultiPoly.zero(self.ctx)
        for m, c in self.terms.items():
            v = c
            rest = []
            for s, e in m:
                a = partial.get(s)
                if a is None:
                    rest.append((s, e))
                else:
                    v = v * a ** e
            if v:
                out = out + MultiPoly(self.ctx, {tuple(sorted(rest)): v})
        return out

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (sum(e for _, e in m), m)):
            c = self.terms[m]
            factors = ["" if c == self.ctx.one() and m else format_element(c)]
            for s, e in m:
                factors.append(str(s) if e == 1 else f"{s}^{e}")
            parts.append("*".join(f for f in factors if f))
        return " + ".join(parts)


def mp_identical_zero(f: MultiPoly) -> bool:
    """Exact zero test on the sparse representation."""
    return f.is_zero()


class RationalFn:
    """num/den pair of MultiPolys; equality is cross-multiplied identity."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None):
        if den is None:
            den = MultiPoly.one(num.ctx)
        if den.is_zero():
            raise SymbolicError("rational function with identically-zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c: FieldElement) -> RationalFn:
        return cls(MultiPoly.const(c))

    @property
    def ctx(self) -> FieldCtx:
        return self.num.ctx

    def __add__(self, other: RationalFn) -> RationalFn:
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: RationalFn) -> RationalFn:
        return RationalFn(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: RationalFn) -> RationalFn:
        return RationalFn(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: RationalFn) -> RationalFn:
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def variables(self) -> set[LecSymbol]:
        return self.num.variables() | self.den.variables()

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"


@dataclass
class EqualityVerdict:
    kind: str  # "equal_exact" | "equal_probable" | "different"
    witness: dict[LecSymbol, FieldElement] | None = None
    failure_bound: float | None = None
    trials: int = 0

    @property
    def equal(self) -> bool:
        return self.kind in ("equal_exact", "equal_probable")


def _draw_assignment(symbols, ctx: FieldCtx, rng: random.Random) -> dict:
    return {s: ctx.element(rng.randrange(ctx.size)) for s in symbols}


def rf_probably_equal(f: RationalFn, g: RationalFn, trials: int = 16, seed: int = 0,
                      eval_ctx: FieldCtx | None = None) -> EqualityVerdict:
    """Cross-multiplied equality test.

    Small differences are decided exactly (term budget); otherwise the
    difference is evaluated at seeded random points drawn from the largest
    declared field, avoiding denominator zeros.  "different" verdicts are
    always correct and carry a witness; "equal_probable" carries the
    Schwartz-Zippel failure bound (total degree / field size)^trials.
    """
    if trials < 1:
        raise SymbolicError("trials must be >= 1")
    lhs = f.num.mul_capped(g.den, EXACT_TERM_BUDGET)
    rhs = g.num.mul_capped(f.den, EXACT_TERM_BUDGET)
    if lhs is not None and rhs is not None:
        diff = lhs - rhs
        if diff.is_zero():
            return EqualityVerdict("equal_exact")
        exact_diff = diff
    else:
        exact_diff = None

    ctx = f.ctx
    ectx = eval_ctx or ctx
    lift = None
    if not ectx.same_as(ctx):
        lift = find_embedding(ctx, ectx)
    symbols = sorted(f.variables() | g.variables())
    degree = max(f.num.total_degree() + g.den.total_degree(),
                 g.num.total_degree() + f.den.total_degree()) or 1
    checked = 0
    for t in range(trials):
        rng = random.Random(seed * 1000003 + t)
        for _ in range(64):
            assign = _draw_assignment(symbols, ectx, rng)
            fd = f.den.evaluate(assign, ectx, lift)
            gd = g.den.evaluate(assign, ectx, lift)
            if fd and gd:
                break
        else:
            raise SymbolicError(
                "field too small to find denominator-nonzero points; enlarge via embedding")
        if exact_diff is not None:
            val = exact_diff.evaluate(assign, ectx, lift)
        else:
            val = (f.num.evaluate(assign, ectx, lift) * gd
                   - g.num.evaluate(assign, ectx, lift) * fd)
        if val:
            return EqualityVerdict("different", witness=assign, trials=t + 1)
        checked += 1
    bound = min(1.0, degree / ectx.size) ** checked
    return EqualityVerdict("equal_probable", failure_bound=bound, trials=checked)


def rf_is_constant(f: RationalFn, trials: int = 16, seed: int = 0,
                   eval_ctx: FieldCtx | None = None):
    """The constant c with f == c as a rational function, else None.

    The candidate is taken from one nondegenerate evaluation and confirmed by
    the cross-multiplied test against that constant.
    """
    ctx = f.ctx
    ectx = eval_ctx or ctx
    lift = None
    if not ectx.same_as(ctx):
        lift = find_embedding(ctx, ectx)
    symbols = sorted(f.variables())
    if not symbols:
        num = f.num.is_const()
        den = f.den.is_const()
        return num / den
    rng = random.Random(seed)
    for _ in range(256):
        assign = _draw_assignment(symbols, ectx, rng)
        dv = f.den.evaluate(assign, ectx, lift)
        if dv:
            candidate = f.num.evaluate(assign, ectx, lift) / dv
            break
    else:
        raise SymbolicError("field too small to find a nondegenerate evaluation")
    if lift is not None:
        # candidate must live in the base field for a base-field constant claim
        base_img = {lift(x).val: x for x in ctx.elements()}
        back = base_img.get(candidate.val)
        if back is None:
            return None
        candidate_base = back
    else:
        candidate_base = candidate
    verdict = rf_probably_equal(f, RationalFn.const(candidate_base),
                                trials=trials, seed=seed + 1, eval_ctx=eval_ctx)
    return candidate_base if verdict.equal else None


# ---------------------------------------------------------------------------
# matrices over rational functions (exact symbolic elimination, small sizes)
# ---------------------------------------------------------------------------

class RationalMatrix:
    """Dense matrix of RationalFns; exact Gauss-Jordan inverse for the
    structured (mostly sparse) matrices the alignment proofs need."""

    __slots__ = ("ctx", "rows", "cols", "data")

    def __init__(self, ctx: FieldCtx, data):
        self.ctx = ctx
        self.data = [list(row) for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> RationalMatrix:
        z = RationalFn(MultiPoly.zero(ctx))
        o = RationalFn(MultiPoly.one(ctx))
        return cls(ctx, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_multipoly(cls, ctx: FieldCtx, grid) -> RationalMatrix:
        return cls(ctx, [[RationalFn(e) for e in row] for row in grid])

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        z = RationalFn(MultiPoly.zero(self.ctx))
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a, b = self.data[i][k], other.data[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RationalMatrix(self.ctx, out)

    def inverse(self) -> RationalMatrix:
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        z = RationalFn(MultiPoly.zero(self.ctx))
        o = RationalFn(MultiPoly.one(self.ctx))
        m = [row[:] + [o if i == j else z for j in range(n)]
             for i, row in enumerate(self.data)]
        for c in range(n):
            pr = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
            if pr is None:
                raise ZeroDivisionError("symbolically singular matrix")
            m[c], m[pr] = m[pr], m[c]
            inv = o / m[c][c]
            m[c] = [inv * a for a in m[c]]
            for i in range(n):
                if i != c and not m[i][c].is_zero():
                    fct = m[i][c]
                    m[i] = [a - fct * b for a, b in zip(m[i], m[c])]
        return RationalMatrix(self.ctx, [row[n:] for row in m])

    def equals_identity(self, trials: int = 8, seed: int = 0, exact: bool = True):
        """Exact (cross-multiplied) identity check entry by entry."""
        for i in range(self.rows):
            for j in range(self.cols):
                e = self.data[i][j]
                want_one = i == j
                if exact:
                    target = MultiPoly.one(self.ctx) if want_one else MultiPoly.zero(self.ctx)
                    if not (e.num - target * e.den).is_zero():
                        return False
                else:
                    v = rf_probably_equal(
                        e, RationalFn.const(self.ctx.one() if want_one else self.ctx.zero()),
                        trials=trials, seed=seed)
                    if not v.equal:
                        return False
        return True

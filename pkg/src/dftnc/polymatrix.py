"""Polynomials in the delay parameter D over GF(p^m), and matrices over the
field and the polynomial ring: exact determinant, rank, inverse, solving."""

from __future__ import annotations

from .galois import FieldCtx, FieldElement, FieldError, FieldEmbedding, format_element, parse_element


class DelayPoly:
    """Univariate polynomial in D with FieldElement coefficients.

    The zero polynomial has an empty coefficient tuple and degree None
    (a distinguished marker, never an integer sentinel).
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        self.ctx = ctx
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls, ctx: FieldCtx) -> DelayPoly:
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx: FieldCtx) -> DelayPoly:
        return cls(ctx, (ctx.one(),))

    @classmethod
    def const(cls, c: FieldElement) -> DelayPoly:
        return cls(c.ctx, (c,))

    @classmethod
    def monomial(cls, c: FieldElement, d: int) -> DelayPoly:
        if not c:
            return cls.zero(c.ctx)
        return cls(c.ctx, tuple([c.ctx.zero()] * d) + (c,))

    @classmethod
    def from_ints(cls, ctx: FieldCtx, vals) -> DelayPoly:
        return cls(ctx, tuple(ctx.element(v) for v in vals))

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, d: int) -> FieldElement:
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return self.ctx.zero()

    def __add__(self, other: DelayPoly) -> DelayPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return DelayPoly(self.ctx, (self.coeff(d) + other.coeff(d) for d in range(n)))

    def __sub__(self, other: DelayPoly) -> DelayPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return DelayPoly(self.ctx, (self.coeff(d) - other.coeff(d) for d in range(n)))

    def __neg__(self) -> DelayPoly:
        return DelayPoly(self.ctx, (-c for c in self.coeffs))

    def __mul__(self, other: DelayPoly) -> DelayPoly:
        if self.is_zero() or other.is_zero():
            return DelayPoly.zero(self.ctx)
        out = [self.ctx.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return DelayPoly(self.ctx, out)

    def scale(self, c: FieldElement) -> DelayPoly:
        return DelayPoly(self.ctx, (c * a for a in self.coeffs))

    def shift(self, d: int) -> DelayPoly:
        """Multiply by D^d."""
        if self.is_zero():
            return self
        return DelayPoly(self.ctx, tuple([self.ctx.zero()] * d) + self.coeffs)

    def divmod(self, other: DelayPoly) -> tuple[DelayPoly, DelayPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [self.ctx.zero()] * max(len(self.coeffs) - len(other.coeffs) + 1, 0)
        r = list(self.coeffs)
        lead_inv = other.coeffs[-1].inverse()
        dn = len(other.coeffs)
        while len(r) >= dn:
            c = r[-1] * lead_inv
            if c:
                k = len(r) - dn
                q[k] = c
                for i, b in enumerate(other.coeffs):
                    r[k + i] = r[k + i] - c * b
            r.pop()
        return DelayPoly(self.ctx, q), DelayPoly(self.ctx, r)

    def exact_div(self, other: DelayPoly) -> DelayPoly:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division not exact")
        return q

    def evaluate(self, c: FieldElement, embedding: FieldEmbedding | None = None) -> FieldElement:
        """Horner evaluation; a declared embedding lifts the coefficients first."""
        if embedding is None:
            if not c.ctx.same_as(self.ctx):
                raise FieldError("evaluation point from a different field context")
            lift = lambda a: a
        else:
            lift = embedding
        out = c.ctx.zero()
        for a in reversed(self.coeffs):
            out = out * c + lift(a)
        return out

    def __eq__(self, other):
        return isinstance(other, DelayPoly) and self.coeffs == other.coeffs \
            and self.ctx.same_as(other.ctx)

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"DelayPoly({format_poly(self)})"


def format_poly(f: DelayPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for d, c in enumerate(f.coeffs):
        if not c:
            continue
        cs = format_element(c)
        if d == 0:
            parts.append(cs)
        else:
            dpart = "D" if d == 1 else f"D^{d}"
            parts.append(dpart if cs == "1" else f"{cs}*{dpart}")
    return " + ".join(parts)


def parse_poly(ctx: FieldCtx, text: str) -> DelayPoly:
    text = text.strip()
    if text == "0":
        return DelayPoly.zero(ctx)
    coeffs: dict[int, FieldElement] = {}
    for term in text.split("+"):
        term = term.strip()
        if "*" in term:
            cs, dpart = (s.strip() for s in term.split("*", 1))
        elif term.startswith("D"):
            cs, dpart = "1", term
        else:
            cs, dpart = term, ""
        d = 0 if not dpart else (1 if dpart == "D" else int(dpart[2:]))
        c = parse_element(ctx, cs)
        coeffs[d] = coeffs.get(d, ctx.zero()) + c
    out = [ctx.zero()] * (max(coeffs) + 1)
    for d, c in coeffs.items():
        out[d] = c
    return DelayPoly(ctx, out)


def divides_Dminus1(f: DelayPoly) -> bool:
    """True iff (D - 1) divides f, i.e. f(1) = 0."""
    return not f.evaluate(f.ctx.one())


class FieldMatrix:
    """Dense matrix of FieldElements with exact Gaussian-elimination kernels."""

    __slots__ = ("ctx", "rows", "cols", "data")

    def __init__(self, ctx: FieldCtx, data):
        self.ctx = ctx
        self.data = [list(row) for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, ctx: FieldCtx, rows: int, cols: int) -> FieldMatrix:
        z = ctx.zero()
        return cls(ctx, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> FieldMatrix:
        m = cls.zeros(ctx, n, n)
        for i in range(n):
            m.data[i][i] = ctx.one()
        return m

    @classmethod
    def diagonal(cls, entries) -> FieldMatrix:
        entries = list(entries)
        m = cls.zeros(entries[0].ctx, len(entries), len(entries))
        for i, e in enumerate(entries):
            m.data[i][i] = e
        return m

    @classmethod
    def column(cls, entries) -> FieldMatrix:
        entries = list(entries)
        return cls(entries[0].ctx, [[e] for e in entries])

    def __getitem__(self, rc):
        return self.data[rc[0]][rc[1]]

    def __eq__(self, other):
        return isinstance(other, FieldMatrix) and self.data == other.data

    def copy(self) -> FieldMatrix:
        return FieldMatrix(self.ctx, self.data)

    def transpose(self) -> FieldMatrix:
        return FieldMatrix(self.ctx, [[self.data[r][c] for r in range(self.rows)]
                                      for c in range(self.cols)])

    def __add__(self, other: FieldMatrix) -> FieldMatrix:
        return FieldMatrix(self.ctx, [[a + b for a, b in zip(ra, rb)]
                                      for ra, rb in zip(self.data, other.data)])

    def __sub__(self, other: FieldMatrix) -> FieldMatrix:
        return FieldMatrix(self.ctx, [[a - b for a, b in zip(ra, rb)]
                                      for ra, rb in zip(self.data, other.data)])

    def __matmul__(self, other: FieldMatrix) -> FieldMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch ({self.rows}x{self.cols})@({other.rows}x{other.cols})")
        z = self.ctx.zero()
        ot = other.transpose().data
        out = []
        for ra in self.data:
            row = []
            for cb in ot:
                acc = z
                for a, b in zip(ra, cb):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return FieldMatrix(self.ctx, out)

    def scale(self, c: FieldElement) -> FieldMatrix:
        return FieldMatrix(self.ctx, [[c * a for a in row] for row in self.data])

    def hstack(self, other: FieldMatrix) -> FieldMatrix:
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return FieldMatrix(self.ctx, [ra + rb for ra, rb in zip(self.data, other.data)])

    def col_vector(self, c: int) -> list[FieldElement]:
        return [self.data[r][c] for r in range(self.rows)]

    def submatrix(self, rows, cols) -> FieldMatrix:
        return FieldMatrix(self.ctx, [[self.data[r][c] for c in cols] for r in rows])

    def is_zero(self) -> bool:
        return all(not a for row in self.data for a in row)

    def _eliminate(self):
        """Row-reduce a copy; returns (reduced rows, pivot columns)."""
        m = [row[:] for row in self.data]
        pivots = []
        r = 0
        for c in range(self.cols):
            if r >= self.rows:
                break
            pr = next((i for i in range(r, self.rows) if m[i][c]), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = m[r][c].inverse()
            m[r] = [inv * a for a in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return m, pivots

    def rank(self) -> int:
        return len(self._eliminate()[1])

    def det(self) -> FieldElement:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        m = [row[:] for row in self.data]
        n = self.rows
        det = self.ctx.one()
        for c in range(n):
            pr = next((i for i in range(c, n) if m[i][c]), None)
            if pr is None:
                return self.ctx.zero()
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c].inverse()
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return det

    def inverse(self) -> FieldMatrix:
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        aug = self.hstack(FieldMatrix.identity(self.ctx, self.rows))
        red, pivots = aug._eliminate()
        if len(pivots) < self.rows or pivots[self.rows - 1] != self.rows - 1:
            raise ZeroDivisionError("singular matrix")
        return FieldMatrix(self.ctx, [row[self.rows:] for row in red])

    def solve(self, rhs: list[FieldElement]) -> list[FieldElement]:
        """Solve M x = rhs for square nonsingular M."""
        if self.rows != self.cols:
            raise ValueError("solve requires a square matrix")
        x = self.solve_consistent(rhs)
        if x is None:
            raise ZeroDivisionError("singular matrix")
        return x

    def solve_consistent(self, rhs: list[FieldElement]) -> list[FieldElement] | None:
        """Solve M x = rhs for full-column-rank M (possibly more rows than
        columns); None when the system is inconsistent or rank-deficient."""
        aug = self.hstack(FieldMatrix.column(list(rhs)))
        red, pivots = aug._eliminate()
        if self.cols in pivots:
            return None  # inconsistent
        if len(pivots) != self.cols:
            return None  # rank-deficient
        x = [self.ctx.zero()] * self.cols
        for r, c in enumerate(pivots):
            x[c] = red[r][self.cols]
        return x

    def __repr__(self):
        body = "; ".join(" ".join(format_element(a) for a in row) for row in self.data)
        return f"FieldMatrix({self.rows}x{self.cols}: {body})"


def kron_with_identity(f: FieldMatrix, k: int) -> FieldMatrix:
    """F (x) I_k, used for the explicit Q_mu construction in tests."""
    ctx = f.ctx
    out = FieldMatrix.zeros(ctx, f.rows * k, f.cols * k)
    for i in range(f.rows):
        for j in range(f.cols):
            if f.data[i][j]:
                for t in range(k):
                    out.data[i * k + t][j * k + t] = f.data[i][j]
    return out


class PolyMatrix:
    """Matrix of DelayPolys; exact determinant via fraction-free elimination."""

    __slots__ = ("ctx", "rows", "cols", "data")

    def __init__(self, ctx: FieldCtx, data):
        self.ctx = ctx
        self.data = [list(row) for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> PolyMatrix:
        z, o = DelayPoly.zero(ctx), DelayPoly.one(ctx)
        return cls(ctx, [[o if i == j else z for j in range(n)] for i in range(n)])

    def __getitem__(self, rc):
        return self.data[rc[0]][rc[1]]

    def submatrix(self, rows, cols) -> PolyMatrix:
        return PolyMatrix(self.ctx, [[self.data[r][c] for c in cols] for r in rows])

    def eval_at(self, c: FieldElement, embedding: FieldEmbedding | None = None) -> FieldMatrix:
        """Entrywise ring homomorphism D -> c."""
        tgt = c.ctx
        return FieldMatrix(tgt, [[f.evaluate(c, embedding) for f in row] for row in self.data])

    def max_degree(self) -> int:
        degs = [f.degree for row in self.data for f in row if f.degree is not None]
        return max(degs) if degs else 0

    def det(self) -> DelayPoly:
        """Bareiss fraction-free elimination; every division is exact."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return DelayPoly.one(self.ctx)
        m = [row[:] for row in self.data]
        sign = 1
        prev = DelayPoly.one(self.ctx)
        for k in range(n - 1):
            pr = next((i for i in range(k, n) if not m[i][k].is_zero()), None)
            if pr is None:
                return DelayPoly.zero(self.ctx)
            if pr != k:
                m[k], m[pr] = m[pr], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                    m[i][j] = num.exact_div(prev)
            prev = m[k][k]
        out = m[n - 1][n - 1]
        if sign < 0:
            out = -out
        return out

    def __repr__(self):
        body = "; ".join(" | ".join(format_poly(f) for f in row) for row in self.data)
        return f"PolyMatrix({self.rows}x{self.cols}: {body})"

"""Exact arithmetic in GF(p^m): field contexts, elements, roots of unity, embeddings.

Elements are stored as integers encoding the coefficient vector in base p
(coefficient of x^i is the i-th base-p digit).  Small fields (up to 2^16
elements) get exp/log tables; larger binary fields fall back to carry-less
integer multiplication with modular reduction.
"""

from __future__ import annotations

from functools import lru_cache


class FieldError(ValueError):
    """Invalid field construction or cross-context arithmetic."""


_TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (fine for the sizes we use)."""
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient tuples low-to-high, no trailing zeros
# ---------------------------------------------------------------------------

def _ptrim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a: tuple[int, ...], f: tuple[int, ...], p: int) -> tuple[int, ...]:
    # f monic
    r = list(a)
    df = len(f) - 1
    while len(r) - 1 >= df and r:
        lead = r[-1]
        if lead:
            shift = len(r) - 1 - df
            for i, fi in enumerate(f):
                r[shift + i] = (r[shift + i] - lead * fi) % p
        r.pop()
    return _ptrim(r)


def _pgcd(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    while b:
        inv = pow(b[-1], -1, p)
        bm = tuple((c * inv) % p for c in b)  # make monic so _pmod applies
        a, b = b, _pmod(a, bm, p)
    return a


def _frobenius(a: tuple[int, ...], f: tuple[int, ...], p: int) -> tuple[int, ...]:
    """a(x)^p mod f; over GF(p) this is just spreading exponents by p."""
    if not a:
        return ()
    out = [0] * ((len(a) - 1) * p + 1)
    for i, c in enumerate(a):
        out[i * p] = c % p
    return _pmod(_ptrim(out), f, p)


def poly_is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Rabin test: x^(p^m) == x mod f and gcd(x^(p^(m/q)) - x, f) = 1 for prime q | m."""
    m = len(f) - 1
    if m < 1 or f[-1] != 1:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False  # divisible by x
    x = (0, 1)
    # h_k = x^(p^k) mod f via repeated Frobenius
    h = x
    powers: dict[int, tuple[int, ...]] = {0: x}
    for k in range(1, m + 1):
        h = _frobenius(h, f, p)
        powers[k] = h
    if powers[m] != _pmod(x, f, p):
        return False
    for q in factorize(m):
        k = m // q
        g = list(powers[k])
        # g - x
        while len(g) < 2:
            g.append(0)
        g[1] = (g[1] - 1) % p
        d = _pgcd(f, _ptrim(g), p)
        if len(d) - 1 > 0:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Least irreducible monic degree-m polynomial, ordering the low-to-high
    coefficient vector as a base-p integer.  Gives 1+x+x^6 for GF(2^6)."""
    if m == 1:
        return (0, 1)
    for v in range(1, p ** m):
        tail = []
        t = v
        for _ in range(m):
            tail.append(t % p)
            t //= p
        f = tuple(tail) + (1,)
        if f[0] != 0 and poly_is_irreducible(f, p):
            return f
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")


class FieldCtx:
    """Immutable context for GF(p^m): modulus, primitive element, arithmetic."""

    __slots__ = ("p", "m", "modulus", "size", "group", "_mod_int", "_exp", "_log",
                 "_primitive")

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.modulus = modulus
        self.size = p ** m
        self.group = self.size - 1
        self._mod_int = sum(c * p ** i for i, c in enumerate(modulus))
        self._exp: list[int] | None = None
        self._log: dict[int, int] | None = None
        self._primitive = self._find_primitive()
        if self.size <= _TABLE_LIMIT:
            self._build_tables()

    # -- raw integer-encoded arithmetic ------------------------------------

    def _raw_add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        out = 0
        mult = 1
        for _ in range(self.m):
            out += ((a % self.p + b % self.p) % self.p) * mult
            a //= self.p
            b //= self.p
            mult *= self.p
        return out

    def _raw_neg(self, a: int) -> int:
        if self.p == 2:
            return a
        out = 0
        mult = 1
        for _ in range(self.m):
            out += ((-(a % self.p)) % self.p) * mult
            a //= self.p
            mult *= self.p
        return out

    def _raw_mul_direct(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.p == 2:
            # carry-less multiply then reduce by the modulus bit pattern
            acc = 0
            x = a
            while b:
                if b & 1:
                    acc ^= x
                x <<= 1
                b >>= 1
            top = self._mod_int.bit_length() - 1
            while acc.bit_length() - 1 >= top:
                acc ^= self._mod_int << (acc.bit_length() - 1 - top)
            return acc
        ca = self._digits(a)
        cb = self._digits(b)
        prod = _pmul(tuple(ca), tuple(cb), self.p)
        red = _pmod(prod, self.modulus, self.p)
        return self._from_digits(red)

    def _raw_mul(self, a: int, b: int) -> int:
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[(self._log[a] + self._log[b]) % self.group]
        return self._raw_mul_direct(a, b)

    def _raw_pow(self, a: int, e: int) -> int:
        if e < 0:
            return self._raw_pow(self._raw_inv(a), -e)
        if self._exp is not None and a != 0:
            return self._exp[(self._log[a] * e) % self.group]
        out = 1
        base = a
        while e:
            if e & 1:
                out = self._raw_mul_direct(out, base)
            base = self._raw_mul_direct(base, base)
            e >>= 1
        return out

    def _raw_inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self._exp is not None:
            return self._exp[(self.group - self._log[a]) % self.group]
        return self._raw_pow(a, self.group - 1)  # a^(q-2)

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def _from_digits(self, c) -> int:
        out = 0
        for i, ci in enumerate(c):
            out += (ci % self.p) * self.p ** i
        return out

    def _find_primitive(self) -> int:
        if self.group == 1:
            return 1
        qs = list(factorize(self.group))
        for cand in range(2, self.size):
            if all(self._raw_pow(cand, self.group // q) != 1 for q in qs):
                return cand
        raise FieldError("no primitive element found")  # unreachable for a field

    def _build_tables(self) -> None:
        exp = [1] * self.group
        log = {1: 0}
        cur = 1
        for i in range(1, self.group):
            cur = self._raw_mul_direct(cur, self._primitive)
            exp[i] = cur
            log[cur] = i
        self._exp = exp
        self._log = log

    # -- public surface -----------------------------------------------------

    @property
    def primitive(self) -> FieldElement:
        return FieldElement(self, self._primitive)

    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def element(self, val: int) -> FieldElement:
        if not 0 <= val < self.size:
            raise FieldError(f"element value {val} out of range for GF({self.p}^{self.m})")
        return FieldElement(self, val)

    def from_coeffs(self, coeffs) -> FieldElement:
        c = list(coeffs)
        if len(c) > self.m:
            raise FieldError("coefficient vector longer than extension degree")
        return FieldElement(self, self._from_digits(c))

    def scalar(self, k: int) -> FieldElement:
        """Image of the integer k under the prime-field embedding."""
        return FieldElement(self, k % self.p)

    def elements(self):
        for v in range(self.size):
            yield FieldElement(self, v)

    def random_element(self, rng, nonzero: bool = False) -> FieldElement:
        lo = 1 if nonzero else 0
        return FieldElement(self, rng.randrange(lo, self.size))

    def same_as(self, other: FieldCtx) -> bool:
        return (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.same_as(other)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"FieldCtx(GF({self.p}^{self.m}), modulus={format_modulus(self.modulus)})"


class FieldElement:
    __slots__ = ("ctx", "val")

    def __init__(self, ctx: FieldCtx, val: int):
        self.ctx = ctx
        self.val = val

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if self.ctx is not other.ctx and not self.ctx.same_as(other.ctx):
            raise FieldError("field context mismatch")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.ctx, self.ctx._raw_add(self.val, other.val))

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.ctx, self.ctx._raw_add(self.val, self.ctx._raw_neg(other.val)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx._raw_neg(self.val))

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.ctx, self.ctx._raw_mul(self.val, other.val))

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.ctx, self.ctx._raw_mul(self.val, self.ctx._raw_inv(other.val)))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx._raw_pow(self.val, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx._raw_inv(self.val))

    def __bool__(self):
        return self.val != 0

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.val == other.val and self.ctx.same_as(other.ctx)

    def __hash__(self):
        return hash((self.val, self.ctx.p, self.ctx.m))

    def coeffs(self) -> list[int]:
        return self.ctx._digits(self.val)

    def __repr__(self):
        return f"<{format_element(self)} in GF({self.ctx.p}^{self.ctx.m})>"


# ---------------------------------------------------------------------------
# spec operations
# ---------------------------------------------------------------------------

_CTX_CACHE: dict[tuple, FieldCtx] = {}


def make_field(p: int, m: int = 1, modulus=None) -> FieldCtx:
    """Build a GF(p^m) context with a verified-irreducible modulus.

    Without an explicit modulus the least irreducible (by low-to-high
    coefficient order) is used, so contexts are reproducible across runs.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be positive")
    if modulus is None:
        mod = default_modulus(p, m)
    else:
        mod = tuple(int(c) % p for c in modulus)
        while mod and mod[-1] == 0:
            mod = mod[:-1]
        if len(mod) - 1 != m:
            raise FieldError(f"modulus degree {len(mod) - 1} != {m}")
        if not poly_is_irreducible(mod, p):
            raise FieldError(f"modulus {format_modulus(mod)} is reducible over GF({p})")
    key = (p, m, mod)
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(p, m, mod)
        _CTX_CACHE[key] = ctx
    return ctx


def element_order(x: FieldElement) -> int:
    """Smallest k >= 1 with x^k = 1.  Always divides p^m - 1."""
    if x.val == 0:
        raise FieldError("zero element has no multiplicative order")
    order = x.ctx.group
    for q in factorize(x.ctx.group):
        while order % q == 0 and (x ** (order // q)).val == 1:
            order //= q
    return order


def nth_root_of_unity(ctx: FieldCtx, n: int) -> FieldElement:
    """primitive^((p^m-1)/n); requires n | p^m - 1."""
    if n < 1 or ctx.group % n != 0:
        raise FieldError(f"{n} does not divide {ctx.group} = {ctx.p}^{ctx.m} - 1")
    return ctx.primitive ** (ctx.group // n)


def min_extension_for_order(p: int, n: int) -> int | None:
    """Multiplicative order of p mod n: the least m with n | p^m - 1.

    Returns None ("impossible") when p divides n.
    """
    if n < 1:
        raise FieldError("n must be positive")
    if n == 1:
        return 1
    if n % p == 0:
        return None
    m = 1
    r = p % n
    while r != 1:
        r = (r * p) % n
        m += 1
    return m


# ---------------------------------------------------------------------------
# embeddings GF(p^m) -> GF(p^b), m | b
# ---------------------------------------------------------------------------

class FieldEmbedding:
    """Ring embedding determined by a root of the source modulus in the target.

    The root is searched inside the canonical subgroup generated by
    primitive^((p^b-1)/(p^m-1)), first match wins, so the map is deterministic
    and preserves both addition and multiplication.
    """

    def __init__(self, src: FieldCtx, dst: FieldCtx, root: FieldElement):
        self.src = src
        self.dst = dst
        self.root = root

    def __call__(self, x: FieldElement) -> FieldElement:
        if not x.ctx.same_as(self.src):
            raise FieldError("element not from the embedding's source field")
        out = self.dst.zero()
        for c in reversed(x.coeffs()):
            out = out * self.root + self.dst.scalar(c)
        return out


def find_embedding(src: FieldCtx, dst: FieldCtx) -> FieldEmbedding:
    if src.p != dst.p:
        raise FieldError("embeddings require equal characteristic")
    if dst.m % src.m != 0:
        raise FieldError(f"GF({src.p}^{src.m}) does not embed in GF({dst.p}^{dst.m})")
    if src.same_as(dst):
        return FieldEmbedding(src, dst, dst.zero() if src.m == 1 else _modulus_root_self(dst))
    if src.m == 1:
        return FieldEmbedding(src, dst, dst.zero())  # constants map by scalar()
    g = dst.primitive ** (dst.group // src.group)
    cand = dst.one()
    for _ in range(1, src.group + 1):
        cand = cand * g
        acc = dst.zero()
        for c in reversed(src.modulus):
            acc = acc * cand + dst.scalar(c)
        if not acc:
            return FieldEmbedding(src, dst, cand)
    raise FieldError("no modulus root found in target field")  # unreachable


def _modulus_root_self(ctx: FieldCtx) -> FieldElement:
    return ctx.element(ctx.p) if ctx.m > 1 else ctx.zero()  # the element "x"


# ---------------------------------------------------------------------------
# literals: "p^m:1+x+x^6" contexts, "b^9" / "0" / digit-vector elements
# ---------------------------------------------------------------------------

def parse_field(text: str) -> FieldCtx:
    text = text.strip()
    if ":" in text:
        head, poly = text.split(":", 1)
    else:
        head, poly = text, None
    if "^" in head:
        ps, ms = head.split("^", 1)
    else:
        ps, ms = head, "1"
    p, m = int(ps), int(ms)
    modulus = parse_modulus(poly, p, m) if poly else None
    return make_field(p, m, modulus)


def parse_modulus(text: str, p: int, m: int) -> tuple[int, ...]:
    coeffs = [0] * (m + 1)
    for term in text.replace("-", "+").split("+"):
        term = term.strip()
        if not term:
            continue
        if "*" in term:
            cs, xs = term.split("*", 1)
            c, xpart = int(cs), xs.strip()
        elif term.startswith("x"):
            c, xpart = 1, term
        else:
            c, xpart = int(term), ""
        if not xpart:
            d = 0
        elif xpart == "x":
            d = 1
        else:
            d = int(xpart[2:])  # "x^k"
        if d > m:
            raise FieldError(f"modulus term degree {d} exceeds {m}")
        coeffs[d] = (coeffs[d] + c) % p
    return tuple(coeffs)


def format_modulus(mod: tuple[int, ...]) -> str:
    parts = []
    for d, c in enumerate(mod):
        if c == 0:
            continue
        if d == 0:
            parts.append(str(c))
        else:
            x = "x" if d == 1 else f"x^{d}"
            parts.append(x if c == 1 else f"{c}*{x}")
    return "+".join(parts) if parts else "0"


def format_field(ctx: FieldCtx) -> str:
    return f"{ctx.p}^{ctx.m}:{format_modulus(ctx.modulus)}"


def parse_element(ctx: FieldCtx, text: str) -> FieldElement:
    text = text.strip()
    if text == "0":
        return ctx.zero()
    if text == "1":
        return ctx.one()
    if text.startswith("b^"):
        return ctx.primitive ** int(text[2:])
    if text == "b":
        return ctx.primitive
    if "," in text:
        return ctx.from_coeffs(int(c) for c in text.split(","))
    if text.isdigit():
        if ctx.p > 10:
            raise FieldError("digit-string literals require p <= 10; use commas")
        return ctx.from_coeffs(int(ch) for ch in text)
    raise FieldError(f"cannot parse field element literal {text!r}")


def format_element(x: FieldElement) -> str:
    if x.val == 0:
        return "0"
    if x.val == 1:
        return "1"
    ctx = x.ctx
    if ctx._log is not None:
        return f"b^{ctx._log[x.val]}"
    return ",".join(str(c) for c in x.coeffs())

"""Dense polynomials over a FieldCtx and the coefficient-field toolbox.

A Poly stores its coefficients as a 2-D integer array (rows = exponents,
columns = coordinates over Z_p, no trailing zero rows).  On top of the exact
ring arithmetic this module provides the coefficient Frobenius map, the
coefficient degree over a subfield, the q-spin (minimal polynomial over the
subfield of any root), polynomial orders via quotient-ring powering, and the
rational Q-transform h^{deg f} * f(g/h).

QuotientRing precomputes a flat reduction matrix for F_q[X]/(f) so that a
ring product is one convolution plus one matrix product; big Frobenius powers
ride on an F_p-linear matrix of x -> x^q.
"""

from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

from . import ff, numth
from .errors import (
    BaseNotSubfield,
    CtxMismatch,
    DivByZero,
    ImproperCoefficients,
    NotIrreducible,
    ParseError,
    RootAtZero,
)
from .ff import FieldCtx, FieldElem


def _as_elem(ctx: FieldCtx, c) -> FieldElem:
    if isinstance(c, FieldElem):
        if c.ctx != ctx:
            raise CtxMismatch("coefficient from a different field context")
        return c
    if isinstance(c, int):
        return ctx.from_int(c)
    raise TypeError(f"cannot use {type(c).__name__} as a coefficient")


class Poly:
    """Immutable dense polynomial; coeffs[i] is the coordinate row of X^i."""

    __slots__ = ("ctx", "a", "_key")

    def __init__(self, ctx: FieldCtx, arr: np.ndarray):
        self.ctx = ctx
        self.a = arr
        self._key = None

    # -- construction --

    @classmethod
    def from_coeffs(cls, ctx: FieldCtx, coeffs: Iterable) -> "Poly":
        rows = [_as_elem(ctx, c).coords for c in coeffs]
        arr = np.array(rows, dtype=ctx._dtype).reshape(len(rows), ctx.m)
        return cls(ctx, _trim_rows(arr))

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, np.zeros((0, ctx.m), dtype=ctx._dtype))

    @classmethod
    def one(cls, ctx: FieldCtx) -> "Poly":
        return cls.from_coeffs(ctx, [1])

    @classmethod
    def x(cls, ctx: FieldCtx) -> "Poly":
        return cls.from_coeffs(ctx, [0, 1])

    @classmethod
    def monomial(cls, ctx: FieldCtx, k: int, coeff=1) -> "Poly":
        c = _as_elem(ctx, coeff)
        arr = np.zeros((k + 1, ctx.m), dtype=ctx._dtype)
        arr[k] = c.vec()
        return cls(ctx, _trim_rows(arr))

    @classmethod
    def binomial(cls, ctx: FieldCtx, n: int, a) -> "Poly":
        """X^n - a."""
        c = _as_elem(ctx, a)
        arr = np.zeros((n + 1, ctx.m), dtype=ctx._dtype)
        arr[0] = ctx.vneg(c.vec())
        arr[n] = (arr[n] + ctx.vone()) % ctx.p
        return cls(ctx, _trim_rows(arr))

    # -- basic views --

    @property
    def degree(self) -> int:
        return len(self.a) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return len(self.a) == 0

    def coeff(self, i: int) -> FieldElem:
        if i < 0 or i > self.degree:
            return self.ctx.zero()
        return self.ctx.from_vec(self.a[i])

    def lead(self) -> FieldElem:
        if self.is_zero():
            raise DivByZero("zero polynomial has no leading coefficient")
        return self.ctx.from_vec(self.a[-1])

    def is_monic(self) -> bool:
        return not self.is_zero() and self.ctx.from_vec(self.a[-1]) == self.ctx.one()

    def key(self):
        """Hashable canonical key: (degree, serialized coefficient tuple)."""
        if self._key is None:
            ser = tuple(
                tuple(int(c) for c in reversed(self.a[i]))
                for i in range(len(self.a) - 1, -1, -1)
            )
            self._key = (self.degree, ser)
        return self._key

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.ctx == other.ctx
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return poly_text(self)

    # -- arithmetic --

    def _peer(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise CtxMismatch("polynomials from different field contexts")
            return other
        if isinstance(other, (FieldElem, int)):
            return Poly.from_coeffs(self.ctx, [_as_elem(self.ctx, other)])
        return NotImplemented

    def __add__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return o
        n = max(len(self.a), len(o.a))
        arr = np.zeros((n, self.ctx.m), dtype=self.ctx._dtype)
        arr[: len(self.a)] += self.a
        arr[: len(o.a)] += o.a
        return Poly(self.ctx, _trim_rows(arr % self.ctx.p))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return o
        n = max(len(self.a), len(o.a))
        arr = np.zeros((n, self.ctx.m), dtype=self.ctx._dtype)
        arr[: len(self.a)] += self.a
        arr[: len(o.a)] -= o.a
        return Poly(self.ctx, _trim_rows(arr % self.ctx.p))

    def __rsub__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return Poly(self.ctx, (-self.a) % self.ctx.p)

    def __mul__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return o
        return Poly(self.ctx, _trim_rows(_mul_arr(self.ctx, self.a, o.a)))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative polynomial powers are not defined")
        out = Poly.one(self.ctx)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __divmod__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise DivByZero("polynomial division by zero")
        ctx = self.ctx
        if self.degree < o.degree:
            return Poly.zero(ctx), self
        inv_lead = ctx.vinv(o.a[-1])
        r = self.a.copy()
        db = o.degree
        quot = np.zeros((self.degree - db + 1, ctx.m), dtype=ctx._dtype)
        for k in range(self.degree - db, -1, -1):
            top = r[k + db]
            if not top.any():
                continue
            c = ctx.vmul(top, inv_lead)
            quot[k] = c
            Mc = ctx.mult_matrix(c)
            r[k : k + db + 1] = (r[k : k + db + 1] - o.a @ Mc.T) % ctx.p
        return Poly(ctx, _trim_rows(quot)), Poly(ctx, _trim_rows(r[:db]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def scaled(self, c) -> "Poly":
        """Scalar multiple c * self."""
        e = _as_elem(self.ctx, c)
        if e.is_zero():
            return Poly.zero(self.ctx)
        Mc = self.ctx.mult_matrix(e.vec())
        return Poly(self.ctx, _trim_rows(self.a @ Mc.T % self.ctx.p))

    def monic(self) -> "Poly":
        if self.is_zero() or self.is_monic():
            return self
        return self.scaled(self.ctx.from_vec(self.ctx.vinv(self.a[-1])))

    def eval(self, x: FieldElem) -> FieldElem:
        e = _as_elem(self.ctx, x)
        ctx = self.ctx
        acc = ctx.vzero()
        xv = e.vec()
        for i in range(len(self.a) - 1, -1, -1):
            acc = (ctx.vmul(acc, xv) + self.a[i]) % ctx.p
        return ctx.from_vec(acc)

    def derivative(self) -> "Poly":
        if self.degree < 1:
            return Poly.zero(self.ctx)
        mult = np.arange(1, len(self.a), dtype=np.int64).reshape(-1, 1)
        return Poly(self.ctx, _trim_rows(self.a[1:] * mult % self.ctx.p))


def _trim_rows(arr: np.ndarray) -> np.ndarray:
    n = len(arr)
    while n > 0 and not arr[n - 1].any():
        n -= 1
    return arr[:n]


def _mul_arr(ctx: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact product of coefficient arrays; result length la+lb-1, reduced."""
    if len(A) == 0 or len(B) == 0:
        return np.zeros((0, ctx.m), dtype=ctx._dtype)
    p, m = ctx.p, ctx.m
    if m == 1:
        conv = np.convolve(A[:, 0], B[:, 0]) % p
        return conv.reshape(-1, 1)
    out = np.zeros((len(A) + len(B) - 1, 2 * m - 1), dtype=ctx._dtype)
    for u in range(m):
        cu = A[:, u]
        if not cu.any():
            continue
        for v in range(m):
            if B[:, v].any():
                out[:, u + v] += np.convolve(cu, B[:, v])
    out %= p
    lo, hi = out[:, :m], out[:, m:]
    if hi.size:
        lo = (lo + hi @ ctx._red) % p
    return lo


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor."""
    if f.ctx != g.ctx:
        raise CtxMismatch("polynomials from different field contexts")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class QuotientRing:
    """F_q[X]/(f) on fixed-length coefficient blocks with matrix reduction."""

    def __init__(self, f: Poly):
        if f.degree < 1:
            raise DivByZero("quotient modulus must have degree >= 1")
        f = f.monic()
        self.f = f
        self.ctx = f.ctx
        self.D = f.degree
        ctx, D, m = self.ctx, f.degree, f.ctx.m
        blocks = np.zeros((max(D - 1, 0), D, m), dtype=ctx._dtype)
        if D > 1:
            row = (-f.a[:D]) % ctx.p  # X^D mod f
            blocks[0] = row
            for i in range(1, D - 1):
                top = row[D - 1].copy()
                row = np.vstack([np.zeros((1, m), dtype=ctx._dtype), row[: D - 1]])
                if top.any():
                    row = (row + blocks[0] @ ctx.mult_matrix(top).T) % ctx.p
                blocks[i] = row
        # flat reduction matrix: row (i*m + u) = X^{D+i} * Y^u mod f, flattened
        R = np.zeros(((D - 1) * m, D * m), dtype=ctx._dtype)
        for u in range(m):
            if m == 1:
                R[0::1] = blocks.reshape(max(D - 1, 0), D * m)
                break
            yu = ctx.vzero()
            yu[u] = 1
            Mu = ctx.mult_matrix(yu)
            R[u::m] = (blocks @ Mu.T % ctx.p).reshape(max(D - 1, 0), D * m)
        self._R = R
        self._frob: np.ndarray | None = None
        self._q = ctx.order

    def lift(self, g: Poly) -> np.ndarray:
        """Fixed (D, m) block of g mod f."""
        r = (g % self.f).a
        out = np.zeros((self.D, self.ctx.m), dtype=self.ctx._dtype)
        out[: len(r)] = r
        return out

    def to_poly(self, block: np.ndarray) -> Poly:
        return Poly(self.ctx, _trim_rows(block.copy()))

    def one(self) -> np.ndarray:
        out = np.zeros((self.D, self.ctx.m), dtype=self.ctx._dtype)
        out[0] = self.ctx.vone()
        return out

    def x(self) -> np.ndarray:
        return self.lift(Poly.x(self.ctx))

    def mul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        ctx, D = self.ctx, self.D
        prod = _mul_arr(ctx, u, v)
        out = np.zeros((D, ctx.m), dtype=ctx._dtype)
        out[: min(D, len(prod))] = prod[:D]
        hi = prod[D:]
        if len(hi):
            flat = hi.reshape(-1) @ self._R[: hi.size]
            out = (out + flat.reshape(D, ctx.m)) % ctx.p
        return out

    def pow(self, u: np.ndarray, e: int) -> np.ndarray:
        acc = None
        base = u
        while e:
            if e & 1:
                acc = base.copy() if acc is None else self.mul(acc, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return self.one() if acc is None else acc

    def frob_matrix(self) -> np.ndarray:
        """F_p-linear matrix of r -> r^q on flattened blocks."""
        if self._frob is None:
            ctx, D, m = self.ctx, self.D, self.ctx.m
            xq = self.pow(self.x(), self._q)
            blocks = np.zeros((D, D, m), dtype=ctx._dtype)
            blocks[0] = self.one()
            for j in range(1, D):
                blocks[j] = self.mul(blocks[j - 1], xq)
            F = np.zeros((D * m, D * m), dtype=ctx._dtype)
            # coefficients lie in F_q = the full ctx, so x -> x^q fixes them:
            # the column for basis (j, Y^u) is Y^u * (X^q)^j
            for u in range(m):
                if m == 1:
                    F[0::1] = blocks.reshape(D, D * m)
                    break
                yu = ctx.vzero()
                yu[u] = 1
                Mu = ctx.mult_matrix(yu)
                F[u::m] = (blocks @ Mu.T % ctx.p).reshape(D, D * m)
            self._frob = F
        return self._frob

    def frob(self, u: np.ndarray) -> np.ndarray:
        """u^q via the cached Frobenius matrix."""
        return (u.reshape(-1) @ self.frob_matrix() % self.ctx.p).reshape(
            self.D, self.ctx.m
        )

    def is_one(self, u: np.ndarray) -> bool:
        return bool(np.array_equal(u, self.one()))


def pow_mod(f: Poly, e: int, mod: Poly) -> Poly:
    """f^e mod `mod`, exact."""
    if f.ctx != mod.ctx:
        raise CtxMismatch("polynomials from different field contexts")
    ring = QuotientRing(mod)
    return ring.to_poly(ring.pow(ring.lift(f), e))


# -- irreducibility (Rabin) --------------------------------------------------------

def rabin_irreducible(f: Poly) -> bool:
    """Exact irreducibility over f's context.

    f of degree k is irreducible iff X^{q^k} = X mod f and
    gcd(f, X^{q^{k/t}} - X) = 1 for every prime t | k.
    """
    k = f.degree
    if k < 1:
        return False
    if k == 1:
        return True
    f = f.monic()
    ring = QuotientRing(f)
    F = ring.frob_matrix()
    x = ring.x()
    need = {k // t for t in numth.factorize(k).primes()}
    cur = x.reshape(-1)
    xp = Poly.x(f.ctx)
    for i in range(1, k + 1):
        cur = cur @ F % f.ctx.p
        if i in need:
            g = poly_gcd(f, ring.to_poly(cur.reshape(ring.D, f.ctx.m)) - xp)
            if g.degree > 0:
                return False
    return bool(np.array_equal(cur.reshape(ring.D, f.ctx.m), x))


# -- coefficient-field maps ---------------------------------------------------------

def _base_degree(ctx: FieldCtx, base_q) -> int:
    """Degree e over F_p of the coefficient subfield F_q, q = p^e."""
    if isinstance(base_q, FieldCtx):
        if base_q.p != ctx.p or ctx.m % base_q.m != 0:
            raise BaseNotSubfield(f"F_{base_q.p}^{base_q.m} is not a subfield")
        return base_q.m
    q = int(base_q)
    if q < 2:
        raise BaseNotSubfield(f"{q} is not a prime power")
    fz = numth.factorize(q)
    if len(fz.factors) != 1:
        raise BaseNotSubfield(f"{q} is not a prime power")
    (p, e), = fz.factors.items()
    if p != ctx.p or ctx.m % e != 0:
        raise BaseNotSubfield(f"F_{q} is not a subfield of F_{ctx.p}^{ctx.m}")
    return e


def coeff_frobenius(h: Poly, j: int, base_q) -> Poly:
    """Apply x -> x^{q^j} to every coefficient."""
    e = _base_degree(h.ctx, base_q)
    if j < 0:
        raise ValueError("j must be >= 0")
    ctx = h.ctx
    if ctx.m == 1 or h.is_zero():
        return h
    mat = ctx.frob_matrix((e * j) % ctx.m)
    return Poly(ctx, h.a @ mat.T % ctx.p)


def coeff_degree(h: Poly, base_q) -> int:
    """Least j >= 1 with h^(j) = h; divides ctx.m/e."""
    e = _base_degree(h.ctx, base_q)
    ctx = h.ctx
    top = ctx.m // e
    # zero coefficient rows are fixed by any Frobenius; test only the rest
    sub = h.a[h.a.any(axis=1)] if len(h.a) else h.a
    for j in numth.divisors(top):
        mat = ctx.frob_matrix((e * j) % ctx.m)
        if np.array_equal(sub @ mat.T % ctx.p, sub):
            return j
    return top  # j = top always fixes F_{p^m}


def _spin_out_ctx(ctx: FieldCtx, base_q) -> FieldCtx:
    if isinstance(base_q, FieldCtx):
        return base_q
    e = _base_degree(ctx, base_q)
    return ctx if e == ctx.m else ff.make_extension(ctx.p, e)


def q_spin(h: Poly, base_q) -> Poly:
    """Minimal polynomial over F_q of any root of h: prod_{j<d} h^(j).

    The result is re-expressed over the F_q context (the given FieldCtx, or
    the canonical context for integer base_q).  Binomials take a fast path:
    the conjugate product is accumulated in Y = X^{deg h} space.
    """
    if h.is_zero() or h.degree < 1 or not h.is_monic():
        raise ImproperCoefficients("spin needs a monic nonconstant polynomial")
    ctx = h.ctx
    e = _base_degree(ctx, base_q)
    out_ctx = _spin_out_ctx(ctx, base_q)
    d = coeff_degree(h, base_q)
    if d > 1 and _is_binomial(h):
        D = h.degree
        c0 = h.a[0]
        g = [ctx.vone()]  # product over Y of (Y + c0^{q^u}), ascending coeffs
        for u in range(d):
            cu = ctx.vconj(c0, (e * u) % ctx.m)
            g = [ctx.vzero()] + g
            for i in range(len(g) - 1):
                g[i] = (g[i] + ctx.vmul(g[i + 1], cu)) % ctx.p
        arr = np.zeros((d * D + 1, ctx.m), dtype=ctx._dtype)
        for l, vec in enumerate(g):
            arr[l * D] = vec
        S = Poly(ctx, arr)
    else:
        S = h
        for u in range(1, d):
            S = S * coeff_frobenius(h, u, base_q)
    return _express_over(S, out_ctx)


def _is_binomial(h: Poly) -> bool:
    return h.degree >= 1 and not _trim_rows(h.a[1:-1]).size


def _express_over(S: Poly, out_ctx: FieldCtx) -> Poly:
    """Rewrite S (coefficients lying in the subfield) over out_ctx."""
    ctx = S.ctx
    if out_ctx == ctx:
        return S
    emb = ff.embed(out_ctx, ctx)
    mask = S.a.any(axis=1) if len(S.a) else np.zeros(0, dtype=bool)
    out = np.zeros((len(S.a), out_ctx.m), dtype=out_ctx._dtype)
    if mask.any():
        w = S.a[mask] @ emb._T.T % ctx.p
        if w[:, out_ctx.m :].any():
            raise ImproperCoefficients("spin does not land in the base field")
        out[mask] = w[:, : out_ctx.m].astype(out_ctx._dtype)
    return Poly(out_ctx, _trim_rows(out))


# -- polynomial order ---------------------------------------------------------------

def poly_order(f: Poly) -> int:
    """Least e with f | X^e - 1, for irreducible f with f(0) != 0.

    This is the multiplicative order of the residue class of X in the field
    F_q[X]/(f), i.e. the element order of a root of f in F_{q^{deg f}};
    computed by dividing primes out of q^{deg f} - 1.
    """
    if f.degree < 1 or not rabin_irreducible(f):
        raise NotIrreducible("polynomial order needs an irreducible polynomial")
    if not f.a[0].any():
        raise RootAtZero("polynomial order undefined when X divides f")
    ctx = f.ctx
    ring = QuotientRing(f.monic())
    t = ctx.order ** f.degree - 1
    x = ring.x()
    for ell in numth.factored_power_minus_one(ctx.p, ctx.m * f.degree).primes():
        while t % ell == 0 and ring.is_one(ring.pow(x, t // ell)):
            t //= ell
    return t


def has_order(f: Poly, e: int) -> bool:
    """Exact predicate poly_order(f) == e for irreducible f, without the
    full divide-out: checks X^e = 1 and X^{e/l} != 1 for every prime l | e."""
    ring = QuotientRing(f.monic())
    x = ring.x()
    if not ring.is_one(ring.pow(x, e)):
        return False
    return all(
        not ring.is_one(ring.pow(x, e // ell))
        for ell in numth.factorize(e).primes()
    )


# -- Q-transform --------------------------------------------------------------------

def q_transform(f: Poly, g: Poly, h: Poly) -> Poly:
    """h^{deg f} * f(g/h), exact."""
    if f.ctx != g.ctx or f.ctx != h.ctx:
        raise CtxMismatch("polynomials from different field contexts")
    if h.is_zero():
        raise DivByZero("Q-transform denominator is zero")
    n = f.degree
    if n < 0:
        return f
    acc = Poly.from_coeffs(f.ctx, [f.coeff(n)])
    hp = Poly.one(f.ctx)
    for i in range(n - 1, -1, -1):
        hp = hp * h
        acc = acc * g + hp.scaled(f.coeff(i))
    return acc


# -- factorizations ------------------------------------------------------------------

class FactorEntry(NamedTuple):
    poly: Poly
    mult: int
    degree: int
    order: Union[int, None]


def _entry_sort_key(entry: FactorEntry):
    return entry.poly.key()


class Factorization:
    """base = scale * prod(factor^mult); factors canonically sorted."""

    def __init__(
        self,
        base: Poly,
        factors: Sequence[FactorEntry],
        plan=None,
        scale: FieldElem | None = None,
    ):
        self.base = base
        self.factors = sorted(factors, key=_entry_sort_key)
        self.plan = plan
        self.scale = base.ctx.one() if scale is None else scale

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def product(self) -> Poly:
        out = Poly.one(self.base.ctx)
        for entry in self.factors:
            out = out * entry.poly ** entry.mult
        return out.scaled(self.scale)

    def multiset(self) -> dict:
        """Factor multiset (poly key -> total multiplicity)."""
        out: dict = {}
        for entry in self.factors:
            out[entry.poly.key()] = out.get(entry.poly.key(), 0) + entry.mult
        return out

    def __repr__(self):
        inner = ", ".join(
            f"({poly_text(e.poly)})^{e.mult}" if e.mult > 1 else poly_text(e.poly)
            for e in self.factors
        )
        return f"Factorization({poly_text(self.base)} = {inner})"


# -- text format --------------------------------------------------------------------

def poly_text(f: Poly) -> str:
    """'c_k*x^k + ... + c_0', omitting zero terms and unit coefficients."""
    if f.is_zero():
        return "0"
    one = f.ctx.one()
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeff(i)
        if c.is_zero():
            continue
        cs = ff.element_text(c)
        if i == 0:
            parts.append(cs)
        else:
            xs = "x" if i == 1 else f"x^{i}"
            parts.append(xs if c == one else f"{cs}*{xs}")
    return " + ".join(parts)


def parse_poly(ctx: FieldCtx, s: str) -> Poly:
    """Inverse of poly_text; accepts any '+'-joined monomial list."""
    s = s.strip()
    if not s:
        raise ParseError("empty polynomial")
    if s == "0":
        return Poly.zero(ctx)
    # split on '+' outside coordinate brackets
    terms, depth, cur = [], 0, []
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "+" and depth == 0:
            terms.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    terms.append("".join(cur))
    coeffs: dict[int, FieldElem] = {}
    for term in terms:
        term = term.strip()
        if not term:
            raise ParseError(f"empty term in {s!r}")
        if "x" in term:
            head, _, tail = term.partition("x")
            head = head.strip()
            if head:
                if not head.endswith("*"):
                    raise ParseError(f"missing '*' in term {term!r}")
                head = head[:-1].strip()
            c = ff.parse_element(ctx, head) if head else ctx.one()
            tail = tail.strip()
            if tail.startswith("^"):
                try:
                    k = int(tail[1:])
                except ValueError:
                    raise ParseError(f"bad exponent in term {term!r}") from None
            elif tail == "":
                k = 1
            else:
                raise ParseError(f"bad exponent in term {term!r}")
        else:
            c = ff.parse_element(ctx, term)
            k = 0
        if k < 0:
            raise ParseError("negative exponent")
        coeffs[k] = coeffs.get(k, ctx.zero()) + c
    deg = max(coeffs)
    return Poly.from_coeffs(ctx, [coeffs.get(i, ctx.zero()) for i in range(deg + 1)])

"""Prime fields and their extensions with deterministic construction.

A field F_{p^m} is realized as F_p[Y]/(modulus).  Construction is fully
deterministic: the auto-selected modulus is the lexicographically smallest
monic irreducible of degree m (comparing the tuple (a_{m-1}, ..., a_0)
ascending), the cached generator is the coordinate-lex smallest element of
full multiplicative order, and root choices inside embed/dth_root follow the
same coordinate-lex rule.  Element coordinates are length-m vectors over Z_p
with index = power of the field variable.

The numeric kernel keeps coordinates in numpy int64 vectors; products reduce
through a precomputed matrix of X^{m+i} mod modulus rows, so a single field
multiplication is one convolution plus one matrix product.
"""

from __future__ import annotations

import functools
import math
import threading
from typing import Iterable, Sequence

import numpy as np

from . import numth
from .errors import (
    CtxMismatch,
    DegreeGuard,
    DegreeMismatch,
    NoRoot,
    NotASubfield,
    NotPrime,
    OrderNotDividing,
    ParseError,
    ReducibleModulus,
    ZeroElement,
)

# BSGS-based discrete logs are used only while every prime factor of the group
# order stays below this; beyond it dth_root switches to the constructive
# subgroup method (see dth_root).
_DLOG_PRIME_LIMIT = 1 << 28

# embed/root searches enumerate subfields up to this many elements
_SUBFIELD_ENUM_LIMIT = 10 ** 6


# -- mod-p polynomial helpers (1-D ascending coefficient arrays) ---------------

def _red_rows(mod: np.ndarray, p: int, count: int, dtype) -> np.ndarray:
    """Rows i < count give the coordinates of X^{m+i} mod the monic `mod`."""
    m = len(mod) - 1
    rows = np.zeros((count, m), dtype=dtype)
    if count == 0 or m == 0:
        return rows
    row = (-mod[:m]) % p
    rows[0] = row
    for i in range(1, count):
        top = row[m - 1]
        row = np.concatenate(([0], row[: m - 1]))
        row = (row + top * rows[0]) % p
        rows[i] = row
    return rows


def _trim(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if nz.size else a[:0]


def _rem_zp(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Remainder of a mod b over Z_p; b nonzero, both trimmed."""
    a = a.copy()
    db = len(b) - 1
    inv = pow(int(b[-1]), p - 2, p)
    while len(a) - 1 >= db and a.size:
        c = a[-1] * inv % p
        a[-db - 1:] = (a[-db - 1:] - c * b) % p
        a = _trim(a)
    return a


def _gcd_deg_zp(a: np.ndarray, b: np.ndarray, p: int) -> int:
    a, b = _trim(a), _trim(b)
    while b.size:
        a, b = b, _rem_zp(a, b, p)
    return len(a) - 1


def _is_irreducible_zp(f: np.ndarray, p: int) -> bool:
    """Ben-Or test: deg-m f is irreducible iff no factor of degree <= m/2."""
    m = len(f) - 1
    if m == 1:
        return True
    if f[0] == 0:
        return False  # divisible by X
    dtype = f.dtype
    red = _red_rows(f, p, m - 1, dtype)

    def mul(a, b):
        conv = np.convolve(a, b) % p
        lo, hi = conv[:m], conv[m:]
        if hi.size:
            lo = (lo + hi @ red[: hi.size]) % p
        return lo

    x = np.zeros(m, dtype=dtype)
    x[1] = 1
    cur = x
    for _ in range(m // 2):
        acc = None  # cur^p by square and multiply
        base = cur
        e = p
        while e:
            if e & 1:
                acc = base if acc is None else mul(acc, base)
            e >>= 1
            if e:
                base = mul(base, base)
        cur = acc
        if _gcd_deg_zp(_trim((cur - x) % p), f, p) > 0:
            return False
    return True


class FieldCtx:
    """Immutable field context F_{p^m}; equality and hash by (p, m, modulus)."""

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.modulus = modulus
        self.order = p ** m
        self.units = self.order - 1
        big = (p - 1) * (p - 1) * (m + 1) >= (1 << 62)
        self._dtype = object if big else np.int64
        self._mod_arr = np.array(modulus, dtype=self._dtype)
        self._red = _red_rows(self._mod_arr, p, m - 1, self._dtype)
        self._gen: FieldElem | None = None
        self._frob: dict[int, np.ndarray] = {}
        self._lock = threading.Lock()

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"FieldCtx({field_text(self)})"

    # -- coordinate-vector kernel (arrays of length m, ascending powers) --

    def vzero(self) -> np.ndarray:
        return np.zeros(self.m, dtype=self._dtype)

    def vone(self) -> np.ndarray:
        v = self.vzero()
        v[0] = 1
        return v

    def vadd(self, a, b):
        return (a + b) % self.p

    def vsub(self, a, b):
        return (a - b) % self.p

    def vneg(self, a):
        return (-a) % self.p

    def vmul(self, a, b):
        if self.m == 1:
            return a * b % self.p
        conv = np.convolve(a, b) % self.p
        lo, hi = conv[: self.m], conv[self.m :]
        if hi.size:
            lo = (lo + hi @ self._red[: hi.size]) % self.p
        return lo

    def vpow(self, a, e: int):
        if e < 0:
            return self.vpow(self.vinv(a), -e)
        if self.m == 1:
            return np.array([pow(int(a[0]), e, self.p)], dtype=self._dtype)
        acc = None
        base = a
        while e:
            if e & 1:
                acc = base.copy() if acc is None else self.vmul(acc, base)
            e >>= 1
            if e:
                base = self.vmul(base, base)
        return self.vone() if acc is None else acc

    def vinv(self, a):
        if not a.any():
            raise ZeroElement("zero has no inverse")
        return self.vpow(a, self.units - 1)

    def mult_matrix(self, s) -> np.ndarray:
        """Matrix of multiplication by s acting on coordinate columns."""
        m = self.m
        M = np.empty((m, m), dtype=self._dtype)
        col = np.array(s, dtype=self._dtype)
        M[:, 0] = col
        for j in range(1, m):
            top = col[m - 1]
            col = np.concatenate(([0], col[: m - 1]))
            if top:
                col = (col + top * self._red[0]) % self.p
            M[:, j] = col
        return M

    def frob_matrix(self, j: int = 1) -> np.ndarray:
        """Matrix of x -> x^{p^j} on coordinates."""
        j %= self.m
        with self._lock:
            got = self._frob.get(j)
            if got is not None:
                return got
            if 0 not in self._frob:
                self._frob[0] = np.eye(self.m, dtype=self._dtype)
            if self.m > 1 and 1 not in self._frob:
                F = np.empty((self.m, self.m), dtype=self._dtype)
                x = self.vzero()
                x[1] = 1
                xp = self.vpow(x, self.p)
                col = self.vone()
                F[:, 0] = col
                for i in range(1, self.m):
                    col = self.vmul(col, xp)
                    F[:, i] = col
                self._frob[1] = F
            k = max(i for i in self._frob if i <= j)
            mat = self._frob[k]
            while k < j:
                mat = mat @ self._frob[1] % self.p
                k += 1
                self._frob[k] = mat
            return self._frob[j]

    def vconj(self, a, j: int):
        """a^{p^j} through the cached Frobenius matrix."""
        if self.m == 1:
            return a
        return self.frob_matrix(j) @ a % self.p

    # -- elements --

    def el(self, coords: Iterable[int]) -> "FieldElem":
        c = tuple(int(v) % self.p for v in coords)
        if len(c) != self.m:
            raise DegreeMismatch(f"expected {self.m} coordinates, got {len(c)}")
        return FieldElem(self, c)

    def from_vec(self, v) -> "FieldElem":
        return FieldElem(self, tuple(int(x) for x in v))

    def from_int(self, c: int) -> "FieldElem":
        v = self.vzero()
        v[0] = c % self.p
        return self.from_vec(v)

    def zero(self) -> "FieldElem":
        return self.from_vec(self.vzero())

    def one(self) -> "FieldElem":
        return self.from_vec(self.vone())

    def x_class(self) -> "FieldElem":
        """The residue class of the field variable itself."""
        if self.m == 1:
            return self.from_int(-self.modulus[0])
        v = self.vzero()
        v[1] = 1
        return self.from_vec(v)

    def element_from_index(self, idx: int) -> "FieldElem":
        """Elements enumerated in coordinate-lex order; index in [0, p^m)."""
        coords = []
        for _ in range(self.m):
            coords.append(idx % self.p)
            idx //= self.p
        return FieldElem(self, tuple(coords))

    def index_of(self, x: "FieldElem") -> int:
        idx = 0
        for c in reversed(x.coords):
            idx = idx * self.p + c
        return idx

    @property
    def generator(self) -> "FieldElem":
        with self._lock:
            if self._gen is None:
                self._gen = self._find_generator()
            return self._gen

    def _find_generator(self) -> "FieldElem":
        if self.units == 1:
            return self.one()
        primes = numth.factored_power_minus_one(self.p, self.m).primes()
        one = self.vone()
        for idx in range(2, self.order):
            v = np.array(self.element_from_index(idx).coords, dtype=self._dtype)
            if all(
                not np.array_equal(self.vpow(v, self.units // ell), one)
                for ell in primes
            ):
                return self.from_vec(v)
        raise RuntimeError("no generator found; modulus not irreducible?")


class FieldElem:
    """Immutable element of a FieldCtx; coords ascending, values in [0, p)."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: FieldCtx, coords: tuple[int, ...]):
        self.ctx = ctx
        self.coords = coords

    def vec(self) -> np.ndarray:
        return np.array(self.coords, dtype=self.ctx._dtype)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _peer(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise CtxMismatch("elements from different field contexts")
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return o
        return self.ctx.from_vec(self.ctx.vadd(self.vec(), o.vec()))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return o
        return self.ctx.from_vec(self.ctx.vsub(self.vec(), o.vec()))

    def __rsub__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return o
        return self.ctx.from_vec(self.ctx.vsub(o.vec(), self.vec()))

    def __mul__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return o
        return self.ctx.from_vec(self.ctx.vmul(self.vec(), o.vec()))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._peer(other)
        if o is NotImplemented:
            return o
        return self.ctx.from_vec(self.ctx.vmul(self.vec(), self.ctx.vinv(o.vec())))

    def __neg__(self):
        return self.ctx.from_vec(self.ctx.vneg(self.vec()))

    def __pow__(self, e: int):
        if e < 0:
            return self.ctx.from_vec(self.ctx.vpow(self.ctx.vinv(self.vec()), -e))
        return self.ctx.from_vec(self.ctx.vpow(self.vec(), e))

    def conj(self, j: int) -> "FieldElem":
        return self.ctx.from_vec(self.ctx.vconj(self.vec(), j))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        return (
            isinstance(other, FieldElem)
            and self.ctx == other.ctx
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.coords, self.ctx.order))

    def __repr__(self):
        return element_text(self)


# -- construction ---------------------------------------------------------------

_CTX_CACHE: dict[tuple[int, int, tuple[int, ...]], FieldCtx] = {}
_AUTO_MODULUS: dict[tuple[int, int], tuple[int, ...]] = {}
_CACHE_LOCK = threading.Lock()


def _lex_modulus(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m, ordering (a_{m-1},...,a_0)."""
    dtype = object if (p - 1) * (p - 1) * (m + 1) >= (1 << 62) else np.int64
    for idx in range(p ** m):  # idx counts (a_{m-1}, ..., a_0) lexicographically
        low = []
        k = idx
        for _ in range(m):
            low.append(k % p)
            k //= p
        cand = np.array(low + [1], dtype=dtype)
        if _is_irreducible_zp(cand, p):
            return tuple(int(c) for c in cand)
    raise RuntimeError(f"no irreducible of degree {m} over F_{p}")


def make_extension(
    p: int, m: int, modulus: Sequence[int] | None = None
) -> FieldCtx:
    """Deterministic field context; `modulus` coefficients ascending, monic."""
    if not numth.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise DegreeMismatch("extension degree must be >= 1")
    if modulus is None:
        with _CACHE_LOCK:
            key = (p, m)
            if key not in _AUTO_MODULUS:
                _AUTO_MODULUS[key] = _lex_modulus(p, m)
            mod = _AUTO_MODULUS[key]
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != m + 1:
            raise DegreeMismatch(
                f"modulus needs {m + 1} coefficients, got {len(mod)}"
            )
        if mod[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        dtype = object if (p - 1) * (p - 1) * (m + 1) >= (1 << 62) else np.int64
        if not _is_irreducible_zp(np.array(mod, dtype=dtype), p):
            raise ReducibleModulus(f"modulus {mod} is reducible over F_{p}")
    with _CACHE_LOCK:
        key3 = (p, m, mod)
        if key3 not in _CTX_CACHE:
            _CTX_CACHE[key3] = FieldCtx(p, m, mod)
        return _CTX_CACHE[key3]


# -- orders and roots of unity ----------------------------------------------------

def element_order(x: FieldElem) -> int:
    """Least t >= 1 with x^t = 1, by dividing primes out of p^m - 1."""
    if x.is_zero():
        raise ZeroElement("order of zero is undefined")
    ctx = x.ctx
    t = ctx.units
    if t == 1:
        return 1
    v = x.vec()
    one = ctx.vone()
    for ell in numth.factored_power_minus_one(ctx.p, ctx.m).primes():
        while t % ell == 0 and np.array_equal(ctx.vpow(v, t // ell), one):
            t //= ell
    return t


def element_has_order(x: FieldElem, d: int) -> bool:
    """Exact predicate ord(x) == d without computing the full order."""
    if x.is_zero():
        raise ZeroElement("order of zero is undefined")
    ctx = x.ctx
    v = x.vec()
    one = ctx.vone()
    if not np.array_equal(ctx.vpow(v, d), one):
        return False
    return all(
        not np.array_equal(ctx.vpow(v, d // ell), one)
        for ell in numth.factorize(d).primes()
    )


@functools.lru_cache(maxsize=4096)
def primitive_root_of_unity(ctx: FieldCtx, d: int) -> FieldElem:
    """zeta_d = generator^{(p^m - 1)/d}."""
    if d < 1 or ctx.units % d != 0:
        raise OrderNotDividing(f"{d} does not divide {ctx.units}")
    return ctx.generator ** (ctx.units // d)


# -- discrete logarithms and d-th roots -------------------------------------------

def _bsgs(ctx: FieldCtx, base_v, target_v, n: int) -> int:
    """Log of target in the cyclic group <base> of known order n."""
    if n == 1:
        return 0
    B = math.isqrt(n - 1) + 1
    table = {}
    cur = ctx.vone()
    for j in range(B):
        table.setdefault(tuple(int(c) for c in cur), j)
        cur = ctx.vmul(cur, base_v)
    giant = ctx.vpow(base_v, ctx.units - B)  # base^{-B}
    cur = target_v
    for i in range(B + 1):
        j = table.get(tuple(int(c) for c in cur))
        if j is not None:
            return (i * B + j) % n
        cur = ctx.vmul(cur, giant)
    raise NoRoot("element not in the expected cyclic subgroup")


def _dlog_prime_power(ctx: FieldCtx, g_v, a_v, ell: int, v: int) -> int:
    """Discrete log in the subgroup of order ell^v (Pohlig-Hellman digits)."""
    N = ctx.units
    gamma = ctx.vpow(g_v, N // ell)  # fixed order-ell base
    e = 0
    for t in range(v):
        exp = N // ell ** (t + 1)
        rhs = ctx.vpow(ctx.vmul(a_v, ctx.vpow(g_v, N - e)), exp)
        d_t = _bsgs(ctx, gamma, rhs, ell)
        e += d_t * ell ** t
    return e


def _crt(pairs: list[tuple[int, int]]) -> int:
    r, m = 0, 1
    for r2, m2 in pairs:
        d = pow(m % m2, -1, m2)
        r = r + m * ((r2 - r) % m2 * d % m2)
        m *= m2
    return r % m


def _dlog(a: FieldElem) -> int:
    """Full discrete log base ctx.generator; needs a smooth group order."""
    ctx = a.ctx
    g_v = ctx.generator.vec()
    a_v = a.vec()
    pairs = []
    for ell, v in numth.factored_power_minus_one(ctx.p, ctx.m).factors.items():
        e = _dlog_prime_power(ctx, g_v, a_v, ell, v)
        pairs.append((e, ell ** v))
    return _crt(pairs) if pairs else 0


@functools.lru_cache(maxsize=4096)
def dth_root(a: FieldElem, d: int) -> FieldElem:
    """Some b with b^d = a, chosen deterministically.

    At desk scale (all prime factors of p^m - 1 small) this is the classical
    discrete-log route: a = g^e, return g^{e'} for the smallest nonnegative
    solution of d*e' = e mod p^m - 1.  For larger fields the root is built
    constructively: split the group order as A*B with B holding the primes of
    d, take an exponent-inverse root on the A-part and a subgroup discrete
    log on the (small) B-part, then return the coordinate-lex smallest of the
    gcd(d, p^m - 1) roots.
    """
    if a.is_zero():
        raise ZeroElement("zero has no d-th root here")
    if d < 1:
        raise ValueError("d must be >= 1")
    ctx = a.ctx
    N = ctx.units
    if N == 1 or d == 1:
        return a if d == 1 else ctx.one()
    g = math.gcd(d, N)
    if not np.array_equal(ctx.vpow(a.vec(), N // g), ctx.vone()):
        raise NoRoot(f"no {d}-th root exists")
    fz = numth.factored_power_minus_one(ctx.p, ctx.m)
    if N < (1 << 63) and all(ell <= _DLOG_PRIME_LIMIT for ell in fz.factors):
        e = _dlog(a)
        e_root = (e // g) * pow(d // g, -1, N // g) % (N // g)
        return ctx.generator ** e_root
    # constructive path: B collects the full d-prime part of N
    B = 1
    for ell in numth.factorize(d).primes():
        B *= ell ** numth.p_adic(N, ell)
    A = N // B
    a_v = a.vec()
    one = ctx.vone()
    if A > 1:
        cA = B * pow(B, -1, A) % N if B > 1 else 1
        xA = ctx.vpow(ctx.vpow(a_v, cA), pow(d % A, -1, A))
    else:
        xA = one
    if B > 1:
        cB = A * pow(A, -1, B) % N if A > 1 else 1
        aB = ctx.vpow(a_v, cB)
        h = ctx.vpow(ctx.generator.vec(), N // B)  # order-B subgroup base
        pairs = []
        for ell in numth.factorize(B).primes():
            v = numth.p_adic(B, ell)
            # digit-lift inside the ell-part of the subgroup
            e = 0
            gamma = ctx.vpow(h, B // ell)
            for t in range(v):
                rhs = ctx.vpow(ctx.vmul(aB, ctx.vpow(h, B - e % B)), B // ell ** (t + 1))
                e += _bsgs(ctx, gamma, rhs, ell) * ell ** t
            pairs.append((e, ell ** v))
        eB = _crt(pairs)
        gB = math.gcd(d, B)
        yB = (eB // gB) * pow(d // gB, -1, B // gB) % (B // gB)
        xB = ctx.vpow(h, yB)
    else:
        xB = one
    x0 = ctx.vmul(xA, xB)
    c = math.gcd(d, N)
    omega = ctx.vpow(ctx.generator.vec(), N // c)
    best = None
    cur = x0
    for _ in range(c):
        key = ctx.index_of(ctx.from_vec(cur))
        if best is None or key < best[0]:
            best = (key, cur)
        cur = ctx.vmul(cur, omega)
    return ctx.from_vec(best[1])


# -- embeddings -------------------------------------------------------------------

def _nullspace_basis(M: np.ndarray, p: int) -> list[np.ndarray]:
    """Basis of the null space of M over Z_p (column vectors)."""
    A = M.copy() % p
    n_rows, n_cols = A.shape
    pivots = []
    r = 0
    for c in range(n_cols):
        sel = None
        for i in range(r, n_rows):
            if A[i, c]:
                sel = i
                break
        if sel is None:
            continue
        A[[r, sel]] = A[[sel, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        for i in range(n_rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
    basis = []
    free = [c for c in range(n_cols) if c not in pivots]
    for fc in free:
        v = np.zeros(n_cols, dtype=M.dtype)
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-A[i, fc]) % p
        basis.append(v)
    return basis


class EmbeddingMap:
    """Field homomorphism F_{p^{m0}} -> F_{p^m1} fixed by a root choice.

    `root` is the image of the residue class of sub's variable, i.e. the
    coordinate-lex smallest root of sub.modulus inside sup (the natural
    identity map when sub and sup are the same context).
    """

    def __init__(self, sub: FieldCtx, sup: FieldCtx, root: FieldElem):
        self.sub = sub
        self.sup = sup
        self.root = root
        p = sub.p
        E = np.empty((sup.m, sub.m), dtype=sup._dtype)
        col = sup.vone()
        E[:, 0] = col
        rv = root.vec()
        for i in range(1, sub.m):
            col = sup.vmul(col, rv)
            E[:, i] = col
        self._E = E
        # Gauss-reduce [E | I] so that T @ E = [I; 0]; T then solves preimages
        A = E.copy()
        T = np.eye(sup.m, dtype=sup._dtype)
        r = 0
        for c in range(sub.m):
            sel = next(i for i in range(r, sup.m) if A[i, c])
            A[[r, sel]] = A[[sel, r]]
            T[[r, sel]] = T[[sel, r]]
            inv = pow(int(A[r, c]), p - 2, p)
            A[r] = A[r] * inv % p
            T[r] = T[r] * inv % p
            for i in range(sup.m):
                if i != r and A[i, c]:
                    f = A[i, c]
                    A[i] = (A[i] - f * A[r]) % p
                    T[i] = (T[i] - f * T[r]) % p
            r += 1
        self._T = T

    def apply_vec(self, v) -> np.ndarray:
        return self._E @ v % self.sup.p

    def preimage_vec(self, v) -> np.ndarray:
        w = self._T @ v % self.sup.p
        if w[self.sub.m :].any():
            raise NotASubfield("element is not in the embedded subfield")
        return w[: self.sub.m]

    def __call__(self, x: FieldElem) -> FieldElem:
        return apply_embedding(self, x)


_EMBED_CACHE: dict[tuple[FieldCtx, FieldCtx], EmbeddingMap] = {}


def embed(sub: FieldCtx, sup: FieldCtx) -> EmbeddingMap:
    """Embedding along the coordinate-lex smallest root of sub.modulus."""
    if sub.p != sup.p or sup.m % sub.m != 0:
        raise NotASubfield(f"F_{sub.p}^{sub.m} does not embed in F_{sup.p}^{sup.m}")
    with _CACHE_LOCK:
        got = _EMBED_CACHE.get((sub, sup))
    if got is not None:
        return got
    if sub == sup:
        emb = EmbeddingMap(sub, sup, sup.x_class())
    else:
        if sub.order > _SUBFIELD_ENUM_LIMIT:
            raise DegreeGuard(
                f"subfield search beyond desk scale ({sub.order} elements)"
            )
        emb = EmbeddingMap(sub, sup, _smallest_root(sub, sup))
    with _CACHE_LOCK:
        _EMBED_CACHE.setdefault((sub, sup), emb)
        return _EMBED_CACHE[(sub, sup)]


def _smallest_root(sub: FieldCtx, sup: FieldCtx) -> FieldElem:
    """Coordinate-lex smallest root of sub.modulus inside sup."""
    p = sup.p
    F = sup.frob_matrix(sub.m) - np.eye(sup.m, dtype=sup._dtype)
    basis = _nullspace_basis(F % p, p)  # the p^{sub.m}-element subfield
    assert len(basis) == sub.m
    elems = []
    for idx in range(p ** len(basis)):
        v = sup.vzero()
        k = idx
        for b in basis:
            c = k % p
            k //= p
            if c:
                v = (v + c * b) % p
        elems.append(sup.from_vec(v))
    elems.sort(key=sup.index_of)
    mod = sub.modulus
    for cand in elems:
        cv = cand.vec()
        acc = sup.vzero()
        acc[0] = mod[-1]
        for c in reversed(mod[:-1]):
            acc = sup.vmul(acc, cv)
            acc[0] = (acc[0] + c) % p
        if not acc.any():
            return cand
    raise NotASubfield("sub.modulus has no root in sup")  # unreachable for true subfields


def apply_embedding(emb: EmbeddingMap, x: FieldElem) -> FieldElem:
    if x.ctx != emb.sub:
        raise CtxMismatch("element does not belong to the embedding's subfield")
    return emb.sup.from_vec(emb.apply_vec(x.vec()))


# -- text formats -----------------------------------------------------------------

def field_text(ctx: FieldCtx) -> str:
    """'p' for prime fields, else 'p^m/c_m,...,c_0'."""
    if ctx.m == 1:
        return str(ctx.p)
    coeffs = ",".join(str(c) for c in reversed(ctx.modulus))
    return f"{ctx.p}^{ctx.m}/{coeffs}"


def parse_field(spec: str) -> FieldCtx:
    """Parse 'p', a prime power 'q', 'p^m' (auto modulus) or 'p^m/c_m,...,c_0'."""
    spec = spec.strip()
    try:
        mod_part = None
        if "/" in spec:
            spec, mod_part = spec.split("/", 1)
        if "^" in spec:
            p_s, m_s = spec.split("^", 1)
            p, m = int(p_s), int(m_s)
        else:
            q = int(spec)
            fac = numth.factorize(q).factors
            if len(fac) != 1:
                raise ValueError("order is not a prime power")
            (p, m), = fac.items()
        modulus = None
        if mod_part is not None:
            modulus = [int(c) for c in mod_part.split(",")][::-1]
    except (ValueError, IndexError) as exc:
        raise ParseError(f"bad field spec {spec!r}") from exc
    return make_extension(p, m, modulus)


def element_text(x: FieldElem) -> str:
    """Decimal for prime fields, '[c_{m-1},...,c_0]' otherwise."""
    if x.ctx.m == 1:
        return str(x.coords[0])
    return "[" + ",".join(str(c) for c in reversed(x.coords)) + "]"


def parse_element(ctx: FieldCtx, s: str) -> FieldElem:
    s = s.strip()
    try:
        if s.startswith("["):
            if not s.endswith("]"):
                raise ValueError("unbalanced brackets")
            coords = [int(c) for c in s[1:-1].split(",")] if s[1:-1].strip() else []
            if len(coords) != ctx.m:
                raise ValueError("coordinate count mismatch")
            return ctx.el(coords[::-1])
        return ctx.from_int(int(s))
    except ValueError as exc:
        raise ParseError(f"bad element {s!r} for {field_text(ctx)}") from exc

"""Closed-formula factorization of X^n - a, X^n - 1, Phi_n, and f(X^n).

The main entry factor_binomial evaluates the parameter stack
(n1/n2 split, w, s, the d1/d2 gcd ladder, s1, r, a d1_s-th root b of a, and
the q-cyclotomic coset table mod d2_s), then emits each irreducible factor as
the q-spin of an explicit binomial over F_{q^s}.  factor_composition runs the
same machinery over base q^k for a root alpha of f and spins all the way back
down to F_q.  No search, no generic factorization: every factor comes out of
the formula, and verify() cross-checks the result against the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Mapping, Optional

import numpy as np

from . import ff, numth, oracle
from .errors import (
    FourDividesConflict,
    NotCoprimeToChar,
    NotIrreducible,
    PreconditionViolated,
    RadicalNotDividing,
    ZeroElement,
)
from .ff import FieldCtx, FieldElem
from .oracle import OracleConfig
from .poly import (
    Factorization,
    FactorEntry,
    Poly,
    QuotientRing,
    poly_gcd,
    poly_order,
    q_spin,
    q_transform,
    rabin_irreducible,
)


@dataclass(frozen=True)
class BinomialPlan:
    """Audit record of every parameter behind a binomial factorization.

    q, n, a describe the reduced instance (characteristic power stripped);
    char_power carries the stripped p^l, applied as factor multiplicity.
    """

    q: int
    n: int
    a: FieldElem
    n1: int
    n2: int
    w: int
    s: int
    d1: Mapping[int, int]  # t -> d1_t for t in {1, 2, s}
    d2: Mapping[int, int]
    s1: int
    r: int
    b: FieldElem  # in F_{q^s}, b^{d1_s} = a
    zeta_d1: FieldElem
    zeta_d2: FieldElem
    coset_reps: numth.CosetTable
    t_i: Mapping[int, int]
    c_i: Mapping[int, int]
    j_classes: tuple
    char_power: int = 1


@dataclass(frozen=True)
class CompositionPlan:
    f: Poly
    k: int
    alpha: FieldElem  # root of f in F_{q^k}
    inner: BinomialPlan  # the X^n - alpha plan over base q^k
    char_power: int
    scale: FieldElem


def _require_positive(n: int):
    if n < 1:
        raise PreconditionViolated("n must be a positive integer")


def _strip_char_power(a: FieldElem, n: int) -> tuple[FieldElem, int, int]:
    """(a_red, n_red, p^l) with X^n - a = (X^n_red - a_red)^{p^l}."""
    ctx = a.ctx
    l = numth.p_adic(n, ctx.p)
    if l == 0:
        return a, n, 1
    # p^l-th root: iterate the inverse Frobenius x -> x^{p^{m-1}}
    return a.conj((-l) % ctx.m), n // ctx.p**l, ctx.p**l


def _cycle_dlog(x: FieldElem, zeta: FieldElem, d: int) -> int:
    """Exponent u < d with zeta^u = x; x must lie in <zeta>."""
    acc = x.ctx.one()
    for u in range(d):
        if acc == x:
            return u
        acc = acc * zeta
    raise AssertionError("element not in the cyclic group it must lie in")


def _binomial_core(a: FieldElem, n: int, spin_base: FieldCtx | None = None,
                   char_power: int = 1):
    """Plan + factor entries for X^n - a, gcd(n, q) = 1.

    spin_base picks the field the factors are spun down to (defaults to a's
    own field; factor_composition passes F_q while a lives in F_{q^k}).
    """
    ctx = a.ctx
    spin_base = spin_base or ctx
    q = ctx.order
    ord_a = ff.element_order(a)
    n1, n2 = numth.split_by_order(n, ord_a)
    w = numth.ord_mod(q, numth.radical(n))
    s = w if (n % 4 != 0 or pow(q, w, 4) == 1) else 2 * w
    d1 = {t: gcd(n1, (q**t - 1) // ord_a) for t in (1, 2, s)}
    d2 = {t: gcd(n2, q**t - 1) for t in (1, 2, s)}
    d1s, d2s = d1[s], d2[s]
    if d1s % 4 != 0 or q % 4 == 1:
        s1 = d1s // d1[1]
    else:
        s1 = 2 * d1s // d1[2]
    # s1 is the multiplicative order of q mod ord(a)*d1_s; the branch formula
    # must agree with it on every instance
    assert s1 == numth.ord_mod(q, ord_a * d1s)
    r = 1 if a == ctx.one() else pow(n2, -1, ord_a * d1s)
    W = ff.make_extension(ctx.p, ctx.m * s)
    emb = ff.embed(ctx, W)
    aW = emb(a)
    if spin_base.m != ctx.m:
        # the canonical embeddings spin_base -> ctx -> W and spin_base -> W
        # need not commute; realign aW by the Frobenius power reconciling
        # the two routes, else every spun factor comes out conjugated
        g0 = spin_base.generator
        via = emb(ff.embed(spin_base, ctx)(g0))
        direct = ff.embed(spin_base, W)(g0)
        t = 0
        while via != direct.conj(t):
            t += 1
            assert t < spin_base.m, "route mismatch exceeds base automorphisms"
        aW = aW.conj((-t) % W.m)
    zeta1 = ff.primitive_root_of_unity(W, d1s)
    zeta2 = ff.primitive_root_of_unity(W, d2s)
    b = ff.dth_root(aW, d1s)
    ct = numth.coset_table(q, d2s)
    t_i = {i: numth.ord_mod(q, d2s // gcd(i, d2s)) for i in ct.reps}
    c_i = {i: lcm(t_i[i], s1) for i in ct.reps}

    # j-classes: orbits of j -> jq + u (mod d1_s), where b^{q-1} = zeta1^u;
    # every orbit has size exactly s1, the representative is its smallest j
    u = _cycle_dlog(b ** (q - 1), zeta1, d1s)
    j_classes = []
    seen = [False] * d1s
    for j0 in range(d1s):
        if seen[j0]:
            continue
        j, size = j0, 0
        while not seen[j]:
            seen[j] = True
            size += 1
            j = (j * q + u) % d1s
        assert size == s1
        j_classes.append(j0)

    plan = BinomialPlan(
        q=q, n=n, a=a, n1=n1, n2=n2, w=w, s=s, d1=d1, d2=d2, s1=s1, r=r,
        b=b, zeta_d1=zeta1, zeta_d2=zeta2, coset_reps=ct, t_i=t_i, c_i=c_i,
        j_classes=tuple(j_classes), char_power=char_power,
    )

    z1pow = _powers(zeta1, d1s)
    z2pow = _powers(zeta2, d2s)
    k_rel = ctx.m // spin_base.m
    t_deg = n1 // d1s
    entries = []
    total = 0
    for j in j_classes:
        cj = z1pow[j] * b
        for v in numth.divisors(n2 // d2s):
            cv = cj ** (r * v)
            for i in ct.reps:
                if gcd(i, v) != 1:
                    continue
                for mm in range(gcd(t_i[i], s1)):
                    expo = (i * pow(q, mm, d2s)) % d2s
                    R = Poly.binomial(W, t_deg * v, z2pow[expo] * cv)
                    S = q_spin(R, spin_base)
                    deg = k_rel * t_deg * v * c_i[i]
                    assert S.degree == deg, "spin degree off the formula"
                    order = ord_a * n1 * v * d2s // gcd(i, d2s)
                    entries.append(FactorEntry(S, char_power, deg, order))
                    total += deg
    assert total == k_rel * n, "factor degrees must sum to the input degree"
    return plan, entries


def _powers(z: FieldElem, d: int) -> list[FieldElem]:
    out = [z.ctx.one()]
    for _ in range(d - 1):
        out.append(out[-1] * z)
    return out


def factor_binomial(a: FieldElem, n: int) -> Factorization:
    """Complete factorization of X^n - a over a's field."""
    if a.is_zero():
        raise ZeroElement("a must be nonzero")
    _require_positive(n)
    base = Poly.binomial(a.ctx, n, a)
    a_red, n_red, cpow = _strip_char_power(a, n)
    plan, entries = _binomial_core(a_red, n_red, char_power=cpow)
    return Factorization(base, entries, plan=plan)


def factor_unity(ctx: FieldCtx, n: int) -> Factorization:
    """Complete factorization of X^n - 1."""
    return factor_binomial(ctx.one(), n)


def factor_cyclotomic(ctx: FieldCtx, n: int) -> Factorization:
    """The n-th cyclotomic polynomial split into its phi(d_s)/s factors."""
    _require_positive(n)
    if n % ctx.p == 0:
        raise NotCoprimeToChar(f"n = {n} shares a factor with the characteristic")
    q = ctx.order
    w = numth.ord_mod(q, numth.radical(n))
    s = w if (n % 4 != 0 or pow(q, w, 4) == 1) else 2 * w
    ds = gcd(n, q**s - 1)
    W = ff.make_extension(ctx.p, ctx.m * s)
    zeta = ff.primitive_root_of_unity(W, ds)
    ct = numth.coset_table(q, ds)
    zpow = _powers(zeta, ds)
    entries = []
    base = Poly.zero(ctx)
    for i in ct.reps:
        if gcd(i, ds) != 1:
            continue
        assert numth.ord_mod(q, ds // gcd(i, ds)) == s
        S = q_spin(Poly.binomial(W, n // ds, zpow[i]), ctx)
        assert S.degree == (n // ds) * s
        entries.append(FactorEntry(S, 1, (n // ds) * s, n))
    assert len(entries) == numth.euler_phi(ds) // s
    fz = Factorization(_cyclotomic_poly(ctx, n), entries, plan=None)
    return fz


def _cyclotomic_poly(ctx: FieldCtx, n: int) -> Poly:
    """Phi_n over ctx via the Moebius product of X^d - 1 terms."""
    num = Poly.one(ctx)
    den = Poly.one(ctx)
    for d in numth.divisors(n):
        mu = numth.mobius(n // d)
        if mu == 1:
            num = num * Poly.binomial(ctx, d, 1)
        elif mu == -1:
            den = den * Poly.binomial(ctx, d, 1)
    quot, rem = divmod(num, den)
    assert rem.is_zero()
    return quot


def factor_composition(f: Poly, n: int) -> Factorization:
    """Complete factorization of f(X^n) for irreducible f."""
    _require_positive(n)
    ctx = f.ctx
    if f.degree < 1:
        raise NotIrreducible("f must be nonconstant")
    scale = f.lead()
    fm = f.monic()
    base = q_transform(f, Poly.monomial(ctx, n), Poly.one(ctx))
    if fm == Poly.x(ctx):
        entry = FactorEntry(Poly.x(ctx), n, 1, None)
        return Factorization(base, [entry], plan=None, scale=scale)
    if not rabin_irreducible(fm):
        raise NotIrreducible("f must be irreducible")
    # strip the characteristic power of n: f(X^n) = (f_red(X^n_red))^{p^l}
    # with f_red the coefficient-wise p^l-th root of f
    l = numth.p_adic(n, ctx.p)
    cpow = ctx.p**l
    n_red = n // cpow
    f_red = _coeff_root(fm, l) if l else fm
    k = f_red.degree
    K = ff.make_extension(ctx.p, ctx.m * k)
    alpha = _smallest_root(f_red, K)
    plan_inner, entries = _binomial_core(alpha, n_red, spin_base=ctx,
                                         char_power=cpow)
    plan = CompositionPlan(f=f, k=k, alpha=alpha, inner=plan_inner,
                           char_power=cpow, scale=scale)
    return Factorization(base, entries, plan=plan, scale=scale)


def _coeff_root(f: Poly, l: int) -> Poly:
    """Apply the p^l-th root x -> x^{p^{(-l) mod m}} to every coefficient."""
    ctx = f.ctx
    j = (-l) % ctx.m
    if j == 0 or ctx.m == 1:
        return f
    return Poly(ctx, f.a @ ctx.frob_matrix(j).T % ctx.p)


def _smallest_root(f: Poly, K: FieldCtx) -> FieldElem:
    """Deterministic root of irreducible f inside its splitting field K.

    Splits f over K with derandomized Cantor-Zassenhaus (the splitting
    element sweeps field elements in index order), then returns the
    conjugate with the smallest element index.
    """
    ctx = f.ctx
    emb = ff.embed(ctx, K)
    fK = Poly.from_coeffs(K, [emb(f.coeff(i)) for i in range(f.degree + 1)])
    g = fK
    t = 0
    while g.degree > 1:
        ring = QuotientRing(g)
        t += 1
        c = K.element_from_index(t % K.order)
        if K.p == 2:
            # trace of c*X: translates X+c cannot separate roots in char 2
            # (Tr is additive), but multipliers do since Tr(xy) is a
            # nondegenerate pairing
            r = Poly.from_coeffs(K, [K.zero(), c])
            acc = ring.lift(r)
            sq = acc
            for _ in range(K.m - 1):
                sq = ring.mul(sq, sq)
                acc = (acc + sq) % 2
            h = ring.to_poly(acc)
        else:
            r = Poly.from_coeffs(K, [c, K.one()])
            u = ring.pow(ring.lift(r), (K.order - 1) // 2)
            h = ring.to_poly((u - ring.one()) % K.p)
        gg = poly_gcd(g, h)
        if 0 < gg.degree < g.degree:
            g = gg if gg.degree <= g.degree - gg.degree else g // gg
    root = -g.coeff(0)
    best = root
    for _ in range(f.degree - 1):
        root = root.conj(ctx.m)  # x -> x^q conjugate
        if K.index_of(root) < K.index_of(best):
            best = root
    assert fK.eval(best).is_zero()
    return best


# -- direct engines for the fully split regime --------------------------------------

def serret_irreducible(a: FieldElem, t: int) -> bool:
    """Exact irreducibility of X^t - a over a's field."""
    if a.is_zero():
        raise ZeroElement("a must be nonzero")
    _require_positive(t)
    if t == 1:
        return True
    q = a.ctx.order
    ord_a = ff.element_order(a)
    if ord_a % numth.radical(t) != 0:
        return False
    if gcd(t, (q - 1) // ord_a) != 1:
        return False
    return t % 4 != 0 or q % 4 == 1


def step_irreducible_tp(a: FieldElem, t: int, p: int) -> bool:
    """Irreducibility of X^{tp} - a, stepping up from irreducible X^t - a."""
    if a.is_zero():
        raise ZeroElement("a must be nonzero")
    q = a.ctx.order
    if not numth.is_prime(p) or (q - 1) % p != 0:
        raise PreconditionViolated("p must be a prime dividing q - 1")
    if not serret_irreducible(a, t):
        raise PreconditionViolated("X^t - a must be irreducible")
    if t * p % 4 == 0 and q % 4 != 1:
        raise PreconditionViolated("4 | tp needs q = 1 (mod 4)")
    if t % p == 0:
        return True  # stepping within an existing p-chain never splits
    return (q - 1) % (p * ff.element_order(a)) != 0


def factor_radq1(a: FieldElem, n: int) -> Factorization:
    """X^n - a when rad(n) | q - 1: everything splits over F_q itself."""
    if a.is_zero():
        raise ZeroElement("a must be nonzero")
    _require_positive(n)
    ctx = a.ctx
    q = ctx.order
    if (q - 1) % numth.radical(n) != 0:
        raise RadicalNotDividing(f"rad({n}) does not divide q - 1 = {q - 1}")
    if n % 4 == 0 and q % 4 != 1:
        raise FourDividesConflict("4 | n needs q = 1 (mod 4)")
    ord_a = ff.element_order(a)
    n1, n2 = numth.split_by_order(n, ord_a)
    d1 = gcd(n1, (q - 1) // ord_a)
    d2 = gcd(n2, q - 1)
    zeta1 = ff.primitive_root_of_unity(ctx, d1)
    zeta2 = ff.primitive_root_of_unity(ctx, d2)
    b = ff.dth_root(a, d1)
    r = 1 if a == ctx.one() else pow(n2, -1, ord_a * d1)
    z1pow = _powers(zeta1, d1)
    z2pow = _powers(zeta2, d2)
    entries = []
    for j in range(d1):
        cj = z1pow[j] * b
        for v in numth.divisors(n2 // d2):
            cv = cj ** (r * v)
            for i in range(d2):
                if gcd(i, v) != 1:
                    continue
                F = Poly.binomial(ctx, (n1 // d1) * v, z2pow[i] * cv)
                order = ord_a * n1 * v * d2 // gcd(i, d2)
                entries.append(FactorEntry(F, 1, F.degree, order))
    return Factorization(Poly.binomial(ctx, n, a), entries, plan=None)


def unity_shortcut(a: FieldElem, n: int) -> Optional[Factorization]:
    """X^n - a via X^n - 1 when a has an n-th root beta: transform by X/beta.

    Returns None when no beta exists (the power criterion fails).
    """
    if a.is_zero():
        raise ZeroElement("a must be nonzero")
    _require_positive(n)
    ctx = a.ctx
    q = ctx.order
    if (a ** ((q - 1) // gcd(n, q - 1))) != ctx.one():
        return None
    beta = ff.dth_root(a, n)
    ones = factor_unity(ctx, n)
    a_red, n_red, _ = _strip_char_power(a, n)
    ord_red = ff.element_order(a_red)
    x = Poly.x(ctx)
    bconst = Poly.from_coeffs(ctx, [beta])
    entries = []
    for e in ones:
        S = q_transform(e.poly, x, bconst)
        order = _factor_order_by_relation(S, n_red, a_red, ord_red)
        assert order is not None
        entries.append(FactorEntry(S, e.mult, e.degree, order))
    return Factorization(Poly.binomial(ctx, n, a), entries, plan=None)


def butler_profile(f: Poly, n: int) -> list[tuple[int, int, int, int]]:
    """Census (d, count, degree, order) of the factors of f(X^n), per d | n2."""
    _require_positive(n)
    ctx = f.ctx
    if n % ctx.p == 0:
        raise NotCoprimeToChar(f"n = {n} shares a factor with the characteristic")
    if f.degree < 1 or not rabin_irreducible(f):
        raise NotIrreducible("f must be irreducible")
    k = f.degree
    e = poly_order(f)  # RootAtZero for f = X, which has no order
    q = ctx.order
    n1, n2 = numth.split_by_order(n, e)
    out = []
    for d in numth.divisors(n2):
        dd = numth.ord_mod(q, d * n1 * e)
        count, r0 = divmod(k * n1 * numth.euler_phi(d), dd)
        assert r0 == 0, "factor count must be integral"
        out.append((d, count, dd, d * n1 * e))
    return out


# -- verification -------------------------------------------------------------------

@dataclass
class VerifyCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerifyReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __str__(self):
        return "\n".join(
            f"{'PASS' if c.passed else 'FAIL'} {c.name}"
            + (f": {c.detail}" if c.detail else "")
            for c in self.checks
        )


def _rel_pow_is_one(ring: QuotientRing, n: int, a: FieldElem, ord_a: int,
                    E: int) -> bool:
    """X^E = 1 in F_q[X]/(S) for S | X^n - a, via X^n = a exponent reduction."""
    sc = a ** ((E // n) % ord_a)
    rem = E % n
    if rem == 0:
        return sc == a.ctx.one()
    blk = ring.pow(ring.x(), rem)
    target = np.zeros_like(blk)
    target[0] = (a.ctx.one() / sc).vec()
    return bool(np.array_equal(blk, target))


def _factor_order_by_relation(S: Poly, n: int, a: FieldElem,
                              ord_a: int) -> Optional[int]:
    """Order of a factor S of X^n - a, dividing primes out of n*ord(a).

    None when X^{n*ord(a)} != 1 mod S, i.e. S is not actually a factor.
    """
    ring = QuotientRing(S)
    T = n * ord_a
    if not _rel_pow_is_one(ring, n, a, ord_a, T):
        return None
    for ell in numth.factorize(T).primes():
        while T % ell == 0 and _rel_pow_is_one(ring, n, a, ord_a, T // ell):
            T //= ell
    return T


def verify(fz: Factorization, config: OracleConfig | None = None) -> VerifyReport:
    """Independent cross-check of a factorization; never raises on mismatch."""
    report = VerifyReport()
    base = fz.base
    ctx = base.ctx

    product_ok = fz.product() == base
    report.checks.append(VerifyCheck(
        "product", product_ok,
        "" if product_ok else "factors do not multiply back to the input"))

    maxdeg = max((e.degree for e in fz), default=0)
    cfg = config or OracleConfig()
    if maxdeg > cfg.max_total_degree:
        cfg = OracleConfig(cfg.rng_seed, maxdeg)
    bad = [e for e in fz if not oracle.is_irreducible(e.poly, cfg)]
    report.checks.append(VerifyCheck(
        "irreducible", not bad,
        "" if not bad else f"{len(bad)} reducible factor(s), first: {bad[0].poly!r}"))

    bad_deg = [e for e in fz if e.degree != e.poly.degree]
    report.checks.append(VerifyCheck(
        "degrees", not bad_deg,
        "" if not bad_deg else f"declared {bad_deg[0].degree} != {bad_deg[0].poly.degree}"))

    plan = fz.plan
    mism = []
    skipped = 0
    for e in fz:
        if e.order is None:
            skipped += 1
            continue
        if e.poly.degree < 1:
            mism.append((e, None))
        elif isinstance(plan, BinomialPlan) and product_ok:
            actual = _factor_order_by_relation(
                e.poly, plan.n, plan.a, ff.element_order(plan.a))
            if actual != e.order:
                mism.append((e, actual))
        else:
            ring = QuotientRing(e.poly)
            x = ring.x()
            ok = ring.is_one(ring.pow(x, e.order)) and all(
                not ring.is_one(ring.pow(x, e.order // ell))
                for ell in numth.factorize(e.order).primes())
            if not ok:
                mism.append((e, None))
    detail = "" if not mism else (
        f"{len(mism)} wrong order(s), first: declared {mism[0][0].order}"
        + (f" actual {mism[0][1]}" if mism[0][1] else ""))
    if skipped and not detail:
        detail = f"{skipped} factor(s) without declared order skipped"
    report.checks.append(VerifyCheck("orders", not mism, detail))

    report.checks.append(_butler_check(fz))
    return report


def _butler_check(fz: Factorization) -> VerifyCheck:
    plan = fz.plan
    if isinstance(plan, CompositionPlan):
        f, n, cpow = plan.f.monic(), plan.inner.n * plan.char_power, plan.char_power
    elif isinstance(plan, BinomialPlan):
        ctx = plan.a.ctx
        f = Poly.from_coeffs(ctx, [-plan.a, ctx.one()])
        n, cpow = plan.n * plan.char_power, plan.char_power
    else:
        return VerifyCheck("butler", True, "not applicable (no plan)")
    if cpow > 1:
        return VerifyCheck("butler", True,
                           "not applicable (characteristic divides n)")
    if f.coeff(0).is_zero():
        return VerifyCheck("butler", True, "not applicable (f has root 0)")
    expected = {(deg, order): count
                for _, count, deg, order in butler_profile(f, n)}
    got: dict = {}
    for e in fz:
        got[(e.degree, e.order)] = got.get((e.degree, e.order), 0) + e.mult
    ok = got == expected
    return VerifyCheck("butler", ok,
                       "" if ok else f"profile mismatch: {got} != {expected}")

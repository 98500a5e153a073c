"""Integer-side machinery.

Factorization, radicals, p-adic valuations, multiplicative orders, the
n = n1*n2 split along the primes of an auxiliary order, totients, divisor
lists and q-cyclotomic coset tables.  Everything here is a pure function on
plain integers; all factor-based routines go through :func:`factorize`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import NotCoprime, NotPrime, PNotDividing

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]

# Deterministic Miller-Rabin witness sets, (bound, bases).  The last row is a
# fixed heuristic set for inputs beyond the proven bound; desk-scale group
# orders stay well inside it in practice.
_MR_SETS = [
    (341531, [9345883071009581737]),
    (1050535501, [336781006125, 9639812373923155]),
    (350269456337, [4230279247111683200, 14694767155120705706, 16641139526367750375]),
    (3825123056546413051, [2, 3, 5, 7, 11, 13, 17, 19, 23]),
    (318665857834031151167461, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]),
]


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test, deterministic for n < 3.2e23."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for bound, bases in _MR_SETS:
        if n < bound:
            break
    else:
        bases = _SMALL_PRIMES
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Find a nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1  # rare cycle degeneracy; restart with a new increment


@dataclass(frozen=True)
class IntFactorization:
    """Prime factorization as an immutable prime -> exponent map."""

    factors: dict[int, int] = field(default_factory=dict)

    def value(self) -> int:
        out = 1
        for p, e in self.factors.items():
            out *= p ** e
        return out

    def primes(self) -> list[int]:
        return sorted(self.factors)

    def radical(self) -> int:
        return math.prod(self.primes())

    def divisor_list(self) -> list[int]:
        divs = [1]
        for p, e in self.factors.items():
            divs = [d * p ** i for d in divs for i in range(e + 1)]
        return sorted(divs)


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent_rho(n)
    _factor_into(d, out)
    _factor_into(n // d, out)


@lru_cache(maxsize=4096)
def factorize(n: int) -> IntFactorization:
    """Full prime factorization: trial division to 10^6, then Pollard rho."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    # wheel over numbers coprime to 30
    f = 7
    incs = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n and f < 10 ** 6:
        if n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        else:
            f += incs[i]
            i = (i + 1) % 8
    if n > 1:
        if f * f > n:
            out[n] = out.get(n, 0) + 1
        else:
            _factor_into(n, out)
    return IntFactorization(dict(sorted(out.items())))


def radical(n: int) -> int:
    """Product of the distinct primes of n; radical(1) = 1."""
    if n < 1:
        raise ValueError("radical expects n >= 1")
    return factorize(n).radical()


def p_adic(n: int, p: int) -> int:
    """Exact exponent of the prime p in n."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n == 0:
        raise ValueError("p_adic expects n != 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi expects n >= 1")
    out = 1
    for p, e in factorize(n).factors.items():
        out *= (p - 1) * p ** (e - 1)
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n in ascending order."""
    if n < 1:
        raise ValueError("divisors expects n >= 1")
    return factorize(n).divisor_list()


def mobius(n: int) -> int:
    fz = factorize(n)
    if any(e > 1 for e in fz.factors.values()):
        return 0
    return -1 if len(fz.factors) % 2 else 1


def ord_mod(m: int, n: int) -> int:
    """Multiplicative order of m modulo n.

    Computed by dividing primes out of phi(n), never by exhaustive powering.
    """
    if n < 1:
        raise ValueError("ord_mod expects n >= 1")
    if math.gcd(m, n) != 1:
        raise NotCoprime(f"gcd({m}, {n}) != 1")
    if n == 1:
        return 1
    m %= n
    t = euler_phi(n)
    for p in factorize(t).primes():
        while t % p == 0 and pow(m, t // p, n) == 1:
            t //= p
    return t


def split_by_order(n: int, e: int) -> tuple[int, int]:
    """Split n = n1*n2 with rad(n1) | rad(e) and gcd(n2, e) = 1."""
    if n < 1 or e < 1:
        raise ValueError("split_by_order expects n, e >= 1")
    n1 = 1
    n2 = n
    g = math.gcd(n2, e)
    while g > 1:
        n1 *= g
        n2 //= g
        g = math.gcd(n2, g)
    return n1, n2


@dataclass(frozen=True)
class CosetTable:
    """q-cyclotomic cosets modulo d with smallest-member representatives."""

    q: int
    d: int
    cosets: tuple[tuple[int, ...], ...]
    reps: tuple[int, ...]


def coset_table(q: int, d: int) -> CosetTable:
    """Partition {0,…,d−1} into orbits of i -> i*q mod d."""
    if d < 1:
        raise ValueError("coset_table expects d >= 1")
    if math.gcd(q, d) != 1:
        raise NotCoprime(f"gcd({q}, {d}) != 1")
    seen = [False] * d
    cosets = []
    reps = []
    for i in range(d):
        if seen[i]:
            continue
        orbit = []
        j = i
        while not seen[j]:
            seen[j] = True
            orbit.append(j)
            j = j * q % d
        cosets.append(tuple(sorted(orbit)))
        reps.append(i)  # ascending scan makes i the smallest member
    return CosetTable(q, d, tuple(cosets), tuple(reps))


def beyl_valuation(q: int, p: int, m: int) -> int:
    """v_p(q^m - 1) for a prime p | q-1, by the valuation lemma's case split."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if q < 2 or m < 1:
        raise ValueError("beyl_valuation expects q >= 2, m >= 1")
    if (q - 1) % p != 0:
        raise PNotDividing(f"{p} does not divide {q} - 1")
    if p != 2:
        return p_adic(q - 1, p) + p_adic(m, p)
    if m % 2 == 1:
        return p_adic(q - 1, 2)
    return p_adic(q - 1, 2) + p_adic(q + 1, 2) + p_adic(m, 2) - 1


def cyclotomic_value(d: int, x: int) -> int:
    """Value of the d-th cyclotomic polynomial at the integer x >= 2.

    Moebius product of (x^{d/t} - 1)^{mu(t)}; exact integer division.
    """
    if d < 1 or x < 2:
        raise ValueError("cyclotomic_value expects d >= 1, x >= 2")
    num = 1
    den = 1
    for t in divisors(d):
        mu = mobius(t)
        if mu == 1:
            num *= x ** (d // t) - 1
        elif mu == -1:
            den *= x ** (d // t) - 1
    return num // den


@lru_cache(maxsize=512)
def _factored_cyclotomic_value(d: int, x: int) -> IntFactorization:
    return factorize(cyclotomic_value(d, x))


@lru_cache(maxsize=512)
def factored_power_minus_one(p: int, m: int) -> IntFactorization:
    """Prime factorization of p^m - 1, split along cyclotomic values first.

    The split keeps the numbers handed to Pollard rho small and lets towers
    over the same characteristic share work through the cache.
    """
    out: dict[int, int] = {}
    for d in divisors(m):
        for prime, e in _factored_cyclotomic_value(d, p).factors.items():
            out[prime] = out.get(prime, 0) + e
    return IntFactorization(dict(sorted(out.items())))

import itertools
import random
from math import gcd, lcm

import pytest

from cyclofactor import ff, numth
from cyclofactor.errors import (FourDividesConflict, NotCoprimeToChar,
                                NotIrreducible, PreconditionViolated,
                                RadicalNotDividing, ZeroElement)
from cyclofactor.factor import (BinomialPlan, CompositionPlan, butler_profile,
                                factor_binomial, factor_composition,
                                factor_cyclotomic, factor_radq1, factor_unity,
                                serret_irreducible, step_irreducible_tp,
                                unity_shortcut, verify)
from cyclofactor.oracle import brute_factor, is_irreducible
from cyclofactor.poly import (Factorization, FactorEntry, Poly, parse_poly,
                              poly_order, poly_text, q_transform,
                              rabin_irreducible)

F2 = ff.make_extension(2, 1)
F3 = ff.make_extension(3, 1)
F4 = ff.make_extension(2, 2)
F5 = ff.make_extension(5, 1)
F7 = ff.make_extension(7, 1)
F9 = ff.make_extension(3, 2)
F13 = ff.make_extension(13, 1)


def units(ctx):
    return [ctx.element_from_index(i) for i in range(1, ctx.order)]


def first_irreducible_monic(ctx, deg):
    """Smallest monic irreducible of the given degree with nonzero constant."""
    for idxs in itertools.product(range(ctx.order), repeat=deg):
        if idxs[-1] == 0:
            continue
        coeffs = [ctx.element_from_index(i) for i in reversed(idxs)]
        f = Poly.from_coeffs(ctx, coeffs + [ctx.one()])
        if rabin_irreducible(f):
            return f
    raise AssertionError("no irreducible of that degree found")


class TestSerret:
    def test_knowns(self):
        assert serret_irreducible(F5.from_int(2), 2)
        assert not serret_irreducible(F7.from_int(3), 4)
        for a in units(F7):
            assert serret_irreducible(a, 1)

    def test_matches_oracle(self):
        for ctx in (F3, F5, F7, F9):
            for a in units(ctx):
                for t in range(1, 7):
                    want = is_irreducible(Poly.binomial(ctx, t, a))
                    assert serret_irreducible(a, t) == want, (ctx.order, a, t)

    def test_zero_rejected(self):
        with pytest.raises(ZeroElement):
            serret_irreducible(F5.zero(), 2)


class TestStepTp:
    def test_knowns(self):
        assert step_irreducible_tp(F5.from_int(2), 2, 2)
        assert is_irreducible(Poly.binomial(F5, 4, F5.from_int(2)))
        assert not step_irreducible_tp(F5.from_int(4), 1, 2)
        assert not is_irreducible(Poly.binomial(F5, 2, F5.from_int(4)))

    def test_p_divides_t_branch(self):
        # ord(2) = 12 over F_13, so X^3 - 2 is irreducible and stepping by
        # another 3 stays inside the 3-chain
        a = F13.from_int(2)
        assert serret_irreducible(a, 3)
        assert step_irreducible_tp(a, 3, 3)
        assert serret_irreducible(a, 9)

    def test_matches_oracle(self):
        for ctx in (F5, F9, F13):
            q = ctx.order
            for a in units(ctx):
                for t in range(1, 5):
                    if not serret_irreducible(a, t):
                        continue
                    for p in numth.factorize(q - 1).primes():
                        if t * p % 4 == 0 and q % 4 != 1:
                            continue
                        want = is_irreducible(Poly.binomial(ctx, t * p, a))
                        assert step_irreducible_tp(a, t, p) == want

    def test_preconditions(self):
        with pytest.raises(PreconditionViolated):
            step_irreducible_tp(F5.one(), 2, 2)  # X^2 - 1 splits
        with pytest.raises(PreconditionViolated):
            step_irreducible_tp(F5.from_int(2), 2, 3)  # 3 does not divide 4
        with pytest.raises(PreconditionViolated):
            step_irreducible_tp(F5.from_int(2), 2, 4)  # 4 is not prime
        with pytest.raises(PreconditionViolated):
            step_irreducible_tp(F7.from_int(3), 2, 2)  # 4 | tp, 7 = 3 mod 4
        with pytest.raises(ZeroElement):
            step_irreducible_tp(F5.zero(), 2, 2)


class TestRadq1:
    def test_all_linear(self):
        fz = factor_radq1(F5.one(), 4)
        texts = [poly_text(e.poly) for e in fz]
        assert texts == ["x + 1", "x + 2", "x + 3", "x + 4"]
        assert [e.order for e in fz] == [2, 4, 4, 1]

    def test_quadratic_pair(self):
        fz = factor_radq1(F5.from_int(4), 4)
        assert {poly_text(e.poly) for e in fz} == {"x^2 + 2", "x^2 + 3"}
        assert fz.product() == Poly.binomial(F5, 4, F5.from_int(4))

    def test_linear_input(self):
        fz = factor_radq1(F7.from_int(3), 1)
        assert [poly_text(e.poly) for e in fz] == ["x + 4"]

    def test_extension_base_vs_oracle(self):
        a = F9.generator
        fz = factor_radq1(a, 2)
        assert fz.multiset() == brute_factor(Poly.binomial(F9, 2, a)).multiset()

    def test_matches_main_engine(self):
        rng = random.Random(3)
        for ctx in (F5, F9, F13):
            q = ctx.order
            pool = units(ctx) if q <= 9 else rng.sample(units(ctx), 5)
            for n in range(1, 17):
                if (q - 1) % numth.radical(n) != 0:
                    continue
                if n % 4 == 0 and q % 4 != 1:
                    continue
                for a in pool:
                    fz = factor_radq1(a, n)
                    assert fz.product() == Poly.binomial(ctx, n, a)
                    assert fz.multiset() == factor_binomial(a, n).multiset()

    def test_orders_match(self):
        for a in units(F5):
            for n in (1, 2, 4, 8):
                for e in factor_radq1(a, n):
                    assert e.order == poly_order(e.poly)

    def test_domain_errors(self):
        with pytest.raises(RadicalNotDividing):
            factor_radq1(F5.from_int(2), 3)
        with pytest.raises(FourDividesConflict):
            factor_radq1(F7.from_int(3), 4)
        with pytest.raises(ZeroElement):
            factor_radq1(F5.zero(), 2)


class TestBinomial:
    def test_linear(self):
        for ctx in (F3, F9):
            for a in units(ctx):
                fz = factor_binomial(a, 1)
                assert len(fz) == 1
                e = fz.factors[0]
                assert e.poly == Poly.binomial(ctx, 1, a)
                assert (e.mult, e.degree) == (1, 1)
                assert e.order == ff.element_order(a)

    def test_unity_eight_over_f3(self):
        fz = factor_binomial(F3.one(), 8)
        got = [(poly_text(e.poly), e.order) for e in fz]
        assert got == [
            ("x + 1", 2),
            ("x + 2", 1),
            ("x^2 + 1", 4),
            ("x^2 + x + 2", 8),
            ("x^2 + 2*x + 2", 8),
        ]

    def test_order_eight_base_vs_oracle(self):
        a = F9.generator
        assert ff.element_has_order(a, 8)
        fz = factor_binomial(a, 2)
        assert fz.multiset() == brute_factor(Poly.binomial(F9, 2, a)).multiset()

    def test_char_power_multiplicity(self):
        fz = factor_binomial(F3.from_int(2), 6)  # (X^2 - 2)^3 over F_3
        assert len(fz) == 1
        e = fz.factors[0]
        assert (poly_text(e.poly), e.mult, e.degree, e.order) == ("x^2 + 1", 3, 2, 4)
        assert fz.product() == Poly.binomial(F3, 6, F3.from_int(2))
        assert fz.plan.char_power == 3

    def test_char_power_even(self):
        fz = factor_binomial(F2.one(), 12)  # (X^3 - 1)^4 over F_2
        got = [(poly_text(e.poly), e.mult, e.order) for e in fz]
        assert got == [("x + 1", 4, 1), ("x^2 + x + 1", 4, 3)]

    def test_char_power_extension(self):
        g = F4.generator
        fz = factor_binomial(g, 2)  # X^2 - g = (X - g^2)^2 over F_4
        assert len(fz) == 1
        e = fz.factors[0]
        assert e.mult == 2 and e.degree == 1
        assert e.poly == Poly.binomial(F4, 1, g * g)
        assert fz.product() == Poly.binomial(F4, 2, g)

    def test_reconstruction_grid(self):
        rng = random.Random(4)
        for ctx in (F2, F3, F4, F5, F7, F9):
            q = ctx.order
            pool = units(ctx) if q <= 5 else rng.sample(units(ctx), 4)
            for n in range(1, 19):
                for a in pool:
                    fz = factor_binomial(a, n)
                    assert fz.product() == Poly.binomial(ctx, n, a)
                    assert sum(e.degree * e.mult for e in fz) == n
                    assert all(e.poly.is_monic() for e in fz)
                    assert isinstance(fz.plan, BinomialPlan)

    def test_oracle_sample(self):
        rng = random.Random(5)
        for ctx in (F3, F5, F9):
            for n in (5, 8, 12):
                a = rng.choice(units(ctx))
                fz = factor_binomial(a, n)
                assert fz.multiset() == brute_factor(fz.base).multiset()

    def test_domain_errors(self):
        with pytest.raises(ZeroElement):
            factor_binomial(F5.zero(), 3)
        with pytest.raises(PreconditionViolated):
            factor_binomial(F5.one(), 0)


@pytest.fixture(scope="module")
def instances():
    rng = random.Random(6)
    out = []
    for ctx in (F2, F3, F4, F5, F7, F9):
        q = ctx.order
        pool = units(ctx) if q <= 5 else rng.sample(units(ctx), 4)
        for n in range(1, 17):
            if gcd(n, q) != 1:
                continue
            for a in pool:
                out.append((ctx, n, a, factor_binomial(a, n)))
    return out


class TestPlanParameters:
    """Every plan field must satisfy its defining arithmetic identity."""

    def test_split_and_descriptors(self, instances):
        for ctx, n, a, fz in instances:
            p = fz.plan
            q = ctx.order
            ord_a = ff.element_order(a)
            assert (p.q, p.n, p.a, p.char_power) == (q, n, a, 1)
            assert p.n1 * p.n2 == n
            assert ord_a % numth.radical(p.n1) == 0
            assert gcd(p.n2, ord_a) == 1
            assert p.w == numth.ord_mod(q, numth.radical(n))
            if n % 4 != 0 or pow(q, p.w, 4) == 1:
                assert p.s == p.w
            else:
                assert p.s == 2 * p.w
            for t in (1, 2, p.s):
                assert p.d1[t] == gcd(p.n1, (q**t - 1) // ord_a)
                assert p.d2[t] == gcd(p.n2, q**t - 1)

    def test_s1_r_and_root(self, instances):
        for ctx, n, a, fz in instances:
            p = fz.plan
            q = ctx.order
            ord_a = ff.element_order(a)
            d1s = p.d1[p.s]
            if d1s % 4 != 0 or q % 4 == 1:
                assert p.s1 == d1s // p.d1[1]
            else:
                assert p.s1 == 2 * d1s // p.d1[2]
            # the branch formula must produce the multiplicative order that
            # defines s1, on every instance
            assert p.s1 == numth.ord_mod(q, ord_a * d1s)
            if a == ctx.one():
                assert p.r == 1
            else:
                assert p.r * p.n2 % (ord_a * d1s) == 1
            W = p.b.ctx
            assert W.order == q**p.s
            assert p.b ** d1s == ff.embed(ctx, W)(a)
            assert ff.element_has_order(p.zeta_d1, d1s)
            assert ff.element_has_order(p.zeta_d2, p.d2[p.s])

    def test_coset_data(self, instances):
        for ctx, n, a, fz in instances:
            p = fz.plan
            q = ctx.order
            d2s = p.d2[p.s]
            covered = set()
            for coset in p.coset_reps.cosets:
                covered.update(coset)
                assert min(coset) in p.coset_reps.reps
                for i in coset:
                    assert i * q % d2s in coset
            assert covered == set(range(d2s))
            for i in p.coset_reps.reps:
                # stored t_i must equal the smallest t whose d2-level reaches i
                want = 1
                while i % (d2s // gcd(p.n2, q**want - 1)) != 0:
                    want += 1
                assert p.t_i[i] == want
                assert p.c_i[i] == lcm(p.t_i[i], p.s1)

    def test_j_orbits(self, instances):
        for ctx, n, a, fz in instances:
            p = fz.plan
            q = ctx.order
            d1s = p.d1[p.s]
            bq = p.b ** (q - 1)
            acc = p.b.ctx.one()
            u = 0
            while acc != bq:
                acc = acc * p.zeta_d1
                u += 1
                assert u <= d1s
            seen = set()
            reps = []
            for j0 in range(d1s):
                if j0 in seen:
                    continue
                orbit = []
                j = j0
                while j not in seen:
                    seen.add(j)
                    orbit.append(j)
                    j = (j * q + u) % d1s
                assert len(orbit) == p.s1
                reps.append(j0)
            assert tuple(reps) == p.j_classes
            assert len(p.j_classes) * p.s1 == d1s

    def test_degree_order_census(self, instances):
        for ctx, n, a, fz in instances:
            p = fz.plan
            ord_a = ff.element_order(a)
            d1s, d2s = p.d1[p.s], p.d2[p.s]
            pred = []
            for _ in p.j_classes:
                for v in numth.divisors(p.n2 // d2s):
                    for i in p.coset_reps.reps:
                        if gcd(i, v) != 1:
                            continue
                        for _m in range(gcd(p.t_i[i], p.s1)):
                            pred.append((
                                p.n1 // d1s * v * p.c_i[i],
                                ord_a * p.n1 * v * d2s // gcd(i, d2s),
                            ))
            assert sorted(pred) == sorted((e.degree, e.order) for e in fz)


class TestUnity:
    def test_linear(self):
        fz = factor_unity(F5, 1)
        assert [poly_text(e.poly) for e in fz] == ["x + 4"]

    def test_fourth_roots(self):
        fz = factor_unity(F5, 4)
        assert [poly_text(e.poly) for e in fz] == ["x + 1", "x + 2", "x + 3", "x + 4"]

    def test_equals_binomial_at_one(self):
        for ctx in (F2, F3, F4, F5, F9):
            for n in range(1, 16):
                fz = factor_unity(ctx, n)
                other = factor_binomial(ctx.one(), n)
                assert fz.multiset() == other.multiset()
                assert sorted(e.order for e in fz) == sorted(e.order for e in other)


class TestCyclotomic:
    def test_knowns(self):
        assert [poly_text(e.poly) for e in factor_cyclotomic(F5, 1)] == ["x + 4"]
        fz = factor_cyclotomic(F3, 4)
        assert [poly_text(e.poly) for e in fz] == ["x^2 + 1"]
        assert fz.factors[0].order == 4
        fz = factor_cyclotomic(F5, 4)
        assert [poly_text(e.poly) for e in fz] == ["x + 2", "x + 3"]

    def test_count_degree_order(self):
        for ctx in (F3, F5):
            q = ctx.order
            for n in range(1, 21):
                if gcd(n, q) != 1:
                    continue
                fz = factor_cyclotomic(ctx, n)
                w = numth.ord_mod(q, numth.radical(n))
                s = w if (n % 4 != 0 or pow(q, w, 4) == 1) else 2 * w
                ds = gcd(n, q**s - 1)
                assert len(fz) == numth.euler_phi(ds) // s
                for e in fz:
                    assert e.degree == (n // ds) * s
                    assert e.order == n
                    assert is_irreducible(e.poly)
                assert fz.product() == fz.base

    def test_divisor_product_is_unity(self):
        for ctx, n in ((F3, 8), (F5, 12), (F2, 15)):
            prod = Poly.one(ctx)
            for d in numth.divisors(n):
                prod = prod * factor_cyclotomic(ctx, d).product()
            assert prod == Poly.binomial(ctx, n, 1)

    def test_char_conflict(self):
        with pytest.raises(NotCoprimeToChar):
            factor_cyclotomic(F3, 6)


class TestComposition:
    def test_linear_reduces_to_unity(self):
        f = parse_poly(F3, "x + 2")  # X - 1
        fz = factor_composition(f, 8)
        assert fz.multiset() == factor_unity(F3, 8).multiset()
        assert isinstance(fz.plan, CompositionPlan)
        assert fz.plan.k == 1

    def test_quartic_split(self):
        f = parse_poly(F3, "x^2 + 1")
        fz = factor_composition(f, 2)
        assert {poly_text(e.poly) for e in fz} == {"x^2 + x + 2", "x^2 + 2*x + 2"}
        plan = fz.plan
        assert plan.k == 2
        assert plan.f == f
        emb_f = Poly.from_coeffs(plan.alpha.ctx,
                                 [ff.embed(F3, plan.alpha.ctx)(f.coeff(i))
                                  for i in range(3)])
        assert emb_f.eval(plan.alpha).is_zero()

    def test_x_power(self):
        fz = factor_composition(Poly.x(F5), 5)
        assert len(fz) == 1
        e = fz.factors[0]
        assert (e.poly, e.mult, e.order) == (Poly.x(F5), 5, None)
        assert fz.base == Poly.monomial(F5, 5)

    def test_nonmonic_scale(self):
        f = parse_poly(F5, "3*x + 3")  # 3(X + 1)
        fz = factor_composition(f, 2)
        assert fz.scale == F5.from_int(3)
        assert {poly_text(e.poly) for e in fz} == {"x + 2", "x + 3"}
        assert fz.product() == parse_poly(F5, "3*x^2 + 3")

    def test_char_power(self):
        f = parse_poly(F3, "x^2 + 1")
        fz = factor_composition(f, 3)  # f(X^3) = (x^2 + 1)^3
        assert len(fz) == 1
        e = fz.factors[0]
        assert (poly_text(e.poly), e.mult) == ("x^2 + 1", 3)
        assert fz.product() == parse_poly(F3, "x^6 + 1")

    def test_irreducible_composition(self):
        f = parse_poly(F2, "x^2 + x + 1")
        fz = factor_composition(f, 3)
        assert [poly_text(e.poly) for e in fz] == ["x^6 + x^3 + 1"]
        assert fz.factors[0].order == 9
        assert fz.multiset() == factor_cyclotomic(F2, 9).multiset()

    def test_extension_base_vs_oracle(self):
        # spin-base and root-field embeddings take independent routes into
        # the splitting tower; the factor product is the check that catches
        # any coefficient-level Frobenius twist between them
        for ctx, deg, n in ((F4, 3, 3), (F9, 2, 7), (F9, 3, 11)):
            f = first_irreducible_monic(ctx, deg)
            fz = factor_composition(f, n)
            base = q_transform(f, Poly.monomial(ctx, n), Poly.one(ctx))
            assert fz.base == base
            assert fz.product() == base
            assert fz.multiset() == brute_factor(base).multiset()

    def test_rejects_reducible(self):
        with pytest.raises(NotIrreducible):
            factor_composition(parse_poly(F3, "x^2 + 2"), 2)
        with pytest.raises(NotIrreducible):
            factor_composition(Poly.one(F3), 2)


class TestUnityShortcut:
    def test_at_one(self):
        fz = unity_shortcut(F3.one(), 8)
        assert fz is not None
        assert fz.multiset() == factor_unity(F3, 8).multiset()

    def test_square_with_root(self):
        fz = unity_shortcut(F5.from_int(4), 2)
        assert fz is not None
        assert {poly_text(e.poly) for e in fz} == {"x + 2", "x + 3"}
        assert fz.product() == Poly.binomial(F5, 2, F5.from_int(4))

    def test_no_root(self):
        assert unity_shortcut(F5.from_int(2), 2) is None

    def test_differential(self):
        for ctx in (F3, F5, F7, F9):
            q = ctx.order
            for n in range(1, 11):
                for a in units(ctx):
                    fz = unity_shortcut(a, n)
                    has_root = a ** ((q - 1) // gcd(n, q - 1)) == ctx.one()
                    assert (fz is not None) == has_root
                    if fz is None:
                        continue
                    assert fz.multiset() == factor_binomial(a, n).multiset()
                    for e in fz:
                        if e.degree <= 6:
                            assert e.order == poly_order(e.poly)

    def test_zero_rejected(self):
        with pytest.raises(ZeroElement):
            unity_shortcut(F5.zero(), 2)


class TestButlerProfile:
    def test_knowns(self):
        f = parse_poly(F3, "x + 2")
        assert butler_profile(f, 8) == [
            (1, 1, 1, 1), (2, 1, 1, 2), (4, 1, 2, 4), (8, 2, 2, 8)]
        assert butler_profile(parse_poly(F3, "x^2 + 1"), 2) == [(1, 2, 2, 8)]

    def test_trivial_n(self):
        f = parse_poly(F3, "x^2 + 1")
        assert butler_profile(f, 1) == [(1, 1, 2, 4)]

    def test_matches_factor_histogram(self):
        cases = [(F3, parse_poly(F3, "x + 2"), 8),
                 (F3, parse_poly(F3, "x^2 + 1"), 4),
                 (F5, parse_poly(F5, "x^2 + 2"), 6),
                 (F2, parse_poly(F2, "x^2 + x + 1"), 5)]
        for ctx, f, n in cases:
            fz = factor_composition(f, n)
            got: dict = {}
            for e in fz:
                got[(e.degree, e.order)] = got.get((e.degree, e.order), 0) + e.mult
            want = {(deg, order): count
                    for _, count, deg, order in butler_profile(f, n)}
            assert got == want

    def test_domain_errors(self):
        with pytest.raises(NotCoprimeToChar):
            butler_profile(parse_poly(F3, "x + 2"), 3)
        with pytest.raises(NotIrreducible):
            butler_profile(parse_poly(F3, "x^2 + 2"), 2)


class TestVerify:
    def test_clean_pass(self):
        report = verify(factor_unity(F3, 8))
        assert report.passed
        assert [c.name for c in report.checks] == [
            "product", "irreducible", "degrees", "orders", "butler"]
        assert "PASS product" in str(report)

    def test_composition_pass(self):
        assert verify(factor_composition(parse_poly(F3, "x^2 + 1"), 2)).passed
        assert verify(factor_radq1(F5.from_int(4), 4)).passed

    def _tampered(self, fz, swap):
        return Factorization(fz.base, [swap(e) for e in fz], plan=fz.plan)

    def test_product_mismatch(self):
        fz = factor_unity(F3, 8)
        target = parse_poly(F3, "x^2 + 1").key()
        bad = self._tampered(fz, lambda e: e._replace(
            poly=parse_poly(F3, "x^2 + x + 2")) if e.poly.key() == target else e)
        report = verify(bad)
        assert not report.passed
        assert not next(c for c in report.checks if c.name == "product").passed

    def test_order_mismatch(self):
        fz = factor_unity(F3, 8)
        target = parse_poly(F3, "x^2 + 1").key()
        bad = self._tampered(fz, lambda e: e._replace(order=16)
                             if e.poly.key() == target else e)
        report = verify(bad)
        assert next(c for c in report.checks if c.name == "product").passed
        assert not next(c for c in report.checks if c.name == "orders").passed

    def test_reducible_factor(self):
        fz = factor_unity(F3, 8)
        target = parse_poly(F3, "x^2 + 1").key()
        bad = self._tampered(fz, lambda e: e._replace(
            poly=parse_poly(F3, "x^2 + 2")) if e.poly.key() == target else e)
        report = verify(bad)
        assert not next(c for c in report.checks if c.name == "irreducible").passed


class TestAlgebraicProperties:
    def test_root_of_unity_twist_scales_order(self):
        # for prime p | q-1 with p coprime to ord(a) and r the inverse of p
        # mod ord(a): a^r keeps its order, zeta_p^j a^r picks up the factor p
        for ctx in (F5, F7, F9, F13):
            q = ctx.order
            for p in numth.factorize(q - 1).primes():
                zeta = ff.primitive_root_of_unity(ctx, p)
                for a in units(ctx):
                    ord_a = ff.element_order(a)
                    if ord_a % p == 0:
                        continue
                    r = pow(p, -1, ord_a) if ord_a > 1 else 1
                    ar = a**r
                    assert ff.element_order(ar) == ord_a
                    for j in range(1, p):
                        assert ff.element_order(zeta**j * ar) == p * ord_a

    def test_pth_root_split_stays_irreducible(self):
        # whenever p * ord(a) | q-1, all p conjugate binomial factors of
        # X^{tp} - a over an irreducible X^t - a are themselves irreducible
        for ctx in (F3, F5, F7, F9, F13):
            q = ctx.order
            for a in units(ctx):
                ord_a = ff.element_order(a)
                for t in (1, 2, 3):
                    if not serret_irreducible(a, t):
                        continue
                    for p in numth.factorize(q - 1).primes():
                        if (q - 1) % (p * ord_a) != 0:
                            continue
                        b = ff.dth_root(a, p)
                        zeta = ff.primitive_root_of_unity(ctx, p)
                        prod = Poly.one(ctx)
                        for j in range(p):
                            piece = Poly.binomial(ctx, t, zeta**j * b)
                            prod = prod * piece
                            if t * p % 4 != 0 or q % 4 == 1:
                                assert serret_irreducible(zeta**j * b, t)
                        assert prod == Poly.binomial(ctx, t * p, a)

    def test_full_radical_case(self):
        # rad(n) | ord(a) forces equal-degree factors whose roots all have
        # order ord(a) * n, with the degree fixed by the d1 ladder
        rng = random.Random(12)
        count = 0
        for ctx in (F5, F7, F9, F13):
            q = ctx.order
            for a in units(ctx):
                ord_a = ff.element_order(a)
                for n in range(2, 19):
                    if gcd(n, q) != 1 or ord_a % numth.radical(n) != 0:
                        continue
                    fz = factor_binomial(a, n)
                    p = fz.plan
                    d1s = p.d1[p.s]
                    degs = {e.degree for e in fz}
                    if q % 4 == 1 or d1s % 4 != 0:
                        assert degs == {n // p.d1[1]}
                    else:
                        assert degs == {2 * n // p.d1[2]}
                    assert {e.order for e in fz} == {ord_a * n}
                    count += 1
        assert count > 50

    def test_choice_invariance(self, monkeypatch):
        # any primitive root of unity and any d-th root are admissible
        # choices; the factor multiset must not depend on which one is picked
        base_root = ff.primitive_root_of_unity
        base_dth = ff.dth_root

        def other_root(ctx, d):
            return base_root(ctx, d) ** (d - 1) if d > 1 else base_root(ctx, d)

        def other_dth(x, d):
            b = base_dth(x, d)
            twist = gcd(d, b.ctx.units)
            return b * base_root(b.ctx, twist)

        cases = [(F3.one(), 8), (F5.from_int(2), 8), (F7.from_int(3), 9),
                 (F9.generator, 4), (F13.from_int(2), 12)]
        want = [factor_binomial(a, n).multiset() for a, n in cases]
        monkeypatch.setattr(ff, "primitive_root_of_unity", other_root)
        monkeypatch.setattr(ff, "dth_root", other_dth)
        got = [factor_binomial(a, n).multiset() for a, n in cases]
        assert got == want

from fractions import Fraction
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ararank.monomials import SquarefreeMonomial
from ararank.polyalg import (
    DEGREVLEX,
    LEX,
    MembershipCertificate,
    MonomialOrder,
    Polynomial,
    Term,
    _EliminationOrder,
    buchberger,
    divide_with_cofactors,
    format_polynomial,
    is_groebner_basis,
    membership,
    parse_polynomial,
    power_membership,
    radical_membership,
    s_polynomial,
)


def poly(text, n=None):
    return parse_polynomial(text, n)


Q1 = poly("x1*x4", 4)
Q2 = poly("x1*x2 + x3*x4", 4)


# -- random polynomial machinery (shared by several suites) --------------------

def random_poly(rng: Random, n: int, terms: int = 4, max_exp: int = 2) -> Polynomial:
    acc = {}
    for _ in range(rng.randint(0, terms)):
        t = Term(
            (v, rng.randint(1, max_exp))
            for v in rng.sample(range(1, n + 1), rng.randint(0, n))
        )
        acc[t] = acc.get(t, 0) + Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return Polynomial(acc, n)


class TestTermAndOrders:
    def test_term_canonicalization(self):
        t = Term([(3, 1), (1, 2), (2, 0)])
        assert t.exps == ((1, 2), (3, 1))
        assert t.degree == 3

    def test_term_ops(self):
        a = Term([(1, 2), (2, 1)])
        b = Term([(2, 1), (3, 1)])
        assert a.mul(b).exps == ((1, 2), (2, 2), (3, 1))
        assert a.lcm(b).exps == ((1, 2), (2, 1), (3, 1))
        assert not a.divides(b)
        assert Term([(2, 1)]).divides(a)
        assert a.div(Term([(1, 1)])).exps == ((1, 1), (2, 1))
        with pytest.raises(ValueError):
            a.div(b)

    def test_degrevlex_known_comparisons(self):
        # descending degree first, then smaller exponent on the latest variable wins
        n = 5
        key = lambda t: DEGREVLEX.key(t, n)
        assert key(Term([(2, 1), (3, 1)])) > key(Term([(4, 1), (5, 1)]))
        assert key(Term([(1, 1), (2, 1)])) > key(Term([(3, 1), (4, 1)]))
        assert key(Term([(1, 2)])) > key(Term([(1, 1), (2, 1)]))
        assert key(Term([(1, 1)])) > key(Term([(2, 1)]))

    def test_degrevlex_sparse_key_matches_dense_definition(self):
        rng = Random(3)
        n = 6
        def dense_key(t):
            return (t.degree,) + tuple(-t.exponent(v) for v in range(n, 0, -1))
        terms = [
            Term((v, rng.randint(1, 3)) for v in rng.sample(range(1, n + 1), rng.randint(0, n)))
            for _ in range(120)
        ]
        for a in terms:
            for b in terms:
                assert (DEGREVLEX.key(a, n) > DEGREVLEX.key(b, n)) == (
                    dense_key(a) > dense_key(b)
                )

    def test_lex_order(self):
        n = 3
        key = lambda t: LEX.key(t, n)
        assert key(Term([(1, 1)])) > key(Term([(2, 5), (3, 5)]))

    def test_custom_precedence(self):
        order = MonomialOrder("lex", precedence=(3, 2, 1))
        assert order.key(Term([(3, 1)]), 3) > order.key(Term([(1, 5)]), 3)

    def test_elimination_order_blocks(self):
        order = _EliminationOrder(4)
        assert order.key(Term([(4, 1)]), 4) > order.key(Term([(1, 3), (2, 3)]), 4)


class TestArithmetic:
    def test_product_with_variable(self):
        lhs = poly("x1*x2 + x3*x4", 5) * Polynomial.variable(5, 5)
        assert lhs == poly("x1*x2*x5 + x3*x4*x5", 5)

    def test_lifted_pair_expansion(self):
        # x5*(x1*x2 + x3*x4) - x2*x3*(x1*x2*x3)
        q2p = Polynomial.variable(5, 5) * poly("x1*x2 + x3*x4", 5) - poly("x2*x3", 5) * poly("x1*x2*x3", 5)
        assert q2p == poly("x1*x2*x5 + x3*x4*x5 - x1*x2^2*x3^2", 5)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**31), st.integers(0, 2**31))
    def test_add_then_subtract(self, seed_f, seed_g):
        f = random_poly(Random(seed_f), 4)
        g = random_poly(Random(seed_g), 4)
        assert (f + g) - g == f
        assert f * g == g * f

    def test_power(self):
        f = poly("x1 + x2", 2)
        assert f**3 == poly("x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + x2^3", 2)
        assert f**0 == Polynomial.constant(1, 2)

    def test_substitute(self):
        f = poly("x1^2*x2 + x2", 2)
        g = f.substitute(1, poly("x2", 2))
        assert g == poly("x2^3 + x2", 2)

    def test_evaluate(self):
        f = poly("x1*x2 - 2", 2)
        assert f.evaluate({1: Fraction(3), 2: Fraction(1, 3)}) == Fraction(-1)

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError, match="ambient"):
            poly("x1", 2) + poly("x1", 3)


class TestParsing:
    def test_round_trip_known(self):
        for text in [
            "x1*x4*x5 - x1^2*x2^2*x3",
            "3/2*x1 - x2 + 1",
            "-x1^3 + 2*x2 - 5/7",
            "0",
        ]:
            p = parse_polynomial(text, 5)
            assert parse_polynomial(format_polynomial(p), 5) == p

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**31))
    def test_round_trip_random(self, seed):
        p = random_poly(Random(seed), 5)
        assert parse_polynomial(format_polynomial(p), 5) == p

    def test_errors_carry_position(self):
        from ararank.monomials import ParseError

        with pytest.raises(ParseError, match="line 1, col 6"):
            parse_polynomial("x1 + *x2")
        with pytest.raises(ParseError):
            parse_polynomial("x + 1")
        with pytest.raises(ParseError, match="zero denominator"):
            parse_polynomial("1/0*x1")

    def test_rational_coefficients(self):
        p = parse_polynomial("3/2*x1*x2")
        ((t, c),) = p.terms.items()
        assert c == Fraction(3, 2)


class TestDivision:
    def test_simple_quotient(self):
        cofs, r = divide_with_cofactors(poly("x1^2", 1), [poly("x1", 1)])
        assert cofs[0] == poly("x1", 1) and r.is_zero

    def test_remainder_constant(self):
        cofs, r = divide_with_cofactors(poly("x1*x2 + 1", 2), [poly("x1", 2)])
        assert r == Polynomial.constant(1, 2)

    def test_identity_and_remainder_property(self):
        rng = Random(31)
        for _ in range(30):
            n = 4
            gens = [random_poly(rng, n) for _ in range(3)]
            gens = [g for g in gens if not g.is_zero]
            if not gens:
                continue
            f = random_poly(rng, n, terms=6)
            cofs, r = divide_with_cofactors(f, gens, DEGREVLEX)
            total = r
            for c, g in zip(cofs, gens):
                total = total + c * g
            assert total == f
            leads = [g.leading(DEGREVLEX)[0] for g in gens]
            for t in r.terms:
                assert not any(lt.divides(t) for lt in leads)

    def test_construct_then_divide(self):
        rng = Random(37)
        for _ in range(20):
            n = 4
            gens = [random_poly(rng, n) for _ in range(2)]
            gens = [g for g in gens if not g.is_zero]
            if len(gens) < 2:
                continue
            c0, c1 = random_poly(rng, n), random_poly(rng, n)
            f = c0 * gens[0] + c1 * gens[1]
            cofs, r = divide_with_cofactors(f, gens)
            rebuilt = r
            for c, g in zip(cofs, gens):
                rebuilt = rebuilt + c * g
            assert rebuilt == f

    def test_zero_divisor_rejected(self):
        with pytest.raises(ValueError, match="zero"):
            divide_with_cofactors(poly("x1", 1), [Polynomial.zero(1)])


class TestBuchberger:
    def test_variables_already_basis(self):
        gens = [poly("x1", 2), poly("x2", 2)]
        gb = buchberger(gens)
        assert sorted(str(e) for e in gb.elements) == ["x1", "x2"]

    def test_monomial_ideals_are_groebner(self):
        gens = [poly("x1*x3", 4), poly("x2*x4", 4)]
        gb = buchberger(gens)
        assert len(gb.elements) == 2
        assert is_groebner_basis(gb.elements)

    def test_spoly_reduction_oracle(self):
        gb = buchberger([Q1, Q2], track=True)
        assert is_groebner_basis(gb.elements)
        rng = Random(41)
        for _ in range(10):
            gens = [random_poly(rng, 3) for _ in range(3)]
            gens = [g for g in gens if not g.is_zero]
            if not gens:
                continue
            gb = buchberger(gens)
            assert is_groebner_basis(gb.elements)

    def test_tracked_expressions_recombine(self):
        gens = (Q1, Q2)
        gb = buchberger(gens, track=True)
        for element, expr in zip(gb.elements, gb.expressions):
            total = Polynomial.zero(4)
            for e, g in zip(expr, gens):
                total = total + e * g
            assert total == element

    def test_unit_ideal_short_circuit(self):
        gb = buchberger([poly("x1", 1), poly("x1 - 1", 1)], track=True)
        assert gb.contains_one()
        (expr,) = gb.expressions
        assert expr[0] * poly("x1", 1) + expr[1] * poly("x1 - 1", 1) == Polynomial.constant(1, 1)


class TestMembership:
    def test_square_is_member(self):
        f = poly("x1^2*x2^2", 4)
        cert = membership(f, [Q1, Q2])
        assert cert is not None
        a11, a12 = cert.cofactors
        assert a11 * Q1 + a12 * Q2 == f

    def test_generator_itself(self):
        cert = membership(Q1, [Q1, Q2])
        assert cert.cofactors[0] == Polynomial.constant(1, 4)
        assert cert.cofactors[1].is_zero

    def test_nonmember(self):
        assert membership(poly("x1*x2", 4), [Q1, Q2]) is None

    def test_certificate_validation(self):
        with pytest.raises(ValueError, match="recombine"):
            MembershipCertificate(
                poly("x1", 2), (poly("x2", 2),), (Polynomial.constant(1, 2),)
            )

    def test_order_independence(self):
        rng = Random(43)
        for _ in range(15):
            gens = [random_poly(rng, 3) for _ in range(2)]
            gens = [g for g in gens if not g.is_zero]
            if not gens:
                continue
            f = random_poly(rng, 3, terms=3)
            verdict_drl = membership(f, gens, DEGREVLEX) is not None
            verdict_lex = membership(f, gens, LEX) is not None
            assert verdict_drl == verdict_lex


class TestRadicalMembership:
    def test_examples(self):
        assert radical_membership(poly("x1", 2), [poly("x1^2", 2)])
        assert not radical_membership(poly("x1", 2), [poly("x2", 2)])
        assert radical_membership(Polynomial.zero(2), [poly("x2", 2)])
        assert not radical_membership(poly("x1", 2), [])

    def test_lifted_pair_covers_scaled_generators(self):
        q1p = poly("x1*x4*x5 - x1^2*x2^2*x3", 5)
        q2p = poly("x1*x2*x5 + x3*x4*x5 - x1*x2^2*x3^2", 5)
        for support in [(1, 2), (1, 4), (3, 4)]:
            f = Polynomial.variable(5, 5) * Polynomial.from_squarefree(
                SquarefreeMonomial.from_indices(support, 5)
            )
            assert radical_membership(f, [q1p, q2p])

    def test_small_power_consistency(self):
        rng = Random(47)
        for _ in range(25):
            gens = [random_poly(rng, 3) for _ in range(2)]
            gens = [g for g in gens if not g.is_zero]
            if not gens:
                continue
            f = random_poly(rng, 3, terms=2)
            member_small_power = any(
                membership(f**k, gens) is not None for k in range(1, 4)
            )
            if member_small_power:
                assert radical_membership(f, gens)


class TestPowerMembership:
    def test_known_minimal_power(self):
        m = SquarefreeMonomial.from_indices((1, 2), 4)
        cert = power_membership(m, [Q1, Q2])
        assert cert.exponent == 2
        # minimality: the first power is not a member
        assert membership(Polynomial.from_squarefree(m), [Q1, Q2]) is None

    def test_generator_power_one(self):
        m = SquarefreeMonomial.from_indices((1, 4), 4)
        cert = power_membership(m, [Q1, Q2])
        assert cert.exponent == 1
        assert cert.certificate.cofactors[0] == Polynomial.constant(1, 4)
        assert cert.certificate.cofactors[1].is_zero

    def test_family_power_matches_level(self):
        from ararank.constructions import _family_chain, _family_monomial

        n = 6
        chain = _family_chain(n)
        m1 = _family_monomial(1, n, n)
        cert = power_membership(m1, list(chain[n]))
        assert cert.exponent == n - 2

    def test_lmax_exceeded(self):
        m = SquarefreeMonomial.from_indices((1, 2), 4)
        with pytest.raises(ValueError, match="lmax"):
            power_membership(m, [Q1, Q2], lmax=1)

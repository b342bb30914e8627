from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from helpers import (BINARY, OMEGA, TERNARY, comm_assoc_basis, left_power, random_generators)
from omegalg.errors import DomainError, InvariantViolation, ParseError, ValidationError
from omegalg.magma import LEX, RLEX, enumerate_monomials, nu, x
from omegalg.polyring import (GroebnerBasis, Polynomial, count_normal_words, format_polynomial,
                              gb_generating_function, groebner, ideal_membership,
                              infer_signature, is_reduced, leading_term, parse_polynomial,
                              parse_polynomial_file, quotient_hilbert, rajaee_series, reduce,
                              write_polynomial_file)
from omegalg.series import Series, solve_free_series
from omegalg.signature import OmegaSignature, parse_signature

X = x(1)
XX = nu(2, 1, X, X)
X_XX = nu(2, 1, X, XX)
XX_X = nu(2, 1, XX, X)
P = Polynomial.monomial
ASSOC = P(X_XX) - P(XX_X)    # x(xx) - (xx)x


def test_polynomial_basics():
    f = Polynomial({XX: 2, X: 3, X_XX: 0})
    assert len(f) == 2 and X_XX not in f.terms
    assert f - f == Polynomial()
    assert not Polynomial()
    assert (f * 0) == Polynomial()
    assert f.degrees() == {1, 2}
    with pytest.raises(DomainError):
        f.homogeneous_degree()


def test_leading_term_examples():
    assert leading_term(ASSOC, LEX) == (XX_X, -1)
    assert leading_term(P(X_XX, 5)) == (X_XX, 5)
    assert leading_term(Polynomial({XX: 2, X: 3})) == (XX, 2)
    with pytest.raises(DomainError):
        leading_term(Polynomial())


def test_reduce_examples():
    assert leading_term(ASSOC, RLEX)[0] == X_XX
    assert reduce(P(X_XX), [ASSOC], RLEX) == P(XX_X)
    assert reduce(P(XX), [ASSOC], RLEX) == P(XX)
    assert reduce(ASSOC, [ASSOC], RLEX) == Polynomial()


def test_reduce_rewrites_largest_first_at_first_occurrence():
    trace = []
    f = P(nu(2, 1, X_XX, X_XX))
    reduce(f, [ASSOC], RLEX, trace)
    m, path = trace[0]
    assert m == nu(2, 1, X_XX, X_XX) and path == (1,)
    # monomials rewritten never increase
    keys = [m.sort_key(RLEX) for m, _ in trace]
    assert keys == sorted(keys, reverse=True)


def test_groebner_examples():
    B = groebner([ASSOC], RLEX)
    assert B.elements == (ASSOC * -1,) or B.elements == (ASSOC,)
    assert leading_term(B.elements[0], RLEX) == (X_XX, 1)
    assert B.reduced and is_reduced(B)
    B2 = groebner([ASSOC * 3, ASSOC * 3], LEX)
    assert len(B2) == 1 and leading_term(B2.elements[0], LEX)[1] == 1
    second = P(nu(2, 1, X_XX, X)) - P(nu(2, 1, XX_X, X))
    B3 = groebner([ASSOC, second], RLEX)
    assert B3.elements == B.elements


def test_ideal_membership_examples():
    B = groebner([ASSOC], RLEX)
    assert ideal_membership(ASSOC * 7, B)
    assert not ideal_membership(P(XX_X), B)
    f = P(nu(2, 1, X, XX_X)) - P(nu(2, 1, X, X_XX))
    assert ideal_membership(f, B)


def test_every_monomial_reduces_to_left_power():
    for n, top in ((2, 7), (3, 9)):
        sig = OmegaSignature.nary(n)
        B = groebner(comm_assoc_basis(n, top), RLEX, sig)
        for k in range(1, top + 1):
            for m in enumerate_monomials(sig, 1, k):
                assert reduce(P(m), B.elements, RLEX) == P(left_power(n, k))


def test_quotient_hilbert_examples():
    B = groebner(comm_assoc_basis(2, 8), RLEX, BINARY)
    assert quotient_hilbert(B, (1,), 8) == Series([0] + [1] * 8)
    empty = GroebnerBasis((), LEX, True, BINARY)
    assert quotient_hilbert(empty, (1,), 10) == solve_free_series(BINARY, 10)
    B3 = groebner(comm_assoc_basis(3, 7), RLEX, TERNARY)
    assert quotient_hilbert(B3, (1,), 7) == Series([0, 1, 0, 1, 0, 1, 0, 1])


def test_quotient_hilbert_rejects_bad_input():
    inhomogeneous = GroebnerBasis((P(XX) + P(X),), LEX, True, BINARY)
    with pytest.raises(DomainError):
        quotient_hilbert(inhomogeneous, (1,), 5)
    with pytest.raises(DomainError):
        quotient_hilbert(GroebnerBasis((), LEX, True, None), (1,), 5)


def test_quotient_hilbert_detects_mismatch():
    # not reduced: xx is a subword of x(xx), so the two counts disagree
    fake = GroebnerBasis((P(XX), P(X_XX)), LEX, True, BINARY)
    with pytest.raises(InvariantViolation):
        quotient_hilbert(fake, (1,), 5)


def test_weighted_quotient():
    # two generators of weights 1 and 2, killing x1 x1 - x2
    f = P(XX) - P(x(2))
    B = groebner([f], LEX, BINARY)
    assert leading_term(B.elements[0])[0] == XX
    h = quotient_hilbert(B, (1, 2), 8)
    assert h == rajaee_series(B, (1, 2), 8, BINARY)


def expected_gb_series(n, top):
    cs = [0] * (top + 1)
    m = 0
    while n + (n - 1) * m <= top:
        cs[n + (n - 1) * m] = comb(m + n - 1, n - 1) - 1
        m += 1
    return Series(cs)


def test_gb_generating_function_examples():
    t = Series.t(12)
    geometric = Series([0] + [1] * 12)
    assert gb_generating_function(geometric, BINARY, t) == expected_gb_series(2, 12)
    assert [int(c) for c in expected_gb_series(2, 6).coeffs] == [0, 0, 0, 1, 2, 3, 4]
    free = solve_free_series(OMEGA, 10)
    assert gb_generating_function(free, OMEGA, Series.t(10)) == Series.zero(10)
    odd = Series([0] + [1 if k % 2 else 0 for k in range(1, 13)])
    g3 = gb_generating_function(odd, TERNARY, t)
    assert g3 == expected_gb_series(3, 12)
    assert (g3[5], g3[7]) == (2, 5)


@pytest.mark.parametrize("n", [2, 3])
def test_constructed_basis_has_predicted_size(n):
    gens = comm_assoc_basis(n, 12)
    counts = [0] * 13
    for g in gens:
        counts[g.homogeneous_degree()] += 1
    assert Series(counts) == expected_gb_series(n, 12)


@pytest.mark.parametrize("seed", range(8))
def test_rajaee_random(seed):
    sig = [BINARY, TERNARY][seed % 2]
    gens = random_generators(seed, sig, 3, [2, 3, 4, 5])
    B = groebner(gens, LEX, sig)
    assert is_reduced(B)
    assert count_normal_words(B, (1,), 8, sig) == rajaee_series(B, (1,), 8, sig)


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("ordering", [LEX, RLEX])
def test_groebner_idempotent_and_members(seed, ordering):
    gens = random_generators(100 + seed, BINARY, 4, [2, 3, 4])
    B = groebner(gens, ordering, BINARY)
    assert groebner(B.elements, ordering, BINARY).elements == B.elements
    assert len(B) <= len(gens)
    for g in gens:
        assert ideal_membership(g, B)


def test_ideal_is_closed_under_operations():
    B = groebner([ASSOC], RLEX, BINARY)
    g = B.elements[0]
    from omegalg.polyring import apply_op

    for other in (P(X), P(XX), P(X_XX) + P(XX_X)):
        assert ideal_membership(apply_op(2, 1, [g, other]), B)
        assert ideal_membership(apply_op(2, 1, [other, g]), B)


# text format

def test_polynomial_text_round_trip():
    text = "1*(nu 2 1 x1 (nu 2 1 x1 x1)) + -1*(nu 2 1 (nu 2 1 x1 x1) x1)"
    f = parse_polynomial(text)
    assert f == ASSOC
    assert parse_polynomial(format_polynomial(f)) == f
    assert format_polynomial(f, LEX) == "-1*(nu 2 1 (nu 2 1 x1 x1) x1) + 1*(nu 2 1 x1 (nu 2 1 x1 x1))"
    g = parse_polynomial("3/4*x1 + -2/3*(nu 2 1 x1 x2)")
    assert g.coeff(X) == Fraction(3, 4)
    assert parse_polynomial("0") == Polynomial()
    assert format_polynomial(Polynomial()) == "0"


@pytest.mark.parametrize("text", ["x1", "1*", "1*(nu 2 1 x1 x1) 2*x1", "1*(nu 2 1 x1 x1",
                                  "1/0*x1", "a*x1", "1*(nu 2 1 x1)"])
def test_polynomial_parse_errors(text):
    with pytest.raises(ParseError):
        parse_polynomial(text)


def test_polynomial_parse_validates():
    with pytest.raises(ValidationError):
        parse_polynomial("1*(nu 3 1 x1 x1 x1)", BINARY)


def test_polynomial_file():
    text = """# commutativity and associativity
# sig: binary
# ord: rlex
1*(nu 2 1 x1 (nu 2 1 x1 x1)) + -1*(nu 2 1 (nu 2 1 x1 x1) x1)

# weights: 1
"""
    pf = parse_polynomial_file(text)
    assert pf.polys == [ASSOC]
    assert pf.sig == BINARY and pf.ordering == RLEX and pf.weights == (1,)
    again = parse_polynomial_file(write_polynomial_file(pf.polys, RLEX, BINARY))
    assert again.polys == pf.polys and again.sig == BINARY
    with pytest.raises(ParseError, match="line 2"):
        parse_polynomial_file("# a\n1*x1 +\n")


def test_infer_signature():
    f = parse_polynomial("1*(nu 3 2 x1 x1 (nu 2 1 x1 x1))")
    assert infer_signature([f]) == parse_signature("custom:2=1,3=2")
    assert infer_signature([]) == parse_signature("custom:")


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_reduce_gives_normal_form(seed):
    gens = random_generators(seed, BINARY, 3, [2, 3])
    B = groebner(gens, LEX, BINARY)
    lms = set(B.leading_monomials())
    f = random_generators(seed + 1, BINARY, 1, [4, 5])[0]
    r = reduce(f, B.elements, LEX)
    for m in r.terms:
        assert all(sub not in lms for _, sub in m.subterms())
    # f - r lies in the ideal
    assert ideal_membership(f - r, B)

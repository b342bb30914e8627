"""Closed forms and instance builders shared by the tests."""

import random
from fractions import Fraction
from math import comb

from omegalg.magma import Monomial, enumerate_monomials
from omegalg.polyring import Polynomial
from omegalg.signature import OmegaSignature


def catalan(k):
    return comb(2 * k - 2, k - 1) // k


def super_catalan(k):
    # (1/2k) sum_{j=1}^{k-1} C(k,j) C(k-2,j-1) 2^j, for k >= 2
    if k == 1:
        return 1
    s = sum(comb(k, j) * comb(k - 2, j - 1) * 2 ** j for j in range(1, k))
    return Fraction(s, 2 * k)


def nary_count(n, k):
    """n-ary trees with k leaves: C(mn, m)/(m(n-1)+1) when k = m(n-1)+1."""
    if (k - 1) % (n - 1):
        return 0
    m = (k - 1) // (n - 1)
    return Fraction(comb(m * n, m), m * (n - 1) + 1)


def left_power(n, k):
    """Left-normed power of x1 of degree k, for an n-ary operation."""
    m = Monomial(var=1)
    x = m
    while m.degree < k:
        m = Monomial(arity=n, op=1, children=(m,) + (x,) * (n - 1))
    assert m.degree == k
    return m


def power_tuples(n, total):
    """Ordered n-tuples of power degrees (each = 1 mod n-1) summing to total."""
    def rec(parts, rest):
        if parts == 1:
            return [(rest,)] if rest >= 1 and (rest - 1) % (n - 1) == 0 else []
        out = []
        for a in range(1, rest - parts + 2, n - 1):
            out += [(a,) + t for t in rec(parts - 1, rest - a)]
        return out

    return rec(n, total)


def comm_assoc_basis(n, trunc):
    """Reduced Groebner basis, degrees <= trunc, of the ideal making the
    n-ary operation commutative and associative in one variable, for the
    right-to-left ordering, where left-normed powers are the normal words.
    """
    out = []
    for k in range(n, trunc + 1):
        if (k - 1) % (n - 1):
            continue
        p = left_power(n, k)
        for t in power_tuples(n, k):
            m = Monomial(arity=n, op=1, children=tuple(left_power(n, a) for a in t))
            if m != p:
                out.append(Polynomial({m: 1, p: -1}))
    return out


def random_homogeneous(rng, sig, d, degree, max_terms=3):
    mons = enumerate_monomials(sig, d, degree)
    picks = rng.sample(list(mons), min(len(mons), rng.randint(1, max_terms)))
    return Polynomial({m: rng.choice([-3, -2, -1, 1, 2, 3]) for m in picks})


def random_generators(seed, sig, count, degrees, d=1):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.choice([k for k in degrees if enumerate_monomials(sig, d, k)])
        out.append(random_homogeneous(rng, sig, d, k))
    return out


BINARY = OmegaSignature.binary()
OMEGA = OmegaSignature.omega()
TERNARY = OmegaSignature.nary(3)

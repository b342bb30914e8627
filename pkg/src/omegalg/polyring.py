"""Omega-polynomials, normal forms and Groebner bases of Omega-ideals.

Ideals here are two-sided in the multioperator sense: closed under every
operation with arbitrary arguments.  Since an Omega-monomial cannot have
two leading words overlapping properly (subwords are either nested or
disjoint), the Buchberger procedure degenerates to interreduction.
"""

from __future__ import annotations

import heapq
import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DomainError, InvariantViolation, ParseError
from .magma import (LEX, RLEX, Monomial, OrderingSpec, compositions, graft, parse_term,
                    print_term)
from .series import Series, compose, generators_gen_fn, solve_substituted
from .signature import FINITE, OmegaSignature, gen_fn, parse_signature


class Polynomial:
    """Finite rational combination of monomials.

    The ambient signature is not stored; it travels with the
    :class:`GroebnerBasis` or is passed to the operations that need it.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for m, c in items:
            acc[m] = acc.get(m, 0) + Fraction(c)
        self.terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def monomial(cls, m: Monomial, coeff=1) -> Polynomial:
        return cls({m: coeff})

    @classmethod
    def _raw(cls, terms: dict) -> Polynomial:
        p = cls.__new__(cls)
        p.terms = terms
        return p

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __eq__(self, other):
        if isinstance(other, Monomial):
            other = Polynomial.monomial(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)

    def coeff(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def __add__(self, other):
        if isinstance(other, Monomial):
            other = Polynomial.monomial(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, Monomial):
            other = Polynomial.monomial(other)
        return self + (-other)

    def __mul__(self, scalar):
        s = Fraction(scalar)
        if not s:
            return Polynomial()
        return Polynomial._raw({m: c * s for m, c in self.terms.items()})

    __rmul__ = __mul__

    def degrees(self, weights: Sequence[int] | None = None) -> set[int]:
        return {m.weighted_degree(weights) for m in self.terms}

    def homogeneous_degree(self, weights: Sequence[int] | None = None) -> int:
        """The common (weighted) degree of all terms; DomainError otherwise."""
        ds = self.degrees(weights)
        if len(ds) != 1:
            raise DomainError(f"polynomial is not homogeneous (degrees {sorted(ds)})")
        return ds.pop()

    def variables(self) -> set[int]:
        return {v for m in self.terms for v in m.leaves()}

    def monic(self, ordering: OrderingSpec = LEX) -> Polynomial:
        _, c = leading_term(self, ordering)
        return self * (1 / c)

    def sorted_terms(self, ordering: OrderingSpec = LEX) -> list[tuple[Monomial, Fraction]]:
        """Terms from the largest monomial down."""
        return sorted(self.terms.items(), key=lambda mc: mc[0].sort_key(ordering), reverse=True)


def apply_op(arity: int, op: int, args: Sequence[Polynomial]) -> Polynomial:
    """``nu_{arity,op}(args)`` expanded multilinearly."""
    if len(args) != arity:
        raise DomainError(f"arity {arity} with {len(args)} arguments")
    combos = [((), Fraction(1))]
    for a in args:
        combos = [(ms + (m,), c * d) for ms, c in combos for m, d in a.terms.items()]
    out: dict[Monomial, Fraction] = {}
    for ms, c in combos:
        m = Monomial(arity=arity, op=op, children=ms)
        out[m] = out.get(m, 0) + c
    return Polynomial(out)


def substitute(expr: Monomial, images: Sequence[Polynomial]) -> Polynomial:
    """Evaluate a magma expression, leaf ``x_i`` meaning ``images[i-1]``."""
    if expr.is_leaf:
        if not 1 <= expr.var <= len(images):
            raise DomainError(f"no image for x{expr.var}")
        return images[expr.var - 1]
    return apply_op(expr.arity, expr.op, [substitute(c, images) for c in expr.children])


def substitute_poly(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """The endomorphism ``x_i -> images[i-1]`` applied to ``f``."""
    out = Polynomial()
    for m, c in f.terms.items():
        out = out + substitute(m, images) * c
    return out


def replace_at_path(m: Monomial, path: Sequence[int], replacement: Polynomial) -> Polynomial:
    """Put ``replacement`` into the slot of ``m`` at ``path``, linearly."""
    return Polynomial._raw({graft(m, path, s): c for s, c in replacement.terms.items()})


def leading_term(f: Polynomial, ordering: OrderingSpec = LEX) -> tuple[Monomial, Fraction]:
    if not f:
        raise DomainError("the zero polynomial has no leading term")
    m = max(f.terms, key=lambda u: u.sort_key(ordering))
    return m, f.terms[m]


class _Desc:
    """Heap entry that pops the largest monomial first."""

    __slots__ = ("key", "m")

    def __init__(self, m, ordering):
        self.m = m
        self.key = m.sort_key(ordering)

    def __lt__(self, other):
        return self.key > other.key


def _rules(basis: Iterable[Polynomial], ordering: OrderingSpec) -> dict[Monomial, Polynomial]:
    """Leading monomial -> what it rewrites to, i.e. ``lm - g/lc``."""
    rules = {}
    for g in basis:
        lm, lc = leading_term(g, ordering)
        if lm in rules:
            continue
        tail = {m: -c / lc for m, c in g.terms.items() if m != lm}
        rules[lm] = Polynomial._raw(tail)
    return rules


def _first_redex(m: Monomial, rules: dict):
    for path, sub in m.subterms():
        rule = rules.get(sub)
        if rule is not None:
            return path, rule
    return None


def reduce(f: Polynomial, basis: Sequence[Polynomial], ordering: OrderingSpec = LEX,
           trace: list | None = None) -> Polynomial:
    """Normal form of ``f`` modulo ``basis``.

    The largest reducible monomial is rewritten first, at the first preorder
    occurrence of a leading word.  Rewriting only ever produces smaller
    monomials, so each monomial is examined at most once.
    """
    rules = _rules(basis, ordering)
    if not rules:
        return Polynomial._raw(dict(f.terms))
    work = dict(f.terms)
    heap = [_Desc(m, ordering) for m in work]
    heapq.heapify(heap)
    queued = set(work)
    out = {}
    while heap:
        m = heapq.heappop(heap).m
        queued.discard(m)
        c = work.pop(m, 0)
        if not c:
            continue
        hit = _first_redex(m, rules)
        if hit is None:
            out[m] = c
            continue
        path, rule = hit
        if trace is not None:
            trace.append((m, path))
        for s, d in rule.terms.items():
            u = graft(m, path, s)
            v = work.get(u, 0) + c * d
            if v:
                work[u] = v
                if u not in queued:
                    queued.add(u)
                    heapq.heappush(heap, _Desc(u, ordering))
            else:
                work.pop(u, None)
    return Polynomial._raw(out)


@dataclass(frozen=True)
class GroebnerBasis:
    elements: tuple[Polynomial, ...]
    ordering: OrderingSpec = LEX
    reduced: bool = True
    sig: OmegaSignature | None = None

    def leading_monomials(self) -> list[Monomial]:
        return [leading_term(g, self.ordering)[0] for g in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def groebner(gens: Iterable[Polynomial], ordering: OrderingSpec = LEX,
             sig: OmegaSignature | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    No S-polynomials exist for Omega-monomials, so interreducing until
    nothing changes already yields the reduced basis.
    """
    basis = [g.monic(ordering) for g in gens if g]
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(basis):
            others = basis[:i] + basis[i + 1:]
            r = reduce(basis[i], others, ordering)
            if not r:
                del basis[i]
                changed = True
                continue
            r = r.monic(ordering)
            if r != basis[i]:
                basis[i] = r
                changed = True
            i += 1
    basis.sort(key=lambda g: leading_term(g, ordering)[0].sort_key(ordering))
    return GroebnerBasis(tuple(basis), ordering, True, sig)


def is_reduced(B: GroebnerBasis) -> bool:
    """Check the reducedness conditions directly, by subword search."""
    lms = B.leading_monomials()
    for i, g in enumerate(B.elements):
        if leading_term(g, B.ordering)[1] != 1:
            return False
        others = {m for j, m in enumerate(lms) if j != i}
        for m in g.terms:
            for _, sub in m.subterms():
                if sub in others:
                    return False
            if m != lms[i] and any(sub == lms[i] for _, sub in m.subterms()):
                return False
    return True


def ideal_membership(f: Polynomial, B: GroebnerBasis) -> bool:
    return not reduce(f, B.elements, B.ordering)


def _check_homogeneous(B: GroebnerBasis, weights: Sequence[int]) -> list[int]:
    degs = []
    for g in B.elements:
        if any(v > len(weights) for v in g.variables()):
            raise DomainError(f"polynomial uses a variable beyond x{len(weights)}")
        degs.append(g.homogeneous_degree(weights))
    return degs


def rajaee_series(B: GroebnerBasis, weights: Sequence[int], trunc: int,
                  sig: OmegaSignature) -> Series:
    """``H(free, G(X) - G(B))`` from the degrees of the basis elements alone."""
    degs = _check_homogeneous(B, weights)
    gb = [0] * (trunc + 1)
    for k in degs:
        if k <= trunc:
            gb[k] += 1
    u = generators_gen_fn(weights, trunc) - Series(gb)
    return solve_substituted(sig, u)


def count_normal_words(B: GroebnerBasis, weights: Sequence[int], trunc: int,
                       sig: OmegaSignature, limit: int = 200_000) -> Series:
    """Count monomials with no leading word as a subword, degree by degree.

    Normal words are built from normal children and kept unless they are
    themselves a leading word.  Degrees above every leading word contain
    no leading word at all, so once a slice would exceed ``limit`` words
    (and no leading word lives at or above it) it is counted, not listed.
    """
    weights = tuple(weights)
    _check_homogeneous(B, weights)
    lms = set(B.leading_monomials())
    top = max((m.weighted_degree(weights) for m in lms), default=0)
    words: dict[int, list[Monomial]] = {}
    counts = [0] * (trunc + 1)
    for k in range(1, trunc + 1):
        listed = k <= top
        total = sum(1 for w in weights if w == k)
        prods = []
        for n, p in sig.arities_upto(k):
            for parts in compositions(k, n):
                size = p
                for c in parts:
                    size *= counts[c]
                total += size
                if size:
                    prods.append((n, p, parts))
        if listed and total > limit:
            raise DomainError(f"too many words at degree {k} to enumerate normal forms")
        if total <= limit and all(c in words for n, p, parts in prods for c in parts):
            cur = [m for m in (Monomial.leaf(j) for j, w in enumerate(weights, 1) if w == k)
                   if m not in lms]
            for n, p, parts in prods:
                for kids in itertools.product(*(words[c] for c in parts)):
                    for i in range(1, p + 1):
                        m = Monomial(arity=n, op=i, children=kids)
                        if m not in lms:
                            cur.append(m)
            words[k] = cur
            counts[k] = len(cur)
        else:
            counts[k] = total
    return Series(counts)


def quotient_hilbert(B: GroebnerBasis, weights: Sequence[int] | None = None, trunc: int = 8,
                     sig: OmegaSignature | None = None) -> Series:
    """Hilbert series of the quotient by the ideal with reduced basis ``B``.

    Computed by counting normal words and by the closed formula; a
    disagreement raises :class:`InvariantViolation`.
    """
    sig = sig or B.sig
    if sig is None:
        raise DomainError("quotient_hilbert needs a signature")
    if trunc < 1:
        raise DomainError("truncation degree must be >= 1")
    if weights is None:
        nvars = max((v for g in B.elements for v in g.variables()), default=1)
        weights = (1,) * nvars
    weights = tuple(weights)
    if not weights or min(weights) < 1:
        raise DomainError("weights must be positive")
    formula = rajaee_series(B, weights, trunc, sig)
    counted = count_normal_words(B, weights, trunc, sig)
    if formula != counted:
        raise InvariantViolation(
            f"normal-word count {counted.coeffs} disagrees with formula {formula.coeffs}")
    return counted


def gb_generating_function(H_A: Series, sig: OmegaSignature, G_X: Series) -> Series:
    """``G(Omega, H_A) - H_A + G_X``: degrees of the reduced basis elements."""
    if H_A[0] or G_X[0]:
        raise DomainError("series must have zero constant term")
    n = min(H_A.trunc, G_X.trunc)
    return compose(gen_fn(sig, max(n, 1)), H_A.truncate(n)) - H_A.truncate(n) + G_X.truncate(n)


# text format: <rat>*<term> (+ <rat>*<term>)*

_RAT = re.compile(r"\s*([+-]?\s*\d+(?:/\d+)?)\s*\*\s*")


def _term_end(text: str, pos: int) -> int:
    if text.startswith("x", pos):
        mt = re.compile(r"x\d+").match(text, pos)
        if mt is None:
            raise ParseError(f"bad variable at {text[pos:pos + 10]!r}")
        return mt.end()
    if not text.startswith("(", pos):
        raise ParseError(f"expected a term at {text[pos:pos + 10]!r}")
    depth = 0
    for i in range(pos, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i + 1
    raise ParseError(f"unbalanced parentheses in {text.strip()!r}")


def parse_polynomial(text: str, sig: OmegaSignature | None = None) -> Polynomial:
    s = text.strip()
    if s == "0":
        return Polynomial()
    terms = []
    pos = 0
    while True:
        mt = _RAT.match(s, pos)
        if mt is None:
            raise ParseError(f"expected '<rational>*<term>' at {s[pos:pos + 12]!r}")
        try:
            c = Fraction(mt.group(1).replace(" ", ""))
        except ZeroDivisionError as exc:
            raise ParseError(f"zero denominator in {mt.group(1)!r}") from exc
        pos = mt.end()
        end = _term_end(s, pos)
        terms.append((parse_term(s[pos:end], sig), c))
        pos = end
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos == len(s):
            break
        if s[pos] != "+":
            raise ParseError(f"expected '+' between terms, got {s[pos]!r}")
        pos += 1
    return Polynomial(terms)


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(f: Polynomial, ordering: OrderingSpec = LEX) -> str:
    """Canonical text, largest monomial first; the zero polynomial prints as ``0``."""
    if not f:
        return "0"
    return " + ".join(f"{_fmt_rat(c)}*{print_term(m)}" for m, c in f.sorted_terms(ordering))


class PolynomialFile(NamedTuple):
    polys: list[Polynomial]
    sig: OmegaSignature | None
    ordering: OrderingSpec | None
    weights: tuple[int, ...] | None


def infer_signature(polys: Iterable[Polynomial]) -> OmegaSignature:
    """Smallest finite signature containing every operation used."""
    need: dict[int, int] = {}
    for f in polys:
        for m in f.terms:
            for _, sub in m.subterms():
                if sub.arity:
                    need[sub.arity] = max(need.get(sub.arity, 0), sub.op)
    return OmegaSignature(FINITE, tuple(need.items()))


def parse_ordering(text: str) -> OrderingSpec:
    s = text.strip()
    if s == "lex":
        return LEX
    if s == "rlex":
        return RLEX
    raise ParseError(f"unknown ordering {s!r} (expected lex or rlex)")


def parse_polynomial_file(text: str) -> PolynomialFile:
    """One polynomial per line.  ``#`` starts a comment; the comment lines
    ``# sig: S``, ``# ord: lex|rlex`` and ``# weights: w1,w2,...`` set
    metadata.
    """
    sig = ordering = weights = None
    body = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            key, sep, val = s[1:].partition(":")
            key = key.strip()
            if sep and key == "sig":
                sig = parse_signature(val)
            elif sep and key == "ord":
                ordering = parse_ordering(val)
            elif sep and key == "weights":
                try:
                    weights = tuple(int(w) for w in val.split(","))
                except ValueError as exc:
                    raise ParseError(f"line {lineno}: bad weights {val.strip()!r}") from exc
            continue
        body.append((lineno, s))
    polys = []
    for lineno, s in body:
        try:
            polys.append(parse_polynomial(s, sig))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    return PolynomialFile(polys, sig, ordering, weights)


def read_polynomial_file(path) -> PolynomialFile:
    return parse_polynomial_file(Path(path).read_text())


def write_polynomial_file(polys: Iterable[Polynomial], ordering: OrderingSpec = LEX,
                          sig: OmegaSignature | None = None) -> str:
    lines = []
    if sig is not None:
        lines.append(f"# sig: {sig}")
    lines.append(f"# ord: {ordering.child_rule}")
    lines.extend(format_polynomial(f, ordering) for f in polys)
    return "\n".join(lines) + "\n"

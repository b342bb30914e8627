"""Truncated univariate power series with exact rational coefficients.

Besides the ring operations this module holds the solvers for the
functional equation ``G(Omega, H) - H + u = 0`` that governs Hilbert series
of free multioperator algebras, Lagrange inversion, and numerical growth
(exponent) estimates.
"""

from __future__ import annotations

import csv
import io
import json
import math
import operator
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import TYPE_CHECKING, Iterable, NamedTuple

from .errors import DomainError, ParseError

if TYPE_CHECKING:
    from .signature import OmegaSignature


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {x!r}") from exc
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass int, Fraction or 'p/q'")
    return Fraction(x)


class Series:
    """``sum_{k=0}^{trunc} c_k t^k``, known exactly up to ``t^trunc``.

    Binary operations truncate to the smaller of the two truncations, so a
    result never claims more precision than its inputs carry.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = (), trunc: int | None = None):
        cs = [_frac(c) for c in coeffs]
        if trunc is not None:
            if trunc < 0:
                raise DomainError("truncation degree must be >= 0")
            cs = cs[: trunc + 1] + [Fraction(0)] * (trunc + 1 - len(cs))
        if not cs:
            raise DomainError("a series needs at least the constant coefficient")
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def t(cls, trunc: int) -> Series:
        """The indeterminate itself."""
        return cls([0, 1], trunc)

    @classmethod
    def zero(cls, trunc: int) -> Series:
        return cls([], trunc)

    @classmethod
    def one(cls, trunc: int) -> Series:
        return cls([1], trunc)

    @classmethod
    def monomial(cls, k: int, trunc: int, coeff=1) -> Series:
        return cls([0] * k + [coeff], trunc)

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*t^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"Series({' + '.join(terms) or '0'}; trunc={self.trunc})"

    def truncate(self, n: int) -> Series:
        if n > self.trunc:
            raise DomainError(f"cannot extend truncation {self.trunc} to {n}")
        return Series(self.coeffs[: n + 1])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def as_ints(self) -> list[int]:
        if not self.is_integral():
            raise DomainError("series has non-integer coefficients")
        return [c.numerator for c in self.coeffs]

    # ring operations

    def __add__(self, other):
        if not isinstance(other, Series):
            other = Series([other], self.trunc)
        n = min(self.trunc, other.trunc)
        return Series([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            n = min(self.trunc, other.trunc)
            return Series(_mul_lists(self.coeffs, other.coeffs, n))
        c = _frac(other)
        return Series([c * a for a in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.inverse()
        c = _frac(other)
        return Series([a / c for a in self.coeffs])

    def __pow__(self, k: int) -> Series:
        if k < 0:
            return self.inverse() ** (-k)
        result = Series.one(self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> Series:
        """Multiplicative inverse; needs a nonzero constant term."""
        a = self.coeffs
        if a[0] == 0:
            raise DomainError("series with zero constant term is not invertible")
        inv = [1 / a[0]]
        for k in range(1, len(a)):
            s = sum(map(operator.mul, a[1 : k + 1], reversed(inv)))
            inv.append(-s / a[0])
        return Series(inv)

    def compose(self, inner: Series) -> Series:
        """``self(inner(t))``; ``inner`` must have zero constant term."""
        return compose(self, inner)

    def hadamard(self, other: Series) -> Series:
        n = min(self.trunc, other.trunc)
        return Series([a * b for a, b in zip(self.coeffs[: n + 1], other.coeffs)])

    # serialization

    def to_json(self) -> str:
        return json.dumps({"trunc": self.trunc, "coeffs": [_fmt(c) for c in self.coeffs]})

    @classmethod
    def from_json(cls, text: str) -> Series:
        try:
            data = json.loads(text)
            trunc = int(data["trunc"])
            coeffs = data["coeffs"]
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad series JSON: {exc}") from exc
        if len(coeffs) != trunc + 1:
            raise ParseError(f"series JSON has {len(coeffs)} coefficients for trunc {trunc}")
        return cls([_frac(str(c)) for c in coeffs])

    def to_csv(self) -> str:
        """Rows ``degree,numerator,denominator`` for degrees ``1..trunc``.

        The constant term is written only when it is nonzero.
        """
        out = ["degree,numerator,denominator"]
        for k, c in enumerate(self.coeffs):
            if k == 0 and c == 0:
                continue
            out.append(f"{k},{c.numerator},{c.denominator}")
        return "\n".join(out) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> Series:
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or [h.strip() for h in rows[0]] != ["degree", "numerator", "denominator"]:
            raise ParseError("series CSV must start with header degree,numerator,denominator")
        found = {}
        for row in rows[1:]:
            if not row:
                continue
            try:
                k, p, q = (int(x) for x in row)
            except ValueError as exc:
                raise ParseError(f"bad series CSV row {row!r}") from exc
            if q == 0:
                raise ParseError(f"zero denominator in row {row!r}")
            found[k] = Fraction(p, q)
        if not found:
            raise ParseError("series CSV has no rows")
        top = max(found)
        return cls([found.get(k, 0) for k in range(top + 1)])


def _fmt(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _mul_lists(a, b, n):
    out = []
    for k in range(n + 1):
        out.append(sum(map(operator.mul, a[: k + 1], reversed(b[: k + 1]))))
    return out


def add(a: Series, b: Series) -> Series:
    return a + b


def mul(a: Series, b: Series) -> Series:
    return a * b


def compose(outer: Series, inner: Series) -> Series:
    """Substitute ``inner`` for ``t`` in ``outer``.

    The result is truncated at ``min(outer.trunc, inner.trunc)``; powers of
    ``inner`` start at ``t^k``, so only that many are needed.
    """
    if inner.coeffs[0] != 0:
        raise DomainError("inner series of a composition must have zero constant term")
    n = min(outer.trunc, inner.trunc)
    result = [Fraction(0)] * (n + 1)
    result[0] = outer.coeffs[0]
    power = list(inner.coeffs[: n + 1])
    for k in range(1, n + 1):
        c = outer.coeffs[k]
        if c:
            for i in range(k, n + 1):
                result[i] += c * power[i]
        if k < n:
            power = _mul_lists(power, inner.coeffs, n)
    return Series(result)


def generators_gen_fn(weights: Iterable[int], trunc: int) -> Series:
    """``G(X, t) = sum_j t^{w_j}`` for generators of positive integer weights."""
    coeffs = [0] * (trunc + 1)
    for w in weights:
        if w < 1:
            raise DomainError("generator weights must be positive")
        if w <= trunc:
            coeffs[w] += 1
    return Series(coeffs)


def solve_free_series(sig: OmegaSignature, trunc: int) -> Series:
    """Hilbert series of the one-generated free algebra over ``sig``.

    Solves ``G(Omega, H) - H + t = 0`` degree by degree: the coefficient of
    ``t^k`` in ``H^n`` for ``n >= 2`` only involves coefficients of ``H``
    below ``k``.  The coefficients are integers, so the loop runs on ints.
    """
    if trunc < 1:
        raise DomainError("truncation degree must be >= 1")
    h = [0] * (trunc + 1)
    h[1] = 1
    if not sig.is_finite:
        # every arity once: G(H) = H^2 / (1 - H), i.e. G(H) = H^2 + H G(H)
        g = [0] * (trunc + 1)
        for k in range(2, trunc + 1):
            g[k] = sum(map(operator.mul, h[1:k], h[k - 1 : 0 : -1])) + sum(
                map(operator.mul, h[1:k], g[k - 1 : 0 : -1]))
            h[k] = g[k]
        return Series(h)
    ops = dict(sig.arities_upto(trunc))
    top = max(ops, default=1)
    # pows[n][k] = [t^k] H^n
    pows = {1: h}
    for n in range(2, top + 1):
        pows[n] = [0] * (trunc + 1)
    for k in range(2, trunc + 1):
        total = 0
        for n in range(2, min(top, k) + 1):
            prev = pows[n - 1]
            s = sum(map(operator.mul, prev[n - 1 : k], h[k - n + 1 : 0 : -1]))
            pows[n][k] = s
            p = ops.get(n)
            if p:
                total += p * s
        h[k] = total
    return Series(h)


def free_series(sig: OmegaSignature, trunc: int, weights: Iterable[int] = (1,)) -> Series:
    """Hilbert series of the free algebra on generators of the given weights."""
    return compose(solve_free_series(sig, trunc), generators_gen_fn(weights, trunc))


def solve_substituted(sig: OmegaSignature, u: Series) -> Series:
    """The unique ``v`` with ``v(0) = 0`` and ``G(Omega, v) - v + u = 0``."""
    if u[0] != 0:
        raise DomainError("u must have zero constant term")
    if u.trunc == 0:
        return Series.zero(0)
    return compose(solve_free_series(sig, u.trunc), u)


def lagrange_invert(f: Series, trunc: int | None = None) -> Series:
    """Solve ``t = z f(z)`` for ``z(t)`` with ``a_k = [zeta^(k-1)] f^(-k) / k``.

    ``f`` known to degree ``N`` determines ``z`` to degree ``N + 1``, which is
    the default truncation.
    """
    if f[0] == 0:
        raise DomainError("f(0) must be nonzero")
    if trunc is None:
        trunc = f.trunc + 1
    if trunc > f.trunc + 1:
        raise DomainError(f"f known to degree {f.trunc} only determines z to degree {f.trunc + 1}")
    if trunc < 1:
        return Series.zero(max(trunc, 0))
    g = f.inverse().truncate(trunc - 1)
    power = Series.one(trunc - 1)
    out = [Fraction(0)]
    for k in range(1, trunc + 1):
        power = power * g
        out.append(power[k - 1] / k)
    return Series(out)


class ExponentEstimate(NamedTuple):
    estimate: float
    spread: float
    method: str
    window: tuple[int, int]


def _support(coeffs) -> list[int]:
    return [k for k, c in enumerate(coeffs) if k > 0 and c != 0]


def _log(c: Fraction) -> float:
    return math.log(c.numerator) - math.log(c.denominator)


def estimate_exponent(h: Series, method: str = "ratio") -> ExponentEstimate:
    """Estimate ``limsup a_k^(1/k)`` from the tail of ``h``.

    ``root`` takes the largest ``a_k^(1/k)`` over the last quarter of the
    support.  ``ratio`` averages ``(a_{k+s}/a_k)^(1/s)`` over the last quarter
    of the support, where ``s`` is the gap of the (arithmetic) support.
    ``spread`` is max minus min over the sampled window.
    """
    support = _support(h.coeffs)
    if len(support) < 16:
        raise DomainError(f"need at least 16 nonzero coefficients, got {len(support)}")
    if any(h[k] < 0 for k in support):
        raise DomainError("exponent estimates need nonnegative coefficients")
    window = support[len(support) - len(support) // 4 :]
    if method == "root":
        vals = [math.exp(_log(h[k]) / k) for k in window]
        est = max(vals)
    elif method == "ratio":
        step = reduce(gcd, (b - a for a, b in zip(support, support[1:])))
        pairs = [k for k in window if k + step <= h.trunc and h[k + step] != 0]
        if not pairs:
            raise DomainError("no consecutive support pairs in the sampling window")
        vals = [math.exp((_log(h[k + step]) - _log(h[k])) / step) for k in pairs]
        est = sum(vals) / len(vals)
    else:
        raise DomainError(f"unknown method {method!r}; use 'root' or 'ratio'")
    return ExponentEstimate(est, max(vals) - min(vals), method, (window[0], window[-1]))


def scaled_exponent(exp1: float, d: int) -> float:
    """Exponent of the ``d``-generated free algebra from the one-generated one."""
    if d < 1:
        raise DomainError("number of generators must be >= 1")
    return d * exp1

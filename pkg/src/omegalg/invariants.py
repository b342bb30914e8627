"""Invariants of linear actions on free multioperator algebras.

A linear map on the span of the generators extends to an automorphism
acting on each homogeneous component tree shape by tree shape, as a
tensor power of the generator space.  Hence:

* for a finite group the Hilbert series of invariants averages
  ``sum_k b_k tr(g)^k t^k`` over the group, ``b_k`` counting tree shapes;
* for a Weitzenboeck derivation or an SL2 action, each component is a
  GL2-module ``b_q * chi^q`` and constants (invariants) are counted by
  decomposing it into irreducibles.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainError, InvariantViolation, ParseError
from .linalg import Echelon, kernel
from .magma import Monomial, enumerate_monomials, from_shape_and_leaves, graft
from .polyring import Polynomial, apply_op
from .series import Series, solve_free_series
from .signature import OmegaSignature

Matrix = tuple[tuple[Fraction, ...], ...]


def _matrix(rows, d: int | None = None) -> Matrix:
    try:
        m = tuple(tuple(Fraction(a) for a in row) for row in rows)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad matrix entry: {exc}") from exc
    n = len(m)
    if n == 0 or any(len(r) != n for r in m):
        raise DomainError("matrices must be square and nonempty")
    if d is not None and n != d:
        raise DomainError(f"expected a {d}x{d} matrix, got {n}x{n}")
    return m


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def identity(d: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def mat_rank(a: Matrix) -> int:
    e = Echelon()
    for row in a:
        e.add({j: v for j, v in enumerate(row) if v})
    return e.rank


class GroupAction:
    """Group generated by invertible rational ``d x d`` matrices.

    A matrix ``g`` sends ``x_j`` to ``sum_p g[p][j] x_p`` (columns are
    images).
    """

    def __init__(self, generators: Iterable, d: int | None = None):
        gens = [_matrix(g) for g in generators]
        if d is None:
            if not gens:
                raise DomainError("dimension needed when there are no generators")
            d = len(gens[0])
        if d < 1:
            raise DomainError("dimension must be >= 1")
        gens = [_matrix(g, d) for g in gens]
        for g in gens:
            if mat_rank(g) != d:
                raise DomainError("group generators must be invertible")
        self.d = d
        self.generators = tuple(gens)
        self._elements = None

    @classmethod
    def from_json(cls, text: str) -> GroupAction:
        try:
            data = json.loads(text)
            d = int(data["d"])
            gens = data["generators"]
            if not isinstance(gens, list):
                raise TypeError("generators must be a list of matrices")
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad group action JSON: {exc}") from exc
        return cls(gens, d)

    def to_json(self) -> str:
        return json.dumps({"d": self.d, "generators": [[[str(a) for a in row] for row in g]
                                                        for g in self.generators]})

    def elements(self, bound: int = 10_000) -> list[Matrix]:
        """All group elements, by closure under the generators."""
        if self._elements is not None and len(self._elements) <= bound:
            return self._elements
        e = identity(self.d)
        seen = {e}
        out = [e]
        frontier = [e]
        while frontier:
            nxt = []
            for a in frontier:
                for g in self.generators:
                    b = mat_mul(g, a)
                    if b not in seen:
                        if len(out) >= bound:
                            raise DomainError(f"group closure exceeds {bound} elements")
                        seen.add(b)
                        out.append(b)
                        nxt.append(b)
            frontier = nxt
        self._elements = out
        return out

    def order(self, bound: int = 10_000) -> int:
        return len(self.elements(bound))


def act(g: Matrix, f: Polynomial) -> Polynomial:
    """Image of ``f`` under the automorphism induced by ``g``."""
    cols = [{p + 1: g[p][j] for p in range(len(g)) if g[p][j]} for j in range(len(g))]
    memo: dict[Monomial, dict] = {}

    def image(m):
        got = memo.get(m)
        if got is not None:
            return got
        if m.is_leaf:
            res = {Monomial(var=v): c for v, c in cols[m.var - 1].items()}
        else:
            res = apply_op(m.arity, m.op, [Polynomial._raw(image(c)) for c in m.children]).terms
        memo[m] = res
        return res

    out: dict[Monomial, Fraction] = {}
    for m, c in f.terms.items():
        for u, a in image(m).items():
            v = out.get(u, 0) + a * c
            if v:
                out[u] = v
            else:
                out.pop(u)
    return Polynomial._raw(out)


def invariant_hilbert_finite_group(action: GroupAction, sig: OmegaSignature, trunc: int,
                                   bound: int = 10_000, crosscheck: int = 0) -> Series:
    """``(1/|G|) sum_g sum_k b_k tr(g)^k t^k``.

    With ``crosscheck = D`` the coefficients of degree ``<= D`` are also
    compared with the rank of the Reynolds operator.
    """
    els = action.elements(bound)
    b = solve_free_series(sig, trunc)
    out = [Fraction(0)] * (trunc + 1)
    for g in els:
        tr = trace(g)
        p = Fraction(1)
        for k in range(1, trunc + 1):
            p *= tr
            out[k] += b[k] * p
    h = Series([c / len(els) for c in out])
    for k in range(1, min(crosscheck, trunc) + 1):
        r = len(reynolds_basis(action, sig, k, bound))
        if r != h[k]:
            raise InvariantViolation(f"degree {k}: character formula gives {h[k]}, "
                                     f"Reynolds rank gives {r}")
    return h


def assoc_invariant_series(action: GroupAction, trunc: int, bound: int = 10_000) -> Series:
    """Invariants of the free associative algebra without unit:
    ``(1/|G|) sum_g (1/(1 - tr(g) t) - 1)``.
    """
    els = action.elements(bound)
    out = [Fraction(0)] * (trunc + 1)
    for g in els:
        tr = trace(g)
        p = Fraction(1)
        for k in range(1, trunc + 1):
            p *= tr
            out[k] += p
    return Series([c / len(els) for c in out])


def hadamard_invariants(assoc: Series, free_one_var: Series) -> Series:
    return assoc.hadamard(free_one_var)


def _tensor_image(g: Matrix, leaves: Sequence[int]) -> dict[tuple[int, ...], Fraction]:
    vec = {(): Fraction(1)}
    d = len(g)
    for j in leaves:
        col = [(p, g[p][j]) for p in range(d) if g[p][j]]
        vec = {idx + (p,): c * a for idx, c in vec.items() for p, a in col}
    return vec


def reynolds_basis(action: GroupAction, sig: OmegaSignature, degree: int,
                   bound: int = 10_000) -> list[Polynomial]:
    """Basis of the invariants of the given degree, as the image of the
    averaging operator.  The image inside one tree shape is the same
    subspace of the tensor power for every shape, so it is computed once.
    """
    els = action.elements(bound)
    d = action.d
    ech = Echelon()
    for word in itertools.product(range(d), repeat=degree):
        acc: dict = {}
        for g in els:
            for idx, c in _tensor_image(g, word).items():
                acc[idx] = acc.get(idx, 0) + c
        ech.add({k: v for k, v in acc.items() if v})
    shapes = enumerate_monomials(sig, 1, degree)
    out = []
    for shape in shapes:
        for row in ech.rows.values():
            out.append(Polynomial({from_shape_and_leaves(shape, [i + 1 for i in idx]): c
                                   for idx, c in row.items()}))
    return out


class LinearDerivation:
    """Nilpotent linear map on the generators, extended as a derivation:
    ``delta(x_j) = sum_p D[p][j] x_p``.
    """

    def __init__(self, matrix):
        m = _matrix(matrix)
        d = len(m)
        p = m
        for _ in range(d):
            p = mat_mul(p, m)
        if any(any(row) for row in p):
            raise DomainError("a Weitzenboeck derivation must be nilpotent")
        self.matrix = m
        self.d = d

    @classmethod
    def from_cells(cls, sizes: Sequence[int]) -> LinearDerivation:
        """Jordan cells on consecutive variables: ``x_j -> x_{j-1}`` inside a
        cell, the first variable of each cell going to zero.
        """
        if not sizes or min(sizes) < 1:
            raise DomainError("cell sizes must be positive")
        d = sum(sizes)
        rows = [[0] * d for _ in range(d)]
        start = 0
        for s in sizes:
            for j in range(start + 1, start + s):
                rows[j - 1][j] = 1
            start += s
        return cls(rows)

    @classmethod
    def from_unipotent(cls, g) -> LinearDerivation:
        """``log g`` for a unipotent matrix; its constants are the invariants of ``g``."""
        g = _matrix(g)
        d = len(g)
        n = tuple(tuple(g[i][j] - (i == j) for j in range(d)) for i in range(d))
        acc = [[Fraction(0)] * d for _ in range(d)]
        p = n
        for k in range(1, d + 1):
            s = Fraction((-1) ** (k + 1), k)
            for i in range(d):
                for j in range(d):
                    acc[i][j] += s * p[i][j]
            p = mat_mul(p, n)
        if any(any(row) for row in p):
            raise DomainError("matrix is not unipotent")
        return cls(acc)

    @property
    def cell_sizes(self) -> list[int]:
        """Jordan cell sizes, largest first, from ranks of powers."""
        ranks = [self.d]
        p = identity(self.d)
        while ranks[-1]:
            p = mat_mul(p, self.matrix)
            ranks.append(mat_rank(p))
        at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
        sizes = []
        for k in range(len(at_least), 0, -1):
            exact = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
            sizes += [k] * exact
        return sizes

    def apply(self, f: Polynomial) -> Polynomial:
        """Leibniz rule through every operation."""
        cols = [{p + 1: self.matrix[p][j] for p in range(self.d) if self.matrix[p][j]}
                for j in range(self.d)]
        out: dict[Monomial, Fraction] = {}
        for m, c in f.terms.items():
            for path, leaf in m.subterms():
                if not leaf.is_leaf:
                    continue
                for v, a in cols[leaf.var - 1].items():
                    u = graft(m, path, Monomial(var=v))
                    out[u] = out.get(u, 0) + a * c
        return Polynomial(out)


def constants_basis(delta: LinearDerivation, sig: OmegaSignature, degree: int) -> list[Polynomial]:
    """Basis of the kernel of ``delta`` on the homogeneous component."""
    if degree < 1:
        raise DomainError("degree must be >= 1")
    mons = enumerate_monomials(sig, delta.d, degree)
    index = {m: i for i, m in enumerate(mons)}

    def images():
        for i, m in enumerate(mons):
            img = delta.apply(Polynomial.monomial(m))
            yield i, {index[u]: c for u, c in img.terms.items()}

    return [Polynomial({mons[i]: c for i, c in vec.items()}) for vec in kernel(images())]


# Characters of GL2 in two variables: dicts (a, b) -> coefficient of u1^a u2^b.

def _check_partition(lam):
    a, b = lam
    if b < 0 or a < b:
        raise DomainError(f"invalid partition {lam}: need l1 >= l2 >= 0")


def schur_poly(lam: tuple[int, int]) -> dict[tuple[int, int], int]:
    a, b = lam
    _check_partition(lam)
    return {(a - i, b + i): 1 for i in range(a - b + 1)}


def _poly_mul(p, q):
    out: dict = {}
    for (a, b), c in p.items():
        for (e, f), g in q.items():
            k = (a + e, b + f)
            out[k] = out.get(k, 0) + c * g
    return out


def schur_decompose(char: Mapping[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    """Multiplicities of irreducibles in a symmetric two-variable character."""
    out = {}
    for (a, b), c in char.items():
        if char.get((b, a), 0) != c:
            raise DomainError("character is not symmetric")
        if a < b:
            continue
        m = c - char.get((a + 1, b - 1), 0)
        if m:
            out[(a, b)] = m
    return out


@dataclass
class SchurSeries:
    """Per degree ``q``, multiplicities of ``W(l1, l2)`` in the component."""

    trunc: int
    slices: dict[int, dict[tuple[int, int], int]]

    def __getitem__(self, q: int) -> dict[tuple[int, int], int]:
        return self.slices.get(q, {})

    def to_json(self) -> str:
        return json.dumps({str(q): [[a, b, m] for (a, b), m in sorted(self[q].items(), reverse=True)]
                           for q in range(1, self.trunc + 1)})

    @classmethod
    def from_json(cls, text: str) -> SchurSeries:
        try:
            data = json.loads(text)
            slices = {int(q): {(a, b): m for a, b, m in rows} for q, rows in data.items()}
        except (ValueError, TypeError, AttributeError) as exc:
            raise ParseError(f"bad Schur series JSON: {exc}") from exc
        return cls(max(slices, default=0), slices)

    def constants(self) -> Series:
        """Each irreducible holds a one-dimensional kernel of the nilpotent generator."""
        return Series([0] + [sum(self[q].values()) for q in range(1, self.trunc + 1)])

    def sl2_invariants(self) -> Series:
        """Only ``W(l, l)`` contains an SL2-invariant."""
        return Series([0] + [sum(m for (a, b), m in self[q].items() if a == b)
                             for q in range(1, self.trunc + 1)])

    def dimensions(self) -> Series:
        return Series([0] + [sum(m * (a - b + 1) for (a, b), m in self[q].items())
                             for q in range(1, self.trunc + 1)])


def gl2_character_series(sig: OmegaSignature, highest_weights: Sequence[tuple[int, int]],
                         trunc: int) -> SchurSeries:
    """Decompose each component ``b_q * chi^q`` with ``chi = sum s_lambda``."""
    if trunc < 1:
        raise DomainError("truncation degree must be >= 1")
    chi: dict = {}
    for lam in highest_weights:
        for k, c in schur_poly(tuple(lam)).items():
            chi[k] = chi.get(k, 0) + c
    b = solve_free_series(sig, trunc).as_ints()
    slices = {}
    power = {(0, 0): 1}
    for q in range(1, trunc + 1):
        power = _poly_mul(power, chi)
        if not b[q]:
            slices[q] = {}
            continue
        mult = {lam: b[q] * m for lam, m in schur_decompose(power).items()}
        if any(m < 0 for m in mult.values()):
            raise InvariantViolation(f"negative multiplicity at degree {q}")
        slices[q] = mult
    return SchurSeries(trunc, slices)


def weitzenboeck_constants_series(sig: OmegaSignature, cell_sizes: Sequence[int],
                                  trunc: int) -> Series:
    """Hilbert series of the constants of the derivation with the given Jordan cells."""
    if not cell_sizes or min(cell_sizes) < 1:
        raise DomainError("cell sizes must be positive")
    return gl2_character_series(sig, [(s - 1, 0) for s in cell_sizes], trunc).constants()


def sl2_invariants_series(sig: OmegaSignature, highest_weights: Sequence[tuple[int, int]],
                          trunc: int) -> Series:
    return gl2_character_series(sig, highest_weights, trunc).sl2_invariants()


def quadrature_crosscheck(kind: str, lam: tuple[int, int], points: int = 1 << 12) -> float:
    """Numerical value of ``2 int_0^1 w(u) s_lambda(e^{2 pi i u}, e^{-2 pi i u}) du`` with
    weight ``cos^2(pi u)`` (``cos2``) or ``sin^2(2 pi u)`` (``sin2``).

    The periodic trapezoidal rule on ``points`` nodes is exact for
    trigonometric polynomials of degree below ``points``.
    """
    _check_partition(lam)
    u = np.arange(points) / points
    if kind == "cos2":
        w = 2 * np.cos(np.pi * u) ** 2
    elif kind == "sin2":
        w = 2 * np.sin(2 * np.pi * u) ** 2
    else:
        raise DomainError(f"unknown quadrature kind {kind!r}")
    a, b = lam
    s = sum(np.exp(2j * np.pi * u * (a - b - 2 * i)) for i in range(a - b + 1))
    return float(np.real(np.mean(w * s)))


# The non-finite-generation construction.

EXAMPLE_GROUP_GENERATOR = ((1, 0, 1, 0), (0, 1, 0, 1), (0, 0, 1, 0), (0, 0, 0, 1))


def example_invariant() -> Polynomial:
    """``nu(x3, x1, x2) - nu(x1, x1, x4)`` for a single ternary operation."""
    x = [None] + [Monomial(var=j) for j in range(1, 5)]
    return Polynomial({Monomial(arity=3, op=1, children=(x[3], x[1], x[2])): 1,
                       Monomial(arity=3, op=1, children=(x[1], x[1], x[4])): -1})


def _extend(f: Polynomial, prev: Polynomial) -> Polynomial:
    """``sum_j a_j nu(u_1..u_{n-1}, nu(u_n, prev, ..., prev))`` over the terms
    ``a_j nu(u_1..u_n)`` of ``f``.
    """
    out = Polynomial()
    for m, c in f.terms.items():
        if m.is_leaf:
            raise DomainError("every term of the starting invariant must be an operation")
        n, i = m.arity, m.op
        *head, last = [Polynomial.monomial(u) for u in m.children]
        inner = apply_op(n, i, [last] + [prev] * (n - 1))
        out = out + apply_op(n, i, head + [inner]) * c
    return out


def nonfg_witness(sig: OmegaSignature, f1: Polynomial | None = None, k: int = 1,
                  g=EXAMPLE_GROUP_GENERATOR) -> list[Polynomial]:
    """Invariants ``f_1, ..., f_k`` of strictly growing degree, none of which
    is generated by invariants of lower degree.

    Invariance under ``g`` is verified for each member.  ``g(f_{i+1})`` is
    obtained from ``g(f_i)`` through the same construction, since ``g``
    acts as an algebra automorphism; expanding ``g`` over the huge later
    members directly would be needlessly slow.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    f = f1 if f1 is not None else example_invariant()
    g = _matrix(g)
    g_children = {}
    for m in f.terms:
        if m.is_leaf:
            raise DomainError("every term of the starting invariant must be an operation")
        sig.validate_op(m.arity, m.op)
        g_children[m] = [act(g, Polynomial.monomial(u)) for u in m.children]
    seq, images = [f], [act(g, f)]
    while len(seq) < k:
        seq.append(_extend(f, seq[-1]))
        img = Polynomial()
        for m, c in f.terms.items():
            n, i = m.arity, m.op
            *head, last = g_children[m]
            inner = apply_op(n, i, [last] + [images[-1]] * (n - 1))
            img = img + apply_op(n, i, head + [inner]) * c
        images.append(img)
    for j, (h, gh) in enumerate(zip(seq, images), 1):
        if h != gh:
            raise InvariantViolation(f"f_{j} is not fixed by the group generator")
    return seq


def catalan(k: int) -> int:
    """Binary trees with ``k`` leaves."""
    return comb(2 * k - 2, k - 1) // k


def odd_branch_ratio(k: int) -> Fraction:
    """Among binary trees with ``2k`` leaves, the share whose two root
    branches both have an odd number of leaves: ``4^(k-1) c_k / c_{2k}``.
    These trees freely generate the span of all even-degree trees.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    return Fraction(4 ** (k - 1) * catalan(k), catalan(2 * k))

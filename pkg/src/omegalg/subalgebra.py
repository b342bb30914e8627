"""Free generators of homogeneous subalgebras.

Subalgebras of free Omega-algebras are free.  For homogeneous generators a
free generating set is reached by elementary transformations: while one
leading monomial lies in the submagma of the others, subtract the
matching expression in the other generators.
"""

from __future__ import annotations

import itertools
from typing import Iterator, NamedTuple, Sequence

from .errors import DomainError
from .linalg import Echelon
from .magma import LEX, Monomial, OrderingSpec, compositions, submagma_membership
from .polyring import Polynomial, apply_op, leading_term, substitute
from .series import Series, compose
from .signature import OmegaSignature, gen_fn


class NielsenStep(NamedTuple):
    index: int                 # position of the rewritten generator
    before: Monomial           # its leading monomial before the step
    after: Monomial | None     # after the step; None if it became zero
    witness: Monomial          # expression over the other generators


def _prepare(gens, ordering, weights):
    out = []
    for f in gens:
        if not f:
            raise DomainError("generators must be nonzero")
        f.homogeneous_degree(weights)
        out.append(f.monic(ordering))
    return out


def nielsen_steps(gens: Sequence[Polynomial], ordering: OrderingSpec = LEX,
                  weights: Sequence[int] | None = None) -> Iterator[tuple[NielsenStep, list[Polynomial]]]:
    """Run the elementary transformations, yielding each step and the
    generator list after it.

    When several generators are reducible the one listed last is rewritten,
    so earlier generators survive.
    """
    fs = _prepare(gens, ordering, weights)
    while True:
        lms = [leading_term(f, ordering)[0] for f in fs]
        for j in reversed(range(len(fs))):
            others = fs[:j] + fs[j + 1:]
            w = submagma_membership(lms[j], lms[:j] + lms[j + 1:])
            if w is not None:
                break
        else:
            return
        r = fs[j] - substitute(w, others)
        if r:
            fs[j] = r.monic(ordering)
            after = leading_term(fs[j], ordering)[0]
        else:
            del fs[j]
            after = None
        yield NielsenStep(j, lms[j], after, w), list(fs)


def nielsen_reduce(gens: Sequence[Polynomial], ordering: OrderingSpec = LEX,
                   weights: Sequence[int] | None = None) -> list[Polynomial]:
    """Homogeneous free generating set of the subalgebra generated by ``gens``,
    monic and sorted by leading monomial.
    """
    fs = _prepare(gens, ordering, weights)
    for _, fs in nielsen_steps(fs, ordering, weights):
        pass
    return sorted(fs, key=lambda f: leading_term(f, ordering)[0].sort_key(ordering))


def free_gen_series(H_A: Series, sig: OmegaSignature) -> Series:
    """``H_A - G(Omega, H_A)``: degrees of any homogeneous free generating set."""
    if H_A[0]:
        raise DomainError("series must have zero constant term")
    return H_A - compose(gen_fn(sig, max(H_A.trunc, 1)), H_A)


def generators_series(gens: Sequence[Polynomial], trunc: int,
                      weights: Sequence[int] | None = None) -> Series:
    """Count generators by (weighted) degree."""
    cs = [0] * (trunc + 1)
    for f in gens:
        k = f.homogeneous_degree(weights)
        if k <= trunc:
            cs[k] += 1
    return Series(cs)


def brute_force_subalgebra_hilbert(gens: Sequence[Polynomial], trunc: int, sig: OmegaSignature,
                                   weights: Sequence[int] | None = None) -> Series:
    """Dimensions of the generated subalgebra by explicit spanning sets.

    Degree ``k`` is spanned by the generators of degree ``k`` together with
    every operation applied to basis elements of lower degrees summing to
    ``k``; the rank comes from exact row reduction.
    """
    if trunc < 1:
        raise DomainError("truncation degree must be >= 1")
    by_deg: dict[int, list[Polynomial]] = {}
    for f in gens:
        if not f:
            continue
        by_deg.setdefault(f.homogeneous_degree(weights), []).append(f)
    basis: dict[int, list[Polynomial]] = {}
    dims = [0] * (trunc + 1)
    for k in range(1, trunc + 1):
        ech = Echelon()
        keep = []

        def offer(p):
            if ech.add({m.sort_key(LEX): c for m, c in p.terms.items()}) is None:
                keep.append(p)

        for f in by_deg.get(k, ()):
            offer(f)
        for n, p in sig.arities_upto(k):
            for parts in compositions(k, n):
                blocks = [basis.get(c, []) for c in parts]
                if not all(blocks):
                    continue
                for args in itertools.product(*blocks):
                    for i in range(1, p + 1):
                        offer(apply_op(n, i, args))
        basis[k] = keep
        dims[k] = len(keep)
    return Series(dims)

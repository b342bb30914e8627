"""Free Omega-magma: planar trees with operation-labelled nodes and variable leaves.

Monomials are immutable and hash-consed only through their structural
tuple, so equal trees built independently compare and hash equal.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, ParseError
from .signature import OmegaSignature


class Monomial:
    """Either a leaf ``x_var`` or ``nu_{arity,op}(children...)``."""

    __slots__ = ("var", "arity", "op", "children", "degree", "_t", "_hash", "_keys")

    def __init__(self, var: int = 0, arity: int = 0, op: int = 0, children: tuple = ()):
        self.var = var
        self.arity = arity
        self.op = op
        self.children = children
        if arity:
            self.degree = sum(c.degree for c in children)
            self._t = (arity, op) + tuple(c._t for c in children)
            self._hash = hash((arity, op) + tuple(c._hash for c in children))
        else:
            self.degree = 1
            self._t = var
            self._hash = hash(var)
        self._keys = None

    @classmethod
    def leaf(cls, var: int) -> Monomial:
        if var < 1:
            raise DomainError(f"variable index must be >= 1, got {var}")
        return cls(var=var)

    @classmethod
    def app(cls, arity: int, op: int, children: Sequence[Monomial]) -> Monomial:
        children = tuple(children)
        if arity < 2:
            raise DomainError(f"operations have arity >= 2, got {arity}")
        if op < 1:
            raise DomainError(f"operation index must be >= 1, got {op}")
        if len(children) != arity:
            raise DomainError(f"arity {arity} with {len(children)} children")
        return cls(arity=arity, op=op, children=children)

    @property
    def is_leaf(self) -> bool:
        return not self.arity

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._hash == other._hash and self._t == other._t

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Monomial({print_term(self)!r})"

    def __str__(self):
        return print_term(self)

    def leaves(self) -> tuple[int, ...]:
        if not self.arity:
            return (self.var,)
        return tuple(v for c in self.children for v in c.leaves())

    def weighted_degree(self, weights: Sequence[int] | None = None) -> int:
        if weights is None:
            return self.degree
        return sum(weights[v - 1] for v in self.leaves())

    def subterms(self) -> Iterator[tuple[tuple[int, ...], Monomial]]:
        """All ``(path, subword)`` pairs in preorder; paths use 1-based child indices."""
        stack = [((), self)]
        while stack:
            path, m = stack.pop()
            yield path, m
            for i in range(m.arity, 0, -1):
                stack.append((path + (i,), m.children[i - 1]))

    def sort_key(self, ordering: OrderingSpec) -> tuple:
        keys = self._keys
        if keys is None:
            keys = self._keys = {}
        key = keys.get(ordering)
        if key is None:
            key = keys[ordering] = ordering.key(self)
        return key


def x(var: int) -> Monomial:
    return Monomial.leaf(var)


def nu(arity: int, op: int, *children: Monomial) -> Monomial:
    return Monomial.app(arity, op, children)


@dataclass(frozen=True)
class OrderingSpec:
    """Admissible ordering: degree, optional secondary weight, root arity,
    root operation index, then children compared left to right (``lex``) or
    right to left (``rlex``).
    """

    child_rule: str = "lex"
    secondary_weight: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.child_rule not in ("lex", "rlex"):
            raise DomainError(f"child rule must be 'lex' or 'rlex', got {self.child_rule!r}")
        if isinstance(self.secondary_weight, dict):
            object.__setattr__(self, "secondary_weight", tuple(sorted(self.secondary_weight.items())))
        for _, w in self.secondary_weight:
            if w < 0:
                raise DomainError("secondary weights must be nonnegative")

    def weight(self, var: int) -> int:
        for v, w in self.secondary_weight:
            if v == var:
                return w
        return 0

    def key(self, m: Monomial) -> tuple:
        if m.is_leaf:
            return (1, self.weight(m.var), 0, m.var)
        kids = [c.sort_key(self) for c in m.children]
        if self.child_rule == "rlex":
            kids.reverse()
        sec = sum(k[1] for k in kids)
        return (m.degree, sec, m.arity, m.op, *kids)


LEX = OrderingSpec()
RLEX = OrderingSpec("rlex")


def compare(a: Monomial, b: Monomial, ordering: OrderingSpec = LEX) -> int:
    """-1, 0 or 1 as ``a`` is below, equal to or above ``b``."""
    if a == b:
        return 0
    ka, kb = a.sort_key(ordering), b.sort_key(ordering)
    return -1 if ka < kb else 1


def compositions(total: int, parts: int, minimum: int = 1) -> Iterator[tuple[int, ...]]:
    """Ordered ways to write ``total`` as ``parts`` summands, each ``>= minimum``."""
    if parts == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _by_weight(sig: OmegaSignature, weights: tuple[int, ...], k: int) -> tuple[Monomial, ...]:
    out = [Monomial.leaf(j) for j, w in enumerate(weights, 1) if w == k]
    if all(w == 1 for w in weights):
        # already ascending: root arity, then op, then children lexicographically
        for n, p in sig.arities_upto(k):
            for i in range(1, p + 1):
                out.extend(Monomial(arity=n, op=i, children=kids)
                           for kids in _children(sig, weights, n, k))
        return tuple(out)
    for n, p in sig.arities_upto(k):
        for parts in compositions(k, n):
            blocks = [_by_weight(sig, weights, c) for c in parts]
            if not all(blocks):
                continue
            for children in itertools.product(*blocks):
                for i in range(1, p + 1):
                    out.append(Monomial(arity=n, op=i, children=children))
    out.sort(key=lambda m: m.sort_key(LEX))
    return tuple(out)


def _children(sig, weights, n, k):
    """Child tuples of total degree ``k`` in lexicographic order of child keys."""
    if n == 1:
        yield from ((c,) for c in _by_weight(sig, weights, k))
        return
    for first in range(1, k - n + 2):
        block = _by_weight(sig, weights, first)
        if not block:
            continue
        rests = list(_children(sig, weights, n - 1, k - first))
        for c in block:
            for rest in rests:
                yield (c,) + rest


def enumerate_monomials(sig: OmegaSignature, d: int, degree: int,
                        weights: Sequence[int] | None = None) -> tuple[Monomial, ...]:
    """All monomials in ``x_1..x_d`` of the given (weighted) degree, ascending."""
    if d < 1 or degree < 1:
        raise DomainError("need d >= 1 and degree >= 1")
    if weights is None:
        weights = (1,) * d
    weights = tuple(weights)
    if len(weights) != d or min(weights) < 1:
        raise DomainError("need one positive weight per variable")
    return _by_weight(sig, weights, degree)


def clear_enumeration_cache() -> None:
    """Drop memoized monomial slices (large degrees can hold much memory)."""
    _by_weight.cache_clear()


def find_subword(haystack: Monomial, needle: Monomial) -> tuple[int, ...] | None:
    """Path to the first preorder occurrence of ``needle`` in ``haystack``."""
    for path, sub in haystack.subterms():
        if sub.degree == needle.degree and sub == needle:
            return path
    return None


def subterm(m: Monomial, path: Iterable[int]) -> Monomial:
    for i in path:
        if not 1 <= i <= m.arity:
            raise DomainError(f"invalid path step {i}")
        m = m.children[i - 1]
    return m


def graft(m: Monomial, path: Sequence[int], sub: Monomial) -> Monomial:
    """Copy of ``m`` with the subword at ``path`` replaced by ``sub``."""
    if not path:
        return sub
    i = path[0]
    if not 1 <= i <= m.arity:
        raise DomainError(f"invalid path step {i}")
    kids = list(m.children)
    kids[i - 1] = graft(kids[i - 1], path[1:], sub)
    return Monomial(arity=m.arity, op=m.op, children=tuple(kids))


def submagma_membership(m: Monomial, gens: Sequence[Monomial]) -> Monomial | None:
    """Witness expression over generator indices if ``m`` lies in the submagma
    generated by ``gens``, else None.

    The witness is a Monomial whose leaf ``x_i`` stands for ``gens[i-1]``.
    """
    index = {}
    for i, g in enumerate(gens, 1):
        index.setdefault(g, i)
    memo = {}

    def walk(u):
        if u in memo:
            return memo[u]
        i = index.get(u)
        if i is not None:
            res = Monomial.leaf(i)
        elif u.is_leaf:
            res = None
        else:
            kids = []
            for c in u.children:
                w = walk(c)
                if w is None:
                    break
                kids.append(w)
            res = Monomial(arity=u.arity, op=u.op, children=tuple(kids)) if len(kids) == u.arity else None
        memo[u] = res
        return res

    return walk(m)


def evaluate_expression(expr: Monomial, values: Sequence[Monomial]) -> Monomial:
    """Replace each leaf ``x_i`` of ``expr`` by ``values[i-1]``."""
    if expr.is_leaf:
        return values[expr.var - 1]
    return Monomial(arity=expr.arity, op=expr.op,
                    children=tuple(evaluate_expression(c, values) for c in expr.children))


def shape_and_leaves(m: Monomial) -> tuple[Monomial, tuple[int, ...]]:
    """Split ``m`` into its tree shape (all leaves ``x_1``) and its leaf word."""
    return _shape(m), m.leaves()


def _shape(m):
    if m.is_leaf:
        return _X1
    return Monomial(arity=m.arity, op=m.op, children=tuple(_shape(c) for c in m.children))


def from_shape_and_leaves(shape: Monomial, leaves: Sequence[int]) -> Monomial:
    """Inverse of :func:`shape_and_leaves`."""
    it = iter(leaves)

    def build(s):
        if s.is_leaf:
            try:
                return Monomial.leaf(next(it))
            except StopIteration:
                raise DomainError("fewer labels than leaves") from None
        return Monomial(arity=s.arity, op=s.op, children=tuple(build(c) for c in s.children))

    out = build(shape)
    if next(it, None) is not None:
        raise DomainError("more labels than leaves")
    return out


_X1 = Monomial(var=1)

# term grammar: term := x<k> | "(" "nu" <n> <i> term^n ")"
_TOKEN = re.compile(r"\s*(?:(\()|(\))|(nu)(?![\w])|x(\d+)(?![\w])|(\d+)(?![\w])|([^\s()]+))")


def _tokens(text):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        pos = mt.end()
        yield mt


def parse_term(text: str, sig: OmegaSignature | None = None) -> Monomial:
    """Read one term; with ``sig`` also check operation indices against it."""
    toks = list(_tokens(text))
    pos = 0

    def fail(msg):
        raise ParseError(f"{msg} in term {text.strip()!r}")

    def token_text(t):
        return t.group(0).strip()

    def integer():
        nonlocal pos
        if pos >= len(toks) or toks[pos].group(5) is None:
            fail(f"expected an integer, got {token_text(toks[pos])!r}" if pos < len(toks)
                 else "expected an integer, got end of input")
        v = int(toks[pos].group(5))
        pos += 1
        return v

    def term():
        nonlocal pos
        if pos >= len(toks):
            fail("unexpected end of input")
        t = toks[pos]
        if t.group(4) is not None:
            pos += 1
            v = int(t.group(4))
            if v < 1:
                fail(f"variable index must be positive, got {token_text(t)!r}")
            return Monomial(var=v)
        if t.group(1) is None:
            fail(f"unexpected token {token_text(t)!r}")
        pos += 1
        if pos >= len(toks) or toks[pos].group(3) is None:
            fail("expected 'nu' after '('" if pos >= len(toks)
                 else f"expected 'nu' after '(', got {token_text(toks[pos])!r}")
        pos += 1
        n = integer()
        i = integer()
        if n < 2:
            fail(f"arity must be >= 2, got {n}")
        if i < 1:
            fail(f"operation index must be >= 1, got {i}")
        kids = []
        while pos < len(toks) and toks[pos].group(2) is None:
            kids.append(term())
        if pos >= len(toks):
            fail("missing ')'")
        pos += 1
        if len(kids) != n:
            fail(f"arity {n} with {len(kids)} child{'ren' if len(kids) != 1 else ''}")
        if sig is not None:
            sig.validate_op(n, i)
        return Monomial(arity=n, op=i, children=tuple(kids))

    m = term()
    if pos != len(toks):
        fail(f"trailing token {token_text(toks[pos])!r}")
    return m


def print_term(m: Monomial) -> str:
    if m.is_leaf:
        return f"x{m.var}"
    return f"(nu {m.arity} {m.op} " + " ".join(print_term(c) for c in m.children) + ")"

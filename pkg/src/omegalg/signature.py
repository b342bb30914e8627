"""Operation sets of multioperator algebras.

A signature lists how many operations of each arity ``n >= 2`` are
available.  The built-in ``omega`` signature has exactly one operation of
every arity; it is infinite, but a computation truncated at degree ``N``
only ever looks at arities ``<= N``, so it is materialized on demand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from .errors import DomainError, ParseError, ValidationError
from .series import Series

FINITE = "finite-list"
OMEGA = "omega-builtin"


@dataclass(frozen=True)
class OmegaSignature:
    kind: str = FINITE
    arities: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if self.kind not in (FINITE, OMEGA):
            raise ValidationError(f"unknown signature kind {self.kind!r}")
        if self.kind == OMEGA and self.arities:
            raise ValidationError("the omega signature takes no arity list")
        seen = set()
        for n, p in self.arities:
            if n < 2:
                raise ValidationError("arity must be >= 2")
            if p < 1:
                raise ValidationError("operation count must be >= 1")
            if n in seen:
                raise ValidationError(f"arity {n} listed twice")
            seen.add(n)
        object.__setattr__(self, "arities", tuple(sorted(self.arities)))

    @classmethod
    def finite(cls, counts: Mapping[int, int]) -> OmegaSignature:
        return cls(FINITE, tuple(counts.items()))

    @classmethod
    def omega(cls) -> OmegaSignature:
        return cls(OMEGA)

    @classmethod
    def binary(cls) -> OmegaSignature:
        return cls.finite({2: 1})

    @classmethod
    def nary(cls, n: int) -> OmegaSignature:
        return cls.finite({n: 1})

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    def count(self, n: int) -> int:
        """Number of operations of arity ``n``."""
        if self.kind == OMEGA:
            return 1 if n >= 2 else 0
        return dict(self.arities).get(n, 0)

    def arities_upto(self, bound: int) -> list[tuple[int, int]]:
        """``(n, p_n)`` pairs with ``p_n > 0`` and ``n <= bound``."""
        if self.kind == OMEGA:
            return [(n, 1) for n in range(2, bound + 1)]
        return [(n, p) for n, p in self.arities if n <= bound]

    @property
    def max_arity(self) -> int | None:
        """Largest arity, or None for the infinite signature."""
        if self.kind == OMEGA:
            return None
        return max((n for n, _ in self.arities), default=0)

    def validate_op(self, arity: int, op: int) -> None:
        p = self.count(arity)
        if p == 0:
            raise ValidationError(f"signature has no operation of arity {arity}")
        if not 1 <= op <= p:
            raise ValidationError(
                f"operation index {op} out of range for arity {arity} (p_{arity} = {p})")

    def __str__(self):
        if self.kind == OMEGA:
            return "omega"
        if self.arities == ((2, 1),):
            return "binary"
        if len(self.arities) == 1 and self.arities[0][1] == 1:
            return f"nary:{self.arities[0][0]}"
        return "custom:" + ",".join(f"{n}={p}" for n, p in self.arities)


def gen_fn(sig: OmegaSignature, trunc: int) -> Series:
    """Generating function ``sum_n p_n t^n`` of the operation set."""
    if trunc < 1:
        raise DomainError("truncation degree must be >= 1")
    coeffs = [0] * (trunc + 1)
    for n, p in sig.arities_upto(trunc):
        coeffs[n] = p
    return Series(coeffs)


_INT = re.compile(r"[+-]?\d+\Z")


def _int(token: str, text: str) -> int:
    if not _INT.match(token.strip()):
        raise ParseError(f"bad integer {token!r} in signature {text!r}")
    return int(token)


def parse_signature(text: str) -> OmegaSignature:
    """Read ``binary``, ``omega``, ``nary:<n>`` or ``custom:<n>=<p>,...``."""
    s = text.strip()
    if s == "binary":
        return OmegaSignature.binary()
    if s == "omega":
        return OmegaSignature.omega()
    head, sep, body = s.partition(":")
    if not sep:
        raise ParseError(f"unknown signature {s!r}")
    if head == "nary":
        return OmegaSignature.nary(_int(body, text))
    if head == "custom":
        counts = []
        if body.strip():
            for item in body.split(","):
                n, eq, p = item.partition("=")
                if not eq:
                    raise ParseError(f"expected <arity>=<count>, got {item!r}")
                counts.append((_int(n, text), _int(p, text)))
        return OmegaSignature(FINITE, tuple(counts))
    raise ParseError(f"unknown signature kind {head!r}")

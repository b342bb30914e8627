"""Sparse exact row reduction over the rationals.

Vectors are dicts ``column -> Fraction`` with no zero entries.  Columns are
any mutually comparable keys; the pivot of a row is its largest column.
Dense library routines were far slower on the very sparse systems that
arise from monomial bases, hence this small incremental echelon form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping


def _axpy(target: dict, scale: Fraction, row: Mapping) -> None:
    """target += scale * row, dropping zeros."""
    for c, v in row.items():
        nv = target.get(c, 0) + scale * v
        if nv:
            target[c] = nv
        else:
            target.pop(c, None)


class Echelon:
    """Incrementally maintained echelon basis of a span.

    Every stored row has pivot coefficient 1.  Optional tags record each
    row as a combination of the inserted vectors, which is what kernel
    computations need.
    """

    def __init__(self):
        self.rows: dict = {}
        self.tags: dict = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping, tag: dict | None = None) -> dict:
        """Top-reduce a copy of ``vec``; the result is zero iff ``vec`` is in the span."""
        v = {c: Fraction(a) for c, a in vec.items() if a}
        while v:
            p = max(v)
            row = self.rows.get(p)
            if row is None:
                break
            s = -v[p]
            _axpy(v, s, row)
            if tag is not None:
                _axpy(tag, s, self.tags[p])
        return v

    def add(self, vec: Mapping, tag: Hashable | None = None) -> dict | None:
        """Insert ``vec``.  Returns None if it was independent, else the
        dependency: a tag combination (empty without tags) equal to zero.
        """
        t = {tag: Fraction(1)} if tag is not None else None
        v = self.reduce(vec, t)
        if not v:
            return t if t is not None else {}
        p = max(v)
        inv = 1 / v[p]
        self.rows[p] = {c: a * inv for c, a in v.items()}
        if t is not None:
            self.tags[p] = {c: a * inv for c, a in t.items()}
        return None

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)


def rank(vectors: Iterable[Mapping]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def kernel(images: Iterable[tuple[Hashable, Mapping]]) -> list[dict]:
    """Basis of ``{c : sum_i c_i * image_i = 0}``.

    ``images`` yields ``(label, vector)`` pairs; each kernel vector is a
    dict ``label -> coefficient``.
    """
    e = Echelon()
    out = []
    for label, vec in images:
        dep = e.add(vec, tag=label)
        if dep is not None:
            out.append(dep)
    return out

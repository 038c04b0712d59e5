"""Set-valued negation and implication on meet-semilattices with bottom.

Negation sends an element to the maximal elements meeting it at the
bottom; implication sends a pair to the maximal elements whose meet with
the first argument drops below the second.  Both return antichains of the
carrier rather than single elements, which is what "unsharp" refers to:
the classical pseudocomplement and relative pseudocomplement fall out as
the special case where those antichains are singletons.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import EmptyOperandError
from .order import ElemSet, MeetSemilattice, max_elements


def neg(s: MeetSemilattice, a: int) -> ElemSet:
    """Maximal elements whose meet with ``a`` is the bottom."""
    row = s.meet[a]
    bot = s.bottom
    return max_elements(s, frozenset(x for x in range(s.n) if row[x] == bot))


def neg_set(s: MeetSemilattice, a: ElemSet) -> ElemSet:
    """Maximal elements annihilating every member of ``a``."""
    if not a:
        raise EmptyOperandError("negation of the empty set is undefined")
    meet = s.meet
    bot = s.bottom
    cand = frozenset(
        x for x in range(s.n) if all(meet[y][x] == bot for y in a)
    )
    return max_elements(s, cand)


def imp(s: MeetSemilattice, a: int, b: int) -> ElemSet:
    """Maximal elements ``z`` with ``a & z <= b``."""
    row = s.meet[a]
    leq = s.leq
    return max_elements(s, frozenset(x for x in range(s.n) if leq[row[x]][b]))


def imp_set(s: MeetSemilattice, a: ElemSet, b: ElemSet) -> ElemSet:
    """Maximal elements ``z`` with every member of ``a & {z}`` below all of ``b``."""
    if not a or not b:
        raise EmptyOperandError("implication with an empty operand is undefined")
    meet = s.meet
    leq = s.leq
    cand = frozenset(
        x
        for x in range(s.n)
        if all(leq[meet[y][x]][z] for y in a for z in b)
    )
    return max_elements(s, cand)


def is_sharp(s: MeetSemilattice, a: int) -> bool:
    """True when two applications of negation reproduce ``a`` exactly."""
    return neg_set(s, neg(s, a)) == frozenset((a,))


@dataclass(frozen=True)
class OperatorTable:
    """A total operator table over a structure.

    ``entries`` maps an element index (negation) or an ordered index pair
    (implication) to the resulting antichain.
    """

    kind: str  # "neg" | "imp"
    structure: MeetSemilattice
    entries: Mapping

    def entry(self, key) -> ElemSet:
        return self.entries[key]


def make_table(s: MeetSemilattice, kind: str) -> OperatorTable:
    """Tabulate an operator over the whole structure.

    Rows (and columns, for implication) follow declaration order.
    """
    n = s.n
    if kind == "neg":
        entries = {a: neg(s, a) for a in range(n)}
    elif kind == "imp":
        entries = {(a, b): imp(s, a, b) for a in range(n) for b in range(n)}
    else:
        raise ValueError(f"unknown operator kind {kind!r} (expected 'neg' or 'imp')")
    return OperatorTable(kind, s, entries)

"""Finite posets and meet-semilattices with a least element.

Elements are declared once, by name, and everything downstream works with
integer indices into that declaration order.  Subsets of the carrier (the
``ElemSet`` alias) are plain ``frozenset`` values of indices.  The order
itself is a dense boolean matrix; carriers are expected to stay within a
few hundred elements, where exhaustive scans beat any sparse cleverness.

All types are immutable after construction and every operation here is a
pure function, so structures can be shared freely across threads.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    CycleError,
    DuplicateElementError,
    NoBottomError,
    NoMeetError,
    UnknownNameError,
)

ElemSet = frozenset[int]


def _as_elemset(members: Iterable[int]) -> ElemSet:
    return members if isinstance(members, frozenset) else frozenset(members)


class Poset:
    """A finite partial order over named elements.

    ``leq[i][j]`` means element ``i`` lies below element ``j``.
    Reflexivity, antisymmetry and transitivity are verified at
    construction time.
    """

    def __init__(self, elements: Sequence[str], leq: Sequence[Sequence[bool]]):
        names = tuple(elements)
        if not names:
            raise ValueError("a poset needs at least one element")
        seen: set[str] = set()
        for name in names:
            if not name or name != name.strip():
                raise ValueError(f"bad element name {name!r}")
            if name in seen:
                raise DuplicateElementError(f"duplicate element name {name!r}")
            seen.add(name)
        n = len(names)
        rows = tuple(tuple(bool(v) for v in row) for row in leq)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError("order matrix shape does not match the element count")
        for i in range(n):
            if not rows[i][i]:
                raise ValueError(f"order not reflexive at {names[i]!r}")
            for j in range(i + 1, n):
                if rows[i][j] and rows[j][i]:
                    raise CycleError(
                        f"elements {names[i]!r} and {names[j]!r} lie on a cycle"
                    )
        for i in range(n):
            row = rows[i]
            for j in range(n):
                if row[j] and i != j:
                    rj = rows[j]
                    for k in range(n):
                        if rj[k] and not row[k]:
                            raise ValueError(
                                "order not transitive: "
                                f"{names[i]!r} <= {names[j]!r} <= {names[k]!r}"
                            )
        self.elements = names
        self.leq = rows
        self.n = n

    @cached_property
    def index(self) -> dict[str, int]:
        """Name-to-index lookup in declaration order."""
        return {name: i for i, name in enumerate(self.elements)}

    @cached_property
    def up(self) -> tuple[ElemSet, ...]:
        """``up[i]`` is the set of elements above ``i`` (inclusive)."""
        n = self.n
        return tuple(
            frozenset(j for j in range(n) if self.leq[i][j]) for i in range(n)
        )

    @cached_property
    def down(self) -> tuple[ElemSet, ...]:
        """``down[j]`` is the set of elements below ``j`` (inclusive)."""
        n = self.n
        return tuple(
            frozenset(i for i in range(n) if self.leq[i][j]) for j in range(n)
        )

    @cached_property
    def carrier(self) -> ElemSet:
        return frozenset(range(self.n))

    def le(self, i: int, j: int) -> bool:
        return self.leq[i][j]

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.leq == other.leq

    def __hash__(self):
        return hash((self.elements, self.leq))

    def __repr__(self):
        return f"Poset({list(self.elements)!r}, {self.n} elements)"


def build_poset(
    names: Sequence[str], covers: Iterable[tuple[str, str]]
) -> Poset:
    """Build a poset from declared names and ``(lower, upper)`` cover pairs.

    The order is the reflexive-transitive closure of the cover relation;
    a closure that identifies two distinct names raises ``CycleError``.
    """
    names = tuple(str(name) for name in names)
    index: dict[str, int] = {}
    for i, name in enumerate(names):
        if name in index:
            raise DuplicateElementError(f"duplicate element name {name!r}")
        index[name] = i
    n = len(names)
    if n == 0:
        raise ValueError("a poset needs at least one element")
    adj = [[i == j for j in range(n)] for i in range(n)]
    for lo, hi in covers:
        lo, hi = str(lo), str(hi)
        if lo not in index:
            raise UnknownNameError(f"unknown element name {lo!r} in cover")
        if hi not in index:
            raise UnknownNameError(f"unknown element name {hi!r} in cover")
        adj[index[lo]][index[hi]] = True
    for k in range(n):
        rk = adj[k]
        for i in range(n):
            if adj[i][k]:
                ri = adj[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return Poset(names, adj)


class MeetSemilattice:
    """A poset in which every pair of elements has a greatest lower bound.

    Carries the full meet table over indices, the index of the least
    element, and the index of the greatest element when one exists.
    ``name`` is a label used in reports only; it does not take part in
    equality.
    """

    def __init__(
        self,
        poset: Poset,
        meet: Sequence[Sequence[int]],
        bottom: int,
        top: int | None = None,
        name: str = "structure",
    ):
        n = poset.n
        table = tuple(tuple(int(v) for v in row) for row in meet)
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError("meet table shape does not match the element count")
        down = poset.down
        for i in range(n):
            for j in range(n):
                m = table[i][j]
                common = down[i] & down[j]
                if m not in common or not common <= down[m]:
                    raise ValueError(
                        f"meet entry for ({poset.elements[i]!r}, "
                        f"{poset.elements[j]!r}) is not the greatest lower bound"
                    )
        bottom = int(bottom)
        if not all(poset.leq[bottom][j] for j in range(n)):
            raise ValueError(f"{poset.elements[bottom]!r} is not a least element")
        if top is not None:
            top = int(top)
            if not all(poset.leq[j][top] for j in range(n)):
                raise ValueError(f"{poset.elements[top]!r} is not a greatest element")
        self.poset = poset
        self.meet = table
        self.bottom = bottom
        self.top = top
        self.name = name

    @property
    def elements(self) -> tuple[str, ...]:
        return self.poset.elements

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def leq(self):
        return self.poset.leq

    @property
    def up(self):
        return self.poset.up

    @property
    def down(self):
        return self.poset.down

    @property
    def index(self):
        return self.poset.index

    @property
    def carrier(self) -> ElemSet:
        return self.poset.carrier

    @property
    def bounded(self) -> bool:
        return self.top is not None

    @cached_property
    def max_set(self) -> ElemSet:
        """The maximal elements of the whole carrier."""
        return max_elements(self, self.carrier)

    @cached_property
    def singletons(self) -> tuple[ElemSet, ...]:
        return tuple(frozenset((i,)) for i in range(self.n))

    def le(self, i: int, j: int) -> bool:
        return self.poset.leq[i][j]

    def __eq__(self, other):
        if not isinstance(other, MeetSemilattice):
            return NotImplemented
        return (
            self.poset == other.poset
            and self.meet == other.meet
            and self.bottom == other.bottom
            and self.top == other.top
        )

    def __hash__(self):
        return hash((self.poset, self.meet, self.bottom, self.top))

    def __repr__(self):
        return f"MeetSemilattice({self.name!r}, {self.n} elements)"


def to_meet_semilattice(p: Poset, name: str = "structure") -> MeetSemilattice:
    """Check that every pair of elements has a meet and package the result.

    Raises ``NoMeetError`` naming the first offending pair, or
    ``NoBottomError`` when no least element exists.
    """
    n = p.n
    down = p.down
    meet = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            common = down[i] & down[j]
            glb = None
            for m in common:
                if common <= down[m]:
                    glb = m
                    break
            if glb is None:
                raise NoMeetError(p.elements[i], p.elements[j])
            meet[i][j] = glb
            meet[j][i] = glb
    carrier = p.carrier
    bottom = next((i for i in range(n) if p.up[i] == carrier), None)
    if bottom is None:
        raise NoBottomError("the poset has no least element")
    top = next((i for i in range(n) if down[i] == carrier), None)
    return MeetSemilattice(p, meet, bottom, top, name)


def _poset_of(s) -> Poset:
    return s.poset if isinstance(s, MeetSemilattice) else s


def max_elements(s, a: Iterable[int]) -> ElemSet:
    """Members of ``a`` with no other member of ``a`` above them."""
    a = _as_elemset(a)
    up = _poset_of(s).up
    return frozenset(x for x in a if len(up[x] & a) == 1)


def set_leq(s, a: Iterable[int], b: Iterable[int]) -> bool:
    """All-pairs comparison: every member of ``a`` below every member of ``b``."""
    a, b = _as_elemset(a), _as_elemset(b)
    up = _poset_of(s).up
    return all(b <= up[x] for x in a)


def leq1(s, a: Iterable[int], b: Iterable[int]) -> bool:
    """Every member of ``a`` lies below some member of ``b``.

    A quasiorder on subsets; holds vacuously when ``a`` is empty.
    """
    a, b = _as_elemset(a), _as_elemset(b)
    up = _poset_of(s).up
    return all(not up[x].isdisjoint(b) for x in a)


def approx1(s, a: Iterable[int], b: Iterable[int]) -> bool:
    """Mutual ``leq1``; an equivalence relation on subsets."""
    return leq1(s, a, b) and leq1(s, b, a)


def set_meet(s: MeetSemilattice, a: Iterable[int], b: Iterable[int]) -> ElemSet:
    """The set of pairwise meets of two subsets."""
    meet = s.meet
    return frozenset(meet[x][y] for x in _as_elemset(a) for y in _as_elemset(b))


def is_antichain(s, a: Iterable[int]) -> bool:
    """True when no two distinct members of ``a`` are comparable."""
    a = _as_elemset(a)
    up = _poset_of(s).up
    return all(len(up[x] & a) == 1 for x in a)


def names_of(s, members: Iterable[int]) -> tuple[str, ...]:
    """Render a subset as element names in declaration order."""
    elements = s.elements if not isinstance(s, Poset) else s.elements
    return tuple(elements[i] for i in sorted(_as_elemset(members)))
